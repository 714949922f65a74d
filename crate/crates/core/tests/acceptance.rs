//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as a plain binary so the report is always printed.

use std::cell::OnceCell;
use std::process::ExitCode;
use std::time::Instant;

use burgers_levy::regen::{dcor_permutation_test, regen_report};
use burgers_levy::seed::{derive, rng_for};
use burgers_levy::shocks::{zero_set_vertices, RefinementRow};
use burgers_levy::{
    abruptness_integral_estimate, contact_jump_signs, extract_shocks, fixtures, independence_test,
    refinement_study, sample_path, sign_pattern, solve, solve_naive, solve_on_grid, stats,
    BurgersSolution, Error, GridSpec, LevyParams, LevyPath,
};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

const T: f64 = 1.0;
const BROWNIAN: LevyParams = LevyParams::Brownian { sigma: 1.0 };
const STABLE_15: LevyParams = LevyParams::Stable { alpha: 1.5, beta: 0.0, scale: 1.0 };
const STABLE_075: LevyParams = LevyParams::Stable { alpha: 0.75, beta: 0.0, scale: 1.0 };
const CAUCHY: LevyParams = LevyParams::Cauchy { scale: 1.0 };
const FAMILIES: [(&str, LevyParams); 4] =
    [("brownian", BROWNIAN), ("stable-1.5", STABLE_15), ("stable-0.75", STABLE_075), ("cauchy", CAUCHY)];
const H_LIST: [f64; 4] = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0, 1.0 / 512.0];
const STAT_WINDOW: (f64, f64) = (1.0, 2.0);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// The 200 paths shared by the oracle, velocity and Moreau criteria.
fn criterion_one_paths() -> Vec<(&'static str, u64, LevyPath)> {
    let grid = GridSpec::symmetric(8.0, 4097).unwrap();
    FAMILIES
        .iter()
        .enumerate()
        .flat_map(|(f, &(name, params))| {
            (0..50u64).map(move |s| {
                let seed = derive(100 + f as u64, s);
                (name, seed, sample_path(params, grid, seed).unwrap())
            })
        })
        .collect()
}

/// Windowed solution when the window check passes, grid solution otherwise.
fn solve_or_grid(path: &LevyPath) -> (BurgersSolution, bool) {
    match solve(path, T) {
        Ok(sol) => (sol, true),
        Err(Error::WindowTooSmall(_)) => (solve_on_grid(path, T).unwrap(), false),
        Err(e) => panic!("{e}"),
    }
}

fn oracle_equivalence(paths: &[(&str, u64, LevyPath)]) -> Outcome {
    let (mut total, mut mismatches) = (0, 0);
    for (_, seed, path) in paths {
        let sol = solve_on_grid(path, T).unwrap();
        let mut rng = rng_for(*seed, 7);
        let xs: Vec<f64> = (0..200).map(|_| rng.random_range(-8.0..8.0)).collect();
        let naive = solve_naive(path, T, &xs).unwrap();
        for (x, want) in xs.iter().zip(naive) {
            let got = sol.vertex_index(sol.evaluate(*x).unwrap().vertex);
            total += 1;
            mismatches += usize::from(got != want);
        }
    }
    outcome(mismatches == 0, format!("{}/{total} queries match the brute-force argmax", total - mismatches))
}

fn velocity_identity(paths: &[(&str, u64, LevyPath)]) -> Outcome {
    let (mut checked, mut bad, mut fallback) = (0, 0, 0);
    let mut worst: f64 = 0.0;
    for (_, _, path) in paths {
        let (sol, windowed) = solve_or_grid(path);
        fallback += usize::from(!windowed);
        for s in extract_shocks(&sol).shocks.iter().filter(|s| !s.boundary_affected) {
            let e = sol.evaluate(s.x).unwrap();
            let avg = 0.5 * (e.u + e.u_left);
            let i_plus = path.grid.nearest_index(s.a_plus);
            let i_minus = path.grid.nearest_index(s.a_minus);
            let slope = (path.values[i_plus] - path.values[i_minus]) / (s.a_plus - s.a_minus);
            let tol = 1e-9 * (1.0 + s.velocity.abs());
            let err = (s.velocity - avg).abs().max((s.velocity + slope).abs());
            worst = worst.max(err / tol);
            checked += 1;
            bad += usize::from(err > tol);
        }
    }
    outcome(
        bad == 0 && checked > 0,
        format!("{checked} interior shocks, {bad} violations, worst error {worst:.2e} of tolerance ({fallback} paths on the grid window)"),
    )
}

fn close(a: f64, b: f64, tol: f64, what: &str, errs: &mut Vec<String>) {
    if (a - b).abs() > tol || (a - b).is_nan() {
        errs.push(format!("{what}: {a} vs {b}"));
    }
}

fn closed_form_fixtures() -> Outcome {
    let h = 0.01;
    let tol = 2.0 * h;
    let mut errs = Vec::new();

    // ψ₀ = ½·1{y ≥ 0}: a(x) = x left of −1, 0 on [−1, 0], x right of 0.
    let up = fixtures::jump_up(0.5, 0.0, 4.0, 801).unwrap();
    let sol = solve(&up, T).unwrap();
    for x in up.grid.points().into_iter().filter(|&x| (-2.0..=2.0).contains(&x)) {
        let want = if (-1.0..=0.0).contains(&x) { 0.0 } else { x };
        close(sol.evaluate(x).unwrap().a, want, tol, &format!("jump-up a({x})"), &mut errs);
    }
    let rep = extract_shocks(&sol);
    if rep.shocks.len() != 1 {
        errs.push(format!("jump-up: {} shocks", rep.shocks.len()));
    } else {
        let s = rep.shocks[0];
        close(s.x, -1.0, tol, "jump-up shock x", &mut errs);
        close(s.a_minus, -1.0, tol, "jump-up a-", &mut errs);
        close(s.a_plus, 0.0, tol, "jump-up a+", &mut errs);
        close(s.mass, 1.0, tol, "jump-up mass", &mut errs);
        close(s.velocity, -0.5, 1e-6, "jump-up velocity", &mut errs);
    }
    match rep.rarefactions.iter().find(|r| r.y == 0.0) {
        Some(r) => close(r.length, 1.0, tol, "jump-up rarefaction", &mut errs),
        None => errs.push("jump-up: no rarefaction at 0".into()),
    }
    for z in &rep.zero_set {
        if z.y > -1.0 + tol && z.y < -tol {
            errs.push(format!("jump-up: zero-set point {} inside (−1, 0)", z.y));
        }
    }
    let zs: Vec<f64> = rep.zero_set.iter().map(|z| z.y).collect();
    for y in up.grid.points().into_iter().filter(|&y| sol.in_window(y) && !(y > -1.0 - tol && y < tol)) {
        if !zs.contains(&y) {
            errs.push(format!("jump-up: grid point {y} missing from the zero set"));
        }
    }
    let r = regen_report(&up, T, 100).unwrap();
    close(r.r.unwrap_or(f64::NAN), 0.0, tol, "jump-up R", &mut errs);
    close(r.s.unwrap_or(f64::NAN), 0.0, tol, "jump-up S", &mut errs);
    close(r.t_first.unwrap_or(f64::NAN), 0.0, tol, "jump-up T", &mut errs);

    // Step at 0.5: (R, S, T) = (0, 0.5, 0.5) and r = [0, 0.5].
    let half = fixtures::jump_up(0.5, 0.5, 4.0, 801).unwrap();
    let r = regen_report(&half, T, 100).unwrap();
    close(r.r.unwrap_or(f64::NAN), 0.0, tol, "step-at-half R", &mut errs);
    close(r.s.unwrap_or(f64::NAN), 0.5, tol, "step-at-half S", &mut errs);
    close(r.t_first.unwrap_or(f64::NAN), 0.5, tol, "step-at-half T", &mut errs);
    if r.rk.len() != 2 || !r.rk_converged {
        errs.push(format!("step-at-half r_k = {:?}", r.rk));
    } else {
        close(r.rk[0], 0.0, tol, "step-at-half r0", &mut errs);
        close(r.rk[1], 0.5, tol, "step-at-half r1", &mut errs);
    }

    // ψ₀ = −½·1{y ≥ 0}: tangent from the corner at 0 to the lower branch at 1.
    let down = fixtures::jump_down(0.5, 0.0, 4.0, 801).unwrap();
    let sol = solve(&down, T).unwrap();
    let rep = extract_shocks(&sol);
    if rep.shocks.len() != 1 {
        errs.push(format!("jump-down: {} shocks", rep.shocks.len()));
    } else {
        let s = rep.shocks[0];
        close(s.x, 1.0, tol, "jump-down shock x", &mut errs);
        close(s.a_minus, 0.0, tol, "jump-down a-", &mut errs);
        close(s.a_plus, 1.0, tol, "jump-down a+", &mut errs);
        close(s.mass, 1.0, tol, "jump-down mass", &mut errs);
        close(s.velocity, 0.5, tol, "jump-down velocity", &mut errs);
        let e = sol.evaluate(s.x).unwrap();
        close(e.u_left, 1.0, tol, "jump-down u(x−)", &mut errs);
        close(e.u, 0.0, tol, "jump-down u(x)", &mut errs);
    }
    for z in &rep.zero_set {
        if z.y > tol && z.y < 1.0 - tol {
            errs.push(format!("jump-down: zero-set point {} inside (0, 1)", z.y));
        }
    }
    let r = regen_report(&down, T, 100).unwrap();
    close(r.r.unwrap_or(f64::NAN), 1.0, tol, "jump-down R", &mut errs);
    close(r.s.unwrap_or(f64::NAN), 1.0, tol, "jump-down S", &mut errs);
    close(r.t_first.unwrap_or(f64::NAN), 1.0, tol, "jump-down T", &mut errs);
    if !r.rk_converged || r.rk.last().copied() != r.t_first {
        errs.push(format!("jump-down r_k = {:?}", r.rk));
    }

    let n = errs.len();
    let head = errs.into_iter().take(3).collect::<Vec<_>>().join("; ");
    outcome(n == 0, if n == 0 { "jump-up, step-at-half and jump-down match the hand values".into() } else { format!("{n} mismatches: {head}") })
}

fn s_equals_t_and_rk() -> Outcome {
    let grid = GridSpec::symmetric(16.0, 4097).unwrap();
    let (mut ok, mut total, mut off_grid) = (0, 0, 0);
    for (f, params) in [STABLE_15, STABLE_075].into_iter().enumerate() {
        for s in 0..500u64 {
            let path = sample_path(params, grid, derive(400 + f as u64, s)).unwrap();
            let m = solve_on_grid(&path, T).unwrap().vertex_count();
            let rep = regen_report(&path, T, m).unwrap();
            let pass = rep.s_index == rep.t_index
                && match rep.t_index {
                    Some(t) => rep.rk_converged && rep.rk_indices.last() == Some(&t) && rep.steps <= m,
                    None => !rep.rk_converged,
                };
            off_grid += usize::from(rep.t_index.is_none());
            ok += usize::from(pass);
            total += 1;
        }
    }
    outcome(
        ok == total,
        format!("{ok}/{total} paths with S == T and r_k ending at T ({off_grid} with neither on the grid)"),
    )
}

fn positive_then_negative() -> Outcome {
    let grid = GridSpec::symmetric(8.0, 4097).unwrap();
    let h = grid.step();
    let (mut violations, mut wide, mut both, mut fallback) = (0, 0, 0, 0);
    for s in 0..500u64 {
        let path = sample_path(STABLE_075, grid, derive(500, s)).unwrap();
        let (sol, windowed) = solve_or_grid(&path);
        fallback += usize::from(!windowed);
        let sp = sign_pattern(&sol);
        violations += sp.violations.len();
        for g in sp.gaps.iter().filter(|g| g.width > 10.0 * h) {
            wide += 1;
            both += usize::from(g.has_positive_phase && g.has_negative_phase);
        }
    }
    let frac = both as f64 / wide.max(1) as f64;
    outcome(
        violations == 0 && frac >= 0.9,
        format!("{violations} sign violations; {both}/{wide} = {:.1}% of wide gaps have both phases ({fallback} paths on the grid window)", 100.0 * frac),
    )
}

type Study = Vec<(&'static str, Vec<RefinementRow>)>;

/// Refinement tables for every family; `window = None` uses each solution's
/// analysis window.
fn studies(window: Option<(f64, f64)>, seed: u64) -> Study {
    FAMILIES
        .iter()
        .enumerate()
        .map(|(f, &(name, params))| {
            (name, refinement_study(params, T, 8.0, &H_LIST, 50, seed + f as u64, window).unwrap())
        })
        .collect()
}

fn rows<'a>(study: &'a Study, name: &str) -> &'a [RefinementRow] {
    &study.iter().find(|(n, _)| *n == name).unwrap().1
}

fn brownian_contacts(study: &Study) -> Outcome {
    let r = rows(study, "brownian");
    let c: Vec<f64> = r.iter().map(|r| r.median_contacts).collect();
    let change = (c[3] - c[2]).abs() / c[2];
    outcome(
        change < 0.25,
        format!("median contacts in [1,2] {c:?}; change between the two finest h {:.1}%", 100.0 * change),
    )
}

fn cauchy_rarefactions(study: &Study) -> Outcome {
    let c: Vec<f64> = rows(study, "cauchy").iter().map(|r| r.median_max_rarefaction).collect();
    let b = rows(study, "brownian")[3].median_max_rarefaction;
    let decreasing = c.windows(2).all(|w| w[1] < w[0]);
    let ratio = c[3] / b;
    outcome(
        decreasing && ratio < 0.5,
        format!("cauchy median max rarefaction {c:.4?}; finest / brownian = {ratio:.3}"),
    )
}

fn contact_fraction(study: &Study) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, r) in study {
        let fr: Vec<f64> = r.iter().map(|r| r.median_contact_fraction).collect();
        pass &= fr.windows(2).all(|w| w[1] <= w[0]);
        parts.push(format!("{name} {fr:.3?}"));
    }
    outcome(pass, parts.join("; "))
}

fn jump_signs() -> Outcome {
    let grid = GridSpec::with_step(8.0, H_LIST[3]).unwrap();
    let (mut agree, mut disagree, mut untracked, mut failed) = (0, 0, 0, 0);
    for s in 0..50u64 {
        let path = sample_path(STABLE_075, grid, derive(900, s)).unwrap();
        let Ok(sol) = solve(&path, T) else {
            failed += 1;
            continue;
        };
        let t = contact_jump_signs(&sol);
        agree += t.agreements;
        disagree += t.disagreements;
        untracked += t.untracked;
    }
    let rate = agree as f64 / (agree + disagree).max(1) as f64;
    outcome(
        rate >= 0.9 && agree > 0,
        format!("{agree} agree, {disagree} disagree ({:.1}%), {untracked} untracked, {failed} paths failed the window check", 100.0 * rate),
    )
}

fn regeneration() -> Outcome {
    let grid = GridSpec::symmetric(16.0, 4097).unwrap();
    let rep = match independence_test(STABLE_15, grid, T, 0.5, 200, 1000) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut rng = rng_for(1001, 0);
    let mut draw = |n: usize| -> Vec<Vec<f64>> {
        (0..n).map(|_| (0..3).map(|_| StandardNormal.sample(&mut rng)).collect()).collect()
    };
    let pvals: Vec<f64> = (0..100u64)
        .map(|run| {
            let (x, y) = (draw(100), draw(100));
            dcor_permutation_test(&x, &y, 999, derive(1002, run)).1
        })
        .collect();
    let ks = stats::ks_uniform(&pvals);
    outcome(
        rep.p_value > 0.01 && ks < 0.15,
        format!(
            "p = {:.3} (dcor {:.3}, {} replicates, {} dropped); calibration KS = {ks:.3}",
            rep.p_value,
            rep.dcor,
            rep.replicates.len(),
            rep.dropped
        ),
    )
}

fn moreau_prox(paths: &[(&str, u64, LevyPath)]) -> Outcome {
    let (mut set_mismatch, mut below) = (0, 0);
    for (_, seed, path) in paths {
        let sol = solve_on_grid(path, T).unwrap();
        if sol.prox_fixed_points() != zero_set_vertices(&sol) {
            set_mismatch += 1;
        }
        let mut rng = rng_for(*seed, 11);
        for _ in 0..100 {
            let i = rng.random_range(0..path.len());
            if sol.moreau_envelope(path.y(i)).unwrap() < path.values[i] {
                below += 1;
            }
        }
    }
    outcome(
        set_mismatch == 0 && below == 0,
        format!("{set_mismatch} paths with prox fixed points != zero set; {below} points with M < psi"),
    )
}

fn integral_diagnostic() -> Outcome {
    let eps = [1e-1, 1e-2, 1e-3];
    let st = abruptness_integral_estimate(STABLE_15, -1.0, 1.0, &eps, 10_000, 1200).unwrap();
    let ca = abruptness_integral_estimate(CAUCHY, -1.0, 1.0, &eps, 10_000, 1201).unwrap();
    let growth = (st[2].estimate - st[1].estimate) / st[1].estimate;
    let (d1, d2) = (ca[1].estimate - ca[0].estimate, ca[2].estimate - ca[1].estimate);
    outcome(
        growth < 0.2 && d2 > 0.5 * d1,
        format!(
            "stable-1.5 relative growth {:.1}%; cauchy increments {d1:.3} then {d2:.3}",
            100.0 * growth
        ),
    )
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |id: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        all &= o.pass;
        println!(
            "{} [{id:>2}] {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    };
    let paths = criterion_one_paths();
    report(1, "oracle equivalence", &mut || oracle_equivalence(&paths));
    report(2, "shock velocity double identity", &mut || velocity_identity(&paths));
    report(3, "closed-form fixtures", &mut closed_form_fixtures);
    report(4, "S == T and r_k termination", &mut s_equals_t_and_rk);
    report(5, "positive-then-negative sign pattern", &mut positive_then_negative);
    let unit_window = OnceCell::new();
    let unit = || unit_window.get_or_init(|| studies(Some(STAT_WINDOW), 600));
    report(6, "brownian contact count stabilizes", &mut || brownian_contacts(unit()));
    report(7, "cauchy rarefactions shrink", &mut || cauchy_rarefactions(unit()));
    let analysis_window = OnceCell::new();
    report(8, "contact fraction non-increasing", &mut || {
        contact_fraction(analysis_window.get_or_init(|| studies(None, 700)))
    });
    report(9, "jump-sign agreement", &mut jump_signs);
    report(10, "regeneration independence", &mut regeneration);
    report(11, "prox fixed points and Moreau bound", &mut || moreau_prox(&paths));
    report(12, "abruptness integral diagnostic", &mut integral_diagnostic);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
