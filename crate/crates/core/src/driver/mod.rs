//! Reproducible experiment runs: one config in, CSV/JSON files out.
//!
//! Every CSV starts with `# burgers-levy v<version> config_hash=<hash>
//! seed=<seed>`, and the resolved configuration is written next to the
//! outputs as `effective_config.json`. The same config always produces
//! byte-identical files.

mod config;
mod output;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

pub use config::{params_from_flags, ExperimentConfig};
pub use output::{metadata_line, read_csv, read_path, write_csv, write_jumps, write_path, Table};

use crate::error::{Error, Result};
use crate::levy::{abruptness_integral_estimate, sample_path, LevyPath};
use crate::regen::{independence_test, regen_report, IndependenceReport, RegenReport};
use crate::shocks::{extract_shocks, refinement_study};
use crate::solver::{solve_with_margin, BurgersSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Simulate,
    Solve,
    Shocks,
    Regen,
    Refine,
    Integral,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Simulate,
        Subcommand::Solve,
        Subcommand::Shocks,
        Subcommand::Regen,
        Subcommand::Refine,
        Subcommand::Integral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Simulate => "simulate",
            Subcommand::Solve => "solve",
            Subcommand::Shocks => "shocks",
            Subcommand::Regen => "regen",
            Subcommand::Refine => "refine",
            Subcommand::Integral => "integral",
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown subcommand {s:?}")))
    }
}

/// Files written by one run, in the order they were written.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
}

#[derive(Serialize)]
struct RegenFile<'a> {
    path: &'a RegenReport,
    independence: Option<IndependenceSummary<'a>>,
}

#[derive(Serialize)]
struct IndependenceSummary<'a> {
    p_value: f64,
    dcor: f64,
    pearson: [f64; 3],
    replicates: usize,
    dropped: usize,
    note: &'a str,
}

impl<'a> From<&'a IndependenceReport> for IndependenceSummary<'a> {
    fn from(r: &'a IndependenceReport) -> Self {
        IndependenceSummary {
            p_value: r.p_value,
            dcor: r.dcor,
            pearson: r.pearson,
            replicates: r.replicates.len(),
            dropped: r.dropped,
            note: &r.note,
        }
    }
}

struct Run<'a> {
    cfg: &'a ExperimentConfig,
    dir: &'a Path,
    meta: String,
    files: Vec<PathBuf>,
}

impl Run<'_> {
    fn csv<I>(&mut self, name: &str, header: &[&str], rows: I) -> Result<()>
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        let p = self.dir.join(name);
        write_csv(&p, &self.meta, header, rows)?;
        self.files.push(p);
        Ok(())
    }

    fn text(&mut self, name: &str, body: String) -> Result<()> {
        let p = self.dir.join(name);
        fs::write(&p, body)?;
        self.files.push(p);
        Ok(())
    }

    fn path(&self) -> Result<LevyPath> {
        match &self.cfg.path_csv {
            Some(p) => read_path(p, self.cfg.jumps_csv.as_deref()),
            None => sample_path(self.cfg.params, self.cfg.grid()?, self.cfg.seed),
        }
    }

    fn solution(&self) -> Result<BurgersSolution> {
        let path = self.path()?;
        let width = path.grid.last() - path.grid.first();
        solve_with_margin(&path, self.cfg.t, self.cfg.window_margin * width)
    }
}

fn s<T: ToString>(v: T) -> String {
    v.to_string()
}

/// Runs `cmd` under `cfg`, writing into `out_dir` (created if needed).
pub fn run_experiment(cfg: &ExperimentConfig, cmd: Subcommand, out_dir: &Path) -> Result<RunOutput> {
    cfg.validate()?;
    fs::create_dir_all(out_dir)?;
    let mut run = Run {
        cfg,
        dir: out_dir,
        meta: metadata_line(&cfg.hash(), cfg.seed),
        files: Vec::new(),
    };
    run.text("effective_config.json", cfg.to_json() + "\n")?;

    match cmd {
        Subcommand::Simulate => {
            let path = run.path()?;
            for (name, writer) in [
                ("path.csv", write_path as fn(&Path, &str, &LevyPath) -> Result<()>),
                ("jumps.csv", write_jumps),
            ] {
                let p = out_dir.join(name);
                writer(&p, &run.meta, &path)?;
                run.files.push(p);
            }
        }
        Subcommand::Solve => {
            let sol = run.solution()?;
            let cm = &sol.majorant;
            let vertices = (0..sol.vertex_count()).map(|k| {
                vec![
                    s(cm.ys[k]),
                    s(cm.vs[k]),
                    s(cm.left_slope(k)),
                    s(cm.right_slope(k)),
                    s(sol.x_lo[k]),
                    s(sol.x_hi[k]),
                    s(sol.boundary_affected[k]),
                ]
            });
            run.csv(
                "vertices.csv",
                &["y", "c_bar", "s_left", "s_right", "x_lo", "x_hi", "boundary_affected"],
                vertices,
            )?;
            let xs: Vec<f64> = sol.path.grid.points().into_iter().filter(|&x| sol.in_window(x)).collect();
            let samples = xs
                .iter()
                .map(|&x| sol.evaluate(x).map(|e| vec![s(x), s(e.a), s(e.u)]))
                .collect::<Result<Vec<_>>>()?;
            run.csv("samples.csv", &["x", "a", "u"], samples)?;
        }
        Subcommand::Shocks => {
            let report = extract_shocks(&run.solution()?);
            run.csv(
                "shocks.csv",
                &["x", "a_minus", "a_plus", "mass", "velocity", "boundary_affected"],
                report.shocks.iter().map(|k| {
                    vec![s(k.x), s(k.a_minus), s(k.a_plus), s(k.mass), s(k.velocity), s(k.boundary_affected)]
                }),
            )?;
            run.csv(
                "contacts.csv",
                &["vertex", "y"],
                report.contacts.iter().map(|c| vec![s(c.vertex), s(c.y)]),
            )?;
            run.csv(
                "zero_set.csv",
                &["vertex", "y"],
                report.zero_set.iter().map(|c| vec![s(c.vertex), s(c.y)]),
            )?;
            run.csv(
                "rarefactions.csv",
                &["vertex", "y", "x_lo", "x_hi", "length", "boundary_affected"],
                report.rarefactions.iter().map(|r| {
                    vec![s(r.vertex), s(r.y), s(r.x_lo), s(r.x_hi), s(r.length), s(r.boundary_affected)]
                }),
            )?;
        }
        Subcommand::Regen => {
            let path = run.path()?;
            let report = regen_report(&path, cfg.t, cfg.k_max)?;
            // Replicates need sampled paths, so a file-backed run reports the
            // single path only.
            let indep = match cfg.path_csv {
                Some(_) => None,
                None => Some(independence_test(cfg.params, cfg.grid()?, cfg.t, cfg.w, cfg.n_rep, cfg.seed)?),
            };
            let body = RegenFile { path: &report, independence: indep.as_ref().map(Into::into) };
            run.text("regen.json", serde_json::to_string_pretty(&body)? + "\n")?;
            let rows = indep.iter().flat_map(|r| r.replicates.iter()).map(|r| {
                vec![
                    s(r.replicate),
                    s(r.t_first),
                    s(r.pre.mean_u),
                    s(r.pre.min_u),
                    s(r.pre.shocks),
                    s(r.post.mean_u),
                    s(r.post.min_u),
                    s(r.post.shocks),
                ]
            });
            run.csv(
                "replicates.csv",
                &[
                    "replicate", "t_first", "pre_mean_u", "pre_min_u", "pre_shocks", "post_mean_u",
                    "post_min_u", "post_shocks",
                ],
                rows,
            )?;
        }
        Subcommand::Refine => {
            let rows = refinement_study(
                cfg.params,
                cfg.t,
                cfg.half_width,
                &cfg.h_list,
                cfg.n_rep,
                cfg.seed,
                cfg.stat_window,
            )?;
            run.csv(
                "refine.csv",
                &[
                    "h", "median_contacts", "median_zero_set", "median_max_rarefaction",
                    "median_contact_fraction", "replicates", "failed",
                ],
                rows.iter().map(|r| {
                    vec![
                        s(r.h),
                        s(r.median_contacts),
                        s(r.median_zero_set),
                        s(r.median_max_rarefaction),
                        s(r.median_contact_fraction),
                        s(r.replicates),
                        s(r.failed),
                    ]
                }),
            )?;
        }
        Subcommand::Integral => {
            let (a, b) = cfg.interval;
            let rows = abruptness_integral_estimate(cfg.params, a, b, &cfg.eps_list, cfg.n_mc, cfg.seed)?;
            run.csv("integral.csv", &["eps", "estimate"], rows.iter().map(|r| vec![s(r.eps), s(r.estimate)]))?;
        }
    }
    Ok(RunOutput { files: run.files })
}
