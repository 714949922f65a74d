use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::levy::{GridSpec, JumpLaw, LevyParams};
use crate::solver::WINDOW_MARGIN_FRACTION;

/// Full description of one experiment. Every field is written out in
/// `effective_config.json`, defaults included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub params: LevyParams,
    /// Domain half-width: the grid is `[−L, L]`.
    #[serde(rename = "L")]
    pub half_width: f64,
    /// Grid points; ignored when `h` is set.
    pub n: usize,
    pub h: Option<f64>,
    pub t: f64,
    pub seed: u64,
    pub n_rep: usize,
    /// Trimmed from each side of the domain to form the analysis window,
    /// as a fraction of the domain width.
    pub window_margin: f64,
    /// Statistics window for `refine` (defaults to the analysis window).
    pub stat_window: Option<(f64, f64)>,
    pub h_list: Vec<f64>,
    pub eps_list: Vec<f64>,
    /// Interval `[a, b]` of the abruptness integral.
    pub interval: (f64, f64),
    pub n_mc: usize,
    /// Half-width of the feature windows around `T` in `regen`.
    pub w: f64,
    pub k_max: usize,
    /// Optional input path CSV (`y,psi`) used instead of sampling.
    pub path_csv: Option<PathBuf>,
    /// Optional tracked-jump CSV (`index,y,size`) paired with `path_csv`.
    pub jumps_csv: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            params: LevyParams::Brownian { sigma: 1.0 },
            half_width: 16.0,
            n: 4097,
            h: None,
            t: 1.0,
            seed: 0,
            n_rep: 200,
            window_margin: WINDOW_MARGIN_FRACTION,
            stat_window: None,
            h_list: vec![1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0, 1.0 / 512.0],
            eps_list: vec![1e-1, 1e-2, 1e-3],
            interval: (-1.0, 1.0),
            n_mc: 10_000,
            w: 0.5,
            k_max: 10_000,
            path_csv: None,
            jumps_csv: None,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.t.is_nan() || self.t <= 0.0 {
            return Err(Error::Config(format!("t = {} must be > 0", self.t)));
        }
        if !(0.0..0.5).contains(&self.window_margin) {
            return Err(Error::Config(format!(
                "window_margin = {} must lie in [0, 0.5)",
                self.window_margin
            )));
        }
        self.grid().map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    pub fn grid(&self) -> Result<GridSpec> {
        match self.h {
            Some(h) => GridSpec::with_step(self.half_width, h),
            None => GridSpec::symmetric(self.half_width, self.n),
        }
    }

    /// First 16 hex digits of the SHA-256 of the compact JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Builds family parameters from a family word and optional numeric flags,
/// falling back to the values already in `base` when it is the same family.
pub fn params_from_flags(
    family: Option<&str>,
    base: LevyParams,
    alpha: Option<f64>,
    beta: Option<f64>,
    sigma: Option<f64>,
    scale: Option<f64>,
) -> Result<LevyParams> {
    let family = family.map(str::to_ascii_lowercase);
    let params = match (family.as_deref(), base) {
        (None, LevyParams::Brownian { sigma: s }) | (Some("brownian"), LevyParams::Brownian { sigma: s }) => {
            LevyParams::Brownian { sigma: sigma.unwrap_or(s) }
        }
        (Some("brownian"), _) => LevyParams::Brownian { sigma: sigma.unwrap_or(1.0) },
        (None, LevyParams::Stable { alpha: a, beta: b, scale: c })
        | (Some("stable"), LevyParams::Stable { alpha: a, beta: b, scale: c }) => LevyParams::Stable {
            alpha: alpha.unwrap_or(a),
            beta: beta.unwrap_or(b),
            scale: scale.unwrap_or(c),
        },
        (Some("stable"), _) => LevyParams::Stable {
            alpha: alpha.unwrap_or(1.5),
            beta: beta.unwrap_or(0.0),
            scale: scale.unwrap_or(1.0),
        },
        (None, LevyParams::Cauchy { scale: c }) | (Some("cauchy"), LevyParams::Cauchy { scale: c }) => {
            LevyParams::Cauchy { scale: scale.unwrap_or(c) }
        }
        (Some("cauchy"), _) => LevyParams::Cauchy { scale: scale.unwrap_or(1.0) },
        (None, p @ LevyParams::CompoundPoisson { .. }) => p,
        (Some("compound_poisson" | "compound-poisson" | "poisson"), p) => match p {
            LevyParams::CompoundPoisson { .. } => p,
            _ => LevyParams::CompoundPoisson {
                rate: 1.0,
                jumps: JumpLaw::Normal { mean: 0.0, std_dev: scale.unwrap_or(1.0) },
            },
        },
        (Some(other), _) => return Err(Error::Config(format!("unknown family {other:?}"))),
    };
    params.validate().map_err(|e| Error::Config(e.to_string()))?;
    Ok(params)
}
