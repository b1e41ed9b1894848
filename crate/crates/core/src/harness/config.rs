use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::Discretization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    FirstLaw,
    SecondLaw,
    Rosen,
    LogNRemark,
    Constants,
    Appendix,
    CfIdentity,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::FirstLaw,
        Experiment::SecondLaw,
        Experiment::Rosen,
        Experiment::LogNRemark,
        Experiment::Constants,
        Experiment::Appendix,
        Experiment::CfIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::FirstLaw => "first_law",
            Experiment::SecondLaw => "second_law",
            Experiment::Rosen => "rosen",
            Experiment::LogNRemark => "log_n_remark",
            Experiment::Constants => "constants",
            Experiment::Appendix => "appendix",
            Experiment::CfIdentity => "cf_identity",
        }
    }
}

/// One experiment run. Unset fields take the experiment's preset; see
/// [`ExperimentConfig::preset`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub alpha: f64,
    pub f_id: String,
    /// Second test function for the Rosen identity.
    pub g_id: String,
    pub n_values: Vec<u64>,
    pub t_values: Vec<f64>,
    pub num_paths: usize,
    pub fine_step: f64,
    pub switch_radius: Option<f64>,
    pub coarse_ratio: f64,
    /// Defaults to `√fine_step`.
    pub epsilon_local_time: Option<f64>,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    /// Largest `n` of the oracle ladder `{n/4, n/2, n}`.
    pub oracle_n: u64,
    /// Frequencies for the CF distance.
    pub freq_grid: Vec<f64>,
}

/// File form: every field but `experiment` is optional.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: Experiment,
    alpha: Option<f64>,
    f_id: Option<String>,
    g_id: Option<String>,
    n_values: Option<Vec<u64>>,
    t_values: Option<Vec<f64>>,
    num_paths: Option<usize>,
    fine_step: Option<f64>,
    switch_radius: Option<f64>,
    coarse_ratio: Option<f64>,
    epsilon_local_time: Option<f64>,
    seed: Option<u64>,
    output_dir: Option<PathBuf>,
    oracle_n: Option<u64>,
    freq_grid: Option<Vec<f64>>,
}

fn default_freqs() -> Vec<f64> {
    (1..=20).map(|k| 0.25 * k as f64).collect()
}

impl ExperimentConfig {
    /// Parameters of the corresponding acceptance run.
    pub fn preset(experiment: Experiment) -> Self {
        let base = ExperimentConfig {
            experiment,
            alpha: 1.0,
            f_id: "gauss".into(),
            g_id: "hat".into(),
            n_values: vec![6, 8, 10],
            t_values: vec![1.0],
            num_paths: 4000,
            fine_step: 0.05,
            switch_radius: None,
            coarse_ratio: 0.01,
            epsilon_local_time: None,
            seed: 20_240_601,
            output_dir: None,
            oracle_n: 80,
            freq_grid: default_freqs(),
        };
        match experiment {
            Experiment::FirstLaw => base,
            Experiment::SecondLaw => {
                ExperimentConfig { f_id: "gauss_deriv".into(), n_values: vec![6, 9, 12], oracle_n: 80, ..base }
            }
            Experiment::Rosen => ExperimentConfig {
                alpha: 1.5,
                f_id: "dog".into(),
                n_values: vec![500, 1000, 2000],
                oracle_n: 2000,
                ..base
            },
            Experiment::LogNRemark => ExperimentConfig { n_values: vec![10_000], t_values: vec![1.0, 2.0], ..base },
            Experiment::Constants => ExperimentConfig {
                alpha: 1.5,
                f_id: "gauss_deriv".into(),
                n_values: vec![1],
                t_values: vec![0.5, 1.0, 2.0],
                num_paths: 1_000_000,
                fine_step: 2.5e-4,
                ..base
            },
            Experiment::Appendix => ExperimentConfig {
                f_id: "gauss_deriv".into(),
                n_values: vec![1],
                num_paths: 100,
                oracle_n: 100,
                ..base
            },
            Experiment::CfIdentity => ExperimentConfig { n_values: vec![1], num_paths: 100_000, ..base },
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut c = ExperimentConfig::preset(raw.experiment);
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = raw.$field { c.$field = v; } )* };
        }
        take!(alpha, f_id, g_id, n_values, t_values, num_paths, fine_step, coarse_ratio, seed, oracle_n, freq_grid);
        c.switch_radius = raw.switch_radius.or(c.switch_radius);
        c.epsilon_local_time = raw.epsilon_local_time.or(c.epsilon_local_time);
        c.output_dir = raw.output_dir.or(c.output_dir);
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn discretization(&self) -> Discretization {
        Discretization {
            fine_step: self.fine_step,
            switch_radius: self.switch_radius,
            coarse_ratio: Some(self.coarse_ratio),
            ..Discretization::default()
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon_local_time.unwrap_or_else(|| self.fine_step.sqrt())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.num_paths < 100 {
            return bad(format!("num_paths must be at least 100, got {}", self.num_paths));
        }
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return bad("n_values must be nonempty and positive".into());
        }
        if self.t_values.is_empty() || self.t_values.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return bad("t_values must be nonempty and positive".into());
        }
        if !(self.fine_step > 0.0) || !(self.coarse_ratio > 0.0) {
            return bad("fine_step and coarse_ratio must be positive".into());
        }
        if self.freq_grid.is_empty() {
            return bad("freq_grid must be nonempty".into());
        }
        match self.experiment {
            Experiment::FirstLaw | Experiment::SecondLaw | Experiment::LogNRemark if self.alpha != 1.0 => {
                bad(format!("{} is a Cauchy (α = 1) experiment, got α = {}", self.experiment.name(), self.alpha))
            }
            Experiment::Rosen if !(self.alpha > 1.0 && self.alpha < 2.0) => {
                bad(format!("rosen needs 1 < α < 2, got {}", self.alpha))
            }
            Experiment::LogNRemark if self.t_values.len() < 2 => bad("log_n_remark compares two t values".into()),
            Experiment::LogNRemark if self.n_values.iter().any(|&n| n < 3) => bad("log_n_remark needs n ≥ 3".into()),
            _ => Ok(()),
        }
    }

    /// Output directory: the config value, else `$OCCUPATION_OUT_DIR`, else `./reports`.
    pub fn resolved_output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("reports"))
    }
}

/// Environment variable naming the default report directory.
pub const OUT_DIR_ENV: &str = "OCCUPATION_OUT_DIR";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_preset() {
        let c = ExperimentConfig::from_toml_str("experiment = \"second_law\"\nnum_paths = 500\nseed = 9\n").unwrap();
        assert_eq!(c.f_id, "gauss_deriv");
        assert_eq!(c.num_paths, 500);
        assert_eq!(c.seed, 9);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_unknown_keys_and_bad_regimes() {
        assert!(ExperimentConfig::from_toml_str("experiment = \"rosen\"\nalpah = 1.5\n").is_err());
        let c = ExperimentConfig::from_toml_str("experiment = \"rosen\"\nalpha = 1.0\n").unwrap();
        assert!(c.validate().is_err());
        let c = ExperimentConfig::from_toml_str("experiment = \"first_law\"\nnum_paths = 10\n").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn round_trips_through_toml() {
        for e in Experiment::ALL {
            let c = ExperimentConfig::preset(e);
            c.validate().unwrap();
            assert_eq!(ExperimentConfig::from_toml_str(&c.to_toml().unwrap()).unwrap(), c);
        }
    }
}
