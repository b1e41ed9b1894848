//! Config-driven experiments: Monte-Carlo ensembles and oracles compared
//! against the limit laws, with JSON/CSV reports and pass/fail verdicts.

mod config;
mod report;
mod run;
mod stats;

pub use config::{Experiment, ExperimentConfig, OUT_DIR_ENV};
pub use report::{Comparison, OracleEntry, Row, StatReport, Verdict, CSV_COLUMNS, SCHEMA_VERSION};
pub use run::{run_experiment, TREND_Z};
pub use stats::{
    cf_distance, empirical_cf, ks_distance, ks_two_sample, moment_table, paired_se, summarize, MomentRow, Summary,
};
