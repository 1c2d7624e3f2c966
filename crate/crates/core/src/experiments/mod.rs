//! Model-problem catalog, decay sweeps, slope fits and verdicts.

mod catalog;
mod localized;
mod sweep;
mod verdict;

pub use catalog::{
    catalog, conormal_t, curve_mn, find_entry, inline_entry, moment_curve, morin_normal, nondegenerate, onesided, rigid_xray,
    twosided, CatalogEntry, ExpectedClass, LambdaGrid, NumericSetup,
};
pub use localized::{localized_sweep, LocalizedPoint, LocalizedRun, LOCALIZED_SLACK};
pub use sweep::{decay_sweep, fit_slope, passing_window, DecayPoint, DecayRun, SweepOptions};
pub use verdict::{verdict_report, RunOutcome, Status, Verdict, VerdictSummary};

use thiserror::Error;

use crate::degeneracy::DegeneracyError;
use crate::numerics::NumericsError;
use crate::symcore::SymError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("catalog entry {entry} disagrees with the classifier: {}", mismatches.join("; "))]
    Catalog { entry: String, mismatches: Vec<String> },
    #[error(transparent)]
    Degeneracy(#[from] DegeneracyError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Sym(#[from] SymError),
}
