//! Campbell-Hausdorff calculus on free nilpotent Lie algebras, nondegeneracy conditions for
//! curve families, and polynomial nilpotent group models.

mod conditions;
mod groups;
mod lie;
mod xhat;

use thiserror::Error;

use crate::symcore::SymError;

pub use conditions::{check_conditions, ConditionReport, CurveFamilySpec};
pub use groups::{group_g_r, mizohata_dr, monomial_curve, GRCurve, GroupModel, Independence};
pub use lie::{bch, bracket_expr, lyndon_basis, LieSeries, Word, BCH_MAX_STEP, BCH_TABLE};
pub use xhat::{curve_weights, gamma_r_from_bch, gamma_r_from_xhat, xhat_fields, xhat_formal, XhatFields};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BracketError {
    #[error("not implemented: {0}")]
    Capability(String),
    #[error("not a Lie element: {0}")]
    NotLie(String),
    #[error("group model: {0}")]
    Model(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}
