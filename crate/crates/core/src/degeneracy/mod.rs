//! Classification of the canonical relation attached to a phase.

mod curvature;
mod flags;
mod kernel;
mod morin;
mod newton;
mod phase;
mod predict;
mod report;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::symcore::SymError;

pub use curvature::{rotational_curvature, ConormalFields, RotationalCurvature};
pub use flags::{curve_flag_check, FlagCheck};
pub use kernel::{
    chart_kernel_fields, corank, hessian_and_kernel_fields, interleaving_values, mixed_types, one_sided_type,
    side_charts, side_operator, KernelData, OneSidedType,
};
pub use morin::{flag_manifold, morin_classify, MorinOutcome};
pub use newton::{newton_predict, NewtonReport};
pub use phase::{
    conormal_vars, curve_param_vars, frequency_vars, oscillatory_vars, PhaseKind, PhaseSpec,
    SideChart,
};
pub use predict::{predicted_decay, Prediction};
pub use report::{classify, TypeReport, DEFAULT_MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DegeneracyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("block {block} is singular at the base point")]
    SingularBlock { block: String },
    #[error("corank {0} at the base point; classification needs corank at most 1")]
    Corank(usize),
    #[error("{op} is not available for phases of kind {kind}")]
    UnsupportedKind {
        op: &'static str,
        kind: &'static str,
    },
    #[error("no nonvanishing word up to order {0}")]
    ExceedsMaxOrder(u32),
    #[error("germ is not in adapted form: {0}")]
    Structural(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

/// Order of vanishing along a kernel field; `Exceeds(m)` means no nonzero value up to order m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeOrder {
    Finite(u32),
    Exceeds(u32),
}

impl TypeOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            TypeOrder::Finite(k) => Some(k),
            TypeOrder::Exceeds(_) => None,
        }
    }
}

impl fmt::Display for TypeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeOrder::Finite(k) => write!(f, "{k}"),
            TypeOrder::Exceeds(m) => write!(f, "inf(>{m})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MorinClass {
    Nondegenerate,
    /// S_{1_r,0}; r = 1 is the fold, r = 2 the cusp.
    Morin(u32),
    Blowdown,
    NotSmoothSingularVariety,
    Unclassified,
    NotApplicable,
}

impl fmt::Display for MorinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorinClass::Nondegenerate => f.write_str("nondegenerate"),
            MorinClass::Morin(1) => f.write_str("fold"),
            MorinClass::Morin(2) => f.write_str("cusp"),
            MorinClass::Morin(r) => write!(f, "S_{{1_{r},0}}"),
            MorinClass::Blowdown => f.write_str("blowdown"),
            MorinClass::NotSmoothSingularVariety => f.write_str("not-smooth-singular-variety"),
            MorinClass::Unclassified => f.write_str("unclassified"),
            MorinClass::NotApplicable => f.write_str("n/a"),
        }
    }
}
