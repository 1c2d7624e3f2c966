use std::fmt;

use crate::symcore::{int, rat, Rational};

use super::flags::curve_flag_check;
use super::newton::newton_predict;
use super::phase::{PhaseKind, PhaseSpec};
use super::report::TypeReport;

#[derive(Clone, Debug, PartialEq)]
pub enum Prediction {
    Exponent {
        value: Rational,
        governing: &'static str,
        conjectural: bool,
    },
    NoPrediction {
        reason: String,
    },
}

impl Prediction {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Prediction::Exponent { value, .. } => Some(value),
            Prediction::NoPrediction { .. } => None,
        }
    }

    pub fn governing(&self) -> Option<&'static str> {
        match self {
            Prediction::Exponent { governing, .. } => Some(governing),
            Prediction::NoPrediction { .. } => None,
        }
    }

    pub fn is_conjectural(&self) -> bool {
        matches!(self, Prediction::Exponent { conjectural: true, .. })
    }

    fn exact(value: Rational, governing: &'static str) -> Self {
        Prediction::Exponent {
            value,
            governing,
            conjectural: false,
        }
    }

    fn none(reason: impl Into<String>) -> Self {
        Prediction::NoPrediction {
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Exponent {
                value,
                governing,
                conjectural,
            } => {
                write!(f, "{value} ({governing}")?;
                if *conjectural {
                    f.write_str(", conjectural")?;
                }
                f.write_str(")")
            }
            Prediction::NoPrediction { reason } => write!(f, "no prediction: {reason}"),
        }
    }
}

/// Sharpest decay exponent of the operator (or of the multiplier, for the translation-invariant kinds).
pub fn predicted_decay(p: &PhaseSpec, report: &TypeReport) -> Prediction {
    match &p.kind {
        PhaseKind::Oscillatory { .. } => oscillatory(p.d_left as i64, report),
        PhaseKind::Conormal2d { .. } => {
            if report.mixed_pairs.is_empty() {
                return Prediction::none("mixed type not found up to the maximal order");
            }
            let nr = newton_predict(&report.mixed_pairs);
            Prediction::exact(-rat(1, 2) - nr.alpha, "newton-polygon")
        }
        PhaseKind::CurveAverage { gamma } => {
            let d = gamma.len();
            let t0 = &report.point[2 * d - 1] - &report.point[0];
            let dg: Vec<_> = gamma.iter().map(|g| g.diff(0)).collect();
            match curve_flag_check(&dg, &t0, d) {
                Ok(fc) if fc.independent => {
                    Prediction::exact(-rat(1, d as i64), "curve-average-multiplier")
                }
                Ok(_) => Prediction::none("derivatives of the curve are dependent at the point"),
                Err(e) => Prediction::none(e.to_string()),
            }
        }
        PhaseKind::RigidXray { gamma } => {
            let m = gamma.len();
            if m == 0 {
                return Prediction::none("empty curve");
            }
            let xd = &report.point[m];
            let dg: Vec<_> = gamma.iter().map(|g| g.diff(0)).collect();
            match curve_flag_check(&dg, xd, m) {
                Ok(fc) if fc.independent => {
                    Prediction::exact(-rat(1, m as i64), "rigid-xray-multiplier")
                }
                Ok(_) => Prediction::none("derivatives of the curve are dependent at the point"),
                Err(e) => Prediction::none(e.to_string()),
            }
        }
        PhaseKind::Frequency { n_freq, .. } => {
            if report.corank == 0 {
                Prediction::exact(
                    -rat((p.d_left + n_freq) as i64, 2),
                    "frequency-nondegenerate",
                )
            } else {
                Prediction::none("frequency phase is degenerate at the point")
            }
        }
        PhaseKind::Germ { .. } => Prediction::none("a bare map germ defines no operator"),
    }
}

fn oscillatory(d: i64, r: &TypeReport) -> Prediction {
    if r.corank == 0 {
        return Prediction::exact(-rat(d, 2), "nondegenerate");
    }
    if r.corank > 1 {
        return Prediction::none(format!("corank {}", r.corank));
    }
    let base = -rat(d - 1, 2);
    let tl = r.type_left.and_then(|t| t.finite());
    let tr = r.type_right.and_then(|t| t.finite());
    if let (Some(a), Some(b)) = (tl, tr) {
        if a == 1 && b == 1 {
            return Prediction::exact(base - rat(1, 3), "two-sided-fold");
        }
        if a <= 2 && b <= 2 {
            return Prediction::exact(base - rat(1, 4), "two-sided-type-2");
        }
    }
    let Some(rr) = [tl, tr].into_iter().flatten().min() else {
        return Prediction::none("both sides exceed the maximal order");
    };
    Prediction::Exponent {
        value: base - Rational::from_integer(1.into()) / int(2 * rr as i64 + 2),
        governing: "one-sided-type",
        conjectural: rr > 3,
    }
}
