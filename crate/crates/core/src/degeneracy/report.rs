use std::fmt;

use crate::symcore::Rational;

use super::kernel::{corank, mixed_types, one_sided_type, side_charts};
use super::morin::morin_classify;
use super::phase::{PhaseKind, PhaseSpec};
use super::{DegeneracyError, MorinClass, Side, TypeOrder};

pub const DEFAULT_MAX_ORDER: u32 = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct TypeReport {
    pub kind: &'static str,
    pub point: Vec<Rational>,
    pub corank: usize,
    pub type_left: Option<TypeOrder>,
    pub type_right: Option<TypeOrder>,
    pub mixed_pairs: Vec<(u32, u32)>,
    pub morin_left: MorinClass,
    pub morin_right: MorinClass,
    pub simple_rank_drop: bool,
    pub blowdown_left: bool,
    pub blowdown_right: bool,
}

pub fn classify(
    p: &PhaseSpec,
    point: &[Rational],
    max_order: u32,
) -> Result<TypeReport, DegeneracyError> {
    let cr = corank(p, point)?;
    let mut rep = TypeReport {
        kind: p.kind_name(),
        point: point.to_vec(),
        corank: cr,
        type_left: None,
        type_right: None,
        mixed_pairs: Vec::new(),
        morin_left: MorinClass::NotApplicable,
        morin_right: MorinClass::NotApplicable,
        simple_rank_drop: false,
        blowdown_left: false,
        blowdown_right: false,
    };
    if cr == 0 {
        rep.morin_left = MorinClass::Nondegenerate;
        rep.morin_right = MorinClass::Nondegenerate;
        rep.mixed_pairs = vec![(0, 0)];
        if !matches!(p.kind, PhaseKind::Frequency { .. }) {
            rep.type_left = Some(TypeOrder::Finite(0));
            rep.type_right = Some(TypeOrder::Finite(0));
        }
        return Ok(rep);
    }
    if cr > 1 || matches!(p.kind, PhaseKind::Frequency { .. }) {
        return Ok(rep);
    }
    let left = one_sided_type(p, point, Side::Left, max_order)?;
    rep.simple_rank_drop = left.simple_rank_drop;
    rep.type_left = Some(left.order);
    rep.type_right = match one_sided_type(p, point, Side::Right, max_order) {
        Ok(t) => Some(t.order),
        Err(DegeneracyError::UnsupportedKind { .. }) => None,
        Err(e) => return Err(e),
    };
    rep.mixed_pairs = match mixed_types(p, point, max_order) {
        Ok(v) => v,
        Err(DegeneracyError::ExceedsMaxOrder(_) | DegeneracyError::UnsupportedKind { .. }) => {
            Vec::new()
        }
        Err(e) => return Err(e),
    };
    let charts = match side_charts(p, point) {
        Ok(c) => Some(c),
        Err(DegeneracyError::UnsupportedKind { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some((l, r)) = charts {
        let ml = morin_classify(&l.germ, &l.point, max_order)?;
        rep.morin_left = ml.class;
        rep.blowdown_left = ml.blowdown;
        if let Some(r) = r {
            let mr = morin_classify(&r.germ, &r.point, max_order)?;
            rep.morin_right = mr.class;
            rep.blowdown_right = mr.blowdown;
        }
    }
    Ok(rep)
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |t| t.to_string())
}

impl fmt::Display for TypeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt: Vec<String> = self.point.iter().map(|c| c.to_string()).collect();
        let pairs: Vec<String> = self
            .mixed_pairs
            .iter()
            .map(|(j, k)| format!("({j},{k})"))
            .collect();
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "point: ({})", pt.join(", "))?;
        writeln!(f, "corank: {}", self.corank)?;
        writeln!(f, "type_left: {}", opt(&self.type_left))?;
        writeln!(f, "type_right: {}", opt(&self.type_right))?;
        writeln!(f, "mixed_pairs: {{{}}}", pairs.join(", "))?;
        writeln!(f, "morin_left: {}", self.morin_left)?;
        writeln!(f, "morin_right: {}", self.morin_right)?;
        writeln!(f, "simple_rank_drop: {}", self.simple_rank_drop)?;
        write!(
            f,
            "blowdown: left={} right={}",
            self.blowdown_left, self.blowdown_right
        )
    }
}
