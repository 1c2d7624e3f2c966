use num_traits::Zero;

use crate::symcore::linalg::det_poly;
use crate::symcore::{MultiPoly, PolyVectorField, Rational};

use super::phase::conormal_vars;
use super::DegeneracyError;

/// Δ with the two kernel fields of the planar incidence y2 = S(x1,x2,y1).
#[derive(Clone, Debug, PartialEq)]
pub struct ConormalFields {
    pub delta: MultiPoly,
    /// S_{x2}∂_{x1} − S_{x1}∂_{x2}
    pub x: PolyVectorField,
    /// ∂_{y1} + S_{y1}∂_{y2}
    pub y: PolyVectorField,
    /// (x1, x2, y1, y2) with y2 = S.
    pub point: Vec<Rational>,
}

fn rot_det(s: &MultiPoly) -> MultiPoly {
    let sx1 = s.diff(0);
    let sx2 = s.diff(1);
    let m = vec![vec![sx1.diff(2), sx1], vec![sx2.diff(2), sx2]];
    det_poly(&m).expect("2x2")
}

pub(crate) fn conormal_fields(
    s: &MultiPoly,
    point: &[Rational],
) -> Result<ConormalFields, DegeneracyError> {
    let v = conormal_vars();
    let pt: Vec<Rational> = match point.len() {
        3 => {
            let mut q = point.to_vec();
            q.push(Rational::zero());
            let y2 = s.eval(&q);
            q[3] = y2;
            q
        }
        4 => point.to_vec(),
        n => {
            return Err(DegeneracyError::Precondition(format!(
                "conormal point needs (x1,x2,y1), got {n} coordinates"
            )))
        }
    };
    if s.diff(1).eval(&pt).is_zero() {
        return Err(DegeneracyError::Precondition(
            "S_{x2} vanishes at the base point".into(),
        ));
    }
    let z = MultiPoly::zero(&v);
    let x = PolyVectorField::new(&v, vec![s.diff(1), -&s.diff(0), z.clone(), z.clone()])?;
    let y = PolyVectorField::new(&v, vec![z.clone(), z, MultiPoly::one(&v), s.diff(2)])?;
    Ok(ConormalFields {
        delta: rot_det(s),
        x,
        y,
        point: pt,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RotationalCurvature {
    /// det [[S_{x1y1}, S_{x1}], [S_{x2y1}, S_{x2}]]
    pub delta: MultiPoly,
    /// −½⟨ω,[X,Y]⟩ with Φ = S − y2, ω = d_xΦ − d_yΦ.
    pub delta_from_bracket: MultiPoly,
}

impl RotationalCurvature {
    pub fn agree(&self) -> bool {
        self.delta == self.delta_from_bracket
    }
}

/// S is given over (x1, x2, y1, y2) and must not involve y2.
pub fn rotational_curvature(s: &MultiPoly) -> Result<RotationalCurvature, DegeneracyError> {
    let v = conormal_vars();
    if s.vars() != &v {
        return Err(DegeneracyError::Precondition(
            "S must be written over (x1, x2, y1, y2)".into(),
        ));
    }
    if s.depends_on(3) {
        return Err(DegeneracyError::Precondition(
            "S must not depend on y2".into(),
        ));
    }
    let phi = s - &MultiPoly::var(&v, 3);
    let g = phi.gradient();
    let xf = PolyVectorField::new(
        &v,
        vec![g[1].clone(), -&g[0], MultiPoly::zero(&v), MultiPoly::zero(&v)],
    )?;
    let yf = PolyVectorField::new(
        &v,
        vec![MultiPoly::zero(&v), MultiPoly::zero(&v), g[3].clone(), -&g[2]],
    )?;
    let br = xf.bracket(&yf)?;
    let omega = vec![g[0].clone(), g[1].clone(), -&g[2], -&g[3]];
    let pairing = br.pair(&omega)?;
    Ok(RotationalCurvature {
        delta: rot_det(s),
        delta_from_bracket: pairing.scale(&crate::symcore::rat(-1, 2)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{int, parse_poly};

    #[test]
    fn canonical_graph_has_constant_curvature() {
        let s = parse_poly("x1 + x2*y1", &conormal_vars()).unwrap();
        let r = rotational_curvature(&s).unwrap();
        assert_eq!(r.delta, MultiPoly::constant(&conormal_vars(), int(-1)));
        assert!(r.agree());
    }

    #[test]
    fn cubic_curve_has_linear_curvature() {
        let s = parse_poly("x2 + (x1 - y1)^3/3", &conormal_vars()).unwrap();
        let r = rotational_curvature(&s).unwrap();
        // direct oracle: S_{x1 y1} = -2(x1-y1), S_{x2} = 1, S_{x2 y1} = 0
        let expect = parse_poly("-2*(x1 - y1)", &conormal_vars()).unwrap();
        assert_eq!(r.delta, expect);
        assert!(r.agree());
    }
}
