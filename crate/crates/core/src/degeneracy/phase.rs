use std::sync::Arc;

use crate::symcore::{parse_poly, var_list, MultiPoly, PolyVectorField, Rational};

use super::DegeneracyError;

/// The geometric data attached to a phase; each variant knows its own charts.
#[derive(Clone, Debug, PartialEq)]
pub enum PhaseKind {
    /// Φ(x,z) over x1..xd, z1..zd.
    Oscillatory { phi: MultiPoly },
    /// Incidence y2 = S(x1,x2,y1) in the plane; S over x1,x2,y1.
    Conormal2d { s: MultiPoly },
    /// Translation-invariant curve average with Γ(a) = (a, Γ_2(a), …, Γ_d(a)).
    CurveAverage { gamma: Vec<MultiPoly> },
    /// Rigid line complex x' + s·γ(x_d) with γ(a) in R^{d-1}.
    RigidXray { gamma: Vec<MultiPoly> },
    /// Map germ t ↦ (t', h(t)) in adapted coordinates, kernel direction = last variable.
    Germ { h: MultiPoly },
    /// Ψ(x,z,θ) over x1..xd, z1..zd, th1..thN.
    Frequency { psi: MultiPoly, n_freq: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSpec {
    pub d_left: usize,
    pub d_right: usize,
    pub kind: PhaseKind,
}

pub fn oscillatory_vars(d: usize) -> Arc<[String]> {
    let mut names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    names.extend((1..=d).map(|i| format!("z{i}")));
    names.into()
}

pub fn frequency_vars(d: usize, n: usize) -> Arc<[String]> {
    let mut names: Vec<String> = oscillatory_vars(d).to_vec();
    names.extend((1..=n).map(|i| format!("th{i}")));
    names.into()
}

pub fn conormal_vars() -> Arc<[String]> {
    var_list(&["x1", "x2", "y1", "y2"])
}

pub fn curve_param_vars() -> Arc<[String]> {
    var_list(&["a"])
}

impl PhaseSpec {
    pub fn oscillatory(d: usize, phi: &str) -> Result<Self, DegeneracyError> {
        let phi = parse_poly(phi, &oscillatory_vars(d))?;
        Ok(PhaseSpec {
            d_left: d,
            d_right: d,
            kind: PhaseKind::Oscillatory { phi },
        })
    }

    pub fn conormal(s: &str) -> Result<Self, DegeneracyError> {
        let s = parse_poly(s, &conormal_vars())?;
        if s.depends_on(3) {
            return Err(DegeneracyError::Precondition(
                "S must not depend on y2".into(),
            ));
        }
        Ok(PhaseSpec {
            d_left: 2,
            d_right: 2,
            kind: PhaseKind::Conormal2d { s },
        })
    }

    /// `gamma` lists Γ_2..Γ_d as strings in `a`; Γ_1(a) = a is implicit.
    pub fn curve_average(gamma: &[&str]) -> Result<Self, DegeneracyError> {
        let v = curve_param_vars();
        let mut comps = vec![MultiPoly::var(&v, 0)];
        for g in gamma {
            comps.push(parse_poly(g, &v)?);
        }
        let d = comps.len();
        Ok(PhaseSpec {
            d_left: d,
            d_right: d,
            kind: PhaseKind::CurveAverage { gamma: comps },
        })
    }

    pub fn rigid_xray(gamma: &[&str]) -> Result<Self, DegeneracyError> {
        let v = curve_param_vars();
        let comps = gamma
            .iter()
            .map(|g| parse_poly(g, &v))
            .collect::<Result<Vec<_>, _>>()?;
        let d = comps.len() + 1;
        Ok(PhaseSpec {
            d_left: d,
            d_right: d,
            kind: PhaseKind::RigidXray { gamma: comps },
        })
    }

    pub fn germ(n: usize, h: &str) -> Result<Self, DegeneracyError> {
        let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        let v: Arc<[String]> = names.into();
        let h = parse_poly(h, &v)?;
        Ok(PhaseSpec {
            d_left: n,
            d_right: n,
            kind: PhaseKind::Germ { h },
        })
    }

    pub fn frequency(d: usize, n_freq: usize, psi: &str) -> Result<Self, DegeneracyError> {
        let psi = parse_poly(psi, &frequency_vars(d, n_freq))?;
        Ok(PhaseSpec {
            d_left: d,
            d_right: d,
            kind: PhaseKind::Frequency { psi, n_freq },
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            PhaseKind::Oscillatory { .. } => "oscillatory",
            PhaseKind::Conormal2d { .. } => "conormal-2d",
            PhaseKind::CurveAverage { .. } => "curve-average",
            PhaseKind::RigidXray { .. } => "rigid-xray",
            PhaseKind::Germ { .. } => "germ",
            PhaseKind::Frequency { .. } => "frequency",
        }
    }

    /// Scalar phase where one exists: Φ itself, or S(x,y1) − y2 for the conormal kind.
    pub fn phi(&self) -> Option<MultiPoly> {
        match &self.kind {
            PhaseKind::Oscillatory { phi } => Some(phi.clone()),
            PhaseKind::Conormal2d { s } => {
                let v = conormal_vars();
                Some(s - &MultiPoly::var(&v, 3))
            }
            _ => None,
        }
    }
}

/// Adapted chart of one projection: ring, germ component g, det = ∂g/∂t_n, kernel field ∂/∂t_n.
#[derive(Clone, Debug, PartialEq)]
pub struct SideChart {
    pub germ: MultiPoly,
    pub det: MultiPoly,
    pub kernel: PolyVectorField,
    pub point: Vec<Rational>,
}

impl SideChart {
    pub(crate) fn from_germ(germ: MultiPoly, point: Vec<Rational>) -> Self {
        let n = germ.nvars();
        let det = germ.diff(n - 1);
        let kernel = PolyVectorField::coordinate(germ.vars(), n - 1);
        SideChart {
            germ,
            det,
            kernel,
            point,
        }
    }
}

fn lift(p: &MultiPoly, image: &MultiPoly) -> MultiPoly {
    p.substitute_all(std::slice::from_ref(image))
        .expect("single-variable substitution")
}

/// Charts of π_L and π_R for the curve-average kind.
///
/// Left chart (x1..xd, xi2..xid, y1): ξ1 = −Σ ξ_i Γ_i'(y1 − x1).
/// Right chart (y1..yd, eta2..etad, x1): η1 = −Σ η_i Γ_i'(y1 − x1).
pub(crate) fn curve_charts(
    gamma: &[MultiPoly],
    point: &[Rational],
) -> Result<(SideChart, SideChart), DegeneracyError> {
    let d = gamma.len();
    if d < 2 {
        return Err(DegeneracyError::Precondition(
            "curve needs at least two components".into(),
        ));
    }
    let n = 2 * d;
    if point.len() != n {
        return Err(DegeneracyError::Precondition(format!(
            "curve chart point needs {n} coordinates (x, xi', y1)"
        )));
    }
    let mut lnames: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    lnames.extend((2..=d).map(|i| format!("xi{i}")));
    lnames.push("y1".into());
    let lv: Arc<[String]> = lnames.into();
    let u = &MultiPoly::var(&lv, n - 1) - &MultiPoly::var(&lv, 0);
    let mut gl = MultiPoly::zero(&lv);
    for i in 1..d {
        let dg = lift(&gamma[i].diff(0), &u);
        gl = &gl - &(&MultiPoly::var(&lv, d + i - 1) * &dg);
    }
    let mut rnames: Vec<String> = (1..=d).map(|i| format!("y{i}")).collect();
    rnames.extend((2..=d).map(|i| format!("eta{i}")));
    rnames.push("x1".into());
    let rv: Arc<[String]> = rnames.into();
    let ur = &MultiPoly::var(&rv, 0) - &MultiPoly::var(&rv, n - 1);
    let mut gr = MultiPoly::zero(&rv);
    for i in 1..d {
        let dg = lift(&gamma[i].diff(0), &ur);
        gr = &gr - &(&MultiPoly::var(&rv, d + i - 1) * &dg);
    }
    let x = &point[..d];
    let xi = &point[d..2 * d - 1];
    let y1 = &point[n - 1];
    let alpha = y1 - &x[0];
    let mut rp: Vec<Rational> = Vec::with_capacity(n);
    rp.push(y1.clone());
    for i in 1..d {
        let g = gamma[i].eval(std::slice::from_ref(&alpha));
        rp.push(&x[i] + &g);
    }
    rp.extend(xi.iter().cloned());
    rp.push(x[0].clone());
    Ok((
        SideChart::from_germ(gl, point.to_vec()),
        SideChart::from_germ(gr, rp),
    ))
}

/// Charts of π_L and π_R for the rigid line complex.
///
/// Left chart (x1..x_{d-1}, xd, tau1..tau_{d-1}, yd): germ yd·τ·γ'(xd).
/// Right chart (w1..w_{d-1}, yd, tau1..tau_{d-1}, xd) with w = x' + yd·γ(xd): germ τ·γ(xd).
pub(crate) fn rigid_charts(
    gamma: &[MultiPoly],
    point: &[Rational],
) -> Result<(SideChart, SideChart), DegeneracyError> {
    let m = gamma.len();
    let n = 2 * m + 2;
    if point.len() != n {
        return Err(DegeneracyError::Precondition(format!(
            "rigid chart point needs {n} coordinates (x', xd, tau, yd)"
        )));
    }
    let mut lnames: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    lnames.push(format!("x{}", m + 1));
    lnames.extend((1..=m).map(|i| format!("tau{i}")));
    lnames.push(format!("y{}", m + 1));
    let lv: Arc<[String]> = lnames.into();
    let xd = MultiPoly::var(&lv, m);
    let yd = MultiPoly::var(&lv, n - 1);
    let mut pair = MultiPoly::zero(&lv);
    for i in 0..m {
        pair = &pair + &(&MultiPoly::var(&lv, m + 1 + i) * &lift(&gamma[i].diff(0), &xd));
    }
    let gl = &yd * &pair;

    let mut rnames: Vec<String> = (1..=m).map(|i| format!("w{i}")).collect();
    rnames.push(format!("y{}", m + 1));
    rnames.extend((1..=m).map(|i| format!("tau{i}")));
    rnames.push(format!("x{}", m + 1));
    let rv: Arc<[String]> = rnames.into();
    let xr = MultiPoly::var(&rv, n - 1);
    let mut gr = MultiPoly::zero(&rv);
    for i in 0..m {
        gr = &gr + &(&MultiPoly::var(&rv, m + 1 + i) * &lift(&gamma[i], &xr));
    }
    let xp = &point[..m];
    let xdv = &point[m];
    let tau = &point[m + 1..2 * m + 1];
    let ydv = &point[n - 1];
    let mut rp: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..m {
        let g = gamma[i].eval(std::slice::from_ref(xdv));
        rp.push(&xp[i] + &(ydv * &g));
    }
    rp.push(ydv.clone());
    rp.extend(tau.iter().cloned());
    rp.push(xdv.clone());
    Ok((
        SideChart::from_germ(gl, point.to_vec()),
        SideChart::from_germ(gr, rp),
    ))
}
