use std::sync::Arc;

use num_traits::One;

use crate::symcore::linalg::{det_poly, rank_poly};
use crate::symcore::{factorial, var_list, MultiPoly, PolyVectorField, Rational};

use super::xhat::xhat_fields;
use super::BracketError;

/// Curve family γ_t = exp(Σ t^i X_i) on ℝ^dim.
///
/// The fields live on a ring whose first `dim` variables are the coordinates; any further
/// variables are symbolic parameters and carry zero field components.
#[derive(Clone, Debug)]
pub struct CurveFamilySpec {
    fields: Vec<PolyVectorField>,
    dim: usize,
}

impl CurveFamilySpec {
    pub fn new(fields: Vec<PolyVectorField>, dim: usize) -> Result<Self, BracketError> {
        let first = fields
            .first()
            .ok_or_else(|| BracketError::Argument("a curve family needs at least X_1".into()))?;
        let frame = first.frame().clone();
        if dim == 0 || dim > frame.len() {
            return Err(BracketError::Argument(format!(
                "dimension {dim} does not fit a frame of {} variables",
                frame.len()
            )));
        }
        for (i, f) in fields.iter().enumerate() {
            if f.frame() != &frame {
                return Err(BracketError::Argument(format!("X_{} uses a different frame", i + 1)));
            }
            if f.coeffs()[dim..].iter().any(|c| !c.is_zero()) {
                return Err(BracketError::Argument(format!(
                    "X_{} moves a parameter variable",
                    i + 1
                )));
            }
        }
        if first.is_zero() {
            return Err(BracketError::Argument("X_1 = 0: the curves are not regular".into()));
        }
        Ok(CurveFamilySpec { fields, dim })
    }

    /// The constant family X_i = ∂_i on ℝ^n.
    pub fn coordinate(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let frame = var_list(&names);
        let fields = (0..n).map(|i| PolyVectorField::coordinate(&frame, i)).collect();
        CurveFamilySpec { fields, dim: n }
    }

    pub fn fields(&self) -> &[PolyVectorField] {
        &self.fields
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.fields.len()
    }

    pub fn frame(&self) -> &Arc<[String]> {
        self.fields[0].frame()
    }

    pub fn param_names(&self) -> &[String] {
        &self.frame()[self.dim..]
    }

    /// Fixes some parameters to rational values; the frame is kept.
    pub fn with_params(&self, values: &[(&str, Rational)]) -> Result<Self, BracketError> {
        let frame = self.frame();
        let mut fields = self.fields.clone();
        for (name, v) in values {
            let i = frame
                .iter()
                .position(|n| n == name)
                .filter(|&i| i >= self.dim)
                .ok_or_else(|| BracketError::Argument(format!("unknown parameter '{name}'")))?;
            fields = fields
                .iter()
                .map(|f| {
                    let c = f.coeffs().iter().map(|p| p.partial_eval(i, v)).collect();
                    PolyVectorField::new(frame, c)
                })
                .collect::<Result<_, _>>()?;
        }
        Ok(CurveFamilySpec { fields, dim: self.dim })
    }
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub point: Vec<Rational>,
    pub params: Vec<String>,
    /// Γ_R^{(ν)}(x,0), ν = 0..n−1, as polynomials in the parameters.
    pub pullback_vectors: Vec<Vec<MultiPoly>>,
    /// X̂_i(x), i = 1..n.
    pub bracket_vectors: Vec<Vec<MultiPoly>>,
    pub pullback_rank: usize,
    pub bracket_rank: usize,
    pub pullback_det: MultiPoly,
    pub bracket_det: MultiPoly,
    pub p_r: bool,
    pub b_r: bool,
    pub agree: bool,
}

fn param_ring(family: &CurveFamilySpec) -> Arc<[String]> {
    var_list(family.param_names())
}

/// Evaluates the coordinate variables at `point` and re-expresses the result over the parameters.
fn restrict(p: &MultiPoly, dim: usize, point: &[Rational], target: &Arc<[String]>) -> MultiPoly {
    let mut q = p.clone();
    for (i, v) in point.iter().enumerate() {
        q = q.partial_eval(i, v);
    }
    MultiPoly::from_terms(
        target,
        q.terms()
            .iter()
            .map(|(e, c)| (e[dim..dim + target.len()].to_vec(), c.clone())),
    )
}

/// Γ_R(x,t) = ∂_s|_{s=0} γ_{s+t}∘γ_t^{-1}(x), expanded through the operator identity
/// f∘Φ_B∘Φ_A = e^A e^B f with A = −Σ t^i X_i and B = Σ (s+t)^i X_i.
/// Returns ν!·[t^ν] of the s-linear coefficient for each coordinate, ν < n, over frame ∪ {s,t}.
fn pullback_derivatives(family: &CurveFamilySpec) -> Result<Vec<Vec<MultiPoly>>, BracketError> {
    let n = family.dim();
    let frame = family.frame();
    let mut names: Vec<String> = frame.to_vec();
    names.push("__s".into());
    names.push("__t".into());
    let ring = var_list(&names);
    let (si, ti) = (names.len() - 2, names.len() - 1);
    let s = MultiPoly::var(&ring, si);
    let t = MultiPoly::var(&ring, ti);
    let lift = |f: &PolyVectorField| -> Result<PolyVectorField, BracketError> {
        let mut c: Vec<MultiPoly> = f.coeffs().iter().map(|p| p.embed(&ring)).collect::<Result<_, _>>()?;
        c.push(MultiPoly::zero(&ring));
        c.push(MultiPoly::zero(&ring));
        Ok(PolyVectorField::new(&ring, c)?)
    };
    let mut a = PolyVectorField::zero(&ring);
    let mut b = PolyVectorField::zero(&ring);
    let st = &s + &t;
    for (k, f) in family.fields().iter().enumerate().take(n) {
        let f = lift(f)?;
        let i = k as u32 + 1;
        a = a.checked_add(&f.mul_poly(&t.pow(i))?.scale(&-Rational::one()))?;
        b = b.checked_add(&f.mul_poly(&st.pow(i))?)?;
    }
    let trunc = |p: MultiPoly| p.truncate_in(si, 1).truncate_in(ti, n as u16 - 1);
    let mut out = vec![Vec::with_capacity(n); n];
    for j in 0..n {
        let mut total = MultiPoly::zero(&ring);
        let mut bq = MultiPoly::var(&ring, j);
        for q in 0..=n as u32 {
            let mut ap = bq.clone();
            for p in 0..=(n as u32 - q) {
                let c = Rational::one() / (factorial(p) * factorial(q));
                total = &total + &ap.scale(&c);
                ap = trunc(a.apply(&ap)?);
                if ap.is_zero() {
                    break;
                }
            }
            bq = trunc(b.apply(&bq)?);
            if bq.is_zero() {
                break;
            }
        }
        let lin = total
            .coefficients_in(si)
            .remove(&1)
            .unwrap_or_else(|| MultiPoly::zero(&ring));
        let by_t = lin.coefficients_in(ti);
        for (nu, row) in out.iter_mut().enumerate() {
            let c = by_t
                .get(&(nu as u16))
                .cloned()
                .unwrap_or_else(|| MultiPoly::zero(&ring));
            row.push(c.scale(&factorial(nu as u32)));
        }
    }
    Ok(out)
}

fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    match (a.leading_term(), b.leading_term()) {
        (None, None) => true,
        (Some((_, ca)), Some((_, cb))) => &a.scale(&(cb / ca)) == b,
        _ => false,
    }
}

/// Pullback condition (derivatives of Γ_R) and bracket condition (corrected fields) at a point.
/// Ranks are generic in the remaining parameters; the determinants carry the exceptional locus.
pub fn check_conditions(
    family: &CurveFamilySpec,
    point: &[Rational],
) -> Result<ConditionReport, BracketError> {
    let n = family.dim();
    if point.len() != n {
        return Err(BracketError::Argument(format!(
            "point has {} coordinates, the family lives on ℝ^{n}",
            point.len()
        )));
    }
    let target = param_ring(family);
    let pullback: Vec<Vec<MultiPoly>> = pullback_derivatives(family)?
        .into_iter()
        .map(|row| row.iter().map(|p| restrict(p, n, point, &target)).collect())
        .collect();
    let xh = xhat_fields(family)?;
    let bracket: Vec<Vec<MultiPoly>> = xh
        .concrete
        .iter()
        .map(|f| f.coeffs()[..n].iter().map(|p| restrict(p, n, point, &target)).collect())
        .collect();
    let pullback_rank = rank_poly(&pullback)?;
    let bracket_rank = rank_poly(&bracket)?;
    let pullback_det = det_poly(&pullback)?;
    let bracket_det = det_poly(&bracket)?;
    let p_r = pullback_rank == n;
    let b_r = bracket_rank == n;
    let agree = p_r == b_r && proportional(&pullback_det, &bracket_det);
    Ok(ConditionReport {
        point: point.to_vec(),
        params: family.param_names().to_vec(),
        pullback_vectors: pullback,
        bracket_vectors: bracket,
        pullback_rank,
        bracket_rank,
        pullback_det,
        bracket_det,
        p_r,
        b_r,
        agree,
    })
}
