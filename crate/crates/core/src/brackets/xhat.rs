use num_traits::Zero;

use crate::symcore::{factorial, int, rat, PolyVectorField, Rational};

use super::lie::{bch, linear_coefficient, LieSeries, BCH_MAX_STEP};
use super::{BracketError, CurveFamilySpec};

/// Generator weights 1..n: X_i carries the power t^i.
pub fn curve_weights(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

fn capability(n: usize) -> Result<(), BracketError> {
    if n == 0 {
        return Err(BracketError::Argument("dimension must be positive".into()));
    }
    if n as u32 > BCH_MAX_STEP {
        return Err(BracketError::Capability(format!(
            "corrected fields are tabulated up to dimension {BCH_MAX_STEP}, asked for {n}"
        )));
    }
    Ok(())
}

/// X̂_1..X̂_n as bracket polynomials in X_1..X_n, read off from Σ_k (ad A)^k B'/(k+1)! with
/// A = −Σ X_i and B' = Σ i X_i (weights count powers of t, evaluated at t = 1).
pub fn xhat_formal(n: usize) -> Result<Vec<LieSeries>, BracketError> {
    capability(n)?;
    let w = curve_weights(n);
    let step = n as u32;
    let gens: Vec<LieSeries> = (0..n)
        .map(|i| LieSeries::generator(&w, step, i))
        .collect::<Result<_, _>>()?;
    let mut a = LieSeries::zero(&w, step);
    let mut b1 = LieSeries::zero(&w, step);
    for (i, g) in gens.iter().enumerate() {
        a = a.checked_sub(g)?;
        b1 = b1.checked_add(&g.scale(&int(i as i64 + 1)))?;
    }
    let mut gamma = LieSeries::zero(&w, step);
    let mut term = b1;
    for k in 0..n as u32 {
        gamma = gamma.checked_add(&term.scale(&(Rational::from_integer(1.into()) / factorial(k + 1))))?;
        term = a.bracket(&term)?;
        if term.is_zero() {
            break;
        }
    }
    Ok((1..=n as u32)
        .map(|k| gamma.weight_component(k).scale(&rat(1, k as i64)))
        .collect())
}

/// Γ_R at t = 1 obtained from the Campbell-Hausdorff series: the s-linear part of
/// bch(−Σ X_i, Σ (1+s)^i X_i), recovered by exact interpolation in s.
pub fn gamma_r_from_bch(n: usize) -> Result<LieSeries, BracketError> {
    capability(n)?;
    let w = curve_weights(n);
    let step = n as u32;
    let gens: Vec<LieSeries> = (0..n)
        .map(|i| LieSeries::generator(&w, step, i))
        .collect::<Result<_, _>>()?;
    let mut a = LieSeries::zero(&w, step);
    for g in &gens {
        a = a.checked_sub(g)?;
    }
    let samples: Vec<LieSeries> = (0..=n as i64)
        .map(|s| {
            let mut b = LieSeries::zero(&w, step);
            for (i, g) in gens.iter().enumerate() {
                let c = num_traits::pow(int(1 + s), i + 1);
                b = b.checked_add(&g.scale(&c))?;
            }
            bch(&a, &b, step)
        })
        .collect::<Result<_, _>>()?;
    linear_coefficient(&samples)
}

/// Σ_i i X̂_i, the formal image of Γ_R at t = 1.
pub fn gamma_r_from_xhat(xhat: &[LieSeries]) -> Result<LieSeries, BracketError> {
    let first = xhat
        .first()
        .ok_or_else(|| BracketError::Argument("no fields".into()))?;
    let mut s = first.scale(&Rational::zero());
    for (i, x) in xhat.iter().enumerate() {
        s = s.checked_add(&x.scale(&int(i as i64 + 1)))?;
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct XhatFields {
    pub formal: Vec<LieSeries>,
    pub concrete: Vec<PolyVectorField>,
}

/// Corrected fields of a curve family, formally and as vector fields.
pub fn xhat_fields(family: &CurveFamilySpec) -> Result<XhatFields, BracketError> {
    let n = family.dim();
    let formal = xhat_formal(n)?;
    let frame = family.frame();
    let gens: Vec<PolyVectorField> = (0..n)
        .map(|i| {
            family
                .fields()
                .get(i)
                .cloned()
                .unwrap_or_else(|| PolyVectorField::zero(frame))
        })
        .collect();
    let concrete = formal
        .iter()
        .map(|x| x.evaluate(&gens))
        .collect::<Result<_, _>>()?;
    Ok(XhatFields { formal, concrete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dimensions() {
        let x = xhat_formal(2).unwrap();
        assert_eq!(x[0].to_string(), "X1");
        assert_eq!(x[1].to_string(), "X2");
        assert!(matches!(xhat_formal(6), Err(BracketError::Capability(_))));
    }

    #[test]
    fn identity_in_free_algebra() {
        for n in 1..=5 {
            let x = xhat_formal(n).unwrap();
            assert_eq!(gamma_r_from_xhat(&x).unwrap(), gamma_r_from_bch(n).unwrap(), "n={n}");
        }
    }
}
