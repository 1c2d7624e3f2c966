use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symcore::linalg::rank_rational;
use crate::symcore::{MultiPoly, PolyF64, Rational};

use super::{DegeneracyError, MorinClass};

#[derive(Clone, Debug, PartialEq)]
pub struct MorinOutcome {
    pub class: MorinClass,
    /// Largest r with ∂_n^k h(P) = 0 for 1 ≤ k ≤ r (0 when the map is a local diffeomorphism).
    pub flag_order: u32,
    pub simple_rank_drop: bool,
    pub blowdown: bool,
    /// Sampled points of {det = 0} near P on which the kernel field was found tangent.
    pub sampled_tangency: Option<bool>,
}

/// Classifies t ↦ (t', h(t)) at `point`; the last ring variable is the kernel direction.
pub fn morin_classify(
    h: &MultiPoly,
    point: &[Rational],
    r_max: u32,
) -> Result<MorinOutcome, DegeneracyError> {
    let n = h.nvars();
    if n == 0 {
        return Err(DegeneracyError::Structural("germ has no variables".into()));
    }
    if point.len() != n {
        return Err(DegeneracyError::Structural(format!(
            "germ point has {} coordinates, ring has {n}",
            point.len()
        )));
    }
    let g = h.translate(point);
    let origin = vec![Rational::zero(); n];
    let det = g.diff(n - 1);
    let grad_det: Vec<Rational> = det.gradient_at(&origin);
    let simple = grad_det.iter().any(|c| !c.is_zero());
    if !det.eval(&origin).is_zero() {
        return Ok(MorinOutcome {
            class: MorinClass::Nondegenerate,
            flag_order: 0,
            simple_rank_drop: simple,
            blowdown: false,
            sampled_tangency: None,
        });
    }
    let vdet = det.diff(n - 1);
    let blowdown = vdet.is_zero() || det.divides(&vdet);
    let sampled = sample_tangency(&det, &vdet);
    let mut flag_order = 0;
    let mut derivs = Vec::new();
    let mut q = g.clone();
    let mut first_nonzero = None;
    for k in 1..=r_max + 1 {
        q = q.diff(n - 1);
        if !q.eval(&origin).is_zero() {
            first_nonzero = Some(k);
            break;
        }
        flag_order = k;
        derivs.push(q.clone());
    }
    if blowdown {
        return Ok(MorinOutcome {
            class: MorinClass::Blowdown,
            flag_order,
            simple_rank_drop: simple,
            blowdown,
            sampled_tangency: sampled,
        });
    }
    if !simple {
        return Ok(MorinOutcome {
            class: MorinClass::NotSmoothSingularVariety,
            flag_order,
            simple_rank_drop: simple,
            blowdown,
            sampled_tangency: sampled,
        });
    }
    let class = match first_nonzero {
        Some(k) => {
            let r = k - 1;
            // gradients of ∂^k h for k = 1..r-1 must be independent
            let rows: Vec<Vec<Rational>> = derivs
                .iter()
                .take(r.saturating_sub(1) as usize)
                .map(|d| d.gradient_at(&origin))
                .collect();
            if rank_rational(&rows) == rows.len() {
                MorinClass::Morin(r)
            } else {
                MorinClass::Unclassified
            }
        }
        None => MorinClass::Unclassified,
    };
    Ok(MorinOutcome {
        class,
        flag_order,
        simple_rank_drop: simple,
        blowdown,
        sampled_tangency: sampled,
    })
}

/// Projects seeded random points near the origin onto {det = 0} by Newton steps and
/// checks that the kernel derivative of det vanishes there.
fn sample_tangency(det: &MultiPoly, vdet: &MultiPoly) -> Option<bool> {
    let n = det.nvars();
    let f = PolyF64::new(det);
    let grad: Vec<PolyF64> = det.gradient().iter().map(PolyF64::new).collect();
    let vf = PolyF64::new(vdet);
    let vgrad: Vec<PolyF64> = vdet.gradient().iter().map(PolyF64::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut hits = 0;
    let mut tangent = true;
    for _ in 0..32 {
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-0.05..0.05)).collect();
        let mut ok = false;
        for _ in 0..60 {
            let val = f.eval(&x);
            let g: Vec<f64> = grad.iter().map(|p| p.eval(&x)).collect();
            let gg: f64 = g.iter().map(|v| v * v).sum();
            if gg < 1e-24 {
                break;
            }
            for (xi, gi) in x.iter_mut().zip(&g) {
                *xi -= val * gi / gg;
            }
            if val.abs() < 1e-13 {
                ok = true;
                break;
            }
        }
        if !ok || x.iter().any(|v| v.abs() > 0.2) {
            continue;
        }
        hits += 1;
        let scale: f64 = vgrad
            .iter()
            .map(|p| p.eval(&x).abs())
            .fold(1.0, f64::max);
        if vf.eval(&x).abs() > 1e-8 * scale {
            tangent = false;
        }
    }
    (hits > 0).then_some(tangent)
}

/// Defining polynomials of S_{1_k}: ∂_n^j h = 0 for 1 ≤ j ≤ k (in the germ's own coordinates).
pub fn flag_manifold(h: &MultiPoly, k: u32) -> Vec<MultiPoly> {
    let n = h.nvars();
    (1..=k).map(|j| h.diff_n(n - 1, j)).collect()
}
