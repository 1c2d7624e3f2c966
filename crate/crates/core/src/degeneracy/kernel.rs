use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::symcore::linalg::{adjugate_poly, det_poly, rank_rational};
use crate::symcore::{MultiPoly, PolyVectorField, Rational};

use super::curvature::conormal_fields;
use super::phase::{curve_charts, rigid_charts, PhaseKind, PhaseSpec, SideChart};
use super::{DegeneracyError, Side, TypeOrder};

/// det Φ_xz together with kernel fields of the two projections (denominator-cleared).
#[derive(Clone, Debug, PartialEq)]
pub struct KernelData {
    pub h: MultiPoly,
    pub v_left: PolyVectorField,
    pub v_right: PolyVectorField,
    /// Base point in the ring of `h`.
    pub point: Vec<Rational>,
}

fn mixed_hessian(phi: &MultiPoly, d: usize) -> Vec<Vec<MultiPoly>> {
    (0..d)
        .map(|i| (0..d).map(|j| phi.diff(i).diff(d + j)).collect())
        .collect()
}

pub fn hessian_and_kernel_fields(
    p: &PhaseSpec,
    point: &[Rational],
) -> Result<KernelData, DegeneracyError> {
    match &p.kind {
        PhaseKind::Oscillatory { phi } => oscillatory_kernel(phi, p.d_left, point),
        PhaseKind::RigidXray { .. } => chart_kernel_fields(p, point),
        _ => Err(DegeneracyError::UnsupportedKind {
            op: "hessian_and_kernel_fields",
            kind: p.kind_name(),
        }),
    }
}

/// Both kernel fields written in the left chart of a curve-average or rigid line-complex kind.
pub fn chart_kernel_fields(
    p: &PhaseSpec,
    point: &[Rational],
) -> Result<KernelData, DegeneracyError> {
    match &p.kind {
        PhaseKind::RigidXray { gamma } => {
            let (left, _) = rigid_charts(gamma, point)?;
            let m = gamma.len();
            let v = left.germ.vars().clone();
            let xd = MultiPoly::var(&v, m);
            let yd = MultiPoly::var(&v, 2 * m + 1);
            let mut coeffs = vec![MultiPoly::zero(&v); v.len()];
            for (i, g) in gamma.iter().enumerate() {
                let dg = lift_param(&g.diff(0), &xd);
                coeffs[i] = -&(&yd * &dg);
            }
            coeffs[m] = MultiPoly::one(&v);
            Ok(KernelData {
                h: left.det.clone(),
                v_left: left.kernel.clone(),
                v_right: PolyVectorField::new(&v, coeffs)?,
                point: left.point,
            })
        }
        PhaseKind::CurveAverage { gamma } => {
            let (left, _) = curve_charts(gamma, point)?;
            let d = gamma.len();
            let v = left.germ.vars().clone();
            // y fixed: x_i moves with Γ_i'(y1 − x1) as x1 moves
            let u = &MultiPoly::var(&v, 2 * d - 1) - &MultiPoly::var(&v, 0);
            let mut coeffs = vec![MultiPoly::zero(&v); v.len()];
            coeffs[0] = MultiPoly::one(&v);
            for i in 1..d {
                coeffs[i] = lift_param(&gamma[i].diff(0), &u);
            }
            Ok(KernelData {
                h: left.det.clone(),
                v_left: left.kernel.clone(),
                v_right: PolyVectorField::new(&v, coeffs)?,
                point: left.point,
            })
        }
        _ => Err(DegeneracyError::UnsupportedKind {
            op: "chart_kernel_fields",
            kind: p.kind_name(),
        }),
    }
}

fn lift_param(g: &MultiPoly, image: &MultiPoly) -> MultiPoly {
    g.substitute_all(std::slice::from_ref(image))
        .expect("single-variable substitution")
}

fn oscillatory_kernel(
    phi: &MultiPoly,
    d: usize,
    point: &[Rational],
) -> Result<KernelData, DegeneracyError> {
    if point.len() != 2 * d {
        return Err(DegeneracyError::Precondition(format!(
            "point needs {} coordinates",
            2 * d
        )));
    }
    let v = phi.vars().clone();
    let m = mixed_hessian(phi, d);
    let h = det_poly(&m)?;
    let mut wl = vec![MultiPoly::zero(&v); 2 * d];
    let mut wr = vec![MultiPoly::zero(&v); 2 * d];
    if d == 1 {
        wl[1] = MultiPoly::one(&v);
        wr[0] = MultiPoly::one(&v);
    } else {
        let block: Vec<Vec<MultiPoly>> = (0..d - 1)
            .map(|i| (0..d - 1).map(|j| m[i][j].clone()).collect())
            .collect();
        let dblock = det_poly(&block)?;
        if dblock.eval(point).is_zero() {
            return Err(DegeneracyError::SingularBlock {
                block: "Phi_{x'z'}".into(),
            });
        }
        let adj = adjugate_poly(&block)?;
        let block_t: Vec<Vec<MultiPoly>> = (0..d - 1)
            .map(|i| (0..d - 1).map(|j| m[j][i].clone()).collect())
            .collect();
        let adj_t = adjugate_poly(&block_t)?;
        for i in 0..d - 1 {
            let mut sl = MultiPoly::zero(&v);
            let mut sr = MultiPoly::zero(&v);
            for j in 0..d - 1 {
                sl = &sl + &(&adj[i][j] * &m[j][d - 1]);
                sr = &sr + &(&adj_t[i][j] * &m[d - 1][j]);
            }
            wl[d + i] = -&sl;
            wr[i] = -&sr;
        }
        wl[2 * d - 1] = dblock.clone();
        wr[d - 1] = dblock;
    }
    Ok(KernelData {
        h,
        v_left: PolyVectorField::new(&v, wl)?,
        v_right: PolyVectorField::new(&v, wr)?,
        point: point.to_vec(),
    })
}

/// [[Ψ_xy, Ψ_xθ], [Ψ_θy, Ψ_θθ]]
pub(crate) fn frequency_matrix(psi: &MultiPoly, d: usize, n: usize) -> Vec<Vec<MultiPoly>> {
    let rows: Vec<usize> = (0..d).chain(2 * d..2 * d + n).collect();
    let cols: Vec<usize> = (d..2 * d).chain(2 * d..2 * d + n).collect();
    rows.iter()
        .map(|&i| cols.iter().map(|&j| psi.diff(i).diff(j)).collect())
        .collect()
}

/// Corank of the projections at the point.
pub fn corank(p: &PhaseSpec, point: &[Rational]) -> Result<usize, DegeneracyError> {
    match &p.kind {
        PhaseKind::Oscillatory { phi } => {
            let d = p.d_left;
            if point.len() != 2 * d {
                return Err(DegeneracyError::Precondition(format!(
                    "point needs {} coordinates",
                    2 * d
                )));
            }
            let m = mixed_hessian(phi, d);
            let rows: Vec<Vec<Rational>> = m
                .iter()
                .map(|r| r.iter().map(|e| e.eval(point)).collect())
                .collect();
            Ok(d - rank_rational(&rows))
        }
        PhaseKind::Frequency { psi, n_freq } => {
            let m = frequency_matrix(psi, p.d_left, *n_freq);
            if point.len() != psi.nvars() {
                return Err(DegeneracyError::Precondition(format!(
                    "point needs {} coordinates",
                    psi.nvars()
                )));
            }
            let rows: Vec<Vec<Rational>> = m
                .iter()
                .map(|r| r.iter().map(|e| e.eval(point)).collect())
                .collect();
            Ok(m.len() - rank_rational(&rows))
        }
        _ => {
            let (h, _, pt) = side_operator(p, point, Side::Left)?;
            Ok(usize::from(h.eval(&pt).is_zero()))
        }
    }
}

/// Adapted charts of both projections for the kinds that carry them.
pub fn side_charts(
    p: &PhaseSpec,
    point: &[Rational],
) -> Result<(SideChart, Option<SideChart>), DegeneracyError> {
    match &p.kind {
        PhaseKind::CurveAverage { gamma } => {
            let (l, r) = curve_charts(gamma, point)?;
            Ok((l, Some(r)))
        }
        PhaseKind::RigidXray { gamma } => {
            let (l, r) = rigid_charts(gamma, point)?;
            Ok((l, Some(r)))
        }
        PhaseKind::Germ { h } => {
            if point.len() != h.nvars() {
                return Err(DegeneracyError::Precondition(format!(
                    "germ point needs {} coordinates",
                    h.nvars()
                )));
            }
            Ok((SideChart::from_germ(h.clone(), point.to_vec()), None))
        }
        PhaseKind::Oscillatory { phi } if p.d_left == 1 => {
            if point.len() != 2 {
                return Err(DegeneracyError::Precondition(
                    "point needs 2 coordinates".into(),
                ));
            }
            // π_L(x,z) = (x, Φ_x); π_R(x,z) = (z, −Φ_z) written over (z, x)
            let gl = phi.diff(0);
            let rv: std::sync::Arc<[String]> = vec![phi.vars()[1].clone(), phi.vars()[0].clone()].into();
            let gr = (-&phi.diff(1)).embed(&rv)?;
            Ok((
                SideChart::from_germ(gl, point.to_vec()),
                Some(SideChart::from_germ(
                    gr,
                    vec![point[1].clone(), point[0].clone()],
                )),
            ))
        }
        _ => Err(DegeneracyError::UnsupportedKind {
            op: "side_charts",
            kind: p.kind_name(),
        }),
    }
}

/// (h, kernel field of the side's projection, point in h's ring).
pub fn side_operator(
    p: &PhaseSpec,
    point: &[Rational],
    side: Side,
) -> Result<(MultiPoly, PolyVectorField, Vec<Rational>), DegeneracyError> {
    match &p.kind {
        PhaseKind::Oscillatory { .. } => {
            let k = hessian_and_kernel_fields(p, point)?;
            let v = match side {
                Side::Left => k.v_left,
                Side::Right => k.v_right,
            };
            Ok((k.h, v, k.point))
        }
        PhaseKind::Conormal2d { s } => {
            let c = conormal_fields(s, point)?;
            let v = match side {
                Side::Left => c.y,
                Side::Right => c.x,
            };
            Ok((c.delta, v, c.point))
        }
        PhaseKind::CurveAverage { .. } | PhaseKind::RigidXray { .. } => {
            let k = chart_kernel_fields(p, point)?;
            let v = match side {
                Side::Left => k.v_left,
                Side::Right => k.v_right,
            };
            Ok((k.h, v, k.point))
        }
        PhaseKind::Frequency { .. } => Err(DegeneracyError::UnsupportedKind {
            op: "one_sided_type",
            kind: p.kind_name(),
        }),
        _ => {
            let (l, r) = side_charts(p, point)?;
            let c = match side {
                Side::Left => l,
                Side::Right => r.ok_or(DegeneracyError::UnsupportedKind {
                    op: "right projection",
                    kind: p.kind_name(),
                })?,
            };
            Ok((c.det, c.kernel, c.point))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneSidedType {
    pub order: TypeOrder,
    pub simple_rank_drop: bool,
}

pub fn one_sided_type(
    p: &PhaseSpec,
    point: &[Rational],
    side: Side,
    max_order: u32,
) -> Result<OneSidedType, DegeneracyError> {
    let cr = corank(p, point)?;
    if cr >= 2 {
        return Err(DegeneracyError::Corank(cr));
    }
    let (h, v, pt) = side_operator(p, point, side)?;
    let simple = h.gradient_at(&pt).iter().any(|g| !g.is_zero());
    if !h.eval(&pt).is_zero() {
        return Ok(OneSidedType {
            order: TypeOrder::Finite(0),
            simple_rank_drop: simple,
        });
    }
    let mut q = h;
    for k in 1..=max_order {
        q = v.apply(&q)?;
        if !q.eval(&pt).is_zero() {
            return Ok(OneSidedType {
                order: TypeOrder::Finite(k),
                simple_rank_drop: simple,
            });
        }
        if q.is_zero() {
            break;
        }
    }
    Ok(OneSidedType {
        order: TypeOrder::Exceeds(max_order),
        simple_rank_drop: simple,
    })
}

/// Minimal pairs (j,k): j right-kernel and k left-kernel applications, every interleaving tried.
pub fn mixed_types(
    p: &PhaseSpec,
    point: &[Rational],
    max_order: u32,
) -> Result<Vec<(u32, u32)>, DegeneracyError> {
    let cr = corank(p, point)?;
    if cr >= 2 {
        return Err(DegeneracyError::Corank(cr));
    }
    let (h, vl, pt) = side_operator(p, point, Side::Left)?;
    let (_, vr, _) = side_operator(p, point, Side::Right)?;
    let table = word_table(&h, &vr, &vl, &pt, max_order)?;
    let found = minimal_pairs(&table);
    if found.is_empty() {
        return Err(DegeneracyError::ExceedsMaxOrder(max_order));
    }
    Ok(found)
}

/// Values of every interleaving at each minimal pair, in enumeration order.
pub fn interleaving_values(
    p: &PhaseSpec,
    point: &[Rational],
    max_order: u32,
) -> Result<BTreeMap<(u32, u32), Vec<Rational>>, DegeneracyError> {
    let (h, vl, pt) = side_operator(p, point, Side::Left)?;
    let (_, vr, _) = side_operator(p, point, Side::Right)?;
    let table = word_table(&h, &vr, &vl, &pt, max_order)?;
    let mut out: BTreeMap<(u32, u32), Vec<Rational>> = BTreeMap::new();
    for jk in minimal_pairs(&table) {
        let vals = table
            .values
            .iter()
            .filter(|(w, _, _)| *w == jk)
            .map(|(_, _, v)| v.clone())
            .collect();
        out.insert(jk, vals);
    }
    Ok(out)
}

/// Values at the point of every word W h with W a product of `vr` (j) and `vl` (k).
///
/// Words are grown only below the pairs already known to be nonvanishing.
pub(crate) struct WordTable {
    pub values: Vec<((u32, u32), Vec<bool>, Rational)>,
}

pub(crate) fn word_table(
    h: &MultiPoly,
    vr: &PolyVectorField,
    vl: &PolyVectorField,
    pt: &[Rational],
    max_order: u32,
) -> Result<WordTable, DegeneracyError> {
    let mut values = Vec::new();
    let mut nonzero: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut level: Vec<((u32, u32), Vec<bool>, MultiPoly)> = vec![((0, 0), vec![], h.clone())];
    for m in 0..=max_order {
        let mut next = Vec::new();
        for (jk, word, q) in level {
            let val = q.eval(pt);
            let nz = !val.is_zero();
            values.push((jk, word.clone(), val));
            if nz {
                nonzero.insert(jk);
                continue;
            }
            if m == max_order || q.is_zero() {
                continue;
            }
            for right in [true, false] {
                let njk = if right { (jk.0 + 1, jk.1) } else { (jk.0, jk.1 + 1) };
                if nonzero.iter().any(|&(a, b)| njk.0 >= a && njk.1 >= b) {
                    continue;
                }
                let nq = if right { vr.apply(&q)? } else { vl.apply(&q)? };
                let mut nw = word.clone();
                nw.push(right);
                next.push((njk, nw, nq));
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Ok(WordTable { values })
}

pub(crate) fn minimal_pairs(t: &WordTable) -> Vec<(u32, u32)> {
    let nz: BTreeSet<(u32, u32)> = t
        .values
        .iter()
        .filter(|(_, _, v)| !v.is_zero())
        .map(|(jk, _, _)| *jk)
        .collect();
    nz.iter()
        .copied()
        .filter(|&(j, k)| {
            !nz.iter()
                .any(|&(a, b)| (a, b) != (j, k) && a <= j && b <= k)
        })
        .collect()
}
