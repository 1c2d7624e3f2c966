use num_complex::Complex64;

use crate::degeneracy::{PhaseKind, PhaseSpec};
use crate::symcore::PolyF64;

use super::amplitude::AxisProfile;
use super::grid::{Axis, ResolutionRule};
use super::NumericsError;

#[derive(Clone, Debug, PartialEq)]
pub struct FreqValue {
    pub value: Complex64,
    /// |I(2N) − I(N)| for the trapezoid sums on N and 2N points per axis.
    pub error_estimate: f64,
    pub counts: Vec<usize>,
    pub under_resolved: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FreqOptions {
    pub strict: bool,
    pub rule: ResolutionRule,
}

fn trapezoid(psi: &PolyF64, prof: &[AxisProfile], lambda: f64, base: &[f64], axes: &[Axis]) -> Complex64 {
    let pts: Vec<Vec<f64>> = axes.iter().map(Axis::points).collect();
    let ws: Vec<Vec<f64>> = axes.iter().map(Axis::weights).collect();
    let total: usize = axes.iter().map(|a| a.count).product();
    let nb = base.len();
    let mut pt = base.to_vec();
    pt.resize(nb + axes.len(), 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for flat in 0..total {
        let mut r = flat;
        let mut w = 1.0;
        for k in (0..axes.len()).rev() {
            let i = r % axes[k].count;
            r /= axes[k].count;
            pt[nb + k] = pts[k][i];
            w *= ws[k][i] * prof[k].eval(pts[k][i]);
        }
        if w != 0.0 {
            acc += Complex64::from_polar(w, lambda * psi.eval(&pt));
        }
    }
    acc
}

/// K_λ(x,y) = ∫ e^{iλΨ(x,y,θ)} Π a_k(θ_k) dθ by tensor trapezoid, with a grid-doubling error estimate.
/// `counts` fixes the θ grid; otherwise the resolution rule chooses it.
pub fn freq_kernel(
    p: &PhaseSpec,
    a: &[AxisProfile],
    lambda: f64,
    x: &[f64],
    y: &[f64],
    counts: Option<&[usize]>,
    opts: &FreqOptions,
) -> Result<FreqValue, NumericsError> {
    let (psi, n) = match &p.kind {
        PhaseKind::Frequency { psi, n_freq } => (psi, *n_freq),
        _ => return Err(NumericsError::Unsupported(p.kind_name().into())),
    };
    let d = p.d_left;
    if x.len() != d || y.len() != d || a.len() != n {
        return Err(NumericsError::Argument(format!(
            "expected x, y in R^{d} and {n} frequency profiles, got {}, {}, {}",
            x.len(),
            y.len(),
            a.len()
        )));
    }
    let mut base = x.to_vec();
    base.extend_from_slice(y);
    let compiled = PolyF64::new(psi);
    let partials: Vec<PolyF64> = (0..n).map(|k| PolyF64::new(&psi.diff(2 * d + k))).collect();
    let per_axis: usize = match n {
        1 => 4097,
        2 => 65,
        3 => 17,
        _ => 7,
    };
    let mut sup = vec![0.0f64; n];
    let mut pt = base.clone();
    pt.resize(2 * d + n, 0.0);
    for flat in 0..per_axis.pow(n as u32) {
        let mut r = flat;
        for k in (0..n).rev() {
            let (lo, hi) = a[k].interval();
            pt[2 * d + k] = lo + (hi - lo) * (r % per_axis) as f64 / (per_axis - 1) as f64;
            r /= per_axis;
        }
        for (s, q) in sup.iter_mut().zip(&partials) {
            *s = s.max(q.eval(&pt).abs());
        }
    }
    let need: Vec<usize> = a
        .iter()
        .zip(&sup)
        .map(|(p, &s)| {
            let (lo, hi) = p.interval();
            opts.rule.required(lambda, hi - lo, s)
        })
        .collect();
    let chosen: Vec<usize> = counts.map_or_else(|| need.clone(), <[usize]>::to_vec);
    if chosen.len() != n {
        return Err(NumericsError::Argument(format!("{n} frequency axes, {} counts", chosen.len())));
    }
    let short: Vec<String> = chosen
        .iter()
        .zip(&need)
        .enumerate()
        .filter(|(_, (c, nd))| c < nd)
        .map(|(k, (c, nd))| format!("th{} needs {nd} points (has {c})", k + 1))
        .collect();
    if opts.strict && !short.is_empty() {
        return Err(NumericsError::Resolution(short.join(", ")));
    }
    let axes: Vec<Axis> = a
        .iter()
        .zip(&chosen)
        .map(|(p, &c)| {
            let (lo, hi) = p.interval();
            Axis::new(lo, hi, c.max(super::MIN_GRID_POINTS))
        })
        .collect();
    let fine: Vec<Axis> = axes.iter().map(Axis::doubled).collect();
    let coarse = trapezoid(&compiled, a, lambda, &base, &axes);
    let value = trapezoid(&compiled, a, lambda, &base, &fine);
    Ok(FreqValue {
        value,
        error_estimate: (value - coarse).norm(),
        counts: fine.iter().map(|a| a.count).collect(),
        under_resolved: !short.is_empty(),
    })
}
