use std::f64::consts::PI;

use num_complex::Complex64;

use crate::degeneracy::{PhaseKind, PhaseSpec};
use crate::symcore::{rational::to_f64, MultiPoly};

use super::amplitude::AxisProfile;
use super::grid::ResolutionRule;
use super::par;
use super::quad::{integrate, QuadOptions};
use super::NumericsError;

type C64 = Complex64;

/// Translation-invariant averaging operators through their Fourier multipliers.
#[derive(Clone, Debug, PartialEq)]
pub enum MultiplierModel {
    /// m(ξ) = ∫ e^{−iξ·Γ(t)} χ(t) dt.
    Curve { gamma: Vec<MultiPoly>, cutoff: AxisProfile },
    /// m(ξ) = ∬ e^{−is(ξ'·γ(α)+ξ_d)} χ₀(α)² χ(s) ds dα.
    RigidXray { gamma: Vec<MultiPoly>, alpha_cutoff: AxisProfile, s_cutoff: AxisProfile },
}

fn coeffs(p: &MultiPoly) -> Result<Vec<f64>, NumericsError> {
    if p.nvars() != 1 {
        return Err(NumericsError::Argument(format!("curve components must be univariate, got {p}")));
    }
    let deg = p.degree_in(0) as usize;
    let mut c = vec![0.0; deg + 1];
    for (e, v) in p.terms() {
        c[e[0] as usize] = to_f64(v);
    }
    Ok(c)
}

#[inline]
fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a).collect()
}

/// Coefficients of p(t0 + h j) in powers of j.
fn taylor_shift(c: &[f64], t0: f64, h: f64) -> Vec<f64> {
    let mut a = c.to_vec();
    let n = a.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            a[k] += t0 * a[k + 1];
        }
    }
    let mut s = 1.0;
    for v in a.iter_mut() {
        *v *= s;
        s *= h;
    }
    a
}

/// Stirling numbers of the second kind S(i, m), i, m ≤ 12.
fn stirling2() -> [[f64; 13]; 13] {
    let mut s = [[0.0; 13]; 13];
    s[0][0] = 1.0;
    for i in 1..13 {
        for m in 1..=i {
            s[i][m] = m as f64 * s[i - 1][m] + s[i - 1][m - 1];
        }
    }
    s
}

struct CurveEval {
    comps: Vec<Vec<f64>>,
    cutoff: AxisProfile,
    speed: f64,
}

impl CurveEval {
    fn phase_coeffs(&self, xi: &[f64]) -> Vec<f64> {
        let deg = self.comps.iter().map(Vec::len).max().unwrap_or(1);
        let mut c = vec![0.0; deg];
        for (comp, &x) in self.comps.iter().zip(xi) {
            for (k, a) in comp.iter().enumerate() {
                c[k] -= x * a;
            }
        }
        c
    }

    fn accurate(&self, xi: &[f64], rel_tol: f64) -> Result<C64, NumericsError> {
        let c = self.phase_coeffs(xi);
        let (lo, hi) = self.cutoff.interval();
        let norm = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        let osc = norm * self.speed * (hi - lo) / (2.0 * PI);
        let opts = QuadOptions { rel_tol, abs_tol: 1e-15, max_depth: 40, initial_pieces: 8 + osc.ceil() as usize };
        let r = integrate(|t| C64::from_polar(self.cutoff.eval(t), horner(&c, t)), lo, hi, &opts)?;
        Ok(r.value)
    }
}

/// Trapezoid on a fixed t-grid; the phase is advanced by products of exact finite-difference
/// exponentials and re-anchored every `BLOCK` steps.
struct CurveCoarse<'a> {
    eval: &'a CurveEval,
    lo: f64,
    h: f64,
    wc: Vec<f64>,
    stirling: [[f64; 13]; 13],
}

const BLOCK: usize = 256;

impl<'a> CurveCoarse<'a> {
    fn new(eval: &'a CurveEval, lambda: f64, rule: &ResolutionRule) -> Self {
        let (lo, hi) = eval.cutoff.interval();
        let n = rule.required(lambda, hi - lo, eval.speed);
        let h = (hi - lo) / (n - 1) as f64;
        let wc = (0..n)
            .map(|k| {
                let w = if k == 0 || k + 1 == n { h / 2.0 } else { h };
                w * eval.cutoff.eval(lo + k as f64 * h)
            })
            .collect();
        CurveCoarse { eval, lo, h, wc, stirling: stirling2() }
    }

    fn value(&self, xi: &[f64]) -> C64 {
        let c = self.eval.phase_coeffs(xi);
        let deg = c.len() - 1;
        let n = self.wc.len();
        let mut acc = C64::new(0.0, 0.0);
        let mut e = [C64::new(0.0, 0.0); 13];
        let mut start = 0;
        while start < n {
            let b = taylor_shift(&c, self.lo + start as f64 * self.h, self.h);
            for (m, em) in e.iter_mut().enumerate().take(deg + 1) {
                let mut fact = 1.0;
                for f in 1..=m {
                    fact *= f as f64;
                }
                let delta: f64 = if m == 0 {
                    b[0]
                } else {
                    (m..=deg).map(|i| b[i] * fact * self.stirling[i][m]).sum()
                };
                *em = C64::from_polar(1.0, delta);
            }
            let end = (start + BLOCK).min(n);
            for w in &self.wc[start..end] {
                acc += e[0] * *w;
                for m in 0..deg {
                    e[m] = e[m] * e[m + 1];
                }
            }
            start = end;
        }
        acc
    }
}

/// χ̂(u) = ∫ e^{−isu} χ(s) ds tabulated on a uniform u-grid, zero beyond the decay cutoff.
struct ChiHat {
    du: f64,
    umax: f64,
    values: Vec<C64>,
}

const CHI_HAT_STEP: f64 = 1.0 / 16.0;
const CHI_HAT_FLOOR: f64 = 1e-10;

fn chi_hat_direct(chi: &AxisProfile, u: f64) -> Result<C64, NumericsError> {
    let (lo, hi) = chi.interval();
    let osc = u.abs() * (hi - lo) / (2.0 * PI);
    let opts = QuadOptions { rel_tol: 1e-12, abs_tol: 1e-14 * (hi - lo), max_depth: 40, initial_pieces: 4 + osc.ceil() as usize };
    Ok(integrate(|s| C64::from_polar(chi.eval(s), -s * u), lo, hi, &opts)?.value)
}

impl ChiHat {
    fn new(chi: &AxisProfile) -> Result<Self, NumericsError> {
        let peak = chi_hat_direct(chi, 0.0)?.norm();
        let mut umax = 16.0;
        loop {
            let tail = (0..=64)
                .map(|k| umax * (1.0 + k as f64 / 64.0))
                .map(|u| Ok(chi_hat_direct(chi, u)?.norm().max(chi_hat_direct(chi, -u)?.norm())))
                .collect::<Result<Vec<f64>, NumericsError>>()?
                .into_iter()
                .fold(0.0, f64::max);
            if tail <= CHI_HAT_FLOOR * peak {
                break;
            }
            umax *= 2.0;
            if umax > 65536.0 {
                return Err(NumericsError::Argument("cutoff transform does not decay; is the profile smooth?".into()));
            }
        }
        let n = (2.0 * umax / CHI_HAT_STEP).round() as usize + 1;
        let values = par::map(n, |k| chi_hat_direct(chi, -umax + k as f64 * CHI_HAT_STEP))
            .into_iter()
            .collect::<Result<_, _>>()?;
        Ok(ChiHat { du: CHI_HAT_STEP, umax, values })
    }

    /// Lagrange interpolation through `order` nodes around u.
    #[inline]
    fn eval(&self, u: f64, order: usize) -> C64 {
        if u.abs() >= self.umax {
            return C64::new(0.0, 0.0);
        }
        let pos = (u + self.umax) / self.du;
        let n = self.values.len();
        let first = (pos.floor() as isize - (order as isize / 2 - 1)).clamp(0, (n - order) as isize) as usize;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..order {
            let xi = (first + i) as f64;
            let mut l = 1.0;
            for j in 0..order {
                if j != i {
                    let xj = (first + j) as f64;
                    l *= (pos - xj) / (xi - xj);
                }
            }
            acc += self.values[first + i] * l;
        }
        acc
    }
}

struct RigidEval {
    comps: Vec<Vec<f64>>,
    alpha: AxisProfile,
    speed: f64,
    s_extent: f64,
    chi_hat: ChiHat,
}

impl RigidEval {
    fn u_coeffs(&self, xi: &[f64]) -> Vec<f64> {
        let dd = xi.len() - 1;
        let deg = self.comps.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let mut c = vec![0.0; deg];
        for (comp, &x) in self.comps.iter().zip(&xi[..dd]) {
            for (k, a) in comp.iter().enumerate() {
                c[k] += x * a;
            }
        }
        c[0] += xi[dd];
        c
    }

    /// α-ranges where |u(α)| can be below the table cutoff.
    fn active_ranges(&self, c: &[f64], lip: f64) -> Vec<(f64, f64)> {
        let (lo, hi) = self.alpha.interval();
        let cells = 256;
        let w = (hi - lo) / cells as f64;
        let mut out: Vec<(f64, f64)> = Vec::new();
        for k in 0..cells {
            let a = lo + k as f64 * w;
            let b = if k + 1 == cells { hi } else { a + w };
            let m = horner(c, a).abs().min(horner(c, b).abs()) - lip * w / 2.0;
            if m <= self.chi_hat.umax {
                match out.last_mut() {
                    Some(last) if last.1 == a => last.1 = b,
                    _ => out.push((a, b)),
                }
            }
        }
        out
    }

    fn lip(&self, xi: &[f64]) -> f64 {
        let dd = xi.len() - 1;
        xi[..dd].iter().map(|v| v * v).sum::<f64>().sqrt() * self.speed
    }

    fn coarse(&self, xi: &[f64], rule: &ResolutionRule) -> C64 {
        let c = self.u_coeffs(xi);
        let lip = self.lip(xi);
        let h_max = 2.0 * PI / (rule.points_per_wavelength * (self.s_extent * lip).max(1.0));
        let (lo, hi) = self.alpha.interval();
        let h_max = h_max.min((hi - lo) / rule.min_points as f64);
        let mut acc = C64::new(0.0, 0.0);
        for (a, b) in self.active_ranges(&c, lip) {
            let n = ((b - a) / h_max).ceil().max(1.0) as usize;
            let h = (b - a) / n as f64;
            for k in 0..=n {
                let al = a + k as f64 * h;
                let w = if k == 0 || k == n { h / 2.0 } else { h };
                let chi0 = self.alpha.eval(al);
                if chi0 != 0.0 {
                    acc += self.chi_hat.eval(horner(&c, al), 4) * (w * chi0 * chi0);
                }
            }
        }
        acc
    }

    fn accurate(&self, xi: &[f64], rel_tol: f64, scale: f64) -> Result<C64, NumericsError> {
        let c = self.u_coeffs(xi);
        let lip = self.lip(xi);
        let ranges = self.active_ranges(&c, lip);
        let mut acc = C64::new(0.0, 0.0);
        let abs_tol = (rel_tol * scale / ranges.len().max(1) as f64).max(1e-300);
        for (a, b) in ranges {
            let osc = self.s_extent * lip * (b - a) / (2.0 * PI);
            let opts = QuadOptions { rel_tol, abs_tol, max_depth: 40, initial_pieces: 8 + osc.ceil() as usize };
            let r = integrate(
                |al| {
                    let chi0 = self.alpha.eval(al);
                    self.chi_hat.eval(horner(&c, al), 8) * (chi0 * chi0)
                },
                a,
                b,
                &opts,
            )?;
            acc += r.value;
        }
        Ok(acc)
    }
}

enum Evaluator {
    Curve(CurveEval),
    Rigid(RigidEval),
}

impl MultiplierModel {
    /// Curve averages and rigid X-ray transforms with the same profile on every parameter.
    pub fn from_phase(p: &PhaseSpec, cutoff: AxisProfile) -> Result<Self, NumericsError> {
        match &p.kind {
            PhaseKind::CurveAverage { gamma } => Ok(MultiplierModel::Curve { gamma: gamma.clone(), cutoff }),
            PhaseKind::RigidXray { gamma } => Ok(MultiplierModel::RigidXray {
                gamma: gamma.clone(),
                alpha_cutoff: cutoff.clone(),
                s_cutoff: cutoff,
            }),
            _ => Err(NumericsError::Unsupported(p.kind_name().into())),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            MultiplierModel::Curve { gamma, .. } => gamma.len(),
            MultiplierModel::RigidXray { gamma, .. } => gamma.len() + 1,
        }
    }

    fn evaluator(&self) -> Result<Evaluator, NumericsError> {
        match self {
            MultiplierModel::Curve { gamma, cutoff } => {
                let comps: Vec<Vec<f64>> = gamma.iter().map(coeffs).collect::<Result<_, _>>()?;
                let (lo, hi) = cutoff.interval();
                let speed = speed(&comps, lo, hi);
                Ok(Evaluator::Curve(CurveEval { comps, cutoff: cutoff.clone(), speed }))
            }
            MultiplierModel::RigidXray { gamma, alpha_cutoff, s_cutoff } => {
                let comps: Vec<Vec<f64>> = gamma.iter().map(coeffs).collect::<Result<_, _>>()?;
                let (lo, hi) = alpha_cutoff.interval();
                let speed = speed(&comps, lo, hi);
                let (slo, shi) = s_cutoff.interval();
                Ok(Evaluator::Rigid(RigidEval {
                    comps,
                    alpha: alpha_cutoff.clone(),
                    speed,
                    s_extent: slo.abs().max(shi.abs()),
                    chi_hat: ChiHat::new(s_cutoff)?,
                }))
            }
        }
    }
}

/// sup_t |Γ'(t)| over the parameter interval, with a small safety margin.
fn speed(comps: &[Vec<f64>], lo: f64, hi: f64) -> f64 {
    let d: Vec<Vec<f64>> = comps.iter().map(|c| derivative(c)).collect();
    let s = (0..=4096)
        .map(|k| {
            let t = lo + (hi - lo) * k as f64 / 4096.0;
            d.iter().map(|c| horner(c, t).powi(2)).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max);
    1.01 * s.max(1e-12)
}

/// m(ξ) by adaptive quadrature to relative accuracy `rel_tol`.
pub fn multiplier_value(model: &MultiplierModel, xi: &[f64], rel_tol: f64) -> Result<C64, NumericsError> {
    if xi.len() != model.dim() {
        return Err(NumericsError::Argument(format!("ξ must have {} components", model.dim())));
    }
    match model.evaluator()? {
        Evaluator::Curve(c) => c.accurate(xi, rel_tol),
        Evaluator::Rigid(r) => {
            let scale = r.coarse(xi, &ResolutionRule::default()).norm();
            r.accurate(xi, rel_tol, scale)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupSearch {
    pub samples_per_angle: usize,
    pub candidates: usize,
    pub rel_tol: f64,
    pub rule: ResolutionRule,
}

impl Default for SupSearch {
    fn default() -> Self {
        SupSearch { samples_per_angle: 720, candidates: 8, rel_tol: 1e-8, rule: ResolutionRule::default() }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct MultiplierSup {
    pub lambda: f64,
    pub value: f64,
    pub direction: Vec<f64>,
    pub coarse_value: f64,
    pub coarse_directions: usize,
}

/// Unit vector from d−1 angles; the first ranges over [0,π), the rest over [0,π].
pub fn sphere_point(angles: &[f64]) -> Vec<f64> {
    let d = angles.len() + 1;
    let mut v = vec![0.0; d];
    let mut s = 1.0;
    for k in (1..angles.len()).rev() {
        v[k + 1] = s * angles[k].cos();
        s *= angles[k].sin();
    }
    v[0] = s * angles[0].cos();
    v[1] = s * angles[0].sin();
    v
}

fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc > fd { (c, fc) } else { (d, fd) }
}

/// sup over |ξ| = λ of |m(ξ)|: coarse angular scan of the half-sphere (|m(−ξ)| = |m(ξ)|),
/// then golden-section refinement around the best local maxima with accurate quadrature.
pub fn multiplier_sup(model: &MultiplierModel, lambda: f64, search: &SupSearch) -> Result<MultiplierSup, NumericsError> {
    let d = model.dim();
    if !(2..=4).contains(&d) {
        return Err(NumericsError::Argument(format!("dimension {d} outside 2..4")));
    }
    if !(lambda >= 4.0 && lambda.is_finite()) {
        return Err(NumericsError::Argument(format!("λ must be at least 4, got {lambda}")));
    }
    if search.samples_per_angle < 720 {
        return Err(NumericsError::Argument("at least 720 samples per angle".into()));
    }
    let ev = model.evaluator()?;
    let s = search.samples_per_angle;
    let step = PI / s as f64;
    let shape: Vec<usize> = (0..d - 1).map(|k| if k == 0 { s } else { s + 1 }).collect();
    let total: usize = shape.iter().product();
    let angles_of = |flat: usize| -> Vec<f64> {
        let mut r = flat;
        let mut a = vec![0.0; d - 1];
        for k in (0..d - 1).rev() {
            a[k] = (r % shape[k]) as f64 * step;
            r /= shape[k];
        }
        a
    };
    let xi_of = |a: &[f64]| -> Vec<f64> { sphere_point(a).into_iter().map(|v| v * lambda).collect() };
    let coarse: Vec<f64> = match &ev {
        Evaluator::Curve(c) => {
            let cc = CurveCoarse::new(c, lambda, &search.rule);
            par::map(total, |f| cc.value(&xi_of(&angles_of(f))).norm())
        }
        Evaluator::Rigid(r) => par::map(total, |f| r.coarse(&xi_of(&angles_of(f)), &search.rule).norm()),
    };
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| coarse[b].total_cmp(&coarse[a]).then(a.cmp(&b)));
    let mut picked: Vec<Vec<f64>> = Vec::new();
    for &f in &order {
        if picked.len() >= search.candidates {
            break;
        }
        let a = angles_of(f);
        let near = picked.iter().any(|p| {
            p.iter().zip(&a).enumerate().all(|(k, (x, y))| {
                let mut diff = (x - y).abs();
                if k == 0 {
                    diff = diff.min(PI - diff);
                }
                diff <= 2.5 * step
            })
        });
        if !near {
            picked.push(a);
        }
    }
    let scale = coarse[order[0]];
    let exact = |a: &[f64]| -> Result<f64, NumericsError> {
        let xi = xi_of(a);
        Ok(match &ev {
            Evaluator::Curve(c) => c.accurate(&xi, search.rel_tol)?.norm(),
            Evaluator::Rigid(r) => r.accurate(&xi, search.rel_tol, scale)?.norm(),
        })
    };
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for start in picked {
        let mut a = start;
        let mut val = exact(&a)?;
        for _sweep in 0..2 {
            for k in 0..d - 1 {
                let err = std::cell::RefCell::new(None);
                let f = |t: f64| {
                    let mut b = a.clone();
                    b[k] = t;
                    exact(&b).unwrap_or_else(|e| {
                        err.borrow_mut().get_or_insert(e);
                        f64::NEG_INFINITY
                    })
                };
                let (t, v) = golden(f, a[k] - step, a[k] + step, 30);
                if let Some(e) = err.into_inner() {
                    return Err(e);
                }
                if v > val {
                    a[k] = t;
                    val = v;
                }
            }
        }
        if val > best.0 {
            best = (val, a);
        }
    }
    Ok(MultiplierSup {
        lambda,
        value: best.0,
        direction: sphere_point(&best.1),
        coarse_value: scale,
        coarse_directions: total,
    })
}
