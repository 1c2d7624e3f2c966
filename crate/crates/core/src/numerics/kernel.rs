use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::degeneracy::{oscillatory_vars, PhaseSpec};
use crate::symcore::{var_list, MultiPoly, PolyF64, Rational};

use super::amplitude::{AmplitudeSpec, Cutoff};
use super::grid::{Axis, GridSpec, ResolutionRule};
use super::par;
use super::NumericsError;

type C64 = Complex64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ROW_CHUNK: usize = 64;

/// Largest stored dense kernel, in entries (16 bytes each).
pub const DEFAULT_DENSE_CAP: usize = 1 << 26;

pub trait LinearOperator: Sync {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn apply(&self, v: &[C64], out: &mut [C64]);
    fn apply_adjoint(&self, v: &[C64], out: &mut [C64]);
}

/// Row-major complex matrix.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

/// Σ over fixed row chunks of the chunk's contribution to K^H v, summed in chunk order.
fn chunked_adjoint<F>(rows: usize, cols: usize, out: &mut [C64], chunk_contrib: F)
where
    F: Fn(std::ops::Range<usize>, &mut [C64]) + Sync + Send,
{
    let nchunks = rows.div_ceil(ROW_CHUNK);
    let partials: Vec<Vec<C64>> = par::map(nchunks, |c| {
        let mut acc = vec![ZERO; cols];
        chunk_contrib(c * ROW_CHUNK..((c + 1) * ROW_CHUNK).min(rows), &mut acc);
        acc
    });
    out.iter_mut().for_each(|o| *o = ZERO);
    for p in partials {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
}

impl LinearOperator for DenseMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn apply(&self, v: &[C64], out: &mut [C64]) {
        let cols = self.cols;
        par::chunks_mut(out, ROW_CHUNK, |c, block| {
            for (r, o) in block.iter_mut().enumerate() {
                let i = c * ROW_CHUNK + r;
                let row = &self.data[i * cols..(i + 1) * cols];
                *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
            }
        });
    }
    fn apply_adjoint(&self, v: &[C64], out: &mut [C64]) {
        let cols = self.cols;
        chunked_adjoint(self.rows, cols, out, |range, acc| {
            for i in range {
                let vi = v[i];
                let row = &self.data[i * cols..(i + 1) * cols];
                for (a, k) in acc.iter_mut().zip(row) {
                    *a += k.conj() * vi;
                }
            }
        });
    }
}

/// Σ_α X_α(x) Q_α(z) tabulated on the row and column points.
#[derive(Clone, Debug)]
struct SepTable {
    rank: usize,
    xt: Vec<f64>,
    zt: Vec<f64>,
}

fn grid_points(axes: &[Axis]) -> Vec<Vec<f64>> {
    let pts: Vec<Vec<f64>> = axes.iter().map(Axis::points).collect();
    let n: usize = axes.iter().map(|a| a.count).product();
    (0..n)
        .map(|flat| {
            let mut r = flat;
            let mut p = vec![0.0; axes.len()];
            for k in (0..axes.len()).rev() {
                p[k] = pts[k][r % axes[k].count];
                r /= axes[k].count;
            }
            p
        })
        .collect()
}

fn grid_weights(axes: &[Axis]) -> Vec<f64> {
    let ws: Vec<Vec<f64>> = axes.iter().map(Axis::weights).collect();
    let n: usize = axes.iter().map(|a| a.count).product();
    (0..n)
        .map(|flat| {
            let mut r = flat;
            let mut w = 1.0;
            for k in (0..axes.len()).rev() {
                w *= ws[k][r % axes[k].count];
                r /= axes[k].count;
            }
            w
        })
        .collect()
}

impl SepTable {
    /// `scale·p` for p over (x_1..x_d, z_1..z_d).
    fn new(p: &MultiPoly, scale: f64, d: usize, xs: &[Vec<f64>], zs: &[Vec<f64>]) -> Self {
        let mut groups: std::collections::BTreeMap<Vec<u16>, Vec<(f64, Vec<u16>)>> = Default::default();
        for (e, c) in p.terms() {
            groups
                .entry(e[..d].to_vec())
                .or_default()
                .push((crate::symcore::rational::to_f64(c) * scale, e[d..].to_vec()));
        }
        let mono = |pt: &[f64], e: &[u16]| -> f64 {
            pt.iter().zip(e).map(|(v, &k)| v.powi(k as i32)).product()
        };
        let mut xt = Vec::with_capacity(groups.len() * xs.len());
        let mut zt = Vec::with_capacity(groups.len() * zs.len());
        for (xe, zterms) in &groups {
            xt.extend(xs.iter().map(|x| mono(x, xe)));
            zt.extend(zs.iter().map(|z| zterms.iter().map(|(c, ze)| c * mono(z, ze)).sum::<f64>()));
        }
        SepTable { rank: groups.len(), xt, zt }
    }

    #[inline]
    fn value(&self, i: usize, j: usize, rows: usize, cols: usize) -> f64 {
        let mut s = 0.0;
        for a in 0..self.rank {
            s += self.xt[a * rows + i] * self.zt[a * cols + j];
        }
        s
    }
}

/// Entry evaluator shared by stored and on-the-fly kernels.
#[derive(Clone, Debug)]
struct EntryEval {
    rows: usize,
    cols: usize,
    phase: SepTable,
    cutoffs: Vec<(SepTable, Cutoff)>,
    rfac: Vec<f64>,
    cfac: Vec<f64>,
}

impl EntryEval {
    fn new(phi: &MultiPoly, amp: &AmplitudeSpec, lambda: f64, grid: &GridSpec) -> Self {
        let d = grid.x.len();
        let xs = grid_points(&grid.x);
        let zs = grid_points(&grid.z);
        let mut phase = SepTable::new(phi, lambda, d, &xs, &zs);
        if let Some(m) = amp.modulation.as_ref().filter(|m| !m.is_zero()) {
            let mt = SepTable::new(m, 1.0, d, &xs, &zs);
            phase.rank += mt.rank;
            phase.xt.extend(mt.xt);
            phase.zt.extend(mt.zt);
        }
        let cutoffs = amp
            .cutoffs
            .iter()
            .map(|c| (SepTable::new(&c.g, 1.0, d, &xs, &zs), c.clone()))
            .collect();
        let rw = grid_weights(&grid.x);
        let cw = grid_weights(&grid.z);
        let rfac = xs
            .iter()
            .zip(rw)
            .map(|(x, w)| w.sqrt() * amp.x.iter().zip(x).map(|(p, &v)| p.eval(v)).product::<f64>())
            .collect();
        let cfac = zs
            .iter()
            .zip(cw)
            .map(|(z, w)| w.sqrt() * amp.z.iter().zip(z).map(|(p, &v)| p.eval(v)).product::<f64>())
            .collect();
        EntryEval { rows: xs.len(), cols: zs.len(), phase, cutoffs, rfac, cfac }
    }

    #[inline]
    fn entry(&self, i: usize, j: usize) -> C64 {
        let mut a = self.rfac[i] * self.cfac[j];
        if a == 0.0 {
            return ZERO;
        }
        for (t, c) in &self.cutoffs {
            a *= c.apply(t.value(i, j, self.rows, self.cols));
            if a == 0.0 {
                return ZERO;
            }
        }
        C64::from_polar(a, self.phase.value(i, j, self.rows, self.cols))
    }

    fn row(&self, i: usize, out: &mut [C64]) {
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.entry(i, j);
        }
    }
}

impl LinearOperator for EntryEval {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn apply(&self, v: &[C64], out: &mut [C64]) {
        par::chunks_mut(out, ROW_CHUNK, |c, block| {
            let mut buf = vec![ZERO; self.cols];
            for (r, o) in block.iter_mut().enumerate() {
                self.row(c * ROW_CHUNK + r, &mut buf);
                *o = buf.iter().zip(v).map(|(a, b)| a * b).sum();
            }
        });
    }
    fn apply_adjoint(&self, v: &[C64], out: &mut [C64]) {
        chunked_adjoint(self.rows, self.cols, out, |range, acc| {
            let mut buf = vec![ZERO; self.cols];
            for i in range {
                self.row(i, &mut buf);
                for (a, k) in acc.iter_mut().zip(&buf) {
                    *a += k.conj() * v[i];
                }
            }
        });
    }
}

/// K = diag(left) · [c_{i−j}] · diag(right), applied through a circulant embedding.
#[derive(Clone)]
pub struct ToeplitzKernel {
    n: usize,
    m: usize,
    left: Vec<C64>,
    right: Vec<C64>,
    coeffs: Vec<C64>,
    spectrum: Vec<C64>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for ToeplitzKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ToeplitzKernel({}x{}, fft {})", self.n, self.m, self.spectrum.len())
    }
}

impl ToeplitzKernel {
    fn new(left: Vec<C64>, right: Vec<C64>, coeffs: Vec<C64>) -> Self {
        let (n, m) = (left.len(), right.len());
        let len = (n + m - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(len);
        let ifft = planner.plan_fft_inverse(len);
        let mut spectrum = vec![ZERO; len];
        for k in 0..n {
            spectrum[k] = coeffs[k + m - 1];
        }
        for k in 1..m {
            spectrum[len - k] = coeffs[m - 1 - k];
        }
        fft.process(&mut spectrum);
        let s = 1.0 / len as f64;
        spectrum.iter_mut().for_each(|c| *c *= s);
        ToeplitzKernel { n, m, left, right, coeffs, spectrum, fft, ifft }
    }

    fn entry(&self, i: usize, j: usize) -> C64 {
        self.left[i] * self.coeffs[i + self.m - 1 - j] * self.right[j]
    }

    fn convolve(&self, input: impl Iterator<Item = C64>, conj: bool) -> Vec<C64> {
        let mut buf = vec![ZERO; self.spectrum.len()];
        for (b, v) in buf.iter_mut().zip(input) {
            *b = v;
        }
        self.fft.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= if conj { s.conj() } else { *s };
        }
        self.ifft.process(&mut buf);
        buf
    }
}

impl LinearOperator for ToeplitzKernel {
    fn rows(&self) -> usize {
        self.n
    }
    fn cols(&self) -> usize {
        self.m
    }
    fn apply(&self, v: &[C64], out: &mut [C64]) {
        let buf = self.convolve(self.right.iter().zip(v).map(|(r, x)| r * x), false);
        for ((o, b), l) in out.iter_mut().zip(buf).zip(&self.left) {
            *o = l * b;
        }
    }
    fn apply_adjoint(&self, v: &[C64], out: &mut [C64]) {
        let buf = self.convolve(self.left.iter().zip(v).map(|(l, x)| l.conj() * x), true);
        for ((o, b), r) in out.iter_mut().zip(buf).zip(&self.right) {
            *o = r.conj() * b;
        }
    }
}

/// Tensor product of one-dimensional kernels, axis 0 slowest.
#[derive(Clone, Debug)]
pub struct KroneckerKernel {
    factors: Vec<KernelMatrix>,
}

impl KroneckerKernel {
    fn entry(&self, i: usize, j: usize) -> C64 {
        let (mut ri, mut rj) = (i, j);
        let mut e = C64::new(1.0, 0.0);
        for f in self.factors.iter().rev() {
            e *= f.entry(ri % f.rows(), rj % f.cols());
            ri /= f.rows();
            rj /= f.cols();
        }
        e
    }

    fn apply_modes(&self, v: &[C64], out: &mut [C64], adjoint: bool) {
        let mut dims: Vec<usize> = self
            .factors
            .iter()
            .map(|f| if adjoint { f.rows() } else { f.cols() })
            .collect();
        let mut cur = v.to_vec();
        for (k, f) in self.factors.iter().enumerate() {
            let (nin, nout) = if adjoint { (f.rows(), f.cols()) } else { (f.cols(), f.rows()) };
            let pre: usize = dims[..k].iter().product();
            let post: usize = dims[k + 1..].iter().product();
            let mut next = vec![ZERO; pre * nout * post];
            let mut fin = vec![ZERO; nin];
            let mut fout = vec![ZERO; nout];
            for a in 0..pre {
                for b in 0..post {
                    for (t, x) in fin.iter_mut().enumerate() {
                        *x = cur[(a * nin + t) * post + b];
                    }
                    if adjoint {
                        f.apply_adjoint(&fin, &mut fout);
                    } else {
                        f.apply(&fin, &mut fout);
                    }
                    for (t, y) in fout.iter().enumerate() {
                        next[(a * nout + t) * post + b] = *y;
                    }
                }
            }
            dims[k] = nout;
            cur = next;
        }
        out.copy_from_slice(&cur);
    }
}

#[derive(Clone, Debug)]
enum Storage {
    Dense(DenseMatrix),
    Closure(EntryEval),
    Toeplitz(ToeplitzKernel),
    Kronecker(KroneckerKernel),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum KernelMethod {
    Dense,
    Closure,
    Toeplitz,
    Kronecker,
}

impl fmt::Display for KernelMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelMethod::Dense => "dense",
            KernelMethod::Closure => "closure",
            KernelMethod::Toeplitz => "toeplitz-fft",
            KernelMethod::Kronecker => "kronecker",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StoragePolicy {
    /// Kronecker for separable phases, FFT for translation-structured ones, else dense up to the cap.
    Auto,
    Dense,
    Closure,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AssembleOptions {
    pub strict: bool,
    pub rule: ResolutionRule,
    pub storage: StoragePolicy,
    pub dense_cap: usize,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions {
            strict: false,
            rule: ResolutionRule::default(),
            storage: StoragePolicy::Auto,
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }
}

/// Discretized T_λ with symmetric quadrature weights: K_ij = √w_i e^{iλΦ(x_i,z_j)} σ(x_i,z_j) √w_j.
#[derive(Clone, Debug)]
pub struct KernelMatrix {
    pub lambda: f64,
    pub grid: GridSpec,
    storage: Storage,
}

impl KernelMatrix {
    pub fn method(&self) -> KernelMethod {
        match self.storage {
            Storage::Dense(_) => KernelMethod::Dense,
            Storage::Closure(_) => KernelMethod::Closure,
            Storage::Toeplitz(_) => KernelMethod::Toeplitz,
            Storage::Kronecker(_) => KernelMethod::Kronecker,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        match &self.storage {
            Storage::Dense(m) => m.get(i, j),
            Storage::Closure(e) => e.entry(i, j),
            Storage::Toeplitz(t) => t.entry(i, j),
            Storage::Kronecker(k) => k.entry(i, j),
        }
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        match &self.storage {
            Storage::Dense(m) => m.to_nalgebra(),
            _ => DMatrix::from_fn(self.rows(), self.cols(), |i, j| self.entry(i, j)),
        }
    }

    pub fn side(&self) -> usize {
        self.rows().max(self.cols())
    }
}

impl LinearOperator for KernelMatrix {
    fn rows(&self) -> usize {
        self.grid.rows()
    }
    fn cols(&self) -> usize {
        self.grid.cols()
    }
    fn apply(&self, v: &[C64], out: &mut [C64]) {
        match &self.storage {
            Storage::Dense(m) => m.apply(v, out),
            Storage::Closure(e) => e.apply(v, out),
            Storage::Toeplitz(t) => t.apply(v, out),
            Storage::Kronecker(k) => k.apply_modes(v, out, false),
        }
    }
    fn apply_adjoint(&self, v: &[C64], out: &mut [C64]) {
        match &self.storage {
            Storage::Dense(m) => m.apply_adjoint(v, out),
            Storage::Closure(e) => e.apply_adjoint(v, out),
            Storage::Toeplitz(t) => t.apply_adjoint(v, out),
            Storage::Kronecker(k) => k.apply_modes(v, out, true),
        }
    }
}

/// f(x,z) = ψ(x−z) + p(x) + q(z) over a two-variable ring; returns (ψ, p, q) in one variable.
pub(crate) fn translation_split(f: &MultiPoly) -> Option<[MultiPoly; 3]> {
    if f.nvars() != 2 {
        return None;
    }
    let u = var_list(&["u"]);
    let mono = |k: u16, c: Rational| MultiPoly::monomial(&u, vec![k], c);
    let mut psi = MultiPoly::zero(&u);
    for (e, c) in f.diff(0).terms() {
        if e[0] == 0 && e[1] >= 1 {
            let k = e[1];
            let sign = if k % 2 == 0 { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
            psi = &psi + &mono(k + 1, c * sign / Rational::from_integer((k as i64 + 1).into()));
        }
    }
    let mut p = MultiPoly::zero(&u);
    let mut q = MultiPoly::zero(&u);
    for (e, c) in f.terms() {
        if e[1] == 0 {
            p = &p + &mono(e[0], c.clone());
        } else if e[0] == 0 {
            q = &q + &mono(e[1], c.clone());
        }
    }
    let neg_u = -&MultiPoly::var(&u, 0);
    p = &p - &psi;
    q = &q - &psi.substitute_all(&[neg_u]).ok()?;
    let v = f.vars();
    let x = MultiPoly::var(v, 0);
    let z = MultiPoly::var(v, 1);
    let recon = &(&psi.substitute_all(&[&x - &z]).ok()? + &p.substitute_all(&[x]).ok()?) + &q.substitute_all(&[z]).ok()?;
    (&recon == f).then_some([psi, p, q])
}

/// g(x,z) = G(x−z); returns G.
pub(crate) fn difference_only(g: &MultiPoly) -> Option<MultiPoly> {
    if g.nvars() != 2 {
        return None;
    }
    let u = var_list(&["u"]);
    let big = MultiPoly::from_terms(
        &u,
        g.terms().iter().filter(|(e, _)| e[1] == 0).map(|(e, c)| (vec![e[0]], c.clone())),
    );
    let v = g.vars();
    let diff = &MultiPoly::var(v, 0) - &MultiPoly::var(v, 1);
    (&big.substitute_all(&[diff]).ok()? == g).then_some(big)
}

/// f = Σ_k f_k(x_k, z_k); each f_k re-expressed over (x1, z1).
fn pair_split(f: &MultiPoly, d: usize) -> Option<Vec<MultiPoly>> {
    let v1 = oscillatory_vars(1);
    let mut parts = vec![MultiPoly::zero(&v1); d];
    for (e, c) in f.terms() {
        let used: Vec<usize> = (0..d).filter(|&k| e[k] > 0 || e[d + k] > 0).collect();
        let k = match used.as_slice() {
            [] => 0,
            [k] => *k,
            _ => return None,
        };
        parts[k] = &parts[k] + &MultiPoly::monomial(&v1, vec![e[k], e[d + k]], c.clone());
    }
    Some(parts)
}

fn toeplitz(phi: &MultiPoly, amp: &AmplitudeSpec, lambda: f64, grid: &GridSpec) -> Option<ToeplitzKernel> {
    if grid.x.len() != 1 {
        return None;
    }
    let (ax, az) = (&grid.x[0], &grid.z[0]);
    let h = ax.spacing();
    if (h - az.spacing()).abs() > 1e-12 * h {
        return None;
    }
    let [psi, p, q] = translation_split(phi)?;
    let (mpsi, mp, mq) = match &amp.modulation {
        Some(m) => {
            let [a, b, c] = translation_split(m)?;
            (Some(PolyF64::new(&a)), Some(PolyF64::new(&b)), Some(PolyF64::new(&c)))
        }
        None => (None, None, None),
    };
    let cuts: Vec<(PolyF64, &Cutoff)> = amp
        .cutoffs
        .iter()
        .map(|c| difference_only(&c.g).map(|g| (PolyF64::new(&g), c)))
        .collect::<Option<_>>()?;
    let (psi, p, q) = (PolyF64::new(&psi), PolyF64::new(&p), PolyF64::new(&q));
    let extra = |f: &Option<PolyF64>, t: f64| f.as_ref().map_or(0.0, |g| g.eval(&[t]));
    let xs = ax.points();
    let zs = az.points();
    let left = xs
        .iter()
        .zip(ax.weights())
        .map(|(&x, w)| C64::from_polar(w.sqrt() * amp.x[0].eval(x), lambda * p.eval(&[x]) + extra(&mp, x)))
        .collect();
    let right = zs
        .iter()
        .zip(az.weights())
        .map(|(&z, w)| C64::from_polar(w.sqrt() * amp.z[0].eval(z), lambda * q.eval(&[z]) + extra(&mq, z)))
        .collect();
    let (n, m) = (ax.count, az.count);
    let offset = ax.lo - az.lo;
    let coeffs = (0..n + m - 1)
        .map(|idx| {
            let k = idx as f64 - (m - 1) as f64;
            let u = offset + k * h;
            let a: f64 = cuts.iter().map(|(g, c)| c.apply(g.eval(&[u]))).product();
            if a == 0.0 {
                ZERO
            } else {
                C64::from_polar(a, lambda * psi.eval(&[u]) + extra(&mpsi, u))
            }
        })
        .collect();
    Some(ToeplitzKernel::new(left, right, coeffs))
}

fn kronecker(
    phi: &MultiPoly,
    amp: &AmplitudeSpec,
    lambda: f64,
    grid: &GridSpec,
    opts: &AssembleOptions,
) -> Option<KroneckerKernel> {
    let d = grid.x.len();
    if d < 2 {
        return None;
    }
    let phis = pair_split(phi, d)?;
    let mods = match &amp.modulation {
        Some(m) => Some(pair_split(m, d)?),
        None => None,
    };
    let mut cut_parts: Vec<Vec<Cutoff>> = vec![Vec::new(); d];
    for c in &amp.cutoffs {
        let parts = pair_split(&c.g, d)?;
        let nonconst: Vec<usize> = (0..d).filter(|&k| !parts[k].is_constant()).collect();
        let k = match nonconst.as_slice() {
            [] => 0,
            [k] => *k,
            _ => return None,
        };
        let g = if k == 0 {
            parts[0].clone()
        } else {
            &parts[k] + &MultiPoly::constant(parts[k].vars(), parts[0].constant_term())
        };
        cut_parts[k].push(Cutoff::new(g, c.scale, c.index));
    }
    let factors = (0..d)
        .map(|k| {
            let a = AmplitudeSpec {
                x: vec![amp.x[k].clone()],
                z: vec![amp.z[k].clone()],
                cutoffs: cut_parts[k].clone(),
                modulation: mods.as_ref().map(|m| m[k].clone()),
            };
            let g = GridSpec::new(vec![grid.x[k].clone()], vec![grid.z[k].clone()]);
            build(&phis[k], &a, lambda, g, opts)
        })
        .collect();
    Some(KroneckerKernel { factors })
}

fn build(phi: &MultiPoly, amp: &AmplitudeSpec, lambda: f64, grid: GridSpec, opts: &AssembleOptions) -> KernelMatrix {
    let entries = grid.rows() * grid.cols();
    let storage = match opts.storage {
        StoragePolicy::Dense => Storage::Dense(dense(phi, amp, lambda, &grid)),
        StoragePolicy::Closure => Storage::Closure(EntryEval::new(phi, amp, lambda, &grid)),
        StoragePolicy::Auto => {
            if let Some(k) = kronecker(phi, amp, lambda, &grid, opts) {
                Storage::Kronecker(k)
            } else if let Some(t) = toeplitz(phi, amp, lambda, &grid) {
                Storage::Toeplitz(t)
            } else if entries <= opts.dense_cap {
                Storage::Dense(dense(phi, amp, lambda, &grid))
            } else {
                Storage::Closure(EntryEval::new(phi, amp, lambda, &grid))
            }
        }
    };
    KernelMatrix { lambda, grid, storage }
}

fn dense(phi: &MultiPoly, amp: &AmplitudeSpec, lambda: f64, grid: &GridSpec) -> DenseMatrix {
    let e = EntryEval::new(phi, amp, lambda, grid);
    let (rows, cols) = (e.rows, e.cols);
    let mut data = vec![ZERO; rows * cols];
    par::chunks_mut(&mut data, cols * ROW_CHUNK, |c, block| {
        for (r, row) in block.chunks_mut(cols).enumerate() {
            e.row(c * ROW_CHUNK + r, row);
        }
    });
    DenseMatrix { rows, cols, data }
}

/// Discretizes T_λ f(x) = ∫ e^{iλΦ(x,z)} σ(x,z) f(z) dz on `grid`.
pub fn assemble_kernel(
    p: &PhaseSpec,
    a: &AmplitudeSpec,
    lambda: f64,
    g: &GridSpec,
    opts: &AssembleOptions,
) -> Result<KernelMatrix, NumericsError> {
    let phi = p.phi().ok_or_else(|| NumericsError::Unsupported(p.kind_name().into()))?;
    let d = p.d_left;
    if a.x.len() != d || a.z.len() != d || g.x.len() != d || g.z.len() != d {
        return Err(NumericsError::Argument(format!(
            "phase acts on R^{d}; amplitude has {}+{} axes, grid {}+{}",
            a.x.len(),
            a.z.len(),
            g.x.len(),
            g.z.len()
        )));
    }
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(NumericsError::Argument(format!("λ must be finite and nonnegative, got {lambda}")));
    }
    if let Some(ax) = g.x.iter().chain(&g.z).find(|ax| ax.count < super::MIN_GRID_POINTS || ax.hi <= ax.lo) {
        return Err(NumericsError::Argument(format!(
            "axis [{}, {}] with {} points (need at least {} and a nonempty interval)",
            ax.lo,
            ax.hi,
            ax.count,
            super::MIN_GRID_POINTS
        )));
    }
    let deficits = g.deficits(&phi, a, lambda, &opts.rule);
    let mut grid = g.clone();
    if !deficits.is_empty() {
        if opts.strict {
            let msg = deficits
                .iter()
                .map(|d| format!("{} needs {} points (has {})", d.axis, d.need, d.have))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(NumericsError::Resolution(msg));
        }
        grid.under_resolved = true;
    }
    Ok(build(&phi, a, lambda, grid, opts))
}
