use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::{KernelMatrix, LinearOperator};
use super::NumericsError;

pub const DEFAULT_SEED: u64 = 0x05C1_11AB;
pub const SVD_SIDE_LIMIT: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum NormMethod {
    PowerIteration,
    DenseSvd,
}

impl std::fmt::Display for NormMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NormMethod::PowerIteration => "power-iteration",
            NormMethod::DenseSvd => "dense-svd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub relative_tolerance: f64,
    pub iterations: usize,
    pub method: NormMethod,
    /// Power-iteration value computed alongside a dense SVD.
    pub cross_check: Option<f64>,
}

impl NormEstimate {
    /// |power − svd| / svd when both were computed.
    pub fn cross_check_gap(&self) -> Option<f64> {
        self.cross_check.map(|p| {
            if self.value == 0.0 {
                p.abs()
            } else {
                (p - self.value).abs() / self.value
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormOptions {
    pub tol: f64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Matrices with both sides at most this size also get a dense SVD.
    pub svd_side_limit: usize,
}

impl NormOptions {
    pub fn new(tol: f64) -> Self {
        NormOptions { tol, max_iterations: 5000, seed: DEFAULT_SEED, svd_side_limit: SVD_SIDE_LIMIT }
    }
}

fn check_tol(tol: f64) -> Result<(), NumericsError> {
    if (1e-8..=1e-3).contains(&tol) {
        Ok(())
    } else {
        Err(NumericsError::Argument(format!("tol must lie in [1e-8, 1e-3], got {tol:e}")))
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// Largest singular value by power iteration on K*K from a seeded random start.
/// Stops when successive Rayleigh quotients ‖Kv‖² differ relatively by less than `tol`.
pub fn power_iteration<K: LinearOperator + ?Sized>(k: &K, opts: &NormOptions) -> Result<NormEstimate, NumericsError> {
    check_tol(opts.tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<Complex64> = (0..k.cols())
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let mut u = vec![Complex64::new(0.0, 0.0); k.rows()];
    let mut prev = f64::NAN;
    let mut change = f64::INFINITY;
    for it in 1..=opts.max_iterations {
        let nv = norm2(&v).sqrt();
        if nv == 0.0 {
            return Ok(NormEstimate {
                value: 0.0,
                relative_tolerance: opts.tol,
                iterations: it,
                method: NormMethod::PowerIteration,
                cross_check: None,
            });
        }
        v.iter_mut().for_each(|c| *c /= nv);
        k.apply(&v, &mut u);
        let rho = norm2(&u);
        if rho == 0.0 {
            return Ok(NormEstimate {
                value: 0.0,
                relative_tolerance: opts.tol,
                iterations: it,
                method: NormMethod::PowerIteration,
                cross_check: None,
            });
        }
        if prev.is_finite() {
            change = (rho - prev).abs() / rho;
            if change < opts.tol {
                return Ok(NormEstimate {
                    value: rho.sqrt(),
                    relative_tolerance: opts.tol,
                    iterations: it,
                    method: NormMethod::PowerIteration,
                    cross_check: None,
                });
            }
        }
        prev = rho;
        k.apply_adjoint(&u, &mut v);
    }
    Err(NumericsError::NoConvergence {
        iterations: opts.max_iterations,
        last: prev.sqrt(),
        change,
        vector: v,
    })
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Largest eigenvalue of the symmetric tridiagonal matrix (alpha, beta) by Sturm bisection.
fn tridiag_max_eig(alpha: &[f64], beta: &[f64]) -> f64 {
    let n = alpha.len();
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for i in 0..n {
        let r = if i > 0 { beta[i - 1].abs() } else { 0.0 } + if i + 1 < n { beta[i].abs() } else { 0.0 };
        hi = hi.max(alpha[i] + r);
        lo = lo.min(alpha[i] - r);
    }
    // Number of eigenvalues strictly greater than x.
    let above = |x: f64| -> usize {
        let mut count = 0;
        let mut q = 1.0f64;
        for i in 0..n {
            let b2 = if i > 0 { beta[i - 1] * beta[i - 1] } else { 0.0 };
            q = alpha[i] - x - if i > 0 { b2 / q } else { 0.0 };
            if q == 0.0 {
                q = f64::EPSILON * (x.abs() + 1.0);
            }
            if q > 0.0 {
                count += 1;
            }
        }
        count
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Largest singular value by Krylov-accelerated power iteration on K*K: the Rayleigh quotient is
/// maximized over the Krylov space of the seeded start vector (Lanczos with full
/// reorthogonalization, restarted from the Ritz vector). Stops when successive Rayleigh
/// quotients differ relatively by less than `tol` on two consecutive steps.
pub fn krylov_norm<K: LinearOperator + ?Sized>(k: &K, opts: &NormOptions) -> Result<NormEstimate, NumericsError> {
    check_tol(opts.tol)?;
    const MAX_BASIS: usize = 160;
    let n = k.cols();
    let zero = Complex64::new(0.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let mut u = vec![zero; k.rows()];
    let mut w = vec![zero; n];
    let mut iterations = 0;
    let mut prev = f64::NAN;
    let mut change = f64::INFINITY;
    let mut calm = 0;
    let done = |value: f64, iterations: usize| NormEstimate {
        value,
        relative_tolerance: opts.tol,
        iterations,
        method: NormMethod::PowerIteration,
        cross_check: None,
    };
    loop {
        let ns = norm2(&start).sqrt();
        if ns == 0.0 {
            return Ok(done(0.0, iterations));
        }
        start.iter_mut().for_each(|c| *c /= ns);
        let mut basis: Vec<Vec<Complex64>> = vec![start.clone()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        loop {
            if iterations >= opts.max_iterations {
                return Err(NumericsError::NoConvergence {
                    iterations,
                    last: prev.max(0.0).sqrt(),
                    change,
                    vector: basis.pop().unwrap_or_default(),
                });
            }
            iterations += 1;
            let v = basis.last().expect("basis");
            k.apply(v, &mut u);
            k.apply_adjoint(&u, &mut w);
            let a = dot(v, &w).re;
            alpha.push(a);
            for _pass in 0..2 {
                for q in &basis {
                    let c = dot(q, &w);
                    for (x, y) in w.iter_mut().zip(q) {
                        *x -= c * y;
                    }
                }
            }
            let b = norm2(&w).sqrt();
            let theta = tridiag_max_eig(&alpha, &beta);
            if theta <= 0.0 {
                return Ok(done(0.0, iterations));
            }
            if prev.is_finite() {
                change = (theta - prev).abs() / theta;
                calm = if change < opts.tol { calm + 1 } else { 0 };
            }
            prev = theta;
            if calm >= 3 || b <= 1e-14 * theta {
                return Ok(done(theta.sqrt(), iterations));
            }
            if basis.len() == MAX_BASIS {
                let m = alpha.len();
                let t = nalgebra::DMatrix::from_fn(m, m, |i, j| {
                    if i == j {
                        alpha[i]
                    } else if i + 1 == j {
                        beta[i]
                    } else if j + 1 == i {
                        beta[j]
                    } else {
                        0.0
                    }
                });
                let eig = t.symmetric_eigen();
                let top = eig.eigenvalues.imax();
                let s = eig.eigenvectors.column(top);
                start = vec![zero; n];
                for (q, c) in basis.iter().zip(s.iter()) {
                    for (x, y) in start.iter_mut().zip(q) {
                        *x += y * *c;
                    }
                }
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }
    }
}

pub fn dense_svd_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Operator norm of a discretized kernel. Small kernels are decomposed densely and the
/// power-iteration value is kept as a cross-check.
pub fn operator_norm(k: &KernelMatrix, tol: f64) -> Result<NormEstimate, NumericsError> {
    operator_norm_with(k, &NormOptions::new(tol))
}

pub fn operator_norm_with(k: &KernelMatrix, opts: &NormOptions) -> Result<NormEstimate, NumericsError> {
    check_tol(opts.tol)?;
    if k.side() <= opts.svd_side_limit {
        let svd = dense_svd_norm(&k.to_dense());
        let power = krylov_norm(k, &NormOptions { tol: 1e-8, ..*opts })
            .map(|e| e.value)
            .or_else(|e| match e {
                NumericsError::NoConvergence { last, .. } => Ok(last),
                e => Err(e),
            })?;
        Ok(NormEstimate {
            value: svd,
            relative_tolerance: opts.tol,
            iterations: 0,
            method: NormMethod::DenseSvd,
            cross_check: Some(power),
        })
    } else {
        krylov_norm(k, opts)
    }
}
