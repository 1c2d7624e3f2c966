//! Adaptive Gauss–Kronrod (7/15) quadrature by interval halving.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::NumericsError;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
    pub max_depth: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
    /// Uniform pieces before adaptation; set from the oscillation count.
    pub initial_pieces: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { rel_tol: 1e-8, abs_tol: 1e-300, max_depth: 40, initial_pieces: 1 }
    }
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    ((k * h), ((k - g) * h).norm())
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error).then(o.a.total_cmp(&self.a))
    }
}

/// ∫_a^b f until the summed error estimate is below max(abs_tol, rel_tol·|I|).
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult, NumericsError> {
    let n0 = opts.initial_pieces.max(1);
    let mut heap = BinaryHeap::with_capacity(4 * n0);
    let mut evaluations = 0;
    let width = (b - a) / n0 as f64;
    for i in 0..n0 {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == n0 { b } else { lo + width };
        let (value, error) = gk15(&f, lo, hi);
        evaluations += 15;
        heap.push(Piece { a: lo, b: hi, value, error, depth: 0 });
    }
    let mut max_depth = 0;
    let mut total: Complex64 = heap.iter().map(|p| p.value).sum();
    let mut err: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        if err <= opts.abs_tol.max(opts.rel_tol * total.norm()) {
            total = heap.iter().map(|p| p.value).sum();
            err = heap.iter().map(|p| p.error).sum();
            if err <= opts.abs_tol.max(opts.rel_tol * total.norm()) {
                return Ok(QuadResult { value: total, error: err, evaluations, max_depth });
            }
        }
        let worst = heap.pop().expect("nonempty");
        if worst.depth >= opts.max_depth {
            return Err(NumericsError::Quadrature {
                depth: worst.depth,
                interval: (worst.a, worst.b),
                estimate: total.norm(),
                error: err,
            });
        }
        total -= worst.value;
        err -= worst.error;
        let m = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, m), (m, worst.b)] {
            let (value, error) = gk15(&f, lo, hi);
            evaluations += 15;
            total += value;
            err += error;
            heap.push(Piece { a: lo, b: hi, value, error, depth: worst.depth + 1 });
        }
        max_depth = max_depth.max(worst.depth + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| Complex64::new(x.powi(5) - 3.0 * x * x, 0.0), -1.0, 2.0, &QuadOptions::default()).unwrap();
        assert!((r.value.re - (63.0 / 6.0 - 9.0)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_fourier() {
        // ∫_{-1}^{1} e^{-i u s} ds = 2 sin(u)/u
        let u = 200.0;
        let opts = QuadOptions { initial_pieces: 64, ..Default::default() };
        let r = integrate(|s| Complex64::from_polar(1.0, -u * s), -1.0, 1.0, &opts).unwrap();
        assert!((r.value - Complex64::new(2.0 * u.sin() / u, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn depth_limit_reported() {
        let opts = QuadOptions { max_depth: 3, ..Default::default() };
        let e = integrate(|x| Complex64::new(1.0 / x.abs().sqrt().max(1e-300), 0.0), -1.0, 1.0, &opts);
        assert!(matches!(e, Err(NumericsError::Quadrature { depth: 3, .. })));
    }
}
