use std::f64::consts::PI;

use crate::symcore::{MultiPoly, PolyF64};

use super::amplitude::AmplitudeSpec;

pub const MIN_GRID_POINTS: usize = 16;

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, count: usize) -> Self {
        Axis { lo, hi, count }
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn spacing(&self) -> f64 {
        self.length() / (self.count - 1) as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        if k + 1 == self.count {
            self.hi
        } else {
            self.lo + k as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.point(k)).collect()
    }

    /// Trapezoidal weights.
    pub fn weights(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.count)
            .map(|k| if k == 0 || k + 1 == self.count { h / 2.0 } else { h })
            .collect()
    }

    pub fn doubled(&self) -> Axis {
        Axis { count: 2 * self.count, ..self.clone() }
    }
}

/// Points per shortest local wavelength, with a floor on every axis.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ResolutionRule {
    pub points_per_wavelength: f64,
    pub min_points: usize,
    /// Points per unit change of a cutoff argument (rescaled to β₀).
    pub points_per_cutoff_unit: f64,
}

impl Default for ResolutionRule {
    fn default() -> Self {
        ResolutionRule { points_per_wavelength: 4.0, min_points: 64, points_per_cutoff_unit: 24.0 }
    }
}

impl ResolutionRule {
    /// Count needed on an axis of length `len` where the phase λΦ has slope at most `lambda·slope`.
    pub fn required(&self, lambda: f64, len: f64, slope: f64) -> usize {
        let need = (self.points_per_wavelength * lambda * len * slope / (2.0 * PI)).ceil() as usize + 1;
        need.max(self.min_points).max(MIN_GRID_POINTS)
    }

    /// Count needed so that cutoff arguments moving at rate `rate` per unit length are sampled.
    pub fn required_for_cutoffs(&self, len: f64, rate: f64) -> usize {
        (self.points_per_cutoff_unit * len * rate).ceil() as usize + 1
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct GridSpec {
    pub x: Vec<Axis>,
    pub z: Vec<Axis>,
    /// Set when some axis has fewer points than the resolution rule asks for.
    pub under_resolved: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxisDeficit {
    pub axis: String,
    pub have: usize,
    pub need: usize,
}

impl GridSpec {
    pub fn new(x: Vec<Axis>, z: Vec<Axis>) -> Self {
        GridSpec { x, z, under_resolved: false }
    }

    pub fn rows(&self) -> usize {
        self.x.iter().map(|a| a.count).product()
    }

    pub fn cols(&self) -> usize {
        self.z.iter().map(|a| a.count).product()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.x.iter().chain(&self.z).map(|a| a.count).collect()
    }

    pub fn doubled(&self) -> GridSpec {
        GridSpec {
            x: self.x.iter().map(Axis::doubled).collect(),
            z: self.z.iter().map(Axis::doubled).collect(),
            under_resolved: self.under_resolved,
        }
    }

    /// Boxes from the amplitude profiles, counts from the rule.
    pub fn resolved(phi: &MultiPoly, amp: &AmplitudeSpec, lambda: f64, rule: &ResolutionRule) -> GridSpec {
        let need = required_counts(phi, amp, lambda, rule);
        let d = amp.dim();
        let mk = |p: &super::AxisProfile, n: usize| {
            let (lo, hi) = p.interval();
            Axis::new(lo, hi, n)
        };
        let mut x: Vec<Axis> = amp.x.iter().zip(&need[..d]).map(|(p, &n)| mk(p, n)).collect();
        let mut z: Vec<Axis> = amp.z.iter().zip(&need[d..]).map(|(p, &n)| mk(p, n)).collect();
        // Equal boxes share a count so translation structure survives.
        for k in 0..d {
            if x[k].lo == z[k].lo && x[k].hi == z[k].hi {
                let n = x[k].count.max(z[k].count);
                x[k].count = n;
                z[k].count = n;
            }
        }
        GridSpec::new(x, z)
    }

    /// Axes whose counts fall short of the rule.
    pub fn deficits(&self, phi: &MultiPoly, amp: &AmplitudeSpec, lambda: f64, rule: &ResolutionRule) -> Vec<AxisDeficit> {
        let need = required_counts_on(phi, amp, lambda, rule, Some(self));
        let d = self.x.len();
        self.x
            .iter()
            .chain(&self.z)
            .zip(need)
            .enumerate()
            .filter(|(_, (a, n))| a.count < *n)
            .map(|(k, (a, n))| AxisDeficit {
                axis: if k < d { format!("x{}", k + 1) } else { format!("z{}", k - d + 1) },
                have: a.count,
                need: n,
            })
            .collect()
    }
}

/// sup over the support of |∂Φ/∂v| for every variable, sampled on a regular lattice of the box.
pub fn sup_partials(phi: &MultiPoly, amp: &AmplitudeSpec, boxes: &[(f64, f64)]) -> Vec<f64> {
    sup_rates(phi, amp, boxes).0
}

/// Phase partials and the fastest rate of any cutoff argument, per variable, over the support.
fn sup_rates(phi: &MultiPoly, amp: &AmplitudeSpec, boxes: &[(f64, f64)]) -> (Vec<f64>, Vec<f64>) {
    let nv = boxes.len();
    let per_axis: usize = match nv {
        0..=2 => 129,
        3 => 33,
        4 => 17,
        _ => 7,
    };
    let partials: Vec<PolyF64> = (0..nv).map(|i| PolyF64::new(&phi.diff(i))).collect();
    let cut: Vec<PolyF64> = amp.cutoffs.iter().map(|c| PolyF64::new(&c.g)).collect();
    // β_j(s) reads β₀ at 2^{1−j}s at its fastest
    let cut_partials: Vec<(f64, Vec<PolyF64>)> = amp
        .cutoffs
        .iter()
        .map(|c| {
            let f = if c.index == 0 { c.scale } else { c.scale * (1.0 - c.index as f64).exp2() };
            (f, (0..nv).map(|i| PolyF64::new(&c.g.diff(i))).collect())
        })
        .collect();
    let mut sup = vec![0.0f64; nv];
    let mut rate = vec![0.0f64; nv];
    let total = per_axis.pow(nv as u32);
    let mut pt = vec![0.0; nv];
    for flat in 0..total {
        let mut r = flat;
        for k in (0..nv).rev() {
            let i = r % per_axis;
            r /= per_axis;
            let (lo, hi) = boxes[k];
            pt[k] = lo + (hi - lo) * i as f64 / (per_axis - 1) as f64;
        }
        if !amp.cutoffs_nonzero(&cut, &pt) {
            continue;
        }
        for (s, p) in sup.iter_mut().zip(&partials) {
            *s = s.max(p.eval(&pt).abs());
        }
        for (f, dg) in &cut_partials {
            for (r, p) in rate.iter_mut().zip(dg) {
                *r = r.max(f * p.eval(&pt).abs());
            }
        }
    }
    (sup, rate)
}

pub fn required_counts(phi: &MultiPoly, amp: &AmplitudeSpec, lambda: f64, rule: &ResolutionRule) -> Vec<usize> {
    required_counts_on(phi, amp, lambda, rule, None)
}

fn required_counts_on(
    phi: &MultiPoly,
    amp: &AmplitudeSpec,
    lambda: f64,
    rule: &ResolutionRule,
    grid: Option<&GridSpec>,
) -> Vec<usize> {
    let boxes: Vec<(f64, f64)> = match grid {
        Some(g) => g.x.iter().chain(&g.z).map(|a| (a.lo, a.hi)).collect(),
        None => amp.x.iter().chain(&amp.z).map(|p| p.interval()).collect(),
    };
    let (sup, rate) = sup_rates(phi, amp, &boxes);
    boxes
        .iter()
        .zip(sup.iter().zip(rate))
        .map(|(&(lo, hi), (&s, r))| rule.required(lambda, hi - lo, s).max(rule.required_for_cutoffs(hi - lo, r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::AxisProfile;
    use crate::symcore::{parse_poly, var_list};

    #[test]
    fn trapezoid_weights_integrate_linear_exactly() {
        let a = Axis::new(-1.0, 2.0, 17);
        let s: f64 = a.points().iter().zip(a.weights()).map(|(x, w)| (2.0 * x + 1.0) * w).sum();
        assert!((s - 6.0).abs() < 1e-12);
        assert_eq!(a.point(16), 2.0);
    }

    #[test]
    fn counts_grow_linearly_in_lambda() {
        let v = var_list(&["x1", "z1"]);
        let phi = parse_poly("x1*z1", &v).unwrap();
        let amp = AmplitudeSpec::uniform(1, AxisProfile::flat_top(1.0));
        let rule = ResolutionRule::default();
        let g = GridSpec::resolved(&phi, &amp, 1024.0, &rule);
        // 4·1024·2·1/(2π) + 1
        assert_eq!(g.x[0].count, 1305);
        assert_eq!(g.z[0].count, 1305);
        let small = GridSpec::resolved(&phi, &amp, 1.0, &rule);
        assert_eq!(small.x[0].count, 64);
        let mut under = g.clone();
        under.x[0].count = 100;
        let d = under.deficits(&phi, &amp, 1024.0, &rule);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].axis, "x1");
        assert_eq!(d[0].need, 1305);
    }
}
