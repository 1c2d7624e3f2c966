use num_complex::Complex64;

use crate::symcore::{MultiPoly, PolyF64};

/// Compactly supported profile on (−1, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Profile {
    /// exp(−1/(1−u²)).
    Bump,
    /// Equal to one on [−½, ½], smooth transition to zero at |u| = 1.
    FlatTop,
}

fn smoothstep(v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else if v >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / v).exp();
        let b = (-1.0 / (1.0 - v)).exp();
        a / (a + b)
    }
}

impl Profile {
    #[inline]
    pub fn eval(self, u: f64) -> f64 {
        let a = u.abs();
        if a >= 1.0 {
            return 0.0;
        }
        match self {
            Profile::Bump => (-1.0 / (1.0 - a * a)).exp(),
            Profile::FlatTop => 1.0 - smoothstep(2.0 * a - 1.0),
        }
    }
}

/// β₀: flat-top, one on [−½,½], supported in (−1,1).
#[inline]
pub fn beta0(s: f64) -> f64 {
    Profile::FlatTop.eval(s)
}

/// β_j(s) = β₀(2^{−j}s) − β₀(2^{−j+1}s) for j ≥ 1, supported in 2^{j−2} ≤ |s| ≤ 2^j.
#[inline]
pub fn beta(j: u32, s: f64) -> f64 {
    if j == 0 {
        beta0(s)
    } else {
        let a = (-(j as i32) as f64).exp2() * s;
        beta0(a) - beta0(2.0 * a)
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct AxisProfile {
    pub center: f64,
    pub halfwidth: f64,
    pub profile: Profile,
}

impl AxisProfile {
    pub fn new(center: f64, halfwidth: f64, profile: Profile) -> Self {
        AxisProfile { center, halfwidth, profile }
    }

    pub fn flat_top(halfwidth: f64) -> Self {
        Self::new(0.0, halfwidth, Profile::FlatTop)
    }

    pub fn bump(halfwidth: f64) -> Self {
        Self::new(0.0, halfwidth, Profile::Bump)
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.profile.eval((x - self.center) / self.halfwidth)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.center - self.halfwidth, self.center + self.halfwidth)
    }
}

/// Factor β_index(scale · g(x, z)).
#[derive(Clone, Debug, PartialEq)]
pub struct Cutoff {
    pub g: MultiPoly,
    pub scale: f64,
    pub index: u32,
}

impl Cutoff {
    pub fn new(g: MultiPoly, scale: f64, index: u32) -> Self {
        Cutoff { g, scale, index }
    }

    #[inline]
    pub fn apply(&self, g_value: f64) -> f64 {
        beta(self.index, self.scale * g_value)
    }
}

/// σ(x,z) = Π a_k(x_k) Π b_k(z_k) Π β_j(s·g(x,z)) · e^{i m(x,z)}.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeSpec {
    pub x: Vec<AxisProfile>,
    pub z: Vec<AxisProfile>,
    pub cutoffs: Vec<Cutoff>,
    /// Unimodular factor e^{i m}, not scaled by λ.
    pub modulation: Option<MultiPoly>,
}

impl AmplitudeSpec {
    pub fn product(x: Vec<AxisProfile>, z: Vec<AxisProfile>) -> Self {
        AmplitudeSpec { x, z, cutoffs: Vec::new(), modulation: None }
    }

    /// Same profile on every axis of both factors.
    pub fn uniform(d: usize, p: AxisProfile) -> Self {
        Self::product(vec![p.clone(); d], vec![p; d])
    }

    pub fn with_cutoff(mut self, c: Cutoff) -> Self {
        self.cutoffs.push(c);
        self
    }

    pub fn with_modulation(mut self, m: MultiPoly) -> Self {
        self.modulation = Some(m);
        self
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// Pointwise value; `xz` lists x then z coordinates.
    pub fn eval(&self, xz: &[f64]) -> Complex64 {
        let d = self.x.len();
        let mut v = 1.0;
        for (k, p) in self.x.iter().enumerate() {
            v *= p.eval(xz[k]);
        }
        for (k, p) in self.z.iter().enumerate() {
            v *= p.eval(xz[d + k]);
        }
        if v == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        for c in &self.cutoffs {
            v *= c.apply(PolyF64::new(&c.g).eval(xz));
        }
        match &self.modulation {
            Some(m) => Complex64::from_polar(v, m.eval_f64(xz)),
            None => Complex64::new(v, 0.0),
        }
    }

    /// Whether the cutoff factors are nonzero at `xz` (the profile box is taken closed).
    pub fn cutoffs_nonzero(&self, compiled: &[PolyF64], xz: &[f64]) -> bool {
        self.cutoffs
            .iter()
            .zip(compiled)
            .all(|(c, g)| c.apply(g.eval(xz)) != 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_top_shape() {
        assert_eq!(beta0(0.0), 1.0);
        assert_eq!(beta0(0.5), 1.0);
        assert_eq!(beta0(-0.5), 1.0);
        assert_eq!(beta0(1.0), 0.0);
        assert!((beta0(0.75) - 0.5).abs() < 1e-12);
        assert!(beta0(0.9) > 0.0 && beta0(0.9) < 0.5);
    }

    #[test]
    fn dyadic_pieces_sum_to_one() {
        for &s in &[0.3, 0.7, 1.5, 3.0, 9.0, 100.0] {
            let total: f64 = (0..12).map(|j| beta(j, s)).sum();
            assert!((total - 1.0).abs() < 1e-12, "s={s}");
        }
        assert_eq!(beta(1, 0.4), 0.0);
        assert_eq!(beta(1, 2.0), 0.0);
        assert_eq!(beta(2, 0.9), 0.0);
    }

    #[test]
    fn bump_support() {
        let p = AxisProfile::bump(0.5);
        assert_eq!(p.eval(0.5), 0.0);
        assert!((p.eval(0.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(p.interval(), (-0.5, 0.5));
    }
}
