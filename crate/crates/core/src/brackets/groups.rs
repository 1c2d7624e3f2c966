use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::symcore::linalg::det_poly;
use crate::symcore::{rat, var_list, MultiPoly, PolyVectorField, Rational};

use super::{BracketError, CurveFamilySpec};

/// Polynomial group law on ℝ^n with identity at the origin, in exponential-type coordinates.
#[derive(Clone, Debug)]
pub struct GroupModel {
    name: String,
    n: usize,
    /// Components of x·y over the ring (x1..xn, y1..yn).
    mul: Vec<MultiPoly>,
}

fn xy_ring(n: usize) -> Arc<[String]> {
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend((1..=n).map(|i| format!("y{i}")));
    var_list(&names)
}

fn y_ring(n: usize) -> Arc<[String]> {
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    var_list(&names)
}

impl GroupModel {
    pub fn new(name: &str, n: usize, mul: Vec<MultiPoly>) -> Result<Self, BracketError> {
        let ring = xy_ring(n);
        if mul.len() != n || mul.iter().any(|m| m.vars() != &ring) {
            return Err(BracketError::Model(format!(
                "{name}: the law needs {n} components over x1..x{n}, y1..y{n}"
            )));
        }
        Ok(GroupModel {
            name: name.to_string(),
            n,
            mul,
        })
    }

    pub fn abelian(n: usize) -> Self {
        let r = xy_ring(n);
        let mul = (0..n)
            .map(|i| &MultiPoly::var(&r, i) + &MultiPoly::var(&r, n + i))
            .collect();
        GroupModel {
            name: format!("abelian{n}"),
            n,
            mul,
        }
    }

    pub fn heisenberg() -> Self {
        let r = xy_ring(3);
        let v = |i| MultiPoly::var(&r, i);
        let half = rat(1, 2);
        let sympl = &(&v(0) * &v(4)) - &(&v(1) * &v(3));
        let mul = vec![
            &v(0) + &v(3),
            &v(1) + &v(4),
            &(&v(2) + &v(5)) + &sympl.scale(&half),
        ];
        GroupModel {
            name: "heisenberg".into(),
            n: 3,
            mul,
        }
    }

    /// Four-dimensional filiform group with [Y1,Y2] = Y3, [Y1,Y3] = Y4.
    pub fn mizohata() -> Self {
        let r = xy_ring(4);
        let v = |i| MultiPoly::var(&r, i);
        let half = rat(1, 2);
        let s12 = &(&v(0) * &v(5)) - &(&v(1) * &v(4));
        let s13 = &(&v(0) * &v(6)) - &(&v(2) * &v(4));
        let mul = vec![
            &v(0) + &v(4),
            &v(1) + &v(5),
            &(&v(2) + &v(6)) + &s12.scale(&half),
            &(&(&v(3) + &v(7)) + &s13.scale(&half))
                + &(&(&v(0) - &v(4)) * &s12).scale(&rat(1, 12)),
        ];
        GroupModel {
            name: "mizohata".into(),
            n: 4,
            mul,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn multiplication(&self) -> &[MultiPoly] {
        &self.mul
    }

    /// Substitutes polynomial points a, b of a common ring into the law.
    pub fn product(&self, a: &[MultiPoly], b: &[MultiPoly]) -> Result<Vec<MultiPoly>, BracketError> {
        let images: Vec<MultiPoly> = a.iter().chain(b).cloned().collect();
        self.mul
            .iter()
            .map(|m| Ok(m.substitute_all(&images)?))
            .collect()
    }

    /// Identity and associativity as polynomial identities.
    pub fn check_axioms(&self) -> Result<(), BracketError> {
        let n = self.n;
        let names: Vec<String> = ["a", "b", "c"]
            .iter()
            .flat_map(|p| (1..=n).map(move |i| format!("{p}{i}")))
            .collect();
        let r = var_list(&names);
        let pt = |k: usize| -> Vec<MultiPoly> { (0..n).map(|i| MultiPoly::var(&r, k * n + i)).collect() };
        let zero = vec![MultiPoly::zero(&r); n];
        let (a, b, c) = (pt(0), pt(1), pt(2));
        if self.product(&a, &zero)? != a || self.product(&zero, &a)? != a {
            return Err(BracketError::Model(format!("{}: origin is not the identity", self.name)));
        }
        let lhs = self.product(&self.product(&a, &b)?, &c)?;
        let rhs = self.product(&a, &self.product(&b, &c)?)?;
        if lhs != rhs {
            return Err(BracketError::Model(format!("{}: law is not associative", self.name)));
        }
        Ok(())
    }

    /// DR_y: the Jacobian of x ↦ x·y at x = 0, entries over y1..yn.
    pub fn right_translation_differential(&self) -> Vec<Vec<MultiPoly>> {
        let n = self.n;
        let yr = y_ring(n);
        let images: Vec<MultiPoly> = (0..n)
            .map(|_| MultiPoly::zero(&yr))
            .chain((0..n).map(|i| MultiPoly::var(&yr, i)))
            .collect();
        self.mul
            .iter()
            .map(|m| {
                (0..n)
                    .map(|j| m.diff(j).substitute_all(&images).expect("ring sizes match"))
                    .collect()
            })
            .collect()
    }

    /// Ỹ_j(x) = ∂_{y_j}(x·y) at y = 0, over x1..xn.
    pub fn left_invariant_fields(&self) -> Vec<PolyVectorField> {
        let n = self.n;
        let xr: Arc<[String]> = var_list(&(1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>());
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| MultiPoly::var(&xr, i))
            .chain((0..n).map(|_| MultiPoly::zero(&xr)))
            .collect();
        (0..n)
            .map(|j| {
                let c = self
                    .mul
                    .iter()
                    .map(|m| m.diff(n + j).substitute_all(&images).expect("ring sizes match"))
                    .collect();
                PolyVectorField::new(&xr, c).expect("frame")
            })
            .collect()
    }

    /// Family x ↦ x·γ(t)^{-1} for γ(t) = exp(Σ c_i t^i Y_i): X_i = −c_i Ỹ_i.
    /// `coeffs` are polynomials over a parameter ring; the family frame is x1..xn followed by it.
    pub fn translation_family(&self, coeffs: &[MultiPoly]) -> Result<CurveFamilySpec, BracketError> {
        let n = self.n;
        if coeffs.len() != n {
            return Err(BracketError::Argument(format!("{} coefficients for dimension {n}", coeffs.len())));
        }
        let params: Vec<String> = coeffs[0].vars().to_vec();
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.extend(params);
        let frame = var_list(&names);
        let fields = self
            .left_invariant_fields()
            .iter()
            .zip(coeffs)
            .map(|(y, c)| {
                let c = c.embed(&frame)?;
                let mut comps: Vec<MultiPoly> = y
                    .coeffs()
                    .iter()
                    .map(|p| Ok((&p.embed(&frame)? * &c).scale(&-Rational::one())))
                    .collect::<Result<_, BracketError>>()?;
                comps.resize(frame.len(), MultiPoly::zero(&frame));
                Ok(PolyVectorField::new(&frame, comps)?)
            })
            .collect::<Result<_, BracketError>>()?;
        CurveFamilySpec::new(fields, n)
    }
}

/// DR_y for the filiform model, entered from the closed form.
pub fn mizohata_dr() -> Vec<Vec<MultiPoly>> {
    let r = y_ring(4);
    let y = |i| MultiPoly::var(&r, i);
    let z = || MultiPoly::zero(&r);
    let one = || MultiPoly::one(&r);
    vec![
        vec![one(), z(), z(), z()],
        vec![z(), one(), z(), z()],
        vec![y(1).scale(&rat(1, 2)), y(0).scale(&rat(-1, 2)), one(), z()],
        vec![
            &y(2).scale(&rat(1, 2)) - &(&y(0) * &y(1)).scale(&rat(1, 12)),
            y(0).pow(2).scale(&rat(1, 12)),
            y(0).scale(&rat(-1, 2)),
            one(),
        ],
    ]
}

#[derive(Clone, Debug)]
pub struct GRCurve {
    /// G_R(t) components over (t, parameters).
    pub components: Vec<MultiPoly>,
    /// det[G_R, G_R′, …, G_R^{(n−1)}].
    pub wronskian: MultiPoly,
    /// Monic parameter factors dividing the Wronskian.
    pub locus: Vec<MultiPoly>,
    /// Wronskian divided by the locus factors.
    pub residual: MultiPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Independence {
    /// Wronskian reduces to a nonzero constant.
    Everywhere,
    /// Nonzero at t = 0 but nonconstant in t.
    NearBase,
    Degenerate,
}

impl fmt::Display for Independence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Independence::Everywhere => "independent",
            Independence::NearBase => "independent-near-base",
            Independence::Degenerate => "degenerate",
        })
    }
}

impl GRCurve {
    fn param_index(&self, name: &str) -> Result<usize, BracketError> {
        let vars = self.wronskian.vars();
        vars.iter()
            .position(|v| v == name)
            .filter(|&i| i > 0)
            .ok_or_else(|| BracketError::Argument(format!("unknown parameter '{name}'")))
    }

    fn fix(&self, p: &MultiPoly, values: &[(&str, Rational)]) -> Result<MultiPoly, BracketError> {
        let mut q = p.clone();
        for (name, v) in values {
            q = q.partial_eval(self.param_index(name)?, v);
        }
        Ok(q)
    }

    pub fn independence_at(&self, values: &[(&str, Rational)]) -> Result<Independence, BracketError> {
        let w = self.fix(&self.wronskian, values)?;
        Ok(if w.is_zero() || w.partial_eval(0, &Rational::zero()).is_zero() {
            Independence::Degenerate
        } else if w.is_constant() {
            Independence::Everywhere
        } else {
            Independence::NearBase
        })
    }

    /// Locus factors that vanish at the given parameter values.
    pub fn vanishing_factors(&self, values: &[(&str, Rational)]) -> Result<Vec<MultiPoly>, BracketError> {
        let mut out = Vec::new();
        for f in &self.locus {
            if self.fix(f, values)?.is_zero() {
                out.push(f.clone());
            }
        }
        Ok(out)
    }
}

/// G_R(t) = (DR_{γ(t)})^{-1} γ′(t) for a curve γ over (t, parameters) with γ(0) = 0.
/// Components are truncated at t-degree `truncation`.
pub fn group_g_r(model: &GroupModel, curve: &[MultiPoly], truncation: u16) -> Result<GRCurve, BracketError> {
    let n = model.dim();
    if curve.len() != n {
        return Err(BracketError::Argument(format!(
            "curve has {} components, the group has dimension {n}",
            curve.len()
        )));
    }
    let ring = curve[0].vars().clone();
    if ring.first().map(String::as_str) != Some("t") || curve.iter().any(|c| c.vars() != &ring) {
        return Err(BracketError::Argument(
            "curve components must share a ring whose first variable is t".into(),
        ));
    }
    if curve.iter().any(|c| !c.partial_eval(0, &Rational::zero()).is_zero()) {
        return Err(BracketError::Argument("the curve must start at the identity".into()));
    }
    let dr: Vec<Vec<MultiPoly>> = model
        .right_translation_differential()
        .iter()
        .map(|row| row.iter().map(|e| e.substitute_all(curve)).collect())
        .collect::<Result<_, _>>()?;
    for (i, row) in dr.iter().enumerate() {
        if row[i] != MultiPoly::one(&ring) || row[i + 1..].iter().any(|e| !e.is_zero()) {
            return Err(BracketError::Model(format!(
                "{}: right translation differential is not unit lower triangular along the curve",
                model.name()
            )));
        }
    }
    let mut g: Vec<MultiPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let mut gi = curve[i].diff(0);
        for (j, gj) in g.iter().enumerate() {
            gi = &gi - &(&dr[i][j] * gj);
        }
        g.push(gi.truncate_in(0, truncation));
    }
    let mut rows = vec![g.clone()];
    for _ in 1..n {
        let last = rows.last().expect("nonempty");
        let next = last.iter().map(|p| p.diff(0)).collect();
        rows.push(next);
    }
    let wronskian = det_poly(&rows)?;
    let mut candidates: Vec<MultiPoly> = Vec::new();
    for comp in &g {
        for c in comp.coefficients_in(0).values() {
            if !c.is_constant() {
                let m = c.monic();
                if !candidates.contains(&m) {
                    candidates.push(m);
                }
            }
        }
    }
    let mut residual = wronskian.clone();
    let mut locus = Vec::new();
    if !residual.is_zero() {
        for f in candidates {
            let mut hit = false;
            while let Ok(q) = residual.div_exact(&f) {
                residual = q;
                hit = true;
            }
            if hit {
                locus.push(f);
            }
        }
    }
    Ok(GRCurve {
        components: g,
        wronskian,
        locus,
        residual,
    })
}

/// Ring (t, names...) and the curve (t, t², c_3 t³, …) with c_i given as polynomials over it.
pub fn monomial_curve(ring: &Arc<[String]>, coeffs: &[MultiPoly]) -> Vec<MultiPoly> {
    let t = MultiPoly::var(ring, 0);
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * &t.pow(i as u32 + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms() {
        for g in [GroupModel::heisenberg(), GroupModel::mizohata(), GroupModel::abelian(3)] {
            g.check_axioms().unwrap();
        }
    }

    #[test]
    fn dr_at_origin_is_identity() {
        let m = mizohata_dr();
        let zero = vec![Rational::zero(); 4];
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let want = if i == j { Rational::one() } else { Rational::zero() };
                assert_eq!(e.eval(&zero), want);
            }
        }
    }
}
