use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{int, to_f64, Rational};
use super::SymError;

pub type Exponent = Vec<u16>;

/// Exact multivariate polynomial with rational coefficients over a named variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponent, Rational>,
}

pub fn var_list<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

impl MultiPoly {
    pub fn zero(vars: &Arc<[String]>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<[String]>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<[String]>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<[String]>, i: usize) -> Self {
        assert!(i < vars.len(), "variable index {i} out of range");
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn var_named(vars: &Arc<[String]>, name: &str) -> Result<Self, SymError> {
        let i = index_of(vars, name)?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Arc<[String]>, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(
        vars: &Arc<[String]>,
        terms: I,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.nvars()])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SymError> {
        index_of(&self.vars, name)
    }

    fn check_same(&self, other: &MultiPoly) -> Result<(), SymError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(SymError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, SymError> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, SymError> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, SymError> {
        self.check_same(other)?;
        let mut r = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars(), "variable index {i} out of range");
        let mut r = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                r.add_term(f, c * int(e[i] as i64));
            }
        }
        r
    }

    pub fn diff_named(&self, name: &str) -> Result<MultiPoly, SymError> {
        Ok(self.diff(self.index_of(name)?))
    }

    pub fn diff_n(&self, i: usize, k: u32) -> MultiPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.diff(i);
        }
        p
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars()).map(|i| self.diff(i)).collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "point dimension mismatch");
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(self.nvars());
        for (i, x) in point.iter().enumerate() {
            let maxd = self.terms.keys().map(|e| e[i]).max().unwrap_or(0) as usize;
            let mut v = Vec::with_capacity(maxd + 1);
            v.push(Rational::one());
            for k in 1..=maxd {
                let next = &v[k - 1] * x;
                v.push(next);
            }
            powers.push(v);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars(), "point dimension mismatch");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = to_f64(c);
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        t *= point[i].powi(k as i32);
                    }
                }
                t
            })
            .sum()
    }

    pub fn gradient_at(&self, point: &[Rational]) -> Vec<Rational> {
        (0..self.nvars()).map(|i| self.diff(i).eval(point)).collect()
    }

    /// Sets variable `i` to a constant; the variable list is kept.
    pub fn partial_eval(&self, i: usize, value: &Rational) -> MultiPoly {
        let mut r = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i];
            f[i] = 0;
            let mut t = c.clone();
            for _ in 0..k {
                t *= value;
            }
            r.add_term(f, t);
        }
        r
    }

    /// Substitutes every variable by a polynomial of a common target ring.
    pub fn substitute_all(&self, images: &[MultiPoly]) -> Result<MultiPoly, SymError> {
        if images.len() != self.nvars() {
            return Err(SymError::Argument(format!(
                "substitution needs {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        for p in images {
            if p.vars != target {
                return Err(SymError::VariableMismatch {
                    left: target.to_vec(),
                    right: p.vars.to_vec(),
                });
            }
        }
        let mut cache: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&target), p.clone()])
            .collect();
        let mut r = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            r = &r + &t;
        }
        Ok(r)
    }

    /// Replaces variable `i` by `q` (same ring).
    pub fn compose(&self, i: usize, q: &MultiPoly) -> Result<MultiPoly, SymError> {
        self.check_same(q)?;
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|j| {
                if j == i {
                    q.clone()
                } else {
                    MultiPoly::var(&self.vars, j)
                }
            })
            .collect();
        self.substitute_all(&images)
    }

    /// p(x + shift).
    pub fn translate(&self, shift: &[Rational]) -> MultiPoly {
        assert_eq!(shift.len(), self.nvars());
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|j| {
                &MultiPoly::var(&self.vars, j) + &MultiPoly::constant(&self.vars, shift[j].clone())
            })
            .collect();
        self.substitute_all(&images).expect("same ring")
    }

    /// Re-expresses the polynomial over a ring containing all of its variables (matched by name).
    pub fn embed(&self, target: &Arc<[String]>) -> Result<MultiPoly, SymError> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|n| index_of(target, n))
            .collect::<Result<_, _>>()?;
        let mut r = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut f = vec![0u16; target.len()];
            for (i, &k) in e.iter().enumerate() {
                f[map[i]] += k;
            }
            r.add_term(f, c.clone());
        }
        Ok(r)
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Coefficients with respect to variable `i`: p = Σ_k c_k · x_i^k.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u16, MultiPoly> {
        let mut out: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i];
            f[i] = 0;
            out.entry(k)
                .or_insert_with(|| MultiPoly::zero(&self.vars))
                .add_term(f, c.clone());
        }
        out
    }

    /// Drops every term whose degree in variable `i` exceeds `max`.
    pub fn truncate_in(&self, i: usize, max: u16) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Leading term in lexicographic order (first variable most significant).
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`; fails unless `d` divides `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly, SymError> {
        self.check_same(d)?;
        let (ld, lc) = match d.leading_term() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(SymError::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((le, lcoef)) = rem.leading_term() {
            if !le.iter().zip(&ld).all(|(a, b)| a >= b) {
                return Err(SymError::NotDivisible);
            }
            let e: Exponent = le.iter().zip(&ld).map(|(a, b)| a - b).collect();
            let c = lcoef / &lc;
            let t = MultiPoly::monomial(&self.vars, e, c);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    pub fn divides(&self, p: &MultiPoly) -> bool {
        p.div_exact(self).is_ok()
    }

    /// Content-free normalization: leading coefficient (lex) made equal to one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&(Rational::one() / c)),
            None => self.clone(),
        }
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn fmt_monomial(&self, e: &[u16]) -> String {
        let mut parts = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], k)),
            }
        }
        parts.join("*")
    }
}

pub(crate) fn index_of(vars: &[String], name: &str) -> Result<usize, SymError> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| SymError::UnknownVariable(name.to_string()))
}

impl fmt::Display for MultiPoly {
    /// Graded order, highest degree first; stable across runs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Exponent, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|&k| k as u32).sum();
            let db: u32 = b.0.iter().map(|&k| k as u32).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (n, (e, c)) in ordered.into_iter().enumerate() {
            let mono = self.fmt_monomial(e);
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial variable lists differ")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial variable lists differ")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial variable lists differ")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Precompiled floating-point evaluator for hot loops.
#[derive(Clone, Debug)]
pub struct PolyF64 {
    nvars: usize,
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl PolyF64 {
    pub fn new(p: &MultiPoly) -> Self {
        PolyF64 {
            nvars: p.nvars(),
            terms: p
                .terms()
                .iter()
                .map(|(e, c)| {
                    let factors = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (i, k as i32))
                        .collect();
                    (to_f64(c), factors)
                })
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, k) in factors {
                t *= x[i].powi(k);
            }
            acc += t;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn ring(names: &[&str]) -> Arc<[String]> {
        var_list(names)
    }

    #[test]
    fn power_rule() {
        let v = ring(&["t"]);
        let t = MultiPoly::var(&v, 0);
        let p = t.pow(3).scale(&rat(1, 3));
        assert_eq!(p.diff(0), t.pow(2));
    }

    #[test]
    fn difference_of_squares() {
        let v = ring(&["x", "y"]);
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        assert_eq!(&(&x + &y) * &(&x - &y), &x.pow(2) - &y.pow(2));
    }

    #[test]
    fn mixed_partial_of_scaled_monomial() {
        let v = ring(&["x", "y"]);
        let p = MultiPoly::monomial(&v, vec![3, 2], rat(1, 6));
        assert_eq!(p.diff(0).diff(1), MultiPoly::monomial(&v, vec![2, 1], int(1)));
    }

    #[test]
    fn mismatched_rings_error() {
        let a = MultiPoly::var(&ring(&["x"]), 0);
        let b = MultiPoly::var(&ring(&["y"]), 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(SymError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let v = ring(&["x", "y"]);
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let d = &x - &y;
        let q = &(&x * &y) + &MultiPoly::constant(&v, int(3));
        let p = &d * &q;
        assert_eq!(p.div_exact(&d).unwrap(), q);
        assert!(matches!(
            (&p + &x).div_exact(&d),
            Err(SymError::NotDivisible)
        ));
    }

    #[test]
    fn translation_and_substitution() {
        let v = ring(&["x", "y"]);
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let p = &x * &y;
        let q = p.translate(&[int(1), int(-2)]);
        assert_eq!(q.eval(&[int(0), int(0)]), int(-2));
        let w = ring(&["s"]);
        let s = MultiPoly::var(&w, 0);
        let r = p.substitute_all(&[s.clone(), s.pow(2)]).unwrap();
        assert_eq!(r, s.pow(3));
    }

    #[test]
    fn display_is_canonical() {
        let v = ring(&["a", "b"]);
        let a = MultiPoly::var(&v, 0);
        let b = MultiPoly::var(&v, 1);
        let p = &(&a + &b.scale(&int(4))) + &MultiPoly::constant(&v, rat(1, 6));
        assert_eq!(p.to_string(), "a + 4*b + 1/6");
        assert_eq!((-&a).to_string(), "-a");
    }

    #[test]
    fn f64_evaluator_matches_exact() {
        let v = ring(&["x", "z"]);
        let x = MultiPoly::var(&v, 0);
        let z = MultiPoly::var(&v, 1);
        let p = &(&x - &z).pow(4) + &x.scale(&rat(1, 3));
        let f = PolyF64::new(&p);
        let exact = to_f64(&p.eval(&[rat(1, 4), rat(-1, 2)]));
        assert!((f.eval(&[0.25, -0.5]) - exact).abs() < 1e-14);
    }
}
