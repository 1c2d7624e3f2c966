use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::symcore::{int, rat, PolyVectorField, Rational};

use super::BracketError;

pub type Word = Vec<u8>;
pub(crate) type Tensor = BTreeMap<Word, Rational>;

/// Element of the free nilpotent Lie algebra on n weighted generators, truncated at weight `step`.
///
/// Coordinates are taken in the Lyndon basis with standard bracketing, which is a Hall basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSeries {
    weights: Arc<[u32]>,
    step: u32,
    coords: BTreeMap<Word, Rational>,
}

pub(crate) fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization w = uv with v the longest proper Lyndon suffix.
fn standard_split(w: &[u8]) -> (&[u8], &[u8]) {
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (&w[..i], &w[i..]);
        }
    }
    unreachable!("words of length ≥ 2 have a Lyndon suffix")
}

fn word_weight(weights: &[u32], w: &[u8]) -> u32 {
    w.iter().map(|&c| weights[c as usize]).sum()
}

fn tensor_add(a: &mut Tensor, w: &[u8], c: &Rational) {
    if c.is_zero() {
        return;
    }
    let e = a.entry(w.to_vec()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        a.remove(w);
    }
}

pub(crate) fn tensor_mul(a: &Tensor, b: &Tensor, weights: &[u32], step: u32) -> Tensor {
    let mut out = Tensor::new();
    for (u, cu) in a {
        let wu = word_weight(weights, u);
        for (v, cv) in b {
            if wu + word_weight(weights, v) > step {
                continue;
            }
            let mut w = u.clone();
            w.extend_from_slice(v);
            tensor_add(&mut out, &w, &(cu * cv));
        }
    }
    out
}

pub(crate) fn tensor_commutator(a: &Tensor, b: &Tensor, weights: &[u32], step: u32) -> Tensor {
    let mut out = tensor_mul(a, b, weights, step);
    for (w, c) in tensor_mul(b, a, weights, step) {
        tensor_add(&mut out, &w, &-c);
    }
    out
}

/// Tensor expansion of the standard bracketing of a Lyndon word.
pub(crate) fn lyndon_tensor(w: &[u8]) -> Tensor {
    if w.len() == 1 {
        return Tensor::from([(w.to_vec(), Rational::one())]);
    }
    let (u, v) = standard_split(w);
    let (pu, pv) = (lyndon_tensor(u), lyndon_tensor(v));
    // no truncation needed: the product has exactly the weight of w
    let all = vec![0; 256];
    tensor_commutator(&pu, &pv, &all, u32::MAX)
}

/// All Lyndon words over `weights.len()` letters with weight at most `step`, by Duval's algorithm.
pub fn lyndon_basis(weights: &[u32], step: u32) -> Vec<Word> {
    let n = weights.len() as u8;
    let min_w = weights.iter().copied().min().unwrap_or(1).max(1);
    let max_len = (step / min_w) as usize;
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if word_weight(weights, &w) <= step {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

impl LieSeries {
    pub fn zero(weights: &[u32], step: u32) -> Self {
        LieSeries {
            weights: weights.into(),
            step,
            coords: BTreeMap::new(),
        }
    }

    /// Generator i (0-based) of the algebra with the given generator weights.
    pub fn generator(weights: &[u32], step: u32, i: usize) -> Result<Self, BracketError> {
        if i >= weights.len() {
            return Err(BracketError::Argument(format!(
                "generator {i} out of range for {} generators",
                weights.len()
            )));
        }
        let mut s = Self::zero(weights, step);
        if weights[i] <= step {
            s.coords.insert(vec![i as u8], Rational::one());
        }
        Ok(s)
    }

    /// The n unit-weight generators of the free step-s nilpotent algebra.
    pub fn generators(n: usize, step: u32) -> Vec<Self> {
        let w = vec![1; n];
        (0..n)
            .map(|i| Self::generator(&w, step, i).expect("in range"))
            .collect()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn coords(&self) -> &BTreeMap<Word, Rational> {
        &self.coords
    }

    pub fn coord(&self, w: &[u8]) -> Rational {
        self.coords.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn check_same(&self, o: &LieSeries) -> Result<(), BracketError> {
        if self.weights != o.weights || self.step != o.step {
            return Err(BracketError::Argument(
                "series live in different algebras".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn to_tensor(&self) -> Tensor {
        let mut t = Tensor::new();
        for (w, c) in &self.coords {
            for (u, cu) in lyndon_tensor(w) {
                tensor_add(&mut t, &u, &(c * cu));
            }
        }
        t
    }

    /// Lyndon coordinates of a Lie element given in the tensor algebra.
    pub(crate) fn from_tensor(weights: &[u32], step: u32, mut t: Tensor) -> Result<Self, BracketError> {
        t.retain(|w, _| word_weight(weights, w) <= step);
        let mut coords = BTreeMap::new();
        while let Some(w) = t.keys().min_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b))).cloned() {
            if !is_lyndon(&w) {
                return Err(BracketError::NotLie(format!(
                    "leading word {w:?} is not a Lyndon word"
                )));
            }
            let c = t[&w].clone();
            for (u, cu) in lyndon_tensor(&w) {
                tensor_add(&mut t, &u, &-(&c * cu));
            }
            coords.insert(w, c);
        }
        Ok(LieSeries {
            weights: weights.into(),
            step,
            coords,
        })
    }

    pub fn checked_add(&self, o: &LieSeries) -> Result<LieSeries, BracketError> {
        self.check_same(o)?;
        let mut r = self.clone();
        for (w, c) in &o.coords {
            let e = r.coords.entry(w.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                r.coords.remove(w);
            }
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &LieSeries) -> Result<LieSeries, BracketError> {
        self.checked_add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LieSeries {
        let mut r = self.clone();
        if c.is_zero() {
            r.coords.clear();
            return r;
        }
        for v in r.coords.values_mut() {
            *v *= c;
        }
        r
    }

    pub fn bracket(&self, o: &LieSeries) -> Result<LieSeries, BracketError> {
        self.check_same(o)?;
        let t = tensor_commutator(&self.to_tensor(), &o.to_tensor(), &self.weights, self.step);
        Self::from_tensor(&self.weights, self.step, t)
    }

    /// Part of exact weight w.
    pub fn weight_component(&self, w: u32) -> LieSeries {
        let mut r = self.clone();
        r.coords.retain(|k, _| word_weight(&self.weights, k) == w);
        r
    }

    /// Truncates to a lower step.
    pub fn truncate(&self, step: u32) -> LieSeries {
        let mut r = self.clone();
        r.step = step.min(self.step);
        r.coords.retain(|k, _| word_weight(&self.weights, k) <= r.step);
        r
    }

    /// Realizes the series with concrete vector fields substituted for the generators.
    pub fn evaluate(&self, fields: &[PolyVectorField]) -> Result<PolyVectorField, BracketError> {
        if fields.len() != self.weights.len() {
            return Err(BracketError::Argument(format!(
                "{} fields for {} generators",
                fields.len(),
                self.weights.len()
            )));
        }
        let mut acc = PolyVectorField::zero(fields[0].frame());
        for (w, c) in &self.coords {
            let f = eval_word(w, fields)?;
            acc = acc.checked_add(&f.scale(c))?;
        }
        Ok(acc)
    }
}

fn eval_word(w: &[u8], fields: &[PolyVectorField]) -> Result<PolyVectorField, BracketError> {
    if w.len() == 1 {
        return Ok(fields[w[0] as usize].clone());
    }
    let (u, v) = standard_split(w);
    Ok(eval_word(u, fields)?.bracket(&eval_word(v, fields)?)?)
}

/// "[X1,[X1,X2]]" for the standard bracketing of a Lyndon word (letters printed 1-based).
pub fn bracket_expr(w: &[u8]) -> String {
    if w.len() == 1 {
        return format!("X{}", w[0] + 1);
    }
    let (u, v) = standard_split(w);
    format!("[{},{}]", bracket_expr(u), bracket_expr(v))
}

impl fmt::Display for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Word> = self.coords.keys().collect();
        keys.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
        for (k, w) in keys.into_iter().enumerate() {
            let c = &self.coords[w];
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(&bracket_expr(w))?;
        }
        Ok(())
    }
}

/// Right-nested coefficients c̃_J of ad(C_{j1})…ad(C_{jm})[a,b], C_1 = a, C_2 = b, through total degree 5.
pub const BCH_TABLE: &[(&[u8], i64, i64)] = &[
    (&[], 1, 2),
    (&[1], 1, 12),
    (&[2], -1, 12),
    (&[1, 2], -1, 48),
    (&[2, 1], -1, 48),
    (&[1, 1, 1], -1, 720),
    (&[2, 2, 2], 1, 720),
    (&[1, 2, 2], -1, 360),
    (&[2, 1, 1], 1, 360),
    (&[2, 1, 2], 1, 120),
    (&[1, 2, 1], -1, 120),
];

pub const BCH_MAX_STEP: u32 = 5;

/// log(e^a e^b) (the flow exp(b)∘exp(a)), truncated at `step`.
pub fn bch(a: &LieSeries, b: &LieSeries, step: u32) -> Result<LieSeries, BracketError> {
    if step > BCH_MAX_STEP {
        return Err(BracketError::Capability(format!(
            "Campbell-Hausdorff table stops at step {BCH_MAX_STEP}, asked for {step}"
        )));
    }
    a.check_same(b)?;
    let a = a.truncate(step);
    let b = b.truncate(step);
    let ab = a.bracket(&b)?;
    let mut out = a.checked_add(&b)?;
    for (j, num, den) in BCH_TABLE {
        let mut term = ab.clone();
        for &c in j.iter().rev() {
            let op = if c == 1 { &a } else { &b };
            term = op.bracket(&term)?;
            if term.is_zero() {
                break;
            }
        }
        out = out.checked_add(&term.scale(&rat(*num, *den)))?;
    }
    Ok(out)
}

/// Exact coefficient of s in a polynomial sampled at s = 0, 1, …, m.
pub(crate) fn linear_coefficient(samples: &[LieSeries]) -> Result<LieSeries, BracketError> {
    let m = samples.len();
    let s: Vec<Rational> = (0..m).map(|k| int(k as i64)).collect();
    let mut out = samples[0].scale(&Rational::zero());
    for k in 0..m {
        // L_k'(0)
        let dk = if k == 0 {
            (1..m).fold(Rational::zero(), |acc, j| acc - Rational::one() / &s[j])
        } else {
            let mut num = Rational::one();
            let mut den = Rational::one();
            for j in 0..m {
                if j == k {
                    continue;
                }
                den *= &s[k] - &s[j];
                if j != 0 {
                    num *= -&s[j];
                }
            }
            num / den
        };
        out = out.checked_add(&samples[k].scale(&dk))?;
    }
    Ok(out)
}
