use std::fmt;
use std::sync::Arc;

use super::poly::MultiPoly;
use super::rational::Rational;
use super::SymError;

/// First-order differential operator Σ c_i ∂/∂x_i with polynomial coefficients.
///
/// The frame is the coefficient ring's variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    frame: Arc<[String]>,
    coeffs: Vec<MultiPoly>,
}

impl PolyVectorField {
    pub fn new(frame: &Arc<[String]>, coeffs: Vec<MultiPoly>) -> Result<Self, SymError> {
        if coeffs.len() != frame.len() {
            return Err(SymError::Argument(format!(
                "vector field needs {} coefficients, got {}",
                frame.len(),
                coeffs.len()
            )));
        }
        for c in &coeffs {
            if c.vars() != frame {
                return Err(SymError::VariableMismatch {
                    left: frame.to_vec(),
                    right: c.vars().to_vec(),
                });
            }
        }
        Ok(PolyVectorField {
            frame: frame.clone(),
            coeffs,
        })
    }

    pub fn zero(frame: &Arc<[String]>) -> Self {
        PolyVectorField {
            frame: frame.clone(),
            coeffs: vec![MultiPoly::zero(frame); frame.len()],
        }
    }

    /// ∂/∂x_i.
    pub fn coordinate(frame: &Arc<[String]>, i: usize) -> Self {
        let mut v = Self::zero(frame);
        v.coeffs[i] = MultiPoly::one(frame);
        v
    }

    pub fn frame(&self) -> &Arc<[String]> {
        &self.frame
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &MultiPoly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly, SymError> {
        if p.vars() != &self.frame {
            return Err(SymError::VariableMismatch {
                left: self.frame.to_vec(),
                right: p.vars().to_vec(),
            });
        }
        let mut acc = MultiPoly::zero(&self.frame);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() || !p.depends_on(i) {
                continue;
            }
            acc = &acc + &(c * &p.diff(i));
        }
        Ok(acc)
    }

    pub fn apply_n(&self, p: &MultiPoly, k: u32) -> Result<MultiPoly, SymError> {
        let mut q = p.clone();
        for _ in 0..k {
            q = self.apply(&q)?;
        }
        Ok(q)
    }

    /// [V,W] with [V,W]p = V(Wp) − W(Vp).
    pub fn bracket(&self, w: &PolyVectorField) -> Result<PolyVectorField, SymError> {
        self.check_frame(w)?;
        let mut coeffs = Vec::with_capacity(self.frame.len());
        for i in 0..self.frame.len() {
            let a = self.apply(&w.coeffs[i])?;
            let b = w.apply(&self.coeffs[i])?;
            coeffs.push(&a - &b);
        }
        Ok(PolyVectorField {
            frame: self.frame.clone(),
            coeffs,
        })
    }

    fn check_frame(&self, w: &PolyVectorField) -> Result<(), SymError> {
        if self.frame == w.frame {
            Ok(())
        } else {
            Err(SymError::VariableMismatch {
                left: self.frame.to_vec(),
                right: w.frame.to_vec(),
            })
        }
    }

    pub fn checked_add(&self, w: &PolyVectorField) -> Result<PolyVectorField, SymError> {
        self.check_frame(w)?;
        Ok(PolyVectorField {
            frame: self.frame.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&w.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField {
            frame: self.frame.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> Result<PolyVectorField, SymError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(f))
            .collect::<Result<_, _>>()?;
        Ok(PolyVectorField {
            frame: self.frame.clone(),
            coeffs,
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }

    /// Pairing ⟨ω, V⟩ with a one-form given by its coefficients.
    pub fn pair(&self, form: &[MultiPoly]) -> Result<MultiPoly, SymError> {
        if form.len() != self.coeffs.len() {
            return Err(SymError::Argument("one-form length differs from frame".into()));
        }
        let mut acc = MultiPoly::zero(&self.frame);
        for (a, w) in self.coeffs.iter().zip(form) {
            acc = &acc + &a.checked_mul(w)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(self.frame.iter()) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*d/d{name}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::var_list;
    use super::super::rational::{int, rat};
    use super::*;

    #[test]
    fn coordinate_fields_commute() {
        let v = var_list(&["x", "y"]);
        let dx = PolyVectorField::coordinate(&v, 0);
        let dy = PolyVectorField::coordinate(&v, 1);
        assert!(dx.bracket(&dy).unwrap().is_zero());
    }

    #[test]
    fn rotation_generators() {
        let v = var_list(&["x", "y"]);
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let z = MultiPoly::zero(&v);
        let a = PolyVectorField::new(&v, vec![z.clone(), x.clone()]).unwrap();
        let b = PolyVectorField::new(&v, vec![y.clone(), z.clone()]).unwrap();
        let expect = PolyVectorField::new(&v, vec![x, -&y]).unwrap();
        assert_eq!(a.bracket(&b).unwrap(), expect);
    }

    #[test]
    fn morin_normal_form_derivatives() {
        let v = var_list(&["t1", "t2"]);
        let t1 = MultiPoly::var(&v, 0);
        let t2 = MultiPoly::var(&v, 1);
        let h = &(&t1 * &t2) + &t2.pow(3);
        let d = PolyVectorField::coordinate(&v, 1);
        let origin = [int(0), int(0)];
        assert_eq!(d.apply(&h).unwrap().eval(&origin), int(0));
        assert_eq!(d.apply(&h).unwrap().partial_eval(1, &int(0)), t1);
        assert_eq!(d.apply_n(&h, 2).unwrap().eval(&origin), int(0));
        assert_eq!(d.apply_n(&h, 3).unwrap().eval(&origin), int(6));
    }

    #[test]
    fn frame_mismatch_is_structural() {
        let a = PolyVectorField::coordinate(&var_list(&["x"]), 0);
        let b = PolyVectorField::coordinate(&var_list(&["y"]), 0);
        assert!(a.bracket(&b).is_err());
        let p = MultiPoly::var(&var_list(&["y"]), 0);
        assert!(a.apply(&p).is_err());
        assert_eq!(a.scale(&rat(1, 2)).coeff(0).constant_term(), rat(1, 2));
    }
}
