use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SymError;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge operands: scale both down by a common power of two
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Parses `p`, `-p`, `p/q` with optional surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational, SymError> {
    let t = s.trim();
    let bad = || SymError::Parse {
        input: s.to_string(),
        reason: "expected an integer or a fraction p/q".into(),
    };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(SymError::Parse {
            input: s.to_string(),
            reason: "zero denominator".into(),
        });
    }
    Ok(BigRational::new(n, d))
}

/// Exact rational for a dyadic-friendly float; only used to lift small test constants.
pub fn from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let q = rat(6, -8);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(4));
        assert_eq!(q.to_string(), "-3/4");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-1/6").unwrap(), rat(-1, 6));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(5), int(120));
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(to_f64(&rat(1, 3)), 1.0 / 3.0);
    }
}
