use std::sync::Arc;

use num_bigint::BigInt;

use super::poly::{index_of, MultiPoly};
use super::rational::Rational;
use super::SymError;

/// Parses a polynomial string such as `x1*z1^3/3 - (x1-z1)^2` over the given variables.
///
/// Division is only allowed by constants.
pub fn parse_poly(src: &str, vars: &Arc<[String]>) -> Result<MultiPoly, SymError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        src,
        toks,
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, SymError> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(SymError::Parse {
                input: src.to_string(),
                reason: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a Arc<[String]>,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> SymError {
        SymError::Parse {
            input: self.src.to_string(),
            reason: format!("{reason} (token {})", self.pos),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, SymError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, SymError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(self.err("division only by nonzero constants"));
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / d.constant_term()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, SymError> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MultiPoly, SymError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(self.err("exponent must be a nonnegative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, SymError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = index_of(self.vars, &name)?;
                Ok(MultiPoly::var(self.vars, i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, a variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::var_list;
    use super::super::rational::{int, rat};
    use super::*;

    #[test]
    fn parses_inline_phase() {
        let v = var_list(&["x1", "z1"]);
        let p = parse_poly("x1*z1^3/3", &v).unwrap();
        assert_eq!(p, MultiPoly::monomial(&v, vec![1, 3], rat(1, 3)));
    }

    #[test]
    fn parses_binomials_and_signs() {
        let v = var_list(&["x1", "z1"]);
        let p = parse_poly("-(x1 - z1)^2 + 2", &v).unwrap();
        assert_eq!(p.eval(&[int(3), int(1)]), int(-2));
    }

    #[test]
    fn rejects_bad_input() {
        let v = var_list(&["x1"]);
        assert!(parse_poly("x2", &v).is_err());
        assert!(parse_poly("x1/x1", &v).is_err());
        assert!(parse_poly("x1^", &v).is_err());
        assert!(parse_poly("(x1", &v).is_err());
        assert!(parse_poly("x1 $", &v).is_err());
    }
}
