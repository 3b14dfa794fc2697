//! Parser for the textual polynomial / multivector grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ['^' integer]
//! atom   := integer ['/' integer] | x1 | x2 | x3 | d<indices> | '(' expr ')'
//! ```
//!
//! `d<indices>` is the wedge of coordinate vector fields, e.g. `d23` or
//! `d123`; any index order is accepted and sign-corrected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::Rational;
use crate::multivector::wedge_sign;
use crate::poly::{Exponent, Poly, PolyError};

/// A parsed expression: polynomial coefficients keyed by the bitmask of
/// the coordinate fields wedged together (bit `i` is `d_{i+1}`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedExpr {
    pub components: BTreeMap<u8, Poly>,
    pub degree: Option<usize>,
}

type Value = BTreeMap<u8, Poly>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, PolyError> {
    Err(PolyError::Parse { pos, msg: msg.into() })
}

fn add_into(acc: &mut Value, v: Value, negate: bool) {
    for (m, p) in v {
        let p = if negate { -&p } else { p };
        let slot = acc.entry(m).or_default();
        *slot = &*slot + &p;
        if slot.is_zero() {
            acc.remove(&m);
        }
    }
}

fn wedge_values(a: &Value, b: &Value) -> Value {
    let mut out = Value::new();
    for (ma, pa) in a {
        for (mb, pb) in b {
            if let Some(s) = wedge_sign(*ma, *mb) {
                let prod = &(pa * pb) * &Poly::constant(Rational::from_integer(BigInt::from(s)));
                add_into(&mut out, Value::from([(ma | mb, prod)]), false);
            }
        }
    }
    out
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit run parses"))
    }

    fn expr(&mut self) -> Result<Value, PolyError> {
        let mut acc = Value::new();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let t = self.term()?;
        add_into(&mut acc, t, negate);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    add_into(&mut acc, t, false);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    add_into(&mut acc, t, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = wedge_values(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, PolyError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let mut neg = Value::new();
            add_into(&mut neg, self.factor()?, true);
            return Ok(neg);
        }
        let start = self.pos;
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let n: u32 = match u32::try_from(self.integer()?) {
            Ok(n) => n,
            Err(_) => return err(self.pos, "exponent too large"),
        };
        if n == 0 {
            return Ok(Value::from([(0, Poly::one())]));
        }
        if base.keys().any(|&m| m != 0) && n > 1 {
            return err(start, "powers of vector-field symbols are not allowed");
        }
        let mut acc = base.clone();
        for _ in 1..n {
            acc = wedge_values(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, PolyError> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    den = self.integer()?;
                    if den.is_zero() {
                        return err(self.pos, "zero denominator");
                    }
                }
                Ok(Value::from([(0, Poly::constant(Rational::new(num, den)))]))
            }
            Some(b'x') => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(&d @ b'1'..=b'3') => {
                        self.pos += 1;
                        let mut e = [0; 3];
                        e[(d - b'1') as usize] = 1;
                        Ok(Value::from([(0, Poly::monomial(Rational::one(), Exponent(e)))]))
                    }
                    _ => err(start, "unknown variable; expected x1, x2 or x3"),
                }
            }
            Some(b'd') => {
                self.pos += 1;
                let mut v = Value::from([(0u8, Poly::one())]);
                let mut any = false;
                while let Some(&d @ b'1'..=b'3') = self.src.get(self.pos) {
                    self.pos += 1;
                    any = true;
                    let bit = 1u8 << (d - b'1');
                    v = wedge_values(&v, &Value::from([(bit, Poly::one())]));
                }
                if !any {
                    return err(start, "expected indices after 'd'");
                }
                Ok(v)
            }
            Some(_) => err(start, "unexpected character"),
            None => err(start, "unexpected end of input"),
        }
    }
}

pub fn parse_expression(s: &str) -> Result<ParsedExpr, PolyError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let components = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing input");
    }
    let mut degrees = components.keys().map(|m| m.count_ones() as usize);
    let degree = degrees.next();
    if let Some(d) = degree {
        if degrees.any(|e| e != d) {
            return err(0, "terms of different multivector degree");
        }
    }
    Ok(ParsedExpr { components, degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_wedges_with_signs() {
        let e = parse_expression("x3*d13").unwrap();
        assert_eq!(e.degree, Some(2));
        assert_eq!(e.components[&0b101], Poly::x3());
        let e = parse_expression("x3*d31").unwrap();
        assert_eq!(e.components[&0b101], -&Poly::x3());
        let e = parse_expression("d1*d1").unwrap();
        assert!(e.components.is_empty());
        let e = parse_expression("d2*d1 + d12").unwrap();
        assert!(e.components.is_empty());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expression("x1 +").is_err());
        assert!(parse_expression("d12 + x1").is_err());
        assert!(parse_expression("(x1").is_err());
        assert!(parse_expression("1/0").is_err());
        assert!(parse_expression("d1^2").is_err());
        assert!(parse_expression("x1 x2").is_err());
    }
}
