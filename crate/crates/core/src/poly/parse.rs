//! Text form of polynomials: `c*x^e*y - 3/2*z + 1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::ring::{Polynomial, Ring};
use super::PolyError;
use crate::linalg::Rational;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier")
    }
}

pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial, PolyError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(cur.err("empty polynomial")),
            None => break,
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                negative = true;
                cur.pos += 1;
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.err(format!("unexpected '{}'", c as char))),
        }
        first = false;
        let mut coeff = Rational::one();
        let mut mono = Monomial::one();
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = cur.digits()?;
                    let den = if cur.peek() == Some(b'/') {
                        cur.pos += 1;
                        cur.digits()?
                    } else {
                        BigInt::one()
                    };
                    if den.is_zero() {
                        return Err(cur.err("zero denominator"));
                    }
                    coeff *= Rational::new(num, den);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let at = cur.pos;
                    let name = cur.ident().to_string();
                    let var = ring.index_of(&name).ok_or(PolyError::Parse {
                        pos: at,
                        msg: format!("unknown variable '{name}'"),
                    })?;
                    let mut e: u16 = 1;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        let d = cur.digits()?;
                        e = u16::try_from(d).map_err(|_| cur.err("exponent too large"))?;
                    }
                    mono = mono.mul(&Monomial::var_pow(var, e));
                }
                _ => return Err(cur.err("expected a number or a variable")),
            }
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
            } else {
                break;
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((mono, coeff));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    #[test]
    fn parses_and_prints_back() {
        let r = Ring::new(["x", "y", "z"], MonomialOrder::GRevLex).unwrap();
        for text in ["x^2-3/2*y", "0", "-5", "x*y*z+x-1", "2*x^3*y-y^2+1/7"] {
            let p = parse_polynomial(&r, text).unwrap();
            assert_eq!(p.to_string(), text);
        }
        let p = parse_polynomial(&r, " 2 * x * x + 3 - 3 ").unwrap();
        assert_eq!(p.to_string(), "2*x^2");
    }

    #[test]
    fn rejects_garbage() {
        let r = Ring::new(["x"], MonomialOrder::GRevLex).unwrap();
        for bad in ["", "x +", "w", "x^", "1/0", "x y"] {
            assert!(parse_polynomial(&r, bad).is_err(), "{bad}");
        }
    }
}
