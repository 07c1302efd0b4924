//! Text form of polynomials, e.g. `3*A[1,2]^2*delta - 1`.

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::polynomial::{Domain, Polynomial};
use super::var::Var;
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Syntax(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].parse().expect("digits"))
    }

    fn variable(&mut self) -> Result<Var> {
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with('δ') {
            self.pos += 'δ'.len_utf8();
            return Ok(Var::DELTA);
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        if self.peek() == Some('[') {
            while let Some(c) = self.peek() {
                self.pos += c.len_utf8();
                if c == ']' {
                    break;
                }
            }
        }
        if self.pos == start {
            return Err(self.err("expected a variable or integer"));
        }
        self.src[start..self.pos].parse::<Var>().map_err(|e| self.err(&e))
    }

    fn factor(&mut self) -> Result<(BigInt, Monomial)> {
        if let Some(n) = self.integer() {
            return Ok((n, Monomial::one()));
        }
        let v = self.variable()?;
        let e = if self.eat('^') {
            let n = self.integer().ok_or_else(|| self.err("expected exponent"))?;
            u32::try_from(n).map_err(|_| self.err("exponent out of range"))?
        } else {
            1
        };
        Ok((BigInt::from(1), Monomial::from_pairs([(v, e)])))
    }

    fn term(&mut self) -> Result<(BigInt, Monomial)> {
        let (mut c, mut m) = self.factor()?;
        while self.eat('*') {
            let (c2, m2) = self.factor()?;
            c *= c2;
            m = m.mul(&m2);
        }
        Ok((c, m))
    }
}

pub(crate) fn parse(domain: Domain, text: &str) -> Result<Polynomial> {
    let mut lx = Lexer { src: text, pos: 0 };
    let mut p = Polynomial::zero(domain);
    let mut sign = if lx.eat('-') {
        -1
    } else {
        lx.eat('+');
        1
    };
    loop {
        let (c, m) = lx.term()?;
        p.add_term(m, c * sign);
        if lx.eat('+') {
            sign = 1;
        } else if lx.eat('-') {
            sign = -1;
        } else {
            break;
        }
    }
    lx.skip_ws();
    if lx.pos != text.len() {
        return Err(lx.err("unexpected trailing input"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_documented_example() {
        let p = parse(Domain::Integers, "3*A[1,2]^2*delta - 1").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "3*A[1,2]^2*delta - 1");
    }

    #[test]
    fn accepts_unicode_delta_and_spacing() {
        let a = parse(Domain::Integers, " δ * A[1,1] + B[1,1]-1").unwrap();
        let b = parse(Domain::Integers, "delta*A[1,1]+B[1,1]-1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse(Domain::Integers, "3*").is_err());
        assert!(parse(Domain::Integers, "A[1,2]^").is_err());
        assert!(parse(Domain::Integers, "Q[1,1]").is_err());
        assert!(parse(Domain::Integers, "A[1,1] B[1,1]").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let var = prop_oneof![
            (0usize..6, 1usize..4, 1usize..4).prop_map(|(l, x, y)| Var::letter(crate::poly::Letter::ALL[l], x, y)),
            Just(Var::DELTA),
            (0usize..3).prop_map(Var::generic),
        ];
        let mono = prop::collection::vec((var, 1u32..4), 0..4).prop_map(Monomial::from_pairs);
        prop::collection::vec((mono, -20i64..20), 0..6)
            .prop_map(|ts| Polynomial::from_terms(Domain::Integers, ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(p in arb_poly()) {
            let back = parse(Domain::Integers, &p.to_string()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
