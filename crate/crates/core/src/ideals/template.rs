use num_bigint::BigInt;

use super::DeltaSpec;
use crate::biquandle::Biquandle;
use crate::error::{Error, Result};
use crate::poly::{Domain, Letter, Monomial, Polynomial, Var};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Slot {
    X,
    Y,
    Z,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Sub {
    Plain(Slot),
    Circ(Slot, Slot),
    Star(Slot, Slot),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    coeff: i64,
    delta: u32,
    factors: Vec<(Letter, Sub, Sub)>,
}

/// A generator with symbolic subscripts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    terms: Vec<Term>,
}

fn slot(c: char) -> Result<Slot> {
    match c {
        'x' => Ok(Slot::X),
        'y' => Ok(Slot::Y),
        'z' => Ok(Slot::Z),
        _ => Err(Error::Syntax(format!("bad subscript variable `{c}`"))),
    }
}

fn sub(s: &str) -> Result<Sub> {
    let c: Vec<char> = s.trim().chars().collect();
    match c.as_slice() {
        [a] => Ok(Sub::Plain(slot(*a)?)),
        [a, 'o', b] => Ok(Sub::Circ(slot(*a)?, slot(*b)?)),
        [a, '*', b] => Ok(Sub::Star(slot(*a)?, slot(*b)?)),
        _ => Err(Error::Syntax(format!("bad subscript `{s}`"))),
    }
}

impl Template {
    pub fn parse(text: &str) -> Result<Template> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut cur: Option<Term> = None;
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                ' ' => {}
                '+' | '-' => {
                    if let Some(t) = cur.take() {
                        terms.push(t);
                    }
                    sign = if c == '-' { -1 } else { 1 };
                }
                'd' => cur.get_or_insert(Term { coeff: sign, delta: 0, factors: vec![] }).delta += 1,
                '0'..='9' => {
                    let mut n = c.to_digit(10).unwrap() as i64;
                    while let Some(d) = chars.peek().and_then(|d| d.to_digit(10)) {
                        n = n * 10 + d as i64;
                        chars.next();
                    }
                    cur.get_or_insert(Term { coeff: sign, delta: 0, factors: vec![] }).coeff *= n;
                }
                'A'..='F' => {
                    let letter = Letter::from_char(c).unwrap();
                    if chars.next() != Some('[') {
                        return Err(Error::Syntax(format!("expected `[` after {c}")));
                    }
                    let body: String = chars.by_ref().take_while(|&ch| ch != ']').collect();
                    let (a, b) = body.split_once(',').ok_or_else(|| Error::Syntax(format!("bad subscripts `{body}`")))?;
                    cur.get_or_insert(Term { coeff: sign, delta: 0, factors: vec![] }).factors.push((letter, sub(a)?, sub(b)?));
                }
                _ => return Err(Error::Syntax(format!("unexpected `{c}` in template"))),
            }
        }
        if let Some(t) = cur.take() {
            terms.push(t);
        }
        Ok(Template { terms })
    }

    pub fn instantiate(&self, b: &Biquandle, x: usize, y: usize, z: usize, delta: DeltaSpec) -> Polynomial {
        let val = |s: Slot| match s {
            Slot::X => x,
            Slot::Y => y,
            Slot::Z => z,
        };
        let eval = |s: Sub| match s {
            Sub::Plain(a) => val(a),
            Sub::Circ(a, c) => b.circ(val(a), val(c)),
            Sub::Star(a, c) => b.star(val(a), val(c)),
        };
        let mut p = Polynomial::zero(Domain::Integers);
        for t in &self.terms {
            let mut mono = Monomial::from_pairs(t.factors.iter().map(|&(l, s1, s2)| (Var::letter(l, eval(s1), eval(s2)), 1)));
            let mut c = BigInt::from(t.coeff);
            match delta {
                DeltaSpec::Symbolic => mono = mono.mul(&Monomial::from_pairs([(Var::DELTA, t.delta)])),
                DeltaSpec::Value(v) => c *= BigInt::from(v).pow(t.delta),
            }
            p.add_term(mono, c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_instantiates() {
        let t = Template::parse("dA[x,x] + B[x,x] - 1").unwrap();
        let p = t.instantiate(&Biquandle::x1(), 2, 2, 2, DeltaSpec::Symbolic);
        assert_eq!(p.to_string(), "A[2,2]*delta + B[2,2] - 1");
        let t = Template::parse("A[xoy,z*y]").unwrap();
        // X1: 2∘1 = 3, 3∗1 = 3
        let p = t.instantiate(&Biquandle::x1(), 2, 1, 3, DeltaSpec::Value(1));
        assert_eq!(p.to_string(), "A[3,3]");
        assert!(Template::parse("A[q,y]").is_err());
    }
}
