use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use super::var::Var;
use crate::error::{Error, Result};

/// Coefficient domain of a [`Polynomial`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Integers,
    Prime(u32),
}

impl Domain {
    fn normalize(self, c: BigInt) -> BigInt {
        match self {
            Domain::Integers => c,
            Domain::Prime(p) => {
                let p = BigInt::from(p);
                let r = c % &p;
                if r.is_negative() {
                    r + p
                } else {
                    r
                }
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => write!(f, "ZZ"),
            Domain::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Sparse multivariate polynomial over the integers or a prime field.
///
/// Coefficients are never zero; over `GF(p)` they are kept in `1..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    domain: Domain,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(domain: Domain) -> Polynomial {
        Polynomial { domain, terms: BTreeMap::new() }
    }

    pub fn constant(domain: Domain, c: impl Into<BigInt>) -> Polynomial {
        Polynomial::term(domain, c, Monomial::one())
    }

    pub fn one(domain: Domain) -> Polynomial {
        Polynomial::constant(domain, 1)
    }

    pub fn var(domain: Domain, v: Var) -> Polynomial {
        Polynomial::term(domain, 1, Monomial::var(v))
    }

    pub fn term(domain: Domain, c: impl Into<BigInt>, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero(domain);
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(domain: Domain, it: I) -> Polynomial {
        let mut p = Polynomial::zero(domain);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        let c = self.domain.normalize(c);
        if c.is_zero() {
            return;
        }
        let domain = self.domain;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = domain.normalize(e.get() + c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(format!("{} vs {}", self.domain, other.domain)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.domain);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Polynomial {
        let c = c.into();
        Polynomial::from_terms(self.domain, self.terms.iter().map(|(m, k)| (m.clone(), k * &c)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial::from_terms(self.domain, self.terms.iter().map(|(t, k)| (t.mul(m), k.clone())))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.domain);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().collect::<Vec<_>>()).collect()
    }

    /// Reduces integer coefficients modulo `p`.
    pub fn to_prime(&self, p: u32) -> Result<Polynomial> {
        match self.domain {
            Domain::Integers => Ok(Polynomial::from_terms(
                Domain::Prime(p),
                self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
            )),
            Domain::Prime(q) if q == p => Ok(self.clone()),
            d => Err(Error::DomainMismatch(format!("cannot reduce {d} polynomial modulo {p}"))),
        }
    }

    /// Replaces every occurrence of `v` by the constant `value`.
    pub fn substitute(&self, v: Var, value: impl Into<BigInt>) -> Polynomial {
        let value = value.into();
        let mut out = Polynomial::zero(self.domain);
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            out.add_term(rest, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Evaluates at an integer point; variables missing from `point` are an error.
    pub fn eval<F: Fn(Var) -> Option<BigInt>>(&self, point: F) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = point(v).ok_or_else(|| Error::Unsupported(format!("no value for {v}")))?;
                t *= num_traits::pow(x, e as usize);
            }
            total += t;
        }
        Ok(self.domain.normalize(total))
    }

    pub fn parse(domain: Domain, text: &str) -> Result<Polynomial> {
        super::text::parse(domain, text)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            domain: self.domain,
            terms: self
                .sorted_terms(MonomialOrder::DegRevLex)
                .into_iter()
                .map(|(m, c)| TermJson { coeff: c.to_string(), monomial: m.clone() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Polynomial> {
        let mut p = Polynomial::zero(j.domain);
        for t in &j.terms {
            let c: BigInt = t.coeff.parse().map_err(|_| Error::Syntax(format!("bad coefficient `{}`", t.coeff)))?;
            p.add_term(t.monomial.clone(), c);
        }
        Ok(p)
    }
}

/// JSON term-list form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub domain: Domain,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Monomial,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Polynomial, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Polynomial::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms(MonomialOrder::DegRevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.domain)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial domain mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial domain mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial domain mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::var::Letter;

    const ZZ: Domain = Domain::Integers;

    fn v(l: Letter, x: usize, y: usize) -> Polynomial {
        Polynomial::var(ZZ, Var::letter(l, x, y))
    }

    #[test]
    fn cancellation_to_constant() {
        let x = Polynomial::var(ZZ, Var::generic(0));
        let p = &x + &Polynomial::one(ZZ);
        let q = &p + &(-&x);
        assert_eq!(q, Polynomial::one(ZZ));
    }

    #[test]
    fn difference_of_squares() {
        let a = v(Letter::A, 1, 1);
        let b = v(Letter::B, 1, 1);
        let lhs = &(&a + &b) * &(&a - &b);
        let rhs = &(&a * &a) - &(&b * &b);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn product_over_gf2() {
        let d = Domain::Prime(2);
        let delta = Polynomial::var(d, Var::DELTA);
        let ad = &Polynomial::var(d, Var::letter(Letter::A, 1, 1)) * &Polynomial::var(d, Var::letter(Letter::D, 1, 1));
        let p = &delta * &ad;
        assert_eq!(p.to_string(), "A[1,1]*D[1,1]*delta");
        // 2x vanishes over GF(2)
        assert!(p.scale(2).is_zero());
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let a = Polynomial::one(ZZ);
        let b = Polynomial::one(Domain::Prime(7));
        assert!(matches!(a.try_add(&b), Err(Error::DomainMismatch(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn prime_coefficients_are_canonical() {
        let d = Domain::Prime(7);
        let p = Polynomial::constant(d, -1);
        assert_eq!(p.coefficient(&Monomial::one()), BigInt::from(6));
        assert!(Polynomial::constant(d, 14).is_zero());
    }

    #[test]
    fn substitute_and_eval() {
        let a = v(Letter::A, 1, 1);
        let delta = Polynomial::var(ZZ, Var::DELTA);
        let p = &(&delta * &a) - &Polynomial::one(ZZ);
        let q = p.substitute(Var::DELTA, 2);
        assert_eq!(q.to_string(), "2*A[1,1] - 1");
        let val = p.eval(|w| Some(if w.is_delta() { BigInt::from(2) } else { BigInt::from(3) })).unwrap();
        assert_eq!(val, BigInt::from(5));
    }

    #[test]
    fn json_round_trip() {
        let p = Polynomial::parse(ZZ, "3*A[1,2]^2*delta - 1").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
