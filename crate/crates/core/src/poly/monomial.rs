use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::var::Var;

/// A power product, stored sparsely as `(variable, exponent)` pairs sorted by
/// variable with no zero exponents.
///
/// The derived `Ord` is only a storage order. Use [`MonomialOrder`] for
/// leading-term questions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(var, _)| var);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.binary_search_by_key(&v, |&(w, _)| w).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::from_pairs(self.0.iter().map(|&(v, e)| (v, e - other.exponent(v)))))
    }

    /// Drops `v` and returns its former exponent.
    pub fn without(&self, v: Var) -> (Monomial, u32) {
        let e = self.exponent(v);
        (Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect()), e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Monomial orders over the fixed variable enumeration (see [`Var`]).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    DegLex,
    Lex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::DegLex => "deglex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn parse(s: &str) -> Option<MonomialOrder> {
        match s.to_ascii_lowercase().as_str() {
            "degrevlex" | "grevlex" | "dp" => Some(MonomialOrder::DegRevLex),
            "deglex" | "glex" | "dp-lex" => Some(MonomialOrder::DegLex),
            "lex" | "lp" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }

    /// Compares two monomials; `Greater` means `a` is the larger term.
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::DegLex => a.degree().cmp(&b.degree()).then_with(|| lex(a, b)),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| revlex(a, b)),
        }
    }
}

// Earlier variables dominate; a larger exponent at the first difference wins.
fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    let (a, b) = (&a.0, &b.0);
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

// Scanning from the last variable, the smaller exponent at the first difference wins.
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    let (a, b) = (&a.0, &b.0);
    let (mut i, mut j) = (a.len(), b.len());
    loop {
        match (i.checked_sub(1).map(|k| a[k]), j.checked_sub(1).map(|k| b[k])) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some((va, ea)), Some((vb, eb))) => match va.cmp(&vb) {
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
                Ordering::Equal => {
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    i -= 1;
                    j -= 1;
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(i, e)| (Var::generic(i), e)))
    }

    // Dense reference: exponents over x[0..4].
    fn dense(a: &Monomial) -> Vec<u32> {
        (0..4).map(|i| a.exponent(Var::generic(i))).collect()
    }

    fn dense_cmp(order: MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (dense(a), dense(b));
        let (sa, sb): (u32, u32) = (da.iter().sum(), db.iter().sum());
        match order {
            MonomialOrder::Lex => da.cmp(&db),
            MonomialOrder::DegLex => sa.cmp(&sb).then(da.cmp(&db)),
            MonomialOrder::DegRevLex => sa.cmp(&sb).then_with(|| {
                for k in (0..4).rev() {
                    if da[k] != db[k] {
                        return db[k].cmp(&da[k]);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    #[test]
    fn orders_agree_with_dense_reference() {
        let mut monos = Vec::new();
        for e0 in 0..3 {
            for e1 in 0..3 {
                for e2 in 0..2 {
                    for e3 in 0..2 {
                        monos.push(m(&[(0, e0), (1, e1), (2, e2), (3, e3)]));
                    }
                }
            }
        }
        for order in [MonomialOrder::Lex, MonomialOrder::DegLex, MonomialOrder::DegRevLex] {
            for a in &monos {
                for b in &monos {
                    assert_eq!(order.cmp(a, b), dense_cmp(order, a, b), "{order:?} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn degrevlex_textbook_case() {
        // x0*x2^2 (less x2) beats x1^3? degree 3 each; last differing var x2: 2 vs 0 -> smaller wins.
        let a = m(&[(0, 1), (2, 2)]);
        let b = m(&[(1, 3)]);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::DegLex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn mul_div() {
        let a = m(&[(0, 1), (2, 2)]);
        let b = m(&[(1, 1), (2, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab, m(&[(0, 1), (1, 1), (2, 3)]));
        assert_eq!(ab.div(&b).unwrap(), a);
        assert!(a.div(&b).is_none());
        assert!(b.divides(&ab));
    }
}
