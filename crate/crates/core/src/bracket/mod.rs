//! The parity-biquandle bracket: state sums, values in the graph module and
//! multisets over colourings.

mod certify;

pub use certify::{
    certify_minimality, certify_nonmembership, leading_terms, CertificateEntry, LeadingReport, LeadingTerm,
    MembershipVerdict, MinimalityCertificate, Verdict,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biquandle::{crossing_colors, enumerate_colorings, Biquandle, Coloring, Role, Sign};
use crate::diagram::{CrossingArcs, OrientedDiagram};
use crate::error::{Error, Result};
use crate::graphs::{CanonicalCode, FramedGraph};
use crate::ideals::{DeltaSpec, IdealBasis};
use crate::poly::{Domain, Letter, Monomial, Polynomial, Var};

/// Resolution of one crossing in a state.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Resolution {
    Oriented,
    Disoriented,
    Vertex,
}

impl Resolution {
    pub const ALL: [Resolution; 3] = [Resolution::Oriented, Resolution::Disoriented, Resolution::Vertex];

    pub fn letter(self, sign: Sign) -> Letter {
        match (sign, self) {
            (Sign::Positive, Resolution::Oriented) => Letter::A,
            (Sign::Positive, Resolution::Disoriented) => Letter::B,
            (Sign::Positive, Resolution::Vertex) => Letter::C,
            (Sign::Negative, Resolution::Oriented) => Letter::D,
            (Sign::Negative, Resolution::Disoriented) => Letter::E,
            (Sign::Negative, Resolution::Vertex) => Letter::F,
        }
    }
}

// Port slots at a crossing; a vertex uses them as its half-edges, so the
// opposite pairs are (over_in, over_out) and (under_in, under_out).
const OI: usize = 0;
const UI: usize = 1;
const OO: usize = 2;
const UO: usize = 3;

fn slot(role: Role) -> usize {
    match role {
        Role::OverIn => OI,
        Role::UnderIn => UI,
        Role::OverOut => OO,
        Role::UnderOut => UO,
    }
}

// The port joined to `s` by a smoothing.
fn smoothing_mate(r: Resolution, s: usize) -> usize {
    match r {
        Resolution::Oriented => [UO, OO, UI, OI][s],
        Resolution::Disoriented => [UI, OI, UO, OO][s],
        Resolution::Vertex => unreachable!("vertices are not smoothed"),
    }
}

/// One term of the raw state sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTerm {
    pub resolutions: Vec<Resolution>,
    pub monomial: Monomial,
    /// Circles removed from the state graph.
    pub delta_exponent: u32,
    pub graph: FramedGraph,
}

/// Precomputed port wiring of a diagram.
struct Wiring {
    crossings: Vec<CrossingArcs>,
    // other end of the semiarc at each port 4c + slot
    link: Vec<usize>,
    free_circles: u32,
}

impl Wiring {
    fn new(d: &OrientedDiagram) -> Wiring {
        let crossings = d.crossings();
        let index: BTreeMap<u32, usize> = crossings.iter().enumerate().map(|(i, x)| (x.id, i)).collect();
        let mut link = vec![usize::MAX; 4 * crossings.len()];
        let mut free_circles = 0;
        for a in d.semiarcs() {
            match (a.tail, a.head) {
                (Some(t), Some(h)) => {
                    let p = 4 * index[&t.crossing] + slot(t.role);
                    let q = 4 * index[&h.crossing] + slot(h.role);
                    link[p] = q;
                    link[q] = p;
                }
                _ => free_circles += 1,
            }
        }
        Wiring { crossings, link, free_circles }
    }

    fn graph(&self, state: &[Resolution]) -> FramedGraph {
        let n = self.crossings.len();
        let mut vertex = vec![u32::MAX; n];
        let mut k = 0;
        for (c, r) in state.iter().enumerate() {
            if *r == Resolution::Vertex {
                vertex[c] = k;
                k += 1;
            }
        }
        let half_edge = |p: usize| 4 * vertex[p / 4] + (p % 4) as u32;
        let mut partner = vec![0u32; 4 * k as usize];
        let mut used = vec![false; 4 * n];
        for p in 0..4 * n {
            if state[p / 4] != Resolution::Vertex {
                continue;
            }
            let mut q = self.link[p];
            while state[q / 4] != Resolution::Vertex {
                used[q] = true;
                let mate = 4 * (q / 4) + smoothing_mate(state[q / 4], q % 4);
                used[mate] = true;
                q = self.link[mate];
            }
            partner[half_edge(p) as usize] = half_edge(q);
        }
        let mut circles = self.free_circles;
        for p in 0..4 * n {
            if used[p] || state[p / 4] == Resolution::Vertex {
                continue;
            }
            circles += 1;
            let mut q = p;
            while !used[q] {
                used[q] = true;
                let mate = 4 * (q / 4) + smoothing_mate(state[q / 4], q % 4);
                used[mate] = true;
                q = self.link[mate];
            }
        }
        FramedGraph::new(partner, circles).expect("state graphs are well formed")
    }
}

fn subscript(x: &CrossingArcs, f: &Coloring) -> (usize, usize) {
    let c = crossing_colors(x, f);
    Biquandle::subscript(x.sign, |role| c[slot(role)])
}

fn state_of(index: usize, n: usize) -> Vec<Resolution> {
    let mut k = index;
    (0..n)
        .map(|_| {
            let r = Resolution::ALL[k % 3];
            k /= 3;
            r
        })
        .collect()
}

fn check_coloring(d: &OrientedDiagram, f: &Coloring, b: &Biquandle) -> Result<()> {
    if f.0.len() != d.semiarc_count() || !f.is_valid(d, b) {
        return Err(Error::InvalidColoring(format!("{:?} is not a colouring of the diagram", f.0)));
    }
    Ok(())
}

/// Variables of each crossing's three resolutions, in crossing order.
fn crossing_vars(f: &Coloring, w: &Wiring) -> Vec<[Var; 3]> {
    w.crossings
        .iter()
        .map(|x| {
            let (s, t) = subscript(x, f);
            Resolution::ALL.map(|r| Var::letter(r.letter(x.sign), s, t))
        })
        .collect()
}

/// All `3^n` states. Entry `i` resolves crossing `c` (in id order) by digit
/// `c` of `i` in base 3.
pub fn expand_states(d: &OrientedDiagram, f: &Coloring, b: &Biquandle) -> Result<Vec<StateTerm>> {
    check_coloring(d, f, b)?;
    let w = Wiring::new(d);
    let vars = crossing_vars(f, &w);
    let n = w.crossings.len();
    let total = state_count(n)?;
    Ok((0..total)
        .into_par_iter()
        .map(|i| {
            let state = state_of(i, n);
            let monomial = Monomial::from_pairs(state.iter().zip(&vars).map(|(r, v)| (v[*r as usize], 1)));
            let (graph, delta_exponent) = w.graph(&state).strip_circles();
            StateTerm { resolutions: state, monomial, delta_exponent, graph }
        })
        .collect())
}

fn state_count(n: usize) -> Result<usize> {
    if n > 16 {
        return Err(Error::Unsupported(format!("{n} crossings give too many states")));
    }
    Ok(3usize.pow(n as u32))
}

/// Where a bracket value came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub diagram_hash: String,
    pub coloring: Coloring,
    pub biquandle_hash: String,
    pub delta: DeltaSpec,
}

/// A bracket value: integer polynomial coefficients on `j`-irreducible graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketValue {
    pub variant: u8,
    pub provenance: Provenance,
    pub terms: BTreeMap<CanonicalCode, Polynomial>,
}

fn delta_power(delta: DeltaSpec, e: u32) -> Polynomial {
    match delta {
        DeltaSpec::Value(v) => Polynomial::constant(Domain::Integers, BigInt::from(v).pow(e)),
        DeltaSpec::Symbolic => {
            Polynomial::term(Domain::Integers, 1, Monomial::from_pairs([(Var::DELTA, e)]))
        }
    }
}

fn check_variant(j: u8) -> Result<()> {
    if j == 1 || j == 2 {
        Ok(())
    } else {
        Err(Error::InvalidVariant(j))
    }
}

pub fn bracket(d: &OrientedDiagram, f: &Coloring, b: &Biquandle, j: u8, delta: DeltaSpec) -> Result<BracketValue> {
    check_variant(j)?;
    check_coloring(d, f, b)?;
    let w = Wiring::new(d);
    let vars = crossing_vars(f, &w);
    let n = w.crossings.len();
    let total = state_count(n)?;
    // Group states by (code, δ-exponent) and add monomials first.
    let grouped: BTreeMap<(CanonicalCode, u32), BTreeMap<Monomial, i64>> = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<(CanonicalCode, u32), BTreeMap<Monomial, i64>>, i| {
            let state = state_of(i, n);
            let monomial = Monomial::from_pairs(state.iter().zip(&vars).map(|(r, v)| (v[*r as usize], 1)));
            let norm = w.graph(&state).normalize(j);
            *acc.entry((norm.code, norm.delta_exponent)).or_default().entry(monomial).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, ms) in b {
                let slot = a.entry(k).or_default();
                for (m, c) in ms {
                    *slot.entry(m).or_default() += c;
                }
            }
            a
        });
    let mut terms: BTreeMap<CanonicalCode, Polynomial> = BTreeMap::new();
    for ((code, e), ms) in grouped {
        let p = Polynomial::from_terms(Domain::Integers, ms.into_iter().map(|(m, c)| (m, BigInt::from(c))));
        let p = &p * &delta_power(delta, e);
        let slot = terms.entry(code).or_insert_with(|| Polynomial::zero(Domain::Integers));
        *slot = &*slot + &p;
    }
    terms.retain(|_, p| !p.is_zero());
    Ok(BracketValue {
        variant: j,
        provenance: Provenance {
            diagram_hash: d.hash(),
            coloring: f.clone(),
            biquandle_hash: b.hash(),
            delta,
        },
        terms,
    })
}

/// One bracket value per colouring, in colouring order.
pub fn bracket_multiset(d: &OrientedDiagram, b: &Biquandle, j: u8, delta: DeltaSpec) -> Result<Vec<BracketValue>> {
    enumerate_colorings(d, b).iter().map(|f| bracket(d, f, b, j, delta)).collect()
}

/// A bracket value with coefficients reduced modulo a Gröbner basis.
pub type ReducedValue = BTreeMap<CanonicalCode, Polynomial>;

fn check_basis(v: &BracketValue, g: &IdealBasis) -> Result<()> {
    if v.provenance.delta != g.delta() || v.variant != g.variant() || v.provenance.biquandle_hash != g.manifest.biquandle_hash {
        return Err(Error::DomainMismatch(format!(
            "bracket (j={}, δ={}) does not match the ideal (j={}, δ={})",
            v.variant,
            v.provenance.delta,
            g.variant(),
            g.delta()
        )));
    }
    Ok(())
}

impl BracketValue {
    /// Normal forms of the coefficients; zero classes are dropped.
    pub fn reduce(&self, g: &IdealBasis) -> Result<ReducedValue> {
        check_basis(self, g)?;
        let p = g.basis.prime();
        let mut out = BTreeMap::new();
        for (code, c) in &self.terms {
            let nf = g.basis.normal_form(&c.to_prime(p)?)?;
            if !nf.is_zero() {
                out.insert(code.clone(), nf);
            }
        }
        Ok(out)
    }

    pub fn coefficient(&self, code: &CanonicalCode) -> Option<&Polynomial> {
        self.terms.get(code)
    }
}

/// Multiset equality modulo the ideal: values are compared after reduction.
pub fn multisets_equal(a: &[BracketValue], b: &[BracketValue], g: &IdealBasis) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let reduce_all = |vs: &[BracketValue]| -> Result<Vec<String>> {
        let mut out: Vec<String> = vs
            .iter()
            .map(|v| v.reduce(g).map(|r| serde_json::to_string(&r).expect("serializable")))
            .collect::<Result<_>>()?;
        out.sort();
        Ok(out)
    };
    Ok(reduce_all(a)? == reduce_all(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid_closure;

    fn kink(sign: char) -> OrientedDiagram {
        OrientedDiagram::parse(&format!("O1{sign}U1{sign}")).unwrap()
    }

    #[test]
    fn unknot_has_one_state() {
        let d = OrientedDiagram::unknot();
        let f = Coloring(vec![2]);
        let states = expand_states(&d, &f, &Biquandle::x1()).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].graph, FramedGraph::circles(1));
        assert_eq!(states[0].delta_exponent, 0);
        let v = bracket(&d, &f, &Biquandle::x1(), 2, DeltaSpec::Symbolic).unwrap();
        assert_eq!(v.terms.len(), 1);
        assert_eq!(v.terms.values().next().unwrap().to_string(), "1");
    }

    #[test]
    fn positive_kink_states() {
        let b = Biquandle::x1();
        let d = kink('+');
        for f in enumerate_colorings(&d, &b) {
            // both subscript colours sit on the semiarc entering the over passage
            let x = f.0[1];
            let states = expand_states(&d, &f, &b).unwrap();
            assert_eq!(states.len(), 3);
            let summary: Vec<(String, u32, String)> = states
                .iter()
                .map(|s| (s.monomial.to_string(), s.delta_exponent, s.graph.canonical_code().to_string()))
                .collect();
            assert_eq!(
                summary,
                vec![
                    (format!("A[{x},{x}]"), 1, "○".to_string()),
                    (format!("B[{x},{x}]"), 0, "○".to_string()),
                    (format!("C[{x},{x}]"), 0, "[1,1]".to_string()),
                ]
            );
            let v2 = bracket(&d, &f, &b, 2, DeltaSpec::Symbolic).unwrap();
            let text: Vec<String> = v2.terms.iter().map(|(c, p)| format!("{c}:{p}")).collect();
            assert_eq!(text, vec![format!("○:A[{x},{x}]*delta + B[{x},{x}] + C[{x},{x}]")]);
            let v1 = bracket(&d, &f, &b, 1, DeltaSpec::Symbolic).unwrap();
            let text: Vec<String> = v1.terms.iter().map(|(c, p)| format!("{c}:{p}")).collect();
            assert_eq!(text, vec![format!("○:A[{x},{x}]*delta + B[{x},{x}]"), format!("[1,1]:C[{x},{x}]")]);
        }
    }

    #[test]
    fn negative_kink_uses_d_e_f() {
        let b = Biquandle::x2();
        let d = kink('-');
        let f = &enumerate_colorings(&d, &b)[0];
        let v = bracket(&d, f, &b, 2, DeltaSpec::Value(1)).unwrap();
        let p = &v.terms[&"○".parse().unwrap()];
        let letters: Vec<char> = p.vars().iter().map(|v| v.to_string().chars().next().unwrap()).collect();
        assert_eq!(letters, vec!['D', 'E', 'F']);
    }

    #[test]
    fn invalid_coloring_rejected() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        let bad = Coloring(vec![1; d.semiarc_count() - 1]);
        assert!(matches!(expand_states(&d, &bad, &Biquandle::x1()), Err(Error::InvalidColoring(_))));
        let f = Coloring(vec![1; d.semiarc_count()]);
        assert!(bracket(&d, &f, &Biquandle::trivial(1), 3, DeltaSpec::Value(1)).is_err());
    }

    #[test]
    fn state_count() {
        let b = Biquandle::x1();
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        let f = &enumerate_colorings(&d, &b)[0];
        let states = expand_states(&d, f, &b).unwrap();
        assert_eq!(states.len(), 27);
        let vertexless = states.iter().filter(|s| s.graph.vertex_count() == 0).count();
        assert_eq!(vertexless, 8);
    }
}
