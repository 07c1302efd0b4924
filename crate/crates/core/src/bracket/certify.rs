//! Leading terms and minimality certificates.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{bracket, BracketValue};
use crate::biquandle::{enumerate_colorings, Biquandle, Coloring};
use crate::diagram::OrientedDiagram;
use crate::error::{Error, Result};
use crate::graphs::CanonicalCode;
use crate::ideals::{DeltaSpec, IdealBasis};
use crate::poly::{MonomialOrder, Polynomial};

/// A graph of maximal size among those with a nonzero reduced coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingTerm {
    pub code: CanonicalCode,
    pub vertices: usize,
    pub coefficient: Polynomial,
    /// Normal form modulo the basis; nonzero by construction.
    pub normal_form: Polynomial,
    pub irreducible_1: bool,
    pub irreducible_2: bool,
}

/// Leading terms of one bracket value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingReport {
    pub leading: Vec<LeadingTerm>,
    /// Graphs whose coefficient vanished mod p. This does not prove the
    /// coefficient lies in the ideal over the integers.
    pub mod_p_only_zero: Vec<CanonicalCode>,
}

pub fn leading_terms(v: &BracketValue, g: &IdealBasis) -> Result<LeadingReport> {
    let reduced = v.reduce(g)?;
    let mod_p_only_zero: Vec<CanonicalCode> = v.terms.keys().filter(|c| !reduced.contains_key(*c)).cloned().collect();
    let top = reduced.keys().map(CanonicalCode::vertex_count).max();
    let leading = reduced
        .into_iter()
        .filter(|(c, _)| Some(c.vertex_count()) == top)
        .map(|(code, normal_form)| {
            let graph = code.to_graph();
            LeadingTerm {
                vertices: code.vertex_count(),
                coefficient: v.terms[&code].clone(),
                irreducible_1: graph.is_irreducible(1),
                irreducible_2: graph.is_irreducible(2),
                code,
                normal_form,
            }
        })
        .collect();
    Ok(LeadingReport { leading, mod_p_only_zero })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices")]
pub enum Verdict {
    /// A certified leading graph has as many vertices as the diagram has crossings.
    Minimal,
    /// Every equivalent diagram has at least this many crossings.
    LowerBoundOnly(usize),
    /// Every coefficient vanished mod p.
    NoCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub coloring: Coloring,
    pub leading: Vec<LeadingTerm>,
    pub mod_p_only_zero: Vec<CanonicalCode>,
}

/// Certificate report; the primary output artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityCertificate {
    pub format: String,
    pub diagram: String,
    pub diagram_hash: String,
    pub crossings: usize,
    pub biquandle_hash: String,
    pub variant: u8,
    pub delta: DeltaSpec,
    pub prime: u32,
    pub order: MonomialOrder,
    pub colorings: usize,
    pub entries: Vec<CertificateEntry>,
    /// Index into `entries` and the certified leading graph.
    pub witness: Option<(usize, LeadingTerm)>,
    pub verdict: Verdict,
}

impl MinimalityCertificate {
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "diagram      {} ({} crossings)", self.diagram, self.crossings);
        let _ = writeln!(s, "biquandle    {}", &self.biquandle_hash[..16]);
        let _ = writeln!(s, "ideal        I_{} with delta = {}, GF({}), {}", self.variant, self.delta, self.prime, self.order.name());
        let _ = writeln!(s, "colorings    {}", self.colorings);
        match &self.witness {
            Some((i, t)) => {
                let _ = writeln!(s, "witness      coloring {:?}", self.entries[*i].coloring.0);
                let _ = writeln!(s, "  graph      {} ({} vertices)", t.code, t.vertices);
                let _ = writeln!(s, "  coeff      {}", t.coefficient);
                let _ = writeln!(s, "  nf         {}", t.normal_form);
                let _ = writeln!(s, "  irreducible j=1: {}, j=2: {}", t.irreducible_1, t.irreducible_2);
            }
            None => {
                let _ = writeln!(s, "witness      none");
            }
        }
        let zeros: usize = self.entries.iter().map(|e| e.mod_p_only_zero.len()).sum();
        if zeros > 0 {
            let _ = writeln!(s, "note         {zeros} coefficients vanished mod p only");
        }
        let verdict = match self.verdict {
            Verdict::Minimal => "Minimal".to_string(),
            Verdict::LowerBoundOnly(k) => format!("LowerBoundOnly({k})"),
            Verdict::NoCertificate => "NoCertificate".to_string(),
        };
        let _ = writeln!(s, "verdict      {verdict}");
        s
    }
}

/// Scans every colouring and certifies the largest leading graph found.
pub fn certify_minimality(d: &OrientedDiagram, b: &Biquandle, g: &IdealBasis) -> Result<MinimalityCertificate> {
    if b.hash() != g.manifest.biquandle_hash {
        return Err(Error::DomainMismatch("the basis belongs to a different biquandle".into()));
    }
    let j = g.variant();
    let delta = g.delta();
    let colorings = enumerate_colorings(d, b);
    let mut entries = Vec::with_capacity(colorings.len());
    let mut witness: Option<(usize, LeadingTerm)> = None;
    for f in &colorings {
        let v = bracket(d, f, b, j, delta)?;
        let report = leading_terms(&v, g)?;
        // Prefer larger graphs, then irreducible ones, then the first found.
        for t in &report.leading {
            let better = match &witness {
                None => true,
                Some((_, w)) => (t.vertices, t.irreducible_2) > (w.vertices, w.irreducible_2),
            };
            if better {
                witness = Some((entries.len(), t.clone()));
            }
        }
        entries.push(CertificateEntry { coloring: f.clone(), leading: report.leading, mod_p_only_zero: report.mod_p_only_zero });
    }
    let n = d.crossing_count();
    let verdict = match &witness {
        None => Verdict::NoCertificate,
        Some((_, t)) if t.vertices == n => Verdict::Minimal,
        Some((_, t)) => Verdict::LowerBoundOnly(t.vertices),
    };
    Ok(MinimalityCertificate {
        format: "pbb-certificate/1".into(),
        diagram: d.to_string(),
        diagram_hash: d.hash(),
        crossings: n,
        biquandle_hash: b.hash(),
        variant: j,
        delta,
        prime: g.basis.prime(),
        order: g.basis.order(),
        colorings: colorings.len(),
        entries,
        witness,
        verdict,
    })
}

/// Outcome of a membership test of an integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MembershipVerdict {
    /// The normal form mod p is nonzero. Any integer combination of the
    /// generators would reduce to zero mod p, so this is a proof.
    NotInIdealOverZ { normal_form: Polynomial },
    /// The image mod p lies in the reduced ideal; nothing follows over the integers.
    InconclusiveMemberModP,
}

/// Tests `target` (integer coefficients) against the ideal's basis mod p.
pub fn certify_nonmembership(target: &Polynomial, g: &IdealBasis) -> Result<MembershipVerdict> {
    let nf = g.basis.normal_form(&target.to_prime(g.basis.prime())?)?;
    Ok(if nf.is_zero() {
        MembershipVerdict::InconclusiveMemberModP
    } else {
        MembershipVerdict::NotInIdealOverZ { normal_form: nf }
    })
}
