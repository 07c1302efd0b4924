//! Oriented virtual link diagrams as signed Gauss codes.

mod gauss;
pub(crate) mod moves;
mod pd;

pub use moves::{apply as apply_move, enumerate_moves, inverse as inverse_move, random_diagram, random_diagram_with, random_move, MoveKind, MoveSpec, R2Kind};
pub use pd::{parse_pd, PdCrossing};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use crate::biquandle::{Role, Sign};
use crate::error::{Error, Result};

/// One passage of a component through a crossing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Passage {
    pub crossing: u32,
    pub over: bool,
    pub sign: Sign,
}

impl Passage {
    pub fn over(crossing: u32, sign: Sign) -> Passage {
        Passage { crossing, over: true, sign }
    }

    pub fn under(crossing: u32, sign: Sign) -> Passage {
        Passage { crossing, over: false, sign }
    }
}

/// A validated diagram. Each component is a cyclic sequence of passages;
/// an empty component is a crossing-free circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedDiagram {
    components: Vec<Vec<Passage>>,
}

/// Position of a passage: component index and index within it.
pub type Pos = (usize, usize);

/// Endpoint of a semiarc at a crossing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct End {
    pub crossing: u32,
    pub role: Role,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semiarc {
    pub id: usize,
    pub component: usize,
    /// `None` for a closed, crossing-free circle.
    pub tail: Option<End>,
    pub head: Option<End>,
}

/// The four semiarcs meeting at a crossing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingArcs {
    pub id: u32,
    pub sign: Sign,
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
}

impl CrossingArcs {
    pub fn arc(&self, role: Role) -> usize {
        match role {
            Role::OverIn => self.over_in,
            Role::OverOut => self.over_out,
            Role::UnderIn => self.under_in,
            Role::UnderOut => self.under_out,
        }
    }
}

impl OrientedDiagram {
    /// Validates and wraps raw components.
    pub fn new(components: Vec<Vec<Passage>>) -> Result<OrientedDiagram> {
        let mut seen: BTreeMap<u32, (u8, u8, Sign)> = BTreeMap::new();
        for p in components.iter().flatten() {
            let e = seen.entry(p.crossing).or_insert((0, 0, p.sign));
            if e.2 != p.sign {
                return Err(Error::SignMismatch(p.crossing));
            }
            if p.over {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        if let Some((&c, _)) = seen.iter().find(|(_, &(o, u, _))| o != 1 || u != 1) {
            return Err(Error::UnpairedCrossing(c));
        }
        Ok(OrientedDiagram { components })
    }

    pub fn unknot() -> OrientedDiagram {
        OrientedDiagram { components: vec![vec![]] }
    }

    pub fn parse(text: &str) -> Result<OrientedDiagram> {
        gauss::parse(text)
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum::<usize>() / 2
    }

    /// Sorted crossing ids.
    pub fn crossing_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.components.iter().flatten().filter(|p| p.over).map(|p| p.crossing).collect();
        ids.sort_unstable();
        ids
    }

    pub fn sign_of(&self, crossing: u32) -> Option<Sign> {
        self.components.iter().flatten().find(|p| p.crossing == crossing).map(|p| p.sign)
    }

    pub fn writhe(&self) -> i64 {
        self.components
            .iter()
            .flatten()
            .filter(|p| p.over)
            .map(|p| if p.sign == Sign::Positive { 1 } else { -1 })
            .sum()
    }

    /// Positions of the over and under passage of `crossing`.
    pub fn locate(&self, crossing: u32) -> Option<(Pos, Pos)> {
        let (mut o, mut u) = (None, None);
        for (ci, comp) in self.components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                if p.crossing == crossing {
                    if p.over {
                        o = Some((ci, i));
                    } else {
                        u = Some((ci, i));
                    }
                }
            }
        }
        Some((o?, u?))
    }

    fn arc_base(&self) -> Vec<usize> {
        let mut base = Vec::with_capacity(self.components.len());
        let mut next = 0;
        for c in &self.components {
            base.push(next);
            next += c.len().max(1);
        }
        base
    }

    pub fn semiarc_count(&self) -> usize {
        self.components.iter().map(|c| c.len().max(1)).sum()
    }

    /// Semiarc `k` of a component leaves passage `k` and enters passage `k+1`
    /// (cyclically). Ids are assigned component by component.
    pub fn semiarcs(&self) -> Vec<Semiarc> {
        let base = self.arc_base();
        let mut out = Vec::with_capacity(self.semiarc_count());
        for (ci, comp) in self.components.iter().enumerate() {
            if comp.is_empty() {
                out.push(Semiarc { id: base[ci], component: ci, tail: None, head: None });
                continue;
            }
            for k in 0..comp.len() {
                let a = comp[k];
                let b = comp[(k + 1) % comp.len()];
                let out_role = if a.over { Role::OverOut } else { Role::UnderOut };
                let in_role = if b.over { Role::OverIn } else { Role::UnderIn };
                out.push(Semiarc {
                    id: base[ci] + k,
                    component: ci,
                    tail: Some(End { crossing: a.crossing, role: out_role }),
                    head: Some(End { crossing: b.crossing, role: in_role }),
                });
            }
        }
        out
    }

    /// Incident semiarcs of every crossing, sorted by crossing id.
    pub fn crossings(&self) -> Vec<CrossingArcs> {
        let base = self.arc_base();
        let mut map: BTreeMap<u32, CrossingArcs> = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            let n = comp.len();
            for (k, p) in comp.iter().enumerate() {
                let outgoing = base[ci] + k;
                let incoming = base[ci] + (k + n - 1) % n;
                let e = map.entry(p.crossing).or_insert(CrossingArcs {
                    id: p.crossing,
                    sign: p.sign,
                    over_in: 0,
                    over_out: 0,
                    under_in: 0,
                    under_out: 0,
                });
                if p.over {
                    e.over_in = incoming;
                    e.over_out = outgoing;
                } else {
                    e.under_in = incoming;
                    e.under_out = outgoing;
                }
            }
        }
        map.into_values().collect()
    }

    /// Relabels crossings `1..=n` in order of first appearance.
    pub fn canonicalize(&self) -> OrientedDiagram {
        let mut map = BTreeMap::new();
        for p in self.components.iter().flatten() {
            let next = map.len() as u32 + 1;
            map.entry(p.crossing).or_insert(next);
        }
        OrientedDiagram {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|p| Passage { crossing: map[&p.crossing], ..*p }).collect())
                .collect(),
        }
    }

    /// The diagram with every component rotated so that it starts at its
    /// smallest crossing id's first passage, then canonicalized; two diagrams
    /// that differ only by rotation and relabelling may still differ here,
    /// this is only meant for comparing move round trips.
    pub fn rotation_normal(&self) -> OrientedDiagram {
        let comps = self
            .components
            .iter()
            .map(|c| {
                if c.is_empty() {
                    return c.clone();
                }
                let best = (0..c.len())
                    .min_by_key(|&r| {
                        c[r..].iter().chain(c[..r].iter()).map(|p| (p.crossing, !p.over)).collect::<Vec<_>>()
                    })
                    .unwrap();
                c[best..].iter().chain(c[..best].iter()).copied().collect()
            })
            .collect();
        OrientedDiagram { components: comps }
    }

    /// Mirror image: every crossing changes sign and over/under.
    pub fn mirror(&self) -> OrientedDiagram {
        OrientedDiagram {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|p| Passage { crossing: p.crossing, over: !p.over, sign: p.sign.flip() }).collect())
                .collect(),
        }
    }

    pub fn max_crossing_id(&self) -> u32 {
        self.components.iter().flatten().map(|p| p.crossing).max().unwrap_or(0)
    }

    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"diagram:v1:");
        h.update(self.to_string().as_bytes());
        hex::encode(h.finalize())
    }

    pub(crate) fn components_mut(&mut self) -> &mut Vec<Vec<Passage>> {
        &mut self.components
    }
}

impl fmt::Display for OrientedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&gauss::serialize(self))
    }
}

impl std::str::FromStr for OrientedDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<OrientedDiagram> {
        OrientedDiagram::parse(s)
    }
}

impl Serialize for OrientedDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrientedDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<OrientedDiagram, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Closure of a braid word; generator `i` (1-based) is positive, `-i` its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<OrientedDiagram> {
    if strands == 0 {
        return Err(Error::Syntax("braid needs at least one strand".into()));
    }
    // passages recorded per strand position as the braid is read bottom to top
    let mut at_pos: Vec<Vec<Passage>> = vec![Vec::new(); strands];
    let mut strand_at: Vec<usize> = (0..strands).collect();
    for (k, &g) in word.iter().enumerate() {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(Error::Syntax(format!("generator {g} out of range")));
        }
        let c = k as u32 + 1;
        let (l, r) = (strand_at[i - 1], strand_at[i]);
        // positive: the strand moving left to right passes over
        let sign = if g > 0 { Sign::Positive } else { Sign::Negative };
        let left_over = g > 0;
        at_pos[l].push(Passage { crossing: c, over: left_over, sign });
        at_pos[r].push(Passage { crossing: c, over: !left_over, sign });
        strand_at.swap(i - 1, i);
    }
    // closure: strand starting at position p ends at position q, continues as the strand starting at q
    let mut end_pos = vec![0; strands];
    for (q, &s) in strand_at.iter().enumerate() {
        end_pos[s] = q;
    }
    let mut done = vec![false; strands];
    let mut comps = Vec::new();
    for start in 0..strands {
        if done[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut s = start;
        while !done[s] {
            done[s] = true;
            comp.extend_from_slice(&at_pos[s]);
            s = end_pos[s];
        }
        comps.push(comp);
    }
    OrientedDiagram::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_semiarcs() {
        let d = OrientedDiagram::parse("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 3);
        let arcs = d.semiarcs();
        assert_eq!(arcs.len(), 6);
        // each crossing sees four distinct roles
        for c in d.crossings() {
            let ids = [c.over_in, c.over_out, c.under_in, c.under_out];
            let mut s = ids.to_vec();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), 4);
        }
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn empty_circle() {
        let d = OrientedDiagram::parse("()").unwrap();
        assert_eq!(d.semiarcs().len(), 1);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn braid_closures() {
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.writhe(), 3);
        assert_eq!(t.canonicalize().to_string(), "O1+U2+O3+U1+O2+U3+");
        let k = braid_closure(3, &[1, -2, 1, -2, 1, -2, 1, -2]).unwrap();
        assert_eq!(k.component_count(), 1);
        assert_eq!(k.semiarcs().len(), 16);
        let b = braid_closure(3, &[1, -2, 1, -2, 1, -2]).unwrap();
        assert_eq!(b.component_count(), 3);
    }
}
