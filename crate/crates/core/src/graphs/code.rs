use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{opposite, vertex_of, FramedGraph};
use crate::error::{Error, Result};

/// Version tag of the textual code form.
pub const CODE_FORMAT: &str = "dow/1";

/// Isomorphism code of a graph with cross structure: one double-occurrence
/// word per unicursal component (labels from 1 in first-visit order), then
/// the free-circle count.
///
/// Text form: each word as `[1,2,1,2]`, then one `○` per free circle;
/// the empty graph is `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    words: Vec<Vec<u32>>,
    free_circles: u32,
}

impl CanonicalCode {
    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn free_circles(&self) -> u32 {
        self.free_circles
    }

    pub fn vertex_count(&self) -> usize {
        self.words.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_circle(&self) -> bool {
        self.words.is_empty() && self.free_circles == 1
    }

    /// A graph with this code. Occurrence k of vertex v uses the pair
    /// `(4v + k, 4v + k + 2)`.
    pub fn to_graph(&self) -> FramedGraph {
        let n = self.vertex_count();
        let mut partner = vec![0u32; 4 * n];
        let mut seen = vec![0u32; n];
        for w in &self.words {
            let entries: Vec<u32> = w
                .iter()
                .map(|&l| {
                    let v = l - 1;
                    let h = 4 * v + seen[v as usize];
                    seen[v as usize] += 1;
                    h
                })
                .collect();
            for k in 0..entries.len() {
                let out = opposite(entries[k]);
                let next = entries[(k + 1) % entries.len()];
                partner[out as usize] = next;
                partner[next as usize] = out;
            }
        }
        FramedGraph::new(partner, self.free_circles).expect("codes describe valid graphs")
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() && self.free_circles == 0 {
            return write!(f, "∅");
        }
        for w in &self.words {
            let parts: Vec<String> = w.iter().map(u32::to_string).collect();
            write!(f, "[{}]", parts.join(","))?;
        }
        for _ in 0..self.free_circles {
            write!(f, "○")?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<CanonicalCode> {
        let bad = || Error::Syntax(format!("bad graph code `{s}`"));
        let t = s.trim();
        if t == "∅" {
            return Ok(CanonicalCode { words: Vec::new(), free_circles: 0 });
        }
        let mut rest = t;
        let mut words = Vec::new();
        while let Some(r) = rest.strip_prefix('[') {
            let end = r.find(']').ok_or_else(bad)?;
            let w: std::result::Result<Vec<u32>, _> = r[..end].split(',').map(|x| x.trim().parse::<u32>()).collect();
            words.push(w.map_err(|_| bad())?);
            rest = &r[end + 1..];
        }
        let mut free_circles = 0;
        for c in rest.chars() {
            if c != '○' {
                return Err(bad());
            }
            free_circles += 1;
        }
        let code = CanonicalCode { words, free_circles };
        // Each label 1..=n must occur exactly twice.
        let n = code.vertex_count();
        let mut counts = vec![0; n];
        for &l in code.words.iter().flatten() {
            if l == 0 || l as usize > n {
                return Err(bad());
            }
            counts[l as usize - 1] += 1;
        }
        if counts.iter().any(|&c| c != 2) || code.words.iter().any(Vec::is_empty) {
            return Err(bad());
        }
        if code.to_graph().canonical_code() != code {
            return Err(Error::Syntax(format!("graph code `{s}` is not canonical")));
        }
        Ok(code)
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<CanonicalCode, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Search<'a> {
    g: &'a FramedGraph,
    // Component index of each entry half-edge.
    comp_of: Vec<usize>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    fn walk(&self, start: u32) -> Vec<u32> {
        let mut out = vec![start];
        let mut h = self.g.partner(opposite(start));
        while h != start {
            out.push(h);
            h = self.g.partner(opposite(h));
        }
        out
    }

    // Traverses the component entered at `start`, then recurses into the
    // untraversed component through the smallest labelled vertex.
    fn go(&mut self, start: u32, mut labels: Vec<u32>, mut done: Vec<bool>, mut enc: Vec<u32>, mut next_label: u32) {
        let c = self.comp_of[start as usize];
        done[c] = true;
        for h in self.walk(start) {
            let v = vertex_of(h) as usize;
            if labels[v] == 0 {
                labels[v] = next_label;
                next_label += 1;
            }
            enc.push(labels[v]);
        }
        enc.push(0);
        if let Some(best) = &self.best {
            let k = enc.len().min(best.len());
            if enc[..k] > best[..k] {
                return;
            }
        }
        let mut pick: Option<(u32, u32)> = None;
        for h in 0..self.g.half_edge_count() as u32 {
            let c = self.comp_of[h as usize];
            let l = labels[vertex_of(h) as usize];
            if !done[c] && l != 0 && pick.is_none_or(|(pl, _)| l < pl) {
                pick = Some((l, h));
            }
        }
        match pick {
            None => {
                if self.best.as_ref().is_none_or(|b| enc < *b) {
                    self.best = Some(enc);
                }
            }
            Some((_, h)) => {
                for s in [h, opposite(h)] {
                    self.go(s, labels.clone(), done.clone(), enc.clone(), next_label);
                }
            }
        }
    }
}

pub(super) fn canonical_code(g: &FramedGraph) -> CanonicalCode {
    let comps = g.unicursal_components();
    let mut comp_of = vec![0; g.half_edge_count()];
    for (i, c) in comps.iter().enumerate() {
        for &h in c {
            comp_of[h as usize] = i;
            comp_of[opposite(h) as usize] = i;
        }
    }
    // Connected pieces: components sharing a vertex.
    let mut piece = (0..comps.len()).collect::<Vec<_>>();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for v in 0..g.vertex_count() {
        let a = find(&mut piece, comp_of[4 * v]);
        let b = find(&mut piece, comp_of[4 * v + 1]);
        piece[a] = b;
    }
    let mut encodings: Vec<Vec<u32>> = Vec::new();
    let mut search = Search { g, comp_of, best: None };
    let mut root_set: Vec<usize> = (0..comps.len()).map(|c| find(&mut piece, c)).collect();
    root_set.sort_unstable();
    root_set.dedup();
    for r in root_set {
        search.best = None;
        for h in 0..g.half_edge_count() as u32 {
            let c = search.comp_of[h as usize];
            if find(&mut piece, c) != r {
                continue;
            }
            let n = g.vertex_count();
            search.go(h, vec![0; n], vec![false; comps.len()], Vec::new(), 1);
        }
        encodings.push(search.best.take().expect("piece has a component"));
    }
    encodings.sort();
    let mut words = Vec::new();
    let mut offset = 0;
    for enc in encodings {
        let mut top = 0;
        for w in enc.split(|&x| x == 0).filter(|w| !w.is_empty()) {
            top = top.max(*w.iter().max().unwrap());
            words.push(w.iter().map(|&l| l + offset).collect());
        }
        offset += top;
    }
    CanonicalCode { words, free_circles: g.free_circles() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms() {
        assert_eq!(FramedGraph::circles(1).canonical_code().to_string(), "○");
        assert_eq!(FramedGraph::circles(0).canonical_code().to_string(), "∅");
        assert_eq!(FramedGraph::kink().canonical_code().to_string(), "[1,1]");
        let two_loops = FramedGraph::from_edges(1, &[(0, 2), (1, 3)], 1).unwrap();
        assert_eq!(two_loops.canonical_code().to_string(), "[1][1]○");
        for s in ["○", "∅", "[1,1]", "[1][1]○", "[1,2,1,2]"] {
            let c: CanonicalCode = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("[2,1,2,1]".parse::<CanonicalCode>().is_err());
        assert!("[1,2]".parse::<CanonicalCode>().is_err());
        assert!("[1,1]x".parse::<CanonicalCode>().is_err());
    }

    #[test]
    fn relabelled_kink_has_same_code() {
        let a = FramedGraph::from_edges(2, &[(1, 2), (3, 4), (0, 7), (5, 6)], 0).unwrap();
        let b = FramedGraph::from_edges(2, &[(5, 6), (7, 0), (4, 3), (1, 2)], 0).unwrap();
        assert_eq!(a.canonical_code(), b.canonical_code());
    }

    #[test]
    fn code_roundtrips_through_graph() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 0..7 {
            for _ in 0..30 {
                let g = FramedGraph::random(&mut rng, n, n as u32 % 2);
                let c = g.canonical_code();
                assert_eq!(c.to_graph().canonical_code(), c);
                assert_eq!(c.vertex_count(), n);
            }
        }
    }
}
