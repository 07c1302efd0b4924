//! Four-valent graphs with a cross structure, their decreasing first and
//! second moves, and normal forms.
//!
//! Vertex `v` owns half-edges `4v..4v+4`; half-edges `h` and `h ^ 2` are
//! opposite. Edges are a perfect matching on half-edges. Vertexless circles
//! are kept as a count.

mod code;

pub use code::{CanonicalCode, CODE_FORMAT};

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedGraph {
    partner: Vec<u32>,
    free_circles: u32,
}

#[inline]
pub fn opposite(h: u32) -> u32 {
    h ^ 2
}

#[inline]
pub fn vertex_of(h: u32) -> u32 {
    h / 4
}

/// A decreasing move on a graph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "move")]
pub enum Reduction {
    /// A loop at `vertex` joining two non-opposite half-edges.
    R1 { vertex: u32 },
    /// Two vertices joined by two edges that are non-opposite at both ends.
    R2 { vertices: [u32; 2] },
}

impl Reduction {
    pub fn vertices(&self) -> Vec<u32> {
        match *self {
            Reduction::R1 { vertex } => vec![vertex],
            Reduction::R2 { vertices } => vertices.to_vec(),
        }
    }
}

/// Result of [`FramedGraph::normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub graph: FramedGraph,
    pub delta_exponent: u32,
    pub code: CanonicalCode,
}

impl FramedGraph {
    /// Builds a graph from a partner table over `4n` half-edges.
    pub fn new(partner: Vec<u32>, free_circles: u32) -> Result<FramedGraph> {
        if !partner.len().is_multiple_of(4) {
            return Err(Error::Syntax(format!("{} half-edges is not a multiple of 4", partner.len())));
        }
        for (h, &p) in partner.iter().enumerate() {
            let ok = (p as usize) < partner.len() && p as usize != h && partner[p as usize] as usize == h;
            if !ok {
                return Err(Error::Syntax(format!("half-edge {h} is not properly matched")));
            }
        }
        Ok(FramedGraph { partner, free_circles })
    }

    /// Builds a graph on `n` vertices from an edge list of half-edge pairs.
    pub fn from_edges(n: usize, edges: &[(u32, u32)], free_circles: u32) -> Result<FramedGraph> {
        let mut partner = vec![u32::MAX; 4 * n];
        for &(a, b) in edges {
            for h in [a, b] {
                if h as usize >= partner.len() || partner[h as usize] != u32::MAX {
                    return Err(Error::Syntax(format!("half-edge {h} used twice or out of range")));
                }
            }
            if a == b {
                return Err(Error::Syntax(format!("half-edge {a} matched with itself")));
            }
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        FramedGraph::new(partner, free_circles)
    }

    pub fn circles(k: u32) -> FramedGraph {
        FramedGraph { partner: Vec::new(), free_circles: k }
    }

    /// The one-vertex graph with a loop on two non-opposite half-edges.
    pub fn kink() -> FramedGraph {
        FramedGraph::from_edges(1, &[(1, 2), (3, 0)], 0).expect("valid")
    }

    /// Uniformly random perfect matching on `4n` half-edges.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, free_circles: u32) -> FramedGraph {
        let mut hs: Vec<u32> = (0..4 * n as u32).collect();
        let mut partner = vec![0; 4 * n];
        while let Some(a) = hs.pop() {
            let k = rng.gen_range(0..hs.len());
            let b = hs.swap_remove(k);
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        FramedGraph { partner, free_circles }
    }

    pub fn vertex_count(&self) -> usize {
        self.partner.len() / 4
    }

    pub fn half_edge_count(&self) -> usize {
        self.partner.len()
    }

    pub fn free_circles(&self) -> u32 {
        self.free_circles
    }

    pub fn partner(&self, h: u32) -> u32 {
        self.partner[h as usize]
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.partner.len() as u32).filter(|&h| h < self.partner(h)).map(|h| (h, self.partner(h))).collect()
    }

    /// Closed unicursal walks, each listed by the half-edges it enters through.
    /// Every half-edge is an entry of exactly one walk in one direction.
    pub fn unicursal_components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.partner.len()];
        let mut out = Vec::new();
        for start in 0..self.partner.len() as u32 {
            if seen[start as usize] || seen[opposite(start) as usize] {
                continue;
            }
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                seen[h as usize] = true;
                walk.push(h);
                h = self.partner(opposite(h));
                if h == start {
                    break;
                }
            }
            out.push(walk);
        }
        out
    }

    /// All unicursal components including free circles.
    pub fn component_count(&self) -> usize {
        self.unicursal_components().len() + self.free_circles as usize
    }

    pub fn find_reductions(&self, j: u8) -> Vec<Reduction> {
        debug_assert!(j == 1 || j == 2);
        let mut out = Vec::new();
        let n = self.vertex_count() as u32;
        if j == 2 {
            for v in 0..n {
                let has_kink = (4 * v..4 * v + 4).any(|h| {
                    let p = self.partner(h);
                    vertex_of(p) == v && p != opposite(h)
                });
                if has_kink {
                    out.push(Reduction::R1 { vertex: v });
                }
            }
        }
        let mut pairs = BTreeSet::new();
        for u in 0..n {
            for a in 4 * u..4 * u + 4 {
                let pa = self.partner(a);
                let v = vertex_of(pa);
                if v <= u {
                    continue;
                }
                for b in [a ^ 1, a ^ 3] {
                    let pb = self.partner(b);
                    if vertex_of(pb) == v && pb != opposite(pa) {
                        pairs.insert([u, v]);
                    }
                }
            }
        }
        out.extend(pairs.into_iter().map(|vertices| Reduction::R2 { vertices }));
        out
    }

    pub fn is_irreducible(&self, j: u8) -> bool {
        self.find_reductions(j).is_empty()
    }

    /// Applies a decreasing move. Strands are reconnected along the cross
    /// structure; walks closed inside the removed vertices become circles.
    pub fn apply(&self, site: Reduction) -> Result<FramedGraph> {
        if !self.find_reductions(2).contains(&site) {
            return Err(Error::SiteNotFound(format!("{site:?}")));
        }
        Ok(self.delete_vertices(&site.vertices()))
    }

    fn delete_vertices(&self, vs: &[u32]) -> FramedGraph {
        let n = self.vertex_count() as u32;
        let removed = |h: u32| vs.contains(&vertex_of(h));
        let mut new_id = vec![u32::MAX; n as usize];
        let mut next = 0;
        for v in 0..n {
            if !vs.contains(&v) {
                new_id[v as usize] = next;
                next += 1;
            }
        }
        let relabel = |h: u32| 4 * new_id[vertex_of(h) as usize] + h % 4;
        let mut partner = vec![u32::MAX; 4 * next as usize];
        let mut used = vec![false; self.partner.len()];
        for x in 0..self.partner.len() as u32 {
            if removed(x) {
                continue;
            }
            let mut cur = self.partner(x);
            while removed(cur) {
                used[cur as usize] = true;
                used[opposite(cur) as usize] = true;
                cur = self.partner(opposite(cur));
            }
            partner[relabel(x) as usize] = relabel(cur);
        }
        let mut circles = self.free_circles;
        for &v in vs {
            for h in 4 * v..4 * v + 4 {
                if used[h as usize] {
                    continue;
                }
                circles += 1;
                let mut cur = h;
                while !used[cur as usize] {
                    used[cur as usize] = true;
                    used[opposite(cur) as usize] = true;
                    cur = self.partner(opposite(cur));
                }
            }
        }
        FramedGraph { partner, free_circles: circles }
    }

    /// Removes free circles into a δ-exponent. A graph made only of circles
    /// keeps one of them.
    pub fn strip_circles(&self) -> (FramedGraph, u32) {
        let mut g = self.clone();
        if g.partner.is_empty() {
            let e = g.free_circles.saturating_sub(1);
            g.free_circles = g.free_circles.min(1);
            (g, e)
        } else {
            let e = g.free_circles;
            g.free_circles = 0;
            (g, e)
        }
    }

    /// Reduces to the unique `j`-irreducible graph, always taking the first
    /// available site.
    pub fn normalize(&self, j: u8) -> Normalized {
        self.normalize_by(j, |_| 0)
    }

    /// Reduces with `choose` picking the index of the next site to apply.
    pub fn normalize_by<F: FnMut(&[Reduction]) -> usize>(&self, j: u8, mut choose: F) -> Normalized {
        let mut g = self.clone();
        loop {
            let sites = g.find_reductions(j);
            if sites.is_empty() {
                break;
            }
            let k = choose(&sites).min(sites.len() - 1);
            g = g.delete_vertices(&sites[k].vertices());
        }
        let (graph, delta_exponent) = g.strip_circles();
        let code = graph.canonical_code();
        Normalized { graph, delta_exponent, code }
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        code::canonical_code(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // Two vertices joined by a bigon whose other ends close into one strand pair.
    fn bigon_on_circle() -> FramedGraph {
        // u = 0, v = 1; bigon edges 0-4 and 1-5 (non-opposite at both ends),
        // outer ends 2-7 and 3-6.
        FramedGraph::from_edges(2, &[(0, 4), (1, 5), (2, 7), (3, 6)], 0).unwrap()
    }

    #[test]
    fn validation() {
        assert!(FramedGraph::new(vec![1, 0, 3], 0).is_err());
        assert!(FramedGraph::new(vec![1, 0, 2, 3], 0).is_err());
        assert!(FramedGraph::from_edges(1, &[(0, 1), (1, 2)], 0).is_err());
        assert!(FramedGraph::new(vec![1, 0, 3, 2], 0).is_ok());
    }

    #[test]
    fn kink_sites() {
        let k = FramedGraph::kink();
        assert!(k.find_reductions(1).is_empty());
        assert_eq!(k.find_reductions(2), vec![Reduction::R1 { vertex: 0 }]);
        let n = k.normalize(2);
        assert_eq!(n.graph, FramedGraph::circles(1));
        assert_eq!(n.delta_exponent, 0);
        assert_eq!(n.code.to_string(), "○");
        let n1 = k.normalize(1);
        assert_eq!(n1.graph.vertex_count(), 1);
    }

    #[test]
    fn opposite_loop_is_not_a_kink() {
        // Loops 0-2 and 1-3: two circles crossing themselves at a vertex.
        let g = FramedGraph::from_edges(1, &[(0, 2), (1, 3)], 0).unwrap();
        assert!(g.is_irreducible(2));
        assert_eq!(g.unicursal_components().len(), 2);
    }

    #[test]
    fn double_kink_leaves_one_circle() {
        let g = FramedGraph::from_edges(1, &[(0, 1), (2, 3)], 0).unwrap();
        assert_eq!(g.unicursal_components().len(), 1);
        let n = g.normalize(2);
        assert_eq!((n.graph.vertex_count(), n.delta_exponent), (0, 0));
    }

    #[test]
    fn circles_collapse() {
        let n = FramedGraph::circles(2).normalize(1);
        assert_eq!(n.graph, FramedGraph::circles(1));
        assert_eq!(n.delta_exponent, 1);
        let n = FramedGraph::circles(1).normalize(2);
        assert_eq!(n.delta_exponent, 0);
    }

    #[test]
    fn bigon_reduces_to_circle() {
        let g = bigon_on_circle();
        assert_eq!(g.find_reductions(1), vec![Reduction::R2 { vertices: [0, 1] }]);
        let n = g.normalize(1);
        assert_eq!(n.graph, FramedGraph::circles(1));
        assert_eq!(n.delta_exponent, 0);
    }

    #[test]
    fn bigon_with_opposite_edges_is_irreducible() {
        // Edges 0-4 and 2-5 are opposite at u; the loop 6-7 is a kink.
        let g = FramedGraph::from_edges(2, &[(0, 4), (2, 5), (1, 3), (6, 7)], 0).unwrap();
        assert!(g.find_reductions(1).is_empty());
        assert_eq!(g.find_reductions(2), vec![Reduction::R1 { vertex: 1 }]);
    }

    #[test]
    fn apply_rejects_missing_site() {
        let g = bigon_on_circle();
        assert!(g.apply(Reduction::R1 { vertex: 0 }).is_err());
        assert!(g.apply(Reduction::R2 { vertices: [0, 1] }).is_ok());
    }

    #[test]
    fn reductions_shrink_vertex_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(0..7);
            let g = FramedGraph::random(&mut rng, n, 0);
            let before = g.component_count();
            for site in g.find_reductions(2) {
                let h = g.apply(site).unwrap();
                let drop = site.vertices().len();
                assert_eq!(h.vertex_count() + drop, g.vertex_count());
                // R1 keeps the number of unicursal components; R2 may split or join none.
                if drop == 1 {
                    assert_eq!(h.component_count(), before);
                }
            }
        }
    }
}
