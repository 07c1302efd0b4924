//! Oriented Reidemeister moves on signed Gauss codes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{OrientedDiagram, Passage, Pos, Sign};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    R1Insert,
    R1Delete,
    R2Insert,
    R2Delete,
    R3,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum R2Kind {
    /// Both strands pass the two crossings in the same order.
    Parallel,
    /// The under strand passes them in the opposite order.
    Antiparallel,
}

/// A Reidemeister move with its site. An insertion site `(component, k)`
/// is the semiarc entering passage `k` of that component (`k = 0` on an
/// empty component).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum MoveSpec {
    R1Insert { site: Pos, over_first: bool, sign: Sign },
    R1Delete { crossing: u32 },
    /// The over strand is inserted at `over_site`, the under strand at
    /// `under_site`; the first crossing met by the over strand gets `sign`.
    R2Insert { over_site: Pos, under_site: Pos, kind: R2Kind, sign: Sign },
    R2Delete { crossings: [u32; 2] },
    R3 { crossings: [u32; 3] },
}

impl MoveSpec {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSpec::R1Insert { .. } => MoveKind::R1Insert,
            MoveSpec::R1Delete { .. } => MoveKind::R1Delete,
            MoveSpec::R2Insert { .. } => MoveKind::R2Insert,
            MoveSpec::R2Delete { .. } => MoveKind::R2Delete,
            MoveSpec::R3 { .. } => MoveKind::R3,
        }
    }
}

fn cyc_next(d: &OrientedDiagram, (c, i): Pos) -> Pos {
    (c, (i + 1) % d.components()[c].len())
}

fn check_site(d: &OrientedDiagram, (c, k): Pos) -> Result<()> {
    let comp = d.components().get(c).ok_or_else(|| Error::SiteNotFound(format!("no component {c}")))?;
    if k >= comp.len().max(1) {
        return Err(Error::SiteNotFound(format!("no semiarc {k} on component {c}")));
    }
    Ok(())
}

/// Inserts `seq` on the semiarc entering passage `k` of component `c`.
fn insert_at(comps: &mut [Vec<Passage>], (c, k): Pos, seq: &[Passage]) {
    let comp = &mut comps[c];
    // inserting before passage k is the semiarc entering it
    let at = if k == 0 { comp.len() } else { k };
    comp.splice(at..at, seq.iter().copied());
}

fn remove_crossings(comps: &mut [Vec<Passage>], ids: &[u32]) {
    for comp in comps.iter_mut() {
        comp.retain(|p| !ids.contains(&p.crossing));
    }
}

/// Applies `m`, returning the new diagram.
pub fn apply(d: &OrientedDiagram, m: &MoveSpec) -> Result<OrientedDiagram> {
    let mut out = d.clone();
    let fresh = d.max_crossing_id() + 1;
    match *m {
        MoveSpec::R1Insert { site, over_first, sign } => {
            check_site(d, site)?;
            let (a, b) = (Passage::over(fresh, sign), Passage::under(fresh, sign));
            let seq = if over_first { [a, b] } else { [b, a] };
            insert_at(out.components_mut(), site, &seq);
        }
        MoveSpec::R1Delete { crossing } => {
            let (o, u) = d.locate(crossing).ok_or_else(|| Error::SiteNotFound(format!("crossing {crossing}")))?;
            if o.0 != u.0 || (cyc_next(d, o) != u && cyc_next(d, u) != o) {
                return Err(Error::PatternMismatch(format!("crossing {crossing} is not a kink")));
            }
            remove_crossings(out.components_mut(), &[crossing]);
        }
        MoveSpec::R2Insert { over_site, under_site, kind, sign } => {
            check_site(d, over_site)?;
            check_site(d, under_site)?;
            let (c1, c2) = (fresh, fresh + 1);
            let (s1, s2) = (sign, sign.flip());
            let over = [Passage::over(c1, s1), Passage::over(c2, s2)];
            let under = match kind {
                R2Kind::Parallel => [Passage::under(c1, s1), Passage::under(c2, s2)],
                R2Kind::Antiparallel => [Passage::under(c2, s2), Passage::under(c1, s1)],
            };
            if over_site == under_site {
                // both strands on one semiarc: over pair first, then under pair
                let seq = [over[0], over[1], under[0], under[1]];
                insert_at(out.components_mut(), over_site, &seq);
            } else {
                // insert at the later site first so the earlier index stays valid
                let key = |(c, k): Pos| (c, if k == 0 { usize::MAX } else { k });
                if key(over_site) > key(under_site) {
                    insert_at(out.components_mut(), over_site, &over);
                    insert_at(out.components_mut(), under_site, &under);
                } else {
                    insert_at(out.components_mut(), under_site, &under);
                    insert_at(out.components_mut(), over_site, &over);
                }
            }
        }
        MoveSpec::R2Delete { crossings: [a, b] } => {
            if !r2_deletable(d, a, b) {
                return Err(Error::PatternMismatch(format!("crossings {a}, {b} do not form a bigon")));
            }
            remove_crossings(out.components_mut(), &[a, b]);
        }
        MoveSpec::R3 { crossings } => {
            let segs = r3_segments(d, crossings)
                .ok_or_else(|| Error::PatternMismatch(format!("crossings {crossings:?} do not form an R3 triangle")))?;
            let comps = out.components_mut();
            for (first, second) in segs {
                let t = comps[first.0][first.1];
                comps[first.0][first.1] = comps[second.0][second.1];
                comps[second.0][second.1] = t;
            }
        }
    }
    OrientedDiagram::new(out.components().to_vec())
}

fn r2_deletable(d: &OrientedDiagram, a: u32, b: u32) -> bool {
    if a == b {
        return false;
    }
    let (Some((oa, ua)), Some((ob, ub))) = (d.locate(a), d.locate(b)) else { return false };
    if d.sign_of(a) == d.sign_of(b) {
        return false;
    }
    let adjacent = |x: Pos, y: Pos| x.0 == y.0 && (cyc_next(d, x) == y || cyc_next(d, y) == x);
    adjacent(oa, ob) && adjacent(ua, ub)
}

/// For a braid-like triangle returns the three strand segments as pairs of
/// adjacent positions `(first, second)` in traversal order.
fn r3_segments(d: &OrientedDiagram, ids: [u32; 3]) -> Option<Vec<(Pos, Pos)>> {
    let mut locs = Vec::new();
    for &c in &ids {
        let (o, u) = d.locate(c)?;
        locs.push((c, o, u));
    }
    if ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2] {
        return None;
    }
    // every adjacent pair of passages through two of the three crossings
    let all: Vec<Pos> = locs.iter().flat_map(|&(_, o, u)| [o, u]).collect();
    let cross_at = |p: Pos| d.components()[p.0][p.1];
    let mut segs: Vec<(Pos, Pos)> = Vec::new();
    for &p in &all {
        let q = cyc_next(d, p);
        if q != p && all.contains(&q) && cross_at(p).crossing != cross_at(q).crossing {
            segs.push((p, q));
        }
    }
    // choose three segments that use each passage exactly once
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            for k in j + 1..segs.len() {
                let pick = [segs[i], segs[j], segs[k]];
                let mut used: Vec<Pos> = pick.iter().flat_map(|&(a, b)| [a, b]).collect();
                used.sort();
                used.dedup();
                if used.len() == 6 {
                    if let Some(found) = braid_triangle(d, ids, &pick) {
                        return Some(found);
                    }
                }
            }
        }
    }
    None
}

fn braid_triangle(d: &OrientedDiagram, ids: [u32; 3], segs: &[(Pos, Pos)]) -> Option<Vec<(Pos, Pos)>> {
    let cross_at = |p: Pos| d.components()[p.0][p.1];
    // braid-like flow: one crossing is first on both of its segments
    let first_of = |c: u32| segs.iter().filter(|s| cross_at(s.0).crossing == c).count();
    let p = *ids.iter().find(|&&c| first_of(c) == 2)?;
    let r = *ids.iter().find(|&&c| first_of(c) == 0)?;
    let q = *ids.iter().find(|&&c| c != p && c != r)?;
    let seg = |a: u32, b: u32| segs.iter().copied().find(|s| cross_at(s.0).crossing == a && cross_at(s.1).crossing == b);
    let (x, y, z) = (seg(p, q)?, seg(p, r)?, seg(q, r)?);
    let sign = |c: u32| d.sign_of(c).unwrap() == Sign::Positive;
    // σ1σ2σ1 picture: the strand moving right is over at a positive crossing
    let type1 = sign(p) == cross_at(x.0).over && sign(q) == cross_at(x.1).over && sign(r) == cross_at(y.1).over;
    let type2 = sign(p) != cross_at(x.0).over && sign(q) != cross_at(x.1).over && sign(r) != cross_at(y.1).over;
    if !(type1 || type2) {
        return None;
    }
    // the over relation must be a total order
    let x_over_y = cross_at(x.0).over;
    let x_over_z = cross_at(x.1).over;
    let y_over_z = cross_at(y.1).over;
    let cyclic = (x_over_y && y_over_z && !x_over_z) || (!x_over_y && !y_over_z && x_over_z);
    if cyclic {
        return None;
    }
    Some(vec![x, y, z])
}

/// Every move applicable to `d`, in a deterministic order. Insertions use
/// fresh crossing ids.
pub fn enumerate_moves(d: &OrientedDiagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    let sites: Vec<Pos> =
        d.components().iter().enumerate().flat_map(|(c, comp)| (0..comp.len().max(1)).map(move |k| (c, k))).collect();
    for &site in &sites {
        for over_first in [true, false] {
            for sign in [Sign::Positive, Sign::Negative] {
                out.push(MoveSpec::R1Insert { site, over_first, sign });
            }
        }
    }
    let ids = d.crossing_ids();
    for &c in &ids {
        if apply(d, &MoveSpec::R1Delete { crossing: c }).is_ok() {
            out.push(MoveSpec::R1Delete { crossing: c });
        }
    }
    for &a in &sites {
        for &b in &sites {
            for kind in [R2Kind::Parallel, R2Kind::Antiparallel] {
                for sign in [Sign::Positive, Sign::Negative] {
                    out.push(MoveSpec::R2Insert { over_site: a, under_site: b, kind, sign });
                }
            }
        }
    }
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if r2_deletable(d, a, b) {
                out.push(MoveSpec::R2Delete { crossings: [a, b] });
            }
        }
    }
    for (i, &a) in ids.iter().enumerate() {
        for (j, &b) in ids.iter().enumerate().skip(i + 1) {
            for &c in &ids[j + 1..] {
                if r3_segments(d, [a, b, c]).is_some() {
                    out.push(MoveSpec::R3 { crossings: [a, b, c] });
                }
            }
        }
    }
    out
}

/// Moves that undo `m` once applied to `d` (giving `after`).
pub fn inverse(d: &OrientedDiagram, m: &MoveSpec, after: &OrientedDiagram) -> MoveSpec {
    let fresh = d.max_crossing_id() + 1;
    let _ = after;
    match *m {
        MoveSpec::R1Insert { .. } => MoveSpec::R1Delete { crossing: fresh },
        MoveSpec::R2Insert { .. } => MoveSpec::R2Delete { crossings: [fresh, fresh + 1] },
        MoveSpec::R3 { crossings } => MoveSpec::R3 { crossings },
        _ => panic!("inverse of a deletion needs the deleted site"),
    }
}

/// A random signed Gauss code with `n` crossings on up to `comps` components.
/// Every such code is a valid virtual diagram.
pub fn random_diagram(n: usize, comps: usize, seed: u64) -> OrientedDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_diagram_with(&mut rng, n, comps)
}

pub fn random_diagram_with<R: Rng>(rng: &mut R, n: usize, comps: usize) -> OrientedDiagram {
    let comps = comps.max(1);
    let mut passages: Vec<Passage> = Vec::with_capacity(2 * n);
    for c in 1..=n as u32 {
        let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        passages.push(Passage::over(c, sign));
        passages.push(Passage::under(c, sign));
    }
    passages.shuffle(rng);
    let k = rng.gen_range(1..=comps);
    // cut points split the shuffled word into k cyclic components
    let mut cuts: Vec<usize> = (0..k - 1).map(|_| rng.gen_range(0..=passages.len())).collect();
    cuts.sort_unstable();
    let mut out = Vec::new();
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(passages.len())) {
        out.push(passages[prev..c].to_vec());
        prev = c;
    }
    OrientedDiagram::new(out).expect("random diagram").canonicalize()
}

/// Picks a random applicable move.
pub fn random_move<R: Rng>(rng: &mut R, d: &OrientedDiagram) -> MoveSpec {
    let moves = enumerate_moves(d);
    let deletions: Vec<&MoveSpec> =
        moves.iter().filter(|m| !matches!(m, MoveSpec::R1Insert { .. } | MoveSpec::R2Insert { .. })).collect();
    // favour R3 and deletions, which are rare among all candidates
    if !deletions.is_empty() && rng.gen_bool(0.5) {
        return deletions[rng.gen_range(0..deletions.len())].clone();
    }
    moves[rng.gen_range(0..moves.len())].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> OrientedDiagram {
        OrientedDiagram::parse(s).unwrap()
    }

    #[test]
    fn r1_on_unknot() {
        let k = apply(&OrientedDiagram::unknot(), &MoveSpec::R1Insert { site: (0, 0), over_first: true, sign: Sign::Positive })
            .unwrap();
        assert_eq!(k.to_string(), "O1+U1+");
        let back = apply(&k, &MoveSpec::R1Delete { crossing: 1 }).unwrap();
        assert_eq!(back.to_string(), "()");
        assert!(matches!(
            apply(&d("O1+U2+O3+U1+O2+U3+"), &MoveSpec::R1Delete { crossing: 1 }),
            Err(Error::PatternMismatch(_))
        ));
    }

    #[test]
    fn r2_round_trip_on_trefoil() {
        let t = d("O1+U2+O3+U1+O2+U3+");
        let m = MoveSpec::R2Insert { over_site: (0, 1), under_site: (0, 4), kind: R2Kind::Parallel, sign: Sign::Positive };
        let t2 = apply(&t, &m).unwrap();
        assert_eq!(t2.crossing_count(), 5);
        let back = apply(&t2, &inverse(&t, &m, &t2)).unwrap();
        assert_eq!(back.rotation_normal(), t.rotation_normal());
        assert!(matches!(
            apply(&t, &MoveSpec::R2Delete { crossings: [1, 2] }),
            Err(Error::PatternMismatch(_))
        ));
    }

    #[test]
    fn r3_on_braid_relation() {
        // closure of s1 s2 s1 is related to the closure of s2 s1 s2
        let a = super::super::braid_closure(3, &[1, 2, 1]).unwrap();
        let moves = enumerate_moves(&a);
        let r3: Vec<_> = moves.iter().filter(|m| m.kind() == MoveKind::R3).collect();
        assert_eq!(r3.len(), 1);
        let b = apply(&a, r3[0]).unwrap();
        assert_ne!(a, b);
        let again = apply(&b, r3[0]).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn moves_change_crossing_count_as_expected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(0..5);
            let dg = random_diagram_with(&mut rng, n, 2);
            let m = random_move(&mut rng, &dg);
            let after = apply(&dg, &m).unwrap();
            let delta = after.crossing_count() as i64 - dg.crossing_count() as i64;
            let want = match m.kind() {
                MoveKind::R1Insert => 1,
                MoveKind::R1Delete => -1,
                MoveKind::R2Insert => 2,
                MoveKind::R2Delete => -2,
                MoveKind::R3 => 0,
            };
            assert_eq!(delta, want);
            assert_eq!(after.component_count(), dg.component_count());
        }
    }
}
