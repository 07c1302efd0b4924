//! Planar-diagram codes `X[i,j,k,l]`: labels listed counterclockwise from
//! the incoming under-strand, so the under-strand runs `i -> k`.

use std::collections::BTreeMap;

use super::{OrientedDiagram, Passage, Sign};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PdCrossing(pub [u32; 4]);

fn parse_crossings(text: &str) -> Result<Vec<PdCrossing>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    if let Some(inner) = rest.strip_prefix("PD[").and_then(|r| r.strip_suffix(']')) {
        rest = inner;
    }
    let mut offset = 0;
    while let Some(p) = rest[offset..].find(['X', 'x']) {
        let start = offset + p;
        let open = rest[start..].find('[').ok_or_else(|| Error::Syntax(format!("expected `[` after X at {start}")))?;
        let close = rest[start..].find(']').ok_or_else(|| Error::Syntax(format!("unclosed X[ at {start}")))?;
        let body = &rest[start + open + 1..start + close];
        let nums: std::result::Result<Vec<u32>, _> = body.split(',').map(|s| s.trim().parse::<u32>()).collect();
        let nums = nums.map_err(|_| Error::Syntax(format!("bad label in `X[{body}]`")))?;
        if nums.len() != 4 {
            return Err(Error::Syntax(format!("`X[{body}]` needs four labels")));
        }
        out.push(PdCrossing([nums[0], nums[1], nums[2], nums[3]]));
        offset = start + close + 1;
    }
    Ok(out)
}

/// Converts PD code text to a signed Gauss code. Planarity is not checked.
pub fn parse_pd(text: &str) -> Result<OrientedDiagram> {
    let xs = parse_crossings(text)?;
    if xs.is_empty() {
        return Err(Error::Syntax("PD code without crossings".into()));
    }
    // slot (crossing, position) per label
    let mut slots: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, x) in xs.iter().enumerate() {
        for (pos, &lab) in x.0.iter().enumerate() {
            slots.entry(lab).or_default().push((c, pos));
        }
    }
    for (lab, s) in &slots {
        if s.len() != 2 {
            return Err(Error::Syntax(format!("label {lab} occurs {} times", s.len())));
        }
    }
    // incoming[c][pos] = Some(true) if the label enters crossing c at slot pos
    let mut incoming = vec![[None::<bool>; 4]; xs.len()];
    for row in incoming.iter_mut() {
        row[0] = Some(true);
        row[2] = Some(false);
    }
    let other = |lab: u32, c: usize, pos: usize| -> (usize, usize) {
        let s = &slots[&lab];
        if s[0] == (c, pos) {
            s[1]
        } else {
            s[0]
        }
    };
    // propagate: an edge enters at one end and leaves at the other, the over
    // strand enters at one of positions 1, 3 and leaves at the other
    let mut changed = true;
    let mut guess_from = 0;
    loop {
        while changed {
            changed = false;
            for c in 0..xs.len() {
                for pos in 0..4 {
                    if let Some(dir) = incoming[c][pos] {
                        let (c2, p2) = other(xs[c].0[pos], c, pos);
                        match incoming[c2][p2] {
                            None => {
                                incoming[c2][p2] = Some(!dir);
                                changed = true;
                            }
                            Some(d2) if d2 == dir && (c2, p2) != (c, pos) => {
                                return Err(Error::Syntax(format!("inconsistent orientation at label {}", xs[c].0[pos])))
                            }
                            _ => {}
                        }
                        if pos % 2 == 1 && incoming[c][4 - pos].is_none() {
                            incoming[c][4 - pos] = Some(!dir);
                            changed = true;
                        }
                    }
                }
            }
        }
        // an over-only component leaves its direction open; use label order
        let Some(c) = (guess_from..xs.len()).find(|&c| incoming[c][1].is_none()) else { break };
        guess_from = c;
        let [_, j, _, l] = xs[c].0;
        let j_in = l == j + 1 || (j > l + 1);
        incoming[c][1] = Some(j_in);
        incoming[c][3] = Some(!j_in);
        changed = true;
    }
    // walk components
    let mut used = vec![[false; 4]; xs.len()];
    let mut comps = Vec::new();
    for c0 in 0..xs.len() {
        for p0 in 0..4 {
            if incoming[c0][p0] != Some(true) || used[c0][p0] {
                continue;
            }
            let mut comp = Vec::new();
            let (mut c, mut p) = (c0, p0);
            while !used[c][p] {
                used[c][p] = true;
                let over = p % 2 == 1;
                // over runs 1 -> 3 for a negative crossing and 3 -> 1 for a positive one
                let sign = if incoming[c][1] == Some(true) { Sign::Negative } else { Sign::Positive };
                comp.push(Passage { crossing: c as u32 + 1, over, sign });
                let out = (p + 2) % 4;
                used[c][out] = true;
                let (c2, p2) = other(xs[c].0[out], c, out);
                c = c2;
                p = p2;
            }
            comps.push(comp);
        }
    }
    OrientedDiagram::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_trefoil_from_table() {
        // this PD is the left-handed trefoil: all crossings negative
        let d = parse_pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), -3);
    }

    #[test]
    fn figure_eight_has_zero_writhe() {
        let d = parse_pd("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]").unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn hopf_link() {
        let d = parse_pd("X[4,1,3,2], X[2,3,1,4]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.writhe().abs(), 2);
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(parse_pd("X[1,2,3]").is_err());
        assert!(parse_pd("X[1,2,3,4]").is_err());
    }
}
