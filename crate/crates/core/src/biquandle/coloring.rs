use serde::{Deserialize, Serialize};

use super::Biquandle;
use crate::diagram::{CrossingArcs, OrientedDiagram};

/// Colours indexed by semiarc id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn color(&self, arc: usize) -> usize {
        self.0[arc]
    }

    /// True when the crossing relation holds at every crossing.
    pub fn is_valid(&self, d: &OrientedDiagram, b: &Biquandle) -> bool {
        self.0.len() == d.semiarc_count()
            && self.0.iter().all(|&c| (1..=b.m()).contains(&c))
            && d.crossings().iter().all(|x| holds(b, x, &self.0))
    }
}

fn holds(b: &Biquandle, x: &CrossingArcs, col: &[usize]) -> bool {
    b.crossing_relation(x.sign, col[x.under_in], col[x.over_in]) == (col[x.under_out], col[x.over_out])
}

/// All colourings, sorted lexicographically by semiarc id.
///
/// Colours are chosen for the lowest unassigned semiarc and pushed through
/// every crossing whose two incoming colours are known.
pub fn enumerate_colorings(d: &OrientedDiagram, b: &Biquandle) -> Vec<Coloring> {
    let n_arcs = d.semiarc_count();
    let crossings = d.crossings();
    // crossings entered by each semiarc
    let mut entering: Vec<Vec<usize>> = vec![Vec::new(); n_arcs];
    for (i, x) in crossings.iter().enumerate() {
        entering[x.over_in].push(i);
        entering[x.under_in].push(i);
    }
    let mut out = Vec::new();
    let mut col = vec![0usize; n_arcs];
    search(b, &crossings, &entering, &mut col, &mut out);
    out.sort();
    out
}

fn propagate(
    b: &Biquandle,
    crossings: &[CrossingArcs],
    entering: &[Vec<usize>],
    col: &mut [usize],
    assigned: &mut Vec<usize>,
    start: usize,
) -> bool {
    let mut stack = vec![start];
    while let Some(arc) = stack.pop() {
        for &ci in &entering[arc] {
            let x = &crossings[ci];
            let (ui, oi) = (col[x.under_in], col[x.over_in]);
            if ui == 0 || oi == 0 {
                continue;
            }
            let (uo, oo) = b.crossing_relation(x.sign, ui, oi);
            for (arc, c) in [(x.under_out, uo), (x.over_out, oo)] {
                if col[arc] == 0 {
                    col[arc] = c;
                    assigned.push(arc);
                    stack.push(arc);
                } else if col[arc] != c {
                    return false;
                }
            }
        }
    }
    true
}

fn search(
    b: &Biquandle,
    crossings: &[CrossingArcs],
    entering: &[Vec<usize>],
    col: &mut Vec<usize>,
    out: &mut Vec<Coloring>,
) {
    let Some(arc) = col.iter().position(|&c| c == 0) else {
        out.push(Coloring(col.clone()));
        return;
    };
    for c in 1..=b.m() {
        let mut assigned = vec![arc];
        col[arc] = c;
        if propagate(b, crossings, entering, col, &mut assigned, arc) {
            search(b, crossings, entering, col, out);
        }
        for a in assigned {
            col[a] = 0;
        }
    }
}

/// Test oracle: checks all `m^(2n)` assignments.
pub fn brute_force_colorings(d: &OrientedDiagram, b: &Biquandle) -> Vec<Coloring> {
    let n_arcs = d.semiarc_count();
    let crossings = d.crossings();
    let m = b.m();
    let total = m.checked_pow(n_arcs as u32).expect("too many assignments");
    let mut out = Vec::new();
    for code in 0..total {
        let mut k = code;
        let mut col = vec![0; n_arcs];
        for slot in col.iter_mut().rev() {
            *slot = k % m + 1;
            k /= m;
        }
        if crossings.iter().all(|x| holds(b, x, &col)) {
            out.push(Coloring(col));
        }
    }
    out
}

/// The colours at a crossing as `(over_in, under_in, over_out, under_out)`.
pub fn crossing_colors(x: &CrossingArcs, col: &Coloring) -> [usize; 4] {
    [col.0[x.over_in], col.0[x.under_in], col.0[x.over_out], col.0[x.under_out]]
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_counts() {
        let x1 = Biquandle::x1();
        assert_eq!(enumerate_colorings(&OrientedDiagram::unknot(), &x1).len(), 3);
        let unlink = OrientedDiagram::parse("(), ()").unwrap();
        assert_eq!(enumerate_colorings(&unlink, &Biquandle::x2()).len(), 9);
        let t = OrientedDiagram::parse("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(enumerate_colorings(&t, &Biquandle::trivial(3)).len(), 3);
    }

    #[test]
    fn agrees_with_brute_force_on_trefoil() {
        let t = OrientedDiagram::parse("O1+U2+O3+U1+O2+U3+").unwrap();
        for b in [Biquandle::x1(), Biquandle::x2(), Biquandle::trivial(2)] {
            let fast = enumerate_colorings(&t, &b);
            assert_eq!(fast, brute_force_colorings(&t, &b));
            assert!(fast.iter().all(|c| c.is_valid(&t, &b)));
        }
    }
}
