//! Finite biquandles: tables, axiom checks and the crossing relation.

mod coloring;
mod io;

pub use coloring::{brute_force_colorings, crossing_colors, enumerate_colorings, Coloring};
pub use io::BiquandleFile;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A finite biquandle on `1..=m`. Tables are row-major in the first argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Biquandle {
    m: usize,
    circ: Vec<usize>,
    star: Vec<usize>,
    // inverse lookups used by the crossing relation
    circ_inv: Vec<usize>,
    star_inv: Vec<usize>,
}

/// One line of an axiom report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub m: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Crossing sign.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// The four strand ends at a crossing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    OverIn,
    OverOut,
    UnderIn,
    UnderOut,
}

/// How `S` acts at a crossing of one sign: `S(args) = outs`, and the skein
/// variable is subscripted by the colours at `subscript`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CrossingRule {
    pub args: [Role; 2],
    pub outs: [Role; 2],
    pub subscript: [Role; 2],
}

/// The pinned colouring convention.
///
/// At a positive crossing `S(over-in, under-out) = (under-in, over-out)`; at
/// a negative crossing `S(over-out, under-in) = (under-out, over-in)`. In
/// both cases the variable subscript is the argument pair of `S`.
pub const CONVENTION: [CrossingRule; 2] = [
    CrossingRule {
        args: [Role::OverIn, Role::UnderOut],
        outs: [Role::UnderIn, Role::OverOut],
        subscript: [Role::OverIn, Role::UnderOut],
    },
    CrossingRule {
        args: [Role::OverOut, Role::UnderIn],
        outs: [Role::UnderOut, Role::OverIn],
        subscript: [Role::OverOut, Role::UnderIn],
    },
];

pub fn rule(sign: Sign) -> &'static CrossingRule {
    match sign {
        Sign::Positive => &CONVENTION[0],
        Sign::Negative => &CONVENTION[1],
    }
}

fn check_shape(m: usize, name: &str, t: &[Vec<usize>]) -> Result<()> {
    if t.len() != m || t.iter().any(|r| r.len() != m) {
        return Err(Error::MalformedTable(format!("{name} table must be {m}x{m}")));
    }
    for (x, row) in t.iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            if !(1..=m).contains(&v) {
                return Err(Error::MalformedTable(format!(
                    "{name}[{}][{}] = {v} is outside 1..={m}",
                    x + 1,
                    y + 1
                )));
            }
        }
    }
    Ok(())
}

/// Checks the four axioms on candidate tables.
pub fn verify_axioms(m: usize, circ: &[Vec<usize>], star: &[Vec<usize>]) -> Result<AxiomReport> {
    if m == 0 {
        return Err(Error::MalformedTable("empty biquandle".into()));
    }
    check_shape(m, "circ", circ)?;
    check_shape(m, "star", star)?;
    let c = |x: usize, y: usize| circ[x - 1][y - 1];
    let s = |x: usize, y: usize| star[x - 1][y - 1];
    let elems = || 1..=m;
    let mut checks = Vec::new();

    let r1 = elems().find(|&x| c(x, x) != s(x, x));
    checks.push(AxiomCheck { axiom: "R1".into(), pass: r1.is_none(), witness: r1.map(|x| vec![x]) });

    let not_perm = |f: &dyn Fn(usize) -> usize| {
        let mut seen = vec![false; m + 1];
        elems().any(|x| std::mem::replace(&mut seen[f(x)], true))
    };
    let r2 = elems().find(|&y| not_perm(&|x| c(x, y)) || not_perm(&|x| s(x, y)));
    checks.push(AxiomCheck { axiom: "R2".into(), pass: r2.is_none(), witness: r2.map(|y| vec![y]) });

    let mut hit = vec![None; (m + 1) * (m + 1)];
    let mut r3 = None;
    'outer: for x in elems() {
        for y in elems() {
            let k = s(y, x) * (m + 1) + c(x, y);
            if let Some((x0, y0)) = hit[k] {
                r3 = Some(vec![x0, y0, x, y]);
                break 'outer;
            }
            hit[k] = Some((x, y));
        }
    }
    checks.push(AxiomCheck { axiom: "R3".into(), pass: r3.is_none(), witness: r3 });

    let mut r4 = None;
    'ex: for x in elems() {
        for y in elems() {
            for z in elems() {
                let ok = c(c(x, z), c(y, z)) == c(c(x, y), s(z, y))
                    && s(c(y, z), c(x, z)) == c(s(y, x), s(z, x))
                    && s(s(z, x), s(y, x)) == s(s(z, y), c(x, y));
                if !ok {
                    r4 = Some(vec![x, y, z]);
                    break 'ex;
                }
            }
        }
    }
    checks.push(AxiomCheck { axiom: "R4".into(), pass: r4.is_none(), witness: r4 });
    Ok(AxiomReport { m, checks })
}

impl Biquandle {
    /// Builds a biquandle, rejecting tables that fail an axiom.
    pub fn new(circ: Vec<Vec<usize>>, star: Vec<Vec<usize>>) -> Result<Biquandle> {
        let m = circ.len();
        let report = verify_axioms(m, &circ, &star)?;
        if let Some(f) = report.first_failure() {
            let axiom = match f.axiom.as_str() {
                "R1" => "R1",
                "R2" => "R2",
                "R3" => "R3",
                _ => "R4",
            };
            return Err(Error::AxiomViolation { axiom, witness: f.witness.clone().unwrap_or_default() });
        }
        let flat = |t: &[Vec<usize>]| t.iter().flatten().copied().collect::<Vec<_>>();
        let (circ, star) = (flat(&circ), flat(&star));
        let mut circ_inv = vec![0; m * m];
        let mut star_inv = vec![0; m * m];
        for x in 1..=m {
            for y in 1..=m {
                circ_inv[(circ[(x - 1) * m + y - 1] - 1) * m + y - 1] = x;
                star_inv[(star[(x - 1) * m + y - 1] - 1) * m + y - 1] = x;
            }
        }
        Ok(Biquandle { m, circ, star, circ_inv, star_inv })
    }

    /// `x∘y = x∗y = x`.
    pub fn trivial(m: usize) -> Biquandle {
        let t: Vec<Vec<usize>> = (1..=m).map(|x| vec![x; m]).collect();
        Biquandle::new(t.clone(), t).expect("trivial biquandle")
    }

    /// First example biquandle of the minimality computations.
    pub fn x1() -> Biquandle {
        Biquandle::new(
            vec![vec![1, 1, 1], vec![3, 3, 3], vec![2, 2, 2]],
            vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]],
        )
        .expect("X1")
    }

    /// Second example biquandle (used with the Borromean rings).
    pub fn x2() -> Biquandle {
        let t = vec![vec![3, 3, 3], vec![1, 1, 1], vec![2, 2, 2]];
        Biquandle::new(t.clone(), t).expect("X2")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn circ(&self, x: usize, y: usize) -> usize {
        self.circ[(x - 1) * self.m + y - 1]
    }

    pub fn star(&self, x: usize, y: usize) -> usize {
        self.star[(x - 1) * self.m + y - 1]
    }

    /// The unique `x` with `x∘y = z`.
    pub fn circ_solve(&self, z: usize, y: usize) -> usize {
        self.circ_inv[(z - 1) * self.m + y - 1]
    }

    /// The unique `x` with `x∗y = z`.
    pub fn star_solve(&self, z: usize, y: usize) -> usize {
        self.star_inv[(z - 1) * self.m + y - 1]
    }

    /// `S(x, y) = (y∗x, x∘y)`.
    pub fn s_map(&self, x: usize, y: usize) -> (usize, usize) {
        (self.star(y, x), self.circ(x, y))
    }

    pub fn s_inverse(&self, z: usize, w: usize) -> (usize, usize) {
        for x in 1..=self.m {
            for y in 1..=self.m {
                if self.s_map(x, y) == (z, w) {
                    return (x, y);
                }
            }
        }
        unreachable!("S is a bijection")
    }

    pub fn circ_rows(&self) -> Vec<Vec<usize>> {
        self.circ.chunks(self.m).map(|r| r.to_vec()).collect()
    }

    pub fn star_rows(&self) -> Vec<Vec<usize>> {
        self.star.chunks(self.m).map(|r| r.to_vec()).collect()
    }

    /// Outgoing colours `(under_out, over_out)` from the incoming ones.
    pub fn crossing_relation(&self, sign: Sign, under_in: usize, over_in: usize) -> (usize, usize) {
        match sign {
            // S(oi, uo) = (ui, oo): uo∗oi = ui, oo = oi∘uo
            Sign::Positive => {
                let uo = self.star_solve(under_in, over_in);
                (uo, self.circ(over_in, uo))
            }
            // S(oo, ui) = (uo, oi): oo∘ui = oi, uo = ui∗oo
            Sign::Negative => {
                let oo = self.circ_solve(over_in, under_in);
                (self.star(under_in, oo), oo)
            }
        }
    }

    /// Subscript pair of the skein variable at a crossing with these colours.
    pub fn subscript(sign: Sign, colors: impl Fn(Role) -> usize) -> (usize, usize) {
        let r = rule(sign);
        (colors(r.subscript[0]), colors(r.subscript[1]))
    }

    /// Content hash of the tables (hex SHA-256).
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("biquandle:v1:{}:", self.m));
        for v in self.circ.iter().chain(self.star.iter()) {
            h.update((*v as u32).to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Enumerates all valid biquandles of order `m` by brute force; only
    /// feasible for `m <= 2`.
    pub fn all_of_order(m: usize) -> Vec<Biquandle> {
        let cells = m * m;
        let total = (m as u64).pow(2 * cells as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut k = code;
            let mut vals = Vec::with_capacity(2 * cells);
            for _ in 0..2 * cells {
                vals.push((k % m as u64) as usize + 1);
                k /= m as u64;
            }
            let circ: Vec<Vec<usize>> = vals[..cells].chunks(m).map(|r| r.to_vec()).collect();
            let star: Vec<Vec<usize>> = vals[cells..].chunks(m).map(|r| r.to_vec()).collect();
            if let Ok(b) = Biquandle::new(circ, star) {
                out.push(b);
            }
        }
        out
    }
}

/// Relabels elements by the permutation `tau` (1-based values).
pub fn relabel(b: &Biquandle, tau: &[usize]) -> Biquandle {
    let m = b.m();
    let mut inv = vec![0; m + 1];
    for (i, &t) in tau.iter().enumerate() {
        inv[t] = i + 1;
    }
    let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (1..=m).map(|x| (1..=m).map(|y| tau[op(inv[x], inv[y]) - 1]).collect()).collect()
    };
    Biquandle::new(table(&|x, y| b.circ(x, y)), table(&|x, y| b.star(x, y))).expect("relabelled biquandle")
}

/// Draws a random valid biquandle with `2 <= m <= max_m`.
///
/// Candidates come from affine tables `x∘y = ax + by + c`, `x∗y = dx + ey + f`
/// over `Z_m`, constant-row tables `x∘y = σ(x)`, and relabelled copies of the
/// two example biquandles; each candidate is kept only if it passes the axioms.
pub fn random_biquandle<R: rand::Rng>(rng: &mut R, max_m: usize) -> Biquandle {
    use rand::seq::SliceRandom;
    assert!(max_m >= 2);
    loop {
        let m = rng.gen_range(2..=max_m);
        let mut tau: Vec<usize> = (1..=m).collect();
        tau.shuffle(rng);
        let cand = match rng.gen_range(0..4) {
            0 => {
                let k: Vec<usize> = (0..6).map(|_| rng.gen_range(0..m)).collect();
                let table = |a: usize, b: usize, c: usize| -> Vec<Vec<usize>> {
                    (0..m).map(|x| (0..m).map(|y| (a * x + b * y + c) % m + 1).collect()).collect()
                };
                Biquandle::new(table(k[0], k[1], k[2]), table(k[3], k[4], k[5])).ok()
            }
            1 => {
                let t: Vec<Vec<usize>> = tau.iter().map(|&s| vec![s; m]).collect();
                Biquandle::new(t.clone(), t).ok()
            }
            _ if m == 3 => {
                let base = if rng.gen_bool(0.5) { Biquandle::x1() } else { Biquandle::x2() };
                Some(relabel(&base, &tau))
            }
            _ => None,
        };
        if let Some(b) = cand {
            return b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_tables_pass() {
        let b = Biquandle::x1();
        assert!(verify_axioms(3, &b.circ_rows(), &b.star_rows()).unwrap().passed());
        let b = Biquandle::x2();
        assert!(verify_axioms(3, &b.circ_rows(), &b.star_rows()).unwrap().passed());
        let t = Biquandle::trivial(3);
        assert!(verify_axioms(3, &t.circ_rows(), &t.star_rows()).unwrap().passed());
    }

    #[test]
    fn broken_star_column_fails_r2() {
        let b = Biquandle::x1();
        let mut star = b.star_rows();
        star[1][0] = 1; // column y=1 becomes (1,1,3)
        let rep = verify_axioms(3, &b.circ_rows(), &star).unwrap();
        let f = rep.first_failure().unwrap();
        assert_eq!(f.axiom, "R2");
        assert_eq!(f.witness, Some(vec![1]));
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(verify_axioms(2, &[vec![1, 2]], &[vec![1, 2], vec![1, 2]]), Err(Error::MalformedTable(_))));
        assert!(matches!(
            verify_axioms(2, &[vec![1, 3], vec![1, 2]], &[vec![1, 2], vec![1, 2]]),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn s_is_bijective_on_x2() {
        let b = Biquandle::x2();
        let mut images: Vec<_> = (1..=3).flat_map(|x| (1..=3).map(move |y| (x, y))).map(|(x, y)| b.s_map(x, y)).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 9);
        let (z, w) = b.s_map(1, 2);
        assert_eq!(b.s_inverse(z, w), (1, 2));
    }

    #[test]
    fn crossing_relation_matches_s() {
        for b in [Biquandle::x1(), Biquandle::x2(), Biquandle::trivial(3)] {
            for ui in 1..=3 {
                for oi in 1..=3 {
                    let (uo, oo) = b.crossing_relation(Sign::Positive, ui, oi);
                    assert_eq!(b.s_map(oi, uo), (ui, oo));
                    let (uo, oo) = b.crossing_relation(Sign::Negative, ui, oi);
                    assert_eq!(b.s_map(oo, ui), (uo, oi));
                }
            }
        }
        let t = Biquandle::trivial(3);
        assert_eq!(t.crossing_relation(Sign::Positive, 1, 2), (1, 2));
        assert_eq!(t.crossing_relation(Sign::Negative, 1, 2), (1, 2));
    }

    #[test]
    fn random_biquandles_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let b = random_biquandle(&mut rng, 4);
            assert!(verify_axioms(b.m(), &b.circ_rows(), &b.star_rows()).unwrap().passed());
        }
    }

    #[test]
    fn small_orders_enumerate() {
        assert_eq!(Biquandle::all_of_order(1).len(), 1);
        let two = Biquandle::all_of_order(2);
        assert!(two.iter().any(|b| *b == Biquandle::trivial(2)));
        for b in &two {
            assert!(verify_axioms(2, &b.circ_rows(), &b.star_rows()).unwrap().passed());
        }
    }
}
