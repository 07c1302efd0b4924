//! Seeded invariance checks: bracket multisets before and after one
//! Reidemeister move.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::biquandle::{enumerate_colorings, Biquandle};
use crate::bracket::{bracket_multiset, multisets_equal, BracketValue};
use crate::diagram::{apply_move, braid_closure, enumerate_moves, random_diagram_with, MoveKind, MoveSpec, OrientedDiagram};
use crate::error::Result;
use crate::graphs::CanonicalCode;
use crate::ideals::{DeltaSpec, IdealBasis};
use crate::poly::{Letter, Var, VarKind};

/// The biquandles the suite draws from.
pub fn fuzz_biquandles() -> Vec<(&'static str, Biquandle)> {
    vec![("X1", Biquandle::x1()), ("X2", Biquandle::x2()), ("trivial3", Biquandle::trivial(3))]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzCase {
    pub index: usize,
    pub biquandle: String,
    pub variant: u8,
    pub before: String,
    #[serde(rename = "move")]
    pub mv: MoveSpec,
    pub after: String,
    pub colorings: [usize; 2],
    /// Multisets agree modulo the ideal.
    pub equal_mod_ideal: bool,
    /// Symbolic-δ brackets agree after the evaluation A=D=1, B=E=-1, C=F=0, δ=2.
    pub equal_at_smoke_point: bool,
}

impl FuzzCase {
    pub fn passed(&self) -> bool {
        self.colorings[0] == self.colorings[1] && self.equal_mod_ideal && self.equal_at_smoke_point
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub prime: u32,
    pub cases: Vec<FuzzCase>,
    pub passed: usize,
    pub failed: usize,
}

/// A diagram with at most `max_n` crossings: either a random Gauss code or
/// a closed random braid word, which tends to carry third-move sites.
pub fn random_test_diagram<R: Rng>(rng: &mut R, max_n: usize) -> OrientedDiagram {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(0..=max_n);
        random_diagram_with(rng, n, 2)
    } else {
        let strands = rng.gen_range(2..=3);
        let len = rng.gen_range(1..=max_n.max(1));
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        braid_closure(strands, &word).expect("valid braid word")
    }
}

/// A random move, with the move kind chosen uniformly among those available.
pub fn random_move_by_kind<R: Rng>(rng: &mut R, d: &OrientedDiagram) -> MoveSpec {
    let mut by_kind: BTreeMap<u8, Vec<MoveSpec>> = BTreeMap::new();
    for m in enumerate_moves(d) {
        let k = match m.kind() {
            MoveKind::R1Insert => 0,
            MoveKind::R1Delete => 1,
            MoveKind::R2Insert => 2,
            MoveKind::R2Delete => 3,
            MoveKind::R3 => 4,
        };
        by_kind.entry(k).or_default().push(m);
    }
    let kinds: Vec<&Vec<MoveSpec>> = by_kind.values().collect();
    let pool = kinds[rng.gen_range(0..kinds.len())];
    pool[rng.gen_range(0..pool.len())].clone()
}

fn smoke_point(var: Var) -> Option<BigInt> {
    Some(BigInt::from(match var.kind() {
        VarKind::Delta => 2,
        VarKind::Letter { letter: Letter::A | Letter::D, .. } => 1,
        VarKind::Letter { letter: Letter::B | Letter::E, .. } => -1,
        VarKind::Letter { .. } => 0,
        VarKind::Generic(_) => return None,
    }))
}

/// Image of a symbolic-δ value under the evaluation A=D=1, B=E=-1, C=F=0,
/// δ=2, which kills every generator of both ideals.
pub fn smoke_value(v: &BracketValue) -> BTreeMap<CanonicalCode, BigInt> {
    v.terms
        .iter()
        .map(|(c, p)| (c.clone(), p.eval(smoke_point).expect("bracket coefficients only use letters and δ")))
        .filter(|(_, x)| *x != BigInt::from(0))
        .collect()
}

fn smoke_multiset(vs: &[BracketValue]) -> Vec<BTreeMap<CanonicalCode, BigInt>> {
    let mut out: Vec<_> = vs.iter().map(smoke_value).collect();
    out.sort();
    out
}

/// Runs one case. `basis_for` supplies the basis of `I_j(B)` with δ = 1.
pub fn invariance_case<F>(seed: u64, index: usize, max_n: usize, basis_for: &mut F) -> Result<FuzzCase>
where
    F: FnMut(&Biquandle, u8) -> Result<Arc<IdealBasis>>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index as u64);
    let pool = fuzz_biquandles();
    let (name, b) = &pool[rng.gen_range(0..pool.len())];
    let j = rng.gen_range(1..=2u8);
    let before = random_test_diagram(&mut rng, max_n);
    let mv = random_move_by_kind(&mut rng, &before);
    let after = apply_move(&before, &mv)?;
    let delta = DeltaSpec::Value(1);
    let g = basis_for(b, j)?;
    let va = bracket_multiset(&before, b, j, delta)?;
    let vb = bracket_multiset(&after, b, j, delta)?;
    Ok(FuzzCase {
        index,
        biquandle: name.to_string(),
        variant: j,
        before: before.to_string(),
        mv,
        after: after.to_string(),
        colorings: [enumerate_colorings(&before, b).len(), enumerate_colorings(&after, b).len()],
        equal_mod_ideal: multisets_equal(&va, &vb, &g)?,
        equal_at_smoke_point: smoke_multiset(&bracket_multiset(&before, b, j, DeltaSpec::Symbolic)?)
            == smoke_multiset(&bracket_multiset(&after, b, j, DeltaSpec::Symbolic)?),
    })
}

pub fn invariance_fuzz<F>(seed: u64, cases: usize, max_n: usize, prime: u32, mut basis_for: F) -> Result<FuzzReport>
where
    F: FnMut(&Biquandle, u8) -> Result<Arc<IdealBasis>>,
{
    let mut out = Vec::with_capacity(cases);
    for i in 0..cases {
        out.push(invariance_case(seed, i, max_n, &mut basis_for)?);
    }
    let passed = out.iter().filter(|c| c.passed()).count();
    Ok(FuzzReport { seed, prime, failed: out.len() - passed, passed, cases: out })
}
