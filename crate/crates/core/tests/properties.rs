use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use pbb::biquandle::{enumerate_colorings, Biquandle};
use pbb::bracket::{bracket, certify_minimality, certify_nonmembership, expand_states, MembershipVerdict};
use pbb::diagram::{apply_move, braid_closure, enumerate_moves, MoveKind, OrientedDiagram};
use pbb::fuzz::{random_move_by_kind, random_test_diagram};
use pbb::ideals::{build_ideal, DeltaSpec, IdealBasis};
use pbb::poly::{Domain, Monomial, MonomialOrder, Polynomial};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_basis() -> Arc<IdealBasis> {
    static B: OnceLock<Arc<IdealBasis>> = OnceLock::new();
    B.get_or_init(|| {
        let spec = build_ideal(&Biquandle::trivial(2), 2, DeltaSpec::Value(1)).unwrap();
        Arc::new(IdealBasis::compute(&spec, 101, MonomialOrder::DegRevLex, None).unwrap())
    })
    .clone()
}

fn diagram(seed: u64, max_n: usize) -> OrientedDiagram {
    random_test_diagram(&mut ChaCha8Rng::seed_from_u64(seed), max_n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integer_combinations_of_generators_are_never_certified_outside(seed in any::<u64>()) {
        let spec = build_ideal(&Biquandle::trivial(2), 2, DeltaSpec::Value(1)).unwrap();
        let g = small_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = Polynomial::zero(Domain::Integers);
        for _ in 0..rng.gen_range(1..4) {
            let gen = &spec.generators[rng.gen_range(0..spec.generators.len())];
            let vars: Vec<_> = gen.vars().into_iter().collect();
            let m = Monomial::from_pairs((0..rng.gen_range(0..3)).map(|_| (vars[rng.gen_range(0..vars.len())], 1)));
            f = f.try_add(&gen.mul_monomial(&m).scale(BigInt::from(rng.gen_range(-500i64..500)))).unwrap();
        }
        prop_assert_eq!(certify_nonmembership(&f, &g).unwrap(), MembershipVerdict::InconclusiveMemberModP);
    }

    #[test]
    fn state_count_is_three_to_the_n(seed in any::<u64>()) {
        let d = diagram(seed, 5);
        let b = Biquandle::x1();
        if let Some(f) = enumerate_colorings(&d, &b).first() {
            prop_assert_eq!(expand_states(&d, f, &b).unwrap().len(), 3usize.pow(d.crossing_count() as u32));
        }
    }

    #[test]
    fn bracket_does_not_depend_on_the_schedule(seed in any::<u64>()) {
        let d = diagram(seed, 5);
        let b = Biquandle::x2();
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let wide = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        for f in enumerate_colorings(&d, &b).iter().take(3) {
            for j in [1, 2] {
                let a = single.install(|| bracket(&d, f, &b, j, DeltaSpec::Symbolic).unwrap());
                let c = wide.install(|| bracket(&d, f, &b, j, DeltaSpec::Symbolic).unwrap());
                prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
            }
        }
    }

    #[test]
    fn coloring_counts_survive_moves(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_test_diagram(&mut rng, 6);
        let mv = random_move_by_kind(&mut rng, &d);
        let e = apply_move(&d, &mv).unwrap();
        for b in [Biquandle::x1(), Biquandle::x2(), Biquandle::trivial(3)] {
            prop_assert_eq!(enumerate_colorings(&d, &b).len(), enumerate_colorings(&e, &b).len());
        }
    }
}

/// Leading graphs of 8_18 keep at least eight vertices after extra moves.
#[test]
fn leading_graphs_of_perturbed_8_18_stay_large() {
    let b = Biquandle::x1();
    let spec = build_ideal(&b, 2, DeltaSpec::Value(1)).unwrap();
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("gb-cache");
    let g = IdealBasis::load_or_compute(&spec, 32003, MonomialOrder::DegRevLex, &dir, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(818);
    let base = braid_closure(3, &[1, -2, 1, -2, 1, -2, 1, -2]).unwrap();
    let mut small = Vec::new();
    for _ in 0..3 {
        let mut d = base.clone();
        for _ in 0..rng.gen_range(1..=2) {
            // insertions only, so the crossing count stays within reach
            let moves: Vec<_> = enumerate_moves(&d)
                .into_iter()
                .filter(|m| matches!(m.kind(), MoveKind::R1Insert | MoveKind::R2Insert))
                .filter(|m| d.crossing_count() + if m.kind() == MoveKind::R1Insert { 1 } else { 2 } <= 9)
                .collect();
            if moves.is_empty() {
                break;
            }
            d = apply_move(&d, &moves[rng.gen_range(0..moves.len())]).unwrap();
        }
        let cert = certify_minimality(&d, &b, &g).unwrap();
        for e in &cert.entries {
            for t in &e.leading {
                if t.vertices < 8 {
                    small.push(format!("{d}: {} with {} vertices", t.code, t.vertices));
                }
            }
        }
    }
    assert!(small.is_empty(), "{} small leading graphs, first {:?}", small.len(), small.first());
}
