use pbb::graphs::{CanonicalCode, FramedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Permutations of the four half-edge slots that keep opposite pairs opposite.
const LOCAL: [[u32; 4]; 8] = [
    [0, 1, 2, 3],
    [1, 2, 3, 0],
    [2, 3, 0, 1],
    [3, 0, 1, 2],
    [0, 3, 2, 1],
    [1, 0, 3, 2],
    [2, 1, 0, 3],
    [3, 2, 1, 0],
];

// Explicit isomorphism search, independent of canonical codes.
fn isomorphic(a: &FramedGraph, b: &FramedGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.free_circles() != b.free_circles() {
        return false;
    }
    fn extend(a: &FramedGraph, b: &FramedGraph, map: &mut Vec<Option<(u32, usize)>>, used: &mut Vec<bool>, i: usize) -> bool {
        let n = a.vertex_count();
        if i == n {
            return true;
        }
        let image = |map: &Vec<Option<(u32, usize)>>, h: u32| map[(h / 4) as usize].map(|(v, s)| 4 * v + LOCAL[s][(h % 4) as usize]);
        for v in 0..n as u32 {
            if used[v as usize] {
                continue;
            }
            for s in 0..8 {
                map[i] = Some((v, s));
                let ok = (4 * i as u32..4 * i as u32 + 4).all(|h| match (image(map, h), image(map, a.partner(h))) {
                    (Some(x), Some(y)) => b.partner(x) == y,
                    _ => true,
                });
                if ok {
                    used[v as usize] = true;
                    if extend(a, b, map, used, i + 1) {
                        return true;
                    }
                    used[v as usize] = false;
                }
            }
            map[i] = None;
        }
        false
    }
    extend(a, b, &mut vec![None; n], &mut vec![false; n], 0)
}

fn relabel<R: Rng>(g: &FramedGraph, rng: &mut R) -> FramedGraph {
    let n = g.vertex_count();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let syms: Vec<usize> = (0..n).map(|_| rng.gen_range(0..8)).collect();
    let map = |h: u32| 4 * perm[(h / 4) as usize] + LOCAL[syms[(h / 4) as usize]][(h % 4) as usize];
    let edges: Vec<(u32, u32)> = g.edges().into_iter().map(|(x, y)| (map(x), map(y))).collect();
    FramedGraph::from_edges(n, &edges, g.free_circles()).unwrap()
}

#[test]
fn code_agrees_with_isomorphism_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut graphs = Vec::new();
    for _ in 0..120 {
        let n = rng.gen_range(0..=4);
        graphs.push({ let k = rng.gen_range(0..2); FramedGraph::random(&mut rng, n, k) });
    }
    for _ in 0..60 {
        let g = graphs[rng.gen_range(0..graphs.len())].clone();
        graphs.push(relabel(&g, &mut rng));
    }
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            let (a, b) = (&graphs[i], &graphs[j]);
            assert_eq!(a.canonical_code() == b.canonical_code(), isomorphic(a, b), "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn code_invariant_under_relabeling_up_to_six_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let n = rng.gen_range(0..=6);
        let g = FramedGraph::random(&mut rng, n, 0);
        let h = relabel(&g, &mut rng);
        assert!(isomorphic(&g, &h));
        assert_eq!(g.canonical_code(), h.canonical_code());
    }
}

#[test]
fn normalize_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let n = rng.gen_range(0..=8);
        let g = { let k = rng.gen_range(0..3); FramedGraph::random(&mut rng, n, k) };
        for j in [1, 2] {
            let once = g.normalize(j);
            assert!(once.graph.is_irreducible(j));
            let twice = once.graph.normalize(j);
            assert_eq!(twice.delta_exponent, 0);
            assert_eq!(twice.code, once.code);
        }
    }
}

#[test]
fn code_text_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let n = rng.gen_range(0..=7);
        let c = { let k = rng.gen_range(0..3); FramedGraph::random(&mut rng, n, k) }.canonical_code();
        let back: CanonicalCode = c.to_string().parse().unwrap();
        assert_eq!(back, c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CanonicalCode>(&json).unwrap(), c);
    }
}

#[test]
fn confluence_under_random_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..300 {
        let n = rng.gen_range(0..=8);
        let g = FramedGraph::random(&mut rng, n, 0);
        for j in [1, 2] {
            let reference = g.normalize(j);
            for _ in 0..3 {
                let got = g.normalize_by(j, |sites| rng.gen_range(0..sites.len()));
                assert_eq!((got.code.clone(), got.delta_exponent), (reference.code.clone(), reference.delta_exponent), "{g:?} j={j}");
            }
        }
    }
}
