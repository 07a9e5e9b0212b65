mod common;

use std::collections::BTreeSet;

use layerdraw::intersect::interleaved;
use layerdraw::router::{build_mixed_cycle_graph, insert_connection, shortest_route};
use layerdraw::system::IdAllocator;
use layerdraw::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_nonseparable(seed: u64, n: u32, p: f64) -> Option<Graph> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, edges).ok()?;
    validate_nonseparable(&g).is_ok().then_some(g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn crossing_matches_interleaving(seed in any::<u64>(), l in 4u32..16, a in 0u32..16, b in 0u32..16, c in 0u32..16, d in 0u32..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = common::random_basis(&mut rng, l);
        let v = |i: u32| basis.ring[(i % l) as usize];
        let x = (1, (v(a), v(b)));
        let y = (2, (v(c), v(d)));
        let adjacent = |(p, q): (u32, u32)| {
            let (i, j) = (basis.position(p).unwrap(), basis.position(q).unwrap());
            let gap = (i + l as usize - j) % l as usize;
            p == q || gap == 1 || gap == l as usize - 1
        };
        prop_assume!(!adjacent(x.1) && !adjacent(y.1));
        prop_assert_eq!(Some(chords_cross(&basis, x, y).unwrap()), interleaved(&basis, x.1, y.1));
        prop_assert_eq!(chords_cross(&basis, x, y).unwrap(), chords_cross(&basis, y, x).unwrap());
    }

    #[test]
    fn selection_is_pairwise_noncrossing(seed in any::<u64>(), l in 5u32..12, k in 1usize..8) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = common::random_basis(&mut rng, l);
        let chords: Vec<Chord> = (0..k).map(|i| {
            let a = basis.ring[rng.gen_range(0..l as usize)];
            let b = loop {
                let b = basis.ring[rng.gen_range(0..l as usize)];
                if b != a { break b; }
            };
            (i as u32 + 100, (a, b))
        }).collect();
        let (kept, deferred) = select_noncrossing(&basis, &chords).unwrap();
        prop_assert_eq!(kept.len() + deferred.len(), chords.len());
        for i in 0..kept.len() {
            for j in i + 1..kept.len() {
                prop_assert!(!chords_cross(&basis, kept[i], kept[j]).unwrap());
            }
        }
        let best = brute_force_max_noncrossing(&basis, &chords).unwrap();
        prop_assert!(kept.len() <= best.len());
    }

    #[test]
    fn insertions_keep_the_sphere_valid(seed in any::<u64>(), n in 4u32..=10) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sys = common::random_planar_system(&mut rng, n);
        let mut ids = IdAllocator::new(n + 1, 1000);
        let mut banned = BTreeSet::new();
        for chord in 0..4 {
            let (s, t) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
            if s == t || common::is_segment(&sys, s, t) {
                continue;
            }
            let Some(route) = shortest_route(&build_mixed_cycle_graph(&sys, &banned), s, t) else { continue };
            let before = sys.clone();
            match insert_connection(&mut sys, (chord, (s, t)), &route, &mut ids) {
                Ok(ins) => {
                    prop_assert_eq!(sys.face_count(), before.face_count() + route.cycles.len());
                    prop_assert_eq!(ins.crossings.len(), route.links.len());
                    banned.extend(ins.pieces.iter().copied());
                }
                Err(_) => prop_assert_eq!(&sys, &before),
            }
            prop_assert!(sys.check_maclane().is_ok());
            prop_assert_eq!(sys.euler(), 2);
            for (v, nb) in common::neighbours(&sys) {
                if v > n {
                    prop_assert_eq!(nb.len(), 4);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_graphs_decompose_and_verify(seed in any::<u64>(), n in 5u32..=9, p in 0.45f64..0.9) {
        let g = random_nonseparable(seed, n, p);
        prop_assume!(g.is_some());
        let g = g.unwrap();
        let d = decompose(&g, DecomposeOptions::default()).unwrap();
        let doc = DecompositionDocument::of(&d);
        let rep = verify_document(&doc);
        prop_assert!(rep.is_ok(), "{}", rep);
        let text = doc.to_json();
        let back = DecompositionDocument::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        let total: usize = layer_edge_partition(&d).values().map(Vec::len).sum();
        prop_assert_eq!(total, g.m());
    }

    #[test]
    fn single_endpoint_corruption_is_caught(seed in any::<u64>(), n in 5u32..=7) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut doc = DecompositionDocument::of(&decompose(&Graph::complete(n), DecomposeOptions::default()).unwrap());
        let li = rng.gen_range(0..doc.layers.len());
        let layer = &mut doc.layers[li];
        let ci = rng.gen_range(0..layer.cycles.len());
        let face = &mut layer.cycles[ci];
        let ai = rng.gen_range(0..face.arcs.len());
        let end = rng.gen_range(0..2);
        let old = face.arcs[ai][end];
        face.arcs[ai][end] = if old == 1 { 2 } else { old - 1 };
        prop_assert!(!verify_document(&doc).is_ok());
    }
}
