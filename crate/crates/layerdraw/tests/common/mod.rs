//! Random instances shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use layerdraw::graph::{seg, Seg, VertexId};
use layerdraw::intersect::CoordinateBasis;
use layerdraw::system::boundary_ring;
use layerdraw::{Cycle, CycleSystem};
use rand::seq::SliceRandom;
use rand::Rng;

/// Stacked triangulation on `n` vertices with some adjacent faces merged,
/// one face held out as the rim. Every face is consistently oriented.
pub fn random_planar_system<R: Rng>(rng: &mut R, n: u32) -> CycleSystem {
    let mut faces: Vec<Vec<VertexId>> = vec![vec![1, 2, 3], vec![1, 3, 2]];
    for v in 4..=n {
        let i = rng.gen_range(0..faces.len());
        let f = faces.swap_remove(i);
        let (a, b, c) = (f[0], f[1], f[2]);
        faces.extend([vec![a, b, v], vec![b, c, v], vec![c, a, v]]);
    }
    let merges = rng.gen_range(0..=(n as usize / 2));
    for _ in 0..merges {
        let deg = degrees(&faces);
        let i = rng.gen_range(0..faces.len());
        let fi = Cycle::new(0, faces[i].clone());
        let Some(j) = (0..faces.len()).find(|&j| {
            j != i && {
                let fj = Cycle::new(0, faces[j].clone());
                let shared: Vec<Seg> = fi.segs().filter(|s| fj.segs().any(|t| t == *s)).collect();
                shared.len() == 1 && deg[&shared[0].0] > 3 && deg[&shared[0].1] > 3
            }
        }) else {
            continue;
        };
        let fj = Cycle::new(0, faces[j].clone());
        let Ok(Some(ring)) = boundary_ring([&fi, &fj]) else {
            continue;
        };
        let mut merged = ring;
        merged.reverse();
        let (hi, lo) = (i.max(j), i.min(j));
        faces.remove(hi);
        faces.remove(lo);
        faces.push(merged);
    }
    let k = rng.gen_range(0..faces.len());
    let rim = faces.remove(k);
    let cycles = faces
        .into_iter()
        .enumerate()
        .map(|(i, r)| Cycle::new(i as u32 + 1, r))
        .collect();
    CycleSystem::new(cycles, Some(Cycle::new(0, rim)))
}

fn degrees(faces: &[Vec<VertexId>]) -> BTreeMap<VertexId, usize> {
    let mut nb: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for f in faces {
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            nb.entry(a).or_default().insert(b);
            nb.entry(b).or_default().insert(a);
        }
    }
    nb.into_iter().map(|(v, s)| (v, s.len())).collect()
}

/// Neighbour sets of all faces, rim included.
pub fn neighbours(sys: &CycleSystem) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
    let mut nb: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for c in sys.faces() {
        for (a, b) in c.arcs() {
            nb.entry(a).or_default().insert(b);
            nb.entry(b).or_default().insert(a);
        }
    }
    nb
}

/// A shuffled ring on `1..=l` with shuffled edge ids.
pub fn random_basis<R: Rng>(rng: &mut R, l: u32) -> CoordinateBasis {
    let mut ring: Vec<VertexId> = (1..=l).collect();
    ring.shuffle(rng);
    let mut edges: Vec<u32> = (1..=l).map(|i| i * 3).collect();
    edges.shuffle(rng);
    CoordinateBasis::with_edges(ring, edges)
}

pub fn is_segment(sys: &CycleSystem, a: VertexId, b: VertexId) -> bool {
    sys.faces().any(|c| c.segs().any(|s| s == seg(a, b)))
}
