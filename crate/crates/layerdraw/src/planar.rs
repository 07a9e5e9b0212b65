//! Planar cycle-system selection, orientation, and Hamiltonian rims.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Seg, VertexId};
use crate::system::{
    boundary_ring, gf2_sum, normalize_ring, ring_from_segments, Cycle, CycleId, CycleSystem,
};

/// Edges of the graph left out of a planar cycle system.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChordSet {
    pub chords: Vec<(EdgeId, (VertexId, VertexId))>,
}

impl ChordSet {
    pub fn of(g: &Graph, sys: &CycleSystem) -> Self {
        let used = sys.region_edges(g);
        ChordSet {
            chords: g
                .edge_ids()
                .filter(|e| !used.contains(e))
                .map(|e| (e, g.endpoints(e)))
                .collect(),
        }
    }

    pub fn ids(&self) -> Vec<EdgeId> {
        self.chords.iter().map(|c| c.0).collect()
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct PlanarSubgraph {
    pub system: CycleSystem,
    pub chords: ChordSet,
    /// False when the best system found misses some vertex of the graph.
    pub spanning: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct PlanarOptions {
    /// How many pool cycles are tried as the starting face.
    pub seed_budget: usize,
}

impl Default for PlanarOptions {
    fn default() -> Self {
        PlanarOptions { seed_budget: 256 }
    }
}

struct Disc {
    faces: Vec<Cycle>,
    boundary: Cycle,
    segs: BTreeSet<Seg>,
    verts: BTreeSet<VertexId>,
}

impl Disc {
    fn seed(c: &Cycle) -> Disc {
        Disc {
            faces: vec![c.clone()],
            boundary: c.reversed(),
            segs: c.segs().collect(),
            verts: c.ring.iter().copied().collect(),
        }
    }

    /// If `c` can be glued along a single boundary path, return its oriented
    /// copy, the new boundary, and the number of new edges.
    fn attach(&self, c: &Cycle) -> Option<(Cycle, Vec<VertexId>, usize)> {
        let bsegs: BTreeSet<Seg> = self.boundary.segs().collect();
        let shared: Vec<Seg> = c.segs().filter(|s| bsegs.contains(s)).collect();
        if shared.is_empty() || shared.len() == c.len() {
            return None;
        }
        // shared segments must form one path along `c`, else the glued strip twists
        let on_boundary: Vec<bool> = c.segs().map(|s| bsegs.contains(&s)).collect();
        let k = on_boundary.len();
        let starts = (0..k)
            .filter(|&i| on_boundary[i] && !on_boundary[(i + k - 1) % k])
            .count();
        if starts != 1 {
            return None;
        }
        let mut on_path: BTreeSet<VertexId> = BTreeSet::new();
        for &(a, b) in &shared {
            on_path.insert(a);
            on_path.insert(b);
        }
        let mut fresh = 0;
        for s in c.segs() {
            if !bsegs.contains(&s) {
                if self.segs.contains(&s) {
                    return None;
                }
                fresh += 1;
            }
        }
        if c.ring
            .iter()
            .any(|v| !on_path.contains(v) && self.verts.contains(v))
        {
            return None;
        }
        let mut sum = bsegs;
        for s in c.segs() {
            if !sum.remove(&s) {
                sum.insert(s);
            }
        }
        let ring = ring_from_segments(&sum).ok()?;
        let (a, b) = shared[0];
        let face = if self.boundary.has_arc(a, b) != c.has_arc(a, b) {
            c.reversed()
        } else {
            c.clone()
        };
        let faces = [self.boundary.reversed(), face.clone()];
        let boundary = boundary_ring(faces.iter()).ok()??;
        debug_assert_eq!(boundary.len(), ring.len());
        Some((face, boundary, fresh))
    }

    fn glue(&mut self, face: Cycle, boundary: Vec<VertexId>) {
        self.segs.extend(face.segs());
        self.verts.extend(face.ring.iter().copied());
        self.faces.push(face);
        self.boundary = Cycle::new(0, boundary);
    }
}

fn grow(pool: &[Cycle], seed: usize) -> Disc {
    let mut disc = Disc::seed(&pool[seed]);
    let mut used = vec![false; pool.len()];
    used[seed] = true;
    loop {
        let mut best: Option<(usize, usize, Cycle, Vec<VertexId>)> = None;
        for (i, c) in pool.iter().enumerate() {
            if used[i] {
                continue;
            }
            if let Some((face, boundary, fresh)) = disc.attach(c) {
                if best.as_ref().is_none_or(|b| fresh > b.1) {
                    best = Some((i, fresh, face, boundary));
                }
            }
        }
        match best {
            Some((i, _, face, boundary)) => {
                used[i] = true;
                disc.glue(face, boundary);
            }
            None => return disc,
        }
    }
}

fn pool_id_of(pool: &[Cycle], ring: &[VertexId]) -> CycleId {
    let key = crate::system::undirected_ring(ring);
    pool.iter()
        .find(|c| crate::system::undirected_ring(&c.ring) == key)
        .map_or(0, |c| c.id)
}

/// Greedy disc growth from each seed face; the rim is the final boundary.
/// Best result by (edge count desc, sorted cycle ids asc).
pub fn select_planar_cycle_system(
    g: &Graph,
    pool: &[Cycle],
    opts: PlanarOptions,
) -> PlanarSubgraph {
    let mut best: Option<(usize, Vec<CycleId>, Disc)> = None;
    for seed in 0..pool.len().min(opts.seed_budget) {
        let disc = grow(pool, seed);
        let edges = disc.segs.len();
        let mut ids: Vec<CycleId> = disc.faces.iter().map(|f| f.id).collect();
        ids.sort_unstable();
        let better = match &best {
            None => true,
            Some((be, bids, _)) => edges > *be || (edges == *be && ids < *bids),
        };
        if better {
            best = Some((edges, ids, disc));
        }
    }
    let Some((_, _, disc)) = best else {
        return PlanarSubgraph {
            system: CycleSystem::default(),
            chords: ChordSet::of(g, &CycleSystem::default()),
            spanning: false,
        };
    };
    let mut faces = disc.faces;
    faces.sort_by_key(|f| f.id);
    let rim_ring = normalize_ring(&disc.boundary.ring);
    let rim = Cycle::new(pool_id_of(pool, &rim_ring), rim_ring);
    let system = CycleSystem::new(faces, Some(rim));
    let system = orient_cycles(&system).expect("a grown disc is a valid system");
    let spanning = system.vertices().len() == g.n as usize;
    let chords = ChordSet::of(g, &system);
    PlanarSubgraph {
        system,
        chords,
        spanning,
    }
}

/// System from explicit pool ids. Without an orientation map the cycles are
/// oriented by [`orient_cycles`].
pub fn pinned_system(
    g: &Graph,
    pool: &[Cycle],
    ids: &[CycleId],
    rim: CycleId,
    oriented: Option<&BTreeMap<CycleId, Vec<VertexId>>>,
) -> Result<PlanarSubgraph> {
    let lookup = |id: CycleId| -> Result<Cycle> {
        let base = pool
            .iter()
            .find(|c| c.id == id)
            .ok_or(Error::UnknownCycle(id))?;
        match oriented.and_then(|m| m.get(&id)) {
            Some(ring) => {
                let c = Cycle::new(id, ring.clone());
                let same = crate::system::undirected_ring(ring)
                    == crate::system::undirected_ring(&base.ring);
                if !same || !c.is_simple() {
                    return Err(Error::BadCycle { cycle: id });
                }
                Ok(c)
            }
            None => Ok(base.clone()),
        }
    };
    let cycles = ids
        .iter()
        .map(|&id| lookup(id))
        .collect::<Result<Vec<_>>>()?;
    let sys = CycleSystem::new(cycles, Some(lookup(rim)?));
    let sys = if oriented.is_some() {
        sys.check_maclane()?;
        sys
    } else {
        orient_cycles(&sys)?
    };
    let spanning = sys.vertices().len() == g.n as usize;
    Ok(PlanarSubgraph {
        chords: ChordSet::of(g, &sys),
        system: sys,
        spanning,
    })
}

/// Orient every face so that shared segments are traversed in opposite
/// directions. The first cycle keeps its given direction.
pub fn orient_cycles(sys: &CycleSystem) -> Result<CycleSystem> {
    sys.check_maclane()?;
    let faces: Vec<Cycle> = sys.faces().cloned().collect();
    let mut by_seg: BTreeMap<Seg, Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for s in f.segs() {
            by_seg.entry(s).or_default().push(i);
        }
    }
    let mut out: Vec<Option<Cycle>> = vec![None; faces.len()];
    for start in 0..faces.len() {
        if out[start].is_some() {
            continue;
        }
        out[start] = Some(faces[start].clone());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let fi = out[i].clone().unwrap();
            for (a, b) in fi.arcs() {
                let s = crate::graph::seg(a, b);
                for &j in &by_seg[&s] {
                    if j == i {
                        continue;
                    }
                    match &out[j] {
                        Some(fj) => {
                            if fj.has_arc(a, b) {
                                return Err(Error::Orientation(s));
                            }
                        }
                        None => {
                            let fj = if faces[j].has_arc(a, b) {
                                faces[j].reversed()
                            } else {
                                faces[j].clone()
                            };
                            out[j] = Some(fj);
                            stack.push(j);
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<Cycle> = out.into_iter().map(Option::unwrap).collect();
    let rim = sys.rim.as_ref().map(|_| out.pop().unwrap());
    Ok(CycleSystem::new(out, rim))
}

/// A Hamiltonian ring made of the GF(2) sum of the `inside` cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianRim {
    /// Oriented against the inside faces, starting at the smallest vertex.
    pub ring: Vec<VertexId>,
    pub inside: Vec<CycleId>,
    pub outside: Vec<CycleId>,
}

fn rim_from_inside(g: &Graph, sys: &CycleSystem, inside: &[CycleId]) -> Result<HamiltonianRim> {
    let faces = inside
        .iter()
        .map(|&id| sys.cycle(id).cloned().ok_or(Error::UnknownCycle(id)))
        .collect::<Result<Vec<_>>>()?;
    let ring = boundary_ring(faces.iter())?.ok_or(Error::NotARing)?;
    let hamiltonian = ring.len() == g.n as usize
        && ring.iter().all(|&v| v <= g.n)
        && (0..ring.len()).all(|i| {
            g.edge_between(ring[i], ring[(i + 1) % ring.len()])
                .is_some()
        });
    if !hamiltonian {
        return Err(Error::NoHamiltonian);
    }
    let mut inside: Vec<CycleId> = inside.to_vec();
    inside.sort_unstable();
    let outside = sys
        .cycles
        .iter()
        .map(|c| c.id)
        .filter(|id| !inside.contains(id))
        .collect();
    Ok(HamiltonianRim {
        ring,
        inside,
        outside,
    })
}

/// Check a given inside set.
pub fn hamiltonian_rim_pinned(
    g: &Graph,
    sys: &CycleSystem,
    inside: &[CycleId],
) -> Result<HamiltonianRim> {
    rim_from_inside(g, sys, inside)
}

/// Depth-first search over connected cycle subsets whose sum stays a simple
/// ring, visiting candidates in cycle-id order.
pub fn hamiltonian_rim(g: &Graph, sys: &CycleSystem, budget: usize) -> Result<HamiltonianRim> {
    let n = g.n as usize;
    let mut cycles: Vec<&Cycle> = sys.cycles.iter().collect();
    cycles.sort_by_key(|c| c.id);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut expansions = 0usize;

    fn dfs(
        cycles: &[&Cycle],
        n: usize,
        chosen: &mut Vec<usize>,
        ring: &BTreeSet<Seg>,
        seen: &mut HashSet<Vec<usize>>,
        expansions: &mut usize,
        budget: usize,
    ) -> Option<Vec<usize>> {
        let verts: BTreeSet<VertexId> = ring.iter().flat_map(|&(a, b)| [a, b]).collect();
        if verts.len() == n {
            return Some(chosen.clone());
        }
        for (i, c) in cycles.iter().enumerate() {
            if *expansions >= budget {
                return None;
            }
            if chosen.contains(&i) || !c.segs().any(|s| ring.contains(&s)) {
                continue;
            }
            let mut next = ring.clone();
            for s in c.segs() {
                if !next.remove(&s) {
                    next.insert(s);
                }
            }
            if ring_from_segments(&next).is_err() {
                continue;
            }
            let mut key = chosen.clone();
            key.push(i);
            key.sort_unstable();
            if !seen.insert(key) {
                continue;
            }
            *expansions += 1;
            chosen.push(i);
            if let Some(found) = dfs(cycles, n, chosen, &next, seen, expansions, budget) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    for start in 0..cycles.len() {
        let mut chosen = vec![start];
        let ring = gf2_sum([cycles[start]]);
        if let Some(found) = dfs(
            &cycles,
            n,
            &mut chosen,
            &ring,
            &mut seen,
            &mut expansions,
            budget,
        ) {
            let ids: Vec<CycleId> = found.iter().map(|&i| cycles[i].id).collect();
            if let Ok(rim) = rim_from_inside(g, sys, &ids) {
                return Ok(rim);
            }
        }
        if expansions >= budget {
            break;
        }
    }
    Err(Error::NoHamiltonian)
}
