//! Oriented cycles and cycle systems (interior faces plus an optional rim face).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{seg, EdgeId, Graph, Seg, VertexId};

pub type CycleId = u32;

/// An oriented simple cycle stored as its vertex ring; arc `i` runs
/// `ring[i] -> ring[i + 1 mod len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub id: CycleId,
    pub ring: Vec<VertexId>,
}

impl Cycle {
    pub fn new(id: CycleId, ring: Vec<VertexId>) -> Self {
        Cycle { id, ring }
    }

    /// Build from an arc list; fails unless the arcs chain into one closed simple walk.
    pub fn from_arcs(id: CycleId, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        if arcs.len() < 3 {
            return Err(Error::BadCycle { cycle: id });
        }
        for i in 0..arcs.len() {
            if arcs[i].1 != arcs[(i + 1) % arcs.len()].0 {
                return Err(Error::BadCycle { cycle: id });
            }
        }
        let c = Cycle::new(id, arcs.iter().map(|a| a.0).collect());
        if !c.is_simple() {
            return Err(Error::BadCycle { cycle: id });
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let n = self.ring.len();
        (0..n).map(move |i| (self.ring[i], self.ring[(i + 1) % n]))
    }

    pub fn segs(&self) -> impl Iterator<Item = Seg> + '_ {
        self.arcs().map(|(a, b)| seg(a, b))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.ring.contains(&v)
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.ring.iter().position(|&x| x == v)
    }

    pub fn has_arc(&self, a: VertexId, b: VertexId) -> bool {
        self.arcs().any(|arc| arc == (a, b))
    }

    pub fn is_simple(&self) -> bool {
        let set: BTreeSet<_> = self.ring.iter().collect();
        set.len() == self.ring.len() && self.ring.len() >= 3
    }

    pub fn reversed(&self) -> Cycle {
        let mut ring = self.ring.clone();
        ring.reverse();
        Cycle::new(self.id, ring)
    }

    /// Ring rotated to start at its smallest vertex, direction kept.
    pub fn normalized_ring(&self) -> Vec<VertexId> {
        normalize_ring(&self.ring)
    }

    /// Undirected edge ids, sorted; `None` if some arc is not a graph edge.
    pub fn edge_ids(&self, g: &Graph) -> Option<Vec<EdgeId>> {
        let mut ids: Vec<EdgeId> = self
            .arcs()
            .map(|(a, b)| g.edge_between(a, b))
            .collect::<Option<_>>()?;
        ids.sort_unstable();
        Some(ids)
    }
}

pub fn normalize_ring(ring: &[VertexId]) -> Vec<VertexId> {
    if ring.is_empty() {
        return Vec::new();
    }
    let k = (0..ring.len()).min_by_key(|&i| ring[i]).unwrap();
    ring[k..].iter().chain(&ring[..k]).copied().collect()
}

/// Ring normalized up to rotation and direction.
pub fn undirected_ring(ring: &[VertexId]) -> Vec<VertexId> {
    let a = normalize_ring(ring);
    let mut rev: Vec<VertexId> = ring.to_vec();
    rev.reverse();
    let b = normalize_ring(&rev);
    a.min(b)
}

/// Interior faces plus an optional rim (outer face). A rim of `None` means the
/// faces close up into a sphere.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleSystem {
    pub cycles: Vec<Cycle>,
    pub rim: Option<Cycle>,
}

impl CycleSystem {
    pub fn new(cycles: Vec<Cycle>, rim: Option<Cycle>) -> Self {
        CycleSystem { cycles, rim }
    }

    pub fn faces(&self) -> impl Iterator<Item = &Cycle> {
        self.cycles.iter().chain(self.rim.iter())
    }

    pub fn face_count(&self) -> usize {
        self.cycles.len() + usize::from(self.rim.is_some())
    }

    pub fn cycle(&self, id: CycleId) -> Option<&Cycle> {
        self.cycles.iter().find(|c| c.id == id)
    }

    pub fn ids(&self) -> Vec<CycleId> {
        self.cycles.iter().map(|c| c.id).collect()
    }

    /// Segment multiplicities over cycles and rim.
    pub fn cover(&self) -> BTreeMap<Seg, usize> {
        let mut cover = BTreeMap::new();
        for c in self.faces() {
            for s in c.segs() {
                *cover.entry(s).or_insert(0) += 1;
            }
        }
        cover
    }

    pub fn region_segments(&self) -> BTreeSet<Seg> {
        self.faces().flat_map(|c| c.segs()).collect()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.faces().flat_map(|c| c.ring.iter().copied()).collect()
    }

    /// Vertices with ids above `n`.
    pub fn imaginary(&self, n: u32) -> BTreeSet<VertexId> {
        self.vertices().into_iter().filter(|&v| v > n).collect()
    }

    /// Original edge ids used by the system (segments between original vertices).
    pub fn region_edges(&self, g: &Graph) -> BTreeSet<EdgeId> {
        self.region_segments()
            .into_iter()
            .filter_map(|(a, b)| g.edge_between(a, b))
            .collect()
    }

    pub fn check_maclane(&self) -> Result<()> {
        for (s, k) in self.cover() {
            if k != 2 {
                return Err(Error::Cover(s, k));
            }
        }
        Ok(())
    }

    pub fn euler(&self) -> i64 {
        self.vertices().len() as i64 - self.region_segments().len() as i64
            + self.face_count() as i64
    }

    /// Cycle-id-to-index lookup.
    pub fn index(&self) -> HashMap<CycleId, usize> {
        self.cycles
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id, i))
            .collect()
    }
}

/// GF(2) sum of the segment sets of the given cycles.
pub fn gf2_sum<'a>(cycles: impl IntoIterator<Item = &'a Cycle>) -> BTreeSet<Seg> {
    let mut acc = BTreeSet::new();
    for c in cycles {
        for s in c.segs() {
            if !acc.remove(&s) {
                acc.insert(s);
            }
        }
    }
    acc
}

/// Order a segment set into a single simple ring, or fail.
pub fn ring_from_segments(segs: &BTreeSet<Seg>) -> Result<Vec<VertexId>> {
    if segs.len() < 3 {
        return Err(Error::NotARing);
    }
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(a, b) in segs {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) {
        return Err(Error::NotARing);
    }
    let start = *adj.keys().next().unwrap();
    let mut ring = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        ring.push(cur);
        let next = if adj[&cur][0] == prev {
            adj[&cur][1]
        } else {
            adj[&cur][0]
        };
        prev = cur;
        cur = next;
    }
    if ring.len() != adj.len() {
        return Err(Error::NotARing);
    }
    Ok(ring)
}

/// The boundary ring of a set of consistently oriented faces, oriented so that it
/// traverses each boundary segment against the face containing it.
pub fn boundary_ring<'a>(
    faces: impl IntoIterator<Item = &'a Cycle> + Clone,
) -> Result<Option<Vec<VertexId>>> {
    let sum = gf2_sum(faces.clone());
    if sum.is_empty() {
        return Ok(None);
    }
    let ring = ring_from_segments(&sum)?;
    let (a, b) = (ring[0], ring[1]);
    let forward = faces.into_iter().any(|c| c.has_arc(a, b));
    Ok(Some(if forward {
        let mut r = ring;
        r.reverse();
        normalize_ring(&r)
    } else {
        ring
    }))
}

/// Monotone id source for imaginary vertices and new cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdAllocator {
    pub next_vertex: VertexId,
    pub next_cycle: CycleId,
}

impl IdAllocator {
    pub fn new(next_vertex: VertexId, next_cycle: CycleId) -> Self {
        IdAllocator {
            next_vertex,
            next_cycle,
        }
    }

    pub fn vertex(&mut self) -> VertexId {
        let v = self.next_vertex;
        self.next_vertex += 1;
        v
    }

    pub fn cycle(&mut self) -> CycleId {
        let c = self.next_cycle;
        self.next_cycle += 1;
        c
    }
}
