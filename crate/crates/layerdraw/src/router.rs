//! Mixed cycle graph, shortest routes, and connection insertion.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{seg, Seg, VertexId};
use crate::intersect::Chord;
use crate::system::{Cycle, CycleId, CycleSystem, IdAllocator};

/// Cycle nodes linked through conjugate segments, plus vertex-to-cycle incidence.
#[derive(Debug, Clone, Default)]
pub struct MixedCycleGraph {
    pub links: BTreeMap<CycleId, Vec<(CycleId, Seg)>>,
    pub on_vertex: BTreeMap<VertexId, Vec<CycleId>>,
    pub banned: BTreeSet<Seg>,
}

impl MixedCycleGraph {
    pub fn neighbours(&self, c: CycleId) -> &[(CycleId, Seg)] {
        self.links.get(&c).map_or(&[], |v| v.as_slice())
    }

    pub fn link(&self, a: CycleId, b: CycleId) -> Option<Seg> {
        self.neighbours(a).iter().find(|l| l.0 == b).map(|l| l.1)
    }

    pub fn cycles_at(&self, v: VertexId) -> &[CycleId] {
        self.on_vertex.get(&v).map_or(&[], |v| v.as_slice())
    }
}

/// Links exist between cycles sharing exactly one segment that is not banned.
/// The rim of `sys` is not a node.
pub fn build_mixed_cycle_graph(sys: &CycleSystem, banned: &BTreeSet<Seg>) -> MixedCycleGraph {
    let mut by_seg: BTreeMap<Seg, Vec<CycleId>> = BTreeMap::new();
    let mut on_vertex: BTreeMap<VertexId, Vec<CycleId>> = BTreeMap::new();
    let mut links: BTreeMap<CycleId, Vec<(CycleId, Seg)>> = BTreeMap::new();
    for c in &sys.cycles {
        links.entry(c.id).or_default();
        for s in c.segs() {
            by_seg.entry(s).or_default().push(c.id);
        }
        for &v in &c.ring {
            on_vertex.entry(v).or_default().push(c.id);
        }
    }
    let mut shared: BTreeMap<(CycleId, CycleId), Vec<Seg>> = BTreeMap::new();
    for (s, cs) in &by_seg {
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                let key = (cs[i].min(cs[j]), cs[i].max(cs[j]));
                shared.entry(key).or_default().push(*s);
            }
        }
    }
    for ((a, b), segs) in shared {
        if segs.len() == 1 && !banned.contains(&segs[0]) {
            links.get_mut(&a).unwrap().push((b, segs[0]));
            links.get_mut(&b).unwrap().push((a, segs[0]));
        }
    }
    for l in links.values_mut() {
        l.sort_unstable();
    }
    for l in on_vertex.values_mut() {
        l.sort_unstable();
    }
    MixedCycleGraph {
        links,
        on_vertex,
        banned: banned.clone(),
    }
}

/// The unique shared segment of two cycles.
pub fn conjugate_edge(a: &Cycle, b: &Cycle) -> Result<Seg> {
    let sa: BTreeSet<Seg> = a.segs().collect();
    let shared: Vec<Seg> = b.segs().filter(|s| sa.contains(s)).collect();
    if a.id == b.id || shared.len() != 1 {
        return Err(Error::NotConjugate(a.id, b.id, shared.len()));
    }
    Ok(shared[0])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub source: VertexId,
    pub target: VertexId,
    pub cycles: Vec<CycleId>,
    /// `links[i]` is the conjugate segment between `cycles[i]` and `cycles[i + 1]`.
    pub links: Vec<Seg>,
}

/// Fewest cycle nodes from a cycle through `s` to a cycle through `t`; among
/// those, the lexicographically smallest cycle-id sequence.
pub fn shortest_route(mcg: &MixedCycleGraph, s: VertexId, t: VertexId) -> Option<Route> {
    let mut dist: BTreeMap<CycleId, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &c in mcg.cycles_at(t) {
        dist.insert(c, 1);
        queue.push_back(c);
    }
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        for &(w, _) in mcg.neighbours(c) {
            if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(w) {
                slot.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    let start = mcg
        .cycles_at(s)
        .iter()
        .filter_map(|c| dist.get(c).map(|&d| (d, *c)))
        .min()?;
    let mut cycles = vec![start.1];
    let mut links = Vec::new();
    let mut d = start.0;
    let mut cur = start.1;
    while d > 1 {
        let &(next, link) = mcg
            .neighbours(cur)
            .iter()
            .find(|(w, _)| dist.get(w) == Some(&(d - 1)))
            .expect("BFS layers are consistent");
        cycles.push(next);
        links.push(link);
        cur = next;
        d -= 1;
    }
    Some(Route {
        source: s,
        target: t,
        cycles,
        links,
    })
}

/// The route determined by its sequence of crossed segments.
pub fn route_from_crossings(
    sys: &CycleSystem,
    s: VertexId,
    t: VertexId,
    crossings: &[Seg],
) -> Result<Route> {
    let holding = |sg: Seg| -> Vec<&Cycle> {
        sys.cycles
            .iter()
            .filter(|c| c.segs().any(|x| x == sg))
            .collect()
    };
    let mut cycles = Vec::new();
    if crossings.is_empty() {
        let c = sys
            .cycles
            .iter()
            .filter(|c| c.contains(s) && c.contains(t))
            .min_by_key(|c| c.id)
            .ok_or_else(|| Error::BadRoute(format!("no cycle holds both {s} and {t}")))?;
        cycles.push(c.id);
    } else {
        let first = holding(crossings[0]);
        let starts: Vec<&&Cycle> = first.iter().filter(|c| c.contains(s)).collect();
        if first.len() != 2 || starts.len() != 1 {
            return Err(Error::BadRoute(format!(
                "crossing {:?} does not start unambiguously at {s}",
                crossings[0]
            )));
        }
        let mut cur = starts[0].id;
        cycles.push(cur);
        for &x in crossings {
            let pair = holding(x);
            if pair.len() != 2 || !pair.iter().any(|c| c.id == cur) {
                return Err(Error::BadRoute(format!(
                    "crossing {x:?} not on cycle {cur}"
                )));
            }
            cur = pair.iter().find(|c| c.id != cur).unwrap().id;
            cycles.push(cur);
        }
    }
    let last = sys.cycle(*cycles.last().unwrap()).unwrap();
    if !last.contains(t) {
        return Err(Error::BadRoute(format!("route does not reach {t}")));
    }
    Ok(Route {
        source: s,
        target: t,
        cycles,
        links: crossings.to_vec(),
    })
}

/// One imaginary vertex created by an insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub vertex: VertexId,
    /// Endpoints of the segment that was subdivided.
    pub host: Seg,
    /// 1-based index along the connection from its source.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Insertion {
    pub crossings: Vec<Crossing>,
    /// (retired cycle, first half, second half) in route order.
    pub splits: Vec<(CycleId, CycleId, CycleId)>,
    /// Connection pieces from source to target.
    pub pieces: Vec<Seg>,
}

fn subdivide(ring: &mut Vec<VertexId>, a: VertexId, b: VertexId, x: VertexId) -> bool {
    let l = ring.len();
    for i in 0..l {
        let (p, q) = (ring[i], ring[(i + 1) % l]);
        if (p, q) == (a, b) || (p, q) == (b, a) {
            ring.insert(i + 1, x);
            return true;
        }
    }
    false
}

/// Subdivide each link segment with a new imaginary vertex and split every route
/// cycle along the connection piece crossing it.
///
/// A split starts from the chord endpoint when the cycle holds one as a split
/// point, otherwise from the entry point; the first half runs forward from the
/// start to the other split point and closes back, the second half takes the
/// remaining arc.
pub fn insert_connection(
    sys: &mut CycleSystem,
    chord: Chord,
    route: &Route,
    ids: &mut IdAllocator,
) -> Result<Insertion> {
    let (_, (s, t)) = chord;
    if (route.source, route.target) != (s, t) {
        return Err(Error::BadRoute("route endpoints differ from chord".into()));
    }
    if route.cycles.len() != route.links.len() + 1 {
        return Err(Error::BadRoute(
            "link count must be one less than cycle count".into(),
        ));
    }
    let index = sys.index();
    let mut work: Vec<Cycle> = Vec::with_capacity(route.cycles.len());
    for &id in &route.cycles {
        let &i = index.get(&id).ok_or(Error::UnknownCycle(id))?;
        work.push(sys.cycles[i].clone());
    }
    let distinct: BTreeSet<_> = route.cycles.iter().collect();
    if distinct.len() != route.cycles.len() {
        return Err(Error::BadRoute("route repeats a cycle".into()));
    }
    if !work[0].contains(s) || !work.last().unwrap().contains(t) {
        return Err(Error::BadRoute("chord endpoints not on route ends".into()));
    }
    for i in 0..route.links.len() {
        let link = conjugate_edge(&work[i], &work[i + 1])?;
        if link != route.links[i] {
            return Err(Error::BadRoute(format!(
                "cycles {} and {} meet at {:?}, not {:?}",
                work[i].id,
                work[i + 1].id,
                link,
                route.links[i]
            )));
        }
    }

    let mut crossings = Vec::new();
    let mut points = vec![s];
    let start_vertex = ids.next_vertex;
    for (i, &(a, b)) in route.links.iter().enumerate() {
        let x = start_vertex + i as VertexId;
        let left = subdivide(&mut work[i].ring, a, b, x);
        let right = subdivide(&mut work[i + 1].ring, a, b, x);
        debug_assert!(left && right);
        crossings.push(Crossing {
            vertex: x,
            host: (a, b),
            position: i + 1,
        });
        points.push(x);
    }
    points.push(t);

    let mut halves = Vec::new();
    for (j, c) in work.iter().enumerate() {
        let (entry, exit) = (points[j], points[j + 1]);
        let (p, q) = if entry == s || entry == t {
            (entry, exit)
        } else if exit == s || exit == t {
            (exit, entry)
        } else {
            (entry, exit)
        };
        let l = c.len();
        let pi = c.position(p).ok_or(Error::Degenerate { cycle: c.id })?;
        let qi = c.position(q).ok_or(Error::Degenerate { cycle: c.id })?;
        let k = (qi + l - pi) % l;
        if k <= 1 || k >= l - 1 {
            return Err(Error::Degenerate { cycle: c.id });
        }
        let rot: Vec<VertexId> = (0..l).map(|i| c.ring[(pi + i) % l]).collect();
        let first = rot[..=k].to_vec();
        let mut second = vec![p];
        second.extend_from_slice(&rot[k..]);
        halves.push((c.id, first, second));
    }

    // commit
    ids.next_vertex += route.links.len() as VertexId;
    let retired: BTreeSet<CycleId> = route.cycles.iter().copied().collect();
    if let Some(rim) = sys.rim.as_mut() {
        for cr in &crossings {
            subdivide(&mut rim.ring, cr.host.0, cr.host.1, cr.vertex);
        }
    }
    sys.cycles.retain(|c| !retired.contains(&c.id));
    let mut splits = Vec::new();
    for (old, first, second) in halves {
        let a = ids.cycle();
        let b = ids.cycle();
        sys.cycles.push(Cycle::new(a, first));
        sys.cycles.push(Cycle::new(b, second));
        splits.push((old, a, b));
    }
    let pieces = points.windows(2).map(|w| seg(w[0], w[1])).collect();
    Ok(Insertion {
        crossings,
        splits,
        pieces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::normalize_ring;

    /// The K7 interior of the Hamiltonian ring, oriented as in the worked example.
    fn k7_inner() -> CycleSystem {
        let c = |id, r: &[u32]| Cycle::new(id, r.to_vec());
        CycleSystem::new(
            vec![
                c(15, &[1, 7, 6]),
                c(19, &[2, 3, 7]),
                c(28, &[3, 4, 7]),
                c(33, &[4, 5, 7]),
                c(35, &[5, 6, 7]),
            ],
            Some(c(0, &[1, 6, 5, 4, 3, 2, 7])),
        )
    }

    #[test]
    fn conjugates() {
        let sys = k7_inner();
        let (c19, c28) = (sys.cycle(19).unwrap(), sys.cycle(28).unwrap());
        assert_eq!(conjugate_edge(c19, c28).unwrap(), (3, 7));
        assert!(conjugate_edge(sys.cycle(15).unwrap(), c28).is_err());
        let mcg = build_mixed_cycle_graph(&sys, &BTreeSet::new());
        assert_eq!(mcg.link(19, 28), Some((3, 7)));
        let single = CycleSystem::new(vec![c19.clone()], None);
        assert!(build_mixed_cycle_graph(&single, &BTreeSet::new())
            .neighbours(19)
            .is_empty());
    }

    #[test]
    fn e8_then_e9() {
        let mut sys = k7_inner();
        let mut ids = IdAllocator::new(8, 36);
        let mcg = build_mixed_cycle_graph(&sys, &BTreeSet::new());
        let r = shortest_route(&mcg, 2, 4).unwrap();
        assert_eq!(r.cycles, vec![19, 28]);
        let ins = insert_connection(&mut sys, (8, (2, 4)), &r, &mut ids).unwrap();
        assert_eq!(ins.crossings[0].vertex, 8);
        assert_eq!(ins.crossings[0].host, (3, 7));
        let rings: BTreeSet<Vec<u32>> = [36, 37, 38, 39]
            .iter()
            .map(|&i| normalize_ring(&sys.cycle(i).unwrap().ring))
            .collect();
        let want: BTreeSet<Vec<u32>> = [vec![2, 3, 8], vec![2, 8, 7], vec![4, 7, 8], vec![3, 4, 8]]
            .into_iter()
            .collect();
        assert_eq!(rings, want);
        assert!(sys.check_maclane().is_ok());
        assert_eq!(sys.euler(), 2);

        let banned: BTreeSet<Seg> = ins.pieces.iter().copied().collect();
        let mcg = build_mixed_cycle_graph(&sys, &banned);
        let r = shortest_route(&mcg, 2, 5).unwrap();
        assert_eq!(r.cycles, vec![37, 38, 33]);
        assert_eq!(r.links, vec![(7, 8), (4, 7)]);
        let before = sys.cycles.len();
        let ins = insert_connection(&mut sys, (9, (2, 5)), &r, &mut ids).unwrap();
        assert_eq!(sys.cycles.len(), before + 3);
        assert_eq!(ins.crossings.len(), 2);
        assert_eq!(ins.crossings[1].vertex, 10);
        assert!(sys.check_maclane().is_ok());
        assert_eq!(sys.euler(), 2);
    }

    #[test]
    fn zero_link_route_splits_one_cycle() {
        let mut sys = CycleSystem::new(
            vec![Cycle::new(1, vec![1, 2, 3, 4])],
            Some(Cycle::new(0, vec![1, 4, 3, 2])),
        );
        let mcg = build_mixed_cycle_graph(&sys, &BTreeSet::new());
        let r = shortest_route(&mcg, 1, 3).unwrap();
        assert_eq!(r.cycles, vec![1]);
        let mut ids = IdAllocator::new(5, 2);
        let ins = insert_connection(&mut sys, (9, (1, 3)), &r, &mut ids).unwrap();
        assert!(ins.crossings.is_empty());
        assert_eq!(sys.cycles.len(), 2);
        assert_eq!(sys.cycle(2).unwrap().ring, vec![1, 2, 3]);
        assert_eq!(sys.cycle(3).unwrap().ring, vec![1, 3, 4]);
        assert!(sys.check_maclane().is_ok());
    }

    #[test]
    fn touching_route_is_degenerate() {
        let mut sys = k7_inner();
        let mut ids = IdAllocator::new(8, 36);
        // v7 to v5 through c15 and c35 would cross (6,7), which touches v7
        let r = Route {
            source: 7,
            target: 5,
            cycles: vec![15, 35],
            links: vec![(6, 7)],
        };
        let err = insert_connection(&mut sys, (20, (7, 5)), &r, &mut ids).unwrap_err();
        assert!(matches!(err, Error::Degenerate { .. }));
        assert_eq!(sys, k7_inner());
        assert_eq!(ids, IdAllocator::new(8, 36));
    }

    #[test]
    fn crossings_determine_route() {
        let sys = k7_inner();
        let r = route_from_crossings(&sys, 2, 4, &[(3, 7)]).unwrap();
        assert_eq!(r.cycles, vec![19, 28]);
        assert!(route_from_crossings(&sys, 2, 4, &[(4, 7)]).is_err());
    }
}
