//! Isometric cycle enumeration.

use std::collections::BTreeMap;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::system::{Cycle, CycleId};

/// All-pairs BFS distances, indexed `[u][v]`.
pub fn distance_table(g: &Graph) -> Vec<Vec<u32>> {
    let adj = g.adjacency();
    let mut table = vec![Vec::new(); g.n as usize + 1];
    for v in g.vertices() {
        table[v as usize] = g.distances_from(&adj, v);
    }
    table
}

/// True iff along-cycle distances equal graph distances for every vertex pair.
pub fn is_isometric(ring: &[VertexId], dist: &[Vec<u32>]) -> bool {
    let len = ring.len();
    for i in 0..len {
        for j in i + 1..len {
            let along = (j - i).min(len - (j - i)) as u32;
            if dist[ring[i] as usize][ring[j] as usize] != along {
                return false;
            }
        }
    }
    true
}

/// Rotate to the smallest vertex, then step towards its smaller neighbour.
pub fn canonical_ring(ring: &[VertexId]) -> Vec<VertexId> {
    let len = ring.len();
    let k = (0..len).min_by_key(|&i| ring[i]).unwrap();
    let next = ring[(k + 1) % len];
    let prev = ring[(k + len - 1) % len];
    if next <= prev {
        (0..len).map(|i| ring[(k + i) % len]).collect()
    } else {
        (0..len).map(|i| ring[(k + len - i) % len]).collect()
    }
}

/// Every shortest path from `from` to `to`, restricted to vertices `>= floor`
/// besides `from` itself.
fn shortest_paths(
    adj: &[Vec<VertexId>],
    dist: &[Vec<u32>],
    from: VertexId,
    to: VertexId,
    floor: VertexId,
) -> Vec<Vec<VertexId>> {
    let target = dist[from as usize][to as usize];
    let mut out = Vec::new();
    let mut path = vec![from];
    fn walk(
        adj: &[Vec<VertexId>],
        dist: &[Vec<u32>],
        to: VertexId,
        target: u32,
        floor: VertexId,
        path: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let cur = *path.last().unwrap();
        if cur == to {
            out.push(path.clone());
            return;
        }
        let d = path.len() as u32;
        for &w in &adj[cur as usize] {
            if w > floor && dist[w as usize][to as usize] + d == target {
                path.push(w);
                walk(adj, dist, to, target, floor, path, out);
                path.pop();
            }
        }
    }
    walk(adj, dist, to, target, floor, &mut path, &mut out);
    out
}

fn internally_disjoint(p: &[VertexId], q: &[VertexId], shared_ends: usize) -> bool {
    // p and q share p[0] == q[0]; with shared_ends == 2 they also share the last vertex
    let p_inner = &p[1..p.len() - (shared_ends - 1)];
    let q_inner = &q[1..q.len() - (shared_ends - 1)];
    p_inner.iter().all(|x| !q_inner.contains(x))
}

/// Isometric cycles in canonical orientation, sorted by (length, edge-id set)
/// and numbered from 1.
pub fn enumerate_isometric_cycles(g: &Graph) -> Vec<Cycle> {
    let adj = g.adjacency();
    let dist = distance_table(g);
    let mut found: BTreeMap<(usize, Vec<EdgeId>), Vec<VertexId>> = BTreeMap::new();
    let mut record = |ring: Vec<VertexId>| {
        if ring.len() >= 3 && is_isometric(&ring, &dist) {
            let ring = canonical_ring(&ring);
            let c = Cycle::new(0, ring.clone());
            let ids = c.edge_ids(g).expect("cycle edges are graph edges");
            found.entry((ring.len(), ids)).or_insert(ring);
        }
    };
    for v in g.vertices() {
        let dv = &dist[v as usize];
        let ecc = g
            .vertices()
            .filter(|&u| u > v && dv[u as usize] != u32::MAX)
            .map(|u| dv[u as usize])
            .max()
            .unwrap_or(0);
        for k in 1..=ecc {
            // odd length 2k+1: antipodal edge (a, b)
            for &(a, b) in &g.edges {
                if a <= v || b <= v || dv[a as usize] != k || dv[b as usize] != k {
                    continue;
                }
                let pa = shortest_paths(&adj, &dist, v, a, v);
                let pb = shortest_paths(&adj, &dist, v, b, v);
                for p in &pa {
                    for q in &pb {
                        if internally_disjoint(p, q, 1) {
                            let mut ring = p.clone();
                            ring.extend(q.iter().skip(1).rev());
                            record(ring);
                        }
                    }
                }
            }
            // even length 2k: antipodal vertex u
            if k >= 2 {
                for u in g.vertices() {
                    if u <= v || dv[u as usize] != k {
                        continue;
                    }
                    let ps = shortest_paths(&adj, &dist, v, u, v);
                    for i in 0..ps.len() {
                        for j in i + 1..ps.len() {
                            if internally_disjoint(&ps[i], &ps[j], 2) {
                                let mut ring = ps[i].clone();
                                ring.extend(ps[j][1..ps[j].len() - 1].iter().rev());
                                record(ring);
                            }
                        }
                    }
                }
            }
        }
    }
    found
        .into_values()
        .enumerate()
        .map(|(i, ring)| Cycle::new(i as CycleId + 1, ring))
        .collect()
}
