//! Chord projections onto a ring and the crossing relation between chords.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// A chord: graph edge id plus endpoints.
pub type Chord = (EdgeId, (VertexId, VertexId));

/// An oriented ring with its edge ids; `edges[i]` joins `ring[i]` and `ring[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateBasis {
    pub ring: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pos: BTreeMap<VertexId, usize>,
}

impl CoordinateBasis {
    /// Ring edges are looked up in `g`.
    pub fn new(g: &Graph, ring: &[VertexId]) -> Result<Self> {
        let l = ring.len();
        let edges = (0..l)
            .map(|i| {
                g.edge_between(ring[i], ring[(i + 1) % l])
                    .ok_or(Error::OffRing(ring[(i + 1) % l]))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::with_edges(ring.to_vec(), edges))
    }

    pub fn with_edges(ring: Vec<VertexId>, edges: Vec<EdgeId>) -> Self {
        let pos = ring.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        CoordinateBasis { ring, edges, pos }
    }

    pub fn len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.is_empty()
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos.contains_key(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub chord: EdgeId,
    pub edges: BTreeSet<EdgeId>,
}

/// The shorter ring arc between the chord endpoints; ties go to the arc whose
/// sorted edge ids compare smaller.
pub fn project_chord(basis: &CoordinateBasis, chord: Chord) -> Result<Projection> {
    let (e, (u, v)) = chord;
    let i = basis.position(u).ok_or(Error::OffRing(u))?;
    let j = basis.position(v).ok_or(Error::OffRing(v))?;
    let l = basis.len();
    let arc = |from: usize, to: usize| -> BTreeSet<EdgeId> {
        let mut out = BTreeSet::new();
        let mut k = from;
        while k != to {
            out.insert(basis.edges[k]);
            k = (k + 1) % l;
        }
        out
    };
    let a = arc(i, j);
    let b = arc(j, i);
    let pick = match a.len().cmp(&b.len()) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            if a.iter().lt(b.iter()) {
                a
            } else {
                b
            }
        }
    };
    Ok(Projection {
        chord: e,
        edges: pick,
    })
}

/// Proper intersection of projections: non-empty and neither contains the other.
pub fn projections_cross(a: &Projection, b: &Projection) -> bool {
    let meet = a.edges.intersection(&b.edges).next().is_some();
    meet && !a.edges.is_subset(&b.edges) && !b.edges.is_subset(&a.edges)
}

pub fn chords_cross(basis: &CoordinateBasis, a: Chord, b: Chord) -> Result<bool> {
    Ok(projections_cross(
        &project_chord(basis, a)?,
        &project_chord(basis, b)?,
    ))
}

/// Endpoint interleaving on the ring; shared endpoints never interleave.
pub fn interleaved(
    basis: &CoordinateBasis,
    a: (VertexId, VertexId),
    b: (VertexId, VertexId),
) -> Option<bool> {
    let p = |v| basis.position(v);
    let (a0, a1, b0, b1) = (p(a.0)?, p(a.1)?, p(b.0)?, p(b.1)?);
    if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
        return Some(false);
    }
    let (lo, hi) = (a0.min(a1), a0.max(a1));
    let inside = |x: usize| lo < x && x < hi;
    Some(inside(b0) != inside(b1))
}

fn crossing_matrix(projections: &[Projection]) -> Vec<Vec<bool>> {
    let k = projections.len();
    let mut m = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let c = projections_cross(&projections[i], &projections[j]);
            m[i][j] = c;
            m[j][i] = c;
        }
    }
    m
}

pub fn crossing_counts(
    basis: &CoordinateBasis,
    chords: &[Chord],
) -> Result<BTreeMap<EdgeId, usize>> {
    let projections = chords
        .iter()
        .map(|&c| project_chord(basis, c))
        .collect::<Result<Vec<_>>>()?;
    let m = crossing_matrix(&projections);
    Ok(chords
        .iter()
        .enumerate()
        .map(|(i, c)| (c.0, m[i].iter().filter(|&&x| x).count()))
        .collect())
}

/// Iterative max-crossing removal. Returns kept chords (input order) and the
/// removed chords in removal order.
pub fn select_noncrossing(
    basis: &CoordinateBasis,
    chords: &[Chord],
) -> Result<(Vec<Chord>, Vec<Chord>)> {
    let projections = chords
        .iter()
        .map(|&c| project_chord(basis, c))
        .collect::<Result<Vec<_>>>()?;
    let m = crossing_matrix(&projections);
    let k = chords.len();
    let mut alive = vec![true; k];
    let mut count: Vec<usize> = (0..k)
        .map(|i| m[i].iter().filter(|&&x| x).count())
        .collect();
    let mut deferred = Vec::new();
    loop {
        let pick = (0..k)
            .filter(|&i| alive[i] && count[i] > 0)
            .max_by(|&i, &j| {
                count[i]
                    .cmp(&count[j])
                    .then(projections[i].edges.len().cmp(&projections[j].edges.len()))
                    .then(chords[j].0.cmp(&chords[i].0))
            });
        let Some(i) = pick else { break };
        alive[i] = false;
        deferred.push(chords[i]);
        for j in 0..k {
            if alive[j] && m[i][j] {
                count[j] -= 1;
            }
        }
    }
    let kept = (0..k).filter(|&i| alive[i]).map(|i| chords[i]).collect();
    Ok((kept, deferred))
}

/// Exhaustive maximum pairwise non-crossing subset; ties by lexicographic
/// sorted edge-id list. Intended for at most 20 chords.
pub fn brute_force_max_noncrossing(
    basis: &CoordinateBasis,
    chords: &[Chord],
) -> Result<Vec<Chord>> {
    let mut sorted = chords.to_vec();
    sorted.sort_by_key(|c| c.0);
    let projections = sorted
        .iter()
        .map(|&c| project_chord(basis, c))
        .collect::<Result<Vec<_>>>()?;
    let m = crossing_matrix(&projections);
    let k = sorted.len();
    assert!(k <= 24, "brute force limited to small chord sets");
    let conflict: Vec<u32> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| m[i][j])
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect();
    let mut best: Option<(u32, Vec<EdgeId>)> = None;
    for mask in 0u32..(1u32 << k) {
        if (0..k).any(|i| mask & (1 << i) != 0 && conflict[i] & mask != 0) {
            continue;
        }
        let ids: Vec<EdgeId> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| sorted[i].0)
            .collect();
        let better = match &best {
            None => true,
            Some((bm, bids)) => {
                mask.count_ones() > bm.count_ones()
                    || (mask.count_ones() == bm.count_ones() && ids < *bids)
            }
        };
        if better {
            best = Some((mask, ids));
        }
    }
    let mask = best.map_or(0, |b| b.0);
    Ok((0..k)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| sorted[i])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k7() -> (Graph, CoordinateBasis, Vec<Chord>) {
        let g = Graph::complete(7);
        let basis = CoordinateBasis::new(&g, &[1, 6, 5, 4, 3, 2, 7]).unwrap();
        let chords = [3, 8, 9, 10, 14, 17]
            .iter()
            .map(|&e| (e, g.endpoints(e)))
            .collect();
        (g, basis, chords)
    }

    #[test]
    fn k7_basis_edges() {
        let (_, b, _) = k7();
        let mut e = b.edges.clone();
        e.sort();
        assert_eq!(e, vec![5, 6, 7, 11, 12, 16, 19]);
    }

    #[test]
    fn k7_projections() {
        let (_, b, chords) = k7();
        let want: [&[EdgeId]; 6] = [
            &[5, 16, 19],
            &[7, 12],
            &[7, 12, 16],
            &[5, 6, 11],
            &[12, 16, 19],
            &[16, 19],
        ];
        for (c, w) in chords.iter().zip(want) {
            let p = project_chord(&b, *c).unwrap();
            assert_eq!(p.edges.iter().copied().collect::<Vec<_>>(), w, "e{}", c.0);
        }
    }

    #[test]
    fn adjacent_chord_projects_to_one_edge() {
        let g = Graph::complete(7);
        let b = CoordinateBasis::new(&g, &[1, 6, 5, 4, 3, 2, 7]).unwrap();
        let p = project_chord(&b, (5, (1, 6))).unwrap();
        assert_eq!(p.edges.into_iter().collect::<Vec<_>>(), vec![5]);
        assert!(project_chord(&b, (99, (1, 8))).is_err());
    }

    #[test]
    fn k7_crossings() {
        let (_, b, ch) = k7();
        let by = |e| *ch.iter().find(|c| c.0 == e).unwrap();
        assert!(chords_cross(&b, by(3), by(9)).unwrap());
        assert!(!chords_cross(&b, by(3), by(17)).unwrap());
        assert!(!chords_cross(&b, by(8), by(10)).unwrap());
        let counts = crossing_counts(&b, &ch).unwrap();
        let want: BTreeMap<EdgeId, usize> = [(3, 3), (8, 1), (9, 3), (10, 1), (14, 3), (17, 1)]
            .into_iter()
            .collect();
        assert_eq!(counts, want);
        assert_eq!(counts.values().sum::<usize>() % 2, 0);
    }

    #[test]
    fn k7_selection_is_maximum() {
        let (_, b, ch) = k7();
        let (kept, deferred) = select_noncrossing(&b, &ch).unwrap();
        assert_eq!(kept.len(), 3);
        assert_eq!(kept.len() + deferred.len(), 6);
        for i in 0..kept.len() {
            for j in i + 1..kept.len() {
                assert!(!chords_cross(&b, kept[i], kept[j]).unwrap());
            }
        }
        assert_eq!(deferred[0].0, 3);
        assert_eq!(brute_force_max_noncrossing(&b, &ch).unwrap().len(), 3);
    }

    #[test]
    fn trivial_selections() {
        let (_, b, ch) = k7();
        let calm = vec![ch[1], ch[3]];
        let (kept, deferred) = select_noncrossing(&b, &calm).unwrap();
        assert_eq!(kept, calm);
        assert!(deferred.is_empty());
        assert!(brute_force_max_noncrossing(&b, &[]).unwrap().is_empty());
        // e3 and e9 cross
        assert_eq!(
            brute_force_max_noncrossing(&b, &[ch[0], ch[2]])
                .unwrap()
                .len(),
            1
        );
        assert_eq!(crossing_counts(&b, &[ch[0]]).unwrap()[&3], 0);
    }

    #[test]
    fn shared_endpoint_never_crosses() {
        let (_, b, ch) = k7();
        // e8 (2,4) and e9 (2,5)
        assert!(!chords_cross(&b, ch[1], ch[2]).unwrap());
        assert_eq!(interleaved(&b, (2, 4), (2, 5)), Some(false));
    }
}
