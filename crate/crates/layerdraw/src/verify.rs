//! Independent checks on a decomposition document. Only the stored arc lists,
//! realized edges and imaginary records are trusted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::doc::{DecompositionDocument, LayerRecord};
use crate::graph::{seg, EdgeId, Seg, VertexId};
use crate::system::normalize_ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub layer: usize,
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    fn push(&mut self, layer: usize, name: &'static str, outcome: Result<(), String>) {
        let (ok, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            layer,
            name,
            ok,
            detail,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.ok {
                writeln!(f, "layer {} {:<20} ok", c.layer, c.name)?;
            } else {
                writeln!(f, "layer {} {:<20} FAIL {}", c.layer, c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// All checks on every layer, and that the last layer draws every edge.
pub fn verify_document(doc: &DecompositionDocument) -> VerificationReport {
    verify(doc, true)
}

/// All checks on every layer, allowing edges that are not drawn yet.
pub fn verify_partial(doc: &DecompositionDocument) -> VerificationReport {
    verify(doc, false)
}

fn verify(doc: &DecompositionDocument, complete: bool) -> VerificationReport {
    let mut r = VerificationReport::default();
    for (i, layer) in doc.layers.iter().enumerate() {
        let l = layer.index;
        let numbering = if l == i + 1 {
            Ok(())
        } else {
            Err(format!("layer at position {} has index {l}", i + 1))
        };
        r.push(l, "numbering", numbering);
        r.push(l, "orientation", check_orientation(layer));
        r.push(l, "maclane", check_maclane(layer));
        r.push(l, "gf2-sum", check_gf2(layer));
        r.push(l, "euler", check_euler(layer));
        r.push(l, "imaginary-degree", check_imaginary(doc, i));
        let paths = connection_paths(doc, l);
        r.push(
            l,
            "edge-partition",
            paths
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|p| check_partition(layer, p)),
        );
        r.push(l, "face-trace", check_trace(layer));
        r.push(
            l,
            "connections",
            paths.and_then(|p| check_connections(doc, i, &p)),
        );
    }
    if complete {
        let drawn: BTreeSet<EdgeId> = doc
            .layers
            .iter()
            .flat_map(|l| l.realized.iter().copied())
            .collect();
        let missing: Vec<EdgeId> = (1..=doc.graph.m() as EdgeId)
            .filter(|e| !drawn.contains(e))
            .collect();
        let outcome = if doc.layers.is_empty() {
            Err("no layers".to_string())
        } else if missing.is_empty() {
            Ok(())
        } else {
            Err(format!("edges never drawn: {missing:?}"))
        };
        r.push(
            doc.layers.last().map_or(0, |l| l.index),
            "all-edges",
            outcome,
        );
    }
    r
}

fn arcs(layer: &LayerRecord) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
    layer
        .faces()
        .flat_map(|c| c.arcs.iter().map(|&[a, b]| (a, b)))
}

fn cover(layer: &LayerRecord) -> BTreeMap<Seg, usize> {
    let mut m = BTreeMap::new();
    for (a, b) in arcs(layer) {
        *m.entry(seg(a, b)).or_insert(0) += 1;
    }
    m
}

fn check_orientation(layer: &LayerRecord) -> Result<(), String> {
    for c in layer.faces() {
        let k = c.arcs.len();
        if k < 3 {
            return Err(format!("c{} has {k} arcs", c.id));
        }
        for i in 0..k {
            if c.arcs[i][1] != c.arcs[(i + 1) % k][0] {
                return Err(format!("c{} is not a closed walk at arc {}", c.id, i + 1));
            }
        }
        let distinct: BTreeSet<VertexId> = c.arcs.iter().map(|a| a[0]).collect();
        if distinct.len() != k {
            return Err(format!("c{} repeats a vertex", c.id));
        }
    }
    let mut seen = BTreeSet::new();
    for (a, b) in arcs(layer) {
        if !seen.insert((a, b)) {
            return Err(format!(
                "arc ({a},{b}) is traversed twice in the same direction"
            ));
        }
    }
    for &(a, b) in &seen {
        if !seen.contains(&(b, a)) {
            return Err(format!("arc ({a},{b}) has no opposite arc"));
        }
    }
    Ok(())
}

fn check_maclane(layer: &LayerRecord) -> Result<(), String> {
    match cover(layer).into_iter().find(|&(_, k)| k != 2) {
        None => Ok(()),
        Some((s, k)) => Err(format!("segment {s:?} lies on {k} faces")),
    }
}

fn check_gf2(layer: &LayerRecord) -> Result<(), String> {
    let odd: Vec<Seg> = cover(layer)
        .into_iter()
        .filter(|&(_, k)| k % 2 == 1)
        .map(|x| x.0)
        .collect();
    if odd.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "sum of all faces leaves {} segments, first {:?}",
            odd.len(),
            odd[0]
        ))
    }
}

fn check_euler(layer: &LayerRecord) -> Result<(), String> {
    let c = cover(layer);
    let v: BTreeSet<VertexId> = c.keys().flat_map(|&(a, b)| [a, b]).collect();
    let chi = v.len() as i64 - c.len() as i64 + layer.faces().count() as i64;
    if chi == 2 {
        Ok(())
    } else {
        Err(format!(
            "V - E + F = {} - {} + {} = {chi}",
            v.len(),
            c.len(),
            layer.faces().count()
        ))
    }
}

fn neighbours(layer: &LayerRecord) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
    let mut m: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for (a, b) in arcs(layer) {
        m.entry(a).or_default().insert(b);
        m.entry(b).or_default().insert(a);
    }
    m
}

fn check_imaginary(doc: &DecompositionDocument, upto: usize) -> Result<(), String> {
    let n = doc.graph.n;
    let layer = &doc.layers[upto];
    let recorded: BTreeSet<VertexId> = doc.layers[..=upto]
        .iter()
        .flat_map(|l| l.imaginary.iter().map(|iv| iv.id))
        .collect();
    let count: usize = doc.layers[..=upto].iter().map(|l| l.imaginary.len()).sum();
    if count != recorded.len() {
        return Err("an imaginary vertex id is recorded twice".into());
    }
    if let Some(v) = recorded.iter().find(|&&v| v <= n) {
        return Err(format!("imaginary id {v} collides with a graph vertex"));
    }
    let nb = neighbours(layer);
    for (&v, adj) in &nb {
        if v > n && !recorded.contains(&v) {
            return Err(format!("v{v} is neither a graph vertex nor recorded"));
        }
        if v > n && adj.len() != 4 {
            return Err(format!("imaginary v{v} has degree {}", adj.len()));
        }
        if v == 0 {
            return Err("vertex id 0".into());
        }
    }
    if let Some(v) = recorded.iter().find(|v| !nb.contains_key(v)) {
        return Err(format!("recorded v{v} is not on any face"));
    }
    Ok(())
}

/// Drawn polyline of every edge realized up to `layer`, each running from the
/// smaller endpoint. Imaginary vertices are applied in id order, each splitting
/// its recorded host segment.
pub fn connection_paths(
    doc: &DecompositionDocument,
    layer: usize,
) -> Result<BTreeMap<EdgeId, Vec<VertexId>>, String> {
    let g = &doc.graph;
    let layers: Vec<&LayerRecord> = doc.layers.iter().filter(|l| l.index <= layer).collect();
    let mut edge_layer: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for l in &layers {
        for &e in &l.realized {
            if e == 0 || e as usize > g.m() {
                return Err(format!("layer {} realizes unknown edge {e}", l.index));
            }
            if let Some(prev) = edge_layer.insert(e, l.index) {
                return Err(format!("e{e} is realized in layers {prev} and {}", l.index));
            }
        }
    }
    let mut records: Vec<_> = layers.iter().flat_map(|l| l.imaginary.iter()).collect();
    records.sort_by_key(|iv| iv.id);
    let mut own: BTreeMap<EdgeId, Vec<(usize, VertexId)>> = BTreeMap::new();
    for iv in &records {
        own.entry(iv.connection)
            .or_default()
            .push((iv.position, iv.id));
    }
    let mut paths: BTreeMap<EdgeId, Vec<VertexId>> = BTreeMap::new();
    for &e in edge_layer.keys() {
        let (u, v) = g.endpoints(e);
        let (lo, hi) = (u.min(v), u.max(v));
        let mut inner = own.remove(&e).unwrap_or_default();
        inner.sort_unstable();
        for (i, &(p, x)) in inner.iter().enumerate() {
            if p != i + 1 {
                return Err(format!("e{e}: v{x} has position {p}, expected {}", i + 1));
            }
        }
        let mut path = vec![lo];
        path.extend(inner.into_iter().map(|x| x.1));
        path.push(hi);
        paths.insert(e, path);
    }
    if let Some((&e, _)) = own.iter().next() {
        return Err(format!("imaginary vertices recorded for undrawn e{e}"));
    }
    for iv in records {
        let host = seg(iv.host[0], iv.host[1]);
        let (Some(&hl), Some(&cl)) = (
            edge_layer.get(&iv.host_edge),
            edge_layer.get(&iv.connection),
        ) else {
            return Err(format!("v{} refers to an undrawn edge", iv.id));
        };
        if hl >= cl {
            return Err(format!(
                "v{} lies on e{} of layer {hl}, crossed from layer {cl}",
                iv.id, iv.host_edge
            ));
        }
        let path = paths.get_mut(&iv.host_edge).unwrap();
        let at = path
            .windows(2)
            .position(|w| seg(w[0], w[1]) == host)
            .ok_or_else(|| {
                format!(
                    "v{}: {:?} is not a segment of e{}",
                    iv.id, host, iv.host_edge
                )
            })?;
        path.insert(at + 1, iv.id);
    }
    Ok(paths)
}

fn check_partition(
    layer: &LayerRecord,
    paths: &BTreeMap<EdgeId, Vec<VertexId>>,
) -> Result<(), String> {
    let mut owner: BTreeMap<Seg, EdgeId> = BTreeMap::new();
    for (&e, p) in paths {
        for w in p.windows(2) {
            if let Some(f) = owner.insert(seg(w[0], w[1]), e) {
                return Err(format!(
                    "segment ({},{}) belongs to e{f} and e{e}",
                    w[0], w[1]
                ));
            }
        }
    }
    let faces: BTreeSet<Seg> = cover(layer).into_keys().collect();
    if let Some(s) = faces.iter().find(|s| !owner.contains_key(s)) {
        return Err(format!("face segment {s:?} belongs to no edge"));
    }
    if let Some((s, e)) = owner.iter().find(|(s, _)| !faces.contains(s)) {
        return Err(format!("segment {s:?} of e{e} is on no face"));
    }
    Ok(())
}

/// Rotation at each vertex: a face passing u -> v -> w sends u to w at v.
pub fn rotation_system(
    layer: &LayerRecord,
) -> Result<BTreeMap<VertexId, BTreeMap<VertexId, VertexId>>, String> {
    let mut rot: BTreeMap<VertexId, BTreeMap<VertexId, VertexId>> = BTreeMap::new();
    for c in layer.faces() {
        let k = c.arcs.len();
        for i in 0..k {
            let [u, v] = c.arcs[i];
            let w = c.arcs[(i + 1) % k][1];
            if rot.entry(v).or_default().insert(u, w).is_some() {
                return Err(format!("two faces turn from {u} at {v}"));
            }
        }
    }
    Ok(rot)
}

/// Face boundaries traced from the rotation system, normalized.
pub fn trace_faces(rot: &BTreeMap<VertexId, BTreeMap<VertexId, VertexId>>) -> Vec<Vec<VertexId>> {
    let mut used = BTreeSet::new();
    let mut faces = Vec::new();
    for (&v, m) in rot {
        for &u in m.keys() {
            if used.contains(&(u, v)) {
                continue;
            }
            let mut ring = Vec::new();
            let (mut a, mut b) = (u, v);
            while used.insert((a, b)) {
                ring.push(a);
                let Some(&c) = rot.get(&b).and_then(|m| m.get(&a)) else {
                    break;
                };
                a = b;
                b = c;
            }
            faces.push(normalize_ring(&ring));
        }
    }
    faces.sort();
    faces
}

fn check_trace(layer: &LayerRecord) -> Result<(), String> {
    let rot = rotation_system(layer)?;
    let nb = neighbours(layer);
    for (v, adj) in &nb {
        let Some(m) = rot.get(v) else {
            return Err(format!("no rotation at {v}"));
        };
        let dom: BTreeSet<VertexId> = m.keys().copied().collect();
        let img: BTreeSet<VertexId> = m.values().copied().collect();
        if &dom != adj || &img != adj {
            return Err(format!("rotation at {v} does not permute its neighbours"));
        }
        let start = *adj.iter().next().unwrap();
        let mut cur = m[&start];
        let mut steps = 1;
        while cur != start {
            cur = m[&cur];
            steps += 1;
        }
        if steps != adj.len() {
            return Err(format!("neighbourhood of {v} is not a single disc"));
        }
    }
    let mut faces: Vec<Vec<VertexId>> = layer
        .faces()
        .map(|c| normalize_ring(&c.arcs.iter().map(|a| a[0]).collect::<Vec<_>>()))
        .collect();
    faces.sort();
    if trace_faces(&rot) == faces {
        Ok(())
    } else {
        Err("traced faces differ from stored faces".into())
    }
}

fn check_connections(
    doc: &DecompositionDocument,
    upto: usize,
    paths: &BTreeMap<EdgeId, Vec<VertexId>>,
) -> Result<(), String> {
    let layer = &doc.layers[upto];
    let nb = neighbours(layer);
    for (&e, p) in paths {
        let (u, v) = doc.graph.endpoints(e);
        if p.first() != Some(&u.min(v)) || p.last() != Some(&u.max(v)) {
            return Err(format!("e{e} does not join its endpoints"));
        }
        for w in p.windows(2) {
            if !nb.get(&w[0]).is_some_and(|s| s.contains(&w[1])) {
                return Err(format!("e{e} uses ({},{}) which is on no face", w[0], w[1]));
            }
        }
    }
    Ok(())
}
