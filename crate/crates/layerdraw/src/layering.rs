//! Regions, layers, fixture replay and the decomposition loop.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cycles::enumerate_isometric_cycles;
use crate::error::{Error, Result};
use crate::fixture::{Fixture, NamedRegion, RegionSpec, Step};
use crate::graph::{seg, validate_nonseparable, EdgeId, Graph, Seg, VertexId};
use crate::intersect::{select_noncrossing, Chord, CoordinateBasis};
use crate::planar::{
    hamiltonian_rim, hamiltonian_rim_pinned, pinned_system, select_planar_cycle_system, ChordSet,
    HamiltonianRim, PlanarOptions,
};
use crate::router::{
    build_mixed_cycle_graph, insert_connection, route_from_crossings, shortest_route, Route,
};
use crate::system::{boundary_ring, gf2_sum, Cycle, CycleId, CycleSystem, IdAllocator};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImaginaryVertex {
    pub id: VertexId,
    /// Segment that was subdivided, as it was at creation time.
    pub host: [VertexId; 2],
    /// Graph edge the host segment belongs to.
    pub host_edge: EdgeId,
    /// Chord whose connection passes through this vertex.
    pub connection: EdgeId,
    /// 1-based index along the connection, counted from its smaller endpoint.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub index: usize,
    /// The whole drawing after this layer's connections were inserted.
    pub system: CycleSystem,
    pub realized: Vec<EdgeId>,
    pub imaginary: Vec<ImaginaryVertex>,
}

impl Layer {
    /// Imaginary vertices created for each chord of this layer, from its smaller endpoint.
    pub fn sequences(&self) -> BTreeMap<EdgeId, Vec<VertexId>> {
        let mut out: BTreeMap<EdgeId, Vec<(usize, VertexId)>> = BTreeMap::new();
        for e in &self.realized {
            out.entry(*e).or_default();
        }
        for iv in &self.imaginary {
            out.entry(iv.connection)
                .or_default()
                .push((iv.position, iv.id));
        }
        out.into_iter()
            .map(|(e, mut v)| {
                v.sort_unstable();
                (e, v.into_iter().map(|x| x.1).collect())
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub graph: Graph,
    pub layers: Vec<Layer>,
    pub basis: Option<HamiltonianRim>,
}

impl Decomposition {
    pub fn thickness(&self) -> usize {
        self.layers.len()
    }
}

pub fn layer_edge_partition(d: &Decomposition) -> BTreeMap<usize, Vec<EdgeId>> {
    d.layers
        .iter()
        .map(|l| {
            let mut e = l.realized.clone();
            e.sort_unstable();
            (l.index, e)
        })
        .collect()
}

/// Inner system bounded by the ring, and the outer system (remaining cycles
/// plus the old rim face) bounded by the reversed ring.
pub fn split_regions(sys: &CycleSystem, h: &HamiltonianRim) -> Result<(CycleSystem, CycleSystem)> {
    let inside: BTreeSet<CycleId> = h.inside.iter().copied().collect();
    let inner: Vec<Cycle> = sys
        .cycles
        .iter()
        .filter(|c| inside.contains(&c.id))
        .cloned()
        .collect();
    let outer: Vec<Cycle> = sys
        .faces()
        .filter(|c| !inside.contains(&c.id))
        .cloned()
        .collect();
    let ring = Cycle::new(0, h.ring.clone());
    let inner_sys = CycleSystem::new(inner, Some(ring.clone()));
    let outer_sys = if outer.is_empty() {
        CycleSystem::new(Vec::new(), None)
    } else {
        CycleSystem::new(outer, Some(ring.reversed()))
    };
    Ok((inner_sys, outer_sys))
}

/// Drop cycles holding imaginary vertices (ids above `n`); the new rim is the
/// GF(2) sum of what was removed together with the old rim.
pub fn strip_imaginary_region(sys: &CycleSystem, n: u32) -> Result<CycleSystem> {
    let (kept, removed): (Vec<Cycle>, Vec<Cycle>) = sys
        .cycles
        .iter()
        .cloned()
        .partition(|c| c.ring.iter().all(|&v| v <= n));
    if removed.is_empty() {
        return Ok(sys.clone());
    }
    let sum = gf2_sum(removed.iter().chain(sys.rim.iter()));
    if sum.is_empty() {
        return Err(Error::NotARing);
    }
    let rim = boundary_ring(kept.iter())?.ok_or(Error::NotARing)?;
    let check: BTreeSet<Seg> = Cycle::new(0, rim.clone()).segs().collect();
    if check != sum {
        return Err(Error::NotARing);
    }
    Ok(CycleSystem::new(kept, Some(Cycle::new(0, rim))))
}

/// Result of one connection insertion.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub layer: usize,
    pub chord: EdgeId,
    pub route: Route,
    /// Shortest route in the region, for comparison with a pinned one.
    pub computed: Option<Route>,
    pub imaginary: Vec<ImaginaryVertex>,
    pub faces_before: usize,
    pub faces_after: usize,
}

/// The evolving drawing: all faces on the sphere, with the layer-1 outer face
/// kept as `faces.rim` until a connection passes through it.
#[derive(Debug, Clone)]
pub struct Drawing {
    pub graph: Graph,
    pub faces: CycleSystem,
    pub ids: IdAllocator,
    pub layer: usize,
    pub basis: Option<HamiltonianRim>,
    root: BTreeMap<CycleId, CycleId>,
    origin: BTreeMap<Seg, EdgeId>,
    banned: BTreeSet<Seg>,
    layer_one: BTreeSet<CycleId>,
    rim_face: Option<CycleId>,
    done: Vec<Layer>,
    realized: Vec<EdgeId>,
    imaginary: Vec<ImaginaryVertex>,
    placed: BTreeSet<EdgeId>,
}

impl Drawing {
    pub fn new(
        g: &Graph,
        sys: CycleSystem,
        basis: Option<HamiltonianRim>,
        next_cycle: CycleId,
    ) -> Self {
        let root = sys.faces().map(|c| (c.id, c.id)).collect();
        let origin: BTreeMap<Seg, EdgeId> = sys
            .region_segments()
            .into_iter()
            .filter_map(|(a, b)| g.edge_between(a, b).map(|e| ((a, b), e)))
            .collect();
        let realized: Vec<EdgeId> = origin
            .values()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let next_cycle = next_cycle.max(sys.faces().map(|c| c.id).max().unwrap_or(0) + 1);
        Drawing {
            graph: g.clone(),
            ids: IdAllocator::new(g.n + 1, next_cycle),
            layer: 1,
            basis,
            root,
            origin,
            banned: BTreeSet::new(),
            layer_one: sys.faces().map(|c| c.id).collect(),
            rim_face: sys.rim.as_ref().map(|c| c.id),
            placed: realized.iter().copied().collect(),
            realized,
            imaginary: Vec::new(),
            done: Vec::new(),
            faces: sys,
        }
    }

    pub fn is_placed(&self, e: EdgeId) -> bool {
        self.placed.contains(&e)
    }

    pub fn unplaced(&self) -> Vec<Chord> {
        self.graph
            .edge_ids()
            .filter(|e| !self.placed.contains(e))
            .map(|e| (e, self.graph.endpoints(e)))
            .collect()
    }

    /// Layer-1 face ids whose descendants make up the region; `None` is the whole sphere.
    pub fn region_roots(&self, spec: &RegionSpec) -> Option<BTreeSet<CycleId>> {
        let inside: BTreeSet<CycleId> = match &self.basis {
            Some(h) => h.inside.iter().copied().collect(),
            None => self
                .layer_one
                .iter()
                .copied()
                .filter(|&c| Some(c) != self.rim_face)
                .collect(),
        };
        match spec {
            RegionSpec::Named(NamedRegion::All) => None,
            RegionSpec::Named(NamedRegion::Inner) => Some(inside),
            RegionSpec::Named(NamedRegion::Outer) => {
                Some(self.layer_one.difference(&inside).copied().collect())
            }
            RegionSpec::Faces(ids) => Some(ids.iter().copied().collect()),
        }
    }

    /// The faces descended from `roots`, bounded by their boundary ring.
    pub fn region_system(&self, roots: Option<&BTreeSet<CycleId>>) -> Result<CycleSystem> {
        let cycles: Vec<Cycle> = self
            .faces
            .faces()
            .filter(|c| roots.is_none_or(|r| r.contains(&self.root[&c.id])))
            .cloned()
            .collect();
        if cycles.is_empty() {
            return Err(Error::Fixture("empty region".into()));
        }
        let rim = boundary_ring(cycles.iter())?.map(|r| Cycle::new(0, r));
        Ok(CycleSystem::new(cycles, rim))
    }

    /// Connection segments of the current layer.
    pub fn banned(&self) -> &BTreeSet<Seg> {
        &self.banned
    }

    pub fn origin_of(&self, s: Seg) -> Option<EdgeId> {
        self.origin.get(&s).copied()
    }

    pub fn shortest(&self, region: &CycleSystem, s: VertexId, t: VertexId) -> Option<Route> {
        shortest_route(&build_mixed_cycle_graph(region, &self.banned), s, t)
    }

    /// Route `chord` from its first endpoint inside the region and rewrite the drawing.
    pub fn insert(
        &mut self,
        spec: &RegionSpec,
        chord: Chord,
        cross: Option<&[Seg]>,
    ) -> Result<StepOutcome> {
        let (e, (s, t)) = chord;
        if self.placed.contains(&e) {
            return Err(Error::BadRoute(format!("e{e} is already drawn")));
        }
        let roots = self.region_roots(spec);
        let mut region = self.region_system(roots.as_ref())?;
        let computed = self.shortest(&region, s, t);
        let route = match cross {
            Some(cross) => {
                let r = route_from_crossings(&region, s, t, cross)?;
                if let Some(x) = r.links.iter().find(|x| self.banned.contains(x)) {
                    return Err(Error::BadRoute(format!(
                        "{x:?} belongs to a connection of this layer"
                    )));
                }
                r
            }
            None => computed.clone().ok_or(Error::NoRoute { chord: e, s, t })?,
        };
        let faces_before = self.faces.face_count();
        let ins = insert_connection(&mut region, chord, &route, &mut self.ids)?;

        // merge the rewritten region back
        let retired: BTreeSet<CycleId> = ins.splits.iter().map(|x| x.0).collect();
        if self
            .faces
            .rim
            .as_ref()
            .is_some_and(|r| retired.contains(&r.id))
        {
            self.faces.rim = None;
        }
        self.faces.cycles.retain(|c| !retired.contains(&c.id));
        for &(old, a, b) in &ins.splits {
            let r = self.root[&old];
            for id in [a, b] {
                self.root.insert(id, r);
                self.faces.cycles.push(region.cycle(id).unwrap().clone());
            }
            self.root.remove(&old);
        }

        let k = ins.crossings.len();
        let forward = s < t;
        let mut created = Vec::with_capacity(k);
        for c in &ins.crossings {
            let host_edge = self
                .origin
                .remove(&c.host)
                .ok_or_else(|| Error::BadRoute(format!("unknown host segment {:?}", c.host)))?;
            self.origin.insert(seg(c.host.0, c.vertex), host_edge);
            self.origin.insert(seg(c.host.1, c.vertex), host_edge);
            created.push(ImaginaryVertex {
                id: c.vertex,
                host: [c.host.0, c.host.1],
                host_edge,
                connection: e,
                position: if forward {
                    c.position
                } else {
                    k + 1 - c.position
                },
            });
        }
        for &p in &ins.pieces {
            self.origin.insert(p, e);
            self.banned.insert(p);
        }
        self.imaginary.extend(created.iter().cloned());
        self.realized.push(e);
        self.placed.insert(e);
        Ok(StepOutcome {
            layer: self.layer,
            chord: e,
            route,
            computed,
            imaginary: created,
            faces_before,
            faces_after: self.faces.face_count(),
        })
    }

    fn current_layer(&self) -> Layer {
        let mut realized = self.realized.clone();
        realized.sort_unstable();
        Layer {
            index: self.layer,
            system: self.faces.clone(),
            realized,
            imaginary: self.imaginary.clone(),
        }
    }

    pub fn begin_layer(&mut self) {
        self.done.push(self.current_layer());
        self.layer += 1;
        self.banned.clear();
        self.realized.clear();
        self.imaginary.clear();
    }

    /// Finished layers plus the one in progress.
    pub fn snapshot(&self) -> Decomposition {
        let mut layers = self.done.clone();
        layers.push(self.current_layer());
        Decomposition {
            graph: self.graph.clone(),
            layers,
            basis: self.basis.clone(),
        }
    }

    pub fn finish(mut self) -> Decomposition {
        if self.realized.is_empty() && self.layer > 1 {
            self.layer -= 1;
            let last = self.done.pop().unwrap();
            self.realized = last.realized;
            self.imaginary = last.imaginary;
        }
        self.snapshot()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Route through both sides of the Hamiltonian ring and the outer face.
    #[default]
    Thickness,
    /// Never enter the layer-1 outer face.
    InnerOnly,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "thickness" => Ok(Strategy::Thickness),
            "inner-only" => Ok(Strategy::InnerOnly),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DecomposeOptions {
    pub strategy: Strategy,
    pub planar: PlanarOptions,
    pub hamiltonian_budget: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            strategy: Strategy::Thickness,
            planar: PlanarOptions::default(),
            hamiltonian_budget: 200_000,
        }
    }
}

fn routable(err: &Error) -> bool {
    matches!(err, Error::NoRoute { .. } | Error::Degenerate { .. })
}

/// Chords kept by max-crossing removal on the basis ring, routed inside one side.
fn page_pass(d: &mut Drawing, spec: RegionSpec) -> Result<()> {
    let ring = match &d.basis {
        Some(h) => h.ring.clone(),
        None => match d.faces.rim.as_ref() {
            Some(rim) if d.layer_one.contains(&rim.id) => rim.ring.clone(),
            _ => return Ok(()),
        },
    };
    let Ok(basis) = CoordinateBasis::new(&d.graph, &ring) else {
        return Ok(());
    };
    let candidates: Vec<Chord> = d
        .unplaced()
        .into_iter()
        .filter(|c| basis.contains(c.1 .0) && basis.contains(c.1 .1))
        .collect();
    let (kept, _) = select_noncrossing(&basis, &candidates)?;
    for chord in kept {
        match d.insert(&spec, chord, None) {
            Ok(_) => {}
            Err(e) if routable(&e) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

/// Every remaining chord, routed through any channel of the allowed faces.
fn channel_pass(d: &mut Drawing, strategy: Strategy) -> Result<()> {
    let spec = match (strategy, d.rim_face) {
        (Strategy::InnerOnly, Some(rim)) => {
            RegionSpec::Faces(d.layer_one.iter().copied().filter(|&c| c != rim).collect())
        }
        _ => RegionSpec::Named(NamedRegion::All),
    };
    for chord in d.unplaced() {
        match d.insert(&spec, chord, None) {
            Ok(_) => {}
            Err(e) if routable(&e) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

/// Place every remaining chord, opening layers as needed. With `resume`, the
/// current layer is filled first.
pub fn complete(d: &mut Drawing, strategy: Strategy, resume: bool) -> Result<()> {
    if resume && d.layer >= 2 {
        channel_pass(d, strategy)?;
    }
    while let Some(&(first, _)) = d.unplaced().first() {
        let before = d.unplaced().len();
        d.begin_layer();
        page_pass(d, RegionSpec::Named(NamedRegion::Inner))?;
        if strategy == Strategy::Thickness {
            page_pass(d, RegionSpec::Named(NamedRegion::Outer))?;
        }
        channel_pass(d, strategy)?;
        if d.unplaced().len() == before {
            return Err(Error::Stuck { chord: first });
        }
    }
    Ok(())
}

/// Planarize, pick a Hamiltonian basis, and place chords layer by layer.
pub fn decompose(g: &Graph, opts: DecomposeOptions) -> Result<Decomposition> {
    let report = validate_nonseparable(g);
    if !report.is_ok() {
        return Err(Error::Separable(report.to_string()));
    }
    let pool = enumerate_isometric_cycles(g);
    let planar = select_planar_cycle_system(g, &pool, opts.planar);
    let basis = hamiltonian_rim(g, &planar.system, opts.hamiltonian_budget).ok();
    let mut d = Drawing::new(g, planar.system, basis, pool.len() as CycleId + 1);
    complete(&mut d, opts.strategy, false)?;
    Ok(d.finish())
}

/// Replays a fixture script step by step.
#[derive(Debug, Clone)]
pub struct Replay {
    pub drawing: Drawing,
    pub chords: ChordSet,
    steps: Vec<Step>,
    next: usize,
}

impl Replay {
    pub fn new(g: &Graph, fx: &Fixture) -> Result<Self> {
        if fx.n != g.n {
            return Err(Error::Fixture(format!(
                "fixture is for {} vertices, graph has {}",
                fx.n, g.n
            )));
        }
        let pool = enumerate_isometric_cycles(g);
        let oriented = (!fx.oriented.is_empty()).then_some(&fx.oriented);
        let planar = pinned_system(g, &pool, &fx.cycles, fx.rim, oriented)?;
        let basis = match &fx.inside {
            Some(inside) => Some(hamiltonian_rim_pinned(g, &planar.system, inside)?),
            None => hamiltonian_rim(g, &planar.system, 200_000).ok(),
        };
        Ok(Replay {
            drawing: Drawing::new(g, planar.system, basis, pool.len() as CycleId + 1),
            chords: planar.chords,
            steps: fx.steps.clone(),
            next: 0,
        })
    }

    pub fn remaining(&self) -> usize {
        self.steps.len() - self.next
    }

    pub fn step(&mut self) -> Result<Option<StepOutcome>> {
        let Some(step) = self.steps.get(self.next).cloned() else {
            return Ok(None);
        };
        self.next += 1;
        let d = &mut self.drawing;
        if step.layer < d.layer {
            return Err(Error::Fixture(
                "steps must not go back to an earlier layer".into(),
            ));
        }
        while d.layer < step.layer {
            d.begin_layer();
        }
        if let Some(adv) = step.advance {
            if let Some(v) = adv.vertex {
                d.ids.next_vertex = d.ids.next_vertex.max(v);
            }
            if let Some(c) = adv.cycle {
                d.ids.next_cycle = d.ids.next_cycle.max(c);
            }
        }
        let [s, t] = step.chord;
        let e = d
            .graph
            .edge_between(s, t)
            .ok_or_else(|| Error::Fixture(format!("({s},{t}) is not an edge")))?;
        let cross: Option<Vec<Seg>> = step
            .cross
            .as_ref()
            .map(|c| c.iter().map(|&[a, b]| seg(a, b)).collect());
        d.insert(&step.region, (e, (s, t)), cross.as_deref())
            .map(Some)
    }

    pub fn run(mut self) -> Result<Drawing> {
        while self.step()?.is_some() {}
        Ok(self.drawing)
    }
}

/// Replay the fixture, then place whatever it leaves unplaced.
pub fn decompose_pinned(g: &Graph, fx: &Fixture, strategy: Strategy) -> Result<Decomposition> {
    let report = validate_nonseparable(g);
    if !report.is_ok() {
        return Err(Error::Separable(report.to_string()));
    }
    let mut d = Replay::new(g, fx)?.run()?;
    complete(&mut d, strategy, true)?;
    Ok(d.finish())
}
