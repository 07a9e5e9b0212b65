//! Layered topological drawings of nonseparable graphs.
//!
//! Layer 1 is a planar system of isometric cycles with a rim. The remaining
//! edges (chords) are projected onto a Hamiltonian ring, filtered to a
//! non-crossing subset, and routed through chains of conjugate cycles; every
//! crossing with an earlier layer becomes an imaginary vertex of degree 4.

pub mod cycles;
pub mod doc;
pub mod error;
pub mod fixture;
pub mod graph;
pub mod intersect;
pub mod layering;
pub mod planar;
pub mod render;
pub mod router;
pub mod system;
pub mod verify;

pub use cycles::enumerate_isometric_cycles;
pub use doc::DecompositionDocument;
pub use error::{Error, ParseError, Result};
pub use fixture::{Fixture, RegionSpec, Step};
pub use graph::{parse_graph, validate_nonseparable, EdgeId, Graph, Seg, VertexId};
pub use intersect::{
    brute_force_max_noncrossing, chords_cross, crossing_counts, project_chord, select_noncrossing,
    Chord, CoordinateBasis, Projection,
};
pub use layering::{
    decompose, decompose_pinned, layer_edge_partition, split_regions, strip_imaginary_region,
    DecomposeOptions, Decomposition, Drawing, ImaginaryVertex, Layer, Replay, Strategy,
};
pub use planar::{
    hamiltonian_rim, orient_cycles, pinned_system, select_planar_cycle_system, ChordSet,
    HamiltonianRim, PlanarOptions, PlanarSubgraph,
};
pub use router::{
    build_mixed_cycle_graph, conjugate_edge, insert_connection, shortest_route, MixedCycleGraph,
    Route,
};
pub use system::{Cycle, CycleId, CycleSystem, IdAllocator};
pub use verify::{verify_document, VerificationReport};
