use thiserror::Error;

use crate::graph::{EdgeId, Seg, VertexId};
use crate::system::CycleId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected two positive vertex ids, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: duplicate edge {u} {v}")]
    Duplicate {
        line: usize,
        u: VertexId,
        v: VertexId,
    },
    #[error("input contains no edges")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("graph is not nonseparable: {0}")]
    Separable(String),
    #[error("cycle {cycle} is not a closed simple walk")]
    BadCycle { cycle: CycleId },
    #[error("unknown cycle id {0}")]
    UnknownCycle(CycleId),
    #[error("edge {0:?} is covered {1} times; a cycle system needs exactly 2")]
    Cover(Seg, usize),
    #[error("cannot orient cycles consistently at edge {0:?}")]
    Orientation(Seg),
    #[error("cycles do not form a disc bounded by one simple ring")]
    NotARing,
    #[error("no Hamiltonian ring found within budget")]
    NoHamiltonian,
    #[error("vertex {0} is not on the basis ring")]
    OffRing(VertexId),
    #[error("cycles {0} and {1} are not conjugate (share {2} edges)")]
    NotConjugate(CycleId, CycleId, usize),
    #[error("no route for chord e{chord} ({s},{t})")]
    NoRoute {
        chord: EdgeId,
        s: VertexId,
        t: VertexId,
    },
    #[error("degenerate crossing in cycle {cycle}: connection touches instead of crossing")]
    Degenerate { cycle: CycleId },
    #[error("invalid route: {0}")]
    BadRoute(String),
    #[error("fixture: {0}")]
    Fixture(String),
    #[error("chord e{chord} could not be placed in any layer")]
    Stuck { chord: EdgeId },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
