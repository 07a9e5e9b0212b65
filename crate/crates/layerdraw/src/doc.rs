//! JSON document for a layered decomposition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::layering::{Decomposition, ImaginaryVertex, Layer};
use crate::system::{Cycle, CycleId, CycleSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub id: CycleId,
    pub arcs: Vec<[VertexId; 2]>,
}

impl CycleRecord {
    pub fn of(c: &Cycle) -> Self {
        CycleRecord {
            id: c.id,
            arcs: c.arcs().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_cycle(&self) -> Result<Cycle> {
        let arcs: Vec<(VertexId, VertexId)> = self.arcs.iter().map(|&[a, b]| (a, b)).collect();
        Cycle::from_arcs(self.id, &arcs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRecord {
    pub index: usize,
    pub cycles: Vec<CycleRecord>,
    /// Outer face; absent once the faces close up into a sphere.
    pub rim: Option<CycleRecord>,
    pub realized: Vec<EdgeId>,
    pub imaginary: Vec<ImaginaryVertex>,
}

impl LayerRecord {
    pub fn of(l: &Layer) -> Self {
        let mut cycles: Vec<CycleRecord> = l.system.cycles.iter().map(CycleRecord::of).collect();
        cycles.sort_by_key(|c| c.id);
        LayerRecord {
            index: l.index,
            cycles,
            rim: l.system.rim.as_ref().map(CycleRecord::of),
            realized: l.realized.clone(),
            imaginary: l.imaginary.clone(),
        }
    }

    /// Faces with the rim last.
    pub fn faces(&self) -> impl Iterator<Item = &CycleRecord> {
        self.cycles.iter().chain(self.rim.iter())
    }

    /// Faces as cycles, when every arc list is a closed simple walk.
    pub fn system(&self) -> Result<CycleSystem> {
        let cycles = self
            .cycles
            .iter()
            .map(CycleRecord::to_cycle)
            .collect::<Result<Vec<_>>>()?;
        let rim = self.rim.as_ref().map(CycleRecord::to_cycle).transpose()?;
        Ok(CycleSystem::new(cycles, rim))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub graph: Graph,
    pub layers: Vec<LayerRecord>,
}

impl DecompositionDocument {
    pub fn of(d: &Decomposition) -> Self {
        DecompositionDocument {
            graph: d.graph.clone(),
            layers: d.layers.iter().map(LayerRecord::of).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Fixture(format!("bad document: {e}")))
    }

    pub fn layer(&self, index: usize) -> Option<&LayerRecord> {
        self.layers.iter().find(|l| l.index == index)
    }
}

impl From<&Decomposition> for DecompositionDocument {
    fn from(d: &Decomposition) -> Self {
        DecompositionDocument::of(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layering::{decompose, DecomposeOptions};

    #[test]
    fn roundtrip_is_byte_identical() {
        let d = decompose(&Graph::complete(6), DecomposeOptions::default()).unwrap();
        let doc = DecompositionDocument::of(&d);
        let text = doc.to_json();
        let back = DecompositionDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn cycle_records_rebuild() {
        let c = Cycle::new(4, vec![1, 2, 3]);
        let r = CycleRecord::of(&c);
        assert_eq!(r.arcs, vec![[1, 2], [2, 3], [3, 1]]);
        assert_eq!(r.to_cycle().unwrap(), c);
        let broken = CycleRecord {
            id: 4,
            arcs: vec![[1, 2], [3, 1]],
        };
        assert!(broken.to_cycle().is_err());
    }

    #[test]
    fn malformed_document_is_rejected() {
        assert!(DecompositionDocument::from_json("{\"graph\":{}}").is_err());
    }
}
