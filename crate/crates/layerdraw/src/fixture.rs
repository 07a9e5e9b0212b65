//! Pinned planar systems and insertion scripts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::system::CycleId;

/// Where a route may run. Named regions refer to the Hamiltonian partition of
/// layer 1; a list names layer-1 faces whose descendants form the region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegionSpec {
    Named(NamedRegion),
    Faces(Vec<CycleId>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedRegion {
    Inner,
    Outer,
    All,
}

impl Default for RegionSpec {
    fn default() -> Self {
        RegionSpec::Named(NamedRegion::All)
    }
}

/// Jump the id counters forward, for scripts that continue another script's numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Advance {
    #[serde(default)]
    pub vertex: Option<VertexId>,
    #[serde(default)]
    pub cycle: Option<CycleId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub layer: usize,
    #[serde(default)]
    pub region: RegionSpec,
    /// Source and target of the connection.
    pub chord: [VertexId; 2],
    /// Segments crossed, in order from the source. Absent means: use the
    /// shortest route in the region.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross: Option<Vec<[VertexId; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advance: Option<Advance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    /// Vertex count of the graph the fixture belongs to.
    pub n: u32,
    /// Layer-1 cycle ids from the isometric-cycle pool.
    pub cycles: Vec<CycleId>,
    pub rim: CycleId,
    /// Explicit orientation per cycle id (rim included), as vertex rings.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub oriented: BTreeMap<CycleId, Vec<VertexId>>,
    /// Cycles inside the Hamiltonian ring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inside: Option<Vec<CycleId>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<Step>,
}

/// A fixture file maps names to fixtures.
pub fn parse_fixtures(text: &str) -> Result<BTreeMap<String, Fixture>> {
    serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))
}

/// Pick a fixture by name, or the only one matching `n` when no name is given.
pub fn choose_fixture(
    all: &BTreeMap<String, Fixture>,
    name: Option<&str>,
    n: u32,
) -> Result<Fixture> {
    if let Some(name) = name {
        return all
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Fixture(format!("no fixture named {name:?}")));
    }
    let matching: Vec<&Fixture> = all.values().filter(|f| f.n == n).collect();
    match matching.as_slice() {
        [one] => Ok((*one).clone()),
        [] => Err(Error::Fixture(format!(
            "no fixture for a graph on {n} vertices"
        ))),
        _ => Err(Error::Fixture(format!(
            "several fixtures fit {n} vertices; choose one of {:?}",
            all.keys().collect::<Vec<_>>()
        ))),
    }
}

pub const K7_FIXTURES: &str = include_str!("../fixtures/k7.json");
pub const K8_FIXTURES: &str = include_str!("../fixtures/k8.json");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        let k7 = parse_fixtures(K7_FIXTURES).unwrap();
        assert!(k7.contains_key("k7-inner"));
        assert!(k7.contains_key("k7-outer"));
        let k8 = parse_fixtures(K8_FIXTURES).unwrap();
        assert_eq!(k8["k8"].cycles.len(), 11);
        assert!(choose_fixture(&k8, None, 8).is_ok());
        assert!(choose_fixture(&k7, None, 7).is_err());
        assert!(choose_fixture(&k7, Some("k7-outer"), 7).is_ok());
    }

    #[test]
    fn region_spec_forms() {
        let s: Step =
            serde_json::from_str(r#"{"layer":2,"region":"inner","chord":[2,4]}"#).unwrap();
        assert_eq!(s.region, RegionSpec::Named(NamedRegion::Inner));
        let s: Step =
            serde_json::from_str(r#"{"layer":2,"region":[1,5,15],"chord":[3,6]}"#).unwrap();
        assert_eq!(s.region, RegionSpec::Faces(vec![1, 5, 15]));
    }
}
