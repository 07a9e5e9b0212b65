//! Undirected simple graphs with stable 1-based vertex and edge ids.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Vertex id. Original vertices are `1..=n`; imaginary vertices are allocated after `n`.
pub type VertexId = u32;
/// Edge id, 1-based, in input order.
pub type EdgeId = u32;

/// Normalized undirected vertex pair `(min, max)`.
pub type Seg = (VertexId, VertexId);

pub fn seg(a: VertexId, b: VertexId) -> Seg {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRecord", into = "GraphRecord")]
pub struct Graph {
    pub n: u32,
    /// `edges[i]` is edge `i + 1`.
    pub edges: Vec<(VertexId, VertexId)>,
    index: HashMap<Seg, EdgeId>,
}

#[derive(Serialize, Deserialize)]
struct GraphRecord {
    n: u32,
    edges: Vec<[VertexId; 2]>,
}

impl From<Graph> for GraphRecord {
    fn from(g: Graph) -> Self {
        GraphRecord {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphRecord> for Graph {
    type Error = ParseError;
    fn try_from(r: GraphRecord) -> Result<Self, ParseError> {
        Graph::new(r.n, r.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

impl Graph {
    pub fn new(n: u32, edges: Vec<(VertexId, VertexId)>) -> Result<Self, ParseError> {
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            let line = i + 1;
            if u == 0 || v == 0 || u > n || v > n {
                return Err(ParseError::Malformed {
                    line,
                    text: format!("{u} {v}"),
                });
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            if index.insert(seg(u, v), i as EdgeId + 1).is_some() {
                return Err(ParseError::Duplicate { line, u, v });
            }
        }
        Ok(Graph { n, edges, index })
    }

    /// Complete graph K_n with edges in lexicographic pair order.
    pub fn complete(n: u32) -> Self {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.n
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e as usize - 1]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.index.get(&seg(u, v)).copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        1..=self.edges.len() as EdgeId
    }

    /// Sorted adjacency lists, index 0 unused.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Graph without the given edges; remaining edges keep their relative order
    /// but are renumbered.
    pub fn without_edges(&self, drop: &[EdgeId]) -> Graph {
        let drop: BTreeSet<EdgeId> = drop.iter().copied().collect();
        let edges = self
            .edge_ids()
            .filter(|e| !drop.contains(e))
            .map(|e| self.endpoints(e))
            .collect();
        Graph::new(self.n, edges).expect("subgraph of a simple graph is simple")
    }

    /// BFS distances from `s`; unreachable vertices get `u32::MAX`.
    pub fn distances_from(&self, adj: &[Vec<VertexId>], s: VertexId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n as usize + 1];
        let mut queue = std::collections::VecDeque::new();
        dist[s as usize] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parse "u v" lines. `#` starts a comment; blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut edges = Vec::new();
    let mut seen: HashMap<Seg, usize> = HashMap::new();
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let parsed: Vec<u32> = fields.iter().filter_map(|f| f.parse().ok()).collect();
        if fields.len() != 2 || parsed.len() != 2 || parsed.contains(&0) {
            return Err(ParseError::Malformed {
                line,
                text: raw.to_string(),
            });
        }
        let (u, v) = (parsed[0], parsed[1]);
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if seen.insert(seg(u, v), line).is_some() {
            return Err(ParseError::Duplicate { line, u, v });
        }
        n = n.max(u).max(v);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(ParseError::Empty);
    }
    Graph::new(n, edges)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeparabilityReport {
    pub disconnected: bool,
    pub bridges: Vec<EdgeId>,
    pub cut_vertices: Vec<VertexId>,
    pub low_degree: Vec<VertexId>,
}

impl SeparabilityReport {
    pub fn is_ok(&self) -> bool {
        !self.disconnected
            && self.bridges.is_empty()
            && self.cut_vertices.is_empty()
            && self.low_degree.is_empty()
    }
}

impl std::fmt::Display for SeparabilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "nonseparable");
        }
        let mut parts = Vec::new();
        if self.disconnected {
            parts.push("graph is disconnected".to_string());
        }
        if !self.bridges.is_empty() {
            parts.push(format!("bridges {:?}", self.bridges));
        }
        if !self.cut_vertices.is_empty() {
            parts.push(format!("cut vertices {:?}", self.cut_vertices));
        }
        if !self.low_degree.is_empty() {
            parts.push(format!("degree < 3 at {:?}", self.low_degree));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Connectivity, bridges and cut vertices via DFS lowpoints, plus the degree bound.
pub fn validate_nonseparable(g: &Graph) -> SeparabilityReport {
    let n = g.n as usize;
    let mut report = SeparabilityReport::default();
    let mut inc: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n + 1];
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        inc[u as usize].push((v, e));
        inc[v as usize].push((u, e));
    }
    for v in g.vertices() {
        if inc[v as usize].len() < 3 {
            report.low_degree.push(v);
        }
    }
    if n == 0 {
        report.disconnected = true;
        return report;
    }

    let mut disc = vec![0u32; n + 1];
    let mut low = vec![0u32; n + 1];
    let mut is_cut = vec![false; n + 1];
    let mut time = 0u32;
    // iterative DFS: (vertex, parent edge, next incidence index, child count)
    let mut stack: Vec<(VertexId, EdgeId, usize, u32)> = Vec::new();
    time += 1;
    disc[1] = time;
    low[1] = time;
    stack.push((1, 0, 0, 0));
    while let Some(top) = stack.last_mut() {
        let (v, pe, idx, _) = *top;
        if idx < inc[v as usize].len() {
            top.2 += 1;
            let (w, e) = inc[v as usize][idx];
            if e == pe {
                continue;
            }
            if disc[w as usize] == 0 {
                top.3 += 1;
                time += 1;
                disc[w as usize] = time;
                low[w as usize] = time;
                stack.push((w, e, 0, 0));
            } else {
                low[v as usize] = low[v as usize].min(disc[w as usize]);
            }
        } else {
            let (v, pe, _, children) = stack.pop().unwrap();
            if let Some(parent) = stack.last() {
                let p = parent.0;
                low[p as usize] = low[p as usize].min(low[v as usize]);
                if low[v as usize] > disc[p as usize] {
                    report.bridges.push(pe);
                }
                if stack.len() > 1 && low[v as usize] >= disc[p as usize] {
                    is_cut[p as usize] = true;
                }
            } else if children > 1 {
                is_cut[v as usize] = true;
            }
        }
    }
    report.disconnected = g.vertices().any(|v| disc[v as usize] == 0);
    report.bridges.sort_unstable();
    report.cut_vertices = g.vertices().filter(|&v| is_cut[v as usize]).collect();
    report
}
