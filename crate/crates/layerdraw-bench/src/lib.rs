//! Inputs shared by the benchmarks.

use layerdraw::Graph;

/// Complete graphs K4..=K`max`.
pub fn complete_graphs(max: u32) -> Vec<(String, Graph)> {
    (4..=max)
        .map(|n| (format!("K{n}"), Graph::complete(n)))
        .collect()
}
