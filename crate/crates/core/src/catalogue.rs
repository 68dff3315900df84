//! Small graph catalogues for exhaustive checks.

use std::collections::HashSet;

use crate::error::Result;
use crate::graph::Graph;
use crate::patterns::{self, MAX_VERTICES};

/// Every labelled graph on `n` vertices, by edge subset of `K_n` (`n <= 11`).
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 11, "2^{} labelled graphs is too many", n * n.saturating_sub(1) / 2);
    let pairs = Graph::complete(n).edges().to_vec();
    (0..1u64 << pairs.len()).map(move |mask| {
        Graph::from_edges(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
        .expect("subset of K_n")
    })
}

/// One graph per isomorphism class on exactly `n` vertices, in first-seen
/// order of [`labelled_graphs`].
pub fn graphs_up_to_isomorphism(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_VERTICES {
        return Err(crate::error::Error::SizeLimit {
            guard: "graph catalogue: vertices <= 10",
            limit: MAX_VERTICES,
            actual: n,
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in labelled_graphs(n) {
        if seen.insert(patterns::graph_code(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}

/// All graphs with between 1 and `max_n` vertices, up to isomorphism.
pub fn catalogue(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(graphs_up_to_isomorphism(n)?);
    }
    Ok(out)
}
