//! Shared fixtures for the criterion benches.

use graphcode::{Graph, LinearCode, LocalCodeAssignment};

/// A seeded random regular graph of the given size, for bench reproducibility.
pub fn bench_graph(n: usize, d: usize) -> Graph {
    Graph::random_regular(n, d, 0xbe5c).expect("bench graph parameters are feasible")
}

/// A seeded random code, for bench reproducibility.
pub fn bench_code(n: usize, k: usize) -> LinearCode {
    LinearCode::random_code(n, k, 0xbe5c).expect("bench code parameters are feasible")
}

/// Random local codes of dimension `ceil(d/2) + 1` on every vertex (rate just
/// above 1/2, the regime the bounds care about).
pub fn bench_assignment(graph: &Graph, d: usize) -> LocalCodeAssignment {
    LocalCodeAssignment::uniform_random(graph, d / 2 + 1, 0xbe5c)
        .expect("degrees admit the requested dimension")
}
