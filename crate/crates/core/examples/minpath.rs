//! Exact minimum-weight Hamiltonian path of the overlap digraph.
//!
//! cargo run --release --example minpath -- 4

use std::time::Instant;

use shiftrank::overlap::{min_hamiltonian_path, OverlapDigraph, SearchOptions};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let g = OverlapDigraph::build(n, 7).expect("n between 2 and 7");
    let start = Instant::now();
    let cert = min_hamiltonian_path(&g, SearchOptions::default()).expect("connected");
    let stats = cert.stats.clone().unwrap_or_default();
    println!(
        "n = {n}: total {} optimal {} ({} nodes, {} cutoffs, {:?})",
        cert.total,
        cert.optimal,
        stats.nodes_expanded,
        stats.bound_cutoffs,
        start.elapsed()
    );
}
