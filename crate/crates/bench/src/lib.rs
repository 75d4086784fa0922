//! Fixed inputs shared by the benchmarks.

use semedge_core::{random_instance, Admg, GraphSpec, SemParameters};

/// A seeded random instance on `n` vertices with the default edge densities.
pub fn instance(n: usize, seed: u64) -> SemParameters {
    let spec = GraphSpec {
        n,
        max_directed: 3 * n,
        max_bidirected: n,
        ..GraphSpec::default()
    };
    random_instance(&spec, seed).expect("random instance")
}

pub fn verma() -> Admg {
    Admg::from_edge_strs(&["1", "2", "3", "4"], &["1->2", "2->3", "3->4", "1->3", "2<->4"]).expect("verma graph")
}

pub fn double_verma() -> Admg {
    Admg::from_edge_strs(
        &["0", "1", "2", "3", "4"],
        &["0->1", "1->2", "2->3", "3->4", "1->3", "2<->4", "0<->2", "0<->3", "0<->4"],
    )
    .expect("double verma graph")
}
