//! Fixture builders shared by the benchmarks.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use arbopack::digraph::{FinDigraph, VertexId};

/// Random weakly dense multidigraph on `n` vertices with roughly `3n`
/// edges, seeded for reproducible benchmark inputs.
pub fn dense_graph(n: usize, seed: u64) -> FinDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<VertexId> = (0..n).map(|i| VertexId::new(format!("v{i}"))).collect();
    let mut pairs = Vec::new();
    // A spanning backbone first so packing instances are mostly feasible.
    for i in 1..n {
        pairs.push((names[0].clone(), names[i].clone()));
        pairs.push((names[i].clone(), names[(i + 1) % n].clone()));
    }
    for _ in 0..n {
        let t = rng.gen_range(0..n);
        let mut h = rng.gen_range(0..n - 1);
        if h >= t {
            h += 1;
        }
        pairs.push((names[t].clone(), names[h].clone()));
    }
    FinDigraph::from_pairs(names, pairs).unwrap()
}

pub fn root() -> VertexId {
    VertexId::from("v0")
}
