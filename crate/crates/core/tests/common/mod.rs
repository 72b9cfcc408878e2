#![allow(dead_code)]

use vchrom::graph::generators::random_graph;
use vchrom::Graph;

/// `count` connected graphs with orders cycling through `orders`, drawn from
/// `G(n, p)` with `p` varying per draw. Deterministic in `seed`.
pub fn connected_corpus(count: usize, orders: std::ops::RangeInclusive<usize>, seed: u64) -> Vec<Graph> {
    let orders: Vec<usize> = orders.collect();
    let mut out = Vec::with_capacity(count);
    let mut draw = seed.wrapping_mul(1_000_003);
    while out.len() < count {
        let n = orders[out.len() % orders.len()];
        let p = 0.25 + 0.6 * ((draw % 97) as f64 / 96.0);
        let g = random_graph(n, p, draw).unwrap();
        draw += 1;
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Random graphs with at least one edge, connected or not.
pub fn graphs_with_edges(count: usize, orders: std::ops::RangeInclusive<usize>, seed: u64) -> Vec<Graph> {
    let orders: Vec<usize> = orders.collect();
    let mut out = Vec::with_capacity(count);
    let mut draw = seed.wrapping_mul(7_919);
    while out.len() < count {
        let n = orders[out.len() % orders.len()];
        let p = 0.1 + 0.8 * ((draw % 89) as f64 / 88.0);
        let g = random_graph(n, p, draw).unwrap();
        draw += 1;
        if g.edge_count() > 0 {
            out.push(g);
        }
    }
    out
}
