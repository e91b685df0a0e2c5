#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use symcube::circulation::{FlowNetwork, VertexRole};
use symcube::cli::parse_grid;
use symcube::LatinCube;

pub const ORDER2: &str = include_str!("../../fixtures/order2.grid");
pub const ORDER5: &str = include_str!("../../fixtures/order5.grid");
pub const ORDER6: &str = include_str!("../../fixtures/order6.grid");
pub const ORDER8: &str = include_str!("../../fixtures/order8.grid");

pub fn fixture(text: &str) -> LatinCube {
    parse_grid(text).expect("fixture parses")
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// A conserving network built as a sum of random directed cycles, with
/// denominator at most 12 and at most `max_edges` edges.
pub fn random_network(rng: &mut impl Rng, max_edges: usize) -> FlowNetwork {
    let denom = rng.gen_range(1..=12u64);
    let vertices = rng.gen_range(2..=24usize);
    let mut net = FlowNetwork::new(denom).unwrap();
    for _ in 0..vertices {
        net.add_vertex(VertexRole::Generic);
    }
    let target = rng.gen_range(2..=max_edges);
    let ids: Vec<usize> = (0..vertices).collect();
    loop {
        let len = rng.gen_range(2..=vertices.min(8));
        if net.edges().len() + len > target {
            break;
        }
        let cycle: Vec<usize> = ids.choose_multiple(rng, len).copied().collect();
        let value = rng.gen_range(1..=3 * denom);
        for k in 0..len {
            net.add_edge(cycle[k], cycle[(k + 1) % len], value).unwrap();
        }
    }
    net
}
