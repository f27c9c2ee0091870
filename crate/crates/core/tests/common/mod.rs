//! Shared fixtures for the integration suites: seeded random connected
//! multigraphs and coupling fields.

#![allow(dead_code)]

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use treeising::topology;
use treeising::{maximum_spanning_tree, Graph, IsingModel, TreePartition};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pick(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Random connected multigraph: a random spanning tree plus extra edges,
/// which may be parallel. No self-loops.
pub fn random_connected_graph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_extra_edges: usize,
) -> Graph {
    let n = 2 + pick(rng, max_vertices - 1);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((pick(rng, v), v));
    }
    for _ in 0..pick(rng, max_extra_edges + 1) {
        let u = pick(rng, n);
        let mut v = pick(rng, n - 1);
        if v >= u {
            v += 1;
        }
        edges.push((u, v));
    }
    Graph::new(n, &edges).expect("generated graph is connected")
}

pub fn random_couplings(rng: &mut ChaCha8Rng, edges: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..edges).map(|_| uniform(rng, lo, hi)).collect()
}

/// Partition on the coupling magnitudes, the CLI default.
pub fn partition_on_abs(model: &IsingModel) -> TreePartition {
    let weights: Vec<f64> = model.couplings().iter().map(|j| j.abs()).collect();
    maximum_spanning_tree(model.graph(), &weights)
}

/// A partition from random tree weights, independent of the couplings.
pub fn random_partition(rng: &mut ChaCha8Rng, graph: &Graph) -> TreePartition {
    let weights: Vec<f64> = (0..graph.edge_count())
        .map(|_| uniform(rng, 0.0, 1.0))
        .collect();
    maximum_spanning_tree(graph, &weights)
}

/// The benchmark suite used by the identity checks: chains, grids, complete
/// graphs, and a few random multigraphs, 20 models in all, every one with
/// `|V| <= 12`, `|T| <= 11`, and `|T̄| <= 13`.
pub fn benchmark_graphs() -> Vec<Graph> {
    let mut graphs = vec![
        topology::periodic_chain(3).unwrap(),
        topology::periodic_chain(4).unwrap(),
        topology::periodic_chain(5).unwrap(),
        topology::periodic_chain(6).unwrap(),
        topology::periodic_chain(8).unwrap(),
        topology::periodic_chain(12).unwrap(),
        topology::lattice_2d(2, 2, false).unwrap(),
        topology::lattice_2d(2, 3, false).unwrap(),
        topology::lattice_2d(2, 5, false).unwrap(),
        topology::lattice_2d(3, 3, false).unwrap(),
        topology::lattice_2d(3, 4, false).unwrap(),
        topology::lattice_2d(3, 3, true).unwrap(),
        topology::complete_graph(3).unwrap(),
        topology::complete_graph(4).unwrap(),
        topology::complete_graph(5).unwrap(),
    ];
    let mut r = rng(0x5eed);
    while graphs.len() < 20 {
        let g = random_connected_graph(&mut r, 10, 6);
        graphs.push(g);
    }
    graphs
}

/// The benchmark graphs with couplings drawn uniformly from `[lo, hi)`.
pub fn benchmark_models(lo: f64, hi: f64) -> Vec<IsingModel> {
    benchmark_graphs()
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            let j = topology::couplings_uniform(&g, lo, hi, 1000 + i as u64);
            IsingModel::new(g, j).unwrap()
        })
        .collect()
}
