//! Benchmark topologies, coupling fields, and edge-list parsing.
//!
//! All vertex indexing is 0-based. The edge-list text format is one edge per
//! line, `u v J`, whitespace-separated, with `#` comments and blank lines
//! ignored; line order defines the edge ids.

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sampler;

/// Cycle graph on `n >= 3` vertices; edge `i` connects `i` and `(i+1) mod n`.
pub fn periodic_chain(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::TooSmall {
            what: "periodic chain length",
            min: 3,
            got: n,
        });
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// Grid on `rows x cols` vertices in row-major order. For each vertex the
/// rightward edge is emitted before the downward one. Periodic boundaries
/// wrap both directions and need `rows, cols >= 3` to avoid parallel edges.
pub fn lattice_2d(rows: usize, cols: usize, periodic: bool) -> Result<Graph> {
    let min = if periodic { 3 } else { 2 };
    for (what, got) in [("lattice rows", rows), ("lattice cols", cols)] {
        if got < min {
            return Err(Error::TooSmall { what, min, got });
        }
    }
    let index = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if periodic || c + 1 < cols {
                edges.push((index(r, c), index(r, (c + 1) % cols)));
            }
            if periodic || r + 1 < rows {
                edges.push((index(r, c), index((r + 1) % rows, c)));
            }
        }
    }
    Graph::new(rows * cols, &edges)
}

/// All `n (n-1) / 2` edges in lexicographic order.
pub fn complete_graph(n: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(n.saturating_sub(1) * n / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// The same coupling on every edge.
pub fn couplings_constant(graph: &Graph, coupling: f64) -> Vec<f64> {
    vec![coupling; graph.edge_count()]
}

/// One coupling per edge drawn uniformly from `[lo, hi)`, deterministic in
/// the seed. A degenerate interval (`lo == hi`) yields the constant field.
pub fn couplings_uniform(graph: &Graph, lo: f64, hi: f64, seed: u64) -> Vec<f64> {
    assert!(lo.is_finite() && hi.is_finite() && lo <= hi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..graph.edge_count())
        .map(|_| lo + (hi - lo) * sampler::unit_f64(&mut rng))
        .collect()
}

/// Parses edge-list text into a graph and its coupling vector. The vertex
/// count is one past the largest vertex id.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<f64>)> {
    let mut endpoints = Vec::new();
    let mut couplings = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::MalformedLine {
                line,
                reason: format!("expected 'u v J', got {} fields", fields.len()),
            });
        }
        let parse_vertex = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::MalformedLine {
                line,
                reason: format!("bad vertex id {s:?}"),
            })
        };
        let u = parse_vertex(fields[0])?;
        let v = parse_vertex(fields[1])?;
        let coupling: f64 = fields[2].parse().map_err(|_| Error::MalformedLine {
            line,
            reason: format!("bad coupling {:?}", fields[2]),
        })?;
        if !coupling.is_finite() {
            return Err(Error::NonFiniteCoupling { line });
        }
        endpoints.push((u, v));
        couplings.push(coupling);
    }
    let vertex_count = endpoints
        .iter()
        .map(|&(u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    let graph = Graph::new(vertex_count.max(1), &endpoints)?;
    Ok((graph, couplings))
}

/// Renders a graph and couplings in the edge-list format; couplings use the
/// shortest round-trip decimal form, so parsing the output reproduces them
/// exactly.
pub fn render_edge_list(graph: &Graph, couplings: &[f64]) -> String {
    assert_eq!(couplings.len(), graph.edge_count());
    let mut out = String::from("# u v J\n");
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        out.push_str(&format!("{u} {v} {}\n", couplings[e]));
    }
    out
}
