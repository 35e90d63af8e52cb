//! Problem instances and seeded generators.

use cds_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub weights: Option<Vec<u64>>,
    pub capacities: Option<Vec<u64>>,
    pub label: String,
}

const WEIGHT_STREAM: u64 = 1;
const CAPACITY_STREAM: u64 = 2;

impl Instance {
    pub fn new(graph: Graph, label: impl Into<String>) -> Self {
        Instance { graph, weights: None, capacities: None, label: label.into() }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Draws weights uniformly from `0..=max`.
    pub fn with_random_weights(mut self, max: u64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(WEIGHT_STREAM);
        self.weights = Some((0..self.n()).map(|_| rng.gen_range(0..=max)).collect());
        self
    }

    /// Draws capacities uniformly from `min..=max`.
    pub fn with_random_capacities(mut self, min: u64, max: u64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(CAPACITY_STREAM);
        self.capacities = Some((0..self.n()).map(|_| rng.gen_range(min..=max)).collect());
        self
    }
}

/// Largest connected component, relabelled `0..n'` in increasing id order.
/// Ties go to the component holding the smallest vertex.
fn largest_component(n: usize, edges: &[(usize, usize)]) -> Graph {
    let g = Graph::from_edge_list(n, edges).expect("generated edges are in range");
    let comps = g.components();
    let mut best = &comps[0];
    for c in &comps[1..] {
        if c.len() > best.len() {
            best = c;
        }
    }
    g.induced_subgraph(best)
}

/// Spider graph: `heads` hubs in a row, consecutive hubs joined by paths of
/// `path_len` internal vertices, each hub carrying `legs` pendant paths of
/// `leg_len` vertices. Vertices are numbered hubs first, then connector
/// paths, then legs.
pub fn gen_spider(heads: usize, path_len: usize, legs: usize, leg_len: usize) -> Instance {
    assert!(heads >= 2 && path_len >= 1 && legs >= 1, "spider needs heads >= 2, c >= 1, M >= 1");
    let mut edges = Vec::new();
    let mut next = heads;
    for h in 0..heads - 1 {
        let mut prev = h;
        for _ in 0..path_len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, h + 1));
    }
    for h in 0..heads {
        for _ in 0..legs {
            let mut prev = h;
            for _ in 0..leg_len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
    }
    let graph = Graph::from_edge_list(next, &edges).expect("spider edges are in range");
    Instance::new(graph, format!("spider heads={heads} c={path_len} legs={legs} leg_len={leg_len}"))
}

/// Erdős–Rényi `G(n, p)` restricted to its largest component.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Instance {
    assert!(n >= 1, "gnp needs at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Instance::new(largest_component(n, &edges), format!("gnp n={n} p={p} seed={seed}"))
}

/// `n` uniform points in the unit square, joined when at most `radius`
/// apart; largest component.
pub fn gen_unit_disk(n: usize, radius: f64, seed: u64) -> Instance {
    assert!(n >= 1, "unit disk needs at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (dx, dy) = (points[u].0 - points[v].0, points[u].1 - points[v].1);
            if dx * dx + dy * dy <= radius * radius {
                edges.push((u, v));
            }
        }
    }
    Instance::new(largest_component(n, &edges), format!("unitdisk n={n} r={radius} seed={seed}"))
}
