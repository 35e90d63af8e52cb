//! Quota Steiner tree with unit edge costs: find a tree of the graph with as
//! few edges as possible whose vertex profits sum to at least a quota.
//!
//! Two engines are provided. [`qst_exact`] is an exact branch-and-bound over
//! connected vertex sets and is meant for small graphs. [`qst_heuristic`] is
//! a ratio greedy that grows a tree along shortest paths.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, Vertex, VertexSet};

/// `Auto` switches to the heuristic above this many vertices.
pub const AUTO_EXACT_MAX_N: usize = 20;

/// Component size limit of the exact engine (one bit per vertex).
pub const EXACT_MAX_N: usize = 64;

/// A tree over host-graph edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexTree {
    vertices: VertexSet,
    edges: Vec<(Vertex, Vertex)>,
    root: Vertex,
}

impl VertexTree {
    pub fn single(v: Vertex) -> Self {
        VertexTree { vertices: VertexSet::singleton(v), edges: Vec::new(), root: v }
    }

    /// Checks that `edges` form a spanning tree of `vertices` containing `root`.
    pub fn from_parts(
        vertices: VertexSet,
        edges: Vec<(Vertex, Vertex)>,
        root: Vertex,
    ) -> Result<Self, Error> {
        if vertices.is_empty() {
            return Err(Error::InvalidTree("no vertices"));
        }
        if !vertices.contains(root) {
            return Err(Error::InvalidTree("root not in tree"));
        }
        if edges.len() + 1 != vertices.len() {
            return Err(Error::InvalidTree("edge count must be vertex count minus one"));
        }
        let index = |v: Vertex| vertices.as_slice().binary_search(&v).ok();
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &edges {
            let (Some(a), Some(b)) = (index(u), index(v)) else {
                return Err(Error::InvalidTree("edge endpoint outside vertex set"));
            };
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::InvalidTree("cycle"));
            }
            parent[ra] = rb;
        }
        Ok(VertexTree { vertices, edges, root })
    }

    /// BFS spanning tree of the subgraph induced by `set`, rooted at its
    /// smallest vertex.
    pub fn spanning(g: &Graph, set: &[Vertex]) -> Option<Self> {
        let edges = g.spanning_tree_edges(set)?;
        let vertices: VertexSet = set.iter().copied().collect();
        let root = vertices.first()?;
        Some(VertexTree { vertices, edges, root })
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    /// Edge count; every edge costs one.
    pub fn cost(&self) -> usize {
        self.edges.len()
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn profit(&self, p: &[u64]) -> u64 {
        self.vertices.iter().map(|v| p[v]).sum()
    }

    /// Whether every tree edge is an edge of `g`.
    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }

    /// Relabels vertices through `map` (local id → host id).
    pub(crate) fn mapped(&self, map: &[Vertex]) -> VertexTree {
        VertexTree {
            vertices: self.vertices.iter().map(|v| map[v]).collect(),
            edges: self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect(),
            root: map[self.root],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum QstMode {
    Exact,
    Heuristic,
    #[default]
    Auto,
}

impl QstMode {
    pub fn name(self) -> &'static str {
        match self {
            QstMode::Exact => "exact",
            QstMode::Heuristic => "heuristic",
            QstMode::Auto => "auto",
        }
    }
}

impl core::str::FromStr for QstMode {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(QstMode::Exact),
            "heuristic" => Ok(QstMode::Heuristic),
            "auto" => Ok(QstMode::Auto),
            _ => Err("expected one of exact, heuristic, auto"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QstEngine {
    Exact,
    Heuristic,
}

impl QstEngine {
    pub fn name(self) -> &'static str {
        match self {
            QstEngine::Exact => "exact",
            QstEngine::Heuristic => "heuristic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QstOutcome {
    pub tree: VertexTree,
    pub engine: QstEngine,
}

fn check_profits(g: &Graph, p: &[u64]) -> Result<(), Error> {
    if p.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), found: p.len() });
    }
    Ok(())
}

/// Components whose total profit reaches `quota`.
fn feasible_components(g: &Graph, p: &[u64], quota: u64) -> Result<Vec<Vec<Vertex>>, Error> {
    let comps: Vec<Vec<Vertex>> = g
        .components()
        .into_iter()
        .filter(|c| c.iter().map(|&v| p[v]).sum::<u64>() >= quota)
        .collect();
    if comps.is_empty() {
        Err(Error::Infeasible { quota })
    } else {
        Ok(comps)
    }
}

/// `a` precedes `b` in lexicographic order of their sorted member lists.
/// Both masks must have the same population count.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

struct ExactSearch<'a> {
    adj: Vec<u64>,
    profit: &'a [u64],
    by_profit: Vec<usize>,
    quota: u64,
    target_size: u32,
    above_root: u64,
    best: Option<u64>,
}

impl ExactSearch<'_> {
    fn upper_bound(&self, mut candidates: u64, mut need: u32) -> u64 {
        let mut total = 0;
        for &v in &self.by_profit {
            if need == 0 || self.profit[v] == 0 {
                break;
            }
            if candidates >> v & 1 == 1 {
                total += self.profit[v];
                need -= 1;
                candidates &= !(1u64 << v);
            }
        }
        total
    }

    // ESU enumeration: every connected set with minimum vertex `root` is
    // visited exactly once.
    fn extend(&mut self, sub: u64, gained: u64, closed: u64, mut ext: u64) {
        let size = sub.count_ones();
        if size == self.target_size {
            if gained >= self.quota && self.best.is_none_or(|b| lex_less(sub, b)) {
                self.best = Some(sub);
            }
            return;
        }
        let reachable = ext | (self.above_root & !closed);
        if gained + self.upper_bound(reachable, self.target_size - size) < self.quota {
            return;
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            let bit = 1u64 << w;
            ext &= !bit;
            let exclusive = self.adj[w] & self.above_root & !closed;
            self.extend(sub | bit, gained + self.profit[w], closed | self.adj[w] | bit, ext | exclusive);
        }
    }
}

/// Smallest (then lexicographically first) connected set of a connected
/// graph `h` with profit at least `quota`.
fn exact_in_component(h: &Graph, profit: &[u64], quota: u64) -> Option<Vec<Vertex>> {
    let n = h.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| h.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let mut by_profit: Vec<usize> = (0..n).collect();
    by_profit.sort_by(|&a, &b| profit[b].cmp(&profit[a]).then(a.cmp(&b)));
    let mut search = ExactSearch {
        adj,
        profit,
        by_profit,
        quota,
        target_size: 0,
        above_root: 0,
        best: None,
    };
    for size in 1..=n as u32 {
        search.target_size = size;
        for (root, &gain) in profit.iter().enumerate() {
            search.above_root = if root + 1 >= 64 { 0 } else { !0u64 << (root + 1) };
            if n < 64 {
                search.above_root &= (1u64 << n) - 1;
            }
            let bit = 1u64 << root;
            let ext = search.adj[root] & search.above_root;
            search.extend(bit, gain, search.adj[root] | bit, ext);
            if let Some(mask) = search.best {
                return Some((0..n).filter(|&v| mask >> v & 1 == 1).collect());
            }
        }
    }
    None
}

/// Exact minimum-edge tree with total profit at least `quota`.
///
/// Ties between equally small trees go to the lexicographically smallest
/// vertex set. `quota = 0` yields the single vertex `0`.
pub fn qst_exact(g: &Graph, p: &[u64], quota: u64) -> Result<VertexTree, Error> {
    check_profits(g, p)?;
    if quota == 0 {
        return Ok(VertexTree::single(0));
    }
    let comps = feasible_components(g, p, quota)?;
    if let Some(c) = comps.iter().find(|c| c.len() > EXACT_MAX_N) {
        return Err(Error::TooLarge { size: c.len(), cap: EXACT_MAX_N });
    }
    let mut best: Option<Vec<Vertex>> = None;
    for comp in comps {
        let h = g.induced_subgraph(&comp);
        let local: Vec<u64> = comp.iter().map(|&v| p[v]).collect();
        let Some(set) = exact_in_component(&h, &local, quota) else {
            continue;
        };
        let set: Vec<Vertex> = set.into_iter().map(|v| comp[v]).collect();
        let better = match &best {
            None => true,
            Some(b) => set.len() < b.len() || (set.len() == b.len() && set < *b),
        };
        if better {
            best = Some(set);
        }
    }
    let set = best.ok_or(Error::Infeasible { quota })?;
    Ok(VertexTree::spanning(g, &set).expect("search only yields connected sets"))
}

/// Ratio greedy: start at the most profitable vertex of a feasible
/// component, then keep attaching the positive-profit vertex minimising
/// (hop distance to the tree) / (its profit) along a shortest path.
pub fn qst_heuristic(g: &Graph, p: &[u64], quota: u64) -> Result<VertexTree, Error> {
    check_profits(g, p)?;
    if quota == 0 {
        return Ok(VertexTree::single(0));
    }
    let comps = feasible_components(g, p, quota)?;
    let seed = comps
        .iter()
        .flatten()
        .copied()
        .fold(None, |best: Option<Vertex>, v| match best {
            Some(b) if p[b] > p[v] || (p[b] == p[v] && b < v) => Some(b),
            _ => Some(v),
        })
        .expect("feasible components are nonempty");

    let mut in_tree = vec![false; g.n()];
    in_tree[seed] = true;
    let mut members = vec![seed];
    let mut edges = Vec::new();
    let mut gained = p[seed];

    while gained < quota {
        let (dist, parent) = g.bfs_from(&members);
        let mut pick: Option<(Vertex, usize)> = None;
        for u in 0..g.n() {
            let Some(d) = dist[u] else { continue };
            if in_tree[u] || p[u] == 0 {
                continue;
            }
            let better = match pick {
                None => true,
                // d / p[u] < bd / p[b]
                Some((b, bd)) => (d as u128) * (p[b] as u128) < (bd as u128) * (p[u] as u128),
            };
            if better {
                pick = Some((u, d));
            }
        }
        let (mut cur, _) = pick.ok_or(Error::Infeasible { quota })?;
        while !in_tree[cur] {
            let prev = parent[cur].expect("path leads back to the tree");
            in_tree[cur] = true;
            members.push(cur);
            edges.push((prev, cur));
            gained += p[cur];
            cur = prev;
        }
    }

    VertexTree::from_parts(members.into_iter().collect(), edges, seed)
}

/// Dispatches to an engine; `Auto` uses the exact engine up to
/// [`AUTO_EXACT_MAX_N`] vertices.
pub fn qst_solve(g: &Graph, p: &[u64], quota: u64, mode: QstMode) -> Result<QstOutcome, Error> {
    let engine = match mode {
        QstMode::Exact => QstEngine::Exact,
        QstMode::Heuristic => QstEngine::Heuristic,
        QstMode::Auto if g.n() <= AUTO_EXACT_MAX_N => QstEngine::Exact,
        QstMode::Auto => QstEngine::Heuristic,
    };
    let tree = match engine {
        QstEngine::Exact => qst_exact(g, p, quota)?,
        QstEngine::Heuristic => qst_heuristic(g, p, quota)?,
    };
    Ok(QstOutcome { tree, engine })
}
