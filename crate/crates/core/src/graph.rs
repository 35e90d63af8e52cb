//! Simple undirected graphs over vertices `0..n`, plus the vertex-set type
//! used throughout the crate.
//!
//! Every traversal visits neighbours in increasing id order, so anything
//! built on top of these primitives breaks ties toward the smallest id.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

pub type Vertex = usize;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    /// Builds a set from an already sorted, deduplicated vector.
    pub fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Returns `true` if `v` was not present.
    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut members: Vec<Vertex> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(members: Vec<Vertex>) -> Self {
        members.into_iter().collect()
    }
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph on `n` vertices, symmetrising and deduplicating `edges`.
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoopRejected(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn edgeless(n: usize) -> Result<Self, Error> {
        Self::from_edge_list(n, &[])
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    fn check(&self, v: Vertex) -> Result<(), Error> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    /// `{v} ∪ adj(v)`.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet, Error> {
        self.check(v)?;
        let mut members = self.adj[v].clone();
        let pos = members.binary_search(&v).unwrap_err();
        members.insert(pos, v);
        Ok(VertexSet(members))
    }

    /// Closed neighbourhood of a whole set: everything it dominates.
    pub fn dominated_by(&self, set: &[Vertex]) -> VertexSet {
        let mut mark = vec![false; self.n()];
        for &v in set {
            mark[v] = true;
            for &u in &self.adj[v] {
                mark[u] = true;
            }
        }
        VertexSet(
            mark.iter()
                .enumerate()
                .filter_map(|(v, &m)| m.then_some(v))
                .collect(),
        )
    }

    pub fn domination_count(&self, set: &[Vertex]) -> usize {
        self.dominated_by(set).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Whether `set` induces a connected subgraph. Empty sets and singletons do.
    pub fn is_connected_induced(&self, set: &[Vertex]) -> bool {
        let Some(&start) = set.first() else {
            return true;
        };
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if inside[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        set.iter().all(|&v| seen[v])
    }

    /// Multi-source BFS. Returns hop distances and BFS parents; sources have
    /// no parent.
    pub fn bfs_from(&self, sources: &[Vertex]) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
        let n = self.n();
        let mut dist = vec![None; n];
        let mut parent = vec![None; n];
        let mut queue = VecDeque::new();
        let mut ordered: Vec<Vertex> = sources.to_vec();
        ordered.sort_unstable();
        ordered.dedup();
        for s in ordered {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    parent[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
        (dist, parent)
    }

    /// Minimum-hop path from `src` to `dst`, both inclusive.
    pub fn shortest_path(&self, src: Vertex, dst: Vertex) -> Result<Vec<Vertex>, Error> {
        self.check(src)?;
        self.check(dst)?;
        let (dist, parent) = self.bfs_from(&[src]);
        if dist[dst].is_none() {
            return Err(Error::Unreachable { from: src, to: dst });
        }
        let mut path = vec![dst];
        let mut cur = dst;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok(path)
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph induced by `vertices` (sorted), relabelled `0..len` in order.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<Vertex> = self.adj[v]
                    .iter()
                    .filter(|&&u| local[u] != usize::MAX)
                    .map(|&u| local[u])
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adj }
    }

    /// BFS spanning tree of the subgraph induced by `set`, rooted at its
    /// smallest vertex. `None` when the set is empty or disconnected.
    pub fn spanning_tree_edges(&self, set: &[Vertex]) -> Option<Vec<(Vertex, Vertex)>> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let &root = sorted.first()?;
        let mut inside = vec![false; self.n()];
        for &v in &sorted {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut edges = Vec::with_capacity(sorted.len() - 1);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if inside[u] && !seen[u] {
                    seen[u] = true;
                    edges.push((v, u));
                    queue.push_back(u);
                }
            }
        }
        (edges.len() + 1 == sorted.len()).then_some(edges)
    }
}
