//! Rooted trees with vertex profits: the Jordan split, the 13-part
//! decomposition, and the best-`k`-subtree dynamic program that turns an
//! oversized quota tree into a budget-respecting one.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Vertex, VertexSet};
use crate::qst::VertexTree;

/// Smallest budget accepted by [`decompose_13`].
pub const MIN_DECOMPOSITION_BUDGET: usize = 3;

/// Largest tree accepted by the exhaustive [`brute_best_subtree`].
pub const BRUTE_MAX_N: usize = 18;

/// A rooted tree over host-graph vertex labels.
///
/// Internally vertices are indexed `0..len`; `labels[i]` is the host id of
/// local vertex `i`. Children are kept in increasing label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    labels: Vec<Vertex>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    profit: Vec<u64>,
}

impl RootedTree {
    /// Builds a tree from host labels, host-labelled edges, a root label and
    /// per-vertex profits aligned with `labels`.
    pub fn new(
        labels: Vec<Vertex>,
        edges: &[(Vertex, Vertex)],
        root: Vertex,
        profit: Vec<u64>,
    ) -> Result<Self, Error> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTree("no vertices"));
        }
        if profit.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: profit.len() });
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree("edge count must be vertex count minus one"));
        }
        let mut sorted: Vec<(Vertex, usize)> = labels.iter().copied().zip(0..).collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidTree("duplicate label"));
        }
        let local = |v: Vertex| {
            sorted
                .binary_search_by_key(&v, |&(l, _)| l)
                .map(|pos| sorted[pos].1)
                .map_err(|_| Error::InvalidTree("edge endpoint outside vertex set"))
        };
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            let (a, b) = (local(u)?, local(v)?);
            if a == b {
                return Err(Error::InvalidTree("self-loop"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let root = local(root).map_err(|_| Error::InvalidTree("root not in tree"))?;
        Self::orient(labels, &adj, root, profit)
    }

    /// Tree on local labels `0..n`, rooted at `0`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], profit: Vec<u64>) -> Result<Self, Error> {
        Self::new((0..n).collect(), edges, 0, profit)
    }

    /// Lifts a [`VertexTree`] with host-indexed profits `p`.
    pub fn from_vertex_tree(tree: &VertexTree, p: &[u64]) -> Result<Self, Error> {
        let labels = tree.vertices().as_slice().to_vec();
        let profit = labels.iter().map(|&v| p[v]).collect();
        Self::new(labels, tree.edges(), tree.root(), profit)
    }

    /// Same shape with new profits.
    pub fn with_profits(&self, profit: Vec<u64>) -> Result<Self, Error> {
        if profit.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: profit.len() });
        }
        Ok(RootedTree { profit, ..self.clone() })
    }

    fn orient(
        labels: Vec<Vertex>,
        adj: &[Vec<usize>],
        root: usize,
        profit: Vec<u64>,
    ) -> Result<Self, Error> {
        let n = labels.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut children = vec![Vec::new(); n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    parent[u] = Some(v);
                    children[v].push(u);
                    queue.push_back(u);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidTree("not connected"));
        }
        for list in &mut children {
            list.sort_unstable_by_key(|&c| labels[c]);
        }
        Ok(RootedTree { labels, parent, children, root, profit })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn root_label(&self) -> Vertex {
        self.labels[self.root]
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn profits(&self) -> &[u64] {
        &self.profit
    }

    pub fn profit_sum(&self) -> u64 {
        self.profit.iter().sum()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.labels.iter().copied().collect()
    }

    /// Parent–child edges in host labels.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.len())
            .filter_map(|v| self.parent[v].map(|p| (self.labels[p], self.labels[v])))
            .collect()
    }

    pub fn to_vertex_tree(&self) -> VertexTree {
        VertexTree::from_parts(self.vertex_set(), self.edges(), self.root_label())
            .expect("rooted trees are valid vertex trees")
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent[v].into_iter().chain(self.children[v].iter().copied())
    }

    /// Local vertices in BFS order from the root; parents precede children.
    fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        order.push(self.root);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            order.extend_from_slice(&self.children[v]);
            i += 1;
        }
        order
    }

    fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for &v in self.bfs_order().iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// Subtree induced by the local vertices marked in `keep`, rooted at the
    /// local vertex `root`. The marked set must be connected.
    fn restrict(&self, keep: &[bool], root: usize) -> RootedTree {
        let mut local = vec![usize::MAX; self.len()];
        let mut labels = Vec::new();
        let mut profit = Vec::new();
        for v in (0..self.len()).filter(|&v| keep[v]) {
            local[v] = labels.len();
            labels.push(self.labels[v]);
            profit.push(self.profit[v]);
        }
        let adj: Vec<Vec<usize>> = (0..self.len())
            .filter(|&v| keep[v])
            .map(|v| self.neighbors(v).filter(|&u| keep[u]).map(|u| local[u]).collect())
            .collect();
        Self::orient(labels, &adj, local[root], profit).expect("restricted set is connected")
    }
}

/// Splits `t` at one vertex into two trees that share only that vertex and
/// together use every edge once. The first returned tree is the smaller:
/// at most `⌈n/2⌉` vertices, and the larger has at most `⌈2n/3⌉`.
pub fn jordan_split(t: &RootedTree) -> Result<(RootedTree, RootedTree), Error> {
    let n = t.len();
    if n <= 1 {
        return Err(Error::TooSmall { size: n });
    }
    let size = t.subtree_sizes();

    // Walk toward the heavy child until no component of T − c exceeds n/2.
    let mut c = t.root;
    while let Some(&heavy) = t.children[c].iter().find(|&&ch| 2 * size[ch] > n) {
        c = heavy;
    }

    // Components of T − c, identified by the neighbour of c they contain.
    let mut parts: Vec<(usize, usize)> = t.children[c].iter().map(|&ch| (size[ch], ch)).collect();
    if let Some(p) = t.parent[c] {
        parts.push((n - size[c], p));
    }
    parts.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(t.labels[a.1].cmp(&t.labels[b.1])));

    // Take the largest components until a third of the remaining vertices is
    // reached; both sides then respect the ceilings.
    let target = (n - 1).div_ceil(3);
    let mut taken = 0;
    let mut side = vec![false; n];
    for &(sz, nb) in &parts {
        if taken >= target {
            break;
        }
        taken += sz;
        side[nb] = true;
    }

    // Flood each component from its attachment point without crossing c.
    let mut first = vec![false; n];
    let mut second = vec![false; n];
    first[c] = true;
    second[c] = true;
    for &(_, nb) in &parts {
        let mark = if side[nb] { &mut first } else { &mut second };
        let mut stack = vec![nb];
        mark[nb] = true;
        while let Some(v) = stack.pop() {
            for u in t.neighbors(v) {
                if u != c && !mark[u] {
                    mark[u] = true;
                    stack.push(u);
                }
            }
        }
    }

    let a = t.restrict(&first, c);
    let b = t.restrict(&second, c);
    Ok(if a.len() <= b.len() { (a, b) } else { (b, a) })
}

/// Which branch of the 13-part argument the top-level split fell into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitCase {
    /// Smaller half has at least `3k − 1` vertices.
    Balanced,
    /// Smaller half has at most `3k − 2` vertices.
    Skewed,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parts: Vec<RootedTree>,
    /// `None` when the tree already fits the budget.
    pub case: Option<SplitCase>,
    /// Sizes of the two halves of the top-level split.
    pub top_split: Option<(usize, usize)>,
}

/// Covers a tree of at most `6k` vertices with at most 13 subtrees of at
/// most `k` vertices each by recursive Jordan splits.
pub fn decompose_13(t: &RootedTree, k: usize) -> Result<Decomposition, Error> {
    if k < MIN_DECOMPOSITION_BUDGET {
        return Err(Error::BudgetTooSmall { budget: k, min: MIN_DECOMPOSITION_BUDGET });
    }
    if t.len() > 6 * k {
        return Err(Error::TooLarge { size: t.len(), cap: 6 * k });
    }
    if t.len() <= k {
        return Ok(Decomposition { parts: vec![t.clone()], case: None, top_split: None });
    }
    let (small, large) = jordan_split(t)?;
    let case = if small.len() + 1 >= 3 * k { SplitCase::Balanced } else { SplitCase::Skewed };
    let top_split = Some((small.len(), large.len()));

    let mut parts = Vec::new();
    let mut pending = vec![small, large];
    while let Some(piece) = pending.pop() {
        if piece.len() <= k {
            parts.push(piece);
        } else {
            let (a, b) = jordan_split(&piece)?;
            pending.push(b);
            pending.push(a);
        }
    }
    Ok(Decomposition { parts, case: Some(case), top_split })
}

const NEG: i64 = i64::MIN / 4;

/// Flat DP tables; row `v` of a `w`-wide table starts at `v * w`.
struct SubtreeTables {
    width: usize,
    /// best[v][i]: best profit inside T_v with at most i vertices.
    best: Vec<i64>,
    /// from_child[v][i]: `Some(c)` when best[v][i] is inherited from child c.
    from_child: Vec<Option<usize>>,
    /// share[c][b]: budget given to child c when its parent's children
    /// up to and including c share b vertices.
    share: Vec<usize>,
}

impl SubtreeTables {
    fn best(&self, v: usize, i: usize) -> i64 {
        self.best[v * self.width + i]
    }
}

fn subtree_tables(t: &RootedTree, cap: usize, record: bool) -> SubtreeTables {
    let n = t.len();
    let w = cap + 1;
    let mut rooted = vec![NEG; n * w];
    let mut best = vec![NEG; n * w];
    let mut from_child = if record { vec![None; n * w] } else { Vec::new() };
    let mut share = if record { vec![0usize; n * w] } else { Vec::new() };
    let mut size = vec![1usize; n];
    // distribute[b]: best total over the children merged so far with at
    // most b vertices, each child either skipped or rooted at itself.
    let mut distribute = vec![0i64; w];

    for &v in t.bfs_order().iter().rev() {
        distribute.fill(0);
        let mut seen = 0;
        for &c in &t.children[v] {
            let sc = size[c];
            let limit = cap.saturating_sub(1).min(seen + sc);
            let child = &rooted[c * w..(c + 1) * w];
            for b in (1..=limit).rev() {
                let mut top = distribute[b];
                let mut given = 0;
                for spend in b.saturating_sub(seen).max(1)..=b.min(sc) {
                    let cand = distribute[b - spend] + child[spend];
                    if cand > top {
                        top = cand;
                        given = spend;
                    }
                }
                distribute[b] = top;
                if record {
                    share[c * w + b] = given;
                }
            }
            for b in limit + 1..cap {
                distribute[b] = distribute[limit];
                if record {
                    share[c * w + b] = share[c * w + limit];
                }
            }
            seen += sc;
            size[v] += sc;
        }

        let row = v * w;
        for i in 1..=cap {
            let with_v = t.profit[v] as i64 + distribute[i - 1];
            rooted[row + i] = with_v;
            best[row + i] = with_v;
        }
        for &c in &t.children[v] {
            for i in 1..=cap {
                if best[c * w + i] > best[row + i] {
                    best[row + i] = best[c * w + i];
                    if record {
                        from_child[row + i] = Some(c);
                    }
                }
            }
        }
    }
    SubtreeTables { width: w, best, from_child, share }
}

/// Best profit of a connected subtree with at most `i` vertices, for every
/// `i` in `0..=k`.
pub fn best_subtree_profits(t: &RootedTree, k: usize) -> Vec<u64> {
    let cap = k.min(t.len());
    let tables = subtree_tables(t, cap, false);
    (0..=k)
        .map(|i| if i == 0 { 0 } else { tables.best(t.root, i.min(cap)) as u64 })
        .collect()
}

/// Connected subtree of at most `k` vertices with maximum total profit.
pub fn best_k_subtree(t: &RootedTree, k: usize) -> Result<RootedTree, Error> {
    if k == 0 {
        return Err(Error::BudgetTooSmall { budget: 0, min: 1 });
    }
    let cap = k.min(t.len());
    let tables = subtree_tables(t, cap, true);
    let w = tables.width;

    let mut top = t.root;
    while let Some(c) = tables.from_child[top * w + cap] {
        top = c;
    }
    let mut keep = vec![false; t.len()];
    let mut stack = vec![(top, cap)];
    while let Some((v, budget)) = stack.pop() {
        keep[v] = true;
        let mut left = budget - 1;
        for &c in t.children[v].iter().rev() {
            let spend = tables.share[c * w + left];
            if spend > 0 {
                stack.push((c, spend));
                left -= spend;
            }
        }
    }
    Ok(t.restrict(&keep, top))
}

fn local_masks(t: &RootedTree) -> Vec<u32> {
    (0..t.len())
        .map(|v| t.neighbors(v).fold(0u32, |m, u| m | 1 << u))
        .collect()
}

fn connected_in_tree(adj: &[u32], mask: u32) -> bool {
    let mut edges = 0;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        edges += (adj[v] & mask).count_ones();
    }
    edges / 2 + 1 == mask.count_ones()
}

fn check_brute_size(t: &RootedTree) -> Result<(), Error> {
    if t.len() > BRUTE_MAX_N {
        Err(Error::TooLarge { size: t.len(), cap: BRUTE_MAX_N })
    } else {
        Ok(())
    }
}

/// Exhaustive search over all connected subtrees with at most `k` vertices.
/// Ties prefer fewer vertices, then the lexicographically smallest label set.
pub fn brute_best_subtree(t: &RootedTree, k: usize) -> Result<RootedTree, Error> {
    check_brute_size(t)?;
    let n = t.len();
    let adj = local_masks(t);
    let labels_of = |mask: u32| -> VertexSet {
        (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| t.labels[v]).collect()
    };
    let mut best: Option<(u64, u32)> = None;
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > k || !connected_in_tree(&adj, mask) {
            continue;
        }
        let profit: u64 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| t.profit[v]).sum();
        let better = match best {
            None => true,
            Some((bp, bm)) => {
                profit > bp
                    || (profit == bp && mask.count_ones() < bm.count_ones())
                    || (profit == bp
                        && mask.count_ones() == bm.count_ones()
                        && labels_of(mask) < labels_of(bm))
            }
        };
        if better {
            best = Some((profit, mask));
        }
    }
    let Some((_, mask)) = best else {
        return Err(Error::BudgetTooSmall { budget: k, min: 1 });
    };
    let keep: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
    let top = (0..n)
        .find(|&v| keep[v] && t.parent[v].is_none_or(|p| !keep[p]))
        .expect("nonempty connected set has a topmost vertex");
    Ok(t.restrict(&keep, top))
}

/// Exhaustive counterpart of [`best_subtree_profits`].
pub fn brute_subtree_profits(t: &RootedTree, k: usize) -> Result<Vec<u64>, Error> {
    check_brute_size(t)?;
    let n = t.len();
    let adj = local_masks(t);
    let mut by_size = vec![0u64; n + 1];
    for mask in 1u32..(1 << n) {
        if !connected_in_tree(&adj, mask) {
            continue;
        }
        let profit: u64 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| t.profit[v]).sum();
        let s = mask.count_ones() as usize;
        by_size[s] = by_size[s].max(profit);
    }
    let mut out = vec![0u64; k + 1];
    for i in 1..=k {
        out[i] = out[i - 1].max(by_size[i.min(n)]);
    }
    Ok(out)
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2` into tree edges.
pub fn prufer_edges(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] = 0;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}
