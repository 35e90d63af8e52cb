//! Greedy profit labeling: the first phase of every pipeline.
//!
//! The greedy picks vertices by largest marginal gain and records that gain
//! as the vertex's profit. Vertices never picked keep profit zero. These
//! profits drive the quota Steiner tree phase.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::profit::ProfitFn;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    /// Chosen vertices in pick order.
    pub order: Vec<Vertex>,
    /// Per-vertex profit; nonzero only on `order`.
    pub profit: Vec<u64>,
    /// For the domination variant, `cover_sets[i]` is the set of vertices
    /// first dominated by `order[i]`.
    pub cover_sets: Option<Vec<VertexSet>>,
}

impl Labeling {
    pub fn total_profit(&self) -> u64 {
        self.profit.iter().sum()
    }

    pub fn profit_of(&self, set: &[Vertex]) -> u64 {
        set.iter().map(|&v| self.profit[v]).sum()
    }

    pub fn chosen(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }
}

/// Greedy dominating set: repeatedly take the vertex whose closed
/// neighbourhood holds the most undominated vertices (ties to the smaller id)
/// until everything is dominated.
pub fn greedy_dominating_set(g: &Graph) -> Labeling {
    let n = g.n();
    let mut undominated = vec![true; n];
    let mut gain: Vec<usize> = (0..n).map(|v| g.degree(v) + 1).collect();
    let mut picked = vec![false; n];
    let mut remaining = n;
    let mut order = Vec::new();
    let mut profit = vec![0u64; n];
    let mut cover_sets = Vec::new();

    while remaining > 0 {
        let mut best: Option<Vertex> = None;
        for v in (0..n).filter(|&v| !picked[v]) {
            if best.is_none_or(|b| gain[v] > gain[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("an undominated vertex always has positive gain");
        let covered: Vec<Vertex> = core::iter::once(v)
            .chain(g.neighbors(v).iter().copied())
            .filter(|&u| undominated[u])
            .collect();
        for &u in &covered {
            undominated[u] = false;
            gain[u] -= 1;
            for &w in g.neighbors(u) {
                gain[w] -= 1;
            }
        }
        remaining -= covered.len();
        picked[v] = true;
        profit[v] = covered.len() as u64;
        order.push(v);
        cover_sets.push(covered.into_iter().collect());
    }

    Labeling { order, profit, cover_sets: Some(cover_sets) }
}

/// Generalized greedy: while `f(D) ≠ f(V)`, add the vertex with the largest
/// marginal `f(D ∪ {v}) − f(D)` (ties to the smaller id) and label it with
/// that marginal.
pub fn generalized_greedy<F: ProfitFn + ?Sized>(g: &Graph, f: &F) -> Result<Labeling, Error> {
    let n = g.n();
    if f.ground_size() != n {
        return Err(Error::LengthMismatch { expected: n, found: f.ground_size() });
    }
    let target = f.eval_all();
    let mut chosen: Vec<Vertex> = Vec::new();
    let mut in_chosen = vec![false; n];
    let mut current = f.eval(&[]);
    let mut order = Vec::new();
    let mut profit = vec![0u64; n];

    while current != target {
        if current > target {
            return Err(Error::NonmonotoneProfit { vertex: *chosen.last().unwrap_or(&0) });
        }
        let mut best: Option<(Vertex, u64)> = None;
        for v in (0..n).filter(|&v| !in_chosen[v]) {
            chosen.push(v);
            let value = f.eval(&chosen);
            chosen.pop();
            if value < current {
                return Err(Error::NonmonotoneProfit { vertex: v });
            }
            let gain = value - current;
            if best.is_none_or(|(_, b)| gain > b) {
                best = Some((v, gain));
            }
        }
        match best {
            Some((v, gain)) if gain > 0 => {
                chosen.push(v);
                in_chosen[v] = true;
                order.push(v);
                profit[v] = gain;
                current += gain;
            }
            _ => return Err(Error::GreedyStalled { reached: current, target }),
        }
    }

    Ok(Labeling { order, profit, cover_sets: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profit::{domination_count, weighted_domination, ProfileKind};

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edge_list(leaves + 1, &edges).unwrap()
    }

    fn p3() -> Graph {
        Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn star_center_takes_everything() {
        let l = greedy_dominating_set(&star(4));
        assert_eq!(l.order, [0]);
        assert_eq!(l.profit[0], 5);
    }

    #[test]
    fn path_middle() {
        let l = greedy_dominating_set(&p3());
        assert_eq!(l.order, [1]);
        assert_eq!(l.profit, [0, 3, 0]);
        assert_eq!(l.cover_sets.unwrap()[0].as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn edgeless_ties_by_id() {
        let l = greedy_dominating_set(&Graph::edgeless(3).unwrap());
        assert_eq!(l.order, [0, 1, 2]);
        assert_eq!(l.profit, [1, 1, 1]);
    }

    #[test]
    fn cover_sets_partition_vertices() {
        let g = Graph::from_edge_list(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 5)])
            .unwrap();
        let l = greedy_dominating_set(&g);
        let mut all: Vec<Vertex> = l.cover_sets.as_ref().unwrap().iter().flat_map(|c| c.iter()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..7).collect::<Vec<_>>());
        assert_eq!(l.total_profit(), 7);
    }

    #[test]
    fn generalized_matches_domination_greedy() {
        let g = p3();
        let gen = generalized_greedy(&g, &domination_count(&g)).unwrap();
        let dom = greedy_dominating_set(&g);
        assert_eq!(gen.order, dom.order);
        assert_eq!(gen.profit, dom.profit);
    }

    #[test]
    fn weighted_star_center() {
        let g = star(2);
        let f = weighted_domination(&g, vec![5, 1, 1]).unwrap();
        let l = generalized_greedy(&g, &f).unwrap();
        assert_eq!(l.order, [0]);
        assert_eq!(l.profit, [7, 0, 0]);
    }

    struct Cardinality(usize);
    impl ProfitFn for Cardinality {
        fn eval(&self, set: &[Vertex]) -> u64 {
            set.len() as u64
        }
        fn kind(&self) -> ProfileKind {
            ProfileKind::Weighted
        }
        fn ground_size(&self) -> usize {
            self.0
        }
    }

    #[test]
    fn cardinality_picks_every_vertex() {
        let g = Graph::edgeless(3).unwrap();
        let l = generalized_greedy(&g, &Cardinality(3)).unwrap();
        assert_eq!(l.order, [0, 1, 2]);
        assert_eq!(l.profit, [1, 1, 1]);
    }

    struct Decreasing;
    impl ProfitFn for Decreasing {
        fn eval(&self, set: &[Vertex]) -> u64 {
            match (set.contains(&0), set.contains(&1)) {
                (false, false) => 0,
                (true, false) => 3,
                (false, true) => 1,
                (true, true) => 2,
            }
        }
        fn kind(&self) -> ProfileKind {
            ProfileKind::Weighted
        }
        fn ground_size(&self) -> usize {
            2
        }
    }

    #[test]
    fn nonmonotone_profit_is_rejected() {
        let g = Graph::edgeless(2).unwrap();
        assert!(matches!(
            generalized_greedy(&g, &Decreasing),
            Err(Error::NonmonotoneProfit { .. })
        ));
    }
}
