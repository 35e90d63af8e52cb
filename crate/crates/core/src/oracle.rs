//! Brute-force optima for small instances, used to audit the approximation
//! guarantees of the pipelines.

use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::pipeline::{ProblemKind, Solution, SolutionMeta};
use crate::profit::{domination_count, ProfitFn};
use crate::qst::{QstMode, VertexTree};

/// Largest graph [`enumerate_connected_subsets`] accepts.
pub const ENUMERATE_MAX_N: usize = 20;

/// Largest graph the `opt_*` oracles accept.
pub const ORACLE_MAX_N: usize = 14;

fn members(mask: u32) -> impl Iterator<Item = Vertex> {
    (0..32).filter(move |&v| mask >> v & 1 == 1)
}

/// Every vertex set of size at most `max_size` inducing a connected
/// subgraph, once each, ordered by size and then lexicographically.
pub fn enumerate_connected_subsets(g: &Graph, max_size: usize) -> Result<Vec<VertexSet>, Error> {
    let n = g.n();
    if n > ENUMERATE_MAX_N {
        return Err(Error::TooLarge { size: n, cap: ENUMERATE_MAX_N });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();

    let mut out = Vec::new();
    let mut level: Vec<u32> = (0..n).map(|v| 1u32 << v).collect();
    let mut size = 1;
    while size <= max_size && !level.is_empty() {
        let mut sets: Vec<VertexSet> = level.iter().map(|&m| members(m).collect()).collect();
        sets.sort_unstable();
        out.extend(sets);

        let mut next = Vec::new();
        for &mask in &level {
            let frontier = members(mask).fold(0u32, |f, v| f | adj[v]) & !mask;
            next.extend(members(frontier).map(|u| mask | 1 << u));
        }
        next.sort_unstable();
        next.dedup();
        level = next;
        size += 1;
    }
    Ok(out)
}

fn candidates(g: &Graph, max_size: usize) -> Result<Vec<VertexSet>, Error> {
    if g.n() > ORACLE_MAX_N {
        return Err(Error::TooLarge { size: g.n(), cap: ORACLE_MAX_N });
    }
    enumerate_connected_subsets(g, max_size)
}

fn solution<F: ProfitFn + ?Sized>(
    g: &Graph,
    set: &VertexSet,
    f: &F,
    problem: ProblemKind,
    param: u64,
) -> Solution {
    let tree = VertexTree::spanning(g, set.as_slice()).expect("enumerated sets are connected");
    let meta = SolutionMeta { problem, mode: QstMode::Exact, param, guess: None, engine: None };
    Solution::new(tree, f, meta)
}

fn min_size_meeting<F: ProfitFn + ?Sized>(
    g: &Graph,
    f: &F,
    quota: u64,
    problem: ProblemKind,
) -> Result<Solution, Error> {
    let all = candidates(g, g.n())?;
    let found = all
        .iter()
        .find(|s| f.eval(s.as_slice()) >= quota)
        .ok_or(Error::Infeasible { quota })?;
    Ok(solution(g, found, f, problem, quota))
}

fn max_within_budget<F: ProfitFn + ?Sized>(
    g: &Graph,
    f: &F,
    k: usize,
    problem: ProblemKind,
) -> Result<Solution, Error> {
    if k == 0 {
        return Err(Error::BudgetTooSmall { budget: 0, min: 1 });
    }
    let all = candidates(g, k)?;
    let mut best: Option<(u64, &VertexSet)> = None;
    for s in &all {
        let value = f.eval(s.as_slice());
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, s));
        }
    }
    let (_, set) = best.expect("singletons are always connected");
    Ok(solution(g, set, f, problem, k as u64))
}

/// Smallest connected set dominating at least `quota` vertices.
pub fn opt_pcds(g: &Graph, quota: u64) -> Result<Solution, Error> {
    min_size_meeting(g, &domination_count(g), quota, ProblemKind::Pcds)
}

/// Connected set of at most `k` vertices dominating the most vertices.
pub fn opt_bcds(g: &Graph, k: usize) -> Result<Solution, Error> {
    max_within_budget(g, &domination_count(g), k, ProblemKind::Bcds)
}

pub fn opt_pgcds<F: ProfitFn + ?Sized>(g: &Graph, f: &F, q: u64) -> Result<Solution, Error> {
    min_size_meeting(g, f, q, ProblemKind::Pgcds)
}

pub fn opt_bgcds<F: ProfitFn + ?Sized>(g: &Graph, f: &F, k: usize) -> Result<Solution, Error> {
    max_within_budget(g, f, k, ProblemKind::Bgcds)
}
