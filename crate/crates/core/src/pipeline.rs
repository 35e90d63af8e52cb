//! End-to-end solvers for the partial and budgeted problems.
//!
//! Each solver labels vertices with a greedy, finds a quota Steiner tree over
//! the labels and, for budgeted problems, trims that tree to the budget with
//! the best-`k`-subtree program. Disconnected graphs are solved one
//! component at a time.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::labeling::{generalized_greedy, greedy_dominating_set};
use crate::profit::{ProfileKind, ProfitFn};
use crate::qst::{qst_solve, QstEngine, QstMode, VertexTree};
use crate::tree::{best_k_subtree, RootedTree};

/// `1 − 1/e`.
pub const GREEDY_FRACTION: f64 = 1.0 - 1.0 / core::f64::consts::E;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Pcds,
    Bcds,
    Pgcds,
    Bgcds,
    Lookahead,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Pcds => "pcds",
            ProblemKind::Bcds => "bcds",
            ProblemKind::Pgcds => "pgcds",
            ProblemKind::Bgcds => "bgcds",
            ProblemKind::Lookahead => "lookahead",
        }
    }

    pub fn is_budgeted(self) -> bool {
        matches!(self, ProblemKind::Bcds | ProblemKind::Bgcds | ProblemKind::Lookahead)
    }
}

impl core::str::FromStr for ProblemKind {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pcds" => Ok(ProblemKind::Pcds),
            "bcds" => Ok(ProblemKind::Bcds),
            "pgcds" => Ok(ProblemKind::Pgcds),
            "bgcds" => Ok(ProblemKind::Bgcds),
            "lookahead" => Ok(ProblemKind::Lookahead),
            _ => Err("expected one of pcds, bcds, pgcds, bgcds, lookahead"),
        }
    }
}

/// How the budgeted solvers search for the optimum guess.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GuessSearch {
    /// Descending scan; always finds the largest accepted guess.
    #[default]
    Linear,
    /// Binary search, assuming acceptance is monotone in the guess. Falls
    /// back to the scan when the smallest guess is rejected.
    Binary,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: QstMode,
    pub guess: GuessSearch,
}

impl SolveOptions {
    pub fn with_mode(mode: QstMode) -> Self {
        SolveOptions { mode, guess: GuessSearch::Linear }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionMeta {
    pub problem: ProblemKind,
    pub mode: QstMode,
    /// Quota for partial problems, budget for budgeted ones.
    pub param: u64,
    /// Optimum guess behind the accepted tree (budgeted problems).
    pub guess: Option<u64>,
    pub engine: Option<QstEngine>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub chosen: VertexSet,
    /// `f(chosen)`, evaluated when the solution is built.
    pub objective: u64,
    pub tree: VertexTree,
    pub meta: SolutionMeta,
}

impl Solution {
    pub fn new<F: ProfitFn + ?Sized>(tree: VertexTree, f: &F, meta: SolutionMeta) -> Self {
        let chosen = tree.vertices().clone();
        let objective = f.eval(chosen.as_slice());
        Solution { chosen, objective, tree, meta }
    }

    pub fn size(&self) -> usize {
        self.chosen.len()
    }
}

/// Views a profit function on host vertices through a local relabeling.
pub struct MappedProfit<'a, F: ?Sized> {
    inner: &'a F,
    map: &'a [Vertex],
}

impl<'a, F: ProfitFn + ?Sized> MappedProfit<'a, F> {
    pub fn new(inner: &'a F, map: &'a [Vertex]) -> Self {
        MappedProfit { inner, map }
    }
}

impl<F: ProfitFn + ?Sized> ProfitFn for MappedProfit<'_, F> {
    fn eval(&self, set: &[Vertex]) -> u64 {
        let host: Vec<Vertex> = set.iter().map(|&v| self.map[v]).collect();
        self.inner.eval(&host)
    }
    fn kind(&self) -> ProfileKind {
        self.inner.kind()
    }
    fn ground_size(&self) -> usize {
        self.map.len()
    }
}

/// `⌈(1 − 1/e) · guess⌉`.
pub fn guess_quota(guess: u64) -> u64 {
    let x = guess as f64 * GREEDY_FRACTION;
    let floor = x as u64;
    if (floor as f64) < x {
        floor + 1
    } else {
        floor
    }
}

struct Component {
    map: Vec<Vertex>,
    graph: Graph,
}

fn components(g: &Graph) -> Vec<Component> {
    g.components()
        .into_iter()
        .map(|map| Component { graph: g.induced_subgraph(&map), map })
        .collect()
}

fn trivial<F: ProfitFn + ?Sized>(f: &F, problem: ProblemKind, mode: QstMode, param: u64) -> Solution {
    let meta = SolutionMeta { problem, mode, param, guess: None, engine: None };
    Solution::new(VertexTree::single(0), f, meta)
}

fn check_ground<F: ProfitFn + ?Sized>(g: &Graph, f: &F) -> Result<(), Error> {
    if f.ground_size() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), found: f.ground_size() });
    }
    Ok(())
}

/// Shared partial-problem driver: per component, label with `labels`, then
/// find the quota tree; keep the smallest tree over all components.
fn solve_partial<F, L>(
    g: &Graph,
    f: &F,
    quota: u64,
    mode: QstMode,
    problem: ProblemKind,
    labels: L,
) -> Result<Solution, Error>
where
    F: ProfitFn + ?Sized,
    L: Fn(&Component) -> Result<Vec<u64>, Error>,
{
    check_ground(g, f)?;
    let total = f.eval_all();
    if quota > total {
        return Err(Error::InfeasibleQuota { quota, max: total });
    }
    if quota == 0 {
        return Ok(trivial(f, problem, mode, quota));
    }
    let mut best: Option<(VertexTree, QstEngine)> = None;
    let mut reachable = 0;
    for comp in components(g) {
        let value = f.eval(&comp.map);
        reachable = reachable.max(value);
        if value < quota {
            continue;
        }
        let p = labels(&comp)?;
        let outcome = qst_solve(&comp.graph, &p, quota, mode)?;
        if best.as_ref().is_none_or(|(t, _)| outcome.tree.size() < t.size()) {
            best = Some((outcome.tree.mapped(&comp.map), outcome.engine));
        }
    }
    let (tree, engine) = best.ok_or(Error::InfeasibleQuota { quota, max: reachable })?;
    let meta = SolutionMeta { problem, mode, param: quota, guess: None, engine: Some(engine) };
    Ok(Solution::new(tree, f, meta))
}

/// Partial CDS: a small connected set dominating at least `quota` vertices.
pub fn solve_pcds(g: &Graph, quota: u64, mode: QstMode) -> Result<Solution, Error> {
    let f = crate::profit::domination_count(g);
    solve_partial(g, &f, quota, mode, ProblemKind::Pcds, |comp| {
        Ok(greedy_dominating_set(&comp.graph).profit)
    })
}

/// Partial generalized CDS: a small connected set with `f` at least `q`.
pub fn solve_pgcds<F: ProfitFn + ?Sized>(
    g: &Graph,
    f: &F,
    q: u64,
    mode: QstMode,
) -> Result<Solution, Error> {
    solve_partial(g, f, q, mode, ProblemKind::Pgcds, |comp| {
        let local = MappedProfit::new(f, &comp.map);
        Ok(generalized_greedy(&comp.graph, &local)?.profit)
    })
}

/// Outcome of the guess search inside one component.
struct Accepted {
    guess: u64,
    tree: VertexTree,
    engine: QstEngine,
}

/// Tries one guess: the quota tree for `⌈(1 − 1/e)·guess⌉` is accepted when
/// it has at most `6k` vertices.
fn try_guess(
    h: &Graph,
    p: &[u64],
    guess: u64,
    k: usize,
    mode: QstMode,
) -> Result<Option<Accepted>, Error> {
    match qst_solve(h, p, guess_quota(guess), mode) {
        Ok(out) if out.tree.size() <= 6 * k => {
            Ok(Some(Accepted { guess, tree: out.tree, engine: out.engine }))
        }
        Ok(_) | Err(Error::Infeasible { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn scan_down(
    h: &Graph,
    p: &[u64],
    guesses: impl Iterator<Item = u64>,
    k: usize,
    mode: QstMode,
) -> Result<Option<Accepted>, Error> {
    for guess in guesses {
        if let Some(acc) = try_guess(h, p, guess, k, mode)? {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

/// Largest accepted guess in `lo..=hi` (searched with `step` granularity
/// first, then refined), or below `lo` as a fallback.
fn search_guess(
    h: &Graph,
    p: &[u64],
    lo: u64,
    hi: u64,
    step: u64,
    k: usize,
    opts: SolveOptions,
) -> Result<Option<Accepted>, Error> {
    if opts.guess == GuessSearch::Binary {
        if let Some(mut best) = try_guess(h, p, lo, k, opts.mode)? {
            let (mut a, mut b) = (lo + 1, hi);
            while a <= b {
                let mid = a + (b - a) / 2;
                match try_guess(h, p, mid, k, opts.mode)? {
                    Some(acc) => {
                        best = acc;
                        a = mid + 1;
                    }
                    None => b = mid - 1,
                }
            }
            return Ok(Some(best));
        }
    }

    let coarse = (0..)
        .map(|i: u64| i * step)
        .take_while(|&d| d <= hi - lo)
        .map(|d| hi - d);
    let found = match scan_down(h, p, coarse, k, opts.mode)? {
        Some(acc) => {
            let top = (acc.guess + step - 1).min(hi);
            let fine = scan_down(h, p, (acc.guess + 1..=top).rev(), k, opts.mode)?;
            Some(fine.unwrap_or(acc))
        }
        None => {
            let tail_top = hi - (hi - lo) / step * step;
            scan_down(h, p, (0..tail_top).rev(), k, opts.mode)?
        }
    };
    Ok(found)
}

/// Shared budgeted driver. `labels` returns the component's profits, the
/// guess range `lo..=hi` and the coarse scan step.
fn solve_budgeted<F, L>(
    g: &Graph,
    f: &F,
    k: usize,
    opts: SolveOptions,
    problem: ProblemKind,
    labels: L,
) -> Result<Solution, Error>
where
    F: ProfitFn + ?Sized,
    L: Fn(&Component) -> Result<(Vec<u64>, u64, u64, u64), Error>,
{
    check_ground(g, f)?;
    if k == 0 {
        return Err(Error::BudgetTooSmall { budget: 0, min: 1 });
    }
    let mut best: Option<Solution> = None;
    for comp in components(g) {
        let k_eff = k.min(comp.map.len());
        let (p, lo, hi, step) = labels(&comp)?;
        let lo = lo.min(hi);
        let accepted = search_guess(&comp.graph, &p, lo, hi, step, k_eff, opts)?;
        let (local_tree, guess, engine) = match accepted {
            Some(acc) => (acc.tree, Some(acc.guess), Some(acc.engine)),
            None => (VertexTree::single(0), None, None),
        };
        let local_tree = if local_tree.size() <= k_eff {
            local_tree
        } else {
            let rooted = RootedTree::from_vertex_tree(&local_tree, &p)?;
            best_k_subtree(&rooted, k_eff)?.to_vertex_tree()
        };
        let meta = SolutionMeta { problem, mode: opts.mode, param: k as u64, guess, engine };
        let sol = Solution::new(local_tree.mapped(&comp.map), f, meta);
        if best.as_ref().is_none_or(|b| sol.objective > b.objective) {
            best = Some(sol);
        }
    }
    Ok(best.expect("graphs have at least one component"))
}

/// Budgeted CDS: a connected set of at most `k` vertices dominating as many
/// vertices as possible.
pub fn solve_bcds(g: &Graph, k: usize, mode: QstMode) -> Result<Solution, Error> {
    solve_bcds_with(g, k, SolveOptions::with_mode(mode))
}

pub fn solve_bcds_with(g: &Graph, k: usize, opts: SolveOptions) -> Result<Solution, Error> {
    let f = crate::profit::domination_count(g);
    solve_budgeted(g, &f, k, opts, ProblemKind::Bcds, |comp| {
        let p = greedy_dominating_set(&comp.graph).profit;
        let n = comp.map.len() as u64;
        Ok((p, k as u64, n, 1))
    })
}

/// Budgeted generalized CDS: a connected set of at most `k` vertices with
/// `f` as large as possible.
pub fn solve_bgcds<F: ProfitFn + ?Sized>(
    g: &Graph,
    f: &F,
    k: usize,
    mode: QstMode,
) -> Result<Solution, Error> {
    solve_bgcds_with(g, f, k, SolveOptions::with_mode(mode))
}

pub fn solve_bgcds_with<F: ProfitFn + ?Sized>(
    g: &Graph,
    f: &F,
    k: usize,
    opts: SolveOptions,
) -> Result<Solution, Error> {
    solve_budgeted(g, f, k, opts, ProblemKind::Bgcds, |comp| {
        let local = MappedProfit::new(f, &comp.map);
        let labeling = generalized_greedy(&comp.graph, &local)?;
        let top = labeling.total_profit();
        let step = (top / comp.map.len() as u64).max(1);
        Ok((labeling.profit, 0, top, step))
    })
}

/// Look-ahead greedy baseline: repeatedly attach the simple path of at most
/// `c` new vertices (starting next to the current set) that dominates the
/// most new vertices, until the budget is spent or nothing improves.
pub fn lookahead_greedy_bcds(g: &Graph, k: usize, c: usize) -> Result<Solution, Error> {
    if k == 0 {
        return Err(Error::BudgetTooSmall { budget: 0, min: 1 });
    }
    if c == 0 {
        return Err(Error::BudgetTooSmall { budget: 0, min: 1 });
    }
    let n = g.n();
    let mut in_set = vec![false; n];
    let mut dominated = vec![false; n];
    let mut chosen: Vec<Vertex> = Vec::new();

    while chosen.len() < k {
        let depth = c.min(k - chosen.len());
        let mut search = PathSearch {
            g,
            in_set: &in_set,
            dominated: &dominated,
            depth,
            newly: vec![0; n],
            path: Vec::new(),
            best: None,
        };
        let starts: Vec<Vertex> = if chosen.is_empty() {
            (0..n).collect()
        } else {
            (0..n).filter(|&v| !in_set[v] && g.neighbors(v).iter().any(|&u| in_set[u])).collect()
        };
        for s in starts {
            search.extend(s, 0);
        }
        let Some((gain, path)) = search.best else { break };
        if gain == 0 {
            break;
        }
        for &v in &path {
            in_set[v] = true;
            chosen.push(v);
            dominated[v] = true;
            for &u in g.neighbors(v) {
                dominated[u] = true;
            }
        }
    }

    let f = crate::profit::domination_count(g);
    let meta = SolutionMeta {
        problem: ProblemKind::Lookahead,
        mode: QstMode::Heuristic,
        param: k as u64,
        guess: None,
        engine: None,
    };
    let tree = VertexTree::spanning(g, &chosen).expect("paths keep the set connected");
    Ok(Solution::new(tree, &f, meta))
}

struct PathSearch<'a> {
    g: &'a Graph,
    in_set: &'a [bool],
    dominated: &'a [bool],
    depth: usize,
    /// Reference counts of vertices dominated by the current path only.
    newly: Vec<u32>,
    path: Vec<Vertex>,
    best: Option<(usize, Vec<Vertex>)>,
}

impl PathSearch<'_> {
    fn extend(&mut self, v: Vertex, gain: usize) {
        let mut gain = gain;
        self.path.push(v);
        for u in core::iter::once(v).chain(self.g.neighbors(v).iter().copied()) {
            if !self.dominated[u] {
                if self.newly[u] == 0 {
                    gain += 1;
                }
                self.newly[u] += 1;
            }
        }

        let better = match &self.best {
            None => true,
            Some((bg, bp)) => {
                gain > *bg
                    || (gain == *bg && self.path.len() < bp.len())
                    || (gain == *bg && self.path.len() == bp.len() && self.path < *bp)
            }
        };
        if better {
            self.best = Some((gain, self.path.clone()));
        }

        if self.path.len() < self.depth {
            for i in 0..self.g.neighbors(v).len() {
                let u = self.g.neighbors(v)[i];
                if !self.in_set[u] && !self.path.contains(&u) {
                    self.extend(u, gain);
                }
            }
        }

        for u in core::iter::once(v).chain(self.g.neighbors(v).iter().copied()) {
            if !self.dominated[u] {
                self.newly[u] -= 1;
            }
        }
        self.path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profit::{capacitated_domination, domination_count, weighted_domination};

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edge_list(leaves + 1, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn quota_rounding() {
        assert_eq!(guess_quota(0), 0);
        assert_eq!(guess_quota(1), 1);
        assert_eq!(guess_quota(5), 4);
        assert_eq!(guess_quota(10), 7);
    }

    #[test]
    fn pcds_zero_quota() {
        let s = solve_pcds(&path(4), 0, QstMode::Exact).unwrap();
        assert_eq!(s.chosen.as_slice(), &[0]);
        assert!(s.objective >= 1);
    }

    #[test]
    fn pcds_star() {
        let s = solve_pcds(&star(4), 5, QstMode::Exact).unwrap();
        assert_eq!(s.chosen.as_slice(), &[0]);
        assert_eq!(s.objective, 5);
        assert_eq!(s.meta.engine, Some(QstEngine::Exact));
    }

    #[test]
    fn pcds_infeasible_quota() {
        assert_eq!(
            solve_pcds(&path(3), 4, QstMode::Exact).unwrap_err(),
            Error::InfeasibleQuota { quota: 4, max: 3 }
        );
        let split = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            solve_pcds(&split, 3, QstMode::Exact).unwrap_err(),
            Error::InfeasibleQuota { quota: 3, max: 2 }
        );
    }

    #[test]
    fn pcds_meets_quota_on_path() {
        let g = path(9);
        for q in 1..=9 {
            let s = solve_pcds(&g, q, QstMode::Exact).unwrap();
            assert!(s.objective >= q);
            assert!(g.is_connected_induced(s.chosen.as_slice()));
        }
    }

    #[test]
    fn bcds_star_budget_one() {
        let s = solve_bcds(&star(4), 1, QstMode::Exact).unwrap();
        assert_eq!(s.chosen.as_slice(), &[0]);
        assert_eq!(s.objective, 5);
    }

    #[test]
    fn bcds_respects_budget() {
        let g = path(12);
        for k in 1..=12 {
            for mode in [QstMode::Exact, QstMode::Heuristic] {
                let s = solve_bcds(&g, k, mode).unwrap();
                assert!(s.size() <= k);
                assert!(g.is_connected_induced(s.chosen.as_slice()));
                assert_eq!(s.objective, g.domination_count(s.chosen.as_slice()) as u64);
            }
        }
        assert!(matches!(solve_bcds(&g, 0, QstMode::Exact), Err(Error::BudgetTooSmall { .. })));
    }

    #[test]
    fn bcds_picks_best_component() {
        let g = Graph::from_edge_list(7, &[(0, 1), (2, 3), (2, 4), (2, 5), (2, 6)]).unwrap();
        let s = solve_bcds(&g, 1, QstMode::Exact).unwrap();
        assert_eq!(s.chosen.as_slice(), &[2]);
        assert_eq!(s.objective, 5);
    }

    #[test]
    fn binary_guess_search_agrees_on_path() {
        let g = path(10);
        let opts = SolveOptions { mode: QstMode::Exact, guess: GuessSearch::Binary };
        let s = solve_bcds_with(&g, 3, opts).unwrap();
        assert!(s.size() <= 3);
        assert_eq!(s.objective, 5);
    }

    #[test]
    fn bgcds_specializes_to_bcds() {
        let g = Graph::from_edge_list(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (6, 7)])
            .unwrap();
        for k in 1..=4 {
            let a = solve_bcds(&g, k, QstMode::Exact).unwrap();
            let b = solve_bgcds(&g, &domination_count(&g), k, QstMode::Exact).unwrap();
            assert_eq!(a.objective, b.objective, "k={k}");
            let cap = capacitated_domination(&g, vec![8; 8]).unwrap();
            let c = solve_bgcds(&g, &cap, k, QstMode::Exact).unwrap();
            assert_eq!(a.objective, c.objective, "k={k}");
        }
    }

    #[test]
    fn pgcds_specializes_to_pcds() {
        let g = path(7);
        for q in 0..=7 {
            let a = solve_pcds(&g, q, QstMode::Exact).unwrap();
            let b = solve_pgcds(&g, &domination_count(&g), q, QstMode::Exact).unwrap();
            assert_eq!(a.chosen, b.chosen);
        }
    }

    #[test]
    fn pgcds_weighted() {
        let g = path(5);
        let f = weighted_domination(&g, vec![0, 0, 0, 0, 9]).unwrap();
        let s = solve_pgcds(&g, &f, 9, QstMode::Exact).unwrap();
        assert_eq!(s.size(), 1);
        assert!(s.objective >= 9);
        assert!(matches!(
            solve_pgcds(&g, &f, 10, QstMode::Exact),
            Err(Error::InfeasibleQuota { quota: 10, max: 9 })
        ));
    }

    #[test]
    fn bgcds_all_zero_weights() {
        let g = path(4);
        let f = weighted_domination(&g, vec![0; 4]).unwrap();
        let s = solve_bgcds(&g, &f, 2, QstMode::Exact).unwrap();
        assert_eq!(s.objective, 0);
        assert_eq!(s.size(), 1);
    }

    #[test]
    fn lookahead_star() {
        let s = lookahead_greedy_bcds(&star(4), 1, 1).unwrap();
        assert_eq!(s.chosen.as_slice(), &[0]);
        assert_eq!(s.objective, 5);
    }

    #[test]
    fn lookahead_crosses_a_gap() {
        // Two stars joined through a path of two vertices.
        let mut edges: Vec<(usize, usize)> = (1..=4).map(|v| (0, v)).collect();
        edges.extend([(0, 5), (5, 6), (6, 7)]);
        edges.extend((8..=11).map(|v| (7, v)));
        let g = Graph::from_edge_list(12, &edges).unwrap();
        let one = lookahead_greedy_bcds(&g, 4, 1).unwrap();
        let three = lookahead_greedy_bcds(&g, 4, 3).unwrap();
        assert!(three.objective >= one.objective);
        assert_eq!(three.objective, 12);
        assert!(g.is_connected_induced(three.chosen.as_slice()));
    }

    #[test]
    fn lookahead_depth_saturates() {
        let g = path(6);
        let a = lookahead_greedy_bcds(&g, 3, 5).unwrap();
        let b = lookahead_greedy_bcds(&g, 3, 9).unwrap();
        assert_eq!(a.chosen, b.chosen);
    }
}
