//! Monotone, special-submodular profit functions over vertex sets, and an
//! empirical checker for the two defining axioms.
//!
//! A function `f` is special submodular when it is submodular and adding a
//! set `B` whose closed neighbourhood is disjoint from `N[X]` never changes
//! the marginal of `X`:
//! `f(A ∪ X) − f(A) = f(A ∪ B ∪ X) − f(A ∪ B)`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    Domination,
    Weighted,
    Capacitated,
}

/// Integer-valued set function on the vertices of a graph.
///
/// Sets are passed as slices of distinct vertex ids in any order.
pub trait ProfitFn {
    fn eval(&self, set: &[Vertex]) -> u64;

    fn kind(&self) -> ProfileKind;

    /// Number of vertices of the ground set.
    fn ground_size(&self) -> usize;

    fn marginal(&self, set: &[Vertex], v: Vertex) -> u64 {
        if set.contains(&v) {
            return 0;
        }
        let mut with = set.to_vec();
        with.push(v);
        self.eval(&with).saturating_sub(self.eval(set))
    }

    fn eval_all(&self) -> u64 {
        let all: Vec<Vertex> = (0..self.ground_size()).collect();
        self.eval(&all)
    }
}

impl<F: ProfitFn + ?Sized> ProfitFn for &F {
    fn eval(&self, set: &[Vertex]) -> u64 {
        (**self).eval(set)
    }
    fn kind(&self) -> ProfileKind {
        (**self).kind()
    }
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
}

impl<F: ProfitFn + ?Sized> ProfitFn for alloc::boxed::Box<F> {
    fn eval(&self, set: &[Vertex]) -> u64 {
        (**self).eval(set)
    }
    fn kind(&self) -> ProfileKind {
        (**self).kind()
    }
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
}

/// `f(S) = |N[S]|`.
#[derive(Clone, Copy, Debug)]
pub struct DominationCount<'g> {
    graph: &'g Graph,
}

pub fn domination_count(graph: &Graph) -> DominationCount<'_> {
    DominationCount { graph }
}

impl ProfitFn for DominationCount<'_> {
    fn eval(&self, set: &[Vertex]) -> u64 {
        self.graph.domination_count(set) as u64
    }
    fn kind(&self) -> ProfileKind {
        ProfileKind::Domination
    }
    fn ground_size(&self) -> usize {
        self.graph.n()
    }
}

/// `f(S) = Σ_{u ∈ N[S]} w(u)`.
#[derive(Clone, Debug)]
pub struct WeightedDomination<'g> {
    graph: &'g Graph,
    weights: Vec<u64>,
}

pub fn weighted_domination(graph: &Graph, weights: Vec<u64>) -> Result<WeightedDomination<'_>, Error> {
    if weights.len() != graph.n() {
        return Err(Error::LengthMismatch { expected: graph.n(), found: weights.len() });
    }
    Ok(WeightedDomination { graph, weights })
}

impl WeightedDomination<'_> {
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

impl ProfitFn for WeightedDomination<'_> {
    fn eval(&self, set: &[Vertex]) -> u64 {
        self.graph
            .dominated_by(set)
            .iter()
            .map(|u| self.weights[u])
            .sum()
    }
    fn kind(&self) -> ProfileKind {
        ProfileKind::Weighted
    }
    fn ground_size(&self) -> usize {
        self.graph.n()
    }
}

/// Largest number of distinct vertices that can be assigned to chosen
/// vertices, each assignee lying in its chooser's closed neighbourhood and
/// each chooser `v` taking at most `cap(v)` of them.
///
/// Evaluated exactly as a bipartite b-matching by augmenting paths.
#[derive(Clone, Debug)]
pub struct CapacitatedDomination<'g> {
    graph: &'g Graph,
    caps: Vec<u64>,
}

pub fn capacitated_domination(graph: &Graph, caps: Vec<u64>) -> Result<CapacitatedDomination<'_>, Error> {
    if caps.len() != graph.n() {
        return Err(Error::LengthMismatch { expected: graph.n(), found: caps.len() });
    }
    Ok(CapacitatedDomination { graph, caps })
}

impl CapacitatedDomination<'_> {
    pub fn capacities(&self) -> &[u64] {
        &self.caps
    }
}

struct Assignment<'a> {
    graph: &'a Graph,
    caps: &'a [u64],
    chosen: Vec<bool>,
    owner: Vec<Option<Vertex>>,
    load: Vec<u64>,
    visited: Vec<bool>,
}

impl Assignment<'_> {
    // Try to give `target` an owner, possibly re-routing earlier assignments.
    fn augment(&mut self, target: Vertex) -> bool {
        let graph = self.graph;
        let candidates = core::iter::once(target).chain(graph.neighbors(target).iter().copied());
        for chooser in candidates {
            if !self.chosen[chooser] || self.visited[chooser] || self.caps[chooser] == 0 {
                continue;
            }
            self.visited[chooser] = true;
            if self.load[chooser] < self.caps[chooser] {
                self.load[chooser] += 1;
                self.owner[target] = Some(chooser);
                return true;
            }
            let held: Vec<Vertex> = core::iter::once(chooser)
                .chain(graph.neighbors(chooser).iter().copied())
                .filter(|&u| self.owner[u] == Some(chooser))
                .collect();
            for other in held {
                if self.augment(other) {
                    // `other` moved away; the slot it held now serves `target`.
                    self.owner[target] = Some(chooser);
                    return true;
                }
            }
        }
        false
    }
}

impl ProfitFn for CapacitatedDomination<'_> {
    fn eval(&self, set: &[Vertex]) -> u64 {
        let n = self.graph.n();
        let mut chosen = vec![false; n];
        for &v in set {
            chosen[v] = true;
        }
        let mut state = Assignment {
            graph: self.graph,
            caps: &self.caps,
            chosen,
            owner: vec![None; n],
            load: vec![0; n],
            visited: vec![false; n],
        };
        let mut matched = 0;
        for target in self.graph.dominated_by(set).iter() {
            state.visited.iter_mut().for_each(|x| *x = false);
            if state.augment(target) {
                matched += 1;
            }
        }
        matched
    }
    fn kind(&self) -> ProfileKind {
        ProfileKind::Capacitated
    }
    fn ground_size(&self) -> usize {
        self.graph.n()
    }
}

/// A violated axiom instance found by [`check_special_submodular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `f(∅) ≠ 0`.
    NonzeroEmpty { value: u64 },
    /// `A ⊆ B` but `f(A) > f(B)`.
    Monotonicity { a: VertexSet, b: VertexSet },
    /// `f(A+v) − f(A) < f(B+v) − f(B)` for `A ⊆ B`.
    Submodularity { a: VertexSet, b: VertexSet, v: Vertex, small: i64, large: i64 },
    /// `N[X] ∩ N[B] = ∅` but the marginal of `X` changed.
    Locality { x: VertexSet, a: VertexSet, b: VertexSet, before: i64, after: i64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubmodularityReport {
    pub exhaustive: bool,
    /// Number of axiom instances evaluated.
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl SubmodularityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Graphs up to this size are checked over every case instead of sampled.
pub const EXHAUSTIVE_MAX_N: usize = 8;

fn mask_members(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn mask_set(mask: u32) -> VertexSet {
    VertexSet::from_sorted(mask_members(mask))
}

/// Tests the two special-submodularity axioms (plus normalisation and
/// monotonicity) of `f` on `g`.
///
/// For `n ≤ 8` every case is enumerated and `trials`/`seed` are ignored;
/// otherwise `trials` random instances of each axiom are drawn.
pub fn check_special_submodular<F: ProfitFn + ?Sized>(
    f: &F,
    g: &Graph,
    trials: usize,
    seed: u64,
) -> SubmodularityReport {
    let empty = f.eval(&[]);
    let mut report = SubmodularityReport::default();
    if empty != 0 {
        report.violations.push(Violation::NonzeroEmpty { value: empty });
    }
    if g.n() <= EXHAUSTIVE_MAX_N {
        check_exhaustive(f, g, &mut report);
    } else {
        check_sampled(f, g, trials, seed, &mut report);
    }
    report
}

fn check_exhaustive<F: ProfitFn + ?Sized>(f: &F, g: &Graph, report: &mut SubmodularityReport) {
    report.exhaustive = true;
    let n = g.n();
    let full: u32 = (1u32 << n) - 1;
    let table: Vec<i64> = (0..=full).map(|m| f.eval(&mask_members(m)) as i64).collect();
    let closed: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |acc, &u| acc | 1 << u))
        .collect();
    let nbhd = |mask: u32| {
        (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .fold(0u32, |acc, v| acc | closed[v])
    };

    for b in 0..=full {
        let mut a = b;
        loop {
            report.checked += 1;
            if table[a as usize] > table[b as usize] {
                report.violations.push(Violation::Monotonicity { a: mask_set(a), b: mask_set(b) });
            }
            for v in 0..n {
                let bit = 1u32 << v;
                let small = table[(a | bit) as usize] - table[a as usize];
                let large = table[(b | bit) as usize] - table[b as usize];
                if small < large {
                    report.violations.push(Violation::Submodularity {
                        a: mask_set(a),
                        b: mask_set(b),
                        v,
                        small,
                        large,
                    });
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & b;
        }
    }

    let nbhds: Vec<u32> = (0..=full).map(nbhd).collect();
    for x in 1..=full {
        let nx = nbhds[x as usize];
        // B must avoid every vertex whose closed neighbourhood meets N[X].
        let allowed = (0..n)
            .filter(|&v| closed[v] & nx == 0)
            .fold(0u32, |acc, v| acc | 1 << v);
        let mut b = allowed;
        while b != 0 {
            for a in 0..=full {
                report.checked += 1;
                let before = table[(a | x) as usize] - table[a as usize];
                let ab = a | b;
                let after = table[(ab | x) as usize] - table[ab as usize];
                if before != after {
                    report.violations.push(Violation::Locality {
                        x: mask_set(x),
                        a: mask_set(a),
                        b: mask_set(b),
                        before,
                        after,
                    });
                }
            }
            b = (b - 1) & allowed;
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[Vertex]) -> Vec<Vertex> {
    pool.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

fn check_sampled<F: ProfitFn + ?Sized>(
    f: &F,
    g: &Graph,
    trials: usize,
    seed: u64,
    report: &mut SubmodularityReport,
) {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<Vertex> = (0..n).collect();
    let with = |set: &[Vertex], extra: &[Vertex]| -> Vec<Vertex> {
        let mut out: VertexSet = set.iter().copied().collect();
        for &v in extra {
            out.insert(v);
        }
        out.into_vec()
    };

    for _ in 0..trials {
        let b = random_subset(&mut rng, &all);
        let a = random_subset(&mut rng, &b);
        let v = rng.gen_range(0..n);
        report.checked += 1;
        let (fa, fb) = (f.eval(&a) as i64, f.eval(&b) as i64);
        if fa > fb {
            report.violations.push(Violation::Monotonicity { a: a.clone().into(), b: b.clone().into() });
        }
        let small = f.eval(&with(&a, &[v])) as i64 - fa;
        let large = f.eval(&with(&b, &[v])) as i64 - fb;
        if small < large {
            report.violations.push(Violation::Submodularity {
                a: a.into(),
                b: b.into(),
                v,
                small,
                large,
            });
        }
    }

    for _ in 0..trials {
        let x = random_subset(&mut rng, &all);
        if x.is_empty() {
            continue;
        }
        let nx = g.dominated_by(&x);
        let pool: Vec<Vertex> = (0..n)
            .filter(|&v| {
                !nx.contains(v) && g.neighbors(v).iter().all(|&u| !nx.contains(u))
            })
            .collect();
        let b = random_subset(&mut rng, &pool);
        let a = random_subset(&mut rng, &all);
        report.checked += 1;
        let ab = with(&a, &b);
        let before = f.eval(&with(&a, &x)) as i64 - f.eval(&a) as i64;
        let after = f.eval(&with(&ab, &x)) as i64 - f.eval(&ab) as i64;
        if before != after {
            report.violations.push(Violation::Locality {
                x: x.into(),
                a: a.into(),
                b: b.into(),
                before,
                after,
            });
        }
    }
}
