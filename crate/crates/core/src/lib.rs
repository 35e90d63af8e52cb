//! Approximation algorithms for partial and budgeted connected dominating
//! set problems and their special-submodular generalizations.
//!
//! The solvers share one shape: a greedy pass labels vertices with the
//! marginal profit they earned ([`labeling`]), a quota Steiner tree over
//! those labels connects enough profit ([`qst`]), and for budgeted problems
//! a best-`k`-subtree dynamic program trims the tree to the budget
//! ([`tree`]). [`oracle`] holds brute-force optima for small instances.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod error;
pub mod graph;
pub mod labeling;
pub mod oracle;
pub mod pipeline;
pub mod profit;
pub mod qst;
pub mod tree;

pub use error::Error;
pub use graph::{Graph, Vertex, VertexSet};
pub use labeling::{generalized_greedy, greedy_dominating_set, Labeling};
pub use pipeline::{
    lookahead_greedy_bcds, solve_bcds, solve_bgcds, solve_pcds, solve_pgcds, GuessSearch,
    ProblemKind, SolveOptions, Solution, SolutionMeta,
};
pub use profit::{
    capacitated_domination, check_special_submodular, domination_count, weighted_domination,
    ProfileKind, ProfitFn,
};
pub use qst::{qst_exact, qst_heuristic, qst_solve, QstEngine, QstMode, VertexTree};
pub use tree::{best_k_subtree, brute_best_subtree, decompose_13, jordan_split, RootedTree};
