use core::fmt;

use crate::graph::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A graph needs at least one vertex.
    EmptyGraph,
    InvalidVertex { vertex: Vertex, n: usize },
    SelfLoopRejected(Vertex),
    Unreachable { from: Vertex, to: Vertex },
    /// No connected vertex set reaches the requested quota.
    Infeasible { quota: u64 },
    /// The quota exceeds what the whole graph can deliver.
    InfeasibleQuota { quota: u64, max: u64 },
    NonmonotoneProfit { vertex: Vertex },
    /// The greedy loop found no vertex with positive marginal while f(D) != f(V).
    GreedyStalled { reached: u64, target: u64 },
    /// A per-vertex vector does not have one entry per vertex.
    LengthMismatch { expected: usize, found: usize },
    InvalidTree(&'static str),
    TooSmall { size: usize },
    BudgetTooSmall { budget: usize, min: usize },
    TooLarge { size: usize, cap: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGraph => write!(f, "graph must have at least one vertex"),
            Error::InvalidVertex { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph with {n} vertices")
            }
            Error::SelfLoopRejected(v) => write!(f, "self-loop on vertex {v} rejected"),
            Error::Unreachable { from, to } => write!(f, "no path from {from} to {to}"),
            Error::Infeasible { quota } => {
                write!(f, "no connected vertex set reaches quota {quota}")
            }
            Error::InfeasibleQuota { quota, max } => {
                write!(f, "quota {quota} is infeasible (at most {max} attainable)")
            }
            Error::NonmonotoneProfit { vertex } => {
                write!(f, "profit function decreased when adding vertex {vertex}")
            }
            Error::GreedyStalled { reached, target } => write!(
                f,
                "greedy stalled at profit {reached} below f(V) = {target}; profit function is not submodular"
            ),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} per-vertex values, found {found}")
            }
            Error::InvalidTree(why) => write!(f, "invalid tree: {why}"),
            Error::TooSmall { size } => write!(f, "tree with {size} vertices is too small to split"),
            Error::BudgetTooSmall { budget, min } => {
                write!(f, "budget {budget} is below the minimum {min}")
            }
            Error::TooLarge { size, cap } => {
                write!(f, "instance size {size} exceeds the cap of {cap}")
            }
        }
    }
}

impl core::error::Error for Error {}
