//! Independent solution checker.
//!
//! Everything is recomputed from the instance and the solution file with
//! code of its own: adjacency, connectivity, the tree, the objective under
//! each profile (capacities through a separate max-flow), and the quota or
//! budget. Nothing from the solvers is consulted.

use std::collections::VecDeque;
use std::fmt;

use cds_core::ProblemKind;

use crate::format::SolutionFile;
use crate::instance::Instance;
use crate::profile::Profile;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    Empty,
    SizeMismatch { declared: usize, listed: usize },
    OutOfRange(usize),
    Duplicate(usize),
    Disconnected { components: usize },
    BadTree(String),
    ObjectiveMismatch { claimed: u64, actual: u64 },
    QuotaUnmet { quota: u64, actual: u64 },
    BudgetExceeded { budget: u64, size: usize },
    MissingProfile(&'static str),
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::Empty => write!(f, "empty vertex set"),
            Issue::SizeMismatch { declared, listed } => {
                write!(f, "size mismatch: header says {declared}, {listed} vertices listed")
            }
            Issue::OutOfRange(v) => write!(f, "vertex {v} out of range"),
            Issue::Duplicate(v) => write!(f, "vertex {v} listed twice"),
            Issue::Disconnected { components } => {
                write!(f, "connectivity violation: chosen set has {components} components")
            }
            Issue::BadTree(why) => write!(f, "tree violation: {why}"),
            Issue::ObjectiveMismatch { claimed, actual } => {
                write!(f, "objective mismatch: claimed {claimed}, recomputed {actual}")
            }
            Issue::QuotaUnmet { quota, actual } => write!(f, "quota {quota} unmet: objective {actual}"),
            Issue::BudgetExceeded { budget, size } => {
                write!(f, "budget {budget} exceeded: {size} vertices")
            }
            Issue::MissingProfile(what) => write!(f, "instance has no {what}"),
        }
    }
}

fn adjacency(inst: &Instance) -> Vec<Vec<usize>> {
    let n = inst.graph.n();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in inst.graph.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn count_components(adj: &[Vec<usize>], members: &[bool], set: &[usize]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut components = 0;
    for &s in set {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if members[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    components
}

fn check_tree(adj: &[Vec<usize>], members: &[bool], set: &[usize], tree: &[(usize, usize)]) -> Option<String> {
    if tree.len() + 1 != set.len() {
        return Some(format!("{} edges for {} vertices", tree.len(), set.len()));
    }
    let mut tree_adj = vec![Vec::new(); adj.len()];
    for &(u, v) in tree {
        if u >= adj.len() || v >= adj.len() || !members[u] || !members[v] {
            return Some(format!("edge ({u}, {v}) leaves the chosen set"));
        }
        if !adj[u].contains(&v) {
            return Some(format!("edge ({u}, {v}) is not a graph edge"));
        }
        tree_adj[u].push(v);
        tree_adj[v].push(u);
    }
    if count_components(&tree_adj, members, set) != 1 {
        return Some("tree edges do not span the chosen set".into());
    }
    None
}

fn dominated(adj: &[Vec<usize>], set: &[usize]) -> Vec<bool> {
    let mut d = vec![false; adj.len()];
    for &v in set {
        d[v] = true;
        for &u in &adj[v] {
            d[u] = true;
        }
    }
    d
}

/// Maximum number of vertices assignable to chosen vertices within their
/// capacities, by Edmonds–Karp on source → chooser → dominated → sink.
fn capacitated_value(adj: &[Vec<usize>], set: &[usize], caps: &[u64]) -> u64 {
    let n = adj.len();
    // Nodes: 0 source, 1 sink, 2 + i chooser set[i], 2 + |set| + v target v.
    let base = 2 + set.len();
    let mut to = Vec::new();
    let mut cap: Vec<u64> = Vec::new();
    let mut graph = vec![Vec::new(); base + n];
    let mut add = |graph: &mut Vec<Vec<usize>>, a: usize, b: usize, c: u64| {
        graph[a].push(to.len());
        to.push(b);
        cap.push(c);
        graph[b].push(to.len());
        to.push(a);
        cap.push(0);
    };
    for (i, &v) in set.iter().enumerate() {
        add(&mut graph, 0, 2 + i, caps[v]);
        add(&mut graph, 2 + i, base + v, 1);
        for &u in &adj[v] {
            add(&mut graph, 2 + i, base + u, 1);
        }
    }
    for v in 0..n {
        add(&mut graph, base + v, 1, 1);
    }

    let mut flow = 0;
    loop {
        let mut via = vec![usize::MAX; graph.len()];
        via[0] = usize::MAX - 1;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &e in &graph[x] {
                if cap[e] > 0 && via[to[e]] == usize::MAX {
                    via[to[e]] = e;
                    queue.push_back(to[e]);
                }
            }
        }
        if via[1] == usize::MAX {
            return flow;
        }
        let mut x = 1;
        while x != 0 {
            let e = via[x];
            cap[e] -= 1;
            cap[e ^ 1] += 1;
            x = to[e ^ 1];
        }
        flow += 1;
    }
}

/// Objective of `set` under `profile`, recomputed from scratch.
pub fn recount(inst: &Instance, profile: Profile, set: &[usize]) -> Result<u64, Issue> {
    let adj = adjacency(inst);
    let d = dominated(&adj, set);
    Ok(match profile {
        Profile::Dom => d.iter().filter(|&&x| x).count() as u64,
        Profile::Weighted => {
            let w = inst.weights.as_ref().ok_or(Issue::MissingProfile("weights"))?;
            (0..d.len()).filter(|&v| d[v]).map(|v| w[v]).sum()
        }
        Profile::Capacitated => {
            let c = inst.capacities.as_ref().ok_or(Issue::MissingProfile("capacities"))?;
            capacitated_value(&adj, set, c)
        }
    })
}

/// All violated conditions; empty when the solution is valid.
pub fn verify(
    inst: &Instance,
    sol: &SolutionFile,
    problem: ProblemKind,
    param: u64,
    profile: Profile,
) -> Vec<Issue> {
    let n = inst.graph.n();
    let mut issues = Vec::new();
    if sol.size != sol.vertices.len() {
        issues.push(Issue::SizeMismatch { declared: sol.size, listed: sol.vertices.len() });
    }
    if sol.vertices.is_empty() {
        issues.push(Issue::Empty);
        return issues;
    }
    let mut members = vec![false; n];
    let mut set = Vec::new();
    for &v in &sol.vertices {
        if v >= n {
            issues.push(Issue::OutOfRange(v));
        } else if members[v] {
            issues.push(Issue::Duplicate(v));
        } else {
            members[v] = true;
            set.push(v);
        }
    }
    if set.is_empty() {
        return issues;
    }

    let adj = adjacency(inst);
    let components = count_components(&adj, &members, &set);
    if components != 1 {
        issues.push(Issue::Disconnected { components });
    }
    if let Some(why) = check_tree(&adj, &members, &set, &sol.tree) {
        issues.push(Issue::BadTree(why));
    }

    let profile = match problem {
        ProblemKind::Pgcds | ProblemKind::Bgcds => profile,
        _ => Profile::Dom,
    };
    match recount(inst, profile, &set) {
        Err(issue) => issues.push(issue),
        Ok(actual) => {
            if actual != sol.objective {
                issues.push(Issue::ObjectiveMismatch { claimed: sol.objective, actual });
            }
            if !problem.is_budgeted() && actual < param {
                issues.push(Issue::QuotaUnmet { quota: param, actual });
            }
        }
    }
    if problem.is_budgeted() && set.len() as u64 > param {
        issues.push(Issue::BudgetExceeded { budget: param, size: set.len() });
    }
    issues
}
