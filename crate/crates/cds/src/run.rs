//! Problem dispatch shared by the CLI, the bench harness and tests.

use cds_core::oracle::{opt_bcds, opt_bgcds, opt_pcds, opt_pgcds};
use cds_core::pipeline::{solve_bcds_with, solve_bgcds_with};
use cds_core::{
    lookahead_greedy_bcds, solve_pcds, solve_pgcds, ProblemKind, QstMode, Solution, SolutionMeta,
    SolveOptions, VertexTree,
};

use crate::cache::{OracleCache, OracleRecord};
use crate::error::CliError;
use crate::format::serialize_instance;
use crate::instance::Instance;
use crate::profile::{build_profile, Profile};

/// Generalized problems use `profile`; the plain ones always count
/// dominated vertices.
pub fn effective_profile(problem: ProblemKind, profile: Profile) -> Profile {
    match problem {
        ProblemKind::Pgcds | ProblemKind::Bgcds => profile,
        _ => Profile::Dom,
    }
}

fn budget(param: u64) -> Result<usize, CliError> {
    usize::try_from(param).map_err(|_| CliError::Usage(format!("budget {param} out of range")))
}

pub fn solve(
    inst: &Instance,
    problem: ProblemKind,
    param: u64,
    profile: Profile,
    opts: SolveOptions,
    lookahead_depth: usize,
) -> Result<Solution, CliError> {
    let g = &inst.graph;
    let f = build_profile(inst, effective_profile(problem, profile))?;
    Ok(match problem {
        ProblemKind::Pcds => solve_pcds(g, param, opts.mode)?,
        ProblemKind::Bcds => solve_bcds_with(g, budget(param)?, opts)?,
        ProblemKind::Pgcds => solve_pgcds(g, &f, param, opts.mode)?,
        ProblemKind::Bgcds => solve_bgcds_with(g, &f, budget(param)?, opts)?,
        ProblemKind::Lookahead => lookahead_greedy_bcds(g, budget(param)?, lookahead_depth)?,
    })
}

/// Exact optimum, served from `cache` when possible. The flag reports a
/// cache hit.
pub fn oracle(
    inst: &Instance,
    problem: ProblemKind,
    param: u64,
    profile: Profile,
    cache: &OracleCache,
) -> Result<(Solution, bool), CliError> {
    let g = &inst.graph;
    let profile = effective_profile(problem, profile);
    let f = build_profile(inst, profile)?;
    let key = OracleCache::key(&serialize_instance(inst), problem.name(), param, profile.name());

    if let Some(rec) = cache.get(&key) {
        let valid = rec.vertices.iter().all(|&v| v < g.n());
        if let Some(tree) = valid.then(|| VertexTree::spanning(g, &rec.vertices)).flatten() {
            let meta = SolutionMeta { problem, mode: QstMode::Exact, param, guess: None, engine: None };
            let sol = Solution::new(tree, &f, meta);
            if sol.objective == rec.objective {
                return Ok((sol, true));
            }
        }
    }

    let sol = match problem {
        ProblemKind::Pcds => opt_pcds(g, param)?,
        ProblemKind::Bcds | ProblemKind::Lookahead => opt_bcds(g, budget(param)?)?,
        ProblemKind::Pgcds => opt_pgcds(g, &f, param)?,
        ProblemKind::Bgcds => opt_bgcds(g, &f, budget(param)?)?,
    };
    let rec = OracleRecord { objective: sol.objective, vertices: sol.chosen.as_slice().to_vec() };
    // A cache that cannot be written only costs time.
    let _ = cache.put(&key, &rec);
    Ok((sol, false))
}
