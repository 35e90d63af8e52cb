//! Benchmark harness: solve every instance of a corpus directory, compare
//! against the oracle when the instance is small, and emit CSV rows.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cds_core::oracle::ORACLE_MAX_N;
use cds_core::pipeline::GREEDY_FRACTION;
use cds_core::{ProblemKind, SolveOptions};
use rayon::prelude::*;

use crate::cache::OracleCache;
use crate::error::CliError;
use crate::format::read_instance;
use crate::instance::Instance;
use crate::profile::Profile;
use crate::run::{oracle, solve};

pub const CSV_HEADER: [&str; 11] =
    ["instance", "label", "problem", "param", "objective", "size", "opt", "bound", "ratio", "engine", "ms"];

/// Quota or budget for each instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    Absolute(u64),
    /// `⌈fraction · n⌉`, at least 1.
    Fraction(f64),
}

impl Param {
    pub fn resolve(self, n: usize) -> u64 {
        match self {
            Param::Absolute(x) => x,
            Param::Fraction(f) => ((f * n as f64).ceil() as u64).max(1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub problem: ProblemKind,
    pub param: Param,
    pub profile: Profile,
    pub opts: SolveOptions,
    /// Adds a look-ahead row with this depth for every spider instance.
    pub lookahead: Option<usize>,
    pub timing: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row {
    pub instance: String,
    pub label: String,
    pub problem: String,
    pub param: u64,
    pub objective: Option<u64>,
    pub size: Option<usize>,
    pub opt: Option<u64>,
    pub bound: Option<f64>,
    pub ratio: Option<f64>,
    /// QST engine, or `infeasible` / `error: ...` for failed rows.
    pub engine: String,
    pub ms: u128,
    pub hard_error: bool,
}

impl Row {
    fn fields(&self) -> [String; 11] {
        let opt = |x: Option<String>| x.unwrap_or_default();
        [
            self.instance.clone(),
            self.label.clone(),
            self.problem.clone(),
            self.param.to_string(),
            opt(self.objective.map(|x| x.to_string())),
            opt(self.size.map(|x| x.to_string())),
            opt(self.opt.map(|x| x.to_string())),
            opt(self.bound.map(|x| format!("{x:.4}"))),
            opt(self.ratio.map(|x| format!("{x:.4}"))),
            self.engine.clone(),
            self.ms.to_string(),
        ]
    }
}

/// Upper bound on size / OPT for the partial problems, lower bound on
/// objective / OPT for the budgeted ones.
pub fn ratio_bound(problem: ProblemKind, inst: &Instance, param: u64, opt: u64) -> Option<f64> {
    if opt == 0 {
        return None;
    }
    let k = opt as f64;
    match problem {
        ProblemKind::Pcds => {
            let delta = inst.graph.max_degree().max(1) as f64;
            Some((2.0 * k * delta.ln() + k + 2.0) / k)
        }
        ProblemKind::Pgcds => {
            let q = param.max(1) as f64;
            Some((2.0 * k * q.ln() + k + 2.0) / k)
        }
        ProblemKind::Bcds | ProblemKind::Bgcds => {
            Some((GREEDY_FRACTION / 13.0 * k).ceil() / k)
        }
        ProblemKind::Lookahead => None,
    }
}

/// Corpus files (`*.cds`, `*.txt`, `*.edges`, `*.col`) in name order.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        if path.is_file() && matches!(ext, "cds" | "txt" | "edges" | "col") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn error_row(name: &str, label: &str, problem: ProblemKind, param: u64, e: &CliError) -> Row {
    let infeasible = e.exit_code() == 3;
    Row {
        instance: name.to_string(),
        label: label.to_string(),
        problem: problem.name().to_string(),
        param,
        engine: if infeasible { "infeasible".into() } else { format!("error: {e}") },
        hard_error: !infeasible,
        ..Row::default()
    }
}

fn bench_instance(path: &Path, cfg: &BenchConfig, cache: &OracleCache) -> Vec<Row> {
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let inst = match fs::read_to_string(path)
        .map_err(|e| CliError::io(path, e))
        .and_then(|t| read_instance(&t).map_err(|source| CliError::Parse { path: path.into(), source }))
    {
        Ok(i) => i,
        Err(e) => return vec![error_row(&name, "", cfg.problem, 0, &e)],
    };
    let param = cfg.param.resolve(inst.n());
    let started = Instant::now();
    let sol = match solve(&inst, cfg.problem, param, cfg.profile, cfg.opts, cfg.lookahead.unwrap_or(1)) {
        Ok(s) => s,
        Err(e) => return vec![error_row(&name, &inst.label, cfg.problem, param, &e)],
    };
    let ms = if cfg.timing { started.elapsed().as_millis() } else { 0 };

    let mut row = Row {
        instance: name.clone(),
        label: inst.label.clone(),
        problem: cfg.problem.name().to_string(),
        param,
        objective: Some(sol.objective),
        size: Some(sol.size()),
        engine: sol.meta.engine.map_or("-", |e| e.name()).to_string(),
        ms,
        ..Row::default()
    };
    if inst.n() <= ORACLE_MAX_N {
        match oracle(&inst, cfg.problem, param, cfg.profile, cache) {
            Ok((opt, _)) => {
                let opt_value = if cfg.problem.is_budgeted() { opt.objective } else { opt.size() as u64 };
                row.opt = Some(opt_value);
                row.bound = ratio_bound(cfg.problem, &inst, param, opt_value);
                if opt_value > 0 {
                    let got = if cfg.problem.is_budgeted() { sol.objective } else { sol.size() as u64 };
                    row.ratio = Some(got as f64 / opt_value as f64);
                }
            }
            Err(e) => row.engine = format!("{} (oracle: {e})", row.engine),
        }
    }
    let mut rows = vec![row];

    if let (Some(depth), true) = (cfg.lookahead, inst.label.starts_with("spider")) {
        let started = Instant::now();
        let reference = solve(&inst, ProblemKind::Bcds, param, Profile::Dom, cfg.opts, depth);
        let look = solve(&inst, ProblemKind::Lookahead, param, Profile::Dom, cfg.opts, depth);
        let ms = if cfg.timing { started.elapsed().as_millis() } else { 0 };
        match (reference, look) {
            (Ok(b), Ok(l)) => rows.push(Row {
                instance: name,
                label: inst.label.clone(),
                problem: ProblemKind::Lookahead.name().to_string(),
                param,
                objective: Some(l.objective),
                size: Some(l.size()),
                opt: Some(b.objective),
                bound: None,
                ratio: Some(l.objective as f64 / b.objective.max(1) as f64),
                engine: format!("depth={depth}"),
                ms,
                hard_error: false,
            }),
            (Err(e), _) | (_, Err(e)) => {
                rows.push(error_row(&name, &inst.label, ProblemKind::Lookahead, param, &e))
            }
        }
    }
    rows
}

/// Runs the corpus concurrently; rows come back sorted by instance name
/// and problem.
pub fn run_bench(dir: &Path, cfg: &BenchConfig, cache: &OracleCache) -> Result<Vec<Row>, CliError> {
    let files = corpus_files(dir)?;
    let mut rows: Vec<Row> = files.par_iter().flat_map_iter(|p| bench_instance(p, cfg, cache)).collect();
    rows.sort_by(|a, b| (&a.instance, &a.problem).cmp(&(&b.instance, &b.problem)));
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush().map_err(|e| CliError::io("<csv>", e))?;
    Ok(())
}
