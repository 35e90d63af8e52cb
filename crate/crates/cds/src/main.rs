use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cds::bench::{run_bench, write_csv, BenchConfig, Param};
use cds::cache::OracleCache;
use cds::format::{parse_solution, read_instance, serialize_instance, serialize_solution, SolutionFile};
use cds::instance::{gen_gnp, gen_spider, gen_unit_disk, Instance};
use cds::run::{oracle, solve};
use cds::verify::verify;
use cds::{CliError, Profile};
use cds_core::tree::SplitCase;
use cds_core::{decompose_13, GuessSearch, ProblemKind, QstMode, RootedTree, SolveOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cds", version, about = "Partial and budgeted connected dominating sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run a solver pipeline and write a solution file.
    Solve {
        problem: ProblemKind,
        instance: PathBuf,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value = "dom")]
        profile: Profile,
        #[arg(long, default_value = "auto")]
        mode: QstMode,
        #[arg(long, value_enum, default_value_t = Guess::Linear)]
        guess: Guess,
        /// Look-ahead depth for the `lookahead` problem.
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact optimum by exhaustive search (small instances only).
    Oracle {
        problem: ProblemKind,
        instance: PathBuf,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value = "dom")]
        profile: Profile,
        /// Overrides the CDS_ORACLE_CACHE directory.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Check a solution file against an instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        problem: ProblemKind,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value = "dom")]
        profile: Profile,
    },
    /// Solve every instance in a directory and write a CSV report.
    Bench {
        corpus: PathBuf,
        problem: ProblemKind,
        /// Absolute quota or budget.
        #[arg(long, conflicts_with = "frac")]
        param: Option<u64>,
        /// Quota or budget as a fraction of each instance's vertex count.
        #[arg(long)]
        frac: Option<f64>,
        #[arg(long, default_value = "dom")]
        profile: Profile,
        #[arg(long, default_value = "auto")]
        mode: QstMode,
        /// Add look-ahead rows of this depth for spider instances.
        #[arg(long)]
        lookahead: Option<usize>,
        /// Write 0 in the ms column for reproducible output.
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Split a tree instance into at most 13 parts of at most k vertices.
    Decompose {
        instance: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Spider {
        #[arg(long)]
        heads: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        legs: usize,
        #[arg(long, default_value_t = 1)]
        leg_len: usize,
        #[command(flatten)]
        extra: GenExtra,
    },
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        extra: GenExtra,
    },
    Unitdisk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        extra: GenExtra,
    },
}

#[derive(Args)]
struct GenExtra {
    /// Attach weights drawn from 0..=MAX.
    #[arg(long, value_name = "MAX")]
    weights: Option<u64>,
    /// Attach capacities drawn from 1..=MAX.
    #[arg(long, value_name = "MAX")]
    caps: Option<u64>,
    /// Seed for weights and capacities.
    #[arg(long, default_value_t = 0)]
    profile_seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ParamArgs {
    /// Quota for pcds and pgcds.
    #[arg(long)]
    quota: Option<u64>,
    /// Budget for bcds, bgcds and lookahead.
    #[arg(long)]
    k: Option<u64>,
}

impl ParamArgs {
    fn get(&self, problem: ProblemKind) -> Result<u64, CliError> {
        let (value, flag) = if problem.is_budgeted() { (self.k, "--k") } else { (self.quota, "--quota") };
        value.ok_or_else(|| CliError::Usage(format!("{} needs {flag}", problem.name())))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Guess {
    Linear,
    Binary,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    read_instance(&read_text(path)?).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn cache_for(dir: Option<PathBuf>) -> OracleCache {
    match dir {
        Some(d) => OracleCache::new(Some(d)),
        None => OracleCache::from_env(),
    }
}

fn generate(kind: GenKind) -> Result<(), CliError> {
    let (inst, extra, seed) = match kind {
        GenKind::Spider { heads, c, legs, leg_len, extra } => {
            if heads < 2 || c < 1 || legs < 1 {
                return Err(CliError::Usage("spider needs --heads >= 2, --c >= 1, --legs >= 1".into()));
            }
            (gen_spider(heads, c, legs, leg_len), extra, None)
        }
        GenKind::Gnp { n, p, seed, extra } => {
            if n == 0 || !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage("gnp needs --n >= 1 and 0 <= --p <= 1".into()));
            }
            (gen_gnp(n, p, seed), extra, Some(seed))
        }
        GenKind::Unitdisk { n, r, seed, extra } => {
            if n == 0 || r.is_nan() || r <= 0.0 {
                return Err(CliError::Usage("unitdisk needs --n >= 1 and --r > 0".into()));
            }
            (gen_unit_disk(n, r, seed), extra, Some(seed))
        }
    };
    let profile_seed = seed.unwrap_or(0) ^ extra.profile_seed;
    let mut inst = inst;
    if let Some(max) = extra.weights {
        inst = inst.with_random_weights(max, profile_seed);
    }
    if let Some(max) = extra.caps {
        if max == 0 {
            return Err(CliError::Usage("--caps must be at least 1".into()));
        }
        inst = inst.with_random_capacities(1, max, profile_seed);
    }
    emit(extra.output.as_deref(), &serialize_instance(&inst))
}

fn decompose(path: &Path, k: usize) -> Result<(), CliError> {
    let inst = load_instance(path)?;
    let g = &inst.graph;
    if g.edge_count() + 1 != g.n() || g.components().len() != 1 {
        return Err(CliError::Usage(format!("{} is not a tree", path.display())));
    }
    let edges: Vec<_> = g.edges().collect();
    let profit = inst.weights.clone().unwrap_or_else(|| vec![1; g.n()]);
    let tree = RootedTree::new((0..g.n()).collect(), &edges, 0, profit)?;
    let d = decompose_13(&tree, k)?;
    let mut out = format!("tree n={} k={k}\n", g.n());
    match (d.top_split, d.case) {
        (Some((a, b)), Some(case)) => {
            let case = match case {
                SplitCase::Balanced => "balanced",
                SplitCase::Skewed => "skewed",
            };
            out += &format!("split {a} {b} case {case}\n");
        }
        _ => out += "split none\n",
    }
    for (i, part) in d.parts.iter().enumerate() {
        let ids: Vec<String> = part.labels().iter().map(|v| v.to_string()).collect();
        out += &format!("part {i} size {}: {}\n", part.len(), ids.join(" "));
    }
    out += &format!("parts {}\n", d.parts.len());
    emit(None, &out)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { kind } => generate(kind),
        Command::Solve { problem, instance, param, profile, mode, guess, c, output } => {
            let inst = load_instance(&instance)?;
            let param = param.get(problem)?;
            let guess = match guess {
                Guess::Linear => GuessSearch::Linear,
                Guess::Binary => GuessSearch::Binary,
            };
            let sol = solve(&inst, problem, param, profile, SolveOptions { mode, guess }, c)?;
            let file = SolutionFile::from_solution(&sol);
            let report = format!(
                "objective={} size={} engine={}",
                sol.objective,
                sol.size(),
                sol.meta.engine.map_or("-", |e| e.name())
            );
            emit(output.as_deref(), &serialize_solution(&file))?;
            if output.is_some() {
                println!("{report}");
            } else {
                eprintln!("{report}");
            }
            Ok(())
        }
        Command::Oracle { problem, instance, param, profile, cache_dir } => {
            let inst = load_instance(&instance)?;
            let param = param.get(problem)?;
            let (sol, cached) = oracle(&inst, problem, param, profile, &cache_for(cache_dir))?;
            let ids: Vec<String> = sol.chosen.iter().map(|v| v.to_string()).collect();
            println!("opt {} {}", sol.objective, sol.size());
            println!("v {}", ids.join(" "));
            if cached {
                eprintln!("(from cache)");
            }
            Ok(())
        }
        Command::Verify { instance, solution, problem, param, profile } => {
            let inst = load_instance(&instance)?;
            let sol = parse_solution(&read_text(&solution)?)
                .map_err(|source| CliError::Parse { path: solution.clone(), source })?;
            let issues = verify(&inst, &sol, problem, param.get(problem)?, profile);
            if issues.is_empty() {
                println!("ok");
                Ok(())
            } else {
                Err(CliError::Verification(issues.iter().map(|i| format!("- {i}")).collect()))
            }
        }
        Command::Bench {
            corpus,
            problem,
            param,
            frac,
            profile,
            mode,
            lookahead,
            no_timing,
            cache_dir,
            output,
        } => {
            let param = match (param, frac) {
                (Some(p), None) => Param::Absolute(p),
                (None, Some(f)) if f > 0.0 => Param::Fraction(f),
                _ => return Err(CliError::Usage("bench needs --param N or --frac F > 0".into())),
            };
            let cfg = BenchConfig {
                problem,
                param,
                profile,
                opts: SolveOptions::with_mode(mode),
                lookahead,
                timing: !no_timing,
            };
            let rows = run_bench(&corpus, &cfg, &cache_for(cache_dir))?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            emit(output.as_deref(), &String::from_utf8(buf).expect("csv output is utf-8"))?;
            let failed = rows.iter().filter(|r| r.hard_error).count();
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} instance(s) failed")));
            }
            Ok(())
        }
        Command::Decompose { instance, k } => decompose(&instance, k),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
