//! Line-oriented text formats for instances and solutions.
//!
//! Instance:
//!
//! ```text
//! cds 1 <n> <m> <flags>      flags: -, w, c or wc
//! label <text>               optional
//! e <u> <v>                  m lines, u < v
//! w <v> <weight>             n lines when flags contain w
//! c <v> <capacity>           n lines when flags contain c
//! ```
//!
//! Solution:
//!
//! ```text
//! sol <objective> <size>
//! # <free-form metadata>     optional
//! v <id> <id> ...
//! t <u> <v>                  size - 1 tree edges
//! ```

use std::fmt::Write as _;

use cds_core::{Graph, Solution};
use thiserror::Error;

use crate::instance::Instance;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

fn number<T: std::str::FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    match token {
        Some(t) => t.parse().or_else(|_| err(line, format!("invalid {what} `{t}`"))),
        None => err(line, format!("missing {what}")),
    }
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

pub fn serialize_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let flags = match (&inst.weights, &inst.capacities) {
        (None, None) => "-",
        (Some(_), None) => "w",
        (None, Some(_)) => "c",
        (Some(_), Some(_)) => "wc",
    };
    let mut out = format!("cds 1 {} {} {}\n", g.n(), g.edge_count(), flags);
    if !inst.label.is_empty() {
        let label = inst.label.replace(['\n', '\r'], " ");
        let _ = writeln!(out, "label {label}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    if let Some(w) = &inst.weights {
        for (v, x) in w.iter().enumerate() {
            let _ = writeln!(out, "w {v} {x}");
        }
    }
    if let Some(c) = &inst.capacities {
        for (v, x) in c.iter().enumerate() {
            let _ = writeln!(out, "c {v} {x}");
        }
    }
    out
}

fn per_vertex(
    slots: &mut [Option<u64>],
    mut tokens: std::str::SplitWhitespace<'_>,
    line: usize,
    what: &str,
) -> Result<(), ParseError> {
    let v: usize = number(tokens.next(), line, "vertex")?;
    let x: u64 = number(tokens.next(), line, what)?;
    if tokens.next().is_some() {
        return err(line, "trailing tokens");
    }
    match slots.get_mut(v) {
        None => err(line, format!("vertex {v} out of range")),
        Some(Some(_)) => err(line, format!("duplicate {what} for vertex {v}")),
        Some(slot) => {
            *slot = Some(x);
            Ok(())
        }
    }
}

fn complete(slots: Vec<Option<u64>>, line: usize, what: &str) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::with_capacity(slots.len());
    for (v, s) in slots.into_iter().enumerate() {
        match s {
            Some(x) => out.push(x),
            None => return err(line, format!("missing {what} for vertex {v}")),
        }
    }
    Ok(out)
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !is_skippable(l));
    let Some((hl, header)) = lines.next() else {
        return err(1, "empty input");
    };
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("cds") {
        return err(hl, "expected header `cds 1 <n> <m> <flags>`");
    }
    let version: u32 = number(tokens.next(), hl, "version")?;
    if version != 1 {
        return err(hl, format!("unsupported version {version}"));
    }
    let n: usize = number(tokens.next(), hl, "vertex count")?;
    let m: usize = number(tokens.next(), hl, "edge count")?;
    let flags = tokens.next().unwrap_or("-");
    let (has_w, has_c) = match flags {
        "-" => (false, false),
        "w" => (true, false),
        "c" => (false, true),
        "wc" => (true, true),
        other => return err(hl, format!("unknown flags `{other}`")),
    };
    if tokens.next().is_some() {
        return err(hl, "trailing tokens in header");
    }
    if n == 0 {
        return err(hl, "graph must have at least one vertex");
    }

    let mut label = String::new();
    let mut edges = Vec::with_capacity(m);
    let mut weights = vec![None; if has_w { n } else { 0 }];
    let mut caps = vec![None; if has_c { n } else { 0 }];
    let mut last = hl;
    for (ln, line) in lines {
        last = ln;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix("label") {
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return err(ln, "unknown record");
            }
            if !label.is_empty() {
                return err(ln, "duplicate label");
            }
            label = rest.trim().to_string();
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("e") => {
                let u: usize = number(tokens.next(), ln, "endpoint")?;
                let v: usize = number(tokens.next(), ln, "endpoint")?;
                if tokens.next().is_some() {
                    return err(ln, "trailing tokens");
                }
                if u >= n || v >= n {
                    return err(ln, format!("edge ({u}, {v}) out of range"));
                }
                if u == v {
                    return err(ln, format!("self-loop on {u}"));
                }
                edges.push((u, v));
            }
            Some("w") if has_w => per_vertex(&mut weights, tokens, ln, "weight")?,
            Some("c") if has_c => per_vertex(&mut caps, tokens, ln, "capacity")?,
            Some("w") => return err(ln, "weight line but header has no `w` flag"),
            Some("c") => return err(ln, "capacity line but header has no `c` flag"),
            _ => return err(ln, format!("unknown record `{trimmed}`")),
        }
    }

    if edges.len() != m {
        return err(last, format!("header declares {m} edges, found {}", edges.len()));
    }
    let graph = Graph::from_edge_list(n, &edges).expect("edges validated above");
    if graph.edge_count() != m {
        return err(last, "duplicate edges");
    }
    let weights = if has_w { Some(complete(weights, last, "weight")?) } else { None };
    let capacities = if has_c { Some(complete(caps, last, "capacity")?) } else { None };
    Ok(Instance { graph, weights, capacities, label })
}

/// Reads a plain edge list (`u v` per line, 0-based, `#`/`%` comments) or a
/// DIMACS file (`p edge n m`, `e u v` 1-based, `c` comments).
pub fn parse_edge_list(text: &str) -> Result<Instance, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('%') || t.starts_with("c ") || t == "c" {
            continue;
        }
        let mut tokens = t.split_whitespace();
        let first = tokens.next().expect("nonempty line");
        match first {
            "p" => {
                let _kind = tokens.next();
                declared = Some(number(tokens.next(), ln, "vertex count")?);
            }
            "e" => {
                let Some(n) = declared else {
                    return err(ln, "edge before `p` line");
                };
                let u: usize = number(tokens.next(), ln, "endpoint")?;
                let v: usize = number(tokens.next(), ln, "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return err(ln, format!("edge ({u}, {v}) out of range"));
                }
                edges.push((u - 1, v - 1));
            }
            _ => {
                if declared.is_some() {
                    return err(ln, format!("unknown record `{t}`"));
                }
                let u: usize = number(Some(first), ln, "endpoint")?;
                let v: usize = number(tokens.next(), ln, "endpoint")?;
                edges.push((u, v));
            }
        }
    }
    edges.retain(|&(u, v)| u != v);
    let n = match declared {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    if n == 0 {
        return err(1, "no vertices");
    }
    let graph = Graph::from_edge_list(n, &edges).expect("edges validated above");
    Ok(Instance::new(graph, ""))
}

/// Native format when the first record is a `cds` header, edge list otherwise.
pub fn read_instance(text: &str) -> Result<Instance, ParseError> {
    let first = text.lines().find(|l| !is_skippable(l)).unwrap_or("");
    if first.split_whitespace().next() == Some("cds") {
        parse_instance(text)
    } else {
        parse_edge_list(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFile {
    pub objective: u64,
    pub size: usize,
    pub meta: Option<String>,
    pub vertices: Vec<usize>,
    pub tree: Vec<(usize, usize)>,
}

impl SolutionFile {
    pub fn from_solution(s: &Solution) -> Self {
        let engine = s.meta.engine.map_or("-", |e| e.name());
        let guess = s.meta.guess.map_or("-".to_string(), |g| g.to_string());
        let meta = format!(
            "problem={} param={} engine={} guess={}",
            s.meta.problem.name(),
            s.meta.param,
            engine,
            guess
        );
        SolutionFile {
            objective: s.objective,
            size: s.size(),
            meta: Some(meta),
            vertices: s.chosen.as_slice().to_vec(),
            tree: s.tree.edges().to_vec(),
        }
    }
}

pub fn serialize_solution(s: &SolutionFile) -> String {
    let mut out = format!("sol {} {}\n", s.objective, s.size);
    if let Some(meta) = &s.meta {
        let _ = writeln!(out, "# {meta}");
    }
    out.push('v');
    for v in &s.vertices {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    for (u, v) in &s.tree {
        let _ = writeln!(out, "t {u} {v}");
    }
    out
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let Some((hl, header)) = lines.next() else {
        return err(1, "empty input");
    };
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("sol") {
        return err(hl, "expected header `sol <objective> <size>`");
    }
    let objective = number(tokens.next(), hl, "objective")?;
    let size = number(tokens.next(), hl, "size")?;
    let mut meta = None;
    let mut vertices = None;
    let mut tree = Vec::new();
    for (ln, line) in lines {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix('#') {
            meta.get_or_insert_with(|| rest.trim().to_string());
            continue;
        }
        let mut tokens = t.split_whitespace();
        match tokens.next() {
            Some("v") => {
                if vertices.is_some() {
                    return err(ln, "duplicate vertex line");
                }
                let ids: Result<Vec<usize>, _> = tokens.map(|x| number(Some(x), ln, "vertex")).collect();
                vertices = Some(ids?);
            }
            Some("t") => {
                let u = number(tokens.next(), ln, "tree endpoint")?;
                let v = number(tokens.next(), ln, "tree endpoint")?;
                tree.push((u, v));
            }
            _ => return err(ln, format!("unknown record `{t}`")),
        }
    }
    let Some(vertices) = vertices else {
        return err(hl, "missing vertex line");
    };
    Ok(SolutionFile { objective, size, meta, vertices, tree })
}
