//! Text format for graphs. Ids in files are 1-based.
//!
//! ```text
//! c comment
//! p ds <n> <m>
//! e <u> <v>
//! w <v> <weight>
//! m <v...>        modulator
//! x <v...>        exempt set of a relaxed instance
//! s <v...>        partial or full solution
//! ```

use std::fmt::Write as _;

use super::{Graph, VertexSet, Weights};
use crate::error::{Error, Result};

/// Everything a graph file may carry besides the graph itself.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub weights: Weights,
    pub weighted: bool,
    pub modulator: Option<VertexSet>,
    pub exempt: Option<VertexSet>,
    pub solution: Option<VertexSet>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let t = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    t.parse::<usize>().map_err(|_| perr(line, format!("bad {what} '{t}'")))
}

fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = tok.parse().map_err(|_| perr(line, format!("bad vertex '{tok}'")))?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut weights: Vec<(usize, u64, usize)> = Vec::new();
    let mut sets: [Option<Vec<usize>>; 3] = [None, None, None];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                if toks.next() != Some("ds") {
                    return Err(perr(line, "expected 'p ds <n> <m>'"));
                }
                let n = parse_num(toks.next(), line, "vertex count")?;
                let m = parse_num(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            _ => {
                let (n, _) = header.ok_or_else(|| perr(line, "record before header"))?;
                match kind {
                    "e" => {
                        let u = parse_vertex(toks.next().ok_or_else(|| perr(line, "missing endpoint"))?, n, line)?;
                        let v = parse_vertex(toks.next().ok_or_else(|| perr(line, "missing endpoint"))?, n, line)?;
                        if u == v {
                            return Err(perr(line, "self-loop"));
                        }
                        edges.push((u, v));
                    }
                    "w" => {
                        let v = parse_vertex(toks.next().ok_or_else(|| perr(line, "missing vertex"))?, n, line)?;
                        let t = toks.next().ok_or_else(|| perr(line, "missing weight"))?;
                        let w: u64 = t.parse().map_err(|_| perr(line, format!("bad weight '{t}'")))?;
                        weights.push((v, w, line));
                    }
                    "m" | "x" | "s" => {
                        let slot = match kind {
                            "m" => 0,
                            "x" => 1,
                            _ => 2,
                        };
                        let ids = toks.map(|t| parse_vertex(t, n, line)).collect::<Result<Vec<_>>>()?;
                        sets[slot].get_or_insert_with(Vec::new).extend(ids);
                        continue;
                    }
                    other => return Err(perr(line, format!("unknown record '{other}'"))),
                }
            }
        }
        if toks.next().is_some() {
            return Err(perr(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| perr(0, "missing 'p ds' header"))?;
    if edges.len() != m {
        return Err(perr(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    let graph = Graph::new(n, edges).map_err(|e| perr(0, e.to_string()))?;
    let mut w = Weights::unit(n);
    for &(v, weight, _) in &weights {
        w.set(v, weight);
    }
    let to_set = |ids: &Option<Vec<usize>>| ids.as_ref().map(|ids| VertexSet::from_ids(n, ids.iter().copied()));
    Ok(Instance {
        graph,
        weighted: !weights.is_empty(),
        weights: w,
        modulator: to_set(&sets[0]),
        exempt: to_set(&sets[1]),
        solution: to_set(&sets[2]),
    })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    Ok(parse_instance(text)?.graph)
}

/// Writes the header and edges sorted lexicographically, then any non-unit
/// weights.
pub fn write_graph(g: &Graph, weights: Option<&Weights>) -> String {
    let mut out = String::new();
    writeln!(out, "p ds {} {}", g.n(), g.m()).unwrap();
    let mut edges = g.edges().to_vec();
    edges.sort_unstable();
    for (u, v) in edges {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    if let Some(w) = weights {
        if !w.is_unit() {
            for v in g.vertices() {
                writeln!(out, "w {} {}", v + 1, w.of(v)).unwrap();
            }
        }
    }
    out
}

/// One `<tag> <v...>` line with 1-based ids.
pub fn set_line(tag: char, s: &VertexSet) -> String {
    let mut out = String::from(tag);
    for v in s.iter() {
        write!(out, " {}", v + 1).unwrap();
    }
    out.push('\n');
    out
}

/// Reads a solution: `s` lines or bare 1-based ids, `c` lines ignored.
pub fn parse_solution(text: &str, n: usize) -> Result<VertexSet> {
    let mut s = VertexSet::new(n);
    for (i, raw) in text.lines().enumerate() {
        let mut toks = raw.split_whitespace().peekable();
        match toks.peek() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                toks.next();
            }
            _ => {}
        }
        for t in toks {
            s.insert(parse_vertex(t, n, i + 1)?);
        }
    }
    Ok(s)
}
