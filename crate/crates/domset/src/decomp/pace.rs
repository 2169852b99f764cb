//! PACE `.td` files: `s td <bags> <width+1> <n>`, one `b <id> <v...>` line
//! per bag and one `<i> <j>` line per tree edge. Bag and vertex ids are
//! 1-based; `c` lines are comments.

use std::fmt::Write as _;

use super::TreeDecomposition;
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let max_bag = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "s td {} {} {}", td.bags.len(), max_bag, n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Returns the decomposition and the vertex count from the header.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    let num = |t: Option<&str>, line: usize, what: &str| -> Result<usize> {
        let t = t.ok_or_else(|| perr(line, format!("missing {what}")))?;
        t.parse().map_err(|_| perr(line, format!("bad {what} '{t}'")))
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(first) = toks.next() else { continue };
        match first {
            "c" => {}
            "s" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                if toks.next() != Some("td") {
                    return Err(perr(line, "expected 's td <bags> <width+1> <n>'"));
                }
                let k = num(toks.next(), line, "bag count")?;
                let w = num(toks.next(), line, "bag size")?;
                let n = num(toks.next(), line, "vertex count")?;
                bags = vec![None; k];
                header = Some((k, w, n));
            }
            _ => {
                let (k, _, n) = header.ok_or_else(|| perr(line, "record before header"))?;
                if first == "b" {
                    let id = num(toks.next(), line, "bag id")?;
                    if id == 0 || id > k {
                        return Err(perr(line, format!("bag id {id} outside 1..={k}")));
                    }
                    let mut bag = Vec::new();
                    for t in toks {
                        let v: usize = t.parse().map_err(|_| perr(line, format!("bad vertex '{t}'")))?;
                        if v == 0 || v > n {
                            return Err(perr(line, format!("vertex {v} outside 1..={n}")));
                        }
                        bag.push(v - 1);
                    }
                    if bags[id - 1].replace(bag).is_some() {
                        return Err(perr(line, format!("bag {id} listed twice")));
                    }
                } else {
                    let a = num(Some(first), line, "bag id")?;
                    let b = num(toks.next(), line, "bag id")?;
                    if a == 0 || a > k || b == 0 || b > k {
                        return Err(perr(line, "tree edge names a missing bag"));
                    }
                    if toks.next().is_some() {
                        return Err(perr(line, "trailing tokens"));
                    }
                    edges.push((a - 1, b - 1));
                }
            }
        }
    }
    let (_, w, n) = header.ok_or_else(|| perr(0, "missing 's td' header"))?;
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| perr(0, format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    let actual = bags.iter().map(Vec::len).max().unwrap_or(0);
    if actual != w {
        return Err(perr(0, format!("header declares bag size {w}, largest bag has {actual}")));
    }
    Ok((TreeDecomposition { bags, edges }, n))
}
