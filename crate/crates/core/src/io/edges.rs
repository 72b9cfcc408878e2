use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parses a 0-based edge list: the first line holds the vertex count, each
/// further line one edge `i j`. `#` starts a comment; blank lines are
/// skipped and repeated edges are merged.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(no, line)| (no + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());

    let (no, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedInput("edge list is empty".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::MalformedInput(format!("line {no}: expected vertex count, got {header:?}")))?;
    if n == 0 {
        return Err(Error::MalformedInput(format!("line {no}: vertex count must be positive")));
    }

    let mut g = Graph::edgeless(n);
    for (no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(Error::MalformedInput(format!("line {no}: expected two vertex ids")));
        };
        let parse = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| Error::MalformedInput(format!("line {no}: bad vertex id {s:?}")))?;
            if v >= n {
                return Err(Error::MalformedInput(format!(
                    "line {no}: vertex {v} out of range 0..{n}"
                )));
            }
            Ok(v)
        };
        let (i, j) = (parse(a)?, parse(b)?);
        if i == j {
            return Err(Error::MalformedInput(format!("line {no}: self-loop at vertex {i}")));
        }
        g.set_edge(i, j, true);
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (i, j) in g.edges() {
        writeln!(out, "{i} {j}").unwrap();
    }
    out
}
