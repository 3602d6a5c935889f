use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

/// A graph text parse failure at a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct GraphTextError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> GraphTextError {
    GraphTextError {
        line,
        message: message.into(),
    }
}

fn two_numbers(line_no: usize, line: &str, what: &str) -> Result<(usize, usize), GraphTextError> {
    let mut it = line.split_whitespace();
    let parse = |tok: Option<&str>| -> Result<usize, GraphTextError> {
        let tok = tok.ok_or_else(|| err(line_no, format!("{what}: expected two integers")))?;
        tok.parse()
            .map_err(|_| err(line_no, format!("{what}: `{tok}` is not a non-negative integer")))
    };
    let a = parse(it.next())?;
    let b = parse(it.next())?;
    if it.next().is_some() {
        return Err(err(line_no, format!("{what}: trailing data")));
    }
    Ok((a, b))
}

/// Parses graph text. Blank lines and lines starting with `#` are skipped;
/// edges may come in any order and orientation.
pub fn parse_graph(text: &str) -> Result<Graph, GraphTextError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let (n, m) = two_numbers(header_line, header, "header")?;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    let mut line_of = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        if edges.len() == m {
            return Err(err(line_no, format!("more than the {m} edges declared")));
        }
        let (u, v) = two_numbers(line_no, line, "edge")?;
        for x in [u, v] {
            if x >= n {
                return Err(err(line_no, format!("vertex {x} out of range for order {n}")));
            }
        }
        if u == v {
            return Err(err(line_no, format!("loop at vertex {u}")));
        }
        edges.push((u.min(v), u.max(v)));
        line_of.push(line_no);
    }
    if edges.len() != m {
        return Err(err(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    match Graph::new(n, edges.clone()) {
        Ok(g) => Ok(g),
        Err(GraphError::DuplicateEdge(a, b)) => {
            let second = edges
                .iter()
                .enumerate()
                .filter(|(_, &e)| e == (a, b))
                .nth(1)
                .map(|(i, _)| line_of[i])
                .unwrap_or(last_line);
            Err(err(second, format!("duplicate edge {a} {b}")))
        }
        Err(e) => Err(err(last_line, e.to_string())),
    }
}

/// Canonical text: header, then edges `u v` with `u < v` in sorted order,
/// each line newline-terminated.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(8 + g.edge_count() * 8);
    writeln!(out, "{} {}", g.order(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
