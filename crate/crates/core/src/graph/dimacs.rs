//! DIMACS edge format: `c` comments, one `p edge <n> <m>` header, then `m`
//! lines `e <u> <v>` with 1-based vertex ids.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::ConflictGraph;

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_id(tok: Option<&str>, line: usize, what: &str) -> Result<usize, DimacsError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("{what} `{tok}` is not a nonnegative integer")))
}

pub fn load_dimacs<R: BufRead>(reader: R) -> Result<ConflictGraph, DimacsError> {
    let mut graph: Option<(ConflictGraph, usize)> = None;
    let mut seen = 0usize;
    let mut last_line = 0;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(parse_err(lineno, "duplicate `p` header"));
                }
                if toks.next() != Some("edge") {
                    return Err(parse_err(lineno, "expected `p edge <n> <m>`"));
                }
                let n = parse_id(toks.next(), lineno, "vertex count")?;
                let m = parse_id(toks.next(), lineno, "edge count")?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after header"));
                }
                let g = ConflictGraph::new(n).map_err(|e| parse_err(lineno, e.to_string()))?;
                graph = Some((g, m));
            }
            Some("e") => {
                let Some((g, _)) = graph.as_mut() else {
                    return Err(parse_err(lineno, "edge before `p edge` header"));
                };
                let u = parse_id(toks.next(), lineno, "endpoint")?;
                let v = parse_id(toks.next(), lineno, "endpoint")?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after edge"));
                }
                let n = g.n();
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(parse_err(lineno, format!("vertex {w} out of range 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop at vertex {u}")));
                }
                if !g.add_edge(u - 1, v - 1).map_err(|e| parse_err(lineno, e.to_string()))? {
                    return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
                }
                seen += 1;
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unknown line type `{other}`")));
            }
        }
    }
    let (g, m) = graph.ok_or_else(|| parse_err(last_line.max(1), "missing `p edge` header"))?;
    if seen != m {
        return Err(parse_err(
            last_line.max(1),
            format!("header declares {m} edges but {seen} were given"),
        ));
    }
    Ok(g)
}

pub fn parse_dimacs(text: &str) -> Result<ConflictGraph, DimacsError> {
    load_dimacs(text.as_bytes())
}

/// Writes the header and the edges `u < v` in lexicographic order.
pub fn write_dimacs<W: Write>(g: &ConflictGraph, mut out: W) -> io::Result<()> {
    let edges = g.edges();
    writeln!(out, "p edge {} {}", g.n(), edges.len())?;
    for (u, v) in edges {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn to_dimacs_string(g: &ConflictGraph) -> String {
    let mut buf = Vec::new();
    write_dimacs(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
