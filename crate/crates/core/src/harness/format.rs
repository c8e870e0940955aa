//! Line-based text formats for instances and orientations.
//!
//! ```text
//! # comment
//! udpo <n> <m>
//! v <id> <d+> <d->      (n lines, ids 1..n)
//! e <u> <w>             (m lines, in EdgeId order)
//! ```
//!
//! ```text
//! orient <k>
//! a <edge-id> <head-vertex-id>   (k lines)
//! ```
//!
//! All ids in files are 1-based.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{Arc, Caps, EdgeId, Instance, PartialOrientation, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let l = raw.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, ParseError> {
    field
        .parse()
        .or_else(|_| err(line, format!("invalid {what} '{field}'")))
}

fn id_in_range(line: usize, field: &str, what: &str, bound: usize) -> Result<usize, ParseError> {
    let id: usize = number(line, field, what)?;
    if id == 0 || id > bound {
        return err(line, format!("{what} {id} out of range 1..{bound}"));
    }
    Ok(id - 1)
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(ParseError {
        line: 0,
        message: "missing 'udpo' header".into(),
    })?;
    if header.len() != 3 || header[0] != "udpo" {
        return err(hl, "expected header 'udpo <n> <m>'");
    }
    let n: usize = number(hl, header[1], "vertex count")?;
    let m: usize = number(hl, header[2], "edge count")?;

    let mut caps: Vec<Option<Caps>> = vec![None; n];
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hl;
    for (ln, fields) in lines {
        last_line = ln;
        match fields[0] {
            "v" => {
                if fields.len() != 4 {
                    return err(ln, "expected 'v <id> <d+> <d->'");
                }
                let id = id_in_range(ln, fields[1], "vertex id", n)?;
                let out: u32 = number(ln, fields[2], "d+")?;
                let inn: u32 = number(ln, fields[3], "d-")?;
                if caps[id].replace(Caps::new(out, inn)).is_some() {
                    return err(ln, format!("vertex {} declared twice", id + 1));
                }
            }
            "e" => {
                if fields.len() != 3 {
                    return err(ln, "expected 'e <u> <w>'");
                }
                let u = id_in_range(ln, fields[1], "endpoint", n)?;
                let w = id_in_range(ln, fields[2], "endpoint", n)?;
                if u == w {
                    return err(ln, format!("self-loop at line {ln}"));
                }
                if edges.len() == m {
                    return err(ln, format!("more than {m} edge lines"));
                }
                edges.push((u, w));
            }
            other => return err(ln, format!("unknown record '{other}'")),
        }
    }
    if let Some(missing) = caps.iter().position(Option::is_none) {
        return err(last_line, format!("vertex {} not declared", missing + 1));
    }
    if edges.len() != m {
        return err(
            last_line,
            format!("expected {m} edge lines, found {}", edges.len()),
        );
    }
    Ok(Instance::from_raw(
        caps.into_iter().flatten().collect(),
        edges,
    ))
}

pub fn write_instance(inst: &Instance) -> String {
    let mut s = String::new();
    writeln!(s, "udpo {} {}", inst.num_vertices(), inst.num_edges()).unwrap();
    for v in inst.vertices() {
        let c = inst.caps(v);
        writeln!(s, "v {v} {} {}", c.out, c.inn).unwrap();
    }
    for &(u, w) in inst.edges() {
        writeln!(s, "e {u} {w}").unwrap();
    }
    s
}

/// Parses an orientation and checks it against `inst`: known edges, heads
/// that are endpoints, no edge twice. Feasibility is not checked.
pub fn parse_orientation(text: &str, inst: &Instance) -> Result<PartialOrientation, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(ParseError {
        line: 0,
        message: "missing 'orient' header".into(),
    })?;
    if header.len() != 2 || header[0] != "orient" {
        return err(hl, "expected header 'orient <k>'");
    }
    let k: usize = number(hl, header[1], "arc count")?;
    let mut po = PartialOrientation::new();
    let mut last_line = hl;
    for (ln, fields) in lines {
        last_line = ln;
        if fields.len() != 3 || fields[0] != "a" {
            return err(ln, "expected 'a <edge-id> <head-vertex-id>'");
        }
        let e = EdgeId(id_in_range(ln, fields[1], "edge id", inst.num_edges())?);
        let head = VertexId(id_in_range(
            ln,
            fields[2],
            "vertex id",
            inst.num_vertices(),
        )?);
        let (u, w) = inst.endpoints(e);
        if head != u && head != w {
            return err(ln, format!("vertex {head} is not an endpoint of edge {e}"));
        }
        if po.insert(Arc { edge: e, head }).is_err() {
            return err(ln, format!("edge {e} oriented twice"));
        }
    }
    if po.len() != k {
        return err(last_line, format!("expected {k} arcs, found {}", po.len()));
    }
    Ok(po)
}

pub fn write_orientation(po: &PartialOrientation) -> String {
    let mut s = String::new();
    writeln!(s, "orient {}", po.len()).unwrap();
    for a in po.arcs() {
        writeln!(s, "a {} {}", a.edge, a.head).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_edge() {
        let inst = parse_instance("udpo 2 1\nv 1 1 0\nv 2 0 1\ne 1 2\n").unwrap();
        assert_eq!(inst.num_edges(), 1);
        assert_eq!(inst.caps(VertexId(0)), Caps::new(1, 0));
        assert_eq!(inst.endpoints(EdgeId(0)), (VertexId(0), VertexId(1)));
    }

    #[test]
    fn self_loop_names_line() {
        let e = parse_instance("udpo 2 1\nv 1 1 0\nv 2 0 1\ne 1 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("self-loop at line 4"), "{e}");
    }

    #[test]
    fn duplicate_edges_are_parallel() {
        let inst =
            parse_instance("# two copies\nudpo 2 2\nv 1 1 1\nv 2 1 1\ne 1 2\ne 1 2\n").unwrap();
        assert_eq!(inst.num_edges(), 2);
        assert_eq!(inst.endpoints(EdgeId(0)), inst.endpoints(EdgeId(1)));
    }

    #[test]
    fn malformed_inputs() {
        let cases = [
            ("", 0),
            ("udpo 2\n", 1),
            ("udpo 2 1\nv 1 1 0\nv 3 0 1\ne 1 2\n", 3),
            ("udpo 2 1\nv 1 1 0\nv 1 0 1\ne 1 2\n", 3),
            ("udpo 2 1\nv 1 1 0\nv 2 0 1\n", 3),
            ("udpo 2 1\nv 1 x 0\nv 2 0 1\ne 1 2\n", 2),
            ("udpo 2 1\nv 1 1 0\ne 1 2\n", 3),
            ("udpo 1 0\nq 1\n", 2),
        ];
        for (text, line) in cases {
            let e = parse_instance(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn orientation_round_trip_and_errors() {
        let inst = parse_instance("udpo 3 2\nv 1 1 1\nv 2 1 1\nv 3 1 1\ne 1 2\ne 2 3\n").unwrap();
        let po = parse_orientation("orient 2\na 1 2\na 2 2\n", &inst).unwrap();
        assert_eq!(write_orientation(&po), "orient 2\na 1 2\na 2 2\n");
        assert!(parse_orientation("orient 1\na 1 3\n", &inst).is_err());
        assert!(parse_orientation("orient 2\na 1 2\na 1 1\n", &inst).is_err());
        assert!(parse_orientation("orient 2\na 1 2\n", &inst).is_err());
    }

    #[test]
    fn write_then_parse() {
        let text = "udpo 3 3\nv 1 2 0\nv 2 1 1\nv 3 0 2\ne 1 2\ne 2 3\ne 1 3\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(write_instance(&inst), text);
    }
}
