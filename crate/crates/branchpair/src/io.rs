//! Plain-text and DOT serialization.
//!
//! Text format (UTF-8, LF): line 1 is the literal `digraph` or
//! `multidigraph`, line 2 the vertex count, then one arc per line as
//! `tail head` (0-based). Blank lines and `#` comments are ignored.
//! Vertex labels round-trip through `# label <index> <name>` comments.

use std::fmt::Write as _;

use crate::branching::GoodPair;
use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};

pub fn parse_text(input: &str) -> Result<DiGraph> {
    parse_labeled_text(input).map(|(d, _)| d)
}

/// Parses the text format, also collecting any `# label` comments.
pub fn parse_labeled_text(input: &str) -> Result<(DiGraph, Option<Vec<String>>)> {
    let mut header: Option<bool> = None; // multi?
    let mut n: Option<usize> = None;
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut labels: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let mut it = comment.split_whitespace();
            if it.next() == Some("label") {
                if let (Some(i), Some(name)) = (it.next(), it.next()) {
                    if let Ok(i) = i.parse::<usize>() {
                        labels.push((i, name.to_string()));
                    }
                }
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if header.is_none() {
            header = match line {
                "digraph" => Some(false),
                "multidigraph" => Some(true),
                other => {
                    return Err(Error::InconsistentHeader(format!(
                        "expected `digraph` or `multidigraph`, got `{other}`"
                    )))
                }
            };
            continue;
        }
        if n.is_none() {
            n = Some(line.parse().map_err(|_| Error::Syntax {
                line: lineno,
                msg: format!("bad vertex count `{line}`"),
            })?);
            continue;
        }
        let mut it = line.split_whitespace();
        let (t, h) = match (it.next(), it.next(), it.next()) {
            (Some(t), Some(h), None) => (t, h),
            _ => {
                return Err(Error::Syntax {
                    line: lineno,
                    msg: format!("expected `tail head`, got `{line}`"),
                })
            }
        };
        let parse_v = |s: &str| {
            s.parse::<Vertex>().map_err(|_| Error::Syntax {
                line: lineno,
                msg: format!("bad vertex `{s}`"),
            })
        };
        arcs.push((parse_v(t)?, parse_v(h)?));
    }

    let multi = header.ok_or_else(|| Error::InconsistentHeader("missing header line".into()))?;
    let n = n.ok_or_else(|| Error::InconsistentHeader("missing vertex count".into()))?;
    let d = if multi {
        DiGraph::build_multi(n, &arcs)?
    } else {
        DiGraph::build(n, &arcs).map_err(|e| match e {
            // A repeated arc contradicts the simple `digraph` header.
            Error::DuplicateArcInSimpleDigraph(u, v) => Error::InconsistentHeader(format!(
                "duplicate arc ({u}, {v}) under `digraph` header"
            )),
            other => other,
        })?
    };
    if labels.is_empty() {
        return Ok((d, None));
    }
    let mut names = vec![String::new(); d.vertex_count()];
    for (i, name) in labels {
        if i < names.len() {
            names[i] = name;
        }
    }
    Ok((d, Some(names)))
}

pub fn emit_text(d: &DiGraph) -> String {
    emit_labeled_text(d, None)
}

/// Canonical text form: header, count, optional label comments, arcs sorted
/// by `(tail, head)` with multiplicity written as repeated lines.
pub fn emit_labeled_text(d: &DiGraph, labels: Option<&[String]>) -> String {
    let mut s = String::new();
    s.push_str(if d.is_multi() {
        "multidigraph\n"
    } else {
        "digraph\n"
    });
    let _ = writeln!(s, "{}", d.vertex_count());
    if let Some(labels) = labels {
        for (i, name) in labels.iter().enumerate() {
            if !name.is_empty() {
                let _ = writeln!(s, "# label {i} {name}");
            }
        }
    }
    for arc in d.arcs() {
        for _ in 0..arc.multiplicity {
            let _ = writeln!(s, "{} {}", arc.tail, arc.head);
        }
    }
    s
}

/// DOT export. With a highlight pair, in-branching arcs are red and
/// out-branching arcs blue; everything else is black.
pub fn emit_dot(d: &DiGraph, highlight: Option<&GoodPair>, labels: Option<&[String]>) -> String {
    let mut s = String::from("digraph G {\n");
    for v in d.vertices() {
        match labels
            .and_then(|l| l.get(v))
            .filter(|name| !name.is_empty())
        {
            Some(name) => {
                let _ = writeln!(s, "  {v} [label=\"{name}\"];");
            }
            None => {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    for arc in d.arcs() {
        let mut red = 0u32;
        let mut blue = 0u32;
        if let Some(pair) = highlight {
            red = pair
                .in_branching
                .arcs()
                .filter(|&a| a == (arc.tail, arc.head))
                .count() as u32;
            blue = pair
                .out_branching
                .arcs()
                .filter(|&a| a == (arc.tail, arc.head))
                .count() as u32;
        }
        for occurrence in 0..arc.multiplicity {
            let color = if occurrence < red {
                "red"
            } else if occurrence < red + blue {
                "blue"
            } else {
                "black"
            };
            let _ = writeln!(s, "  {} -> {} [color={}];", arc.tail, arc.head, color);
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_two_cycle_matches_format() {
        let d = DiGraph::build(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(emit_text(&d), "digraph\n2\n0 1\n1 0\n");
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(matches!(
            parse_text("digraph\n2\n0 2\n"),
            Err(Error::VertexOutOfRange(2, 2))
        ));
    }

    #[test]
    fn parse_rejects_bad_header() {
        assert!(matches!(
            parse_text("graph\n2\n"),
            Err(Error::InconsistentHeader(_))
        ));
    }

    #[test]
    fn parse_duplicate_under_simple_header() {
        assert!(matches!(
            parse_text("digraph\n2\n0 1\n0 1\n"),
            Err(Error::InconsistentHeader(_))
        ));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let d = parse_text("# a comment\ndigraph\n\n3\n0 1\n# another\n1 2\n").unwrap();
        assert_eq!(d.arc_count(), 2);
    }

    #[test]
    fn labels_roundtrip() {
        let d = DiGraph::build(2, &[(0, 1), (1, 0)]).unwrap();
        let labels = vec!["a".to_string(), "b".to_string()];
        let text = emit_labeled_text(&d, Some(&labels));
        let (d2, parsed) = parse_labeled_text(&text).unwrap();
        assert_eq!(d2, d);
        assert_eq!(parsed.as_deref(), Some(&labels[..]));
    }

    #[test]
    fn multi_roundtrip() {
        let d = DiGraph::build_multi(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        let d2 = parse_text(&emit_text(&d)).unwrap();
        assert_eq!(d2, d);
    }
}
