//! Line-oriented text formats for instances, colourings and verdicts, plus
//! DOT export.
//!
//! Instance files start with `p perm <n>` followed by `s v1 .. vn`, or with
//! `p graph <n> <m>` followed by `m` lines `e a b` and one `r <root>`. Lists
//! are given as `l <vertex> : <colours>`; vertices without one get the full
//! list. Vertices are numbered from 1, colours are `1`, `2`, `3`, and `#`
//! starts a comment line.

use std::fmt::Write;

use crate::colour::{Colour, ColourSet, ListMapping};
use crate::error::{Error, Result};
use crate::graph::{Colouring, Graph, Permutation, VertexId};
use crate::multichain::Layering;
use crate::solver::{Instance, Source, Verdict};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        (!line.is_empty() && !line.starts_with('#')).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn number(line: usize, token: &str, what: &str) -> Result<usize> {
    token.parse().map_err(|_| parse_error(line, format!("{what} `{token}` is not a number")))
}

fn vertex(line: usize, token: &str, n: usize) -> Result<usize> {
    let v = number(line, token, "vertex")?;
    if v == 0 || v > n {
        return Err(parse_error(line, format!("vertex {v} is outside 1..={n}")));
    }
    Ok(v - 1)
}

fn colour(line: usize, token: &str) -> Result<Colour> {
    token
        .parse::<u8>()
        .ok()
        .and_then(Colour::from_digit)
        .ok_or_else(|| parse_error(line, format!("colour `{token}` is not 1, 2 or 3")))
}

fn arity(line: usize, tokens: &[&str], expected: usize) -> Result<()> {
    if tokens.len() != expected {
        return Err(parse_error(
            line,
            format!("`{}` line needs {} fields, found {}", tokens[0], expected, tokens.len()),
        ));
    }
    Ok(())
}

enum Header {
    Perm { n: usize, values: Option<Vec<usize>> },
    Graph { n: usize, m: usize, edges: Vec<(usize, usize)>, root: Option<usize> },
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<Header> = None;
    let mut lists: Vec<Option<ColourSet>> = Vec::new();
    let mut last = 0;
    for (line, tokens) in content_lines(text) {
        last = line;
        let tag = tokens[0];
        if tag == "p" {
            if header.is_some() {
                return Err(parse_error(line, "second `p` line"));
            }
            header = Some(match tokens.get(1).copied() {
                Some("perm") => {
                    arity(line, &tokens, 3)?;
                    let n = number(line, tokens[2], "vertex count")?;
                    Header::Perm { n, values: None }
                }
                Some("graph") => {
                    arity(line, &tokens, 4)?;
                    let n = number(line, tokens[2], "vertex count")?;
                    let m = number(line, tokens[3], "edge count")?;
                    Header::Graph { n, m, edges: Vec::with_capacity(m), root: None }
                }
                _ => return Err(parse_error(line, "expected `p perm <n>` or `p graph <n> <m>`")),
            });
            let n = match header.as_ref().unwrap() {
                Header::Perm { n, .. } | Header::Graph { n, .. } => *n,
            };
            if n == 0 {
                return Err(parse_error(line, "instance needs at least one vertex"));
            }
            lists = vec![None; n];
            continue;
        }
        let Some(h) = header.as_mut() else {
            return Err(parse_error(line, "expected a `p` line first"));
        };
        let n = lists.len();
        match (tag, h) {
            ("s", Header::Perm { values, .. }) => {
                if values.is_some() {
                    return Err(parse_error(line, "second `s` line"));
                }
                if tokens.len() != n + 1 {
                    return Err(parse_error(line, format!("expected {n} values, found {}", tokens.len() - 1)));
                }
                let v = tokens[1..].iter().map(|t| number(line, t, "value")).collect::<Result<Vec<_>>>()?;
                Permutation::new(v.clone()).map_err(|e| parse_error(line, e.to_string()))?;
                *values = Some(v);
            }
            ("e", Header::Graph { m, edges, .. }) => {
                arity(line, &tokens, 3)?;
                if edges.len() == *m {
                    return Err(parse_error(line, format!("more than {m} edges")));
                }
                let (a, b) = (vertex(line, tokens[1], n)?, vertex(line, tokens[2], n)?);
                if a == b {
                    return Err(parse_error(line, format!("self-loop at vertex {}", a + 1)));
                }
                edges.push((a, b));
            }
            ("r", Header::Graph { root, .. }) => {
                arity(line, &tokens, 2)?;
                if root.is_some() {
                    return Err(parse_error(line, "second `r` line"));
                }
                *root = Some(vertex(line, tokens[1], n)?);
            }
            ("l", _) => {
                if tokens.len() < 3 || tokens[2] != ":" {
                    return Err(parse_error(line, "expected `l <vertex> : <colours>`"));
                }
                let v = vertex(line, tokens[1], n)?;
                if lists[v].is_some() {
                    return Err(parse_error(line, format!("second list for vertex {}", v + 1)));
                }
                let mut list = ColourSet::default();
                for t in &tokens[3..] {
                    list.insert(colour(line, t)?);
                }
                lists[v] = Some(list);
            }
            _ => return Err(parse_error(line, format!("unexpected `{tag}` line"))),
        }
    }
    let lists = ListMapping::new(lists.into_iter().map(|l| l.unwrap_or(ColourSet::FULL)).collect());
    match header {
        None => Err(parse_error(last, "missing `p` line")),
        Some(Header::Perm { values: None, .. }) => Err(parse_error(last, "missing `s` line")),
        Some(Header::Perm { values: Some(v), .. }) => Ok(Instance::from_permutation(Permutation::new(v)?, lists)),
        Some(Header::Graph { m, edges, .. }) if edges.len() != m => {
            Err(parse_error(last, format!("expected {m} edges, found {}", edges.len())))
        }
        Some(Header::Graph { root: None, .. }) => Err(parse_error(last, "missing `r` line")),
        Some(Header::Graph { n, edges, root: Some(r), .. }) => {
            Ok(Instance::from_graph(Graph::from_edges(n, &edges)?, VertexId(r), lists))
        }
    }
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    match &inst.source {
        Source::Permutation(p) => {
            writeln!(out, "p perm {}", p.len()).unwrap();
            let values: Vec<String> = p.values().iter().map(usize::to_string).collect();
            writeln!(out, "s {}", values.join(" ")).unwrap();
        }
        Source::Graph { graph, root } => {
            writeln!(out, "p graph {} {}", graph.n(), graph.edge_count()).unwrap();
            for (a, b) in graph.edges() {
                writeln!(out, "e {} {}", a + 1, b + 1).unwrap();
            }
            writeln!(out, "r {root}").unwrap();
        }
    }
    for (v, &list) in inst.lists.as_slice().iter().enumerate() {
        if list != ColourSet::FULL {
            write!(out, "l {} :", v + 1).unwrap();
            for c in list.iter() {
                write!(out, " {c}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// Reads `v <vertex> <colour>` lines, one per vertex. `s`, `w` and `c`
/// lines are skipped, so solver output can be read back directly.
pub fn parse_colouring(text: &str, n: usize) -> Result<Colouring> {
    let mut c = Colouring::uncoloured(n);
    let mut last = 0;
    for (line, tokens) in content_lines(text) {
        last = line;
        match tokens[0] {
            "s" | "w" | "c" => {}
            "v" => {
                arity(line, &tokens, 3)?;
                let v = vertex(line, tokens[1], n)?;
                if c.get(v).is_some() {
                    return Err(parse_error(line, format!("second colour for vertex {}", v + 1)));
                }
                c.set(v, colour(line, tokens[2])?);
            }
            tag => return Err(parse_error(line, format!("unexpected `{tag}` line"))),
        }
    }
    if let Some(v) = c.first_uncoloured() {
        return Err(parse_error(last, format!("no colour for vertex {v}")));
    }
    Ok(c)
}

pub fn write_colouring(c: &Colouring) -> String {
    let mut out = String::new();
    for (v, colour) in c.as_slice().iter().enumerate() {
        if let Some(colour) = colour {
            writeln!(out, "v {} {colour}", v + 1).unwrap();
        }
    }
    out
}

/// `s FEASIBLE` and the colouring, or `s INFEASIBLE` and a `w` line.
pub fn write_verdict(verdict: &Verdict) -> String {
    match verdict {
        Verdict::Feasible(c) => format!("s FEASIBLE\n{}", write_colouring(c)),
        Verdict::Infeasible(w) => format!("s INFEASIBLE\nw {w}\n"),
    }
}

fn fill(c: Colour) -> &'static str {
    match c {
        Colour::C1 => "#f4a582",
        Colour::C2 => "#92c5de",
        Colour::C3 => "#b8e186",
    }
}

/// Undirected DOT graph. With a layering, each layer shares a rank; with a
/// colouring, nodes are filled by colour and edges whose ends share a
/// colour are drawn red.
pub fn write_dot(g: &Graph, lists: &ListMapping, layering: Option<&Layering>, colouring: Option<&Colouring>) -> String {
    let mut out = String::from("graph perm3col {\n  node [shape=circle, style=filled, fillcolor=white];\n");
    if let Some(layering) = layering {
        for (i, layer) in layering.layers().iter().enumerate() {
            let names: Vec<String> = layer.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(out, "  {{ rank=same; // layer {i}\n    {}; }}", names.join("; ")).unwrap();
        }
    }
    for v in 0..g.n() {
        let list = lists.get(v);
        match colouring.and_then(|c| c.get(v)) {
            Some(c) => {
                writeln!(out, "  {} [label=\"{}\\n{{{list}}}\", fillcolor=\"{}\"];", v + 1, v + 1, fill(c)).unwrap()
            }
            None => writeln!(out, "  {} [label=\"{}\\n{{{list}}}\"];", v + 1, v + 1).unwrap(),
        }
    }
    for (a, b) in g.edges() {
        let clash = colouring.is_some_and(|c| c.get(a).is_some() && c.get(a) == c.get(b));
        let style = if clash { " [color=red, penwidth=2]" } else { "" };
        writeln!(out, "  {} -- {}{style};", a + 1, b + 1).unwrap();
    }
    out.push_str("}\n");
    out
}
