//! Text formats: labelled edge lists for graphs and digraphs, graph6,
//! Burling trees and interval families.
//!
//! Blank lines and lines starting with `#` are ignored everywhere except
//! inside graph6. Labels use the same syntax as their `Display` output, so
//! `(1,2)`, `{3,4}` and `"name"` are all valid.
//!
//! Edge list: a line `n m`, then `n` label lines, then `m` lines `i j` of
//! zero-based positions in the label list. Arc lists use the same layout.

use std::fs;
use std::path::Path;

use num_rational::Rational64;
use thiserror::Error;

use crate::burling::{BurlingError, BurlingTree};
use crate::constructions::{ConstructionError, IntervalFamily};
use crate::graph::{Digraph, Graph, GraphError};
use crate::label::VertexLabel;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("graph6 cannot store the structured label {0}")]
    StructuredLabel(VertexLabel),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Burling(#[from] BurlingError),
    #[error(transparent)]
    Interval(#[from] ConstructionError),
}

fn parse_err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse {
        line,
        column,
        message: message.into(),
    })
}

/// Content lines with their one-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(s: &'a str) -> Self {
        Lines {
            inner: s.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str), IoError> {
        for (i, l) in self.inner.by_ref() {
            self.last = i + 1;
            let t = l.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Ok((i + 1, l));
            }
        }
        parse_err(self.last + 1, 1, format!("unexpected end of input, expected {what}"))
    }

    fn finish(mut self) -> Result<(), IoError> {
        for (i, l) in self.inner.by_ref() {
            let t = l.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return parse_err(i + 1, 1, "unexpected trailing content");
            }
        }
        Ok(())
    }
}

/// Whitespace-separated tokens with their one-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn numbers<const K: usize>(lineno: usize, line: &str, what: &str) -> Result<[usize; K], IoError> {
    let toks = tokens(line);
    if toks.len() != K {
        return parse_err(lineno, 1, format!("expected {what}"));
    }
    let mut out = [0; K];
    for (slot, (col, tok)) in out.iter_mut().zip(toks) {
        *slot = tok
            .parse()
            .or_else(|_| parse_err(lineno, col, format!("'{tok}' is not a non-negative integer")))?;
    }
    Ok(out)
}

fn label(lineno: usize, line: &str) -> Result<VertexLabel, IoError> {
    line.trim().parse().or_else(|e: crate::label::LabelParseError| {
        let indent = line.len() - line.trim_start().len();
        parse_err(lineno, indent + e.column, e.message)
    })
}

fn labels(lineno: usize, line: &str) -> Result<Vec<VertexLabel>, IoError> {
    VertexLabel::parse_list(line).or_else(|e| parse_err(lineno, e.column, e.message))
}

/// Labels and index pairs of an edge or arc list.
type Pairs = (Vec<VertexLabel>, Vec<(usize, usize)>);

fn parse_pairs(s: &str) -> Result<Pairs, IoError> {
    let mut lines = Lines::new(s);
    let (ln, header) = lines.next_line("header 'n m'")?;
    let [n, m] = numbers::<2>(ln, header, "header 'n m'")?;
    let mut labs = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next_line("a vertex label")?;
        labs.push(label(ln, l)?);
    }
    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = lines.next_line("a pair 'i j'")?;
        let [i, j] = numbers::<2>(ln, l, "a pair 'i j'")?;
        if i >= n || j >= n {
            return parse_err(ln, 1, format!("index out of range for {n} vertices"));
        }
        pairs.push((i, j));
    }
    lines.finish()?;
    Ok((labs, pairs))
}

pub fn parse_edge_list(s: &str) -> Result<Graph, IoError> {
    let (labels, pairs) = parse_pairs(s)?;
    Ok(Graph::from_indexed(labels, pairs)?)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for l in g.labels() {
        out += &format!("{l}\n");
    }
    for (i, j) in g.edges() {
        out += &format!("{i} {j}\n");
    }
    out
}

pub fn parse_arc_list(s: &str) -> Result<Digraph, IoError> {
    let (labels, pairs) = parse_pairs(s)?;
    let arcs: Vec<_> = pairs.iter().map(|&(i, j)| (labels[i].clone(), labels[j].clone())).collect();
    Ok(Digraph::new(labels, arcs)?)
}

pub fn format_arc_list(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.n(), d.arc_count());
    for l in d.labels() {
        out += &format!("{l}\n");
    }
    for (i, j) in d.arcs() {
        out += &format!("{i} {j}\n");
    }
    out
}

/// Encodes `g` in graph6, with vertices in label order. Only atom labels
/// are accepted; reading back yields labels `0..n`.
pub fn format_graph6(g: &Graph) -> Result<String, IoError> {
    if let Some(l) = g.labels().iter().find(|l| !l.is_atom()) {
        return Err(IoError::StructuredLabel(l.clone()));
    }
    let n = g.n();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        bytes.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        bytes.extend([126, 126]);
        bytes.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            used += 1;
            if used == 6 {
                bytes.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        bytes.push((acc << (6 - used)) + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are printable ASCII"))
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is allowed).
pub fn parse_graph6(s: &str) -> Result<Graph, IoError> {
    let mut lines = Lines::new(s);
    let (ln, line) = lines.next_line("a graph6 string")?;
    lines.finish()?;
    let body = line.trim();
    let offset = line.len() - line.trim_start().len();
    let (skip, body) = match body.strip_prefix(">>graph6<<") {
        Some(rest) => (10, rest),
        None => (0, body),
    };
    let col = |k: usize| offset + skip + k + 1;
    let data: Vec<u8> = body.bytes().collect();
    if let Some(k) = data.iter().position(|&b| !(63..=126).contains(&b)) {
        return parse_err(ln, col(k), "byte outside the graph6 range");
    }
    let six = |k: usize| (data[k] - 63) as usize;
    let (n, start) = match data.first() {
        None => return parse_err(ln, col(0), "empty graph6 string"),
        Some(126) if data.get(1) == Some(&126) => {
            if data.len() < 8 {
                return parse_err(ln, col(0), "truncated size field");
            }
            ((2..8).fold(0, |a, k| (a << 6) | six(k)), 8)
        }
        Some(126) => {
            if data.len() < 4 {
                return parse_err(ln, col(0), "truncated size field");
            }
            ((1..4).fold(0, |a, k| (a << 6) | six(k)), 4)
        }
        Some(_) => (six(0), 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if data.len() - start != need {
        return parse_err(
            ln,
            col(start),
            format!("expected {need} adjacency bytes for {n} vertices, found {}", data.len() - start),
        );
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(start + k / 6);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    /// `.g6` and `.graph6` files are graph6; anything else is an edge list.
    pub fn from_path(path: &Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => GraphFormat::Graph6,
            _ => GraphFormat::EdgeList,
        }
    }
}

pub fn read_graph(path: &Path, format: GraphFormat) -> Result<Graph, IoError> {
    let text = fs::read_to_string(path)?;
    match format {
        GraphFormat::EdgeList => parse_edge_list(&text),
        GraphFormat::Graph6 => parse_graph6(&text),
    }
}

pub fn write_graph(path: &Path, g: &Graph, format: GraphFormat) -> Result<(), IoError> {
    let text = match format {
        GraphFormat::EdgeList => format_edge_list(g),
        GraphFormat::Graph6 => format_graph6(g)? + "\n",
    };
    Ok(fs::write(path, text)?)
}

/// Burling tree: a line `n root`, then `n - 1` lines `child parent`, then
/// `n` lines `v lastborn` (or `v -` for none), then `n` lines
/// `v c1 c2 ...` listing the choose branch (possibly empty).
pub fn parse_burling_tree(s: &str) -> Result<BurlingTree, IoError> {
    let mut lines = Lines::new(s);
    let (ln, header) = lines.next_line("header 'n root'")?;
    let toks = tokens(header);
    let Some(&(col, first)) = toks.first() else {
        return parse_err(ln, 1, "expected header 'n root'");
    };
    let n: usize = first
        .parse()
        .or_else(|_| parse_err(ln, col, format!("'{first}' is not a vertex count")))?;
    let root = label(ln, &header[col - 1 + first.len()..])?;
    let mut exact = |count: usize, what: &str, expect_len: Option<usize>| -> Result<Vec<(usize, Vec<VertexLabel>)>, IoError> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let (ln, l) = lines.next_line(what)?;
            let (body, dash) = match l.trim_end().strip_suffix('-') {
                Some(h) if h.ends_with([' ', '\t']) && expect_len.is_some() => (h, true),
                _ => (l, false),
            };
            let mut labs = labels(ln, body)?;
            if dash {
                labs.push(VertexLabel::Str(String::new()));
            }
            if labs.is_empty() || expect_len.is_some_and(|k| labs.len() != k) {
                return parse_err(ln, 1, format!("expected {what}"));
            }
            out.push((ln, labs));
        }
        Ok(out)
    };
    let parents = exact(n.saturating_sub(1), "'child parent'", Some(2))?;
    let lastborns = exact(n, "'v lastborn' or 'v -'", Some(2))?;
    let chooses = exact(n, "'v' followed by its choose list", None)?;
    lines.finish()?;
    let dash = VertexLabel::Str(String::new());
    let t = BurlingTree::new(
        root,
        parents.into_iter().map(|(_, mut p)| {
            let parent = p.pop().expect("two labels");
            (p.pop().expect("two labels"), parent)
        }),
        lastborns
            .into_iter()
            .filter(|(_, p)| p[1] != dash)
            .map(|(_, mut p)| {
                let l = p.pop().expect("two labels");
                (p.pop().expect("two labels"), l)
            }),
        chooses.into_iter().map(|(_, mut c)| {
            let v = c.remove(0);
            (v, c)
        }),
    )?;
    if t.n() != n {
        return parse_err(1, 1, format!("header says {n} vertices, tree has {}", t.n()));
    }
    Ok(t)
}

pub fn format_burling_tree(t: &BurlingTree) -> String {
    let mut out = format!("{} {}\n", t.n(), t.root());
    for (c, p) in t.parent_pairs() {
        out += &format!("{c} {p}\n");
    }
    for v in t.labels() {
        match t.lastborn(v) {
            Some(l) => out += &format!("{v} {l}\n"),
            None => out += &format!("{v} -\n"),
        }
    }
    for v in t.labels() {
        out += &v.to_string();
        for c in t.choose(v) {
            out += &format!(" {c}");
        }
        out += "\n";
    }
    out
}

fn rational(ln: usize, col: usize, tok: &str) -> Result<Rational64, IoError> {
    let err = || IoError::Parse {
        line: ln,
        column: col,
        message: format!("'{tok}' is not a number"),
    };
    let bad = || Err(err());
    if let Some((a, b)) = tok.split_once('/') {
        let (Ok(a), Ok(b)) = (a.parse::<i64>(), b.parse::<i64>()) else {
            return bad();
        };
        if b == 0 {
            return parse_err(ln, col, "zero denominator");
        }
        return Ok(Rational64::new(a, b));
    }
    if let Some((whole, frac)) = tok.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return bad();
        }
        let neg = whole.starts_with('-');
        let w: i64 = match whole {
            "" | "-" => 0,
            _ => whole.parse().map_err(|_| err())?,
        };
        let f: i64 = frac.parse().map_err(|_| err())?;
        let den = 10i64.pow(frac.len() as u32);
        let f = Rational64::new(if neg { -f } else { f }, den);
        return Ok(Rational64::from_integer(w) + f);
    }
    tok.parse::<i64>().map(Rational64::from_integer).map_err(|_| err())
}

/// Interval family: one closed interval `l r` per line. Endpoints may be
/// integers, fractions `a/b` or finite decimals; all are read exactly.
pub fn parse_intervals(s: &str) -> Result<IntervalFamily, IoError> {
    let mut out = Vec::new();
    for (i, l) in s.lines().enumerate() {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let toks = tokens(l);
        if toks.len() != 2 {
            return parse_err(i + 1, 1, "expected 'left right'");
        }
        let a = rational(i + 1, toks[0].0, toks[0].1)?;
        let b = rational(i + 1, toks[1].0, toks[1].1)?;
        if a >= b {
            return parse_err(i + 1, toks[0].0, "left endpoint must be below the right one");
        }
        out.push((a, b));
    }
    Ok(IntervalFamily::new(out)?)
}

pub fn format_intervals(f: &IntervalFamily) -> String {
    f.intervals().iter().map(|(a, b)| format!("{a} {b}\n")).collect()
}
