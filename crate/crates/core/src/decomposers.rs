//! Explicit decompositions into componentwise r-dependent pieces: unit
//! interval graphs split by the parity of the integer each interval
//! contains, and line graphs of bipartite graphs split by which side two
//! edges share.

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{unit_interval_graph, ConstructionError, IntervalFamily};
use crate::graph::Graph;
use crate::invariants::{
    componentwise_r_dependent_chromatic_number, is_componentwise_r_dependent, Coloring, InvariantError,
};
use crate::label::VertexLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Interval(#[from] ConstructionError),
    #[error("invalid bipartition: {0}")]
    Bipartition(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("decomposition declares t = {t} but has {parts} parts")]
    PartCount { t: usize, parts: usize },
}

/// `base` written as the union of `parts`, each meant to have
/// componentwise r-dependent chromatic number at most `k`. A part may carry
/// a witness colouring, which lets verification skip the exact search.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub base: Graph,
    pub parts: Vec<Graph>,
    pub t: usize,
    pub k: usize,
    pub r: usize,
    pub witnesses: Vec<Option<Coloring>>,
}

/// The integer inside `[l, l + 1]` when `l` is not an integer.
fn integer_inside(left: num_rational::Rational64) -> i64 {
    left.ceil().to_integer()
}

/// Colour 1 for intervals containing an even integer, colour 2 for odd.
/// Within a colour, two intervals meet exactly when they contain the same
/// integer, so each class is a cluster graph.
pub fn decompose_unit_interval(f: &IntervalFamily) -> Result<Coloring, DecomposeError> {
    let g = unit_interval_graph(f)?;
    let colors = f
        .intervals()
        .iter()
        .map(|&(l, _)| if integer_inside(l).rem_euclid(2) == 0 { 1 } else { 2 })
        .collect();
    Ok(Coloring::from_indexed(&g, colors))
}

/// The unit interval graph as a single part of componentwise 2-dependent
/// chromatic number at most 2, witnessed by the parity colouring.
pub fn unit_interval_decomposition(f: &IntervalFamily) -> Result<Decomposition, DecomposeError> {
    let g = unit_interval_graph(f)?;
    let coloring = decompose_unit_interval(f)?;
    Ok(Decomposition {
        base: g.clone(),
        parts: vec![g],
        t: 1,
        k: 2,
        r: 2,
        witnesses: vec![Some(coloring)],
    })
}

/// The line graph of a bipartite graph and its two parts: `E_i` joins two
/// edges whose common endpoint lies in side `i`.
#[derive(Debug, Clone)]
pub struct LineDecomposition {
    pub line_graph: Graph,
    pub parts: [Graph; 2],
}

impl LineDecomposition {
    pub fn into_decomposition(self) -> Decomposition {
        Decomposition {
            base: self.line_graph,
            parts: self.parts.to_vec(),
            t: 2,
            k: 1,
            r: 2,
            witnesses: vec![None, None],
        }
    }
}

pub fn decompose_line_of_bipartite(
    g: &Graph,
    side_a: &[VertexLabel],
    side_b: &[VertexLabel],
) -> Result<LineDecomposition, DecomposeError> {
    let mut side = vec![None; g.n()];
    for (s, list) in [(0usize, side_a), (1, side_b)] {
        for v in list {
            let i = g
                .index_of(v)
                .ok_or_else(|| DecomposeError::Bipartition(format!("{v} is not a vertex")))?;
            if side[i].is_some_and(|t| t != s) {
                return Err(DecomposeError::Bipartition(format!("{v} is on both sides")));
            }
            side[i] = Some(s);
        }
    }
    if let Some(i) = side.iter().position(Option::is_none) {
        return Err(DecomposeError::Bipartition(format!("{} is on neither side", g.label(i))));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return Err(DecomposeError::Bipartition(format!(
            "edge {}-{} stays inside one side",
            g.label(u),
            g.label(v)
        )));
    }
    let line = g.line_graph();
    let ends: Vec<(usize, usize)> = line
        .labels()
        .iter()
        .map(|l| {
            let (a, b) = l.edge_endpoints().expect("line graph vertices are edges");
            (g.index_of(a).expect("endpoint"), g.index_of(b).expect("endpoint"))
        })
        .collect();
    let part = |s: usize| {
        Graph::from_predicate(line.labels().to_vec(), |x, y| {
            let ((a, b), (c, d)) = (ends[x], ends[y]);
            [a, b].into_iter().any(|p| (p == c || p == d) && side[p] == Some(s))
        })
        .expect("line graph labels are distinct")
    };
    Ok(LineDecomposition {
        parts: [part(0), part(1)],
        line_graph: line,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PartReport {
    /// Number of colours used by the witness, or the exact value.
    pub colors: usize,
    pub witnessed: bool,
    pub within_k: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub union_matches: bool,
    pub missing_edges: Vec<(VertexLabel, VertexLabel)>,
    pub extra_edges: Vec<(VertexLabel, VertexLabel)>,
    pub parts: Vec<PartReport>,
    pub holds: bool,
}

/// Checks that the parts union to `g` and that each part has componentwise
/// r-dependent chromatic number at most `k`. Witness colourings are
/// checked class by class; parts without one are solved exactly.
pub fn verify_decomposable(g: &Graph, d: &Decomposition) -> Result<DecompositionReport, DecomposeError> {
    if d.parts.len() != d.t {
        return Err(DecomposeError::PartCount {
            t: d.t,
            parts: d.parts.len(),
        });
    }
    if d.parts.iter().any(|p| p.labels() != g.labels()) || d.base.labels() != g.labels() {
        return Err(InvariantError::MismatchedVertexSets.into());
    }
    let union = d
        .parts
        .iter()
        .fold(Graph::from_indexed(g.labels().to_vec(), []).expect("labels distinct"), |acc, p| acc.union(p));
    let (extra_edges, missing_edges) = union.edge_difference(g);
    let mut parts = Vec::with_capacity(d.parts.len());
    for (i, p) in d.parts.iter().enumerate() {
        let report = match d.witnesses.get(i).and_then(Option::as_ref) {
            Some(c) => {
                c.indexed_for(p)?;
                let classes = c.classes();
                let mut ok = true;
                for class in classes.values() {
                    let sub = p.induced_subgraph(class).map_err(|_| InvariantError::MismatchedVertexSets)?;
                    ok &= is_componentwise_r_dependent(&sub, d.r)?;
                }
                PartReport {
                    colors: classes.len(),
                    witnessed: ok,
                    within_k: ok && classes.len() <= d.k,
                }
            }
            None => {
                let colors = if p.is_empty() {
                    0
                } else if is_componentwise_r_dependent(p, d.r)? {
                    1
                } else {
                    componentwise_r_dependent_chromatic_number(p, d.r)?.0
                };
                PartReport {
                    colors,
                    witnessed: false,
                    within_k: colors <= d.k,
                }
            }
        };
        parts.push(report);
    }
    let union_matches = missing_edges.is_empty() && extra_edges.is_empty();
    Ok(DecompositionReport {
        holds: union_matches && parts.iter().all(|p| p.within_k),
        union_matches,
        missing_edges,
        extra_edges,
        parts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{random_bipartite, random_unit_interval_family};
    use crate::recognizers::is_cluster;
    use num_rational::Rational64;

    fn q(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    /// Some integer of the given parity lies in both intervals.
    fn share_parity_integer(f: &IntervalFamily, a: usize, b: usize, parity: i64) -> bool {
        let (la, ra) = f.intervals()[a];
        let (lb, rb) = f.intervals()[b];
        let (lo, hi) = (la.max(lb).ceil().to_integer(), ra.min(rb).floor().to_integer());
        (lo..=hi).any(|m| m.rem_euclid(2) == parity)
    }

    #[test]
    fn parity_examples() {
        let f = IntervalFamily::unit([q(1, 2), q(6, 5), q(-1, 2)]);
        let c = decompose_unit_interval(&f).unwrap();
        assert_eq!(c.color_of(&VertexLabel::Int(0)), Some(2));
        assert_eq!(c.color_of(&VertexLabel::Int(1)), Some(1));
        assert_eq!(c.color_of(&VertexLabel::Int(2)), Some(1));
        let raw = IntervalFamily::unit([q(1, 1)]);
        assert!(matches!(decompose_unit_interval(&raw), Err(DecomposeError::Interval(_))));
    }

    #[test]
    fn random_unit_families() {
        for seed in 0..100 {
            let f = random_unit_interval_family(1 + seed as usize % 20, 6, seed);
            let g = unit_interval_graph(&f).unwrap();
            let c = decompose_unit_interval(&f).unwrap();
            for class in c.classes().values() {
                assert!(is_cluster(&g.induced_subgraph(class).unwrap()));
            }
            for a in 0..f.len() {
                for b in a + 1..f.len() {
                    let (ca, cb) = (c.color_of(g.label(a)).unwrap(), c.color_of(g.label(b)).unwrap());
                    if ca == cb {
                        let parity = if ca == 1 { 0 } else { 1 };
                        assert_eq!(g.adjacent(a, b), share_parity_integer(&f, a, b, parity));
                    }
                }
            }
            let d = unit_interval_decomposition(&f).unwrap();
            assert!(verify_decomposable(&g, &d).unwrap().holds);
        }
    }

    #[test]
    fn line_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let l = |v: i64| VertexLabel::Int(v);
        let d = decompose_line_of_bipartite(&p3, &[l(1)], &[l(0), l(2)]).unwrap();
        assert_eq!((d.parts[0].m(), d.parts[1].m()), (1, 0));

        let c4 = Graph::cycle(4);
        let d = decompose_line_of_bipartite(&c4, &[l(0), l(2)], &[l(1), l(3)]).unwrap();
        assert_eq!(d.line_graph.m(), 4);
        for part in &d.parts {
            assert_eq!((part.m(), part.max_degree()), (2, 1));
        }
        assert!(decompose_line_of_bipartite(&c4, &[l(0), l(1)], &[l(2), l(3)]).is_err());
        assert!(decompose_line_of_bipartite(&c4, &[l(0)], &[l(1), l(3)]).is_err());
    }

    #[test]
    fn random_bipartite_lines() {
        for seed in 0..100 {
            let (g, a, b) = random_bipartite(1 + seed as usize % 8, 1 + seed as usize % 7, 0.4, seed).unwrap();
            let d = decompose_line_of_bipartite(&g, &a, &b).unwrap();
            let [e1, e2] = &d.parts;
            assert!(is_cluster(e1) && is_cluster(e2));
            assert_eq!(e1.intersect(e2).m(), 0);
            assert_eq!(e1.union(e2), d.line_graph);
            let line = d.line_graph.clone();
            assert!(verify_decomposable(&line, &d.into_decomposition()).unwrap().holds);
        }
    }

    #[test]
    fn verify_examples() {
        let k3 = Graph::complete(3);
        let d = Decomposition {
            base: k3.clone(),
            parts: vec![k3.clone()],
            t: 1,
            k: 1,
            r: 2,
            witnesses: vec![None],
        };
        assert!(verify_decomposable(&k3, &d).unwrap().holds);
        let p3 = Graph::path(3);
        let half = Graph::from_edges(3, [(0, 1)]);
        let d = Decomposition {
            base: p3.clone(),
            parts: vec![half],
            t: 1,
            k: 1,
            r: 2,
            witnesses: vec![None],
        };
        let report = verify_decomposable(&p3, &d).unwrap();
        assert!(!report.holds && report.missing_edges.len() == 1);
    }
}
