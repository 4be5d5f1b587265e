//! Membership tests for the hereditary classes used throughout: H-free
//! graphs, cluster, complete multipartite, trivially perfect, chordal,
//! strongly chordal, forests and stars.

mod chordal;
mod pattern;

use thiserror::Error;

use crate::bits::Bits;
use crate::graph::{Graph, GraphError};
use crate::invariants::{components, independence_number, InvariantError};

pub use chordal::{are_compatible, is_chordal, is_simple_vertex, is_strongly_chordal};
pub use pattern::{contains_induced, Pattern, MAX_PATTERN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizerError {
    #[error("pattern has {n} vertices, at most {max} supported")]
    PatternTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    /// Two independent procedures gave different answers; this is a bug.
    #[error("recognizers disagree on {class}: {detail}")]
    Inconsistent { class: &'static str, detail: String },
}

/// No pattern of `hs` occurs as an induced subgraph.
pub fn is_h_free(g: &Graph, hs: &[Pattern]) -> bool {
    hs.iter().all(|h| contains_induced(g, h).is_none())
}

/// Disjoint union of complete graphs: adjacent vertices have equal closed
/// neighbourhoods.
pub fn is_cluster(g: &Graph) -> bool {
    g.edges().all(|(u, v)| g.closed_neighbors(u) == g.closed_neighbors(v))
}

/// Non-adjacency is an equivalence relation: distinct non-adjacent vertices
/// have equal open neighbourhoods.
pub fn is_complete_multipartite(g: &Graph) -> bool {
    (0..g.n()).all(|u| (u + 1..g.n()).all(|v| g.adjacent(u, v) || g.neighbors(u) == g.neighbors(v)))
}

/// `{P4, C4}`-freeness, by induced-subgraph search.
pub fn is_trivially_perfect_by_patterns(g: &Graph) -> bool {
    is_h_free(g, &[Pattern::p4(), Pattern::c4()])
}

/// Every connected induced subgraph has a universal vertex, checked by
/// repeatedly splitting into components and deleting a universal vertex.
pub fn is_trivially_perfect_by_universal_vertices(g: &Graph) -> bool {
    fn check(g: &Graph, set: Bits) -> bool {
        for comp in component_sets(g, &set) {
            let size = comp.count();
            let universal = comp.iter().find(|&v| g.neighbors(v).and_count(&comp) == size - 1);
            match universal {
                None => return false,
                Some(u) => {
                    let mut rest = comp;
                    rest.clear(u);
                    if !rest.is_empty() && !check(g, rest) {
                        return false;
                    }
                }
            }
        }
        true
    }
    check(g, Bits::full(g.n()))
}

fn component_sets(g: &Graph, set: &Bits) -> Vec<Bits> {
    let mut left = set.clone();
    let mut out = Vec::new();
    while let Some(s) = left.first() {
        let mut comp = Bits::new(g.n());
        comp.set(s);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = Bits::new(g.n());
            for v in frontier.iter() {
                next.or_assign(g.neighbors(v));
            }
            next.and_assign(set);
            next.and_not_assign(&comp);
            comp.or_assign(&next);
            frontier = next;
        }
        left.and_not_assign(&comp);
        out.push(comp);
    }
    out
}

/// Trivially perfect graphs, by two independent procedures that must agree.
pub fn is_trivially_perfect(g: &Graph) -> Result<bool, RecognizerError> {
    let by_patterns = is_trivially_perfect_by_patterns(g);
    let by_universal = is_trivially_perfect_by_universal_vertices(g);
    if by_patterns != by_universal {
        return Err(RecognizerError::Inconsistent {
            class: "trivially perfect",
            detail: format!("pattern test says {by_patterns}, universal-vertex test says {by_universal}"),
        });
    }
    Ok(by_patterns)
}

pub fn is_claw_free(g: &Graph) -> bool {
    is_h_free(g, &[Pattern::claw()])
}

pub fn is_triangle_free(g: &Graph) -> bool {
    g.edges().all(|(u, v)| !g.neighbors(u).intersects(g.neighbors(v)))
}

/// `α(g) <= r - 1`.
pub fn is_rk1_free(g: &Graph, r: usize) -> Result<bool, RecognizerError> {
    if r == 0 {
        return Ok(false);
    }
    Ok(independence_number(g)?.0 < r)
}

pub fn is_forest(g: &Graph) -> bool {
    g.m() + components(g).len() == g.n()
}

pub fn is_linear_forest(g: &Graph) -> bool {
    is_forest(g) && g.max_degree() <= 2
}

/// `K_{1,t}` for some `t >= 0` (so `K1` counts as a star).
pub fn is_star(g: &Graph) -> bool {
    let n = g.n();
    n >= 1 && g.m() == n - 1 && (0..n).any(|v| g.degree(v) == n - 1)
}
