use std::fmt;

use crate::bits::Bits;
use crate::graph::Graph;
use crate::label::VertexLabel;

use super::RecognizerError;

/// Largest pattern the induced-subgraph search accepts.
pub const MAX_PATTERN: usize = 10;

/// A small graph used as a forbidden induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    graph: Graph,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Result<Pattern, RecognizerError> {
        if graph.n() > MAX_PATTERN {
            return Err(RecognizerError::PatternTooLarge {
                n: graph.n(),
                max: MAX_PATTERN,
            });
        }
        Ok(Pattern {
            name: name.into(),
            graph,
        })
    }

    fn fixed(name: &str, graph: Graph) -> Pattern {
        Pattern::new(name, graph).expect("built-in patterns are small")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Pattern {
        Pattern::fixed(&format!("P{n}"), Graph::path(n))
    }

    pub fn p2() -> Pattern {
        Pattern::path(2)
    }

    pub fn p3() -> Pattern {
        Pattern::path(3)
    }

    pub fn p4() -> Pattern {
        Pattern::path(4)
    }

    pub fn c4() -> Pattern {
        Pattern::fixed("C4", Graph::cycle(4))
    }

    pub fn triangle() -> Pattern {
        Pattern::fixed("K3", Graph::complete(3))
    }

    /// `K_{1,3}`.
    pub fn claw() -> Pattern {
        Pattern::fixed("claw", Graph::star(3))
    }

    /// Triangle `0 1 2` with pendant vertices `3, 4, 5` attached to `0, 1, 2`.
    pub fn net() -> Pattern {
        Pattern::fixed("net", Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]))
    }

    /// An edge plus an isolated vertex.
    pub fn k1_plus_k2() -> Pattern {
        Pattern::fixed("K1+K2", Graph::from_edges(3, [(1, 2)]))
    }

    /// `r` isolated vertices.
    pub fn rk1(r: usize) -> Pattern {
        Pattern::fixed(&format!("{r}K1"), Graph::edgeless(r))
    }

    /// Claw with one edge subdivided.
    pub fn chair() -> Pattern {
        Pattern::fixed("chair", Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]))
    }

    /// `P3` plus `r` disjoint edges.
    pub fn p3_plus_rk2(r: usize) -> Pattern {
        let mut edges = vec![(0, 1), (1, 2)];
        edges.extend((0..r).map(|i| (3 + 2 * i, 4 + 2 * i)));
        Pattern::fixed(&format!("P3+{r}K2"), Graph::from_edges(3 + 2 * r, edges))
    }
}

/// Searches `g` for an induced copy of `h`; returns its vertex set.
pub fn contains_induced(g: &Graph, h: &Pattern) -> Option<Vec<VertexLabel>> {
    let hg = &h.graph;
    let k = hg.n();
    if k == 0 {
        return Some(vec![]);
    }
    if k > g.n() {
        return None;
    }
    let order = match_order(hg);
    let mut s = Matcher {
        g,
        h: hg,
        order: &order,
        image: vec![usize::MAX; k],
        used: Bits::new(g.n()),
    };
    if !s.extend(0) {
        return None;
    }
    let mut out: Vec<VertexLabel> = s.image.iter().map(|&v| g.label(v).clone()).collect();
    out.sort();
    Some(out)
}

/// Pattern vertices ordered so that each one (after the first in its
/// component) has an earlier neighbour; high degree first.
fn match_order(h: &Graph) -> Vec<usize> {
    let k = h.n();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = order.iter().filter(|&&u| h.adjacent(u, v)).count();
                (back, h.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: &'a [usize],
    image: Vec<usize>,
    used: Bits,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let mut cand = Bits::full(self.g.n());
        cand.and_not_assign(&self.used);
        for &q in &self.order[..depth] {
            let img = self.image[q];
            if self.h.adjacent(p, q) {
                cand.and_assign(self.g.neighbors(img));
            } else {
                cand.and_not_assign(self.g.neighbors(img));
            }
        }
        let need = self.h.degree(p);
        for v in cand.iter() {
            if self.g.degree(v) < need {
                continue;
            }
            self.image[p] = v;
            self.used.set(v);
            if self.extend(depth + 1) {
                return true;
            }
            self.used.clear(v);
        }
        self.image[p] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(contains_induced(&Graph::path(4), &Pattern::p2()).is_some());
        assert!(contains_induced(&Graph::complete(3), &Pattern::p3()).is_none());
        let w = contains_induced(&Graph::cycle(5), &Pattern::p4()).unwrap();
        let sub = Graph::cycle(5).induced_subgraph(&w).unwrap();
        assert_eq!((sub.n(), sub.m(), sub.max_degree()), (4, 3, 2));
    }

    #[test]
    fn witness_is_induced() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5), (5, 6), (3, 4)]);
        // triangle 0 1 2 with pendants 3, 4, 5 would be a net, but 3-4 is an edge
        let w = contains_induced(&g, &Pattern::net());
        assert!(w.is_none());
        let g2 = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5), (5, 6)]);
        let w = contains_induced(&g2, &Pattern::net()).unwrap();
        assert_eq!(w.len(), 6);
    }

    #[test]
    fn pattern_shapes() {
        assert_eq!(Pattern::net().graph().m(), 6);
        assert_eq!(Pattern::chair().graph().m(), 4);
        assert_eq!(Pattern::p3_plus_rk2(2).graph().n(), 7);
        assert_eq!(Pattern::rk1(3).graph().m(), 0);
        assert!(Pattern::new("big", Graph::edgeless(11)).is_err());
    }
}
