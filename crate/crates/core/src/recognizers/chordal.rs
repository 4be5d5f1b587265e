use crate::bits::Bits;
use crate::graph::Graph;
use crate::label::VertexLabel;

use super::RecognizerError;

/// A perfect elimination ordering found by maximum cardinality search, or
/// `None` if `g` has a hole.
pub fn is_chordal(g: &Graph) -> Option<Vec<VertexLabel>> {
    let order = mcs_elimination_order(g);
    is_perfect_elimination(g, &order).then(|| order.iter().map(|&v| g.label(v).clone()).collect())
}

/// Reverse of a maximum cardinality search visit order.
fn mcs_elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        done[v] = true;
        visit.push(v);
        for u in g.neighbors(v).iter() {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

/// For each vertex, its neighbours later in `order` form a clique.
fn is_perfect_elimination(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = g.neighbors(v).iter().filter(|&u| pos[u] > pos[v]).collect();
        let Some(&first) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        if later.iter().any(|&u| u != first && !g.adjacent(u, first)) {
            return false;
        }
    }
    true
}

/// `N[u] ⊆ N[v]` or `N[v] ⊆ N[u]`.
pub fn are_compatible(g: &Graph, u: &VertexLabel, v: &VertexLabel) -> Result<bool, RecognizerError> {
    let (a, b) = (g.require(u)?, g.require(v)?);
    let (na, nb) = (g.closed_neighbors(a), g.closed_neighbors(b));
    Ok(na.is_subset(&nb) || nb.is_subset(&na))
}

/// The closed neighbourhood of `v` is a chain under inclusion of closed
/// neighbourhoods.
pub fn is_simple_vertex(g: &Graph, v: &VertexLabel) -> Result<bool, RecognizerError> {
    let i = g.require(v)?;
    Ok(simple_in(g, i, &Bits::full(g.n())))
}

/// Simplicity of `v` in the subgraph induced by `alive`.
fn simple_in(g: &Graph, v: usize, alive: &Bits) -> bool {
    let mut nbhds: Vec<Bits> = g
        .closed_neighbors(v)
        .and(alive)
        .iter()
        .map(|u| g.closed_neighbors(u).and(alive))
        .collect();
    nbhds.sort_by_key(Bits::count);
    nbhds.windows(2).all(|w| w[0].is_subset(&w[1]))
}

/// A simple elimination ordering, or `None` if some induced subgraph has
/// no simple vertex. Greedy elimination is complete because induced
/// subgraphs of strongly chordal graphs are strongly chordal and every
/// strongly chordal graph has a simple vertex.
pub fn is_strongly_chordal(g: &Graph) -> Option<Vec<VertexLabel>> {
    let mut alive = Bits::full(g.n());
    let mut order = Vec::with_capacity(g.n());
    while let Some(v) = alive.iter().find(|&v| simple_in(g, v, &alive)) {
        alive.clear(v);
        order.push(g.label(v).clone());
    }
    alive.is_empty().then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognizers::Pattern;

    #[test]
    fn chordal_examples() {
        assert!(is_chordal(&Graph::path(6)).is_some());
        assert!(is_chordal(&Graph::star(4)).is_some());
        assert!(is_chordal(&Graph::cycle(4)).is_none());
        assert!(is_chordal(&Graph::cycle(7)).is_none());
        assert!(is_chordal(&Graph::complete(5)).is_some());
        assert!(is_chordal(&Graph::default()).is_some());
    }

    #[test]
    fn compatibility() {
        let k3 = Graph::complete(3);
        assert!(are_compatible(&k3, &0.into(), &1.into()).unwrap());
        let p4 = Graph::path(4);
        assert!(!are_compatible(&p4, &0.into(), &3.into()).unwrap());
        assert!(are_compatible(&p4, &0.into(), &9.into()).is_err());
    }

    #[test]
    fn simple_vertices() {
        assert!(is_simple_vertex(&Graph::complete(4), &2.into()).unwrap());
        assert!(!is_simple_vertex(&Graph::path(3), &1.into()).unwrap());
        assert!(is_simple_vertex(&Graph::path(3), &0.into()).unwrap());
    }

    #[test]
    fn strongly_chordal_examples() {
        assert!(is_strongly_chordal(Pattern::net().graph()).is_some());
        assert!(is_strongly_chordal(&Graph::cycle(4)).is_none());
        // the 3-sun is chordal but not strongly chordal
        let sun = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)]);
        assert!(is_chordal(&sun).is_some());
        assert!(is_strongly_chordal(&sun).is_none());
    }
}
