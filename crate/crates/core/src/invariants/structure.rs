use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::graph::Graph;
use crate::invariants::clique::max_clique;
use crate::invariants::{Budget, Coloring, InvariantError, Meter};
use crate::label::VertexLabel;

/// Connected components as sorted index lists, ordered by smallest index.
pub(crate) fn components_idx(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v).iter() {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Partition of `V(g)` into connected components.
pub fn components(g: &Graph) -> Vec<Vec<VertexLabel>> {
    components_idx(g)
        .into_iter()
        .map(|c| c.into_iter().map(|i| g.label(i).clone()).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    /// The graph is a forest.
    Infinite,
}

/// Length of a shortest cycle, by a BFS from every vertex.
pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] + 1 >= best {
                break;
            }
            for u in g.neighbors(v).iter() {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                } else if parent[v] != u {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

fn check_r(r: usize) -> Result<(), InvariantError> {
    if r < 2 {
        return Err(InvariantError::BadParameter { min: 2, got: r });
    }
    Ok(())
}

/// Whether the subgraph on `set` has an independent set of size `r`.
fn has_independent_set(g: &Graph, set: &Bits, r: usize) -> bool {
    let idx: Vec<usize> = set.iter().collect();
    if idx.len() < r {
        return false;
    }
    let m = idx.len();
    let comp_adj: Vec<Bits> = (0..m)
        .map(|a| {
            let mut row = Bits::new(m);
            for b in 0..m {
                if a != b && !g.adjacent(idx[a], idx[b]) {
                    row.set(b);
                }
            }
            row
        })
        .collect();
    let mut meter = Meter::new(&Budget::unlimited());
    max_clique(&comp_adj, &mut meter).len() >= r
}

/// Every component of `g` has independence number at most `r - 1`.
pub fn is_componentwise_r_dependent(g: &Graph, r: usize) -> Result<bool, InvariantError> {
    check_r(r)?;
    Ok(components_idx(g).into_iter().all(|comp| {
        let set = Bits::from_indices(g.n(), comp);
        !has_independent_set(g, &set, r)
    }))
}

const CWR_MAX_VERTICES: usize = 16;

/// Minimum number of colours such that every colour class induces a
/// componentwise r-dependent graph, with a witnessing colouring.
///
/// Componentwise r-dependent graphs (including large ones) answer 1
/// directly; otherwise an exhaustive search runs, limited to 16 vertices.
pub fn componentwise_r_dependent_chromatic_number(
    g: &Graph,
    r: usize,
) -> Result<(usize, Coloring), InvariantError> {
    check_r(r)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, Coloring::from_indexed(g, vec![])));
    }
    if is_componentwise_r_dependent(g, r)? {
        return Ok((1, Coloring::from_indexed(g, vec![1; n])));
    }
    if n > CWR_MAX_VERTICES {
        return Err(InvariantError::TooLarge {
            n,
            max: CWR_MAX_VERTICES,
        });
    }
    for k in 2..=n {
        let mut s = CwrSearch {
            g,
            r,
            k,
            color: vec![usize::MAX; n],
            classes: vec![Bits::new(n); k],
        };
        if s.search(0, 0) {
            let colors = s.color.iter().map(|&c| c as u32 + 1).collect();
            return Ok((k, Coloring::from_indexed(g, colors)));
        }
    }
    unreachable!("n colours always suffice")
}

struct CwrSearch<'a> {
    g: &'a Graph,
    r: usize,
    k: usize,
    color: Vec<usize>,
    classes: Vec<Bits>,
}

impl CwrSearch<'_> {
    /// The component of `v` inside class `c` still has α < r.
    fn class_ok(&self, v: usize, c: usize) -> bool {
        let class = &self.classes[c];
        let mut comp = Bits::new(self.g.n());
        comp.set(v);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for u in self.g.neighbors(x).and(class).iter() {
                if !comp.get(u) {
                    comp.set(u);
                    queue.push_back(u);
                }
            }
        }
        !has_independent_set(self.g, &comp, self.r)
    }

    fn search(&mut self, v: usize, used: usize) -> bool {
        if v == self.g.n() {
            return true;
        }
        for c in 0..(used + 1).min(self.k) {
            self.classes[c].set(v);
            self.color[v] = c;
            if self.class_ok(v, c) && self.search(v + 1, used.max(c + 1)) {
                return true;
            }
            self.classes[c].clear(v);
        }
        self.color[v] = usize::MAX;
        false
    }
}

/// Whether `g` is the union of `parts` (each on `V(g)`) and every part has
/// componentwise r-dependent chromatic number at most `k`.
pub fn is_t_k_r_decomposition(
    g: &Graph,
    parts: &[Graph],
    k: usize,
    r: usize,
) -> Result<bool, InvariantError> {
    check_r(r)?;
    if parts.iter().any(|p| p.labels() != g.labels()) {
        return Err(InvariantError::MismatchedVertexSets);
    }
    let union = parts
        .iter()
        .fold(Graph::from_indexed(g.labels().to_vec(), []).expect("labels distinct"), |acc, p| acc.union(p));
    if union != *g {
        return Ok(false);
    }
    for p in parts {
        let ok = if is_componentwise_r_dependent(p, r)? {
            k >= 1 || p.is_empty()
        } else if k <= 1 {
            false
        } else {
            componentwise_r_dependent_chromatic_number(p, r)?.0 <= k
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
