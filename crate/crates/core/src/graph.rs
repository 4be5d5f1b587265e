//! Immutable labelled graphs and digraphs, plus the operators used to combine
//! them.
//!
//! A [`Graph`] stores its vertex labels in sorted order together with a dense
//! bitset adjacency matrix indexed by label rank. Two graphs are equal exactly
//! when they have the same labels and the same edges, so operators such as
//! [`Graph::intersect`] compose by label identity.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::bits::Bits;
use crate::label::VertexLabel;

pub type Edge = (VertexLabel, VertexLabel);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(VertexLabel),
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexLabel),
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexLabel),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    adj: Vec<Bits>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(i, j)| format!("{}-{}", self.labels[i], self.labels[j]))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.labels.iter().map(ToString::to_string).collect::<Vec<_>>())
            .field("edges", &edges)
            .finish()
    }
}

fn sorted_unique(vertices: impl IntoIterator<Item = VertexLabel>) -> Vec<VertexLabel> {
    let set: BTreeSet<VertexLabel> = vertices.into_iter().collect();
    set.into_iter().collect()
}

impl Graph {
    /// Builds a graph from labels and label pairs. Repeated vertices and
    /// repeated edges collapse.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator<Item = VertexLabel>,
        E: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let labels = sorted_unique(vertices);
        let n = labels.len();
        let mut adj = vec![Bits::new(n); n];
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let i = index_in(&labels, &a).ok_or(GraphError::MissingVertex(a))?;
            let j = index_in(&labels, &b).ok_or(GraphError::MissingVertex(b))?;
            adj[i].set(j);
            adj[j].set(i);
        }
        Ok(Graph { labels, adj })
    }

    /// Builds a graph whose vertex `i` carries `labels[i]`. Labels must be
    /// distinct; they need not be sorted.
    pub fn from_indexed(
        labels: Vec<VertexLabel>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let n = labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        for w in order.windows(2) {
            if labels[w[0]] == labels[w[1]] {
                return Err(GraphError::DuplicateVertex(labels[w[0]].clone()));
            }
        }
        let mut rank = vec![0; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let mut adj = vec![Bits::new(n); n];
        for (i, j) in edges {
            if i == j {
                return Err(GraphError::Loop(labels[i].clone()));
            }
            let (a, b) = (rank[i], rank[j]);
            adj[a].set(b);
            adj[b].set(a);
        }
        let sorted = order.into_iter().map(|i| labels[i].clone()).collect();
        Ok(Graph {
            labels: sorted,
            adj,
        })
    }

    fn from_parts(labels: Vec<VertexLabel>, adj: Vec<Bits>) -> Graph {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        Graph { labels, adj }
    }

    /// Graph on integer labels `0..n` with the given index edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let labels = (0..n).map(VertexLabel::from).collect();
        Graph::from_indexed(labels, edges).expect("integer labels are distinct")
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::from_edges(n, [])
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `K_{1,t}` with centre `0`.
    pub fn star(t: usize) -> Graph {
        Graph::from_edges(t + 1, (1..=t).map(|i| (0, i)))
    }

    /// Graph on the same labels with edges given by a predicate on indices.
    pub fn from_predicate(
        labels: Vec<VertexLabel>,
        adjacent: impl Fn(usize, usize) -> bool,
    ) -> Result<Graph, GraphError> {
        let n = labels.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_indexed(labels, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Bits::count).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> &VertexLabel {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        index_in(&self.labels, label)
    }

    pub fn contains(&self, label: &VertexLabel) -> bool {
        self.index_of(label).is_some()
    }

    pub fn require(&self, label: &VertexLabel) -> Result<usize, GraphError> {
        self.index_of(label)
            .ok_or_else(|| GraphError::MissingVertex(label.clone()))
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].get(j)
    }

    pub fn has_edge(&self, a: &VertexLabel, b: &VertexLabel) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacent(i, j),
            _ => false,
        }
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &Bits {
        &self.adj[i]
    }

    /// Closed neighbourhood of `i` as a bitset.
    pub fn closed_neighbors(&self, i: usize) -> Bits {
        let mut b = self.adj[i].clone();
        b.set(i);
        b
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Index pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |i| self.adj[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> + '_ {
        self.edges().map(|(i, j)| (&self.labels[i], &self.labels[j]))
    }

    pub fn edge_set(&self) -> BTreeSet<(VertexLabel, VertexLabel)> {
        self.edge_labels().map(|(a, b)| (a.clone(), b.clone())).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexLabel> {
        self.labels.iter().cloned().collect()
    }

    /// Graph on `V(self) ∩ V(other)` whose edges lie in both graphs.
    pub fn intersect(&self, other: &Graph) -> Graph {
        let common: Vec<(usize, usize)> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| other.index_of(l).map(|j| (i, j)))
            .collect();
        let n = common.len();
        let labels = common.iter().map(|&(i, _)| self.labels[i].clone()).collect();
        let mut adj = vec![Bits::new(n); n];
        for a in 0..n {
            for b in a + 1..n {
                let (i1, j1) = common[a];
                let (i2, j2) = common[b];
                if self.adjacent(i1, i2) && other.adjacent(j1, j2) {
                    adj[a].set(b);
                    adj[b].set(a);
                }
            }
        }
        Graph::from_parts(labels, adj)
    }

    /// Graph on `V(self) ∪ V(other)` with the union of both edge sets.
    pub fn union(&self, other: &Graph) -> Graph {
        let labels = sorted_unique(self.labels.iter().chain(other.labels.iter()).cloned());
        let n = labels.len();
        let mut adj = vec![Bits::new(n); n];
        for g in [self, other] {
            let map: Vec<usize> = g
                .labels
                .iter()
                .map(|l| index_in(&labels, l).expect("label present in union"))
                .collect();
            for (i, j) in g.edges() {
                adj[map[i]].set(map[j]);
                adj[map[j]].set(map[i]);
            }
        }
        Graph::from_parts(labels, adj)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|i| {
                let mut row = Bits::full(n);
                row.and_not_assign(&self.adj[i]);
                row.clear(i);
                row
            })
            .collect();
        Graph::from_parts(self.labels.clone(), adj)
    }

    /// Disjoint union; the vertex `v` of part `k` becomes the tuple `(k, v)`.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        for (k, g) in parts.iter().enumerate() {
            let offset = labels.len();
            labels.extend(
                g.labels
                    .iter()
                    .map(|l| VertexLabel::Tuple(vec![VertexLabel::from(k), l.clone()])),
            );
            edges.extend(g.edges().map(|(i, j)| (i + offset, j + offset)));
        }
        Graph::from_indexed(labels, edges).expect("tagged labels are distinct")
    }

    pub fn induced_subgraph<'a>(
        &self,
        x: impl IntoIterator<Item = &'a VertexLabel>,
    ) -> Result<Graph, GraphError> {
        let mut idx = Vec::new();
        for l in x {
            idx.push(self.require(l)?);
        }
        Ok(self.induced_by_indices(&idx))
    }

    /// Subgraph induced by a set of vertex indices (duplicates ignored).
    pub fn induced_by_indices(&self, idx: &[usize]) -> Graph {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let n = idx.len();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let mut adj = vec![Bits::new(n); n];
        for a in 0..n {
            for b in a + 1..n {
                if self.adjacent(idx[a], idx[b]) {
                    adj[a].set(b);
                    adj[b].set(a);
                }
            }
        }
        Graph::from_parts(labels, adj)
    }

    pub fn induced_by_bits(&self, set: &Bits) -> Graph {
        self.induced_by_indices(&set.iter().collect::<Vec<_>>())
    }

    pub fn remove_vertices<'a>(
        &self,
        x: impl IntoIterator<Item = &'a VertexLabel>,
    ) -> Result<Graph, GraphError> {
        let mut keep = Bits::full(self.n());
        for l in x {
            keep.clear(self.require(l)?);
        }
        Ok(self.induced_by_bits(&keep))
    }

    /// Line graph: one vertex per edge, labelled by the edge pair; two are
    /// adjacent when the edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let labels = edges
            .iter()
            .map(|&(i, j)| VertexLabel::edge(self.labels[i].clone(), self.labels[j].clone()))
            .collect();
        Graph::from_predicate(labels, |a, b| {
            let (e, f) = (edges[a], edges[b]);
            e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1
        })
        .expect("edge labels are distinct")
    }

    pub fn add_universal_vertex(&self, label: VertexLabel) -> Result<Graph, GraphError> {
        if self.contains(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        let mut labels = self.labels.clone();
        labels.push(label);
        let n = self.n();
        let edges = self.edges().chain((0..n).map(|i| (i, n)));
        Graph::from_indexed(labels, edges)
    }

    /// Applies an injective relabelling.
    pub fn relabel(&self, f: impl Fn(&VertexLabel) -> VertexLabel) -> Result<Graph, GraphError> {
        let labels = self.labels.iter().map(f).collect();
        Graph::from_indexed(labels, self.edges())
    }

    /// Edges of `self` absent from `other` plus edges of `other` absent from
    /// `self`, compared by label. Both lists are empty iff the edge sets agree.
    pub fn edge_difference(&self, other: &Graph) -> (Vec<Edge>, Vec<Edge>) {
        let a = self.edge_set();
        let b = other.edge_set();
        (a.difference(&b).cloned().collect(), b.difference(&a).cloned().collect())
    }
}

fn index_in(labels: &[VertexLabel], label: &VertexLabel) -> Option<usize> {
    labels.binary_search(label).ok()
}

/// Finite loopless digraph with at most one arc per ordered pair.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Digraph {
    labels: Vec<VertexLabel>,
    out: Vec<Bits>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .arcs()
            .map(|(i, j)| format!("{}->{}", self.labels[i], self.labels[j]))
            .collect();
        f.debug_struct("Digraph")
            .field("vertices", &self.labels.iter().map(ToString::to_string).collect::<Vec<_>>())
            .field("arcs", &arcs)
            .finish()
    }
}

impl Digraph {
    pub fn new<V, A>(vertices: V, arcs: A) -> Result<Digraph, GraphError>
    where
        V: IntoIterator<Item = VertexLabel>,
        A: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let labels = sorted_unique(vertices);
        let n = labels.len();
        let mut out = vec![Bits::new(n); n];
        for (a, b) in arcs {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let i = index_in(&labels, &a).ok_or(GraphError::MissingVertex(a))?;
            let j = index_in(&labels, &b).ok_or(GraphError::MissingVertex(b))?;
            out[i].set(j);
        }
        Ok(Digraph { labels, out })
    }

    /// Digraph whose vertex set is exactly the set of arc endpoints.
    pub fn from_arcs(arcs: impl IntoIterator<Item = (VertexLabel, VertexLabel)>) -> Result<Digraph, GraphError> {
        let arcs: Vec<_> = arcs.into_iter().collect();
        let vertices: Vec<VertexLabel> = arcs
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        Digraph::new(vertices, arcs)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Bits::count).sum()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &VertexLabel {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        index_in(&self.labels, label)
    }

    pub fn has_arc(&self, a: &VertexLabel, b: &VertexLabel) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.out[i].get(j),
            _ => false,
        }
    }

    pub fn out_neighbors(&self, i: usize) -> &Bits {
        &self.out[i]
    }

    pub fn in_degree(&self, j: usize) -> usize {
        self.out.iter().filter(|row| row.get(j)).count()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |i| self.out[i].iter().map(move |j| (i, j)))
    }

    pub fn arc_labels(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> + '_ {
        self.arcs().map(|(i, j)| (&self.labels[i], &self.labels[j]))
    }

    /// Line digraph: vertices are the arcs `(u, v)`, labelled by the tuple
    /// `(u, v)`; there is an arc `(u, v) -> (v, w)` for consecutive arcs.
    pub fn line_digraph(&self) -> Digraph {
        let arcs: Vec<(usize, usize)> = self.arcs().collect();
        let labels: Vec<VertexLabel> = arcs
            .iter()
            .map(|&(u, v)| VertexLabel::Tuple(vec![self.labels[u].clone(), self.labels[v].clone()]))
            .collect();
        let mut new_arcs = Vec::new();
        for (a, &(_, v)) in arcs.iter().enumerate() {
            for (b, &(v2, _)) in arcs.iter().enumerate() {
                if v == v2 && a != b {
                    new_arcs.push((labels[a].clone(), labels[b].clone()));
                }
            }
        }
        Digraph::new(labels, new_arcs).expect("arc labels are distinct")
    }

    /// Forgets orientation; antiparallel pairs merge into one edge.
    pub fn underlying(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Bits::new(n); n];
        for (i, j) in self.arcs() {
            adj[i].set(j);
            adj[j].set(i);
        }
        Graph::from_parts(self.labels.clone(), adj)
    }

    pub fn induced_by_indices(&self, idx: &[usize]) -> Digraph {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let n = idx.len();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let mut out = vec![Bits::new(n); n];
        for a in 0..n {
            for b in 0..n {
                if a != b && self.out[idx[a]].get(idx[b]) {
                    out[a].set(b);
                }
            }
        }
        Digraph { labels, out }
    }

    pub fn relabel(&self, f: impl Fn(&VertexLabel) -> VertexLabel) -> Result<Digraph, GraphError> {
        let labels: Vec<VertexLabel> = self.labels.iter().map(&f).collect();
        let distinct: BTreeSet<&VertexLabel> = labels.iter().collect();
        if distinct.len() != labels.len() {
            let dup = labels
                .iter()
                .find(|l| labels.iter().filter(|m| m == l).count() > 1)
                .expect("duplicate exists");
            return Err(GraphError::DuplicateVertex(dup.clone()));
        }
        let arcs = self.arcs().map(|(i, j)| (labels[i].clone(), labels[j].clone())).collect::<Vec<_>>();
        Digraph::new(labels, arcs)
    }
}
