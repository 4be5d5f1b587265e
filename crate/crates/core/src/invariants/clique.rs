//! Maximum clique by bitset branch and bound with a greedy-colouring bound.

use crate::bits::Bits;
use crate::graph::Graph;
use crate::invariants::{Budget, InvariantError, Meter};
use crate::label::VertexLabel;

/// Exact `ω(g)` and a maximum clique, under the default budget.
pub fn clique_number(g: &Graph) -> Result<(usize, Vec<VertexLabel>), InvariantError> {
    clique_number_with(g, &Budget::default())
}

pub fn clique_number_with(g: &Graph, budget: &Budget) -> Result<(usize, Vec<VertexLabel>), InvariantError> {
    if g.n() > budget.max_vertices {
        return Err(InvariantError::TooLarge {
            n: g.n(),
            max: budget.max_vertices,
        });
    }
    let mut meter = Meter::new(budget);
    let adj: Vec<Bits> = (0..g.n()).map(|i| g.neighbors(i).clone()).collect();
    let best = max_clique(&adj, &mut meter);
    if meter.exhausted {
        return Err(InvariantError::BudgetExceeded {
            lower: best.len(),
            upper: g.n(),
            best: None,
        });
    }
    Ok((best.len(), best.iter().map(|&i| g.label(i).clone()).collect()))
}

/// Exact `α(g)` and a maximum independent set, computed as a clique of the
/// complement.
pub fn independence_number(g: &Graph) -> Result<(usize, Vec<VertexLabel>), InvariantError> {
    independence_number_with(g, &Budget::default())
}

pub fn independence_number_with(
    g: &Graph,
    budget: &Budget,
) -> Result<(usize, Vec<VertexLabel>), InvariantError> {
    clique_number_with(&g.complement(), budget)
}

/// Clique size usable as a colouring lower bound: exact when a short search
/// finishes, otherwise the best clique found.
pub(crate) fn clique_lower_bound(g: &Graph) -> usize {
    let adj: Vec<Bits> = (0..g.n()).map(|i| g.neighbors(i).clone()).collect();
    let mut meter = Meter::new(&Budget::unlimited().with_max_nodes(200_000));
    max_clique(&adj, &mut meter).len()
}

struct CliqueSearch<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    current: Vec<usize>,
    meter: &'a mut Meter,
}

pub(crate) fn max_clique(adj: &[Bits], meter: &mut Meter) -> Vec<usize> {
    let n = adj.len();
    if n == 0 {
        return vec![];
    }
    let mut s = CliqueSearch {
        adj,
        best: vec![],
        current: vec![],
        meter,
    };
    // seed with a greedy clique so pruning starts tight
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count()), v));
    for &start in &order[..n.min(8)] {
        let mut clique = vec![start];
        let mut cand = adj[start].clone();
        while let Some(v) = cand.iter().max_by_key(|&v| (adj[v].and_count(&cand), std::cmp::Reverse(v))) {
            clique.push(v);
            cand.and_assign(&adj[v]);
        }
        if clique.len() > s.best.len() {
            s.best = clique;
        }
    }
    s.expand(Bits::full(n));
    s.best.sort_unstable();
    s.best
}

impl CliqueSearch<'_> {
    /// Greedy colour classes of `p`; returns vertices with their colour
    /// numbers in non-decreasing colour order.
    fn color_sort(&self, p: &Bits) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.clear(v);
                q.and_not_assign(&self.adj[v]);
                uncolored.clear(v);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bits) {
        if !self.meter.tick() {
            return;
        }
        let order = self.color_sort(&p);
        for &(v, color) in order.iter().rev() {
            if self.current.len() + color <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = p.and(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.clear(v);
            if self.meter.exhausted {
                return;
            }
        }
    }
}
