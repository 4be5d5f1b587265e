//! Exact chromatic number.
//!
//! Each connected component is solved separately. For a component the search
//! starts from a clique lower bound and a DSATUR upper bound, then asks the
//! decision question "is it k-colourable?" for increasing k. The decision
//! search is DSATUR-ordered backtracking with forward checking and colour
//! symmetry breaking (a vertex may only open the next unused colour). Ties are
//! broken by vertex index, i.e. by label order, so results are reproducible.

use std::collections::{HashMap, HashSet};

use crate::bits::Bits;
use crate::graph::Graph;
use crate::invariants::{clique, Budget, Coloring, InvariantError, Meter};

const NO_COLOR: u8 = u8::MAX;

/// Exact `χ(g)` with a witnessing proper colouring, under the default budget.
pub fn chromatic_number(g: &Graph) -> Result<(usize, Coloring), InvariantError> {
    chromatic_number_with(g, &Budget::default())
}

pub fn chromatic_number_with(g: &Graph, budget: &Budget) -> Result<(usize, Coloring), InvariantError> {
    if g.n() > budget.max_vertices {
        return Err(InvariantError::TooLarge {
            n: g.n(),
            max: budget.max_vertices,
        });
    }
    let mut meter = Meter::new(budget);
    let mut colors = vec![0u32; g.n()];
    let mut chi = 0;
    let mut lower = 0;
    let mut failed = false;
    for comp in super::components_idx(g) {
        let sub = g.induced_by_indices(&comp);
        let outcome = solve_connected(&sub, &mut meter);
        let (lo, hi, col) = match outcome {
            Solved { chi, colors } => (chi, chi, colors),
            OutOfBudget { lower, upper, colors } => {
                failed = true;
                (lower, upper, colors)
            }
        };
        lower = lower.max(lo);
        chi = chi.max(hi);
        // `comp` is sorted, matching the induced subgraph's index order
        for (local, &v) in comp.iter().enumerate() {
            colors[v] = col[local] as u32 + 1;
        }
    }
    let coloring = Coloring::from_indexed(g, colors);
    if failed {
        return Err(InvariantError::BudgetExceeded {
            lower,
            upper: chi,
            best: Some(coloring),
        });
    }
    Ok((chi, coloring))
}

/// Decides k-colourability. `Ok(None)` means "not k-colourable".
pub fn is_k_colorable(g: &Graph, k: usize, budget: &Budget) -> Result<Option<Coloring>, InvariantError> {
    if g.n() > budget.max_vertices {
        return Err(InvariantError::TooLarge {
            n: g.n(),
            max: budget.max_vertices,
        });
    }
    let mut meter = Meter::new(budget);
    let mut colors = vec![0u32; g.n()];
    for comp in super::components_idx(g) {
        let sub = g.induced_by_indices(&comp);
        match decide(sub_adj(&sub), k, &mut meter) {
            Some(col) => {
                for (local, &v) in comp.iter().enumerate() {
                    colors[v] = col[local] as u32 + 1;
                }
            }
            None if meter.exhausted => {
                return Err(InvariantError::BudgetExceeded {
                    lower: 0,
                    upper: g.n(),
                    best: None,
                })
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Coloring::from_indexed(g, colors)))
}

fn sub_adj(g: &Graph) -> Vec<Bits> {
    (0..g.n()).map(|i| g.neighbors(i).clone()).collect()
}

enum Outcome {
    Solved { chi: usize, colors: Vec<u8> },
    OutOfBudget { lower: usize, upper: usize, colors: Vec<u8> },
}
use Outcome::*;

fn solve_connected(g: &Graph, meter: &mut Meter) -> Outcome {
    let n = g.n();
    if n == 0 {
        return Solved { chi: 0, colors: vec![] };
    }
    let adj = sub_adj(g);
    let (mut upper, mut best) = dsatur_greedy(&adj);
    let lower = clique::clique_lower_bound(g);
    let mut k = lower;
    while k < upper {
        match decide(adj.clone(), k, meter) {
            Some(col) => {
                upper = k;
                best = col;
            }
            None if meter.exhausted => {
                return OutOfBudget {
                    lower: k,
                    upper,
                    colors: best,
                }
            }
            None => k += 1,
        }
    }
    Solved {
        chi: upper,
        colors: best,
    }
}

/// Greedy DSATUR colouring; returns the number of colours and 0-based colours.
pub(crate) fn dsatur_greedy(adj: &[Bits]) -> (usize, Vec<u8>) {
    let n = adj.len();
    let mut color = vec![NO_COLOR; n];
    // seen[v] holds the colours present around v
    let mut seen = vec![Bits::new(n + 1); n];
    let mut saturation = vec![0usize; n];
    let degrees: Vec<usize> = adj.iter().map(Bits::count).collect();
    let mut used = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == NO_COLOR)
            .max_by(|&a, &b| {
                saturation[a]
                    .cmp(&saturation[b])
                    .then(degrees[a].cmp(&degrees[b]))
                    .then(b.cmp(&a))
            })
            .expect("uncoloured vertex remains");
        let c = (0..=n).find(|&c| !seen[v].get(c)).expect("some colour is free");
        assert!(c < NO_COLOR as usize, "more than 254 colours");
        color[v] = c as u8;
        used = used.max(c + 1);
        for u in adj[v].iter() {
            if !seen[u].get(c) {
                seen[u].set(c);
                saturation[u] += 1;
            }
        }
    }
    (used, color)
}

/// A vertex taken out of the residual problem by a reduction. It can be
/// coloured once everything still alive is coloured.
struct Removal {
    v: usize,
    /// Copy this vertex's colour; `None` means "any free colour".
    like: Option<usize>,
}

/// Branching rule for the decision search.
#[derive(Clone, Copy)]
enum Order {
    /// Fewest available colours, then most alive neighbours (DSATUR).
    Saturation,
    /// Largest vertex index first.
    Descending,
    /// Smallest vertex index first.
    Ascending,
}

struct Search<'a> {
    adj: &'a [Bits],
    k: usize,
    order: Order,
    color: Vec<u8>,
    /// `count[v * k + c]`: coloured neighbours of `v` with colour `c`.
    count: Vec<u16>,
    /// Colours not used by any coloured neighbour, one bit per colour.
    avail: Vec<u64>,
    /// Uncoloured vertices not removed by a reduction.
    alive: Bits,
    /// Alive-neighbour degree.
    udeg: Vec<u32>,
    trail: Vec<Removal>,
    /// Residual problems known to have no colouring.
    failed: HashSet<Box<[u64]>>,
    /// Nodes left in the current run.
    run_left: u64,
    /// The current run hit its node cap.
    cut: bool,
    meter: &'a mut Meter,
}

const MEMO_CAP: usize = 1 << 21;
const FIRST_RUN_NODES: u64 = 1 << 12;

/// k-colourability of a graph given by adjacency rows. Colours are 0-based.
///
/// Besides forward checking, every search node applies two exact
/// reductions to the residual problem and caches residual problems that
/// turned out infeasible:
///
/// * a vertex with more available colours than alive neighbours can always
///   be coloured last;
/// * a vertex `u` with a non-adjacent `v` such that `N(u) ⊆ N(v)` among alive
///   vertices and `avail(v) ⊆ avail(u)` can copy `v`'s colour.
///
/// No single branching order is good everywhere, so runs with the orders of
/// [`Order`] take turns under node caps that double every round. The cache
/// of infeasible residual problems does not depend on the order and is
/// shared by all runs.
pub(crate) fn decide(adj: Vec<Bits>, k: usize, meter: &mut Meter) -> Option<Vec<u8>> {
    let n = adj.len();
    if n == 0 {
        return Some(vec![]);
    }
    if k == 0 {
        return None;
    }
    if k >= n {
        return Some((0..n as u8).collect());
    }
    assert!(k <= 64, "decision search supports at most 64 colours");
    let full = if k == 64 { !0 } else { (1u64 << k) - 1 };
    let mut s = Search {
        adj: &adj,
        k,
        order: Order::Saturation,
        color: vec![NO_COLOR; n],
        count: vec![0; n * k],
        avail: vec![full; n],
        alive: Bits::full(n),
        udeg: adj.iter().map(|r| r.count() as u32).collect(),
        trail: Vec::new(),
        failed: HashSet::new(),
        run_left: 0,
        cut: false,
        meter,
    };
    let mut cap = FIRST_RUN_NODES;
    'rounds: loop {
        for order in [Order::Saturation, Order::Descending, Order::Ascending] {
            s.order = order;
            s.run_left = cap;
            s.cut = false;
            if s.search(0) {
                break 'rounds;
            }
            if s.meter.exhausted {
                return None;
            }
            if !s.cut {
                // a complete run proves infeasibility
                return None;
            }
        }
        cap = cap.saturating_mul(2);
    }
    while let Some(Removal { v, like }) = s.trail.pop() {
        let c = match like {
            Some(w) => s.color[w],
            None => {
                let mut free = s.avail[v];
                for u in adj[v].iter() {
                    if s.color[u] != NO_COLOR {
                        free &= !(1 << s.color[u]);
                    }
                }
                debug_assert!(free != 0);
                free.trailing_zeros() as u8
            }
        };
        s.color[v] = c;
    }
    Some(s.color)
}

impl Search<'_> {
    fn select(&self) -> usize {
        match self.order {
            Order::Descending => self.alive.iter().last().expect("alive vertex"),
            Order::Ascending => self.alive.first().expect("alive vertex"),
            Order::Saturation => {
                let mut best = usize::MAX;
                let mut key = (u32::MAX, 0u32);
                for v in self.alive.iter() {
                    let k = (self.avail[v].count_ones(), self.udeg[v]);
                    if k.0 < key.0 || (k.0 == key.0 && k.1 > key.1) {
                        key = k;
                        best = v;
                    }
                }
                best
            }
        }
    }

    /// Colours `v` with `c`; returns false if an alive neighbour lost its
    /// last colour.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c as u8;
        self.alive.clear(v);
        let mut ok = true;
        for u in self.adj[v].iter() {
            self.udeg[u] -= 1;
            let slot = &mut self.count[u * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.avail[u] &= !(1 << c);
                if self.avail[u] == 0 && self.alive.get(u) {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = NO_COLOR;
        self.alive.set(v);
        for u in self.adj[v].iter() {
            self.udeg[u] += 1;
            let slot = &mut self.count[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.avail[u] |= 1 << c;
            }
        }
    }

    fn remove(&mut self, v: usize, like: Option<usize>) {
        self.alive.clear(v);
        for u in self.adj[v].iter() {
            self.udeg[u] -= 1;
        }
        self.trail.push(Removal { v, like });
    }

    fn undo_removals(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let Removal { v, .. } = self.trail.pop().expect("trail above mark");
            self.alive.set(v);
            for u in self.adj[v].iter() {
                self.udeg[u] += 1;
            }
        }
    }

    /// Applies both reductions until neither fires.
    fn reduce(&mut self) {
        loop {
            let before = self.trail.len();
            let alive: Vec<usize> = self.alive.iter().collect();
            for &u in &alive {
                if self.avail[u].count_ones() > self.udeg[u] {
                    self.remove(u, None);
                }
            }
            for &u in &alive {
                if !self.alive.get(u) {
                    continue;
                }
                let nu = self.adj[u].and(&self.alive);
                // any dominating v is adjacent to every alive neighbour of u
                let Some(x) = nu.first() else { continue };
                let mut cands = self.adj[x].and(&self.alive);
                cands.and_not_assign(&self.adj[u]);
                cands.clear(u);
                let dom = cands.iter().find(|&v| {
                    self.avail[v] & !self.avail[u] == 0
                        && self.udeg[v] >= self.udeg[u]
                        && nu.is_subset(&self.adj[v])
                });
                if let Some(v) = dom {
                    self.remove(u, Some(v));
                }
            }
            if self.trail.len() == before {
                return;
            }
        }
    }

    /// Residual problem: alive vertices and their available colours.
    ///
    /// Alive vertices with the same alive neighbourhood are false twins and
    /// interchangeable. A twin class whose neighbourhood avoids every other
    /// class is recorded as (neighbourhood, sorted domains), so states that
    /// differ only by a permutation inside such classes share a key. All other
    /// vertices are recorded with their identity.
    fn state_key(&self) -> Box<[u64]> {
        let width = match self.k {
            0..=8 => 8,
            9..=16 => 16,
            17..=32 => 32,
            _ => 64,
        };
        let per = 64 / width;
        let pack = |key: &mut Vec<u64>, doms: &mut dyn Iterator<Item = u64>| {
            let mut word = 0u64;
            let mut i = 0;
            for d in doms {
                word |= d << ((i % per) * width);
                i += 1;
                if i % per == 0 {
                    key.push(word);
                    word = 0;
                }
            }
            if i % per != 0 {
                key.push(word);
            }
        };

        let mut classes: HashMap<Bits, Vec<usize>> = HashMap::new();
        for v in self.alive.iter() {
            classes.entry(self.adj[v].and(&self.alive)).or_default().push(v);
        }
        let mut grouped = Bits::new(self.alive.len());
        for members in classes.values().filter(|m| m.len() > 1) {
            for &v in members {
                grouped.set(v);
            }
        }
        let mut pinned = self.alive.clone();
        let mut free: Vec<(&Bits, Vec<u64>)> = Vec::new();
        for (nbhd, members) in &classes {
            if members.len() > 1 && !nbhd.intersects(&grouped) {
                for &v in members {
                    pinned.clear(v);
                }
                let mut doms: Vec<u64> = members.iter().map(|&v| self.avail[v]).collect();
                doms.sort_unstable();
                free.push((nbhd, doms));
            }
        }
        free.sort_unstable_by(|a, b| a.0.words().cmp(b.0.words()));

        let mut key = Vec::new();
        key.extend_from_slice(pinned.words());
        pack(&mut key, &mut pinned.iter().map(|v| self.avail[v]));
        for (nbhd, doms) in free {
            key.extend_from_slice(nbhd.words());
            key.push(doms.len() as u64);
            pack(&mut key, &mut doms.into_iter());
        }
        key.into_boxed_slice()
    }

    fn tick(&mut self) -> bool {
        if self.run_left == 0 {
            self.cut = true;
            return false;
        }
        self.run_left -= 1;
        self.meter.tick()
    }

    fn search(&mut self, used: usize) -> bool {
        if !self.tick() {
            return false;
        }
        let mark = self.trail.len();
        self.reduce();
        if self.alive.is_empty() {
            return true;
        }
        let key = self.state_key();
        if self.failed.contains(&key) {
            self.undo_removals(mark);
            return false;
        }
        let v = self.select();
        let limit = (used + 1).min(self.k);
        let mut options = self.avail[v];
        if limit < 64 {
            options &= (1u64 << limit) - 1;
        }
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            let ok = self.assign(v, c);
            if ok && self.search(used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
            if self.meter.exhausted || self.cut {
                self.undo_removals(mark);
                return false;
            }
        }
        if self.failed.len() < MEMO_CAP {
            self.failed.insert(key);
        }
        self.undo_removals(mark);
        false
    }
}
