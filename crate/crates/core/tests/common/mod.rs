//! Brute-force oracles shared by the integration tests. Everything here
//! works on at most 8-10 vertices and avoids the library's solvers.
#![allow(dead_code)]

use std::collections::HashSet;

use chibound::graph::Graph;

/// Adjacency masks, one `u32` per vertex.
pub fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|u| (0..g.n()).filter(|&v| g.adjacent(u, v)).fold(0, |m, v| m | 1 << v))
        .collect()
}

/// All graphs on `n <= 8` vertices, one per isomorphism class.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!(n <= 8);
    let mut level: Vec<Vec<u32>> = vec![vec![]];
    for k in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for s in 0u32..1 << (k - 1) {
                let mut a = adj.clone();
                for (v, m) in a.iter_mut().enumerate() {
                    if s >> v & 1 == 1 {
                        *m |= 1 << (k - 1);
                    }
                }
                a.push(s);
                if seen.insert(canonical_code(&a)) {
                    next.push(a);
                }
            }
        }
        level = next;
    }
    level.iter().map(|a| from_masks(a)).collect()
}

pub fn from_masks(adj: &[u32]) -> Graph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)));
    Graph::from_edges(n, edges.collect::<Vec<_>>())
}

/// Largest upper-triangle code over all relabellings that respect a
/// degree-based vertex partition. The partition is isomorphism invariant,
/// so equal codes mean isomorphic graphs.
pub fn canonical_code(adj: &[u32]) -> u64 {
    let n = adj.len();
    let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let key = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| deg[u]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if key(c[0]) == key(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = 0;
    let mut perm = Vec::with_capacity(n);
    search(adj, &classes, 0, &mut vec![false; n], &mut perm, &mut best);
    best
}

fn search(adj: &[u32], classes: &[Vec<usize>], ci: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>, best: &mut u64) {
    if ci == classes.len() {
        let n = perm.len();
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                code = code << 1 | (adj[perm[i]] >> perm[j] & 1) as u64;
            }
        }
        *best = (*best).max(code);
        return;
    }
    let class = &classes[ci];
    let placed = class.iter().filter(|&&v| used[v]).count();
    if placed == class.len() {
        return search(adj, classes, ci + 1, used, perm, best);
    }
    for &v in class {
        if !used[v] {
            used[v] = true;
            perm.push(v);
            search(adj, classes, ci, used, perm, best);
            perm.pop();
            used[v] = false;
        }
    }
}

pub fn brute_clique_number(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || (adj[v] | 1 << v) & s == s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn independent(adj: &[u32], s: u32) -> bool {
    (0..adj.len()).all(|v| s >> v & 1 == 0 || adj[v] & s == 0)
}

/// Fewest independent sets covering the vertices, by a DP over subsets.
pub fn brute_chromatic_number(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    let full = (1u32 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        // independent subsets of s containing its lowest vertex
        let rest = s & !low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            if independent(&adj, part) && best[(s & !part) as usize] != usize::MAX {
                best[s as usize] = best[s as usize].min(best[(s & !part) as usize] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full as usize]
}

/// Some three vertices induce a path.
pub fn has_induced_p3(g: &Graph) -> bool {
    triples(g.n()).any(|(a, b, c)| {
        let e = [g.adjacent(a, b), g.adjacent(b, c), g.adjacent(a, c)];
        e.iter().filter(|&&x| x).count() == 2
    })
}

/// Some three vertices induce one edge plus an isolated vertex.
pub fn has_induced_k1_plus_k2(g: &Graph) -> bool {
    triples(g.n()).any(|(a, b, c)| {
        let e = [g.adjacent(a, b), g.adjacent(b, c), g.adjacent(a, c)];
        e.iter().filter(|&&x| x).count() == 1
    })
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c))))
}

/// Some vertex set of size at least 4 induces a cycle.
pub fn has_hole(g: &Graph) -> bool {
    let adj = masks(g);
    let n = g.n();
    (0u32..1 << n).filter(|s| s.count_ones() >= 4).any(|s| {
        let two_regular = (0..n).all(|v| s >> v & 1 == 0 || (adj[v] & s).count_ones() == 2);
        two_regular && connected(&adj, s)
    })
}

fn connected(adj: &[u32], s: u32) -> bool {
    let mut seen = s & s.wrapping_neg();
    loop {
        let grow = (0..adj.len()).filter(|&v| seen >> v & 1 == 1).fold(seen, |m, v| m | adj[v] & s);
        if grow == seen {
            return seen == s;
        }
        seen = grow;
    }
}

/// Chordal, and every even cycle of length at least 6 has a chord joining
/// two vertices an odd distance apart along the cycle.
pub fn is_strongly_chordal_by_definition(g: &Graph) -> bool {
    if has_hole(g) {
        return false;
    }
    let adj = masks(g);
    let n = g.n();
    for s in 0..n {
        let mut path = vec![s];
        if !even_cycles_ok(&adj, n, &mut path, 1 << s) {
            return false;
        }
    }
    true
}

/// Extends `path` (starting at its minimum vertex) and checks every closed
/// even cycle of length at least 6 for an odd chord.
fn even_cycles_ok(adj: &[u32], n: usize, path: &mut Vec<usize>, used: u32) -> bool {
    let s = path[0];
    let last = *path.last().expect("non-empty");
    let len = path.len();
    if len >= 6 && len.is_multiple_of(2) && adj[last] >> s & 1 == 1 && path[1] < last {
        let odd_chord = (0..len).any(|i| {
            (i + 3..len).step_by(2).any(|j| !(i == 0 && j == len - 1) && adj[path[i]] >> path[j] & 1 == 1)
        });
        if !odd_chord {
            return false;
        }
    }
    for v in s + 1..n {
        if used >> v & 1 == 0 && adj[last] >> v & 1 == 1 {
            path.push(v);
            let ok = even_cycles_ok(adj, n, path, used | 1 << v);
            path.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}
