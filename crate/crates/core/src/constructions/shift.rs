use crate::graph::{Digraph, Graph};
use crate::label::VertexLabel;

use super::ConstructionError;

fn check(n: usize, k: usize) -> Result<(), ConstructionError> {
    if k < 2 || n < k {
        return Err(ConstructionError::Parameter(format!(
            "shift graphs need k >= 2 and n >= k, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Strictly increasing k-tuples over `1..=n` in lexicographic order.
fn tuples(n: usize, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur: Vec<i64> = (1..=k as i64).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance the rightmost position that still has room
        let mut i = k;
        while i > 0 && cur[i - 1] == (n - k + i) as i64 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn tuple_label(t: &[i64]) -> VertexLabel {
    VertexLabel::tuple(t.iter().copied())
}

/// Directed shift graph: arcs `(t1..tk) -> (t2..tk, c)` for every `c > tk`.
pub fn directed_shift_graph(n: usize, k: usize) -> Result<Digraph, ConstructionError> {
    check(n, k)?;
    let ts = tuples(n, k);
    let labels: Vec<VertexLabel> = ts.iter().map(|t| tuple_label(t)).collect();
    let mut arcs = Vec::new();
    for t in &ts {
        for c in t[k - 1] + 1..=n as i64 {
            let mut head = t[1..].to_vec();
            head.push(c);
            arcs.push((tuple_label(t), tuple_label(&head)));
        }
    }
    Ok(Digraph::new(labels, arcs).expect("arcs join generated tuples"))
}

/// Shift graph `G(n, k)`.
pub fn shift_graph(n: usize, k: usize) -> Result<Graph, ConstructionError> {
    Ok(directed_shift_graph(n, k)?.underlying())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration() {
        assert_eq!(tuples(4, 2).len(), 6);
        assert_eq!(tuples(6, 3).len(), 20);
        assert_eq!(tuples(3, 3), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn g52_counts() {
        let g = shift_graph(5, 2).unwrap();
        assert_eq!((g.n(), g.m()), (10, 10));
        for (a, b) in g.edge_labels() {
            let (a, b) = (a.int_tuple().unwrap(), b.int_tuple().unwrap());
            assert!(a[1] == b[0] || b[1] == a[0]);
        }
    }

    #[test]
    fn arcs_follow_shift() {
        let d = directed_shift_graph(7, 2).unwrap();
        for (a, b) in d.arc_labels() {
            let (a, b) = (a.int_tuple().unwrap(), b.int_tuple().unwrap());
            assert_eq!(a[1], b[0]);
            assert!(!d.has_arc(&tuple_label(&b), &tuple_label(&a)));
        }
        assert_eq!(d.underlying(), shift_graph(7, 2).unwrap());
    }

    #[test]
    fn bad_parameters() {
        assert!(shift_graph(5, 1).is_err());
        assert!(shift_graph(2, 3).is_err());
    }
}
