use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::invariants::InvariantError;
use crate::label::VertexLabel;

/// A map from vertices to colour indices `1..=k`.
///
/// Serialises as `{"labels": [...], "colors": [...], "k": k}` with labels in
/// their text form and `colors[i]` the colour of `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub labels: Vec<VertexLabel>,
    pub colors: Vec<u32>,
    pub k: u32,
}

impl Coloring {
    /// Builds a colouring of `g` from per-index colours (1-based).
    pub fn from_indexed(g: &Graph, colors: Vec<u32>) -> Coloring {
        debug_assert_eq!(colors.len(), g.n());
        let k = colors.iter().copied().max().unwrap_or(0);
        Coloring {
            labels: g.labels().to_vec(),
            colors,
            k,
        }
    }

    pub fn from_map(map: &BTreeMap<VertexLabel, u32>) -> Coloring {
        let labels: Vec<VertexLabel> = map.keys().cloned().collect();
        let colors: Vec<u32> = map.values().copied().collect();
        let k = colors.iter().copied().max().unwrap_or(0);
        Coloring { labels, colors, k }
    }

    pub fn color_of(&self, label: &VertexLabel) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.colors[i])
    }

    pub fn as_map(&self) -> BTreeMap<VertexLabel, u32> {
        self.labels.iter().cloned().zip(self.colors.iter().copied()).collect()
    }

    /// Number of distinct colours actually used.
    pub fn used_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Colours in the order of `g`'s vertex indices.
    pub fn indexed_for(&self, g: &Graph) -> Result<Vec<u32>, InvariantError> {
        let map = self.as_map();
        g.labels()
            .iter()
            .map(|l| {
                map.get(l)
                    .copied()
                    .ok_or_else(|| InvariantError::MissingVertex(l.clone()))
            })
            .collect()
    }

    /// Vertices of each colour class, keyed by colour.
    pub fn classes(&self) -> BTreeMap<u32, Vec<VertexLabel>> {
        let mut out: BTreeMap<u32, Vec<VertexLabel>> = BTreeMap::new();
        for (l, &c) in self.labels.iter().zip(&self.colors) {
            out.entry(c).or_default().push(l.clone());
        }
        out
    }
}

/// True iff no edge of `g` is monochromatic. Every vertex of `g` must be
/// coloured, and all colours must lie in `1..=k`.
pub fn is_proper_coloring(g: &Graph, c: &Coloring) -> Result<bool, InvariantError> {
    let colors = c.indexed_for(g)?;
    if colors.iter().any(|&x| x == 0 || x > c.k) {
        return Ok(false);
    }
    Ok(g.edges().all(|(i, j)| colors[i] != colors[j]))
}

/// Product colouring: vertex `v` gets the tuple `(f1(v), ..., fk(v))`,
/// re-indexed to `1..=prod k_i` in lexicographic order of tuples.
pub fn product_coloring(colorings: &[Coloring]) -> Result<Coloring, InvariantError> {
    let first = colorings.first().ok_or(InvariantError::EmptyInput)?;
    let maps: Vec<BTreeMap<VertexLabel, u32>> = colorings.iter().map(Coloring::as_map).collect();
    for m in &maps[1..] {
        if !m.keys().eq(maps[0].keys()) {
            return Err(InvariantError::MismatchedVertexSets);
        }
    }
    let ks: Vec<u64> = colorings.iter().map(|c| c.k.max(1) as u64).collect();
    let mut out = BTreeMap::new();
    for l in maps[0].keys() {
        // mixed-radix index of the tuple, 1-based
        let mut idx = 0u64;
        for (m, &k) in maps.iter().zip(&ks) {
            idx = idx * k + (m[l] as u64 - 1);
        }
        out.insert(l.clone(), (idx + 1) as u32);
    }
    let mut c = Coloring::from_map(&out);
    c.k = ks.iter().product::<u64>() as u32;
    if first.labels.is_empty() {
        c.k = 0;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_k2() {
        let k2 = Graph::complete(2);
        assert!(is_proper_coloring(&k2, &Coloring::from_indexed(&k2, vec![1, 2])).unwrap());
        assert!(!is_proper_coloring(&k2, &Coloring::from_indexed(&k2, vec![1, 1])).unwrap());
    }

    #[test]
    fn missing_vertex_is_an_error() {
        let k2 = Graph::complete(2);
        let c = Coloring::from_indexed(&Graph::complete(1), vec![1]);
        assert!(matches!(
            is_proper_coloring(&k2, &c),
            Err(InvariantError::MissingVertex(_))
        ));
    }

    #[test]
    fn product_of_single_is_reindexed_copy() {
        let g = Graph::path(3);
        let c = Coloring::from_indexed(&g, vec![1, 2, 1]);
        let p = product_coloring(std::slice::from_ref(&c)).unwrap();
        assert_eq!(p, c);
    }

    #[test]
    fn product_of_two_k2_pieces() {
        // g1 has edge 0-1, g2 has edge 1-2 on the shared vertex set {0,1,2}
        let g1 = Graph::from_edges(3, [(0, 1)]);
        let g2 = Graph::from_edges(3, [(1, 2)]);
        let c1 = Coloring::from_indexed(&g1, vec![1, 2, 1]);
        let c2 = Coloring::from_indexed(&g2, vec![1, 1, 2]);
        let p = product_coloring(&[c1, c2]).unwrap();
        assert_eq!(p.k, 4);
        assert!(is_proper_coloring(&g1.union(&g2), &p).unwrap());
    }

    #[test]
    fn product_rejects_mismatch() {
        let a = Coloring::from_indexed(&Graph::complete(2), vec![1, 2]);
        let b = Coloring::from_indexed(&Graph::complete(3), vec![1, 2, 3]);
        assert_eq!(product_coloring(&[a, b]), Err(InvariantError::MismatchedVertexSets));
    }

    #[test]
    fn json_shape() {
        let c = Coloring::from_indexed(&Graph::complete(2), vec![1, 2]);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v, serde_json::json!({"labels": ["0", "1"], "colors": [1, 2], "k": 2}));
        let back: Coloring = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }
}
