//! Graph generators: shift graphs and their line-digraph intersection
//! construction, complete multipartite graphs, unit interval graphs,
//! trivially perfect graphs from build recipes, and seeded random graphs.

mod interval;
mod shift;
mod trivially_perfect;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Digraph, Graph};
use crate::invariants::{girth, Girth};
use crate::label::VertexLabel;

pub use interval::{random_unit_interval_family, unit_interval_graph, IntervalFamily};
pub use shift::{directed_shift_graph, shift_graph};
pub use trivially_perfect::{build_trivially_perfect, random_tp_recipe, TpRecipe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0}")]
    Parameter(String),
    #[error("label {0} is not an integer triple")]
    NotATriple(VertexLabel),
    #[error("label {0} is not an increasing integer pair")]
    NotAPair(VertexLabel),
    #[error("arc {0} -> {1} does not follow the shift orientation")]
    Orientation(VertexLabel, VertexLabel),
    #[error("interval {0} does not have unit length")]
    NotUnit(usize),
    #[error("interval {0} has an integer endpoint")]
    NotNormalized(usize),
    #[error("interval {0} is empty or reversed")]
    BadInterval(usize),
    #[error("union node without children")]
    EmptyUnion,
    #[error("derived graph differs from line graph intersected with the multipartite graph")]
    IdentityFailed,
    #[error("no subsample reached girth {girth} in {tries} tries")]
    GirthNotReached { girth: usize, tries: usize },
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complete multipartite graph; part `i` gets consecutive integer labels.
pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Graph, ConstructionError> {
    if part_sizes.is_empty() || part_sizes.contains(&0) {
        return Err(ConstructionError::Parameter("part sizes must be positive and nonempty".into()));
    }
    let part: Vec<usize> = part_sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    let labels = (0..part.len()).map(VertexLabel::from).collect();
    Ok(Graph::from_predicate(labels, |a, b| part[a] != part[b]).expect("distinct labels"))
}

fn triple(l: &VertexLabel) -> Result<[i64; 3], ConstructionError> {
    l.int_tuple()
        .and_then(|t| <[i64; 3]>::try_from(t).ok())
        .ok_or_else(|| ConstructionError::NotATriple(l.clone()))
}

/// Graph on the given triples, adjacent iff middle coordinates differ.
pub fn middle_coordinate_multipartite(
    vertices: impl IntoIterator<Item = VertexLabel>,
) -> Result<Graph, ConstructionError> {
    let mut labels: Vec<VertexLabel> = vertices.into_iter().collect();
    labels.sort();
    labels.dedup();
    let middles = labels.iter().map(|l| triple(l).map(|t| t[1])).collect::<Result<Vec<_>, _>>()?;
    Ok(Graph::from_predicate(labels, |a, b| middles[a] != middles[b]).expect("labels deduplicated"))
}

/// The three graphs of the line-digraph construction, on triple labels.
#[derive(Debug, Clone)]
pub struct IntersectionConstruction {
    /// Line graph of the underlying graph of `h`.
    pub line_graph: Graph,
    /// Middle-coordinate complete multipartite graph on the same triples.
    pub multipartite: Graph,
    /// Underlying graph of the line digraph of `h`.
    pub derived: Graph,
}

fn pair(l: &VertexLabel) -> Result<(i64, i64), ConstructionError> {
    match l.int_tuple().as_deref() {
        Some(&[a, b]) if a < b => Ok((a, b)),
        _ => Err(ConstructionError::NotAPair(l.clone())),
    }
}

/// Builds `L(H)`, the middle-coordinate multipartite graph and the graph of
/// `L⃗(h)` for a subdigraph `h` of a directed shift graph `G⃗(n, 2)`, and
/// checks that the third is the intersection of the first two.
pub fn intersection_construction(h: &Digraph) -> Result<IntersectionConstruction, ConstructionError> {
    for l in h.labels() {
        pair(l)?;
    }
    for (a, b) in h.arc_labels() {
        let ((_, y), (y2, _)) = (pair(a)?, pair(b)?);
        if y != y2 {
            return Err(ConstructionError::Orientation(a.clone(), b.clone()));
        }
    }
    // an edge {(x,y),(y,z)} and a line-digraph vertex ((x,y),(y,z)) both become (x,y,z)
    let to_triple = |ab: &VertexLabel, bc: &VertexLabel| -> VertexLabel {
        let ((x, y), (_, z)) = (pair(ab).expect("checked"), pair(bc).expect("checked"));
        VertexLabel::tuple([x, y, z])
    };
    let line_graph = h
        .underlying()
        .line_graph()
        .relabel(|l| {
            let (a, b) = l.edge_endpoints().expect("line graph labels are edges");
            // endpoints are sorted; (x,y) < (y,z) since x < y
            to_triple(a, b)
        })
        .expect("distinct edges give distinct triples");
    let derived = h
        .line_digraph()
        .underlying()
        .relabel(|l| {
            let t = l.as_tuple().expect("line digraph labels are pairs");
            to_triple(&t[0], &t[1])
        })
        .expect("distinct arcs give distinct triples");
    let multipartite = middle_coordinate_multipartite(line_graph.labels().iter().cloned())?;
    if line_graph.intersect(&multipartite) != derived {
        return Err(ConstructionError::IdentityFailed);
    }
    Ok(IntersectionConstruction {
        line_graph,
        multipartite,
        derived,
    })
}

/// Keeps each arc independently with probability `p` until the underlying
/// graph has girth at least `min_girth`.
pub fn subsample_arcs(
    d: &Digraph,
    p: f64,
    min_girth: usize,
    seed: u64,
    tries: usize,
) -> Result<Digraph, ConstructionError> {
    check_probability(p)?;
    let mut rng = rng(seed);
    let arcs: Vec<(VertexLabel, VertexLabel)> =
        d.arc_labels().map(|(a, b)| (a.clone(), b.clone())).collect();
    for _ in 0..tries {
        let kept = arcs.iter().filter(|_| rng.gen_bool(p)).cloned();
        let sub = Digraph::new(d.labels().iter().cloned(), kept).expect("subset of valid arcs");
        let ok = match girth(&sub.underlying()) {
            Girth::Infinite => true,
            Girth::Finite(g) => g >= min_girth,
        };
        if ok {
            return Ok(sub);
        }
    }
    Err(ConstructionError::GirthNotReached {
        girth: min_girth,
        tries,
    })
}

fn check_probability(p: f64) -> Result<(), ConstructionError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ConstructionError::Parameter(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Erdős–Rényi graph on `0..n`, deterministic per seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, ConstructionError> {
    check_probability(p)?;
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// Random bipartite graph with sides labelled `(0, i)` and `(1, j)`.
pub fn random_bipartite(
    a: usize,
    b: usize,
    p: f64,
    seed: u64,
) -> Result<(Graph, Vec<VertexLabel>, Vec<VertexLabel>), ConstructionError> {
    check_probability(p)?;
    let mut rng = rng(seed);
    let left: Vec<VertexLabel> = (0..a as i64).map(|i| VertexLabel::tuple([0, i])).collect();
    let right: Vec<VertexLabel> = (0..b as i64).map(|j| VertexLabel::tuple([1, j])).collect();
    let mut edges = Vec::new();
    for x in &left {
        for y in &right {
            if rng.gen_bool(p) {
                edges.push((x.clone(), y.clone()));
            }
        }
    }
    let g = Graph::new(left.iter().chain(&right).cloned(), edges).expect("edges join listed sides");
    Ok((g, left, right))
}
