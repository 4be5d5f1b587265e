use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::{rng, ConstructionError};

/// Expression for a trivially perfect graph: single vertices closed under
/// disjoint union and adding a universal vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TpRecipe {
    Vertex,
    Union(Vec<TpRecipe>),
    Universal(Box<TpRecipe>),
}

impl TpRecipe {
    pub fn universal(child: TpRecipe) -> TpRecipe {
        TpRecipe::Universal(Box::new(child))
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            TpRecipe::Vertex => 1,
            TpRecipe::Union(cs) => cs.iter().map(TpRecipe::vertex_count).sum(),
            TpRecipe::Universal(c) => c.vertex_count() + 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TpRecipe::Vertex => 0,
            TpRecipe::Union(cs) => 1 + cs.iter().map(TpRecipe::depth).max().unwrap_or(0),
            TpRecipe::Universal(c) => 1 + c.depth(),
        }
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        match self {
            TpRecipe::Vertex => Ok(()),
            TpRecipe::Union(cs) if cs.is_empty() => Err(ConstructionError::EmptyUnion),
            TpRecipe::Union(cs) => cs.iter().try_for_each(TpRecipe::validate),
            TpRecipe::Universal(c) => c.validate(),
        }
    }
}

/// Builds the recipe graph on integer labels. Vertices are numbered in
/// post-order: union children left to right, and a universal vertex after
/// the graph it is added to.
pub fn build_trivially_perfect(recipe: &TpRecipe) -> Result<Graph, ConstructionError> {
    recipe.validate()?;
    let mut edges = Vec::new();
    let n = build(recipe, 0, &mut edges);
    Ok(Graph::from_edges(n, edges))
}

/// Returns the next free index.
fn build(r: &TpRecipe, start: usize, edges: &mut Vec<(usize, usize)>) -> usize {
    match r {
        TpRecipe::Vertex => start + 1,
        TpRecipe::Union(cs) => cs.iter().fold(start, |next, c| build(c, next, edges)),
        TpRecipe::Universal(c) => {
            let u = build(c, start, edges);
            edges.extend((start..u).map(|v| (v, u)));
            u + 1
        }
    }
}

/// Random recipe of depth at most `depth` with at most `max_vertices`
/// vertices, deterministic per seed.
pub fn random_tp_recipe(depth: usize, max_vertices: usize, seed: u64) -> TpRecipe {
    let mut rng = rng(seed);
    gen(&mut rng, depth, max_vertices.max(1))
}

fn gen(rng: &mut impl Rng, depth: usize, budget: usize) -> TpRecipe {
    if depth == 0 || budget == 1 || rng.gen_bool(0.15) {
        return TpRecipe::Vertex;
    }
    if budget == 2 || rng.gen_bool(0.45) {
        return TpRecipe::universal(gen(rng, depth - 1, budget - 1));
    }
    let parts = rng.gen_range(2..=3.min(budget));
    let mut left = budget;
    let mut children = Vec::with_capacity(parts);
    for i in 0..parts {
        let share = left / (parts - i);
        let child = gen(rng, depth - 1, share.max(1));
        left -= child.vertex_count().min(left);
        children.push(child);
    }
    TpRecipe::Union(children)
}
