//! Tree surgeries that add helper vertices around Burling trees, and their
//! use to realize trivially perfect graphs inside `C(T)` and `I(T)`.
//!
//! New vertices take integer labels above the largest integer label
//! already present. Surgeries report the helper vertices to delete rather
//! than deleting them, so several surgeries can be composed first.

use std::collections::BTreeMap;

use crate::constructions::TpRecipe;
use crate::graph::Graph;
use crate::label::VertexLabel;

use super::{clique_closure, sibling_closure, BurlingError, BurlingTree};

type Entries = (
    Vec<(VertexLabel, VertexLabel)>,
    Vec<(VertexLabel, VertexLabel)>,
    Vec<(VertexLabel, Vec<VertexLabel>)>,
);

fn entries(t: &BurlingTree) -> Entries {
    let parents = t.parent_pairs().into_iter().map(|(c, p)| (c.clone(), p.clone())).collect();
    let mut lastborns = Vec::new();
    let mut chooses = Vec::new();
    for v in t.labels() {
        if let Some(l) = t.lastborn(v) {
            lastborns.push((v.clone(), l.clone()));
        }
        let c = t.choose(v);
        if !c.is_empty() {
            chooses.push((v.clone(), c.into_iter().cloned().collect()));
        }
    }
    (parents, lastborns, chooses)
}

fn next_int(trees: &[&BurlingTree]) -> i64 {
    trees
        .iter()
        .flat_map(|t| t.labels().iter().filter_map(VertexLabel::as_int))
        .max()
        .map_or(0, |m| m + 1)
}

/// Joins two trees under a new root `r` via new vertices `r1'` above the
/// root of `t1` and `r2'` above the root of `t2`, with `r2'` the last-born
/// of `r` and `choose(r1') = [r2']`. Returns the tree and `[r, r1', r2']`;
/// deleting those leaves the disjoint union of the closures of `t1` and
/// `t2`, for both closures.
pub fn combine_trees(t1: &BurlingTree, t2: &BurlingTree) -> Result<(BurlingTree, Vec<VertexLabel>), BurlingError> {
    t1.ensure_valid()?;
    t2.ensure_valid()?;
    if let Some(v) = t1.labels().iter().find(|v| t2.contains(v)) {
        return Err(BurlingError::LabelCollision(v.clone()));
    }
    let base = next_int(&[t1, t2]);
    let (r, r1p, r2p) = (VertexLabel::Int(base), VertexLabel::Int(base + 1), VertexLabel::Int(base + 2));
    let (r1, r2) = (t1.root().clone(), t2.root().clone());
    let (mut parents, mut lastborns, mut chooses) = entries(t1);
    let (p2, l2, c2) = entries(t2);
    parents.extend(p2);
    lastborns.extend(l2);
    chooses.extend(c2);
    parents.extend([
        (r1p.clone(), r.clone()),
        (r2p.clone(), r.clone()),
        (r1.clone(), r1p.clone()),
        (r2.clone(), r2p.clone()),
    ]);
    lastborns.extend([(r.clone(), r2p.clone()), (r1p.clone(), r1), (r2p.clone(), r2)]);
    chooses.push((r1p.clone(), vec![r2p.clone()]));
    let t = BurlingTree::new(r.clone(), parents, lastborns, chooses)?;
    Ok((t, vec![r, r1p, r2p]))
}

/// Puts a new root above the root of `t1`, as its only child. The new root
/// is universal in the clique closure.
pub fn attach_root_clique(t1: &BurlingTree) -> Result<BurlingTree, BurlingError> {
    t1.ensure_valid()?;
    let r = VertexLabel::Int(next_int(&[t1]));
    let (mut parents, mut lastborns, chooses) = entries(t1);
    parents.push((t1.root().clone(), r.clone()));
    lastborns.push((r.clone(), t1.root().clone()));
    BurlingTree::new(r, parents, lastborns, chooses)
}

/// Puts a new root `r` above the root of `t1` with a second child `r'`,
/// the old root being the last-born. Returns the tree, `r` (to delete)
/// and `r'`, which is universal in the sibling closure once `r` is gone.
pub fn attach_root_sibling(t1: &BurlingTree) -> Result<(BurlingTree, VertexLabel, VertexLabel), BurlingError> {
    t1.ensure_valid()?;
    let base = next_int(&[t1]);
    let (r, rp) = (VertexLabel::Int(base), VertexLabel::Int(base + 1));
    let (mut parents, mut lastborns, chooses) = entries(t1);
    parents.extend([(t1.root().clone(), r.clone()), (rp.clone(), r.clone())]);
    lastborns.push((r.clone(), t1.root().clone()));
    let t = BurlingTree::new(r.clone(), parents, lastborns, chooses)?;
    Ok((t, r, rp))
}

fn tag(t1: &BurlingTree) -> impl Fn(&VertexLabel) -> VertexLabel + '_ {
    move |v| {
        let side = if t1.contains(v) { 0usize } else { 1 };
        VertexLabel::tuple([VertexLabel::from(side), v.clone()])
    }
}

/// Both closures of the combined tree, minus the three helpers, equal the
/// disjoint unions of the closures of the parts.
pub fn check_combine_trees(t1: &BurlingTree, t2: &BurlingTree) -> Result<bool, BurlingError> {
    let (t, removed) = combine_trees(t1, t2)?;
    for closure in [clique_closure, sibling_closure] {
        let got = closure(&t)?
            .remove_vertices(&removed)
            .and_then(|g| g.relabel(tag(t1)))
            .expect("helpers are tree vertices");
        if got != Graph::disjoint_union(&[closure(t1)?, closure(t2)?]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The clique closure gains exactly one universal vertex.
pub fn check_attach_root_clique(t1: &BurlingTree) -> Result<bool, BurlingError> {
    let t = attach_root_clique(t1)?;
    let expected = clique_closure(t1)?
        .add_universal_vertex(t.root().clone())
        .expect("new root is fresh");
    Ok(clique_closure(&t)? == expected)
}

/// Without the new root, the sibling closure gains exactly the universal
/// vertex `r'`.
pub fn check_attach_root_sibling(t1: &BurlingTree) -> Result<bool, BurlingError> {
    let (t, r, rp) = attach_root_sibling(t1)?;
    let got = sibling_closure(&t)?.remove_vertices([&r]).expect("root is a tree vertex");
    let expected = sibling_closure(t1)?.add_universal_vertex(rp).expect("r' is fresh");
    Ok(got == expected)
}

/// A tree whose chosen closure, minus `removed`, is the recipe graph, with
/// recipe vertex `i` carried by tree vertex `vertices[i]`.
#[derive(Debug, Clone)]
pub struct Realization {
    pub tree: BurlingTree,
    pub removed: Vec<VertexLabel>,
    pub vertices: Vec<VertexLabel>,
}

impl Realization {
    /// Deletes the helpers from `closure` and renames tree vertices to
    /// recipe indices.
    pub fn recipe_graph(&self, closure: &Graph) -> Result<Graph, BurlingError> {
        let pos: BTreeMap<&VertexLabel, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let kept = closure
            .remove_vertices(&self.removed)
            .map_err(|_| BurlingError::UnknownVertex(self.removed[0].clone()))?;
        if let Some(v) = kept.labels().iter().find(|v| !pos.contains_key(v)) {
            return Err(BurlingError::UnknownVertex(v.clone()));
        }
        Ok(kept.relabel(|v| VertexLabel::from(pos[v])).expect("positions are distinct"))
    }

    fn shifted(self, by: i64) -> Realization {
        let shift = |v: &VertexLabel| VertexLabel::Int(v.as_int().expect("realizations use integer labels") + by);
        Realization {
            tree: self.tree.relabel(shift).expect("shifting is injective"),
            removed: self.removed.iter().map(shift).collect(),
            vertices: self.vertices.iter().map(shift).collect(),
        }
    }
}

#[derive(Clone, Copy)]
enum Closure {
    Clique,
    Sibling,
}

fn realize(recipe: &TpRecipe, closure: Closure) -> Result<Realization, BurlingError> {
    match recipe {
        TpRecipe::Vertex => Ok(Realization {
            tree: BurlingTree::single(VertexLabel::Int(0)),
            removed: vec![],
            vertices: vec![VertexLabel::Int(0)],
        }),
        TpRecipe::Universal(child) => {
            let mut r = realize(child, closure)?;
            match closure {
                Closure::Clique => {
                    r.tree = attach_root_clique(&r.tree)?;
                    r.vertices.push(r.tree.root().clone());
                }
                Closure::Sibling => {
                    let (t, root, added) = attach_root_sibling(&r.tree)?;
                    r.tree = t;
                    r.removed.push(root);
                    r.vertices.push(added);
                }
            }
            Ok(r)
        }
        TpRecipe::Union(parts) => {
            let mut acc = realize(&parts[0], closure)?;
            for part in &parts[1..] {
                let next = realize(part, closure)?.shifted(next_int(&[&acc.tree]));
                let (t, helpers) = combine_trees(&acc.tree, &next.tree)?;
                acc.tree = t;
                acc.removed.extend(next.removed);
                acc.removed.extend(helpers);
                acc.vertices.extend(next.vertices);
            }
            Ok(acc)
        }
    }
}

/// Realizes the recipe graph as `C(T)` minus helper vertices, using
/// [`combine_trees`] for unions and [`attach_root_clique`] for universal
/// vertices.
pub fn realize_in_clique_closure(recipe: &TpRecipe) -> Result<Realization, BurlingError> {
    recipe.validate()?;
    realize(recipe, Closure::Clique)
}

/// Realizes the recipe graph as `I(T)` minus helper vertices, using
/// [`combine_trees`] for unions and [`attach_root_sibling`] for universal
/// vertices.
pub fn realize_in_sibling_closure(recipe: &TpRecipe) -> Result<Realization, BurlingError> {
    recipe.validate()?;
    realize(recipe, Closure::Sibling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burling::generate_random_burling_tree;
    use crate::constructions::{build_trivially_perfect, random_tp_recipe};

    fn l(v: i64) -> VertexLabel {
        VertexLabel::Int(v)
    }

    #[test]
    fn combine_small() {
        let (t, removed) = combine_trees(&BurlingTree::single(l(0)), &BurlingTree::single(l(1))).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(removed, vec![l(2), l(3), l(4)]);
        let c = clique_closure(&t).unwrap().remove_vertices(&removed).unwrap();
        assert_eq!((c.n(), c.m()), (2, 0));
        assert!(check_combine_trees(&BurlingTree::single(l(0)), &BurlingTree::single(l(1))).unwrap());

        let path = |a: i64| {
            BurlingTree::new(l(a), [(l(a + 1), l(a)), (l(a + 2), l(a + 1))], [(l(a), l(a + 1)), (l(a + 1), l(a + 2))], [])
                .unwrap()
        };
        let (t, removed) = combine_trees(&path(0), &path(10)).unwrap();
        let c = clique_closure(&t).unwrap().remove_vertices(&removed).unwrap();
        assert_eq!((c.n(), c.m()), (6, 6));
        assert!(check_combine_trees(&path(0), &path(10)).unwrap());
        assert_eq!(
            combine_trees(&path(0), &path(2)).unwrap_err(),
            BurlingError::LabelCollision(l(2))
        );
    }

    #[test]
    fn attach_small() {
        let k1 = BurlingTree::single(l(0));
        assert_eq!(clique_closure(&attach_root_clique(&k1).unwrap()).unwrap(), Graph::complete(2));
        let path = BurlingTree::new(l(0), [(l(1), l(0)), (l(2), l(1))], [(l(0), l(1)), (l(1), l(2))], []).unwrap();
        assert_eq!(clique_closure(&attach_root_clique(&path).unwrap()).unwrap(), Graph::complete(4));

        let (t, r, rp) = attach_root_sibling(&k1).unwrap();
        let g = sibling_closure(&t).unwrap().remove_vertices([&r]).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        let (t, _, rp2) = attach_root_sibling(&path).unwrap();
        let i = sibling_closure(&t).unwrap();
        for v in path.labels() {
            assert!(i.has_edge(&rp2, v));
        }
        assert_eq!((r, rp, rp2), (l(1), l(2), l(4)));
    }

    #[test]
    fn contracts_on_random_trees() {
        for seed in 0..40u64 {
            let t1 = generate_random_burling_tree(1 + seed as usize % 12, seed).unwrap();
            let t2 = generate_random_burling_tree(1 + seed as usize % 9, seed + 1000)
                .unwrap()
                .relabel(|v| VertexLabel::Int(v.as_int().unwrap() + 100))
                .unwrap();
            assert!(check_combine_trees(&t1, &t2).unwrap());
            assert!(check_attach_root_clique(&t1).unwrap());
            assert!(check_attach_root_sibling(&t1).unwrap());
        }
    }

    #[test]
    fn recipes_realize_in_both_closures() {
        for seed in 0..40u64 {
            let recipe = random_tp_recipe(4, 14, seed);
            let want = build_trivially_perfect(&recipe).unwrap();
            let c = realize_in_clique_closure(&recipe).unwrap();
            assert_eq!(c.recipe_graph(&clique_closure(&c.tree).unwrap()).unwrap(), want);
            let i = realize_in_sibling_closure(&recipe).unwrap();
            assert_eq!(i.recipe_graph(&sibling_closure(&i.tree).unwrap()).unwrap(), want);
        }
    }
}
