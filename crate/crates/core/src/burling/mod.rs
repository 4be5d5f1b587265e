//! Burling trees, the graphs derived from them, the clique and sibling
//! closures, and the tree surgeries that embed trivially perfect graphs in
//! both closures.

mod surgery;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bits::Bits;
use crate::constructions::{rng, ConstructionError};
use crate::graph::{Digraph, Graph};
use crate::label::VertexLabel;

pub use surgery::{
    attach_root_clique, attach_root_sibling, check_attach_root_clique, check_attach_root_sibling,
    check_combine_trees, combine_trees, realize_in_clique_closure, realize_in_sibling_closure,
    Realization,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurlingError {
    #[error("vertex {0} appears as a child more than once")]
    TwoParents(VertexLabel),
    #[error("the root {0} cannot have a parent")]
    RootHasParent(VertexLabel),
    #[error("vertex {0} is not connected to the root")]
    Unreachable(VertexLabel),
    #[error("vertex {0} is not in the tree")]
    UnknownVertex(VertexLabel),
    #[error("vertex {0} has more than one {1} entry")]
    DuplicateEntry(VertexLabel, &'static str),
    #[error("invalid Burling tree: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("trees share vertex {0}")]
    LabelCollision(VertexLabel),
    #[error("empty vertex set")]
    EmptySet,
    #[error(transparent)]
    Recipe(#[from] ConstructionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// A vertex with children has no last-born.
    MissingLastborn,
    LastbornNotChild,
    /// A leaf was given a last-born.
    LastbornOnLeaf,
    /// The root or a last-born has a non-empty choose list.
    ChooseNotAllowed,
    /// The choose list does not start at the last-born of the parent.
    ChooseWrongStart,
    /// Consecutive choose entries are not parent and child.
    ChooseNotBranch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: VertexLabel,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::MissingLastborn => "has children but no last-born",
            ViolationKind::LastbornNotChild => "has a last-born that is not its child",
            ViolationKind::LastbornOnLeaf => "is a leaf with a last-born",
            ViolationKind::ChooseNotAllowed => "is the root or a last-born but chooses vertices",
            ViolationKind::ChooseWrongStart => "chooses a branch not starting at its parent's last-born",
            ViolationKind::ChooseNotBranch => "chooses vertices that do not form a downward path",
        };
        write!(f, "{} {what}", self.vertex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Rooted tree with a last-born map and a choose function, stored by
/// vertex index (the rank of the label).
///
/// Construction only checks that the parent map is a tree rooted at `root`.
/// The last-born and choose maps are checked by [`validate_burling_tree`],
/// and every derivation refuses trees that fail it.
#[derive(Clone, PartialEq, Eq)]
pub struct BurlingTree {
    labels: Vec<VertexLabel>,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    lastborn: Vec<Option<usize>>,
    choose: Vec<Vec<usize>>,
}

impl fmt::Debug for BurlingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |i: usize| self.labels[i].to_string();
        let mut s = f.debug_struct("BurlingTree");
        s.field("root", &name(self.root));
        s.field(
            "parent",
            &(0..self.n())
                .filter_map(|v| self.parent[v].map(|p| format!("{}<-{}", name(p), name(v))))
                .collect::<Vec<_>>(),
        );
        s.field(
            "lastborn",
            &(0..self.n())
                .filter_map(|v| self.lastborn[v].map(|l| format!("{}:{}", name(v), name(l))))
                .collect::<Vec<_>>(),
        );
        s.field(
            "choose",
            &(0..self.n())
                .filter(|&v| !self.choose[v].is_empty())
                .map(|v| format!("{}:{:?}", name(v), self.choose[v].iter().map(|&c| name(c)).collect::<Vec<_>>()))
                .collect::<Vec<_>>(),
        );
        s.finish()
    }
}

impl BurlingTree {
    /// Builds a tree from `(child, parent)` pairs. Vertices missing from
    /// `lastborn` have none; vertices missing from `choose` choose nothing.
    pub fn new(
        root: VertexLabel,
        parent_of: impl IntoIterator<Item = (VertexLabel, VertexLabel)>,
        lastborn: impl IntoIterator<Item = (VertexLabel, VertexLabel)>,
        choose: impl IntoIterator<Item = (VertexLabel, Vec<VertexLabel>)>,
    ) -> Result<BurlingTree, BurlingError> {
        let parent_of: Vec<(VertexLabel, VertexLabel)> = parent_of.into_iter().collect();
        let mut set = BTreeSet::from([root.clone()]);
        for (c, p) in &parent_of {
            set.insert(c.clone());
            set.insert(p.clone());
        }
        let labels: Vec<VertexLabel> = set.into_iter().collect();
        let n = labels.len();
        let idx = |l: &VertexLabel| {
            labels
                .binary_search(l)
                .map_err(|_| BurlingError::UnknownVertex(l.clone()))
        };
        let root_i = idx(&root)?;
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for (c, p) in &parent_of {
            let (ci, pi) = (idx(c)?, idx(p)?);
            if ci == root_i {
                return Err(BurlingError::RootHasParent(c.clone()));
            }
            if parent[ci].is_some() {
                return Err(BurlingError::TwoParents(c.clone()));
            }
            parent[ci] = Some(pi);
            children[pi].push(ci);
        }
        for ch in &mut children {
            ch.sort_unstable();
        }
        let mut depth = vec![usize::MAX; n];
        depth[root_i] = 0;
        let mut stack = vec![root_i];
        while let Some(v) = stack.pop() {
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                stack.push(c);
            }
        }
        if let Some(v) = (0..n).find(|&v| depth[v] == usize::MAX) {
            return Err(BurlingError::Unreachable(labels[v].clone()));
        }
        let mut lb = vec![None; n];
        for (v, l) in lastborn {
            let vi = idx(&v)?;
            if lb[vi].is_some() {
                return Err(BurlingError::DuplicateEntry(v, "last-born"));
            }
            lb[vi] = Some(idx(&l)?);
        }
        let mut ch = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for (v, list) in choose {
            let vi = idx(&v)?;
            if seen[vi] {
                return Err(BurlingError::DuplicateEntry(v, "choose"));
            }
            seen[vi] = true;
            ch[vi] = list.iter().map(idx).collect::<Result<_, _>>()?;
        }
        Ok(BurlingTree {
            labels,
            root: root_i,
            parent,
            children,
            depth,
            lastborn: lb,
            choose: ch,
        })
    }

    pub fn single(label: VertexLabel) -> BurlingTree {
        BurlingTree::new(label, [], [], []).expect("a single vertex is a tree")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Vertex labels in sorted order.
    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn root(&self) -> &VertexLabel {
        &self.labels[self.root]
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.index_of(v).is_some()
    }

    fn index_of(&self, v: &VertexLabel) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    fn require(&self, v: &VertexLabel) -> Result<usize, BurlingError> {
        self.index_of(v).ok_or_else(|| BurlingError::UnknownVertex(v.clone()))
    }

    pub fn parent(&self, v: &VertexLabel) -> Option<&VertexLabel> {
        self.parent[self.index_of(v)?].map(|p| &self.labels[p])
    }

    pub fn children(&self, v: &VertexLabel) -> Vec<&VertexLabel> {
        self.index_of(v)
            .map(|i| self.children[i].iter().map(|&c| &self.labels[c]).collect())
            .unwrap_or_default()
    }

    pub fn lastborn(&self, v: &VertexLabel) -> Option<&VertexLabel> {
        self.lastborn[self.index_of(v)?].map(|l| &self.labels[l])
    }

    pub fn choose(&self, v: &VertexLabel) -> Vec<&VertexLabel> {
        self.index_of(v)
            .map(|i| self.choose[i].iter().map(|&c| &self.labels[c]).collect())
            .unwrap_or_default()
    }

    pub fn depth(&self, v: &VertexLabel) -> Option<usize> {
        Some(self.depth[self.index_of(v)?])
    }

    pub fn is_leaf(&self, v: &VertexLabel) -> bool {
        self.index_of(v).is_some_and(|i| self.children[i].is_empty())
    }

    pub fn leaves(&self) -> Vec<&VertexLabel> {
        (0..self.n())
            .filter(|&v| self.children[v].is_empty())
            .map(|v| &self.labels[v])
            .collect()
    }

    /// `(child, parent)` pairs in label order of the child.
    pub fn parent_pairs(&self) -> Vec<(&VertexLabel, &VertexLabel)> {
        (0..self.n())
            .filter_map(|v| self.parent[v].map(|p| (&self.labels[v], &self.labels[p])))
            .collect()
    }

    /// Applies an injective relabelling to every vertex.
    pub fn relabel(&self, f: impl Fn(&VertexLabel) -> VertexLabel) -> Result<BurlingTree, BurlingError> {
        let new: Vec<VertexLabel> = self.labels.iter().map(&f).collect();
        let distinct: BTreeSet<&VertexLabel> = new.iter().collect();
        if distinct.len() != new.len() {
            let dup = new
                .iter()
                .find(|l| new.iter().filter(|m| m == l).count() > 1)
                .expect("duplicate exists");
            return Err(BurlingError::LabelCollision(dup.clone()));
        }
        let n = self.n();
        BurlingTree::new(
            new[self.root].clone(),
            (0..n).filter_map(|v| self.parent[v].map(|p| (new[v].clone(), new[p].clone()))),
            (0..n).filter_map(|v| self.lastborn[v].map(|l| (new[v].clone(), new[l].clone()))),
            (0..n)
                .filter(|&v| !self.choose[v].is_empty())
                .map(|v| (new[v].clone(), self.choose[v].iter().map(|&c| new[c].clone()).collect())),
        )
    }

    fn is_lastborn(&self, v: usize) -> bool {
        self.parent[v].is_some_and(|p| self.lastborn[p] == Some(v))
    }

    /// `a` is an ancestor of `b` (every vertex is its own ancestor).
    fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut x = b;
        while self.depth[x] > self.depth[a] {
            x = self.parent[x].expect("non-root has a parent");
        }
        x == a
    }

    /// Vertices below `v`, including `v`.
    fn subtree(&self, v: usize) -> Bits {
        let mut out = Bits::new(self.n());
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.set(x);
            stack.extend(&self.children[x]);
        }
        out
    }

    fn report(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut push = |v: usize, kind| {
            violations.push(Violation {
                vertex: self.labels[v].clone(),
                kind,
            })
        };
        for v in 0..self.n() {
            match (self.lastborn[v], self.children[v].is_empty()) {
                (None, false) => push(v, ViolationKind::MissingLastborn),
                (Some(_), true) => push(v, ViolationKind::LastbornOnLeaf),
                (Some(l), false) if self.parent[l] != Some(v) => push(v, ViolationKind::LastbornNotChild),
                _ => {}
            }
        }
        for v in 0..self.n() {
            let list = &self.choose[v];
            if list.is_empty() {
                continue;
            }
            if v == self.root || self.is_lastborn(v) {
                push(v, ViolationKind::ChooseNotAllowed);
                continue;
            }
            let p = self.parent[v].expect("non-root has a parent");
            if self.lastborn[p].is_some_and(|l| l != list[0]) {
                push(v, ViolationKind::ChooseWrongStart);
            } else if list.windows(2).any(|w| self.parent[w[1]] != Some(w[0])) {
                push(v, ViolationKind::ChooseNotBranch);
            }
        }
        ValidationReport { violations }
    }

    fn ensure_valid(&self) -> Result<(), BurlingError> {
        let report = self.report();
        if report.is_valid() {
            Ok(())
        } else {
            Err(BurlingError::Invalid(report.violations))
        }
    }

    fn set_of(&self, x: &[VertexLabel]) -> Result<Bits, BurlingError> {
        let mut set = Bits::new(self.n());
        for v in x {
            set.set(self.require(v)?);
        }
        Ok(set)
    }

    fn labels_of(&self, set: impl IntoIterator<Item = usize>) -> Vec<VertexLabel> {
        set.into_iter().map(|v| self.labels[v].clone()).collect()
    }

    fn graph_with(&self, extra: impl Fn(usize, usize) -> bool) -> Graph {
        let n = self.n();
        let mut adj = vec![Bits::new(n); n];
        for u in 0..n {
            for &v in &self.choose[u] {
                adj[u].set(v);
                adj[v].set(u);
            }
        }
        Graph::from_predicate(self.labels.clone(), |a, b| adj[a].get(b) || extra(a, b))
            .expect("tree labels are distinct")
    }
}

/// Checks the last-born and choose conditions, listing every offending
/// vertex.
pub fn validate_burling_tree(t: &BurlingTree) -> ValidationReport {
    t.report()
}

/// `A(T)`: an arc `u -> v` for every `v` in `choose(u)`.
pub fn fully_derived_oriented(t: &BurlingTree) -> Result<Digraph, BurlingError> {
    t.ensure_valid()?;
    let arcs = (0..t.n())
        .flat_map(|u| t.choose[u].iter().map(move |&v| (u, v)))
        .map(|(u, v)| (t.labels[u].clone(), t.labels[v].clone()))
        .collect::<Vec<_>>();
    Ok(Digraph::new(t.labels.clone(), arcs).expect("choose lists name tree vertices"))
}

/// `G(T)`, the underlying graph of `A(T)`.
pub fn fully_derived(t: &BurlingTree) -> Result<Graph, BurlingError> {
    Ok(fully_derived_oriented(t)?.underlying())
}

/// `C(T)`: `G(T)` plus every ancestor-descendant edge, which makes each
/// principal branch a clique.
pub fn clique_closure(t: &BurlingTree) -> Result<Graph, BurlingError> {
    t.ensure_valid()?;
    Ok(t.graph_with(|a, b| t.is_ancestor(a, b) || t.is_ancestor(b, a)))
}

/// `I(T)`: `G(T)` plus sibling edges, plus edges from each vertex to the
/// descendants of its last-born sibling. A last-born is not its own
/// sibling.
pub fn sibling_closure(t: &BurlingTree) -> Result<Graph, BurlingError> {
    t.ensure_valid()?;
    let n = t.n();
    let below_lastborn: Vec<Option<Bits>> = (0..n)
        .map(|v| t.lastborn[v].map(|l| t.subtree(l)))
        .collect();
    let reaches = |a: usize, b: usize| match t.parent[a] {
        Some(p) if t.lastborn[p] != Some(a) => {
            below_lastborn[p].as_ref().is_some_and(|s| s.get(b))
        }
        _ => false,
    };
    Ok(t.graph_with(|a, b| {
        (t.parent[a].is_some() && t.parent[a] == t.parent[b]) || reaches(a, b) || reaches(b, a)
    }))
}

/// A tree together with `A(T)`, `G(T)`, `C(T)` and `I(T)`.
#[derive(Debug, Clone)]
pub struct DerivedGraphBundle {
    pub tree: BurlingTree,
    pub oriented: Digraph,
    pub derived: Graph,
    pub clique_closure: Graph,
    pub sibling_closure: Graph,
}

/// Computes all derived graphs and asserts `G(T) = C(T) ∩ I(T)`.
pub fn derive_bundle(t: &BurlingTree) -> Result<DerivedGraphBundle, BurlingError> {
    let oriented = fully_derived_oriented(t)?;
    let derived = oriented.underlying();
    let c = clique_closure(t)?;
    let i = sibling_closure(t)?;
    assert_eq!(c.intersect(&i), derived, "derived graph must be the intersection of the closures");
    Ok(DerivedGraphBundle {
        tree: t.clone(),
        oriented,
        derived,
        clique_closure: c,
        sibling_closure: i,
    })
}

/// The principal branch grown from the root by stepping to the smallest
/// non-last-born child whenever there are at least two children. No vertex
/// off the branch chooses a vertex on it.
pub fn left_principal_branch(t: &BurlingTree) -> Result<Vec<VertexLabel>, BurlingError> {
    t.ensure_valid()?;
    let mut branch = vec![t.root];
    let mut v = t.root;
    while !t.children[v].is_empty() {
        v = if t.children[v].len() >= 2 {
            *t.children[v]
                .iter()
                .find(|&&c| t.lastborn[v] != Some(c))
                .expect("two children include a non-last-born")
        } else {
            t.children[v][0]
        };
        branch.push(v);
    }
    let on = Bits::from_indices(t.n(), branch.iter().copied());
    assert!(
        (0..t.n()).all(|u| on.get(u) || t.choose[u].iter().all(|&c| !on.get(c))),
        "left principal branch is chosen from outside"
    );
    Ok(t.labels_of(branch))
}

/// Whether the principal branch ending at `leaf` is left.
fn is_left_branch(t: &BurlingTree, leaf: usize) -> bool {
    let mut on = Bits::new(t.n());
    let mut x = Some(leaf);
    while let Some(v) = x {
        on.set(v);
        x = t.parent[v];
    }
    (0..t.n()).all(|u| on.get(u) || t.choose[u].iter().all(|&c| !on.get(c)))
}

/// Vertices of `x` that are leaves of `t` lying on some left principal
/// branch. Non-empty whenever `x` contains every leaf; if `x` omits leaves
/// the result may be empty.
pub fn bottom_left_vertices(t: &BurlingTree, x: &[VertexLabel]) -> Result<Vec<VertexLabel>, BurlingError> {
    t.ensure_valid()?;
    let set = t.set_of(x)?;
    Ok(t.labels_of(set.iter().filter(|&v| t.children[v].is_empty() && is_left_branch(t, v))))
}

/// Vertices of `x` at minimum depth that are not last-borns, or the only
/// vertex at minimum depth. Each is asserted to be a source of `A(T)[x]`.
///
/// The result can be empty: if the minimum depth is shared by several
/// last-borns, as for the last-born children of two siblings, no vertex
/// qualifies. It is non-empty when `x` induces a connected subgraph of
/// `I(T)`.
pub fn top_left_vertices(t: &BurlingTree, x: &[VertexLabel]) -> Result<Vec<VertexLabel>, BurlingError> {
    t.ensure_valid()?;
    let set = t.set_of(x)?;
    let min = set.iter().map(|v| t.depth[v]).min().ok_or(BurlingError::EmptySet)?;
    let shallow: Vec<usize> = set.iter().filter(|&v| t.depth[v] == min).collect();
    let found: Vec<usize> = if shallow.len() == 1 {
        shallow
    } else {
        shallow.into_iter().filter(|&v| !t.is_lastborn(v)).collect()
    };
    for &v in &found {
        assert!(
            !set.iter().any(|u| t.choose[u].contains(&v)),
            "top-left vertex {} has an in-neighbour",
            t.labels[v]
        );
    }
    Ok(t.labels_of(found))
}

/// Random Burling tree on labels `0..n`, deterministic per seed. Each vertex
/// hangs below a uniformly random earlier vertex; last-borns are uniform;
/// choose lists are random-length downward paths from the parent's
/// last-born.
pub fn generate_random_burling_tree(n: usize, seed: u64) -> Result<BurlingTree, BurlingError> {
    if n == 0 {
        return Err(BurlingError::EmptySet);
    }
    let mut rng = rng(seed);
    let parent: Vec<usize> = (1..n).map(|v| rng.gen_range(0..v)).collect();
    let mut children = vec![Vec::new(); n];
    for (i, &p) in parent.iter().enumerate() {
        children[p].push(i + 1);
    }
    let lastborn: BTreeMap<usize, usize> = (0..n)
        .filter(|&v| !children[v].is_empty())
        .map(|v| (v, children[v][rng.gen_range(0..children[v].len())]))
        .collect();
    let mut choose = Vec::new();
    for v in 1..n {
        let p = parent[v - 1];
        let l = lastborn[&p];
        if l == v || !rng.gen_bool(0.75) {
            continue;
        }
        let mut path = vec![l];
        let mut x = l;
        while !children[x].is_empty() && rng.gen_bool(0.6) {
            x = children[x][rng.gen_range(0..children[x].len())];
            path.push(x);
        }
        choose.push((VertexLabel::from(v), path.into_iter().map(VertexLabel::from).collect()));
    }
    BurlingTree::new(
        VertexLabel::from(0usize),
        parent.iter().enumerate().map(|(i, &p)| (VertexLabel::from(i + 1), VertexLabel::from(p))),
        lastborn.into_iter().map(|(v, l)| (VertexLabel::from(v), VertexLabel::from(l))),
        choose,
    )
}
