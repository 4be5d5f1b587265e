//! Exact desk-scale solvers (chromatic, clique and independence numbers),
//! colourings, girth, components and componentwise r-dependence.

mod chromatic;
mod clique;
mod coloring;
mod structure;

use std::time::Instant;

use thiserror::Error;

use crate::label::VertexLabel;

pub use chromatic::{chromatic_number, chromatic_number_with, is_k_colorable};
pub use clique::{clique_number, clique_number_with, independence_number, independence_number_with};
pub use coloring::{is_proper_coloring, product_coloring, Coloring};
pub use structure::{
    components, componentwise_r_dependent_chromatic_number, girth, is_componentwise_r_dependent,
    is_t_k_r_decomposition, Girth,
};
pub(crate) use structure::components_idx;

/// Limits for the exact solvers.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Largest graph the solver accepts.
    pub max_vertices: usize,
    /// Search-node cap, if any.
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 64,
            max_nodes: None,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_vertices: usize::MAX,
            max_nodes: None,
            deadline: None,
        }
    }

    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = Some(nodes);
        self
    }
}

/// Counts search nodes and polls the deadline every 1024 nodes.
pub(crate) struct Meter {
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    pub(crate) exhausted: bool,
}

impl Meter {
    pub(crate) fn new(b: &Budget) -> Self {
        Meter {
            nodes: 0,
            max_nodes: b.max_nodes,
            deadline: b.deadline,
            exhausted: false,
        }
    }

    /// Returns false once the budget is used up.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if let Some(m) = self.max_nodes {
            if self.nodes > m {
                self.exhausted = true;
                return false;
            }
        }
        if self.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("graph has {n} vertices, solver budget allows {max}")]
    TooLarge { n: usize, max: usize },
    /// The search ran out of budget; `lower..=upper` brackets the optimum and
    /// `best` is the best colouring found (for chromatic number).
    #[error("solver budget exceeded; optimum lies in [{lower}, {upper}]")]
    BudgetExceeded {
        lower: usize,
        upper: usize,
        best: Option<Coloring>,
    },
    #[error("vertex {0} is not coloured")]
    MissingVertex(VertexLabel),
    #[error("colourings or parts are over different vertex sets")]
    MismatchedVertexSets,
    #[error("empty input")]
    EmptyInput,
    #[error("parameter r must be at least {min}, got {got}")]
    BadParameter { min: usize, got: usize },
}
