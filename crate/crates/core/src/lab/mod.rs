//! Finite pair colourings and the finite fragments of the counterexample
//! `Γ = {◇p_i} ∪ {□(p_i → ◇p_j) : i < j}`.
//!
//! The transfinite argument colours pairs `i < j` by the first index of a
//! cofinal sequence beyond which `p_i → ◇p_j` holds, extracts a homogeneous
//! set, and derives an infinite descending sequence. Here index sets are
//! finite, homogeneous sets are found by exhaustive search, and cofinal
//! sequences are canonical fundamental sequences. Uncountable cofinalities
//! do not occur below ε₀, so the branch of the argument that needs them has
//! no executable counterpart.

mod coloring;
mod gamma;

use thiserror::Error;

use crate::topo::TopoError;

pub use coloring::{
    arrow_check, arrow_search, find_homogeneous, find_homogeneous_with, ColoringJson,
    HomogeneousWitness, PairColoring, DEFAULT_ARROW_BUDGET,
};
pub use gamma::{
    descending_extraction, gamma_fragment, gamma_ordinal_model, open_interval, proof_coloring,
    GammaModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("search needs {needed} colourings, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("no n below the limit makes p{i} -> <>p{j} hold on (alpha_n, alpha)")]
    NoBound { i: usize, j: usize },
    #[error("<>p{index} has no witness below alpha")]
    NoWitness { index: usize },
    #[error("invalid colouring: {0}")]
    BadColoring(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Topo(#[from] TopoError),
}
