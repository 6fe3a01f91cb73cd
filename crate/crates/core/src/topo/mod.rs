//! Ordinal spaces `[0, Θ)` with the Icard topologies `𝓘_λ`, a decidable
//! region algebra over rank constraints, and the derived-set operator.
//!
//! A region is a finite union of cells, each cell an intersection of rank
//! constraints `lo < ℓ^ξ θ ≤ hi`, corrected by finitely many added and
//! removed points.

mod cell;
mod derived;
mod eval;
mod json;
mod region;
mod samples;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{hyper_log, Ordinal, OrdinalError};

pub use cell::{Cell, Interval, RankConstraint};
pub use derived::{derived_set, derived_set_iter, rank_of};
pub use eval::{eval_formula, eval_pointwise_i1, holds, oracle_mismatches, OrdinalValuation};
pub use json::{CellJson, ConstraintJson, RegionJson, ValuationJson};
pub use region::{
    basic_nbhd, is_cofinal_in, is_empty, is_subset, member, region_combine, sup_below,
    NeighborhoodSpec, Region, SetOp,
};
pub use samples::canonical_samples;

/// Why club-based spaces are refused.
pub const CLUB_JUSTIFICATION: &str = "club topology below epsilon_0 is discrete: every point has \
cofinality at most omega and is therefore isolated";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("regions live in different spaces")]
    SpaceMismatch,
    #[error("point {0} lies outside the space")]
    OutOfSpace(String),
    #[error("invalid neighbourhood spec: {0}")]
    InvalidSpec(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    #[error("variable p{0} has no valuation")]
    UnboundVariable(u32),
    #[error("pointwise evaluation needs lambda = 1, got {0}")]
    WrongLambda(String),
    #[error("{0} is not a limit ordinal")]
    NotLimit(String),
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    #[default]
    Icard,
    Club,
}

/// The space `[0, Θ)` with topology `𝓘_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    pub theta: Ordinal,
    pub lambda: Ordinal,
}

impl SpaceSpec {
    pub fn new(theta: Ordinal, lambda: Ordinal) -> Result<Self, TopoError> {
        if theta.is_zero() {
            return Err(TopoError::InvalidSpace("theta must be positive".into()));
        }
        Ok(SpaceSpec { theta, lambda })
    }

    pub fn with_topology(
        kind: TopologyKind,
        theta: Ordinal,
        lambda: Ordinal,
    ) -> Result<Self, TopoError> {
        match kind {
            TopologyKind::Icard => Self::new(theta, lambda),
            TopologyKind::Club => Err(TopoError::UnsupportedTopology(CLUB_JUSTIFICATION.into())),
        }
    }

    /// Finite `λ`, or `None` when `λ ≥ ω` (the topology is then discrete).
    pub fn finite_lambda(&self) -> Option<u64> {
        self.lambda.as_nat()
    }

    pub fn contains(&self, theta: &Ordinal) -> bool {
        theta < &self.theta
    }

    pub fn check_point(&self, theta: &Ordinal) -> Result<(), TopoError> {
        if self.contains(theta) {
            Ok(())
        } else {
            Err(TopoError::OutOfSpace(theta.to_string()))
        }
    }

    /// `ℓ^λ θ`, the Cantor–Bendixson rank of `θ`.
    pub fn rank(&self, theta: &Ordinal) -> Ordinal {
        hyper_log(&self.lambda, theta)
    }
}
