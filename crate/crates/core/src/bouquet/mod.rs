//! Bouquet models: a fresh root over countably many finite children, with
//! root neighbourhoods `{root} ∪ ⋃_{ξ ≥ j} T_ξ`.
//!
//! [`build_model`] follows the strong-completeness construction at
//! countable scale. Sets of finite characteristic get a finite tree.
//! Otherwise the root label `H` is a saturated tableau node and child `ξ`
//! is a tableau model of `Δ_ξ = {ψ_ξ} ∪ {φ_ζ ∧ □φ_ζ : ζ < ξ}`, where `ψ_ξ`
//! runs through the diamonds of `H` interleaved with `◇ᵏ⊤` and `φ_ζ`
//! through its boxes.

mod check;
mod export;
mod tree;

use thiserror::Error;

use crate::logic::{
    char_bound, gl_saturate, CharBound, Formula, FormulaSet, KripkeTree, LogicError, TableauConfig,
};
use crate::ordinal::Ordinal;

pub use check::{check_root, Certificate, Verdict};
pub use export::{BouquetJson, ChildJson, DiamondScheduleJson, ModelJson, TailJson};
pub use tree::{
    lottery_sum, sigma_nbhd, BouquetTree, Catalogue, Child, ChildSource, DeltaSource, FnSource,
    NodeRef, Schedule, SigmaNbhd, SigmaStage,
};

/// Default probe depth for the characteristic.
pub const DEFAULT_MAX_N: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BouquetError {
    #[error("a bouquet root needs infinitely many children; the catalogue is empty")]
    EmptyCatalogue,
    #[error("root rank {0} is finite, so upset neighbourhoods apply")]
    FiniteRank(String),
    #[error("child {xi}: Delta is unsatisfiable")]
    ChildInconsistent { xi: u64 },
    #[error("child {xi}: {reason}")]
    ChildInvalid { xi: u64, reason: String },
    #[error("sigma stage {0} is not supported (stages 0 to 2 are)")]
    UnsupportedStage(u32),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// The output of [`build_model`].
#[derive(Debug)]
pub enum Model {
    Finite(KripkeTree),
    Bouquet(BouquetTree),
}

impl Model {
    pub fn as_bouquet(&self) -> Option<&BouquetTree> {
        match self {
            Model::Bouquet(b) => Some(b),
            Model::Finite(_) => None,
        }
    }
}

/// A model of `gamma` at its root.
pub fn build_model(gamma: &FormulaSet, max_n: u64) -> Result<Model, BouquetError> {
    build_model_with(gamma, max_n, TableauConfig::default())
}

pub fn build_model_with(
    gamma: &FormulaSet,
    max_n: u64,
    config: TableauConfig,
) -> Result<Model, BouquetError> {
    match char_bound(gamma, max_n)? {
        CharBound::Finite(_) => {
            let t = gl_saturate(gamma, config)?.ok_or(LogicError::Inconsistent)?;
            Ok(Model::Finite(t.to_kripke()))
        }
        CharBound::AtLeast(_) => {
            let probe = gamma.with(Formula::diamond_pow(max_n as usize, Formula::Top));
            let h = gl_saturate(&probe, config)?.ok_or(LogicError::Inconsistent)?;
            let schedule = Schedule::from_label(&h.label);
            let root_vars = h
                .label
                .iter()
                .filter_map(|f| match f {
                    Formula::Var(v) => Some(*v),
                    _ => None,
                })
                .collect();
            let source = DeltaSource::new(schedule.clone(), config);
            Ok(Model::Bouquet(BouquetTree::new(
                gamma.clone(),
                root_vars,
                Some(schedule),
                Box::new(source),
            )))
        }
    }
}

/// Cantor–Bendixson rank of the root: the height for finite trees, and for
/// bouquets one more than the largest child rank, or `ω` when child ranks
/// are unbounded.
pub fn tree_rank(m: &Model) -> Ordinal {
    match m {
        Model::Finite(t) => Ordinal::nat(t.height(t.root()) as u64),
        Model::Bouquet(b) => b.rank(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn set(list: &str) -> FormulaSet {
        FormulaSet::parse_list(list).unwrap()
    }

    #[test]
    fn finite_characteristic_gives_a_tree() {
        let m = build_model(&set("[]False, p0"), 8).unwrap();
        let Model::Finite(t) = &m else {
            panic!("expected a finite tree")
        };
        assert_eq!(t.len(), 1);
        assert_eq!(tree_rank(&m), Ordinal::zero());
        let m = build_model(&set("<>p0, [][]False"), 8).unwrap();
        assert!(tree_rank(&m) <= Ordinal::nat(2));
    }

    #[test]
    fn infinite_characteristic_gives_a_bouquet() {
        let m = build_model(&set("<>p0, <>~p0"), 8).unwrap();
        let b = m.as_bouquet().expect("bouquet");
        assert_eq!(tree_rank(&m), Ordinal::omega());
        let p0 = parse_formula("p0").unwrap();
        let not_p0 = parse_formula("~p0").unwrap();
        let psis: Vec<Formula> = (0..8)
            .step_by(2)
            .map(|xi| b.schedule().unwrap().psi(xi))
            .collect();
        assert!(psis.contains(&p0.core()) && psis.contains(&not_p0.core()));
        for xi in 0..8 {
            let c = b.child(xi).unwrap();
            for d in &c.delta {
                assert!(c.tree.eval(c.tree.root(), d).unwrap());
            }
        }
    }

    #[test]
    fn inconsistent_input() {
        assert!(matches!(
            build_model(&set("p0, ~p0"), 4),
            Err(BouquetError::Logic(LogicError::Inconsistent))
        ));
    }
}
