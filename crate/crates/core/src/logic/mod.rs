//! Modal formulas, the GL tableau, and finite Kripke trees.

mod formula;
mod kripke;
mod tableau;

use thiserror::Error;

pub use formula::{closure, format_formula, parse_formula, Formula, FormulaSet};
pub use kripke::{kripke_eval, KripkeTree, TreeJson, TreeNodeJson};
pub use tableau::{
    char_bound, gl_prove, gl_sat, gl_sat_with, gl_saturate, CharBound, SatResult, SatTree,
    TableauConfig, DEFAULT_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown node id {0}")]
    UnknownNode(usize),
    #[error("tableau budget of {budget} expansions exhausted")]
    ResourceLimit { budget: u64 },
    #[error("formula set is inconsistent")]
    Inconsistent,
    #[error("malformed tree: {0}")]
    MalformedTree(String),
}
