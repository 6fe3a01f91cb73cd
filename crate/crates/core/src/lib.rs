//! A symbolic workbench for the provability logic GL over ordinal spaces.
//!
//! - [`ordinal`]: Cantor-normal-form ordinals below ε₀ with end logarithms,
//!   finite hyperexponentials/hyperlogarithms and fundamental sequences.
//! - [`logic`]: modal formulas, a GL tableau prover with finite irreflexive
//!   tree countermodels, and Kripke model checking.
//! - [`topo`]: a decidable region algebra over `[0, Θ)` with the derived-set
//!   operator of the Icard topologies `𝓘_λ`.
//! - [`lab`]: finite pair colourings, homogeneous sets and the finite
//!   fragments of the uncountable-language counterexample `Γ`.
//! - [`bouquet`]: lottery sums and bouquet models realising strong
//!   completeness at countable scale.

pub mod bouquet;
pub mod exec;
pub mod lab;
pub mod logic;
pub mod ordinal;
pub mod random;
pub mod topo;

pub use exec::Exec;
pub use ordinal::Ordinal;
