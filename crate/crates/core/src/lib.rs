//! Simulation laboratory for resource-bounded automata.
//!
//! The crate models real-time and one-way machines with a single worktape,
//! several stacks, or several unary counters, in deterministic,
//! nondeterministic, alternating and probabilistic modes. It executes them,
//! meters their storage usage under the strong, middle and weak space
//! semantics, and ships constructions for a family of nonregular languages
//! together with simulation-free membership oracles for each of them.
//!
//! Module map:
//!
//! * [`machine`]: device descriptions, validation, the JSON machine file format.
//! * [`engine`]: deterministic runs, budgeted AND-OR evaluation, exact
//!   acceptance probabilities.
//! * [`metering`]: strong / middle / weak space measurement.
//! * [`constructions`]: the built-in machines and the κ-padding transform.
//! * [`oracles`]: membership predicates and member generators.
//! * [`analysis`]: sweeps, bound fitting, equivalence audits, reports.

pub mod analysis;
pub mod constructions;
pub mod engine;
pub mod machine;
pub mod metering;
pub mod oracles;

pub use engine::{Budget, Configuration, Decision, EngineError, Executor, RunResult, SpaceProfile, Verdict};
pub use machine::{
    Alphabet, Diagnostic, InputAction, Label, Machine, Mode, ParseError, Read, StorageSpec,
    Timing, TransitionRule, Word,
};
pub use metering::{Measurement, SpaceMode};
pub use oracles::LanguageId;

/// Exact rational used for transition weights and acceptance probabilities.
pub type Ratio = num_rational::BigRational;
