//! Unified device description shared by every simulator.
//!
//! A [`Machine`] is plain data: it is built once (by hand, by a builder in
//! [`crate::constructions`], or by [`parse_machine`]), checked with
//! [`validate_machine`], and then shared immutably by the engine.

mod format;
mod validate;
mod word;

pub use format::{parse_machine, serialize_machine, ParseError};
pub use validate::{validate_machine, Diagnostic, DiagnosticKind};
pub use word::{render_word, tokenize, TokenizeError, Word};

use crate::Ratio;

/// Endmarker appended by the engine after every input.
pub const ENDMARKER: &str = "$";
/// Padding symbol consumed by κ-padded machines.
pub const KAPPA: &str = "κ";
/// Conventional worktape blank.
pub const BLANK: &str = "#";

/// Ordered set of printable tokens.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self { symbols: symbols.into_iter().map(Into::into).collect() }
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, sym: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == sym)
    }

    pub fn contains(&self, sym: &str) -> bool {
        self.index_of(sym).is_some()
    }

    /// Copy of this alphabet with `sym` appended (no-op if already present).
    pub fn with(&self, sym: &str) -> Self {
        let mut out = self.clone();
        if !out.contains(sym) {
            out.symbols.push(sym.to_string());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Timing {
    /// Every transition advances the input head.
    RealTime,
    /// Transitions may advance or keep the input head in place.
    OneWay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Deterministic,
    Nondeterministic,
    Alternating,
    Probabilistic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Existential,
    Universal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StorageSpec {
    /// One worktape, one head starting at the origin cell.
    Worktape { alphabet: Alphabet, blank: String },
    Stacks { count: usize, alphabet: Alphabet },
    /// Unary counters starting at zero.
    Counters { count: usize },
}

impl StorageSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            StorageSpec::Worktape { .. } => "worktape",
            StorageSpec::Stacks { .. } => "stacks",
            StorageSpec::Counters { .. } => "counters",
        }
    }

    /// Observation that matches any storage content.
    pub fn wildcard(&self) -> Observation {
        match self {
            StorageSpec::Worktape { .. } => Observation::Tape(TapeObs::Any),
            StorageSpec::Stacks { count, .. } => Observation::Stacks(vec![StackObs::Any; *count]),
            StorageSpec::Counters { count } => Observation::Counters(vec![CounterObs::Any; *count]),
        }
    }

    /// Action that leaves the storage untouched.
    pub fn noop(&self) -> StorageAction {
        match self {
            StorageSpec::Worktape { .. } => StorageAction::Tape { write: None, shift: Shift::Stay },
            StorageSpec::Stacks { count, .. } => StorageAction::Stacks(vec![StackOp::Noop; *count]),
            StorageSpec::Counters { count } => StorageAction::Counters(vec![CounterOp::Noop; *count]),
        }
    }
}

/// Input observation of a rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Read {
    Symbol(String),
    End,
}

impl Read {
    pub fn sym(s: &str) -> Self {
        Read::Symbol(s.to_string())
    }

    pub fn token(&self) -> &str {
        match self {
            Read::Symbol(s) => s,
            Read::End => ENDMARKER,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TapeObs {
    Any,
    Symbol(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StackObs {
    Any,
    Empty,
    Top(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CounterObs {
    Any,
    Zero,
    Positive,
}

/// Storage observation: all stack tops / counter zero-tests are seen at once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Observation {
    Tape(TapeObs),
    Stacks(Vec<StackObs>),
    Counters(Vec<CounterObs>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shift {
    Left,
    Right,
    Stay,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StackOp {
    Push(String),
    Pop,
    Noop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CounterOp {
    Inc,
    Dec,
    Noop,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StorageAction {
    /// `write: None` keeps the scanned symbol.
    Tape { write: Option<String>, shift: Shift },
    Stacks(Vec<StackOp>),
    Counters(Vec<CounterOp>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InputAction {
    Advance,
    Stay,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionRule {
    pub from: String,
    pub read: Read,
    pub observe: Observation,
    pub to: String,
    pub input_action: InputAction,
    pub storage_action: StorageAction,
    /// Present exactly for probabilistic machines.
    pub weight: Option<Ratio>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateDecl {
    pub id: String,
    pub label: Option<Label>,
}

impl StateDecl {
    pub fn new(id: impl Into<String>) -> Self {
        Self { id: id.into(), label: None }
    }

    pub fn labeled(id: impl Into<String>, label: Label) -> Self {
        Self { id: id.into(), label: Some(label) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Machine {
    pub name: String,
    pub timing: Timing,
    pub mode: Mode,
    pub input_alphabet: Alphabet,
    pub storage: StorageSpec,
    pub states: Vec<StateDecl>,
    pub initial: String,
    pub accepting: Vec<String>,
    pub transitions: Vec<TransitionRule>,
}

impl Machine {
    pub fn state(&self, id: &str) -> Option<&StateDecl> {
        self.states.iter().find(|s| s.id == id)
    }

    pub fn is_accepting(&self, id: &str) -> bool {
        self.accepting.iter().any(|a| a == id)
    }

    /// Effective label of a state: nondeterministic and deterministic
    /// machines are existential everywhere.
    pub fn label_of(&self, id: &str) -> Label {
        match self.mode {
            Mode::Alternating => self.state(id).and_then(|s| s.label).unwrap_or(Label::Existential),
            _ => Label::Existential,
        }
    }

    pub fn has_universal_states(&self) -> bool {
        self.mode == Mode::Alternating
            && self.states.iter().any(|s| s.label == Some(Label::Universal))
    }
}
