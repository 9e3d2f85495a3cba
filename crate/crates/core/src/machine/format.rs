//! JSON machine file format.
//!
//! ```json
//! {
//!   "name": "ld",
//!   "timing": "real-time",            // or "one-way"
//!   "mode": "deterministic",          // nondeterministic | alternating | probabilistic
//!   "input_alphabet": ["a"],
//!   "storage": {"kind": "worktape", "params": {"alphabet": ["#", "0"], "blank": "#"}},
//!   "states": [{"id": "q0"}, {"id": "u", "label": "universal"}],
//!   "initial": "q0",
//!   "accepting": ["acc"],
//!   "transitions": [
//!     {"from": "q0", "read": "a", "observe": "#", "to": "q1",
//!      "input_action": "advance", "storage_action": {"write": "0", "move": "R"}}
//!   ]
//! }
//! ```
//!
//! * `read` is an input symbol or `"$"` for the endmarker.
//! * worktape: `observe` is a symbol or `"*"`; `storage_action` is
//!   `{"write"?: symbol, "move": "L" | "R" | "S"}` (no `write` keeps the cell).
//! * stacks: `observe` is an array of a top symbol, `"_"` (empty) or `"*"`;
//!   `storage_action` is an array of `"push:<sym>"`, `"pop"`, `"noop"`.
//! * counters: `observe` is an array of `"zero"`, `"pos"`, `"*"`;
//!   `storage_action` is an array of `"inc"`, `"dec"`, `"noop"`.
//! * `weight` (probabilistic machines only) is a rational such as `"1/3"`.
//!   Stack and counter params are `{"count", "alphabet"}` and `{"count"}`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::*;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("malformed machine file at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("{field}: unknown {what} {name:?}")]
    Reference { field: String, what: &'static str, name: String },
    #[error("machine failed validation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMachine {
    name: String,
    timing: RawTiming,
    mode: RawMode,
    input_alphabet: Vec<String>,
    storage: RawStorage,
    states: Vec<RawState>,
    initial: String,
    accepting: Vec<String>,
    transitions: Vec<RawRule>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum RawTiming {
    RealTime,
    OneWay,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum RawMode {
    Deterministic,
    Nondeterministic,
    Alternating,
    Probabilistic,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum RawLabel {
    Existential,
    Universal,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStorage {
    kind: String,
    params: RawParams,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blank: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<RawLabel>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawObserve {
    One(String),
    Many(Vec<String>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawAction {
    Tape {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        write: Option<String>,
        #[serde(rename = "move")]
        shift: String,
    },
    Ops(Vec<String>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    from: String,
    read: String,
    observe: RawObserve,
    to: String,
    input_action: String,
    storage_action: RawAction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<String>,
}

fn field_err(field: String, message: impl Into<String>) -> ParseError {
    ParseError::Field { field, message: message.into() }
}

/// Parses and validates a machine file.
pub fn parse_machine(text: &str) -> Result<Machine, ParseError> {
    let raw: RawMachine = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let machine = from_raw(raw)?;
    let diags = validate_machine(&machine);
    if diags.is_empty() {
        Ok(machine)
    } else {
        Err(ParseError::Invalid(diags))
    }
}

/// Canonical pretty-printed JSON (newline terminated).
pub fn serialize_machine(m: &Machine) -> String {
    let raw = to_raw(m);
    let mut s = serde_json::to_string_pretty(&raw).expect("machine serializes");
    s.push('\n');
    s
}

fn from_raw(raw: RawMachine) -> Result<Machine, ParseError> {
    let storage = match raw.storage.kind.as_str() {
        "worktape" => StorageSpec::Worktape {
            alphabet: Alphabet::new(
                raw.storage.params.alphabet.ok_or_else(|| field_err("storage.params.alphabet".into(), "missing"))?,
            ),
            blank: raw.storage.params.blank.ok_or_else(|| field_err("storage.params.blank".into(), "missing"))?,
        },
        "stacks" => StorageSpec::Stacks {
            count: raw.storage.params.count.ok_or_else(|| field_err("storage.params.count".into(), "missing"))?,
            alphabet: Alphabet::new(
                raw.storage.params.alphabet.ok_or_else(|| field_err("storage.params.alphabet".into(), "missing"))?,
            ),
        },
        "counters" => StorageSpec::Counters {
            count: raw.storage.params.count.ok_or_else(|| field_err("storage.params.count".into(), "missing"))?,
        },
        other => return Err(field_err("storage.kind".into(), format!("unknown storage kind {other:?}"))),
    };
    let states: Vec<StateDecl> = raw
        .states
        .into_iter()
        .map(|s| StateDecl {
            id: s.id,
            label: s.label.map(|l| match l {
                RawLabel::Existential => Label::Existential,
                RawLabel::Universal => Label::Universal,
            }),
        })
        .collect();
    let ids: HashSet<&str> = states.iter().map(|s| s.id.as_str()).collect();
    let input_alphabet = Alphabet::new(raw.input_alphabet);
    let state_ref = |field: String, name: &str| -> Result<(), ParseError> {
        if ids.contains(name) {
            Ok(())
        } else {
            Err(ParseError::Reference { field, what: "state", name: name.to_string() })
        }
    };
    state_ref("initial".into(), &raw.initial)?;
    for (i, a) in raw.accepting.iter().enumerate() {
        state_ref(format!("accepting[{i}]"), a)?;
    }
    let mut transitions = Vec::with_capacity(raw.transitions.len());
    for (i, r) in raw.transitions.into_iter().enumerate() {
        let loc = |f: &str| format!("transitions[{i}].{f}");
        state_ref(loc("from"), &r.from)?;
        state_ref(loc("to"), &r.to)?;
        let read = if r.read == ENDMARKER {
            Read::End
        } else if input_alphabet.contains(&r.read) {
            Read::Symbol(r.read)
        } else {
            return Err(ParseError::Reference { field: loc("read"), what: "input symbol", name: r.read });
        };
        let input_action = match r.input_action.as_str() {
            "advance" => InputAction::Advance,
            "stay" => InputAction::Stay,
            other => return Err(field_err(loc("input_action"), format!("expected \"advance\" or \"stay\", found {other:?}"))),
        };
        let (observe, storage_action) = storage_from_raw(&storage, r.observe, r.storage_action, &loc)?;
        let weight = match r.weight {
            None => None,
            Some(w) => Some(
                w.parse::<Ratio>()
                    .map_err(|_| field_err(loc("weight"), format!("{w:?} is not a rational")))?,
            ),
        };
        transitions.push(TransitionRule { from: r.from, read, observe, to: r.to, input_action, storage_action, weight });
    }
    Ok(Machine {
        name: raw.name,
        timing: match raw.timing {
            RawTiming::RealTime => Timing::RealTime,
            RawTiming::OneWay => Timing::OneWay,
        },
        mode: match raw.mode {
            RawMode::Deterministic => Mode::Deterministic,
            RawMode::Nondeterministic => Mode::Nondeterministic,
            RawMode::Alternating => Mode::Alternating,
            RawMode::Probabilistic => Mode::Probabilistic,
        },
        input_alphabet,
        storage,
        states,
        initial: raw.initial,
        accepting: raw.accepting,
        transitions,
    })
}

fn storage_from_raw(
    spec: &StorageSpec,
    observe: RawObserve,
    action: RawAction,
    loc: &dyn Fn(&str) -> String,
) -> Result<(Observation, StorageAction), ParseError> {
    match spec {
        StorageSpec::Worktape { .. } => {
            let obs = match observe {
                RawObserve::One(s) if s == "*" => TapeObs::Any,
                RawObserve::One(s) => TapeObs::Symbol(s),
                RawObserve::Many(_) => return Err(field_err(loc("observe"), "worktape observation must be a single symbol")),
            };
            let RawAction::Tape { write, shift } = action else {
                return Err(field_err(loc("storage_action"), "worktape action must be {\"write\", \"move\"}"));
            };
            let shift = match shift.as_str() {
                "L" => Shift::Left,
                "R" => Shift::Right,
                "S" => Shift::Stay,
                other => return Err(field_err(loc("storage_action.move"), format!("expected L, R or S, found {other:?}"))),
            };
            Ok((Observation::Tape(obs), StorageAction::Tape { write, shift }))
        }
        StorageSpec::Stacks { .. } => {
            let RawObserve::Many(obs) = observe else {
                return Err(field_err(loc("observe"), "stack observation must be an array"));
            };
            let RawAction::Ops(ops) = action else {
                return Err(field_err(loc("storage_action"), "stack action must be an array"));
            };
            let obs = obs
                .into_iter()
                .map(|s| match s.as_str() {
                    "*" => StackObs::Any,
                    "_" => StackObs::Empty,
                    _ => StackObs::Top(s),
                })
                .collect();
            let ops = ops
                .into_iter()
                .map(|s| match s.as_str() {
                    "pop" => Ok(StackOp::Pop),
                    "noop" => Ok(StackOp::Noop),
                    _ => match s.strip_prefix("push:") {
                        Some(sym) => Ok(StackOp::Push(sym.to_string())),
                        None => Err(field_err(loc("storage_action"), format!("unknown stack operation {s:?}"))),
                    },
                })
                .collect::<Result<_, _>>()?;
            Ok((Observation::Stacks(obs), StorageAction::Stacks(ops)))
        }
        StorageSpec::Counters { .. } => {
            let RawObserve::Many(obs) = observe else {
                return Err(field_err(loc("observe"), "counter observation must be an array"));
            };
            let RawAction::Ops(ops) = action else {
                return Err(field_err(loc("storage_action"), "counter action must be an array"));
            };
            let obs = obs
                .into_iter()
                .map(|s| match s.as_str() {
                    "*" => Ok(CounterObs::Any),
                    "zero" => Ok(CounterObs::Zero),
                    "pos" => Ok(CounterObs::Positive),
                    _ => Err(field_err(loc("observe"), format!("unknown zero-test {s:?}"))),
                })
                .collect::<Result<_, _>>()?;
            let ops = ops
                .into_iter()
                .map(|s| match s.as_str() {
                    "inc" => Ok(CounterOp::Inc),
                    "dec" => Ok(CounterOp::Dec),
                    "noop" => Ok(CounterOp::Noop),
                    _ => Err(field_err(loc("storage_action"), format!("unknown counter operation {s:?}"))),
                })
                .collect::<Result<_, _>>()?;
            Ok((Observation::Counters(obs), StorageAction::Counters(ops)))
        }
    }
}

fn to_raw(m: &Machine) -> RawMachine {
    let storage = match &m.storage {
        StorageSpec::Worktape { alphabet, blank } => RawStorage {
            kind: "worktape".into(),
            params: RawParams { alphabet: Some(alphabet.symbols().to_vec()), blank: Some(blank.clone()), count: None },
        },
        StorageSpec::Stacks { count, alphabet } => RawStorage {
            kind: "stacks".into(),
            params: RawParams { count: Some(*count), alphabet: Some(alphabet.symbols().to_vec()), blank: None },
        },
        StorageSpec::Counters { count } => {
            RawStorage { kind: "counters".into(), params: RawParams { count: Some(*count), ..Default::default() } }
        }
    };
    RawMachine {
        name: m.name.clone(),
        timing: match m.timing {
            Timing::RealTime => RawTiming::RealTime,
            Timing::OneWay => RawTiming::OneWay,
        },
        mode: match m.mode {
            Mode::Deterministic => RawMode::Deterministic,
            Mode::Nondeterministic => RawMode::Nondeterministic,
            Mode::Alternating => RawMode::Alternating,
            Mode::Probabilistic => RawMode::Probabilistic,
        },
        input_alphabet: m.input_alphabet.symbols().to_vec(),
        storage,
        states: m
            .states
            .iter()
            .map(|s| RawState {
                id: s.id.clone(),
                label: s.label.map(|l| match l {
                    Label::Existential => RawLabel::Existential,
                    Label::Universal => RawLabel::Universal,
                }),
            })
            .collect(),
        initial: m.initial.clone(),
        accepting: m.accepting.clone(),
        transitions: m.transitions.iter().map(rule_to_raw).collect(),
    }
}

fn rule_to_raw(r: &TransitionRule) -> RawRule {
    let (observe, storage_action) = match (&r.observe, &r.storage_action) {
        (Observation::Tape(o), StorageAction::Tape { write, shift }) => (
            RawObserve::One(match o {
                TapeObs::Any => "*".into(),
                TapeObs::Symbol(s) => s.clone(),
            }),
            RawAction::Tape {
                write: write.clone(),
                shift: match shift {
                    Shift::Left => "L",
                    Shift::Right => "R",
                    Shift::Stay => "S",
                }
                .into(),
            },
        ),
        (obs, act) => {
            let obs = match obs {
                Observation::Stacks(v) => v
                    .iter()
                    .map(|o| match o {
                        StackObs::Any => "*".to_string(),
                        StackObs::Empty => "_".to_string(),
                        StackObs::Top(s) => s.clone(),
                    })
                    .collect(),
                Observation::Counters(v) => v
                    .iter()
                    .map(|o| match o {
                        CounterObs::Any => "*",
                        CounterObs::Zero => "zero",
                        CounterObs::Positive => "pos",
                    }
                    .to_string())
                    .collect(),
                Observation::Tape(TapeObs::Any) => vec!["*".to_string()],
                Observation::Tape(TapeObs::Symbol(s)) => vec![s.clone()],
            };
            let ops = match act {
                StorageAction::Stacks(v) => v
                    .iter()
                    .map(|op| match op {
                        StackOp::Push(s) => format!("push:{s}"),
                        StackOp::Pop => "pop".into(),
                        StackOp::Noop => "noop".into(),
                    })
                    .collect(),
                StorageAction::Counters(v) => v
                    .iter()
                    .map(|op| match op {
                        CounterOp::Inc => "inc",
                        CounterOp::Dec => "dec",
                        CounterOp::Noop => "noop",
                    }
                    .to_string())
                    .collect(),
                StorageAction::Tape { .. } => Vec::new(),
            };
            (RawObserve::Many(obs), RawAction::Ops(ops))
        }
    };
    RawRule {
        from: r.from.clone(),
        read: r.read.token().to_string(),
        observe,
        to: r.to.clone(),
        input_action: match r.input_action {
            InputAction::Advance => "advance",
            InputAction::Stay => "stay",
        }
        .into(),
        storage_action,
        weight: r.weight.as_ref().map(ToString::to_string),
    }
}
