use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use super::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    Alphabet,
    Storage,
    States,
    Labels,
    Reference,
    Shape,
    RealTime,
    Weights,
    Determinism,
    UnguardedAction,
}

/// One violated machine invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    /// Index into `Machine::transitions`, when a single rule is at fault.
    pub rule: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            Some(r) => write!(f, "rule #{r}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

struct Collector(Vec<Diagnostic>);

impl Collector {
    fn push(&mut self, kind: DiagnosticKind, rule: Option<usize>, message: impl Into<String>) {
        self.0.push(Diagnostic { kind, rule, message: message.into() });
    }
}

fn reserved_token(tok: &str) -> bool {
    tok.is_empty() || tok.contains('^') || tok.chars().any(char::is_whitespace)
}

/// Checks every machine invariant; an empty list means the machine is
/// executable. Whether a worktape head can be driven left of the origin is not
/// decidable from the rules alone, so that case is trapped by the engine.
pub fn validate_machine(m: &Machine) -> Vec<Diagnostic> {
    use DiagnosticKind as K;
    let mut d = Collector(Vec::new());

    // alphabets
    let mut seen = HashSet::new();
    for s in m.input_alphabet.symbols() {
        if !seen.insert(s.as_str()) {
            d.push(K::Alphabet, None, format!("duplicate input symbol {s:?}"));
        }
        if s == ENDMARKER {
            d.push(K::Alphabet, None, "endmarker \"$\" is engine-supplied and cannot be an input symbol");
        }
        if reserved_token(s) {
            d.push(K::Alphabet, None, format!("input symbol {s:?} is empty or contains reserved characters"));
        }
        if s == KAPPA && m.timing != Timing::RealTime {
            d.push(K::Alphabet, None, "padding symbol κ only belongs to padded (real-time) machines");
        }
    }
    match &m.storage {
        StorageSpec::Worktape { alphabet, blank } => {
            if !alphabet.contains(blank) {
                d.push(K::Storage, None, format!("blank {blank:?} missing from worktape alphabet"));
            }
            if m.input_alphabet.contains(blank) {
                d.push(K::Alphabet, None, format!("blank {blank:?} cannot be an input symbol"));
            }
            for s in alphabet.symbols() {
                if s == "*" || reserved_token(s) {
                    d.push(K::Storage, None, format!("worktape symbol {s:?} is reserved"));
                }
            }
        }
        StorageSpec::Stacks { count, alphabet } => {
            if *count == 0 {
                d.push(K::Storage, None, "stack count must be at least 1");
            }
            for s in alphabet.symbols() {
                if s == "*" || s == "_" || reserved_token(s) {
                    d.push(K::Storage, None, format!("stack symbol {s:?} is reserved"));
                }
            }
        }
        StorageSpec::Counters { count } => {
            if *count == 0 {
                d.push(K::Storage, None, "counter count must be at least 1");
            }
        }
    }

    // states
    let mut ids = HashSet::new();
    for s in &m.states {
        if !ids.insert(s.id.as_str()) {
            d.push(K::States, None, format!("duplicate state {:?}", s.id));
        }
        if s.label == Some(Label::Universal) && m.mode != Mode::Alternating {
            d.push(K::Labels, None, format!("universal state {:?} in a non-alternating machine", s.id));
        }
    }
    if !ids.contains(m.initial.as_str()) {
        d.push(K::Reference, None, format!("initial state {:?} is not declared", m.initial));
    }
    for a in &m.accepting {
        if !ids.contains(a.as_str()) {
            d.push(K::Reference, None, format!("accepting state {a:?} is not declared"));
        }
    }

    // rules
    for (i, r) in m.transitions.iter().enumerate() {
        let at = Some(i);
        if !ids.contains(r.from.as_str()) {
            d.push(K::Reference, at, format!("unknown source state {:?}", r.from));
        }
        if !ids.contains(r.to.as_str()) {
            d.push(K::Reference, at, format!("unknown target state {:?}", r.to));
        }
        if let Read::Symbol(s) = &r.read {
            if !m.input_alphabet.contains(s) {
                d.push(K::Reference, at, format!("unknown input symbol {s:?}"));
            }
        }
        if m.timing == Timing::RealTime && r.input_action == InputAction::Stay {
            d.push(K::RealTime, at, "stay move in a real-time machine");
        }
        match (m.mode, &r.weight) {
            (Mode::Probabilistic, None) => d.push(K::Weights, at, "probabilistic rule without weight"),
            (Mode::Probabilistic, Some(w)) if *w <= Ratio::zero() => {
                d.push(K::Weights, at, format!("weight {w} is not positive"))
            }
            (Mode::Probabilistic, Some(_)) => {}
            (_, Some(_)) => d.push(K::Weights, at, "weight on a non-probabilistic rule"),
            (_, None) => {}
        }
        check_storage_shape(&m.storage, i, r, &mut d);
    }

    // branching structure
    let mut groups: HashMap<(&str, &Read), Vec<usize>> = HashMap::new();
    for (i, r) in m.transitions.iter().enumerate() {
        groups.entry((r.from.as_str(), &r.read)).or_default().push(i);
    }
    let mut keys: Vec<_> = groups.keys().copied().collect();
    keys.sort_by(|a, b| (a.0, a.1.token()).cmp(&(b.0, b.1.token())));
    for key in keys {
        let rules = &groups[&key];
        let mut branching = false;
        for (x, &i) in rules.iter().enumerate() {
            for &j in &rules[x + 1..] {
                let (a, b) = (&m.transitions[i], &m.transitions[j]);
                if !observations_overlap(&a.observe, &b.observe) {
                    continue;
                }
                branching = true;
                match m.mode {
                    Mode::Deterministic => d.push(
                        K::Determinism,
                        Some(j),
                        format!("nondeterministic fan-out in deterministic mode (overlaps rule #{i})"),
                    ),
                    Mode::Probabilistic if a.observe != b.observe => d.push(
                        K::Weights,
                        Some(j),
                        format!("observation partially overlaps rule #{i}; weights are ambiguous"),
                    ),
                    _ => {}
                }
            }
        }
        if branching && m.mode == Mode::Alternating {
            if let Some(s) = m.state(key.0) {
                if s.label.is_none() {
                    d.push(K::Labels, None, format!("branching state {:?} carries no existential/universal label", s.id));
                }
            }
        }
        if m.mode == Mode::Probabilistic {
            let mut sums: Vec<(&Observation, Ratio, usize)> = Vec::new();
            for &i in rules {
                let r = &m.transitions[i];
                let w = r.weight.clone().unwrap_or_else(Ratio::zero);
                match sums.iter_mut().find(|(o, _, _)| **o == r.observe) {
                    Some(entry) => entry.1 += w,
                    None => sums.push((&r.observe, w, i)),
                }
            }
            for (_, total, first) in sums {
                if !total.is_one() {
                    d.push(K::Weights, Some(first), format!("weights sum to {total} ≠ 1"));
                }
            }
        }
    }
    d.0
}

fn check_storage_shape(spec: &StorageSpec, i: usize, r: &TransitionRule, d: &mut Collector) {
    use DiagnosticKind as K;
    let at = Some(i);
    match (spec, &r.observe, &r.storage_action) {
        (StorageSpec::Worktape { alphabet, .. }, Observation::Tape(obs), StorageAction::Tape { write, .. }) => {
            if let TapeObs::Symbol(s) = obs {
                if !alphabet.contains(s) {
                    d.push(K::Reference, at, format!("unknown worktape symbol {s:?} observed"));
                }
            }
            if let Some(s) = write {
                if !alphabet.contains(s) {
                    d.push(K::Reference, at, format!("unknown worktape symbol {s:?} written"));
                }
            }
        }
        (StorageSpec::Stacks { count, alphabet }, Observation::Stacks(obs), StorageAction::Stacks(ops)) => {
            if obs.len() != *count || ops.len() != *count {
                d.push(K::Shape, at, format!("expected {count} stack observations and operations"));
                return;
            }
            for (k, (o, op)) in obs.iter().zip(ops).enumerate() {
                if let StackObs::Top(s) = o {
                    if !alphabet.contains(s) {
                        d.push(K::Reference, at, format!("unknown stack symbol {s:?} observed on stack {k}"));
                    }
                }
                match op {
                    StackOp::Push(s) if !alphabet.contains(s) => {
                        d.push(K::Reference, at, format!("unknown stack symbol {s:?} pushed on stack {k}"))
                    }
                    StackOp::Pop if !matches!(o, StackObs::Top(_)) => {
                        d.push(K::UnguardedAction, at, format!("pop on stack {k} is enabled when the stack may be empty"))
                    }
                    _ => {}
                }
            }
        }
        (StorageSpec::Counters { count }, Observation::Counters(obs), StorageAction::Counters(ops)) => {
            if obs.len() != *count || ops.len() != *count {
                d.push(K::Shape, at, format!("expected {count} counter observations and operations"));
                return;
            }
            for (k, (o, op)) in obs.iter().zip(ops).enumerate() {
                if *op == CounterOp::Dec && *o != CounterObs::Positive {
                    d.push(K::UnguardedAction, at, format!("decrement of counter {k} is enabled when it may be zero"));
                }
            }
        }
        _ => d.push(K::Shape, at, format!("observation/action do not match {} storage", spec.kind_name())),
    }
}

pub(crate) fn observations_overlap(a: &Observation, b: &Observation) -> bool {
    match (a, b) {
        (Observation::Tape(x), Observation::Tape(y)) => match (x, y) {
            (TapeObs::Any, _) | (_, TapeObs::Any) => true,
            (TapeObs::Symbol(p), TapeObs::Symbol(q)) => p == q,
        },
        (Observation::Stacks(xs), Observation::Stacks(ys)) => xs.iter().zip(ys).all(|(x, y)| match (x, y) {
            (StackObs::Any, _) | (_, StackObs::Any) => true,
            (StackObs::Empty, StackObs::Empty) => true,
            (StackObs::Top(p), StackObs::Top(q)) => p == q,
            _ => false,
        }),
        (Observation::Counters(xs), Observation::Counters(ys)) => xs.iter().zip(ys).all(|(x, y)| {
            matches!((x, y), (CounterObs::Any, _) | (_, CounterObs::Any)) || x == y
        }),
        _ => false,
    }
}
