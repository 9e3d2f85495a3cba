//! Small hand-written one-way machines used as a test corpus.

use crate::machine::*;

fn rule(from: &str, read: Read, observe: TapeObs, to: &str, input: InputAction, write: Option<&str>, shift: Shift) -> TransitionRule {
    TransitionRule {
        from: from.into(),
        read,
        observe: Observation::Tape(observe),
        to: to.into(),
        input_action: input,
        storage_action: StorageAction::Tape { write: write.map(String::from), shift },
        weight: None,
    }
}

fn sym(s: &str) -> TapeObs {
    TapeObs::Symbol(s.into())
}

fn tape(symbols: &[&str]) -> StorageSpec {
    StorageSpec::Worktape { alphabet: Alphabet::new(symbols.iter().copied()), blank: BLANK.into() }
}

use InputAction::{Advance, Stay};

/// Rules of the aⁿbⁿ (n ≥ 1) checker with state names prefixed by `p`:
/// mark the origin with a stationary step, write a 1 per a, turn around
/// with a stationary step at the first b, and erase one 1 per b.
fn anbn_rules(p: &str) -> Vec<TransitionRule> {
    let q = |s: &str| format!("{p}{s}");
    let (a, b) = (Read::sym("a"), Read::sym("b"));
    vec![
        rule(&q("q0"), a.clone(), sym(BLANK), &q("qa"), Stay, Some("⊢"), Shift::Right),
        rule(&q("qa"), a, sym(BLANK), &q("qa"), Advance, Some("1"), Shift::Right),
        rule(&q("qa"), b.clone(), sym(BLANK), &q("qb"), Stay, None, Shift::Left),
        rule(&q("qb"), b, sym("1"), &q("qb"), Advance, Some(BLANK), Shift::Left),
        rule(&q("qb"), Read::End, sym("⊢"), &q("acc"), Advance, None, Shift::Stay),
    ]
}

/// One-way deterministic machine for {aⁿbⁿ | n ≥ 1} using stationary steps.
pub fn anbn() -> Machine {
    Machine {
        name: "anbn".into(),
        timing: Timing::OneWay,
        mode: Mode::Deterministic,
        input_alphabet: Alphabet::new(["a", "b"]),
        storage: tape(&["⊢", "1", BLANK]),
        states: ["q0", "qa", "qb", "acc"].into_iter().map(StateDecl::new).collect(),
        initial: "q0".into(),
        accepting: vec!["acc".into()],
        transitions: anbn_rules(""),
    }
}

/// One-way nondeterministic machine for a⁺ whose accepting branch uses no
/// storage while a rejecting branch walks right on every symbol.
pub fn middle_weak() -> Machine {
    let a = Read::sym("a");
    Machine {
        name: "middle-weak".into(),
        timing: Timing::OneWay,
        mode: Mode::Nondeterministic,
        input_alphabet: Alphabet::new(["a"]),
        storage: tape(&["1", BLANK]),
        states: ["start", "p", "w"].into_iter().map(StateDecl::new).collect(),
        initial: "start".into(),
        accepting: vec!["p".into()],
        transitions: vec![
            rule("start", a.clone(), TapeObs::Any, "p", Advance, None, Shift::Stay),
            rule("start", a.clone(), TapeObs::Any, "w", Stay, None, Shift::Right),
            rule("p", a.clone(), TapeObs::Any, "p", Advance, None, Shift::Stay),
            rule("p", Read::End, TapeObs::Any, "p", Advance, None, Shift::Stay),
            rule("w", a, TapeObs::Any, "w", Advance, Some("1"), Shift::Right),
            rule("w", Read::End, TapeObs::Any, "w", Advance, None, Shift::Stay),
        ],
    }
}

/// One-way alternating machine for {aⁿbⁿ | n ≥ 2 even}: a universal split
/// into a parity check on the a's and the aⁿbⁿ checker.
pub fn alt_anbn_even() -> Machine {
    let mut transitions = Vec::new();
    for read in [Read::sym("a"), Read::sym("b"), Read::End] {
        transitions.push(rule("split", read.clone(), TapeObs::Any, "even", Stay, None, Shift::Stay));
        transitions.push(rule("split", read, TapeObs::Any, "c.q0", Stay, None, Shift::Stay));
    }
    for (from, a_to) in [("even", "odd"), ("odd", "even")] {
        transitions.push(rule(from, Read::sym("a"), TapeObs::Any, a_to, Advance, None, Shift::Stay));
        transitions.push(rule(from, Read::sym("b"), TapeObs::Any, from, Advance, None, Shift::Stay));
    }
    transitions.push(rule("even", Read::End, TapeObs::Any, "par.acc", Advance, None, Shift::Stay));
    transitions.extend(anbn_rules("c."));
    let mut states = vec![StateDecl::labeled("split", Label::Universal)];
    states.extend(["even", "odd", "par.acc", "c.q0", "c.qa", "c.qb", "c.acc"].into_iter().map(StateDecl::new));
    Machine {
        name: "alt-anbn-even".into(),
        timing: Timing::OneWay,
        mode: Mode::Alternating,
        input_alphabet: Alphabet::new(["a", "b"]),
        storage: tape(&["⊢", "1", BLANK]),
        states,
        initial: "split".into(),
        accepting: vec!["par.acc".into(), "c.acc".into()],
        transitions,
    }
}

pub fn build_fixtures() -> Vec<Machine> {
    vec![anbn(), middle_weak(), alt_anbn_even()]
}
