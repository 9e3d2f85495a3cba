//! The κ-padding transform: a real-time emulation of a one-way machine
//! that consumes one κ for every input-stationary step.
//!
//! State `q` of the padded machine stands for `q` after an advancing step
//! (it skips any κ's). State `q@x` stands for `q` after a stationary step
//! taken on symbol `x`: it must read a κ, and then replays the rules of
//! `(q, x)`. A stationary step on the endmarker cannot be emulated because
//! nothing follows the endmarker, so such rules are dropped.

use std::collections::{HashSet, VecDeque};

use crate::machine::*;

/// Number of κ's inserted after every symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadParams {
    pub t: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadError {
    #[error("machine {0:?} is already real-time")]
    AlreadyRealTime(String),
    #[error("machine {0:?} already uses κ as an input symbol")]
    ContainsKappa(String),
}

fn pending(q: &str, x: &str) -> String {
    format!("{q}@{x}")
}

pub fn pad_machine(m: &Machine) -> Result<Machine, PadError> {
    if m.timing == Timing::RealTime {
        return Err(PadError::AlreadyRealTime(m.name.clone()));
    }
    if m.input_alphabet.contains(KAPPA) {
        return Err(PadError::ContainsKappa(m.name.clone()));
    }
    let kappa = Read::sym(KAPPA);
    let mut states: Vec<StateDecl> = m.states.clone();
    let mut transitions = Vec::new();

    // rules of m emitted from padded state `from`, reading `read`
    let emit = |from: &str, read: &Read, x: Option<&str>, r: &TransitionRule, out: &mut Vec<TransitionRule>| -> Option<(String, String)> {
        let (to, spawned) = match (r.input_action, &r.read) {
            (InputAction::Advance, _) => (r.to.clone(), None),
            (InputAction::Stay, Read::End) => return None,
            (InputAction::Stay, Read::Symbol(s)) => {
                let s = x.unwrap_or(s);
                (pending(&r.to, s), Some((r.to.clone(), s.to_string())))
            }
        };
        out.push(TransitionRule {
            from: from.to_string(),
            read: read.clone(),
            observe: r.observe.clone(),
            to,
            input_action: InputAction::Advance,
            storage_action: r.storage_action.clone(),
            weight: r.weight.clone(),
        });
        spawned
    };

    let mut queue: VecDeque<(String, String)> = VecDeque::new();
    for r in &m.transitions {
        if let Some(p) = emit(&r.from, &r.read, None, r, &mut transitions) {
            queue.push_back(p);
        }
    }
    for s in &m.states {
        transitions.push(TransitionRule {
            from: s.id.clone(),
            read: kappa.clone(),
            observe: m.storage.wildcard(),
            to: s.id.clone(),
            input_action: InputAction::Advance,
            storage_action: m.storage.noop(),
            weight: (m.mode == Mode::Probabilistic).then(num_traits::One::one),
        });
    }
    let mut seen: HashSet<(String, String)> = HashSet::new();
    while let Some((q, x)) = queue.pop_front() {
        if !seen.insert((q.clone(), x.clone())) {
            continue;
        }
        let label = m.state(&q).and_then(|s| s.label);
        states.push(StateDecl { id: pending(&q, &x), label });
        let from = pending(&q, &x);
        for r in m.transitions.iter().filter(|r| r.from == q && r.read == Read::Symbol(x.clone())) {
            if let Some(p) = emit(&from, &kappa, Some(&x), r, &mut transitions) {
                queue.push_back(p);
            }
        }
    }
    Ok(Machine {
        name: format!("{}-kappa", m.name),
        timing: Timing::RealTime,
        mode: m.mode,
        input_alphabet: m.input_alphabet.with(KAPPA),
        storage: m.storage.clone(),
        states,
        initial: m.initial.clone(),
        accepting: m.accepting.clone(),
        transitions,
    })
}

/// Inserts `p.t` κ's after every symbol of `w`.
pub fn pad_string<S: AsRef<str>>(w: &[S], p: PadParams) -> Word {
    let mut out = Vec::with_capacity(w.len() * (p.t + 1));
    for s in w {
        out.push(s.as_ref().to_string());
        out.extend(std::iter::repeat_n(KAPPA.to_string(), p.t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pad_string_examples() {
        assert_eq!(pad_string(&["a", "b"], PadParams { t: 2 }), vec!["a", "κ", "κ", "b", "κ", "κ"]);
        assert_eq!(pad_string(&["a", "b"], PadParams { t: 0 }), vec!["a", "b"]);
        assert!(pad_string::<&str>(&[], PadParams { t: 3 }).is_empty());
    }

    #[test]
    fn refuses_real_time_input() {
        let m = crate::constructions::build_ld_machine();
        assert_eq!(pad_machine(&m), Err(PadError::AlreadyRealTime("ld".into())));
    }
}
