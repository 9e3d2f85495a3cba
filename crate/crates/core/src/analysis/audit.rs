use num_traits::One;
use rayon::prelude::*;

use crate::engine::{Budget, Decision, EngineError, Executor, Verdict};
use crate::machine::{Mode, Word};
use crate::oracles::LanguageId;
use crate::Ratio;

/// Largest number of strings an audit will enumerate.
pub const AUDIT_GUARD: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditOutcome {
    /// Strings evaluated; equals Σ_{i ≤ max_len} |Σ|^i on a pass.
    pub checked: u64,
    /// First string in length-lexicographic order where machine and oracle disagree.
    pub counterexample: Option<Word>,
}

impl AuditOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AuditError {
    #[error("{count} strings exceed the exhaustive guard of {AUDIT_GUARD}")]
    Guard { count: u128 },
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Σ_{i ≤ max_len} k^i, saturating.
pub fn strings_up_to(k: usize, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(k as u128);
    }
    total
}

/// The machine's verdict: the run for deterministic machines, probability
/// above 1/2 for probabilistic ones, the unbounded fixpoint otherwise.
pub fn machine_accepts<S: AsRef<str>>(ex: &Executor, w: &[S]) -> Result<bool, EngineError> {
    match ex.machine().mode {
        Mode::Deterministic => Ok(ex.run(w, false)?.verdict == Verdict::Accept),
        Mode::Probabilistic => {
            let half = Ratio::one() / Ratio::from_integer(2.into());
            Ok(ex.acceptance_probability(w)? > half)
        }
        _ => Ok(ex.decide(w, Budget::Unbounded)? == Decision::Accept),
    }
}

fn word_at(alphabet: &[String], len: usize, mut code: u64) -> Word {
    let k = alphabet.len() as u64;
    let mut w = vec![String::new(); len];
    for slot in w.iter_mut().rev() {
        *slot = alphabet[(code % k) as usize].clone();
        code /= k;
    }
    w
}

/// Compares the machine with the oracle on every string over `alphabet` of
/// length at most `max_len`, shortest first and lexicographic within a
/// length (in the order the alphabet is given).
pub fn equivalence_audit(
    ex: &Executor,
    lang: LanguageId,
    alphabet: &[String],
    max_len: usize,
) -> Result<AuditOutcome, AuditError> {
    if alphabet.is_empty() {
        return Err(AuditError::EmptyAlphabet);
    }
    let count = strings_up_to(alphabet.len(), max_len);
    if count > AUDIT_GUARD as u128 {
        return Err(AuditError::Guard { count });
    }
    let mut checked = 0;
    for len in 0..=max_len {
        let level = (alphabet.len() as u64).pow(len as u32);
        let mismatch = (0..level)
            .into_par_iter()
            .map(|code| {
                let w = word_at(alphabet, len, code);
                machine_accepts(ex, &w).map(|v| (v != lang.is_member(&w)).then_some(code))
            })
            .filter_map(|r| r.transpose())
            .find_first(|_| true)
            .transpose()?;
        if let Some(code) = mismatch {
            checked += code + 1;
            return Ok(AuditOutcome { checked, counterexample: Some(word_at(alphabet, len, code)) });
        }
        checked += level;
    }
    assert_eq!(checked as u128, count);
    Ok(AuditOutcome { checked, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin;

    fn syms(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn counts_and_guard() {
        assert_eq!(strings_up_to(3, 2), 13);
        assert_eq!(strings_up_to(1, 5), 6);
        let m = builtin("ld").unwrap();
        let ex = Executor::new(&m).unwrap();
        let out = equivalence_audit(&ex, LanguageId::Ld, &syms(&["a"]), 70).unwrap();
        assert_eq!(out, AuditOutcome { checked: 71, counterexample: None });
        assert!(matches!(
            equivalence_audit(&ex, LanguageId::Ld, &syms(&["a", "b", "c"]), 14),
            Err(AuditError::Guard { .. })
        ));
    }

    #[test]
    fn flipped_acceptance_finds_the_shortest_string() {
        let mut m = builtin("lj2").unwrap();
        let ex = Executor::new(&m).unwrap();
        assert!(equivalence_audit(&ex, LanguageId::Lj(2), &syms(&["a0", "a1"]), 8).unwrap().passed());
        let flipped: Vec<String> =
            m.states.iter().map(|s| s.id.clone()).filter(|id| !m.accepting.contains(id)).collect();
        m.accepting = flipped;
        let ex = Executor::new(&m).unwrap();
        let out = equivalence_audit(&ex, LanguageId::Lj(2), &syms(&["a0", "a1"]), 8).unwrap();
        // the flipped machine still rejects when no rule applies, so the
        // first disagreement is the shortest member
        assert_eq!(out.counterexample, Some(syms(&["a1", "a0"])));
        assert_eq!(out.checked, 1 + 2 + 3);
    }
}
