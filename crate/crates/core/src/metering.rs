//! Strong, middle and weak space measurement.
//!
//! * weak: the least budget admitting an accepting computation;
//! * middle: on an accepted input, the largest usage of any reachable
//!   configuration, rejecting branches included;
//! * strong: the largest reachable usage over a set of inputs of one length.
//!
//! All procedures work under a cap and report whether it cut anything off.

use serde::{Deserialize, Serialize};

use crate::engine::{Budget, Decision, EngineError, Executor};
use crate::machine::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceMode {
    Strong,
    Middle,
    Weak,
}

impl SpaceMode {
    pub const ALL: [SpaceMode; 3] = [SpaceMode::Strong, SpaceMode::Middle, SpaceMode::Weak];

    pub fn name(self) -> &'static str {
        match self {
            SpaceMode::Strong => "strong",
            SpaceMode::Middle => "middle",
            SpaceMode::Weak => "weak",
        }
    }
}

impl std::str::FromStr for SpaceMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strong" => Ok(SpaceMode::Strong),
            "middle" => Ok(SpaceMode::Middle),
            "weak" => Ok(SpaceMode::Weak),
            _ => Err(format!("unknown space mode {s:?} (strong, middle, weak)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Measurement {
    /// `None` when the input is not accepted within the cap (weak, middle).
    pub space: Option<usize>,
    /// The cap pruned at least one configuration.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeterError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("exhaustive enumeration of {alphabet}^{n} inputs is beyond the supported range")]
    TooManyInputs { alphabet: usize, n: usize },
}

/// Input set for strong-space measurement.
#[derive(Clone, Debug)]
pub enum StrongInputs {
    Explicit(Vec<Word>),
    Exhaustive,
}

/// Cap used by sweeps for inputs of length `n`: 4·(⌈log2(n+2)⌉ + 2).
pub fn default_cap(n: usize) -> usize {
    let bits = usize::BITS - (n + 1).leading_zeros();
    4 * (bits as usize + 2)
}

pub fn measure_weak_space<S: AsRef<str>>(ex: &Executor, w: &[S], cap: usize) -> Result<Measurement, MeterError> {
    // Deepening from below keeps branching machines (whose guesses widen
    // with the budget) cheap on accepted inputs.
    let mut last = Decision::Reject;
    for s in 0..=cap {
        last = ex.decide(w, Budget::Cells(s))?;
        match last {
            Decision::Accept => return Ok(Measurement { space: Some(s), truncated: false }),
            // nothing was pruned, so a larger budget cannot help
            Decision::Reject => break,
            Decision::BudgetExceeded => {}
        }
    }
    Ok(Measurement { space: None, truncated: last == Decision::BudgetExceeded })
}

pub fn measure_middle_space<S: AsRef<str>>(ex: &Executor, w: &[S], cap: usize) -> Result<Measurement, MeterError> {
    match ex.decide(w, Budget::Cells(cap))? {
        Decision::Accept => {}
        d => return Ok(Measurement { space: None, truncated: d == Decision::BudgetExceeded }),
    }
    let e = ex.explore(w, Budget::Cells(cap))?;
    Ok(Measurement { space: Some(e.max_usage), truncated: e.truncated })
}

pub fn measure_strong_space(
    ex: &Executor,
    n: usize,
    cap: usize,
    inputs: &StrongInputs,
) -> Result<Measurement, MeterError> {
    let words: Vec<Word> = match inputs {
        StrongInputs::Explicit(v) => v.iter().filter(|w| w.len() == n).cloned().collect(),
        StrongInputs::Exhaustive => all_words(ex, n)?,
    };
    let mut space = 0;
    let mut truncated = false;
    for w in &words {
        let e = ex.explore(w, Budget::Cells(cap))?;
        space = space.max(e.max_usage);
        truncated |= e.truncated;
    }
    Ok(Measurement { space: Some(space), truncated })
}

/// Measures a single input; strong space is then taken over `{w}` alone.
pub fn measure<S: AsRef<str>>(ex: &Executor, mode: SpaceMode, w: &[S], cap: usize) -> Result<Measurement, MeterError> {
    match mode {
        SpaceMode::Weak => measure_weak_space(ex, w, cap),
        SpaceMode::Middle => measure_middle_space(ex, w, cap),
        SpaceMode::Strong => {
            let e = ex.explore(w, Budget::Cells(cap))?;
            Ok(Measurement { space: Some(e.max_usage), truncated: e.truncated })
        }
    }
}

fn all_words(ex: &Executor, n: usize) -> Result<Vec<Word>, MeterError> {
    let sigma = ex.machine().input_alphabet.symbols();
    let k = sigma.len();
    if !(k <= 1 || (k <= 3 && n <= 14)) {
        return Err(MeterError::TooManyInputs { alphabet: k, n });
    }
    if k == 0 {
        return Ok(if n == 0 { vec![Vec::new()] } else { Vec::new() });
    }
    let total = k.pow(n as u32);
    Ok((0..total)
        .map(|mut code| {
            let mut w = Vec::with_capacity(n);
            for _ in 0..n {
                w.push(sigma[code % k].clone());
                code /= k;
            }
            w
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_cap_values() {
        // ⌈log2(n+2)⌉ = 1, 2, 2, 3
        assert_eq!(default_cap(0), 12);
        assert_eq!(default_cap(1), 16);
        assert_eq!(default_cap(2), 16);
        assert_eq!(default_cap(3), 20);
        assert_eq!(default_cap(6), 20);
        assert_eq!(default_cap(7), 24);
    }
}
