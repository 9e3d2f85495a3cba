//! Execution of machines: single runs, budgeted AND-OR evaluation over the
//! configuration graph, and exact acceptance probabilities.
//!
//! The input is always followed by an implicit endmarker. A computation
//! ends with the step that consumes the endmarker, and its verdict is
//! whether the state entered by that step is accepting. A configuration
//! with no applicable rule rejects.

mod program;
mod search;

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::machine::{Diagnostic, Machine, Mode, Timing, TransitionRule};
use crate::Ratio;

use program::{Config, Program, Sym};

pub use search::Exploration;

/// Safety valve for explicit configuration-graph searches.
pub const MAX_CONFIGS: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("machine failed validation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidMachine(Vec<Diagnostic>),
    #[error("input symbol {0:?} is not in the machine's alphabet")]
    UnknownSymbol(String),
    #[error("internal error: rule #{rule} trapped at runtime ({what})")]
    Trap { rule: usize, what: &'static str },
    #[error("operation requires a {expected} machine")]
    Unsupported { expected: &'static str },
    #[error("configuration graph exceeds {limit} configurations")]
    StateSpaceLimit { limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Decision {
    Accept,
    Reject,
    BudgetExceeded,
}

/// Space allowance for budgeted searches, in cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Budget {
    Cells(usize),
    Unbounded,
}

impl Budget {
    #[inline]
    pub fn admits(self, usage: usize) -> bool {
        match self {
            Budget::Cells(c) => usage <= c,
            Budget::Unbounded => true,
        }
    }
}

impl From<usize> for Budget {
    fn from(c: usize) -> Self {
        Budget::Cells(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StorageContent {
    /// Cells from the origin up to the last non-blank one.
    Worktape { cells: Vec<String>, head: usize },
    /// Bottom to top.
    Stacks(Vec<Vec<String>>),
    Counters(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub state: String,
    /// Index into the input followed by the endmarker.
    pub input_position: usize,
    pub storage: StorageContent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceProfile {
    pub max_usage: usize,
    /// Usage of the initial configuration followed by one entry per step.
    pub per_step_usage: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunResult {
    pub verdict: Verdict,
    pub steps: usize,
    pub space_profile: SpaceProfile,
    /// Configurations actually entered, starting with the initial one.
    pub trace: Option<Vec<Configuration>>,
    /// Number of input-stationary steps taken at each input position
    /// (the last entry is the endmarker).
    pub stay_runs: Vec<usize>,
}

/// A validated, compiled machine. Cheap to share across threads.
pub struct Executor<'m> {
    prog: Program<'m>,
}

impl<'m> Executor<'m> {
    pub fn new(machine: &'m Machine) -> Result<Self, EngineError> {
        Ok(Self { prog: Program::compile(machine)? })
    }

    pub fn machine(&self) -> &'m Machine {
        self.prog.machine
    }

    /// Runs a deterministic machine.
    pub fn run<S: AsRef<str>>(&self, w: &[S], trace: bool) -> Result<RunResult, EngineError> {
        if self.prog.machine.mode != Mode::Deterministic {
            return Err(EngineError::Unsupported { expected: "deterministic" });
        }
        self.run_guided(w, trace, |_, _| Some(0))
    }

    /// Follows one computation path of any machine. At each step `policy`
    /// sees the current configuration and the applicable rules and picks
    /// one of them by index; `None` abandons the path (reject).
    pub fn run_guided<S, F>(&self, w: &[S], trace: bool, mut policy: F) -> Result<RunResult, EngineError>
    where
        S: AsRef<str>,
        F: FnMut(&Configuration, &[&TransitionRule]) -> Option<usize>,
    {
        let p = &self.prog;
        let input = p.encode(w)?;
        let n = input.len();
        let realtime = p.machine.timing == Timing::RealTime;
        let mut c = p.initial_config();
        let mut usage = vec![c.store.usage()];
        let mut stay_runs = vec![0usize; n + 1];
        let mut tr = trace.then(|| vec![p.public_config(&c)]);
        let mut seen: HashSet<Config> = HashSet::new();
        let mut steps = 0usize;
        let verdict = loop {
            let rules: Vec<_> = p.applicable(&input, &c).collect();
            let chosen = if rules.is_empty() {
                None
            } else if rules.len() == 1 && p.machine.mode == Mode::Deterministic {
                Some(rules[0])
            } else {
                let public = p.public_config(&c);
                let view: Vec<&TransitionRule> = rules.iter().map(|r| &p.machine.transitions[r.index]).collect();
                policy(&public, &view).and_then(|i| rules.get(i).copied())
            };
            let Some(r) = chosen else {
                if realtime {
                    // implicit rejecting sink: keep reading to the endmarker
                    let u = *usage.last().expect("non-empty");
                    while steps < n + 1 {
                        steps += 1;
                        usage.push(u);
                    }
                }
                break Verdict::Reject;
            };
            let next = p.apply(&c, r)?;
            steps += 1;
            usage.push(next.store.usage());
            if !r.advance {
                stay_runs[c.pos as usize] += 1;
            }
            let finished = r.advance && c.pos as usize == n;
            if let Some(t) = tr.as_mut() {
                t.push(p.public_config(&next));
            }
            if finished {
                break if p.accepting[next.state as usize] { Verdict::Accept } else { Verdict::Reject };
            }
            if r.advance {
                seen.clear();
            } else if !seen.insert(next.clone()) {
                // repeated configuration without input progress
                break Verdict::Reject;
            }
            c = next;
        };
        debug_assert!(!realtime || steps == n + 1);
        let max_usage = usage.iter().copied().max().unwrap_or(0);
        Ok(RunResult {
            verdict,
            steps,
            space_profile: SpaceProfile { max_usage, per_step_usage: usage },
            trace: tr,
            stay_runs,
        })
    }

    /// Decides acceptance within a space budget. Probabilistic machines are
    /// read as nondeterministic (any positive-weight path counts).
    pub fn decide<S: AsRef<str>>(&self, w: &[S], budget: Budget) -> Result<Decision, EngineError> {
        let input = self.prog.encode(w)?;
        if self.prog.machine.has_universal_states() {
            search::attractor(&self.prog, &input, budget)
        } else {
            search::reach_accept(&self.prog, &input, budget)
        }
    }

    /// Explores every configuration reachable within `budget`.
    pub fn explore<S: AsRef<str>>(&self, w: &[S], budget: Budget) -> Result<Exploration, EngineError> {
        let input = self.prog.encode(w)?;
        search::explore(&self.prog, &input, budget)
    }

    /// Exact acceptance probability of a real-time probabilistic machine.
    pub fn acceptance_probability<S: AsRef<str>>(&self, w: &[S]) -> Result<Ratio, EngineError> {
        Ok(self.path_mass(w)?.0)
    }

    /// Exact (accept, reject) masses; they always sum to one.
    pub fn path_mass<S: AsRef<str>>(&self, w: &[S]) -> Result<(Ratio, Ratio), EngineError> {
        let p = &self.prog;
        if p.machine.mode != Mode::Probabilistic || p.machine.timing != Timing::RealTime {
            return Err(EngineError::Unsupported { expected: "real-time probabilistic" });
        }
        let input: Vec<Sym> = p.encode(w)?;
        let n = input.len();
        let mut accept = Ratio::zero();
        let mut reject = Ratio::zero();
        let mut layer: HashMap<Config, Ratio> = HashMap::from([(p.initial_config(), Ratio::one())]);
        for pos in 0..=n {
            let mut next: HashMap<Config, Ratio> = HashMap::new();
            for (c, mass) in layer {
                let mut any = false;
                for r in p.applicable(&input, &c) {
                    any = true;
                    let share = &mass * r.weight.as_ref().expect("validated weight");
                    let child = p.apply(&c, r)?;
                    if pos == n {
                        if p.accepting[child.state as usize] {
                            accept += share;
                        } else {
                            reject += share;
                        }
                    } else {
                        *next.entry(child).or_insert_with(Ratio::zero) += share;
                    }
                }
                if !any {
                    reject += mass;
                }
            }
            if next.len() > MAX_CONFIGS {
                return Err(EngineError::StateSpaceLimit { limit: MAX_CONFIGS });
            }
            layer = next;
        }
        assert!(layer.is_empty());
        assert_eq!(&accept + &reject, Ratio::one(), "path mass must be conserved");
        Ok((accept, reject))
    }
}

pub fn run_deterministic<S: AsRef<str>>(m: &Machine, w: &[S], trace: bool) -> Result<RunResult, EngineError> {
    Executor::new(m)?.run(w, trace)
}

pub fn decide_bounded<S: AsRef<str>>(m: &Machine, w: &[S], budget: Budget) -> Result<Decision, EngineError> {
    Executor::new(m)?.decide(w, budget)
}

pub fn acceptance_probability<S: AsRef<str>>(m: &Machine, w: &[S]) -> Result<Ratio, EngineError> {
    Executor::new(m)?.acceptance_probability(w)
}
