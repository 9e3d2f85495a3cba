//! Real-time counter machines for the nested ladder languages over
//! a0 … a(j−1).
//!
//! Level 2 checks a1 a0 a1 a0² … a1 a0ᵏ with two counters: during a block
//! the counter holding the previous block length is moved into the other
//! one, and the block must be exactly one symbol longer. Level ℓ ≥ 3 runs
//! level ℓ−1 on every a(ℓ−1)-delimited piece and uses one more counter,
//! preloaded with i−1 at the start of piece i, to check that the piece has
//! exactly i top-level blocks. When a piece ends, the inner result counter
//! (holding i) takes over that role and the zeroed counters are recycled.
//!
//! Counter roles live in the finite control, so a copy of the machine can
//! keep a single counter and still perform every check that depends on it.

use num_traits::One;

use crate::machine::*;
use crate::Ratio;

use super::controller::{compile, mixture, Controller, Header, Move};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Lvl {
    Two { prev: u8, cur: u8, fresh: bool, done: bool },
    Nest { level: u8, extra: u8, fresh: bool, reached: bool, inner: Box<Lvl> },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum S {
    Run(Lvl),
    Accept,
}

type Ops = Vec<(u8, CounterOp)>;

impl Lvl {
    fn fresh(level: u8, counters: &[u8]) -> Lvl {
        if level == 2 {
            Lvl::Two { prev: counters[0], cur: counters[1], fresh: true, done: false }
        } else {
            let (extra, rest) = counters.split_last().expect("one counter per level");
            Lvl::Nest { level, extra: *extra, fresh: true, reached: false, inner: Box::new(Lvl::fresh(level - 1, rest)) }
        }
    }

    fn counters(&self, out: &mut Vec<u8>) {
        match self {
            Lvl::Two { prev, cur, .. } => out.extend([*prev, *cur]),
            Lvl::Nest { extra, inner, .. } => {
                out.push(*extra);
                inner.counters(out);
            }
        }
    }

    fn can_end(&self) -> bool {
        match self {
            Lvl::Two { fresh, done, .. } => !fresh && *done,
            Lvl::Nest { fresh, reached, inner, .. } => !fresh && *reached && inner.can_end(),
        }
    }

    /// Counter holding the block count after a complete word.
    fn result(&self) -> u8 {
        match self {
            Lvl::Two { cur, .. } => *cur,
            Lvl::Nest { inner, .. } => inner.result(),
        }
    }

    /// `zero(c)` is the zero test of counter c, `None` if it is not kept.
    fn step(&self, sym: u8, zero: &dyn Fn(u8) -> Option<bool>, ops: &mut Ops) -> Option<Lvl> {
        match self.clone() {
            Lvl::Two { prev, cur, fresh, done } => match sym {
                1 if fresh => Some(Lvl::Two { prev, cur, fresh: false, done: false }),
                1 if done => Some(Lvl::Two { prev: cur, cur: prev, fresh: false, done: false }),
                0 if !fresh => match zero(prev) {
                    Some(false) => {
                        ops.extend([(prev, CounterOp::Dec), (cur, CounterOp::Inc)]);
                        Some(Lvl::Two { prev, cur, fresh, done })
                    }
                    Some(true) if done => None,
                    _ => {
                        ops.push((cur, CounterOp::Inc));
                        Some(Lvl::Two { prev, cur, fresh, done: true })
                    }
                },
                _ => None,
            },
            Lvl::Nest { level, extra, fresh, reached, inner } => {
                let own = level - 1;
                if sym == own {
                    if fresh {
                        return Some(Lvl::Nest { level, extra, fresh: false, reached: false, inner });
                    }
                    if !(reached && inner.can_end()) {
                        return None;
                    }
                    let result = inner.result();
                    let mut free = vec![extra];
                    inner.counters(&mut free);
                    free.retain(|&c| c != result);
                    free.sort_unstable();
                    let inner = Lvl::fresh(level - 1, &free);
                    return Some(Lvl::Nest { level, extra: result, fresh: false, reached: false, inner: Box::new(inner) });
                }
                if fresh || sym > own {
                    return None;
                }
                let mut reached = reached;
                if sym == own - 1 {
                    match zero(extra) {
                        Some(false) => ops.push((extra, CounterOp::Dec)),
                        Some(true) if reached => return None,
                        _ => reached = true,
                    }
                }
                let inner = inner.step(sym, zero, ops)?;
                Some(Lvl::Nest { level, extra, fresh, reached, inner: Box::new(inner) })
            }
        }
    }

    fn name(&self, out: &mut String) {
        match self {
            Lvl::Two { prev, cur, fresh, done } => {
                out.push_str(&format!("L2[{prev}{cur}{}{}]", u8::from(*fresh), u8::from(*done)));
            }
            Lvl::Nest { level, extra, fresh, reached, inner } => {
                out.push_str(&format!("L{level}[{extra}{}{}]", u8::from(*fresh), u8::from(*reached)));
                inner.name(out);
            }
        }
    }
}

struct Lj {
    j: u8,
    /// Logical counters kept physically.
    tracked: Vec<bool>,
}

impl Lj {
    fn phys(&self, c: u8) -> Option<usize> {
        let c = c as usize;
        self.tracked[c].then(|| self.tracked[..c].iter().filter(|t| **t).count())
    }

    fn action(&self, ops: &Ops) -> StorageAction {
        let n = self.tracked.iter().filter(|t| **t).count();
        let mut v = vec![CounterOp::Noop; n];
        for (c, op) in ops {
            if let Some(p) = self.phys(*c) {
                v[p] = *op;
            }
        }
        StorageAction::Counters(v)
    }
}

impl Controller for Lj {
    type State = S;

    fn initial(&self) -> S {
        let all: Vec<u8> = (0..self.j).collect();
        S::Run(Lvl::fresh(self.j, &all))
    }

    fn state_name(&self, s: &S) -> String {
        match s {
            S::Accept => "accept".into(),
            S::Run(l) => {
                let mut out = String::new();
                l.name(&mut out);
                out
            }
        }
    }

    fn is_accepting(&self, s: &S) -> bool {
        *s == S::Accept
    }

    fn step(&self, s: &S, read: &Read, obs: &Observation) -> Vec<Move<S>> {
        let (S::Run(l), Observation::Counters(obs)) = (s, obs) else { return vec![] };
        let zero = |c: u8| self.phys(c).map(|p| obs[p] == CounterObs::Zero);
        let noop = self.action(&Vec::new());
        match read {
            Read::End => {
                if l.can_end() {
                    vec![Move::advance(S::Accept, noop)]
                } else {
                    vec![]
                }
            }
            Read::Symbol(tok) => {
                let sym: u8 = tok[1..].parse().expect("token a<d>");
                let mut ops = Vec::new();
                match l.step(sym, &zero, &mut ops) {
                    Some(next) => vec![Move::advance(S::Run(next), self.action(&ops))],
                    None => vec![],
                }
            }
        }
    }
}

fn header(name: String, j: usize, counters: usize) -> Header {
    Header {
        name,
        timing: Timing::RealTime,
        mode: Mode::Deterministic,
        input_alphabet: Alphabet::new(crate::oracles::lj_alphabet(j)),
        storage: StorageSpec::Counters { count: counters },
    }
}

/// Deterministic real-time machine with `j` counters.
pub fn build_lj_counters(j: usize) -> Machine {
    assert!((2..=9).contains(&j), "supported for 2 ≤ j ≤ 9");
    compile(&Lj { j: j as u8, tracked: vec![true; j] }, header(format!("lj{j}"), j, j))
}

/// One-counter copy keeping only counter `p` of the `j`-counter machine.
pub fn build_lj_single(j: usize, p: usize) -> Machine {
    assert!((2..=9).contains(&j) && p < j);
    let mut tracked = vec![false; j];
    tracked[p] = true;
    compile(&Lj { j: j as u8, tracked }, header(format!("lj{j}-counter{p}"), j, 1))
}

/// Acceptance probability of members: the midpoint of (1/2, j/(2(j−1))),
/// that is (2j−1)/(4(j−1)).
pub fn lj_member_probability(j: usize) -> Ratio {
    let j = j as i64;
    Ratio::new((2 * j - 1).into(), (4 * (j - 1)).into())
}

/// Upper bound on the acceptance probability of non-members.
pub fn lj_nonmember_bound(j: usize) -> Ratio {
    lj_member_probability(j) * Ratio::new((j as i64 - 1).into(), (j as i64).into())
}

/// Distance of the nearer side from the 1/2 threshold.
pub fn lj_gap(j: usize) -> Ratio {
    let half = Ratio::new(1.into(), 2.into());
    let above = lj_member_probability(j) - &half;
    let below = half - lj_nonmember_bound(j);
    above.min(below)
}

/// Rejects with probability 1 − p(j), otherwise runs one of the `j`
/// single-counter copies uniformly.
pub fn build_prob_lj_counter(j: usize) -> Machine {
    let accept = lj_member_probability(j);
    let share = &accept / Ratio::from_integer((j as i64).into());
    let paths: Vec<(Ratio, Machine)> = (0..j).map(|p| (share.clone(), build_lj_single(j, p))).collect();
    let m = mixture(&format!("prob-lj{j}"), &paths, Ratio::one() - accept);
    assert!(lj_gap(j) > Ratio::from_integer(0.into()));
    m
}
