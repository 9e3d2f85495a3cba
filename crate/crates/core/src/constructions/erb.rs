//! Real-time stack machines for the language of a-delimited blocks
//! (0)₂ (1)₂ʳ (2)₂ (3)₂ʳ … (2k)₂ (2k+1)₂ʳ.
//!
//! Stack 1 checks the pairs (block 2i, block 2i+1): the forward block is
//! pushed, so its least significant bit ends on top, and is popped against
//! the reversed successor. Stack 2 checks (block 2i+1, block 2i+2): the
//! reversed block is pushed, most significant bit on top, and popped
//! against the forward successor with a small comparator for x+1 read
//! from the most significant end.
//!
//! The controller can track either stack alone; the probabilistic machine
//! runs one single-stack copy per stack.

use num_traits::One;

use crate::machine::*;
use crate::Ratio;

use super::controller::{compile, mixture, Controller, Header, Move};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Cmp {
    /// Nothing compared yet.
    Start,
    /// Equal so far, all ones.
    Ones,
    /// Equal so far.
    Equal,
    /// Past the flipped bit (y = 1 over x = 0); x must continue with 1s
    /// against y's 0s.
    Flipped,
    /// x = 1ᵗ so far, y = 1 0…; y needs one more 0 than x has bits.
    Carry,
    /// y = 1 0ᵗ is complete.
    Grown,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum S {
    Start,
    /// Reading block 0; `done` once its single 0 was read.
    Zero { done: bool },
    /// Reading an odd block (reversed); `big` from block 3 on.
    Rev { big: bool, first: bool },
    /// Reading an even block (forward) after block 2i+1.
    Fwd { cmp: Cmp },
    Accept,
}

struct Erb {
    track: [bool; 2],
}

impl Erb {
    fn phys(&self, stack: usize) -> Option<usize> {
        self.track[stack].then(|| self.track[..stack].iter().filter(|t| **t).count())
    }

    fn count(&self) -> usize {
        self.track.iter().filter(|t| **t).count()
    }

    /// Observation of logical stack `i` (`None` when untracked).
    fn top(&self, obs: &[StackObs], i: usize) -> Option<Option<bool>> {
        self.phys(i).map(|p| match &obs[p] {
            StackObs::Top(s) => Some(s == "1"),
            _ => None,
        })
    }

    fn ops(&self, logical: [StackOp; 2]) -> StorageAction {
        StorageAction::Stacks((0..2).filter(|&i| self.track[i]).map(|i| logical[i].clone()).collect())
    }
}

fn bit_sym(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

impl Controller for Erb {
    type State = S;

    fn initial(&self) -> S {
        S::Start
    }

    fn state_name(&self, s: &S) -> String {
        match s {
            S::Start => "start".into(),
            S::Zero { done } => format!("zero{}", u8::from(*done)),
            S::Rev { big, first } => format!("rev.{}{}", u8::from(*big), u8::from(*first)),
            S::Fwd { cmp } => format!("fwd.{cmp:?}").to_lowercase(),
            S::Accept => "accept".into(),
        }
    }

    fn is_accepting(&self, s: &S) -> bool {
        *s == S::Accept
    }

    fn step(&self, s: &S, read: &Read, obs: &Observation) -> Vec<Move<S>> {
        use StackOp::{Noop, Pop, Push};
        let Observation::Stacks(obs) = obs else { return vec![] };
        let noop = self.ops([Noop, Noop]);
        let tok = read.token();
        let bit = match tok {
            "0" => Some(false),
            "1" => Some(true),
            _ => None,
        };
        let mv = match (*s, tok, bit) {
            (S::Start, "a", _) => Move::advance(S::Zero { done: false }, noop),
            (S::Zero { done: false }, "0", _) => {
                Move::advance(S::Zero { done: true }, self.ops([Push("0".into()), Noop]))
            }
            (S::Zero { done: true }, "a", _) => Move::advance(S::Rev { big: false, first: true }, noop),
            (S::Rev { big, first }, _, Some(y)) => {
                if let Some(x) = self.top(obs, 0) {
                    let Some(x) = x else { return vec![] };
                    let ok = if first { y && !x } else { y == x };
                    if !ok {
                        return vec![];
                    }
                }
                Move::advance(S::Rev { big, first: false }, self.ops([Pop, Push(bit_sym(y))]))
            }
            (S::Rev { big, first: false }, "a" | "$", _) => {
                if self.top(obs, 0).is_some_and(|x| x.is_some()) {
                    return vec![];
                }
                if tok == "a" {
                    Move::advance(S::Fwd { cmp: Cmp::Start }, noop)
                } else if big {
                    Move::advance(S::Accept, noop)
                } else {
                    return vec![];
                }
            }
            (S::Fwd { cmp }, _, Some(y)) => {
                let (next, pop) = match self.top(obs, 1) {
                    None => (Cmp::Start, Noop),
                    Some(x) => {
                        let next = match (cmp, y, x) {
                            (Cmp::Start, true, Some(true)) => Cmp::Ones,
                            (Cmp::Start, true, Some(false)) => Cmp::Flipped,
                            (Cmp::Ones, true, Some(true)) => Cmp::Ones,
                            (Cmp::Ones, false, Some(false)) => Cmp::Equal,
                            (Cmp::Ones | Cmp::Equal, true, Some(false)) => Cmp::Flipped,
                            (Cmp::Ones, false, Some(true)) => Cmp::Carry,
                            (Cmp::Ones | Cmp::Carry, false, None) => Cmp::Grown,
                            (Cmp::Equal, y, Some(x)) if y == x => Cmp::Equal,
                            (Cmp::Flipped, false, Some(true)) => Cmp::Flipped,
                            (Cmp::Carry, false, Some(true)) => Cmp::Carry,
                            _ => return vec![],
                        };
                        (next, if x.is_some() { Pop } else { Noop })
                    }
                };
                Move::advance(S::Fwd { cmp: next }, self.ops([Push(bit_sym(y)), pop]))
            }
            (S::Fwd { cmp }, "a", _) => {
                let complete = match self.top(obs, 1) {
                    None => true,
                    Some(x) => (cmp == Cmp::Flipped && x.is_none()) || cmp == Cmp::Grown,
                };
                if !complete {
                    return vec![];
                }
                Move::advance(S::Rev { big: true, first: true }, noop)
            }
            _ => return vec![],
        };
        vec![mv]
    }
}

fn header(name: &str, stacks: usize) -> Header {
    Header {
        name: name.into(),
        timing: Timing::RealTime,
        mode: Mode::Deterministic,
        input_alphabet: Alphabet::new(["a", "0", "1"]),
        storage: StorageSpec::Stacks { count: stacks, alphabet: Alphabet::new(["0", "1"]) },
    }
}

/// Deterministic real-time two-stack machine.
pub fn build_erb_pda() -> Machine {
    compile(&Erb { track: [true, true] }, header("erb", 2))
}

/// The single-stack machine performing the checks of one stack only.
pub fn build_erb_half(stack: usize) -> Machine {
    let mut track = [false; 2];
    track[stack] = true;
    let e = Erb { track };
    let count = e.count();
    compile(&e, header(&format!("erb-stack{}", stack + 1), count))
}

/// Rejects with probability 1/3, otherwise runs one of the two
/// single-stack halves with probability 1/3 each.
pub fn build_prob_erb_pda() -> Machine {
    let third = Ratio::one() / Ratio::from_integer(3.into());
    mixture(
        "prob-erb",
        &[(third.clone(), build_erb_half(0)), (third.clone(), build_erb_half(1))],
        third,
    )
}
