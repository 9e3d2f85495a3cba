//! Deterministic real-time worktape machine for the unary language with
//! member lengths 8, 14, 28, 62, …
//!
//! The tape holds `⊢ c ⊣` with the counter `c` in reverse binary (least
//! significant bit first). After a four-step initialization writing `⊢0⊣`
//! the head shuttles forever: a rightward sweep increments the counter, a
//! leftward sweep counts its one-bits. The input is accepted when the
//! endmarker arrives with the head back on `⊢` and exactly one bit set.

use crate::machine::*;

use super::controller::{compile, Controller, Header, Move};

pub const LEFT: &str = "⊢";
pub const RIGHT: &str = "⊣";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum S {
    Init(u8),
    /// Leftward sweep; number of one-bits seen so far, saturating at 2.
    Check(u8),
    Inc { carry: bool },
    /// The counter grew one bit; write the new right delimiter.
    Extend,
    Halt(bool),
}

struct Ld;

fn tape(write: &str, shift: Shift) -> StorageAction {
    StorageAction::Tape { write: Some(write.to_string()), shift }
}

fn shift(shift: Shift) -> StorageAction {
    StorageAction::Tape { write: None, shift }
}

impl Controller for Ld {
    type State = S;

    fn initial(&self) -> S {
        S::Init(1)
    }

    fn state_name(&self, s: &S) -> String {
        match s {
            S::Init(i) => format!("init{i}"),
            S::Check(k) => format!("check{k}"),
            S::Inc { carry } => format!("inc{}", u8::from(*carry)),
            S::Extend => "extend".into(),
            S::Halt(true) => "accept".into(),
            S::Halt(false) => "reject".into(),
        }
    }

    fn is_accepting(&self, s: &S) -> bool {
        *s == S::Halt(true)
    }

    fn step(&self, s: &S, read: &Read, obs: &Observation) -> Vec<Move<S>> {
        let Observation::Tape(TapeObs::Symbol(cell)) = obs else { return vec![] };
        let cell = cell.as_str();
        if matches!(s, S::Halt(_)) {
            return vec![];
        }
        if *read == Read::End {
            let verdict = *s == S::Check(1) && cell == LEFT;
            return vec![Move::advance(S::Halt(verdict), shift(Shift::Stay))];
        }
        let mv = match (*s, cell) {
            (S::Init(1), BLANK) => Move::advance(S::Init(2), tape(LEFT, Shift::Right)),
            (S::Init(2), BLANK) => Move::advance(S::Init(3), tape("0", Shift::Right)),
            (S::Init(3), BLANK) => Move::advance(S::Init(4), tape(RIGHT, Shift::Left)),
            (S::Init(4), "0") => Move::advance(S::Check(0), shift(Shift::Left)),
            (S::Check(_), LEFT) => Move::advance(S::Inc { carry: true }, shift(Shift::Right)),
            (S::Check(k), b @ ("0" | "1")) => {
                let k = (k + u8::from(b == "1")).min(2);
                Move::advance(S::Check(k), shift(Shift::Left))
            }
            (S::Inc { carry }, b @ ("0" | "1")) => {
                let bit = b == "1";
                let out = if bit ^ carry { "1" } else { "0" };
                Move::advance(S::Inc { carry: bit && carry }, tape(out, Shift::Right))
            }
            (S::Inc { carry: true }, RIGHT) => Move::advance(S::Extend, tape("1", Shift::Right)),
            (S::Inc { carry: false }, RIGHT) => Move::advance(S::Check(0), shift(Shift::Left)),
            (S::Extend, BLANK) => Move::advance(S::Check(0), tape(RIGHT, Shift::Left)),
            _ => return vec![],
        };
        vec![mv]
    }
}

pub fn build_ld_machine() -> Machine {
    compile(
        &Ld,
        Header {
            name: "ld".into(),
            timing: Timing::RealTime,
            mode: Mode::Deterministic,
            input_alphabet: Alphabet::new(["a"]),
            storage: StorageSpec::Worktape {
                alphabet: Alphabet::new([LEFT, RIGHT, "0", "1", BLANK]),
                blank: BLANK.into(),
            },
        },
    )
}
