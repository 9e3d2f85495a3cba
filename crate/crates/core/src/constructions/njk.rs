//! One-way nondeterministic worktape machine for {aʲbᵏ | j ≠ k} with a
//! fixed sweep discipline, and its κ-padded real-time version.
//!
//! Each worktape cell holds a five-field tuple: first/last markers and one
//! bit on each of three tracks. The top track holds a guessed modulus in
//! the form m = l − 1, least significant bit first, over exactly
//! w = bitlen(l − 1) = ⌈log2 l⌉ cells. The middle and bottom tracks hold
//! r mod l and s mod l for the a's and b's read so far.
//!
//! Every input symbol costs exactly `c` passes of `w` steps over the
//! counter, alternating right and left; only the last step of the last
//! pass moves the input head. Pass 1 increments the relevant track and
//! checks whether the old value was l − 1; pass 2 clears the track in that
//! case and compares the two tracks; the remaining passes idle. The
//! modulus cells are guessed during pass 1 of the first symbol.

use crate::engine::{Configuration, StorageContent};
use crate::machine::*;

use super::controller::{compile, Controller, Header, Move};
use super::pad::{pad_machine, PadError, PadParams};

/// Sweep discipline of the machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepParams {
    /// Passes per input symbol; even and at least 2.
    pub c: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self { c: 4 }
    }
}

impl SweepParams {
    /// The layout constant k in d_l = c·⌈log2 l⌉ + k.
    pub const OFFSET: i64 = -1;

    /// Stationary steps per input symbol on the path that guessed `l`.
    pub fn pauses(&self, l: u64) -> usize {
        assert!(l >= 2);
        (self.c as i64 * ceil_log2(l) as i64 + Self::OFFSET) as usize
    }

    /// Padding that lets the κ-padded machine follow the path for `l`.
    pub fn pad_for(&self, l: u64) -> PadParams {
        PadParams { t: self.pauses(l) }
    }
}

pub fn ceil_log2(l: u64) -> u32 {
    u64::BITS - (l - 1).leading_zeros()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Kind {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum S {
    /// Guessing the modulus cells during pass 1 of the first symbol.
    Guess { first_cell: bool, kind: Option<Kind> },
    Pass { pass: u8, kind: Kind, seen_b: bool, carry: bool, eq: bool, neq: bool },
    /// Between symbols, head on cell 0.
    Ready { seen_b: bool, neq: bool },
    Halt(bool),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Cell {
    pub first: bool,
    pub last: bool,
    pub m: bool,
    pub r: bool,
    pub s: bool,
}

impl Cell {
    pub fn name(&self) -> String {
        format!(
            "{}{}{}{}{}",
            if self.first { 'F' } else { '-' },
            if self.last { 'L' } else { '-' },
            u8::from(self.m),
            u8::from(self.r),
            u8::from(self.s)
        )
    }

    pub fn parse(s: &str) -> Option<Self> {
        let b: Vec<char> = s.chars().collect();
        if b.len() != 5 {
            return None;
        }
        let bit = |c: char| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        };
        Some(Self { first: b[0] == 'F', last: b[1] == 'L', m: bit(b[2])?, r: bit(b[3])?, s: bit(b[4])? })
    }

    fn track(&self, k: Kind) -> bool {
        match k {
            Kind::A => self.r,
            Kind::B => self.s,
        }
    }

    fn with_track(mut self, k: Kind, v: bool) -> Self {
        match k {
            Kind::A => self.r = v,
            Kind::B => self.s = v,
        }
        self
    }

    fn all() -> Vec<Cell> {
        (0..32u8)
            .map(|x| Cell { first: x & 16 != 0, last: x & 8 != 0, m: x & 4 != 0, r: x & 2 != 0, s: x & 1 != 0 })
            .collect()
    }
}

struct Njk {
    p: SweepParams,
}

fn kind_of(read: &Read) -> Option<Kind> {
    match read {
        Read::Symbol(s) if s == "a" => Some(Kind::A),
        Read::Symbol(s) if s == "b" => Some(Kind::B),
        _ => None,
    }
}

fn act(write: Option<Cell>, shift: Shift) -> StorageAction {
    StorageAction::Tape { write: write.map(|c| c.name()), shift }
}

impl Njk {
    /// One step of a regular pass over a written cell.
    fn pass_step(&self, st: S, cell: Cell) -> Option<Move<S>> {
        let S::Pass { pass, kind, seen_b, carry, eq, neq } = st else { return None };
        let c = self.p.c as u8;
        if pass % 2 == 1 {
            let (write, carry2, eq2) = if pass == 1 {
                let old = cell.track(kind);
                (Some(cell.with_track(kind, old ^ carry)), old && carry, eq && old == cell.m)
            } else {
                (None, false, false)
            };
            if cell.last {
                let next_eq = if pass == 1 { eq2 } else { false };
                Some(Move::stay(
                    S::Pass { pass: pass + 1, kind, seen_b, carry: false, eq: next_eq, neq: if pass == 1 { false } else { neq } },
                    act(write, Shift::Stay),
                ))
            } else {
                Some(Move::stay(
                    S::Pass { pass, kind, seen_b, carry: carry2, eq: eq2, neq },
                    act(write, Shift::Right),
                ))
            }
        } else {
            let (write, neq2) = if pass == 2 {
                let cleared = if eq { cell.with_track(kind, false) } else { cell };
                (eq.then_some(cleared), neq || cleared.r != cleared.s)
            } else {
                (None, neq)
            };
            if cell.first {
                if pass == c {
                    Some(Move::advance(S::Ready { seen_b, neq: neq2 }, act(write, Shift::Stay)))
                } else {
                    Some(Move::stay(
                        S::Pass { pass: pass + 1, kind, seen_b, carry: false, eq: false, neq: neq2 },
                        act(write, Shift::Stay),
                    ))
                }
            } else {
                Some(Move::stay(
                    S::Pass { pass, kind, seen_b, carry: false, eq: pass == 2 && eq, neq: neq2 },
                    act(write, Shift::Left),
                ))
            }
        }
    }
}

impl Controller for Njk {
    type State = S;

    fn initial(&self) -> S {
        S::Guess { first_cell: true, kind: None }
    }

    fn state_name(&self, s: &S) -> String {
        let k = |k: &Kind| if *k == Kind::A { 'a' } else { 'b' };
        let f = |b: bool| u8::from(b);
        match s {
            S::Guess { first_cell: true, kind: None } => "start".into(),
            S::Guess { first_cell, kind } => {
                format!("guess{}{}", if *first_cell { "0" } else { "" }, kind.as_ref().map_or('?', k))
            }
            S::Pass { pass, kind, seen_b, carry, eq, neq } => {
                format!("pass{pass}{}.{}{}{}{}", k(kind), f(*seen_b), f(*carry), f(*eq), f(*neq))
            }
            S::Ready { seen_b, neq } => format!("ready.{}{}", f(*seen_b), f(*neq)),
            S::Halt(true) => "accept".into(),
            S::Halt(false) => "reject".into(),
        }
    }

    fn is_accepting(&self, s: &S) -> bool {
        *s == S::Halt(true)
    }

    fn step(&self, s: &S, read: &Read, obs: &Observation) -> Vec<Move<S>> {
        let Observation::Tape(TapeObs::Symbol(sym)) = obs else { return vec![] };
        let noop = act(None, Shift::Stay);
        match *s {
            S::Halt(_) => vec![],
            S::Guess { kind: None, .. } if *read == Read::End => vec![Move::advance(S::Halt(false), noop)],
            S::Guess { first_cell, kind } => {
                let Some(k) = kind_of(read) else { return vec![] };
                if sym != BLANK || kind.is_some_and(|x| x != k) {
                    return vec![];
                }
                let mut out = Vec::new();
                for m in [false, true] {
                    for last in [false, true] {
                        if last && !m {
                            continue;
                        }
                        let cell = Cell { first: first_cell, last, m, r: false, s: false }
                            .with_track(k, first_cell);
                        out.push(if last {
                            let next = S::Pass { pass: 2, kind: k, seen_b: k == Kind::B, carry: false, eq: false, neq: false };
                            Move::stay(next, act(Some(cell), Shift::Stay))
                        } else {
                            Move::stay(S::Guess { first_cell: false, kind: Some(k) }, act(Some(cell), Shift::Right))
                        });
                    }
                }
                out
            }
            S::Ready { seen_b, neq } => {
                if *read == Read::End {
                    return vec![Move::advance(S::Halt(neq), noop)];
                }
                let (Some(k), Some(cell)) = (kind_of(read), Cell::parse(sym)) else { return vec![] };
                if k == Kind::A && seen_b {
                    return vec![];
                }
                let st = S::Pass { pass: 1, kind: k, seen_b: seen_b || k == Kind::B, carry: true, eq: true, neq: false };
                self.pass_step(st, cell).into_iter().collect()
            }
            S::Pass { kind, .. } => {
                let (Some(k), Some(cell)) = (kind_of(read), Cell::parse(sym)) else { return vec![] };
                if k != kind {
                    return vec![];
                }
                self.pass_step(*s, cell).into_iter().collect()
            }
        }
    }
}

pub fn njk_tape_alphabet() -> Alphabet {
    let mut syms: Vec<String> = Cell::all().iter().map(Cell::name).collect();
    syms.push(BLANK.into());
    Alphabet::new(syms)
}

/// The one-way machine N′ with the given sweep discipline.
pub fn build_njk_machine(p: SweepParams) -> Machine {
    assert!(p.c >= 2 && p.c.is_multiple_of(2), "pass count must be even and at least 2");
    compile(
        &Njk { p },
        Header {
            name: "njk".into(),
            timing: Timing::OneWay,
            mode: Mode::Nondeterministic,
            input_alphabet: Alphabet::new(["a", "b"]),
            storage: StorageSpec::Worktape { alphabet: njk_tape_alphabet(), blank: BLANK.into() },
        },
    )
}

/// The κ-padded real-time version N′κ.
pub fn build_njk_realtime(p: SweepParams) -> Result<Machine, PadError> {
    let mut m = pad_machine(&build_njk_machine(p))?;
    m.name = "njk-kappa".into();
    Ok(m)
}

/// Path-selection policy for [`crate::Executor::run_guided`] that follows
/// the computation guessing modulus `l` (on N′ or N′κ).
pub fn npath_policy(l: u64) -> impl FnMut(&Configuration, &[&TransitionRule]) -> Option<usize> {
    assert!(l >= 2);
    let m = l - 1;
    let width = ceil_log2(l) as usize;
    move |cfg, rules| {
        if rules.len() == 1 {
            return Some(0);
        }
        let StorageContent::Worktape { head, .. } = &cfg.storage else { return None };
        let want_m = (m >> head) & 1 == 1;
        let want_last = *head + 1 == width;
        rules.iter().position(|r| match &r.storage_action {
            StorageAction::Tape { write: Some(w), .. } => {
                Cell::parse(w).is_some_and(|c| c.m == want_m && c.last == want_last)
            }
            _ => false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets() {
        let p = SweepParams::default();
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(p.pauses(2), 3);
        assert_eq!(p.pauses(5), 11);
    }

    #[test]
    fn cell_names_round_trip() {
        for c in Cell::all() {
            assert_eq!(Cell::parse(&c.name()), Some(c));
        }
        assert_eq!(njk_tape_alphabet().len(), 33);
    }
}
