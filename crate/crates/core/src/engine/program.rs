//! Index-based compilation of a [`Machine`] for fast stepping.

use std::collections::HashMap;

use crate::machine::*;
use crate::Ratio;

use super::EngineError;

pub(crate) type Sym = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SlotObs {
    Any,
    Empty,
    Top(Sym),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum COp {
    Push(Sym),
    Pop,
    Inc,
    Dec,
    Noop,
}

#[derive(Clone, Debug)]
pub(crate) enum CObs {
    Tape(Option<Sym>),
    /// Stacks (Top/Empty/Any) or counters (Top(_) = positive, Empty = zero).
    Slots(Vec<SlotObs>),
}

#[derive(Clone, Debug)]
pub(crate) enum CAct {
    Tape { write: Option<Sym>, shift: Shift },
    Slots(Vec<COp>),
}

#[derive(Clone, Debug)]
pub(crate) struct CRule {
    pub index: usize,
    pub to: u32,
    pub advance: bool,
    pub obs: CObs,
    pub act: CAct,
    pub weight: Option<Ratio>,
}

/// Storage contents of a configuration. Worktape cells are kept without
/// trailing blanks so equal contents hash equally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Store {
    Tape { cells: Vec<Sym>, head: u32 },
    Stacks(Vec<Vec<Sym>>),
    Counters(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Config {
    pub state: u32,
    pub pos: u32,
    pub store: Store,
}

pub(crate) struct Program<'m> {
    pub machine: &'m Machine,
    pub n_input: usize,
    pub state_names: Vec<&'m str>,
    pub accepting: Vec<bool>,
    pub universal: Vec<bool>,
    rules: Vec<Vec<CRule>>,
    input_index: HashMap<&'m str, Sym>,
    storage_syms: Vec<&'m str>,
    blank: Sym,
    pub initial: u32,
}

impl<'m> Program<'m> {
    pub fn compile(m: &'m Machine) -> Result<Self, EngineError> {
        let diags = validate_machine(m);
        if !diags.is_empty() {
            return Err(EngineError::InvalidMachine(diags));
        }
        let state_ids: HashMap<&str, u32> =
            m.states.iter().enumerate().map(|(i, s)| (s.id.as_str(), i as u32)).collect();
        let input_index: HashMap<&str, Sym> =
            m.input_alphabet.symbols().iter().enumerate().map(|(i, s)| (s.as_str(), i as Sym)).collect();
        let (storage_syms, blank): (Vec<&str>, Sym) = match &m.storage {
            StorageSpec::Worktape { alphabet, blank } => (
                alphabet.symbols().iter().map(String::as_str).collect(),
                alphabet.index_of(blank).expect("validated") as Sym,
            ),
            StorageSpec::Stacks { alphabet, .. } => (alphabet.symbols().iter().map(String::as_str).collect(), 0),
            StorageSpec::Counters { .. } => (Vec::new(), 0),
        };
        let sym_of = |s: &str| storage_syms.iter().position(|x| *x == s).expect("validated") as Sym;
        let n_input = m.input_alphabet.len();
        let width = n_input + 1;
        let mut rules: Vec<Vec<CRule>> = vec![Vec::new(); m.states.len() * width];
        for (index, r) in m.transitions.iter().enumerate() {
            let from = state_ids[r.from.as_str()] as usize;
            let read = match &r.read {
                Read::Symbol(s) => input_index[s.as_str()] as usize,
                Read::End => n_input,
            };
            let obs = match &r.observe {
                Observation::Tape(TapeObs::Any) => CObs::Tape(None),
                Observation::Tape(TapeObs::Symbol(s)) => CObs::Tape(Some(sym_of(s))),
                Observation::Stacks(v) => CObs::Slots(
                    v.iter()
                        .map(|o| match o {
                            StackObs::Any => SlotObs::Any,
                            StackObs::Empty => SlotObs::Empty,
                            StackObs::Top(s) => SlotObs::Top(sym_of(s)),
                        })
                        .collect(),
                ),
                Observation::Counters(v) => CObs::Slots(
                    v.iter()
                        .map(|o| match o {
                            CounterObs::Any => SlotObs::Any,
                            CounterObs::Zero => SlotObs::Empty,
                            CounterObs::Positive => SlotObs::Top(0),
                        })
                        .collect(),
                ),
            };
            let act = match &r.storage_action {
                StorageAction::Tape { write, shift } => {
                    CAct::Tape { write: write.as_deref().map(sym_of), shift: *shift }
                }
                StorageAction::Stacks(v) => CAct::Slots(
                    v.iter()
                        .map(|op| match op {
                            StackOp::Push(s) => COp::Push(sym_of(s)),
                            StackOp::Pop => COp::Pop,
                            StackOp::Noop => COp::Noop,
                        })
                        .collect(),
                ),
                StorageAction::Counters(v) => CAct::Slots(
                    v.iter()
                        .map(|op| match op {
                            CounterOp::Inc => COp::Inc,
                            CounterOp::Dec => COp::Dec,
                            CounterOp::Noop => COp::Noop,
                        })
                        .collect(),
                ),
            };
            rules[from * width + read].push(CRule {
                index,
                to: state_ids[r.to.as_str()],
                advance: r.input_action == InputAction::Advance,
                obs,
                act,
                weight: r.weight.clone(),
            });
        }
        Ok(Self {
            machine: m,
            n_input,
            state_names: m.states.iter().map(|s| s.id.as_str()).collect(),
            accepting: m.states.iter().map(|s| m.is_accepting(&s.id)).collect(),
            universal: m.states.iter().map(|s| m.label_of(&s.id) == Label::Universal).collect(),
            rules,
            input_index,
            storage_syms,
            blank,
            initial: state_ids[m.initial.as_str()],
        })
    }

    pub fn encode<S: AsRef<str>>(&self, w: &[S]) -> Result<Vec<Sym>, EngineError> {
        w.iter()
            .map(|s| {
                let s = s.as_ref();
                self.input_index.get(s).copied().ok_or_else(|| EngineError::UnknownSymbol(s.to_string()))
            })
            .collect()
    }

    pub fn initial_config(&self) -> Config {
        let store = match &self.machine.storage {
            StorageSpec::Worktape { .. } => Store::Tape { cells: Vec::new(), head: 0 },
            StorageSpec::Stacks { count, .. } => Store::Stacks(vec![Vec::new(); *count]),
            StorageSpec::Counters { count } => Store::Counters(vec![0; *count]),
        };
        Config { state: self.initial, pos: 0, store }
    }

    /// Input symbol index under the head (`n_input` for the endmarker).
    #[inline]
    pub fn read_at(&self, input: &[Sym], pos: u32) -> usize {
        input.get(pos as usize).map_or(self.n_input, |&s| s as usize)
    }

    /// Rules whose input and storage observations both match `c`.
    pub fn applicable<'a>(&'a self, input: &[Sym], c: &'a Config) -> impl Iterator<Item = &'a CRule> + 'a {
        let read = self.read_at(input, c.pos);
        self.rules[c.state as usize * (self.n_input + 1) + read]
            .iter()
            .filter(move |r| self.matches(&r.obs, &c.store))
    }

    fn matches(&self, obs: &CObs, store: &Store) -> bool {
        match (obs, store) {
            (CObs::Tape(None), _) => true,
            (CObs::Tape(Some(s)), Store::Tape { cells, head }) => {
                cells.get(*head as usize).copied().unwrap_or(self.blank) == *s
            }
            (CObs::Slots(v), Store::Stacks(stacks)) => v.iter().zip(stacks).all(|(o, st)| match o {
                SlotObs::Any => true,
                SlotObs::Empty => st.is_empty(),
                SlotObs::Top(s) => st.last() == Some(s),
            }),
            (CObs::Slots(v), Store::Counters(cs)) => v.iter().zip(cs).all(|(o, &c)| match o {
                SlotObs::Any => true,
                SlotObs::Empty => c == 0,
                SlotObs::Top(_) => c > 0,
            }),
            _ => false,
        }
    }

    /// Successor configuration; storage traps report a rule the validator
    /// could not rule out statically.
    pub fn apply(&self, c: &Config, r: &CRule) -> Result<Config, EngineError> {
        let trap = |what: &'static str| EngineError::Trap { rule: r.index, what };
        let store = match (&c.store, &r.act) {
            (Store::Tape { cells, head }, CAct::Tape { write, shift }) => {
                let mut cells = cells.clone();
                let h = *head as usize;
                if let Some(w) = write {
                    if h >= cells.len() {
                        if *w != self.blank {
                            cells.resize(h + 1, self.blank);
                            cells[h] = *w;
                        }
                    } else {
                        cells[h] = *w;
                    }
                    while cells.last() == Some(&self.blank) {
                        cells.pop();
                    }
                }
                let head = match shift {
                    Shift::Stay => *head,
                    Shift::Right => head + 1,
                    Shift::Left => head.checked_sub(1).ok_or_else(|| trap("worktape head moved left of the origin"))?,
                };
                Store::Tape { cells, head }
            }
            (Store::Stacks(stacks), CAct::Slots(ops)) => {
                let mut stacks = stacks.clone();
                for (st, op) in stacks.iter_mut().zip(ops) {
                    match op {
                        COp::Push(s) => st.push(*s),
                        COp::Pop => {
                            st.pop().ok_or_else(|| trap("pop on an empty stack"))?;
                        }
                        _ => {}
                    }
                }
                Store::Stacks(stacks)
            }
            (Store::Counters(cs), CAct::Slots(ops)) => {
                let mut cs = cs.clone();
                for (v, op) in cs.iter_mut().zip(ops) {
                    match op {
                        COp::Inc => *v += 1,
                        COp::Dec => *v = v.checked_sub(1).ok_or_else(|| trap("decrement of a zero counter"))?,
                        _ => {}
                    }
                }
                Store::Counters(cs)
            }
            _ => unreachable!("storage kind fixed by validation"),
        };
        Ok(Config { state: r.to, pos: c.pos + u32::from(r.advance), store })
    }

    pub fn public_config(&self, c: &Config) -> super::Configuration {
        use super::StorageContent;
        let storage = match &c.store {
            Store::Tape { cells, head } => StorageContent::Worktape {
                cells: cells.iter().map(|&s| self.storage_syms[s as usize].to_string()).collect(),
                head: *head as usize,
            },
            Store::Stacks(st) => StorageContent::Stacks(
                st.iter()
                    .map(|s| s.iter().map(|&x| self.storage_syms[x as usize].to_string()).collect())
                    .collect(),
            ),
            Store::Counters(cs) => StorageContent::Counters(cs.clone()),
        };
        super::Configuration {
            state: self.state_names[c.state as usize].to_string(),
            input_position: c.pos as usize,
            storage,
        }
    }
}

impl Store {
    /// Space charged to this content: head displacement for worktapes,
    /// summed heights for stacks, summed values for counters.
    #[inline]
    pub fn usage(&self) -> usize {
        match self {
            Store::Tape { head, .. } => *head as usize,
            Store::Stacks(st) => st.iter().map(Vec::len).sum(),
            Store::Counters(cs) => cs.iter().sum::<u64>() as usize,
        }
    }
}
