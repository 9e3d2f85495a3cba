//! Compiling finite-control descriptions into [`Machine`] values.
//!
//! A [`Controller`] describes a machine implicitly: a typed control state
//! plus a step function over (input read, storage observation). The
//! compiler enumerates the reachable control states and every concrete
//! observation of the storage kind, and emits one rule per move.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::machine::*;
use crate::Ratio;

pub struct Move<S> {
    pub to: S,
    pub input: InputAction,
    pub action: StorageAction,
}

impl<S> Move<S> {
    pub fn advance(to: S, action: StorageAction) -> Self {
        Self { to, input: InputAction::Advance, action }
    }

    pub fn stay(to: S, action: StorageAction) -> Self {
        Self { to, input: InputAction::Stay, action }
    }
}

pub trait Controller {
    type State: Clone + Eq + Hash;

    fn initial(&self) -> Self::State;
    fn state_name(&self, s: &Self::State) -> String;
    fn is_accepting(&self, s: &Self::State) -> bool;
    fn label(&self, _s: &Self::State) -> Option<Label> {
        None
    }
    /// Moves available in `s` when reading `read` and observing `obs`.
    /// An empty result means the machine has no rule there (reject).
    fn step(&self, s: &Self::State, read: &Read, obs: &Observation) -> Vec<Move<Self::State>>;
}

/// Static part of a compiled machine.
#[derive(Clone, Debug)]
pub struct Header {
    pub name: String,
    pub timing: Timing,
    pub mode: Mode,
    pub input_alphabet: Alphabet,
    pub storage: StorageSpec,
}

/// Every concrete observation of a storage kind, in a fixed order.
pub fn all_observations(spec: &StorageSpec) -> Vec<Observation> {
    match spec {
        StorageSpec::Worktape { alphabet, .. } => {
            alphabet.symbols().iter().map(|s| Observation::Tape(TapeObs::Symbol(s.clone()))).collect()
        }
        StorageSpec::Stacks { count, alphabet } => {
            let mut one = vec![StackObs::Empty];
            one.extend(alphabet.symbols().iter().map(|s| StackObs::Top(s.clone())));
            product(*count, &one).into_iter().map(Observation::Stacks).collect()
        }
        StorageSpec::Counters { count } => product(*count, &[CounterObs::Zero, CounterObs::Positive])
            .into_iter()
            .map(Observation::Counters)
            .collect(),
    }
}

fn product<T: Clone>(n: usize, items: &[T]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Observation matching the storage content every run starts with.
pub fn initial_observation(spec: &StorageSpec) -> Observation {
    match spec {
        StorageSpec::Worktape { blank, .. } => Observation::Tape(TapeObs::Symbol(blank.clone())),
        StorageSpec::Stacks { count, .. } => Observation::Stacks(vec![StackObs::Empty; *count]),
        StorageSpec::Counters { count } => Observation::Counters(vec![CounterObs::Zero; *count]),
    }
}

/// Breadth-first compilation from the initial control state.
pub fn compile<C: Controller>(c: &C, header: Header) -> Machine {
    let mut reads: Vec<Read> = header.input_alphabet.symbols().iter().map(|s| Read::Symbol(s.clone())).collect();
    reads.push(Read::End);
    let observations = all_observations(&header.storage);

    let mut ids: HashMap<C::State, String> = HashMap::new();
    let mut order: Vec<C::State> = Vec::new();
    let mut queue = VecDeque::new();
    let init = c.initial();
    ids.insert(init.clone(), c.state_name(&init));
    order.push(init.clone());
    queue.push_back(init);

    let mut transitions = Vec::new();
    while let Some(s) = queue.pop_front() {
        for read in &reads {
            for obs in &observations {
                for mv in c.step(&s, read, obs) {
                    if !ids.contains_key(&mv.to) {
                        ids.insert(mv.to.clone(), c.state_name(&mv.to));
                        order.push(mv.to.clone());
                        queue.push_back(mv.to.clone());
                    }
                    transitions.push(TransitionRule {
                        from: ids[&s].clone(),
                        read: read.clone(),
                        observe: obs.clone(),
                        to: ids[&mv.to].clone(),
                        input_action: mv.input,
                        storage_action: mv.action,
                        weight: None,
                    });
                }
            }
        }
    }
    let states: Vec<StateDecl> = order
        .iter()
        .map(|s| StateDecl { id: ids[s].clone(), label: c.label(s) })
        .collect();
    let accepting = order.iter().filter(|s| c.is_accepting(s)).map(|s| ids[s].clone()).collect();
    let m = Machine {
        name: header.name,
        timing: header.timing,
        mode: header.mode,
        input_alphabet: header.input_alphabet,
        storage: header.storage,
        initial: ids[&order[0]].clone(),
        states,
        accepting,
        transitions,
    };
    debug_assert!(
        {
            let mut names: Vec<_> = m.states.iter().map(|s| &s.id).collect();
            names.sort();
            names.windows(2).all(|p| p[0] != p[1])
        },
        "state names must be unique"
    );
    m
}

/// Probabilistic machine that first branches, with the given weights, into
/// copies of deterministic real-time `paths` or into an immediate reject.
/// The branching happens on the first step, which each chosen path
/// performs itself (a real-time machine has no spare step).
pub fn mixture(name: &str, paths: &[(Ratio, Machine)], reject: Ratio) -> Machine {
    use num_traits::{One, Zero};
    let base = &paths[0].1;
    let total = paths.iter().fold(reject.clone(), |acc, (w, _)| acc + w);
    assert!(total.is_one(), "branch weights must sum to 1");
    for (_, p) in paths {
        assert!(p.timing == Timing::RealTime && p.mode == Mode::Deterministic);
        assert!(p.input_alphabet == base.input_alphabet && p.storage == base.storage);
    }
    let prefixed = |i: usize, s: &str| format!("p{i}.{s}");
    let init_obs = initial_observation(&base.storage);
    let mut reads: Vec<Read> = base.input_alphabet.symbols().iter().map(|s| Read::Symbol(s.clone())).collect();
    reads.push(Read::End);

    let mut states = vec![StateDecl::new("start"), StateDecl::new("reject")];
    let mut accepting = Vec::new();
    let mut transitions = Vec::new();
    for read in &reads {
        let mut lost = reject.clone();
        for (i, (w, p)) in paths.iter().enumerate() {
            let first = p.transitions.iter().find(|r| {
                r.from == p.initial && r.read == *read && observation_admits(&r.observe, &init_obs)
            });
            match first {
                Some(r) => transitions.push(TransitionRule {
                    from: "start".into(),
                    read: read.clone(),
                    observe: init_obs.clone(),
                    to: prefixed(i, &r.to),
                    input_action: InputAction::Advance,
                    storage_action: r.storage_action.clone(),
                    weight: Some(w.clone()),
                }),
                None => lost += w,
            }
        }
        if !lost.is_zero() {
            transitions.push(TransitionRule {
                from: "start".into(),
                read: read.clone(),
                observe: init_obs.clone(),
                to: "reject".into(),
                input_action: InputAction::Advance,
                storage_action: base.storage.noop(),
                weight: Some(lost),
            });
        }
        transitions.push(TransitionRule {
            from: "reject".into(),
            read: read.clone(),
            observe: base.storage.wildcard(),
            to: "reject".into(),
            input_action: InputAction::Advance,
            storage_action: base.storage.noop(),
            weight: Some(Ratio::one()),
        });
    }
    for (i, (_, p)) in paths.iter().enumerate() {
        states.extend(p.states.iter().map(|s| StateDecl::new(prefixed(i, &s.id))));
        accepting.extend(p.accepting.iter().map(|s| prefixed(i, s)));
        transitions.extend(p.transitions.iter().map(|r| TransitionRule {
            from: prefixed(i, &r.from),
            to: prefixed(i, &r.to),
            weight: Some(Ratio::one()),
            ..r.clone()
        }));
    }
    Machine {
        name: name.to_string(),
        timing: Timing::RealTime,
        mode: Mode::Probabilistic,
        input_alphabet: base.input_alphabet.clone(),
        storage: base.storage.clone(),
        states,
        initial: "start".into(),
        accepting,
        transitions,
    }
}

/// Whether a rule observation `rule` matches the concrete observation `concrete`.
fn observation_admits(rule: &Observation, concrete: &Observation) -> bool {
    match (rule, concrete) {
        (Observation::Tape(TapeObs::Any), Observation::Tape(_)) => true,
        (Observation::Tape(a), Observation::Tape(b)) => a == b,
        (Observation::Stacks(a), Observation::Stacks(b)) => {
            a.iter().zip(b).all(|(x, y)| *x == StackObs::Any || x == y)
        }
        (Observation::Counters(a), Observation::Counters(b)) => {
            a.iter().zip(b).all(|(x, y)| *x == CounterObs::Any || x == y)
        }
        _ => false,
    }
}
