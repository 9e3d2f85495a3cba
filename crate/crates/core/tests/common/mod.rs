#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rtspace::engine::Verdict;
use rtspace::machine::*;
use rtspace::Executor;

/// Every word over `alphabet` of length at most `max_len`, shortest first.
pub fn all_words(alphabet: &[&str], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    let mut level = vec![Word::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * alphabet.len());
        for w in &level {
            for s in alphabet {
                let mut v = w.clone();
                v.push(s.to_string());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

pub fn chars(s: &str) -> Word {
    s.chars().map(String::from).collect()
}

/// Existential acceptance by brute force over every computation path,
/// without any memoisation. Only meant for real-time machines.
pub fn some_path_accepts(ex: &Executor, w: &[String]) -> bool {
    let mut prefix: Vec<usize> = Vec::new();
    loop {
        let mut choices: Vec<(usize, usize)> = Vec::new();
        let r = ex
            .run_guided(w, false, |_, rules| {
                let c = prefix.get(choices.len()).copied().unwrap_or(0);
                choices.push((c, rules.len()));
                Some(c)
            })
            .expect("run");
        if r.verdict == Verdict::Accept {
            return true;
        }
        let Some(i) = choices.iter().rposition(|&(c, k)| c + 1 < k) else {
            return false;
        };
        prefix = choices[..i].iter().map(|&(c, _)| c).collect();
        prefix.push(choices[i].0 + 1);
    }
}

/// A random counter machine over {a, b} with 2–4 states and 1–2 counters.
/// Decrements are always guarded, so no run can trap.
pub fn random_counter_machine<R: Rng>(rng: &mut R, timing: Timing, mode: Mode) -> Machine {
    let n_states = rng.gen_range(2..=4);
    let counters = rng.gen_range(1..=2);
    let ids: Vec<String> = (0..n_states).map(|i| format!("q{i}")).collect();
    let states = ids
        .iter()
        .map(|id| match mode {
            Mode::Alternating => StateDecl::labeled(
                id.clone(),
                if rng.gen_bool(0.4) { Label::Universal } else { Label::Existential },
            ),
            _ => StateDecl::new(id.clone()),
        })
        .collect();
    let accepting = ids.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
    let mut transitions = Vec::new();
    for from in &ids {
        for read in [Read::sym("a"), Read::sym("b"), Read::End] {
            let fan = *[0usize, 1, 1, 2, 2, 3].choose(rng).unwrap();
            for _ in 0..fan {
                let obs: Vec<CounterObs> = (0..counters)
                    .map(|_| *[CounterObs::Any, CounterObs::Zero, CounterObs::Positive].choose(rng).unwrap())
                    .collect();
                let ops = obs
                    .iter()
                    .map(|o| match o {
                        CounterObs::Positive => *[CounterOp::Inc, CounterOp::Dec, CounterOp::Noop].choose(rng).unwrap(),
                        _ => *[CounterOp::Inc, CounterOp::Noop].choose(rng).unwrap(),
                    })
                    .collect();
                let input_action = match timing {
                    Timing::RealTime => InputAction::Advance,
                    Timing::OneWay if rng.gen_bool(0.3) => InputAction::Stay,
                    Timing::OneWay => InputAction::Advance,
                };
                transitions.push(TransitionRule {
                    from: from.clone(),
                    read: read.clone(),
                    observe: Observation::Counters(obs),
                    to: ids.choose(rng).unwrap().clone(),
                    input_action,
                    storage_action: StorageAction::Counters(ops),
                    weight: None,
                });
            }
        }
    }
    Machine {
        name: "random".into(),
        timing,
        mode,
        input_alphabet: Alphabet::new(["a", "b"]),
        storage: StorageSpec::Counters { count: counters },
        states,
        initial: ids[0].clone(),
        accepting,
        transitions,
    }
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| if rng.gen_bool(0.5) { "a" } else { "b" }.to_string()).collect()
}
