//! Budgeted searches over the configuration graph.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::machine::Timing;

use super::program::{Config, Program, Sym};
use super::{Budget, Decision, EngineError, MAX_CONFIGS};

/// Summary of the configurations reachable within a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration {
    pub max_usage: usize,
    pub configs: usize,
    /// Some successor was dropped for exceeding the budget.
    pub truncated: bool,
}

enum Succ {
    /// The endmarker was consumed; carries the verdict.
    Final(bool),
    Next(Config),
}

struct Expansion {
    succ: Vec<Succ>,
    pruned: bool,
    max_usage: usize,
}

fn expand(p: &Program, input: &[Sym], c: &Config, budget: Budget) -> Result<Expansion, EngineError> {
    let n = input.len() as u32;
    let mut out = Expansion { succ: Vec::new(), pruned: false, max_usage: 0 };
    for r in p.applicable(input, c) {
        let child = p.apply(c, r)?;
        let u = child.store.usage();
        if !budget.admits(u) {
            out.pruned = true;
            continue;
        }
        out.max_usage = out.max_usage.max(u);
        if r.advance && c.pos == n {
            out.succ.push(Succ::Final(p.accepting[child.state as usize]));
        } else {
            out.succ.push(Succ::Next(child));
        }
    }
    Ok(out)
}

fn limit() -> EngineError {
    EngineError::StateSpaceLimit { limit: MAX_CONFIGS }
}

/// Visits every reachable configuration in breadth-first order, calling
/// `visit` on each expansion; stops early when `visit` returns true.
/// Real-time machines are swept one input position at a time so only a
/// single layer is held in memory.
fn sweep<F>(p: &Program, input: &[Sym], budget: Budget, mut visit: F) -> Result<usize, EngineError>
where
    F: FnMut(&Expansion) -> bool,
{
    let root = p.initial_config();
    let mut count = 1usize;
    if p.machine.timing == Timing::RealTime {
        let mut layer: HashSet<Config> = HashSet::from([root]);
        while !layer.is_empty() {
            let mut next = HashSet::new();
            for c in &layer {
                let e = expand(p, input, c, budget)?;
                if visit(&e) {
                    return Ok(count);
                }
                for s in e.succ {
                    if let Succ::Next(c2) = s {
                        next.insert(c2);
                    }
                }
            }
            if next.len() > MAX_CONFIGS {
                return Err(limit());
            }
            count += next.len();
            layer = next;
        }
    } else {
        let mut seen: HashSet<Config> = HashSet::from([root.clone()]);
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            let e = expand(p, input, &c, budget)?;
            if visit(&e) {
                return Ok(seen.len());
            }
            for s in e.succ {
                if let Succ::Next(c2) = s {
                    if !seen.contains(&c2) {
                        seen.insert(c2.clone());
                        queue.push_back(c2);
                    }
                }
            }
            if seen.len() > MAX_CONFIGS {
                return Err(limit());
            }
        }
        count = seen.len();
    }
    Ok(count)
}

/// Existential acceptance: some accepting endmarker step is reachable.
pub(super) fn reach_accept(p: &Program, input: &[Sym], budget: Budget) -> Result<Decision, EngineError> {
    let mut pruned = false;
    let mut accepted = false;
    sweep(p, input, budget, |e| {
        pruned |= e.pruned;
        accepted = e.succ.iter().any(|s| matches!(s, Succ::Final(true)));
        accepted
    })?;
    Ok(if accepted {
        Decision::Accept
    } else if pruned {
        Decision::BudgetExceeded
    } else {
        Decision::Reject
    })
}

pub(super) fn explore(p: &Program, input: &[Sym], budget: Budget) -> Result<super::Exploration, EngineError> {
    let mut max_usage = p.initial_config().store.usage();
    let mut truncated = false;
    let configs = sweep(p, input, budget, |e| {
        truncated |= e.pruned;
        max_usage = max_usage.max(e.max_usage);
        false
    })?;
    Ok(Exploration { max_usage, configs, truncated })
}

/// Least fixpoint of the AND-OR evaluation over the explicit graph.
pub(super) fn attractor(p: &Program, input: &[Sym], budget: Budget) -> Result<Decision, EngineError> {
    const NEVER: u32 = u32::MAX;
    let root = p.initial_config();
    let mut index: HashMap<Config, u32> = HashMap::from([(root.clone(), 0)]);
    let mut nodes: Vec<Config> = vec![root];
    let mut need: Vec<u32> = Vec::new();
    let mut succ: Vec<Vec<u32>> = Vec::new();
    let mut pruned_any = false;
    let mut i = 0;
    while i < nodes.len() {
        let e = expand(p, input, &nodes[i], budget)?;
        pruned_any |= e.pruned;
        let universal = p.universal[nodes[i].state as usize];
        let mut ids: Vec<u32> = Vec::new();
        let (mut final_true, mut final_false) = (false, false);
        for s in e.succ {
            match s {
                Succ::Final(true) => final_true = true,
                Succ::Final(false) => final_false = true,
                Succ::Next(c) => {
                    let id = match index.get(&c) {
                        Some(&id) => id,
                        None => {
                            let id = nodes.len() as u32;
                            index.insert(c.clone(), id);
                            nodes.push(c);
                            id
                        }
                    };
                    if !ids.contains(&id) {
                        ids.push(id);
                    }
                }
            }
        }
        let n = if universal {
            if e.pruned || final_false || (ids.is_empty() && !final_true) {
                NEVER
            } else {
                ids.len() as u32
            }
        } else if final_true {
            0
        } else {
            1
        };
        need.push(n);
        succ.push(ids);
        if nodes.len() > MAX_CONFIGS {
            return Err(limit());
        }
        i += 1;
    }
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
    for (from, ids) in succ.iter().enumerate() {
        for &to in ids {
            preds[to as usize].push(from as u32);
        }
    }
    let mut value = vec![false; nodes.len()];
    let mut queue: VecDeque<u32> = (0..nodes.len() as u32).filter(|&k| need[k as usize] == 0).collect();
    for &k in &queue {
        value[k as usize] = true;
    }
    while let Some(t) = queue.pop_front() {
        for &q in &preds[t as usize] {
            let q = q as usize;
            if value[q] || need[q] == NEVER {
                continue;
            }
            need[q] -= 1;
            if need[q] == 0 {
                value[q] = true;
                queue.push_back(q as u32);
            }
        }
    }
    Ok(if value[0] {
        Decision::Accept
    } else if pruned_any {
        Decision::BudgetExceeded
    } else {
        Decision::Reject
    })
}
