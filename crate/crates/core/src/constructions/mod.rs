//! Built-in machines and the κ-padding transform.

pub mod controller;
mod erb;
pub mod fixtures;
mod ld;
mod lj;
mod njk;
mod pad;

pub use erb::{build_erb_half, build_erb_pda, build_prob_erb_pda};
pub use fixtures::build_fixtures;
pub use ld::build_ld_machine;
pub use lj::{build_lj_counters, build_lj_single, build_prob_lj_counter, lj_gap, lj_member_probability, lj_nonmember_bound};
pub use njk::{build_njk_machine, build_njk_realtime, ceil_log2, npath_policy, Cell, SweepParams};
pub use pad::{pad_machine, pad_string, PadError, PadParams};

use crate::machine::Machine;

/// Names accepted by [`builtin`], with a one-line description each.
pub fn builtin_names() -> Vec<(String, &'static str)> {
    let mut v: Vec<(String, &'static str)> = vec![
        ("ld".into(), "deterministic real-time worktape machine, unary lengths 8, 14, 28, …"),
        ("njk".into(), "one-way nondeterministic a^j b^k (j ≠ k) with four passes per symbol"),
        ("njk-kappa".into(), "κ-padded real-time version of njk"),
        ("erb".into(), "deterministic real-time two-stack machine for consecutive binary blocks"),
        ("erb-stack1".into(), "single-stack half of erb checking (block 2i, block 2i+1)"),
        ("erb-stack2".into(), "single-stack half of erb checking (block 2i+1, block 2i+2)"),
        ("prob-erb".into(), "probabilistic single-stack version of erb, error 1/3"),
    ];
    for j in 2..=4 {
        v.push((format!("lj{j}"), "deterministic real-time counter machine for the level-j ladder language"));
        v.push((format!("prob-lj{j}"), "probabilistic one-counter version of lj<j>"));
    }
    v.push(("anbn".into(), "fixture: one-way deterministic a^n b^n with stationary steps"));
    v.push(("middle-weak".into(), "fixture: one-way nondeterministic a+ with a wandering rejecting branch"));
    v.push(("alt-anbn-even".into(), "fixture: one-way alternating a^n b^n, n even"));
    v
}

/// Builds a machine by name; `lj<j>` and `prob-lj<j>` accept 2 ≤ j ≤ 9.
pub fn builtin(name: &str) -> Option<Machine> {
    let lj = |s: &str| s.parse::<usize>().ok().filter(|j| (2..=9).contains(j));
    Some(match name {
        "ld" => build_ld_machine(),
        "njk" => build_njk_machine(SweepParams::default()),
        "njk-kappa" => build_njk_realtime(SweepParams::default()).expect("one-way input"),
        "erb" => build_erb_pda(),
        "erb-stack1" => build_erb_half(0),
        "erb-stack2" => build_erb_half(1),
        "prob-erb" => build_prob_erb_pda(),
        "anbn" => fixtures::anbn(),
        "middle-weak" => fixtures::middle_weak(),
        "alt-anbn-even" => fixtures::alt_anbn_even(),
        _ => {
            if let Some(j) = name.strip_prefix("prob-lj").and_then(lj) {
                build_prob_lj_counter(j)
            } else {
                let j = name.strip_prefix("lj").and_then(lj)?;
                build_lj_counters(j)
            }
        }
    })
}

#[cfg(test)]
mod tests;
