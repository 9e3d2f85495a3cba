use super::*;
use crate::engine::{Budget, Decision, Executor, StorageContent, Verdict};
use crate::machine::{parse_machine, serialize_machine, validate_machine, Mode, Timing, KAPPA};
use crate::oracles::{erb_member, h_kappa, lj_member};
use crate::Ratio;

fn word(s: &str) -> Vec<String> {
    s.chars().map(String::from).collect()
}

fn lj_word(s: &str) -> Vec<String> {
    // "a1a0a0" → ["a1", "a0", "a0"]
    s.as_bytes().chunks(2).map(|c| String::from_utf8(c.to_vec()).unwrap()).collect()
}

fn accepts(m: &crate::machine::Machine, w: &[String]) -> bool {
    Executor::new(m).unwrap().run(w, false).unwrap().verdict == Verdict::Accept
}

#[test]
fn every_builtin_validates_and_round_trips() {
    let mut names: Vec<String> = builtin_names().into_iter().map(|(n, _)| n).collect();
    names.extend(["lj5", "prob-lj6"].map(String::from));
    for name in names {
        let m = builtin(&name).unwrap_or_else(|| panic!("{name}"));
        assert_eq!(validate_machine(&m), vec![], "{name}");
        assert_eq!(parse_machine(&serialize_machine(&m)).unwrap(), m, "{name}");
    }
    assert!(builtin("lj1").is_none());
    assert!(builtin("lj10").is_none());
    assert!(builtin("nope").is_none());
}

#[test]
fn erb_examples() {
    let m = build_erb_pda();
    assert_eq!((m.timing, m.mode), (Timing::RealTime, Mode::Deterministic));
    assert!(accepts(&m, &word("a0a1a10a11")));
    assert!(!accepts(&m, &word("a0a1a11")));
    for k in 1..=6 {
        let w = erb_member(k);
        assert!(accepts(&m, &w), "k={k}");
        assert!(accepts(&build_erb_half(0), &w) && accepts(&build_erb_half(1), &w), "k={k}");
    }
    // each half misses the checks of the other stack
    assert!(accepts(&build_erb_half(1), &word("a0a1a10a1")));
    assert!(!accepts(&build_erb_half(0), &word("a0a1a10a1")));
    assert!(accepts(&build_erb_half(0), &word("a0a1a0a1")));
    assert!(!accepts(&build_erb_half(1), &word("a0a1a0a1")));
}

#[test]
fn erb_stack_load_is_logarithmic() {
    let m = builtin("erb").unwrap();
    let ex = Executor::new(&m).unwrap();
    for k in [1usize, 7, 50, 200] {
        let w = erb_member(k);
        let r = ex.run(&w, false).unwrap();
        assert_eq!(r.verdict, Verdict::Accept);
        assert!(r.space_profile.max_usage as f64 <= 4.0 * (w.len() as f64).log2(), "k={k}");
    }
}

#[test]
fn lj_examples() {
    let m = build_lj_counters(2);
    assert!(accepts(&m, &lj_word("a1a0a1a0a0a1a0a0a0")));
    assert!(!accepts(&m, &lj_word("a1a0a1a0")));
    assert!(!accepts(&m, &[]));
    for j in 2..=4 {
        let m = build_lj_counters(j);
        for k in 1..=4 {
            assert!(accepts(&m, &lj_member(j, k)), "j={j} k={k}");
            let mut w = lj_member(j, k);
            w.pop();
            assert!(!accepts(&m, &w), "j={j} k={k} truncated");
        }
    }
}

#[test]
fn lj3_piece_counter_is_preloaded() {
    let w = lj_member(3, 3);
    let m = builtin("lj3").unwrap();
    let ex = Executor::new(&m).unwrap();
    let r = ex.run(&w, true).unwrap();
    assert_eq!(r.verdict, Verdict::Accept);
    let trace = r.trace.unwrap();
    let piece_starts: Vec<usize> = w.iter().enumerate().filter(|(_, s)| *s == "a2").map(|(i, _)| i + 1).collect();
    assert_eq!(piece_starts.len(), 3);
    for (i, &pos) in piece_starts.iter().enumerate() {
        let c = trace.iter().find(|c| c.input_position == pos).unwrap();
        let StorageContent::Counters(v) = &c.storage else { panic!("counter machine") };
        let mut v = v.clone();
        v.sort();
        // piece i+1 starts with the earlier block count and two cleared counters
        assert_eq!(v, vec![0, 0, i as u64], "piece {}", i + 1);
    }
}

#[test]
fn padded_fixture_examples() {
    let m = fixtures::anbn();
    let pm = pad_machine(&m).unwrap();
    assert_eq!(pm.timing, Timing::RealTime);
    let w = word("aabb");
    let r = Executor::new(&m).unwrap().run(&w, false).unwrap();
    let t = *r.stay_runs.iter().max().unwrap();
    assert!(t >= 1);
    assert!(accepts(&pm, &pad_string(&w, PadParams { t })));
    // the first rule is stationary, so a κ must follow the first a
    let mut short = w.clone();
    short.insert(2, KAPPA.to_string());
    assert!(!accepts(&pm, &short));
    for f in build_fixtures() {
        assert_eq!(validate_machine(&pad_machine(&f).unwrap()), vec![], "{}", f.name);
    }
    assert_eq!(h_kappa(&pad_string(&w, PadParams { t: 5 })), w);
}

#[test]
fn njk_realtime_follows_the_l2_path() {
    let p = SweepParams::default();
    let m = builtin("njk-kappa").unwrap();
    let ex = Executor::new(&m).unwrap();
    let w = pad_string(&word("abb"), p.pad_for(2));
    assert_eq!(ex.decide(&w, Budget::Cells(0)).unwrap(), Decision::Accept);
    // r = s on every path
    let w = pad_string(&word("aabb"), p.pad_for(3));
    assert_ne!(ex.decide(&w, Budget::Cells(2)).unwrap(), Decision::Accept);
}

#[test]
fn prob_erb_values() {
    let m = builtin("prob-erb").unwrap();
    let ex = Executor::new(&m).unwrap();
    let third = Ratio::new(1.into(), 3.into());
    for w in ["a0a1a10a11", "a0a1a11", "", "a0a1a10a1", "a0a1a0a1", "0"] {
        let p = ex.acceptance_probability(&word(w)).unwrap();
        let k = &p / &third;
        assert!(k.is_integer() && k <= Ratio::from_integer(2.into()), "{w}: {p}");
    }
}

#[test]
fn prob_lj_values() {
    for j in 2..=4 {
        let m = build_prob_lj_counter(j);
        let ex = Executor::new(&m).unwrap();
        let p = lj_member_probability(j);
        assert!(p > Ratio::new(1.into(), 2.into()));
        assert!(lj_nonmember_bound(j) < Ratio::new(1.into(), 2.into()));
        for k in 1..=3 {
            assert_eq!(ex.acceptance_probability(&lj_member(j, k)).unwrap(), p, "j={j} k={k}");
        }
        let mut bad = lj_member(j, 3);
        bad.pop();
        assert!(ex.acceptance_probability(&bad).unwrap() <= lj_nonmember_bound(j), "j={j}");
    }
    let p2 = lj_member_probability(2);
    assert_eq!(p2, Ratio::new(3.into(), 4.into()));
    // a second block of the wrong length fails exactly one copy
    let m = build_prob_lj_counter(2);
    let ex = Executor::new(&m).unwrap();
    assert_eq!(ex.acceptance_probability(&lj_word("a1a0a1a0")).unwrap(), p2 / Ratio::from_integer(2.into()));
    assert!(lj_gap(2) > lj_gap(3) && lj_gap(3) > lj_gap(4));
}
