//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the report is always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{all_words, random_counter_machine, random_word, some_path_accepts};
use rtspace::analysis::{
    equivalence_audit, fit_bound, fit_bound_with_offset, space_sweep, Bound, Generator, LengthSpec, RowVerdict,
};
use rtspace::constructions::{builtin, build_fixtures, build_ld_machine, ceil_log2, fixtures, lj_gap, pad_machine, pad_string, PadParams};
use rtspace::machine::{Mode, Timing, Word, KAPPA};
use rtspace::oracles::{erb_member, h_kappa, least_distinguishing_modulus, lj_len, lj_member};
use rtspace::{Budget, Decision, Executor, LanguageId, Ratio, SpaceMode, Verdict};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ratio(n: i64, d: i64) -> Ratio {
    Ratio::new(n.into(), d.into())
}

fn unary(n: usize) -> Vec<&'static str> {
    vec!["a"; n]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_ld_reproduction() -> Check {
    let m = build_ld_machine();
    let ex = Executor::new(&m).unwrap();
    let accepted: Vec<usize> = (0..=5000usize)
        .into_par_iter()
        .filter(|&n| ex.run(&unary(n), false).unwrap().verdict == Verdict::Accept)
        .collect();
    ensure(accepted.first() == Some(&8), || format!("accepted set starts {:?}", accepted.first()))?;
    // 8, then gaps 2^i (i+1) + 2 for i = 1, 2, …
    let mut expected = vec![8usize];
    for i in 1.. {
        let next = expected.last().unwrap() + (1usize << i) * (i + 1) + 2;
        if next > 5000 {
            break;
        }
        expected.push(next);
    }
    ensure(accepted == expected, || format!("accepted {accepted:?}, expected {expected:?}"))?;
    Ok(format!("accepted lengths {accepted:?}"))
}

fn c2_log_space() -> Check {
    let m = build_ld_machine();
    let inputs: Vec<Word> = rtspace::oracles::ld_members_up_to(1 << 16).into_iter().map(|n| vec!["a".into(); n]).collect();
    let r = space_sweep(&m, SpaceMode::Strong, "ld", &inputs, None).map_err(|e| e.to_string())?;
    ensure(r.rows.iter().all(|row| row.verdict == RowVerdict::Accept), || "a member row is not accepted".into())?;
    for row in &r.rows {
        let s = row.space.unwrap();
        ensure(s as f64 <= 2.0 * (row.n as f64).log2(), || format!("n={} space={s}", row.n))?;
    }
    let fit = fit_bound(&r, Bound::Log).map_err(|e| e.to_string())?;
    Ok(format!("{} members up to n={}, max space/log2 n = {:.3} at n={}", r.rows.len(), r.rows.last().unwrap().n, fit.max_ratio, fit.arg_max.n))
}

fn is_anbn(w: &[String]) -> bool {
    let n = w.len() / 2;
    n >= 1 && w.len() == 2 * n && w[..n].iter().all(|s| s == "a") && w[n..].iter().all(|s| s == "b")
}

fn c3_padding_homomorphism() -> Check {
    let m = fixtures::anbn();
    let pm = pad_machine(&m).unwrap();
    let (ex, pex) = (Executor::new(&m).unwrap(), Executor::new(&pm).unwrap());
    let words = all_words(&["a", "b", KAPPA], 10);
    let accepted: Vec<&Word> =
        words.par_iter().filter(|w| pex.run(w, false).unwrap().verdict == Verdict::Accept).collect();
    let bad: Vec<&&Word> = accepted.iter().filter(|w| !is_anbn(&h_kappa(w))).collect();
    ensure(bad.is_empty(), || format!("{} accepted padded strings leave the language, first {:?}", bad.len(), bad[0]))?;
    let mut pads = Vec::new();
    for n in 1..=3 {
        let w: Word = [vec!["a".to_string(); n], vec!["b".to_string(); n]].concat();
        let t = *ex.run(&w, false).unwrap().stay_runs.iter().max().unwrap();
        let padded = pad_string(&w, PadParams { t });
        ensure(pex.run(&padded, false).unwrap().verdict == Verdict::Accept, || format!("a^{n}b^{n} padded with t={t} rejected"))?;
        pads.push(t);
    }
    Ok(format!("{} strings, {} accepted, 0 counterexamples; t_max for n=1..3: {pads:?}", words.len(), accepted.len()))
}

fn c4_padded_space_preservation() -> Check {
    let mut total = 0;
    for m in build_fixtures() {
        let pm = pad_machine(&m).unwrap();
        let (ex, pex) = (Executor::new(&m).unwrap(), Executor::new(&pm).unwrap());
        let mut alphabet: Vec<&str> = m.input_alphabet.symbols().iter().map(String::as_str).collect();
        alphabet.push(KAPPA);
        let words = all_words(&alphabet, 10);
        let violations: Vec<(Word, usize, usize)> = words
            .par_iter()
            .filter_map(|w| {
                let padded = pex.explore(w, Budget::Unbounded).unwrap().max_usage;
                let plain = ex.explore(&h_kappa(w), Budget::Unbounded).unwrap().max_usage;
                (padded > plain).then(|| (w.clone(), padded, plain))
            })
            .collect();
        ensure(violations.is_empty(), || format!("{}: {} violations, first {:?}", m.name, violations.len(), violations[0]))?;
        total += words.len();
    }
    Ok(format!("{total} padded inputs over 3 fixtures, 0 violations"))
}

/// Smallest l ≥ 2 that does not divide d (d > 0).
fn least_non_divisor(d: u64) -> u64 {
    let mut l = 2;
    while d.is_multiple_of(l) {
        l += 1;
    }
    l
}

fn c5_weak_loglog() -> Check {
    let m = builtin("njk-kappa").unwrap();
    let spec: LengthSpec = "pow2:4:2048".parse().unwrap();
    let inputs = Generator::JkPadded.inputs(&spec)?;
    let r = space_sweep(&m, SpaceMode::Weak, "jk-padded", &inputs, None).map_err(|e| e.to_string())?;
    ensure(r.rows.len() == 10, || format!("{} rows", r.rows.len()))?;
    ensure(r.rows.iter().all(|row| row.verdict == RowVerdict::Accept), || "a padded member is not accepted".into())?;
    // the accepting path for the least distinguishing l keeps m = l − 1 in ⌈log2 l⌉ cells
    for (w, row) in inputs.iter().zip(&r.rows) {
        let core = h_kappa(w);
        let a = core.iter().filter(|s| *s == "a").count() as u64;
        let b = core.len() as u64 - a;
        let l = least_non_divisor(a.abs_diff(b));
        let want = ceil_log2(l) as usize - 1;
        ensure(row.space == Some(want), || format!("a^{a}b^{b}: weak space {:?}, layout gives {want}", row.space))?;
    }
    let c2 = 0.0;
    let fit = fit_bound_with_offset(&r, Bound::LogLog, c2).map_err(|e| e.to_string())?;
    ensure(fit.max_ratio <= 8.0, || format!("c1 = {}", fit.max_ratio))?;
    let worst = (2..=5000u64)
        .into_par_iter()
        .map(|n| {
            let mut top = 0;
            for a in 0..=n {
                let b = n - a;
                if a == b {
                    continue;
                }
                let l = least_distinguishing_modulus(a, b).unwrap();
                assert_eq!(l, least_non_divisor(a.abs_diff(b)), "({a},{b})");
                top = top.max(l);
            }
            (top as f64 / (n as f64).log2(), n)
        })
        .reduce(|| (0.0, 0), |x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x });
    ensure(worst.0 < 4.0, || format!("C = {} at r+s={}", worst.0, worst.1))?;
    Ok(format!(
        "c1 = {:.3} with c2 = {c2} (max at n={}); C = {:.3} at r+s={}",
        fit.max_ratio, fit.arg_max.n, worst.0, worst.1
    ))
}

fn c6_two_stack() -> Check {
    let m = builtin("erb").unwrap();
    let ex = Executor::new(&m).unwrap();
    let alphabet: Vec<String> = ["a", "0", "1"].map(String::from).to_vec();
    let audit = equivalence_audit(&ex, LanguageId::Erb, &alphabet, 12).map_err(|e| e.to_string())?;
    ensure(audit.passed(), || format!("counterexample {:?}", audit.counterexample))?;
    ensure(audit.checked == (0..=12).map(|i| 3u64.pow(i)).sum::<u64>(), || format!("checked {}", audit.checked))?;
    let inputs: Vec<Word> = (1..=1024).map(erb_member).collect();
    let r = space_sweep(&m, SpaceMode::Strong, "erb", &inputs, None).map_err(|e| e.to_string())?;
    ensure(r.rows.iter().all(|row| row.verdict == RowVerdict::Accept), || "a member row is not accepted".into())?;
    let mut worst = (0.0f64, 0usize);
    for row in &r.rows {
        let ratio = row.space.unwrap() as f64 / (row.n as f64).log2();
        if ratio > worst.0 {
            worst = (ratio, row.n);
        }
    }
    ensure(worst.0 <= 4.0, || format!("stack/log2 n = {} at n={}", worst.0, worst.1))?;
    Ok(format!("audit {} strings passed; max stack/log2 n = {:.3} at n={} over k ≤ 1024", audit.checked, worst.0, worst.1))
}

fn c7_counters() -> Check {
    let mut parts = Vec::new();
    for (j, c) in [(2usize, 3.0f64), (3, 3.0)] {
        let m = builtin(&format!("lj{j}")).unwrap();
        let kmax = (1..).take_while(|&k| lj_len(j, k) <= 100_000).last().unwrap();
        let inputs: Vec<Word> = (1..=kmax).map(|k| lj_member(j, k)).collect();
        let r = space_sweep(&m, SpaceMode::Strong, &format!("lj{j}"), &inputs, Some(1_000_000)).map_err(|e| e.to_string())?;
        ensure(r.rows.iter().all(|row| row.verdict == RowVerdict::Accept), || format!("lj{j}: member row not accepted"))?;
        let bound = Bound::NthRoot(j as u32);
        let fit = fit_bound(&r, bound).map_err(|e| e.to_string())?;
        ensure(fit.max_ratio <= c, || format!("lj{j}: space/{bound} = {} at n={}", fit.max_ratio, fit.arg_max.n))?;
        let ex = Executor::new(&m).unwrap();
        let audit = equivalence_audit(&ex, LanguageId::Lj(j), &rtspace::oracles::lj_alphabet(j), 12).map_err(|e| e.to_string())?;
        ensure(audit.passed(), || format!("lj{j}: counterexample {:?}", audit.counterexample))?;
        parts.push(format!(
            "lj{j}: n ≤ {}, max space/n^(1/{j}) = {:.3}, audit {} strings passed",
            r.rows.last().unwrap().n,
            fit.max_ratio,
            audit.checked
        ));
    }
    Ok(parts.join("; "))
}

/// Membership in the block language by direct comparison with the members.
fn erb_by_construction(w: &[String]) -> bool {
    (1..).map(erb_member).take_while(|m| m.len() <= w.len()).any(|m| m == w)
}

fn c8_probabilistic() -> Check {
    let m = builtin("prob-erb").unwrap();
    let ex = Executor::new(&m).unwrap();
    let two_thirds = ratio(2, 3);
    let off: Vec<usize> = (1..=64usize)
        .into_par_iter()
        .filter(|&k| ex.acceptance_probability(&erb_member(k)).unwrap() != two_thirds)
        .collect();
    ensure(off.is_empty(), || format!("member probability differs from 2/3 for k in {off:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let syms = ["a", "0", "1"];
    let mut corpus: Vec<Word> = Vec::new();
    while corpus.len() < 200 {
        let mut w = erb_member(rng.gen_range(1..=8));
        let i = rng.gen_range(0..w.len());
        match rng.gen_range(0..3) {
            0 => w[i] = syms.choose(&mut rng).unwrap().to_string(),
            1 => {
                w.remove(i);
            }
            _ => w.insert(i, syms.choose(&mut rng).unwrap().to_string()),
        }
        if !erb_by_construction(&w) && !corpus.contains(&w) {
            corpus.push(w);
        }
    }
    let third = ratio(1, 3);
    let mut histogram = [0usize; 3];
    for w in &corpus {
        let p = ex.acceptance_probability(w).unwrap();
        ensure(p <= third, || format!("{w:?} has probability {p}"))?;
        histogram[if p.is_zero() { 0 } else { 1 }] += 1;
    }
    // gaps from the branch weights: members reach 1 − q, non-members at most (1 − q)(j − 1)/j
    let half = ratio(1, 2);
    let mut gaps = Vec::new();
    for j in 2..=4i64 {
        let m = builtin(&format!("prob-lj{j}")).unwrap();
        let ex = Executor::new(&m).unwrap();
        let member = ratio(2 * j - 1, 4 * (j - 1));
        let bound = &member * ratio(j - 1, j);
        for k in 1..=3 {
            let p = ex.acceptance_probability(&lj_member(j as usize, k)).unwrap();
            ensure(p == member, || format!("prob-lj{j}: member k={k} has {p}, expected {member}"))?;
        }
        for w in all_words(&rtspace::oracles::lj_alphabet(j as usize).iter().map(String::as_str).collect::<Vec<_>>(), 7) {
            if LanguageId::Lj(j as usize).is_member(&w) {
                continue;
            }
            let p = ex.acceptance_probability(&w).unwrap();
            ensure(p <= bound, || format!("prob-lj{j}: {w:?} has {p} > {bound}"))?;
        }
        let gap = (&member - &half).min(&half - &bound);
        ensure(gap > Ratio::zero(), || format!("prob-lj{j}: gap {gap}"))?;
        ensure(gap == lj_gap(j as usize), || format!("prob-lj{j}: gap {gap} vs reported {}", lj_gap(j as usize)))?;
        gaps.push(gap);
    }
    ensure(gaps.windows(2).all(|g| g[0] > g[1]), || format!("gaps {gaps:?} are not decreasing"))?;
    let shown: Vec<String> = gaps.iter().map(|g| g.to_string()).collect();
    Ok(format!(
        "64 members at exactly 2/3; 200 mutants ≤ 1/3 ({} at 0, {} at 1/3); prob-lj gaps {}",
        histogram[0],
        histogram[1],
        shown.join(", ")
    ))
}

fn c9_engine_properties() -> Check {
    // budget monotonicity
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut decided = [0usize; 3];
    for t in 0..1000 {
        let timing = if rng.gen_bool(0.5) { Timing::RealTime } else { Timing::OneWay };
        let mode = if rng.gen_bool(0.5) { Mode::Nondeterministic } else { Mode::Alternating };
        let m = random_counter_machine(&mut rng, timing, mode);
        let ex = Executor::new(&m).map_err(|e| format!("triple {t}: {e}"))?;
        let w = random_word(&mut rng, 6);
        let s1 = rng.gen_range(0..5);
        let s2 = rng.gen_range(s1 + 1..=6);
        let (d1, d2) = (ex.decide(&w, Budget::Cells(s1)).unwrap(), ex.decide(&w, Budget::Cells(s2)).unwrap());
        let ok = match d1 {
            Decision::Accept => d2 == Decision::Accept,
            Decision::Reject => d2 == Decision::Reject,
            Decision::BudgetExceeded => true,
        };
        ensure(ok, || format!("triple {t}: {d1:?} at {s1} but {d2:?} at {s2} on {w:?}"))?;
        decided[match d1 {
            Decision::Accept => 0,
            Decision::Reject => 1,
            Decision::BudgetExceeded => 2,
        }] += 1;
    }
    // deterministic runs against the fixpoint
    let mut det = 0;
    let anbn = fixtures::anbn();
    let det_cases: Vec<(rtspace::Machine, Vec<&str>)> = vec![
        (anbn.clone(), vec!["a", "b"]),
        (pad_machine(&anbn).unwrap(), vec!["a", "b", KAPPA]),
        (build_ld_machine(), vec!["a"]),
        (builtin("erb").unwrap(), vec!["a", "0", "1"]),
        (builtin("lj2").unwrap(), vec!["a0", "a1"]),
    ];
    for (m, alphabet) in &det_cases {
        let ex = Executor::new(m).unwrap();
        let words = all_words(alphabet, 10);
        let bad = words.par_iter().find_first(|w| {
            let run = ex.run(w, false).unwrap().verdict == Verdict::Accept;
            let fix = ex.decide(w, Budget::Unbounded).unwrap();
            fix == Decision::BudgetExceeded || run != (fix == Decision::Accept)
        });
        ensure(bad.is_none(), || format!("{}: run and fixpoint disagree on {:?}", m.name, bad.unwrap()))?;
        det += words.len();
    }
    // fixpoint against brute-force path enumeration on real-time branching machines
    let mut paths = 0;
    let mut rt_cases: Vec<(rtspace::Machine, Vec<&str>, usize)> = vec![
        (pad_machine(&fixtures::middle_weak()).unwrap(), vec!["a", KAPPA], 8),
        (builtin("njk-kappa").unwrap(), vec!["a", "b", KAPPA], 8),
    ];
    for _ in 0..100 {
        rt_cases.push((random_counter_machine(&mut rng, Timing::RealTime, Mode::Nondeterministic), vec!["a", "b"], 6));
    }
    for (m, alphabet, len) in &rt_cases {
        let ex = Executor::new(m).unwrap();
        let words = all_words(alphabet, *len);
        let bad = words.par_iter().find_first(|w| {
            let fix = ex.decide(w, Budget::Unbounded).unwrap();
            (fix == Decision::Accept) != some_path_accepts(&ex, w)
        });
        ensure(bad.is_none(), || format!("{}: fixpoint and path enumeration disagree on {:?}", m.name, bad.unwrap()))?;
        paths += words.len();
    }
    // path mass
    let mut masses = 0;
    for (name, alphabet, len) in [("prob-erb", vec!["a", "0", "1"], 8), ("prob-lj2", vec!["a0", "a1"], 10), ("prob-lj3", vec!["a0", "a1", "a2"], 7)] {
        let m = builtin(name).unwrap();
        let ex = Executor::new(&m).unwrap();
        let words = all_words(&alphabet, len);
        let bad = words.par_iter().find_first(|w| {
            let (a, r) = ex.path_mass(w).unwrap();
            a + r != Ratio::one()
        });
        ensure(bad.is_none(), || format!("{name}: mass not 1 on {:?}", bad.unwrap()))?;
        masses += words.len();
    }
    Ok(format!(
        "1000 budget triples monotone (first budget: {} accept, {} reject, {} exceeded); {det} deterministic agreements; {paths} path-enumeration agreements; {masses} unit path masses",
        decided[0], decided[1], decided[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("L_D reproduction", c1_ld_reproduction, 10),
        ("log-space tightness", c2_log_space, 60),
        ("padding homomorphism", c3_padding_homomorphism, 120),
        ("padded space preservation", c4_padded_space_preservation, 300),
        ("weak log log bound", c5_weak_loglog, 300),
        ("two-stack logarithmic space", c6_two_stack, 120),
        ("counter-family bounds", c7_counters, 180),
        ("probabilistic exactness", c8_probabilistic, 300),
        ("engine property suite", c9_engine_properties, 300),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(*limit) => Err(format!("{d}; over the {limit} s limit")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("criterion {id} ({name}): {tag} [{:.1} s] {detail}", took.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
