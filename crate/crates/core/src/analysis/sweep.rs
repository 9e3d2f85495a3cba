use rayon::prelude::*;

use crate::engine::{Budget, Decision, Executor};
use crate::machine::{render_word, Machine, Word};
use crate::metering::{default_cap, measure, MeterError, SpaceMode};

use super::report::{RowVerdict, SweepReport, SweepRow};

/// One row per input, evaluated concurrently and sorted by length (stable,
/// so inputs of equal length keep their generator order).
///
/// `cap: None` applies [`default_cap`] per length. The default is
/// logarithmic, so sweeps of polynomial-space machines pass a fixed cap.
pub fn space_sweep(
    m: &Machine,
    mode: SpaceMode,
    generator: &str,
    inputs: &[Word],
    cap: Option<usize>,
) -> Result<SweepReport, MeterError> {
    let ex = Executor::new(m)?;
    let mut rows: Vec<SweepRow> = inputs
        .par_iter()
        .map(|w| sweep_row(&ex, mode, w, cap.unwrap_or_else(|| default_cap(w.len()))))
        .collect::<Result<_, _>>()?;
    rows.sort_by_key(|r| r.n);
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    Ok(SweepReport { machine: m.name.clone(), cap, generator: generator.to_string(), timestamp, rows })
}

fn sweep_row(ex: &Executor, mode: SpaceMode, w: &Word, cap: usize) -> Result<SweepRow, MeterError> {
    let meas = measure(ex, mode, w, cap)?;
    let verdict = if meas.truncated {
        RowVerdict::CapExceeded
    } else {
        match mode {
            SpaceMode::Weak | SpaceMode::Middle if meas.space.is_some() => RowVerdict::Accept,
            SpaceMode::Weak | SpaceMode::Middle => RowVerdict::Reject,
            // nothing was pruned, so the verdict under the cap is final
            SpaceMode::Strong => match ex.decide(w, Budget::Cells(cap))? {
                Decision::Accept => RowVerdict::Accept,
                Decision::Reject => RowVerdict::Reject,
                Decision::BudgetExceeded => RowVerdict::CapExceeded,
            },
        }
    };
    Ok(SweepRow { n: w.len(), input: render_word(w), mode, space: meas.space, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin;

    #[test]
    fn empty_inputs_give_an_empty_report() {
        let r = space_sweep(&builtin("ld").unwrap(), SpaceMode::Strong, "ld", &[], None).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.csv_body(), "n,input,mode,space,verdict\n");
    }

    #[test]
    fn rows_are_sorted_and_flagged() {
        let m = builtin("ld").unwrap();
        let inputs: Vec<Word> = [14usize, 8, 9].iter().map(|&n| vec!["a".to_string(); n]).collect();
        let r = space_sweep(&m, SpaceMode::Weak, "ld", &inputs, None).unwrap();
        let got: Vec<(usize, Option<usize>, RowVerdict)> = r.rows.iter().map(|r| (r.n, r.space, r.verdict)).collect();
        assert_eq!(got[0], (8, Some(2), RowVerdict::Accept));
        assert_eq!(got[1], (9, None, RowVerdict::Reject));
        assert_eq!(got[2].0, 14);
        let r = space_sweep(&m, SpaceMode::Strong, "ld", &inputs, Some(1)).unwrap();
        assert!(r.rows.iter().all(|r| r.verdict == RowVerdict::CapExceeded));
        assert_eq!(r.cap, Some(1));
    }
}
