use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::report::{SweepReport, SweepRow};

/// Growth functions, all with base-2 logarithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Log,
    LogLog,
    Sqrt,
    NthRoot(u32),
    Linear,
}

impl Bound {
    pub fn eval(self, n: usize) -> f64 {
        let x = n as f64;
        match self {
            Bound::Log => x.log2(),
            Bound::LogLog => {
                if n < 2 {
                    0.0
                } else {
                    x.log2().log2()
                }
            }
            Bound::Sqrt => x.sqrt(),
            Bound::NthRoot(j) => x.powf(1.0 / j as f64),
            Bound::Linear => x,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Log => f.write_str("log"),
            Bound::LogLog => f.write_str("loglog"),
            Bound::Sqrt => f.write_str("sqrt"),
            Bound::NthRoot(j) => write!(f, "root:{j}"),
            Bound::Linear => f.write_str("linear"),
        }
    }
}

impl FromStr for Bound {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log" => Ok(Bound::Log),
            "loglog" => Ok(Bound::LogLog),
            "sqrt" => Ok(Bound::Sqrt),
            "linear" => Ok(Bound::Linear),
            _ => match s.strip_prefix("root:").and_then(|j| j.parse::<u32>().ok()) {
                Some(j) if j >= 1 => Ok(Bound::NthRoot(j)),
                _ => Err(format!("unknown bound {s:?} (log, loglog, sqrt, root:<j>, linear)")),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundFit {
    pub bound: Bound,
    /// Constant subtracted from every space value before dividing.
    pub offset: f64,
    pub max_ratio: f64,
    pub arg_max: SweepRow,
    pub rows_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error("no row has a space value and n above the domain floor of {0}")]
    NoRows(Bound),
}

/// max over rows of space / f(n).
pub fn fit_bound(r: &SweepReport, bound: Bound) -> Result<BoundFit, FitError> {
    fit_bound_with_offset(r, bound, 0.0)
}

/// max over rows of (space − c2) / f(n), for a fixed additive constant c2.
///
/// Ties go to the smallest (n, input), so the result does not depend on
/// row order.
pub fn fit_bound_with_offset(r: &SweepReport, bound: Bound, c2: f64) -> Result<BoundFit, FitError> {
    let mut best: Option<(f64, &SweepRow)> = None;
    let mut used = 0;
    for row in &r.rows {
        let Some(space) = row.space else { continue };
        let f = bound.eval(row.n);
        if f.is_nan() || f <= 0.0 {
            continue;
        }
        used += 1;
        let ratio = (space as f64 - c2) / f;
        let better = match best {
            None => true,
            Some((b, brow)) => match ratio.total_cmp(&b) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => (row.n, &row.input) < (brow.n, &brow.input),
            },
        };
        if better {
            best = Some((ratio, row));
        }
    }
    let (max_ratio, row) = best.ok_or(FitError::NoRows(bound))?;
    Ok(BoundFit { bound, offset: c2, max_ratio, arg_max: row.clone(), rows_used: used })
}

impl BoundFit {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::report::RowVerdict;
    use crate::metering::SpaceMode;

    fn report(rows: &[(usize, Option<usize>)]) -> SweepReport {
        SweepReport {
            machine: "m".into(),
            cap: None,
            generator: "g".into(),
            timestamp: 0,
            rows: rows
                .iter()
                .map(|&(n, space)| SweepRow {
                    n,
                    input: format!("a^{n}"),
                    mode: SpaceMode::Weak,
                    space,
                    verdict: if space.is_some() { RowVerdict::Accept } else { RowVerdict::Reject },
                })
                .collect(),
        }
    }

    #[test]
    fn ratios_and_witness() {
        let r = report(&[(1, Some(5)), (4, Some(4)), (16, Some(4)), (64, None)]);
        let fit = fit_bound(&r, Bound::Log).unwrap();
        // n = 1 is below the floor of log
        assert_eq!(fit.rows_used, 2);
        assert_eq!(fit.max_ratio, 2.0);
        assert_eq!(fit.arg_max.n, 4);
        let fit = fit_bound(&r, Bound::LogLog).unwrap();
        assert_eq!((fit.max_ratio, fit.arg_max.n), (4.0, 4));
        assert_eq!(fit_bound(&r, Bound::NthRoot(2)).unwrap().max_ratio, fit_bound(&r, Bound::Sqrt).unwrap().max_ratio);
        assert_eq!(fit_bound_with_offset(&r, Bound::Log, 2.0).unwrap().max_ratio, 1.0);
    }

    #[test]
    fn constant_space_vanishes_against_log() {
        let ratios: Vec<f64> = [8usize, 64, 4096]
            .iter()
            .map(|&n| fit_bound(&report(&[(n, Some(3))]), Bound::Log).unwrap().max_ratio)
            .collect();
        assert!(ratios.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn empty_after_filtering_is_an_error() {
        assert_eq!(fit_bound(&report(&[(1, Some(1)), (9, None)]), Bound::Log), Err(FitError::NoRows(Bound::Log)));
        assert!(fit_bound(&report(&[]), Bound::Linear).is_err());
    }

    #[test]
    fn bound_names() {
        for s in ["log", "loglog", "sqrt", "root:3", "linear"] {
            assert_eq!(s.parse::<Bound>().unwrap().to_string(), s);
        }
        assert!("root:0".parse::<Bound>().is_err());
        assert!("cubic".parse::<Bound>().is_err());
    }
}
