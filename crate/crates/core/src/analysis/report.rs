use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::metering::SpaceMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowVerdict {
    Accept,
    Reject,
    CapExceeded,
}

impl RowVerdict {
    pub fn name(self) -> &'static str {
        match self {
            RowVerdict::Accept => "accept",
            RowVerdict::Reject => "reject",
            RowVerdict::CapExceeded => "cap-exceeded",
        }
    }
}

impl FromStr for RowVerdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "accept" => Ok(RowVerdict::Accept),
            "reject" => Ok(RowVerdict::Reject),
            "cap-exceeded" => Ok(RowVerdict::CapExceeded),
            _ => Err(format!("unknown verdict {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    /// Run-length compressed rendering of the input.
    pub input: String,
    pub mode: SpaceMode,
    pub space: Option<usize>,
    pub verdict: RowVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub machine: String,
    /// `None` when the default per-length cap was used.
    pub cap: Option<usize>,
    pub generator: String,
    /// Unix seconds; kept out of the CSV body.
    pub timestamp: u64,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

const HEADER: [&str; 5] = ["n", "input", "mode", "space", "verdict"];

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# machine: {}\n", self.machine));
        out.push_str(&format!(
            "# cap: {}\n",
            self.cap.map_or_else(|| "default".to_string(), |c| c.to_string())
        ));
        out.push_str(&format!("# generator: {}\n", self.generator));
        out.push_str(&format!("# timestamp: {}\n", self.timestamp));
        out.push_str(&self.csv_body());
        out
    }

    /// Header and rows only; identical sweeps give identical bodies.
    pub fn csv_body(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(HEADER).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.input.clone(),
                r.mode.name().to_string(),
                r.space.map_or_else(String::new, |s| s.to_string()),
                r.verdict.name().to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn from_csv(text: &str) -> Result<Self, ReportError> {
        let mut report =
            SweepReport { machine: String::new(), cap: None, generator: String::new(), timestamp: 0, rows: Vec::new() };
        for line in text.lines() {
            let Some(meta) = line.strip_prefix('#') else { continue };
            if let Some((k, v)) = meta.split_once(':') {
                let v = v.trim();
                match k.trim() {
                    "machine" => report.machine = v.to_string(),
                    "cap" => report.cap = v.parse().ok(),
                    "generator" => report.generator = v.to_string(),
                    "timestamp" => report.timestamp = v.parse().unwrap_or(0),
                    _ => {}
                }
            }
        }
        let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let bad = |line: usize, message: String| ReportError::Malformed { line, message };
        if rd.headers()?.iter().collect::<Vec<_>>() != HEADER {
            return Err(bad(1, "expected header n,input,mode,space,verdict".into()));
        }
        for rec in rd.records() {
            let rec = rec?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            let n = rec[0].parse().map_err(|_| bad(line, format!("bad length {:?}", &rec[0])))?;
            let mode = rec[2].parse().map_err(|e: String| bad(line, e))?;
            let space = if rec[3].is_empty() {
                None
            } else {
                Some(rec[3].parse().map_err(|_| bad(line, format!("bad space {:?}", &rec[3])))?)
            };
            let verdict = rec[4].parse().map_err(|e: String| bad(line, e))?;
            report.rows.push(SweepRow { n, input: rec[1].to_string(), mode, space, verdict });
        }
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}
