//! Line-oriented reports emitted by the command-line tool, with a JSON
//! rendering of the same data. Both forms read back into a [`Report`].
//!
//! ```text
//! heiscusp-report v1
//! command: verify --family 1 --k 1 --d 2
//! timestamp: 1760000000
//! record: verify family=1 k=1 d=2 | PASS
//!   input: family = 1 (NilTorus)
//!   detail: relations: ok (3 relators, 0 with nonidentity residual)
//! summary: total=1 pass=1 fail=0 refused=0 skipped=0 info=0
//! ```

use std::fmt;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const HEADER: &str = "heiscusp-report v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// An expected-pass check passed.
    Pass,
    /// An expected-pass check failed; makes the exit status nonzero.
    Fail,
    /// The request is impossible for a documented reason, such as an
    /// obstructed field.
    Refused,
    /// The parameter point is not a member of the family.
    Skipped,
    /// Reference data, not a check.
    Info,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Refused => "REFUSED",
            Outcome::Skipped => "SKIPPED",
            Outcome::Info => "INFO",
        })
    }
}

impl FromStr for Outcome {
    type Err = ReportParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "PASS" => Outcome::Pass,
            "FAIL" => Outcome::Fail,
            "REFUSED" => Outcome::Refused,
            "SKIPPED" => Outcome::Skipped,
            "INFO" => Outcome::Info,
            other => return Err(ReportParseError::line(0, format!("unknown outcome {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: Vec<(String, String)>,
    pub outcome: Outcome,
    pub details: Vec<String>,
    /// Relation and the canonical text of its nonidentity value.
    pub residuals: Vec<(String, String)>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, outcome: Outcome) -> Self {
        CheckRecord {
            name: name.into(),
            inputs: Vec::new(),
            outcome,
            details: Vec::new(),
            residuals: Vec::new(),
        }
    }

    pub fn input(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.inputs.push((key.into(), value.to_string()));
        self
    }

    pub fn detail(mut self, text: impl Into<String>) -> Self {
        self.details.push(text.into());
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub refused: usize,
    pub skipped: usize,
    pub info: usize,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
        Summary {
            total: records.len(),
            pass: count(Outcome::Pass),
            fail: count(Outcome::Fail),
            refused: count(Outcome::Refused),
            skipped: count(Outcome::Skipped),
            info: count(Outcome::Info),
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "total={} pass={} fail={} refused={} skipped={} info={}",
            self.total, self.pass, self.fail, self.refused, self.skipped, self.info
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical runs.
    pub timestamp: u64,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>, records: Vec<CheckRecord>) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let summary = Summary::of(&records);
        Report {
            command: command.into(),
            timestamp,
            records,
            summary,
        }
    }

    /// `0` when no check failed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\ncommand: {}\ntimestamp: {}\n", self.command, self.timestamp);
        for r in &self.records {
            out.push_str(&format!("record: {} | {}\n", r.name, r.outcome));
            for (k, v) in &r.inputs {
                out.push_str(&format!("  input: {k} = {v}\n"));
            }
            for d in &r.details {
                out.push_str(&format!("  detail: {d}\n"));
            }
            for (rel, val) in &r.residuals {
                out.push_str(&format!("  residual: {rel} => {val}\n"));
            }
        }
        out.push_str(&format!("summary: {}\n", self.summary));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report, ReportParseError> {
        serde_json::from_str(text).map_err(|e| ReportParseError::line(e.line(), e.to_string()))
    }

    /// Reads the text form back. The summary line must agree with the
    /// records.
    pub fn from_text(text: &str) -> Result<Report, ReportParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (n, first) = lines.next().ok_or_else(|| ReportParseError::line(1, "empty report"))?;
        if first != HEADER {
            return Err(ReportParseError::line(n, format!("expected {HEADER:?}")));
        }
        let field = |pair: Option<(usize, &str)>, key: &str| -> Result<String, ReportParseError> {
            let (n, line) = pair.ok_or_else(|| ReportParseError::line(0, format!("missing {key}")))?;
            line.strip_prefix(key)
                .map(str::to_string)
                .ok_or_else(|| ReportParseError::line(n, format!("expected {key:?}")))
        };
        let command = field(lines.next(), "command: ")?;
        let ts = field(lines.next(), "timestamp: ")?;
        let timestamp = ts
            .parse()
            .map_err(|_| ReportParseError::line(3, format!("bad timestamp {ts:?}")))?;

        let mut records: Vec<CheckRecord> = Vec::new();
        let mut summary_line = None;
        for (n, line) in lines {
            if let Some(rest) = line.strip_prefix("record: ") {
                let (name, outcome) = rest
                    .rsplit_once(" | ")
                    .ok_or_else(|| ReportParseError::line(n, "record line lacks ' | '"))?;
                let outcome = outcome.parse().map_err(|e: ReportParseError| e.at(n))?;
                records.push(CheckRecord::new(name, outcome));
                continue;
            }
            if let Some(rest) = line.strip_prefix("summary: ") {
                summary_line = Some((n, rest.to_string()));
                continue;
            }
            let rec = records
                .last_mut()
                .ok_or_else(|| ReportParseError::line(n, "content before first record"))?;
            if let Some(rest) = line.strip_prefix("  input: ") {
                let (k, v) = rest
                    .split_once(" = ")
                    .ok_or_else(|| ReportParseError::line(n, "input line lacks ' = '"))?;
                rec.inputs.push((k.to_string(), v.to_string()));
            } else if let Some(rest) = line.strip_prefix("  detail: ") {
                rec.details.push(rest.to_string());
            } else if let Some(rest) = line.strip_prefix("  residual: ") {
                let (rel, val) = rest
                    .split_once(" => ")
                    .ok_or_else(|| ReportParseError::line(n, "residual line lacks ' => '"))?;
                rec.residuals.push((rel.to_string(), val.to_string()));
            } else {
                return Err(ReportParseError::line(n, format!("unrecognized line {line:?}")));
            }
        }
        let (n, summary_text) = summary_line.ok_or_else(|| ReportParseError::line(0, "missing summary"))?;
        let summary = Summary::of(&records);
        if summary.to_string() != summary_text {
            return Err(ReportParseError::line(
                n,
                format!("summary {summary_text:?} disagrees with records ({summary})"),
            ));
        }
        Ok(Report {
            command,
            timestamp,
            records,
            summary,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("report line {line}: {msg}")]
pub struct ReportParseError {
    pub line: usize,
    pub msg: String,
}

impl ReportParseError {
    fn line(line: usize, msg: impl Into<String>) -> Self {
        ReportParseError { line, msg: msg.into() }
    }

    fn at(self, line: usize) -> Self {
        ReportParseError { line, ..self }
    }
}
