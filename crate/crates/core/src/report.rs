//! Verdicts and the report format shared by the command line and suites.

use std::fmt;

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Bounded,
    Fail,
}

impl Verdict {
    /// `fail` beats `bounded` beats `ok`.
    pub fn join(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn passed(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Ok => "ok",
            Verdict::Bounded => "bounded",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Detail {
    pub check: String,
    pub verdict: Verdict,
    pub message: String,
}

impl Detail {
    pub fn new(check: impl Into<String>, verdict: Verdict, message: impl Into<String>) -> Detail {
        Detail { check: check.into(), verdict, message: message.into() }
    }

    pub fn ok(check: impl Into<String>, message: impl Into<String>) -> Detail {
        Detail::new(check, Verdict::Ok, message)
    }

    pub fn fail(check: impl Into<String>, message: impl Into<String>) -> Detail {
        Detail::new(check, Verdict::Fail, message)
    }

    pub fn holds(check: impl Into<String>, ok: bool, message: impl Into<String>) -> Detail {
        Detail::new(check, if ok { Verdict::Ok } else { Verdict::Fail }, message)
    }
}

pub fn overall(details: &[Detail]) -> Verdict {
    details.iter().fold(Verdict::Ok, |v, d| v.join(d.verdict))
}

/// One command's outcome. Field order is the serialized order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    pub details: Vec<Detail>,
    pub witnesses: Vec<String>,
    pub millis: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Vec<String>) -> Report {
        Report {
            schema: SCHEMA,
            command: command.into(),
            inputs,
            verdict: Verdict::Ok,
            details: Vec::new(),
            witnesses: Vec::new(),
            millis: 0,
        }
    }

    pub fn push(&mut self, d: Detail) {
        self.verdict = self.verdict.join(d.verdict);
        self.details.push(d);
    }

    pub fn extend(&mut self, ds: impl IntoIterator<Item = Detail>) {
        for d in ds {
            self.push(d);
        }
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}: {}", self.command, self.inputs.join(" "), self.verdict)?;
        for d in &self.details {
            writeln!(f, "  [{}] {}: {}", d.verdict, d.check, d.message)?;
        }
        for w in &self.witnesses {
            writeln!(f, "  witness: {w}")?;
        }
        Ok(())
    }
}
