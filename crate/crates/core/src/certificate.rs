//! Machine-readable verdicts.
//!
//! A certificate serialises to one canonical JSON document: fixed key order,
//! elements in the `p,n:labels` encoding, no timestamps. Two runs with the
//! same inputs produce byte-identical documents whatever the worker count.
//! The wall time is kept on the value for reporting but never serialised.

use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ggs::DefiningVector;

pub const SCHEMA: &str = "ggs-certificate/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    Skipped(String),
}

impl Verdict {
    /// Exit status convention: verified and clean skips are successes.
    pub fn is_success(&self) -> bool {
        !matches!(self, Verdict::Refuted)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => f.write_str("verified"),
            Verdict::Refuted => f.write_str("refuted"),
            Verdict::Skipped(why) => write!(f, "skipped: {why}"),
        }
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verified" => Ok(Verdict::Verified),
            "refuted" => Ok(Verdict::Refuted),
            _ => s
                .strip_prefix("skipped: ")
                .map(|r| Verdict::Skipped(r.to_string()))
                .ok_or_else(|| Error::Encoding(format!("unknown verdict {s:?}"))),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub p: u8,
    /// Residues in `0..p`.
    pub e: Vec<u8>,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
}

impl Params {
    pub fn new(v: &DefiningVector, n: u32) -> Self {
        Self {
            p: v.p(),
            e: v.entries().to_vec(),
            n,
            m: None,
            x: None,
            y: None,
        }
    }

    pub fn vector(&self) -> Result<DefiningVector> {
        let e: Vec<i64> = self.e.iter().map(|&x| x as i64).collect();
        DefiningVector::new(self.p as u32, &e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub role: String,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub claim: String,
    pub params: Params,
    pub verdict: Verdict,
    pub exhaustive: bool,
    pub element_count: Option<u64>,
    pub witnesses: Vec<Witness>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub wall_time: Option<Duration>,
}

impl Certificate {
    pub fn new(claim: &str, params: Params) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            claim: claim.to_string(),
            params,
            verdict: Verdict::Verified,
            exhaustive: false,
            element_count: None,
            witnesses: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            wall_time: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn witness(&mut self, role: impl Into<String>, element: impl fmt::Display) {
        self.witnesses.push(Witness {
            role: role.into(),
            element: element.to_string(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn witness_for(&self, role: &str) -> Option<&str> {
        self.witnesses
            .iter()
            .find(|w| w.role == role)
            .map(|w| w.element.as_str())
    }

    /// Sets the verdict from the checks: any failure refutes, otherwise
    /// `skip` (if given) or verified.
    pub fn conclude(&mut self, skip: Option<String>) {
        self.verdict = if !self.all_passed() {
            Verdict::Refuted
        } else if let Some(why) = skip {
            Verdict::Skipped(why)
        } else {
            Verdict::Verified
        };
    }

    /// Appends the checks of `other` under a prefix, for claims assembled
    /// from other claims.
    pub fn absorb(&mut self, prefix: &str, other: &Certificate) {
        for c in &other.checks {
            self.check(format!("{prefix}: {}", c.name), c.passed, c.detail.clone());
        }
        for w in &other.witnesses {
            self.witnesses.push(w.clone());
        }
        for n in &other.notes {
            self.note(format!("{prefix}: {n}"));
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialise");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cert: Certificate =
            serde_json::from_str(s).map_err(|e| Error::Encoding(e.to_string()))?;
        if cert.schema != SCHEMA {
            return Err(Error::Encoding(format!("unsupported schema {:?}", cert.schema)));
        }
        Ok(cert)
    }

    /// Human-readable rendering of the structured document.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let e: Vec<String> = self.params.e.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            s,
            "{}  p={} e=({}) n={}",
            self.claim,
            self.params.p,
            e.join(","),
            self.params.n
        );
        if let Some(m) = self.params.m {
            let _ = writeln!(s, "  lifted to m={m}");
        }
        let _ = writeln!(s, "  verdict: {}", self.verdict);
        let _ = writeln!(s, "  exhaustive: {}", self.exhaustive);
        if let Some(c) = self.element_count {
            let _ = writeln!(s, "  elements: {c}");
        }
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(s, "  [{mark}] {}", c.name);
            } else {
                let _ = writeln!(s, "  [{mark}] {} ({})", c.name, c.detail);
            }
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "  {} = {}", w.role, w.element);
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        if let Some(t) = self.wall_time {
            let _ = writeln!(s, "  wall time: {:.3}s", t.as_secs_f64());
        }
        s
    }
}
