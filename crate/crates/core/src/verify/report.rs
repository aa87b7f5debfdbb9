use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Exact,
    Sampled,
}

impl fmt::Display for ReportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportKind::Exact => "exact",
            ReportKind::Sampled => "sampled",
        })
    }
}

/// One named check. A failed check carries a witness word when one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<String>,
}

impl Check {
    pub(crate) fn new(name: &str, passed: bool, detail: impl Into<String>, witness: Option<String>) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub kind: ReportKind,
    pub n: usize,
    pub q: u32,
    pub m: usize,
    pub checks: Vec<Check>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `kind=exact q=2 n=7 m=3 result=pass size=pass packing=pass covering=pass`
    pub fn summary_line(&self) -> String {
        let mut s = format!(
            "kind={} q={} n={} m={} result={}",
            self.kind,
            self.q,
            self.n,
            self.m,
            if self.passed() { "pass" } else { "fail" }
        );
        if let Some(t) = self.trials {
            s.push_str(&format!(" trials={t}"));
        }
        if let Some(seed) = self.seed {
            s.push_str(&format!(" seed={seed}"));
        }
        for c in &self.checks {
            s.push_str(&format!(" {}={}", c.name, if c.passed { "pass" } else { "fail" }));
        }
        s
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} verification of a code of length {} over GF({}), m = {}",
            self.kind, self.n, self.q, self.m
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
            if let Some(w) = &c.witness {
                writeln!(f, "         witness: {w}")?;
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
