use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lang::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Holds at the requested bound, but a violation exists on longer
    /// traces. Never reported as a pass.
    BoundInsufficient,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates bound-insufficient, which dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (BoundInsufficient, _) | (_, BoundInsufficient) => BoundInsufficient,
            _ => Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::BoundInsufficient => "BOUND-INSUFFICIENT",
        })
    }
}

/// One named check with an optional counterexample word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::Pass,
            witness: None,
            detail: None,
        }
    }

    /// Pass iff no witness was found.
    pub fn from_witness(name: impl Into<String>, witness: Option<Word>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::from_bool(witness.is_none()),
            witness: witness.map(|w| w.to_letter_strings()),
            detail: None,
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::from_bool(ok),
            witness: None,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.verdict, self.name)?;
        if let Some(w) = &self.witness {
            if w.is_empty() {
                write!(f, "  witness: ε")?;
            } else {
                write!(f, "  witness: {}", w.concat())?;
            }
        }
        if let Some(d) = &self.detail {
            write!(f, "  ({d})")?;
        }
        Ok(())
    }
}

pub fn overall(checks: &[Check]) -> Verdict {
    checks.iter().fold(Verdict::Pass, |acc, c| acc.and(c.verdict))
}
