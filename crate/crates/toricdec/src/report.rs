//! Box-certified verification reports.
//!
//! Every verdict is one of verified-in-box, failed (with a witness), or
//! inconclusive. Reports carry the per-degree dimension tables that went
//! into the checks so certificates can be re-read and re-parsed.

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    VerifiedInBox {
        box_bound: i64,
    },
    Failed {
        witness: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        degree: Option<Vec<i64>>,
    },
    Inconclusive {
        reason: String,
    },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::VerifiedInBox { .. })
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, Verdict::Failed { .. })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

/// One primary component as it moves through the descent filter.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    /// Variable indices of the associated monomial prime.
    pub prime: Vec<usize>,
    /// Irrelevant ideal not contained in the prime.
    pub relevant: bool,
    /// Component quotient sheafifies to zero although it passed the
    /// relevance test; such components are discarded as degenerate.
    pub degenerate: bool,
    /// Survived both the relevance filter and the degeneracy pruning.
    pub kept: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: Vec<i64>,
    /// Labeled dimensions at this degree, in a fixed label order.
    pub dims: Vec<(String, usize)>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub title: String,
    pub box_bound: i64,
    pub k_max: usize,
    pub components: Vec<ComponentReport>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub table: Vec<DegreeRow>,
}

impl DecompositionReport {
    pub fn new(title: impl Into<String>, box_bound: i64, k_max: usize) -> Self {
        DecompositionReport {
            title: title.into(),
            box_bound,
            k_max,
            components: Vec::new(),
            checks: Vec::new(),
            table: Vec::new(),
        }
    }

    pub fn push_check(&mut self, name: impl Into<String>, verdict: Verdict) {
        self.checks.push(CheckResult { name: name.into(), verdict, detail: None });
    }

    pub fn push_check_detail(
        &mut self,
        name: impl Into<String>,
        verdict: Verdict,
        detail: impl Into<String>,
    ) {
        self.checks.push(CheckResult {
            name: name.into(),
            verdict,
            detail: Some(detail.into()),
        });
    }

    pub fn all_verified(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.is_verified())
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.verdict.is_failed())
    }

    /// Process exit code: 0 verified, 1 failed, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.any_failed() {
            1
        } else if self.all_verified() {
            0
        } else {
            2
        }
    }

    /// Human-readable table, one line per check.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} (box {}, k_max {})\n",
            self.title, self.box_bound, self.k_max
        ));
        if !self.components.is_empty() {
            out.push_str("components:\n");
            for c in &self.components {
                let vars =
                    c.prime.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join(",");
                let status = if c.kept {
                    "kept"
                } else if !c.relevant {
                    "dropped (irrelevant prime)"
                } else {
                    "dropped (degenerate: zero sheafification)"
                };
                out.push_str(&format!("  <{vars}>  {status}\n"));
            }
        }
        for c in &self.checks {
            let line = match &c.verdict {
                Verdict::VerifiedInBox { box_bound } => {
                    format!("  [ok]   {} (verified in box {})", c.name, box_bound)
                }
                Verdict::Failed { witness, degree } => match degree {
                    Some(d) => format!("  [FAIL] {} at degree {:?}: {}", c.name, d, witness),
                    None => format!("  [FAIL] {}: {}", c.name, witness),
                },
                Verdict::Inconclusive { reason } => {
                    format!("  [??]   {} inconclusive: {}", c.name, reason)
                }
            };
            out.push_str(&line);
            out.push('\n');
            if let Some(d) = &c.detail {
                out.push_str(&format!("         {d}\n"));
            }
        }
        out
    }
}
