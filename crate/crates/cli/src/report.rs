//! The single JSON report every subcommand emits, and the exit-code policy.

use binact_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_REFUTED: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Refuted,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdict: Verdict,
    pub version: &'static str,
}

/// A completed analysis.
#[derive(Debug)]
pub struct Outcome {
    pub results: Value,
    pub verdict: Verdict,
    pub summary: String,
}

impl Outcome {
    pub fn pass(results: Value, summary: impl Into<String>) -> Self {
        Outcome {
            results,
            verdict: Verdict::Pass,
            summary: summary.into(),
        }
    }

    /// `pass` unless `refuted`, in which case the results must carry a witness.
    pub fn judged(results: Value, refuted: bool, summary: impl Into<String>) -> Self {
        Outcome {
            results,
            verdict: if refuted { Verdict::Refuted } else { Verdict::Pass },
            summary: summary.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::Pass => EXIT_OK,
            Verdict::Fail => EXIT_INPUT,
            Verdict::Refuted => EXIT_REFUTED,
        }
    }
}

/// An analysis that could not complete.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub witness: Option<Value>,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            kind: "input",
            message: message.into(),
            witness: None,
        }
    }

    /// Prefixes the message with the flag that supplied the bad value.
    pub fn for_flag(mut self, flag: &str) -> Self {
        self.message = format!("{flag}: {}", self.message);
        self
    }

    pub fn verdict(&self) -> Verdict {
        if self.code == EXIT_REFUTED {
            Verdict::Refuted
        } else {
            Verdict::Fail
        }
    }

    pub fn results(&self) -> Value {
        let mut v = json!({ "error": { "kind": self.kind, "message": self.message } });
        if let Some(w) = &self.witness {
            v["error"]["witness"] = w.clone();
        }
        v
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let (code, kind, witness) = match &e {
            Error::BudgetExceeded { budget, needed } => {
                (EXIT_BUDGET, "budget_exceeded", Some(json!({ "budget": budget, "needed": needed })))
            }
            Error::Refuted(_) => (EXIT_REFUTED, "refuted", None),
            Error::NotAGroup { reason, witness, .. } => {
                (EXIT_INPUT, "not_a_group", Some(json!({ "reason": reason, "elements": witness })))
            }
            Error::AxiomViolation { law, g, h, x, y } => (
                EXIT_INPUT,
                "axiom_violation",
                Some(json!({ "law": law, "g": g, "h": h, "x": x, "y": y })),
            ),
            Error::NotNormal(w) => (EXIT_INPUT, "not_normal", Some(json!(w))),
            Error::NotInOrbit { base, target } => {
                (EXIT_INPUT, "not_in_orbit", Some(json!({ "base": base, "target": target })))
            }
            Error::NotTransitive { point, missing } => {
                (EXIT_INPUT, "not_transitive", Some(json!({ "point": point, "missing": missing })))
            }
            Error::NotDistributive { g, h, x, x1, x2 } => (
                EXIT_INPUT,
                "not_distributive",
                Some(json!({ "g": g, "h": h, "x": x, "x1": x1, "x2": x2 })),
            ),
            Error::NotFree { point, element } => {
                (EXIT_INPUT, "not_free", Some(json!({ "point": point, "element": element })))
            }
            Error::OutOfRange { what, index, size } => (
                EXIT_INPUT,
                "out_of_range",
                Some(json!({ "what": what, "index": index, "size": size })),
            ),
            Error::TailNotZero { index, value } => {
                (EXIT_INPUT, "tail_not_zero", Some(json!({ "index": index, "value": value })))
            }
            Error::Dimension { expected, got } => {
                (EXIT_INPUT, "dimension", Some(json!({ "expected": expected, "got": got })))
            }
            Error::Shape(_) => (EXIT_INPUT, "shape", None),
            Error::UnknownName(_) => (EXIT_INPUT, "unknown_name", None),
            Error::Json(_) => (EXIT_INPUT, "json", None),
            Error::Io(_) => (EXIT_INPUT, "io", None),
        };
        CliError {
            code,
            kind,
            message,
            witness,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
