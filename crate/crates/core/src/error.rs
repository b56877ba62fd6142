use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Which group axiom a candidate Cayley table broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupAxiom {
    Range,
    Identity,
    Associativity,
    Inverses,
}

impl fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupAxiom::Range => "range",
            GroupAxiom::Identity => "identity",
            GroupAxiom::Associativity => "associativity",
            GroupAxiom::Inverses => "inverses",
        };
        f.write_str(s)
    }
}

/// Which binary-action law a table broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionLaw {
    Identity,
    Composition,
}

impl fmt::Display for ActionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionLaw::Identity => f.write_str("identity"),
            ActionLaw::Composition => f.write_str("composition"),
        }
    }
}

/// Representatives `g1 ~ g1'` and `g2 ~ g2'` of the same cosets for which
/// `g1 g g1^-1 g2 H` and `g1' g g1'^-1 g2' H` land in different cosets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotNormalWitness {
    pub g: usize,
    pub g1: usize,
    pub g1_alt: usize,
    pub g2: usize,
    pub g2_alt: usize,
    pub coset: usize,
    pub coset_alt: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group ({reason}): {detail}")]
    NotAGroup {
        reason: GroupAxiom,
        witness: Vec<usize>,
        detail: String,
    },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("index {index} out of range for {what} of size {size}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("{law} law violated at (g={g}, h={h}, x={x}, y={y})")]
    AxiomViolation {
        law: ActionLaw,
        g: usize,
        h: usize,
        x: usize,
        y: usize,
    },

    #[error("subgroup is not normal; coset action is ill-defined at {0:?}")]
    NotNormal(NotNormalWitness),

    #[error("point {target} is not in the orbit of {base}")]
    NotInOrbit { base: usize, target: usize },

    #[error("space is not transitive: G({point},{point}) misses {missing}")]
    NotTransitive { point: usize, missing: usize },

    #[error("space is not distributive at (g={g}, h={h}, x={x}, x'={x1}, x''={x2})")]
    NotDistributive {
        g: usize,
        h: usize,
        x: usize,
        x1: usize,
        x2: usize,
    },

    #[error("space is not free: element {element} fixes point {point}")]
    NotFree { point: usize, element: usize },

    #[error("budget exceeded: {needed} candidates requested, budget is {budget}")]
    BudgetExceeded { budget: u64, needed: u64 },

    #[error("refuted: {0}")]
    Refuted(String),

    #[error("coordinate {index} is {value}, expected zero beyond the requested dimension")]
    TailNotZero { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
