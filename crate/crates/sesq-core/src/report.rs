//! Findings and validation reports shared by every checker in the crate.
//!
//! A checker never aborts on the first broken axiom: it walks the whole
//! structure and returns a [`ValidationReport`] listing one [`Finding`] per
//! violated axiom instance, each carrying the ids of the elements that
//! witness the violation.

use serde::Serialize;
use std::fmt;

/// Severity of a finding. Everything a checker emits today is an error;
/// the distinction exists so tools can add advisory output without a new
/// report format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

/// One violated axiom instance.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub kind: Severity,
    /// Stable machine-readable name of the violated law, e.g. `"assoc"`,
    /// `"vsum-dom"`, `"pentagon"`.
    pub axiom: String,
    /// Ids/names of the elements witnessing the violation, outermost first.
    pub witnesses: Vec<String>,
    /// Human-readable one-line description.
    pub message: String,
}

impl Finding {
    pub fn error(axiom: &str, witnesses: Vec<String>, message: String) -> Self {
        Finding {
            kind: Severity::Error,
            axiom: axiom.to_string(),
            witnesses,
            message,
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.axiom, self.message)?;
        if !self.witnesses.is_empty() {
            write!(f, " (witnesses: {})", self.witnesses.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of running a validator over a whole structure.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport::default()
    }

    pub fn ok(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn push(&mut self, axiom: &str, witnesses: Vec<String>, message: String) {
        self.findings.push(Finding::error(axiom, witnesses, message));
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.findings.extend(other.findings);
    }

    /// Findings whose axiom name equals `axiom`.
    pub fn with_axiom<'a>(&'a self, axiom: &str) -> Vec<&'a Finding> {
        self.findings.iter().filter(|f| f.axiom == axiom).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            writeln!(f, "ok")
        } else {
            for finding in &self.findings {
                writeln!(f, "{finding}")?;
            }
            Ok(())
        }
    }
}

/// Errors raised by operations (as opposed to axiom violations, which go
/// into a [`ValidationReport`]).
#[derive(Debug, Clone, thiserror::Error)]
pub enum SesqError {
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("cells not composable: {0}")]
    NotComposableCells(String),
    #[error("cells not vertically composable: {0}")]
    NotVerticallyComposable(String),
    #[error("cannot whisker: {0}")]
    NotWhiskerable(String),
    #[error("pair is not natural, horizontal composite undefined: {0}")]
    NotNaturalPair(String),
    #[error("map family has the wrong shape: {0}")]
    ShapeMismatch(String),
    #[error("no pullback: {0}")]
    NoPullback(String),
    #[error("structure is not cartesian here: {0}")]
    NotCartesian(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("unsupported backend: {0}")]
    UnsupportedBackend(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("action axiom violation: {0}")]
    ActionAxiomViolation(String),
    #[error("build rejected: {0}")]
    BuildRejected(String),
    #[error("quotient ill-typed: {0}")]
    QuotientIllTyped(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unknown id: {0}")]
    UnknownId(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, SesqError>;
