//! Verdicts: three-valued outcomes with certificates and witnesses.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_word_length: usize,
    pub max_layers: usize,
    pub max_rewrite_steps: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_word_length: 6, max_layers: 6, max_rewrite_steps: 20_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    UnknownAtBound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Holds => write!(f, "holds"),
            Status::Fails => write!(f, "fails"),
            Status::UnknownAtBound => write!(f, "unknown_at_bound"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Exact,
    Bounded,
}

impl Certificate {
    pub fn and(self, other: Certificate) -> Certificate {
        if self == Certificate::Exact && other == Certificate::Exact {
            Certificate::Exact
        } else {
            Certificate::Bounded
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Exact => write!(f, "exact"),
            Certificate::Bounded => write!(f, "bounded"),
        }
    }
}

/// Structured evidence attached to a verdict. Cells and cones are rendered
/// in the DSL's term syntax so witnesses can be read back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two parallel things where at most one was allowed.
    ExtraMorphism { hom: String, first: String, second: String },
    /// Something in the target with no preimage.
    MissingPreimage { what: String, target: String },
    /// Two distinct things with the same image.
    Collision { first: String, second: String, image: String },
    /// A hom-category that should have had an object but has none.
    EmptyHom { hom: String },
    /// An object not isomorphic to anything in the image.
    NotEssentiallySurjective { target: String },
    /// A cell required invertible that is not.
    NotInvertible { cell: String },
    /// Boundary disagreement between two cells.
    BoundaryMismatch { left: String, right: String },
    /// A required equation that does not hold.
    EquationFails { left: String, right: String, context: String },
    /// Free-form note (used for condition names in check verdicts).
    Note { text: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ExtraMorphism { hom, first, second } => {
                write!(f, "extra morphism in {}: {} and {}", hom, first, second)
            }
            Witness::MissingPreimage { what, target } => {
                write!(f, "no preimage for {} {}", what, target)
            }
            Witness::Collision { first, second, image } => {
                write!(f, "{} and {} share the image {}", first, second, image)
            }
            Witness::EmptyHom { hom } => write!(f, "empty hom-category {}", hom),
            Witness::NotEssentiallySurjective { target } => {
                write!(f, "{} is not isomorphic to any image object", target)
            }
            Witness::NotInvertible { cell } => write!(f, "{} is not invertible", cell),
            Witness::BoundaryMismatch { left, right } => {
                write!(f, "boundary mismatch: {} vs {}", left, right)
            }
            Witness::EquationFails { left, right, context } => {
                write!(f, "equation fails ({}): {} = {}", context, left, right)
            }
            Witness::Note { text } => write!(f, "{}", text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
    pub witnesses: Vec<Witness>,
    pub bounds: Bounds,
}

impl Verdict {
    pub fn holds(cert: Certificate, bounds: Bounds) -> Verdict {
        Verdict { status: Status::Holds, certificate: cert, witnesses: vec![], bounds }
    }

    pub fn fails(cert: Certificate, witnesses: Vec<Witness>, bounds: Bounds) -> Verdict {
        debug_assert!(!witnesses.is_empty(), "a failing verdict needs a witness");
        Verdict { status: Status::Fails, certificate: cert, witnesses, bounds }
    }

    pub fn unknown(witnesses: Vec<Witness>, bounds: Bounds) -> Verdict {
        Verdict { status: Status::UnknownAtBound, certificate: Certificate::Bounded, witnesses, bounds }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }
}
