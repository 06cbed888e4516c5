use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("duplicate {kind} `{name}`")]
    DuplicateName { kind: &'static str, name: String },

    #[error("boundary mismatch: {detail}")]
    BoundaryMismatch { detail: String },

    #[error("ill-typed {kind}: {detail}")]
    IllTyped { kind: &'static str, detail: String },

    #[error("1-relations are not confluent under the shortlex orientation: critical pair {left} vs {right} from overlap {overlap}")]
    NonConfluent {
        overlap: String,
        left: String,
        right: String,
    },

    #[error("formal inverse of `{name}`, which is not declared invertible")]
    NotInvertible { name: String },

    #[error("bound exceeded while {context}; rerun with larger bounds")]
    BoundExceeded { context: String },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;
