use std::fmt;

use thiserror::Error;

/// The partial-order axiom that a candidate relation broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{kind} violated at ({})", witness.join(", "))]
    AxiomViolation { kind: Axiom, witness: Vec<String> },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("bound exceeded: {what} = {given}, maximum is {max}")]
    BoundExceeded {
        what: &'static str,
        given: usize,
        max: usize,
    },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("map is not a {0}")]
    NotAMap(String),

    #[error("dilator `{0}` carries no unit")]
    NoMu(String),

    #[error("duplicate subterm {0}")]
    DuplicateSubterm(String),

    #[error("kernel {0} does not have full support")]
    NotInTrace(String),

    #[error("subterms are not partially ordered: {0}")]
    SubordersNotPartial(String),

    #[error("dilator `{0}` failed the bounded normality check")]
    NotNormal(String),

    #[error("`{0}` is not a limit")]
    NotALimit(String),

    #[error("unknown transformation `{0}`")]
    UnknownTransformation(String),

    #[error("transformation {name} does not apply to {from} => {to}")]
    TransformationMismatch {
        name: String,
        from: String,
        to: String,
    },

    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
