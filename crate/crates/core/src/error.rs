use thiserror::Error;

use crate::tree::Tree;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("typing error in {context}: expected {expected}, found {actual}")]
    Typing {
        context: String,
        expected: Tree,
        actual: Tree,
    },

    #[error("leaf {leaf} does not address a leaf of {tree}")]
    BadLeaf { leaf: String, tree: Tree },

    #[error("terms are not orthogonal: {0}")]
    NotOrthogonal(String),

    #[error("join undefined: {0}")]
    JoinUndefined(String),

    #[error("arrow is not unitary: {0}")]
    NotUnitary(String),

    #[error("untyped term has no Inst: {0}")]
    NoInst(String),

    #[error("not a canonical arrow: {0}")]
    NotCanonical(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid diagram: {0}")]
    Diagram(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn typing(context: impl Into<String>, expected: &Tree, actual: &Tree) -> Self {
        Error::Typing {
            context: context.into(),
            expected: expected.clone(),
            actual: actual.clone(),
        }
    }
}
