use thiserror::Error;

use crate::face::{Face, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face must be nonempty")]
    EmptyFace,
    #[error("vertex {0} repeated in face")]
    DuplicateVertex(VertexId),
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Face),
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(VertexId),
    #[error("face {0} has no unique maximal coface")]
    NoUniqueMaximalCoface(Face),
    #[error("gluing collapses face {0}")]
    Gluing(Face),
    #[error("paired faces {0} and {1} have different sizes or an incomplete bijection")]
    BadPairing(Face, Face),
    #[error("vertex name {0:?} already used")]
    DuplicateName(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown vertex token {token:?}")]
    UnknownToken { line: usize, token: String },
    #[error("clause {clause}: {message}")]
    Clause { clause: usize, message: String },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

/// Why a certificate step (or a scripted collapse) could not be applied.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CollapseError {
    #[error("d must be at least 1")]
    BadDimension,
    #[error("face {face} is not in the complex")]
    Missing { face: Face },
    #[error("face {face} has dimension {} > d-1 = {}", face.dim(), d - 1)]
    TooLarge { face: Face, d: usize },
    #[error("face {face} has {} maximal cofaces: {cofaces:?}", cofaces.len())]
    NotCollapsible { face: Face, cofaces: Vec<Face> },
    #[error("face {face} collapses into {found}, expected {expected}")]
    WrongCoface {
        face: Face,
        expected: Face,
        found: Face,
    },
}

impl CollapseError {
    pub fn face(&self) -> Option<&Face> {
        match self {
            CollapseError::BadDimension => None,
            CollapseError::Missing { face }
            | CollapseError::TooLarge { face, .. }
            | CollapseError::NotCollapsible { face, .. }
            | CollapseError::WrongCoface { face, .. } => Some(face),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("step {index}: {source}")]
    Step {
        index: usize,
        #[source]
        source: CollapseError,
    },
    #[error("certificate ends with {remaining} faces left")]
    NotEmpty { remaining: usize },
    #[error("certificate ends at a complex different from the target ({remaining} faces left, {missing} target faces missing)")]
    WrongResidue { remaining: usize, missing: usize },
    #[error("certificate uses d = {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Failures of the scripted collapses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("the graph G_{d} of K \\ L is disconnected ({components} components)")]
    Disconnected { d: usize, components: usize },
    #[error("(d-1)-face {ridge} lies in {count} d-faces of K \\ L")]
    RidgeDegree { ridge: Face, count: usize },
    #[error("superface condition violated: {sigma} in K' \\ L' has coface {eta} outside it")]
    Superface { sigma: Face, eta: Face },
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("quotient merges two vertices of face {0}")]
    Quotient(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Script(#[from] ScriptError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("reduction needs d >= 4, got {0}")]
    Dimension(usize),
    #[error("brute force limited to 30 variables, formula has {0}")]
    TooManyVariables(usize),
    #[error("assignment does not satisfy clause {0}")]
    Unsatisfied(usize),
    #[error("assignment has {found} values for {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("unknown connection {0:?}")]
    UnknownConnection(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
