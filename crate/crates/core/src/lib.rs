//! d-collapsibility of simplicial complexes: deciders, certificate checking,
//! and gadget constructions for the 3-SAT hardness reduction.

pub mod collapse;
pub mod complex;
pub mod error;
pub mod face;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod reduction;

pub use collapse::{
    check_certificate, collapsible_faces, decide, elementary_collapse, greedy_decide,
    is_d_collapsible_face, Answer, Certificate, CollapseStep, OrderPolicy, SearchOptions, Verdict,
};
pub use complex::{Complex, Digest, FacePairing, SymbolTable};
pub use error::{
    CertificateError, CollapseError, ComplexError, GadgetError, ParseError, ReductionError,
    ScriptError,
};
pub use face::{Face, VertexId};
