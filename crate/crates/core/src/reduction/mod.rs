//! 3-SAT reduction.

pub mod activation;
pub mod build;
pub mod certificate;
pub mod cnf;

pub use activation::{
    activation_status, check_activation_invariants, trace_activation, Activation, ActivationTrace,
};
pub use build::{build_reduction, Connection, ConnectionKind, ReductionOutput, ReductionStats};
pub use certificate::{certificate_from_assignment, Phase, ReductionCertificate};
pub use cnf::{parse_dimacs, sat_oracle, CnfFormula, Literal};
