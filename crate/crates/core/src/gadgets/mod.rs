//! Gadget complexes.

pub mod bad;
pub mod connector;
pub mod crosspolytope;
pub mod simplicial;
pub mod subdivision;

pub use bad::{build_bad_complex, BadCertificate, BadComplex};
pub use connector::{
    build_connector, cached_connector, connector_certificate, glue_connector, glue_connectors,
    CachedConnector, ConnectorBlueprint, ConnectorSpec, GluedConnector,
};
pub use crosspolytope::{
    build_h, build_h_compatible, build_j, quotient_c, HComplex, HVertex, JVertex, QuotientC,
    QuotientClass, Sign,
};
pub use simplicial::{
    build_clause_gadget, build_gadget, build_merge_gadget, build_variable_gadget, GadgetKind,
    SimplicialGadget,
};
pub use subdivision::{build_d, DComplex};
