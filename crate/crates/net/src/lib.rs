//! A finite net of observable algebras over a causal integer lattice: one
//! qubit per lattice point, a local algebra per region, embeddings between
//! sites acting functorially on algebras, state pullback, correlation
//! transport, and independent preparations on causally disjoint regions.

pub mod functor;
pub mod local;
pub mod site;

pub use functor::{
    chsh_transport, embed, independence_product, pullback, AlgebraMorphism,
};
pub use local::{
    algebra_of, check_causality, check_isotony, conditional_expectation, parseval_defect,
    pauli_string, CausalityPairReport, CausalityReport, IsotonyReport, RegionAlgebra,
};
pub use site::{causally_disjoint, CausalSite, NetError, Region, SiteEmbedding, SITE_CAP};
