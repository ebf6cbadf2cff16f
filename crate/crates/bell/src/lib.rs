//! Correlation experiments with two dichotomic observables per side:
//! admissible quadruples, the correlation operator, classical and quantum
//! bounds, the spin-singlet example, the maximal-violation construction,
//! and angle optimization.

pub mod extremal;
pub mod quad;

pub use extremal::{
    chsh_optimize, eb_value, max_violation_state, singlet_closed_form, singlet_example,
    spin_observable, summers_werner, EbReport, QuadrupleFamily,
};
pub use quad::{
    bell_operator, chsh_value, classical_bound, classical_mixture, validate, AdmissibleQuadruple,
    BellError, BellOperator, QuadrupleReport,
};
