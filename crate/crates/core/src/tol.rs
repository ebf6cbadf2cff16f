//! Default numerical tolerances for the whole workspace, in one place.
//!
//! Anything that gates a check or an error path reads its threshold from
//! here. Relative thresholds are scaled by the operator norm of the input
//! (or by `max(1, norm)` where a zero input must still be accepted);
//! absolute thresholds apply to quantities that are already normalized,
//! like residuals of unit vectors or states.

// ── dimensions ──────────────────────────────────────────────────────────

/// Hard cap on matrix dimension. Dense storage only; nothing here is sparse.
pub const DIM_CAP: usize = 4096;

// ── matrix backbone ─────────────────────────────────────────────────────

/// Hermiticity acceptance: `|a - a*| <= HERM_REL * max(1, |a|)`.
pub const HERM_REL: f64 = 1e-12;
/// Eigendecomposition must reassemble the input: `|a - U L U*| <= EIG_RECON_REL * |a|`.
pub const EIG_RECON_REL: f64 = 1e-12;
/// Unitarity residual `|U* U - 1|` for computed eigenvector and Weyl unitaries.
pub const UNITARY_ABS: f64 = 1e-12;
/// Rank decisions: singular values above `RANK_REL * sigma_max` count.
pub const RANK_REL: f64 = 1e-10;

// ── spectral calculus ───────────────────────────────────────────────────

/// Positivity: skew part within `POSITIVITY_REL * max(1, |a|)` and
/// min eigenvalue `>= -POSITIVITY_REL * |a|`.
pub const POSITIVITY_REL: f64 = 1e-10;
/// Spectral mapping: multiset distance between `p(spec(a))` and `spec(p(a))`.
pub const SPECTRUM_MAP_ABS: f64 = 1e-8;
/// Per-eigenvalue residual `sigma_min(a - lambda) <= SPECTRUM_RESIDUAL_REL * |a|`.
pub const SPECTRUM_RESIDUAL_REL: f64 = 1e-8;
/// Gelfand radius vs. `max |lambda|` on normal matrices.
pub const GELFAND_NORMAL_ABS: f64 = 1e-6;
/// Gelfand radius agreement threshold used by the acceptance checks.
pub const GELFAND_ABS: f64 = 1e-8;
/// The two square-root paths must agree: `|b_eig - b_series| <= SQRT_AGREE * sqrt(|a|)`.
pub const SQRT_AGREE: f64 = 1e-8;
/// Square-root series: stop once the term norm drops below this.
pub const SERIES_TERM_MIN: f64 = 1e-14;
/// Square-root series: give up after this many terms.
pub const SERIES_MAX_TERMS: usize = 10_000;
/// Slack on the series precondition `|1 - a/|a|| <= 1`, absorbing the
/// slightly negative eigenvalues that positivity itself tolerates.
pub const SERIES_PRECOND_SLACK: f64 = 1e-10;
/// Orthogonality of positive and negative parts: `|a+ a-| <= POSNEG_ORTHO_REL * |a|^2`.
pub const POSNEG_ORTHO_REL: f64 = 1e-12;
/// Functional calculus respects products of polynomials within this.
pub const FUNC_CALC_HOM: f64 = 1e-10;

// ── subalgebras, commutants, projection lattice ─────────────────────────

/// Orthonormality residual for stored subalgebra bases.
pub const ORTHONORMAL_ABS: f64 = 1e-10;
/// Span equality via orthogonal projectors onto the spans.
pub const SPAN_EQ_ABS: f64 = 1e-8;
/// Bicommutant residual `|P_span(S'') - P_span(S)|`.
pub const CLOSURE_ABS: f64 = 1e-8;
/// Gram-Schmidt drop threshold for candidate basis vectors.
pub const GS_DROP_REL: f64 = 1e-10;
/// Singular-value cut separating exact-zero dust from structural nonzeros
/// in commutator-map nullspaces.
pub const NULLSPACE_REL: f64 = 1e-7;
/// Projection validation: `|P^2 - P|` and `|P - P*|`.
pub const PROJ_ABS: f64 = 1e-10;
/// Commuting meet and join must match `EF` and `E + F - EF`.
pub const LATTICE_COMMUTING_ABS: f64 = 1e-10;
/// Shared threshold for the five subprojection criteria.
pub const SUBPROJ_ABS: f64 = 1e-8;
/// Partial-isometry residuals `|V*V - E|`, `|VV* - F|`.
pub const MVN_ABS: f64 = 1e-10;
/// Dimension function must land on an integer within this.
pub const DIMFN_INT_ABS: f64 = 1e-6;
/// Trace property `tr(ab) = tr(ba)` residual for the tracial state.
pub const TRACIAL_ABS: f64 = 1e-12;

// ── states and the induced representation ───────────────────────────────

/// State trace: `|tr(rho) - 1| <= STATE_TRACE_ABS`.
pub const STATE_TRACE_ABS: f64 = 1e-10;
/// Density-matrix rank: eigenvalues above `STATE_RANK_REL * lambda_max` count.
pub const STATE_RANK_REL: f64 = 1e-10;
/// Faithful means min eigenvalue strictly above this.
pub const FAITHFUL_MIN: f64 = 1e-12;
/// Mixture weights must sum to 1 within this; no silent renormalization.
pub const WEIGHT_SUM_ABS: f64 = 1e-12;
/// Cauchy-Schwarz slack must be `>= -CS_SLACK_ABS`.
pub const CS_SLACK_ABS: f64 = 1e-10;
/// Conjugate symmetry `omega(a* b) = conj(omega(b* a))` residual.
pub const CS_CONJ_ABS: f64 = 1e-12;
/// Representation is a *-homomorphism within this on sampled pairs.
pub const GNS_HOM_ABS: f64 = 1e-10;
/// `<Omega, rep(a) Omega> = omega(a)` fidelity.
pub const GNS_EXPECT_ABS: f64 = 1e-10;
/// Unitary intertwiner residual between two builds of the representation.
pub const GNS_UNIQUE_ABS: f64 = 1e-8;
/// Invariance gate `|u rho u* - rho|` for implementable automorphisms.
pub const AUT_INVARIANCE_ABS: f64 = 1e-10;
/// Intertwining residual `U rep(a) U* = rep(u a u*)`.
pub const AUT_INTERTWINE_ABS: f64 = 1e-8;
/// The implementing unitary must fix the cyclic vector within this.
pub const AUT_FIX_OMEGA_ABS: f64 = 1e-10;
/// Product states factor on elementary tensors within this.
pub const PRODUCT_FACTOR_ABS: f64 = 1e-12;

// ── modular theory ──────────────────────────────────────────────────────

/// Residuals of the basic modular identities (J^2 = 1, J = J*, fixed points).
pub const MODULAR_ID_ABS: f64 = 1e-8;
/// Conjugation maps the algebra onto its commutant within this.
pub const MODULAR_CONJ_SPAN_ABS: f64 = 1e-7;
/// Flow stability: conjugated basis elements stay in the span within this.
pub const MODULAR_FLOW_SPAN_ABS: f64 = 1e-7;
/// Cyclic-separating duality check threshold.
pub const MODULAR_DUALITY_ABS: f64 = 1e-7;
/// Flow group law `sigma_t(sigma_s(a)) = sigma_{t+s}(a)`.
pub const FLOW_GROUP_ABS: f64 = 1e-9;
/// Flow invariance of the defining state.
pub const FLOW_INVARIANCE_ABS: f64 = 1e-9;
/// Equilibrium-condition residual at inverse temperature one.
pub const KMS_ABS: f64 = 1e-8;
/// Frame condition number above which the closure solve is refused.
pub const FRAME_COND_MAX: f64 = 1e12;

// ── occupation-number spaces ────────────────────────────────────────────

/// Symmetrizer projector residuals and exact anticommutation residuals.
pub const SYMMETRIZER_ABS: f64 = 1e-12;
/// Guarded canonical commutation residual below the truncation cap.
pub const CCR_ABS: f64 = 1e-12;
/// Anticommutation residuals (no truncation in the finite case).
pub const CAR_ABS: f64 = 1e-12;
/// Exponentiated field must be unitary within this.
pub const WEYL_UNITARY_ABS: f64 = 1e-12;
/// Composition defect of exponentiated fields at the calibration point
/// (d = 1, |f| = 0.5, cap 30, proportional arguments).
pub const WEYL_RELATION_ABS: f64 = 1e-6;
/// `|W(f) - 1|` lower bound at the calibration point (d = 1, |f| = 1,
/// cap 40); the full sweep lives in the calibration archive.
pub const WEYL_DIST_MIN: f64 = 1.9;
/// Vacuum expectation of the exponentiated field vs. the Gaussian formula
/// at |f| = 1 with cap 25.
pub const VACUUM_WEYL_STD_ABS: f64 = 1e-6;
/// Same at |f| = 2 with cap 60.
pub const VACUUM_WEYL_WIDE_ABS: f64 = 1e-5;
/// Truncation-error readings below this are eigensolver noise; cap-sweep
/// monotonicity is only asserted down to this floor.
pub const CONVERGENCE_FLOOR: f64 = 1e-12;
/// The two multiparticle constructions agree within this.
pub const MULTIPARTICLE_ABS: f64 = 1e-10;
/// Phase-rotation covariance of the exponentiated field at the
/// calibration point (theta = pi/2, |f| = 0.5, cap 30).
pub const PHASE_COVARIANCE_ABS: f64 = 1e-6;

// ── correlation bounds ──────────────────────────────────────────────────

/// Observable norms may exceed 1 by at most this.
pub const QUAD_NORM_SLACK: f64 = 1e-10;
/// Hermiticity residual allowed for each observable in a quadruple.
pub const QUAD_HERM_ABS: f64 = 1e-10;
/// Cross-commutation residual between the two sides of a quadruple.
pub const QUAD_COMM_ABS: f64 = 1e-10;
/// The assembled correlation operator must reproduce its definition.
pub const BELL_RECON_ABS: f64 = 1e-12;
/// Square identity `C^2 = 4 + [a1, a2][b1, b2]` residual.
pub const SQUARE_ID_ABS: f64 = 1e-10;
/// Norm identity `|C|^2 = 4 + |[a1, a2][b1, b2]|` residual.
pub const NORM_SQ_ID_ABS: f64 = 1e-8;
/// Allowed overshoot above `2 sqrt(2)`.
pub const TSIRELSON_SLACK: f64 = 1e-9;
/// Closed-form spin correlation agreement.
pub const SINGLET_CLOSED_FORM_ABS: f64 = 1e-12;
/// Residuals in the maximal-violation construction (squares to one,
/// commutator norm two, operator norm `2 sqrt(2)`).
pub const MAXVIOL_CONSTRUCT_ABS: f64 = 1e-9;
/// Projections must fail to commute by more than this to be usable.
pub const NONCOMMUTING_MIN: f64 = 1e-8;
/// Extremal eigenvector state must reach the operator norm within this.
pub const MAXVIOL_STATE_ABS: f64 = 1e-10;
/// Optimizer success margin against the known optimum.
pub const OPT_ABS: f64 = 1e-6;
/// Slack on the correlation-bound range `[1, sqrt(2)]`.
pub const EB_SLACK: f64 = 1e-9;

// ── nets of algebras ────────────────────────────────────────────────────

/// Isotony: inclusion residual of the smaller algebra in the larger span.
pub const NET_ISOTONY_ABS: f64 = 1e-10;
/// Commutation residual across causally disjoint regions.
pub const NET_COMMUTE_ABS: f64 = 1e-12;
/// Functor laws (composition, identity) for embeddings.
pub const FUNCTOR_ABS: f64 = 1e-12;
/// Pulled-back states may dip below positivity by at most this.
pub const PULLBACK_POS_SLACK: f64 = 1e-10;
/// Contravariance of state pullback under composition.
pub const PULLBACK_CONTRA_ABS: f64 = 1e-10;
/// Pullback vs. the partial-trace oracle for tensor-leg embeddings.
pub const PULLBACK_PT_ABS: f64 = 1e-12;
/// Direct and pulled-back correlation values agree within this.
pub const TRANSPORT_AGREE_ABS: f64 = 1e-10;
/// Restrictions of an independent product match the factors within this.
pub const INDEP_RESTRICT_ABS: f64 = 1e-10;
/// Factorization residual of an independent product on split observables.
pub const INDEP_FACTOR_ABS: f64 = 1e-12;
/// Completeness residual for the streamed full-site basis check.
pub const PARSEVAL_ABS: f64 = 1e-10;
