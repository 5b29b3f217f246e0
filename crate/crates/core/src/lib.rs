//! Spin-1/2 particles under Lorentz boosts.
//!
//! Builds momentum-space spin states, boosts them along `z` through the
//! Wigner rotation, traces out momentum, and analyses the resulting qubit
//! states: linear-independence (preparation contextuality) tests with an
//! explicit dual frame, and minimum-error discrimination with certified
//! optimality.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`.

// Negated comparisons reject NaN; index loops mirror the matrix algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod contextuality;
pub mod discrimination;
pub mod error;
pub mod kinematics;
pub mod linalg;
pub mod quadrature;
pub mod reduced_states;
pub mod scalar;
pub mod wavefunctions;

pub use contextuality::{
    build_dual_frame, classify, gram_rank, is_noncontextual_pure, random_projective_povms,
    verify_ontological_model, BlochView, DualFrame, OntologicalReport, RankReport, Verdict,
};
pub use discrimination::{
    helstrom, min_error_sdp, sweep_rapidity, trace_norm, DiscriminationProblem,
    DiscriminationResult, SweepRow, SweepValues,
};
pub use error::{Error, Result};
pub use kinematics::{boosted_energy, energy, wigner_half, MomentumPoint, Rapidity, WignerHalf};
pub use linalg::Mat2;
pub use quadrature::{convergence_check, measure_weight, QuadratureGrid};
pub use reduced_states::{
    assemble_from_integrals, boost_integrals, boosted_reduced_density, ensemble_mix,
    rest_reduced_density, BasisState, BoostIntegrals, FamilyParams, RelativisticQubit,
    SpinDensity, StateFamily,
};
pub use scalar::Real;
pub use wavefunctions::{eval_profile, normalize_profile, DeformationAngle, Profile, ProfileKind};

pub type Mat2_64 = Mat2<f64>;
pub type MomentumPoint64 = MomentumPoint<f64>;
pub type Rapidity64 = Rapidity<f64>;
pub type WignerHalf64 = WignerHalf<f64>;
pub type QuadratureGrid64 = QuadratureGrid<f64>;
pub type Profile64 = Profile<f64>;
pub type SpinDensity64 = SpinDensity<f64>;
pub type RelativisticQubit64 = RelativisticQubit<f64>;
pub type StateFamily64 = StateFamily<f64>;
pub type FamilyParams64 = FamilyParams<f64>;
pub type DualFrame64 = DualFrame<f64>;
pub type DiscriminationProblem64 = DiscriminationProblem<f64>;
pub type DiscriminationResult64 = DiscriminationResult<f64>;
