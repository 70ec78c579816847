//! Numerical library for indefinite-metric (Krein-space) linear algebra
//! on C⁴ with signature (+, +, −, −): sector decomposition, operator
//! calculus with the metric-twisted adjoint, pseudo-unitary group
//! constructors with Cartan (polar) decomposition, selective-measurement
//! devices with Born statistics, and frame-transport invariance reports.

pub mod algebra;
pub mod cartan;
pub mod error;
pub mod frames;
pub mod mat;
pub mod measurement;
pub mod su22;

pub use algebra::{BlockDecomposition, Operator, SectorOperator};
pub use cartan::{
    adjoint_components, apply_metric, embed, hilbert_inner, indefinite_inner, metric_matrix,
    project, sector_inner, CartanVector, Metric, Sector, SectorVector, DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use frames::{
    invariance_report, random_scenario_from, transform_device, transform_observable,
    transform_sector_operator, transform_state, transform_state_amplitudes, FrameScenario,
    FrameTransform, InvarianceReport, TransformPolicy,
};
pub use mat::{c, Mat2, Mat4, Row2, Row4, C64};
pub use measurement::{
    apply_pi, big_pi, born, compose_sequence, density, exchange_device, expectation, m_device,
    make_state, pi_small, renormalize, sequence_trace, DensityOperator, MeasurementDevice,
    Observable, ReducedState, State,
};
pub use su22::{
    cartan_decompose, check_block_constraints, dyn_matrix, dyn_restriction, dyn_rotation,
    is_pseudo_unitary, lorentz_matrix, poincare_matrix, pseudo_unitarity_residual,
    random_dyn_frame, random_dyn_frame_from, random_su22, random_su22_from, unitarity_residual,
    BlockConstraintReport, CartanFactors,
    DynFrameMap, GroupElement, SL2CElement, SU2Element, TranslationMatrix,
};
