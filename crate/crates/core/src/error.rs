//! Crate-wide error type.

use crate::cartan::Sector;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Two sector-tagged values were combined with incompatible tags.
    #[error("sector mismatch: expected {expected:?}, got {got:?}")]
    SectorMismatch { expected: Sector, got: Sector },

    /// A 4×4 operator was restricted although it mixes the two sectors.
    #[error("operator is not block-diagonal: off-diagonal residual {residual}")]
    NonBlockDiagonal { residual: f64 },

    /// A value that must be finite contained NaN or infinity.
    #[error("non-finite entries")]
    NonFinite,

    /// A state vector failed the unit-norm requirement.
    #[error("state not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    /// A translation matrix failed the W² = I normalization requirement.
    #[error("translation matrix not normalized: residual {residual}")]
    TranslationNotNormalized { residual: f64 },

    /// An amplitude that must be divided by is numerically zero.
    #[error("zero branch amplitude (|amplitude| = {magnitude})")]
    ZeroBranch { magnitude: f64 },

    /// A device sequence was empty; the empty product is not defined here.
    #[error("empty device sequence")]
    EmptySequence,

    /// A positive-definite factor had an eigenvalue at or below tolerance.
    #[error("numerically singular: eigenvalue {eigenvalue} below tolerance")]
    NumericallySingular { eigenvalue: f64 },

    /// A matrix failed the group-membership certificates.
    #[error("not in the group: {reason} (residual {residual})")]
    NotInGroup { reason: &'static str, residual: f64 },

    /// An observable spectrum was degenerate.
    #[error("degenerate spectrum: |s0 - s1| = {gap}")]
    DegenerateSpectrum { gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
