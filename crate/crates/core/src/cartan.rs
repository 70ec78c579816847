//! Vectors of C⁴ with both inner products, the fundamental decomposition
//! into positive and negative sectors, projections, and the adjoint
//! (metric-lowered) component maps.
//!
//! Vectors are bras: they are row vectors and operators act on them from
//! the right. The indefinite metric is g = diag(1, 1, −1, −1); the Hilbert
//! metric is the identity.

use crate::error::{Error, Result};
use crate::mat::{c, row2_add, Mat4, Row2, Row4, C64};

/// Default absolute tolerance for residual comparisons throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-10;

/// The two sectors of the fundamental decomposition C⁴ = C⁺ ⊕ C⁻.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    Plus,
    Minus,
}

impl Sector {
    /// Metric sign of the sector: +1 on C⁺, −1 on C⁻.
    pub fn sign(self) -> f64 {
        match self {
            Sector::Plus => 1.0,
            Sector::Minus => -1.0,
        }
    }

    pub fn other(self) -> Sector {
        match self {
            Sector::Plus => Sector::Minus,
            Sector::Minus => Sector::Plus,
        }
    }

    /// Component offset of the sector inside a 4-vector (0 or 2).
    pub fn offset(self) -> usize {
        match self {
            Sector::Plus => 0,
            Sector::Minus => 2,
        }
    }
}

/// Which of the two metrics an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// The indefinite metric diag(1, 1, −1, −1).
    IndefiniteG,
    /// The positive-definite Hilbert metric (identity).
    HilbertDelta,
}

impl Metric {
    /// The 4×4 matrix of this metric.
    pub fn matrix(self) -> Mat4 {
        match self {
            Metric::IndefiniteG => metric_matrix(),
            Metric::HilbertDelta => Mat4::identity(),
        }
    }

    /// The restricted 2×2 metric on a sector (±I for g, I for Δ).
    pub fn sector_matrix(self, s: Sector) -> crate::mat::Mat2 {
        match self {
            Metric::IndefiniteG => crate::mat::Mat2::identity().scale(c(s.sign(), 0.0)),
            Metric::HilbertDelta => crate::mat::Mat2::identity(),
        }
    }
}

/// The indefinite metric g = diag(1, 1, −1, −1).
pub fn metric_matrix() -> Mat4 {
    Mat4::diag([c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)])
}

/// A bra vector of C⁴ (row vector, not necessarily normalized).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartanVector {
    components: Row4,
}

impl CartanVector {
    pub fn new(components: Row4) -> Result<Self> {
        if components
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(CartanVector { components })
    }

    pub fn zero() -> Self {
        CartanVector {
            components: [C64::ZERO; 4],
        }
    }

    /// Canonical basis bra e_(μ).
    pub fn basis(mu: usize) -> Self {
        let mut v = [C64::ZERO; 4];
        v[mu] = C64::ONE;
        CartanVector { components: v }
    }

    pub fn components(&self) -> Row4 {
        self.components
    }

    pub fn add(&self, other: &CartanVector) -> CartanVector {
        let mut v = self.components;
        for (a, b) in v.iter_mut().zip(other.components.iter()) {
            *a += *b;
        }
        CartanVector { components: v }
    }

    pub fn sub(&self, other: &CartanVector) -> CartanVector {
        let mut v = self.components;
        for (a, b) in v.iter_mut().zip(other.components.iter()) {
            *a -= *b;
        }
        CartanVector { components: v }
    }

    pub fn scale(&self, s: C64) -> CartanVector {
        let mut v = self.components;
        for a in v.iter_mut() {
            *a *= s;
        }
        CartanVector { components: v }
    }

    pub fn max_norm(&self) -> f64 {
        self.components.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// The two live components of a bra supported on one sector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectorVector {
    sector: Sector,
    components: Row2,
}

impl SectorVector {
    pub fn new(sector: Sector, components: Row2) -> Result<Self> {
        if components
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(SectorVector { sector, components })
    }

    pub fn zero(sector: Sector) -> Self {
        SectorVector {
            sector,
            components: [C64::ZERO; 2],
        }
    }

    /// Restricted basis bra e_(μ) of the sector.
    pub fn basis(sector: Sector, mu: usize) -> Self {
        let mut v = [C64::ZERO; 2];
        v[mu] = C64::ONE;
        SectorVector { sector, components: v }
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn components(&self) -> Row2 {
        self.components
    }

    pub fn add(&self, other: &SectorVector) -> Result<SectorVector> {
        check_sector(self.sector, other.sector)?;
        Ok(SectorVector {
            sector: self.sector,
            components: row2_add(self.components, other.components),
        })
    }

    pub fn scale(&self, s: C64) -> SectorVector {
        SectorVector {
            sector: self.sector,
            components: [self.components[0] * s, self.components[1] * s],
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.components.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn check_sector(expected: Sector, got: Sector) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::SectorMismatch { expected, got })
    }
}

/// Positive-definite inner product ⟪x|y⟫ = Σ_μ x^μ conj(y^μ).
pub fn hilbert_inner(x: &CartanVector, y: &CartanVector) -> C64 {
    x.components()
        .iter()
        .zip(y.components().iter())
        .map(|(a, b)| a * b.conj())
        .sum()
}

/// Indefinite inner product ⟨x|y⟩_g with signature (+, +, −, −).
pub fn indefinite_inner(x: &CartanVector, y: &CartanVector) -> C64 {
    let xs = x.components();
    let ys = y.components();
    xs[0] * ys[0].conj() + xs[1] * ys[1].conj() - xs[2] * ys[2].conj() - xs[3] * ys[3].conj()
}

/// Apply the metric: (x⁰, x¹, x², x³) ↦ (x⁰, x¹, −x², −x³).
pub fn apply_metric(x: &CartanVector) -> CartanVector {
    let v = x.components();
    CartanVector {
        components: [v[0], v[1], -v[2], -v[3]],
    }
}

/// Project a bra onto one sector, keeping only the two live components.
pub fn project(x: &CartanVector, s: Sector) -> SectorVector {
    let v = x.components();
    let o = s.offset();
    SectorVector {
        sector: s,
        components: [v[o], v[o + 1]],
    }
}

/// Embed a sector bra back into C⁴ (the other two components are zero).
pub fn embed(x: &SectorVector) -> CartanVector {
    let mut v = [C64::ZERO; 4];
    let o = x.sector().offset();
    v[o] = x.components()[0];
    v[o + 1] = x.components()[1];
    CartanVector { components: v }
}

/// Sector inner product ⟨x|y⟩_{g±} = ±Σ_μ x^μ conj(y^μ).
pub fn sector_inner(x: &SectorVector, y: &SectorVector) -> Result<C64> {
    check_sector(x.sector(), y.sector())?;
    let s = c(x.sector().sign(), 0.0);
    let xs = x.components();
    let ys = y.components();
    Ok(s * (xs[0] * ys[0].conj() + xs[1] * ys[1].conj()))
}

/// Lower the index with the sector metric: x_μ = x^λ g_{λμ} = ±x^μ.
pub fn adjoint_components(x: &SectorVector) -> Row2 {
    let s = c(x.sector().sign(), 0.0);
    [x.components()[0] * s, x.components()[1] * s]
}
