//! Selective-measurement calculus on one sector: normalized states,
//! two-valued observables, the four measurement-device families
//! (branch projector π, exchange, state-weighted projector Π, and the
//! creation-transmission dyad M), Born probabilities, state reduction,
//! and sequence composition with statistical-weight extraction.

use crate::algebra::SectorOperator;
use crate::cartan::{check_sector, sector_inner, Sector, SectorVector};
use crate::error::{Error, Result};
use crate::mat::{c, Mat2, Row2, C64};

/// A normalized sector state bra.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    vector: SectorVector,
    label: String,
}

impl State {
    pub fn new(sector: Sector, amplitudes: Row2, label: &str, tol: f64) -> Result<Self> {
        let vector = SectorVector::new(sector, amplitudes)?;
        let norm_sq = amplitudes[0].norm_sqr() + amplitudes[1].norm_sqr();
        if (norm_sq - 1.0).abs() >= tol {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(State {
            vector,
            label: label.to_string(),
        })
    }

    pub fn sector(&self) -> Sector {
        self.vector.sector()
    }

    pub fn amplitudes(&self) -> Row2 {
        self.vector.components()
    }

    pub fn vector(&self) -> &SectorVector {
        &self.vector
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The reduced (branch) bra S^μ⟨e_(μ)|.
    pub fn branch(&self, branch: usize) -> SectorVector {
        let mut v = [C64::ZERO; 2];
        v[branch] = self.amplitudes()[branch];
        SectorVector::new(self.sector(), v).expect("finite by construction")
    }
}

/// Validated constructor for a normalized state.
pub fn make_state(components: Row2, sector: Sector, label: &str, tol: f64) -> Result<State> {
    State::new(sector, components, label, tol)
}

/// An unnormalized single-branch bra produced by a selective measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedState {
    vector: SectorVector,
    branch: usize,
    source: String,
}

impl ReducedState {
    pub fn vector(&self) -> &SectorVector {
        &self.vector
    }

    pub fn branch(&self) -> usize {
        self.branch
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// A dynamical variable with a two-valued non-degenerate spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Observable {
    sector: Sector,
    spectrum: (f64, f64),
}

impl Observable {
    pub fn new(sector: Sector, spectrum: (f64, f64), tol: f64) -> Result<Self> {
        let gap = (spectrum.0 - spectrum.1).abs();
        if !gap.is_finite() {
            return Err(Error::NonFinite);
        }
        if gap <= tol {
            return Err(Error::DegenerateSpectrum { gap });
        }
        Ok(Observable { sector, spectrum })
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn spectrum(&self) -> (f64, f64) {
        self.spectrum
    }

    /// As a sector operator: diagonal action (s₀, s₁), metric-weighted
    /// entries ±s_μ.
    pub fn sector_operator(&self) -> SectorOperator {
        SectorOperator::from_action(
            self.sector,
            self.sector,
            Mat2::diag(c(self.spectrum.0, 0.0), c(self.spectrum.1, 0.0)),
        )
    }
}

/// The pure-state density operator g|s⟩⟨s|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityOperator {
    op: SectorOperator,
}

impl DensityOperator {
    pub fn op(&self) -> &SectorOperator {
        &self.op
    }
}

/// Build the density operator of a state; it is pseudo-Hermitian, has
/// restricted trace 1, and leaves its own state bra fixed.
pub fn density(s: &State) -> DensityOperator {
    let a = s.amplitudes();
    // Action matrix (ρ)_{μν} = conj(S^μ)·S^ν.
    let action = Mat2::outer([a[0].conj(), a[1].conj()], a);
    DensityOperator {
        op: SectorOperator::from_action(s.sector(), s.sector(), action),
    }
}

/// Expectation value Σ_μ s_μ|S^μ|²; equals the restricted trace of ρ·S.
pub fn expectation(obs: &Observable, s: &State) -> Result<f64> {
    check_sector(obs.sector(), s.sector())?;
    let a = s.amplitudes();
    Ok(obs.spectrum().0 * a[0].norm_sqr() + obs.spectrum().1 * a[1].norm_sqr())
}

/// Selective branch reduction: ⟨s| ↦ S^μ⟨e_(μ)|.
pub fn apply_pi(s: &State, branch: usize) -> ReducedState {
    ReducedState {
        vector: s.branch(branch),
        branch,
        source: s.label().to_string(),
    }
}

/// Born probability of a branch: |S^μ|².
pub fn born(s: &State, branch: usize) -> f64 {
    s.amplitudes()[branch].norm_sqr()
}

/// Divide a reduced state by its surviving modulus, recovering a
/// normalized state (the phase is kept).
pub fn renormalize(r: &ReducedState) -> Result<State> {
    let amp = r.vector().components()[r.branch()];
    let magnitude = amp.norm();
    if magnitude <= crate::cartan::DEFAULT_TOL {
        return Err(Error::ZeroBranch { magnitude });
    }
    let scaled = r.vector().scale(c(1.0 / magnitude, 0.0));
    State::new(r.vector().sector(), scaled.components(), r.source(), 1e-12)
}

/// One selective-measurement device.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasurementDevice {
    /// Branch projector π_(μ): state-independent acceptance of one branch.
    PiSmall { sector: Sector, branch: usize },
    /// Exchange device π(s_from, s_to): annihilates branch `to`, carries
    /// branch `from` onto branch `to` of the same state.
    Exchange {
        state: State,
        from: usize,
        to: usize,
    },
    /// State-weighted projector Π_(μ) = ±|s_(μ)⟩⟨s_(μ)|.
    PiBig { state: State, branch: usize },
    /// Creation-transmission dyad M(a_μ, c_μ) = ±|a_(μ)⟩⟨c_(μ)|.
    MCreate {
        incoming: State,
        outgoing: State,
        branch: usize,
    },
}

/// Canonical branch projector.
pub fn pi_small(sector: Sector, branch: usize) -> MeasurementDevice {
    MeasurementDevice::PiSmall { sector, branch }
}

/// Exchange device; both amplitudes must be nonzero because the matrix
/// entries carry the ratio S^to/S^from.
pub fn exchange_device(s: &State, from: usize, to: usize, tol: f64) -> Result<MeasurementDevice> {
    assert_ne!(from, to, "exchange device needs two distinct branches");
    for branch in [from, to] {
        let magnitude = s.amplitudes()[branch].norm();
        if magnitude <= tol {
            return Err(Error::ZeroBranch { magnitude });
        }
    }
    Ok(MeasurementDevice::Exchange {
        state: s.clone(),
        from,
        to,
    })
}

/// State-weighted branch projector Π_(μ).
pub fn big_pi(s: &State, branch: usize) -> MeasurementDevice {
    MeasurementDevice::PiBig {
        state: s.clone(),
        branch,
    }
}

/// Creation-transmission device M(a_μ, c_μ).
pub fn m_device(a: &State, c_state: &State, branch: usize) -> Result<MeasurementDevice> {
    check_sector(a.sector(), c_state.sector())?;
    Ok(MeasurementDevice::MCreate {
        incoming: a.clone(),
        outgoing: c_state.clone(),
        branch,
    })
}

impl MeasurementDevice {
    pub fn sector(&self) -> Sector {
        match self {
            MeasurementDevice::PiSmall { sector, .. } => *sector,
            MeasurementDevice::Exchange { state, .. } => state.sector(),
            MeasurementDevice::PiBig { state, .. } => state.sector(),
            MeasurementDevice::MCreate { incoming, .. } => incoming.sector(),
        }
    }

    /// The realized 2×2 sector operator of the device.
    pub fn realized(&self) -> SectorOperator {
        let s = self.sector();
        let action = match self {
            MeasurementDevice::PiSmall { branch, .. } => {
                let mut m = Mat2::zero();
                m.0[*branch][*branch] = C64::ONE;
                m
            }
            MeasurementDevice::Exchange { state, from, to } => {
                let a = state.amplitudes();
                let mut m = Mat2::zero();
                m.0[*from][*to] = a[*to] / a[*from];
                m
            }
            MeasurementDevice::PiBig { state, branch } => {
                let amp = state.amplitudes()[*branch];
                let mut m = Mat2::zero();
                m.0[*branch][*branch] = c(amp.norm_sqr(), 0.0);
                m
            }
            MeasurementDevice::MCreate {
                incoming,
                outgoing,
                branch,
            } => {
                let mut m = Mat2::zero();
                m.0[*branch][*branch] =
                    incoming.amplitudes()[*branch].conj() * outgoing.amplitudes()[*branch];
                m
            }
        };
        SectorOperator::from_action(s, s, action)
    }

    /// For dyadic devices, the pair of bras (u, v) with device = ±|u⟩⟨v|.
    pub fn dyad_vectors(&self) -> Option<(SectorVector, SectorVector)> {
        match self {
            MeasurementDevice::PiBig { state, branch } => {
                let b = state.branch(*branch);
                Some((b, b))
            }
            MeasurementDevice::MCreate {
                incoming,
                outgoing,
                branch,
            } => Some((incoming.branch(*branch), outgoing.branch(*branch))),
            _ => None,
        }
    }

    /// Apply the device to a sector bra.
    pub fn apply_bra(&self, x: &SectorVector) -> Result<SectorVector> {
        self.realized().apply(x)
    }
}

/// Compose a left-to-right device sequence into one operator and extract
/// the scalar transmission weights: every time one dyad hands over to the
/// next, the contraction ⟨previous right bra | next left bra⟩_g is emitted.
/// Non-dyadic devices between dyads act on the pending right bra.
pub fn compose_sequence(devices: &[MeasurementDevice]) -> Result<(SectorOperator, Vec<C64>)> {
    let first = devices.first().ok_or(Error::EmptySequence)?;
    let sector = first.sector();
    let mut op = first.realized();
    for d in &devices[1..] {
        check_sector(sector, d.sector())?;
        op = op.compose(&d.realized())?;
    }
    let mut weights = Vec::new();
    let mut pending: Option<SectorVector> = None;
    for d in devices {
        match d.dyad_vectors() {
            Some((left, right)) => {
                if let Some(prev) = pending {
                    weights.push(sector_inner(&prev, &left)?);
                }
                pending = Some(right);
            }
            None => {
                if let Some(prev) = pending {
                    pending = Some(d.apply_bra(&prev)?);
                }
            }
        }
    }
    Ok((op, weights))
}

/// Restricted trace of the composed device sequence.
pub fn sequence_trace(devices: &[MeasurementDevice]) -> Result<C64> {
    let (op, _) = compose_sequence(devices)?;
    op.sector_trace()
}
