//! 4×4 operators on C⁴ and 2×2 sector operators: Hermitian (†) and
//! pseudo-Hermitian (★) conjugation, block decomposition, restriction,
//! adjoint representations, and the trace calculus.
//!
//! Conventions. A 4×4 `Operator` is stored as its plain action matrix M:
//! applying the operator to a bra x gives the row vector x·M, and operator
//! products are ordinary matrix products. The metric-weighted entries
//! A_{μν} = ⟨e_(μ)|A‖e_(ν)⟩_g (equal to M·g) are available via
//! [`Operator::metric_entries`].
//!
//! A `SectorOperator` stores the metric-weighted 2×2 entries directly,
//! i.e. sign(range sector)·(action block); that is the convention in which
//! the measurement matrices of this library are usually written down.
//! Composition therefore inserts the adjoint sector metric between entry
//! matrices — use [`SectorOperator::compose`], never a bare entry product.

use crate::cartan::{check_sector, metric_matrix, CartanVector, Sector, SectorVector};
use crate::error::{Error, Result};
use crate::mat::{c, Mat2, Mat4, C64};

/// A linear operator on C⁴, acting on bras from the right.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator {
    action: Mat4,
}

impl Operator {
    /// Build from the plain action matrix (x ↦ x·M on bras).
    pub fn from_action(action: Mat4) -> Result<Self> {
        if !action.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Operator { action })
    }

    /// Build from metric-weighted entries A_{μν} = (M·g)_{μν}.
    pub fn from_metric_entries(entries: Mat4) -> Result<Self> {
        // g is involutive, so M = A·g.
        Self::from_action(entries * metric_matrix())
    }

    pub fn identity() -> Self {
        Operator {
            action: Mat4::identity(),
        }
    }

    /// The metric g as an operator.
    pub fn metric() -> Self {
        Operator {
            action: metric_matrix(),
        }
    }

    /// Projector onto a sector (P⁺ or P⁻).
    pub fn projector(s: Sector) -> Self {
        let mut m = Mat4::zero();
        let o = s.offset();
        m.0[o][o] = C64::ONE;
        m.0[o + 1][o + 1] = C64::ONE;
        Operator { action: m }
    }

    /// Plain action matrix.
    pub fn matrix(&self) -> Mat4 {
        self.action
    }

    /// Metric-weighted entries ⟨e_(μ)|A‖e_(ν)⟩_g = (M·g)_{μν}.
    pub fn metric_entries(&self) -> Mat4 {
        self.action * metric_matrix()
    }

    /// Apply to a bra: returns x·M.
    pub fn apply(&self, x: &CartanVector) -> CartanVector {
        CartanVector::new(self.action.apply_row(x.components())).expect("finite by construction")
    }

    /// Operator product: (AB) acts as x ↦ (x·A)·B.
    pub fn mul(&self, other: &Operator) -> Operator {
        Operator {
            action: self.action * other.action,
        }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        Operator {
            action: self.action + other.action,
        }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        Operator {
            action: self.action - other.action,
        }
    }

    pub fn scale(&self, s: C64) -> Operator {
        Operator {
            action: self.action.scale(s),
        }
    }

    /// Hermitian adjoint: conjugate transpose of the action matrix.
    pub fn dagger(&self) -> Operator {
        Operator {
            action: self.action.adjoint(),
        }
    }

    /// Pseudo-adjoint A★ = g·A†·g, the adjoint with respect to the
    /// indefinite inner product.
    pub fn star(&self) -> Operator {
        let g = metric_matrix();
        Operator {
            action: g * self.action.adjoint() * g,
        }
    }

    /// Trace; the ordinary diagonal sum of the action matrix equals the
    /// metric-weighted sum A₀₀ + A₁₁ − A₂₂ − A₃₃ of the g-convention entries.
    pub fn trace(&self) -> C64 {
        self.action.trace()
    }

    pub fn det(&self) -> C64 {
        self.action.det()
    }

    /// True iff A★ = A within `tol` (max-norm on action matrices).
    pub fn is_pseudo_hermitian(&self, tol: f64) -> bool {
        (self.star().action - self.action).max_norm() < tol
    }

    /// Largest entry magnitude of the two sector-mixing blocks.
    pub fn off_diagonal_norm(&self) -> f64 {
        self.action
            .block(0, 1)
            .max_norm()
            .max(self.action.block(1, 0).max_norm())
    }

    /// Split into the four sector blocks (metric-weighted entries).
    pub fn block_decompose(&self) -> BlockDecomposition {
        let mk = |dr: Sector, rc: Sector| {
            let b = self
                .action
                .block(dr.offset() / 2, rc.offset() / 2);
            SectorOperator::from_action(dr, rc, b)
        };
        BlockDecomposition {
            pp: mk(Sector::Plus, Sector::Plus),
            pm: mk(Sector::Plus, Sector::Minus),
            mp: mk(Sector::Minus, Sector::Plus),
            mm: mk(Sector::Minus, Sector::Minus),
        }
    }

    /// Restriction to one sector; fails unless the operator is block-diagonal.
    pub fn restrict(&self, s: Sector, tol: f64) -> Result<SectorOperator> {
        let residual = self.off_diagonal_norm();
        if residual >= tol {
            return Err(Error::NonBlockDiagonal { residual });
        }
        let o = s.offset() / 2;
        Ok(SectorOperator::from_action(s, s, self.action.block(o, o)))
    }
}

/// The four sector blocks of a 4×4 operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockDecomposition {
    pub pp: SectorOperator,
    pub pm: SectorOperator,
    pub mp: SectorOperator,
    pub mm: SectorOperator,
}

impl BlockDecomposition {
    /// Reassemble the source operator exactly.
    pub fn reassemble(&self) -> Operator {
        let m = Mat4::from_blocks(
            self.pp.action(),
            self.pm.action(),
            self.mp.action(),
            self.mm.action(),
        );
        Operator { action: m }
    }
}

/// A 2×2 operator between sectors, stored in metric-weighted entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectorOperator {
    domain: Sector,
    range: Sector,
    /// Metric-weighted entries ⟨e_(μ)|A‖e_(ν)⟩ = sign(range)·(action block).
    entries: Mat2,
}

impl SectorOperator {
    /// Build from metric-weighted entries.
    pub fn new(domain: Sector, range: Sector, entries: Mat2) -> Result<Self> {
        if !entries.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(SectorOperator {
            domain,
            range,
            entries,
        })
    }

    /// Build from the plain 2×2 action block (x ↦ x·block on bras).
    pub fn from_action(domain: Sector, range: Sector, block: Mat2) -> Self {
        SectorOperator {
            domain,
            range,
            entries: block.scale(c(range.sign(), 0.0)),
        }
    }

    /// Identity restricted to a sector: entries are the sector metric ±I.
    pub fn identity(s: Sector) -> Self {
        Self::from_action(s, s, Mat2::identity())
    }

    pub fn domain_sector(&self) -> Sector {
        self.domain
    }

    pub fn range_sector(&self) -> Sector {
        self.range
    }

    /// Metric-weighted entries.
    pub fn entries(&self) -> Mat2 {
        self.entries
    }

    /// Plain action block: entries with the range metric sign stripped.
    pub fn action(&self) -> Mat2 {
        self.entries.scale(c(self.range.sign(), 0.0))
    }

    /// Apply to a sector bra.
    pub fn apply(&self, x: &SectorVector) -> Result<SectorVector> {
        check_sector(self.domain, x.sector())?;
        SectorVector::new(self.range, self.action().apply_row(x.components()))
    }

    /// Hermitian adjoint; the (domain, range) sectors swap.
    pub fn dagger(&self) -> SectorOperator {
        // (action)† with the new range metric sign applied:
        // entries† carries sign(old range); correct to sign(old domain).
        let flip = c(self.domain.sign() * self.range.sign(), 0.0);
        SectorOperator {
            domain: self.range,
            range: self.domain,
            entries: self.entries.adjoint().scale(flip),
        }
    }

    /// Pseudo-adjoint (★): conjugate transpose of the metric-weighted
    /// entries; the (domain, range) sectors swap.
    pub fn star(&self) -> SectorOperator {
        SectorOperator {
            domain: self.range,
            range: self.domain,
            entries: self.entries.adjoint(),
        }
    }

    /// Operator product A∘B (A applied first on bras): the adjoint metric
    /// of the intermediate sector is inserted between the entry matrices.
    pub fn compose(&self, next: &SectorOperator) -> Result<SectorOperator> {
        check_sector(self.range, next.domain)?;
        let mid = c(self.range.sign(), 0.0);
        Ok(SectorOperator {
            domain: self.domain,
            range: next.range,
            entries: (self.entries * next.entries).scale(mid),
        })
    }

    pub fn add(&self, other: &SectorOperator) -> Result<SectorOperator> {
        check_sector(self.domain, other.domain)?;
        check_sector(self.range, other.range)?;
        Ok(SectorOperator {
            domain: self.domain,
            range: self.range,
            entries: self.entries + other.entries,
        })
    }

    pub fn sub(&self, other: &SectorOperator) -> Result<SectorOperator> {
        check_sector(self.domain, other.domain)?;
        check_sector(self.range, other.range)?;
        Ok(SectorOperator {
            domain: self.domain,
            range: self.range,
            entries: self.entries - other.entries,
        })
    }

    pub fn scale(&self, s: C64) -> SectorOperator {
        SectorOperator {
            domain: self.domain,
            range: self.range,
            entries: self.entries.scale(s),
        }
    }

    /// Entries of the adjoint representation: both indices raised with the
    /// sector metric (a double ±I sandwich, numerically a no-op).
    pub fn adjoint_representation(&self) -> Result<Mat2> {
        check_sector(self.domain, self.range)?;
        let g = Mat2::identity().scale(c(self.domain.sign(), 0.0));
        Ok(g * self.entries * g)
    }

    /// Restricted trace: entries contracted against the adjoint sector
    /// metric, Tr A± = A±_{μλ} g*^{λμ}.
    pub fn sector_trace(&self) -> Result<C64> {
        check_sector(self.domain, self.range)?;
        Ok(self.entries.trace() * c(self.domain.sign(), 0.0))
    }

    /// True iff A★ = A within `tol` (only meaningful for same-sector operators).
    pub fn is_pseudo_hermitian(&self, tol: f64) -> bool {
        self.domain == self.range && (self.entries.adjoint() - self.entries).max_norm() < tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{hilbert_inner, indefinite_inner, sector_inner};
    use crate::mat::c;
    use proptest::prelude::*;

    fn rmat4(v: &[f64; 32]) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let k = 2 * (4 * i + j);
                m.0[i][j] = c(v[k], v[k + 1]);
            }
        }
        m
    }

    fn rmat2(v: &[f64; 8]) -> Mat2 {
        Mat2([
            [c(v[0], v[1]), c(v[2], v[3])],
            [c(v[4], v[5]), c(v[6], v[7])],
        ])
    }

    fn rvec4(v: &[f64; 8]) -> CartanVector {
        CartanVector::new([c(v[0], v[1]), c(v[2], v[3]), c(v[4], v[5]), c(v[6], v[7])]).unwrap()
    }

    #[test]
    fn star_of_metric_and_identity() {
        assert_eq!(Operator::metric().star(), Operator::metric());
        assert_eq!(Operator::identity().star(), Operator::identity());
        assert_eq!(Operator::identity().dagger(), Operator::identity());
    }

    #[test]
    fn identity_restrictions_are_sector_metrics() {
        let rp = Operator::identity().restrict(Sector::Plus, 1e-10).unwrap();
        let rm = Operator::identity().restrict(Sector::Minus, 1e-10).unwrap();
        assert_eq!(rp.entries(), Mat2::identity());
        assert_eq!(rm.entries(), Mat2::identity().scale(c(-1.0, 0.0)));
        assert_eq!(rp.sector_trace().unwrap(), c(2.0, 0.0));
        assert_eq!(rm.sector_trace().unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn metric_blocks() {
        let d = Operator::metric().block_decompose();
        assert_eq!(d.pm.entries(), Mat2::zero());
        assert_eq!(d.mp.entries(), Mat2::zero());
        // Both diagonal blocks of g carry entries (g±)·(±I-block) = I.
        assert_eq!(d.pp.action(), Mat2::identity());
        assert_eq!(d.mm.action(), Mat2::identity().scale(c(-1.0, 0.0)));
    }

    #[test]
    fn trace_values() {
        assert_eq!(Operator::identity().trace(), c(4.0, 0.0));
        assert_eq!(Operator::metric().trace(), C64::ZERO);
    }

    #[test]
    fn restrict_rejects_mixing_operators() {
        let mut m = Mat4::zero();
        m.0[0][2] = C64::ONE;
        let a = Operator::from_action(m).unwrap();
        assert!(matches!(
            a.restrict(Sector::Plus, 1e-10),
            Err(Error::NonBlockDiagonal { .. })
        ));
    }

    #[test]
    fn adjoint_representation_identity() {
        let rp = Operator::identity().restrict(Sector::Plus, 1e-10).unwrap();
        assert_eq!(rp.adjoint_representation().unwrap(), Mat2::identity());
    }

    proptest! {
        #[test]
        fn dagger_is_hilbert_adjoint(m in prop::array::uniform32(-2.0f64..2.0),
                                     xv in prop::array::uniform8(-2.0f64..2.0),
                                     yv in prop::array::uniform8(-2.0f64..2.0)) {
            let a = Operator::from_action(rmat4(&m)).unwrap();
            let x = rvec4(&xv);
            let y = rvec4(&yv);
            // Both sides as bras: ⟪xA|y⟫ = ⟪x|yA†⟫.
            let lhs = hilbert_inner(&a.apply(&x), &y);
            let rhs = hilbert_inner(&x, &a.dagger().apply(&y));
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }

        #[test]
        fn star_is_indefinite_adjoint(m in prop::array::uniform32(-2.0f64..2.0),
                                      xv in prop::array::uniform8(-2.0f64..2.0),
                                      yv in prop::array::uniform8(-2.0f64..2.0)) {
            let a = Operator::from_action(rmat4(&m)).unwrap();
            let x = rvec4(&xv);
            let y = rvec4(&yv);
            let lhs = indefinite_inner(&a.apply(&x), &y);
            let rhs = indefinite_inner(&x, &a.star().apply(&y));
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }

        #[test]
        fn conjugations_are_involutive_antimultiplicative(
            ma in prop::array::uniform32(-2.0f64..2.0),
            mb in prop::array::uniform32(-2.0f64..2.0)) {
            let a = Operator::from_action(rmat4(&ma)).unwrap();
            let b = Operator::from_action(rmat4(&mb)).unwrap();
            prop_assert!((a.star().star().matrix() - a.matrix()).max_norm() < 1e-12);
            prop_assert!((a.dagger().dagger().matrix() - a.matrix()).max_norm() < 1e-12);
            let anti_star = a.mul(&b).star().matrix() - b.star().mul(&a.star()).matrix();
            prop_assert!(anti_star.max_norm() < 1e-10);
            let anti_dag = a.mul(&b).dagger().matrix() - b.dagger().mul(&a.dagger()).matrix();
            prop_assert!(anti_dag.max_norm() < 1e-10);
            // star = g · dagger · g, entrywise.
            let g = metric_matrix();
            let via_g = g * a.dagger().matrix() * g;
            prop_assert!((a.star().matrix() - via_g).max_norm() < 1e-12);
        }

        #[test]
        fn block_reassembly_is_exact(m in prop::array::uniform32(-2.0f64..2.0)) {
            let a = Operator::from_action(rmat4(&m)).unwrap();
            prop_assert_eq!(a.block_decompose().reassemble(), a);
        }

        #[test]
        fn trace_is_cyclic(ma in prop::array::uniform32(-2.0f64..2.0),
                           mb in prop::array::uniform32(-2.0f64..2.0)) {
            let a = Operator::from_action(rmat4(&ma)).unwrap();
            let b = Operator::from_action(rmat4(&mb)).unwrap();
            let lhs = a.mul(&b).trace();
            let rhs = b.mul(&a).trace();
            prop_assert!((lhs - rhs).norm() < 1e-10);
            // The metric-weighted diagonal, summed with signature signs,
            // equals the plain trace.
            let ge = a.metric_entries();
            let weighted = ge.0[0][0] + ge.0[1][1] - ge.0[2][2] - ge.0[3][3];
            prop_assert!((weighted - a.trace()).norm() < 1e-12);
        }

        #[test]
        fn sector_apply_matches_full_apply(m in prop::array::uniform32(-2.0f64..2.0),
                                           xv in prop::array::uniform8(-2.0f64..2.0)) {
            // Zero out the mixing blocks to get a block-diagonal operator.
            let mut full = rmat4(&m);
            for i in 0..2 {
                for j in 2..4 {
                    full.0[i][j] = C64::ZERO;
                    full.0[j][i] = C64::ZERO;
                }
            }
            let a = Operator::from_action(full).unwrap();
            let x = rvec4(&xv);
            for s in [Sector::Plus, Sector::Minus] {
                let r = a.restrict(s, 1e-10).unwrap();
                let xs = crate::cartan::project(&x, s);
                let lhs = r.apply(&xs).unwrap();
                let rhs = crate::cartan::project(&a.apply(&x), s);
                prop_assert!((lhs.components()[0] - rhs.components()[0]).norm() < 1e-12);
                prop_assert!((lhs.components()[1] - rhs.components()[1]).norm() < 1e-12);
            }
        }

        #[test]
        fn restriction_is_multiplicative(ma in prop::array::uniform8(-2.0f64..2.0),
                                         mb in prop::array::uniform8(-2.0f64..2.0),
                                         mc in prop::array::uniform8(-2.0f64..2.0)) {
            for s in [Sector::Plus, Sector::Minus] {
                let a = SectorOperator::from_action(s, s, rmat2(&ma));
                let b = SectorOperator::from_action(s, s, rmat2(&mb));
                let cc = SectorOperator::from_action(s, s, rmat2(&mc));
                // Composition with metric insertion equals the plain product
                // of action blocks.
                let composed = a.compose(&b).unwrap().compose(&cc).unwrap();
                let plain = rmat2(&ma) * rmat2(&mb) * rmat2(&mc);
                prop_assert!((composed.action() - plain).max_norm() < 1e-10);
            }
        }

        #[test]
        fn sector_star_is_adjoint(me in prop::array::uniform8(-2.0f64..2.0),
                                  xv in prop::array::uniform4(-2.0f64..2.0),
                                  yv in prop::array::uniform4(-2.0f64..2.0)) {
            for s in [Sector::Plus, Sector::Minus] {
                let a = SectorOperator::from_action(s, s, rmat2(&me));
                let x = SectorVector::new(s, [c(xv[0], xv[1]), c(xv[2], xv[3])]).unwrap();
                let y = SectorVector::new(s, [c(yv[0], yv[1]), c(yv[2], yv[3])]).unwrap();
                let lhs = sector_inner(&a.apply(&x).unwrap(), &y).unwrap();
                let rhs = sector_inner(&x, &a.star().apply(&y).unwrap()).unwrap();
                prop_assert!((lhs - rhs).norm() < 1e-10);
                // Star entries are the conjugate transpose of the stored entries.
                prop_assert!((a.star().entries() - a.entries().adjoint()).max_norm() < 1e-12);
                // Same-sector star and dagger coincide entrywise.
                prop_assert!((a.star().entries() - a.dagger().entries()).max_norm() < 1e-12);
            }
        }

        #[test]
        fn cross_sector_conjugations_swap_and_involute(me in prop::array::uniform8(-2.0f64..2.0)) {
            let a = SectorOperator::from_action(Sector::Plus, Sector::Minus, rmat2(&me));
            prop_assert_eq!(a.star().domain_sector(), Sector::Minus);
            prop_assert_eq!(a.star().range_sector(), Sector::Plus);
            prop_assert!((a.star().star().entries() - a.entries()).max_norm() < 1e-12);
            prop_assert!((a.dagger().dagger().entries() - a.entries()).max_norm() < 1e-12);
        }

        #[test]
        fn trace_calculus(me in prop::array::uniform8(-2.0f64..2.0),
                          mf in prop::array::uniform8(-2.0f64..2.0)) {
            for s in [Sector::Plus, Sector::Minus] {
                let a = SectorOperator::from_action(s, s, rmat2(&me));
                let b = SectorOperator::from_action(s, s, rmat2(&mf));
                // Conjugate-trace relation.
                let lhs = a.sector_trace().unwrap();
                let rhs = a.star().sector_trace().unwrap().conj();
                prop_assert!((lhs - rhs).norm() < 1e-10);
                // Cyclicity.
                let ab = a.compose(&b).unwrap().sector_trace().unwrap();
                let ba = b.compose(&a).unwrap().sector_trace().unwrap();
                prop_assert!((ab - ba).norm() < 1e-10);
                // Reality of Tr(A·A★).
                let asa = a.compose(&a.star()).unwrap().sector_trace().unwrap();
                prop_assert!(asa.im.abs() < 1e-10);
                prop_assert!(asa.re > -1e-10);
            }
        }

        #[test]
        fn pseudo_hermitian_traces_are_real(me in prop::array::uniform8(-2.0f64..2.0)) {
            for s in [Sector::Plus, Sector::Minus] {
                let raw = rmat2(&me);
                // Hermitian entries give a pseudo-Hermitian sector operator.
                let herm = raw + raw.adjoint();
                let a = SectorOperator::new(s, s, herm).unwrap();
                prop_assert!(a.is_pseudo_hermitian(1e-12));
                prop_assert!(a.sector_trace().unwrap().im.abs() < 1e-10);
                let sq = a.compose(&a).unwrap().sector_trace().unwrap();
                prop_assert!(sq.im.abs() < 1e-10);
            }
        }
    }
}
