//! Constructors and certificates for SU(2,2) elements: pseudo-unitarity and
//! block-constraint checks, the Cartan (polar) decomposition, the Poincaré /
//! Lorentz embeddings, the dynamical intersection with U(4), and seeded
//! random element generation.

use crate::algebra::{Operator, SectorOperator};
use crate::cartan::{metric_matrix, Sector, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::mat::{c, Mat2, Mat4, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A 4×4 matrix with verified group certificates.
#[derive(Clone, Copy, Debug)]
pub struct GroupElement {
    matrix: Mat4,
    pseudo_unitary: bool,
    special: bool,
    unitary: bool,
}

/// Max-norm residual of u·g·u† − g.
pub fn pseudo_unitarity_residual(m: &Mat4) -> f64 {
    let g = metric_matrix();
    (*m * g * m.adjoint() - g).max_norm()
}

/// Max-norm residual of u·u† − I.
pub fn unitarity_residual(m: &Mat4) -> f64 {
    (*m * m.adjoint() - Mat4::identity()).max_norm()
}

/// True iff the matrix preserves the indefinite metric within `tol`.
pub fn is_pseudo_unitary(u: &Operator, tol: f64) -> bool {
    pseudo_unitarity_residual(&u.matrix()) < tol
}

impl GroupElement {
    /// Certify a matrix as an SU(2,2) element (pseudo-unitary, det 1).
    pub fn new(matrix: Mat4, tol: f64) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let pu = pseudo_unitarity_residual(&matrix);
        if pu >= tol {
            return Err(Error::NotInGroup {
                reason: "fails pseudo-unitarity",
                residual: pu,
            });
        }
        let det_res = (matrix.det() - C64::ONE).norm();
        if det_res >= tol {
            return Err(Error::NotInGroup {
                reason: "determinant differs from 1",
                residual: det_res,
            });
        }
        Ok(GroupElement {
            matrix,
            pseudo_unitary: true,
            special: true,
            unitary: unitarity_residual(&matrix) < tol,
        })
    }

    /// Certify a pseudo-unitary matrix without requiring det = 1
    /// (the Poincaré embeddings need not be recertified as special).
    pub fn new_pseudo_unitary(matrix: Mat4, tol: f64) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let pu = pseudo_unitarity_residual(&matrix);
        if pu >= tol {
            return Err(Error::NotInGroup {
                reason: "fails pseudo-unitarity",
                residual: pu,
            });
        }
        Ok(GroupElement {
            matrix,
            pseudo_unitary: true,
            special: (matrix.det() - C64::ONE).norm() < tol,
            unitary: unitarity_residual(&matrix) < tol,
        })
    }

    pub fn identity() -> Self {
        GroupElement {
            matrix: Mat4::identity(),
            pseudo_unitary: true,
            special: true,
            unitary: true,
        }
    }

    pub fn matrix(&self) -> Mat4 {
        self.matrix
    }

    pub fn operator(&self) -> Operator {
        Operator::from_action(self.matrix).expect("finite by construction")
    }

    pub fn is_pseudo_unitary(&self) -> bool {
        self.pseudo_unitary
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn det(&self) -> C64 {
        self.matrix.det()
    }

    /// Group product (matrix product).
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: self.matrix * other.matrix,
            pseudo_unitary: self.pseudo_unitary && other.pseudo_unitary,
            special: self.special && other.special,
            unitary: self.unitary && other.unitary,
        }
    }
}

/// Residuals of the three block identities equivalent to pseudo-unitarity.
#[derive(Clone, Copy, Debug)]
pub struct BlockConstraintReport {
    /// u⁺⁺ g*⁻-weighted row constraint against g⁺.
    pub plus: f64,
    /// The minus-sector analogue against g⁻.
    pub minus: f64,
    /// The mixed-row orthogonality condition.
    pub off_diagonal: f64,
}

impl BlockConstraintReport {
    pub fn max(&self) -> f64 {
        self.plus.max(self.minus).max(self.off_diagonal)
    }
}

/// Evaluate the sector-block constraints carried by a pseudo-unitary element:
/// each row of blocks contracts against the adjoint sector metrics to
/// reproduce the sector metric, and the mixed contraction vanishes.
pub fn check_block_constraints(u: &GroupElement) -> BlockConstraintReport {
    let d = u.operator().block_decompose();
    // Entry matrices (metric-weighted) of the four blocks.
    let upp = d.pp.entries();
    let upm = d.pm.entries();
    let ump = d.mp.entries();
    let umm = d.mm.entries();
    // Adjoint metrics g*± = ±I; sector metrics g± = ±I.
    let gp = Mat2::identity();
    let gm = Mat2::identity().scale(c(-1.0, 0.0));
    // u⁺⁺ g*⁺ (u⁺⁺)★ + u⁺⁻ g*⁻ (u⁺⁻)★ = g⁺ ; star entries = entries†.
    let plus = (upp * gp * upp.adjoint() + upm * gm * upm.adjoint() - gp).max_norm();
    let minus = (ump * gp * ump.adjoint() + umm * gm * umm.adjoint() - gm).max_norm();
    let off = (upp * gp * ump.adjoint() + upm * gm * umm.adjoint()).max_norm();
    BlockConstraintReport {
        plus,
        minus,
        off_diagonal: off,
    }
}

/// The unique polar factorization u = U·H of an SU(2,2) element.
#[derive(Clone, Copy, Debug)]
pub struct CartanFactors {
    pub unitary_part: GroupElement,
    pub positive_part: GroupElement,
}

/// Cartan decomposition: H is the principal square root of u†u (Hermitian
/// positive-definite, det 1) and U = u·H⁻¹ is unitary; both land in SU(2,2).
pub fn cartan_decompose(u: &GroupElement, tol: f64) -> Result<CartanFactors> {
    let m = u.matrix();
    let h2 = m.adjoint() * m; // Hermitian positive-definite
    let (vals, v) = h2.hermitian_eigen();
    if let Some(&lo) = vals
        .iter()
        .min_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"))
    {
        if lo <= tol {
            return Err(Error::NumericallySingular { eigenvalue: lo });
        }
    }
    let sqrt = Mat4::diag([
        c(vals[0].sqrt(), 0.0),
        c(vals[1].sqrt(), 0.0),
        c(vals[2].sqrt(), 0.0),
        c(vals[3].sqrt(), 0.0),
    ]);
    let inv_sqrt = Mat4::diag([
        c(1.0 / vals[0].sqrt(), 0.0),
        c(1.0 / vals[1].sqrt(), 0.0),
        c(1.0 / vals[2].sqrt(), 0.0),
        c(1.0 / vals[3].sqrt(), 0.0),
    ]);
    let h = v * sqrt * v.adjoint();
    let h_inv = v * inv_sqrt * v.adjoint();
    let uu = m * h_inv;
    // Certify loosely: the factors inherit tiny numerical error from the
    // eigendecomposition, so certificates use a relaxed tolerance.
    let cert_tol = (tol * 1e4).max(1e-9);
    Ok(CartanFactors {
        unitary_part: GroupElement::new(uu, cert_tol)?,
        positive_part: GroupElement::new(h, cert_tol)?,
    })
}

/// An SL(2,C) matrix (det 1 within tol).
#[derive(Clone, Copy, Debug)]
pub struct SL2CElement {
    matrix: Mat2,
}

impl SL2CElement {
    pub fn new(matrix: Mat2, tol: f64) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let res = (matrix.det() - C64::ONE).norm();
        if res >= tol {
            return Err(Error::NotInGroup {
                reason: "determinant differs from 1",
                residual: res,
            });
        }
        Ok(SL2CElement { matrix })
    }

    pub fn identity() -> Self {
        SL2CElement {
            matrix: Mat2::identity(),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }
}

/// An SU(2) matrix (unitary, det 1 within tol).
#[derive(Clone, Copy, Debug)]
pub struct SU2Element {
    matrix: Mat2,
}

impl SU2Element {
    pub fn new(matrix: Mat2, tol: f64) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let unit = (matrix * matrix.adjoint() - Mat2::identity()).max_norm();
        if unit >= tol {
            return Err(Error::NotInGroup {
                reason: "fails unitarity",
                residual: unit,
            });
        }
        let det = (matrix.det() - C64::ONE).norm();
        if det >= tol {
            return Err(Error::NotInGroup {
                reason: "determinant differs from 1",
                residual: det,
            });
        }
        Ok(SU2Element { matrix })
    }

    pub fn identity() -> Self {
        SU2Element {
            matrix: Mat2::identity(),
        }
    }

    /// Parameterize by a unit quaternion-style 4-vector (normalized internally).
    pub fn from_params(a: f64, b: f64, cc: f64, d: f64) -> Self {
        let n = (a * a + b * b + cc * cc + d * d).sqrt().max(1e-300);
        let (a, b, cc, d) = (a / n, b / n, cc / n, d / n);
        SU2Element {
            matrix: Mat2([[c(a, b), c(cc, d)], [c(-cc, d), c(a, -b)]]),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }
}

/// A Hermitian translation matrix W = w₀I + w·σ.
#[derive(Clone, Copy, Debug)]
pub struct TranslationMatrix {
    matrix: Mat2,
    normalized: bool,
}

impl TranslationMatrix {
    /// Hermitian W from real parameters (w₀, w₁, w₂, w₃).
    pub fn from_params(w0: f64, w: [f64; 3]) -> Self {
        TranslationMatrix {
            matrix: Mat2([
                [c(w0 + w[2], 0.0), c(w[0], -w[1])],
                [c(w[0], w[1]), c(w0 - w[2], 0.0)],
            ]),
            normalized: false,
        }
    }

    /// Accept an explicit Hermitian matrix.
    pub fn from_matrix(matrix: Mat2, tol: f64) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let herm = (matrix - matrix.adjoint()).max_norm();
        if herm >= tol {
            return Err(Error::NotInGroup {
                reason: "translation matrix not Hermitian",
                residual: herm,
            });
        }
        let sq = (matrix * matrix - Mat2::identity()).max_norm();
        Ok(TranslationMatrix {
            matrix,
            normalized: sq < tol,
        })
    }

    pub fn zero() -> Self {
        TranslationMatrix {
            matrix: Mat2::zero(),
            normalized: false,
        }
    }

    /// Normalized W with W² = I: the eigenvalues w₀ ± |w| are replaced by
    /// their signs (sign of 0 taken as +1; |w| → 0 collapses to sign(w₀)·I).
    pub fn normalized_from_params(w0: f64, w: [f64; 3]) -> Self {
        let r = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        let sgn = |x: f64| if x < 0.0 { -1.0 } else { 1.0 };
        if r < 1e-14 {
            return TranslationMatrix {
                matrix: Mat2::identity().scale(c(sgn(w0), 0.0)),
                normalized: true,
            };
        }
        let hi = sgn(w0 + r);
        let lo = sgn(w0 - r);
        // W' = avg·I + (diff / (2r))·(W − w₀I)
        let avg = (hi + lo) / 2.0;
        let diff = hi - lo;
        let dir = [w[0] * diff / (2.0 * r), w[1] * diff / (2.0 * r), w[2] * diff / (2.0 * r)];
        TranslationMatrix {
            matrix: Self::from_params(avg, dir).matrix,
            normalized: true,
        }
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }
}

/// Ten-parameter Poincaré embedding: the block matrix
/// (1/2)·[[a + (I+iW)â, a − (I+iW)â], [−a + (I−iW)â, −a − (I−iW)â]]
/// with â = (a†)⁻¹; pseudo-unitary with det 1.
pub fn poincare_matrix(a: &SL2CElement, w: &TranslationMatrix) -> GroupElement {
    let am = a.matrix();
    let ahat = am.adjoint().inverse();
    let i2 = Mat2::identity();
    let iw = w.matrix().scale(c(0.0, 1.0));
    let p = (i2 + iw) * ahat;
    let q = (i2 - iw) * ahat;
    let half = c(0.5, 0.0);
    let m = Mat4::from_blocks(
        (am + p).scale(half),
        (am - p).scale(half),
        (q - am).scale(half),
        (q + am).scale(-half),
    );
    GroupElement {
        matrix: m,
        pseudo_unitary: pseudo_unitarity_residual(&m) < DEFAULT_TOL * 1e2,
        special: (m.det() - C64::ONE).norm() < DEFAULT_TOL * 1e2,
        unitary: unitarity_residual(&m) < DEFAULT_TOL * 1e2,
    }
}

/// Six-parameter Lorentz embedding: the Poincaré matrix with W = 0.
pub fn lorentz_matrix(a: &SL2CElement) -> GroupElement {
    poincare_matrix(a, &TranslationMatrix::zero())
}

/// Element of the dynamical intersection (simultaneously unitary and
/// pseudo-unitary): (1/√2)·diag((I+iW)β, β†(I−iW)) with W² = I.
pub fn dyn_matrix(beta: &SU2Element, w: &TranslationMatrix) -> Result<GroupElement> {
    if !w.is_normalized() {
        let res = (w.matrix() * w.matrix() - Mat2::identity()).max_norm();
        return Err(Error::TranslationNotNormalized { residual: res });
    }
    let i2 = Mat2::identity();
    let iw = w.matrix().scale(c(0.0, 1.0));
    let b = beta.matrix();
    let inv_sqrt2 = c(1.0 / 2f64.sqrt(), 0.0);
    let top = ((i2 + iw) * b).scale(inv_sqrt2);
    let bot = (b.adjoint() * (i2 - iw)).scale(inv_sqrt2);
    let m = Mat4::from_blocks(top, Mat2::zero(), Mat2::zero(), bot);
    Ok(GroupElement {
        matrix: m,
        pseudo_unitary: true,
        special: true,
        unitary: true,
    })
}

/// Companion three-parameter rotation pattern diag(β, β†).
pub fn dyn_rotation(beta: &SU2Element) -> GroupElement {
    let b = beta.matrix();
    let m = Mat4::from_blocks(b, Mat2::zero(), Mat2::zero(), b.adjoint());
    GroupElement {
        matrix: m,
        pseudo_unitary: true,
        special: true,
        unitary: true,
    }
}

/// The two diagonal blocks of a block-diagonal unitary pseudo-unitary
/// element, as sector operators.
#[derive(Clone, Copy, Debug)]
pub struct DynFrameMap {
    pub plus: SectorOperator,
    pub minus: SectorOperator,
}

impl DynFrameMap {
    pub fn block(&self, s: Sector) -> &SectorOperator {
        match s {
            Sector::Plus => &self.plus,
            Sector::Minus => &self.minus,
        }
    }
}

/// Extract the sector restrictions of an element of the dynamical
/// intersection; the element must be block-diagonal, unitary, and
/// pseudo-unitary within `tol`.
pub fn dyn_restriction(u: &GroupElement, tol: f64) -> Result<DynFrameMap> {
    let off = u.operator().off_diagonal_norm();
    if off >= tol {
        return Err(Error::NonBlockDiagonal { residual: off });
    }
    let unit = unitarity_residual(&u.matrix());
    if unit >= tol {
        return Err(Error::NotInGroup {
            reason: "fails unitarity",
            residual: unit,
        });
    }
    let pu = pseudo_unitarity_residual(&u.matrix());
    if pu >= tol {
        return Err(Error::NotInGroup {
            reason: "fails pseudo-unitarity",
            residual: pu,
        });
    }
    Ok(DynFrameMap {
        plus: u.operator().restrict(Sector::Plus, tol)?,
        minus: u.operator().restrict(Sector::Minus, tol)?,
    })
}

/// Fixed basis of the 15 Hermitian 4×4 matrices H with Tr(g·H) = 0; then
/// X = g·(i·Σ cₙHₙ) is pseudo-anti-Hermitian (X★ = −X) and trace-free in
/// the metric-weighted sense, so exp(X) lies in SU(2,2).
fn lie_basis() -> Vec<Mat4> {
    let mut basis = Vec::with_capacity(15);
    let mut diag = |d: [f64; 4]| {
        basis.push(Mat4::diag([
            c(d[0], 0.0),
            c(d[1], 0.0),
            c(d[2], 0.0),
            c(d[3], 0.0),
        ]));
    };
    // Diagonal Hermitian matrices orthogonal to g under the plain trace:
    // Tr(g·H) = h0 + h1 − h2 − h3 = 0.
    diag([1.0, -1.0, 0.0, 0.0]);
    diag([0.0, 0.0, 1.0, -1.0]);
    diag([1.0, 0.0, 1.0, 0.0]);
    // Off-diagonal pairs: real-symmetric and imaginary-antisymmetric
    // patterns for each index pair (automatically g-trace-free).
    for p in 0..4 {
        for q in (p + 1)..4 {
            let mut re = Mat4::zero();
            re.0[p][q] = C64::ONE;
            re.0[q][p] = C64::ONE;
            basis.push(re);
            let mut im = Mat4::zero();
            im.0[p][q] = c(0.0, 1.0);
            im.0[q][p] = c(0.0, -1.0);
            basis.push(im);
        }
    }
    basis
}

/// Deterministic random SU(2,2) element: exponential of a random
/// pseudo-anti-Hermitian trace-free matrix with coefficients drawn
/// uniformly from [−1, 1] by a ChaCha8 generator.
pub fn random_su22(seed: u64) -> GroupElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_su22_from(&mut rng)
}

/// Same sampling, driven by a caller-owned generator.
pub fn random_su22_from(rng: &mut ChaCha8Rng) -> GroupElement {
    let mut k = Mat4::zero();
    for h in lie_basis() {
        let coeff = rng.gen_range(-1.0..1.0);
        k = k + h.scale(c(coeff, 0.0));
    }
    // X = g·(iK) with K Hermitian: then X★ = g X† g = g (−iKg) g = −giK = −X.
    let x = metric_matrix() * k.scale(c(0.0, 1.0));
    let m = x.expm();
    GroupElement {
        matrix: m,
        pseudo_unitary: true,
        special: true,
        unitary: unitarity_residual(&m) < DEFAULT_TOL,
    }
}

/// Deterministic random element of the dynamical intersection plus its
/// sector restrictions.
pub fn random_dyn_frame(seed: u64) -> (GroupElement, DynFrameMap) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_dyn_frame_from(&mut rng)
}

/// Same sampling, driven by a caller-owned generator.
pub fn random_dyn_frame_from(rng: &mut ChaCha8Rng) -> (GroupElement, DynFrameMap) {
    let beta = SU2Element::from_params(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    );
    let w = TranslationMatrix::normalized_from_params(
        rng.gen_range(-1.0..1.0),
        [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ],
    );
    let u = dyn_matrix(&beta, &w).expect("normalized by construction");
    let map = dyn_restriction(&u, 1e-9).expect("block-diagonal unitary by construction");
    (u, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_metric_are_pseudo_unitary() {
        assert!(is_pseudo_unitary(&Operator::identity(), 1e-12));
        assert!(is_pseudo_unitary(&Operator::metric(), 1e-12));
        let stretch = Operator::from_action(Mat4::diag([
            c(2.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(0.5, 0.0),
        ]))
        .unwrap();
        assert!(!is_pseudo_unitary(&stretch, 1e-10));
    }

    #[test]
    fn random_elements_certify() {
        for seed in 0..100 {
            let u = random_su22(seed);
            assert!(
                pseudo_unitarity_residual(&u.matrix()) < 1e-10,
                "seed {seed}: {}",
                pseudo_unitarity_residual(&u.matrix())
            );
            assert!(
                (u.det() - C64::ONE).norm() < 1e-9,
                "seed {seed}: det {}",
                u.det()
            );
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_su22(42).matrix(), random_su22(42).matrix());
    }

    #[test]
    fn group_closure() {
        for seed in 0..20 {
            let a = random_su22(seed);
            let b = random_su22(seed + 500);
            let prod = a.mul(&b);
            assert!(pseudo_unitarity_residual(&prod.matrix()) < 1e-9);
            assert!((prod.det() - C64::ONE).norm() < 1e-8);
        }
    }

    #[test]
    fn block_constraints_hold() {
        assert!(check_block_constraints(&GroupElement::identity()).max() < 1e-15);
        for seed in 0..50 {
            let u = random_su22(seed);
            let rep = check_block_constraints(&u);
            assert!(rep.max() < 1e-10, "seed {seed}: {}", rep.max());
        }
        // Block-diagonal unitary elements have exactly zero mixing.
        let (u, _) = random_dyn_frame(7);
        let rep = check_block_constraints(&u);
        assert!(rep.off_diagonal < 1e-15);
    }

    #[test]
    fn cartan_decomposition_reconstructs() {
        for seed in 0..50 {
            let u = random_su22(seed);
            let f = cartan_decompose(&u, 1e-10).unwrap();
            let rebuilt = f.unitary_part.matrix() * f.positive_part.matrix();
            assert!(
                (rebuilt - u.matrix()).max_norm() < 1e-9,
                "seed {seed}: {}",
                (rebuilt - u.matrix()).max_norm()
            );
            let h = f.positive_part.matrix();
            assert!((h * h - u.matrix().adjoint() * u.matrix()).max_norm() < 1e-9);
            assert!(unitarity_residual(&f.unitary_part.matrix()) < 1e-9);
            let (vals, _) = h.hermitian_eigen();
            assert!(vals.iter().all(|&v| v > 0.0), "seed {seed}");
        }
    }

    #[test]
    fn cartan_of_unitary_is_trivial() {
        let (u, _) = random_dyn_frame(3);
        let f = cartan_decompose(&u, 1e-10).unwrap();
        assert!((f.positive_part.matrix() - Mat4::identity()).max_norm() < 1e-10);
        assert!((f.unitary_part.matrix() - u.matrix()).max_norm() < 1e-10);
    }

    #[test]
    fn poincare_identity_image() {
        let p = poincare_matrix(&SL2CElement::identity(), &TranslationMatrix::zero());
        // The embedding sends a = I, W = 0 to diag(I, −I), not to I.
        let expected = Mat4::from_blocks(
            Mat2::identity(),
            Mat2::zero(),
            Mat2::zero(),
            Mat2::identity().scale(c(-1.0, 0.0)),
        );
        assert!((p.matrix() - expected).max_norm() < 1e-14);
        assert!(p.is_pseudo_unitary());
    }

    #[test]
    fn poincare_with_sigma3_translation() {
        let sigma3 = TranslationMatrix::from_params(0.0, [0.0, 0.0, 1.0]);
        let p = poincare_matrix(&SL2CElement::identity(), &sigma3);
        assert!(pseudo_unitarity_residual(&p.matrix()) < 1e-12);
        assert!((p.det() - C64::ONE).norm() < 1e-12);
        // Top-left block is (2I + iσ₃)/2.
        let tl = p.matrix().block(0, 0);
        assert!((tl.0[0][0] - c(1.0, 0.5)).norm() < 1e-14);
        assert!((tl.0[1][1] - c(1.0, -0.5)).norm() < 1e-14);
    }

    #[test]
    fn poincare_random_certificates() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            // Random SL(2,C): scale a random matrix to det 1.
            let mut m = Mat2::zero();
            for i in 0..2 {
                for j in 0..2 {
                    m.0[i][j] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            let d = m.det();
            if d.norm() < 1e-3 {
                continue;
            }
            let a = SL2CElement::new(m.scale(d.sqrt().inv()), 1e-10).unwrap();
            let w = TranslationMatrix::from_params(
                rng.gen_range(-1.0..1.0),
                [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ],
            );
            let p = poincare_matrix(&a, &w);
            assert!(pseudo_unitarity_residual(&p.matrix()) < 1e-10);
            assert!((p.det() - C64::ONE).norm() < 1e-10);
            assert!((lorentz_matrix(&a).matrix()
                - poincare_matrix(&a, &TranslationMatrix::zero()).matrix())
            .max_norm()
                < 1e-15);
        }
    }

    #[test]
    fn dyn_matrix_is_unitary_and_pseudo_unitary() {
        let beta = SU2Element::identity();
        let sigma3 = TranslationMatrix::normalized_from_params(0.0, [0.0, 0.0, 1.0]);
        let u = dyn_matrix(&beta, &sigma3).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((u.matrix().0[0][0] - c(s, s)).norm() < 1e-14);
        assert!((u.matrix().0[1][1] - c(s, -s)).norm() < 1e-14);
        assert!((u.matrix().0[2][2] - c(s, -s)).norm() < 1e-14);
        assert!((u.matrix().0[3][3] - c(s, s)).norm() < 1e-14);
        assert!(unitarity_residual(&u.matrix()) < 1e-12);
        assert!(pseudo_unitarity_residual(&u.matrix()) < 1e-12);
        assert!((u.det() - C64::ONE).norm() < 1e-12);
    }

    #[test]
    fn dyn_matrix_rejects_unnormalized_translation() {
        let beta = SU2Element::identity();
        let w = TranslationMatrix::from_params(0.3, [0.1, 0.0, 0.0]);
        assert!(matches!(
            dyn_matrix(&beta, &w),
            Err(Error::TranslationNotNormalized { .. })
        ));
    }

    #[test]
    fn dyn_rotation_pattern() {
        let beta = SU2Element::from_params(0.6, 0.0, 0.8, 0.0);
        let u = dyn_rotation(&beta);
        assert!(unitarity_residual(&u.matrix()) < 1e-12);
        assert!((u.matrix().block(0, 0) - beta.matrix()).max_norm() < 1e-15);
        assert!((u.matrix().block(1, 1) - beta.matrix().adjoint()).max_norm() < 1e-15);
    }

    #[test]
    fn translation_normalization_projects_eigenvalues() {
        let w = TranslationMatrix::normalized_from_params(0.3, [0.2, -0.5, 0.7]);
        let sq = w.matrix() * w.matrix();
        assert!((sq - Mat2::identity()).max_norm() < 1e-12);
        assert!((w.matrix() - w.matrix().adjoint()).max_norm() < 1e-14);
        // Degenerate direction collapses to ±I.
        let flat = TranslationMatrix::normalized_from_params(-0.4, [0.0, 0.0, 0.0]);
        assert!((flat.matrix() + Mat2::identity()).max_norm() < 1e-14);
        let zero = TranslationMatrix::normalized_from_params(0.0, [0.0, 0.0, 0.0]);
        assert!((zero.matrix() - Mat2::identity()).max_norm() < 1e-14);
    }

    #[test]
    fn dyn_restriction_blocks() {
        let beta = SU2Element::from_params(0.3, 0.5, -0.2, 0.7);
        let w = TranslationMatrix::normalized_from_params(0.1, [0.4, 0.2, -0.3]);
        let u = dyn_matrix(&beta, &w).unwrap();
        let map = dyn_restriction(&u, 1e-10).unwrap();
        let expected_plus = ((Mat2::identity() + w.matrix().scale(c(0.0, 1.0))) * beta.matrix())
            .scale(c(1.0 / 2f64.sqrt(), 0.0));
        assert!((map.plus.action() - expected_plus).max_norm() < 1e-13);
        for s in [Sector::Plus, Sector::Minus] {
            let b = map.block(s);
            // u g* u★ = g entrywise.
            let gstar = Mat2::identity().scale(c(s.sign(), 0.0));
            let rebuilt = b.entries() * gstar * b.star().entries();
            assert!((rebuilt - gstar).max_norm() < 1e-12);
            let t = b.compose(&b.star()).unwrap().sector_trace().unwrap();
            assert!((t - c(2.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn unitary_elements_are_block_diagonal_with_reciprocal_dets() {
        for seed in 0..20 {
            let (u, map) = random_dyn_frame(seed);
            assert!(u.operator().off_diagonal_norm() < 1e-15);
            let dp = map.plus.action().det();
            let dm = map.minus.action().det();
            assert!((dp * dm - C64::ONE).norm() < 1e-12, "seed {seed}");
        }
    }
}
