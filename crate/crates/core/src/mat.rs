//! Small fixed-size complex matrix kit: 2×2 and 4×4 matrices over Complex64,
//! row vectors acting from the left, plus the two nontrivial numerical
//! routines the library needs (complex Jacobi eigensolver for Hermitian
//! matrices and a scaling-and-squaring matrix exponential).

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Shorthand used throughout the crate.
pub type C64 = Complex64;

/// Convenience constructor for a complex scalar.
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Row vector with two complex components.
pub type Row2 = [C64; 2];
/// Row vector with four complex components.
pub type Row4 = [C64; 4];

pub fn row2_zero() -> Row2 {
    [C64::ZERO; 2]
}

pub fn row4_zero() -> Row4 {
    [C64::ZERO; 4]
}

pub fn row2_add(a: Row2, b: Row2) -> Row2 {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn row4_add(a: Row4, b: Row4) -> Row4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn row2_scale(a: Row2, s: C64) -> Row2 {
    [a[0] * s, a[1] * s]
}

pub fn row2_max_norm(a: Row2) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn row4_max_norm(a: Row4) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[C64::ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.0[0][0] = C64::ONE;
        m.0[1][1] = C64::ONE;
        m
    }

    /// diag(d0, d1).
    pub fn diag(d0: C64, d1: C64) -> Self {
        let mut m = Self::zero();
        m.0[0][0] = d0;
        m.0[1][1] = d1;
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for r in &mut m.0 {
            for z in r {
                *z *= s;
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        for r in &mut m.0 {
            for z in r {
                *z = z.conj();
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse via the adjugate; caller must ensure the determinant is nonzero.
    pub fn inverse(&self) -> Self {
        let d = self.det();
        Mat2([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ])
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Row vector times matrix: (x M)_j = Σ_i x_i M_ij.
    pub fn apply_row(&self, x: Row2) -> Row2 {
        let mut y = row2_zero();
        for (i, xi) in x.iter().enumerate() {
            for j in 0..2 {
                y[j] += *xi * self.0[i][j];
            }
        }
        y
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, x: Row2) -> Row2 {
        let mut y = row2_zero();
        for i in 0..2 {
            for (j, xj) in x.iter().enumerate() {
                y[i] += self.0[i][j] * *xj;
            }
        }
        y
    }

    /// Outer product: column u times row v (entries u_i v_j).
    pub fn outer(u: Row2, v: Row2) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = u[i] * v[j];
            }
        }
        m
    }

    /// Eigenvalues of a general 2×2 matrix via the characteristic quadratic.
    pub fn eigenvalues(&self) -> [C64; 2] {
        let t = self.trace();
        let d = self.det();
        let disc = (t * t - d.scale(4.0)).sqrt();
        [(t + disc).scale(0.5), (t - disc).scale(0.5)]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(c(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut m = Mat2::zero();
        for i in 0..2 {
            for k in 0..2 {
                let aik = self.0[i][k];
                for j in 0..2 {
                    m.0[i][j] += aik * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[C64::ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = C64::ONE;
        }
        m
    }

    pub fn diag(d: [C64; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = d[i];
        }
        m
    }

    /// Assemble from 2×2 blocks [[a, b], [c, d]].
    pub fn from_blocks(a: Mat2, b: Mat2, cb: Mat2, d: Mat2) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a.0[i][j];
                m.0[i][j + 2] = b.0[i][j];
                m.0[i + 2][j] = cb.0[i][j];
                m.0[i + 2][j + 2] = d.0[i][j];
            }
        }
        m
    }

    /// Extract the 2×2 block with row offset `br` and column offset `bc` (0 or 1 each).
    pub fn block(&self, br: usize, bc: usize) -> Mat2 {
        let (r0, c0) = (2 * br, 2 * bc);
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[r0 + i][c0 + j];
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for r in &mut m.0 {
            for z in r {
                *z *= s;
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        for r in &mut m.0 {
            for z in r {
                *z = z.conj();
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det(&self) -> C64 {
        let mut acc = C64::ZERO;
        for j in 0..4 {
            let minor = self.minor3(0, j);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += self.0[0][j] * minor.scale(sign);
        }
        acc
    }

    fn minor3(&self, row: usize, col: usize) -> C64 {
        let mut m = [[C64::ZERO; 3]; 3];
        let mut ri = 0;
        for i in 0..4 {
            if i == row {
                continue;
            }
            let mut cj = 0;
            for j in 0..4 {
                if j == col {
                    continue;
                }
                m[ri][cj] = self.0[i][j];
                cj += 1;
            }
            ri += 1;
        }
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, x: Row4) -> Row4 {
        let mut y = row4_zero();
        for (i, xi) in x.iter().enumerate() {
            for j in 0..4 {
                y[j] += *xi * self.0[i][j];
            }
        }
        y
    }

    /// Matrix exponential by scaling and squaring with a truncated Taylor series.
    pub fn expm(&self) -> Self {
        let norm = self.max_norm() * 4.0;
        let mut squarings = 0u32;
        let mut scaled = *self;
        if norm > 0.5 {
            squarings = (norm / 0.5).log2().ceil() as u32;
            scaled = self.scale(c(1.0 / 2f64.powi(squarings as i32), 0.0));
        }
        let mut acc = Mat4::identity();
        let mut term = Mat4::identity();
        for k in 1..=40 {
            term = (term * scaled).scale(c(1.0 / k as f64, 0.0));
            acc = acc + term;
            if term.max_norm() < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            acc = acc * acc;
        }
        acc
    }

    /// Eigendecomposition of a Hermitian matrix by the complex Jacobi method.
    ///
    /// Returns (eigenvalues, V) with the columns of V orthonormal eigenvectors,
    /// so that `self ≈ V · diag(eigenvalues) · V†`. Eigenvalues are unsorted.
    pub fn hermitian_eigen(&self) -> ([f64; 4], Mat4) {
        let mut a = *self;
        let mut v = Mat4::identity();
        let scale = 1.0 + self.max_norm();
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..4 {
                for q in (p + 1)..4 {
                    off = off.max(a.0[p][q].norm());
                }
            }
            if off < 1e-15 * scale {
                break;
            }
            for p in 0..4 {
                for q in (p + 1)..4 {
                    let apq = a.0[p][q];
                    let r = apq.norm();
                    if r < 1e-18 * scale {
                        continue;
                    }
                    // Phase factor reducing the 2×2 subproblem to a real one.
                    let phase = apq / r;
                    let app = a.0[p][p].re;
                    let aqq = a.0[q][q].re;
                    let tau = (aqq - app) / (2.0 * r);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let cth = 1.0 / (1.0 + t * t).sqrt();
                    let sth = t * cth;
                    // Unitary rotation R: identity except in the (p,q) plane.
                    let mut rot = Mat4::identity();
                    rot.0[p][p] = c(cth, 0.0);
                    rot.0[p][q] = c(sth, 0.0);
                    rot.0[q][p] = -phase.conj() * sth;
                    rot.0[q][q] = phase.conj() * cth;
                    a = rot.adjoint() * a * rot;
                    v = v * rot;
                }
            }
        }
        let mut vals = [0.0f64; 4];
        for i in 0..4 {
            vals[i] = a.0[i][i].re;
        }
        (vals, v)
    }

    /// Apply an analytic function to a Hermitian matrix through its eigensystem.
    pub fn hermitian_map(&self, f: impl Fn(f64) -> f64) -> Self {
        let (vals, v) = self.hermitian_eigen();
        let d = Mat4::diag([
            c(f(vals[0]), 0.0),
            c(f(vals[1]), 0.0),
            c(f(vals[2]), 0.0),
            c(f(vals[3]), 0.0),
        ]);
        v * d * v.adjoint()
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        self.scale(c(-1.0, 0.0))
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let aik = self.0[i][k];
                for j in 0..4 {
                    m.0[i][j] += aik * rhs.0[k][j];
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_mat4(seed: u64) -> Mat4 {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    #[test]
    fn det_of_identity_and_diag() {
        assert_eq!(Mat4::identity().det(), C64::ONE);
        let d = Mat4::diag([c(2.0, 0.0), c(3.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)]);
        assert!((d.det() - c(-3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn det_is_multiplicative() {
        for seed in 0..20 {
            let a = random_mat4(seed);
            let b = random_mat4(seed + 1000);
            let lhs = (a * b).det();
            let rhs = a.det() * b.det();
            assert!((lhs - rhs).norm() < 1e-10, "seed {seed}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let e = Mat4::zero().expm();
        assert!((e - Mat4::identity()).max_norm() < 1e-15);
    }

    #[test]
    fn expm_matches_diagonal_closed_form() {
        let d = Mat4::diag([c(0.3, 0.0), c(-1.2, 0.0), c(0.0, 2.0), c(1.0, -1.0)]);
        let e = d.expm();
        for i in 0..4 {
            let expected = d.0[i][i].exp();
            assert!((e.0[i][i] - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn expm_trace_zero_has_unit_det() {
        for seed in 0..20 {
            let mut x = random_mat4(seed);
            // Force trace zero.
            let t = x.trace().scale(0.25);
            for i in 0..4 {
                x.0[i][i] -= t;
            }
            let e = x.expm();
            assert!((e.det() - C64::ONE).norm() < 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        for seed in 0..50 {
            let r = random_mat4(seed);
            let h = r + r.adjoint(); // Hermitian
            let (vals, v) = h.hermitian_eigen();
            let d = Mat4::diag([
                c(vals[0], 0.0),
                c(vals[1], 0.0),
                c(vals[2], 0.0),
                c(vals[3], 0.0),
            ]);
            let rebuilt = v * d * v.adjoint();
            assert!((rebuilt - h).max_norm() < 1e-12, "seed {seed}");
            let gram = v.adjoint() * v;
            assert!((gram - Mat4::identity()).max_norm() < 1e-13, "seed {seed}");
        }
    }

    #[test]
    fn hermitian_map_square_root() {
        for seed in 0..20 {
            let r = random_mat4(seed);
            let pd = r * r.adjoint() + Mat4::identity(); // positive-definite
            let root = pd.hermitian_map(f64::sqrt);
            assert!((root * root - pd).max_norm() < 1e-11, "seed {seed}");
        }
    }

    #[test]
    fn mat2_eigenvalues_of_diag() {
        let m = Mat2::diag(c(3.0, 1.0), c(-2.0, 0.0));
        let ev = m.eigenvalues();
        let mut found = [false, false];
        for e in ev {
            if (e - c(3.0, 1.0)).norm() < 1e-12 {
                found[0] = true;
            }
            if (e - c(-2.0, 0.0)).norm() < 1e-12 {
                found[1] = true;
            }
        }
        assert!(found[0] && found[1]);
    }

    #[test]
    fn mat2_inverse_round_trip() {
        let m = Mat2([[c(1.0, 2.0), c(0.5, -1.0)], [c(-0.3, 0.1), c(2.0, 0.0)]]);
        let prod = m * m.inverse();
        assert!((prod - Mat2::identity()).max_norm() < 1e-13);
    }
}
