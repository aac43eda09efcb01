//! Small complex-matrix backend: 2×2 operator algebra and the 4×4 pieces
//! needed for two-qubit measurement schemes.
//!
//! The backend exists as an independent cross-check for the Bloch-vector
//! closed forms. Traces, eigenvalues, and operator norms of 2×2 matrices are
//! computed in closed form; nothing here is iterative.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{tol, Error, Result};

/// Shorthand for the complex scalar type used throughout the backend.
pub type C64 = Complex64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A general 2×2 complex matrix in the computational basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawMatrix2", into = "RawMatrix2")]
pub struct Matrix2 {
    /// Entries in row-major order.
    pub m: [[C64; 2]; 2],
}

/// Serialized form: entries as `[re, im]` pairs, row-major.
type RawMatrix2 = [[[f64; 2]; 2]; 2];

impl From<RawMatrix2> for Matrix2 {
    fn from(raw: RawMatrix2) -> Self {
        let mut m = [[C64::default(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = c(raw[i][j][0], raw[i][j][1]);
            }
        }
        Matrix2 { m }
    }
}

impl From<Matrix2> for RawMatrix2 {
    fn from(mat: Matrix2) -> Self {
        let mut raw = [[[0.0; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                raw[i][j] = [mat.m[i][j].re, mat.m[i][j].im];
            }
        }
        raw
    }
}

impl Matrix2 {
    pub const fn new(m: [[C64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        Self::new([[c(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        Self::new([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
    }

    pub fn pauli_x() -> Self {
        Self::new([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
    }

    pub fn pauli_y() -> Self {
        Self::new([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn pauli_z() -> Self {
        Self::new([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
    }

    /// t·𝟙 + v·σ for real t and real 3-vector v = (x, y, z).
    pub fn from_pauli(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self::new([[c(t + z, 0.0), c(x, -y)], [c(x, y), c(t - z, 0.0)]])
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for row in out.m.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::new([
            [self.m[0][0].conj(), self.m[1][0].conj()],
            [self.m[0][1].conj(), self.m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Largest absolute deviation from M = M†.
    pub fn hermiticity_defect(&self) -> f64 {
        let d01 = (self.m[0][1] - self.m[1][0].conj()).norm();
        self.m[0][0].im.abs().max(self.m[1][1].im.abs()).max(d01)
    }

    /// Eigenvalues of a Hermitian matrix, ascending. The caller is
    /// responsible for Hermiticity; only the real parts of the diagonal and
    /// the (0,1) entry are consulted.
    pub fn eigvals_hermitian(&self) -> (f64, f64) {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d).powi(2) + self.m[0][1].norm_sqr()).sqrt();
        (mid - rad, mid + rad)
    }

    /// Operator (spectral) norm of a general complex 2×2 matrix, via the
    /// closed-form largest eigenvalue of M†M.
    pub fn operator_norm(&self) -> f64 {
        let h = self.adjoint() * *self;
        let (_, hi) = h.eigvals_hermitian();
        hi.max(0.0).sqrt()
    }

    /// Re tr(ρ·M) for a density matrix ρ.
    pub fn expectation(&self, rho: &Matrix2) -> f64 {
        (*rho * *self).trace().re
    }

    pub fn commutator(a: &Matrix2, b: &Matrix2) -> Matrix2 {
        *a * *b - *b * *a
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }
}

impl std::ops::Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out
    }
}

impl std::ops::Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] -= rhs.m[i][j];
            }
        }
        out
    }
}

impl std::ops::Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let mut out = Matrix2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        out
    }
}

impl std::ops::Neg for Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        self.scale(-1.0)
    }
}

/// A 2×2 matrix validated to be Hermitian (defect ≤ [`tol::HERMITICITY`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Matrix2", into = "Matrix2")]
pub struct HermitianMatrix2(Matrix2);

impl TryFrom<Matrix2> for HermitianMatrix2 {
    type Error = Error;

    fn try_from(m: Matrix2) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(Error::NotHermitian { defect });
        }
        Ok(HermitianMatrix2(m))
    }
}

impl From<HermitianMatrix2> for Matrix2 {
    fn from(h: HermitianMatrix2) -> Matrix2 {
        h.0
    }
}

impl HermitianMatrix2 {
    pub fn new(m: Matrix2) -> Result<Self> {
        Self::try_from(m)
    }

    /// t·𝟙 + v·σ, Hermitian by construction.
    pub fn from_pauli(t: f64, x: f64, y: f64, z: f64) -> Self {
        HermitianMatrix2(Matrix2::from_pauli(t, x, y, z))
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Eigenvalues, ascending.
    pub fn eigvals(&self) -> (f64, f64) {
        self.0.eigvals_hermitian()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigvals().0
    }

    /// Operator norm = max |eigenvalue| for a Hermitian matrix.
    pub fn operator_norm(&self) -> f64 {
        let (lo, hi) = self.eigvals();
        lo.abs().max(hi.abs())
    }

    pub fn expectation(&self, rho: &Matrix2) -> f64 {
        self.0.expectation(rho)
    }

    /// Pauli components (t, x, y, z) with M = t·𝟙 + x·σ₁ + y·σ₂ + z·σ₃.
    pub fn pauli_components(&self) -> (f64, f64, f64, f64) {
        let m = &self.0.m;
        let t = 0.5 * (m[0][0].re + m[1][1].re);
        let z = 0.5 * (m[0][0].re - m[1][1].re);
        let x = 0.5 * (m[0][1] + m[1][0]).re;
        let y = 0.5 * (m[1][0] - m[0][1]).im;
        (t, x, y, z)
    }
}

impl std::ops::Add for HermitianMatrix2 {
    type Output = HermitianMatrix2;
    fn add(self, rhs: HermitianMatrix2) -> HermitianMatrix2 {
        HermitianMatrix2(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HermitianMatrix2 {
    type Output = HermitianMatrix2;
    fn sub(self, rhs: HermitianMatrix2) -> HermitianMatrix2 {
        HermitianMatrix2(self.0 - rhs.0)
    }
}

/// A 4×4 complex matrix on ℂ² ⊗ ℂ², basis ordered |system, probe⟩ with
/// index 2·s + p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4 {
    pub m: [[C64; 4]; 4],
}

impl Matrix4 {
    pub fn zero() -> Self {
        Self {
            m: [[c(0.0, 0.0); 4]; 4],
        }
    }

    /// Kronecker product A ⊗ B with A on the system slot, B on the probe.
    pub fn kron(a: &Matrix2, b: &Matrix2) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.m[2 * i + k][2 * j + l] = a.m[i][j] * b.m[k][l];
                    }
                }
            }
        }
        out
    }

    /// CNOT with the system as control and the probe as target.
    pub fn cnot() -> Self {
        let p0 = Matrix2::new([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        let p1 = Matrix2::new([[c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
        Self::kron(&p0, &Matrix2::identity()) + Self::kron(&p1, &Matrix2::pauli_x())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    /// Contraction (𝟙 ⊗ ⟨k|) M (𝟙 ⊗ |φ⟩): the system-side 2×2 block obtained
    /// by reading the probe out in basis state |k⟩ after preparing it in |φ⟩.
    pub fn probe_contract(&self, k: usize, phi: &[C64; 2]) -> Matrix2 {
        let mut out = Matrix2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = c(0.0, 0.0);
                for p in 0..2 {
                    acc += self.m[2 * i + k][2 * j + p] * phi[p];
                }
                out.m[i][j] = acc;
            }
        }
        out
    }

    /// Contraction (𝟙 ⊗ ⟨φ|) M (𝟙 ⊗ |φ⟩): partial expectation over the probe.
    pub fn probe_expectation(&self, phi: &[C64; 2]) -> Matrix2 {
        let mut out = Matrix2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = c(0.0, 0.0);
                for p in 0..2 {
                    for q in 0..2 {
                        acc += phi[p].conj() * self.m[2 * i + p][2 * j + q] * phi[q];
                    }
                }
                out.m[i][j] = acc;
            }
        }
        out
    }
}

impl std::ops::Add for Matrix4 {
    type Output = Matrix4;
    fn add(self, rhs: Matrix4) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out
    }
}

impl std::ops::Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = c(0.0, 0.0);
                for k in 0..4 {
                    acc += self.m[i][k] * rhs.m[k][j];
                }
                out.m[i][j] = acc;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_matrices_square_to_identity() {
        for p in [Matrix2::pauli_x(), Matrix2::pauli_y(), Matrix2::pauli_z()] {
            assert!((p * p).max_abs_diff(&Matrix2::identity()) < 1e-15);
        }
    }

    #[test]
    fn hermitian_eigenvalues_closed_form() {
        // σ_x has eigenvalues ∓1.
        let (lo, hi) = Matrix2::pauli_x().eigvals_hermitian();
        assert!((lo + 1.0).abs() < 1e-15);
        assert!((hi - 1.0).abs() < 1e-15);

        // ½·𝟙 + v·σ with |v| = ½ is a projector: eigenvalues 0 and 1.
        let eff = Matrix2::from_pauli(0.5, 0.25, 0.0, (3f64).sqrt() / 4.0);
        let (lo, hi) = eff.eigvals_hermitian();
        assert!((lo - 0.0).abs() < 1e-15);
        assert!((hi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn operator_norm_of_non_normal_matrix() {
        // Nilpotent [[0,1],[0,0]] has spectral radius 0 but norm 1.
        let n = Matrix2::new([[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        assert!((n.operator_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hermitian_constructor_rejects_defect() {
        let mut m = Matrix2::pauli_x();
        m.m[0][1] += c(1e-6, 0.0);
        assert!(matches!(
            HermitianMatrix2::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn pauli_components_round_trip() {
        let h = HermitianMatrix2::from_pauli(0.3, -0.1, 0.7, 0.2);
        let (t, x, y, z) = h.pauli_components();
        assert!((t - 0.3).abs() < 1e-15);
        assert!((x + 0.1).abs() < 1e-15);
        assert!((y - 0.7).abs() < 1e-15);
        assert!((z - 0.2).abs() < 1e-15);
    }

    #[test]
    fn cnot_flips_probe_when_system_set() {
        let u = Matrix4::cnot();
        // |10⟩ -> |11⟩: column 2 has its unit entry at row 3.
        assert!((u.m[3][2] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((u.m[2][3] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((u.m[0][0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((u.m[1][1] - c(1.0, 0.0)).norm() < 1e-15);
        // Unitarity.
        let prod = u.adjoint() * u;
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod.m[i][j] - c(expect, 0.0)).norm() < 1e-15);
            }
        }
    }
}
