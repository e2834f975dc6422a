//! Small fixed-size complex linear algebra.
//!
//! Everything here uses the *bilinear* product: `u·v = Σ uᵢvᵢ` with no
//! complex conjugation. That is the product under which `SO(3,C)` is the
//! group of matrices with `OᵀO = I`, and it is the one every formula in this
//! crate is written in. Hermitian norms are only used for tolerances.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Relative determinant threshold used by [`CMat3::inverse`].
pub const SINGULAR_TOL: f64 = 1e-13;

/// Complex 3-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec3(pub [C64; 3]);

impl CVec3 {
    pub const fn new(x: C64, y: C64, z: C64) -> Self {
        Self([x, y, z])
    }

    pub const fn zero() -> Self {
        Self([ZERO; 3])
    }

    pub fn from_real(v: [f64; 3]) -> Self {
        Self(v.map(|x| C64::new(x, 0.0)))
    }

    /// Builds `re + i·im`.
    pub fn from_parts(re: [f64; 3], im: [f64; 3]) -> Self {
        Self([
            C64::new(re[0], im[0]),
            C64::new(re[1], im[1]),
            C64::new(re[2], im[2]),
        ])
    }

    /// Unit basis vector `eᵢ` (`i` in 0..3).
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = ONE;
        v
    }

    pub fn re(&self) -> [f64; 3] {
        self.0.map(|c| c.re)
    }

    pub fn im(&self) -> [f64; 3] {
        self.0.map(|c| c.im)
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|c| c.conj()))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    /// Bilinear product `Σ uᵢvᵢ`, no conjugation.
    pub fn dot(&self, other: &Self) -> C64 {
        bilinear_dot(self, other)
    }

    pub fn cross(&self, other: &Self) -> Self {
        cross(self, other)
    }

    /// Hermitian norm `sqrt(Σ |vᵢ|²)`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.0.iter().all(|c| c.im.abs() <= tol)
    }
}

impl Index<usize> for CVec3 {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for CVec3 {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Add for CVec3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self([self[0] + rhs[0], self[1] + rhs[1], self[2] + rhs[2]])
    }
}

impl Sub for CVec3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self([self[0] - rhs[0], self[1] - rhs[1], self[2] - rhs[2]])
    }
}

impl Neg for CVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Mul<CVec3> for C64 {
    type Output = CVec3;
    fn mul(self, rhs: CVec3) -> CVec3 {
        rhs.scale(self)
    }
}

impl Mul<CVec3> for f64 {
    type Output = CVec3;
    fn mul(self, rhs: CVec3) -> CVec3 {
        rhs.scale_re(self)
    }
}

/// `Σ uᵢvᵢ` without conjugation.
pub fn bilinear_dot(u: &CVec3, v: &CVec3) -> C64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Complex-bilinear vector product.
pub fn cross(u: &CVec3, v: &CVec3) -> CVec3 {
    CVec3([
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ])
}

/// The matrix `v^×` with `(v^×)_{il} = −ε_{ilj} v_j`, so that `v^× w = v × w`.
pub fn axial_matrix(v: &CVec3) -> CMat3 {
    CMat3([
        [ZERO, -v[2], v[1]],
        [v[2], ZERO, -v[0]],
        [-v[1], v[0], ZERO],
    ])
}

/// 3×3 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat3(pub [[C64; 3]; 3]);

impl CMat3 {
    pub const fn zero() -> Self {
        Self([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diagonal(ONE)
    }

    pub fn diagonal(d: C64) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = d;
        }
        m
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        Self(rows.map(|r| r.map(|x| C64::new(x, 0.0))))
    }

    /// `u vᵀ` (no conjugation).
    pub fn outer(u: &CVec3, v: &CVec3) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = u[i] * v[j];
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|r| r.map(|c| c.conj())))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|r| r.map(|c| c * s)))
    }

    pub fn mul_vec(&self, v: &CVec3) -> CVec3 {
        let r = |i: usize| self.0[i][0] * v[0] + self.0[i][1] * v[1] + self.0[i][2] * v[2];
        CVec3([r(0), r(1), r(2)])
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entry modulus (the "∞-norm" used for every residual here).
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Inverse via the adjugate.
    ///
    /// Fails with [`Error::SingularMatrix`] when `|det| ≤ 1e−13·‖m‖³`.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        let scale = self.max_abs();
        if det.norm() <= SINGULAR_TOL * scale * scale * scale {
            return Err(Error::SingularMatrix { det: det.norm() });
        }
        let m = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        let inv_det = det.inv();
        Ok(Self(adj.map(|r| r.map(|c| c * inv_det))))
    }

    /// `‖OᵀO − I‖∞`.
    pub fn orthogonality_residual(&self) -> f64 {
        (self.transpose() * *self - Self::identity()).max_abs()
    }
}

impl Index<(usize, usize)> for CMat3 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl Add for CMat3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for CMat3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-ONE)
    }
}

impl Mul for CMat3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}

impl Mul<CVec3> for CMat3 {
    type Output = CVec3;
    fn mul(self, rhs: CVec3) -> CVec3 {
        self.mul_vec(&rhs)
    }
}

/// Real 4×4 matrix, index order `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RMat4(pub [[f64; 4]; 4]);

/// Minkowski metric `diag(1, −1, −1, −1)`.
pub const ETA: RMat4 = RMat4([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
]);

impl RMat4 {
    pub const fn zero() -> Self {
        Self([[0.0; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = 1.0;
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

    pub fn mul_vec(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }

    /// `‖A + Aᵀ‖∞`.
    pub fn antisymmetry_residual(&self) -> f64 {
        (*self + self.transpose()).max_abs()
    }

    /// Laplace expansion along the first row.
    pub fn det(&self) -> f64 {
        let m = &self.0;
        let minor = |skip: usize| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let a = |r: usize, c: usize| m[r][cols[c]];
            a(1, 0) * (a(2, 1) * a(3, 2) - a(2, 2) * a(3, 1))
                - a(1, 1) * (a(2, 0) * a(3, 2) - a(2, 2) * a(3, 0))
                + a(1, 2) * (a(2, 0) * a(3, 1) - a(2, 1) * a(3, 0))
        };
        (0..4)
            .map(|c| {
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * minor(c)
            })
            .sum()
    }
}

impl Add for RMat4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for RMat4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl Mul for RMat4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}
