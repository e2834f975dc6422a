//! `SL(2,C)` elements and their images in `SO(3,C)` and `L₊↑`.
//!
//! A spinor element is the pair `(k0, k)` standing for the 2×2 matrix
//! `B = k0·I + k·σ` with `det B = k0² − k·k = 1`. Writing
//! `k0 = n0 + i m0` and `k = −i n + m` with real `n0, m0, n, m` gives the
//! rotation/boost split: pure rotations have `m0 = 0, m = 0`, pure boosts
//! have `m0 = 0, n = 0`.

use crate::error::{Error, Result};
use crate::linalg::{axial_matrix, CMat3, CVec3, RMat4, C64, ETA, I, ONE, ZERO};

/// Tolerance for the determinant constraint and the other group invariants.
pub const GROUP_TOL: f64 = 1e-10;

/// An element of `SL(2,C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorElement {
    k0: C64,
    k: CVec3,
}

impl SpinorElement {
    /// Checked constructor. Rejects pairs whose determinant differs from 1 by
    /// more than `1e−10` relative to `max(1, |k0|² + ‖k‖²)`.
    pub fn new(k0: C64, k: CVec3) -> Result<Self> {
        let residual = det_residual(k0, &k);
        if residual > GROUP_TOL {
            return Err(Error::DetConstraint { residual });
        }
        Ok(Self { k0, k })
    }

    /// Builds `(n0 + i m0, −i n + m)`.
    pub fn from_real_parts(n0: f64, m0: f64, n: [f64; 3], m: [f64; 3]) -> Result<Self> {
        let k = CVec3::from_parts(m, n.map(|x| -x));
        Self::new(C64::new(n0, m0), k)
    }

    pub(crate) fn new_unchecked(k0: C64, k: CVec3) -> Self {
        Self { k0, k }
    }

    /// Divides `(k0, k)` by the principal square root of `k0² − k·k`.
    pub fn project_to_group(k0: C64, k: CVec3) -> Result<Self> {
        let det = k0 * k0 - k.dot(&k);
        let scale = k0.norm_sqr() + k.norm_sqr();
        if det.norm() <= 1e-14 * scale.max(1.0) {
            return Err(Error::DetConstraint { residual: (det - ONE).norm() });
        }
        let s = det.sqrt().inv();
        Ok(Self { k0: k0 * s, k: k.scale(s) })
    }

    pub fn identity() -> Self {
        Self { k0: ONE, k: CVec3::zero() }
    }

    pub fn k0(&self) -> C64 {
        self.k0
    }

    pub fn k(&self) -> CVec3 {
        self.k
    }

    pub fn n0(&self) -> f64 {
        self.k0.re
    }

    pub fn m0(&self) -> f64 {
        self.k0.im
    }

    /// Rotation part `n = −Im k`.
    pub fn n(&self) -> [f64; 3] {
        self.k.im().map(|x| -x)
    }

    /// Boost part `m = Re k`.
    pub fn m(&self) -> [f64; 3] {
        self.k.re()
    }

    pub fn det(&self) -> C64 {
        self.k0 * self.k0 - self.k.dot(&self.k)
    }

    /// The other preimage of the same `SO(3,C)` element.
    pub fn neg(&self) -> Self {
        Self { k0: -self.k0, k: -self.k }
    }

    /// Inverse element `(k0, −k)`.
    pub fn inverse(&self) -> Self {
        Self { k0: self.k0, k: -self.k }
    }

    /// `self ∘ rhs`, i.e. the matrix product `B(self)·B(rhs)`.
    pub fn compose(&self, rhs: &Self) -> Self {
        spinor_compose(self, rhs)
    }

    /// `B = k0·I + k·σ` as a 2×2 complex matrix.
    pub fn to_matrix(&self) -> [[C64; 2]; 2] {
        let [k1, k2, k3] = self.k.0;
        [[self.k0 + k3, k1 - I * k2], [k1 + I * k2, self.k0 - k3]]
    }

    /// Largest componentwise difference to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.k0 - other.k0).norm().max((self.k - other.k).max_abs())
    }

    /// Distance to `other` modulo the overall sign of the double cover.
    pub fn distance_up_to_sign(&self, other: &Self) -> f64 {
        self.distance(other).min(self.distance(&other.neg()))
    }

    /// `m0 = 0` and `m = 0`.
    pub fn is_pure_rotation(&self, tol: f64) -> bool {
        self.k0.im.abs() <= tol && self.k.re().iter().all(|x| x.abs() <= tol)
    }

    /// `m0 = 0` and `n = 0`.
    pub fn is_pure_boost(&self, tol: f64) -> bool {
        self.k0.im.abs() <= tol && self.k.im().iter().all(|x| x.abs() <= tol)
    }

    pub fn rotation(&self) -> ComplexRotation {
        so3c_from_spinor(self)
    }

    pub fn lorentz(&self) -> Lorentz4 {
        lorentz4_from_spinor(self)
    }
}

fn det_residual(k0: C64, k: &CVec3) -> f64 {
    let det = k0 * k0 - k.dot(k);
    let scale = (k0.norm_sqr() + k.norm_sqr()).max(1.0);
    (det - ONE).norm() / scale
}

/// `k0'' = k0'k0 + k'·k`, `k'' = k0'k + k0k' + i k'×k`, where `b1` carries
/// the primes. This is the Pauli-matrix product `B(b1)·B(b2)`.
pub fn spinor_compose(b1: &SpinorElement, b2: &SpinorElement) -> SpinorElement {
    let (a0, a) = (b1.k0, b1.k);
    let (c0, c) = (b2.k0, b2.k);
    SpinorElement {
        k0: a0 * c0 + a.dot(&c),
        k: a0 * c + c0 * a + I * a.cross(&c),
    }
}

fn check_real_unit(e: &CVec3) -> Result<[f64; 3]> {
    let imag = e.im().iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let re = e.re();
    let residual = (re.iter().map(|x| x * x).sum::<f64>() - 1.0).abs();
    if imag > GROUP_TOL || residual > GROUP_TOL {
        return Err(Error::NonUnitAxis { residual, imag });
    }
    Ok(re)
}

/// Rotation by `alpha` about the real unit axis `e`:
/// `k0 = cos(α/2)`, `k = −i sin(α/2) e`.
pub fn spinor_from_rotation(alpha: f64, e: &CVec3) -> Result<SpinorElement> {
    let e = check_real_unit(e)?;
    let (s, c) = (alpha / 2.0).sin_cos();
    Ok(SpinorElement {
        k0: C64::new(c, 0.0),
        k: CVec3::from_parts([0.0; 3], e.map(|x| -s * x)),
    })
}

/// Boost with rapidity `beta` along the real unit axis `e`:
/// `k0 = ch(β/2)`, `k = sh(β/2) e`.
pub fn spinor_from_boost(beta: f64, e: &CVec3) -> Result<SpinorElement> {
    let e = check_real_unit(e)?;
    let h = beta / 2.0;
    Ok(SpinorElement {
        k0: C64::new(h.cosh(), 0.0),
        k: CVec3::from_real(e.map(|x| h.sinh() * x)),
    })
}

/// Composition of real Gibbs vectors `c = tan(α/2) e`:
/// `c'' = (c' + c + c'×c) / (1 − c'·c)`.
pub fn gibbs_compose(c1: &[f64; 3], c2: &[f64; 3]) -> Result<[f64; 3]> {
    let dot: f64 = (0..3).map(|i| c1[i] * c2[i]).sum();
    let denom = 1.0 - dot;
    if denom.abs() <= 1e-12 * (1.0 + norm3(c1) * norm3(c2)) {
        return Err(Error::HalfTurnResult);
    }
    let x = cross3(c1, c2);
    Ok([0, 1, 2].map(|i| (c1[i] + c2[i] + x[i]) / denom))
}

/// Gibbs vector `n/n0` of a pure rotation.
pub fn gibbs_from_spinor(b: &SpinorElement) -> Result<[f64; 3]> {
    if !b.is_pure_rotation(GROUP_TOL) {
        return Err(Error::NotPureElement);
    }
    let n0 = b.n0();
    if n0.abs() <= 1e-12 {
        return Err(Error::HalfTurnResult);
    }
    Ok(b.n().map(|x| x / n0))
}

/// Real rotation matrix `I + 2(c^× + (c^×)²)/(1 + c²)`.
pub fn rotation_from_gibbs(c: &[f64; 3]) -> CMat3 {
    let x = axial_matrix(&CVec3::from_real(*c));
    let c2: f64 = c.iter().map(|v| v * v).sum();
    CMat3::identity() + (x + x * x).scale(C64::new(2.0 / (1.0 + c2), 0.0))
}

/// Half-turn `I + 2(u^×)²` about the real unit axis `u`.
pub fn half_turn(u: &[f64; 3]) -> CMat3 {
    let x = axial_matrix(&CVec3::from_real(*u));
    CMat3::identity() + (x * x).scale(C64::new(2.0, 0.0))
}

pub(crate) fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot3(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn cross3(u: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// An element of `SO(3,C)`: `OᵀO = I`, `det O = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRotation {
    matrix: CMat3,
}

impl ComplexRotation {
    /// Checked constructor; tolerance `1e−10` relative to `max(1, ‖O‖²)`.
    pub fn new(matrix: CMat3) -> Result<Self> {
        let scale = matrix.max_abs().powi(2).max(1.0);
        let orth = matrix.orthogonality_residual() / scale;
        let det = (matrix.det() - ONE).norm() / scale;
        if orth > GROUP_TOL || det > GROUP_TOL {
            return Err(Error::InternalInconsistency(format!(
                "matrix is not in SO(3,C): orthogonality {orth:e}, det {det:e}"
            )));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn new_unchecked(matrix: CMat3) -> Self {
        Self { matrix }
    }

    pub fn identity() -> Self {
        Self { matrix: CMat3::identity() }
    }

    pub fn matrix(&self) -> &CMat3 {
        &self.matrix
    }

    pub fn apply(&self, v: &CVec3) -> CVec3 {
        self.matrix.mul_vec(v)
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self { matrix: self.matrix * rhs.matrix }
    }

    /// `Oᵀ`, which is the inverse.
    pub fn inverse(&self) -> Self {
        Self { matrix: self.matrix.transpose() }
    }

    pub fn orthogonality_residual(&self) -> f64 {
        self.matrix.orthogonality_residual()
    }
}

/// `O(k) = I + 2[i k0 k^× − (k^×)²]`.
///
/// In the rotation variables `n = i k` this is `I + 2[n0 n^× + (n^×)²]`, the
/// familiar quaternion-to-matrix map, continued to complex arguments.
pub fn so3c_from_spinor(b: &SpinorElement) -> ComplexRotation {
    let x = axial_matrix(&b.k);
    let m = CMat3::identity() + (x.scale(I * b.k0) - x * x).scale(C64::new(2.0, 0.0));
    ComplexRotation::new_unchecked(m)
}

/// A proper orthochronous Lorentz matrix, signature `(+,−,−,−)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorentz4 {
    matrix: RMat4,
}

impl Lorentz4 {
    pub fn new(matrix: RMat4) -> Result<Self> {
        let scale = matrix.max_abs().powi(2).max(1.0);
        let res = lorentz_residual(&matrix) / scale;
        if res > GROUP_TOL || matrix.0[0][0] < 1.0 - GROUP_TOL || (matrix.det() - 1.0).abs() > GROUP_TOL * scale {
            return Err(Error::InternalInconsistency(format!(
                "matrix is not a proper orthochronous Lorentz transformation (residual {res:e})"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &RMat4 {
        &self.matrix
    }

    /// `x'^a = L^a_b x^b`.
    pub fn apply(&self, x: &[f64; 4]) -> [f64; 4] {
        self.matrix.mul_vec(x)
    }

    /// `‖LᵀηL − η‖∞`.
    pub fn residual(&self) -> f64 {
        lorentz_residual(&self.matrix)
    }
}

fn lorentz_residual(m: &RMat4) -> f64 {
    (m.transpose() * ETA * *m - ETA).max_abs()
}

/// The real 4×4 image of `b`, built from products `k_a k_b^*`.
pub fn lorentz4_from_spinor(b: &SpinorElement) -> Lorentz4 {
    let k0 = b.k0;
    let k = b.k.0;
    let c = |z: C64| z.conj();
    let mut m = [[ZERO; 4]; 4];

    let a00 = k0 * c(k0);
    m[0][0] = a00;
    for j in 0..3 {
        let t = -c(k0) * k[j] - k0 * c(k[j]);
        m[0][j + 1] = t;
        m[j + 1][0] = t;
        m[j + 1][j + 1] = a00;
    }
    let [k1, k2, k3] = k;
    // antisymmetric rotation block
    m[1][2] = -I * c(k0) * k3 + I * k0 * c(k3);
    m[1][3] = I * c(k0) * k2 - I * k0 * c(k2);
    m[2][1] = I * c(k0) * k3 - I * k0 * c(k3);
    m[2][3] = -I * c(k0) * k1 + I * k0 * c(k1);
    m[3][1] = -I * c(k0) * k2 + I * k0 * c(k2);
    m[3][2] = I * c(k0) * k1 - I * k0 * c(k1);

    let sq = k.map(|z| z.norm_sqr());
    m[0][0] += C64::new(sq[0] + sq[1] + sq[2], 0.0);
    m[1][1] += C64::new(sq[0] - sq[1] - sq[2], 0.0);
    m[2][2] += C64::new(sq[1] - sq[0] - sq[2], 0.0);
    m[3][3] += C64::new(sq[2] - sq[0] - sq[1], 0.0);

    let t01 = I * (k2 * c(k3) - k3 * c(k2));
    let t02 = I * (-k1 * c(k3) + k3 * c(k1));
    let t03 = I * (k1 * c(k2) - k2 * c(k1));
    m[0][1] += t01;
    m[0][2] += t02;
    m[0][3] += t03;
    m[1][0] -= t01;
    m[2][0] -= t02;
    m[3][0] -= t03;

    let s12 = k1 * c(k2) + k2 * c(k1);
    let s13 = k1 * c(k3) + k3 * c(k1);
    let s23 = k2 * c(k3) + k3 * c(k2);
    m[1][2] += s12;
    m[2][1] += s12;
    m[1][3] += s13;
    m[3][1] += s13;
    m[2][3] += s23;
    m[3][2] += s23;

    Lorentz4 { matrix: RMat4(m.map(|r| r.map(|z| z.re))) }
}

/// The same matrix written directly in the real parameters `(n0, m0, n, m)`.
/// Kept as an independent route for cross-checking [`lorentz4_from_spinor`].
pub fn lorentz4_from_spinor_nm(b: &SpinorElement) -> Lorentz4 {
    let (n0, m0) = (b.n0(), b.m0());
    let [n1, n2, n3] = b.n();
    let [m1, m2, m3] = b.m();
    let d = n0 * n0 + m0 * m0;
    let q = [n1 * n1 + m1 * m1, n2 * n2 + m2 * m2, n3 * n3 + m3 * m3];
    let d0 = q[0] + q[1] + q[2];
    let d1 = q[0] - q[1] - q[2];
    let d2 = -q[0] + q[1] - q[2];
    let d3 = -q[0] - q[1] + q[2];

    let b1 = n1 * m0 - n0 * m1;
    let b2 = n2 * m0 - n0 * m2;
    let b3 = n3 * m0 - n0 * m3;
    let r1 = n0 * n1 + m0 * m1;
    let r2 = n0 * n2 + m0 * m2;
    let r3 = n0 * n3 + m0 * m3;
    let x1 = n2 * m3 - n3 * m2;
    let x2 = n3 * m1 - n1 * m3;
    let x3 = n1 * m2 - n2 * m1;
    let s12 = n1 * n2 + m1 * m2;
    let s13 = n1 * n3 + m1 * m3;
    let s23 = n2 * n3 + m2 * m3;

    let first = [
        [d / 2.0, b1, b2, b3],
        [b1, d / 2.0, -r3, r2],
        [b2, r3, d / 2.0, -r1],
        [b3, -r2, r1, d / 2.0],
    ];
    let second = [
        [d0 / 2.0, x1, x2, x3],
        [-x1, d1 / 2.0, s12, s13],
        [-x2, s12, d2 / 2.0, s23],
        [-x3, s13, s23, d3 / 2.0],
    ];
    let mut m = RMat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = 2.0 * (first[i][j] + second[i][j]);
        }
    }
    Lorentz4 { matrix: m }
}

/// `(γ, Δ)` with `γ = α + iβ` and `Δ·Δ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaDelta {
    pub gamma: C64,
    pub delta: CVec3,
}

impl GammaDelta {
    pub fn new(gamma: C64, delta: CVec3) -> Result<Self> {
        let residual = (delta.dot(&delta) - ONE).norm();
        if residual > GROUP_TOL {
            return Err(Error::NotUnitDelta { residual });
        }
        Ok(Self { gamma, delta })
    }

    /// Recovers `(γ, Δ)` from a non-isotropic element using the principal
    /// branch `γ/2 = arccos k0`.
    pub fn from_spinor(b: &SpinorElement) -> Result<Self> {
        let half = b.k0.acos();
        let s = half.sin();
        if s.norm() <= 1e-12 {
            return Err(Error::GammaDegenerate);
        }
        Ok(Self { gamma: half * 2.0, delta: b.k.scale(I / s) })
    }
}

/// `k0 = cos(γ/2)`, `k = −i sin(γ/2) Δ`.
pub fn spinor_from_gamma_delta(gd: &GammaDelta) -> SpinorElement {
    let half = gd.gamma / 2.0;
    SpinorElement::new_unchecked(half.cos(), gd.delta.scale(-I * half.sin()))
}

/// Which identity set [`verify_su2_boost_identities`] checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PureKind {
    Rotation,
    Boost,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub kind: PureKind,
    pub max_residual: f64,
}

/// Rotations: `O* = O` and `O⁻¹ = Oᵀ`.
/// Boosts: `O* = O⁻¹ = O(n0, −m) = Oᵀ`.
pub fn verify_su2_boost_identities(b: &SpinorElement) -> Result<IdentityReport> {
    let o = *so3c_from_spinor(b).matrix();
    let ot = o.transpose();
    let inv_res = (o * ot - CMat3::identity()).max_abs().max((ot * o - CMat3::identity()).max_abs());
    if b.is_pure_rotation(GROUP_TOL) {
        let conj_res = (o.conj() - o).max_abs();
        return Ok(IdentityReport { kind: PureKind::Rotation, max_residual: conj_res.max(inv_res) });
    }
    if b.is_pure_boost(GROUP_TOL) {
        let flipped = *so3c_from_spinor(&b.inverse()).matrix();
        let res = (o.conj() - ot)
            .max_abs()
            .max((flipped - ot).max_abs())
            .max(inv_res);
        return Ok(IdentityReport { kind: PureKind::Boost, max_residual: res });
    }
    Err(Error::NotPureElement)
}
