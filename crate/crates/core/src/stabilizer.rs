//! Noncommutativity data `θ ↔ K = n + i m`, its orbit classification, the
//! two-parameter Abelian subgroups of `SO(3,C)` fixing `K`, and the complex
//! rotation taking `K` to its simplest form.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::group::{
    cross3, dot3, half_turn, norm3, rotation_from_gibbs, so3c_from_spinor, spinor_from_gamma_delta,
    ComplexRotation, GammaDelta, SpinorElement, GROUP_TOL,
};
use crate::linalg::{CMat3, CVec3, RMat4, C64, I, ONE};

/// Default isotropy threshold, relative to `‖K‖²`.
pub const EPS_ISO: f64 = 1e-9;

/// Antisymmetry tolerance for `θ`, relative to `max(1, ‖θ‖∞)`.
pub const THETA_ANTISYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    Commutative,
    NonIsotropic,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcase {
    /// `I2 = 0`, `I1 > 0`, `μ = 0`.
    Ia,
    /// `I2 = 0`, `I1 < 0`, `μ = π/2`.
    Ib,
    /// `I1 = 0`, `I2 > 0`, `μ = π/4`.
    IIa,
    /// `I1 = 0`, `I2 < 0`, `μ = 3π/4`.
    IIb,
    Generic,
    None,
}

impl OrbitClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitClass::Commutative => "Commutative",
            OrbitClass::NonIsotropic => "NonIsotropic",
            OrbitClass::Isotropic => "Isotropic",
        }
    }
}

impl Subcase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Subcase::Ia => "Ia",
            Subcase::Ib => "Ib",
            Subcase::IIa => "IIa",
            Subcase::IIb => "IIb",
            Subcase::Generic => "Generic",
            Subcase::None => "None",
        }
    }
}

/// `θ` together with `K` and its Lorentz invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NCParameter {
    pub theta: RMat4,
    pub k: CVec3,
    /// `n² − m²`
    pub i1: f64,
    /// `2 n·m`
    pub i2: f64,
    /// `√(I1² + I2²)`
    pub i: f64,
    /// Phase with `K·K = I e^{2iμ}`, in `[0, π)`.
    pub mu: f64,
    pub class: OrbitClass,
    pub subcase: Subcase,
    pub eps_iso: f64,
}

impl NCParameter {
    /// `(K, Δ)` with `K = Kscalar·Δ`, `Kscalar = √I e^{iμ}`, `Δ·Δ = 1`.
    pub fn unit_delta(&self) -> Result<(C64, CVec3)> {
        if self.class != OrbitClass::NonIsotropic {
            return Err(Error::IsotropicInput);
        }
        let scalar = C64::from_polar(self.i.sqrt(), self.mu);
        Ok((scalar, self.k.scale(scalar.inv())))
    }
}

/// `m_i = θ^{0i}`, `n_i = ½ ε_{ijk} θ^{jk}`, `K = n + i m`.
pub fn theta_to_k(theta: &RMat4) -> Result<CVec3> {
    theta_to_k_with_tol(theta, THETA_ANTISYMMETRY_TOL)
}

pub fn theta_to_k_with_tol(theta: &RMat4, tol: f64) -> Result<CVec3> {
    let residual = theta.antisymmetry_residual();
    if residual > tol * theta.max_abs().max(1.0) {
        return Err(Error::NotAntisymmetric { residual });
    }
    let t = &theta.0;
    let m = [t[0][1], t[0][2], t[0][3]];
    let n = [
        0.5 * (t[2][3] - t[3][2]),
        0.5 * (t[3][1] - t[1][3]),
        0.5 * (t[1][2] - t[2][1]),
    ];
    Ok(CVec3::from_parts(n, m))
}

pub fn k_to_theta(k: &CVec3) -> RMat4 {
    let (n, m) = (k.re(), k.im());
    let mut t = RMat4::zero();
    for (i, mi) in m.iter().enumerate() {
        t.0[0][i + 1] = *mi;
        t.0[i + 1][0] = 0.0 - mi;
    }
    t.0[2][3] = n[0];
    t.0[3][2] = 0.0 - n[0];
    t.0[3][1] = n[1];
    t.0[1][3] = 0.0 - n[1];
    t.0[1][2] = n[2];
    t.0[2][1] = 0.0 - n[2];
    t
}

pub fn classify(k: &CVec3) -> NCParameter {
    classify_with_eps(k, EPS_ISO)
}

pub fn classify_with_eps(k: &CVec3, eps_iso: f64) -> NCParameter {
    let sq = k.dot(k);
    let (i1, i2) = (sq.re, sq.im);
    let i = i1.hypot(i2);
    let norm2 = k.norm_sqr();

    let class = if k.norm() <= eps_iso {
        OrbitClass::Commutative
    } else if sq.norm() <= eps_iso * norm2 {
        OrbitClass::Isotropic
    } else {
        OrbitClass::NonIsotropic
    };

    let mut mu = 0.5 * i2.atan2(i1);
    if mu < 0.0 {
        mu += PI;
    }
    let small = eps_iso * norm2;
    let subcase = match class {
        OrbitClass::NonIsotropic if i2.abs() <= small && i1 > 0.0 => Subcase::Ia,
        OrbitClass::NonIsotropic if i2.abs() <= small => Subcase::Ib,
        OrbitClass::NonIsotropic if i1.abs() <= small && i2 > 0.0 => Subcase::IIa,
        OrbitClass::NonIsotropic if i1.abs() <= small => Subcase::IIb,
        OrbitClass::NonIsotropic => Subcase::Generic,
        _ => Subcase::None,
    };
    match subcase {
        Subcase::Ia => mu = 0.0,
        Subcase::Ib => mu = FRAC_PI_2,
        Subcase::IIa => mu = FRAC_PI_4,
        Subcase::IIb => mu = 3.0 * FRAC_PI_4,
        _ => {}
    }

    NCParameter {
        theta: k_to_theta(k),
        k: *k,
        i1,
        i2,
        i,
        mu,
        class,
        subcase,
        eps_iso,
    }
}

/// Splits a non-isotropic `K` as `Kscalar·Δ` with `Δ·Δ = 1`.
pub fn unit_delta(k: &CVec3) -> Result<(C64, CVec3)> {
    classify(k).unit_delta()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilizerFamily {
    /// `O(γ, Δ)`, `Δ·Δ = 1`; composition adds `γ`.
    NonIsotropic { gamma: C64, delta: CVec3 },
    /// `O(z k)`, `k·k = 0`; composition adds `z`.
    Isotropic { z: C64, k: CVec3 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilizerElement {
    pub family: StabilizerFamily,
    pub spinor: SpinorElement,
    pub rotation: ComplexRotation,
}

impl StabilizerElement {
    /// `‖O K − K‖ / ‖K‖`.
    pub fn fixing_residual(&self, k: &CVec3) -> f64 {
        (self.rotation.apply(k) - *k).norm() / k.norm()
    }
}

/// Element of the subgroup fixing every multiple of `Δ`.
pub fn stabilizer_element(gamma: C64, delta: &CVec3) -> Result<StabilizerElement> {
    let gd = GammaDelta::new(gamma, *delta)?;
    let spinor = spinor_from_gamma_delta(&gd);
    Ok(StabilizerElement {
        family: StabilizerFamily::NonIsotropic { gamma, delta: *delta },
        spinor,
        rotation: so3c_from_spinor(&spinor),
    })
}

/// Element `O(z k)` of the subgroup fixing the isotropic vector `k`.
pub fn isotropic_stabilizer_element(z: C64, k: &CVec3) -> Result<StabilizerElement> {
    isotropic_stabilizer_element_with_eps(z, k, EPS_ISO)
}

pub fn isotropic_stabilizer_element_with_eps(z: C64, k: &CVec3, eps_iso: f64) -> Result<StabilizerElement> {
    if k.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let sq = k.dot(k).norm();
    if sq > eps_iso * k.norm_sqr() {
        return Err(Error::NotIsotropic { residual: sq });
    }
    let spinor = SpinorElement::project_to_group(ONE, k.scale(z))?;
    Ok(StabilizerElement {
        family: StabilizerFamily::Isotropic { z, k: *k },
        spinor,
        rotation: so3c_from_spinor(&spinor),
    })
}

/// Target direction for [`reduce_to_real`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReductionTarget {
    /// `e = N0`.
    Auto,
    Vector([f64; 3]),
}

/// Real orthonormal frame extracted from `Δ = ch ρ N0 + i sh ρ M0`.
struct DeltaFrame {
    ch: f64,
    sh: f64,
    n0: [f64; 3],
    /// `None` when `M = 0`.
    m0: Option<[f64; 3]>,
}

fn delta_frame(delta: &CVec3) -> Result<DeltaFrame> {
    let residual = (delta.dot(delta) - ONE).norm();
    if residual > GROUP_TOL {
        return Err(Error::NotUnitDelta { residual });
    }
    let (nv, mv) = (delta.re(), delta.im());
    let (nn, mn) = (norm3(&nv), norm3(&mv));
    let n0 = nv.map(|x| x / nn);
    if mn <= 1e-12 {
        return Ok(DeltaFrame { ch: 1.0, sh: 0.0, n0, m0: None });
    }
    let rho = mn.asinh();
    let d = dot3(&mv, &n0);
    let mut m0 = [0, 1, 2].map(|i| mv[i] - d * n0[i]);
    let len = norm3(&m0);
    m0 = m0.map(|x| x / len);
    Ok(DeltaFrame { ch: rho.cosh(), sh: rho.sinh(), n0, m0: Some(m0) })
}

fn check_target(target: ReductionTarget, n0: &[f64; 3]) -> Result<[f64; 3]> {
    match target {
        ReductionTarget::Auto => Ok(*n0),
        ReductionTarget::Vector(e) => {
            if (dot3(&e, &e) - 1.0).abs() > GROUP_TOL {
                return Err(Error::NonUnitAxis { residual: (dot3(&e, &e) - 1.0).abs(), imag: 0.0 });
            }
            Ok(e)
        }
    }
}

/// Some real unit vector orthogonal to `v`.
fn perpendicular(v: &[f64; 3]) -> [f64; 3] {
    let i = (0..3)
        .min_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
        .unwrap_or(0);
    let mut axis = [0.0; 3];
    axis[i] = 1.0;
    let p = cross3(v, &axis);
    let l = norm3(&p);
    p.map(|x| x / l)
}

/// Real rotation taking unit `from` to unit `to` via the Gibbs vector
/// `from×to / (1 + from·to)`; half-turn about a perpendicular axis when the
/// two are anti-parallel.
fn rotation_between(from: &[f64; 3], to: &[f64; 3]) -> CMat3 {
    let d = 1.0 + dot3(from, to);
    if d <= 1e-12 {
        return half_turn(&perpendicular(from));
    }
    let c = cross3(from, to).map(|x| x / d);
    rotation_from_gibbs(&c)
}

/// Complex rotation `S` with `S Δ = e` for a real unit `e`.
///
/// With `O1 M0 = N0` and `O2 M0 = e`, `S` acts on span(N0, M0) as
/// `O2 (ch²ρ O1² + sh²ρ)⁻¹ (chρ O1 − i shρ)` and fixes the normal
/// `u = M0 × N0` before `O2` is applied. On `u` the bare product formula
/// would scale by `(chρ − i shρ)/ch 2ρ`, which is not orthogonal; the rank-one
/// term below replaces that factor by 1.
pub fn reduce_to_real(delta: &CVec3, target: ReductionTarget) -> Result<ComplexRotation> {
    let frame = delta_frame(delta)?;
    let e = check_target(target, &frame.n0)?;
    let Some(m0) = frame.m0 else {
        return Ok(ComplexRotation::new_unchecked(rotation_between(&frame.n0, &e)));
    };
    let (o1, o2, p, w) = reduction_factors(&frame, &m0, &e)?;
    let mut t = p.inverse()? * w;

    let u = CVec3::from_real(cross3(&m0, &frame.n0));
    let (ch, sh) = (frame.ch, frame.sh);
    let s_u = C64::new(ch, -sh) / (ch * ch + sh * sh);
    t = t + CMat3::outer(&u, &u).scale(ONE - s_u);
    let _ = o1;
    Ok(ComplexRotation::new_unchecked(o2 * t))
}

/// The bare product `O2 (ch²ρ O1² + sh²ρ)⁻¹ (chρ O1 − i shρ)`.
///
/// It satisfies `S Δ = e` but is not complex-orthogonal when `ρ > 0`; it is
/// exposed for comparison with [`reduce_to_real`].
pub fn reduce_to_real_uncorrected(delta: &CVec3, target: ReductionTarget) -> Result<CMat3> {
    let frame = delta_frame(delta)?;
    let e = check_target(target, &frame.n0)?;
    let Some(m0) = frame.m0 else {
        return Ok(rotation_between(&frame.n0, &e));
    };
    let (_, o2, p, w) = reduction_factors(&frame, &m0, &e)?;
    Ok(o2 * p.inverse()? * w)
}

fn reduction_factors(frame: &DeltaFrame, m0: &[f64; 3], e: &[f64; 3]) -> Result<(CMat3, CMat3, CMat3, CMat3)> {
    let denom = 1.0 + dot3(m0, &frame.n0);
    if denom <= 0.5 {
        return Err(Error::DegenerateDelta(format!("M0·N0 = {} is not ≈ 0", denom - 1.0)));
    }
    let o1 = rotation_from_gibbs(&cross3(m0, &frame.n0).map(|x| x / denom));
    let o2 = rotation_between(m0, e);
    let (ch, sh) = (frame.ch, frame.sh);
    let p = (o1 * o1).scale(C64::new(ch * ch, 0.0)) + CMat3::diagonal(C64::new(sh * sh, 0.0));
    let w = o1.scale(C64::new(ch, 0.0)) - CMat3::diagonal(I * sh);
    Ok((o1, o2, p, w))
}

/// `K` brought to the frame where `n' ∥ m' ∥ e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalFrame {
    pub s: ComplexRotation,
    pub k_scalar: C64,
    pub delta: CVec3,
    /// Real unit vector `S Δ`.
    pub e: [f64; 3],
    /// `Kscalar · e`.
    pub k_canon: CVec3,
}

pub fn canonical_frame(k: &CVec3) -> Result<CanonicalFrame> {
    canonical_frame_for(&classify(k))
}

pub fn canonical_frame_for(param: &NCParameter) -> Result<CanonicalFrame> {
    let (k_scalar, delta) = param.unit_delta()?;
    let s = reduce_to_real(&delta, ReductionTarget::Auto)?;
    let e = s.apply(&delta).re();
    Ok(CanonicalFrame {
        s,
        k_scalar,
        delta,
        e,
        k_canon: CVec3::from_real(e).scale(k_scalar),
    })
}
