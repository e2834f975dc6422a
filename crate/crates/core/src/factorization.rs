//! Splitting an `SL(2,C)` element into a Euclidean rotation and a pure boost,
//! in either order.

use crate::error::{Error, Result};
use crate::group::{cross3, dot3, SpinorElement, GROUP_TOL};
use crate::linalg::{CVec3, C64};
use crate::stabilizer::EPS_ISO;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorOrder {
    /// `b = ±(rotation ∘ boost)`
    RotationFirst,
    /// `b = ±(boost ∘ rotation)`
    BoostFirst,
}

impl FactorOrder {
    pub fn as_str(&self) -> &'static str {
        match self {
            FactorOrder::RotationFirst => "RotationFirst",
            FactorOrder::BoostFirst => "BoostFirst",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationBoostPair {
    /// `(a0, −i a)` with `a0 ≥ 0`, `a0² + a² = 1`.
    pub rotation: SpinorElement,
    /// `(b0, b)` with `b0 ≥ 1`, `b0² − b² = 1`.
    pub boost: SpinorElement,
    pub order: FactorOrder,
    /// The ordered product equals `sign · source`.
    pub sign: f64,
}

impl RotationBoostPair {
    pub fn product(&self) -> SpinorElement {
        match self.order {
            FactorOrder::RotationFirst => self.rotation.compose(&self.boost),
            FactorOrder::BoostFirst => self.boost.compose(&self.rotation),
        }
    }

    /// `‖product − sign·source‖`.
    pub fn reconstruction_residual(&self, source: &SpinorElement) -> f64 {
        let target = if self.sign < 0.0 { source.neg() } else { *source };
        self.product().distance(&target)
    }

    /// Real rotation parameters `(a0, a)`.
    pub fn rotation_params(&self) -> (f64, [f64; 3]) {
        (self.rotation.n0(), self.rotation.n())
    }

    /// Real boost parameters `(b0, b)`.
    pub fn boost_params(&self) -> (f64, [f64; 3]) {
        (self.boost.n0(), self.boost.m())
    }
}

pub fn factor_rotation_boost(b: &SpinorElement) -> Result<RotationBoostPair> {
    factor(b, FactorOrder::RotationFirst)
}

pub fn factor_boost_rotation(b: &SpinorElement) -> Result<RotationBoostPair> {
    factor(b, FactorOrder::BoostFirst)
}

/// Factorization of `±(1 + k·σ)` with `k·k = 0`. Here `b0 = √(1 + n²)`.
pub fn factor_isotropic(b: &SpinorElement, order: FactorOrder) -> Result<RotationBoostPair> {
    factor_isotropic_with_eps(b, order, EPS_ISO)
}

pub fn factor_isotropic_with_eps(b: &SpinorElement, order: FactorOrder, eps_iso: f64) -> Result<RotationBoostPair> {
    if !is_isotropic_element(b, eps_iso) {
        return Err(Error::NotIsotropicElement);
    }
    let n = b.n();
    let d = 1.0 + dot3(&n, &n);
    let dir = boost_direction(b, order, d);
    let b0 = d.sqrt();
    Ok(assemble(b, order, d, b0, dir.map(|x| b0 * x)))
}

/// `k0 = ±1` within `1e−10` and `|k·k| ≤ ε_iso ‖k‖²`.
pub fn is_isotropic_element(b: &SpinorElement, eps_iso: f64) -> bool {
    let k0 = b.k0();
    let unit = (k0 - C64::new(1.0, 0.0)).norm().min((k0 + C64::new(1.0, 0.0)).norm()) <= GROUP_TOL;
    let k = b.k();
    unit && k.dot(&k).norm() <= eps_iso * k.norm_sqr()
}

fn factor(b: &SpinorElement, order: FactorOrder) -> Result<RotationBoostPair> {
    let n = b.n();
    let d = b.n0() * b.n0() + dot3(&n, &n);
    if d <= 1e-20 {
        return Err(Error::DegenerateNorm { value: d });
    }
    let v = boost_direction(b, order, d);
    let gap = 1.0 - dot3(&v, &v);
    if gap <= GROUP_TOL {
        return Err(Error::InternalInconsistency(format!("boost velocity |B|² = {} ≥ 1", 1.0 - gap)));
    }
    let b0 = 1.0 / gap.sqrt();
    Ok(assemble(b, order, d, b0, v.map(|x| b0 * x)))
}

/// `B = (n0 m − m0 n ± m×n) / (n0² + n²)`, plus for rotation-first.
fn boost_direction(b: &SpinorElement, order: FactorOrder, d: f64) -> [f64; 3] {
    let (n0, m0, n, m) = (b.n0(), b.m0(), b.n(), b.m());
    let mxn = cross3(&m, &n);
    let s = match order {
        FactorOrder::RotationFirst => 1.0,
        FactorOrder::BoostFirst => -1.0,
    };
    [0, 1, 2].map(|i| (n0 * m[i] - m0 * n[i] + s * mxn[i]) / d)
}

fn assemble(b: &SpinorElement, order: FactorOrder, d: f64, b0: f64, bv: [f64; 3]) -> RotationBoostPair {
    let r = d.sqrt();
    let mut a0 = b.n0() / r;
    let mut a = b.n().map(|x| x / r);
    if a0 < 0.0 {
        a0 = -a0;
        a = a.map(|x| -x);
    }
    let rotation = SpinorElement::new_unchecked(C64::new(a0, 0.0), CVec3::from_parts([0.0; 3], a.map(|x| -x)));
    let boost = SpinorElement::new_unchecked(C64::new(b0, 0.0), CVec3::from_real(bv));
    let mut pair = RotationBoostPair { rotation, boost, order, sign: 1.0 };
    let product = pair.product();
    if product.distance(&b.neg()) < product.distance(b) {
        pair.sign = -1.0;
    }
    pair
}

/// Effect of `n′ = λ(cos σ n − sin σ m)`, `m′ = λ(sin σ n + cos σ m)` on an
/// isotropic `k = m − i n` and on the factorization of `1 + k′·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleFreedomReport {
    pub lambda: f64,
    pub sigma: f64,
    pub n_prime: [f64; 3],
    pub m_prime: [f64; 3],
    pub k_prime: CVec3,
    /// `|n′² − λ²n²|`
    pub n_norm_residual: f64,
    /// `|m′² − λ²m²|`
    pub m_norm_residual: f64,
    /// `|n′·m′|`
    pub orthogonality_residual: f64,
    /// `‖n′×m′ − λ² n×m‖∞`
    pub cross_residual: f64,
    /// `1/√(1 + λ²n²)`
    pub a0_prime: f64,
    /// `√(1 + λ²n²)`
    pub b0_prime: f64,
    /// Largest deviation of the factors of `1 + k′·σ` from `(a0′, b0′)`.
    pub factor_residual: f64,
}

impl ScaleFreedomReport {
    pub fn max_residual(&self) -> f64 {
        self.n_norm_residual
            .max(self.m_norm_residual)
            .max(self.orthogonality_residual)
            .max(self.cross_residual)
            .max(self.factor_residual)
    }
}

pub fn scale_freedom_report(k: &CVec3, lambda: f64, sigma: f64) -> Result<ScaleFreedomReport> {
    if k.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let sq = k.dot(k).norm();
    if sq > EPS_ISO * k.norm_sqr() {
        return Err(Error::NotIsotropic { residual: sq });
    }
    let m = k.re();
    let n = k.im().map(|x| -x);
    let (s, c) = sigma.sin_cos();
    let n_prime = [0, 1, 2].map(|i| lambda * (c * n[i] - s * m[i]));
    let m_prime = [0, 1, 2].map(|i| lambda * (s * n[i] + c * m[i]));
    let k_prime = CVec3::from_parts(m_prime, n_prime.map(|x| -x));
    let l2 = lambda * lambda;
    let nn = dot3(&n, &n);

    let cross = cross3(&n, &m);
    let cross_p = cross3(&n_prime, &m_prime);
    let cross_residual = (0..3).map(|i| (cross_p[i] - l2 * cross[i]).abs()).fold(0.0, f64::max);

    let a0_prime = 1.0 / (1.0 + l2 * nn).sqrt();
    let b0_prime = (1.0 + l2 * nn).sqrt();
    let el = SpinorElement::project_to_group(C64::new(1.0, 0.0), k_prime)?;
    let mut factor_residual = 0.0f64;
    for order in [FactorOrder::RotationFirst, FactorOrder::BoostFirst] {
        let pair = factor_isotropic(&el, order)?;
        factor_residual = factor_residual
            .max((pair.rotation.n0() - a0_prime).abs())
            .max((pair.boost.n0() - b0_prime).abs());
    }

    Ok(ScaleFreedomReport {
        lambda,
        sigma,
        n_prime,
        m_prime,
        k_prime,
        n_norm_residual: (dot3(&n_prime, &n_prime) - l2 * nn).abs(),
        m_norm_residual: (dot3(&m_prime, &m_prime) - l2 * dot3(&m, &m)).abs(),
        orthogonality_residual: dot3(&n_prime, &m_prime).abs(),
        cross_residual,
        a0_prime,
        b0_prime,
        factor_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{spinor_from_boost, spinor_from_rotation};
    use crate::sampling::Sampler;

    #[test]
    fn pure_rotation_has_trivial_boost() {
        let b = spinor_from_rotation(1.1, &CVec3::from_real([0.0, 0.6, 0.8])).unwrap();
        for pair in [factor_rotation_boost(&b).unwrap(), factor_boost_rotation(&b).unwrap()] {
            assert!(pair.boost.distance(&SpinorElement::identity()) < 1e-15);
            assert!(pair.rotation.distance(&b) < 1e-15);
            assert_eq!(pair.sign, 1.0);
        }
    }

    #[test]
    fn pure_boost_has_trivial_rotation() {
        let b = spinor_from_boost(0.9, &CVec3::from_real([1.0, 0.0, 0.0])).unwrap();
        for pair in [factor_rotation_boost(&b).unwrap(), factor_boost_rotation(&b).unwrap()] {
            assert!(pair.rotation.distance(&SpinorElement::identity()) < 1e-15);
            assert!(pair.boost.distance(&b) < 1e-14);
        }
        let v = b.m().map(|x| x / b.n0());
        let pair = factor_rotation_boost(&b).unwrap();
        let (b0, bv) = pair.boost_params();
        assert!((bv[0] / b0 - v[0]).abs() < 1e-15);
    }

    #[test]
    fn rotation_angle_above_pi_flips_sign() {
        let b = spinor_from_rotation(4.0, &CVec3::from_real([0.0, 0.0, 1.0])).unwrap();
        let pair = factor_rotation_boost(&b).unwrap();
        assert!(pair.rotation.n0() >= 0.0);
        assert_eq!(pair.sign, -1.0);
        assert!(pair.reconstruction_residual(&b) < 1e-15);
    }

    #[test]
    fn random_roundtrip_both_orders() {
        let mut s = Sampler::new(3);
        for _ in 0..200 {
            let b = s.spinor(3.0);
            let rb = factor_rotation_boost(&b).unwrap();
            let br = factor_boost_rotation(&b).unwrap();
            assert!(rb.reconstruction_residual(&b) < 1e-10);
            assert!(br.reconstruction_residual(&b) < 1e-10);
            assert!(rb.rotation.distance(&br.rotation) < 1e-14);
            assert!(rb.boost.n0() >= 1.0 && br.boost.n0() >= 1.0);
        }
    }

    #[test]
    fn degenerate_norm() {
        // not a group element, only exercises the guard
        let b = SpinorElement::new_unchecked(C64::new(0.0, 1.0), CVec3::zero());
        assert!(matches!(factor_rotation_boost(&b), Err(Error::DegenerateNorm { .. })));
    }

    #[test]
    fn isotropic_real_k() {
        let b = SpinorElement::identity();
        let pair = factor_isotropic(&b, FactorOrder::RotationFirst).unwrap();
        assert_eq!(pair.boost_params(), (1.0, [0.0; 3]));

        let k = CVec3::from_parts([0.0, 0.5, 0.0], [0.0, 0.0, -0.5]);
        let b = SpinorElement::new(C64::new(1.0, 0.0), k).unwrap();
        for order in [FactorOrder::RotationFirst, FactorOrder::BoostFirst] {
            let pair = factor_isotropic(&b, order).unwrap();
            assert!((pair.boost.n0() - 1.25f64.sqrt()).abs() < 1e-15);
            assert!((pair.rotation.n0() - 1.0 / 1.25f64.sqrt()).abs() < 1e-15);
            assert!(pair.reconstruction_residual(&b) < 1e-14);
        }
        assert_eq!(
            factor_isotropic(&spinor_from_boost(0.3, &CVec3::basis(0)).unwrap(), FactorOrder::RotationFirst),
            Err(Error::NotIsotropicElement)
        );
    }

    #[test]
    fn scale_freedom_examples() {
        let k = CVec3::from_parts([1.0, 0.0, 0.0], [0.0, -1.0, 0.0]);
        let r = scale_freedom_report(&k, 1.0, 0.0).unwrap();
        assert_eq!(r.k_prime, k);
        assert!(r.max_residual() < 1e-15);

        let r = scale_freedom_report(&k, 2.0, 0.0).unwrap();
        assert!((dot3(&r.n_prime, &r.n_prime) - 4.0).abs() < 1e-14);
        assert!((r.b0_prime - 5f64.sqrt()).abs() < 1e-15);

        let r = scale_freedom_report(&k, 1.0, std::f64::consts::FRAC_PI_2).unwrap();
        let (n, m) = ([0.0, 1.0, 0.0], [1.0, 0.0, 0.0]);
        for i in 0..3 {
            assert!((r.n_prime[i] + m[i]).abs() < 1e-15);
            assert!((r.m_prime[i] - n[i]).abs() < 1e-15);
        }
        assert!(r.cross_residual < 1e-15);
        assert!(matches!(scale_freedom_report(&CVec3::basis(0), 1.0, 0.0), Err(Error::NotIsotropic { .. })));
    }
}
