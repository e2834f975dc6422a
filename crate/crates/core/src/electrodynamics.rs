//! First-order noncommutative constitutive relations.
//!
//! Complex variables are `f = E + i cB` and `h = (D + i H/c)/ε0`. With
//! `K = n + i m` the relations read
//!
//! ```text
//! h = (1 + f*·K*) f + ½ (f*·f*) K
//! f = (1 − h*·K*) h − ½ (h*·h*) K
//! ```
//!
//! and are mutually inverse only to first order in `K`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::group::{dot3, so3c_from_spinor, SpinorElement};
use crate::linalg::{CVec3, C64, I};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub c: f64,
    pub epsilon0: f64,
}

impl UnitSystem {
    pub fn new(c: f64, epsilon0: f64) -> Result<Self> {
        if !(c > 0.0 && epsilon0 > 0.0) || !c.is_finite() || !epsilon0.is_finite() {
            return Err(Error::InvalidUnits { c, epsilon0 });
        }
        Ok(Self { c, epsilon0 })
    }

    pub fn si() -> Self {
        Self { c: 299_792_458.0, epsilon0: 8.854_187_812_8e-12 }
    }

    /// `f = E + i cB`
    pub fn f(&self, e: &[f64; 3], b: &[f64; 3]) -> CVec3 {
        CVec3::from_parts(*e, b.map(|x| self.c * x))
    }

    /// `h = (D + i H/c)/ε0`
    pub fn h(&self, d: &[f64; 3], h: &[f64; 3]) -> CVec3 {
        CVec3::from_parts(d.map(|x| x / self.epsilon0), h.map(|x| x / (self.c * self.epsilon0)))
    }

    /// `(E, B)` from `f`.
    pub fn e_b(&self, f: &CVec3) -> ([f64; 3], [f64; 3]) {
        (f.re(), f.im().map(|x| x / self.c))
    }

    /// `(D, H)` from `h`.
    pub fn d_h(&self, h: &CVec3) -> ([f64; 3], [f64; 3]) {
        (h.re().map(|x| x * self.epsilon0), h.im().map(|x| x * self.c * self.epsilon0))
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self { c: 1.0, epsilon0: 1.0 }
    }
}

/// Real SI fields with their complex combinations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldState {
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub d: [f64; 3],
    pub h: [f64; 3],
    pub units: UnitSystem,
}

impl FieldState {
    /// Completes `(E, B)` with `(D, H)` from the forward relation.
    pub fn from_e_b(e: [f64; 3], b: [f64; 3], k: &CVec3, units: UnitSystem) -> Self {
        let (d, h) = constitutive_real_forward(&e, &b, k, &units);
        Self { e, b, d, h, units }
    }

    pub fn f(&self) -> CVec3 {
        self.units.f(&self.e, &self.b)
    }

    pub fn h_complex(&self) -> CVec3 {
        self.units.h(&self.d, &self.h)
    }
}

fn conj_dot(u: &CVec3, v: &CVec3) -> C64 {
    u.conj().dot(&v.conj())
}

pub fn constitutive_forward(f: &CVec3, k: &CVec3) -> CVec3 {
    let fk = conj_dot(f, k);
    let ff = conj_dot(f, f);
    f.scale(1.0 + fk) + k.scale(0.5 * ff)
}

pub fn constitutive_inverse(h: &CVec3, k: &CVec3) -> CVec3 {
    let hk = conj_dot(h, k);
    let hh = conj_dot(h, h);
    h.scale(1.0 - hk) - k.scale(0.5 * hh)
}

fn lin(terms: &[(f64, &[f64; 3])]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (s, v) in terms {
        for i in 0..3 {
            out[i] += s * v[i];
        }
    }
    out
}

/// `(D, H)` from `(E, B)` in real variables, `n = Re K`, `m = Im K`.
pub fn constitutive_real_forward(e: &[f64; 3], b: &[f64; 3], k: &CVec3, units: &UnitSystem) -> ([f64; 3], [f64; 3]) {
    let (n, m) = (k.re(), k.im());
    let cb = b.map(|x| units.c * x);
    let p = dot3(&n, e) - dot3(&m, &cb);
    let q = dot3(&m, e) + dot3(&n, &cb);
    let ecb = dot3(e, &cb);
    let half = 0.5 * (dot3(e, e) - dot3(&cb, &cb));

    let d = lin(&[(1.0 + p, e), (q, &cb), (ecb, &m), (half, &n)]);
    let hh = lin(&[(1.0 + p, &cb), (-q, e), (half, &m), (-ecb, &n)]);
    (d.map(|x| units.epsilon0 * x), hh.map(|x| units.c * units.epsilon0 * x))
}

/// `(E, B)` from `(D, H)` in real variables.
pub fn constitutive_real_inverse(d: &[f64; 3], h: &[f64; 3], k: &CVec3, units: &UnitSystem) -> ([f64; 3], [f64; 3]) {
    let (n, m) = (k.re(), k.im());
    let dd = d.map(|x| x / units.epsilon0);
    let hh = h.map(|x| x / (units.c * units.epsilon0));
    let p = dot3(&dd, &n) - dot3(&hh, &m);
    let q = dot3(&dd, &m) + dot3(&hh, &n);
    let dh = dot3(&dd, &hh);
    let half = 0.5 * (dot3(&dd, &dd) - dot3(&hh, &hh));

    let e = lin(&[(1.0 - p, &dd), (-q, &hh), (-half, &n), (-dh, &m)]);
    let cb = lin(&[(1.0 - p, &hh), (q, &dd), (-half, &m), (dh, &n)]);
    (e, cb.map(|x| x / units.c))
}

/// `‖f‖ (1 + ‖K‖‖f‖)`, floored away from zero.
pub fn residual_scale(f: &CVec3, k: &CVec3) -> f64 {
    let nf = f.norm();
    (nf * (1.0 + k.norm() * nf)).max(f64::MIN_POSITIVE)
}

/// `‖h(O f, O K) − O h(f, K)‖` relative to the size of the terms involved.
pub fn covariance_residual(b: &SpinorElement, f: &CVec3, k: &CVec3) -> f64 {
    let o = so3c_from_spinor(b);
    let (of, ok) = (o.apply(f), o.apply(k));
    let oh = o.apply(&constitutive_forward(f, k));
    let diff = constitutive_forward(&of, &ok) - oh;
    diff.norm() / covariance_scale(&o.matrix().max_abs(), f, k, &of, &ok)
}

/// As [`covariance_residual`] but keeping `K` unprimed on the left; for `b`
/// in the stabilizer of `K` this is again zero.
pub fn stabilized_covariance_residual(b: &SpinorElement, f: &CVec3, k: &CVec3) -> f64 {
    let o = so3c_from_spinor(b);
    let of = o.apply(f);
    let oh = o.apply(&constitutive_forward(f, k));
    let diff = constitutive_forward(&of, k) - oh;
    diff.norm() / covariance_scale(&o.matrix().max_abs(), f, k, &of, k)
}

fn covariance_scale(o_max: &f64, f: &CVec3, k: &CVec3, of: &CVec3, ok: &CVec3) -> f64 {
    residual_scale(of, ok).max(o_max * residual_scale(f, k))
}

/// `(f′, h′, K′)` under the dual rotation by `χ`.
pub fn dual_transform(f: &CVec3, h: &CVec3, k: &CVec3, chi: f64) -> (CVec3, CVec3, CVec3) {
    let (s, c) = chi.sin_cos();
    let hp = h.scale_re(c) + f.scale(I * s);
    let fp = h.scale(I * s) + f.scale_re(c);
    let kp = k.scale(C64::from_polar(1.0, chi));
    (fp, hp, kp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualResidual {
    pub chi: f64,
    /// Normalised by `‖f‖(1 + ‖K‖‖f‖)`.
    pub residual: f64,
    /// Checked as `f′ = f(h′, K′)` instead of `h′ = h(f′, K′)`.
    pub swapped: bool,
}

/// `χ` within `1e−9` of `π/2` or `3π/2` modulo `2π`.
pub fn is_swapping_angle(chi: f64) -> bool {
    let r = chi.rem_euclid(TAU);
    (r - FRAC_PI_2).abs() < 1e-9 || (r - 3.0 * FRAC_PI_2).abs() < 1e-9
}

/// `χ` within `1e−9` of a multiple of `π/2`.
pub fn is_discrete_angle(chi: f64) -> bool {
    let r = chi.rem_euclid(FRAC_PI_2);
    r < 1e-9 || FRAC_PI_2 - r < 1e-9
}

pub fn dual_invariance_residual(f: &CVec3, k: &CVec3, chi: f64) -> DualResidual {
    let h = constitutive_forward(f, k);
    let (fp, hp, kp) = dual_transform(f, &h, k, chi);
    let swapped = is_swapping_angle(chi);
    let diff = if swapped {
        constitutive_inverse(&hp, &kp) - fp
    } else {
        constitutive_forward(&fp, &kp) - hp
    };
    DualResidual { chi, residual: diff.norm() / residual_scale(f, k), swapped }
}

/// `χ_j = 2π j / steps`.
pub fn dual_scan(f: &CVec3, k: &CVec3, steps: usize) -> Vec<DualResidual> {
    (0..steps)
        .map(|j| {
            // exact multiples of π/2 when steps is divisible by 4
            let chi = if steps.is_multiple_of(4) && j.is_multiple_of(steps / 4) {
                (j / (steps / 4)) as f64 * FRAC_PI_2
            } else {
                TAU * j as f64 / steps as f64
            };
            dual_invariance_residual(f, k, chi)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualFrame {
    pub g: CVec3,
    pub r: CVec3,
}

impl DualFrame {
    /// `(h, f) = (G + R*, G − R*)`
    pub fn reconstruct(&self) -> (CVec3, CVec3) {
        (self.g + self.r.conj(), self.g - self.r.conj())
    }
}

pub fn gr_from_fields(f: &CVec3, h: &CVec3) -> DualFrame {
    DualFrame {
        g: (*h + *f).scale_re(0.5),
        r: (h.conj() - f.conj()).scale_re(0.5),
    }
}

/// Norms of the two relations obeyed by `(G, R)` when `h = h(f, K)`:
///
/// ```text
/// (G*·R) K + (G*·K*) R* + (R·K*) G = 0
/// 2 R* − (G*·K*) G − (R·K*) R* − ½ (G*·G* + R·R) K = 0
/// ```
pub fn gr_constraint_residual(frame: &DualFrame, k: &CVec3) -> (f64, f64) {
    let (g, r) = (frame.g, frame.r);
    let (gc, rc, kc) = (g.conj(), r.conj(), k.conj());
    let gk = gc.dot(&kc);
    let rk = r.dot(&kc);
    let r1 = k.scale(gc.dot(&r)) + rc.scale(gk) + g.scale(rk);
    let r2 = rc.scale_re(2.0) - g.scale(gk) - rc.scale(rk) - k.scale(0.5 * (gc.dot(&gc) + r.dot(&r)));
    (r1.norm(), r2.norm())
}

/// `e^{iχ}` for the four dual rotations that survive, `χ ∈ {0, π/2, π, 3π/2}`.
pub fn discrete_dual_angles() -> [f64; 4] {
    [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use crate::sampling::Sampler;

    fn close(a: &CVec3, b: &CVec3, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol
    }

    #[test]
    fn vacuum() {
        let f = CVec3::from_parts([1.0, -2.0, 0.5], [0.3, 0.0, 1.0]);
        assert_eq!(constitutive_forward(&f, &CVec3::zero()), f);
        assert_eq!(constitutive_inverse(&f, &CVec3::zero()), f);
        let u = UnitSystem::si();
        let (e, b) = ([1.0, 2.0, 3.0], [1e-8, 0.0, -2e-8]);
        let (d, h) = constitutive_real_forward(&e, &b, &CVec3::zero(), &u);
        for i in 0..3 {
            assert!((d[i] - u.epsilon0 * e[i]).abs() <= 1e-15 * d[i].abs().max(1e-30));
            assert!((h[i] - u.epsilon0 * u.c * u.c * b[i]).abs() <= 1e-15 * h[i].abs().max(1e-30));
        }
        let (e2, b2) = constitutive_real_inverse(&d, &h, &CVec3::zero(), &u);
        for i in 0..3 {
            assert!((e2[i] - e[i]).abs() < 1e-14);
            assert!((b2[i] - b[i]).abs() < 1e-22);
        }
    }

    #[test]
    fn real_k_and_real_e() {
        let (d, _) = constitutive_real_forward(&[1.0, 0.0, 0.0], &[0.0; 3], &CVec3::from_real([0.1, 0.0, 0.0]), &UnitSystem::default());
        assert!((d[0] - 1.15).abs() < 1e-15 && d[1] == 0.0 && d[2] == 0.0);
    }

    #[test]
    fn zero_e_forward() {
        let k = CVec3::from_parts([0.2, -0.1, 0.3], [0.05, 0.4, -0.2]);
        let cb = [0.7, -0.3, 0.2];
        let (d, _) = constitutive_real_forward(&[0.0; 3], &cb, &k, &UnitSystem::default());
        let n = k.re();
        let ncb = dot3(&n, &cb);
        let b2 = dot3(&cb, &cb);
        for i in 0..3 {
            assert!((d[i] - (ncb * cb[i] - 0.5 * b2 * n[i])).abs() < 1e-15);
        }
    }

    #[test]
    fn complex_matches_real_in_si() {
        let u = UnitSystem::si();
        let mut s = Sampler::new(11);
        for _ in 0..100 {
            let e = s.real3().map(|x| 1e3 * x);
            let b = s.real3().map(|x| 1e-5 * x);
            let k = s.complex3().scale_re(1e-4);
            let (d, h) = constitutive_real_forward(&e, &b, &k, &u);
            let want = constitutive_forward(&u.f(&e, &b), &k);
            assert!((u.h(&d, &h) - want).norm() <= 1e-12 * want.norm());

            let (e2, b2) = constitutive_real_inverse(&d, &h, &k, &u);
            let want = constitutive_inverse(&u.h(&d, &h), &k);
            assert!((u.f(&e2, &b2) - want).norm() <= 1e-12 * want.norm());
        }
    }

    #[test]
    fn roundtrip_is_second_order() {
        let f = CVec3::from_real([1.0, 0.0, 0.0]);
        let k = CVec3::from_parts([1e-4, 0.0, 0.0], [0.0, 0.0, 0.0]);
        let back = constitutive_inverse(&constitutive_forward(&f, &k), &k);
        assert!((back - f).norm() < 1e-6);
    }

    #[test]
    fn identity_is_covariant() {
        let f = CVec3::from_parts([1.0, 0.2, 0.0], [0.0, 0.5, 0.1]);
        let k = CVec3::from_parts([0.1, 0.0, 0.3], [0.0, 0.2, 0.0]);
        assert_eq!(covariance_residual(&SpinorElement::identity(), &f, &k), 0.0);
    }

    #[test]
    fn dual_examples() {
        let f = CVec3::from_parts([1.0, 0.2, 0.0], [0.0, 0.5, 0.1]);
        let h = CVec3::from_parts([0.4, 0.0, 1.0], [0.2, 0.0, -0.1]);
        let k = CVec3::from_parts([0.1, 0.0, 0.3], [0.0, 0.2, 0.0]);
        assert_eq!(dual_transform(&f, &h, &k, 0.0), (f, h, k));
        let (fp, hp, kp) = dual_transform(&f, &h, &k, PI);
        assert!(close(&fp, &-f, 1e-15) && close(&hp, &-h, 1e-15) && close(&kp, &-k, 1e-15));
        let (fp, hp, kp) = dual_transform(&f, &h, &k, FRAC_PI_2);
        assert!(close(&hp, &f.scale(I), 1e-15) && close(&fp, &h.scale(I), 1e-15) && close(&kp, &k.scale(I), 1e-15));
    }

    #[test]
    fn dual_residual_examples() {
        let f = CVec3::from_real([1.0, 0.0, 0.0]);
        let k = CVec3::from_real([0.1, 0.0, 0.0]);
        assert!(dual_invariance_residual(&f, &k, PI / 4.0).residual > 1e-3);
        for chi in discrete_dual_angles() {
            let r = dual_invariance_residual(&f, &k, chi);
            assert!(r.residual < 1e-15, "{chi}");
            assert_eq!(r.swapped, is_swapping_angle(chi));
        }
        for chi in [0.3, 1.0, 2.5, 4.0] {
            assert!(dual_invariance_residual(&f, &CVec3::zero(), chi).residual < 1e-15);
        }
    }

    #[test]
    fn dual_scan_exact_points() {
        let f = CVec3::from_parts([1.0, 0.2, 0.0], [0.0, 0.5, 0.1]);
        let k = CVec3::from_parts([0.05, 0.0, 0.03], [0.0, 0.02, 0.0]);
        let scan = dual_scan(&f, &k, 32);
        assert_eq!(scan.len(), 32);
        let small = scan.iter().filter(|r| r.residual < 1e-10).count();
        assert_eq!(small, 4);
        assert_eq!(scan[8].chi, FRAC_PI_2);
    }

    #[test]
    fn gr_examples() {
        let f = CVec3::from_parts([1.0, 0.2, 0.0], [0.0, 0.5, 0.1]);
        let frame = gr_from_fields(&f, &f);
        assert_eq!(frame.r, CVec3::zero());
        assert_eq!(gr_constraint_residual(&frame, &CVec3::zero()), (0.0, 0.0));

        let h = CVec3::from_parts([0.4, 0.0, 1.0], [0.2, 0.0, -0.1]);
        let frame = gr_from_fields(&CVec3::zero(), &h);
        assert!(close(&frame.g, &h.scale_re(0.5), 0.0));
        assert!(close(&frame.r, &h.conj().scale_re(0.5), 0.0));

        let frame = gr_from_fields(&f, &h);
        let (h2, f2) = frame.reconstruct();
        assert!(close(&h2, &h, 1e-15) && close(&f2, &f, 1e-15));
    }

    #[test]
    fn gr_consistent_and_inconsistent() {
        let f = CVec3::from_parts([0.6, 0.0, 0.8], [0.0, 0.0, 0.0]);
        let k = CVec3::from_parts([1e-4, 0.0, 0.0], [0.0, 0.0, 0.0]);
        let frame = gr_from_fields(&f, &constitutive_forward(&f, &k));
        let (r1, r2) = gr_constraint_residual(&frame, &k);
        assert!(r1 < 1e-7 && r2 < 1e-7);

        let frame = DualFrame {
            g: CVec3::new(C64::new(1.0, 0.3), ZERO, C64::new(0.0, 0.8)),
            r: CVec3::new(ZERO, C64::new(0.9, -0.2), ONE_HALF),
        };
        let (_, r2) = gr_constraint_residual(&frame, &CVec3::from_real([0.5, 0.7, -0.4]));
        assert!(r2 > 0.1);
    }

    const ONE_HALF: C64 = C64::new(0.5, 0.0);

    #[test]
    fn invalid_units() {
        assert!(UnitSystem::new(0.0, 1.0).is_err());
        assert!(UnitSystem::new(1.0, -1.0).is_err());
        assert_eq!(UnitSystem::new(2.0, 3.0).unwrap(), UnitSystem { c: 2.0, epsilon0: 3.0 });
    }
}
