use proptest::prelude::*;

use ncframe_core::electrodynamics::{covariance_residual, dual_transform, stabilized_covariance_residual};
use ncframe_core::factorization::{
    factor_boost_rotation, factor_isotropic, factor_rotation_boost, scale_freedom_report, FactorOrder,
};
use ncframe_core::group::{lorentz4_from_spinor, so3c_from_spinor, SpinorElement};
use ncframe_core::linalg::{CVec3, RMat4, C64, ETA, ONE};
use ncframe_core::stabilizer::{
    canonical_frame, classify, isotropic_stabilizer_element, k_to_theta, reduce_to_real, stabilizer_element,
    theta_to_k, unit_delta, OrbitClass, ReductionTarget,
};

fn unit() -> impl Strategy<Value = f64> {
    -1.0f64..1.0
}

fn complex() -> impl Strategy<Value = C64> {
    (unit(), unit()).prop_map(|(a, b)| C64::new(a, b))
}

fn cvec() -> impl Strategy<Value = CVec3> {
    (complex(), complex(), complex()).prop_map(|(a, b, c)| CVec3::new(a, b, c))
}

fn spinor() -> impl Strategy<Value = SpinorElement> {
    (complex(), cvec()).prop_filter_map("degenerate", |(k0, k)| SpinorElement::project_to_group(k0, k).ok())
}

fn non_isotropic() -> impl Strategy<Value = CVec3> {
    cvec().prop_filter("near cone", |k| k.dot(k).norm() >= 0.05 * k.norm_sqr())
}

fn isotropic() -> impl Strategy<Value = CVec3> {
    ([unit(), unit(), unit()], [unit(), unit(), unit()]).prop_filter_map("parallel", |(a, b)| {
        let n = CVec3::from_real(a);
        let c = n.cross(&CVec3::from_real(b));
        let (ln, lc) = (n.norm(), c.norm());
        (ln > 0.1 && lc > 0.1).then(|| CVec3::from_real(c.re().map(|x| x / lc * ln)) - n.scale(C64::new(0.0, 1.0)))
    })
}

fn gamma() -> impl Strategy<Value = C64> {
    (-6.0f64..6.0, -2.0f64..2.0).prop_map(|(a, b)| C64::new(a, b))
}

fn theta() -> impl Strategy<Value = RMat4> {
    proptest::array::uniform6(unit()).prop_map(|v| {
        let mut t = RMat4::zero();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (x, (i, j)) in v.iter().zip(pairs) {
            t.0[i][j] = *x;
            t.0[j][i] = -x;
        }
        t
    })
}

fn rel(a: f64, scale: f64) -> f64 {
    a / scale.max(1.0)
}

proptest! {
    #[test]
    fn homomorphism(b1 in spinor(), b2 in spinor()) {
        let o12 = so3c_from_spinor(&b1.compose(&b2));
        let prod = *so3c_from_spinor(&b1).matrix() * *so3c_from_spinor(&b2).matrix();
        prop_assert!(rel((*o12.matrix() - prod).max_abs(), prod.max_abs()) < 1e-9);

        let l12 = lorentz4_from_spinor(&b1.compose(&b2));
        let lprod = *lorentz4_from_spinor(&b1).matrix() * *lorentz4_from_spinor(&b2).matrix();
        prop_assert!(rel((*l12.matrix() - lprod).max_abs(), lprod.max_abs()) < 1e-9);
    }

    #[test]
    fn images_are_group_elements(b in spinor()) {
        let o = so3c_from_spinor(&b);
        prop_assert!(rel(o.orthogonality_residual(), o.matrix().max_abs().powi(2)) < 1e-10);
        prop_assert!((o.matrix().det() - ONE).norm() < 1e-9 * o.matrix().max_abs().powi(3).max(1.0));
        let l = lorentz4_from_spinor(&b);
        let m = *l.matrix();
        let r = (m.transpose() * ETA * m - ETA).max_abs();
        prop_assert!(rel(r, m.max_abs().powi(2)) < 1e-10);
        prop_assert!(m.0[0][0] >= 1.0);
    }

    #[test]
    fn theta_covariance(b in spinor(), t in theta()) {
        let l = *lorentz4_from_spinor(&b).matrix();
        let tp = l * t * l.transpose();
        let lhs = theta_to_k(&tp).unwrap();
        let rhs = so3c_from_spinor(&b).apply(&theta_to_k(&t).unwrap());
        prop_assert!(rel((lhs - rhs).max_abs(), tp.max_abs()) < 1e-9);
    }

    #[test]
    fn theta_roundtrip(k in cvec()) {
        prop_assert_eq!(theta_to_k(&k_to_theta(&k)).unwrap(), k);
    }

    #[test]
    fn invariants_match_square(k in cvec()) {
        let p = classify(&k);
        let sq = k.dot(&k);
        prop_assert!((C64::new(p.i1, p.i2) - sq).norm() <= 1e-10 * k.norm_sqr().max(1e-300));
        prop_assert!((0.0..std::f64::consts::PI).contains(&p.mu));
    }

    #[test]
    fn stabilizer_fixes_k(k in non_isotropic(), g1 in gamma(), g2 in gamma()) {
        let (_, delta) = unit_delta(&k).unwrap();
        let e1 = stabilizer_element(g1, &delta).unwrap();
        let e2 = stabilizer_element(g2, &delta).unwrap();
        prop_assert!(e1.fixing_residual(&k) < 1e-9);
        let (a, b) = (*e1.rotation.matrix(), *e2.rotation.matrix());
        let scale = a.max_abs() * b.max_abs();
        prop_assert!(rel((a * b - b * a).max_abs(), scale) < 1e-9);
        let sum = *stabilizer_element(g1 + g2, &delta).unwrap().rotation.matrix();
        prop_assert!(rel((a * b - sum).max_abs(), scale) < 1e-9);
    }

    #[test]
    fn isotropic_stabilizer(k in isotropic(), z1 in complex(), z2 in complex()) {
        prop_assert_eq!(classify(&k).class, OrbitClass::Isotropic);
        let e1 = isotropic_stabilizer_element(z1, &k).unwrap();
        let e2 = isotropic_stabilizer_element(z2, &k).unwrap();
        prop_assert!(e1.fixing_residual(&k) < 1e-9);
        let sum = *isotropic_stabilizer_element(z1 + z2, &k).unwrap().rotation.matrix();
        let prod = *e1.rotation.matrix() * *e2.rotation.matrix();
        prop_assert!(rel((prod - sum).max_abs(), prod.max_abs()) < 1e-9);
    }

    #[test]
    fn reduction(k in non_isotropic(), target in [unit(), unit(), unit()]) {
        let (_, delta) = unit_delta(&k).unwrap();
        let len = target.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(len > 0.1);
        let e = target.map(|x| x / len);
        let s = reduce_to_real(&delta, ReductionTarget::Vector(e)).unwrap();
        let scale = s.matrix().max_abs().powi(2);
        prop_assert!(rel(s.orthogonality_residual(), scale) < 1e-9);
        prop_assert!(rel((s.apply(&delta) - CVec3::from_real(e)).norm(), scale) < 1e-9);

        let f = canonical_frame(&k).unwrap();
        let (p, q) = (classify(&k), classify(&f.k_canon));
        prop_assert!((p.i1 - q.i1).abs() <= 1e-9 * p.i);
        prop_assert!((p.i2 - q.i2).abs() <= 1e-9 * p.i);
    }

    #[test]
    fn factorizations(b in spinor()) {
        let rb = factor_rotation_boost(&b).unwrap();
        let br = factor_boost_rotation(&b).unwrap();
        let scale = 1.0 + b.k().norm();
        prop_assert!(rb.reconstruction_residual(&b) < 1e-10 * scale);
        prop_assert!(br.reconstruction_residual(&b) < 1e-10 * scale);
        prop_assert!(rb.rotation.distance(&br.rotation) < 1e-12);
        for p in [rb, br] {
            let (a0, a) = p.rotation_params();
            let (b0, bv) = p.boost_params();
            prop_assert!(a0 >= 0.0);
            prop_assert!((a0 * a0 + a.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(b0 >= 1.0);
            prop_assert!((b0 * b0 - bv.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-10 * b0 * b0);
        }
        // the two boost vectors differ only by the sign of the m×n term
        let (_, v1) = rb.boost_params();
        let (_, v2) = br.boost_params();
        let (s1, s2) = (rb.boost.n0(), br.boost.n0());
        let m = b.m();
        let d = b.n0().powi(2) + b.n().iter().map(|x| x * x).sum::<f64>();
        for i in 0..3 {
            let sym = 0.5 * (v1[i] / s1 + v2[i] / s2);
            prop_assert!((sym - (b.n0() * m[i] - b.m0() * b.n()[i]) / d).abs() < 1e-10 * scale);
        }
    }

    #[test]
    fn isotropic_factorization(k in isotropic(), sign in prop::bool::ANY) {
        let s = if sign { 1.0 } else { -1.0 };
        let b = SpinorElement::new(C64::new(s, 0.0), k).unwrap();
        let nn: f64 = b.n().iter().map(|x| x * x).sum();
        for order in [FactorOrder::RotationFirst, FactorOrder::BoostFirst] {
            let p = factor_isotropic(&b, order).unwrap();
            prop_assert!((p.boost.n0() - (1.0 + nn).sqrt()).abs() < 1e-10);
            prop_assert!((p.rotation.n0() - 1.0 / (1.0 + nn).sqrt()).abs() < 1e-10);
            prop_assert!(p.reconstruction_residual(&b) < 1e-10);
        }
    }

    #[test]
    fn sigma_rotation_keeps_stabilizer(k in isotropic(), lambda in 0.2f64..3.0, sigma in 0.0f64..6.3, z in complex()) {
        let r = scale_freedom_report(&k, lambda, sigma).unwrap();
        prop_assert!(r.max_residual() < 1e-10 * lambda.powi(2).max(1.0) * (1.0 + k.norm_sqr()));
        let el = isotropic_stabilizer_element(z, &r.k_prime).unwrap();
        prop_assert!(el.fixing_residual(&r.k_prime) < 1e-9);
    }

    #[test]
    fn constitutive_covariance(b in spinor(), f in cvec(), k in cvec()) {
        prop_assert!(covariance_residual(&b, &f, &k) < 1e-9);
    }

    #[test]
    fn stabilized_covariance(k in non_isotropic(), g in gamma(), f in cvec()) {
        let (_, delta) = unit_delta(&k).unwrap();
        let el = stabilizer_element(g, &delta).unwrap();
        prop_assert!(stabilized_covariance_residual(&el.spinor, &f, &k) < 1e-9);
    }

    #[test]
    fn discrete_duals_form_z4(f in cvec(), h in cvec(), k in cvec(), a in 0usize..4, b in 0usize..4) {
        let q = std::f64::consts::FRAC_PI_2;
        let (f1, h1, k1) = dual_transform(&f, &h, &k, a as f64 * q);
        let (f2, h2, k2) = dual_transform(&f1, &h1, &k1, b as f64 * q);
        let (f3, h3, k3) = dual_transform(&f, &h, &k, ((a + b) % 4) as f64 * q);
        prop_assert!((f2 - f3).max_abs() < 1e-14);
        prop_assert!((h2 - h3).max_abs() < 1e-14);
        prop_assert!((k2 - k3).max_abs() < 1e-14);
    }
}
