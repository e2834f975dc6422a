use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use ncframe_core::electrodynamics::{
    constitutive_forward, constitutive_inverse, constitutive_real_forward, constitutive_real_inverse,
    dual_invariance_residual, dual_scan, is_discrete_angle, UnitSystem,
};
use ncframe_core::factorization::{
    factor_boost_rotation, factor_isotropic_with_eps, factor_rotation_boost, is_isotropic_element, FactorOrder,
    RotationBoostPair,
};
use ncframe_core::group::{lorentz4_from_spinor, SpinorElement};
use ncframe_core::linalg::{CVec3, C64, ETA};
use ncframe_core::sampling::Sampler;
use ncframe_core::stabilizer::{
    classify_with_eps, isotropic_stabilizer_element_with_eps, reduce_to_real, stabilizer_element, NCParameter,
    OrbitClass, ReductionTarget, StabilizerElement,
};
use serde_json::{json, Value};

use crate::input::Input;
use crate::output::{c, cmat, cvec, finite, rmat4, Report};
use crate::{CliError, Settings};

/// Determinant tolerance for `factor` input.
pub const FACTOR_DET_TOL: f64 = 1e-8;

fn invariants(p: &NCParameter) -> Value {
    json!({"I1": p.i1, "I2": p.i2, "I": p.i, "mu": p.mu})
}

fn classified(input: &Input, s: &Settings) -> Result<NCParameter, CliError> {
    let (_, k) = input.theta()?;
    Ok(classify_with_eps(&k, s.eps_iso))
}

fn describe(r: &mut Report, p: &NCParameter) {
    r.set("K", cvec(&p.k));
    r.set("theta", rmat4(&p.theta));
    r.set("invariants", invariants(p));
    r.set("class", json!(p.class.as_str()));
    r.set("subcase", json!(p.subcase.as_str()));
}

pub fn classify(input: &Input, s: &Settings) -> Result<Report, CliError> {
    let p = classified(input, s)?;
    let mut r = Report::new("classify");
    describe(&mut r, &p);
    if let Ok((scalar, delta)) = p.unit_delta() {
        r.set("K_scalar", c(scalar));
        r.set("delta", cvec(&delta));
    }
    let sq = p.k.dot(&p.k);
    r.check("invariants_vs_K_dot_K", (C64::new(p.i1, p.i2) - sq).norm() / p.k.norm_sqr().max(1.0), s.tol);
    Ok(r)
}

fn element_json(el: &StabilizerElement, param: C64, k: &CVec3) -> (Value, [f64; 3]) {
    let o = el.rotation.matrix();
    let l = lorentz4_from_spinor(&el.spinor);
    let lm = *l.matrix();
    let fix = el.fixing_residual(k);
    let orth = el.rotation.orthogonality_residual() / o.max_abs().powi(2).max(1.0);
    let lor = (lm.transpose() * ETA * lm - ETA).max_abs() / lm.max_abs().powi(2).max(1.0);
    let v = json!({
        "parameter": c(param),
        "spinor": {"k0": c(el.spinor.k0()), "k": cvec(&el.spinor.k())},
        "so3c": cmat(o),
        "lorentz": rmat4(&lm),
        "fixing_residual": fix,
        "orthogonality_residual": orth,
        "lorentz_residual": lor,
    });
    (v, [fix, orth, lor])
}

pub fn stabilizer(input: &Input, s: &Settings) -> Result<Report, CliError> {
    let p = classified(input, s)?;
    if p.class == OrbitClass::Commutative {
        return Err(CliError::new(4, "K = 0: every Lorentz transformation preserves θ"));
    }
    let count = input.count("count", 1)?;
    let given = match p.class {
        OrbitClass::Isotropic => match input.complex("z")? {
            Some(z) => Some(z),
            None => input.complex("gamma")?,
        },
        _ => input.complex("gamma")?,
    };
    let mut sampler = Sampler::new(s.seed);
    let mut r = Report::new("stabilizer");
    describe(&mut r, &p);

    let delta = p.unit_delta().ok().map(|(_, d)| d);
    if let Some(d) = &delta {
        r.set("delta", cvec(d));
    }
    let mut elements = Vec::with_capacity(count);
    let mut worst = [0.0f64; 3];
    for j in 0..count {
        let param = match given {
            Some(g) => g * (j + 1) as f64,
            None => C64::new(sampler.uniform(-PI, PI), sampler.uniform(-1.0, 1.0)),
        };
        let el = match &delta {
            Some(d) => stabilizer_element(param, d),
            None => isotropic_stabilizer_element_with_eps(param, &p.k, s.eps_iso),
        }
        .map_err(|e| CliError::new(1, e.to_string()))?;
        let (v, res) = element_json(&el, param, &p.k);
        for i in 0..3 {
            worst[i] = worst[i].max(res[i]);
        }
        elements.push(v);
    }
    r.set("family", json!(if delta.is_some() { "gamma_delta" } else { "isotropic" }));
    r.set("count", json!(count));
    r.set("elements", Value::Array(elements));
    r.check("max_fixing_residual", worst[0], s.tol);
    r.check("max_orthogonality_residual", worst[1], s.tol);
    r.check("max_lorentz_residual", worst[2], s.tol);
    Ok(r)
}

pub fn reduce(input: &Input, s: &Settings) -> Result<Report, CliError> {
    let p = classified(input, s)?;
    if p.class != OrbitClass::NonIsotropic {
        return Err(CliError::new(5, format!("reduce needs a non-isotropic K, got {}", p.class.as_str())));
    }
    let (scalar, delta) = p.unit_delta().map_err(|e| CliError::new(5, e.to_string()))?;
    let target = match input.vec3("target")? {
        Some(e) => ReductionTarget::Vector(e),
        None => ReductionTarget::Auto,
    };
    let sm = reduce_to_real(&delta, target).map_err(|e| match e {
        ncframe_core::Error::NonUnitAxis { .. } => CliError::malformed(format!("\"target\": {e}")),
        other => CliError::new(1, other.to_string()),
    })?;
    let e = sm.apply(&delta).re();
    let k_canon = CVec3::from_real(e).scale(scalar);
    let q = classify_with_eps(&k_canon, s.eps_iso);

    let mut r = Report::new("reduce");
    describe(&mut r, &p);
    r.set("K_scalar", c(scalar));
    r.set("delta", cvec(&delta));
    r.set("S", cmat(sm.matrix()));
    r.set("e", json!(e));
    r.set("K_canonical", cvec(&k_canon));
    r.set("canonical_invariants", invariants(&q));

    let scale = sm.matrix().max_abs().powi(2).max(1.0);
    r.check("orthogonality", sm.orthogonality_residual() / scale, s.tol);
    r.check("det_minus_one", (sm.matrix().det() - 1.0).norm() / scale.powf(1.5), s.tol);
    r.check("S_K_minus_K_canonical", (sm.apply(&p.k) - k_canon).norm() / (p.k.norm() * scale), s.tol);
    r.check("invariant_I1_change", (q.i1 - p.i1).abs() / p.i, s.tol);
    r.check("invariant_I2_change", (q.i2 - p.i2).abs() / p.i, s.tol);
    Ok(r)
}

fn pair_json(pair: &RotationBoostPair, b: &SpinorElement) -> (Value, [f64; 3]) {
    let (a0, a) = pair.rotation_params();
    let (b0, bv) = pair.boost_params();
    let recon = pair.reconstruction_residual(b) / (1.0 + b.k().norm());
    let rot_norm = (a0 * a0 + a.iter().map(|x| x * x).sum::<f64>() - 1.0).abs();
    let boost_norm = (b0 * b0 - bv.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() / (b0 * b0);
    let v = json!({
        "order": pair.order.as_str(),
        "rotation": {"a0": a0, "a": a},
        "boost": {"b0": b0, "b": bv, "velocity": bv.map(|x| x / b0)},
        "sign": pair.sign,
        "reconstruction_residual": recon,
    });
    (v, [recon, rot_norm, boost_norm])
}

pub fn factor(input: &Input, s: &Settings) -> Result<Report, CliError> {
    let v = input
        .numbers("spinor", 8)?
        .ok_or_else(|| CliError::malformed("missing \"spinor\" = [n0, m0, n1, n2, n3, m1, m2, m3]"))?;
    let (n0, m0) = (v[0], v[1]);
    let (n, m) = ([v[2], v[3], v[4]], [v[5], v[6], v[7]]);
    let k0 = C64::new(n0, m0);
    let k = CVec3::from_parts(m, n.map(|x| -x));
    let det = k0 * k0 - k.dot(&k);
    let det_residual = (det - 1.0).norm() / (k0.norm_sqr() + k.norm_sqr()).max(1.0);
    if det_residual > FACTOR_DET_TOL {
        return Err(CliError::new(6, format!("n0² + n² − m0² − m² = 1, n0 m0 + n·m = 0 violated (residual {det_residual:e})")));
    }
    let b = SpinorElement::project_to_group(k0, k).map_err(|e| CliError::new(6, e.to_string()))?;
    let isotropic = is_isotropic_element(&b, s.eps_iso) && b.k().norm() > 0.0;
    let pairs = if isotropic {
        [FactorOrder::RotationFirst, FactorOrder::BoostFirst].map(|o| factor_isotropic_with_eps(&b, o, s.eps_iso))
    } else {
        [factor_rotation_boost(&b), factor_boost_rotation(&b)]
    };
    let [rb, br] = pairs;
    let (rb, br) = (rb.map_err(|e| CliError::new(6, e.to_string()))?, br.map_err(|e| CliError::new(6, e.to_string()))?);

    let mut r = Report::new("factor");
    r.set(
        "element",
        json!({"n0": b.n0(), "m0": b.m0(), "n": b.n(), "m": b.m(), "k0": c(b.k0()), "k": cvec(&b.k())}),
    );
    r.set("det_residual", json!(det_residual));
    r.set("isotropic", json!(isotropic));
    let mut list = Vec::new();
    let mut worst = [0.0f64; 3];
    for pair in [&rb, &br] {
        let (v, res) = pair_json(pair, &b);
        for i in 0..3 {
            worst[i] = worst[i].max(res[i]);
        }
        list.push(v);
    }
    r.set("factorizations", Value::Array(list));
    let rot_diff = rb.rotation.distance(&br.rotation);
    r.set("rotation_factor_difference", json!(rot_diff));
    if isotropic {
        let nn: f64 = b.n().iter().map(|x| x * x).sum();
        r.check("isotropic_b0", (rb.boost.n0() - (1.0 + nn).sqrt()).abs(), s.tol);
    }
    r.check("max_reconstruction_residual", worst[0], s.tol);
    r.check("rotation_normalisation", worst[1], s.tol);
    r.check("boost_normalisation", worst[2], s.tol);
    r.check("rotation_factors_agree", rot_diff, s.tol);
    Ok(r)
}

fn fields(input: &Input, s: &Settings) -> Result<([f64; 3], [f64; 3], CVec3, UnitSystem), CliError> {
    let e = input.require_vec3("E")?;
    let b = input.require_vec3("B")?;
    let (_, k) = input.theta()?;
    let units = UnitSystem::new(s.c, s.epsilon0).map_err(|e| CliError::malformed(e.to_string()))?;
    Ok((e, b, k, units))
}

fn rel(a: &CVec3, b: &CVec3) -> f64 {
    (*a - *b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

pub fn constitutive(input: &Input, s: &Settings) -> Result<Report, CliError> {
    let (e, b, k, units) = fields(input, s)?;
    let chis = input.real_list("chi")?.unwrap_or_else(|| vec![FRAC_PI_2, FRAC_PI_4]);

    let (d, h) = constitutive_real_forward(&e, &b, &k, &units);
    let f = units.f(&e, &b);
    let hc = constitutive_forward(&f, &k);
    let (e_back, b_back) = constitutive_real_inverse(&d, &h, &k, &units);
    let f_back = constitutive_inverse(&hc, &k);

    let mut r = Report::new("constitutive");
    r.set("units", json!({"c": units.c, "epsilon0": units.epsilon0}));
    r.set("K", cvec(&k));
    r.set("E", json!(e));
    r.set("B", json!(b));
    r.set("D", json!(d));
    r.set("H", json!(h));
    r.set("f", cvec(&f));
    r.set("h", cvec(&hc));
    r.set("roundtrip", json!({"E": e_back, "B": b_back, "residual": rel(&f_back, &f)}));
    let dual: Vec<Value> = chis
        .iter()
        .map(|&chi| {
            let d = dual_invariance_residual(&f, &k, chi);
            json!({"chi": chi, "residual": finite(d.residual), "swapped": d.swapped, "invariant": d.residual <= s.tol})
        })
        .collect();
    r.set("dual_checks", Value::Array(dual));

    r.check("real_vs_complex_forward", rel(&units.h(&d, &h), &hc), s.tol);
    r.check("real_vs_complex_inverse", rel(&units.f(&e_back, &b_back), &f_back), s.tol);
    Ok(r)
}

pub fn dual_scan_cmd(input: &Input, s: &Settings) -> Result<Report, CliError> {
    let (e, b, k, units) = fields(input, s)?;
    let steps = input.count("steps", 32)?;
    if steps < 4 {
        return Err(CliError::malformed(format!("\"steps\" must be at least 4, got {steps}")));
    }
    let f = units.f(&e, &b);
    let table = dual_scan(&f, &k, steps);

    let mut r = Report::new("dual-scan");
    r.set("units", json!({"c": units.c, "epsilon0": units.epsilon0}));
    r.set("K", cvec(&k));
    r.set("f", cvec(&f));
    r.set("steps", json!(steps));
    let rows: Vec<Value> = table
        .iter()
        .map(|d| {
            json!({
                "chi": d.chi,
                "residual": finite(d.residual),
                "swapped": d.swapped,
                "discrete": is_discrete_angle(d.chi),
                "near_zero": d.residual <= s.tol,
            })
        })
        .collect();
    r.set("table", Value::Array(rows));
    r.set("near_zero_count", json!(table.iter().filter(|d| d.residual <= s.tol).count()));
    let discrete_worst = table
        .iter()
        .filter(|d| is_discrete_angle(d.chi))
        .map(|d| d.residual)
        .fold(0.0, f64::max);
    r.check("max_residual_at_discrete_angles", discrete_worst, s.tol);
    Ok(r)
}
