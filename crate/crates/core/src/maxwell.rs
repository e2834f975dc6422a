//! Finite-difference check that the real source-free Maxwell system, its
//! complex form in `(D/ε0 + icB, E + iH/(cε0))` and its `(G, R)` form are the
//! same equations.
//!
//! Derivatives are second-order central differences on a periodic cube; time
//! derivatives are with respect to `x0 = ct`.

use crate::electrodynamics::{gr_from_fields, UnitSystem};
use crate::linalg::{CVec3, C64, I};

/// Real fields `(E, B, D, H)` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RealFields {
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub d: [f64; 3],
    pub h: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellGrid {
    /// Points per side.
    pub n: usize,
    /// Side length of the periodic cube.
    pub length: f64,
    /// Evaluation time.
    pub t: f64,
    /// Time step of the central difference.
    pub dt: f64,
}

impl Default for MaxwellGrid {
    fn default() -> Self {
        Self { n: 16, length: std::f64::consts::TAU, t: 0.3, dt: 1e-3 }
    }
}

/// Largest pointwise discrepancies over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MaxwellReport {
    /// `div B`, `rot E + ∂0 cB`, `div D/ε0`, `rot H/(cε0) − ∂0 D/ε0`.
    pub real_residual: f64,
    /// `div X`, `−i ∂0 X + rot Y` with `X = D/ε0 + icB`, `Y = E + iH/(cε0)`.
    pub complex_residual: f64,
    /// `div (G + R)`, `−i ∂0 (G + R) + rot (G − R)`.
    pub gr_residual: f64,
    /// Complex residual minus (real parts combined as `a + ib`).
    pub real_vs_complex: f64,
    /// `(G, R)` residual minus complex residual.
    pub complex_vs_gr: f64,
}

type Field = Vec<CVec3>;

struct Stencil {
    n: usize,
    dx: f64,
}

impl Stencil {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i % self.n) * self.n * self.n + (j % self.n) * self.n + k % self.n
    }

    /// `∂_axis` of component `comp` at `(i, j, k)`.
    fn partial(&self, f: &Field, comp: usize, axis: usize, p: [usize; 3]) -> C64 {
        let mut fw = p;
        let mut bw = p;
        fw[axis] += 1;
        bw[axis] += self.n - 1;
        (f[self.idx(fw[0], fw[1], fw[2])][comp] - f[self.idx(bw[0], bw[1], bw[2])][comp]) / (2.0 * self.dx)
    }

    fn div(&self, f: &Field, p: [usize; 3]) -> C64 {
        (0..3).map(|a| self.partial(f, a, a, p)).sum()
    }

    fn rot(&self, f: &Field, p: [usize; 3]) -> CVec3 {
        CVec3::new(
            self.partial(f, 2, 1, p) - self.partial(f, 1, 2, p),
            self.partial(f, 0, 2, p) - self.partial(f, 2, 0, p),
            self.partial(f, 1, 0, p) - self.partial(f, 0, 1, p),
        )
    }
}

/// Samples `field(x, t)` on the grid at `t − dt`, `t`, `t + dt` and compares
/// the three forms of the equations pointwise.
pub fn maxwell_variable_check<F>(field: F, grid: &MaxwellGrid, units: &UnitSystem) -> MaxwellReport
where
    F: Fn([f64; 3], f64) -> RealFields,
{
    let n = grid.n;
    let st = Stencil { n, dx: grid.length / n as f64 };
    let sample = |t: f64| -> Vec<RealFields> {
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push(field([i, j, k].map(|a| a as f64 * st.dx), t));
                }
            }
        }
        out
    };
    let before = sample(grid.t - grid.dt);
    let now = sample(grid.t);
    let after = sample(grid.t + grid.dt);
    let dx0 = 2.0 * units.c * grid.dt;

    let c = units.c;
    let e0 = units.epsilon0;
    let real = |v: &[f64; 3], s: f64| CVec3::from_real(v.map(|x| s * x));
    // each real field as a (real) complex array so the same stencil applies
    let map = |src: &[RealFields], g: &dyn Fn(&RealFields) -> CVec3| -> Field { src.iter().map(g).collect() };
    let e = map(&now, &|r| real(&r.e, 1.0));
    let cb = map(&now, &|r| real(&r.b, c));
    let d = map(&now, &|r| real(&r.d, 1.0 / e0));
    let hh = map(&now, &|r| real(&r.h, 1.0 / (c * e0)));
    let x = |r: &RealFields| CVec3::from_parts(r.d.map(|v| v / e0), r.b.map(|v| c * v));
    let y = |r: &RealFields| CVec3::from_parts(r.e, r.h.map(|v| v / (c * e0)));
    let xf = map(&now, &x);
    let yf = map(&now, &y);
    let gr = |r: &RealFields| gr_from_fields(&units.f(&r.e, &r.b), &units.h(&r.d, &r.h));
    let g_plus_r = |r: &RealFields| {
        let fr = gr(r);
        fr.g + fr.r
    };
    let g_minus_r = |r: &RealFields| {
        let fr = gr(r);
        fr.g - fr.r
    };
    let gmr = map(&now, &g_minus_r);
    let gpr = map(&now, &g_plus_r);

    let mut rep = MaxwellReport::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let p = [i, j, k];
                let id = st.idx(i, j, k);
                let (rb, ra) = (&before[id], &after[id]);
                let dt_cb = (real(&ra.b, c) - real(&rb.b, c)).scale_re(1.0 / dx0);
                let dt_d = (real(&ra.d, 1.0 / e0) - real(&rb.d, 1.0 / e0)).scale_re(1.0 / dx0);
                let dt_x = (x(ra) - x(rb)).scale_re(1.0 / dx0);
                let dt_gpr = (g_plus_r(ra) - g_plus_r(rb)).scale_re(1.0 / dx0);

                let div_b = st.div(&cb, p);
                let faraday = st.rot(&e, p) + dt_cb;
                let div_d = st.div(&d, p);
                let ampere = st.rot(&hh, p) - dt_d;

                let cdiv = st.div(&xf, p);
                let cvec = dt_x.scale(-I) + st.rot(&yf, p);

                let gdiv = st.div(&gpr, p);
                let gvec = dt_gpr.scale(-I) + st.rot(&gmr, p);

                let real_max = div_b.norm().max(div_d.norm()).max(faraday.max_abs()).max(ampere.max_abs());
                let combined_div = div_d + I * div_b;
                let combined_vec = faraday + ampere.scale(I);

                rep.real_residual = rep.real_residual.max(real_max);
                rep.complex_residual = rep.complex_residual.max(cdiv.norm().max(cvec.max_abs()));
                rep.gr_residual = rep.gr_residual.max(gdiv.norm().max(gvec.max_abs()));
                rep.real_vs_complex = rep
                    .real_vs_complex
                    .max((cdiv - combined_div).norm())
                    .max((cvec - combined_vec).max_abs());
                rep.complex_vs_gr = rep.complex_vs_gr.max((gdiv - cdiv).norm()).max((gvec - cvec).max_abs());
            }
        }
    }
    rep
}

/// Vacuum plane wave `E = (cos(kz − ωt), 0, 0)`, `cB = (0, cos(kz − ωt), 0)`
/// with `ω = ck`.
pub fn plane_wave(k: f64, units: UnitSystem) -> impl Fn([f64; 3], f64) -> RealFields {
    move |x, t| {
        let phase = (k * x[2] - units.c * k * t).cos();
        let e = [phase, 0.0, 0.0];
        let b = [0.0, phase / units.c, 0.0];
        RealFields {
            e,
            b,
            d: e.map(|v| units.epsilon0 * v),
            h: b.map(|v| units.epsilon0 * units.c * units.c * v),
        }
    }
}
