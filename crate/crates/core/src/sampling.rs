//! Seeded random inputs for property checks and the CLI.
//!
//! Components are drawn uniformly from `[−1, 1]` and, for group elements,
//! projected onto `det = 1`. A fixed seed gives the same stream on every
//! platform (ChaCha8).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::SpinorElement;
use crate::linalg::{CVec3, RMat4, C64};

pub const DEFAULT_SEED: u64 = 0x5eed_2008;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn complex(&mut self) -> C64 {
        C64::new(self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0))
    }

    pub fn real3(&mut self) -> [f64; 3] {
        [0; 3].map(|_| self.uniform(-1.0, 1.0))
    }

    pub fn complex3(&mut self) -> CVec3 {
        CVec3([self.complex(), self.complex(), self.complex()])
    }

    /// Uniform direction on the unit sphere.
    pub fn unit3(&mut self) -> [f64; 3] {
        loop {
            let v = self.real3();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.1 && n <= 1.0 {
                return v.map(|x| x / n);
            }
        }
    }

    /// Random `SL(2,C)` element with `‖k‖ ≤ max_k_norm`.
    pub fn spinor(&mut self, max_k_norm: f64) -> SpinorElement {
        loop {
            let k0 = self.complex();
            let k = self.complex3();
            if let Ok(b) = SpinorElement::project_to_group(k0, k) {
                if b.k().norm() <= max_k_norm {
                    return b;
                }
            }
        }
    }

    /// Random `K` with `|K·K| ≥ 0.05·‖K‖²`, well away from the isotropic cone.
    pub fn non_isotropic(&mut self) -> CVec3 {
        loop {
            let k = self.complex3();
            if k.dot(&k).norm() >= 0.05 * k.norm_sqr() {
                return k;
            }
        }
    }

    /// Random isotropic vector `k = m − i n` with `n ⟂ m`, `|n| = |m|`.
    pub fn isotropic(&mut self) -> CVec3 {
        let a = self.unit3();
        let mut b = self.unit3();
        let d: f64 = (0..3).map(|i| a[i] * b[i]).sum();
        for i in 0..3 {
            b[i] -= d * a[i];
        }
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = self.uniform(0.2, 2.0);
        let n = a.map(|x| scale * x);
        let m = b.map(|x| scale * x / nb);
        CVec3::from_parts(m, n.map(|x| -x))
    }

    /// Random antisymmetric real 4×4 matrix.
    pub fn antisymmetric4(&mut self) -> RMat4 {
        let mut m = RMat4::zero();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let v = self.uniform(-1.0, 1.0);
                m.0[i][j] = v;
                m.0[j][i] = -v;
            }
        }
        m
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}
