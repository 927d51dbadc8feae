use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Cholesky, DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::secrecy::SystemConfig;

/// Gram matrices whose condition estimate exceeds this are resampled.
pub const MAX_GRAM_CONDITION: f64 = 1e12;

/// One fading realization with the transmitter's beamforming frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw {
    /// Bob's channel, length Nₐ.
    pub h: DVector<Complex64>,
    /// Eavesdroppers' channels, N_E × Nₐ.
    pub g: DMatrix<Complex64>,
    /// Unit beamformer hᴴ/‖h‖.
    pub w1: DVector<Complex64>,
    /// Nₐ × (Nₐ−1) orthonormal basis of the null space of h.
    pub w2: DMatrix<Complex64>,
}

impl ChannelDraw {
    /// Builds the frame for given channels.
    pub fn new(h: DVector<Complex64>, g: DMatrix<Complex64>) -> Self {
        let (w1, w2) = householder_frame(&h);
        Self { h, g, w1, w2 }
    }

    pub fn bob_gain(&self) -> f64 {
        self.h.norm_squared()
    }

    /// g₁ = G w₁.
    pub fn g1(&self) -> DVector<Complex64> {
        &self.g * &self.w1
    }

    /// G₂ = G W₂.
    pub fn g2(&self) -> DMatrix<Complex64> {
        &self.g * &self.w2
    }
}

fn cn01<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

/// Draws h and G with i.i.d. CN(0, 1) entries and completes the frame.
pub fn sample_channel<R: Rng + ?Sized>(cfg: &SystemConfig, rng: &mut R) -> ChannelDraw {
    let na = cfg.na() as usize;
    let ne = cfg.ne() as usize;
    let h = DVector::from_fn(na, |_, _| cn01(rng));
    let g = DMatrix::from_fn(ne, na, |_, _| cn01(rng));
    ChannelDraw::new(h, g)
}

// Reflection H = I − 2vvᴴ/(vᴴv) with v = u + e^{i arg u₁}e₁ maps u = w₁ onto a
// multiple of e₁, so its remaining columns span the orthogonal complement.
// The sign choice keeps |v₁| ≥ 1, avoiding cancellation.
fn householder_frame(h: &DVector<Complex64>) -> (DVector<Complex64>, DMatrix<Complex64>) {
    let na = h.len();
    let u = h.map(|c| c.conj()) / Complex64::from(h.norm());
    let phase = if u[0].norm() > 0.0 {
        u[0] / u[0].norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut v = u.clone();
    v[0] += phase;
    let scale = 2.0 / v.norm_squared();
    let w2 = DMatrix::from_fn(na, na - 1, |i, j| {
        let col = j + 1;
        let delta = if i == col { 1.0 } else { 0.0 };
        Complex64::from(delta) - v[i] * v[col].conj() * scale
    });
    (u, w2)
}

/// Eavesdropper SIR statistic X = g₁ᴴ(G₂G₂ᴴ)⁻¹g₁ through a Cholesky solve.
pub fn sir_mmse(draw: &ChannelDraw) -> Result<f64> {
    let g1 = draw.g1();
    let g2 = draw.g2();
    let gram = &g2 * g2.adjoint();
    let chol = Cholesky::new(gram).ok_or(Error::IllConditioned {
        condition: f64::INFINITY,
    })?;
    // (max Lᵢᵢ / min Lᵢᵢ)² bounds the 2-norm condition number from below and
    // is exact for diagonal Gram matrices.
    let diag = chol.l_dirty().diagonal();
    let (lo, hi) = diag
        .iter()
        .map(|d| d.re)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), d| {
            (lo.min(d), hi.max(d))
        });
    let condition = (hi / lo).powi(2);
    if !(condition <= MAX_GRAM_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let y = chol.solve(&g1);
    Ok(g1.dotc(&y).re.max(0.0))
}
