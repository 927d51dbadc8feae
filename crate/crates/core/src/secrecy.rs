//! Closed-form ergodic rates for artificial-noise beamforming.
//!
//! Bob's capacity C₁ averages log₂(1 + φP‖h‖²) over ‖h‖² ~ Gamma(Nₐ, 1);
//! Eve's capacity C₂ is the worst case of noiseless colluding eavesdroppers
//! and depends only on the power split. All rates are bits per channel use
//! and every power is linear scale (unit noise variance at Bob).

use std::f64::consts::LN_2;

use crate::error::{domain, Error, Result};
use crate::specfun::{
    appendix_split, beta_int, binomial, hyp2f1_1b_c_split, scaled_expint_sum, AppendixForm,
};

/// Distance from z = Nₐ inside which the non-colluding closed form hands
/// over to the general hypergeometric sum.
const NON_COLLUDING_GUARD: f64 = 1e-6;

/// Antenna counts: Nₐ transmit antennas at Alice, N_E colluding
/// single-antenna eavesdroppers (N_E = 1 is the non-colluding case).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemConfig {
    na: u32,
    ne: u32,
}

impl SystemConfig {
    pub fn new(na: u32, ne: u32) -> Result<Self> {
        if na < 2 {
            return Err(Error::InvalidConfig(format!("na = {na} must be >= 2")));
        }
        if ne < 1 {
            return Err(Error::InvalidConfig(format!("ne = {ne} must be >= 1")));
        }
        if na <= ne {
            return Err(Error::InvalidConfig(format!(
                "na = {na} must exceed ne = {ne}; otherwise Eve cancels the artificial noise"
            )));
        }
        Ok(Self { na, ne })
    }

    pub fn na(&self) -> u32 {
        self.na
    }

    pub fn ne(&self) -> u32 {
        self.ne
    }
}

/// Fraction φ of the total power spent on the information signal; the rest
/// is spread evenly over the Nₐ − 1 artificial-noise dimensions.
///
/// φ = 1 (no artificial noise) is accepted as a boundary value: Eve's
/// capacity is then infinite and every secrecy rate is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    phi: f64,
}

impl PowerSplit {
    pub fn new(phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= 1.0) {
            return Err(domain(
                "PowerSplit::new",
                format!("phi = {phi} must lie in (0, 1]"),
            ));
        }
        Ok(Self { phi })
    }

    /// Equal power allocation, φ = 1/2.
    pub fn equal() -> Self {
        Self { phi: 0.5 }
    }

    pub fn from_z(z: f64) -> Result<Self> {
        if !(z >= 1.0) || z.is_infinite() {
            return Err(domain(
                "PowerSplit::from_z",
                format!("z = {z} must be finite and >= 1"),
            ));
        }
        Self::new(1.0 / z)
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// z = 1/φ.
    pub fn z(&self) -> f64 {
        1.0 / self.phi
    }

    /// z − 1 = (1 − φ)/φ without the cancellation of forming z first.
    pub fn z_minus_one(&self) -> f64 {
        (1.0 - self.phi) / self.phi
    }

    /// σ_u² = φP.
    pub fn signal_power(&self, p: f64) -> f64 {
        self.phi * p
    }

    /// σ_v² = (1 − φ)P/(Nₐ − 1), per artificial-noise dimension.
    pub fn noise_power(&self, cfg: &SystemConfig, p: f64) -> f64 {
        (1.0 - self.phi) * p / (cfg.na - 1) as f64
    }

    pub fn is_degenerate(&self) -> bool {
        self.phi >= 1.0
    }
}

/// Per-entry variance σ̃² of the MMSE channel-estimation error. The
/// estimate then has per-entry variance 1 − σ̃².
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CsiError {
    sigma_tilde2: f64,
}

impl CsiError {
    pub fn new(sigma_tilde2: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&sigma_tilde2) {
            return Err(domain(
                "CsiError::new",
                format!("sigma_tilde2 = {sigma_tilde2} must lie in [0, 1)"),
            ));
        }
        Ok(Self { sigma_tilde2 })
    }

    pub fn perfect() -> Self {
        Self { sigma_tilde2: 0.0 }
    }

    pub fn sigma_tilde2(&self) -> f64 {
        self.sigma_tilde2
    }

    pub fn estimate_variance(&self) -> f64 {
        1.0 - self.sigma_tilde2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateSource {
    ClosedForm,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    pub c1: f64,
    pub c2: f64,
    /// [c1 − c2]⁺
    pub c: f64,
    pub source: RateSource,
    /// Standard error of `c`; present only for Monte Carlo estimates.
    pub stderr: Option<f64>,
}

impl RateReport {
    pub fn closed_form(c1: f64, c2: f64) -> Self {
        let c = if c2.is_infinite() {
            0.0
        } else {
            (c1 - c2).max(0.0)
        };
        Self {
            c1,
            c2,
            c,
            source: RateSource::ClosedForm,
            stderr: None,
        }
    }

    /// Eve's capacity is unbounded (no artificial noise).
    pub fn eve_unbounded(&self) -> bool {
        self.c2.is_infinite()
    }
}

/// C₁ = (1/ln2)·e^{z/P} Σ_{k=1}^{Nₐ} E_k(z/P). Returns 0 for P = 0.
pub fn capacity_bob(cfg: &SystemConfig, p: f64, split: &PowerSplit) -> f64 {
    bob_from_argument(cfg, split.z() / p)
}

fn bob_from_argument(cfg: &SystemConfig, x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    scaled_expint_sum(cfg.na, x).expect("argument is positive") / LN_2
}

/// C₂ for noiseless colluding eavesdroppers; independent of P.
/// Infinite when φ = 1.
pub fn capacity_eve(cfg: &SystemConfig, split: &PowerSplit) -> f64 {
    eve_nats(cfg, split) / LN_2
}

/// C₂ in nats, dispatching to the non-colluding closed form when it is safe.
pub(crate) fn eve_nats(cfg: &SystemConfig, split: &PowerSplit) -> f64 {
    if split.is_degenerate() {
        return f64::INFINITY;
    }
    if cfg.ne == 1 && (split.z() - cfg.na as f64).abs() >= NON_COLLUDING_GUARD {
        eve_nats_non_colluding(cfg, split)
    } else {
        eve_nats_general(cfg, split)
    }
}

/// C₂ through the general sum over k < N_E of
/// C(Nₐ−1,k)·(Nₐ−1)/(z−1)·B(k+1, Nₐ−1−k)·₂F₁(1, k+1; Nₐ; (z−Nₐ)/(z−1)).
pub fn capacity_eve_general(cfg: &SystemConfig, split: &PowerSplit) -> f64 {
    if split.is_degenerate() {
        return f64::INFINITY;
    }
    eve_nats_general(cfg, split) / LN_2
}

/// C₂ for N_E = 1 through the logarithmic closed form
/// ((Nₐ−1)/(Nₐ−z))^{Nₐ−1}·(ln((Nₐ−1)/(z−1)) − Σ_{l=1}^{Nₐ−2} (1/l)((Nₐ−z)/(Nₐ−1))ˡ).
pub fn capacity_eve_non_colluding(cfg: &SystemConfig, split: &PowerSplit) -> Result<f64> {
    if cfg.ne != 1 {
        return Err(Error::Unsupported {
            func: "capacity_eve_non_colluding",
            detail: format!("requires ne = 1, got {}", cfg.ne),
        });
    }
    if split.is_degenerate() {
        return Ok(f64::INFINITY);
    }
    Ok(eve_nats_non_colluding(cfg, split) / LN_2)
}

fn eve_nats_general(cfg: &SystemConfig, split: &PowerSplit) -> f64 {
    let na = cfg.na;
    let zm1 = split.z_minus_one();
    let gain = (na - 1) as f64 / zm1;
    let x = (split.z() - na as f64) / zm1;
    (0..cfg.ne)
        .map(|k| {
            let beta = beta_int(k as i64 + 1, (na - 1 - k) as i64).expect("na > ne");
            binomial(na - 1, k) * gain * beta * hyp2f1_1b_c_split(k + 1, na, x, gain)
        })
        .sum()
}

fn eve_nats_non_colluding(cfg: &SystemConfig, split: &PowerSplit) -> f64 {
    // (1/(z−1))·₂F₁(1,1;Nₐ;x) with the appendix form for N = Nₐ − 1.
    let na = cfg.na;
    let zm1 = split.z_minus_one();
    let x = (split.z() - na as f64) / zm1;
    let one_minus_x = (na - 1) as f64 / zm1;
    appendix_split(na - 1, x, one_minus_x, AppendixForm::Second) / zm1
}

/// CCDF of the eavesdroppers' MMSE-combiner SIR X = g₁ᴴ(G₂G₂ᴴ)⁻¹g₁:
/// R_X(x) = Σ_{k<N_E} C(Nₐ−1,k) xᵏ / (1+x)^{Nₐ−1}.
pub fn ccdf_sir(x: f64, cfg: &SystemConfig) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(domain("ccdf_sir", format!("x = {x} must be >= 0")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    // Written in u = x/(1+x) and 1−u to stay finite for large x.
    let u = x / (1.0 + x);
    let v = 1.0 / (1.0 + x);
    let n = cfg.na - 1;
    Ok((0..cfg.ne)
        .map(|k| binomial(n, k) * u.powi(k as i32) * v.powi((n - k) as i32))
        .sum())
}

/// Non-adaptive secrecy-rate lower bound C = [C₁ − C₂]⁺ (z fixed for all h).
pub fn secrecy_rate(cfg: &SystemConfig, p: f64, split: &PowerSplit) -> RateReport {
    RateReport::closed_form(capacity_bob(cfg, p, split), capacity_eve(cfg, split))
}

/// Large-Nₐ approximation (1/ln2)[ln(NₐP/z) − e^{z−1} Σ_{k=1}^{N_E} E_k(z−1)]⁺.
pub fn secrecy_rate_large_na(cfg: &SystemConfig, p: f64, split: &PowerSplit) -> Result<f64> {
    let zm1 = split.z_minus_one();
    if !(zm1 > 0.0) {
        return Err(domain("secrecy_rate_large_na", "requires z > 1 (phi < 1)"));
    }
    let eve = scaled_expint_sum(cfg.ne, zm1)?;
    let bob = (cfg.na as f64 * p / split.z()).ln();
    Ok((bob - eve).max(0.0) / LN_2)
}

/// Large-Nₐ limit of Eve's capacity, (1/ln2)·e^{z−1} Σ_{k=1}^{N_E} E_k(z−1).
pub fn capacity_eve_large_na(cfg: &SystemConfig, split: &PowerSplit) -> Result<f64> {
    let zm1 = split.z_minus_one();
    if !(zm1 > 0.0) {
        return Err(domain("capacity_eve_large_na", "requires z > 1 (phi < 1)"));
    }
    Ok(scaled_expint_sum(cfg.ne, zm1)? / LN_2)
}

/// Ĉ₁ with MMSE estimation error treated as worst-case Gaussian noise:
/// (1/ln2)·e^{y} Σ_{k=1}^{Nₐ} E_k(y), y = z(σ̃² + 1/P)/(1 − σ̃²).
pub fn capacity_bob_imperfect(
    cfg: &SystemConfig,
    p: f64,
    split: &PowerSplit,
    err: &CsiError,
) -> f64 {
    let s = err.sigma_tilde2;
    // Reduces to z/P exactly when σ̃² = 0.
    bob_from_argument(cfg, split.z() * (s * p + 1.0) / (p * (1.0 - s)))
}

/// [Ĉ₁ − C₂]⁺.
pub fn secrecy_rate_imperfect(
    cfg: &SystemConfig,
    p: f64,
    split: &PowerSplit,
    err: &CsiError,
) -> RateReport {
    RateReport::closed_form(
        capacity_bob_imperfect(cfg, p, split, err),
        capacity_eve(cfg, split),
    )
}
