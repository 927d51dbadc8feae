//! Power-split optimization and critical-SNR solving.

use std::f64::consts::LN_2;

use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::quadrature::GaussLaguerre;
use crate::search::{bisect, golden_max, grid_then_golden};
use crate::secrecy::{
    capacity_bob, capacity_bob_imperfect, capacity_eve, eve_nats, CsiError, PowerSplit,
    SystemConfig,
};
use crate::specfun::expint_en_scaled;

/// Coarse grid size on φ ∈ (0, 1) before golden-section refinement.
pub const PHI_GRID_POINTS: usize = 65;
/// Final bracket width on φ.
pub const PHI_TOL: f64 = 1e-6;
/// Default Gauss–Laguerre order for the adaptive strategy's outer expectation.
pub const DEFAULT_ADAPTIVE_ORDER: usize = 64;
/// The critical-SNR search gives up above this power (60 dB).
pub const CRITICAL_SNR_CEILING: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    pub phi_star: f64,
    pub z_star: f64,
    /// Secrecy rate at `phi_star`, bits per channel use.
    pub c_star: f64,
    pub iterations: usize,
    /// The rate is positive somewhere and the final bracket is below tolerance.
    pub converged: bool,
    /// Coarse-grid samples (φ, C₁ − C₂), kept when requested.
    pub grid: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    pub grid_points: usize,
    pub tol: f64,
    pub exec: Execution,
    /// Keep the coarse grid in [`OptResult::grid`].
    pub dump_grid: bool,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            grid_points: PHI_GRID_POINTS,
            tol: PHI_TOL,
            exec: Execution::default(),
            dump_grid: false,
        }
    }
}

fn rate_gap(cfg: &SystemConfig, p: f64, phi: f64, err: Option<&CsiError>) -> f64 {
    let split = PowerSplit::new(phi).expect("phi inside (0, 1)");
    let c1 = match err {
        Some(e) => capacity_bob_imperfect(cfg, p, &split, e),
        None => capacity_bob(cfg, p, &split),
    };
    c1 - capacity_eve(cfg, &split)
}

/// Best fixed power split for the non-adaptive strategy at SNR `p`, with
/// optional channel-estimation error.
pub fn optimize_phi(cfg: &SystemConfig, p: f64, err: Option<&CsiError>) -> OptResult {
    optimize_phi_with(cfg, p, err, &OptimizeOptions::default())
}

pub fn optimize_phi_with(
    cfg: &SystemConfig,
    p: f64,
    err: Option<&CsiError>,
    opts: &OptimizeOptions,
) -> OptResult {
    // Maximize the unclamped difference: same argmax wherever the rate is
    // positive, and still informative where it is not.
    let f = |phi: f64| rate_gap(cfg, p, phi, err);
    let (best, grid) = grid_then_golden(f, 0.0, 1.0, opts.grid_points, opts.tol, opts.exec);
    let c_star = best.value.max(0.0);
    OptResult {
        phi_star: best.x,
        z_star: 1.0 / best.x,
        c_star,
        iterations: best.iterations,
        converged: c_star > 0.0 && best.width <= opts.tol,
        grid: opts.dump_grid.then_some(grid),
    }
}

/// Adaptive-strategy rate: for each channel gain g = ‖h‖² pick the split
/// maximizing [log₂(1 + (P/z)g) − C₂(z)]⁺, then average over
/// g ~ Gamma(Nₐ, 1) with a Gauss–Laguerre rule of `quadrature_order` nodes.
pub fn optimize_phi_adaptive(cfg: &SystemConfig, p: f64, quadrature_order: usize) -> Result<f64> {
    optimize_phi_adaptive_with(cfg, p, quadrature_order, Execution::default())
}

pub fn optimize_phi_adaptive_with(
    cfg: &SystemConfig,
    p: f64,
    quadrature_order: usize,
    exec: Execution,
) -> Result<f64> {
    if quadrature_order < 16 {
        return Err(domain(
            "optimize_phi_adaptive",
            "quadrature_order must be >= 16",
        ));
    }
    if !(p > 0.0) {
        return Err(domain(
            "optimize_phi_adaptive",
            format!("p = {p} must be > 0"),
        ));
    }
    let rule = GaussLaguerre::gamma_expectation(quadrature_order, cfg.na())?;

    // C₂ on the coarse φ grid is shared by every node.
    let step = 1.0 / (PHI_GRID_POINTS + 1) as f64;
    let phis: Vec<f64> = (1..=PHI_GRID_POINTS).map(|i| step * i as f64).collect();
    let eve_grid: Vec<f64> = phis
        .iter()
        .map(|&phi| capacity_eve(cfg, &PowerSplit::new(phi).unwrap()))
        .collect();

    let per_node = exec.map_indexed(rule.order(), |i| {
        let g = rule.nodes()[i];
        let objective = |phi: f64| {
            (phi * p * g).ln_1p() / LN_2 - capacity_eve(cfg, &PowerSplit::new(phi).unwrap())
        };
        let best = (0..phis.len())
            .map(|j| ((phi_j_p(phis[j], p, g)) - eve_grid[j], j))
            .fold((f64::NEG_INFINITY, 0), |a, b| if b.0 > a.0 { b } else { a });
        let lo = step * best.1 as f64;
        let hi = step * (best.1 + 2) as f64;
        // |Δz| = |Δφ|/φ², so φ tolerance 1e−8 keeps z within 1e−6 for φ ≥ 0.1.
        let refined = golden_max(objective, lo, hi, 1e-8);
        refined.value.max(best.0).max(0.0)
    });
    Ok(rule
        .weights()
        .iter()
        .zip(per_node)
        .map(|(w, v)| w * v)
        .sum())
}

fn phi_j_p(phi: f64, p: f64, g: f64) -> f64 {
    (phi * p * g).ln_1p() / LN_2
}

/// Which stationarity condition of the high-SNR objective to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HighSnrRegime {
    /// N_E = 1, any Nₐ: −1/z − dC₂/dz = 0 with C₂ in its logarithmic closed form.
    ExactNe1,
    /// Nₐ = 2: −1/z − 1/((z−2)(z−1)) + ln(z−1)/(z−2)² = 0.
    Na2Closed,
    /// Nₐ → ∞: −1/z − e^{z−1}E_{N_E}(z−1) + 1/(z−1) = 0.
    LargeNa,
    /// Nₐ → ∞ with e^{t}E_{N_E}(t) ≈ 1/(t + N_E): z* = 1 + √N_E.
    LargeNaAsymptotic,
}

/// High-SNR objective (bits, additive constant dropped) for N_E = 1:
/// −log₂ z − C₂(z).
pub fn high_snr_objective(cfg: &SystemConfig, z: f64) -> Result<f64> {
    let split = PowerSplit::from_z(z)?;
    Ok((-z.ln() - eve_nats(cfg, &split)) / LN_2)
}

/// d/dz of [`high_snr_objective`], with dC₂/dz differentiated analytically
/// from the non-colluding closed form.
pub fn high_snr_objective_derivative(cfg: &SystemConfig, z: f64) -> Result<f64> {
    if cfg.ne() != 1 {
        return Err(Error::Unsupported {
            func: "high_snr_objective_derivative",
            detail: "requires ne = 1".into(),
        });
    }
    if !(z > 1.0) {
        return Err(domain(
            "high_snr_objective_derivative",
            format!("z = {z} must be > 1"),
        ));
    }
    Ok((-1.0 / z - eve_nats_derivative_ne1(cfg.na(), z)) / LN_2)
}

// d/dz of C₂·ln2 = w^{−N}·T(w), T(w) = Σ_{l≥N} wˡ/l, w = (Nₐ−z)/(Nₐ−1), N = Nₐ−1.
// dC/dw = −N T/w^{N+1} + 1/(w(1−w)) = Σ_{j≥0} (j+1) wʲ/(N+1+j); the series
// is used for |w| ≤ 1/2 and wherever wᴺ is small, where the closed form cancels.
fn eve_nats_derivative_ne1(na: u32, z: f64) -> f64 {
    let n = (na - 1) as f64;
    let w = (na as f64 - z) / n;
    let one_minus_w = (z - 1.0) / n;
    let series = w.abs() <= 0.5 || (w > 0.0 && w.powi(na as i32 - 1) < 1e-3);
    let d_dw = if series {
        let mut pow = 1.0;
        let mut sum = 1.0 / (n + 1.0);
        for j in 1..10_000_000 {
            pow *= w;
            let term = (j + 1) as f64 * pow / (n + 1.0 + j as f64);
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        let ni = na as i32 - 1;
        let mut tail = -one_minus_w.ln();
        for l in 1..ni {
            tail -= w.powi(l) / l as f64;
        }
        -n * tail / w.powi(ni + 1) + 1.0 / (w * one_minus_w)
    };
    -d_dw / n
}

fn na2_stationarity(z: f64) -> f64 {
    let t = z - 2.0;
    if t.abs() < 1e-3 {
        // Removable singularity at z = 2; Taylor expansion in t.
        t * (-5.0 / 12.0 + t * (5.0 / 8.0 - t * 0.7375))
    } else {
        -1.0 / z - 1.0 / (t * (z - 1.0)) + (z - 1.0).ln() / (t * t)
    }
}

fn large_na_stationarity(ne: u32, z: f64) -> f64 {
    let t = z - 1.0;
    -1.0 / z - expint_en_scaled(ne, t).expect("t > 0") + 1.0 / t
}

// Bisection from [lo, hi], doubling hi until the sign changes.
fn bracketed_root(f: impl Fn(f64) -> f64, lo: f64, mut hi: f64) -> Result<f64> {
    let f_lo = f(lo);
    let mut f_hi = f(hi);
    while f_hi.signum() == f_lo.signum() && hi < 1e6 {
        hi = 1.0 + 2.0 * (hi - 1.0);
        f_hi = f(hi);
    }
    Ok(bisect(&f, lo, hi, 1e-13)?.root)
}

/// Stationary z of the high-SNR secrecy-rate approximation.
pub fn high_snr_optimal_z(cfg: &SystemConfig, regime: HighSnrRegime) -> Result<f64> {
    match regime {
        HighSnrRegime::Na2Closed => {
            if cfg.na() != 2 {
                return Err(Error::Unsupported {
                    func: "high_snr_optimal_z",
                    detail: format!("Na2Closed requires na = 2, got {}", cfg.na()),
                });
            }
            bracketed_root(na2_stationarity, 1.0 + 1e-6, 4.0)
        }
        HighSnrRegime::ExactNe1 => {
            if cfg.ne() != 1 {
                return Err(Error::Unsupported {
                    func: "high_snr_optimal_z",
                    detail: format!("ExactNe1 requires ne = 1, got {}", cfg.ne()),
                });
            }
            let na = cfg.na();
            bracketed_root(
                |z| -1.0 / z - eve_nats_derivative_ne1(na, z),
                1.0 + 1e-6,
                na as f64,
            )
        }
        HighSnrRegime::LargeNa => {
            let ne = cfg.ne();
            bracketed_root(|z| large_na_stationarity(ne, z), 1.0 + 1e-9, 3.0)
        }
        HighSnrRegime::LargeNaAsymptotic => Ok(1.0 + (cfg.ne() as f64).sqrt()),
    }
}

fn gap_at_db(cfg: &SystemConfig, split: &PowerSplit, err: Option<&CsiError>, p_db: f64) -> f64 {
    let p = 10f64.powf(p_db / 10.0);
    let c1 = match err {
        Some(e) => capacity_bob_imperfect(cfg, p, split, e),
        None => capacity_bob(cfg, p, split),
    };
    c1 - capacity_eve(cfg, split)
}

/// SNR (linear) at which the secrecy rate drops to zero, by bisection in dB.
/// Infinite when the rate is not positive at [`CRITICAL_SNR_CEILING`].
pub fn critical_snr_exact(cfg: &SystemConfig, split: &PowerSplit, err: Option<&CsiError>) -> f64 {
    if split.is_degenerate() {
        return f64::INFINITY;
    }
    let f = |db: f64| gap_at_db(cfg, split, err, db);
    let hi = 10.0 * CRITICAL_SNR_CEILING.log10();
    if !(f(hi) > 0.0) {
        return f64::INFINITY;
    }
    let mut lo = -60.0;
    while f(lo) > 0.0 {
        lo -= 60.0;
        if lo < -3000.0 {
            return 0.0;
        }
    }
    let root = bisect(f, lo, hi, 1e-5)
        .expect("bracket has a sign change")
        .root;
    10f64.powf(root / 10.0)
}

/// Closed-form upper bound on the critical SNR from the low-SNR lower bound
/// C₁ > (1/ln2)·Nₐ/(z(σ̃² + 1/P)/(1−σ̃²) + (Nₐ+1)/2):
/// P_C < [((1−σ̃²)/z)(Nₐ/S − (Nₐ+1)/2) − σ̃²]⁻¹ with S = C₂·ln2.
/// Infinite when the bracket is not positive.
pub fn critical_snr_upper_bound(
    cfg: &SystemConfig,
    split: &PowerSplit,
    err: Option<&CsiError>,
) -> f64 {
    let s2 = err.map_or(0.0, CsiError::sigma_tilde2);
    let eve = eve_nats(cfg, split);
    if !eve.is_finite() {
        return f64::INFINITY;
    }
    let na = cfg.na() as f64;
    let lead = (1.0 - s2) / split.z() * (na / eve - (na + 1.0) / 2.0);
    let bracket = lead - s2;
    // Exact cancellation (e.g. Nₐ = 2, φ = 1/2, σ̃² = 0.2) must not leave a
    // rounding-sized positive residue.
    if bracket <= 16.0 * f64::EPSILON * (lead.abs() + s2) {
        return f64::INFINITY;
    }
    1.0 / bracket
}

/// Exact critical SNR and its closed-form upper bound, linear scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalSnr {
    pub p_c_exact: f64,
    pub p_c_bound: f64,
}

impl CriticalSnr {
    pub fn exact_db(&self) -> f64 {
        to_db(self.p_c_exact)
    }

    pub fn bound_db(&self) -> f64 {
        to_db(self.p_c_bound)
    }
}

fn to_db(p: f64) -> f64 {
    if p.is_infinite() {
        f64::INFINITY
    } else {
        10.0 * p.log10()
    }
}

pub fn critical_snr(cfg: &SystemConfig, split: &PowerSplit, err: Option<&CsiError>) -> CriticalSnr {
    CriticalSnr {
        p_c_exact: critical_snr_exact(cfg, split, err),
        p_c_bound: critical_snr_upper_bound(cfg, split, err),
    }
}
