//! Generalized exponential integrals E_n(x) = ∫₁^∞ e^{−xt} t^{−n} dt.
//!
//! Below [`SERIES_CUTOFF`] the power series around zero is used; above it a
//! modified Lentz continued fraction, which yields e^x·E_n(x) directly. The
//! scaled form is what the capacity formulas need: they multiply E_n(x) by
//! e^x with x = z/P, which is huge at low SNR.

use crate::error::{domain, Result};

const EULER: f64 = 0.577_215_664_901_532_9;
const SERIES_CUTOFF: f64 = 1.5;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

fn check_x(func: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0) || x.is_nan() {
        return Err(domain(func, format!("x = {x} must be > 0")));
    }
    Ok(())
}

/// E_n(x) for n ≥ 0, x > 0.
pub fn expint_en(n: u32, x: f64) -> Result<f64> {
    check_x("expint_en", x)?;
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(if n == 0 {
        (-x).exp() / x
    } else if x < SERIES_CUTOFF {
        series(n, x)
    } else {
        continued_fraction(n, x) * (-x).exp()
    })
}

/// e^x·E_n(x), finite for every x > 0.
pub fn expint_en_scaled(n: u32, x: f64) -> Result<f64> {
    check_x("expint_en_scaled", x)?;
    Ok(scaled_unchecked(n, x))
}

fn scaled_unchecked(n: u32, x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else if n == 0 {
        1.0 / x
    } else if x < SERIES_CUTOFF {
        series(n, x) * x.exp()
    } else {
        continued_fraction(n, x)
    }
}

/// e^x · Σ_{k=1}^{n_terms} E_k(x).
pub fn scaled_expint_sum(n_terms: u32, x: f64) -> Result<f64> {
    check_x("scaled_expint_sum", x)?;
    if n_terms == 0 {
        return Err(domain("scaled_expint_sum", "n_terms must be >= 1"));
    }
    Ok((1..=n_terms).map(|k| scaled_unchecked(k, x)).sum())
}

// Power series about x = 0 (n ≥ 1).
fn series(n: u32, x: f64) -> f64 {
    let nm1 = (n - 1) as usize;
    let mut ans = if nm1 != 0 {
        1.0 / nm1 as f64
    } else {
        -x.ln() - EULER
    };
    let mut fact = 1.0;
    for i in 1..MAX_ITER {
        fact *= -x / i as f64;
        let del = if i != nm1 {
            -fact / (i as f64 - nm1 as f64)
        } else {
            let psi = -EULER + (1..=nm1).map(|k| 1.0 / k as f64).sum::<f64>();
            fact * (-x.ln() + psi)
        };
        ans += del;
        if del.abs() < ans.abs() * EPS {
            break;
        }
    }
    ans
}

// Lentz evaluation of the continued fraction for e^x·E_n(x) (n ≥ 1).
fn continued_fraction(n: u32, x: f64) -> f64 {
    let nm1 = (n - 1) as f64;
    let mut b = x + n as f64;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (nm1 + i as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}
