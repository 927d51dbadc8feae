//! Gauss hypergeometric functions ₂F₁(1, b; c; x) with integer b < c.
//!
//! Negative arguments are Pfaff-transformed into [0, 1). On [0, 1) the
//! power series is summed up to [`DIRECT_SERIES_MAX`]; closer to 1 the
//! logarithmic expansion in powers of 1 − x (integer c − a − b) takes over.
//!
//! The appendix forms ₂F₁(N, N; N+1; x) and ₂F₁(1, 1; N+1; x) have closed
//! forms built from ln(1 − x) and a finite sum in y = x/(x − 1). That
//! bracket cancels to O(yᴺ) when |y| is small, so there the bracket is
//! replaced by its (identical) convergent tail Σ_{l≥N} yˡ/l.

use super::gamma::{harmonic, ln_gamma_int};
use crate::error::{domain, Error, Result};

const DIRECT_SERIES_MAX: f64 = 0.99;
const TAIL_SUM_MAX_Y: f64 = 0.5;
const EPS: f64 = 1e-17;
const MAX_ITER: usize = 10_000_000;
// Below this yᴺ the closed form's cancellation costs more than ~1e−12.
const CLOSED_FORM_MIN_POW: f64 = 1e-3;

/// ₂F₁(1, b; c; x) for integers 1 ≤ b < c and x < 1.
pub fn hyp2f1_1b_c(b: u32, c: u32, x: f64) -> Result<f64> {
    check_params(b, c, x)?;
    Ok(hyp2f1_1b_c_split(b, c, x, 1.0 - x))
}

fn check_params(b: u32, c: u32, x: f64) -> Result<()> {
    if b == 0 {
        return Err(Error::Unsupported {
            func: "hyp2f1_1b_c",
            detail: "b must be >= 1".into(),
        });
    }
    if c <= b {
        return Err(Error::Unsupported {
            func: "hyp2f1_1b_c",
            detail: format!("c = {c} must exceed b = {b}"),
        });
    }
    if !(x < 1.0) {
        return Err(domain("hyp2f1_1b_c", format!("x = {x} must be < 1")));
    }
    Ok(())
}

/// Same as [`hyp2f1_1b_c`] with the complement `one_minus_x = 1 − x` supplied
/// by the caller, who can usually form it without cancellation.
pub(crate) fn hyp2f1_1b_c_split(b: u32, c: u32, x: f64, one_minus_x: f64) -> f64 {
    if x < 0.0 {
        // Pfaff: F(1,b;c;x) = (1−x)^{-1} F(1,c−b;c;x/(x−1)).
        let y = -x / one_minus_x;
        return hyp2f1_1b_c_split(c - b, c, y, 1.0 / one_minus_x) / one_minus_x;
    }
    if x <= DIRECT_SERIES_MAX {
        direct_series(b, c, x)
    } else {
        near_one(b, c, one_minus_x)
    }
}

fn direct_series(b: u32, c: u32, x: f64) -> f64 {
    let (b, c) = (b as f64, c as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    let tail_factor = x / (1.0 - x);
    for n in 0..MAX_ITER {
        let nf = n as f64;
        term *= (b + nf) / (c + nf) * x;
        sum += term;
        if term * tail_factor <= EPS * sum {
            break;
        }
    }
    sum
}

// Expansion about x = 1 for a = 1 and integer m = c − 1 − b ≥ 0, with w = 1 − x:
//   F = (c−1)/m! Σ_{k<m} (b)_k (m−k−1)! (−w)^k
//       − Γ(c)/(Γ(b) m!) (−w)^m Σ_k (c−1)_k/k! w^k [ln w − H_k + H_{c−2+k}]
fn near_one(b: u32, c: u32, w: f64) -> f64 {
    let m = c - 1 - b;
    let cm1 = (c - 1) as f64;

    let mut finite = 0.0;
    if m > 0 {
        // t_k = (b)_k (m−k−1)!/m! · (−w)^k
        let mut t = 1.0 / m as f64;
        for k in 0..m {
            finite += t;
            if k + 1 < m {
                t *= -((b + k) as f64) / (m - k - 1) as f64 * w;
            }
        }
        finite *= cm1;
    }

    let ln_pref = ln_gamma_int(c as i64).unwrap()
        - ln_gamma_int(b as i64).unwrap()
        - ln_gamma_int(m as i64 + 1).unwrap();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let pref = sign * (ln_pref + m as f64 * w.ln()).exp();

    let lnw = w.ln();
    let mut s = 1.0;
    let mut h_k = 0.0;
    let mut h_shift = harmonic(c - 2);
    let mut log_sum = s * (lnw - h_k + h_shift);
    for k in 0..MAX_ITER {
        let kf = k as f64;
        s *= (cm1 + kf) / (kf + 1.0) * w;
        h_k += 1.0 / (kf + 1.0);
        h_shift += 1.0 / (cm1 + kf);
        let term = s * (lnw - h_k + h_shift);
        log_sum += term;
        if term.abs() <= EPS * log_sum.abs() {
            break;
        }
    }
    finite - pref * log_sum
}

/// Which of the two logarithmic closed forms to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppendixForm {
    /// ₂F₁(N, N; N+1; x)
    First,
    /// ₂F₁(1, 1; N+1; x) = (1−x)^{N−1} ₂F₁(N, N; N+1; x)
    Second,
}

/// Closed forms ₂F₁(N,N;N+1;x) = ((−1)ᴺN/xᴺ)(ln(1−x) − Σ_{l=1}^{N−1} yˡ/l)
/// with y = x/(x−1), and the companion ₂F₁(1,1;N+1;x).
pub fn hyp2f1_appendix_closed_form(n_cap: u32, x: f64, form: AppendixForm) -> Result<f64> {
    if n_cap == 0 {
        return Err(Error::Unsupported {
            func: "hyp2f1_appendix_closed_form",
            detail: "N must be >= 1".into(),
        });
    }
    if !(x < 1.0) {
        return Err(domain(
            "hyp2f1_appendix_closed_form",
            format!("x = {x} must be < 1"),
        ));
    }
    Ok(appendix_split(n_cap, x, 1.0 - x, form))
}

pub(crate) fn appendix_split(n_cap: u32, x: f64, one_minus_x: f64, form: AppendixForm) -> f64 {
    let n = n_cap as i32;
    let nf = n_cap as f64;
    let y = -x / one_minus_x;

    // ₂F₁(1,1;N+1;x) = N/(1−x) · y^{−N} Σ_{l≥N} yˡ/l. The closed form
    // subtracts N partial terms from −ln(1−y), losing about eps/|y|ᴺ, so the
    // tail is summed directly unless that loss is small.
    let tail_sum = y.abs() <= TAIL_SUM_MAX_Y || (y > 0.0 && y.powi(n) < CLOSED_FORM_MIN_POW);
    let second = if tail_sum {
        // Σ_j y^j/(N+j)
        let mut pow = 1.0;
        let mut sum = 1.0 / nf;
        for j in 1..MAX_ITER {
            pow *= y;
            let term = pow / (nf + j as f64);
            sum += term;
            if term.abs() <= EPS * sum.abs() {
                break;
            }
        }
        nf * sum / one_minus_x
    } else if y > 0.0 {
        // x < −1: powers of y stay in (0, 1), unlike powers of x.
        let mut partial = 0.0;
        let mut pow = 1.0;
        for l in 1..n {
            pow *= y;
            partial += pow / l as f64;
        }
        nf * (one_minus_x.ln() - partial) / (one_minus_x * y.powi(n))
    } else {
        // (1−x)^{N−1}·bracket expanded termwise so nothing overflows as x → 1:
        // (1−x)^{N−1} ln(1−x) − Σ_l (−x)^l (1−x)^{N−1−l} / l
        let mut bracket = one_minus_x.powi(n - 1) * one_minus_x.ln();
        for l in 1..n {
            bracket -= (-x).powi(l) * one_minus_x.powi(n - 1 - l) / l as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sign * nf * bracket / x.powi(n)
    };

    match form {
        AppendixForm::Second => second,
        AppendixForm::First => second / one_minus_x.powi(n - 1),
    }
}
