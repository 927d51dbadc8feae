use crate::error::{domain, Result};

/// Γ(n) = (n−1)! for positive integers. Overflows to `inf` past n = 171;
/// use [`ln_gamma_int`] there.
pub fn gamma_int(n: i64) -> Result<f64> {
    if n <= 0 {
        return Err(domain("gamma_int", format!("n = {n} must be >= 1")));
    }
    Ok((1..n).fold(1.0, |acc, k| acc * k as f64))
}

/// ln Γ(n) for positive integers, as a sum of logarithms.
pub fn ln_gamma_int(n: i64) -> Result<f64> {
    if n <= 0 {
        return Err(domain("ln_gamma_int", format!("n = {n} must be >= 1")));
    }
    Ok((2..n).map(|k| (k as f64).ln()).sum())
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b), evaluated in the log domain.
pub fn beta_int(a: i64, b: i64) -> Result<f64> {
    if a <= 0 || b <= 0 {
        return Err(domain(
            "beta_int",
            format!("(a, b) = ({a}, {b}) must be >= 1"),
        ));
    }
    Ok((ln_gamma_int(a)? + ln_gamma_int(b)? - ln_gamma_int(a + b)?).exp())
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Harmonic number H_n = 1 + 1/2 + ... + 1/n (H_0 = 0).
pub(crate) fn harmonic(n: u32) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_small_integers() {
        assert_eq!(gamma_int(1).unwrap(), 1.0);
        assert_eq!(gamma_int(5).unwrap(), 24.0);
    }

    #[test]
    fn gamma_20_matches_exact_factorial() {
        // 19! computed in exact integer arithmetic.
        let exact: u64 = (1..=19u64).product();
        assert_eq!(exact, 121_645_100_408_832_000);
        assert_relative_eq!(gamma_int(20).unwrap(), exact as f64, max_relative = 1e-15);
        assert_relative_eq!(
            ln_gamma_int(20).unwrap(),
            (exact as f64).ln(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(gamma_int(0).is_err());
        assert!(gamma_int(-3).is_err());
        assert!(ln_gamma_int(0).is_err());
    }

    #[test]
    fn ln_gamma_large_is_finite() {
        assert!(gamma_int(200).unwrap().is_infinite());
        let lg = ln_gamma_int(200).unwrap();
        assert!(lg.is_finite() && lg > 800.0);
    }

    #[test]
    fn beta_values() {
        assert_relative_eq!(beta_int(1, 1).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(beta_int(2, 3).unwrap(), 1.0 / 12.0, max_relative = 1e-14);
        // 3!·5!/9! as an exact rational: 720/362880 = 1/504.
        let (num, den): (u64, u64) = (6 * 120, 362_880);
        assert_eq!(den % num, 0);
        assert_relative_eq!(
            beta_int(4, 6).unwrap(),
            1.0 / (den / num) as f64,
            max_relative = 1e-14
        );
        assert!(beta_int(0, 2).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
        assert_relative_eq!(binomial(30, 15), 155_117_520.0, max_relative = 1e-15);
    }
}
