//! Independent numerical oracles for tests: adaptive Gauss–Kronrod
//! quadrature and the integer-shape Gamma CDF. Self-contained so
//! integration tests can include it by path.

#![allow(dead_code)]
// Tabulated nodes and weights are kept at published precision.
#![allow(clippy::excessive_precision)]

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn kronrod(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        k += WGK[j] * pair;
        if j % 2 == 1 {
            g += WG[j / 2] * pair;
        }
    }
    (k * h, (k - g).abs() * h)
}

/// ∫ₐᵇ f, repeatedly splitting the piece with the largest error estimate
/// until the summed estimate drops below `rel_tol`·|integral| (at most 5000
/// splits).
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    let (v, e) = kronrod(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    for _ in 0..5000 {
        let total: f64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= rel_tol * total.abs() || err < 1e-300 {
            break;
        }
        let worst = (0..pieces.len())
            .max_by(|&i, &j| pieces[i].3.total_cmp(&pieces[j].3))
            .unwrap();
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            pieces.push((lo, hi, kronrod(&f, lo, hi).0, 0.0));
            continue;
        }
        let (v1, e1) = kronrod(&f, lo, mid);
        let (v2, e2) = kronrod(&f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
    pieces.iter().map(|p| p.2).sum()
}

/// ∫ₐ^∞ f through x = a + t/(1−t).
pub fn integrate_to_inf(f: impl Fn(f64) -> f64, a: f64, rel_tol: f64) -> f64 {
    let g = |t: f64| {
        let s = 1.0 - t;
        let v = f(a + t / s) / (s * s);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    // Split so the rough scale estimate sees the bulk of the mass.
    integrate(g, 0.0, 0.5, rel_tol) + integrate(g, 0.5, 1.0, rel_tol)
}

/// CDF of Gamma(n, θ) for integer shape n: 1 − e^{−x/θ} Σ_{k<n} (x/θ)^k/k!.
pub fn gamma_cdf_int(n: u32, theta: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let y = x / theta;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..n {
        term *= y / k as f64;
        sum += term;
    }
    1.0 - (-y).exp() * sum
}

#[cfg(test)]
mod tests {
    // Unused when included into a harness-less test binary.
    #[allow(unused_imports)]
    use super::*;

    #[test]
    fn kronrod_weights_sum_to_two() {
        let s: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        assert!((s - 2.0).abs() < 1e-14);
        let g: f64 = 2.0 * (WG[0] + WG[1] + WG[2]) + WG[3];
        assert!((g - 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrates_known_values() {
        assert!((integrate(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-14) - 2.0).abs() < 1e-13);
        assert!((integrate_to_inf(|x| (-x).exp(), 0.0, 1e-14) - 1.0).abs() < 1e-13);
        assert!((integrate_to_inf(|x| 1.0 / (1.0 + x).powi(2), 0.0, 1e-14) - 1.0).abs() < 1e-12);
        assert!((gamma_cdf_int(1, 1.0, 1.0) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    }
}
