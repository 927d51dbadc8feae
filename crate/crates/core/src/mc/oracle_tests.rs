//! Distributional checks of the simulator against analytic laws, at
//! sample sizes large enough for tight thresholds.

use super::{mc_capacities, sample_map, sir_mmse, Accumulator, McEstimate};
use crate::secrecy::{capacity_bob, capacity_eve, secrecy_rate};
use crate::testutil;
use crate::{Execution, PowerSplit, SystemConfig};

fn cfg(na: u32, ne: u32) -> SystemConfig {
    SystemConfig::new(na, ne).unwrap()
}

fn estimate(xs: &[f64]) -> McEstimate {
    let mut acc = Accumulator::default();
    xs.iter().for_each(|&x| acc.push(x));
    McEstimate::from_accumulator(&acc, 0)
}

#[test]
fn bob_gain_has_mean_na() {
    let gains = sample_map(&cfg(4, 2), 100_000, 21, Execution::Parallel, |d| {
        d.bob_gain()
    });
    assert!(estimate(&gains).z_score(4.0) < 3.0);
}

#[test]
fn bob_gain_follows_gamma_distribution() {
    let mut gains = sample_map(&cfg(3, 1), 1_000_000, 22, Execution::Parallel, |d| {
        d.bob_gain()
    });
    gains.sort_by(f64::total_cmp);
    let n = gains.len() as f64;
    let ks = gains
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = testutil::gamma_cdf_int(3, 1.0, x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max);
    assert!(ks < 0.005, "KS = {ks}");
}

#[test]
fn effective_eavesdropper_channel_is_isotropic() {
    // Entries of G·[w₁ W₂] should be i.i.d. CN(0, 1): check E|a|² = 1,
    // E[a·conj(b)] = 0 across distinct entries and E[a²] = 0 (circularity).
    let c = cfg(3, 2);
    let n = 200_000;
    let entries = sample_map(&c, n, 23, Execution::Parallel, |d| {
        let mut w = d.w2.clone().insert_column(0, Default::default());
        w.set_column(0, &d.w1);
        (&d.g * w).iter().copied().collect::<Vec<_>>()
    });
    let k = entries[0].len();
    for a in 0..k {
        let power: Vec<f64> = entries.iter().map(|e| e[a].norm_sqr()).collect();
        assert!(estimate(&power).z_score(1.0) < 3.0, "entry {a}");
        let square_re: Vec<f64> = entries.iter().map(|e| (e[a] * e[a]).re).collect();
        assert!(estimate(&square_re).z_score(0.0) < 3.0, "entry {a}");
        for b in a + 1..k {
            let re: Vec<f64> = entries.iter().map(|e| (e[a] * e[b].conj()).re).collect();
            let im: Vec<f64> = entries.iter().map(|e| (e[a] * e[b].conj()).im).collect();
            assert!(estimate(&re).z_score(0.0) < 3.0, "({a},{b}) re");
            assert!(estimate(&im).z_score(0.0) < 3.0, "({a},{b}) im");
        }
    }
}

#[test]
fn non_colluding_eve_rate_matches_simulation() {
    let c = cfg(2, 1);
    let split = PowerSplit::from_z(2.0).unwrap();
    let xs: Vec<f64> = sample_map(&c, 1_000_000, 24, Execution::Parallel, |d| {
        sir_mmse(d).unwrap()
    })
    .into_iter()
    .map(|x| (x / (split.z() - 1.0)).ln_1p() / std::f64::consts::LN_2)
    .collect();
    assert!(estimate(&xs).z_score(capacity_eve(&c, &split)) < 3.0);
}

#[test]
fn colluding_eve_rate_matches_simulation() {
    let c = cfg(4, 2);
    let split = PowerSplit::from_z(2.0).unwrap();
    let r = mc_capacities(&c, 10.0, &split, 1_000_000, 25).unwrap();
    assert!(r.c2.z_score(capacity_eve(&c, &split)) < 3.0, "{r:?}");
}

#[test]
fn bob_rate_matches_simulation() {
    let c = cfg(8, 1);
    let split = PowerSplit::equal();
    let r = mc_capacities(&c, 10.0, &split, 1_000_000, 26).unwrap();
    assert!(r.c1.z_score(capacity_bob(&c, 10.0, &split)) < 3.0, "{r:?}");
    let report = r.rate_report();
    let closed = secrecy_rate(&c, 10.0, &split);
    assert!((report.c - closed.c).abs() < 3.0 * report.stderr.unwrap());
    assert_eq!(r.rejected, 0);
}
