//! Bracketing scalar root finding and 1-D maximization.

use crate::error::{Error, Result};
use crate::exec::Execution;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    pub iterations: usize,
    /// Final bracket width.
    pub width: f64,
}

/// Bisection on `[lo, hi]` until the bracket is narrower than `tol`.
/// A bracket end where `f` is exactly zero is returned immediately.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<RootResult> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(RootResult {
            root: a,
            iterations: 0,
            width: 0.0,
        });
    }
    if fb == 0.0 {
        return Ok(RootResult {
            root: b,
            iterations: 0,
            width: 0.0,
        });
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoRoot {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }
    let mut iterations = 0;
    while (b - a).abs() > tol && iterations < 500 {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            break;
        }
        let fm = f(m);
        iterations += 1;
        if fm == 0.0 {
            return Ok(RootResult {
                root: m,
                iterations,
                width: 0.0,
            });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(RootResult {
        root: 0.5 * (a + b),
        iterations,
        width: (b - a).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxResult {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
    pub width: f64,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> MaxResult {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while (b - a) > tol && iterations < 200 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    let (x, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    MaxResult {
        x,
        value,
        iterations,
        width: b - a,
    }
}

/// Coarse grid scan followed by golden-section refinement around the best
/// grid point. The grid is `n_grid` interior points of `[lo, hi]`; the
/// refinement bracket spans the best point's two neighbours.
pub fn grid_then_golden<F>(
    f: F,
    lo: f64,
    hi: f64,
    n_grid: usize,
    tol: f64,
    exec: Execution,
) -> (MaxResult, Vec<(f64, f64)>)
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let step = (hi - lo) / (n_grid + 1) as f64;
    let xs: Vec<f64> = (1..=n_grid).map(|i| lo + step * i as f64).collect();
    let values = exec.map_slice(&xs, |&x| f(x));
    let best = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if *v > values[best] { i } else { best });
    let a = lo + step * best as f64;
    let b = lo + step * (best + 2) as f64;
    let mut res = golden_max(&f, a, b, tol);
    if values[best] > res.value {
        res.x = xs[best];
        res.value = values[best];
    }
    (res, xs.into_iter().zip(values).collect())
}
