use crate::error::{domain, Result};

/// A set of abscissae plus the relative tolerance two evaluation routes
/// must agree to on them.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    points: Vec<f64>,
    rel_tol: f64,
}

/// Worst disagreement found by [`EvalGrid::compare`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridDeviation {
    pub x: f64,
    pub left: f64,
    pub right: f64,
    pub rel_dev: f64,
}

impl EvalGrid {
    pub fn new(points: Vec<f64>, rel_tol: f64) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(domain(
                "EvalGrid::new",
                format!("rel_tol = {rel_tol} must be > 0"),
            ));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(domain("EvalGrid::new", "points must be finite"));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(domain(
                "EvalGrid::new",
                "points must be strictly increasing",
            ));
        }
        Ok(Self { points, rel_tol })
    }

    /// `n` evenly spaced points on `[a, b]` (n ≥ 2).
    pub fn linspace(a: f64, b: f64, n: usize, rel_tol: f64) -> Result<Self> {
        if n < 2 {
            return Err(domain("EvalGrid::linspace", "need at least two points"));
        }
        let step = (b - a) / (n - 1) as f64;
        Self::new((0..n).map(|i| a + step * i as f64).collect(), rel_tol)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    /// Largest relative deviation |f − g| / |g| over the grid.
    pub fn compare(&self, f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> GridDeviation {
        let mut worst = GridDeviation {
            x: f64::NAN,
            left: f64::NAN,
            right: f64::NAN,
            rel_dev: 0.0,
        };
        for &x in &self.points {
            let (a, b) = (f(x), g(x));
            let dev = if a == b {
                0.0
            } else {
                (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
            };
            if dev > worst.rel_dev || dev.is_nan() || worst.x.is_nan() {
                worst = GridDeviation {
                    x,
                    left: a,
                    right: b,
                    rel_dev: if dev.is_nan() { f64::INFINITY } else { dev },
                };
            }
        }
        worst
    }

    pub fn agrees(&self, f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> bool {
        self.compare(f, g).rel_dev <= self.rel_tol
    }
}
