//! Generalized Gauss–Laguerre rules normalized for expectations over a
//! Gamma(shape, 1) variate, built with the Golub–Welsch eigenvalue method.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GaussLaguerre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    shape: u32,
}

impl GaussLaguerre {
    /// Rule of `order` nodes with E[f(X)] ≈ Σ wᵢ f(xᵢ), X ~ Gamma(shape, 1).
    /// Weights sum to one.
    pub fn gamma_expectation(order: usize, shape: u32) -> Result<Self> {
        if order == 0 {
            return Err(domain("GaussLaguerre", "order must be >= 1"));
        }
        if shape == 0 {
            return Err(domain("GaussLaguerre", "shape must be >= 1"));
        }
        let alpha = (shape - 1) as f64;
        let mut jacobi = DMatrix::<f64>::zeros(order, order);
        for i in 0..order {
            jacobi[(i, i)] = 2.0 * i as f64 + alpha + 1.0;
            if i + 1 < order {
                let k = (i + 1) as f64;
                let off = (k * (k + alpha)).sqrt();
                jacobi[(i, i + 1)] = off;
                jacobi[(i + 1, i)] = off;
            }
        }
        let eig = SymmetricEigen::new(jacobi);
        let mut pairs: Vec<(f64, f64)> = (0..order)
            .map(|j| (eig.eigenvalues[j], eig.eigenvectors[(0, j)].powi(2)))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = pairs.iter().map(|p| p.1).sum();
        Ok(Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1 / total).collect(),
            shape,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn shape(&self) -> u32 {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// E[f(X)], X ~ Gamma(shape, 1).
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// E[f(θX)], i.e. an expectation over Gamma(shape, θ).
    pub fn expect_scaled(&self, theta: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.expect(|x| f(theta * x))
    }
}
