//! Quadrature rules on the unit interval, used for the τ-average.

use crate::error::{Error, Result};

/// Nodes and weights for integration over [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }
}

/// Gauss–Legendre rule with `n` nodes, mapped from [-1, 1] to [0, 1].
/// Exact for polynomials of degree ≤ 2n-1; weights sum to 1.
///
/// Roots of the Legendre polynomial are found by Newton iteration from the
/// Chebyshev-like initial guess `cos(π(i + 3/4)/(n + 1/2))`, which converges
/// in a handful of steps for every root.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidInput("quadrature rule needs at least one node".into()));
    }
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    // Roots come in ± pairs; solve the upper half.
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence: (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}.
            let mut p0 = 1.0f64;
            let mut p1 = x;
            for j in 1..n {
                let p2 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p0) / (j + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            // P'_n(x) = n (x P_n - P_{n-1}) / (x² - 1).
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    // Map [-1, 1] -> [0, 1].
    for i in 0..n {
        nodes[i] = 0.5 * (nodes[i] + 1.0);
        weights[i] *= 0.5;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Composite midpoint rule on [0, 1]; slower to converge but entirely
/// independent of the Legendre machinery, which makes it a useful
/// cross-check in tests.
pub fn midpoint(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidInput("quadrature rule needs at least one node".into()));
    }
    let w = 1.0 / n as f64;
    let nodes = (0..n).map(|i| (i as f64 + 0.5) * w).collect();
    let weights = vec![w; n];
    Ok(QuadratureRule { nodes, weights })
}
