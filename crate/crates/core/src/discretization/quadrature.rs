//! Gauss-Legendre rules and the discrete-ordinates angular set built from them.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const MAX_NEWTON_STEPS: usize = 100;

/// Nodes and weights of a quadrature rule on a finite interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i)
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre polynomial P_n(x) and its derivative, by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = next;
    }
    let n = n as f64;
    let dp = n * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Gauss-Legendre rule with `n` points mapped affinely onto `[a, b]`.
///
/// Nodes are returned in ascending order. Roots of P_n are found by Newton
/// iteration from the Chebyshev-like initial guess, then mirrored so the
/// rule is exactly symmetric.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<Rule> {
    if n == 0 {
        return Err(Error::InvalidQuadrature("order must be at least 1".into()));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidQuadrature(format!(
            "interval [{a}, {b}] is empty or not finite"
        )));
    }

    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    if n == 1 {
        w[0] = 2.0;
    } else {
        let half = n.div_ceil(2);
        for i in 0..half {
            // i-th largest root
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut converged = false;
            for _ in 0..MAX_NEWTON_STEPS {
                let (p, dp) = legendre_with_derivative(n, z);
                let step = p / dp;
                z -= step;
                if step.abs() <= 1e-15 * z.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::QuadratureNotConverged { order: n });
            }
            let (_, dp) = legendre_with_derivative(n, z);
            let weight = 2.0 / ((1.0 - z * z) * dp * dp);
            x[n - 1 - i] = z;
            x[i] = -z;
            w[n - 1 - i] = weight;
            w[i] = weight;
        }
        if n % 2 == 1 {
            x[n / 2] = 0.0;
        }
    }

    let half_width = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(Rule {
        nodes: x.iter().map(|&t| mid + half_width * t).collect(),
        weights: w.iter().map(|&wt| half_width * wt).collect(),
    })
}

/// Discrete-ordinates angular set on μ ∈ (-1, 1).
///
/// Indices `0..N/2` carry μ > 0 (entering through x = 0), indices `N/2..N`
/// carry the mirrored μ < 0 directions.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularQuadrature {
    mu: Vec<f64>,
    weights: Vec<f64>,
}

impl AngularQuadrature {
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidQuadrature(format!(
                "angular order must be even and positive, got {n}"
            )));
        }
        let rule = gauss_legendre(n, -1.0, 1.0)?;
        let half = n / 2;
        // rule.nodes ascending: the upper half holds the positive cosines
        let mut mu = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in (half..n).rev() {
            mu.push(rule.nodes[k]);
            weights.push(rule.weights[k]);
        }
        for k in 0..half {
            mu.push(-mu[k]);
            weights.push(weights[k]);
        }
        Ok(Self { mu, weights })
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.mu.iter().copied().zip(self.weights.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_point_rule() {
        let rule = gauss_legendre(2, -1.0, 1.0).unwrap();
        assert_relative_eq!(rule.nodes[0], -1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(rule.nodes[1], 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(rule.weights[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(rule.weights[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn one_point_rule() {
        let rule = gauss_legendre(1, -1.0, 1.0).unwrap();
        assert_eq!(rule.nodes, vec![0.0]);
        assert_eq!(rule.weights, vec![2.0]);
    }

    #[test]
    fn sixteen_points_integrate_degree_thirty() {
        let rule = gauss_legendre(16, -1.0, 1.0).unwrap();
        let got = rule.integrate(|x| x.powi(30));
        assert_relative_eq!(got, 2.0 / 31.0, max_relative = 1e-12);
    }

    #[test]
    fn exactness_up_to_degree_2n_minus_1() {
        for n in [3usize, 7, 12, 33] {
            let rule = gauss_legendre(n, 0.5, 2.0).unwrap();
            for deg in 0..2 * n as i32 {
                let exact = (2f64.powi(deg + 1) - 0.5f64.powi(deg + 1)) / (deg as f64 + 1.0);
                let got = rule.integrate(|x| x.powi(deg));
                assert_relative_eq!(got, exact, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn weights_sum_to_interval_length_for_large_orders() {
        for n in [64usize, 256, 512] {
            let rule = gauss_legendre(n, 0.0, 300.0).unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert_relative_eq!(total, 300.0, max_relative = 1e-13);
            assert!(rule.nodes.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gauss_legendre(0, -1.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
        assert!(gauss_legendre(4, 2.0, 1.0).is_err());
    }

    #[test]
    fn angular_set_moments_and_ordering() {
        for n in [2usize, 4, 8, 16, 32] {
            let quad = AngularQuadrature::gauss_legendre(n).unwrap();
            let w: f64 = quad.weights().iter().sum();
            let first: f64 = quad.iter().map(|(mu, w)| w * mu).sum();
            let second: f64 = quad.iter().map(|(mu, w)| w * mu * mu).sum();
            assert!((w - 2.0).abs() < 1e-13);
            assert!(first.abs() < 1e-13);
            assert!((second - 2.0 / 3.0).abs() < 1e-13);
            assert!(quad.mu()[..n / 2].iter().all(|&mu| mu > 0.0));
            assert!(quad.mu()[n / 2..].iter().all(|&mu| mu < 0.0));
            for k in 0..n / 2 {
                assert_eq!(quad.mu()[k], -quad.mu()[k + n / 2]);
            }
        }
        assert!(AngularQuadrature::gauss_legendre(3).is_err());
    }
}
