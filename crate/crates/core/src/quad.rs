//! One-dimensional quadrature rules used by the tensor-mode integrators.

use crate::error::{Error, Result};
use crate::special::ln_gamma_real;
use nalgebra::{DMatrix, SymmetricEigen};
use std::f64::consts::PI;

/// A quadrature rule: nodes and weights on some interval.
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

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Affine map of a rule on [-1, 1] onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> Rule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Rule {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
        }
    }
}

/// Gauss–Legendre rule of order `n` on [-1, 1] (Newton iteration on P_n).
pub fn gauss_legendre(n: usize) -> Rule {
    assert!(n > 0, "rule order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Jacobi rule of order `n` for the weight `(1-x)^alpha (1+x)^beta`
/// on [-1, 1], via the Golub–Welsch eigenvalue method.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Rule> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::domain(format!(
            "Gauss-Jacobi exponents must exceed -1 (alpha={alpha}, beta={beta})"
        )));
    }
    assert!(n > 0, "rule order must be positive");
    let ab = alpha + beta;
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let denom = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        let diag = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / denom
        };
        jac[(k, k)] = diag;
        if k + 1 < n {
            let m = kf + 1.0;
            let s = 2.0 * m + ab;
            // (m+ab)/(2m+ab-1) is taken as 1 for m = 1 when ab = -1
            let ratio = if m == 1.0 && (ab + 1.0).abs() < 1e-14 {
                1.0
            } else {
                (m + ab) / (s - 1.0)
            };
            let b2 = 4.0 * m * (m + alpha) * (m + beta) * ratio / (s * s * (s + 1.0));
            let b = b2.sqrt();
            jac[(k, k + 1)] = b;
            jac[(k + 1, k)] = b;
        }
    }
    let eig = SymmetricEigen::try_new(jac, 1e-15, 10_000)
        .ok_or_else(|| Error::NonConvergence("Golub-Welsch eigen-decomposition".into()))?;
    let ln_mu0 =
        (ab + 1.0) * 2f64.ln() + ln_gamma_real(alpha + 1.0) + ln_gamma_real(beta + 1.0) - ln_gamma_real(ab + 2.0);
    let mu0 = ln_mu0.exp();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

/// Total mass `∫_{-1}^{1} (1-x)^alpha (1+x)^beta dx`.
pub fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    ((alpha + beta + 1.0) * 2f64.ln() + ln_gamma_real(alpha + 1.0) + ln_gamma_real(beta + 1.0)
        - ln_gamma_real(alpha + beta + 2.0))
    .exp()
}

/// Gauss–Jacobi rule mapped to [0, 1] for the weight `u^a (1-u)^b`.
pub fn gauss_jacobi_unit(n: usize, a: f64, b: f64) -> Result<Rule> {
    // u = (1+x)/2: (1-x)^b (1+x)^a = 2^(a+b) (1-u)^b u^a, du = dx/2
    let r = gauss_jacobi(n, b, a)?;
    let scale = 0.5f64.powf(a + b + 1.0);
    Ok(Rule {
        nodes: r.nodes.iter().map(|&x| 0.5 * (1.0 + x)).collect(),
        weights: r.weights.iter().map(|&w| w * scale).collect(),
    })
}

/// Tanh–sinh rule on [-1, 1]. Returns nodes, weights and the distance of
/// each node to the nearest endpoint (computed without cancellation).
pub fn tanh_sinh(level_h: f64, max_k: usize) -> (Rule, Vec<f64>) {
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut gaps = Vec::new();
    for k in -(max_k as i64)..=(max_k as i64) {
        let t = k as f64 * level_h;
        let u = 0.5 * PI * t.sinh();
        let cu = u.cosh();
        let x = u.tanh();
        // 1 - |x| = 1 / (e^{|u|} cosh u)
        let gap = 1.0 / (u.abs().exp() * cu);
        let w = level_h * 0.5 * PI * t.cosh() / (cu * cu);
        if gap <= 1e-300 || w < 1e-300 {
            continue;
        }
        nodes.push(x);
        weights.push(w);
        gaps.push(gap);
    }
    (Rule { nodes, weights }, gaps)
}

/// Composite Simpson weights for `n` equispaced samples with spacing `h`.
/// An even sample count closes with Simpson's 3/8 rule on the last panel.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n];
    match n {
        0 => {}
        1 => {}
        2 => {
            w[0] = 0.5 * h;
            w[1] = 0.5 * h;
        }
        3 => {
            w[0] = h / 3.0;
            w[1] = 4.0 * h / 3.0;
            w[2] = h / 3.0;
        }
        _ => {
            let simpson_end = if n % 2 == 1 { n - 1 } else { n - 4 };
            let mut i = 0;
            while i < simpson_end {
                w[i] += h / 3.0;
                w[i + 1] += 4.0 * h / 3.0;
                w[i + 2] += h / 3.0;
                i += 2;
            }
            if n.is_multiple_of(2) {
                let j = n - 4;
                w[j] += 3.0 * h / 8.0;
                w[j + 1] += 9.0 * h / 8.0;
                w[j + 2] += 9.0 * h / 8.0;
                w[j + 3] += 3.0 * h / 8.0;
            }
        }
    }
    w
}

/// Adaptive Gauss–Legendre integration on [a, b]: each panel is accepted when
/// orders `n` and `2n` agree to `tol * panel_len / (b - a)`.
pub fn adaptive_gauss_legendre(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> Result<(f64, f64)> {
    let low = gauss_legendre(16);
    let high = gauss_legendre(32);
    let total = b - a;
    let mut stack = vec![(a, b, 0usize)];
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut failed = false;
    while let Some((lo, hi, depth)) = stack.pop() {
        let i1 = low.mapped(lo, hi).integrate(f);
        let i2 = high.mapped(lo, hi).integrate(f);
        let e = (i1 - i2).abs();
        // roundoff floor so that tiny panels can always be accepted
        let budget = tol * (hi - lo) / total + 32.0 * f64::EPSILON * i2.abs();
        if e <= budget || depth >= max_depth {
            if e > budget {
                failed = true;
            }
            sum += i2;
            err += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    if failed {
        return Err(Error::accuracy(
            format!("adaptive Gauss-Legendre did not reach tolerance {tol:e} (error {err:e})"),
            Some(sum),
        ));
    }
    Ok((sum, err))
}
