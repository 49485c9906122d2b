//! Heckman–Opdam Jacobi polynomials of type `BC_q` for `q ≤ 2`.
//!
//! Orbit sums `m_η(t) = Σ_{ξ∈W·η} e^{2⟨ξ,t⟩}` are polynomials in
//! `y_i = cosh 2t_i`, and on the compact torus `t = iθ` in `x_i = cos 2θ_i`.
//! There the weight becomes
//! `Π_i (1−x_i)^a (1+x_i)^b · Π_{i<j} |x_i − x_j|^d`,
//! `a = k₁ + k₂ − ½`, `b = k₂ − ½`, and `P_ν` is obtained by Gram–Schmidt
//! against all `m_η`, `η < ν` in dominance order.

use crate::error::{Error, Result};
use crate::quad::{gauss_jacobi, gauss_jacobi_unit};
use crate::rootdata::{dominated_by, dominated_weights, partitions_up_to, BCParams};
use nalgebra::{DMatrix, DVector};
use std::collections::HashMap;

/// Largest `|ν|` accepted.
pub const MAX_DEGREE: usize = 6;
/// Largest rank with a polynomial route.
pub const MAX_POLY_RANK: usize = 2;
/// Gram matrices worse conditioned than this are rejected.
pub const MAX_CONDITION: f64 = 1e10;

/// `P_ν = Σ_η coeff_η m_η` with `coeff_ν = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiPolyBC {
    pub nu: Vec<usize>,
    /// `(η, coefficient)` in increasing dominance, ending with `(ν, 1)`.
    pub terms: Vec<(Vec<usize>, f64)>,
}

impl JacobiPolyBC {
    /// `P_ν(t)` at a real point.
    pub fn eval(&self, t: &[f64]) -> f64 {
        self.terms.iter().map(|(eta, c)| c * orbit_sum(eta, t)).sum()
    }

    pub fn coefficient(&self, eta: &[usize]) -> Option<f64> {
        self.terms.iter().find(|(e, _)| e.as_slice() == eta).map(|(_, c)| *c)
    }

    pub fn degree(&self) -> usize {
        self.nu.iter().sum()
    }
}

/// `m_η(t) = Σ_{ξ∈W·η} e^{2⟨ξ,t⟩}`: a sum over distinct permutations of `η`
/// of `Π_i c(η_σ(i), t_i)` with `c(0, ·) = 1`, `c(n, t) = 2 cosh(2nt)`.
pub fn orbit_sum(eta: &[usize], t: &[f64]) -> f64 {
    distinct_permutations(eta)
        .iter()
        .map(|p| {
            p.iter()
                .zip(t)
                .map(|(&n, &ti)| {
                    if n == 0 {
                        1.0
                    } else {
                        2.0 * (2.0 * n as f64 * ti).cosh()
                    }
                })
                .product::<f64>()
        })
        .sum()
}

/// Same orbit sum as a polynomial in `x_i = cos 2θ_i` (or `y_i = cosh 2t_i`):
/// `cos(2nθ) = T_n(x)`.
pub fn orbit_sum_cheb(eta: &[usize], x: &[f64]) -> f64 {
    distinct_permutations(eta)
        .iter()
        .map(|p| {
            p.iter()
                .zip(x)
                .map(|(&n, &xi)| if n == 0 { 1.0 } else { 2.0 * chebyshev_t(n, xi) })
                .product::<f64>()
        })
        .sum()
}

fn chebyshev_t(n: usize, x: f64) -> f64 {
    let (mut t0, mut t1) = (1.0, x);
    if n == 0 {
        return 1.0;
    }
    for _ in 1..n {
        let t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    t1
}

fn distinct_permutations(eta: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn rec(left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut seen = Vec::new();
        for i in 0..left.len() {
            let v = left[i];
            if seen.contains(&v) {
                continue;
            }
            seen.push(v);
            left.remove(i);
            cur.push(v);
            rec(left, cur, out);
            cur.pop();
            left.insert(i, v);
        }
    }
    rec(&mut eta.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Quadrature for the compact inner product in `x` variables.
#[derive(Debug, Clone)]
pub struct CompactRule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

/// Default number of nodes per axis.
pub const DEFAULT_COMPACT_ORDER: usize = 48;

impl CompactRule {
    /// Product Gauss–Jacobi rule for `Π (1−x_i)^a (1+x_i)^b |x₁ − x₂|^d`.
    ///
    /// For even `d` the Vandermonde factor is a polynomial and is multiplied
    /// into the integrand. For `d = 1`, see `odd_vandermonde_rule`.
    pub fn new(params: &BCParams, order: usize) -> Result<Self> {
        let a = params.k[0] + params.k[1] - 0.5;
        let b = params.k[1] - 0.5;
        let outer = gauss_jacobi(order, a, b)?;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        match params.q {
            1 => {
                for (&x, &w) in outer.nodes.iter().zip(&outer.weights) {
                    points.push(vec![x]);
                    weights.push(w);
                }
            }
            2 => {
                let d = params.d();
                if params.field.dim().is_multiple_of(2) {
                    for (&x1, &w1) in outer.nodes.iter().zip(&outer.weights) {
                        for (&x2, &w2) in outer.nodes.iter().zip(&outer.weights) {
                            points.push(vec![x1, x2]);
                            weights.push(w1 * w2 * (x1 - x2).abs().powf(d));
                        }
                    }
                } else {
                    odd_vandermonde_rule(a, b, order, &mut points, &mut weights)?;
                }
            }
            q => {
                return Err(Error::Unsupported(format!(
                    "Jacobi polynomials are implemented for rank <= {MAX_POLY_RANK} (got {q})"
                )))
            }
        }
        Ok(CompactRule { points, weights })
    }

    pub fn inner(&self, f: impl Fn(&[f64]) -> f64, g: impl Fn(&[f64]) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(x) * g(x))
            .sum()
    }
}

/// Rule for `(1−x₁)^a(1+x₁)^b(1−x₂)^a(1+x₂)^b |x₁ − x₂|` on `[−1,1]²`
/// (symmetric integrands only).
///
/// The half `x₂ < x₁` is cut into the triangles `0 < x₂ < x₁ < 1`,
/// `−1 < x₂ < x₁ < 0` and the square `[0,1]×[−1,0]`. Each triangle is
/// blown up at its singular corner (`(1,1)` resp. `(−1,−1)`) with
/// `r = 1 − x₂, s = (1 − x₁)/r` (resp. `r = 1 + x₁, s = (1 + x₂)/r`), which
/// turns the weight into `r^{2a+2} s^a (1−s)` (resp. with `b`) times a
/// smooth factor.
fn odd_vandermonde_rule(
    a: f64,
    b: f64,
    order: usize,
    points: &mut Vec<Vec<f64>>,
    weights: &mut Vec<f64>,
) -> Result<()> {
    let mut push = |x1: f64, x2: f64, w: f64| {
        points.push(vec![x1, x2]);
        weights.push(2.0 * w);
    };
    let r_up = gauss_jacobi_unit(order, 2.0 * a + 2.0, 0.0)?;
    let s_up = gauss_jacobi_unit(order, a, 1.0)?;
    for (&r, &wr) in r_up.nodes.iter().zip(&r_up.weights) {
        for (&s, &ws) in s_up.nodes.iter().zip(&s_up.weights) {
            let (x1, x2) = (1.0 - r * s, 1.0 - r);
            push(x1, x2, wr * ws * ((1.0 + x1) * (1.0 + x2)).powf(b));
        }
    }
    let r_lo = gauss_jacobi_unit(order, 2.0 * b + 2.0, 0.0)?;
    let s_lo = gauss_jacobi_unit(order, b, 1.0)?;
    for (&r, &wr) in r_lo.nodes.iter().zip(&r_lo.weights) {
        for (&s, &ws) in s_lo.nodes.iter().zip(&s_lo.weights) {
            let (x1, x2) = (-1.0 + r, -1.0 + r * s);
            push(x1, x2, wr * ws * ((1.0 - x1) * (1.0 - x2)).powf(a));
        }
    }
    let u_rule = gauss_jacobi_unit(order, a, 0.0)?;
    let v_rule = gauss_jacobi_unit(order, b, 0.0)?;
    for (&u, &wu) in u_rule.nodes.iter().zip(&u_rule.weights) {
        for (&v, &wv) in v_rule.nodes.iter().zip(&v_rule.weights) {
            let (x1, x2) = (1.0 - u, -1.0 + v);
            push(x1, x2, wu * wv * (1.0 + x1).powf(b) * (1.0 - x2).powf(a) * (x1 - x2));
        }
    }
    Ok(())
}

fn check_weight(nu: &[usize], params: &BCParams) -> Result<()> {
    if params.q > MAX_POLY_RANK {
        return Err(Error::Unsupported(format!(
            "Jacobi polynomials are implemented for rank <= {MAX_POLY_RANK}"
        )));
    }
    if nu.len() != params.q || nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::domain(format!(
            "{nu:?} is not a dominant weight of rank {}",
            params.q
        )));
    }
    if nu.iter().sum::<usize>() > MAX_DEGREE {
        return Err(Error::Capacity(format!("|nu| exceeds the degree cap {MAX_DEGREE}")));
    }
    Ok(())
}

/// `P_ν` by Gram–Schmidt with the default compact rule.
pub fn jacobi_polynomial(nu: &[usize], params: &BCParams) -> Result<JacobiPolyBC> {
    check_weight(nu, params)?;
    let rule = CompactRule::new(params, DEFAULT_COMPACT_ORDER)?;
    jacobi_polynomial_with(nu, &rule)
}

/// `P_ν` by Gram–Schmidt with an explicit quadrature rule.
pub fn jacobi_polynomial_with(nu: &[usize], rule: &CompactRule) -> Result<JacobiPolyBC> {
    let basis = dominated_weights(nu);
    let lower: Vec<&Vec<usize>> = basis.iter().filter(|e| e.as_slice() != nu).collect();
    let n = lower.len();
    if n == 0 {
        return Ok(JacobiPolyBC {
            nu: nu.to_vec(),
            terms: vec![(nu.to_vec(), 1.0)],
        });
    }
    // orbit sums at all nodes, one row per basis element
    let vals: Vec<Vec<f64>> = basis
        .iter()
        .map(|e| rule.points.iter().map(|x| orbit_sum_cheb(e, x)).collect())
        .collect();
    let ip = |i: usize, j: usize| -> f64 {
        vals[i]
            .iter()
            .zip(&vals[j])
            .zip(&rule.weights)
            .map(|((a, b), w)| a * b * w)
            .sum()
    };
    let top = basis.len() - 1;
    let g = DMatrix::from_fn(n, n, &ip);
    let rhs = DVector::from_fn(n, |i, _| -ip(i, top));
    let sv = g.singular_values();
    let cond = sv.max() / sv.min();
    if cond.is_nan() || cond > MAX_CONDITION {
        return Err(Error::accuracy(
            format!("Gram matrix for {nu:?} has condition number {cond:e}"),
            None,
        ));
    }
    let c = g
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::accuracy(format!("singular Gram matrix for {nu:?}"), None))?;
    let mut terms: Vec<(Vec<usize>, f64)> = lower.iter().enumerate().map(|(i, e)| ((*e).clone(), c[i])).collect();
    terms.push((nu.to_vec(), 1.0));
    Ok(JacobiPolyBC { nu: nu.to_vec(), terms })
}

/// All `P_ν` with `|ν| ≤ max_degree`, built once and shared read-only.
#[derive(Debug, Clone)]
pub struct JacobiTable {
    pub params: BCParams,
    polys: HashMap<Vec<usize>, JacobiPolyBC>,
}

impl JacobiTable {
    pub fn new(params: &BCParams, max_degree: usize) -> Result<Self> {
        if max_degree > MAX_DEGREE {
            return Err(Error::Capacity(format!("degree cap is {MAX_DEGREE}")));
        }
        check_weight(&vec![0; params.q], params)?;
        let rule = CompactRule::new(params, DEFAULT_COMPACT_ORDER)?;
        let mut polys = HashMap::new();
        for nu in partitions_up_to(params.q, max_degree) {
            let p = jacobi_polynomial_with(&nu, &rule)?;
            polys.insert(nu, p);
        }
        Ok(JacobiTable {
            params: params.clone(),
            polys,
        })
    }

    pub fn get(&self, nu: &[usize]) -> Option<&JacobiPolyBC> {
        self.polys.get(nu)
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// Largest off-diagonal inner product `|⟨P_ν, m_η⟩|`, `η < ν`, relative to
/// `⟨m_ν, m_ν⟩`; zero up to quadrature error for a correct `P_ν`.
pub fn orthogonality_defect(p: &JacobiPolyBC, rule: &CompactRule) -> f64 {
    let pv = |x: &[f64]| -> f64 { p.terms.iter().map(|(e, c)| c * orbit_sum_cheb(e, x)).sum() };
    let scale = rule.inner(|x| orbit_sum_cheb(&p.nu, x), |x| orbit_sum_cheb(&p.nu, x));
    dominated_weights(&p.nu)
        .iter()
        .filter(|e| e.as_slice() != p.nu.as_slice() && dominated_by(e, &p.nu))
        .map(|e| rule.inner(pv, |x| orbit_sum_cheb(e, x)).abs() / scale)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldalg::FieldTag;
    use crate::rootdata::derive_params;

    #[test]
    fn orbit_sums_match_definition() {
        let t = [0.7, 0.2];
        // (1,0): e^{±2t1} + e^{±2t2}
        let direct = 2.0 * (1.4f64).cosh() + 2.0 * (0.4f64).cosh();
        assert!((orbit_sum(&[1, 0], &t) - direct).abs() < 1e-14);
        // (1,1): Σ e^{2(±t1 ± t2)}
        let direct = 4.0 * (1.4f64).cosh() * (0.4f64).cosh();
        assert!((orbit_sum(&[1, 1], &t) - direct).abs() < 1e-13);
        assert_eq!(orbit_sum(&[0, 0], &t), 1.0);
        let y: Vec<f64> = t.iter().map(|v| (2.0 * v).cosh()).collect();
        assert!((orbit_sum_cheb(&[3, 1], &y) - orbit_sum(&[3, 1], &t)).abs() < 1e-10);
    }

    #[test]
    fn trivial_weight() {
        let p = derive_params(FieldTag::R, 2, 2.0).unwrap();
        let p0 = jacobi_polynomial(&[0, 0], &p).unwrap();
        assert_eq!(p0.eval(&[1.0, 0.5]), 1.0);
    }

    #[test]
    fn polynomials_are_orthogonal() {
        for f in FieldTag::ALL {
            let p = derive_params(f, 2, 2.0 * f.d() + 0.3).unwrap();
            let rule = CompactRule::new(&p, 64).unwrap();
            for nu in [[1, 0], [1, 1], [2, 0], [2, 1], [3, 0]] {
                let poly = jacobi_polynomial(&nu, &p).unwrap();
                let def = orthogonality_defect(&poly, &rule);
                assert!(def < 1e-10, "{f} {nu:?}: {def:e}");
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let p = derive_params(FieldTag::R, 2, 2.0).unwrap();
        assert!(matches!(jacobi_polynomial(&[7, 0], &p), Err(Error::Capacity(_))));
        assert!(jacobi_polynomial(&[0, 1], &p).is_err());
        let p3 = derive_params(FieldTag::R, 3, 4.0).unwrap();
        assert!(matches!(jacobi_polynomial(&[1, 0, 0], &p3), Err(Error::Unsupported(_))));
    }
}
