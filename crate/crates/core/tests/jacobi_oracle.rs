//! Jacobi polynomials against the Laplacian eigen-equation
//! `L F = (⟨λ,λ⟩ − ⟨ρ,ρ⟩) F`, with
//! `L = Δ + Σ_{α>0} k_α coth(⟨α,t⟩/2) ∂_α` on the root system `2·BC_q`.
//! Derivatives of the orbit sums are taken analytically.

use bc_hypergroup::fieldalg::FieldTag;
use bc_hypergroup::hypfun::{c_function, gauss_2f1, jacobi_polynomial, JacobiPolyBC};
use bc_hypergroup::rootdata::{derive_params, partitions_up_to, BCParams};
use num_complex::Complex64;

/// Value, gradient and diagonal second derivatives of `m_η` at `t`.
fn orbit_jet(eta: &[usize], t: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let q = t.len();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permute(&mut eta.to_vec(), 0, &mut perms);
    perms.sort();
    perms.dedup();
    let (mut v, mut g, mut h) = (0.0, vec![0.0; q], vec![0.0; q]);
    for p in &perms {
        // factor i: value, first, second derivative
        let f: Vec<[f64; 3]> = p
            .iter()
            .zip(t)
            .map(|(&n, &ti)| {
                if n == 0 {
                    [1.0, 0.0, 0.0]
                } else {
                    let w = 2.0 * n as f64;
                    [
                        2.0 * (w * ti).cosh(),
                        2.0 * w * (w * ti).sinh(),
                        2.0 * w * w * (w * ti).cosh(),
                    ]
                }
            })
            .collect();
        let prod =
            |skip: usize, k: usize| -> f64 { (0..q).map(|i| if i == skip { f[i][k] } else { f[i][0] }).product() };
        v += prod(usize::MAX, 0);
        for i in 0..q {
            g[i] += prod(i, 1);
            h[i] += prod(i, 2);
        }
    }
    (v, g, h)
}

fn permute(x: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == x.len() {
        out.push(x.clone());
        return;
    }
    for i in k..x.len() {
        x.swap(k, i);
        permute(x, k + 1, out);
        x.swap(k, i);
    }
}

fn residual(p: &JacobiPolyBC, params: &BCParams, t: &[f64]) -> f64 {
    let q = t.len();
    let (mut v, mut g, mut h) = (0.0, vec![0.0; q], vec![0.0; q]);
    let mut scale = 0.0;
    for (eta, c) in &p.terms {
        let (ev, eg, eh) = orbit_jet(eta, t);
        v += c * ev;
        scale += (c * ev).abs();
        for i in 0..q {
            g[i] += c * eg[i];
            h[i] += c * eh[i];
        }
    }
    let [k1, k2, k3] = params.k;
    let mut lf: f64 = h.iter().sum();
    for i in 0..q {
        lf += k1 / t[i].tanh() * 2.0 * g[i];
        lf += k2 / (2.0 * t[i]).tanh() * 4.0 * g[i];
        for j in i + 1..q {
            lf += k3 / (t[i] - t[j]).tanh() * 2.0 * (g[i] - g[j]);
            lf += k3 / (t[i] + t[j]).tanh() * 2.0 * (g[i] + g[j]);
        }
    }
    let lambda: Vec<f64> = p.nu.iter().zip(&params.rho).map(|(&n, r)| 2.0 * n as f64 + r).collect();
    let eig: f64 = lambda.iter().map(|l| l * l).sum::<f64>() - params.rho.iter().map(|r| r * r).sum::<f64>();
    (lf - eig * v).abs() / (scale * (1.0 + eig.abs()))
}

#[test]
fn rank_two_polynomials_are_laplacian_eigenfunctions() {
    let points = [[0.9, 0.35], [0.41, 0.07], [1.6, 1.1]];
    let mut worst: f64 = 0.0;
    for f in FieldTag::ALL {
        for mu in [f.d() * 2.0 - 0.5 * f.d() + 0.05, f.d() * 2.0 + 0.7, 9.3] {
            let params = derive_params(f, 2, mu).unwrap();
            for nu in partitions_up_to(2, 4) {
                let p = jacobi_polynomial(&nu, &params).unwrap();
                for t in &points {
                    let r = residual(&p, &params, t);
                    worst = worst.max(r);
                    assert!(r < 1e-8, "{f} mu={mu} nu={nu:?} t={t:?}: residual {r:e}");
                }
            }
        }
    }
    println!("worst eigen-equation residual {worst:e}");
}

#[test]
fn normalized_at_origin() {
    for f in FieldTag::ALL {
        for q in 1..=2 {
            let params = derive_params(f, q, f.d() * q as f64 + 0.4).unwrap();
            for nu in partitions_up_to(q, 4) {
                let p = jacobi_polynomial(&nu, &params).unwrap();
                let c = c_function(&params.weight_to_spectral(&nu), &params).value.re;
                let at0 = c * p.eval(&vec![0.0; q]);
                assert!((at0 - 1.0).abs() < 1e-10, "{f} q={q} nu={nu:?}: {at0}");
            }
        }
    }
}

#[test]
fn rank_one_matches_terminating_gauss_series() {
    for f in FieldTag::ALL {
        for mu in [f.d() / 2.0 + 0.1, 3.3] {
            let params = derive_params(f, 1, mu).unwrap();
            let rho = params.rho[0];
            for n in 0..=6usize {
                let p = jacobi_polynomial(&[n], &params).unwrap();
                let c = c_function(&params.weight_to_spectral(&[n]), &params).value.re;
                for t in [0.2, 0.8, 1.7] {
                    let a = Complex64::new(rho + n as f64, 0.0);
                    let b = Complex64::new(-(n as f64), 0.0);
                    let want = gauss_2f1(a, b, Complex64::new(mu, 0.0), -f64::sinh(t).powi(2))
                        .unwrap()
                        .re;
                    let got = c * p.eval(&[t]);
                    assert!(
                        (got - want).abs() < 1e-10 * want.abs().max(1.0),
                        "{f} mu={mu} n={n} t={t}: {got} vs {want}"
                    );
                }
            }
        }
    }
}
