use crate::rootdata::{positive_roots, BCParams};
use crate::special::{is_gamma_pole, ln_gamma, rgamma};
use num_complex::Complex64;
use serde::Serialize;

/// Value of the c-function; `finite` is false on the pole set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CFunctionValue {
    #[serde(serialize_with = "crate::hypfun::ser_complex")]
    pub value: Complex64,
    pub finite: bool,
}

/// Gamma arguments `(numerator, denominator)` of `c̃(λ, k)`, one pair per
/// positive root: `Γ(⟨λ,α∨⟩ + k(α/2)/2) / Γ(⟨λ,α∨⟩ + k(α/2)/2 + k(α))`.
fn gamma_arguments(lambda: &[Complex64], params: &BCParams) -> Vec<(Complex64, Complex64)> {
    positive_roots(params.q)
        .into_iter()
        .map(|(alpha, kind)| {
            let norm2: f64 = alpha.iter().map(|a| a * a).sum();
            let coroot: Complex64 = alpha.iter().zip(lambda).map(|(&a, &l)| l * (2.0 * a / norm2)).sum();
            let x = coroot + 0.5 * kind.half_multiplicity(&params.k);
            (x, x + kind.multiplicity(&params.k))
        })
        .collect()
}

fn ln_c_tilde(lambda: &[Complex64], params: &BCParams) -> Option<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (num, den) in gamma_arguments(lambda, params) {
        if is_gamma_pole(num) {
            return None;
        }
        if is_gamma_pole(den) {
            return Some(Complex64::new(f64::NEG_INFINITY, 0.0));
        }
        acc += ln_gamma(num) - ln_gamma(den);
    }
    Some(acc)
}

/// `c(λ, k) = c̃(λ, k) / c̃(ρ(k), k)`, normalized so that `c(ρ) = 1`.
pub fn c_function(lambda: &[Complex64], params: &BCParams) -> CFunctionValue {
    let rho = params.rho_complex();
    let norm = ln_c_tilde(&rho, params).expect("c-function is finite at rho");
    match ln_c_tilde(lambda, params) {
        None => CFunctionValue {
            value: Complex64::new(f64::INFINITY, 0.0),
            finite: false,
        },
        Some(l) if l.re == f64::NEG_INFINITY => CFunctionValue {
            value: Complex64::new(0.0, 0.0),
            finite: true,
        },
        Some(l) => CFunctionValue {
            value: (l - norm).exp(),
            finite: true,
        },
    }
}

/// `1/|c(λ, k)|²` computed with reciprocal Gamma functions, so it is finite
/// (and continuous) across the poles of `c`.
pub fn inverse_c_abs_sqr(lambda: &[Complex64], params: &BCParams) -> f64 {
    let rho = params.rho_complex();
    let norm = ln_c_tilde(&rho, params).expect("c-function is finite at rho");
    let mut log_scale = 0.0;
    for (num, den) in gamma_arguments(lambda, params) {
        // Γ(den)/Γ(num) = rgamma(num) · exp(lnΓ(den)); den never sits on a pole
        // for real positive multiplicities and Re λ ≥ 0
        let r = rgamma(num);
        if r.norm() == 0.0 {
            return 0.0;
        }
        log_scale += r.norm().ln() + ln_gamma(den).re;
    }
    (2.0 * (log_scale + norm.re)).exp()
}
