//! Evaluation of `F(λ, k_μ; t)` and `φ_λ^μ = F(iλ, k_μ; ·)`.
//!
//! Routes:
//! * rank one, any `λ`: Gauss `₂F₁` in `−sinh² t`;
//! * `λ = 2ν + ρ` with `ν` a partition (`q ≤ 2`, `|ν| ≤ 6`): `c(λ) P_ν(t)`;
//! * generic `λ`, any rank: the leading Harish-Chandra term, flagged as
//!   asymptotic only and never chosen automatically.

mod cfunc;
mod gauss;
mod jacobi;

pub use cfunc::{c_function, inverse_c_abs_sqr, CFunctionValue};
pub use gauss::gauss_2f1;
pub use jacobi::{
    jacobi_polynomial, jacobi_polynomial_with, orbit_sum, orbit_sum_cheb, orthogonality_defect, CompactRule,
    JacobiPolyBC, JacobiTable, DEFAULT_COMPACT_ORDER, MAX_CONDITION, MAX_DEGREE, MAX_POLY_RANK,
};

use crate::error::{Error, Result};
use crate::fieldalg::ChamberPoint;
use crate::rootdata::{co_hull_member, BCParams, SpectralParam, WeylGroupBC};
use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

pub(crate) fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// Evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Auto,
    #[serde(rename = "rank1-2f1")]
    Rank1Gauss,
    JacobiPoly,
    HcLeading,
}

/// A value of `F` together with the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypergeomValue {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub path: Route,
    /// Set on the Harish-Chandra route, which is only asymptotically correct.
    pub asymptotic_only: bool,
}

/// Distance to an integer below which `(λ_i − ρ_i)/2` counts as integral.
const LATTICE_TOL: f64 = 1e-9;

/// Rank-one `F(λ, k; t) = ₂F₁((ρ+λ)/2, (ρ−λ)/2; μ; −sinh² t)`.
pub fn f_rank1(lambda: Complex64, params: &BCParams, t: f64) -> Result<Complex64> {
    if params.q != 1 {
        return Err(Error::Unsupported("the Gauss route needs rank 1".into()));
    }
    if t == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let rho = params.rho[0];
    let a = (lambda + rho) / 2.0;
    let b = (rho - lambda) / 2.0;
    let z = -t.sinh().powi(2);
    gauss_2f1(a, b, Complex64::new(params.mu, 0.0), z)
}

/// Rank-one spherical function `φ_λ^μ(t) = F(iλ, k_μ; t)`, i.e. the Jacobi
/// function with `(α, β) = (μ − 1, d/2 − 1)`.
pub fn phi_rank1(lambda: Complex64, params: &BCParams, t: f64) -> Result<HypergeomValue> {
    Ok(HypergeomValue {
        value: f_rank1(lambda * Complex64::i(), params, t.abs())?,
        path: Route::Rank1Gauss,
        asymptotic_only: false,
    })
}

/// The partition `ν` with `w·λ = 2ν + ρ` for some `w ∈ W`, if any.
pub fn dominant_weight_of(lambda: &[Complex64], params: &BCParams) -> Option<Vec<usize>> {
    if lambda.len() != params.q || lambda.iter().any(|z| z.im.abs() > LATTICE_TOL) {
        return None;
    }
    let mut re: Vec<f64> = lambda.iter().map(|z| z.re.abs()).collect();
    re.sort_by(|a, b| b.total_cmp(a));
    let mut nu = Vec::with_capacity(re.len());
    for (l, r) in re.iter().zip(&params.rho) {
        let n = (l - r) / 2.0;
        if n < -LATTICE_TOL || (n - n.round()).abs() > LATTICE_TOL {
            return None;
        }
        nu.push(n.round() as usize);
    }
    if nu.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(nu)
}

/// `F(2ν + ρ, k; ·) = c(2ν + ρ) P_ν`, with the polynomial built once.
#[derive(Debug, Clone)]
pub struct PolynomialRoute {
    pub nu: Vec<usize>,
    pub c: f64,
    pub poly: JacobiPolyBC,
}

impl PolynomialRoute {
    pub fn new(nu: &[usize], params: &BCParams) -> Result<Self> {
        let poly = jacobi_polynomial(nu, params)?;
        let c = c_function(&params.weight_to_spectral(nu), params);
        if !c.finite {
            return Err(Error::domain(format!("c-function has a pole at 2{nu:?} + rho")));
        }
        Ok(PolynomialRoute {
            nu: nu.to_vec(),
            c: c.value.re,
            poly,
        })
    }

    /// `F(2ν + ρ, k; t)`.
    pub fn eval(&self, t: &[f64]) -> f64 {
        self.c * self.poly.eval(t)
    }
}

/// Leading Harish-Chandra term `Σ_{w∈W} c(wλ) e^{⟨wλ − ρ, t⟩}`; valid only
/// asymptotically in the open chamber.
pub fn hc_leading(lambda: &[Complex64], params: &BCParams, t: &[f64]) -> Result<Complex64> {
    let open = t.windows(2).all(|w| w[0] > w[1]) && t.last().is_some_and(|&x| x > 0.0);
    if !open {
        return Err(Error::Unsupported(
            "the Harish-Chandra expansion needs t in the open chamber".into(),
        ));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for w in WeylGroupBC::new(params.q).iter() {
        let wl = w.apply(lambda);
        let c = c_function(&wl, params);
        if !c.finite {
            return Err(Error::domain("c-function pole in the Harish-Chandra sum"));
        }
        if c.value.norm() == 0.0 {
            continue;
        }
        let expo: Complex64 = wl.iter().zip(&params.rho).zip(t).map(|((l, r), ti)| (l - r) * ti).sum();
        sum += c.value * expo.exp();
    }
    Ok(sum)
}

/// `F(λ, k_μ; t)` by the requested route.
pub fn hypergeom_eval(
    lambda: &[Complex64],
    params: &BCParams,
    t: &ChamberPoint,
    route: Route,
) -> Result<HypergeomValue> {
    if lambda.len() != params.q || t.rank() != params.q {
        return Err(Error::domain("rank mismatch between lambda, t and params"));
    }
    let route = match route {
        Route::Auto if params.q == 1 => Route::Rank1Gauss,
        Route::Auto => {
            if dominant_weight_of(lambda, params).is_some() {
                Route::JacobiPoly
            } else {
                return Err(Error::Unsupported(format!(
                    "no exact route for generic lambda at rank {}; request the \
                     asymptotic hc-leading route explicitly",
                    params.q
                )));
            }
        }
        r => r,
    };
    let value = |v: Complex64| HypergeomValue {
        value: v,
        path: route,
        asymptotic_only: route == Route::HcLeading,
    };
    if t.norm_inf() == 0.0 {
        return Ok(value(Complex64::new(1.0, 0.0)));
    }
    match route {
        Route::Rank1Gauss => Ok(value(f_rank1(lambda[0], params, t.coords()[0])?)),
        Route::JacobiPoly => {
            let nu = dominant_weight_of(lambda, params).ok_or_else(|| {
                Error::Unsupported(format!(
                    "lambda is not of the form 2nu + rho with nu a partition (rho = {:?})",
                    params.rho
                ))
            })?;
            let r = PolynomialRoute::new(&nu, params)?;
            Ok(value(Complex64::new(r.eval(t.coords()), 0.0)))
        }
        Route::HcLeading => Ok(value(hc_leading(lambda, params, t.coords())?)),
        Route::Auto => unreachable!(),
    }
}

/// `φ_λ^μ(t) = F(iλ, k_μ; t)`.
pub fn phi(lambda: &SpectralParam, params: &BCParams, t: &ChamberPoint, route: Route) -> Result<HypergeomValue> {
    hypergeom_eval(&lambda.times_i(), params, t, route)
}

/// Outcome of the boundedness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundedness {
    Bounded,
    Unbounded,
}

/// `φ_λ` is bounded iff `Im λ ∈ co(W·ρ)`; the boundary counts as bounded.
pub fn bounded_classify(lambda: &SpectralParam, params: &BCParams) -> Boundedness {
    if co_hull_member(&lambda.im(), &params.rho) {
        Boundedness::Bounded
    } else {
        Boundedness::Unbounded
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldalg::FieldTag;
    use crate::rootdata::derive_params;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_basics() {
        let p = derive_params(FieldTag::C, 1, 3.0).unwrap();
        assert_eq!(phi_rank1(c(1.7, 0.0), &p, 0.0).unwrap().value, c(1.0, 0.0));
        // φ at λ = −iρ is the constant 1
        let rho = p.rho[0];
        for t in [0.3, 2.0, 15.0] {
            let v = phi_rank1(c(0.0, -rho), &p, t).unwrap().value;
            assert!((v - 1.0).norm() < 1e-13, "{t}: {v}");
        }
        for (l, t) in [(c(0.4, 0.3), 1.1), (c(2.5, -0.7), 4.0), (c(0.0, 1.3), 0.2)] {
            let a = f_rank1(l, &p, t).unwrap();
            let b = f_rank1(-l, &p, t).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm());
        }
    }

    #[test]
    fn c_function_is_the_rank_one_asymptote() {
        let p = derive_params(FieldTag::R, 1, 2.3).unwrap();
        let lambda = c(3.1, 0.0);
        let t = 25.0;
        let f = f_rank1(lambda, &p, t).unwrap();
        let asym = f * (-(lambda - p.rho[0]) * t).exp();
        let cv = c_function(&[lambda], &p).value;
        assert!((asym - cv).norm() < 1e-6 * cv.norm(), "{asym} vs {cv}");
    }

    #[test]
    fn rank_two_unit_character() {
        let p = derive_params(FieldTag::R, 2, 2.0).unwrap();
        let t = ChamberPoint::new(vec![0.9, 0.4]).unwrap();
        let v = hypergeom_eval(&p.rho_complex(), &p, &t, Route::Auto).unwrap();
        assert!((v.value - 1.0).norm() < 1e-12);
        assert_eq!(v.path, Route::JacobiPoly);
        let generic = [c(1.3, 0.2), c(0.4, 0.0)];
        assert!(matches!(
            hypergeom_eval(&generic, &p, &t, Route::Auto),
            Err(Error::Unsupported(_))
        ));
        assert!(
            hypergeom_eval(&generic, &p, &t, Route::HcLeading)
                .unwrap()
                .asymptotic_only
        );
    }

    #[test]
    fn lattice_detection() {
        let p = derive_params(FieldTag::R, 2, 2.0).unwrap();
        assert_eq!(dominant_weight_of(&[c(4.0, 0.0), c(1.0, 0.0)], &p), Some(vec![1, 0]));
        assert_eq!(dominant_weight_of(&[c(-1.0, 0.0), c(6.0, 0.0)], &p), Some(vec![2, 0]));
        assert_eq!(dominant_weight_of(&[c(3.0, 0.0), c(1.0, 0.0)], &p), None);
    }

    #[test]
    fn boundedness_examples() {
        let p = derive_params(FieldTag::R, 1, 2.0).unwrap();
        let rho = p.rho[0];
        assert_eq!(bounded_classify(&SpectralParam::real(&[3.0]), &p), Boundedness::Bounded);
        assert_eq!(
            bounded_classify(&SpectralParam(vec![c(0.0, rho)]), &p),
            Boundedness::Bounded
        );
        assert_eq!(
            bounded_classify(&SpectralParam(vec![c(0.0, rho + 1.0)]), &p),
            Boundedness::Unbounded
        );
    }
}
