//! Gauss hypergeometric function `₂F₁(a, b; c; z)` on the negative real axis.
//!
//! | region            | method                                            |
//! |-------------------|---------------------------------------------------|
//! | `|z| ≤ ½`         | direct series                                     |
//! | `½ < |z| ≤ 2`     | Pfaff: `(1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))`       |
//! | `¼ ≤ |z| ≤ 2`, `|Im(a−b)| ≥ 8` | connection formula in `1/(1−z)`      |
//! | `|z| > 2`         | connection formula in `1/z`                       |
//!
//! The `1/z` formula has removable poles when `a − b` is an integer; there
//! the value is obtained by symmetric Richardson extrapolation in `b`.

use crate::error::{Error, Result};
use crate::special::{gamma, is_gamma_pole, rgamma};
use num_complex::{Complex, Complex64};
use twofloat::TwoFloat;

const SERIES_TOL: f64 = 1e-17;
/// Largest `|z|` handled by the Pfaff series; beyond it the `1/z` series
/// converges faster.
const PFAFF_LIMIT: f64 = 2.0;
/// Above this `|Im(a − b)|` the Pfaff series cancels badly while the
/// `1/(1−z)` expansion does not.
const WIDE_SPLIT: f64 = 8.0;
const MAX_TERMS: usize = 20_000;
/// Largest tolerated ratio of peak term to sum in double precision.
const LOSS_BUDGET: f64 = 1e4;
const DD_SERIES_TOL: f64 = 1e-30;
const DD_LOSS_LIMIT: f64 = 1e20;

/// Distance from an integer below which `a − b` is treated as degenerate.
const DEGENERATE_TOL: f64 = 2.5e-5;

/// `₂F₁(a, b; c; z)` for real `z ≤ 0`.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if is_gamma_pole(c) {
        return Err(Error::domain(format!("2F1: c = {c} is a non-positive integer")));
    }
    if z.is_nan() || z > 0.0 {
        return Err(Error::domain(format!("2F1 is only evaluated for z <= 0 (got {z})")));
    }
    if z == 0.0 || a == Complex64::new(0.0, 0.0) || b == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if let Some(m) = nonpositive_integer(a).or_else(|| nonpositive_integer(b)) {
        return Ok(terminating(a, b, c, z, m));
    }
    if (-PFAFF_LIMIT..=-0.25).contains(&z) && (a - b).im.abs() >= WIDE_SPLIT {
        reflected_connection(a, b, c, z)
    } else if z >= -0.5 {
        series(a, b, c, z)
    } else if z >= -PFAFF_LIMIT {
        let x = z / (z - 1.0);
        let f = series(a, c - b, c, x)?;
        Ok(f * Complex64::new(1.0 - z, 0.0).powc(-a))
    } else {
        large_argument(a, b, c, z)
    }
}

fn nonpositive_integer(x: Complex64) -> Option<usize> {
    if is_gamma_pole(x) {
        Some((-x.re).round() as usize)
    } else {
        None
    }
}

fn terminating(a: Complex64, b: Complex64, c: Complex64, z: f64, m: usize) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..m {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
    }
    sum
}

/// Power series, `|x| < 1`. When the largest term exceeds the sum by more
/// than `LOSS_BUDGET` (large imaginary parameters make the terms swing
/// like `e^{|λ|√x}`) the sum is redone in double-double arithmetic.
pub(crate) fn series(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    let (sum, peak) = series_f64(a, b, c, x)?;
    if peak <= LOSS_BUDGET * sum.norm() {
        return Ok(sum);
    }
    let (sum, peak) = series_dd(a, b, c, x)?;
    if peak > DD_LOSS_LIMIT * sum.norm() {
        return Err(Error::accuracy(
            format!("2F1 series cancels beyond double-double precision at x = {x}"),
            Some(sum.norm()),
        ));
    }
    Ok(sum)
}

fn settled(a: Complex64, b: Complex64, c: Complex64, nf: f64, r: f64) -> bool {
    r < 1.0 && nf > a.norm() + b.norm() + c.norm()
}

fn series_f64(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<(Complex64, f64)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut peak = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        term *= ratio;
        sum += term;
        peak = peak.max(term.norm());
        let r = ratio.norm();
        // once the ratio settles below one the tail is at most |t| r / (1 − r)
        if settled(a, b, c, nf, r) {
            let tail = term.norm() * r / (1.0 - r);
            if tail <= SERIES_TOL * sum.norm() || tail == 0.0 {
                return Ok((sum, peak));
            }
        }
    }
    Err(Error::accuracy(
        format!("2F1 series did not converge at x = {x}"),
        Some(sum.norm()),
    ))
}

type Cdd = Complex<TwoFloat>;

fn dd(z: Complex64) -> Cdd {
    Complex::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

fn dd_norm(z: Cdd) -> f64 {
    z.re.hi().hypot(z.im.hi())
}

// twofloat's own division is only accurate to double precision
fn div_real(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::from(q1) + q2 + q3
}

fn div_dd(n: Cdd, d: Cdd) -> Cdd {
    let den = d.re * d.re + d.im * d.im;
    let p = n * d.conj();
    Complex::new(div_real(p.re, den), div_real(p.im, den))
}

fn series_dd(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<(Complex64, f64)> {
    let (ad, bd, cd, xd) = (dd(a), dd(b), dd(c), TwoFloat::from(x));
    let one = TwoFloat::from(1.0);
    let mut term = Complex::new(one, TwoFloat::from(0.0));
    let mut sum = term;
    let mut peak = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = TwoFloat::from(n as f64);
        let num = (ad + nf) * (bd + nf);
        let den = (cd + nf) * (nf + one);
        let ratio = div_dd(num, den);
        term = term * ratio * xd;
        sum += term;
        let tn = dd_norm(term);
        peak = peak.max(tn);
        let r = dd_norm(ratio) * x.abs();
        if settled(a, b, c, n as f64, r) {
            let tail = tn * r / (1.0 - r);
            if tail <= DD_SERIES_TOL * dd_norm(sum) || tail == 0.0 {
                let out = Complex64::new(sum.re.hi() + sum.re.lo(), sum.im.hi() + sum.im.lo());
                return Ok((out, peak));
            }
        }
    }
    Err(Error::accuracy(
        format!("2F1 series did not converge at x = {x}"),
        Some(dd_norm(sum)),
    ))
}

fn near_integer(x: Complex64) -> bool {
    x.im.abs() < DEGENERATE_TOL && (x.re - x.re.round()).abs() < DEGENERATE_TOL
}

fn large_argument(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if near_integer(a - b) {
        // the b-derivatives scale like ln|z|; balance the h⁶ truncation
        // against the 1/h roundoff of the cancelling pole terms
        let l = 1.0 + (-z).ln();
        let h = (f64::EPSILON / l.powi(6)).powf(1.0 / 7.0).max(4.0 * DEGENERATE_TOL);
        let g = |s: f64| -> Result<Complex64> {
            Ok((connection(a, b + s * h, c, z)? + connection(a, b - s * h, c, z)?) / 2.0)
        };
        return Ok((15.0 * g(1.0)? - 6.0 * g(2.0)? + g(3.0)?) / 10.0);
    }
    connection(a, b, c, z)
}

fn connection(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let w = 1.0 / z;
    let mz = Complex64::new(-z, 0.0);
    let gc = gamma(c);
    let t1 = gc * gamma(b - a) * rgamma(b) * rgamma(c - a);
    let t2 = gc * gamma(a - b) * rgamma(a) * rgamma(c - b);
    let mut out = Complex64::new(0.0, 0.0);
    if t1.norm() != 0.0 {
        out += t1 * mz.powc(-a) * series_or_poly(a, a - c + one, a - b + one, w)?;
    }
    if t2.norm() != 0.0 {
        out += t2 * mz.powc(-b) * series_or_poly(b, b - c + one, b - a + one, w)?;
    }
    Ok(out)
}

/// Connection formula in `1/(1−z)`; needs `a − b` away from the integers.
fn reflected_connection(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let x = 1.0 / (1.0 - z);
    let base = Complex64::new(1.0 - z, 0.0);
    let gc = gamma(c);
    let t1 = gc * gamma(b - a) * rgamma(b) * rgamma(c - a);
    let t2 = gc * gamma(a - b) * rgamma(a) * rgamma(c - b);
    let mut out = Complex64::new(0.0, 0.0);
    if t1.norm() != 0.0 {
        out += t1 * base.powc(-a) * series_or_poly(a, c - b, a - b + one, x)?;
    }
    if t2.norm() != 0.0 {
        out += t2 * base.powc(-b) * series_or_poly(b, c - a, b - a + one, x)?;
    }
    Ok(out)
}

fn series_or_poly(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    if let Some(m) = nonpositive_integer(a).or_else(|| nonpositive_integer(b)) {
        Ok(terminating(a, b, c, x, m))
    } else {
        series(a, b, c, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(
            gauss_2f1(c(1.3, 0.2), c(0.0, 0.0), c(2.0, 0.0), -5.0).unwrap(),
            c(1.0, 0.0)
        );
        assert_eq!(
            gauss_2f1(c(1.3, 0.2), c(0.7, 0.0), c(2.0, 0.0), 0.0).unwrap(),
            c(1.0, 0.0)
        );
        assert!(matches!(
            gauss_2f1(c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), -0.3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn logarithm_identity() {
        // 2F1(1,1;2;z) = -ln(1-z)/z, across all three regions
        for z in [-0.3, -1.0, -5.0, -40.0, -1e6] {
            let f = gauss_2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), z).unwrap();
            let exact = -(1.0 - z).ln() / z;
            assert!((f.re - exact).abs() < 1e-12 * exact && f.im.abs() < 1e-12, "{z}: {f}");
        }
    }

    #[test]
    fn power_identity() {
        // 2F1(a, b; b; z) = (1 − z)^{−a}
        for z in [-0.2, -3.0, -100.0] {
            let a = c(0.7, 1.1);
            let f = gauss_2f1(a, c(2.3, 0.0), c(2.3, 0.0), z).unwrap();
            let exact = Complex64::new(1.0 - z, 0.0).powc(-a);
            assert!((f - exact).norm() < 1e-12 * exact.norm(), "{z}");
        }
    }

    #[test]
    fn terminating_series_is_a_polynomial() {
        // 2F1(-2, b; c; z) = 1 − 2bz/c + b(b+1)z²/(c(c+1))
        let (b, cc, z) = (1.5, 3.0, -20.0);
        let f = gauss_2f1(c(-2.0, 0.0), c(b, 0.0), c(cc, 0.0), z).unwrap();
        let exact = 1.0 - 2.0 * b * z / cc + b * (b + 1.0) * z * z / (cc * (cc + 1.0));
        assert!((f.re - exact).abs() < 1e-12 * exact.abs());
    }
}
