//! Numerical checks of the product formula, the hypergroup axioms, Haar
//! invariance, the classical rank-one product formula, the group-case
//! reduction and the bounded-character test.

use super::{mc_convolve, real_fn, ChamberFn, Convolver, SupportReport, TestFunction};
use crate::error::{Error, Result};
use crate::fieldalg::{arcosh_spectrum, kernel_spectrum, ChamberPoint, MatrixF};
use crate::hypfun::{f_rank1, PolynomialRoute};
use crate::measures::{
    ball_sample, haar_unitary_sample, haar_weight_slice, run_streams, stream_rng, truncated_haar_sample, BallProposal,
    QuadratureSpec, DEFAULT_STREAMS,
};
use crate::quad::{gauss_legendre, tanh_sinh, Rule};
use crate::rootdata::{co_hull_member, co_hull_member_brute, derive_params, hull_slack, BCParams};
use crate::special::beta_real;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// One line of a report: a measured residual against its budget.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub error: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value ≤ budget`.
    pub fn at_most(name: impl Into<String>, value: f64, budget: f64) -> Self {
        Check {
            name: name.into(),
            value,
            error: budget,
            pass: value <= budget,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Default budgets.
pub const PRODUCT_TENSOR_TOL: f64 = 1e-6;
pub const PRODUCT_MC_TOL: f64 = 1e-3;
pub const COMMUTATIVITY_TOL: f64 = 1e-8;
pub const ASSOCIATIVITY_TOL: f64 = 1e-3;
pub const NEUTRALITY_TOL: f64 = 1e-10;
pub const INVOLUTION_TOL: f64 = 1e-3;
pub const FJK_TOL: f64 = 1e-8;

/// What the product formula is checked for.
#[derive(Debug, Clone, PartialEq)]
pub enum ProductTarget {
    /// `φ_λ` for a spectral parameter (rank one).
    Spectral(Complex64),
    /// `P_ν(k_μ)` for a dominant weight, in the displayed polynomial form
    /// `P_ν(t)P_ν(s) = c(2ν+ρ)⁻¹ (δ_t ∗ δ_s)(P_ν)`.
    Weight(Vec<usize>),
}

/// Residual `|lhs − rhs| / max(1, |lhs|)` of the product formula.
pub fn verify_product(
    target: &ProductTarget,
    t: &ChamberPoint,
    s: &ChamberPoint,
    params: &BCParams,
    quad: QuadratureSpec,
    tol: Option<f64>,
) -> Result<Report> {
    let conv = Convolver::new(params, quad)?;
    let (lhs, est) = match target {
        ProductTarget::Spectral(lambda) => {
            if params.q != 1 {
                return Err(Error::Unsupported(
                    "generic spectral parameters need rank 1; use a dominant weight".into(),
                ));
            }
            let lf = lambda * Complex64::i();
            let phi = |x: &[f64]| f_rank1(lf, params, x[0]);
            let lhs = phi(t.coords())? * phi(s.coords())?;
            let est = conv.convolve_point(t, s, &phi)?;
            (lhs, est)
        }
        ProductTarget::Weight(nu) => {
            if nu.len() != params.q {
                return Err(Error::domain("weight length differs from the rank"));
            }
            let route = PolynomialRoute::new(nu, params)?;
            let p = |x: &[f64]| Ok(Complex64::new(route.poly.eval(x), 0.0));
            let lhs = Complex64::new(route.poly.eval(t.coords()) * route.poly.eval(s.coords()), 0.0);
            let mut est = conv.convolve_point(t, s, &p)?;
            est.value /= route.c;
            est.error /= route.c.abs();
            (lhs, est)
        }
    };
    let scale = lhs.norm().max(1.0);
    let residual = (lhs - est.value).norm() / scale;
    let budget = if quad.is_tensor() {
        tol.unwrap_or(PRODUCT_TENSOR_TOL)
    } else {
        tol.unwrap_or(PRODUCT_MC_TOL).max(3.0 * est.error / scale)
    };
    let mut r = Report::new("product");
    r.checks.push(Check::at_most("product-residual", residual, budget));
    r.checks
        .push(Check::at_most("support-violations", est.support.violations as f64, 0.0));
    Ok(r)
}

/// Sample `d(t,s;v,w)` with `v` Haar and `w` from the ball density and
/// record the support statistics.
pub fn support_scan(
    t: &ChamberPoint,
    s: &ChamberPoint,
    params: &BCParams,
    samples: usize,
    seed: u64,
) -> Result<SupportReport> {
    let bound = t.norm_inf() + s.norm_inf();
    let parts = run_streams(seed, DEFAULT_STREAMS, samples, |rng, n| {
        let mut rep = SupportReport::new(bound);
        for _ in 0..n {
            let v = haar_unitary_sample(params.field, params.q, rng);
            let w = ball_sample(params, BallProposal::SingularValue, rng)?.w;
            rep.record(&arcosh_spectrum(kernel_spectrum(t.coords(), s.coords(), &v, &w)?)?);
        }
        Ok(rep)
    })?;
    Ok(parts
        .into_iter()
        .reduce(SupportReport::merge)
        .unwrap_or(SupportReport::new(bound)))
}

/// `min ‖d(t,t;v,w)‖∞` along `v = I`, `w = −(1−ε)I`, `ε → 0`, and at
/// `(I, −I)` itself.
pub fn involution_min(t: &ChamberPoint, params: &BCParams) -> Result<f64> {
    let id = MatrixF::identity(params.field, params.q);
    let mut best = f64::INFINITY;
    for k in 1..=12 {
        let eps = 10f64.powi(-k);
        best = best.min(norm_of(t, &id, &id.scale(-(1.0 - eps)))?);
    }
    Ok(best.min(norm_of(t, &id, &id.scale(-1.0))?))
}

fn norm_of(t: &ChamberPoint, v: &MatrixF, w: &MatrixF) -> Result<f64> {
    let d = arcosh_spectrum(kernel_spectrum(t.coords(), t.coords(), v, w)?)?;
    Ok(d.iter().fold(0.0, |m: f64, x| m.max(x.abs())))
}

/// Hypergroup axioms for a test function: commutativity, associativity
/// (rank one tensor only), neutrality, support bound and `0 ∈ supp(δ_t ∗ δ_t)`.
#[allow(clippy::too_many_arguments)]
pub fn verify_axioms(
    r: &ChamberPoint,
    s: &ChamberPoint,
    t: &ChamberPoint,
    f: TestFunction,
    params: &BCParams,
    quad: QuadratureSpec,
    support_samples: usize,
    seed: u64,
) -> Result<Report> {
    let conv = Convolver::new(params, quad)?;
    let g = real_fn(move |x| f.eval(x));
    let mut rep = Report::new("axioms");

    let ts = conv.convolve_point(t, s, &g)?;
    let st = conv.convolve_point(s, t, &g)?;
    let comm_budget = if quad.is_tensor() {
        COMMUTATIVITY_TOL
    } else {
        3.0 * ts.error.hypot(st.error) + 1e-12
    };
    rep.checks.push(Check::at_most(
        "commutativity",
        (ts.value - st.value).norm(),
        comm_budget,
    ));

    if quad.is_tensor() {
        let (lhs, rhs) = associativity_sides(&conv, r.coords()[0], s.coords()[0], t.coords()[0], &f)?;
        rep.checks
            .push(Check::at_most("associativity", (lhs - rhs).abs(), ASSOCIATIVITY_TOL));
    }

    let zero = ChamberPoint::zero(params.q);
    let ft = f.eval(t.coords());
    let a = conv.convolve_point(t, &zero, &g)?.value;
    let b = conv.convolve_point(&zero, t, &g)?.value;
    rep.checks.push(Check::at_most(
        "neutrality",
        (a - ft).norm().max((b - ft).norm()),
        NEUTRALITY_TOL,
    ));

    let sup = support_scan(t, s, params, support_samples, seed)?;
    rep.checks
        .push(Check::at_most("support-violations", sup.violations as f64, 0.0));
    rep.checks.push(Check::at_most(
        "involution-min-norm",
        involution_min(t, params)?,
        INVOLUTION_TOL,
    ));
    Ok(rep)
}

/// `δ_r ∗ (δ_s ∗ δ_t)(f)` and `(δ_r ∗ δ_s) ∗ δ_t(f)` by nested tensor rules.
fn associativity_sides(conv: &Convolver, r: f64, s: f64, t: f64, f: &TestFunction) -> Result<(f64, f64)> {
    let pts = |a: f64, b: f64| {
        conv.tensor_points(a, b)
            .ok_or_else(|| Error::Unsupported("associativity needs tensor mode".into()))
    };
    let inner = |a: f64, b: f64| -> Result<f64> { Ok(pts(a, b)?.iter().map(|&(x, w)| w * f.eval(&[x])).sum()) };
    let mut lhs = 0.0;
    for (u, w) in pts(s, t)? {
        lhs += w * inner(r, u)?;
    }
    let mut rhs = 0.0;
    for (u, w) in pts(r, s)? {
        rhs += w * inner(u, t)?;
    }
    Ok((lhs, rhs))
}

/// Composite Gauss–Legendre rule on `[0, b]`.
fn composite(b: f64, panels: usize, order: usize) -> Rule {
    let base = gauss_legendre(order);
    let h = b / panels as f64;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for k in 0..panels {
        let m = base.mapped(k as f64 * h, (k + 1) as f64 * h);
        nodes.extend(m.nodes);
        weights.extend(m.weights);
    }
    Rule { nodes, weights }
}

pub const HAAR_TOL_RANK1: f64 = 1e-3;
pub const HAAR_TOL_HIGHER: f64 = 1e-2;

/// `∫_C τ_s f dω = ∫_C f dω` with `ω` the Haar weight.
pub fn verify_haar(f: TestFunction, s: &ChamberPoint, params: &BCParams, quad: QuadratureSpec) -> Result<Report> {
    let radius = f.support_radius();
    if !radius.is_finite() {
        return Err(Error::domain(
            "Haar invariance needs a compactly supported test function",
        ));
    }
    let conv = Convolver::new(params, quad)?;
    let g = real_fn(move |x| f.eval(x));
    let outer = radius + s.norm_inf();
    let mut rep = Report::new("haar");
    let (lhs, lhs_err, rhs) = if params.q == 1 {
        let rule = composite(outer, 48, 16);
        let mut lhs = 0.0;
        let mut err = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let om = haar_weight_slice(&[x], params);
            let e = conv.convolve_point(&ChamberPoint::from_any(&[x]), s, &g)?;
            lhs += w * om * e.value.re;
            err += (w * om * e.error).powi(2);
        }
        let rule = composite(radius, 48, 16);
        let rhs = rule.integrate(|x| f.eval(&[x]) * haar_weight_slice(&[x], params));
        (lhs, err.sqrt(), rhs)
    } else {
        let QuadratureSpec::MonteCarlo {
            samples,
            seed,
            streams,
            proposal,
        } = quad
        else {
            unreachable!("tensor mode is rank one only")
        };
        let (lhs, se) = haar_lhs_mc(params, s, &f, outer, samples, seed, streams, proposal)?;
        (lhs, se, chamber_integral(params, &f, radius))
    };
    let scale = rhs.abs().max(f64::MIN_POSITIVE);
    let rel = if lhs == 0.0 && rhs == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    };
    let budget = if params.q == 1 { HAAR_TOL_RANK1 } else { HAAR_TOL_HIGHER };
    rep.checks.push(Check::at_most(
        "haar-relative-difference",
        rel,
        budget.max(3.0 * lhs_err / scale),
    ));
    Ok(rep)
}

/// `∫_C f ω` over the chamber `t₁ ≥ … ≥ t_q ≥ 0` (rank two) as half the
/// integral over the square.
fn chamber_integral(params: &BCParams, f: &TestFunction, radius: f64) -> f64 {
    let rule = composite(radius, 32, 16);
    let mut sum = 0.0;
    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        for (&y, &wy) in rule.nodes.iter().zip(&rule.weights) {
            sum += wx * wy * f.eval(&[x, y]) * haar_weight_slice(&[x, y], params);
        }
    }
    0.5 * sum
}

/// Left side of the Haar identity at rank two: `t` uniform on the chamber
/// part of `[0, T]²`, one `(v, w)` draw per `t`, self-normalized.
#[allow(clippy::too_many_arguments)]
fn haar_lhs_mc(
    params: &BCParams,
    s: &ChamberPoint,
    f: &TestFunction,
    outer: f64,
    samples: usize,
    seed: u64,
    streams: usize,
    proposal: BallProposal,
) -> Result<(f64, f64)> {
    if params.q != 2 {
        return Err(Error::Unsupported(
            "Haar check by Monte Carlo is implemented for rank 2".into(),
        ));
    }
    let parts = run_streams(seed, streams, samples, |rng, n| {
        // sums of w, w², y, y², w y with y = ω f(d) w
        let mut acc = [0.0f64; 5];
        for _ in 0..n {
            let mut t = [rng.random::<f64>() * outer, rng.random::<f64>() * outer];
            if t[0] < t[1] {
                t.swap(0, 1);
            }
            let v = haar_unitary_sample(params.field, 2, rng);
            let b = ball_sample(params, proposal, rng)?;
            let dv = arcosh_spectrum(kernel_spectrum(&t, s.coords(), &v, &b.w)?)?;
            let y = haar_weight_slice(&t, params) * f.eval(&dv) * b.weight;
            acc[0] += b.weight;
            acc[1] += b.weight * b.weight;
            acc[2] += y;
            acc[3] += y * y;
            acc[4] += y * b.weight;
        }
        Ok(acc)
    })?;
    let mut a = [0.0f64; 5];
    for p in parts {
        for i in 0..5 {
            a[i] += p[i];
        }
    }
    let n = samples as f64;
    let (mw, my) = (a[0] / n, a[2] / n);
    let ratio = my / mw;
    // delta method for mean(y)/mean(w)
    let var = (a[3] - 2.0 * ratio * a[4] + ratio * ratio * a[1]) / n;
    let se = (var.max(0.0) / n).sqrt() / mw;
    let area = 0.5 * outer * outer;
    Ok((area * ratio, area * se))
}

/// The classical rank-one product formula in `(r, ψ)` coordinates,
/// `∫∫ g(arcosh|C + X r e^{iψ}|) (1−r²)^{α−β−1} r^{2β+1} (sin ψ)^{2β} dr dψ`,
/// normalized to total mass one by its closed form. `extra_r` adds a factor
/// `r^{extra_r}` to the measure.
pub(crate) fn fjk_integral(
    g: &dyn Fn(f64) -> Result<Complex64>,
    t: f64,
    s: f64,
    params: &BCParams,
    extra_r: f64,
) -> Result<Complex64> {
    let (alpha, beta) = params.jacobi_alpha_beta();
    let c = t.cosh() * s.cosh();
    let x = t.sinh() * s.sinh();
    let (rule, gaps) = tanh_sinh(1.0 / 64.0, 6 * 64);
    let mut sum = Complex64::new(0.0, 0.0);
    if params.field.dim() == 1 {
        // β = −½: r ∈ [−1, 1] with (1 − r²)^{α−½}
        let e = alpha - 0.5;
        for ((&r, &w), &gap) in rule.nodes.iter().zip(&rule.weights).zip(&gaps) {
            let dens = (gap * (2.0 - gap)).powf(e) * r.abs().powf(extra_r);
            sum += w * dens * g((c + x * r).abs().max(1.0).acosh())?;
        }
        return Ok(sum / beta_real(0.5, e + 1.0));
    }
    let e = alpha - beta - 1.0;
    let psi = gauss_legendre(64).mapped(0.0, PI);
    for ((&y, &w), &gap) in rule.nodes.iter().zip(&rule.weights).zip(&gaps) {
        // r = (1 + y)/2 with both 1 − r and r free of cancellation
        let (r, one_minus_r) = if y <= 0.0 {
            (0.5 * gap, 1.0 - 0.5 * gap)
        } else {
            (1.0 - 0.5 * gap, 0.5 * gap)
        };
        let dens = 0.5 * (one_minus_r * (1.0 + r)).powf(e) * r.powf(2.0 * beta + 1.0 + extra_r);
        let mut inner = Complex64::new(0.0, 0.0);
        for (&p, &wp) in psi.nodes.iter().zip(&psi.weights) {
            let m2 = c * c + 2.0 * c * x * r * p.cos() + x * x * r * r;
            inner += wp * p.sin().powf(2.0 * beta) * g(m2.sqrt().max(1.0).acosh())?;
        }
        sum += w * dens * inner;
    }
    let mass = 0.5 * beta_real(e + 1.0, beta + 1.0) * beta_real(0.5, beta + 0.5);
    Ok(sum / mass)
}

/// Rank-one product formula for `φ_λ` in the kernel form against the
/// classical `(r, ψ)` form.
pub fn verify_fjk_rank1(lambda: Complex64, t: f64, s: f64, params: &BCParams, quad: QuadratureSpec) -> Result<Report> {
    if params.q != 1 {
        return Err(Error::domain("the (r, ψ) product formula is rank one"));
    }
    let lf = lambda * Complex64::i();
    let phi = |x: &[f64]| f_rank1(lf, params, x[0]);
    let est = Convolver::new(params, quad)?.convolve_point(
        &ChamberPoint::from_any(&[t]),
        &ChamberPoint::from_any(&[s]),
        &phi,
    )?;
    let fjk = fjk_integral(&|x| f_rank1(lf, params, x), t, s, params, 0.0)?;
    let budget = if quad.is_tensor() { FJK_TOL } else { 3.0 * est.error };
    let mut rep = Report::new("fjk");
    rep.checks
        .push(Check::at_most("kernel-vs-fjk", (est.value - fjk).norm(), budget));
    let prod = phi(&[t])? * phi(&[s])?;
    rep.checks.push(Check::at_most(
        "fjk-vs-product",
        (fjk - prod).norm(),
        FJK_TOL.max(budget),
    ));
    Ok(rep)
}

/// Group case `μ = pd/2`: the convolution with `w` the upper-left block of a
/// Haar unitary `p×p` matrix against the ball-density sampler.
#[allow(clippy::too_many_arguments)]
pub fn group_case_oracle(
    p: usize,
    t: &ChamberPoint,
    s: &ChamberPoint,
    params: &BCParams,
    f: &ChamberFn,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let q = params.q;
    if p < 2 * q {
        return Err(Error::domain(format!("group case needs p >= 2q (p = {p}, q = {q})")));
    }
    let mu = p as f64 * params.d() / 2.0;
    if (params.mu - mu).abs() > 1e-12 {
        return Err(Error::domain(format!(
            "group case needs mu = pd/2 = {mu} (got {})",
            params.mu
        )));
    }
    let quad = QuadratureSpec::monte_carlo(samples, seed);
    let field = params.field;
    let stiefel =
        move |rng: &mut ChaCha8Rng| -> Result<(MatrixF, f64)> { Ok((truncated_haar_sample(field, p, q, rng), 1.0)) };
    let ball = move |rng: &mut ChaCha8Rng| -> Result<(MatrixF, f64)> {
        let b = ball_sample(params, BallProposal::SingularValue, rng)?;
        Ok((b.w, b.weight))
    };
    let a = mc_convolve(params, quad, t, s, &[f], samples, seed, DEFAULT_STREAMS, &stiefel)?.remove(0);
    let b = mc_convolve(
        params,
        quad,
        t,
        s,
        &[f],
        samples,
        seed ^ 0xC0FFEE,
        DEFAULT_STREAMS,
        &ball,
    )?
    .remove(0);
    let mut rep = Report::new("group-case");
    rep.checks.push(Check::at_most(
        "stiefel-vs-ball",
        (a.value - b.value).norm(),
        3.0 * a.error.hypot(b.error),
    ));
    Ok(rep)
}

/// The majorization test `Im λ ∈ co(W·ρ)` against brute-force enumeration
/// of `W` on random points away from the boundary.
pub fn verify_dual(params: &BCParams, trials: usize, seed: u64) -> Result<Report> {
    let mut rng = stream_rng(seed, 0);
    let scale = 1.5 * params.rho.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let mut agree = 0usize;
    let mut done = 0usize;
    while done < trials {
        let x: Vec<f64> = (0..params.q)
            .map(|_| (2.0 * rng.random::<f64>() - 1.0) * scale)
            .collect();
        if hull_slack(&x, &params.rho).abs() < 1e-9 {
            continue;
        }
        done += 1;
        if co_hull_member(&x, &params.rho) == co_hull_member_brute(&x, &params.rho) {
            agree += 1;
        }
    }
    let mut rep = Report::new("dual");
    rep.checks.push(Check {
        name: format!("classifier-agreement {agree}/{trials}"),
        value: (trials - agree) as f64,
        error: 0.0,
        pass: agree == trials,
    });
    Ok(rep)
}

/// Rank-one growth: `φ_λ` with `|Im λ| > ρ` exceeds `10³ |φ_λ(1)|` on
/// `[0, 10]`; with `|Im λ| < ρ` its supremum on `[0, 30]` is reached early.
pub fn verify_growth_rank1(params: &BCParams, trials: usize, seed: u64) -> Result<Report> {
    if params.q != 1 {
        return Err(Error::domain("growth check is rank one"));
    }
    let rho = params.rho[0];
    let mut rng = stream_rng(seed, 1);
    let mut rep = Report::new("growth");
    let grid = |hi: f64, n: usize| (0..=n).map(move |k| hi * k as f64 / n as f64);
    for k in 0..trials {
        let re = 3.0 * rng.random::<f64>();
        let im = rho + 1.0 + 2.0 * rng.random::<f64>();
        let lf = Complex64::new(re, im) * Complex64::i();
        let at1 = f_rank1(lf, params, 1.0)?.norm();
        let mut peak = 0.0f64;
        for x in grid(10.0, 400) {
            peak = peak.max(f_rank1(lf, params, x)?.norm());
        }
        rep.checks.push(Check {
            name: format!("unbounded-{k} lambda={re:.3}+{im:.3}i"),
            value: peak / at1.max(f64::MIN_POSITIVE),
            error: 1e3,
            pass: peak > 1e3 * at1,
        });
    }
    for k in 0..trials {
        let re = 3.0 * rng.random::<f64>();
        let im = (rho - 0.2).max(0.0) * rng.random::<f64>();
        let lf = Complex64::new(re, im) * Complex64::i();
        let (mut sup_all, mut sup_early) = (0.0f64, 0.0f64);
        for x in grid(30.0, 1200) {
            let v = f_rank1(lf, params, x)?.norm();
            if !v.is_finite() {
                return Err(Error::accuracy(format!("non-finite phi at t = {x}"), None));
            }
            sup_all = sup_all.max(v);
            if x <= 25.0 {
                sup_early = sup_early.max(v);
            }
        }
        let drift = (sup_all - sup_early) / sup_all;
        rep.checks.push(Check::at_most(
            format!("bounded-{k} lambda={re:.3}+{im:.3}i"),
            drift,
            1e-3,
        ));
    }
    Ok(rep)
}

/// Params for the group case `μ = pd/2`.
pub fn group_case_params(field: crate::fieldalg::FieldTag, q: usize, p: usize) -> Result<BCParams> {
    derive_params(field, q, p as f64 * field.d() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldalg::FieldTag;

    fn cp(x: f64) -> ChamberPoint {
        ChamberPoint::from_any(&[x])
    }

    #[test]
    fn fjk_literal_extra_r_factor_breaks_the_identity() {
        let p = derive_params(FieldTag::C, 1, 3.0).unwrap();
        let lf = Complex64::new(0.0, 1.7) * Complex64::i();
        let g = |x: f64| f_rank1(lf, &p, x);
        let prod = g(0.9).unwrap() * g(1.3).unwrap();
        let right = fjk_integral(&g, 0.9, 1.3, &p, 0.0).unwrap();
        let literal = fjk_integral(&g, 0.9, 1.3, &p, 1.0).unwrap();
        assert!((right - prod).norm() < 1e-9);
        assert!((literal - prod).norm() > 1e-3);
    }

    #[test]
    fn group_case_rejects_small_p() {
        let p = group_case_params(FieldTag::R, 2, 5).unwrap();
        let one = real_fn(|_| 1.0);
        let t = ChamberPoint::from_any(&[0.5, 0.2]);
        assert!(group_case_oracle(3, &t, &t, &p, &one, 10, 1).is_err());
    }

    #[test]
    fn axioms_rank_one_tensor() {
        let p = derive_params(FieldTag::R, 1, 2.0).unwrap();
        let rep = verify_axioms(
            &cp(0.4),
            &cp(0.7),
            &cp(1.1),
            TestFunction::gauss(0.8, 0.5),
            &p,
            QuadratureSpec::tensor(32),
            10_000,
            3,
        )
        .unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }
}
