//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test --release --test acceptance`.

use bc_hypergroup::fieldalg::{ChamberPoint, FieldTag};
use bc_hypergroup::hypergroup::verify::{
    group_case_oracle, group_case_params, verify_axioms, verify_dual, verify_fjk_rank1, verify_growth_rank1,
    verify_haar, verify_product, ProductTarget, Report,
};
use bc_hypergroup::hypergroup::{Convolver, TestFunction};
use bc_hypergroup::hypfun::{c_function, f_rank1, hc_leading, hypergeom_eval, Route};
use bc_hypergroup::measures::{kappa, QuadratureSpec};
use bc_hypergroup::rootdata::{derive_params, BCParams};
use bc_hypergroup::special::ln_gamma_real;
use bc_hypergroup::transform::{SpectralGrid, Transform};
use bc_hypergroup::Result;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::time::Instant;

const MC: usize = 1_000_000;
const SEED: u64 = 20_240_601;

type Criterion = fn() -> Result<Verdict>;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Result<Verdict> {
    Ok(Verdict { pass, detail })
}

fn pt(x: &[f64]) -> ChamberPoint {
    ChamberPoint::new(x.to_vec()).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn failures(reports: &[(String, Report)]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|(label, r)| {
            r.checks
                .iter()
                .filter(|c| !c.pass)
                .map(move |c| format!("{label} {}: {:e} > {:e}", c.name, c.value, c.error))
        })
        .collect()
}

fn summarize(reports: Vec<(String, Report)>) -> Result<Verdict> {
    let bad = failures(&reports);
    let n: usize = reports.iter().map(|(_, r)| r.checks.len()).sum();
    if bad.is_empty() {
        verdict(true, format!("{n} checks"))
    } else {
        verdict(false, bad.join("; "))
    }
}

fn worst_check(reports: &[(String, Report)], name: &str) -> f64 {
    reports
        .iter()
        .flat_map(|(_, r)| r.checks.iter())
        .filter(|c| c.name == name)
        .map(|c| c.value)
        .fold(0.0, f64::max)
}

/// Rank-one product formula in tensor mode, absolute residual.
fn criterion_1() -> Result<Verdict> {
    let ts = [0.3, 0.9, 1.7];
    let mut worst = 0.0f64;
    let mut cases = 0;
    for field in FieldTag::ALL {
        let d = field.d();
        let gamma = d / 2.0 + 1.0;
        for mu in [gamma - 0.4, 2.5, d] {
            let p = derive_params(field, 1, mu)?;
            let conv = Convolver::new(&p, QuadratureSpec::tensor(48))?;
            for lambda in [c(0.0, -p.rho[0]), c(0.8, 0.0), c(1.7, 0.6)] {
                let lf = lambda * Complex64::i();
                let phi = |x: &[f64]| f_rank1(lf, &p, x[0]);
                for &t in &ts {
                    for &s in &ts {
                        let lhs = phi(&[t])? * phi(&[s])?;
                        let rhs = conv.convolve_point(&pt(&[t]), &pt(&[s]), &phi)?.value;
                        worst = worst.max((lhs - rhs).norm());
                        cases += 1;
                    }
                }
            }
        }
    }
    verdict(
        worst <= 1e-6,
        format!("{cases} cases, max |phi(t)phi(s) - conv| = {worst:.2e} (<= 1e-6)"),
    )
}

/// Rank-two polynomial product formula, Monte Carlo.
fn criterion_2() -> Result<Verdict> {
    let mut reports = Vec::new();
    for (i, nu) in [[1, 0], [1, 1], [2, 0]].iter().enumerate() {
        for (j, mu) in [1.8, 2.0, 3.0].into_iter().enumerate() {
            let p = derive_params(FieldTag::R, 2, mu)?;
            let quad = QuadratureSpec::monte_carlo(MC, SEED + (3 * i + j) as u64);
            let rep = verify_product(
                &ProductTarget::Weight(nu.to_vec()),
                &pt(&[0.7, 0.3]),
                &pt(&[1.1, 0.4]),
                &p,
                quad,
                None,
            )?;
            reports.push((format!("nu={nu:?} mu={mu}"), rep));
        }
    }
    let worst = worst_check(&reports, "product-residual");
    let mut v = summarize(reports)?;
    v.detail = format!("{}, max residual {worst:.2e} (budget max(1e-3, 3 SE))", v.detail);
    Ok(v)
}

/// Hypergroup axioms.
fn criterion_3() -> Result<Verdict> {
    let f = TestFunction::gauss(0.8, 0.5);
    let mut reports = Vec::new();
    for field in FieldTag::ALL {
        let p = derive_params(field, 1, field.d() / 2.0 + 1.3)?;
        let rep = verify_axioms(
            &pt(&[0.4]),
            &pt(&[0.7]),
            &pt(&[1.1]),
            f,
            &p,
            QuadratureSpec::tensor(48),
            MC,
            SEED,
        )?;
        reports.push((format!("{field:?} q=1"), rep));
    }
    for field in FieldTag::ALL {
        let p = derive_params(field, 2, 1.5 * field.d() + 0.8)?;
        let quad = QuadratureSpec::monte_carlo(200_000, SEED + 1);
        let rep = verify_axioms(
            &pt(&[0.5, 0.2]),
            &pt(&[0.7, 0.3]),
            &pt(&[1.1, 0.4]),
            f,
            &p,
            quad,
            MC,
            SEED,
        )?;
        reports.push((format!("{field:?} q=2"), rep));
    }
    let comm = worst_check(&reports[..3], "commutativity");
    let assoc = worst_check(&reports, "associativity");
    let neutral = worst_check(&reports, "neutrality");
    let viol = worst_check(&reports, "support-violations");
    let mut v = summarize(reports)?;
    v.detail = format!(
        "{}, commutativity {comm:.1e}, associativity {assoc:.1e}, neutrality {neutral:.1e}, support violations {viol} over 6 x 1e6",
        v.detail
    );
    Ok(v)
}

/// Haar invariance.
fn criterion_4() -> Result<Verdict> {
    let f = TestFunction::gauss(1.0, 0.4);
    let mut reports = Vec::new();
    for field in FieldTag::ALL {
        let p = derive_params(field, 1, field.d() / 2.0 + 1.0)?;
        reports.push((
            format!("{field:?} q=1"),
            verify_haar(f, &pt(&[0.6]), &p, QuadratureSpec::tensor(48))?,
        ));
    }
    let p = derive_params(FieldTag::R, 2, 2.3)?;
    reports.push((
        "R q=2".to_string(),
        verify_haar(f, &pt(&[0.6, 0.2]), &p, QuadratureSpec::monte_carlo(MC, SEED))?,
    ));
    let r1 = worst_check(&reports[..3], "haar-relative-difference");
    let r2 = worst_check(&reports[3..], "haar-relative-difference");
    let mut v = summarize(reports)?;
    v.detail = format!("{}, rank 1 {r1:.1e} (<= 1e-3), rank 2 {r2:.1e} (<= 1e-2)", v.detail);
    Ok(v)
}

/// Kernel integral against the (r, ψ) parametrization.
fn criterion_5() -> Result<Verdict> {
    let mut reports = Vec::new();
    for (field, mu) in [
        (FieldTag::R, 1.3),
        (FieldTag::R, 2.5),
        (FieldTag::C, 1.6),
        (FieldTag::C, 3.0),
    ] {
        let p = derive_params(field, 1, mu)?;
        for (lambda, t, s) in [(c(1.7, 0.0), 0.9, 1.3), (c(0.8, 0.4), 0.3, 1.7)] {
            reports.push((
                format!("{field:?} mu={mu} lambda={lambda}"),
                verify_fjk_rank1(lambda, t, s, &p, QuadratureSpec::tensor(48))?,
            ));
        }
    }
    let tensor_worst = worst_check(&reports, "kernel-vs-fjk");
    let p = derive_params(FieldTag::H, 1, 3.5)?;
    reports.push((
        "H mu=3.5".to_string(),
        verify_fjk_rank1(c(1.7, 0.0), 0.9, 1.3, &p, QuadratureSpec::monte_carlo(MC, SEED))?,
    ));
    let mut v = summarize(reports)?;
    v.detail = format!(
        "{}, d=1,2 tensor max {tensor_worst:.1e} (<= 1e-8), d=4 within 3 SE",
        v.detail
    );
    Ok(v)
}

/// Group case: truncated Haar unitary against the ball density.
fn criterion_6() -> Result<Verdict> {
    let f = TestFunction::gauss(0.8, 0.5);
    let g = move |x: &[f64]| Ok(Complex64::new(f.eval(x), 0.0));
    let mut reports = Vec::new();
    for field in FieldTag::ALL {
        let p = group_case_params(field, 1, 4)?;
        reports.push((
            format!("{field:?} q=1 p=4"),
            group_case_oracle(4, &pt(&[0.9]), &pt(&[0.6]), &p, &g, MC, SEED)?,
        ));
    }
    let p = group_case_params(FieldTag::R, 2, 5)?;
    reports.push((
        "R q=2 p=5".to_string(),
        group_case_oracle(5, &pt(&[0.9, 0.3]), &pt(&[0.6, 0.2]), &p, &g, MC, SEED)?,
    ));
    summarize(reports)
}

/// κ_μ against its closed forms.
fn criterion_7() -> Result<Verdict> {
    let mut worst_mc = 0.0f64;
    let mut worst_tensor = 0.0f64;
    for mu in [0.8, 1.5, 2.5, 4.0] {
        let p = derive_params(FieldTag::R, 1, mu)?;
        let exact = PI.sqrt() * (ln_gamma_real(mu - 0.5) - ln_gamma_real(mu)).exp();
        worst_tensor = worst_tensor.max(rel(kappa(&p, &QuadratureSpec::tensor(48))?.value, exact));
        worst_mc = worst_mc.max(rel(kappa(&p, &QuadratureSpec::monte_carlo(MC, SEED))?.value, exact));
    }
    for mu in [1.3, 2.0, 3.5] {
        let p = derive_params(FieldTag::C, 1, mu)?;
        let exact = PI / (mu - 1.0);
        worst_tensor = worst_tensor.max(rel(kappa(&p, &QuadratureSpec::tensor(48))?.value, exact));
        worst_mc = worst_mc.max(rel(kappa(&p, &QuadratureSpec::monte_carlo(MC, SEED))?.value, exact));
    }
    verdict(
        worst_mc <= 1e-2 && worst_tensor <= 1e-8,
        format!("MC max rel {worst_mc:.1e} (<= 1e-2), tensor max rel {worst_tensor:.1e} (<= 1e-8)"),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Dual-space classifier and rank-one growth.
fn criterion_8() -> Result<Verdict> {
    let mut reports = Vec::new();
    for q in 1..=3 {
        let p = derive_params(FieldTag::R, q, 0.5 * q as f64 + 1.7)?;
        reports.push((format!("q={q}"), verify_dual(&p, 1000, SEED + q as u64)?));
    }
    for field in FieldTag::ALL {
        let p = derive_params(field, 1, field.d() / 2.0 + 1.0)?;
        reports.push((format!("growth {field:?}"), verify_growth_rank1(&p, 5, SEED)?));
    }
    summarize(reports)
}

/// Transform round trip, Parseval and multiplicativity.
fn criterion_9() -> Result<Verdict> {
    let reference = TestFunction::gauss(0.0, 0.5);
    let f = TestFunction::gauss(1.2, 0.4);
    let mut lines = Vec::new();
    let mut pass = true;
    for (field, mu) in [(FieldTag::R, 2.0), (FieldTag::C, 3.0), (FieldTag::H, 5.5)] {
        let p = derive_params(field, 1, mu)?;
        let mut cal = Transform::new(&p, reference.support_radius(), SpectralGrid::new(24.0, 512)?)?;
        let constant = cal.calibrate(reference)?.constant;
        let mut tr = Transform::new(&p, f.support_radius(), SpectralGrid::new(24.0, 512)?)?;
        tr.set_constant(constant);
        let rt = tr.round_trip_error(f)?;
        let pv = tr.parseval_error(f)?;
        pass &= rt <= 1e-3 && pv <= 1e-3;
        lines.push(format!("{field:?} roundtrip {rt:.1e} parseval {pv:.1e}"));
    }
    for (field, mu) in [(FieldTag::C, 3.0), (FieldTag::H, 5.5)] {
        let p = derive_params(field, 1, mu)?;
        let m = multiplicativity(&p, TestFunction::gauss(0.8, 0.4), 0.7)?;
        pass &= m <= 1e-4;
        lines.push(format!("{field:?} multiplicativity {m:.1e}"));
    }
    verdict(pass, format!("{} (<= 1e-3, 1e-3, 1e-4)", lines.join(", ")))
}

fn multiplicativity(p: &BCParams, f: TestFunction, s: f64) -> Result<f64> {
    let tr = Transform::new(p, f.support_radius() + s, SpectralGrid::new(24.0, 512)?)?;
    let conv = Convolver::new(p, QuadratureSpec::tensor(48))?;
    let g = move |x: &[f64]| Ok(Complex64::new(f.eval(x), 0.0));
    let sp = pt(&[s]);
    let translated =
        |t: f64| -> Result<Complex64> { Ok(conv.convolve_point(&ChamberPoint::from_any(&[t]), &sp, &g)?.value) };
    let plain = |t: f64| Ok(Complex64::new(f.profile(t), 0.0));
    let tables = tr.forward_many(&[&plain, &translated])?;
    let expected = tr.multiply_by_kernel(&tables[0], s)?;
    let scale = tables[0].values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(tables[1]
        .values
        .iter()
        .zip(&expected.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale)
}

/// Conjugation, exponential bound, domination, c-function asymptotics.
fn criterion_10() -> Result<Verdict> {
    let ts = [0.0, 0.05, 0.3, 0.9, 1.7, 3.0, 6.0, 12.0];
    let mut conj_worst = 0.0f64;
    let mut bound_violations = 0;
    let mut dom_violations = 0;
    let mut points = 0;
    for field in FieldTag::ALL {
        for mu in [field.d() / 2.0 + 0.3, field.d() + 1.5] {
            let p = derive_params(field, 1, mu)?;
            for a in [-3.0, -1.1, 0.0, 0.4, 2.2] {
                for b in [-6.0, -1.5, 0.0, 0.7, 3.3, 9.0] {
                    let l = c(a, b);
                    for &t in &ts {
                        let v = f_rank1(l, &p, t)?;
                        let w = f_rank1(l.conj(), &p, t)?;
                        conj_worst = conj_worst.max((v.conj() - w).norm() / v.norm().max(1.0));
                        if v.norm() > 2f64.sqrt() * (a.abs() * t).exp() * (1.0 + 1e-12) {
                            bound_violations += 1;
                        }
                        if v.norm() > f_rank1(c(a, 0.0), &p, t)?.re * (1.0 + 1e-10) + 1e-14 {
                            dom_violations += 1;
                        }
                        points += 1;
                    }
                }
            }
        }
    }
    // rank two on the polynomial lattice: |W| = 8
    for field in FieldTag::ALL {
        let p = derive_params(field, 2, 1.5 * field.d() + 0.7)?;
        for nu in [[1, 0], [1, 1], [2, 0], [3, 1]] {
            let l = p.weight_to_spectral(&nu);
            for t in [[0.4, 0.1], [1.2, 0.3], [2.5, 2.5], [3.0, 0.0]] {
                let v = hypergeom_eval(&l, &p, &pt(&t), Route::JacobiPoly)?.value;
                let expo: f64 = l.iter().zip(&t).map(|(x, y)| x.re * y).sum();
                if v.norm() > 8f64.sqrt() * expo.exp() * (1.0 + 1e-12) {
                    bound_violations += 1;
                }
                points += 1;
            }
        }
    }
    // c-function from the leading term at t = 25
    let mut c_worst = 0.0f64;
    for field in FieldTag::ALL {
        let p = derive_params(field, 1, field.d() / 2.0 + 0.9)?;
        for l in [c(0.8, 0.0), c(1.7, 0.6), c(2.5, -1.0)] {
            let t = 25.0;
            let extracted = f_rank1(l, &p, t)? * ((p.rho[0] - l) * t).exp();
            let cv = c_function(&[l], &p).value;
            c_worst = c_worst.max((extracted - cv).norm() / cv.norm());
            let hc = hc_leading(&[l], &p, &[t])?;
            c_worst = c_worst.max((f_rank1(l, &p, t)? - hc).norm() / hc.norm());
        }
    }
    let pass = conj_worst <= 1e-10 && bound_violations == 0 && dom_violations == 0 && c_worst <= 1e-4;
    verdict(
        pass,
        format!(
            "conjugation {conj_worst:.1e} (<= 1e-10), bound violations {bound_violations}, domination violations {dom_violations} over {points} points, c-extraction {c_worst:.1e} (<= 1e-4)"
        ),
    )
}

fn main() {
    // `cargo test` passes libtest flags; a name filter selects criteria by number
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(&str, Criterion); 10] = [
        ("rank-1 product formula", criterion_1),
        ("rank-2 polynomial product formula", criterion_2),
        ("hypergroup axioms", criterion_3),
        ("Haar invariance", criterion_4),
        ("FJK cross-check", criterion_5),
        ("group-case oracle", criterion_6),
        ("kappa closed forms", criterion_7),
        ("dual-space classifier and growth", criterion_8),
        ("transform round trip, Parseval, multiplicativity", criterion_9),
        ("function-theory invariants", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(v) => (v.pass, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {} {name}: {detail} [{:.1}s]",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
