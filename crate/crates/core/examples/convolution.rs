//! Convolution of point measures applied to a test function, and the
//! translate τ_s f on a grid.

use bc_hypergroup::fieldalg::{ChamberPoint, FieldTag};
use bc_hypergroup::hypergroup::{real_fn, Convolver, TestFunction};
use bc_hypergroup::measures::QuadratureSpec;
use bc_hypergroup::rootdata::derive_params;

fn main() -> bc_hypergroup::Result<()> {
    let f = TestFunction::gauss(0.8, 0.3);
    let g = real_fn(move |x| f.eval(x));

    let p = derive_params(FieldTag::H, 1, 3.0)?;
    let conv = Convolver::new(&p, QuadratureSpec::tensor(48))?;
    let s = ChamberPoint::new(vec![0.6])?;
    let tau = conv.translate(&g, &s);
    for k in 0..=8 {
        let t = 0.25 * k as f64;
        let e = tau(&ChamberPoint::new(vec![t])?)?;
        println!(
            "H, mu = 3: tau_0.6 f({t:.2}) = {:.10} (err {:.1e})",
            e.value.re, e.error
        );
    }

    let p2 = derive_params(FieldTag::C, 2, 4.0)?;
    let mc = Convolver::new(&p2, QuadratureSpec::monte_carlo(100_000, 7))?;
    let e = mc.convolve_point(
        &ChamberPoint::new(vec![0.9, 0.3])?,
        &ChamberPoint::new(vec![0.5, 0.2])?,
        &g,
    )?;
    println!(
        "C, q = 2, mu = 4: (delta_t * delta_s)(f) = {:.5} +- {:.1e}, support max {:.3} <= {:.3}",
        e.value.re, e.error, e.support.max_norm, e.support.bound
    );
    Ok(())
}
