//! φ_λ(t) φ_λ(s) against the hypergroup convolution (δ_t ∗ δ_s)(φ_λ), rank one
//! by tensor quadrature and rank two (polynomial case) by Monte Carlo.

use bc_hypergroup::fieldalg::{ChamberPoint, FieldTag};
use bc_hypergroup::hypergroup::verify::{verify_product, ProductTarget};
use bc_hypergroup::measures::QuadratureSpec;
use bc_hypergroup::rootdata::derive_params;
use num_complex::Complex64;

fn main() -> bc_hypergroup::Result<()> {
    let pt = |x: &[f64]| ChamberPoint::new(x.to_vec());
    for field in FieldTag::ALL {
        let p = derive_params(field, 1, field.d() / 2.0 + 1.5)?;
        let rep = verify_product(
            &ProductTarget::Spectral(Complex64::new(1.7, 0.6)),
            &pt(&[0.9])?,
            &pt(&[1.3])?,
            &p,
            QuadratureSpec::tensor(48),
            None,
        )?;
        println!("rank 1 {field:?}: residual {:.2e}", rep.checks[0].value);
    }
    let p = derive_params(FieldTag::R, 2, 2.0)?;
    let rep = verify_product(
        &ProductTarget::Weight(vec![1, 1]),
        &pt(&[0.7, 0.3])?,
        &pt(&[1.1, 0.4])?,
        &p,
        QuadratureSpec::monte_carlo(200_000, 3),
        None,
    )?;
    let c = &rep.checks[0];
    println!(
        "rank 2 R, nu = (1,1): residual {:.2e} (budget {:.2e}) pass = {}",
        c.value, c.error, c.pass
    );
    Ok(())
}
