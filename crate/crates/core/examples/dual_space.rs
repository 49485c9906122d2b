//! Which φ_λ are bounded: the majorization test for Im λ ∈ co(W·ρ), and
//! the growth of φ_λ on either side of the boundary in rank one.

use bc_hypergroup::fieldalg::FieldTag;
use bc_hypergroup::hypfun::{bounded_classify, f_rank1};
use bc_hypergroup::rootdata::{derive_params, in_dual, SpectralParam};
use num_complex::Complex64;

fn main() -> bc_hypergroup::Result<()> {
    let p = derive_params(FieldTag::R, 2, 2.0)?;
    println!("R, q = 2, mu = 2: rho = {:?}", p.rho);
    for s in ["1;0.5", "1+0.5i;0.3-0.2i", "0.5i;1.6i", "2i;0.1i", "1+1i;1-1i"] {
        let l = SpectralParam::parse(s)?;
        println!(
            "  lambda = {s:<16} {:?}, in dual: {}",
            bounded_classify(&l, &p),
            in_dual(&l, &p)
        );
    }

    let p1 = derive_params(FieldTag::C, 1, 2.0)?;
    let rho = p1.rho[0];
    for im in [0.5 * rho, rho, 1.5 * rho] {
        // φ_λ = F(iλ), so Im λ enters F as a real part
        let l = Complex64::new(-im, 1.0);
        let peak = (0..=40)
            .map(|k| f_rank1(l, &p1, 0.25 * k as f64).map(|v| v.norm()))
            .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))?;
        println!("C, mu = 2: Im lambda = {im:.2} (rho = {rho}): max |phi| on [0, 10] = {peak:.3e}");
    }
    Ok(())
}
