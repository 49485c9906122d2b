//! The c-function and the Plancherel density 1/|c(iλ)|² along the real axis.

use bc_hypergroup::fieldalg::FieldTag;
use bc_hypergroup::hypfun::c_function;
use bc_hypergroup::rootdata::{derive_params, SpectralParam};
use bc_hypergroup::transform::plancherel_density;
use num_complex::Complex64;

fn main() -> bc_hypergroup::Result<()> {
    for field in FieldTag::ALL {
        let p = derive_params(field, 1, field.d() + 1.0)?;
        println!("{field:?}, mu = {}, rho = {}", p.mu, p.rho[0]);
        for y in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let c = c_function(&[Complex64::new(0.0, y)], &p).value;
            let dens = plancherel_density(&SpectralParam::real(&[y]), &p)?;
            println!(
                "  lambda = {y:>4}: c(i lambda) = {:+.6e}{:+.6e}i  density = {dens:.6e}",
                c.re, c.im
            );
        }
    }
    let p2 = derive_params(FieldTag::R, 2, 2.5)?;
    let d = plancherel_density(&SpectralParam::real(&[1.5, 0.5]), &p2)?;
    println!("R, q = 2, mu = 2.5: density at (1.5, 0.5) = {d:.6e}");
    Ok(())
}
