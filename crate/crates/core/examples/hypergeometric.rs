//! Evaluate φ_λ on a few points: the rank-one Gauss route and the rank-two
//! polynomial route at λ = 2ν + ρ.

use bc_hypergroup::fieldalg::{ChamberPoint, FieldTag};
use bc_hypergroup::hypfun::{hypergeom_eval, phi, Route};
use bc_hypergroup::rootdata::{derive_params, SpectralParam};

fn main() -> bc_hypergroup::Result<()> {
    let p = derive_params(FieldTag::C, 1, 3.0)?;
    let lambda = SpectralParam::parse("1.7")?;
    for t in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let v = phi(&lambda, &p, &ChamberPoint::new(vec![t])?, Route::Auto)?;
        println!("C, mu = 3: phi_1.7({t}) = {:.12}", v.value.re);
    }

    let p2 = derive_params(FieldTag::R, 2, 2.0)?;
    for nu in [[1, 0], [1, 1], [2, 0]] {
        let l = p2.weight_to_spectral(&nu);
        let v = hypergeom_eval(&l, &p2, &ChamberPoint::new(vec![0.3, 0.1])?, Route::JacobiPoly)?;
        println!("R, mu = 2: F(2{nu:?} + rho; (0.3, 0.1)) = {:.12}", v.value.re);
    }
    Ok(())
}
