//! Rank-one transform: calibrate the inversion constant once, then round trip,
//! Parseval and the translate as multiplication by φ_λ(s).

use bc_hypergroup::fieldalg::FieldTag;
use bc_hypergroup::hypergroup::TestFunction;
use bc_hypergroup::rootdata::derive_params;
use bc_hypergroup::transform::{SpectralGrid, Transform};
use num_complex::Complex64;

fn main() -> bc_hypergroup::Result<()> {
    let p = derive_params(FieldTag::C, 1, 3.0)?;
    let f = TestFunction::gauss(1.2, 0.4);
    let mut tr = Transform::new(&p, f.support_radius(), SpectralGrid::new(24.0, 512)?)?;
    let cal = tr.calibrate(TestFunction::gauss(0.0, 0.5))?;
    println!(
        "inversion constant {:.12} (2^(2 rho)/(2 pi) = {:.12})",
        cal.constant, cal.theory
    );
    println!("round trip error {:.2e}", tr.round_trip_error(f)?);
    println!("Parseval error   {:.2e}", tr.parseval_error(f)?);

    let table = tr.forward(&move |t| Ok(Complex64::new(f.profile(t), 0.0)))?;
    for k in (0..table.values.len()).step_by(64) {
        println!("  Ff(i {:>6.3}) = {:+.6e}", table.lambda_im[k], table.values[k].re);
    }
    let back = tr.inverse(&table, &[0.6, 1.2, 1.8])?;
    for (t, v) in [0.6, 1.2, 1.8].iter().zip(back) {
        println!("  f({t}) = {:.8}, inverse {:.8}", f.profile(*t), v.re);
    }
    Ok(())
}
