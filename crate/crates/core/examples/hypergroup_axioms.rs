//! Commutativity, associativity, neutral element, support bound and the
//! involution for a test function.

use bc_hypergroup::fieldalg::{ChamberPoint, FieldTag};
use bc_hypergroup::hypergroup::verify::verify_axioms;
use bc_hypergroup::hypergroup::TestFunction;
use bc_hypergroup::measures::QuadratureSpec;
use bc_hypergroup::rootdata::derive_params;

fn main() -> bc_hypergroup::Result<()> {
    let pt = |x: &[f64]| ChamberPoint::new(x.to_vec());
    let f: TestFunction = "gauss:0.8,0.5".parse()?;
    let p = derive_params(FieldTag::C, 1, 2.5)?;
    let rep = verify_axioms(
        &pt(&[0.4])?,
        &pt(&[0.7])?,
        &pt(&[1.1])?,
        f,
        &p,
        QuadratureSpec::tensor(48),
        100_000,
        1,
    )?;
    for c in &rep.checks {
        println!("rank 1 {:<20} {:.2e} <= {:.1e}: {}", c.name, c.value, c.error, c.pass);
    }
    let p2 = derive_params(FieldTag::R, 2, 2.3)?;
    let rep = verify_axioms(
        &pt(&[0.5, 0.2])?,
        &pt(&[0.7, 0.3])?,
        &pt(&[1.1, 0.4])?,
        f,
        &p2,
        QuadratureSpec::monte_carlo(100_000, 2),
        100_000,
        2,
    )?;
    for c in &rep.checks {
        println!("rank 2 {:<20} {:.2e} <= {:.1e}: {}", c.name, c.value, c.error, c.pass);
    }
    Ok(())
}
