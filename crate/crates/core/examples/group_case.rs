//! At μ = pd/2 the ball density is the law of the q×q block of a Haar
//! unitary p×p matrix; compare both samplers through the convolution.

use bc_hypergroup::fieldalg::{ChamberPoint, FieldTag};
use bc_hypergroup::hypergroup::verify::{group_case_oracle, group_case_params};
use bc_hypergroup::hypergroup::{real_fn, TestFunction};

fn main() -> bc_hypergroup::Result<()> {
    let f = TestFunction::gauss(0.8, 0.5);
    let g = real_fn(move |x| f.eval(x));
    for (field, q, p) in [
        (FieldTag::R, 1, 4),
        (FieldTag::C, 1, 4),
        (FieldTag::H, 1, 4),
        (FieldTag::R, 2, 5),
    ] {
        let params = group_case_params(field, q, p)?;
        let t = ChamberPoint::new((0..q).map(|i| 0.9 / (1 + 2 * i) as f64).collect())?;
        let s = ChamberPoint::new((0..q).map(|i| 0.6 / (1 + 2 * i) as f64).collect())?;
        let rep = group_case_oracle(p, &t, &s, &params, &g, 200_000, 5)?;
        let c = &rep.checks[0];
        println!(
            "{field:?} q = {q} p = {p} (mu = {}): |difference| {:.2e} vs 3 SE {:.2e}",
            params.mu, c.value, c.error
        );
    }
    Ok(())
}
