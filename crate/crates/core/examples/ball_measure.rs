//! The ball density Δ(I − w*w)^{μ−γ}: its normalization κ_μ and weighted
//! samples of the kernel argument d(t, s; v, w).

use bc_hypergroup::fieldalg::{d_argument, ChamberPoint, FieldTag};
use bc_hypergroup::measures::{ball_sample, haar_unitary_sample, kappa, stream_rng, BallProposal, QuadratureSpec};
use bc_hypergroup::rootdata::derive_params;
use std::f64::consts::PI;

fn main() -> bc_hypergroup::Result<()> {
    for mu in [1.5, 2.0, 3.5] {
        let p = derive_params(FieldTag::C, 1, mu)?;
        let tensor = kappa(&p, &QuadratureSpec::tensor(48))?;
        let mc = kappa(&p, &QuadratureSpec::monte_carlo(200_000, 1))?;
        println!(
            "C, mu = {mu}: kappa tensor {:.10}, MC {:.5} +- {:.1e}, pi/(mu-1) = {:.10}",
            tensor.value,
            mc.value,
            mc.error,
            PI / (mu - 1.0)
        );
    }

    let p = derive_params(FieldTag::H, 2, 7.0)?;
    let t = ChamberPoint::new(vec![1.0, 0.4])?;
    let s = ChamberPoint::new(vec![0.7, 0.2])?;
    let mut rng = stream_rng(42, 0);
    for _ in 0..5 {
        let v = haar_unitary_sample(p.field, p.q, &mut rng);
        let b = ball_sample(&p, BallProposal::SingularValue, &mut rng)?;
        let d = d_argument(&t, &s, &v, &b.w)?;
        println!("H, q = 2: d = {:.4?} weight {:.4}", d.coords(), b.weight);
    }
    Ok(())
}
