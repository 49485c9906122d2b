use super::haar::haar_full_sample;
use crate::error::{Error, Result};
use crate::fieldalg::{singular_spectrum, FieldTag, MatrixF, Quaternion};
use crate::rootdata::BCParams;
use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

/// Proposal used for importance sampling of `Δ(I − w*w)^{μ−γ} dw`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BallProposal {
    /// `w = U diag(σ) V` with `σ_i² ~ Beta(d/2, μ−γ+1)` independent and
    /// `U, V` Haar; the weight is the Vandermonde factor
    /// `Π_{i<j} |σ_i² − σ_j²|^d`. Finite variance for every `μ > γ − 1`;
    /// exact (weight 1) for `q = 1`.
    #[default]
    SingularValue,
    /// Uniform on the ball by rejection from the entrywise cube, weight
    /// `Δ(I − w*w)^{μ−γ}`. Infinite variance once `μ ≤ γ − ½`.
    Uniform,
}

/// A weighted point of the matrix ball.
#[derive(Debug, Clone)]
pub struct BallSample {
    pub w: MatrixF,
    pub weight: f64,
}

/// Cube proposals tried before giving up.
pub const MAX_REJECTION_TRIES: usize = 2_000_000;

/// Draw one weighted sample of the ball density.
pub fn ball_sample<R: Rng + ?Sized>(params: &BCParams, proposal: BallProposal, rng: &mut R) -> Result<BallSample> {
    match proposal {
        BallProposal::SingularValue => singular_value_sample(params, rng),
        BallProposal::Uniform => {
            let (w, sv) = uniform_ball_point(params.field, params.q, rng)?;
            let a = params.ball_exponent();
            let weight = sv.iter().map(|s| (1.0 - s * s).powf(a)).product();
            Ok(BallSample { w, weight })
        }
    }
}

fn singular_value_sample<R: Rng + ?Sized>(params: &BCParams, rng: &mut R) -> Result<BallSample> {
    let (field, q) = (params.field, params.q);
    let d = field.d();
    let beta =
        Beta::new(d / 2.0, params.ball_exponent() + 1.0).map_err(|e| Error::domain(format!("ball exponent: {e}")))?;
    let x: Vec<f64> = (0..q).map(|_| beta.sample(rng)).collect();
    let mut weight = 1.0;
    for i in 0..q {
        for j in i + 1..q {
            weight *= (x[i] - x[j]).abs().powf(d);
        }
    }
    let sigma: Vec<f64> = x.iter().map(|v| v.sqrt()).collect();
    let u = haar_full_sample(field, q, rng);
    let v = haar_full_sample(field, q, rng);
    let w = u.mul(&MatrixF::diag(field, &sigma)).mul(&v);
    Ok(BallSample { w, weight })
}

/// Uniform point of the open ball `‖w‖ < 1` by cube rejection, together with
/// its singular values.
pub fn uniform_ball_point<R: Rng + ?Sized>(field: FieldTag, q: usize, rng: &mut R) -> Result<(MatrixF, Vec<f64>)> {
    for _ in 0..MAX_REJECTION_TRIES {
        let w = cube_point(field, q, rng);
        let sv = singular_spectrum(&w)?;
        if sv[0] < 1.0 {
            return Ok((w, sv));
        }
    }
    Err(Error::Capacity(format!(
        "cube rejection accepted nothing in {MAX_REJECTION_TRIES} tries (real dimension {}); \
         use the singular-value proposal or a smaller rank",
        field.dim() * q * q
    )))
}

/// Uniform point of the cube `[-1, 1]^{dq²}` in the real coordinates.
pub(crate) fn cube_point<R: Rng + ?Sized>(field: FieldTag, q: usize, rng: &mut R) -> MatrixF {
    let entries: Vec<Quaternion> = (0..q * q)
        .map(|_| {
            let mut u = || rng.random_range(-1.0..1.0);
            match field {
                FieldTag::R => Quaternion::real(u()),
                FieldTag::C => Quaternion::new(u(), u(), 0.0, 0.0),
                FieldTag::H => Quaternion::new(u(), u(), u(), u()),
            }
        })
        .collect();
    MatrixF::from_entries(field, q, entries)
}
