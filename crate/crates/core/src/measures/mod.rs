//! Haar measure on `U₀(q, 𝔽)`, the matrix-ball density `Δ(I − w*w)^{μ−γ}`
//! with its normalization `κ_μ`, the hypergroup Haar weight and the
//! integration strategies shared by the convolution routines.

mod ball;
mod haar;

pub use ball::{ball_sample, uniform_ball_point, BallProposal, BallSample, MAX_REJECTION_TRIES};
pub use haar::{
    ginibre_columns, haar_full_sample, haar_unitary_sample, orthonormalize, real_determinant, stiefel_sample,
    truncated_haar_sample,
};

use crate::error::{Error, Result};
use crate::fieldalg::{singular_spectrum, ChamberPoint, FieldTag};
use crate::quad::gauss_jacobi_unit;
use crate::rootdata::{positive_roots, BCParams};
use crate::special::{beta_real, ln_gamma_real};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Number of independent random streams used by Monte-Carlo estimators.
pub const DEFAULT_STREAMS: usize = 16;

/// How an integral over `U₀(q,𝔽) × B_q` is discretized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum QuadratureSpec {
    /// Product Gauss rule with `order` nodes per axis (rank one only).
    Tensor { order: usize },
    /// Seeded Monte Carlo split over `streams` independent streams.
    MonteCarlo {
        samples: usize,
        seed: u64,
        streams: usize,
        proposal: BallProposal,
    },
}

impl QuadratureSpec {
    pub fn tensor(order: usize) -> Self {
        QuadratureSpec::Tensor { order }
    }

    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        QuadratureSpec::MonteCarlo {
            samples,
            seed,
            streams: DEFAULT_STREAMS,
            proposal: BallProposal::default(),
        }
    }

    pub fn with_proposal(self, proposal: BallProposal) -> Self {
        match self {
            QuadratureSpec::MonteCarlo {
                samples, seed, streams, ..
            } => QuadratureSpec::MonteCarlo {
                samples,
                seed,
                streams,
                proposal,
            },
            t => t,
        }
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self, QuadratureSpec::Tensor { .. })
    }

    /// Reject tensor rules where none is implemented and empty budgets.
    pub fn check(&self, params: &BCParams) -> Result<()> {
        match *self {
            QuadratureSpec::Tensor { order } => {
                if params.q != 1 {
                    return Err(Error::Unsupported(format!(
                        "tensor quadrature is implemented for rank 1 only (got q = {})",
                        params.q
                    )));
                }
                if order < 2 {
                    return Err(Error::Usage("tensor order must be at least 2".into()));
                }
            }
            QuadratureSpec::MonteCarlo { samples, streams, .. } => {
                if samples == 0 || streams == 0 {
                    return Err(Error::Usage("Monte-Carlo budget must be positive".into()));
                }
            }
        }
        Ok(())
    }
}

/// A value with a one-sigma error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// The random stream `stream` of a seeded family.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Run `body(rng, n)` on `streams` independent streams sharing `samples`
/// draws. Results come back in stream order whatever the thread schedule.
pub fn run_streams<T, F>(seed: u64, streams: usize, samples: usize, body: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> Result<T> + Sync,
{
    let streams = streams.max(1);
    (0..streams)
        .into_par_iter()
        .map(|s| {
            let n = samples / streams + usize::from(s < samples % streams);
            let mut rng = stream_rng(seed, s as u64);
            body(&mut rng, n)
        })
        .collect()
}

/// Running sums for a mean and its standard error.
#[derive(Debug, Clone, Copy, Default)]
pub struct Moments {
    pub n: f64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1.0;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn merge(mut self, o: Moments) -> Moments {
        self.n += o.n;
        self.sum += o.sum;
        self.sum_sq += o.sum_sq;
        self
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.n
    }

    pub fn stderr(&self) -> f64 {
        let m = self.mean();
        ((self.sum_sq / self.n - m * m).max(0.0) / (self.n - 1.0).max(1.0)).sqrt()
    }
}

/// `|S^{d−1}|`, the surface area of the unit sphere in `ℝ^d`.
fn sphere_area(d: f64) -> f64 {
    2.0 * (0.5 * d * PI.ln() - ln_gamma_real(0.5 * d)).exp()
}

/// `κ_μ = ∫_{B_q} Δ(I − w*w)^{μ−γ} dw` with Lebesgue measure in the real
/// coordinates of the entries.
pub fn kappa(params: &BCParams, quad: &QuadratureSpec) -> Result<Estimate> {
    quad.check(params)?;
    let a = params.ball_exponent();
    let d = params.d();
    match *quad {
        QuadratureSpec::Tensor { order } => {
            // polar coordinates, u = r²: |S^{d−1}|/2 ∫ u^{d/2−1} (1−u)^a du
            let mass = |n: usize| -> Result<f64> {
                let r = gauss_jacobi_unit(n, d / 2.0 - 1.0, a)?;
                Ok(0.5 * sphere_area(d) * r.integrate(|_| 1.0))
            };
            let hi = mass(order)?;
            let lo = mass((order / 2).max(1))?;
            Ok(Estimate {
                value: hi,
                error: (hi - lo).abs(),
            })
        }
        QuadratureSpec::MonteCarlo {
            samples, seed, streams, ..
        } => {
            let (field, q) = (params.field, params.q);
            let dim = (field.dim() * q * q) as f64;
            let cube = 2f64.powf(dim);
            if a >= -0.25 {
                let m = cube_moments(field, q, a, seed, streams, samples)?;
                Ok(Estimate {
                    value: cube * m.mean(),
                    error: cube * m.stderr(),
                })
            } else {
                // κ(a) = vol(B) · Π B(d/2, a+1) E_a[V] / (Π B(d/2, 1) E_0[V]),
                // V = Π_{i<j} |x_i − x_j|^d with x_i ~ Beta(d/2, a+1)
                let vol = cube_moments(field, q, 0.0, seed, streams, samples)?;
                let va = vandermonde_moments(params, a, seed ^ 0x5EED, streams, samples)?;
                let v0 = vandermonde_moments(params, 0.0, seed ^ 0xBEEF, streams, samples)?;
                let qf = q as f64;
                let beta_ratio = (beta_real(d / 2.0, a + 1.0) / beta_real(d / 2.0, 1.0)).powf(qf);
                let value = cube * vol.mean() * beta_ratio * va.mean() / v0.mean();
                let rel = [
                    vol.stderr() / vol.mean(),
                    va.stderr() / va.mean(),
                    v0.stderr() / v0.mean(),
                ]
                .iter()
                .map(|r| r * r)
                .sum::<f64>()
                .sqrt();
                Ok(Estimate {
                    value,
                    error: value * rel,
                })
            }
        }
    }
}

fn cube_moments(field: FieldTag, q: usize, a: f64, seed: u64, streams: usize, samples: usize) -> Result<Moments> {
    let parts = run_streams(seed, streams, samples, |rng, n| {
        let mut m = Moments::default();
        for _ in 0..n {
            let sv = singular_spectrum(&ball::cube_point(field, q, rng))?;
            let x = if sv[0] < 1.0 {
                sv.iter().map(|s| (1.0 - s * s).powf(a)).product()
            } else {
                0.0
            };
            m.push(x);
        }
        Ok(m)
    })?;
    Ok(parts.into_iter().fold(Moments::default(), Moments::merge))
}

fn vandermonde_moments(params: &BCParams, a: f64, seed: u64, streams: usize, samples: usize) -> Result<Moments> {
    let d = params.d();
    let q = params.q;
    let beta = Beta::new(d / 2.0, a + 1.0).map_err(|e| Error::domain(e.to_string()))?;
    let parts = run_streams(seed, streams, samples, |rng, n| {
        let mut m = Moments::default();
        for _ in 0..n {
            let x: Vec<f64> = (0..q).map(|_| beta.sample(rng)).collect();
            let mut v = 1.0;
            for i in 0..q {
                for j in i + 1..q {
                    v *= (x[i] - x[j]).abs().powf(d);
                }
            }
            m.push(v);
        }
        Ok(m)
    })?;
    Ok(parts.into_iter().fold(Moments::default(), Moments::merge))
}

/// Haar weight of the hypergroup on the chamber, overall constant 1:
/// `Π_i |sinh t_i|^{2μ−d(q−1)−1} |cosh t_i|^{d−1} · Π_{i<j} |cosh 2t_i − cosh 2t_j|^d`.
pub fn haar_weight(t: &ChamberPoint, params: &BCParams) -> f64 {
    haar_weight_slice(t.coords(), params)
}

pub(crate) fn haar_weight_slice(t: &[f64], params: &BCParams) -> f64 {
    let d = params.d();
    let e_sinh = 2.0 * params.mu - d * (params.q as f64 - 1.0) - 1.0;
    let mut w = 1.0;
    for &ti in t {
        w *= ti.sinh().abs().powf(e_sinh) * ti.cosh().powf(d - 1.0);
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            w *= ((2.0 * t[i]).cosh() - (2.0 * t[j]).cosh()).abs().powf(d);
        }
    }
    w
}

/// `Π_{α∈R₊} |2 sinh(⟨α,t⟩/2)|^{2k(α)}`, the weight written over the roots.
pub fn weight_from_roots(t: &[f64], params: &BCParams) -> f64 {
    positive_roots(params.q)
        .iter()
        .map(|(alpha, kind)| {
            let x: f64 = alpha.iter().zip(t).map(|(a, b)| a * b).sum();
            (2.0 * (0.5 * x).sinh()).abs().powf(2.0 * kind.multiplicity(&params.k))
        })
        .product()
}
