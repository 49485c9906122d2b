//! Convolution `(δ_t ∗_μ δ_s)(f)` of point measures on the chamber,
//! generalized translation and the verification suites.
//!
//! ```text
//! (δ_t ∗ δ_s)(f) = (1/κ_μ) ∫_{B_q} ∫_{U₀(q,𝔽)} f(d(t,s;v,w)) Δ(I − w*w)^{μ−γ} dv dw
//! ```
//!
//! Every estimator is self-normalized: the weights are divided by their own
//! sum, so `f ≡ 1` gives exactly 1.

pub mod testfn;
pub mod verify;

pub use testfn::TestFunction;

use crate::error::{Error, Result};
use crate::fieldalg::{arcosh_spectrum, kernel_spectrum, ChamberPoint, MatrixF};
use crate::measures::{ball_sample, haar_unitary_sample, run_streams, QuadratureSpec};
use crate::quad::{gauss_jacobi, gauss_jacobi_unit};
use crate::rootdata::BCParams;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A function on the chamber. Evaluation may fail (e.g. a hypergeometric
/// route that does not converge).
pub type ChamberFn<'a> = dyn Fn(&[f64]) -> Result<Complex64> + Sync + 'a;

/// Relative slack in the support bound `‖d‖∞ ≤ ‖t‖∞ + ‖s‖∞`, for roundoff in
/// the singular values and arcosh.
pub const SUPPORT_SLACK: f64 = 1e-10;

/// Support statistics over all kernel points visited by an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportReport {
    pub points: usize,
    pub violations: usize,
    /// Smallest `‖d(t,s;v,w)‖∞` seen.
    pub min_norm: f64,
    pub max_norm: f64,
    pub bound: f64,
}

impl SupportReport {
    fn new(bound: f64) -> Self {
        SupportReport {
            points: 0,
            violations: 0,
            min_norm: f64::INFINITY,
            max_norm: 0.0,
            bound,
        }
    }

    fn record(&mut self, d: &[f64]) {
        let n = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let sorted = d.windows(2).all(|w| w[0] >= w[1]) && d.last().is_none_or(|&x| x >= 0.0);
        self.points += 1;
        if n > self.bound * (1.0 + SUPPORT_SLACK) + SUPPORT_SLACK || !sorted {
            self.violations += 1;
        }
        self.min_norm = self.min_norm.min(n);
        self.max_norm = self.max_norm.max(n);
    }

    fn merge(mut self, o: SupportReport) -> SupportReport {
        self.points += o.points;
        self.violations += o.violations;
        self.min_norm = self.min_norm.min(o.min_norm);
        self.max_norm = self.max_norm.max(o.max_norm);
        self
    }
}

/// Estimate of `(δ_t ∗ δ_s)(f)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvolutionEstimate {
    #[serde(serialize_with = "crate::hypfun::ser_complex")]
    pub value: Complex64,
    /// One standard error (Monte Carlo) or the difference to the half-order
    /// rule (tensor).
    pub error: f64,
    pub quad: QuadratureSpec,
    pub support: SupportReport,
}

/// Weighted kernel points `(d(t,s;·), weight)` for rank one, weights summing
/// to one. The `v`-integral is absorbed: `|C v + X w| = |C + X w v̄|` and
/// the ball density is invariant under `w ↦ w v̄`.
#[derive(Debug, Clone)]
struct TensorKernel {
    /// `(x, u, weight)`: `x = Re w`, `u = |Im w|² / (1 − x²)`.
    nodes: Vec<(f64, f64, f64)>,
}

impl TensorKernel {
    fn new(params: &BCParams, order: usize) -> Result<Self> {
        let d = params.d();
        let a = params.ball_exponent();
        let mut nodes = Vec::new();
        if params.field.dim() == 1 {
            let rx = gauss_jacobi(order, a, a)?;
            for (&x, &wx) in rx.nodes.iter().zip(&rx.weights) {
                nodes.push((x, 0.0, wx));
            }
        } else {
            // dw = (1−x²)^{(d−1)/2} u^{(d−3)/2} dx du · const on the ball
            let e = a + 0.5 * (d - 1.0);
            let rx = gauss_jacobi(order, e, e)?;
            let ru = gauss_jacobi_unit(order, 0.5 * (d - 3.0), a)?;
            for (&x, &wx) in rx.nodes.iter().zip(&rx.weights) {
                for (&u, &wu) in ru.nodes.iter().zip(&ru.weights) {
                    nodes.push((x, u, wx * wu));
                }
            }
        }
        let total: f64 = nodes.iter().map(|n| n.2).sum();
        for n in nodes.iter_mut() {
            n.2 /= total;
        }
        Ok(TensorKernel { nodes })
    }

    fn points(&self, t: f64, s: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = t.cosh() * s.cosh();
        let x = t.sinh() * s.sinh();
        self.nodes.iter().map(move |&(xr, u, w)| {
            let re = c + x * xr;
            let y2 = re * re + x * x * (1.0 - xr * xr) * u;
            (y2.sqrt().max(1.0).acosh(), w)
        })
    }
}

/// Running sums for the self-normalized estimator `Σ w f / Σ w`.
#[derive(Debug, Clone)]
struct RatioSums {
    sw: f64,
    sw2: f64,
    swf: Vec<Complex64>,
    sw2f: Vec<Complex64>,
    sw2ff: Vec<f64>,
    support: SupportReport,
}

impl RatioSums {
    fn new(nf: usize, bound: f64) -> Self {
        RatioSums {
            sw: 0.0,
            sw2: 0.0,
            swf: vec![Complex64::new(0.0, 0.0); nf],
            sw2f: vec![Complex64::new(0.0, 0.0); nf],
            sw2ff: vec![0.0; nf],
            support: SupportReport::new(bound),
        }
    }

    fn push(&mut self, w: f64, values: &[Complex64]) {
        self.sw += w;
        self.sw2 += w * w;
        for (i, &f) in values.iter().enumerate() {
            self.swf[i] += w * f;
            self.sw2f[i] += w * w * f;
            self.sw2ff[i] += w * w * f.norm_sqr();
        }
    }

    fn merge(mut self, o: RatioSums) -> RatioSums {
        self.sw += o.sw;
        self.sw2 += o.sw2;
        for i in 0..self.swf.len() {
            self.swf[i] += o.swf[i];
            self.sw2f[i] += o.sw2f[i];
            self.sw2ff[i] += o.sw2ff[i];
        }
        self.support = self.support.merge(o.support);
        self
    }

    /// Ratio estimate and its delta-method standard error.
    fn finish(&self, i: usize) -> (Complex64, f64) {
        let r = self.swf[i] / self.sw;
        let var = self.sw2ff[i] - 2.0 * (r.conj() * self.sw2f[i]).re + r.norm_sqr() * self.sw2;
        (r, var.max(0.0).sqrt() / self.sw)
    }
}

/// Sampler of weighted ball points `(w, weight)`.
pub(crate) type BallSampler<'a> = dyn Fn(&mut ChaCha8Rng) -> Result<(MatrixF, f64)> + Sync + 'a;

/// The convolution engine for fixed parameters and quadrature.
#[derive(Debug, Clone)]
pub struct Convolver {
    params: BCParams,
    quad: QuadratureSpec,
    tensor: Option<(TensorKernel, TensorKernel)>,
}

impl Convolver {
    pub fn new(params: &BCParams, quad: QuadratureSpec) -> Result<Self> {
        quad.check(params)?;
        let tensor = match quad {
            QuadratureSpec::Tensor { order } => Some((
                TensorKernel::new(params, order)?,
                TensorKernel::new(params, (order / 2).max(2))?,
            )),
            QuadratureSpec::MonteCarlo { .. } => None,
        };
        Ok(Convolver {
            params: params.clone(),
            quad,
            tensor,
        })
    }

    pub fn params(&self) -> &BCParams {
        &self.params
    }

    pub fn quad(&self) -> &QuadratureSpec {
        &self.quad
    }

    /// `(δ_t ∗ δ_s)(f)`.
    pub fn convolve_point(&self, t: &ChamberPoint, s: &ChamberPoint, f: &ChamberFn) -> Result<ConvolutionEstimate> {
        Ok(self.convolve_many(t, s, &[f])?.remove(0))
    }

    /// Several integrands against the same nodes or samples.
    pub fn convolve_many(
        &self,
        t: &ChamberPoint,
        s: &ChamberPoint,
        fs: &[&ChamberFn],
    ) -> Result<Vec<ConvolutionEstimate>> {
        let q = self.params.q;
        if t.rank() != q || s.rank() != q {
            return Err(Error::domain(format!(
                "points of rank {} and {} for a rank-{q} hypergroup",
                t.rank(),
                s.rank()
            )));
        }
        match (&self.tensor, self.quad) {
            (Some((hi, lo)), _) => self.tensor_many(hi, lo, t, s, fs),
            (
                None,
                QuadratureSpec::MonteCarlo {
                    samples,
                    seed,
                    streams,
                    proposal,
                },
            ) => {
                let params = &self.params;
                let sampler = move |rng: &mut ChaCha8Rng| -> Result<(MatrixF, f64)> {
                    let b = ball_sample(params, proposal, rng)?;
                    Ok((b.w, b.weight))
                };
                mc_convolve(params, self.quad, t, s, fs, samples, seed, streams, &sampler)
            }
            _ => unreachable!("tensor kernels exist exactly in tensor mode"),
        }
    }

    fn tensor_many(
        &self,
        hi: &TensorKernel,
        lo: &TensorKernel,
        t: &ChamberPoint,
        s: &ChamberPoint,
        fs: &[&ChamberFn],
    ) -> Result<Vec<ConvolutionEstimate>> {
        let (tc, sc) = (t.coords()[0], s.coords()[0]);
        let mut support = SupportReport::new(tc.abs() + sc.abs());
        let mut vh = vec![Complex64::new(0.0, 0.0); fs.len()];
        for (dv, w) in hi.points(tc, sc) {
            support.record(&[dv]);
            for (acc, f) in vh.iter_mut().zip(fs) {
                *acc += w * f(&[dv])?;
            }
        }
        let mut out = Vec::with_capacity(fs.len());
        for (i, f) in fs.iter().enumerate() {
            let mut vl = Complex64::new(0.0, 0.0);
            for (dv, w) in lo.points(tc, sc) {
                vl += w * f(&[dv])?;
            }
            out.push(ConvolutionEstimate {
                value: vh[i],
                error: (vh[i] - vl).norm(),
                quad: self.quad,
                support,
            });
        }
        Ok(out)
    }

    /// Weighted kernel points of `δ_t ∗ δ_s` in tensor mode (rank one).
    pub fn tensor_points(&self, t: f64, s: f64) -> Option<Vec<(f64, f64)>> {
        self.tensor.as_ref().map(|(hi, _)| hi.points(t, s).collect())
    }

    /// The generalized translate `τ_s f : t ↦ (δ_t ∗ δ_s)(f)`.
    pub fn translate<'a>(
        &'a self,
        f: &'a ChamberFn<'a>,
        s: &'a ChamberPoint,
    ) -> impl Fn(&ChamberPoint) -> Result<ConvolutionEstimate> + 'a {
        move |t| self.convolve_point(t, s, f)
    }
}

/// Monte Carlo estimate with an arbitrary ball sampler; `v` is Haar on
/// `U₀(q, 𝔽)`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn mc_convolve(
    params: &BCParams,
    quad: QuadratureSpec,
    t: &ChamberPoint,
    s: &ChamberPoint,
    fs: &[&ChamberFn],
    samples: usize,
    seed: u64,
    streams: usize,
    sampler: &BallSampler,
) -> Result<Vec<ConvolutionEstimate>> {
    if samples < 2 {
        return Err(Error::domain("Monte Carlo needs at least two samples"));
    }
    let bound = t.norm_inf() + s.norm_inf();
    let parts = run_streams(seed, streams, samples, |rng, n| {
        let mut acc = RatioSums::new(fs.len(), bound);
        let mut vals = vec![Complex64::new(0.0, 0.0); fs.len()];
        for _ in 0..n {
            let v = haar_unitary_sample(params.field, params.q, rng);
            let (w, weight) = sampler(rng)?;
            let dv = arcosh_spectrum(kernel_spectrum(t.coords(), s.coords(), &v, &w)?)?;
            acc.support.record(&dv);
            for (val, f) in vals.iter_mut().zip(fs) {
                *val = f(&dv)?;
            }
            acc.push(weight, &vals);
        }
        Ok(acc)
    })?;
    let total = parts.into_iter().reduce(RatioSums::merge).expect("at least one stream");
    Ok((0..fs.len())
        .map(|i| {
            let (value, error) = total.finish(i);
            ConvolutionEstimate {
                value,
                error,
                quad,
                support: total.support,
            }
        })
        .collect())
}

/// `(δ_t ∗_μ δ_s)(f)` with a one-off [`Convolver`].
pub fn convolve_point(
    t: &ChamberPoint,
    s: &ChamberPoint,
    f: &ChamberFn,
    params: &BCParams,
    quad: QuadratureSpec,
) -> Result<ConvolutionEstimate> {
    Convolver::new(params, quad)?.convolve_point(t, s, f)
}

/// Lift a real test function to a [`ChamberFn`].
pub fn real_fn(f: impl Fn(&[f64]) -> f64 + Sync) -> impl Fn(&[f64]) -> Result<Complex64> + Sync {
    move |t| Ok(Complex64::new(f(t), 0.0))
}
