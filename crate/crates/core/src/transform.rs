//! Rank-one hypergeometric (Jacobi-function) transform
//! `𝓕f(λ) = ∫ f(t) F(−λ, k; t) dω(t)` on `λ ∈ i[0, Λ]`, its inversion
//! against `|c(λ)|⁻² dλ`, and the Plancherel density in any rank.
//!
//! The inversion constant (normalization of the Plancherel measure times the
//! chamber factor) is fitted once on a reference function and then frozen,
//! see [`Transform::calibrate`].

use crate::error::{Error, Result};
use crate::fieldalg::ChamberPoint;
use crate::hypergroup::TestFunction;
use crate::hypfun::{f_rank1, inverse_c_abs_sqr};
use crate::measures::haar_weight;
use crate::quad::{gauss_legendre, simpson_weights, Rule};
use crate::rootdata::{BCParams, SpectralParam};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;

pub const DEFAULT_GRID_POINTS: usize = 2048;
/// Forward quadrature tolerance per grid point (absolute).
pub const FORWARD_TOL: f64 = 1e-9;
/// Largest tolerated `|h ν|` over the last grid points relative to its peak.
pub const TAIL_TOL: f64 = 1e-5;
const TAIL_POINTS: usize = 16;
/// Levels of geometric refinement towards `t = 0`, where `ω ~ t^{2μ−1}`.
const GRADING_LEVELS: i32 = 24;

/// Equispaced imaginary-axis grid `λ = i y`, `y ∈ [0, Λ]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralGrid {
    pub y: Vec<f64>,
}

impl SpectralGrid {
    pub fn new(lambda_max: f64, points: usize) -> Result<Self> {
        if points < 4 || !(lambda_max > 0.0 && lambda_max.is_finite()) {
            return Err(Error::Usage(format!(
                "spectral grid needs >= 4 points and a positive cutoff (got {points}, {lambda_max})"
            )));
        }
        let h = lambda_max / (points - 1) as f64;
        Ok(SpectralGrid {
            y: (0..points).map(|k| k as f64 * h).collect(),
        })
    }

    /// Default grid for functions supported in `[0, T]`: `Λ = 40/T`.
    pub fn for_support(support: f64) -> Result<Self> {
        Self::new(40.0 / support, DEFAULT_GRID_POINTS)
    }

    pub fn spacing(&self) -> f64 {
        self.y[1] - self.y[0]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.y.last().expect("non-empty grid")
    }
}

/// Values of `𝓕f` on a spectral grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformTable {
    /// Imaginary parts `y` of the grid points `λ = i y`.
    pub lambda_im: Vec<f64>,
    #[serde(serialize_with = "ser_complex_vec")]
    pub values: Vec<Complex64>,
    /// Largest forward quadrature error estimate on the grid.
    pub error: f64,
    pub support: f64,
    pub nodes: usize,
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl TransformTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda_im,re,im\n");
        for (y, v) in self.lambda_im.iter().zip(&self.values) {
            let _ = writeln!(out, "{y},{},{}", v.re, v.im);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Calibrated inversion constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Calibration {
    pub constant: f64,
    /// `2^{2ρ}/(2π)`, the value for the classical Jacobi-function normalization.
    pub theory: f64,
    pub reference_residual: f64,
}

/// Composite Gauss–Legendre rule on `[0, T]`: `panels` GL16 panels, the
/// first one split geometrically towards 0 into GL panels of order `grade_order`.
fn graded_rule(support: f64, panels: usize, grade_order: usize) -> Rule {
    let base = gauss_legendre(16);
    let graded = gauss_legendre(grade_order);
    let h = support / panels as f64;
    let mut edges = vec![0.0];
    for k in (0..GRADING_LEVELS).rev() {
        edges.push(h * 0.5f64.powi(k + 1));
    }
    for k in 1..=panels {
        edges.push(k as f64 * h);
    }
    let mut rule = Rule {
        nodes: Vec::new(),
        weights: Vec::new(),
    };
    for (i, w) in edges.windows(2).enumerate() {
        let b = if (i as i32) < GRADING_LEVELS + 1 {
            &graded
        } else {
            &base
        };
        let m = b.mapped(w[0], w[1]);
        rule.nodes.extend(m.nodes);
        rule.weights.extend(m.weights);
    }
    rule
}

/// Rank-one transform on a fixed support and grid.
#[derive(Debug, Clone)]
pub struct Transform {
    params: BCParams,
    support: f64,
    grid: SpectralGrid,
    fine: Rule,
    coarse: Rule,
    calibration: Option<Calibration>,
}

impl Transform {
    pub fn new(params: &BCParams, support: f64, grid: SpectralGrid) -> Result<Self> {
        if params.q != 1 {
            return Err(Error::Unsupported(
                "forward and inverse transforms are implemented for rank 1".into(),
            ));
        }
        if !(support > 0.0 && support.is_finite()) {
            return Err(Error::domain(format!(
                "support radius must be positive (got {support})"
            )));
        }
        // at most eight radians of the fastest oscillation per coarse panel
        let panels = ((support * (grid.lambda_max() + 4.0) / 8.0).ceil() as usize).max(8);
        let weight = |r: Rule| {
            let w = r
                .nodes
                .iter()
                .zip(&r.weights)
                .map(|(&t, &w)| w * haar_weight(&ChamberPoint::from_any(&[t]), params))
                .collect();
            Rule {
                nodes: r.nodes,
                weights: w,
            }
        };
        Ok(Transform {
            params: params.clone(),
            support,
            grid,
            fine: weight(graded_rule(support, 2 * panels, 16)),
            coarse: weight(graded_rule(support, panels, 8)),
            calibration: None,
        })
    }

    pub fn params(&self) -> &BCParams {
        &self.params
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    /// Forward quadrature nodes; tabulate a function here for
    /// [`Transform::forward_values`].
    pub fn nodes(&self) -> (&[f64], &[f64]) {
        (&self.fine.nodes, &self.coarse.nodes)
    }

    pub fn calibration(&self) -> Option<Calibration> {
        self.calibration
    }

    /// Use a known inversion constant instead of fitting one.
    pub fn set_constant(&mut self, constant: f64) {
        self.calibration = Some(Calibration {
            constant,
            theory: self.theory_constant(),
            reference_residual: f64::NAN,
        });
    }

    pub fn theory_constant(&self) -> f64 {
        4f64.powf(self.params.rho[0]) / (2.0 * PI)
    }

    pub fn forward(&self, f: &(dyn Fn(f64) -> Result<Complex64> + Sync)) -> Result<TransformTable> {
        Ok(self.forward_many(&[f])?.remove(0))
    }

    /// Several functions sharing the kernel evaluations.
    pub fn forward_many(&self, fs: &[&(dyn Fn(f64) -> Result<Complex64> + Sync)]) -> Result<Vec<TransformTable>> {
        let tab = |r: &Rule| -> Result<Vec<Vec<Complex64>>> {
            fs.iter()
                .map(|f| r.nodes.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>())
                .collect()
        };
        let fine = tab(&self.fine)?;
        let coarse = tab(&self.coarse)?;
        self.forward_values(&fine, &coarse)
    }

    /// Forward transform from values tabulated on [`Transform::nodes`].
    pub fn forward_values(&self, fine: &[Vec<Complex64>], coarse: &[Vec<Complex64>]) -> Result<Vec<TransformTable>> {
        let n = fine.len();
        if coarse.len() != n
            || fine.iter().any(|v| v.len() != self.fine.len())
            || coarse.iter().any(|v| v.len() != self.coarse.len())
        {
            return Err(Error::Usage("tabulated values do not match the forward nodes".into()));
        }
        let params = &self.params;
        let apply = |rule: &Rule, vals: &[Vec<Complex64>], y: f64| -> Result<Vec<Complex64>> {
            let mut acc = vec![Complex64::new(0.0, 0.0); n];
            let lam = Complex64::new(0.0, -y);
            for (j, (&t, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
                if vals.iter().all(|v| v[j] == Complex64::new(0.0, 0.0)) {
                    continue;
                }
                let k = w * f_rank1(lam, params, t)?;
                for (a, v) in acc.iter_mut().zip(vals) {
                    *a += k * v[j];
                }
            }
            Ok(acc)
        };
        let rows: Vec<(Vec<Complex64>, f64)> = self
            .grid
            .y
            .par_iter()
            .map(|&y| {
                let hi = apply(&self.fine, fine, y)?;
                let lo = apply(&self.coarse, coarse, y)?;
                let err = hi.iter().zip(&lo).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                Ok((hi, err))
            })
            .collect::<Result<_>>()?;
        let bad: Vec<f64> = rows
            .iter()
            .zip(&self.grid.y)
            .filter(|((_, e), _)| *e > FORWARD_TOL)
            .map(|(_, &y)| y)
            .collect();
        if !bad.is_empty() {
            let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
            return Err(Error::accuracy(
                format!(
                    "forward transform error {worst:e} > {FORWARD_TOL:e} at {} grid points (first y = {}, last y = {})",
                    bad.len(),
                    bad[0],
                    bad[bad.len() - 1]
                ),
                Some(worst),
            ));
        }
        let err = rows.iter().map(|r| r.1).fold(0.0, f64::max);
        Ok((0..n)
            .map(|i| TransformTable {
                lambda_im: self.grid.y.clone(),
                values: rows.iter().map(|r| r.0[i]).collect(),
                error: err,
                support: self.support,
                nodes: self.fine.len(),
            })
            .collect())
    }

    fn check_table(&self, table: &TransformTable) -> Result<()> {
        if table.is_empty() {
            return Err(Error::Usage("empty transform table".into()));
        }
        if table.lambda_im != self.grid.y {
            return Err(Error::Usage("transform table is on a different grid".into()));
        }
        Ok(())
    }

    /// Spectral weights `simpson · |c(iy)|⁻²` on the grid.
    fn spectral_weights(&self) -> Vec<f64> {
        let h = self.grid.spacing();
        simpson_weights(self.grid.y.len(), h)
            .into_iter()
            .zip(&self.grid.y)
            .map(|(w, &y)| w * inverse_c_abs_sqr(&[Complex64::new(0.0, y)], &self.params))
            .collect()
    }

    fn tail_check(&self, integrand: &[f64]) -> Result<()> {
        let peak = integrand.iter().cloned().fold(0.0, f64::max);
        let n = integrand.len();
        let tail = integrand[n.saturating_sub(TAIL_POINTS)..]
            .iter()
            .cloned()
            .fold(0.0, f64::max);
        if peak > 0.0 && tail > TAIL_TOL * peak {
            return Err(Error::accuracy(
                format!(
                    "transform has not decayed at the grid cutoff Λ = {} (tail/peak = {:e})",
                    self.grid.lambda_max(),
                    tail / peak
                ),
                Some(tail / peak),
            ));
        }
        Ok(())
    }

    /// `∫ h(iy) F(iy; t) |c(iy)|⁻² dy` without the constant.
    fn raw_inverse(&self, values: &[Complex64], weights: &[f64], t: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&y, &h), &w) in self.grid.y.iter().zip(values).zip(weights) {
            if h == Complex64::new(0.0, 0.0) || w == 0.0 {
                continue;
            }
            acc += w * h * f_rank1(Complex64::new(0.0, y), &self.params, t)?;
        }
        Ok(acc)
    }

    fn constant(&self) -> Result<f64> {
        self.calibration
            .map(|c| c.constant)
            .ok_or_else(|| Error::Usage("transform is not calibrated".into()))
    }

    /// `𝓕⁻¹h(t)` at several points.
    pub fn inverse(&self, table: &TransformTable, ts: &[f64]) -> Result<Vec<Complex64>> {
        self.check_table(table)?;
        let c = self.constant()?;
        let weights = self.spectral_weights();
        let integrand: Vec<f64> = table.values.iter().zip(&weights).map(|(h, w)| h.norm() * w).collect();
        self.tail_check(&integrand)?;
        ts.par_iter()
            .map(|&t| Ok(c * self.raw_inverse(&table.values, &weights, t)?))
            .collect()
    }

    /// Translate through the transform side:
    /// `τ_s f(t) = 𝓕⁻¹(F(·; s) 𝓕f)(t)`.
    pub fn translate(&self, table: &TransformTable, s: f64, ts: &[f64]) -> Result<Vec<Complex64>> {
        let shifted = self.multiply_by_kernel(table, s)?;
        self.inverse(&shifted, ts)
    }

    /// `λ ↦ F(λ; s) 𝓕f(λ)`.
    pub fn multiply_by_kernel(&self, table: &TransformTable, s: f64) -> Result<TransformTable> {
        self.check_table(table)?;
        let mut out = table.clone();
        for (v, &y) in out.values.iter_mut().zip(&self.grid.y) {
            *v *= f_rank1(Complex64::new(0.0, y), &self.params, s)?;
        }
        Ok(out)
    }

    /// Fit the inversion constant by least squares of the round trip of
    /// `reference` at points where it is not negligible.
    pub fn calibrate(&mut self, reference: TestFunction) -> Result<Calibration> {
        let g = move |t: f64| Ok(Complex64::new(reference.profile(t), 0.0));
        let table = self.forward(&g)?;
        let weights = self.spectral_weights();
        let ts = self.sample_points(&reference);
        let raw: Vec<f64> = ts
            .par_iter()
            .map(|&t| Ok(self.raw_inverse(&table.values, &weights, t)?.re))
            .collect::<Result<_>>()?;
        let want: Vec<f64> = ts.iter().map(|&t| reference.profile(t)).collect();
        let num: f64 = raw.iter().zip(&want).map(|(a, b)| a * b).sum();
        let den: f64 = raw.iter().map(|a| a * a).sum();
        let constant = num / den;
        let peak = want.iter().cloned().fold(0.0, f64::max);
        let residual = raw
            .iter()
            .zip(&want)
            .map(|(a, b)| (constant * a - b).abs())
            .fold(0.0, f64::max)
            / peak;
        let cal = Calibration {
            constant,
            theory: self.theory_constant(),
            reference_residual: residual,
        };
        self.calibration = Some(cal);
        Ok(cal)
    }

    /// Points in `[0, R]` used for round-trip checks.
    pub fn sample_points(&self, f: &TestFunction) -> Vec<f64> {
        let r = f.support_radius().min(self.support);
        (1..=48).map(|k| r * k as f64 / 49.0).collect()
    }

    /// Largest `|𝓕⁻¹𝓕f − f|` over [`Transform::sample_points`], relative to
    /// `max |f|`.
    pub fn round_trip_error(&self, f: TestFunction) -> Result<f64> {
        let g = move |t: f64| Ok(Complex64::new(f.profile(t), 0.0));
        let table = self.forward(&g)?;
        let ts = self.sample_points(&f);
        let back = self.inverse(&table, &ts)?;
        let want: Vec<f64> = ts.iter().map(|&t| f.profile(t)).collect();
        let peak = want.iter().cloned().fold(0.0, f64::max);
        Ok(back.iter().zip(&want).map(|(b, w)| (b - w).norm()).fold(0.0, f64::max) / peak)
    }

    /// `|∫|f|² dω − C ∫ |𝓕f|² |c|⁻² dy|` relative to `∫|f|² dω`.
    pub fn parseval_error(&self, f: TestFunction) -> Result<f64> {
        let g = move |t: f64| Ok(Complex64::new(f.profile(t), 0.0));
        let table = self.forward(&g)?;
        let c = self.constant()?;
        let lhs = self.fine.integrate(|t| f.profile(t).powi(2));
        let weights = self.spectral_weights();
        let rhs: f64 = c * table
            .values
            .iter()
            .zip(&weights)
            .map(|(h, w)| h.norm_sqr() * w)
            .sum::<f64>();
        Ok((lhs - rhs).abs() / lhs)
    }
}

/// `1/|c(iλ, k_μ)|²`, the density of the Plancherel measure at a spectral
/// parameter (any rank).
pub fn plancherel_density(lambda: &SpectralParam, params: &BCParams) -> Result<f64> {
    if lambda.rank() != params.q {
        return Err(Error::domain("rank mismatch between lambda and params"));
    }
    Ok(inverse_c_abs_sqr(&lambda.times_i(), params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldalg::FieldTag;
    use crate::rootdata::derive_params;

    #[test]
    fn density_is_even_and_positive() {
        let p = derive_params(FieldTag::C, 1, 3.0).unwrap();
        for y in [0.1, 0.7, 2.5, 9.0] {
            let a = plancherel_density(&SpectralParam::real(&[y]), &p).unwrap();
            let b = plancherel_density(&SpectralParam::real(&[-y]), &p).unwrap();
            assert!(a > 0.0 && (a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn zero_function_and_empty_table() {
        let p = derive_params(FieldTag::R, 1, 2.0).unwrap();
        let mut tr = Transform::new(&p, 2.0, SpectralGrid::new(5.0, 64).unwrap()).unwrap();
        let zero = |_: f64| Ok(Complex64::new(0.0, 0.0));
        let table = tr.forward(&zero).unwrap();
        assert!(table.values.iter().all(|v| v.norm() == 0.0));
        tr.set_constant(1.0);
        let empty = TransformTable {
            lambda_im: vec![],
            values: vec![],
            error: 0.0,
            support: 2.0,
            nodes: 0,
        };
        assert!(matches!(tr.inverse(&empty, &[0.5]), Err(Error::Usage(_))));
    }
}
