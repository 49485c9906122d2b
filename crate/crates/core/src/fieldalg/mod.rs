//! Scalars and small matrices over ℝ, ℂ and ℍ: singular spectra, Dieudonné
//! determinants and the argument `d(t,s;v,w)` of the convolution kernel.
//!
//! Quaternionic matrices are handled through their `2q×2q` complex
//! embedding; its singular values come in coincident pairs and one value per
//! pair is kept.

mod matrix;
mod quaternion;

pub use matrix::{MatrixF, MAX_RANK};
pub use quaternion::Quaternion;

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The skew field 𝔽 ∈ {ℝ, ℂ, ℍ} with real dimension `d ∈ {1, 2, 4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    R,
    C,
    H,
}

impl FieldTag {
    pub const ALL: [FieldTag; 3] = [FieldTag::R, FieldTag::C, FieldTag::H];

    /// Real dimension `d`.
    pub fn dim(self) -> usize {
        match self {
            FieldTag::R => 1,
            FieldTag::C => 2,
            FieldTag::H => 4,
        }
    }

    pub fn d(self) -> f64 {
        self.dim() as f64
    }

    pub fn from_dim(d: usize) -> Option<Self> {
        match d {
            1 => Some(FieldTag::R),
            2 => Some(FieldTag::C),
            4 => Some(FieldTag::H),
            _ => None,
        }
    }

    /// Zero the quaternion components that do not belong to this field.
    pub fn project(self, x: Quaternion) -> Quaternion {
        match self {
            FieldTag::R => Quaternion::real(x.a),
            FieldTag::C => Quaternion::new(x.a, x.b, 0.0, 0.0),
            FieldTag::H => x,
        }
    }

    /// Smallest field containing both.
    pub fn join(self, other: FieldTag) -> FieldTag {
        if self.dim() >= other.dim() {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FieldTag::R => "R",
            FieldTag::C => "C",
            FieldTag::H => "H",
        };
        f.write_str(s)
    }
}

impl FromStr for FieldTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "R" | "r" | "1" => Ok(FieldTag::R),
            "C" | "c" | "2" => Ok(FieldTag::C),
            "H" | "h" | "4" => Ok(FieldTag::H),
            other => Err(Error::Usage(format!("unknown field '{other}' (expected R, C or H)"))),
        }
    }
}

/// A point of the closed Weyl chamber `t₁ ≥ t₂ ≥ … ≥ t_q ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChamberPoint(Vec<f64>);

impl ChamberPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_RANK {
            return Err(Error::domain(format!(
                "chamber point must have 1..={MAX_RANK} coordinates"
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("chamber point has non-finite coordinates"));
        }
        let ordered = coords.windows(2).all(|w| w[0] >= w[1]);
        if !ordered || *coords.last().unwrap() < 0.0 {
            return Err(Error::domain(format!(
                "{coords:?} is not in the closed chamber t1 >= ... >= tq >= 0"
            )));
        }
        Ok(ChamberPoint(coords))
    }

    /// Representative in the chamber of the W-orbit of an arbitrary vector
    /// (absolute values sorted descending).
    pub fn from_any(coords: &[f64]) -> Self {
        let mut v: Vec<f64> = coords.iter().map(|x| x.abs()).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        ChamberPoint(v)
    }

    pub fn zero(q: usize) -> Self {
        ChamberPoint(vec![0.0; q])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.first().copied().unwrap_or(0.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Singular values below which `d_argument` reports a non-admissible input.
pub const ARCOSH_FLOOR: f64 = 1.0 - 1e-8;

/// Singular spectrum `(λ₁ ≥ … ≥ λ_q ≥ 0)` of a square matrix.
pub fn singular_spectrum(x: &MatrixF) -> Result<Vec<f64>> {
    let q = x.rank();
    if q == 1 {
        return Ok(vec![x.get(0, 0).norm()]);
    }
    if q == 2 && x.field() != FieldTag::H {
        return Ok(two_by_two_complex(x).to_vec());
    }
    let emb = x.complex_embedding();
    let mut sv = embedded_singular_values(emb)?;
    if x.field() == FieldTag::H {
        // coincident pairs: keep one representative per pair
        sv = sv.chunks(2).map(|p| p[0]).collect();
    }
    Ok(sv)
}

/// All singular values of the complex representation, descending. For ℍ
/// these are `2q` values that pair up.
pub fn embedded_singular_spectrum(x: &MatrixF) -> Result<Vec<f64>> {
    embedded_singular_values(x.complex_embedding())
}

fn embedded_singular_values(m: DMatrix<Complex64>) -> Result<Vec<f64>> {
    let svd = m
        .try_svd(false, false, f64::EPSILON, 500)
        .ok_or_else(|| Error::NonConvergence("singular value decomposition".into()))?;
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

// σ² = (F ± sqrt(F² − 4|det|²)) / 2 with F the squared Frobenius norm; the
// smaller value is recovered from |det|² / σ₁² to avoid cancellation.
fn two_by_two_complex(x: &MatrixF) -> [f64; 2] {
    let c = |i, j| {
        let e: Quaternion = x.get(i, j);
        Complex64::new(e.a, e.b)
    };
    let (m00, m01, m10, m11) = (c(0, 0), c(0, 1), c(1, 0), c(1, 1));
    let frob = (m00.norm_sqr() + m11.norm_sqr()) + (m01.norm_sqr() + m10.norm_sqr());
    let det = (m00 * m11 - m01 * m10).norm();
    let disc = ((frob - 2.0 * det) * (frob + 2.0 * det)).max(0.0);
    let s1 = 0.5 * (frob + disc.sqrt());
    let s2 = if s1 > 0.0 { det * det / s1 } else { 0.0 };
    [s1.sqrt(), s2.sqrt()]
}

/// Determinant of a Hermitian positive semidefinite matrix; the Dieudonné
/// determinant `(det_ℂ)^{1/2}` of the complex embedding for ℍ.
pub fn dieudonne_det(x: &MatrixF) -> Result<f64> {
    let eig = hermitian_eigenvalues(x)?;
    if let Some(&min) = eig.iter().min_by(|a, b| a.total_cmp(b)) {
        if min < -1e-10 {
            return Err(Error::domain(format!(
                "matrix is not positive semidefinite (eigenvalue {min:e})"
            )));
        }
    }
    let prod: f64 = eig.iter().map(|&l| l.max(0.0)).product();
    Ok(match x.field() {
        FieldTag::H => prod.sqrt(),
        _ => prod,
    })
}

fn hermitian_eigenvalues(x: &MatrixF) -> Result<Vec<f64>> {
    if x.rank() == 1 {
        let v = x.get(0, 0).a;
        return Ok(match x.field() {
            FieldTag::H => vec![v, v],
            _ => vec![v],
        });
    }
    let emb = x.complex_embedding();
    let eig = emb
        .try_symmetric_eigen(f64::EPSILON, 500)
        .ok_or_else(|| Error::NonConvergence("Hermitian eigen-decomposition".into()))?;
    Ok(eig.eigenvalues.iter().copied().collect())
}

/// `Δ(I − w*w)` computed from the singular values of `w`.
pub fn ball_determinant(sv: &[f64], field: FieldTag) -> f64 {
    let _ = field;
    sv.iter().map(|s| (1.0 - s * s).max(0.0)).product()
}

/// The kernel argument
/// `d(t,s;v,w) = arcosh(spec_s(sinh t̲ · w · sinh s̲ + cosh t̲ · v · cosh s̲))`.
pub fn d_argument(t: &ChamberPoint, s: &ChamberPoint, v: &MatrixF, w: &MatrixF) -> Result<ChamberPoint> {
    let q = t.rank();
    if s.rank() != q || v.rank() != q || w.rank() != q {
        return Err(Error::domain("rank mismatch in d_argument"));
    }
    let sv = kernel_spectrum(t.coords(), s.coords(), v, w)?;
    arcosh_spectrum(sv).map(ChamberPoint)
}

pub(crate) fn kernel_spectrum(t: &[f64], s: &[f64], v: &MatrixF, w: &MatrixF) -> Result<Vec<f64>> {
    let sh_t: Vec<f64> = t.iter().map(|x| x.sinh()).collect();
    let ch_t: Vec<f64> = t.iter().map(|x| x.cosh()).collect();
    let sh_s: Vec<f64> = s.iter().map(|x| x.sinh()).collect();
    let ch_s: Vec<f64> = s.iter().map(|x| x.cosh()).collect();
    let m = w.scale_rows_cols(&sh_t, &sh_s).add(&v.scale_rows_cols(&ch_t, &ch_s));
    singular_spectrum(&m)
}

/// Componentwise arcosh of a descending spectrum of values `≥ 1`.
pub(crate) fn arcosh_spectrum(sv: Vec<f64>) -> Result<Vec<f64>> {
    sv.into_iter()
        .map(|x| {
            if x < ARCOSH_FLOOR || !x.is_finite() {
                Err(Error::Invariant(format!(
                    "singular value {x} < 1: v is not unitary or w is outside the closed ball"
                )))
            } else {
                Ok(x.max(1.0).acosh())
            }
        })
        .collect()
}
