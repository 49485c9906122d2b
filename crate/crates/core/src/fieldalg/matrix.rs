use super::quaternion::Quaternion;
use super::FieldTag;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;

/// Largest supported matrix side.
pub const MAX_RANK: usize = 8;

/// A `q×q` matrix over ℝ, ℂ or ℍ.
///
/// Entries are stored as quaternions in row-major order; for ℝ and ℂ only the
/// first one or two components are ever non-zero.
#[derive(Clone, PartialEq)]
pub struct MatrixF {
    field: FieldTag,
    q: usize,
    data: Vec<Quaternion>,
}

impl fmt::Debug for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixF<{:?}, {}x{}>", self.field, self.q, self.q)?;
        for i in 0..self.q {
            let row: Vec<String> = (0..self.q)
                .map(|j| {
                    let e = self.get(i, j);
                    match self.field {
                        FieldTag::R => format!("{:.6}", e.a),
                        FieldTag::C => format!("{:.6}{:+.6}i", e.a, e.b),
                        FieldTag::H => {
                            format!("{:.4}{:+.4}i{:+.4}j{:+.4}k", e.a, e.b, e.c, e.d)
                        }
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl MatrixF {
    /// Build from quaternion entries (row-major). Components outside the
    /// field are zeroed.
    pub fn from_entries(field: FieldTag, q: usize, entries: Vec<Quaternion>) -> Self {
        assert!((1..=MAX_RANK).contains(&q), "matrix side {q} outside 1..={MAX_RANK}");
        assert_eq!(entries.len(), q * q, "expected {} entries", q * q);
        let data = entries.into_iter().map(|e| field.project(e)).collect();
        MatrixF { field, q, data }
    }

    pub fn from_real(q: usize, entries: &[f64]) -> Self {
        Self::from_entries(FieldTag::R, q, entries.iter().map(|&x| Quaternion::real(x)).collect())
    }

    pub fn from_complex(q: usize, entries: &[Complex64]) -> Self {
        Self::from_entries(
            FieldTag::C,
            q,
            entries.iter().map(|&z| Quaternion::from_complex(z)).collect(),
        )
    }

    pub fn zeros(field: FieldTag, q: usize) -> Self {
        Self::from_entries(field, q, vec![Quaternion::ZERO; q * q])
    }

    pub fn identity(field: FieldTag, q: usize) -> Self {
        Self::scalar(field, q, 1.0)
    }

    pub fn scalar(field: FieldTag, q: usize, s: f64) -> Self {
        Self::diag(field, &vec![s; q])
    }

    pub fn diag(field: FieldTag, d: &[f64]) -> Self {
        let q = d.len();
        let mut m = Self::zeros(field, q);
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, Quaternion::real(x));
        }
        m
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.q
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self.data[i * self.q + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Quaternion) {
        self.data[i * self.q + j] = self.field.project(v);
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let q = self.q;
        let mut out = Vec::with_capacity(q * q);
        for i in 0..q {
            for j in 0..q {
                out.push(self.get(j, i).conj());
            }
        }
        MatrixF {
            field: self.field,
            q,
            data: out,
        }
    }

    pub fn mul(&self, other: &MatrixF) -> MatrixF {
        assert_eq!(self.q, other.q);
        let q = self.q;
        let mut out = vec![Quaternion::ZERO; q * q];
        for i in 0..q {
            for k in 0..q {
                let a = self.get(i, k);
                for j in 0..q {
                    out[i * q + j] += a * other.get(k, j);
                }
            }
        }
        MatrixF {
            field: self.field.join(other.field),
            q,
            data: out,
        }
    }

    pub fn add(&self, other: &MatrixF) -> MatrixF {
        assert_eq!(self.q, other.q);
        MatrixF {
            field: self.field.join(other.field),
            q: self.q,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &MatrixF) -> MatrixF {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> MatrixF {
        MatrixF {
            field: self.field,
            q: self.q,
            data: self.data.iter().map(|e| e.scale(s)).collect(),
        }
    }

    /// `diag(left) · self · diag(right)` for real diagonals.
    pub fn scale_rows_cols(&self, left: &[f64], right: &[f64]) -> MatrixF {
        let q = self.q;
        let mut data = self.data.clone();
        for i in 0..q {
            for j in 0..q {
                data[i * q + j] = data[i * q + j].scale(left[i] * right[j]);
            }
        }
        MatrixF {
            field: self.field,
            q,
            data,
        }
    }

    /// Largest entrywise deviation of `self* self` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let g = self.adjoint().mul(self);
        let id = MatrixF::identity(self.field, self.q);
        g.data
            .iter()
            .zip(&id.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Complex representation: the matrix itself for ℝ and ℂ, the `2q×2q`
    /// block embedding for ℍ.
    pub fn complex_embedding(&self) -> DMatrix<Complex64> {
        let q = self.q;
        match self.field {
            FieldTag::R | FieldTag::C => DMatrix::from_fn(q, q, |i, j| {
                let e = self.get(i, j);
                Complex64::new(e.a, e.b)
            }),
            FieldTag::H => {
                let mut m = DMatrix::<Complex64>::zeros(2 * q, 2 * q);
                for i in 0..q {
                    for j in 0..q {
                        let (alpha, beta) = self.get(i, j).complex_pair();
                        m[(2 * i, 2 * j)] = alpha;
                        m[(2 * i, 2 * j + 1)] = beta;
                        m[(2 * i + 1, 2 * j)] = -beta.conj();
                        m[(2 * i + 1, 2 * j + 1)] = alpha.conj();
                    }
                }
                m
            }
        }
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_multiplicative() {
        let a = MatrixF::from_entries(
            FieldTag::H,
            2,
            vec![
                Quaternion::new(0.1, 0.2, -0.3, 0.4),
                Quaternion::new(1.0, 0.0, 0.5, -0.2),
                Quaternion::new(-0.7, 0.3, 0.0, 0.9),
                Quaternion::new(0.2, -0.4, 0.6, 0.1),
            ],
        );
        let b = a.adjoint().scale(0.5).add(&MatrixF::identity(FieldTag::H, 2));
        let lhs = a.mul(&b).complex_embedding();
        let rhs = a.complex_embedding() * b.complex_embedding();
        assert!((lhs - rhs).norm() < 1e-14);
        let adj = a.adjoint().complex_embedding();
        assert!((adj - a.complex_embedding().adjoint()).norm() < 1e-15);
    }

    #[test]
    fn projection_drops_foreign_components() {
        let m = MatrixF::from_entries(FieldTag::R, 1, vec![Quaternion::new(1.0, 2.0, 3.0, 4.0)]);
        assert_eq!(m.get(0, 0), Quaternion::real(1.0));
    }
}
