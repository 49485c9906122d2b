use crate::fieldalg::{FieldTag, MatrixF, Quaternion};
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

fn normal_scalar<R: Rng + ?Sized>(field: FieldTag, rng: &mut R) -> Quaternion {
    let mut g = || rng.sample::<f64, _>(StandardNormal);
    match field {
        FieldTag::R => Quaternion::real(g()),
        FieldTag::C => Quaternion::new(g(), g(), 0.0, 0.0),
        FieldTag::H => Quaternion::new(g(), g(), g(), g()),
    }
}

/// `p×q` matrix with i.i.d. standard Gaussian entries, stored by columns.
pub fn ginibre_columns<R: Rng + ?Sized>(field: FieldTag, p: usize, q: usize, rng: &mut R) -> Vec<Vec<Quaternion>> {
    (0..q)
        .map(|_| (0..p).map(|_| normal_scalar(field, rng)).collect())
        .collect()
}

/// Modified Gram–Schmidt for the right 𝔽-module structure:
/// `v ← v − u (u* v)`. The triangular factor gets a positive diagonal, which
/// makes the result Haar distributed when the input is Ginibre.
pub fn orthonormalize(cols: &mut [Vec<Quaternion>]) {
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let v = &mut rest[0];
        for u in done.iter() {
            let mut c = Quaternion::ZERO;
            for (ui, vi) in u.iter().zip(v.iter()) {
                c += ui.conj() * *vi;
            }
            for (vi, ui) in v.iter_mut().zip(u.iter()) {
                *vi = *vi - *ui * c;
            }
        }
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for vi in v.iter_mut() {
            *vi = vi.scale(1.0 / n);
        }
    }
}

/// Haar sample from the full unitary group `O(q)`, `U(q)` or `Sp(q)`.
pub fn haar_full_sample<R: Rng + ?Sized>(field: FieldTag, q: usize, rng: &mut R) -> MatrixF {
    let mut cols = ginibre_columns(field, q, q, rng);
    orthonormalize(&mut cols);
    from_columns(field, q, &cols)
}

/// Haar sample from the identity component `U₀(q, 𝔽)`: `SO(q)`, `U(q)`,
/// `Sp(q)`.
pub fn haar_unitary_sample<R: Rng + ?Sized>(field: FieldTag, q: usize, rng: &mut R) -> MatrixF {
    let mut cols = ginibre_columns(field, q, q, rng);
    orthonormalize(&mut cols);
    if field == FieldTag::R && real_det(&cols) < 0.0 {
        for x in cols[0].iter_mut() {
            *x = -*x;
        }
    }
    from_columns(field, q, &cols)
}

/// First `q` columns of a Haar unitary `p×p` matrix (a Haar point of the
/// Stiefel manifold), by columns.
pub fn stiefel_sample<R: Rng + ?Sized>(field: FieldTag, p: usize, q: usize, rng: &mut R) -> Vec<Vec<Quaternion>> {
    let mut cols = ginibre_columns(field, p, q, rng);
    orthonormalize(&mut cols);
    cols
}

/// Upper-left `q×q` block of a Haar unitary `p×p` matrix.
pub fn truncated_haar_sample<R: Rng + ?Sized>(field: FieldTag, p: usize, q: usize, rng: &mut R) -> MatrixF {
    let cols = stiefel_sample(field, p, q, rng);
    let mut entries = Vec::with_capacity(q * q);
    for i in 0..q {
        for col in cols.iter() {
            entries.push(col[i]);
        }
    }
    MatrixF::from_entries(field, q, entries)
}

fn from_columns(field: FieldTag, q: usize, cols: &[Vec<Quaternion>]) -> MatrixF {
    let mut entries = Vec::with_capacity(q * q);
    for i in 0..q {
        for col in cols {
            entries.push(col[i]);
        }
    }
    MatrixF::from_entries(field, q, entries)
}

fn real_det(cols: &[Vec<Quaternion>]) -> f64 {
    let q = cols.len();
    DMatrix::from_fn(q, q, |i, j| cols[j][i].a).determinant()
}

/// Determinant of a real matrix (used by tests of the `SO(q)` convention).
pub fn real_determinant(m: &MatrixF) -> f64 {
    let q = m.rank();
    DMatrix::from_fn(q, q, |i, j| m.get(i, j).a).determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in FieldTag::ALL {
            for q in 1..=5 {
                let u = haar_unitary_sample(f, q, &mut rng);
                assert!(u.is_unitary(1e-12), "{f} {q}: {}", u.unitarity_defect());
                assert!(u.adjoint().is_unitary(1e-12));
            }
        }
    }

    #[test]
    fn real_samples_are_special_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for q in 1..=4 {
            for _ in 0..50 {
                let u = haar_unitary_sample(FieldTag::R, q, &mut rng);
                assert!((real_determinant(&u) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stiefel_columns_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cols = stiefel_sample(FieldTag::H, 5, 2, &mut rng);
        let mut g = Quaternion::ZERO;
        for (a, b) in cols[0].iter().zip(&cols[1]) {
            g += a.conj() * *b;
        }
        assert!(g.norm() < 1e-14);
        let w = truncated_haar_sample(FieldTag::H, 5, 2, &mut rng);
        let sv = crate::fieldalg::singular_spectrum(&w).unwrap();
        assert!(sv[0] <= 1.0 + 1e-12);
    }
}
