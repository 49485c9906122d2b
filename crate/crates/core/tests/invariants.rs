use bc_hypergroup::fieldalg::{
    d_argument, embedded_singular_spectrum, singular_spectrum, ChamberPoint, FieldTag, MatrixF,
};
use bc_hypergroup::hypergroup::TestFunction;
use bc_hypergroup::hypfun::f_rank1;
use bc_hypergroup::measures::{ball_sample, ginibre_columns, haar_unitary_sample, BallProposal};
use bc_hypergroup::rootdata::derive_params;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [FieldTag; 3] = [FieldTag::R, FieldTag::C, FieldTag::H];

fn ginibre(field: FieldTag, q: usize, seed: u64) -> MatrixF {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = ginibre_columns(field, q, q, &mut rng);
    let mut entries = Vec::with_capacity(q * q);
    for i in 0..q {
        for col in &cols {
            entries.push(col[i]);
        }
    }
    MatrixF::from_entries(field, q, entries)
}

fn chamber(mut t: Vec<f64>) -> ChamberPoint {
    t.sort_by(|a, b| b.total_cmp(a));
    ChamberPoint::new(t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_is_adjoint_invariant(f in 0usize..3, q in 1usize..=3, seed: u64) {
        let x = ginibre(FIELDS[f], q, seed);
        let a = singular_spectrum(&x).unwrap();
        let b = singular_spectrum(&x.adjoint()).unwrap();
        for (u, v) in a.iter().zip(&b) {
            prop_assert!((u - v).abs() <= 1e-12 * a[0].max(1.0));
        }
    }

    #[test]
    fn quaternionic_spectrum_comes_in_pairs(q in 1usize..=3, seed: u64) {
        let x = ginibre(FieldTag::H, q, seed);
        let s = embedded_singular_spectrum(&x).unwrap();
        prop_assert_eq!(s.len(), 2 * q);
        for p in s.chunks(2) {
            prop_assert!((p[0] - p[1]).abs() <= 1e-12 * s[0]);
        }
    }

    /// `d(t,s;v,w) = d(s,t;v*,w*)` and `‖d‖∞ ≤ ‖t‖∞ + ‖s‖∞`.
    #[test]
    fn kernel_argument_symmetry_and_support(
        f in 0usize..3,
        q in 1usize..=2,
        t in prop::collection::vec(0.0f64..3.0, 2),
        s in prop::collection::vec(0.0f64..3.0, 2),
        seed: u64,
    ) {
        let field = FIELDS[f];
        let params = derive_params(field, q, 1.5 * q as f64 * field.d() + 0.4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = haar_unitary_sample(field, q, &mut rng);
        let w = ball_sample(&params, BallProposal::default(), &mut rng).unwrap().w;
        let (t, s) = (chamber(t[..q].to_vec()), chamber(s[..q].to_vec()));
        let ab = d_argument(&t, &s, &v, &w).unwrap();
        let ba = d_argument(&s, &t, &v.adjoint(), &w.adjoint()).unwrap();
        for (x, y) in ab.coords().iter().zip(ba.coords()) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
        }
        prop_assert!(ab.norm_inf() <= t.norm_inf() + s.norm_inf() + 1e-10);
    }

    #[test]
    fn rank_one_kernel_is_even_and_real(f in 0usize..3, mu_off in 0.05f64..4.0, y in -30.0f64..30.0, t in 0.0f64..8.0) {
        let field = FIELDS[f];
        let p = derive_params(field, 1, p_min(field) + mu_off).unwrap();
        let a = f_rank1(Complex64::new(0.0, y), &p, t).unwrap();
        let b = f_rank1(Complex64::new(0.0, -y), &p, t).unwrap();
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-3));
        prop_assert!(a.im.abs() <= 1e-10 * a.norm().max(1e-3));
        prop_assert!(a.norm() <= 1.0 + 1e-10);
    }

    #[test]
    fn test_function_names_round_trip(c in 0.0f64..3.0, w in 0.01f64..2.0, kind in 0usize..3) {
        let f = match kind {
            0 => TestFunction::Gauss { center: c, width: w },
            1 => TestFunction::Cosine { center: c, width: w },
            _ => TestFunction::Indicator { radius: c, width: w },
        };
        prop_assert_eq!(f.to_string().parse::<TestFunction>().unwrap(), f);
    }
}

/// Smallest admissible `μ` for rank one is `γ − 1 = d/2`.
fn p_min(field: FieldTag) -> f64 {
    field.d() / 2.0
}
