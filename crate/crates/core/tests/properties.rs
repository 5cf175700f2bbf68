//! Randomized algebraic properties, run under a fixed seed so failures are
//! reproducible.

use molien::algebra::matrix::promote;
use molien::algebra::Ring;
use molien::{series_inv_det, Mat, PowerSeries, Scalar, TrigPoly};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config() -> ProptestConfig {
    ProptestConfig { rng_seed: RngSeed::Fixed(0x4D4F_4C49), ..ProptestConfig::default() }
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Scalar::ratio(p, q))
}

/// Trigonometric polynomials with harmonics up to 4, so products stay at or
/// below harmonic 8.
fn trigpoly() -> impl Strategy<Value = TrigPoly> {
    (
        rational(),
        proptest::collection::vec((1u32..=4, rational()), 0..3),
        proptest::collection::vec((1u32..=4, rational()), 0..3),
    )
        .prop_map(|(c, cos, sin)| {
            let mut p = TrigPoly::constant(c);
            for (k, a) in cos {
                p = p + TrigPoly::cos_term(k, a);
            }
            for (k, b) in sin {
                p = p + TrigPoly::sin_term(k, b);
            }
            p
        })
}

fn rational_matrix(dim: usize) -> impl Strategy<Value = Mat<Scalar>> {
    proptest::collection::vec(rational(), dim * dim).prop_map(move |entries| {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = entries[i * dim + j].clone();
            }
        }
        m
    })
}

/// Determinant of `I - t*M` as a truncated series, by cofactor expansion
/// over the series ring — an independent route to the quantity whose
/// reciprocal `series_inv_det` expands.
fn det_i_minus_tm(m: &Mat<Scalar>, max_degree: usize) -> PowerSeries<Scalar> {
    let n = m.dim();
    let entry = |i: usize, j: usize| -> PowerSeries<Scalar> {
        let mut coeffs = vec![Scalar::zero(); max_degree + 1];
        if i == j {
            coeffs[0] = Scalar::one();
        }
        if max_degree >= 1 {
            coeffs[1] = -m[(i, j)].clone();
        }
        PowerSeries::from_coeffs(coeffs)
    };
    // cofactor expansion along the first row of the index set
    fn det(
        rows: &[usize],
        cols: &[usize],
        entry: &dyn Fn(usize, usize) -> PowerSeries<Scalar>,
        max_degree: usize,
    ) -> PowerSeries<Scalar> {
        if rows.len() == 1 {
            return entry(rows[0], cols[0]);
        }
        let mut total = PowerSeries::zero(max_degree);
        for (pos, &c) in cols.iter().enumerate() {
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = det(&rows[1..], &sub_cols, entry, max_degree);
            let term = entry(rows[0], c).mul(&minor);
            total = if pos % 2 == 0 { total.add(&term) } else { total.sub(&term) };
        }
        total
    }
    let idx: Vec<usize> = (0..n).collect();
    det(&idx, &idx, &entry, max_degree)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn trigpoly_addition_commutes(a in trigpoly(), b in trigpoly()) {
        prop_assert_eq!(a.clone() + b.clone(), b + a);
    }

    #[test]
    fn trigpoly_addition_associates(a in trigpoly(), b in trigpoly(), c in trigpoly()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a + (b + c));
    }

    #[test]
    fn trigpoly_multiplication_commutes(a in trigpoly(), b in trigpoly()) {
        prop_assert_eq!(a.clone() * b.clone(), b * a);
    }

    #[test]
    fn trigpoly_multiplication_associates(a in trigpoly(), b in trigpoly(), c in trigpoly()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a * (b * c));
    }

    #[test]
    fn trigpoly_distributes(a in trigpoly(), b in trigpoly(), c in trigpoly()) {
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b + a * c);
    }

    #[test]
    fn trigpoly_has_neutral_elements(a in trigpoly()) {
        prop_assert_eq!(TrigPoly::one() * a.clone(), a.clone());
        prop_assert_eq!(a.clone() + TrigPoly::zero(), a.clone());
        prop_assert!((a.clone() + (-a)).is_zero());
    }

    #[test]
    fn circle_average_is_linear(a in trigpoly(), b in trigpoly(), s in rational()) {
        let lhs = (a.clone().scale(&s) + b.clone()).haar();
        let rhs = &a.haar().scale(&s) + &b.haar();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_expansion_inverts_the_determinant(m in rational_matrix(3)) {
        let h = series_inv_det(&m, 8);
        let d = det_i_minus_tm(&m, 8);
        prop_assert_eq!(h.mul(&d), PowerSeries::one(8));
    }

    #[test]
    fn series_expansion_is_exact_on_exact_input(m in rational_matrix(3)) {
        prop_assert!(series_inv_det(&m, 6).is_exact());
    }

    #[test]
    fn symbolic_expansion_matches_numeric_at_sample_angles(
        m in rational_matrix(2),
        phi in 0.0..std::f64::consts::TAU,
    ) {
        // expand with the rotation left symbolic, then evaluate the
        // coefficients; must match expanding the evaluated matrix
        let mut spec = molien::GroupSpec::new(2);
        spec.circle_blocks = vec![(0, 1)];
        let symbolic = promote(&m).mul(&spec.circle_matrix()).unwrap();
        let series = series_inv_det(&symbolic, 6);
        let numeric = series_inv_det(&symbolic.eval(phi), 6);
        for d in 0..=6 {
            let s = series.coeff(d).eval(phi);
            let q = numeric.coeff(d).to_f64();
            prop_assert!((s - q).abs() < 1e-9, "degree {}: {} vs {}", d, s, q);
        }
    }

    #[test]
    fn trigpoly_products_stay_exact(a in trigpoly(), b in trigpoly()) {
        prop_assert!(a.is_exact() && b.is_exact());
        prop_assert!((a * b).is_exact());
    }

    #[test]
    fn finite_series_have_integer_coefficients(signs in proptest::collection::vec(
        proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], 3),
        1..3,
    )) {
        let gens: Vec<Mat<Scalar>> = signs.iter().map(|s| Mat::diag(s)).collect();
        let group = molien::close_group(&gens, 16).unwrap();
        let series = molien::molien_finite(&group, 6);
        prop_assert_eq!(series.max_integer_deviation(), 0.0);
        prop_assert_eq!(series.coeff(0), &Scalar::one());
    }

    #[test]
    fn fubini_average_is_normalized(theta in 0.2..2.5f64) {
        let series = molien::molien_fubini(&molien::group::lorentz_subgroup_spec(theta), 2).unwrap();
        prop_assert!((series.coeff(0).to_f64() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn circle_average_is_normalized() {
    assert_eq!(TrigPoly::one().haar(), Scalar::one());
    assert_eq!(TrigPoly::cos_term(3, Scalar::one()).haar(), Scalar::zero());
}
