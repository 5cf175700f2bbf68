//! Independent verification paths: Reynolds-projector invariant counts,
//! trapezoid quadrature for the circle factor, and sampled invariance
//! checks of explicit polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::poly::{monomial_count, monomials};
use crate::algebra::{series_inv_det, Mat, Polynomial, PowerSeries, Scalar};
use crate::error::{Error, Result};
use crate::group::{build_element, FiniteGroup, GroupSpec, DEFAULT_CLOSURE_CAP};

/// Largest monomial basis the Reynolds path will materialize.
pub const DEFAULT_BASIS_CAP: usize = 3000;

/// Seed for every sampled check, so reported residuals are reproducible.
const SAMPLE_SEED: u64 = 0x4D4F_4C49;

/// Matrix of the substitution action of `g` on the degree-`d` monomial
/// basis: column `j` holds the expansion of the `j`-th basis monomial with
/// `x_k` replaced by the `k`-th row form of `g`.
fn monomial_action(g: &Mat<Scalar>, basis: &[Vec<u32>]) -> Result<Mat<Scalar>> {
    let nvars = g.dim();
    let rows: Vec<Polynomial> = (0..nvars)
        .map(|k| {
            Polynomial::linear_form(&(0..nvars).map(|l| g[(k, l)].clone()).collect::<Vec<_>>())
        })
        .collect();
    let mut action = Mat::<Scalar>::zeros(basis.len());
    for (j, exps) in basis.iter().enumerate() {
        let mut image = Polynomial::from_terms(nvars, vec![(vec![0; nvars], Scalar::one())])?;
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                image = image.mul(&rows[k].pow(e));
            }
        }
        for (i, basis_exps) in basis.iter().enumerate() {
            action[(i, j)] = image.coeff(basis_exps);
        }
    }
    Ok(action)
}

/// Group average of the monomial-basis action: the projector onto degree-`d`
/// invariants. Exact.
pub fn reynolds_projector(group: &FiniteGroup, degree: u32) -> Result<Mat<Scalar>> {
    reynolds_projector_with_cap(group, degree, DEFAULT_BASIS_CAP)
}

pub fn reynolds_projector_with_cap(
    group: &FiniteGroup,
    degree: u32,
    cap: usize,
) -> Result<Mat<Scalar>> {
    let nvars = group.dim();
    let size = monomial_count(nvars, degree);
    if size > cap as u128 {
        return Err(Error::BasisCapExceeded {
            degree: degree as usize,
            size: usize::try_from(size).unwrap_or(usize::MAX),
            cap,
        });
    }
    let basis = monomials(nvars, degree);
    let mut sum = Mat::<Scalar>::zeros(basis.len());
    for g in group.elements() {
        sum = sum.add(&monomial_action(g, &basis)?)?;
    }
    Ok(sum.scale(&Scalar::ratio(1, group.order() as i64)))
}

/// Number of linearly independent degree-`d` invariants, as the exact rank
/// of the Reynolds projector.
pub fn reynolds_dim(group: &FiniteGroup, degree: u32) -> Result<usize> {
    reynolds_dim_with_cap(group, degree, DEFAULT_BASIS_CAP)
}

pub fn reynolds_dim_with_cap(group: &FiniteGroup, degree: u32, cap: usize) -> Result<usize> {
    let p = reynolds_projector_with_cap(group, degree, cap)?;
    exact_rank(&p)
}

/// Rank over the rationals by fraction-free elimination: each row is
/// cleared to integers, then reduced Bareiss-style against the chosen
/// pivots.
pub fn exact_rank(m: &Mat<Scalar>) -> Result<usize> {
    let n = m.dim();
    let entries = m.exact_entries().map_err(|_| Error::InexactRank)?;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = &entries[i * n..(i + 1) * n];
        let mut lcm = BigInt::one();
        for e in row {
            let d = e.denom();
            lcm = &lcm / lcm.gcd(d) * d;
        }
        rows.push(row.iter().map(|e| (e * BigRational::from(lcm.clone())).to_integer()).collect());
    }

    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..n {
        let pivot_row = (rank..n).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        rows.swap(rank, pr);
        let pivot = rows[rank][col].clone();
        for r in (rank + 1)..n {
            for c in (col + 1)..n {
                let num = &pivot * &rows[r][c] - &rows[r][col] * &rows[rank][c];
                rows[r][c] = num / &prev_pivot;
            }
            rows[r][col] = BigInt::zero();
        }
        prev_pivot = pivot;
        rank += 1;
        if rank == n {
            break;
        }
    }
    Ok(rank)
}

/// Reynolds counts for every degree up to `d_max`, for a fully finite spec.
pub fn sample_finite_invariant_dims(spec: &GroupSpec, d_max: u32) -> Result<Vec<usize>> {
    spec.validate()?;
    let group = spec.full_finite_group(DEFAULT_CLOSURE_CAP)?;
    (0..=d_max).map(|d| reynolds_dim(&group, d)).collect()
}

/// Molien series with the circle integral replaced by the `N`-node
/// trapezoid rule (equal weights at `phi_j = 2*pi*j/N`), which is exact for
/// integrands of harmonic below `N`. Float coefficients.
pub fn quad_molien(
    spec: &GroupSpec,
    max_degree: usize,
    nodes: usize,
) -> Result<PowerSeries<Scalar>> {
    spec.validate()?;
    let nodes = if spec.circle_blocks.is_empty() { 1 } else { nodes.max(1) };
    let finite = spec.finite_factor_group(DEFAULT_CLOSURE_CAP)?;
    let n = spec.num_involutions();
    let mut total = PowerSeries::<Scalar>::zero(max_degree);
    for pos in 0..(1usize << n) {
        let bits: Vec<bool> = (0..n).map(|k| (pos >> (n - 1 - k)) & 1 == 1).collect();
        for f in finite.elements() {
            let element = build_element(spec, &bits, Some(f))?;
            for j in 0..nodes {
                let phi = 2.0 * std::f64::consts::PI * (j as f64) / (nodes as f64);
                let m = element.eval(phi);
                total = total.add(&series_inv_det(&m, max_degree));
            }
        }
    }
    let count = (1usize << n) * finite.order() * nodes;
    Ok(total.scale(&Scalar::from_f64(1.0 / count as f64)))
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn apply(m: &Mat<Scalar>, x: &[f64]) -> Vec<f64> {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m[(i, j)].to_f64() * x[j]).sum()).collect()
}

/// Largest `|f(g*x) - f(x)|` over `samples` random points in the unit box,
/// for each of the given matrices.
pub fn check_invariant(f: &Polynomial, gens: &[Mat<Scalar>], samples: usize) -> Result<f64> {
    let dim = f.nvars();
    for (idx, g) in gens.iter().enumerate() {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix {idx} has dimension {}, polynomial has {dim} variables",
                g.dim()
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..samples.max(1) {
        let x = random_point(&mut rng, dim);
        let fx = f.eval(&x);
        for g in gens {
            worst = worst.max((f.eval(&apply(g, &x)) - fx).abs());
        }
    }
    Ok(worst)
}

/// Invariance residual of `f` under the group described by `spec`: checks
/// the finite generators, the involutions, and — when circle blocks exist —
/// rotations at `samples` equally spaced angles plus two irrational
/// multiples of the full turn.
pub fn check_invariant_spec(f: &Polynomial, spec: &GroupSpec, samples: usize) -> Result<f64> {
    spec.validate()?;
    if f.nvars() != spec.dim {
        return Err(Error::DimensionMismatch(format!(
            "polynomial has {} variables, spec dimension is {}",
            f.nvars(),
            spec.dim
        )));
    }
    let mut gens: Vec<Mat<Scalar>> = Vec::new();
    gens.extend(spec.finite_factor.iter().cloned());
    gens.extend(spec.involutions.iter().cloned());
    if !spec.circle_blocks.is_empty() {
        let circle = spec.circle_matrix();
        let k = samples.max(1);
        let mut angles: Vec<f64> =
            (0..k).map(|j| 2.0 * std::f64::consts::PI * (j as f64) / (k as f64)).collect();
        angles.push(2.0 * std::f64::consts::PI * (std::f64::consts::SQRT_2 - 1.0));
        angles.push(2.0 * std::f64::consts::PI * (std::f64::consts::E - 2.0));
        gens.extend(angles.into_iter().map(|phi| circle.eval(phi)));
    }
    check_invariant(f, &gens, samples)
}
