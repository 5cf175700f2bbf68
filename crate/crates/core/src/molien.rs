//! Molien series computation: the exact finite-group average and the coset
//! decomposition of the Haar average with exact circle integration.

use crate::algebra::{series_inv_det, Mat, PowerSeries, Scalar};
use crate::error::{Error, Result};
use crate::group::{build_element, coset_reps, FiniteGroup, GroupSpec, DEFAULT_CLOSURE_CAP};

/// Molien series of a finite group: the uniform average of
/// `1/det(I - t*g)`, truncated at `max_degree`. Exact.
pub fn molien_finite(group: &FiniteGroup, max_degree: usize) -> PowerSeries<Scalar> {
    let mut total = PowerSeries::<Scalar>::zero(max_degree);
    for g in group.elements() {
        total = total.add(&series_inv_det(g, max_degree));
    }
    total.scale(&Scalar::ratio(1, group.order() as i64))
}

/// Molien series of the group described by `spec`, computed as the weighted
/// sum of `2^n` coset contributions.
///
/// Each contribution expands `1/det(I - t * lambda^i * R(phi) * f)` as a
/// series with trigonometric-polynomial coefficients, integrates the circle
/// variable exactly, and averages over the finite factor. Coefficients are
/// exact rationals when every entry is; any float entry (typically from a
/// numeric hyperbolic parameter) makes them floats.
pub fn molien_fubini(spec: &GroupSpec, max_degree: usize) -> Result<PowerSeries<Scalar>> {
    spec.validate()?;
    let finite = spec.finite_factor_group(DEFAULT_CLOSURE_CAP)?;
    let n = spec.num_involutions();
    // accumulate in coset order, then finite-factor order, so float results
    // are bit-reproducible
    let mut total = PowerSeries::<Scalar>::zero(max_degree);
    for pos in 0..(1usize << n) {
        let bits: Vec<bool> = (0..n).map(|k| (pos >> (n - 1 - k)) & 1 == 1).collect();
        let mut coset_sum = PowerSeries::<Scalar>::zero(max_degree);
        for f in finite.elements() {
            let m = build_element(spec, &bits, Some(f))?;
            let integrated = series_inv_det(&m, max_degree).map(|c| c.haar());
            coset_sum = coset_sum.add(&integrated);
        }
        total = total.add(&coset_sum.scale(&Scalar::ratio(1, finite.order() as i64)));
    }
    Ok(total.scale(&Scalar::ratio(1, 1i64 << n)))
}

/// The index-2 special case: at most one involution. Same computation as
/// [`molien_fubini`]; kept as a named entry point for the classical
/// half-plus-half decomposition.
pub fn molien_fubini_n1(spec: &GroupSpec, max_degree: usize) -> Result<PowerSeries<Scalar>> {
    if spec.num_involutions() > 1 {
        return Err(Error::CosetIndexOutOfRange { got: spec.num_involutions(), expected: 1 });
    }
    molien_fubini(spec, max_degree)
}

/// Fully finite coset decomposition: average `1/det(I - t*lambda^i*s)` over
/// the subgroup elements `s` for each representative, then weight by
/// `1/2^n`. Exact; used to validate the decomposition against the direct
/// finite average.
pub fn molien_fubini_finite(
    subgroup: &FiniteGroup,
    involutions: &[Mat<Scalar>],
    max_degree: usize,
) -> Result<PowerSeries<Scalar>> {
    let system = coset_reps(involutions)?;
    let mut total = PowerSeries::<Scalar>::zero(max_degree);
    for rep in system.reps() {
        let mut coset_sum = PowerSeries::<Scalar>::zero(max_degree);
        for s in subgroup.elements() {
            coset_sum = coset_sum.add(&series_inv_det(&rep.mul(s)?, max_degree));
        }
        total = total.add(&coset_sum.scale(&Scalar::ratio(1, subgroup.order() as i64)));
    }
    Ok(total.scale(&Scalar::ratio(1, 1i64 << involutions.len())))
}
