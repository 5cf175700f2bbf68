//! Truncated power series in one formal variable `t`.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Mat, Ring, Scalar};
use crate::error::{Error, Result};

/// Series `c_0 + c_1 t + ... + c_D t^D`; the coefficient vector always has
/// length `D + 1`. Arithmetic on two series truncates to the smaller `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<R = Scalar> {
    coeffs: Vec<R>,
}

impl<R: Ring> PowerSeries<R> {
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        PowerSeries { coeffs }
    }

    /// The zero series truncated at degree `max_degree`.
    pub fn zero(max_degree: usize) -> Self {
        PowerSeries { coeffs: vec![R::zero(); max_degree + 1] }
    }

    /// The constant series 1 truncated at degree `max_degree`.
    pub fn one(max_degree: usize) -> Self {
        let mut s = PowerSeries::zero(max_degree);
        s.coeffs[0] = R::one();
        s
    }

    /// Maximum retained degree `D`.
    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &R {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &PowerSeries<R>) -> PowerSeries<R> {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries {
            coeffs: (0..n).map(|d| self.coeffs[d].clone() + rhs.coeffs[d].clone()).collect(),
        }
    }

    pub fn sub(&self, rhs: &PowerSeries<R>) -> PowerSeries<R> {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries {
            coeffs: (0..n).map(|d| self.coeffs[d].clone() - rhs.coeffs[d].clone()).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &PowerSeries<R>) -> PowerSeries<R> {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![R::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn scale(&self, factor: &Scalar) -> PowerSeries<R> {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect() }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> PowerSeries<S> {
        PowerSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl PowerSeries<Scalar> {
    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coeffs.iter().map(Scalar::to_f64).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    /// Largest per-coefficient distance from the nearest integer.
    pub fn max_integer_deviation(&self) -> f64 {
        self.coeffs.iter().map(|c| c.nearest_integer().1).fold(0.0, f64::max)
    }

    /// Round every coefficient to the nearest integer, failing loudly if any
    /// coefficient is farther than `tol` from an integer. A failure signals a
    /// non-group spec or a numerical fault, not a recoverable condition.
    pub fn round_to_exact(&self, tol: f64) -> Result<PowerSeries<Scalar>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (d, c) in self.coeffs.iter().enumerate() {
            let (n, dist) = c.nearest_integer();
            // NaN distances must fail too, so avoid `dist >= tol` alone.
            if dist.is_nan() || dist >= tol {
                return Err(Error::Rounding { degree: d, value: c.to_f64(), tol });
            }
            out.push(Scalar::Exact(BigRational::from_integer(n)));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Coefficients as plain integers, if they all fit.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.as_exact()?;
                if r.is_integer() {
                    r.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Largest per-coefficient absolute difference against `rhs`, compared
    /// over the shared truncation range.
    pub fn max_abs_diff(&self, rhs: &PowerSeries<Scalar>) -> f64 {
        self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a - b).abs_f64()).fold(0.0, f64::max)
    }
}

/// Expand `1 / det(I - t M)` to degree `max_degree` over the matrix's ring.
///
/// Power sums `p_k = trace(M^k)` feed the Newton-style recurrence
/// `h_0 = 1`, `h_d = (1/d) * sum_{k=1..d} p_k h_{d-k}`,
/// whose output `h_d` is the degree-`d` coefficient of the expansion. The
/// product of the result with the polynomial `det(I - t M)` is `1` up to
/// `O(t^{D+1})`.
pub fn series_inv_det<R: Ring>(m: &Mat<R>, max_degree: usize) -> PowerSeries<R> {
    let mut power_sums = Vec::with_capacity(max_degree + 1);
    let mut mk = m.clone();
    for k in 1..=max_degree {
        power_sums.push(mk.trace());
        if k < max_degree {
            // dimensions agree by construction
            mk = mk.mul(m).expect("square matrix power");
        }
    }
    let mut h: Vec<R> = Vec::with_capacity(max_degree + 1);
    h.push(R::one());
    for d in 1..=max_degree {
        let mut acc = R::zero();
        for k in 1..=d {
            acc = acc + power_sums[k - 1].clone() * h[d - k].clone();
        }
        h.push(acc.scale(&Scalar::ratio(1, d as i64)));
    }
    PowerSeries { coeffs: h }
}

impl std::fmt::Display for PowerSeries<Scalar> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TrigPoly;
    use crate::group::hyperbolic_involutions;

    fn ints(v: &[i64]) -> PowerSeries<Scalar> {
        PowerSeries::from_coeffs(v.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    #[test]
    fn inv_det_of_identity() {
        // 1/(1-t)^2 = 1 + 2t + 3t^2 + ...
        let s = series_inv_det(&Mat::<Scalar>::identity(2), 4);
        assert_eq!(s, ints(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn inv_det_of_minus_one() {
        // 1/(1+t)
        let s = series_inv_det(&Mat::diag(&[-1]), 3);
        assert_eq!(s, ints(&[1, -1, 1, -1]));
    }

    #[test]
    fn inv_det_of_hyperbolic_block() {
        // trace 0 and determinant -1 give det(I - tM) = 1 - t^2,
        // so the expansion is 1 + t^2 + t^4 for any theta
        for theta in [0.3, 1.0, 2.5] {
            let (l1, _) = hyperbolic_involutions(theta);
            let mut block = Mat::zeros(2);
            for i in 0..2 {
                for j in 0..2 {
                    block[(i, j)] = l1[(2 + i, 2 + j)].clone();
                }
            }
            let s = series_inv_det(&block, 4);
            assert!(s.max_abs_diff(&ints(&[1, 0, 1, 0, 1])) < 1e-12);
        }
    }

    #[test]
    fn add_and_scale_are_termwise() {
        let a = ints(&[1, 1]);
        let b = ints(&[1, -1]);
        assert_eq!(a.add(&b), ints(&[2, 0]));
        assert_eq!(ints(&[2, 4]).scale(&Scalar::ratio(1, 2)), ints(&[1, 2]));
    }

    #[test]
    fn arithmetic_truncates_to_smaller_degree() {
        let a = ints(&[1, 2, 3, 4]);
        let b = ints(&[1, 1]);
        assert_eq!(a.add(&b).max_degree(), 1);
        assert_eq!(a.mul(&b), ints(&[1, 3]));
    }

    #[test]
    fn rounding_contract() {
        let s =
            PowerSeries::from_coeffs(vec![Scalar::from_f64(1.0), Scalar::from_f64(2.9999999998)]);
        let r = s.round_to_exact(1e-6).unwrap();
        assert_eq!(r.as_integers().unwrap(), vec![1, 3]);

        let bad = PowerSeries::from_coeffs(vec![Scalar::from_f64(1.0), Scalar::from_f64(0.5)]);
        match bad.round_to_exact(1e-6) {
            Err(Error::Rounding { degree: 1, .. }) => {}
            other => panic!("expected rounding failure, got {other:?}"),
        }
    }

    #[test]
    fn trigpoly_series_stays_exact_for_exact_input() {
        let mut m = Mat::<TrigPoly>::identity(2);
        m[(0, 0)] = TrigPoly::cos_term(1, Scalar::one());
        m[(0, 1)] = TrigPoly::sin_term(1, Scalar::from_int(-1));
        m[(1, 0)] = TrigPoly::sin_term(1, Scalar::one());
        m[(1, 1)] = TrigPoly::cos_term(1, Scalar::one());
        let s = series_inv_det(&m, 6);
        // every coefficient exact, and the haar image is the SO(2) count
        assert!(s.coeffs().iter().all(TrigPoly::is_exact));
        let counts: Vec<Scalar> = s.coeffs().iter().map(|c| c.haar()).collect();
        let want: Vec<Scalar> =
            [1, 0, 1, 0, 1, 0, 1].iter().map(|&c| Scalar::from_int(c)).collect();
        assert_eq!(counts, want);
    }
}
