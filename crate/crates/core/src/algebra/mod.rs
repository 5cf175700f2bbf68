//! Scalar and trigonometric-polynomial arithmetic, small dense matrices,
//! truncated power series, and multivariate polynomials.

pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod trigpoly;

pub use matrix::Mat;
pub use poly::Polynomial;
pub use scalar::Scalar;
pub use series::{series_inv_det, PowerSeries};
pub use trigpoly::TrigPoly;

use std::ops::{Add, Mul, Neg, Sub};

/// Commutative coefficient ring shared by matrices and power series.
///
/// `scale` multiplies by a scalar from the base domain; it is how the Newton
/// recurrence divides by the degree without the trait needing division.
pub trait Ring:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, factor: &Scalar) -> Self;
    fn from_scalar(s: Scalar) -> Self;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn scale(&self, factor: &Scalar) -> Self {
        self * factor
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
}

impl Ring for TrigPoly {
    fn zero() -> Self {
        TrigPoly::zero()
    }
    fn one() -> Self {
        TrigPoly::one()
    }
    fn is_zero(&self) -> bool {
        TrigPoly::is_zero(self)
    }
    fn scale(&self, factor: &Scalar) -> Self {
        TrigPoly::scale(self, factor)
    }
    fn from_scalar(s: Scalar) -> Self {
        TrigPoly::constant(s)
    }
}
