//! Small dense square matrices over a coefficient ring.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Ring, Scalar, TrigPoly};
use crate::error::{Error, Result};

/// Square matrix with entries in `R`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<R = Scalar> {
    dim: usize,
    entries: Vec<R>,
}

impl<R: Ring> Mat<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!("expected a square {dim}x{dim} matrix")));
        }
        Ok(Mat { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn zeros(dim: usize) -> Self {
        Mat { dim, entries: vec![R::zero(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.dim)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Mat<R>) -> Result<Mat<R>> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{0} by {}x{1}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out: Mat<R> = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Mat<R>) -> Result<Mat<R>> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        Ok(Mat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Mat<R>) -> Result<Mat<R>> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch("matrix subtraction".into()));
        }
        Ok(Mat {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Scalar) -> Mat<R> {
        self.map(|e| e.scale(factor))
    }

    pub fn transpose(&self) -> Mat<R> {
        let n = self.dim;
        let mut out: Mat<R> = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> R {
        (0..self.dim).fold(R::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.dim)
    }
}

impl<R> std::ops::Index<(usize, usize)> for Mat<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.entries[i * self.dim + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Mat<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mat<Scalar> {
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect(),
        )
        .expect("square integer matrix")
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(entries: &[i64]) -> Self {
        let mut m = Mat::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = Scalar::from_int(v);
        }
        m
    }

    /// True when every entry is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(Scalar::is_exact)
    }

    /// Entries as exact rationals, or an error if any entry is a float.
    pub fn exact_entries(&self) -> Result<Vec<BigRational>> {
        self.entries.iter().map(|e| e.as_exact().cloned().ok_or(Error::InexactClosure)).collect()
    }

    pub fn to_f64_grid(&self) -> Vec<Vec<f64>> {
        self.rows().map(|r| r.iter().map(Scalar::to_f64).collect()).collect()
    }

    /// Largest absolute entry of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Mat<Scalar>) -> f64 {
        self.entries.iter().zip(&rhs.entries).map(|(a, b)| (a - b).abs_f64()).fold(0.0, f64::max)
    }

    /// Exact inverse by Gauss-Jordan elimination; all entries must be exact.
    pub fn inverse_exact(&self) -> Result<Mat<Scalar>> {
        let n = self.dim;
        let mut a: Vec<Vec<BigRational>> = self
            .rows()
            .map(|r| {
                r.iter()
                    .map(|e| e.as_exact().cloned().ok_or(Error::InexactClosure))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::NonInvertibleGenerator { index: 0 })?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] -= t;
                }
            }
        }
        Mat::from_rows(
            inv.into_iter().map(|row| row.into_iter().map(Scalar::Exact).collect()).collect(),
        )
    }

    /// Evaluate a float copy (exact entries converted to f64).
    pub fn floatify(&self) -> Mat<Scalar> {
        self.map(|e| e.floatify())
    }
}

impl Mat<TrigPoly> {
    /// Evaluate every entry at a concrete angle.
    pub fn eval(&self, phi: f64) -> Mat<Scalar> {
        self.map(|e| Scalar::from_f64(e.eval(phi)))
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(TrigPoly::is_exact)
    }
}

/// Promote a scalar matrix into trig-polynomial constants.
pub fn promote(m: &Mat<Scalar>) -> Mat<TrigPoly> {
    m.map(|e| TrigPoly::constant(e.clone()))
}
