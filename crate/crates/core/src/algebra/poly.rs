//! Multivariate polynomials with scalar coefficients, used to represent
//! candidate invariants and the monomial-basis action of group elements.

use std::collections::BTreeMap;

use super::Scalar;
use crate::error::{Error, Result};

/// Polynomial in `nvars` variables; exponent vectors all have length
/// `nvars` and zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, Scalar)>) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {}, expected {nvars}",
                    exps.len()
                )));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    /// The monomial `x_i` raised to `exp`.
    pub fn monomial(nvars: usize, var: usize, exp: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = exp;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Scalar::one());
        Polynomial { nvars, terms }
    }

    /// The linear form `sum_j coeffs[j] * x_j`.
    pub fn linear_form(coeffs: &[Scalar]) -> Self {
        let nvars = coeffs.len();
        let mut p = Polynomial::zero(nvars);
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0; nvars];
                exps[j] = 1;
                p.add_term(exps, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (exps, c) in &rhs.terms {
            out.add_term(exps.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = {
            let mut terms = BTreeMap::new();
            terms.insert(vec![0; self.nvars], Scalar::one());
            Polynomial { nvars: self.nvars, terms }
        };
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(exps, c)| {
                c.to_f64()
                    * exps.iter().zip(point).map(|(&e, &x)| x.powi(e as i32)).product::<f64>()
            })
            .sum()
    }
}

/// All exponent vectors of length `nvars` summing to `degree`, in
/// lexicographically descending order (so `x_1^d` comes first).
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, degree);
    out
}

fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// Number of degree-`d` monomials in `nvars` variables: C(nvars + d - 1, d).
pub fn monomial_count(nvars: usize, degree: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 0..degree as u128 {
        c = c * (nvars as u128 + i) / (i + 1);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration() {
        let ms = monomials(2, 2);
        assert_eq!(ms, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomial_count(2, 2), 3);
        assert_eq!(monomial_count(4, 8), 165);
    }

    #[test]
    fn product_and_eval_agree() {
        // (x + y)^2 = x^2 + 2xy + y^2
        let f = Polynomial::linear_form(&[Scalar::one(), Scalar::one()]).pow(2);
        assert_eq!(f.coeff(&[2, 0]), Scalar::one());
        assert_eq!(f.coeff(&[1, 1]), Scalar::from_int(2));
        assert_eq!(f.coeff(&[0, 2]), Scalar::one());
        assert!((f.eval(&[2.0, 3.0]) - 25.0).abs() < 1e-12);
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = Polynomial::monomial(2, 0, 1);
        let diff =
            x.add(&Polynomial::from_terms(2, vec![(vec![1, 0], Scalar::from_int(-1))]).unwrap());
        assert_eq!(diff, Polynomial::zero(2));
    }

    #[test]
    fn rejects_wrong_arity() {
        assert!(Polynomial::from_terms(2, vec![(vec![1], Scalar::one())]).is_err());
    }
}
