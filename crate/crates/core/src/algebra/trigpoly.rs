//! Trigonometric polynomials in one angle: finite Fourier expansions
//! `a0 + sum_k (a_k cos k*phi + b_k sin k*phi)`.
//!
//! Multiplication is exact via the product-to-sum identities, which is what
//! makes the circle integral a constant-term lookup instead of quadrature.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;

/// Threshold below which float coefficients are dropped after a
/// multiplication, bounding harmonic growth from rounding dust.
const FLOAT_PRUNE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    constant: Scalar,
    /// harmonic index k >= 1 -> coefficient of cos(k*phi)
    cos: BTreeMap<u32, Scalar>,
    /// harmonic index k >= 1 -> coefficient of sin(k*phi)
    sin: BTreeMap<u32, Scalar>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::constant(Scalar::zero())
    }

    pub fn one() -> Self {
        TrigPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        TrigPoly { constant: c, cos: BTreeMap::new(), sin: BTreeMap::new() }
    }

    /// `c * cos(k*phi)`; `k = 0` folds into the constant term.
    pub fn cos_term(k: u32, c: Scalar) -> Self {
        let mut p = TrigPoly::zero();
        p.add_cos(k as i64, c);
        p.prune_zeros();
        p
    }

    /// `c * sin(k*phi)`; `sin(0) = 0`.
    pub fn sin_term(k: u32, c: Scalar) -> Self {
        let mut p = TrigPoly::zero();
        p.add_sin(k as i64, c);
        p.prune_zeros();
        p
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    pub fn cos_coeff(&self, k: u32) -> Scalar {
        self.cos.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn sin_coeff(&self, k: u32) -> Scalar {
        self.sin.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.cos.is_empty() && self.sin.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.cos.is_empty() && self.sin.is_empty()
    }

    /// Largest harmonic index with a stored coefficient.
    pub fn max_harmonic(&self) -> u32 {
        let c = self.cos.keys().next_back().copied().unwrap_or(0);
        let s = self.sin.keys().next_back().copied().unwrap_or(0);
        c.max(s)
    }

    /// True when every stored coefficient is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.constant.is_exact()
            && self.cos.values().all(Scalar::is_exact)
            && self.sin.values().all(Scalar::is_exact)
    }

    /// Evaluate at a concrete angle.
    pub fn eval(&self, phi: f64) -> f64 {
        let mut v = self.constant.to_f64();
        for (k, c) in &self.cos {
            v += c.to_f64() * (*k as f64 * phi).cos();
        }
        for (k, c) in &self.sin {
            v += c.to_f64() * (*k as f64 * phi).sin();
        }
        v
    }

    /// The Haar integral over the circle with normalized measure: every
    /// harmonic integrates to zero, so only the constant term survives.
    pub fn haar(&self) -> Scalar {
        self.constant.clone()
    }

    pub fn scale(&self, factor: &Scalar) -> TrigPoly {
        let mut out = TrigPoly::constant(&self.constant * factor);
        for (k, c) in &self.cos {
            out.cos.insert(*k, c * factor);
        }
        for (k, c) in &self.sin {
            out.sin.insert(*k, c * factor);
        }
        out.prune_zeros();
        out
    }

    /// Signed-index accumulation with cos(-k) = cos(k).
    fn add_cos(&mut self, k: i64, c: Scalar) {
        let k = k.unsigned_abs() as u32;
        if k == 0 {
            self.constant = &self.constant + &c;
        } else {
            let e = self.cos.entry(k).or_insert_with(Scalar::zero);
            *e = &*e + &c;
        }
    }

    /// Signed-index accumulation with sin(-k) = -sin(k) and sin(0) = 0.
    fn add_sin(&mut self, k: i64, c: Scalar) {
        if k == 0 {
            return;
        }
        let c = if k < 0 { -c } else { c };
        let k = k.unsigned_abs() as u32;
        let e = self.sin.entry(k).or_insert_with(Scalar::zero);
        *e = &*e + &c;
    }

    fn prune_zeros(&mut self) {
        self.cos.retain(|_, c| !c.is_zero());
        self.sin.retain(|_, c| !c.is_zero());
    }

    fn prune_float_dust(&mut self) {
        self.cos.retain(|_, c| c.is_exact() || c.abs_f64() >= FLOAT_PRUNE);
        self.sin.retain(|_, c| c.is_exact() || c.abs_f64() >= FLOAT_PRUNE);
    }

    fn terms(&self) -> Vec<(Wave, u32, &Scalar)> {
        let mut out = Vec::with_capacity(1 + self.cos.len() + self.sin.len());
        if !self.constant.is_zero() {
            out.push((Wave::Cos, 0, &self.constant));
        }
        for (k, c) in &self.cos {
            out.push((Wave::Cos, *k, c));
        }
        for (k, c) in &self.sin {
            out.push((Wave::Sin, *k, c));
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Wave {
    Cos,
    Sin,
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        out.constant = &out.constant + &rhs.constant;
        for (k, c) in &rhs.cos {
            out.add_cos(*k as i64, c.clone());
        }
        for (k, c) in &rhs.sin {
            out.add_sin(*k as i64, c.clone());
        }
        out.prune_zeros();
        out
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &-rhs
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        let mut out = TrigPoly::constant(-&self.constant);
        for (k, c) in &self.cos {
            out.cos.insert(*k, -c);
        }
        for (k, c) in &self.sin {
            out.sin.insert(*k, -c);
        }
        out
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;

    /// Pointwise product as functions of phi, rewritten back to the canonical
    /// form with the product-to-sum identities. The max harmonic of the
    /// result is the sum of the operands' max harmonics.
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let half = Scalar::ratio(1, 2);
        let mut out = TrigPoly::zero();
        for (wa, ka, ca) in self.terms() {
            for (wb, kb, cb) in rhs.terms() {
                let c = ca * cb;
                let ka = ka as i64;
                let kb = kb as i64;
                if ka == 0 || kb == 0 {
                    // one factor is constant
                    let (w, k) = if ka == 0 { (wb, kb) } else { (wa, ka) };
                    match w {
                        Wave::Cos => out.add_cos(k, c),
                        Wave::Sin => out.add_sin(k, c),
                    }
                    continue;
                }
                let ch = &c * &half;
                match (wa, wb) {
                    (Wave::Cos, Wave::Cos) => {
                        // cos a cos b = (cos(a-b) + cos(a+b)) / 2
                        out.add_cos(ka - kb, ch.clone());
                        out.add_cos(ka + kb, ch);
                    }
                    (Wave::Sin, Wave::Sin) => {
                        // sin a sin b = (cos(a-b) - cos(a+b)) / 2
                        out.add_cos(ka - kb, ch.clone());
                        out.add_cos(ka + kb, -ch);
                    }
                    (Wave::Sin, Wave::Cos) => {
                        // sin a cos b = (sin(a+b) + sin(a-b)) / 2
                        out.add_sin(ka + kb, ch.clone());
                        out.add_sin(ka - kb, ch);
                    }
                    (Wave::Cos, Wave::Sin) => {
                        // cos a sin b = (sin(a+b) - sin(a-b)) / 2
                        out.add_sin(ka + kb, ch.clone());
                        out.add_sin(-(ka - kb), ch);
                    }
                }
            }
        }
        out.prune_zeros();
        out.prune_float_dust();
        out
    }
}

macro_rules! owned_ops {
    ($($trait:ident, $method:ident;)*) => {$(
        impl $trait for TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: TrigPoly) -> TrigPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops! {
    Add, add;
    Sub, sub;
    Mul, mul;
}

impl Neg for TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        -&self
    }
}

impl From<Scalar> for TrigPoly {
    fn from(s: Scalar) -> Self {
        TrigPoly::constant(s)
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_zero() || self.is_constant() {
            parts.push(self.constant.to_string());
        }
        for (k, c) in &self.cos {
            parts.push(format!("({c})cos {k}p"));
        }
        for (k, c) in &self.sin {
            parts.push(format!("({c})sin {k}p"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
