//! One-variable Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("the zero polynomial has no canonical form")]
pub struct ZeroPolynomial;

/// Sparse exponent -> coefficient map; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// From `(coefficient, exponent)` pairs; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, i32)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    /// Dense coefficients, lowest exponent first, starting at `min_exp`.
    pub fn from_coefficients(coeffs: &[i64], min_exp: i32) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (c, min_exp + k as i32)),
        )
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Dense coefficient list from the lowest to the highest exponent.
    pub fn coefficients(&self) -> Vec<i64> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coeff(e)).collect(),
            _ => Vec::new(),
        }
    }

    pub fn shift(&self, k: i32) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Substitutes `t -> t^factor` (e.g. `-1` for the mirror variable).
    pub fn substitute_power(&self, factor: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &c)| (c, e * factor)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at an integer point; `t` must be `±1` when negative exponents occur
    /// unless the caller accepts exact division semantics (`None` when inexact).
    pub fn eval(&self, t: i64) -> Option<i128> {
        let mut num: i128 = 0;
        let lo = self.min_exp().unwrap_or(0).min(0);
        // multiply through by t^-lo so all exponents are non-negative
        for (&e, &c) in &self.terms {
            num += c as i128 * (t as i128).checked_pow((e - lo) as u32)?;
        }
        let den = (t as i128).checked_pow((-lo) as u32)?;
        if den == 0 {
            return None;
        }
        (num % den == 0).then(|| num / den)
    }

    /// Multiplies by `±t^k` so the lowest exponent is 0 and the highest
    /// coefficient is positive.
    pub fn canonicalize(&self) -> Result<Self, ZeroPolynomial> {
        let lo = self.min_exp().ok_or(ZeroPolynomial)?;
        let lead = self
            .terms
            .values()
            .next_back()
            .copied()
            .ok_or(ZeroPolynomial)?;
        let shifted = self.shift(-lo);
        Ok(if lead < 0 { -&shifted } else { shifted })
    }

    pub fn is_palindromic(&self) -> bool {
        let c = self.coefficients();
        c.iter().eq(c.iter().rev())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&e, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, e) => write!(f, "t^{e}")?,
                (m, 1) => write!(f, "{m}t")?,
                (m, e) => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as `{"min_exp": k, "coefficients": [...]}`.
#[derive(Serialize, Deserialize)]
struct DenseJson {
    min_exp: i32,
    coefficients: Vec<i64>,
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DenseJson {
            min_exp: self.min_exp().unwrap_or(0),
            coefficients: self.coefficients(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = DenseJson::deserialize(d)?;
        Ok(Self::from_coefficients(&raw.coefficients, raw.min_exp))
    }
}
