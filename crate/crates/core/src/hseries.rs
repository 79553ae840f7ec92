//! Truncated power series in ħ with exact rational coefficients.
//!
//! An [`HSeries`] of truncation order `N` is an element of Q[[ħ]]/ħ^(N+1).
//! Every scalar in the crate is one of these. The deformation parameter
//! `q = e^(ħ/2)` and the usual q-numbers are built here.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

/// Exact rational number.
pub type Q = BigRational;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series is not a unit: constant term is zero")]
    NotAUnit,
    #[error("series has nonzero constant term {0}; division by hbar is undefined")]
    NotDivisible(String),
    #[error("logarithm argument must have zero constant term")]
    LogDomain,
    #[error("cannot parse rational: {0}")]
    Parse(String),
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, d)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(p, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Formats a rational as `"p/q"`.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Small-integer rational constructor.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Element of Q[[ħ]]/ħ^(N+1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HSeries {
    coeffs: Vec<Q>,
}

impl HSeries {
    /// The zero series of truncation order `n`.
    pub fn zero(n: usize) -> Self {
        HSeries { coeffs: vec![Q::zero(); n + 1] }
    }

    /// The unit series.
    pub fn one(n: usize) -> Self {
        Self::constant(Q::one(), n)
    }

    /// A constant series.
    pub fn constant(c: Q, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    /// `c ħ^k`, or zero when `k > n`.
    pub fn monomial(c: Q, k: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        if k <= n {
            s.coeffs[k] = c;
        }
        s
    }

    /// ħ itself.
    pub fn hbar(n: usize) -> Self {
        Self::monomial(Q::one(), 1, n)
    }

    /// Builds a series from explicit coefficients; the length fixes the order.
    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "an HSeries needs at least one coefficient");
        HSeries { coeffs }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of ħ^k (zero beyond the truncation order).
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> &Q {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when the constant term is nonzero.
    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Smallest `k` with a nonzero ħ^k coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients above ħ^m.
    pub fn truncate(&self, m: usize) -> Self {
        assert!(m <= self.order(), "cannot raise truncation order by truncating");
        HSeries { coeffs: self.coeffs[..=m].to_vec() }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(HSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(HSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Truncated Cauchy product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![Q::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(HSeries { coeffs: out })
    }

    pub fn scale(&self, c: &Q) -> Self {
        HSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by ħ^k, discarding what falls past the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![Q::zero(); n + 1];
        for i in 0..=n {
            if i + k <= n {
                out[i + k] = self.coeffs[i].clone();
            }
        }
        HSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b = vec![Q::zero(); n + 1];
        b[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Q::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &b[k - i];
            }
            b[k] = -(s * &inv0);
        }
        Ok(HSeries { coeffs: b })
    }

    /// `x / ħ` for `x` with zero constant term. The result has order `N-1`,
    /// since the ħ^N coefficient of the quotient is not determined by `x`.
    pub fn div_by_hbar(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotDivisible(fmt_q(&self.coeffs[0])));
        }
        if self.order() == 0 {
            return Err(SeriesError::NotDivisible("0 (order 0)".into()));
        }
        Ok(HSeries { coeffs: self.coeffs[1..].to_vec() })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `exp(x)` for `x` with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::LogDomain);
        }
        let n = self.order();
        let mut acc = Self::one(n);
        let mut term = Self::one(n);
        for k in 1..=n {
            term = (&term * self).scale(&qr(1, k as i64));
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// `log(1 + x)` for `x` with zero constant term.
    pub fn log1p_scaled(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::LogDomain);
        }
        let n = self.order();
        let mut acc = Self::zero(n);
        let mut power = Self::one(n);
        for k in 1..=n {
            power = &power * self;
            let c = if k % 2 == 1 { qr(1, k as i64) } else { qr(-1, k as i64) };
            acc = &acc + &power.scale(&c);
        }
        Ok(acc)
    }

    /// `log(x)` for `x` with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogDomain);
        }
        (self - &Self::one(self.order())).log1p_scaled()
    }
}

/// `q^a = exp(a ħ / 2)` at truncation order `n`.
pub fn qpow(a: &Q, n: usize) -> HSeries {
    let half = a / qi(2);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = Q::one();
    for k in 0..=n {
        if k > 0 {
            c = c * &half / qi(k as i64);
        }
        coeffs.push(c.clone());
    }
    HSeries { coeffs }
}

/// `q = e^(ħ/2)`.
pub fn q(n: usize) -> HSeries {
    qpow(&Q::one(), n)
}

/// `(q^m - q^-m) / ħ` at order `n`, computed exactly.
pub fn q_diff_over_hbar(m: &Q, n: usize) -> HSeries {
    let up = qpow(m, n + 1);
    let down = qpow(&-m.clone(), n + 1);
    (&up - &down).div_by_hbar().expect("q^m - q^-m vanishes at hbar = 0")
}

/// Gaussian integer `[m]_q = (q^m - q^-m)/(q - q^-1)`.
pub fn qint(m: i64, n: usize) -> HSeries {
    let num = q_diff_over_hbar(&qi(m), n);
    let den = q_diff_over_hbar(&Q::one(), n);
    &num * &den.invert().expect("(q - q^-1)/hbar is a unit")
}

/// `[m]_q!`.
pub fn qfactorial(m: u32, n: usize) -> HSeries {
    let mut acc = HSeries::one(n);
    for k in 1..=m {
        acc = &acc * &qint(k as i64, n);
    }
    acc
}

macro_rules! binop {
    ($tr:ident, $f:ident, $try:ident) => {
        impl<'a> $tr<&'a HSeries> for &'a HSeries {
            type Output = HSeries;
            /// Panics on a truncation-order mismatch; use the `try_` form to recover.
            fn $f(self, rhs: &'a HSeries) -> HSeries {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<HSeries> for HSeries {
            type Output = HSeries;
            fn $f(self, rhs: HSeries) -> HSeries {
                (&self).$f(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&HSeries> for HSeries {
    fn add_assign(&mut self, rhs: &HSeries) {
        self.check(rhs).unwrap_or_else(|e| panic!("{e}"));
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&HSeries> for HSeries {
    fn sub_assign(&mut self, rhs: &HSeries) {
        self.check(rhs).unwrap_or_else(|e| panic!("{e}"));
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        HSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Neg for HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        -&self
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            match k {
                0 => write!(f, "{a}")?,
                1 if unit => write!(f, "ħ")?,
                1 => write!(f, "{a}ħ")?,
                _ if unit => write!(f, "ħ^{k}")?,
                _ => write!(f, "{a}ħ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(ħ^{})", self.order() + 1)
    }
}

impl fmt::Debug for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct HSeriesJson {
    trunc: usize,
    coeffs: Vec<String>,
}

impl Serialize for HSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HSeriesJson { trunc: self.order(), coeffs: self.coeffs.iter().map(fmt_q).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = HSeriesJson::deserialize(d)?;
        if j.coeffs.len() != j.trunc + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for trunc {}, got {}",
                j.trunc + 1,
                j.trunc,
                j.coeffs.len()
            )));
        }
        let coeffs = j.coeffs.iter().map(|c| parse_q(c)).collect::<Result<Vec<_>, _>>().map_err(D::Error::custom)?;
        Ok(HSeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(cs: &[(i64, i64)]) -> HSeries {
        HSeries::from_coeffs(cs.iter().map(|&(a, b)| qr(a, b)).collect())
    }

    #[test]
    fn q_taylor() {
        assert_eq!(q(3), s(&[(1, 1), (1, 2), (1, 8), (1, 48)]));
    }

    #[test]
    fn q_times_q_inverse() {
        let n = 5;
        assert!((&q(n) * &q(n).invert().unwrap()).is_one());
        assert_eq!(q(3).invert().unwrap(), s(&[(1, 1), (-1, 2), (1, 8), (-1, 48)]));
    }

    #[test]
    fn q_minus_qinv_over_hbar() {
        let d = (&q(4) - &q(4).invert().unwrap()).div_by_hbar().unwrap();
        assert_eq!(d, s(&[(1, 1), (0, 1), (1, 24), (0, 1)]));
        assert_eq!(d, q_diff_over_hbar(&Q::one(), 3));
    }

    #[test]
    fn geometric_inverse() {
        let x = s(&[(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(x.invert().unwrap(), s(&[(1, 1), (-1, 1), (1, 1), (-1, 1)]));
        assert_eq!(HSeries::hbar(3).invert(), Err(SeriesError::NotAUnit));
    }

    #[test]
    fn qpow_and_log() {
        assert_eq!(qpow(&qi(2), 3), s(&[(1, 1), (1, 1), (1, 2), (1, 6)]));
        assert_eq!(HSeries::hbar(3).log1p_scaled().unwrap(), s(&[(0, 1), (1, 1), (-1, 2), (1, 3)]));
        assert!((&qpow(&qr(1, 2), 6) * &qpow(&qr(-1, 2), 6)).is_one());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert_eq!(q(2).try_add(&q(3)), Err(SeriesError::OrderMismatch(2, 3)));
        assert!(q(2).try_mul(&q(3)).is_err());
    }

    #[test]
    fn div_by_hbar_checks_constant() {
        assert!(q(3).div_by_hbar().is_err());
    }

    #[test]
    fn gaussian_integers() {
        // [2]_q = q + q^-1
        let n = 6;
        let two = &q(n) + &q(n).invert().unwrap();
        assert_eq!(qint(2, n), two);
        assert!(qint(1, n).is_one());
        // [3]_q = q^2 + 1 + q^-2
        let three = &(&qpow(&qi(2), n) + &HSeries::one(n)) + &qpow(&qi(-2), n);
        assert_eq!(qint(3, n), three);
    }

    #[test]
    fn json_round_trip() {
        let x = q(3);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"trunc":3,"coeffs":["1/1","1/2","1/8","1/48"]}"#);
        let y: HSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<HSeries>(r#"{"trunc":2,"coeffs":["1"]}"#).is_err());
    }
}
