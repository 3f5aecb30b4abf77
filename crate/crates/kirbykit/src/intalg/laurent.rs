use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("no multiple of ±t^k makes this polynomial symmetric: {0}")]
    NotSymmetrizable(String),
}

/// Integer Laurent polynomial in one variable t.
/// Zero coefficients are never stored; equality is coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Substitute t -> t^-1.
    pub fn invert_t(&self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect();
        LaurentPoly { coeffs }
    }

    /// Evaluate at an integer argument. Negative exponents are only legal
    /// at t = ±1, where t^-1 = t.
    pub fn eval_at_unit(&self, t: i64) -> BigInt {
        assert!(t == 1 || t == -1, "eval_at_unit expects t = ±1");
        let t = BigInt::from(t);
        let mut acc = BigInt::zero();
        for (e, c) in &self.coeffs {
            let sign = if e.rem_euclid(2) == 0 { BigInt::one() } else { t.clone() };
            acc += c * sign;
        }
        acc
    }

    pub fn mul_scalar(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect();
        LaurentPoly { coeffs }
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect();
        LaurentPoly { coeffs }
    }

    /// Multiply by ±t^k so that p(t) = p(t^-1), choosing the sign that makes
    /// the leading coefficient positive. Errors when the support cannot be
    /// centered or the centered coefficients are not palindromic.
    pub fn normalize_symmetric(&self) -> Result<LaurentPoly, LaurentError> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        if (lo + hi).rem_euclid(2) != 0 {
            return Err(LaurentError::NotSymmetrizable(self.to_string()));
        }
        let k = -(lo + hi) / 2;
        let centered = self.shift(k);
        let reversed = centered.invert_t();
        if centered != reversed {
            return Err(LaurentError::NotSymmetrizable(self.to_string()));
        }
        let lead = centered.coeff(centered.max_exp().unwrap());
        if lead.is_negative() {
            Ok(-&centered)
        } else {
            Ok(centered)
        }
    }

    /// True if p(t) = p(t^-1).
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_t()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c)).collect();
        LaurentPoly { coeffs }
    }
}

/// Prints lowest exponent first, e.g. `2*t^-1 - 5 + 2*t`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_part = if mag.is_one() && *e != 0 {
                String::new()
            } else {
                format!("{mag}")
            };
            let var_part = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            match (coeff_part.is_empty(), var_part.is_empty()) {
                (true, _) => write!(f, "{var_part}")?,
                (false, true) => write!(f, "{coeff_part}")?,
                (false, false) => write!(f, "{coeff_part}*{var_part}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn trefoil_square() {
        // (t - 1 + t^-1)^2 = t^2 - 2t + 3 - 2t^-1 + t^-2
        let tre = p(&[(1, 1), (0, -1), (-1, 1)]);
        let sq = &tre * &tre;
        assert_eq!(sq, p(&[(2, 1), (1, -2), (0, 3), (-1, -2), (-2, 1)]));
    }

    #[test]
    fn mul_identity() {
        let q = p(&[(3, 7), (-2, -5)]);
        assert_eq!(&q * &LaurentPoly::one(), q);
    }

    #[test]
    fn normalize_twist_family() {
        for n in 1..=10i64 {
            // -n t^2 + (2n+1) t - n  ->  n t - (2n+1) + n t^-1
            let raw = p(&[(2, -n), (1, 2 * n + 1), (0, -n)]);
            let norm = raw.normalize_symmetric().unwrap();
            assert_eq!(norm, p(&[(1, n), (0, -(2 * n + 1)), (-1, n)]));
        }
    }

    #[test]
    fn normalize_rejects_odd_span_and_non_palindromes() {
        // span from exponent 0 to 1 cannot be centered
        assert!(p(&[(0, 1), (1, 1)]).normalize_symmetric().is_err());
        // anti-palindromic: t - t^-1
        assert!(p(&[(2, 1), (0, -1)]).normalize_symmetric().is_err());
        // non-palindromic coefficients
        assert!(p(&[(2, 1), (1, 2), (0, 3)]).normalize_symmetric().is_err());
    }

    #[test]
    fn normalize_zero_and_constant() {
        assert_eq!(LaurentPoly::zero().normalize_symmetric().unwrap(), LaurentPoly::zero());
        assert_eq!(
            p(&[(4, -3)]).normalize_symmetric().unwrap(),
            p(&[(0, 3)])
        );
    }

    #[test]
    fn display_format() {
        let q = p(&[(1, 2), (0, -5), (-1, 2)]);
        assert_eq!(q.to_string(), "2*t^-1 - 5 + 2*t");
        assert_eq!(p(&[(0, 1)]).to_string(), "1");
        assert_eq!(p(&[(1, 1), (0, -1), (-1, 1)]).to_string(), "t^-1 - 1 + t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_at_units() {
        let q = p(&[(1, 1), (0, -3), (-1, 1)]);
        assert_eq!(q.eval_at_unit(1), BigInt::from(-1));
        assert_eq!(q.eval_at_unit(-1), BigInt::from(-5));
    }
}
