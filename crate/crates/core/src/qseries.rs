//! Sparse q-expansions with exact rational coefficients, known modulo `q^M`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    precision: u64,
    terms: BTreeMap<u64, Rational>,
}

impl QSeries {
    pub fn zero(precision: u64) -> Self {
        assert!(precision > 0, "precision must be positive");
        QSeries {
            precision,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a series from `(exponent, coefficient)` pairs, summing repeated
    /// exponents and dropping those at or above the precision.
    pub fn from_terms(precision: u64, terms: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut s = Self::zero(precision);
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn add_term(&mut self, exp: u64, coeff: &Rational) {
        if exp >= self.precision || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut out = Self::zero(precision);
        for (e, c) in self.terms().chain(other.terms()) {
            out.add_term(e, c);
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.precision);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(&e, c)| (e, c * k)).collect();
        out
    }

    pub fn neg(&self) -> Self {
        QSeries {
            precision: self.precision,
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// The same series known only modulo `q^precision` (must not exceed the
    /// current precision).
    pub fn truncate(&self, precision: u64) -> Self {
        assert!(precision <= self.precision);
        Self::from_terms(precision, self.terms().map(|(e, c)| (e, c.clone())))
    }

    /// Exact equality below the common precision.
    pub fn eq_checked(&self, other: &Self) -> Result<bool> {
        if self.precision != other.precision {
            return Err(Error::PrecisionMismatch {
                left: self.precision,
                right: other.precision,
            });
        }
        Ok(self.terms == other.terms)
    }

    /// Smallest exponent at which the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<u64> {
        let precision = self.precision.min(other.precision);
        self.sub(other)
            .terms()
            .map(|(e, _)| e)
            .find(|&e| e < precision)
    }

    /// Lowest nonzero term.
    pub fn leading(&self) -> Option<(u64, Rational)> {
        self.terms.iter().next().map(|(&e, c)| (e, c.clone()))
    }
}

impl fmt::Display for QSeries {
    /// `2*q^1 - 2*q^4 - 2*q^7 + O(q^9)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let mag = format_rational(&c.abs());
            if first {
                let sign = if c.is_negative() { "-" } else { "" };
                write!(f, "{sign}{mag}*q^{e}")?;
            } else {
                let sign = if c.is_negative() { '-' } else { '+' };
                write!(f, " {sign} {mag}*q^{e}")?;
            }
            first = false;
        }
        if first {
            write!(f, "O(q^{})", self.precision)
        } else {
            write!(f, " + O(q^{})", self.precision)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn s(prec: u64, terms: &[(u64, i64)]) -> QSeries {
        QSeries::from_terms(prec, terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn arithmetic() {
        let a = s(9, &[(1, 2), (4, -2), (7, -2)]);
        assert!(a.add(&a.neg()).is_zero());
        assert!(a.scale(&int(0)).is_zero());
        let b = s(9, &[(1, 2), (4, -2)]).add(&s(9, &[(4, 2)]));
        assert_eq!(b, s(9, &[(1, 2)]));
        assert_eq!(a.add(&s(5, &[])).precision(), 5);
    }

    #[test]
    fn leading_and_equality() {
        let a = s(9, &[(1, 2), (4, -2), (7, -2)]);
        assert_eq!(a.leading(), Some((1, int(2))));
        assert!(a.eq_checked(&a).unwrap());
        assert_eq!(QSeries::zero(9).leading(), None);
        assert!(matches!(
            a.eq_checked(&s(8, &[])),
            Err(Error::PrecisionMismatch { .. })
        ));
        assert_eq!(a.first_difference(&s(9, &[(1, 2), (7, -2)])), Some(4));
    }

    #[test]
    fn truncation_drops_high_terms() {
        let a = s(9, &[(1, 2), (9, 5), (12, 1)]);
        assert_eq!(a, s(9, &[(1, 2)]));
        assert_eq!(s(9, &[(1, 2), (7, 1)]).truncate(5), s(5, &[(1, 2)]));
    }

    #[test]
    fn display() {
        let a = s(9, &[(1, 2), (4, -2), (7, -2)]);
        assert_eq!(a.to_string(), "2*q^1 - 2*q^4 - 2*q^7 + O(q^9)");
        assert_eq!(QSeries::zero(5).to_string(), "O(q^5)");
        assert_eq!(s(5, &[(0, -1)]).to_string(), "-1*q^0 + O(q^5)");
    }
}
