//! Truncated q-expansions with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::rational::{format_rational, Rational};

/// A power series `Σ a(k) q^k` known on `0..=precision`.
///
/// Only nonzero coefficients are stored, so structural equality coincides
/// with equality of series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    precision: u64,
    coeffs: BTreeMap<u64, Rational>,
}

impl PowerSeries {
    pub fn zero(precision: u64) -> Self {
        PowerSeries {
            precision,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(precision: u64) -> Self {
        let mut s = Self::zero(precision);
        s.set(0, Rational::from_integer(1.into()));
        s
    }

    /// Builds from a dense coefficient list; precision is `len - 1`.
    pub fn from_dense<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Rational>,
    {
        let mut s = Self::zero(0);
        let mut last = None;
        for (k, c) in coeffs.into_iter().enumerate() {
            last = Some(k as u64);
            let c: Rational = c.into();
            if !c.is_zero() {
                s.coeffs.insert(k as u64, c);
            }
        }
        s.precision = last.unwrap_or(0);
        s
    }

    pub fn from_terms(precision: u64, terms: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut s = Self::zero(precision);
        for (k, c) in terms {
            if k <= precision {
                let updated = s.coefficient(k) + c;
                s.set(k, updated);
            }
        }
        s
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn coefficient(&self, k: u64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sets a coefficient; exponents beyond the precision are ignored.
    pub fn set(&mut self, k: u64, c: Rational) {
        if k > self.precision {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Dense coefficients `a(0..=precision)`.
    pub fn to_dense(&self) -> Vec<Rational> {
        (0..=self.precision).map(|k| self.coefficient(k)).collect()
    }

    pub fn truncate(&self, precision: u64) -> Self {
        let precision = precision.min(self.precision);
        PowerSeries {
            precision,
            coeffs: self
                .coeffs
                .range(..=precision)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut out = self.truncate(precision);
        for (k, c) in other.coeffs.range(..=precision) {
            let sum = out.coefficient(*k) + c;
            out.set(*k, sum);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision);
        }
        PowerSeries {
            precision: self.precision,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
        for (i, a) in self.coeffs.range(..=precision) {
            for (j, b) in other.coeffs.range(..=precision - i) {
                *out.entry(i + j).or_insert_with(Rational::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        PowerSeries {
            precision,
            coeffs: out,
        }
    }

    /// Substitutes `q -> q^t`. The result is known up to `t(B+1) - 1`.
    pub fn dilate(&self, t: u64) -> Self {
        assert!(t >= 1, "dilation factor must be positive");
        let precision = t * (self.precision + 1) - 1;
        PowerSeries {
            precision,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k * t, c.clone()))
                .collect(),
        }
    }

    /// As [`dilate`](Self::dilate) with the precision capped at `bound`.
    pub fn dilate_to(&self, t: u64, bound: u64) -> Self {
        self.dilate(t).truncate(bound)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.coeffs {
            let s = format_rational(c);
            let (sign, mag) = match s.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", s),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (*k, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "q")?,
                (1, m) => write!(f, "{m}q")?,
                (k, "1") => write!(f, "q^{k}")?,
                (k, m) => write!(f, "{m}q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.precision + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use proptest::prelude::*;

    fn series(coeffs: &[i64]) -> PowerSeries {
        PowerSeries::from_dense(coeffs.iter().map(|&c| int(c)))
    }

    #[test]
    fn dilate_example() {
        let f = PowerSeries::from_terms(2, [(1, int(1)), (2, int(1))]);
        let g = f.dilate(3);
        assert_eq!(g.precision(), 8);
        assert_eq!(g, PowerSeries::from_terms(8, [(3, int(1)), (6, int(1))]));
    }

    #[test]
    fn geometric_series_inverse() {
        let one_minus_q = PowerSeries::from_terms(20, [(0, int(1)), (1, int(-1))]);
        let geometric = series(&[1; 21]);
        assert_eq!(one_minus_q.mul(&geometric), PowerSeries::one(20));
    }

    #[test]
    fn add_negation_is_zero() {
        let f = series(&[1, -2, 0, 5, 7]);
        let z = f.add(&f.scale(&int(-1)));
        assert!(z.is_zero());
        assert_eq!(z.precision(), 4);
    }

    #[test]
    fn mixed_precision_truncates() {
        let f = series(&[1, 1, 1, 1, 1, 1]);
        let g = series(&[1, 1, 1]);
        assert_eq!(f.add(&g).precision(), 2);
        assert_eq!(f.mul(&g).precision(), 2);
        assert_eq!(f.mul(&g), series(&[1, 2, 3]));
    }

    #[test]
    fn display() {
        let f = series(&[1, -4, 0, 2]);
        assert_eq!(f.to_string(), "1 - 4q + 2q^3 + O(q^4)");
    }

    fn arb_series() -> impl Strategy<Value = PowerSeries> {
        proptest::collection::vec(-5i64..5, 1..12).prop_map(|v| series(&v))
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn dilation_multiplicative(f in arb_series(), s in 1u64..5, t in 1u64..5) {
            prop_assert_eq!(f.dilate(s).dilate(t), f.dilate(s * t));
        }
    }
}
