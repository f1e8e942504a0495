//! Exact rationals over arbitrary-precision integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Always reduced, denominator positive.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// `{num, den}` wire form. Components that do not fit in an `i64` are
/// emitted as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: JsonInt,
    pub den: JsonInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

impl JsonInt {
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            JsonInt::Small(v) => Some(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().ok(),
        }
    }
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().into(),
            den: r.denom().into(),
        }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<Rational> {
        let den = self.den.to_bigint()?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(self.num.to_bigint()?, den))
    }
}

/// Plain-text rendering: `3`, `-1/2`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip(), Rational::one());
            }
        }

        #[test]
        fn always_normalized(n in -1000i64..1000, d in 1i64..1000) {
            let r = rat(n, d);
            prop_assert!(r.denom() > &BigInt::zero());
            let g = num_integer::Integer::gcd(r.numer(), r.denom());
            prop_assert!(g.is_one());
            let again = Rational::new(r.numer().clone(), r.denom().clone());
            prop_assert_eq!(again, r);
        }

        #[test]
        fn json_round_trip(a in small_rat()) {
            let j = RationalJson::from(&a);
            prop_assert_eq!(j.to_rational().unwrap(), a);
        }
    }

    #[test]
    fn negative_denominator_normalizes() {
        let r = rat(3, -6);
        assert_eq!(format_rational(&r), "-1/2");
        assert_eq!(format_rational(&int(4)), "4");
    }

    #[test]
    fn big_components_become_strings() {
        let big = Rational::from_integer(BigInt::from(i64::MAX) * 4);
        let j = RationalJson::from(&big);
        assert!(matches!(j.num, JsonInt::Big(_)));
        assert_eq!(j.to_rational().unwrap(), big);
    }
}
