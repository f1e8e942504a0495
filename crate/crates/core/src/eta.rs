//! Eta quotients `Π η(kτ)^{r_k}` with nonnegative exponents.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::arith::{PowerSeries, Rational};
use crate::error::{Error, Result};

/// Product of `η(kτ)^r` over distinct scales `k`, with `Σ k·r ≡ 0 (mod 24)`
/// so that the q-expansion has integral exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaProduct {
    factors: Vec<(u64, u32)>,
}

impl EtaProduct {
    pub fn new(factors: &[(u64, u32)]) -> Result<Self> {
        let mut factors: Vec<(u64, u32)> =
            factors.iter().copied().filter(|&(_, r)| r > 0).collect();
        if factors.is_empty() {
            return Err(Error::InvalidEta("empty product".into()));
        }
        factors.sort();
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidEta(format!("scale {} repeated", w[0].0)));
            }
        }
        if factors[0].0 == 0 {
            return Err(Error::InvalidEta("scale 0".into()));
        }
        let total: u64 = factors.iter().map(|&(k, r)| k * r as u64).sum();
        if total % 24 != 0 {
            return Err(Error::InvalidEta(format!(
                "q-offset {total}/24 is not an integer"
            )));
        }
        Ok(EtaProduct { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Exponent of the leading power of q.
    pub fn offset(&self) -> u64 {
        self.factors.iter().map(|&(k, r)| k * r as u64).sum::<u64>() / 24
    }

    /// Twice the weight.
    pub fn double_weight(&self) -> u32 {
        self.factors.iter().map(|&(_, r)| r).sum()
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Integer coefficients `c(0..=prec)`.
    pub fn coefficients(&self, prec: u64) -> Vec<BigInt> {
        let len = prec as usize + 1;
        let mut out = vec![BigInt::from(0); len];
        let offset = self.offset() as usize;
        if offset >= len {
            return out;
        }
        let inner = len - offset;
        // Π_k Π_n (1 - q^{kn})^r truncated to `inner` terms.
        let mut poly = vec![BigInt::from(0); inner];
        poly[0] = BigInt::from(1);
        for &(k, r) in &self.factors {
            let k = k as usize;
            for _ in 0..r {
                let mut step = k;
                while step < inner {
                    for i in (step..inner).rev() {
                        let t = poly[i - step].clone();
                        poly[i] -= t;
                    }
                    step += k;
                }
            }
        }
        for (i, c) in poly.into_iter().enumerate() {
            out[i + offset] = c;
        }
        out
    }

    pub fn series(&self, prec: u64) -> PowerSeries {
        let terms = self
            .coefficients(prec)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (i as u64, Rational::from_integer(c)));
        PowerSeries::from_terms(prec, terms)
    }
}

impl fmt::Display for EtaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(k, r)| {
                if r == 1 {
                    format!("eta({k})")
                } else {
                    format!("eta({k})^{r}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for EtaProduct {
    type Err = Error;

    /// Parses `eta(6)^4`, `eta(4)^2*eta(8)^2`, `eta(1)*eta(2)*eta(7)*eta(14)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad eta product `{s}`"));
        let mut factors = vec![];
        for part in compact.split('*') {
            let rest = part.strip_prefix("eta(").ok_or_else(bad)?;
            let (k, tail) = rest.split_once(')').ok_or_else(bad)?;
            let k: u64 = k.parse().map_err(|_| bad())?;
            let r: u32 = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?
            };
            factors.push((k, r));
        }
        EtaProduct::new(&factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta(s: &str) -> EtaProduct {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// η(τ)·q^{-1/24} via Euler's pentagonal number theorem.
    fn pentagonal(len: usize) -> Vec<i64> {
        let mut out = vec![0i64; len];
        for j in -40i64..=40 {
            let g = (j * (3 * j - 1) / 2) as usize;
            if g < len {
                out[g] += if j % 2 == 0 { 1 } else { -1 };
            }
        }
        out
    }

    #[test]
    fn parse_and_display() {
        let e = eta("eta(6)^4");
        assert_eq!(e.label(), "eta(6)^4");
        assert_eq!(e.offset(), 1);
        assert_eq!(e.double_weight(), 4);
        let e = eta(" eta(14) * eta(2)*eta(7)*eta(1) ");
        assert_eq!(e.label(), "eta(1)*eta(2)*eta(7)*eta(14)");
        assert_eq!(e.offset(), 1);
        assert!("eta(5)".parse::<EtaProduct>().is_err());
        assert!("eta(6)^4*eta(6)".parse::<EtaProduct>().is_err());
        assert!("theta(6)".parse::<EtaProduct>().is_err());
    }

    #[test]
    fn pentagonal_cross_check() {
        // η(24τ) = Σ (-1)^j q^{(6j-1)^2}
        let e = eta("eta(24)");
        let c = e.coefficients(600);
        let mut expected = vec![0i64; 601];
        for (g, v) in pentagonal(30).into_iter().enumerate() {
            if 24 * g + 1 <= 600 {
                expected[24 * g + 1] = v;
            }
        }
        assert_eq!(c, ints(&expected));

        // η(6τ)^4 as the fourth power of the pentagonal series.
        let base = pentagonal(60);
        let mut p = vec![1i64];
        for _ in 0..4 {
            let mut next = vec![0i64; 60];
            for (i, &a) in p.iter().enumerate() {
                for (j, &b) in base.iter().enumerate() {
                    if i + j < 60 {
                        next[i + j] += a * b;
                    }
                }
            }
            p = next;
        }
        let c = eta("eta(6)^4").coefficients(300);
        for n in 0..=300usize {
            let want = if n >= 1 && (n - 1) % 6 == 0 {
                p[(n - 1) / 6]
            } else {
                0
            };
            assert_eq!(c[n], BigInt::from(want), "n={n}");
        }
    }

    fn sparse(prec: usize, terms: &[(usize, i64)]) -> Vec<BigInt> {
        let mut v = vec![0i64; prec + 1];
        for &(k, c) in terms {
            v[k] = c;
        }
        ints(&v)
    }

    #[test]
    fn known_expansions() {
        assert_eq!(
            eta("eta(6)^4").coefficients(37),
            sparse(
                37,
                &[
                    (1, 1),
                    (7, -4),
                    (13, 2),
                    (19, 8),
                    (25, -5),
                    (31, -4),
                    (37, -10)
                ]
            )
        );
        assert_eq!(
            eta("eta(4)^2*eta(8)^2").coefficients(25),
            sparse(25, &[(1, 1), (5, -2), (9, -3), (13, 6), (17, 2), (25, -1)])
        );
        assert_eq!(
            eta("eta(3)^2*eta(9)^2").coefficients(25),
            sparse(
                25,
                &[
                    (1, 1),
                    (4, -2),
                    (7, -1),
                    (13, 5),
                    (16, 4),
                    (19, -7),
                    (25, -5)
                ]
            )
        );
        assert_eq!(
            eta("eta(1)*eta(2)*eta(7)*eta(14)").coefficients(8),
            sparse(
                8,
                &[(1, 1), (2, -1), (3, -2), (4, 1), (6, 2), (7, 1), (8, -1)]
            )
        );
    }

    #[test]
    fn precision_below_offset() {
        let e = eta("eta(2)*eta(4)*eta(14)*eta(28)");
        assert_eq!(e.offset(), 2);
        assert_eq!(e.coefficients(1), ints(&[0, 0]));
        assert_eq!(e.series(5).precision(), 5);
    }
}
