//! Elementary number theory on machine integers.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: i64, n: i64) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (a/n), defined for every pair of integers.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1i8;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    result * jacobi(a, n)
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::NonPositive {
            what: "n",
            value: 0,
        });
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// σ(n) = sum of divisors.
pub fn sigma(n: u64) -> u64 {
    divisors(n).map(|ds| ds.iter().sum()).unwrap_or(0)
}

/// σ(n/s) when s divides n, 0 otherwise.
pub fn sigma_shifted(n: u64, s: u64) -> u64 {
    if s == 0 || n == 0 || n % s != 0 {
        0
    } else {
        sigma(n / s)
    }
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(m: u64) -> u64 {
    prime_factors(m)
        .into_iter()
        .fold(m, |acc, p| acc / p * (p - 1))
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Squarefree kernel with sign: `n = s * f^2` with `s` squarefree.
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0, "squarefree part of zero");
    let sign = n.signum();
    let mut rest = n.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out *= rest;
    sign * out as i64
}

pub fn gcd(a: i64, b: i64) -> u64 {
    a.gcd(&b).unsigned_abs()
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    fn euler_criterion(a: i64, p: i64) -> i8 {
        let mut acc = 1i64;
        let base = a.rem_euclid(p);
        for _ in 0..(p - 1) / 2 {
            acc = acc * base % p;
        }
        match acc {
            0 => 0,
            1 => 1,
            x if x == p - 1 => -1,
            _ => unreachable!(),
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-4, 5), euler_criterion(-4, 5));
        assert_eq!(kronecker(-4, 5), 1);
        let got: Vec<i8> = (1..=6).map(|n| kronecker(-3, n)).collect();
        assert_eq!(got, vec![1, -1, 0, 1, -1, 0]);
    }

    #[test]
    fn kronecker_special_arguments() {
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(-5, -1), -1);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(-1, 2), 1);
        assert_eq!(kronecker(7, 2), 1);
    }

    #[test]
    fn kronecker_completely_multiplicative() {
        for a in -30i64..=30 {
            for m in 1i64..=30 {
                for n in 1i64..=30 {
                    assert_eq!(
                        kronecker(a, m * n),
                        kronecker(a, m) * kronecker(a, n),
                        "a={a} m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        let primes = (3i64..100).filter(|&p| (2..p).all(|d| p % d != 0));
        for p in primes {
            for a in -60i64..=60 {
                if a.rem_euclid(p) != 0 {
                    assert_eq!(kronecker(a, p), euler_criterion(a, p), "a={a} p={p}");
                }
            }
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), trial_divisors(12));
        assert_eq!(divisors(49).unwrap(), vec![1, 7, 49]);
        assert!(divisors(0).is_err());
        for n in 1..300 {
            assert_eq!(divisors(n).unwrap(), trial_divisors(n));
        }
    }

    #[test]
    fn sigma_shifted_examples() {
        assert_eq!(sigma_shifted(4, 4), 1);
        assert_eq!(sigma_shifted(6, 1), trial_divisors(6).iter().sum::<u64>());
        assert_eq!(sigma_shifted(6, 1), 12);
        assert_eq!(sigma_shifted(6, 4), 0);
    }

    #[test]
    fn phi_examples() {
        let count_units = |m: u64| (1..=m).filter(|&a| gcd(a as i64, m as i64) == 1).count() as u64;
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(3), count_units(3));
        assert_eq!(euler_phi(36), 12);
        for m in 1..200 {
            assert_eq!(euler_phi(m), count_units(m));
        }
    }

    #[test]
    fn squarefree_helpers() {
        assert_eq!(squarefree_part(16), 1);
        assert_eq!(squarefree_part(-36), -1);
        assert_eq!(squarefree_part(32), 2);
        assert_eq!(squarefree_part(-63), -7);
        assert!(is_squarefree(-3));
        assert!(!is_squarefree(12));
    }
}
