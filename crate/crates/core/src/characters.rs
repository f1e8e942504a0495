//! Real Dirichlet characters: the trivial character and the quadratic
//! characters χ_d = (d/·) attached to fundamental discriminants.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, int, is_squarefree, kronecker, lcm, rat, squarefree_part, Rational};
use crate::error::{Error, Result};

/// Anything that can be evaluated as a {-1, 0, 1}-valued arithmetic function.
pub trait CharacterValue {
    fn value(&self, n: i64) -> i8;
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d.rem_euclid(4) == 1 {
        return is_squarefree(d);
    }
    if d % 4 == 0 {
        let e = d / 4;
        return matches!(e.rem_euclid(4), 2 | 3) && is_squarefree(e);
    }
    false
}

/// The fundamental discriminant d₀ with `disc = d₀ f²`.
pub fn fundamental_part(disc: i64) -> Result<i64> {
    if disc == 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::NotFundamental(disc));
    }
    let s = squarefree_part(disc);
    Ok(if s.rem_euclid(4) == 1 { s } else { 4 * s })
}

/// A real Dirichlet character modulo `modulus` whose primitive part is χ_disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RealDirichletCharacter {
    modulus: u64,
    disc: i64,
}

impl RealDirichletCharacter {
    pub fn new(modulus: u64, disc: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::NonPositive {
                what: "modulus",
                value: 0,
            });
        }
        if !is_fundamental_discriminant(disc) {
            return Err(Error::NotFundamental(disc));
        }
        let conductor = disc.unsigned_abs();
        if modulus % conductor != 0 {
            return Err(Error::ConductorMismatch { conductor, modulus });
        }
        Ok(RealDirichletCharacter { modulus, disc })
    }

    /// The primitive trivial character (modulus 1).
    pub fn trivial() -> Self {
        RealDirichletCharacter {
            modulus: 1,
            disc: 1,
        }
    }

    pub fn principal(modulus: u64) -> Result<Self> {
        Self::new(modulus, 1)
    }

    /// The primitive character χ_d of conductor |d|.
    pub fn primitive(disc: i64) -> Result<Self> {
        Self::new(disc.unsigned_abs(), disc)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn conductor(&self) -> u64 {
        self.disc.unsigned_abs()
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// True only for the primitive trivial character (modulus 1).
    pub fn is_trivial(&self) -> bool {
        self.disc == 1 && self.modulus == 1
    }

    pub fn delta(&self) -> u8 {
        self.is_trivial() as u8
    }

    pub fn is_even(&self) -> bool {
        self.disc > 0
    }

    /// χ(-1).
    pub fn parity(&self) -> i8 {
        if self.disc > 0 {
            1
        } else {
            -1
        }
    }

    pub fn primitive_part(&self) -> Self {
        RealDirichletCharacter {
            modulus: self.conductor(),
            disc: self.disc,
        }
    }

    pub fn induce(&self, modulus: u64) -> Result<Self> {
        if modulus % self.modulus != 0 {
            return Err(Error::ConductorMismatch {
                conductor: self.modulus,
                modulus,
            });
        }
        Self::new(modulus, self.disc)
    }

    /// Pointwise product, as a character modulo the lcm of the moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let disc = fundamental_part(self.disc * other.disc)
            .expect("product of fundamental discriminants is a discriminant");
        RealDirichletCharacter {
            modulus: lcm(self.modulus, other.modulus),
            disc,
        }
    }

    /// Short label used inside basis labels: `1` or `chi_d`.
    pub fn short_label(&self) -> String {
        if self.disc == 1 && self.modulus == 1 {
            "1".to_string()
        } else if self.disc == 1 {
            format!("1 mod {}", self.modulus)
        } else {
            format!("chi_{}", self.disc)
        }
    }
}

impl CharacterValue for RealDirichletCharacter {
    fn value(&self, n: i64) -> i8 {
        if gcd(n, self.modulus as i64) != 1 {
            0
        } else {
            kronecker(self.disc, n)
        }
    }
}

impl fmt::Display for RealDirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.disc == 1 {
            write!(f, "triv mod {}", self.modulus)
        } else {
            write!(f, "chi_{} mod {}", self.disc, self.modulus)
        }
    }
}

impl FromStr for RealDirichletCharacter {
    type Err = Error;

    /// Accepts `chi_-4 mod 4`, `triv mod 2`, or a bare discriminant
    /// (`-4`, `chi_8`, `1`, `triv`) meaning the primitive character.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, modulus) = match s.split_once("mod") {
            Some((h, m)) => {
                let m: u64 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad modulus in `{s}`")))?;
                (h.trim(), Some(m))
            }
            None => (s, None),
        };
        let disc = match head {
            "triv" | "1" | "trivial" => 1,
            other => other
                .strip_prefix("chi_")
                .unwrap_or(other)
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad character `{s}`")))?,
        };
        match modulus {
            Some(m) => Self::new(m, disc),
            None => Self::primitive(disc),
        }
    }
}

/// The trivial character plus every χ_d with |d| dividing `n`.
pub fn enumerate_real_primitive(n: u64) -> Result<Vec<RealDirichletCharacter>> {
    if n == 0 {
        return Err(Error::NonPositive {
            what: "N",
            value: 0,
        });
    }
    let bound = n as i64;
    let mut out: Vec<_> = (-bound..=bound)
        .filter(|&d| d != 0 && is_fundamental_discriminant(d) && n % d.unsigned_abs() == 0)
        .map(|d| RealDirichletCharacter::primitive(d).expect("checked fundamental"))
        .collect();
    out.sort_by_key(|c| (c.conductor(), -c.disc()));
    Ok(out)
}

fn unit_group_exponent_le_two(m: u64) -> bool {
    (1..m)
        .filter(|&a| gcd(a as i64, m as i64) == 1)
        .all(|a| (a * a) % m == 1)
        || m <= 2
}

/// Every Dirichlet character modulo `m`, provided all of them are real.
pub fn enumerate_characters_mod(m: u64) -> Result<Vec<RealDirichletCharacter>> {
    if m == 0 {
        return Err(Error::NonPositive {
            what: "m",
            value: 0,
        });
    }
    if !unit_group_exponent_le_two(m) {
        return Err(Error::NonRealCharacters(m));
    }
    enumerate_real_primitive(m)?
        .into_iter()
        .map(|c| c.induce(m))
        .collect()
}

fn bernoulli_poly(k: u32, x: &Rational) -> Rational {
    match k {
        1 => x - rat(1, 2),
        2 => x * x - x + rat(1, 6),
        _ => unreachable!("only B_1 and B_2 are needed"),
    }
}

/// B_{k,χ} = f^{k-1} Σ_{a=1}^{f} χ(a) B_k(a/f) for primitive χ of conductor f.
pub fn generalized_bernoulli(chi: &RealDirichletCharacter, k: u32) -> Result<Rational> {
    if !chi.is_primitive() {
        return Err(Error::Imprimitive(chi.to_string()));
    }
    if !(1..=2).contains(&k) {
        return Err(Error::Unsupported(format!("B_{{{k},chi}}")));
    }
    let f = chi.conductor() as i64;
    let sum = (1..=f).fold(int(0), |acc, a| {
        let v = chi.value(a);
        if v == 0 {
            acc
        } else {
            acc + int(v as i64) * bernoulli_poly(k, &rat(a, f))
        }
    });
    Ok(sum * int(f.pow(k - 1)))
}

/// L(0, χ) = -B_{1,χ} and L(-1, χ) = -B_{2,χ}/2 for nontrivial primitive χ.
pub fn l_value(chi: &RealDirichletCharacter, s: i32) -> Result<Rational> {
    if chi.disc() == 1 {
        return Err(Error::Unsupported(
            "L-value of the trivial character".into(),
        ));
    }
    match s {
        0 => Ok(-generalized_bernoulli(chi, 1)?),
        -1 => Ok(-generalized_bernoulli(chi, 2)? / int(2)),
        _ => Err(Error::Unsupported(format!("L(s, chi) at s = {s}"))),
    }
}
