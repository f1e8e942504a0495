//! Twisted divisor sums and the Eisenstein bases of E_1(Γ0(N), χ) and
//! E_2(Γ0(N), χ) built from real primitive characters.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, int, prime_factors, sigma, PowerSeries, Rational};
use crate::characters::{
    enumerate_real_primitive, fundamental_part, l_value, CharacterValue, RealDirichletCharacter,
};
use crate::error::{Error, Result};

/// `Σ_{d|n} ψ(n/d) φ(d) d^k`.
pub fn sigma_twisted<A, B>(k: u32, psi: &A, phi: &B, n: u64) -> BigInt
where
    A: CharacterValue + ?Sized,
    B: CharacterValue + ?Sized,
{
    let mut acc = BigInt::from(0);
    for d in divisors(n).unwrap_or_default() {
        let v = psi.value((n / d) as i64) as i64 * phi.value(d as i64) as i64;
        if v != 0 {
            acc += BigInt::from(v) * BigInt::from(d).pow(k);
        }
    }
    acc
}

/// One of E_1^{ψ,φ,t} or E_2^{ψ,φ,t}. Characters are primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinSpec {
    weight: u32,
    psi: RealDirichletCharacter,
    phi: RealDirichletCharacter,
    t: u64,
}

impl EisensteinSpec {
    pub fn new(
        weight: u32,
        psi: RealDirichletCharacter,
        phi: RealDirichletCharacter,
        t: u64,
    ) -> Result<Self> {
        let invalid = |why: &str| {
            Error::InvalidEisenstein(format!(
                "E{weight}[{},{},{t}]: {why}",
                psi.short_label(),
                phi.short_label()
            ))
        };
        if !psi.is_primitive() || !phi.is_primitive() {
            return Err(invalid("characters must be primitive"));
        }
        if t == 0 {
            return Err(invalid("t must be positive"));
        }
        let parity = psi.parity() * phi.parity();
        match weight {
            1 if parity != -1 => Err(invalid("psi*phi must be odd")),
            2 if parity != 1 => Err(invalid("psi*phi must be even")),
            2 if psi.is_trivial() && phi.is_trivial() && t == 1 => Err(invalid("t must exceed 1")),
            1 | 2 => {
                // Weight 1 pairs are unordered; store the even character first.
                let (psi, phi) = if weight == 1 && !psi.is_even() {
                    (phi, psi)
                } else {
                    (psi, phi)
                };
                Ok(EisensteinSpec {
                    weight,
                    psi,
                    phi,
                    t,
                })
            }
            _ => Err(invalid("only weights 1 and 2 are supported")),
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn psi(&self) -> &RealDirichletCharacter {
        &self.psi
    }

    pub fn phi(&self) -> &RealDirichletCharacter {
        &self.phi
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// t·u·v, the smallest level containing this series.
    pub fn level(&self) -> u64 {
        self.t * self.psi.conductor() * self.phi.conductor()
    }

    /// Primitive character ψφ.
    pub fn nebentypus(&self) -> RealDirichletCharacter {
        self.psi.mul(&self.phi).primitive_part()
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    pub fn constant_term(&self) -> Result<Rational> {
        let half = Rational::new(1.into(), 2.into());
        match self.weight {
            1 => {
                let mut c = int(0);
                if self.phi.is_trivial() {
                    c += l_value(&self.psi, 0)?;
                }
                if self.psi.is_trivial() {
                    c += l_value(&self.phi, 0)?;
                }
                Ok(c * half)
            }
            _ => {
                if self.psi.is_trivial() && !self.phi.is_trivial() {
                    Ok(l_value(&self.phi, -1)? * half)
                } else {
                    Ok(int(0))
                }
            }
        }
    }

    /// Constant term of the modular form itself. Differs from
    /// [`constant_term`](Self::constant_term) only for ψ = φ = 1, whose
    /// q-expansion above omits `(t-1)/24`.
    pub fn modular_constant_term(&self) -> Result<Rational> {
        if self.weight == 2 && self.psi.is_trivial() && self.phi.is_trivial() {
            Ok(Rational::new((self.t as i64 - 1).into(), 24.into()))
        } else {
            self.constant_term()
        }
    }

    /// Coefficient of q^n.
    pub fn coefficient(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return self.constant_term();
        }
        if self.weight == 2 && self.psi.is_trivial() && self.phi.is_trivial() {
            // σ(n) - tσ(n/t), with no constant term.
            let shifted = if n % self.t == 0 {
                self.t * sigma(n / self.t)
            } else {
                0
            };
            return Ok(int(sigma(n) as i64 - shifted as i64));
        }
        if n % self.t != 0 {
            return Ok(int(0));
        }
        let m = n / self.t;
        Ok(Rational::from_integer(sigma_twisted(
            self.weight - 1,
            &self.psi,
            &self.phi,
            m,
        )))
    }

    pub fn series(&self, prec: u64) -> Result<PowerSeries> {
        if self.weight == 2 && self.psi.is_trivial() && self.phi.is_trivial() {
            let terms = (1..=prec).map(|n| (n, self.coefficient(n).expect("trivial branch")));
            return Ok(PowerSeries::from_terms(prec, terms));
        }
        let mut s = PowerSeries::zero(prec);
        s.set(0, self.constant_term()?);
        for m in 1..=prec / self.t {
            let c = sigma_twisted(self.weight - 1, &self.psi, &self.phi, m);
            s.set(m * self.t, Rational::from_integer(c));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> EisensteinJson {
        EisensteinJson {
            label: self.label(),
            weight: self.weight,
            psi: self.psi.short_label(),
            phi: self.phi.short_label(),
            t: self.t,
        }
    }
}

impl fmt::Display for EisensteinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "E{}[{},{},{}]",
            self.weight,
            self.psi.short_label(),
            self.phi.short_label(),
            self.t
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinJson {
    pub label: String,
    pub weight: u32,
    pub psi: String,
    pub phi: String,
    pub t: u64,
}

pub fn e1_series(spec: &EisensteinSpec, prec: u64) -> Result<PowerSeries> {
    if spec.weight != 1 {
        return Err(Error::InvalidEisenstein(format!(
            "{spec} is not of weight 1"
        )));
    }
    spec.series(prec)
}

pub fn e2_series(spec: &EisensteinSpec, prec: u64) -> Result<PowerSeries> {
    if spec.weight != 2 {
        return Err(Error::InvalidEisenstein(format!(
            "{spec} is not of weight 2"
        )));
    }
    spec.series(prec)
}

/// Smallest conductor at the prime `p` carrying a non-real primitive character.
fn complex_conductor(p: u64) -> u64 {
    match p {
        2 => 16,
        3 => 9,
        _ => p,
    }
}

/// Refuses levels where a pair of conjugate non-real characters could also
/// multiply to a real nebentypus, since such pairs are not enumerated.
pub fn check_real_pairs_suffice(n: u64) -> Result<()> {
    for p in prime_factors(n) {
        let c = complex_conductor(p);
        if n % (c * c) == 0 {
            return Err(Error::ComplexPairsPossible { level: n, prime: p });
        }
    }
    Ok(())
}

fn enumerate_basis(
    weight: u32,
    n: u64,
    chi: &RealDirichletCharacter,
) -> Result<Vec<EisensteinSpec>> {
    if n == 0 {
        return Err(Error::NonPositive {
            what: "N",
            value: 0,
        });
    }
    if n % chi.modulus() != 0 {
        return Err(Error::ConductorMismatch {
            conductor: chi.modulus(),
            modulus: n,
        });
    }
    check_real_pairs_suffice(n)?;
    let target = chi.primitive_part().disc();
    let chars = enumerate_real_primitive(n)?;
    let mut out = vec![];
    for psi in &chars {
        for phi in &chars {
            let uv = psi.conductor() * phi.conductor();
            if n % uv != 0 || fundamental_part(psi.disc() * phi.disc())? != target {
                continue;
            }
            if weight == 1 && !(psi.is_even() && !phi.is_even()) {
                continue;
            }
            if weight == 2 && psi.parity() != phi.parity() {
                continue;
            }
            for t in divisors(n / uv)? {
                if weight == 2 && t * uv == 1 {
                    continue;
                }
                out.push(EisensteinSpec::new(weight, *psi, *phi, t)?);
            }
        }
    }
    out.sort_by_key(|s| {
        (
            s.psi.conductor() * s.phi.conductor(),
            s.psi.conductor(),
            -s.psi.disc(),
            -s.phi.disc(),
            s.t,
        )
    });
    for s in &out {
        debug_assert_eq!(
            s.psi.parity() * s.phi.parity(),
            if weight == 1 { -1 } else { 1 }
        );
    }
    Ok(out)
}

/// Basis of E_1(Γ0(N), χ): unordered pairs {ψ, φ} with ψφ = χ odd, t·u·v | N.
pub fn enumerate_e1_basis(n: u64, chi: &RealDirichletCharacter) -> Result<Vec<EisensteinSpec>> {
    enumerate_basis(1, n, chi)
}

/// Basis of E_2(Γ0(N), χ): ordered pairs (ψ, φ) with ψφ = χ even, 1 < t·u·v | N.
pub fn enumerate_e2_basis(n: u64, chi: &RealDirichletCharacter) -> Result<Vec<EisensteinSpec>> {
    enumerate_basis(2, n, chi)
}
