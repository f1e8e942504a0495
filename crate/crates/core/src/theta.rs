//! Theta series with congruence conditions, the modular space they live in,
//! and their decomposition into character eigencomponents.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd, int, PowerSeries, Rational};
use crate::characters::{
    enumerate_characters_mod, fundamental_part, CharacterValue, RealDirichletCharacter,
};
use crate::error::{Error, Result};
use crate::qform::{CongruenceClass, QuadraticForm, SphericalPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupTag {
    Gamma0,
    /// Γ0(level) ∩ Γ1(m).
    Gamma0Gamma1(u64),
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Gamma0 => write!(f, "Gamma0"),
            GroupTag::Gamma0Gamma1(m) => write!(f, "Gamma0_and_Gamma1({m})"),
        }
    }
}

/// Weight, level, group and nebentypus of a space of modular forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceDescriptor {
    pub weight: u32,
    pub level: u64,
    pub group: GroupTag,
    pub nebentypus: RealDirichletCharacter,
}

impl SpaceDescriptor {
    pub fn new(
        weight: u32,
        level: u64,
        group: GroupTag,
        nebentypus: RealDirichletCharacter,
    ) -> Result<Self> {
        if weight == 0 {
            return Err(Error::NonPositive {
                what: "weight",
                value: 0,
            });
        }
        if level == 0 {
            return Err(Error::NonPositive {
                what: "level",
                value: 0,
            });
        }
        if level % nebentypus.modulus() != 0 {
            return Err(Error::ConductorMismatch {
                conductor: nebentypus.modulus(),
                modulus: level,
            });
        }
        Ok(SpaceDescriptor {
            weight,
            level,
            group,
            nebentypus,
        })
    }

    /// M_k(Γ0(N), χ) with χ induced up to modulus N.
    pub fn gamma0(weight: u32, level: u64, nebentypus: RealDirichletCharacter) -> Result<Self> {
        let chi = nebentypus.primitive_part().induce(level)?;
        Self::new(weight, level, GroupTag::Gamma0, chi)
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            weight: self.weight,
            level: self.level,
            group: self.group.to_string(),
            nebentypus: self.nebentypus.to_string(),
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = match self.group {
            GroupTag::Gamma0 => format!("Gamma0({})", self.level),
            GroupTag::Gamma0Gamma1(m) => format!("Gamma0({}) ∩ Gamma1({m})", self.level),
        };
        write!(f, "M_{}({group}, {})", self.weight, self.nebentypus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub weight: u32,
    pub level: u64,
    pub group: String,
    pub nebentypus: String,
}

/// `Σ_{x ≡ u (mod m)} P(x) q^{Q(x)}` up to `q^prec`.
pub fn theta_series(
    q: &QuadraticForm,
    p: &SphericalPoly,
    cls: &CongruenceClass,
    prec: u64,
) -> Result<PowerSeries> {
    match p {
        SphericalPoly::Constant(c) => {
            let counts = q.representation_counts(cls, prec)?;
            let terms = counts
                .into_iter()
                .enumerate()
                .map(|(k, r)| (k as u64, int(r as i64) * c));
            Ok(PowerSeries::from_terms(prec, terms))
        }
        SphericalPoly::Linear(_) => {
            let mut acc = vec![int(0); prec as usize + 1];
            let mut failure = None;
            q.for_each_vector(cls, prec, |x, v| match p.eval(q, x) {
                Ok(val) => acc[v as usize] += val,
                Err(e) => failure = Some(e),
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            Ok(PowerSeries::from_terms(
                prec,
                acc.into_iter().enumerate().map(|(k, c)| (k as u64, c)),
            ))
        }
    }
}

/// The space M_{n/2+ν}(Γ0(m²N_Q) ∩ Γ1(m), (D_Q/·)) containing the theta series.
pub fn expected_space(
    q: &QuadraticForm,
    p: &SphericalPoly,
    cls: &CongruenceClass,
) -> Result<SpaceDescriptor> {
    let m = cls.modulus();
    let level = m * m * q.level()?;
    let weight = q.dim() as u32 / 2 + p.degree();
    let d0 = fundamental_part(q.discriminant())?;
    let nebentypus = RealDirichletCharacter::new(level, d0)?;
    // For m ≤ 2 the intersection with Γ1(m) is all of Γ0(m²N).
    let group = if m <= 2 {
        GroupTag::Gamma0
    } else {
        GroupTag::Gamma0Gamma1(m)
    };
    SpaceDescriptor::new(weight, level, group, nebentypus)
}

/// Characters χ mod m with χ(-1) = (-1)^k ψ(-1).
pub fn decompose_space(
    m: u64,
    k: u32,
    psi: &RealDirichletCharacter,
) -> Result<Vec<RealDirichletCharacter>> {
    let sign = if k % 2 == 0 { 1 } else { -1 } * psi.parity();
    Ok(enumerate_characters_mod(m)?
        .into_iter()
        .filter(|chi| chi.parity() == sign)
        .collect())
}

/// The Γ0 spaces M_k(Γ0(L), χψ) of the nonzero eigencomponents.
pub fn component_spaces(
    space: &SpaceDescriptor,
) -> Result<Vec<(RealDirichletCharacter, SpaceDescriptor)>> {
    let m = match space.group {
        GroupTag::Gamma0 => 1,
        GroupTag::Gamma0Gamma1(m) => m,
    };
    decompose_space(m, space.weight, &space.nebentypus)?
        .into_iter()
        .map(|chi| {
            let target =
                SpaceDescriptor::gamma0(space.weight, space.level, chi.mul(&space.nebentypus))?;
            Ok((chi, target))
        })
        .collect()
}

/// (1/φ(m)) Σ_{a ∈ (Z/m)^×} χ(a) f_Q^{au;m}.
pub fn project_character(
    q: &QuadraticForm,
    cls: &CongruenceClass,
    chi: &RealDirichletCharacter,
    prec: u64,
) -> Result<PowerSeries> {
    let m = cls.modulus();
    if m % chi.modulus() != 0 {
        return Err(Error::ConductorMismatch {
            conductor: chi.modulus(),
            modulus: m,
        });
    }
    let chi = chi.induce(m)?;
    let mut acc = PowerSeries::zero(prec);
    for a in (1..=m as i64).filter(|&a| gcd(a, m as i64) == 1) {
        let v = chi.value(a);
        if v == 0 {
            continue;
        }
        let f = theta_series(q, &SphericalPoly::one(), &cls.scale(a), prec)?;
        acc = acc.add(&f.scale(&int(v as i64)));
    }
    Ok(acc.scale(&Rational::new(1.into(), euler_phi(m).into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(a: &str) -> QuadraticForm {
        QuadraticForm::named(a).unwrap()
    }

    fn class(u: &[i64], m: u64) -> CongruenceClass {
        CongruenceClass::new(u, m).unwrap()
    }

    #[test]
    fn theta_matches_counts() {
        let q = named("sum2squares");
        let cls = class(&[1, 0], 3);
        let f = theta_series(&q, &SphericalPoly::one(), &cls, 10).unwrap();
        assert_eq!(f.coefficient(0), int(0));
        assert_eq!(f.coefficient(1), int(1));
        assert_eq!(f.coefficient(2), int(0));
        // independent double loop
        for k in 0..=10u64 {
            let mut c = 0;
            for x in -4i64..=4 {
                for y in -4i64..=4 {
                    if (x - 1).rem_euclid(3) == 0
                        && y.rem_euclid(3) == 0
                        && (x * x + y * y) as u64 == k
                    {
                        c += 1;
                    }
                }
            }
            assert_eq!(f.coefficient(k), int(c), "k={k}");
        }
    }

    #[test]
    fn constant_term_detects_zero_class() {
        for (alias, _) in crate::qform::NAMED_FORMS {
            let q = named(alias);
            for cls in CongruenceClass::all(q.dim(), 2) {
                let f = theta_series(&q, &SphericalPoly::one(), &cls, 3).unwrap();
                let expected = if cls.is_zero() { 1 } else { 0 };
                assert_eq!(f.coefficient(0), int(expected));
            }
        }
    }

    #[test]
    fn linear_spherical_full_lattice_vanishes() {
        let q = named("sum2squares");
        let p = SphericalPoly::Linear(vec![int(1), int(0)]);
        let f = theta_series(&q, &p, &CongruenceClass::full(2), 50).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.precision(), 50);
    }

    #[test]
    fn linear_spherical_odd_under_negation() {
        let q = named("hex7");
        let p = SphericalPoly::Linear(vec![int(1), int(2), int(0), int(-1)]);
        for cls in CongruenceClass::all(4, 3).into_iter().step_by(7) {
            let f = theta_series(&q, &p, &cls, 30).unwrap();
            let g = theta_series(&q, &p, &cls.negate(), 30).unwrap();
            assert_eq!(f, g.scale(&int(-1)));
        }
    }

    #[test]
    fn expected_spaces() {
        let s = expected_space(
            &named("sum2squares"),
            &SphericalPoly::one(),
            &class(&[1, 0], 3),
        )
        .unwrap();
        assert_eq!((s.weight, s.level, s.nebentypus.disc()), (1, 36, -4));
        assert_eq!(s.group, GroupTag::Gamma0Gamma1(3));
        let s = expected_space(
            &named("sum4squares"),
            &SphericalPoly::one(),
            &class(&[1, 1, 1, 1], 2),
        )
        .unwrap();
        assert_eq!((s.weight, s.level, s.nebentypus.disc()), (2, 16, 1));
        let s = expected_space(
            &named("sum3squares_p2"),
            &SphericalPoly::one(),
            &class(&[1, 0, 0, 0], 2),
        )
        .unwrap();
        assert_eq!((s.weight, s.level, s.nebentypus.disc()), (2, 32, 8));
        assert_eq!(s.nebentypus.modulus(), 32);
        let s = expected_space(
            &named("sum2squares"),
            &SphericalPoly::Linear(vec![int(1), int(0)]),
            &class(&[1, 0], 3),
        )
        .unwrap();
        assert_eq!(s.weight, 2);
    }

    #[test]
    fn decompositions() {
        let chi_m4 = RealDirichletCharacter::primitive(-4).unwrap();
        let d = decompose_space(3, 1, &chi_m4).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].modulus(), d[0].disc()), (3, 1));
        let triv = RealDirichletCharacter::trivial();
        assert_eq!(decompose_space(2, 2, &triv).unwrap().len(), 1);
        assert_eq!(decompose_space(2, 1, &triv).unwrap().len(), 0);
        let d = decompose_space(3, 2, &triv).unwrap();
        assert_eq!(d.iter().map(|c| c.disc()).collect::<Vec<_>>(), vec![1]);
        let chi_m3 = RealDirichletCharacter::primitive(-3).unwrap();
        let d = decompose_space(3, 2, &chi_m3).unwrap();
        assert_eq!(d.iter().map(|c| c.disc()).collect::<Vec<_>>(), vec![-3]);
        assert!(decompose_space(5, 2, &triv).is_err());
    }

    #[test]
    fn projection_examples() {
        let q = named("sum2squares");
        let cls = class(&[1, 0], 3);
        let f = theta_series(&q, &SphericalPoly::one(), &cls, 60).unwrap();
        let triv3 = RealDirichletCharacter::principal(3).unwrap();
        assert_eq!(project_character(&q, &cls, &triv3, 60).unwrap(), f);
        let chi3 = RealDirichletCharacter::new(3, -3).unwrap();
        assert!(project_character(&q, &cls, &chi3, 60).unwrap().is_zero());

        let q4 = named("sum4squares");
        let cls4 = class(&[1, 0, 0, 0], 4);
        let triv4 = RealDirichletCharacter::principal(4).unwrap();
        let a = theta_series(&q4, &SphericalPoly::one(), &cls4, 40).unwrap();
        let b = theta_series(&q4, &SphericalPoly::one(), &class(&[3, 0, 0, 0], 4), 40).unwrap();
        let expected = a.add(&b).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(project_character(&q4, &cls4, &triv4, 40).unwrap(), expected);
    }

    #[test]
    fn reconstruction_with_several_characters() {
        let q = named("sum4squares");
        for u in [[1i64, 0, 0, 0], [1, 3, 0, 2], [1, 1, 1, 5]] {
            let cls = class(&u, 8);
            let space = expected_space(&q, &SphericalPoly::one(), &cls).unwrap();
            let comps = component_spaces(&space).unwrap();
            assert_eq!(comps.len(), 2);
            let f = theta_series(&q, &SphericalPoly::one(), &cls, 40).unwrap();
            let mut sum = PowerSeries::zero(40);
            for (chi, _) in comps {
                sum = sum.add(&project_character(&q, &cls, &chi, 40).unwrap());
            }
            assert_eq!(sum, f);
        }
    }
}
