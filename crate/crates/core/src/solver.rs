//! Writes a q-expansion as an exact linear combination of Eisenstein series
//! and eta products.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{prime_factors, PowerSeries, Rational, RationalJson};
use crate::characters::RealDirichletCharacter;
use crate::eisenstein::{enumerate_e1_basis, enumerate_e2_basis, EisensteinSpec};
use crate::error::{Error, Result};
use crate::eta::EtaProduct;
use crate::formulas::{Formula, FormulaTerm, Kernel, Twist};
use crate::qform::{CongruenceClass, QuadraticForm, SphericalPoly};
use crate::theta::{
    component_spaces, expected_space, project_character, theta_series, GroupTag, SpaceDescriptor,
    SpaceJson,
};

/// Extra coefficients matched beyond the Sturm bound.
pub const MATCH_MARGIN: u64 = 10;
pub const DEFAULT_VERIFY_TO: u64 = 200;

/// `⌊k·[SL2(Z):Γ0(N)]/12⌋`.
pub fn sturm_bound(k: u32, n: u64) -> u64 {
    let index = prime_factors(n).iter().fold(n, |acc, p| acc / p * (p + 1));
    k as u64 * index / 12
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Eisenstein(EisensteinSpec),
    Eta(EtaProduct),
}

impl Generator {
    pub fn label(&self) -> String {
        match self {
            Generator::Eisenstein(e) => e.label(),
            Generator::Eta(e) => e.label(),
        }
    }

    /// q-expansion of the modular form, including the constant term that
    /// the printed normalization of E_2^{1,1,t} leaves out.
    pub fn expand(&self, prec: u64) -> Result<PowerSeries> {
        match self {
            Generator::Eisenstein(e) => {
                let mut s = e.series(prec)?;
                s.set(0, e.modular_constant_term()?);
                Ok(s)
            }
            Generator::Eta(e) => Ok(e.series(prec)),
        }
    }

    /// Terms of `c·g(n)` for `n ≥ 1`.
    fn formula_terms(&self, c: &Rational) -> Vec<FormulaTerm> {
        match self {
            Generator::Eisenstein(e) => {
                let (psi, phi) = (Twist::from(e.psi()), Twist::from(e.phi()));
                let kernel = |shift| Kernel::DivisorSum {
                    k: e.weight() - 1,
                    psi,
                    phi,
                    shift,
                };
                if e.weight() == 2 && e.psi().is_trivial() && e.phi().is_trivial() {
                    let t = Rational::from_integer(e.t().into());
                    vec![
                        FormulaTerm::new(c.clone(), kernel(1)),
                        FormulaTerm::new(-c * t, kernel(e.t())),
                    ]
                } else {
                    vec![FormulaTerm::new(c.clone(), kernel(e.t()))]
                }
            }
            Generator::Eta(e) => vec![FormulaTerm::new(
                c.clone(),
                Kernel::Cusp {
                    label: e.label(),
                    shift: 1,
                },
            )],
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpaceBasis {
    pub descriptor: SpaceDescriptor,
    pub elements: Vec<Generator>,
}

impl SpaceBasis {
    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(Generator::label).collect()
    }

    pub fn eta_products(&self) -> Vec<EtaProduct> {
        self.elements
            .iter()
            .filter_map(|g| match g {
                Generator::Eta(e) => Some(e.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Cusp generators for the spaces whose cusp forms are spanned by known
/// eta products. Keyed by (level, weight, nebentypus discriminant).
pub fn cusp_catalog(descriptor: &SpaceDescriptor) -> Vec<EtaProduct> {
    let labels: &[&str] = match (
        descriptor.level,
        descriptor.weight,
        descriptor.nebentypus.primitive_part().disc(),
    ) {
        (36, 2, 1) => &["eta(6)^4"],
        (32, 2, 1) => &["eta(4)^2*eta(8)^2"],
        (27, 2, 1) => &["eta(3)^2*eta(9)^2"],
        (28, 2, 1) => &[
            "eta(1)*eta(2)*eta(7)*eta(14)",
            "eta(2)*eta(4)*eta(14)*eta(28)",
        ],
        _ => &[],
    };
    labels
        .iter()
        .map(|l| l.parse().expect("catalog eta label"))
        .collect()
}

/// Eisenstein basis of the descriptor's Γ0 space followed by `cusp`.
pub fn assemble_space(descriptor: &SpaceDescriptor, cusp: &[EtaProduct]) -> Result<SpaceBasis> {
    if descriptor.group != GroupTag::Gamma0 {
        return Err(Error::Unsupported(format!(
            "{descriptor}: decompose into characters before assembling a basis"
        )));
    }
    let eis = match descriptor.weight {
        1 => enumerate_e1_basis(descriptor.level, &descriptor.nebentypus)?,
        2 => enumerate_e2_basis(descriptor.level, &descriptor.nebentypus)?,
        k => {
            return Err(Error::Unsupported(format!(
                "Eisenstein basis in weight {k}"
            )))
        }
    };
    let mut elements: Vec<Generator> = eis.into_iter().map(Generator::Eisenstein).collect();
    for e in cusp {
        if 2 * descriptor.weight != e.double_weight() {
            return Err(Error::InvalidEta(format!(
                "{e} does not have weight {}",
                descriptor.weight
            )));
        }
        elements.push(Generator::Eta(e.clone()));
    }
    let mut labels: Vec<String> = elements.iter().map(Generator::label).collect();
    labels.sort();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidEta("duplicate generator label".into()));
    }
    Ok(SpaceBasis {
        descriptor: *descriptor,
        elements,
    })
}

/// Basis with the built-in cusp generators plus any `extra` ones.
pub fn assemble_default(descriptor: &SpaceDescriptor, extra: &[EtaProduct]) -> Result<SpaceBasis> {
    let mut cusp = cusp_catalog(descriptor);
    for e in extra {
        if !cusp.contains(e) {
            cusp.push(e.clone());
        }
    }
    assemble_space(descriptor, &cusp)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCombination {
    /// Nonzero coefficients in basis order.
    pub coefficients: Vec<(String, Rational)>,
    pub verified_to: u64,
}

impl LinearCombination {
    pub fn coefficient(&self, label: &str) -> Rational {
        self.coefficients
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn expand(&self, basis: &SpaceBasis, prec: u64) -> Result<PowerSeries> {
        let mut acc = PowerSeries::zero(prec);
        for g in &basis.elements {
            let c = self.coefficient(&g.label());
            if !c.is_zero() {
                acc = acc.add(&g.expand(prec)?.scale(&c));
            }
        }
        Ok(acc)
    }
}

/// Solves `f = Σ c_i g_i` on coefficients `0..=B*` and checks the result up
/// to `verify_to`.
pub fn solve_in_basis(
    f: &PowerSeries,
    basis: &SpaceBasis,
    verify_to: u64,
) -> Result<LinearCombination> {
    let d = &basis.descriptor;
    let b_star = sturm_bound(d.weight, d.level) + MATCH_MARGIN;
    if verify_to < b_star {
        return Err(Error::Precision {
            have: verify_to,
            need: b_star,
        });
    }
    if f.precision() < verify_to {
        return Err(Error::Precision {
            have: f.precision(),
            need: verify_to,
        });
    }
    let columns: Vec<PowerSeries> = basis
        .elements
        .par_iter()
        .map(|g| g.expand(verify_to))
        .collect::<Result<_>>()?;
    let ncols = columns.len();

    // Augmented matrix, one row per coefficient index.
    let mut rows: Vec<Vec<Rational>> = (0..=b_star)
        .map(|n| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c.coefficient(n)).collect();
            row.push(f.coefficient(n));
            row
        })
        .collect();

    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    for (i, row) in rows.iter().enumerate().skip(r) {
        if !row[ncols].is_zero() {
            return Err(Error::Inconsistent(i as u64));
        }
    }
    if r < ncols {
        return Err(Error::Underdetermined {
            rank: r,
            columns: ncols,
        });
    }
    let mut coeffs = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        coeffs[c] = rows[i][ncols].clone();
    }

    for n in b_star + 1..=verify_to {
        let v = columns
            .iter()
            .zip(&coeffs)
            .filter(|(_, c)| !c.is_zero())
            .fold(Rational::zero(), |acc, (col, c)| {
                acc + col.coefficient(n) * c
            });
        if v != f.coefficient(n) {
            return Err(Error::ResidualMismatch(n));
        }
    }

    Ok(LinearCombination {
        coefficients: basis
            .elements
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| (g.label(), c))
            .collect(),
        verified_to: verify_to,
    })
}

/// Formula for the coefficients `n ≥ 1` of a solved combination.
pub fn coefficients_as_formula(comb: &LinearCombination, basis: &SpaceBasis) -> Formula {
    let mut terms = vec![];
    for g in &basis.elements {
        let c = comb.coefficient(&g.label());
        if !c.is_zero() {
            terms.extend(g.formula_terms(&c));
        }
    }
    Formula::new(terms).normalize()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledCoefficient {
    pub label: String,
    pub num: crate::arith::rational::JsonInt,
    pub den: crate::arith::rational::JsonInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub space: SpaceJson,
    pub coefficients: Vec<LabeledCoefficient>,
    pub verified_to: u64,
}

impl SolveReport {
    pub fn new(basis: &SpaceBasis, comb: &LinearCombination) -> Self {
        SolveReport {
            space: basis.descriptor.to_json(),
            coefficients: comb
                .coefficients
                .iter()
                .map(|(label, c)| {
                    let j = RationalJson::from(c);
                    LabeledCoefficient {
                        label: label.clone(),
                        num: j.num,
                        den: j.den,
                    }
                })
                .collect(),
            verified_to: comb.verified_to,
        }
    }
}

/// One character component of a solved theta series.
#[derive(Debug, Clone)]
pub struct ComponentSolution {
    pub character: RealDirichletCharacter,
    pub basis: SpaceBasis,
    pub combination: LinearCombination,
    pub formula: Formula,
}

/// Decomposes `f_Q^{u;m}` into character components and solves each one in
/// its Γ0 space. Components that vanish identically are omitted.
pub fn solve_theta(
    q: &QuadraticForm,
    cls: &CongruenceClass,
    verify_to: u64,
    extra_cusp: &[EtaProduct],
) -> Result<Vec<ComponentSolution>> {
    let space = expected_space(q, &SphericalPoly::one(), cls)?;
    let comps = component_spaces(&space)?;
    let single = comps.len() == 1;
    let mut out = vec![];
    for (chi, target) in comps {
        // A lone admissible character carries the whole series.
        let f = if single {
            theta_series(q, &SphericalPoly::one(), cls, verify_to)?
        } else {
            project_character(q, cls, &chi, verify_to)?
        };
        if f.is_zero() {
            continue;
        }
        let basis = assemble_default(&target, extra_cusp)?;
        let combination = solve_in_basis(&f, &basis, verify_to)?;
        let formula = coefficients_as_formula(&combination, &basis);
        out.push(ComponentSolution {
            character: chi,
            basis,
            combination,
            formula,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::formulas::{eval_formula, lookup, EtaTable};

    fn named(a: &str) -> QuadraticForm {
        QuadraticForm::named(a).unwrap()
    }

    fn class(u: &[i64], m: u64) -> CongruenceClass {
        CongruenceClass::new(u, m).unwrap()
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_bound(2, 16), 4);
        assert_eq!(sturm_bound(1, 36), 6);
        assert_eq!(sturm_bound(2, 36), 12);
        assert_eq!(sturm_bound(2, 1), 0);
    }

    #[test]
    fn four_squares_all_odd() {
        let q = named("sum4squares");
        let cls = class(&[1, 1, 1, 1], 2);
        let f = theta_series(&q, &SphericalPoly::one(), &cls, 200).unwrap();
        let space = SpaceDescriptor::gamma0(2, 16, RealDirichletCharacter::trivial()).unwrap();
        let basis = assemble_default(&space, &[]).unwrap();
        let comb = solve_in_basis(&f, &basis, 200).unwrap();
        let got: Vec<(String, Rational)> = comb.coefficients.clone();
        assert_eq!(
            got,
            vec![
                ("E2[1,1,4]".to_string(), rat(-4, 1)),
                ("E2[1,1,8]".to_string(), rat(6, 1)),
                ("E2[1,1,16]".to_string(), rat(-2, 1)),
            ]
        );
        let formula = coefficients_as_formula(&comb, &basis);
        assert_eq!(formula.to_string(), "16σ(n/4) - 48σ(n/8) + 32σ(n/16)");
        assert_eq!(comb.expand(&basis, 200).unwrap(), f);
    }

    #[test]
    fn two_squares_mod_three() {
        let q = named("sum2squares");
        let sols = solve_theta(&q, &class(&[1, 0], 3), 200, &[]).unwrap();
        assert_eq!(sols.len(), 1);
        let comb = &sols[0].combination;
        assert_eq!(
            comb.coefficients,
            vec![
                ("E1[1,chi_-4,1]".to_string(), rat(1, 2)),
                ("E1[1,chi_-4,9]".to_string(), rat(-1, 2)),
                ("E1[chi_12,chi_-3,1]".to_string(), rat(1, 2)),
            ]
        );
        let entry = lookup(&q, &class(&[1, 0], 3)).unwrap();
        for n in 1..=200 {
            assert_eq!(
                eval_formula(&sols[0].formula, n, &crate::formulas::NoCusps).unwrap(),
                eval_formula(&entry.formula, n, &crate::formulas::NoCusps).unwrap()
            );
        }
    }

    #[test]
    fn cusp_coefficient_appears() {
        let q = named("sum4squares");
        let sols = solve_theta(&q, &class(&[1, 0, 0, 0], 3), 200, &[]).unwrap();
        assert_eq!(sols[0].combination.coefficient("eta(6)^4"), rat(2, 3));
        assert!(sols[0]
            .formula
            .to_string()
            .contains("+ (2/3)c[eta(6)^4](n)"));
    }

    #[test]
    fn zero_series() {
        let space = SpaceDescriptor::gamma0(2, 16, RealDirichletCharacter::trivial()).unwrap();
        let basis = assemble_default(&space, &[]).unwrap();
        let comb = solve_in_basis(&PowerSeries::zero(200), &basis, 200).unwrap();
        assert!(comb.coefficients.is_empty());
        assert_eq!(coefficients_as_formula(&comb, &basis).to_string(), "0");
    }

    #[test]
    fn missing_cusp_form_is_detected() {
        let q = named("sum4squares");
        let f = theta_series(&q, &SphericalPoly::one(), &class(&[1, 0, 0, 0], 3), 200).unwrap();
        let space = SpaceDescriptor::gamma0(2, 36, RealDirichletCharacter::trivial()).unwrap();
        let basis = assemble_space(&space, &[]).unwrap();
        assert!(matches!(
            solve_in_basis(&f, &basis, 200),
            Err(Error::Inconsistent(_)) | Err(Error::ResidualMismatch(_))
        ));
    }

    #[test]
    fn dependent_generators_are_reported() {
        let space = SpaceDescriptor::gamma0(2, 28, RealDirichletCharacter::trivial()).unwrap();
        let e: EtaProduct = "eta(28)*eta(14)*eta(4)*eta(2)".parse().unwrap();
        assert!(assemble_space(&space, &[e.clone(), e]).is_err());
        let mut basis = assemble_default(&space, &[]).unwrap();
        basis.elements.push(basis.elements[0].clone());
        assert!(matches!(
            solve_in_basis(&PowerSeries::zero(200), &basis, 200),
            Err(Error::Underdetermined { .. })
        ));
    }

    #[test]
    fn precision_errors() {
        let space = SpaceDescriptor::gamma0(2, 36, RealDirichletCharacter::trivial()).unwrap();
        let basis = assemble_default(&space, &[]).unwrap();
        assert!(matches!(
            solve_in_basis(&PowerSeries::zero(200), &basis, 5),
            Err(Error::Precision { .. })
        ));
        assert!(matches!(
            solve_in_basis(&PowerSeries::zero(50), &basis, 200),
            Err(Error::Precision { .. })
        ));
    }

    #[test]
    fn eta_table_feeds_solver_formula() {
        let q = named("hex7");
        let cls = class(&[1, 0, 0, 0], 2);
        let sols = solve_theta(&q, &cls, 200, &[]).unwrap();
        let counts = q.representation_counts(&cls, 200).unwrap();
        let table = EtaTable::new(&sols[0].basis.eta_products(), 200);
        for n in 1..=200u64 {
            assert_eq!(
                eval_formula(&sols[0].formula, n, &table).unwrap(),
                crate::arith::int(counts[n as usize] as i64)
            );
        }
    }
}
