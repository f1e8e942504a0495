//! Closed-form representation-number formulas: a small term language,
//! exact evaluation, text/JSON rendering and verification by enumeration.

mod catalog;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, gcd, kronecker, Rational, RationalJson};
use crate::characters::{CharacterValue, RealDirichletCharacter};
use crate::eisenstein::sigma_twisted;
use crate::error::{Error, Result};
use crate::eta::EtaProduct;
use crate::qform::{CongruenceClass, QuadraticForm};

pub use catalog::{
    catalog, group_names, lookup, orbit, select, symmetries, CasePredicate, CatalogEntry,
    ResidueMap,
};

/// `n ↦ (symbol/n)` on integers coprime to `restrict`, and 0 elsewhere.
///
/// A primitive real character χ_d is `Twist { symbol: d, restrict: 1 }`;
/// the principal character mod r is `Twist { symbol: 1, restrict: r }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Twist {
    pub symbol: i64,
    pub restrict: u64,
}

impl Twist {
    pub const ONE: Twist = Twist {
        symbol: 1,
        restrict: 1,
    };

    pub fn kronecker(symbol: i64) -> Self {
        Twist {
            symbol,
            restrict: 1,
        }
    }

    pub fn coprime_to(r: u64) -> Self {
        Twist {
            symbol: 1,
            restrict: r,
        }
    }

    pub fn is_one(&self) -> bool {
        self.symbol == 1 && self.restrict == 1
    }

    /// Renders the factor this twist contributes at argument `arg`.
    fn render_at(&self, arg: &str) -> String {
        let mut s = String::new();
        if self.symbol != 1 {
            s.push_str(&format!("({}/{})", self.symbol, parenthesize(arg)));
        }
        match self.restrict {
            1 => {}
            2 => s.push_str(&format!("[{arg} odd]")),
            r => s.push_str(&format!("[gcd({arg},{r})=1]")),
        }
        s
    }
}

impl From<&RealDirichletCharacter> for Twist {
    fn from(chi: &RealDirichletCharacter) -> Self {
        Twist {
            symbol: chi.disc(),
            restrict: chi.modulus(),
        }
    }
}

impl CharacterValue for Twist {
    fn value(&self, n: i64) -> i8 {
        if self.restrict > 1 && gcd(n, self.restrict as i64) != 1 {
            0
        } else {
            kronecker(self.symbol, n)
        }
    }
}

fn parenthesize(arg: &str) -> String {
    if arg.contains('/') {
        format!("({arg})")
    } else {
        arg.to_string()
    }
}

/// Where a Kronecker prefactor is evaluated: at `n` or at `n/s` with the
/// kernel's shift `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrefactorAt {
    N,
    Shift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Prefactor {
    pub symbol: i64,
    pub at: PrefactorAt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Kernel {
    /// `Σ_{d | n/s} ψ(n/(sd)) φ(d) d^k`, zero when `s ∤ n`.
    DivisorSum {
        k: u32,
        psi: Twist,
        phi: Twist,
        shift: u64,
    },
    /// `c(n/s)` for the eta product named by `label`, zero when `s ∤ n`.
    Cusp { label: String, shift: u64 },
}

impl Kernel {
    pub fn shift(&self) -> u64 {
        match self {
            Kernel::DivisorSum { shift, .. } | Kernel::Cusp { shift, .. } => *shift,
        }
    }

    fn eval(&self, n: u64, cusps: &dyn CuspProvider) -> Result<BigInt> {
        let s = self.shift();
        if n % s != 0 {
            return Ok(BigInt::zero());
        }
        match self {
            Kernel::DivisorSum { k, psi, phi, .. } => Ok(sigma_twisted(*k, psi, phi, n / s)),
            Kernel::Cusp { label, .. } => cusps.cusp_coefficient(label, n / s),
        }
    }

    fn render(&self) -> String {
        let s = self.shift();
        let arg = if s == 1 {
            "n".to_string()
        } else {
            format!("n/{s}")
        };
        match self {
            Kernel::DivisorSum { k, psi, phi, .. } => {
                if *k == 1 && psi.is_one() && phi.is_one() {
                    return format!("σ({arg})");
                }
                let outer = if s == 1 {
                    "n/d".to_string()
                } else {
                    format!("n/{s}d")
                };
                let mut body = psi.render_at(&outer);
                body.push_str(&phi.render_at("d"));
                match k {
                    0 if body.is_empty() => body.push('1'),
                    0 => {}
                    1 => body.push('d'),
                    _ => body.push_str(&format!("d^{k}")),
                }
                format!("Σ_{{d|{arg}}} {body}")
            }
            Kernel::Cusp { label, .. } => format!("c[{label}]({arg})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTerm {
    pub coeff: Rational,
    pub prefactor: Option<Prefactor>,
    pub kernel: Kernel,
}

impl FormulaTerm {
    pub fn new(coeff: Rational, kernel: Kernel) -> Self {
        FormulaTerm {
            coeff,
            prefactor: None,
            kernel,
        }
    }

    pub fn with_prefactor(mut self, symbol: i64, at: PrefactorAt) -> Self {
        self.prefactor = Some(Prefactor { symbol, at });
        self
    }

    fn eval(&self, n: u64, cusps: &dyn CuspProvider) -> Result<Rational> {
        let s = self.kernel.shift();
        let pre = match self.prefactor {
            None => 1,
            Some(p) if p.at == PrefactorAt::Shift => {
                if n % s != 0 {
                    return Ok(Rational::zero());
                }
                kronecker(p.symbol, (n / s) as i64)
            }
            Some(p) => kronecker(p.symbol, n as i64),
        };
        if pre == 0 {
            return Ok(Rational::zero());
        }
        let k = self.kernel.eval(n, cusps)?;
        Ok(&self.coeff * Rational::from_integer(k * pre))
    }

    /// Rendering without the sign, which the formula renderer places.
    fn render_unsigned(&self) -> String {
        let c = self.coeff.abs();
        let mut out = if c.is_one() {
            String::new()
        } else if c.denom().is_one() {
            c.numer().to_string()
        } else {
            format!("({})", format_rational(&c))
        };
        if let Some(p) = self.prefactor {
            let s = self.kernel.shift();
            let arg = if p.at == PrefactorAt::N || s == 1 {
                "n".to_string()
            } else {
                format!("(n/{s})")
            };
            out.push_str(&format!("({}/{arg})", p.symbol));
        }
        out.push_str(&self.kernel.render());
        out
    }

    pub fn to_json(&self) -> TermJson {
        TermJson {
            coeff: RationalJson::from(&self.coeff),
            prefactor: self.prefactor,
            kernel: self.kernel.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: RationalJson,
    pub prefactor: Option<Prefactor>,
    pub kernel: Kernel,
}

/// A finite sum of terms, evaluated at `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Formula {
    terms: Vec<FormulaTerm>,
}

impl Formula {
    pub fn new(terms: Vec<FormulaTerm>) -> Self {
        Formula { terms }
    }

    pub fn terms(&self) -> &[FormulaTerm] {
        &self.terms
    }

    /// Merges terms with identical prefactor and kernel and drops zeros,
    /// keeping first-occurrence order.
    pub fn normalize(&self) -> Formula {
        let mut order: Vec<(Option<Prefactor>, Kernel)> = vec![];
        let mut sums: BTreeMap<(Option<Prefactor>, Kernel), Rational> = BTreeMap::new();
        for t in &self.terms {
            let key = (t.prefactor, t.kernel.clone());
            match sums.get_mut(&key) {
                Some(c) => *c += &t.coeff,
                None => {
                    order.push(key.clone());
                    sums.insert(key, t.coeff.clone());
                }
            }
        }
        let terms = order
            .into_iter()
            .filter_map(|key| {
                let coeff = sums.remove(&key)?;
                (!coeff.is_zero()).then(|| FormulaTerm {
                    coeff,
                    prefactor: key.0,
                    kernel: key.1,
                })
            })
            .collect();
        Formula { terms }
    }

    /// Eta labels referenced by cusp terms.
    pub fn cusp_labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .iter()
            .filter_map(|t| match &t.kernel {
                Kernel::Cusp { label, .. } => Some(label.clone()),
                _ => None,
            })
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(FormulaTerm::to_json).collect()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            write!(f, "{}", t.render_unsigned())?;
        }
        Ok(())
    }
}

/// Supplies `c(n)` for eta products referenced by label.
pub trait CuspProvider: Sync {
    fn cusp_coefficient(&self, label: &str, n: u64) -> Result<BigInt>;
}

/// Provider for formulas without cusp terms.
pub struct NoCusps;

impl CuspProvider for NoCusps {
    fn cusp_coefficient(&self, label: &str, _n: u64) -> Result<BigInt> {
        Err(Error::UnresolvedCusp(label.to_string()))
    }
}

/// Precomputed eta coefficients up to a fixed precision.
pub struct EtaTable {
    prec: u64,
    table: BTreeMap<String, Vec<BigInt>>,
}

impl EtaTable {
    pub fn new(etas: &[EtaProduct], prec: u64) -> Self {
        let table = etas
            .par_iter()
            .map(|e| (e.label(), e.coefficients(prec)))
            .collect();
        EtaTable { prec, table }
    }
}

impl CuspProvider for EtaTable {
    fn cusp_coefficient(&self, label: &str, n: u64) -> Result<BigInt> {
        let canonical = label
            .parse::<EtaProduct>()
            .map(|e| e.label())
            .unwrap_or_else(|_| label.to_string());
        let coeffs = self
            .table
            .get(&canonical)
            .ok_or_else(|| Error::UnresolvedCusp(label.to_string()))?;
        coeffs.get(n as usize).cloned().ok_or(Error::Precision {
            have: self.prec,
            need: n,
        })
    }
}

pub fn eval_formula(formula: &Formula, n: u64, cusps: &dyn CuspProvider) -> Result<Rational> {
    if n == 0 {
        return Err(Error::NonPositive {
            what: "n",
            value: 0,
        });
    }
    formula
        .terms
        .iter()
        .try_fold(Rational::zero(), |acc, t| Ok(acc + t.eval(n, cusps)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: u64,
    pub formula: RationalJson,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// The formula as transcribed fails but the recorded variant matches.
    VariantPasses,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantReport {
    pub description: String,
    pub formula: String,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    pub group: String,
    pub formula: String,
    pub n_max: u64,
    pub mismatches: Vec<Mismatch>,
    pub variant: Option<VariantReport>,
}

impl VerifyReport {
    pub fn verdict(&self) -> Verdict {
        if self.mismatches.is_empty() {
            Verdict::Pass
        } else if self
            .variant
            .as_ref()
            .is_some_and(|v| v.mismatches.is_empty())
        {
            Verdict::VariantPasses
        } else {
            Verdict::Fail
        }
    }
}

/// Compares `formula(n)` with the enumerated counts for `1 ≤ n ≤ n_max`.
pub fn compare_with_counts(
    formula: &Formula,
    counts: &[u64],
    cusps: &dyn CuspProvider,
) -> Result<Vec<Mismatch>> {
    let results: Vec<Result<Option<Mismatch>>> = (1..counts.len() as u64)
        .into_par_iter()
        .map(|n| {
            let v = eval_formula(formula, n, cusps)?;
            let count = counts[n as usize];
            Ok(
                (v != Rational::from_integer(count.into())).then(|| Mismatch {
                    n,
                    formula: RationalJson::from(&v),
                    count,
                }),
            )
        })
        .collect();
    let mut out = vec![];
    for r in results {
        if let Some(m) = r? {
            out.push(m);
        }
    }
    Ok(out)
}

/// Verifies one catalog entry against brute-force counts for `1..=n_max`.
pub fn verify_formula(entry: &CatalogEntry, n_max: u64) -> Result<VerifyReport> {
    let q = entry.form()?;
    let cls = CongruenceClass::new(&entry.residue, entry.modulus)?;
    let counts = q.representation_counts(&cls, n_max)?;
    verify_against(entry, &counts)
}

/// Verifies an entry on a representative class other than the printed one.
pub fn verify_formula_for(
    entry: &CatalogEntry,
    q: &QuadraticForm,
    cls: &CongruenceClass,
    n_max: u64,
) -> Result<VerifyReport> {
    let counts = q.representation_counts(cls, n_max)?;
    let mut report = verify_against(entry, &counts)?;
    report.id = format!("{}:{}", entry.form, cls);
    Ok(report)
}

fn verify_against(entry: &CatalogEntry, counts: &[u64]) -> Result<VerifyReport> {
    let n_max = counts.len() as u64 - 1;
    let cusps = EtaTable::new(&entry.cusp_forms, n_max);
    let mismatches = compare_with_counts(&entry.formula, counts, &cusps)?;
    let variant = match &entry.variant {
        Some((description, f)) => Some(VariantReport {
            description: description.clone(),
            formula: f.to_string(),
            mismatches: compare_with_counts(f, counts, &cusps)?,
        }),
        None => None,
    };
    Ok(VerifyReport {
        id: entry.id(),
        group: entry.group(),
        formula: entry.formula.to_string(),
        n_max,
        mismatches,
        variant,
    })
}
