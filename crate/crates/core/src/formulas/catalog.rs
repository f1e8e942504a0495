//! Built-in formulas for the named forms, keyed by residue-orbit
//! representatives.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::{Formula, FormulaTerm, Kernel, PrefactorAt, Twist};
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::eta::EtaProduct;
use crate::qform::{CongruenceClass, QuadraticForm, NAMED_FORMS};

/// Guard for formulas stated piecewise in the residue.
pub type CasePredicate = fn(&[i64]) -> bool;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub form: &'static str,
    /// Printed representative of the residue orbit.
    pub residue: Vec<i64>,
    pub modulus: u64,
    pub formula: Formula,
    /// Alternative reading of the formula, checked alongside it.
    pub variant: Option<(String, Formula)>,
    pub cusp_forms: Vec<EtaProduct>,
    /// For piecewise entries: description and membership test on residues.
    pub case: Option<(&'static str, CasePredicate)>,
}

impl CatalogEntry {
    pub fn id(&self) -> String {
        let u: Vec<String> = self.residue.iter().map(|x| x.to_string()).collect();
        format!("{}:{};{}", self.form, u.join(","), self.modulus)
    }

    pub fn group(&self) -> String {
        if self.modulus == 1 {
            "jacobi".to_string()
        } else {
            format!("{}:{}", self.form, self.modulus)
        }
    }

    pub fn form(&self) -> Result<QuadraticForm> {
        QuadraticForm::named(self.form).ok_or_else(|| Error::UnknownFormula(self.form.to_string()))
    }

    pub fn class(&self) -> Result<CongruenceClass> {
        CongruenceClass::new(&self.residue, self.modulus)
    }

    /// Whether this entry's formula applies to the residue class `cls`.
    pub fn covers(&self, cls: &CongruenceClass) -> bool {
        if cls.modulus() != self.modulus || cls.residue().len() != self.residue.len() {
            return false;
        }
        match self.case {
            Some((_, pred)) => pred(cls.residue()),
            None => orbit(self.form, &self.residue, self.modulus).contains(cls.residue()),
        }
    }
}

/// Residue permutations induced by automorphisms of a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueMap {
    Swap(usize, usize),
    Negate(usize),
    NegatePair(usize, usize),
    /// `(u_i, u_j) ↦ (u_i + u_j, -u_j)`.
    Shear(usize, usize),
    /// Exchanges the first and second half of the coordinates.
    BlockSwap,
    NegateAll,
}

impl ResidueMap {
    pub fn apply(&self, u: &[i64], m: u64) -> Vec<i64> {
        let mut v = u.to_vec();
        match *self {
            ResidueMap::Swap(i, j) => v.swap(i, j),
            ResidueMap::Negate(i) => v[i] = -v[i],
            ResidueMap::NegatePair(i, j) => {
                v[i] = -v[i];
                v[j] = -v[j];
            }
            ResidueMap::Shear(i, j) => {
                v[i] = u[i] + u[j];
                v[j] = -u[j];
            }
            ResidueMap::BlockSwap => {
                let h = v.len() / 2;
                v.rotate_left(h);
            }
            ResidueMap::NegateAll => v.iter_mut().for_each(|x| *x = -*x),
        }
        v.iter().map(|x| x.rem_euclid(m as i64)).collect()
    }
}

/// Generators of the residue symmetries used to extend printed formulas.
pub fn symmetries(alias: &str) -> Vec<ResidueMap> {
    use ResidueMap::*;
    match alias {
        "sum2squares" => vec![Swap(0, 1), Negate(0), Negate(1), NegateAll],
        "hex" => vec![Swap(0, 1), Shear(0, 1), NegateAll],
        "x2p2y2" => vec![Negate(0), Negate(1), NegateAll],
        "x2pxyp2y2" => vec![Shear(0, 1), NegateAll],
        "sum4squares" => vec![
            Swap(0, 1),
            Swap(1, 2),
            Swap(2, 3),
            Negate(0),
            Negate(1),
            Negate(2),
            Negate(3),
            NegateAll,
        ],
        "sum3squares_p2" => vec![
            Swap(0, 1),
            Swap(1, 2),
            Negate(0),
            Negate(1),
            Negate(2),
            Negate(3),
            NegateAll,
        ],
        "hex2" => vec![
            Swap(0, 1),
            NegatePair(0, 1),
            Shear(0, 1),
            BlockSwap,
            NegateAll,
        ],
        "hex7" => vec![NegatePair(0, 1), Shear(0, 1), BlockSwap, NegateAll],
        "q1122" => vec![
            Swap(0, 1),
            Swap(2, 3),
            Negate(0),
            Negate(1),
            Negate(2),
            Negate(3),
            NegateAll,
        ],
        "a112" => vec![Swap(1, 2), Swap(2, 3), NegateAll],
        _ => vec![ResidueMap::NegateAll],
    }
}

/// Closure of `{u}` under the form's residue symmetries.
pub fn orbit(alias: &str, u: &[i64], m: u64) -> BTreeSet<Vec<i64>> {
    let gens = symmetries(alias);
    let start: Vec<i64> = u.iter().map(|x| x.rem_euclid(m as i64)).collect();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for g in &gens {
            let w = g.apply(&v, m);
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen
}

fn alias_of(q: &QuadraticForm) -> Option<&'static str> {
    NAMED_FORMS
        .iter()
        .find(|(_, c)| *c == q.coefficients())
        .map(|(a, _)| *a)
}

/// The catalog entry whose formula gives `r_Q^{u;m}`.
pub fn lookup(q: &QuadraticForm, cls: &CongruenceClass) -> Result<&'static CatalogEntry> {
    let describe = || format!("{q} with x ≡ {cls}");
    let alias = alias_of(q).ok_or_else(|| Error::UnknownFormula(describe()))?;
    catalog()
        .iter()
        .find(|e| e.form == alias && e.covers(cls))
        .ok_or_else(|| Error::UnknownFormula(describe()))
}

/// Distinct group names in catalog order: `jacobi` and `form:m`.
pub fn group_names() -> Vec<String> {
    let mut out: Vec<String> = vec![];
    for e in catalog() {
        let g = e.group();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Entries matching `all`, a group name, a form alias or an entry id.
pub fn select(selector: &str) -> Result<Vec<&'static CatalogEntry>> {
    let picked: Vec<_> = catalog()
        .iter()
        .filter(|e| {
            selector == "all" || e.group() == selector || e.form == selector || e.id() == selector
        })
        .collect();
    if picked.is_empty() {
        return Err(Error::UnknownFormula(selector.to_string()));
    }
    Ok(picked)
}

pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

fn r(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn ds(c: Rational, k: u32, psi: Twist, phi: Twist, shift: u64) -> FormulaTerm {
    FormulaTerm::new(c, Kernel::DivisorSum { k, psi, phi, shift })
}

/// c·σ(n/s)
fn sig(c: Rational, s: u64) -> FormulaTerm {
    ds(c, 1, Twist::ONE, Twist::ONE, s)
}

/// c·(a/(n/s))·σ(n/s)
fn sig_tw(c: Rational, a: i64, s: u64) -> FormulaTerm {
    sig(c, s).with_prefactor(a, PrefactorAt::Shift)
}

/// c·Σ_{d|n/s} (a/d)
fn chi0(c: Rational, a: i64, s: u64) -> FormulaTerm {
    ds(c, 0, Twist::ONE, Twist::kronecker(a), s)
}

/// c·Σ_{d|n/s} (a/(n/sd)) d
fn outer1(c: Rational, a: i64, s: u64) -> FormulaTerm {
    ds(c, 1, Twist::kronecker(a), Twist::ONE, s)
}

/// c·Σ_{d|n/s} (a/d) d
fn inner1(c: Rational, a: i64, s: u64) -> FormulaTerm {
    ds(c, 1, Twist::ONE, Twist::kronecker(a), s)
}

fn cusp(c: Rational, label: &str, s: u64) -> FormulaTerm {
    FormulaTerm::new(
        c,
        Kernel::Cusp {
            label: label.to_string(),
            shift: s,
        },
    )
}

fn entry(
    form: &'static str,
    residue: &[i64],
    modulus: u64,
    terms: Vec<FormulaTerm>,
) -> CatalogEntry {
    CatalogEntry {
        form,
        residue: residue.to_vec(),
        modulus,
        formula: Formula::new(terms),
        variant: None,
        cusp_forms: vec![],
        case: None,
    }
}

fn with_cusp(mut e: CatalogEntry, label: &str) -> CatalogEntry {
    e.cusp_forms = vec![label.parse().expect("catalog eta label")];
    e
}

fn a112_exactly_one_zero(u: &[i64]) -> bool {
    u[0] == 0 && u[1..].iter().filter(|&&x| x == 0).count() == 1
}

fn a112_all_zero(u: &[i64]) -> bool {
    u.iter().all(|&x| x == 0)
}

fn a112_otherwise(u: &[i64]) -> bool {
    !a112_exactly_one_zero(u) && !a112_all_zero(u)
}

fn build() -> Vec<CatalogEntry> {
    let one = || r(1, 1);
    let i = |n: i64| r(n, 1);
    let mut out = vec![];

    out.push(entry(
        "sum4squares",
        &[0, 0, 0, 0],
        1,
        vec![sig(i(8), 1), sig(i(-32), 4)],
    ));

    // x² + y², m = 3
    let odd_part = |c: Rational| {
        ds(c, 0, Twist::coprime_to(2), Twist::kronecker(-1), 1).with_prefactor(3, PrefactorAt::N)
    };
    out.push(entry(
        "sum2squares",
        &[1, 0],
        3,
        vec![
            chi0(r(1, 2), -4, 1),
            chi0(r(-1, 2), -4, 9),
            odd_part(r(1, 2)),
        ],
    ));
    out.push(entry(
        "sum2squares",
        &[1, 1],
        3,
        vec![
            chi0(r(1, 2), -4, 1),
            chi0(r(-1, 2), -4, 9),
            odd_part(r(-1, 2)),
        ],
    ));

    // x² + y², m = 2
    out.push(entry(
        "sum2squares",
        &[1, 0],
        2,
        vec![chi0(i(2), -4, 1), chi0(i(-2), -4, 2)],
    ));
    out.push(entry(
        "sum2squares",
        &[1, 1],
        2,
        vec![chi0(i(4), -4, 2), chi0(i(-4), -4, 4)],
    ));

    // x² + xy + y²
    out.push(entry(
        "hex",
        &[1, 0],
        2,
        vec![chi0(i(2), -3, 1), chi0(i(-2), -3, 4)],
    ));
    out.push(entry(
        "hex",
        &[1, 0],
        3,
        vec![chi0(one(), -3, 1), chi0(i(-1), -3, 3)],
    ));
    out.push(entry(
        "hex",
        &[1, 1],
        3,
        vec![chi0(i(3), -3, 3), chi0(i(-3), -3, 9)],
    ));

    // x² + 2y²
    let mixed = |c: Rational| ds(c, 0, Twist::kronecker(-4), Twist::kronecker(8), 1);
    out.push(entry(
        "x2p2y2",
        &[1, 0],
        2,
        vec![chi0(one(), -8, 1), chi0(i(-1), -8, 2), mixed(one())],
    ));
    out.push(entry(
        "x2p2y2",
        &[0, 1],
        2,
        vec![chi0(i(2), -8, 2), chi0(i(-2), -8, 4)],
    ));
    out.push(entry(
        "x2p2y2",
        &[1, 1],
        2,
        vec![chi0(one(), -8, 1), chi0(i(-1), -8, 2), mixed(i(-1))],
    ));

    // x² + xy + 2y²
    out.push(entry(
        "x2pxyp2y2",
        &[1, 0],
        2,
        vec![chi0(i(2), -7, 1), chi0(i(-4), -7, 2), chi0(i(2), -7, 4)],
    ));
    out.push(entry(
        "x2pxyp2y2",
        &[0, 1],
        2,
        vec![chi0(i(2), -7, 2), chi0(i(-2), -7, 4)],
    ));

    // four squares, m = 2
    out.push(entry(
        "sum4squares",
        &[1, 0, 0, 0],
        2,
        vec![
            sig(one(), 1),
            sig_tw(one(), -4, 1),
            sig(i(-3), 2),
            sig(i(2), 4),
        ],
    ));
    out.push(entry(
        "sum4squares",
        &[1, 1, 0, 0],
        2,
        vec![sig(i(4), 2), sig(i(-12), 4), sig(i(8), 8)],
    ));
    out.push(entry(
        "sum4squares",
        &[1, 1, 1, 0],
        2,
        vec![
            sig(one(), 1),
            sig_tw(i(-1), -4, 1),
            sig(i(-3), 2),
            sig(i(2), 4),
        ],
    ));
    out.push(entry(
        "sum4squares",
        &[1, 1, 1, 1],
        2,
        vec![sig(i(16), 4), sig(i(-48), 8), sig(i(32), 16)],
    ));

    // x² + y² + z² + 2w², m = 2
    let neg2 = |t: FormulaTerm| t.with_prefactor(-2, PrefactorAt::N);
    let f = "sum3squares_p2";
    out.push(entry(
        f,
        &[1, 0, 0, 0],
        2,
        vec![
            outer1(one(), 2, 1),
            outer1(i(-2), 2, 2),
            neg2(inner1(one(), 2, 1)),
        ],
    ));
    let mut e = entry(
        f,
        &[1, 1, 0, 0],
        2,
        vec![outer1(i(4), 2, 2), outer1(i(-8), -2, 4)],
    );
    e.variant = Some((
        "(2/·) in place of (-2/·) in the n/4 term".to_string(),
        Formula::new(vec![outer1(i(4), 2, 2), outer1(i(-8), 2, 4)]),
    ));
    out.push(e);
    out.push(entry(
        f,
        &[1, 1, 1, 0],
        2,
        vec![
            inner1(i(-1), 2, 1),
            neg2(inner1(i(-1), 2, 1)),
            inner1(one(), 2, 2),
            outer1(one(), 2, 1),
            neg2(outer1(one(), 2, 1)),
            outer1(i(-2), 2, 2),
        ],
    ));
    out.push(entry(
        f,
        &[0, 0, 0, 1],
        2,
        vec![
            inner1(i(-2), 2, 2),
            inner1(i(2), 2, 4),
            outer1(i(4), 2, 2),
            outer1(i(-8), 2, 4),
        ],
    ));
    out.push(entry(
        f,
        &[1, 0, 0, 1],
        2,
        vec![
            outer1(one(), 2, 1),
            outer1(i(-2), 2, 2),
            neg2(inner1(i(-1), 2, 1)),
        ],
    ));
    out.push(entry(f, &[1, 1, 0, 1], 2, vec![outer1(i(8), 2, 4)]));
    out.push(entry(
        f,
        &[1, 1, 1, 1],
        2,
        vec![
            inner1(i(-1), 2, 1),
            neg2(inner1(one(), 2, 1)),
            inner1(one(), 2, 2),
            outer1(one(), 2, 1),
            neg2(outer1(i(-1), 2, 1)),
            outer1(i(-2), 2, 2),
        ],
    ));

    // two copies of x² + xy + y², m = 2
    out.push(entry(
        "hex2",
        &[1, 0, 0, 0],
        2,
        vec![
            sig(i(2), 1),
            sig(i(-6), 2),
            sig(i(-6), 3),
            sig(i(4), 4),
            sig(i(18), 6),
            sig(i(-12), 12),
        ],
    ));
    out.push(entry(
        "hex2",
        &[1, 0, 1, 0],
        2,
        vec![sig(i(4), 2), sig(i(-4), 4), sig(i(-12), 6), sig(i(12), 12)],
    ));

    // x1² + x2² + x3² + x4² + x1x2 + x1x3 + x1x4, m = 2, piecewise in u
    let mut e = entry(
        "a112",
        &[0, 0, 1, 1],
        2,
        vec![sig(i(8), 2), sig(i(-24), 4), sig(i(16), 8)],
    );
    e.case = Some((
        "u1 = 0 and exactly one of u2, u3, u4 is 0",
        a112_exactly_one_zero,
    ));
    out.push(e);
    let mut e = entry(
        "a112",
        &[0, 0, 0, 0],
        2,
        vec![sig(i(24), 4), sig(i(-48), 8)],
    );
    e.case = Some(("u = 0", a112_all_zero));
    out.push(e);
    let mut e = entry(
        "a112",
        &[1, 0, 0, 0],
        2,
        vec![sig(i(2), 1), sig(i(-6), 2), sig(i(4), 4)],
    );
    e.case = Some(("otherwise", a112_otherwise));
    out.push(e);

    // four squares, m = 3
    let eta6 = "eta(6)^4";
    let base36 = |s1: i64| {
        vec![
            sig(r(1, 6), 1),
            sig_tw(r(s1, 6), -3, 1),
            sig(r(-2, 3), 3),
            sig(r(-2, 3), 4),
            sig_tw(r(-2 * s1, 3), -3, 4),
            sig(r(1, 2), 9),
            sig(r(8, 3), 12),
            sig(i(-2), 36),
        ]
    };
    let mut t = base36(1);
    t.push(cusp(r(2, 3), eta6, 1));
    out.push(with_cusp(entry("sum4squares", &[1, 0, 0, 0], 3, t), eta6));
    out.push(entry("sum4squares", &[1, 1, 0, 0], 3, base36(-1)));
    out.push(entry(
        "sum4squares",
        &[1, 1, 1, 0],
        3,
        vec![sig(one(), 3), sig(i(-1), 9), sig(i(-4), 12), sig(i(4), 36)],
    ));
    let mut t = base36(1);
    t.push(cusp(r(-1, 3), eta6, 1));
    out.push(with_cusp(entry("sum4squares", &[1, 1, 1, 1], 3, t), eta6));

    // x² + y² + 2z² + 2w², m = 2
    let eta48 = "eta(4)^2*eta(8)^2";
    let q = "q1122";
    let half_block = |s1: i64| {
        vec![
            sig(r(1, 2), 1),
            sig_tw(r(s1, 2), -4, 1),
            sig(r(-3, 2), 2),
            sig(one(), 4),
        ]
    };
    let two_block = |s1: i64| {
        vec![
            sig(i(2), 2),
            sig_tw(i(2 * s1), -4, 2),
            sig(i(-6), 4),
            sig(i(4), 8),
        ]
    };
    let mut t = half_block(1);
    t.push(cusp(one(), eta48, 1));
    out.push(with_cusp(entry(q, &[1, 0, 0, 0], 2, t), eta48));
    out.push(entry(q, &[1, 1, 0, 0], 2, two_block(1)));
    out.push(entry(
        q,
        &[0, 0, 1, 0],
        2,
        vec![sig(i(2), 2), sig(i(-6), 4), sig(i(4), 8)],
    ));
    out.push(entry(q, &[1, 0, 1, 0], 2, half_block(-1)));
    out.push(entry(
        q,
        &[1, 1, 1, 0],
        2,
        vec![sig(i(8), 4), sig(i(-24), 8), sig(i(16), 16)],
    ));
    out.push(entry(
        q,
        &[0, 0, 1, 1],
        2,
        vec![sig(i(4), 4), sig(i(4), 8), sig(i(-40), 16), sig(i(32), 32)],
    ));
    let mut t = half_block(1);
    t.push(cusp(i(-1), eta48, 1));
    out.push(with_cusp(entry(q, &[1, 0, 1, 1], 2, t), eta48));
    out.push(entry(q, &[1, 1, 1, 1], 2, two_block(-1)));

    // two copies of x² + xy + y², m = 3
    let eta39 = "eta(3)^2*eta(9)^2";
    let low = |s1: i64| {
        vec![
            sig(r(1, 6), 1),
            sig_tw(r(s1, 6), -3, 1),
            sig(r(-2, 3), 3),
            sig(r(1, 2), 9),
        ]
    };
    let high = |s1: i64| {
        vec![
            sig(r(3, 2), 3),
            sig_tw(r(3 * s1, 2), -3, 3),
            sig(i(-6), 9),
            sig(r(9, 2), 27),
        ]
    };
    let mut t = low(1);
    t.push(cusp(r(2, 3), eta39, 1));
    out.push(with_cusp(entry("hex2", &[1, 0, 0, 0], 3, t), eta39));
    out.push(entry("hex2", &[1, 1, 0, 0], 3, high(1)));
    let mut t = low(1);
    t.push(cusp(r(-1, 3), eta39, 1));
    out.push(with_cusp(entry("hex2", &[1, 1, 1, 0], 3, t), eta39));
    out.push(entry("hex2", &[1, 1, 1, 1], 3, high(-1)));
    out.push(entry("hex2", &[1, 0, 1, 0], 3, low(-1)));

    // two copies of x² + xy + 2y², m = 2
    let eta7 = "eta(1)*eta(2)*eta(7)*eta(14)";
    let full = || {
        vec![
            sig(r(2, 3), 1),
            sig(i(-2), 2),
            sig(r(4, 3), 4),
            sig(r(-14, 3), 7),
            sig(i(14), 14),
            sig(r(-28, 3), 28),
        ]
    };
    let even = || {
        vec![
            sig(r(4, 3), 2),
            sig(r(-4, 3), 4),
            sig(r(-28, 3), 14),
            sig(r(28, 3), 28),
        ]
    };
    let mut t = full();
    t.extend([cusp(r(4, 3), eta7, 1), cusp(r(4, 3), eta7, 2)]);
    out.push(with_cusp(entry("hex7", &[1, 0, 0, 0], 2, t), eta7));
    let mut t = even();
    t.push(cusp(r(8, 3), eta7, 2));
    out.push(with_cusp(entry("hex7", &[1, 0, 1, 0], 2, t), eta7));
    let mut t = full();
    t.extend([cusp(r(-2, 3), eta7, 1), cusp(r(-2, 3), eta7, 2)]);
    out.push(with_cusp(entry("hex7", &[1, 0, 0, 1], 2, t), eta7));
    let mut t = even();
    t.push(cusp(r(2, 3), eta7, 2));
    out.push(with_cusp(entry("hex7", &[0, 1, 0, 0], 2, t), eta7));
    let mut t = even();
    t.push(cusp(r(-4, 3), eta7, 2));
    out.push(with_cusp(entry("hex7", &[0, 1, 0, 1], 2, t), eta7));

    out
}
