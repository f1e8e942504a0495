//! Positive-definite integral quadratic forms and exhaustive enumeration of
//! their representations under congruence conditions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, int, Rational};
use crate::error::{Error, Result};

/// The named forms used throughout the examples, as upper-triangular
/// coefficient lists `a_11, a_12, …, a_1n, a_22, …, a_nn`.
pub const NAMED_FORMS: &[(&str, &[i64])] = &[
    ("sum2squares", &[1, 0, 1]),
    ("hex", &[1, 1, 1]),
    ("x2p2y2", &[1, 0, 2]),
    ("x2pxyp2y2", &[1, 1, 2]),
    ("sum4squares", &[1, 0, 0, 0, 1, 0, 0, 1, 0, 1]),
    ("sum3squares_p2", &[1, 0, 0, 0, 1, 0, 0, 1, 0, 2]),
    ("hex2", &[1, 1, 0, 0, 1, 0, 0, 1, 1, 1]),
    ("hex7", &[1, 1, 0, 0, 2, 0, 0, 1, 1, 2]),
    ("a112", &[1, 1, 1, 1, 1, 0, 0, 1, 0, 1]),
    ("q1122", &[1, 0, 0, 0, 1, 0, 0, 2, 0, 2]),
];

/// `Q(x) = Σ_{i ≤ j} a_ij x_i x_j` in an even number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    n: usize,
    upper: Vec<i64>,
    gram: Vec<Vec<i64>>,
    name: Option<String>,
}

impl QuadraticForm {
    pub fn from_upper_triangular(coeffs: &[i64]) -> Result<Self> {
        let len = coeffs.len();
        let n = ((8 * len + 1).sqrt() - 1) / 2;
        if n == 0 || n * (n + 1) / 2 != len {
            return Err(Error::NotTriangular(len));
        }
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let mut gram = vec![vec![0i64; n]; n];
        let mut it = coeffs.iter();
        for i in 0..n {
            for j in i..n {
                let a = *it.next().expect("length checked");
                if i == j {
                    gram[i][i] = 2 * a;
                } else {
                    gram[i][j] = a;
                    gram[j][i] = a;
                }
            }
        }
        let form = QuadraticForm {
            n,
            upper: coeffs.to_vec(),
            gram,
            name: None,
        };
        // Sylvester's criterion.
        for k in 1..=n {
            let minor: Vec<Vec<BigInt>> = (0..k)
                .map(|i| (0..k).map(|j| BigInt::from(form.gram[i][j])).collect())
                .collect();
            if !determinant(&minor).is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
        }
        Ok(form)
    }

    pub fn named(alias: &str) -> Option<Self> {
        NAMED_FORMS.iter().find(|(a, _)| *a == alias).map(|(a, c)| {
            let mut q = Self::from_upper_triangular(c).expect("named forms are valid");
            q.name = Some(a.to_string());
            q
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.upper
    }

    /// The even Gram matrix A_Q with Q(x) = ½ ᵗx A_Q x.
    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn evaluate(&self, x: &[i64]) -> Result<u64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[i64]) -> u64 {
        let mut twice = 0i128;
        for i in 0..self.n {
            let xi = x[i] as i128;
            if xi == 0 {
                continue;
            }
            let mut row = 0i128;
            for j in 0..self.n {
                row += self.gram[i][j] as i128 * x[j] as i128;
            }
            twice += xi * row;
        }
        (twice / 2) as u64
    }

    fn gram_big(&self) -> Vec<Vec<BigInt>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gram_big())
    }

    /// D_Q = (-1)^{n/2} det A_Q.
    pub fn discriminant(&self) -> i64 {
        let det = self
            .determinant()
            .to_i64()
            .expect("determinant fits in i64");
        if (self.n / 2) % 2 == 0 {
            det
        } else {
            -det
        }
    }

    /// Cofactor matrix `c_ij = (-1)^{i+j} det(minor_ij)`; symmetric here.
    pub fn cofactors(&self) -> Vec<Vec<BigInt>> {
        let a = self.gram_big();
        let n = self.n;
        let mut c = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| {
                        (0..n)
                            .filter(|&s| s != j)
                            .map(|s| a[r][s].clone())
                            .collect()
                    })
                    .collect();
                let d = determinant(&minor);
                c[i][j] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        c
    }

    /// N_Q = |D| / gcd(c_ij, c_ii / 2).
    pub fn level_by_cofactors(&self) -> u64 {
        let c = self.cofactors();
        let mut g = BigInt::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let entry = if i == j {
                    &c[i][i] / 2
                } else {
                    c[i][j].clone()
                };
                g = g.gcd(&entry);
            }
        }
        let d = self.determinant();
        (d / g).to_u64().expect("level fits in u64")
    }

    /// Whether `N A^{-1}` is an integral matrix with even diagonal.
    pub fn is_level_multiple(&self, n: u64) -> bool {
        // A^{-1} = adj(A) / det, and adj(A)_{ij} = c_ji.
        let c = self.cofactors();
        let det = self.determinant();
        let n = BigInt::from(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let scaled = &n * &c[j][i];
                if !(&scaled % &det).is_zero() {
                    return false;
                }
                if i == j && (scaled / &det).is_odd() {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest divisor of `candidate` that is a level multiple.
    pub fn level_by_search(&self, candidate: u64) -> Option<u64> {
        divisors(candidate)
            .ok()?
            .into_iter()
            .find(|&d| self.is_level_multiple(d))
    }

    /// The level, computed by the cofactor formula and confirmed by a direct
    /// minimality search over its divisors.
    pub fn level(&self) -> Result<u64> {
        let cofactor = self.level_by_cofactors();
        match self.level_by_search(cofactor) {
            Some(direct) if direct == cofactor => Ok(cofactor),
            Some(direct) => Err(Error::LevelMismatch { cofactor, direct }),
            None => Err(Error::LevelMismatch {
                cofactor,
                direct: 0,
            }),
        }
    }

    /// `floor(sqrt(2k c_ii / det A))` per coordinate.
    pub fn coordinate_bound(&self, k: u64) -> Vec<i64> {
        let c = self.cofactors();
        let det = self.determinant();
        (0..self.n)
            .map(|i| {
                let q = (BigInt::from(2 * k) * &c[i][i]) / &det;
                q.sqrt().to_i64().expect("bound fits in i64")
            })
            .collect()
    }

    /// Calls `visit(x, Q(x))` for every `x ≡ u (mod m)` with `Q(x) ≤ bound`.
    pub fn for_each_vector<F>(&self, cls: &CongruenceClass, bound: u64, mut visit: F) -> Result<()>
    where
        F: FnMut(&[i64], u64),
    {
        cls.check_dim(self.n)?;
        let walker = Walker::new(self, cls, bound);
        let mut x = vec![0i64; self.n];
        walker.walk(0, &mut x, &mut visit);
        Ok(())
    }

    pub fn enumerate_representations(
        &self,
        k: u64,
        cls: &CongruenceClass,
    ) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        self.for_each_vector(cls, k, |x, v| {
            if v == k {
                out.push(x.to_vec());
            }
        })?;
        Ok(out)
    }

    pub fn rep_count(&self, k: u64, cls: &CongruenceClass) -> Result<u64> {
        let mut count = 0u64;
        self.for_each_vector(cls, k, |_, v| {
            if v == k {
                count += 1;
            }
        })?;
        Ok(count)
    }

    /// `r(0), …, r(bound)` from a single enumeration pass.
    pub fn representation_counts(&self, cls: &CongruenceClass, bound: u64) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; bound as usize + 1];
        self.for_each_vector(cls, bound, |_, v| counts[v as usize] += 1)?;
        Ok(counts)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        let mut it = self.upper.iter();
        for i in 1..=self.n {
            for j in i..=self.n {
                let a = *it.next().expect("triangular");
                if a == 0 {
                    continue;
                }
                let mono = if i == j {
                    format!("x{i}^2")
                } else {
                    format!("x{i}x{j}")
                };
                terms.push(match a {
                    1 => mono,
                    -1 => format!("-{mono}"),
                    a => format!("{a}{mono}"),
                });
            }
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl FromStr for QuadraticForm {
    type Err = Error;

    /// An alias from [`NAMED_FORMS`] or a comma-separated coefficient list.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(q) = Self::named(s) {
            return Ok(q);
        }
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| {
                Error::Parse(format!(
                    "`{s}` is neither a form alias nor a coefficient list"
                ))
            })?;
        Self::from_upper_triangular(&coeffs)
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// The condition `x ≡ u (mod m)`, with `u` reduced into `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongruenceClass {
    modulus: u64,
    residue: Vec<i64>,
}

impl CongruenceClass {
    pub fn new(residue: &[i64], modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::NonPositive {
                what: "modulus",
                value: 0,
            });
        }
        let m = modulus as i64;
        Ok(CongruenceClass {
            modulus,
            residue: residue.iter().map(|u| u.rem_euclid(m)).collect(),
        })
    }

    /// No condition at all (m = 1).
    pub fn full(n: usize) -> Self {
        CongruenceClass {
            modulus: 1,
            residue: vec![0; n],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> &[i64] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(|&u| u == 0)
    }

    pub fn scale(&self, a: i64) -> Self {
        let u: Vec<i64> = self.residue.iter().map(|x| x * a).collect();
        Self::new(&u, self.modulus).expect("modulus already positive")
    }

    pub fn negate(&self) -> Self {
        self.scale(-1)
    }

    /// All classes modulo `m` in dimension `n`.
    pub fn all(n: usize, modulus: u64) -> Vec<Self> {
        let total = (modulus as usize).pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut u = vec![0i64; n];
                for slot in u.iter_mut() {
                    *slot = (idx % modulus as usize) as i64;
                    idx /= modulus as usize;
                }
                CongruenceClass {
                    modulus,
                    residue: u,
                }
            })
            .collect()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.residue.len() != n {
            Err(Error::DimensionMismatch {
                expected: n,
                actual: self.residue.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for CongruenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u: Vec<String> = self.residue.iter().map(|u| u.to_string()).collect();
        write!(f, "{};{}", u.join(","), self.modulus)
    }
}

/// Spherical polynomial of degree 0 or 1 with respect to A_Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SphericalPoly {
    Constant(Rational),
    /// P(x) = ᵗl A_Q x.
    Linear(Vec<Rational>),
}

impl SphericalPoly {
    pub fn one() -> Self {
        SphericalPoly::Constant(int(1))
    }

    pub fn degree(&self) -> u32 {
        match self {
            SphericalPoly::Constant(_) => 0,
            SphericalPoly::Linear(_) => 1,
        }
    }

    pub fn eval(&self, q: &QuadraticForm, x: &[i64]) -> Result<Rational> {
        if x.len() != q.dim() {
            return Err(Error::DimensionMismatch {
                expected: q.dim(),
                actual: x.len(),
            });
        }
        match self {
            SphericalPoly::Constant(c) => Ok(c.clone()),
            SphericalPoly::Linear(l) => {
                if l.len() != q.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: q.dim(),
                        actual: l.len(),
                    });
                }
                let a = q.gram_matrix();
                let mut acc = int(0);
                for (i, li) in l.iter().enumerate() {
                    let ax: i64 = (0..q.dim()).map(|j| a[i][j] * x[j]).sum();
                    acc += li * int(ax);
                }
                Ok(acc)
            }
        }
    }
}

/// Box scan with an exact Schur-complement prune: once the leading
/// coordinates are fixed, the minimum of Q over the remaining ones is
/// ½ ᵗx_F S x_F with S the Schur complement of the trailing block.
struct Walker<'a> {
    form: &'a QuadraticForm,
    modulus: i64,
    residue: &'a [i64],
    bound: u64,
    box_bounds: Vec<i64>,
    /// For prefix length j: (det(A_RR) · S_j, det(A_RR)).
    prune: Vec<Option<(Vec<Vec<i128>>, i128)>>,
}

impl<'a> Walker<'a> {
    fn new(form: &'a QuadraticForm, cls: &'a CongruenceClass, bound: u64) -> Self {
        let n = form.n;
        let a = form.gram_big();
        let mut prune = vec![None; n + 1];
        for (j, slot) in prune.iter_mut().enumerate().take(n).skip(1) {
            let rr: Vec<Vec<BigInt>> = (j..n)
                .map(|r| (j..n).map(|s| a[r][s].clone()).collect())
                .collect();
            let det_rr = determinant(&rr);
            let adj = adjugate(&rr);
            let mut t = vec![vec![0i128; j]; j];
            for p in 0..j {
                for q in 0..j {
                    let mut v = &det_rr * &a[p][q];
                    for r in 0..n - j {
                        for s in 0..n - j {
                            v -= &a[p][j + r] * &adj[r][s] * &a[j + s][q];
                        }
                    }
                    t[p][q] = v.to_i128().expect("Schur complement fits in i128");
                }
            }
            *slot = Some((t, det_rr.to_i128().expect("minor fits in i128")));
        }
        Walker {
            form,
            modulus: cls.modulus as i64,
            residue: &cls.residue,
            bound,
            box_bounds: form.coordinate_bound(bound),
            prune,
        }
    }

    fn walk<F: FnMut(&[i64], u64)>(&self, depth: usize, x: &mut Vec<i64>, visit: &mut F) {
        let n = self.form.n;
        if depth == n {
            let v = self.form.eval_unchecked(x);
            if v <= self.bound {
                visit(x, v);
            }
            return;
        }
        if let Some((t, scale)) = &self.prune[depth] {
            let mut q = 0i128;
            for p in 0..depth {
                for r in 0..depth {
                    q += x[p] as i128 * t[p][r] * x[r] as i128;
                }
            }
            if q > 2 * self.bound as i128 * scale {
                return;
            }
        }
        let b = self.box_bounds[depth];
        let m = self.modulus;
        let mut v = -b + (self.residue[depth] - (-b)).rem_euclid(m);
        while v <= b {
            x[depth] = v;
            self.walk(depth + 1, x, visit);
            v += m;
        }
        x[depth] = 0;
    }
}

fn adjugate(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&s| s != i)
                        .map(|s| m[r][s].clone())
                        .collect()
                })
                .collect();
            let d = determinant(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(a: &str) -> QuadraticForm {
        QuadraticForm::named(a).unwrap()
    }

    /// Plain nested-loop count over a generous box, no pruning.
    fn naive_count(q: &QuadraticForm, k: u64, cls: &CongruenceClass) -> u64 {
        let n = q.dim();
        let r = 2 * ((k as f64).sqrt() as i64 + 2);
        let side = (2 * r + 1) as usize;
        let mut count = 0;
        for idx in 0..side.pow(n as u32) {
            let mut i = idx;
            let x: Vec<i64> = (0..n)
                .map(|_| {
                    let v = (i % side) as i64 - r;
                    i /= side;
                    v
                })
                .collect();
            let congruent = x
                .iter()
                .zip(cls.residue())
                .all(|(xi, ui)| (xi - ui).rem_euclid(cls.modulus() as i64) == 0);
            if congruent && q.evaluate(&x).unwrap() == k {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn gram_and_evaluate() {
        let q = named("sum2squares");
        assert_eq!(q.evaluate(&[1, 0]).unwrap(), 1);
        assert_eq!(named("hex").gram_matrix(), &[vec![2, 1], vec![1, 2]]);
        assert_eq!(named("x2pxyp2y2").evaluate(&[1, 1]).unwrap(), 4);
        assert!(q.evaluate(&[1, 2, 3]).is_err());
    }

    #[test]
    fn rejects_bad_forms() {
        assert_eq!(
            QuadraticForm::from_upper_triangular(&[1, 0, -1]),
            Err(Error::NotPositiveDefinite)
        );
        assert_eq!(
            QuadraticForm::from_upper_triangular(&[1]),
            Err(Error::OddDimension(1))
        );
        assert_eq!(
            QuadraticForm::from_upper_triangular(&[1, 2]),
            Err(Error::NotTriangular(2))
        );
        assert!("1,x,1".parse::<QuadraticForm>().is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(named("hex").discriminant(), -3);
        assert_eq!(named("sum2squares").discriminant(), -4);
        assert_eq!(named("sum4squares").discriminant(), 16);
        assert_eq!(named("sum3squares_p2").discriminant(), 32);
    }

    #[test]
    fn levels() {
        assert_eq!(named("sum2squares").level().unwrap(), 4);
        assert_eq!(named("hex").level().unwrap(), 3);
        assert_eq!(named("x2pxyp2y2").level().unwrap(), 7);
        assert_eq!(named("sum4squares").level().unwrap(), 4);
        assert_eq!(named("hex2").level().unwrap(), 3);
        assert_eq!(named("hex7").level().unwrap(), 7);
        assert_eq!(named("q1122").level().unwrap(), 8);
        assert_eq!(named("sum3squares_p2").level().unwrap(), 8);
    }

    #[test]
    fn level_and_discriminant_share_primes() {
        for (alias, _) in NAMED_FORMS {
            let q = named(alias);
            let n = q.level().unwrap();
            let d = q.discriminant().unsigned_abs();
            assert_eq!(
                crate::arith::prime_factors(n),
                crate::arith::prime_factors(d),
                "{alias}"
            );
        }
    }

    #[test]
    fn coordinate_bounds() {
        assert_eq!(named("sum2squares").coordinate_bound(25), vec![5, 5]);
        assert_eq!(named("hex").coordinate_bound(3), vec![2, 2]);
        assert_eq!(named("a112").coordinate_bound(0), vec![0; 4]);
    }

    #[test]
    fn representation_examples() {
        let q = named("sum2squares");
        let cls = CongruenceClass::new(&[1, 0], 3).unwrap();
        assert_eq!(
            q.enumerate_representations(1, &cls).unwrap(),
            vec![vec![1, 0]]
        );
        let four = named("sum4squares");
        let odd = CongruenceClass::new(&[1, 1, 1, 1], 2).unwrap();
        assert_eq!(four.rep_count(4, &odd).unwrap(), 16);
        assert_eq!(four.rep_count(2, &CongruenceClass::full(4)).unwrap(), 24);
    }

    #[test]
    fn pruned_walk_matches_naive_count() {
        for (alias, _) in NAMED_FORMS {
            let q = named(alias);
            let n = q.dim();
            for m in [1u64, 2, 3] {
                for cls in CongruenceClass::all(n, m).into_iter().step_by(3) {
                    let counts = q.representation_counts(&cls, 12).unwrap();
                    for k in [0u64, 1, 2, 5, 7, 12] {
                        assert_eq!(
                            counts[k as usize],
                            naive_count(&q, k, &cls),
                            "{alias} {cls} k={k}"
                        );
                        assert_eq!(counts[k as usize], q.rep_count(k, &cls).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn partition_by_residue() {
        for (alias, _) in NAMED_FORMS {
            let q = named(alias);
            let full = q
                .representation_counts(&CongruenceClass::full(q.dim()), 50)
                .unwrap();
            for m in [2u64, 3] {
                let mut total = vec![0u64; 51];
                for cls in CongruenceClass::all(q.dim(), m) {
                    for (t, c) in total
                        .iter_mut()
                        .zip(q.representation_counts(&cls, 50).unwrap())
                    {
                        *t += c;
                    }
                }
                assert_eq!(total, full, "{alias} m={m}");
            }
        }
    }

    #[test]
    fn negation_symmetry() {
        for (alias, _) in NAMED_FORMS {
            let q = named(alias);
            for cls in CongruenceClass::all(q.dim(), 3) {
                assert_eq!(
                    q.representation_counts(&cls, 40).unwrap(),
                    q.representation_counts(&cls.negate(), 40).unwrap()
                );
            }
        }
    }

    #[test]
    fn positive_on_search_box() {
        for (alias, _) in NAMED_FORMS {
            let q = named(alias);
            let b = q.coordinate_bound(10);
            let n = q.dim();
            let sides: Vec<usize> = b.iter().map(|&v| (2 * v + 1) as usize).collect();
            let total: usize = sides.iter().product();
            for mut idx in 1..total {
                let x: Vec<i64> = (0..n)
                    .map(|i| {
                        let v = (idx % sides[i]) as i64 - b[i];
                        idx /= sides[i];
                        v
                    })
                    .collect();
                if x.iter().any(|&v| v != 0) {
                    assert!(q.evaluate(&x).unwrap() > 0);
                }
            }
        }
    }

    #[test]
    fn spherical_examples() {
        let q = named("sum2squares");
        assert_eq!(SphericalPoly::one().eval(&q, &[4, 9]).unwrap(), int(1));
        let p = SphericalPoly::Linear(vec![int(1), int(0)]);
        assert_eq!(p.eval(&q, &[3, 5]).unwrap(), int(6));
        assert_eq!(p.eval(&q, &[0, 0]).unwrap(), int(0));
        assert_eq!(p.eval(&q, &[-3, -5]).unwrap(), int(-6));
        assert!(p.eval(&q, &[1]).is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(named("hex").to_string(), "x1^2 + x1x2 + x2^2");
        let q: QuadraticForm = "1,1,1".parse().unwrap();
        assert_eq!(q.discriminant(), -3);
        assert_eq!(q.level().unwrap(), 3);
    }

    #[test]
    fn bareiss_determinant() {
        let m: Vec<Vec<BigInt>> = [[0i64, 2, 1], [1, 0, 3], [4, 1, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        // 0(0-3) - 2(0-12) + 1(1-0) = 25
        assert_eq!(determinant(&m), BigInt::from(25));
    }
}
