//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Poly`] stores an explicit variable list together with a sparse term
//! map keyed by exponent vectors. Terms are ordered graded-lexicographically
//! (total degree first, then lexicographic on exponents), which fixes a
//! canonical display form and a canonical leading term. All arithmetic is
//! exact over the rationals; values are immutable after construction and
//! safe to share across threads.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar used throughout the library.
pub type Rational = num_rational::BigRational;

/// Builds a rational from a numerator/denominator pair of machine integers.
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from a machine integer.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector of one term, aligned with the owning polynomial's
/// variable list.
///
/// Ordered graded-lexicographically: higher total degree first, ties broken
/// lexicographically with earlier variables dominating.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u64 = self.0.iter().map(|&e| u64::from(e)).sum();
        let db: u64 = other.0.iter().map(|&e| u64::from(e)).sum();
        da.cmp(&db).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Debug, Clone)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

/// Merges two variable lists, keeping the left list's order and appending
/// variables that only occur on the right in their original order.
pub fn merged_vars(left: &[String], right: &[String]) -> Vec<String> {
    let mut out = left.to_vec();
    for v in right {
        if !out.iter().any(|w| w == v) {
            out.push(v.clone());
        }
    }
    out
}

impl Poly {
    /// The zero polynomial over the given variables.
    pub fn zero(vars: &[&str]) -> Poly {
        Poly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    /// A constant polynomial over the given variables.
    pub fn constant(vars: &[&str], value: Rational) -> Poly {
        let mut p = Poly::zero(vars);
        if !value.is_zero() {
            p.terms.insert(Monomial(vec![0; p.vars.len()]), value);
        }
        p
    }

    /// The constant 1 over the given variables.
    pub fn one(vars: &[&str]) -> Poly {
        Poly::constant(vars, Rational::one())
    }

    /// The polynomial consisting of a single variable.
    ///
    /// `name` must be one of `vars`.
    pub fn variable(vars: &[&str], name: &str) -> Result<Poly, Error> {
        let mut p = Poly::zero(vars);
        let idx = p
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.terms.insert(Monomial(exps), Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from explicit terms.
    ///
    /// Duplicate exponent vectors are summed; zero coefficients are dropped.
    /// Every exponent vector must have the same length as `vars`.
    pub fn from_terms(
        vars: &[&str],
        terms: Vec<(Vec<u32>, Rational)>,
    ) -> Result<Poly, Error> {
        let mut p = Poly::zero(vars);
        for (exps, coeff) in terms {
            if exps.len() != p.vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: p.vars.len(),
                    found: exps.len(),
                });
            }
            p.add_term(Monomial(exps), coeff);
        }
        Ok(p)
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The declared variable list (a variable may be unused by every term).
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial has no term of positive degree.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The constant value if [`Poly::is_constant`]; `None` otherwise.
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Total degree; `None` for the zero polynomial (degree minus infinity).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.total_degree())
    }

    /// Degree in one variable; 0 for the zero polynomial, unused variables,
    /// and variables absent from the list.
    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Variables that actually occur with positive exponent, in list order.
    pub fn effective_vars(&self) -> Vec<String> {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used.insert(i);
                }
            }
        }
        used.into_iter().map(|i| self.vars[i].clone()).collect()
    }

    pub fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Leading term under graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Rewrites the polynomial over a different variable list.
    ///
    /// Every effective variable of `self` must appear in `target`; declared
    /// but unused variables may be dropped or reordered freely.
    pub fn aligned(&self, target: &[String]) -> Result<Poly, Error> {
        if self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            map.push(target.iter().position(|t| t == v));
        }
        let mut out = Poly {
            vars: target.to_vec(),
            terms: BTreeMap::new(),
        };
        for (mono, coeff) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(Error::UnknownVariable(self.vars[i].clone())),
                }
            }
            out.add_term(Monomial(exps), coeff.clone());
        }
        Ok(out)
    }

    /// Aligns two polynomials over the merged variable list.
    pub fn align_pair(a: &Poly, b: &Poly) -> (Poly, Poly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let vars = merged_vars(&a.vars, &b.vars);
        // Alignment to a superset of both variable lists cannot fail.
        (a.aligned(&vars).unwrap(), b.aligned(&vars).unwrap())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut a, b) = Poly::align_pair(self, other);
        for (mono, coeff) in b.terms {
            a.add_term(mono, coeff);
        }
        a
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let (a, b) = Poly::align_pair(self, other);
        let mut out = Poly { vars: a.vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut out = Poly::one(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Partial derivative with respect to `var`.
    ///
    /// `var` must be in the variable list, even if the result is zero.
    pub fn differentiate(&self, var: &str) -> Result<Poly, Error> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (mono, coeff) in &self.terms {
            let e = mono.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = mono.0.clone();
            exps[idx] = e - 1;
            out.add_term(Monomial(exps), coeff * integer(i64::from(e)));
        }
        Ok(out)
    }

    /// Evaluates at a point binding every declared variable.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, Error> {
        for v in &self.vars {
            if !point.contains_key(v) {
                return Err(Error::UnboundVariable(v.clone()));
            }
        }
        let values: Vec<&Rational> = self.vars.iter().map(|v| &point[v]).collect();
        let mut acc = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    term *= values[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Convenience wrapper around [`Poly::evaluate`] taking name/value pairs.
    pub fn evaluate_at(&self, bindings: &[(&str, Rational)]) -> Result<Rational, Error> {
        let map: BTreeMap<String, Rational> =
            bindings.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
        self.evaluate(&map)
    }

    /// Substitutes a polynomial for one variable.
    ///
    /// The result is expressed over the merge of both variable lists.
    pub fn substitute(&self, var: &str, value: &Poly) -> Result<Poly, Error> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let vars = merged_vars(&self.vars, &value.vars);
        let var_strs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let value = value.aligned(&vars).unwrap();
        let max_exp = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0);
        // Cache powers of the substituted value.
        let mut powers: Vec<Poly> = Vec::with_capacity(max_exp as usize + 1);
        powers.push(Poly::one(&var_strs));
        for e in 1..=max_exp {
            let next = powers[(e - 1) as usize].mul(&value);
            powers.push(next);
        }
        let mut out = Poly::zero(&var_strs);
        for (mono, coeff) in &self.terms {
            let mut rest = vec![0u32; vars.len()];
            for (i, &e) in mono.0.iter().enumerate() {
                if i != idx && e > 0 {
                    let j = vars.iter().position(|v| v == &self.vars[i]).unwrap();
                    rest[j] = e;
                }
            }
            let mut term = Poly::zero(&var_strs);
            term.add_term(Monomial(rest), coeff.clone());
            out = out.add(&term.mul(&powers[mono.0[idx] as usize]));
        }
        Ok(out)
    }

    /// True when every term has the same total degree (vacuously for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.total_degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Homogenizes with a fresh variable appended to the variable list.
    pub fn homogenize(&self, new_var: &str) -> Result<Poly, Error> {
        if self.vars.iter().any(|v| v == new_var) {
            return Err(Error::InvalidInput(format!(
                "homogenization variable '{new_var}' already occurs in the variable list"
            )));
        }
        let mut vars = self.vars.clone();
        vars.push(new_var.to_string());
        let d = self.total_degree().unwrap_or(0);
        let mut out = Poly { vars, terms: BTreeMap::new() };
        for (mono, coeff) in &self.terms {
            let mut exps = mono.0.clone();
            exps.push(d - mono.total_degree());
            out.add_term(Monomial(exps), coeff.clone());
        }
        Ok(out)
    }

    /// Sets `var` to 1 and removes it from the variable list.
    ///
    /// Errors unless the polynomial is homogeneous, so that homogenize and
    /// dehomogenize are mutually inverse on their natural domains.
    pub fn dehomogenize(&self, var: &str) -> Result<Poly, Error> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        if !self.is_homogeneous() {
            return Err(Error::NonHomogeneous);
        }
        let vars: Vec<String> =
            self.vars.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, v)| v.clone()).collect();
        let mut out = Poly { vars, terms: BTreeMap::new() };
        for (mono, coeff) in &self.terms {
            let exps: Vec<u32> = mono
                .0
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, &e)| e)
                .collect();
            out.add_term(Monomial(exps), coeff.clone());
        }
        Ok(out)
    }

    /// Coefficient polynomials with respect to one variable, ascending by
    /// power. The returned polynomials live over the remaining variables.
    ///
    /// Returns `deg + 1` entries for a nonzero polynomial and an empty vector
    /// for zero.
    pub fn coeffs_in(&self, var: &str) -> Result<Vec<Poly>, Error> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let rest_vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let deg = self.degree_in(var) as usize;
        let mut coeffs: Vec<Poly> = (0..=deg)
            .map(|_| Poly { vars: rest_vars.clone(), terms: BTreeMap::new() })
            .collect();
        for (mono, coeff) in &self.terms {
            let e = mono.0[idx] as usize;
            let exps: Vec<u32> = mono
                .0
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, &x)| x)
                .collect();
            coeffs[e].add_term(Monomial(exps), coeff.clone());
        }
        Ok(coeffs)
    }

    /// Leading coefficient with respect to one variable, over the remaining
    /// variables.
    pub fn leading_coeff_in(&self, var: &str) -> Result<Poly, Error> {
        let coeffs = self.coeffs_in(var)?;
        coeffs
            .into_iter()
            .next_back()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Exact multivariate division by a single divisor.
    ///
    /// Returns `Some(q)` with `self == q * divisor` when the division is
    /// exact and `None` otherwise. Division by zero returns `None`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let (mut rem, div) = Poly::align_pair(self, divisor);
        let vars = rem.vars.clone();
        let (dm, dc) = {
            let (m, c) = div.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut quot = Poly { vars: vars.clone(), terms: BTreeMap::new() };
        while !rem.is_zero() {
            let (lm, lc) = {
                let (m, c) = rem.leading_term().unwrap();
                (m.clone(), c.clone())
            };
            if !dm.divides(&lm) {
                return None;
            }
            let qm = lm.quotient(&dm);
            let qc = lc / &dc;
            let mut t = Poly { vars: vars.clone(), terms: BTreeMap::new() };
            t.add_term(qm.clone(), qc.clone());
            quot.add_term(qm, qc);
            rem = rem.sub(&t.mul(&div));
        }
        Some(quot)
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    ///
    /// Returns 0 for the zero polynomial. Dividing by the content yields a
    /// polynomial with coprime integer coefficients.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// Signed content: the positive content with the sign of the leading
    /// coefficient, so `self / signed_content()` has positive leading
    /// coefficient.
    pub fn signed_content(&self) -> Rational {
        let c = self.content();
        match self.leading_term() {
            Some((_, lc)) if lc.is_negative() => -c,
            _ => c,
        }
    }

    /// Primitive part with positive leading coefficient.
    ///
    /// The zero polynomial normalizes to itself.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.signed_content();
        self.scale(&c.recip())
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = Poly::align_pair(self, other);
        a.terms == b.terms
    }
}

impl Eq for Poly {}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl fmt::Display for Poly {
    /// Canonical form: terms in descending graded-lexicographic order,
    /// coefficients as reduced rationals, `*` between factors and `^` for
    /// powers. The output round-trips through the text parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || mono.total_degree() == 0 {
                factors.push(abs.to_string());
            }
            for (i, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Exact determinant of a square rational matrix by Gaussian elimination.
pub(crate) fn det_rational(matrix: &[Vec<Rational>]) -> Result<Rational, Error> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
    }
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let pivot_row = (k..n).find(|&i| !m[i][k].is_zero());
        let Some(p) = pivot_row else {
            return Ok(Rational::zero());
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    Ok(det)
}

/// Invertible affine change of coordinates acting on polynomials.
///
/// For variables `x_1, ..., x_k` the matrix is `(k+1) x (k+1)` acting on the
/// column `(x_1, ..., x_k, 1)`; the last row must be `(0, ..., 0, 1)` and the
/// matrix must be invertible. Applying the change substitutes each variable
/// by the corresponding affine form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange {
    vars: Vec<String>,
    matrix: Vec<Vec<Rational>>,
}

impl LinearChange {
    /// Validates shape, the affine last row, and invertibility.
    pub fn new(vars: &[&str], matrix: Vec<Vec<Rational>>) -> Result<LinearChange, Error> {
        let k = vars.len();
        if matrix.len() != k + 1 {
            return Err(Error::DimensionMismatch { expected: k + 1, found: matrix.len() });
        }
        for row in &matrix {
            if row.len() != k + 1 {
                return Err(Error::DimensionMismatch { expected: k + 1, found: row.len() });
            }
        }
        let last = &matrix[k];
        let affine_row_ok = last[..k].iter().all(|c| c.is_zero()) && last[k].is_one();
        if !affine_row_ok {
            return Err(Error::InvalidInput(
                "last row of an affine change must be (0, ..., 0, 1)".to_string(),
            ));
        }
        if det_rational(&matrix)?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            matrix,
        })
    }

    /// Identity change on the given variables.
    pub fn identity(vars: &[&str]) -> LinearChange {
        let k = vars.len();
        let matrix: Vec<Vec<Rational>> = (0..=k)
            .map(|i| {
                (0..=k)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        LinearChange {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            matrix,
        }
    }

    /// Shear sending `target` to `target + amount * source`, fixing all other
    /// variables. `target` and `source` must be distinct members of `vars`.
    pub fn shear(
        vars: &[&str],
        target: &str,
        source: &str,
        amount: Rational,
    ) -> Result<LinearChange, Error> {
        let ti = vars
            .iter()
            .position(|v| *v == target)
            .ok_or_else(|| Error::UnknownVariable(target.to_string()))?;
        let si = vars
            .iter()
            .position(|v| *v == source)
            .ok_or_else(|| Error::UnknownVariable(source.to_string()))?;
        if ti == si {
            return Err(Error::InvalidInput(
                "shear target and source must be distinct variables".to_string(),
            ));
        }
        let mut change = LinearChange::identity(vars);
        change.matrix[ti][si] = amount;
        Ok(change)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn determinant(&self) -> Rational {
        det_rational(&self.matrix).expect("validated square matrix")
    }

    /// Applies the change of coordinates to a polynomial.
    ///
    /// Every effective variable of `p` must belong to the change's variable
    /// list. Total degree is preserved because the change is invertible.
    pub fn apply(&self, p: &Poly) -> Result<Poly, Error> {
        let p = p.aligned(&self.vars)?;
        let k = self.vars.len();
        let var_strs: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        // Image of each variable under the substitution.
        let images: Vec<Poly> = (0..k)
            .map(|i| {
                let mut img = Poly::constant(&var_strs, self.matrix[i][k].clone());
                for (j, var) in self.vars.iter().enumerate() {
                    if self.matrix[i][j].is_zero() {
                        continue;
                    }
                    let v = Poly::variable(&var_strs, var).unwrap();
                    img = img.add(&v.scale(&self.matrix[i][j]));
                }
                img
            })
            .collect();
        // Cache powers of each image up to the maximum exponent used.
        let mut max_exp = vec![0u32; k];
        for (mono, _) in p.terms() {
            for (i, &e) in mono.exponents().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let powers: Vec<Vec<Poly>> = (0..k)
            .map(|i| {
                let mut v = Vec::with_capacity(max_exp[i] as usize + 1);
                v.push(Poly::one(&var_strs));
                for e in 1..=max_exp[i] {
                    let next = v[(e - 1) as usize].mul(&images[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(&var_strs);
        for (mono, coeff) in p.terms() {
            let mut term = Poly::constant(&var_strs, coeff.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}
