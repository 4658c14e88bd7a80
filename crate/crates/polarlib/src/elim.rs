//! Exact elimination toolkit: resultants, polynomial determinants,
//! greatest common divisors, squarefree decomposition, and root counting.
//!
//! Everything here is exact. Determinants of polynomial matrices use
//! fraction-free Bareiss elimination (every division is exact by
//! construction), resultants are Sylvester determinants, and gcds use a
//! primitive polynomial remainder sequence so intermediate coefficients stay
//! small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::{merged_vars, Poly, Rational};

/// Exact determinant of a square matrix of polynomials.
///
/// Uses fraction-free Bareiss elimination with row pivoting; intermediate
/// entries are minors of the input matrix, so every division is exact.
pub fn determinant(rows: &[Vec<Poly>]) -> Result<Poly, Error> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidInput("determinant of an empty matrix".to_string()));
    }
    for row in rows {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
    }
    // Align every entry over the merged variable list.
    let mut vars: Vec<String> = Vec::new();
    for row in rows {
        for entry in row {
            vars = merged_vars(&vars, entry.vars());
        }
    }
    let var_strs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut m: Vec<Vec<Poly>> = rows
        .iter()
        .map(|row| row.iter().map(|e| e.aligned(&vars).unwrap()).collect())
        .collect();
    if n == 1 {
        return Ok(m.remove(0).remove(0));
    }
    let mut negate = false;
    let mut prev = Poly::one(&var_strs);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(Poly::zero(&var_strs)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).ok_or_else(|| {
                    Error::Internal("Bareiss elimination produced an inexact division".to_string())
                })?;
            }
            m[i][k] = Poly::zero(&var_strs);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Resultant of `f` and `g` with respect to `var`, as the determinant of
/// their Sylvester matrix.
///
/// Both inputs must have degree at least 1 in `var`. The result is a
/// polynomial in the remaining variables; it vanishes identically exactly
/// when `f` and `g` share a factor of positive degree in `var`.
pub fn resultant(f: &Poly, g: &Poly, var: &str) -> Result<Poly, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (f, g) = Poly::align_pair(f, g);
    if f.var_index(var).is_none() {
        return Err(Error::UnknownVariable(var.to_string()));
    }
    let df = f.degree_in(var) as usize;
    let dg = g.degree_in(var) as usize;
    if df == 0 || dg == 0 {
        return Err(Error::DegreeTooLow { variable: var.to_string() });
    }
    let fc = f.coeffs_in(var)?; // ascending, over remaining variables
    let gc = g.coeffs_in(var)?;
    let n = df + dg;
    let rest: Vec<String> = fc[0].vars().to_vec();
    let rest_strs: Vec<&str> = rest.iter().map(|s| s.as_str()).collect();
    let zero = Poly::zero(&rest_strs);
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for r in 0..dg {
        let mut row = vec![zero.clone(); n];
        for (k, c) in fc.iter().enumerate() {
            row[r + df - k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..df {
        let mut row = vec![zero.clone(); n];
        for (k, c) in gc.iter().enumerate() {
            row[r + dg - k] = c.clone();
        }
        rows.push(row);
    }
    determinant(&rows)
}

// ---------------------------------------------------------------------------
// Univariate coefficient-vector helpers (ascending order, trimmed).

fn vec_trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn vec_degree(v: &[Rational]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

/// Remainder of `a` divided by nonzero `b`, rational long division.
fn vec_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let db = vec_degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let lb = &b[db];
    while vec_degree(&r).is_some_and(|dr| dr >= db) {
        let dr = r.len() - 1;
        let factor = &r[dr] / lb;
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            let delta = &factor * bc;
            r[shift + k] -= delta;
        }
        vec_trim(&mut r);
    }
    r
}

/// Scales to coprime integer coefficients with positive leading coefficient.
fn vec_primitive(mut v: Vec<Rational>) -> Vec<Rational> {
    vec_trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in &v {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut scale = Rational::new(den_lcm, num_gcd);
    if v.last().unwrap().is_negative() {
        scale = -scale;
    }
    for c in &mut v {
        *c *= &scale;
    }
    v
}

fn vec_derivative(v: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = v
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(k.into()))
        .collect();
    vec_trim(&mut out);
    out
}

fn vec_eval(v: &[Rational], a: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in v.iter().rev() {
        acc = acc * a + c;
    }
    acc
}

/// Synthetic division by `x - a`; the caller guarantees `a` is a root.
fn vec_deflate(v: &[Rational], a: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); v.len() - 1];
    let mut carry = Rational::zero();
    for k in (1..v.len()).rev() {
        carry = &v[k] + &carry * a;
        out[k - 1] = carry.clone();
    }
    out
}

/// Primitive-PRS gcd of two univariate coefficient vectors; result is
/// primitive with positive leading coefficient, or empty for gcd(0, 0).
fn vec_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut f = vec_primitive(a.to_vec());
    let mut g = vec_primitive(b.to_vec());
    if f.is_empty() {
        return g;
    }
    while !g.is_empty() {
        if g.len() == 1 {
            return vec![Rational::one()];
        }
        let r = vec_primitive(vec_rem(&f, &g));
        f = g;
        g = r;
    }
    f
}

fn poly_to_vec(p: &Poly, var: &str) -> Vec<Rational> {
    let coeffs = p.coeffs_in(var).expect("variable present");
    let mut v: Vec<Rational> = coeffs
        .iter()
        .map(|c| c.constant_value().expect("univariate coefficient"))
        .collect();
    vec_trim(&mut v);
    v
}

fn vec_to_poly(v: &[Rational], context: &Poly, var: &str) -> Poly {
    let var_strs: Vec<&str> = context.vars().iter().map(|s| s.as_str()).collect();
    let var_poly = Poly::variable(&var_strs, var).expect("variable present");
    let mut acc = Poly::zero(&var_strs);
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&var_poly.pow(k as u32).scale(c));
    }
    acc
}

/// Resolves the single effective variable of `p`.
///
/// Returns `None` for constants and an error when two or more variables
/// occur.
fn univariate_var(p: &Poly) -> Result<Option<String>, Error> {
    let eff = p.effective_vars();
    match eff.len() {
        0 => Ok(None),
        1 => Ok(Some(eff.into_iter().next().unwrap())),
        _ => Err(Error::NotUnivariate),
    }
}

// ---------------------------------------------------------------------------
// Multivariate gcd.

/// Greatest common divisor, normalized to a primitive polynomial with
/// positive leading coefficient. `gcd(0, 0) = 0`; the gcd of anything with a
/// nonzero constant is 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (a, b) = Poly::align_pair(a, b);
    gcd_aligned(&a, &b)
}

fn gcd_aligned(a: &Poly, b: &Poly) -> Poly {
    let var_strs: Vec<&str> = a.vars().iter().map(|s| s.as_str()).collect();
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(&var_strs);
    }
    let eff = {
        let ea = a.effective_vars();
        let eb = b.effective_vars();
        merged_vars(&ea, &eb)
    };
    if eff.len() == 1 {
        let v = &eff[0];
        let g = vec_gcd(&poly_to_vec(a, v), &poly_to_vec(b, v));
        return vec_to_poly(&g, a, v);
    }
    // Multivariate: recurse on the last effective variable.
    let v = eff.last().unwrap().clone();
    if a.degree_in(&v) == 0 {
        return gcd_aligned(a, &content_in(b, &v));
    }
    if b.degree_in(&v) == 0 {
        return gcd_aligned(&content_in(a, &v), b);
    }
    let ca = content_in(a, &v);
    let cb = content_in(b, &v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let cg = gcd_aligned(&ca, &cb);
    // Primitive polynomial remainder sequence on the primitive parts.
    let (mut f, mut g) = if pa.degree_in(&v) >= pb.degree_in(&v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let gp = loop {
        if g.is_zero() {
            break primitive_in(&f, &v);
        }
        if g.degree_in(&v) == 0 {
            break Poly::one(&var_strs);
        }
        let r = pseudo_rem(&f, &g, &v);
        f = g;
        g = primitive_in(&r, &v);
    };
    cg.mul(&gp).normalized()
}

/// gcd of an iterator of polynomials (zero when empty).
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
    let mut acc: Option<Poly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.normalized(),
            Some(g) => {
                if g.is_constant() && !g.is_zero() {
                    return g;
                }
                gcd(&g, p)
            }
        });
    }
    acc.unwrap_or_else(|| Poly::zero(&[]))
}

/// Content of `p` viewed as a univariate polynomial in `var` over the ring
/// of polynomials in the remaining variables: the gcd of the coefficient
/// polynomials of the powers of `var`. The result is free of `var` and
/// expressed over `p`'s variable list. Zero maps to zero.
pub fn content_in(p: &Poly, var: &str) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let coeffs = p.coeffs_in(var).expect("variable present");
    gcd_many(coeffs.iter().filter(|c| !c.is_zero()))
        .aligned(p.vars())
        .expect("superset alignment")
}

/// Divides out [`content_in`], leaving a polynomial primitive as a
/// univariate polynomial in `var`.
pub fn primitive_in(p: &Poly, var: &str) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides")
}

/// Largest divisor of `p` involving only `var`: the content of `p` viewed
/// over the ring `Q[var]` with the remaining variables as the main
/// indeterminates. Used to strip eliminant factors that depend only on the
/// direction being eliminated.
pub fn content_in_only(p: &Poly, var: &str) -> Poly {
    use std::collections::BTreeMap;
    if p.is_zero() {
        return p.clone();
    }
    let idx = p.var_index(var).expect("variable present");
    let var_strs: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    let var_poly = Poly::variable(&var_strs, var).unwrap();
    // Group coefficients by the monomial in the other variables.
    let mut groups: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    for (mono, coeff) in p.terms() {
        let mut key = mono.exponents().to_vec();
        let e = key[idx];
        key[idx] = 0;
        let piece = var_poly.pow(e).scale(coeff);
        groups
            .entry(key)
            .and_modify(|acc| *acc = acc.add(&piece))
            .or_insert(piece);
    }
    gcd_many(groups.values()).aligned(p.vars()).expect("superset alignment")
}

/// Classical pseudo-remainder of `f` by `g` with respect to `var`
/// (`deg_var g >= 1`). Used only inside the PRS, where any leading-
/// coefficient multiple of the true remainder is acceptable.
fn pseudo_rem(f: &Poly, g: &Poly, var: &str) -> Poly {
    let dg = g.degree_in(var);
    let lg = g.leading_coeff_in(var).unwrap().aligned(f.vars()).unwrap();
    let var_poly = Poly::variable(
        &f.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        var,
    )
    .unwrap();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= dg {
        let dr = r.degree_in(var);
        let lr = r.leading_coeff_in(var).unwrap().aligned(f.vars()).unwrap();
        let shift = var_poly.pow(dr - dg);
        r = lg.mul(&r).sub(&lr.mul(&shift).mul(g));
    }
    r
}

// ---------------------------------------------------------------------------
// Squarefree structure.

/// Squarefree part of a univariate polynomial: the product of its distinct
/// irreducible factors, primitive with positive leading coefficient.
///
/// Errors on the zero polynomial and on genuinely multivariate input;
/// nonzero constants have squarefree part 1.
pub fn squarefree_part(p: &Poly) -> Result<Poly, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let var_strs: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    let Some(v) = univariate_var(p)? else {
        return Ok(Poly::one(&var_strs));
    };
    let vec = poly_to_vec(p, &v);
    let g = vec_gcd(&vec, &vec_derivative(&vec));
    if g.len() == 1 {
        return Ok(vec_to_poly(&vec_primitive(vec), p, &v));
    }
    let q = vec_to_poly(&vec, p, &v)
        .exact_div(&vec_to_poly(&g, p, &v))
        .expect("gcd divides");
    Ok(q.normalized())
}

/// Squarefree part of a polynomial in any number of variables: divides out
/// `gcd(p, dp/dx_1, ..., dp/dx_k)`.
pub fn squarefree_part_multivariate(p: &Poly) -> Result<Poly, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut g = p.clone();
    for v in p.effective_vars() {
        g = gcd(&g, &p.differentiate(&v)?);
    }
    Ok(p.exact_div(&g).expect("gcd divides").normalized())
}

/// True when `p` has no repeated factor of positive degree. Works in any
/// number of variables; errors on zero.
pub fn is_squarefree(p: &Poly) -> Result<bool, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut g = p.clone();
    for v in p.effective_vars() {
        g = gcd(&g, &p.differentiate(&v)?);
        if g.is_constant() {
            return Ok(true);
        }
    }
    Ok(g.is_constant())
}

/// Squarefree decomposition `content * prod factor_i ^ multiplicity_i`.
///
/// Factors are primitive with positive leading coefficient, squarefree, and
/// pairwise coprime; the reconstruction equals the input exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub content: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl SquarefreeDecomposition {
    /// Multiplies the decomposition back out (used to check the invariant).
    pub fn reconstruct(&self) -> Poly {
        let mut acc = Poly::constant(&[], self.content.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Yun's squarefree decomposition of a univariate polynomial.
pub fn squarefree_decompose(p: &Poly) -> Result<SquarefreeDecomposition, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let Some(v) = univariate_var(p)? else {
        return Ok(SquarefreeDecomposition {
            content: p.constant_value().unwrap(),
            factors: Vec::new(),
        });
    };
    let mut content = p.signed_content();
    let pp = p.normalized();
    let mut factors: Vec<(Poly, u32)> = Vec::new();

    let deriv = pp.differentiate(&v)?;
    let g0 = gcd(&pp, &deriv);
    let mut w = pp.exact_div(&g0).expect("gcd divides");
    let mut y = deriv.exact_div(&g0).expect("gcd divides");
    let mut multiplicity = 1u32;
    loop {
        let z = y.sub(&w.differentiate(&v)?);
        if z.is_zero() {
            if w.total_degree().unwrap_or(0) > 0 {
                factors.push((w.normalized(), multiplicity));
            }
            break;
        }
        let gi = gcd(&w, &z);
        if gi.total_degree().unwrap_or(0) > 0 {
            factors.push((gi.normalized(), multiplicity));
        }
        w = w.exact_div(&gi).expect("gcd divides");
        y = z.exact_div(&gi).expect("gcd divides");
        multiplicity += 1;
    }
    // The factors are normalized, so absorb any leftover rational unit into
    // the content and verify the reconstruction invariant.
    let mut prod = Poly::one(&[]);
    for (f, m) in &factors {
        prod = prod.mul(&f.pow(*m));
    }
    let unit = pp
        .exact_div(&prod)
        .and_then(|q| q.constant_value())
        .ok_or_else(|| {
            Error::Internal("squarefree decomposition failed to reconstruct its input".to_string())
        })?;
    content *= unit;
    Ok(SquarefreeDecomposition { content, factors })
}

/// Multiplicity of `a` as a root of a univariate polynomial (0 when `a` is
/// not a root). Errors on zero and on multivariate input.
pub fn root_multiplicity(p: &Poly, a: &Rational) -> Result<u32, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let Some(v) = univariate_var(p)? else {
        return Ok(0);
    };
    let mut vec = poly_to_vec(p, &v);
    let mut k = 0u32;
    while vec_eval(&vec, a).is_zero() {
        vec = vec_deflate(&vec, a);
        k += 1;
    }
    Ok(k)
}

/// Number of distinct complex roots of a univariate polynomial: the degree
/// of its squarefree part.
pub fn count_distinct_roots(p: &Poly) -> Result<u32, Error> {
    Ok(squarefree_part(p)?.total_degree().unwrap_or(0))
}

/// All rational roots of a univariate polynomial, with a completeness flag.
///
/// Roots are found by the rational root theorem on the primitive squarefree
/// part. Factoring the extreme coefficients uses trial division up to 10^6;
/// if an unfactored composite cofactor survives (or the divisor set is
/// unreasonably large) the search may miss roots and the flag is `false`.
/// For the small-coefficient inputs this library feeds it — user-entered
/// curves and their immediate derivatives — the search is complete.
pub fn rational_roots(p: &Poly) -> Result<(Vec<Rational>, bool), Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let Some(v) = univariate_var(p)? else {
        return Ok((Vec::new(), true));
    };
    let sqf = squarefree_part(p)?;
    let mut vec = poly_to_vec(&sqf, &v);
    let mut roots: Vec<Rational> = Vec::new();
    if vec[0].is_zero() {
        roots.push(Rational::zero());
        while vec[0].is_zero() {
            vec.remove(0);
        }
    }
    if vec.len() <= 1 {
        roots.sort();
        return Ok((roots, true));
    }
    let (d0, c0) = divisors(&vec[0].numer().abs());
    let (dl, c1) = divisors(&vec.last().unwrap().numer().abs());
    let mut complete = c0 && c1;
    if d0.len().saturating_mul(dl.len()) > 100_000 {
        complete = false;
    } else {
        for num in &d0 {
            for den in &dl {
                for sign in [1i64, -1] {
                    let candidate = Rational::new(num * BigInt::from(sign), den.clone());
                    if vec_eval(&vec, &candidate).is_zero() && !roots.contains(&candidate) {
                        roots.push(candidate);
                    }
                }
            }
        }
    }
    if !complete {
        // Bounded salvage pass over small rationals.
        for n in -50i64..=50 {
            for d in 1i64..=12 {
                let candidate = crate::poly::rational(n, d);
                if vec_eval(&vec, &candidate).is_zero() && !roots.contains(&candidate) {
                    roots.push(candidate);
                }
            }
        }
    }
    roots.sort();
    Ok((roots, complete))
}

/// All positive divisors of `|n|` via trial division bounded by 10^6.
/// The flag is `false` when a possibly-composite cofactor remains
/// unfactored or the divisor set would be enormous.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let one = BigInt::one();
    if n.is_zero() {
        return (vec![one], true);
    }
    let mut rest = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let trial = |p: i64, rest: &mut BigInt, primes: &mut Vec<(BigInt, u32)>| {
        let pb = BigInt::from(p);
        let mut e = 0u32;
        while (&*rest % &pb).is_zero() {
            *rest /= &pb;
            e += 1;
        }
        if e > 0 {
            primes.push((pb, e));
        }
    };
    trial(2, &mut rest, &mut primes);
    let mut p: i64 = 3;
    let mut passed_sqrt = false;
    while p <= 1_000_000 {
        if BigInt::from(p) * BigInt::from(p) > rest {
            passed_sqrt = true;
            break;
        }
        trial(p, &mut rest, &mut primes);
        p += 2;
    }
    let mut complete = true;
    if rest > one {
        // No factor up to min(10^6, sqrt(rest)): prime when the trial bound
        // reached sqrt(rest), otherwise possibly composite.
        primes.push((rest.clone(), 1));
        if !passed_sqrt {
            complete = false;
        }
    }
    let count: u64 = primes.iter().map(|(_, e)| u64::from(*e) + 1).product();
    if count > 200_000 {
        return (vec![one], false);
    }
    let mut divs = vec![one];
    for (prime, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut power = BigInt::one();
            for _ in 0..=e {
                next.push(d * &power);
                power *= &prime;
            }
        }
        next.sort();
        next.dedup();
        divs = next;
    }
    (divs, complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::{integer, rational};

    fn p(s: &str) -> Poly {
        parse_polynomial(s, None).unwrap()
    }

    fn pxy(s: &str) -> Poly {
        parse_polynomial(s, Some(&["x", "y"])).unwrap()
    }

    #[test]
    fn resultant_reference_values() {
        let r = resultant(&pxy("y^2 - x"), &pxy("y - x"), "y").unwrap();
        assert_eq!(r, p("x^2 - x"));

        let r = resultant(&pxy("x^2 + y^2 - 1"), &pxy("x - y"), "y").unwrap();
        assert_eq!(r, p("2*x^2 - 1"));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor() {
        let f = pxy("(y - x)*(y + x)");
        let g = pxy("(y - x)*(y + 1)");
        assert!(resultant(&f, &g, "y").unwrap().is_zero());

        let h = pxy("(y + x + 1)*(y + 2)");
        assert!(!resultant(&f, &h, "y").unwrap().is_zero());
    }

    #[test]
    fn resultant_swap_sign() {
        let f = pxy("y^3 + x*y + 1");
        let g = pxy("y^2 - x");
        let r1 = resultant(&f, &g, "y").unwrap();
        let r2 = resultant(&g, &f, "y").unwrap();
        // deg_y f * deg_y g = 6, even: equal.
        assert_eq!(r1, r2);

        let f = pxy("y^3 + x");
        let g = pxy("y - x");
        let r1 = resultant(&f, &g, "y").unwrap();
        let r2 = resultant(&g, &f, "y").unwrap();
        // 3 * 1 odd: opposite signs.
        assert_eq!(r1, r2.neg());
    }

    #[test]
    fn resultant_degree_guard() {
        let err = resultant(&pxy("x^2"), &pxy("y - x"), "y").unwrap_err();
        assert_eq!(err, Error::DegreeTooLow { variable: "y".to_string() });
        assert_eq!(
            resultant(&Poly::zero(&["x", "y"]), &pxy("y"), "y").unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = vec![
            vec![p("x"), p("y"), p("1")],
            vec![p("1"), p("x*y"), p("0")],
            vec![p("y"), p("2"), p("x")],
        ];
        let det = determinant(&m).unwrap();
        // Cofactor expansion along the first row.
        let expected = p("x")
            .mul(&p("x*y").mul(&p("x")).sub(&p("0").mul(&p("2"))))
            .sub(&p("y").mul(&p("1").mul(&p("x")).sub(&p("0").mul(&p("y")))))
            .add(&p("1").mul(&p("1").mul(&p("2")).sub(&p("x*y").mul(&p("y")))));
        assert_eq!(det, expected);
    }

    #[test]
    fn determinant_handles_zero_pivots() {
        let m = vec![vec![p("0"), p("1")], vec![p("1"), p("0")]];
        assert_eq!(determinant(&m).unwrap(), p("-1"));
        let rank_deficient = vec![vec![p("x"), p("y")], vec![p("2*x"), p("2*y")]];
        assert!(determinant(&rank_deficient).unwrap().is_zero());
    }

    #[test]
    fn gcd_univariate_and_multivariate() {
        assert_eq!(gcd(&p("(x-1)*(x-2)"), &p("(x-1)*(x-3)")), p("x - 1"));
        assert_eq!(gcd(&pxy("x^2 - y^2"), &pxy("x - y")), pxy("x - y"));
        assert_eq!(gcd(&p("x^2"), &parse_polynomial("y^2", None).unwrap()), p("1"));
        assert_eq!(gcd(&p("0"), &p("2*x + 2")), p("x + 1"));
        assert!(gcd(&Poly::zero(&[]), &Poly::zero(&[])).is_zero());
        // Content interacts with the main variable.
        let a = pxy("(x + y)*(x - y)*y");
        let b = pxy("(x + y)*y^2");
        assert_eq!(gcd(&a, &b), pxy("x*y + y^2"));
    }

    #[test]
    fn gcd_divides_both_inputs() {
        let f = pxy("(x^2 + y + 1)^2*(x - y)");
        let g = pxy("(x^2 + y + 1)*(x + y)^2");
        let d = gcd(&f, &g);
        assert_eq!(d, pxy("x^2 + y + 1"));
        assert!(f.exact_div(&d).is_some());
        assert!(g.exact_div(&d).is_some());
    }

    #[test]
    fn squarefree_part_reference() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = p("x^3 - 3*x + 2");
        assert_eq!(squarefree_part(&f).unwrap(), p("x^2 + x - 2"));
        assert_eq!(squarefree_part(&p("7")).unwrap(), Poly::one(&[]));
        assert_eq!(squarefree_part(&Poly::zero(&["x"])), Err(Error::ZeroPolynomial));
        assert_eq!(squarefree_part(&pxy("x*y")), Err(Error::NotUnivariate));
    }

    #[test]
    fn squarefree_decomposition_reference() {
        let f = p("x^3 - 3*x + 2");
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.content, integer(1));
        assert_eq!(d.factors, vec![(p("x + 2"), 1), (p("x - 1"), 2)]);
        assert_eq!(d.reconstruct(), f);

        // Content and sign tracking: -18(x-1)^2.
        let g = p("1").sub(&p("x")).pow(2).scale(&integer(-18));
        let d = squarefree_decompose(&g).unwrap();
        assert_eq!(d.content, integer(-18));
        assert_eq!(d.factors, vec![(p("x - 1"), 2)]);
        assert_eq!(d.reconstruct(), g);

        let c = squarefree_decompose(&p("5/3")).unwrap();
        assert_eq!(c.content, rational(5, 3));
        assert!(c.factors.is_empty());
    }

    #[test]
    fn root_multiplicity_reference() {
        let f = p("x^3 - 3*x + 2");
        assert_eq!(root_multiplicity(&f, &integer(1)).unwrap(), 2);
        assert_eq!(root_multiplicity(&f, &integer(-2)).unwrap(), 1);
        assert_eq!(root_multiplicity(&f, &integer(0)).unwrap(), 0);
        assert_eq!(root_multiplicity(&p("4"), &integer(1)).unwrap(), 0);
    }

    #[test]
    fn distinct_root_counts() {
        assert_eq!(count_distinct_roots(&p("x^3 - 3*x + 2")).unwrap(), 2);
        assert_eq!(count_distinct_roots(&p("(x^2 + 1)*(x - 3)^2")).unwrap(), 3);
        assert_eq!(count_distinct_roots(&p("9")).unwrap(), 0);
    }

    #[test]
    fn rational_root_search() {
        let f = p("(2*x - 1)*(x + 3)*(x^2 + 1)");
        let (roots, complete) = rational_roots(&f).unwrap();
        assert!(complete);
        assert_eq!(roots, vec![integer(-3), rational(1, 2)]);

        let g = p("x^2 - 2");
        let (roots, complete) = rational_roots(&g).unwrap();
        assert!(complete);
        assert!(roots.is_empty());

        let h = p("x^3");
        let (roots, _) = rational_roots(&h).unwrap();
        assert_eq!(roots, vec![integer(0)]);
    }

    #[test]
    fn is_squarefree_multivariate() {
        assert!(is_squarefree(&pxy("x^2 + y^2 - 1")).unwrap());
        assert!(!is_squarefree(&pxy("(x + y)^2")).unwrap());
        assert!(is_squarefree(&p("3")).unwrap());
    }

    #[test]
    fn content_flavors() {
        let f = pxy("x*y^2 + x^2*y^2 + x*y");
        // As a univariate polynomial in y, the coefficients are x + x^2 and
        // x; their gcd is x (free of y).
        assert_eq!(content_in(&f, "y"), pxy("x"));
        // The largest divisor involving only y is y.
        assert_eq!(content_in_only(&f, "y"), pxy("y"));
        // And symmetrically for x.
        assert_eq!(content_in(&f, "x"), pxy("y"));
        assert_eq!(content_in_only(&f, "x"), pxy("x"));
    }
}
