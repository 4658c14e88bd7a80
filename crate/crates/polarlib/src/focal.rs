//! Focal-locus (ramification) degree engines and exact evolute computation.
//!
//! The closed-form operations compute the degree of the ramification locus
//! of the endpoint map — reported as the focal-locus degree where that map
//! is birational onto its image — for plane curves (with the Salmon
//! cross-check), smooth curves, smooth surfaces, and hypersurfaces given by
//! their polar ranks. Everything is exact integer arithmetic with hard
//! overflow errors.
//!
//! [`evolute_eliminant`] computes the defining polynomial of the evolute
//! (the envelope of normal lines, i.e. the focal locus) of a low-degree
//! plane curve by an exact resultant tower, removing extraneous factors
//! with a center-of-curvature sampling filter.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elim;
use crate::error::Error;
use crate::poly::{integer, rational, Poly, Rational};
use crate::rankcalc::{plucker_ranks, PluckerData, RankVector};

fn add(a: i64, b: i64) -> Result<i64, Error> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64, Error> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Degree of the focal locus of a plane curve with invariants `mu0`
/// (degree), `mu1` (class), `kappa` (total cusp count), `iota` (total
/// inflection count), computed as `3*mu1 + kappa`.
///
/// The same degree also equals `3*mu0 + iota`; the two expressions are
/// evaluated independently and must agree, which gates inconsistent
/// invariant sets.
pub fn focal_plane_curve(mu0: i64, mu1: i64, kappa: i64, iota: i64) -> Result<i64, Error> {
    if mu0 < 1 || mu1 < 0 || kappa < 0 || iota < 0 {
        return Err(Error::InvalidInput(
            "plane-curve invariants must be non-negative (and the degree positive)"
                .to_string(),
        ));
    }
    let from_class = add(mul(3, mu1)?, kappa)?;
    let from_degree = add(mul(3, mu0)?, iota)?;
    if from_class != from_degree {
        return Err(Error::InconsistentInvariants(format!(
            "3*mu1 + kappa = {from_class} but 3*mu0 + iota = {from_degree}"
        )));
    }
    Ok(from_class)
}

/// Salmon's focal-degree formula `3d(d-1) - 6*delta - 8*kappa` for a curve
/// of degree `d` with `delta` nodes and `kappa` ordinary cusps.
///
/// Cross-checked against [`focal_plane_curve`] on the derived class and
/// inflection count; a mismatch would be a bug in one of the two pipelines
/// and surfaces as [`Error::Internal`].
pub fn focal_salmon(p: &PluckerData) -> Result<i64, Error> {
    let d = p.degree();
    let salmon = add(
        mul(3, mul(d, d - 1)?)?,
        -add(mul(6, p.nodes())?, mul(8, p.cusps())?)?,
    )?;
    let inv = plucker_ranks(p);
    let cross = focal_plane_curve(d, inv.class_degree, p.cusps(), inv.inflections)?;
    if cross != salmon {
        return Err(Error::Internal(format!(
            "Salmon formula gave {salmon} but the rank identity gave {cross}"
        )));
    }
    Ok(salmon)
}

/// Degree of the focal locus of a smooth space curve of degree `d` and
/// genus `g`: `6(d + g - 1)`.
pub fn focal_smooth_curve(d: i64, g: i64) -> Result<i64, Error> {
    if d < 1 || g < 0 {
        return Err(Error::InvalidInput(
            "a smooth curve needs degree >= 1 and genus >= 0".to_string(),
        ));
    }
    mul(6, add(d, g - 1)?)
}

/// Chern numbers of a smooth surface needed by the focal-degree formula:
/// the degree `d` and the intersection degrees of `c1(Omega^1)*h`,
/// `c1(Omega^1)^2`, and `c2(Omega^1)` against the hyperplane class `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothSurfaceChernData {
    pub d: i64,
    pub c1h: i64,
    pub c1sq: i64,
    pub c2: i64,
}

impl SmoothSurfaceChernData {
    pub fn new(d: i64, c1h: i64, c1sq: i64, c2: i64) -> Result<SmoothSurfaceChernData, Error> {
        if d < 1 {
            return Err(Error::InvalidInput("surface degree must be positive".to_string()));
        }
        Ok(SmoothSurfaceChernData { d, c1h, c1sq, c2 })
    }

    /// Chern data of a smooth surface of degree `d` in projective 3-space,
    /// where adjunction forces `c1h = d(d-4)`, `c1sq = d(d-4)^2`, and
    /// `c2 = d(d^2 - 4d + 6)`.
    pub fn surface_in_p3(d: i64) -> Result<SmoothSurfaceChernData, Error> {
        if d < 1 {
            return Err(Error::InvalidInput("surface degree must be positive".to_string()));
        }
        let c1h = mul(d, d - 4)?;
        let c1sq = mul(c1h, d - 4)?;
        let c2 = mul(d, add(mul(d, d - 4)?, 6)?)?;
        Ok(SmoothSurfaceChernData { d, c1h, c1sq, c2 })
    }
}

/// Degree of the focal locus of a smooth surface:
/// `2(15d + 9*c1h + c1sq + c2)`.
pub fn focal_smooth_surface(c: &SmoothSurfaceChernData) -> Result<i64, Error> {
    let inner = add(add(mul(15, c.d)?, mul(9, c.c1h)?)?, add(c.c1sq, c.c2)?)?;
    mul(2, inner)
}

/// Degree of the focal locus of a general hypersurface from its polar
/// ranks: `(n-1)*mu_{n-1} + 2(mu_0 - 1) * sum_{i=0}^{n-2} mu_i`.
///
/// The sum form is used directly; it stays valid where closed forms in the
/// degree alone degenerate (e.g. quadrics). Requires `dim = ambient - 1`.
pub fn focal_hypersurface_ranks(r: &RankVector) -> Result<i64, Error> {
    let n = i64::from(r.ambient());
    if r.dim() + 1 != r.ambient() as usize {
        return Err(Error::InvalidInput(
            "the hypersurface focal formula needs dim m = n - 1".to_string(),
        ));
    }
    let ranks = r.ranks();
    let last = ranks[ranks.len() - 1];
    let mut partial: i64 = 0;
    for &mu in &ranks[..ranks.len() - 1] {
        partial = add(partial, mu)?;
    }
    add(mul(n - 1, last)?, mul(2, mul(ranks[0] - 1, partial)?)?)
}

// ---------------------------------------------------------------------------
// Exact evolute computation for plane curves.

/// Configuration for [`evolute_eliminant`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvoluteConfig {
    /// Seed for the sampling shuffle; equal seeds reproduce results
    /// bit-for-bit (the eliminant itself is seed-independent).
    pub seed: u64,
    /// Maximum accepted curve degree (the resultant tower grows quickly).
    pub degree_cap: u32,
    /// How many exact curve samples the center filter uses (at least 3).
    pub sample_points: usize,
}

impl Default for EvoluteConfig {
    fn default() -> Self {
        EvoluteConfig { seed: 0, degree_cap: 3, sample_points: 7 }
    }
}

impl EvoluteConfig {
    pub fn with_seed(seed: u64) -> EvoluteConfig {
        EvoluteConfig { seed, ..EvoluteConfig::default() }
    }
}

/// A computed evolute: its defining polynomial in the coordinates `X`, `Y`
/// of the moving point, the factors the sampling filter rejected, and a
/// flag telling whether the curve is in general position with respect to
/// the line at infinity (transverse and avoiding the isotropic points), so
/// that the generic-degree formulas apply.
#[derive(Debug, Clone, PartialEq)]
pub struct EvoluteResult {
    /// Squarefree defining polynomial of the evolute, integer-primitive
    /// with positive leading coefficient.
    pub eliminant: Poly,
    pub degree: u32,
    pub extraneous_factors_removed: Vec<Poly>,
    pub genericity: bool,
}

/// Outcome of an evolute computation: a genuine curve, or a single focal
/// point when every normal line passes through it (circles).
#[derive(Debug, Clone, PartialEq)]
pub enum EvoluteOutcome {
    Degenerate { center: (Rational, Rational) },
    Curve(EvoluteResult),
}

fn fresh_var(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|v| v == base) {
        return base.to_string();
    }
    for i in 0.. {
        let candidate = format!("{base}{i}");
        if !taken.iter().any(|v| v == &candidate) {
            return candidate;
        }
    }
    unreachable!()
}

/// Scales to integer coefficients with content 1 and positive leading
/// coefficient in the monomial order.
fn normalize_primitive(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = num_bigint::BigInt::from(1);
    let mut numer_gcd = num_bigint::BigInt::from(0);
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
        numer_gcd = numer_gcd.gcd(c.numer());
    }
    let mut q = p.scale(&Rational::new(denom_lcm, numer_gcd));
    if q.terms().last().map(|(_, c)| c < &integer(0)).unwrap_or(false) {
        q = q.scale(&integer(-1));
    }
    q
}

/// Exact centers of curvature at rational curve points found by
/// intersecting with small-height vertical lines in a seeded random order.
fn sample_centers(
    f: &Poly,
    x: &str,
    y: &str,
    config: &EvoluteConfig,
) -> Result<Vec<(Rational, Rational)>, Error> {
    let fx = f.differentiate(x)?;
    let fy = f.differentiate(y)?;
    let fxx = fx.differentiate(x)?;
    let fxy = fx.differentiate(y)?;
    let fyy = fy.differentiate(y)?;

    let mut grid: Vec<Rational> = {
        let mut set: BTreeSet<Rational> = BTreeSet::new();
        for q in 1..=12i64 {
            for p in -30..=30i64 {
                set.insert(rational(p, q));
            }
        }
        set.into_iter().collect()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for i in (1..grid.len()).rev() {
        let j = rng.random_range(0..=i);
        grid.swap(i, j);
    }

    let mut centers: Vec<(Rational, Rational)> = Vec::new();
    'lines: for c in &grid {
        let slice = f.substitute(x, &Poly::constant(&[], c.clone()))?;
        if slice.is_zero() || slice.is_constant() {
            // A vanishing slice means the whole vertical line lies on the
            // curve; a constant nonzero slice has no curve points.
            continue;
        }
        let (roots, _) = elim::rational_roots(&slice)?;
        for r in roots {
            let bind = [(x, c.clone()), (y, r.clone())];
            let gx = fx.evaluate_at(&bind)?;
            let gy = fy.evaluate_at(&bind)?;
            if gx == integer(0) && gy == integer(0) {
                continue; // singular point
            }
            let k = &gy * &gy * fxx.evaluate_at(&bind)?
                - integer(2) * &gx * &gy * fxy.evaluate_at(&bind)?
                + &gx * &gx * fyy.evaluate_at(&bind)?;
            if k == integer(0) {
                continue; // inflection: the center of curvature is at infinity
            }
            let s = (&gx * &gx + &gy * &gy) / &k;
            centers.push((c - &(&s * &gx), &r - &(&s * &gy)));
            if centers.len() >= config.sample_points {
                break 'lines;
            }
        }
    }
    if centers.len() < 3 {
        return Err(Error::InsufficientSamplePoints { found: centers.len(), needed: 3 });
    }
    Ok(centers)
}

/// Splits each factor against `atom` by gcd, keeping the pieces.
fn split_factors(factors: Vec<Poly>, atom: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    for fac in factors {
        let g = elim::gcd(&fac, atom);
        if g.is_constant() || g.total_degree() == fac.total_degree() {
            out.push(fac);
            continue;
        }
        let rest = fac.exact_div(&g).expect("gcd divides");
        out.push(g);
        if !rest.is_constant() {
            out.push(rest);
        }
    }
    out
}

/// Computes the defining polynomial of the evolute (the focal locus) of a
/// squarefree plane curve, exactly.
///
/// The moving point `(X, Y)` lies on the normal line at a curve point when
/// `G := (X - x) F_y - (Y - y) F_x` vanishes, and on the envelope of those
/// lines when additionally the derivative of `G` along the curve,
/// `H := G_x F_y - G_y F_x`, vanishes. Both variables `x, y` are
/// eliminated from `{F, G, H}` by resultants (in `y` first, then in `x`);
/// the true eliminant is the common factor of the pairwise eliminants, and
/// a sampling filter keeps exactly the factors vanishing at exact centers
/// of curvature computed at rational curve points. When all sampled
/// centers coincide (a circle) the evolute is that single focal point and
/// a degenerate outcome is returned instead of a curve.
///
/// The genericity flag is true when the curve's top-degree form is
/// squarefree (transversality to the line at infinity) and not divisible
/// by `x^2 + y^2` (avoidance of the isotropic points); exactly then do the
/// generic focal-degree formulas apply to the evolute's degree.
pub fn evolute_eliminant(f: &Poly, config: &EvoluteConfig) -> Result<EvoluteOutcome, Error> {
    if config.sample_points < 3 {
        return Err(Error::InvalidInput(
            "the sampling filter needs at least three sample points".to_string(),
        ));
    }
    if f.is_constant() {
        return Err(Error::InvalidInput("curve must be nonconstant".to_string()));
    }
    if f.vars().len() != 2 {
        return Err(Error::InvalidInput(
            "plane curve must be a polynomial in exactly two variables".to_string(),
        ));
    }
    let x = f.vars()[0].clone();
    let y = f.vars()[1].clone();
    if x == "X" || x == "Y" || y == "X" || y == "Y" {
        return Err(Error::InvalidInput(
            "curve variables collide with the evolute coordinates X, Y".to_string(),
        ));
    }
    let d = f.total_degree().unwrap_or(0);
    if d > config.degree_cap {
        return Err(Error::DegreeCapExceeded { degree: d, cap: config.degree_cap });
    }
    if d < 2 {
        return Err(Error::InvalidInput(
            "a line has no evolute curve (all its normals are parallel)".to_string(),
        ));
    }
    if !elim::is_squarefree(f)? {
        return Err(Error::NotSquarefree);
    }

    let centers = sample_centers(f, &x, &y, config)?;
    if centers.iter().all(|c| *c == centers[0]) {
        return Ok(EvoluteOutcome::Degenerate { center: centers[0].clone() });
    }

    // The critical system {F, G, H} in x, y, X, Y.
    let fx = f.differentiate(&x)?;
    let fy = f.differentiate(&y)?;
    let xp = Poly::variable(&[x.as_str(), y.as_str()], &x).unwrap();
    let yp = Poly::variable(&[x.as_str(), y.as_str()], &y).unwrap();
    let big_x = Poly::variable(&["X", "Y"], "X").unwrap();
    let big_y = Poly::variable(&["X", "Y"], "Y").unwrap();
    let g = big_x.sub(&xp).mul(&fy).sub(&big_y.sub(&yp).mul(&fx));
    let h = g.differentiate(&x)?.mul(&fy).sub(&g.differentiate(&y)?.mul(&fx));

    // Eliminate y from each pair, stripping factors that depend only on x
    // (vertical-direction junk) or not on x at all (candidate extraneous
    // factors for the filter).
    let mut atoms: Vec<Poly> = Vec::new();
    let mut reduced: Vec<Poly> = Vec::new();
    let mut direct: Vec<Poly> = Vec::new();
    for (p, q) in [(f, &g), (f, &h), (&g, &h)] {
        let a = if q.degree_in(&y) == 0 {
            (*q).clone()
        } else if p.degree_in(&y) == 0 {
            (*p).clone()
        } else {
            elim::resultant(p, q, &y)?
        };
        if a.is_zero() {
            continue;
        }
        let cont = elim::content_in(&a, &x);
        if !cont.is_constant() {
            atoms.push(elim::squarefree_part_multivariate(&cont)?);
        }
        let prim = elim::primitive_in(&a, &x);
        let x_only = elim::content_in_only(&prim, &x);
        let core = prim.exact_div(&x_only).expect("content divides");
        if core.degree_in(&x) == 0 {
            if !core.is_constant() {
                direct.push(core);
            }
            continue;
        }
        reduced.push(core);
    }

    // Eliminate x from each pair of partial eliminants.
    let mut elims: Vec<Poly> = direct;
    for i in 0..reduced.len() {
        for j in (i + 1)..reduced.len() {
            let e = elim::resultant(&reduced[i], &reduced[j], &x)?;
            if !e.is_zero() && !e.is_constant() {
                elims.push(e);
            }
        }
    }
    if elims.is_empty() {
        return Err(Error::DegenerateSystem(
            "the evolute elimination tower collapsed".to_string(),
        ));
    }
    let cand = elim::gcd_many(elims.iter());
    if cand.is_constant() {
        return Err(Error::GenericityFailure(
            "the pairwise eliminants share no common factor".to_string(),
        ));
    }
    let cand = elim::squarefree_part_multivariate(&cand)?;

    // Candidate factor splitting: known extraneous sources are the stripped
    // contents and the isotropic conic.
    let evolute_vars = ["X".to_string(), "Y".to_string()];
    let iso = {
        let bx = Poly::variable(&["X", "Y"], "X").unwrap();
        let by = Poly::variable(&["X", "Y"], "Y").unwrap();
        bx.mul(&bx).add(&by.mul(&by))
    };
    atoms.push(iso);
    let mut factors = vec![cand];
    for atom in &atoms {
        factors = split_factors(factors, atom);
    }

    // Keep exactly the factors vanishing at every sampled center.
    let mut kept: Vec<Poly> = Vec::new();
    let mut removed: Vec<Poly> = Vec::new();
    for fac in factors {
        if fac.is_constant() {
            continue;
        }
        let mut vanishes = true;
        for (cx, cy) in &centers {
            let value = fac.evaluate_at(&[("X", cx.clone()), ("Y", cy.clone())])?;
            if value != integer(0) {
                vanishes = false;
                break;
            }
        }
        let fac = normalize_primitive(&fac.aligned(&evolute_vars)?);
        if vanishes {
            kept.push(fac);
        } else {
            removed.push(fac);
        }
    }
    if kept.is_empty() {
        return Err(Error::Internal(
            "every eliminant factor was rejected by the sampled focal centers".to_string(),
        ));
    }
    let mut eliminant = kept[0].clone();
    for fac in &kept[1..] {
        eliminant = eliminant.mul(fac);
    }
    let eliminant = normalize_primitive(&eliminant.aligned(&evolute_vars)?);
    let degree = eliminant.total_degree().unwrap_or(0);

    // Genericity: transverse to the line at infinity and off the isotropic
    // points. The top form is the coefficient of the 0th power of the
    // homogenizing variable.
    let hv = fresh_var("h", f.vars());
    let top = f.homogenize(&hv)?.coeffs_in(&hv)?[0].clone();
    let iso_affine = xp.mul(&xp).add(&yp.mul(&yp));
    let genericity =
        elim::is_squarefree(&top)? && top.exact_div(&iso_affine).is_none();

    Ok(EvoluteOutcome::Curve(EvoluteResult {
        eliminant,
        degree,
        extraneous_factors_removed: removed,
        genericity,
    }))
}
