//! Exact critical-point counting for plane curves via resultants.
//!
//! This module is the brute-force oracle that cross-validates the formula
//! engines: it counts solutions of bivariate critical systems by eliminating
//! one variable with a resultant after a random shear, entirely in exact
//! rational arithmetic. Contributions of known singular points are divided
//! out of the eliminant by their exact root multiplicities, and every count
//! is repeated with independent random data to certify that the answer is
//! generic.
//!
//! The ED-degree and polar-class counts are degrees of *projective*
//! intersection schemes: the critical system is homogenized and moved to a
//! random affine chart before elimination, so critical points on the
//! hyperplane at infinity (e.g. the contribution of a curve tangent to that
//! hyperplane) are counted too. That makes the counts directly comparable
//! with the rank-based formulas, which are projective invariants. A trial's
//! count is `deg R - sum of subtracted multiplicities`; a squarefree
//! residual eliminant certifies that every unaccounted critical point is
//! simple. Reports are marked unstable when trials disagree or when the
//! curve has affine singularities nobody supplied Milnor data for — never
//! because of genuinely multiple critical points (such as a tangency with
//! the hyperplane at infinity), which belong to the degree being measured.
//! [`count_common_roots`], by contrast, counts distinct affine solutions.
//!
//! All randomness is drawn from a ChaCha stream seeded explicitly, so equal
//! seeds reproduce reports bit-for-bit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::critsys::plane_curve_ed_system;
use crate::elim;
use crate::error::{Error, Warning};
use crate::poly::{det_rational, integer, rational, LinearChange, Poly, Rational};

/// A singular point of a plane curve, with optional caller-supplied Milnor
/// data (`milnor` = Milnor number, `sectional_milnor` = sectional Milnor
/// number of a generic hyperplane slice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub location: (Rational, Rational),
    pub milnor: Option<i64>,
    pub sectional_milnor: Option<i64>,
}

impl SingularPoint {
    pub fn new(x: Rational, y: Rational) -> SingularPoint {
        SingularPoint { location: (x, y), milnor: None, sectional_milnor: None }
    }

    pub fn with_milnor_data(
        x: Rational,
        y: Rational,
        milnor: i64,
        sectional_milnor: i64,
    ) -> Result<SingularPoint, Error> {
        if milnor < 1 || sectional_milnor < 1 {
            return Err(Error::InvalidInput(
                "Milnor numbers of a singular point must be positive".to_string(),
            ));
        }
        Ok(SingularPoint {
            location: (x, y),
            milnor: Some(milnor),
            sectional_milnor: Some(sectional_milnor),
        })
    }
}

/// Multiplicity divided out of one trial's eliminant at one singular point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtractedMultiplicity {
    pub location: (Rational, Rational),
    pub multiplicity: u32,
}

/// One counting trial: its own derived seed, the random data it used, and
/// the exact degree bookkeeping of its eliminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTrial {
    pub seed: u64,
    /// The random data point (ED counts) or pole coordinates (polar counts).
    pub data: Vec<Rational>,
    /// Shear amount `t` of the substitution `x -> x + t y` (in chart
    /// coordinates for the projective counts).
    pub shear: i64,
    pub raw_resultant_degree: u32,
    pub subtracted: Vec<SubtractedMultiplicity>,
    pub residual_squarefree: bool,
    pub count: u64,
}

impl CountTrial {
    /// The exact degree ledger: raw eliminant degree = count + subtracted
    /// multiplicities.
    pub fn ledger_balances(&self) -> bool {
        let subtracted: u64 = self.subtracted.iter().map(|s| u64::from(s.multiplicity)).sum();
        u64::from(self.raw_resultant_degree) == self.count + subtracted
    }
}

/// Result of a seeded counting run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    /// The agreed count across trials.
    pub count: u64,
    pub trials: Vec<CountTrial>,
    /// True when all trials agree *and* every affine singularity found by
    /// the internal scan was supplied (so its multiplicity was divided
    /// out). A non-squarefree residual alone does not destabilize the
    /// count: genuinely multiple critical points (e.g. at a tangency with
    /// the hyperplane at infinity) are part of the degree being measured
    /// and are flagged per-trial and as a warning instead.
    pub stable: bool,
    /// The generic-position value predicted by the closed formulas, when
    /// one is available for the input.
    pub generic_value: Option<i64>,
    /// `Some(true)` when the observed count deviates from `generic_value`.
    pub generic_deviation: Option<bool>,
    pub warnings: Vec<Warning>,
}

/// Configuration shared by the counting entry points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountConfig {
    /// Master seed; every derived trial seed is a deterministic function of
    /// it, so equal seeds reproduce reports bit-for-bit.
    pub seed: u64,
    /// Number of independent trials (at least 2).
    pub trials: usize,
    /// How many times a failed batch (disagreeing trials, degenerate data)
    /// is retried with shifted seeds before giving up.
    pub max_retries: usize,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig { seed: 0, trials: 2, max_retries: 5 }
    }
}

impl CountConfig {
    pub fn with_seed(seed: u64) -> CountConfig {
        CountConfig { seed, ..CountConfig::default() }
    }
}

/// Result of scanning a curve for singular points.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularScan {
    /// Singular points with exact rational coordinates, sorted.
    pub points: Vec<SingularPoint>,
    /// Candidate eliminant factors of degree > 1 whose roots are irrational
    /// and could not be resolved into points; they may or may not carry
    /// actual singular points.
    pub unresolved_factors: Vec<Poly>,
    pub warnings: Vec<Warning>,
}

// ---------------------------------------------------------------------------
// Random drawing helpers.

fn draw_coordinate(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-1_000_000i64..=1_000_000);
    let den = rng.random_range(1i64..=1_000);
    rational(num, den)
}

fn derived_seed(master: u64, batch: usize, index: usize, trials: usize) -> u64 {
    let step = (batch * trials + index + 1) as u64;
    master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(step))
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

fn validate_plane_curve(f: &Poly) -> Result<(String, String), Error> {
    if f.is_constant() {
        return Err(Error::InvalidInput("plane curve must be nonconstant".to_string()));
    }
    if f.vars().len() != 2 {
        return Err(Error::InvalidInput(
            "plane curve must be a polynomial in exactly two variables".to_string(),
        ));
    }
    if !elim::is_squarefree(f)? {
        return Err(Error::NotSquarefree);
    }
    Ok((f.vars()[0].clone(), f.vars()[1].clone()))
}

// ---------------------------------------------------------------------------
// The shared shear-and-count core.

struct TrialCore {
    shear: i64,
    raw_degree: u32,
    subtracted: Vec<SubtractedMultiplicity>,
    residual_squarefree: bool,
    /// The eliminant with the singular-point roots divided out.
    residual: Poly,
    count: u64,
}

fn zero_core(report_locations: &[(Rational, Rational)]) -> TrialCore {
    TrialCore {
        shear: 0,
        raw_degree: 0,
        subtracted: report_locations
            .iter()
            .map(|p| SubtractedMultiplicity { location: p.clone(), multiplicity: 0 })
            .collect(),
        residual_squarefree: true,
        residual: Poly::one(&[]),
        count: 0,
    }
}

/// Counts the common zeros of `(f, g)` visible in the current affine
/// coordinates by eliminating the second variable after a shear
/// `x -> x + t y`, dividing out the root multiplicities at `locations`
/// (reported against `report_locations`, the same points in the caller's
/// original coordinates).
///
/// With the shear chosen so both leading coefficients in `y` are nonzero
/// constants, the resultant factors as the product of `(x - (a - t b))^mu`
/// over the affine common zeros `(a, b)` with intersection multiplicity
/// `mu`, so its degree is the total intersection count in this chart and
/// the residual degree counts the non-subtracted solutions with
/// multiplicity.
fn shear_count(
    f: &Poly,
    g: &Poly,
    locations: &[(Rational, Rational)],
    report_locations: &[(Rational, Rational)],
    rng: &mut ChaCha8Rng,
) -> Result<TrialCore, Error> {
    let x = f.vars()[0].clone();
    let y = f.vars()[1].clone();
    // A nonzero-constant g has no zeros at all.
    if g.is_constant() {
        return Ok(zero_core(report_locations));
    }
    let var_strs: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
    let mut attempt = 0;
    let (t, sheared_f, sheared_g) = loop {
        attempt += 1;
        if attempt > 24 {
            return Err(Error::GenericityFailure(
                "no shear made both leading coefficients constant".to_string(),
            ));
        }
        let t = rng.random_range(2i64..=9_999);
        // Distinct singular points must stay distinct after shearing.
        let mut images: Vec<Rational> = locations
            .iter()
            .map(|(a, b)| a - &(integer(t) * b))
            .collect();
        images.sort();
        images.dedup();
        if images.len() != locations.len() {
            continue;
        }
        let change = LinearChange::shear(&var_strs, &x, &y, integer(t))?;
        let sf = change.apply(f)?;
        let sg = change.apply(g)?;
        if sf.degree_in(&y) == 0 || sg.degree_in(&y) == 0 {
            continue;
        }
        if !sf.leading_coeff_in(&y)?.is_constant() || !sg.leading_coeff_in(&y)?.is_constant()
        {
            continue;
        }
        break (t, sf, sg);
    };
    let resultant = elim::resultant(&sheared_f, &sheared_g, &y)?;
    if resultant.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    let raw_degree = resultant.total_degree().unwrap_or(0);
    let mut residual = resultant;
    let mut subtracted = Vec::with_capacity(locations.len());
    let x_poly = Poly::variable(&[x.as_str()], &x).unwrap();
    for ((a, b), report) in locations.iter().zip(report_locations) {
        let image = a - &(integer(t) * b);
        let multiplicity = elim::root_multiplicity(&residual, &image)?;
        if multiplicity > 0 {
            let linear = x_poly.sub(&Poly::constant(&[x.as_str()], image));
            residual = residual
                .exact_div(&linear.pow(multiplicity))
                .expect("multiplicity-fold root divides");
        }
        subtracted.push(SubtractedMultiplicity {
            location: report.clone(),
            multiplicity,
        });
    }
    let residual_squarefree = elim::is_squarefree(&residual)?;
    let count = u64::from(residual.total_degree().unwrap_or(0));
    Ok(TrialCore { shear: t, raw_degree, subtracted, residual_squarefree, residual, count })
}

// ---------------------------------------------------------------------------
// Projective chart machinery.

/// Composes `p` with the invertible linear substitution sending each of the
/// three `vars` to the corresponding row of `m` applied to the (new) same
/// variables: the result is `p(m v)` where `v = (vars[0], vars[1],
/// vars[2])`. Exact; preserves homogeneity and total degree.
fn apply_matrix3(p: &Poly, vars: &[String; 3], m: &[[i64; 3]; 3]) -> Result<Poly, Error> {
    let mut taken: Vec<String> = p.vars().to_vec();
    for v in vars {
        if !taken.contains(v) {
            taken.push(v.clone());
        }
    }
    let mut temps: Vec<String> = Vec::with_capacity(3);
    for i in 0..3 {
        let t = fresh_var(&format!("t{i}"), &taken);
        taken.push(t.clone());
        temps.push(t);
    }
    let temp_strs: Vec<&str> = temps.iter().map(|s| s.as_str()).collect();
    let var_strs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut q = p.clone();
    for i in 0..3 {
        let mut image = Poly::zero(&temp_strs);
        for (j, temp) in temp_strs.iter().enumerate() {
            let v = Poly::variable(&temp_strs, temp).unwrap();
            image = image.add(&v.scale(&integer(m[i][j])));
        }
        q = q.substitute(&vars[i], &image)?;
    }
    for (j, temp) in temps.iter().enumerate() {
        let v = Poly::variable(&var_strs, &vars[j]).unwrap();
        q = q.substitute(temp, &v)?;
    }
    Ok(q)
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Solves `m v = rhs` exactly by Cramer's rule; `m` must be invertible.
fn solve3(m: &[[i64; 3]; 3], rhs: &[Rational; 3]) -> Result<[Rational; 3], Error> {
    let base: Vec<Vec<Rational>> =
        m.iter().map(|row| row.iter().map(|&e| integer(e)).collect()).collect();
    let det = det_rational(&base)?;
    let mut out = [integer(0), integer(0), integer(0)];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut replaced = base.clone();
        for (i, row) in replaced.iter_mut().enumerate() {
            row[col] = rhs[i].clone();
        }
        *slot = det_rational(&replaced)? / &det;
    }
    Ok(out)
}

/// Counts the full projective intersection scheme of the curves cut out by
/// the bivariate polynomials `f` and `g`: both are homogenized at their own
/// total degrees, moved to a random affine chart, and handed to
/// [`shear_count`].
///
/// In a generic chart none of the finitely many intersection points lies on
/// the new hyperplane at infinity, so the eliminant degree equals the full
/// intersection number of the two projective closures — including points of
/// the *original* hyperplane at infinity, which the rank-based formulas
/// count as well. Supplied singular points are mapped through the chart and
/// divided out as usual (their reported locations stay in the original
/// coordinates).
fn projective_count(
    f: &Poly,
    g: &Poly,
    singular: &[(Rational, Rational)],
    rng: &mut ChaCha8Rng,
) -> Result<TrialCore, Error> {
    if g.is_constant() {
        return Ok(zero_core(singular));
    }
    let hv = fresh_var("h", f.vars());
    let f_deg = f.total_degree().unwrap_or(0);
    let g_deg = g.total_degree().unwrap_or(0);
    let fh = f.homogenize(&hv)?;
    let gh = g.aligned(f.vars())?.homogenize(&hv)?;
    let vars3 = [f.vars()[0].clone(), f.vars()[1].clone(), hv.clone()];

    let mut attempt = 0;
    loop {
        attempt += 1;
        if attempt > 24 {
            return Err(Error::GenericityFailure(
                "no projective chart was generic for the critical system".to_string(),
            ));
        }
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for entry in row.iter_mut() {
                *entry = rng.random_range(-9i64..=9);
            }
        }
        if det3(&m) == 0 {
            continue;
        }
        // Map the supplied singular points into the new chart; all of them
        // must stay affine there. An invertible map keeps them distinct.
        let mut images: Vec<(Rational, Rational)> = Vec::with_capacity(singular.len());
        let mut all_affine = true;
        for (a, b) in singular {
            let v = solve3(&m, &[a.clone(), b.clone(), integer(1)])?;
            if v[2] == integer(0) {
                all_affine = false;
                break;
            }
            images.push((&v[0] / &v[2], &v[1] / &v[2]));
        }
        if !all_affine {
            continue;
        }
        let fc = apply_matrix3(&fh, &vars3, &m)?.dehomogenize(&hv)?.aligned(f.vars())?;
        let gc = apply_matrix3(&gh, &vars3, &m)?.dehomogenize(&hv)?.aligned(f.vars())?;
        // The chart must not drop degree: the new hyperplane at infinity
        // must not contain a top-form factor of either curve.
        if fc.total_degree().unwrap_or(0) != f_deg || gc.total_degree().unwrap_or(0) != g_deg
        {
            continue;
        }
        let core = shear_count(&fc, &gc, &images, singular, rng)?;
        // Bezout check: two projective curves without a common component
        // meet in exactly deg f * deg g points counted with multiplicity,
        // so a smaller eliminant means some intersection point fell on the
        // chart's own hyperplane at infinity; redraw the chart.
        if u64::from(core.raw_degree) != u64::from(f_deg) * u64::from(g_deg) {
            continue;
        }
        return Ok(core);
    }
}

// ---------------------------------------------------------------------------
// Public operations.

/// Number of distinct common complex solutions of two plane curves in the
/// affine plane.
///
/// Computed as the distinct-root count of `Res_y` after a random shear
/// making all solution x-coordinates distinct, and cross-checked with a
/// second independent shear. Errors when the curves share a component
/// (`PositiveDimensional`) or the two shears disagree (`GenericityFailure`).
pub fn count_common_roots(f: &Poly, g: &Poly, shear_seed: u64) -> Result<u64, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    if f.is_constant() || g.is_constant() {
        return Ok(0);
    }
    let (f, g) = Poly::align_pair(f, g);
    if f.vars().len() != 2 {
        return Err(Error::InvalidInput(
            "common-root counting requires polynomials in exactly two variables"
                .to_string(),
        ));
    }
    if !elim::gcd(&f, &g).is_constant() {
        return Err(Error::PositiveDimensional);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(shear_seed);
    let first = shear_count(&f, &g, &[], &[], &mut rng)?;
    let second = shear_count(&f, &g, &[], &[], &mut rng)?;
    let first_count = u64::from(elim::count_distinct_roots(&first.residual)?);
    let second_count = u64::from(elim::count_distinct_roots(&second.residual)?);
    if first_count != second_count {
        return Err(Error::GenericityFailure(format!(
            "two independent shears counted {first_count} and {second_count} solutions"
        )));
    }
    Ok(first_count)
}

/// Finds all affine singular points of a squarefree plane curve that have
/// rational coordinates, by resultant elimination on `{F, F_x, F_y}` and
/// exact rational root extraction. Milnor data is left unset.
///
/// Candidate eliminant factors whose roots are irrational are returned in
/// `unresolved_factors` with a warning rather than silently dropped.
pub fn singular_points_curve(f: &Poly) -> Result<SingularScan, Error> {
    let (x, y) = validate_plane_curve(f)?;
    let mut warnings: Vec<Warning> = Vec::new();
    let mut unresolved: Vec<Poly> = Vec::new();
    let mut points: Vec<SingularPoint> = Vec::new();

    let fx = f.differentiate(&x)?;
    let fy = f.differentiate(&y)?;
    // A curve using only one direction is a product of parallel lines; being
    // squarefree, the lines are distinct and the curve is smooth.
    if f.degree_in(&y) == 0 || f.degree_in(&x) == 0 {
        return Ok(SingularScan { points, unresolved_factors: unresolved, warnings });
    }

    // Candidate x-coordinates: gcd of the defined, nonvanishing eliminants
    // of the pairs among {F, F_x, F_y}.
    let mut candidates: Vec<Poly> = Vec::new();
    for (p, q) in [(f, &fx), (f, &fy), (&fx, &fy)] {
        if q.is_zero() {
            continue;
        }
        let candidate = if q.degree_in(&y) == 0 {
            q.clone()
        } else if p.degree_in(&y) == 0 {
            p.clone()
        } else {
            elim::resultant(p, q, &y)?
        };
        if !candidate.is_zero() {
            candidates.push(candidate);
        }
    }
    let cand_x = elim::gcd_many(candidates.iter());
    if cand_x.is_constant() {
        return Ok(SingularScan { points, unresolved_factors: unresolved, warnings });
    }

    let (roots_x, complete) = elim::rational_roots(&cand_x)?;
    if !complete {
        warnings.push(Warning::new(
            "incomplete_root_search",
            "rational-root extraction on the singular-candidate eliminant hit its \
             factoring budget; the scan may be incomplete",
        ));
    }
    for a in &roots_x {
        let fa = f.substitute(&x, &Poly::constant(&[], a.clone()))?;
        let fxa = fx.substitute(&x, &Poly::constant(&[], a.clone()))?;
        let fya = fy.substitute(&x, &Poly::constant(&[], a.clone()))?;
        let slices: Vec<&Poly> = [&fa, &fxa, &fya].into_iter().filter(|p| !p.is_zero()).collect();
        let gcd_y = elim::gcd_many(slices.into_iter());
        if gcd_y.is_constant() {
            continue;
        }
        let (roots_y, complete_y) = elim::rational_roots(&gcd_y)?;
        for b in &roots_y {
            points.push(SingularPoint::new(a.clone(), b.clone()));
        }
        // Any nonlinear leftover above a rational x is an unresolved factor.
        let mut leftover = elim::squarefree_part(&gcd_y)?;
        for b in &roots_y {
            let y_poly = Poly::variable(
                &leftover.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                &y,
            )
            .unwrap();
            let linear = y_poly.sub(&Poly::constant(&[], b.clone()));
            leftover = leftover.exact_div(&linear).expect("rational root divides");
        }
        if leftover.total_degree().unwrap_or(0) > 0 {
            warnings.push(Warning::new(
                "irrational_singular_candidates",
                format!(
                    "candidate singular points with irrational y-coordinate above x = {a}"
                ),
            ));
            unresolved.push(leftover);
        }
        if !complete_y {
            warnings.push(Warning::new(
                "incomplete_root_search",
                format!("rational-root extraction above x = {a} hit its factoring budget"),
            ));
        }
    }
    // Irrational candidate x-coordinates.
    let mut leftover_x = elim::squarefree_part(&cand_x)?;
    for a in &roots_x {
        let x_poly = Poly::variable(
            &leftover_x.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &x,
        )
        .unwrap();
        let linear = x_poly.sub(&Poly::constant(&[], a.clone()));
        leftover_x = leftover_x.exact_div(&linear).expect("rational root divides");
    }
    if leftover_x.total_degree().unwrap_or(0) > 0 {
        warnings.push(Warning::new(
            "irrational_singular_candidates",
            format!(
                "candidate eliminant factor of degree {} has no rational roots and was \
                 left unresolved",
                leftover_x.total_degree().unwrap_or(0)
            ),
        ));
        unresolved.push(leftover_x);
    }
    points.sort_by(|p, q| p.location.cmp(&q.location));
    Ok(SingularScan { points, unresolved_factors: unresolved, warnings })
}

fn validate_singular_points(
    f: &Poly,
    x: &str,
    y: &str,
    singular: &[SingularPoint],
) -> Result<(), Error> {
    let fx = f.differentiate(x)?;
    let fy = f.differentiate(y)?;
    for p in singular {
        let bindings = [(x, p.location.0.clone()), (y, p.location.1.clone())];
        let on_all = f.evaluate_at(&bindings)? == integer(0)
            && fx.evaluate_at(&bindings)? == integer(0)
            && fy.evaluate_at(&bindings)? == integer(0);
        if !on_all {
            return Err(Error::InvalidInput(format!(
                "({}, {}) is not a singular point of the curve (F, F_x, F_y must all \
                 vanish exactly)",
                p.location.0, p.location.1
            )));
        }
        if p.milnor.is_some_and(|m| m < 1) || p.sectional_milnor.is_some_and(|m| m < 1) {
            return Err(Error::InvalidInput(
                "Milnor numbers of a singular point must be positive".to_string(),
            ));
        }
    }
    Ok(())
}

/// Generic-position prediction for the ED degree, when computable: `d^2`
/// for a smooth curve, `d^2 - sum (mu + sectional mu)` when every supplied
/// singular point carries full Milnor data.
fn ed_generic_value(d: i64, singular: &[SingularPoint]) -> Option<i64> {
    let mut value = d * d;
    for p in singular {
        match (p.milnor, p.sectional_milnor) {
            (Some(m), Some(s)) => value -= m + s,
            _ => return None,
        }
    }
    Some(value)
}

/// Counts the ED-critical points of a squarefree plane curve with respect
/// to random rational data points — the degree of the projective critical
/// scheme — dividing out the supplied singular points.
///
/// Runs `config.trials` independent trials (two by default); the report is
/// stable only when every trial agrees and the supplied singular points
/// cover everything an internal singular-point scan finds. Disagreement is
/// retried with shifted seeds up to `config.max_retries` times before
/// erroring.
pub fn ed_degree_count(
    f: &Poly,
    singular: &[SingularPoint],
    config: &CountConfig,
) -> Result<CountReport, Error> {
    let (x, y) = validate_plane_curve(f)?;
    if config.trials < 2 {
        return Err(Error::InvalidInput("at least two counting trials are required".to_string()));
    }
    validate_singular_points(f, &x, &y, singular)?;
    let locations: Vec<(Rational, Rational)> =
        singular.iter().map(|p| p.location.clone()).collect();
    let d = i64::from(f.total_degree().unwrap_or(0));

    let mut warnings: Vec<Warning> = Vec::new();
    // Stability requires the supplied singular points to account for every
    // affine singularity the scan can find; local multiplicities are never
    // guessed for the rest.
    let scan = singular_points_curve(f)?;
    let accounted = scan.unresolved_factors.is_empty()
        && scan.points.iter().all(|p| locations.contains(&p.location));

    let mut last_disagreement: Option<(u64, u64)> = None;
    for batch in 0..=config.max_retries {
        let mut trials: Vec<CountTrial> = Vec::with_capacity(config.trials);
        let mut batch_failed = false;
        for index in 0..config.trials {
            let seed = derived_seed(config.seed, batch, index, config.trials);
            match ed_trial(f, &locations, seed, config.max_retries, &mut warnings) {
                Ok(trial) => trials.push(trial),
                Err(Error::GenericityFailure(_)) | Err(Error::PositiveDimensional) => {
                    batch_failed = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if batch_failed {
            continue;
        }
        let count = trials[0].count;
        if trials.iter().all(|t| t.count == count) {
            let stable = accounted;
            if !accounted {
                push_once(
                    &mut warnings,
                    Warning::new(
                        "unaccounted_singular_points",
                        "the curve has affine singular points that were not supplied; \
                         their local multiplicities are included in the count rather \
                         than divided out",
                    ),
                );
            }
            if !trials.iter().all(|t| t.residual_squarefree) {
                push_once(
                    &mut warnings,
                    Warning::new(
                        "unaccounted_multiplicity",
                        "a residual eliminant was not squarefree; the critical scheme \
                         has non-reduced points beyond the supplied singular points \
                         (unsupplied or irrational singularities, or a genuinely \
                         multiple critical point such as a tangency with the \
                         hyperplane at infinity)",
                    ),
                );
            }
            let generic_value = ed_generic_value(d, singular);
            let generic_deviation = generic_value.map(|gv| gv != count as i64);
            if generic_deviation == Some(true) {
                warnings.push(Warning::new(
                    "generic_position_deviation",
                    format!(
                        "count {count} deviates from the generic-position value \
                         {}; the curve is in special position (e.g. tangent to the \
                         isotropic quadric)",
                        generic_value.unwrap()
                    ),
                ));
            }
            return Ok(CountReport {
                count,
                trials,
                stable,
                generic_value,
                generic_deviation,
                warnings,
            });
        }
        let other = trials.iter().map(|t| t.count).find(|&c| c != count).unwrap();
        last_disagreement = Some((count, other));
    }
    Err(Error::UnstableCount(match last_disagreement {
        Some((a, b)) => format!("trials kept disagreeing ({a} vs {b})"),
        None => "no generic data point found within the retry budget".to_string(),
    }))
}

fn ed_trial(
    f: &Poly,
    singular: &[(Rational, Rational)],
    seed: u64,
    max_retries: usize,
    warnings: &mut Vec<Warning>,
) -> Result<CountTrial, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = f.vars()[0].clone();
    let y = f.vars()[1].clone();
    for _ in 0..=max_retries {
        let data = vec![draw_coordinate(&mut rng), draw_coordinate(&mut rng)];
        let on_curve = f.evaluate_at(&[(&x, data[0].clone()), (&y, data[1].clone())])?
            == integer(0);
        if on_curve {
            push_once(
                warnings,
                Warning::new("data_point_resampled", "a random data point landed on the curve"),
            );
            continue;
        }
        let g = match plane_curve_ed_system(f, &data) {
            Ok((_, g)) => g,
            Err(Error::DegenerateSystem(_)) => {
                push_once(
                    warnings,
                    Warning::new(
                        "data_point_resampled",
                        "a random data point degenerated the critical system",
                    ),
                );
                continue;
            }
            Err(e) => return Err(e),
        };
        match projective_count(f, &g, singular, &mut rng) {
            Ok(core) => {
                return Ok(CountTrial {
                    seed,
                    data,
                    shear: core.shear,
                    raw_resultant_degree: core.raw_degree,
                    subtracted: core.subtracted,
                    residual_squarefree: core.residual_squarefree,
                    count: core.count,
                })
            }
            Err(Error::PositiveDimensional) => {
                push_once(
                    warnings,
                    Warning::new(
                        "data_point_resampled",
                        "the critical system shared a component with the curve",
                    ),
                );
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure(
        "no generic data point found within the retry budget".to_string(),
    ))
}

fn push_once(warnings: &mut Vec<Warning>, w: Warning) {
    if !warnings.iter().any(|x| x.code == w.code) {
        warnings.push(w);
    }
}

/// Counts the intersections of a squarefree plane curve with its first
/// polar curve in the projective plane, minus the contributions of its
/// singular points — the degree of the dual curve (the first rank).
///
/// Singular points are detected automatically with
/// [`singular_points_curve`] and their multiplicities divided out. The
/// first trial uses `pole` when supplied; all other poles are random. A
/// degenerate pole (polar vanishing identically or sharing a component) is
/// resampled with a warning.
pub fn polar_class_count(
    f: &Poly,
    pole: Option<&[Rational; 3]>,
    config: &CountConfig,
) -> Result<CountReport, Error> {
    let (x, y) = validate_plane_curve(f)?;
    if config.trials < 2 {
        return Err(Error::InvalidInput("at least two counting trials are required".to_string()));
    }
    let scan = singular_points_curve(f)?;
    let locations: Vec<(Rational, Rational)> =
        scan.points.iter().map(|p| p.location.clone()).collect();
    let d = i64::from(f.total_degree().unwrap_or(0));
    let mut warnings = scan.warnings.clone();

    // Homogenize once; the polar of each pole is a combination of the three
    // partials of the homogenization.
    let hom_var = fresh_var("h", f.vars());
    let fh = f.homogenize(&hom_var)?;
    let partials = [
        fh.differentiate(&x)?,
        fh.differentiate(&y)?,
        fh.differentiate(&hom_var)?,
    ];

    let mut last_disagreement: Option<(u64, u64)> = None;
    for batch in 0..=config.max_retries {
        let mut trials: Vec<CountTrial> = Vec::with_capacity(config.trials);
        let mut batch_failed = false;
        for index in 0..config.trials {
            let seed = derived_seed(config.seed, batch, index, config.trials);
            let supplied = if batch == 0 && index == 0 { pole } else { None };
            match polar_trial(
                f,
                &partials,
                &hom_var,
                &locations,
                supplied,
                seed,
                config.max_retries,
                &mut warnings,
            ) {
                Ok(trial) => trials.push(trial),
                Err(Error::GenericityFailure(_)) | Err(Error::PositiveDimensional) => {
                    batch_failed = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if batch_failed {
            continue;
        }
        let count = trials[0].count;
        if trials.iter().all(|t| t.count == count) {
            // Every scanned rational singular point is divided out here, so
            // only irrational (unresolved) singular structure destabilizes.
            let stable = scan.unresolved_factors.is_empty();
            if !stable {
                push_once(
                    &mut warnings,
                    Warning::new(
                        "unaccounted_singular_points",
                        "the singular-point scan left irrational factors unresolved; \
                         their multiplicities are included in the count",
                    ),
                );
            }
            if !trials.iter().all(|t| t.residual_squarefree) {
                push_once(
                    &mut warnings,
                    Warning::new(
                        "unaccounted_multiplicity",
                        "a residual eliminant was not squarefree; singular structure \
                         was not fully resolved into rational points",
                    ),
                );
            }
            let generic_value = if scan.points.is_empty() && scan.unresolved_factors.is_empty()
            {
                Some(d * (d - 1))
            } else {
                None
            };
            let generic_deviation = generic_value.map(|gv| gv != count as i64);
            if generic_deviation == Some(true) {
                push_once(
                    &mut warnings,
                    Warning::new(
                        "generic_position_deviation",
                        format!(
                            "count {count} deviates from the generic-position value {}",
                            generic_value.unwrap()
                        ),
                    ),
                );
            }
            return Ok(CountReport {
                count,
                trials,
                stable,
                generic_value,
                generic_deviation,
                warnings,
            });
        }
        let other = trials.iter().map(|t| t.count).find(|&c| c != count).unwrap();
        last_disagreement = Some((count, other));
    }
    Err(Error::UnstableCount(match last_disagreement {
        Some((a, b)) => format!("trials kept disagreeing ({a} vs {b})"),
        None => "no generic pole found within the retry budget".to_string(),
    }))
}

#[allow(clippy::too_many_arguments)]
fn polar_trial(
    f: &Poly,
    partials: &[Poly; 3],
    hom_var: &str,
    singular: &[(Rational, Rational)],
    supplied_pole: Option<&[Rational; 3]>,
    seed: u64,
    max_retries: usize,
    warnings: &mut Vec<Warning>,
) -> Result<CountTrial, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut use_supplied = supplied_pole.is_some();
    for _ in 0..=max_retries {
        let pole: Vec<Rational> = if use_supplied {
            supplied_pole.unwrap().to_vec()
        } else {
            (0..3).map(|_| draw_coordinate(&mut rng)).collect()
        };
        let mut polar_h = Poly::zero(&[]);
        for (b, partial) in pole.iter().zip(partials) {
            polar_h = polar_h.add(&partial.scale(b));
        }
        let degenerate = if polar_h.is_zero() {
            true
        } else {
            let polar = polar_h.dehomogenize(hom_var)?.aligned(f.vars())?;
            if polar.is_constant() {
                // A line's polar is constant: no tangency points at all.
                return Ok(CountTrial {
                    seed,
                    data: pole,
                    shear: 0,
                    raw_resultant_degree: 0,
                    subtracted: singular
                        .iter()
                        .map(|p| SubtractedMultiplicity {
                            location: p.clone(),
                            multiplicity: 0,
                        })
                        .collect(),
                    residual_squarefree: true,
                    count: 0,
                });
            } else if !elim::gcd(f, &polar).is_constant() {
                true
            } else {
                match projective_count(f, &polar, singular, &mut rng) {
                    Ok(core) => {
                        return Ok(CountTrial {
                            seed,
                            data: pole,
                            shear: core.shear,
                            raw_resultant_degree: core.raw_degree,
                            subtracted: core.subtracted,
                            residual_squarefree: core.residual_squarefree,
                            count: core.count,
                        })
                    }
                    Err(Error::PositiveDimensional) => true,
                    Err(e) => return Err(e),
                }
            }
        };
        if degenerate {
            if use_supplied {
                push_once(
                    warnings,
                    Warning::new(
                        "pole_resampled",
                        "the supplied pole was degenerate for this curve; a random \
                         pole was used instead",
                    ),
                );
                use_supplied = false;
            } else {
                push_once(
                    warnings,
                    Warning::new("pole_resampled", "a random pole was degenerate and resampled"),
                );
            }
            continue;
        }
    }
    Err(Error::GenericityFailure(
        "no generic pole found within the retry budget".to_string(),
    ))
}
