//! Closed-form engines on polar ranks: ED degrees of smooth and singular
//! hypersurfaces, the Chern-Mather binomial transform, Plücker invariants of
//! nodal-cuspidal plane curves, and rank-reversal duality.
//!
//! Everything here is exact integer arithmetic; any overflow or non-integer
//! intermediate is a hard error rather than a silent wrap.

use crate::error::Error;

fn add(a: i64, b: i64) -> Result<i64, Error> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64, Error> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Binomial coefficient C(n, k) with overflow checking (0 when k > n).
fn binomial(n: i64, k: i64) -> Result<i64, Error> {
    if k < 0 || n < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for j in 0..k {
        acc = mul(acc, n - j)?;
        debug_assert_eq!(acc % (j + 1), 0);
        acc /= j + 1;
    }
    Ok(acc)
}

/// The polar ranks `mu_0, ..., mu_m` of an `m`-dimensional variety in
/// projective `n`-space, with `mu_0` its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankVector {
    ambient: u32,
    ranks: Vec<i64>,
}

impl RankVector {
    /// Validates `1 <= len <= ambient` (so `0 <= m < n`), `mu_0 >= 1`, and
    /// non-negativity of every rank.
    pub fn new(ambient: u32, ranks: Vec<i64>) -> Result<RankVector, Error> {
        if ambient == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".to_string()));
        }
        if ranks.is_empty() || ranks.len() > ambient as usize {
            return Err(Error::InvalidInput(format!(
                "a rank vector in ambient dimension {ambient} must have between 1 and \
                 {ambient} entries, got {}",
                ranks.len()
            )));
        }
        if ranks[0] < 1 {
            return Err(Error::InvalidInput(
                "the zeroth rank is the degree of the variety and must be at least 1"
                    .to_string(),
            ));
        }
        if ranks.iter().any(|&r| r < 0) {
            return Err(Error::InvalidInput("ranks must be non-negative".to_string()));
        }
        Ok(RankVector { ambient, ranks })
    }

    /// Ambient projective dimension `n`.
    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    /// Dimension `m` of the variety.
    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[i64] {
        &self.ranks
    }
}

/// Chern-Mather class degrees `c_0, ..., c_m` of an `m`-dimensional
/// projective variety (`c_k` paired against the `k`-th hyperplane power).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernMatherVector {
    degrees: Vec<i64>,
}

impl ChernMatherVector {
    /// Validates that `c_0` (the degree of the variety) is at least 1.
    pub fn new(degrees: Vec<i64>) -> Result<ChernMatherVector, Error> {
        if degrees.is_empty() {
            return Err(Error::InvalidInput(
                "a Chern-Mather vector needs at least the degree entry".to_string(),
            ));
        }
        if degrees[0] < 1 {
            return Err(Error::InvalidInput(
                "the zeroth Chern-Mather degree is the degree of the variety and must \
                 be at least 1"
                    .to_string(),
            ));
        }
        Ok(ChernMatherVector { degrees })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }
}

/// Degree, node count, and cusp count of a plane curve whose only
/// singularities are nodes and ordinary cusps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PluckerData {
    degree: i64,
    nodes: i64,
    cusps: i64,
}

/// The classical invariants derived from [`PluckerData`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PluckerInvariants {
    /// First rank: the class of the curve (degree of the dual curve).
    pub class_degree: i64,
    /// Number of inflection points.
    pub inflections: i64,
    /// Geometric genus.
    pub genus: i64,
}

impl PluckerData {
    /// Validates `d >= 2`, non-negative counts, and the derived constraints
    /// `g >= 0`, `mu_1 > 0`, `iota >= 0`.
    pub fn new(degree: i64, nodes: i64, cusps: i64) -> Result<PluckerData, Error> {
        if degree < 2 {
            return Err(Error::InvalidInput(
                "Plücker formulas require degree at least 2".to_string(),
            ));
        }
        if nodes < 0 || cusps < 0 {
            return Err(Error::InvalidInput(
                "node and cusp counts must be non-negative".to_string(),
            ));
        }
        let data = PluckerData { degree, nodes, cusps };
        let inv = data.invariants_unchecked()?;
        if inv.genus < 0 {
            return Err(Error::InconsistentInvariants(format!(
                "derived genus {} is negative",
                inv.genus
            )));
        }
        if inv.class_degree <= 0 {
            return Err(Error::InconsistentInvariants(format!(
                "derived class {} is not positive",
                inv.class_degree
            )));
        }
        if inv.inflections < 0 {
            return Err(Error::InconsistentInvariants(format!(
                "derived inflection count {} is negative",
                inv.inflections
            )));
        }
        Ok(data)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nodes(&self) -> i64 {
        self.nodes
    }

    pub fn cusps(&self) -> i64 {
        self.cusps
    }

    fn invariants_unchecked(&self) -> Result<PluckerInvariants, Error> {
        let d = self.degree;
        let class_degree = add(mul(d, d - 1)?, -add(mul(2, self.nodes)?, mul(3, self.cusps)?)?)?;
        let inflections = add(
            mul(3, mul(d, d - 2)?)?,
            -add(mul(6, self.nodes)?, mul(8, self.cusps)?)?,
        )?;
        let genus = add(
            mul(d - 1, d - 2)? / 2,
            -add(self.nodes, self.cusps)?,
        )?;
        Ok(PluckerInvariants { class_degree, inflections, genus })
    }

    /// The rank vector `(mu_0, mu_1) = (d, class)` of the curve in the
    /// plane.
    pub fn rank_vector(&self) -> RankVector {
        let inv = self.invariants_unchecked().expect("validated at construction");
        RankVector::new(2, vec![self.degree, inv.class_degree])
            .expect("validated invariants")
    }

    /// Plücker data of the dual curve: degree `mu_1`, cusps `iota`, and the
    /// node count forced by genus preservation.
    pub fn dual(&self) -> Result<PluckerData, Error> {
        let inv = self.invariants_unchecked()?;
        let d_dual = inv.class_degree;
        let kappa_dual = inv.inflections;
        let delta_dual = add(
            mul(d_dual - 1, d_dual - 2)? / 2,
            -add(inv.genus, kappa_dual)?,
        )?;
        PluckerData::new(d_dual, delta_dual, kappa_dual)
    }
}

/// Degree-`d` surface in projective 3-space with ordinary singularities: a
/// double curve of degree `epsilon`, `t` triple points, and `nu_2` pinch
/// points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrdinarySurfaceData {
    degree: i64,
    double_curve_degree: i64,
    triple_points: i64,
    pinch_points: i64,
}

impl OrdinarySurfaceData {
    pub fn new(
        degree: i64,
        double_curve_degree: i64,
        triple_points: i64,
        pinch_points: i64,
    ) -> Result<OrdinarySurfaceData, Error> {
        if degree < 1 {
            return Err(Error::InvalidInput("surface degree must be at least 1".to_string()));
        }
        if double_curve_degree < 0 || triple_points < 0 || pinch_points < 0 {
            return Err(Error::InvalidInput(
                "singularity counts must be non-negative".to_string(),
            ));
        }
        Ok(OrdinarySurfaceData { degree, double_curve_degree, triple_points, pinch_points })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }
}

/// Milnor number and sectional Milnor number of one isolated hypersurface
/// singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularityDatum {
    milnor: i64,
    sectional_milnor: i64,
}

impl SingularityDatum {
    pub fn new(milnor: i64, sectional_milnor: i64) -> Result<SingularityDatum, Error> {
        if milnor < 1 || sectional_milnor < 1 {
            return Err(Error::InvalidInput(
                "Milnor numbers of a singular point must be positive".to_string(),
            ));
        }
        Ok(SingularityDatum { milnor, sectional_milnor })
    }

    pub fn milnor(&self) -> i64 {
        self.milnor
    }

    pub fn sectional_milnor(&self) -> i64 {
        self.sectional_milnor
    }
}

/// Ranks of a smooth degree-`d` hypersurface in projective `n`-space:
/// `mu_i = d (d-1)^i` for `i = 0, ..., n-1`.
pub fn ranks_smooth_hypersurface(d: i64, n: u32) -> Result<RankVector, Error> {
    if d < 1 {
        return Err(Error::InvalidInput("degree must be at least 1".to_string()));
    }
    if n < 2 {
        return Err(Error::InvalidInput(
            "ambient projective dimension must be at least 2".to_string(),
        ));
    }
    let mut ranks = Vec::with_capacity(n as usize);
    let mut power: i64 = d;
    for i in 0..n {
        if i > 0 {
            power = mul(power, d - 1)?;
        }
        ranks.push(power);
    }
    RankVector::new(n, ranks)
}

/// ED degree from ranks: the exact sum of the rank vector.
///
/// This is the canonical implementation; the closed form
/// `d((d-1)^n - 1)/(d-2)` is never evaluated here because it degenerates to
/// 0/0 at `d = 2`.
pub fn ed_from_ranks(r: &RankVector) -> Result<i64, Error> {
    let mut acc: i64 = 0;
    for &mu in r.ranks() {
        acc = add(acc, mu)?;
    }
    Ok(acc)
}

/// ED degree of a degree-`d` hypersurface in projective `n`-space whose
/// singular locus consists of the given isolated singularities: the smooth
/// rank sum minus `sum (mu_P + mu_P-sectional)` over the singular points.
pub fn ed_hypersurface_isolated(
    d: i64,
    n: u32,
    singularities: &[SingularityDatum],
) -> Result<i64, Error> {
    if d < 2 {
        return Err(Error::InvalidInput(
            "the isolated-singularity correction requires degree at least 2".to_string(),
        ));
    }
    let smooth = ed_from_ranks(&ranks_smooth_hypersurface(d, n)?)?;
    let mut correction: i64 = 0;
    for s in singularities {
        correction = add(correction, add(s.milnor, s.sectional_milnor)?)?;
    }
    let result = add(smooth, -correction)?;
    if result < 0 {
        return Err(Error::InconsistentInvariants(format!(
            "Milnor corrections ({correction}) exceed the smooth ED degree ({smooth})"
        )));
    }
    Ok(result)
}

/// ED degree of a surface in projective 3-space with ordinary
/// singularities: `d^3 - d^2 + d - (3d - 2) epsilon - 3t - 2 nu_2`.
pub fn ed_surface_ordinary(s: &OrdinarySurfaceData) -> Result<i64, Error> {
    let d = s.degree;
    let smooth = add(add(mul(d, mul(d, d)?)?, -mul(d, d)?)?, d)?;
    let result = add(
        smooth,
        -add(
            add(
                mul(add(mul(3, d)?, -2)?, s.double_curve_degree)?,
                mul(3, s.triple_points)?,
            )?,
            mul(2, s.pinch_points)?,
        )?,
    )?;
    if result < 0 {
        return Err(Error::InconsistentInvariants(format!(
            "ordinary-singularity corrections drive the ED degree negative ({result})"
        )));
    }
    Ok(result)
}

/// The degree-level transform between ranks and Chern-Mather degrees:
/// `out_k = sum_{i=0}^{k} (-1)^(k-i) C(m+1-k+i, i) in_{k-i}`.
///
/// The transform is an involution, so it serves as both directions.
fn binomial_transform(input: &[i64]) -> Result<Vec<i64>, Error> {
    let m = input.len() as i64 - 1;
    let mut out = Vec::with_capacity(input.len());
    for k in 0..=m {
        let mut acc: i64 = 0;
        for i in 0..=k {
            let coeff = binomial(m + 1 - k + i, i)?;
            let signed = if (k - i) % 2 == 0 { coeff } else { -coeff };
            acc = add(acc, mul(signed, input[(k - i) as usize])?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Chern-Mather class degrees from polar ranks.
pub fn chern_mather_from_ranks(r: &RankVector) -> Result<ChernMatherVector, Error> {
    ChernMatherVector::new(binomial_transform(r.ranks())?)
}

/// Polar ranks from Chern-Mather class degrees (inverse transform, with the
/// same coefficients).
pub fn ranks_from_chern_mather(
    c: &ChernMatherVector,
    ambient: u32,
) -> Result<RankVector, Error> {
    RankVector::new(ambient, binomial_transform(c.degrees())?)
}

/// The derived Plücker invariants `(mu_1, iota, g)`:
/// `mu_1 = d(d-1) - 2 delta - 3 kappa`,
/// `iota = 3d(d-2) - 6 delta - 8 kappa`,
/// `g = (d-1)(d-2)/2 - delta - kappa`.
pub fn plucker_ranks(p: &PluckerData) -> PluckerInvariants {
    p.invariants_unchecked().expect("validated at construction")
}

/// Rank-reversal duality: the rank vector of the dual variety is the
/// reversed rank vector. Implemented only for `m = n - 1`, where both `X`
/// and its dual are hypersurface-dimensional.
pub fn dual_ranks(r: &RankVector) -> Result<RankVector, Error> {
    if r.dim() + 1 != r.ambient() as usize {
        return Err(Error::InvalidInput(
            "duality reversal implemented for the stated rank-reversal case only \
             (dim m = n - 1)"
                .to_string(),
        ));
    }
    let mut reversed = r.ranks().to_vec();
    reversed.reverse();
    RankVector::new(r.ambient(), reversed)
}
