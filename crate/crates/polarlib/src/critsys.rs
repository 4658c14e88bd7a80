//! Determinantal critical-point systems.
//!
//! For a variety cut out by equations `F_1, ..., F_r` in `x_1, ..., x_n`,
//! the critical points of a (possibly degenerate) distance measure are the
//! smooth points where all `(n-m+1)`-minors of a matrix vanish, stacking one
//! quadric-gradient row above the Jacobian of the system. Two quadrics are
//! supported: a general non-degenerate homogeneous quadric in
//! `x_0, ..., x_n`, and the Euclidean distance quadric centered at a data
//! point, whose row is stored in the normalized form `(x_i - a_i)`.

use itertools::Itertools;

use crate::elim;
use crate::error::{Error, Warning};
use crate::poly::{merged_vars, Poly, Rational};

/// The quadric defining the distance measure.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadricSpec {
    /// A non-degenerate homogeneous quadric in the homogenizing variable and
    /// the system variables.
    General { q: Poly, hom_var: String },
    /// The squared Euclidean distance from `center`.
    Euclidean { center: Vec<Rational> },
}

impl QuadricSpec {
    pub fn general(q: Poly, hom_var: &str) -> QuadricSpec {
        QuadricSpec::General { q, hom_var: hom_var.to_string() }
    }

    pub fn euclidean(center: Vec<Rational>) -> QuadricSpec {
        QuadricSpec::Euclidean { center }
    }
}

/// A polynomial system together with the expected dimension of its zero set.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem {
    equations: Vec<Poly>,
    vars: Vec<String>,
    dim: usize,
}

impl PolySystem {
    /// Builds a system over the merged variable list of its equations.
    pub fn new(equations: Vec<Poly>, dim: usize) -> Result<PolySystem, Error> {
        let mut vars: Vec<String> = Vec::new();
        for eq in &equations {
            vars = merged_vars(&vars, eq.vars());
        }
        let var_strs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        PolySystem::with_vars(equations, &var_strs, dim)
    }

    /// Builds a system over an explicit variable list (fixing the roles
    /// `x_1, ..., x_n` by position).
    pub fn with_vars(
        equations: Vec<Poly>,
        vars: &[&str],
        dim: usize,
    ) -> Result<PolySystem, Error> {
        if equations.is_empty() {
            return Err(Error::InvalidInput("system has no equations".to_string()));
        }
        let var_list: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let n = var_list.len();
        if n == 0 {
            return Err(Error::InvalidInput("system has no variables".to_string()));
        }
        if dim >= n {
            return Err(Error::InvalidInput(format!(
                "expected dimension {dim} must be smaller than the number of variables {n}"
            )));
        }
        let r = equations.len();
        if r < n - dim {
            return Err(Error::InvalidInput(format!(
                "{r} equations cannot cut out codimension {} in {n} variables",
                n - dim
            )));
        }
        let mut aligned = Vec::with_capacity(r);
        for eq in equations {
            if eq.is_constant() {
                return Err(Error::InvalidInput(
                    "system equations must be nonconstant".to_string(),
                ));
            }
            aligned.push(eq.aligned(&var_list)?);
        }
        Ok(PolySystem { equations: aligned, vars: var_list, dim })
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Expected dimension of the zero set.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }
}

/// The stacked matrix whose minors cut out the critical locus.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalMatrix {
    rows: Vec<Vec<Poly>>,
    minor_size: usize,
}

impl CriticalMatrix {
    /// Rows: the quadric row first, then the Jacobian of the system.
    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn minor_size(&self) -> usize {
        self.minor_size
    }

    /// All `minor_size`-minors in lexicographic order of (row set, column
    /// set), computed exactly.
    pub fn minors(&self) -> Result<Vec<Poly>, Error> {
        minors(self)
    }
}

/// Builds the critical matrix for a general or Euclidean quadric.
///
/// Row 0 is the quadric gradient row — for the general quadric the partials
/// `dq/dx_i` dehomogenized at the homogenizing variable, for the Euclidean
/// quadric the normalized form `(x_i - a_i)` — and rows `1..=r` are the
/// gradients of the system equations. Non-fatal degeneracies (an
/// identically-zero row, a Euclidean center lying on the variety, a center
/// violating the `sum a_i != 1` genericity constraint) are reported as
/// warnings.
pub fn build_reciprocal_matrix(
    sys: &PolySystem,
    quad: &QuadricSpec,
) -> Result<(CriticalMatrix, Vec<Warning>), Error> {
    let n = sys.num_vars();
    let mut warnings: Vec<Warning> = Vec::new();
    let row0: Vec<Poly> = match quad {
        QuadricSpec::Euclidean { center } => {
            if center.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: center.len() });
            }
            let sum: Rational = center.iter().sum();
            if sum == crate::poly::integer(1) {
                warnings.push(Warning::new(
                    "euclidean_center_constraint",
                    "center coordinates sum to 1, violating the genericity constraint \
                     sum a_i != 1 of the Euclidean construction",
                ));
            }
            if on_variety(sys, center) {
                warnings.push(Warning::new(
                    "data_point_on_variety",
                    "the center lies on the variety; critical-point counts from this \
                     matrix will include the center itself",
                ));
            }
            let var_strs: Vec<&str> = sys.vars.iter().map(|s| s.as_str()).collect();
            sys.vars
                .iter()
                .zip(center)
                .map(|(v, a)| {
                    Poly::variable(&var_strs, v)
                        .unwrap()
                        .sub(&Poly::constant(&var_strs, a.clone()))
                })
                .collect()
        }
        QuadricSpec::General { q, hom_var } => {
            if sys.vars.iter().any(|v| v == hom_var) {
                return Err(Error::InvalidInput(format!(
                    "homogenizing variable '{hom_var}' collides with a system variable"
                )));
            }
            let mut allowed = sys.vars.clone();
            allowed.push(hom_var.clone());
            for v in q.effective_vars() {
                if !allowed.contains(&v) {
                    return Err(Error::InvalidInput(format!(
                        "quadric variable '{v}' is not a system variable or the \
                         homogenizing variable"
                    )));
                }
            }
            if !q.is_homogeneous() || q.total_degree() != Some(2) {
                return Err(Error::InvalidInput(
                    "general quadric must be homogeneous of degree 2".to_string(),
                ));
            }
            let q = q.aligned(&allowed)?;
            if num_traits::Zero::is_zero(&symmetric_matrix_det(&q, &allowed)?) {
                return Err(Error::DegenerateQuadric);
            }
            let one = Poly::one(&[]);
            let mut row = Vec::with_capacity(n);
            for v in &sys.vars {
                let partial = q.differentiate(v)?;
                let dehom = partial.substitute(hom_var, &one)?;
                row.push(dehom.aligned(&sys.vars)?);
            }
            row
        }
    };
    let mut rows = vec![row0];
    for eq in &sys.equations {
        let grad: Result<Vec<Poly>, Error> =
            sys.vars.iter().map(|v| eq.differentiate(v)).collect();
        rows.push(grad?);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.iter().all(|p| p.is_zero()) {
            warnings.push(Warning::new(
                "zero_critical_row",
                format!("row {i} of the critical matrix vanishes identically"),
            ));
        }
    }
    let minor_size = n - sys.dim + 1;
    Ok((CriticalMatrix { rows, minor_size }, warnings))
}

/// Builds the Euclidean distance critical matrix for a data point: row 0 is
/// exactly `(x_1 - u_1, ..., x_n - u_n)` above the Jacobian.
pub fn build_ed_matrix(
    sys: &PolySystem,
    data: &[Rational],
) -> Result<(CriticalMatrix, Vec<Warning>), Error> {
    build_reciprocal_matrix(sys, &QuadricSpec::euclidean(data.to_vec()))
}

/// All `minor_size`-minors of the matrix in lexicographic order of
/// (row set, column set).
pub fn minors(mat: &CriticalMatrix) -> Result<Vec<Poly>, Error> {
    let rows = mat.rows.len();
    let cols = mat.rows.first().map_or(0, |r| r.len());
    let s = mat.minor_size;
    if s == 0 || s > rows.min(cols) {
        return Err(Error::InvalidInput(format!(
            "minor size {s} does not fit a {rows}x{cols} matrix"
        )));
    }
    let mut out = Vec::new();
    for row_set in (0..rows).combinations(s) {
        for col_set in (0..cols).combinations(s) {
            let sub: Vec<Vec<Poly>> = row_set
                .iter()
                .map(|&i| col_set.iter().map(|&j| mat.rows[i][j].clone()).collect())
                .collect();
            out.push(elim::determinant(&sub)?);
        }
    }
    Ok(out)
}

/// The ED-critical pair of a plane curve: returns `(F, G)` with
/// `G = (x - u_1) F_y - (y - u_2) F_x`, whose common zeros away from the
/// singular locus are the ED-critical points of `F` with respect to `data`.
///
/// The first variable of `F` plays the role of `x`, the second of `y`.
/// Errors when `F` is constant, is not a polynomial in exactly two
/// variables, or produces `G` identically zero (a totally degenerate data
/// point such as the center of a circle).
pub fn plane_curve_ed_system(f: &Poly, data: &[Rational]) -> Result<(Poly, Poly), Error> {
    if f.is_constant() {
        return Err(Error::InvalidInput("plane curve must be nonconstant".to_string()));
    }
    if f.vars().len() != 2 {
        return Err(Error::InvalidInput(
            "plane curve must be a polynomial in exactly two variables".to_string(),
        ));
    }
    if data.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: data.len() });
    }
    let x = f.vars()[0].clone();
    let y = f.vars()[1].clone();
    let var_strs: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
    let fx = f.differentiate(&x)?;
    let fy = f.differentiate(&y)?;
    let x_shift = Poly::variable(&var_strs, &x)
        .unwrap()
        .sub(&Poly::constant(&var_strs, data[0].clone()));
    let y_shift = Poly::variable(&var_strs, &y)
        .unwrap()
        .sub(&Poly::constant(&var_strs, data[1].clone()));
    let g = x_shift.mul(&fy).sub(&y_shift.mul(&fx));
    if g.is_zero() {
        return Err(Error::DegenerateSystem(
            "the ED-critical polynomial vanishes identically for this data point"
                .to_string(),
        ));
    }
    Ok((f.clone(), g))
}

fn on_variety(sys: &PolySystem, point: &[Rational]) -> bool {
    let bindings: std::collections::BTreeMap<String, Rational> = sys
        .vars
        .iter()
        .cloned()
        .zip(point.iter().cloned())
        .collect();
    sys.equations
        .iter()
        .all(|eq| eq.evaluate(&bindings).map(|v| v == Rational::from_integer(0.into())).unwrap_or(false))
}

/// Determinant of the symmetric matrix of a homogeneous quadric over the
/// ordered variable list `vars`.
fn symmetric_matrix_det(q: &Poly, vars: &[String]) -> Result<Rational, Error> {
    use num_traits::Zero;
    let k = vars.len();
    let half = crate::poly::rational(1, 2);
    let mut m = vec![vec![Rational::zero(); k]; k];
    for (mono, coeff) in q.terms() {
        let mut support: Vec<(usize, u32)> = mono
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        match support.len() {
            1 => {
                let (i, _) = support.pop().unwrap();
                m[i][i] = coeff.clone();
            }
            2 => {
                let (j, _) = support.pop().unwrap();
                let (i, _) = support.pop().unwrap();
                let c = coeff * &half;
                m[i][j] = c.clone();
                m[j][i] = c;
            }
            _ => unreachable!("degree-2 homogeneous term"),
        }
    }
    crate::poly::det_rational(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::integer;

    fn pxy(s: &str) -> Poly {
        parse_polynomial(s, Some(&["x", "y"])).unwrap()
    }

    fn circle_system() -> PolySystem {
        PolySystem::with_vars(vec![pxy("x^2 + y^2 - 1")], &["x", "y"], 1).unwrap()
    }

    #[test]
    fn euclidean_matrix_at_origin() {
        let sys = circle_system();
        let (mat, warnings) =
            build_reciprocal_matrix(&sys, &QuadricSpec::euclidean(vec![integer(0), integer(0)]))
                .unwrap();
        assert_eq!(mat.minor_size(), 2);
        assert_eq!(mat.rows()[0], vec![pxy("x"), pxy("y")]);
        assert_eq!(mat.rows()[1], vec![pxy("2*x"), pxy("2*y")]);
        assert!(warnings.is_empty());
        // Circle centered at its own center is totally critical.
        assert_eq!(mat.minors().unwrap(), vec![Poly::zero(&["x", "y"])]);
    }

    #[test]
    fn ed_matrix_reference() {
        let sys = circle_system();
        let (mat, _) = build_ed_matrix(&sys, &[integer(3), integer(0)]).unwrap();
        assert_eq!(mat.rows()[0], vec![pxy("x - 3"), pxy("y")]);
        assert_eq!(mat.rows()[1], vec![pxy("2*x"), pxy("2*y")]);
        assert_eq!(mat.minors().unwrap(), vec![pxy("-6*y")]);
    }

    #[test]
    fn ed_matrix_matches_reciprocal_euclidean() {
        let sys = circle_system();
        let data = [integer(2), integer(5)];
        let (a, _) = build_ed_matrix(&sys, &data).unwrap();
        let (b, _) =
            build_reciprocal_matrix(&sys, &QuadricSpec::euclidean(data.to_vec())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sphere_shape_and_minor_count() {
        let f = parse_polynomial("x^2 + y^2 + z^2 - 1", Some(&["x", "y", "z"])).unwrap();
        let sys = PolySystem::with_vars(vec![f], &["x", "y", "z"], 2).unwrap();
        let (mat, _) =
            build_ed_matrix(&sys, &[integer(1), integer(2), integer(3)]).unwrap();
        assert_eq!(mat.rows().len(), 2);
        assert_eq!(mat.rows()[0].len(), 3);
        assert_eq!(mat.minor_size(), 2);
        // Hypersurface in 3 variables: C(3, 2) = 3 minors.
        assert_eq!(mat.minors().unwrap().len(), 3);
    }

    #[test]
    fn general_quadric_gradient_row() {
        let q = parse_polynomial("x0^2 + x1*x2", Some(&["x1", "x2", "x0"])).unwrap();
        let sys = PolySystem::with_vars(
            vec![parse_polynomial("x1 - x2", None).unwrap()],
            &["x1", "x2"],
            1,
        )
        .unwrap();
        let (mat, _) =
            build_reciprocal_matrix(&sys, &QuadricSpec::general(q, "x0")).unwrap();
        let x2 = parse_polynomial("x2", Some(&["x1", "x2"])).unwrap();
        let x1 = parse_polynomial("x1", Some(&["x1", "x2"])).unwrap();
        assert_eq!(mat.rows()[0], vec![x2, x1]);
    }

    #[test]
    fn degenerate_quadric_rejected() {
        // q = x0^2 has a rank-1 symmetric matrix.
        let q = parse_polynomial("x0^2", None).unwrap();
        let sys = circle_system();
        let err = build_reciprocal_matrix(&sys, &QuadricSpec::general(q, "x0")).unwrap_err();
        assert_eq!(err, Error::DegenerateQuadric);
    }

    #[test]
    fn center_constraint_warning() {
        let sys = circle_system();
        let (_, warnings) =
            build_ed_matrix(&sys, &[integer(1), integer(0)]).unwrap();
        // sum a_i = 1 triggers the genericity warning; (1,0) is also on the
        // circle, so the on-variety warning fires too.
        let codes: Vec<&str> = warnings.iter().map(|w| w.code).collect();
        assert!(codes.contains(&"euclidean_center_constraint"));
        assert!(codes.contains(&"data_point_on_variety"));
    }

    #[test]
    fn plane_curve_ed_pair() {
        let f = pxy("x^2 + y^2 - 1");
        let (_, g) = plane_curve_ed_system(&f, &[integer(3), integer(0)]).unwrap();
        // G = -6y up to a constant: G = (x-3)(2y) - y(2x) = -6y.
        assert_eq!(g, pxy("-6*y"));

        let parabola = pxy("y - x^2");
        let (_, g) = plane_curve_ed_system(&parabola, &[integer(0), integer(1)]).unwrap();
        assert_eq!(g, pxy("2*x*y - x"));

        // Circle observed from its own center: G vanishes identically.
        let err = plane_curve_ed_system(&f, &[integer(0), integer(0)]).unwrap_err();
        assert!(matches!(err, Error::DegenerateSystem(_)));

        let err = plane_curve_ed_system(&pxy("5"), &[integer(0), integer(0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn system_validation() {
        assert!(matches!(
            PolySystem::with_vars(vec![pxy("x + y")], &["x", "y"], 2),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            PolySystem::with_vars(vec![pxy("x + y")], &["x", "y", "z"], 0),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            PolySystem::new(vec![], 1),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn minor_ordering_is_lexicographic() {
        // 3x3 matrix of distinct symbols, minor size 2: row sets and column
        // sets both iterate lexicographically.
        let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i"];
        let all: Vec<&str> = names.to_vec();
        let entry = |k: usize| Poly::variable(&all, names[k]).unwrap();
        let mat = CriticalMatrix {
            rows: vec![
                vec![entry(0), entry(1), entry(2)],
                vec![entry(3), entry(4), entry(5)],
                vec![entry(6), entry(7), entry(8)],
            ],
            minor_size: 2,
        };
        let ms = mat.minors().unwrap();
        assert_eq!(ms.len(), 9);
        // First minor: rows {0,1}, cols {0,1} -> a*e - b*d.
        let expected = entry(0).mul(&entry(4)).sub(&entry(1).mul(&entry(3)));
        assert_eq!(ms[0], expected);
        // Last minor: rows {1,2}, cols {1,2} -> e*i - f*h.
        let expected_last = entry(4).mul(&entry(8)).sub(&entry(5).mul(&entry(7)));
        assert_eq!(ms[8], expected_last);
    }
}
