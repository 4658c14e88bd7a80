//! Randomized algebraic invariants of the polynomial core, the elimination
//! substrate, and the closed-form degree engines, plus the fixed smooth
//! curve corpus where the certified counts must match the generic-position
//! formulas exactly.

use proptest::prelude::*;

use polarlib::counting::{ed_degree_count, polar_class_count, CountConfig};
use polarlib::critsys::{build_ed_matrix, build_reciprocal_matrix, minors, PolySystem, QuadricSpec};
use polarlib::elim;
use polarlib::parse::parse_polynomial;
use polarlib::poly::{integer, rational, Poly, Rational};
use polarlib::rankcalc::{
    chern_mather_from_ranks, dual_ranks, ed_from_ranks, ed_surface_ordinary, plucker_ranks,
    ranks_from_chern_mather, ranks_smooth_hypersurface, OrdinarySurfaceData, PluckerData,
    RankVector,
};

const VARS: [&str; 3] = ["x", "y", "z"];

fn build_poly(terms: &[([u32; 3], i64, i64)]) -> Poly {
    let mut acc = Poly::zero(&VARS);
    for &(exps, num, den) in terms {
        let mut term = Poly::constant(&VARS, rational(num, den));
        for (i, &e) in exps.iter().enumerate() {
            term = term.mul(&Poly::variable(&VARS, VARS[i]).unwrap().pow(e));
        }
        acc = acc.add(&term);
    }
    acc
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        ((0u32..=2, 0u32..=2, 0u32..=2), -9i64..=9, 1i64..=4)
            .prop_filter("total degree at most 4", |((a, b, c), _, _)| a + b + c <= 4)
            .prop_map(|((a, b, c), num, den)| ([a, b, c], num, den)),
        0..5,
    )
    .prop_map(|terms| build_poly(&terms))
}

/// Univariate polynomial in x with the given roots, an extra leading
/// coefficient, and the given multiplicities.
fn from_roots(lead: i64, roots: &[(i64, u32)]) -> Poly {
    let x = Poly::variable(&["x"], "x").unwrap();
    let mut acc = Poly::constant(&["x"], integer(lead));
    for &(r, m) in roots {
        let factor = x.sub(&Poly::constant(&["x"], integer(r)));
        acc = acc.mul(&factor.pow(m));
    }
    acc
}

fn univariate_strategy() -> impl Strategy<Value = Poly> {
    (prop::collection::vec(-9i64..=9, 1..4), 1i64..=9).prop_map(|(low, lead)| {
        let x = Poly::variable(&["x"], "x").unwrap();
        let mut acc = x.pow(low.len() as u32).scale(&integer(lead));
        for (i, &c) in low.iter().enumerate() {
            acc = acc.add(&x.pow(i as u32).scale(&integer(c)));
        }
        acc
    })
}

fn rational_point() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rational(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }

    #[test]
    fn differentiation_is_linear_and_leibniz(a in poly_strategy(), b in poly_strategy()) {
        for v in VARS {
            let da = a.differentiate(v).unwrap();
            let db = b.differentiate(v).unwrap();
            prop_assert_eq!(a.add(&b).differentiate(v).unwrap(), da.add(&db));
            prop_assert_eq!(
                a.mul(&b).differentiate(v).unwrap(),
                da.mul(&b).add(&a.mul(&db))
            );
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in poly_strategy(),
        b in poly_strategy(),
        px in rational_point(),
        py in rational_point(),
        pz in rational_point(),
    ) {
        let bind = [("x", px), ("y", py), ("z", pz)];
        let ea = a.evaluate_at(&bind).unwrap();
        let eb = b.evaluate_at(&bind).unwrap();
        prop_assert_eq!(a.add(&b).evaluate_at(&bind).unwrap(), &ea + &eb);
        prop_assert_eq!(a.mul(&b).evaluate_at(&bind).unwrap(), &ea * &eb);
    }

    #[test]
    fn homogenization_round_trips(a in poly_strategy()) {
        prop_assume!(!a.is_zero());
        let h = a.homogenize("w").unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize("w").unwrap(), a);
    }

    #[test]
    fn resultant_swaps_with_sign(f in univariate_strategy(), g in univariate_strategy()) {
        let fg = elim::resultant(&f, &g, "x").unwrap();
        let gf = elim::resultant(&g, &f, "x").unwrap();
        let df = f.degree_in("x");
        let dg = g.degree_in("x");
        let expected = if (u64::from(df) * u64::from(dg)) % 2 == 1 { gf.neg() } else { gf };
        prop_assert_eq!(fg, expected);
    }

    #[test]
    fn resultant_is_multiplicative(
        f in univariate_strategy(),
        g in univariate_strategy(),
        h in univariate_strategy(),
    ) {
        let lhs = elim::resultant(&f.mul(&g), &h, "x").unwrap();
        let rhs = elim::resultant(&f, &h, "x").unwrap().mul(&elim::resultant(&g, &h, "x").unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        f in univariate_strategy(),
        g in univariate_strategy(),
        c in -5i64..=5,
    ) {
        // Random pair: zero resultant exactly when the gcd is nonconstant.
        let res = elim::resultant(&f, &g, "x").unwrap();
        let common = elim::gcd(&f, &g);
        prop_assert_eq!(res.is_zero(), !common.is_constant());

        // Constructed pair with the shared factor (x - c).
        let shared = from_roots(1, &[(c, 1)]);
        let res = elim::resultant(&f.mul(&shared), &g.mul(&shared), "x").unwrap();
        prop_assert!(res.is_zero());
    }

    #[test]
    fn resultant_matches_root_product(
        roots in prop::collection::btree_set(-6i64..=6, 1..4),
        lead in 1i64..=5,
        g in univariate_strategy(),
    ) {
        // For f = lead * prod (x - r_i):
        // Res_x(f, g) = lead^(deg g) * prod g(r_i).
        let root_list: Vec<(i64, u32)> = roots.iter().map(|&r| (r, 1)).collect();
        let f = from_roots(lead, &root_list);
        let res = elim::resultant(&f, &g, "x").unwrap();
        let mut expected = integer(lead).pow(g.degree_in("x") as i32);
        for &r in &roots {
            expected *= g.evaluate_at(&[("x", integer(r))]).unwrap();
        }
        prop_assert_eq!(res, Poly::constant(&[], expected));
    }

    #[test]
    fn squarefree_part_counts_distinct_roots(
        roots in prop::collection::btree_map(-6i64..=6, 1u32..=3, 1..4),
        lead in 1i64..=5,
    ) {
        let root_list: Vec<(i64, u32)> = roots.iter().map(|(&r, &m)| (r, m)).collect();
        let p = from_roots(lead, &root_list);
        let distinct = roots.len() as u32;
        let part = elim::squarefree_part(&p).unwrap();
        prop_assert_eq!(part.degree_in("x"), distinct);
        prop_assert_eq!(elim::count_distinct_roots(&p).unwrap(), distinct);
        let decomposition = elim::squarefree_decompose(&p).unwrap();
        let total: u32 = decomposition.factors.iter().map(|(f, _)| f.degree_in("x")).sum();
        prop_assert_eq!(total, distinct);
        prop_assert_eq!(decomposition.reconstruct(), p);
    }

    #[test]
    fn chern_mather_transform_round_trips(
        first in 1i64..=30,
        rest in prop::collection::vec(0i64..=30, 0..8),
        extra in 0u32..3,
    ) {
        // Any rank vector with dim m <= 8 returns unchanged through the
        // binomial transform and its inverse.
        let mut ranks = vec![first];
        ranks.extend(rest);
        let ambient = ranks.len() as u32 + extra;
        let r = RankVector::new(ambient, ranks).unwrap();
        let chern = chern_mather_from_ranks(&r).unwrap();
        prop_assert_eq!(ranks_from_chern_mather(&chern, ambient).unwrap(), r);
    }

    #[test]
    fn ed_degree_is_duality_invariant(
        ranks in prop::collection::vec(1i64..=40, 1..8),
    ) {
        // Hypersurface-dimensional rank vectors: reversal preserves the sum.
        let ambient = ranks.len() as u32;
        let r = RankVector::new(ambient, ranks).unwrap();
        let dual = dual_ranks(&r).unwrap();
        prop_assert_eq!(ed_from_ranks(&dual).unwrap(), ed_from_ranks(&r).unwrap());
    }
}

#[test]
fn plucker_smooth_specialization_and_biduality() {
    for d in 2..=6i64 {
        let smooth = PluckerData::new(d, 0, 0).unwrap();
        let inv = plucker_ranks(&smooth);
        assert_eq!(inv.class_degree, d * (d - 1));
        assert_eq!(inv.genus, (d - 1) * (d - 2) / 2);
        for nodes in 0..=10i64 {
            for cusps in 0..=10i64 {
                let Ok(p) = PluckerData::new(d, nodes, cusps) else { continue };
                let inv = plucker_ranks(&p);
                let dual = p.dual().unwrap();
                // Dual data: degree mu_1, cusps iota, and the same genus.
                assert_eq!(dual.degree(), inv.class_degree);
                assert_eq!(dual.cusps(), inv.inflections);
                assert_eq!(plucker_ranks(&dual).genus, inv.genus);
                // Biduality: the class of the dual is the original degree.
                assert_eq!(plucker_ranks(&dual).class_degree, p.degree());
            }
        }
    }
}

#[test]
fn ordinary_surface_smooth_specialization() {
    for d in 2..=8i64 {
        let smooth = OrdinarySurfaceData::new(d, 0, 0, 0).unwrap();
        let ranks = ranks_smooth_hypersurface(d, 3).unwrap();
        assert_eq!(ed_surface_ordinary(&smooth).unwrap(), ed_from_ranks(&ranks).unwrap());
    }
}

#[test]
fn ed_matrix_is_the_euclidean_reciprocal_matrix() {
    let f = parse_polynomial("x1^2 + x2^2 - 1", None).unwrap();
    let sys = PolySystem::new(vec![f], 1).unwrap();
    let data = vec![rational(1, 2), rational(1, 3)];
    let (ed, _) = build_ed_matrix(&sys, &data).unwrap();
    let (reciprocal, _) =
        build_reciprocal_matrix(&sys, &QuadricSpec::euclidean(data)).unwrap();
    assert_eq!(ed.rows(), reciprocal.rows());
    assert_eq!(ed.minor_size(), reciprocal.minor_size());
}

#[test]
fn proportional_rows_kill_every_minor() {
    // A circle centered at the data point: the quadric row is half the
    // gradient row, so the single 2x2 minor vanishes identically.
    let f = parse_polynomial("(x1 - 1/2)^2 + (x2 - 3)^2 - 5", None).unwrap();
    let sys = PolySystem::new(vec![f], 1).unwrap();
    let (matrix, _) = build_ed_matrix(&sys, &[rational(1, 2), integer(3)]).unwrap();
    let all = minors(&matrix).unwrap();
    assert!(!all.is_empty());
    assert!(all.iter().all(|m| m.is_zero()));
}

#[test]
fn hypersurface_minor_count_is_n_choose_2() {
    let f = parse_polynomial("x1^2 + x2^2 + x3^2 - 1", None).unwrap();
    let sys = PolySystem::new(vec![f], 2).unwrap();
    let (matrix, _) = build_ed_matrix(&sys, &[integer(2), integer(3), integer(5)]).unwrap();
    assert_eq!(matrix.minor_size(), 2);
    assert_eq!(minors(&matrix).unwrap().len(), 3);
}

#[test]
fn smooth_curve_corpus_matches_generic_formulas() {
    // ED count d^2 and polar class d(d-1) on the smooth test corpus.
    let corpus = [
        (2u32, "x^2 + 2*y^2 - 1"),
        (3u32, "x^3 + 2*y^3 - 1"),
        (4u32, "x^4 + 2*y^4 - 1"),
    ];
    for (d, text) in corpus {
        let f = parse_polynomial(text, Some(&["x", "y"])).unwrap();
        let ed = ed_degree_count(&f, &[], &CountConfig::with_seed(3)).unwrap();
        assert_eq!(ed.count, u64::from(d * d), "ED degree of {text}");
        assert!(ed.stable);
        assert_eq!(ed.generic_deviation, Some(false));
        for trial in &ed.trials {
            assert!(trial.ledger_balances());
        }
        let polar = polar_class_count(&f, None, &CountConfig::with_seed(3)).unwrap();
        assert_eq!(polar.count, u64::from(d * (d - 1)), "polar class of {text}");
        assert!(polar.stable);
        for trial in &polar.trials {
            assert!(trial.ledger_balances());
        }
    }
}
