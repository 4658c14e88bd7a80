//! Acceptance gate: one test per criterion, each printing a pass line and
//! enforcing its time budget. Every asserted number is produced by the
//! public library API; counted values and closed-form values come from
//! independent pipelines.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polarlib::counting::{ed_degree_count, polar_class_count, CountConfig, SingularPoint};
use polarlib::elim;
use polarlib::focal::{
    evolute_eliminant, focal_hypersurface_ranks, focal_plane_curve, focal_salmon,
    focal_smooth_curve, focal_smooth_surface, EvoluteConfig, EvoluteOutcome,
    SmoothSurfaceChernData,
};
use polarlib::parse::parse_polynomial;
use polarlib::poly::{integer, Poly};
use polarlib::rankcalc::{
    chern_mather_from_ranks, dual_ranks, ed_from_ranks, ed_hypersurface_isolated, plucker_ranks,
    ranks_from_chern_mather, ranks_smooth_hypersurface, PluckerData, RankVector,
    SingularityDatum,
};

fn pxy(s: &str) -> Poly {
    parse_polynomial(s, Some(&["x", "y"])).unwrap()
}

fn finish(number: u32, name: &str, start: Instant, budget_secs: f64) {
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < budget_secs,
        "criterion {number} exceeded its {budget_secs}s budget: {elapsed:?}"
    );
    println!("acceptance criterion {number} ({name}): PASS in {elapsed:?}");
}

#[test]
fn criterion_01_generic_conic_ed_degree() {
    let start = Instant::now();
    let conic = pxy("x^2 + 2*y^2 - 1");
    for seed in [0u64, 1] {
        let report = ed_degree_count(&conic, &[], &CountConfig::with_seed(seed)).unwrap();
        assert_eq!(report.count, 4, "seed {seed}");
        assert!(report.stable);
        assert_eq!(report.generic_value, Some(4));
    }
    finish(1, "generic-conic ED degree d^2 = 4", start, 5.0);
}

#[test]
fn criterion_02_milnor_correction_counted_vs_formula() {
    let start = Instant::now();

    let nodal = pxy("y^2 - x^2*(x + 1)");
    let node = SingularPoint::with_milnor_data(integer(0), integer(0), 1, 1).unwrap();
    let counted = ed_degree_count(&nodal, &[node], &CountConfig::with_seed(0)).unwrap();
    let formula =
        ed_hypersurface_isolated(3, 2, &[SingularityDatum::new(1, 1).unwrap()]).unwrap();
    assert_eq!(counted.count, 7);
    assert_eq!(formula, 7);
    assert_eq!(counted.count as i64, formula);

    let cuspidal = pxy("y^2 - x^3");
    let cusp = SingularPoint::with_milnor_data(integer(0), integer(0), 2, 1).unwrap();
    let counted = ed_degree_count(&cuspidal, &[cusp], &CountConfig::with_seed(0)).unwrap();
    let formula =
        ed_hypersurface_isolated(3, 2, &[SingularityDatum::new(2, 1).unwrap()]).unwrap();
    assert_eq!(counted.count, 6);
    assert_eq!(formula, 6);
    assert_eq!(counted.count as i64, formula);

    finish(2, "Milnor correction: nodal 7, cuspidal 6, counted = formula", start, 10.0);
}

#[test]
fn criterion_03_degeneracy_detection_circle() {
    let start = Instant::now();
    let circle = pxy("x^2 + y^2 - 1");
    let report = ed_degree_count(&circle, &[], &CountConfig::with_seed(0)).unwrap();
    assert_eq!(report.count, 2);
    assert_eq!(report.generic_value, Some(4));
    assert_eq!(report.generic_deviation, Some(true));
    assert!(report.warnings.iter().any(|w| w.code == "generic_position_deviation"));
    finish(3, "circle counts 2 with deviation flagged against 4", start, 5.0);
}

#[test]
fn criterion_04_polar_class_oracle() {
    let start = Instant::now();
    let cases: [(&str, u64, PluckerData); 3] = [
        ("x^2 + 2*y^2 - 1", 2, PluckerData::new(2, 0, 0).unwrap()),
        ("y^2 - x^2*(x + 1)", 4, PluckerData::new(3, 1, 0).unwrap()),
        ("y^2 - x^3", 3, PluckerData::new(3, 0, 1).unwrap()),
    ];
    for (text, expected, plucker) in cases {
        let f = pxy(text);
        let report = polar_class_count(&f, None, &CountConfig::with_seed(0)).unwrap();
        assert_eq!(report.count, expected, "{text}");
        assert!(report.stable, "{text}");
        assert_eq!(plucker_ranks(&plucker).class_degree, expected as i64, "{text}");
    }
    finish(4, "polar class 2/4/3 equals Plucker mu_1", start, 10.0);
}

#[test]
fn criterion_05_chern_mather_transform() {
    let start = Instant::now();

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let len = rng.random_range(1..=9usize); // dim m <= 8
        let mut ranks = vec![rng.random_range(1..=50i64)];
        for _ in 1..len {
            ranks.push(rng.random_range(0..=50i64));
        }
        let ambient = len as u32 + rng.random_range(0..=2u32);
        let r = RankVector::new(ambient, ranks).unwrap();
        let chern = chern_mather_from_ranks(&r).unwrap();
        assert_eq!(ranks_from_chern_mather(&chern, ambient).unwrap(), r);
    }

    let cubic = RankVector::new(2, vec![3, 6]).unwrap();
    assert_eq!(chern_mather_from_ranks(&cubic).unwrap().degrees(), &[3, 0]);

    for d in 2..=5i64 {
        let ranks = ranks_smooth_hypersurface(d, 3).unwrap();
        let chern = chern_mather_from_ranks(&ranks).unwrap();
        assert_eq!(chern.degrees()[2], d * (d * d - 4 * d + 6), "degree {d}");
    }

    finish(5, "Chern-Mather round trip and smooth values", start, 1.0);
}

#[test]
fn criterion_06_duality() {
    let start = Instant::now();

    // ED degree is invariant under rank reversal on all test vectors.
    let mut vectors: Vec<RankVector> = Vec::new();
    for n in 2..=5u32 {
        for d in 2..=6i64 {
            vectors.push(ranks_smooth_hypersurface(d, n).unwrap());
        }
    }
    for d in 2..=6i64 {
        for nodes in 0..=6i64 {
            for cusps in 0..=6i64 {
                if let Ok(p) = PluckerData::new(d, nodes, cusps) {
                    vectors.push(p.rank_vector());
                }
            }
        }
    }
    vectors.push(RankVector::new(3, vec![4, 12, 36]).unwrap());
    for r in &vectors {
        let dual = dual_ranks(r).unwrap();
        assert_eq!(ed_from_ranks(&dual).unwrap(), ed_from_ranks(r).unwrap());
    }

    // Plucker dual of the nodal cubic reproduces the rank reversal.
    let nodal = PluckerData::new(3, 1, 0).unwrap();
    let dual = nodal.dual().unwrap();
    assert_eq!(dual.degree(), 4);
    assert_eq!(dual.cusps(), 3);
    assert_eq!(dual.nodes(), 0);
    let dual_inv = plucker_ranks(&dual);
    assert_eq!(dual_inv.genus, 0);
    assert_eq!(dual_inv.inflections, 0);
    assert_eq!(dual_inv.class_degree, 3);

    finish(6, "ED duality invariance and nodal-cubic dual", start, 1.0);
}

#[test]
fn criterion_07_focal_identities_on_plucker_grid() {
    let start = Instant::now();
    for d in 2..=6i64 {
        for nodes in 0..=20i64 {
            for cusps in 0..=20i64 {
                let Ok(p) = PluckerData::new(d, nodes, cusps) else { continue };
                let inv = plucker_ranks(&p);
                // 3 mu_1 + kappa = 3 mu_0 + iota (focal_plane_curve gates it).
                let from_invariants =
                    focal_plane_curve(d, inv.class_degree, cusps, inv.inflections).unwrap();
                let salmon = focal_salmon(&p).unwrap();
                assert_eq!(salmon, from_invariants, "({d},{nodes},{cusps})");
                // deg R of the dual curve equals deg R of the curve.
                let dual = p.dual().unwrap();
                assert_eq!(focal_salmon(&dual).unwrap(), salmon, "dual of ({d},{nodes},{cusps})");
            }
        }
    }
    finish(7, "focal identities and duality over the Plucker grid", start, 1.0);
}

#[test]
fn criterion_08_cross_formula_focal_agreement() {
    let start = Instant::now();
    for d in 2..=6i64 {
        // n = 3: rank formula equals the Chern-data formula, value
        // 2d(2d-1)(d-1), including d = 2 where closed forms in the degree
        // alone degenerate.
        let ranks = ranks_smooth_hypersurface(d, 3).unwrap();
        let chern = SmoothSurfaceChernData::surface_in_p3(d).unwrap();
        let from_ranks = focal_hypersurface_ranks(&ranks).unwrap();
        assert_eq!(from_ranks, focal_smooth_surface(&chern).unwrap(), "degree {d}");
        assert_eq!(from_ranks, 2 * d * (2 * d - 1) * (d - 1), "degree {d}");

        // n = 2 reduces to Salmon's smooth value 3d(d-1).
        let plane = ranks_smooth_hypersurface(d, 2).unwrap();
        let smooth = PluckerData::new(d, 0, 0).unwrap();
        assert_eq!(
            focal_hypersurface_ranks(&plane).unwrap(),
            focal_salmon(&smooth).unwrap(),
            "degree {d}"
        );

        // Smooth space-curve formula on plane-curve data agrees too.
        let genus = (d - 1) * (d - 2) / 2;
        assert_eq!(
            focal_smooth_curve(d, genus).unwrap(),
            focal_salmon(&smooth).unwrap(),
            "degree {d}"
        );
    }
    assert_eq!(
        focal_hypersurface_ranks(&ranks_smooth_hypersurface(2, 3).unwrap()).unwrap(),
        12
    );
    finish(8, "cross-formula focal agreement (n = 3, n = 2, curves)", start, 1.0);
}

#[test]
fn criterion_09_quartic_surface_focal_degree() {
    let start = Instant::now();
    let quartic = RankVector::new(3, vec![4, 12, 36]).unwrap();
    assert_eq!(focal_hypersurface_ranks(&quartic).unwrap(), 168);

    // Closed form (n-1) d (d-1)^(n-1) + 2 d (d-1) ((d-1)^(n-1) - 1)/(d-2)
    // for d >= 3, cross-checked against the rank formula.
    for n in 2..=4u32 {
        for d in 3..=6i64 {
            let e = (d - 1).pow(n - 1);
            let closed = (i64::from(n) - 1) * d * e + 2 * d * (d - 1) * (e - 1) / (d - 2);
            let ranks = ranks_smooth_hypersurface(d, n).unwrap();
            assert_eq!(focal_hypersurface_ranks(&ranks).unwrap(), closed, "d={d}, n={n}");
        }
    }
    finish(9, "quartic surface focal degree 168 and closed form", start, 1.0);
}

#[test]
fn criterion_10_evolute() {
    let start = Instant::now();

    let ellipse = pxy("1/4*x^2 + y^2 - 1");
    let outcome = evolute_eliminant(&ellipse, &EvoluteConfig::default()).unwrap();
    let EvoluteOutcome::Curve(result) = outcome else { panic!("expected a curve") };
    assert_eq!(result.degree, 6);
    assert!(result.genericity);
    let smooth_conic = PluckerData::new(2, 0, 0).unwrap();
    assert_eq!(i64::from(result.degree), focal_salmon(&smooth_conic).unwrap());

    let parabola = pxy("y - x^2");
    let outcome = evolute_eliminant(&parabola, &EvoluteConfig::default()).unwrap();
    let EvoluteOutcome::Curve(result) = outcome else { panic!("expected a curve") };
    assert_eq!(result.degree, 3);
    assert!(!result.genericity);

    let circle = pxy("x^2 + y^2 - 1");
    let outcome = evolute_eliminant(&circle, &EvoluteConfig::default()).unwrap();
    assert_eq!(outcome, EvoluteOutcome::Degenerate { center: (integer(0), integer(0)) });

    finish(10, "evolute: ellipse 6 generic, parabola 3, circle degenerate", start, 30.0);
}

#[test]
fn criterion_11_elimination_substrate() {
    let start = Instant::now();

    // 100 random small univariate pairs: swap-sign, multiplicativity,
    // common-factor-iff-zero.
    let x = Poly::variable(&["x"], "x").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let random_poly = |rng: &mut ChaCha8Rng| {
        let degree = rng.random_range(1..=3u32);
        let mut acc = x.pow(degree).scale(&integer(rng.random_range(1..=9i64)));
        for e in 0..degree {
            acc = acc.add(&x.pow(e).scale(&integer(rng.random_range(-9..=9i64))));
        }
        acc
    };
    for _ in 0..100 {
        let f = random_poly(&mut rng);
        let g = random_poly(&mut rng);
        let h = random_poly(&mut rng);

        let fg = elim::resultant(&f, &g, "x").unwrap();
        let gf = elim::resultant(&g, &f, "x").unwrap();
        let sign_flips = (u64::from(f.degree_in("x")) * u64::from(g.degree_in("x"))) % 2 == 1;
        assert_eq!(fg, if sign_flips { gf.neg() } else { gf });

        let product = elim::resultant(&f.mul(&g), &h, "x").unwrap();
        let split =
            elim::resultant(&f, &h, "x").unwrap().mul(&elim::resultant(&g, &h, "x").unwrap());
        assert_eq!(product, split);

        let res = elim::resultant(&f, &g, "x").unwrap();
        assert_eq!(res.is_zero(), !elim::gcd(&f, &g).is_constant());
        let shared = x.sub(&Poly::constant(&["x"], integer(rng.random_range(-5..=5i64))));
        assert!(elim::resultant(&f.mul(&shared), &g.mul(&shared), "x").unwrap().is_zero());
    }

    // The multiplicity ledger balances on every trial of every report.
    let corpus = [
        ("x^2 + 2*y^2 - 1", vec![]),
        ("x^2 + y^2 - 1", vec![]),
        ("y - x^2", vec![]),
        (
            "y^2 - x^2*(x + 1)",
            vec![SingularPoint::with_milnor_data(integer(0), integer(0), 1, 1).unwrap()],
        ),
        (
            "y^2 - x^3",
            vec![SingularPoint::with_milnor_data(integer(0), integer(0), 2, 1).unwrap()],
        ),
    ];
    for (text, singular) in corpus {
        let f = pxy(text);
        let ed = ed_degree_count(&f, &singular, &CountConfig::with_seed(0)).unwrap();
        for trial in &ed.trials {
            assert!(trial.ledger_balances(), "ED ledger for {text}");
        }
        let polar = polar_class_count(&f, None, &CountConfig::with_seed(0)).unwrap();
        for trial in &polar.trials {
            assert!(trial.ledger_balances(), "polar ledger for {text}");
        }
    }

    finish(11, "elimination substrate properties and multiplicity ledger", start, 20.0);
}
