mod common;

use std::collections::BTreeSet;

use common::{all_spaces, s, space, v};
use ec_core::linalg;
use ec_core::space::{polar_dual_dd, PolygonalSpace, SignedPoint, VectorN};
use ec_core::{Error, RationalSpace, Scalar, Space};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn facet_set(x: &Space) -> BTreeSet<Vec<Scalar>> {
    x.facets().iter().map(|f| f.coeffs.0.clone()).collect()
}

/// Facets by brute force: every `n`-subset of extreme points spanning a
/// hyperplane `f . p = 1` with `|f . g| <= 1` for all generators.
fn facet_oracle(x: &Space) -> BTreeSet<Vec<Scalar>> {
    let n = x.dimension();
    let pts = x.extreme_points();
    let mut found = BTreeSet::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| pts[i].0.clone()).collect();
        if let Some(f) = linalg::solve(&rows, &vec![Scalar::one(); n]) {
            let ok = x
                .generators()
                .iter()
                .all(|g| linalg::dot(&f, g).abs() <= Scalar::one());
            if ok {
                found.insert(f);
            }
        }
        // next combination
        let Some(i) = (0..n).rev().find(|&i| idx[i] < pts.len() - n + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
    found
}

/// Exact membership in `conv(+-generators)`: some affinely independent set
/// of at most `n + 1` extreme points has `x` as a convex combination.
fn hull_contains(x: &Space, point: &[Scalar]) -> bool {
    let n = x.dimension();
    let pts = x.extreme_points();
    for size in 1..=n + 1 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            // columns are the chosen points lifted by a trailing 1
            let rows: Vec<Vec<Scalar>> = (0..=n)
                .map(|r| {
                    idx.iter()
                        .map(|&i| {
                            if r < n {
                                pts[i][r].clone()
                            } else {
                                Scalar::one()
                            }
                        })
                        .collect()
                })
                .collect();
            let mut rhs = point.to_vec();
            rhs.push(Scalar::one());
            if let Some(lambda) = linalg::solve_unique(&rows, &rhs, size) {
                if lambda.iter().all(|l| l.sign() >= 0) {
                    return true;
                }
            }
            let Some(i) = (0..size).rev().find(|&i| idx[i] < pts.len() - size + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}

#[test]
fn facets_match_brute_force_on_catalog() {
    for x in all_spaces() {
        assert_eq!(facet_set(&x), facet_oracle(&x), "{}", x.label());
        let k = x.facets().len() / 2;
        for j in 0..k {
            assert_eq!(x.facets()[j + k].coeffs, x.facets()[j].coeffs.negated());
            assert!(x.facets()[j].coeffs.is_lex_positive());
        }
    }
}

#[test]
fn polar_of_polar_is_original() {
    for x in all_spaces() {
        let k = x.facets().len() / 2;
        let reps: Vec<VectorN<Scalar>> = x.facets()[..k].iter().map(|f| f.coeffs.clone()).collect();
        let dual = PolygonalSpace::new(None, x.dimension(), reps).unwrap();
        let back = facet_set(&dual);
        let original: BTreeSet<Vec<Scalar>> = x.extreme_points().into_iter().map(|p| p.0).collect();
        assert_eq!(back, original, "{}", x.label());
    }
}

#[test]
fn planar_and_general_facets_agree_on_catalog() {
    for x in all_spaces().into_iter().filter(|x| x.dimension() == 2) {
        let dd: BTreeSet<Vec<Scalar>> = polar_dual_dd(2, x.generators())
            .unwrap()
            .into_iter()
            .map(|f| f.0)
            .collect();
        assert_eq!(facet_set(&x), dd, "{}", x.label());
    }
}

#[test]
fn generators_are_unit_extreme_points() {
    for x in all_spaces() {
        for p in x.signed_points() {
            let y = x.point(p);
            assert_eq!(x.gauge(&y).unwrap(), Scalar::one());
            assert_eq!(x.locate_extreme_point(&y).unwrap(), Some(p));
        }
        assert_eq!(x.extreme_point_count(), 2 * x.generators().len());
        assert!(!x
            .is_extreme_point(&vec![Scalar::zero(); x.dimension()])
            .unwrap());
    }
}

#[test]
fn catalog_facets() {
    let set = |rows: &[&[&str]]| -> BTreeSet<Vec<Scalar>> { rows.iter().map(|r| v(r).0).collect() };
    assert_eq!(
        facet_set(&space("linf2")),
        set(&[&["1", "0"], &["-1", "0"], &["0", "1"], &["0", "-1"]])
    );
    assert_eq!(
        facet_set(&space("l1_2")),
        set(&[&["1", "1"], &["-1", "-1"], &["1", "-1"], &["-1", "1"]])
    );
    assert_eq!(
        facet_set(&space("hexagon")),
        set(&[
            &["1", "1/3*sqrt(3)"],
            &["-1", "-1/3*sqrt(3)"],
            &["0", "2/3*sqrt(3)"],
            &["0", "-2/3*sqrt(3)"],
            &["1", "-1/3*sqrt(3)"],
            &["-1", "1/3*sqrt(3)"],
        ])
    );
    assert_eq!(space("octagon").facets().len(), 8);
    assert_eq!(space("xp8").facets().len(), 6);
    assert_eq!(space("linf3").facets().len(), 6);
    assert_eq!(space("l1_3").facets().len(), 8);
}

#[test]
fn extreme_point_examples() {
    let linf2 = space("linf2");
    assert!(linf2.is_extreme_point(&v(&["1", "-1"])).unwrap());
    assert!(!linf2.is_extreme_point(&v(&["1", "0"])).unwrap());
    let l1 = space("l1_2");
    assert!(l1.is_extreme_point(&v(&["0", "-1"])).unwrap());
    assert!(!l1.is_extreme_point(&v(&["1/2", "1/2"])).unwrap());
    assert_eq!(l1.gauge(&v(&["1/2", "1/2"])).unwrap(), Scalar::one());
    let hex = space("hexagon");
    assert_eq!(
        hex.locate_extreme_point(&v(&["1/2", "-1/2*sqrt(3)"]))
            .unwrap(),
        Some(SignedPoint {
            generator: 2,
            negated: true
        })
    );
    assert!(matches!(
        linf2.gauge(&v(&["1"])),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn affine_dependence_examples() {
    let dep = space("hexagon").affine_dependence().unwrap();
    assert_eq!(dep.basis, vec![0, 1]);
    assert_eq!(dep.dependent, 2);
    assert_eq!(dep.alphas, vec![s("-1"), s("1")]);
    let dep = space("affine_hexagon").affine_dependence().unwrap();
    assert_eq!(dep.alphas, vec![s("-1"), s("1")]);
    let dep = space("xp8").affine_dependence().unwrap();
    assert_eq!(dep.alphas, vec![s("1"), s("1"), s("1")]);
    assert!(matches!(
        space("octagon").affine_dependence(),
        Err(Error::WrongExtremeCount {
            expected: 6,
            found: 8
        })
    ));
    assert!(matches!(
        space("linf2").affine_dependence(),
        Err(Error::WrongExtremeCount { .. })
    ));
}

#[test]
fn validation_errors() {
    let mk = |rows: &[&[&str]]| {
        PolygonalSpace::new(None, rows[0].len(), rows.iter().map(|r| v(r)).collect())
    };
    assert!(matches!(
        mk(&[&["1", "0"], &["2", "0"]]),
        Err(Error::DegenerateSpace { rank: 1, .. })
    ));
    assert!(matches!(
        mk(&[&["1", "0"], &["0", "1"], &["-1", "0"]]),
        Err(Error::DuplicateGenerator {
            first: 0,
            second: 2
        })
    ));
    assert!(matches!(
        mk(&[&["1", "1"], &["1", "-1"], &["1", "0"]]),
        Err(Error::RedundantGenerator { index: 2, .. })
    ));
    assert!(matches!(
        mk(&[&["1", "0"], &["1/2", "1/2"], &["0", "1"]]),
        Err(Error::RedundantGenerator { index: 1, .. })
    ));
    assert!(matches!(
        mk(&[&["sqrt(2)", "0"], &["0", "sqrt(3)"]]),
        Err(Error::IncompatibleFields { .. })
    ));
    assert!(matches!(
        PolygonalSpace::new(None, 2, vec![v(&["1", "0"]), v(&["0", "1", "0"])]),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn rational_instantiation() {
    use ec_core::BigRational;
    let q = |n: i64| BigRational::from_integer(n.into());
    let x: RationalSpace = PolygonalSpace::new(
        None,
        2,
        vec![
            VectorN(vec![q(1), q(0)]),
            VectorN(vec![q(1), q(1)]),
            VectorN(vec![q(0), q(1)]),
        ],
    )
    .unwrap();
    assert_eq!(x.facets().len(), 6);
    assert_eq!(x.gauge(&[q(2), q(1)]).unwrap(), q(2));
}

fn arb_coord() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=8).prop_map(|(n, d)| Scalar::from_ratio_i64(n, d))
}

fn arb_point(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(arb_coord(), n)
}

fn arb_space_and_point() -> impl Strategy<Value = (Space, Vec<Scalar>)> {
    prop::sample::select(vec![
        "linf2",
        "l1_2",
        "hexagon",
        "octagon",
        "affine_hexagon",
        "linf3",
        "l1_3",
        "xp8",
    ])
    .prop_flat_map(|name| {
        let x = (*space(name)).clone();
        let n = x.dimension();
        (Just(x), arb_point(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauge_matches_hull_membership((x, p) in arb_space_and_point()) {
        let g = x.gauge(&p).unwrap();
        prop_assert_eq!(g <= Scalar::one(), hull_contains(&x, &p));
        prop_assert_eq!(x.contains(&p).unwrap(), g <= Scalar::one());
    }

    #[test]
    fn gauge_is_a_norm((x, p) in arb_space_and_point(), k in arb_coord(), q in arb_point(3)) {
        let g = x.gauge(&p).unwrap();
        let scaled: Vec<Scalar> = p.iter().map(|c| c.clone() * k.clone()).collect();
        prop_assert_eq!(x.gauge(&scaled).unwrap(), g.clone() * k.abs());
        prop_assert!(g.sign() >= 0);
        prop_assert_eq!(g.is_zero(), p.iter().all(|c| c.is_zero()));
        let q = &q[..x.dimension()];
        let sum: Vec<Scalar> = p.iter().zip(q).map(|(a, b)| a.clone() + b.clone()).collect();
        prop_assert!(x.gauge(&sum).unwrap() <= g + x.gauge(q).unwrap());
    }

    #[test]
    fn planar_facets_agree_with_double_description(
        pts in prop::collection::vec((-9i64..=9, -9i64..=9), 2..6)
    ) {
        let gens: Vec<VectorN<Scalar>> =
            pts.iter().map(|&(a, b)| VectorN(vec![Scalar::from(a), Scalar::from(b)])).collect();
        match PolygonalSpace::new(None, 2, gens.clone()) {
            Ok(x) => {
                let dd: BTreeSet<Vec<Scalar>> =
                    polar_dual_dd(2, &gens).unwrap().into_iter().map(|f| f.0).collect();
                prop_assert_eq!(facet_set(&x), dd);
            }
            Err(Error::RedundantGenerator { .. })
            | Err(Error::DuplicateGenerator { .. })
            | Err(Error::DegenerateSpace { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}
