mod common;

use std::sync::OnceLock;

use common::{mat, s, space};
use ec_core::catalog::get_operator;
use ec_core::enumerate::{brute_force_vertices, build_ball};
use ec_core::extremal::{
    is_extreme, lp_image_check, span_check, verify_certificate, weak_lp_holds, Witness,
};
use ec_core::{Error, Operator, Scalar, Vertices};
use num_traits::One;

const SMALL_PAIRS: &[(&str, &str)] = &[
    ("linf2", "linf1"),
    ("hexagon", "linf1"),
    ("linf2", "linf2"),
    ("linf2", "l1_2"),
    ("hexagon", "linf2"),
    ("hexagon", "l1_2"),
    ("affine_hexagon", "linf2"),
    ("octagon", "linf2"),
    ("octagon", "l1_2"),
    ("hexagon", "linf3"),
    ("linf3", "linf2"),
    ("xp8", "linf2"),
];

/// Brute-force vertex sets of `SMALL_PAIRS`, computed once.
fn oracle_vertices() -> &'static [Vertices] {
    static CACHE: OnceLock<Vec<Vertices>> = OnceLock::new();
    CACHE.get_or_init(|| {
        SMALL_PAIRS
            .iter()
            .map(|&(x, y)| brute_force_vertices(&build_ball(space(x), space(y)).unwrap()).unwrap())
            .collect()
    })
}

fn check(op: &Operator) -> bool {
    let cert = is_extreme(op).unwrap();
    verify_certificate(op, &cert).unwrap_or_else(|e| panic!("{op}: {e}"));
    cert.is_extreme()
}

#[test]
fn named_examples() {
    for name in ["ex1", "ex2", "ex3"] {
        let op = get_operator(name).unwrap();
        assert!(check(&op), "{name}");
        assert!(!weak_lp_holds(&op).holds, "{name}");
        assert!(!lp_image_check(&op), "{name}");
        assert!(span_check(&op).unwrap(), "{name}");
    }
    let id = Operator::new(
        space("linf2"),
        space("linf2"),
        mat(&[&["1", "0"], &["0", "1"]]),
    )
    .unwrap();
    assert!(check(&id));
    let verdict = weak_lp_holds(&id);
    assert!(verdict.holds);
    assert_eq!(verdict.witness.unwrap().to_string(), "+x1");
    assert!(lp_image_check(&id));
}

#[test]
fn non_extreme_examples() {
    let half = get_operator("ex1").unwrap().scaled(&s("1/2"));
    let cert = is_extreme(&half).unwrap();
    assert!(!cert.is_extreme());
    assert!(cert.active.is_empty());
    verify_certificate(&half, &cert).unwrap();
    assert!(matches!(span_check(&half), Err(Error::NormNotOne(_))));

    let zero = Operator::zero(space("hexagon"), space("linf2"));
    assert!(!check(&zero));
    assert!(matches!(
        is_extreme(&zero.plus_scaled(&mat(&[&["3", "0"], &["0", "0"]]), &Scalar::one())),
        Err(Error::NormExceedsOne(_))
    ));
}

#[test]
fn rank_one_operator_fails_span_check() {
    let op = Operator::new(
        space("hexagon"),
        space("linf2"),
        mat(&[&["1", "0"], &["1", "0"]]),
    )
    .unwrap();
    // images of x2, x3 have norm 1/2, so the norm is attained only at +-x1
    let hex = space("hexagon");
    let linf2 = space("linf2");
    assert_eq!(
        linf2
            .gauge(&op.apply(&hex.generators()[1]).unwrap())
            .unwrap(),
        s("1/2")
    );
    assert_eq!(
        linf2
            .gauge(&op.apply(&hex.generators()[2]).unwrap())
            .unwrap(),
        s("1/2")
    );
    assert_eq!(op.op_norm(), Scalar::one());
    assert!(!span_check(&op).unwrap());
    assert!(!check(&op));
}

#[test]
fn tampered_certificates_are_rejected() {
    let ex1 = get_operator("ex1").unwrap();
    let mut cert = is_extreme(&ex1).unwrap();
    if let Witness::Extreme { determinant, .. } = &mut cert.witness {
        *determinant = determinant.clone() + Scalar::one();
    }
    assert!(verify_certificate(&ex1, &cert).is_err());

    let half = ex1.scaled(&s("1/2"));
    let mut cert = is_extreme(&half).unwrap();
    if let Witness::NotExtreme { step, .. } = &mut cert.witness {
        *step = step.clone() * s("1000");
    }
    assert!(verify_certificate(&half, &cert).is_err());

    // an extreme certificate presented for a different operator
    let good = is_extreme(&ex1).unwrap();
    assert!(verify_certificate(&half, &good).is_err());
}

#[test]
fn decisions_agree_with_brute_force_vertices() {
    for (&(x, y), vertices) in SMALL_PAIRS.iter().zip(oracle_vertices()) {
        let ops = &vertices.vertices;
        for op in ops {
            assert!(check(op), "{x}->{y}: vertex {op} judged not extreme");
            assert!(check(&op.negated()));
        }
        // deterministic sample of midpoints and three-point combinations
        let k = ops.len();
        for i in 0..k.min(24) {
            let j = (i * 7 + 3) % k;
            if i == j {
                continue;
            }
            let mid = ops[i].add(&ops[j]).scaled(&s("1/2"));
            assert!(!vertices.contains(&mid));
            assert!(!check(&mid), "{x}->{y}: midpoint {mid} judged extreme");
            assert!(!check(&mid.negated()));
            let l = (i * 5 + 1) % k;
            if l != i && l != j {
                let combo = ops[i]
                    .scaled(&s("1/2"))
                    .add(&ops[j].scaled(&s("1/3")))
                    .add(&ops[l].scaled(&s("1/6")));
                assert!(!check(&combo), "{x}->{y}: combination judged extreme");
            }
        }
    }
}

#[test]
fn weak_verdict_matches_images() {
    for vertices in oracle_vertices() {
        for op in &vertices.vertices {
            let verdict = weak_lp_holds(op);
            let cod = op.codomain();
            let hits = op
                .images()
                .iter()
                .filter(|img| cod.is_extreme_point(img).unwrap())
                .count();
            assert_eq!(verdict.holds, hits > 0);
            assert_eq!(lp_image_check(op), hits == op.images().len());
        }
    }
}
