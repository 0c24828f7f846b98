mod common;

use common::space;
use ec_core::audit::{
    audit_pair, extreme_preserving_operators, verify_theorem_precondition, Precondition, Property,
    ViolationKind,
};
use ec_core::catalog::get_operator;
use ec_core::enumerate::{build_ball, enumerate_vertices};
use ec_core::extremal::{lp_image_check, verify_certificate};
use ec_core::json::{to_json, AuditJson};
use ec_core::lemma::{lemma_check, Claim};
use ec_core::{Error, Report};

fn audit(x: &str, y: &str, p: Property) -> Report {
    audit_pair(space(x), space(y), p).unwrap()
}

fn check_report(report: &Report) {
    for v in &report.violations {
        verify_certificate(&v.operator, &v.certificate).unwrap();
        match v.kind {
            ViolationKind::NoExtremeImage | ViolationKind::NonExtremeImage => {
                assert!(v.certificate.is_extreme())
            }
            ViolationKind::PreservingNotExtreme => assert!(!v.certificate.is_extreme()),
        }
        assert_eq!(v.images, v.operator.images());
    }
}

#[test]
fn weak_property_holds_under_preconditions() {
    for (x, y, count) in [
        ("hexagon", "linf2", 36),
        ("hexagon", "l1_2", 36),
        ("xp8", "l1_2", 36),
        ("hexagon", "linf1", 6),
    ] {
        let report = audit(x, y, Property::WeakLp);
        assert!(report.holds(), "{x}->{y}");
        assert_eq!(report.vertex_count, count, "{x}->{y}");
    }
    assert!(audit("xp8", "linf3", Property::WeakLp).holds());
}

#[test]
fn weak_property_failures() {
    for (x, y, ex, vertices, violations) in [
        ("hexagon", "linf3", "ex1", 216, 48),
        ("hexagon", "l1_3", "ex2", 138, 48),
        ("octagon", "linf2", "ex3", 64, 16),
    ] {
        let report = audit(x, y, Property::WeakLp);
        assert!(!report.holds());
        assert_eq!(report.vertex_count, vertices, "{x}->{y}");
        assert_eq!(report.violations.len(), violations, "{x}->{y}");
        let named = get_operator(ex).unwrap();
        assert!(
            report.violations.iter().any(|v| v.operator == named),
            "{ex} not reported"
        );
        check_report(&report);
    }
}

#[test]
fn preconditions() {
    use Precondition::*;
    let pre = |x: &str, y: &str, w| verify_theorem_precondition(&space(x), &space(y), w);
    assert!(pre("hexagon", "linf2", SupNormTarget));
    assert!(!pre("hexagon", "linf3", SupNormTarget));
    assert!(pre("hexagon", "l1_2", L1Target));
    assert!(!pre("hexagon", "l1_3", L1Target));
    assert!(!pre("octagon", "linf2", SupNormTarget));
    assert!(pre("xp8", "linf3", SupNormTarget));
    assert!(pre("xp8", "l1_2", L1Target));
    assert!(!pre("hexagon", "l1_2", SupNormTarget));
    // l1_2 and linf2 are isometric but only the literal ball shape counts
    assert!(!pre("linf2", "linf2", SupNormTarget));
}

#[test]
fn lp_audit() {
    let report = audit("linf2", "linf2", Property::Lp);
    assert!(report.holds());
    assert_eq!(report.vertex_count, 16);
    assert_eq!(report.preserving_count, Some(16));

    for (x, y) in [
        ("hexagon", "linf2"),
        ("octagon", "linf2"),
        ("hexagon", "l1_2"),
        ("linf3", "linf2"),
    ] {
        let report = audit(x, y, Property::Lp);
        check_report(&report);
        let ball = build_ball(space(x), space(y)).unwrap();
        let vertices = enumerate_vertices(&ball).unwrap();
        let preserving = extreme_preserving_operators(&space(x), &space(y)).unwrap();
        assert_eq!(report.preserving_count, Some(preserving.len()));
        let expected = vertices
            .vertices
            .iter()
            .filter(|t| !lp_image_check(t))
            .count()
            + preserving.iter().filter(|t| !vertices.contains(t)).count();
        assert_eq!(report.violations.len(), expected, "{x}->{y}");
    }
}

#[test]
fn audits_are_deterministic_across_thread_counts() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let (json, all) = AuditJson::from_report(&audit("hexagon", "linf3", Property::WeakLp));
            (to_json(&json), to_json(&all))
        })
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(3));
}

#[test]
fn audit_errors() {
    assert!(matches!(
        audit_pair(space("hexagon"), space("octagon"), Property::WeakLp),
        Err(Error::IncompatibleFields { .. })
    ));
    assert!("strong".parse::<Property>().is_err());
}

#[test]
fn lemma_small_universes() {
    for (m, k) in [(2, 3), (2, 4), (3, 7), (3, 8)] {
        let r = lemma_check(m, k, Claim::HeavyTriple).unwrap();
        assert!(r.holds, "m={m} k={k}");
        assert_eq!(r.triple_free, 0);
    }
    assert_eq!(
        lemma_check(3, 7, Claim::HeavyTriple)
            .unwrap()
            .families_checked,
        120
    );
    for m in [2, 3] {
        let r = lemma_check(m, m * (m - 1), Claim::PairCover).unwrap();
        assert!(r.holds);
        // the double pair cover is the only triple-free family
        assert_eq!(r.triple_free, 1);
        assert!(r.counterexample.is_none());
    }
}

#[test]
fn lemma_four_element_universe() {
    let r = lemma_check(4, 13, Claim::HeavyTriple).unwrap();
    assert!(r.holds);
    let r = lemma_check(4, 12, Claim::PairCover).unwrap();
    assert!(r.holds);
    assert_eq!(r.triple_free, 1);
}
