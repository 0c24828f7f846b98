//! Pair-wide property audits over the full set of extreme contractions.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::enumerate::{build_ball, enumerate_vertices};
use crate::error::{Error, Result};
use crate::extremal::{
    is_extreme, lp_image_check, span_check, weak_lp_holds, ExtremalityCertificate,
};
use crate::field::ExactField;
use crate::operator::Operator;
use crate::space::{PolygonalSpace, VectorN};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    /// Every extreme contraction sends some extreme point to an extreme point.
    WeakLp,
    /// A norm-one operator is extreme iff it maps extreme points to extreme points.
    Lp,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::WeakLp => "weak-lp",
            Property::Lp => "lp",
        })
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak-lp" => Ok(Property::WeakLp),
            "lp" => Ok(Property::Lp),
            other => Err(Error::UnknownName(other.into())),
        }
    }
}

/// Sufficient conditions for the weak property when `|E_X| = 2n + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precondition {
    /// `Y = l_inf^m` with `m <= n`.
    SupNormTarget,
    /// `Y = l_1^m` with `m (m - 1) <= n`.
    L1Target,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// Extreme contraction with no extreme point mapped to an extreme point.
    NoExtremeImage,
    /// Extreme contraction mapping some extreme point off `E_Y`.
    NonExtremeImage,
    /// Operator with `T(E_X) ⊆ E_Y` that is not extreme.
    PreservingNotExtreme,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::NoExtremeImage => "no-extreme-image",
            ViolationKind::NonExtremeImage => "non-extreme-image",
            ViolationKind::PreservingNotExtreme => "preserving-not-extreme",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Violation<F> {
    pub kind: ViolationKind,
    pub operator: Operator<F>,
    pub certificate: ExtremalityCertificate<F>,
    pub images: Vec<VectorN<F>>,
}

#[derive(Clone, Debug)]
pub struct AuditReport<F> {
    pub domain: String,
    pub codomain: String,
    pub property: Property,
    pub vertex_count: usize,
    /// Operators with `T(E_X) ⊆ E_Y` examined by the `lp` audit.
    pub preserving_count: Option<usize>,
    pub violations: Vec<Violation<F>>,
}

impl<F> AuditReport<F> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_sup_norm_ball<F: ExactField>(y: &PolygonalSpace<F>) -> bool {
    let m = y.dimension();
    m < usize::BITS as usize
        && y.generators().len() == 1 << (m - 1)
        && y.generators()
            .iter()
            .flat_map(|g| g.iter())
            .all(|v| v.abs_value() == F::one())
}

fn is_l1_ball<F: ExactField>(y: &PolygonalSpace<F>) -> bool {
    let m = y.dimension();
    y.generators().len() == m
        && y.generators().iter().all(|g| {
            g.iter().filter(|v| !v.is_zero()).count() == 1
                && g.iter().all(|v| v.is_zero() || v.abs_value() == F::one())
        })
}

/// Whether `(X, Y)` meets the hypotheses of one of the weak-property results.
pub fn verify_theorem_precondition<F: ExactField>(
    x: &PolygonalSpace<F>,
    y: &PolygonalSpace<F>,
    which: Precondition,
) -> bool {
    let n = x.dimension();
    let m = y.dimension();
    if x.extreme_point_count() != 2 * n + 2 {
        return false;
    }
    match which {
        Precondition::SupNormTarget => m <= n && is_sup_norm_ball(y),
        Precondition::L1Target => m * (m - 1) <= n && is_l1_ball(y),
    }
}

pub const PRESERVING_SEARCH_LIMIT: usize = 1_000_000;

/// Operators with `T(E_X) ⊆ E_Y`: assign an extreme point of `Y` to each
/// basis generator and keep assignments whose remaining images land in `E_Y`.
pub fn extreme_preserving_operators<F: ExactField>(
    x: &Arc<PolygonalSpace<F>>,
    y: &Arc<PolygonalSpace<F>>,
) -> Result<Vec<Operator<F>>> {
    let n = x.dimension();
    let targets = y.extreme_points();
    let total = targets.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    if total > PRESERVING_SEARCH_LIMIT {
        return Err(Error::TooLarge {
            what: format!("{total} image assignments"),
        });
    }
    let mut found = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let images: Vec<VectorN<F>> = (0..n)
            .map(|_| {
                let t = targets[rest % targets.len()].clone();
                rest /= targets.len();
                t
            })
            .collect();
        let op = Operator::from_images(x.clone(), y.clone(), images)?;
        if lp_image_check(&op) {
            found.push(op);
        }
    }
    found.sort_by(|a, b| a.matrix().cmp(b.matrix()));
    found.dedup_by(|a, b| a.matrix() == b.matrix());
    Ok(found)
}

/// Enumerates `E_{L(X,Y)}` and checks `property` on every vertex.
///
/// Every vertex must also attain its norm on a spanning set of extreme
/// points; a vertex failing that, or a weak-property violation on a pair
/// meeting one of the sufficient preconditions, aborts with
/// [`Error::Falsification`].
pub fn audit_pair<F: ExactField>(
    x: Arc<PolygonalSpace<F>>,
    y: Arc<PolygonalSpace<F>>,
    property: Property,
) -> Result<AuditReport<F>> {
    let ball = build_ball(x.clone(), y.clone())?;
    let vertices = enumerate_vertices(&ball)?;

    let checked: Vec<Result<Option<Violation<F>>>> = vertices
        .vertices
        .par_iter()
        .map(|v| {
            if !span_check(v)? {
                return Err(Error::Falsification(format!(
                    "vertex {v} does not attain its norm on a spanning set"
                )));
            }
            let kind = match property {
                Property::WeakLp => {
                    let verdict = weak_lp_holds(v);
                    if verdict.holds {
                        return Ok(None);
                    }
                    ViolationKind::NoExtremeImage
                }
                Property::Lp => {
                    if lp_image_check(v) {
                        return Ok(None);
                    }
                    ViolationKind::NonExtremeImage
                }
            };
            Ok(Some(Violation {
                kind,
                operator: v.clone(),
                certificate: is_extreme(v)?,
                images: v.images(),
            }))
        })
        .collect();
    let mut violations = Vec::new();
    for c in checked {
        if let Some(v) = c? {
            violations.push(v);
        }
    }

    let mut preserving_count = None;
    if property == Property::Lp {
        let preserving = extreme_preserving_operators(&x, &y)?;
        preserving_count = Some(preserving.len());
        for op in preserving {
            if !vertices.contains(&op) {
                violations.push(Violation {
                    kind: ViolationKind::PreservingNotExtreme,
                    certificate: is_extreme(&op)?,
                    images: op.images(),
                    operator: op,
                });
            }
        }
    }

    let report = AuditReport {
        domain: x.label(),
        codomain: y.label(),
        property,
        vertex_count: vertices.count(),
        preserving_count,
        violations,
    };

    if property == Property::WeakLp && !report.holds() {
        for which in [Precondition::SupNormTarget, Precondition::L1Target] {
            if verify_theorem_precondition(&x, &y, which) {
                let listing: Vec<String> = report
                    .violations
                    .iter()
                    .map(|v| {
                        format!(
                            "{} images {:?}",
                            v.operator,
                            v.images.iter().map(|i| i.to_string()).collect::<Vec<_>>()
                        )
                    })
                    .collect();
                return Err(Error::Falsification(format!(
                    "({}, {}) meets {:?} but has {} violating vertices: {}",
                    report.domain,
                    report.codomain,
                    which,
                    report.violations.len(),
                    listing.join("; ")
                )));
            }
        }
    }
    Ok(report)
}
