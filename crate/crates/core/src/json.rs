//! JSON file formats. All numbers are scalar literals (`"1/2+1/2*sqrt(3)"`).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::audit::{AuditReport, Violation};
use crate::catalog;
use crate::enumerate::VertexSet;
use crate::error::{Error, Result};
use crate::extremal::{ExtremalityCertificate, WeakLpVerdict, Witness};
use crate::field::ExactField;
use crate::lemma::LemmaReport;
use crate::linalg::Matrix;
use crate::operator::{ActivePair, ActiveSet, Operator};
use crate::scalar::{FieldSpec, Scalar};
use crate::space::{PolygonalSpace, SignedPoint, VectorN};

/// Violations listed inline in an audit report; the rest go to a side file.
pub const INLINE_VIOLATIONS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    pub d: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub name: String,
    pub dimension: usize,
    pub field: FieldJson,
    pub generators: Vec<Vec<Scalar>>,
    /// Derived; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<Scalar>>>,
}

impl SpaceJson {
    pub fn from_space(space: &PolygonalSpace<Scalar>, with_facets: bool) -> Self {
        SpaceJson {
            name: space.label(),
            dimension: space.dimension(),
            field: FieldJson {
                d: space.radicand(),
            },
            generators: space.generators().iter().map(|g| g.0.clone()).collect(),
            facets: with_facets
                .then(|| space.facets().iter().map(|f| f.coeffs.0.clone()).collect()),
        }
    }

    pub fn to_space(&self) -> Result<PolygonalSpace<Scalar>> {
        let field = FieldSpec::new(self.field.d)?;
        for x in self.generators.iter().flatten() {
            if !field.contains(x.radicand()) {
                return Err(Error::IncompatibleFields {
                    left: field.d,
                    right: x.radicand(),
                });
            }
        }
        PolygonalSpace::new(
            Some(self.name.clone()),
            self.dimension,
            self.generators.iter().cloned().map(VectorN).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Name(String),
    Inline(SpaceJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub domain: SpaceRef,
    pub codomain: SpaceRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<Vec<Scalar>>>,
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// A catalog name, or a path to a space JSON file (tried as given, then
/// relative to `base`).
pub fn resolve_space(name: &str, base: Option<&Path>) -> Result<Arc<PolygonalSpace<Scalar>>> {
    if catalog::canonical_name(name).is_some() {
        return catalog::get_space(name);
    }
    let mut candidates = vec![PathBuf::from(name)];
    if let Some(b) = base {
        candidates.push(b.join(name));
    }
    for path in &candidates {
        if path.is_file() {
            let parsed: SpaceJson = from_json(&read_file(path)?)?;
            return Ok(Arc::new(parsed.to_space()?));
        }
    }
    Err(Error::UnknownName(name.into()))
}

fn resolve_ref(r: &SpaceRef, base: Option<&Path>) -> Result<Arc<PolygonalSpace<Scalar>>> {
    match r {
        SpaceRef::Name(n) => resolve_space(n, base),
        SpaceRef::Inline(s) => Ok(Arc::new(s.to_space()?)),
    }
}

impl OperatorJson {
    pub fn to_operator(&self, base: Option<&Path>) -> Result<Operator<Scalar>> {
        let domain = resolve_ref(&self.domain, base)?;
        let codomain = resolve_ref(&self.codomain, base)?;
        match (&self.matrix, &self.images) {
            (Some(m), None) => Operator::new(domain, codomain, m.clone()),
            (None, Some(images)) => Operator::from_images(
                domain,
                codomain,
                images.iter().cloned().map(VectorN).collect(),
            ),
            _ => Err(Error::Json(
                "operator needs exactly one of \"matrix\" or \"images\"".into(),
            )),
        }
    }

    pub fn from_operator(op: &Operator<Scalar>) -> Self {
        let space_ref = |s: &PolygonalSpace<Scalar>| match s.name() {
            Some(n) if catalog::canonical_name(n).is_some() => SpaceRef::Name(n.to_string()),
            _ => SpaceRef::Inline(SpaceJson::from_space(s, false)),
        };
        OperatorJson {
            domain: space_ref(op.domain()),
            codomain: space_ref(op.codomain()),
            matrix: Some(op.matrix().clone()),
            images: None,
        }
    }
}

/// `catalog:NAME` or a path to an operator JSON file.
pub fn resolve_operator(spec: &str) -> Result<Operator<Scalar>> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::get_operator(name);
    }
    let path = Path::new(spec);
    if !path.is_file() && catalog::operator_names().any(|n| n == spec) {
        return catalog::get_operator(spec);
    }
    let parsed: OperatorJson = from_json(&read_file(path)?)?;
    parsed.to_operator(path.parent())
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub generator: usize,
    pub facet: usize,
}

impl From<&ActivePair> for PairJson {
    fn from(p: &ActivePair) -> Self {
        PairJson {
            generator: p.generator,
            facet: p.facet,
        }
    }
}

impl From<&PairJson> for ActivePair {
    fn from(p: &PairJson) -> Self {
        ActivePair {
            generator: p.generator,
            facet: p.facet,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub verdict: String,
    pub active_pairs: Vec<PairJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanning: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Matrix<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus: Option<Matrix<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus: Option<Matrix<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus_norm: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus_norm: Option<Scalar>,
}

impl CertificateJson {
    pub fn from_certificate(cert: &ExtremalityCertificate<Scalar>) -> Self {
        let active_pairs: Vec<PairJson> = cert.active.pairs.iter().map(PairJson::from).collect();
        let mut out = CertificateJson {
            verdict: String::new(),
            active_pairs,
            spanning: None,
            determinant: None,
            direction: None,
            step: None,
            plus: None,
            minus: None,
            plus_norm: None,
            minus_norm: None,
        };
        match &cert.witness {
            Witness::Extreme {
                spanning,
                determinant,
            } => {
                out.verdict = "Extreme".into();
                out.spanning = Some(
                    spanning
                        .iter()
                        .map(|p| {
                            cert.active
                                .pairs
                                .iter()
                                .position(|q| q == p)
                                .expect("spanning pair is active")
                        })
                        .collect(),
                );
                out.determinant = Some(determinant.clone());
            }
            Witness::NotExtreme {
                direction,
                step,
                plus,
                minus,
                plus_norm,
                minus_norm,
            } => {
                out.verdict = "NotExtreme".into();
                out.direction = Some(direction.clone());
                out.step = Some(step.clone());
                out.plus = Some(plus.clone());
                out.minus = Some(minus.clone());
                out.plus_norm = Some(plus_norm.clone());
                out.minus_norm = Some(minus_norm.clone());
            }
        }
        out
    }

    pub fn to_certificate(&self) -> Result<ExtremalityCertificate<Scalar>> {
        let active = ActiveSet {
            pairs: self.active_pairs.iter().map(ActivePair::from).collect(),
        };
        let missing = |field: &str| Error::Json(format!("certificate is missing \"{field}\""));
        let witness = match self.verdict.as_str() {
            "Extreme" => {
                let spanning =
                    self.spanning
                        .as_ref()
                        .ok_or_else(|| missing("spanning"))?
                        .iter()
                        .map(|&i| {
                            active.pairs.get(i).copied().ok_or_else(|| {
                                Error::Json(format!("spanning index {i} out of range"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                Witness::Extreme {
                    spanning,
                    determinant: self
                        .determinant
                        .clone()
                        .ok_or_else(|| missing("determinant"))?,
                }
            }
            "NotExtreme" => Witness::NotExtreme {
                direction: self.direction.clone().ok_or_else(|| missing("direction"))?,
                step: self.step.clone().ok_or_else(|| missing("step"))?,
                plus: self.plus.clone().ok_or_else(|| missing("plus"))?,
                minus: self.minus.clone().ok_or_else(|| missing("minus"))?,
                plus_norm: self.plus_norm.clone().ok_or_else(|| missing("plus_norm"))?,
                minus_norm: self
                    .minus_norm
                    .clone()
                    .ok_or_else(|| missing("minus_norm"))?,
            },
            other => return Err(Error::Json(format!("unknown verdict {other}"))),
        };
        Ok(ExtremalityCertificate { active, witness })
    }
}

fn point_label(p: SignedPoint) -> String {
    p.to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakLpJson {
    pub holds: bool,
    pub witness: Option<String>,
    pub images: Vec<Vec<Scalar>>,
}

impl From<&WeakLpVerdict<Scalar>> for WeakLpJson {
    fn from(v: &WeakLpVerdict<Scalar>) -> Self {
        WeakLpJson {
            holds: v.holds,
            witness: v.witness.map(point_label),
            images: v.images.iter().map(|i| i.0.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormJson {
    pub matrix: Matrix<Scalar>,
    pub op_norm: Scalar,
    pub attainment_set: Vec<String>,
    pub images: Vec<Vec<Scalar>>,
}

impl NormJson {
    pub fn from_operator(op: &Operator<Scalar>) -> Self {
        NormJson {
            matrix: op.matrix().clone(),
            op_norm: op.op_norm(),
            attainment_set: op
                .attainment_set()
                .map(|s| s.into_iter().map(point_label).collect())
                .unwrap_or_default(),
            images: op.images().into_iter().map(|v| v.0).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalJson {
    pub matrix: Matrix<Scalar>,
    pub op_norm: Scalar,
    pub certificate: CertificateJson,
    pub weak_lp: WeakLpJson,
    pub lp_image: bool,
    /// `null` unless the norm is one.
    pub span_check: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexSetJson {
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Matrix<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
}

impl VertexSetJson {
    pub fn from_vertices(set: &VertexSet<Scalar>, count_only: bool) -> Self {
        VertexSetJson {
            count: set.count(),
            vertices: (!count_only)
                .then(|| set.vertices.iter().map(|v| v.matrix().clone()).collect()),
            oracle_agrees: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub kind: String,
    pub matrix: Matrix<Scalar>,
    pub certificate: CertificateJson,
    pub images: Vec<Vec<Scalar>>,
}

impl From<&Violation<Scalar>> for ViolationJson {
    fn from(v: &Violation<Scalar>) -> Self {
        ViolationJson {
            kind: v.kind.to_string(),
            matrix: v.operator.matrix().clone(),
            certificate: CertificateJson::from_certificate(&v.certificate),
            images: v.images.iter().map(|i| i.0.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditJson {
    pub domain: String,
    pub codomain: String,
    pub property: String,
    pub verdict: String,
    pub vertex_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preserving_count: Option<usize>,
    pub violation_count: usize,
    pub truncated: bool,
    pub violations: Vec<ViolationJson>,
}

impl AuditJson {
    /// The report with at most [`INLINE_VIOLATIONS`] violations inline, and
    /// the full violation list.
    pub fn from_report(report: &AuditReport<Scalar>) -> (Self, Vec<ViolationJson>) {
        let all: Vec<ViolationJson> = report.violations.iter().map(ViolationJson::from).collect();
        let json = AuditJson {
            domain: report.domain.clone(),
            codomain: report.codomain.clone(),
            property: report.property.to_string(),
            verdict: if report.holds() { "holds" } else { "fails" }.into(),
            vertex_count: report.vertex_count,
            preserving_count: report.preserving_count,
            violation_count: all.len(),
            truncated: all.len() > INLINE_VIOLATIONS,
            violations: all.iter().take(INLINE_VIOLATIONS).cloned().collect(),
        };
        (json, all)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaJson {
    pub m: usize,
    pub k: usize,
    pub claim: String,
    pub verdict: String,
    pub families_checked: u64,
    pub triple_free: u64,
    pub counterexample: Option<Vec<Vec<usize>>>,
}

impl From<&LemmaReport> for LemmaJson {
    fn from(r: &LemmaReport) -> Self {
        LemmaJson {
            m: r.m,
            k: r.k,
            claim: r.claim.to_string(),
            verdict: if r.holds { "holds" } else { "fails" }.into(),
            families_checked: r.families_checked,
            triple_free: r.triple_free,
            counterexample: r.counterexample.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub error: ErrorBody,
}

impl From<&Error> for ErrorJson {
    fn from(e: &Error) -> Self {
        ErrorJson {
            error: ErrorBody {
                kind: e.kind().into(),
                message: e.to_string(),
            },
        }
    }
}
