//! Exact analysis of extreme contractions between finite-dimensional
//! polygonal normed spaces.
//!
//! A polygonal space is given by the extreme points of its (centrally
//! symmetric) unit ball. Operators between two such spaces form another
//! polytope, the contraction ball, whose vertices are the extreme
//! contractions. This crate enumerates those vertices exactly, certifies
//! extremality of individual operators, and audits pairs of spaces for the
//! image properties of extreme contractions:
//!
//! * **weak L-P**: every extreme contraction maps at least one extreme point
//!   of the domain ball onto an extreme point of the codomain ball;
//! * **L-P**: a norm-one operator is extreme iff it maps every extreme point
//!   onto an extreme point.
//!
//! All geometry is generic over [`ExactField`]; the crate ships the
//! quadratic-field [`Scalar`] (covering `Q`, `Q(sqrt 2)`, `Q(sqrt 3)`, ...)
//! and [`BigRational`]. The aliases below fix the scalar type.

pub mod audit;
pub mod catalog;
pub mod dd;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod field;
pub mod json;
pub mod lemma;
pub mod linalg;
pub mod operator;
pub mod scalar;
pub mod space;

pub use num_rational::BigRational;

pub use error::{Error, Result};
pub use field::ExactField;
pub use scalar::{FieldSpec, Scalar};

pub type Space = space::PolygonalSpace<Scalar>;
pub type Vector = space::VectorN<Scalar>;
pub type Operator = operator::Operator<Scalar>;
pub type Certificate = extremal::ExtremalityCertificate<Scalar>;
pub type Ball = enumerate::ContractionBall<Scalar>;
pub type Vertices = enumerate::VertexSet<Scalar>;
pub type Report = audit::AuditReport<Scalar>;

pub type RationalSpace = space::PolygonalSpace<BigRational>;
pub type RationalVector = space::VectorN<BigRational>;
pub type RationalOperator = operator::Operator<BigRational>;
pub type RationalBall = enumerate::ContractionBall<BigRational>;
pub type RationalVertices = enumerate::VertexSet<BigRational>;
