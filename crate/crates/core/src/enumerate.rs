//! The contraction polytope of `L(X, Y)` and its vertices.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::dd;
use crate::error::{Error, Result};
use crate::field::ExactField;
use crate::linalg;
use crate::operator::{check_fields, constraint_functional, Operator};
use crate::space::{combinations, PolygonalSpace};

/// `coeffs . vec(T) <= 1`, i.e. `f_facet(T g_generator) <= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace<F> {
    pub generator: usize,
    pub facet: usize,
    pub coeffs: Vec<F>,
}

/// `B_{L(X,Y)}` as an intersection of halfspaces in row-major matrix
/// coordinates. Halfspaces are ordered generator-major, facet-minor.
#[derive(Clone, Debug)]
pub struct ContractionBall<F> {
    domain: Arc<PolygonalSpace<F>>,
    codomain: Arc<PolygonalSpace<F>>,
    halfspaces: Vec<Halfspace<F>>,
}

pub fn build_ball<F: ExactField>(
    domain: Arc<PolygonalSpace<F>>,
    codomain: Arc<PolygonalSpace<F>>,
) -> Result<ContractionBall<F>> {
    check_fields(&domain, &codomain)?;
    let mut halfspaces = Vec::new();
    for (i, g) in domain.generators().iter().enumerate() {
        for (j, f) in codomain.facets().iter().enumerate() {
            halfspaces.push(Halfspace {
                generator: i,
                facet: j,
                coeffs: constraint_functional(g, f),
            });
        }
    }
    Ok(ContractionBall {
        domain,
        codomain,
        halfspaces,
    })
}

impl<F: ExactField> ContractionBall<F> {
    pub fn domain(&self) -> &Arc<PolygonalSpace<F>> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<PolygonalSpace<F>> {
        &self.codomain
    }

    pub fn halfspaces(&self) -> &[Halfspace<F>] {
        &self.halfspaces
    }

    /// Dimension of the ambient matrix space, `m * n`.
    pub fn dimension(&self) -> usize {
        self.domain.dimension() * self.codomain.dimension()
    }

    pub fn contains(&self, op: &Operator<F>) -> bool {
        let flat = op.flat();
        self.halfspaces
            .iter()
            .all(|h| linalg::dot(&h.coeffs, &flat) <= F::one())
    }

    fn operator(&self, flat: &[F]) -> Result<Operator<F>> {
        Operator::from_flat(self.domain.clone(), self.codomain.clone(), flat)
    }

    fn normals(&self) -> Vec<Vec<F>> {
        self.halfspaces.iter().map(|h| h.coeffs.clone()).collect()
    }
}

/// Extreme contractions in canonical (lexicographic matrix) order.
#[derive(Clone, Debug)]
pub struct VertexSet<F> {
    pub vertices: Vec<Operator<F>>,
}

impl<F: ExactField> VertexSet<F> {
    fn from_flats(ball: &ContractionBall<F>, flats: Vec<Vec<F>>) -> Result<Self> {
        let unique: BTreeSet<Vec<F>> = flats.into_iter().collect();
        let vertices = unique
            .into_iter()
            .map(|f| ball.operator(&f))
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexSet { vertices })
    }

    pub fn count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, op: &Operator<F>) -> bool {
        self.vertices
            .binary_search_by(|v| v.matrix().cmp(op.matrix()))
            .is_ok()
    }

    pub fn same_set(&self, other: &VertexSet<F>) -> bool {
        self.count() == other.count()
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(a, b)| a.matrix() == b.matrix())
    }
}

/// All vertices of the ball by homogenized double description.
pub fn enumerate_vertices<F: ExactField>(ball: &ContractionBall<F>) -> Result<VertexSet<F>> {
    let flats = dd::polytope_vertices(&ball.normals(), ball.dimension())?;
    VertexSet::from_flats(ball, flats)
}

pub const BRUTE_FORCE_LIMIT: usize = 9;

/// Independent oracle: solve every `m*n`-subset of boundary hyperplanes and
/// keep feasible unique solutions.
pub fn brute_force_vertices<F: ExactField>(ball: &ContractionBall<F>) -> Result<VertexSet<F>> {
    let dim = ball.dimension();
    if dim > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: format!("matrix dimension {dim} > {BRUTE_FORCE_LIMIT}"),
        });
    }
    let normals = ball.normals();
    if linalg::rank(&normals, dim) < dim {
        return Err(Error::UnboundedRegion);
    }
    let ones = vec![F::one(); dim];
    let mut found = Vec::new();
    for subset in combinations(normals.len(), dim) {
        let a: Vec<Vec<F>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let Some(x) = linalg::solve(&a, &ones) else {
            continue;
        };
        if normals.iter().all(|h| linalg::dot(h, &x) <= F::one()) {
            found.push(x);
        }
    }
    VertexSet::from_flats(ball, found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_space;

    #[test]
    fn halfspace_counts() {
        let hex = get_space("hexagon").unwrap();
        let b = build_ball(hex.clone(), get_space("linf2").unwrap()).unwrap();
        assert_eq!((b.dimension(), b.halfspaces().len()), (4, 12));
        let b = build_ball(hex, get_space("linf3").unwrap()).unwrap();
        assert_eq!((b.dimension(), b.halfspaces().len()), (6, 18));
        let b = build_ball(get_space("linf2").unwrap(), get_space("linf1").unwrap()).unwrap();
        assert_eq!((b.dimension(), b.halfspaces().len()), (2, 4));
    }

    #[test]
    fn incompatible_fields_rejected() {
        let err =
            build_ball(get_space("hexagon").unwrap(), get_space("octagon").unwrap()).unwrap_err();
        assert_eq!(err, Error::IncompatibleFields { left: 3, right: 2 });
    }

    #[test]
    fn brute_force_guard() {
        let b = build_ball(get_space("xp8").unwrap(), get_space("linf4").unwrap()).unwrap();
        assert!(matches!(
            brute_force_vertices(&b),
            Err(Error::TooLarge { .. })
        ));
    }
}
