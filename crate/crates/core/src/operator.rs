//! Linear operators between polygonal spaces.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{common_radicand, ExactField};
use crate::linalg::{self, Matrix};
use crate::space::{FacetForm, PolygonalSpace, SignedPoint, VectorN};

/// `T : X -> Y` stored as an `m x n` matrix against standard coordinates.
#[derive(Clone, Debug)]
pub struct Operator<F> {
    matrix: Matrix<F>,
    domain: Arc<PolygonalSpace<F>>,
    codomain: Arc<PolygonalSpace<F>>,
}

/// A tight inequality `f_facet(T g_generator) = 1`; only the `+g` side of
/// each generator pair is stored, `(-g, -f)` being implied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActivePair {
    pub generator: usize,
    pub facet: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActiveSet {
    pub pairs: Vec<ActivePair>,
}

impl ActiveSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Generator indices touched by at least one pair, ascending.
    pub fn generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.pairs.iter().map(|p| p.generator).collect();
        g.dedup();
        g
    }
}

/// The functional `T -> f(T g)` on row-major flattened `m x n` matrices.
pub fn constraint_functional<F: ExactField>(generator: &[F], facet: &FacetForm<F>) -> Vec<F> {
    let mut row = Vec::with_capacity(generator.len() * facet.coeffs.dim());
    for fr in facet.coeffs.iter() {
        for gc in generator {
            row.push(fr.clone() * gc.clone());
        }
    }
    row
}

pub(crate) fn check_fields<F: ExactField>(
    x: &PolygonalSpace<F>,
    y: &PolygonalSpace<F>,
) -> Result<u64> {
    common_radicand(x.radicand(), y.radicand()).ok_or(Error::IncompatibleFields {
        left: x.radicand(),
        right: y.radicand(),
    })
}

impl<F: ExactField> Operator<F> {
    pub fn new(
        domain: Arc<PolygonalSpace<F>>,
        codomain: Arc<PolygonalSpace<F>>,
        matrix: Matrix<F>,
    ) -> Result<Self> {
        let field = check_fields(&domain, &codomain)?;
        let (m, n) = (codomain.dimension(), domain.dimension());
        if matrix.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: matrix.len(),
            });
        }
        for row in &matrix {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for x in row {
                if common_radicand(field, x.radicand()).is_none() {
                    return Err(Error::IncompatibleFields {
                        left: field,
                        right: x.radicand(),
                    });
                }
            }
        }
        Ok(Operator {
            matrix,
            domain,
            codomain,
        })
    }

    /// Builds `T` from the images of the first `n` independent generators of
    /// the domain (the ones returned by `basis_indices`).
    pub fn from_images(
        domain: Arc<PolygonalSpace<F>>,
        codomain: Arc<PolygonalSpace<F>>,
        images: Vec<VectorN<F>>,
    ) -> Result<Self> {
        let n = domain.dimension();
        let m = codomain.dimension();
        if images.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|v| v.dim() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.dim(),
            });
        }
        let basis = domain.basis_indices();
        let gens: Vec<Vec<F>> = basis
            .iter()
            .map(|&b| domain.generators()[b].0.clone())
            .collect();
        // row r of T satisfies T[r] . g_b = image_b[r] for every basis b
        let mut matrix = Vec::with_capacity(m);
        for r in 0..m {
            let rhs: Vec<F> = images.iter().map(|img| img[r].clone()).collect();
            let row = linalg::solve(&gens, &rhs)
                .ok_or_else(|| Error::InternalGeometry("generator basis is singular".into()))?;
            matrix.push(row);
        }
        Operator::new(domain, codomain, matrix)
    }

    pub fn zero(domain: Arc<PolygonalSpace<F>>, codomain: Arc<PolygonalSpace<F>>) -> Self {
        let matrix = vec![vec![F::zero(); domain.dimension()]; codomain.dimension()];
        Operator {
            matrix,
            domain,
            codomain,
        }
    }

    /// Reshapes a row-major vector of length `m * n`.
    pub fn from_flat(
        domain: Arc<PolygonalSpace<F>>,
        codomain: Arc<PolygonalSpace<F>>,
        flat: &[F],
    ) -> Result<Self> {
        let n = domain.dimension();
        let m = codomain.dimension();
        if flat.len() != m * n {
            return Err(Error::DimensionMismatch {
                expected: m * n,
                found: flat.len(),
            });
        }
        let matrix = flat.chunks(n).map(|c| c.to_vec()).collect();
        Operator::new(domain, codomain, matrix)
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn flat(&self) -> Vec<F> {
        self.matrix.iter().flatten().cloned().collect()
    }

    pub fn domain(&self) -> &Arc<PolygonalSpace<F>> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<PolygonalSpace<F>> {
        &self.codomain
    }

    fn with_matrix(&self, matrix: Matrix<F>) -> Self {
        Operator {
            matrix,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }

    pub fn scaled(&self, k: &F) -> Self {
        self.with_matrix(
            self.matrix
                .iter()
                .map(|r| r.iter().map(|x| x.clone() * k.clone()).collect())
                .collect(),
        )
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-F::one())
    }

    /// `self + k * other`, entrywise.
    pub fn plus_scaled(&self, other: &Matrix<F>, k: &F) -> Self {
        self.with_matrix(
            self.matrix
                .iter()
                .zip(other)
                .map(|(r, s)| {
                    r.iter()
                        .zip(s)
                        .map(|(x, y)| x.clone() + k.clone() * y.clone())
                        .collect()
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Operator<F>) -> Self {
        self.plus_scaled(&other.matrix, &F::one())
    }

    pub fn apply(&self, x: &[F]) -> Result<VectorN<F>> {
        let n = self.domain.dimension();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[F]) -> VectorN<F> {
        VectorN(self.matrix.iter().map(|row| linalg::dot(row, x)).collect())
    }

    /// Images of every signed extreme point, in `signed_points` order.
    pub fn images(&self) -> Vec<VectorN<F>> {
        self.domain
            .signed_points()
            .into_iter()
            .map(|p| self.apply_unchecked(&self.domain.point(p)))
            .collect()
    }

    /// `max over x in E_X of ||T x||_Y`.
    pub fn op_norm(&self) -> F {
        self.domain
            .generators()
            .iter()
            .map(|g| self.codomain.gauge_unchecked(&self.apply_unchecked(g)))
            .max()
            .unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|x| x.is_zero())
    }

    /// Signed extreme points where the norm is attained, in `signed_points`
    /// order; always closed under sign flip.
    pub fn attainment_set(&self) -> Result<Vec<SignedPoint>> {
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let norm = self.op_norm();
        let hit: Vec<bool> = self
            .domain
            .generators()
            .iter()
            .map(|g| self.codomain.gauge_unchecked(&self.apply_unchecked(g)) == norm)
            .collect();
        Ok(self
            .domain
            .signed_points()
            .into_iter()
            .filter(|p| hit[p.generator])
            .collect())
    }

    /// Every `(generator, facet)` with `f(T g) = 1`, generator-major.
    pub fn active_set(&self) -> Result<ActiveSet> {
        let norm = self.op_norm();
        if norm > F::one() {
            return Err(Error::NormExceedsOne(norm.to_string()));
        }
        let mut pairs = Vec::new();
        for (i, g) in self.domain.generators().iter().enumerate() {
            let image = self.apply_unchecked(g);
            for (j, f) in self.codomain.facets().iter().enumerate() {
                if f.eval(&image) == F::one() {
                    pairs.push(ActivePair {
                        generator: i,
                        facet: j,
                    });
                }
            }
        }
        Ok(ActiveSet { pairs })
    }

    /// The constraint functional of an active pair, on flattened matrices.
    pub fn functional(&self, pair: ActivePair) -> Vec<F> {
        constraint_functional(
            &self.domain.generators()[pair.generator],
            &self.codomain.facets()[pair.facet],
        )
    }
}

impl<F: PartialEq> PartialEq for Operator<F> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl<F: Eq> Eq for Operator<F> {}

impl<F: fmt::Display> fmt::Display for Operator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}
