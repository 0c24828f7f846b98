//! Extreme-contraction certificates and the image-based property predicates.
//!
//! The contraction ball is the polytope `{T : f(T g) <= 1}` in the space of
//! `m x n` matrices, so `T` with `||T|| <= 1` is extreme exactly when the
//! functionals `T -> f(T g)` that are tight at `T` span all `m * n`
//! dimensions. Otherwise any direction `D` in their common kernel moves `T`
//! both ways inside the ball, and the largest admissible step comes from a
//! ratio test over the inactive constraints.

use crate::error::{Error, Result};
use crate::field::ExactField;
use crate::linalg::{self, Matrix, RowBasis};
use crate::operator::{constraint_functional, ActivePair, ActiveSet, Operator};
use crate::space::{SignedPoint, VectorN};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<F> {
    /// `spanning` lists `m * n` active pairs whose functionals have
    /// non-zero `determinant`.
    Extreme {
        spanning: Vec<ActivePair>,
        determinant: F,
    },
    /// `T = (plus + minus) / 2` with `plus = T + step * direction`,
    /// `minus = T - step * direction`, both contractions.
    NotExtreme {
        direction: Matrix<F>,
        step: F,
        plus: Matrix<F>,
        minus: Matrix<F>,
        plus_norm: F,
        minus_norm: F,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalityCertificate<F> {
    pub active: ActiveSet,
    pub witness: Witness<F>,
}

impl<F> ExtremalityCertificate<F> {
    pub fn is_extreme(&self) -> bool {
        matches!(self.witness, Witness::Extreme { .. })
    }
}

fn reshape<F: Clone>(flat: &[F], n: usize) -> Matrix<F> {
    flat.chunks(n).map(|c| c.to_vec()).collect()
}

/// Decides extremality of a contraction and returns a re-checkable witness.
pub fn is_extreme<F: ExactField>(op: &Operator<F>) -> Result<ExtremalityCertificate<F>> {
    let active = op.active_set()?;
    let n = op.domain().dimension();
    let width = n * op.codomain().dimension();
    let rows: Vec<Vec<F>> = active.pairs.iter().map(|&p| op.functional(p)).collect();

    let mut basis = RowBasis::new(width);
    let mut spanning = Vec::new();
    let mut spanning_rows = Vec::new();
    for (pair, row) in active.pairs.iter().zip(&rows) {
        if basis.insert(row) {
            spanning.push(*pair);
            spanning_rows.push(row.clone());
            if basis.is_full() {
                break;
            }
        }
    }
    if basis.is_full() {
        let determinant = linalg::determinant(&spanning_rows);
        return Ok(ExtremalityCertificate {
            active,
            witness: Witness::Extreme {
                spanning,
                determinant,
            },
        });
    }

    let direction = if rows.is_empty() {
        let mut d = vec![F::zero(); width];
        d[0] = F::one();
        d
    } else {
        linalg::kernel_basis(&rows, width)
            .into_iter()
            .next()
            .ok_or_else(|| Error::InternalGeometry("rank deficient without kernel".into()))?
    };

    let flat = op.flat();
    let mut step: Option<F> = None;
    for g in op.domain().generators() {
        for f in op.codomain().facets() {
            let l = constraint_functional(g, f);
            let along = linalg::dot(&l, &direction);
            if along.is_zero() {
                continue;
            }
            let slack = F::one() - linalg::dot(&l, &flat);
            let ratio = slack / along.abs_value();
            if step.as_ref().is_none_or(|s| ratio < *s) {
                step = Some(ratio);
            }
        }
    }
    let step = step.ok_or_else(|| Error::InternalGeometry("direction is unbounded".into()))?;
    let direction = reshape(&direction, n);
    let plus = op.plus_scaled(&direction, &step);
    let minus = op.plus_scaled(&direction, &-step.clone());
    Ok(ExtremalityCertificate {
        active,
        witness: Witness::NotExtreme {
            plus_norm: plus.op_norm(),
            minus_norm: minus.op_norm(),
            plus: plus.matrix().clone(),
            minus: minus.matrix().clone(),
            direction,
            step,
        },
    })
}

/// Fraction-free determinant, kept separate from the elimination used by
/// the decision procedure.
fn bareiss_determinant<F: ExactField>(a: &[Vec<F>]) -> F {
    let n = a.len();
    if n == 0 {
        return F::one();
    }
    let mut m = a.to_vec();
    let mut sign = F::one();
    let mut prev = F::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return F::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone())
                    / prev.clone();
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Re-checks a certificate from first principles: activity by direct
/// evaluation, the determinant by Bareiss elimination, and the two norms by
/// evaluating gauges on every extreme point.
pub fn verify_certificate<F: ExactField>(
    op: &Operator<F>,
    cert: &ExtremalityCertificate<F>,
) -> std::result::Result<(), String> {
    let x = op.domain();
    let y = op.codomain();
    let one = F::one();
    let width = x.dimension() * y.dimension();
    let norm_of = |matrix: &Matrix<F>| -> F {
        x.extreme_points()
            .iter()
            .map(|p| {
                let image: Vec<F> = matrix.iter().map(|r| linalg::dot(r, p)).collect();
                y.gauge_unchecked(&image)
            })
            .max()
            .unwrap_or_else(F::zero)
    };
    if norm_of(op.matrix()) > one {
        return Err("operator is not a contraction".into());
    }
    for pair in &cert.active.pairs {
        let image = op.apply_unchecked(&x.generators()[pair.generator]);
        if y.facets()[pair.facet].eval(&image) != one {
            return Err(format!("pair {pair:?} is not active"));
        }
    }
    match &cert.witness {
        Witness::Extreme {
            spanning,
            determinant,
        } => {
            if spanning.len() != width {
                return Err(format!(
                    "{} spanning constraints, need {width}",
                    spanning.len()
                ));
            }
            if spanning.iter().any(|p| !cert.active.pairs.contains(p)) {
                return Err("spanning constraint outside the active set".into());
            }
            let rows: Vec<Vec<F>> = spanning
                .iter()
                .map(|p| constraint_functional(&x.generators()[p.generator], &y.facets()[p.facet]))
                .collect();
            let det = bareiss_determinant(&rows);
            if det.is_zero() {
                return Err("spanning constraints are singular".into());
            }
            if det != *determinant {
                return Err(format!("determinant mismatch: {det} vs {determinant}"));
            }
            Ok(())
        }
        Witness::NotExtreme {
            direction,
            step,
            plus,
            minus,
            ..
        } => {
            if step.signum_i8() <= 0 {
                return Err("step is not positive".into());
            }
            if direction.iter().flatten().all(|v| v.is_zero()) {
                return Err("direction is zero".into());
            }
            let two = one.clone() + one.clone();
            for (r, row) in op.matrix().iter().enumerate() {
                for (c, t) in row.iter().enumerate() {
                    if (plus[r][c].clone() + minus[r][c].clone()) / two.clone() != *t {
                        return Err("T is not the midpoint".into());
                    }
                    if plus[r][c].clone() - t.clone() != step.clone() * direction[r][c].clone() {
                        return Err("plus is not T + step * D".into());
                    }
                }
            }
            if plus == op.matrix() || minus == op.matrix() {
                return Err("decomposition is trivial".into());
            }
            if norm_of(plus) > one || norm_of(minus) > one {
                return Err("decomposition leaves the unit ball".into());
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakLpVerdict<F> {
    pub holds: bool,
    /// First signed extreme point whose image is extreme, if any.
    pub witness: Option<SignedPoint>,
    /// Images of all signed extreme points, in `signed_points` order.
    pub images: Vec<VectorN<F>>,
}

/// Whether `T(E_X)` meets `E_Y`.
pub fn weak_lp_holds<F: ExactField>(op: &Operator<F>) -> WeakLpVerdict<F> {
    let points = op.domain().signed_points();
    let images = op.images();
    let witness = points
        .iter()
        .zip(&images)
        .find(|(_, img)| {
            op.codomain()
                .locate_extreme_point(img)
                .ok()
                .flatten()
                .is_some()
        })
        .map(|(p, _)| *p);
    WeakLpVerdict {
        holds: witness.is_some(),
        witness,
        images,
    }
}

/// Whether `T(E_X)` is contained in `E_Y`.
pub fn lp_image_check<F: ExactField>(op: &Operator<F>) -> bool {
    op.images().iter().all(|img| {
        op.codomain()
            .locate_extreme_point(img)
            .ok()
            .flatten()
            .is_some()
    })
}

/// Whether the extreme points where a norm-one `T` attains its norm span
/// the domain.
pub fn span_check<F: ExactField>(op: &Operator<F>) -> Result<bool> {
    let norm = op.op_norm();
    if norm != F::one() {
        return Err(Error::NormNotOne(norm.to_string()));
    }
    let x = op.domain();
    let rows: Vec<Vec<F>> = op
        .attainment_set()?
        .into_iter()
        .map(|p| x.point(p).0)
        .collect();
    Ok(linalg::rank(&rows, x.dimension()) == x.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn bareiss_agrees_with_elimination() {
        let q = |v: i64| BigRational::from_int(v);
        let a = vec![
            vec![q(0), q(2), q(1)],
            vec![q(3), q(-1), q(4)],
            vec![q(5), q(2), q(-2)],
        ];
        assert_eq!(bareiss_determinant(&a), linalg::determinant(&a));
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(bareiss_determinant(&singular), q(0));
    }
}
