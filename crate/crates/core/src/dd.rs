//! Incremental double description for pointed polyhedral cones, and the
//! homogenized vertex enumeration of bounded polytopes built on top of it.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::ExactField;
use crate::linalg::{self, dot, RowBasis};

/// Fixed-width bit set over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Incidence {
    words: Vec<u64>,
}

impl Incidence {
    fn new(len: usize) -> Self {
        Incidence {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Incidence) -> Incidence {
        Incidence {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64)
                .filter(move |b| w & (1 << b) != 0)
                .map(move |b| k * 64 + b)
        })
    }
}

#[derive(Clone, Debug)]
struct Ray<F> {
    coords: Vec<F>,
    zeros: Incidence,
}

/// Scales by the absolute value of the first non-zero coordinate.
fn normalize<F: ExactField>(v: Vec<F>) -> Vec<F> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
        return v;
    };
    let scale = lead.abs_value();
    v.into_iter().map(|x| x / scale.clone()).collect()
}

/// Extreme rays of the pointed cone `{x : a . x >= 0 for every row a}`.
///
/// Rows are inserted in the given order. The seed is the first maximal
/// independent subset of rows; adjacency of two rays is decided by the rank
/// of the constraints tight at both.
pub fn cone_extreme_rays<F: ExactField>(rows: &[Vec<F>], dim: usize) -> Result<Vec<Vec<F>>> {
    let seed = linalg::independent_rows(rows, dim);
    if seed.len() < dim {
        return Err(Error::UnboundedRegion);
    }
    let seed_matrix: Vec<Vec<F>> = seed.iter().map(|&i| rows[i].clone()).collect();

    // Columns of the inverse of the seed matrix: ray k is tight on every
    // seed row except row k.
    let mut rays: Vec<Ray<F>> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut e = vec![F::zero(); dim];
        e[k] = F::one();
        let col = linalg::solve(&seed_matrix, &e)
            .ok_or_else(|| Error::InternalGeometry("singular seed".into()))?;
        rays.push(Ray {
            coords: normalize(col),
            zeros: Incidence::new(rows.len()),
        });
    }

    let mut processed: Vec<usize> = Vec::with_capacity(rows.len());
    let seed_set: BTreeSet<usize> = seed.iter().copied().collect();
    for &i in &seed {
        for r in rays.iter_mut() {
            if dot(&rows[i], &r.coords).is_zero() {
                r.zeros.set(i);
            }
        }
        processed.push(i);
    }

    for (i, row) in rows.iter().enumerate() {
        if seed_set.contains(&i) {
            continue;
        }
        let values: Vec<F> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut next: Vec<Ray<F>> = Vec::with_capacity(rays.len());
        for (k, v) in values.iter().enumerate() {
            match v.signum_i8() {
                1 => positive.push(k),
                -1 => negative.push(k),
                _ => {}
            }
        }

        let mut created = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if dim >= 2 && common.count() < dim - 2 {
                    continue;
                }
                if !adjacent(rows, &common, dim) {
                    continue;
                }
                let vp = values[p].clone();
                let vn = values[n].abs_value();
                let coords: Vec<F> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xn, xp)| vp.clone() * xn.clone() + vn.clone() * xp.clone())
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                created.push(Ray {
                    coords: normalize(coords),
                    zeros,
                });
            }
        }

        for (k, mut r) in rays.into_iter().enumerate() {
            match values[k].signum_i8() {
                1 => next.push(r),
                0 => {
                    r.zeros.set(i);
                    next.push(r);
                }
                _ => {}
            }
        }
        next.extend(created);
        rays = next;
        processed.push(i);
    }

    let mut out: Vec<Vec<F>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn adjacent<F: ExactField>(rows: &[Vec<F>], common: &Incidence, dim: usize) -> bool {
    let target = dim.saturating_sub(2);
    let mut basis = RowBasis::new(dim);
    for i in common.iter() {
        basis.insert(&rows[i]);
        if basis.rank() >= target {
            return true;
        }
    }
    basis.rank() >= target
}

/// Vertices of the bounded polytope `{x : a . x <= 1 for every normal a}`.
///
/// The polytope is lifted to the cone `{(t, x) : t >= 0, t - a . x >= 0}`;
/// rays with `t > 0` are vertices, a ray with `t = 0` means the region is
/// unbounded.
pub fn polytope_vertices<F: ExactField>(normals: &[Vec<F>], dim: usize) -> Result<Vec<Vec<F>>> {
    let mut rows = Vec::with_capacity(normals.len() + 1);
    let mut t_row = vec![F::zero(); dim + 1];
    t_row[0] = F::one();
    rows.push(t_row);
    for a in normals {
        if a.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: a.len(),
            });
        }
        let mut r = Vec::with_capacity(dim + 1);
        r.push(F::one());
        r.extend(a.iter().map(|x| -x.clone()));
        rows.push(r);
    }
    let rays = cone_extreme_rays(&rows, dim + 1)?;
    let mut vertices = Vec::with_capacity(rays.len());
    for ray in rays {
        if ray[0].is_zero() {
            return Err(Error::UnboundedRegion);
        }
        let t = ray[0].clone();
        vertices.push(
            ray[1..]
                .iter()
                .map(|x| x.clone() / t.clone())
                .collect::<Vec<F>>(),
        );
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}
