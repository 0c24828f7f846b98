//! Polygonal normed spaces given by the extreme points of their unit ball.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use crate::dd;
use crate::error::{Error, Result};
use crate::field::{common_radicand, ExactField};
use crate::linalg::{self, dot};

/// A coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorN<F>(pub Vec<F>);

impl<F> Deref for VectorN<F> {
    type Target = [F];
    fn deref(&self) -> &[F] {
        &self.0
    }
}

impl<F> From<Vec<F>> for VectorN<F> {
    fn from(v: Vec<F>) -> Self {
        VectorN(v)
    }
}

impl<F: ExactField> VectorN<F> {
    pub fn zeros(n: usize) -> Self {
        VectorN(vec![F::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn negated(&self) -> Self {
        VectorN(self.0.iter().map(|x| -x.clone()).collect())
    }

    pub fn scaled(&self, k: &F) -> Self {
        VectorN(self.0.iter().map(|x| x.clone() * k.clone()).collect())
    }

    pub fn dot(&self, other: &[F]) -> F {
        dot(&self.0, other)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// First non-zero coordinate is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.0
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.signum_i8() > 0)
    }

    pub(crate) fn radicand(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(1, |acc, x| common_radicand(acc, x.radicand()))
    }
}

impl<F: fmt::Display> fmt::Display for VectorN<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A linear functional `x -> coeffs . x` supporting a facet of the unit ball.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetForm<F> {
    pub coeffs: VectorN<F>,
}

impl<F: ExactField> FacetForm<F> {
    pub fn eval(&self, x: &[F]) -> F {
        self.coeffs.dot(x)
    }
}

/// `+g_index` or `-g_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPoint {
    pub generator: usize,
    pub negated: bool,
}

impl SignedPoint {
    pub fn flipped(self) -> Self {
        SignedPoint {
            negated: !self.negated,
            ..self
        }
    }
}

impl fmt::Display for SignedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{}",
            if self.negated { "-" } else { "+" },
            self.generator + 1
        )
    }
}

/// `generators[dependent] = sum_k alphas[k] * generators[basis[k]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyCoefficients<F> {
    pub basis: Vec<usize>,
    pub dependent: usize,
    pub alphas: Vec<F>,
}

/// A finite-dimensional space whose unit ball is `conv(+-generators)`.
///
/// Generators keep their input order and sign; facets are derived once at
/// construction. Facets `j` and `j + k` (with `k = facets().len() / 2`) are
/// negatives of each other, and the first half is sorted lexicographically
/// with lex-positive representatives.
#[derive(Clone, Debug)]
pub struct PolygonalSpace<F> {
    name: Option<String>,
    dimension: usize,
    radicand: u64,
    generators: Vec<VectorN<F>>,
    facets: Vec<FacetForm<F>>,
}

impl<F: ExactField> PolygonalSpace<F> {
    /// Validates the generator list and derives the facets.
    pub fn new(
        name: Option<String>,
        dimension: usize,
        generators: Vec<VectorN<F>>,
    ) -> Result<Self> {
        let radicand = check_inputs(dimension, &generators)?;
        let facets = polar_dual(dimension, &generators)?;
        for (index, g) in generators.iter().enumerate() {
            let tight: Vec<Vec<F>> = facets
                .iter()
                .filter(|f| f.eval(g) == F::one())
                .map(|f| f.coeffs.0.clone())
                .collect();
            if linalg::rank(&tight, dimension) < dimension {
                let combination = redundancy_witness(index, &generators)
                    .unwrap_or_else(|| "a convex combination of the others".into());
                return Err(Error::RedundantGenerator { index, combination });
            }
        }
        Ok(PolygonalSpace {
            name,
            dimension,
            radicand,
            generators,
            facets,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "<inline>".into())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `d` of the field `Q(sqrt d)` the coordinates live in.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn generators(&self) -> &[VectorN<F>] {
        &self.generators
    }

    pub fn facets(&self) -> &[FacetForm<F>] {
        &self.facets
    }

    pub fn point(&self, p: SignedPoint) -> VectorN<F> {
        let g = &self.generators[p.generator];
        if p.negated {
            g.negated()
        } else {
            g.clone()
        }
    }

    /// `+g_0, ..., +g_{k-1}, -g_0, ..., -g_{k-1}`.
    pub fn signed_points(&self) -> Vec<SignedPoint> {
        let k = self.generators.len();
        (0..k)
            .map(|i| SignedPoint {
                generator: i,
                negated: false,
            })
            .chain((0..k).map(|i| SignedPoint {
                generator: i,
                negated: true,
            }))
            .collect()
    }

    pub fn extreme_points(&self) -> Vec<VectorN<F>> {
        self.signed_points()
            .into_iter()
            .map(|p| self.point(p))
            .collect()
    }

    pub fn extreme_point_count(&self) -> usize {
        2 * self.generators.len()
    }

    fn check_dim(&self, x: &[F]) -> Result<()> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// The norm: maximum of the facet functionals.
    pub fn gauge(&self, x: &[F]) -> Result<F> {
        self.check_dim(x)?;
        Ok(self.gauge_unchecked(x))
    }

    pub(crate) fn gauge_unchecked(&self, x: &[F]) -> F {
        self.facets
            .iter()
            .map(|f| f.eval(x))
            .max()
            .unwrap_or_else(F::zero)
    }

    pub fn locate_extreme_point(&self, y: &[F]) -> Result<Option<SignedPoint>> {
        self.check_dim(y)?;
        for (i, g) in self.generators.iter().enumerate() {
            if g.0 == y {
                return Ok(Some(SignedPoint {
                    generator: i,
                    negated: false,
                }));
            }
            if g.iter().zip(y).all(|(a, b)| *a == -b.clone()) {
                return Ok(Some(SignedPoint {
                    generator: i,
                    negated: true,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_extreme_point(&self, y: &[F]) -> Result<bool> {
        Ok(self.locate_extreme_point(y)?.is_some())
    }

    /// Indices of the first `n` independent generators, in order.
    pub fn basis_indices(&self) -> Vec<usize> {
        let rows: Vec<Vec<F>> = self.generators.iter().map(|g| g.0.clone()).collect();
        linalg::independent_rows(&rows, self.dimension)
    }

    /// Expresses the one generator outside the basis in terms of the basis;
    /// only defined when there are exactly `n + 1` generator pairs.
    pub fn affine_dependence(&self) -> Result<DependencyCoefficients<F>> {
        let n = self.dimension;
        if self.generators.len() != n + 1 {
            return Err(Error::WrongExtremeCount {
                expected: 2 * n + 2,
                found: self.extreme_point_count(),
            });
        }
        let basis = self.basis_indices();
        let dependent = (0..=n)
            .find(|i| !basis.contains(i))
            .expect("n + 1 generators, rank n");
        // rows of the system are coordinates; columns are basis generators
        let a: Vec<Vec<F>> = (0..n)
            .map(|c| {
                basis
                    .iter()
                    .map(|&b| self.generators[b][c].clone())
                    .collect()
            })
            .collect();
        let alphas = linalg::solve(&a, &self.generators[dependent])
            .ok_or_else(|| Error::InternalGeometry("basis is singular".into()))?;
        if alphas.iter().filter(|a| !a.is_zero()).count() < 2 {
            return Err(Error::DegenerateDependency);
        }
        Ok(DependencyCoefficients {
            basis,
            dependent,
            alphas,
        })
    }

    /// Whether `x` lies in the unit ball.
    pub fn contains(&self, x: &[F]) -> Result<bool> {
        Ok(self.gauge(x)? <= F::one())
    }
}

fn check_inputs<F: ExactField>(n: usize, generators: &[VectorN<F>]) -> Result<u64> {
    let mut radicand = 1u64;
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.dim(),
            });
        }
        let r = g.radicand().ok_or(Error::IncompatibleFields {
            left: radicand,
            right: 0,
        })?;
        radicand = common_radicand(radicand, r).ok_or(Error::IncompatibleFields {
            left: radicand,
            right: r,
        })?;
    }
    for (j, gj) in generators.iter().enumerate() {
        for (i, gi) in generators[..j].iter().enumerate() {
            if gi == gj || *gi == gj.negated() {
                return Err(Error::DuplicateGenerator {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let rows: Vec<Vec<F>> = generators.iter().map(|g| g.0.clone()).collect();
    let rank = linalg::rank(&rows, n);
    if rank < n || n == 0 {
        return Err(Error::DegenerateSpace { rank, dimension: n });
    }
    Ok(radicand)
}

/// Facets of `conv(+-generators)`.
///
/// In the plane the facets join angularly consecutive hull vertices; in
/// higher dimension they are the vertices of the polar polytope
/// `{f : |f . g| <= 1}`, found by double description.
pub fn polar_dual<F: ExactField>(n: usize, generators: &[VectorN<F>]) -> Result<Vec<FacetForm<F>>> {
    let raw = if n == 2 {
        planar_facets(generators)?
    } else {
        polar_dual_dd(n, generators)?
    };
    Ok(canonical_facets(raw))
}

/// The general-dimension route, also used as an oracle for the planar one.
pub fn polar_dual_dd<F: ExactField>(
    n: usize,
    generators: &[VectorN<F>],
) -> Result<Vec<VectorN<F>>> {
    let normals: Vec<Vec<F>> = generators
        .iter()
        .flat_map(|g| [g.0.clone(), g.negated().0])
        .collect();
    let vertices = dd::polytope_vertices(&normals, n).map_err(|e| match e {
        Error::UnboundedRegion => Error::DegenerateSpace {
            rank: linalg::rank(&normals, n),
            dimension: n,
        },
        other => other,
    })?;
    Ok(vertices.into_iter().map(VectorN).collect())
}

fn canonical_facets<F: ExactField>(raw: Vec<VectorN<F>>) -> Vec<FacetForm<F>> {
    let mut reps: Vec<VectorN<F>> = raw
        .into_iter()
        .map(|v| if v.is_lex_positive() { v } else { v.negated() })
        .collect();
    reps.sort();
    reps.dedup();
    let negs: Vec<VectorN<F>> = reps.iter().map(|v| v.negated()).collect();
    reps.into_iter()
        .chain(negs)
        .map(|coeffs| FacetForm { coeffs })
        .collect()
}

fn cross<F: ExactField>(u: &[F], v: &[F]) -> F {
    u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone()
}

fn half_plane<F: ExactField>(v: &[F]) -> u8 {
    let y = v[1].signum_i8();
    if y > 0 || (y == 0 && v[0].signum_i8() > 0) {
        0
    } else {
        1
    }
}

fn angular_cmp<F: ExactField>(u: &[F], v: &[F]) -> Ordering {
    half_plane(u)
        .cmp(&half_plane(v))
        .then_with(|| 0.cmp(&cross(u, v).signum_i8()))
}

/// Planar hull of `+-generators` around the origin, as edge functionals.
fn planar_facets<F: ExactField>(generators: &[VectorN<F>]) -> Result<Vec<VectorN<F>>> {
    let mut pts: Vec<Vec<F>> = generators
        .iter()
        .flat_map(|g| [g.0.clone(), g.negated().0])
        .collect();
    // angular order; among collinear points keep the farthest (largest |x|+|y|)
    let size = |p: &Vec<F>| p[0].abs_value() + p[1].abs_value();
    pts.sort_by(|u, v| angular_cmp(u, v).then_with(|| size(v).cmp(&size(u))));
    pts.dedup_by(|later, earlier| angular_cmp(later, earlier) == Ordering::Equal);

    // The origin is interior, so the angular order is a star-shaped polygon;
    // a Graham scan removes the reflex and flat vertices. Start from the
    // lexicographically largest point, which is always a hull vertex.
    let start = (0..pts.len()).max_by(|&i, &j| pts[i].cmp(&pts[j])).unwrap();
    pts.rotate_left(start);
    let mut hull: Vec<Vec<F>> = Vec::with_capacity(pts.len());
    for p in pts.iter().chain(std::iter::once(&pts[0])) {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            let ab: Vec<F> = vec![b[0].clone() - a[0].clone(), b[1].clone() - a[1].clone()];
            let bp: Vec<F> = vec![p[0].clone() - b[0].clone(), p[1].clone() - b[1].clone()];
            if cross(&ab, &bp).signum_i8() > 0 {
                break;
            }
            hull.pop();
        }
        hull.push(p.clone());
    }
    hull.pop();
    if hull.len() < 4 {
        return Err(Error::DegenerateSpace {
            rank: 1,
            dimension: 2,
        });
    }

    let ones = [F::one(), F::one()];
    let mut facets = Vec::with_capacity(hull.len());
    for k in 0..hull.len() {
        let u = &hull[k];
        let v = &hull[(k + 1) % hull.len()];
        let f = linalg::solve(&[u.clone(), v.clone()], &ones)
            .ok_or_else(|| Error::InternalGeometry("collinear hull edge".into()))?;
        facets.push(VectorN(f));
    }
    Ok(facets)
}

/// Searches for `g_index = sum lambda_k s_k` with `lambda >= 0`, `sum <= 1`,
/// over the other signed generators `s_k`, using basic solutions only.
fn redundancy_witness<F: ExactField>(index: usize, generators: &[VectorN<F>]) -> Option<String> {
    let target = &generators[index];
    let n = target.dim();
    let others: Vec<(String, VectorN<F>)> = generators
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != index)
        .flat_map(|(i, g)| {
            [
                (format!("x{}", i + 1), g.clone()),
                (format!("-x{}", i + 1), g.negated()),
            ]
        })
        .collect();
    if target.is_zero() {
        let (name, g) = others.first()?;
        return Some(format!("1/2*{name} + 1/2*({})", g.negated()));
    }
    let render = |subset: &[usize], lambda: &[F]| {
        subset
            .iter()
            .zip(lambda)
            .filter(|(_, l)| !l.is_zero())
            .map(|(&k, l)| format!("{}*{}", l, others[k].0))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    for size in 1..=(n + 1).min(others.len()) {
        for subset in combinations(others.len(), size) {
            // rows: n coordinates, then the sum-of-weights row
            let mut a: Vec<Vec<F>> = (0..n)
                .map(|c| subset.iter().map(|&k| others[k].1[c].clone()).collect())
                .collect();
            let mut rhs: Vec<F> = target.0.clone();
            if let Some(lambda) = linalg::solve_unique(&a, &rhs, size) {
                let total = lambda.iter().fold(F::zero(), |s, x| s + x.clone());
                if lambda.iter().all(|l| l.signum_i8() >= 0) && total <= F::one() {
                    return Some(render(&subset, &lambda));
                }
            }
            a.push(vec![F::one(); size]);
            rhs.push(F::one());
            if let Some(lambda) = linalg::solve_unique(&a, &rhs, size) {
                if lambda.iter().all(|l| l.signum_i8() >= 0) {
                    return Some(render(&subset, &lambda));
                }
            }
        }
    }
    None
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}
