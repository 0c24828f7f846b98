//! Dense exact linear algebra on row lists.

use crate::field::ExactField;

pub type Matrix<F> = Vec<Vec<F>>;

pub fn dot<F: ExactField>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Incrementally grown row basis in echelon form.
///
/// Every stored row has a pivot entry equal to one, and later rows are
/// reduced against earlier ones, so reducing a candidate by the basis in
/// insertion order clears all pivot columns.
#[derive(Clone, Debug)]
pub struct RowBasis<F> {
    width: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: ExactField> RowBasis<F> {
    pub fn new(width: usize) -> Self {
        RowBasis {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    fn reduce(&self, row: &[F]) -> Vec<F> {
        let mut v = row.to_vec();
        for (pivot, b) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - factor.clone() * y.clone();
                }
            }
        }
        v
    }

    /// Adds the row if it is independent of the basis; returns whether it was.
    pub fn insert(&mut self, row: &[F]) -> bool {
        debug_assert_eq!(row.len(), self.width);
        let v = self.reduce(row);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = F::one() / v[pivot].clone();
        let v: Vec<F> = v.into_iter().map(|x| x * inv.clone()).collect();
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, row: &[F]) -> bool {
        self.reduce(row).iter().all(|x| x.is_zero())
    }
}

pub fn rank<F: ExactField>(rows: &[Vec<F>], width: usize) -> usize {
    let mut basis = RowBasis::new(width);
    for r in rows {
        basis.insert(r);
        if basis.is_full() {
            break;
        }
    }
    basis.rank()
}

/// Indices of a maximal independent subset, chosen greedily in order.
pub fn independent_rows<F: ExactField>(rows: &[Vec<F>], width: usize) -> Vec<usize> {
    let mut basis = RowBasis::new(width);
    let mut picked = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if basis.is_full() {
            break;
        }
        if basis.insert(r) {
            picked.push(i);
        }
    }
    picked
}

/// Reduced row echelon form; returns pivot columns.
pub fn rref<F: ExactField>(m: &mut Matrix<F>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in dst.iter_mut().zip(src.iter()) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : row . x = 0 for every row}`, one vector per free column in
/// increasing column order.
pub fn kernel_basis<F: ExactField>(rows: &[Vec<F>], width: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, width);
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); width];
        v[free] = F::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Unique solution of a square system, `None` if singular.
pub fn solve<F: ExactField>(a: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut m: Matrix<F> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Solves `a x = rhs` for a possibly non-square `a`; `None` if inconsistent
/// or if the solution is not unique.
pub fn solve_unique<F: ExactField>(a: &[Vec<F>], rhs: &[F], width: usize) -> Option<Vec<F>> {
    let mut m: Matrix<F> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, width + 1);
    if pivots.contains(&width) || pivots.len() < width {
        return None;
    }
    Some((0..width).map(|i| m[i][width].clone()).collect())
}

/// Determinant by Gaussian elimination with row swaps.
pub fn determinant<F: ExactField>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / pivot.clone();
            for k in c..n {
                let v = m[c][k].clone();
                m[i][k] = m[i][k].clone() - f.clone() * v;
            }
        }
    }
    det
}

pub fn transpose<F: Clone>(m: &[Vec<F>]) -> Matrix<F> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|c| m.iter().map(|r| r[c].clone()).collect())
        .collect()
}
