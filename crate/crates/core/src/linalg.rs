//! Dense linear algebra over Q: row reduction, kernels, solving, and an
//! incremental echelon basis for subspace computations.

use crate::hseries::Q;
use num::{One, Zero};

/// Row-major rational matrix.
pub type QMat = Vec<Vec<Q>>;

pub fn zeros(r: usize, c: usize) -> QMat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn matmul(a: &QMat, b: &QMat) -> QMat {
    let r = a.len();
    let c = b.first().map_or(0, Vec::len);
    let mut out = zeros(r, c);
    for i in 0..r {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn matvec(a: &QMat, v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| row.iter().zip(v).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()).collect()
}

pub fn transpose(a: &QMat) -> QMat {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref(m: &QMat) -> (QMat, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &QMat) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn nullspace(m: &QMat, cols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b`, if one exists.
pub fn solve(a: &QMat, b: &[Q]) -> Option<Vec<Q>> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][cols].clone();
    }
    Some(x)
}

pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let aug: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Incrementally maintained basis of a subspace of Q^dim, kept in
/// echelon form so membership tests are a single reduction.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns true when the dimension grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hseries::qi;

    fn m(rows: &[&[i64]]) -> QMat {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&matvec(&a, &k[0])));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(2));
        let x = solve(&a, &[qi(3), qi(2)]).unwrap();
        assert_eq!(x, vec![qi(1), qi(1)]);
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[qi(1), qi(1)]).is_none());
    }

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&[qi(1), qi(1), qi(0)]));
        assert!(s.insert(&[qi(0), qi(1), qi(1)]));
        assert!(!s.insert(&[qi(1), qi(2), qi(1)]));
        assert!(s.contains(&[qi(1), qi(0), qi(-1)]));
        assert!(!s.contains(&[qi(0), qi(0), qi(1)]));
        assert_eq!(s.dim(), 2);
    }
}
