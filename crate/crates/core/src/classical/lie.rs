//! Finite-dimensional Lie algebras and Lie coalgebra structures given by
//! structure constants over Q.

use crate::hseries::Q;
use crate::linalg::{self, QMat};
use num::{One, Zero};

/// Lie algebra with basis `x_0..x_{dim-1}` and `sc[a][b]` the coordinates
/// of `[x_a, x_b]`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub names: Vec<String>,
    pub sc: Vec<Vec<Vec<Q>>>,
}

/// 2-tensors `Σ t[a][b] x_a ⊗ x_b` are stored as square matrices.
pub type Tensor2 = QMat;

impl LieAlgebra {
    pub fn new(names: Vec<String>, sc: Vec<Vec<Vec<Q>>>) -> Self {
        LieAlgebra { names, sc }
    }

    pub fn abelian(names: Vec<String>) -> Self {
        let d = names.len();
        LieAlgebra { names, sc: vec![vec![vec![Q::zero(); d]; d]; d] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self, a: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = Q::one();
        v
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let f = xa * yb;
                for (o, c) in out.iter_mut().zip(&self.sc[a][b]) {
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x` (column `b` holds `[x, x_b]`).
    pub fn ad(&self, x: &[Q]) -> QMat {
        let d = self.dim();
        let cols: Vec<Vec<Q>> = (0..d).map(|b| self.bracket(x, &self.unit(b))).collect();
        linalg::transpose(&cols)
    }

    /// First basis pair violating antisymmetry.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a..d {
                let s: Vec<Q> = self.sc[a][b].iter().zip(&self.sc[b][a]).map(|(x, y)| x + y).collect();
                if !linalg::is_zero_vec(&s) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// First basis triple with nonzero Jacobi residual.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let r = jacobi_residual(self, a, b, c);
                    if !linalg::is_zero_vec(&r) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_lie(&self) -> bool {
        self.antisymmetry_violation().is_none() && self.jacobi_violation().is_none()
    }

    pub fn killing_form(&self) -> QMat {
        let d = self.dim();
        let ads: Vec<QMat> = (0..d).map(|a| self.ad(&self.unit(a))).collect();
        let mut k = linalg::zeros(d, d);
        for a in 0..d {
            for b in a..d {
                let p = linalg::matmul(&ads[a], &ads[b]);
                let t: Q = (0..d).map(|i| p[i][i].clone()).sum();
                k[a][b] = t.clone();
                k[b][a] = t;
            }
        }
        k
    }

    /// Direct sum of Lie algebras, basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (m, n) = (self.dim(), other.dim());
        let d = m + n;
        let mut sc = vec![vec![vec![Q::zero(); d]; d]; d];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    sc[a][b][c] = self.sc[a][b][c].clone();
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    sc[m + a][m + b][m + c] = other.sc[a][b][c].clone();
                }
            }
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        LieAlgebra { names, sc }
    }

    /// `[x ⊗ 1 + 1 ⊗ x, t]` for a 2-tensor `t`.
    pub fn ad_tensor(&self, x: &[Q], t: &Tensor2) -> Tensor2 {
        let d = self.dim();
        let ad = self.ad(x);
        let mut out = linalg::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                let v = &t[a][b];
                if v.is_zero() {
                    continue;
                }
                for c in 0..d {
                    if !ad[c][a].is_zero() {
                        out[c][b] += v * &ad[c][a];
                    }
                    if !ad[c][b].is_zero() {
                        out[a][c] += v * &ad[c][b];
                    }
                }
            }
        }
        out
    }

    /// Classical Yang-Baxter residual of `r` as a 3-tensor of length dim³.
    pub fn cybe_residual(&self, r: &Tensor2) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d * d * d];
        let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
        let nz: Vec<(usize, usize, &Q)> = (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .filter(|&(a, b)| !r[a][b].is_zero())
            .map(|(a, b)| (a, b, &r[a][b]))
            .collect();
        for &(a, b, u) in &nz {
            for &(c, e, v) in &nz {
                let uv = u * v;
                // [r12, r13] = Σ [x_a, x_c] ⊗ x_b ⊗ x_e
                for (k, s) in self.sc[a][c].iter().enumerate() {
                    if !s.is_zero() {
                        out[idx(k, b, e)] += &uv * s;
                    }
                }
                // [r12, r23] = Σ x_a ⊗ [x_b, x_c] ⊗ x_e
                for (k, s) in self.sc[b][c].iter().enumerate() {
                    if !s.is_zero() {
                        out[idx(a, k, e)] += &uv * s;
                    }
                }
                // [r13, r23] = Σ x_a ⊗ x_c ⊗ [x_b, x_e]
                for (k, s) in self.sc[b][e].iter().enumerate() {
                    if !s.is_zero() {
                        out[idx(a, c, k)] += &uv * s;
                    }
                }
            }
        }
        out
    }

    /// Coboundary cobracket `δ(x) = [x ⊗ 1 + 1 ⊗ x, r]`.
    pub fn coboundary(&self, r: &Tensor2) -> Cobracket {
        Cobracket { table: (0..self.dim()).map(|a| self.ad_tensor(&self.unit(a), r)).collect() }
    }
}

fn jacobi_residual(l: &LieAlgebra, a: usize, b: usize, c: usize) -> Vec<Q> {
    let (xa, xb, xc) = (l.unit(a), l.unit(b), l.unit(c));
    let t1 = l.bracket(&xa, &l.bracket(&xb, &xc));
    let t2 = l.bracket(&xb, &l.bracket(&xc, &xa));
    let t3 = l.bracket(&xc, &l.bracket(&xa, &xb));
    t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| x + y + z).collect()
}

/// Linear map `δ: L → L ⊗ L`, `table[a]` being `δ(x_a)`.
#[derive(Clone, Debug)]
pub struct Cobracket {
    pub table: Vec<Tensor2>,
}

impl Cobracket {
    pub fn zero(d: usize) -> Self {
        Cobracket { table: vec![linalg::zeros(d, d); d] }
    }

    pub fn apply(&self, x: &[Q]) -> Tensor2 {
        let d = self.table.len();
        let mut out = linalg::zeros(d, d);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    let t = &self.table[a][i][j];
                    if !t.is_zero() {
                        out[i][j] += xa * t;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|t| t.iter().all(|r| linalg::is_zero_vec(r)))
    }

    /// True when every image is antisymmetric.
    pub fn is_skew(&self) -> bool {
        self.table.iter().all(|t| {
            let d = t.len();
            (0..d).all(|i| (0..d).all(|j| (&t[i][j] + &t[j][i]).is_zero()))
        })
    }

    /// `(id + (123) + (132)) (δ ⊗ id) δ` evaluated on each basis vector;
    /// returns the first basis index with a nonzero residual.
    pub fn co_jacobi_violation(&self) -> Option<usize> {
        let d = self.table.len();
        let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
        for x in 0..d {
            let mut t = vec![Q::zero(); d * d * d];
            for a in 0..d {
                for b in 0..d {
                    let v = &self.table[x][a][b];
                    if v.is_zero() {
                        continue;
                    }
                    for i in 0..d {
                        for j in 0..d {
                            let w = &self.table[a][i][j];
                            if !w.is_zero() {
                                t[idx(i, j, b)] += v * w;
                            }
                        }
                    }
                }
            }
            // Cyclic sum: (123) sends the factor in slot 1 to slot 2.
            let mut s = vec![Q::zero(); d * d * d];
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let v = &t[idx(i, j, k)];
                        if v.is_zero() {
                            continue;
                        }
                        s[idx(i, j, k)] += v;
                        s[idx(k, i, j)] += v;
                        s[idx(j, k, i)] += v;
                    }
                }
            }
            if !linalg::is_zero_vec(&s) {
                return Some(x);
            }
        }
        None
    }

    /// `δ([x,y]) = [δ(x), Δ(y)] + [Δ(x), δ(y)]` on basis pairs; returns the
    /// first violating pair.
    pub fn cocycle_violation(&self, l: &LieAlgebra) -> Option<(usize, usize)> {
        let d = l.dim();
        for a in 0..d {
            for b in a + 1..d {
                let (xa, xb) = (l.unit(a), l.unit(b));
                let lhs = self.apply(&l.bracket(&xa, &xb));
                let t1 = l.ad_tensor(&xb, &self.table[a]);
                let t2 = l.ad_tensor(&xa, &self.table[b]);
                let ok = (0..d).all(|i| (0..d).all(|j| lhs[i][j] == &t2[i][j] - &t1[i][j]));
                if !ok {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// `(A ⊗ B)(t)` for a 2-tensor `t` and linear maps given as matrices
/// (column `a` is the image of basis vector `a`).
pub fn map_tensor(a: &QMat, b: &QMat, t: &Tensor2) -> Tensor2 {
    let m = a.len();
    let n = b.len();
    let mut out = linalg::zeros(m, n);
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for p in 0..m {
                if a[p][i].is_zero() {
                    continue;
                }
                let f = v * &a[p][i];
                for q in 0..n {
                    if !b[q][j].is_zero() {
                        out[p][q] += &f * &b[q][j];
                    }
                }
            }
        }
    }
    out
}

/// Flip of a 2-tensor.
pub fn flip(t: &Tensor2) -> Tensor2 {
    linalg::transpose(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hseries::qi;

    fn sl2() -> LieAlgebra {
        // basis e, h, f with [h,e]=2e, [h,f]=-2f, [e,f]=h
        let z = || vec![qi(0); 3];
        let mut sc = vec![vec![z(); 3]; 3];
        sc[1][0] = vec![qi(2), qi(0), qi(0)];
        sc[0][1] = vec![qi(-2), qi(0), qi(0)];
        sc[1][2] = vec![qi(0), qi(0), qi(-2)];
        sc[2][1] = vec![qi(0), qi(0), qi(2)];
        sc[0][2] = vec![qi(0), qi(1), qi(0)];
        sc[2][0] = vec![qi(0), qi(-1), qi(0)];
        LieAlgebra::new(vec!["e".into(), "h".into(), "f".into()], sc)
    }

    #[test]
    fn sl2_is_lie_with_nondegenerate_killing() {
        let l = sl2();
        assert!(l.is_lie());
        let k = l.killing_form();
        assert_eq!(k[0][2], qi(4));
        assert_eq!(k[1][1], qi(8));
        assert_eq!(linalg::rank(&k), 3);
    }

    #[test]
    fn broken_bracket_fails_jacobi() {
        let mut l = sl2();
        l.sc[0][2] = vec![qi(0), qi(2), qi(1)];
        l.sc[2][0] = vec![qi(0), qi(-2), qi(-1)];
        assert!(l.jacobi_violation().is_some());
    }
}
