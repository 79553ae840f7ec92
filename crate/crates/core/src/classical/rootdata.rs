//! Root data and a Chevalley-type basis for sl_n.

use super::lie::{LieAlgebra, Tensor2};
use crate::hseries::{qi, Q};
use crate::linalg::{self, QMat};
use num::{One, Zero};

/// Root data of sl_n with the trace form, in the basis
/// `x_α⁺ (α ∈ Φ⁺), h_1..h_r, x_α⁻ (α ∈ Φ⁺)`.
#[derive(Clone, Debug)]
pub struct RootData {
    pub n: usize,
    pub rank: usize,
    pub cartan: QMat,
    pub symmetrizers: Vec<Q>,
    /// Positive roots in simple-root coordinates, ordered by height.
    pub pos_roots: Vec<Vec<i64>>,
    pub lie: LieAlgebra,
    /// Invariant form on the basis.
    pub form: QMat,
    /// Chevalley involution; column `b` holds the coordinates of `ω(x_b)`.
    pub omega: QMat,
    /// Fundamental coweights `ϖ_i∨` as coordinate vectors.
    pub coweights: Vec<Vec<Q>>,
    /// Each non-simple basis vector as `λ [x_a, x_b]`.
    pub recipes: Vec<Option<(usize, usize, Q)>>,
    /// Basis matrices in the defining n-dimensional realization.
    pub defining: Vec<QMat>,
}

fn e(n: usize, i: usize, j: usize) -> QMat {
    let mut m = linalg::zeros(n, n);
    m[i][j] = Q::one();
    m
}

pub fn commutator(a: &QMat, b: &QMat) -> QMat {
    let ab = linalg::matmul(a, b);
    let ba = linalg::matmul(b, a);
    sub(&ab, &ba)
}

pub fn add(a: &QMat, b: &QMat) -> QMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn sub(a: &QMat, b: &QMat) -> QMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn scale(a: &QMat, c: &Q) -> QMat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn trace(a: &QMat) -> Q {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

fn flatten(a: &QMat) -> Vec<Q> {
    a.iter().flatten().cloned().collect()
}

impl RootData {
    pub fn sl(n: usize) -> Self {
        assert!(n >= 2, "sl_n requires n >= 2");
        let rank = n - 1;
        let mut cartan = linalg::zeros(rank, rank);
        for i in 0..rank {
            cartan[i][i] = qi(2);
            if i + 1 < rank {
                cartan[i][i + 1] = qi(-1);
                cartan[i + 1][i] = qi(-1);
            }
        }
        // α_ij = ε_i - ε_j for i < j, ordered by height then i.
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| (j - i, i));
        let pos_roots: Vec<Vec<i64>> =
            pairs.iter().map(|&(i, j)| (0..rank).map(|k| i64::from(k >= i && k < j)).collect()).collect();
        let np = pairs.len();

        // Positive root vectors by iterated brackets of simple ones.
        let mut xp: Vec<QMat> = Vec::with_capacity(np);
        let mut recipes_p: Vec<Option<(usize, usize)>> = Vec::with_capacity(np);
        for &(i, j) in &pairs {
            if j == i + 1 {
                xp.push(e(n, i, i + 1));
                recipes_p.push(None);
            } else {
                let a = pairs.iter().position(|&p| p == (i, i + 1)).expect("simple root");
                let b = pairs.iter().position(|&p| p == (i + 1, j)).expect("shorter root");
                xp.push(commutator(&xp[a], &xp[b]));
                recipes_p.push(Some((a, b)));
            }
        }
        // ω on matrices, extended from ω(x_i⁺) = -x_i⁻ through the same brackets.
        let mut omega_xp: Vec<QMat> = Vec::with_capacity(np);
        for (k, &(i, _)) in pairs.iter().enumerate() {
            match recipes_p[k] {
                None => omega_xp.push(scale(&e(n, i + 1, i), &qi(-1))),
                Some((a, b)) => omega_xp.push(commutator(&omega_xp[a], &omega_xp[b])),
            }
        }
        let mut xm: Vec<QMat> = Vec::with_capacity(np);
        for k in 0..np {
            let cand = scale(&omega_xp[k], &qi(-1));
            let p = trace(&linalg::matmul(&xp[k], &cand));
            xm.push(scale(&cand, &p.recip()));
        }
        let hs: Vec<QMat> = (0..rank).map(|i| sub(&e(n, i, i), &e(n, i + 1, i + 1))).collect();

        let mut defining = xp.clone();
        defining.extend(hs.iter().cloned());
        defining.extend(xm.iter().cloned());
        let dim = defining.len();

        let basis_cols = linalg::transpose(&defining.iter().map(flatten).collect::<Vec<_>>());
        let coords = |m: &QMat| -> Vec<Q> { linalg::solve(&basis_cols, &flatten(m)).expect("matrix lies in sl_n") };

        let mut sc = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                sc[a][b] = coords(&commutator(&defining[a], &defining[b]));
            }
        }
        let mut names: Vec<String> = pairs.iter().map(|(i, j)| format!("x+[{},{}]", i + 1, j + 1)).collect();
        names.extend((0..rank).map(|i| format!("h{}", i + 1)));
        names.extend(pairs.iter().map(|(i, j)| format!("x-[{},{}]", i + 1, j + 1)));
        let lie = LieAlgebra::new(names, sc);

        let mut form = linalg::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                form[a][b] = trace(&linalg::matmul(&defining[a], &defining[b]));
            }
        }

        // ω on the basis: ω(x_α⁻) follows from ω² = id.
        let mut omega_mats: Vec<QMat> = omega_xp.clone();
        omega_mats.extend(hs.iter().map(|h| scale(h, &qi(-1))));
        for k in 0..np {
            let c = trace(&linalg::matmul(&xp[k], &scale(&omega_xp[k], &qi(-1))));
            omega_mats.push(scale(&xp[k], &(-c.recip())));
        }
        let omega = linalg::transpose(&omega_mats.iter().map(coords).collect::<Vec<_>>());

        // α_j(h_k) = (α_k, α_j) = d_k a_kj; ϖ_i∨ = Σ_k c_ik h_k with c M = I.
        let symmetrizers = vec![Q::one(); rank];
        let m: QMat = (0..rank).map(|k| (0..rank).map(|j| &symmetrizers[k] * &cartan[k][j]).collect()).collect();
        let c = linalg::inverse(&m).expect("Cartan matrix is invertible");
        let coweights = (0..rank)
            .map(|i| {
                let mut v = vec![Q::zero(); dim];
                v[np..np + rank].clone_from_slice(&c[i][..rank]);
                v
            })
            .collect();

        let mut recipes = vec![None; dim];
        for k in 0..np {
            if let Some((a, b)) = recipes_p[k] {
                recipes[k] = Some((a, b, Q::one()));
                // x_α⁻ = λ [x_a⁻, x_b⁻] with λ read off from coordinates.
                let br = coords(&commutator(&xm[a], &xm[b]));
                let target = coords(&xm[k]);
                let p = br.iter().position(|x| !x.is_zero()).expect("nonzero bracket");
                recipes[np + rank + k] = Some((np + rank + a, np + rank + b, &target[p] / &br[p]));
            }
        }

        RootData { n, rank, cartan, symmetrizers, pos_roots, lie, form, omega, coweights, recipes, defining }
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn num_pos(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn xp(&self, k: usize) -> usize {
        k
    }

    pub fn h(&self, i: usize) -> usize {
        self.num_pos() + i
    }

    pub fn xm(&self, k: usize) -> usize {
        self.num_pos() + self.rank + k
    }

    /// Index of the positive root vector for simple root `i`.
    pub fn simple(&self, i: usize) -> usize {
        self.pos_roots
            .iter()
            .position(|r| r.iter().enumerate().all(|(k, &c)| c == i64::from(k == i)))
            .expect("simple root present")
    }

    /// Basis vector dual to `x_a` under the invariant form.
    pub fn dual_basis(&self) -> Vec<Vec<Q>> {
        let inv = linalg::inverse(&self.form).expect("form is nondegenerate");
        (0..self.dim()).map(|a| (0..self.dim()).map(|b| inv[b][a].clone()).collect()).collect()
    }

    /// `r = Σ x_α⁺ ⊗ x_α⁻ + ½ Σ ϖ_i∨ ⊗ h_i`.
    pub fn classical_r(&self) -> Tensor2 {
        let d = self.dim();
        let mut r = linalg::zeros(d, d);
        for k in 0..self.num_pos() {
            r[self.xp(k)][self.xm(k)] += Q::one();
        }
        let half = Q::new(1.into(), 2.into());
        for i in 0..self.rank {
            for (a, c) in self.coweights[i].iter().enumerate() {
                if !c.is_zero() {
                    r[a][self.h(i)] += c * &half;
                }
            }
        }
        r
    }

    /// Casimir tensor `Σ x_a ⊗ x^a`.
    pub fn casimir_tensor(&self) -> Tensor2 {
        let d = self.dim();
        let dual = self.dual_basis();
        let mut t = linalg::zeros(d, d);
        for (a, v) in dual.iter().enumerate() {
            for (b, c) in v.iter().enumerate() {
                t[a][b] += c;
            }
        }
        t
    }

    /// Evaluates a functional on h (given on `h_j`) in simple-root coordinates.
    pub fn weight_coords(&self, on_h: &[Q]) -> Vec<Q> {
        // μ(h_j) = Σ_k c_k α_k(h_j) = Σ_k c_k d_j a_jk.
        let m: QMat = (0..self.rank)
            .map(|j| (0..self.rank).map(|k| &self.symmetrizers[j] * &self.cartan[j][k]).collect())
            .collect();
        linalg::solve(&m, on_h).expect("Cartan matrix is invertible")
    }

    /// `α(h)` for a weight in simple-root coordinates and `h` in g coordinates.
    pub fn pair_weight(&self, mu: &[Q], h: &[Q]) -> Q {
        let mut s = Q::zero();
        for j in 0..self.rank {
            let hj = &h[self.h(j)];
            if hj.is_zero() {
                continue;
            }
            for k in 0..self.rank {
                s += hj * &mu[k] * &self.symmetrizers[j] * &self.cartan[j][k];
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hseries::qi;

    #[test]
    fn sl3_structure() {
        let rd = RootData::sl(3);
        assert_eq!(rd.dim(), 8);
        assert_eq!(rd.pos_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(rd.lie.is_lie());
        for k in 0..rd.num_pos() {
            assert_eq!(rd.form[rd.xp(k)][rd.xm(k)], qi(1));
        }
        assert_eq!(rd.form[rd.h(0)][rd.h(0)], qi(2));
    }

    #[test]
    fn omega_is_an_involutive_automorphism() {
        for n in 2..=4 {
            let rd = RootData::sl(n);
            let d = rd.dim();
            let w = &rd.omega;
            assert_eq!(linalg::matmul(w, w), linalg::identity(d));
            for a in 0..d {
                for b in 0..d {
                    let lhs = linalg::matvec(w, &rd.lie.sc[a][b]);
                    let col = |x: usize| (0..d).map(|i| w[i][x].clone()).collect::<Vec<_>>();
                    assert_eq!(lhs, rd.lie.bracket(&col(a), &col(b)));
                }
            }
            let s = rd.simple(0);
            assert_eq!(w[rd.xm(s)][rd.xp(s)], qi(-1));
        }
    }

    #[test]
    fn recipes_reproduce_basis() {
        let rd = RootData::sl(4);
        for (b, r) in rd.recipes.iter().enumerate() {
            if let Some((x, y, l)) = r {
                let m = scale(&commutator(&rd.defining[*x], &rd.defining[*y]), l);
                assert_eq!(m, rd.defining[b]);
            }
        }
    }

    #[test]
    fn coweights_pair_with_simple_roots() {
        let rd = RootData::sl(4);
        for i in 0..rd.rank {
            for j in 0..rd.rank {
                let alpha: Vec<Q> = (0..rd.rank).map(|k| qi(i64::from(k == j))).collect();
                assert_eq!(rd.pair_weight(&alpha, &rd.coweights[i]), qi(i64::from(i == j)));
            }
        }
    }
}
