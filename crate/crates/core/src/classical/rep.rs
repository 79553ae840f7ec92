//! Finite-dimensional representations of sl_n with weight labels and
//! composition-factor blocks.

use super::lie::Tensor2;
use super::rootdata::{self, RootData};
use crate::hseries::{fmt_q, parse_q, qi, Q};
use crate::linalg::{self, QMat};
use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("matrix for {0} has the wrong shape")]
    Shape(String),
    #[error("bracket [{0},{1}] is not preserved")]
    NotARep(String, String),
    #[error("Cartan generator {0} is not diagonal in the chosen basis")]
    NotDiagonal(usize),
    #[error("representation is not faithful")]
    NotFaithful,
    #[error("blocks do not tile the basis")]
    BadBlocks,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An irreducible block `V_j` occupying basis vectors `start..start+dim`,
/// labelled by its highest weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub start: usize,
    pub dim: usize,
    pub highest: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RepData {
    pub root: RootData,
    pub dim: usize,
    pub labels: Vec<String>,
    /// Weight of each basis vector in simple-root coordinates.
    pub weights: Vec<Vec<Q>>,
    /// `π(x_a)` for every basis vector `x_a` of g.
    pub pi: Vec<QMat>,
    pub blocks: Vec<Block>,
}

impl RepData {
    /// Builds a representation from the images of `x_i⁺`, `h_i`, `x_i⁻` for
    /// simple roots, extending to all root vectors by the stored recipes.
    pub fn from_generators(
        root: &RootData,
        ep: &[QMat],
        hs: &[QMat],
        em: &[QMat],
        labels: Vec<String>,
        blocks: Vec<Block>,
    ) -> Result<Self, RepError> {
        let dim = labels.len();
        let shape_ok = |m: &QMat| m.len() == dim && m.iter().all(|r| r.len() == dim);
        for (name, ms) in [("x+", ep), ("h", hs), ("x-", em)] {
            if ms.len() != root.rank || !ms.iter().all(shape_ok) {
                return Err(RepError::Shape(name.into()));
            }
        }
        let mut pi: Vec<Option<QMat>> = vec![None; root.dim()];
        for i in 0..root.rank {
            let s = root.simple(i);
            pi[root.xp(s)] = Some(ep[i].clone());
            pi[root.xm(s)] = Some(em[i].clone());
            pi[root.h(i)] = Some(hs[i].clone());
        }
        // Recipes refer to lower-height roots, so repeated passes terminate.
        while pi.iter().any(Option::is_none) {
            for b in 0..root.dim() {
                if pi[b].is_some() {
                    continue;
                }
                let (x, y, l) = root.recipes[b].clone().expect("non-simple vectors have recipes");
                if let (Some(px), Some(py)) = (&pi[x], &pi[y]) {
                    pi[b] = Some(rootdata::scale(&rootdata::commutator(px, py), &l));
                }
            }
        }
        let pi: Vec<QMat> = pi.into_iter().map(Option::unwrap).collect();
        let mut weights = Vec::with_capacity(dim);
        for v in 0..dim {
            let mut on_h = Vec::with_capacity(root.rank);
            for (i, h) in hs.iter().enumerate() {
                if (0..dim).any(|w| w != v && !(h[v][w].is_zero() && h[w][v].is_zero())) {
                    return Err(RepError::NotDiagonal(i));
                }
                on_h.push(h[v][v].clone());
            }
            weights.push(root.weight_coords(&on_h));
        }
        let mut covered = 0;
        for b in &blocks {
            if b.start != covered || b.highest.len() != root.rank {
                return Err(RepError::BadBlocks);
            }
            covered += b.dim;
        }
        if covered != dim {
            return Err(RepError::BadBlocks);
        }
        let rep = RepData { root: root.clone(), dim, labels, weights, pi, blocks };
        rep.check()?;
        Ok(rep)
    }

    /// Verifies `π([x_a, x_b]) = [π(x_a), π(x_b)]` and faithfulness.
    pub fn check(&self) -> Result<(), RepError> {
        let d = self.root.dim();
        for a in 0..d {
            for b in a + 1..d {
                let lhs = self.image(&self.root.lie.sc[a][b]);
                if lhs != rootdata::commutator(&self.pi[a], &self.pi[b]) {
                    let n = &self.root.lie.names;
                    return Err(RepError::NotARep(n[a].clone(), n[b].clone()));
                }
            }
        }
        if self.pi.iter().all(|m| m.iter().all(|r| linalg::is_zero_vec(r))) {
            return Err(RepError::NotFaithful);
        }
        Ok(())
    }

    /// `π(x)` for `x` in g coordinates.
    pub fn image(&self, x: &[Q]) -> QMat {
        let mut out = linalg::zeros(self.dim, self.dim);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = rootdata::add(&out, &rootdata::scale(&self.pi[a], c));
            }
        }
        out
    }

    /// The defining representation of sl_n.
    pub fn vector(root: &RootData) -> Self {
        let n = root.n;
        let pick = |k: usize| root.defining[k].clone();
        let ep: Vec<QMat> = (0..root.rank).map(|i| pick(root.xp(root.simple(i)))).collect();
        let em: Vec<QMat> = (0..root.rank).map(|i| pick(root.xm(root.simple(i)))).collect();
        let hs: Vec<QMat> = (0..root.rank).map(|i| pick(root.h(i))).collect();
        let mut highest = vec![0; root.rank];
        highest[0] = 1;
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Self::from_generators(root, &ep, &hs, &em, labels, vec![Block { start: 0, dim: n, highest }])
            .expect("defining representation is valid")
    }

    /// The irreducible sl_2 module of dimension `m + 1`, with basis
    /// `v_0..v_m`, `h v_k = (m-2k) v_k`, `x⁺ v_k = (m-k+1) v_{k-1}`,
    /// `x⁻ v_k = (k+1) v_{k+1}`.
    pub fn sl2_irrep(root: &RootData, m: usize) -> Self {
        assert_eq!(root.n, 2, "sl2_irrep needs sl_2 root data");
        let d = m + 1;
        let mut e = linalg::zeros(d, d);
        let mut f = linalg::zeros(d, d);
        let mut h = linalg::zeros(d, d);
        for k in 0..d {
            h[k][k] = qi(m as i64 - 2 * k as i64);
            if k > 0 {
                e[k - 1][k] = qi((m - k + 1) as i64);
            }
            if k + 1 < d {
                f[k + 1][k] = qi(k as i64 + 1);
            }
        }
        let labels = (0..d).map(|k| format!("v{k}")).collect();
        Self::from_generators(root, &[e], &[h], &[f], labels, vec![Block { start: 0, dim: d, highest: vec![m as i64] }])
            .expect("sl2 irreducible module is valid")
    }

    pub fn sl2_adjoint(root: &RootData) -> Self {
        Self::sl2_irrep(root, 2)
    }

    /// Blockwise direct sum.
    pub fn direct_sum(&self, other: &RepData) -> Self {
        assert_eq!(self.root.n, other.root.n, "summands must share g");
        let d = self.dim + other.dim;
        let pi = self
            .pi
            .iter()
            .zip(&other.pi)
            .map(|(a, b)| {
                let mut m = linalg::zeros(d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m[i][j] = a[i][j].clone();
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m[self.dim + i][self.dim + j] = b[i][j].clone();
                    }
                }
                m
            })
            .collect();
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("{l}.1")).collect();
        labels.extend(other.labels.iter().map(|l| format!("{l}.2")));
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| Block { start: b.start + self.dim, ..b.clone() }));
        RepData { root: self.root.clone(), dim: d, labels, weights, pi, blocks }
    }

    /// True when the composition factors are pairwise non-isomorphic.
    pub fn multiplicity_free(&self) -> bool {
        let hs: Vec<&Vec<i64>> = self.blocks.iter().map(|b| &b.highest).collect();
        (0..hs.len()).all(|i| (i + 1..hs.len()).all(|j| hs[i] != hs[j]))
    }

    /// Basis of gl(V)^g, the intertwiners of V.
    pub fn invariants(&self) -> Vec<QMat> {
        let d = self.dim;
        let mut rows = Vec::new();
        for p in &self.pi {
            // [p, X] = 0 as linear equations in the entries of X.
            for i in 0..d {
                for j in 0..d {
                    let mut row = vec![Q::zero(); d * d];
                    for k in 0..d {
                        row[k * d + j] += &p[i][k];
                        row[i * d + k] -= &p[k][j];
                    }
                    rows.push(row);
                }
            }
        }
        linalg::nullspace(&rows, d * d).into_iter().map(|v| v.chunks(d).map(<[Q]>::to_vec).collect()).collect()
    }

    /// `ε_i - ε_j` in simple-root coordinates.
    pub fn entry_weight(&self, i: usize, j: usize) -> Vec<Q> {
        self.weights[i].iter().zip(&self.weights[j]).map(|(a, b)| a - b).collect()
    }

    /// `(π ⊗ π)(t)` as a `d² × d²` matrix, row index `i*d + k` for `e_i ⊗ e_k`.
    pub fn eval_tensor(&self, t: &Tensor2) -> QMat {
        let d = self.dim;
        let mut out = linalg::zeros(d * d, d * d);
        for (a, row) in t.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (pa, pb) = (&self.pi[a], &self.pi[b]);
                for i in 0..d {
                    for j in 0..d {
                        if pa[i][j].is_zero() {
                            continue;
                        }
                        let f = c * &pa[i][j];
                        for k in 0..d {
                            for l in 0..d {
                                if !pb[k][l].is_zero() {
                                    out[i * d + k][j * d + l] += &f * &pb[k][l];
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Classical r-matrix `r_π = (π ⊗ π) r`.
    pub fn classical_r(&self) -> QMat {
        self.eval_tensor(&self.root.classical_r())
    }

    /// `Ω_π = r_π + (r_π)_21`.
    pub fn casimir(&self) -> QMat {
        let r = self.classical_r();
        rootdata::add(&r, &flip(&r, self.dim))
    }

    /// Action of the Casimir element on gl(V): `c(X) = Σ [π(x_a), [π(x^a), X]]`.
    pub fn casimir_action(&self, x: &QMat) -> QMat {
        let dual = self.root.dual_basis();
        let mut out = linalg::zeros(self.dim, self.dim);
        for (a, v) in dual.iter().enumerate() {
            let pd = self.image(v);
            let inner = rootdata::commutator(&pd, x);
            out = rootdata::add(&out, &rootdata::commutator(&self.pi[a], &inner));
        }
        out
    }

    /// Eigenvalue of the Casimir on the adjoint block π(g) ⊂ gl(V).
    pub fn kappa(&self) -> Q {
        let mut val: Option<Q> = None;
        for p in &self.pi {
            let c = self.casimir_action(p);
            let Some((i, j)) =
                (0..self.dim).flat_map(|i| (0..self.dim).map(move |j| (i, j))).find(|&(i, j)| !p[i][j].is_zero())
            else {
                continue;
            };
            let k = &c[i][j] / &p[i][j];
            assert_eq!(c, rootdata::scale(p, &k), "π(g) is not a Casimir eigenspace");
            match &val {
                None => val = Some(k),
                Some(v) => assert_eq!(v, &k, "Casimir is not scalar on π(g)"),
            }
        }
        val.expect("faithful representation")
    }

    pub fn to_json(&self) -> RepJson {
        let m = |x: &QMat| x.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
        let rd = &self.root;
        RepJson {
            n: rd.n,
            dim: self.dim,
            labels: self.labels.clone(),
            weights: self.weights.iter().map(|w| w.iter().map(fmt_q).collect()).collect(),
            x_plus: (0..rd.rank).map(|i| m(&self.pi[rd.xp(rd.simple(i))])).collect(),
            h: (0..rd.rank).map(|i| m(&self.pi[rd.h(i)])).collect(),
            x_minus: (0..rd.rank).map(|i| m(&self.pi[rd.xm(rd.simple(i))])).collect(),
            blocks: self.blocks.clone(),
        }
    }

    pub fn from_json(j: &RepJson) -> Result<Self, RepError> {
        let root = RootData::sl(j.n);
        let parse = |ms: &Vec<Vec<Vec<String>>>| -> Result<Vec<QMat>, RepError> {
            ms.iter()
                .map(|m| {
                    m.iter()
                        .map(|r| r.iter().map(|s| parse_q(s).map_err(|e| RepError::Parse(e.to_string()))).collect())
                        .collect()
                })
                .collect()
        };
        Self::from_generators(
            &root,
            &parse(&j.x_plus)?,
            &parse(&j.h)?,
            &parse(&j.x_minus)?,
            j.labels.clone(),
            j.blocks.clone(),
        )
    }
}

/// JSON form of a representation: images of the Chevalley generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub n: usize,
    pub dim: usize,
    pub labels: Vec<String>,
    pub weights: Vec<Vec<String>>,
    pub x_plus: Vec<Vec<Vec<String>>>,
    pub h: Vec<Vec<Vec<String>>>,
    pub x_minus: Vec<Vec<Vec<String>>>,
    pub blocks: Vec<Block>,
}

/// Swaps the tensor legs of a `d² × d²` matrix.
pub fn flip(m: &QMat, d: usize) -> QMat {
    let mut out = linalg::zeros(d * d, d * d);
    for i in 0..d {
        for k in 0..d {
            for j in 0..d {
                for l in 0..d {
                    out[k * d + i][l * d + j] = m[i * d + k][j * d + l].clone();
                }
            }
        }
    }
    out
}

/// The flip operator on V ⊗ V.
pub fn swap(d: usize) -> QMat {
    let mut p = linalg::zeros(d * d, d * d);
    for i in 0..d {
        for k in 0..d {
            p[i * d + k][k * d + i] = qi(1);
        }
    }
    p
}

pub fn kron(a: &QMat, b: &QMat) -> QMat {
    let (m, n) = (a.len(), b.len());
    let mut out = linalg::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..m {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    if !b[k][l].is_zero() {
                        out[i * n + k][j * n + l] = &a[i][j] * &b[k][l];
                    }
                }
            }
        }
    }
    out
}

/// CYBE residual `[r12,r13] + [r12,r23] + [r13,r23]` on V^{⊗3}.
pub fn cybe_residual_matrix(r: &QMat, d: usize) -> QMat {
    let id = linalg::identity(d);
    let r12 = kron(r, &id);
    let r23 = kron(&id, r);
    // r13 = P23 r12 P23
    let p23 = kron(&id, &swap(d));
    let r13 = linalg::matmul(&linalg::matmul(&p23, &r12), &p23);
    let c = |a: &QMat, b: &QMat| rootdata::commutator(a, b);
    rootdata::add(&rootdata::add(&c(&r12, &r13), &c(&r12, &r23)), &c(&r13, &r23))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hseries::qr;

    #[test]
    fn sl2_vector_matrices() {
        let rd = RootData::sl(2);
        let v = RepData::vector(&rd);
        assert_eq!(v.pi[rd.h(0)], vec![vec![qi(1), qi(0)], vec![qi(0), qi(-1)]]);
        assert_eq!(v.pi[rd.xp(0)], vec![vec![qi(0), qi(1)], vec![qi(0), qi(0)]]);
        assert_eq!(v.pi[rd.xm(0)], vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)]]);
        assert_eq!(v.weights, vec![vec![qr(1, 2)], vec![qr(-1, 2)]]);
    }

    #[test]
    fn sl3_vector_weights() {
        let rd = RootData::sl(3);
        let v = RepData::vector(&rd);
        // ε_1 = (2α_1 + α_2)/3, ε_2 = (-α_1 + α_2)/3, ε_3 = (-α_1 - 2α_2)/3
        assert_eq!(v.weights[0], vec![qr(2, 3), qr(1, 3)]);
        assert_eq!(v.weights[1], vec![qr(-1, 3), qr(1, 3)]);
        assert_eq!(v.weights[2], vec![qr(-1, 3), qr(-2, 3)]);
        assert_eq!(v.entry_weight(0, 1), vec![qi(1), qi(0)]);
    }

    #[test]
    fn invariant_dimensions() {
        let rd = RootData::sl(2);
        let v = RepData::vector(&rd);
        assert_eq!(v.invariants().len(), 1);
        let vv = v.direct_sum(&v);
        assert_eq!(vv.invariants().len(), 4);
        assert!(!vv.multiplicity_free());
        let adj = RepData::sl2_adjoint(&rd);
        assert_eq!(v.direct_sum(&adj).invariants().len(), 2);
    }

    #[test]
    fn kappa_is_computed() {
        assert_eq!(RepData::vector(&RootData::sl(2)).kappa(), qi(4));
        assert_eq!(RepData::vector(&RootData::sl(3)).kappa(), qi(6));
        assert_eq!(RepData::sl2_adjoint(&RootData::sl(2)).kappa(), qi(4));
    }

    #[test]
    fn sl2_classical_r() {
        let v = RepData::vector(&RootData::sl(2));
        let r = v.classical_r();
        let mut expect = linalg::zeros(4, 4);
        // E12 ⊗ E21 at row (1,2), column (2,1).
        expect[1][2] = qi(1);
        for (k, s) in [(0, 1), (1, -1), (2, -1), (3, 1)] {
            expect[k][k] = qr(s, 4);
        }
        assert_eq!(r, expect);
    }

    #[test]
    fn cybe_and_casimir_invariance() {
        for n in 2..=3 {
            let v = RepData::vector(&RootData::sl(n));
            let r = v.classical_r();
            assert!(cybe_residual_matrix(&r, v.dim).iter().all(|row| linalg::is_zero_vec(row)));
            let om = v.casimir();
            let id = linalg::identity(v.dim);
            for p in &v.pi {
                let dx = rootdata::add(&kron(p, &id), &kron(&id, p));
                assert!(rootdata::commutator(&om, &dx).iter().all(|row| linalg::is_zero_vec(row)));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let rd = RootData::sl(2);
        let v = RepData::sl2_irrep(&rd, 3);
        let j = serde_json::to_string(&v.to_json()).unwrap();
        let back = RepData::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.pi, v.pi);
        assert_eq!(back.weights, v.weights);
    }
}
