//! Quantum R-matrices over truncated series: the sl_n vector formula, the
//! sl_2 universal R evaluated on finite-dimensional modules, and validators.

use crate::classical::{RepData, RepJson, RootData};
use crate::hseries::{fmt_q, qfactorial, qint, qpow, qr, HSeries, Q};
use crate::linalg::QMat;
use crate::ncalg::HMatrix;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RError {
    #[error("candidate formula rejected: {0} fails")]
    FormulaRejected(String),
    #[error("representation is not an sl_2 module")]
    NotSl2,
    #[error("matrix dimension {0} does not match dim(V)^2 = {1}")]
    Dim(usize, usize),
    #[error("summands come from different Lie algebras")]
    MismatchedAlgebra,
    #[error("invalid input: {0}")]
    Input(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RKind {
    SlnVector,
    Sl2Universal,
    Custom,
}

/// `R_π` on `V ⊗ V` with the module it was evaluated on.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub rep: RepData,
    pub mat: HMatrix,
    pub kind: RKind,
    /// Exponent `a` of the scalar prefactor `q^a` included in `mat`.
    pub prefactor: Q,
}

/// Quantum sl_2 module data: `E`, `F` and the diagonal of `h` per basis vector.
#[derive(Clone, Debug)]
pub struct QuantumSl2 {
    pub e: HMatrix,
    pub f: HMatrix,
    pub h: Vec<i64>,
}

impl QuantumSl2 {
    /// Blockwise quantum deformation: on a block of highest weight `m`,
    /// `E v_k = [m-k+1] v_{k-1}` and `F v_k = [k+1] v_{k+1}`.
    pub fn of(rep: &RepData, order: usize) -> Result<Self, RError> {
        if rep.root.n != 2 {
            return Err(RError::NotSl2);
        }
        let d = rep.dim;
        let mut e = HMatrix::zero(d, order);
        let mut f = HMatrix::zero(d, order);
        let mut h = vec![0; d];
        for b in &rep.blocks {
            let m = b.highest[0];
            if m < 0 || b.dim as i64 != m + 1 {
                return Err(RError::NotSl2);
            }
            for k in 0..b.dim {
                h[b.start + k] = m - 2 * k as i64;
                if k > 0 {
                    e.set(b.start + k - 1, b.start + k, qint(m - k as i64 + 1, order));
                }
                if k + 1 < b.dim {
                    f.set(b.start + k + 1, b.start + k, qint(k as i64 + 1, order));
                }
            }
        }
        // The classical limit must be the given module.
        let rd = &rep.root;
        let agree = |m: &HMatrix, c: &QMat| (0..d).all(|i| (0..d).all(|j| m.get(i, j).constant_term() == &c[i][j]));
        let hdiag = (0..d).all(|i| rep.pi[rd.h(0)][i][i] == Q::from_integer(h[i].into()));
        if !agree(&e, &rep.pi[rd.xp(0)]) || !agree(&f, &rep.pi[rd.xm(0)]) || !hdiag {
            return Err(RError::NotSl2);
        }
        Ok(QuantumSl2 { e, f, h })
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    pub fn order(&self) -> usize {
        self.e.order()
    }

    /// `q^{a h}` as a diagonal matrix.
    pub fn q_pow_h(&self, a: i64) -> HMatrix {
        let d = self.dim();
        let mut m = HMatrix::zero(d, self.order());
        for i in 0..d {
            m.set(i, i, qpow(&Q::from_integer((a * self.h[i]).into()), self.order()));
        }
        m
    }

    pub fn h_matrix(&self) -> HMatrix {
        let d = self.dim();
        let mut m = HMatrix::zero(d, self.order());
        for i in 0..d {
            m.set(i, i, HSeries::constant(Q::from_integer(self.h[i].into()), self.order()));
        }
        m
    }

    /// `(π ⊗ π)Δ(x)` for `x ∈ {E, F, h}`.
    pub fn coproduct(&self, x: char) -> HMatrix {
        let id = HMatrix::identity(self.dim(), self.order());
        match x {
            'E' => self.e.kron(&self.q_pow_h(1)).add(&id.kron(&self.e)),
            'F' => self.f.kron(&id).add(&self.q_pow_h(-1).kron(&self.f)),
            _ => self.h_matrix().kron(&id).add(&id.kron(&self.h_matrix())),
        }
    }

    /// Checks `[E, F] = (q^h - q^{-h}) / (q - q⁻¹)` on the module.
    pub fn check_relations(&self) -> bool {
        let d = self.dim();
        let order = self.order();
        let lhs = self.e.commutator(&self.f);
        (0..d).all(|i| {
            let want = qint(self.h[i], order);
            (0..d).all(|j| if i == j { lhs.get(i, j) == &want } else { lhs.get(i, j).is_zero() })
        })
    }
}

/// `q^{-1/n} [Σ q^{δ_ij} E_ii ⊗ E_jj + (q - q⁻¹) Σ_{i<j} E_ij ⊗ E_ji]`.
pub fn sln_vector_r(n: usize, order: usize) -> RMatrix {
    let rep = RepData::vector(&RootData::sl(n));
    let unscaled = sln_vector_unscaled(n, order);
    let pre = qr(-1, n as i64);
    let mat = unscaled.scale(&qpow(&pre, order));
    RMatrix { rep, mat, kind: RKind::SlnVector, prefactor: pre }
}

/// The matrix in brackets above, without the scalar prefactor.
pub fn sln_vector_unscaled(n: usize, order: usize) -> HMatrix {
    let mut m = HMatrix::zero(n * n, order);
    let q = qpow(&Q::one(), order);
    let qmq = &q - &qpow(&-Q::one(), order);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { q.clone() } else { HSeries::one(order) };
            m.set(i * n + j, i * n + j, v);
            if i < j {
                m.set(i * n + j, j * n + i, qmq.clone());
            }
        }
    }
    m
}

/// Coefficient `q^{k(k-1)/2} (q - q⁻¹)^k / [k]!` of `E^k ⊗ F^k`.
pub fn sl2_coefficient(k: u32, order: usize) -> HSeries {
    let qmq = &qpow(&Q::one(), order) - &qpow(&-Q::one(), order);
    let num = &qpow(&Q::from_integer((k * k.saturating_sub(1) / 2).into()), order) * &qmq.pow(k);
    &num * &qfactorial(k, order).invert().expect("[k]! is a unit")
}

/// `q^{h⊗h/2} Σ_k c_k E^k ⊗ F^k` on `rep`, accepted only if it passes QYBE,
/// the intertwiner identities and the semiclassical check.
pub fn sl2_universal_r(rep: &RepData, order: usize) -> Result<RMatrix, RError> {
    let r = sl2_universal_candidate(rep, order)?;
    let qs = QuantumSl2::of(rep, order)?;
    if !qs.check_relations() {
        return Err(RError::FormulaRejected("quantum module relations".into()));
    }
    if qybe_residual(&r.mat, rep.dim).is_some() {
        return Err(RError::FormulaRejected("QYBE".into()));
    }
    if let Some(x) = intertwiner_failure(&r, &qs) {
        return Err(RError::FormulaRejected(format!("intertwiner for {x}")));
    }
    if order >= 1 && !semiclassical_ok(&r) {
        return Err(RError::FormulaRejected("semiclassical limit".into()));
    }
    Ok(r)
}

/// The unvalidated sl_2 formula.
pub fn sl2_universal_candidate(rep: &RepData, order: usize) -> Result<RMatrix, RError> {
    let qs = QuantumSl2::of(rep, order)?;
    let d = rep.dim;
    let mut cartan = HMatrix::zero(d * d, order);
    for i in 0..d {
        for j in 0..d {
            let ex = qr(qs.h[i] * qs.h[j], 2);
            cartan.set(i * d + j, i * d + j, qpow(&ex, order));
        }
    }
    let mut sum = HMatrix::zero(d * d, order);
    let mut ek = HMatrix::identity(d, order);
    let mut fk = HMatrix::identity(d, order);
    for k in 0..d as u32 {
        if ek.is_zero() || fk.is_zero() {
            break;
        }
        sum = sum.add(&ek.kron(&fk).scale(&sl2_coefficient(k, order)));
        ek = ek.mul(&qs.e);
        fk = fk.mul(&qs.f);
    }
    Ok(RMatrix { rep: rep.clone(), mat: cartan.mul(&sum), kind: RKind::Sl2Universal, prefactor: Q::zero() })
}

/// Universal R on `a.rep ⊕ b.rep`; the diagonal blocks must reproduce the
/// summands' matrices.
pub fn direct_sum_r(a: &RMatrix, b: &RMatrix) -> Result<RMatrix, RError> {
    if a.rep.root.n != b.rep.root.n || a.kind != RKind::Sl2Universal || b.kind != RKind::Sl2Universal {
        return Err(RError::MismatchedAlgebra);
    }
    let order = a.mat.order();
    let sum = a.rep.direct_sum(&b.rep);
    let r = sl2_universal_r(&sum, order)?;
    let (da, db) = (a.rep.dim, b.rep.dim);
    let d = da + db;
    for (src, off, n) in [(a, 0, da), (b, da, db)] {
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let big = r.mat.get((off + i) * d + off + k, (off + j) * d + off + l);
                        if big != src.mat.get(i * n + k, j * n + l) {
                            return Err(RError::FormulaRejected("block assembly".into()));
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// First nonzero entry of `R12 R13 R23 - R23 R13 R12`.
pub fn qybe_residual(r: &HMatrix, d: usize) -> Option<(usize, usize, HSeries)> {
    let r12 = r.leg_embed(d, &[1, 2], 3).expect("legs valid");
    let r13 = r.leg_embed(d, &[1, 3], 3).expect("legs valid");
    let r23 = r.leg_embed(d, &[2, 3], 3).expect("legs valid");
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    lhs.sub(&rhs).first_nonzero()
}

fn intertwiner_failure(r: &RMatrix, qs: &QuantumSl2) -> Option<char> {
    let d = r.rep.dim;
    ['E', 'F', 'h'].into_iter().find(|&x| {
        let dx = qs.coproduct(x);
        let op = dx.flip(d);
        !r.mat.mul(&dx).sub(&op.mul(&r.mat)).is_zero()
    })
}

impl RMatrix {
    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    pub fn order(&self) -> usize {
        self.mat.order()
    }

    /// `Ṙ = (R - 1)/ħ`, one truncation order lower than `R`.
    pub fn rdot(&self) -> Result<HMatrix, RError> {
        let id = HMatrix::identity(self.mat.dim(), self.order());
        let diff = self.mat.sub(&id);
        let entries: Result<Vec<HSeries>, _> = diff.entries().iter().map(HSeries::div_by_hbar).collect();
        entries
            .map(|e| HMatrix::from_entries(self.mat.dim(), e))
            .map_err(|_| RError::Input("R is not congruent to 1 mod ħ".into()))
    }

    /// `Ṙ mod ħ` as a rational matrix.
    pub fn classical_limit(&self) -> Option<QMat> {
        let rd = self.rdot().ok()?;
        let n = rd.dim();
        Some((0..n).map(|i| (0..n).map(|j| rd.get(i, j).constant_term().clone()).collect()).collect())
    }

    /// `R⁻¹`, which exists since `R ≡ 1 mod ħ`.
    pub fn inverse(&self) -> Option<HMatrix> {
        self.mat.invert_unipotent()
    }

    pub fn validate(&self) -> Validation {
        let d = self.dim();
        let qybe = qybe_residual(&self.mat, d);
        let semiclassical = semiclassical_ok(self);
        let weight_zero = weight_zero_ok(self);
        let hecke = (self.kind == RKind::SlnVector).then(|| hecke_ok(self));
        Validation {
            qybe: qybe.is_none(),
            qybe_residual: qybe.map(|(i, j, v)| (i, j, format!("{v}"))),
            semiclassical,
            weight_zero,
            hecke,
        }
    }

    /// Same matrix with a single entry perturbed by `ħ^k`.
    pub fn perturbed(&self, row: usize, col: usize, k: usize) -> RMatrix {
        let mut m = self.mat.clone();
        let v = m.get(row, col) + &HSeries::monomial(Q::one(), k, self.order());
        m.set(row, col, v);
        RMatrix { mat: m, kind: RKind::Custom, ..self.clone() }
    }

    pub fn to_json(&self) -> RMatrixJson {
        RMatrixJson { dim: self.mat.dim(), entries: self.mat.rows(), rep: self.rep.to_json() }
    }

    pub fn from_json(j: &RMatrixJson) -> Result<Self, RError> {
        let rep = RepData::from_json(&j.rep).map_err(|e| RError::Input(e.to_string()))?;
        if j.dim != rep.dim * rep.dim || j.entries.len() != j.dim || j.entries.iter().any(|r| r.len() != j.dim) {
            return Err(RError::Dim(j.dim, rep.dim * rep.dim));
        }
        let flat: Vec<HSeries> = j.entries.iter().flatten().cloned().collect();
        let order = flat.first().map_or(0, HSeries::order);
        if flat.iter().any(|e| e.order() != order) {
            return Err(RError::Input("mixed truncation orders".into()));
        }
        Ok(RMatrix { rep, mat: HMatrix::from_entries(j.dim, flat), kind: RKind::Custom, prefactor: Q::zero() })
    }
}

fn semiclassical_ok(r: &RMatrix) -> bool {
    r.order() >= 1 && r.classical_limit().is_some_and(|c| c == r.rep.classical_r())
}

fn weight_zero_ok(r: &RMatrix) -> bool {
    let d = r.dim();
    let order = r.order();
    let rd = &r.rep.root;
    (0..rd.rank).all(|i| {
        let h = HMatrix::from_rational(&r.rep.pi[rd.h(i)], order);
        let id = HMatrix::identity(d, order);
        let dh = h.kron(&id).add(&id.kron(&h));
        r.mat.commutator(&dh).is_zero()
    })
}

/// `(P R̂)² = (q - q⁻¹) P R̂ + 1` for the unscaled sl_n matrix.
fn hecke_ok(r: &RMatrix) -> bool {
    let d = r.dim();
    let order = r.order();
    let unscaled = r.mat.scale(&qpow(&-r.prefactor.clone(), order));
    let p = HMatrix::from_rational(&crate::classical::rep::swap(d), order);
    let pr = p.mul(&unscaled);
    let qmq = &qpow(&Q::one(), order) - &qpow(&-Q::one(), order);
    let rhs = pr.scale(&qmq).add(&HMatrix::identity(d * d, order));
    pr.mul(&pr) == rhs
}

#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub qybe: bool,
    pub qybe_residual: Option<(usize, usize, String)>,
    pub semiclassical: bool,
    pub weight_zero: bool,
    pub hecke: Option<bool>,
}

impl Validation {
    pub fn all_pass(&self) -> bool {
        self.qybe && self.semiclassical && self.weight_zero && self.hecke.unwrap_or(true)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RMatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<HSeries>>,
    pub rep: RepJson,
}

/// Human-readable prefactor, e.g. `q^(-1/2)`.
pub fn describe_prefactor(a: &Q) -> String {
    format!("q^({})", fmt_q(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hseries::{q, qi};

    #[test]
    fn n2_entries() {
        let r = sln_vector_r(2, 4);
        let s = r.mat.scale(&qpow(&qr(1, 2), 4));
        let qq = q(4);
        assert_eq!(s.get(0, 0), &qq);
        assert_eq!(s.get(1, 1), &HSeries::one(4));
        assert_eq!(s.get(2, 2), &HSeries::one(4));
        assert_eq!(s.get(3, 3), &qq);
        assert_eq!(s.get(1, 2), &(&qq - &qq.invert().unwrap()));
        assert!(s.get(2, 1).is_zero());
    }

    #[test]
    fn classical_limit_n2() {
        let r = sln_vector_r(2, 3);
        let c = r.classical_limit().unwrap();
        assert_eq!(c[1][2], qi(1));
        assert_eq!(c[0][0], qr(1, 4));
        assert_eq!(c[1][1], qr(-1, 4));
        assert_eq!(c, r.rep.classical_r());
    }

    #[test]
    fn validators() {
        let r = sln_vector_r(3, 4);
        assert!(r.validate().all_pass());
        let id = RMatrix { mat: HMatrix::identity(9, 4), kind: RKind::Custom, ..r.clone() };
        let v = id.validate();
        assert!(v.qybe && !v.semiclassical);
        let bad = sln_vector_r(2, 4).perturbed(1, 2, 2);
        let v = bad.validate();
        assert!(!v.qybe);
        assert!(v.qybe_residual.is_some());
    }

    #[test]
    fn sl2_universal_matches_vector_formula() {
        let rd = RootData::sl(2);
        let v = RepData::vector(&rd);
        let u = sl2_universal_r(&v, 5).unwrap();
        let s = sln_vector_r(2, 5);
        assert_eq!(u.mat, s.mat);
    }

    #[test]
    fn universal_on_adjoint_and_sum() {
        let rd = RootData::sl(2);
        let v = RepData::vector(&rd);
        let adj = RepData::sl2_adjoint(&rd);
        let r = sl2_universal_r(&adj, 4).unwrap();
        assert!(r.validate().all_pass());
        let rv = sl2_universal_r(&v, 4).unwrap();
        let sum = direct_sum_r(&rv, &rv).unwrap();
        assert_eq!(sum.dim(), 4);
        assert!(sum.validate().all_pass());
    }

    #[test]
    fn perturbed_second_coefficient_breaks_qybe() {
        let rd = RootData::sl(2);
        let adj = RepData::sl2_adjoint(&rd);
        let order = 4;
        let mut r = sl2_universal_candidate(&adj, order).unwrap();
        let qs = QuantumSl2::of(&adj, order).unwrap();
        let e2f2 = qs.e.mul(&qs.e).kron(&qs.f.mul(&qs.f));
        r.mat = r.mat.add(&e2f2.scale(&HSeries::monomial(Q::one(), 2, order)));
        assert!(qybe_residual(&r.mat, 3).is_some());
    }

    #[test]
    fn json_round_trip() {
        let r = sln_vector_r(2, 2);
        let j = serde_json::to_string(&r.to_json()).unwrap();
        let back = RMatrix::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.mat, r.mat);
    }
}
