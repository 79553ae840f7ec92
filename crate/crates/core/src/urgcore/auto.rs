use super::hopf::place;
use super::{Presentation, RewriteSystem, UrgError};
use crate::classical::RepData;
use crate::hseries::{qpow, HSeries, Q};
use crate::ncalg::{GenId, HMatrix, NCPoly, Sign};
use crate::qmatrix::RMatrix;
use num::Zero;
use std::collections::BTreeMap;

/// An algebra endomorphism given by the images of the generators.
#[derive(Clone, Debug)]
pub struct GenMap {
    pub name: String,
    pub images: BTreeMap<GenId, NCPoly>,
}

impl GenMap {
    /// Extends multiplicatively to a polynomial of any arity.
    pub fn apply(&self, x: &NCPoly) -> NCPoly {
        let arity = x.arity();
        x.substitute(arity, false, |l| place(&self.images[&l.gen], l.leg, arity))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GenMap) -> GenMap {
        let images = other.images.iter().map(|(g, x)| (*g, self.apply(x))).collect();
        GenMap { name: format!("{} ∘ {}", self.name, other.name), images }
    }

    /// The generator (if any) whose image differs from itself.
    pub fn non_identity(&self, rw: &RewriteSystem) -> Result<Option<GenId>, UrgError> {
        for (g, x) in &self.images {
            let t = NCPoly::gen(*g, x.order());
            if !rw.nf(&x.sub(&t))?.is_zero() {
                return Ok(Some(*g));
            }
        }
        Ok(None)
    }

    /// Relations whose image does not normal-form to zero.
    pub fn broken_relations(&self, p: &Presentation, rw: &RewriteSystem) -> Result<Vec<String>, UrgError> {
        let mut bad = Vec::new();
        for rel in &p.relations {
            if !rw.nf(&self.apply(&rel.poly))?.is_zero() {
                bad.push(rel.label());
            }
        }
        Ok(bad)
    }
}

/// `q^{a π(h)}` for `h` in coroot coordinates; `π(h)` must be diagonal.
pub fn q_pow_pi(rep: &RepData, h: &[Q], a: &Q, order: usize) -> Result<HMatrix, UrgError> {
    let d = rep.dim;
    let rd = &rep.root;
    let mut m = HMatrix::zero(d, order);
    for i in 0..d {
        let mut v = Q::zero();
        for (k, c) in h.iter().enumerate() {
            for j in 0..d {
                let x = &rep.pi[rd.h(k)][i][j];
                if i != j && !x.is_zero() {
                    return Err(UrgError::Unsupported("Cartan action is not diagonal".into()));
                }
            }
            v += c * &rep.pi[rd.h(k)][i][i];
        }
        m.set(i, i, qpow(&(a * v), order));
    }
    Ok(m)
}

/// `C ∈ GL_I(R_π)`: weight zero and `(C ⊗ C) R (C ⊗ C)⁻¹ = R`.
pub fn check_gl_i(r: &RMatrix, c: &HMatrix) -> Result<(), UrgError> {
    let d = r.dim();
    let order = c.order();
    for i in 0..d {
        for j in 0..d {
            let w = r.rep.entry_weight(i, j);
            if !c.get(i, j).is_zero() && w.iter().any(|x| !x.is_zero()) {
                return Err(UrgError::Membership(format!("entry ({},{}) has nonzero weight", i + 1, j + 1)));
            }
        }
    }
    let cc = c.kron(c);
    let rm = r.mat.truncate(order);
    if !cc.mul(&rm).sub(&rm.mul(&cc)).is_zero() {
        return Err(UrgError::Membership("C ⊗ C does not commute with R".into()));
    }
    Ok(())
}

/// `C ∈ GL(V)^g`: commutes with the image of every basis element of g.
pub fn check_gl_v_g(rep: &RepData, c: &HMatrix) -> Result<(), UrgError> {
    let order = c.order();
    for (a, x) in rep.pi.iter().enumerate() {
        let m = HMatrix::from_rational(x, order);
        if !m.commutator(c).is_zero() {
            return Err(UrgError::Membership(format!("does not commute with basis element {a}")));
        }
    }
    Ok(())
}

fn matrix_entry_poly(m: &HMatrix, i: usize, j: usize) -> NCPoly {
    NCPoly::scalar(m.get(i, j).clone(), 1)
}

/// `(C D - 1)/ħ`, one order below `C` and `D`.
fn offset(c: &HMatrix, d: &HMatrix) -> Result<HMatrix, UrgError> {
    let n = c.order();
    let prod = c.mul(d).sub(&HMatrix::identity(c.dim(), n));
    let entries: Result<Vec<HSeries>, _> = prod.entries().iter().map(HSeries::div_by_hbar).collect();
    let entries = entries.map_err(|_| UrgError::Membership("C D is not 1 mod ħ".into()))?;
    Ok(HMatrix::from_entries(c.dim(), entries))
}

/// θ_C^D: `L^± ↦ C L^± D`, i.e. `t ↦ ((CD)_ij - δ_ij)/ħ + Σ C_ia t_ab D_bj`.
/// `c` and `d` are given at order `p.order + 1`.
pub fn theta(p: &Presentation, c: &HMatrix, d: &HMatrix, name: &str) -> Result<GenMap, UrgError> {
    check_gl_i(&p.r, c)?;
    check_gl_i(&p.r, d)?;
    let n = p.order;
    let off = offset(c, d)?;
    let (c, d) = (c.truncate(n), d.truncate(n));
    let dim = p.d();
    let mut images = BTreeMap::new();
    for g in &p.generators {
        let (s, i, j) = (g.sign, g.i - 1, g.j - 1);
        let mut x = matrix_entry_poly(&off, i, j);
        for a in 0..dim {
            for b in 0..dim {
                let coef = c.get(i, a) * d.get(b, j);
                if !coef.is_zero() {
                    x.add_scaled(&p.t(s, a, b, 1, 1), &coef);
                }
            }
        }
        images.insert(*g, x);
    }
    Ok(GenMap { name: name.to_string(), images })
}

/// χ: `L^± ↦ L^± C^±` with `C^± ∈ GL(V)^g`, given at order `p.order + 1`.
pub fn chi(p: &Presentation, c_plus: &HMatrix, c_minus: &HMatrix) -> Result<GenMap, UrgError> {
    let n = p.order;
    let id = HMatrix::identity(p.d(), n + 1);
    let mut parts = BTreeMap::new();
    for (s, c) in [(Sign::Plus, c_plus), (Sign::Minus, c_minus)] {
        check_gl_v_g(p.rep(), c)?;
        parts.insert(s, (offset(&id, c)?, c.truncate(n)));
    }
    let dim = p.d();
    let mut images = BTreeMap::new();
    for g in &p.generators {
        let (s, i, j) = (g.sign, g.i - 1, g.j - 1);
        let (off, c) = &parts[&s];
        let mut x = matrix_entry_poly(off, i, j);
        for a in 0..dim {
            let coef = c.get(a, j);
            if !coef.is_zero() {
                x.add_scaled(&p.t(s, i, a, 1, 1), coef);
            }
        }
        images.insert(*g, x);
    }
    Ok(GenMap { name: "chi".into(), images })
}

/// γ_h with `C = D = q^{-π(h)/2}`.
pub fn gamma(p: &Presentation, h: &[Q]) -> Result<GenMap, UrgError> {
    let c = q_pow_pi(p.rep(), h, &crate::hseries::qr(-1, 2), p.order + 1)?;
    theta(p, &c, &c, "gamma")
}

/// ϑ^Ad_h with `C = q^{π(h)}`, `D = C⁻¹`.
pub fn theta_ad(p: &Presentation, h: &[Q]) -> Result<GenMap, UrgError> {
    let one = crate::hseries::qi(1);
    let c = q_pow_pi(p.rep(), h, &one, p.order + 1)?;
    let d = q_pow_pi(p.rep(), h, &-one, p.order + 1)?;
    theta(p, &c, &d, "theta_ad")
}

/// The scalar `q^{(ε_i - ε_j)(h)}` by which ϑ^Ad_h should act on `t_ij`.
pub fn grading_scalar(p: &Presentation, g: &GenId, h: &[Q]) -> HSeries {
    let rep = p.rep();
    let rd = &rep.root;
    let (i, j) = (g.i - 1, g.j - 1);
    let mut v = Q::zero();
    for (k, c) in h.iter().enumerate() {
        v += c * (&rep.pi[rd.h(k)][i][i] - &rep.pi[rd.h(k)][j][j]);
    }
    qpow(&v, p.order)
}
