use super::hopf::HopfData;
use super::{Presentation, RewriteSystem, UrgError};
use crate::classical::Block;
use crate::hseries::{qr, HSeries, Q};
use crate::ncalg::{GenId, NCPoly, Sign};
use num::Zero;
use std::collections::BTreeMap;

/// The central elements `z_j^±`, one per composition factor and sign.
#[derive(Clone, Debug)]
pub struct Center {
    pub blocks: Vec<Block>,
    pub z: BTreeMap<(Sign, usize), NCPoly>,
}

/// `Σ_{k=1}^{N+1} ((-ħ)^{k-1}/k) x_k`, the series of `log(1 + ħx)/ħ` given
/// the powers `x_k`.
fn log_series<F: FnMut(usize) -> NCPoly>(order: usize, mut power: F) -> NCPoly {
    let mut out = NCPoly::zero(1, order);
    for k in 1..=order + 1 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = HSeries::monomial(qr(sign, k as i64), k - 1, order);
        out.add_scaled(&power(k), &c);
    }
    out
}

fn sign_factor(s: Sign) -> i64 {
    match s {
        Sign::Plus => 1,
        Sign::Minus => -1,
    }
}

impl Center {
    /// `z_j^± = ±(2/dim V_j) Σ_k ((-ħ)^{k-1}/k) Tr_{V_j}((T^±)^k)`.
    pub fn build(p: &Presentation) -> Result<Self, UrgError> {
        let rep = p.rep();
        if !rep.multiplicity_free() {
            return Err(UrgError::UnsupportedMultiplicity);
        }
        let n = p.order;
        let mut z = BTreeMap::new();
        for &s in &p.signs {
            let t = p.t_matrix(s, n);
            let mut powers = vec![t.clone()];
            for _ in 1..=n {
                let next = powers.last().expect("nonempty").mul(&t);
                powers.push(next);
            }
            for (b, blk) in rep.blocks.iter().enumerate() {
                let tr = |k: usize| {
                    let mut acc = NCPoly::zero(1, n);
                    for i in blk.start..blk.start + blk.dim {
                        acc = acc.add(powers[k - 1].get(i, i));
                    }
                    acc
                };
                let x = log_series(n, tr).scale_q(&qr(2 * sign_factor(s), blk.dim as i64));
                z.insert((s, b), x);
            }
        }
        Ok(Center { blocks: rep.blocks.clone(), z })
    }

    pub fn get(&self, s: Sign, block: usize) -> &NCPoly {
        &self.z[&(s, block)]
    }

    /// Generators `t` with `nf([z, t]) ≠ 0`.
    pub fn non_central(&self, p: &Presentation, rw: &RewriteSystem) -> Result<Vec<(Sign, usize, GenId)>, UrgError> {
        let mut bad = Vec::new();
        for ((s, b), z) in &self.z {
            for g in &p.generators {
                let t = NCPoly::gen(*g, p.order);
                if !rw.nf(&z.commutator(&t))?.is_zero() {
                    bad.push((*s, *b, *g));
                }
            }
        }
        Ok(bad)
    }

    /// `q^{±dim V_j z_j^±} = exp(±ħ dim V_j z_j^± / 2)`, normal-formed.
    pub fn q_power(&self, p: &Presentation, rw: &RewriteSystem, s: Sign, block: usize) -> Result<NCPoly, UrgError> {
        let n = p.order;
        let dim = self.blocks[block].dim as i64;
        let x = self.get(s, block).shift(1).scale_q(&qr(sign_factor(s) * dim, 2));
        let x = rw.nf(&x)?;
        let mut acc = NCPoly::one(1, n);
        let mut term = NCPoly::one(1, n);
        for m in 1..=n {
            term = rw.nf_mul(&term, &x)?.scale_q(&qr(1, m as i64));
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// `∏_{i ∈ V_j} ℓ^s_ii` in index order.
pub fn diagonal_product(p: &Presentation, s: Sign, blk: &Block, order: usize) -> NCPoly {
    let mut acc = NCPoly::one(1, order);
    for i in blk.start..blk.start + blk.dim {
        acc = acc.mul(&p.ell(s, i, i, order));
    }
    acc
}

/// `nf(Δ(x)) - nf(x ⊗ x)`.
pub fn grouplike_defect(h: &HopfData, rw: &RewriteSystem, x: &NCPoly) -> Result<NCPoly, UrgError> {
    rw.nf(&h.delta(x).sub(&x.tensor(x)))
}

/// Fails unless every weight-zero generator is diagonal and all diagonal
/// generators pairwise commute.
pub fn check_diagonal_sector(p: &Presentation, rw: &RewriteSystem) -> Result<Vec<GenId>, UrgError> {
    let mut diag = Vec::new();
    for g in &p.generators {
        let zero_weight = p.weights[g].iter().all(Q::is_zero);
        if zero_weight && g.i != g.j {
            return Err(UrgError::Unsupported(format!("weight-zero generator {g} is off-diagonal")));
        }
        if zero_weight {
            diag.push(*g);
        }
    }
    for (a, x) in diag.iter().enumerate() {
        for y in &diag[a + 1..] {
            let c = NCPoly::gen(*x, p.order).commutator(&NCPoly::gen(*y, p.order));
            if !rw.nf(&c)?.is_zero() {
                return Err(UrgError::NonCommutingDiagonal(format!("{x}, {y}")));
            }
        }
    }
    Ok(diag)
}

/// Diagonal entries `Θ_ii = (2/ħ) log(ℓ⁺_ii ℓ⁻_ii) - z⁺_j + z⁻_j` for `i ∈ V_j`.
pub fn theta_matrix(p: &Presentation, rw: &RewriteSystem, center: &Center) -> Result<Vec<NCPoly>, UrgError> {
    if p.signs.len() != 2 {
        return Err(UrgError::Unsupported("Θ needs both signs".into()));
    }
    check_diagonal_sector(p, rw)?;
    let n = p.order;
    let mut out = Vec::new();
    for (b, blk) in center.blocks.iter().enumerate() {
        for i in blk.start..blk.start + blk.dim {
            let mut x = NCPoly::zero(1, n);
            for s in Sign::both() {
                let t = p.t(s, i, i, 1, 1);
                x = x.add(&log_series(n, |k| t.pow(k as u32)).scale_q(&qr(2, 1)));
            }
            x = x.sub(center.get(Sign::Plus, b)).add(center.get(Sign::Minus, b));
            out.push(rw.nf(&x)?);
        }
    }
    Ok(out)
}
