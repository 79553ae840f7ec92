use super::center::diagonal_product;
use super::hopf::place;
use super::{Divergence, Presentation, RewriteSystem, UrgError};
use crate::hseries::HSeries;
use crate::ncalg::{GenId, Letter, NCPoly, Sign};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientKind {
    /// `z_j^± = 0`.
    Double,
    /// Additionally `ℓ⁺_ii ℓ⁻_ii = 1`.
    Uhg,
}

/// A quotient presented by eliminating generators: each eliminated one is
/// replaced by a polynomial in the survivors, then the base rules apply.
#[derive(Clone, Debug)]
pub struct QuotientSystem {
    pub kind: QuotientKind,
    pub base: RewriteSystem,
    pub substitutions: BTreeMap<GenId, NCPoly>,
    pub generators: Vec<GenId>,
}

/// `(x - 1)/ħ` for `x ≡ 1 mod ħ`, one order lower.
fn minus_one_over_hbar(x: &NCPoly) -> NCPoly {
    let n = x.order();
    let shifted = x.sub(&NCPoly::one(1, n));
    shifted.map_coeffs(n - 1, |c| c.div_by_hbar().expect("x ≡ 1 mod ħ"))
}

/// `x⁻¹ = Σ_k (1 - x)^k` for `x ≡ 1 mod ħ`.
fn inverse_unipotent(x: &NCPoly) -> NCPoly {
    let n = x.order();
    let y = NCPoly::one(1, n).sub(x);
    let mut acc = NCPoly::one(1, n);
    let mut term = NCPoly::one(1, n);
    for _ in 0..n {
        term = term.mul(&y);
        acc = acc.add(&term);
    }
    acc
}

impl QuotientSystem {
    /// In each composition factor the last diagonal generator of each sign
    /// is eliminated via `∏ ℓ^±_ii = 1`; for `Uhg` the remaining `t⁻_ii`
    /// are eliminated via `ℓ⁻_ii = (ℓ⁺_ii)⁻¹`.
    pub fn build(p: &Presentation, base: RewriteSystem, kind: QuotientKind) -> Result<Self, UrgError> {
        if p.signs.len() != 2 {
            return Err(UrgError::Unsupported("quotients need both signs".into()));
        }
        if !p.rep().multiplicity_free() {
            return Err(UrgError::UnsupportedMultiplicity);
        }
        triangular_check(p)?;
        let up = p.order + 1;
        let mut subs = BTreeMap::new();
        for blk in &p.rep().blocks {
            let last = blk.start + blk.dim - 1;
            let head = crate::classical::Block { start: blk.start, dim: blk.dim - 1, highest: blk.highest.clone() };
            for s in Sign::both() {
                let src = if kind == QuotientKind::Uhg { Sign::Plus } else { s };
                let prod = diagonal_product(p, src, &head, up);
                // ℓ^+_nn = (∏ ℓ^+_ii)^{-1}; ℓ^-_nn is (∏ ℓ^-_ii)^{-1}, which
                // equals ∏ ℓ^+_ii in the Uhg quotient.
                let ell = if kind == QuotientKind::Uhg && s == Sign::Minus { prod } else { inverse_unipotent(&prod) };
                subs.insert(GenId::new(s, last + 1, last + 1), minus_one_over_hbar(&ell));
            }
            if kind == QuotientKind::Uhg {
                for i in blk.start..last {
                    let ell = inverse_unipotent(&p.ell(Sign::Plus, i, i, up));
                    subs.insert(GenId::new(Sign::Minus, i + 1, i + 1), minus_one_over_hbar(&ell));
                }
            }
        }
        let generators = base.generators.iter().filter(|g| !subs.contains_key(g)).copied().collect();
        Ok(QuotientSystem { kind, base, substitutions: subs, generators })
    }

    /// Alternates substitution and straightening until no eliminated
    /// generator remains.
    pub fn nf(&self, x: &NCPoly) -> Result<NCPoly, UrgError> {
        let arity = x.arity();
        let mut cur = x.clone();
        for _ in 0..64 {
            let y = self.base.nf(&cur)?;
            if !y.mentions(|l| self.substitutions.contains_key(&l.gen)) {
                return Ok(y);
            }
            cur = y.substitute(arity, false, |l| match self.substitutions.get(&l.gen) {
                Some(s) => place(s, l.leg, arity),
                None => NCPoly::letter(l.gen, l.leg, arity, x.order()),
            });
        }
        Err(UrgError::QuotientLoop)
    }

    /// Overlaps `z y x` among the surviving generators, resolved both ways.
    pub fn confluence(&self) -> Result<Vec<Divergence>, UrgError> {
        let n = self.base.order;
        let g = &self.generators;
        let gen = |x: &GenId| NCPoly::gen(*x, n);
        let mut out = Vec::new();
        for (a, x) in g.iter().enumerate() {
            for (b, y) in g.iter().enumerate().skip(a + 1) {
                for z in g.iter().skip(b + 1) {
                    let left = self.nf(&self.nf(&gen(z).mul(&gen(y)))?.mul(&gen(x)))?;
                    let right = self.nf(&gen(z).mul(&self.nf(&gen(y).mul(&gen(x)))?))?;
                    if left != right {
                        out.push(Divergence { word: vec![*z, *y, *x], difference: left.sub(&right) });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Extra relations as `lhs → rhs` pairs for presentation output.
    pub fn extra_relations(&self) -> Vec<(Vec<Letter>, NCPoly)> {
        self.substitutions.iter().map(|(g, s)| (vec![Letter { gen: *g, leg: 1 }], s.clone())).collect()
    }

    /// Normal form of `x - c` for a scalar `c`.
    pub fn defect(&self, x: &NCPoly, c: &HSeries) -> Result<NCPoly, UrgError> {
        self.nf(&x.sub(&NCPoly::scalar(c.clone(), x.arity())))
    }
}

/// The elimination assumes `(T^±)^k` has diagonal `(t_ii)^k`, which holds
/// when every surviving `t⁺_ij` has `i ≤ j` and every `t⁻_ij` has `i ≥ j`.
fn triangular_check(p: &Presentation) -> Result<(), UrgError> {
    for g in &p.generators {
        let ok = match g.sign {
            Sign::Plus => g.i <= g.j,
            Sign::Minus => g.i >= g.j,
        };
        if !ok {
            return Err(UrgError::Unsupported(format!("generator {g} breaks triangularity in the basis order")));
        }
    }
    Ok(())
}
