use super::{Presentation, UrgError};
use crate::hseries::HSeries;
use crate::ncalg::{GenId, HMatrix, NCPoly, Sign};
use std::collections::BTreeMap;

/// Matrix images of the generators on V: `ρ(ℓ⁺_ij) = Σ_kl R_{(ik),(jl)} E_kl`
/// and `ρ(ℓ⁻_ij) = Σ_kl (R⁻¹)_{(ki),(lj)} E_kl`.
#[derive(Clone, Debug)]
pub struct FrtRep {
    pub ell: BTreeMap<GenId, HMatrix>,
    pub t: BTreeMap<GenId, HMatrix>,
    /// Images of killed `ℓ` entries, which must vanish.
    pub killed: BTreeMap<GenId, HMatrix>,
}

impl FrtRep {
    pub fn build(p: &Presentation) -> Result<Self, UrgError> {
        let d = p.d();
        let up = p.r.order();
        let r = &p.r.mat;
        let rinv = r.invert_unipotent().ok_or(UrgError::NotUnipotent)?;
        let mut ell = BTreeMap::new();
        let mut t = BTreeMap::new();
        let mut killed = BTreeMap::new();
        for &s in &p.signs {
            for i in 0..d {
                for j in 0..d {
                    let mut m = HMatrix::zero(d, up);
                    for k in 0..d {
                        for l in 0..d {
                            let v = match s {
                                Sign::Plus => r.get(i * d + k, j * d + l),
                                Sign::Minus => rinv.get(k * d + i, l * d + j),
                            };
                            m.set(k, l, v.clone());
                        }
                    }
                    let g = GenId::new(s, i + 1, j + 1);
                    if !p.is_alive(&g) {
                        killed.insert(g, m);
                        continue;
                    }
                    let shifted = if i == j { m.sub(&HMatrix::identity(d, up)) } else { m.clone() };
                    let entries: Result<Vec<HSeries>, _> = shifted.entries().iter().map(HSeries::div_by_hbar).collect();
                    let entries = entries.map_err(|_| UrgError::NotUnipotent)?;
                    t.insert(g, HMatrix::from_entries(d, entries));
                    ell.insert(g, m);
                }
            }
        }
        Ok(FrtRep { ell, t, killed })
    }

    /// Evaluates an arity-1 polynomial.
    pub fn eval(&self, x: &NCPoly) -> HMatrix {
        let d = self.t.values().next().map_or(0, HMatrix::dim);
        let n = x.order();
        let mut out = HMatrix::zero(d, n);
        for (w, c) in x.terms() {
            let mut m = HMatrix::identity(d, n);
            for l in w {
                m = m.mul(&self.t[&l.gen]);
            }
            out = out.add(&m.scale(c));
        }
        out
    }

    /// Labels of relations that fail as matrix identities.
    pub fn broken_relations(&self, p: &Presentation) -> Vec<String> {
        p.relations.iter().filter(|r| !self.eval(&r.poly).is_zero()).map(|r| r.label()).collect()
    }

    /// Killed entries with a nonzero image.
    pub fn nonzero_killed(&self) -> Vec<GenId> {
        self.killed.iter().filter(|(_, m)| !m.is_zero()).map(|(g, _)| *g).collect()
    }
}
