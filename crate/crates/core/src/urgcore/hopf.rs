use super::{Presentation, RewriteSystem, UrgError};
use crate::hseries::HSeries;
use crate::ncalg::{GenId, Letter, NCPoly, Sign};
use std::collections::BTreeMap;

/// Images of the generators under Δ, S and ε.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub coproduct: BTreeMap<GenId, NCPoly>,
    pub antipode: BTreeMap<GenId, NCPoly>,
}

/// Shifts the legs of `x` so that leg `k` lands on `first + k - 1` of an
/// arity-`arity` tensor power.
pub fn place(x: &NCPoly, first: usize, arity: usize) -> NCPoly {
    let mut out = NCPoly::zero(arity, x.order());
    for (w, c) in x.terms() {
        let mut v: Vec<Letter> = w.iter().map(|l| Letter { gen: l.gen, leg: l.leg + first - 1 }).collect();
        v.sort_by_key(|l| l.leg);
        out.add_term(v, c.clone());
    }
    out
}

impl HopfData {
    /// `Δ(t_ij) = t_ij⊗1 + 1⊗t_ij + ħ Σ_a t_ia⊗t_aj` and
    /// `S(T) = Σ_{k≥1} (-1)^k ħ^{k-1} T^k`.
    pub fn build(p: &Presentation) -> Self {
        let n = p.order;
        let d = p.d();
        let mut coproduct = BTreeMap::new();
        let mut antipode = BTreeMap::new();
        let mut powers: BTreeMap<Sign, Vec<crate::ncalg::NCMatrix>> = BTreeMap::new();
        for &s in &p.signs {
            let t = p.t_matrix(s, n);
            let mut pw = vec![t.clone()];
            for _ in 1..=n {
                let next = pw.last().expect("nonempty").mul(&t);
                pw.push(next);
            }
            powers.insert(s, pw);
        }
        for g in &p.generators {
            let (s, i, j) = (g.sign, g.i - 1, g.j - 1);
            let mut dx = p.t(s, i, j, 1, 2).add(&p.t(s, i, j, 2, 2));
            for a in 0..d {
                let term = p.t(s, i, a, 1, 2).mul(&p.t(s, a, j, 2, 2));
                dx = dx.add(&term.shift(1));
            }
            coproduct.insert(*g, dx);
            let mut sx = NCPoly::zero(1, n);
            for (k, tk) in powers[&s].iter().enumerate() {
                let k = k + 1;
                let c = HSeries::monomial(crate::hseries::qi(if k % 2 == 0 { 1 } else { -1 }), k - 1, n);
                sx.add_scaled(tk.get(i, j), &c);
            }
            antipode.insert(*g, sx);
        }
        HopfData { coproduct, antipode }
    }

    /// Δ applied on leg `leg` of an arity-`k` polynomial, giving arity `k+1`.
    pub fn delta_on_leg(&self, x: &NCPoly, leg: usize) -> NCPoly {
        let arity = x.arity() + 1;
        x.substitute(arity, false, |l| {
            if l.leg < leg {
                NCPoly::letter(l.gen, l.leg, arity, x.order())
            } else if l.leg > leg {
                NCPoly::letter(l.gen, l.leg + 1, arity, x.order())
            } else {
                place(&self.coproduct[&l.gen], leg, arity)
            }
        })
    }

    pub fn delta(&self, x: &NCPoly) -> NCPoly {
        assert_eq!(x.arity(), 1);
        self.delta_on_leg(x, 1)
    }

    /// ε on leg `leg`, lowering the arity by one.
    pub fn counit_on_leg(&self, x: &NCPoly, leg: usize) -> NCPoly {
        let arity = x.arity() - 1;
        let mut out = NCPoly::zero(arity, x.order());
        for (w, c) in x.terms() {
            if w.iter().any(|l| l.leg == leg) {
                continue;
            }
            let v = w.iter().map(|l| Letter { gen: l.gen, leg: if l.leg > leg { l.leg - 1 } else { l.leg } }).collect();
            out.add_term(v, c.clone());
        }
        out
    }

    /// ε of an arity-1 polynomial.
    pub fn counit(&self, x: &NCPoly) -> HSeries {
        x.constant_term()
    }

    /// The anti-homomorphism S on an arity-1 polynomial.
    pub fn antipode_of(&self, x: &NCPoly) -> NCPoly {
        x.substitute(1, true, |l| self.antipode[&l.gen].clone())
    }

    /// `m ∘ (S ⊗ id)` (`left`) or `m ∘ (id ⊗ S)` on an arity-2 polynomial.
    pub fn antipode_contract(&self, x: &NCPoly, left: bool) -> NCPoly {
        let mut out = NCPoly::zero(1, x.order());
        for (w, c) in x.terms() {
            let parts = NCPoly::split_legs(w, 2);
            let a = NCPoly::monomial(parts[0].clone(), HSeries::one(x.order()), 1);
            let b = NCPoly::monomial(parts[1].clone(), HSeries::one(x.order()), 1);
            let prod = if left { self.antipode_of(&a).mul(&b) } else { a.mul(&self.antipode_of(&b)) };
            out.add_scaled(&prod, c);
        }
        out
    }

    /// Δ^op: Δ with the legs swapped.
    pub fn delta_op(&self, x: &NCPoly) -> NCPoly {
        let dx = self.delta(x);
        let mut out = NCPoly::zero(2, x.order());
        for (w, c) in dx.terms() {
            let parts = NCPoly::split_legs(w, 2);
            out.add_term(NCPoly::join_legs(&[parts[1].clone(), parts[0].clone()]), c.clone());
        }
        out
    }
}

/// Outcome of one Hopf-axiom check.
#[derive(Clone, Debug)]
pub struct HopfCheck {
    pub check: &'static str,
    pub instance: String,
    pub residual: Option<NCPoly>,
}

fn outcome(check: &'static str, instance: String, r: NCPoly) -> HopfCheck {
    HopfCheck { check, instance, residual: (!r.is_zero()).then_some(r) }
}

/// Coassociativity, counit and antipode on every generator, plus Δ and ε
/// on every defining relation, all after normal-forming.
pub fn verify_hopf(p: &Presentation, rw: &RewriteSystem, h: &HopfData) -> Result<Vec<HopfCheck>, UrgError> {
    let mut out = Vec::new();
    for g in &p.generators {
        let t = NCPoly::gen(*g, p.order);
        let dt = h.delta(&t);
        let lhs = h.delta_on_leg(&dt, 1);
        let rhs = h.delta_on_leg(&dt, 2);
        out.push(outcome("coassociativity", g.to_string(), rw.nf(&lhs.sub(&rhs))?));
        for leg in [1, 2] {
            let r = h.counit_on_leg(&dt, leg).sub(&t);
            out.push(outcome("counit", format!("{g} leg {leg}"), rw.nf(&r)?));
        }
        for left in [true, false] {
            let r = h.antipode_contract(&dt, left);
            let name = if left { "antipode S⊗id" } else { "antipode id⊗S" };
            out.push(outcome(name, g.to_string(), rw.nf(&r)?));
        }
        let foreign = dt.filter(|w| w.iter().any(|l| l.gen.sign != g.sign));
        out.push(outcome("sign closure", g.to_string(), foreign));
    }
    for rel in &p.relations {
        out.push(outcome("coproduct on relation", rel.label(), rw.nf(&h.delta(&rel.poly))?));
        let e = h.counit(&rel.poly);
        out.push(outcome("counit on relation", rel.label(), NCPoly::scalar(e, 1)));
    }
    Ok(out)
}
