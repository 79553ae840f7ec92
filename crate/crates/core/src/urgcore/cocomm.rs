use super::hopf::HopfData;
use super::Presentation;
use crate::classical::gr::sym;
use crate::classical::lie::map_tensor;
use crate::classical::{Gr, PhiMap, Tensor2};
use crate::hseries::Q;
use crate::linalg;
use crate::ncalg::{NCPoly, Sign};
use num::Zero;

/// Outcome of comparing `(Δ - Δ^op)/ħ mod ħ` on the K-coefficients with the
/// classical cobracket on the z-sector.
#[derive(Clone, Debug)]
pub struct CocommReport {
    pub quantum_witness: Option<(Sign, usize)>,
    pub classical_witness: Option<(Sign, usize)>,
    /// First K-coefficient where the two sides disagree.
    pub mismatch: Option<(Sign, usize)>,
    /// First nonzero value, in target ⊗ target coordinates.
    pub value: Option<Tensor2>,
}

impl CocommReport {
    pub fn witness_present(&self) -> bool {
        self.quantum_witness.is_some()
    }

    pub fn consistent(&self) -> bool {
        self.mismatch.is_none() && self.quantum_witness.is_some() == self.classical_witness.is_some()
    }
}

/// Lifts a vector of F to a polynomial in the surviving generators.
pub fn lift(p: &Presentation, v: &[Q]) -> NCPoly {
    let d = p.d();
    let mut x = NCPoly::zero(1, p.order);
    for &s in &p.signs {
        for i in 0..d {
            for j in 0..d {
                let c = &v[sym(d, s, i, j)];
                if !c.is_zero() {
                    x = x.add(&p.t(s, i, j, 1, 1).scale_q(c));
                }
            }
        }
    }
    x
}

/// The ħ¹ coefficient of `Δ(x) - Δ^op(x)` as an F ⊗ F tensor.
pub fn first_order_antisym(p: &Presentation, h: &HopfData, x: &NCPoly) -> Tensor2 {
    let d = p.d();
    let f = 2 * d * d;
    let mut t = linalg::zeros(f, f);
    let diff = h.delta(x).sub(&h.delta_op(x));
    for (w, c) in diff.terms() {
        let c1 = c.coeff(1);
        if c1.is_zero() {
            continue;
        }
        assert_eq!(w.len(), 2, "first-order part is bilinear");
        let idx = |l: &crate::ncalg::Letter| sym(d, l.gen.sign, l.gen.i - 1, l.gen.j - 1);
        t[idx(&w[0])][idx(&w[1])] += c1;
    }
    t
}

pub fn first_order_cocommutativity(p: &Presentation, h: &HopfData, gr: &Gr, phi: &PhiMap) -> CocommReport {
    let mut rep = CocommReport { quantum_witness: None, classical_witness: None, mismatch: None, value: None };
    let is_zero = |t: &Tensor2| t.iter().all(|r| linalg::is_zero_vec(r));
    for &s in &p.signs {
        for (n, k) in gr.k_coefficients(s).iter().enumerate() {
            let x = lift(p, k);
            let quantum = map_tensor(&phi.matrix, &phi.matrix, &first_order_antisym(p, h, &x));
            let classical = phi.z_cobracket(k);
            if !is_zero(&quantum) && rep.quantum_witness.is_none() {
                rep.quantum_witness = Some((s, n));
                rep.value = Some(quantum.clone());
            }
            if !is_zero(&classical) && rep.classical_witness.is_none() {
                rep.classical_witness = Some((s, n));
            }
            if quantum != classical && rep.mismatch.is_none() {
                rep.mismatch = Some((s, n));
            }
        }
    }
    rep
}
