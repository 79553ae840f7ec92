use super::UrgError;
use crate::classical::gr::{is_killed, sym, sym_parts};
use crate::classical::{Gr, RepData};
use crate::hseries::{HSeries, Q};
use crate::ncalg::{GenId, HMatrix, Letter, NCMatrix, NCPoly, Sign, Word};
use crate::qmatrix::RMatrix;
use num::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// One matrix entry of an RLL equation, expanded in the generators.
#[derive(Clone, Debug)]
pub struct Relation {
    pub sector: (Sign, Sign),
    /// `(i, k, j, l)`, 0-based: row `(i,k)` and column `(j,l)` of V ⊗ V.
    pub component: [usize; 4],
    pub poly: NCPoly,
}

impl Relation {
    pub fn label(&self) -> String {
        let [i, k, j, l] = self.component;
        format!("{}{}[({},{}),({},{})]", self.sector.0.symbol(), self.sector.1.symbol(), i + 1, k + 1, j + 1, l + 1)
    }
}

/// Generators and relations of the algebra attached to an R-matrix.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// The R-matrix, held one order above the presentation.
    pub r: RMatrix,
    pub order: usize,
    pub signs: Vec<Sign>,
    /// Surviving generators in straightening order.
    pub generators: Vec<GenId>,
    pub weights: BTreeMap<GenId, Vec<Q>>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    /// Presentation with both signs; relations at order `r.order() - 1`.
    pub fn build(r: &RMatrix) -> Result<Self, UrgError> {
        Self::build_with_signs(r, &[Sign::Plus, Sign::Minus])
    }

    /// A single sign gives the Borel subalgebra.
    pub fn build_with_signs(r: &RMatrix, signs: &[Sign]) -> Result<Self, UrgError> {
        if r.order() < 2 {
            return Err(UrgError::LowOrder(r.order()));
        }
        let order = r.order() - 1;
        let rep = &r.rep;
        let d = rep.dim;
        let mut generators = Vec::new();
        let mut weights = BTreeMap::new();
        for &s in signs {
            for i in 0..d {
                for j in 0..d {
                    if !is_killed(rep, s, i, j) {
                        let g = GenId::new(s, i + 1, j + 1);
                        generators.push(g);
                        weights.insert(g, rep.entry_weight(i, j));
                    }
                }
            }
        }
        generators.sort_by(|a, b| order_key(a, &weights[a]).cmp(&order_key(b, &weights[b])));
        let mut p =
            Presentation { r: r.clone(), order, signs: signs.to_vec(), generators, weights, relations: Vec::new() };
        let rdot = r.rdot().map_err(|_| UrgError::NotUnipotent)?;
        let rn = r.mat.truncate(order);
        let sectors: Vec<(Sign, Sign)> = match signs {
            [s] => vec![(*s, *s)],
            _ => vec![(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus)],
        };
        for &(s1, s2) in &sectors {
            for i in 0..d {
                for k in 0..d {
                    for j in 0..d {
                        for l in 0..d {
                            let poly = p.rll_component(&rdot, &rn, s1, s2, [i, k, j, l]);
                            if !poly.is_zero() {
                                p.relations.push(Relation { sector: (s1, s2), component: [i, k, j, l], poly });
                            }
                        }
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn d(&self) -> usize {
        self.r.rep.dim
    }

    pub fn rep(&self) -> &RepData {
        &self.r.rep
    }

    pub fn is_alive(&self, g: &GenId) -> bool {
        self.weights.contains_key(g)
    }

    pub fn rank_of(&self, g: &GenId) -> Option<usize> {
        self.generators.iter().position(|x| x == g)
    }

    /// `t^s_ij` (0-based indices) as a letter, if it survives.
    pub fn letter(&self, s: Sign, i: usize, j: usize, leg: usize) -> Option<Letter> {
        let g = GenId::new(s, i + 1, j + 1);
        self.is_alive(&g).then_some(Letter { gen: g, leg })
    }

    /// `t^s_ij` on leg `leg` of an arity-`arity` tensor power; zero if killed.
    pub fn t(&self, s: Sign, i: usize, j: usize, leg: usize, arity: usize) -> NCPoly {
        match self.letter(s, i, j, leg) {
            Some(l) => NCPoly::letter(l.gen, leg, arity, self.order),
            None => NCPoly::zero(arity, self.order),
        }
    }

    /// `ℓ^s_ij = δ_ij + ħ t^s_ij` at truncation order `order`.
    pub fn ell(&self, s: Sign, i: usize, j: usize, order: usize) -> NCPoly {
        let mut p = NCPoly::zero(1, order);
        if i == j {
            p.add_term(Vec::new(), HSeries::one(order));
        }
        if let Some(l) = self.letter(s, i, j, 1) {
            p.add_term(vec![l], HSeries::hbar(order));
        }
        p
    }

    /// The generating matrix `T^s` at the given order.
    pub fn t_matrix(&self, s: Sign, order: usize) -> NCMatrix {
        NCMatrix::from_fn(self.d(), 1, order, |i, j| match self.letter(s, i, j, 1) {
            Some(l) => NCPoly::letter(l.gen, 1, 1, order),
            None => NCPoly::zero(1, order),
        })
    }

    /// Entry `((i,k),(j,l))` of `[Ṙ, T₁ + T₂'] + R T₁T₂' - T₂'T₁ R`.
    fn rll_component(&self, rdot: &HMatrix, r: &HMatrix, s1: Sign, s2: Sign, c: [usize; 4]) -> NCPoly {
        let [i, k, j, l] = c;
        let d = self.d();
        let n = self.order;
        let mut p = NCPoly::zero(1, n);
        let (row, col) = (i * d + k, j * d + l);
        let mut lin = |coef: &HSeries, s: Sign, a: usize, b: usize, sign: i64| {
            if let (false, Some(x)) = (coef.is_zero(), self.letter(s, a, b, 1)) {
                let c = if sign > 0 { coef.clone() } else { -coef };
                p.add_term(vec![x], c);
            }
        };
        for a in 0..d {
            lin(rdot.get(row, a * d + l), s1, a, j, 1);
            lin(rdot.get(row, j * d + a), s2, a, l, 1);
            lin(rdot.get(a * d + k, col), s1, i, a, -1);
            lin(rdot.get(i * d + a, col), s2, k, a, -1);
        }
        for a in 0..d {
            for b in 0..d {
                let x = r.get(row, a * d + b);
                if let (false, Some(u), Some(v)) = (x.is_zero(), self.letter(s1, a, j, 1), self.letter(s2, b, l, 1)) {
                    p.add_term(vec![u, v], x.clone());
                }
                let y = r.get(a * d + b, col);
                if let (false, Some(u), Some(v)) = (y.is_zero(), self.letter(s2, k, b, 1), self.letter(s1, i, a, 1)) {
                    p.add_term(vec![u, v], -y);
                }
            }
        }
        p
    }

    /// Checks that the ħ⁰ part of every relation is `[x, y] - B(x, y)` with
    /// `B` the classical bracket table; returns the first mismatch.
    pub fn classical_mismatch(&self, gr: &Gr) -> Option<String> {
        let d = self.d();
        for rel in &self.relations {
            let [i, k, j, l] = rel.component;
            let (s1, s2) = rel.sector;
            let x = sym(d, s1, i, j);
            let y = sym(d, s2, k, l);
            let mut want = NCPoly::zero(1, 0);
            if let (Some(u), Some(v)) = (self.letter(s1, i, j, 1), self.letter(s2, k, l, 1)) {
                want.add_term(vec![u, v], HSeries::one(0));
                want.add_term(vec![v, u], -HSeries::one(0));
            }
            for (z, c) in gr.table[x][y].iter().enumerate() {
                let (s, a, b) = sym_parts(d, z);
                if let (false, Some(w)) = (c.is_zero(), self.letter(s, a, b, 1)) {
                    want.add_term(vec![w], HSeries::constant(-c.clone(), 0));
                }
            }
            if rel.poly.truncate(0) != want {
                return Some(rel.label());
            }
        }
        None
    }

    pub fn to_json(&self, rules: Option<&BTreeMap<(GenId, GenId), NCPoly>>) -> PresentationJson {
        let generators = self
            .generators
            .iter()
            .map(|g| GeneratorJson { gen: *g, weight: self.weights[g].iter().map(crate::hseries::fmt_q).collect() })
            .collect();
        let relations = match rules {
            Some(rules) => rules
                .iter()
                .map(|((x, y), rhs)| RelationJson {
                    lhs_word: Some(vec![Letter { gen: *x, leg: 1 }, Letter { gen: *y, leg: 1 }]),
                    rhs: rhs.clone(),
                    label: None,
                })
                .collect(),
            None => self
                .relations
                .iter()
                .map(|r| RelationJson { lhs_word: None, rhs: r.poly.clone(), label: Some(r.label()) })
                .collect(),
        };
        PresentationJson {
            rmatrix: self.r.to_json(),
            generators,
            relations,
            order: self.generators.clone(),
            trunc: self.order,
        }
    }
}

/// Straightening order: sign, then height of the weight, then `(i, j)`.
pub fn order_key(g: &GenId, weight: &[Q]) -> (Sign, Q, usize, usize) {
    let h = weight.iter().fold(Q::zero(), |a, c| a + c);
    (g.sign, h, g.i, g.j)
}

#[derive(Serialize)]
pub struct GeneratorJson {
    pub gen: GenId,
    pub weight: Vec<String>,
}

/// A relation `lhs_word = rhs`, or `rhs = 0` when `lhs_word` is absent.
#[derive(Serialize)]
pub struct RelationJson {
    pub lhs_word: Option<Word>,
    pub rhs: NCPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Serialize)]
pub struct PresentationJson {
    pub rmatrix: crate::qmatrix::RMatrixJson,
    pub generators: Vec<GeneratorJson>,
    pub relations: Vec<RelationJson>,
    pub order: Vec<GenId>,
    pub trunc: usize,
}
