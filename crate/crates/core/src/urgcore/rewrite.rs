use super::{Presentation, UrgError};
use crate::hseries::HSeries;
use crate::ncalg::{GenId, Letter, NCPoly, Word};
use num::Zero;
use serde::Serialize;
use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// Rewrites allowed per top-level normal-form call.
pub const STEP_BUDGET: usize = 1_000_000;

/// Straightening rules `x y → rhs` for every out-of-order pair, with a
/// memoized normal form on words.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    pub order: usize,
    pub generators: Vec<GenId>,
    rank: BTreeMap<GenId, usize>,
    pub rules: BTreeMap<(GenId, GenId), NCPoly>,
    cache: RefCell<HashMap<Word, Rc<NCPoly>>>,
    steps: Cell<usize>,
    budget: usize,
}

/// A degree-3 overlap whose two resolutions disagree.
#[derive(Clone, Debug, Serialize)]
pub struct Divergence {
    pub word: Vec<GenId>,
    pub difference: NCPoly,
}

fn word_label(w: &[Letter]) -> String {
    w.iter().map(|l| l.gen.to_string()).collect::<Vec<_>>().join(" ")
}

impl RewriteSystem {
    /// Solves the relations for every out-of-order product by Gaussian
    /// elimination with unit pivots, then checks the termination contract.
    pub fn build(p: &Presentation) -> Result<Self, UrgError> {
        let rank: BTreeMap<GenId, usize> = p.generators.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let mut rows: Vec<NCPoly> = p.relations.iter().map(|r| r.poly.clone()).collect();
        let mut pivots: BTreeMap<(GenId, GenId), usize> = BTreeMap::new();
        let mut used = vec![false; rows.len()];
        for x in p.generators.iter().rev() {
            for y in &p.generators {
                if rank[y] >= rank[x] {
                    break;
                }
                let w = vec![Letter { gen: *x, leg: 1 }, Letter { gen: *y, leg: 1 }];
                let piv = (0..rows.len()).find(|&k| !used[k] && rows[k].coeff(&w).is_unit());
                let Some(k) = piv else {
                    return Err(UrgError::NoUnitPivot(word_label(&w)));
                };
                used[k] = true;
                let inv = rows[k].coeff(&w).invert().expect("unit");
                rows[k] = rows[k].scale(&inv);
                let pivot = rows[k].clone();
                for (m, row) in rows.iter_mut().enumerate() {
                    if m == k {
                        continue;
                    }
                    let c = row.coeff(&w);
                    if !c.is_zero() {
                        row.add_scaled(&pivot, &-c);
                    }
                }
                pivots.insert((*x, *y), k);
            }
        }
        if let Some(k) = (0..rows.len()).find(|&k| !used[k] && !rows[k].is_zero()) {
            return Err(UrgError::ResidualRelation(format!("{} (from {})", rows[k], p.relations[k].label())));
        }
        let mut rules = BTreeMap::new();
        for ((x, y), k) in pivots {
            let w = vec![Letter { gen: x, leg: 1 }, Letter { gen: y, leg: 1 }];
            let mut rhs = rows[k].neg();
            rhs.add_term(w, HSeries::one(p.order));
            rules.insert((x, y), rhs);
        }
        let sys = Self::from_rules(p.generators.clone(), rules, p.order);
        sys.check_contract()?;
        Ok(sys)
    }

    /// Assembles a system without checking the contract.
    pub fn from_rules(generators: Vec<GenId>, rules: BTreeMap<(GenId, GenId), NCPoly>, order: usize) -> Self {
        let rank = generators.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        RewriteSystem {
            order,
            generators,
            rank,
            rules,
            cache: RefCell::new(HashMap::new()),
            steps: Cell::new(0),
            budget: STEP_BUDGET,
        }
    }

    /// Each right side is the swapped word with a unit coefficient, shorter
    /// words, and same-length words of positive ħ-order.
    pub fn check_contract(&self) -> Result<(), UrgError> {
        for ((x, y), rhs) in &self.rules {
            let swap = vec![Letter { gen: *y, leg: 1 }, Letter { gen: *x, leg: 1 }];
            let bad = || UrgError::TerminationContractViolation(format!("{x} {y} -> {rhs}"));
            if !rhs.coeff(&swap).is_unit() {
                return Err(bad());
            }
            for (w, c) in rhs.terms() {
                if w.len() > 2 || w.iter().any(|l| !self.rank.contains_key(&l.gen)) {
                    return Err(bad());
                }
                if w.len() == 2 && *w != swap && !c.constant_term().is_zero() {
                    return Err(bad());
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self, g: &GenId) -> Option<usize> {
        self.rank.get(g).copied()
    }

    pub fn rule(&self, x: GenId, y: GenId) -> Option<&NCPoly> {
        self.rules.get(&(x, y))
    }

    /// Replaces one rule, keeping everything else; clears the cache.
    pub fn with_rule(&self, x: GenId, y: GenId, rhs: NCPoly) -> Self {
        let mut rules = self.rules.clone();
        rules.insert((x, y), rhs);
        Self::from_rules(self.generators.clone(), rules, self.order)
    }

    pub fn set_budget(&mut self, budget: usize) {
        self.budget = budget;
    }

    pub fn is_ordered(&self, w: &[Letter]) -> bool {
        w.windows(2).all(|p| p[0].leg != p[1].leg || self.rank[&p[0].gen] <= self.rank[&p[1].gen])
    }

    /// Normal form of a polynomial of any arity; letters on different legs
    /// are straightened independently.
    pub fn nf(&self, x: &NCPoly) -> Result<NCPoly, UrgError> {
        if x.order() != self.order {
            return Err(UrgError::Unsupported(format!("truncation order {} differs from {}", x.order(), self.order)));
        }
        self.steps.set(0);
        let arity = x.arity();
        let mut out = NCPoly::zero(arity, x.order());
        for (w, c) in x.terms() {
            if let Some(l) = w.iter().find(|l| !self.rank.contains_key(&l.gen)) {
                return Err(UrgError::Unsupported(format!("{} is not a generator", l.gen)));
            }
            if arity == 1 {
                out.add_scaled(&*self.nf_word(w)?, c);
                continue;
            }
            let mut acc = NCPoly::one(0, self.order);
            for part in NCPoly::split_legs(w, arity) {
                acc = acc.tensor(&*self.nf_word(&part)?);
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// `nf(x y)`.
    pub fn nf_mul(&self, x: &NCPoly, y: &NCPoly) -> Result<NCPoly, UrgError> {
        self.nf(&x.mul(y))
    }

    fn tick(&self) -> Result<(), UrgError> {
        let s = self.steps.get() + 1;
        self.steps.set(s);
        if s > self.budget {
            return Err(UrgError::StepBudget(self.budget));
        }
        Ok(())
    }

    /// Normal form of a single arity-1 word, leftmost descent first.
    fn nf_word(&self, w: &[Letter]) -> Result<Rc<NCPoly>, UrgError> {
        if let Some(p) = self.cache.borrow().get(w) {
            return Ok(p.clone());
        }
        let pos = w.windows(2).position(|p| self.rank[&p[0].gen] > self.rank[&p[1].gen]);
        let out = match pos {
            None => NCPoly::monomial(w.to_vec(), HSeries::one(self.order), 1),
            Some(p) => {
                self.tick()?;
                let rule = &self.rules[&(w[p].gen, w[p + 1].gen)];
                let mut acc = NCPoly::zero(1, self.order);
                for (u, c) in rule.terms() {
                    let mut v: Word = w[..p].to_vec();
                    v.extend_from_slice(u);
                    v.extend_from_slice(&w[p + 2..]);
                    acc.add_scaled(&*self.nf_word(&v)?, c);
                }
                acc
            }
        };
        let out = Rc::new(out);
        self.cache.borrow_mut().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// Resolves every overlap `z y x` with `z > y > x` both ways.
    pub fn confluence(&self) -> Result<Vec<Divergence>, UrgError> {
        let mut out = Vec::new();
        let g = &self.generators;
        for (a, x) in g.iter().enumerate() {
            for (b, y) in g.iter().enumerate().skip(a + 1) {
                for z in g.iter().skip(b + 1) {
                    self.steps.set(0);
                    let lz = Letter { gen: *z, leg: 1 };
                    let lx = Letter { gen: *x, leg: 1 };
                    let mut left = NCPoly::zero(1, self.order);
                    for (u, c) in self.rules[&(*z, *y)].terms() {
                        let mut v = u.clone();
                        v.push(lx);
                        left.add_scaled(&*self.nf_word(&v)?, c);
                    }
                    let mut right = NCPoly::zero(1, self.order);
                    for (u, c) in self.rules[&(*y, *x)].terms() {
                        let mut v = vec![lz];
                        v.extend_from_slice(u);
                        right.add_scaled(&*self.nf_word(&v)?, c);
                    }
                    if left != right {
                        out.push(Divergence { word: vec![*z, *y, *x], difference: left.sub(&right) });
                    }
                }
            }
        }
        Ok(out)
    }
}
