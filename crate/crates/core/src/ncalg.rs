//! Free noncommutative algebra over [`HSeries`] in the generators t^±_ij,
//! its tensor powers, and matrices with scalar or noncommutative entries.
//!
//! A word of arity `k` is a sequence of letters each carrying a tensor leg
//! in `1..=k`. Letters on different legs commute, so words are stored with
//! legs non-decreasing and the per-leg order preserved.

use crate::hseries::{HSeries, Q};
use num::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("leg {leg} out of range for {n} legs")]
    LegOutOfRange { leg: usize, n: usize },
    #[error("legs must be distinct")]
    RepeatedLeg,
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
}

/// Sign of a generator: `+` for the L⁺ family, `-` for L⁻.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Sign::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad sign {s:?}")))
    }
}

/// The generator t^sign_{ij}; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenId {
    pub sign: Sign,
    pub i: usize,
    pub j: usize,
}

impl GenId {
    pub fn new(sign: Sign, i: usize, j: usize) -> Self {
        GenId { sign, i, j }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}[{},{}]", self.sign.symbol(), self.i, self.j)
    }
}

/// A generator placed on a tensor leg (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenId,
    pub leg: usize,
}

#[derive(Serialize, Deserialize)]
struct LetterJson {
    sign: Sign,
    i: usize,
    j: usize,
    leg: usize,
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LetterJson { sign: self.gen.sign, i: self.gen.i, j: self.gen.j, leg: self.leg }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let l = LetterJson::deserialize(d)?;
        Ok(Letter { gen: GenId::new(l.sign, l.i, l.j), leg: l.leg })
    }
}

pub type Word = Vec<Letter>;

fn canonical(mut w: Word) -> Word {
    w.sort_by_key(|l| l.leg);
    w
}

/// Linear combination of words with [`HSeries`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    arity: usize,
    order: usize,
    terms: BTreeMap<Word, HSeries>,
}

impl NCPoly {
    pub fn zero(arity: usize, order: usize) -> Self {
        NCPoly { arity, order, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize, order: usize) -> Self {
        Self::scalar(HSeries::one(order), arity)
    }

    pub fn scalar(c: HSeries, arity: usize) -> Self {
        let mut p = Self::zero(arity, c.order());
        p.add_term(Vec::new(), c);
        p
    }

    /// A single generator on leg 1 of an arity-1 algebra.
    pub fn gen(g: GenId, order: usize) -> Self {
        Self::letter(g, 1, 1, order)
    }

    pub fn letter(g: GenId, leg: usize, arity: usize, order: usize) -> Self {
        assert!(leg >= 1 && leg <= arity, "leg {leg} out of range for arity {arity}");
        let mut p = Self::zero(arity, order);
        p.add_term(vec![Letter { gen: g, leg }], HSeries::one(order));
        p
    }

    /// `c * word`; the word is brought to canonical leg order.
    pub fn monomial(word: Word, c: HSeries, arity: usize) -> Self {
        let mut p = Self::zero(arity, c.order());
        p.add_term(canonical(word), c);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &HSeries)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> HSeries {
        self.terms.get(w).cloned().unwrap_or_else(|| HSeries::zero(self.order))
    }

    /// Maximum word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Constant (empty-word) coefficient.
    pub fn constant_term(&self) -> HSeries {
        self.coeff(&Vec::new())
    }

    /// Adds `c * w`; `w` must already be canonical.
    pub fn add_term(&mut self, w: Word, c: HSeries) {
        assert_eq!(c.order(), self.order, "coefficient order mismatch");
        debug_assert!(w.iter().all(|l| l.leg >= 1 && l.leg <= self.arity));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &HSeries) {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        for (w, a) in &other.terms {
            let v = a * c;
            if !v.is_zero() {
                self.add_term(w.clone(), v);
            }
        }
    }

    /// True when some word contains a letter satisfying `pred`.
    pub fn mentions<F: Fn(&Letter) -> bool>(&self, pred: F) -> bool {
        self.terms.keys().any(|w| w.iter().any(&pred))
    }

    fn check(&self, other: &Self) -> Result<(), AlgError> {
        if self.arity != other.arity {
            return Err(AlgError::ArityMismatch(self.arity, other.arity));
        }
        if self.order != other.order {
            return Err(AlgError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgError> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgError> {
        self.check(other)?;
        let mut out = Self::zero(self.arity, self.order);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let c = a * b;
                if c.is_zero() {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(if self.arity > 1 { canonical(w) } else { w }, c);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            arity: self.arity,
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &HSeries) -> Self {
        let mut out = Self::zero(self.arity, self.order);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity, self.order);
        }
        NCPoly {
            arity: self.arity,
            order: self.order,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a.scale(c))).collect(),
        }
    }

    /// Multiplies by ħ^k with truncation.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.arity, self.order);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.shift(k));
        }
        out
    }

    /// Lowers the truncation order.
    pub fn truncate(&self, m: usize) -> Self {
        let mut out = Self::zero(self.arity, m);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.truncate(m));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.arity, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Commutator `xy - yx`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `self ⊗ other`, shifting the legs of `other` past those of `self`.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "truncation order mismatch");
        let arity = self.arity + other.arity;
        let mut out = Self::zero(arity, self.order);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend(v.iter().map(|l| Letter { gen: l.gen, leg: l.leg + self.arity }));
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// Applies `f` to every letter and extends multiplicatively. With
    /// `reverse` the images are multiplied in reverse order, which is how
    /// an anti-homomorphism acts on a word.
    pub fn substitute<F>(&self, target_arity: usize, reverse: bool, mut f: F) -> Self
    where
        F: FnMut(&Letter) -> NCPoly,
    {
        let mut cache: BTreeMap<Letter, NCPoly> = BTreeMap::new();
        let mut out = Self::zero(target_arity, self.order);
        for (w, c) in &self.terms {
            let mut acc = Self::scalar(c.clone(), target_arity);
            let letters: Vec<&Letter> = if reverse { w.iter().rev().collect() } else { w.iter().collect() };
            for l in letters {
                let img = cache.entry(*l).or_insert_with(|| f(l)).clone();
                acc = acc.mul(&img);
                if acc.is_zero() {
                    break;
                }
            }
            let one = HSeries::one(self.order);
            out.add_scaled(&acc, &one);
        }
        out
    }

    /// Keeps only the words accepted by `keep`.
    pub fn filter<F: Fn(&Word) -> bool>(&self, keep: F) -> Self {
        NCPoly {
            arity: self.arity,
            order: self.order,
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Coefficientwise map on the series.
    pub fn map_coeffs<F: Fn(&HSeries) -> HSeries>(&self, order: usize, f: F) -> Self {
        let mut out = Self::zero(self.arity, order);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Splits an arity-`k` word into its per-leg subwords.
    pub fn split_legs(w: &Word, arity: usize) -> Vec<Word> {
        let mut parts = vec![Vec::new(); arity];
        for l in w {
            parts[l.leg - 1].push(Letter { gen: l.gen, leg: 1 });
        }
        parts
    }

    /// Inverse of [`NCPoly::split_legs`].
    pub fn join_legs(parts: &[Word]) -> Word {
        let mut w = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            w.extend(p.iter().map(|l| Letter { gen: l.gen, leg: k + 1 }));
        }
        w
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = format!("{c}");
            let coeff = coeff.split(" + O(").next().unwrap_or("").to_string();
            write!(f, "({coeff})")?;
            for l in w {
                if self.arity > 1 {
                    write!(f, " {}@{}", l.gen, l.leg)?;
                } else {
                    write!(f, " {}", l.gen)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: HSeries,
    word: Word,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    arity: usize,
    trunc: usize,
    terms: Vec<TermJson>,
}

impl Serialize for NCPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            arity: self.arity,
            trunc: self.order,
            terms: self.terms.iter().map(|(w, c)| TermJson { coeff: c.clone(), word: w.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = PolyJson::deserialize(d)?;
        let mut p = NCPoly::zero(j.arity, j.trunc);
        for t in j.terms {
            if t.coeff.order() != j.trunc {
                return Err(D::Error::custom("coefficient truncation order differs from poly"));
            }
            if t.word.iter().any(|l| l.leg == 0 || l.leg > j.arity) {
                return Err(D::Error::custom("letter leg out of range"));
            }
            p.add_term(canonical(t.word), t.coeff);
        }
        Ok(p)
    }
}

/// Index placements for embedding an operator on `legs` (1-based, distinct)
/// of an `n`-fold tensor power of a `d`-dimensional space. Each entry is
/// `(row, col, src_row, src_col)`.
fn leg_placements(d: usize, legs: &[usize], n: usize) -> Result<Vec<(usize, usize, usize, usize)>, AlgError> {
    for (k, &l) in legs.iter().enumerate() {
        if l == 0 || l > n {
            return Err(AlgError::LegOutOfRange { leg: l, n });
        }
        if legs[..k].contains(&l) {
            return Err(AlgError::RepeatedLeg);
        }
    }
    let m = legs.len();
    let others: Vec<usize> = (1..=n).filter(|l| !legs.contains(l)).collect();
    let pow = |e: usize| d.pow(e as u32);
    let mut out = Vec::new();
    // Multi-indices: leg 1 is the most significant digit.
    let place = |digits_on: &[usize], digits_off: &[usize]| -> usize {
        let mut idx = vec![0; n];
        for (k, &l) in legs.iter().enumerate() {
            idx[l - 1] = digits_on[k];
        }
        for (k, &l) in others.iter().enumerate() {
            idx[l - 1] = digits_off[k];
        }
        idx.iter().fold(0, |acc, &x| acc * d + x)
    };
    let digits = |mut x: usize, len: usize| -> Vec<usize> {
        let mut v = vec![0; len];
        for k in (0..len).rev() {
            v[k] = x % d;
            x /= d;
        }
        v
    };
    for sr in 0..pow(m) {
        let dr = digits(sr, m);
        for sc in 0..pow(m) {
            let dc = digits(sc, m);
            for o in 0..pow(n - m) {
                let off = digits(o, n - m);
                out.push((place(&dr, &off), place(&dc, &off), sr, sc));
            }
        }
    }
    Ok(out)
}

/// Square matrix over [`HSeries`].
#[derive(Clone, PartialEq, Eq)]
pub struct HMatrix {
    dim: usize,
    order: usize,
    entries: Vec<HSeries>,
}

impl HMatrix {
    pub fn zero(dim: usize, order: usize) -> Self {
        HMatrix { dim, order, entries: vec![HSeries::zero(order); dim * dim] }
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut m = Self::zero(dim, order);
        for i in 0..dim {
            m.set(i, i, HSeries::one(order));
        }
        m
    }

    /// Constant matrix from rational entries.
    pub fn from_rational(rows: &[Vec<Q>], order: usize) -> Self {
        let dim = rows.len();
        let mut m = Self::zero(dim, order);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, HSeries::constant(x.clone(), order));
                }
            }
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<HSeries>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        let order = entries.first().map_or(0, HSeries::order);
        assert!(entries.iter().all(|e| e.order() == order), "mixed truncation orders");
        HMatrix { dim, order, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &HSeries {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: HSeries) {
        assert_eq!(v.order(), self.order);
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[HSeries] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<HSeries>> {
        self.entries.chunks(self.dim).map(<[HSeries]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(HSeries::is_zero)
    }

    /// First nonzero entry, as `(row, col, value)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, HSeries)> {
        self.entries.iter().position(|e| !e.is_zero()).map(|k| (k / self.dim, k % self.dim, self.entries[k].clone()))
    }

    pub fn map<F: Fn(&HSeries) -> HSeries>(&self, f: F) -> Self {
        let entries: Vec<HSeries> = self.entries.iter().map(f).collect();
        let order = entries.first().map_or(self.order, HSeries::order);
        HMatrix { dim: self.dim, order, entries }
    }

    pub fn truncate(&self, m: usize) -> Self {
        self.map(|e| e.truncate(m))
    }

    pub fn scale(&self, c: &HSeries) -> Self {
        self.map(|e| e * c)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        HMatrix {
            dim: self.dim,
            order: self.order,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        HMatrix {
            dim: self.dim,
            order: self.order,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    fn nonzero_rows(&self) -> Vec<Vec<(usize, &HSeries)>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .filter_map(|j| {
                        let e = self.get(i, j);
                        (!e.is_zero()).then_some((j, e))
                    })
                    .collect()
            })
            .collect()
    }

    /// Sparse-aware product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let a = self.nonzero_rows();
        let b = o.nonzero_rows();
        let mut out = Self::zero(self.dim, self.order);
        for (i, row) in a.iter().enumerate() {
            for &(k, x) in row {
                for &(j, y) in &b[k] {
                    out.entries[i * self.dim + j] += &(x * y);
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        let d = self.dim * o.dim;
        let mut out = Self::zero(d, self.order);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.dim {
                    for l in 0..o.dim {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.dim + k, j * o.dim + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Inverse via the Neumann series; requires an invertible constant part
    /// equal to the identity.
    pub fn invert_unipotent(&self) -> Option<Self> {
        let id = Self::identity(self.dim, self.order);
        let x = self.sub(&id);
        if x.entries.iter().any(|e| !e.constant_term().is_zero()) {
            return None;
        }
        let mut acc = id.clone();
        let mut term = id;
        for _ in 0..self.order {
            term = term.mul(&x).neg();
            acc = acc.add(&term);
        }
        Some(acc)
    }

    /// Places this operator, acting on `d^legs.len()` dimensions, on the
    /// given legs of an `n`-fold tensor power of a `d`-dimensional space.
    pub fn leg_embed(&self, d: usize, legs: &[usize], n: usize) -> Result<Self, AlgError> {
        let expect = d.pow(legs.len() as u32);
        if self.dim != expect {
            return Err(AlgError::DimMismatch(self.dim, expect));
        }
        let mut out = Self::zero(d.pow(n as u32), self.order);
        for (r, c, sr, sc) in leg_placements(d, legs, n)? {
            let v = self.get(sr, sc);
            if !v.is_zero() {
                out.set(r, c, v.clone());
            }
        }
        Ok(out)
    }

    /// Swaps the two tensor legs of an operator on `V ⊗ V`.
    pub fn flip(&self, d: usize) -> Self {
        assert_eq!(self.dim, d * d);
        let mut out = Self::zero(self.dim, self.order);
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    for l in 0..d {
                        let v = self.get(i * d + k, j * d + l);
                        if !v.is_zero() {
                            out.set(k * d + i, l * d + j, v.clone());
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for HMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.get(i, j);
                if !e.is_zero() {
                    writeln!(f, "({i},{j}): {e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Square matrix with [`NCPoly`] entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCMatrix {
    dim: usize,
    arity: usize,
    order: usize,
    entries: Vec<NCPoly>,
}

impl NCMatrix {
    pub fn zero(dim: usize, arity: usize, order: usize) -> Self {
        NCMatrix { dim, arity, order, entries: vec![NCPoly::zero(arity, order); dim * dim] }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> NCPoly>(dim: usize, arity: usize, order: usize, mut f: F) -> Self {
        let mut m = Self::zero(dim, arity, order);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Scalar matrix viewed as having polynomial entries.
    pub fn from_scalar(m: &HMatrix, arity: usize) -> Self {
        Self::from_fn(m.dim(), arity, m.order(), |i, j| NCPoly::scalar(m.get(i, j).clone(), arity))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: NCPoly) {
        assert_eq!(v.arity(), self.arity);
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[NCPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCPoly::is_zero)
    }

    pub fn map<F: FnMut(&NCPoly) -> NCPoly>(&self, f: F) -> Self {
        let entries: Vec<NCPoly> = self.entries.iter().map(f).collect();
        let arity = entries.first().map_or(self.arity, NCPoly::arity);
        let order = entries.first().map_or(self.order, NCPoly::order);
        NCMatrix { dim: self.dim, arity, order, entries }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        NCMatrix {
            dim: self.dim,
            arity: self.arity,
            order: self.order,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        NCMatrix {
            dim: self.dim,
            arity: self.arity,
            order: self.order,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    /// Matrix product with entries multiplied in the order `self` then `o`.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut out = Self::zero(self.dim, self.arity, self.order);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * self.dim + j;
                        out.entries[idx] = out.entries[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// `S * self` for a scalar matrix `S`.
    pub fn lmul_scalar(&self, s: &HMatrix) -> Self {
        let mut out = Self::zero(self.dim, self.arity, self.order);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = s.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = self.get(k, j);
                    if !b.is_zero() {
                        let idx = i * self.dim + j;
                        out.entries[idx] = out.entries[idx].add(&b.scale(a));
                    }
                }
            }
        }
        out
    }

    /// `self * S` for a scalar matrix `S`.
    pub fn rmul_scalar(&self, s: &HMatrix) -> Self {
        let mut out = Self::zero(self.dim, self.arity, self.order);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = s.get(k, j);
                    if !b.is_zero() {
                        let idx = i * self.dim + j;
                        out.entries[idx] = out.entries[idx].add(&a.scale(b));
                    }
                }
            }
        }
        out
    }

    /// See [`HMatrix::leg_embed`]; non-selected legs carry the identity.
    pub fn leg_embed(&self, d: usize, legs: &[usize], n: usize) -> Result<Self, AlgError> {
        let expect = d.pow(legs.len() as u32);
        if self.dim != expect {
            return Err(AlgError::DimMismatch(self.dim, expect));
        }
        let mut out = Self::zero(d.pow(n as u32), self.arity, self.order);
        for (r, c, sr, sc) in leg_placements(d, legs, n)? {
            let v = self.get(sr, sc);
            if !v.is_zero() {
                out.set(r, c, v.clone());
            }
        }
        Ok(out)
    }

    /// Keeps entries `(i, j)` with `weights[i] - weights[j] == mu`.
    pub fn weight_project(&self, weights: &[Vec<Q>], mu: &[Q]) -> Self {
        let mut out = Self::zero(self.dim, self.arity, self.order);
        for i in 0..self.dim {
            for j in 0..self.dim {
                if weight_diff(&weights[i], &weights[j]) == mu {
                    out.set(i, j, self.get(i, j).clone());
                }
            }
        }
        out
    }
}

/// `a - b` for weight vectors.
pub fn weight_diff(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scalar-matrix weight projection: keeps entries whose weight is `mu`.
pub fn weight_project_scalar(m: &HMatrix, weights: &[Vec<Q>], mu: &[Q]) -> HMatrix {
    let mut out = HMatrix::zero(m.dim(), m.order());
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if weight_diff(&weights[i], &weights[j]) == mu {
                out.set(i, j, m.get(i, j).clone());
            }
        }
    }
    out
}

/// True when every entry of the vector is zero.
pub fn is_zero_weight(mu: &[Q]) -> bool {
    mu.iter().all(Zero::is_zero)
}

/// Unit coefficient helper.
pub fn unit(order: usize) -> HSeries {
    HSeries::constant(Q::one(), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hseries::{qi, qr};

    fn t(s: Sign, i: usize, j: usize) -> NCPoly {
        NCPoly::gen(GenId::new(s, i, j), 3)
    }

    #[test]
    fn unit_and_bilinearity() {
        let a = t(Sign::Plus, 1, 1);
        let b = t(Sign::Plus, 1, 2);
        assert_eq!(a.mul(&NCPoly::one(1, 3)), a);
        let lhs = a.add(&b).mul(&a);
        assert_eq!(lhs, a.mul(&a).add(&b.mul(&a)));
    }

    #[test]
    fn truncation_kills_high_powers() {
        let b = t(Sign::Plus, 1, 2).shift(3);
        assert!(!b.is_zero());
        assert!(b.shift(1).is_zero());
    }

    #[test]
    fn arity_mismatch() {
        let a = t(Sign::Plus, 1, 1);
        let b = a.tensor(&a);
        assert!(matches!(a.try_mul(&b), Err(AlgError::ArityMismatch(1, 2))));
    }

    #[test]
    fn tensor_legs_commute() {
        let a = t(Sign::Plus, 1, 1);
        let b = t(Sign::Plus, 1, 2);
        let one = NCPoly::one(1, 3);
        let x = a.tensor(&one);
        let y = one.tensor(&b);
        assert_eq!(x.mul(&y), y.mul(&x));
        assert_eq!(x.mul(&y), a.tensor(&b));
    }

    #[test]
    fn leg_embedding_is_kronecker() {
        let m = HMatrix::from_rational(&[vec![qi(1), qi(2)], vec![qi(3), qi(4)]], 2);
        let id = HMatrix::identity(2, 2);
        assert_eq!(m.leg_embed(2, &[1], 2).unwrap(), m.kron(&id));
        assert_eq!(m.leg_embed(2, &[2], 2).unwrap(), id.kron(&m));
        assert!(m.leg_embed(2, &[3], 2).is_err());
        let rr = m.kron(&id);
        assert_eq!(rr.leg_embed(2, &[2, 1], 2).unwrap(), id.kron(&m));
    }

    #[test]
    fn t1_t2_entries() {
        let order = 2;
        let tm = NCMatrix::from_fn(2, 1, order, |i, j| NCPoly::gen(GenId::new(Sign::Plus, i + 1, j + 1), order));
        let t1 = tm.leg_embed(2, &[1], 2).unwrap();
        let t2 = tm.leg_embed(2, &[2], 2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        // Coefficient of E_ab ⊗ E_cd sits at row (a,c), column (b,d).
                        let (r, col) = (a * 2 + c, b * 2 + d);
                        let e1 = if c == d { tm.get(a, b).clone() } else { NCPoly::zero(1, order) };
                        let e2 = if a == b { tm.get(c, d).clone() } else { NCPoly::zero(1, order) };
                        assert_eq!(t1.get(r, col), &e1);
                        assert_eq!(t2.get(r, col), &e2);
                    }
                }
            }
        }
    }

    #[test]
    fn weight_projection() {
        let weights = vec![vec![qr(1, 2)], vec![qr(-1, 2)]];
        let m = HMatrix::from_rational(&[vec![qi(1), qi(2)], vec![qi(3), qi(4)]], 1);
        let p = weight_project_scalar(&m, &weights, &[qi(1)]);
        assert_eq!(p.first_nonzero().map(|x| (x.0, x.1)), Some((0, 1)));
        let d = weight_project_scalar(&m, &weights, &[qi(0)]);
        let all = p.add(&d).add(&weight_project_scalar(&m, &weights, &[qi(-1)]));
        assert_eq!(all, m);
    }

    #[test]
    fn json_shape() {
        let p = t(Sign::Plus, 1, 2);
        let j = serde_json::to_value(&p).unwrap();
        assert_eq!(j["arity"], 1);
        assert_eq!(j["terms"][0]["word"][0]["sign"], "+");
        assert_eq!(j["terms"][0]["word"][0]["j"], 2);
        let back: NCPoly = serde_json::from_value(j).unwrap();
        assert_eq!(back, p);
    }
}
