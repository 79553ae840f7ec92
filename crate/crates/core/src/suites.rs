//! Verification suites shared by the command line and the acceptance run.

use crate::classical::{Double, Gr, PhiMap, RepData, RootData};
use crate::hseries::{qi, HSeries, Q};
use crate::ncalg::{GenId, HMatrix, Letter, NCPoly, Sign};
use crate::qmatrix::{sl2_universal_r, sln_vector_r, RError, RMatrix};
use crate::report::CheckReport;
use crate::urgcore::center::{check_diagonal_sector, diagonal_product, grouplike_defect, theta_matrix};
use crate::urgcore::hopf::{verify_hopf, HopfData};
use crate::urgcore::{auto, cocomm, Center, FrtRep, Presentation, QuotientKind, QuotientSystem, RewriteSystem};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::fmt::Display;

/// Built-in modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Sln(usize),
    Sl2Vector,
    Sl2Adjoint,
    Sl2Sum2,
}

impl Algebra {
    pub fn name(&self) -> String {
        match self {
            Algebra::Sln(n) => format!("sl{n}-vector"),
            Algebra::Sl2Vector => "sl2-vector-universal".into(),
            Algebra::Sl2Adjoint => "sl2-adjoint".into(),
            Algebra::Sl2Sum2 => "sl2-C2+C2".into(),
        }
    }

    pub fn rep(&self) -> RepData {
        match self {
            Algebra::Sln(n) => RepData::vector(&RootData::sl(*n)),
            _ => {
                let rd = RootData::sl(2);
                let v = RepData::vector(&rd);
                match self {
                    Algebra::Sl2Adjoint => RepData::sl2_adjoint(&rd),
                    Algebra::Sl2Sum2 => v.direct_sum(&v),
                    _ => v,
                }
            }
        }
    }

    /// The R-matrix at truncation order `order`.
    pub fn rmatrix(&self, order: usize) -> Result<RMatrix, RError> {
        match self {
            Algebra::Sln(n) if *n >= 2 => Ok(sln_vector_r(*n, order)),
            Algebra::Sln(n) => Err(RError::Input(format!("sl_{n} needs n >= 2"))),
            _ => sl2_universal_r(&self.rep(), order),
        }
    }
}

/// An R-matrix held one order above the presentation, plus the sign
/// restriction for Borel sessions.
#[derive(Clone, Debug)]
pub struct Session {
    pub name: String,
    pub r: RMatrix,
    pub borel: Option<Sign>,
}

impl Session {
    pub fn new(name: impl Into<String>, r: RMatrix) -> Self {
        Session { name: name.into(), r, borel: None }
    }

    /// Session whose presentation has truncation order `order`.
    pub fn builtin(a: Algebra, order: usize) -> Result<Self, RError> {
        Ok(Self::new(a.name(), a.rmatrix(order + 1)?))
    }

    pub fn order(&self) -> usize {
        self.r.order().saturating_sub(1)
    }

    pub fn instance(&self) -> String {
        let b = self.borel.map(|s| format!(" borel{}", s.symbol())).unwrap_or_default();
        format!("{} N={}{}", self.name, self.order(), b)
    }

    pub fn presentation(&self) -> Result<Presentation, crate::urgcore::UrgError> {
        match self.borel {
            Some(s) => Presentation::build_with_signs(&self.r, &[s]),
            None => Presentation::build(&self.r),
        }
    }

    fn signs(&self) -> Vec<Sign> {
        match self.borel {
            Some(s) => vec![s],
            None => Sign::both().to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Classical,
    Confluence,
    Hopf,
    Center,
    Automorphisms,
    Rep,
    Quotients,
    Cocomm,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Classical,
        Suite::Confluence,
        Suite::Hopf,
        Suite::Center,
        Suite::Automorphisms,
        Suite::Rep,
        Suite::Quotients,
        Suite::Cocomm,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Classical => "classical",
            Suite::Confluence => "confluence",
            Suite::Hopf => "hopf",
            Suite::Center => "center",
            Suite::Automorphisms => "automorphisms",
            Suite::Rep => "rep",
            Suite::Quotients => "quotients",
            Suite::Cocomm => "cocomm",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

pub fn run(suite: Suite, s: &Session) -> Vec<CheckReport> {
    match suite {
        Suite::Classical => classical(s),
        Suite::Confluence => confluence(s, 500, 7),
        Suite::Hopf => hopf(s),
        Suite::Center => center(s),
        Suite::Automorphisms => automorphisms(s),
        Suite::Rep => rep(s),
        Suite::Quotients => quotients(s),
        Suite::Cocomm => cocomm(s),
    }
}

/// Unwraps `r`, or records a failed check carrying the error.
fn guard<T, E: Display>(out: &mut Vec<CheckReport>, check: &str, inst: &str, r: Result<T, E>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(e) => {
            out.push(CheckReport::fail(check, inst, e.to_string()));
            None
        }
    }
}

fn setup(out: &mut Vec<CheckReport>, s: &Session) -> Option<(Presentation, RewriteSystem)> {
    let inst = s.instance();
    let p = guard(out, "presentation", &inst, s.presentation())?;
    let rw = guard(out, "straightening rules", &inst, RewriteSystem::build(&p))?;
    Some((p, rw))
}

/// QYBE, semiclassical limit, weight-zero and (for sl_n) Hecke checks.
pub fn qybe(r: &RMatrix, inst: &str) -> Vec<CheckReport> {
    let v = r.validate();
    let mut out = vec![
        CheckReport::expect_none(
            "qybe",
            inst,
            v.qybe_residual.clone().map(|(i, j, x)| json!({"row": i, "col": j, "value": x})),
        ),
        CheckReport::from_bool("semiclassical", inst, v.semiclassical),
        CheckReport::from_bool("weight zero", inst, v.weight_zero),
    ];
    if let Some(h) = v.hecke {
        out.push(CheckReport::from_bool("hecke", inst, h));
    }
    out
}

pub fn classical(s: &Session) -> Vec<CheckReport> {
    let inst = s.instance();
    let mut out = Vec::new();
    let rep = &s.r.rep;
    let root = &rep.root;
    out.push(CheckReport::from_bool(
        "semiclassical limit of R",
        &inst,
        s.r.classical_limit().as_ref() == Some(&rep.classical_r()),
    ));
    let signs = s.signs();
    let Some(gr) = guard(&mut out, "g_r construction", &inst, Gr::build_with_signs(rep, &signs)) else {
        return out;
    };
    out.push(CheckReport::expect_none("g_r Jacobi", &inst, gr.lie.jacobi_violation()));
    out.push(CheckReport::expect_none("g_r co-Jacobi", &inst, gr.cobracket.co_jacobi_violation()));
    out.push(CheckReport::expect_none("g_r cocycle", &inst, gr.cobracket.cocycle_violation(&gr.lie)));
    out.push(CheckReport::from_bool("cobracket descends to g_r", &inst, gr.cobracket_well_defined()));
    let borel_dim = root.num_pos() + root.rank;
    let inv = rep.invariants().len();
    let expect = signs.len() * (borel_dim + inv);
    let dim_ok = gr.dim() == expect;
    out.push(
        CheckReport::from_bool("dim g_r", &inst, dim_ok).with_witness(json!({"dim": gr.dim(), "expected": expect})),
    );
    if let Some(p) = guard(&mut out, "presentation", &inst, s.presentation()) {
        out.push(CheckReport::expect_none("relations linearize to the g_r table", &inst, p.classical_mismatch(&gr)));
    }
    if s.borel.is_some() {
        return out;
    }
    let double = Double::build(root);
    out.push(CheckReport::expect_none("D(b+) Jacobi", &inst, double.lie.jacobi_violation()));
    let dcob = double.cobracket();
    out.push(CheckReport::expect_none("D(b+) co-Jacobi", &inst, dcob.co_jacobi_violation()));
    out.push(CheckReport::expect_none("D(b+) cocycle", &inst, dcob.cocycle_violation(&double.lie)));
    let phi = PhiMap::build(&gr);
    out.push(CheckReport::expect_none("Phi is a Lie isomorphism", &inst, phi.verify(&gr).err()));
    out.push(CheckReport::expect_none("Phi intertwines cobrackets", &inst, phi.verify_cobracket(&gr).err()));
    out.push(CheckReport::expect_none(
        "K coefficients central",
        &inst,
        gr.k_central_violation().map(|(s, n)| format!("K{}[{n}]", s.symbol())),
    ));
    if let Some(g) = guard(&mut out, "recover g", &inst, gr.recover_g()) {
        let d = root.dim();
        out.push(CheckReport::from_bool("recovered dim = dim g", &inst, g.lie.dim() == d));
        out.push(CheckReport::from_bool("recovered Killing form nondegenerate", &inst, g.killing_rank == d));
        out.push(CheckReport::from_bool("recovered Cartan matrix", &inst, g.cartan == root.cartan));
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, gens: &[GenId], max_len: usize, order: usize) -> NCPoly {
    let mut x = NCPoly::zero(1, order);
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<Letter> = (0..len).map(|_| Letter { gen: gens[rng.gen_range(0..gens.len())], leg: 1 }).collect();
        let c = Q::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into());
        let k = rng.gen_range(0..=1.min(order));
        x.add_term(w, HSeries::monomial(c, k, order));
    }
    x
}

/// Termination contract, overlap resolution, and `samples` randomized
/// idempotence and multiplicativity checks.
pub fn confluence(s: &Session, samples: usize, seed: u64) -> Vec<CheckReport> {
    let inst = s.instance();
    let mut out = Vec::new();
    let Some((p, rw)) = setup(&mut out, s) else {
        return out;
    };
    out.push(CheckReport::expect_none("termination contract", &inst, rw.check_contract().err().map(|e| e.to_string())));
    if let Some(div) = guard(&mut out, "overlaps", &inst, rw.confluence()) {
        let n = div.len();
        out.push(CheckReport::expect_none(
            "overlaps",
            &inst,
            div.into_iter().next().map(|d| json!({"count": n, "first": d})),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idem = None;
    let mut mult = None;
    for _ in 0..samples {
        let la = rng.gen_range(0..=3);
        let x = random_poly(&mut rng, &p.generators, la, p.order);
        let y = random_poly(&mut rng, &p.generators, 3 - la, p.order);
        let z = x.mul(&y);
        let (Ok(nz), Ok(nx), Ok(ny)) = (rw.nf(&z), rw.nf(&x), rw.nf(&y)) else {
            mult.get_or_insert(format!("normal form failed on {z}"));
            continue;
        };
        if rw.nf(&nz).ok().as_ref() != Some(&nz) {
            idem.get_or_insert(z.to_string());
        }
        if rw.nf(&nx.mul(&ny)).ok().as_ref() != Some(&nz) {
            mult.get_or_insert(format!("{x} * {y}"));
        }
    }
    let label = |c: &str| format!("{c} ({samples} samples)");
    out.push(CheckReport::expect_none(label("nf idempotent"), &inst, idem));
    out.push(CheckReport::expect_none(label("nf multiplicative"), &inst, mult));
    out
}

pub fn hopf(s: &Session) -> Vec<CheckReport> {
    let inst = s.instance();
    let mut out = Vec::new();
    let Some((p, rw)) = setup(&mut out, s) else {
        return out;
    };
    let h = HopfData::build(&p);
    let Some(checks) = guard(&mut out, "hopf", &inst, verify_hopf(&p, &rw, &h)) else {
        return out;
    };
    let mut groups: Vec<(&str, Option<String>, usize)> = Vec::new();
    for c in &checks {
        let bad = c.residual.as_ref().map(|r| format!("{}: {r}", c.instance));
        match groups.iter_mut().find(|g| g.0 == c.check) {
            Some(g) => {
                g.2 += 1;
                if g.1.is_none() {
                    g.1 = bad;
                }
            }
            None => groups.push((c.check, bad, 1)),
        }
    }
    for (check, bad, count) in groups {
        out.push(CheckReport::expect_none(format!("{check} ({count} instances)"), &inst, bad));
    }
    out
}

pub fn center(s: &Session) -> Vec<CheckReport> {
    let inst = s.instance();
    let mut out = Vec::new();
    let Some((p, rw)) = setup(&mut out, s) else {
        return out;
    };
    let Some(c) = guard(&mut out, "central elements", &inst, Center::build(&p)) else {
        return out;
    };
    let h = HopfData::build(&p);
    let n = p.order;
    let bad = guard(&mut out, "z central", &inst, c.non_central(&p, &rw));
    if let Some(bad) = bad {
        let w = bad.first().map(|(s, b, g)| format!("[z{}_{b}, {g}]", s.symbol()));
        out.push(CheckReport::expect_none(format!("z central ({} generators)", p.generators.len()), &inst, w));
    }
    for (&(sg, b), z) in &c.z {
        let tag = format!("z{}_{b}", sg.symbol());
        out.push(CheckReport::from_bool(format!("counit of {tag}"), &inst, h.counit(z).is_zero()));
        let blk = &c.blocks[b];
        let prod = rw.nf(&diagonal_product(&p, sg, blk, n));
        let qz = c.q_power(&p, &rw, sg, b);
        if let (Some(prod), Some(qz)) =
            (guard(&mut out, "diagonal product", &inst, prod), guard(&mut out, "q-power", &inst, qz))
        {
            let name = format!("q^(±dim {tag}) = diagonal product");
            out.push(CheckReport::expect_none(name, &inst, (qz != prod).then(|| qz.sub(&prod).to_string())));
            if let Some(d) = guard(&mut out, "grouplike", &inst, grouplike_defect(&h, &rw, &prod)) {
                out.push(CheckReport::expect_none(
                    format!("diagonal product for {tag} grouplike"),
                    &inst,
                    (!d.is_zero()).then(|| d.to_string()),
                ));
            }
        }
    }
    if s.borel.is_some() {
        return out;
    }
    if let Some(theta) = guard(&mut out, "Theta", &inst, theta_matrix(&p, &rw, &c)) {
        let mut bad = None;
        for (i, th) in theta.iter().enumerate() {
            for g in &p.generators {
                let comm = rw.nf(&th.commutator(&NCPoly::gen(*g, n)));
                if !matches!(comm, Ok(ref x) if x.is_zero()) {
                    bad.get_or_insert(format!("[Theta_{}{}, {g}]", i + 1, i + 1));
                }
            }
        }
        out.push(CheckReport::expect_none("Theta central", &inst, bad));
        out.push(CheckReport::from_bool("counit of Theta", &inst, theta.iter().all(|t| t.constant_term().is_zero())));
        for (b, blk) in c.blocks.iter().enumerate() {
            let mut tr = NCPoly::zero(1, n);
            for t in &theta[blk.start..blk.start + blk.dim] {
                tr = tr.add(t);
            }
            let ok = rw.nf(&tr).map(|x| x.is_zero()).unwrap_or(false);
            out.push(CheckReport::from_bool(format!("Theta trace vanishes on block {b}"), &inst, ok));
        }
    }
    let Some(uq) = guard(&mut out, "uhg quotient", &inst, QuotientSystem::build(&p, rw, QuotientKind::Uhg)) else {
        return out;
    };
    uhg_identities(&mut out, &p, &uq, &inst);
    out
}

fn uhg_identities(out: &mut Vec<CheckReport>, p: &Presentation, uq: &QuotientSystem, inst: &str) {
    let n = p.order;
    let one = HSeries::one(n);
    let d = p.d();
    let mut bad = None;
    for i in 0..d {
        let x = p.ell(Sign::Plus, i, i, n).mul(&p.ell(Sign::Minus, i, i, n));
        if !matches!(uq.defect(&x, &one), Ok(ref r) if r.is_zero()) {
            bad.get_or_insert(format!("l+[{0},{0}] l-[{0},{0}]", i + 1));
        }
    }
    out.push(CheckReport::expect_none("uhg: l+_ii l-_ii = 1", inst, bad));
    for s in Sign::both() {
        for (b, blk) in p.rep().blocks.iter().enumerate() {
            let prod = diagonal_product(p, s, blk, n);
            let ok = matches!(uq.defect(&prod, &one), Ok(ref r) if r.is_zero());
            out.push(CheckReport::from_bool(format!("uhg: prod l{}_ii = 1 on block {b}", s.symbol()), inst, ok));
        }
    }
}

/// `(2/ħ) log c` for a scalar series `c ≡ 1`, at order `n`.
fn two_log_over_hbar(c: &HSeries, n: usize) -> HSeries {
    c.log().expect("c ≡ 1").div_by_hbar().expect("log c ≡ 0").scale(&qi(2)).truncate(n)
}

pub fn automorphisms(s: &Session) -> Vec<CheckReport> {
    let inst = s.instance();
    let mut out = Vec::new();
    let Some((p, rw)) = setup(&mut out, s) else {
        return out;
    };
    let n = p.order;
    let rank = p.rep().root.rank;
    let up = n + 1;
    let check_map = |out: &mut Vec<CheckReport>, m: &auto::GenMap, inv: &auto::GenMap| {
        if let Some(bad) = guard(out, &m.name, &inst, m.broken_relations(&p, &rw)) {
            out.push(CheckReport::expect_none(format!("{} preserves relations", m.name), &inst, bad.first().cloned()));
        }
        if let Some(x) = guard(out, &m.name, &inst, inv.compose(m).non_identity(&rw)) {
            out.push(CheckReport::expect_none(format!("{} inverse", m.name), &inst, x.map(|g| g.to_string())));
        }
    };
    for k in 0..rank {
        let mut h = vec![Q::zero(); rank];
        h[k] = qi(1);
        let tag = format!("h{}", k + 1);
        let gam = auto::gamma(&p, &h);
        let cinv = auto::q_pow_pi(p.rep(), &h, &crate::hseries::qr(1, 2), up);
        let ginv = cinv.and_then(|c| auto::theta(&p, &c, &c, "gamma inverse"));
        if let (Some(mut g), Some(gi)) = (guard(&mut out, "gamma", &inst, gam), guard(&mut out, "gamma", &inst, ginv)) {
            g.name = format!("gamma_{tag}");
            check_map(&mut out, &g, &gi);
        }
        if let Some(ad) = guard(&mut out, "theta_ad", &inst, auto::theta_ad(&p, &h)) {
            let bad = p
                .generators
                .iter()
                .find(|g| ad.images[*g] != NCPoly::gen(**g, n).scale(&auto::grading_scalar(&p, g, &h)));
            out.push(CheckReport::expect_none(format!("theta_ad_{tag} grading"), &inst, bad.map(|g| g.to_string())));
        }
        // θ_C^D with C = q^{π(h)}, D = q^{-π(h)/2}.
        let cd = auto::q_pow_pi(p.rep(), &h, &qi(1), up).and_then(|c| {
            let d = auto::q_pow_pi(p.rep(), &h, &crate::hseries::qr(-1, 2), up)?;
            let ci = auto::q_pow_pi(p.rep(), &h, &qi(-1), up)?;
            let di = auto::q_pow_pi(p.rep(), &h, &crate::hseries::qr(1, 2), up)?;
            Ok((auto::theta(&p, &c, &d, &format!("theta_{tag}"))?, auto::theta(&p, &ci, &di, "theta inverse")?))
        });
        if let Some((m, mi)) = guard(&mut out, "theta", &inst, cd) {
            check_map(&mut out, &m, &mi);
        }
    }
    let d = p.d();
    let cplus = &HSeries::one(up) + &HSeries::hbar(up);
    let cminus = &HSeries::one(up) - &HSeries::hbar(up);
    let scalar = |c: &HSeries| HMatrix::identity(d, up).scale(c);
    let inv = |c: &HSeries| c.invert().expect("unit");
    let chi = auto::chi(&p, &scalar(&cplus), &scalar(&cminus));
    let chi_inv = auto::chi(&p, &scalar(&inv(&cplus)), &scalar(&inv(&cminus)));
    if let (Some(mut m), Some(mi)) = (guard(&mut out, "chi", &inst, chi), guard(&mut out, "chi", &inst, chi_inv)) {
        m.name = "chi(1+h, 1-h)".into();
        check_map(&mut out, &m, &mi);
        if let Ok(c) = Center::build(&p) {
            for (&(sg, b), z) in &c.z {
                let (cs, sign) = match sg {
                    Sign::Plus => (&cplus, qi(1)),
                    Sign::Minus => (&cminus, qi(-1)),
                };
                let shift = two_log_over_hbar(cs, n).scale(&sign);
                let moved = rw.nf(&m.apply(z).sub(z).sub(&NCPoly::scalar(shift, 1)));
                let ok = matches!(moved, Ok(ref x) if x.is_zero());
                out.push(CheckReport::from_bool(format!("chi shifts z{}_{b} by a constant", sg.symbol()), &inst, ok));
            }
        }
    }
    let mut off = HMatrix::identity(d, up);
    if d >= 2 {
        off.set(0, 1, HSeries::hbar(up));
        let rejected = auto::theta(&p, &off, &off, "off-diagonal").is_err();
        out.push(CheckReport::from_bool("GL_I membership rejects a non-weight-zero C", &inst, rejected));
        let rejected = auto::chi(&p, &off, &off).is_err();
        out.push(CheckReport::from_bool("GL(V)^g membership rejects a non-invariant C", &inst, rejected));
    }
    out
}

pub fn rep(s: &Session) -> Vec<CheckReport> {
    let inst = s.instance();
    let mut out = Vec::new();
    let Some(p) = guard(&mut out, "presentation", &inst, s.presentation()) else {
        return out;
    };
    let Some(rho) = guard(&mut out, "FRT evaluation", &inst, FrtRep::build(&p)) else {
        return out;
    };
    let bad = rho.broken_relations(&p);
    let count = p.relations.len();
    out.push(CheckReport::expect_none(format!("FRT relations ({count})"), &inst, bad.first().cloned()));
    out.push(CheckReport::expect_none(
        "killed entries vanish",
        &inst,
        rho.nonzero_killed().first().map(|g| g.to_string()),
    ));
    let nontrivial = rho.t.iter().any(|(g, m)| g.i != g.j && !m.is_zero());
    out.push(CheckReport::from_bool("off-diagonal images nonzero", &inst, nontrivial));
    out
}

pub fn quotients(s: &Session) -> Vec<CheckReport> {
    let inst = s.instance();
    let mut out = Vec::new();
    if s.borel.is_some() {
        out.push(CheckReport::fail("quotients", &inst, "quotients need both signs"));
        return out;
    }
    let Some((p, rw)) = setup(&mut out, s) else {
        return out;
    };
    let n = p.order;
    let root = &p.rep().root;
    let Some(c) = guard(&mut out, "central elements", &inst, Center::build(&p)) else {
        return out;
    };
    if let Some(diag) = guard(&mut out, "diagonal sector", &inst, check_diagonal_sector(&p, &rw)) {
        out.push(CheckReport::pass("diagonal sector commutes", &inst).with_witness(diag.len()));
    }
    if let Some(dq) =
        guard(&mut out, "double quotient", &inst, QuotientSystem::build(&p, rw.clone(), QuotientKind::Double))
    {
        let ok = c.z.values().all(|z| matches!(dq.nf(z), Ok(ref x) if x.is_zero()));
        out.push(CheckReport::from_bool("double: z -> 0", &inst, ok));
        let x = p.ell(Sign::Plus, 0, 0, n).mul(&p.ell(Sign::Minus, 0, 0, n));
        let survives = matches!(dq.defect(&x, &HSeries::one(n)), Ok(ref r) if !r.is_zero());
        out.push(CheckReport::from_bool("double: l+_11 l-_11 != 1", &inst, survives));
        let expect = root.dim() + root.rank;
        let got = dq.generators.len();
        out.push(
            CheckReport::from_bool("double: generator count = dim D(b+)", &inst, got == expect)
                .with_witness(json!({"generators": got, "expected": expect})),
        );
        if let Some(div) = guard(&mut out, "double overlaps", &inst, dq.confluence()) {
            out.push(CheckReport::expect_none("double: overlaps", &inst, div.first().cloned()));
        }
    }
    if let Some(uq) = guard(&mut out, "uhg quotient", &inst, QuotientSystem::build(&p, rw, QuotientKind::Uhg)) {
        let got = uq.generators.len();
        let classical = Gr::build(p.rep()).ok().and_then(|g| g.recover_g().ok()).map(|g| g.lie.dim());
        let ok = got == root.dim() && classical == Some(got);
        out.push(
            CheckReport::from_bool("uhg: classical limit has dim g", &inst, ok)
                .with_witness(json!({"generators": got, "recovered": classical})),
        );
        if let Some(div) = guard(&mut out, "uhg overlaps", &inst, uq.confluence()) {
            out.push(CheckReport::expect_none("uhg: overlaps", &inst, div.first().cloned()));
        }
        uhg_identities(&mut out, &p, &uq, &inst);
    }
    out
}

pub fn cocomm(s: &Session) -> Vec<CheckReport> {
    let inst = s.instance();
    let mut out = Vec::new();
    let Some(p) = guard(&mut out, "presentation", &inst, s.presentation()) else {
        return out;
    };
    let Some(gr) = guard(&mut out, "g_r construction", &inst, Gr::build(p.rep())) else {
        return out;
    };
    let phi = PhiMap::build(&gr);
    let h = HopfData::build(&p);
    let rep = cocomm::first_order_cocommutativity(&p, &h, &gr, &phi);
    let repeated = !p.rep().multiplicity_free();
    let present = rep.witness_present();
    let expected = if repeated { "present" } else { "absent" };
    let w = json!({
        "witness": if present { "present" } else { "absent" },
        "quantum": rep.quantum_witness.map(|(s, n)| format!("K{}[{n}]", s.symbol())),
        "classical": rep.classical_witness.map(|(s, n)| format!("K{}[{n}]", s.symbol())),
    });
    let status = CheckReport::from_bool(format!("witness {expected}"), &inst, present == repeated);
    out.push(status.with_witness(w));
    out.push(CheckReport::expect_none(
        "quantum first order matches classical z-sector cobracket",
        &inst,
        rep.mismatch.map(|(s, n)| format!("K{}[{n}]", s.symbol())),
    ));
    out
}
