use urg::classical::{Gr, PhiMap, RepData, RootData};
use urg::hseries::{q, qi, qpow, qr, HSeries};
use urg::ncalg::{GenId, HMatrix, NCPoly, Sign};
use urg::qmatrix::{sl2_universal_r, sln_vector_r};
use urg::urgcore::center::{diagonal_product, grouplike_defect, theta_matrix};
use urg::urgcore::hopf::{verify_hopf, HopfData};
use urg::urgcore::{auto, cocomm, Center, FrtRep, Presentation, QuotientKind, QuotientSystem, RewriteSystem};

fn gen(s: Sign, i: usize, j: usize, n: usize) -> NCPoly {
    NCPoly::gen(GenId::new(s, i, j), n)
}

fn setup(n: usize, order: usize) -> (Presentation, RewriteSystem) {
    let p = Presentation::build(&sln_vector_r(n, order + 1)).unwrap();
    let rw = RewriteSystem::build(&p).unwrap();
    (p, rw)
}

#[test]
fn coproduct_of_t12() {
    let (p, _) = setup(2, 4);
    let h = HopfData::build(&p);
    let n = p.order;
    let t = |i, j, leg| NCPoly::letter(GenId::new(Sign::Plus, i, j), leg, 2, n);
    let expect = t(1, 2, 1)
        .add(&t(1, 2, 2))
        .add(&t(1, 1, 1).mul(&t(1, 2, 2)).shift(1))
        .add(&t(1, 2, 1).mul(&t(2, 2, 2)).shift(1));
    assert_eq!(h.coproduct[&GenId::new(Sign::Plus, 1, 2)], expect);
}

#[test]
fn hopf_axioms_sl2_sl3() {
    for n in [2, 3] {
        let (p, rw) = setup(n, 4);
        let h = HopfData::build(&p);
        let checks = verify_hopf(&p, &rw, &h).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| c.residual.is_some()).map(|c| (c.check, &c.instance)).collect();
        assert!(failed.is_empty(), "sl{n}: {failed:?}");
    }
}

#[test]
fn center_sl2() {
    let (p, rw) = setup(2, 6);
    let c = Center::build(&p).unwrap();
    assert!(c.non_central(&p, &rw).unwrap().is_empty());
    let h = HopfData::build(&p);
    for s in Sign::both() {
        let blk = &p.rep().blocks[0];
        let prod = rw.nf(&diagonal_product(&p, s, blk, p.order)).unwrap();
        assert_eq!(c.q_power(&p, &rw, s, 0).unwrap(), prod);
        assert!(grouplike_defect(&h, &rw, &prod).unwrap().is_zero());
        assert!(h.counit(c.get(s, 0)).is_zero());
    }
    let theta = theta_matrix(&p, &rw, &c).unwrap();
    for th in &theta {
        for g in &p.generators {
            assert!(rw.nf(&th.commutator(&NCPoly::gen(*g, p.order))).unwrap().is_zero());
        }
        assert!(th.constant_term().is_zero());
    }
    assert!(rw.nf(&theta[0].add(&theta[1])).unwrap().is_zero());
}

#[test]
fn quotients_sl2() {
    let (p, rw) = setup(2, 4);
    let n = p.order;
    let c = Center::build(&p).unwrap();
    let dq = QuotientSystem::build(&p, rw.clone(), QuotientKind::Double).unwrap();
    for s in Sign::both() {
        assert!(dq.nf(c.get(s, 0)).unwrap().is_zero());
    }
    let l11 = p.ell(Sign::Plus, 0, 0, n).mul(&p.ell(Sign::Minus, 0, 0, n));
    assert!(!dq.defect(&l11, &HSeries::one(n)).unwrap().is_zero());
    assert!(dq.confluence().unwrap().is_empty());

    let uq = QuotientSystem::build(&p, rw, QuotientKind::Uhg).unwrap();
    assert_eq!(uq.generators.len(), 3);
    for i in 0..2 {
        let x = p.ell(Sign::Plus, i, i, n).mul(&p.ell(Sign::Minus, i, i, n));
        assert!(uq.defect(&x, &HSeries::one(n)).unwrap().is_zero());
    }
    for s in Sign::both() {
        let prod = diagonal_product(&p, s, &p.rep().blocks[0], n);
        assert!(uq.defect(&prod, &HSeries::one(n)).unwrap().is_zero());
    }
    assert!(uq.confluence().unwrap().is_empty());
}

#[test]
fn automorphisms_sl2() {
    let (p, rw) = setup(2, 4);
    let n = p.order;
    let h1 = vec![qi(1)];
    let g = auto::gamma(&p, &h1).unwrap();
    // ℓ⁺11 ↦ q⁻¹ ℓ⁺11, ℓ⁺12 ↦ ℓ⁺12, ℓ⁺22 ↦ q ℓ⁺22.
    let ell_img = |i: usize, j: usize| {
        let mut x = NCPoly::zero(1, n);
        if i == j {
            x = x.add(&NCPoly::one(1, n));
        }
        x.add(&g.images[&GenId::new(Sign::Plus, i, j)].shift(1))
    };
    assert_eq!(ell_img(1, 1), p.ell(Sign::Plus, 0, 0, n).scale(&qpow(&qi(-1), n)));
    assert_eq!(ell_img(1, 2), p.ell(Sign::Plus, 0, 1, n));
    assert_eq!(ell_img(2, 2), p.ell(Sign::Plus, 1, 1, n).scale(&q(n)));
    assert!(g.broken_relations(&p, &rw).unwrap().is_empty());
    let ginv_c = auto::q_pow_pi(p.rep(), &h1, &qr(1, 2), n + 1).unwrap();
    let ginv = auto::theta(&p, &ginv_c, &ginv_c, "gamma inverse").unwrap();
    assert_eq!(ginv.compose(&g).non_identity(&rw).unwrap(), None);

    let ad = auto::theta_ad(&p, &h1).unwrap();
    let t12 = GenId::new(Sign::Plus, 1, 2);
    assert_eq!(ad.images[&t12], gen(Sign::Plus, 1, 2, n).scale(&q(n).pow(2)));
    for g in &p.generators {
        let want = NCPoly::gen(*g, n).scale(&auto::grading_scalar(&p, g, &h1));
        assert_eq!(ad.images[g], want);
    }

    let c = HMatrix::identity(2, n + 1).scale(&(&HSeries::one(n + 1) + &HSeries::hbar(n + 1)));
    let id = HMatrix::identity(2, n + 1);
    let chi = auto::chi(&p, &c, &id).unwrap();
    let one_plus = &HSeries::one(n) + &HSeries::hbar(n);
    let want = gen(Sign::Plus, 1, 1, n).scale(&one_plus).add(&NCPoly::one(1, n));
    assert_eq!(chi.images[&GenId::new(Sign::Plus, 1, 1)], want);
    assert!(chi.broken_relations(&p, &rw).unwrap().is_empty());
}

#[test]
fn frt_evaluation() {
    for n in [2, 3] {
        let (p, _) = setup(n, 6);
        let rho = FrtRep::build(&p).unwrap();
        assert!(rho.broken_relations(&p).is_empty(), "sl{n}");
        assert!(rho.nonzero_killed().is_empty());
        assert!(!rho.ell[&GenId::new(Sign::Plus, 1, 2)].is_zero());
    }
}

#[test]
fn cocommutativity_dichotomy() {
    let rd = RootData::sl(2);
    let v = RepData::vector(&rd);
    for (rep, expect) in [(v.clone(), false), (v.direct_sum(&v), true)] {
        let r = sl2_universal_r(&rep, 3).unwrap();
        let p = Presentation::build(&r).unwrap();
        let gr = Gr::build(p.rep()).unwrap();
        let phi = PhiMap::build(&gr);
        let h = HopfData::build(&p);
        let rep = cocomm::first_order_cocommutativity(&p, &h, &gr, &phi);
        assert!(rep.consistent(), "{rep:?}");
        assert_eq!(rep.witness_present(), expect);
    }
}

#[test]
fn corrupted_coproduct_is_caught() {
    let (p, rw) = setup(2, 4);
    let mut h = HopfData::build(&p);
    let t12 = GenId::new(Sign::Plus, 1, 2);
    let extra = NCPoly::letter(t12, 1, 2, p.order).mul(&NCPoly::letter(t12, 2, 2, p.order)).shift(2);
    let bad = h.coproduct[&t12].add(&extra);
    h.coproduct.insert(t12, bad);
    let checks = verify_hopf(&p, &rw, &h).unwrap();
    let failed: Vec<_> = checks.iter().filter(|c| c.residual.is_some()).map(|c| c.check).collect();
    assert!(failed.contains(&"coassociativity"), "{failed:?}");
}

#[test]
fn corrupted_antipode_is_caught() {
    let (p, rw) = setup(2, 4);
    let mut h = HopfData::build(&p);
    let t11 = GenId::new(Sign::Plus, 1, 1);
    let bad = h.antipode[&t11].add(&gen(Sign::Plus, 1, 1, p.order).shift(3));
    h.antipode.insert(t11, bad);
    let checks = verify_hopf(&p, &rw, &h).unwrap();
    assert!(checks.iter().any(|c| c.check.starts_with("antipode") && c.residual.is_some()));
}

#[test]
fn corrupted_automorphism_is_caught() {
    let (p, rw) = setup(2, 4);
    let mut g = auto::gamma(&p, &[qi(1)]).unwrap();
    let t12 = GenId::new(Sign::Plus, 1, 2);
    let bad = g.images[&t12].scale(&(&HSeries::one(p.order) + &HSeries::hbar(p.order)));
    g.images.insert(t12, bad);
    assert!(!g.broken_relations(&p, &rw).unwrap().is_empty());
}
