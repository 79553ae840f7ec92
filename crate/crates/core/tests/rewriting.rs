use urg::classical::{Gr, RepData, RootData};
use urg::hseries::{q, qi, HSeries};
use urg::ncalg::{GenId, Letter, NCPoly, Sign};
use urg::qmatrix::{sl2_universal_r, sln_vector_r};
use urg::urgcore::{Presentation, RewriteSystem, UrgError};

fn tp(i: usize, j: usize) -> GenId {
    GenId::new(Sign::Plus, i, j)
}

fn word(gs: &[GenId]) -> Vec<Letter> {
    gs.iter().map(|g| Letter { gen: *g, leg: 1 }).collect()
}

fn mono(gs: &[GenId], c: HSeries) -> NCPoly {
    NCPoly::monomial(word(gs), c, 1)
}

/// `(q - 1)/ħ` computed from the series of `q` one order up.
fn q_minus_one_over_hbar(n: usize) -> HSeries {
    (&q(n + 1) - &HSeries::one(n + 1)).div_by_hbar().unwrap()
}

#[test]
fn sl2_generators_match_classical_count() {
    let p = Presentation::build(&sln_vector_r(2, 4)).unwrap();
    assert_eq!(p.generators.len(), 6);
    let gr = Gr::build(p.rep()).unwrap();
    assert_eq!(gr.dim(), 6);
    assert_eq!(p.classical_mismatch(&gr), None);
}

#[test]
fn sl2_relation_11_12() {
    let n = 4;
    let p = Presentation::build(&sln_vector_r(2, n + 1)).unwrap();
    let rel = p.relations.iter().find(|r| r.sector == (Sign::Plus, Sign::Plus) && r.component == [0, 0, 0, 1]).unwrap();
    // q t11 t12 - t12 t11 - ((1 - q)/ħ) t12, up to a unit.
    let expect = mono(&[tp(1, 1), tp(1, 2)], q(n))
        .sub(&mono(&[tp(1, 2), tp(1, 1)], HSeries::one(n)))
        .add(&mono(&[tp(1, 2)], q_minus_one_over_hbar(n)));
    let c = rel.poly.coeff(&word(&[tp(1, 2), tp(1, 1)]));
    let normalized = rel.poly.scale(&(-c).invert().unwrap());
    assert_eq!(normalized, expect);
}

#[test]
fn sl2_rules() {
    let n = 4;
    let p = Presentation::build(&sln_vector_r(2, n + 1)).unwrap();
    let rw = RewriteSystem::build(&p).unwrap();
    let r = rw.rule(tp(1, 2), tp(1, 1)).unwrap();
    let expect = mono(&[tp(1, 1), tp(1, 2)], q(n)).add(&mono(&[tp(1, 2)], q_minus_one_over_hbar(n)));
    assert_eq!(r, &expect);
    let r = rw.rule(tp(2, 2), tp(1, 1)).unwrap();
    assert_eq!(r, &mono(&[tp(1, 1), tp(2, 2)], HSeries::one(n)));
    let x = mono(&[tp(1, 2), tp(1, 1)], HSeries::one(n));
    assert_eq!(rw.nf(&x).unwrap(), expect);
    let ordered = mono(&[tp(1, 1), tp(1, 2)], HSeries::one(n));
    assert_eq!(rw.nf(&ordered).unwrap(), ordered);
}

#[test]
fn confluence_sl2_sl3() {
    for n in [2, 3] {
        let p = Presentation::build(&sln_vector_r(n, 5)).unwrap();
        let gr = Gr::build(p.rep()).unwrap();
        assert_eq!(p.classical_mismatch(&gr), None);
        let rw = RewriteSystem::build(&p).unwrap();
        assert!(rw.confluence().unwrap().is_empty(), "sl{n}");
    }
}

#[test]
fn corrupted_rule_diverges() {
    let n = 4;
    let p = Presentation::build(&sln_vector_r(2, n + 1)).unwrap();
    let rw = RewriteSystem::build(&p).unwrap();
    let rule = rw.rule(tp(1, 2), tp(1, 1)).unwrap().clone();
    let bad = rule.add(&mono(&[tp(1, 2)], HSeries::monomial(qi(1), 1, n)));
    let broken = rw.with_rule(tp(1, 2), tp(1, 1), bad);
    assert!(broken.check_contract().is_ok());
    assert!(!broken.confluence().unwrap().is_empty());
}

#[test]
fn repeated_factors_have_no_straightening() {
    let rd = RootData::sl(2);
    let v = RepData::vector(&rd);
    let r = sl2_universal_r(&v.direct_sum(&v), 4).unwrap();
    let p = Presentation::build(&r).unwrap();
    let gr = Gr::build(p.rep()).unwrap();
    assert_eq!(p.classical_mismatch(&gr), None);
    let err = RewriteSystem::build(&p).unwrap_err();
    assert!(matches!(err, UrgError::NoUnitPivot(_) | UrgError::ResidualRelation(_)), "{err}");
}
