use proptest::prelude::*;
use urg::hseries::{qpow, qr, HSeries, Q};
use urg::ncalg::{GenId, Letter, NCPoly, Sign};
use urg::qmatrix::sln_vector_r;
use urg::urgcore::hopf::HopfData;
use urg::urgcore::{auto, Presentation, RewriteSystem};

const N: usize = 3;

fn small_q() -> impl Strategy<Value = Q> {
    (-5i64..=5, 1i64..=4).prop_map(|(a, b)| qr(a, b))
}

fn series(n: usize) -> impl Strategy<Value = HSeries> {
    prop::collection::vec(small_q(), n + 1).prop_map(HSeries::from_coeffs)
}

fn unit_series(n: usize) -> impl Strategy<Value = HSeries> {
    series(n).prop_filter("unit", HSeries::is_unit)
}

struct Fixture {
    p: Presentation,
    rw: RewriteSystem,
    h: HopfData,
}

thread_local! {
    static SL2: &'static Fixture = {
        let p = Presentation::build(&sln_vector_r(2, N + 1)).unwrap();
        let rw = RewriteSystem::build(&p).unwrap();
        let h = HopfData::build(&p);
        Box::leak(Box::new(Fixture { p, rw, h }))
    };
}

fn sl2() -> &'static Fixture {
    SL2.with(|f| *f)
}

fn sl2_gens() -> Vec<GenId> {
    let mut g = Vec::new();
    for s in Sign::both() {
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            g.push(GenId::new(s, i, j));
        }
    }
    g
}

/// A polynomial in the sl2 generators with at most `len` letters per word.
fn poly(len: usize) -> impl Strategy<Value = NCPoly> {
    let gens: Vec<GenId> = sl2_gens().into_iter().filter(|g| sl2().p.is_alive(g)).collect();
    let word = prop::collection::vec(prop::sample::select(gens), 0..=len);
    let term = (word, small_q(), 0usize..=1);
    prop::collection::vec(term, 1..=3).prop_map(|terms| {
        let mut x = NCPoly::zero(1, N);
        for (w, c, k) in terms {
            let w: Vec<Letter> = w.into_iter().map(|gen| Letter { gen, leg: 1 }).collect();
            x.add_term(w, HSeries::monomial(c, k, N));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(N), b in series(N), c in series(N)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn series_inverse(a in unit_series(N)) {
        prop_assert!((&a * &a.invert().unwrap()).is_one());
    }

    #[test]
    fn series_exp_log(a in series(N)) {
        let x = a.shift(1).truncate(N);
        prop_assert_eq!(x.exp().unwrap().log().unwrap(), x);
    }

    #[test]
    fn q_powers_add(a in small_q(), b in small_q()) {
        prop_assert_eq!(&qpow(&a, N) * &qpow(&b, N), qpow(&(&a + &b), N));
    }

    #[test]
    fn poly_ring_laws(x in poly(2), y in poly(2), z in poly(2)) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn tensor_interchange(a in poly(1), b in poly(1), c in poly(1), d in poly(1)) {
        prop_assert_eq!(a.tensor(&b).mul(&c.tensor(&d)), a.mul(&c).tensor(&b.mul(&d)));
    }

    #[test]
    fn nf_idempotent_and_ordered(x in poly(3)) {
        let f = sl2();
        let y = f.rw.nf(&x).unwrap();
        prop_assert_eq!(f.rw.nf(&y).unwrap(), y.clone());
        for (w, _) in y.terms() {
            prop_assert!(f.rw.is_ordered(w));
        }
    }

    #[test]
    fn nf_multiplicative(x in poly(2), y in poly(1)) {
        let f = sl2();
        let lhs = f.rw.nf(&x.mul(&y)).unwrap();
        let rhs = f.rw.nf(&f.rw.nf(&x).unwrap().mul(&f.rw.nf(&y).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nf_fixes_ordered_words(x in poly(3)) {
        let f = sl2();
        let ordered = x.filter(|w| f.rw.is_ordered(w));
        prop_assert_eq!(f.rw.nf(&ordered).unwrap(), ordered);
    }

    #[test]
    fn counit_is_a_character(x in poly(2), y in poly(2)) {
        let f = sl2();
        let e = |z: &NCPoly| f.h.counit(z);
        prop_assert_eq!(e(&x.mul(&y)), &e(&x) * &e(&y));
    }

    #[test]
    fn counit_axiom_on_products(x in poly(2)) {
        let f = sl2();
        let d = f.h.delta(&x);
        let left = f.h.counit_on_leg(&d, 1);
        let right = f.h.counit_on_leg(&d, 2);
        prop_assert_eq!(f.rw.nf(&left).unwrap(), f.rw.nf(&x).unwrap());
        prop_assert_eq!(f.rw.nf(&right).unwrap(), f.rw.nf(&x).unwrap());
    }

    #[test]
    fn adjoint_grading_is_multiplicative(a in -2i64..=2, b in -2i64..=2) {
        let f = sl2();
        let ha = vec![Q::from_integer(a.into())];
        let hb = vec![Q::from_integer(b.into())];
        let hab = vec![Q::from_integer((a + b).into())];
        let ta = auto::theta_ad(&f.p, &ha).unwrap();
        let tb = auto::theta_ad(&f.p, &hb).unwrap();
        let tab = auto::theta_ad(&f.p, &hab).unwrap();
        let both = ta.compose(&tb);
        for g in &f.p.generators {
            prop_assert_eq!(&both.images[g], &tab.images[g]);
            let want = NCPoly::gen(*g, N).scale(&auto::grading_scalar(&f.p, g, &hab));
            prop_assert_eq!(&tab.images[g], &want);
        }
    }
}
