//! Acceptance run: one PASS/FAIL line per criterion.

use std::time::Instant;
use urg::classical::Gr;
use urg::report::{render_human, CheckReport};
use urg::suites::{self, Algebra, Session};
use urg::urgcore::Presentation;

const SL2: Algebra = Algebra::Sln(2);
const SL3: Algebra = Algebra::Sln(3);
const MODULES: [Algebra; 6] =
    [Algebra::Sln(2), Algebra::Sln(3), Algebra::Sln(4), Algebra::Sl2Vector, Algebra::Sl2Adjoint, Algebra::Sl2Sum2];

fn session(a: Algebra, order: usize) -> Session {
    Session::builtin(a, order).expect("built-in R-matrix")
}

fn qybe_all() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for a in MODULES {
        let r = a.rmatrix(8).expect("built-in R-matrix");
        let inst = format!("{} N=8", a.name());
        out.extend(suites::qybe(&r, &inst).into_iter().filter(|c| c.check == "qybe"));
    }
    out
}

fn semiclassical() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for a in MODULES {
        let r = a.rmatrix(8).expect("built-in R-matrix");
        let inst = format!("{} N=8", a.name());
        let ok = r.classical_limit().as_ref() == Some(&r.rep.classical_r());
        out.push(CheckReport::from_bool("Rdot mod hbar = r", &inst, ok));
        let s = session(a, 4);
        let mismatch = match (s.presentation(), Gr::build(&s.r.rep)) {
            (Ok(p), Ok(gr)) => p.classical_mismatch(&gr),
            (p, gr) => Some(format!("construction failed: {:?} {:?}", p.err(), gr.err())),
        };
        out.push(CheckReport::expect_none("relations linearize to the g_r table", s.instance(), mismatch));
    }
    out
}

fn classical_layer() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (a, dim) in [(SL2, 6), (Algebra::Sl2Sum2, 12), (SL3, 12)] {
        let s = session(a, 2);
        let gr = Gr::build(&s.r.rep).expect("g_r");
        out.push(CheckReport::from_bool(format!("dim g_r = {dim}"), s.instance(), gr.dim() == dim));
        out.extend(suites::classical(&s));
    }
    out
}

fn suite_on(f: fn(&Session) -> Vec<CheckReport>, algebras: &[Algebra], order: usize) -> Vec<CheckReport> {
    algebras.iter().flat_map(|a| f(&session(*a, order))).collect()
}

fn rewriting() -> Vec<CheckReport> {
    [SL2, SL3].iter().flat_map(|a| suites::confluence(&session(*a, 4), 500, 7)).collect()
}

fn presentation_sizes() -> Vec<CheckReport> {
    let p = Presentation::build(&session(SL2, 4).r).expect("presentation");
    vec![CheckReport::from_bool("sl2 has 6 generators", "sl2-vector N=4", p.generators.len() == 6)]
}

fn main() {
    type Criterion = (usize, &'static str, Box<dyn Fn() -> Vec<CheckReport>>);
    let criteria: Vec<Criterion> = vec![
        (1, "QYBE at N=8", Box::new(qybe_all)),
        (2, "semiclassical limits", Box::new(semiclassical)),
        (3, "classical layer", Box::new(classical_layer)),
        (4, "rewriting", Box::new(|| [rewriting(), presentation_sizes()].concat())),
        (5, "Hopf structure", Box::new(|| suite_on(suites::hopf, &[SL2, SL3], 4))),
        (6, "center", Box::new(|| suite_on(suites::center, &[SL2, SL3], 6))),
        (7, "cocommutativity dichotomy", Box::new(|| suite_on(suites::cocomm, &[SL2, SL3, Algebra::Sl2Sum2], 4))),
        (8, "automorphisms", Box::new(|| suite_on(suites::automorphisms, &[SL2, SL3], 4))),
        (9, "FRT evaluation at N=8", Box::new(|| suite_on(suites::rep, &[SL2, SL3], 8))),
    ];
    let mut failed = 0;
    for (k, name, run) in criteria {
        let start = Instant::now();
        let checks = run();
        let bad: Vec<CheckReport> = checks.iter().filter(|c| !c.passed()).cloned().collect();
        let tag = if bad.is_empty() && !checks.is_empty() { "PASS" } else { "FAIL" };
        println!("{tag} criterion {k}: {name} ({} checks, {:.1}s)", checks.len(), start.elapsed().as_secs_f64());
        if tag == "FAIL" {
            failed += 1;
            print!("{}", render_human(&bad));
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
