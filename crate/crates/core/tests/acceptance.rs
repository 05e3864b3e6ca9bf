//! Acceptance checks, one line per criterion. Everything is exact; the only numeric
//! limits are the runtime budgets below.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use deform_core::analysis::{structure_report, trace_form, Shape, StructureReport};
use deform_core::arith::field::{int, Rational};
use deform_core::arith::poly::Poly;
use deform_core::arith::ratfunc::RationalFunction as Rf;
use deform_core::engine::*;
use deform_core::expr::parse_relations;
use deform_core::free::{FreePolynomial, Letter, Word};
use deform_core::pipeline::Pipeline;
use deform_core::problem::parse_problem;
use deform_core::scenario::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const A8_RUNTIME_LIMIT: Duration = Duration::from_secs(60);
const PROPERTY_RUNTIME_LIMIT: Duration = Duration::from_secs(300);
const MAX_HALVINGS: u32 = 20;

/// Criteria that cannot pass as stated; the line still prints FAIL.
const EXPECTED_FAILURES: &[(&str, &str)] = &[(
    "1",
    "with f(x) = t^s1 E12 + t^i h(u) the fiber satisfies x^2 = 0, so y^2 + x^3 + x^2 is not in J'; \
     the rescaled construction (criterion 1r) is the one whose fiber is A8",
)];

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)).unwrap()
}

fn literal() -> Pipeline {
    Pipeline::new("a8", &build_a8(A8Params::default()).unwrap(), None).unwrap()
}

fn rescaled() -> Pipeline {
    let p = build_a8_with(A8Params::rescaled_default(), A8Construction::Rescaled).unwrap();
    Pipeline::new("a8 rescaled", &p, None).unwrap()
}

fn toy() -> Pipeline {
    Pipeline::new("toy", &build_m2_toy(), None).unwrap()
}

fn fiber_identification(p: &Pipeline, build_time: Duration) -> (bool, String) {
    let start = Instant::now();
    let pres = p.presentation(&a8_groebner_relations(), p.grading(), 40).unwrap();
    let elapsed = build_time + start.elapsed();
    let pass = p.basis.rank() == 8
        && pres.in_jprime.iter().all(|&b| b)
        && pres.verdict == Verdict::Isomorphic { dim: 8 }
        && p.options.weights == [1, 10]
        && elapsed <= A8_RUNTIME_LIMIT;
    let detail = format!(
        "rank {}, relations in J' {:?}, verdict {}, {:.2?}",
        p.basis.rank(),
        pres.in_jprime,
        deform_core::report::verdict_text(&pres.verdict),
        elapsed
    );
    (pass, detail)
}

fn expected_shape() -> StructureReport {
    StructureReport { dim: 8, radical_dim: 0, center_dim: 5, semisimple: true, shape: Shape::Unique(vec![2, 1, 1, 1, 1]) }
}

fn specialization_shape(p: &Pipeline) -> (bool, String) {
    match p.flatness(Some(MAX_HALVINGS)) {
        Ok(c) => {
            let r = structure_report(&specialize_family(&p.table, &c.s_max).unwrap()).unwrap();
            (c.halvings <= MAX_HALVINGS && r == expected_shape(), format!("s_max = 2^-{}: {r}", c.halvings))
        }
        Err(e) => (false, e.to_string()),
    }
}

fn polynomial_type(p: &Pipeline) -> bool {
    let pt = to_polynomial_type(&p.table);
    let n = p.table.n();
    let h0 = pt.h.coeff(0);
    h0.is_one()
        && (0..n).all(|i| {
            (0..n).all(|k| {
                (0..n).all(|m| {
                    // sigma / h reproduces c, and sigma(0) = zeta.
                    let back = Rf::new(pt.sigma(i, k, m).clone(), pt.h.clone()).unwrap();
                    &back == p.table.c(i, k, m) && pt.sigma(i, k, m).coeff(0) == p.table.zeta(i, k, m)
                })
            })
        })
}

fn flat_interval(p: &Pipeline) -> (bool, String) {
    let c = match p.flatness(Some(MAX_HALVINGS)) {
        Ok(c) => c,
        Err(e) => return (false, e.to_string()),
    };
    let mut reports = Vec::new();
    let mut s = c.s_max.clone();
    for _ in 0..3 {
        reports.push(structure_report(&specialize_family(&p.table, &s).unwrap()).unwrap());
        s /= int(2);
    }
    let same = reports.windows(2).all(|w| w[0] == w[1]);
    let pass = c.root_counts == [0, 0] && same && c.generation_dim == p.table.n();
    (pass, format!("roots in (0, {}]: {:?}, reports identical: {same}", c.s_max, c.root_counts))
}

/// Coordinates of a 2 x 2 matrix in (I, E11, E12 + t E21, t E21).
fn toy_coordinates(m: &[[Rf; 2]; 2]) -> Vec<Rf> {
    let a = m[1][1].clone();
    let b = m[0][0].clone() - a.clone();
    let c = m[0][1].clone();
    let d = m[1][0].clone() * Rf::monomial(int(1), -1) - c.clone();
    vec![a, b, c, d]
}

fn mat_mul(x: &[[Rf; 2]; 2], y: &[[Rf; 2]; 2]) -> [[Rf; 2]; 2] {
    let e = |i: usize, j: usize| x[i][0].clone() * y[0][j].clone() + x[i][1].clone() * y[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn toy_oracle(p: &Pipeline) -> (bool, String) {
    let (o, l, t) = (Rf::zero(), Rf::one(), Rf::t());
    let basis = [
        [[l.clone(), o.clone()], [o.clone(), l.clone()]],
        [[l.clone(), o.clone()], [o.clone(), o.clone()]],
        [[o.clone(), l.clone()], [t.clone(), o.clone()]],
        [[o.clone(), o.clone()], [t.clone(), o.clone()]],
    ];
    let mut mismatches = 0;
    for k in 0..4 {
        for m in 0..4 {
            if toy_coordinates(&mat_mul(&basis[k], &basis[m])) != p.table.product(k, m) {
                mismatches += 1;
            }
        }
    }
    let hand = [
        (2, 2, vec![t.clone(), o.clone(), o.clone(), o.clone()]),
        (1, 2, vec![o.clone(), o.clone(), l.clone(), -l.clone()]),
        (2, 1, vec![o.clone(), o.clone(), o.clone(), l.clone()]),
        (3, 3, vec![o.clone(), o.clone(), o.clone(), o.clone()]),
    ];
    let hand_ok = hand.iter().all(|(k, m, v)| p.table.product(*k, *m) == &v[..]);
    let fiber = structure_report(&p.fiber()).unwrap();
    let at_one = structure_report(&specialize_family(&p.table, &int(1)).unwrap()).unwrap();
    let pass = mismatches == 0 && hand_ok && fiber.radical_dim == 2 && at_one.shape == Shape::Unique(vec![2]);
    (pass, format!("{mismatches} mismatching products, fiber radical {}, shape at 1 {}", fiber.radical_dim, at_one.shape))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y)], 0..=max).prop_map(Word::new)
}

fn property_suites(pipelines: &[&Pipeline]) -> (bool, String) {
    let mut failed: Vec<&str> = Vec::new();
    let mut check = |name: &'static str, ok: bool| {
        if !ok {
            failed.push(name);
        }
    };
    for p in pipelines {
        check("determinant", !p.basis.determinant().is_zero());
        check("pivot monotonicity", p.basis.orders().windows(2).all(|w| w[0] <= w[1]));
        let len = 2 * p.basis.max_word_len().max(1);
        let mut frontier = vec![Word::one()];
        let mut closed = true;
        for _ in 0..len {
            frontier = frontier.iter().flat_map(|w| Letter::ALL.map(|l| w.append(l))).collect();
            closed &= frontier.iter().all(|w| {
                let img = p.f.ambient().flatten(&p.f.apply_word(w));
                p.basis.express_in_basis(&img).map(|e| e.pole_free).unwrap_or(false)
            });
        }
        check("closure at doubled word length", closed);
        let fiber = p.fiber();
        let fam = specialize_family(&p.table, &int(1)).unwrap();
        check("trace form symmetry", [fiber, fam].iter().all(|a| trace_form(a).transpose() == trace_form(a)));
    }
    let f = &pipelines[0].f;
    let hom = runner(100).run(&(word(6), word(6)), |(u, v)| {
        prop_assert_eq!(f.apply_word(&u.concat(&v)), f.mul(&f.apply_word(&u), &f.apply_word(&v)));
        Ok(())
    });
    check("homomorphism law", hom.is_ok());
    let order = runner(1000).run(&(word(6), word(6)), |(a, b)| {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a == b, a.cmp(&b).is_eq());
        if a.len() != b.len() {
            prop_assert_eq!(a < b, a.len() < b.len());
        }
        Ok(())
    });
    check("shortlex order axioms", order.is_ok());
    let problems_round_trip = ["a8.json", "a8_rescaled.json", "toy_m2.json"].iter().all(|n| {
        let p = parse_problem(&fixture(n)).unwrap();
        parse_problem(&p.to_json()).unwrap() == p
    });
    let relations_round_trip = ["a8_groebner.rels", "a8_original.rels", "toy_m2.rels"].iter().all(|n| {
        let r: Vec<FreePolynomial<Rational>> = parse_relations(&fixture(n)).unwrap();
        let printed: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        parse_relations(&printed.join("\n")).unwrap() == r
    });
    check("fixture round trip", problems_round_trip && relations_round_trip);
    if failed.is_empty() {
        (true, "all suites hold".into())
    } else {
        (false, format!("failing: {}", failed.join(", ")))
    }
}

fn squarefree(p: &Pipeline) -> (bool, String) {
    let g = p.f.ambient().blocks()[0].min_poly();
    let over_qt = g.is_squarefree();
    let s = p.flatness(Some(MAX_HALVINGS)).map(|c| c.s_max).unwrap_or_else(|_| int(1));
    let at = p.f.ambient().blocks()[0].min_poly_at(&s).unwrap();
    // Independent oracle: Euclid over Q on g and g'.
    let gcd_at = at.gcd(&at.derivative());
    let pass = over_qt && gcd_at == Poly::one();
    (pass, format!("over Q(t): {over_qt}; gcd(g, g') at t = {s}: {}", if gcd_at.is_one() { "1" } else { "nontrivial" }))
}

fn main() -> ExitCode {
    let suite_start = Instant::now();
    let start = Instant::now();
    let a8 = literal();
    let a8_time = start.elapsed();
    let start = Instant::now();
    let a8r = rescaled();
    let a8r_time = start.elapsed();
    let toy = toy();

    let mut lines = Vec::new();
    let (pass, detail) = fiber_identification(&a8, a8_time);
    lines.push(Line { id: "1", pass, detail });
    let (pass, detail) = fiber_identification(&a8r, a8r_time);
    lines.push(Line { id: "1r", pass, detail });
    for (id, p) in [("2", &a8), ("2r", &a8r)] {
        let (pass, detail) = specialization_shape(p);
        lines.push(Line { id, pass, detail });
    }
    let assoc = [&a8, &a8r, &toy].map(|p| check_associativity_formal(&p.table));
    lines.push(Line { id: "3", pass: assoc.iter().all(|&b| b), detail: format!("A8, rescaled A8, toy: {assoc:?}") });
    let pt = [&a8, &a8r, &toy].map(polynomial_type);
    lines.push(Line { id: "4", pass: pt.iter().all(|&b| b), detail: format!("A8, rescaled A8, toy: {pt:?}") });
    for (id, p) in [("5", &a8), ("5r", &a8r)] {
        let (pass, detail) = flat_interval(p);
        lines.push(Line { id, pass, detail });
    }
    let (pass, detail) = toy_oracle(&toy);
    lines.push(Line { id: "6", pass, detail });
    let start = Instant::now();
    let (pass, detail) = property_suites(&[&a8, &a8r, &toy]);
    let prop_time = start.elapsed();
    lines.push(Line { id: "7", pass: pass && prop_time <= PROPERTY_RUNTIME_LIMIT, detail: format!("{detail} ({prop_time:.2?})") });
    let (pass, detail) = squarefree(&a8);
    lines.push(Line { id: "8", pass, detail });

    let mut unexpected = 0;
    for l in &lines {
        let known = EXPECTED_FAILURES.iter().find(|(id, _)| *id == l.id);
        println!("{} criterion {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.detail);
        match (l.pass, known) {
            (false, Some((_, why))) => println!("     expected: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("     criterion {} was expected to fail and now passes", l.id);
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("{passed}/{} lines pass, {unexpected} unexpected ({:.2?})", lines.len(), suite_start.elapsed());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
