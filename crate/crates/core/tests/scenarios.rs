use std::path::PathBuf;

use deform_core::arith::ratfunc::RationalFunction as Rf;
use deform_core::engine::{compute_image_basis, relation_in_jprime};
use deform_core::expr::{self, parse_relations};
use deform_core::free::{BoundedQuotient, FreePolynomial, Presentation, WeightedGrading};
use deform_core::problem::parse_problem;
use deform_core::scenario::*;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn xy_plus_yx() -> FreePolynomial<Rf> {
    expr::parse("x*y + y*x").unwrap().to_free().unwrap().to_rational_function()
}

#[test]
fn every_valid_tuple_builds() {
    for c in [A8Construction::Literal, A8Construction::Rescaled] {
        let all = valid_a8_params_for(15, c);
        let small: Vec<_> = all.iter().filter(|p| p.i <= 4 && p.j <= 4 && p.k <= 4).collect();
        assert!(!small.is_empty());
        for p in small {
            match build_a8_with(*p, c) {
                Ok(problem) => {
                    let f = problem.build().unwrap();
                    let lhs = f.apply(&xy_plus_yx());
                    let rhs = f.ambient().identity().scale(&Rf::monomial(deform_core::arith::field::int(1), (p.s1 + p.s2) as i64));
                    assert_eq!(lhs, rhs, "{c} {p}");
                }
                Err(ScenarioError::NotSquarefree) => {}
                Err(e) => panic!("{c} {p}: {e}"),
            }
        }
    }
}

#[test]
fn sampled_tuples_have_rank_eight() {
    for (p, c) in [
        ("1,1,1,2,2", A8Construction::Literal),
        ("1,2,3,3,4", A8Construction::Literal),
        ("2,2,2,4,4", A8Construction::Literal),
        ("1,1,1,1,2", A8Construction::Rescaled),
        ("1,2,3,3,3", A8Construction::Rescaled),
    ] {
        let problem = build_a8_with(p.parse().unwrap(), c).unwrap();
        let f = problem.build().unwrap();
        let b = compute_image_basis(&f, Some(8), 20000).unwrap();
        assert_eq!(b.rank(), 8, "{c} {p}");
        let rescaled_holds = a8_groebner_relations().iter().all(|r| relation_in_jprime(&f, &b, r).unwrap());
        assert_eq!(rescaled_holds, c == A8Construction::Rescaled, "{c} {p}");
    }
}

#[test]
fn lexicographically_smallest_tuple() {
    let all = valid_a8_params(5);
    assert!(all.contains(&A8Params::default()));
    let smallest = all.iter().min_by_key(|p| (p.i, p.j, p.k, p.s1, p.s2)).unwrap();
    assert_eq!(smallest.to_string(), "1,1,1,1,3");
    assert!(valid_a8_params_for(5, A8Construction::Rescaled).contains(&A8Params::rescaled_default()));
}

#[test]
fn fixtures_match_builders() {
    assert_eq!(parse_problem(&fixture("a8.json")).unwrap(), build_a8(A8Params::default()).unwrap());
    let rescaled = build_a8_with(A8Params::rescaled_default(), A8Construction::Rescaled).unwrap();
    assert_eq!(parse_problem(&fixture("a8_rescaled.json")).unwrap(), rescaled);
    let toy = parse_problem(&fixture("toy_m2.json")).unwrap();
    assert_eq!(toy, build_m2_toy());
    assert_eq!(toy.method, 2);
    assert_eq!(toy.blocks.len(), 1);
}

#[test]
fn fixtures_round_trip_through_printing() {
    for name in ["a8.json", "a8_rescaled.json", "toy_m2.json"] {
        let p = parse_problem(&fixture(name)).unwrap();
        assert_eq!(parse_problem(&p.to_json()).unwrap(), p, "{name}");
    }
    for name in ["a8_groebner.rels", "a8_original.rels", "toy_m2.rels"] {
        let rels = parse_relations(&fixture(name)).unwrap();
        let printed: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
        assert_eq!(parse_relations(&printed.join("\n")).unwrap(), rels, "{name}");
    }
}

#[test]
fn both_relation_sets_define_the_same_quotient() {
    let g = WeightedGrading::new(1, 10).unwrap();
    let groebner = parse_relations(&fixture("a8_groebner.rels")).unwrap();
    let original = parse_relations(&fixture("a8_original.rels")).unwrap();
    assert_eq!(groebner, a8_groebner_relations());
    assert_eq!(original, a8_original_relations());
    let qg = BoundedQuotient::compute(&Presentation::new(groebner.clone()).unwrap(), g, 40).unwrap();
    let qo = BoundedQuotient::compute(&Presentation::new(original.clone()).unwrap(), g, 40).unwrap();
    assert_eq!(qg.dimension().exact(), Some(8));
    assert_eq!(qo.dimension().exact(), Some(8));
    assert_eq!(qg.standard_words(), qo.standard_words());
    // Each set reduces the other to zero, so the ideals agree.
    for r in &original {
        assert!(qg.normal_form(r).unwrap().is_zero(), "{r}");
    }
    for r in &groebner {
        assert!(qo.normal_form(r).unwrap().is_zero(), "{r}");
    }
    for w in ["y*x", "y^2", "x^2*y*x", "y^3", "x^4*y"] {
        let p = expr::parse(w).unwrap().to_free().unwrap();
        assert_eq!(qg.normal_form(&p).unwrap(), qo.normal_form(&p).unwrap(), "{w}");
    }
}

#[test]
fn literal_yx_plus_yx_is_a_different_ideal() {
    // Taking the first reduced relation as y*x + y*x rather than x*y + y*x.
    let g = WeightedGrading::new(1, 10).unwrap();
    let mut rels = a8_groebner_relations();
    rels[0] = expr::parse("y*x + y*x").unwrap().to_free().unwrap();
    let q = BoundedQuotient::compute(&Presentation::new(rels).unwrap(), g, 40).unwrap();
    assert_ne!(q.dimension().exact(), Some(8));
}
