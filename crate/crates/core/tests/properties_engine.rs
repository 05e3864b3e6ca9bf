use std::sync::OnceLock;

use deform_core::arith::field::{int, rat, Rational};
use deform_core::arith::ratfunc::RationalFunction as Rf;
use deform_core::engine::*;
use deform_core::free::{FreePolynomial, Letter, Word};
use deform_core::problem::{AlgebraDoc, BlockDoc, LiteralDoc, Options, ProblemDoc, ProblemFile};
use deform_core::scenario::{build_a8, build_a8_with, build_m2_toy, A8Construction, A8Params};
use num_traits::Zero;
use proptest::prelude::*;

struct Case {
    f: HomomorphismSpec,
    basis: ImageBasis,
    table: DeformationTable,
}

fn case(p: ProblemFile) -> Case {
    let f = p.build().unwrap();
    let basis = compute_image_basis(&f, p.options.expected_dim, p.options.word_budget).unwrap();
    let table = structure_constants(&f, &basis).unwrap();
    Case { f, basis, table }
}

fn cases() -> &'static [Case] {
    static C: OnceLock<Vec<Case>> = OnceLock::new();
    C.get_or_init(|| {
        vec![
            case(build_m2_toy()),
            case(build_a8(A8Params::default()).unwrap()),
            case(build_a8_with(A8Params::rescaled_default(), A8Construction::Rescaled).unwrap()),
        ]
    })
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y)], 0..=max).prop_map(Word::new)
}

fn relation() -> impl Strategy<Value = FreePolynomial<Rational>> {
    prop::collection::vec((word(5), -3i64..=3), 1..5)
        .prop_map(|ts| FreePolynomial::from_terms(ts.into_iter().map(|(w, c)| (w, int(c)))))
}

fn idx() -> impl Strategy<Value = usize> {
    0..cases().len()
}

fn expand(c: &Case, coeffs: &[Rf]) -> Vec<Rf> {
    let n = c.f.ambient().n();
    let mut out = vec![Rf::zero(); n];
    for (lam, e) in coeffs.iter().zip(c.basis.entries()) {
        for (o, x) in out.iter_mut().zip(&e.image) {
            *o = o.clone() + lam.clone() * x.clone();
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn images_multiply(i in idx(), u in word(6), v in word(6)) {
        let c = &cases()[i];
        let lhs = c.f.apply_word(&u.concat(&v));
        let rhs = c.f.mul(&c.f.apply_word(&u), &c.f.apply_word(&v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn j_prime_agrees_with_fiber_evaluation(i in idx(), r in relation()) {
        let c = &cases()[i];
        let fiber = special_fiber(&c.table);
        let x = FreePolynomial::letter(Letter::X);
        let y = FreePolynomial::letter(Letter::Y);
        let gx = fiber_coordinates(&c.f, &c.basis, &x).unwrap();
        let gy = fiber_coordinates(&c.f, &c.basis, &y).unwrap();
        let value = evaluate_in_fiber(&fiber, &gx, &gy, &r);
        prop_assert_eq!(relation_in_jprime(&c.f, &c.basis, &r).unwrap(), value.iter().all(Zero::is_zero));
        prop_assert_eq!(fiber_coordinates(&c.f, &c.basis, &r).unwrap(), value);
    }
}

#[test]
fn basis_is_reduced_and_sorted() {
    for c in cases() {
        assert!(!c.basis.determinant().is_zero());
        let orders = c.basis.orders();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]), "{orders:?}");
        assert_eq!(orders[0], 0);
        assert_eq!(c.basis.q()[0], &FreePolynomial::one());
        assert!(closure_certificate(&c.f, &c.basis));
    }
}

#[test]
fn closure_holds_to_twice_the_word_length() {
    for c in cases() {
        let len = 2 * c.basis.max_word_len().max(1);
        let mut frontier = vec![Word::one()];
        for _ in 0..len {
            frontier = frontier.iter().flat_map(|w| Letter::ALL.map(|l| w.append(l))).collect();
            for w in &frontier {
                let img = c.f.ambient().flatten(&c.f.apply_word(w));
                let e = c.basis.express_in_basis(&img).unwrap();
                assert!(e.pole_free, "f({w}) leaves the image module");
            }
        }
    }
}

#[test]
fn structure_constants_reproduce_products() {
    for c in cases() {
        let n = c.table.n();
        for k in 0..n {
            for m in 0..n {
                let prod = c.f.mul(&c.basis.entries()[k].element, &c.basis.entries()[m].element);
                assert_eq!(expand(c, c.table.product(k, m)), c.f.ambient().flatten(&prod), "e_{k} e_{m}");
                for i in 0..n {
                    let z = Rf::constant(c.table.zeta(i, k, m));
                    assert_eq!(z + Rf::t() * c.table.xi(i, k, m), c.table.c(i, k, m).clone());
                }
            }
        }
        assert!(check_associativity_formal(&c.table));
        let family_at_zero = specialize_family(&c.table, &int(0)).unwrap();
        assert_eq!(family_at_zero, special_fiber(&c.table));
    }
}

#[test]
fn literal_a8_fiber_kills_x_squared() {
    // With the t^i factor f(x^2) already lies in t M.
    let c = &cases()[1];
    let r = |s: &str| deform_core::expr::parse(s).unwrap().to_free().unwrap();
    assert!(relation_in_jprime(&c.f, &c.basis, &r("x^2")).unwrap());
    assert!(!relation_in_jprime(&c.f, &c.basis, &r("y^2 + x^3 + x^2")).unwrap());
    assert!(!relation_in_jprime(&c.f, &c.basis, &r("y^4")).unwrap());
    let c = &cases()[2];
    assert!(!relation_in_jprime(&c.f, &c.basis, &r("x^2")).unwrap());
    assert!(relation_in_jprime(&c.f, &c.basis, &r("y^2 + x^3 + x^2")).unwrap());
}

fn entry() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["0", "0", "1", "-1", "2", "t", "-t", "t + 1", "1/2*t", "t^2", "1 - t"]).prop_map(str::to_string)
}

fn matrix() -> impl Strategy<Value = LiteralDoc> {
    prop::collection::vec(prop::collection::vec(entry(), 2), 2).prop_map(LiteralDoc::Matrix)
}

fn random_method2() -> impl Strategy<Value = ProblemFile> {
    (matrix(), matrix()).prop_map(|(fx, fy)| {
        let doc = ProblemDoc {
            method: 2,
            blocks: vec![BlockDoc { algebra: AlgebraDoc::Matrix(2), min_poly: "u - 1".into() }],
            f_x: vec![fx],
            f_y: vec![fy],
            options: Options { word_budget: 2000, ..Options::default() },
        };
        ProblemFile::from_doc(&doc).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_matrix_pairs_give_associative_families(p in random_method2(), s in prop::sample::select(vec![rat(1, 1), rat(1, 3)])) {
        let f = p.build().unwrap();
        let basis = compute_image_basis(&f, None, 2000).unwrap();
        prop_assert!(basis.rank() >= 1 && basis.rank() <= 4);
        prop_assert!(!basis.determinant().is_zero());
        prop_assert!(closure_certificate(&f, &basis));
        let table = structure_constants(&f, &basis).unwrap();
        prop_assert!(check_associativity_formal(&table));
        let fiber = special_fiber(&table);
        prop_assert!(fiber.associativity_witness().is_none());
        prop_assert!(fiber.is_identity_two_sided());
        // Where the generated algebra has full rank, the family matches it.
        if generation_dimension_at(&f, &s).unwrap() == basis.rank() {
            let fam = specialize_family(&table, &s).unwrap();
            prop_assert!(fam.associativity_witness().is_none());
        }
    }
}
