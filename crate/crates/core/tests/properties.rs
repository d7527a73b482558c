mod common;

use common::*;
use piso::canonical::{assoc, sym};
use piso::coherence::{self, check_free, check_model, gen_code, parse_term, Term, Verdict};
use piso::matrix::{matrix_rep, rebase};
use piso::selfsim::unique_unitary;
use piso::sexpr::{arrow_from, arrow_to_sexpr, parse_one};
use piso::{random, Applied, PrefixArrow, SelfSimilar, Tree};
use proptest::prelude::*;
use rand::Rng;

fn endo(seed: u64) -> PrefixArrow {
    let mut r = rng(seed);
    if r.gen_bool(0.3) {
        random::unitary(&mut r)
    } else {
        random::partial_arrow(&mut r)
    }
}

fn sss(seed: u64) -> SelfSimilar {
    random::self_similar(&mut rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dagger_is_involutive_and_contravariant(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (endo(a), endo(b));
        prop_assert_eq!(f.dagger().dagger(), f.clone());
        prop_assert_eq!(g.compose(&f).unwrap().dagger(), f.dagger().compose(&g.dagger()).unwrap());
        prop_assert_eq!(f.tensor(&g).dagger(), f.dagger().tensor(&g.dagger()));
    }

    #[test]
    fn generalised_inverse(a in any::<u64>()) {
        let f = endo(a);
        let ffd = f.compose(&f.dagger()).unwrap();
        prop_assert_eq!(ffd.compose(&f).unwrap(), f);
    }

    #[test]
    fn zero_absorbs(a in any::<u64>()) {
        let f = endo(a);
        let z = PrefixArrow::zero(Tree::Leaf, Tree::Leaf);
        prop_assert!(f.compose(&z).unwrap().is_zero());
        prop_assert!(z.compose(&f).unwrap().is_zero());
        prop_assert_eq!(f.join(&z).unwrap(), f);
    }

    #[test]
    fn compose_matches_pointwise(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (endo(a), endo(b));
        let gf = g.compose(&f).unwrap();
        let len = f.max_depth() + g.max_depth();
        prop_assert!(agrees_pointwise(&gf, &[&f, &g], len.max(6)).is_ok());
    }

    #[test]
    fn normal_form_is_canonical(a in any::<u64>(), split in 0usize..6) {
        // Splitting one term into its two children denotes the same arrow.
        let f = endo(a);
        prop_assume!(!f.is_zero());
        let i = split % f.terms().len();
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (k, t) in f.terms().iter().enumerate() {
            let (u, v) = (t.target.bits.to_string(), t.source.bits.to_string());
            if k == i {
                pairs.push((format!("{u}0"), format!("{v}0")));
                pairs.push((format!("{u}1"), format!("{v}1")));
            } else {
                pairs.push((u, v));
            }
        }
        let g = PrefixArrow::untyped(pairs.iter().map(|(u, v)| (u.as_str(), v.as_str()))).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn order_is_a_congruence(a in any::<u64>(), b in any::<u64>()) {
        let f = endo(a);
        let h = endo(b);
        let e = h.domain_idempotent();
        let smaller = f.compose(&e).unwrap();
        prop_assert!(smaller.natural_leq(&f).unwrap());
        prop_assert!(h.compose(&smaller).unwrap().natural_leq(&h.compose(&f).unwrap()).unwrap());
        prop_assert!(smaller.dagger().natural_leq(&f.dagger()).unwrap());
    }

    #[test]
    fn internal_tensor_is_functorial(s in any::<u64>(), a in any::<u64>(), b in any::<u64>(),
                                     c in any::<u64>(), d in any::<u64>()) {
        let s = sss(s);
        let (f, g, h, k) = (endo(a), endo(b), endo(c), endo(d));
        let one = PrefixArrow::identity(&Tree::Leaf);
        prop_assert_eq!(s.internalize(&one, &one).unwrap(), one);
        let lhs = s.internalize(&h.compose(&f).unwrap(), &k.compose(&g).unwrap()).unwrap();
        let rhs = s.internalize(&h, &k).unwrap().compose(&s.internalize(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(s.internalize(&f, &g).unwrap().dagger(),
                        s.internalize(&f.dagger(), &g.dagger()).unwrap());
    }

    #[test]
    fn internal_canonicals_are_natural(s in any::<u64>(), a in any::<u64>(), b in any::<u64>(),
                                       c in any::<u64>()) {
        let s = sss(s);
        let (f, g, h) = (endo(a), endo(b), endo(c));
        let t = |x: &PrefixArrow, y: &PrefixArrow| s.internalize(x, y).unwrap();
        let lhs = s.tau().compose(&t(&f, &t(&g, &h))).unwrap();
        let rhs = t(&t(&f, &g), &h).compose(&s.tau()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = s.sigma().compose(&t(&f, &g)).unwrap();
        let rhs = t(&g, &f).compose(&s.sigma()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn internal_pentagon_and_hexagon(s in any::<u64>()) {
        let s = sss(s);
        let one = PrefixArrow::identity(&Tree::Leaf);
        let t = |x: &PrefixArrow, y: &PrefixArrow| s.internalize(x, y).unwrap();
        let c = |g: &PrefixArrow, f: &PrefixArrow| g.compose(f).unwrap();
        let tau = s.tau();
        let sigma = s.sigma();
        prop_assert_eq!(c(&tau, &tau), c(&t(&tau, &one), &c(&tau, &t(&one, &tau))));
        prop_assert_eq!(
            c(&tau, &c(&sigma, &tau)),
            c(&t(&sigma, &one), &c(&tau, &t(&one, &sigma)))
        );
        prop_assert_eq!(c(&sigma, &sigma), one);
    }

    #[test]
    fn unique_unitary_relates_codes(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (sss(a), sss(b));
        let u = unique_unitary(&x, &y);
        prop_assert!(u.is_unitary());
        prop_assert_eq!(SelfSimilar::from_unitary(&u, &x).unwrap(), y);
    }

    #[test]
    fn matrices_respect_dagger(s in any::<u64>(), a in any::<u64>()) {
        let s = sss(s);
        let f = endo(a);
        prop_assert_eq!(matrix_rep(&f.dagger(), &s).unwrap(), matrix_rep(&f, &s).unwrap().dagger());
    }

    #[test]
    fn rebase_agrees(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        prop_assert!(rebase(&endo(a), &sss(b), &sss(c)).unwrap().agree());
    }

    #[test]
    fn gen_code_is_unitary(s in any::<u64>(), t in any::<u64>(), n in 1usize..=6) {
        let s = sss(s);
        let x = random::tree(&mut rng(t), n);
        let c = gen_code(&x, &s);
        prop_assert!(c.is_unitary());
        prop_assert_eq!(c.dom(), &x);
    }

    #[test]
    fn apply_is_consistent_with_dagger(a in any::<u64>(), p in any::<u64>()) {
        let f = endo(a);
        let x = random::point(&mut rng(p), &Tree::Leaf, 8);
        if let Applied::Value(y) = f.apply(&x) {
            prop_assert_eq!(f.dagger().apply(&y), Applied::Value(x));
        }
    }

    #[test]
    fn arrow_text_round_trips(a in any::<u64>(), b in any::<u64>()) {
        let f = endo(a).tensor(&endo(b));
        let printed = arrow_to_sexpr(&f);
        prop_assert_eq!(arrow_from(&parse_one(&printed).unwrap()).unwrap(), f);
    }

    #[test]
    fn term_text_round_trips(t in any::<u64>(), n in 1usize..=5, steps in 0usize..5) {
        let mut r = rng(t);
        let x = random::tree(&mut r, n);
        let (term, _) = random::canonical_term(&mut r, &x, steps);
        prop_assert_eq!(parse_term(&term.to_sexpr()).unwrap(), term);
    }

    #[test]
    fn canonical_terms_are_unitary(t in any::<u64>(), n in 1usize..=5, steps in 0usize..5) {
        let mut r = rng(t);
        let x = random::tree(&mut r, n);
        let (f, y) = random::canonical_term(&mut r, &x, steps);
        let back = coherence::inst(&Term::dagger(f.clone())).unwrap();
        let there = coherence::inst(&f).unwrap();
        prop_assert_eq!(back.compose(&there).unwrap(), PrefixArrow::identity(&x));
        prop_assert_eq!(there.cod(), &y);
    }

    #[test]
    fn free_and_model_agree(t in any::<u64>(), s in any::<u64>()) {
        let d = random::canonical_diagram(&mut rng(t), 5);
        let s = sss(s);
        let free = check_free(&d).unwrap().verdict();
        prop_assert_ne!(free, Verdict::Undecided);
        prop_assert_eq!(free, check_model(&d, &s).unwrap().verdict());
    }

    #[test]
    fn diagram_json_round_trips(t in any::<u64>()) {
        let d = random::canonical_diagram(&mut rng(t), 4);
        let json = d.to_json().to_string();
        prop_assert_eq!(piso::coherence::Diagram::from_json(&json).unwrap(), d);
    }
}

#[test]
fn canonical_arrows_at_s() {
    let s = Tree::Leaf;
    assert_eq!(
        assoc(&s, &s, &s)
            .dagger()
            .compose(&assoc(&s, &s, &s))
            .unwrap(),
        PrefixArrow::identity(&tree("(S (S S))"))
    );
    assert_eq!(
        sym(&s, &s).compose(&sym(&s, &s)).unwrap(),
        PrefixArrow::identity(&Tree::pair())
    );
}
