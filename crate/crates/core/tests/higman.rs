use std::collections::HashMap;

use loopforge::higman::{higman_witness, witness_term, WitnessEvaluator};
use loopforge::term::eval_term;
use loopforge::{catalog, HigmanLoop, Integers, Loop, Op, Term};
use num_bigint::BigInt;
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::gen("x")), Just(Term::gen("y"))];
    leaf.prop_recursive(5, 32, 2, |inner| {
        (prop_oneof![Just(Op::Mul), Just(Op::LDiv), Just(Op::RDiv)], inner.clone(), inner)
            .prop_map(|(op, l, r)| Term::node(op, l, r))
    })
}

proptest! {
    #[test]
    fn delta_is_structural(s in term(), t in term()) {
        let h = HigmanLoop::new(Integers);
        let p = HashMap::from([("x".to_owned(), BigInt::from(2)), ("y".to_owned(), BigInt::from(-1))]);
        let (ds, dt) = (h.delta_eval(&s, &p).unwrap(), h.delta_eval(&t, &p).unwrap());
        prop_assert_eq!(h.delta_eval(&Term::mul(s.clone(), t.clone()), &p).unwrap(), h.mul(&ds, &dt));
        prop_assert_eq!(h.delta_eval(&Term::ldiv(s.clone(), t.clone()), &p).unwrap(), h.ldiv(&ds, &dt));
        prop_assert_eq!(h.delta_eval(&Term::rdiv(s, t), &p).unwrap(), h.rdiv(&ds, &dt));
    }

    #[test]
    fn loop_coordinate_is_the_ambient_value(t in term()) {
        let q8 = catalog("Q8").unwrap();
        let i = q8.element_by_name("i").unwrap();
        let j = q8.element_by_name("j").unwrap();
        let p = HashMap::from([("x".to_owned(), i), ("y".to_owned(), j)]);
        let h = HigmanLoop::new(q8.clone());
        prop_assert_eq!(h.delta_eval(&t, &p).unwrap().l, eval_term(&t, &p, &q8).unwrap());
    }
}

#[test]
fn witnesses_are_nonzero_with_a_unit_leading_coefficient() {
    for m in 1..=6 {
        for n in 0..=6 {
            let r = higman_witness(m, n).unwrap();
            assert!(r.nonzero);
            assert_eq!(r.loop_part, BigInt::from(0));
            assert_eq!(r.g_coeff, BigInt::from(0));
            assert_eq!(r.leading_coeff, BigInt::from(1));
            assert!(r.shifted_form_holds, "m={m} n={n}");
        }
    }
}

#[test]
fn recursion_matches_term_evaluation() {
    let h = HigmanLoop::new(Integers);
    let p = HashMap::from([("y".to_owned(), BigInt::from(1))]);
    let mut w = WitnessEvaluator::new();
    for m in 1..=3 {
        for n in 0..=4 {
            assert_eq!(w.value(m as u64, n as u64), h.delta_eval(&witness_term(m, n), &p).unwrap());
        }
    }
}

#[test]
fn degree_one_elements_have_trivial_associators_in_z() {
    // in (Z, B) the image of an associator of generators lies in B
    let h = HigmanLoop::new(Integers);
    let p = HashMap::from([("x".to_owned(), BigInt::from(3)), ("y".to_owned(), BigInt::from(5))]);
    let t = Term::associator(&Term::gen("x"), &Term::gen("y"), &Term::gen("x"));
    assert_eq!(h.delta_eval(&t, &p).unwrap().l, BigInt::from(0));
}
