//! Randomized algebraic laws for the exact arithmetic and the signed
//! permutation group. These complement the exhaustive fixed-scale tests
//! in the modules: here the inputs are drawn structurally at random and
//! every law must hold exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use soqc_core::cyclo::{cyc_sum, CycNum};
use soqc_core::weyl::{all_signed_perms, SignedPerm};

/// A random cyclotomic number: a short signed-rational combination of
/// roots of unity whose conductors divide 24, so that sums and products
/// stay in a single small field.
fn cyc() -> impl Strategy<Value = CycNum> {
    let conductors = prop::sample::select(vec![1u64, 2, 3, 4, 6, 8, 12, 24]);
    let term = (conductors, 0u64..24, -6i64..=6, 1i64..=4).prop_map(|(e, k, num, den)| {
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        CycNum::root_of_unity(e, k % e).scale(&r)
    });
    proptest::collection::vec(term, 1..4).prop_map(|ts| cyc_sum(ts.iter()))
}

fn signed_perm(k: usize) -> impl Strategy<Value = SignedPerm> {
    let all = all_signed_perms(k);
    let n = all.len();
    (0..n).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes(a in cyc(), b in cyc()) {
        prop_assert_eq!(a.add(&b).canonical_string(), b.add(&a).canonical_string());
    }

    #[test]
    fn multiplication_commutes_and_associates(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.mul(&b).canonical_string(), b.mul(&a).canonical_string());
        prop_assert_eq!(
            a.mul(&b).mul(&c).canonical_string(),
            a.mul(&b.mul(&c)).canonical_string()
        );
    }

    #[test]
    fn multiplication_distributes(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(
            a.mul(&b.add(&c)).canonical_string(),
            a.mul(&b).add(&a.mul(&c)).canonical_string()
        );
    }

    #[test]
    fn subtraction_inverts_addition(a in cyc(), b in cyc()) {
        prop_assert_eq!(a.add(&b).sub(&b).canonical_string(), a.canonical_string());
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in cyc(), b in cyc()) {
        prop_assert_eq!(a.conj().conj().canonical_string(), a.canonical_string());
        prop_assert_eq!(
            a.mul(&b).conj().canonical_string(),
            a.conj().mul(&b.conj()).canonical_string()
        );
        prop_assert_eq!(
            a.add(&b).conj().canonical_string(),
            a.conj().add(&b.conj()).canonical_string()
        );
    }

    #[test]
    fn nonzero_numbers_invert(a in cyc()) {
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!(a.mul(&inv).is_one());
        }
    }

    #[test]
    fn canonical_string_is_stable_under_regrouping(a in cyc(), b in cyc(), c in cyc()) {
        let left = a.add(&b).add(&c);
        let right = c.add(&a.add(&b));
        prop_assert_eq!(left.canonical_string(), right.canonical_string());
    }

    #[test]
    fn signed_perms_form_a_group(w in signed_perm(3), x in signed_perm(3), y in signed_perm(3)) {
        let id = SignedPerm::identity(3);
        prop_assert_eq!(w.compose(&x).compose(&y), w.compose(&x.compose(&y)));
        prop_assert_eq!(w.compose(&w.inverse()), id.clone());
        prop_assert_eq!(w.inverse().compose(&w), id);
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        // Acting by a composition equals acting twice.
        let root = vec![1, -1, 0];
        prop_assert_eq!(w.compose(&x).act(&root), w.act(&x.act(&root)));
    }

    #[test]
    fn length_is_symmetric_under_inversion(w in signed_perm(3)) {
        prop_assert_eq!(w.length(), w.inverse().length());
    }
}
