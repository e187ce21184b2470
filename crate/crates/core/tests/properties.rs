use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dihedral::decomp::{is_isomorphic, IsoVerdict};
use dihedral::klein::klein_decompose;
use dihedral::module::{heller, string_module};
use dihedral::suite::random_klein_module;
use dihedral::{BitMatrix, KleinRep, Letter, QParam, Word};

fn q2() -> QParam {
    QParam::new(2).unwrap()
}

/// Valid words at `q = 2` up to length 6, built from a letter choice per slot.
fn word_strategy() -> impl Strategy<Value = Word> {
    (0usize..=6, any::<bool>(), prop::collection::vec(any::<bool>(), 6)).prop_filter_map(
        "invalid word",
        |(n, first_a, dirs)| {
            let letters: Vec<Letter> = (0..n)
                .map(|i| {
                    let a = (i % 2 == 0) == first_a;
                    match (a, dirs[i]) {
                        (true, true) => Letter::A,
                        (true, false) => Letter::A_INV,
                        (false, true) => Letter::B,
                        (false, false) => Letter::B_INV,
                    }
                })
                .collect();
            Word::new(letters).ok().filter(|w| w.is_valid(q2()))
        },
    )
}

fn iso(a: &dihedral::Rep, b: &dihedral::Rep) -> bool {
    is_isomorphic(a, b, 0).unwrap() == IsoVerdict::Isomorphic
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_an_involution(w in word_strategy()) {
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert!(w.canonical().is_canonical());
        prop_assert!(w.same_class(&w.inverse()));
        prop_assert_eq!(w.canonical().canonical(), w.canonical());
    }

    #[test]
    fn string_modules_are_valid(w in word_strategy()) {
        let m = string_module(&w, q2()).unwrap();
        prop_assert_eq!(m.dim(), w.len() + 1);
        prop_assert!(m.check().is_ok());
        prop_assert!(iso(&m, &string_module(&w.inverse(), q2()).unwrap()));
    }

    #[test]
    fn double_dual_is_identity(w in word_strategy()) {
        let m = string_module(&w, q2()).unwrap();
        prop_assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn tensor_dimensions_multiply(v in word_strategy(), w in word_strategy()) {
        let (a, b) = (string_module(&v, q2()).unwrap(), string_module(&w, q2()).unwrap());
        let t = a.tensor(&b).unwrap();
        prop_assert_eq!(t.dim(), a.dim() * b.dim());
        prop_assert!(t.check().is_ok());
    }

    #[test]
    fn heller_shifts_are_inverse(w in word_strategy()) {
        let m = string_module(&w, q2()).unwrap();
        prop_assert!(iso(&heller(&heller(&m, -1), 1), &m));
    }

    #[test]
    fn rank_nullity(rows in 1usize..12, cols in 1usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = BitMatrix::random(rows, cols, &mut rng);
        prop_assert_eq!(a.rank() + a.left_kernel().rows(), rows);
        prop_assert!(a.left_kernel().mul(&a).rank() == 0);
    }

    #[test]
    fn klein_decomposition_respects_duality_and_omega(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_klein_module(&mut rng);
        let d = klein_decompose(&m);
        prop_assert_eq!(d.dim(), m.dim());
        prop_assert_eq!(klein_decompose(&m.dual()), d.negated());
        let om = KleinRep::from_rep(&heller(&m.as_rep(), -1));
        prop_assert_eq!(klein_decompose(&om), d.without_free().shifted(1));
    }
}
