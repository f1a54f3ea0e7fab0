use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weilrep::cyclo::CycloNum;
use weilrep::field::{Field, FqElem};
use weilrep::oscillator::{word_consistency_check, Context, GeneratorWord, PsiVector, SympGenerator, WordComparison};

fn cyclo(p: u32, coeffs: &[i64]) -> CycloNum {
    let mut acc = CycloNum::zero(p);
    for (k, &c) in coeffs.iter().enumerate() {
        acc = acc.add_ref(&CycloNum::zeta_pow(p, k as u32).scale_int(c));
    }
    acc
}

proptest! {
    #[test]
    fn field_axioms(q in prop::sample::select(vec![3u32, 5, 7, 9, 25, 27]), a: u32, b: u32, c: u32) {
        let k = Field::from_order(q).unwrap();
        let (a, b, c) = (FqElem(a % q), FqElem(b % q), FqElem(c % q));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), FqElem::ONE);
        }
    }

    #[test]
    fn cyclotomic_ring_laws(
        p in prop::sample::select(vec![3u32, 5, 7]),
        x in prop::collection::vec(-5i64..5, 7),
        y in prop::collection::vec(-5i64..5, 7),
    ) {
        let (x, y) = (cyclo(p, &x), cyclo(p, &y));
        prop_assert_eq!(x.mul_ref(&y), y.mul_ref(&x));
        prop_assert_eq!(x.add_ref(&y).sub_ref(&y), x.clone());
        if !x.is_zero() {
            prop_assert!(x.mul_ref(&x.invert().unwrap()).is_one());
        }
        prop_assert_eq!(x.mul_ref(&y).conj(), x.conj().mul_ref(&y.conj()));
    }

    #[test]
    fn padded_words_give_equal_operators(q in prop::sample::select(vec![3u32, 5]), seed: u64, len in 1usize..5) {
        let k = Field::prime(q).unwrap();
        let ctx = Context::symplectic(&k, 1, FqElem::ONE).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = GeneratorWord::random(&k, 1, len, &mut rng);
        let g = SympGenerator::random(&k, 1, &mut rng);
        let padded = w.clone().then(&GeneratorWord::single(g.clone())).then(&g.inverse(&k));
        prop_assert!(matches!(word_consistency_check(&ctx, &w, &padded).unwrap(), WordComparison::Equal));
    }

    #[test]
    fn words_act_unitarily(seed: u64, i in 0usize..9, j in 0usize..9) {
        let k = Field::prime(3).unwrap();
        let ctx = Context::symplectic(&k, 2, FqElem::ONE).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = GeneratorWord::random(&k, 2, 3, &mut rng);
        let a = PsiVector::delta_index(&ctx, i).apply_word(&w).unwrap();
        let b = PsiVector::delta_index(&ctx, j).apply_word(&w).unwrap();
        let expected = CycloNum::from_int(3, (i == j) as i64);
        prop_assert_eq!(a.inner(&b).unwrap(), expected);
    }
}
