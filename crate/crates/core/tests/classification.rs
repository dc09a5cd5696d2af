mod common;

use common::{random_invertible, random_ppoly};
use expmat::classify::{classify, equiv_bir, recognize_family, BirClass, Family, FamilyForm};
use expmat::exec::Strategy;
use expmat::expmat::{exp_nilpotent, ExpMatrix, NilMatrix};
use expmat::oracle::{brute_conjugate_to_family, brute_linear_equiv, enumerate_family, EnumSpec};
use expmat::Field;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_family_matrix(rng: &mut ChaCha8Rng, f: &Field) -> ExpMatrix {
    let mut families = vec![Family::A12, Family::A21, Family::A11];
    if f.characteristic() != 2 {
        families.push(Family::J3);
    }
    let family = *families.choose(rng).unwrap();
    let params = (0..family.arity()).map(|k| random_ppoly(rng, f, 2, family == Family::J3 && k == 0)).collect();
    ExpMatrix::new(FamilyForm::new(family, params).unwrap().matrix()).unwrap()
}

fn fields() -> Vec<Field> {
    vec![Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::gf(2, 2).unwrap(), Field::prime(5).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn class_is_invariant_under_conjugation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = fields().choose(&mut rng).unwrap().clone();
        let a = random_family_matrix(&mut rng, &f);
        let p = random_invertible(&mut rng, &f, 3);
        let b = a.conjugate(&p).unwrap();
        let ca = classify(&a, true).unwrap();
        let cb = classify(&b, true).unwrap();
        prop_assert_eq!(&ca.class, &cb.class);
        prop_assert_eq!(&ca.canonical, &cb.canonical);
        prop_assert_eq!(&cb.canonical, &ca.class.canonical_matrix(&f, 3).unwrap());
        prop_assert!(cb.witness.verify().is_ok());
        prop_assert_eq!(&cb.witness.source, b.matrix());
        prop_assert!(cb.witness.reverse().verify().is_ok());
    }

    #[test]
    fn recognition_produces_a_true_conjugate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = fields().choose(&mut rng).unwrap().clone();
        let a = random_family_matrix(&mut rng, &f);
        let b = a.conjugate(&random_invertible(&mut rng, &f, 3)).unwrap();
        let r = recognize_family(&b).unwrap();
        let p = r.conjugator.unwrap_or_else(|| expmat::linalg::Matrix::identity(&f, 3));
        prop_assert_eq!(&b.matrix().conjugate(&p).unwrap(), &r.form.matrix());
    }

    #[test]
    fn equivalence_is_symmetric_and_witnessed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Field::prime(3).unwrap();
        let a = random_family_matrix(&mut rng, &f);
        let b = if rng.gen_bool(0.5) { a.conjugate(&random_invertible(&mut rng, &f, 3)).unwrap() } else { random_family_matrix(&mut rng, &f) };
        let ab = equiv_bir(&a, &b, true).unwrap();
        let ba = equiv_bir(&b, &a, true).unwrap();
        prop_assert_eq!(ab.equivalent, ba.equivalent);
        if let Some(w) = &ab.witness {
            prop_assert_eq!(&w.source, a.matrix());
            prop_assert_eq!(&w.target, b.matrix());
            prop_assert!(w.verify().is_ok());
        }
    }
}

#[test]
fn linear_equivalence_implies_birational_equivalence() {
    let f = Field::prime(2).unwrap();
    let mats = enumerate_family(&EnumSpec::new(&f, 3, None, 1)).unwrap();
    let mut linked = 0;
    for a in &mats {
        for b in &mats {
            if let Some(p) = brute_linear_equiv(a.matrix(), b.matrix(), Strategy::default()).unwrap() {
                assert_eq!(&a.matrix().conjugate(&p).unwrap(), b.matrix());
                assert!(equiv_bir(a, b, false).unwrap().equivalent);
                linked += 1;
            }
        }
    }
    assert!(linked > mats.len());
}

#[test]
fn brute_and_exact_recognition_agree_on_shape_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = Field::prime(2).unwrap();
    for _ in 0..30 {
        let a = random_family_matrix(&mut rng, &f);
        let b = a.conjugate(&random_invertible(&mut rng, &f, 3)).unwrap();
        let (p, form) = brute_conjugate_to_family(&b, Strategy::default()).unwrap();
        assert_eq!(b.matrix().conjugate(&p).unwrap(), form.matrix());
        assert!(recognize_family(&b).is_ok());
    }
}

#[test]
fn sequential_and_parallel_searches_agree() {
    let f = Field::prime(3).unwrap();
    let mats = enumerate_family(&EnumSpec::new(&f, 2, None, 1)).unwrap();
    for a in &mats {
        for b in &mats {
            let seq = brute_linear_equiv(a.matrix(), b.matrix(), Strategy::Sequential).unwrap();
            let par = brute_linear_equiv(a.matrix(), b.matrix(), Strategy::Parallel).unwrap();
            assert_eq!(seq, par);
        }
    }
    let batch: Vec<_> = mats.to_vec();
    let seq = expmat::classify::classify_batch(&batch, true, Strategy::Sequential);
    let par = expmat::classify::classify_batch(&batch, true, Strategy::Parallel);
    assert_eq!(seq, par);
}

#[test]
fn only_identity_classifies_as_identity() {
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4 {
        let parts = {
            let mut p = common::random_partition(&mut rng, n);
            if p[0] == 1 {
                p = vec![2];
                p.extend(std::iter::repeat_n(1, n - 2));
            }
            p
        };
        let nil = common::nilpotent_with(&mut rng, &q, &parts);
        let a = exp_nilpotent(&NilMatrix::new(nil).unwrap()).unwrap();
        assert_eq!(classify(&a, true).unwrap().class, BirClass::Char0Standard);
        assert_eq!(classify(&ExpMatrix::identity(&q, n), true).unwrap().class, BirClass::Identity);
    }
    for f in fields() {
        for n in [2, 3] {
            for a in enumerate_family(&EnumSpec::new(&f, n, None, 1)).unwrap() {
                let c = classify(&a, false).unwrap();
                assert_eq!(c.class == BirClass::Identity, a.is_identity());
            }
        }
    }
}

#[test]
fn larger_sizes_in_positive_characteristic_are_unsupported() {
    let f = Field::prime(2).unwrap();
    let a = ExpMatrix::identity(&f, 4);
    assert!(matches!(classify(&a, true), Err(expmat::Error::Unsupported(_))));
}
