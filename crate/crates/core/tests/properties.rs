use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nbase::compose::{compose, decompose_head, normalize, GammaSequence, Strategy};
use nbase::morphisms::{apply_one, complete_square, enumerate_two, OneMor2};
use nbase::ordinal::{self, add, cmp};
use nbase::random::{random_config, random_element, random_tree, split, Budget};
use nbase::{perm, PlainElement};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn shuffled(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let all = perm::all(n);
    all[r.gen_range(0..all.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_and_json_round_trip(seed in any::<u64>(), level in 1u32..=4) {
        let x = random_element(&mut rng(seed), level, Budget::SMALL);
        prop_assert_eq!(PlainElement::parse(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(PlainElement::parse_at(&x.to_string(), level).unwrap(), x.clone());
        prop_assert_eq!(PlainElement::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn composition_keeps_totals(seed in any::<u64>(), level in 1u32..=4) {
        let (x, ys) = random_config(&mut rng(seed), level, 1, Budget::SMALL);
        let (i, y) = &ys[0];
        let (z, sh) = compose(&x, *i, y).unwrap();
        prop_assert!(sh.check());
        prop_assert_eq!(z.m(), x.m() + y.m() - 1);
        if level >= 2 {
            prop_assert_eq!(z.total_g().unwrap(), x.total_g().unwrap());
        }
        for (j, v) in sh.phi_pairs() {
            prop_assert_eq!(z.slot(v).unwrap(), x.slot(j).unwrap());
        }
        for (r, v) in sh.psi_pairs() {
            prop_assert_eq!(z.slot(v).unwrap(), y.slot(r).unwrap());
        }
    }

    #[test]
    fn head_decomposition_recomposes(seed in any::<u64>(), level in 2u32..=4) {
        let x = random_element(&mut rng(seed), level, Budget::MEDIUM);
        let h = decompose_head(&x).unwrap();
        prop_assert_eq!(h.recompose().unwrap(), x.clone());
        prop_assert_eq!(h.placement.len(), x.m());
    }

    #[test]
    fn canonical_sequences_are_fixed(seed in any::<u64>(), level in 2u32..=4) {
        let x = random_element(&mut rng(seed), level, Budget::SMALL);
        let g = GammaSequence::from_element(&x);
        for s in [Strategy::LeftFirst, Strategy::RightFirst, Strategy::Random(seed)] {
            let (y, p) = normalize(&g, s).unwrap();
            prop_assert_eq!(&y, &x);
            prop_assert_eq!(p, perm::identity(x.m()));
        }
    }

    #[test]
    fn splits_recompose(seed in any::<u64>(), level in 2u32..=3) {
        let mut r = rng(seed);
        let p = random_element(&mut r, level, Budget::MEDIUM);
        prop_assume!(p.m() >= 2);
        let v = r.gen_range(1..p.m());
        let (a, s, b) = split(&p, v).unwrap();
        prop_assert_eq!(compose(&a, s, &b).unwrap().0, p);
    }

    #[test]
    fn ordinal_sums_and_printing(seed in any::<u64>(), n in 1u32..=4) {
        let mut r = rng(seed);
        let a = ordinal::random_below(&mut r, n, 4);
        let b = ordinal::random_below(&mut r, n, 4);
        prop_assert_eq!(ordinal::parse(&a.to_string()).unwrap(), a.clone());
        let s = add(&a, &b);
        prop_assert!(s.is_normal());
        prop_assert!(cmp(&s, &a).is_ge() && cmp(&s, &b).is_ge());
    }

    #[test]
    fn one_morphisms_invert_and_square(seed in any::<u64>()) {
        let mut r = rng(seed);
        let leaves = r.gen_range(1..=5);
        let x = random_tree(&mut r, leaves, Budget::SMALL);
        prop_assume!(x.m() <= 5);
        let perms: Vec<Vec<usize>> = x.factors().iter().map(|f| shuffled(&mut r, f.m())).collect();
        let f = apply_one(&x, &perms).unwrap();
        prop_assert_eq!(f.then(&f.inverse().unwrap()).unwrap(), OneMor2::identity(&x).unwrap());
        for g in enumerate_two(&x).unwrap() {
            prop_assert!(complete_square(&f, &g).unwrap().commutes());
        }
    }
}
