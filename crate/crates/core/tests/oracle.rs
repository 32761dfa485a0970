use nbase::compose::{check_associativity, check_phi_long, check_phi_short, compose};
use nbase::random::{random_config, Budget};
use nbase::tree::PlanarTree;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn compose_matches_tree_substitution() {
    let trees = PlanarTree::all(5, 3);
    let elems: Vec<_> = trees.iter().map(|t| t.to_element().unwrap()).collect();
    let mut cases = 0;
    for (tx, x) in trees.iter().zip(&elems) {
        for i in 1..=x.m() {
            let a = x.factors()[i - 1].m();
            for (ty, y) in trees.iter().zip(&elems) {
                if tx.node_count() + ty.node_count() > 6 || y.total_g().unwrap().m() != a {
                    continue;
                }
                let (z, sh) = compose(x, i, y).unwrap();
                let (tz, xm, ym) = tx.substitute(i, ty).unwrap();
                assert!(tz.matches(&z), "{x} o_{i} {y}: got {z}");
                for (j, v) in sh.phi_pairs() {
                    assert_eq!(xm[j - 1], v, "{x} o_{i} {y} phi({j})");
                }
                for (r, v) in sh.psi_pairs() {
                    assert_eq!(ym[r - 1], v, "{x} o_{i} {y} psi({r})");
                }
                cases += 1;
            }
        }
    }
    assert!(cases > 1000, "{cases}");
}

#[test]
fn random_associativity_and_phi_levels_3_4() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for level in 3..=4 {
        for _ in 0..200 {
            let (x, ys) = random_config(&mut rng, level, 3, Budget::SMALL);
            let (i, y) = &ys[0];
            let (j, z) = &ys[1];
            let (k, t) = &ys[2];
            assert!(check_associativity(&x, *i, y, *j, z).unwrap().holds);
            assert!(check_phi_short(&x, *i, y, *j, *k, t).unwrap().holds);
            assert!(check_phi_long(&x, *i, y, *j, z, *k).unwrap().holds);
        }
    }
}
