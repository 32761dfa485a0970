use nbase::compose::compose;
use nbase::morphisms::{apply_two, enumerate_two};
use nbase::tree::PlanarTree;
use nbase::unital::{r_compose, RElement, Zero};
use nbase::{perm, PlainElement};

fn trees(nodes: usize, arity: u32) -> Vec<PlainElement> {
    PlanarTree::all(nodes, arity).iter().map(|t| t.to_element().unwrap()).collect()
}

fn erase(x: &PlainElement, a: usize) -> PlainElement {
    match r_compose(&RElement::Plain(x.clone()), a, &RElement::Zero(Zero::Eraser)).unwrap() {
        RElement::Plain(z) => z,
        z => panic!("{x} lost everything: {z}"),
    }
}

#[test]
fn erasing_commutes_with_unrelated_composition() {
    let xs = trees(4, 2);
    let ys = trees(3, 2);
    let mut cases = 0;
    for x in &xs {
        for a in (1..=x.m()).filter(|&a| x.factors()[a - 1].m() == 1) {
            for b in (1..=x.m()).filter(|&b| b != a) {
                for y in ys.iter().filter(|y| y.total_g().unwrap() == x.factors()[b - 1]) {
                    let (xy, sh) = compose(x, b, y).unwrap();
                    let left = erase(&xy, sh.phi(a));
                    // Deleting one node keeps the preorder of the rest.
                    let b2 = if b > a { b - 1 } else { b };
                    let right = compose(&erase(x, a), b2, y).unwrap().0;
                    assert_eq!(left, right, "x={x} a={a} b={b} y={y}");
                    cases += 1;
                }
            }
        }
    }
    assert!(cases > 100, "{cases}");
}

#[test]
fn some_node_swaps_break_the_index_bounds() {
    // Three-node trees where permuting entries with the indices kept is not an element.
    let mut failing = 0;
    for x in trees(3, 4).into_iter().filter(|x| x.m() == 3) {
        let valid = enumerate_two(&x).unwrap().len();
        let none = perm::all(3)
            .iter()
            .filter(|s| apply_two(&x, s).unwrap().is_none())
            .count();
        assert_eq!(valid + none, 6, "{x}");
        if none > 0 && x.factors().iter().any(|f| f.m() == 4) {
            failing += 1;
        }
    }
    assert!(failing > 0);
    let x = PlainElement::parse("[4,1,1|1,4]").unwrap();
    assert!(apply_two(&x, &[2, 3, 1]).unwrap().is_none());
}

#[test]
fn adjacent_binary_nodes_swap_validly() {
    let x = PlainElement::parse("[2,2,2|1,3]").unwrap();
    let g = apply_two(&x, &[1, 3, 2]).unwrap().unwrap();
    assert_eq!(g.target, x);
    assert_eq!(g.then(&g.inverse().unwrap()).unwrap().sigma, perm::identity(3));
}
