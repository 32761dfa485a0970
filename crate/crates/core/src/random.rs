//! Seeded random generators for elements, composable configurations and raw
//! gamma sequences.

use rand::Rng;

use crate::compose::{compose, embed, make, normalize, GammaSequence, Strategy};
use crate::element::PlainElement;
use crate::error::Result;
use crate::tree::PlanarTree;

/// Caps on generated sizes.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_arity: u32,
    /// Rough node allowance handed down through `refine`.
    pub nodes: usize,
}

impl Budget {
    pub const SMALL: Budget = Budget {
        max_arity: 3,
        nodes: 4,
    };
    pub const MEDIUM: Budget = Budget {
        max_arity: 3,
        nodes: 6,
    };
}

fn tree_with_leaves<R: Rng>(rng: &mut R, leaves: u32, nodes: usize, max_arity: u32) -> PlanarTree {
    let plan = shape(rng, leaves, nodes.max(1), max_arity);
    let mut arities = Vec::new();
    let mut indices = Vec::new();
    flatten(&plan, &mut arities, &mut indices, &mut 0);
    PlanarTree::from_parts(&arities, &indices).expect("generated tree is well formed")
}

/// A random shape: root arity and, per prong, an optional subtree.
enum Tree {
    Node(u32, Vec<Option<Tree>>),
}

fn shape<R: Rng>(rng: &mut R, leaves: u32, nodes: usize, max_arity: u32) -> Tree {
    if nodes <= 1 || leaves == 0 {
        return Tree::Node(leaves, (0..leaves).map(|_| None).collect());
    }
    let hi = leaves.min(max_arity).max(1);
    let a = rng.gen_range(1..=hi);
    // Split `leaves` into `a` positive parts.
    let mut cuts: Vec<u32> = (1..leaves).collect();
    for k in 0..cuts.len() {
        let j = rng.gen_range(k..cuts.len());
        cuts.swap(k, j);
    }
    let mut cuts: Vec<u32> = cuts.into_iter().take((a - 1) as usize).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(a as usize);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(leaves)) {
        parts.push(c - prev);
        prev = c;
    }
    let mut left = nodes - 1;
    let share = (left / a as usize).max(1);
    let kids = parts
        .into_iter()
        .map(|l| {
            let want = l > 1 || (left > 0 && rng.gen_bool(0.3));
            if want && left > 0 {
                let n = share.min(left);
                left -= n;
                Some(shape(rng, l, n, max_arity))
            } else if l > 1 {
                Some(Tree::Node(l, (0..l).map(|_| None).collect()))
            } else {
                None
            }
        })
        .collect();
    Tree::Node(a, kids)
}

fn flatten(t: &Tree, arities: &mut Vec<u32>, indices: &mut Vec<usize>, open_before: &mut usize) {
    // Preorder: each node takes the first open leaf after everything to its left.
    let Tree::Node(a, kids) = t;
    arities.push(*a);
    let base = *open_before;
    let mut seen = 0;
    for k in kids {
        match k {
            Some(k) => {
                indices.push(base + seen + 1);
                let mut inner = base + seen;
                flatten(k, arities, indices, &mut inner);
                seen = inner - base;
            }
            None => seen += 1,
        }
    }
    *open_before = base + seen;
}

/// A random level-2 element with `leaves` leaves.
pub fn random_tree<R: Rng>(rng: &mut R, leaves: u32, b: Budget) -> PlainElement {
    tree_with_leaves(rng, leaves, b.nodes, b.max_arity)
        .to_element()
        .expect("generated tree is valid")
}

/// A random element of `B_level`.
pub fn random_element<R: Rng>(rng: &mut R, level: u32, b: Budget) -> PlainElement {
    match level {
        0 => PlainElement::Point,
        1 => PlainElement::arity(rng.gen_range(1..=b.max_arity)).unwrap(),
        _ => {
            let p = random_element(rng, level - 1, b);
            refine(rng, &p, b)
        }
    }
}

/// A random element one level up whose total is `p`.
pub fn refine<R: Rng>(rng: &mut R, p: &PlainElement, b: Budget) -> PlainElement {
    match p.level() {
        0 => PlainElement::arity(1).unwrap(),
        1 => random_tree(rng, p.m() as u32, b),
        _ => {
            if b.nodes <= 1 || p.m() == 1 {
                let unit = embed(p).unwrap();
                if p.m() == 1 && b.nodes > 1 && rng.gen_bool(0.2) {
                    let pad = embed(&p.factors()[0]).unwrap();
                    return make(vec![p.clone(), pad], vec![1]).unwrap();
                }
                return unit;
            }
            let v = rng.gen_range(1..p.m());
            let (a, s, bb) = split(p, v).expect("split of a valid element");
            let d = make(vec![a.clone(), bb.clone()], vec![s]).expect("two-factor refinement");
            let half = Budget {
                nodes: b.nodes / 2,
                ..b
            };
            let rb = refine(rng, &bb, half);
            let d = compose(&d, 2, &rb).unwrap().0;
            let ra = refine(rng, &a, half);
            compose(&d, 1, &ra).unwrap().0
        }
    }
}

/// Writes `p` as `a ∘_s b` where `b` is the two-factor element formed by
/// factor `v` (0-based, `v >= 1`) and the factor owning its graft slot.
pub fn split(p: &PlainElement, v: usize) -> Result<(PlainElement, usize, PlainElement)> {
    let fs = p.factors();
    let ix = p.indices();
    // owner[slot] = (factor, local slot), tracked through the replay.
    let mut owner: Vec<(usize, usize)> = (1..=fs[0].m()).map(|q| (0, q)).collect();
    let mut amb = fs[0].clone();
    let mut history = vec![(amb.clone(), owner.clone())];
    for t in 1..v {
        let a = ix[t - 1];
        let (amb2, sh) = compose(&amb, a, &fs[t])?;
        let mut next = vec![(0, 0); amb2.m()];
        for b in (1..=amb.m()).filter(|&b| b != a) {
            next[sh.phi(b) - 1] = owner[b - 1];
        }
        for q in 1..=fs[t].m() {
            next[sh.psi(q) - 1] = (t, q);
        }
        amb = amb2;
        owner = next;
        history.push((amb.clone(), owner.clone()));
    }
    let (u, q) = owner[ix[v - 1] - 1];
    let b = make(vec![fs[u].clone(), fs[v].clone()], vec![q])?;
    let merged = compose(&fs[u], q, &fs[v])?.0;
    let mut factors = Vec::with_capacity(fs.len() - 1);
    let mut indices = Vec::with_capacity(fs.len().saturating_sub(2));
    for t in 0..fs.len() {
        if t == v {
            continue;
        }
        factors.push(if t == u { merged.clone() } else { fs[t].clone() });
        if t == 0 {
            continue;
        }
        let i = ix[t - 1];
        if t > u && t < v {
            // Partial before t gains p_v at the current position of (u, q).
            let (prev, own) = &history[t - 1];
            let pos = own.iter().position(|&o| o == (u, q)).unwrap() + 1;
            let sh = compose(prev, pos, &fs[v])?.1;
            indices.push(sh.phi(i));
        } else {
            indices.push(i);
        }
    }
    let raw = GammaSequence {
        level: p.level(),
        factors,
        indices,
    };
    let (a, perm) = normalize(&raw, Strategy::LeftFirst)?;
    Ok((a, perm[u], b))
}

/// A random element with at least `slots` factors, plus refinements of the
/// chosen slots. Returns `(x, [(slot, y)])` with slots strictly increasing.
pub fn random_config<R: Rng>(
    rng: &mut R,
    level: u32,
    slots: usize,
    b: Budget,
) -> (PlainElement, Vec<(usize, PlainElement)>) {
    loop {
        let x = random_element(rng, level, b);
        if x.m() < slots {
            continue;
        }
        let mut picks: Vec<usize> = (1..=x.m()).collect();
        for k in 0..slots {
            let j = rng.gen_range(k..picks.len());
            picks.swap(k, j);
        }
        let mut picks: Vec<usize> = picks.into_iter().take(slots).collect();
        picks.sort_unstable();
        let ys = picks
            .into_iter()
            .map(|i| {
                let f = x.slot(i).unwrap();
                (i, refine(rng, &f, b))
            })
            .collect();
        return (x, ys);
    }
}

/// A random valid raw gamma sequence at `level >= 2`, grafting at random slots
/// in random order.
pub fn random_gamma<R: Rng>(rng: &mut R, level: u32, factors: usize, b: Budget) -> GammaSequence {
    let base = random_element(rng, level - 1, b);
    let mut amb = base.clone();
    let mut fs = vec![base];
    let mut ix = Vec::new();
    for _ in 1..factors {
        let a = rng.gen_range(1..=amb.m());
        let slot = amb.slot(a).unwrap();
        let u = refine(rng, &slot, b);
        amb = compose(&amb, a, &u).unwrap().0;
        fs.push(u);
        ix.push(a);
    }
    GammaSequence {
        level,
        factors: fs,
        indices: ix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn refine_hits_its_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for level in 1..=3 {
            for _ in 0..50 {
                let p = random_element(&mut rng, level, Budget::SMALL);
                let d = refine(&mut rng, &p, Budget::SMALL);
                assert_eq!(d.total_g().unwrap(), p);
                assert_eq!(make(d.factors().to_vec(), d.indices().to_vec()).unwrap(), d);
            }
        }
    }

    #[test]
    fn split_recomposes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for level in 2..=3 {
            for _ in 0..50 {
                let p = random_element(&mut rng, level, Budget::MEDIUM);
                for v in 1..p.m() {
                    let (a, s, b) = split(&p, v).unwrap();
                    assert_eq!(compose(&a, s, &b).unwrap().0, p);
                }
            }
        }
    }

    #[test]
    fn trees_have_requested_leaves() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for l in 1..6 {
            let t = random_tree(&mut rng, l, Budget::MEDIUM);
            assert_eq!(t.total_g().unwrap().m(), l as usize);
        }
    }

    #[test]
    fn gamma_sequences_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for level in 2..=3 {
            for _ in 0..20 {
                let g = random_gamma(&mut rng, level, 4, Budget::SMALL);
                normalize(&g, Strategy::LeftFirst).unwrap();
            }
        }
    }
}
