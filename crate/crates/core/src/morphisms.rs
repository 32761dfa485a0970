//! Level-2 morphisms: prong permutations, node permutations, and their squares.

use crate::compose::compose;
use crate::element::PlainElement;
use crate::error::{Error, Result};
use crate::perm;
use crate::tree::PlanarTree;

/// A {1}-morphism: one prong permutation per node.
///
/// Old prong `p` of node `v` becomes prong `node_perms[v][p]` of the same node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMor2 {
    pub source: PlainElement,
    pub node_perms: Vec<Vec<usize>>,
    pub target: PlainElement,
    /// Source leaf `ℓ` lands on target leaf `leaf_perm[ℓ-1]`.
    pub leaf_perm: Vec<usize>,
    /// Source node `v` lands at target position `node_relabel[v-1]`.
    pub node_relabel: Vec<usize>,
}

/// A {2}-morphism: `target.factors[t] = source.factors[sigma(t)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoMor2 {
    pub source: PlainElement,
    pub target: PlainElement,
    pub sigma: Vec<usize>,
}

/// A {1,2}-square: `f: X → Y`, `g: X → Z`, `f2: Z → W`, `g2: Y → W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square12 {
    pub f: OneMor2,
    pub g: TwoMor2,
    pub f2: OneMor2,
    pub g2: TwoMor2,
}

fn level_two(x: &PlainElement) -> Result<()> {
    if x.level() == 2 {
        Ok(())
    } else {
        Err(Error::LevelMismatch(format!("morphisms live at level 2, got {}", x.level())))
    }
}

pub fn apply_one(source: &PlainElement, node_perms: &[Vec<usize>]) -> Result<OneMor2> {
    level_two(source)?;
    if node_perms.len() != source.m() {
        return Err(Error::DegreeMismatch(format!(
            "{} permutations for {} nodes",
            node_perms.len(),
            source.m()
        )));
    }
    for (v, (p, f)) in node_perms.iter().zip(source.factors()).enumerate() {
        if p.len() != f.m() || !perm::is_perm(p) {
            return Err(Error::DegreeMismatch(format!(
                "node {} has arity {} but got {:?}",
                v + 1,
                f.m(),
                p
            )));
        }
    }
    let t = PlanarTree::from_element(source)?;
    let order = t.preorder();
    let zero: Vec<Vec<usize>> = node_perms
        .iter()
        .map(|p| p.iter().map(|&q| q - 1).collect())
        .collect();
    let t2 = t.permute_prongs(&zero);
    let target = t2.to_element()?;
    let mut src_pos = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        src_pos[v] = k;
    }
    let mut node_relabel = vec![0; order.len()];
    for (k, &v) in t2.preorder().iter().enumerate() {
        node_relabel[src_pos[v]] = k + 1;
    }
    let after = t2.leaves();
    let leaf_perm = t
        .leaves()
        .iter()
        .map(|&(v, p)| {
            let moved = (v, node_perms[src_pos[v]][p] - 1);
            after.iter().position(|&l| l == moved).unwrap() + 1
        })
        .collect();
    Ok(OneMor2 {
        source: source.clone(),
        node_perms: node_perms.to_vec(),
        target,
        leaf_perm,
        node_relabel,
    })
}

impl OneMor2 {
    pub fn identity(x: &PlainElement) -> Result<Self> {
        let perms: Vec<Vec<usize>> = x.factors().iter().map(|f| perm::identity(f.m())).collect();
        apply_one(x, &perms)
    }

    /// `g ∘ self`; needs `self.target == g.source`.
    pub fn then(&self, g: &OneMor2) -> Result<OneMor2> {
        if self.target != g.source {
            return Err(Error::NotComposable(format!(
                "{} is not the source {}",
                self.target, g.source
            )));
        }
        let perms: Vec<Vec<usize>> = self
            .node_perms
            .iter()
            .enumerate()
            .map(|(v, p)| perm::then(&g.node_perms[self.node_relabel[v] - 1], p))
            .collect();
        apply_one(&self.source, &perms)
    }

    pub fn inverse(&self) -> Result<OneMor2> {
        let mut perms = vec![Vec::new(); self.node_perms.len()];
        for (v, p) in self.node_perms.iter().enumerate() {
            perms[self.node_relabel[v] - 1] = perm::inverse(p);
        }
        apply_one(&self.target, &perms)
    }
}

/// Builds the candidate with factors permuted and indices kept; `None` if it
/// is not an element.
pub fn apply_two(source: &PlainElement, sigma: &[usize]) -> Result<Option<TwoMor2>> {
    level_two(source)?;
    if sigma.len() != source.m() || !perm::is_perm(sigma) {
        return Err(Error::DegreeMismatch(format!(
            "{:?} is not a permutation of {} nodes",
            sigma,
            source.m()
        )));
    }
    let factors = sigma.iter().map(|&s| source.factors()[s - 1].clone()).collect();
    Ok(crate::compose::make(factors, source.indices().to_vec())
        .ok()
        .map(|target| TwoMor2 {
            source: source.clone(),
            target,
            sigma: sigma.to_vec(),
        }))
}

impl TwoMor2 {
    /// Any node permutation between two elements carrying the same entries.
    pub fn new(source: &PlainElement, target: &PlainElement, sigma: &[usize]) -> Result<Self> {
        level_two(source)?;
        level_two(target)?;
        if sigma.len() != source.m() || target.m() != source.m() || !perm::is_perm(sigma) {
            return Err(Error::DegreeMismatch(format!("bad node permutation {sigma:?}")));
        }
        for (t, &s) in sigma.iter().enumerate() {
            if target.factors()[t] != source.factors()[s - 1] {
                return Err(Error::MatchViolation(format!(
                    "target node {} is {} but source node {s} is {}",
                    t + 1,
                    target.factors()[t],
                    source.factors()[s - 1]
                )));
            }
        }
        Ok(TwoMor2 {
            source: source.clone(),
            target: target.clone(),
            sigma: sigma.to_vec(),
        })
    }

    pub fn identity(x: &PlainElement) -> Result<Self> {
        TwoMor2::new(x, x, &perm::identity(x.m()))
    }

    /// `g ∘ self`; needs `self.target == g.source`.
    pub fn then(&self, g: &TwoMor2) -> Result<TwoMor2> {
        if self.target != g.source {
            return Err(Error::NotComposable(format!(
                "{} is not the source {}",
                self.target, g.source
            )));
        }
        TwoMor2::new(&self.source, &g.target, &perm::then(&self.sigma, &g.sigma))
    }

    pub fn inverse(&self) -> Result<TwoMor2> {
        TwoMor2::new(&self.target, &self.source, &perm::inverse(&self.sigma))
    }
}

/// Transports `f` along `g` and returns the square closing on the far corner.
pub fn complete_square(f: &OneMor2, g: &TwoMor2) -> Result<Square12> {
    if f.source != g.source {
        return Err(Error::NotComposable("the two edges must share a source".into()));
    }
    let perms: Vec<Vec<usize>> = g
        .sigma
        .iter()
        .map(|&s| f.node_perms[s - 1].clone())
        .collect();
    let f2 = apply_one(&g.target, &perms)?;
    let k = g.sigma.len();
    let mut sigma = vec![0; k];
    for (t, &s) in g.sigma.iter().enumerate() {
        sigma[f2.node_relabel[t] - 1] = f.node_relabel[s - 1];
    }
    let g2 = TwoMor2::new(&f.target, &f2.target, &sigma)?;
    Ok(Square12 {
        f: f.clone(),
        g: g.clone(),
        f2,
        g2,
    })
}

impl Square12 {
    /// Both paths `X → W` carry the same node bijection and prong permutations.
    pub fn commutes(&self) -> bool {
        square_agrees(&self.f, &self.g, &self.f2, &self.g2)
    }
}

fn square_agrees(f: &OneMor2, g: &TwoMor2, f2: &OneMor2, g2: &TwoMor2) -> bool {
    if f.target != g2.source || g.target != f2.source || f2.target != g2.target {
        return false;
    }
    let g_inv = perm::inverse(&g.sigma);
    let g2_inv = perm::inverse(&g2.sigma);
    (1..=f.node_perms.len()).all(|v| {
        let via_y = g2_inv[f.node_relabel[v - 1] - 1];
        let z = g_inv[v - 1];
        let via_z = f2.node_relabel[z - 1];
        via_y == via_z && f.node_perms[v - 1] == f2.node_perms[z - 1]
    })
}

/// Counts squares on `(f, g)` by brute force over every {1}-morphism out of
/// g's target and every node permutation out of f's target.
pub fn count_squares(f: &OneMor2, g: &TwoMor2) -> Result<usize> {
    count_squares_among(f, g, &enumerate_one(&g.target)?)
}

/// As [`count_squares`] with the {1}-morphisms out of g's target supplied.
pub fn count_squares_among(f: &OneMor2, g: &TwoMor2, candidates: &[OneMor2]) -> Result<usize> {
    let mut n = 0;
    let sigmas = perm::all(g.sigma.len());
    for f2 in candidates {
        if f2.source != g.target {
            return Err(Error::NotComposable("candidate does not start at g's target".into()));
        }
        for sigma in &sigmas {
            let Ok(g2) = TwoMor2::new(&f.target, &f2.target, sigma) else {
                continue;
            };
            if square_agrees(f, g, f2, &g2) {
                n += 1;
            }
        }
    }
    Ok(n)
}

const MAX_ENUM_FACTORS: usize = 6;

pub fn enumerate_one(x: &PlainElement) -> Result<Vec<OneMor2>> {
    level_two(x)?;
    if x.m() > MAX_ENUM_FACTORS {
        return Err(Error::SizeBound(format!("{} nodes exceeds {MAX_ENUM_FACTORS}", x.m())));
    }
    let choices: Vec<Vec<Vec<usize>>> = x.factors().iter().map(|f| perm::all(f.m())).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let perms: Vec<Vec<usize>> = pick.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        out.push(apply_one(x, &perms)?);
        let mut d = 0;
        loop {
            if d == pick.len() {
                return Ok(out);
            }
            pick[d] += 1;
            if pick[d] < choices[d].len() {
                break;
            }
            pick[d] = 0;
            d += 1;
        }
    }
}

pub fn enumerate_two(x: &PlainElement) -> Result<Vec<TwoMor2>> {
    level_two(x)?;
    if x.m() > MAX_ENUM_FACTORS {
        return Err(Error::SizeBound(format!("{} nodes exceeds {MAX_ENUM_FACTORS}", x.m())));
    }
    let mut out = Vec::new();
    for s in perm::all(x.m()) {
        if let Some(m) = apply_two(x, &s)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// The node permutation induced on `x ∘_i y` by `f` on `x` and `g` on `y`.
///
/// The target is `f.target ∘_{i'} g.target` with `i' = σ_f⁻¹(i)`.
pub fn induced_two_on_composition(
    x: &PlainElement,
    i: usize,
    y: &PlainElement,
    f: &TwoMor2,
    g: &TwoMor2,
) -> Result<TwoMor2> {
    if f.source != *x || g.source != *y {
        return Err(Error::NotComposable("morphisms must start at x and y".into()));
    }
    let (s, sh_s) = compose(x, i, y)?;
    let i2 = perm::inverse(&f.sigma)[i - 1];
    if g.target.total_g()? != y.total_g()? {
        return Err(Error::NotComposable("g changes the total of y".into()));
    }
    let (t, sh_t) = compose(&f.target, i2, &g.target)?;
    let mut sigma = vec![0; t.m()];
    for (j, pos) in sh_t.phi_pairs() {
        sigma[pos - 1] = sh_s.phi(f.sigma[j - 1]);
    }
    for (r, pos) in sh_t.psi_pairs() {
        sigma[pos - 1] = sh_s.psi(g.sigma[r - 1]);
    }
    TwoMor2::new(&s, &t, &sigma)
}

/// The same induced morphism computed from tree substitution alone.
pub fn induced_two_by_trees(
    x: &PlainElement,
    i: usize,
    y: &PlainElement,
    f: &TwoMor2,
    g: &TwoMor2,
) -> Result<TwoMor2> {
    let i2 = perm::inverse(&f.sigma)[i - 1];
    let (ts, xs, ys) = PlanarTree::from_element(x)?.substitute(i, &PlanarTree::from_element(y)?)?;
    let (tt, xt, yt) =
        PlanarTree::from_element(&f.target)?.substitute(i2, &PlanarTree::from_element(&g.target)?)?;
    let mut sigma = vec![0; tt.node_count()];
    for j in (1..=x.m()).filter(|&j| j != i2) {
        sigma[xt[j - 1] - 1] = xs[f.sigma[j - 1] - 1];
    }
    for r in 1..=y.m() {
        sigma[yt[r - 1] - 1] = ys[g.sigma[r - 1] - 1];
    }
    TwoMor2::new(&ts.to_element()?, &tt.to_element()?, &sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> PlainElement {
        PlainElement::parse(s).unwrap()
    }

    #[test]
    fn one_morphism_examples() {
        let x = e("[2,2|1]");
        let id = OneMor2::identity(&x).unwrap();
        assert_eq!(id.target, x);
        assert_eq!(id.leaf_perm, vec![1, 2, 3]);
        let sw = apply_one(&x, &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(sw.target, e("[2,2|2]"));
        assert_eq!(sw.leaf_perm, vec![2, 3, 1]);
        assert!(matches!(
            apply_one(&x, &[vec![1, 2]]),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn one_morphisms_compose_and_invert() {
        let x = e("[3,2,2|1,3]");
        let ms = enumerate_one(&x).unwrap();
        for f in &ms {
            let inv = f.inverse().unwrap();
            assert_eq!(f.then(&inv).unwrap(), OneMor2::identity(&x).unwrap());
            for g in enumerate_one(&f.target).unwrap().iter().take(5) {
                let h = f.then(g).unwrap();
                assert_eq!(h.target, g.target);
                assert_eq!(h.leaf_perm, perm::then(&g.leaf_perm, &f.leaf_perm));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_one(&e("[2|]")).unwrap().len(), 2);
        assert_eq!(enumerate_one(&e("[3|]")).unwrap().len(), 6);
        let two = enumerate_two(&e("[2,2|1]")).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().any(|m| m.sigma == vec![1, 2]));
    }

    #[test]
    fn two_morphism_examples() {
        let x = e("[2,2,2|1,3]");
        let sw = apply_two(&x, &[1, 3, 2]).unwrap().unwrap();
        assert_eq!(sw.target, x);
        assert!(apply_two(&e("[4,1|4]"), &[2, 1]).unwrap().is_none());
    }

    #[test]
    fn square_examples() {
        let x = e("[2,2|1]");
        let f = apply_one(&x, &[vec![2, 1], vec![1, 2]]).unwrap();
        let g = apply_two(&x, &[2, 1]).unwrap().unwrap();
        let sq = complete_square(&f, &g).unwrap();
        assert!(sq.commutes());
        assert_eq!(count_squares(&f, &g).unwrap(), 1);
        let id = OneMor2::identity(&x).unwrap();
        let sq = complete_square(&id, &g).unwrap();
        assert_eq!(sq.g2.sigma, g.sigma);
    }

    #[test]
    fn induced_agrees_with_trees() {
        let x = e("[2,2,2|1,3]");
        let y = e("[1,2|1]");
        let f = apply_two(&x, &[1, 3, 2]).unwrap().unwrap();
        let g = TwoMor2::identity(&y).unwrap();
        let a = induced_two_on_composition(&x, 2, &y, &f, &g).unwrap();
        let b = induced_two_by_trees(&x, 2, &y, &f, &g).unwrap();
        assert_eq!(a, b);
    }
}
