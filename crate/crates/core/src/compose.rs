//! Composition, shuffles, normalization and the head decomposition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{parse_literal, Literal, PlainElement};
use crate::error::{Error, Result};

/// The pair `(φ, ψ)` recorded by one composition `x ∘_i y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleMap {
    pub i: usize,
    pub m_x: usize,
    pub m_y: usize,
    phi: Vec<usize>,
    psi: Vec<usize>,
}

impl ShuffleMap {
    /// `φ(j)` for `j != i`.
    pub fn phi(&self, j: usize) -> usize {
        assert!(j != self.i && j >= 1 && j <= self.m_x, "phi({j}) undefined");
        self.phi[j - 1]
    }

    pub fn psi(&self, r: usize) -> usize {
        self.psi[r - 1]
    }

    /// `φ` as `(j, φ(j))` pairs in increasing `j`.
    pub fn phi_pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.m_x)
            .filter(|&j| j != self.i)
            .map(|j| (j, self.phi[j - 1]))
            .collect()
    }

    pub fn psi_pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.m_y).map(|r| (r, self.psi[r - 1])).collect()
    }

    /// True when y's entries land contiguously from `i` and x's stay in order around them.
    pub fn is_block(&self) -> bool {
        self.phi_pairs()
            .iter()
            .all(|&(j, v)| if j < self.i { v == j } else { v == j + self.m_y - 1 })
            && self.psi_pairs().iter().all(|&(r, v)| v == r + self.i - 1)
    }

    /// The structural invariants: monotone, fixed below `i`, images partition the codomain.
    pub fn check(&self) -> bool {
        let phi = self.phi_pairs();
        let psi = self.psi_pairs();
        let mono = |v: &[(usize, usize)]| v.windows(2).all(|w| w[0].1 < w[1].1);
        let n = self.m_x + self.m_y - 1;
        let mut seen = vec![false; n + 1];
        for &(_, v) in phi.iter().chain(psi.iter()) {
            if v == 0 || v > n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        mono(&phi) && mono(&psi) && phi.iter().all(|&(j, v)| j > self.i || v == j)
    }

    fn level_one(i: usize, m_x: usize, m_y: usize) -> Self {
        let phi = (1..=m_x)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => j,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => j + m_y - 1,
            })
            .collect();
        let psi = (1..=m_y).map(|r| r + i - 1).collect();
        ShuffleMap {
            i,
            m_x,
            m_y,
            phi,
            psi,
        }
    }
}

/// A factor list with graft indices in raw application order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSequence {
    pub level: u32,
    pub factors: Vec<PlainElement>,
    pub indices: Vec<usize>,
}

impl GammaSequence {
    /// Parses `[f,..|i,..]` with no ordering requirement on the indices.
    pub fn parse(text: &str) -> Result<Self> {
        match parse_literal(text)? {
            Literal::Seq(fs, ix) => {
                let factors = fs.iter().map(validate).collect::<Result<Vec<_>>>()?;
                let level = uniform_level(&factors)? + 1;
                if ix.len() + 1 != factors.len() {
                    return Err(Error::Parse(format!(
                        "{} factors need {} indices, got {}",
                        factors.len(),
                        factors.len() - 1,
                        ix.len()
                    )));
                }
                Ok(GammaSequence {
                    level,
                    factors,
                    indices: ix.into_iter().map(|i| i as usize).collect(),
                })
            }
            _ => Err(Error::LevelMismatch("a gamma sequence needs level >= 2".into())),
        }
    }

    pub fn from_element(x: &PlainElement) -> Self {
        GammaSequence {
            level: x.level(),
            factors: x.factors().to_vec(),
            indices: x.indices().to_vec(),
        }
    }
}

impl std::fmt::Display for GammaSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fs: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        let ix: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}|{}]", fs.join(","), ix.join(","))
    }
}

/// Which inversion `normalize` rewrites next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftFirst,
    RightFirst,
    Random(u64),
}

fn uniform_level(factors: &[PlainElement]) -> Result<u32> {
    let l = factors[0].level();
    if let Some(bad) = factors.iter().find(|f| f.level() != l) {
        return Err(Error::LevelMismatch(format!(
            "factor {bad} has level {}, expected {l}",
            bad.level()
        )));
    }
    Ok(l)
}

/// Checks a structurally parsed literal for membership in `B_n`.
pub fn validate(lit: &Literal) -> Result<PlainElement> {
    match lit {
        Literal::Point => Ok(PlainElement::Point),
        Literal::Int(n) => {
            if *n == 0 || *n > u32::MAX as u64 {
                Err(Error::RangeViolation(format!("arity {n} is not a positive u32")))
            } else {
                Ok(PlainElement::Arity(*n as u32))
            }
        }
        Literal::Eraser => Err(Error::Parse(
            "'!e' is only meaningful in R-unital literals".into(),
        )),
        Literal::Seq(fs, ix) => {
            let factors = fs.iter().map(validate).collect::<Result<Vec<_>>>()?;
            uniform_level(&factors)?;
            if ix.len() + 1 != factors.len() {
                return Err(Error::Parse(format!(
                    "{} factors need {} indices, got {}",
                    factors.len(),
                    factors.len() - 1,
                    ix.len()
                )));
            }
            let indices = ix.iter().map(|&i| i as usize).collect();
            make(factors, indices)
        }
    }
}

/// Builds a level `>= 2` element from canonical data, checking every invariant.
pub fn make(factors: Vec<PlainElement>, indices: Vec<usize>) -> Result<PlainElement> {
    if factors.is_empty() || indices.len() + 1 != factors.len() {
        return Err(Error::InvalidSequence("factor/index counts disagree".into()));
    }
    let level = uniform_level(&factors)? + 1;
    let mut partial = factors[0].clone();
    for r in 1..factors.len() {
        let i = indices[r - 1];
        if i == 0 || i > partial.m() {
            return Err(Error::RangeViolation(format!(
                "index {i} at position {r} exceeds {} slots",
                partial.m()
            )));
        }
        if r >= 2 && i < indices[r - 2] {
            return Err(Error::OrderViolation(format!(
                "index {i} follows {}",
                indices[r - 2]
            )));
        }
        if partial.slot(i)? != *factors[r].g() {
            return Err(Error::MatchViolation(format!(
                "G({}) = {} but slot {i} holds {}",
                factors[r],
                factors[r].g(),
                partial.slot(i)?
            )));
        }
        partial = compose(&partial, i, &factors[r])?.0;
    }
    Ok(PlainElement::from_parts(level, factors, indices, partial))
}

/// `x ∘_i y` together with its shuffle.
pub fn compose(x: &PlainElement, i: usize, y: &PlainElement) -> Result<(PlainElement, ShuffleMap)> {
    if x.level() != y.level() {
        return Err(Error::LevelMismatch(format!(
            "cannot compose level {} with level {}",
            x.level(),
            y.level()
        )));
    }
    if i == 0 || i > x.m() {
        return Err(Error::RangeViolation(format!("slot {i} of {} slots", x.m())));
    }
    match (x, y) {
        (PlainElement::Point, _) => Ok((PlainElement::Point, ShuffleMap::level_one(1, 1, 1))),
        (PlainElement::Arity(a), PlainElement::Arity(b)) => {
            let n = u32::try_from(*a as u64 + *b as u64 - 1)
                .map_err(|_| Error::Overflow("level-1 arity exceeds u32".into()))?;
            Ok((
                PlainElement::arity_unchecked(n),
                ShuffleMap::level_one(i, *a as usize, *b as usize),
            ))
        }
        _ => {
            let xs = x.factors();
            let ys = y.factors();
            if xs[i - 1] != *y.g() {
                return Err(Error::NotComposable(format!(
                    "G({y}) = {} but slot {i} of {x} is {}",
                    y.g(),
                    xs[i - 1]
                )));
            }
            let (k, l) = (xs.len(), ys.len());
            let mut factors = Vec::with_capacity(k + l - 1);
            let mut indices = Vec::with_capacity(k + l - 2);
            factors.extend_from_slice(&xs[..i - 1]);
            indices.extend_from_slice(&x.indices()[..i.saturating_sub(2)]);
            let ambient = if i >= 2 {
                Some(prefix_partial(xs, x.indices(), i - 1)?)
            } else {
                None
            };
            let base = if i >= 2 { x.indices()[i - 2] } else { 0 };
            let spliced = splice(ambient.as_ref(), base, y)?;
            if i >= 2 {
                indices.push(base);
            }
            factors.extend_from_slice(ys);
            indices.extend(spliced);
            factors.extend_from_slice(&xs[i..]);
            indices.extend_from_slice(&x.indices()[(i - 1).min(k - 1)..]);
            let raw = GammaSequence {
                level: x.level(),
                factors,
                indices,
            };
            let (z, perm) = normalize_trusted(&raw, Strategy::LeftFirst)?;
            let raw_pos = |j: usize| if j < i { j } else { j + l - 1 };
            let mut phi = vec![0; k];
            for j in (1..=k).filter(|&j| j != i) {
                phi[j - 1] = perm[raw_pos(j) - 1];
            }
            let psi = (1..=l).map(|r| perm[i + r - 2]).collect();
            Ok((
                z,
                ShuffleMap {
                    i,
                    m_x: k,
                    m_y: l,
                    phi,
                    psi,
                },
            ))
        }
    }
}

/// `φ/ψ` of a composition.
pub fn shuffle(x: &PlainElement, i: usize, y: &PlainElement) -> Result<ShuffleMap> {
    Ok(compose(x, i, y)?.1)
}

/// Composite of the first `upto` factors.
fn prefix_partial(fs: &[PlainElement], ix: &[usize], upto: usize) -> Result<PlainElement> {
    let mut p = fs[0].clone();
    for r in 1..upto {
        p = compose(&p, ix[r - 1], &fs[r])?.0;
    }
    Ok(p)
}

/// Ambient graft indices for `y_2..y_l` once `y_1` sits at slot `s` of `ambient`.
///
/// With no ambient, `y_1` is the base and local slots are ambient slots.
fn splice(ambient: Option<&PlainElement>, s: usize, y: &PlainElement) -> Result<Vec<usize>> {
    let ys = y.factors();
    let (mut amb, mut map): (PlainElement, Vec<usize>) = match ambient {
        Some(w) => {
            let (a, sh) = compose(w, s, &ys[0])?;
            let map = (1..=ys[0].m()).map(|q| sh.psi(q)).collect();
            (a, map)
        }
        None => (ys[0].clone(), (1..=ys[0].m()).collect()),
    };
    let mut local = ys[0].clone();
    let mut out = Vec::with_capacity(ys.len().saturating_sub(1));
    for r in 1..ys.len() {
        let j = y.indices()[r - 1];
        let a = map[j - 1];
        out.push(a);
        if r + 1 == ys.len() {
            break;
        }
        let (amb2, sa) = compose(&amb, a, &ys[r])?;
        let (loc2, sl) = compose(&local, j, &ys[r])?;
        let mut next = vec![0; loc2.m()];
        for q in (1..=local.m()).filter(|&q| q != j) {
            next[sl.phi(q) - 1] = sa.phi(map[q - 1]);
        }
        for q in 1..=ys[r].m() {
            next[sl.psi(q) - 1] = sa.psi(q);
        }
        amb = amb2;
        local = loc2;
        map = next;
    }
    Ok(out)
}

/// Sorts a raw gamma sequence into canonical form.
///
/// Returns the canonical element and, for each raw position, its canonical
/// position (both 1-based).
pub fn normalize(g: &GammaSequence, strategy: Strategy) -> Result<(PlainElement, Vec<usize>)> {
    if g.level < 2 || g.factors.is_empty() || g.indices.len() + 1 != g.factors.len() {
        return Err(Error::InvalidSequence("malformed gamma sequence".into()));
    }
    if g.factors.iter().any(|f| f.level() + 1 != g.level) {
        return Err(Error::InvalidSequence("factor at the wrong level".into()));
    }
    let mut p = g.factors[0].clone();
    for r in 1..g.factors.len() {
        let i = g.indices[r - 1];
        if i == 0 || i > p.m() || p.slot(i)? != *g.factors[r].g() {
            return Err(Error::InvalidSequence(format!(
                "factor {} cannot graft at slot {i} of {p}",
                g.factors[r]
            )));
        }
        p = compose(&p, i, &g.factors[r])?.0;
    }
    normalize_trusted(g, strategy)
}

fn normalize_trusted(g: &GammaSequence, strategy: Strategy) -> Result<(PlainElement, Vec<usize>)> {
    let k = g.factors.len();
    let mut factors = g.factors.clone();
    let mut idx = g.indices.clone();
    let mut order: Vec<usize> = (0..k).collect();
    let mut partials = Vec::with_capacity(k);
    partials.push(factors[0].clone());
    for r in 1..k {
        let next = compose(&partials[r - 1], idx[r - 1], &factors[r])?.0;
        partials.push(next);
    }
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    loop {
        // Inversion at p: factor p grafts at b, factor p+1 at a < b.
        let pick = match strategy {
            Strategy::LeftFirst => (1..k.saturating_sub(1)).find(|&p| idx[p - 1] > idx[p]),
            Strategy::RightFirst => (1..k.saturating_sub(1)).rev().find(|&p| idx[p - 1] > idx[p]),
            Strategy::Random(_) => {
                let inv: Vec<usize> = (1..k.saturating_sub(1))
                    .filter(|&p| idx[p - 1] > idx[p])
                    .collect();
                if inv.is_empty() {
                    None
                } else {
                    Some(inv[rng.as_mut().unwrap().gen_range(0..inv.len())])
                }
            }
        };
        let Some(p) = pick else { break };
        let (b, a) = (idx[p - 1], idx[p]);
        let (wu, sh) = compose(&partials[p - 1], a, &factors[p + 1])?;
        idx[p - 1] = a;
        idx[p] = sh.phi(b);
        factors.swap(p, p + 1);
        order.swap(p, p + 1);
        partials[p] = wu;
    }
    let mut perm = vec![0; k];
    for (pos, &orig) in order.iter().enumerate() {
        perm[orig] = pos + 1;
    }
    let total = partials.pop().unwrap();
    Ok((
        PlainElement::from_parts(g.level, factors, idx, total),
        perm,
    ))
}

/// Free graft: attach `y` at slot `s` of `G(x)`.
///
/// Returns the canonical result and the final positions of x's and y's factors.
pub fn graft(
    x: &PlainElement,
    s: usize,
    y: &PlainElement,
) -> Result<(PlainElement, Vec<usize>, Vec<usize>)> {
    if x.level() != y.level() || x.level() < 2 {
        return Err(Error::LevelMismatch("graft needs two elements of one level >= 2".into()));
    }
    let gx = x.g();
    if s == 0 || s > gx.m() {
        return Err(Error::RangeViolation(format!("slot {s} of {} slots", gx.m())));
    }
    if gx.slot(s)? != *y.factors()[0].g() {
        return Err(Error::NotComposable(format!("cannot graft {y} at slot {s} of {x}")));
    }
    let spliced = splice(Some(gx), s, y)?;
    let k = x.m();
    let mut factors = x.factors().to_vec();
    factors.extend_from_slice(y.factors());
    let mut indices = x.indices().to_vec();
    indices.push(s);
    indices.extend(spliced);
    let raw = GammaSequence {
        level: x.level(),
        factors,
        indices,
    };
    let (z, perm) = normalize_trusted(&raw, Strategy::LeftFirst)?;
    Ok((z, perm[..k].to_vec(), perm[k..].to_vec()))
}

/// `[y|]`, the inclusion of `B_{n-1}` into `B_n`; needs `y` at level `>= 1`.
pub fn embed(y: &PlainElement) -> Result<PlainElement> {
    if y.level() == 0 {
        return Err(Error::LevelMismatch("embed needs level >= 1".into()));
    }
    Ok(PlainElement::from_parts(
        y.level() + 1,
        vec![y.clone()],
        Vec::new(),
        y.clone(),
    ))
}

/// Where a factor of `z` went in its head decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Head,
    /// Attachment number (0-based) and canonical position in that subtree (1-based).
    Sub(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadForm {
    pub head: PlainElement,
    /// `(slot of head, subtree)` in increasing slot order.
    pub attachments: Vec<(usize, PlainElement)>,
    pub placement: Vec<Placement>,
}

impl HeadForm {
    /// Grafts the subtrees back onto the head.
    pub fn recompose(&self) -> Result<PlainElement> {
        let mut z = embed(&self.head)?;
        for (s, sub) in self.attachments.iter().rev() {
            z = graft(&z, *s, sub)?.0;
        }
        Ok(z)
    }
}

#[derive(Clone, Copy)]
enum Owner {
    Free(usize),
    Local(usize, usize),
}

/// Splits `z` into its first factor and the subtrees hanging from its slots.
pub fn decompose_head(z: &PlainElement) -> Result<HeadForm> {
    if z.level() < 2 {
        return Err(Error::LevelMismatch("head decomposition needs level >= 2".into()));
    }
    let fs = z.factors();
    let head = fs[0].clone();
    let mut owner: Vec<Owner> = (1..=head.m()).map(Owner::Free).collect();
    let mut amb = head.clone();
    // Per head slot: raw factors, raw indices, local partial, raw factor ids.
    struct Region {
        factors: Vec<PlainElement>,
        indices: Vec<usize>,
        partial: PlainElement,
        ids: Vec<usize>,
    }
    let mut regions: Vec<Option<Region>> = (0..=head.m()).map(|_| None).collect();
    for t in 1..fs.len() {
        let u = &fs[t];
        let a = z.indices()[t - 1];
        let (amb2, sa) = compose(&amb, a, u)?;
        let mut next = vec![Owner::Free(0); amb2.m()];
        match owner[a - 1] {
            Owner::Free(s) => {
                regions[s] = Some(Region {
                    factors: vec![u.clone()],
                    indices: Vec::new(),
                    partial: u.clone(),
                    ids: vec![t],
                });
                for b in (1..=amb.m()).filter(|&b| b != a) {
                    next[sa.phi(b) - 1] = owner[b - 1];
                }
                for q in 1..=u.m() {
                    next[sa.psi(q) - 1] = Owner::Local(s, q);
                }
            }
            Owner::Local(s, q) => {
                let reg = regions[s].as_mut().unwrap();
                let (loc2, sl) = compose(&reg.partial, q, u)?;
                reg.factors.push(u.clone());
                reg.indices.push(q);
                reg.ids.push(t);
                reg.partial = loc2;
                for b in (1..=amb.m()).filter(|&b| b != a) {
                    next[sa.phi(b) - 1] = match owner[b - 1] {
                        Owner::Local(s2, q2) if s2 == s => Owner::Local(s, sl.phi(q2)),
                        o => o,
                    };
                }
                for q2 in 1..=u.m() {
                    next[sa.psi(q2) - 1] = Owner::Local(s, sl.psi(q2));
                }
            }
        }
        amb = amb2;
        owner = next;
    }
    let mut placement = vec![Placement::Head; fs.len()];
    let mut attachments = Vec::new();
    for (s, reg) in regions.into_iter().enumerate() {
        let Some(reg) = reg else { continue };
        let raw = GammaSequence {
            level: z.level(),
            factors: reg.factors,
            indices: reg.indices,
        };
        let (sub, perm) = normalize_trusted(&raw, Strategy::LeftFirst)?;
        for (r, &t) in reg.ids.iter().enumerate() {
            placement[t] = Placement::Sub(attachments.len(), perm[r]);
        }
        attachments.push((s, sub));
    }
    Ok(HeadForm {
        head,
        attachments,
        placement,
    })
}

/// Outcome of an identity check: both sides and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check<T> {
    pub holds: bool,
    pub left: T,
    pub right: T,
}

impl<T: PartialEq> Check<T> {
    fn of(left: T, right: T) -> Self {
        Check {
            holds: left == right,
            left,
            right,
        }
    }
}

/// `(x ∘_i y) ∘_{φ(j)} z = (x ∘_j z) ∘_i y` for `i < j`.
pub fn check_associativity(
    x: &PlainElement,
    i: usize,
    y: &PlainElement,
    j: usize,
    z: &PlainElement,
) -> Result<Check<PlainElement>> {
    if i >= j {
        return Err(Error::NotComposable(format!("associativity needs i < j, got {i}, {j}")));
    }
    let (xy, sh) = compose(x, i, y)?;
    let left = compose(&xy, sh.phi(j), z)?.0;
    let (xz, _) = compose(x, j, z)?;
    let right = compose(&xz, i, y)?.0;
    Ok(Check::of(left, right))
}

/// `φ^{(x,i,y)}(j) = φ^{(x∘_k t,i,y)}(j)` for `i < j < k`.
pub fn check_phi_short(
    x: &PlainElement,
    i: usize,
    y: &PlainElement,
    j: usize,
    k: usize,
    t: &PlainElement,
) -> Result<Check<usize>> {
    if !(i < j && j < k) {
        return Err(Error::NotComposable("phi axioms need i < j < k".into()));
    }
    let left = shuffle(x, i, y)?.phi(j);
    let xt = compose(x, k, t)?.0;
    let right = shuffle(&xt, i, y)?.phi(j);
    Ok(Check::of(left, right))
}

/// `φ^{(x∘_j z,i,y)}(φ^{(x,j,z)}(k)) = φ^{(x∘_i y,φ^{(x,i,y)}(j),z)}(φ^{(x,i,y)}(k))` for `i < j < k`.
pub fn check_phi_long(
    x: &PlainElement,
    i: usize,
    y: &PlainElement,
    j: usize,
    z: &PlainElement,
    k: usize,
) -> Result<Check<usize>> {
    if !(i < j && j < k) {
        return Err(Error::NotComposable("phi axioms need i < j < k".into()));
    }
    let (xz, s_xz) = compose(x, j, z)?;
    let left = shuffle(&xz, i, y)?.phi(s_xz.phi(k));
    let (xy, s_xy) = compose(x, i, y)?;
    let right = shuffle(&xy, s_xy.phi(j), z)?.phi(s_xy.phi(k));
    Ok(Check::of(left, right))
}

/// Both φ identities on one configuration.
pub fn check_phi_axioms(
    x: &PlainElement,
    i: usize,
    y: &PlainElement,
    j: usize,
    z: &PlainElement,
    k: usize,
    t: &PlainElement,
) -> Result<bool> {
    Ok(check_phi_short(x, i, y, j, k, t)?.holds && check_phi_long(x, i, y, j, z, k)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> PlainElement {
        PlainElement::parse(s).unwrap()
    }

    #[test]
    fn validate_examples() {
        let x = e("[3,2,4,3|1,4,5]");
        assert_eq!(x.m(), 4);
        assert_eq!(x.total_g().unwrap(), e("9"));
        assert!(matches!(PlainElement::parse("[2,2|3]"), Err(Error::RangeViolation(_))));
        assert!(matches!(PlainElement::parse("[2,2,2|2,1]"), Err(Error::OrderViolation(_))));
        assert!(matches!(
            PlainElement::parse("[[2|],[3|]|1]"),
            Err(Error::MatchViolation(_))
        ));
        assert!(matches!(PlainElement::parse("[2,[2|]|1]"), Err(Error::LevelMismatch(_))));
        assert!(matches!(PlainElement::parse("0"), Err(Error::RangeViolation(_))));
    }

    #[test]
    fn level_one_shuffle() {
        let (z, sh) = compose(&e("4"), 2, &e("3")).unwrap();
        assert_eq!(z, e("6"));
        assert_eq!(sh.phi_pairs(), vec![(1, 1), (3, 5), (4, 6)]);
        assert_eq!(sh.psi_pairs(), vec![(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn level_two_shuffles() {
        let sh = shuffle(&e("[2,2|1]"), 1, &e("[2|]")).unwrap();
        assert_eq!(sh.phi_pairs(), vec![(2, 2)]);
        assert_eq!(sh.psi_pairs(), vec![(1, 1)]);
        let sh = shuffle(&e("[2,2|2]"), 1, &e("[2,1|1]")).unwrap();
        assert_eq!(sh.phi_pairs(), vec![(2, 3)]);
        assert_eq!(sh.psi_pairs(), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn compose_keeps_total_and_adds_arity() {
        let x = e("[3,2,4,3|1,4,5]");
        let y = e("[3,2|2]");
        let (z, sh) = compose(&x, 3, &y).unwrap();
        assert_eq!(z.m(), 5);
        assert_eq!(z.total_g().unwrap(), x.total_g().unwrap());
        assert!(sh.check());
    }

    #[test]
    fn normalize_examples() {
        let g = GammaSequence::parse("[2,2,2|2,1]").unwrap();
        let (z, perm) = normalize(&g, Strategy::LeftFirst).unwrap();
        assert_eq!(z, e("[2,2,2|1,3]"));
        assert_eq!(perm, vec![1, 3, 2]);
        let g = GammaSequence::parse("[3,2,2,2|3,2,1]").unwrap();
        let a = normalize(&g, Strategy::LeftFirst).unwrap();
        let b = normalize(&g, Strategy::RightFirst).unwrap();
        assert_eq!(a, b);
        let sorted = GammaSequence::from_element(&e("[3,2,4,3|1,4,5]"));
        let (z, perm) = normalize(&sorted, Strategy::LeftFirst).unwrap();
        assert_eq!(z, e("[3,2,4,3|1,4,5]"));
        assert_eq!(perm, vec![1, 2, 3, 4]);
    }

    #[test]
    fn normalize_rejects_bad_sequences() {
        let g = GammaSequence::parse("[2,2|5]").unwrap();
        assert!(matches!(normalize(&g, Strategy::LeftFirst), Err(Error::InvalidSequence(_))));
    }

    #[test]
    fn head_examples() {
        let h = decompose_head(&e("[2|]")).unwrap();
        assert_eq!(h.head, e("2"));
        assert!(h.attachments.is_empty());
        let h = decompose_head(&e("[1,1|1]")).unwrap();
        assert_eq!(h.attachments, vec![(1, e("[1|]"))]);
        let z = e("[3,2,4,3|1,4,5]");
        let h = decompose_head(&z).unwrap();
        assert_eq!(h.head, e("3"));
        assert_eq!(h.attachments.len(), 2);
        assert_eq!(h.attachments[0].0, 1);
        assert_eq!(h.attachments[1].0, 3);
        assert_eq!(h.attachments[1].1, e("[4,3|2]"));
        assert_eq!(h.recompose().unwrap(), z);
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed(&e("3")).unwrap(), e("[3|]"));
        assert_eq!(embed(&e("[2,2|1]")).unwrap(), e("[[2,2|1]|]"));
        assert!(embed(&e("*")).is_err());
    }

    #[test]
    fn associativity_level_one() {
        let c = check_associativity(&e("5"), 1, &e("2"), 3, &e("4")).unwrap();
        assert!(c.holds);
        assert_eq!(c.left, e("9"));
    }

    #[test]
    fn phi_axioms_level_one() {
        assert!(check_phi_axioms(&e("6"), 1, &e("2"), 3, &e("3"), 5, &e("4")).unwrap());
    }
}
