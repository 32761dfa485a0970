//! Units, the based level-1 extension ℕ₀, and R-unital composition up to level 2.

use std::collections::BTreeSet;
use std::fmt;

use crate::compose::{compose, embed};
use crate::element::{parse_literal, Literal, PlainElement};
use crate::error::{Error, Result};
use crate::tree::PlanarTree;

/// The degenerate elements with `m = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Zero {
    /// The second point of `B_0^R`.
    PointUnit,
    /// `0 ∈ ℕ₀`; caps a prong when plugged into a level-2 element.
    Cap,
    /// Deletes a 1-ary node.
    Eraser,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RElement {
    Plain(PlainElement),
    Zero(Zero),
}

impl RElement {
    pub fn level(&self) -> u32 {
        match self {
            RElement::Plain(x) => x.level(),
            RElement::Zero(Zero::PointUnit) => 0,
            RElement::Zero(Zero::Cap) => 1,
            RElement::Zero(Zero::Eraser) => 2,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            RElement::Plain(x) => x.m(),
            RElement::Zero(_) => 0,
        }
    }

    /// Parses the plain grammar extended by `0` and `!e`, normalizing any
    /// embedded caps and erasers.
    pub fn parse(text: &str) -> Result<Self> {
        let lit = parse_literal(text)?;
        match &lit {
            Literal::Int(0) => Ok(RElement::Zero(Zero::Cap)),
            Literal::Eraser => Ok(RElement::Zero(Zero::Eraser)),
            Literal::Seq(fs, ix) if lit.depth() == 2 => {
                let mut arities = Vec::with_capacity(fs.len());
                let mut erase = Vec::with_capacity(fs.len());
                for f in fs {
                    match f {
                        Literal::Int(n) => {
                            arities.push(u32::try_from(*n).map_err(|_| {
                                Error::RangeViolation(format!("arity {n} too large"))
                            })?);
                            erase.push(false);
                        }
                        Literal::Eraser => {
                            arities.push(1);
                            erase.push(true);
                        }
                        _ => return Err(Error::LevelMismatch("mixed factor levels".into())),
                    }
                }
                if ix.len() + 1 != fs.len() {
                    return Err(Error::Parse("factor/index counts disagree".into()));
                }
                let ix: Vec<usize> = ix.iter().map(|&i| i as usize).collect();
                let t = PlanarTree::from_parts(&arities, &ix)?;
                // Node ids follow factor order, so the marks carry over.
                reduce(&t, &erase)
            }
            _ => Ok(RElement::Plain(crate::compose::validate(&lit)?)),
        }
    }
}

impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RElement::Plain(x) => write!(f, "{x}"),
            RElement::Zero(Zero::PointUnit) => write!(f, "!u"),
            RElement::Zero(Zero::Cap) => write!(f, "0"),
            RElement::Zero(Zero::Eraser) => write!(f, "!e"),
        }
    }
}

/// `1ⁿ_y`: the single-factor element `[y|]`, or the number 1 over the point.
pub fn unit(y: &PlainElement) -> PlainElement {
    match y.level() {
        0 => PlainElement::arity(1).unwrap(),
        _ => embed(y).unwrap(),
    }
}

enum Reduced {
    /// The subtree vanished into an open prong.
    Leaf,
    /// The subtree capped its prong away.
    Capped,
    Node(u32, Vec<Option<Box<Reduced>>>),
}

/// Deletes marked 1-ary nodes, then removes capped prongs bottom-up.
fn reduce(t: &PlanarTree, erase: &[bool]) -> Result<RElement> {
    fn go(t: &PlanarTree, erase: &[bool], v: usize) -> Reduced {
        let kids: Vec<Reduced> = t.children[v]
            .iter()
            .map(|c| c.map_or(Reduced::Leaf, |c| go(t, erase, c)))
            .collect();
        if erase[v] {
            return kids.into_iter().next().unwrap();
        }
        let kept: Vec<Option<Box<Reduced>>> = kids
            .into_iter()
            .filter(|k| !matches!(k, Reduced::Capped))
            .map(|k| match k {
                Reduced::Leaf => None,
                k => Some(Box::new(k)),
            })
            .collect();
        if kept.is_empty() {
            Reduced::Capped
        } else {
            Reduced::Node(kept.len() as u32, kept)
        }
    }
    fn flatten(r: &Reduced, arities: &mut Vec<u32>, indices: &mut Vec<usize>, open: &mut usize) {
        let Reduced::Node(a, kids) = r else { unreachable!() };
        arities.push(*a);
        let base = *open;
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
        *open = base + seen;
    }
    match go(t, erase, t.root) {
        Reduced::Leaf => Ok(RElement::Zero(Zero::Eraser)),
        Reduced::Capped => Ok(RElement::Zero(Zero::Cap)),
        r => {
            let mut arities = Vec::new();
            let mut indices = Vec::new();
            flatten(&r, &mut arities, &mut indices, &mut 0);
            Ok(RElement::Plain(PlanarTree::from_parts(&arities, &indices)?.to_element()?))
        }
    }
}

/// Composition in `B_n^R` for `n <= 2`.
///
/// At level 2 the slot `i` is a node for plain and eraser arguments and a
/// leaf for level-1 arguments (`0` caps it, a corolla is grafted onto it).
pub fn r_compose(x: &RElement, i: usize, u: &RElement) -> Result<RElement> {
    if x.level() >= 3 || u.level() >= 3 {
        return Err(Error::NotImplementedLevel(
            "R-unital composition is only defined up to level 2".into(),
        ));
    }
    let RElement::Plain(x) = x else {
        return Err(Error::NotComposable(format!("{x} has no slots")));
    };
    match (x.level(), u) {
        (0, RElement::Plain(PlainElement::Point)) if i == 1 => Ok(RElement::Plain(PlainElement::Point)),
        (0, RElement::Zero(Zero::PointUnit)) if i == 1 => Ok(RElement::Zero(Zero::PointUnit)),
        (1, RElement::Plain(y)) if y.level() == 1 => {
            Ok(RElement::Plain(compose(x, i, y)?.0))
        }
        (1, RElement::Zero(Zero::Cap)) => {
            if i == 0 || i > x.m() {
                return Err(Error::RangeViolation(format!("slot {i} of {}", x.m())));
            }
            match x.m() - 1 {
                0 => Ok(RElement::Zero(Zero::Cap)),
                n => Ok(RElement::Plain(PlainElement::arity(n as u32)?)),
            }
        }
        (2, RElement::Plain(y)) if y.level() == 2 => Ok(RElement::Plain(compose(x, i, y)?.0)),
        (2, RElement::Zero(Zero::Eraser)) => {
            let t = PlanarTree::from_element(x)?;
            if i == 0 || i > x.m() {
                return Err(Error::RangeViolation(format!("node {i} of {}", x.m())));
            }
            if x.factors()[i - 1].m() != 1 {
                return Err(Error::NotComposable(format!(
                    "the eraser needs a 1-ary node, node {i} has arity {}",
                    x.factors()[i - 1].m()
                )));
            }
            let mut erase = vec![false; x.m()];
            erase[i - 1] = true;
            reduce(&t, &erase)
        }
        (2, RElement::Zero(Zero::Cap)) | (2, RElement::Plain(_)) => {
            let arity = match u {
                RElement::Plain(y) if y.level() == 1 => y.m() as u32,
                RElement::Zero(Zero::Cap) => 0,
                _ => {
                    return Err(Error::LevelMismatch(format!(
                        "cannot plug level {} into level 2",
                        u.level()
                    )))
                }
            };
            let leaves = x.total_g()?.m();
            if i == 0 || i > leaves {
                return Err(Error::RangeViolation(format!("leaf {i} of {leaves}")));
            }
            let mut arities: Vec<u32> = x.factors().iter().map(|f| f.m() as u32).collect();
            let mut indices = x.indices().to_vec();
            arities.push(arity);
            indices.push(i);
            let t = PlanarTree::from_parts(&arities, &indices)?;
            reduce(&t, &vec![false; arities.len()])
        }
        _ => Err(Error::NotComposable(format!("cannot plug {u} into slot {i} of {x}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub plain: usize,
    /// Raw R-trees enumerated before normalization.
    pub raw: usize,
    /// Distinct non-zero normal forms.
    pub normal: usize,
    pub zeros: usize,
    pub bijective: bool,
}

/// Compares `B_n` with `B_n^R ∖ B_n^{R,0}` inside a bound.
///
/// Level 1 compares `{1..bound}` with ℕ₀ truncated at `bound`. Level 2
/// enumerates raw trees with at most `max_factors` nodes, arities in
/// `0..=max_arity`, and any subset of 1-ary nodes marked for erasure.
pub fn check_runital_bijection(n: u32, max_factors: usize, max_arity: u32) -> Result<BijectionReport> {
    match n {
        1 => {
            let plain: BTreeSet<u32> = (1..=max_arity).collect();
            let mut normal = BTreeSet::new();
            let mut zeros = 0;
            for k in 0..=max_arity {
                match r_compose(
                    &RElement::Plain(PlainElement::arity(k + 1)?),
                    1,
                    &RElement::Zero(Zero::Cap),
                )? {
                    RElement::Plain(x) => {
                        normal.insert(x.m() as u32);
                    }
                    RElement::Zero(_) => zeros += 1,
                }
            }
            Ok(BijectionReport {
                plain: plain.len(),
                raw: max_arity as usize + 1,
                normal: normal.len(),
                zeros,
                bijective: plain == normal,
            })
        }
        2 => {
            let plain: BTreeSet<String> = PlanarTree::all(max_factors, max_arity)
                .iter()
                .map(|t| t.to_element().map(|e| e.to_string()))
                .collect::<Result<_>>()?;
            let mut normal = BTreeSet::new();
            let mut raw = 0;
            let mut zeros = 0;
            for t in PlanarTree::all_in(max_factors, 0, max_arity) {
                let unary: Vec<usize> = (0..t.node_count()).filter(|&v| t.arity[v] == 1).collect();
                for mask in 0u32..(1 << unary.len()) {
                    let mut erase = vec![false; t.node_count()];
                    for (b, &v) in unary.iter().enumerate() {
                        erase[v] = mask >> b & 1 == 1;
                    }
                    raw += 1;
                    match reduce(&t, &erase)? {
                        RElement::Plain(x) => {
                            normal.insert(x.to_string());
                        }
                        RElement::Zero(_) => zeros += 1,
                    }
                }
            }
            Ok(BijectionReport {
                plain: plain.len(),
                raw,
                normal: normal.len(),
                zeros,
                bijective: plain == normal,
            })
        }
        _ => Err(Error::NotImplementedLevel(format!("bijection check at level {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RElement {
        RElement::parse(s).unwrap()
    }

    #[test]
    fn unit_laws_examples() {
        let x = PlainElement::parse("[2,2|1]").unwrap();
        let u = unit(&PlainElement::parse("2").unwrap());
        assert_eq!(compose(&x, 2, &u).unwrap().0, x);
        let y = PlainElement::parse("[2,3|2]").unwrap();
        assert_eq!(compose(&unit(&PlainElement::parse("4").unwrap()), 1, &y).unwrap().0, y);
        let three = PlainElement::parse("3").unwrap();
        assert_eq!(compose(&three, 2, &unit(&PlainElement::Point)).unwrap().0, three);
    }

    #[test]
    fn eraser_deletes_unary_node() {
        let r = r_compose(&p("[2,1|2]"), 2, &RElement::Zero(Zero::Eraser)).unwrap();
        assert_eq!(r, p("[2|]"));
        assert!(matches!(
            r_compose(&p("[2,1|2]"), 1, &RElement::Zero(Zero::Eraser)),
            Err(Error::NotComposable(_))
        ));
        assert_eq!(
            r_compose(&p("[1|]"), 1, &RElement::Zero(Zero::Eraser)).unwrap(),
            RElement::Zero(Zero::Eraser)
        );
    }

    #[test]
    fn cap_drops_a_leaf() {
        let r = r_compose(&p("[2|]"), 1, &RElement::Zero(Zero::Cap)).unwrap();
        assert_eq!(r, p("[1|]"));
        let r = r_compose(&p("[1|]"), 1, &RElement::Zero(Zero::Cap)).unwrap();
        assert_eq!(r, RElement::Zero(Zero::Cap));
        // Capping the only leaf of a child removes the child too.
        let r = r_compose(&p("[2,1|1]"), 1, &RElement::Zero(Zero::Cap)).unwrap();
        assert_eq!(r, p("[1|]"));
    }

    #[test]
    fn level_one_is_arithmetic() {
        let r = r_compose(&p("3"), 2, &RElement::Zero(Zero::Cap)).unwrap();
        assert_eq!(r, p("2"));
        assert_eq!(
            r_compose(&p("1"), 1, &RElement::Zero(Zero::Cap)).unwrap(),
            RElement::Zero(Zero::Cap)
        );
    }

    #[test]
    fn higher_levels_are_refused() {
        assert!(matches!(
            r_compose(&p("[[2|]|]"), 1, &p("[[2|]|]")),
            Err(Error::NotImplementedLevel(_))
        ));
    }

    #[test]
    fn literals_normalize() {
        assert_eq!(p("[2,!e|1]"), p("[2|]"));
        assert_eq!(p("[2,!e,1|1,1]"), p("[2,1|1]"));
        assert_eq!(p("[2,0|2]"), p("[1|]"));
    }

    #[test]
    fn bijection_small() {
        assert!(check_runital_bijection(1, 0, 10).unwrap().bijective);
        let r = check_runital_bijection(2, 3, 3).unwrap();
        assert!(r.bijective, "{r:?}");
        assert!(r.raw > r.plain);
    }
}
