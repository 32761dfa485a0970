//! Ordinal notations below Γ₀ and the maps `Φ_n` from plain bases to ordinals.

mod notation;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::Rng;

pub use notation::{add, cmp, omega_pow, one_plus, parse, phi, pred_left, OrdinalNF, Term};

use crate::compose::{decompose_head, embed, graft, Placement};
use crate::element::PlainElement;
use crate::error::{Error, Result};

/// The explicit level-2 map: walk the head's prongs, free prongs count 1 and
/// a prong carrying subtree `s` counts `ω^Φ₂(s)`.
pub fn eval_phi2(z: &PlainElement) -> Result<OrdinalNF> {
    if z.level() != 2 {
        return Err(Error::LevelMismatch(format!("Φ₂ takes level 2, got {}", z.level())));
    }
    let h = decompose_head(z)?;
    let mut acc = OrdinalNF::zero();
    let mut next = h.attachments.iter().peekable();
    for s in 1..=h.head.m() {
        let part = match next.peek() {
            Some((slot, sub)) if *slot == s => {
                next.next();
                omega_pow(&eval_phi2(sub)?)
            }
            _ => OrdinalNF::nat(1),
        };
        acc = add(&acc, &part);
    }
    Ok(acc)
}

/// `Φ_n(z; α)` with one ordinal per factor of `z` (all 1 when `None`).
///
/// A slot carrying subtree `z_t` takes `φ_{n-1}(γ)` where
/// `1 + γ = Φ_n(z_t; α restricted to z_t)`. The head's own α goes to its last
/// free slot and the other free slots take 1, so with all α = 1 every free
/// slot counts 1.
pub fn eval_phin(z: &PlainElement, alphas: Option<&[OrdinalNF]>) -> Result<OrdinalNF> {
    if z.level() == 0 {
        return Err(Error::LevelMismatch("Φ_n needs level >= 1".into()));
    }
    let owned;
    let alphas = match alphas {
        Some(a) => {
            if a.len() != z.m() {
                return Err(Error::DegreeMismatch(format!(
                    "{} alphas for m = {}",
                    a.len(),
                    z.m()
                )));
            }
            a
        }
        None => {
            owned = vec![OrdinalNF::nat(1); z.m()];
            &owned
        }
    };
    if z.level() == 1 {
        return Ok(alphas.iter().fold(OrdinalNF::zero(), |acc, a| add(&acc, a)));
    }
    let n = z.level();
    let h = decompose_head(z)?;
    let mut blocks: Vec<Vec<OrdinalNF>> = h
        .attachments
        .iter()
        .map(|(_, s)| vec![OrdinalNF::zero(); s.m()])
        .collect();
    let mut head_alpha = OrdinalNF::nat(1);
    for (t, p) in h.placement.iter().enumerate() {
        match *p {
            Placement::Head => head_alpha = alphas[t].clone(),
            Placement::Sub(a, pos) => blocks[a][pos - 1] = alphas[t].clone(),
        }
    }
    let sub = OrdinalNF::nat(n as u64 - 1);
    let mut args = vec![OrdinalNF::nat(1); h.head.m()];
    let mut free = vec![true; h.head.m()];
    for ((slot, s), block) in h.attachments.iter().zip(&blocks) {
        let v = eval_phin(s, Some(block))?;
        args[slot - 1] = phi(&sub, &pred_left(&v))?;
        free[slot - 1] = false;
    }
    if let Some(last) = free.iter().rposition(|&f| f) {
        args[last] = head_alpha;
    }
    eval_phin(&h.head, Some(&args))
}

/// The least element of `B_n` with a single slot: `1`, `[1|]`, `[[1|]|]`, ...
fn single_slot(n: u32) -> PlainElement {
    let mut z = PlainElement::arity(1).unwrap();
    for _ in 1..n {
        z = embed(&z).unwrap();
    }
    z
}

/// Which factor type a fixed-point α must sit on, if the caller cares.
type Demand<'a> = &'a dyn Fn(&OrdinalNF) -> Result<Option<PlainElement>>;

/// Any `β >= 1` as `Φ_n(z; α)` with every `α` in `{1} ∪ Im φ_n`.
pub fn encode_general(beta: &OrdinalNF, n: u32) -> Result<(PlainElement, Vec<OrdinalNF>)> {
    encode_typed(beta, n, &|_| Ok(None))
}

/// The `γ` to realise below an α of the form `φ_c(d)` with `c >= n - 1`.
fn peel(a: &OrdinalNF, n: u32) -> OrdinalNF {
    match a.as_phi() {
        Some((c, d)) if c.as_nat() == Some(n as u64 - 1) => one_plus(d),
        _ => a.clone(),
    }
}

fn is_one(a: &OrdinalNF) -> bool {
    a.as_nat() == Some(1)
}

fn encode_typed(beta: &OrdinalNF, n: u32, up: Demand) -> Result<(PlainElement, Vec<OrdinalNF>)> {
    if beta.is_zero() {
        return Err(Error::OutOfRange("Φ_n never takes the value 0".into()));
    }
    if n == 0 {
        return Err(Error::LevelMismatch("encode needs n >= 1".into()));
    }
    if n == 1 {
        let alphas: Vec<OrdinalNF> = beta
            .terms()
            .iter()
            .map(|t| match t {
                Term::One => OrdinalNF::nat(1),
                Term::Phi(a, b) => phi(a, b).unwrap(),
            })
            .collect();
        let z = PlainElement::arity(alphas.len() as u32)?;
        return Ok((z, alphas));
    }
    if let Some((a, _)) = beta.as_phi() {
        if cmp(a, &OrdinalNF::nat(n as u64)) != Ordering::Less {
            return match up(beta)? {
                None => Ok((single_slot(n), vec![beta.clone()])),
                Some(tau) => gadget(&tau, beta),
            };
        }
    }
    // Attachments are built first so the factor under each one can take its type.
    let down = |a: &OrdinalNF| -> Result<Option<PlainElement>> {
        let (zs, _) = encode_typed(&peel(a, n), n, up)?;
        Ok(Some(zs.factors()[0].total_g()?))
    };
    let (w, inner) = encode_typed(beta, n - 1, &down)?;
    // Attach in decreasing slot order so lower slot numbers stay put.
    let mut z = embed(&w)?;
    let mut alphas = vec![OrdinalNF::nat(1)];
    for (s, a) in inner.iter().enumerate().rev() {
        if is_one(a) {
            continue;
        }
        let (sub_z, sub_alpha) = encode_typed(&peel(a, n), n, up)?;
        (z, alphas) = attach(&z, &alphas, s + 1, &sub_z, &sub_alpha)?;
    }
    Ok((z, alphas))
}

fn attach(
    z: &PlainElement,
    alphas: &[OrdinalNF],
    slot: usize,
    y: &PlainElement,
    y_alphas: &[OrdinalNF],
) -> Result<(PlainElement, Vec<OrdinalNF>)> {
    let (nz, xpos, ypos) = graft(z, slot, y)?;
    let mut next = vec![OrdinalNF::zero(); nz.m()];
    for (k, p) in xpos.iter().enumerate() {
        next[p - 1] = alphas[k].clone();
    }
    for (k, p) in ypos.iter().enumerate() {
        next[p - 1] = y_alphas[k].clone();
    }
    Ok((nz, next))
}

/// The smallest element whose head has total arity `t`.
fn filler(t: &PlainElement) -> Result<PlainElement> {
    let head = if t.level() == 0 {
        PlainElement::arity(1)?
    } else {
        embed(t)?
    };
    embed(&head)
}

/// An element headed by `tau` carrying `e` on the head and worth exactly `e`.
///
/// Slots of `tau` other than one are filled with small attachments so that
/// `e` lands in the last summand; the first choice that evaluates to `e` wins.
fn gadget(tau: &PlainElement, e: &OrdinalNF) -> Result<(PlainElement, Vec<OrdinalNF>)> {
    let base = embed(tau)?;
    let m = tau.m();
    let choices = std::iter::once(None).chain((1..=m).rev().map(Some));
    for keep in choices {
        let mut z = base.clone();
        let mut alphas = vec![e.clone()];
        if let Some(keep) = keep {
            for q in (1..=m).rev().filter(|&q| q != keep) {
                let f = filler(&tau.slot(q)?)?;
                let ones = vec![OrdinalNF::nat(1); f.m()];
                (z, alphas) = attach(&z, &alphas, q, &f, &ones)?;
            }
        }
        if eval_phin(&z, Some(&alphas))? == *e {
            return Ok((z, alphas));
        }
    }
    Err(Error::OutOfRange(format!("no factor of type {tau} realises {e}")))
}

/// A preimage of `β < φ_n(0)` under `Φ_n` with default arguments.
pub fn encode(beta: &OrdinalNF, n: u32) -> Result<PlainElement> {
    let bound = phi(&OrdinalNF::nat(n as u64), &OrdinalNF::zero())?;
    if cmp(beta, &bound) != Ordering::Less {
        return Err(Error::OutOfRange(format!("{beta} is not below φ_{n}(0)")));
    }
    let (z, alphas) = encode_general(beta, n)?;
    debug_assert!(alphas.iter().all(|a| a.as_nat() == Some(1)));
    Ok(z)
}

/// `{Φ_n(z)}` over the given elements.
pub fn image<'a>(elems: impl IntoIterator<Item = &'a PlainElement>) -> Result<BTreeSet<OrdinalNF>> {
    elems.into_iter().map(|z| eval_phin(z, None)).collect()
}

/// The image of `Φ_n` over every element within the bounds.
pub fn image_sweep(n: u32, max_factors: usize, max_arity: u32) -> Result<BTreeSet<OrdinalNF>> {
    image(&crate::enumerate::enumerate(n, max_factors, max_arity))
}

/// The image of the explicit `Φ_2` formula over level-2 elements within the bounds.
pub fn image_phi2(max_factors: usize, max_arity: u32) -> Result<BTreeSet<OrdinalNF>> {
    crate::enumerate::enumerate(2, max_factors, max_arity)
        .iter()
        .map(eval_phi2)
        .collect()
}

/// A random normal form `β` with `1 <= β < φ_n(0)` of nesting depth at most `depth`.
pub fn random_below<R: Rng>(rng: &mut R, n: u32, depth: usize) -> OrdinalNF {
    fn go<R: Rng>(rng: &mut R, n: u32, depth: usize, allow_zero: bool) -> OrdinalNF {
        let lo = if allow_zero { 0 } else { 1 };
        let count = rng.gen_range(lo..=3);
        let mut acc = OrdinalNF::zero();
        for _ in 0..count {
            let t = if n <= 1 || depth == 0 || rng.gen_bool(0.35) {
                OrdinalNF::nat(1)
            } else {
                let a = rng.gen_range(1..n) as u64;
                let b = go(rng, n, depth - 1, true);
                phi(&OrdinalNF::nat(a), &b).unwrap()
            };
            acc = add(&acc, &t);
        }
        // Keep the sum sorted: adding in random order may absorb, which is fine.
        acc
    }
    loop {
        let b = go(rng, n, depth, false);
        if !b.is_zero() {
            return b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(s: &str) -> PlainElement {
        PlainElement::parse(s).unwrap()
    }

    fn o(s: &str) -> OrdinalNF {
        parse(s).unwrap()
    }

    #[test]
    fn phi2_examples() {
        for n in 1..6 {
            assert_eq!(eval_phi2(&embed(&PlainElement::arity(n).unwrap()).unwrap()).unwrap(), OrdinalNF::nat(n as u64));
        }
        assert_eq!(eval_phi2(&e("[1,1|1]")).unwrap(), o("w"));
        assert_eq!(eval_phi2(&e("[1,1,1|1,1]")).unwrap(), o("w^(w)"));
    }

    #[test]
    fn phin_examples() {
        let three = e("3");
        let a = [o("w"), o("2"), o("phi(2,0)")];
        assert_eq!(eval_phin(&three, Some(&a)).unwrap(), o("phi(2,0)"));
        assert_eq!(eval_phin(&e("[4|]"), None).unwrap(), o("4"));
        assert_eq!(eval_phin(&e("[[2|]|]"), None).unwrap(), o("2"));
    }

    #[test]
    fn phin_matches_phi2_at_level_two() {
        for z in crate::enumerate::enumerate(2, 4, 3) {
            assert_eq!(eval_phin(&z, None).unwrap(), eval_phi2(&z).unwrap(), "{z}");
        }
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&o("5"), 1).unwrap(), e("5"));
        assert_eq!(encode(&o("w"), 2).unwrap(), e("[1,1|1]"));
        let beta = o("phi(2,0)+w");
        let z = encode(&beta, 3).unwrap();
        assert_eq!(z.level(), 3);
        assert_eq!(eval_phin(&z, None).unwrap(), beta);
        assert!(matches!(encode(&o("w"), 1), Err(Error::OutOfRange(_))));
        assert!(matches!(encode(&o("0"), 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn general_encode_reaches_fixed_points() {
        let beta = o("phi(2,0)+1");
        let (z, alphas) = encode_general(&beta, 2).unwrap();
        assert_eq!(eval_phin(&z, Some(&alphas)).unwrap(), beta);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=4 {
            for _ in 0..60 {
                let b = random_below(&mut rng, n, 3);
                assert!(b.is_normal(), "{b}");
                let z = encode(&b, n).unwrap();
                assert_eq!(eval_phin(&z, None).unwrap(), b, "n = {n}");
            }
        }
    }
}
