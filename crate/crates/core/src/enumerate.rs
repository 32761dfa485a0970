//! Bounded exhaustive generation and the cardinality formulas built on it.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::compose::{compose, embed, graft};
use crate::element::PlainElement;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::perm::factorial;

fn sort_canonical(mut v: Vec<PlainElement>) -> Vec<PlainElement> {
    let mut keyed: Vec<(String, PlainElement)> = v.drain(..).map(|x| (x.to_string(), x)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, x)| x).collect()
}

/// Every element of `B_n` with at most `max_factors` factors at each level
/// and level-1 arities at most `max_arity`, sorted by printed form.
pub fn enumerate(n: u32, max_factors: usize, max_arity: u32) -> Vec<PlainElement> {
    enumerate_with(n, max_factors, max_arity, Exec::Sequential)
}

pub fn enumerate_with(n: u32, max_factors: usize, max_arity: u32, exec: Exec) -> Vec<PlainElement> {
    match n {
        0 => vec![PlainElement::point()],
        1 => (1..=max_arity).map(PlainElement::Arity).collect(),
        _ => {
            let pool = enumerate_with(n - 1, max_factors, max_arity, exec);
            sort_canonical(from_pool(&pool, max_factors, exec))
        }
    }
}

/// All canonical sequences over `pool` with at most `max_factors` factors.
///
/// Depth-first over index ranges: position `r` may use any slot from the
/// previous index up to the current slot count whose type matches.
pub fn from_pool(pool: &[PlainElement], max_factors: usize, exec: Exec) -> Vec<PlainElement> {
    if pool.is_empty() || max_factors == 0 {
        return Vec::new();
    }
    let mut by_g: HashMap<PlainElement, Vec<&PlainElement>> = HashMap::new();
    for f in pool {
        by_g.entry(f.total_g().unwrap()).or_default().push(f);
    }
    exec.flat_map(pool, |first| {
        let mut out = Vec::new();
        let mut factors = vec![first.clone()];
        let mut indices = Vec::new();
        dfs(first.clone(), 1, &mut factors, &mut indices, &by_g, max_factors, &mut out);
        out
    })
}

fn dfs(
    partial: PlainElement,
    from: usize,
    factors: &mut Vec<PlainElement>,
    indices: &mut Vec<usize>,
    by_g: &HashMap<PlainElement, Vec<&PlainElement>>,
    max_factors: usize,
    out: &mut Vec<PlainElement>,
) {
    let level = factors[0].level() + 1;
    out.push(PlainElement::from_parts(level, factors.clone(), indices.clone(), partial.clone()));
    if factors.len() == max_factors {
        return;
    }
    for i in from..=partial.m() {
        let slot = partial.slot(i).unwrap();
        let Some(candidates) = by_g.get(&slot) else { continue };
        for f in candidates {
            let next = compose(&partial, i, f).unwrap().0;
            factors.push((*f).clone());
            indices.push(i);
            dfs(next, i, factors, indices, by_g, max_factors, out);
            factors.pop();
            indices.pop();
        }
    }
}

/// The same set as [`enumerate`], generated as the closure of corollas under
/// grafting a corolla and composing two members.
pub fn enumerate_by_closure(n: u32, max_factors: usize, max_arity: u32) -> Vec<PlainElement> {
    if n < 2 {
        return enumerate(n, max_factors, max_arity);
    }
    let pool = enumerate_by_closure(n - 1, max_factors, max_arity);
    let corollas: Vec<PlainElement> = pool.iter().map(|f| embed(f).unwrap()).collect();
    let mut seen: HashSet<PlainElement> = corollas.iter().cloned().collect();
    let mut frontier = corollas.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let members: Vec<PlainElement> = seen.iter().cloned().collect();
        for x in &frontier {
            let mut push = |z: PlainElement| {
                if z.m() <= max_factors && seen.insert(z.clone()) {
                    next.push(z);
                }
            };
            if x.m() < max_factors {
                for s in 1..=x.total_g().unwrap().m() {
                    for c in &corollas {
                        if let Ok((z, _, _)) = graft(x, s, c) {
                            push(z);
                        }
                    }
                }
            }
            for y in &members {
                if x.m() + y.m() - 1 > max_factors {
                    continue;
                }
                for i in 1..=x.m() {
                    if let Ok((z, _)) = compose(x, i, y) {
                        push(z);
                    }
                }
                for i in 1..=y.m() {
                    if let Ok((z, _)) = compose(y, i, x) {
                        push(z);
                    }
                }
            }
        }
        frontier = next;
    }
    sort_canonical(seen.into_iter().collect())
}

/// Level-2 elements with exactly `k` factors, all of arity 2.
pub fn binary_elements(k: usize) -> Vec<PlainElement> {
    let two = [PlainElement::Arity(2)];
    from_pool(&two, k, Exec::Sequential)
        .into_iter()
        .filter(|x| x.m() == k)
        .collect()
}

pub fn count_binary(k: usize) -> u64 {
    binary_elements(k).len() as u64
}

/// `C_k` by the recurrence `C_{k+1} = Σ C_i C_{k-i}`.
pub fn catalan(k: usize) -> u64 {
    let mut c = vec![1u64];
    for n in 1..=k {
        c.push((0..n).map(|i| c[i] * c[n - 1 - i]).sum());
    }
    c[k]
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{z : G(z) = y, m_z <= bound} Π X(f_i(z))`, with `X` given by `sizes`
/// and absent elements counting 0.
pub fn free_plain_algebra_count(
    n: u32,
    sizes: &HashMap<PlainElement, u64>,
    y: &PlainElement,
    bound: usize,
) -> Result<u128> {
    if n == 0 || y.level() + 1 != n {
        return Err(Error::LevelMismatch(format!("G of a level-{n} element is not {y}")));
    }
    let overflow = || Error::Overflow("count exceeds u128".into());
    if n == 1 {
        let c = *sizes.get(&PlainElement::point()).unwrap_or(&0) as u128;
        let mut total = 0u128;
        let mut p = 1u128;
        for _ in 0..bound {
            p = p.checked_mul(c).ok_or_else(overflow)?;
            total = total.checked_add(p).ok_or_else(overflow)?;
        }
        return Ok(total);
    }
    let pool: Vec<PlainElement> = sort_canonical(
        sizes
            .iter()
            .filter(|(x, &c)| c > 0 && x.level() + 1 == n)
            .map(|(x, _)| x.clone())
            .collect(),
    );
    let mut total = 0u128;
    for z in from_pool(&pool, bound, Exec::default()) {
        if z.total_g()? != *y {
            continue;
        }
        let mut p = 1u128;
        for f in z.factors() {
            p = p.checked_mul(sizes[f] as u128).ok_or_else(overflow)?;
        }
        total = total.checked_add(p).ok_or_else(overflow)?;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ea2Count {
    pub catalan: u64,
    pub factorial: u64,
    pub multisets: u64,
    pub product: u128,
}

/// Components of the `n`-th space of the free algebra on a set of size `s`:
/// binary shapes with `n - 1` nodes, `Σ_n`, and `Σ_{n-1}`-orbits on `S^{n-1}`.
pub fn free_ea2_component_count(s: u64, n: usize) -> Result<Ea2Count> {
    if n < 2 {
        return Err(Error::RangeViolation("n must be at least 2".into()));
    }
    let c = catalan(n - 1);
    let f = factorial(n);
    let m = if s == 0 { 0 } else { binomial(s + n as u64 - 2, n as u64 - 1) };
    Ok(Ea2Count {
        catalan: c,
        factorial: f,
        multisets: m,
        product: c as u128 * f as u128 * m as u128,
    })
}

/// Distinct printed forms, for set comparisons in tests and reports.
pub fn printed(xs: &[PlainElement]) -> BTreeSet<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        let v: Vec<String> = enumerate(1, 3, 4).iter().map(|x| x.to_string()).collect();
        assert_eq!(v, ["1", "2", "3", "4"]);
        let v = printed(&enumerate(2, 2, 2));
        let want: BTreeSet<String> = ["[1|]", "[2|]", "[1,1|1]", "[2,1|1]", "[2,1|2]", "[1,2|1]", "[2,2|1]", "[2,2|2]"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(v, want);
    }

    #[test]
    fn closure_agrees() {
        for (n, f, a) in [(2, 3, 3), (2, 4, 2), (3, 2, 2), (3, 3, 2)] {
            let x = enumerate(n, f, a);
            let y = enumerate_by_closure(n, f, a);
            assert_eq!(printed(&x).len(), x.len(), "duplicates at {n}");
            assert_eq!(x, y, "n={n} f={f} a={a}");
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        assert_eq!(enumerate_with(3, 3, 2, Exec::Parallel), enumerate(3, 3, 2));
    }

    #[test]
    fn catalan_table() {
        let want = [1, 2, 5, 14, 42, 132, 429, 1430];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(catalan(k + 1), *w);
            assert_eq!(count_binary(k + 1), *w);
        }
    }

    #[test]
    fn plain_algebra_counts() {
        let mut sizes = HashMap::new();
        sizes.insert(PlainElement::point(), 3);
        let got = free_plain_algebra_count(1, &sizes, &PlainElement::point(), 3).unwrap();
        assert_eq!(got, 3 + 9 + 27);
        sizes.insert(PlainElement::point(), 0);
        assert_eq!(free_plain_algebra_count(1, &sizes, &PlainElement::point(), 3).unwrap(), 0);

        let mut two = HashMap::new();
        two.insert(PlainElement::Arity(2), 1);
        let y = PlainElement::Arity(3);
        assert_eq!(free_plain_algebra_count(2, &two, &y, 2).unwrap(), 2);
    }

    #[test]
    fn ea2_counts() {
        let c = free_ea2_component_count(1, 2).unwrap();
        assert_eq!((c.catalan, c.factorial, c.multisets, c.product), (1, 2, 1, 2));
        let c = free_ea2_component_count(2, 3).unwrap();
        assert_eq!((c.catalan, c.factorial, c.multisets, c.product), (2, 6, 3, 36));
        assert_eq!(free_ea2_component_count(0, 4).unwrap().product, 0);
    }
}
