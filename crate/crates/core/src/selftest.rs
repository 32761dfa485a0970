//! Seeded property batteries shared by the command line and the acceptance target.
//!
//! Every check is a pure function of its bounds and seed. Parallel runs split
//! the work into independent items and merge tallies in item order, so the
//! report is identical in both execution modes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::compose::{
    check_associativity, check_phi_long, check_phi_short, compose, normalize, Strategy,
};
use crate::element::PlainElement;
use crate::enumerate::{self, binary_elements, catalan, count_binary, enumerate_by_closure};
use crate::error::{Error, Result};
use crate::morphisms::{
    complete_square, count_squares_among, enumerate_one, enumerate_two, induced_two_by_trees,
    induced_two_on_composition, OneMor2, TwoMor2,
};
use crate::ordinal::{self, add, cmp, encode, eval_phin, phi, OrdinalNF};
use crate::par::Exec;
use crate::perm;
use crate::presentation::{
    gi_presentation, order, symmetric_presentation, todd_coxeter, tree_presentation,
    verify_symmetric_realization, EdgeStructure,
};
use crate::random::{random_config, random_gamma, Budget};
use crate::tree::PlanarTree;
use crate::unital::{check_runital_bijection, unit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Axioms,
    Oracle,
    Confluence,
    Morphisms,
    Ordinals,
    Groups,
    Counts,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Axioms,
        Suite::Oracle,
        Suite::Confluence,
        Suite::Morphisms,
        Suite::Ordinals,
        Suite::Groups,
        Suite::Counts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Oracle => "oracle",
            Suite::Confluence => "confluence",
            Suite::Morphisms => "morphisms",
            Suite::Ordinals => "ordinals",
            Suite::Groups => "groups",
            Suite::Counts => "counts",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Size {
    Small,
    Medium,
}

impl FromStr for Size {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Size::Small),
            "medium" => Ok(Size::Medium),
            _ => Err(Error::Parse(format!("unknown size '{s}'"))),
        }
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Size::Small => "small",
            Size::Medium => "medium",
        })
    }
}

/// Case and failure counts of one check, with the first counterexample.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first: Option<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            ..Tally::default()
        }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    /// Records `Ok(true)` as a pass; `Ok(false)` and errors as failures.
    pub fn check(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, what),
            Err(e) => self.record(false, || format!("{}: {e}", what())),
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    /// At least one case ran and none failed.
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures == 0
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} cases, {} failures", self.name, self.cases, self.failures)?;
        if let Some(c) = &self.first {
            write!(f, "; first: {c}")?;
        }
        Ok(())
    }
}

/// Runs `body` on each item with its own tally and merges in item order.
fn over<T: Sync>(name: &str, items: &[T], exec: Exec, body: impl Fn(&T, &mut Tally) + Sync + Send) -> Tally {
    let parts = exec.map(items, |item| {
        let mut t = Tally::new(name);
        body(item, &mut t);
        t
    });
    let mut total = Tally::new(name);
    for p in parts {
        total.merge(p);
    }
    total
}

/// A generator for case `k` of a seeded batch, independent of scheduling.
fn case_rng(seed: u64, batch: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ batch.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(k);
    rng
}

fn trees(max_nodes: usize, max_arity: u32) -> Vec<(usize, PlainElement)> {
    PlanarTree::all(max_nodes, max_arity)
        .iter()
        .map(|t| (t.node_count(), t.to_element().unwrap()))
        .collect()
}

/// Level-2 elements keyed by leaf count.
fn by_leaves(ts: &[(usize, PlainElement)]) -> HashMap<usize, Vec<(usize, PlainElement)>> {
    let mut map: HashMap<usize, Vec<(usize, PlainElement)>> = HashMap::new();
    for (n, x) in ts {
        map.entry(x.total_g().unwrap().m()).or_default().push((*n, x.clone()));
    }
    map
}

/// Every `(x, i, y)` of planar trees with at most `max_nodes` nodes in total:
/// `compose` against node substitution, and the shuffle against the node map.
pub fn oracle(max_nodes: usize, max_arity: u32, exec: Exec) -> Tally {
    let ts = PlanarTree::all(max_nodes.saturating_sub(1), max_arity);
    let items: Vec<(PlanarTree, PlainElement)> = ts.iter().map(|t| (t.clone(), t.to_element().unwrap())).collect();
    let by_g = by_leaves(&items.iter().map(|(t, x)| (t.node_count(), x.clone())).collect::<Vec<_>>());
    let trees_of: HashMap<PlainElement, PlanarTree> = items.iter().map(|(t, x)| (x.clone(), t.clone())).collect();
    over("tree substitution", &items, exec, |(tx, x), tally| {
        for i in 1..=x.m() {
            let a = x.factors()[i - 1].m();
            for (ny, y) in by_g.get(&a).into_iter().flatten() {
                if tx.node_count() + ny > max_nodes {
                    continue;
                }
                let ty = &trees_of[y];
                let what = || format!("{x} o_{i} {y}");
                let ok = match (compose(x, i, y), tx.substitute(i, ty)) {
                    (Ok((z, sh)), Ok((tz, xm, ym))) => {
                        tz.matches(&z)
                            && sh.phi_pairs().iter().all(|&(j, v)| xm[j - 1] == v)
                            && sh.psi_pairs().iter().all(|&(r, v)| ym[r - 1] == v)
                    }
                    _ => false,
                };
                tally.record(ok, what);
            }
        }
    })
}

/// Associativity over every level-2 configuration with `m_x + m_y + m_z <= max_nodes`.
pub fn associativity_exhaustive(max_nodes: usize, max_arity: u32, exec: Exec) -> Tally {
    let ts = trees(max_nodes.saturating_sub(2), max_arity);
    let by_g = by_leaves(&ts);
    let xs: Vec<_> = ts.iter().filter(|(n, _)| *n >= 2).cloned().collect();
    over("associativity, level 2", &xs, exec, |(nx, x), tally| {
        for j in 2..=x.m() {
            for i in 1..j {
                let ai = x.factors()[i - 1].m();
                let aj = x.factors()[j - 1].m();
                for (ny, y) in by_g.get(&ai).into_iter().flatten() {
                    for (nz, z) in by_g.get(&aj).into_iter().flatten() {
                        if nx + ny + nz > max_nodes {
                            continue;
                        }
                        tally.check(check_associativity(x, i, y, j, z).map(|c| c.holds), || {
                            format!("x={x} i={i} y={y} j={j} z={z}")
                        });
                    }
                }
            }
        }
    })
}

/// Both φ identities over every level-2 configuration whose three inputs
/// have at most `max_nodes` nodes together.
pub fn phi_exhaustive(max_nodes: usize, max_arity: u32, exec: Exec) -> Tally {
    let ts = trees(max_nodes.saturating_sub(2), max_arity);
    let by_g = by_leaves(&ts);
    let xs: Vec<_> = ts.iter().filter(|(n, _)| *n >= 3).cloned().collect();
    let none = Vec::new();
    over("phi identities, level 2", &xs, exec, |(nx, x), tally| {
        let of = |s: usize| by_g.get(&x.factors()[s - 1].m()).unwrap_or(&none);
        for k in 3..=x.m() {
            for j in 2..k {
                for i in 1..j {
                    for (ny, y) in of(i) {
                        for (nt, t) in of(k) {
                            if nx + ny + nt <= max_nodes {
                                tally.check(check_phi_short(x, i, y, j, k, t).map(|c| c.holds), || {
                                    format!("short x={x} i={i} y={y} j={j} k={k} t={t}")
                                });
                            }
                        }
                        for (nz, z) in of(j) {
                            if nx + ny + nz <= max_nodes {
                                tally.check(check_phi_long(x, i, y, j, z, k).map(|c| c.holds), || {
                                    format!("long x={x} i={i} y={y} j={j} z={z} k={k}")
                                });
                            }
                        }
                    }
                }
            }
        }
    })
}

/// `count` random composable triples at `level`.
pub fn associativity_random(level: u32, count: u64, seed: u64, budget: Budget, exec: Exec) -> Tally {
    let ks: Vec<u64> = (0..count).collect();
    over(&format!("associativity, level {level}"), &ks, exec, |&k, tally| {
        let mut rng = case_rng(seed, 100 + level as u64, k);
        let (x, ys) = random_config(&mut rng, level, 2, budget);
        let ((i, y), (j, z)) = (&ys[0], &ys[1]);
        tally.check(check_associativity(&x, *i, y, *j, z).map(|c| c.holds), || {
            format!("x={x} i={i} y={y} j={j} z={z}")
        });
    })
}

/// `count` random configurations at `level`, each checked against both φ identities.
pub fn phi_random(level: u32, count: u64, seed: u64, budget: Budget, exec: Exec) -> Tally {
    let ks: Vec<u64> = (0..count).collect();
    over(&format!("phi identities, level {level}"), &ks, exec, |&k, tally| {
        let mut rng = case_rng(seed, 200 + level as u64, k);
        let (x, ys) = random_config(&mut rng, level, 3, budget);
        let ((i, y), (j, z), (k, t)) = (&ys[0], &ys[1], &ys[2]);
        let r = check_phi_short(&x, *i, y, *j, *k, t)
            .and_then(|a| Ok(a.holds && check_phi_long(&x, *i, y, *j, z, *k)?.holds));
        tally.check(r, || format!("x={x} i={i} y={y} j={j} z={z} k={k} t={t}"));
    })
}

/// Right and left unit laws for every enumerated element at `level`.
pub fn unit_laws(level: u32, max_factors: usize, max_arity: u32, exec: Exec) -> Tally {
    let xs = enumerate::enumerate_with(level, max_factors, max_arity, exec);
    over(&format!("unit laws, level {level}"), &xs, exec, |x, tally| {
        for k in 1..=x.m() {
            let r = x.slot(k).and_then(|f| compose(x, k, &unit(&f))).map(|(z, sh)| {
                z == *x && sh.psi(1) == k && (1..=x.m()).all(|j| j == k || sh.phi(j) == j)
            });
            tally.check(r, || format!("{x} o_{k} unit"));
        }
        let r = x
            .total_g()
            .and_then(|g| compose(&unit(&g), 1, x))
            .map(|(z, _)| z == *x);
        tally.check(r, || format!("unit o_1 {x}"));
    })
}

/// Left-first, right-first and three random swap orders agree on `count`
/// random raw sequences.
pub fn confluence(level: u32, count: u64, seed: u64, exec: Exec) -> Tally {
    let ks: Vec<u64> = (0..count).collect();
    let max_factors = if level == 2 { 6 } else { 4 };
    over(&format!("confluence, level {level}"), &ks, exec, |&k, tally| {
        let mut rng = case_rng(seed, 300 + level as u64, k);
        let factors = rng.gen_range(2..=max_factors);
        let g = random_gamma(&mut rng, level, factors, Budget::SMALL);
        let mut strategies = vec![Strategy::LeftFirst, Strategy::RightFirst];
        strategies.extend((0..3).map(|_| Strategy::Random(rng.gen())));
        let r = strategies
            .iter()
            .map(|&s| normalize(&g, s))
            .collect::<Result<Vec<_>>>()
            .map(|outs| outs.windows(2).all(|w| w[0] == w[1]));
        tally.check(r, || format!("{g}"));
    })
}

/// Every ({1}, {2}) pair out of every tree within the bounds completes to a
/// commuting square, and brute force finds exactly one.
pub fn cube_like(max_nodes: usize, max_arity: u32, exec: Exec) -> Tally {
    let xs: Vec<_> = trees(max_nodes, max_arity).into_iter().map(|(_, x)| x).collect();
    over("cube-like squares", &xs, exec, |x, tally| {
        let (Ok(ones), Ok(twos)) = (enumerate_one(x), enumerate_two(x)) else {
            tally.record(false, || format!("{x}: enumeration failed"));
            return;
        };
        for g in &twos {
            let Ok(far) = enumerate_one(&g.target) else {
                tally.record(false, || format!("{}: enumeration failed", g.target));
                continue;
            };
            for f in &ones {
                let r = complete_square(f, g).and_then(|sq| {
                    Ok(sq.commutes() && count_squares_among(f, g, &far)? == 1)
                });
                tally.check(r, || format!("{x} f={:?} sigma={:?}", f.node_perms, g.sigma));
            }
        }
    })
}

/// The induced {2}-morphism on `x ∘_i y` from the shuffles agrees with the
/// one read off tree substitution, for every composable pair within the bound.
pub fn equivariance(max_nodes: usize, max_arity: u32, exec: Exec) -> Tally {
    let ts = trees(max_nodes.saturating_sub(1), max_arity);
    let by_g = by_leaves(&ts);
    over("equivariance of composition", &ts, exec, |(nx, x), tally| {
        let Ok(fs) = enumerate_two(x) else { return };
        for i in 1..=x.m() {
            for (ny, y) in by_g.get(&x.factors()[i - 1].m()).into_iter().flatten() {
                if nx + ny > max_nodes {
                    continue;
                }
                let Ok(gs) = enumerate_two(y) else { continue };
                for f in &fs {
                    for g in &gs {
                        let r = induced_two_on_composition(x, i, y, f, g).and_then(|a| {
                            let b = induced_two_by_trees(x, i, y, f, g)?;
                            let i2 = perm::inverse(&f.sigma)[i - 1];
                            let t = compose(&f.target, i2, &g.target)?.0;
                            Ok(a == b && a.target == t)
                        });
                        tally.check(r, || {
                            format!("x={x} i={i} y={y} f={:?} g={:?}", f.sigma, g.sigma)
                        });
                    }
                }
            }
        }
    })
}

fn one_laws(x: &PlainElement, tally: &mut Tally) -> Result<()> {
    let id = OneMor2::identity(x)?;
    for f in enumerate_one(x)? {
        let back = f.then(&f.inverse()?)?;
        tally.record(back == id && id.then(&f)? == f, || format!("{x} identity/inverse {:?}", f.node_perms));
        for g in enumerate_one(&f.target)? {
            let h = f.then(&g)?;
            let ok = h.target == g.target && h.leaf_perm == perm::then(&g.leaf_perm, &f.leaf_perm);
            tally.record(ok, || format!("{x} {:?} then {:?}", f.node_perms, g.node_perms));
        }
    }
    Ok(())
}

fn two_laws(x: &PlainElement, tally: &mut Tally) -> Result<()> {
    let id = TwoMor2::identity(x)?;
    for f in enumerate_two(x)? {
        let back = f.then(&f.inverse()?)?;
        tally.record(back == id && id.then(&f)? == f, || format!("{x} identity/inverse {:?}", f.sigma));
        for g in enumerate_two(&f.target)? {
            let h = f.then(&g)?;
            tally.record(h.target == g.target, || format!("{x} {:?} then {:?}", f.sigma, g.sigma));
        }
    }
    Ok(())
}

/// Identity, inverse, closure and leaf functoriality for both kinds of morphism.
pub fn groupoid_laws(max_nodes: usize, max_arity: u32, exec: Exec) -> Tally {
    let xs: Vec<_> = trees(max_nodes, max_arity).into_iter().map(|(_, x)| x).collect();
    over("groupoid laws", &xs, exec, |x, tally| {
        if let Err(e) = one_laws(x, tally).and_then(|_| two_laws(x, tally)) {
            tally.record(false, || format!("{x}: {e}"));
        }
    })
}

/// `Φ_n(encode(β, n)) = β` for `count` random `β < φ_n(0)` of depth at most `depth`.
pub fn ordinal_round_trip(n: u32, count: u64, depth: usize, seed: u64, exec: Exec) -> Tally {
    let ks: Vec<u64> = (0..count).collect();
    over(&format!("ordinal round trip, n = {n}"), &ks, exec, |&k, tally| {
        let mut rng = case_rng(seed, 400 + n as u64, k);
        let b = ordinal::random_below(&mut rng, n, depth);
        let r = encode(&b, n).and_then(|z| Ok(eval_phin(&z, None)? == b));
        tally.check(r, || format!("beta={b}"));
    })
}

/// The explicit `Φ_2` image over `≤ 4` factors and arities `≤ 3` hits the
/// listed ordinals and stays below `φ_2(0)`. Finite values only come from
/// corollas, so `4` is looked up with arity 4 allowed.
pub fn phi2_image() -> Tally {
    let mut tally = Tally::new("phi2 image");
    let (small, wide) = match (ordinal::image_phi2(4, 3), ordinal::image_phi2(4, 4)) {
        (Ok(s), Ok(w)) => (s, w),
        (Err(e), _) | (_, Err(e)) => {
            tally.record(false, || e.to_string());
            return tally;
        }
    };
    for s in ["1", "2", "3", "w", "w+1", "w+2", "w+w", "w^(2)", "w^(2)+w", "w^(w)"] {
        let b = ordinal::parse(s).unwrap();
        tally.record(small.contains(&b), || format!("{b} missing"));
    }
    let four = OrdinalNF::nat(4);
    tally.record(!small.contains(&four) && wide.contains(&four), || "4 outside the corollas".into());
    let eps = phi(&OrdinalNF::nat(2), &OrdinalNF::zero()).unwrap();
    for b in wide.iter() {
        tally.record(cmp(b, &eps).is_lt(), || format!("{b} is not below phi(2,0)"));
    }
    tally
}

/// Order and addition laws on random notations.
pub fn ordinal_laws(count: u64, seed: u64, exec: Exec) -> Tally {
    let ks: Vec<u64> = (0..count).collect();
    over("ordinal order and sums", &ks, exec, |&k, tally| {
        let mut rng = case_rng(seed, 500, k);
        let [a, b, c]: [OrdinalNF; 3] = std::array::from_fn(|_| ordinal::random_below(&mut rng, 4, 3));
        let total = cmp(&a, &b) == cmp(&b, &a).reverse()
            && (!(a < b && b < c) || a < c)
            && add(&add(&a, &b), &c) == add(&a, &add(&b, &c))
            && add(&a, &OrdinalNF::zero()) == a
            && add(&OrdinalNF::zero(), &a) == a;
        tally.record(total, || format!("a={a} b={b} c={c}"));
        // A smaller subscript is absorbed by a larger one.
        let lo = rng.gen_range(1..3u64);
        let big = phi(&OrdinalNF::nat(lo + 1), &b).unwrap();
        let r = phi(&OrdinalNF::nat(lo), &big).map(|v| v == big);
        tally.check(r, || format!("phi({lo}, {big})"));
    })
}

/// `|⟨Σ_n presentation⟩| = n!` for `n = 2..=max_n`.
pub fn symmetric_orders(max_n: usize) -> Tally {
    let mut tally = Tally::new("symmetric presentations");
    for n in 2..=max_n {
        let r = symmetric_presentation(n).and_then(|p| order(&p)).map(|o| o as u64 == perm::factorial(n));
        tally.check(r, || format!("n={n}"));
    }
    tally
}

/// Every binary element with at most `max_nodes` nodes presents `Σ_n` and
/// its edge transpositions realize it.
pub fn tree_presentations(max_nodes: usize, exec: Exec) -> Tally {
    let xs: Vec<PlainElement> = (1..=max_nodes).flat_map(binary_elements).collect();
    over("tree presentations", &xs, exec, |x, tally| {
        let r = verify_symmetric_realization(x).map(|rz| {
            rz.isomorphic
                && rz.relators_hold
                && rz.two_morphisms
                && rz.presented_order as u64 == perm::factorial(x.m())
                && rz.generated_order == perm::factorial(x.m())
        });
        tally.check(r, || format!("{x}"));
    })
}

/// The displayed five-node presentation has order 120, and dropping a
/// triple relator breaks it.
pub fn gi_checks() -> Tally {
    let mut tally = Tally::new("five-node presentation");
    let gi = gi_presentation();
    tally.check(order(&gi).map(|o| o == 120), || "order of G_i".into());
    let star = binary_elements(4)
        .into_iter()
        .find(|x| EdgeStructure::of(x).is_ok_and(|e| e.incidence.iter().any(|i| i.len() == 3)));
    let r = star
        .ok_or_else(|| Error::NotBinary("no node meets three edges".into()))
        .and_then(|x| tree_presentation(&x))
        .and_then(|(p, _)| {
            let k = p
                .relators
                .iter()
                .position(|w| w.len() == 8)
                .ok_or_else(|| Error::NotBinary("no triple relator".into()))?;
            match todd_coxeter(&p.without(k), 20_000) {
                Ok(t) => Ok(t.order() != 24),
                Err(Error::Overflow(_)) => Ok(true),
                Err(e) => Err(e),
            }
        });
    tally.check(r, || "dropping a triple relator keeps order 24".into());
    tally
}

/// Catalan counts for `k = 1..=max_k` against the recurrence and the table.
pub fn catalan_table(max_k: usize) -> Tally {
    const TABLE: [u64; 8] = [1, 2, 5, 14, 42, 132, 429, 1430];
    let mut tally = Tally::new("binary counts");
    for k in 1..=max_k {
        let c = count_binary(k);
        let ok = c == catalan(k) && TABLE.get(k - 1).is_none_or(|&t| t == c);
        tally.record(ok, || format!("k={k}: {c} binary elements"));
    }
    tally
}

/// Enumeration against composition closure, component counts, and the
/// R-unital bijection.
pub fn count_checks(bounds: &[(u32, usize, u32)], exec: Exec) -> Tally {
    let mut tally = over("enumeration", bounds, exec, |&(n, f, a), tally| {
        let x = enumerate::enumerate_with(n, f, a, Exec::Sequential);
        let y = enumerate_by_closure(n, f, a);
        tally.record(x == y && enumerate::printed(&x).len() == x.len(), || {
            format!("n={n} factors<={f} arity<={a}: {} vs {}", x.len(), y.len())
        });
        for z in &x {
            let back = PlainElement::parse(&z.to_string());
            tally.record(back.as_ref() == Ok(z), || format!("print/parse {z}"));
        }
    });
    for (s, n, want) in [(1, 2, 2u128), (2, 3, 36), (0, 4, 0), (3, 4, 5 * 24 * 10)] {
        let r = enumerate::free_ea2_component_count(s, n).map(|c| c.product == want);
        tally.check(r, || format!("component count s={s} n={n}"));
    }
    let mut prev = 0u128;
    for c in 0..4u64 {
        let sizes: HashMap<_, _> = [(PlainElement::point(), c)].into_iter().collect();
        let r = enumerate::free_plain_algebra_count(1, &sizes, &PlainElement::point(), 3);
        tally.check(r.map(|v| v == (1..=3).map(|e| (c as u128).pow(e)).sum() && v >= prev), || {
            format!("plain algebra count c={c}")
        });
        prev = enumerate::free_plain_algebra_count(1, &sizes, &PlainElement::point(), 3).unwrap_or(0);
    }
    for (n, f, a) in [(1, 1, 10), (2, 3, 3)] {
        let r = check_runital_bijection(n, f, a).map(|rep| rep.bijective && rep.plain == rep.normal);
        tally.check(r, || format!("R-unital bijection n={n}"));
    }
    tally
}

/// The outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub size: Size,
    pub checks: Vec<Tally>,
}

impl Report {
    pub fn cases(&self) -> u64 {
        self.checks.iter().map(|t| t.cases).sum()
    }

    pub fn failures(&self) -> u64 {
        self.checks.iter().map(|t| t.failures).sum()
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find_map(|t| t.first.as_deref())
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Tally::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "seed": self.seed,
            "size": self.size.to_string(),
            "cases": self.cases(),
            "failures": self.failures(),
            "first_failure": self.first_failure(),
            "checks": self.checks.iter().map(|t| json!({
                "name": t.name,
                "cases": t.cases,
                "failures": t.failures,
                "first": t.first,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} seed {} size {}", self.suite, self.seed, self.size)?;
        for t in &self.checks {
            writeln!(f, "  {t}")?;
        }
        write!(
            f,
            "{}: {} cases, {} failures",
            if self.passed() { "ok" } else { "FAILED" },
            self.cases(),
            self.failures()
        )
    }
}

pub fn run(suite: Suite, seed: u64, size: Size, exec: Exec) -> Report {
    let medium = size == Size::Medium;
    let random = if medium { 10_000 } else { 300 };
    let checks = match suite {
        Suite::Axioms => {
            let nodes = if medium { 6 } else { 5 };
            vec![
                associativity_exhaustive(nodes, 3, exec),
                phi_exhaustive(nodes, 3, exec),
                associativity_random(3, random, seed, Budget::SMALL, exec),
                associativity_random(4, random, seed, Budget::SMALL, exec),
                phi_random(3, random, seed, Budget::SMALL, exec),
                phi_random(4, random, seed, Budget::SMALL, exec),
                unit_laws(2, 4, 3, exec),
                unit_laws(3, 3, 2, exec),
            ]
        }
        Suite::Oracle => vec![oracle(6, 3, exec)],
        Suite::Confluence => {
            let n = if medium { 2_000 } else { 200 };
            vec![confluence(2, n, seed, exec), confluence(3, n, seed, exec)]
        }
        Suite::Morphisms => {
            let (nodes, more) = if medium { (4, 5) } else { (3, 4) };
            vec![
                cube_like(nodes, 2, exec),
                cube_like(nodes - 1, 3, exec),
                equivariance(more, 3, exec),
                groupoid_laws(more, 2, exec),
            ]
        }
        Suite::Ordinals => {
            let n = if medium { 500 } else { 100 };
            let mut v: Vec<Tally> = (1..=4).map(|k| ordinal_round_trip(k, n, 5, seed, exec)).collect();
            v.push(phi2_image());
            v.push(ordinal_laws(n, seed, exec));
            v
        }
        Suite::Groups => {
            let nodes = if medium { 6 } else { 5 };
            vec![symmetric_orders(nodes), tree_presentations(nodes, exec), gi_checks()]
        }
        Suite::Counts => {
            let bounds: &[(u32, usize, u32)] = if medium {
                &[(2, 3, 3), (2, 4, 2), (3, 2, 2), (3, 3, 2), (4, 2, 2)]
            } else {
                &[(2, 3, 3), (3, 2, 2)]
            };
            vec![catalan_table(8), count_checks(bounds, exec)]
        }
    };
    Report {
        suite,
        seed,
        size,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("cubes".parse::<Suite>().is_err());
        assert_eq!("medium".parse::<Size>().unwrap(), Size::Medium);
    }

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::new("t");
        t.record(true, || "a".into());
        t.record(false, || "b".into());
        t.record(false, || "c".into());
        assert_eq!((t.cases, t.failures, t.first.as_deref()), (3, 2, Some("b")));
        assert!(!t.passed());
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Counts, Suite::Groups, Suite::Confluence] {
            let r = run(s, 7, Size::Small, Exec::default());
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(Suite::Confluence, 3, Size::Small, Exec::Sequential);
        let b = run(Suite::Confluence, 3, Size::Small, Exec::Parallel);
        assert_eq!(a, b);
    }
}
