//! Finitely presented groups, coset enumeration, and the binary-tree presentations.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::element::PlainElement;
use crate::error::{Error, Result};
use crate::morphisms::TwoMor2;
use crate::perm;
use crate::tree::PlanarTree;

/// Default coset cap.
pub const MAX_COSETS: usize = 100_000;

/// Letters are `±k` for generator `k` (1-based); negative means inverse.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relators: Vec<Word>,
}

fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn power(w: &[i32], k: usize) -> Word {
    w.iter().copied().cycle().take(w.len() * k).collect()
}

impl Presentation {
    /// Freely reduces every relator and checks generator ranges.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let g = names.len() as i32;
        let mut rs = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(bad) = r.iter().find(|&&l| l == 0 || l.abs() > g) {
                return Err(Error::RangeViolation(format!("letter {bad} with {g} generators")));
            }
            let r = free_reduce(&r);
            if !r.is_empty() {
                rs.push(r);
            }
        }
        Ok(Presentation { names, relators: rs })
    }

    /// Generators named `a1..ag`.
    pub fn numbered(g: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new((1..=g).map(|k| format!("a{k}")).collect(), relators)
    }

    pub fn generators(&self) -> usize {
        self.names.len()
    }

    fn letter(&self, l: i32) -> String {
        let n = &self.names[l.unsigned_abs() as usize - 1];
        if l > 0 {
            n.clone()
        } else {
            format!("{n}^-1")
        }
    }

    /// A relator as `w^k` with `w` primitive.
    fn word_text(&self, r: &[i32], sep: &str) -> String {
        let len = r.len();
        let period = (1..=len)
            .find(|&p| len.is_multiple_of(p) && r.iter().enumerate().all(|(i, &l)| l == r[i % p]))
            .unwrap_or(len);
        let base: Vec<String> = r[..period].iter().map(|&l| self.letter(l)).collect();
        let k = len / period;
        if k == 1 {
            base.join(sep)
        } else if period == 1 {
            format!("{}^{k}", base[0])
        } else {
            format!("({})^{k}", base.join(sep))
        }
    }

    /// Relators as GAP-style words, e.g. `a1*a2*a1*a2*a1*a2`.
    pub fn gap_relators(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| r.iter().map(|&l| self.letter(l)).collect::<Vec<_>>().join("*"))
            .collect()
    }

    /// The same presentation with relator `k` removed.
    pub fn without(&self, k: usize) -> Presentation {
        let mut p = self.clone();
        p.relators.remove(k);
        p
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.relators.iter().map(|r| self.word_text(r, "")).collect();
        write!(f, "<{} | {}>", self.names.join(","), rs.join(","))
    }
}

/// A complete coset table of the trivial subgroup.
#[derive(Clone, Debug)]
pub struct CosetTable {
    /// `rows[c][2(k-1)]` is `c·a_k` and `rows[c][2(k-1)+1]` is `c·a_k^-1`.
    pub rows: Vec<Vec<usize>>,
    /// Cosets defined along the way, dead ones included.
    pub defined: usize,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Closed under every column and every relator traces a loop from every coset.
    pub fn is_consistent(&self, p: &Presentation) -> bool {
        let n = self.rows.len();
        self.rows.iter().all(|r| r.iter().all(|&c| c < n))
            && (0..n).all(|c| {
                p.relators.iter().all(|r| {
                    r.iter().fold(c, |d, &l| self.rows[d][col(l)]) == c
                })
            })
    }
}

fn col(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

const NONE: usize = usize::MAX;

struct Enumerator<'a> {
    p: &'a Presentation,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cap: usize,
}

impl Enumerator<'_> {
    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.cap {
            return Err(Error::Overflow(format!("more than {} cosets", self.cap)));
        }
        let d = self.table.len();
        self.table.push(vec![NONE; 2 * self.p.generators()]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][inv_col(x)] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut k = 0;
        while k < queue.len() {
            let e = queue[k];
            k += 1;
            for x in 0..2 * self.p.generators() {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][inv_col(x)] = NONE;
                let (mu, nu) = (self.rep(e), self.rep(f));
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][inv_col(x)] != NONE {
                    let t = self.table[nu][inv_col(x)];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inv_col(x)] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j > i && self.table[b][inv_col(w[j - 1])] != NONE {
                b = self.table[b][inv_col(w[j - 1])];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = b;
                self.table[b][inv_col(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// HLT coset enumeration over the trivial subgroup.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::RangeViolation("max_cosets must be at least 1".into()));
    }
    let cols = 2 * p.generators();
    let words: Vec<Vec<usize>> = p.relators.iter().map(|r| r.iter().map(|&l| col(l)).collect()).collect();
    let mut e = Enumerator {
        p,
        table: vec![vec![NONE; cols]],
        parent: vec![0],
        cap: max_cosets,
    };
    let mut c = 0;
    while c < e.table.len() {
        for w in &words {
            if !e.live(c) {
                break;
            }
            e.scan_and_fill(c, w)?;
        }
        for x in 0..cols {
            if e.live(c) && e.table[c][x] == NONE {
                e.define(c, x)?;
            }
        }
        c += 1;
    }
    let defined = e.table.len();
    let live: Vec<usize> = (0..defined).filter(|&c| e.live(c)).collect();
    let mut index = vec![NONE; defined];
    for (k, &c) in live.iter().enumerate() {
        index[c] = k;
    }
    let mut rows = Vec::with_capacity(live.len());
    for &c in &live {
        let row: Vec<usize> = e.table[c].clone();
        rows.push(row.into_iter().map(|d| index[e.rep(d)]).collect());
    }
    Ok(CosetTable { rows, defined })
}

pub fn order(p: &Presentation) -> Result<usize> {
    Ok(todd_coxeter(p, MAX_COSETS)?.order())
}

/// `⟨a_1..a_{n-1} | a_i², (a_i a_{i+1})³, (a_i a_j)² for j > i+1⟩`.
pub fn symmetric_presentation(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::RangeViolation(format!("Σ_{n} needs n >= 2")));
    }
    let g = n - 1;
    let mut rs = Vec::new();
    for i in 1..=g as i32 {
        rs.push(vec![i, i]);
    }
    for i in 1..g as i32 {
        rs.push(power(&[i, i + 1], 3));
    }
    for i in 1..=g as i32 {
        for j in i + 2..=g as i32 {
            rs.push(power(&[i, j], 2));
        }
    }
    Presentation::numbered(g, rs)
}

/// Nodes of a binary tree joined where one is attached to another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeStructure {
    pub nodes: usize,
    /// `(u, v)` with `u < v`, 1-based in factor order, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Edges (1-based) at each node.
    pub incidence: Vec<Vec<usize>>,
}

impl EdgeStructure {
    pub fn of(x: &PlainElement) -> Result<Self> {
        if x.level() != 2 || x.factors().iter().any(|f| f.as_arity() != Some(2)) {
            return Err(Error::NotBinary(format!("{x} is not a binary tree")));
        }
        let t = PlanarTree::from_element(x)?;
        let order = t.preorder();
        let mut pos = vec![0; t.node_count()];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k + 1;
        }
        let mut edges = Vec::new();
        for &v in &order {
            for prong in 0..t.arity_of(v) as usize {
                if let Some(c) = t.child(v, prong) {
                    let (a, b) = (pos[v], pos[c]);
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        edges.sort_unstable();
        let mut incidence = vec![Vec::new(); order.len()];
        for (k, &(a, b)) in edges.iter().enumerate() {
            incidence[a - 1].push(k + 1);
            incidence[b - 1].push(k + 1);
        }
        Ok(EdgeStructure {
            nodes: order.len(),
            edges,
            incidence,
        })
    }

    pub fn share_node(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.edges[i - 1];
        let (c, d) = self.edges[j - 1];
        a == c || a == d || b == c || b == d
    }

    /// The node shared by three edges, if any.
    fn common_node(&self, i: usize, j: usize, k: usize) -> bool {
        self.incidence.iter().any(|inc| [i, j, k].iter().all(|e| inc.contains(e)))
    }
}

/// Generators are edges; `a_i²`, `(a_i a_j)³` for edges at a node,
/// `(a_i a_j a_k a_j)²` for `i < j < k` at one node, `(a_i a_j)²` for disjoint edges.
pub fn tree_presentation(x: &PlainElement) -> Result<(Presentation, EdgeStructure)> {
    let es = EdgeStructure::of(x)?;
    let g = es.edges.len();
    let mut rs = Vec::new();
    for i in 1..=g {
        rs.push(vec![i as i32, i as i32]);
    }
    for i in 1..=g {
        for j in i + 1..=g {
            if es.share_node(i, j) {
                rs.push(power(&[i as i32, j as i32], 3));
            }
        }
    }
    for i in 1..=g {
        for j in i + 1..=g {
            for k in j + 1..=g {
                if es.common_node(i, j, k) {
                    rs.push(power(&[i as i32, j as i32, k as i32, j as i32], 2));
                }
            }
        }
    }
    for i in 1..=g {
        for j in i + 1..=g {
            if !es.share_node(i, j) {
                rs.push(power(&[i as i32, j as i32], 2));
            }
        }
    }
    Ok((Presentation::numbered(g, rs)?, es))
}

/// The five-node group with edges `a, b, c, d`, relators exactly as displayed.
pub fn gi_presentation() -> Presentation {
    let (a, b, c, d) = (1, 2, 3, 4);
    let rs = vec![
        vec![a, a],
        vec![b, b],
        vec![c, c],
        vec![d, d],
        power(&[a, b], 3),
        power(&[b, c], 3),
        power(&[a, d], 3),
        power(&[d, b], 3),
        power(&[d, a, b, a], 2),
        power(&[a, c], 2),
        power(&[c, d], 2),
    ];
    Presentation::new(["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(), rs).unwrap()
}

/// Edge generators sent to node transpositions, checked against `Σ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub nodes: usize,
    pub transpositions: Vec<(usize, usize)>,
    pub relators_hold: bool,
    pub generated_order: u64,
    pub presented_order: usize,
    /// Each generator is a valid {2}-morphism of the tree.
    pub two_morphisms: bool,
    pub isomorphic: bool,
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p = perm::identity(n);
    p.swap(a - 1, b - 1);
    p
}

/// Order of the subgroup of `Σ_n` generated by `gens`, by closure.
pub fn generated_order(n: usize, gens: &[Vec<usize>]) -> u64 {
    let start = perm::identity(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = perm::then(&p, g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len() as u64
}

pub fn verify_symmetric_realization(x: &PlainElement) -> Result<Realization> {
    verify_with(x, MAX_COSETS)
}

pub fn verify_with(x: &PlainElement, max_cosets: usize) -> Result<Realization> {
    let (p, es) = tree_presentation(x)?;
    let n = es.nodes;
    let images: Vec<Vec<usize>> = es.edges.iter().map(|&(a, b)| transposition(n, a, b)).collect();
    let eval = |w: &Word| {
        w.iter().fold(perm::identity(n), |acc, &l| {
            let t = &images[l.unsigned_abs() as usize - 1];
            perm::then(&acc, t)
        })
    };
    let relators_hold = p.relators.iter().all(|r| eval(r) == perm::identity(n));
    let generated = generated_order(n, &images);
    let presented = todd_coxeter(&p, max_cosets)?.order();
    let two_morphisms = images.iter().all(|s| TwoMor2::new(x, x, s).is_ok());
    let full = perm::factorial(n);
    Ok(Realization {
        nodes: n,
        transpositions: es.edges.clone(),
        relators_hold,
        generated_order: generated,
        presented_order: presented,
        two_morphisms,
        isomorphic: relators_hold && generated == full && presented as u64 == full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::binary_elements;

    #[test]
    fn trivial_presentations() {
        let p = Presentation::numbered(1, vec![vec![1, 1]]).unwrap();
        assert_eq!(order(&p).unwrap(), 2);
        assert_eq!(p.to_string(), "<a1 | a1^2>");
        let free_cancel = Presentation::numbered(1, vec![vec![1, -1, 1, 1]]).unwrap();
        assert_eq!(free_cancel.relators, vec![vec![1, 1]]);
    }

    #[test]
    fn symmetric_orders() {
        let mut f = 1;
        for n in 2..=6 {
            f *= n;
            let p = symmetric_presentation(n).unwrap();
            let t = todd_coxeter(&p, MAX_COSETS).unwrap();
            assert_eq!(t.order(), f);
            assert!(t.is_consistent(&p));
        }
        assert_eq!(
            symmetric_presentation(3).unwrap().gap_relators()[2],
            "a1*a2*a1*a2*a1*a2"
        );
    }

    #[test]
    fn gi_has_order_120() {
        let p = gi_presentation();
        assert_eq!(
            p.to_string(),
            "<a,b,c,d | a^2,b^2,c^2,d^2,(ab)^3,(bc)^3,(ad)^3,(db)^3,(daba)^2,(ac)^2,(cd)^2>"
        );
        assert_eq!(order(&p).unwrap(), 120);
    }

    #[test]
    fn small_trees() {
        let (p, es) = tree_presentation(&PlainElement::parse("[2,2|1]").unwrap()).unwrap();
        assert_eq!(es.edges, vec![(1, 2)]);
        assert_eq!(p.to_string(), "<a1 | a1^2>");
        let path = PlainElement::parse("[2,2,2,2|1,1,1]").unwrap();
        let (p, _) = tree_presentation(&path).unwrap();
        assert_eq!(order(&p).unwrap(), 24);
        assert!(matches!(
            tree_presentation(&PlainElement::parse("[3|]").unwrap()),
            Err(Error::NotBinary(_))
        ));
    }

    #[test]
    fn every_four_node_shape_is_sigma_4() {
        for x in binary_elements(4) {
            let r = verify_symmetric_realization(&x).unwrap();
            assert!(r.isomorphic && r.two_morphisms, "{x}: {r:?}");
        }
    }

    #[test]
    fn dropping_the_triple_relator_breaks_it() {
        let star = binary_elements(4)
            .into_iter()
            .find(|x| EdgeStructure::of(x).unwrap().incidence.iter().any(|i| i.len() == 3))
            .unwrap();
        let (p, _) = tree_presentation(&star).unwrap();
        let k = p.relators.iter().position(|r| r.len() == 8).unwrap();
        match todd_coxeter(&p.without(k), 20_000) {
            Ok(t) => assert_ne!(t.order(), 24),
            Err(e) => assert!(matches!(e, Error::Overflow(_))),
        }
    }
}
