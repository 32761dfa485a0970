//! Planar rooted trees: the level-2 oracle.
//!
//! Nothing here calls into [`crate::compose`]; trees are built by grafting
//! corollas onto leaves and read back in preorder.

use crate::element::PlainElement;
use crate::error::{Error, Result};

/// A planar tree with nodes stored in an arena.
#[derive(Clone, Debug)]
pub struct PlanarTree {
    pub(crate) arity: Vec<u32>,
    pub(crate) children: Vec<Vec<Option<usize>>>,
    pub(crate) root: usize,
}

impl PlanarTree {
    pub fn corolla(arity: u32) -> Self {
        PlanarTree {
            arity: vec![arity],
            children: vec![vec![None; arity as usize]],
            root: 0,
        }
    }

    /// Grafts corolla `t+1` onto leaf `indices[t]` of the tree built so far.
    ///
    /// Node ids follow the factor order.
    pub fn from_parts(arities: &[u32], indices: &[usize]) -> Result<Self> {
        if arities.is_empty() || indices.len() + 1 != arities.len() {
            return Err(Error::InvalidSequence("factor/index counts disagree".into()));
        }
        let mut t = PlanarTree::corolla(arities[0]);
        for (k, &i) in indices.iter().enumerate() {
            let leaves = t.leaves();
            let &(node, prong) = leaves.get(i.wrapping_sub(1)).ok_or_else(|| {
                Error::RangeViolation(format!("leaf {i} of {}", leaves.len()))
            })?;
            let id = t.arity.len();
            t.arity.push(arities[k + 1]);
            t.children.push(vec![None; arities[k + 1] as usize]);
            t.children[node][prong] = Some(id);
        }
        Ok(t)
    }

    pub fn from_element(x: &PlainElement) -> Result<Self> {
        match x.level() {
            1 => Ok(PlanarTree::corolla(x.m() as u32)),
            2 => {
                let arities: Vec<u32> = x.factors().iter().map(|f| f.m() as u32).collect();
                PlanarTree::from_parts(&arities, x.indices())
            }
            l => Err(Error::LevelMismatch(format!("trees model level 2, got {l}"))),
        }
    }

    pub fn node_count(&self) -> usize {
        self.arity.len()
    }

    pub fn arity_of(&self, node: usize) -> u32 {
        self.arity[node]
    }

    pub fn child(&self, node: usize, prong: usize) -> Option<usize> {
        self.children[node][prong]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Node ids in preorder, children visited left to right.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.arity.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            for c in self.children[v].iter().rev().flatten() {
                stack.push(*c);
            }
        }
        out
    }

    /// Open prongs `(node, prong)` left to right.
    pub fn leaves(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.walk_leaves(self.root, &|_| true, &mut out);
        out
    }

    fn walk_leaves(&self, v: usize, present: &dyn Fn(usize) -> bool, out: &mut Vec<(usize, usize)>) {
        for (p, c) in self.children[v].iter().enumerate() {
            match c {
                Some(c) if present(*c) => self.walk_leaves(*c, present, out),
                _ => out.push((v, p)),
            }
        }
    }

    /// Preorder arities and, for each later node, the leaf it occupies among
    /// the leaves of the tree spanned by the nodes before it.
    pub fn to_parts(&self) -> (Vec<u32>, Vec<usize>) {
        let order = self.preorder();
        let mut rank = vec![usize::MAX; self.arity.len()];
        for (k, &v) in order.iter().enumerate() {
            rank[v] = k;
        }
        let mut parent = vec![(usize::MAX, 0); self.arity.len()];
        for v in 0..self.arity.len() {
            for (p, c) in self.children[v].iter().enumerate() {
                if let Some(c) = c {
                    parent[*c] = (v, p);
                }
            }
        }
        let arities = order.iter().map(|&v| self.arity[v]).collect();
        let mut indices = Vec::with_capacity(order.len().saturating_sub(1));
        for (k, &v) in order.iter().enumerate().skip(1) {
            let mut leaves = Vec::new();
            self.walk_leaves(self.root, &|c| rank[c] < k, &mut leaves);
            let pos = leaves.iter().position(|&l| l == parent[v]).unwrap();
            indices.push(pos + 1);
        }
        (arities, indices)
    }

    pub fn to_element(&self) -> Result<PlainElement> {
        let (arities, indices) = self.to_parts();
        let factors = arities
            .into_iter()
            .map(PlainElement::arity)
            .collect::<Result<Vec<_>>>()?;
        crate::compose::make(factors, indices)
    }

    /// True when the tree reads back as the canonical data of `x`.
    pub fn matches(&self, x: &PlainElement) -> bool {
        let (arities, indices) = self.to_parts();
        x.level() == 2
            && x.indices() == indices.as_slice()
            && x.factors().iter().map(|f| f.m() as u32).eq(arities)
    }

    /// Replaces the node at preorder position `pos` by `y`, hanging its old
    /// subtrees from y's leaves in order.
    ///
    /// Returns the new tree and the preorder positions of x's nodes (0 at
    /// `pos`) and of y's nodes.
    pub fn substitute(&self, pos: usize, y: &PlanarTree) -> Result<(PlanarTree, Vec<usize>, Vec<usize>)> {
        let xo = self.preorder();
        let target = *xo
            .get(pos.wrapping_sub(1))
            .ok_or_else(|| Error::RangeViolation(format!("node {pos} of {}", xo.len())))?;
        let yl = y.leaves();
        if yl.len() != self.arity[target] as usize {
            return Err(Error::NotComposable(format!(
                "{} leaves cannot replace an arity-{} node",
                yl.len(),
                self.arity[target]
            )));
        }
        let off = self.arity.len();
        let mut t = PlanarTree {
            arity: self.arity.clone(),
            children: self.children.clone(),
            root: self.root,
        };
        t.arity.extend_from_slice(&y.arity);
        for ch in &y.children {
            t.children.push(ch.iter().map(|c| c.map(|c| c + off)).collect());
        }
        for (p, &(n, q)) in yl.iter().enumerate() {
            t.children[n + off][q] = self.children[target][p];
        }
        let new_root = y.root + off;
        if target == self.root {
            t.root = new_root;
        } else {
            for ch in t.children.iter_mut().take(off) {
                for c in ch.iter_mut() {
                    if *c == Some(target) {
                        *c = Some(new_root);
                    }
                }
            }
        }
        t.children[target].clear();
        // Compact away the removed node, then rank.
        let order = t.preorder();
        let mut rank = vec![0; t.arity.len()];
        for (k, &v) in order.iter().enumerate() {
            rank[v] = k + 1;
        }
        let x_map = xo.iter().map(|&v| if v == target { 0 } else { rank[v] }).collect();
        let y_map = y.preorder().iter().map(|&v| rank[v + off]).collect();
        let mut relabel = vec![usize::MAX; t.arity.len()];
        for (k, &v) in order.iter().enumerate() {
            relabel[v] = k;
        }
        let compact = PlanarTree {
            arity: order.iter().map(|&v| t.arity[v]).collect(),
            children: order
                .iter()
                .map(|&v| t.children[v].iter().map(|c| c.map(|c| relabel[c])).collect())
                .collect(),
            root: 0,
        };
        Ok((compact, x_map, y_map))
    }

    /// Reorders each node's prongs: old prong `p` of node `v` moves to `perms[v][p]`.
    ///
    /// `perms` is indexed by preorder position and uses 0-based prongs.
    pub fn permute_prongs(&self, perms: &[Vec<usize>]) -> PlanarTree {
        let order = self.preorder();
        let mut t = self.clone();
        for (k, &v) in order.iter().enumerate() {
            let mut ch = vec![None; self.children[v].len()];
            for (p, c) in self.children[v].iter().enumerate() {
                ch[perms[k][p]] = *c;
            }
            t.children[v] = ch;
        }
        t
    }

    /// All trees with at most `max_nodes` nodes and arities in `1..=max_arity`.
    pub fn all(max_nodes: usize, max_arity: u32) -> Vec<PlanarTree> {
        PlanarTree::all_in(max_nodes, 1, max_arity)
    }

    /// All trees with at most `max_nodes` nodes and arities in `min_arity..=max_arity`.
    pub fn all_in(max_nodes: usize, min_arity: u32, max_arity: u32) -> Vec<PlanarTree> {
        let mut by_size: Vec<Vec<PlanarTree>> = vec![Vec::new(); max_nodes + 1];
        for n in 1..=max_nodes {
            let mut out = Vec::new();
            for a in min_arity..=max_arity {
                // Distribute n-1 nodes among a prongs, each prong empty or a tree.
                let mut acc = Vec::new();
                forests(a as usize, n - 1, &by_size, &mut Vec::new(), &mut acc);
                for forest in acc {
                    out.push(PlanarTree::join(a, &forest));
                }
            }
            by_size[n] = out;
        }
        by_size.into_iter().flatten().collect()
    }

    fn join(a: u32, kids: &[Option<PlanarTree>]) -> PlanarTree {
        let mut t = PlanarTree::corolla(a);
        for (p, k) in kids.iter().enumerate() {
            if let Some(k) = k {
                let off = t.arity.len();
                t.arity.extend_from_slice(&k.arity);
                for ch in &k.children {
                    t.children.push(ch.iter().map(|c| c.map(|c| c + off)).collect());
                }
                t.children[0][p] = Some(k.root + off);
            }
        }
        t
    }
}

fn forests(
    slots: usize,
    budget: usize,
    by_size: &[Vec<PlanarTree>],
    cur: &mut Vec<Option<PlanarTree>>,
    out: &mut Vec<Vec<Option<PlanarTree>>>,
) {
    if cur.len() == slots {
        if budget == 0 {
            out.push(cur.clone());
        }
        return;
    }
    cur.push(None);
    forests(slots, budget, by_size, cur, out);
    cur.pop();
    for s in 1..=budget {
        for t in &by_size[s] {
            cur.push(Some(t.clone()));
            forests(slots, budget - s, by_size, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> PlainElement {
        PlainElement::parse(s).unwrap()
    }

    #[test]
    fn preorder_reads_back_canonical_data() {
        for s in ["[2|]", "[2,2|1]", "[2,2|2]", "[3,2,4,3|1,4,5]", "[2,2,2|1,3]"] {
            let t = PlanarTree::from_element(&e(s)).unwrap();
            assert!(t.matches(&e(s)), "{s}");
        }
    }

    #[test]
    fn leaf_count_is_total() {
        let t = PlanarTree::from_element(&e("[3,2,4,3|1,4,5]")).unwrap();
        assert_eq!(t.leaves().len(), 9);
    }

    #[test]
    fn substitution_at_root() {
        let x = PlanarTree::from_element(&e("[2,2|2]")).unwrap();
        let y = PlanarTree::from_element(&e("[2,1|1]")).unwrap();
        let (z, xm, ym) = x.substitute(1, &y).unwrap();
        assert_eq!(z.to_parts(), (vec![2, 1, 2], vec![1, 2]));
        assert_eq!(xm, vec![0, 3]);
        assert_eq!(ym, vec![1, 2]);
    }

    #[test]
    fn tree_counts() {
        // Arities {1,2}: 2 trees on one node, 6 on two, 22 on three.
        let trees = PlanarTree::all(3, 2);
        assert_eq!(trees.len(), 30);
        let mut parts: Vec<_> = trees.iter().map(|t| t.to_parts()).collect();
        parts.sort();
        parts.dedup();
        assert_eq!(parts.len(), 30);
    }
}
