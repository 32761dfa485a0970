//! Text drawings: indented ASCII trees and Graphviz DOT.

use std::fmt::Write;

use crate::compose::decompose_head;
use crate::element::PlainElement;
use crate::error::{Error, Result};
use crate::tree::PlanarTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::Parse(format!("unknown format '{s}'"))),
        }
    }
}

pub fn render(x: &PlainElement, format: Format) -> Result<String> {
    if x.level() > 3 {
        return Err(Error::LevelMismatch(format!("cannot draw level {}", x.level())));
    }
    Ok(match format {
        Format::Ascii => ascii(x)?,
        Format::Dot => dot(x)?,
    })
}

fn tree_lines(t: &PlanarTree, v: usize, prefix: &str, out: &mut String, label: &dyn Fn(usize) -> String) {
    let n = t.arity_of(v) as usize;
    for p in 0..n {
        let last = p + 1 == n;
        let (branch, cont) = if last { ("└─ ", "   ") } else { ("├─ ", "│  ") };
        match t.child(v, p) {
            Some(c) => {
                let _ = writeln!(out, "{prefix}{branch}{}", label(c));
                tree_lines(t, c, &format!("{prefix}{cont}"), out, label);
            }
            None => {
                let _ = writeln!(out, "{prefix}{branch}·");
            }
        }
    }
}

fn ascii_tree(t: &PlanarTree, prefix: &str, out: &mut String) {
    let label = |v: usize| format!("({})", t.arity_of(v));
    let _ = writeln!(out, "{prefix}{}", label(t.root()));
    tree_lines(t, t.root(), prefix, out, &label);
}

fn ascii(x: &PlainElement) -> Result<String> {
    let mut out = String::new();
    match x.level() {
        0 => out.push_str("*\n"),
        1 | 2 => ascii_tree(&PlanarTree::from_element(x)?, "", &mut out),
        _ => ascii3(x, "", &mut out)?,
    }
    Ok(out)
}

/// A level-3 element as its head tree with subtrees listed under the nodes they sit on.
fn ascii3(x: &PlainElement, prefix: &str, out: &mut String) -> Result<()> {
    let h = decompose_head(x)?;
    let t = PlanarTree::from_element(&h.head)?;
    let _ = writeln!(out, "{prefix}{}", h.head);
    ascii_tree(&t, &format!("{prefix}  "), out);
    for (slot, sub) in &h.attachments {
        let _ = writeln!(out, "{prefix}  node {slot} <=");
        ascii3(sub, &format!("{prefix}    "), out)?;
    }
    Ok(())
}

struct Dot {
    out: String,
    next: usize,
}

impl Dot {
    fn id(&mut self) -> usize {
        self.next += 1;
        self.next
    }

    /// Writes the tree's vertices and edges; returns the id of each node in factor order.
    fn tree(&mut self, t: &PlanarTree, indent: &str) -> Vec<usize> {
        let ids: Vec<usize> = (0..t.node_count()).map(|_| self.id()).collect();
        for v in 0..t.node_count() {
            let _ = writeln!(self.out, "{indent}n{} [label=\"{}\"];", ids[v], t.arity_of(v));
        }
        for v in 0..t.node_count() {
            for p in 0..t.arity_of(v) as usize {
                match t.child(v, p) {
                    Some(c) => {
                        let _ = writeln!(self.out, "{indent}n{} -> n{};", ids[v], ids[c]);
                    }
                    None => {
                        let l = self.id();
                        let _ = writeln!(self.out, "{indent}l{l} [shape=point];");
                        let _ = writeln!(self.out, "{indent}n{} -> l{l};", ids[v]);
                    }
                }
            }
        }
        ids
    }

    /// One cluster per factor; dashed edges from a node to the factor grafted onto it.
    fn level3(&mut self, x: &PlainElement) -> Result<usize> {
        let h = decompose_head(x)?;
        let t = PlanarTree::from_element(&h.head)?;
        let c = self.id();
        let _ = writeln!(self.out, "  subgraph cluster_{c} {{");
        let _ = writeln!(self.out, "    label=\"{}\";", h.head);
        let ids = self.tree(&t, "    ");
        let _ = writeln!(self.out, "  }}");
        // Slots of a tree are its nodes in preorder, which is factor order.
        for (slot, sub) in &h.attachments {
            let root = self.level3(sub)?;
            let _ = writeln!(
                self.out,
                "  n{} -> n{root} [style=dashed];",
                ids[*slot - 1]
            );
        }
        Ok(ids[t.root()])
    }
}

fn dot(x: &PlainElement) -> Result<String> {
    let mut d = Dot {
        out: String::from("digraph {\n"),
        next: 0,
    };
    match x.level() {
        0 => d.out.push_str("  p [shape=point];\n"),
        1 | 2 => {
            d.tree(&PlanarTree::from_element(x)?, "  ");
        }
        _ => {
            d.level3(x)?;
        }
    }
    d.out.push_str("}\n");
    Ok(d.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> PlainElement {
        PlainElement::parse(s).unwrap()
    }

    #[test]
    fn corolla_drawing() {
        assert_eq!(render(&e("[2|]"), Format::Ascii).unwrap(), "(2)\n├─ ·\n└─ ·\n");
    }

    #[test]
    fn dot_counts() {
        let d = render(&e("[2,2|1]"), Format::Dot).unwrap();
        assert!(d.starts_with("digraph {") && d.ends_with("}\n"));
        assert_eq!(d.matches("[label=").count(), 2);
        assert_eq!(d.matches("[shape=point]").count(), 3);
        assert_eq!(d.matches("->").count(), 4);
    }

    #[test]
    fn level_three_and_four() {
        let x = e("[[2,2|1],[2|]|2]");
        let d = render(&x, Format::Dot).unwrap();
        assert_eq!(d.matches("subgraph cluster_").count(), 2);
        assert!(d.contains("style=dashed"));
        assert!(render(&x, Format::Ascii).unwrap().contains("node 2 <="));
        let four = crate::compose::embed(&x).unwrap();
        assert!(matches!(render(&four, Format::Ascii), Err(Error::LevelMismatch(_))));
    }
}
