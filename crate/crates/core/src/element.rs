//! Elements of the plain bases and their textual/JSON forms.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// An element of `B_n`.
///
/// Level 0 is the point, level 1 a positive arity, and every higher level a
/// canonical factor sequence with nondecreasing graft indices. Values are
/// immutable and cheap to clone.
#[derive(Clone)]
pub enum PlainElement {
    Point,
    Arity(u32),
    Seq(Arc<Seq>),
}

/// Payload of a level `>= 2` element.
pub struct Seq {
    level: u32,
    factors: Vec<PlainElement>,
    indices: Vec<usize>,
    total: PlainElement,
    hash: u64,
}

impl PlainElement {
    pub fn point() -> Self {
        PlainElement::Point
    }

    /// A level-1 element. Zero is rejected; see [`crate::unital`] for the based extension.
    pub fn arity(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::RangeViolation("level-1 arity must be at least 1".into()));
        }
        Ok(PlainElement::Arity(n))
    }

    /// Level-1 element over ℕ₀, used by the R-unital layer.
    pub(crate) fn arity_unchecked(n: u32) -> Self {
        PlainElement::Arity(n)
    }

    /// Builds a sequence element whose invariants the caller has already established.
    pub(crate) fn from_parts(
        level: u32,
        factors: Vec<PlainElement>,
        indices: Vec<usize>,
        total: PlainElement,
    ) -> Self {
        debug_assert!(level >= 2);
        debug_assert_eq!(factors.len(), indices.len() + 1);
        let mut h = DefaultHasher::new();
        level.hash(&mut h);
        indices.hash(&mut h);
        for f in &factors {
            f.hash(&mut h);
        }
        let hash = h.finish();
        PlainElement::Seq(Arc::new(Seq {
            level,
            factors,
            indices,
            total,
            hash,
        }))
    }

    pub fn level(&self) -> u32 {
        match self {
            PlainElement::Point => 0,
            PlainElement::Arity(_) => 1,
            PlainElement::Seq(s) => s.level,
        }
    }

    /// `m_x`: factor count, arity, or 1 for the point.
    pub fn m(&self) -> usize {
        match self {
            PlainElement::Point => 1,
            PlainElement::Arity(n) => *n as usize,
            PlainElement::Seq(s) => s.factors.len(),
        }
    }

    /// Factors of a sequence element; empty below level 2.
    pub fn factors(&self) -> &[PlainElement] {
        match self {
            PlainElement::Seq(s) => &s.factors,
            _ => &[],
        }
    }

    /// Graft indices of a sequence element; empty below level 2.
    pub fn indices(&self) -> &[usize] {
        match self {
            PlainElement::Seq(s) => &s.indices,
            _ => &[],
        }
    }

    pub fn as_arity(&self) -> Option<u32> {
        match self {
            PlainElement::Arity(n) => Some(*n),
            _ => None,
        }
    }

    /// `f_i(x)`, 1-based. Level 1 slots are points.
    pub fn slot(&self, i: usize) -> Result<PlainElement> {
        match self {
            PlainElement::Point => Err(Error::LevelMismatch("the point has no slots".into())),
            PlainElement::Arity(n) => {
                if i >= 1 && i <= *n as usize {
                    Ok(PlainElement::Point)
                } else {
                    Err(Error::RangeViolation(format!("slot {i} of arity {n}")))
                }
            }
            PlainElement::Seq(s) => s
                .factors
                .get(i.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| {
                    Error::RangeViolation(format!("slot {i} of {} factors", s.factors.len()))
                }),
        }
    }

    /// `F_n(x)`.
    pub fn slots_f(&self) -> Result<Vec<PlainElement>> {
        match self {
            PlainElement::Point => Err(Error::LevelMismatch("F is undefined at level 0".into())),
            PlainElement::Arity(n) => Ok(vec![PlainElement::Point; *n as usize]),
            PlainElement::Seq(s) => Ok(s.factors.clone()),
        }
    }

    /// `G_n(x)`, the executed composite one level down.
    pub fn total_g(&self) -> Result<PlainElement> {
        match self {
            PlainElement::Point => Err(Error::LevelMismatch("G is undefined at level 0".into())),
            PlainElement::Arity(_) => Ok(PlainElement::Point),
            PlainElement::Seq(s) => Ok(s.total.clone()),
        }
    }

    /// Cached total for sequence elements, point otherwise.
    pub(crate) fn g(&self) -> &PlainElement {
        match self {
            PlainElement::Seq(s) => &s.total,
            _ => &PlainElement::Point,
        }
    }

    /// Total node count of the underlying nested structure.
    pub fn size(&self) -> usize {
        match self {
            PlainElement::Point | PlainElement::Arity(_) => 1,
            PlainElement::Seq(s) => s.factors.iter().map(|f| f.size()).sum(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PlainElement::Point => json!({ "level": 0 }),
            PlainElement::Arity(n) => json!({ "level": 1, "arity": n }),
            PlainElement::Seq(s) => json!({
                "level": s.level,
                "factors": s.factors.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
                "indices": s.indices,
            }),
        }
    }
}

impl PartialEq for PlainElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (PlainElement::Point, PlainElement::Point) => true,
            (PlainElement::Arity(a), PlainElement::Arity(b)) => a == b,
            (PlainElement::Seq(a), PlainElement::Seq(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.hash == b.hash
                        && a.level == b.level
                        && a.indices == b.indices
                        && a.factors == b.factors)
            }
            _ => false,
        }
    }
}

impl Eq for PlainElement {}

impl Hash for PlainElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            PlainElement::Point => 0u8.hash(state),
            PlainElement::Arity(n) => {
                1u8.hash(state);
                n.hash(state);
            }
            PlainElement::Seq(s) => {
                2u8.hash(state);
                s.hash.hash(state);
            }
        }
    }
}

impl fmt::Display for PlainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlainElement::Point => write!(f, "*"),
            PlainElement::Arity(n) => write!(f, "{n}"),
            PlainElement::Seq(s) => {
                write!(f, "[")?;
                for (k, x) in s.factors.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "|")?;
                for (k, i) in s.indices.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for PlainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A structurally parsed literal, before any membership check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Point,
    Int(u64),
    /// `!e`, the level-2 eraser of the R-unital extension.
    Eraser,
    Seq(Vec<Literal>, Vec<u64>),
}

impl Literal {
    /// Level inferred from nesting depth.
    pub fn depth(&self) -> u32 {
        match self {
            Literal::Point => 0,
            Literal::Int(_) => 1,
            Literal::Eraser => 2,
            Literal::Seq(fs, _) => 1 + fs.first().map_or(0, |f| f.depth()),
        }
    }
}

pub fn parse_literal(text: &str) -> Result<Literal> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let lit = p.literal()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(lit)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer too large"))
    }

    fn literal(&mut self) -> Result<Literal> {
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(Literal::Point)
            }
            Some(b'!') => {
                self.pos += 1;
                if self.s.get(self.pos) == Some(&b'e') {
                    self.pos += 1;
                    Ok(Literal::Eraser)
                } else {
                    Err(self.err("expected '!e'"))
                }
            }
            Some(b'[') => {
                self.pos += 1;
                let mut factors = vec![self.literal()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    factors.push(self.literal()?);
                }
                let mut indices = Vec::new();
                if self.peek() == Some(b'|') {
                    self.pos += 1;
                    if self.peek() != Some(b']') {
                        indices.push(self.int()?);
                        while self.peek() == Some(b',') {
                            self.pos += 1;
                            indices.push(self.int()?);
                        }
                    }
                }
                self.expect(b']')?;
                Ok(Literal::Seq(factors, indices))
            }
            Some(c) if c.is_ascii_digit() => Ok(Literal::Int(self.int()?)),
            _ => Err(self.err("expected element")),
        }
    }
}

impl PlainElement {
    /// Parses and validates a literal, inferring the level from nesting depth.
    pub fn parse(text: &str) -> Result<Self> {
        crate::compose::validate(&parse_literal(text)?)
    }

    /// Parses and validates a literal that must sit at `level`.
    pub fn parse_at(text: &str, level: u32) -> Result<Self> {
        let lit = parse_literal(text)?;
        if lit.depth() != level {
            return Err(Error::LevelMismatch(format!(
                "literal has level {}, expected {level}",
                lit.depth()
            )));
        }
        crate::compose::validate(&lit)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        crate::compose::validate(&literal_from_json(v)?)
    }
}

fn literal_from_json(v: &Value) -> Result<Literal> {
    let bad = |m: &str| Error::Parse(format!("json: {m}"));
    let level = v
        .get("level")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing level"))?;
    match level {
        0 => Ok(Literal::Point),
        1 => Ok(Literal::Int(
            v.get("arity")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("missing arity"))?,
        )),
        _ => {
            let factors = v
                .get("factors")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing factors"))?
                .iter()
                .map(literal_from_json)
                .collect::<Result<Vec<_>>>()?;
            let indices = match v.get("indices") {
                None => Vec::new(),
                Some(ix) => ix
                    .as_array()
                    .ok_or_else(|| bad("indices must be an array"))?
                    .iter()
                    .map(|i| i.as_u64().ok_or_else(|| bad("index must be a natural")))
                    .collect::<Result<Vec<_>>>()?,
            };
            if factors.is_empty() {
                return Err(bad("empty factor list"));
            }
            let lit = Literal::Seq(factors, indices);
            if lit.depth() as u64 != level {
                return Err(Error::LevelMismatch(format!(
                    "json level {level} but nesting gives {}",
                    lit.depth()
                )));
            }
            Ok(lit)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_round_trip() {
        for s in ["*", "3", "[2|]", "[3,2,4,3|1,4,5]", "[[2,2|1],[2|]|1]"] {
            let x = PlainElement::parse(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn whitespace_is_ignored() {
        let x = PlainElement::parse(" [ 3 , 2 , 4 , 3 | 1 , 4 , 5 ] ").unwrap();
        assert_eq!(x.to_string(), "[3,2,4,3|1,4,5]");
    }

    #[test]
    fn json_mirror() {
        let x = PlainElement::parse("[[2,2|1],[2|]|1]").unwrap();
        let back = PlainElement::from_json(&x.to_json()).unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn malformed_literals() {
        for s in ["", "[", "[]", "[2|", "[2,|1]", "!x", "[2|1,]", "3 4"] {
            assert!(matches!(PlainElement::parse(s), Err(Error::Parse(_))), "{s}");
        }
    }

    #[test]
    fn explicit_level_must_match() {
        assert!(matches!(
            PlainElement::parse_at("[2|]", 3),
            Err(Error::LevelMismatch(_))
        ));
        assert_eq!(PlainElement::parse_at("4", 1).unwrap().m(), 4);
    }
}
