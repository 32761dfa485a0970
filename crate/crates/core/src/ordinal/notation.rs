use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An additively indecomposable summand.
///
/// `Phi(a, b)` uses the shifted subscripts: `Phi(1, b) = ω^(1+b)`, and for
/// `a >= 2` it enumerates common fixed points of every lower subscript.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    One,
    Phi(Box<OrdinalNF>, Box<OrdinalNF>),
}

/// A nonincreasing sum of terms; the empty sum is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrdinalNF {
    terms: Vec<Term>,
}

impl OrdinalNF {
    pub fn zero() -> Self {
        OrdinalNF { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        OrdinalNF {
            terms: vec![Term::One; n as usize],
        }
    }

    pub fn omega() -> Self {
        phi(&OrdinalNF::nat(1), &OrdinalNF::zero()).unwrap()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when finite.
    pub fn as_nat(&self) -> Option<u64> {
        self.terms
            .iter()
            .all(|t| *t == Term::One)
            .then_some(self.terms.len() as u64)
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    fn single(t: Term) -> Self {
        OrdinalNF { terms: vec![t] }
    }

    /// `Some((a, b))` when the value is a single `φ_a(b)` term.
    pub fn as_phi(&self) -> Option<(&OrdinalNF, &OrdinalNF)> {
        match self.terms.as_slice() {
            [Term::Phi(a, b)] => Some((a, b)),
            _ => None,
        }
    }

    /// Nesting depth of the notation.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| match t {
                Term::One => 0,
                Term::Phi(a, b) => 1 + a.depth().max(b.depth()),
            })
            .max()
            .unwrap_or(0)
    }

    /// Structural invariants: terms nonincreasing, subscripts nonzero, no
    /// argument a fixed point of its own term.
    pub fn is_normal(&self) -> bool {
        self.terms.windows(2).all(|w| cmp_term(&w[0], &w[1]) != Ordering::Less)
            && self.terms.iter().all(|t| match t {
                Term::One => true,
                Term::Phi(a, b) => {
                    !a.is_zero()
                        && a.is_normal()
                        && b.is_normal()
                        && cmp(b, &OrdinalNF::single(t.clone())) == Ordering::Less
                }
            })
    }
}

fn cmp_term(x: &Term, y: &Term) -> Ordering {
    match (x, y) {
        (Term::One, Term::One) => Ordering::Equal,
        (Term::One, Term::Phi(..)) => Ordering::Less,
        (Term::Phi(..), Term::One) => Ordering::Greater,
        (Term::Phi(a, b), Term::Phi(c, d)) => match cmp(a, c) {
            Ordering::Less => cmp(b, &OrdinalNF::single(y.clone())),
            Ordering::Equal => cmp(b, d),
            Ordering::Greater => cmp(&OrdinalNF::single(x.clone()), d),
        },
    }
}

/// Ordinal comparison of normal forms.
pub fn cmp(x: &OrdinalNF, y: &OrdinalNF) -> Ordering {
    for (a, b) in x.terms.iter().zip(&y.terms) {
        match cmp_term(a, b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    x.terms.len().cmp(&y.terms.len())
}

impl PartialOrd for OrdinalNF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalNF {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp(self, other)
    }
}

/// Normal-form addition: summands of `x` below the lead of `y` are absorbed.
pub fn add(x: &OrdinalNF, y: &OrdinalNF) -> OrdinalNF {
    let Some(lead) = y.terms.first() else {
        return x.clone();
    };
    let mut terms: Vec<Term> = x
        .terms
        .iter()
        .take_while(|t| cmp_term(t, lead) != Ordering::Less)
        .cloned()
        .collect();
    terms.extend(y.terms.iter().cloned());
    OrdinalNF { terms }
}

/// `φ_a(b)`, collapsing `b` when it is already a fixed point.
pub fn phi(a: &OrdinalNF, b: &OrdinalNF) -> Result<OrdinalNF> {
    if a.is_zero() {
        return Err(Error::InvalidNotation("phi subscripts start at 1".into()));
    }
    if let Some((c, _)) = b.as_phi() {
        if cmp(c, a) == Ordering::Greater {
            return Ok(b.clone());
        }
    }
    let t = OrdinalNF::single(Term::Phi(Box::new(a.clone()), Box::new(b.clone())));
    // φ_a(b) > a below Γ₀; equality would need a strongly critical subscript.
    if cmp(a, &t) != Ordering::Less {
        return Err(Error::Gamma0Overflow(format!("phi({a},{b}) needs Γ₀")));
    }
    Ok(t)
}

/// `ω^γ`.
pub fn omega_pow(g: &OrdinalNF) -> OrdinalNF {
    match g.as_nat() {
        Some(0) => OrdinalNF::nat(1),
        Some(n) => phi(&OrdinalNF::nat(1), &OrdinalNF::nat(n - 1)).unwrap(),
        None => phi(&OrdinalNF::nat(1), g).unwrap(),
    }
}

/// `1 + x`.
pub fn one_plus(x: &OrdinalNF) -> OrdinalNF {
    add(&OrdinalNF::nat(1), x)
}

/// The `γ` with `1 + γ = x`, for `x >= 1`.
pub fn pred_left(x: &OrdinalNF) -> OrdinalNF {
    match x.as_nat() {
        Some(n) => OrdinalNF::nat(n.saturating_sub(1)),
        None => x.clone(),
    }
}

impl fmt::Display for OrdinalNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.terms.len() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match &self.terms[k] {
                Term::One => {
                    let ones = self.terms[k..].len();
                    write!(f, "{ones}")?;
                    k += ones;
                    continue;
                }
                Term::Phi(a, b) if a.as_nat() == Some(1) => match b.as_nat() {
                    Some(0) => write!(f, "w")?,
                    Some(n) => write!(f, "w^({})", n + 1)?,
                    None => write!(f, "w^({b})")?,
                },
                Term::Phi(a, b) => write!(f, "phi({a},{b})")?,
            }
            k += 1;
        }
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<OrdinalNF> {
    let mut p = P {
        s: text.as_bytes(),
        pos: 0,
    };
    let x = p.ord()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(x)
}

impl std::str::FromStr for OrdinalNF {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

struct P<'a> {
    s: &'a [u8],
    pos: usize,
}

impl P<'_> {
    fn err(&self, m: &str) -> Error {
        Error::Parse(format!("ordinal: {m} at byte {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn need(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{lit}'")))
        }
    }

    fn ord(&mut self) -> Result<OrdinalNF> {
        let mut acc = self.term()?;
        while self.eat("+") {
            let t = self.term()?;
            acc = add(&acc, &t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<OrdinalNF> {
        self.ws();
        if self.eat("phi(") {
            let a = self.ord()?;
            self.need(",")?;
            let b = self.ord()?;
            self.need(")")?;
            return phi(&a, &b);
        }
        if self.eat("w^(") {
            let g = self.ord()?;
            self.need(")")?;
            return Ok(omega_pow(&g));
        }
        if self.eat("w") {
            return Ok(OrdinalNF::omega());
        }
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a term"));
        }
        let n: u64 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))?;
        if n > 1 << 20 {
            return Err(Error::OutOfRange(format!("literal {n} is too large to expand")));
        }
        Ok(OrdinalNF::nat(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalNF {
        parse(s).unwrap()
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(cmp(&o("1+w"), &o("w")), Ordering::Equal);
        assert_eq!(cmp(&o("phi(1,0)"), &o("3")), Ordering::Greater);
        assert_eq!(cmp(&o("phi(1,phi(2,0))"), &o("phi(2,0)")), Ordering::Equal);
        assert!(o("w^(w)") < o("phi(2,0)"));
        assert!(o("w^(2)") > o("w+5"));
        assert!(o("phi(2,1)") > o("phi(1,phi(2,0)+1)"));
        assert!(o("phi(3,0)") > o("phi(2,phi(2,0))"));
    }

    #[test]
    fn addition_examples() {
        assert_eq!(add(&o("1"), &o("w")), o("w"));
        assert_eq!(add(&o("w"), &o("1")).to_string(), "w+1");
        let s = add(&o("w^(2)+w"), &o("w^(2)"));
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.to_string(), "w^(2)+w^(2)");
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&o("1"), &o("0")).unwrap(), o("w"));
        assert_eq!(phi(&o("1"), &o("phi(2,0)")).unwrap(), o("phi(2,0)"));
        assert_eq!(phi(&o("2"), &o("0")).unwrap().to_string(), "phi(2,0)");
        assert!(matches!(phi(&o("0"), &o("1")), Err(Error::InvalidNotation(_))));
    }

    #[test]
    fn printing() {
        for s in ["0", "3", "w", "w+3", "w+w", "w^(2)", "w^(w)", "phi(2,0)+w", "w^(w+1)"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert_eq!(o("w^(1)").to_string(), "w");
        assert_eq!(o("w^(0)").to_string(), "1");
        assert_eq!(o("w^(phi(2,0))").to_string(), "phi(2,0)");
    }

    #[test]
    fn helpers() {
        assert_eq!(one_plus(&o("3")), o("4"));
        assert_eq!(one_plus(&o("w")), o("w"));
        assert_eq!(pred_left(&o("4")), o("3"));
        assert_eq!(pred_left(&o("w+1")), o("w+1"));
        assert!(o("phi(2,w)+w+1").is_normal());
    }
}
