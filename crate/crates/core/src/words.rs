//! Words in free groups and free groupoids.
//!
//! A word is a freely reduced sequence of generator letters whose
//! source/target objects compose as a path. Groups are the one-object
//! special case; the two-object case is forced by the pushout and
//! cylinder constructions.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Object (vertex) of a groupoid, identified by its label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(Arc<str>);

impl ObjectId {
    pub fn new(label: &str) -> Self {
        ObjectId(Arc::from(label))
    }

    /// The canonical single object used by reduced (one-object) complexes.
    pub fn base() -> Self {
        ObjectId::new("0")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A free-basis generator in some dimension.
///
/// Dimension 1 generators are groupoid arrows `source -> target`; in
/// dimensions >= 2 source and target coincide with the basepoint.
/// Names are unique within a dimension, so equality, ordering and
/// hashing use `(dim, name)` only.
#[derive(Clone)]
pub struct GeneratorSymbol {
    name: Arc<str>,
    dim: u32,
    source: ObjectId,
    target: ObjectId,
}

impl GeneratorSymbol {
    pub fn dim1(name: &str, source: ObjectId, target: ObjectId) -> Self {
        GeneratorSymbol {
            name: Arc::from(name),
            dim: 1,
            source,
            target,
        }
    }

    /// A generator of dimension `dim >= 2` based at `basepoint`.
    pub fn at(name: &str, dim: u32, basepoint: ObjectId) -> Self {
        debug_assert!(dim >= 2);
        GeneratorSymbol {
            name: Arc::from(name),
            dim,
            source: basepoint.clone(),
            target: basepoint,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn source(&self) -> &ObjectId {
        &self.source
    }

    pub fn target(&self) -> &ObjectId {
        &self.target
    }

    /// Basepoint of a generator of dimension >= 2.
    pub fn basepoint(&self) -> &ObjectId {
        &self.target
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

impl PartialEq for GeneratorSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.name == other.name
    }
}

impl Eq for GeneratorSymbol {}

impl PartialOrd for GeneratorSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneratorSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, self.name.as_ref()).cmp(&(other.dim, other.name.as_ref()))
    }
}

impl std::hash::Hash for GeneratorSymbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.name.hash(state);
    }
}

impl fmt::Debug for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// One letter of a word: a generator or its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub sym: GeneratorSymbol,
    pub inverse: bool,
}

impl Letter {
    pub fn new(sym: GeneratorSymbol, inverse: bool) -> Self {
        Letter { sym, inverse }
    }

    pub fn source(&self) -> &ObjectId {
        if self.inverse {
            self.sym.target()
        } else {
            self.sym.source()
        }
    }

    pub fn target(&self) -> &ObjectId {
        if self.inverse {
            self.sym.source()
        } else {
            self.sym.target()
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter {
            sym: self.sym.clone(),
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.sym == other.sym && self.inverse != other.inverse
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sym.name(), if self.inverse { "^-1" } else { "" })
    }
}

/// A freely reduced path word in a free groupoid.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    source: ObjectId,
    target: ObjectId,
}

impl Word {
    /// The empty word at `object`.
    pub fn identity(object: ObjectId) -> Self {
        Word {
            letters: Vec::new(),
            source: object.clone(),
            target: object,
        }
    }

    /// The one-letter word on a dimension-1 generator.
    pub fn generator(sym: &GeneratorSymbol) -> Self {
        let source = sym.source().clone();
        let target = sym.target().clone();
        Word {
            letters: vec![Letter::new(sym.clone(), false)],
            source,
            target,
        }
    }

    /// Freely reduces a raw letter sequence, checking path composability.
    ///
    /// `start` disambiguates the source object of an empty sequence.
    pub fn reduce(letters: Vec<Letter>, start: Option<ObjectId>) -> Result<Word> {
        let source = match (letters.first(), start) {
            (Some(l), s) => {
                let src = l.source().clone();
                if let Some(s) = s {
                    if s != src {
                        return Err(Error::NonComposable(format!(
                            "word starts at {} but {} expected",
                            src, s
                        )));
                    }
                }
                src
            }
            (None, Some(s)) => s,
            (None, None) => ObjectId::base(),
        };
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        let mut at = source.clone();
        for l in letters {
            if l.source() != &at {
                return Err(Error::NonComposable(format!(
                    "letter {:?} starts at {} but path is at {}",
                    l,
                    l.source(),
                    at
                )));
            }
            at = l.target().clone();
            if stack.last().is_some_and(|top| top.cancels(&l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        let target = stack.last().map(|l| l.target().clone()).unwrap_or_else(|| source.clone());
        debug_assert_eq!(target, at);
        Ok(Word {
            letters: stack,
            source,
            target,
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn source(&self) -> &ObjectId {
        &self.source
    }

    pub fn target(&self) -> &ObjectId {
        &self.target
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    /// Product `self * other` (paths compose left to right).
    pub fn mul(&self, other: &Word) -> Result<Word> {
        if self.target != other.source {
            return Err(Error::NonComposable(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word::reduce(letters, Some(self.source.clone()))
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(Letter::inverted).collect();
        Word {
            letters,
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// `self^n` for a loop (or any word when |n| <= 1).
    pub fn pow(&self, n: i64) -> Result<Word> {
        if n == 0 {
            return Ok(Word::identity(self.source.clone()));
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Conjugate of a loop `self` at p by a path `u : p -> q`, i.e. `u^-1 * self * u`.
    pub fn conjugate(&self, u: &Word) -> Result<Word> {
        if !self.is_loop() {
            return Err(Error::NonComposable(format!(
                "conjugation base {} -> {} is not a loop",
                self.source, self.target
            )));
        }
        if &self.source != u.source() {
            return Err(Error::NonComposable(format!(
                "conjugator starts at {} but loop is at {}",
                u.source(),
                self.source
            )));
        }
        u.inverse().mul(self)?.mul(u)
    }

    /// Canonical display with collapsed powers, e.g. `a^3*b^-2`; identity is `1`.
    pub fn display(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let sym = &self.letters[i].sym;
            let inv = self.letters[i].inverse;
            let mut run = 1usize;
            while i + run < self.letters.len()
                && self.letters[i + run].sym == *sym
                && self.letters[i + run].inverse == inv
            {
                run += 1;
            }
            let exp: i64 = if inv { -(run as i64) } else { run as i64 };
            let name = quote_name(sym.name());
            if exp == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{}^{}", name, exp));
            }
            i += run;
        }
        parts.join("*")
    }
}

/// Quotes a generator name when it contains characters outside the bare
/// identifier set used by the parsers.
pub fn quote_name(name: &str) -> String {
    let bare = !name.is_empty()
        && name.chars().next().unwrap().is_ascii_alphabetic()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    if bare {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: &str) -> GeneratorSymbol {
        GeneratorSymbol::dim1(name, ObjectId::base(), ObjectId::base())
    }

    fn word(spec: &[(&str, bool)]) -> Word {
        let letters = spec.iter().map(|(n, inv)| Letter::new(gen(n), *inv)).collect();
        Word::reduce(letters, None).unwrap()
    }

    #[test]
    fn free_cancellation() {
        // a a^-1 b -> b
        let w = word(&[("a", false), ("a", true), ("b", false)]);
        assert_eq!(w.display(), "b");
    }

    #[test]
    fn empty_is_identity() {
        let w = word(&[]);
        assert!(w.is_identity());
        assert_eq!(w.display(), "1");
    }

    #[test]
    fn full_cancellation() {
        // a^3 b^-2 * b^2 a^-3 -> 1
        let u = word(&[("a", false), ("a", false), ("a", false), ("b", true), ("b", true)]);
        let v = word(&[("b", false), ("b", false), ("a", true), ("a", true), ("a", true)]);
        assert!(u.mul(&v).unwrap().is_identity());
    }

    #[test]
    fn conjugate_by_identity() {
        let w = word(&[("a", false), ("b", true)]);
        let id = Word::identity(ObjectId::base());
        assert_eq!(w.conjugate(&id).unwrap(), w);
    }

    #[test]
    fn conjugate_unfolds_definition() {
        let a = word(&[("a", false)]);
        let b = word(&[("b", false)]);
        let c = a.conjugate(&b).unwrap();
        assert_eq!(c.display(), "b^-1*a*b");
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let u = word(&[("a", false), ("b", false)]);
        let v = word(&[("b", true), ("a", false)]);
        let w = word(&[("a", false), ("a", false), ("b", true)]);
        let lhs = u.mul(&v).unwrap().conjugate(&w).unwrap();
        let rhs = u.conjugate(&w).unwrap().mul(&v.conjugate(&w).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn groupoid_path_composition_checked() {
        let p = ObjectId::new("p");
        let q = ObjectId::new("q");
        let f = GeneratorSymbol::dim1("f", p.clone(), q.clone());
        let g = GeneratorSymbol::dim1("g", p.clone(), q.clone());
        // f * g does not compose
        let bad = Word::reduce(
            vec![Letter::new(f.clone(), false), Letter::new(g.clone(), false)],
            None,
        );
        assert!(bad.is_err());
        // f * g^-1 is a loop at p
        let ok = Word::reduce(
            vec![Letter::new(f, false), Letter::new(g, true)],
            None,
        )
        .unwrap();
        assert_eq!(ok.source(), &p);
        assert_eq!(ok.target(), &p);
    }

    #[test]
    fn display_collapses_powers() {
        let w = word(&[("a", false), ("a", false), ("a", false), ("b", true), ("b", true)]);
        assert_eq!(w.display(), "a^3*b^-2");
    }
}
