//! The free crossed module C(omega) on a relator function.
//!
//! Elements are Peiffer sequences: formal products of conjugated, signed
//! relator symbols, considered up to Peiffer moves. There is no obvious
//! confluent normal form for these, so equality is decided by the
//! injective pair (boundary, abelianization): the kernel of the boundary
//! is central and abelian and embeds into the free module on the relator
//! symbols, so two sequences are equal iff their boundaries agree in the
//! free group and their abelianizations agree over the group ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::oracle::{GroupOracle, GroupRingElement};
use crate::presentation::Presentation;
use crate::words::{GeneratorSymbol, ObjectId, Word};

/// One factor `(x^eps)^u` of a Peiffer sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeifferFactor {
    pub gen: GeneratorSymbol,
    pub inverse: bool,
    pub conj: Word,
}

impl PeifferFactor {
    pub fn new(gen: GeneratorSymbol, inverse: bool, conj: Word) -> Self {
        PeifferFactor { gen, inverse, conj }
    }

    fn inverted(&self) -> Self {
        PeifferFactor {
            gen: self.gen.clone(),
            inverse: !self.inverse,
            conj: self.conj.clone(),
        }
    }

    fn cancels(&self, other: &Self) -> bool {
        self.gen == other.gen && self.conj == other.conj && self.inverse != other.inverse
    }
}

impl fmt::Debug for PeifferFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", display_factor(self))
    }
}

fn display_factor(p: &PeifferFactor) -> String {
    let mut s = crate::words::quote_name(p.gen.name());
    if !p.conj.is_identity() {
        s = format!("({}^({}))", s, p.conj.display());
    }
    if p.inverse {
        s.push_str("^-1");
    }
    s
}

/// An element of a free crossed module as a lazily reduced factor sequence.
#[derive(Clone, PartialEq, Eq)]
pub struct PeifferSequence {
    factors: Vec<PeifferFactor>,
    basepoint: ObjectId,
}

impl PeifferSequence {
    pub fn identity(at: ObjectId) -> Self {
        PeifferSequence {
            factors: Vec::new(),
            basepoint: at,
        }
    }

    /// Builds a sequence, cancelling adjacent mutually inverse factors.
    ///
    /// Every conjugator must end at the same object, which becomes the
    /// basepoint of the sequence.
    pub fn new(factors: Vec<PeifferFactor>, at: ObjectId) -> Result<Self> {
        let mut stack: Vec<PeifferFactor> = Vec::with_capacity(factors.len());
        for f in factors {
            if f.conj.source() != f.gen.basepoint() {
                return Err(Error::NonComposable(format!(
                    "conjugator {} does not start at the basepoint of {}",
                    f.conj.display(),
                    f.gen.name()
                )));
            }
            if f.conj.target() != &at {
                return Err(Error::BasepointMismatch {
                    expected: at.as_str().to_string(),
                    found: f.conj.target().as_str().to_string(),
                });
            }
            if stack.last().is_some_and(|top| top.cancels(&f)) {
                stack.pop();
            } else {
                stack.push(f);
            }
        }
        Ok(PeifferSequence {
            factors: stack,
            basepoint: at,
        })
    }

    /// The generator `x` itself, as a one-factor sequence.
    pub fn generator(x: &GeneratorSymbol) -> Self {
        PeifferSequence {
            factors: vec![PeifferFactor::new(
                x.clone(),
                false,
                Word::identity(x.basepoint().clone()),
            )],
            basepoint: x.basepoint().clone(),
        }
    }

    pub fn factors(&self) -> &[PeifferFactor] {
        &self.factors
    }

    pub fn basepoint(&self) -> &ObjectId {
        &self.basepoint
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.basepoint != other.basepoint {
            return Err(Error::BasepointMismatch {
                expected: self.basepoint.as_str().to_string(),
                found: other.basepoint.as_str().to_string(),
            });
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        PeifferSequence::new(factors, self.basepoint.clone())
    }

    pub fn inverse(&self) -> Self {
        PeifferSequence {
            factors: self.factors.iter().rev().map(PeifferFactor::inverted).collect(),
            basepoint: self.basepoint.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = PeifferSequence::identity(self.basepoint.clone());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// The action of a word `u : p -> q`: every conjugator is extended by `u`.
    pub fn act(&self, u: &Word) -> Result<Self> {
        if &self.basepoint != u.source() {
            return Err(Error::NonComposable(format!(
                "action word starts at {} but element is at {}",
                u.source(),
                self.basepoint
            )));
        }
        let factors = self
            .factors
            .iter()
            .map(|f| {
                Ok(PeifferFactor::new(
                    f.gen.clone(),
                    f.inverse,
                    f.conj.mul(u)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        PeifferSequence::new(factors, u.target().clone())
    }

    pub fn display(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(display_factor)
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

impl fmt::Debug for PeifferSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Coordinates of an abelianized crossed-module element in the free
/// module on the relator symbols.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct AbelianizedElement {
    coords: BTreeMap<GeneratorSymbol, GroupRingElement>,
}

impl AbelianizedElement {
    pub fn zero() -> Self {
        AbelianizedElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&GeneratorSymbol, &GroupRingElement)> {
        self.coords.iter()
    }

    pub fn coord(&self, x: &GeneratorSymbol) -> GroupRingElement {
        self.coords.get(x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: GeneratorSymbol, r: GroupRingElement) {
        if r.is_zero() {
            return;
        }
        let entry = self.coords.entry(x.clone()).or_default();
        let merged = entry.add(&r);
        if merged.is_zero() {
            self.coords.remove(&x);
        } else {
            *entry = merged;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, r) in &other.coords {
            out.add_term(x.clone(), r.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, r) in &other.coords {
            out.add_term(x.clone(), r.neg());
        }
        out
    }
}

/// The free crossed module on `omega : X2 -> F(X1)`.
#[derive(Clone, Debug)]
pub struct FreeCrossedModule {
    omega: BTreeMap<GeneratorSymbol, Word>,
}

impl FreeCrossedModule {
    pub fn new(omega: BTreeMap<GeneratorSymbol, Word>) -> Self {
        FreeCrossedModule { omega }
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        FreeCrossedModule {
            omega: p.omega_map().clone(),
        }
    }

    pub fn omega(&self, x: &GeneratorSymbol) -> Result<&Word> {
        self.omega
            .get(x)
            .ok_or_else(|| Error::UnknownRelator(x.name().to_string()))
    }

    pub fn relators(&self) -> impl Iterator<Item = (&GeneratorSymbol, &Word)> {
        self.omega.iter()
    }

    /// The boundary `phi_2`: the product of `u^-1 (omega x)^eps u`.
    pub fn boundary(&self, c: &PeifferSequence) -> Result<Word> {
        let mut out = Word::identity(c.basepoint().clone());
        for f in c.factors() {
            let w = self.omega(&f.gen)?;
            let w = if f.inverse { w.inverse() } else { w.clone() };
            out = out.mul(&w.conjugate(&f.conj)?)?;
        }
        Ok(out)
    }

    /// The Peiffer commutator `<w1, w2> = w1^-1 w2^-1 w1 w2^(d w1)`.
    pub fn peiffer_commutator(
        &self,
        w1: &PeifferSequence,
        w2: &PeifferSequence,
    ) -> Result<PeifferSequence> {
        let b1 = self.boundary(w1)?;
        w1.inverse()
            .mul(&w2.inverse())?
            .mul(w1)?
            .mul(&w2.act(&b1)?)
    }

    /// Whitehead coordinates: `coords[x] = sum eps_i * normalize(u_i)`.
    pub fn abelianize(
        &self,
        c: &PeifferSequence,
        oracle: &GroupOracle,
    ) -> Result<AbelianizedElement> {
        let mut out = AbelianizedElement::zero();
        for f in c.factors() {
            if !self.omega.contains_key(&f.gen) {
                return Err(Error::UnknownRelator(f.gen.name().to_string()));
            }
            let sign = if f.inverse { -BigInt::one() } else { BigInt::one() };
            out.add_term(
                f.gen.clone(),
                GroupRingElement::normalized_term(&f.conj, sign, oracle)?,
            );
        }
        Ok(out)
    }

    /// Equality in C(omega), decided by the pair (boundary, abelianization).
    ///
    /// With an oracle for the presented group this is exact. With a free
    /// oracle for a group whose word problem is unavailable it is a sound
    /// one-sided test: `true` means equal, `false` is inconclusive.
    pub fn equal(
        &self,
        c: &PeifferSequence,
        d: &PeifferSequence,
        oracle: &GroupOracle,
    ) -> Result<bool> {
        if c.basepoint() != d.basepoint() {
            return Err(Error::BasepointMismatch {
                expected: c.basepoint().as_str().to_string(),
                found: d.basepoint().as_str().to_string(),
            });
        }
        if self.boundary(c)? != self.boundary(d)? {
            return Ok(false);
        }
        Ok(self.abelianize(c, oracle)? == self.abelianize(d, oracle)?)
    }

    /// Whether `c` represents the identity (trivial boundary and zero
    /// abelianization).
    pub fn is_identity(&self, c: &PeifferSequence, oracle: &GroupOracle) -> Result<bool> {
        Ok(self.boundary(c)?.is_identity() && self.abelianize(c, oracle)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::build_finite_oracle;
    use crate::presentation::parse_presentation;
    use crate::words::Letter;

    fn trefoil() -> (Presentation, FreeCrossedModule) {
        let p = parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap();
        let m = FreeCrossedModule::from_presentation(&p);
        (p, m)
    }

    fn word(p: &Presentation, names: &[(&str, bool)]) -> Word {
        let letters = names
            .iter()
            .map(|(n, inv)| Letter::new(p.generator(n).unwrap().clone(), *inv))
            .collect();
        Word::reduce(letters, Some(ObjectId::base())).unwrap()
    }

    #[test]
    fn boundary_of_plain_relator() {
        let (p, m) = trefoil();
        let r = p.relators[0].clone();
        let c = PeifferSequence::generator(&r);
        assert_eq!(m.boundary(&c).unwrap().display(), "a^3*b^-2");
    }

    #[test]
    fn boundary_of_conjugated_relator() {
        let (p, m) = trefoil();
        let r = p.relators[0].clone();
        let u = word(&p, &[("a", false), ("b", false)]);
        let c = PeifferSequence::new(
            vec![PeifferFactor::new(r, false, u.clone())],
            ObjectId::base(),
        )
        .unwrap();
        let expected = m
            .boundary(&PeifferSequence::generator(&p.relators[0]))
            .unwrap()
            .conjugate(&u)
            .unwrap();
        assert_eq!(m.boundary(&c).unwrap(), expected);
    }

    #[test]
    fn boundary_is_a_homomorphism() {
        let (p, m) = trefoil();
        let r = p.relators[0].clone();
        let u = word(&p, &[("a", false)]);
        let v = word(&p, &[("b", true), ("a", false)]);
        let c = PeifferSequence::new(
            vec![PeifferFactor::new(r.clone(), false, u)],
            ObjectId::base(),
        )
        .unwrap();
        let d = PeifferSequence::new(vec![PeifferFactor::new(r, true, v)], ObjectId::base()).unwrap();
        let lhs = m.boundary(&c.mul(&d).unwrap()).unwrap();
        let rhs = m.boundary(&c).unwrap().mul(&m.boundary(&d).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn peiffer_commutator_has_trivial_boundary_and_abelianization() {
        // boundary triviality holds in the free group; abelianization
        // dies over Z[G], where the conjugator offsets vanish
        let p = parse_presentation("gp< s, t | q1 = s^2, q2 = t^3, q3 = s*t*s*t >").unwrap();
        let o = build_finite_oracle(&p, 10).unwrap();
        let m = FreeCrossedModule::from_presentation(&p);
        let u = word(&p, &[("s", false), ("t", false)]);
        let v = word(&p, &[("t", true)]);
        let c = PeifferSequence::new(
            vec![PeifferFactor::new(p.relators[0].clone(), false, u)],
            ObjectId::base(),
        )
        .unwrap();
        let d = PeifferSequence::new(
            vec![PeifferFactor::new(p.relators[1].clone(), false, v)],
            ObjectId::base(),
        )
        .unwrap();
        let comm = m.peiffer_commutator(&c, &d).unwrap();
        assert!(m.boundary(&comm).unwrap().is_identity());
        assert!(m.abelianize(&comm, &o).unwrap().is_zero());
    }

    #[test]
    fn commutator_with_identity_is_identity() {
        let (p, m) = trefoil();
        let r = p.relators[0].clone();
        let c = PeifferSequence::generator(&r);
        let id = PeifferSequence::identity(ObjectId::base());
        let comm = m.peiffer_commutator(&c, &id).unwrap();
        assert!(m.is_identity(&comm, &GroupOracle::Free).unwrap());
    }

    #[test]
    fn cm1_boundary_of_action_is_conjugation() {
        let (p, m) = trefoil();
        let r = p.relators[0].clone();
        let c = PeifferSequence::generator(&r);
        let u = word(&p, &[("b", false), ("a", true)]);
        let lhs = m.boundary(&c.act(&u).unwrap()).unwrap();
        let rhs = m.boundary(&c).unwrap().conjugate(&u).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cm2_conjugation_is_action_by_boundary() {
        // c^-1 d c = d^(phi2 c), tested over a group with a finite oracle
        let p = parse_presentation("gp< c | r = c^3 >").unwrap();
        let o = build_finite_oracle(&p, 10).unwrap();
        let m = FreeCrossedModule::from_presentation(&p);
        let r = p.relators[0].clone();
        let u = word(&p, &[("c", false)]);
        let c = PeifferSequence::new(
            vec![PeifferFactor::new(r.clone(), false, u)],
            ObjectId::base(),
        )
        .unwrap();
        let d = PeifferSequence::generator(&r);
        let lhs = c.inverse().mul(&d).unwrap().mul(&c).unwrap();
        let rhs = d.act(&m.boundary(&c).unwrap()).unwrap();
        assert!(m.equal(&lhs, &rhs, &o).unwrap());
    }

    #[test]
    fn equality_ignores_inserted_cancelling_pair() {
        let (p, m) = trefoil();
        let r = p.relators[0].clone();
        let u = word(&p, &[("a", false)]);
        let c = PeifferSequence::generator(&r);
        let pair = PeifferSequence::new(
            vec![
                PeifferFactor::new(r.clone(), false, u.clone()),
                PeifferFactor::new(r.clone(), true, u),
            ],
            ObjectId::base(),
        )
        .unwrap();
        assert!(pair.is_empty());
        let c2 = c.mul(&pair).unwrap();
        assert!(m.equal(&c, &c2, &GroupOracle::Free).unwrap());
    }

    #[test]
    fn distinct_generators_differ() {
        let p = parse_presentation("gp< a | x = a^2, y = a^2 >").unwrap();
        let o = build_finite_oracle(&p, 10).unwrap();
        let m = FreeCrossedModule::from_presentation(&p);
        let x = PeifferSequence::generator(&p.relators[0]);
        let y = PeifferSequence::generator(&p.relators[1]);
        assert!(!m.equal(&x, &y, &o).unwrap());
    }

    #[test]
    fn abelianize_is_additive() {
        let (p, m) = trefoil();
        let r = p.relators[0].clone();
        let u = word(&p, &[("a", false), ("b", false)]);
        let c = PeifferSequence::new(
            vec![PeifferFactor::new(r.clone(), false, u)],
            ObjectId::base(),
        )
        .unwrap();
        let d = PeifferSequence::generator(&r);
        let o = GroupOracle::Free;
        let lhs = m.abelianize(&c.mul(&d).unwrap(), &o).unwrap();
        let rhs = m.abelianize(&c, &o).unwrap().add(&m.abelianize(&d, &o).unwrap());
        assert_eq!(lhs, rhs);
    }
}
