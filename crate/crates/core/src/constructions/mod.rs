//! Resolution-building procedures: two-truncations of presentations,
//! the standard resolution, the small cyclic resolution, tensor
//! products, cylinders, amalgamated sums, HNN extensions, retractions,
//! and lifting of group morphisms to resolution morphisms.

mod cyclic;
mod cylinder;
mod lift;
mod pushout;
mod standard;
mod tensor;

pub use cyclic::{cyclic_resolution, cyclic_resolution_named};
pub use cylinder::cylinder;
pub use lift::lift_morphism;
pub use pushout::{amalgam_resolution, hnn_resolution, retract_to_vertex, AmalgamData, HnnData};
pub use standard::standard_resolution;
pub use tensor::tensor_product;

use std::collections::BTreeMap;

use crate::complex::{CrossedComplex, Element, ModuleElement};
use crate::crossed_module::{PeifferFactor, PeifferSequence};
use crate::error::{Error, Result};
use crate::oracle::GroupOracle;
use crate::presentation::Presentation;
use crate::words::{GeneratorSymbol, Letter, ObjectId, Word};

/// The 2-truncated crossed complex of a presentation: the free crossed
/// module on its relator function, with nothing above dimension 2.
pub fn two_truncated(p: &Presentation) -> Result<CrossedComplex> {
    let mut c = CrossedComplex::new(p.objects.iter().cloned());
    for g in &p.generators {
        c.add_gen(g.clone())?;
    }
    for r in &p.relators {
        c.add_gen(r.clone())?;
        c.set_boundary(r, Element::Word(p.omega(r)?.clone()))?;
    }
    Ok(c)
}

/// Length-1 resolution of a free group(oid): no relators allowed.
pub fn free_resolution(p: &Presentation) -> Result<CrossedComplex> {
    if !p.is_free() {
        return Err(Error::OracleMismatch(
            "free_resolution requires a relator-free presentation".into(),
        ));
    }
    let mut c = two_truncated(p)?;
    if c.is_reduced() {
        c.set_oracle(Some(if p.generators.len() == 1 {
            GroupOracle::InfiniteCyclic
        } else {
            GroupOracle::Free
        }));
    }
    Ok(c)
}

/// Relabels the generators and objects of elements copied from one
/// complex into another; letters in `drop` are erased from words.
pub(crate) struct Relabel {
    pub syms: BTreeMap<GeneratorSymbol, GeneratorSymbol>,
    pub objs: BTreeMap<ObjectId, ObjectId>,
    pub drop: std::collections::BTreeSet<GeneratorSymbol>,
}

impl Relabel {
    pub fn new() -> Self {
        Relabel {
            syms: BTreeMap::new(),
            objs: BTreeMap::new(),
            drop: std::collections::BTreeSet::new(),
        }
    }

    pub fn object(&self, o: &ObjectId) -> ObjectId {
        self.objs.get(o).cloned().unwrap_or_else(|| o.clone())
    }

    pub fn symbol(&self, s: &GeneratorSymbol) -> Result<GeneratorSymbol> {
        self.syms
            .get(s)
            .cloned()
            .ok_or_else(|| Error::UnknownGenerator(s.name().to_string()))
    }

    pub fn word(&self, w: &Word) -> Result<Word> {
        let letters = w
            .letters()
            .iter()
            .filter(|l| !self.drop.contains(&l.sym))
            .map(|l| Ok(Letter::new(self.symbol(&l.sym)?, l.inverse)))
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(letters, Some(self.object(w.source())))
    }

    pub fn peiffer(&self, p: &PeifferSequence) -> Result<PeifferSequence> {
        let factors = p
            .factors()
            .iter()
            .map(|f| {
                Ok(PeifferFactor::new(
                    self.symbol(&f.gen)?,
                    f.inverse,
                    self.word(&f.conj)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        PeifferSequence::new(factors, self.object(p.basepoint()))
    }

    pub fn module(&self, m: &ModuleElement) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero(m.dim(), self.object(m.basepoint()));
        for ((g, u), c) in m.terms() {
            out.add_term(self.symbol(g)?, self.word(u)?, c.clone())?;
        }
        Ok(out)
    }

    pub fn element(&self, e: &Element) -> Result<Element> {
        Ok(match e {
            Element::Word(w) => Element::Word(self.word(w)?),
            Element::Peiffer(p) => Element::Peiffer(self.peiffer(p)?),
            Element::Module(m) => Element::Module(self.module(m)?),
        })
    }
}

/// Freshens `name` against a taken-set by appending primes.
pub(crate) fn fresh_name(name: &str, taken: &dyn Fn(&str) -> bool) -> String {
    let mut candidate = name.to_string();
    while taken(&candidate) {
        candidate.push('\'');
    }
    candidate
}
