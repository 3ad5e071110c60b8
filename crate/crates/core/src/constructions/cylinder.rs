//! The cylinder `I ⊗ B` on a reduced crossed complex: two copies of `B`
//! at the objects 0 and 1, a connecting arrow, and shifted generators
//! `ι⊗b` one dimension up, with the cylinder boundary laws.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::Relabel;
use crate::complex::{CrossedComplex, Element, ModuleElement};
use crate::crossed_module::{PeifferFactor, PeifferSequence};
use crate::error::{Error, Result};
use crate::oracle::GroupOracle;
use crate::words::{GeneratorSymbol, Letter, ObjectId, Word};

pub(crate) struct CylinderParts {
    pub obj0: ObjectId,
    pub obj1: ObjectId,
    pub iota: GeneratorSymbol,
    pub end0: Relabel,
    pub end1: Relabel,
}

impl CylinderParts {
    pub fn new(b: &CrossedComplex) -> Result<CylinderParts> {
        if !b.is_reduced() {
            return Err(Error::NotReduced);
        }
        let src = b.objects().iter().next().unwrap().clone();
        let obj0 = ObjectId::new("0");
        let obj1 = ObjectId::new("1");
        let iota = GeneratorSymbol::dim1("iota", obj0.clone(), obj1.clone());
        let mut end0 = Relabel::new();
        end0.objs.insert(src.clone(), obj0.clone());
        let mut end1 = Relabel::new();
        end1.objs.insert(src.clone(), obj1.clone());
        for d in 1..=b.max_dim() {
            for g in b.gens(d) {
                let n0 = format!("0⊗{}", g.name());
                let n1 = format!("1⊗{}", g.name());
                let (s0, s1) = if d == 1 {
                    (
                        GeneratorSymbol::dim1(&n0, obj0.clone(), obj0.clone()),
                        GeneratorSymbol::dim1(&n1, obj1.clone(), obj1.clone()),
                    )
                } else {
                    (
                        GeneratorSymbol::at(&n0, d, obj0.clone()),
                        GeneratorSymbol::at(&n1, d, obj1.clone()),
                    )
                };
                end0.syms.insert(g.clone(), s0);
                end1.syms.insert(g.clone(), s1);
            }
        }
        Ok(CylinderParts {
            obj0,
            obj1,
            iota,
            end0,
            end1,
        })
    }

    pub fn shifted(&self, g: &GeneratorSymbol) -> GeneratorSymbol {
        GeneratorSymbol::at(&format!("iota⊗{}", g.name()), g.dim() + 1, self.obj1.clone())
    }

    fn iota_word(&self) -> Word {
        Word::generator(&self.iota)
    }

    /// `ι ⊗ w` for a dimension-1 word `w`, using the derivation rule
    /// `ι⊗(bb') = (ι⊗b)^(1⊗b') (ι⊗b')`: the factor of the i-th letter is
    /// conjugated by the 1-end copy of the remaining suffix.
    pub fn shift_word(&self, w: &Word) -> Result<PeifferSequence> {
        let mut factors = Vec::with_capacity(w.len());
        for (i, l) in w.letters().iter().enumerate() {
            let mut tail: Vec<Letter> = Vec::new();
            if l.inverse {
                tail.push(l.clone());
            }
            tail.extend_from_slice(&w.letters()[i + 1..]);
            let suffix = Word::reduce(tail, Some(w.source().clone()))?;
            factors.push(PeifferFactor::new(
                self.shifted(&l.sym),
                l.inverse,
                self.end1.word(&suffix)?,
            ));
        }
        PeifferSequence::new(factors, self.obj1.clone())
    }

    /// `ι ⊗ x` for higher-dimensional content `x` (additive output).
    pub fn shift_elem(&self, content: &Element, dim: u32) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero(dim, self.obj1.clone());
        match content {
            Element::Word(_) => return Err(Error::DimensionOutOfRange(1)),
            Element::Peiffer(p) => {
                for f in p.factors() {
                    let c = if f.inverse { -BigInt::one() } else { BigInt::one() };
                    out.add_term(self.shifted(&f.gen), self.end1.word(&f.conj)?, c)?;
                }
            }
            Element::Module(m) => {
                for ((g, u), c) in m.terms() {
                    out.add_term(self.shifted(g), self.end1.word(u)?, c.clone())?;
                }
            }
        }
        Ok(out)
    }

    /// Boundary of `ι⊗g` per the cylinder laws.
    pub fn shift_boundary(&self, b: &CrossedComplex, g: &GeneratorSymbol) -> Result<Element> {
        let iota = self.iota_word();
        match g.dim() {
            // (1⊗b)^-1 iota^-1 (0⊗b) iota
            1 => {
                let g1 = Word::generator(&self.end1.symbol(g)?);
                let g0 = Word::generator(&self.end0.symbol(g)?);
                Ok(Element::Word(
                    g1.inverse().mul(&iota.inverse())?.mul(&g0)?.mul(&iota)?,
                ))
            }
            // (ι⊗beta b)^-1 (1⊗b)^-1 (0⊗b)^iota
            2 => {
                let beta = b.boundary_of(g)?.as_word()?;
                let expansion = self.shift_word(beta)?;
                let tail = PeifferSequence::new(
                    vec![
                        PeifferFactor::new(
                            self.end1.symbol(g)?,
                            true,
                            Word::identity(self.obj1.clone()),
                        ),
                        PeifferFactor::new(self.end0.symbol(g)?, false, iota),
                    ],
                    self.obj1.clone(),
                )?;
                Ok(Element::Peiffer(expansion.inverse().mul(&tail)?))
            }
            // -(ι⊗beta b) - (1⊗b) + (0⊗b)^iota
            n => {
                let beta = b.boundary_of(g)?;
                let mut out = self.shift_elem(beta, n)?.neg();
                out.add_term(
                    self.end1.symbol(g)?,
                    Word::identity(self.obj1.clone()),
                    -BigInt::one(),
                )?;
                out.add_term(self.end0.symbol(g)?, iota, BigInt::one())?;
                Ok(Element::Module(out))
            }
        }
    }
}

pub fn cylinder(b: &CrossedComplex, max_dim: u32) -> Result<CrossedComplex> {
    let parts = CylinderParts::new(b)?;
    let mut out = CrossedComplex::new([parts.obj0.clone(), parts.obj1.clone()]);
    out.add_gen(parts.iota.clone())?;
    for d in 1..=b.max_dim().min(max_dim) {
        for g in b.gens(d) {
            for end in [&parts.end0, &parts.end1] {
                out.add_gen(end.symbol(g)?)?;
                if d >= 2 {
                    out.set_boundary(&end.symbol(g)?, end.element(b.boundary_of(g)?)?)?;
                }
            }
        }
    }
    for d in 1..=b.max_dim() {
        if d + 1 > max_dim {
            break;
        }
        for g in b.gens(d) {
            let sym = parts.shifted(g);
            out.add_gen(sym.clone())?;
            out.set_boundary(&sym, parts.shift_boundary(b, g)?)?;
        }
    }

    if let Some(base) = b.oracle() {
        let mut fold = BTreeMap::new();
        let mut section = BTreeMap::new();
        for g in b.gens(1) {
            let w = Word::generator(g);
            fold.insert(parts.end0.symbol(g)?.name().to_string(), w.clone());
            fold.insert(parts.end1.symbol(g)?.name().to_string(), w);
            section.insert(g.name().to_string(), parts.end0.symbol(g)?);
        }
        out.set_oracle(Some(GroupOracle::Folded {
            base: Box::new(base.clone()),
            fold,
            section,
            iota: parts.iota.clone(),
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic_resolution, two_truncated};
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn chi2_of_shifted_generator() {
        let b = two_truncated(&parse_presentation("gp< x | r = x^2 >").unwrap()).unwrap();
        let cyl = cylinder(&b, 3).unwrap();
        let g = cyl.gen_named(2, "iota⊗x").unwrap();
        let w = cyl.boundary_of(g).unwrap().as_word().unwrap();
        assert_eq!(w.display(), "\"1⊗x\"^-1*iota^-1*\"0⊗x\"*iota");
    }

    #[test]
    fn derivation_rule_for_products() {
        // iota⊗(bb') = (iota⊗b)^(1⊗b') (iota⊗b')
        let b = two_truncated(&parse_presentation("gp< x, y | >").unwrap()).unwrap();
        let cyl = cylinder(&b, 2).unwrap();
        let parts = CylinderParts::new(&b).unwrap();
        let x = b.gen_named(1, "x").unwrap().clone();
        let y = b.gen_named(1, "y").unwrap().clone();
        let xy = Word::generator(&x).mul(&Word::generator(&y)).unwrap();
        let lhs = parts.shift_word(&xy).unwrap();
        let fx = parts
            .shift_word(&Word::generator(&x))
            .unwrap()
            .act(&parts.end1.word(&Word::generator(&y)).unwrap())
            .unwrap();
        let fy = parts.shift_word(&Word::generator(&y)).unwrap();
        let rhs = fx.mul(&fy).unwrap();
        assert_eq!(lhs, rhs);
        // and the law is compatible with the stored boundaries
        assert!(cyl.check_axioms(2).unwrap().passed());
    }

    #[test]
    fn cylinder_of_cyclic_resolution_passes_axioms() {
        let b = cyclic_resolution(2, 4).unwrap();
        let cyl = cylinder(&b, 4).unwrap();
        let report = cyl.check_axioms(4).unwrap();
        assert!(report.passed(), "{}", report.summary());
    }

    #[test]
    fn ends_embed_generator_for_generator() {
        let b = cyclic_resolution(3, 4).unwrap();
        let cyl = cylinder(&b, 4).unwrap();
        for d in 1..=4 {
            for g in b.gens(d) {
                assert!(cyl.gen_named(d, &format!("0⊗{}", g.name())).is_some());
                assert!(cyl.gen_named(d, &format!("1⊗{}", g.name())).is_some());
            }
        }
        // inventory: two copies plus the shift from one dimension down
        assert_eq!(cyl.gens(1).len(), 2 * b.gens(1).len() + 1);
        for d in 2..=4 {
            assert_eq!(
                cyl.gens(d).len(),
                2 * b.gens(d).len() + b.gens(d - 1).len()
            );
        }
    }
}
