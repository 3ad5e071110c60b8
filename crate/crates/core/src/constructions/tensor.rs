//! Tensor product of reduced free crossed complexes.
//!
//! Generators are `l⊗r` in dimension `dim l + dim r`, together with
//! copies of the two factors. Boundaries follow the bimorphism case
//! split; the sign and order conventions are kept exactly as forced by
//! the underlying cubical equivalence, so the evaluation order below is
//! deliberate and should not be "simplified".


use num_bigint::BigInt;
use num_traits::One;

use super::{fresh_name, Relabel};
use crate::complex::{CrossedComplex, Element, ModuleElement};
use crate::crossed_module::{PeifferFactor, PeifferSequence};
use crate::error::{Error, Result};
use crate::oracle::{build_finite_oracle, GroupOracle};
use crate::words::{GeneratorSymbol, Letter, ObjectId, Word};

struct Ctx {
    la: Relabel,
    lb: Relabel,
    base: ObjectId,
}

/// Positional expansion data for a word tensored with a fixed generator:
/// one factor per letter, with its sign and transport word (already
/// relabelled into the tensor complex).
struct LetterTerm {
    sym: GeneratorSymbol,
    inverse: bool,
    transport: Word,
}

impl Ctx {
    fn mix(&self, l: &GeneratorSymbol, r: &GeneratorSymbol) -> GeneratorSymbol {
        let lname = self
            .la
            .syms
            .get(l)
            .map(|s| s.name().to_string())
            .unwrap_or_else(|| l.name().to_string());
        let rname = self
            .lb
            .syms
            .get(r)
            .map(|s| s.name().to_string())
            .unwrap_or_else(|| r.name().to_string());
        GeneratorSymbol::at(
            &format!("{}⊗{}", lname, rname),
            l.dim() + r.dim(),
            self.base.clone(),
        )
    }

    /// Letterwise terms of `w ⊗ r` for a word `w` on the left: the i-th
    /// letter `x^e` with suffix `v` contributes `(x⊗r)^e` transported by
    /// the (left copy of) `v`, or `x^-1 v` when `e = -1`.
    fn left_word_terms(&self, w: &Word, r: &GeneratorSymbol) -> Result<Vec<LetterTerm>> {
        let mut out = Vec::with_capacity(w.len());
        for (i, l) in w.letters().iter().enumerate() {
            let mut tail: Vec<Letter> = Vec::new();
            if l.inverse {
                tail.push(l.clone());
            }
            tail.extend_from_slice(&w.letters()[i + 1..]);
            let suffix = Word::reduce(tail, Some(w.source().clone()))?;
            out.push(LetterTerm {
                sym: self.mix(&l.sym, r),
                inverse: l.inverse,
                transport: self.la.word(&suffix)?,
            });
        }
        Ok(out)
    }

    /// Mirror image for `l ⊗ w` with the word on the right.
    fn right_word_terms(&self, l: &GeneratorSymbol, w: &Word) -> Result<Vec<LetterTerm>> {
        let mut out = Vec::with_capacity(w.len());
        for (i, letter) in w.letters().iter().enumerate() {
            let mut tail: Vec<Letter> = Vec::new();
            if letter.inverse {
                tail.push(letter.clone());
            }
            tail.extend_from_slice(&w.letters()[i + 1..]);
            let suffix = Word::reduce(tail, Some(w.source().clone()))?;
            out.push(LetterTerm {
                sym: self.mix(l, &letter.sym),
                inverse: letter.inverse,
                transport: self.lb.word(&suffix)?,
            });
        }
        Ok(out)
    }

    /// `w ⊗ r` in dimension 2: the factor of the first letter comes last.
    fn left_word_mult(&self, w: &Word, r: &GeneratorSymbol) -> Result<PeifferSequence> {
        let terms = self.left_word_terms(w, r)?;
        let factors = terms
            .into_iter()
            .rev()
            .map(|t| PeifferFactor::new(t.sym, t.inverse, t.transport))
            .collect();
        PeifferSequence::new(factors, self.base.clone())
    }

    /// `l ⊗ w` in dimension 2: the factor of the first letter comes first.
    fn right_word_mult(&self, l: &GeneratorSymbol, w: &Word) -> Result<PeifferSequence> {
        let terms = self.right_word_terms(l, w)?;
        let factors = terms
            .into_iter()
            .map(|t| PeifferFactor::new(t.sym, t.inverse, t.transport))
            .collect();
        PeifferSequence::new(factors, self.base.clone())
    }

    /// `content ⊗ r` in additive dimensions: words, crossed-module
    /// elements and module elements all expand to transported terms.
    fn left_elem_add(
        &self,
        content: &Element,
        r: &GeneratorSymbol,
        dim: u32,
    ) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero(dim, self.base.clone());
        match content {
            Element::Word(w) => {
                for t in self.left_word_terms(w, r)? {
                    let c = if t.inverse { -BigInt::one() } else { BigInt::one() };
                    out.add_term(t.sym, t.transport, c)?;
                }
            }
            Element::Peiffer(p) => {
                for f in p.factors() {
                    let c = if f.inverse { -BigInt::one() } else { BigInt::one() };
                    out.add_term(self.mix(&f.gen, r), self.la.word(&f.conj)?, c)?;
                }
            }
            Element::Module(m) => {
                for ((g, u), c) in m.terms() {
                    out.add_term(self.mix(g, r), self.la.word(u)?, c.clone())?;
                }
            }
        }
        Ok(out)
    }

    fn right_elem_add(
        &self,
        l: &GeneratorSymbol,
        content: &Element,
        dim: u32,
    ) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero(dim, self.base.clone());
        match content {
            Element::Word(w) => {
                for t in self.right_word_terms(l, w)? {
                    let c = if t.inverse { -BigInt::one() } else { BigInt::one() };
                    out.add_term(t.sym, t.transport, c)?;
                }
            }
            Element::Peiffer(p) => {
                for f in p.factors() {
                    let c = if f.inverse { -BigInt::one() } else { BigInt::one() };
                    out.add_term(self.mix(l, &f.gen), self.lb.word(&f.conj)?, c)?;
                }
            }
            Element::Module(m) => {
                for ((g, u), c) in m.terms() {
                    out.add_term(self.mix(l, g), self.lb.word(u)?, c.clone())?;
                }
            }
        }
        Ok(out)
    }
}

pub fn tensor_product(
    a: &CrossedComplex,
    b: &CrossedComplex,
    max_dim: u32,
) -> Result<CrossedComplex> {
    if !a.is_reduced() || !b.is_reduced() {
        return Err(Error::NotReduced);
    }
    let base_a = a.objects().iter().next().unwrap().clone();
    let base_b = b.objects().iter().next().unwrap().clone();
    if base_a != base_b {
        return Err(Error::OracleMismatch(
            "tensor factors must share their base object".into(),
        ));
    }
    let base = base_a;
    if max_dim > 64 {
        return Err(Error::DimensionOverflow(max_dim));
    }

    // left copies keep their names; right copies are primed on collision
    let mut la = Relabel::new();
    for d in 1..=a.max_dim() {
        for g in a.gens(d) {
            let sym = if d == 1 {
                GeneratorSymbol::dim1(g.name(), base.clone(), base.clone())
            } else {
                GeneratorSymbol::at(g.name(), d, base.clone())
            };
            la.syms.insert(g.clone(), sym);
        }
    }
    let mut lb = Relabel::new();
    let mut renamed = false;
    for d in 1..=b.max_dim() {
        for g in b.gens(d) {
            let name = fresh_name(g.name(), &|n| a.gen_named(d, n).is_some());
            if name != g.name() {
                renamed = true;
            }
            let sym = if d == 1 {
                GeneratorSymbol::dim1(&name, base.clone(), base.clone())
            } else {
                GeneratorSymbol::at(&name, d, base.clone())
            };
            lb.syms.insert(g.clone(), sym);
        }
    }
    let ctx = Ctx {
        la,
        lb,
        base: base.clone(),
    };

    let mut out = CrossedComplex::new([base.clone()]);
    // per total dimension: copies of A, then mixed generators, then
    // copies of B (the order the inventory is usually listed in)
    for d in 1..=max_dim {
        for g in a.gens(d) {
            out.add_gen(ctx.la.symbol(g)?)?;
            if d >= 2 {
                out.set_boundary(&ctx.la.symbol(g)?, ctx.la.element(a.boundary_of(g)?)?)?;
            }
        }
        for m in (1..d).rev() {
            let n = d - m;
            for l in a.gens(m) {
                for r in b.gens(n) {
                    let sym = ctx.mix(l, r);
                    out.add_gen(sym.clone())?;
                    let value = mixed_boundary(&ctx, a, b, l, r)?;
                    out.set_boundary(&sym, value)?;
                }
            }
        }
        for g in b.gens(d) {
            out.add_gen(ctx.lb.symbol(g)?)?;
            if d >= 2 {
                out.set_boundary(&ctx.lb.symbol(g)?, ctx.lb.element(b.boundary_of(g)?)?)?;
            }
        }
    }

    // Coefficient oracle for the product of the fundamental groups.
    // Factors without an exact oracle fall back to a sound rewriting
    // normalizer on their own relators.
    let left_oracle = match a.oracle() {
        Some(o) => o.clone(),
        None => component_fallback(a, &Relabel::new())?,
    };
    let right_oracle = match b.oracle() {
        Some(GroupOracle::Finite(fg)) if renamed => {
            let mapped = mapped_presentation(b, &ctx.lb, &base)?;
            build_finite_oracle(&mapped, fg.order() + 1)?
        }
        Some(o @ (GroupOracle::Finite(_) | GroupOracle::Free | GroupOracle::InfiniteCyclic)) => {
            o.clone()
        }
        _ => component_fallback(b, &ctx.lb)?,
    };
    let left_gens = a.gens(1).iter().map(|g| g.name().to_string()).collect();
    out.set_oracle(Some(GroupOracle::Product {
        left: Box::new(left_oracle),
        right: Box::new(right_oracle),
        left_gens,
    }));
    Ok(out)
}

fn mapped_presentation(
    b: &CrossedComplex,
    lb: &Relabel,
    base: &ObjectId,
) -> Result<crate::presentation::Presentation> {
    let pres = b.bottom_presentation()?;
    crate::presentation::Presentation::new(
        vec![base.clone()],
        pres.generators
            .iter()
            .map(|g| lb.symbol(g))
            .collect::<Result<Vec<_>>>()?,
        pres.relators
            .iter()
            .map(|r| Ok((r.name().to_string(), lb.word(pres.omega(r)?)?)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Oracle for a factor without one: a finite table if the group closes
/// within a small bound, otherwise a rewriting normalizer.
fn component_fallback(c: &CrossedComplex, relabel: &Relabel) -> Result<GroupOracle> {
    let base = c.objects().iter().next().unwrap().clone();
    let pres = if relabel.syms.is_empty() {
        c.bottom_presentation()?
    } else {
        mapped_presentation(c, relabel, &base)?
    };
    if pres.is_free() {
        return Ok(GroupOracle::Free);
    }
    match build_finite_oracle(&pres, 200) {
        Ok(o) => Ok(o),
        Err(Error::NotFiniteWithinBound { .. }) => Ok(GroupOracle::rewriting(&pres)),
        Err(e) => Err(e),
    }
}

fn mixed_boundary(
    ctx: &Ctx,
    a: &CrossedComplex,
    b: &CrossedComplex,
    l: &GeneratorSymbol,
    r: &GeneratorSymbol,
) -> Result<Element> {
    let (m, n) = (l.dim(), r.dim());
    let base = ctx.base.clone();
    let id = Word::identity(base.clone());
    let la_l = |inv: bool| -> Result<Word> {
        Word::reduce(vec![Letter::new(ctx.la.symbol(l)?, inv)], Some(base.clone()))
    };
    let lb_r = |inv: bool| -> Result<Word> {
        Word::reduce(vec![Letter::new(ctx.lb.symbol(r)?, inv)], Some(base.clone()))
    };
    match (m, n) {
        // -(tau a⊗b) - (a⊗sigma b) + (sigma a⊗b) + (a⊗tau b)
        (1, 1) => Ok(Element::Word(
            lb_r(true)?
                .mul(&la_l(true)?)?
                .mul(&lb_r(false)?)?
                .mul(&la_l(false)?)?,
        )),
        // (a⊗beta b)^-1 b^-1 b^a
        (1, 2) => {
            let beta = b.boundary_of(r)?.as_word()?;
            let expansion = ctx.right_word_mult(l, beta)?;
            let rsym = ctx.lb.symbol(r)?;
            let tail = PeifferSequence::new(
                vec![
                    PeifferFactor::new(rsym.clone(), true, id.clone()),
                    PeifferFactor::new(rsym, false, la_l(false)?),
                ],
                base.clone(),
            )?;
            Ok(Element::Peiffer(expansion.inverse().mul(&tail)?))
        }
        // -(a⊗beta b) - (tau a⊗b) + (sigma a⊗b)^(a⊗tau b)
        (1, _) => {
            let beta = b.boundary_of(r)?;
            let mut out = ctx.right_elem_add(l, beta, n)?.neg();
            let rsym = ctx.lb.symbol(r)?;
            out.add_term(rsym.clone(), id, -BigInt::one())?;
            out.add_term(rsym, la_l(false)?, BigInt::one())?;
            Ok(Element::Module(out))
        }
        // a^-1 a^b (alpha a⊗b)
        (2, 1) => {
            let alpha = a.boundary_of(l)?.as_word()?;
            let expansion = ctx.left_word_mult(alpha, r)?;
            let lsym = ctx.la.symbol(l)?;
            let head = PeifferSequence::new(
                vec![
                    PeifferFactor::new(lsym.clone(), true, id.clone()),
                    PeifferFactor::new(lsym, false, lb_r(false)?),
                ],
                base.clone(),
            )?;
            Ok(Element::Peiffer(head.mul(&expansion)?))
        }
        // (-1)^(m+1)(a⊗tau b) + (-1)^m (a⊗sigma b)^(tau a⊗b) + (alpha a⊗b)
        (_, 1) => {
            let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let mut out = ModuleElement::zero(m, base.clone());
            let lsym = ctx.la.symbol(l)?;
            out.add_term(lsym.clone(), id, -sign.clone())?;
            out.add_term(lsym, lb_r(false)?, sign)?;
            let alpha = a.boundary_of(l)?;
            out = out.add(&ctx.left_elem_add(alpha, r, m)?)?;
            Ok(Element::Module(out))
        }
        // (alpha a⊗b) + (-1)^m (a⊗beta b)
        (_, _) => {
            let alpha = a.boundary_of(l)?;
            let beta = b.boundary_of(r)?;
            let dim = m + n - 1;
            let left = ctx.left_elem_add(alpha, r, dim)?;
            let right = ctx.right_elem_add(l, beta, dim)?;
            let right = if m % 2 == 0 { right } else { right.neg() };
            Ok(Element::Module(left.add(&right)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::two_truncated;
    use super::*;
    use crate::presentation::parse_presentation;

    fn trefoil() -> CrossedComplex {
        two_truncated(&parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap()).unwrap()
    }

    #[test]
    fn generator_inventory_of_trefoil_squared() {
        let t = trefoil();
        let c = tensor_product(&t, &t, 4).unwrap();
        assert_eq!(c.gens(1).len(), 4); // a, b, a', b'
        assert_eq!(c.gens(2).len(), 6); // r, four mixed, r'
        assert_eq!(c.gens(3).len(), 4); // r⊗x', x⊗r'
        assert_eq!(c.gens(4).len(), 1); // r⊗r'
    }

    #[test]
    fn chi2_of_mixed_generator_is_commutator() {
        let t = trefoil();
        let c = tensor_product(&t, &t, 2).unwrap();
        let g = c.gen_named(2, "a⊗b'").unwrap();
        let w = c.boundary_of(g).unwrap().as_word().unwrap();
        assert_eq!(w.display(), "b'^-1*a^-1*b'*a");
    }

    #[test]
    fn tensor_is_symmetric_on_generator_counts() {
        let t = trefoil();
        let c2 = two_truncated(&parse_presentation("gp< x | s = x^2 >").unwrap()).unwrap();
        let ab = tensor_product(&t, &c2, 4).unwrap();
        let ba = tensor_product(&c2, &t, 4).unwrap();
        for d in 1..=4 {
            assert_eq!(ab.gens(d).len(), ba.gens(d).len(), "dim {}", d);
        }
        assert!(ab.check_axioms(4).unwrap().passed());
        assert!(ba.check_axioms(4).unwrap().passed());
    }

    #[test]
    fn left_copy_is_injective_on_generators() {
        let t = trefoil();
        let c = tensor_product(&t, &t, 4).unwrap();
        for d in 1..=2 {
            for g in t.gens(d) {
                assert!(c.gen_named(d, g.name()).is_some());
            }
        }
    }
}
