//! Homotopy pushouts of free crossed resolutions: the double mapping
//! cylinder for an amalgamated sum, the HNN construction for an
//! isomorphism between subgroups, and the retraction collapsing the
//! connecting arrow of a two-object complex.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{fresh_name, Relabel};
use crate::complex::{ComplexMorphism, CrossedComplex, Element, ModuleElement};
use crate::crossed_module::{PeifferFactor, PeifferSequence};
use crate::error::{Error, Result};
use crate::oracle::GroupOracle;
use crate::words::{GeneratorSymbol, Letter, ObjectId, Word};

/// Input data for the amalgamated-sum construction: resolutions of the
/// two factors and of the amalgamated subgroup, with verified lifts of
/// the two inclusions.
pub struct AmalgamData {
    pub a: CrossedComplex,
    pub b: CrossedComplex,
    pub c: CrossedComplex,
    pub lift_i: ComplexMorphism,
    pub lift_j: ComplexMorphism,
}

/// Input data for the HNN construction: a resolution of the base group,
/// a resolution of the associated subgroup, and verified lifts of the
/// two embeddings (`k0` twisted by the isomorphism, `k1` the inclusion).
pub struct HnnData {
    pub g: CrossedComplex,
    pub a: CrossedComplex,
    pub lift_k0: ComplexMorphism,
    pub lift_k1: ComplexMorphism,
}

fn require_verified(
    f: &ComplexMorphism,
    src: &CrossedComplex,
    dst: &CrossedComplex,
    dim: u32,
    what: &str,
) -> Result<()> {
    let report = f.verify(src, dst, dim)?;
    if !report.passed() {
        return Err(Error::UnverifiedLift(format!(
            "{}: {}",
            what,
            report.summary()
        )));
    }
    Ok(())
}

/// The double mapping cylinder `A ⊔ (I ⊗ C) ⊔ B` with the cylinder ends
/// substituted along the two lifts. Free generators in dimension n:
/// those of `A` at 0, those of `B` at 1, and `ι⊗c` for the generators
/// `c` of `C` in dimension n-1, at 1.
pub fn amalgam_resolution(d: &AmalgamData, max_dim: u32) -> Result<CrossedComplex> {
    if !d.a.is_reduced() || !d.b.is_reduced() || !d.c.is_reduced() {
        return Err(Error::NotReduced);
    }
    let content_dim = d.c.max_dim().min(max_dim.saturating_sub(1));
    require_verified(&d.lift_i, &d.c, &d.a, content_dim, "lift i'' : C -> A")?;
    require_verified(&d.lift_j, &d.c, &d.b, content_dim, "lift j'' : C -> B")?;

    let obj0 = ObjectId::new("0");
    let obj1 = ObjectId::new("1");
    let mut out = CrossedComplex::new([obj0.clone(), obj1.clone()]);

    let mut map_a = Relabel::new();
    map_a.objs.insert(d.a.objects().iter().next().unwrap().clone(), obj0.clone());
    for dim in 1..=d.a.max_dim() {
        for g in d.a.gens(dim) {
            let sym = if dim == 1 {
                GeneratorSymbol::dim1(g.name(), obj0.clone(), obj0.clone())
            } else {
                GeneratorSymbol::at(g.name(), dim, obj0.clone())
            };
            map_a.syms.insert(g.clone(), sym);
        }
    }
    let mut map_b = Relabel::new();
    map_b.objs.insert(d.b.objects().iter().next().unwrap().clone(), obj1.clone());
    for dim in 1..=d.b.max_dim() {
        for g in d.b.gens(dim) {
            let name = fresh_name(g.name(), &|n| d.a.gen_named(dim, n).is_some());
            let sym = if dim == 1 {
                GeneratorSymbol::dim1(&name, obj1.clone(), obj1.clone())
            } else {
                GeneratorSymbol::at(&name, dim, obj1.clone())
            };
            map_b.syms.insert(g.clone(), sym);
        }
    }
    let iota_name = fresh_name("iota", &|n| {
        d.a.gen_named(1, n).is_some() || d.b.gen_named(1, n).is_some()
    });
    let iota = GeneratorSymbol::dim1(&iota_name, obj0.clone(), obj1.clone());
    let iota_word = Word::generator(&iota);

    for dim in 1..=d.a.max_dim().min(max_dim) {
        for g in d.a.gens(dim) {
            out.add_gen(map_a.symbol(g)?)?;
            if dim >= 2 {
                out.set_boundary(&map_a.symbol(g)?, map_a.element(d.a.boundary_of(g)?)?)?;
            }
        }
    }
    for dim in 1..=d.b.max_dim().min(max_dim) {
        for g in d.b.gens(dim) {
            out.add_gen(map_b.symbol(g)?)?;
            if dim >= 2 {
                out.set_boundary(&map_b.symbol(g)?, map_b.element(d.b.boundary_of(g)?)?)?;
            }
        }
    }
    out.add_gen(iota.clone())?;

    // the two substituted ends of the cylinder on C
    let end0 = |x: &Element| -> Result<Element> { map_a.element(&d.lift_i.apply(x)?) };
    let end1 = |x: &Element| -> Result<Element> { map_b.element(&d.lift_j.apply(x)?) };
    let end1_word =
        |w: &Word| -> Result<Word> { map_b.word(&d.lift_j.apply_word(w)?) };

    let shifted = |g: &GeneratorSymbol| -> GeneratorSymbol {
        GeneratorSymbol::at(
            &format!("{}⊗{}", iota_name, g.name()),
            g.dim() + 1,
            obj1.clone(),
        )
    };
    // `ι⊗w` for a word `w` of C, ends substituted along j''
    let shift_word = |w: &Word| -> Result<PeifferSequence> {
        let mut factors = Vec::with_capacity(w.len());
        for (i, l) in w.letters().iter().enumerate() {
            let mut tail: Vec<Letter> = Vec::new();
            if l.inverse {
                tail.push(l.clone());
            }
            tail.extend_from_slice(&w.letters()[i + 1..]);
            let suffix = Word::reduce(tail, Some(w.source().clone()))?;
            factors.push(PeifferFactor::new(
                shifted(&l.sym),
                l.inverse,
                end1_word(&suffix)?,
            ));
        }
        PeifferSequence::new(factors, obj1.clone())
    };

    for dim in 1..=d.c.max_dim() {
        if dim + 1 > max_dim {
            break;
        }
        for g in d.c.gens(dim) {
            let sym = shifted(g);
            out.add_gen(sym.clone())?;
            let value = match dim {
                1 => {
                    let g1 = end1(&Element::Word(Word::generator(g)))?.as_word()?.clone();
                    let g0 = end0(&Element::Word(Word::generator(g)))?.as_word()?.clone();
                    Element::Word(
                        g1.inverse()
                            .mul(&iota_word.inverse())?
                            .mul(&g0)?
                            .mul(&iota_word)?,
                    )
                }
                2 => {
                    let beta = d.c.boundary_of(g)?.as_word()?;
                    let expansion = shift_word(beta)?;
                    let b1 = end1(&Element::Peiffer(PeifferSequence::generator(g)))?
                        .as_peiffer()?
                        .clone();
                    let b0 = end0(&Element::Peiffer(PeifferSequence::generator(g)))?
                        .as_peiffer()?
                        .act(&iota_word)?;
                    Element::Peiffer(expansion.inverse().mul(&b1.inverse())?.mul(&b0)?)
                }
                n => {
                    let beta = d.c.boundary_of(g)?;
                    let mut m = ModuleElement::zero(n, obj1.clone());
                    // -(ι⊗beta g)
                    match beta {
                        Element::Peiffer(p) => {
                            for f in p.factors() {
                                let c = if f.inverse { BigInt::one() } else { -BigInt::one() };
                                m.add_term(shifted(&f.gen), end1_word(&f.conj)?, c)?;
                            }
                        }
                        Element::Module(mm) => {
                            for ((h, u), c) in mm.terms() {
                                m.add_term(shifted(h), end1_word(u)?, -c.clone())?;
                            }
                        }
                        Element::Word(_) => return Err(Error::DimensionOutOfRange(1)),
                    }
                    // - (1⊗g) + (0⊗g)^iota
                    let g1 = end1(&Element::Module(ModuleElement::generator(g)))?
                        .as_module()?
                        .clone();
                    let g0 = end0(&Element::Module(ModuleElement::generator(g)))?
                        .as_module()?
                        .act(&iota_word)?;
                    Element::Module(m.sub(&g1)?.add(&g0)?)
                }
            };
            out.set_boundary(&sym, value)?;
        }
    }
    Ok(out)
}

/// The HNN construction: the base resolution, a stable letter `z`, and
/// shifted generators `z⊗x` whose boundaries glue the two cylinder ends
/// into the base along the lifts `k0`, `k1`.
pub fn hnn_resolution(d: &HnnData, max_dim: u32) -> Result<CrossedComplex> {
    if !d.g.is_reduced() || !d.a.is_reduced() {
        return Err(Error::NotReduced);
    }
    let content_dim = d.a.max_dim().min(max_dim.saturating_sub(1));
    require_verified(&d.lift_k0, &d.a, &d.g, content_dim, "lift k0'' : A -> G")?;
    require_verified(&d.lift_k1, &d.a, &d.g, content_dim, "lift k1'' : A -> G")?;

    let base = d.g.objects().iter().next().unwrap().clone();
    let mut out = CrossedComplex::new([base.clone()]);
    for dim in 1..=d.g.max_dim().min(max_dim) {
        for g in d.g.gens(dim) {
            out.add_gen(g.clone())?;
            if dim >= 2 {
                out.set_boundary(g, d.g.boundary_of(g)?.clone())?;
            }
        }
    }
    let z_name = fresh_name("z", &|n| d.g.gen_named(1, n).is_some());
    let z = GeneratorSymbol::dim1(&z_name, base.clone(), base.clone());
    let z_word = Word::generator(&z);
    out.add_gen(z.clone())?;

    let shifted = |g: &GeneratorSymbol| -> GeneratorSymbol {
        GeneratorSymbol::at(&format!("{}⊗{}", z_name, g.name()), g.dim() + 1, base.clone())
    };
    let k0w = |w: &Word| -> Result<Word> { d.lift_k0.apply_word(w) };
    let k1w = |w: &Word| -> Result<Word> { d.lift_k1.apply_word(w) };

    // `z⊗w` for a word `w` of A, written in the rotated basis where
    // d(z⊗x) = z^-1 (k0 x) z (k1 x)^-1. Rotation replaces the usual
    // suffix conjugators by k1 of the suffix including a positive
    // letter (and excluding a negative one).
    let shift_word = |w: &Word| -> Result<PeifferSequence> {
        let mut factors = Vec::with_capacity(w.len());
        for (i, l) in w.letters().iter().enumerate() {
            let mut tail: Vec<Letter> = Vec::new();
            if !l.inverse {
                tail.push(l.clone());
            }
            tail.extend_from_slice(&w.letters()[i + 1..]);
            let suffix = Word::reduce(tail, Some(w.source().clone()))?;
            factors.push(PeifferFactor::new(
                shifted(&l.sym),
                l.inverse,
                k1w(&suffix)?,
            ));
        }
        PeifferSequence::new(factors, base.clone())
    };

    for dim in 1..=d.a.max_dim() {
        if dim + 1 > max_dim {
            break;
        }
        for g in d.a.gens(dim) {
            let sym = shifted(g);
            out.add_gen(sym.clone())?;
            let value = match dim {
                // z^-1 (k0 x) z (k1 x)^-1
                1 => {
                    let xw = Word::generator(g);
                    Element::Word(
                        z_word
                            .inverse()
                            .mul(&k0w(&xw)?)?
                            .mul(&z_word)?
                            .mul(&k1w(&xw)?.inverse())?,
                    )
                }
                // (z⊗beta c)^-1 (k1 c)^-1 (k0 c)^z
                2 => {
                    let beta = d.a.boundary_of(g)?.as_word()?;
                    let expansion = shift_word(beta)?;
                    let c1 = d
                        .lift_k1
                        .apply(&Element::Peiffer(PeifferSequence::generator(g)))?
                        .as_peiffer()?
                        .clone();
                    let c0 = d
                        .lift_k0
                        .apply(&Element::Peiffer(PeifferSequence::generator(g)))?
                        .as_peiffer()?
                        .act(&z_word)?;
                    Element::Peiffer(expansion.inverse().mul(&c1.inverse())?.mul(&c0)?)
                }
                // -(z⊗chi x) - (k1 x) + (k0 x)^z
                n => {
                    let beta = d.a.boundary_of(g)?;
                    let mut m = ModuleElement::zero(n, base.clone());
                    match beta {
                        Element::Peiffer(p) => {
                            for f in p.factors() {
                                let c = if f.inverse { BigInt::one() } else { -BigInt::one() };
                                m.add_term(shifted(&f.gen), k1w(&f.conj)?, c)?;
                            }
                        }
                        Element::Module(mm) => {
                            for ((h, u), c) in mm.terms() {
                                m.add_term(shifted(h), k1w(u)?, -c.clone())?;
                            }
                        }
                        Element::Word(_) => return Err(Error::DimensionOutOfRange(1)),
                    }
                    let x1 = d
                        .lift_k1
                        .apply(&Element::Module(ModuleElement::generator(g)))?
                        .as_module()?
                        .clone();
                    let x0 = d
                        .lift_k0
                        .apply(&Element::Module(ModuleElement::generator(g)))?
                        .as_module()?
                        .act(&z_word)?;
                    Element::Module(m.sub(&x1)?.add(&x0)?)
                }
            };
            out.set_boundary(&sym, value)?;
        }
    }

    // When the associated subgroup is the whole base group, the result
    // is base x| Z and coefficient words have a normal form z^m g.
    if let Some(base_oracle) = d.g.oracle() {
        if same_bottom(&d.a, &d.g) {
            if let Some(oracle) = semidirect_oracle(d, &z, base_oracle)? {
                out.set_oracle(Some(oracle));
            }
        }
    }
    Ok(out)
}

fn same_bottom(a: &CrossedComplex, g: &CrossedComplex) -> bool {
    if a.gens(1) != g.gens(1) || a.gens(2).len() != g.gens(2).len() {
        return false;
    }
    a.gens(2).iter().all(|r| {
        matches!((a.boundary_of(r), g.gen_named(2, r.name()).and_then(|s| g.boundary_of(s).ok())),
            (Ok(x), Some(y)) if x == y)
    })
}

fn semidirect_oracle(
    d: &HnnData,
    z: &GeneratorSymbol,
    base_oracle: &GroupOracle,
) -> Result<Option<GroupOracle>> {
    let mut twist: BTreeMap<String, Word> = BTreeMap::new();
    for g in d.g.gens(1) {
        twist.insert(g.name().to_string(), d.lift_k0.apply_word(&Word::generator(g))?);
    }
    crate::oracle::semidirect_z(base_oracle.clone(), z.clone(), twist, d.g.gens(1))
}

/// Collapses the connecting arrow of a two-object complex, transporting
/// every generator at the discarded object to `keep`.
pub fn retract_to_vertex(c: &CrossedComplex, keep: &ObjectId) -> Result<CrossedComplex> {
    if c.objects().len() == 1 {
        return Ok(c.clone());
    }
    if c.objects().len() != 2 || !c.objects().contains(keep) {
        return Err(Error::NotTwoObject);
    }
    let connectors: Vec<_> = c.gens(1).iter().filter(|g| !g.is_loop()).collect();
    let [iota] = connectors.as_slice() else {
        return Err(Error::NotTwoObject);
    };
    let iota = (*iota).clone();

    let mut map = Relabel::new();
    for o in c.objects() {
        map.objs.insert(o.clone(), keep.clone());
    }
    map.drop.insert(iota.clone());
    for dim in 1..=c.max_dim() {
        for g in c.gens(dim) {
            if g == &iota {
                continue;
            }
            let sym = if dim == 1 {
                GeneratorSymbol::dim1(g.name(), keep.clone(), keep.clone())
            } else {
                GeneratorSymbol::at(g.name(), dim, keep.clone())
            };
            map.syms.insert(g.clone(), sym);
        }
    }

    let mut out = CrossedComplex::new([keep.clone()]);
    for dim in 1..=c.max_dim() {
        for g in c.gens(dim) {
            if g == &iota {
                continue;
            }
            out.add_gen(map.symbol(g)?)?;
            if dim >= 2 {
                out.set_boundary(&map.symbol(g)?, map.element(c.boundary_of(g)?)?)?;
            }
        }
    }
    Ok(out)
}
