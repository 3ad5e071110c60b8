//! Lifting a group morphism to a morphism of free crossed resolutions.
//!
//! Dimension-1 images are given. In dimension 2 each relator image is
//! found by a bounded search: the required boundary must be conjugate to
//! a single signed relator of the target (which covers every lift used
//! here); in dimensions >= 3 images are found by linear solving over the
//! group ring, expanded to integer linear algebra through a finite
//! oracle. Lifts are non-unique; the search is deterministic and the
//! result is always verified before being returned.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::complex::{ComplexMorphism, CrossedComplex, Element, ModuleElement};
use crate::crossed_module::{PeifferFactor, PeifferSequence};
use crate::error::{Error, Result};
use crate::oracle::GroupRingElement;
use crate::presentation::{parse_word, Lexer};
use crate::snf::{solve_left, IntMatrix};
use crate::words::{GeneratorSymbol, Letter, Word};

/// Splits `w` as `s^-1 * core * s` with `core` cyclically reduced.
fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let mut letters = w.letters().to_vec();
    let mut strips: Vec<Letter> = Vec::new();
    while letters.len() >= 2 {
        let first = letters[0].clone();
        let last = letters[letters.len() - 1].clone();
        if first.sym == last.sym && first.inverse != last.inverse {
            strips.push(first);
            letters.remove(0);
            letters.pop();
        } else {
            break;
        }
    }
    let core = Word::reduce(letters, Some(w.source().clone())).expect("substring of a path");
    let p = Word::reduce(strips, Some(w.source().clone())).expect("strip letters compose");
    (core, p.inverse())
}

/// Finds `u` with `u^-1 * base^eps * u = target`, if the cyclic cores
/// match under some rotation.
fn conjugating_word(base: &Word, eps: bool, target: &Word) -> Option<Word> {
    let base = if eps { base.clone() } else { base.inverse() };
    let (bcore, v) = cyclic_reduce(&base);
    let (tcore, s) = cyclic_reduce(target);
    if bcore.len() != tcore.len() {
        return None;
    }
    let mut best: Option<Word> = None;
    for k in 0..bcore.len().max(1) {
        let mut rotated = bcore.letters()[k..].to_vec();
        rotated.extend_from_slice(&bcore.letters()[..k]);
        let Ok(rot) = Word::reduce(rotated, Some(bcore.source().clone())) else {
            continue;
        };
        if rot != tcore {
            continue;
        }
        let prefix = Word::reduce(bcore.letters()[..k].to_vec(), Some(bcore.source().clone()))
            .expect("prefix of a loop at one object");
        let Ok(u) = v.inverse().mul(&prefix).and_then(|w| w.mul(&s)) else {
            continue;
        };
        if best.as_ref().is_none_or(|b| u.len() < b.len()) {
            best = Some(u);
        }
    }
    best
}

fn find_dim2_image(
    dst: &CrossedComplex,
    target: &Word,
) -> Option<PeifferSequence> {
    if target.is_identity() {
        return Some(PeifferSequence::identity(target.source().clone()));
    }
    let mut best: Option<(usize, PeifferSequence)> = None;
    for x in dst.gens(2) {
        let Ok(omega) = dst.boundary_of(x).and_then(|e| e.as_word().cloned()) else {
            continue;
        };
        for eps in [true, false] {
            if let Some(u) = conjugating_word(&omega, eps, target) {
                let seq = PeifferSequence::new(
                    vec![PeifferFactor::new(x.clone(), !eps, u.clone())],
                    target.source().clone(),
                )
                .ok()?;
                if best.as_ref().is_none_or(|(len, _)| u.len() < *len) {
                    best = Some((u.len(), seq));
                }
            }
        }
    }
    best.map(|(_, seq)| seq)
}

/// Ring-coordinate vector of an element of dimension >= 2 over the
/// target's generators of that dimension.
fn coords_of(
    dst: &CrossedComplex,
    e: &Element,
) -> Result<BTreeMap<GeneratorSymbol, GroupRingElement>> {
    match e {
        Element::Peiffer(p) => {
            let ab = dst.xmod().abelianize(p, dst.coeff_oracle())?;
            Ok(ab.coords().map(|(g, r)| (g.clone(), r.clone())).collect())
        }
        Element::Module(m) => {
            let mut out = BTreeMap::new();
            for (g, r) in m.renormalize(dst.coeff_oracle())?.coords() {
                out.insert(g, r);
            }
            Ok(out)
        }
        Element::Word(_) => Err(Error::DimensionOutOfRange(1)),
    }
}

fn solve_module_image(
    dst: &CrossedComplex,
    dim: u32,
    target: &Element,
) -> Result<ModuleElement> {
    let base = target.basepoint().clone();
    let unknowns = dst.gens(dim);
    let lower: Vec<GeneratorSymbol> = if dim == 3 {
        dst.gens(2).to_vec()
    } else {
        dst.gens(dim - 1).to_vec()
    };
    let target_coords = coords_of(dst, target)?;
    let trivial = target_coords.is_empty();
    if trivial {
        return Ok(ModuleElement::zero(dim, base));
    }
    if unknowns.is_empty() {
        return Err(Error::LiftNotFound {
            dim,
            msg: "target has no generators in this dimension".into(),
        });
    }
    let Some(oracle) = dst.oracle() else {
        return Err(Error::AmbiguousWithoutHints(dim));
    };
    if !oracle.is_finite() {
        return Err(Error::AmbiguousWithoutHints(dim));
    }
    let elements = oracle.elements()?;
    let eidx: BTreeMap<Word, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let n = elements.len();
    let lidx: BTreeMap<GeneratorSymbol, usize> = lower
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();

    let cols = lower.len() * n;
    let mut a = IntMatrix::zeros(unknowns.len() * n, cols);
    for (xi, x) in unknowns.iter().enumerate() {
        let bcoords = coords_of(dst, dst.boundary_of(x)?)?;
        for (h_i, h) in elements.iter().enumerate() {
            for (g, r) in &bcoords {
                let translated = r.translate(h, oracle)?;
                let gi = *lidx
                    .get(g)
                    .ok_or_else(|| Error::UnknownGenerator(g.name().to_string()))?;
                for (w, c) in translated.terms() {
                    let wi = *eidx
                        .get(w)
                        .ok_or_else(|| Error::OracleMismatch(format!("unnormalized key {}", w)))?;
                    let col = gi * n + wi;
                    let cur = a.get(xi * n + h_i, col).clone();
                    a.set(xi * n + h_i, col, cur + c);
                }
            }
        }
    }
    let mut b = IntMatrix::zeros(1, cols);
    for (g, r) in &target_coords {
        let gi = *lidx
            .get(g)
            .ok_or_else(|| Error::UnknownGenerator(g.name().to_string()))?;
        for (w, c) in r.terms() {
            let wi = *eidx
                .get(w)
                .ok_or_else(|| Error::OracleMismatch(format!("unnormalized key {}", w)))?;
            let cur = b.get(0, gi * n + wi).clone();
            b.set(0, gi * n + wi, cur + c);
        }
    }
    let x = solve_left(&a, &b).ok_or_else(|| Error::LiftNotFound {
        dim,
        msg: "no integral solution for the boundary equation".into(),
    })?;
    let mut m = ModuleElement::zero(dim, base);
    for (xi, xg) in unknowns.iter().enumerate() {
        for (h_i, h) in elements.iter().enumerate() {
            let c = x.get(0, xi * n + h_i).clone();
            if c != BigInt::ZERO {
                m.add_term(xg.clone(), h.clone(), c)?;
            }
        }
    }
    Ok(m)
}

/// Lifts the group morphism with the given dimension-1 images (words in
/// the target's generators, as text) to a morphism of crossed complexes
/// up to `max_dim`; `hints` may pre-assign images to named generators.
pub fn lift_morphism(
    dim1_images: &BTreeMap<String, String>,
    src: &CrossedComplex,
    dst: &CrossedComplex,
    max_dim: u32,
    hints: &BTreeMap<GeneratorSymbol, Element>,
) -> Result<ComplexMorphism> {
    if !src.is_reduced() || !dst.is_reduced() {
        return Err(Error::NotReduced);
    }
    let mut f = ComplexMorphism::new();
    f.object_map.insert(
        src.objects().iter().next().unwrap().clone(),
        dst.objects().iter().next().unwrap().clone(),
    );

    let table: BTreeMap<String, GeneratorSymbol> = dst
        .gens(1)
        .iter()
        .map(|g| (g.name().to_string(), g.clone()))
        .collect();
    for g in src.gens(1) {
        let text = dim1_images
            .get(g.name())
            .ok_or_else(|| Error::MissingImage(g.name().to_string()))?;
        let mut lex = Lexer::new(text);
        let w = parse_word(&mut lex, &table, None)?;
        f.images.insert(g.clone(), Element::Word(w));
    }

    for dim in 2..=max_dim.min(src.max_dim()) {
        for g in src.gens(dim) {
            if let Some(hint) = hints.get(g) {
                f.images.insert(g.clone(), hint.clone());
                continue;
            }
            let target = f.apply(src.boundary_of(g)?)?;
            let image = if dim == 2 {
                let t = target.as_word()?;
                Element::Peiffer(find_dim2_image(dst, t).ok_or_else(|| Error::LiftNotFound {
                    dim: 2,
                    msg: format!(
                        "boundary {} of {} is not conjugate to a signed relator",
                        t.display(),
                        g.name()
                    ),
                })?)
            } else {
                if dim == 3 {
                    // kernel membership: the required image must bound trivially
                    let w = dst.boundary(&target)?;
                    if !w.as_word()?.is_identity() {
                        return Err(Error::LiftNotFound {
                            dim: 3,
                            msg: format!("image of d({}) is not an identity among relations", g.name()),
                        });
                    }
                }
                Element::Module(solve_module_image(dst, dim, &target)?)
            };
            f.images.insert(g.clone(), image);
        }
    }

    let report = f.verify(src, dst, max_dim.min(src.max_dim()))?;
    if !report.passed() {
        return Err(Error::UnverifiedLift(report.summary()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::super::cyclic_resolution;
    use super::*;

    #[test]
    fn inversion_lifts_on_the_cyclic_resolution() {
        let c = cyclic_resolution(3, 5).unwrap();
        let f = lift_morphism(
            &BTreeMap::from([("a".to_string(), "a^-1".to_string())]),
            &c,
            &c,
            5,
            &BTreeMap::new(),
        )
        .unwrap();
        // dimension 2 image is c2^-1
        let img = f
            .image_of(c.gen_named(2, "c2").unwrap())
            .unwrap()
            .as_peiffer()
            .unwrap();
        assert_eq!(img.factors().len(), 1);
        assert!(img.factors()[0].inverse);
        assert!(img.factors()[0].conj.is_identity());
        assert!(f.verify(&c, &c, 5).unwrap().passed());
    }

    #[test]
    fn flipping_the_dim2_sign_breaks_verification() {
        let c = cyclic_resolution(3, 3).unwrap();
        let mut f = lift_morphism(
            &BTreeMap::from([("a".to_string(), "a^-1".to_string())]),
            &c,
            &c,
            3,
            &BTreeMap::new(),
        )
        .unwrap();
        let r = c.gen_named(2, "c2").unwrap().clone();
        f.images
            .insert(r.clone(), Element::Peiffer(PeifferSequence::generator(&r)));
        let report = f.verify(&c, &c, 2).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn missing_relator_in_target_reports_no_lift() {
        let c = cyclic_resolution(3, 2).unwrap();
        let free = super::super::free_resolution(
            &crate::presentation::parse_presentation("gp< a | >").unwrap(),
        )
        .unwrap();
        let err = lift_morphism(
            &BTreeMap::from([("a".to_string(), "a".to_string())]),
            &c,
            &free,
            2,
            &BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::LiftNotFound { dim: 2, .. }));
    }

    #[test]
    fn identity_lift_is_identity_in_every_dimension() {
        let c = cyclic_resolution(2, 4).unwrap();
        let f = lift_morphism(
            &BTreeMap::from([("a".to_string(), "a".to_string())]),
            &c,
            &c,
            4,
            &BTreeMap::new(),
        )
        .unwrap();
        for d in 2..=4 {
            for g in c.gens(d) {
                let img = f.image_of(g).unwrap();
                match img {
                    Element::Peiffer(p) => {
                        assert!(c.equal_dim2(p, &PeifferSequence::generator(g)).unwrap())
                    }
                    Element::Module(m) => {
                        assert!(m
                            .sub(&ModuleElement::generator(g))
                            .unwrap()
                            .is_zero_under(c.coeff_oracle())
                            .unwrap());
                    }
                    _ => panic!(),
                }
            }
        }
    }
}
