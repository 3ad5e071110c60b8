//! Non-abelian 2-cocycles as morphisms into the inner automorphism
//! crossed module, and the extensions they classify.
//!
//! A cocycle on a resolution of `G` with values in a finite group `K`
//! is a pair `(k2, k1)`: automorphisms for the dimension-1 generators
//! and kernel elements for the dimension-2 generators, subject to
//! `d(k2 r) = k1(d r)` and `k2(d t) = 1` for the dimension-3 basis.

use std::collections::BTreeMap;

use crate::complex::{CheckReport, CrossedComplex, Element};
use crate::error::{Error, Result};
use crate::oracle::{build_finite_oracle, FiniteGroup, GroupOracle};
use crate::presentation::Presentation;
use crate::words::{GeneratorSymbol, Letter, ObjectId, Word};

/// The inner automorphism crossed module `d : K -> Aut(K)` for a finite
/// group `K`, with Aut(K) enumerated by brute force.
pub struct InnerCrossedModule {
    pub presentation: Presentation,
    pub k: FiniteGroup,
    /// automorphisms as permutations of element indices, acting on the right
    auts: Vec<Vec<usize>>,
    aut_index: BTreeMap<Vec<usize>, usize>,
    /// composition table: x^(mul[a][b]) = (x^a)^b
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    /// boundary: element k to the conjugation x -> k^-1 x k
    boundary: Vec<usize>,
}

impl InnerCrossedModule {
    pub fn aut_count(&self) -> usize {
        self.auts.len()
    }

    pub fn aut_identity(&self) -> usize {
        self.aut_index[&(0..self.k.order()).collect::<Vec<_>>()]
    }

    pub fn aut_apply(&self, elt: usize, aut: usize) -> usize {
        self.auts[aut][elt]
    }

    pub fn aut_mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn aut_inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn boundary(&self, elt: usize) -> usize {
        self.boundary[elt]
    }

    /// Finds the automorphism determined by generator images, if any.
    pub fn aut_from_images(&self, images: &BTreeMap<String, Word>) -> Result<usize> {
        let perm = self.permutation_from_images(images)?;
        self.aut_index
            .get(&perm)
            .copied()
            .ok_or_else(|| Error::UnverifiedCocycle("images do not define an automorphism".into()))
    }

    fn permutation_from_images(&self, images: &BTreeMap<String, Word>) -> Result<Vec<usize>> {
        let n = self.k.order();
        let mut perm = vec![0usize; n];
        for (i, rep) in self.k.reps().iter().enumerate().take(n) {
            let mut img = Word::identity(rep.source().clone());
            for l in rep.letters() {
                let w = images
                    .get(l.sym.name())
                    .ok_or_else(|| Error::UnknownGenerator(l.sym.name().to_string()))?;
                let w = if l.inverse { w.inverse() } else { w.clone() };
                img = img.mul(&w)?;
            }
            perm[i] = self.k.element_index(&img)?;
        }
        Ok(perm)
    }
}

/// Enumerates Aut(K) by brute force over generator images and builds the
/// inner automorphism crossed module.
pub fn automorphism_oracle(p: &Presentation, bound: usize) -> Result<InnerCrossedModule> {
    let oracle = build_finite_oracle(p, bound)?;
    let GroupOracle::Finite(k) = oracle else {
        return Err(Error::NotFinite);
    };
    let n = k.order();
    if n > 50 {
        return Err(Error::TooLarge(n));
    }
    let gens: Vec<GeneratorSymbol> = k.generators().to_vec();
    let gen_idx: Vec<usize> = gens
        .iter()
        .map(|g| k.element_index(&Word::generator(g)))
        .collect::<Result<_>>()?;
    let gen_orders: Vec<usize> = gen_idx.iter().map(|&i| k.element_order(i)).collect();

    // candidates per generator: elements of the same order
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&o| (0..n).filter(|&e| k.element_order(e) == o).collect())
        .collect();

    let mut auts: Vec<Vec<usize>> = Vec::new();
    let mut aut_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice
            .iter()
            .enumerate()
            .map(|(gi, &ci)| candidates[gi][ci])
            .collect();
        if let Some(perm) = extend_to_automorphism(&k, &images) {
            if !aut_index.contains_key(&perm) {
                aut_index.insert(perm.clone(), auts.len());
                auts.push(perm);
            }
        }
        // next tuple
        for gi in 0..gens.len() {
            choice[gi] += 1;
            if choice[gi] < candidates[gi].len() {
                continue 'outer;
            }
            choice[gi] = 0;
        }
        break;
    }
    if gens.is_empty() {
        let identity: Vec<usize> = (0..n).collect();
        aut_index.insert(identity.clone(), 0);
        auts.push(identity);
    }

    let a = auts.len();
    let mut mul = vec![vec![0usize; a]; a];
    for i in 0..a {
        for j in 0..a {
            let composed: Vec<usize> = (0..n).map(|x| auts[j][auts[i][x]]).collect();
            mul[i][j] = aut_index[&composed];
        }
    }
    let mut inv = vec![0usize; a];
    for i in 0..a {
        let mut back = vec![0usize; n];
        for (x, &y) in auts[i].iter().enumerate() {
            back[y] = x;
        }
        inv[i] = aut_index[&back];
    }
    let mut boundary = Vec::with_capacity(n);
    for e in 0..n {
        let ei = k.inv_idx(e);
        let conj: Vec<usize> = (0..n).map(|x| k.mul_idx(k.mul_idx(ei, x), e)).collect();
        boundary.push(*aut_index
            .get(&conj)
            .ok_or_else(|| Error::UnverifiedCocycle("conjugation not found in Aut".into()))?);
    }
    Ok(InnerCrossedModule {
        presentation: p.clone(),
        k,
        auts,
        aut_index,
        mul,
        inv,
        boundary,
    })
}

fn extend_to_automorphism(k: &FiniteGroup, images: &[usize]) -> Option<Vec<usize>> {
    let n = k.order();
    // extend via representative words
    let mut perm = Vec::with_capacity(n);
    for e in 0..n {
        let mut img = 0usize;
        for l in k.reps()[e].letters() {
            let gi = k.generators().iter().position(|g| g == &l.sym)?;
            let target = images[gi];
            let target = if l.inverse { k.inv_idx(target) } else { target };
            img = k.mul_idx(img, target);
        }
        perm.push(img);
    }
    // homomorphism and bijectivity
    let mut seen = vec![false; n];
    for &y in &perm {
        if seen[y] {
            return None;
        }
        seen[y] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if perm[k.mul_idx(x, y)] != k.mul_idx(perm[x], perm[y]) {
                return None;
            }
        }
    }
    Some(perm)
}

/// Cocycle data: an automorphism per dimension-1 generator and a kernel
/// element per dimension-2 generator, both by generator name.
#[derive(Clone, Debug)]
pub struct CocycleData {
    pub k1: BTreeMap<String, usize>,
    pub k2: BTreeMap<String, usize>,
}

fn k1_of_word(data: &CocycleData, inner: &InnerCrossedModule, w: &Word) -> Result<usize> {
    let mut acc = inner.aut_identity();
    for l in w.letters() {
        let a = *data
            .k1
            .get(l.sym.name())
            .ok_or_else(|| Error::MissingImage(l.sym.name().to_string()))?;
        let a = if l.inverse { inner.aut_inv(a) } else { a };
        acc = inner.aut_mul(acc, a);
    }
    Ok(acc)
}

fn k2_of_element(
    data: &CocycleData,
    inner: &InnerCrossedModule,
    e: &Element,
) -> Result<usize> {
    let p = e.as_peiffer()?;
    let mut acc = 0usize; // identity of K
    for f in p.factors() {
        let x = *data
            .k2
            .get(f.gen.name())
            .ok_or_else(|| Error::MissingImage(f.gen.name().to_string()))?;
        let x = if f.inverse { inner.k.inv_idx(x) } else { x };
        let moved = inner.aut_apply(x, k1_of_word(data, inner, &f.conj)?);
        acc = inner.k.mul_idx(acc, moved);
    }
    Ok(acc)
}

/// Checks `d(k2 r) = k1(d r)` on every dimension-2 generator and
/// `k2(d t) = 1` on every dimension-3 generator.
pub fn verify_cocycle(
    data: &CocycleData,
    res: &CrossedComplex,
    inner: &InnerCrossedModule,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for r in res.gens(2) {
        let k2r = *data
            .k2
            .get(r.name())
            .ok_or_else(|| Error::MissingImage(r.name().to_string()))?;
        let lhs = inner.boundary(k2r);
        let rhs = k1_of_word(data, inner, res.boundary_of(r)?.as_word()?)?;
        report.items.push(crate::complex::CheckItem {
            description: format!("d(k2 {}) = k1(d {})", r.name(), r.name()),
            pass: lhs == rhs,
            exact: true,
            witness: (lhs != rhs).then(|| format!("aut {} vs {}", lhs, rhs)),
        });
    }
    for t in res.gens(3) {
        let val = k2_of_element(data, inner, res.boundary_of(t)?)?;
        report.items.push(crate::complex::CheckItem {
            description: format!("k2(d {}) = 1", t.name()),
            pass: val == 0,
            exact: true,
            witness: (val != 0).then(|| format!("element {}", inner.k.reps()[val].display())),
        });
    }
    Ok(report)
}

/// An extension `1 -> K -> E -> G -> 1` built from a verified cocycle:
/// a multiplication table when `E` closes finitely, otherwise the
/// quotient-of-semidirect-product presentation.
pub enum Extension {
    Table {
        group: FiniteGroup,
        presentation: Presentation,
        identified: Option<String>,
        surjection_ok: bool,
        kernel_order: usize,
    },
    Presented(Presentation),
}

impl Extension {
    pub fn report(&self) -> String {
        match self {
            Extension::Table {
                group,
                identified,
                surjection_ok,
                kernel_order,
                ..
            } => format!(
                "|E| = {}; E = {}; surjection onto G: {}; kernel order {}",
                group.order(),
                identified.clone().unwrap_or_else(|| "unidentified".into()),
                if *surjection_ok { "ok" } else { "FAILED" },
                kernel_order
            ),
            Extension::Presented(p) => format!("E = {}", p.display()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        match self {
            Extension::Table { presentation, .. } => presentation,
            Extension::Presented(p) => p,
        }
    }
}

/// Builds the extension presented by generators of `G`'s resolution plus
/// generators of `K`, with the `K`-relators, the action relators, and
/// one relator `d(r) (k2 r)^-1` per dimension-2 generator.
pub fn build_extension(
    data: &CocycleData,
    res: &CrossedComplex,
    inner: &InnerCrossedModule,
) -> Result<Extension> {
    let check = verify_cocycle(data, res, inner)?;
    if !check.passed() {
        return Err(Error::UnverifiedCocycle(check.summary()));
    }
    let base = ObjectId::base();
    let taken: Vec<String> = res.gens(1).iter().map(|g| g.name().to_string()).collect();
    // kernel generators, renamed away from the resolution's names
    let mut kmap: BTreeMap<String, GeneratorSymbol> = BTreeMap::new();
    let mut gens: Vec<GeneratorSymbol> = Vec::new();
    for g in res.gens(1) {
        gens.push(GeneratorSymbol::dim1(g.name(), base.clone(), base.clone()));
    }
    for g in inner.presentation.generators.iter() {
        let mut name = g.name().to_string();
        while taken.contains(&name) {
            name.push('\'');
        }
        let sym = GeneratorSymbol::dim1(&name, base.clone(), base.clone());
        kmap.insert(g.name().to_string(), sym.clone());
        gens.push(sym);
    }
    let into_e = |w: &Word, use_kmap: bool| -> Result<Word> {
        let letters = w
            .letters()
            .iter()
            .map(|l| {
                let sym = if use_kmap {
                    kmap.get(l.sym.name())
                        .cloned()
                        .ok_or_else(|| Error::UnknownGenerator(l.sym.name().to_string()))?
                } else {
                    GeneratorSymbol::dim1(l.sym.name(), base.clone(), base.clone())
                };
                Ok(Letter::new(sym, l.inverse))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(letters, Some(base.clone()))
    };

    let mut relators: Vec<(String, Word)> = Vec::new();
    for r in &inner.presentation.relators {
        relators.push((
            format!("k_{}", r.name()),
            into_e(inner.presentation.omega(r)?, true)?,
        ));
    }
    // action relators: g^-1 x g (x^(k1 g))^-1
    for g in res.gens(1) {
        let a = *data
            .k1
            .get(g.name())
            .ok_or_else(|| Error::MissingImage(g.name().to_string()))?;
        let gw = into_e(&Word::generator(g), false)?;
        for x in inner.presentation.generators.iter() {
            let xi = inner.k.element_index(&Word::generator(x))?;
            let image = inner.k.reps()[inner.aut_apply(xi, a)].clone();
            let lhs = into_e(&Word::generator(x), true)?.conjugate(&gw)?;
            let w = lhs.mul(&into_e(&image, true)?.inverse())?;
            relators.push((format!("act_{}_{}", g.name(), x.name()), w));
        }
    }
    // cocycle relators: d(r) (k2 r)^-1
    for r in res.gens(2) {
        let k2r = inner.k.reps()[data.k2[r.name()]].clone();
        let w = into_e(res.boundary_of(r)?.as_word()?, false)?.mul(&into_e(&k2r, true)?.inverse())?;
        relators.push((format!("coc_{}", r.name()), w));
    }
    let pres = Presentation::new(vec![base.clone()], gens, relators)?;

    // size-bounded closure; infinite G falls back to the presentation
    let bound = match res.oracle() {
        Some(o) if o.is_finite() => inner.k.order() * o.elements()?.len() + 1,
        _ => 512,
    };
    match build_finite_oracle(&pres, bound) {
        Ok(GroupOracle::Finite(e)) => {
            let (surjection_ok, kernel_order) = check_projection(&e, res, &kmap)?;
            let identified = identify_small_group(&e);
            Ok(Extension::Table {
                group: e,
                presentation: pres,
                identified,
                surjection_ok,
                kernel_order,
            })
        }
        Ok(_) | Err(Error::NotFiniteWithinBound { .. }) => Ok(Extension::Presented(pres)),
        Err(e) => Err(e),
    }
}

/// Checks that erasing the kernel generators defines a homomorphism onto
/// G and measures its kernel.
fn check_projection(
    e: &FiniteGroup,
    res: &CrossedComplex,
    kmap: &BTreeMap<String, GeneratorSymbol>,
) -> Result<(bool, usize)> {
    let Some(goracle) = res.oracle() else {
        return Ok((true, 0));
    };
    if !goracle.is_finite() {
        return Ok((true, 0));
    }
    let kernel_names: Vec<String> = kmap.values().map(|s| s.name().to_string()).collect();
    let project = |w: &Word| -> Result<Word> {
        let letters = w
            .letters()
            .iter()
            .filter(|l| !kernel_names.contains(&l.sym.name().to_string()))
            .map(|l| {
                let g = res
                    .gen_named(1, l.sym.name())
                    .ok_or_else(|| Error::UnknownGenerator(l.sym.name().to_string()))?;
                Ok(Letter::new(g.clone(), l.inverse))
            })
            .collect::<Result<Vec<_>>>()?;
        goracle.normalize(&Word::reduce(
            letters,
            Some(res.objects().iter().next().unwrap().clone()),
        )?)
    };
    let images: Vec<Word> = e
        .reps()
        .iter()
        .map(project)
        .collect::<Result<_>>()?;
    let mut hom = true;
    for i in 0..e.order() {
        for j in 0..e.order() {
            let prod = goracle.normalize(&images[i].mul(&images[j])?)?;
            if prod != images[e.mul_idx(i, j)] {
                hom = false;
            }
        }
    }
    let kernel = images.iter().filter(|w| w.is_identity()).count();
    Ok((hom, kernel))
}

/// Identifies a small group against cyclic, dihedral and symmetric
/// models (the library covers the groups these extensions produce).
pub fn identify_small_group(g: &FiniteGroup) -> Option<String> {
    let n = g.order();
    if (0..n).any(|e| g.element_order(e) == n) {
        return Some(format!("C{}", n));
    }
    let abelian = (0..n).all(|a| (0..n).all(|b| g.mul_idx(a, b) == g.mul_idx(b, a)));
    if !abelian && n.is_multiple_of(2) && n > 2 {
        let half = n / 2;
        // dihedral witness: r of order n/2, s of order 2, s r s = r^-1
        for r in 0..n {
            if g.element_order(r) != half {
                continue;
            }
            for s in 0..n {
                if g.element_order(s) != 2 {
                    continue;
                }
                let srs = g.mul_idx(g.mul_idx(s, r), s);
                if srs == g.inv_idx(r) && generates(g, &[r, s]) {
                    return Some(match n {
                        6 => "S3".to_string(),
                        _ => format!("D{}", half),
                    });
                }
            }
        }
    }
    if !abelian && n == 24 && is_s4(g) {
        return Some("S4".to_string());
    }
    if abelian && n == 4 {
        return Some("C2 x C2".to_string());
    }
    None
}

fn is_s4(g: &FiniteGroup) -> bool {
    // order histogram of S4: 1x1, 9x2, 8x3, 6x4
    let mut hist = BTreeMap::new();
    for e in 0..g.order() {
        *hist.entry(g.element_order(e)).or_insert(0usize) += 1;
    }
    hist == BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)])
}

fn generates(g: &FiniteGroup, gens: &[usize]) -> bool {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut frontier = vec![0usize];
    let mut count = 1;
    while let Some(x) = frontier.pop() {
        for &h in gens {
            for y in [g.mul_idx(x, h), g.mul_idx(x, g.inv_idx(h))] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    frontier.push(y);
                }
            }
        }
    }
    count == g.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{standard_resolution, two_truncated};
    use crate::presentation::parse_presentation;

    fn c3_inner() -> InnerCrossedModule {
        automorphism_oracle(&parse_presentation("gp< x | r = x^3 >").unwrap(), 8).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(c3_inner().aut_count(), 2);
        let c2 = automorphism_oracle(&parse_presentation("gp< x | r = x^2 >").unwrap(), 8).unwrap();
        assert_eq!(c2.aut_count(), 1);
        let v4 = automorphism_oracle(
            &parse_presentation("gp< x, y | q1 = x^2, q2 = y^2, q3 = x*y*x*y >").unwrap(),
            8,
        )
        .unwrap();
        assert_eq!(v4.aut_count(), 6);
    }

    #[test]
    fn inner_module_satisfies_cm_laws() {
        let inner = automorphism_oracle(
            &parse_presentation("gp< s, t | q1 = s^2, q2 = t^3, q3 = s*t*s*t >").unwrap(),
            10,
        )
        .unwrap();
        let n = inner.k.order();
        // d is a homomorphism
        for a in 0..n {
            for b in 0..n {
                let ab = inner.k.mul_idx(a, b);
                assert_eq!(
                    inner.boundary(ab),
                    inner.aut_mul(inner.boundary(a), inner.boundary(b))
                );
            }
        }
        // CM1: d(x^alpha) = alpha^-1 d(x) alpha
        for x in 0..n {
            for al in 0..inner.aut_count() {
                let lhs = inner.boundary(inner.aut_apply(x, al));
                let rhs = inner.aut_mul(
                    inner.aut_mul(inner.aut_inv(al), inner.boundary(x)),
                    al,
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn c2_resolution() -> CrossedComplex {
        let o = build_finite_oracle(&parse_presentation("gp< c | r = c^2 >").unwrap(), 8).unwrap();
        standard_resolution(&o, 3).unwrap()
    }

    fn cocycle(inversion: bool) -> CocycleData {
        let inner = c3_inner();
        let nontrivial = (0..inner.aut_count())
            .find(|&a| a != inner.aut_identity())
            .unwrap();
        let act = if inversion { nontrivial } else { inner.aut_identity() };
        let res = c2_resolution();
        let mut k1 = BTreeMap::new();
        k1.insert("[1]".to_string(), inner.aut_identity());
        k1.insert("[c]".to_string(), act);
        let mut k2 = BTreeMap::new();
        for r in res.gens(2) {
            k2.insert(r.name().to_string(), 0);
        }
        CocycleData { k1, k2 }
    }

    #[test]
    fn trivial_cocycle_verifies() {
        let inner = c3_inner();
        let res = c2_resolution();
        let report = verify_cocycle(&cocycle(false), &res, &inner).unwrap();
        assert!(report.passed(), "{}", report.summary());
    }

    #[test]
    fn inversion_action_gives_s3() {
        let inner = c3_inner();
        let res = c2_resolution();
        let ext = build_extension(&cocycle(true), &res, &inner).unwrap();
        match &ext {
            Extension::Table {
                group,
                identified,
                surjection_ok,
                kernel_order,
                ..
            } => {
                assert_eq!(group.order(), 6);
                assert_eq!(identified.as_deref(), Some("S3"));
                assert!(surjection_ok);
                assert_eq!(*kernel_order, 3);
            }
            _ => panic!("expected a table"),
        }
    }

    #[test]
    fn trivial_action_gives_c6() {
        let inner = c3_inner();
        let res = c2_resolution();
        let ext = build_extension(&cocycle(false), &res, &inner).unwrap();
        match &ext {
            Extension::Table {
                group, identified, ..
            } => {
                assert_eq!(group.order(), 6);
                assert_eq!(identified.as_deref(), Some("C6"));
            }
            _ => panic!("expected a table"),
        }
    }

    #[test]
    fn trefoil_cocycle_with_s3_values() {
        // s = a transposition, c = conjugation by it, d = identity:
        // d(s) = c^3 d^-2 since c has order 2
        let inner = automorphism_oracle(
            &parse_presentation("gp< s, t | q1 = s^2, q2 = t^3, q3 = s*t*s*t >").unwrap(),
            10,
        )
        .unwrap();
        let res = two_truncated(&parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap()).unwrap();
        let s = inner.k.element_index(&Word::generator(&inner.presentation.generators[0])).unwrap();
        let data = CocycleData {
            k1: BTreeMap::from([
                ("a".to_string(), inner.boundary(s)),
                ("b".to_string(), inner.aut_identity()),
            ]),
            k2: BTreeMap::from([("r".to_string(), s)]),
        };
        let report = verify_cocycle(&data, &res, &inner).unwrap();
        assert!(report.passed(), "{}", report.summary());
        let ext = build_extension(&data, &res, &inner).unwrap();
        assert!(matches!(ext, Extension::Presented(_)));
        let printed = ext.presentation().display();
        assert!(printed.contains("a^3*b^-2*s^-1"), "{}", printed);

        // breaking the boundary condition is detected
        let bad = CocycleData {
            k1: BTreeMap::from([
                ("a".to_string(), inner.aut_identity()),
                ("b".to_string(), inner.aut_identity()),
            ]),
            k2: BTreeMap::from([("r".to_string(), s)]),
        };
        assert!(!verify_cocycle(&bad, &res, &inner).unwrap().passed());
    }
}

#[cfg(test)]
mod perturbation_tests {
    use super::*;
    use crate::constructions::standard_resolution;
    use crate::presentation::parse_presentation;

    #[test]
    fn central_perturbation_preserves_the_boundary_condition() {
        // K = C3 is abelian, so every z has d(z) = 1 and is central;
        // replacing each k2(r) by k2(r) * z keeps d(k2 r) = k1(d r).
        let inner = automorphism_oracle(&parse_presentation("gp< x | r = x^3 >").unwrap(), 8).unwrap();
        let o = build_finite_oracle(&parse_presentation("gp< c | r = c^2 >").unwrap(), 8).unwrap();
        let res = standard_resolution(&o, 2).unwrap();
        let inversion = (0..inner.aut_count())
            .find(|&a| a != inner.aut_identity())
            .unwrap();
        let z = 1usize; // the element x
        assert_eq!(inner.boundary(z), inner.aut_identity());
        for act in [inner.aut_identity(), inversion] {
            let base = CocycleData {
                k1: BTreeMap::from([("[1]".into(), inner.aut_identity()), ("[c]".into(), act)]),
                k2: res.gens(2).iter().map(|r| (r.name().to_string(), 0)).collect(),
            };
            let perturbed = CocycleData {
                k1: base.k1.clone(),
                k2: base
                    .k2
                    .iter()
                    .map(|(n, &e)| (n.clone(), inner.k.mul_idx(e, z)))
                    .collect(),
            };
            let before = verify_cocycle(&base, &res, &inner).unwrap();
            let after = verify_cocycle(&perturbed, &res, &inner).unwrap();
            for (b, a) in before.items.iter().zip(after.items.iter()) {
                if b.description.starts_with("d(k2") {
                    assert_eq!(b.pass, a.pass, "{}", b.description);
                }
            }
        }
    }
}
