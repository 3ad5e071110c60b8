//! Numerical certification: crossed complex to chain complex (Fox
//! derivatives at the bottom), integer expansion, Smith normal form,
//! exactness checks and homology.
//!
//! Convention, fixed here and nowhere else: chain modules are left
//! modules over the group ring. The right action `x^u` of the crossed
//! world converts to the left coefficient `u^-1`, so module boundaries
//! are starred when copied into the chain complex; Fox derivatives are
//! already left coefficients. With this convention consecutive matrices
//! compose to zero as ordinary matrix products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{CrossedComplex, Element};
use crate::error::{Error, Result};
use crate::oracle::{GroupOracle, GroupRingElement};
use crate::snf::{smith_normal_form, IntMatrix};
use crate::words::{GeneratorSymbol, Word};

impl ChainComplex {
    /// Plain-text dump of one boundary matrix: one row per line, ring
    /// elements as `n1*g1 + n2*g2`, separated by ` | `.
    pub fn display_matrix(&self, n: usize) -> String {
        let mut out = String::new();
        for row in &self.mats[n] {
            let cells: Vec<String> = row.iter().map(GroupRingElement::display).collect();
            out.push_str(&cells.join(" | "));
            out.push('\n');
        }
        out
    }
}

/// Free differential: `d(uv)/dx = du/dx + u dv/dx`, coefficients
/// normalized by the oracle.
pub fn fox_derivative(
    w: &Word,
    x: &GeneratorSymbol,
    oracle: &GroupOracle,
) -> Result<GroupRingElement> {
    let mut acc = GroupRingElement::zero();
    let mut prefix = Word::identity(w.source().clone());
    for l in w.letters() {
        if &l.sym == x {
            if l.inverse {
                // d(y^-1)/dy = -y^-1
                let key = oracle.normalize(&prefix.mul(&Word::generator(&l.sym).inverse())?)?;
                acc.add_term(key, -BigInt::one());
            } else {
                acc.add_term(oracle.normalize(&prefix)?, BigInt::one());
            }
        }
        let step = Word::reduce(vec![l.clone()], Some(prefix.target().clone()))?;
        prefix = prefix.mul(&step)?;
    }
    Ok(acc)
}

/// A chain complex of free modules over a group ring: `mats[n]` is the
/// boundary from dimension n, one row per source generator.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `ranks[n]` = number of free generators in dimension n
    pub ranks: Vec<usize>,
    /// `mats[n]` : `ranks[n] x ranks[n-1]` over the group ring, for n from 1 to top
    pub mats: Vec<Vec<Vec<GroupRingElement>>>,
}

impl ChainComplex {
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }
}

/// Chain complex of a reduced free crossed complex with a coefficient
/// oracle: dimension 0 is the augmentation module, dimension 1 is free
/// on the dimension-1 generators with boundary `g - 1`, dimension 2 uses
/// Fox derivatives of the relator boundaries, and dimensions >= 3 copy
/// the module boundaries (starred into left coefficients).
pub fn to_chain_complex(
    c: &CrossedComplex,
    oracle: &GroupOracle,
    max_dim: u32,
) -> Result<ChainComplex> {
    if !c.is_reduced() {
        return Err(Error::NotReduced);
    }
    let base = c.objects().iter().next().unwrap().clone();
    let top = max_dim.min(c.max_dim()) as usize;
    let mut ranks = vec![1usize];
    let mut mats: Vec<Vec<Vec<GroupRingElement>>> = vec![Vec::new()];
    let one = GroupRingElement::one(base.clone());

    for n in 1..=top {
        let gens = c.gens(n as u32);
        ranks.push(gens.len());
        let mut rows = Vec::with_capacity(gens.len());
        match n {
            1 => {
                for g in gens {
                    let gbar =
                        GroupRingElement::normalized_term(&Word::generator(g), BigInt::one(), oracle)?;
                    rows.push(vec![gbar.sub(&one)]);
                }
            }
            2 => {
                let cols = c.gens(1);
                for g in gens {
                    let w = c.boundary_of(g)?.as_word()?;
                    let mut row = Vec::with_capacity(cols.len());
                    for x in cols {
                        row.push(fox_derivative(w, x, oracle)?);
                    }
                    rows.push(row);
                }
            }
            _ => {
                let cols = c.gens(n as u32 - 1);
                let cidx: BTreeMap<&GeneratorSymbol, usize> =
                    cols.iter().enumerate().map(|(i, g)| (g, i)).collect();
                for g in gens {
                    let mut row = vec![GroupRingElement::zero(); cols.len()];
                    let coords: BTreeMap<GeneratorSymbol, GroupRingElement> = match c
                        .boundary_of(g)?
                    {
                        Element::Peiffer(p) => c
                            .xmod()
                            .abelianize(p, oracle)?
                            .coords()
                            .map(|(g, r)| (g.clone(), r.clone()))
                            .collect(),
                        Element::Module(m) => m.renormalize(oracle)?.coords(),
                        Element::Word(_) => return Err(Error::DimensionOutOfRange(1)),
                    };
                    for (h, r) in coords {
                        let i = *cidx
                            .get(&h)
                            .ok_or_else(|| Error::UnknownGenerator(h.name().to_string()))?;
                        // right transport u becomes the left coefficient u^-1
                        row[i] = row[i].add(&r.star(oracle)?);
                    }
                    rows.push(row);
                }
            }
        }
        mats.push(rows);
    }
    Ok(ChainComplex { ranks, mats })
}

/// Checks that consecutive matrices multiply to zero over the group ring.
pub fn boundaries_compose_to_zero(cc: &ChainComplex, oracle: &GroupOracle) -> Result<bool> {
    for n in 2..=cc.top() {
        let hi = &cc.mats[n];
        let lo = &cc.mats[n - 1];
        for row in hi {
            for k in 0..cc.ranks[n - 2] {
                let mut acc = GroupRingElement::zero();
                for (coeff, lo_row) in row.iter().zip(lo) {
                    acc = acc.add(&coeff.mul(&lo_row[k], oracle)?);
                }
                if !acc.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Expands a group-ring matrix to an integer matrix over a finite group: each
/// source generator splits into |G| rows indexed by group elements, and
/// the entry row `(i, g)` records `g * M[i][j]` in the basis of `(j, h)`.
pub fn expand_matrix(
    m: &[Vec<GroupRingElement>],
    rows: usize,
    cols: usize,
    oracle: &GroupOracle,
) -> Result<IntMatrix> {
    let elements = oracle.elements()?;
    let n = elements.len();
    let eidx: BTreeMap<Word, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let mut out = IntMatrix::zeros(rows * n, cols * n);
    for (i, row) in m.iter().enumerate() {
        for (gi, g) in elements.iter().enumerate() {
            for (j, r) in row.iter().enumerate() {
                for (w, c) in r.terms() {
                    let gw = oracle.normalize(&g.mul(w)?)?;
                    let hi = *eidx
                        .get(&gw)
                        .ok_or_else(|| Error::OracleMismatch(format!("unnormalized key {}", gw)))?;
                    let cur = out.get(i * n + gi, j * n + hi).clone();
                    out.set(i * n + gi, j * n + hi, cur + c);
                }
            }
        }
    }
    Ok(out)
}

/// Applies the augmentation entrywise, producing the integer matrices of
/// the complex of coinvariants (used for group homology).
pub fn augment_matrix(m: &[Vec<GroupRingElement>]) -> IntMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = IntMatrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            out.set(i, j, r.aug());
        }
    }
    out
}

/// An abelian group presented as free rank plus torsion factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homology {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Homology {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("C{}", t));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" x ")
        }
    }
}

/// Homology at the middle of `C_in -> C_mid -> C_out`: `d_out` maps from
/// the middle module (one row per middle generator), `d_in` into it.
pub fn homology_of(d_out: &IntMatrix, d_in: &IntMatrix) -> Homology {
    assert_eq!(d_in.cols, d_out.rows);
    let out_rank = smith_normal_form(d_out).rank;
    let snf_in = smith_normal_form(d_in);
    Homology {
        free_rank: d_out.rows - out_rank - snf_in.rank,
        torsion: snf_in.torsion(),
    }
}

#[derive(Clone, Debug)]
pub struct ExactnessReport {
    /// homology per requested dimension, over the integral expansion
    pub homology: Vec<(u32, Homology)>,
    pub dd_zero: bool,
}

impl ExactnessReport {
    /// Exact in every requested positive dimension (dimension 0 must be
    /// the augmentation copy of Z).
    pub fn exact(&self) -> bool {
        self.dd_zero
            && self
                .homology
                .iter()
                .all(|(n, h)| if *n == 0 { h.is_z() } else { h.is_trivial() })
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .homology
            .iter()
            .map(|(n, h)| format!("H{} = {}", n, h.display()))
            .collect();
        format!(
            "dd = 0: {}; {}",
            if self.dd_zero { "yes" } else { "NO" },
            parts.join(", ")
        )
    }
}

/// Verifies exactness of the integral expansion of the chain complex of
/// `c` in the given dimensions. Needs boundaries up to `max(dims) + 1`.
pub fn check_exactness(c: &CrossedComplex, dims: &[u32]) -> Result<ExactnessReport> {
    let oracle = c
        .oracle()
        .cloned()
        .ok_or(Error::MissingOracle)?;
    if !oracle.is_finite() {
        return Err(Error::NotFinite);
    }
    let need = dims.iter().max().copied().unwrap_or(0) + 1;
    if c.max_dim() < need {
        return Err(Error::DimensionOutOfRange(need));
    }
    let cc = to_chain_complex(c, &oracle, need)?;
    let dd_zero = boundaries_compose_to_zero(&cc, &oracle)?;
    let order = oracle.elements()?.len();
    let expanded: Vec<IntMatrix> = (1..=cc.top())
        .map(|n| expand_matrix(&cc.mats[n], cc.ranks[n], cc.ranks[n - 1], &oracle))
        .collect::<Result<_>>()?;
    let zero_in = |n: usize| IntMatrix::zeros(0, cc.ranks[n] * order);
    let mut homology = Vec::new();
    for &d in dims {
        let n = d as usize;
        let d_out = if n == 0 {
            IntMatrix::zeros(cc.ranks[0] * order, 0)
        } else {
            expanded[n - 1].clone()
        };
        let d_in = if n < cc.top() {
            expanded[n].clone()
        } else {
            zero_in(n)
        };
        homology.push((d, homology_of(&d_out, &d_in)));
    }
    Ok(ExactnessReport { homology, dd_zero })
}

/// Group homology `H_n(G; Z)` from the augmented chain complex of a
/// resolution of `G`, using boundaries up to `max(dims) + 1`.
///
/// Augmentation is invariant under any sound coefficient normalization,
/// so this works without a finite oracle (the free fallback suffices).
/// Dimensions above the top of the complex are treated as zero modules,
/// which is the right reading for a finite-length resolution; a complex
/// truncated below `max(dims) + 1` reports the homology of the data it
/// has (kernels at the top are not divided by anything).
pub fn group_homology(c: &CrossedComplex, dims: &[u32]) -> Result<Vec<(u32, Homology)>> {
    let oracle = c.coeff_oracle().clone();
    let need = dims.iter().max().copied().unwrap_or(0) + 1;
    let cc = to_chain_complex(c, &oracle, need.min(c.max_dim()))?;
    let aug: Vec<IntMatrix> = (1..=cc.top()).map(|n| augment_matrix(&cc.mats[n])).collect();
    let rank = |n: usize| if n <= cc.top() { cc.ranks[n] } else { 0 };
    let mut out = Vec::new();
    for &d in dims {
        let n = d as usize;
        let d_out = if n == 0 {
            IntMatrix::zeros(rank(0), 0)
        } else if n <= cc.top() {
            aug[n - 1].clone()
        } else {
            IntMatrix::zeros(0, rank(n - 1))
        };
        let d_in = if n < cc.top() {
            aug[n].clone()
        } else {
            IntMatrix::zeros(0, rank(n))
        };
        out.push((d, homology_of(&d_out, &d_in)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_resolution, standard_resolution, two_truncated};
    use crate::oracle::build_finite_oracle;
    use crate::presentation::parse_presentation;

    fn trefoil_words() -> (crate::presentation::Presentation, Word) {
        let p = parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap();
        let w = p.omega(&p.relators[0]).unwrap().clone();
        (p, w)
    }

    #[test]
    fn fox_derivative_base_cases() {
        let (p, _) = trefoil_words();
        let a = p.generator("a").unwrap().clone();
        let b = p.generator("b").unwrap().clone();
        let da = fox_derivative(&Word::generator(&a), &a, &GroupOracle::Free).unwrap();
        assert_eq!(da.display(), "1");
        let db = fox_derivative(&Word::generator(&a), &b, &GroupOracle::Free).unwrap();
        assert!(db.is_zero());
    }

    #[test]
    fn fox_derivative_of_trefoil_relator() {
        let (p, w) = trefoil_words();
        let a = p.generator("a").unwrap().clone();
        let b = p.generator("b").unwrap().clone();
        let da = fox_derivative(&w, &a, &GroupOracle::Free).unwrap();
        assert_eq!(da.display(), "1 + a + a^2");
        let db = fox_derivative(&w, &b, &GroupOracle::Free).unwrap();
        assert_eq!(db.display(), "- a^3*b^-1 - a^3*b^-2");
    }

    #[test]
    fn cyclic_chain_matrices_alternate() {
        let c = cyclic_resolution(3, 5).unwrap();
        let oracle = c.oracle().unwrap().clone();
        let cc = to_chain_complex(&c, &oracle, 5).unwrap();
        // dim 2: norm; dim 3: 1 - c; dim 4: norm; dim 5: 1 - c
        assert_eq!(cc.mats[2][0][0].num_terms(), 3);
        assert_eq!(cc.mats[3][0][0].num_terms(), 2);
        assert_eq!(cc.mats[4][0][0].num_terms(), 3);
        assert_eq!(cc.mats[5][0][0].num_terms(), 2);
        assert!(boundaries_compose_to_zero(&cc, &oracle).unwrap());
    }

    #[test]
    fn trefoil_chain_row_is_fox_derivatives() {
        let t = two_truncated(&parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap()).unwrap();
        let cc = to_chain_complex(&t, &GroupOracle::Free, 2).unwrap();
        assert_eq!(cc.mats[2][0][0].display(), "1 + a + a^2");
        assert_eq!(cc.mats[2][0][1].display(), "- a^3*b^-1 - a^3*b^-2");
    }

    #[test]
    fn cyclic_resolution_is_exact_through_dim_4() {
        let c = cyclic_resolution(3, 6).unwrap();
        let report = check_exactness(&c, &[0, 1, 2, 3, 4]).unwrap();
        assert!(report.exact(), "{}", report.summary());
    }

    #[test]
    fn cyclic_group_homology_is_periodic() {
        let c = cyclic_resolution(3, 6).unwrap();
        let h = group_homology(&c, &[0, 1, 2, 3, 4, 5]).unwrap();
        let display: Vec<String> = h.iter().map(|(_, x)| x.display()).collect();
        assert_eq!(display, vec!["Z", "C3", "0", "C3", "0", "C3"]);
    }

    #[test]
    fn standard_resolution_of_c2_is_exact_low_dims() {
        let o = build_finite_oracle(&parse_presentation("gp< c | r = c^2 >").unwrap(), 8).unwrap();
        let c = standard_resolution(&o, 3).unwrap();
        let report = check_exactness(&c, &[0, 1, 2]).unwrap();
        assert!(report.exact(), "{}", report.summary());
    }

    #[test]
    fn klein_bottle_group_homology() {
        // H0 = Z, H1 = Z x C2, H2 = 0 for the Klein bottle group
        use crate::complex::ComplexMorphism;
        use crate::constructions::{free_resolution, hnn_resolution, lift_morphism, HnnData};
        use std::collections::BTreeMap;
        let z = free_resolution(&parse_presentation("gp< a | >").unwrap()).unwrap();
        let lift_k0 = lift_morphism(
            &BTreeMap::from([("a".to_string(), "a^-1".to_string())]),
            &z,
            &z,
            2,
            &BTreeMap::new(),
        )
        .unwrap();
        let lift_k1 = ComplexMorphism::identity(&z);
        let k = hnn_resolution(
            &HnnData {
                g: z.clone(),
                a: z,
                lift_k0,
                lift_k1,
            },
            3,
        )
        .unwrap();
        let h = group_homology(&k, &[0, 1, 2]).unwrap();
        assert_eq!(h[0].1.display(), "Z");
        assert_eq!(h[1].1.display(), "Z x C2");
        assert_eq!(h[2].1.display(), "0");
    }

    #[test]
    fn trefoil_group_homology_without_an_oracle() {
        // the trefoil group abelianizes to Z and is aspherical
        let t = two_truncated(&parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap()).unwrap();
        let h = group_homology(&t, &[0, 1]).unwrap();
        assert_eq!(h[0].1.display(), "Z");
        assert_eq!(h[1].1.display(), "Z");
    }

    #[test]
    fn complex_without_dim2_generators_has_empty_row() {
        let free = two_truncated(&parse_presentation("gp< a | >").unwrap()).unwrap();
        let cc = to_chain_complex(&free, &GroupOracle::Free, 2).unwrap();
        assert_eq!(cc.ranks[1], 1);
        assert_eq!(cc.ranks.get(2).copied().unwrap_or(0), 0);
    }
}
