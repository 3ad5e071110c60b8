//! The standard free crossed resolution of a finite group.
//!
//! Dimension 1 is free on the underlying set of the group, dimension 2
//! is the free crossed module on `G x G` with `w(a,b) = [a][b][ab]^-1`,
//! and dimensions >= 3 are free modules on `G^n` with the bar-type
//! boundary formulas.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{CrossedComplex, Element, ModuleElement};
use crate::crossed_module::{PeifferFactor, PeifferSequence};
use crate::error::{Error, Result};
use crate::oracle::{FiniteGroup, GroupOracle};
use crate::words::{GeneratorSymbol, Letter, ObjectId, Word};

struct Builder {
    fg: FiniteGroup,
    base: ObjectId,
    /// dimension-1 generator `[g]` per element index
    dim1: Vec<GeneratorSymbol>,
}

impl Builder {
    fn tuple_name(&self, t: &[usize]) -> String {
        let parts: Vec<String> = t.iter().map(|&i| elt_label(&self.fg, i)).collect();
        format!("[{}]", parts.join(","))
    }

    fn tuple_sym(&self, t: &[usize]) -> GeneratorSymbol {
        GeneratorSymbol::at(&self.tuple_name(t), t.len() as u32, self.base.clone())
    }

    fn letter(&self, i: usize, inverse: bool) -> Letter {
        Letter::new(self.dim1[i].clone(), inverse)
    }

    /// `w(a,b) = [a][b][ab]^-1`
    fn omega(&self, a: usize, b: usize) -> Result<Word> {
        let ab = self.fg.mul_idx(a, b);
        Word::reduce(
            vec![self.letter(a, false), self.letter(b, false), self.letter(ab, true)],
            Some(self.base.clone()),
        )
    }

    /// `d[a,b,c] = [a,bc] [ab,c]^-1 [a,b]^-1 [b,c]^([a]^-1)`
    fn boundary3(&self, t: &[usize]) -> Result<PeifferSequence> {
        let (a, b, c) = (t[0], t[1], t[2]);
        let id = Word::identity(self.base.clone());
        let conj = Word::reduce(vec![self.letter(a, true)], Some(self.base.clone()))?;
        PeifferSequence::new(
            vec![
                PeifferFactor::new(self.tuple_sym(&[a, self.fg.mul_idx(b, c)]), false, id.clone()),
                PeifferFactor::new(self.tuple_sym(&[self.fg.mul_idx(a, b), c]), true, id.clone()),
                PeifferFactor::new(self.tuple_sym(&[a, b]), true, id),
                PeifferFactor::new(self.tuple_sym(&[b, c]), false, conj),
            ],
            self.base.clone(),
        )
    }

    /// The alternating-sum boundary for `n >= 4`.
    fn boundary_n(&self, t: &[usize]) -> Result<ModuleElement> {
        let n = t.len();
        let mut out = ModuleElement::zero(n as u32 - 1, self.base.clone());
        let conj = Word::reduce(vec![self.letter(t[0], true)], Some(self.base.clone()))?;
        out.add_term(self.tuple_sym(&t[1..]), conj, BigInt::one())?;
        let mut sign = -BigInt::one();
        for i in 0..n - 1 {
            let mut merged: Vec<usize> = Vec::with_capacity(n - 1);
            merged.extend_from_slice(&t[..i]);
            merged.push(self.fg.mul_idx(t[i], t[i + 1]));
            merged.extend_from_slice(&t[i + 2..]);
            out.add_term(
                self.tuple_sym(&merged),
                Word::identity(self.base.clone()),
                sign.clone(),
            )?;
            sign = -sign;
        }
        out.add_term(
            self.tuple_sym(&t[..n - 1]),
            Word::identity(self.base.clone()),
            sign,
        )?;
        Ok(out)
    }
}

fn elt_label(fg: &FiniteGroup, i: usize) -> String {
    let w = &fg.reps()[i];
    if w.is_identity() {
        "1".to_string()
    } else {
        w.display()
    }
}

fn tuples(n: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..order).map(move |i| {
                    let mut s = t.clone();
                    s.push(i);
                    s
                })
            })
            .collect();
    }
    out
}

pub fn standard_resolution(oracle: &GroupOracle, max_dim: u32) -> Result<CrossedComplex> {
    let GroupOracle::Finite(fg) = oracle else {
        return Err(Error::NotFinite);
    };
    if max_dim < 1 {
        return Err(Error::DimensionOutOfRange(max_dim));
    }
    let base = ObjectId::base();
    let order = fg.order();

    let mut b = Builder {
        fg: fg.clone(),
        base: base.clone(),
        dim1: Vec::new(),
    };
    for i in 0..order {
        b.dim1.push(GeneratorSymbol::dim1(
            &format!("[{}]", elt_label(fg, i)),
            base.clone(),
            base.clone(),
        ));
    }

    let mut c = CrossedComplex::new([base.clone()]);
    for g in &b.dim1 {
        c.add_gen(g.clone())?;
    }
    for n in 2..=max_dim {
        for t in tuples(n as usize, order) {
            let sym = b.tuple_sym(&t);
            c.add_gen(sym.clone())?;
            let value = match n {
                2 => Element::Word(b.omega(t[0], t[1])?),
                3 => Element::Peiffer(b.boundary3(&t)?),
                _ => Element::Module(b.boundary_n(&t)?),
            };
            c.set_boundary(&sym, value)?;
        }
    }

    // coefficient oracle over the [g] alphabet, reusing the table
    let n = order;
    let mut reps = Vec::with_capacity(n);
    let mut gen_elt = BTreeMap::new();
    for i in 0..n {
        if i == 0 {
            reps.push(Word::identity(base.clone()));
        } else {
            reps.push(Word::reduce(vec![b.letter(i, false)], Some(base.clone()))?);
        }
        gen_elt.insert(b.dim1[i].name().to_string(), i);
    }
    let mut table = vec![vec![0usize; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = fg.mul_idx(i, j);
        }
    }
    c.set_oracle(Some(GroupOracle::Finite(FiniteGroup::from_table(
        reps,
        table,
        b.dim1.clone(),
        gen_elt,
    )?)));
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::build_finite_oracle;
    use crate::presentation::parse_presentation;

    fn cyclic_oracle(p: u32) -> GroupOracle {
        let pres = parse_presentation(&format!("gp< c | r = c^{} >", p)).unwrap();
        build_finite_oracle(&pres, 64).unwrap()
    }

    #[test]
    fn omega_is_a_b_ab_inverse() {
        let c = standard_resolution(&cyclic_oracle(3), 2).unwrap();
        // w(c, c) = [c][c][c^2]^-1
        let g = c.gen_named(2, "[c,c]").unwrap();
        let w = c.boundary_of(g).unwrap().as_word().unwrap();
        assert_eq!(w.display(), "\"[c]\"^2*\"[c^2]\"^-1");
    }

    #[test]
    fn generator_counts_are_powers_of_the_order() {
        let c = standard_resolution(&cyclic_oracle(3), 4).unwrap();
        assert_eq!(c.gens(1).len(), 3);
        assert_eq!(c.gens(2).len(), 9);
        assert_eq!(c.gens(3).len(), 27);
        assert_eq!(c.gens(4).len(), 81);
    }

    #[test]
    fn boundary3_for_c2_matches_formula() {
        // phi3[t,t,t] = [t,1][1,t]^-1[t,t]^-1 [t,t]^([t]^-1)
        let c = standard_resolution(&cyclic_oracle(2), 3).unwrap();
        let g = c.gen_named(3, "[c,c,c]").unwrap();
        let b = c.boundary_of(g).unwrap().as_peiffer().unwrap();
        let f = b.factors();
        assert_eq!(f.len(), 4);
        assert_eq!(f[0].gen.name(), "[c,1]");
        assert!(!f[0].inverse);
        assert_eq!(f[1].gen.name(), "[1,c]");
        assert!(f[1].inverse);
        assert_eq!(f[2].gen.name(), "[c,c]");
        assert!(f[2].inverse);
        assert_eq!(f[3].gen.name(), "[c,c]");
        assert!(!f[3].inverse);
        assert_eq!(f[3].conj.display(), "\"[c]\"^-1");
    }

    #[test]
    fn axioms_hold_for_c2_to_dim_4() {
        let c = standard_resolution(&cyclic_oracle(2), 4).unwrap();
        let report = c.check_axioms(4).unwrap();
        assert!(report.passed(), "{}", report.summary());
    }

    #[test]
    fn boundary4_has_five_formal_terms_generically() {
        // the n = 4 formula contributes 1 + (n-1) + 1 summands
        let pres = parse_presentation("gp< s, t | q1 = s^2, q2 = t^3, q3 = s*t*s*t >").unwrap();
        let o = build_finite_oracle(&pres, 10).unwrap();
        let c = standard_resolution(&o, 4).unwrap();
        let g = c.gen_named(4, "[s,t,s*t,t^2]").unwrap();
        let b = c.boundary_of(g).unwrap().as_module().unwrap();
        assert_eq!(b.num_terms(), 5);
    }
}
