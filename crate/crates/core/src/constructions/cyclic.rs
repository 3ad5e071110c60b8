//! The small free crossed resolution of the cyclic group C_p: one free
//! generator per dimension, with boundaries alternating between the
//! difference `1 - c` and the norm `1 + c + ... + c^(p-1)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{CrossedComplex, Element, ModuleElement};
use crate::crossed_module::{PeifferFactor, PeifferSequence};
use crate::error::{Error, Result};
use crate::oracle::build_finite_oracle;
use crate::words::{GeneratorSymbol, ObjectId, Word};

pub fn cyclic_resolution(p: u32, max_dim: u32) -> Result<CrossedComplex> {
    cyclic_resolution_named("a", p, max_dim)
}

/// The same resolution with a caller-chosen dimension-1 generator name.
pub fn cyclic_resolution_named(name: &str, p: u32, max_dim: u32) -> Result<CrossedComplex> {
    if p < 1 {
        return Err(Error::DimensionOutOfRange(p));
    }
    let base = ObjectId::base();
    let a = GeneratorSymbol::dim1(name, base.clone(), base.clone());
    let mut c = CrossedComplex::new([base.clone()]);
    c.add_gen(a.clone())?;

    let gen_at = |n: u32| GeneratorSymbol::at(&format!("c{}", n), n, base.clone());
    let a_pow = |k: i64| Word::generator(&a).pow(k);

    for n in 2..=max_dim {
        let sym = gen_at(n);
        c.add_gen(sym.clone())?;
        let value = match n {
            2 => Element::Word(a_pow(p as i64)?),
            3 => {
                // c2 (1 - c), written multiplicatively
                let c2 = gen_at(2);
                Element::Peiffer(PeifferSequence::new(
                    vec![
                        PeifferFactor::new(c2.clone(), false, Word::identity(base.clone())),
                        PeifferFactor::new(c2, true, a_pow(1)?),
                    ],
                    base.clone(),
                )?)
            }
            n if n % 2 == 1 => {
                let mut m = ModuleElement::zero(n - 1, base.clone());
                m.add_term(gen_at(n - 1), Word::identity(base.clone()), BigInt::one())?;
                m.add_term(gen_at(n - 1), a_pow(1)?, -BigInt::one())?;
                Element::Module(m)
            }
            _ => {
                let mut m = ModuleElement::zero(n - 1, base.clone());
                for i in 0..p {
                    m.add_term(gen_at(n - 1), a_pow(i as i64)?, BigInt::one())?;
                }
                Element::Module(m)
            }
        };
        c.set_boundary(&sym, value)?;
    }

    let pres = c.bottom_presentation()?;
    if !pres.is_free() {
        c.set_oracle(Some(build_finite_oracle(&pres, p as usize + 1)?));
    }
    Ok(c)
}
