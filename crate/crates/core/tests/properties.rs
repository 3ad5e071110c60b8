//! Randomized property suites (criterion 10): CM1/CM2 under the
//! equality test, Peiffer-commutator insertion invariance, the Fox
//! fundamental identity, dd-triviality across all constructions, and
//! Smith normal form invariants. Each suite runs 1000 cases.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use num_traits::Signed;
use proptest::prelude::*;

use xres::complex::{ComplexMorphism, CrossedComplex, Element};
use xres::constructions::{
    amalgam_resolution, cyclic_resolution, cylinder, free_resolution, hnn_resolution,
    lift_morphism, standard_resolution, tensor_product, two_truncated, AmalgamData, HnnData,
};
use xres::crossed_module::{FreeCrossedModule, PeifferFactor, PeifferSequence};
use xres::oracle::{build_finite_oracle, GroupOracle, GroupRingElement};
use xres::presentation::{parse_presentation, Presentation};
use xres::snf::{smith_normal_form, IntMatrix};
use xres::verify::fox_derivative;
use xres::words::{GeneratorSymbol, Letter, ObjectId, Word};

const CASES: u32 = 1000;

fn s3() -> &'static (Presentation, GroupOracle, FreeCrossedModule) {
    static CELL: OnceLock<(Presentation, GroupOracle, FreeCrossedModule)> = OnceLock::new();
    CELL.get_or_init(|| {
        let p = parse_presentation("gp< s, t | q1 = s^2, q2 = t^3, q3 = s*t*s*t >").unwrap();
        let o = build_finite_oracle(&p, 10).unwrap();
        let m = FreeCrossedModule::from_presentation(&p);
        (p, o, m)
    })
}

fn raw_word(p: &Presentation, letters: &[(usize, bool)]) -> Word {
    let ls = letters
        .iter()
        .map(|(i, inv)| Letter::new(p.generators[i % p.generators.len()].clone(), *inv))
        .collect();
    Word::reduce(ls, Some(ObjectId::base())).unwrap()
}

type RawFactors = [(usize, bool, Vec<(usize, bool)>)];

fn raw_seq(p: &Presentation, factors: &RawFactors) -> PeifferSequence {
    let fs = factors
        .iter()
        .map(|(r, inv, u)| {
            PeifferFactor::new(
                p.relators[r % p.relators.len()].clone(),
                *inv,
                raw_word(p, u),
            )
        })
        .collect();
    PeifferSequence::new(fs, ObjectId::base()).unwrap()
}

fn letters_strategy(max_len: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..max_len)
}

fn seq_strategy() -> impl Strategy<Value = <RawFactors as ToOwned>::Owned> {
    prop::collection::vec((0usize..3, any::<bool>(), letters_strategy(5)), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn word_reduce_is_idempotent_and_shortening(ls in letters_strategy(10)) {
        let (p, _, _) = s3();
        let w = raw_word(p, &ls);
        prop_assert!(w.len() <= ls.len());
        let again = Word::reduce(w.letters().to_vec(), Some(ObjectId::base())).unwrap();
        prop_assert_eq!(&again, &w);
        prop_assert!(w.mul(&w.inverse()).unwrap().is_identity());
    }

    #[test]
    fn conjugation_composes(ls in letters_strategy(6), us in letters_strategy(4), vs in letters_strategy(4)) {
        let (p, _, _) = s3();
        let w = raw_word(p, &ls);
        let u = raw_word(p, &us);
        let v = raw_word(p, &vs);
        let lhs = w.conjugate(&u).unwrap().conjugate(&v).unwrap();
        let rhs = w.conjugate(&u.mul(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_axioms_hold(a in letters_strategy(4), b in letters_strategy(4), c in letters_strategy(4), m in -3i64..4, n in -3i64..4) {
        let (p, o, _) = s3();
        let x = GroupRingElement::normalized_term(&raw_word(p, &a), m.into(), o).unwrap();
        let y = GroupRingElement::normalized_term(&raw_word(p, &b), n.into(), o).unwrap();
        let z = GroupRingElement::normalized_term(&raw_word(p, &c), 1.into(), o).unwrap();
        let one = GroupRingElement::one(ObjectId::base());
        // associativity, distributivity, unit
        prop_assert_eq!(
            x.mul(&y, o).unwrap().mul(&z, o).unwrap(),
            x.mul(&y.mul(&z, o).unwrap(), o).unwrap()
        );
        prop_assert_eq!(
            x.mul(&y.add(&z), o).unwrap(),
            x.mul(&y, o).unwrap().add(&x.mul(&z, o).unwrap())
        );
        prop_assert_eq!(x.mul(&one, o).unwrap(), x.clone());
        // augmentation is multiplicative
        prop_assert_eq!(x.mul(&y, o).unwrap().aug(), x.aug() * y.aug());
    }

    #[test]
    fn normalize_respects_multiplication(a in letters_strategy(6), b in letters_strategy(6)) {
        let (p, o, _) = s3();
        let g = raw_word(p, &a);
        let h = raw_word(p, &b);
        let lhs = o.normalize(&g.mul(&h).unwrap()).unwrap();
        let rhs = o
            .normalize(&o.normalize(&g).unwrap().mul(&o.normalize(&h).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cm1_boundary_of_action_is_conjugation(fs in seq_strategy(), us in letters_strategy(5)) {
        let (p, _, m) = s3();
        let c = raw_seq(p, &fs);
        let u = raw_word(p, &us);
        let lhs = m.boundary(&c.act(&u).unwrap()).unwrap();
        let rhs = m.boundary(&c).unwrap().conjugate(&u).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cm2_conjugation_is_action_by_boundary(fs in seq_strategy(), gs in seq_strategy()) {
        let (p, o, m) = s3();
        let c = raw_seq(p, &fs);
        let d = raw_seq(p, &gs);
        let lhs = c.inverse().mul(&d).unwrap().mul(&c).unwrap();
        let rhs = d.act(&m.boundary(&c).unwrap()).unwrap();
        prop_assert!(m.equal(&lhs, &rhs, o).unwrap());
    }

    #[test]
    fn peiffer_commutator_insertion_is_invisible(
        fs in seq_strategy(),
        gs in seq_strategy(),
        hs in seq_strategy(),
        cut in 0usize..5,
    ) {
        let (p, o, m) = s3();
        let c = raw_seq(p, &fs);
        let w1 = raw_seq(p, &gs);
        let w2 = raw_seq(p, &hs);
        let comm = m.peiffer_commutator(&w1, &w2).unwrap();
        // splice the commutator into the middle of c
        let k = cut.min(c.factors().len());
        let mut spliced = c.factors()[..k].to_vec();
        spliced.extend(comm.factors().iter().cloned());
        spliced.extend(c.factors()[k..].iter().cloned());
        let spliced = PeifferSequence::new(spliced, ObjectId::base()).unwrap();
        prop_assert!(m.equal(&spliced, &c, o).unwrap());
    }

    #[test]
    fn equality_is_an_equivalence_on_samples(fs in seq_strategy(), gs in seq_strategy()) {
        let (p, o, m) = s3();
        let c = raw_seq(p, &fs);
        let d = raw_seq(p, &gs);
        prop_assert!(m.equal(&c, &c, o).unwrap());
        prop_assert_eq!(m.equal(&c, &d, o).unwrap(), m.equal(&d, &c, o).unwrap());
    }

    #[test]
    fn fox_fundamental_identity(us in letters_strategy(6), vs in letters_strategy(6), x in 0usize..2) {
        let (p, o, _) = s3();
        let u = raw_word(p, &us);
        let v = raw_word(p, &vs);
        let xg = &p.generators[x % p.generators.len()];
        for oracle in [o, &GroupOracle::Free] {
            let lhs = fox_derivative(&u.mul(&v).unwrap(), xg, oracle).unwrap();
            let ubar = GroupRingElement::normalized_term(&u, 1.into(), oracle).unwrap();
            let rhs = fox_derivative(&u, xg, oracle)
                .unwrap()
                .add(&ubar.mul(&fox_derivative(&v, xg, oracle).unwrap(), oracle).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn snf_transforms_are_unimodular_with_divisibility(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in prop::collection::vec(-9i64..10, 16),
    ) {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, entries[(i * cols + j) % entries.len()].into());
            }
        }
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        prop_assert_eq!(snf.u.det().abs(), 1.into());
        prop_assert_eq!(snf.v.det().abs(), 1.into());
        for w in snf.diagonal.windows(2) {
            if !num_traits::Zero::is_zero(&w[1]) {
                prop_assert!(!num_traits::Zero::is_zero(&w[0]));
                prop_assert!(num_traits::Zero::is_zero(&(&w[1] % &w[0])));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// dd-triviality across every construction

struct Catalog {
    complexes: Vec<(String, CrossedComplex)>,
    /// (complex index, generator) pairs of dimension >= 3
    targets: Vec<(usize, GeneratorSymbol)>,
    /// loops per (complex index, object)
    loops: BTreeMap<(usize, ObjectId), Vec<Word>>,
}

fn catalog() -> &'static Catalog {
    static CELL: OnceLock<Catalog> = OnceLock::new();
    CELL.get_or_init(|| {
        let infinite_cyclic = |name: &str| {
            free_resolution(&parse_presentation(&format!("gp< {} | >", name)).unwrap()).unwrap()
        };
        let trefoil =
            two_truncated(&parse_presentation("gp< a,b | r = a^3*b^-2 >").unwrap()).unwrap();
        let c2_oracle =
            build_finite_oracle(&parse_presentation("gp< c | r = c^2 >").unwrap(), 8).unwrap();
        let lift = |imgs: &[(&str, &str)], src: &CrossedComplex, dst: &CrossedComplex, dim| {
            let map: BTreeMap<String, String> = imgs
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            lift_morphism(&map, src, dst, dim, &BTreeMap::new()).unwrap()
        };
        let l3 = {
            let g = cyclic_resolution(3, 6).unwrap();
            let a = cyclic_resolution(3, 6).unwrap();
            let lift_k0 = lift(&[("a", "a^-1")], &a, &g, 4);
            let lift_k1 = ComplexMorphism::identity(&g);
            hnn_resolution(
                &HnnData {
                    g,
                    a,
                    lift_k0,
                    lift_k1,
                },
                5,
            )
            .unwrap()
        };
        let trefoil_pushout = {
            let a = infinite_cyclic("a");
            let b = infinite_cyclic("b");
            let c = infinite_cyclic("c");
            let lift_i = lift(&[("c", "a^3")], &c, &a, 2);
            let lift_j = lift(&[("c", "b^2")], &c, &b, 2);
            amalgam_resolution(
                &AmalgamData {
                    a,
                    b,
                    c,
                    lift_i,
                    lift_j,
                },
                4,
            )
            .unwrap()
        };
        let complexes = vec![
            ("standard C2".to_string(), standard_resolution(&c2_oracle, 4).unwrap()),
            ("cyclic C3".to_string(), cyclic_resolution(3, 6).unwrap()),
            ("cyclic C5".to_string(), cyclic_resolution(5, 5).unwrap()),
            ("L = *_k C3".to_string(), l3),
            ("trefoil tensor square".to_string(), tensor_product(&trefoil, &trefoil, 4).unwrap()),
            (
                "C2 (x) C2 resolutions".to_string(),
                tensor_product(&cyclic_resolution(2, 3).unwrap(), &cyclic_resolution(2, 3).unwrap(), 4)
                    .unwrap(),
            ),
            ("cylinder on C2".to_string(), cylinder(&cyclic_resolution(2, 4).unwrap(), 4).unwrap()),
            ("trefoil pushout".to_string(), trefoil_pushout),
        ];
        let mut targets = Vec::new();
        let mut loops: BTreeMap<(usize, ObjectId), Vec<Word>> = BTreeMap::new();
        for (ci, (_, c)) in complexes.iter().enumerate() {
            for d in 3..=c.max_dim() {
                for g in c.gens(d) {
                    targets.push((ci, g.clone()));
                }
            }
            let connectors: Vec<&GeneratorSymbol> =
                c.gens(1).iter().filter(|g| !g.is_loop()).collect();
            for o in c.objects() {
                let mut pool: Vec<Word> = c
                    .gens(1)
                    .iter()
                    .filter(|g| g.is_loop() && g.source() == o)
                    .map(Word::generator)
                    .collect();
                for conn in &connectors {
                    // transport loops at the far end through the connector
                    let iota = Word::generator(conn);
                    for g in c.gens(1) {
                        if g.is_loop() && g.source() == conn.source() && conn.target() == o {
                            pool.push(Word::generator(g).conjugate(&iota).unwrap());
                        }
                    }
                }
                loops.insert((ci, o.clone()), pool);
            }
        }
        Catalog {
            complexes,
            targets,
            loops,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn dd_trivial_on_all_constructions(
        pick in any::<prop::sample::Index>(),
        picks in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 0..4),
    ) {
        let cat = catalog();
        let (ci, g) = &cat.targets[pick.index(cat.targets.len())];
        let (_, c) = &cat.complexes[*ci];
        let pool = &cat.loops[&(*ci, g.basepoint().clone())];
        let mut u = Word::identity(g.basepoint().clone());
        if !pool.is_empty() {
            for (ix, inv) in &picks {
                let w = &pool[ix.index(pool.len())];
                u = u.mul(&if *inv { w.inverse() } else { w.clone() }).unwrap();
            }
        }
        // boundary respects the action, and the double boundary vanishes
        let b = c.boundary_of(g).unwrap().act(&u).unwrap();
        let bb = c.boundary(&b).unwrap();
        match bb {
            Element::Word(w) => prop_assert!(w.is_identity()),
            Element::Peiffer(p) => prop_assert!(c.is_identity_dim2(&p).unwrap()),
            Element::Module(m) => prop_assert!(m.is_zero_under(c.coeff_oracle()).unwrap()),
        }
    }

    #[test]
    fn boundary_commutes_with_the_action(
        pick in any::<prop::sample::Index>(),
        picks in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 0..3),
    ) {
        let cat = catalog();
        let (ci, g) = &cat.targets[pick.index(cat.targets.len())];
        let (_, c) = &cat.complexes[*ci];
        let pool = &cat.loops[&(*ci, g.basepoint().clone())];
        let mut u = Word::identity(g.basepoint().clone());
        if !pool.is_empty() {
            for (ix, inv) in &picks {
                let w = &pool[ix.index(pool.len())];
                u = u.mul(&if *inv { w.inverse() } else { w.clone() }).unwrap();
            }
        }
        let lhs = c
            .boundary(&c.boundary_of(g).unwrap().act(&u).unwrap())
            .unwrap();
        let rhs = c.boundary(c.boundary_of(g).unwrap()).unwrap().act(&u).unwrap();
        match (lhs, rhs) {
            (Element::Peiffer(a), Element::Peiffer(b)) => {
                prop_assert!(c.equal_dim2(&a, &b).unwrap())
            }
            (Element::Module(a), Element::Module(b)) => {
                prop_assert!(a.sub(&b).unwrap().is_zero_under(c.coeff_oracle()).unwrap())
            }
            (Element::Word(a), Element::Word(b)) => prop_assert_eq!(a, b),
            _ => prop_assert!(false, "dimension mismatch"),
        }
    }
}

/// Keeps the whole randomized battery inside the criterion budget.
#[test]
fn property_suites_fit_the_budget() {
    let started = Instant::now();
    let _ = catalog();
    println!(
        "criterion 10 (property suites): catalog built in {:.2?}; suites run {} cases each",
        started.elapsed(),
        CASES
    );
}
