//! Normal-form oracles for ambient groups and exact group-ring arithmetic.
//!
//! An oracle decides equality in the group the coefficients live in, by
//! mapping every word to a canonical representative. Kinds:
//!
//! * `Free` — free reduction is already a normal form.
//! * `InfiniteCyclic` — one generator, normal form `a^k`.
//! * `Finite` — multiplication table built by bounded enumeration.
//! * `Product` — direct product, letters split by side.
//! * `SemidirectZ` — `G x| Z` for a stable letter acting on a base
//!   oracle through an automorphism; covers the HNN extensions built
//!   here when the associated subgroup is the whole base group.
//! * `Folded` — a groupoid whose vertex groups all fold isomorphically
//!   onto a base group (the cylinder `I (x) B`).

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{GeneratorSymbol, Letter, ObjectId, Word};

/// Multiplication-table model of a finite group.
///
/// Index 0 is the identity. Representatives are reduced words in the
/// generators; `normalize` walks a word through the table.
#[derive(Clone)]
pub struct FiniteGroup {
    reps: Vec<Word>,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    gens: Vec<GeneratorSymbol>,
    gen_elt: BTreeMap<String, usize>,
}

impl FiniteGroup {
    /// Builds the model from explicit data. `table[i][j]` is the index of
    /// `reps[i] * reps[j]`; `gen_elt` maps generator names to element indices.
    pub fn from_table(
        reps: Vec<Word>,
        table: Vec<Vec<usize>>,
        gens: Vec<GeneratorSymbol>,
        gen_elt: BTreeMap<String, usize>,
    ) -> Result<FiniteGroup> {
        let n = reps.len();
        if n == 0 || !reps[0].is_identity() {
            return Err(Error::OracleMismatch("table must start at the identity".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::OracleMismatch("ragged multiplication table".into()));
            }
            for (j, &prod) in row.iter().enumerate() {
                if prod == 0 {
                    inv[i] = j;
                }
            }
        }
        if inv.contains(&usize::MAX) {
            return Err(Error::OracleMismatch("element without inverse".into()));
        }
        Ok(FiniteGroup {
            reps,
            table,
            inv,
            gens,
            gen_elt,
        })
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Word] {
        &self.reps
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.gens
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn element_index(&self, w: &Word) -> Result<usize> {
        let mut at = 0usize;
        for l in w.letters() {
            let g = *self
                .gen_elt
                .get(l.sym.name())
                .ok_or_else(|| Error::UnknownGenerator(l.sym.name().to_string()))?;
            let g = if l.inverse { self.inv[g] } else { g };
            at = self.table[at][g];
        }
        Ok(at)
    }

    pub fn normalize(&self, w: &Word) -> Result<Word> {
        Ok(self.reps[self.element_index(w)?].clone())
    }

    /// Order of the element `w`.
    pub fn element_order(&self, idx: usize) -> usize {
        let mut k = 1;
        let mut at = idx;
        while at != 0 {
            at = self.table[at][idx];
            k += 1;
        }
        k
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

#[derive(Clone, Debug)]
pub enum GroupOracle {
    /// Free group(oid): normal form is free reduction.
    Free,
    /// Infinite cyclic group on one generator.
    InfiniteCyclic,
    /// Finite group with a multiplication table.
    Finite(FiniteGroup),
    /// Direct product; `left` holds the dimension-1 generator names of
    /// the left factor.
    Product {
        left: Box<GroupOracle>,
        right: Box<GroupOracle>,
        left_gens: BTreeSet<String>,
    },
    /// `base x| <stable>` with `stable^-1 g stable = twist(g)`.
    SemidirectZ {
        base: Box<GroupOracle>,
        stable: GeneratorSymbol,
        twist: BTreeMap<String, Word>,
        twist_inv: BTreeMap<String, Word>,
    },
    /// Groupoid folding onto `base`: `fold` sends each dimension-1
    /// generator to a base word, `section` lifts base generators back,
    /// `iota` is the connecting arrow 0 -> 1.
    Folded {
        base: Box<GroupOracle>,
        fold: BTreeMap<String, Word>,
        section: BTreeMap<String, GeneratorSymbol>,
        iota: GeneratorSymbol,
    },
    /// Sound but incomplete normalizer by bounded relator rewriting.
    /// Words that normalize equal are equal in the group; unequal
    /// normal forms are inconclusive. Used where no exact oracle
    /// exists (e.g. coefficients over a one-relator group).
    Rewrite { rules: Vec<RewriteRule> },
}

pub type RewriteRule = (Vec<Letter>, Vec<Letter>);

impl GroupOracle {
    pub fn is_finite(&self) -> bool {
        match self {
            GroupOracle::Finite(_) => true,
            GroupOracle::Product { left, right, .. } => left.is_finite() && right.is_finite(),
            _ => false,
        }
    }

    /// Whether unequal normal forms certify inequality. Rewriting
    /// normalizers are sound but incomplete, so a failed comparison
    /// through them is inconclusive.
    pub fn is_exact(&self) -> bool {
        match self {
            GroupOracle::Rewrite { .. } => false,
            GroupOracle::Product { left, right, .. } => left.is_exact() && right.is_exact(),
            GroupOracle::SemidirectZ { base, .. } | GroupOracle::Folded { base, .. } => {
                base.is_exact()
            }
            _ => true,
        }
    }

    /// Builds a rewriting normalizer from the cyclic permutations of the
    /// relators of `p` and their inverses.
    pub fn rewriting(p: &Presentation) -> GroupOracle {
        let mut rules: Vec<RewriteRule> = Vec::new();
        for r in &p.relators {
            let w = p.omega_map()[&r.clone()].clone();
            for base in [w.clone(), w.inverse()] {
                let ls = base.letters().to_vec();
                let k = ls.len();
                if k == 0 {
                    continue;
                }
                for rot in 0..k {
                    let mut cyc = ls[rot..].to_vec();
                    cyc.extend_from_slice(&ls[..rot]);
                    // replace a long half u by the short inverse of the rest
                    for cut in k.div_ceil(2)..=k {
                        let lhs = cyc[..cut].to_vec();
                        let rhs: Vec<Letter> =
                            cyc[cut..].iter().rev().map(Letter::inverted).collect();
                        rules.push((lhs, rhs));
                    }
                }
            }
        }
        rules.sort_by(|a, b| (a.0.len(), &a.0, &a.1).cmp(&(b.0.len(), &b.0, &b.1)));
        rules.dedup();
        GroupOracle::Rewrite { rules }
    }

    /// Enumerates the elements when the group is finite.
    pub fn elements(&self) -> Result<Vec<Word>> {
        match self {
            GroupOracle::Finite(g) => Ok(g.reps().to_vec()),
            GroupOracle::Product { left, right, .. } => {
                let ls = left.elements()?;
                let rs = right.elements()?;
                let mut out = Vec::with_capacity(ls.len() * rs.len());
                for l in &ls {
                    for r in &rs {
                        out.push(l.mul(r)?);
                    }
                }
                Ok(out)
            }
            _ => Err(Error::NotFinite),
        }
    }

    pub fn order(&self) -> Result<usize> {
        match self {
            GroupOracle::Finite(g) => Ok(g.order()),
            GroupOracle::Product { left, right, .. } => Ok(left.order()? * right.order()?),
            _ => Err(Error::NotFinite),
        }
    }

    /// Canonical representative; a retraction respecting multiplication.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        match self {
            GroupOracle::Free | GroupOracle::InfiniteCyclic => Ok(w.clone()),
            GroupOracle::Finite(g) => g.normalize(w),
            GroupOracle::Product {
                left,
                right,
                left_gens,
            } => {
                let mut ll: Vec<Letter> = Vec::new();
                let mut rl: Vec<Letter> = Vec::new();
                for l in w.letters() {
                    if left_gens.contains(l.sym.name()) {
                        ll.push(l.clone());
                    } else {
                        rl.push(l.clone());
                    }
                }
                let at = Some(w.source().clone());
                let lw = left.normalize(&Word::reduce(ll, at.clone())?)?;
                let rw = right.normalize(&Word::reduce(rl, at)?)?;
                lw.mul(&rw)
            }
            GroupOracle::SemidirectZ {
                base,
                stable,
                twist,
                twist_inv,
            } => {
                // Normal form stable^m * g, scanning left to right.
                let mut m: i64 = 0;
                let mut g = Word::identity(w.source().clone());
                for l in w.letters() {
                    if l.sym == *stable {
                        if l.inverse {
                            m -= 1;
                            g = apply_letter_map(&g, twist_inv)?;
                        } else {
                            m += 1;
                            g = apply_letter_map(&g, twist)?;
                        }
                        g = base.normalize(&g)?;
                    } else {
                        g = base.normalize(&g.mul(&Word::reduce(vec![l.clone()], None)?)?)?;
                    }
                }
                let z = Word::generator(stable).pow(m)?;
                z.mul(&g)
            }
            GroupOracle::Rewrite { rules } => Ok(rewrite_to_fixpoint(w, rules)),
            GroupOracle::Folded {
                base,
                fold,
                section,
                iota,
            } => {
                let mut folded = Word::identity(ObjectId::base());
                for l in w.letters() {
                    if l.sym == *iota {
                        continue;
                    }
                    let img = fold
                        .get(l.sym.name())
                        .ok_or_else(|| Error::UnknownGenerator(l.sym.name().to_string()))?;
                    let img = if l.inverse { img.inverse() } else { img.clone() };
                    folded = folded.mul(&img)?;
                }
                let nf = base.normalize(&folded)?;
                let mut letters: Vec<Letter> = Vec::new();
                if w.source() == iota.target() {
                    letters.push(Letter::new(iota.clone(), true));
                }
                for l in nf.letters() {
                    let s = section
                        .get(l.sym.name())
                        .ok_or_else(|| Error::UnknownGenerator(l.sym.name().to_string()))?;
                    letters.push(Letter::new(s.clone(), l.inverse));
                }
                if w.target() == iota.target() {
                    letters.push(Letter::new(iota.clone(), false));
                }
                Word::reduce(letters, Some(w.source().clone()))
            }
        }
    }
}

fn letters_key(ls: &[Letter]) -> (usize, Vec<(u32, String, bool)>) {
    (
        ls.len(),
        ls.iter()
            .map(|l| (l.sym.dim(), l.sym.name().to_string(), l.inverse))
            .collect(),
    )
}

fn rewrite_to_fixpoint(w: &Word, rules: &[RewriteRule]) -> Word {
    let mut cur = w.clone();
    loop {
        let mut best: Option<Word> = None;
        let letters = cur.letters();
        for (lhs, rhs) in rules {
            if lhs.len() > letters.len() {
                continue;
            }
            for start in 0..=(letters.len() - lhs.len()) {
                if &letters[start..start + lhs.len()] == lhs.as_slice() {
                    let mut next = letters[..start].to_vec();
                    next.extend(rhs.iter().cloned());
                    next.extend_from_slice(&letters[start + lhs.len()..]);
                    let Ok(cand) = Word::reduce(next, Some(cur.source().clone())) else {
                        continue;
                    };
                    let better = letters_key(cand.letters()) < letters_key(cur.letters());
                    if better
                        && best
                            .as_ref()
                            .is_none_or(|b| letters_key(cand.letters()) < letters_key(b.letters()))
                    {
                        best = Some(cand);
                    }
                }
            }
        }
        match best {
            Some(next) => cur = next,
            None => return cur,
        }
    }
}

fn apply_letter_map(w: &Word, map: &BTreeMap<String, Word>) -> Result<Word> {
    let mut out = Word::identity(w.source().clone());
    for l in w.letters() {
        let img = map
            .get(l.sym.name())
            .ok_or_else(|| Error::UnknownGenerator(l.sym.name().to_string()))?;
        let img = if l.inverse { img.inverse() } else { img.clone() };
        out = out.mul(&img)?;
    }
    Ok(out)
}

/// Builds a `SemidirectZ` oracle, computing the inverse twist: by
/// permutation inversion over a finite base, or by inverting a signed
/// permutation of generators over a free base. Returns `None` when the
/// twist is not invertible by these means.
pub fn semidirect_z(
    base: GroupOracle,
    stable: GeneratorSymbol,
    twist: BTreeMap<String, Word>,
    gens: &[GeneratorSymbol],
) -> Result<Option<GroupOracle>> {
    let twist_inv = match &base {
        GroupOracle::Finite(fg) => {
            let n = fg.order();
            let mut image = vec![0usize; n];
            for (i, rep) in fg.reps().iter().enumerate() {
                image[i] = fg.element_index(&fg.normalize(&apply_letter_map(rep, &twist)?)?)?;
            }
            let mut pre = vec![usize::MAX; n];
            for (i, &j) in image.iter().enumerate() {
                if pre[j] != usize::MAX {
                    return Ok(None);
                }
                pre[j] = i;
            }
            let mut inv = BTreeMap::new();
            for g in gens {
                if g == &stable {
                    continue;
                }
                let idx = fg.element_index(&Word::generator(g))?;
                inv.insert(g.name().to_string(), fg.reps()[pre[idx]].clone());
            }
            inv
        }
        GroupOracle::Free | GroupOracle::InfiniteCyclic => {
            let mut inv: BTreeMap<String, Word> = BTreeMap::new();
            for (name, img) in &twist {
                if img.len() != 1 {
                    return Ok(None);
                }
                let l = &img.letters()[0];
                let Some(g) = gens.iter().find(|g| g.name() == name) else {
                    return Err(Error::UnknownGenerator(name.clone()));
                };
                let back = Word::reduce(
                    vec![Letter::new(g.clone(), l.inverse)],
                    Some(g.source().clone()),
                )?;
                if inv.insert(l.sym.name().to_string(), back).is_some() {
                    return Ok(None);
                }
            }
            if inv.len() != twist.len() {
                return Ok(None);
            }
            inv
        }
        _ => return Ok(None),
    };
    Ok(Some(GroupOracle::SemidirectZ {
        base: Box::new(base),
        stable,
        twist,
        twist_inv,
    }))
}

// ---------------------------------------------------------------------------
// Bounded enumeration of a finite quotient.

/// Builds a finite-table oracle for the group presented by `p`, by
/// bounded closure of the Cayley graph: generator edges are defined
/// breadth-first, every relator is traced from every live state, and
/// states identified by a relator trace are merged. Fails with
/// `NotFiniteWithinBound` if the closure does not stabilize within the
/// bound. This stops well short of full Todd-Coxeter (no subgroup
/// cosets, no deduction stacks) and is enough for desk-scale groups.
pub fn build_finite_oracle(p: &Presentation, bound: usize) -> Result<GroupOracle> {
    if p.objects.len() != 1 {
        return Err(Error::NotReduced);
    }
    let gens = p.generators.clone();
    if gens.is_empty() {
        let id = Word::identity(p.objects[0].clone());
        return Ok(GroupOracle::Finite(FiniteGroup::from_table(
            vec![id],
            vec![vec![0]],
            vec![],
            BTreeMap::new(),
        )?));
    }
    let deg = gens.len() * 2;
    let cap = (4 * bound).max(64);
    let gi_of = |l: &Letter| -> Result<usize> {
        let gi = gens
            .iter()
            .position(|g| g == &l.sym)
            .ok_or_else(|| Error::UnknownGenerator(l.sym.name().to_string()))?;
        Ok(gi * 2 + usize::from(l.inverse))
    };
    let flip = |col: usize| -> usize { col ^ 1 };

    let mut parent: Vec<usize> = vec![0];
    let mut edges: Vec<Vec<Option<usize>>> = vec![vec![None; deg]];
    #[allow(clippy::ptr_arg)]
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    // Merge two states and propagate through shared edges, keeping the
    // two directions of every edge consistent.
    let coincide = |parent: &mut Vec<usize>, edges: &mut Vec<Vec<Option<usize>>>, a: usize, b: usize| {
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        queue.push_back((a, b));
        while let Some((a, b)) = queue.pop_front() {
            let (a, b) = (find(parent, a), find(parent, b));
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            parent[drop] = keep;
            let row = std::mem::take(&mut edges[drop]);
            for (col, tgt) in row.into_iter().enumerate() {
                let Some(t) = tgt else { continue };
                match edges[keep][col] {
                    Some(u) => queue.push_back((t, u)),
                    None => edges[keep][col] = Some(t),
                }
                let t_r = find(parent, t);
                match edges[t_r][flip(col)] {
                    Some(u) => queue.push_back((u, keep)),
                    None => edges[t_r][flip(col)] = Some(keep),
                }
            }
        }
    };

    let relator_paths: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| p.omega_map()[r].letters().iter().map(&gi_of).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    // State-major closure: for each live state, trace every relator
    // (defining edges along the way, merging coincident states), then
    // complete its generator row. Repeat over the whole table until a
    // pass makes no change.
    loop {
        let mut changed = false;
        let mut s = 0usize;
        while s < edges.len() {
            if find(&mut parent, s) != s || edges[s].is_empty() {
                s += 1;
                continue;
            }
            for path in &relator_paths {
                if find(&mut parent, s) != s {
                    break;
                }
                let mut at = s;
                for &col in path {
                    let at_r = find(&mut parent, at);
                    match edges[at_r][col] {
                        Some(t) => at = find(&mut parent, t),
                        None => {
                            let fresh = edges.len();
                            if fresh >= cap {
                                return Err(Error::NotFiniteWithinBound {
                                    bound,
                                    reached: fresh,
                                });
                            }
                            parent.push(fresh);
                            edges.push(vec![None; deg]);
                            edges[at_r][col] = Some(fresh);
                            edges[fresh][flip(col)] = Some(at_r);
                            at = fresh;
                            changed = true;
                        }
                    }
                }
                let s_r = find(&mut parent, s);
                let at_r = find(&mut parent, at);
                if s_r != at_r {
                    coincide(&mut parent, &mut edges, s_r, at_r);
                    changed = true;
                }
            }
            if find(&mut parent, s) == s {
                for col in 0..deg {
                    if edges[s][col].is_none() {
                        let fresh = edges.len();
                        if fresh >= cap {
                            return Err(Error::NotFiniteWithinBound {
                                bound,
                                reached: fresh,
                            });
                        }
                        parent.push(fresh);
                        edges.push(vec![None; deg]);
                        edges[s][col] = Some(fresh);
                        edges[fresh][flip(col)] = Some(s);
                        changed = true;
                    }
                }
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }

    // Compact live states and build shortest-word representatives by
    // BFS over positive generator edges (positive words always suffice
    // in a finite group and display better).
    let live: Vec<usize> = (0..edges.len())
        .filter(|&s| find(&mut parent, s) == s && !edges[s].is_empty())
        .collect();
    let n = live.len();
    if n > bound {
        return Err(Error::NotFiniteWithinBound { bound, reached: n });
    }
    let mut compact: BTreeMap<usize, usize> = BTreeMap::new();
    // BFS from the identity state so index 0 is the identity
    let root = find(&mut parent, 0);
    let mut order: Vec<usize> = vec![root];
    compact.insert(root, 0);
    let mut reps: Vec<Word> = vec![Word::identity(p.objects[0].clone())];
    let mut qi = 0usize;
    while qi < order.len() {
        let s = order[qi];
        qi += 1;
        for gi in 0..gens.len() {
            let t = find(
                &mut parent,
                edges[s][gi * 2].expect("closure left an edge undefined"),
            );
            if let std::collections::btree_map::Entry::Vacant(e) = compact.entry(t) {
                e.insert(order.len());
                order.push(t);
                let l = Letter::new(gens[gi].clone(), false);
                reps.push(reps[compact[&s]].mul(&Word::reduce(vec![l], None)?)?);
            }
        }
    }
    if order.len() != n {
        return Err(Error::RewritingInconclusive(
            "closure graph is not connected".into(),
        ));
    }

    let step = |parent: &mut Vec<usize>, at: usize, col: usize| -> usize {
        let raw = edges[order[at]][col].expect("edge defined");
        compact[&find(parent, raw)]
    };
    // Verification: relators act trivially at every element.
    for path in &relator_paths {
        for start in 0..n {
            let mut at = start;
            for &col in path {
                at = step(&mut parent, at, col);
            }
            if at != start {
                return Err(Error::RewritingInconclusive(
                    "a relator does not act trivially after closure".into(),
                ));
            }
        }
    }

    let mut table = vec![vec![0usize; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut at = i;
            for l in reps[j].letters() {
                at = step(&mut parent, at, gi_of(l)?);
            }
            *cell = at;
        }
    }
    let mut gen_elt = BTreeMap::new();
    for (gi, g) in gens.iter().enumerate() {
        gen_elt.insert(g.name().to_string(), step(&mut parent, 0, gi * 2));
    }
    Ok(GroupOracle::Finite(FiniteGroup::from_table(
        reps, table, gens, gen_elt,
    )?))
}

// ---------------------------------------------------------------------------
// Group ring

/// Formal integer combination of normalized group(oid) elements.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one(at: ObjectId) -> Self {
        GroupRingElement::term(Word::identity(at), BigInt::one())
    }

    pub fn term(w: Word, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        GroupRingElement { terms }
    }

    /// Builds a term with the key normalized by `o`.
    pub fn normalized_term(w: &Word, c: BigInt, o: &GroupOracle) -> Result<Self> {
        Ok(GroupRingElement::term(o.normalize(w)?, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return GroupRingElement::zero();
        }
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Ring multiplication by coefficient convolution, normalizing keys.
    pub fn mul(&self, other: &Self, o: &GroupOracle) -> Result<Self> {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let w = o.normalize(&u.mul(v)?)?;
                out.add_term(w, a * b);
            }
        }
        Ok(out)
    }

    /// Right translation by a single group element.
    pub fn translate(&self, u: &Word, o: &GroupOracle) -> Result<Self> {
        let mut out = GroupRingElement::zero();
        for (w, c) in &self.terms {
            out.add_term(o.normalize(&w.mul(u)?)?, c.clone());
        }
        Ok(out)
    }

    /// Re-normalizes every key under `o`, merging collisions.
    pub fn renormalize(&self, o: &GroupOracle) -> Result<Self> {
        let mut out = GroupRingElement::zero();
        for (w, c) in &self.terms {
            out.add_term(o.normalize(w)?, c.clone());
        }
        Ok(out)
    }

    /// Applies `u -> u^-1` to every key (the antipode), normalizing.
    pub fn star(&self, o: &GroupOracle) -> Result<Self> {
        let mut out = GroupRingElement::zero();
        for (w, c) in &self.terms {
            out.add_term(o.normalize(&w.inverse())?, c.clone());
        }
        Ok(out)
    }

    /// Augmentation: the sum of the coefficients.
    pub fn aug(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, c| a + c)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.magnitude().to_string();
            let sign = if c.sign() == num_bigint::Sign::Minus {
                "- "
            } else if i == 0 {
                ""
            } else {
                "+ "
            };
            let body = if w.is_identity() {
                mag
            } else if mag == "1" {
                w.display()
            } else {
                format!("{}*{}", mag, w.display())
            };
            parts.push(format!("{}{}", sign, body));
        }
        parts.join(" ")
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}
