//! Polynomial ideals over Q with exact Gröbner-basis machinery.
//!
//! The engine is a classic Buchberger loop with the coprime-leading-term
//! and chain criteria, full normal-form reduction, and content-free
//! (leading-coefficient-1) normalization after every reduction. Ideal
//! intersection uses the auxiliary-variable construction t·I + (1−t)·J
//! under a block order eliminating t; an independent degree-by-degree
//! linear-algebra oracle over homogeneous slices double-checks it.
//!
//! Every potentially long-running entry point takes an [`EngineConfig`]
//! whose budgets (maximum S-pairs, maximum term counts) abort cleanly with
//! a reported error instead of truncating results.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::config::EngineConfig;
use crate::error::Error;
use crate::linalg::{intersect_rowspaces, rref, Subspace};
use crate::poly::{monomials_of_degree, Mono, MonomialOrder, Poly};
use crate::ratio::Rat;
use crate::Result;

/// Fully reduces `f` modulo `basis`: every term of the result is divisible
/// by no leading monomial of the basis. Requires a monic basis.
pub fn normal_form(
    f: &Poly,
    basis: &[Poly],
    ord: MonomialOrder,
    cfg: &EngineConfig,
) -> Result<Poly> {
    let leads: Vec<(&Mono, &Poly)> = basis
        .iter()
        .map(|g| (g.leading(ord).expect("basis elements are nonzero").0, g))
        .collect();
    let nvars = f.nvars();
    let mut cur = f.clone();
    let mut rem = Poly::zero(nvars);
    while let Some((m, c)) = cur.leading(ord) {
        let m = m.clone();
        let c = c.clone();
        match leads.iter().find(|(lm, _)| lm.divides(&m)) {
            Some((lm, g)) => {
                let quot = lm.div_into(&m);
                cur = cur.sub(&g.mul_term(&quot, &c));
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                cur.add_term(m, -c);
            }
        }
        if cur.num_terms() > cfg.max_poly_terms {
            return Err(Error::BudgetExceeded {
                what: "normal form",
                detail: format!("intermediate polynomial reached {} terms", cur.num_terms()),
                limit: cfg.max_poly_terms,
            });
        }
    }
    Ok(rem)
}

/// Minimalizes and mutually reduces a Gröbner basis into THE reduced basis:
/// monic, no generator's term divisible by another's leading monomial,
/// sorted by decreasing leading monomial.
fn reduce_basis(mut basis: Vec<Poly>, ord: MonomialOrder, cfg: &EngineConfig) -> Result<Vec<Poly>> {
    basis.retain(|g| !g.is_zero());
    // Minimal: drop generators whose leading monomial another divides.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lm_i = basis[i].leading(ord).unwrap().0.clone();
        for j in 0..basis.len() {
            if i != j && keep[j] {
                let lm_j = basis[j].leading(ord).unwrap().0;
                if lm_j.divides(&lm_i) && (lm_j != &lm_i || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let minimal: Vec<Poly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // Reduced: rewrite each generator modulo the others until stable.
    let mut reduced: Vec<Poly> = minimal.iter().map(|g| g.monic(ord)).collect();
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let others: Vec<Poly> = reduced
                .iter()
                .enumerate()
                .filter_map(|(j, g)| (j != i).then(|| g.clone()))
                .collect();
            let nf = normal_form(&reduced[i], &others, ord, cfg)?.monic(ord);
            if nf != reduced[i] {
                reduced[i] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reduced.retain(|g| !g.is_zero());
    reduced.sort_by(|a, b| {
        let la = a.leading(ord).unwrap().0;
        let lb = b.leading(ord).unwrap().0;
        ord.cmp(lb, la)
    });
    Ok(reduced)
}

/// Buchberger's algorithm; returns the unique reduced Gröbner basis.
pub fn buchberger(gens: &[Poly], ord: MonomialOrder, cfg: &EngineConfig) -> Result<Vec<Poly>> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let m = g.monic(ord);
            if !basis.contains(&m) {
                basis.push(m);
            }
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let lm = |basis: &[Poly], i: usize| -> Mono { basis[i].leading(ord).unwrap().0.clone() };

    // Pending pairs, processed smallest lcm-degree first.
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..i {
            let l = lm(&basis, i).lcm(&lm(&basis, j));
            pending.insert((l.degree(), j, i));
        }
    }
    let is_pending = |pending: &BTreeSet<(u32, usize, usize)>, basis: &[Poly], a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let l = basis[a]
            .leading(ord)
            .unwrap()
            .0
            .lcm(basis[b].leading(ord).unwrap().0);
        pending.contains(&(l.degree(), a, b))
    };

    let mut processed = 0usize;
    while let Some(&(_, i, j)) = pending.iter().next() {
        let key = *pending.iter().next().unwrap();
        pending.remove(&key);
        processed += 1;
        if processed > cfg.max_spairs {
            return Err(Error::BudgetExceeded {
                what: "Buchberger loop",
                detail: format!("processed {processed} S-pairs"),
                limit: cfg.max_spairs,
            });
        }
        let lmi = lm(&basis, i);
        let lmj = lm(&basis, j);
        // First criterion: coprime leading monomials reduce to zero.
        if lmi.coprime(&lmj) {
            continue;
        }
        // Chain criterion: a third element dividing the lcm whose pairs with
        // both ends are already settled makes this pair redundant.
        let l = lmi.lcm(&lmj);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis, k).divides(&l)
                && !is_pending(&pending, &basis, i, k)
                && !is_pending(&pending, &basis, j, k)
        });
        if chained {
            continue;
        }
        // S-polynomial (both inputs are monic).
        let qi = lmi.div_into(&l);
        let qj = lmj.div_into(&l);
        let s = basis[i]
            .mul_term(&qi, &Rat::one())
            .sub(&basis[j].mul_term(&qj, &Rat::one()));
        let nf = normal_form(&s, &basis, ord, cfg)?;
        if !nf.is_zero() {
            let nf = nf.monic(ord);
            let new_idx = basis.len();
            basis.push(nf);
            for k in 0..new_idx {
                let l = lm(&basis, k).lcm(&lm(&basis, new_idx));
                pending.insert((l.degree(), k, new_idx));
            }
        }
    }
    reduce_basis(basis, ord, cfg)
}

/// Order of vanishing of `g` along the subspace `w`: rewrite in coordinates
/// adapted to `w` and take the minimum total degree in the first
/// codim(`w`) coordinates. `None` encodes +∞ (the zero polynomial).
pub fn vanishing_order_along(g: &Poly, w: &Subspace) -> Result<Option<u32>> {
    if w.is_full() {
        return Err(Error::invalid(
            "vanishing order along the ambient space is undefined",
        ));
    }
    if g.nvars() != w.ambient() {
        return Err(Error::invalid(format!(
            "polynomial in {} variables measured along a subspace of C^{}",
            g.nvars(),
            w.ambient()
        )));
    }
    if g.is_zero() {
        return Ok(None);
    }
    let rewritten = g.change_coordinates(&w.adapted_basis());
    Ok(rewritten.min_degree_in_prefix(w.codim()))
}

/// A finitely generated ideal in Q[x1..xn], with a single-slot cache for
/// one reduced Gröbner basis (order it was requested under is remembered).
#[derive(Debug, Clone)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Poly>,
    gb: OnceLock<(MonomialOrder, Arc<Vec<Poly>>)>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.gens == other.gens
    }
}
impl Eq for Ideal {}

impl Ideal {
    /// Drops zero generators; keeps the presentation otherwise.
    pub fn new(nvars: usize, gens: Vec<Poly>) -> Ideal {
        for g in &gens {
            assert_eq!(g.nvars(), nvars, "generator variable count mismatch");
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            nvars,
            gens,
            gb: OnceLock::new(),
        }
    }

    /// The unit ideal (1).
    pub fn unit(nvars: usize) -> Ideal {
        Ideal::new(nvars, vec![Poly::one(nvars)])
    }

    /// The zero ideal.
    pub fn zero(nvars: usize) -> Ideal {
        Ideal::new(nvars, Vec::new())
    }

    /// Ideal of a linear subspace: generated by its canonical defining forms.
    pub fn of_subspace(w: &Subspace) -> Ideal {
        let gens = w
            .normals()
            .iter()
            .map(|row| Poly::linear(row, Rat::zero()))
            .collect();
        Ideal::new(w.ambient(), gens)
    }

    /// Builds an ideal carrying an already-reduced Gröbner basis as its
    /// generating set (the cache is pre-seeded).
    fn from_reduced_gb(nvars: usize, gb: Vec<Poly>, ord: MonomialOrder) -> Ideal {
        let ideal = Ideal::new(nvars, gb.clone());
        let _ = ideal.gb.set((ord, Arc::new(gb)));
        ideal
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// All generators homogeneous (the zero ideal counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }

    /// Reduced Gröbner basis under `ord`. The first order requested is
    /// cached; other orders recompute without caching.
    pub fn groebner(&self, ord: MonomialOrder, cfg: &EngineConfig) -> Result<Arc<Vec<Poly>>> {
        if let Some((cached_ord, gb)) = self.gb.get() {
            if *cached_ord == ord {
                return Ok(Arc::clone(gb));
            }
            return Ok(Arc::new(buchberger(&self.gens, ord, cfg)?));
        }
        let gb = Arc::new(buchberger(&self.gens, ord, cfg)?);
        let _ = self.gb.set((ord, Arc::clone(&gb)));
        Ok(gb)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True iff the ideal is the whole ring (reduced basis = {1}).
    pub fn is_unit(&self, cfg: &EngineConfig) -> Result<bool> {
        if self.gens.iter().any(|g| {
            g.num_terms() == 1 && g.terms().next().map(|(m, _)| m.is_one()) == Some(true)
        }) {
            return Ok(true);
        }
        let gb = self.groebner(MonomialOrder::GrevLex, cfg)?;
        Ok(gb.len() == 1 && gb[0] == Poly::one(self.nvars))
    }

    /// Ideal membership via normal form against the reduced basis.
    pub fn member(&self, g: &Poly, cfg: &EngineConfig) -> Result<bool> {
        if g.is_zero() {
            return Ok(true);
        }
        if g.nvars() != self.nvars {
            return Err(Error::invalid("membership query in the wrong ring"));
        }
        let gb = self.groebner(MonomialOrder::GrevLex, cfg)?;
        Ok(normal_form(g, &gb, MonomialOrder::GrevLex, cfg)?.is_zero())
    }

    /// True iff self ⊇ other, i.e. every generator of `other` is a member.
    pub fn contains_ideal(&self, other: &Ideal, cfg: &EngineConfig) -> Result<bool> {
        for g in &other.gens {
            if !self.member(g, cfg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals: mutual containment.
    pub fn equal(&self, other: &Ideal, cfg: &EngineConfig) -> Result<bool> {
        Ok(self.contains_ideal(other, cfg)? && other.contains_ideal(self, cfg)?)
    }

    /// k-th power: generated by all k-fold products of the generators
    /// (with multiplicity), deduplicated. The 0-th power is the unit ideal.
    pub fn power(&self, k: u32) -> Ideal {
        if k == 0 {
            return Ideal::unit(self.nvars);
        }
        let mut gens: BTreeSet<Poly> = BTreeSet::new();
        for combo in (0..self.gens.len()).combinations_with_replacement(k as usize) {
            let mut prod = Poly::one(self.nvars);
            for idx in combo {
                prod = prod.mul(&self.gens[idx]);
            }
            if !prod.is_zero() {
                gens.insert(prod.monic(MonomialOrder::GrevLex));
            }
        }
        Ideal::new(self.nvars, gens.into_iter().collect())
    }

    /// Product ideal: pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens: BTreeSet<Poly> = BTreeSet::new();
        for a in &self.gens {
            for b in &other.gens {
                let prod = a.mul(b);
                if !prod.is_zero() {
                    gens.insert(prod.monic(MonomialOrder::GrevLex));
                }
            }
        }
        Ideal::new(self.nvars, gens.into_iter().collect())
    }

    /// A generator that is a nonzero constant, making the ideal trivially
    /// the whole ring without any basis computation.
    fn has_constant_generator(&self) -> bool {
        self.gens
            .iter()
            .any(|g| g.num_terms() == 1 && g.terms().next().unwrap().0.is_one())
    }
}

/// Intersection of two ideals via one auxiliary elimination variable t:
/// I ∩ J = (t·I + (1−t)·J) ∩ Q[x]. Result generators are the reduced
/// grevlex Gröbner basis of the intersection.
pub fn intersect_pair(a: &Ideal, b: &Ideal, cfg: &EngineConfig) -> Result<Ideal> {
    assert_eq!(a.nvars(), b.nvars(), "intersection across different rings");
    let n = a.nvars();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(n));
    }
    if a.has_constant_generator() {
        return Ok(b.clone());
    }
    if b.has_constant_generator() {
        return Ok(a.clone());
    }
    let t = Poly::var(n + 1, 0);
    let one_minus_t = Poly::one(n + 1).sub(&t);
    let mut lifted: Vec<Poly> = Vec::with_capacity(a.gens().len() + b.gens().len());
    for f in a.gens() {
        lifted.push(t.mul(&f.prepend_var()));
    }
    for g in b.gens() {
        lifted.push(one_minus_t.mul(&g.prepend_var()));
    }
    let gb = buchberger(&lifted, MonomialOrder::Elim(1), cfg)?;
    let eliminated: Vec<Poly> = gb
        .iter()
        .filter(|g| g.degree_in_first_var() == 0)
        .map(Poly::strip_front_var)
        .collect();
    // The t-free part of a reduced basis under the block order is already a
    // grevlex Gröbner basis of the intersection; re-canonicalize only.
    let reduced = reduce_basis(eliminated, MonomialOrder::GrevLex, cfg)?;
    let result = Ideal::from_reduced_gb(n, reduced, MonomialOrder::GrevLex);
    // Mutual-membership spot check: the intersection must sit inside both
    // operands. A failure here is an engine bug, never user error.
    for g in result.gens().iter().take(3) {
        if !a.member(g, cfg)? || !b.member(g, cfg)? {
            return Err(Error::CrossCheckFailed {
                what: "ideal intersection",
                detail: format!("result generator {g} escapes an operand"),
            });
        }
    }
    Ok(result)
}

/// Intersection of arbitrarily many ideals, folded pairwise ascending by
/// generator count (smallest presentations first). The empty intersection
/// is the unit ideal.
pub fn intersect_all(nvars: usize, ideals: &[Ideal], cfg: &EngineConfig) -> Result<Ideal> {
    let mut order: Vec<&Ideal> = ideals.iter().collect();
    order.sort_by(|x, y| {
        x.gens()
            .len()
            .cmp(&y.gens().len())
            .then_with(|| x.gens().cmp(y.gens()))
    });
    let mut acc = Ideal::unit(nvars);
    for ideal in order {
        assert_eq!(ideal.nvars(), nvars, "intersection across different rings");
        acc = intersect_pair(&acc, ideal, cfg)?;
    }
    Ok(acc)
}

/// Canonical basis (RREF rows over the degree-`degree` monomials, graded
/// reverse-lex descending columns) of the degree slice of a homogeneous
/// ideal.
pub fn ideal_degree_slice(ideal: &Ideal, degree: u32) -> Result<Vec<Vec<Rat>>> {
    if !ideal.is_homogeneous() {
        return Err(Error::invalid(
            "degree slices require homogeneous generators",
        ));
    }
    let n = ideal.nvars();
    let cols = monomials_of_degree(n, degree);
    let index: std::collections::BTreeMap<&Mono, usize> =
        cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for g in ideal.gens() {
        let d = g.total_degree().unwrap();
        if d > degree {
            continue;
        }
        for shift in monomials_of_degree(n, degree - d) {
            let prod = g.mul_term(&shift, &Rat::one());
            let mut row = vec![Rat::zero(); cols.len()];
            for (m, c) in prod.terms() {
                row[index[m]] = c.clone();
            }
            rows.push(row);
        }
    }
    rref(&mut rows);
    Ok(rows)
}

/// One graded piece of a truncated intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSlice {
    pub degree: u32,
    /// Column monomials, graded reverse-lex descending.
    pub monomials: Vec<Mono>,
    /// Canonical RREF basis of the slice in those columns.
    pub basis: Vec<Vec<Rat>>,
}

/// Degree-by-degree intersection of homogeneous ideals by exact linear
/// algebra, up to and including `max_degree`. This shares no code with the
/// Gröbner route and serves as its independent oracle.
pub fn truncated_intersection(
    nvars: usize,
    ideals: &[Ideal],
    max_degree: u32,
) -> Result<Vec<DegreeSlice>> {
    for ideal in ideals {
        if ideal.nvars() != nvars {
            return Err(Error::invalid("intersection across different rings"));
        }
        if !ideal.is_homogeneous() {
            return Err(Error::invalid(
                "truncated intersection requires homogeneous generators",
            ));
        }
    }
    let mut out = Vec::new();
    for degree in 0..=max_degree {
        let cols = monomials_of_degree(nvars, degree);
        let mut acc: Option<Vec<Vec<Rat>>> = None;
        for ideal in ideals {
            let slice = ideal_degree_slice(ideal, degree)?;
            acc = Some(match acc {
                None => slice,
                Some(prev) => intersect_rowspaces(&prev, &slice, cols.len()),
            });
        }
        let basis = acc.unwrap_or_else(|| {
            // Empty intersection is the unit ideal: the full degree slice.
            let mut full: Vec<Vec<Rat>> = cols
                .iter()
                .enumerate()
                .map(|(i, _)| {
                    let mut row = vec![Rat::zero(); cols.len()];
                    row[i] = Rat::one();
                    row
                })
                .collect();
            rref(&mut full);
            full
        });
        out.push(DegreeSlice {
            degree,
            monomials: cols,
            basis,
        });
    }
    Ok(out)
}

/// Checks that `ideal` has exactly the given degree slices (used to verify
/// a Gröbner-computed intersection against the linear-algebra oracle).
pub fn matches_slices(ideal: &Ideal, slices: &[DegreeSlice]) -> Result<bool> {
    for slice in slices {
        if ideal_degree_slice(ideal, slice.degree)? != slice.basis {
            return Ok(false);
        }
    }
    Ok(true)
}
