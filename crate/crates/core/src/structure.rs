//! Green's relations, the semilattice of idempotents, and bisimplicity witnesses.
//!
//! Idempotents are identity maps of cofinite sets, so they correspond to
//! finite subsets of `L_n × Z` (the complement of the domain). Under that
//! correspondence the product of idempotents is union and the natural order
//! is reverse inclusion.

use std::collections::BTreeSet;

use crate::element::{check_same_n, Element, LexPoint};
use crate::error::{Error, Result};
use crate::map::{is_strictly_sorted, CofiniteMonotoneMap};
use crate::scalar::{self, Int};

/// Finite subset of `L_n × Z` naming the idempotent that is the identity off it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IdempotentFinset<T = i64> {
    pub n: usize,
    pub excluded: BTreeSet<LexPoint<T>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GreenRelation {
    R,
    L,
    H,
    D,
}

pub fn r_related<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<bool> {
    check_same_n(a.n(), b.n())?;
    Ok(a.comps()
        .iter()
        .zip(b.comps())
        .all(|(x, y)| x.excluded_dom() == y.excluded_dom()))
}

pub fn l_related<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<bool> {
    check_same_n(a.n(), b.n())?;
    Ok(a.comps()
        .iter()
        .zip(b.comps())
        .all(|(x, y)| x.excluded_ran() == y.excluded_ran()))
}

pub fn h_related<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<bool> {
    Ok(r_related(a, b)? && l_related(a, b)?)
}

/// The monoid is bisimple: any two elements of the same `n` are D-related.
/// [`dclass_witness`] produces the connecting pair explicitly.
pub fn d_related<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<bool> {
    check_same_n(a.n(), b.n())?;
    Ok(true)
}

pub fn green_related<T: Int>(rel: GreenRelation, a: &Element<T>, b: &Element<T>) -> Result<bool> {
    match rel {
        GreenRelation::R => r_related(a, b),
        GreenRelation::L => l_related(a, b),
        GreenRelation::H => h_related(a, b),
        GreenRelation::D => d_related(a, b),
    }
}

/// The order isomorphism from the complement of `dom_excl` onto the
/// complement of `ran_excl`, translated by `shifts` in rank coordinates.
pub fn order_iso<T: Int>(dom_excl: &[Vec<T>], ran_excl: &[Vec<T>], shifts: &[T]) -> Result<Element<T>> {
    check_same_n(dom_excl.len(), ran_excl.len())?;
    check_same_n(dom_excl.len(), shifts.len())?;
    let comps = dom_excl
        .iter()
        .zip(ran_excl)
        .zip(shifts)
        .map(|((d, r), &c)| CofiniteMonotoneMap::new(d.clone(), r.clone(), c))
        .collect::<Result<_>>()?;
    Element::new(comps)
}

/// A pair `(a, b)` with `a b = e` and `b a = f`. Distinct shift vectors
/// give distinct pairs, so there are infinitely many.
pub fn dclass_witness<T: Int>(
    e: &Element<T>,
    f: &Element<T>,
    shifts: &[T],
) -> Result<(Element<T>, Element<T>)> {
    check_same_n(e.n(), f.n())?;
    if !e.is_idempotent() || !f.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let a = order_iso(&e.excluded_dom(), &f.excluded_dom(), shifts)?;
    let b = a.inverse()?;
    Ok((a, b))
}

/// All idempotents above `e`: exactly `2^|excluded(e)|` of them.
pub fn upset<T: Int>(e: &Element<T>) -> Result<Vec<Element<T>>> {
    let s = to_finset(e)?;
    let points: Vec<LexPoint<T>> = s.excluded.into_iter().collect();
    if points.len() >= usize::BITS as usize - 1 {
        return Err(Error::Overflow);
    }
    let mut out = Vec::with_capacity(1 << points.len());
    for mask in 0usize..(1 << points.len()) {
        let excluded = points
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .collect();
        out.push(from_finset(&IdempotentFinset { n: e.n(), excluded })?);
    }
    out.sort();
    Ok(out)
}

/// A strictly descending chain `e = e_0 > e_1 > ... ` of `len` idempotents,
/// each step excluding one more point: the lexicographically smallest
/// point with `pos >= 0` not yet excluded.
pub fn descend_chain<T: Int>(e: &Element<T>, len: usize) -> Result<Vec<Element<T>>> {
    let mut s = to_finset(e)?;
    let mut out = Vec::with_capacity(len);
    let mut cursor = T::zero();
    for step in 0..len {
        if step > 0 {
            while s.excluded.contains(&LexPoint::new(1, cursor)) {
                cursor = scalar::succ(cursor)?;
            }
            s.excluded.insert(LexPoint::new(1, cursor));
        }
        out.push(from_finset(&s)?);
    }
    Ok(out)
}

pub fn to_finset<T: Int>(e: &Element<T>) -> Result<IdempotentFinset<T>> {
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(IdempotentFinset {
        n: e.n(),
        excluded: e.excluded_dom_points().into_iter().collect(),
    })
}

pub fn from_finset<T: Int>(s: &IdempotentFinset<T>) -> Result<Element<T>> {
    if s.n == 0 {
        return Err(Error::EmptyChain);
    }
    let mut per_level = vec![Vec::new(); s.n];
    for p in &s.excluded {
        crate::element::check_index(p.level, s.n)?;
        per_level[p.level - 1].push(p.pos);
    }
    debug_assert!(per_level.iter().all(|v| is_strictly_sorted(v)));
    Element::idempotent(per_level)
}
