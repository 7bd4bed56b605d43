//! Brute-force windowed maps.
//!
//! A [`WindowedMap`] is an explicit table of a partial map on
//! `L_n × [-W, W]` together with declared translation offsets outside the
//! window. Nothing here goes through the rank/unrank canonical form:
//! shadows are built by walking the complements of the exclusion sets in
//! step, composition is table lookup, and equation solving is exhaustive
//! search. The structured code is checked against this module.

use std::collections::BTreeMap;

use crate::element::{Element, LexPoint};
use crate::error::{Error, Result};
use crate::map::CofiniteMonotoneMap;
use crate::scalar::{self, Int};

/// Declared behaviour outside the window: `x + left` below it, `x + right` above it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Tail<T = i64> {
    pub left: T,
    pub right: T,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WindowedMap<T = i64> {
    n: usize,
    radius: T,
    /// Sorted by source point; raw tables may violate every other invariant.
    entries: Vec<(LexPoint<T>, LexPoint<T>)>,
    tails: Vec<Tail<T>>,
}

impl<T: Int> WindowedMap<T> {
    /// Wraps a raw table without validating it.
    pub fn new(
        n: usize,
        radius: T,
        mut entries: Vec<(LexPoint<T>, LexPoint<T>)>,
        tails: Vec<Tail<T>>,
    ) -> Self {
        entries.sort_by_key(|e| e.0);
        Self {
            n,
            radius,
            entries,
            tails,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn entries(&self) -> &[(LexPoint<T>, LexPoint<T>)] {
        &self.entries
    }

    pub fn tails(&self) -> &[Tail<T>] {
        &self.tails
    }

    pub fn lookup(&self, p: LexPoint<T>) -> Option<LexPoint<T>> {
        self.entries
            .binary_search_by(|e| e.0.cmp(&p))
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Faithful shadow of `a` on `[-radius, radius]`.
    ///
    /// The radius must exceed every exclusion point's magnitude plus the
    /// magnitudes of the eventual offsets, so both window edges sit in the
    /// translation regime.
    pub fn from_element(a: &Element<T>, radius: T) -> Result<Self> {
        let needed = scalar::succ(a.shadow_radius()?)?;
        if radius < needed {
            return Err(Error::WindowTooSmall {
                needed: needed.to_string(),
                got: radius.to_string(),
            });
        }
        let lo = scalar::neg(radius)?;
        let mut entries = Vec::new();
        let mut tails = Vec::with_capacity(a.n());
        for (idx, map) in a.comps().iter().enumerate() {
            let level = idx + 1;
            let dom = map.excluded_dom();
            let ran = map.excluded_ran();
            // lo is left of every excluded point and lo + c is left of every
            // missing value, so lo -> lo + c; walk upward pairing the
            // remaining domain points with the remaining range points.
            let mut next_value = scalar::add(lo, map.core_shift())?;
            for x in scalar::range_inclusive(lo, radius) {
                if dom.contains(&x) {
                    continue;
                }
                while ran.contains(&next_value) {
                    next_value = scalar::succ(next_value)?;
                }
                entries.push((LexPoint::new(level, x), LexPoint::new(level, next_value)));
                next_value = scalar::succ(next_value)?;
            }
            let right = scalar::sub(next_value, scalar::succ(radius)?)?;
            tails.push(Tail {
                left: map.core_shift(),
                right,
            });
        }
        Ok(Self::new(a.n(), radius, entries, tails))
    }

    /// Largest displacement `|image - point|` over the table and the tails.
    pub fn margin(&self) -> Result<T> {
        let mut m = T::zero();
        for (s, t) in &self.entries {
            m = m.max(scalar::abs(scalar::sub(t.pos, s.pos)?)?);
        }
        for t in &self.tails {
            m = m.max(scalar::abs(t.left)?).max(scalar::abs(t.right)?);
        }
        Ok(m)
    }

    /// Keeps the entries whose source lies in `[-radius, radius]`.
    pub fn restrict(&self, radius: T) -> Result<Self> {
        if radius > self.radius || radius < T::zero() {
            return Err(Error::IncompatibleWindows);
        }
        let lo = scalar::neg(radius)?;
        let entries = self
            .entries
            .iter()
            .filter(|(s, _)| s.pos >= lo && s.pos <= radius)
            .copied()
            .collect();
        Ok(Self::new(self.n, radius, entries, self.tails.clone()))
    }

    /// Pointwise product `x (self other) = (x self) other` on the shrunk
    /// window `W - margin(self)`, where no lookup can leave `other`'s window.
    pub fn compose_windowed(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.radius != other.radius {
            return Err(Error::IncompatibleWindows);
        }
        let radius = scalar::sub(self.radius, self.margin()?)?;
        if radius < T::zero() {
            return Err(Error::IncompatibleWindows);
        }
        let lo = scalar::neg(radius)?;
        let mut entries = Vec::new();
        for &(s, t) in &self.entries {
            if s.pos < lo || s.pos > radius {
                continue;
            }
            if let Some(u) = other.lookup(t) {
                entries.push((s, u));
            }
        }
        let tails = self
            .tails
            .iter()
            .zip(&other.tails)
            .map(|(a, b)| {
                Ok(Tail {
                    left: scalar::add(a.left, b.left)?,
                    right: scalar::add(a.right, b.right)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(self.n, radius, entries, tails))
    }

    /// Pointwise inverse on the shrunk window `W - margin`.
    pub fn inverse_windowed(&self) -> Result<Self> {
        let radius = scalar::sub(self.radius, self.margin()?)?;
        if radius < T::zero() {
            return Err(Error::IncompatibleWindows);
        }
        let lo = scalar::neg(radius)?;
        let entries = self
            .entries
            .iter()
            .filter(|(_, t)| t.pos >= lo && t.pos <= radius)
            .map(|&(s, t)| (t, s))
            .collect();
        let tails = self
            .tails
            .iter()
            .map(|t| {
                Ok(Tail {
                    left: scalar::neg(t.left)?,
                    right: scalar::neg(t.right)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(self.n, radius, entries, tails))
    }

    /// Point-by-point faithfulness to `a` on the window plus tail equality.
    pub fn agree(&self, a: &Element<T>) -> Result<bool> {
        if self.n != a.n() || self.tails.len() != a.n() {
            return Ok(false);
        }
        for (tail, map) in self.tails.iter().zip(a.comps()) {
            if tail.left != map.left_offset() || tail.right != map.right_offset()? {
                return Ok(false);
            }
        }
        let lo = scalar::neg(self.radius)?;
        let table: BTreeMap<_, _> = self.entries.iter().copied().collect();
        if table.len() != self.entries.len() {
            return Ok(false);
        }
        let mut seen = 0usize;
        for level in 1..=self.n {
            for x in scalar::range_inclusive(lo, self.radius) {
                let p = LexPoint::new(level, x);
                let expect = a.evaluate_lex(p)?;
                let got = table.get(&p).copied();
                if got.is_some() {
                    seen += 1;
                }
                if got != expect {
                    return Ok(false);
                }
            }
        }
        Ok(seen == self.entries.len())
    }
}

/// All size-`<= max_len` subsets of `pool`, each ascending.
fn subsets_up_to<T: Copy>(pool: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    fn go<T: Copy>(pool: &[T], start: usize, max_len: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == max_len {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            out.push(cur.clone());
            go(pool, i + 1, max_len, cur, out);
            cur.pop();
        }
    }
    go(pool, 0, max_len, &mut Vec::new(), &mut out);
    out
}

fn all_subsets<T: Copy>(pool: &[T]) -> Vec<Vec<T>> {
    subsets_up_to(pool, pool.len())
}

/// Exhaustive search for single-coordinate `x` with `a x = b` (or `x a = b`
/// when `left`), over triples whose points lie in `[-bound, bound]`.
///
/// The search is pruned only by elementary facts: offsets add under
/// products, `ran(a x) ⊆ ran x`, and `dom x` contains `a(dom b)`, which
/// caps how many points `x` may exclude. Every surviving candidate is
/// tested by an actual product.
fn brute_coordinate<T: Int>(
    a: &CofiniteMonotoneMap<T>,
    b: &CofiniteMonotoneMap<T>,
    bound: T,
    left: bool,
) -> Result<Vec<CofiniteMonotoneMap<T>>> {
    let shift = scalar::sub(b.core_shift(), a.core_shift())?;
    if scalar::abs(shift)? > bound {
        return Ok(Vec::new());
    }
    let window: Vec<T> = scalar::range_inclusive(scalar::neg(bound)?, bound).collect();
    // right equations: x's range covers ran b, so R_x ⊆ R_b, and
    // |D_x| <= |R_a| + |D_b|. Left equations mirror this.
    let (fixed_side, free_cap) = if left {
        (b.excluded_dom(), a.excluded_dom().len() + b.excluded_ran().len())
    } else {
        (b.excluded_ran(), a.excluded_ran().len() + b.excluded_dom().len())
    };
    let fixed_choices = all_subsets(fixed_side);
    let free_choices = subsets_up_to(&window, free_cap);
    let mut out = Vec::new();
    for fixed in &fixed_choices {
        for free in &free_choices {
            let (d, r) = if left {
                (fixed.clone(), free.clone())
            } else {
                (free.clone(), fixed.clone())
            };
            let x = CofiniteMonotoneMap::new(d, r, shift)?;
            let prod = if left { x.compose(a)? } else { a.compose(&x)? };
            if &prod == b {
                out.push(x);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn brute<T: Int>(a: &Element<T>, b: &Element<T>, bound: T, left: bool) -> Result<Vec<Element<T>>> {
    crate::element::check_same_n(a.n(), b.n())?;
    let mut acc: Vec<Vec<CofiniteMonotoneMap<T>>> = vec![Vec::new()];
    for (ai, bi) in a.comps().iter().zip(b.comps()) {
        let sols = brute_coordinate(ai, bi, bound, left)?;
        let mut next = Vec::with_capacity(acc.len() * sols.len());
        for prefix in &acc {
            for s in &sols {
                let mut v = prefix.clone();
                v.push(s.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    let mut out = acc.into_iter().map(Element::new).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Every `x` with exclusions in `[-bound, bound]` and `|c| <= bound` such that `a x = b`.
pub fn brute_solutions<T: Int>(a: &Element<T>, b: &Element<T>, bound: T) -> Result<Vec<Element<T>>> {
    brute(a, b, bound, false)
}

/// Every `x` with exclusions in `[-bound, bound]` and `|c| <= bound` such that `x a = b`.
pub fn brute_solutions_left<T: Int>(
    a: &Element<T>,
    b: &Element<T>,
    bound: T,
) -> Result<Vec<Element<T>>> {
    brute(a, b, bound, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = CofiniteMonotoneMap<i64>;
    type E = Element<i64>;

    fn one(m: M) -> E {
        E::new(vec![m]).unwrap()
    }

    #[test]
    fn eps_shadow() {
        let w = WindowedMap::from_element(&one(M::eps(0).unwrap()), 10).unwrap();
        assert_eq!(w.lookup(LexPoint::new(1, 0)), Some(LexPoint::new(1, 0)));
        assert_eq!(w.lookup(LexPoint::new(1, 1)), Some(LexPoint::new(1, 2)));
        assert_eq!(w.lookup(LexPoint::new(1, -7)), Some(LexPoint::new(1, -7)));
        assert_eq!(w.tails(), &[Tail { left: 0, right: 1 }]);
    }

    #[test]
    fn identity_shadow() {
        let w = WindowedMap::from_element(&E::identity(2).unwrap(), 3).unwrap();
        assert_eq!(w.entries().len(), 14);
        assert!(w.entries().iter().all(|(s, t)| s == t));
        assert_eq!(w.tails(), &[Tail { left: 0, right: 0 }; 2]);
    }

    #[test]
    fn window_too_small() {
        let a = one(M::new(vec![7], vec![], 0).unwrap());
        assert!(matches!(
            WindowedMap::from_element(&a, 5),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn composed_shadows_agree() {
        let e = one(M::eps(0).unwrap());
        let w = WindowedMap::from_element(&e, 10).unwrap();
        let ww = w.compose_windowed(&w).unwrap();
        assert!(ww.agree(&one(M::new(vec![], vec![1, 2], 0).unwrap())).unwrap());
        assert!(!ww.agree(&e).unwrap());
    }

    #[test]
    fn altered_point_disagrees() {
        let a = one(M::new(vec![2], vec![-1], 3).unwrap());
        let w = WindowedMap::from_element(&a, 12).unwrap();
        assert!(w.agree(&a).unwrap());
        let mut entries = w.entries().to_vec();
        entries[5].1.pos += 100;
        let bad = WindowedMap::new(1, 12, entries, w.tails().to_vec());
        assert!(!bad.agree(&a).unwrap());
    }

    #[test]
    fn window_shrink_consistency() {
        let a = E::new(vec![M::new(vec![-2, 1], vec![3], 2).unwrap(), M::eps(-1).unwrap()]).unwrap();
        let b = E::new(vec![M::new(vec![0], vec![0, 4], -1).unwrap(), M::translation(2)]).unwrap();
        let big = WindowedMap::from_element(&a, 40)
            .unwrap()
            .compose_windowed(&WindowedMap::from_element(&b, 40).unwrap())
            .unwrap();
        let small = WindowedMap::from_element(&a, 20)
            .unwrap()
            .compose_windowed(&WindowedMap::from_element(&b, 20).unwrap())
            .unwrap();
        assert_eq!(big.restrict(small.radius()).unwrap(), small);
    }

    #[test]
    fn brute_examples() {
        let e = one(M::eps(0).unwrap());
        let sols = brute_solutions(&e, &e, 8).unwrap();
        assert_eq!(sols, vec![E::identity(1).unwrap(), one(M::new(vec![1], vec![1], 0).unwrap())]);
        let b = one(M::new(vec![3], vec![-1], 2).unwrap());
        assert_eq!(brute_solutions(&E::identity(1).unwrap(), &b, 8).unwrap(), vec![b.clone()]);
        // eps(0) eps(0)^-1 is the identity and the freed point 1 has an empty gap
        assert_eq!(
            brute_solutions(&e, &E::identity(1).unwrap(), 8).unwrap(),
            vec![one(M::new(vec![1], vec![], 0).unwrap())]
        );
        // dom b = Z is not inside dom a
        let ei = one(M::new(vec![1], vec![], 0).unwrap());
        assert!(brute_solutions(&ei, &E::identity(1).unwrap(), 8).unwrap().is_empty());
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets_up_to(&[1, 2, 3, 4], 2).len(), 1 + 4 + 6);
        assert_eq!(all_subsets(&[1, 2, 3]).len(), 8);
    }
}
