//! Single-coordinate elements: monotone injective partial selfmaps of `Z`
//! with cofinite domain and range.
//!
//! An element is stored as a triple `(D, R, c)`: the finite set `D` of
//! points missing from the domain, the finite set `R` of points missing
//! from the range, and the shift `c` of the order isomorphism between the
//! two complements after both are collapsed onto `Z` by their rank maps.
//! Writing `rank_S(x) = x - #{s in S : s < x}`, the element sends
//! `x not in D` to `rank_R^{-1}(rank_D(x) + c)`.
//!
//! Every monotone bijection `Z \ D -> Z \ R` becomes a monotone bijection
//! `Z -> Z` after conjugating by the rank maps, i.e. a translation, so the
//! triple is a canonical form: structural equality is equality of maps.
//!
//! Products are read left to right: `a.compose(&b)` applies `a` first.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{self, Int};

/// An element of the monoid of cofinite monotone injective partial selfmaps of `Z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CofiniteMonotoneMap<T = i64> {
    excluded_dom: Vec<T>,
    excluded_ran: Vec<T>,
    core_shift: T,
}

/// Eventual behaviour of a map: `x + left` for `x <= below`, `x + right`
/// for `x >= above`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EventualOffsets<T = i64> {
    pub below: T,
    pub above: T,
    pub left: T,
    pub right: T,
}

pub(crate) fn is_strictly_sorted<T: Ord>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// `x - #{s in set : s < x}`.
fn rank<T: Int>(set: &[T], x: T) -> Result<T> {
    let below = set.partition_point(|&s| s < x);
    scalar::sub(x, scalar::from_count(below)?)
}

/// Inverse of [`rank`]: the unique `z` outside `set` with `rank(set, z) == y`.
fn unrank<T: Int>(set: &[T], y: T) -> Result<T> {
    let mut z = y;
    for &s in set {
        if s <= z {
            z = scalar::succ(z)?;
        } else {
            break;
        }
    }
    Ok(z)
}

impl<T: Int> CofiniteMonotoneMap<T> {
    /// Builds the element `(D, R, c)`. Both sets must be strictly ascending.
    pub fn new(excluded_dom: Vec<T>, excluded_ran: Vec<T>, core_shift: T) -> Result<Self> {
        if !is_strictly_sorted(&excluded_dom) || !is_strictly_sorted(&excluded_ran) {
            return Err(Error::UnsortedSet);
        }
        Ok(Self::from_sorted(excluded_dom, excluded_ran, core_shift))
    }

    pub(crate) fn from_sorted(excluded_dom: Vec<T>, excluded_ran: Vec<T>, core_shift: T) -> Self {
        debug_assert!(is_strictly_sorted(&excluded_dom) && is_strictly_sorted(&excluded_ran));
        Self {
            excluded_dom,
            excluded_ran,
            core_shift,
        }
    }

    pub fn identity() -> Self {
        Self::translation(T::zero())
    }

    /// The unit `x -> x + k`.
    pub fn translation(k: T) -> Self {
        Self::from_sorted(Vec::new(), Vec::new(), k)
    }

    /// The total map fixing `x <= k` and sending `x > k` to `x + 1`; its
    /// range misses exactly `k + 1`.
    pub fn eps(k: T) -> Result<Self> {
        Ok(Self::from_sorted(Vec::new(), vec![scalar::succ(k)?], T::zero()))
    }

    /// Identity map of `Z \ excluded`.
    pub fn idempotent(excluded: Vec<T>) -> Result<Self> {
        Self::new(excluded.clone(), excluded, T::zero())
    }

    pub fn excluded_dom(&self) -> &[T] {
        &self.excluded_dom
    }

    pub fn excluded_ran(&self) -> &[T] {
        &self.excluded_ran
    }

    pub fn core_shift(&self) -> T {
        self.core_shift
    }

    /// Image of `x`, or `None` when `x` is outside the domain.
    pub fn evaluate(&self, x: T) -> Result<Option<T>> {
        if self.excluded_dom.binary_search(&x).is_ok() {
            return Ok(None);
        }
        let y = scalar::add(rank(&self.excluded_dom, x)?, self.core_shift)?;
        unrank(&self.excluded_ran, y).map(Some)
    }

    /// Left-to-right product: `x (a b) = (x a) b`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let back = self.inverse()?;
        let mut dom = self.excluded_dom.clone();
        for &p in &other.excluded_dom {
            // p lies in ran(self) exactly when the inverse is defined there
            if let Some(x) = back.evaluate(p)? {
                dom.push(x);
            }
        }
        dom.sort_unstable();
        let mut ran = other.excluded_ran.clone();
        for &p in &self.excluded_ran {
            if let Some(y) = other.evaluate(p)? {
                ran.push(y);
            }
        }
        ran.sort_unstable();
        let shift = scalar::add(self.core_shift, other.core_shift)?;
        Ok(Self::from_sorted(dom, ran, shift))
    }

    /// The unique inverse: `(R, D, -c)`.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self::from_sorted(
            self.excluded_ran.clone(),
            self.excluded_dom.clone(),
            scalar::neg(self.core_shift)?,
        ))
    }

    /// Translation constant far to the left.
    pub fn left_offset(&self) -> T {
        self.core_shift
    }

    /// Translation constant far to the right: `c + |R| - |D|`.
    pub fn right_offset(&self) -> Result<T> {
        let grown = scalar::add(self.core_shift, scalar::from_count(self.excluded_ran.len())?)?;
        scalar::sub(grown, scalar::from_count(self.excluded_dom.len())?)
    }

    /// Thresholds and offsets of the eventual translation behaviour.
    ///
    /// `below = min(D ∪ {r - c_L}) - 1` and `above = max(D ∪ {r - c_R}) + 1`,
    /// both zero for units.
    pub fn eventual_offsets(&self) -> Result<EventualOffsets<T>> {
        let left = self.left_offset();
        let right = self.right_offset()?;
        let mut low: Option<T> = self.excluded_dom.first().copied();
        let mut high: Option<T> = self.excluded_dom.last().copied();
        for &r in &self.excluded_ran {
            let l = scalar::sub(r, left)?;
            let h = scalar::sub(r, right)?;
            low = Some(low.map_or(l, |v| v.min(l)));
            high = Some(high.map_or(h, |v| v.max(h)));
        }
        let below = low.map_or(Ok(T::zero()), scalar::pred)?;
        let above = high.map_or(Ok(T::zero()), scalar::succ)?;
        Ok(EventualOffsets {
            below,
            above,
            left,
            right,
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.core_shift.is_zero() && self.excluded_dom == self.excluded_ran
    }

    pub fn is_unit(&self) -> bool {
        self.excluded_dom.is_empty() && self.excluded_ran.is_empty()
    }

    /// Natural partial order on idempotents: `e <= f` iff `dom e ⊆ dom f`.
    pub fn natural_leq(&self, other: &Self) -> Result<bool> {
        if !self.is_idempotent() || !other.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Ok(other
            .excluded_dom
            .iter()
            .all(|p| self.excluded_dom.binary_search(p).is_ok()))
    }

    /// `dom = Z`.
    pub fn in_dom_full(&self) -> bool {
        self.excluded_dom.is_empty()
    }

    /// `ran = Z`.
    pub fn in_ran_full(&self) -> bool {
        self.excluded_ran.is_empty()
    }

    /// Largest magnitude among exclusion points, zero when there are none.
    pub fn max_point_magnitude(&self) -> Result<T> {
        let mut m = T::zero();
        for &p in self.excluded_dom.iter().chain(&self.excluded_ran) {
            m = m.max(scalar::abs(p)?);
        }
        Ok(m)
    }
}

impl<T: Int> Default for CofiniteMonotoneMap<T> {
    fn default() -> Self {
        Self::identity()
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

/// Compact text form `{"D":[..],"R":[..],"c":..}`.
impl<T: Int> fmt::Display for CofiniteMonotoneMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{\"D\":")?;
        write_list(f, &self.excluded_dom)?;
        f.write_str(",\"R\":")?;
        write_list(f, &self.excluded_ran)?;
        write!(f, ",\"c\":{}}}", self.core_shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = CofiniteMonotoneMap<i64>;

    fn m(d: &[i64], r: &[i64], c: i64) -> M {
        M::new(d.to_vec(), r.to_vec(), c).unwrap()
    }

    /// Walks from far left, pairing the next domain point with the next range
    /// point. Independent of the rank/unrank formula.
    fn walk_table(a: &M, lo: i64, hi: i64) -> Vec<Option<i64>> {
        let start = lo - 100;
        let mut y = start + a.left_offset();
        let mut out = Vec::new();
        let mut x = start;
        while x <= hi {
            if a.excluded_dom().contains(&x) {
                if x >= lo {
                    out.push(None);
                }
            } else {
                while a.excluded_ran().contains(&y) {
                    y += 1;
                }
                if x >= lo {
                    out.push(Some(y));
                }
                y += 1;
            }
            x += 1;
        }
        out
    }

    fn arb_set() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::btree_set(-10i64..=10, 0..=6).prop_map(|s| s.into_iter().collect())
    }

    fn arb_map() -> impl Strategy<Value = M> {
        (arb_set(), arb_set(), -8i64..=8).prop_map(|(d, r, c)| M::new(d, r, c).unwrap())
    }

    #[test]
    fn identity_and_translation() {
        assert_eq!(M::identity(), m(&[], &[], 0));
        assert_eq!(M::translation(3).evaluate(5).unwrap(), Some(8));
        assert_eq!(M::translation(0), M::identity());
        assert_eq!(
            M::translation(1).compose(&M::translation(-1)).unwrap(),
            M::identity()
        );
        assert_eq!(M::identity().inverse().unwrap(), M::identity());
    }

    #[test]
    fn eps_examples() {
        let e = M::eps(0).unwrap();
        assert_eq!(e.evaluate(0).unwrap(), Some(0));
        assert_eq!(e.evaluate(1).unwrap(), Some(2));
        assert_eq!(e, m(&[], &[1], 0));
        assert_eq!(e.inverse().unwrap(), m(&[1], &[], 0));
        assert!(e.in_dom_full() && !e.in_ran_full());
        let ei = e.inverse().unwrap();
        assert!(!ei.in_dom_full() && ei.in_ran_full());
        let t = M::translation(7);
        assert!(t.in_dom_full() && t.in_ran_full());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(m(&[], &[], 3).evaluate(5).unwrap(), Some(8));
        assert_eq!(m(&[2], &[5], 1).evaluate(2).unwrap(), None);
        assert_eq!(m(&[0], &[0], 0).evaluate(1).unwrap(), Some(1));
    }

    #[test]
    fn compose_examples() {
        let e = M::eps(0).unwrap();
        assert_eq!(e.compose(&e).unwrap(), m(&[], &[1, 2], 0));
        assert_eq!(e.compose(&M::translation(2)).unwrap(), m(&[], &[3], 2));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(m(&[], &[1], 0).inverse().unwrap(), m(&[1], &[], 0));
        assert_eq!(m(&[], &[], 3).inverse().unwrap(), m(&[], &[], -3));
        let a = m(&[2], &[7], 1);
        let b = a.inverse().unwrap();
        assert_eq!(b, m(&[7], &[2], -1));
        for x in -20..=20 {
            if let Some(y) = a.evaluate(x).unwrap() {
                assert_eq!(b.evaluate(y).unwrap(), Some(x));
            }
        }
    }

    #[test]
    fn eventual_offset_examples() {
        let t = M::translation(3).eventual_offsets().unwrap();
        assert_eq!((t.below, t.above, t.left, t.right), (0, 0, 3, 3));
        let e = M::eps(0).unwrap().eventual_offsets().unwrap();
        assert_eq!((e.left, e.right), (0, 1));
        let g = m(&[1, 2], &[5], 4).eventual_offsets().unwrap();
        assert_eq!((g.left, g.right), (4, 3));
    }

    #[test]
    fn idempotent_and_order() {
        assert!(M::identity().is_idempotent());
        assert!(m(&[0], &[0], 0).is_idempotent());
        assert!(!M::eps(0).unwrap().is_idempotent());
        let e = m(&[0, 3], &[0, 3], 0);
        let f = m(&[0], &[0], 0);
        assert!(e.natural_leq(&f).unwrap());
        assert!(!f.natural_leq(&e).unwrap());
        assert!(e.natural_leq(&M::identity()).unwrap());
        assert_eq!(
            M::eps(0).unwrap().natural_leq(&M::identity()),
            Err(Error::NotIdempotent)
        );
    }

    #[test]
    fn rejects_unsorted_sets() {
        assert_eq!(M::new(vec![2, 1], vec![], 0), Err(Error::UnsortedSet));
        assert_eq!(M::new(vec![], vec![1, 1], 0), Err(Error::UnsortedSet));
    }

    #[test]
    fn overflow_fails_loudly() {
        let big = CofiniteMonotoneMap::<i32>::translation(i32::MAX);
        assert_eq!(big.compose(&big), Err(Error::Overflow));
        assert_eq!(
            CofiniteMonotoneMap::<i32>::translation(i32::MIN).inverse(),
            Err(Error::Overflow)
        );
        assert_eq!(CofiniteMonotoneMap::<i8>::eps(127), Err(Error::Overflow));
    }

    #[test]
    fn idempotents_on_small_support_are_exactly_the_square_fixed_points() {
        for mask in 0u32..32 {
            let pts: Vec<i64> = (0..5).filter(|b| mask & (1 << b) != 0).map(|b| b - 2).collect();
            let e = M::idempotent(pts).unwrap();
            assert!(e.is_idempotent());
            assert_eq!(e.compose(&e).unwrap(), e);
        }
    }

    #[test]
    fn display_matches_text_form() {
        assert_eq!(m(&[], &[1, 2], 0).to_string(), r#"{"D":[],"R":[1,2],"c":0}"#);
        assert_eq!(m(&[-3], &[], -1).to_string(), r#"{"D":[-3],"R":[],"c":-1}"#);
    }

    proptest! {
        #[test]
        fn evaluate_matches_walk(a in arb_map()) {
            let table = walk_table(&a, -50, 50);
            for (i, x) in (-50..=50).enumerate() {
                prop_assert_eq!(a.evaluate(x).unwrap(), table[i]);
            }
        }

        #[test]
        fn eventual_thresholds_hold(a in arb_map()) {
            let o = a.eventual_offsets().unwrap();
            for k in 0..30 {
                prop_assert_eq!(a.evaluate(o.below - k).unwrap(), Some(o.below - k + o.left));
                prop_assert_eq!(a.evaluate(o.above + k).unwrap(), Some(o.above + k + o.right));
            }
        }

        #[test]
        fn compose_is_pointwise(a in arb_map(), b in arb_map()) {
            let ab = a.compose(&b).unwrap();
            for x in -40..=40 {
                let expect = match a.evaluate(x).unwrap() {
                    Some(y) => b.evaluate(y).unwrap(),
                    None => None,
                };
                prop_assert_eq!(ab.evaluate(x).unwrap(), expect);
            }
        }

        #[test]
        fn associativity(a in arb_map(), b in arb_map(), c in arb_map()) {
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn inverse_laws(a in arb_map()) {
            let ai = a.inverse().unwrap();
            prop_assert_eq!(a.compose(&ai).unwrap().compose(&a).unwrap(), a.clone());
            prop_assert_eq!(ai.compose(&a).unwrap().compose(&ai).unwrap(), ai.clone());
            let e = a.compose(&ai).unwrap();
            prop_assert!(e.is_idempotent());
            prop_assert_eq!(e.excluded_dom(), a.excluded_dom());
        }

        #[test]
        fn offsets_add(a in arb_map(), b in arb_map()) {
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.left_offset(), a.left_offset() + b.left_offset());
            prop_assert_eq!(ab.right_offset().unwrap(), a.right_offset().unwrap() + b.right_offset().unwrap());
        }

        #[test]
        fn idempotent_iff_square(a in arb_map()) {
            prop_assert_eq!(a.is_idempotent(), a.compose(&a).unwrap() == a);
        }

        #[test]
        fn units_are_exactly_the_invertible_total_surjective_maps(a in arb_map()) {
            let ai = a.inverse().unwrap();
            let two_sided = a.compose(&ai).unwrap() == M::identity()
                && ai.compose(&a).unwrap() == M::identity();
            prop_assert_eq!(a.is_unit(), two_sided);
            prop_assert_eq!(a.is_unit(), a.in_dom_full() && a.in_ran_full());
        }
    }
}
