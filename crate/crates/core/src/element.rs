//! Elements of the monoid on `L_n ×_lex Z` as vectors of single-coordinate maps.
//!
//! A cofinite monotone injective map of the lexicographic product never
//! moves a point between levels, so it splits into `n` independent maps of
//! `Z`, one per level, and every operation acts coordinatewise.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result, Violation};
use crate::map::CofiniteMonotoneMap;
use crate::oracle::WindowedMap;
use crate::scalar::{self, Int};

/// A point `(level, pos)` of `L_n × Z`; the derived order is lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LexPoint<T = i64> {
    pub level: usize,
    pub pos: T,
}

impl<T> LexPoint<T> {
    pub fn new(level: usize, pos: T) -> Self {
        Self { level, pos }
    }
}

impl<T: fmt::Display> fmt::Display for LexPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.pos)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Element<T = i64> {
    comps: Vec<CofiniteMonotoneMap<T>>,
}

pub(crate) fn check_index(index: usize, n: usize) -> Result<()> {
    if (1..=n).contains(&index) {
        Ok(())
    } else {
        Err(Error::CoordinateOutOfRange { index, n })
    }
}

pub(crate) fn check_same_n(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

impl<T: Int> Element<T> {
    pub fn new(comps: Vec<CofiniteMonotoneMap<T>>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::EmptyChain);
        }
        Ok(Self { comps })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(vec![CofiniteMonotoneMap::identity(); n])
    }

    /// The unit translating level `i` by `shifts[i-1]`.
    pub fn unit(shifts: &[T]) -> Result<Self> {
        Self::new(shifts.iter().map(|&k| CofiniteMonotoneMap::translation(k)).collect())
    }

    /// Identity map of the complement of the given per-level exclusion sets.
    pub fn idempotent(excluded: Vec<Vec<T>>) -> Result<Self> {
        Self::new(
            excluded
                .into_iter()
                .map(CofiniteMonotoneMap::idempotent)
                .collect::<Result<_>>()?,
        )
    }

    pub fn n(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[CofiniteMonotoneMap<T>] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<CofiniteMonotoneMap<T>> {
        self.comps
    }

    /// Coordinate `i`, 1-based.
    pub fn component(&self, i: usize) -> Result<&CofiniteMonotoneMap<T>> {
        check_index(i, self.n())?;
        Ok(&self.comps[i - 1])
    }

    /// Replaces coordinate `i` (1-based).
    pub fn with_component(&self, i: usize, map: CofiniteMonotoneMap<T>) -> Result<Self> {
        check_index(i, self.n())?;
        let mut comps = self.comps.clone();
        comps[i - 1] = map;
        Ok(Self { comps })
    }

    pub fn evaluate_lex(&self, p: LexPoint<T>) -> Result<Option<LexPoint<T>>> {
        let map = self.component(p.level)?;
        Ok(map.evaluate(p.pos)?.map(|pos| LexPoint::new(p.level, pos)))
    }

    /// Left-to-right product.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n(), other.n())?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<_>>()?;
        Ok(Self { comps })
    }

    pub fn inverse(&self) -> Result<Self> {
        let comps = self.comps.iter().map(|a| a.inverse()).collect::<Result<_>>()?;
        Ok(Self { comps })
    }

    pub fn is_idempotent(&self) -> bool {
        self.comps.iter().all(|a| a.is_idempotent())
    }

    pub fn is_unit(&self) -> bool {
        self.comps.iter().all(|a| a.is_unit())
    }

    /// The shift vector of a unit; the group of units is `Z^n` under this map.
    pub fn unit_vector(&self) -> Result<Vec<T>> {
        if !self.is_unit() {
            return Err(Error::NotUnit);
        }
        Ok(self.comps.iter().map(|a| a.core_shift()).collect())
    }

    /// Natural order on idempotents: containment of domains.
    pub fn natural_leq(&self, other: &Self) -> Result<bool> {
        check_same_n(self.n(), other.n())?;
        let mut all = true;
        for (e, f) in self.comps.iter().zip(&other.comps) {
            all &= e.natural_leq(f)?;
        }
        Ok(all)
    }

    pub fn in_dom_full(&self) -> bool {
        self.comps.iter().all(|a| a.in_dom_full())
    }

    pub fn in_ran_full(&self) -> bool {
        self.comps.iter().all(|a| a.in_ran_full())
    }

    pub fn excluded_dom(&self) -> Vec<Vec<T>> {
        self.comps.iter().map(|a| a.excluded_dom().to_vec()).collect()
    }

    pub fn excluded_ran(&self) -> Vec<Vec<T>> {
        self.comps.iter().map(|a| a.excluded_ran().to_vec()).collect()
    }

    /// Points of `L_n × Z` outside the domain, in lexicographic order.
    pub fn excluded_dom_points(&self) -> Vec<LexPoint<T>> {
        self.comps
            .iter()
            .enumerate()
            .flat_map(|(i, a)| a.excluded_dom().iter().map(move |&p| LexPoint::new(i + 1, p)))
            .collect()
    }

    /// Largest exclusion-point magnitude plus largest eventual offset magnitude.
    pub fn shadow_radius(&self) -> Result<T> {
        let mut r = T::zero();
        for a in &self.comps {
            let off = scalar::abs(a.left_offset())?.max(scalar::abs(a.right_offset()?)?);
            r = r.max(scalar::add(a.max_point_magnitude()?, off)?);
        }
        Ok(r)
    }

    /// Validates a raw windowed table and returns the element it shadows.
    ///
    /// Checks run in a fixed order and the first failure is reported:
    /// well-formedness, coordinate preservation, injectivity, monotonicity,
    /// then consistency with the declared tails.
    pub fn validate_raw(raw: &WindowedMap<T>) -> Result<Self> {
        let n = raw.n();
        let w = raw.radius();
        let reject = |v| Err(Error::Rejected(v));
        if n == 0 || raw.tails().len() != n || w < T::zero() {
            return reject(Violation::Malformed);
        }
        let neg_w = scalar::neg(w)?;
        let in_window = |p: &LexPoint<T>| (1..=n).contains(&p.level) && p.pos >= neg_w && p.pos <= w;
        let entries = raw.entries();
        if !entries.iter().all(|(s, t)| in_window(s) && (1..=n).contains(&t.level)) {
            return reject(Violation::Malformed);
        }
        if entries.windows(2).any(|e| e[0].0 == e[1].0) {
            return reject(Violation::Malformed);
        }
        if entries.iter().any(|(s, t)| s.level != t.level) {
            return reject(Violation::CoordinateMixing);
        }
        let mut targets: Vec<LexPoint<T>> = entries.iter().map(|(_, t)| *t).collect();
        targets.sort_unstable();
        if targets.windows(2).any(|t| t[0] == t[1]) {
            return reject(Violation::Injectivity);
        }
        // entries are sorted by source, so lexicographic monotonicity is
        // strict increase of consecutive targets
        if entries.windows(2).any(|e| e[0].1.cmp(&e[1].1) != Ordering::Less) {
            return reject(Violation::Monotonicity);
        }

        let mut comps = Vec::with_capacity(n);
        for (idx, tail) in raw.tails().iter().enumerate() {
            let level = idx + 1;
            let row: Vec<(T, T)> = entries
                .iter()
                .filter(|(s, _)| s.level == level)
                .map(|(s, t)| (s.pos, t.pos))
                .collect();
            // images of the tails: (-inf, lo_edge] and [hi_edge, inf)
            let lo_edge = scalar::add(scalar::pred(neg_w)?, tail.left)?;
            let hi_edge = scalar::add(scalar::succ(w)?, tail.right)?;
            if row.iter().any(|&(_, m)| m <= lo_edge || m >= hi_edge) {
                return reject(Violation::TailInconsistency);
            }
            let mut dom = Vec::new();
            let mut it = row.iter().peekable();
            for k in scalar::range_inclusive(neg_w, w) {
                if it.peek().map(|&&(s, _)| s) == Some(k) {
                    it.next();
                } else {
                    dom.push(k);
                }
            }
            let mut ran = Vec::new();
            let mut hit = row.iter().map(|&(_, m)| m).collect::<Vec<_>>();
            hit.sort_unstable();
            let mut hit = hit.into_iter().peekable();
            for v in scalar::range_inclusive(scalar::succ(lo_edge)?, scalar::pred(hi_edge)?) {
                if hit.peek() == Some(&v) {
                    hit.next();
                } else {
                    ran.push(v);
                }
            }
            let map = CofiniteMonotoneMap::from_sorted(dom, ran, tail.left);
            if map.right_offset()? != tail.right {
                return reject(Violation::TailInconsistency);
            }
            for &(k, m) in &row {
                if map.evaluate(k)? != Some(m) {
                    return reject(Violation::TailInconsistency);
                }
            }
            comps.push(map);
        }
        Self::new(comps)
    }
}

/// `α_i°`: coordinate `i` (1-based) is `map`, every other coordinate is the identity.
pub fn embed_factor<T: Int>(map: &CofiniteMonotoneMap<T>, i: usize, n: usize) -> Result<Element<T>> {
    if n == 0 {
        return Err(Error::EmptyChain);
    }
    check_index(i, n)?;
    let mut comps = vec![CofiniteMonotoneMap::identity(); n];
    comps[i - 1] = map.clone();
    Element::new(comps)
}

/// Compact text form `{"n":..,"comps":[..]}`.
impl<T: Int> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{\"n\":{},\"comps\":[", self.n())?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Tail;

    type M = CofiniteMonotoneMap<i64>;
    type E = Element<i64>;

    fn eps(k: i64) -> M {
        M::eps(k).unwrap()
    }

    fn shift(k: i64) -> M {
        M::translation(k)
    }

    #[test]
    fn evaluate_lex_examples() {
        let a = E::new(vec![eps(0), shift(1)]).unwrap();
        assert_eq!(a.evaluate_lex(LexPoint::new(2, 5)).unwrap(), Some(LexPoint::new(2, 6)));
        assert_eq!(a.evaluate_lex(LexPoint::new(1, 1)).unwrap(), Some(LexPoint::new(1, 2)));
        assert_eq!(
            a.evaluate_lex(LexPoint::new(3, 0)),
            Err(Error::CoordinateOutOfRange { index: 3, n: 2 })
        );
    }

    #[test]
    fn componentwise_operations() {
        let a = E::new(vec![shift(1), shift(2)]).unwrap();
        let b = E::new(vec![shift(-1), shift(-2)]).unwrap();
        assert_eq!(a.compose(&b).unwrap(), E::identity(2).unwrap());

        let c = E::new(vec![eps(0), shift(3)]).unwrap();
        assert_eq!(
            c.inverse().unwrap(),
            E::new(vec![M::new(vec![1], vec![], 0).unwrap(), shift(-3)]).unwrap()
        );
        assert_eq!(
            a.compose(&E::identity(3).unwrap()),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        assert_eq!(E::new(vec![]), Err(Error::EmptyChain));
    }

    #[test]
    fn units() {
        let u = E::unit(&[2, -1]).unwrap();
        assert!(u.is_unit());
        assert_eq!(u.unit_vector().unwrap(), vec![2, -1]);
        let a = E::new(vec![eps(0), shift(1)]).unwrap();
        assert!(!a.is_unit());
        assert_eq!(a.unit_vector(), Err(Error::NotUnit));
        assert_eq!(E::identity(3).unwrap().unit_vector().unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn embed_factor_examples() {
        assert_eq!(
            embed_factor(&eps(0), 1, 2).unwrap(),
            E::new(vec![eps(0), M::identity()]).unwrap()
        );
        assert_eq!(embed_factor(&M::identity(), 2, 3).unwrap(), E::identity(3).unwrap());
        assert_eq!(
            embed_factor(&eps(0), 3, 2),
            Err(Error::CoordinateOutOfRange { index: 3, n: 2 })
        );
        let a = E::new(vec![eps(0), M::new(vec![4], vec![], 2).unwrap(), shift(-1)]).unwrap();
        let mut prod = E::identity(3).unwrap();
        for (i, c) in a.comps().iter().enumerate() {
            prod = prod.compose(&embed_factor(c, i + 1, 3).unwrap()).unwrap();
        }
        assert_eq!(prod, a);
    }

    fn raw(n: usize, w: i64, table: Vec<[i64; 4]>, tails: Vec<(i64, i64)>) -> WindowedMap<i64> {
        WindowedMap::new(
            n,
            w,
            table
                .into_iter()
                .map(|[i, k, j, m]| (LexPoint::new(i as usize, k), LexPoint::new(j as usize, m)))
                .collect(),
            tails.into_iter().map(|(left, right)| Tail { left, right }).collect(),
        )
    }

    #[test]
    fn validate_accepts_eps_shadow() {
        let mut table = Vec::new();
        for k in -10..=10 {
            table.push([1, k, 1, if k > 0 { k + 1 } else { k }]);
            table.push([2, k, 2, k]);
        }
        let got = E::validate_raw(&raw(2, 10, table, vec![(0, 1), (0, 0)])).unwrap();
        assert_eq!(got, embed_factor(&eps(0), 1, 2).unwrap());
    }

    #[test]
    fn validate_rejects_coordinate_mixing() {
        let table = (-3..=3).map(|k| [1, k, 2, k]).collect();
        assert_eq!(
            E::validate_raw(&raw(2, 3, table, vec![(0, 0), (0, 0)])),
            Err(Error::Rejected(Violation::CoordinateMixing))
        );
    }

    #[test]
    fn validate_rejects_non_monotone_and_non_injective() {
        let table = vec![[1, 0, 1, 5], [1, 1, 1, 4]];
        assert_eq!(
            E::validate_raw(&raw(1, 10, table, vec![(0, 0)])),
            Err(Error::Rejected(Violation::Monotonicity))
        );
        let table = vec![[1, 0, 1, 5], [1, 1, 1, 5]];
        assert_eq!(
            E::validate_raw(&raw(1, 10, table, vec![(0, 0)])),
            Err(Error::Rejected(Violation::Injectivity))
        );
    }

    #[test]
    fn validate_rejects_tail_mismatch() {
        // identity table with a right tail of +1 is eps(4), which is fine
        let table: Vec<_> = (-4..=4).map(|k| [1, k, 1, k]).collect();
        assert_eq!(E::validate_raw(&raw(1, 4, table.clone(), vec![(0, 1)])).unwrap(), E::new(vec![eps(4)]).unwrap());
        // but a right tail of -1 sends 5 onto 4, already hit
        assert_eq!(
            E::validate_raw(&raw(1, 4, table, vec![(0, -1)])),
            Err(Error::Rejected(Violation::TailInconsistency))
        );
        // value collides with the left tail's image
        let table = (-4..=4).map(|k| [1, k, 1, k - 3]).collect();
        assert_eq!(
            E::validate_raw(&raw(1, 4, table, vec![(0, 0)])),
            Err(Error::Rejected(Violation::TailInconsistency))
        );
    }

    #[test]
    fn validate_rejects_malformed() {
        let table = vec![[3, 0, 3, 0]];
        assert_eq!(
            E::validate_raw(&raw(2, 4, table, vec![(0, 0), (0, 0)])),
            Err(Error::Rejected(Violation::Malformed))
        );
        assert_eq!(
            E::validate_raw(&raw(2, 4, vec![], vec![(0, 0)])),
            Err(Error::Rejected(Violation::Malformed))
        );
    }

    #[test]
    fn display_form() {
        let a = E::new(vec![eps(0), shift(1)]).unwrap();
        assert_eq!(
            a.to_string(),
            r#"{"n":2,"comps":[{"D":[],"R":[1],"c":0},{"D":[],"R":[],"c":1}]}"#
        );
    }
}
