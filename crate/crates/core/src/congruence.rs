//! The congruences `σ_S`, the offset homomorphism onto `Z^{2n}`, and the
//! coordinate projections.
//!
//! `a σ_S b` holds when `a` and `b` agree exactly on every coordinate outside
//! `S` and agree eventually (in both directions) on the coordinates in `S`.
//! Since exclusion sets are finite, eventual agreement of one coordinate is
//! the same as equality of its two offsets, so every test here is decided on
//! the canonical data without scanning.

use std::collections::BTreeSet;
use std::fmt;

use crate::element::{check_index, check_same_n, embed_factor, Element};
use crate::error::{Error, Result};
use crate::map::CofiniteMonotoneMap;
use crate::scalar::{self, Int};

/// A subset `S` of `{1..n}` naming `σ_S`. The full set names the least
/// group congruence, the empty set the identity congruence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CongruenceSpec {
    n: usize,
    set: BTreeSet<usize>,
}

impl CongruenceSpec {
    pub fn new(n: usize, set: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyChain);
        }
        let set: BTreeSet<usize> = set.into_iter().collect();
        for &i in &set {
            check_index(i, n)?;
        }
        Ok(Self { n, set })
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, 1..=n)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> &BTreeSet<usize> {
        &self.set
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(&i)
    }

    /// Every subset of `{1..n}`, ordered by bitmask.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        if n >= usize::BITS as usize {
            return Err(Error::Overflow);
        }
        (0usize..1 << n)
            .map(|mask| Self::new(n, (1..=n).filter(|i| mask & (1 << (i - 1)) != 0)))
            .collect()
    }
}

impl fmt::Display for CongruenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.set.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Image under the homomorphism onto `Z^{2n}`: one `(c_L, c_R)` per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SigmaImage<T = i64> {
    pub pairs: Vec<(T, T)>,
}

impl<T: Int> SigmaImage<T> {
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_n(self.pairs.len(), other.pairs.len())?;
        let pairs = self
            .pairs
            .iter()
            .zip(&other.pairs)
            .map(|(&(a, b), &(c, d))| Ok((scalar::add(a, c)?, scalar::add(b, d)?)))
            .collect::<Result<_>>()?;
        Ok(Self { pairs })
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.iter().all(|&(l, r)| l.is_zero() && r.is_zero())
    }
}

/// Flat row `cL1 cR1 cL2 cR2 ...`.
impl<T: Int> fmt::Display for SigmaImage<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, r)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l} {r}")?;
        }
        Ok(())
    }
}

pub fn sigma_image<T: Int>(a: &Element<T>) -> Result<SigmaImage<T>> {
    let pairs = a
        .comps()
        .iter()
        .map(|m| Ok((m.left_offset(), m.right_offset()?)))
        .collect::<Result<_>>()?;
    Ok(SigmaImage { pairs })
}

/// Some element with the given image. Coordinate `(l, r)` becomes the
/// translation by `l` composed with `|r - l|` extra exclusions on one side.
pub fn sigma_preimage<T: Int>(image: &SigmaImage<T>) -> Result<Element<T>> {
    let comps = image
        .pairs
        .iter()
        .map(|&(l, r)| {
            let diff = scalar::sub(r, l)?;
            let count = scalar::abs(diff)?.to_usize().ok_or(Error::Overflow)?;
            let points = (0..count).map(scalar::from_count).collect::<Result<Vec<T>>>()?;
            if diff >= T::zero() {
                CofiniteMonotoneMap::new(Vec::new(), points, l)
            } else {
                CofiniteMonotoneMap::new(points, Vec::new(), l)
            }
        })
        .collect::<Result<_>>()?;
    Element::new(comps)
}

pub fn sigma_s_related<T: Int>(a: &Element<T>, b: &Element<T>, spec: &CongruenceSpec) -> Result<bool> {
    check_same_n(a.n(), b.n())?;
    check_same_n(a.n(), spec.n())?;
    for (idx, (x, y)) in a.comps().iter().zip(b.comps()).enumerate() {
        let ok = if spec.contains(idx + 1) {
            x.left_offset() == y.left_offset() && x.right_offset()? == y.right_offset()?
        } else {
            x == y
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn sigma_related<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<bool> {
    sigma_s_related(a, b, &CongruenceSpec::full(a.n())?)
}

/// Smallest `p >= 0` such that excluding the values `[-p, p]` hides every
/// disagreement between `x` and `y`, assuming their offsets coincide.
fn witness_radius<T: Int>(x: &CofiniteMonotoneMap<T>, y: &CofiniteMonotoneMap<T>) -> Result<T> {
    let ox = x.eventual_offsets()?;
    let oy = y.eventual_offsets()?;
    let d = ox.below.min(oy.below);
    let u = ox.above.max(oy.above);
    let mut p = x.max_point_magnitude()?.max(y.max_point_magnitude()?);
    for k in scalar::range_inclusive(scalar::succ(d)?, scalar::pred(u)?) {
        for v in [x.evaluate(k)?, y.evaluate(k)?].into_iter().flatten() {
            p = p.max(scalar::abs(v)?);
        }
    }
    Ok(p)
}

/// An idempotent `ε`, the identity outside the coordinates of `spec`, with
/// `a ε = b ε`. On a coordinate of `spec` it removes the smallest symmetric
/// window of values covering all exclusion points and every value the two
/// maps take strictly between their common thresholds.
pub fn sigma_s_witness<T: Int>(a: &Element<T>, b: &Element<T>, spec: &CongruenceSpec) -> Result<Element<T>> {
    if !sigma_s_related(a, b, spec)? {
        return Err(Error::NotRelated);
    }
    let mut excluded = Vec::with_capacity(a.n());
    for (idx, (x, y)) in a.comps().iter().zip(b.comps()).enumerate() {
        if spec.contains(idx + 1) && x != y {
            let p = witness_radius(x, y)?;
            excluded.push(scalar::range_inclusive(scalar::neg(p)?, p).collect());
        } else {
            excluded.push(Vec::new());
        }
    }
    let e = Element::idempotent(excluded)?;
    debug_assert_eq!(a.compose(&e), b.compose(&e));
    Ok(e)
}

pub fn sigma_witness<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    sigma_s_witness(a, b, &CongruenceSpec::full(a.n())?)
}

/// Join of `σ_{S1}` and `σ_{S2}`; they commute, so this is `σ_{S1 ∪ S2}`.
pub fn spec_compose(s1: &CongruenceSpec, s2: &CongruenceSpec) -> Result<CongruenceSpec> {
    check_same_n(s1.n, s2.n)?;
    CongruenceSpec::new(s1.n, s1.set.union(&s2.set).copied())
}

pub fn spec_leq(s1: &CongruenceSpec, s2: &CongruenceSpec) -> Result<bool> {
    check_same_n(s1.n, s2.n)?;
    Ok(s1.set.is_subset(&s2.set))
}

/// An intermediate `γ` with `a σ_[i] γ σ_[j] b`: `a` with coordinate `i`
/// taken from `b`. `None` when `a` and `b` are not `σ_{i,j}`-related.
pub fn relation_compose_witness<T: Int>(
    a: &Element<T>,
    b: &Element<T>,
    i: usize,
    j: usize,
) -> Result<Option<Element<T>>> {
    check_same_n(a.n(), b.n())?;
    let n = a.n();
    check_index(i, n)?;
    check_index(j, n)?;
    if !sigma_s_related(a, b, &CongruenceSpec::new(n, [i, j])?)? {
        return Ok(None);
    }
    let gamma = a.with_component(i, b.component(i)?.clone())?;
    let left = sigma_s_related(a, &gamma, &CongruenceSpec::new(n, [i])?)?;
    let right = sigma_s_related(&gamma, b, &CongruenceSpec::new(n, [j])?)?;
    Ok((left && right).then_some(gamma))
}

/// `π^i`: keeps coordinate `i` and replaces every other by the identity.
pub fn pi_projection<T: Int>(a: &Element<T>, i: usize) -> Result<Element<T>> {
    embed_factor(a.component(i)?, i, a.n())
}

/// The least congruence with the same idempotent classes as the kernel of
/// `π^i`; equal to `σ_S` with `S = {1..n} \ {i}`.
pub fn pi_min_related<T: Int>(a: &Element<T>, b: &Element<T>, i: usize) -> Result<bool> {
    check_index(i, a.n())?;
    sigma_s_related(a, b, &CongruenceSpec::new(a.n(), (1..=a.n()).filter(|&k| k != i))?)
}

/// Direct witness for the minimal congruence of the kernel of `π^i`: an
/// idempotent `e` with `a e = b e` whose `i`-th coordinate equals both
/// `a_i⁻¹ a_i` and `b_i⁻¹ b_i`. Found independently of [`pi_min_related`].
pub fn pi_min_witness<T: Int>(a: &Element<T>, b: &Element<T>, i: usize) -> Result<Option<Element<T>>> {
    check_same_n(a.n(), b.n())?;
    let ai = a.component(i)?;
    let bi = b.component(i)?;
    let ei = ai.inverse()?.compose(ai)?;
    if ei != bi.inverse()?.compose(bi)? {
        return Ok(None);
    }
    let mut excluded = Vec::with_capacity(a.n());
    for (idx, (x, y)) in a.comps().iter().zip(b.comps()).enumerate() {
        if idx + 1 == i {
            excluded.push(ei.excluded_dom().to_vec());
        } else if x.left_offset() != y.left_offset() || x.right_offset()? != y.right_offset()? {
            return Ok(None);
        } else if x == y {
            excluded.push(Vec::new());
        } else {
            let p = witness_radius(x, y)?;
            excluded.push(scalar::range_inclusive(scalar::neg(p)?, p).collect());
        }
    }
    let e = Element::idempotent(excluded)?;
    Ok((a.compose(&e)? == b.compose(&e)?).then_some(e))
}
