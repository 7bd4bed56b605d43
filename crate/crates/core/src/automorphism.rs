//! Automorphisms built from a coordinate permutation followed by
//! conjugation with a unit.

use std::fmt;

use crate::element::{check_same_n, embed_factor, Element};
use crate::error::{Error, Result};
use crate::map::CofiniteMonotoneMap;
use crate::scalar::{self, Int};

/// `a ↦ u · (a_{perm(1)}, …, a_{perm(n)}) · u⁻¹` where `u` is the unit with
/// shift vector `unit`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism<T = i64> {
    perm: Vec<usize>,
    unit: Vec<T>,
}

impl<T: Int> Automorphism<T> {
    /// `perm` is a 1-based permutation of `1..=n`.
    pub fn new(perm: Vec<usize>, unit: Vec<T>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::EmptyChain);
        }
        check_same_n(n, unit.len())?;
        let mut seen = vec![false; n];
        for &p in &perm {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidPermutation { n });
            }
        }
        Ok(Self { perm, unit })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect(), vec![T::zero(); n])
    }

    pub fn inner(unit: Vec<T>) -> Result<Self> {
        Self::new((1..=unit.len()).collect(), unit)
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, vec![T::zero(); n])
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn unit(&self) -> &[T] {
        &self.unit
    }

    pub fn is_inner_form(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i + 1)
    }

    pub fn apply(&self, a: &Element<T>) -> Result<Element<T>> {
        check_same_n(self.n(), a.n())?;
        let comps = self
            .perm
            .iter()
            .zip(&self.unit)
            .map(|(&p, &u)| {
                let t = CofiniteMonotoneMap::translation(u);
                t.compose(&a.comps()[p - 1])?.compose(&t.inverse()?)
            })
            .collect::<Result<_>>()?;
        Element::new(comps)
    }

    /// `self` then `other`: `apply(compose(f, g), a) == g.apply(f.apply(a))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n(), other.n())?;
        let mut perm = Vec::with_capacity(self.n());
        let mut unit = Vec::with_capacity(self.n());
        for (&gp, &gu) in other.perm.iter().zip(&other.unit) {
            perm.push(self.perm[gp - 1]);
            unit.push(scalar::add(gu, self.unit[gp - 1])?);
        }
        Self::new(perm, unit)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n();
        let mut perm = vec![0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p - 1] = i + 1;
        }
        let unit = perm
            .iter()
            .map(|&q| scalar::neg(self.unit[q - 1]))
            .collect::<Result<_>>()?;
        Self::new(perm, unit)
    }

    /// Whether every unit is fixed. Conjugation by a unit fixes all units
    /// because the unit group is abelian, so this holds exactly when the
    /// permutation is trivial.
    pub fn fixes_all_units(&self) -> bool {
        self.is_inner_form()
    }

    /// A unit moved by `self`, with its image: `ς_{1[i]} ↦ ς_{1[perm(i)⁻¹]}`
    /// for the first moved coordinate `i`. `None` iff all units are fixed.
    pub fn moved_unit(&self) -> Result<Option<(Element<T>, Element<T>)>> {
        let n = self.n();
        let Some(i) = (1..=n).find(|&i| self.perm[i - 1] != i) else {
            return Ok(None);
        };
        let s = embed_factor(&CofiniteMonotoneMap::translation(T::one()), i, n)?;
        let image = self.apply(&s)?;
        debug_assert_ne!(image, s);
        Ok(Some((s, image)))
    }
}

impl<T: Int> fmt::Display for Automorphism<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        write!(
            f,
            "perm {} unit {}",
            join(self.perm.iter().map(|p| p.to_string()).collect()),
            join(self.unit.iter().map(|u| u.to_string()).collect())
        )
    }
}

pub fn apply<T: Int>(f: &Automorphism<T>, a: &Element<T>) -> Result<Element<T>> {
    f.apply(a)
}

pub fn compose_auto<T: Int>(f: &Automorphism<T>, g: &Automorphism<T>) -> Result<Automorphism<T>> {
    f.compose(g)
}

pub fn inverse_auto<T: Int>(f: &Automorphism<T>) -> Result<Automorphism<T>> {
    f.inverse()
}
