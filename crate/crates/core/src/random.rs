//! Deterministic pseudo-random elements.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`, so a given seed
//! yields the same element on every platform.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::generators::Budget;
use crate::map::CofiniteMonotoneMap;
use crate::scalar::{self, Int};

pub type Rng64 = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn to_i64<T: Int>(v: T) -> Result<i64> {
    v.to_i64().ok_or(Error::Overflow)
}

fn random_set<T: Int, R: Rng + ?Sized>(rng: &mut R, budget: &Budget<T>) -> Result<Vec<T>> {
    let pos = to_i64(budget.pos)?.max(0);
    let span = usize::try_from(2 * pos + 1).map_err(|_| Error::Overflow)?;
    let len = rng.gen_range(0..=budget.excl.min(span));
    let mut picked: Vec<i64> = index::sample(rng, span, len).into_iter().map(|i| i as i64 - pos).collect();
    picked.sort_unstable();
    picked.into_iter().map(scalar::from_i64).collect()
}

fn random_shift<T: Int, R: Rng + ?Sized>(rng: &mut R, budget: &Budget<T>) -> Result<T> {
    let s = to_i64(budget.shift)?.max(0);
    scalar::from_i64(rng.gen_range(-s..=s))
}

/// A map inside `budget`. One draw in eight is forced to be an idempotent
/// and one in eight a unit, so both kinds show up in samples.
pub fn rand_map<T: Int, R: Rng + ?Sized>(rng: &mut R, budget: &Budget<T>) -> Result<CofiniteMonotoneMap<T>> {
    match rng.gen_range(0..8) {
        0 => CofiniteMonotoneMap::idempotent(random_set(rng, budget)?),
        1 => Ok(CofiniteMonotoneMap::translation(random_shift(rng, budget)?)),
        _ => {
            let dom = random_set(rng, budget)?;
            let ran = random_set(rng, budget)?;
            CofiniteMonotoneMap::new(dom, ran, random_shift(rng, budget)?)
        }
    }
}

pub fn rand_element_with<T: Int, R: Rng + ?Sized>(rng: &mut R, n: usize, budget: &Budget<T>) -> Result<Element<T>> {
    if n == 0 {
        return Err(Error::EmptyChain);
    }
    Element::new((0..n).map(|_| rand_map(rng, budget)).collect::<Result<_>>()?)
}

pub fn rand_idempotent_with<T: Int, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    budget: &Budget<T>,
) -> Result<Element<T>> {
    Element::idempotent((0..n).map(|_| random_set(rng, budget)).collect::<Result<_>>()?)
}

pub fn rand_unit_with<T: Int, R: Rng + ?Sized>(rng: &mut R, n: usize, budget: &Budget<T>) -> Result<Element<T>> {
    Element::unit(&(0..n).map(|_| random_shift(rng, budget)).collect::<Result<Vec<_>>>()?)
}

/// The element drawn first from a fresh generator seeded with `seed`.
pub fn rand_element<T: Int>(seed: u64, n: usize, budget: &Budget<T>) -> Result<Element<T>> {
    rand_element_with(&mut rng_from_seed(seed), n, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let b = Budget { excl: 2, shift: 2, pos: 2 };
        let x: Element<i64> = rand_element(1, 1, &b).unwrap();
        assert_eq!(x, rand_element(1, 1, &b).unwrap());
        let y: Element<i32> = rand_element(1, 1, &Budget { excl: 2, shift: 2, pos: 2 }).unwrap();
        assert_eq!(x.to_string(), y.to_string());
    }

    #[test]
    fn stays_in_budget_and_covers_kinds() {
        let b = Budget { excl: 2, shift: 2, pos: 3 };
        let (mut unit, mut idem, mut other) = (false, false, false);
        for seed in 0..1000 {
            let a: Element<i64> = rand_element(seed, 1, &b).unwrap();
            assert!(b.admits(&a));
            unit |= a.is_unit();
            idem |= a.is_idempotent();
            other |= !a.is_unit() && !a.is_idempotent();
        }
        assert!(unit && idem && other);
    }

    #[test]
    fn tight_position_range() {
        let b = Budget { excl: 6, shift: 0, pos: 1 };
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let m: CofiniteMonotoneMap<i64> = rand_map(&mut rng, &b).unwrap();
            assert!(m.excluded_dom().len() <= 3 && m.excluded_ran().len() <= 3);
        }
    }
}
