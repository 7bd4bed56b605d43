//! Complete solution sets of `a χ = b` and `χ a = b`.
//!
//! Per coordinate, `a χ = b` pins `χ` on `a(dom b)` and forbids it on
//! `a(dom a \ dom b)`. The only freedom left is on the finitely many points
//! outside `ran a`: each may stay out of `dom χ` or take a value in the gap
//! between the forced values around it. Solutions are enumerated exactly.

use std::fmt;

use crate::element::{check_same_n, Element};
use crate::error::{Error, Result};
use crate::map::CofiniteMonotoneMap;
use crate::scalar::{self, Int};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    /// `χ a = b`.
    Left,
    /// `a χ = b`.
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionSet<T = i64> {
    pub side: Side,
    /// Sorted, each one checked against the equation.
    pub solutions: Vec<Element<T>>,
}

/// A point outside `ran a` together with the open interval of values it may take.
struct FreePoint<T> {
    point: T,
    lo: T,
    hi: T,
}

/// Nearest point of `a(dom b)` strictly beyond `y` in direction `step`, and
/// the value `χ` is forced to take there.
fn nearest_forced<T: Int>(
    a: &CofiniteMonotoneMap<T>,
    a_inv: &CofiniteMonotoneMap<T>,
    b: &CofiniteMonotoneMap<T>,
    y: T,
    step: T,
) -> Result<T> {
    let mut z = scalar::add(y, step)?;
    loop {
        if let Some(x) = a_inv.evaluate(z)? {
            if let Some(v) = b.evaluate(x)? {
                debug_assert_eq!(a.evaluate(x)?, Some(z));
                return Ok(v);
            }
        }
        z = scalar::add(z, step)?;
    }
}

fn free_points<T: Int>(a: &CofiniteMonotoneMap<T>, b: &CofiniteMonotoneMap<T>) -> Result<Vec<FreePoint<T>>> {
    let a_inv = a.inverse()?;
    a.excluded_ran()
        .iter()
        .map(|&y| {
            Ok(FreePoint {
                point: y,
                lo: nearest_forced(a, &a_inv, b, y, -T::one())?,
                hi: nearest_forced(a, &a_inv, b, y, T::one())?,
            })
        })
        .collect()
}

/// All monotone injective partial assignments of the free points, as
/// `(point, value)` lists. Points sharing a gap must take increasing values.
fn assignments<T: Int>(free: &[FreePoint<T>]) -> Result<Vec<Vec<(T, T)>>> {
    let mut out = Vec::new();
    enumerate(free, 0, None, &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn enumerate<T: Int>(
    free: &[FreePoint<T>],
    idx: usize,
    last_value: Option<T>,
    acc: &mut Vec<(T, T)>,
    out: &mut Vec<Vec<(T, T)>>,
) -> Result<()> {
    let Some(f) = free.get(idx) else {
        out.push(acc.clone());
        return Ok(());
    };
    enumerate(free, idx + 1, last_value, acc, out)?;
    let start = match last_value {
        Some(v) if v > f.lo => v,
        _ => f.lo,
    };
    for v in scalar::range_inclusive(scalar::succ(start)?, scalar::pred(f.hi)?) {
        acc.push((f.point, v));
        enumerate(free, idx + 1, Some(v), acc, out)?;
        acc.pop();
    }
    Ok(())
}

fn solve_right_map<T: Int>(
    a: &CofiniteMonotoneMap<T>,
    b: &CofiniteMonotoneMap<T>,
) -> Result<Vec<CofiniteMonotoneMap<T>>> {
    // dom b must sit inside dom a
    if !a.excluded_dom().iter().all(|d| b.excluded_dom().binary_search(d).is_ok()) {
        return Ok(Vec::new());
    }
    let mut blocked = Vec::new();
    for &x in b.excluded_dom() {
        if let Some(y) = a.evaluate(x)? {
            blocked.push(y);
        }
    }
    let shift = scalar::sub(b.core_shift(), a.core_shift())?;
    let free = free_points(a, b)?;
    let mut out = Vec::new();
    for chosen in assignments(&free)? {
        let mut dom: Vec<T> = a
            .excluded_ran()
            .iter()
            .copied()
            .filter(|y| !chosen.iter().any(|(p, _)| p == y))
            .chain(blocked.iter().copied())
            .collect();
        dom.sort_unstable();
        let ran: Vec<T> = b
            .excluded_ran()
            .iter()
            .copied()
            .filter(|r| !chosen.iter().any(|(_, v)| v == r))
            .collect();
        let chi = CofiniteMonotoneMap::new(dom, ran, shift)?;
        if a.compose(&chi)? == *b {
            out.push(chi);
        }
    }
    Ok(out)
}

fn cartesian<T: Int>(per_coord: Vec<Vec<CofiniteMonotoneMap<T>>>) -> Result<Vec<Element<T>>> {
    let mut rows: Vec<Vec<CofiniteMonotoneMap<T>>> = vec![Vec::new()];
    for options in per_coord {
        let mut next = Vec::with_capacity(rows.len() * options.len());
        for row in &rows {
            for m in &options {
                let mut r = row.clone();
                r.push(m.clone());
                next.push(r);
            }
        }
        rows = next;
    }
    rows.into_iter().map(Element::new).collect()
}

/// Every `χ` with `a χ = b`, sorted.
pub fn solve_right<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<SolutionSet<T>> {
    check_same_n(a.n(), b.n())?;
    let per_coord = a
        .comps()
        .iter()
        .zip(b.comps())
        .map(|(x, y)| solve_right_map(x, y))
        .collect::<Result<Vec<_>>>()?;
    let mut solutions = cartesian(per_coord)?;
    solutions.sort();
    Ok(SolutionSet {
        side: Side::Right,
        solutions,
    })
}

/// Every `χ` with `χ a = b`, sorted: `χ a = b` iff `a⁻¹ χ⁻¹ = b⁻¹`.
pub fn solve_left<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<SolutionSet<T>> {
    let mirrored = solve_right(&a.inverse()?, &b.inverse()?)?;
    let mut solutions = Vec::with_capacity(mirrored.solutions.len());
    for s in mirrored.solutions {
        let chi = s.inverse()?;
        if chi.compose(a)? == *b {
            solutions.push(chi);
        }
    }
    solutions.sort();
    Ok(SolutionSet {
        side: Side::Left,
        solutions,
    })
}

pub fn solve<T: Int>(side: Side, a: &Element<T>, b: &Element<T>) -> Result<SolutionSet<T>> {
    match side {
        Side::Left => solve_left(a, b),
        Side::Right => solve_right(a, b),
    }
}

/// A priori bound on the size of the right solution set: the product over
/// free points of `gap width + 1`. Zero when no solution can exist.
pub fn right_solution_bound<T: Int>(a: &Element<T>, b: &Element<T>) -> Result<u128> {
    check_same_n(a.n(), b.n())?;
    let mut total: u128 = 1;
    for (x, y) in a.comps().iter().zip(b.comps()) {
        if !x.excluded_dom().iter().all(|d| y.excluded_dom().binary_search(d).is_ok()) {
            return Ok(0);
        }
        for f in free_points(x, y)? {
            let width = scalar::sub(scalar::pred(f.hi)?, f.lo)?;
            let width = width.max(T::zero()).to_u128().ok_or(Error::Overflow)?;
            total = total.checked_mul(width + 1).ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_solutions, brute_solutions_left};

    type M = CofiniteMonotoneMap<i64>;
    type E = Element<i64>;

    fn el(comps: Vec<M>) -> E {
        E::new(comps).unwrap()
    }

    #[test]
    fn right_examples() {
        let b = el(vec![M::new(vec![2], vec![-1, 4], 3).unwrap()]);
        assert_eq!(solve_right(&E::identity(1).unwrap(), &b).unwrap().solutions, vec![b.clone()]);
        let e = el(vec![M::eps(0).unwrap()]);
        assert_eq!(
            solve_right(&e, &e).unwrap().solutions,
            vec![E::identity(1).unwrap(), el(vec![M::new(vec![1], vec![1], 0).unwrap()])]
        );
        let s = el(vec![M::translation(1)]);
        assert_eq!(
            solve_right(&s, &e).unwrap().solutions,
            vec![el(vec![M::new(vec![], vec![1], -1).unwrap()])]
        );
    }

    #[test]
    fn left_examples() {
        let b = el(vec![M::new(vec![2], vec![-1, 4], 3).unwrap()]);
        let left = solve_left(&E::identity(1).unwrap(), &b).unwrap();
        assert_eq!(left.side, Side::Left);
        assert_eq!(left.solutions, vec![b]);
        let e = el(vec![M::eps(0).unwrap()]);
        let sols = solve_left(&e, &e).unwrap().solutions;
        assert_eq!(sols, brute_solutions_left(&e, &e, 8).unwrap());
        assert!(sols.iter().all(|x| x.compose(&e).unwrap() == e));
        // left offsets add, so a shift mismatch is unsatisfiable
        let t = el(vec![M::translation(2)]);
        assert!(solve_left(&el(vec![M::eps(0).unwrap()]), &t).unwrap().solutions.is_empty());
    }

    #[test]
    fn matches_brute_on_hand_picked_cases() {
        let cases = [
            (M::new(vec![0], vec![1, 3], 1).unwrap(), M::new(vec![0, 2], vec![1, 4], 2).unwrap()),
            (M::new(vec![], vec![0, 1], 0).unwrap(), M::new(vec![-1], vec![-1, 0], 0).unwrap()),
            (M::new(vec![1], vec![], -1).unwrap(), M::new(vec![1], vec![2], -2).unwrap()),
        ];
        for (x, y) in cases {
            let a = el(vec![x]);
            let b = el(vec![y]);
            let got = solve_right(&a, &b).unwrap().solutions;
            assert_eq!(got, brute_solutions(&a, &b, 8).unwrap());
            assert!(got.len() as u128 <= right_solution_bound(&a, &b).unwrap());
            assert_eq!(solve_left(&a, &b).unwrap().solutions, brute_solutions_left(&a, &b, 8).unwrap());
        }
    }

    #[test]
    fn product_across_coordinates() {
        let e = M::eps(0).unwrap();
        let a = el(vec![e.clone(), e.clone()]);
        assert_eq!(solve_right(&a, &a).unwrap().solutions.len(), 4);
        assert!(solve_right(&a, &E::identity(1).unwrap()).is_err());
    }
}
