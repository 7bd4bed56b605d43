//! Generator words, factorizations, and bounded closure search.
//!
//! Words are read left to right: `E(0,1) S(1,2)` first applies `ε_{0[1]}`
//! and then `ς_{1[2]}`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::element::{check_index, embed_factor, Element};
use crate::error::{Error, Result};
use crate::map::CofiniteMonotoneMap;
use crate::scalar::{self, Int};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GenKind {
    /// `ε_k`: fixes `x <= k`, sends `x > k` to `x + 1`.
    Eps,
    EpsInv,
    /// `ς_k`: translation by `k`.
    Shift,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GenSymbol<T = i64> {
    pub kind: GenKind,
    pub k: T,
    /// Coordinate, 1-based.
    pub j: usize,
}

impl<T: Int> GenSymbol<T> {
    pub fn eps(k: T, j: usize) -> Self {
        Self { kind: GenKind::Eps, k, j }
    }

    pub fn eps_inv(k: T, j: usize) -> Self {
        Self { kind: GenKind::EpsInv, k, j }
    }

    pub fn shift(k: T, j: usize) -> Self {
        Self { kind: GenKind::Shift, k, j }
    }

    pub fn map(&self) -> Result<CofiniteMonotoneMap<T>> {
        match self.kind {
            GenKind::Eps => CofiniteMonotoneMap::eps(self.k),
            GenKind::EpsInv => CofiniteMonotoneMap::eps(self.k)?.inverse(),
            GenKind::Shift => Ok(CofiniteMonotoneMap::translation(self.k)),
        }
    }

    pub fn eval(&self, n: usize) -> Result<Element<T>> {
        embed_factor(&self.map()?, self.j, n)
    }
}

impl<T: Int> fmt::Display for GenSymbol<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GenKind::Eps => "E",
            GenKind::EpsInv => "Einv",
            GenKind::Shift => "S",
        };
        write!(f, "{name}({},{})", self.k, self.j)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GenWord<T = i64> {
    pub n: usize,
    pub syms: Vec<GenSymbol<T>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("token {index} `{token}`: {reason}")]
pub struct WordParseError {
    /// 0-based position of the offending token.
    pub index: usize,
    pub token: String,
    pub reason: String,
}

fn parse_symbol<T: Int>(tok: &str, n: usize) -> std::result::Result<GenSymbol<T>, String> {
    let open = tok.find('(').ok_or("expected `(`")?;
    let inner = tok[open + 1..].strip_suffix(')').ok_or("expected `)` at end")?;
    let kind = match &tok[..open] {
        "E" => GenKind::Eps,
        "Einv" => GenKind::EpsInv,
        "S" => GenKind::Shift,
        other => return Err(format!("unknown generator `{other}`")),
    };
    let number = |s: &str| -> std::result::Result<T, String> {
        let s = s.trim().replace('\u{2212}', "-");
        s.parse::<T>().map_err(|_| format!("bad integer `{s}`"))
    };
    let (k, j) = match inner.split_once(',') {
        Some((k, j)) => {
            let j: usize = j.trim().parse().map_err(|_| format!("bad coordinate `{}`", j.trim()))?;
            (number(k)?, j)
        }
        None if n == 1 => (number(inner)?, 1),
        None => return Err("coordinate required when n > 1".into()),
    };
    if j == 0 || j > n {
        return Err(format!("coordinate {j} out of range 1..={n}"));
    }
    Ok(GenSymbol { kind, k, j })
}

impl<T: Int> GenWord<T> {
    pub fn new(n: usize, syms: Vec<GenSymbol<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyChain);
        }
        for s in &syms {
            check_index(s.j, n)?;
        }
        Ok(Self { n, syms })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Parses whitespace-separated `E(k,j)`, `Einv(k,j)`, `S(k,j)` tokens;
    /// `j` may be dropped when `n == 1`.
    pub fn parse(src: &str, n: usize) -> std::result::Result<Self, WordParseError> {
        if n == 0 {
            return Err(WordParseError {
                index: 0,
                token: String::new(),
                reason: "n must be positive".into(),
            });
        }
        let syms = src
            .split_whitespace()
            .enumerate()
            .map(|(index, tok)| {
                parse_symbol(tok, n).map_err(|reason| WordParseError {
                    index,
                    token: tok.to_string(),
                    reason,
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { n, syms })
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    /// Left-to-right product; the empty word is the identity.
    pub fn eval(&self) -> Result<Element<T>> {
        let mut acc: Vec<CofiniteMonotoneMap<T>> = vec![CofiniteMonotoneMap::identity(); self.n];
        for s in &self.syms {
            check_index(s.j, self.n)?;
            let slot = &mut acc[s.j - 1];
            *slot = slot.compose(&s.map()?)?;
        }
        Element::new(acc)
    }

    /// The word for the inverse element: reversed, each symbol inverted.
    pub fn inverse(&self) -> Result<Self> {
        let syms = self
            .syms
            .iter()
            .rev()
            .map(|s| {
                Ok(match s.kind {
                    GenKind::Eps => GenSymbol::eps_inv(s.k, s.j),
                    GenKind::EpsInv => GenSymbol::eps(s.k, s.j),
                    GenKind::Shift => GenSymbol::shift(scalar::neg(s.k)?, s.j),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { n: self.n, syms })
    }
}

impl<T: Int> fmt::Display for GenWord<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for GenWord<i64> {
    type Err = WordParseError;

    /// Parses a word for `n = 1`; use [`GenWord::parse`] for other chain lengths.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::parse(s, 1)
    }
}

pub fn eval_word<T: Int>(w: &GenWord<T>) -> Result<Element<T>> {
    w.eval()
}

/// `a = b g` with `b` of full range and `g` of full domain: coordinatewise
/// `b_i = (D_i; ∅; 0)` and `g_i = (∅; R_i; c_i)`.
pub fn factor_o<T: Int>(a: &Element<T>) -> Result<(Element<T>, Element<T>)> {
    let (b, g): (Vec<_>, Vec<_>) = a
        .comps()
        .iter()
        .map(|m| {
            (
                CofiniteMonotoneMap::from_sorted(m.excluded_dom().to_vec(), Vec::new(), T::zero()),
                CofiniteMonotoneMap::from_sorted(Vec::new(), m.excluded_ran().to_vec(), m.core_shift()),
            )
        })
        .unzip();
    Ok((Element::new(b)?, Element::new(g)?))
}

/// Length budget for [`factor_into_generators`]: `4·Σ(|D_i| + |R_i| + |c_i| + 1)`.
pub fn factor_length_bound<T: Int>(a: &Element<T>) -> Result<usize> {
    let mut total = 0usize;
    for m in a.comps() {
        let c = scalar::abs(m.core_shift())?.to_usize().ok_or(Error::Overflow)?;
        total = total
            .checked_add(m.excluded_dom().len() + m.excluded_ran().len() + c + 1)
            .ok_or(Error::Overflow)?;
    }
    total.checked_mul(4).ok_or(Error::Overflow)
}

fn push_shifts<T: Int>(out: &mut Vec<GenSymbol<T>>, c: T, j: usize) -> Result<()> {
    let step = if c < T::zero() { -T::one() } else { T::one() };
    let count = scalar::abs(c)?.to_usize().ok_or(Error::Overflow)?;
    out.extend(std::iter::repeat_n(GenSymbol::shift(step, j), count));
    Ok(())
}

/// A word over `ε_{k[j]}^{±1}` and `ς_{±1[j]}` evaluating to `a`.
///
/// Per coordinate `(D; R; c)`: the partial factor `(D; ∅; 0)` is the
/// inverse of `ε_{d_1-1} ⋯ ε_{d_m-1}`, the total factor is `ς_1^c` followed
/// by `ε_{r-1}` for each `r ∈ R` in ascending order. Each `ε_{r-1}` opens a
/// gap at `r` without touching the smaller gaps already made.
pub fn factor_into_generators<T: Int>(a: &Element<T>) -> Result<GenWord<T>> {
    let mut syms = Vec::new();
    for (idx, m) in a.comps().iter().enumerate() {
        let j = idx + 1;
        for &d in m.excluded_dom().iter().rev() {
            syms.push(GenSymbol::eps_inv(scalar::pred(d)?, j));
        }
        push_shifts(&mut syms, m.core_shift(), j)?;
        for &r in m.excluded_ran() {
            syms.push(GenSymbol::eps(scalar::pred(r)?, j));
        }
    }
    GenWord::new(a.n(), syms)
}

/// Like [`factor_into_generators`] but every skip uses the single fixed
/// `ε_{base[j]}`: `ε_k = ς_m ε_base ς_{-m}` with `m = base - k`.
pub fn factor_with_fixed_skips<T: Int>(a: &Element<T>, base: T) -> Result<GenWord<T>> {
    let word = factor_into_generators(a)?;
    let mut syms = Vec::with_capacity(word.len());
    for s in word.syms {
        match s.kind {
            GenKind::Shift => syms.push(s),
            GenKind::Eps | GenKind::EpsInv => {
                let m = scalar::sub(base, s.k)?;
                push_shifts(&mut syms, m, s.j)?;
                syms.push(GenSymbol { kind: s.kind, k: base, j: s.j });
                push_shifts(&mut syms, scalar::neg(m)?, s.j)?;
            }
        }
    }
    GenWord::new(word.n, syms)
}

/// The antiisomorphism from total maps onto maps of full range: inversion.
pub fn antiiso_map<T: Int>(a: &CofiniteMonotoneMap<T>) -> Result<CofiniteMonotoneMap<T>> {
    if !a.in_dom_full() {
        return Err(Error::NotTotal);
    }
    a.inverse()
}

pub fn antiiso<T: Int>(a: &Element<T>) -> Result<Element<T>> {
    if !a.in_dom_full() {
        return Err(Error::NotTotal);
    }
    a.inverse()
}

/// Parameter budget for [`closure_search`]: every coordinate has
/// `|D|, |R| <= excl`, `|c| <= shift` and exclusion points in `[-pos, pos]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Budget<T = i64> {
    pub excl: usize,
    pub shift: T,
    pub pos: T,
}

impl<T: Int> Budget<T> {
    pub fn admits_map(&self, m: &CofiniteMonotoneMap<T>) -> bool {
        let fits = |s: &[T]| s.len() <= self.excl && s.iter().all(|&p| p >= -self.pos && p <= self.pos);
        fits(m.excluded_dom())
            && fits(m.excluded_ran())
            && m.core_shift() >= -self.shift
            && m.core_shift() <= self.shift
    }

    pub fn admits(&self, a: &Element<T>) -> bool {
        a.comps().iter().all(|m| self.admits_map(m))
    }
}

/// Everything reachable from `gens` by products and inverses while staying
/// inside `budget`, sorted. Intermediate products outside the budget are
/// dropped, so this is a lower bound on the true budgeted slice.
pub fn closure_search<T: Int>(gens: &[Element<T>], budget: &Budget<T>) -> Result<Vec<Element<T>>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    let mut seen: HashSet<Element<T>> = HashSet::new();
    let mut all: Vec<Element<T>> = Vec::new();
    let mut frontier: Vec<Element<T>> = Vec::new();
    let offer = |x: Element<T>, seen: &mut HashSet<Element<T>>, next: &mut Vec<Element<T>>| {
        if budget.admits(&x) && seen.insert(x.clone()) {
            next.push(x);
        }
    };
    for g in gens {
        crate::element::check_same_n(n, g.n())?;
        offer(g.clone(), &mut seen, &mut frontier);
        offer(g.inverse()?, &mut seen, &mut frontier);
    }
    while !frontier.is_empty() {
        let start = all.len();
        all.append(&mut frontier);
        let mut next = Vec::new();
        for i in start..all.len() {
            for k in 0..all.len() {
                offer(all[i].compose(&all[k])?, &mut seen, &mut next);
                if k < start {
                    offer(all[k].compose(&all[i])?, &mut seen, &mut next);
                }
            }
        }
        frontier = next;
    }
    all.sort();
    Ok(all)
}

fn subsets_in_range<T: Int>(pos: T, max_len: usize) -> Vec<Vec<T>> {
    let points: Vec<T> = scalar::range_inclusive(-pos, pos).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![(Vec::new(), 0usize)];
    for _ in 0..max_len {
        let mut grown = Vec::new();
        for (set, from) in &layer {
            for (idx, &p) in points.iter().enumerate().skip(*from) {
                let mut s: Vec<T> = set.clone();
                s.push(p);
                out.push(s.clone());
                grown.push((s, idx + 1));
            }
        }
        layer = grown;
    }
    out
}

/// Every element inside `budget`, sorted; the reference set for [`closure_search`].
pub fn enumerate_budget<T: Int>(n: usize, budget: &Budget<T>) -> Result<Vec<Element<T>>> {
    if n == 0 {
        return Err(Error::EmptyChain);
    }
    let sets = subsets_in_range(budget.pos, budget.excl);
    let mut maps = Vec::new();
    for d in &sets {
        for r in &sets {
            for c in scalar::range_inclusive(-budget.shift, budget.shift) {
                maps.push(CofiniteMonotoneMap::from_sorted(d.clone(), r.clone(), c));
            }
        }
    }
    let mut out: Vec<Vec<CofiniteMonotoneMap<T>>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                maps.iter().map(move |m| {
                    let mut p = prefix.clone();
                    p.push(m.clone());
                    p
                })
            })
            .collect();
    }
    let mut all = out.into_iter().map(Element::new).collect::<Result<Vec<_>>>()?;
    all.sort();
    Ok(all)
}

/// The generating set `{ε_{base[j]}, ς_{1[j]} : j = 1..n}`.
pub fn standard_generators<T: Int>(n: usize, base: T) -> Result<Vec<Element<T>>> {
    let mut gens = Vec::with_capacity(2 * n);
    for j in 1..=n {
        gens.push(GenSymbol::eps(base, j).eval(n)?);
        gens.push(GenSymbol::shift(T::one(), j).eval(n)?);
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = CofiniteMonotoneMap<i64>;
    type E = Element<i64>;

    fn el(comps: Vec<M>) -> E {
        E::new(comps).unwrap()
    }
    fn word(s: &str, n: usize) -> GenWord<i64> {
        GenWord::parse(s, n).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(word("S(1,1) S(-1,1)", 1).eval().unwrap(), E::identity(1).unwrap());
        assert_eq!(word("S(1,1) S(\u{2212}1,1)", 1).eval().unwrap(), E::identity(1).unwrap());
        assert_eq!(
            word("E(0,1) S(1,2)", 2).eval().unwrap(),
            el(vec![M::eps(0).unwrap(), M::translation(1)])
        );
        assert_eq!(word("E(0) E(0)", 1).eval().unwrap(), el(vec![M::new(vec![], vec![1, 2], 0).unwrap()]));
        assert_eq!(GenWord::<i64>::empty(3).unwrap().eval().unwrap(), E::identity(3).unwrap());
    }

    #[test]
    fn parse_errors_name_the_token() {
        let e = GenWord::<i64>::parse("E(0,1) X(1,1)", 2).unwrap_err();
        assert_eq!(e.index, 1);
        assert_eq!(e.token, "X(1,1)");
        let e = GenWord::<i64>::parse("E(0,1) S(1,2) S(1)", 2).unwrap_err();
        assert_eq!(e.index, 2);
        assert!(GenWord::<i64>::parse("E(0,3)", 2).is_err());
        assert!(GenWord::<i64>::parse("E(a,1)", 2).is_err());
        assert!(GenWord::<i64>::parse("E(0,1", 2).is_err());
        assert!(GenWord::<i8>::parse("S(300)", 1).is_err());
    }

    #[test]
    fn display_always_names_coordinate() {
        let w = word("E(0) Einv(-2) S(3)", 1);
        assert_eq!(w.to_string(), "E(0,1) Einv(-2,1) S(3,1)");
        assert_eq!(GenWord::parse(&w.to_string(), 1).unwrap(), w);
    }

    #[test]
    fn factor_o_examples() {
        let a = el(vec![M::new(vec![1], vec![4], 2).unwrap()]);
        let (b, g) = factor_o(&a).unwrap();
        assert_eq!(b, el(vec![M::new(vec![1], vec![], 0).unwrap()]));
        assert_eq!(g, el(vec![M::new(vec![], vec![4], 2).unwrap()]));
        assert_eq!(b.compose(&g).unwrap(), a);
        let id = E::identity(2).unwrap();
        assert_eq!(factor_o(&id).unwrap(), (id.clone(), id));
        let t = el(vec![M::eps(3).unwrap(), M::translation(-2)]);
        assert_eq!(factor_o(&t).unwrap().0, E::identity(2).unwrap());
    }

    #[test]
    fn factor_examples() {
        let w = factor_into_generators(&el(vec![M::translation(5)])).unwrap();
        assert_eq!(w.to_string(), "S(1,1) S(1,1) S(1,1) S(1,1) S(1,1)");
        let w = factor_into_generators(&el(vec![M::eps(0).unwrap()])).unwrap();
        assert_eq!(w.to_string(), "E(0,1)");
        let a = el(vec![M::new(vec![], vec![1, 2], 0).unwrap()]);
        let w = factor_into_generators(&a).unwrap();
        assert_eq!(w.eval().unwrap(), a);
        assert_eq!(w.to_string(), "E(0,1) E(1,1)");
    }

    #[test]
    fn factor_round_trip_mixed() {
        let a = el(vec![
            M::new(vec![-3, 0, 7], vec![2], -4).unwrap(),
            M::identity(),
            M::new(vec![5], vec![-1, 0, 9], 3).unwrap(),
        ]);
        let w = factor_into_generators(&a).unwrap();
        assert_eq!(w.eval().unwrap(), a);
        assert!(w.len() <= factor_length_bound(&a).unwrap());
        let fixed = factor_with_fixed_skips(&a, 0).unwrap();
        assert_eq!(fixed.eval().unwrap(), a);
        assert!(fixed
            .syms
            .iter()
            .all(|s| s.kind == GenKind::Shift && s.k.abs() == 1 || s.k == 0));
        assert_eq!(w.inverse().unwrap().eval().unwrap(), a.inverse().unwrap());
    }

    #[test]
    fn antiiso_examples() {
        assert_eq!(antiiso_map(&M::eps(0).unwrap()).unwrap(), M::new(vec![1], vec![], 0).unwrap());
        assert_eq!(antiiso_map(&M::translation(4)).unwrap(), M::translation(-4));
        let x = el(vec![M::eps(0).unwrap()]);
        let y = el(vec![M::eps(2).unwrap()]);
        assert_eq!(
            antiiso(&x.compose(&y).unwrap()).unwrap(),
            antiiso(&y).unwrap().compose(&antiiso(&x).unwrap()).unwrap()
        );
        assert_eq!(antiiso(&el(vec![M::new(vec![1], vec![], 0).unwrap()])), Err(Error::NotTotal));
    }

    #[test]
    fn closure_small_cases() {
        let b = Budget { excl: 2, shift: 2, pos: 2 };
        let units = closure_search(&[el(vec![M::translation(1)])], &b).unwrap();
        assert_eq!(units, (-2..=2).map(|k| el(vec![M::translation(k)])).collect::<Vec<_>>());
        let e0 = el(vec![M::eps(0).unwrap()]);
        let cl = closure_search(std::slice::from_ref(&e0), &b).unwrap();
        assert!(cl.contains(&e0.inverse().unwrap()));
        assert!(cl.iter().all(|x| x.comps()[0].core_shift() == 0));
    }

    #[test]
    fn enumerate_counts() {
        let b = Budget { excl: 2, shift: 2, pos: 2 };
        assert_eq!(enumerate_budget(1, &b).unwrap().len(), 16 * 16 * 5);
        let b = Budget { excl: 1, shift: 1, pos: 1 };
        assert_eq!(enumerate_budget(2, &b).unwrap().len(), 48 * 48);
    }

    #[test]
    fn closure_reaches_budget_n1_small() {
        let b = Budget { excl: 1, shift: 1, pos: 1 };
        let gens = standard_generators(1, 0).unwrap();
        assert_eq!(closure_search(&gens, &b).unwrap(), enumerate_budget(1, &b).unwrap());
    }
}
