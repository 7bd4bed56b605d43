//! JSON text forms.
//!
//! - map: `{"D":[..],"R":[..],"c":k}`
//! - element: `{"n":2,"comps":[map, map]}`; a bare map is read as `n = 1`
//! - raw windowed table: `{"n":..,"W":..,"table":[[i,k,j,m],..],"tails":[{"cL":..,"cR":..},..]}`
//!
//! Parsing is strict. Exclusion sets must be strictly ascending and unknown
//! keys are rejected, so a fixture always denotes exactly what it spells.

use std::fmt::{self, Write as _};
use std::marker::PhantomData;

use serde::de::{self, DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use thiserror::Error;

use crate::element::{Element, LexPoint};
use crate::map::{is_strictly_sorted, CofiniteMonotoneMap};
use crate::oracle::{Tail, WindowedMap};
use crate::scalar::Int;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct TextError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl From<serde_json::Error> for TextError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; keep only the message
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        Self {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

struct SortedSet<T>(Vec<T>);

impl<'de, T: Deserialize<'de> + Ord> Deserialize<'de> for SortedSet<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<T>::deserialize(d)?;
        if !is_strictly_sorted(&v) {
            return Err(de::Error::custom("set must be strictly ascending without duplicates"));
        }
        Ok(Self(v))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapText<T: Ord> {
    #[serde(rename = "D")]
    dom: SortedSet<T>,
    #[serde(rename = "R")]
    ran: SortedSet<T>,
    c: T,
}

impl<T: Int> MapText<T> {
    fn build(self) -> CofiniteMonotoneMap<T> {
        CofiniteMonotoneMap::from_sorted(self.dom.0, self.ran.0, self.c)
    }
}

struct ElementText<T>(Element<T>);

struct ElementVisitor<T>(PhantomData<T>);

impl<'de, T: Int + DeserializeOwned> Visitor<'de> for ElementVisitor<T> {
    type Value = ElementText<T>;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an element {\"n\":..,\"comps\":[..]} or a map {\"D\":..,\"R\":..,\"c\":..}")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
        let mut n: Option<usize> = None;
        let mut comps: Option<Vec<MapText<T>>> = None;
        let mut dom: Option<SortedSet<T>> = None;
        let mut ran: Option<SortedSet<T>> = None;
        let mut c: Option<T> = None;
        fn put<E: de::Error, V>(slot: &mut Option<V>, v: V, key: &'static str) -> Result<(), E> {
            if slot.replace(v).is_some() {
                return Err(E::duplicate_field(key));
            }
            Ok(())
        }
        while let Some(key) = access.next_key::<String>()? {
            match key.as_str() {
                "n" => put(&mut n, access.next_value()?, "n")?,
                "comps" => put(&mut comps, access.next_value()?, "comps")?,
                "D" => put(&mut dom, access.next_value()?, "D")?,
                "R" => put(&mut ran, access.next_value()?, "R")?,
                "c" => put(&mut c, access.next_value()?, "c")?,
                other => return Err(de::Error::unknown_field(other, &["n", "comps", "D", "R", "c"])),
            }
        }
        let is_map = dom.is_some() || ran.is_some() || c.is_some();
        let is_element = n.is_some() || comps.is_some();
        if is_map && is_element {
            return Err(de::Error::custom("mixes element keys (n, comps) with map keys (D, R, c)"));
        }
        if is_map {
            let map = MapText {
                dom: dom.ok_or_else(|| de::Error::missing_field("D"))?,
                ran: ran.ok_or_else(|| de::Error::missing_field("R"))?,
                c: c.ok_or_else(|| de::Error::missing_field("c"))?,
            };
            return Element::new(vec![map.build()]).map(ElementText).map_err(de::Error::custom);
        }
        let n = n.ok_or_else(|| de::Error::missing_field("n"))?;
        let comps = comps.ok_or_else(|| de::Error::missing_field("comps"))?;
        if n == 0 {
            return Err(de::Error::custom("n must be positive"));
        }
        if comps.len() != n {
            return Err(de::Error::custom(format!("n is {n} but {} comps given", comps.len())));
        }
        Element::new(comps.into_iter().map(MapText::build).collect())
            .map(ElementText)
            .map_err(de::Error::custom)
    }
}

impl<'de, T: Int + DeserializeOwned> Deserialize<'de> for ElementText<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(ElementVisitor(PhantomData))
    }
}

pub fn parse_map<T: Int + DeserializeOwned>(src: &str) -> Result<CofiniteMonotoneMap<T>, TextError> {
    Ok(serde_json::from_str::<MapText<T>>(src)?.build())
}

/// Reads either the element form or a bare map (taken as `n = 1`).
pub fn parse_element<T: Int + DeserializeOwned>(src: &str) -> Result<Element<T>, TextError> {
    Ok(serde_json::from_str::<ElementText<T>>(src)?.0)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TailText<T> {
    #[serde(rename = "cL")]
    left: T,
    #[serde(rename = "cR")]
    right: T,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawText<T> {
    n: usize,
    #[serde(rename = "W")]
    radius: T,
    table: Vec<(usize, T, usize, T)>,
    tails: Vec<TailText<T>>,
}

/// Reads a raw windowed table. Only the syntax is checked here; use
/// [`Element::validate_raw`] to decide whether it shadows an element.
pub fn parse_raw<T: Int + DeserializeOwned>(src: &str) -> Result<WindowedMap<T>, TextError> {
    let raw: RawText<T> = serde_json::from_str(src)?;
    let entries = raw
        .table
        .into_iter()
        .map(|(i, k, j, m)| (LexPoint::new(i, k), LexPoint::new(j, m)))
        .collect();
    let tails = raw
        .tails
        .into_iter()
        .map(|t| Tail {
            left: t.left,
            right: t.right,
        })
        .collect();
    Ok(WindowedMap::new(raw.n, raw.radius, entries, tails))
}

/// Map form when `n = 1`, element form otherwise.
pub fn format_element<T: Int>(a: &Element<T>) -> String {
    match a.comps() {
        [only] => only.to_string(),
        _ => a.to_string(),
    }
}

pub fn format_raw<T: Int>(w: &WindowedMap<T>) -> String {
    let mut s = format!("{{\"n\":{},\"W\":{},\"table\":[", w.n(), w.radius());
    for (idx, (src, dst)) in w.entries().iter().enumerate() {
        if idx > 0 {
            s.push(',');
        }
        let _ = write!(s, "[{},{},{},{}]", src.level, src.pos, dst.level, dst.pos);
    }
    s.push_str("],\"tails\":[");
    for (idx, t) in w.tails().iter().enumerate() {
        if idx > 0 {
            s.push(',');
        }
        let _ = write!(s, "{{\"cL\":{},\"cR\":{}}}", t.left, t.right);
    }
    s.push_str("]}");
    s
}
