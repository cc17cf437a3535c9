//! Enumeration of Cayley balls in length-then-lex order.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::presentation::{Order, Presentation};
use crate::word::NormalWord;

/// Default largest radius accepted by [`enumerate_ball`] and the search.
pub const DEFAULT_CAP: usize = 10;

/// Letter sequence of a normal form; a positive letter sorts before its inverse,
/// and vertices sort in canonical order.
pub fn letter_key(w: &NormalWord) -> Vec<(usize, bool)> {
    let mut key = Vec::new();
    for s in w.syllables() {
        for _ in 0..s.exp.unsigned_abs() {
            key.push((s.vertex, s.exp < 0));
        }
    }
    key
}

/// Length-then-lex comparison of two elements.
pub fn shortlex_cmp(p: &Presentation, a: &NormalWord, b: &NormalWord) -> Ordering {
    p.geodesic_length(a)
        .cmp(&p.geodesic_length(b))
        .then_with(|| letter_key(a).cmp(&letter_key(b)))
}

/// Monoid generators: `v` and `v^-1` for each vertex, dropping `v^-1` for involutions.
pub fn generators(p: &Presentation) -> Vec<NormalWord> {
    let mut gens = Vec::new();
    for v in 0..p.len() {
        gens.push(p.normalize(&[(v, 1)]));
        if p.order(v) != Order::Finite(2) {
            gens.push(p.normalize(&[(v, -1)]));
        }
    }
    gens
}

/// All elements of geodesic length at most `radius`, in length-then-lex order.
pub fn enumerate_ball(p: &Presentation, radius: usize, cap: usize) -> Result<Vec<NormalWord>> {
    if radius > cap {
        return Err(Error::RadiusCapExceeded { radius, cap });
    }
    let gens = generators(p);
    let mut seen: HashSet<NormalWord> = HashSet::new();
    seen.insert(NormalWord::identity());
    let mut out = vec![NormalWord::identity()];
    let mut layer = vec![NormalWord::identity()];
    for r in 1..=radius as u64 {
        let mut next = Vec::new();
        for w in &layer {
            for g in &gens {
                let x = p.mul(w, g);
                if p.geodesic_length(&x) == r && seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by_cached_key(letter_key);
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}
