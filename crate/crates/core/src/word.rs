//! Canonical normal forms and word arithmetic.
//!
//! Elements are stored as syllable sequences. A word is reduced when no two
//! syllables on the same vertex can be shuffled next to each other; among
//! the shuffles of a reduced word the canonical one is the lexicographically
//! least vertex sequence, so two elements are equal iff their normal forms
//! are identical.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::{Presentation, VertexSet};

/// A power of a single vertex generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub exp: i64,
}

impl Syllable {
    pub fn new(vertex: usize, exp: i64) -> Self {
        Syllable { vertex, exp }
    }
}

/// Canonical representative of a group element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    syllables: Vec<Syllable>,
}

impl NormalWord {
    pub fn identity() -> Self {
        NormalWord::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The syllables as a raw word, suitable for concatenation.
    pub fn raw(&self) -> Vec<(usize, i64)> {
        self.syllables.iter().map(|s| (s.vertex, s.exp)).collect()
    }

    pub fn display<'a>(&'a self, p: &'a Presentation) -> DisplayWord<'a> {
        DisplayWord { word: self, p }
    }

    /// Vertices used by the normal form (equals the support of the element).
    pub fn vertices(&self) -> VertexSet {
        self.syllables.iter().map(|s| s.vertex).collect()
    }
}

pub struct DisplayWord<'a> {
    word: &'a NormalWord,
    p: &'a Presentation,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write_syllable(f, self.p.name(s.vertex), s.exp)?;
        }
        Ok(())
    }
}

pub(crate) fn write_syllable(f: &mut impl fmt::Write, name: &str, exp: i64) -> fmt::Result {
    if exp == 1 {
        f.write_str(name)
    } else {
        write!(f, "{name}^{exp}")
    }
}

impl Presentation {
    /// Normal form of a raw word given as `(vertex, exponent)` pairs.
    pub fn normalize(&self, raw: &[(usize, i64)]) -> NormalWord {
        let mut reduced: Vec<Syllable> = Vec::with_capacity(raw.len());
        for &(v, e) in raw {
            self.push_reduced(&mut reduced, v, e);
        }
        NormalWord {
            syllables: self.lex_order(reduced),
        }
    }

    /// Normal form of a word whose vertices are given by name.
    pub fn normalize_named<S: AsRef<str>>(&self, raw: &[(S, i64)]) -> Result<NormalWord> {
        let raw: Vec<(usize, i64)> = raw
            .iter()
            .map(|(n, e)| Ok((self.vertex(n.as_ref())?, *e)))
            .collect::<Result<_>>()?;
        Ok(self.normalize(&raw))
    }

    /// Appends `v^e` to a reduced syllable list, merging with the nearest
    /// same-vertex syllable it can be shuffled against.
    fn push_reduced(&self, reduced: &mut Vec<Syllable>, v: usize, e: i64) {
        let order = self.order(v);
        let e = order.reduce(e);
        if e == 0 {
            return;
        }
        for j in (0..reduced.len()).rev() {
            let w = reduced[j].vertex;
            if w == v {
                let merged = order.reduce(reduced[j].exp + e);
                if merged == 0 {
                    reduced.remove(j);
                } else {
                    reduced[j].exp = merged;
                }
                return;
            }
            if !self.commute(w, v) {
                break;
            }
        }
        reduced.push(Syllable::new(v, e));
    }

    /// Lexicographically least shuffle of a reduced word (Kahn's algorithm on
    /// the dependence order, always emitting the least available vertex).
    fn lex_order(&self, reduced: Vec<Syllable>) -> Vec<Syllable> {
        let n = reduced.len();
        if n < 2 {
            return reduced;
        }
        let mut indegree = vec![0usize; n];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if !self.commute(reduced[i].vertex, reduced[j].vertex) {
                    succ[i].push(j);
                    indegree[j] += 1;
                }
            }
        }
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
            .filter(|&i| indegree[i] == 0)
            .map(|i| Reverse((reduced[i].vertex, i)))
            .collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse((_, i))) = heap.pop() {
            out.push(reduced[i]);
            for &j in &succ[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    heap.push(Reverse((reduced[j].vertex, j)));
                }
            }
        }
        out
    }

    /// Checks that a word is a valid normal form over this presentation.
    pub fn check(&self, w: &NormalWord) -> Result<()> {
        for s in &w.syllables {
            if s.vertex >= self.len() || s.exp == 0 || self.order(s.vertex).reduce(s.exp) != s.exp {
                return Err(Error::PresentationMismatch);
            }
        }
        Ok(())
    }

    pub fn generator(&self, v: usize) -> NormalWord {
        self.normalize(&[(v, 1)])
    }

    pub fn multiply(&self, a: &NormalWord, b: &NormalWord) -> Result<NormalWord> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn invert(&self, a: &NormalWord) -> Result<NormalWord> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    /// Unchecked product of two normal forms of this presentation.
    pub fn mul(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let mut reduced = a.syllables.clone();
        for s in &b.syllables {
            self.push_reduced(&mut reduced, s.vertex, s.exp);
        }
        NormalWord {
            syllables: self.lex_order(reduced),
        }
    }

    pub fn mul_all<'a>(&self, words: impl IntoIterator<Item = &'a NormalWord>) -> NormalWord {
        let mut reduced = Vec::new();
        for w in words {
            for s in &w.syllables {
                self.push_reduced(&mut reduced, s.vertex, s.exp);
            }
        }
        NormalWord {
            syllables: self.lex_order(reduced),
        }
    }

    /// Unchecked inverse.
    pub fn inv(&self, a: &NormalWord) -> NormalWord {
        let raw: Vec<(usize, i64)> = a
            .syllables
            .iter()
            .rev()
            .map(|s| (s.vertex, -s.exp))
            .collect();
        self.normalize(&raw)
    }

    pub fn pow(&self, a: &NormalWord, n: i64) -> NormalWord {
        let base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut reduced = Vec::new();
        for _ in 0..n.unsigned_abs() {
            for s in &base.syllables {
                self.push_reduced(&mut reduced, s.vertex, s.exp);
            }
        }
        NormalWord {
            syllables: self.lex_order(reduced),
        }
    }

    /// `h^-1 g h`.
    pub fn conjugate(&self, g: &NormalWord, h: &NormalWord) -> NormalWord {
        self.mul_all([&self.inv(h), g, h])
    }

    /// `x g x^-1 g^-1`.
    pub fn commutator(&self, x: &NormalWord, g: &NormalWord) -> NormalWord {
        self.mul_all([x, g, &self.inv(x), &self.inv(g)])
    }

    /// Minimal number of generator letters representing the element.
    pub fn geodesic_length(&self, a: &NormalWord) -> u64 {
        a.syllables
            .iter()
            .map(|s| self.order(s.vertex).cost(s.exp))
            .sum()
    }

    /// Vertices occurring in every (equivalently, any) geodesic for `a`.
    pub fn support(&self, a: &NormalWord) -> VertexSet {
        a.vertices()
    }

    pub fn is_in_centralizer(&self, g: &NormalWord, x: &NormalWord) -> bool {
        self.mul(x, g) == self.mul(g, x)
    }

    /// Image under the retraction onto the special subgroup generated by `set`.
    pub fn project(&self, a: &NormalWord, set: VertexSet) -> NormalWord {
        let raw: Vec<(usize, i64)> = a
            .syllables
            .iter()
            .filter(|s| set.contains(s.vertex))
            .map(|s| (s.vertex, s.exp))
            .collect();
        self.normalize(&raw)
    }

    /// Product of the given vertices in canonical order.
    pub fn product_of(&self, set: VertexSet) -> NormalWord {
        let raw: Vec<(usize, i64)> = set.iter().map(|v| (v, 1)).collect();
        self.normalize(&raw)
    }

    /// Parses whitespace-separated `name`, `name^k`, `name^-k` tokens; `1` is the identity.
    pub fn parse_raw(&self, text: &str) -> Result<Vec<(usize, i64)>> {
        let mut raw = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>().map_err(|_| {
                        Error::parse(
                            1,
                            text.find(tok).unwrap_or(0) + 1,
                            format!("bad exponent in `{tok}`"),
                        )
                    })?,
                ),
                None => (tok, 1),
            };
            raw.push((self.vertex(name)?, exp));
        }
        Ok(raw)
    }

    pub fn parse_word(&self, text: &str) -> Result<NormalWord> {
        Ok(self.normalize(&self.parse_raw(text)?))
    }

    /// Relabels a word of `self` into `target` by vertex name.
    pub fn transport(&self, w: &NormalWord, target: &Presentation) -> Result<NormalWord> {
        let raw: Vec<(usize, i64)> = w
            .syllables
            .iter()
            .map(|s| Ok((target.vertex(self.name(s.vertex))?, s.exp)))
            .collect::<Result<_>>()?;
        Ok(target.normalize(&raw))
    }
}
