//! Cyclic reduction and block decomposition.
//!
//! Conjugation convention throughout: `g^h = h^-1 g h`.

use std::collections::HashSet;

use crate::ball::{enumerate_ball, shortlex_cmp};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, VertexSet};
use crate::word::{NormalWord, Syllable};

/// One block of a block decomposition: `root^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub root: NormalWord,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// Reassembles `∏ root^exponent` in block order.
    pub fn product(&self, p: &Presentation) -> NormalWord {
        let powers: Vec<NormalWord> = self
            .blocks
            .iter()
            .map(|b| p.pow(&b.root, b.exponent as i64))
            .collect();
        p.mul_all(&powers)
    }
}

/// The first syllable that can be shuffled to the front while another
/// syllable on the same vertex can be shuffled to the back, such that
/// merging the two around the cycle shortens the word.
fn reducing_pair(p: &Presentation, g: &NormalWord) -> Option<Syllable> {
    let syl = g.syllables();
    // Per vertex: the first syllable reachable from the front and the last reachable from the back.
    for (i, s) in syl.iter().enumerate() {
        let v = s.vertex;
        let front_ok = syl[..i].iter().all(|t| p.commute(t.vertex, v));
        if !front_ok {
            continue;
        }
        let Some(j) = syl.iter().rposition(|t| t.vertex == v) else {
            continue;
        };
        if j == i {
            continue;
        }
        let back_ok = syl[j + 1..].iter().all(|t| p.commute(t.vertex, v));
        if !back_ok {
            continue;
        }
        let order = p.order(v);
        let q = syl[j].exp;
        if order.cost(s.exp + q) < order.cost(s.exp) + order.cost(q) {
            return Some(*s);
        }
    }
    None
}

/// Whether no cyclic shuffle followed by merging shortens `g`.
pub fn is_cyclically_reduced(p: &Presentation, g: &NormalWord) -> bool {
    reducing_pair(p, g).is_none()
}

/// Greedy cyclic reduction: returns `(core, h)` with `h^-1 g h = core`.
fn greedy_reduce(p: &Presentation, g: &NormalWord) -> (NormalWord, NormalWord) {
    let mut core = g.clone();
    let mut h = NormalWord::identity();
    while let Some(s) = reducing_pair(p, &core) {
        let step = p.normalize(&[(s.vertex, s.exp)]);
        core = p.conjugate(&core, &step);
        h = p.mul(&h, &step);
    }
    (core, h)
}

/// Returns `(core, h)` with `h^-1 g h = core` cyclically reduced; `h` is the
/// shortest such conjugator, ties broken lexicographically.
pub fn cyclically_reduce(p: &Presentation, g: &NormalWord) -> (NormalWord, NormalWord) {
    let (greedy_core, greedy_h) = greedy_reduce(p, g);
    if greedy_h.is_identity() {
        return (greedy_core, greedy_h);
    }
    let target = p.geodesic_length(&greedy_core);
    let radius = p.geodesic_length(&greedy_h) as usize;
    // Exhaustive search over shorter or equally long conjugators.
    let ball = enumerate_ball(p, radius, usize::MAX).expect("uncapped enumeration");
    for h in &ball {
        if shortlex_cmp(p, h, &greedy_h).is_ge() {
            break;
        }
        let core = p.conjugate(g, h);
        if p.geodesic_length(&core) == target {
            return (core, h.clone());
        }
    }
    (greedy_core, greedy_h)
}

/// Connected components of the non-commutation graph restricted to `set`,
/// ordered by least vertex.
pub fn noncommuting_components(p: &Presentation, set: VertexSet) -> Vec<VertexSet> {
    let mut remaining = set;
    let mut out = Vec::new();
    while let Some(start) = remaining.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            for u in remaining.difference(comp).iter() {
                if !p.commute(u, v) {
                    comp.insert(u);
                    frontier.push(u);
                }
            }
        }
        remaining = remaining.difference(comp);
        out.push(comp);
    }
    out
}

/// Block decomposition of a cyclically reduced element with infinite-order support.
pub fn block_decomposition(p: &Presentation, c: &NormalWord) -> Result<BlockDecomposition> {
    p.check(c)?;
    for v in p.support(c).iter() {
        if !p.order(v).is_infinite() {
            return Err(Error::FiniteOrderVertexInSupport(p.name(v).to_string()));
        }
    }
    if !is_cyclically_reduced(p, c) {
        return Err(Error::NotCyclicallyReduced);
    }
    let blocks = noncommuting_components(p, p.support(c))
        .into_iter()
        .map(|comp| {
            let word = p.project(c, comp);
            let (root, exponent) = extract_root(p, &word);
            Block { root, exponent }
        })
        .collect();
    Ok(BlockDecomposition { blocks })
}

/// Largest `n` and root `r` with `r^n = u`, for a cyclically reduced `u` over
/// infinite-order vertices. Candidate roots are the prefixes of `u` of length
/// `|u|/n` in the dependence order of its letters.
pub fn extract_root(p: &Presentation, u: &NormalWord) -> (NormalWord, u64) {
    let letters: Vec<(usize, i64)> = u
        .syllables()
        .iter()
        .flat_map(|s| {
            std::iter::repeat_n((s.vertex, s.exp.signum()), s.exp.unsigned_abs() as usize)
        })
        .collect();
    let len = letters.len();
    if len <= 1 {
        return (u.clone(), 1);
    }
    let mut per_vertex = std::collections::BTreeMap::<usize, (usize, i64)>::new();
    for &(v, sign) in &letters {
        let e = per_vertex.entry(v).or_default();
        e.0 += 1;
        e.1 += sign;
    }
    // predecessors[j]: earlier letters that must precede letter j
    let preds: Vec<Vec<usize>> = (0..len)
        .map(|j| {
            (0..j)
                .filter(|&i| !p.commute(letters[i].0, letters[j].0))
                .collect()
        })
        .collect();
    for n in (2..=len).rev() {
        if !len.is_multiple_of(n)
            || per_vertex
                .values()
                .any(|&(count, sum)| count % n != 0 || sum % n as i64 != 0)
        {
            continue;
        }
        let mut found = None;
        let mut chosen = vec![false; len];
        prefixes(&letters, &preds, len / n, 0, 0, &mut chosen, &mut |ideal| {
            let raw: Vec<(usize, i64)> = ideal.iter().map(|&i| letters[i]).collect();
            let r = p.normalize(&raw);
            if p.pow(&r, n as i64) == *u {
                found = Some(r);
                true
            } else {
                false
            }
        });
        if let Some(r) = found {
            return (r, n as u64);
        }
    }
    (u.clone(), 1)
}

/// Enumerates order ideals of the given size, each exactly once. The
/// callback returns `true` to stop.
fn prefixes(
    letters: &[(usize, i64)],
    preds: &[Vec<usize>],
    size: usize,
    next: usize,
    taken: usize,
    chosen: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if taken == size {
        let ideal: Vec<usize> = (0..letters.len()).filter(|&i| chosen[i]).collect();
        return visit(&ideal);
    }
    if next == letters.len() || letters.len() - next < size - taken {
        return false;
    }
    if preds[next].iter().all(|&i| chosen[i]) {
        chosen[next] = true;
        if prefixes(letters, preds, size, next + 1, taken + 1, chosen, visit) {
            return true;
        }
        chosen[next] = false;
    }
    prefixes(letters, preds, size, next + 1, taken, chosen, visit)
}

/// Distinct elements obtained by rotating the canonical letter sequence.
pub fn cyclic_conjugates(p: &Presentation, g: &NormalWord) -> Vec<NormalWord> {
    let letters: Vec<(usize, i64)> = g
        .syllables()
        .iter()
        .flat_map(|s| {
            std::iter::repeat_n((s.vertex, s.exp.signum()), s.exp.unsigned_abs() as usize)
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in 0..letters.len().max(1) {
        let mut raw = letters[k..].to_vec();
        raw.extend_from_slice(&letters[..k]);
        let w = p.normalize(&raw);
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma1() -> Presentation {
        Presentation::raag(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
    }

    #[test]
    fn cyclic_reduction_examples() {
        let f = Presentation::free(&["x", "y"]).unwrap();
        let g = f.parse_word("x y x^-1").unwrap();
        let (core, h) = cyclically_reduce(&f, &g);
        assert_eq!(core.display(&f).to_string(), "y");
        assert_eq!(h.display(&f).to_string(), "x");
        assert_eq!(f.conjugate(&g, &h), core);

        let xy = f.parse_word("x y").unwrap();
        assert_eq!(
            cyclically_reduce(&f, &xy),
            (xy.clone(), NormalWord::identity())
        );

        let p = gamma1();
        let g = p.parse_word("b a c a^-1 b^-1").unwrap();
        let (core, h) = cyclically_reduce(&p, &g);
        assert_eq!(core.display(&p).to_string(), "c");
        assert_eq!(p.conjugate(&g, &h), core);
        assert_eq!(h.display(&p).to_string(), "a");
    }

    #[test]
    fn blocks_examples() {
        let p = gamma1();
        let c = p.parse_word("a^2 b^3").unwrap();
        let bd = block_decomposition(&p, &c).unwrap();
        let shown: Vec<(String, u64)> = bd
            .blocks
            .iter()
            .map(|b| (b.root.display(&p).to_string(), b.exponent))
            .collect();
        assert_eq!(shown, [("a".to_string(), 2), ("b".to_string(), 3)]);
        assert_eq!(bd.product(&p), c);

        let f = Presentation::free(&["x", "y"]).unwrap();
        let bd = block_decomposition(&f, &f.parse_word("x y").unwrap()).unwrap();
        assert_eq!(bd.blocks.len(), 1);
        assert_eq!(bd.blocks[0].exponent, 1);

        let acac = p.parse_word("a c a c").unwrap();
        let bd = block_decomposition(&p, &acac).unwrap();
        assert_eq!(bd.blocks.len(), 1);
        assert_eq!(bd.blocks[0].root.display(&p).to_string(), "a c");
        assert_eq!(bd.blocks[0].exponent, 2);
    }

    #[test]
    fn block_errors() {
        let f = Presentation::free(&["x", "y"]).unwrap();
        let g = f.parse_word("x y x^-1").unwrap();
        assert_eq!(
            block_decomposition(&f, &g),
            Err(Error::NotCyclicallyReduced)
        );
        let racg = Presentation::racg(&["a", "b"], &[]).unwrap();
        let ab = racg.parse_word("a b").unwrap();
        assert!(matches!(
            block_decomposition(&racg, &ab),
            Err(Error::FiniteOrderVertexInSupport(_))
        ));
    }

    #[test]
    fn roots_of_commutator_powers() {
        let f = Presentation::free(&["x", "y"]).unwrap();
        let comm = f.parse_word("x y x^-1 y^-1").unwrap();
        let cube = f.pow(&comm, 3);
        let (root, n) = extract_root(&f, &cube);
        assert_eq!(n, 3);
        assert_eq!(root, comm);
    }
}
