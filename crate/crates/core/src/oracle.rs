//! Slow reference implementations for tests: a word problem solver that
//! works on single letters and compares words through their projections
//! onto pairs of non-commuting vertices, a Cayley-ball breadth-first
//! search built on it, and naive enumeration of assignments.

use std::collections::{HashMap, HashSet};

use crate::ball::enumerate_ball;
use crate::error::Result;
use crate::ir::{Assignment, Atom, Instance};
use crate::presentation::{Order, Presentation};
use crate::word::NormalWord;

/// A letter `(vertex, ±1)`. Finite-order vertices only use `+1`.
pub type Letter = (usize, i8);

/// Rewrites a raw word into letters.
pub fn letters(p: &Presentation, raw: &[(usize, i64)]) -> Vec<Letter> {
    let mut out = Vec::new();
    for &(v, e) in raw {
        match p.order(v) {
            Order::Infinite => {
                let sign = if e < 0 { -1 } else { 1 };
                out.extend(std::iter::repeat_n((v, sign), e.unsigned_abs() as usize));
            }
            Order::Finite(k) => {
                let n = e.rem_euclid(k as i64) as usize;
                out.extend(std::iter::repeat_n((v, 1), n));
            }
        }
    }
    out
}

/// Deletes cancelling letter groups until none remain: `v^{±1} ... v^{∓1}`,
/// or `k` copies of a finite-order `v`, where everything in between commutes with `v`.
pub fn reduce_letters(p: &Presentation, mut w: Vec<Letter>) -> Vec<Letter> {
    'outer: loop {
        for i in 0..w.len() {
            let (v, s) = w[i];
            let need = match p.order(v) {
                Order::Infinite => 1,
                Order::Finite(k) => k as usize - 1,
            };
            let mut picked = vec![i];
            for (j, &(u, t)) in w.iter().enumerate().skip(i + 1) {
                if u == v {
                    let cancels = match p.order(v) {
                        Order::Infinite => t == -s,
                        Order::Finite(_) => true,
                    };
                    if !cancels {
                        break;
                    }
                    picked.push(j);
                    if picked.len() == need + 1 {
                        for &k in picked.iter().rev() {
                            w.remove(k);
                        }
                        continue 'outer;
                    }
                } else if !p.adjacent(u, v) {
                    break;
                }
            }
        }
        return w;
    }
}

/// Projections of a reduced word onto every pair of non-adjacent vertices
/// (including equal pairs). Two reduced words are equal in the group iff
/// their keys agree.
pub fn key(p: &Presentation, reduced: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for u in 0..p.len() {
        for v in u..p.len() {
            if u != v && p.adjacent(u, v) {
                continue;
            }
            out.push(
                reduced
                    .iter()
                    .copied()
                    .filter(|&(x, _)| x == u || x == v)
                    .collect(),
            );
        }
    }
    out
}

pub fn raw_key(p: &Presentation, raw: &[(usize, i64)]) -> Vec<Vec<Letter>> {
    key(p, &reduce_letters(p, letters(p, raw)))
}

/// Elements of the Cayley ball, discovered breadth first from the identity
/// by right multiplication with generators; each entry is a shortest word.
pub fn cayley_ball(p: &Presentation, radius: usize) -> Vec<Vec<Letter>> {
    let gens: Vec<Vec<Letter>> = generators(p).iter().map(|g| letters(p, &[*g])).collect();
    let mut seen: HashSet<Vec<Vec<Letter>>> = HashSet::new();
    seen.insert(key(p, &[]));
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let mut x: Vec<Letter> = w.clone();
                x.extend(g);
                let x = reduce_letters(p, x);
                if seen.insert(key(p, &x)) {
                    next.push(x.clone());
                    out.push(x);
                }
            }
        }
        frontier = next;
    }
    out
}

/// `v` and `v^-1` for every vertex, omitting `v^-1` when `v` has order two.
fn generators(p: &Presentation) -> Vec<(usize, i64)> {
    (0..p.len())
        .flat_map(|v| match p.order(v) {
            Order::Finite(2) => vec![(v, 1)],
            _ => vec![(v, 1), (v, -1)],
        })
        .collect()
}

/// All raw words with at most `max_len` generators.
pub fn raw_words(p: &Presentation, max_len: usize) -> Vec<Vec<(usize, i64)>> {
    let gens = generators(p);
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut x: Vec<(usize, i64)> = w.clone();
                x.push(g);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn assignments<'a>(
    vars: &'a [String],
    ball: &'a [NormalWord],
) -> impl Iterator<Item = Assignment> + 'a {
    let n = vars.len();
    let total = ball
        .len()
        .checked_pow(n as u32)
        .expect("search space fits in usize");
    (0..total).map(move |mut k| {
        let mut digits = vec![0usize; n];
        for d in digits.iter_mut().rev() {
            *d = k % ball.len();
            k /= ball.len();
        }
        vars.iter()
            .cloned()
            .zip(digits.into_iter().map(|i| ball[i].clone()))
            .collect()
    })
}

/// The first satisfying assignment in mixed-radix order, checking every assignment.
pub fn naive_first_witness(inst: &Instance, bound: usize) -> Result<Option<Assignment>> {
    let ball = enumerate_ball(&inst.presentation, bound, usize::MAX)?;
    for asg in assignments(&inst.variables, &ball) {
        if inst.is_satisfied_by(&asg)? {
            return Ok(Some(asg));
        }
    }
    Ok(None)
}

/// Every satisfying assignment with values in the ball, in mixed-radix order.
pub fn naive_solutions(inst: &Instance, bound: usize) -> Result<Vec<Assignment>> {
    let ball = enumerate_ball(&inst.presentation, bound, usize::MAX)?;
    let mut out = Vec::new();
    for asg in assignments(&inst.variables, &ball) {
        if inst.is_satisfied_by(&asg)? {
            out.push(asg);
        }
    }
    Ok(out)
}

/// Solutions of `inst` over its first `keep` variables with values in the
/// ball; the remaining variables are existentially quantified without a
/// bound, and must be determined by equations in which they occur once.
pub fn projected_solutions(inst: &Instance, keep: usize, bound: usize) -> Result<Vec<Assignment>> {
    let ball = enumerate_ball(&inst.presentation, bound, usize::MAX)?;
    let mut out = Vec::new();
    for partial in assignments(&inst.variables[..keep], &ball) {
        let satisfied = inst.disjuncts.iter().enumerate().any(|(i, _)| {
            extend_by_equations(inst, i, &partial)
                .map(|full| {
                    inst.evaluate(&full)
                        .map(|r| r.disjuncts[i].holds())
                        .unwrap_or(false)
                })
                .unwrap_or(false)
        });
        if satisfied {
            out.push(partial);
        }
    }
    Ok(out)
}

/// Extends `partial` by repeatedly solving equations of disjunct `d` that
/// contain exactly one unknown variable, occurring once with exponent ±1.
/// Unknowns left undetermined are set to the identity.
pub fn extend_by_equations(inst: &Instance, d: usize, partial: &Assignment) -> Option<Assignment> {
    let p = &inst.presentation;
    let mut asg = partial.clone();
    let equations = &inst.disjuncts[d].equations;
    loop {
        let mut progress = false;
        for e in equations {
            let rel = e.as_relator(p);
            let unknown: Vec<&str> = rel
                .variables()
                .into_iter()
                .filter(|x| !asg.contains_key(*x))
                .collect();
            let [x] = unknown[..] else { continue };
            let occ: Vec<usize> = rel
                .atoms()
                .iter()
                .enumerate()
                .filter(|(_, a)| matches!(a, Atom::Var(y, _) if y == x))
                .map(|(i, _)| i)
                .collect();
            let [i] = occ[..] else { continue };
            let Atom::Var(_, e) = &rel.atoms()[i] else {
                unreachable!()
            };
            if e.abs() != 1 {
                continue;
            }
            let eval = |atoms: &[Atom]| {
                let t = crate::ir::GroupTerm::from_atoms(p, atoms.iter().cloned());
                t.eval_with(p, |y| asg.get(y))
            };
            let before = eval(&rel.atoms()[..i])?;
            let after = eval(&rel.atoms()[i + 1..])?;
            let value = if *e == 1 {
                p.inv(&p.mul(&after, &before))
            } else {
                p.mul(&after, &before)
            };
            asg.insert(x.to_string(), value);
            progress = true;
        }
        if !progress {
            break;
        }
    }
    for x in &inst.variables {
        asg.entry(x.clone()).or_insert_with(NormalWord::identity);
    }
    Some(asg)
}

/// Two raw words.
pub type WordPair = (Vec<(usize, i64)>, Vec<(usize, i64)>);

/// Groups raw words by normal form and by oracle key; `Ok` if the two
/// partitions coincide, otherwise a pair of words on which they disagree.
pub fn compare_partitions(
    p: &Presentation,
    words: &[Vec<(usize, i64)>],
) -> std::result::Result<usize, WordPair> {
    let mut by_nf: HashMap<NormalWord, usize> = HashMap::new();
    let mut by_key: HashMap<Vec<Vec<Letter>>, usize> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        let nf = p.normalize(w);
        let k = raw_key(p, w);
        let a = *by_nf.entry(nf).or_insert(i);
        let b = *by_key.entry(k).or_insert(i);
        if a != b {
            return Err((words[a].clone(), words[b].clone()));
        }
    }
    Ok(by_nf.len())
}
