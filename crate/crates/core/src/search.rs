//! Bounded exhaustive search over Cayley balls.
//!
//! Every variable ranges over the ball of the given radius in
//! length-then-lex order, and assignments are visited in mixed-radix order
//! with the first declared variable most significant. The reported witness
//! is the first satisfying assignment in that order. Pruning never changes
//! the answer; it only skips assignments that cannot satisfy the disjunct:
//!
//! * a disjunct whose abelian shadow is unsatisfiable is dropped;
//! * items mentioning a single variable filter that variable's domain;
//! * every other item is checked as soon as its last variable is set;
//! * an equation in which the newest variable occurs once fixes its value.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::Instant;

use rayon::prelude::*;

use crate::abel::abelianize;
use crate::ball::{enumerate_ball, DEFAULT_CAP};
use crate::error::Result;
use crate::ir::{disjunct_shadow, Assignment, Atom, Constraint, Disjunct, GroupTerm, Instance};
use crate::presentation::{Order, Presentation};
use crate::word::NormalWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Witness(Assignment),
    NoSolutionUpToBound(usize),
    UnsatByShadow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub verdict: Verdict,
    /// Candidate values tried.
    pub nodes: u64,
    pub millis: u128,
}

impl SearchReport {
    pub fn witness(&self) -> Option<&Assignment> {
        match &self.verdict {
            Verdict::Witness(a) => Some(a),
            _ => None,
        }
    }

    /// `stats nodes=<n> millis=<t>`.
    pub fn stats_line(&self) -> String {
        format!("stats nodes={} millis={}", self.nodes, self.millis)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub bound: usize,
    pub cap: usize,
    pub parallel: bool,
}

impl SearchOptions {
    pub fn new(bound: usize) -> Self {
        SearchOptions {
            bound,
            cap: DEFAULT_CAP,
            parallel: true,
        }
    }
}

pub fn search(inst: &Instance, bound: usize) -> Result<SearchReport> {
    search_with(inst, &SearchOptions::new(bound))
}

pub fn search_with(inst: &Instance, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let p = &inst.presentation;
    let ball = Ball::new(p, enumerate_ball(p, opts.bound, opts.cap)?);
    let nodes = AtomicU64::new(0);
    let mut live = 0;
    let mut best: Option<Vec<usize>> = None;
    for d in &inst.disjuncts {
        if !disjunct_shadow(p, d).solve().is_sat() {
            continue;
        }
        live += 1;
        let plan = Plan::new(inst, d, &ball);
        if let Some(found) = plan.first_solution(&nodes, opts.parallel, best.as_deref()) {
            if best.as_ref().is_none_or(|b| found < *b) {
                best = Some(found);
            }
        }
    }
    let verdict = match best {
        _ if live == 0 => Verdict::UnsatByShadow,
        Some(idx) => {
            let asg: Assignment = inst
                .variables
                .iter()
                .zip(idx)
                .map(|(x, i)| (x.clone(), ball.words[i].clone()))
                .collect();
            assert!(
                inst.is_satisfied_by(&asg)?,
                "search produced an assignment that does not satisfy the instance"
            );
            Verdict::Witness(asg)
        }
        None => Verdict::NoSolutionUpToBound(opts.bound),
    };
    Ok(SearchReport {
        verdict,
        nodes: nodes.into_inner(),
        millis: start.elapsed().as_millis(),
    })
}

struct Ball<'a> {
    p: &'a Presentation,
    words: Vec<NormalWord>,
    index: HashMap<NormalWord, usize>,
    ab: Vec<Vec<i64>>,
    len: Vec<i64>,
}

impl<'a> Ball<'a> {
    fn new(p: &'a Presentation, words: Vec<NormalWord>) -> Self {
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let ab = words
            .iter()
            .map(|w| abelianize(p, w).coords().to_vec())
            .collect();
        let len = words.iter().map(|w| p.geodesic_length(w) as i64).collect();
        Ball {
            p,
            words,
            index,
            ab,
            len,
        }
    }
}

#[derive(Clone, Debug)]
enum CAtom {
    Var(usize, i64),
    Const(NormalWord),
}

#[derive(Clone, Debug)]
enum Check {
    /// The relator evaluates to the identity.
    Identity(Vec<CAtom>),
    /// `∑ e ab(x) + constant = 0`, reduced modulo finite orders.
    Ab {
        vars: Vec<(usize, i64)>,
        constant: Vec<i64>,
    },
    /// `∑ coef |x|_v = rhs`.
    ExpSum {
        terms: Vec<(i64, usize, usize)>,
        rhs: i64,
    },
    /// `∑ coef |x| = rhs`.
    Length { terms: Vec<(i64, usize)>, rhs: i64 },
}

impl Check {
    fn vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = match self {
            Check::Identity(atoms) => atoms
                .iter()
                .filter_map(|a| match a {
                    CAtom::Var(x, _) => Some(*x),
                    CAtom::Const(_) => None,
                })
                .collect(),
            Check::Ab { vars, .. } => vars.iter().map(|(x, _)| *x).collect(),
            Check::ExpSum { terms, .. } => terms.iter().map(|t| t.1).collect(),
            Check::Length { terms, .. } => terms.iter().map(|t| t.1).collect(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }

    fn holds(&self, ball: &Ball<'_>, val: &[usize]) -> bool {
        let p = ball.p;
        match self {
            Check::Identity(atoms) => {
                let parts: Vec<NormalWord> = atoms
                    .iter()
                    .map(|a| match a {
                        CAtom::Var(x, e) => p.pow(&ball.words[val[*x]], *e),
                        CAtom::Const(w) => w.clone(),
                    })
                    .collect();
                p.mul_all(&parts).is_identity()
            }
            Check::Ab { vars, constant } => (0..p.len()).all(|v| {
                let total: i64 = constant[v]
                    + vars
                        .iter()
                        .map(|(x, e)| e * ball.ab[val[*x]][v])
                        .sum::<i64>();
                match p.order(v) {
                    Order::Infinite => total == 0,
                    Order::Finite(k) => total.rem_euclid(k as i64) == 0,
                }
            }),
            Check::ExpSum { terms, rhs } => {
                terms
                    .iter()
                    .map(|(c, x, v)| c * ball.ab[val[*x]][*v])
                    .sum::<i64>()
                    == *rhs
            }
            Check::Length { terms, rhs } => {
                terms
                    .iter()
                    .map(|(c, x)| c * ball.len[val[*x]])
                    .sum::<i64>()
                    == *rhs
            }
        }
    }
}

fn compile_term(p: &Presentation, t: &GroupTerm, pos: &HashMap<&str, usize>) -> Vec<CAtom> {
    t.atoms()
        .iter()
        .map(|a| match a {
            Atom::Var(x, e) => CAtom::Var(pos[x.as_str()], *e),
            Atom::Const(w) => CAtom::Const(p.normalize(&w.raw())),
        })
        .collect()
}

fn ab_check(p: &Presentation, relator: &GroupTerm, pos: &HashMap<&str, usize>) -> Check {
    let mut constant = vec![0i64; p.len()];
    let mut vars = Vec::new();
    for a in relator.atoms() {
        match a {
            Atom::Var(x, e) => vars.push((pos[x.as_str()], *e)),
            Atom::Const(w) => {
                for (v, c) in abelianize(p, w).coords().iter().enumerate() {
                    constant[v] += c;
                }
            }
        }
    }
    Check::Ab { vars, constant }
}

/// Search plan for one disjunct.
struct Plan<'a> {
    ball: &'a Ball<'a>,
    /// Allowed ball indices per variable, increasing.
    domains: Vec<Vec<usize>>,
    /// Checks whose last variable is the key.
    at: Vec<Vec<Check>>,
    /// Equations that determine the variable at this level.
    solvers: Vec<Vec<(Vec<CAtom>, usize)>>,
    /// Some item without variables fails.
    dead: bool,
}

impl<'a> Plan<'a> {
    fn new(inst: &Instance, d: &Disjunct, ball: &'a Ball<'a>) -> Self {
        let p = ball.p;
        let n = inst.variables.len();
        let pos: HashMap<&str, usize> = inst
            .variables
            .iter()
            .enumerate()
            .map(|(i, x)| (x.as_str(), i))
            .collect();
        let mut checks = Vec::new();
        for e in &d.equations {
            checks.push(Check::Identity(compile_term(p, &e.as_relator(p), &pos)));
        }
        for c in &d.constraints {
            checks.push(match c {
                Constraint::AbEq(l, r) => ab_check(p, &l.concat(p, &r.inverse(p)), &pos),
                Constraint::ExpSumEq { terms, rhs } => Check::ExpSum {
                    terms: terms
                        .iter()
                        .map(|t| (t.coef, pos[t.var.as_str()], t.vertex))
                        .collect(),
                    rhs: *rhs,
                },
                Constraint::LengthEq { terms, rhs } => Check::Length {
                    terms: terms.iter().map(|(c, x)| (*c, pos[x.as_str()])).collect(),
                    rhs: *rhs,
                },
                Constraint::Coset { var, rep } => {
                    let rel =
                        GroupTerm::var(var).concat(p, &GroupTerm::constant(rep.clone()).inverse(p));
                    ab_check(p, &rel, &pos)
                }
            });
        }
        let mut unary: Vec<Vec<Check>> = vec![Vec::new(); n];
        let mut at: Vec<Vec<Check>> = vec![Vec::new(); n];
        let mut solvers: Vec<Vec<(Vec<CAtom>, usize)>> = vec![Vec::new(); n];
        let mut mentioned = vec![false; n];
        let mut dead = false;
        for c in checks {
            let vars = c.vars();
            for &x in &vars {
                mentioned[x] = true;
            }
            match vars.as_slice() {
                [] => dead |= !c.holds(ball, &[]),
                [x] => unary[*x].push(c),
                [.., last] => {
                    let last = *last;
                    if let Check::Identity(atoms) = &c {
                        let occ: Vec<usize> = atoms
                            .iter()
                            .enumerate()
                            .filter(|(_, a)| matches!(a, CAtom::Var(x, _) if *x == last))
                            .map(|(i, _)| i)
                            .collect();
                        if let [i] = occ[..] {
                            if matches!(atoms[i], CAtom::Var(_, 1 | -1)) {
                                solvers[last].push((atoms.clone(), i));
                            }
                        }
                    }
                    at[last].push(c);
                }
            }
        }
        let domains = (0..n)
            .map(|x| {
                if !mentioned[x] {
                    return vec![0];
                }
                let mut val = vec![0usize; n];
                (0..ball.words.len())
                    .filter(|&i| {
                        val[x] = i;
                        unary[x].iter().all(|c| c.holds(ball, &val))
                    })
                    .collect()
            })
            .collect();
        Plan {
            ball,
            domains,
            at,
            solvers,
            dead,
        }
    }

    /// The value forced on `level` by its first solver, if any.
    fn forced(&self, level: usize, val: &[usize]) -> Option<Option<usize>> {
        let (atoms, i) = self.solvers[level].first()?;
        let p = self.ball.p;
        let eval = |atoms: &[CAtom]| {
            let parts: Vec<NormalWord> = atoms
                .iter()
                .map(|a| match a {
                    CAtom::Var(x, e) => p.pow(&self.ball.words[val[*x]], *e),
                    CAtom::Const(w) => w.clone(),
                })
                .collect();
            p.mul_all(&parts)
        };
        let before = eval(&atoms[..*i]);
        let after = eval(&atoms[i + 1..]);
        let value = match atoms[*i] {
            CAtom::Var(_, 1) => p.inv(&p.mul(&after, &before)),
            _ => p.mul(&after, &before),
        };
        let idx = self.ball.index.get(&value).copied();
        Some(idx.filter(|i| self.domains[level].binary_search(i).is_ok()))
    }

    fn dfs(&self, level: usize, val: &mut Vec<usize>, nodes: &AtomicU64) -> bool {
        if level == val.len() {
            return true;
        }
        match self.forced(level, val) {
            Some(Some(i)) => self.try_candidates(level, std::iter::once(i), val, nodes),
            Some(None) => false,
            None => self.try_candidates(level, self.domains[level].iter().copied(), val, nodes),
        }
    }

    fn try_candidates(
        &self,
        level: usize,
        candidates: impl Iterator<Item = usize>,
        val: &mut Vec<usize>,
        nodes: &AtomicU64,
    ) -> bool {
        let mut count = 0u64;
        let mut found = false;
        for i in candidates {
            count += 1;
            val[level] = i;
            if self.at[level].iter().all(|c| c.holds(self.ball, val))
                && self.dfs(level + 1, val, nodes)
            {
                found = true;
                break;
            }
        }
        nodes.fetch_add(count, AtomicOrdering::Relaxed);
        found
    }

    /// Ball indices of the first solution in mixed-radix order. First
    /// values above `limit[0]` are not tried.
    fn first_solution(
        &self,
        nodes: &AtomicU64,
        parallel: bool,
        limit: Option<&[usize]>,
    ) -> Option<Vec<usize>> {
        let n = self.domains.len();
        if self.dead {
            return None;
        }
        if n == 0 {
            return Some(Vec::new());
        }
        let first = match self.forced(0, &vec![0; n]) {
            Some(Some(i)) => vec![i],
            Some(None) => return None,
            None => self.domains[0].clone(),
        };
        let first: Vec<usize> = first
            .into_iter()
            .filter(|&i| limit.is_none_or(|l| i <= l[0]))
            .collect();
        let attempt = |i: usize| {
            let mut val = vec![0usize; n];
            self.try_candidates(0, std::iter::once(i), &mut val, nodes)
                .then_some(val)
        };
        if parallel && n > 1 {
            first.par_iter().find_map_first(|&i| attempt(i))
        } else {
            first.iter().find_map(|&i| attempt(i))
        }
    }
}
