//! Rewriting every equation into one of the short forms `Z = X Y`, `X = Y`
//! or `X = h` with `h` a constant.

use std::collections::{BTreeSet, HashMap};

use crate::presentation::Presentation;

use super::instance::{Constraint, Disjunct, Equation, Instance};
use super::term::{Atom, GroupTerm};

/// Whether `e` is `Z = X Y`, `X = Y` or `X = h`.
pub fn is_short(e: &Equation) -> bool {
    if e.lhs.as_var().is_none() {
        return false;
    }
    matches!(
        e.rhs.atoms(),
        [Atom::Var(_, 1), Atom::Var(_, 1)] | [Atom::Var(_, 1)] | [Atom::Const(_)] | []
    )
}

/// Every equation is short and every `ab` constraint relates two variables.
pub fn is_flattened(inst: &Instance) -> bool {
    inst.disjuncts.iter().all(|d| {
        d.equations.iter().all(is_short)
            && d.constraints.iter().all(|c| match c {
                Constraint::AbEq(l, r) => l.as_var().is_some() && r.as_var().is_some(),
                _ => true,
            })
    })
}

/// Hands out `_f0, _f1, ...`, skipping names already in use.
pub struct FreshNames {
    next: usize,
    taken: BTreeSet<String>,
}

impl FreshNames {
    pub fn new(inst: &Instance) -> Self {
        let mut taken: BTreeSet<String> = inst.variables.iter().cloned().collect();
        taken.extend(inst.presentation.names().iter().cloned());
        FreshNames { next: 0, taken }
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let name = format!("_f{}", self.next);
            self.next += 1;
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }
}

struct DisjunctFlattener<'a> {
    p: &'a Presentation,
    names: &'a mut FreshNames,
    new_vars: &'a mut Vec<String>,
    one: Option<String>,
    inverses: HashMap<String, String>,
    out: Disjunct,
}

impl DisjunctFlattener<'_> {
    fn fresh(&mut self) -> String {
        let x = self.names.fresh();
        self.new_vars.push(x.clone());
        x
    }

    fn push(&mut self, lhs: &str, rhs: GroupTerm) {
        self.out
            .equations
            .push(Equation::new(GroupTerm::var(lhs), rhs));
    }

    fn one(&mut self) -> String {
        if let Some(one) = &self.one {
            return one.clone();
        }
        let one = self.fresh();
        self.push(&one, GroupTerm::identity());
        self.one = Some(one.clone());
        one
    }

    /// A variable equal to `x^-1`, defined by `one = w x`.
    fn inverse_of(&mut self, x: &str) -> String {
        if let Some(w) = self.inverses.get(x) {
            return w.clone();
        }
        let one = self.one();
        let w = self.fresh();
        self.push(&one, GroupTerm::var(&w).concat(self.p, &GroupTerm::var(x)));
        self.inverses.insert(x.to_string(), w.clone());
        w
    }

    fn equation(&mut self, e: &Equation) {
        if is_short(e) {
            self.out.equations.push(e.clone());
            return;
        }
        let relator = e.as_relator(self.p);
        let mut letters = Vec::new();
        for a in relator.atoms() {
            match a {
                Atom::Var(x, n) => {
                    for _ in 0..n.unsigned_abs() {
                        let v = if *n > 0 {
                            x.clone()
                        } else {
                            self.inverse_of(x)
                        };
                        letters.push(v);
                    }
                }
                Atom::Const(w) => {
                    let c = self.fresh();
                    self.push(&c, GroupTerm::constant(w.clone()));
                    letters.push(c);
                }
            }
        }
        let mut iter = letters.into_iter();
        let Some(mut acc) = iter.next() else {
            return;
        };
        for next in iter {
            let t = self.fresh();
            self.push(
                &t,
                GroupTerm::var(&acc).concat(self.p, &GroupTerm::var(&next)),
            );
            acc = t;
        }
        self.push(&acc, GroupTerm::identity());
    }

    fn as_variable(&mut self, t: &GroupTerm) -> GroupTerm {
        if t.as_var().is_some() {
            return t.clone();
        }
        let w = self.fresh();
        self.equation(&Equation::new(GroupTerm::var(&w), t.clone()));
        GroupTerm::var(w)
    }

    fn constraint(&mut self, c: &Constraint) {
        let c = match c {
            Constraint::AbEq(l, r) => {
                let l = self.as_variable(l);
                let r = self.as_variable(r);
                Constraint::AbEq(l, r)
            }
            other => other.clone(),
        };
        self.out.constraints.push(c);
    }
}

/// Equivalent instance in which every equation is short and `ab`
/// constraints relate variables only.
pub fn flatten(inst: &Instance) -> Instance {
    let p = &inst.presentation;
    let mut names = FreshNames::new(inst);
    let mut new_vars = Vec::new();
    let mut disjuncts = Vec::new();
    for d in &inst.disjuncts {
        let mut f = DisjunctFlattener {
            p,
            names: &mut names,
            new_vars: &mut new_vars,
            one: None,
            inverses: HashMap::new(),
            out: Disjunct::default(),
        };
        for e in &d.equations {
            f.equation(e);
        }
        for c in &d.constraints {
            f.constraint(c);
        }
        disjuncts.push(f.out);
    }
    let mut variables = inst.variables.clone();
    variables.extend(new_vars);
    Instance {
        presentation: p.clone(),
        variables,
        disjuncts,
    }
}
