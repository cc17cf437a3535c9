use std::collections::BTreeSet;

use crate::ir::{Constraint, Disjunct, Equation, ExpSumTerm, GroupTerm, Instance};
use crate::presentation::Presentation;
use crate::word::NormalWord;

use super::{Recipe, RecipeEntry};

/// Accumulates a single-disjunct instance together with its witness recipes.
pub(super) struct Builder {
    pub p: Presentation,
    pub variables: Vec<String>,
    pub disjunct: Disjunct,
    pub recipe: Vec<RecipeEntry>,
    taken: BTreeSet<String>,
    next: usize,
}

impl Builder {
    pub fn new(p: &Presentation) -> Self {
        Builder {
            p: p.clone(),
            variables: Vec::new(),
            disjunct: Disjunct::default(),
            recipe: Vec::new(),
            taken: p.names().iter().cloned().collect(),
            next: 0,
        }
    }

    /// Declares a variable named `name`, or `name'`, `name''`... if taken.
    pub fn named(&mut self, name: &str, recipe: Recipe) -> String {
        let mut x = name.to_string();
        while !self.taken.insert(x.clone()) {
            x.push('_');
        }
        self.variables.push(x.clone());
        self.recipe.push(RecipeEntry {
            var: x.clone(),
            recipe,
        });
        x
    }

    /// Declares `<prefix><n>` with a global counter.
    pub fn fresh(&mut self, prefix: &str, recipe: Recipe) -> String {
        loop {
            let x = format!("{prefix}{}", self.next);
            self.next += 1;
            if !self.taken.contains(&x) {
                return self.named(&x, recipe);
            }
        }
    }

    pub fn show(&self, t: &GroupTerm) -> String {
        t.display(&self.p).to_string()
    }

    pub fn word(&self, w: &NormalWord) -> GroupTerm {
        GroupTerm::constant(w.clone())
    }

    pub fn gen(&self, v: usize) -> GroupTerm {
        self.word(&self.p.generator(v))
    }

    pub fn var(&self, x: &str) -> GroupTerm {
        GroupTerm::var(x)
    }

    pub fn mul(&self, a: &GroupTerm, b: &GroupTerm) -> GroupTerm {
        a.concat(&self.p, b)
    }

    /// `a b^-1`.
    pub fn div(&self, a: &GroupTerm, b: &GroupTerm) -> GroupTerm {
        a.concat(&self.p, &b.inverse(&self.p))
    }

    pub fn eq(&mut self, lhs: GroupTerm, rhs: GroupTerm) {
        self.disjunct.equations.push(Equation::new(lhs, rhs));
    }

    /// `[x, g] = 1`, written `x g x^-1 g^-1 = 1`.
    pub fn commute(&mut self, x: &GroupTerm, g: &GroupTerm) {
        let p = &self.p;
        let c = x
            .concat(p, g)
            .concat(p, &x.inverse(p))
            .concat(p, &g.inverse(p));
        self.eq(c, GroupTerm::identity());
    }

    pub fn ab_eq(&mut self, lhs: GroupTerm, rhs: GroupTerm) {
        self.disjunct.constraints.push(Constraint::AbEq(lhs, rhs));
    }

    pub fn expsum(&mut self, terms: Vec<ExpSumTerm>, rhs: i64) {
        self.disjunct
            .constraints
            .push(Constraint::ExpSumEq { terms, rhs });
    }

    pub fn finish(self) -> Instance {
        Instance::new(self.p, self.variables, vec![self.disjunct])
            .expect("compiled instances are well formed")
    }
}
