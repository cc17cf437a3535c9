use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{write_syllable, NormalWord};

/// Values of the variables of an instance.
pub type Assignment = BTreeMap<String, NormalWord>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `X^e` with `e != 0`.
    Var(String, i64),
    Const(NormalWord),
}

/// A product of variable powers and constants. Adjacent constants are
/// merged; variable atoms are kept as written so that `X X` and `X^2`
/// remain distinct terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupTerm {
    atoms: Vec<Atom>,
}

impl GroupTerm {
    pub fn identity() -> Self {
        GroupTerm::default()
    }

    pub fn var(name: impl Into<String>) -> Self {
        GroupTerm::var_pow(name, 1)
    }

    pub fn var_pow(name: impl Into<String>, exp: i64) -> Self {
        let mut t = GroupTerm::identity();
        if exp != 0 {
            t.atoms.push(Atom::Var(name.into(), exp));
        }
        t
    }

    pub fn constant(w: NormalWord) -> Self {
        let mut t = GroupTerm::identity();
        if !w.is_identity() {
            t.atoms.push(Atom::Const(w));
        }
        t
    }

    pub fn from_atoms(p: &Presentation, atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut t = GroupTerm::identity();
        for a in atoms {
            t.push(p, a);
        }
        t
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_identity(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn push(&mut self, p: &Presentation, atom: Atom) {
        match atom {
            Atom::Var(_, 0) => {}
            Atom::Var(..) => self.atoms.push(atom),
            Atom::Const(w) => {
                if w.is_identity() {
                    return;
                }
                if let Some(Atom::Const(prev)) = self.atoms.last_mut() {
                    *prev = p.mul(prev, &w);
                    if prev.is_identity() {
                        self.atoms.pop();
                    }
                } else {
                    self.atoms.push(Atom::Const(w));
                }
            }
        }
    }

    pub fn concat(&self, p: &Presentation, other: &GroupTerm) -> GroupTerm {
        let mut t = self.clone();
        for a in &other.atoms {
            t.push(p, a.clone());
        }
        t
    }

    pub fn inverse(&self, p: &Presentation) -> GroupTerm {
        GroupTerm::from_atoms(
            p,
            self.atoms.iter().rev().map(|a| match a {
                Atom::Var(x, e) => Atom::Var(x.clone(), -e),
                Atom::Const(w) => Atom::Const(p.inv(w)),
            }),
        )
    }

    pub fn pow(&self, p: &Presentation, n: i64) -> GroupTerm {
        if let [Atom::Var(x, e)] = self.atoms.as_slice() {
            return GroupTerm::var_pow(x.clone(), e * n);
        }
        let base = if n < 0 { self.inverse(p) } else { self.clone() };
        let mut t = GroupTerm::identity();
        for _ in 0..n.unsigned_abs() {
            t = t.concat(p, &base);
        }
        t
    }

    /// Distinct variables in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for a in &self.atoms {
            if let Atom::Var(x, _) = a {
                if !out.contains(&x.as_str()) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// The single variable when the term is exactly `X`.
    pub fn as_var(&self) -> Option<&str> {
        match self.atoms.as_slice() {
            [Atom::Var(x, 1)] => Some(x),
            _ => None,
        }
    }

    /// The constant when the term has no variables.
    pub fn as_const(&self) -> Option<NormalWord> {
        match self.atoms.as_slice() {
            [] => Some(NormalWord::identity()),
            [Atom::Const(w)] => Some(w.clone()),
            _ => None,
        }
    }

    pub fn eval(&self, p: &Presentation, asg: &Assignment) -> Result<NormalWord> {
        if let Some(x) = self.variables().into_iter().find(|x| !asg.contains_key(*x)) {
            return Err(Error::IncompleteAssignment(x.to_string()));
        }
        Ok(self
            .eval_with(p, |x| asg.get(x))
            .expect("every variable is bound"))
    }

    /// Evaluates with an arbitrary lookup; `None` if some variable is unbound.
    pub fn eval_with<'a>(
        &self,
        p: &Presentation,
        lookup: impl Fn(&str) -> Option<&'a NormalWord>,
    ) -> Option<NormalWord> {
        let mut parts = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            match a {
                Atom::Var(x, e) => parts.push(p.pow(lookup(x)?, *e)),
                Atom::Const(w) => parts.push(w.clone()),
            }
        }
        Some(p.mul_all(&parts))
    }

    /// Renames variables through `f`; constants are kept.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> GroupTerm {
        let atoms = self
            .atoms
            .iter()
            .map(|a| match a {
                Atom::Var(x, e) => Atom::Var(f(x), *e),
                c => c.clone(),
            })
            .collect();
        GroupTerm { atoms }
    }

    /// The same term with constants rewritten over `target` by vertex name.
    pub fn transport(&self, p: &Presentation, target: &Presentation) -> Result<GroupTerm> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            atoms.push(match a {
                Atom::Const(w) => Atom::Const(p.transport(w, target)?),
                v => v.clone(),
            });
        }
        Ok(GroupTerm { atoms })
    }

    pub fn display<'a>(&'a self, p: &'a Presentation) -> DisplayTerm<'a> {
        DisplayTerm { term: self, p }
    }
}

pub struct DisplayTerm<'a> {
    term: &'a GroupTerm,
    p: &'a Presentation,
}

impl fmt::Display for DisplayTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.term.atoms.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !std::mem::take(&mut first) {
                f.write_str(" ")?;
            }
            Ok::<_, fmt::Error>(())
        };
        for a in &self.term.atoms {
            match a {
                Atom::Var(x, e) => {
                    sep(f)?;
                    write_syllable(f, x, *e)?;
                }
                Atom::Const(w) => {
                    for s in w.syllables() {
                        sep(f)?;
                        write_syllable(f, self.p.name(s.vertex), s.exp)?;
                    }
                }
            }
        }
        Ok(())
    }
}
