use std::collections::BTreeSet;

use crate::abel::{abelianize, check_primitive};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::NormalWord;

use super::term::{Assignment, Atom, GroupTerm};

/// `lhs = rhs` in the group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: GroupTerm,
    pub rhs: GroupTerm,
}

impl Equation {
    pub fn new(lhs: GroupTerm, rhs: GroupTerm) -> Self {
        Equation { lhs, rhs }
    }

    /// `term = 1`.
    pub fn trivial(term: GroupTerm) -> Self {
        Equation::new(term, GroupTerm::identity())
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut vars = self.lhs.variables();
        for x in self.rhs.variables() {
            if !vars.contains(&x) {
                vars.push(x);
            }
        }
        vars
    }

    /// `lhs rhs^-1`, which the equation sets equal to the identity.
    pub fn as_relator(&self, p: &Presentation) -> GroupTerm {
        self.lhs.concat(p, &self.rhs.inverse(p))
    }

    pub fn holds(&self, p: &Presentation, asg: &Assignment) -> Result<bool> {
        Ok(self.lhs.eval(p, asg)? == self.rhs.eval(p, asg)?)
    }
}

/// `coef * |var|_vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpSumTerm {
    pub coef: i64,
    pub var: String,
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `ab(lhs) = ab(rhs)`.
    AbEq(GroupTerm, GroupTerm),
    /// `∑ coef |var|_vertex = rhs`.
    ExpSumEq { terms: Vec<ExpSumTerm>, rhs: i64 },
    /// `∑ coef |var| = rhs` for geodesic length.
    LengthEq { terms: Vec<(i64, String)>, rhs: i64 },
    /// `var ∈ rep G'`.
    Coset { var: String, rep: NormalWord },
}

impl Constraint {
    pub fn variables(&self) -> Vec<&str> {
        let all: Vec<&str> = match self {
            Constraint::AbEq(l, r) => l.variables().into_iter().chain(r.variables()).collect(),
            Constraint::ExpSumEq { terms, .. } => terms.iter().map(|t| t.var.as_str()).collect(),
            Constraint::LengthEq { terms, .. } => terms.iter().map(|(_, x)| x.as_str()).collect(),
            Constraint::Coset { var, .. } => vec![var.as_str()],
        };
        let mut out: Vec<&str> = Vec::new();
        for x in all {
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    pub fn holds(&self, p: &Presentation, asg: &Assignment) -> Result<bool> {
        let get = |x: &str| {
            asg.get(x)
                .ok_or_else(|| Error::IncompleteAssignment(x.to_string()))
        };
        Ok(match self {
            Constraint::AbEq(l, r) => {
                abelianize(p, &l.eval(p, asg)?) == abelianize(p, &r.eval(p, asg)?)
            }
            Constraint::ExpSumEq { terms, rhs } => {
                let mut total = 0i64;
                for t in terms {
                    total += t.coef * crate::abel::exponent_sum(p, get(&t.var)?, t.vertex)?;
                }
                total == *rhs
            }
            Constraint::LengthEq { terms, rhs } => {
                let mut total = 0i64;
                for (c, x) in terms {
                    total += c * p.geodesic_length(get(x)?) as i64;
                }
                total == *rhs
            }
            Constraint::Coset { var, rep } => abelianize(p, get(var)?) == abelianize(p, rep),
        })
    }
}

impl Constraint {
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Constraint {
        match self {
            Constraint::AbEq(l, r) => Constraint::AbEq(l.rename(f), r.rename(f)),
            Constraint::ExpSumEq { terms, rhs } => Constraint::ExpSumEq {
                terms: terms
                    .iter()
                    .map(|t| ExpSumTerm {
                        coef: t.coef,
                        var: f(&t.var),
                        vertex: t.vertex,
                    })
                    .collect(),
                rhs: *rhs,
            },
            Constraint::LengthEq { terms, rhs } => Constraint::LengthEq {
                terms: terms.iter().map(|(c, x)| (*c, f(x))).collect(),
                rhs: *rhs,
            },
            Constraint::Coset { var, rep } => Constraint::Coset {
                var: f(var),
                rep: rep.clone(),
            },
        }
    }

    fn transport(&self, p: &Presentation, target: &Presentation) -> Result<Constraint> {
        Ok(match self {
            Constraint::AbEq(l, r) => {
                Constraint::AbEq(l.transport(p, target)?, r.transport(p, target)?)
            }
            Constraint::ExpSumEq { terms, rhs } => Constraint::ExpSumEq {
                terms: terms
                    .iter()
                    .map(|t| {
                        Ok(ExpSumTerm {
                            coef: t.coef,
                            var: t.var.clone(),
                            vertex: target.vertex(p.name(t.vertex))?,
                        })
                    })
                    .collect::<Result<_>>()?,
                rhs: *rhs,
            },
            Constraint::LengthEq { .. } => self.clone(),
            Constraint::Coset { var, rep } => Constraint::Coset {
                var: var.clone(),
                rep: p.transport(rep, target)?,
            },
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Disjunct {
    pub equations: Vec<Equation>,
    pub constraints: Vec<Constraint>,
}

impl Disjunct {
    pub fn is_empty(&self) -> bool {
        self.equations.is_empty() && self.constraints.is_empty()
    }

    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Disjunct {
        Disjunct {
            equations: self
                .equations
                .iter()
                .map(|e| Equation::new(e.lhs.rename(f), e.rhs.rename(f)))
                .collect(),
            constraints: self.constraints.iter().map(|c| c.rename(f)).collect(),
        }
    }

    /// Conjunction of two systems.
    pub fn and(&self, other: &Disjunct) -> Disjunct {
        let mut out = self.clone();
        out.equations.extend(other.equations.iter().cloned());
        out.constraints.extend(other.constraints.iter().cloned());
        out
    }
}

/// A disjunction of systems of equations with constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub presentation: Presentation,
    pub variables: Vec<String>,
    pub disjuncts: Vec<Disjunct>,
}

/// Which items of one disjunct hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjunctReport {
    pub equations: Vec<bool>,
    pub constraints: Vec<bool>,
}

impl DisjunctReport {
    pub fn holds(&self) -> bool {
        self.equations.iter().chain(&self.constraints).all(|&b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    pub disjuncts: Vec<DisjunctReport>,
}

impl EvalReport {
    /// Index of the first satisfied disjunct.
    pub fn satisfied_disjunct(&self) -> Option<usize> {
        self.disjuncts.iter().position(DisjunctReport::holds)
    }

    pub fn is_satisfied(&self) -> bool {
        self.satisfied_disjunct().is_some()
    }
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(
        presentation: Presentation,
        variables: Vec<String>,
        disjuncts: Vec<Disjunct>,
    ) -> Result<Self> {
        let inst = Instance {
            presentation,
            variables,
            disjuncts,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.presentation;
        let declared: BTreeSet<&str> = self.variables.iter().map(String::as_str).collect();
        if declared.len() != self.variables.len() {
            return Err(Error::InvalidConstraint(
                "duplicate variable declaration".into(),
            ));
        }
        for x in &self.variables {
            if p.try_vertex(x).is_some() {
                return Err(Error::InvalidConstraint(format!(
                    "`{x}` is both a variable and a vertex"
                )));
            }
        }
        if self.disjuncts.is_empty() {
            return Err(Error::InvalidConstraint(
                "an instance needs at least one disjunct".into(),
            ));
        }
        for d in &self.disjuncts {
            let mut used: Vec<&str> = Vec::new();
            for e in &d.equations {
                used.extend(e.variables());
                for t in [&e.lhs, &e.rhs] {
                    check_term(p, t)?;
                }
            }
            for c in &d.constraints {
                used.extend(c.variables());
                match c {
                    Constraint::AbEq(l, r) => {
                        check_term(p, l)?;
                        check_term(p, r)?;
                    }
                    Constraint::ExpSumEq { terms, .. } => {
                        for t in terms {
                            if t.vertex >= p.len() {
                                return Err(Error::PresentationMismatch);
                            }
                            check_primitive(p, t.vertex)?;
                        }
                    }
                    Constraint::LengthEq { .. } => {}
                    Constraint::Coset { rep, .. } => {
                        p.check(rep)?;
                        if !p.all_finite() {
                            return Err(Error::InvalidConstraint(
                                "coset constraints need a finite abelianisation".into(),
                            ));
                        }
                    }
                }
            }
            if let Some(x) = used.into_iter().find(|x| !declared.contains(x)) {
                return Err(Error::UnknownVariable(x.to_string()));
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, asg: &Assignment) -> Result<EvalReport> {
        if let Some(x) = self.variables.iter().find(|x| !asg.contains_key(*x)) {
            return Err(Error::IncompleteAssignment(x.clone()));
        }
        let p = &self.presentation;
        let disjuncts = self
            .disjuncts
            .iter()
            .map(|d| {
                Ok(DisjunctReport {
                    equations: d
                        .equations
                        .iter()
                        .map(|e| e.holds(p, asg))
                        .collect::<Result<_>>()?,
                    constraints: d
                        .constraints
                        .iter()
                        .map(|c| c.holds(p, asg))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(EvalReport { disjuncts })
    }

    /// Whether `asg` satisfies some disjunct.
    pub fn is_satisfied_by(&self, asg: &Assignment) -> Result<bool> {
        Ok(self.evaluate(asg)?.is_satisfied())
    }

    /// The same instance over `target`, which must contain every vertex
    /// used here under the same name.
    pub fn transport(&self, target: &Presentation) -> Result<Instance> {
        let p = &self.presentation;
        let disjuncts = self
            .disjuncts
            .iter()
            .map(|d| {
                Ok(Disjunct {
                    equations: d
                        .equations
                        .iter()
                        .map(|e| {
                            Ok(Equation::new(
                                e.lhs.transport(p, target)?,
                                e.rhs.transport(p, target)?,
                            ))
                        })
                        .collect::<Result<_>>()?,
                    constraints: d
                        .constraints
                        .iter()
                        .map(|c| c.transport(p, target))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Instance::new(target.clone(), self.variables.clone(), disjuncts)
    }

    /// The assignment sending every variable to the identity.
    pub fn identity_assignment(&self) -> Assignment {
        self.variables
            .iter()
            .map(|x| (x.clone(), NormalWord::identity()))
            .collect()
    }
}

fn check_term(p: &Presentation, t: &GroupTerm) -> Result<()> {
    for a in t.atoms() {
        if let Atom::Const(w) = a {
            p.check(w)?;
        }
    }
    Ok(())
}
