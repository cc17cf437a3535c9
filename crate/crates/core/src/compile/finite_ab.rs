use crate::abel::abelianize;
use crate::error::{Error, Result};
use crate::ir::{Atom, Constraint, Disjunct, Equation, FreshNames, GroupTerm, Instance};

/// Replaces every `ab` constraint by an equation `Z = V`, where `V` is the
/// variable part of `lhs rhs^-1`, and the coset constraint `Z ∈ α G'` with
/// `α` cancelling the constant part.
pub fn reduce_finite_ab(inst: &Instance) -> Result<Instance> {
    let p = &inst.presentation;
    if !p.all_finite() {
        return Err(Error::InfiniteAbelianisation);
    }
    let mut names = FreshNames::new(inst);
    let mut variables = inst.variables.clone();
    let mut disjuncts = Vec::new();
    for d in &inst.disjuncts {
        let mut out = Disjunct {
            equations: d.equations.clone(),
            constraints: Vec::new(),
        };
        for c in &d.constraints {
            let Constraint::AbEq(l, r) = c else {
                out.constraints.push(c.clone());
                continue;
            };
            let relator = l.concat(p, &r.inverse(p));
            let mut vars = GroupTerm::identity();
            let mut constant = crate::abel::AbelVector::zero(p);
            for a in relator.atoms() {
                match a {
                    Atom::Var(..) => vars.push(p, a.clone()),
                    Atom::Const(w) => constant = &constant + &abelianize(p, w),
                }
            }
            let target = -&constant;
            let raw: Vec<(usize, i64)> = (0..p.len()).map(|v| (v, target.coord(v))).collect();
            let z = names.fresh();
            variables.push(z.clone());
            out.equations.push(Equation::new(GroupTerm::var(&z), vars));
            out.constraints.push(Constraint::Coset {
                var: z,
                rep: p.normalize(&raw),
            });
        }
        disjuncts.push(out);
    }
    Instance::new(p.clone(), variables, disjuncts)
}
