//! The abelian shadow: the linear system over `G^ab` obtained by applying
//! `ab` to every equation and constraint of a disjunct.

use num_bigint::BigInt;

use crate::abel::abelianize;
use crate::linear::Equation as LinEq;
use crate::presentation::{Order, Presentation};
use crate::LinearSystem;

use super::instance::{Constraint, Disjunct, Instance};
use super::term::{Atom, GroupTerm};

/// Name of the unknown standing for the `v`-coordinate of `ab(X)`.
pub fn coordinate(p: &Presentation, var: &str, v: usize) -> String {
    format!("{var}.{}", p.name(v))
}

fn add(coeffs: &mut Vec<(i64, String)>, c: i64, name: String) {
    match coeffs.iter_mut().find(|(_, n)| *n == name) {
        Some(entry) => entry.0 += c,
        None => coeffs.push((c, name)),
    }
}

fn push(sys: &mut LinearSystem, p: &Presentation, v: usize, coeffs: Vec<(i64, String)>, rhs: i64) {
    let coeffs: Vec<(BigInt, String)> = coeffs
        .into_iter()
        .filter(|(c, _)| *c != 0)
        .map(|(c, n)| (BigInt::from(c), n))
        .collect();
    let eq = match p.order(v) {
        Order::Infinite => LinEq::new(coeffs, rhs.into()),
        Order::Finite(k) => LinEq::congruence(coeffs, rhs.into(), BigInt::from(k)),
    };
    let trivial = eq.coeffs.is_empty() && eq.holds(&Default::default());
    if !trivial {
        sys.push(eq);
    }
}

/// `ab(lhs) = ab(rhs)`, one row per vertex.
fn ab_rows(sys: &mut LinearSystem, p: &Presentation, lhs: &GroupTerm, rhs: &GroupTerm) {
    let relator = lhs.concat(p, &rhs.inverse(p));
    let mut constant = vec![0i64; p.len()];
    let mut vars: Vec<(i64, &str)> = Vec::new();
    for a in relator.atoms() {
        match a {
            Atom::Var(x, e) => vars.push((*e, x)),
            Atom::Const(w) => {
                let ab = abelianize(p, w);
                for (v, c) in constant.iter_mut().enumerate() {
                    *c += ab.coord(v);
                }
            }
        }
    }
    for (v, c) in constant.iter().enumerate() {
        let mut coeffs = Vec::new();
        for (e, x) in &vars {
            add(&mut coeffs, *e, coordinate(p, x, v));
        }
        push(sys, p, v, coeffs, -c);
    }
}

pub fn disjunct_shadow(p: &Presentation, d: &Disjunct) -> LinearSystem {
    let mut sys = LinearSystem::default();
    for e in &d.equations {
        ab_rows(&mut sys, p, &e.lhs, &e.rhs);
    }
    for c in &d.constraints {
        match c {
            Constraint::AbEq(l, r) => ab_rows(&mut sys, p, l, r),
            Constraint::ExpSumEq { terms, rhs } => {
                let mut coeffs = Vec::new();
                for t in terms {
                    add(&mut coeffs, t.coef, coordinate(p, &t.var, t.vertex));
                }
                let coeffs = coeffs
                    .into_iter()
                    .filter(|(c, _)| *c != 0)
                    .map(|(c, n)| (BigInt::from(c), n))
                    .collect();
                let eq = LinEq::new(coeffs, BigInt::from(*rhs));
                if !(eq.coeffs.is_empty() && eq.holds(&Default::default())) {
                    sys.push(eq);
                }
            }
            Constraint::LengthEq { .. } => {}
            Constraint::Coset { var, rep } => {
                ab_rows(
                    &mut sys,
                    p,
                    &GroupTerm::var(var),
                    &GroupTerm::constant(rep.clone()),
                );
            }
        }
    }
    sys
}

/// One linear system per disjunct; an unsatisfiable system rules the disjunct out.
pub fn abelian_shadow(inst: &Instance) -> Vec<LinearSystem> {
    inst.disjuncts
        .iter()
        .map(|d| disjunct_shadow(&inst.presentation, d))
        .collect()
}
