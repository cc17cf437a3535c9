//! The instance language: disjunctions of systems of group equations with
//! abelian, exponent-sum, length and coset constraints.

mod flatten;
mod instance;
mod shadow;
mod term;
mod text;

pub use flatten::{flatten, is_flattened, is_short, FreshNames};
pub use instance::{
    Constraint, Disjunct, DisjunctReport, Equation, EvalReport, ExpSumTerm, Instance,
};
pub use shadow::{abelian_shadow, coordinate, disjunct_shadow};
pub use term::{Assignment, Atom, GroupTerm};
pub use text::{parse_instance, parse_instance_in, parse_instance_with, parse_term};
