//! Compilers from integer polynomial equations into instances over free
//! groups and right-angled Artin groups, the coset reduction for finite
//! abelianisations, and the rewriting engine for PE-interpretations.
//!
//! A [`CompiledReduction`] remembers, for every group variable it creates,
//! how to build its value from an integer solution ([`Recipe`]), and which
//! exponent sum reads each integer back ([`DecodeEntry`]). Both travel in a
//! JSON [`Sidecar`] next to the printed instance.

mod builder;
mod finite_ab;
mod free;
mod interpret;
mod raag;

use serde::{Deserialize, Serialize};

use crate::abel::exponent_sum;
use crate::conjugacy::cyclically_reduce;
use crate::error::{Error, Result};
use crate::h10::{atomize, AtomizedH10, H10Instance, IntAssignment};
use crate::ir::{parse_term, Assignment, Instance};
use crate::presentation::Presentation;
use crate::word::NormalWord;

pub use finite_ab::reduce_finite_ab;
pub use free::compile_h10_free;
pub use interpret::{integers_in_free, rewrite_under_interpretation, Formula, Interpretation};
pub use raag::{compile_h10_raag, star_cover};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Exponent-sum conditions become commutation equations and `ab` constraints.
    PureAb,
    /// Exponent-sum conditions stay as `expsum` constraints.
    NativeExpsum,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure-ab" => Ok(Mode::PureAb),
            "native-expsum" => Ok(Mode::NativeExpsum),
            _ => Err(Error::Unsupported(format!("unknown mode `{s}`"))),
        }
    }
}

/// An integer built from the integer solution and earlier group values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntExpr {
    Const(i64),
    /// Value of an (atomized) integer variable.
    Var(String),
    /// `|of|_vertex` for a term over earlier group variables.
    ExpSum {
        of: String,
        vertex: String,
    },
}

/// How to build the value of one group variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// `base^exponent`.
    Power { base: String, exponent: IntExpr },
    /// `h core^exponent h^-1`, where `h^-1 base h = core` is the cyclic reduction of `base`.
    ConjugatedPower { base: String, exponent: IntExpr },
    /// `∏ v^{ab(of)_v}` over the listed vertices, in order.
    AbPart { of: String, vertices: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeEntry {
    pub var: String,
    #[serde(flatten)]
    pub recipe: Recipe,
}

/// The integer `int_var` is `|group_var|_vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeEntry {
    pub int_var: String,
    pub group_var: String,
    pub vertex: String,
}

/// Everything besides the instance needed to build witnesses and decode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub target: String,
    pub source: String,
    pub decode: Vec<DecodeEntry>,
    pub recipe: Vec<RecipeEntry>,
}

#[derive(Clone, Debug)]
pub struct CompiledReduction {
    pub instance: Instance,
    pub source: H10Instance,
    pub atomized: AtomizedH10,
    /// `free/pure-ab`, `free/native-expsum` or `raag`.
    pub target: String,
    pub decode: Vec<DecodeEntry>,
    pub recipe: Vec<RecipeEntry>,
}

impl CompiledReduction {
    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            target: self.target.clone(),
            source: self.source.to_string(),
            decode: self.decode.clone(),
            recipe: self.recipe.clone(),
        }
    }

    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(&self.sidecar()).expect("sidecar serializes")
    }

    /// Reassembles a reduction from a printed instance and its sidecar.
    pub fn from_parts(instance: Instance, sidecar: Sidecar) -> Result<Self> {
        let source = H10Instance::parse(&sidecar.source)?;
        let atomized = atomize(&source);
        let cr = CompiledReduction {
            instance,
            atomized,
            source,
            target: sidecar.target,
            decode: sidecar.decode,
            recipe: sidecar.recipe,
        };
        cr.check()?;
        Ok(cr)
    }

    pub fn from_json(instance: Instance, json: &str) -> Result<Self> {
        let sidecar: Sidecar = serde_json::from_str(json)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        Self::from_parts(instance, sidecar)
    }

    fn check(&self) -> Result<()> {
        let p = &self.instance.presentation;
        for x in &self.source.variables {
            if !self.decode.iter().any(|d| &d.int_var == x) {
                return Err(Error::InvalidConstraint(format!(
                    "no decode entry for `{x}`"
                )));
            }
        }
        for d in &self.decode {
            p.vertex(&d.vertex)?;
            if !self.instance.variables.contains(&d.group_var) {
                return Err(Error::UnknownVariable(d.group_var.clone()));
            }
        }
        for x in &self.instance.variables {
            if !self.recipe.iter().any(|r| &r.var == x) {
                return Err(Error::InvalidConstraint(format!("no recipe for `{x}`")));
            }
        }
        Ok(())
    }

    fn term_value(&self, text: &str, asg: &Assignment) -> Result<NormalWord> {
        let p = &self.instance.presentation;
        parse_term(p, &self.instance.variables, text)?.eval(p, asg)
    }

    fn int_value(&self, e: &IntExpr, ints: &IntAssignment, asg: &Assignment) -> Result<i64> {
        match e {
            IntExpr::Const(c) => Ok(*c),
            IntExpr::Var(x) => ints
                .get(x)
                .copied()
                .ok_or_else(|| Error::UnknownVariable(x.clone())),
            IntExpr::ExpSum { of, vertex } => {
                let p = &self.instance.presentation;
                exponent_sum(p, &self.term_value(of, asg)?, p.vertex(vertex)?)
            }
        }
    }

    fn build(&self, r: &Recipe, ints: &IntAssignment, asg: &Assignment) -> Result<NormalWord> {
        let p = &self.instance.presentation;
        Ok(match r {
            Recipe::Power { base, exponent } => p.pow(
                &self.term_value(base, asg)?,
                self.int_value(exponent, ints, asg)?,
            ),
            Recipe::ConjugatedPower { base, exponent } => {
                let (core, h) = cyclically_reduce(p, &self.term_value(base, asg)?);
                let n = self.int_value(exponent, ints, asg)?;
                p.mul_all([&h, &p.pow(&core, n), &p.inv(&h)])
            }
            Recipe::AbPart { of, vertices } => {
                let ab = crate::abel::abelianize(p, &self.term_value(of, asg)?);
                let mut raw = Vec::new();
                for name in vertices {
                    let v = p.vertex(name)?;
                    raw.push((v, ab.coord(v)));
                }
                p.normalize(&raw)
            }
        })
    }
}

/// Builds a solution of the compiled instance from an integer solution of the source.
pub fn witness_h10(cr: &CompiledReduction, int_solution: &IntAssignment) -> Result<Assignment> {
    if !cr.source.holds(int_solution)? {
        return Err(Error::NotAnIntegerSolution(format!(
            "{} does not solve the source equations",
            show_ints(&cr.source.variables, int_solution)
        )));
    }
    let ints = cr.atomized.extend(int_solution)?;
    let mut asg = Assignment::new();
    for entry in &cr.recipe {
        let value = cr.build(&entry.recipe, &ints, &asg)?;
        asg.insert(entry.var.clone(), value);
    }
    Ok(asg)
}

/// Reads the integer solution back from a solution of the compiled instance.
pub fn decode_solution(cr: &CompiledReduction, asg: &Assignment) -> Result<IntAssignment> {
    if !cr.instance.is_satisfied_by(asg)? {
        return Err(Error::NotASolution);
    }
    let p = &cr.instance.presentation;
    let mut out = IntAssignment::new();
    for d in &cr.decode {
        let value = asg
            .get(&d.group_var)
            .ok_or_else(|| Error::IncompleteAssignment(d.group_var.clone()))?;
        out.insert(
            d.int_var.clone(),
            exponent_sum(p, value, p.vertex(&d.vertex)?)?,
        );
    }
    if !cr.source.holds(&out)? {
        return Err(Error::DecodeInconsistency(format!(
            "decoded {} does not solve the source equations",
            show_ints(&cr.source.variables, &out)
        )));
    }
    Ok(out)
}

/// `(2,3,6)` in the order of `vars`.
pub fn show_ints(vars: &[String], values: &IntAssignment) -> String {
    let parts: Vec<String> = vars
        .iter()
        .map(|x| values.get(x).map_or("?".to_string(), i64::to_string))
        .collect();
    format!("({})", parts.join(","))
}

pub(crate) fn vertex_names(p: &Presentation, set: crate::presentation::VertexSet) -> Vec<String> {
    set.iter().map(|v| p.name(v).to_string()).collect()
}
