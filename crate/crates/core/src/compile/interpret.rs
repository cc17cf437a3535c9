use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::ir::{is_short, Atom, Constraint, Disjunct, Equation, GroupTerm, Instance};
use crate::presentation::Presentation;

/// A disjunction of systems over the source group with named parameters;
/// `locals` are existentially quantified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub params: Vec<String>,
    pub locals: Vec<String>,
    pub disjuncts: Vec<Disjunct>,
}

impl Formula {
    pub fn new(params: &[&str], locals: &[&str], disjuncts: Vec<Disjunct>) -> Self {
        Formula {
            params: params.iter().map(|s| s.to_string()).collect(),
            locals: locals.iter().map(|s| s.to_string()).collect(),
            disjuncts,
        }
    }

    fn instantiate(&self, args: &[&str], names: &mut Names) -> Result<Vec<Disjunct>> {
        if args.len() != self.params.len() {
            return Err(Error::InvalidConstraint(format!(
                "formula expects {} arguments, got {}",
                self.params.len(),
                args.len()
            )));
        }
        let mut map: HashMap<&str, String> = HashMap::new();
        for (p, a) in self.params.iter().zip(args) {
            map.insert(p, a.to_string());
        }
        for l in &self.locals {
            map.insert(l, names.fresh());
        }
        let f = |x: &str| map.get(x).cloned().unwrap_or_else(|| x.to_string());
        Ok(self.disjuncts.iter().map(|d| d.rename(&f)).collect())
    }
}

/// Interprets a target group in a source group: a domain, the target
/// product `z = x y`, equality, the target generators and their inverses,
/// and named relations (`ab` is used for `ab` constraints).
#[derive(Clone, Debug)]
pub struct Interpretation {
    pub source: Presentation,
    pub target: Presentation,
    /// One parameter.
    pub domain: Formula,
    /// Parameters `z, x, y` for `z = x y`.
    pub product: Formula,
    /// Parameters `x, y`.
    pub equality: Formula,
    /// Parameter `x` for the identity of the target.
    pub identity: Formula,
    /// Per target vertex, a formula for `x = v` and one for `x = v^-1`.
    pub generators: Vec<(Formula, Formula)>,
    pub relations: BTreeMap<String, Formula>,
}

struct Names {
    taken: BTreeSet<String>,
    next: usize,
    added: Vec<String>,
}

impl Names {
    fn fresh(&mut self) -> String {
        loop {
            let x = format!("_i{}", self.next);
            self.next += 1;
            if self.taken.insert(x.clone()) {
                self.added.push(x.clone());
                return x;
            }
        }
    }
}

/// Conjunction of disjunctions, distributed into a single disjunction.
fn and_all(parts: Vec<Vec<Disjunct>>) -> Vec<Disjunct> {
    let mut acc = vec![Disjunct::default()];
    for alts in parts {
        let mut next = Vec::with_capacity(acc.len() * alts.len());
        for a in &acc {
            for b in &alts {
                next.push(a.and(b));
            }
        }
        acc = next;
    }
    acc
}

/// Rewrites a flattened instance over `i.target` into an instance over
/// `i.source` whose solutions are exactly the interpreted solutions.
pub fn rewrite_under_interpretation(i: &Interpretation, inst: &Instance) -> Result<Instance> {
    if inst.presentation != i.target {
        return Err(Error::PresentationMismatch);
    }
    let mut names = Names {
        taken: inst
            .variables
            .iter()
            .chain(i.source.names())
            .cloned()
            .collect(),
        next: 0,
        added: Vec::new(),
    };
    let tp = &i.target;
    let mut disjuncts = Vec::new();
    for d in &inst.disjuncts {
        let mut parts = Vec::new();
        for x in &inst.variables {
            parts.push(i.domain.instantiate(&[x], &mut names)?);
        }
        for e in &d.equations {
            if !is_short(e) {
                return Err(Error::NotFlattened(format!(
                    "{} = {}",
                    e.lhs.display(tp),
                    e.rhs.display(tp)
                )));
            }
            let x = e
                .lhs
                .as_var()
                .expect("short equations have a variable on the left");
            match e.rhs.atoms() {
                [Atom::Var(y, 1), Atom::Var(z, 1)] => {
                    parts.push(i.product.instantiate(&[x, y, z], &mut names)?)
                }
                [Atom::Var(y, 1)] => parts.push(i.equality.instantiate(&[x, y], &mut names)?),
                [] => parts.push(i.identity.instantiate(&[x], &mut names)?),
                [Atom::Const(h)] => constant(i, x, h, &mut names, &mut parts)?,
                _ => unreachable!("checked by is_short"),
            }
        }
        for c in &d.constraints {
            match c {
                Constraint::AbEq(l, r) => {
                    let (Some(x), Some(y)) = (l.as_var(), r.as_var()) else {
                        return Err(Error::NotFlattened(format!(
                            "ab: {} = {}",
                            l.display(tp),
                            r.display(tp)
                        )));
                    };
                    let f = i.relations.get("ab").ok_or_else(|| {
                        Error::Unsupported("the interpretation has no `ab` relation".into())
                    })?;
                    parts.push(f.instantiate(&[x, y], &mut names)?);
                }
                _ => {
                    return Err(Error::Unsupported(
                        "only `ab` constraints can be interpreted".into(),
                    ))
                }
            }
        }
        disjuncts.extend(and_all(parts));
    }
    let mut variables = inst.variables.clone();
    variables.extend(names.added);
    Instance::new(i.source.clone(), variables, disjuncts)
}

/// `x = h`: a chain of products of generator images.
fn constant(
    i: &Interpretation,
    x: &str,
    h: &crate::word::NormalWord,
    names: &mut Names,
    parts: &mut Vec<Vec<Disjunct>>,
) -> Result<()> {
    let mut letters = Vec::new();
    for s in h.syllables() {
        let (pos, neg) = i
            .generators
            .get(s.vertex)
            .ok_or_else(|| Error::UnknownVertex(i.target.name(s.vertex).to_string()))?;
        for _ in 0..s.exp.unsigned_abs() {
            letters.push(if s.exp > 0 { pos } else { neg });
        }
    }
    let n = letters.len();
    let mut acc: Option<String> = None;
    for (k, f) in letters.into_iter().enumerate() {
        let l = if n == 1 { x.to_string() } else { names.fresh() };
        parts.push(f.instantiate(&[&l], names)?);
        acc = Some(match acc {
            None => l,
            Some(prev) => {
                let t = if k + 1 == n {
                    x.to_string()
                } else {
                    names.fresh()
                };
                parts.push(i.product.instantiate(&[&t, &prev, &l], names)?);
                t
            }
        });
    }
    if acc.is_none() {
        parts.push(i.identity.instantiate(&[x], names)?);
    }
    Ok(())
}

fn sys(eqs: Vec<(GroupTerm, GroupTerm)>) -> Vec<Disjunct> {
    vec![Disjunct {
        equations: eqs.into_iter().map(|(l, r)| Equation::new(l, r)).collect(),
        constraints: Vec::new(),
    }]
}

/// The integers under addition, as the free group on one generator `t`,
/// interpreted in `⟨s⟩` for the first generator `s` of the free group `source`.
/// A source value `X` stands for `t^{|X|_s}`.
pub fn integers_in_free(source: &Presentation) -> Result<Interpretation> {
    if !source.is_free() || source.is_empty() {
        return Err(Error::InvalidTarget(
            "the source must be a nontrivial free group".into(),
        ));
    }
    let target = Presentation::free(&["t"])?;
    let p = source;
    let s = GroupTerm::constant(p.generator(0));
    let v = GroupTerm::var;
    let commutator = |x: GroupTerm| {
        let c = x
            .concat(p, &s)
            .concat(p, &x.inverse(p))
            .concat(p, &s.inverse(p));
        (c, GroupTerm::identity())
    };
    let domain = Formula::new(&["x"], &[], sys(vec![commutator(v("x"))]));
    let product = Formula::new(
        &["z", "x", "y"],
        &[],
        sys(vec![(
            v("x").concat(p, &v("y")).concat(p, &v("z").inverse(p)),
            GroupTerm::identity(),
        )]),
    );
    let equality = Formula::new(&["x", "y"], &[], sys(vec![(v("x"), v("y"))]));
    let identity = Formula::new(&["x"], &[], sys(vec![(v("x"), GroupTerm::identity())]));
    let generators = vec![(
        Formula::new(&["x"], &[], sys(vec![(v("x"), s.clone())])),
        Formula::new(&["x"], &[], sys(vec![(v("x"), s.inverse(p))])),
    )];
    let mut relations = BTreeMap::new();
    relations.insert(
        "ab".to_string(),
        Formula::new(&["x", "y"], &[], sys(vec![(v("x"), v("y"))])),
    );
    Ok(Interpretation {
        source: source.clone(),
        target,
        domain,
        product,
        equality,
        identity,
        generators,
        relations,
    })
}
