use crate::error::{Error, Result};
use crate::graph::{direct_product_decomposition, nonadjacent_weak_module_pair};
use crate::h10::{atomize, H10Atom, H10Instance};
use crate::ir::GroupTerm;
use crate::presentation::{Presentation, VertexSet};

use super::builder::Builder;
use super::{vertex_names, CompiledReduction, DecodeEntry, IntExpr, Recipe};

/// Vertices `u_1, ..., u_n` outside `s` whose stars avoid `s` and together
/// cover every vertex outside `s`, each paired with the vertices it is
/// responsible for. Chosen greedily by largest new coverage, ties by index.
pub fn star_cover(p: &Presentation, s: VertexSet) -> Result<Vec<(usize, VertexSet)>> {
    let candidates: Vec<usize> = p
        .all()
        .difference(s)
        .iter()
        .filter(|&u| p.star_of(u).intersection(s).is_empty())
        .collect();
    let mut uncovered = p.all().difference(s);
    let mut out = Vec::new();
    while !uncovered.is_empty() {
        let best = candidates
            .iter()
            .map(|&u| (p.star_of(u).intersection(uncovered).len(), u))
            .filter(|&(gain, _)| gain > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((_, u)) = best else {
            return Err(Error::InvalidTarget(format!(
                "no star cover of the complement of {}",
                s.display(p)
            )));
        };
        let part = p.star_of(u).intersection(uncovered);
        uncovered = uncovered.difference(part);
        out.push((u, part));
    }
    Ok(out)
}

struct RaagCompiler {
    b: Builder,
    s1: VertexSet,
    s2: VertexSet,
    h1: GroupTerm,
    h2: GroupTerm,
    covers: [Vec<(usize, VertexSet)>; 2],
}

impl RaagCompiler {
    fn a(x: &str) -> String {
        format!("A_{x}")
    }

    fn name(&self, v: usize) -> String {
        self.b.p.name(v).to_string()
    }

    /// `w ∈ K_S`: `ab(w) = ab(y_1 ... y_n)` with `[y_i, u_i] = 1` over the star cover of `S`.
    fn r_gadget(&mut self, which: usize, w: GroupTerm) {
        let shown = self.b.show(&w);
        let mut rhs = GroupTerm::identity();
        for (u, part) in self.covers[which].clone() {
            let y = self.b.fresh(
                "Y",
                Recipe::AbPart {
                    of: shown.clone(),
                    vertices: vertex_names(&self.b.p, part),
                },
            );
            let g = self.b.gen(u);
            self.b.commute(&self.b.var(&y), &g);
            rhs = self.b.mul(&rhs, &self.b.var(&y));
        }
        self.b.ab_eq(w, rhs);
    }

    fn set(&self, which: usize) -> VertexSet {
        [self.s1, self.s2][which]
    }

    fn h(&self, which: usize) -> GroupTerm {
        [&self.h1, &self.h2][which].clone()
    }

    /// Equal exponent sums across each module of size at least two.
    fn diagonal(&mut self, x: &str) {
        for which in 0..2 {
            let s = self.set(which);
            if s.len() < 2 {
                continue;
            }
            let h = self.h(which);
            let first = self.name(s.first().expect("modules are nonempty"));
            let d = self.b.fresh(
                "D",
                Recipe::Power {
                    base: self.b.show(&h),
                    exponent: IntExpr::ExpSum {
                        of: x.to_string(),
                        vertex: first,
                    },
                },
            );
            let dt = self.b.var(&d);
            self.b.commute(&dt, &h);
            let w = self.b.div(&self.b.var(x), &dt);
            self.r_gadget(which, w);
        }
    }

    /// `|x|_{S1} = |y|_{S2}` through `z ∈ C(h1 h2)`.
    fn cross(&mut self, x: &str, y: &str) {
        let h1h2 = self.b.mul(&self.h1, &self.h2);
        let first = self.name(self.s1.first().expect("modules are nonempty"));
        let z = self.b.fresh(
            "Z",
            Recipe::Power {
                base: self.b.show(&h1h2),
                exponent: IntExpr::ExpSum {
                    of: x.to_string(),
                    vertex: first,
                },
            },
        );
        let zt = self.b.var(&z);
        self.b.commute(&zt, &h1h2);
        let wx = self.b.div(&self.b.var(x), &zt);
        self.r_gadget(0, wx);
        let wy = self.b.div(&self.b.var(y), &zt);
        self.r_gadget(1, wy);
    }

    fn atom(&mut self, atom: &H10Atom) {
        match atom {
            H10Atom::Const { x, c } => {
                let rhs = self.h1.pow(&self.b.p, *c);
                self.b.eq(self.b.var(&Self::a(x)), rhs);
            }
            H10Atom::Add { x, y, z } => {
                let yz = self
                    .b
                    .mul(&self.b.var(&Self::a(y)), &self.b.var(&Self::a(z)));
                let w = self.b.div(&yz, &self.b.var(&Self::a(x)));
                self.r_gadget(0, w);
            }
            H10Atom::Mul { x, y, z } => {
                let (a1, a2, a3) = (Self::a(y), Self::a(z), Self::a(x));
                let bv = self.b.fresh(
                    "B",
                    Recipe::Power {
                        base: self.b.show(&self.h2),
                        exponent: IntExpr::Var(y.clone()),
                    },
                );
                self.diagonal(&bv);
                let h1b = self.b.mul(&self.h1, &self.b.var(&bv));
                let cv = self.b.fresh(
                    "C",
                    Recipe::ConjugatedPower {
                        base: self.b.show(&h1b),
                        exponent: IntExpr::Var(z.clone()),
                    },
                );
                self.diagonal(&cv);
                let x1 = self.b.fresh(
                    "X",
                    Recipe::Power {
                        base: cv.clone(),
                        exponent: IntExpr::Const(1),
                    },
                );
                let x2 = self.b.fresh(
                    "X",
                    Recipe::Power {
                        base: "1".into(),
                        exponent: IntExpr::Const(1),
                    },
                );
                let x1x2 = self.b.mul(&self.b.var(&x1), &self.b.var(&x2));
                self.b.eq(self.b.var(&cv), x1x2);
                self.b.commute(&self.b.var(&x1), &h1b);
                self.r_gadget(0, self.b.var(&x2));
                self.r_gadget(1, self.b.var(&x2));
                self.cross(&a1, &bv);
                self.r_gadget(0, self.b.var(&bv));
                let w = self.b.div(&self.b.var(&a2), &self.b.var(&cv));
                self.r_gadget(0, w);
                self.cross(&a3, &cv);
            }
        }
    }
}

/// Compiles `h` into an instance over a nonabelian right-angled Artin group.
/// A join recurses into its first nonabelian factor.
pub fn compile_h10_raag(h: &H10Instance, target: &Presentation) -> Result<CompiledReduction> {
    if !target.is_raag() {
        return Err(Error::InvalidTarget(
            "every vertex must have infinite order".into(),
        ));
    }
    let factors = direct_product_decomposition(target);
    if factors.len() > 1 {
        let factor = factors
            .iter()
            .find(|f| !target.induced(**f).is_complete())
            .ok_or(Error::AbelianTarget)?;
        let mut cr = compile_h10_raag(h, &target.induced(*factor))?;
        cr.instance = cr.instance.transport(target)?;
        return Ok(cr);
    }
    if target.is_complete() {
        return Err(Error::AbelianTarget);
    }
    let (m1, m2) = nonadjacent_weak_module_pair(target)
        .ok_or_else(|| Error::InvalidTarget("no pair of non-adjacent weak modules".into()))?;
    let b = Builder::new(target);
    let h1 = b.word(&m1.element(target));
    let h2 = b.word(&m2.element(target));
    let mut c = RaagCompiler {
        covers: [
            star_cover(target, m1.vertices)?,
            star_cover(target, m2.vertices)?,
        ],
        b,
        s1: m1.vertices,
        s2: m2.vertices,
        h1,
        h2,
    };
    let atomized = atomize(h);
    let reference = c.name(m1.vertices.first().expect("modules are nonempty"));
    let h1_shown = c.b.show(&c.h1);
    let mut decode = Vec::new();
    for x in &atomized.variables {
        let a = c.b.named(
            &RaagCompiler::a(x),
            Recipe::Power {
                base: h1_shown.clone(),
                exponent: IntExpr::Var(x.clone()),
            },
        );
        if h.variables.contains(x) {
            decode.push(DecodeEntry {
                int_var: x.clone(),
                group_var: a,
                vertex: reference.clone(),
            });
        }
    }
    for x in &atomized.variables {
        c.diagonal(&RaagCompiler::a(x));
    }
    for atom in &atomized.atoms {
        c.atom(atom);
    }
    let recipe = std::mem::take(&mut c.b.recipe);
    Ok(CompiledReduction {
        instance: c.b.finish(),
        source: h.clone(),
        atomized,
        target: "raag".into(),
        decode,
        recipe,
    })
}
