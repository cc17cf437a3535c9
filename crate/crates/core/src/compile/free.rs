use crate::error::{Error, Result};
use crate::h10::{atomize, H10Atom, H10Instance};
use crate::ir::{ExpSumTerm, GroupTerm};
use crate::presentation::Presentation;

use super::builder::Builder;
use super::{CompiledReduction, DecodeEntry, IntExpr, Mode, Recipe};

struct FreeCompiler {
    b: Builder,
    mode: Mode,
}

impl FreeCompiler {
    const S1: usize = 0;
    const S2: usize = 1;

    fn a(x: &str) -> String {
        format!("A_{x}")
    }

    /// `|w|_s = 0`: `ab(w) = ab(z_1 ... z_n)` with `[z_j, s_j] = 1` for `j != s`.
    fn k_membership(&mut self, s: usize, w: GroupTerm) {
        let shown = self.b.show(&w);
        let mut rhs = GroupTerm::identity();
        for j in (0..self.b.p.len()).filter(|&j| j != s) {
            let z = self.b.fresh(
                "K",
                Recipe::AbPart {
                    of: shown.clone(),
                    vertices: vec![self.b.p.name(j).to_string()],
                },
            );
            let g = self.b.gen(j);
            self.b.commute(&self.b.var(&z), &g);
            rhs = self.b.mul(&rhs, &self.b.var(&z));
        }
        self.b.ab_eq(w, rhs);
    }

    /// `|x|_s = |y|_t`.
    fn expsum_equal(&mut self, x: &str, s: usize, y: &str, t: usize) {
        match self.mode {
            Mode::NativeExpsum => self.b.expsum(
                vec![
                    ExpSumTerm {
                        coef: 1,
                        var: x.to_string(),
                        vertex: s,
                    },
                    ExpSumTerm {
                        coef: -1,
                        var: y.to_string(),
                        vertex: t,
                    },
                ],
                0,
            ),
            Mode::PureAb if s == t => {
                let w = self.b.div(&self.b.var(x), &self.b.var(y));
                self.k_membership(s, w);
            }
            Mode::PureAb => {
                let st = self.b.mul(&self.b.gen(s), &self.b.gen(t));
                let z = self.b.fresh(
                    "Z",
                    Recipe::Power {
                        base: self.b.show(&st),
                        exponent: IntExpr::ExpSum {
                            of: x.to_string(),
                            vertex: self.b.p.name(s).to_string(),
                        },
                    },
                );
                let zt = self.b.var(&z);
                self.b.commute(&zt, &st);
                let wx = self.b.div(&self.b.var(x), &zt);
                self.k_membership(s, wx);
                let wy = self.b.div(&self.b.var(y), &zt);
                self.k_membership(t, wy);
            }
        }
    }

    fn atom(&mut self, atom: &H10Atom) {
        let s1 = self.b.gen(Self::S1);
        match atom {
            H10Atom::Const { x, c } => {
                let rhs = s1.pow(&self.b.p, *c);
                self.b.eq(self.b.var(&Self::a(x)), rhs);
            }
            H10Atom::Add { x, y, z } => {
                let yz = self
                    .b
                    .mul(&self.b.var(&Self::a(y)), &self.b.var(&Self::a(z)));
                let w = self.b.div(&yz, &self.b.var(&Self::a(x)));
                self.k_membership(Self::S1, w);
            }
            H10Atom::Mul { x, y, z } => {
                let (a1, a2, a3) = (Self::a(y), Self::a(z), Self::a(x));
                let s2 = self.b.gen(Self::S2);
                let bv = self.b.fresh(
                    "B",
                    Recipe::Power {
                        base: self.b.show(&s2),
                        exponent: IntExpr::Var(y.clone()),
                    },
                );
                let s1b = self.b.mul(&s1, &self.b.var(&bv));
                let cv = self.b.fresh(
                    "C",
                    Recipe::Power {
                        base: self.b.show(&s1b),
                        exponent: IntExpr::Var(z.clone()),
                    },
                );
                self.b.commute(&self.b.var(&bv), &s2);
                self.b.commute(&self.b.var(&cv), &s1b);
                self.expsum_equal(&a1, Self::S1, &bv, Self::S2);
                self.expsum_equal(&a2, Self::S1, &cv, Self::S1);
                self.expsum_equal(&a3, Self::S1, &cv, Self::S2);
            }
        }
    }
}

/// Compiles `h` into a single-disjunct instance over the free group `target`,
/// with `s1`, `s2` its first two generators.
pub fn compile_h10_free(
    h: &H10Instance,
    target: &Presentation,
    mode: Mode,
) -> Result<CompiledReduction> {
    if !target.is_free() {
        return Err(Error::InvalidTarget(
            "the target presentation is not a free group".into(),
        ));
    }
    if target.len() < 2 {
        return Err(Error::RankTooSmall);
    }
    let atomized = atomize(h);
    let mut c = FreeCompiler {
        b: Builder::new(target),
        mode,
    };
    let s1 = c.b.gen(FreeCompiler::S1);
    let s1_shown = c.b.show(&s1);
    let mut decode = Vec::new();
    for x in &atomized.variables {
        let a = c.b.named(
            &FreeCompiler::a(x),
            Recipe::Power {
                base: s1_shown.clone(),
                exponent: IntExpr::Var(x.clone()),
            },
        );
        debug_assert_eq!(a, FreeCompiler::a(x));
        if h.variables.contains(x) {
            decode.push(DecodeEntry {
                int_var: x.clone(),
                group_var: a.clone(),
                vertex: target.name(FreeCompiler::S1).to_string(),
            });
        }
    }
    for x in &atomized.variables {
        let a = c.b.var(&FreeCompiler::a(x));
        c.b.commute(&a, &s1);
    }
    for atom in &atomized.atoms {
        c.atom(atom);
    }
    let recipe = std::mem::take(&mut c.b.recipe);
    Ok(CompiledReduction {
        instance: c.b.finish(),
        source: h.clone(),
        atomized,
        target: match mode {
            Mode::PureAb => "free/pure-ab".into(),
            Mode::NativeExpsum => "free/native-expsum".into(),
        },
        decode,
        recipe,
    })
}
