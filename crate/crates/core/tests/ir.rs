mod common;

use std::path::PathBuf;

use abeq_core::ir::{
    abelian_shadow, flatten, is_flattened, is_short, parse_instance, parse_instance_in, Assignment,
    Atom, Constraint, GroupTerm, Instance,
};
use abeq_core::oracle::{naive_solutions, projected_solutions, raw_key};
use abeq_core::{Error, Presentation};
use common::{f2, gamma1, pentagon};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn load(name: &str) -> Instance {
    let path = data().join(name);
    parse_instance_in(&std::fs::read_to_string(&path).unwrap(), &data()).unwrap()
}

fn asg(p: &Presentation, pairs: &[(&str, &str)]) -> Assignment {
    pairs
        .iter()
        .map(|(x, w)| (x.to_string(), p.parse_word(w).unwrap()))
        .collect()
}

#[test]
fn parses_the_square_root_instance() {
    let inst = load("x1sq.inst");
    assert_eq!(inst.disjuncts.len(), 1);
    assert_eq!(inst.disjuncts[0].equations.len(), 1);
    assert!(inst.disjuncts[0].constraints.is_empty());
}

#[test]
fn ab_lines_with_multiples() {
    let inst = load("item3.inst");
    let Constraint::AbEq(l, r) = &inst.disjuncts[0].constraints[0] else {
        panic!("expected an ab constraint");
    };
    assert_eq!(*l, GroupTerm::var("X"));
    assert_eq!(*r, GroupTerm::var_pow("Y", 3));
}

#[test]
fn malformed_instances_report_positions() {
    let empty = "vertex a\nvertex b\nvars X\ndisjunct {\n}\n";
    assert!(matches!(parse_instance(empty), Err(Error::Parse { .. })));
    let unknown = "vertex a\nvars X\ndisjunct {\n  eq X q = 1\n}\n";
    assert!(parse_instance(unknown).is_err());
    let undeclared = "vertex a\nvars X\ndisjunct {\n  eq Y a = 1\n}\n";
    assert!(parse_instance(undeclared).is_err());
}

#[test]
fn printed_instances_parse_back() {
    for name in [
        "x1sq.inst",
        "item1.inst",
        "item2.inst",
        "item3.inst",
        "pentagon_ab.inst",
    ] {
        let inst = load(name);
        let again = parse_instance(&inst.to_text()).unwrap();
        assert_eq!(again, inst, "{name}");
    }
    let mut rng = StdRng::seed_from_u64(3);
    for p in [f2(), gamma1(), pentagon()] {
        for _ in 0..50 {
            let inst = common::instance(&mut rng, &p, true);
            assert_eq!(parse_instance(&inst.to_text()).unwrap(), inst);
        }
    }
}

#[test]
fn evaluation_examples() {
    let inst = load("x1sq.inst");
    let p = &inst.presentation;
    assert!(inst.is_satisfied_by(&asg(p, &[("X1", "a b")])).unwrap());
    assert!(!inst.is_satisfied_by(&asg(p, &[("X1", "a")])).unwrap());
    assert!(matches!(
        inst.is_satisfied_by(&Assignment::new()),
        Err(Error::IncompleteAssignment(_))
    ));

    let item1 = load("item1.inst");
    let p = &item1.presentation;
    let report = item1
        .evaluate(&asg(p, &[("X", "b^-1 a^-1"), ("Y", "1")]))
        .unwrap();
    assert!(report.is_satisfied());
    assert_eq!(report.satisfied_disjunct(), Some(0));
}

#[test]
fn shadow_examples() {
    for name in ["item2.inst", "item3.inst"] {
        let systems = abelian_shadow(&load(name));
        assert!(systems.iter().all(|s| !s.solve().is_sat()), "{name}");
    }
    let trivial =
        parse_instance("vertex a\nvertex b\nvars X\ndisjunct {\n  eq X = 1\n}\n").unwrap();
    let systems = abelian_shadow(&trivial);
    assert_eq!(systems.len(), 1);
    assert!(systems[0].solve().is_sat());
    let unsat =
        parse_instance("vertex a\nvertex b\nvars X\ndisjunct {\n  eq X^2 a = 1\n}\n").unwrap();
    assert!(!abelian_shadow(&unsat)[0].solve().is_sat());
}

fn same_projection(before: &Instance, after: &Instance, bound: usize) {
    let keep = before.variables.len();
    assert_eq!(&after.variables[..keep], &before.variables[..]);
    let direct = naive_solutions(before, bound).unwrap();
    let projected = projected_solutions(after, keep, bound).unwrap();
    assert_eq!(direct, projected, "{before}\n{after}");
}

#[test]
fn flatten_examples() {
    let xyz =
        parse_instance("vertex a\nvertex b\nvars X Y Z\ndisjunct {\n  eq X Y Z = 1\n}\n").unwrap();
    let flat = flatten(&xyz);
    assert!(is_flattened(&flat));
    assert!(flat.variables.len() > 3);
    assert!(flat.variables[3..].iter().all(|x| x.starts_with("_f")));
    same_projection(&xyz, &flat, 1);

    let short =
        parse_instance("vertex a\nvertex b\nvars X Y\ndisjunct {\n  eq X = Y\n}\n").unwrap();
    assert!(is_short(&short.disjuncts[0].equations[0]));
    assert_eq!(flatten(&short), short);

    let ab =
        parse_instance("vertex a\nvertex b\nvars X Y Z\ndisjunct {\n  ab: X Y = Z\n}\n").unwrap();
    let flat = flatten(&ab);
    assert!(is_flattened(&flat));
    let Constraint::AbEq(l, r) = &flat.disjuncts[0].constraints[0] else {
        panic!("expected an ab constraint");
    };
    assert!(l.as_var().is_some_and(|w| w.starts_with("_f")));
    assert_eq!(r.as_var(), Some("Z"));
    same_projection(&ab, &flat, 1);
}

#[test]
fn flattening_preserves_projected_solutions() {
    let mut rng = StdRng::seed_from_u64(21);
    for p in [f2(), gamma1(), pentagon()] {
        for _ in 0..10 {
            let with_ab = rng.gen_bool(0.5);
            let inst = common::instance(&mut rng, &p, with_ab);
            let flat = flatten(&inst);
            assert!(is_flattened(&flat));
            same_projection(&inst, &flat, 2);
        }
    }
}

#[test]
fn shadow_refutation_is_sound() {
    let mut rng = StdRng::seed_from_u64(22);
    let mut refuted = 0;
    for p in [f2(), pentagon(), common::mixed()] {
        for _ in 0..60 {
            let inst = common::instance(&mut rng, &p, true);
            if abelian_shadow(&inst).iter().all(|s| !s.solve().is_sat()) {
                refuted += 1;
                let bound = if inst.variables.len() == 1 { 4 } else { 2 };
                assert!(naive_solutions(&inst, bound).unwrap().is_empty(), "{inst}");
            }
        }
    }
    assert!(refuted > 0);
}

/// A raw spelling of `w` padded with `pad pad^-1`.
fn detour(w: &abeq_core::NormalWord, pad: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut raw = w.raw();
    raw.extend(pad.iter().copied());
    raw.extend(pad.iter().rev().map(|&(v, e)| (v, -e)));
    raw
}

/// Decides an equations-only instance by spelling every relator with
/// padded representatives and reducing it letter by letter.
fn holds_via_letters(inst: &Instance, asg: &Assignment, pad: &[(usize, i64)]) -> bool {
    let p = &inst.presentation;
    inst.disjuncts.iter().any(|d| {
        d.equations.iter().all(|e| {
            let mut raw = Vec::new();
            for atom in e.as_relator(p).atoms() {
                match atom {
                    Atom::Const(w) => raw.extend(detour(w, pad)),
                    Atom::Var(x, k) => {
                        let one = detour(&asg[x], pad);
                        for _ in 0..k.unsigned_abs() {
                            if *k > 0 {
                                raw.extend(one.iter().copied());
                            } else {
                                raw.extend(one.iter().rev().map(|&(v, e)| (v, -e)));
                            }
                        }
                    }
                }
            }
            raw_key(p, &raw) == raw_key(p, &[])
        })
    })
}

type Case = (Presentation, Vec<(usize, i64)>, Vec<(usize, i64)>, u64);

fn cases() -> impl Strategy<Value = Case> {
    prop_oneof![
        Just(f2()),
        Just(gamma1()),
        Just(pentagon()),
        Just(common::mixed())
    ]
    .prop_flat_map(|p| {
        let n = p.len();
        let w = prop::collection::vec((0..n, -2i64..=2), 0..5);
        (Just(p), w.clone(), w, any::<u64>())
    })
}

proptest! {
    #[test]
    fn evaluation_ignores_representatives((p, x, pad, seed) in cases()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let inst = common::instance(&mut rng, &p, false);
        let mut a = Assignment::new();
        for (i, v) in inst.variables.iter().enumerate() {
            let raw = if i == 0 { x.clone() } else { common::raw_word(&mut rng, &p, 3) };
            a.insert(v.clone(), p.normalize(&raw));
        }
        prop_assert_eq!(inst.is_satisfied_by(&a).unwrap(), holds_via_letters(&inst, &a, &pad));
        let padded: Assignment = a.iter().map(|(k, w)| (k.clone(), p.normalize(&detour(w, &pad)))).collect();
        prop_assert_eq!(inst.is_satisfied_by(&a).unwrap(), inst.is_satisfied_by(&padded).unwrap());
    }
}
