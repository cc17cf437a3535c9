#![allow(dead_code)]

use abeq_core::ir::{Constraint, Disjunct, Equation, GroupTerm, Instance};
use abeq_core::{NormalWord, Order, Presentation};
use rand::rngs::StdRng;
use rand::Rng;

pub fn f2() -> Presentation {
    Presentation::free(&["a", "b"]).unwrap()
}

pub fn gamma1() -> Presentation {
    Presentation::raag(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
}

pub fn gamma2() -> Presentation {
    Presentation::raag(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "c"), ("b", "c"), ("c", "d")],
    )
    .unwrap()
}

pub fn pentagon() -> Presentation {
    Presentation::racg(
        &["a", "b", "c", "d", "e"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
    )
    .unwrap()
}

/// Vertices of orders 3, infinity and 2 on a path, plus an isolated order-4 vertex.
pub fn mixed() -> Presentation {
    Presentation::new(
        &[
            ("a", Order::Finite(3)),
            ("b", Order::Infinite),
            ("c", Order::Finite(2)),
            ("d", Order::Finite(4)),
        ],
        &[("a", "b"), ("b", "c")],
    )
    .unwrap()
}

pub fn raw_word(rng: &mut StdRng, p: &Presentation, max_len: usize) -> Vec<(usize, i64)> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            (
                rng.gen_range(0..p.len()),
                if rng.gen_bool(0.5) { 1 } else { -1 },
            )
        })
        .collect()
}

pub fn word(rng: &mut StdRng, p: &Presentation, max_len: usize) -> NormalWord {
    p.normalize(&raw_word(rng, p, max_len))
}

fn term(rng: &mut StdRng, p: &Presentation, vars: &[&str]) -> GroupTerm {
    let mut t = GroupTerm::identity();
    for _ in 0..rng.gen_range(1..=3) {
        let piece = if rng.gen_bool(0.6) {
            GroupTerm::var_pow(
                vars[rng.gen_range(0..vars.len())],
                if rng.gen_bool(0.7) { 1 } else { -1 },
            )
        } else {
            GroupTerm::constant(word(rng, p, 2))
        };
        t = t.concat(p, &piece);
    }
    t
}

/// Random instance with at most two variables and constants of length at most two.
pub fn instance(rng: &mut StdRng, p: &Presentation, with_ab: bool) -> Instance {
    let nvars = rng.gen_range(1..=2);
    let names = ["X", "Y"];
    let vars = &names[..nvars];
    let mut disjuncts = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let mut d = Disjunct::default();
        for _ in 0..rng.gen_range(1..=2) {
            d.equations
                .push(Equation::new(term(rng, p, vars), term(rng, p, vars)));
        }
        if with_ab && rng.gen_bool(0.7) {
            d.constraints
                .push(Constraint::AbEq(term(rng, p, vars), term(rng, p, vars)));
        }
        disjuncts.push(d);
    }
    Instance::new(
        p.clone(),
        vars.iter().map(|s| s.to_string()).collect(),
        disjuncts,
    )
    .unwrap()
}

/// Random instance whose only items are `ab` constraints and equations.
pub fn ab_instance(rng: &mut StdRng, p: &Presentation) -> Instance {
    let nvars = rng.gen_range(1..=2);
    let names = ["X", "Y"];
    let vars = &names[..nvars];
    let mut d = Disjunct::default();
    if rng.gen_bool(0.3) {
        d.equations
            .push(Equation::new(term(rng, p, vars), term(rng, p, vars)));
    }
    for _ in 0..rng.gen_range(1..=2) {
        d.constraints
            .push(Constraint::AbEq(term(rng, p, vars), term(rng, p, vars)));
    }
    Instance::new(
        p.clone(),
        vars.iter().map(|s| s.to_string()).collect(),
        vec![d],
    )
    .unwrap()
}

/// Vertices of orders 3, 2 and 4, with one edge.
pub fn mixed_finite() -> Presentation {
    Presentation::new(
        &[
            ("a", Order::Finite(3)),
            ("b", Order::Finite(2)),
            ("c", Order::Finite(4)),
        ],
        &[("a", "b")],
    )
    .unwrap()
}
