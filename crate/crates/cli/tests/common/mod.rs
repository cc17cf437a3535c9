#![allow(dead_code)]

use std::path::PathBuf;

use abeq_core::ir::{parse_instance_in, Constraint, Disjunct, Equation, GroupTerm, Instance};
use abeq_core::{NormalWord, Presentation};
use rand::rngs::StdRng;
use rand::Rng;

pub fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn data_file(name: &str) -> String {
    data().join(name).to_str().unwrap().to_string()
}

pub fn load(name: &str) -> Instance {
    parse_instance_in(
        &std::fs::read_to_string(data().join(name)).unwrap(),
        &data(),
    )
    .unwrap()
}

pub fn graph(name: &str) -> Presentation {
    Presentation::parse(&std::fs::read_to_string(data().join(name)).unwrap()).unwrap()
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

fn variables(rng: &mut StdRng) -> Vec<&'static str> {
    ["X", "Y"][..rng.gen_range(1..=2)].to_vec()
}

/// At most two variables, constants of length at most two.
pub fn instance(rng: &mut StdRng, p: &Presentation, with_ab: bool) -> Instance {
    let vars = variables(rng);
    let mut disjuncts = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let mut d = Disjunct::default();
        for _ in 0..rng.gen_range(1..=2) {
            d.equations
                .push(Equation::new(term(rng, p, &vars), term(rng, p, &vars)));
        }
        if with_ab && rng.gen_bool(0.7) {
            d.constraints
                .push(Constraint::AbEq(term(rng, p, &vars), term(rng, p, &vars)));
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

/// At least one `ab` constraint, sometimes with an equation.
pub fn ab_instance(rng: &mut StdRng, p: &Presentation) -> Instance {
    let vars = variables(rng);
    let mut d = Disjunct::default();
    if rng.gen_bool(0.3) {
        d.equations
            .push(Equation::new(term(rng, p, &vars), term(rng, p, &vars)));
    }
    for _ in 0..rng.gen_range(1..=2) {
        d.constraints
            .push(Constraint::AbEq(term(rng, p, &vars), term(rng, p, &vars)));
    }
    Instance::new(
        p.clone(),
        vars.iter().map(|s| s.to_string()).collect(),
        vec![d],
    )
    .unwrap()
}
