mod common;

use std::path::PathBuf;

use abeq_core::ir::{abelian_shadow, parse_instance, parse_instance_in, Instance};
use abeq_core::oracle::naive_first_witness;
use abeq_core::search::{search, search_with, SearchOptions, Verdict};
use abeq_core::{Error, NormalWord};
use common::{f2, gamma1, gamma2, mixed, pentagon};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn load(name: &str) -> Instance {
    parse_instance_in(
        &std::fs::read_to_string(data().join(name)).unwrap(),
        &data(),
    )
    .unwrap()
}

#[test]
fn square_root_of_abab() {
    let inst = load("x1sq.inst");
    let report = search(&inst, 2).unwrap();
    let w = report.witness().expect("a witness");
    assert_eq!(w["X1"], inst.presentation.parse_word("a b").unwrap());
    assert!(report.stats_line().starts_with("stats nodes="));
}

#[test]
fn worked_triple() {
    let item1 = load("item1.inst");
    let report = search(&item1, 3).unwrap();
    let w = report.witness().expect("item 1 has a witness");
    assert!(item1.is_satisfied_by(w).unwrap());
    let p = &item1.presentation;
    assert_eq!(p.geodesic_length(&w["X"]), p.geodesic_length(&w["Y"]) + 2);
    for name in ["item2.inst", "item3.inst"] {
        assert_eq!(
            search(&load(name), 4).unwrap().verdict,
            Verdict::UnsatByShadow,
            "{name}"
        );
    }
}

#[test]
fn identity_at_radius_zero() {
    let inst = parse_instance("vertex a\nvertex b\nvars X\ndisjunct {\n  eq X = 1\n}\n").unwrap();
    let report = search(&inst, 0).unwrap();
    assert_eq!(report.witness().unwrap()["X"], NormalWord::identity());
    let none =
        parse_instance("vertex a\nvertex b\nvars X\ndisjunct {\n  eq X = a b a\n}\n").unwrap();
    assert_eq!(
        search(&none, 2).unwrap().verdict,
        Verdict::NoSolutionUpToBound(2)
    );
}

#[test]
fn radius_cap() {
    let inst = load("x1sq.inst");
    let opts = SearchOptions {
        cap: 3,
        ..SearchOptions::new(4)
    };
    assert!(matches!(
        search_with(&inst, &opts),
        Err(Error::RadiusCapExceeded { .. })
    ));
}

fn corpus() -> Vec<(Instance, usize)> {
    let mut out: Vec<(Instance, usize)> = [
        "x1sq.inst",
        "item1.inst",
        "item2.inst",
        "item3.inst",
        "pentagon_ab.inst",
    ]
    .iter()
    .map(|n| (load(n), 2))
    .collect();
    let mut rng = StdRng::seed_from_u64(31);
    for p in [f2(), gamma1(), gamma2(), pentagon(), mixed()] {
        for _ in 0..25 {
            out.push((common::instance(&mut rng, &p, true), 2));
        }
        for _ in 0..10 {
            out.push((common::ab_instance(&mut rng, &p), 2));
        }
    }
    out
}

#[test]
fn agrees_with_naive_enumeration() {
    let mut witnesses = 0;
    for (inst, bound) in corpus() {
        let naive = naive_first_witness(&inst, bound).unwrap();
        for parallel in [true, false] {
            let opts = SearchOptions {
                parallel,
                ..SearchOptions::new(bound)
            };
            let report = search_with(&inst, &opts).unwrap();
            match (&report.verdict, &naive) {
                (Verdict::Witness(w), Some(n)) => {
                    assert!(inst.is_satisfied_by(w).unwrap());
                    assert_eq!(w, n, "{inst}");
                }
                (Verdict::NoSolutionUpToBound(b), None) => assert_eq!(*b, bound),
                (Verdict::UnsatByShadow, None) => {
                    assert!(abelian_shadow(&inst).iter().all(|s| !s.solve().is_sat()));
                }
                (v, n) => panic!("search gave {v:?}, naive gave {n:?} on\n{inst}"),
            }
        }
        witnesses += naive.is_some() as usize;
    }
    assert!(witnesses > 10);
}
