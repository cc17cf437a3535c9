mod common;

use std::collections::BTreeMap;

use abeq_core::linear::{Equation, System};
use abeq_core::{
    abelianize, enumerate_ball, exponent_sum, in_K, LinearSystem, Presentation, VertexSet,
};
use common::{f2, gamma1, mixed, pentagon};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn exponent_sum_of_the_worked_example() {
    let p = Presentation::free(&["x", "y"]).unwrap();
    let w = p.parse_word("x y x^-1 y^2").unwrap();
    assert_eq!(exponent_sum(&p, &w, p.vertex("x").unwrap()).unwrap(), 0);
    assert_eq!(exponent_sum(&p, &w, p.vertex("y").unwrap()).unwrap(), 3);
}

#[test]
fn abelianisation_is_a_homomorphism_on_balls() {
    for p in [f2(), gamma1(), pentagon(), mixed()] {
        let ball = enumerate_ball(&p, 3, 10).unwrap();
        for x in &ball {
            for y in &ball {
                assert_eq!(
                    abelianize(&p, &p.mul(x, y)),
                    &abelianize(&p, x) + &abelianize(&p, y)
                );
            }
        }
    }
    let p = f2();
    let ball = enumerate_ball(&p, 4, 10).unwrap();
    for x in &ball {
        for y in &ball {
            for v in 0..2 {
                let lhs = exponent_sum(&p, &p.mul(x, y), v).unwrap();
                assert_eq!(
                    lhs,
                    exponent_sum(&p, x, v).unwrap() + exponent_sum(&p, y, v).unwrap()
                );
            }
        }
    }
}

#[test]
fn abelianisation_is_a_homomorphism_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(7);
    for p in [f2(), gamma1()] {
        for _ in 0..10_000 {
            let x = common::word(&mut rng, &p, 20);
            let y = common::word(&mut rng, &p, 20);
            for v in 0..p.len() {
                let lhs = exponent_sum(&p, &p.mul(&x, &y), v).unwrap();
                assert_eq!(
                    lhs,
                    exponent_sum(&p, &x, v).unwrap() + exponent_sum(&p, &y, v).unwrap()
                );
            }
        }
    }
}

fn random_system(rng: &mut StdRng, planted: Option<&BTreeMap<String, i64>>) -> System<BigInt> {
    let names = ["x", "y", "z", "w"];
    let n = rng.gen_range(1..=4);
    let mut sys = LinearSystem::default();
    for _ in 0..rng.gen_range(1..=4) {
        let mut coeffs: Vec<(i64, String)> = Vec::new();
        for x in &names[..n] {
            if rng.gen_bool(0.7) {
                coeffs.push((rng.gen_range(-4..=4), x.to_string()));
            }
        }
        let value =
            |vals: &BTreeMap<String, i64>| coeffs.iter().map(|(c, x)| c * vals[x]).sum::<i64>();
        let modulus = rng.gen_bool(0.25).then(|| rng.gen_range(2..=6i64));
        let rhs = match planted {
            Some(vals) => value(vals),
            None => rng.gen_range(-6..=6),
        };
        let coeffs = coeffs
            .into_iter()
            .map(|(c, x)| (BigInt::from(c), x))
            .collect();
        sys.push(match modulus {
            Some(m) => Equation::congruence(
                coeffs,
                BigInt::from(rhs + m * rng.gen_range(-2..=2)),
                BigInt::from(m),
            ),
            None => Equation::new(coeffs, BigInt::from(rhs)),
        });
    }
    sys
}

fn brute_force(sys: &System<BigInt>, bound: i64) -> bool {
    let vars = sys.unknowns();
    let mut vals = vec![-bound; vars.len()];
    loop {
        let map: BTreeMap<String, BigInt> = vars
            .iter()
            .cloned()
            .zip(vals.iter().map(|&v| BigInt::from(v)))
            .collect();
        if sys.is_satisfied_by(&map) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == vals.len() {
                return false;
            }
            vals[i] += 1;
            if vals[i] <= bound {
                break;
            }
            vals[i] = -bound;
            i += 1;
        }
    }
}

#[test]
fn planted_systems_are_solved() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let vals: BTreeMap<String, i64> = ["x", "y", "z", "w"]
            .iter()
            .map(|x| (x.to_string(), rng.gen_range(-10..=10)))
            .collect();
        let sys = random_system(&mut rng, Some(&vals));
        let res = sys.solve();
        assert!(res.is_sat(), "{sys}");
        assert!(sys.is_satisfied_by(res.witness.as_ref().unwrap()), "{sys}");
    }
}

#[test]
fn solver_agrees_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..300 {
        let sys = random_system(&mut rng, None);
        let res = sys.solve();
        if let Some(w) = &res.witness {
            assert!(sys.is_satisfied_by(w), "{sys}");
        }
        if sys.unknowns().len() <= 3 && brute_force(&sys, 10) {
            assert!(res.is_sat(), "{sys}");
        }
    }
}

fn presentations() -> impl Strategy<Value = Presentation> {
    prop_oneof![Just(f2()), Just(gamma1()), Just(pentagon()), Just(mixed())]
}

fn raw(p: &Presentation) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..p.len(), -3i64..=3), 0..=10)
}

proptest! {
    #[test]
    fn exponent_sums_depend_only_on_the_element(
        (p, u) in presentations().prop_flat_map(|p| { let s = raw(&p); (Just(p), s) })
    ) {
        let n = p.normalize(&u);
        for v in (0..p.len()).filter(|&v| p.order(v).is_infinite()) {
            let direct: i64 = u.iter().filter(|(x, _)| *x == v).map(|(_, e)| e).sum();
            prop_assert_eq!(exponent_sum(&p, &n, v).unwrap(), direct);
        }
        prop_assert_eq!(abelianize(&p, &n), abelianize(&p, &p.normalize(&n.raw())));
    }

    #[test]
    fn kernels_are_normal_subgroups(
        a in raw(&gamma1()), b in raw(&gamma1()), g in raw(&gamma1()), bits in 1u64..16
    ) {
        let p = gamma1();
        let s = VertexSet::from_bits(bits);
        let (a, b, g) = (p.normalize(&a), p.normalize(&b), p.normalize(&g));
        // Push a and b into K_S by cancelling their exponent sums on S.
        let fix = |w: &abeq_core::NormalWord| {
            let mut raw = w.raw();
            for v in s.iter() {
                raw.push((v, -exponent_sum(&p, w, v).unwrap()));
            }
            p.normalize(&raw)
        };
        let (a, b) = (fix(&a), fix(&b));
        prop_assert!(in_K(&p, &a, s).unwrap());
        prop_assert!(in_K(&p, &p.mul(&a, &b), s).unwrap());
        prop_assert!(in_K(&p, &p.mul_all([&g, &a, &p.inv(&g)]), s).unwrap());
    }
}

#[test]
fn exponent_sum_systems_without_integer_solutions() {
    for text in [
        "1 x_b -3 y_b = 0\n1 x_b 1 y_b = -1\n",
        "4 u = -1\n4 w = -1\n",
    ] {
        let sys: System<BigInt> = System::parse(text).unwrap();
        assert!(!sys.solve().is_sat(), "{text}");
    }
}
