//! 3|2 model: Clifford algebra, causal support of the leapfrog Green's
//! operators, pairing and τ symmetry, and the second-order SUSY defect of τ.

use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::Rng;
use superfield::dynamics::{tau, FieldTheory, Side};
use superfield::grassmann::Parity;
use superfield::model32::gamma::{gamma_lower, gamma_upper, verify_clifford, METRIC};
use superfield::model32::green::numerical_cone_mask;
use superfield::model32::susy::q_b;
use superfield::model32::{pair32, spacetime_bump, Grid32, Section32, Theory32};
use superfield::sampling::{self, random_section32};

type M2 = Matrix2<Complex64>;

fn grid() -> Grid32 {
    Grid32::square(32, 16, 8.0).unwrap()
}

fn homogeneous(s: Section32, p: Parity) -> Section32 {
    match p {
        Parity::Even => s.even_part(),
        Parity::Odd => s.odd_part(),
    }
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn koszul(a: Parity, b: Parity) -> f64 {
    if a == Parity::Odd && b == Parity::Odd {
        -1.0
    } else {
        1.0
    }
}

fn compact_pair(seed: u64) -> (Section32, Section32) {
    compact_pair_on(grid(), seed)
}

/// Two compact random sections with random quadratic time profiles, so that
/// no time-reflection symmetry is left in the data.
fn compact_pair_on(g: Grid32, seed: u64) -> (Section32, Section32) {
    let mut rng = sampling::rng(seed);
    let half = 0.3 * (g.t_end() - g.t0);
    let tc = 0.5 * (g.t0 + g.t_end());
    let mut draw = || {
        let (a, b) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        random_section32(&mut rng, &g, Some(half)).map_time(|t| {
            let x = (t - tc) / half;
            1.0 + a * x + b * x * x
        })
    };
    let first = draw();
    (first, draw())
}

#[test]
fn clifford_relations_hold_exactly() {
    for a in 0..3 {
        for b in 0..3 {
            let (ga, gb) = (gamma_lower(a), gamma_lower(b));
            let anti = ga * gb + gb * ga;
            let expect = M2::identity() * Complex64::new(if a == b { 2.0 * METRIC[a] } else { 0.0 }, 0.0);
            assert_eq!(anti, expect, "{{γ{a}, γ{b}}}");
            assert_eq!((ga * gb).trace(), expect[(0, 0)], "Tr γ{a}γ{b}");
        }
        assert_eq!(gamma_upper(a), gamma_lower(a) * Complex64::new(METRIC[a], 0.0));
    }
    let prod = gamma_lower(0) * gamma_lower(1) * gamma_lower(2);
    assert!(prod == M2::identity() * Complex64::i() || prod == M2::identity() * -Complex64::i());
}

#[test]
fn every_listed_gamma_identity_is_exact() {
    let checks = verify_clifford(&mut sampling::rng(7), 32);
    assert!(checks.len() > 40);
    for c in checks {
        assert!(c.pass, "{}: {}", c.name, c.residual);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn green_output_stays_in_the_numerical_cone(
        row in 0.35f64..0.65, x in 0.0f64..8.0, y in 0.0f64..8.0, which in 0usize..4, retarded in any::<bool>()
    ) {
        let g = grid();
        let tc = g.t0 + row * (g.t_end() - g.t0);
        let src = Section32::with_component(g, which, spacetime_bump(&g, [tc, x, y], 1.1)).unwrap();
        let side = if retarded { Side::Retarded } else { Side::Advanced };
        let out = Theory32 { mass: 1.0 }.green(&src, side).unwrap();
        let mask = numerical_cone_mask(&g, &src.support().unwrap(), side);
        let mut outside = 0.0f64;
        let mut inside = 0.0f64;
        for k in 0..4 {
            for (v, &m) in out.component(k).iter().zip(&mask) {
                if m {
                    inside = inside.max(v.abs());
                } else {
                    outside = outside.max(v.abs());
                }
            }
        }
        prop_assert!(outside <= 1e-12 * inside);
        prop_assert!(inside > 0.0);
    }

    #[test]
    fn pairing_is_graded_symmetric(seed in any::<u64>(), p1 in parity(), p2 in parity()) {
        let (a, b) = compact_pair(seed);
        let (a, b) = (homogeneous(a, p1), homogeneous(b, p2));
        let ab = pair32(&a, &b).unwrap();
        let ba = pair32(&b, &a).unwrap();
        prop_assert!((ab - koszul(p1, p2) * ba).abs() <= 1e-12 * (a.norm() * b.norm()));
    }

    #[test]
    fn tau_is_super_skew(seed in any::<u64>(), p1 in parity(), p2 in parity()) {
        let th = Theory32 { mass: 1.0 };
        let (a, b) = compact_pair(seed);
        let (a, b) = (homogeneous(a, p1), homogeneous(b, p2));
        let ab = tau(&th, &a, &b).unwrap();
        let ba = tau(&th, &b, &a).unwrap();
        if p1 != p2 {
            prop_assert!(ab == 0.0 && ba == 0.0);
        } else {
            prop_assert!((ab + koszul(p1, p2) * ba).abs() <= 1e-10 * ab.abs().max(ba.abs()).max(1e-300));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 6,
        rng_seed: RngSeed::Fixed(20_240_601),
        ..ProptestConfig::default()
    })]

    #[test]
    fn tau_susy_defect_vanishes_at_second_order(seed in any::<u64>(), p1 in parity(), b1 in -1.5f64..1.5, b2 in -1.5f64..1.5) {
        let th = Theory32 { mass: 1.0 };
        let b = [b1, b2];
        let sign = if p1 == Parity::Odd { -1.0 } else { 1.0 };
        let defect = |n: usize| {
            let (a, c) = compact_pair_on(Grid32::square(2 * n, n, 8.0).unwrap(), seed);
            let a = homogeneous(a, p1);
            let l = tau(&th, &q_b(&a, b), &c).unwrap();
            let r = sign * tau(&th, &a, &q_b(&c, b)).unwrap();
            (l + r).abs() / l.abs().max(r.abs())
        };
        let (coarse, fine) = (defect(32), defect(64));
        let order = (coarse / fine).log2();
        prop_assert!(order >= 1.5, "{} {} {}", coarse, fine, order);
    }
}
