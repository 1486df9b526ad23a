//! Grassmann algebra laws against an index-list oracle that sorts generator
//! words by adjacent swaps.

use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;
use superfield::grassmann::{gr_mul, Field, GrassmannElement, GrassmannMorphism, Parity};

type Oracle = BTreeMap<Vec<usize>, f64>;

/// Sorts a word of generator indices; `None` if an index repeats.
fn normalize(mut w: Vec<usize>) -> Option<(Vec<usize>, f64)> {
    let mut sign = 1.0;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] == w[j + 1] {
                return None;
            }
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, sign))
}

fn oracle_mul(a: &Oracle, b: &Oracle) -> Oracle {
    let mut out = Oracle::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend(wb);
            if let Some((w, s)) = normalize(w) {
                *out.entry(w).or_default() += s * ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0.0);
    out
}

fn to_oracle(e: &GrassmannElement) -> Oracle {
    e.terms()
        .filter(|(_, c)| c.norm() != 0.0)
        .map(|(b, c)| ((0..32).filter(|i| b & (1 << i) != 0).map(|i| i + 1).collect(), c.re))
        .collect()
}

fn build(n: usize, terms: &[(u32, i32)]) -> GrassmannElement {
    terms.iter().fold(GrassmannElement::zero(n, Field::Real), |acc, &(b, c)| {
        acc.try_add(&GrassmannElement::real_monomial(n, b, c as f64)).unwrap()
    })
}

fn build_complex(n: usize, terms: &[(u32, i32, i32)]) -> GrassmannElement {
    terms.iter().fold(GrassmannElement::zero(n, Field::Complex), |acc, &(b, re, im)| {
        acc.try_add(&GrassmannElement::monomial(n, b, Complex64::new(re as f64, im as f64))).unwrap()
    })
}

fn terms(n: usize) -> impl Strategy<Value = Vec<(u32, i32)>> {
    prop::collection::vec((0..(1u32 << n), -4i32..=4), 0..7)
}

fn homogeneous(n: usize, parity: Parity) -> impl Strategy<Value = GrassmannElement> {
    terms(n).prop_map(move |t| {
        let keep: Vec<_> = t.into_iter().filter(|(b, _)| Parity::of_grade(b.count_ones()) == parity).collect();
        build(n, &keep)
    })
}

fn parity_strategy() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn same_n_triple() -> impl Strategy<Value = (usize, GrassmannElement, GrassmannElement, GrassmannElement)> {
    (1usize..=5).prop_flat_map(|n| {
        (Just(n), terms(n), terms(n), terms(n)).prop_map(|(n, a, b, c)| (n, build(n, &a), build(n, &b), build(n, &c)))
    })
}

/// Odd images for each of `source` generators inside Λ_target.
fn odd_images(source: usize, target: usize) -> impl Strategy<Value = Vec<GrassmannElement>> {
    prop::collection::vec(homogeneous(target, Parity::Odd), source)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_matches_oracle((_, a, b, _) in same_n_triple()) {
        let got = to_oracle(&gr_mul(&a, &b).unwrap());
        prop_assert_eq!(got, oracle_mul(&to_oracle(&a), &to_oracle(&b)));
    }

    #[test]
    fn associativity_and_unit((n, a, b, c) in same_n_triple()) {
        let left = gr_mul(&gr_mul(&a, &b).unwrap(), &c).unwrap();
        let right = gr_mul(&a, &gr_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left.max_abs_diff(&right), 0.0);
        let one = GrassmannElement::one(n, Field::Real);
        prop_assert_eq!(gr_mul(&one, &a).unwrap().max_abs_diff(&a), 0.0);
        prop_assert_eq!(gr_mul(&a, &one).unwrap().max_abs_diff(&a), 0.0);
    }

    #[test]
    fn distributivity((_, a, b, c) in same_n_triple()) {
        let left = gr_mul(&a, &(&b + &c)).unwrap();
        let right = &gr_mul(&a, &b).unwrap() + &gr_mul(&a, &c).unwrap();
        prop_assert_eq!(left.max_abs_diff(&right), 0.0);
    }

    #[test]
    fn supercommutativity(
        (a, b, pa, pb) in (1usize..=5, parity_strategy(), parity_strategy())
            .prop_flat_map(|(n, pa, pb)| (homogeneous(n, pa), homogeneous(n, pb), Just(pa), Just(pb)))
    ) {
        let ab = gr_mul(&a, &b).unwrap();
        let ba = gr_mul(&b, &a).unwrap();
        prop_assert_eq!(ab.max_abs_diff(&ba.scale_real(pa.koszul(pb))), 0.0);
        if !ab.is_zero() {
            prop_assert_eq!(ab.parity(), Some(pa.add(pb)));
        }
    }

    #[test]
    fn odd_elements_square_to_zero(a in (1usize..=5).prop_flat_map(|n| homogeneous(n, Parity::Odd))) {
        prop_assert!(gr_mul(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn nilpotent_part_is_nilpotent(n in 1usize..=5, t in (1usize..=5).prop_flat_map(terms)) {
        let t: Vec<_> = t.into_iter().filter(|(b, _)| *b < (1u32 << n)).collect();
        let x = build(n, &t).nilpotent_part();
        prop_assert!(x.pow(n as u32 + 1).is_zero());
    }

    #[test]
    fn inverse_of_unit_body(n in 1usize..=4, body in 1i32..=5, t in (1usize..=4).prop_flat_map(terms)) {
        let t: Vec<_> = t.into_iter().filter(|(b, _)| *b != 0 && *b < (1u32 << n)).collect();
        let a = &GrassmannElement::real_scalar(n, body as f64) + &build(n, &t);
        let prod = gr_mul(&a, &a.inverse().unwrap()).unwrap();
        prop_assert!(prod.max_abs_diff(&GrassmannElement::one(n, Field::Real)) <= 1e-12);
    }

    #[test]
    fn star_laws(
        (a, b, pa, pb) in (1usize..=4, parity_strategy(), parity_strategy()).prop_flat_map(|(n, pa, pb)| {
            let t = move |p: Parity| {
                prop::collection::vec((0..(1u32 << n), -3i32..=3, -3i32..=3), 0..6).prop_map(move |v| {
                    let keep: Vec<_> = v.into_iter().filter(|(b, _, _)| Parity::of_grade(b.count_ones()) == p).collect();
                    build_complex(n, &keep)
                })
            };
            (t(pa), t(pb), Just(pa), Just(pb))
        })
    ) {
        prop_assert_eq!(a.star().star().max_abs_diff(&a), 0.0);
        let lhs = gr_mul(&a, &b).unwrap().star();
        let rhs = gr_mul(&b.star(), &a.star()).unwrap().scale_real(pa.koszul(pb));
        prop_assert_eq!(lhs.max_abs_diff(&rhs), 0.0);
        for (blade, c) in a.star().terms() {
            prop_assert_eq!(c, a.coeff(blade).conj());
        }
    }

    #[test]
    fn real_elements_are_star_fixed((_, a, _, _) in same_n_triple()) {
        prop_assert_eq!(a.star().max_abs_diff(&a), 0.0);
    }

    #[test]
    fn pullback_is_an_algebra_map(
        (n, m, images, a, b) in (1usize..=3, 1usize..=4).prop_flat_map(|(n, m)| {
            (Just(n), Just(m), odd_images(n, m), terms(n), terms(n))
        })
    ) {
        let lambda = GrassmannMorphism::new(n, m, images).unwrap();
        let (a, b) = (build(n, &a), build(n, &b));
        let lhs = lambda.pullback(&gr_mul(&a, &b).unwrap()).unwrap();
        let rhs = gr_mul(&lambda.pullback(&a).unwrap(), &lambda.pullback(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs.max_abs_diff(&rhs), 0.0);
        let one = lambda.pullback(&GrassmannElement::one(n, Field::Real)).unwrap();
        prop_assert_eq!(one.max_abs_diff(&GrassmannElement::one(m, Field::Real)), 0.0);
        let body = GrassmannMorphism::body_map(n, m).pullback(&a).unwrap();
        prop_assert_eq!(body.max_abs_diff(&GrassmannElement::real_scalar(m, a.body().re)), 0.0);
    }

    #[test]
    fn pullback_matches_substitution_oracle(
        (n, images, a) in (1usize..=3, 1usize..=4).prop_flat_map(|(n, m)| {
            (Just(n), odd_images(n, m), terms(n))
        })
    ) {
        let a = build(n, &a);
        let lambda = GrassmannMorphism::new(n, images[0].n(), images.clone()).unwrap();
        let imgs: Vec<Oracle> = images.iter().map(to_oracle).collect();
        let mut expect = Oracle::new();
        for (word, c) in to_oracle(&a) {
            let mut acc: Oracle = [(vec![], c)].into_iter().collect();
            for i in word {
                acc = oracle_mul(&acc, &imgs[i - 1]);
            }
            for (w, x) in acc {
                *expect.entry(w).or_default() += x;
            }
        }
        expect.retain(|_, c| *c != 0.0);
        prop_assert_eq!(to_oracle(&lambda.pullback(&a).unwrap()), expect);
    }

    #[test]
    fn pullback_of_composite(
        (a, i1, i2) in (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(n, m, k)| {
            (terms(n).prop_map(move |t| build(n, &t)), odd_images(n, m), odd_images(m, k))
        })
    ) {
        let inner = GrassmannMorphism::new(a.n(), i1[0].n(), i1).unwrap();
        let outer = GrassmannMorphism::new(inner.target(), i2[0].n(), i2).unwrap();
        let comp = GrassmannMorphism::compose(&outer, &inner).unwrap();
        let two_step = outer.pullback(&inner.pullback(&a).unwrap()).unwrap();
        prop_assert_eq!(comp.pullback(&a).unwrap().max_abs_diff(&two_step), 0.0);
        let id = GrassmannMorphism::identity(a.n());
        prop_assert_eq!(id.pullback(&a).unwrap().max_abs_diff(&a), 0.0);
    }

    #[test]
    fn json_round_trip((_, a, _, _) in same_n_triple()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: GrassmannElement = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn oracle_sanity() {
    assert_eq!(normalize(vec![2, 1]), Some((vec![1, 2], -1.0)));
    assert_eq!(normalize(vec![3, 1, 2]), Some((vec![1, 2, 3], 1.0)));
    assert_eq!(normalize(vec![1, 2, 1]), None);
}
