//! Quantized algebra on random words for both models: confluence of the
//! rewriting, associativity, the star anti-involution, and the generating
//! relation evaluated against τ computed directly from the sections.

use num_complex::Complex64;
use proptest::prelude::*;
use superfield::dynamics::{tau, FieldTheory};
use superfield::grassmann::GrassmannElement;
use superfield::model11::{Grid1, Section11, Theory11};
use superfield::model32::{Grid32, Theory32};
use superfield::quantize::{raw_word, Algebra, AlgebraElement, NormalTerms, Strategy as Order};
use superfield::sampling::{self, random_section32};

fn algebra11(n: usize) -> Algebra<Theory11> {
    let g = Grid1::new(0.0, 2.0, 1025).unwrap();
    let mut alg = Algebra::new(Theory11, n);
    for k in 0..3 {
        let c = 0.6 + 0.35 * k as f64;
        alg.field(&Section11::even_bump(g, c, 0.06, 1.0 + 0.5 * k as f64)).unwrap();
        alg.field(&Section11::odd_bump(g, c + 0.12, 0.05, 1.5 - 0.4 * k as f64)).unwrap();
    }
    alg
}

fn algebra32(n: usize) -> Algebra<Theory32> {
    let g = Grid32::square(32, 16, 8.0).unwrap();
    let mut rng = sampling::rng(41);
    let mut alg = Algebra::new(Theory32 { mass: 1.0 }, n);
    for _ in 0..3 {
        let s = random_section32(&mut rng, &g, Some(0.3 * (g.t_end() - g.t0)));
        alg.field(&s.even_part()).unwrap();
        alg.field(&s.odd_part()).unwrap();
    }
    alg
}

fn sorted(mut t: NormalTerms) -> NormalTerms {
    t.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    t
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..6, 0..=max_len)
}

/// Normal-ordered c·w with c an integer combination of 1 and θ₁.
fn element<T: FieldTheory>(alg: &Algebra<T>, w: &[u32], re: i32, im: i32, odd: bool) -> AlgebraElement
where
    T::Section: PartialEq,
{
    let n = alg.n();
    let mut c = GrassmannElement::complex_scalar(n, Complex64::new(re as f64, im as f64));
    if odd {
        c = &c * &GrassmannElement::generator(n, 1).complexify();
    }
    alg.normal_form(&raw_word(n, w, &c), Order::LeftmostFirst)
}

fn laws<T: FieldTheory>(alg: &Algebra<T>, parts: [(Vec<u32>, i32, i32, bool); 3]) -> Result<(), TestCaseError>
where
    T::Section: PartialEq,
{
    let [a, b, c] = parts.map(|(w, re, im, odd)| element(alg, &w, re, im, odd));
    let left = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
    let right = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
    prop_assert!(
        alg.evaluate(&left).max_abs_diff(&alg.evaluate(&right)) <= 1e-9 * (1.0 + alg.evaluate(&left).max_abs())
    );
    prop_assert_eq!(alg.star(&alg.star(&a)), a.clone());
    let (pa, pb) = (alg.element_parity(&a).unwrap(), alg.element_parity(&b).unwrap());
    let lhs = alg.star(&alg.mul(&a, &b).unwrap());
    let rhs = alg.mul(&alg.star(&b), &alg.star(&a)).unwrap().scale(Complex64::new(pa.koszul(pb), 0.0));
    prop_assert!(alg.evaluate(&lhs).max_abs_diff(&alg.evaluate(&rhs)) <= 1e-9 * (1.0 + alg.evaluate(&lhs).max_abs()));
    Ok(())
}

/// The graded commutator of two generators is β·τ·𝟙, with τ recomputed from
/// the registered sections.
fn relation<T: FieldTheory>(alg: &Algebra<T>, i: u32, j: u32) -> Result<(), TestCaseError>
where
    T::Section: PartialEq,
{
    let n = alg.n();
    let comm = alg.graded_commutator(&AlgebraElement::letter(n, i), &AlgebraElement::letter(n, j)).unwrap();
    let t = tau(alg.theory(), &alg.generator(i).section, &alg.generator(j).section).unwrap();
    let z = alg.theory().beta() * t;
    let expect = AlgebraElement::scalar(&GrassmannElement::complex_scalar(n, z));
    let diff = alg.evaluate(&comm).max_abs_diff(&alg.evaluate(&expect));
    prop_assert!(diff <= 1e-9 * (1.0 + z.norm()), "{i} {j}: {diff}");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rewriting_is_confluent_11(w in word(7)) {
        let alg = algebra11(0);
        prop_assert_eq!(
            sorted(alg.normal_form_word(&w, Order::LeftmostFirst)),
            sorted(alg.normal_form_word(&w, Order::RightmostFirst))
        );
    }

    #[test]
    fn rewriting_is_confluent_32(w in word(7)) {
        let alg = algebra32(0);
        prop_assert_eq!(
            sorted(alg.normal_form_word(&w, Order::LeftmostFirst)),
            sorted(alg.normal_form_word(&w, Order::RightmostFirst))
        );
    }

    #[test]
    fn normal_forms_are_normal(w in word(7)) {
        let alg = algebra11(0);
        for (nw, _, _) in alg.normal_form_word(&w, Order::LeftmostFirst) {
            for p in nw.windows(2) {
                prop_assert!(p[0] < p[1] || (p[0] == p[1] && !alg.square_reduces(p[0])));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn algebra_laws_11(parts in prop::array::uniform3((word(3), -3i32..=3, -3i32..=3, any::<bool>()))) {
        laws(&algebra11(2), parts)?;
    }

    #[test]
    fn algebra_laws_32(parts in prop::array::uniform3((word(3), -3i32..=3, -3i32..=3, any::<bool>()))) {
        laws(&algebra32(2), parts)?;
    }

    #[test]
    fn generating_relation(i in 0u32..6, j in 0u32..6) {
        relation(&algebra11(0), i, j)?;
        relation(&algebra32(0), i, j)?;
    }
}
