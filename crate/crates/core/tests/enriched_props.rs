//! Enriched pullbacks: the ζ-coefficient of a SUSY pullback against analytic
//! derivatives, contravariance under composition, exchange of superpoints,
//! and the non-naturality witness.

use proptest::prelude::*;
use superfield::enriched::{
    chain_grids11, compose_rel, exchange_section, exchange_superpoint, non_naturality_witness, pullback_rel,
    random_morphism11, RelMorphism, RelSection,
};
use superfield::grassmann::{Field, GrassmannElement, GrassmannMorphism, Parity};
use superfield::model11::{pullback11, GrassmannSection11, Grid1, Morphism11, Section11};
use superfield::numerics::gaussian;
use superfield::sampling::{self, random_grassmann_section11};

#[derive(Clone, Debug)]
struct Profile(Vec<(f64, f64, f64)>);

impl Profile {
    fn at(&self, t: f64) -> f64 {
        self.0.iter().map(|&(c, s, a)| a * gaussian(t, c, s)).sum()
    }

    fn deriv(&self, t: f64) -> f64 {
        self.0.iter().map(|&(c, s, a)| -a * (t - c) / (s * s) * gaussian(t, c, s)).sum()
    }
}

fn profile() -> impl Strategy<Value = Profile> {
    prop::collection::vec((0.7f64..1.3, 0.04f64..0.07, -2.0f64..2.0), 1..=3).prop_map(Profile)
}

fn grid() -> Grid1 {
    Grid1::new(0.0, 2.0, 4097).unwrap()
}

fn rel(a: &Section11, b: &Section11) -> f64 {
    a.axpy(-1.0, b).unwrap().norm() / a.norm().max(b.norm())
}

fn rel_sections(a: &RelSection, b: &RelSection) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        a.diff_norm(b).unwrap() / scale
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn susy_pullback_adds_the_q_image(f in profile(), h in profile()) {
        let g = grid();
        let m = Morphism11::new(GrassmannElement::zero(1, Field::Real), GrassmannElement::generator(1, 1), g, g).unwrap();
        let x = Section11::from_fns(g, |t| f.at(t), |t| h.at(t));
        let out = pullback11(&m, &GrassmannSection11::unit(1, &x)).unwrap();
        prop_assert!(out.component(0).max_abs_diff(&x) <= 1e-12);
        let q = Section11::from_fns(g, |t| h.at(t), |t| -f.deriv(t));
        prop_assert!(rel(&out.component(1), &q) <= 1e-6);
    }

    #[test]
    fn witness_measures_the_time_derivative(f in profile()) {
        let g = grid();
        let fs: Vec<f64> = g.times().iter().map(|&t| f.at(t)).collect();
        let w = non_naturality_witness(g, &fs).unwrap();
        let df = Section11::from_fns(g, |_| 0.0, |t| f.deriv(t));
        let expect = df.norm() / Section11::from_fns(g, |t| f.at(t), |_| 0.0).norm();
        prop_assert!((w.ratio - expect).abs() <= 1e-6 * expect);
        prop_assert_eq!(w.coefficient_parity, Some(Parity::Odd));
        prop_assert!(w.pass);
    }

    #[test]
    fn pullback_is_contravariant(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = sampling::rng(seed);
        let [a, b, c] = chain_grids11(1025);
        let m1 = RelMorphism::M11(random_morphism11(&mut rng, n, a, b));
        let m2 = RelMorphism::M11(random_morphism11(&mut rng, n, b, c));
        let h = RelSection::S11(random_grassmann_section11(&mut rng, n, &c, (0.4, 1.6)));
        let composite = pullback_rel(&compose_rel(&m2, &m1).unwrap(), &h).unwrap();
        let stepwise = pullback_rel(&m1, &pullback_rel(&m2, &h).unwrap()).unwrap();
        prop_assert!(rel_sections(&composite, &stepwise) <= 1e-6);
    }

    #[test]
    fn pullback_commutes_with_exchange(seed in any::<u64>(), m in 1usize..=3) {
        let mut rng = sampling::rng(seed);
        let [a, b, _] = chain_grids11(1025);
        let chi = RelMorphism::M11(random_morphism11(&mut rng, 1, a, b));
        let images = vec![sampling::random_odd(&mut rng, m)];
        let lambda = GrassmannMorphism::new(1, m, images).unwrap();
        let h = RelSection::S11(random_grassmann_section11(&mut rng, 1, &b, (0.4, 1.6)));
        let moved = pullback_rel(&exchange_superpoint(&lambda, &chi).unwrap(), &exchange_section(&lambda, &h).unwrap()).unwrap();
        let direct = exchange_section(&lambda, &pullback_rel(&chi, &h).unwrap()).unwrap();
        prop_assert!(rel_sections(&moved, &direct) <= 1e-6);
    }

    #[test]
    fn morphism_json_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = sampling::rng(seed);
        let [a, b, _] = chain_grids11(257);
        let chi = RelMorphism::M11(random_morphism11(&mut rng, n, a, b));
        let back: RelMorphism = serde_json::from_str(&serde_json::to_string(&chi).unwrap()).unwrap();
        prop_assert_eq!(back, chi);
    }
}
