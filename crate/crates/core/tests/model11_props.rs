//! 1|1 model: Green axioms, adjointness, τ closed forms and transport
//! properties on random Gaussian data. Integral oracles use composite Simpson
//! on the analytic profiles, sixteen panels per grid cell.

use proptest::prelude::*;
use superfield::dynamics::{tau, Side};
use superfield::grassmann::{GrassmannElement, Parity};
use superfield::model11::{
    apply_p11, dt_section, green11, green_dt2, green_dt2_numerov, pair11, pullback11, pushforward11, susy_q,
    GrassmannSection11, Grid1, Morphism11, Section11, Theory11,
};
use superfield::numerics::gaussian;

const TOL: f64 = 1e-6;

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

fn grid() -> Grid1 {
    Grid1::new(0.0, 2.0, 4096).unwrap()
}

fn profile() -> impl Strategy<Value = Profile> {
    prop::collection::vec((0.7f64..1.3, 0.04f64..0.07, -2.0f64..2.0), 1..=3).prop_map(Profile)
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Retarded), Just(Side::Advanced)]
}

fn section(f: &Profile, h: &Profile) -> Section11 {
    Section11::from_fns(grid(), |t| f.at(t), |t| h.at(t))
}

fn homogeneous(p: &Profile, parity: Parity) -> Section11 {
    match parity {
        Parity::Even => Section11::from_fns(grid(), |t| p.at(t), |_| 0.0),
        Parity::Odd => Section11::from_fns(grid(), |_| 0.0, |t| p.at(t)),
    }
}

fn rel(a: &Section11, b: &Section11) -> f64 {
    a.axpy(-1.0, b).unwrap().norm() / a.norm().max(b.norm())
}

/// ∫_{t0}^{t_i} g for every grid node t_i.
fn cumulative_simpson(g: &dyn Fn(f64) -> f64, grid: Grid1) -> Vec<f64> {
    const PANELS: usize = 16;
    let dt = grid.dt();
    let h = dt / PANELS as f64;
    let mut out = vec![0.0; grid.n];
    for i in 1..grid.n {
        let a = grid.t(i - 1);
        let mut s = 0.0;
        for k in 0..PANELS {
            let x = a + k as f64 * h;
            s += g(x) + 4.0 * g(x + 0.5 * h) + g(x + h);
        }
        out[i] = out[i - 1] + s * h / 6.0;
    }
    out
}

fn total_simpson(g: &dyn Fn(f64) -> f64) -> f64 {
    *cumulative_simpson(g, grid()).last().unwrap()
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn green_operators_invert_p(f in profile(), h in profile(), s in side()) {
        let x = section(&f, &h);
        let gx = green11(&x, s).unwrap();
        prop_assert!(rel(&apply_p11(&gx).unwrap(), &x) <= TOL);
        prop_assert!(rel(&green11(&apply_p11(&x).unwrap(), s).unwrap(), &x) <= TOL);
        let (i0, i1) = x.support().unwrap();
        let (j0, j1) = gx.support().unwrap();
        match s {
            Side::Retarded => prop_assert!(j0 + 2 >= i0),
            Side::Advanced => prop_assert!(j1 <= i1 + 2),
        }
    }

    #[test]
    fn retarded_green_matches_quadrature(f in profile(), h in profile()) {
        let g = grid();
        let gx = green11(&section(&f, &h), Side::Retarded).unwrap();
        let int_f = cumulative_simpson(&|t| f.at(t), g);
        prop_assert!(max_rel(gx.h(), &int_f) <= TOL);
        let a = cumulative_simpson(&|t| h.at(t), g);
        let m = cumulative_simpson(&|t| t * h.at(t), g);
        let kernel: Vec<f64> = (0..g.n).map(|i| g.t(i) * a[i] - m[i]).collect();
        prop_assert!(max_rel(gx.f(), &kernel) <= TOL);
    }

    #[test]
    fn advanced_kernel_agrees_with_numerov(h in profile(), s in side()) {
        let g = grid();
        let hs: Vec<f64> = g.times().iter().map(|&t| h.at(t)).collect();
        let kernel = green_dt2(&hs, g.t0, g.dt(), s);
        let stepped = green_dt2_numerov(&hs, g.dt(), s);
        prop_assert!(max_rel(&kernel, &stepped) <= TOL);
    }

    #[test]
    fn p_is_super_self_adjoint(a in profile(), b in profile(), p in parity()) {
        let (x, y) = (homogeneous(&a, p), homogeneous(&b, p));
        let sign = if p == Parity::Even { 1.0 } else { -1.0 };
        let (px, py) = (apply_p11(&x).unwrap(), apply_p11(&y).unwrap());
        let lhs = pair11(&x, &py).unwrap();
        let rhs = sign * pair11(&px, &y).unwrap();
        let scale = x.norm() * py.norm() + px.norm() * y.norm();
        prop_assert!((lhs - rhs).abs() <= TOL * scale);
    }

    #[test]
    fn green_adjointness_signs(a in profile(), b in profile(), p in parity(), s in side()) {
        let (x, y) = (homogeneous(&a, p), homogeneous(&b, p));
        let sign = if p == Parity::Even { -1.0 } else { 1.0 };
        let gy = green11(&y, s).unwrap();
        let gx = green11(&x, s.opposite()).unwrap();
        let lhs = pair11(&x, &gy).unwrap();
        let rhs = sign * pair11(&gx, &y).unwrap();
        let scale = x.norm() * gy.norm() + gx.norm() * y.norm();
        prop_assert!((lhs - rhs).abs() <= TOL * scale);
    }

    #[test]
    fn causal_propagator_kills_the_image_of_p(f in profile(), h in profile()) {
        let x = section(&f, &h);
        let px = apply_p11(&x).unwrap();
        let diff = green11(&px, Side::Retarded).unwrap().axpy(-1.0, &green11(&px, Side::Advanced).unwrap()).unwrap();
        prop_assert!(diff.norm() / x.norm() <= TOL);
    }

    #[test]
    fn tau_closed_forms(f1 in profile(), f2 in profile(), h1 in profile(), h2 in profile()) {
        let th = Theory11;
        let ee = tau(&th, &homogeneous(&f1, Parity::Even), &homogeneous(&f2, Parity::Even)).unwrap();
        let ee_oracle = total_simpson(&|t| f1.at(t)) * total_simpson(&|t| f2.at(t));
        let ee_scale = total_simpson(&|t| f1.at(t).abs()) * total_simpson(&|t| f2.at(t).abs());
        prop_assert!((ee - ee_oracle).abs() <= TOL * ee_scale);

        let a = total_simpson(&|t| h1.at(t));
        let m = total_simpson(&|t| t * h1.at(t));
        let oo_oracle = total_simpson(&|t| (t * a - m) * h2.at(t));
        let oo = tau(&th, &homogeneous(&h1, Parity::Odd), &homogeneous(&h2, Parity::Odd)).unwrap();
        let scale = total_simpson(&|t| h1.at(t).abs()) * total_simpson(&|t| h2.at(t).abs());
        prop_assert!((oo - oo_oracle).abs() <= TOL * scale);
    }

    #[test]
    fn tau_symmetry_class(a in profile(), b in profile(), p1 in parity(), p2 in parity()) {
        let th = Theory11;
        let (x, y) = (homogeneous(&a, p1), homogeneous(&b, p2));
        let xy = tau(&th, &x, &y).unwrap();
        let yx = tau(&th, &y, &x).unwrap();
        if p1 != p2 {
            prop_assert_eq!(xy, 0.0);
        } else {
            let sign = if p1 == Parity::Odd { -1.0 } else { 1.0 };
            prop_assert!((xy - sign * yx).abs() <= 1e-10 * xy.abs().max(yx.abs()).max(1e-12));
        }
    }

    #[test]
    fn q_squares_to_minus_time_derivative(f in profile(), h in profile()) {
        let x = section(&f, &h);
        let qq = susy_q(&susy_q(&x));
        let expect = Section11::from_fns(grid(), |t| -f.deriv(t), |t| -h.deriv(t));
        prop_assert!(rel(&qq, &expect) <= TOL);
        prop_assert!(rel(&dt_section(&x), &expect.scale(-1.0)) <= TOL);
    }

    #[test]
    fn translation_resamples_and_commutes_with_green(f in profile(), h in profile(), k in -200i64..=200, s in side()) {
        let g = grid();
        let c = k as f64 * g.dt();
        let src = Grid1::with_spacing(g.t0 - c, g.t1 - c, g.dt()).unwrap();
        let m = Morphism11::translation(1, c, src, g).unwrap();
        let x = section(&f, &h);
        let pulled = pullback11(&m, &GrassmannSection11::unit(1, &x)).unwrap().component(0);
        let expect = Section11::from_fns(src, |t| f.at(t + c), |t| h.at(t + c));
        prop_assert!(pulled.max_abs_diff(&expect) <= 1e-12);

        let gp = green11(&pulled, s).unwrap();
        let pg = pullback11(&m, &GrassmannSection11::unit(1, &green11(&x, s).unwrap())).unwrap().component(0);
        prop_assert!(rel(&gp, &pg) <= TOL);
    }

    #[test]
    fn push_forward_then_pull_back(f in profile(), h in profile(), z in -1.0f64..1.0, k in -100i64..=100) {
        let g = grid();
        let c = k as f64 * g.dt();
        let pad = 512.0 * g.dt();
        let wide = Grid1::with_spacing(g.t0 - pad, g.t1 + pad, g.dt()).unwrap();
        let zeta = GrassmannElement::generator(2, 1).scale_real(z);
        let m = Morphism11::new(GrassmannElement::real_scalar(2, c), zeta, g, wide).unwrap();
        let x = GrassmannSection11::tensor(&(&GrassmannElement::generator(2, 2) + &GrassmannElement::real_scalar(2, 1.0)), &section(&f, &h));
        let back = pullback11(&m, &pushforward11(&m, &x).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&x) <= 1e-8 * x.max_abs());
    }
}
