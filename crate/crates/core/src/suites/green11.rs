//! 1|1 operator P, Green's operators, pairing, pull-back and push-forward.

use rand::Rng;

use super::{gap, group, Worst};
use crate::config::SuiteConfig;
use crate::dynamics::Side;
use crate::error::Result;
use crate::grassmann::{Field, GrassmannElement, Parity};
use crate::model11::{
    apply_p11, green11, green_dt2, green_dt2_numerov, pair11, pair11_rel, pullback11, pushforward11,
    GrassmannSection11, Grid1, Morphism11, Section11,
};
use crate::numerics::gaussian;
use crate::report::Check;
use crate::sampling::{self, SuiteRng};

const SIDES: [(Side, &str); 2] = [(Side::Retarded, "retarded"), (Side::Advanced, "advanced")];

/// ‖a − b‖ / ‖b‖.
fn rel(a: &Section11, b: &Section11) -> Result<f64> {
    let d = a.axpy(-1.0, b)?.norm();
    let s = b.norm();
    Ok(if s == 0.0 { d } else { d / s })
}

fn inner_window(g: &Grid1) -> (f64, f64) {
    let l = g.t1 - g.t0;
    (g.t0 + 0.1 * l, g.t1 - 0.1 * l)
}

fn grid(cfg: &SuiteConfig) -> Result<Grid1> {
    Grid1::new(cfg.model11.t0, cfg.model11.t1, cfg.model11.points)
}

/// A larger interval with the same spacing, padded by an eighth of the span.
fn padded(g: &Grid1) -> Result<Grid1> {
    let pad = ((g.n - 1) / 8) as f64 * g.dt();
    Grid1::with_spacing(g.t0 - pad, g.t1 + pad, g.dt())
}

fn random_parity(rng: &mut SuiteRng) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Cells outside the causal side of the support where the output is nonzero.
fn leakage(input: &Section11, output: &Section11, side: Side) -> f64 {
    let Some((i0, i1)) = input.support() else { return 0.0 };
    let nz = |i: usize| output.f()[i] != 0.0 || output.h()[i] != 0.0;
    let n = input.grid().n;
    let count = match side {
        Side::Retarded => (0..i0).filter(|&i| nz(i)).count(),
        Side::Advanced => (i1 + 1..n).filter(|&i| nz(i)).count(),
    };
    count as f64
}

pub fn run(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(group("p11 examples", || p_examples(cfg)));
    out.extend(group("green11 examples", || green_examples(cfg)));
    out.extend(group("green11 axioms", || axioms(cfg, rng)));
    out.extend(group("green11 adjointness", || adjointness(cfg, rng)));
    out.extend(group("green11 uniqueness", || uniqueness(cfg, rng)));
    out.extend(group("pair11 examples", || pair_examples(cfg, rng)));
    out.extend(group("pullback11 examples", || pullback_examples(cfg)));
    out.extend(group("pushforward11", || pushforward(cfg, rng)));
    out.extend(group("green11 translation naturality", || green_naturality(cfg, rng)));
    out
}

fn p_examples(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let tol = cfg.tolerances.green11;
    let c_even = apply_p11(&Section11::from_fns(g, |_| 1.0, |_| 0.0))?;
    let c_odd = apply_p11(&Section11::from_fns(g, |_| 0.0, |_| 1.0))?;
    let poly = apply_p11(&Section11::from_fns(g, |t| t * t, |t| t))?;
    let expected = Section11::from_fns(g, |_| 1.0, |_| 2.0);
    Ok(vec![
        Check::bound("P(1) = 0", c_even.max_abs_diff(&Section11::zero(g)), cfg.tolerances.laws),
        Check::bound("P(θ) = 0", c_odd.max_abs_diff(&Section11::zero(g)), cfg.tolerances.laws),
        Check::bound("P(t² + θt) = 1 + 2θ", poly.max_abs_diff(&expected), tol),
        Check::holds("P flips parity", {
            let e = apply_p11(&Section11::even_bump(g, 1.0, 0.1, 1.0))?;
            let o = apply_p11(&Section11::odd_bump(g, 1.0, 0.1, 1.0))?;
            e.parity() == Some(Parity::Odd) && o.parity() == Some(Parity::Even)
        }),
    ])
}

/// Running trapezoid sum, written out independently of the library quadrature.
fn trapezoid_oracle(f: &[f64], dt: f64) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(f.len());
    out.push(0.0);
    for w in f.windows(2) {
        acc += 0.5 * dt * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// ∫_{t0}^{t_k} (t_k − s) h(s) ds for every k by direct trapezoid quadrature.
fn kernel_oracle(h: &[f64], ts: &[f64], dt: f64) -> Vec<f64> {
    (0..h.len())
        .map(|k| {
            let vals: Vec<f64> = (0..=k).map(|j| (ts[k] - ts[j]) * h[j]).collect();
            trapezoid_oracle(&vals, dt).last().copied().unwrap_or(0.0)
        })
        .collect()
}

fn green_examples(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let tol = cfg.tolerances.green11;
    let (dt, ts) = (g.dt(), g.times());
    let mid = 0.5 * (g.t0 + g.t1);
    let sigma = 0.05 * (g.t1 - g.t0);
    let mut out = Vec::new();

    let zero = green11(&Section11::zero(g), Side::Retarded)?;
    out.push(Check::exact("G⁺(0) = 0", zero.max_abs_diff(&Section11::zero(g))));

    let even = Section11::even_bump(g, mid, sigma, 1.0);
    let got = green11(&even, Side::Retarded)?;
    let want = Section11::odd(g, trapezoid_oracle(even.f(), dt))?;
    out.push(Check::bound("G⁺(f) = θ∫f, cumulative quadrature", rel(&got, &want)?, tol));

    let odd = Section11::odd_bump(g, mid, sigma, 1.0);
    let got = green11(&odd, Side::Retarded)?;
    let want = Section11::even(g, kernel_oracle(odd.h(), &ts, dt))?;
    out.push(Check::bound("G⁺(θh) = ∫(t−s)h, kernel quadrature", rel(&got, &want)?, tol));
    let back = apply_p11(&got)?;
    out.push(Check::bound("∂t²∘G⁺ = id on the odd bump", rel(&back, &odd)?, tol));
    Ok(out)
}

fn axioms(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let tol = cfg.tolerances.green11;
    let win = inner_window(&g);
    let samples: Vec<Section11> =
        (0..cfg.trials.sections).map(|_| sampling::random_section11(rng, &g, win, None)).collect();
    let mut out = Vec::new();
    let mut exact = Worst::default();
    for (side, name) in SIDES {
        let (mut pg, mut gp, mut leak) = (Worst::default(), Worst::default(), Worst::default());
        for f in &samples {
            let gf = green11(f, side)?;
            pg.add(rel(&apply_p11(&gf)?, f)?);
            gp.add(rel(&green11(&apply_p11(f)?, side)?, f)?);
            leak.add(leakage(f, &gf, side));
        }
        out.push(Check::bound(format!("P∘G = id ({name})"), pg.0, tol));
        out.push(Check::bound(format!("G∘P = id ({name})"), gp.0, tol));
        out.push(Check::bound(format!("support leakage in cells ({name})"), leak.0, cfg.tolerances.leakage_cells));
    }
    for f in &samples {
        let pf = apply_p11(f)?;
        let gpf = green11(&pf, Side::Retarded)?.axpy(-1.0, &green11(&pf, Side::Advanced)?)?;
        exact.add(gpf.norm() / f.norm());
    }
    out.push(Check::bound("‖G(PF)‖/‖F‖", exact.0, tol));
    Ok(out)
}

fn homogeneous_pairs(cfg: &SuiteConfig, rng: &mut SuiteRng, g: &Grid1) -> Vec<(Section11, Section11)> {
    let win = inner_window(g);
    (0..cfg.trials.sections)
        .map(|_| {
            let (p1, p2) = (random_parity(rng), random_parity(rng));
            let a = sampling::random_section11(rng, g, win, Some(p1));
            let b = sampling::random_section11(rng, g, win, Some(p2));
            (a, b)
        })
        .collect()
}

fn parity_sign(s: &Section11) -> f64 {
    match s.parity() {
        Some(Parity::Odd) => -1.0,
        _ => 1.0,
    }
}

fn adjointness(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let tol = cfg.tolerances.green11;
    let pairs = homogeneous_pairs(cfg, rng, &g);
    let mut selfadj = Worst::default();
    let mut green = [Worst::default(), Worst::default()];
    let mut sym = Worst::default();
    for (a, b) in &pairs {
        let lhs = pair11(a, &apply_p11(b)?)?;
        let rhs = parity_sign(a) * pair11(&apply_p11(a)?, b)?;
        selfadj.add(gap(lhs, rhs));
        for (k, (side, _)) in SIDES.iter().enumerate() {
            let lhs = pair11(a, &green11(b, *side)?)?;
            let rhs = -parity_sign(a) * pair11(&green11(a, side.opposite())?, b)?;
            green[k].add(gap(lhs, rhs));
        }
        let koszul = if parity_sign(a) < 0.0 && parity_sign(b) < 0.0 { -1.0 } else { 1.0 };
        sym.add((pair11(a, b)? - koszul * pair11(b, a)?).abs());
    }
    Ok(vec![
        Check::bound("⟨F1, PF2⟩ = (−1)^|F1| ⟨PF1, F2⟩", selfadj.0, tol),
        Check::bound("⟨F1, G⁺F2⟩ = (−1)^(|F1|+1) ⟨G⁻F1, F2⟩", green[0].0, tol),
        Check::bound("⟨F1, G⁻F2⟩ = (−1)^(|F1|+1) ⟨G⁺F1, F2⟩", green[1].0, tol),
        Check::bound("pairing graded symmetry", sym.0, cfg.tolerances.quadrature),
    ])
}

fn uniqueness(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let win = inner_window(&g);
    let mut out = Vec::new();
    for (side, name) in SIDES {
        let mut w = Worst::default();
        for _ in 0..cfg.trials.sections {
            let h = sampling::random_profile(rng, &g, win);
            let a = green_dt2(&h, g.t0, g.dt(), side);
            let b = green_dt2_numerov(&h, g.dt(), side);
            let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let diff = a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            w.add(diff / scale);
        }
        out.push(Check::bound(format!("G∂t² kernel vs Numerov ({name})"), w.0, cfg.tolerances.green11));
    }
    Ok(out)
}

fn pair_examples(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let unit = Grid1::new(0.0, 1.0, cfg.model11.points)?;
    let one = Section11::from_fns(unit, |_| 1.0, |_| 0.0);
    let theta = Section11::from_fns(unit, |_| 0.0, |_| 1.0);
    let g = grid(cfg)?;
    let win = inner_window(&g);
    let mut w = Worst::default();
    for _ in 0..cfg.trials.sections {
        let a = sampling::random_section11(rng, &g, win, None);
        let b = sampling::random_section11(rng, &g, win, None);
        let integrand: Vec<f64> = (0..g.n).map(|i| a.f()[i] * b.h()[i] + a.h()[i] * b.f()[i]).collect();
        let oracle = trapezoid_oracle(&integrand, g.dt()).last().copied().unwrap_or(0.0);
        let scale = integrand.iter().map(|x| x.abs()).sum::<f64>() * g.dt();
        w.add((pair11(&a, &b)? - oracle).abs() / scale.max(f64::MIN_POSITIVE));
    }
    Ok(vec![
        Check::exact("⟨1, 1⟩ = 0 on [0,1]", pair11(&one, &one)?),
        Check::bound("⟨θ, 1⟩ = 1 on [0,1]", pair11(&theta, &one)? - 1.0, cfg.tolerances.quadrature),
        Check::bound("pairing vs trapezoid oracle", w.0, cfg.tolerances.quadrature),
    ])
}

fn pullback_examples(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let big = padded(&g)?;
    let tol = cfg.tolerances.green11;
    let mid = 0.5 * (g.t0 + g.t1);
    let sigma = 0.05 * (g.t1 - g.t0);
    let bump = |t: f64| gaussian(t, mid, sigma);
    let dbump = |t: f64| -(t - mid) / (sigma * sigma) * gaussian(t, mid, sigma);
    let mut out = Vec::new();

    let f = GrassmannSection11::unit(0, &Section11::from_fns(g, bump, |t| 0.5 * bump(t)));
    let id = pullback11(&Morphism11::identity(0, g), &f)?;
    out.push(Check::exact("identity pull-back", id.max_abs_diff(&f)));

    let c = 0.25f64.min(big.t1 - g.t1);
    let narrow = 0.4 * sigma;
    let shifted = GrassmannSection11::unit(0, &Section11::from_fns(big, |t| gaussian(t, mid + c, narrow), |_| 0.0));
    let got = pullback11(&Morphism11::translation(0, c, g, big)?, &shifted)?;
    let want = Section11::from_fns(g, |t| gaussian(t, mid, narrow), |_| 0.0);
    out.push(Check::bound("pure shift vs resampled profile", rel(&got.component(0), &want)?, tol));

    let zeta = GrassmannElement::generator(1, 1);
    let m = Morphism11::new(GrassmannElement::zero(1, Field::Real), zeta, g, g)?;
    let got = pullback11(&m, &GrassmannSection11::unit(1, &Section11::from_fns(g, bump, |_| 0.0)))?;
    let e0 = Section11::from_fns(g, bump, |_| 0.0);
    let e1 = Section11::from_fns(g, |_| 0.0, |t| -dbump(t));
    let r = rel(&got.component(0), &e0)?.max(rel(&got.component(1), &e1)?);
    out.push(Check::bound("ζ-pull-back of f is 1⊗f + ζ⊗(−θ∂f)", r, tol));
    Ok(out)
}

fn pushforward(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let big = padded(&g)?;
    let tol = cfg.tolerances.pushforward;
    let win = inner_window(&g);
    let (mut inv, mut adj, mut ber) = (Worst::default(), Worst::default(), Worst::default());
    let mut identity = Worst::default();
    for t in 0..cfg.trials.sections {
        let n = 1 + t % 2;
        let m = crate::enriched::random_morphism11(rng, n, g, big);
        let c = m.c();
        let h = sampling::random_grassmann_section11(rng, n, &g, win);
        identity.add(pushforward11(&Morphism11::identity(n, g), &h)?.max_abs_diff(&h));

        let pushed = pushforward11(&m, &h)?;
        let back = pullback11(&m, &pushed)?;
        inv.add(back.max_abs_diff(&h) / h.max_abs());

        let big_win = (win.0 + c, win.1 + c);
        let h1 = sampling::random_grassmann_section11(rng, n, &big, big_win);
        let lhs = pair11_rel(&h1, &pushed)?;
        let rhs = pair11_rel(&pullback11(&m, &h1)?, &h)?;
        adj.add(lhs.max_abs_diff(&rhs) / lhs.max_abs().max(rhs.max_abs()));

        let h2 = sampling::random_grassmann_section11(rng, n, &big, big_win);
        let lhs = pair11_rel(&pullback11(&m, &h1)?, &pullback11(&m, &h2)?)?;
        let rhs = pair11_rel(&h1, &h2)?;
        ber.add(lhs.max_abs_diff(&rhs) / lhs.max_abs().max(rhs.max_abs()));
    }

    let mid = 0.5 * (g.t0 + g.t1);
    let sigma = 0.05 * (g.t1 - g.t0);
    let c = 0.125f64.min(big.t1 - g.t1);
    let f = |t: f64| gaussian(t, mid, sigma);
    let df = |t: f64| -(t - mid) / (sigma * sigma) * gaussian(t, mid, sigma);
    let hh = |t: f64| 0.5 * gaussian(t, mid + 0.5 * sigma, sigma);
    let m = Morphism11::new(GrassmannElement::real_scalar(1, c), GrassmannElement::generator(1, 1), g, big)?;
    let pushed = pushforward11(&m, &GrassmannSection11::unit(1, &Section11::from_fns(g, f, hh)))?;
    let e0 = Section11::from_fns(big, |t| f(t - c), |t| hh(t - c));
    let e1 = Section11::from_fns(big, |t| -hh(t - c), |t| df(t - c));
    let closed = rel(&pushed.component(0), &e0)?.max(rel(&pushed.component(1), &e1)?);

    Ok(vec![
        Check::exact("identity push-forward", identity.0),
        Check::bound("χ*∘χ₊ = id", inv.0, tol),
        Check::bound("push-forward equals pull-back by (−c, −ζ)", closed, cfg.tolerances.green11),
        Check::bound("⟨F1, χ₊F2⟩ = ⟨χ*F1, F2⟩", adj.0, tol),
        Check::bound("pull-back preserves the Berezin pairing", ber.0, tol),
    ])
}

/// χ*∘G_{M′}∘χ₊ = G_M for translations into a larger interval.
fn green_naturality(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let big = padded(&g)?;
    let win = inner_window(&g);
    let mut out = Vec::new();
    for (side, name) in SIDES {
        let mut w = Worst::default();
        for _ in 0..cfg.trials.sections.min(4) {
            let c = rng.gen_range(g.t0 - big.t0..=big.t1 - g.t1) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let m = Morphism11::translation(0, c, g, big)?;
            let f = sampling::random_section11(rng, &g, win, None);
            let pushed = pushforward11(&m, &GrassmannSection11::unit(0, &f))?.component(0);
            let round = pullback11(&m, &GrassmannSection11::unit(0, &green11(&pushed, side)?))?.component(0);
            w.add(rel(&round, &green11(&f, side)?)?);
        }
        out.push(Check::bound(
            format!("Green's operator commutes with translation ({name})"),
            w.0,
            cfg.tolerances.green11,
        ));
    }
    Ok(out)
}
