//! The bilinear τ: closed forms, symmetry class, causal disjointness,
//! time-slice representatives and invariance under push-forward.

use rand::Rng;

use super::{gap, group, Worst};
use crate::config::SuiteConfig;
use crate::dynamics::{causally_disjoint, tau, tau_symmetry_sign, timeslice_representative, weak_probe, FieldTheory};
use crate::error::Result;
use crate::grassmann::Parity;
use crate::model11::{apply_p11, pushforward11, GrassmannSection11, Grid1, Morphism11, Section11, Theory11};
use crate::model32::{spacetime_bump, Grid32, Section32, Theory32, PHI};
use crate::report::Check;
use crate::sampling::{self, SuiteRng};

pub fn run(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(group("tau11 closed forms", || closed_forms(cfg, rng)));
    out.extend(group("tau symmetry", || symmetry(cfg, rng)));
    out.extend(group("causal disjointness", || disjointness(cfg)));
    out.extend(group("time-slice representative", || timeslice(cfg, rng)));
    out.extend(group("tau push-forward", || pushforward_invariance(cfg, rng)));
    out
}

fn grid(cfg: &SuiteConfig) -> Result<Grid1> {
    Grid1::new(cfg.model11.t0, cfg.model11.t1, cfg.model11.points)
}

fn inner_window(g: &Grid1) -> (f64, f64) {
    let l = g.t1 - g.t0;
    (g.t0 + 0.1 * l, g.t1 - 0.1 * l)
}

/// Composite trapezoid weights.
fn weights(g: &Grid1) -> Vec<f64> {
    let mut w = vec![g.dt(); g.n];
    w[0] *= 0.5;
    w[g.n - 1] *= 0.5;
    w
}

/// ∬ k(t, s) a(s) b(t) ds dt by the tensor trapezoid rule.
fn double_quadrature(g: &Grid1, a: &[f64], b: &[f64], k: impl Fn(f64, f64) -> f64) -> f64 {
    let (w, ts) = (weights(g), g.times());
    let mut acc = 0.0;
    for (i, &t) in ts.iter().enumerate() {
        if b[i] == 0.0 {
            continue;
        }
        let inner: f64 = ts.iter().enumerate().filter(|(j, _)| a[*j] != 0.0).map(|(j, &s)| w[j] * k(t, s) * a[j]).sum();
        acc += w[i] * b[i] * inner;
    }
    acc
}

fn closed_forms(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let win = inner_window(&g);
    let th = Theory11;
    let tol = cfg.tolerances.tau11;
    let (mut ee, mut oo, mut lit, mut mixed) = (Worst::default(), Worst::default(), Worst::default(), Worst::default());
    for _ in 0..cfg.trials.sections {
        let f1 = sampling::random_section11(rng, &g, win, Some(Parity::Even));
        let f2 = sampling::random_section11(rng, &g, win, Some(Parity::Even));
        ee.add(gap(tau(&th, &f1, &f2)?, double_quadrature(&g, f1.f(), f2.f(), |_, _| 1.0)));

        let h1 = sampling::random_section11(rng, &g, win, Some(Parity::Odd));
        let h2 = sampling::random_section11(rng, &g, win, Some(Parity::Odd));
        let got = tau(&th, &h1, &h2)?;
        oo.add(gap(got, double_quadrature(&g, h1.h(), h2.h(), |t, s| t - s)));
        lit.add(gap(got, double_quadrature(&g, h1.h(), h2.h(), |t, s| (t - s).abs())));

        let scale = f1.norm() * h1.norm();
        mixed.add(tau(&th, &f1, &h1)?.abs().max(tau(&th, &h1, &f1)?.abs()) / scale);
    }
    let zero = tau(&th, &sampling::random_section11(rng, &g, win, None), &Section11::zero(g))?;
    Ok(vec![
        Check::exact("τ(F, 0) = 0", zero),
        Check::bound("τ(f1, f2) = ∫f1·∫f2", ee.0, tol),
        Check::bound("τ(θh1, θh2) = ∬(t−s)h1(s)h2(t)", oo.0, tol),
        Check::info("τ(θh1, θh2) vs the |t−s| kernel (expected mismatch)", lit.0)
            .with_note("the |t−s| kernel is symmetric, incompatible with the odd-odd sign of a super-symmetric τ"),
        Check::bound("mixed parity τ = 0", mixed.0, cfg.tolerances.tau_symmetry),
    ])
}

fn homogeneous<T: FieldTheory>(th: &T, s: &T::Section, odd: bool) -> T::Section {
    let [e, o] = th.split_parity(s);
    if odd {
        o
    } else {
        e
    }
}

fn symmetry_class<T: FieldTheory>(th: &T, samples: &[T::Section], rng: &mut SuiteRng) -> Result<f64> {
    let mut w = Worst::default();
    for pair in samples.chunks(2) {
        let [a, b] = pair else { continue };
        let (pa, pb) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let (a, b) = (homogeneous(th, a, pa), homogeneous(th, b, pb));
        let parity = |odd: bool| if odd { Parity::Odd } else { Parity::Even };
        let eps = tau_symmetry_sign(th, parity(pa), parity(pb));
        w.add(gap(tau(th, &a, &b)?, eps * tau(th, &b, &a)?));
    }
    Ok(w.0)
}

fn symmetry(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let win = inner_window(&g);
    let s11: Vec<Section11> =
        (0..2 * cfg.trials.sections).map(|_| sampling::random_section11(rng, &g, win, None)).collect();
    let r11 = symmetry_class(&Theory11, &s11, rng)?;

    let n = cfg.model32.small;
    let g32 = Grid32::square(2 * n, n, cfg.model32.length)?;
    let half = 0.3 * (g32.t_end() - g32.t0);
    let tc = 0.5 * (g32.t0 + g32.t_end());
    let s32: Vec<Section32> = (0..2 * cfg.trials.sections)
        .map(|_| {
            let (a, b) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            sampling::random_section32(rng, &g32, Some(half)).map_time(|t| {
                let x = (t - tc) / half;
                1.0 + a * x + b * x * x
            })
        })
        .collect();
    let r32 = symmetry_class(&Theory32 { mass: cfg.model32.mass }, &s32, rng)?;
    let tol = cfg.tolerances.tau_symmetry;
    Ok(vec![Check::bound("1|1 τ super-symmetric", r11, tol), Check::bound("3|2 τ super-skew", r32, tol)])
}

fn disjointness(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let th = Theory11;
    let l = g.t1 - g.t0;
    let a = Section11::even_bump(g, g.t0 + 0.3 * l, 0.02 * l, 1.0);
    let b = Section11::odd_bump(g, g.t0 + 0.7 * l, 0.02 * l, 1.0);

    let n = cfg.model32.small;
    let len = cfg.model32.length;
    let g32 = Grid32::square(2 * n, n, len)?;
    let tm = 0.5 * (g32.t0 + g32.t_end());
    let r = 0.0625 * len;
    let at = |x: f64| Section32::with_component(g32, PHI, spacetime_bump(&g32, [tm, x, 0.5 * len], r));
    let (p, q, p2) = (at(0.25 * len)?, at(0.75 * len)?, at(0.25 * len + 0.5 * r)?);
    let th32 = Theory32 { mass: cfg.model32.mass };
    Ok(vec![
        Check::holds("empty support is disjoint from anything", causally_disjoint(&th, &Section11::zero(g), &a)),
        Check::holds("1|1 nonzero sections are never disjoint", !causally_disjoint(&th, &a, &b)),
        Check::holds("3|2 equal-time bumps far apart are disjoint", causally_disjoint(&th32, &p, &q)),
        Check::holds("3|2 overlapping bumps are not disjoint", !causally_disjoint(&th32, &p, &p2)),
    ])
}

fn timeslice(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let th = Theory11;
    let l = g.t1 - g.t0;
    let slab = (g.t0 + 0.5 * l, g.t0 + 0.75 * l);
    let win = inner_window(&g);
    let tests: Vec<Section11> =
        (0..cfg.trials.probes).map(|_| sampling::random_section11(rng, &g, win, None)).collect();
    let tol = cfg.tolerances.tau11;
    let mut out = Vec::new();

    let inside = Section11::from_fns(
        g,
        |t| crate::numerics::gaussian(t, g.t0 + 0.62 * l, 0.01 * l),
        |t| crate::numerics::gaussian(t, g.t0 + 0.6 * l, 0.01 * l),
    );
    let rep = timeslice_representative(&th, &inside, slab)?;
    out.push(Check::bound("section inside the slab is its own representative", rep.max_abs_diff(&inside), 1e-8));

    let left_win = (g.t0 + 0.1 * l, g.t0 + 0.4 * l);
    let (mut class, mut confined) = (Worst::default(), true);
    for _ in 0..cfg.trials.naturality {
        let f = sampling::random_section11(rng, &g, left_win, None);
        let rep = timeslice_representative(&th, &f, slab)?;
        if let Some((i0, i1)) = rep.support() {
            confined &= g.t(i0) >= slab.0 - 1e-12 && g.t(i1) <= slab.1 + 1e-12;
        }
        let diff = f.axpy(-1.0, &rep)?;
        let (mut num, mut den) = (0.0f64, 0.0f64);
        for t in &tests {
            num = num.max(tau(&th, &diff, t)?.abs());
            den = den.max(tau(&th, &f, t)?.abs());
        }
        class.add(num / den);
    }
    out.push(Check::holds("representative supported in the slab", confined));
    out.push(Check::bound("representative has the same τ class", class.0, tol));

    let k = sampling::random_section11(rng, &g, left_win, None);
    let pk = apply_p11(&k)?;
    let rep = timeslice_representative(&th, &pk, slab)?;
    let gr = th.causal_propagator(&rep)?;
    out.push(Check::bound("P(K) has a representative with G(F′) ≈ 0", gr.norm() / pk.norm(), tol));

    let probes: Vec<Section11> =
        (0..2 * cfg.trials.probes).map(|_| sampling::random_section11(rng, &g, win, None)).collect();
    let wp = weak_probe(&th, &pk, &probes)?;
    out.push(Check::info("weak probe of P(K): max |τ|", wp.max_tau));
    out.push(Check::info("weak probe of P(K): ‖G(F)‖", wp.propagator_norm));
    Ok(out)
}

fn pushforward_invariance(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let pad = ((g.n - 1) / 8) as f64 * g.dt();
    let big = Grid1::with_spacing(g.t0 - pad, g.t1 + pad, g.dt())?;
    let win = inner_window(&g);
    let th = Theory11;
    let mut w = Worst::default();
    for _ in 0..cfg.trials.sections {
        let c = rng.gen_range(-pad..=pad);
        let m = Morphism11::translation(0, c, g, big)?;
        let f1 = sampling::random_section11(rng, &g, win, None);
        let f2 = sampling::random_section11(rng, &g, win, None);
        let push = |f: &Section11| pushforward11(&m, &GrassmannSection11::unit(0, f)).map(|h| h.component(0));
        w.add(gap(tau(&th, &push(&f1)?, &push(&f2)?)?, tau(&th, &f1, &f2)?));
    }
    Ok(vec![Check::bound("τ preserved by push-forward", w.0, cfg.tolerances.tau11)])
}
