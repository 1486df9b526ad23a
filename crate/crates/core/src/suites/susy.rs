//! Supersymmetry: the generator Q, its action Q̂ on observables, τ invariance,
//! SUSY morphisms, their composition and enriched naturality.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;

use super::{group, Worst};
use crate::config::SuiteConfig;
use crate::dynamics::{tau, FieldTheory};
use crate::enriched::default_naturality_checks;
use crate::error::Result;
use crate::grassmann::{Field, GrassmannElement, Parity};
use crate::model11::{apply_p11, pullback11, susy_q, GrassmannSection11, Grid1, Morphism11, Section11, Theory11};
use crate::model32::gamma::{gamma_spinor, lower_spinor};
use crate::model32::{
    pullback32, q_b, stencil, GrassmannSection32, Grid32, Morphism32, Section32, Theory32, ETA, PHI, PSI1, PSI2,
};
use crate::numerics::gaussian;
use crate::quantize::{Algebra, AlgebraElement};
use crate::report::Check;
use crate::sampling::{self, SuiteRng};

pub fn run(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(group("Q on 1|1 sections", || q11(cfg, rng)));
    out.extend(group("1|1 SUSY morphism", || morphism11(cfg, rng)));
    out.extend(group("1|1 Q̂ components", || qhat11(cfg, rng)));
    out.extend(group("3|2 Q̂ components", || qhat32(cfg)));
    out.extend(group("τ SUSY invariance", || invariance(cfg, rng)));
    out.extend(group("composition closure", || closure(cfg, rng)));
    out.extend(group("enriched naturality", || naturality(cfg)));
    out
}

fn grid11(cfg: &SuiteConfig) -> Result<Grid1> {
    Grid1::new(cfg.model11.t0, cfg.model11.t1, cfg.model11.points)
}

fn grid32(cfg: &SuiteConfig) -> Result<Grid32> {
    let n = cfg.model32.small;
    Grid32::new(2 * n, n, n, 0.0, cfg.model32.length, cfg.model32.length, cfg.model32.cfl)
}

/// Gaussian g with g′ and g″ in closed form.
#[derive(Clone, Copy)]
struct Gauss {
    c: f64,
    s: f64,
    a: f64,
}

impl Gauss {
    fn random(rng: &mut SuiteRng, g: &Grid1) -> Self {
        let l = g.t1 - g.t0;
        Gauss { c: g.t0 + rng.gen_range(0.35..0.65) * l, s: rng.gen_range(0.03..0.06) * l, a: rng.gen_range(0.5..1.5) }
    }

    fn v(&self, t: f64) -> f64 {
        self.a * gaussian(t, self.c, self.s)
    }

    fn d(&self, t: f64) -> f64 {
        -(t - self.c) / (self.s * self.s) * self.v(t)
    }
}

fn rel11(a: &Section11, b: &Section11) -> f64 {
    let d = a.axpy(-1.0, b).expect("same grid").norm();
    d / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn q11(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid11(cfg)?;
    let tol = cfg.tolerances.susy;
    let constant = Section11::from_fns(g, |_| 0.0, |_| 1.5);
    let qc = susy_q(&constant);
    let (mut even, mut qq, mut anti) = (Worst::default(), Worst::default(), Worst::default());
    for _ in 0..cfg.trials.sections {
        let (f, h) = (Gauss::random(rng, &g), Gauss::random(rng, &g));
        let fe = Section11::from_fns(g, |t| f.v(t), |_| 0.0);
        even.add(rel11(&susy_q(&fe), &Section11::from_fns(g, |_| 0.0, |t| -f.d(t))));

        let s = Section11::from_fns(g, |t| f.v(t), |t| h.v(t));
        qq.add(rel11(&susy_q(&susy_q(&s)), &Section11::from_fns(g, |t| -f.d(t), |t| -h.d(t))));

        let qp = susy_q(&apply_p11(&s)?);
        let pq = apply_p11(&susy_q(&s))?;
        anti.add(qp.axpy(1.0, &pq)?.norm() / qp.norm().max(pq.norm()));
    }
    Ok(vec![
        Check::exact("Q(θ·1.5) = 1.5", qc.max_abs_diff(&Section11::from_fns(g, |_| 1.5, |_| 0.0))),
        Check::bound("Q(f) = −θ∂ₜf", even.0, tol),
        Check::bound("Q∘Q = −∂ₜ", qq.0, tol),
        Check::bound("{Q, P} = 0", anti.0, tol),
    ])
}

/// χ* = 1 + ζQ for the pure supertranslation with c = 0.
fn morphism11(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid11(cfg)?;
    let zeta = GrassmannElement::generator(1, 1);
    let m = Morphism11::new(GrassmannElement::zero(1, Field::Real), zeta, g, g)?;
    let (mut body, mut soul) = (Worst::default(), Worst::default());
    for _ in 0..cfg.trials.sections {
        let (f, h) = (Gauss::random(rng, &g), Gauss::random(rng, &g));
        let s = Section11::from_fns(g, |t| f.v(t), |t| h.v(t));
        let out = pullback11(&m, &GrassmannSection11::unit(1, &s))?;
        body.add(out.component(0).max_abs_diff(&s));
        soul.add(rel11(&out.component(1), &Section11::from_fns(g, |t| h.v(t), |t| -f.d(t))));
    }
    Ok(vec![
        Check::exact("χ*(1⊗F) has body 1⊗F", body.0),
        Check::bound("χ*(1⊗F) has ζ-part h − θ∂ₜf", soul.0, cfg.tolerances.susy),
    ])
}

fn single(e: &AlgebraElement) -> u32 {
    e.terms().next().and_then(|(w, _)| w.first().copied()).expect("single letter")
}

/// Σ c·Fᵢ for an element made of single letters with scalar coefficients.
fn image_section<T: FieldTheory>(alg: &Algebra<T>, e: &AlgebraElement, zero: T::Section) -> Result<T::Section>
where
    T::Section: PartialEq,
{
    let mut acc = zero;
    for (w, poly) in e.terms() {
        assert!(w.len() == 1, "expected a linear combination of generators");
        for (m, c) in poly {
            assert!(m.is_empty(), "expected scalar coefficients");
            acc = alg.theory().axpy(&acc, c.body().re, &alg.generator(w[0]).section)?;
        }
    }
    Ok(acc)
}

fn leibniz<T: FieldTheory>(alg: &Algebra<T>, ids: &[u32], images: &HashMap<u32, AlgebraElement>) -> Result<f64>
where
    T::Section: PartialEq,
{
    let mut scale: f64 = 0.0;
    for i in 0..alg.generators().len() as u32 {
        for j in 0..alg.generators().len() as u32 {
            scale = scale.max(alg.tau_value(i, j).abs());
        }
    }
    let n = alg.n();
    let mut w = Worst::default();
    for &i in ids {
        for &j in ids {
            let (a, b) = (AlgebraElement::letter(n, i), AlgebraElement::letter(n, j));
            let lhs = alg.susy_hat(&alg.mul(&a, &b)?, images)?;
            let sign = if alg.generator(i).parity == Parity::Odd { -1.0 } else { 1.0 };
            let rhs = alg.mul(&images[&i], &b)?.axpy(Complex64::new(sign, 0.0), &alg.mul(&a, &images[&j])?);
            w.add(alg.evaluate(&lhs).max_abs_diff(&alg.evaluate(&rhs)) / scale);
        }
    }
    Ok(w.0)
}

fn qhat11(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid11(cfg)?;
    let tol = cfg.tolerances.susy;
    let mut alg = Algebra::new(Theory11, 1);
    let (f, h) = (Gauss::random(rng, &g), Gauss::random(rng, &g));
    let psi = alg.field(&Section11::from_fns(g, |t| f.v(t), |_| 0.0))?;
    let phi = alg.field(&Section11::from_fns(g, |_| 0.0, |t| h.v(t)))?;
    let ids = [single(&psi), single(&phi)];
    let images = alg.susy_images(&ids, |s| Ok(susy_q(s)))?;
    let q_psi = image_section(&alg, &images[&ids[0]], Section11::zero(g))?;
    let q_phi = image_section(&alg, &images[&ids[1]], Section11::zero(g))?;
    let unit = alg.susy_hat(&AlgebraElement::unit(1), &images)?;
    Ok(vec![
        Check::holds("Q̂(𝟙) = 0", unit.is_zero()),
        Check::bound("Q̂ψ(f) = φ(∂ₜf)", rel11(&q_psi, &Section11::from_fns(g, |_| 0.0, |t| f.d(t))), tol),
        Check::bound("Q̂φ(h) = −ψ(h)", rel11(&q_phi, &Section11::from_fns(g, |t| -h.v(t), |_| 0.0)), tol),
        Check::bound("1|1 graded Leibniz rule on two-letter words", leibniz(&alg, &ids, &images)?, tol),
    ])
}

fn rel32(a: &Section32, b: &Section32) -> f64 {
    a.max_abs_diff(b) / a.max_abs().max(b.max_abs()).max(f64::MIN_POSITIVE)
}

fn one_slot(g: Grid32, comps: &[(usize, Vec<f64>)]) -> Result<Section32> {
    let mut out: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; g.len()]);
    for (k, v) in comps {
        out[*k] = v.clone();
    }
    Section32::from_components(g, out)
}

/// Component generators under φ(f) = Φ(f·θ²/2), ψ(ρ) = Φ(ρ_aθ^a), η(h) = Φ(h).
fn qhat32(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = grid32(cfg)?;
    let half = 0.3 * (g.t_end() - g.t0);
    let th = Theory32 { mass: cfg.model32.mass };
    let field = |p: (f64, f64)| sampling::compact_field32(&g, p, half);
    let (f, rho, h) = (field((0.3, 1.1)), [field((2.0, 0.4)), field((4.1, 2.7))], field((1.7, 5.2)));
    let tol = cfg.tolerances.laws;
    let mut out = Vec::new();
    for b in [[1.0, 0.0], [0.5, -1.25]] {
        let bl = lower_spinor(b);
        let mut alg = Algebra::new(th, 1);
        let e_phi = alg.field(&one_slot(g, &[(ETA, f.clone())])?)?;
        let e_psi = alg.field(&one_slot(g, &[(PSI1, rho[0].clone()), (PSI2, rho[1].clone())])?)?;
        let e_eta = alg.field(&one_slot(g, &[(PHI, h.clone())])?)?;
        let ids = [single(&e_phi), single(&e_psi), single(&e_eta)];
        let images = alg.susy_images(&ids, |s| Ok(q_b(s, b)))?;
        let img = |k: usize| image_section(&alg, &images[&ids[k]], Section32::zero(g));

        let want_phi = one_slot(
            g,
            &[(PSI1, f.iter().map(|x| x * bl[0]).collect()), (PSI2, f.iter().map(|x| x * bl[1]).collect())],
        )?;

        let brho: Vec<f64> = (0..g.len()).map(|p| b[0] * rho[0][p] + b[1] * rho[1][p]).collect();
        let d = stencil::dirac(&g, [&rho[0], &rho[1]]);
        let bd: Vec<f64> = (0..g.len()).map(|p| b[0] * d[0][p] + b[1] * d[1][p]).collect();
        let want_psi = one_slot(g, &[(PHI, brho.iter().map(|x| -x).collect()), (ETA, bd.clone())])?;
        let literal_psi = one_slot(g, &[(PHI, brho), (ETA, bd)])?;

        let hb = [h.iter().map(|x| x * bl[0]).collect::<Vec<f64>>(), h.iter().map(|x| x * bl[1]).collect()];
        let dh = stencil::dirac(&g, [&hb[0], &hb[1]]);
        let want_eta =
            one_slot(g, &[(PSI1, dh[0].iter().map(|x| -x).collect()), (PSI2, dh[1].iter().map(|x| -x).collect())])?;

        let tag = format!("B = ({}, {})", b[0], b[1]);
        let q_psi = img(1)?;
        out.push(Check::bound(format!("3|2 Q̂φ(f) = ψ(fB), {tag}"), rel32(&img(0)?, &want_phi), tol));
        out.push(Check::bound(format!("3|2 Q̂ψ(ρ) = φ(B·i∇̸ρ) − η(B·ρ), {tag}"), rel32(&q_psi, &want_psi), tol));
        out.push(
            Check::info(format!("3|2 Q̂ψ(ρ) vs the +η(B·ρ) sign, {tag}"), rel32(&q_psi, &literal_psi))
                .with_note("the + sign makes Q̂² act with opposite signs on φ and η"),
        );
        out.push(Check::bound(format!("3|2 Q̂η(h) = −ψ(i∇̸(hB)), {tag}"), rel32(&img(2)?, &want_eta), tol));
    }
    Ok(out)
}

fn parity_of(odd: bool) -> Parity {
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Compact random section times a random quadratic profile in time, so the
/// samples carry no time-reflection symmetry.
fn time_weighted32(rng: &mut SuiteRng, g: &Grid32, half: f64) -> Section32 {
    let tc = 0.5 * (g.t0 + g.t_end());
    let (a, b) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    sampling::random_section32(rng, g, Some(half)).map_time(|t| {
        let x = (t - tc) / half;
        1.0 + a * x + b * x * x
    })
}

/// |τ(QF₁, F₂) + (−1)^{|F₁|}τ(F₁, QF₂)| relative to the larger term.
fn invariance_residual<T: FieldTheory>(
    th: &T,
    q: impl Fn(&T::Section) -> T::Section,
    a: &T::Section,
    b: &T::Section,
    a_odd: bool,
) -> Result<Option<f64>> {
    let x = tau(th, &q(a), b)?;
    let y = tau(th, a, &q(b))?;
    let sign = if a_odd { -1.0 } else { 1.0 };
    let scale = x.abs().max(y.abs());
    Ok((scale > 0.0).then(|| (x + sign * y).abs() / scale))
}

fn invariance(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid11(cfg)?;
    let l = g.t1 - g.t0;
    let win = (g.t0 + 0.1 * l, g.t1 - 0.1 * l);
    let mut w11 = Worst::default();
    let mut n11 = 0usize;
    for _ in 0..cfg.trials.sections {
        let odd = rng.gen_bool(0.5);
        let a = sampling::random_section11(rng, &g, win, Some(parity_of(odd)));
        let b = sampling::random_section11(rng, &g, win, Some(parity_of(!odd)));
        if let Some(r) = invariance_residual(&Theory11, susy_q, &a, &b, odd)? {
            w11.add(r);
            n11 += 1;
        }
    }
    let th = Theory32 { mass: cfg.model32.mass };
    let pairs: Vec<([f64; 2], bool, u64)> = (0..cfg.trials.sections)
        .map(|_| ([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)], rng.gen_bool(0.5), rng.gen()))
        .collect();
    let n = cfg.model32.small;
    let mut levels = Vec::new();
    for side in [n / 2, n, 2 * n] {
        let g32 = Grid32::new(2 * side, side, side, 0.0, cfg.model32.length, cfg.model32.length, cfg.model32.cfl)?;
        let half = 0.3 * (g32.t_end() - g32.t0);
        let mut w32 = Worst::default();
        for &(b, odd, seed) in &pairs {
            let mut local = sampling::rng(seed);
            let s1 = time_weighted32(&mut local, &g32, half);
            let s2 = time_weighted32(&mut local, &g32, half);
            let s1 = if odd { s1.odd_part() } else { s1.even_part() };
            if let Some(r) = invariance_residual(&th, |s| q_b(s, b), &s1, &s2, odd)? {
                w32.add(r);
            }
        }
        levels.push((side, w32.0));
    }
    let mut out = vec![Check::bound(
        format!("1|1 τ(QF₁, F₂) + (−1)^|F₁| τ(F₁, QF₂) = 0 ({n11} pairs)"),
        w11.0,
        cfg.tolerances.susy,
    )];
    for &(side, r) in &levels {
        let name =
            format!("3|2 τ(Q_B F₁, F₂) + (−1)^|F₁| τ(F₁, Q_B F₂) at {}×{side}² ({} pairs)", 2 * side, pairs.len());
        if side == n {
            out.push(Check::bound(name, r, cfg.tolerances.susy).with_note("centered stencils leave an O(h²) defect"));
        } else {
            out.push(Check::info(name, r));
        }
    }
    for w in levels.windows(2) {
        let order = (w[0].1 / w[1].1).log2();
        out.push(Check::bound(
            format!("3|2 τ SUSY invariance order {}→{}", w[0].0, w[1].0),
            order - 2.0,
            cfg.tolerances.dirac_order,
        ));
    }
    Ok(out)
}

fn closure(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let tol = cfg.tolerances.susy;
    let g = grid11(cfg)?;
    let l = g.t1 - g.t0;
    let (z1, z2) = (GrassmannElement::generator(2, 1), GrassmannElement::generator(2, 2).scale_real(0.75));
    let zero = GrassmannElement::zero(2, Field::Real);
    let m1 = Morphism11::new(zero.clone(), z1.clone(), g, g)?;
    let m2 = Morphism11::new(zero, z2.clone(), g, g)?;
    let comp = Morphism11::compose(&m2, &m1)?;
    let nil = -&(&z2 * &z1);
    let mut w11 = Worst::default();
    for _ in 0..cfg.trials.sections {
        let h = sampling::random_grassmann_section11(rng, 2, &g, (g.t0 + 0.2 * l, g.t1 - 0.2 * l));
        let a = pullback11(&comp, &h)?;
        let b = pullback11(&m1, &pullback11(&m2, &h)?)?;
        w11.add(a.axpy(-1.0, &b)?.norm() / a.norm().max(b.norm()));
    }

    let g32 = grid32(cfg)?;
    let half = 0.3 * (g32.t_end() - g32.t0);
    let (b1, b2) = ([1.0, 0.0], [0.5, -1.25]);
    let p1 = Morphism32::susy(&GrassmannElement::generator(2, 1), b1, g32)?;
    let p2 = Morphism32::susy(&GrassmannElement::generator(2, 2), b2, g32)?;
    let c32 = Morphism32::compose(&p2, &p1)?;
    let mut w32 = Worst::default();
    for _ in 0..cfg.trials.naturality {
        let h: GrassmannSection32 = sampling::random_grassmann_section32(rng, 2, &g32, Some(half));
        let a = pullback32(&c32, &h)?;
        let b = pullback32(&p1, &pullback32(&p2, &h)?)?;
        w32.add(a.axpy(-1.0, &b)?.norm() / a.norm().max(b.norm()));
    }
    // a^α = −iε₂^aγ^α_{ab}ε₁^b with εₖ = ζₖBₖ
    let z21 = &GrassmannElement::generator(2, 2) * &GrassmannElement::generator(2, 1);
    let mut bracket = Worst::default();
    for alpha in 0..3 {
        let gs = gamma_spinor(alpha);
        let mut c = Complex64::new(0.0, 0.0);
        for a in 0..2 {
            for b in 0..2 {
                c += Complex64::new(0.0, -1.0) * b2[a] * gs[(a, b)] * b1[b];
            }
        }
        bracket.add(c.im.abs());
        let want = z21.scale_real(c.re);
        bracket.add((&c32.translation[alpha] - &want).max_abs());
    }
    let spinor_ok = (0..2).all(|a| c32.spinor[a] == &p1.spinor[a] + &p2.spinor[a]);
    Ok(vec![
        Check::holds(
            "1|1 composite shift is −ζ₂ζ₁, composite ζ is ζ₁ + ζ₂",
            comp.shift == nil && comp.susy == &z1 + &z2,
        ),
        Check::bound("1|1 (χ₂∘χ₁)* = χ₁*∘χ₂* on sections", w11.0, tol),
        Check::exact("3|2 composite translation = −iε₂γε₁", bracket.0),
        Check::holds("3|2 composite spinor is ε₁ + ε₂", spinor_ok),
        Check::bound("3|2 (χ₂∘χ₁)* = χ₁*∘χ₂* on sections", w32.0, tol),
    ])
}

fn naturality(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let reports = default_naturality_checks(cfg.seed, cfg.trials.naturality)?;
    let tols = [cfg.tolerances.translation, cfg.tolerances.naturality11, cfg.tolerances.naturality32];
    let names = ["translation naturality", "1|1 ζ ≠ 0 naturality", "3|2 ζ ≠ 0 naturality"];
    Ok(reports
        .iter()
        .zip(tols.iter().zip(names))
        .map(|(r, (&tol, name))| Check::bound(format!("{name} ({} samples, Λ{})", r.samples, r.n), r.max_residual, tol))
        .collect())
}
