//! The (anti)commutation-relation algebra: normal-form confluence, algebra
//! laws, relation spot-checks, weak equation of motion and causality.

use num_complex::Complex64;
use rand::Rng;

use super::{gap, group, Worst};
use crate::config::SuiteConfig;
use crate::dynamics::{tau, FieldTheory};
use crate::error::Result;
use crate::grassmann::{Field, GrassmannElement, Parity};
use crate::model11::{Grid1, Section11, Theory11};
use crate::model32::{spacetime_bump, Grid32, Section32, Theory32, ETA, PHI};
use crate::quantize::{raw_word, Algebra, AlgebraElement, Strategy};
use crate::report::Check;
use crate::sampling::{self, SuiteRng};

const LEVEL: usize = 2;
const MAX_WORD: usize = 6;

pub fn run(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    let mut out = Vec::new();
    let mut a11 = None;
    out.extend(group("quantize 1|1 setup", || {
        a11 = Some(algebra11(cfg, rng)?);
        Ok(Vec::new())
    }));
    let mut a32 = None;
    out.extend(group("quantize 3|2 setup", || {
        a32 = Some(algebra32(cfg, rng)?);
        Ok(Vec::new())
    }));
    if let Some(alg) = a11.as_mut() {
        out.extend(group("1|1 algebra laws", || laws(alg, "1|1", cfg, rng)));
        out.extend(group("1|1 relation", || relation(alg, "1|1", cfg.tolerances.laws)));
        out.extend(group("1|1 field", || field11(alg, cfg, rng)));
    }
    if let Some(alg) = a32.as_mut() {
        out.extend(group("3|2 algebra laws", || laws(alg, "3|2", cfg, rng)));
        out.extend(group("3|2 relation", || relation(alg, "3|2", cfg.tolerances.laws)));
        out.extend(group("3|2 field", || field32(alg, cfg, rng)));
    }
    out
}

fn grid11(cfg: &SuiteConfig) -> Result<Grid1> {
    Grid1::new(cfg.model11.t0, cfg.model11.t1, cfg.model11.points)
}

fn window11(g: &Grid1) -> (f64, f64) {
    let l = g.t1 - g.t0;
    (g.t0 + 0.1 * l, g.t1 - 0.1 * l)
}

fn grid32(cfg: &SuiteConfig) -> Result<Grid32> {
    let n = cfg.model32.small;
    Grid32::new(2 * n, n, n, 0.0, cfg.model32.length, cfg.model32.length, cfg.model32.cfl)
}

fn algebra11(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Algebra<Theory11>> {
    let g = grid11(cfg)?;
    let mut alg = Algebra::new(Theory11, LEVEL);
    for _ in 0..3 {
        alg.field(&sampling::random_section11(rng, &g, window11(&g), None))?;
    }
    Ok(alg)
}

fn algebra32(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Algebra<Theory32>> {
    let g = grid32(cfg)?;
    let half = 0.3 * (g.t_end() - g.t0);
    let mut alg = Algebra::new(Theory32 { mass: cfg.model32.mass }, LEVEL);
    let tc = 0.5 * (g.t0 + g.t_end());
    for k in 0..2 {
        let shift = 0.1 * k as f64 * half;
        let s = sampling::random_section32(rng, &g, Some(half)).map_time(|t| 1.0 + (t - tc - shift) / half);
        alg.field(&s)?;
    }
    Ok(alg)
}

fn ids<T: FieldTheory>(alg: &Algebra<T>) -> u32
where
    T::Section: PartialEq,
{
    alg.generators().len() as u32
}

fn random_word(rng: &mut SuiteRng, k: u32) -> Vec<u32> {
    let len = rng.gen_range(0..=MAX_WORD);
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

fn random_parity(rng: &mut SuiteRng) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Normal-ordered element with integer coefficients; homogeneous of the
/// requested parity when `parity` is given.
fn random_element<T: FieldTheory>(alg: &Algebra<T>, rng: &mut SuiteRng, parity: Option<Parity>) -> AlgebraElement
where
    T::Section: PartialEq,
{
    let k = ids(alg);
    let mut raw = AlgebraElement::zero(LEVEL);
    for _ in 0..rng.gen_range(1..=3) {
        let w: Vec<u32> = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..k)).collect();
        let cp = match parity {
            Some(p) => p.add(alg.word_parity(&w)),
            None => random_parity(rng),
        };
        let c = sampling::random_integer_complex(rng, LEVEL, cp, 2);
        raw = raw.add(&raw_word(LEVEL, &w, &c));
    }
    alg.normal_form(&raw, Strategy::LeftmostFirst)
}

fn mismatch(a: &AlgebraElement, b: &AlgebraElement) -> f64 {
    if a == b {
        0.0
    } else {
        1.0
    }
}

fn laws<T: FieldTheory>(alg: &Algebra<T>, model: &str, cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>>
where
    T::Section: PartialEq,
{
    let k = ids(alg);
    let mut confluence = 0usize;
    for _ in 0..cfg.trials.words {
        let w = random_word(rng, k);
        if alg.normal_form_word(&w, Strategy::LeftmostFirst) != alg.normal_form_word(&w, Strategy::RightmostFirst) {
            confluence += 1;
        }
    }
    let trials = (cfg.trials.words / 5).max(1);
    let (mut assoc, mut star, mut invol, mut parity, mut unit) = (0usize, 0usize, 0usize, 0usize, 0usize);
    let one = AlgebraElement::unit(LEVEL);
    for _ in 0..trials {
        let (a, b, c) =
            (random_element(alg, rng, None), random_element(alg, rng, None), random_element(alg, rng, None));
        if alg.mul(&alg.mul(&a, &b)?, &c)? != alg.mul(&a, &alg.mul(&b, &c)?)? {
            assoc += 1;
        }
        if alg.mul(&one, &a)? != a || alg.mul(&a, &one)? != a {
            unit += 1;
        }
        let (pa, pb) = (random_parity(rng), random_parity(rng));
        let (x, y) = (random_element(alg, rng, Some(pa)), random_element(alg, rng, Some(pb)));
        let lhs = alg.star(&alg.mul(&x, &y)?);
        let rhs = alg.mul(&alg.star(&y), &alg.star(&x))?.scale(Complex64::new(pa.koszul(pb), 0.0));
        star += mismatch(&lhs, &rhs) as usize;
        invol += mismatch(&alg.star(&alg.star(&x)), &x) as usize;
        let xy = alg.mul(&x, &y)?;
        if !xy.is_zero() && alg.element_parity(&xy) != Some(pa.add(pb)) {
            parity += 1;
        }
    }
    let hermitian = (0..k).all(|i| {
        let v = AlgebraElement::letter(LEVEL, i);
        alg.star(&v) == v
    });
    let count = |name: &str, failures: usize| Check::exact(format!("{model} {name}"), failures as f64);
    Ok(vec![
        count(&format!("normal-form confluence over {} words", cfg.trials.words), confluence),
        count("associativity", assoc),
        count("unit", unit),
        count("(ab)* = (−1)^|a||b| b*a*", star),
        count("a** = a", invol),
        count("|ab| = |a| + |b|", parity),
        Check::holds(format!("{model} 𝟙* = 𝟙"), alg.star(&one) == one),
        Check::holds(format!("{model} generators are hermitian"), hermitian),
    ])
}

/// Graded (anti)commutators of generators evaluate to βτ·𝟙, and the stored
/// τ table matches direct evaluation.
fn relation<T: FieldTheory>(alg: &Algebra<T>, model: &str, tol: f64) -> Result<Vec<Check>>
where
    T::Section: PartialEq,
{
    let th = alg.theory();
    let beta = th.beta();
    let k = ids(alg);
    let (mut rel, mut table) = (Worst::default(), Worst::default());
    let mut nonzero = false;
    for i in 0..k {
        for j in 0..k {
            let (a, b) = (AlgebraElement::letter(LEVEL, i), AlgebraElement::letter(LEVEL, j));
            let comm = alg.evaluate(&alg.graded_commutator(&a, &b)?);
            let t = alg.tau_value(i, j);
            let want = alg.evaluate(&AlgebraElement::scalar(&GrassmannElement::complex_scalar(LEVEL, beta * t)));
            rel.add(comm.max_abs_diff(&want));
            nonzero |= t != 0.0;
            let direct = tau(th, &alg.generator(i).section, &alg.generator(j).section)?;
            table.add(if direct.abs() < crate::quantize::TAU_SNAP { t } else { gap(t, direct) });
        }
    }
    let name = if th.spinor_dim_odd() {
        "v₁v₂ + (−1)^|v₁||v₂| v₂v₁ = τ·𝟙"
    } else {
        "v₁v₂ − (−1)^|v₁||v₂| v₂v₁ = iτ·𝟙"
    };
    Ok(vec![
        Check::bound(format!("{model} {name}"), rel.0, tol),
        Check::holds(format!("{model} relation exercised with τ ≠ 0"), nonzero),
        Check::bound(format!("{model} τ table matches direct τ"), table.0, 1e-10),
    ])
}

fn eom<T: FieldTheory>(alg: &Algebra<T>, sources: &[T::Section], tests: &[T::Section]) -> Result<f64>
where
    T::Section: PartialEq,
{
    let mut w = Worst::default();
    for f in sources {
        w.add(alg.check_eom(f, tests, f64::INFINITY)?.max_tau);
    }
    Ok(w.0)
}

/// τ(F₁+F₂, v) against τ(F₁, v) + τ(F₂, v) over every registered generator.
fn linearity<T: FieldTheory>(alg: &Algebra<T>, f1: &T::Section, f2: &T::Section) -> Result<f64>
where
    T::Section: PartialEq,
{
    let th = alg.theory();
    let sum = th.axpy(f1, 1.0, f2)?;
    let k = ids(alg);
    let mut w = Worst::default();
    for i in 0..k {
        let g = alg.generator(i).section.clone();
        let lhs = tau(th, &sum, &g)?;
        let rhs = tau(th, f1, &g)? + tau(th, f2, &g)?;
        w.add(if lhs.abs().max(rhs.abs()) < crate::quantize::TAU_SNAP { 0.0 } else { gap(lhs, rhs) });
    }
    Ok(w.0)
}

fn enriched<T: FieldTheory>(alg: &mut Algebra<T>, f: &T::Section, rng: &mut SuiteRng) -> Result<bool>
where
    T::Section: PartialEq,
{
    let p = random_parity(rng);
    let z = sampling::random_real_integer(rng, LEVEL, p, 3);
    let lhs = alg.enriched_field(&[(z.clone(), f.clone())])?;
    let phi = alg.field(f)?;
    let rhs = alg.mul(&AlgebraElement::scalar(&z.with_field(Field::Complex)), &phi)?;
    Ok(lhs == rhs)
}

fn field11(alg: &mut Algebra<Theory11>, cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid11(cfg)?;
    let win = window11(&g);
    let tests: Vec<Section11> =
        (0..cfg.trials.probes).map(|_| sampling::random_section11(rng, &g, win, None)).collect();
    let sources: Vec<Section11> = (0..4).map(|_| sampling::random_section11(rng, &g, win, None)).collect();
    let f1 = sampling::random_section11(rng, &g, win, None);
    let f2 = sampling::random_section11(rng, &g, win, None);
    let zero = alg.field(&Section11::zero(g))?;
    Ok(vec![
        Check::holds("1|1 Φ(0) = 0", zero.is_zero()),
        Check::bound(
            format!("1|1 weak EOM over {} probes", tests.len()),
            eom(alg, &sources, &tests)?,
            cfg.tolerances.eom,
        ),
        Check::bound("1|1 Φ linear through τ", linearity(alg, &f1, &f2)?, 1e-10),
        Check::holds("1|1 Φ(ζ⊗F) = (ζ⊗𝟙)·Φ(F)", enriched(alg, &f1, rng)?),
    ])
}

fn field32(alg: &mut Algebra<Theory32>, cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid32(cfg)?;
    let half = 0.3 * (g.t_end() - g.t0);
    let tests: Vec<Section32> =
        (0..cfg.trials.probes).map(|_| sampling::random_section32(rng, &g, Some(half))).collect();
    let sources: Vec<Section32> = (0..2).map(|_| sampling::random_section32(rng, &g, Some(half))).collect();
    let eom32 = eom(alg, &sources, &tests)?;

    let len = g.lx;
    let tm = 0.5 * (g.t0 + g.t_end());
    let r = 0.0625 * len;
    let bump = |t: f64, x: f64, k: usize| Section32::with_component(g, k, spacetime_bump(&g, [t, x, 0.5 * len], r));
    let a = alg.field(&bump(tm, 0.25 * len, PHI)?)?;
    let b = alg.field(&bump(tm, 0.75 * len, ETA)?)?;
    let c = alg.field(&bump(tm + r, 0.25 * len + 0.5 * r, PHI)?)?;
    let id = |e: &AlgebraElement| e.terms().next().and_then(|(w, _)| w.first().copied()).expect("single letter");
    let (ia, ib, ic) = (id(&a), id(&b), id(&c));
    let spacelike = alg.check_causality(ia, ib)?;
    let overlapping = alg.check_causality(ia, ic);
    let near = alg.evaluate(&alg.graded_commutator(&a, &c)?);
    let empty = alg.field(&Section32::zero(g))?;
    let empty_comm = alg.graded_commutator(&empty, &a)?;
    let f1 = sampling::random_section32(rng, &g, Some(half));
    let f2 = sampling::random_section32(rng, &g, Some(half));
    Ok(vec![
        Check::bound(format!("3|2 weak EOM over {} probes", tests.len()), eom32, cfg.tolerances.eom),
        Check::holds("3|2 spacelike commutator is exactly 0", spacelike.commutator_is_zero && spacelike.tau == 0.0),
        Check::holds("3|2 causality check refuses non-disjoint supports", overlapping.is_err()),
        Check::holds("3|2 overlapping supports give βτ·𝟙 ≠ 0", !near.is_zero()),
        Check::holds("3|2 commutator with Φ(0) is 0", empty.is_zero() && empty_comm.is_zero()),
        Check::bound("3|2 Φ linear through τ", linearity(alg, &f1, &f2)?, 1e-10),
        Check::holds("3|2 Φ(ζ⊗F) = (ζ⊗𝟙)·Φ(F)", enriched(alg, &f1, rng)?),
    ])
}
