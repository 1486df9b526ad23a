//! 3|2 gamma algebra, supertorsion, P, pairing, Dirac factorization and the
//! leapfrog Green's operators.

use serde::{Deserialize, Serialize};

use super::{group, Worst};
use crate::config::SuiteConfig;
use crate::dynamics::Side;
use crate::error::Result;
use crate::model32::gamma::verify_clifford;
use crate::model32::torsion::check_supertorsion_flat;
use crate::model32::{
    apply_p32, dirac_factorization_residual, green32, numerical_cone_mask, pair32, spacetime_bump, Grid32, Section32,
    ETA, PHI, PSI1, PSI2,
};
use crate::report::Check;
use crate::sampling::{self, SuiteRng};

const SIDES: [(Side, &str); 2] = [(Side::Retarded, "retarded"), (Side::Advanced, "advanced")];

/// Green axiom residuals on one refinement level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Green32Level {
    pub n: usize,
    pub nt: usize,
    /// ‖P∘G±F − F‖/‖F‖, worst side.
    pub pg: f64,
    /// ‖G±∘PF − F‖/‖F‖, worst side.
    pub gp: f64,
}

fn level_grid(n: usize, cfg: &SuiteConfig) -> Result<Grid32> {
    let p = &cfg.model32;
    Grid32::new(2 * n, n, n, 0.0, p.length, p.length, p.cfl)
}

fn rel(a: &Section32, b: &Section32) -> Result<f64> {
    Ok(a.axpy(-1.0, b)?.norm() / b.norm())
}

fn pulse(g: &Grid32, radius: f64, components: [bool; 4]) -> Result<Section32> {
    let t = 0.5 * (g.t0 + g.t_end());
    let (lx, ly) = (g.lx, g.ly);
    let centers = [
        [t, 0.5 * lx, 0.5 * ly],
        [t + 0.2, 0.45 * lx, 0.5 * ly],
        [t - 0.1, 0.5 * lx, 0.55 * ly],
        [t, 0.52 * lx, 0.48 * ly],
    ];
    let comps =
        std::array::from_fn(|k| if components[k] { spacetime_bump(g, centers[k], radius) } else { vec![0.0; g.len()] });
    Section32::from_components(*g, comps)
}

fn level_residuals(f: &Section32, mass: f64) -> Result<(f64, f64)> {
    let (mut pg, mut gp) = (Worst::default(), Worst::default());
    for (side, _) in SIDES {
        pg.add(rel(&apply_p32(&green32(f, mass, side)?, mass)?, f)?);
        gp.add(rel(&green32(&apply_p32(f, mass)?, mass, side)?, f)?);
    }
    Ok((pg.0, gp.0))
}

fn pulse_radius(g: &Grid32) -> f64 {
    0.375 * g.lx.min(g.ly).min(g.t_end() - g.t0)
}

/// Residuals for smooth pulses in every component on level `n`.
pub fn green32_level(n: usize, cfg: &SuiteConfig) -> Result<Green32Level> {
    let g = level_grid(n, cfg)?;
    let f = pulse(&g, pulse_radius(&g), [true; 4])?;
    let (pg, gp) = level_residuals(&f, cfg.model32.mass)?;
    Ok(Green32Level { n, nt: g.nt, pg, gp })
}

pub fn run(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(group("gamma identities", || Ok(gamma(cfg, rng))));
    out.extend(group("supertorsion", || Ok(torsion())));
    out.extend(group("p32 examples", || p_examples(cfg)));
    out.extend(group("pair32 examples", || pair_examples(cfg, rng)));
    out.extend(group("dirac factorization", || dirac(cfg)));
    out.extend(group("green32 axioms", || axioms(cfg)));
    out.extend(group("green32 causality", || causality(cfg)));
    out
}

fn gamma(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    verify_clifford(rng, cfg.trials.sections.max(16))
        .into_iter()
        .map(|c| Check::exact(format!("gamma: {}", c.name), c.residual))
        .collect()
}

fn torsion() -> Vec<Check> {
    let report = check_supertorsion_flat();
    let mut out = vec![Check::exact("supertorsion on the flat solution", report.max_residual)];
    let named = ["T_(a1,a2)^0", "T_(0,1)^0", "T_(a1,a2)^a1"];
    for e in report.entries.iter().filter(|e| named.contains(&e.name.as_str())) {
        out.push(Check::exact(format!("supertorsion {}", e.name), e.residual));
    }
    out
}

fn interior_rel(g: &Grid32, got: &[f64], want: &[f64], scale: f64) -> f64 {
    let s = g.slice_len();
    let mut num = 0.0f64;
    for p in s..(g.nt - 1) * s {
        num = num.max((got[p] - want[p]).abs());
    }
    num / scale
}

fn p_examples(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = level_grid(cfg.model32.small, cfg)?;
    let mass = cfg.model32.mass;
    let zero = apply_p32(&Section32::zero(g), mass)?;

    let tau = 2.0 * std::f64::consts::PI;
    let (kx, ky) = (tau / g.lx, 2.0 * tau / g.ly);
    let omega = (kx * kx + ky * ky).sqrt();
    let wave = g.sample(|t, x, y| (kx * x + ky * y - omega * t).cos());
    let out = apply_p32(&Section32::with_component(g, PHI, wave.clone())?, mass)?;
    let s2 = |a: f64, h: f64| (4.0 / (h * h)) * (0.5 * a * h).sin().powi(2);
    let symbol = -s2(omega, g.dt()) + s2(kx, g.dx()) + s2(ky, g.dy());
    let k2 = omega * omega;
    let discrete: Vec<f64> = wave.iter().map(|w| symbol * w).collect();
    let zeros = vec![0.0; g.len()];
    let mphi: Vec<f64> = wave.iter().map(|w| mass * w).collect();

    let spinor = Section32::new(g, zeros.clone(), vec![0.75; g.len()], vec![-1.25; g.len()], zeros.clone())?;
    let sp = apply_p32(&spinor, mass)?;
    let want = spinor.scale(mass);
    Ok(vec![
        Check::exact("P(0) = 0", zero.max_abs()),
        Check::bound(
            "plane wave: □ row equals the discrete symbol",
            interior_rel(&g, out.component(ETA), &discrete, k2),
            cfg.tolerances.laws,
        ),
        Check::bound(
            "plane wave: □φ ≈ 0 for ω² = |k|²",
            interior_rel(&g, out.component(ETA), &zeros, k2),
            cfg.tolerances.dirac,
        ),
        Check::exact("plane wave: φ row is mφ", interior_rel(&g, out.component(PHI), &mphi, 1.0)),
        Check::exact(
            "plane wave: ψ rows vanish",
            interior_rel(&g, out.component(PSI1), &zeros, 1.0).max(interior_rel(&g, out.component(PSI2), &zeros, 1.0)),
        ),
        Check::exact("constant spinor: P ψ = mψ", sp.max_abs_diff(&want)),
    ])
}

fn pair_examples(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = level_grid(cfg.model32.small, cfg)?;
    let half = 0.3 * (g.t_end() - g.t0);
    let w: Vec<f64> = (0..g.nt).flat_map(|n| std::iter::repeat_n(g.weight(n), g.slice_len())).collect();
    let quad = |v: &[f64]| v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
    let (mut mixed, mut spinor, mut even) = (Worst::default(), Worst::default(), Worst::default());
    for _ in 0..cfg.trials.sections {
        let a = sampling::random_section32(rng, &g, Some(half));
        let b = sampling::random_section32(rng, &g, Some(half));
        let pa = Section32::with_component(g, PHI, a.phi().to_vec())?;
        let pb = Section32::with_component(g, PHI, b.phi().to_vec())?;
        even.add(pair32(&pa, &pb)?);
        let eb = Section32::with_component(g, ETA, b.eta().to_vec())?;
        let prod: Vec<f64> = a.phi().iter().zip(b.eta()).map(|(x, y)| x * y).collect();
        let want = quad(&prod);
        mixed.add((pair32(&pa, &eb)? - want).abs() / want.abs());
        let (oa, ob) = (a.odd_part(), b.odd_part());
        let contraction: Vec<f64> =
            (0..g.len()).map(|p| oa.psi(1)[p] * ob.psi(0)[p] - oa.psi(0)[p] * ob.psi(1)[p]).collect();
        let want = quad(&contraction);
        spinor.add((pair32(&oa, &ob)? - want).abs() / want.abs());
    }
    let tol = cfg.tolerances.quadrature;
    Ok(vec![
        Check::exact("⟨(φ,0,0), (φ′,0,0)⟩ = 0", even.0),
        Check::bound("⟨(φ,0,0), (0,0,η)⟩ = ∫φη", mixed.0, tol),
        Check::bound("odd pairing vs ε-contraction", spinor.0, tol),
    ])
}

fn dirac(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let p = &cfg.model32;
    let t = &cfg.tolerances;
    let mut residuals = Vec::new();
    for &n in &p.refinement {
        let g = level_grid(n, cfg)?;
        let u = sampling::smooth_field32(&g, (0.3, 1.1));
        residuals.push((n, dirac_factorization_residual(&g, &u, p.mass)));
    }
    let mut out = Vec::new();
    for &(n, r) in &residuals {
        if n == p.base {
            out.push(Check::bound(format!("(i∇̸+m)(i∇̸−m) = −(□+m²) at {n}²"), r, t.dirac));
        } else {
            out.push(Check::info(format!("(i∇̸+m)(i∇̸−m) = −(□+m²) at {n}²"), r));
        }
    }
    for w in residuals.windows(2) {
        let order = (w[0].1 / w[1].1).log2();
        out.push(Check::bound(format!("convergence order {}→{}", w[0].0, w[1].0), order - 2.0, t.dirac_order));
    }
    Ok(out)
}

fn axioms(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let p = &cfg.model32;
    let t = &cfg.tolerances;
    let levels: Vec<Green32Level> = std::thread::scope(|s| {
        let hs: Vec<_> = p.refinement.iter().map(|&n| s.spawn(move || green32_level(n, cfg))).collect();
        hs.into_iter().map(|h| h.join().expect("level thread")).collect::<Result<_>>()
    })?;
    let g = level_grid(p.base, cfg)?;
    let eta = pulse(&g, pulse_radius(&g), [false, false, false, true])?;
    let (pg, gp) = level_residuals(&eta, p.mass)?;
    let label = format!("{}×{}²", g.nt, p.base);
    let mut out = vec![
        Check::bound(format!("η pulse: P∘G± = id at {label}"), pg, t.green32),
        Check::bound(format!("η pulse: G±∘P = id at {label}"), gp, t.green32),
    ];
    for l in &levels {
        let label = format!("{}×{}²", l.nt, l.n);
        if l.n == p.base {
            out.push(Check::bound(format!("P∘G± = id at {label}"), l.pg, t.green32));
            out.push(Check::bound(format!("G±∘P = id at {label}"), l.gp, t.green32));
        } else {
            out.push(Check::info(format!("P∘G± = id at {label}"), l.pg));
            out.push(Check::info(format!("G±∘P = id at {label}"), l.gp));
        }
    }
    for w in levels.windows(2) {
        for (name, a, b) in [("P∘G±", w[0].pg, w[1].pg), ("G±∘P", w[0].gp, w[1].gp)] {
            let ratio = a / b;
            let label = format!("{name} improvement {}→{}", w[0].n, w[1].n);
            let c = Check::floor(label, ratio, t.refinement_low);
            if ratio > t.refinement_high {
                out.push(Check { pass: false, ..c }.with_note(format!("ratio above {}", t.refinement_high)));
            } else {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn causality(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = level_grid(cfg.model32.base, cfg)?;
    let mass = cfg.model32.mass;
    let span = g.t_end() - g.t0;
    let radius = 0.1 * g.lx.min(g.ly);
    let mut out = vec![Check::exact("G⁺(0) = 0", green32(&Section32::zero(g), mass, Side::Retarded)?.max_abs())];
    for (side, name) in SIDES {
        let tc = match side {
            Side::Retarded => g.t0 + 0.75 * span,
            Side::Advanced => g.t0 + 0.25 * span,
        };
        let f = Section32::new(
            g,
            spacetime_bump(&g, [tc, 0.4 * g.lx, 0.6 * g.ly], radius),
            spacetime_bump(&g, [tc, 0.45 * g.lx, 0.6 * g.ly], radius),
            vec![0.0; g.len()],
            spacetime_bump(&g, [tc, 0.4 * g.lx, 0.55 * g.ly], radius),
        )?;
        let support = f.support().expect("nonzero source");
        let mask = numerical_cone_mask(&g, &support, side);
        let gf = green32(&f, mass, side)?;
        let mut worst = 0.0f64;
        let mut inside = 0.0f64;
        for k in 0..4 {
            for (p, v) in gf.component(k).iter().enumerate() {
                if mask[p] {
                    inside = inside.max(v.abs());
                } else {
                    worst = worst.max(v.abs());
                }
            }
        }
        out.push(Check::bound(format!("output outside the numerical cone ({name})"), worst, cfg.tolerances.causality));
        out.push(Check::floor(
            format!("output inside the numerical cone is nonzero ({name})"),
            inside,
            f64::MIN_POSITIVE,
        ));
    }
    Ok(out)
}
