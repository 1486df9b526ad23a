//! Enriched category and functor laws at concrete superpoints, and the
//! witness that component fields are not natural under ζ ≠ 0 morphisms.

use super::group;
use crate::config::SuiteConfig;
use crate::enriched::{
    check_functor_laws, compose_rel, exchange_section, exchange_superpoint, non_naturality_witness, pullback_rel,
    RelMorphism, RelSection,
};
use crate::error::Result;
use crate::grassmann::{GrassmannElement, GrassmannMorphism, Parity};
use crate::model11::{Grid1, Morphism11};
use crate::numerics::gaussian;
use crate::report::Check;
use crate::sampling::{self, SuiteRng};

pub fn run(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(group("functor laws", || functor(cfg)));
    out.extend(group("composition and exchange examples", || examples(cfg, rng)));
    out.extend(group("non-naturality witness", || witness(cfg)));
    out
}

fn functor(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let report = check_functor_laws(cfg.trials.functor, cfg.seed)?;
    Ok(report
        .laws
        .iter()
        .map(|l| {
            let name = format!("{} ({} checks)", l.name, l.trials);
            if l.tolerance == 0.0 {
                Check::exact(name, l.max_residual)
            } else {
                Check::bound(name, l.max_residual, l.tolerance.min(cfg.tolerances.functor))
            }
        })
        .collect())
}

fn grid(cfg: &SuiteConfig) -> Result<Grid1> {
    Grid1::new(cfg.model11.t0, cfg.model11.t1, cfg.model11.points)
}

fn examples(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let l = g.t1 - g.t0;
    let pad = ((g.n - 1) / 8) as f64 * g.dt();
    let big = Grid1::with_spacing(g.t0 - pad, g.t1 + pad, g.dt())?;
    let huge = Grid1::with_spacing(g.t0 - 2.0 * pad, g.t1 + 2.0 * pad, g.dt())?;
    let zeta = GrassmannElement::generator(1, 1).scale_real(0.5);
    let m = RelMorphism::M11(Morphism11::new(GrassmannElement::real_scalar(1, 0.5 * pad), zeta.clone(), g, big)?);
    let id_big = RelMorphism::M11(Morphism11::identity(1, big));
    let id_small = RelMorphism::M11(Morphism11::identity(1, g));

    let t = |c: f64, from: Grid1, to: Grid1| Morphism11::translation(0, c, from, to).map(RelMorphism::M11);
    let sum = compose_rel(&t(0.25 * pad, big, huge)?, &t(0.5 * pad, g, big)?)?;

    let body = exchange_superpoint(&GrassmannMorphism::body_map(1, 1), &m)?;
    let underlying = RelMorphism::M11(Morphism11::translation(1, 0.5 * pad, g, big)?);

    // Λ₁ → Λ₂, ζ₁ ↦ ζ₁ + ζ₂
    let doubling =
        GrassmannMorphism::new(1, 2, vec![&GrassmannElement::generator(2, 1) + &GrassmannElement::generator(2, 2)])?;
    let win = (g.t0 + 0.2 * l, g.t1 - 0.2 * l);
    let mut two_path: f64 = 0.0;
    for _ in 0..cfg.trials.naturality {
        let h = RelSection::S11(sampling::random_grassmann_section11(rng, 1, &big, win));
        let a = pullback_rel(&exchange_superpoint(&doubling, &m)?, &exchange_section(&doubling, &h)?)?;
        let b = exchange_section(&doubling, &pullback_rel(&m, &h)?)?;
        two_path = two_path.max(a.diff_norm(&b)? / a.norm().max(b.norm()));
    }
    Ok(vec![
        Check::exact("identity ∘ m = m", compose_rel(&id_big, &m)?.parameter_distance(&m)),
        Check::exact("m ∘ identity = m", compose_rel(&m, &id_small)?.parameter_distance(&m)),
        Check::exact("(c₁, 0) ∘ (c₂, 0) = (c₁ + c₂, 0)", sum.parameter_distance(&t(0.75 * pad, g, huge)?)),
        Check::exact(
            "exchange along the identity",
            exchange_superpoint(&GrassmannMorphism::identity(1), &m)?.parameter_distance(&m),
        ),
        Check::exact("body map gives (c, 0)", body.parameter_distance(&underlying)),
        Check::bound("generator-doubling exchange commutes with pullback", two_path, cfg.tolerances.functor),
    ])
}

fn witness(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = grid(cfg)?;
    let l = g.t1 - g.t0;
    let f: Vec<f64> = g.times().iter().map(|&t| gaussian(t, g.t0 + 0.5 * l, 0.05 * l)).collect();
    let w = non_naturality_witness(g, &f)?;
    Ok(vec![
        Check::floor("ζ-coefficient of χ*(1⊗f) relative to ‖f‖", w.ratio, cfg.tolerances.witness),
        Check::holds("ζ-coefficient of χ*(1⊗f) is odd", w.coefficient_parity == Some(Parity::Odd)),
    ])
}
