//! Morphisms relative to a superpoint ptₙ, their composition and change of
//! level, and randomized checks of the enriched functor laws.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::ModelTag;
use crate::error::{Error, Result};
use crate::grassmann::{blade_from_indices, blade_indices, Field, GrassmannElement, GrassmannMorphism, Parity};
use crate::model11::{pullback11, pushforward11, GrassmannSection11, Grid1, Morphism11, Section11, Section11Json};
use crate::model32::{pullback32, GrassmannSection32, Grid32, Morphism32, Section32, Section32Json, DEFAULT_MASS};
use crate::sampling::{self, SuiteRng};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum RelMorphism {
    #[serde(rename = "1|1")]
    M11(Morphism11),
    #[serde(rename = "3|2")]
    M32(Morphism32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum RelSection {
    S11(GrassmannSection11),
    S32(GrassmannSection32),
}

/// One ζ^K ⊗ F_K term; `idx` lists the generators of the blade K.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson<S> {
    pub idx: Vec<usize>,
    pub section: S,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum RelSectionJson {
    #[serde(rename = "1|1")]
    S11 { n: usize, terms: Vec<TermJson<Section11Json>> },
    #[serde(rename = "3|2")]
    S32 { n: usize, terms: Vec<TermJson<Section32Json>> },
}

impl RelMorphism {
    /// Re-runs the constructor checks, e.g. after deserializing.
    pub fn validated(self) -> Result<Self> {
        match self {
            RelMorphism::M11(m) => {
                let checked = Morphism11::new(m.shift, m.susy, m.source, m.target)?;
                if checked.n != m.n {
                    return Err(Error::Dimension(format!(
                        "declared n = {} but parameters live in Λ{}",
                        m.n, checked.n
                    )));
                }
                Ok(RelMorphism::M11(checked))
            }
            RelMorphism::M32(m) => {
                let checked = Morphism32::new(m.translation, m.spinor, m.source, m.target)?;
                if checked.n != m.n {
                    return Err(Error::Dimension(format!(
                        "declared n = {} but parameters live in Λ{}",
                        m.n, checked.n
                    )));
                }
                Ok(RelMorphism::M32(checked))
            }
        }
    }

    pub fn tag(&self) -> ModelTag {
        match self {
            RelMorphism::M11(_) => ModelTag::M11,
            RelMorphism::M32(_) => ModelTag::M32,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            RelMorphism::M11(m) => m.n,
            RelMorphism::M32(m) => m.n,
        }
    }

    /// Whether the morphism is an ordinary translation: no odd part and no
    /// nilpotent part in the shift.
    pub fn is_plain_translation(&self) -> bool {
        match self {
            RelMorphism::M11(m) => m.susy.is_zero() && m.shift.nilpotent_part().is_zero(),
            RelMorphism::M32(m) => {
                m.spinor.iter().all(GrassmannElement::is_zero)
                    && m.translation.iter().all(|a| a.nilpotent_part().is_zero())
            }
        }
    }

    /// Largest difference between the Grassmann parameters of two morphisms;
    /// infinite when they are not comparable.
    pub fn parameter_distance(&self, other: &Self) -> f64 {
        match (self, other) {
            (RelMorphism::M11(a), RelMorphism::M11(b)) if a.n == b.n => {
                a.shift.max_abs_diff(&b.shift).max(a.susy.max_abs_diff(&b.susy))
            }
            (RelMorphism::M32(a), RelMorphism::M32(b)) if a.n == b.n => a
                .translation
                .iter()
                .zip(&b.translation)
                .chain(a.spinor.iter().zip(&b.spinor))
                .map(|(x, y)| x.max_abs_diff(y))
                .fold(0.0, f64::max),
            _ => f64::INFINITY,
        }
    }
}

impl RelSection {
    pub fn to_json(&self) -> RelSectionJson {
        match self {
            RelSection::S11(h) => RelSectionJson::S11 {
                n: h.n(),
                terms: h.terms().map(|(b, f)| TermJson { idx: blade_indices(b), section: f.to_json() }).collect(),
            },
            RelSection::S32(h) => RelSectionJson::S32 {
                n: h.n(),
                terms: h.terms().map(|(b, f)| TermJson { idx: blade_indices(b), section: f.to_json() }).collect(),
            },
        }
    }

    pub fn from_json(j: &RelSectionJson) -> Result<Self> {
        match j {
            RelSectionJson::S11 { n, terms } => {
                let first = terms.first().ok_or_else(|| Error::Parse("section without terms".into()))?;
                let grid = Section11::from_json(&first.section)?.grid();
                let mut out = GrassmannSection11::zero(*n, grid);
                for t in terms {
                    let (b, sign) = blade_from_indices(*n, &t.idx)?;
                    let f = Section11::from_json(&t.section)?;
                    if !f.grid().same_as(&grid) {
                        return Err(Error::Dimension("terms on different grids".into()));
                    }
                    out.add_term(b, sign, &f);
                }
                Ok(RelSection::S11(out))
            }
            RelSectionJson::S32 { n, terms } => {
                let first = terms.first().ok_or_else(|| Error::Parse("section without terms".into()))?;
                let grid = Section32::from_json(&first.section)?.grid();
                let mut out = GrassmannSection32::zero(*n, grid);
                for t in terms {
                    let (b, sign) = blade_from_indices(*n, &t.idx)?;
                    let f = Section32::from_json(&t.section)?;
                    if !f.grid().same_as(&grid) {
                        return Err(Error::Dimension("terms on different grids".into()));
                    }
                    out.add_term(b, sign, &f);
                }
                Ok(RelSection::S32(out))
            }
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            RelSection::S11(h) => h.norm(),
            RelSection::S32(h) => h.norm(),
        }
    }

    pub fn diff_norm(&self, other: &Self) -> Result<f64> {
        match (self, other) {
            (RelSection::S11(a), RelSection::S11(b)) => Ok(a.axpy(-1.0, b)?.norm()),
            (RelSection::S32(a), RelSection::S32(b)) => Ok(a.axpy(-1.0, b)?.norm()),
            _ => Err(Error::Dimension("sections of different models".into())),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        match (self, other) {
            (RelSection::S11(a), RelSection::S11(b)) => a.max_abs_diff(b),
            (RelSection::S32(a), RelSection::S32(b)) => a.max_abs_diff(b),
            _ => f64::INFINITY,
        }
    }

    /// (id ⊗ P)
    pub fn apply_p(&self, mass: f64) -> Result<Self> {
        match self {
            RelSection::S11(h) => Ok(RelSection::S11(h.apply_p()?)),
            RelSection::S32(h) => Ok(RelSection::S32(h.apply_p(mass)?)),
        }
    }
}

/// `m2 ∘ m1`
pub fn compose_rel(m2: &RelMorphism, m1: &RelMorphism) -> Result<RelMorphism> {
    match (m2, m1) {
        (RelMorphism::M11(b), RelMorphism::M11(a)) => Ok(RelMorphism::M11(Morphism11::compose(b, a)?)),
        (RelMorphism::M32(b), RelMorphism::M32(a)) => Ok(RelMorphism::M32(Morphism32::compose(b, a)?)),
        _ => Err(Error::Dimension("cannot compose morphisms of different models".into())),
    }
}

/// λ_*: moves every Grassmann parameter of `m` along λ.
pub fn exchange_superpoint(lambda: &GrassmannMorphism, m: &RelMorphism) -> Result<RelMorphism> {
    if lambda.source() != m.n() {
        return Err(Error::Dimension(format!("λ starts at Λ{}, morphism lives over Λ{}", lambda.source(), m.n())));
    }
    match m {
        RelMorphism::M11(x) => Ok(RelMorphism::M11(x.exchange(lambda)?)),
        RelMorphism::M32(x) => Ok(RelMorphism::M32(x.exchange(lambda)?)),
    }
}

pub fn pullback_rel(m: &RelMorphism, h: &RelSection) -> Result<RelSection> {
    match (m, h) {
        (RelMorphism::M11(x), RelSection::S11(s)) => Ok(RelSection::S11(pullback11(x, s)?)),
        (RelMorphism::M32(x), RelSection::S32(s)) => Ok(RelSection::S32(pullback32(x, s)?)),
        _ => Err(Error::Dimension("morphism and section belong to different models".into())),
    }
}

/// Σ ζ^K ⊗ F_K ↦ Σ λ*(ζ^K) ⊗ F_K
pub fn exchange_section(lambda: &GrassmannMorphism, h: &RelSection) -> Result<RelSection> {
    let mono = |b| GrassmannElement::real_monomial(lambda.source(), b, 1.0);
    match h {
        RelSection::S11(s) => {
            let mut out = GrassmannSection11::zero(lambda.target(), s.grid());
            for (b, f) in s.terms() {
                out.add_tensor(&lambda.pullback(&mono(b))?, f);
            }
            Ok(RelSection::S11(out))
        }
        RelSection::S32(s) => {
            let mut out = GrassmannSection32::zero(lambda.target(), s.grid());
            for (b, f) in s.terms() {
                out.add_tensor(&lambda.pullback(&mono(b))?, f);
            }
            Ok(RelSection::S32(out))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NaturalityReport {
    pub model: ModelTag,
    pub n: usize,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// 1e−8 for plain translations, otherwise 1e−6 (1|1) or 5e−3 (3|2).
pub fn naturality_tolerance(m: &RelMorphism) -> f64 {
    match (m.is_plain_translation(), m.tag()) {
        (true, _) => 1e-8,
        (false, ModelTag::M11) => 1e-6,
        (false, ModelTag::M32) => 5e-3,
    }
}

fn sample_for(m: &RelMorphism, rng: &mut SuiteRng, compact: bool) -> RelSection {
    match m {
        RelMorphism::M11(x) => {
            let c = x.c();
            let span = x.source.t1 - x.source.t0;
            let lo = (x.source.t0 + c + 0.05 * span).max(x.target.t0 + 0.05 * span);
            let hi = (x.source.t1 + c - 0.05 * span).min(x.target.t1 - 0.05 * span);
            RelSection::S11(sampling::random_grassmann_section11(rng, x.n, &x.target, (lo, hi)))
        }
        RelMorphism::M32(x) => {
            let span = x.source.t_end() - x.source.t0;
            RelSection::S32(sampling::random_grassmann_section32(rng, x.n, &x.target, compact.then_some(0.3 * span)))
        }
    }
}

/// max over samples of ‖χ*(id⊗P)H − (id⊗P)χ*H‖ / ‖χ*(id⊗P)H‖.
pub fn check_naturality(m: &RelMorphism, samples: usize, mass: f64, rng: &mut SuiteRng) -> Result<NaturalityReport> {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let h = sample_for(m, rng, false);
        let a = pullback_rel(m, &h.apply_p(mass)?)?;
        let b = pullback_rel(m, &h)?.apply_p(mass)?;
        let scale = a.norm().max(b.norm());
        if scale > 0.0 {
            worst = worst.max(a.diff_norm(&b)? / scale);
        }
    }
    let worst = worst.abs();
    let tolerance = naturality_tolerance(m);
    Ok(NaturalityReport { model: m.tag(), n: m.n(), samples, max_residual: worst, tolerance, pass: worst <= tolerance })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawCheck {
    pub name: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl LawCheck {
    fn new(name: &str, tolerance: f64) -> Self {
        LawCheck { name: name.into(), trials: 0, max_residual: 0.0, tolerance, pass: true }
    }

    fn record(&mut self, r: f64) {
        self.trials += 1;
        if r.is_nan() || r > self.max_residual {
            self.max_residual = if r.is_nan() { f64::INFINITY } else { r };
        }
        self.pass = self.max_residual <= self.tolerance;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctorLawReport {
    pub seed: u64,
    pub trials: usize,
    pub laws: Vec<LawCheck>,
    pub pass: bool,
}

/// Grid triple A ⊂ B ⊂ C with a common spacing for chained 1|1 morphisms.
pub fn chain_grids11(points: usize) -> [Grid1; 3] {
    let dt = 2.0 / (points - 1) as f64;
    [
        Grid1::with_spacing(0.0, 2.0, dt).expect("grid"),
        Grid1::with_spacing(-0.25, 2.25, dt).expect("grid"),
        Grid1::with_spacing(-0.5, 2.5, dt).expect("grid"),
    ]
}

/// Time windows A ⊂ B ⊂ C sharing the spatial torus for chained 3|2 morphisms.
pub fn chain_grids32(nt: usize, n: usize, l: f64, pad: usize) -> Result<[Grid32; 3]> {
    let a = Grid32::square(nt, n, l)?;
    let dt = a.dt();
    let b = Grid32::new(nt + 2 * pad, n, n, -(pad as f64) * dt, l, l, a.cfl)?;
    let c = Grid32::new(nt + 4 * pad, n, n, -2.0 * pad as f64 * dt, l, l, a.cfl)?;
    Ok([a, b, c])
}

/// Rounds every coefficient to a multiple of 1/`grain`.
fn round_to(e: &GrassmannElement, grain: f64) -> GrassmannElement {
    let mut out = GrassmannElement::zero(e.n(), Field::Real);
    for (b, c) in e.terms() {
        out = &out + &GrassmannElement::real_monomial(e.n(), b, (c.re * grain).round() / grain);
    }
    out
}

/// Multiples of 2⁻⁸ so parameter arithmetic stays exact.
fn dyadic(e: &GrassmannElement) -> GrassmannElement {
    round_to(e, 256.0)
}

/// λ images use multiples of 2⁻² so nested compositions stay exact.
fn random_lambda(rng: &mut SuiteRng, source: usize, target: usize) -> GrassmannMorphism {
    let images = (0..source).map(|_| round_to(&sampling::random_odd(rng, target), 4.0)).collect();
    GrassmannMorphism::new(source, target, images).expect("odd images")
}

pub fn random_morphism11(rng: &mut SuiteRng, n: usize, source: Grid1, target: Grid1) -> Morphism11 {
    let lo = target.t0 - source.t0;
    let hi = target.t1 - source.t1;
    let c = ((rng.gen_range(lo..=hi)) * 256.0).round() / 256.0;
    let c = c.clamp(lo, hi);
    let shift = &GrassmannElement::real_scalar(n, c) + &dyadic(&sampling::random_even_nilpotent(rng, n));
    Morphism11::new(shift, dyadic(&sampling::random_odd(rng, n)), source, target).expect("admissible")
}

/// Body shifts are drawn on the lattice of the grids.
pub fn random_morphism32(rng: &mut SuiteRng, n: usize, source: Grid32, target: Grid32) -> Morphism32 {
    let max_rows = ((source.t0 - target.t0) / source.dt()).round() as i64;
    let rows = rng.gen_range(-max_rows..=max_rows) as f64;
    let body =
        [rows * source.dt(), rng.gen_range(-4..=4) as f64 * source.dx(), rng.gen_range(-4..=4) as f64 * source.dy()];
    let translation =
        body.map(|c| &GrassmannElement::real_scalar(n, c) + &dyadic(&sampling::random_even_nilpotent(rng, n)));
    let spinor = [0, 1].map(|_| dyadic(&sampling::random_odd(rng, n)));
    Morphism32::new(translation, spinor, source, target).expect("admissible")
}

fn rel_diff(a: &RelSection, b: &RelSection) -> Result<f64> {
    let scale = a.norm().max(b.norm());
    Ok(if scale == 0.0 { 0.0 } else { a.diff_norm(b)? / scale })
}

/// Randomized identity, composition and exchange laws for both models.
pub fn check_functor_laws(trials: usize, seed: u64) -> Result<FunctorLawReport> {
    let mut rng = sampling::rng(seed);
    let g11 = chain_grids11(2049);
    let g32 = chain_grids32(24, 16, 8.0, 4)?;
    let mut identity = LawCheck::new("identity pullback", 0.0);
    let mut unit = LawCheck::new("identity is a unit for composition", 0.0);
    let mut assoc = LawCheck::new("composition is associative", 0.0);
    let mut comp11 = LawCheck::new("1|1 pullback of composite", 1e-6);
    let mut comp32 = LawCheck::new("3|2 pullback of composite", 1e-6);
    let mut ex_id = LawCheck::new("exchange along identity", 0.0);
    let mut ex_comp = LawCheck::new("exchange respects composition of morphisms", 0.0);
    let mut ex_funct = LawCheck::new("exchange is functorial in λ", 0.0);
    let mut ex_pull = LawCheck::new("exchange commutes with pullback", 1e-12);
    let mut body = LawCheck::new("body map gives the underlying morphism", 0.0);
    let mut push = LawCheck::new("pullback after push-forward", 1e-8);

    for trial in 0..trials {
        let n = trial % 4;
        let m1 = RelMorphism::M11(random_morphism11(&mut rng, n, g11[0], g11[1]));
        let m2 = RelMorphism::M11(random_morphism11(&mut rng, n, g11[1], g11[2]));
        let n32 = trial % 2;
        let p1 = RelMorphism::M32(random_morphism32(&mut rng, n32, g32[0], g32[1]));
        let p2 = RelMorphism::M32(random_morphism32(&mut rng, n32, g32[1], g32[2]));

        for (a, b) in [(&m1, &m2), (&p1, &p2)] {
            let h = sample_for(&compose_rel(b, a)?, &mut rng, true);
            let composite = pullback_rel(&compose_rel(b, a)?, &h)?;
            let chained = pullback_rel(a, &pullback_rel(b, &h)?)?;
            let r = rel_diff(&composite, &chained)?;
            if a.tag() == ModelTag::M11 {
                comp11.record(r);
            } else {
                comp32.record(r);
            }

            let id_target = match b {
                RelMorphism::M11(x) => RelMorphism::M11(Morphism11::identity(x.n, x.target)),
                RelMorphism::M32(x) => RelMorphism::M32(Morphism32::identity(x.n, x.target)),
            };
            identity.record(pullback_rel(&id_target, &h)?.max_abs_diff(&h));
            let id_source = match a {
                RelMorphism::M11(x) => RelMorphism::M11(Morphism11::identity(x.n, x.source)),
                RelMorphism::M32(x) => RelMorphism::M32(Morphism32::identity(x.n, x.source)),
            };
            unit.record(compose_rel(a, &id_source)?.parameter_distance(a));
            unit.record(compose_rel(&id_target, b)?.parameter_distance(b));

            let m = a.n();
            let lam1 = random_lambda(&mut rng, m, (m + 1).min(3));
            let lam2 = random_lambda(&mut rng, lam1.target(), lam1.target());
            ex_id.record(exchange_superpoint(&GrassmannMorphism::identity(m), b)?.parameter_distance(b));
            let lhs = exchange_superpoint(&lam1, &compose_rel(b, a)?)?;
            let rhs = compose_rel(&exchange_superpoint(&lam1, b)?, &exchange_superpoint(&lam1, a)?)?;
            ex_comp.record(lhs.parameter_distance(&rhs));
            let both = GrassmannMorphism::compose(&lam2, &lam1)?;
            ex_funct.record(
                exchange_superpoint(&both, a)?
                    .parameter_distance(&exchange_superpoint(&lam2, &exchange_superpoint(&lam1, a)?)?),
            );
            let src = sample_for(b, &mut rng, true);
            let x = pullback_rel(&exchange_superpoint(&lam1, b)?, &exchange_section(&lam1, &src)?)?;
            let y = exchange_section(&lam1, &pullback_rel(b, &src)?)?;
            ex_pull.record(rel_diff(&x, &y)?);

            let under = exchange_superpoint(&GrassmannMorphism::body_map(m, m), a)?;
            let expected = match a {
                RelMorphism::M11(x) => RelMorphism::M11(Morphism11::translation(m, x.c(), x.source, x.target)?),
                RelMorphism::M32(x) => RelMorphism::M32(Morphism32::translation(m, x.shift(), x.source, x.target)?),
            };
            body.record(under.parameter_distance(&expected));
        }

        let m3 = RelMorphism::M11(random_morphism11(&mut rng, n, g11[2], g11[2]));
        let left = compose_rel(&m3, &compose_rel(&m2, &m1)?)?;
        let right = compose_rel(&compose_rel(&m3, &m2)?, &m1)?;
        assoc.record(left.parameter_distance(&right));
        let p3 = RelMorphism::M32(random_morphism32(&mut rng, n32, g32[2], g32[2]));
        let left = compose_rel(&p3, &compose_rel(&p2, &p1)?)?;
        let right = compose_rel(&compose_rel(&p3, &p2)?, &p1)?;
        assoc.record(left.parameter_distance(&right));

        if let RelMorphism::M11(x) = &m1 {
            let h = sampling::random_grassmann_section11(&mut rng, n, &x.source, (0.3, 1.7));
            let back = pullback11(x, &pushforward11(x, &h)?)?;
            push.record(back.axpy(-1.0, &h)?.norm() / h.norm());
        }
    }
    let laws = vec![identity, unit, assoc, comp11, comp32, ex_id, ex_comp, ex_funct, ex_pull, body, push];
    let pass = laws.iter().all(|l| l.pass);
    Ok(FunctorLawReport { seed, trials, laws, pass })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub input_scale: f64,
    pub odd_coefficient_norm: f64,
    pub ratio: f64,
    pub coefficient_parity: Option<Parity>,
    pub pass: bool,
}

/// Pulls back the purely even section 1⊗f along a ζ-morphism over Λ₁ and
/// measures the ζ-coefficient, which is the odd section −θ∂ₜf.
pub fn non_naturality_witness(grid: Grid1, f: &[f64]) -> Result<WitnessReport> {
    let input = Section11::even(grid, f.to_vec())?;
    let zeta = GrassmannElement::generator(1, 1);
    let m = Morphism11::new(GrassmannElement::zero(1, Field::Real), zeta, grid, grid)?;
    let out = pullback11(&m, &GrassmannSection11::unit(1, &input))?;
    let coeff = out.component(1);
    let input_scale = input.norm();
    let odd = coeff.norm();
    let ratio = odd / input_scale;
    let parity = coeff.parity();
    Ok(WitnessReport {
        input_scale,
        odd_coefficient_norm: odd,
        ratio,
        coefficient_parity: parity,
        pass: ratio > 1e-3 && parity == Some(Parity::Odd),
    })
}

/// Naturality of a SUSY morphism with a random odd parameter in each model.
pub fn default_naturality_checks(seed: u64, samples: usize) -> Result<Vec<NaturalityReport>> {
    let mut rng = sampling::rng(seed);
    let g11 = Grid1::new(0.0, 2.0, 4097)?;
    let zeta = sampling::random_odd(&mut rng, 2);
    let m11 = RelMorphism::M11(Morphism11::new(GrassmannElement::zero(2, Field::Real), zeta, g11, g11)?);
    let t11 = RelMorphism::M11(Morphism11::translation(2, 0.0, g11, g11)?);
    let g32 = Grid32::square(128, 64, 8.0)?;
    let z32 = GrassmannElement::generator(1, 1);
    let m32 = RelMorphism::M32(Morphism32::susy(&z32, [0.7, -0.4], g32)?);
    let mut out = Vec::new();
    for m in [&t11, &m11, &m32] {
        out.push(check_naturality(m, samples, DEFAULT_MASS, &mut rng)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gaussian;

    #[test]
    fn witness_detects_mixing() {
        let g = Grid1::new(0.0, 2.0, 1025).unwrap();
        let f: Vec<f64> = g.times().iter().map(|&t| gaussian(t, 1.0, 0.1)).collect();
        let w = non_naturality_witness(g, &f).unwrap();
        assert!(w.pass, "{w:?}");
    }

    #[test]
    fn functor_laws_small() {
        let r = check_functor_laws(8, 3).unwrap();
        for l in &r.laws {
            assert!(l.pass, "{l:?}");
        }
    }

    #[test]
    fn exchange_rejects_wrong_level() {
        let g = Grid1::new(0.0, 2.0, 65).unwrap();
        let m = RelMorphism::M11(Morphism11::identity(2, g));
        assert!(exchange_superpoint(&GrassmannMorphism::identity(1), &m).is_err());
    }
}
