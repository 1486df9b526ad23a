//! The 1|1 superparticle: sections F = f + θh on a time interval, the
//! operator P(F) = ∂ₜh + θ∂ₜ²f, its Green's operators, the Berezin pairing
//! and the supertranslation family χ with χ*(t′) = t + λ − ζθ, χ*(θ′) = θ + ζ.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dynamics::{FieldTheory, ModelTag, Side};
use crate::error::{Error, Result};
use crate::grassmann::{grade, Blade, Field, GrassmannElement, Parity};
use crate::numerics::{cumulative_4th, d1_4th, d2_4th, gaussian, interpolate, l2_norm, trapezoid};

pub const MIN_POINTS: usize = 7;
/// Cells that must separate a compact support from the interval ends.
pub const SUPPORT_MARGIN: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1 {
    pub t0: f64,
    pub t1: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

impl Grid1 {
    pub fn new(t0: f64, t1: f64, n: usize) -> Result<Self> {
        if n < MIN_POINTS {
            return Err(Error::GridTooSmall(format!("N = {n} < {MIN_POINTS}")));
        }
        if !(t1 > t0) {
            return Err(Error::Dimension(format!("empty interval [{t0}, {t1}]")));
        }
        Ok(Grid1 { t0, t1, n })
    }

    /// Grid on [t0, t1] with the given spacing; t1 − t0 must be a multiple of dt.
    pub fn with_spacing(t0: f64, t1: f64, dt: f64) -> Result<Self> {
        let cells = ((t1 - t0) / dt).round();
        if ((t1 - t0) / dt - cells).abs() > 1e-9 {
            return Err(Error::Dimension(format!("[{t0}, {t1}] is not a multiple of dt = {dt}")));
        }
        Self::new(t0, t1, cells as usize + 1)
    }

    pub fn dt(&self) -> f64 {
        (self.t1 - self.t0) / (self.n - 1) as f64
    }

    pub fn t(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.t(i)).collect()
    }

    pub fn same_as(&self, other: &Grid1) -> bool {
        self.n == other.n && (self.t0 - other.t0).abs() < 1e-12 && (self.t1 - other.t1).abs() < 1e-12
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section11 {
    grid: Grid1,
    f: Vec<f64>,
    h: Vec<f64>,
    support: Option<(usize, usize)>,
}

fn window(f: &[f64], h: &[f64]) -> Option<(usize, usize)> {
    let nz = |i: &usize| f[*i] != 0.0 || h[*i] != 0.0;
    let i0 = (0..f.len()).find(nz)?;
    let i1 = (0..f.len()).rev().find(nz)?;
    Some((i0, i1))
}

impl Section11 {
    pub fn new(grid: Grid1, f: Vec<f64>, h: Vec<f64>) -> Result<Self> {
        if f.len() != grid.n || h.len() != grid.n {
            return Err(Error::Dimension(format!("component lengths {}/{} on a grid of {}", f.len(), h.len(), grid.n)));
        }
        let support = window(&f, &h);
        Ok(Section11 { grid, f, h, support })
    }

    pub fn zero(grid: Grid1) -> Self {
        Section11 { grid, f: vec![0.0; grid.n], h: vec![0.0; grid.n], support: None }
    }

    pub fn from_fns(grid: Grid1, f: impl Fn(f64) -> f64, h: impl Fn(f64) -> f64) -> Self {
        let ts = grid.times();
        Self::new(grid, ts.iter().map(|&t| f(t)).collect(), ts.iter().map(|&t| h(t)).collect()).expect("lengths match")
    }

    pub fn even(grid: Grid1, f: Vec<f64>) -> Result<Self> {
        Self::new(grid, f, vec![0.0; grid.n])
    }

    pub fn odd(grid: Grid1, h: Vec<f64>) -> Result<Self> {
        Self::new(grid, vec![0.0; grid.n], h)
    }

    pub fn even_bump(grid: Grid1, center: f64, sigma: f64, amp: f64) -> Self {
        Self::from_fns(grid, |t| amp * gaussian(t, center, sigma), |_| 0.0)
    }

    pub fn odd_bump(grid: Grid1, center: f64, sigma: f64, amp: f64) -> Self {
        Self::from_fns(grid, |_| 0.0, |t| amp * gaussian(t, center, sigma))
    }

    pub fn grid(&self) -> Grid1 {
        self.grid
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn support(&self) -> Option<(usize, usize)> {
        self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_none()
    }

    pub fn is_compact(&self) -> bool {
        match self.support {
            None => true,
            Some((i0, i1)) => i0 >= SUPPORT_MARGIN && i1 + SUPPORT_MARGIN < self.grid.n,
        }
    }

    pub fn parity(&self) -> Option<Parity> {
        let even = self.f.iter().any(|&x| x != 0.0);
        let odd = self.h.iter().any(|&x| x != 0.0);
        match (even, odd) {
            (true, true) => None,
            (false, true) => Some(Parity::Odd),
            _ => Some(Parity::Even),
        }
    }

    pub fn even_part(&self) -> Self {
        Self::new(self.grid, self.f.clone(), vec![0.0; self.grid.n]).expect("same grid")
    }

    pub fn odd_part(&self) -> Self {
        Self::new(self.grid, vec![0.0; self.grid.n], self.h.clone()).expect("same grid")
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::Dimension("sections live on different grids".into()));
        }
        Ok(())
    }

    pub fn axpy(&self, a: f64, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let f = self.f.iter().zip(&other.f).map(|(x, y)| x + a * y).collect();
        let h = self.h.iter().zip(&other.h).map(|(x, y)| x + a * y).collect();
        Self::new(self.grid, f, h)
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::new(self.grid, self.f.iter().map(|x| a * x).collect(), self.h.iter().map(|x| a * x).collect())
            .expect("same grid")
    }

    pub fn map_time(&self, w: impl Fn(f64) -> f64) -> Self {
        let ts = self.grid.times();
        let f = self.f.iter().zip(&ts).map(|(x, &t)| w(t) * x).collect();
        let h = self.h.iter().zip(&ts).map(|(x, &t)| w(t) * x).collect();
        Self::new(self.grid, f, h).expect("same grid")
    }

    pub fn norm(&self) -> f64 {
        let dt = self.grid.dt();
        (l2_norm(&self.f, dt).powi(2) + l2_norm(&self.h, dt).powi(2)).sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.f.iter().zip(&other.f).chain(self.h.iter().zip(&other.h)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Section11Json {
        Section11Json {
            model: "1|1".into(),
            t0: self.grid.t0,
            t1: self.grid.t1,
            n: self.grid.n,
            f: self.f.clone(),
            h: self.h.clone(),
            support: self.support.map(|(a, b)| [a, b]),
        }
    }

    pub fn from_json(j: &Section11Json) -> Result<Self> {
        if j.model != "1|1" {
            return Err(Error::Parse(format!("expected model 1|1, found {}", j.model)));
        }
        let s = Self::new(Grid1::new(j.t0, j.t1, j.n)?, j.f.clone(), j.h.clone())?;
        if let (Some([a, b]), Some((i0, i1))) = (j.support, s.support) {
            if i0 < a || i1 > b {
                return Err(Error::Support(format!("samples outside declared support [{a}, {b}]")));
            }
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section11Json {
    pub model: String,
    pub t0: f64,
    pub t1: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub f: Vec<f64>,
    pub h: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<[usize; 2]>,
}

pub fn apply_p11(s: &Section11) -> Result<Section11> {
    let g = s.grid;
    if g.n < MIN_POINTS {
        return Err(Error::GridTooSmall(format!("N = {} < {MIN_POINTS}", g.n)));
    }
    let dt = g.dt();
    Section11::new(g, d1_4th(&s.h, dt), d2_4th(&s.f, dt))
}

fn require_compact(s: &Section11) -> Result<()> {
    if !s.is_compact() {
        return Err(Error::Support(format!(
            "support {:?} is within {SUPPORT_MARGIN} cells of the interval ends",
            s.support
        )));
    }
    Ok(())
}

/// G±_{∂t}: ∫_{t0}^t f (retarded) or −∫_t^{t1} f (advanced).
pub fn green_dt(f: &[f64], dt: f64, side: Side) -> Vec<f64> {
    let c = cumulative_4th(f, dt);
    match side {
        Side::Retarded => c,
        Side::Advanced => {
            let total = *c.last().unwrap_or(&0.0);
            c.iter().map(|x| x - total).collect()
        }
    }
}

/// G±_{∂t²}: ∫_{t0}^t (t−s)h(s)ds (retarded) or ∫_t^{t1} (s−t)h(s)ds (advanced).
pub fn green_dt2(h: &[f64], t0: f64, dt: f64, side: Side) -> Vec<f64> {
    let ts: Vec<f64> = (0..h.len()).map(|i| t0 + i as f64 * dt).collect();
    let sh: Vec<f64> = h.iter().zip(&ts).map(|(x, t)| x * t).collect();
    let a = cumulative_4th(h, dt);
    let m = cumulative_4th(&sh, dt);
    match side {
        Side::Retarded => ts.iter().zip(a.iter().zip(&m)).map(|(t, (a, m))| t * a - m).collect(),
        Side::Advanced => {
            let (at, mt) = (*a.last().unwrap(), *m.last().unwrap());
            ts.iter().zip(a.iter().zip(&m)).map(|(t, (a, m))| (mt - m) - t * (at - a)).collect()
        }
    }
}

/// Independent construction of G±_{∂t²} by Numerov time stepping of y″ = h
/// from zero data at the initial (retarded) or final (advanced) end.
pub fn green_dt2_numerov(h: &[f64], dt: f64, side: Side) -> Vec<f64> {
    let n = h.len();
    let step = |y: &mut Vec<f64>, src: &dyn Fn(usize) -> f64| {
        for k in 1..n - 1 {
            y[k + 1] = 2.0 * y[k] - y[k - 1] + dt * dt / 12.0 * (src(k + 1) + 10.0 * src(k) + src(k - 1));
        }
    };
    let mut y = vec![0.0; n];
    match side {
        Side::Retarded => {
            step(&mut y, &|k| h[k]);
            y
        }
        Side::Advanced => {
            step(&mut y, &|k| h[n - 1 - k]);
            y.reverse();
            y
        }
    }
}

pub fn green11(s: &Section11, side: Side) -> Result<Section11> {
    require_compact(s)?;
    let g = s.grid;
    let dt = g.dt();
    Section11::new(g, green_dt2(&s.h, g.t0, dt, side), green_dt(&s.f, dt, side))
}

/// ⟨F1, F2⟩ = ∫ (f1 h2 + h1 f2) dt by the trapezoid rule.
pub fn pair11(a: &Section11, b: &Section11) -> Result<f64> {
    a.check_grid(b)?;
    let integrand: Vec<f64> = (0..a.grid.n).map(|i| a.f[i] * b.h[i] + a.h[i] * b.f[i]).collect();
    Ok(trapezoid(&integrand, a.grid.dt()))
}

/// Q(f + θh) = h − θ∂ₜf.
pub fn susy_q(s: &Section11) -> Section11 {
    let df = d1_4th(&s.f, s.grid.dt());
    Section11::new(s.grid, s.h.clone(), df.iter().map(|x| -x).collect()).expect("same grid")
}

pub fn dt_section(s: &Section11) -> Section11 {
    let dt = s.grid.dt();
    Section11::new(s.grid, d1_4th(&s.f, dt), d1_4th(&s.h, dt)).expect("same grid")
}

/// Λₙ ⊗ O(M): Σ_K ζ^K ⊗ F_K with the Grassmann factor written on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannSection11 {
    n: usize,
    grid: Grid1,
    terms: BTreeMap<Blade, Section11>,
}

impl GrassmannSection11 {
    pub fn zero(n: usize, grid: Grid1) -> Self {
        GrassmannSection11 { n, grid, terms: BTreeMap::new() }
    }

    /// 1 ⊗ F
    pub fn unit(n: usize, s: &Section11) -> Self {
        Self::tensor(&GrassmannElement::one(n, Field::Real), s)
    }

    /// ζ ⊗ F for a real Grassmann element ζ.
    pub fn tensor(z: &GrassmannElement, s: &Section11) -> Self {
        let mut out = Self::zero(z.n(), s.grid);
        for (b, c) in z.terms() {
            out.add_term(b, c.re, s);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> Grid1 {
        self.grid
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Section11)> {
        self.terms.iter().map(|(&b, s)| (b, s))
    }

    pub fn component(&self, blade: Blade) -> Section11 {
        self.terms.get(&blade).cloned().unwrap_or_else(|| Section11::zero(self.grid))
    }

    pub fn add_term(&mut self, blade: Blade, a: f64, s: &Section11) {
        if a == 0.0 || s.is_zero() {
            return;
        }
        let updated = match self.terms.get(&blade) {
            Some(cur) => cur.axpy(a, s).expect("same grid"),
            None => s.scale(a),
        };
        if updated.is_zero() {
            self.terms.remove(&blade);
        } else {
            self.terms.insert(blade, updated);
        }
    }

    /// Adds g ⊗ s, expanding the Grassmann coefficient over its blades.
    pub fn add_tensor(&mut self, g: &GrassmannElement, s: &Section11) {
        for (b, c) in g.terms() {
            self.add_term(b, c.re, s);
        }
    }

    pub fn axpy(&self, a: f64, other: &Self) -> Result<Self> {
        if self.n != other.n || !self.grid.same_as(&other.grid) {
            return Err(Error::Dimension("Grassmann sections differ in level or grid".into()));
        }
        let mut out = self.clone();
        for (b, s) in other.terms() {
            out.add_term(b, a, s);
        }
        Ok(out)
    }

    /// Total parity |ζ^K| + |F_K| when homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (b, s) in self.terms() {
            let pb = Parity::of_grade(grade(b));
            for part in [s.even_part(), s.odd_part()] {
                if part.is_zero() {
                    continue;
                }
                let p = pb.add(part.parity().unwrap());
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    /// (id ⊗ P)(ζ^K ⊗ F) = (−1)^{|K|} ζ^K ⊗ P(F).
    pub fn apply_p(&self) -> Result<Self> {
        let mut out = Self::zero(self.n, self.grid);
        for (b, s) in self.terms() {
            let sign = if grade(b) % 2 == 1 { -1.0 } else { 1.0 };
            out.add_term(b, sign, &apply_p11(s)?);
        }
        Ok(out)
    }

    /// Product in Λₙ ⊗ O(M):
    /// ζ^I(a+θb)·ζ^J(c+θd) = ζ^Iζ^J (ac + θ(ad + (−1)^{|J|} bc)).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || !self.grid.same_as(&other.grid) {
            return Err(Error::Dimension("Grassmann sections differ in level or grid".into()));
        }
        let mut out = Self::zero(self.n, self.grid);
        for (bi, x) in self.terms() {
            for (bj, y) in other.terms() {
                let Some(sign) = crate::grassmann::blade_product_sign(bi, bj) else { continue };
                let sj = if grade(bj) % 2 == 1 { -1.0 } else { 1.0 };
                let f: Vec<f64> = x.f.iter().zip(&y.f).map(|(a, c)| a * c).collect();
                let h: Vec<f64> = (0..self.grid.n).map(|k| x.f[k] * y.h[k] + sj * x.h[k] * y.f[k]).collect();
                out.add_term(bi | bj, sign, &Section11::new(self.grid, f, h)?);
            }
        }
        Ok(out)
    }

    /// Σ_K ζ^K ∫ h_K dt.
    pub fn berezin_integral(&self) -> GrassmannElement {
        let mut out = GrassmannElement::zero(self.n, Field::Real);
        for (b, s) in self.terms() {
            out = &out + &GrassmannElement::real_monomial(self.n, b, trapezoid(&s.h, self.grid.dt()));
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|s| s.norm().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|s| s.max_abs_diff(&Section11::zero(self.grid))).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.axpy(-1.0, other).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }

    pub fn is_compact(&self) -> bool {
        self.terms.values().all(Section11::is_compact)
    }

    pub fn support(&self) -> Option<(usize, usize)> {
        self.terms.values().filter_map(|s| s.support).reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }
}

/// Relative pairing ⟨A, B⟩ = ∫ Ber · A·B with values in Λₙ.
pub fn pair11_rel(a: &GrassmannSection11, b: &GrassmannSection11) -> Result<GrassmannElement> {
    Ok(a.mul(b)?.berezin_integral())
}

/// Supertranslation χ: M → M′ over ptₙ, χ*(t′) = t + λ − ζθ, χ*(θ′) = θ + ζ.
/// λ is even with real body c; ζ is odd.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Morphism11 {
    pub n: usize,
    pub shift: GrassmannElement,
    pub susy: GrassmannElement,
    pub source: Grid1,
    pub target: Grid1,
}

impl Morphism11 {
    pub fn new(shift: GrassmannElement, susy: GrassmannElement, source: Grid1, target: Grid1) -> Result<Self> {
        let n = shift.n();
        if susy.n() != n {
            return Err(Error::Dimension(format!("shift over Λ{n}, susy over Λ{}", susy.n())));
        }
        if !shift.is_even() || !susy.is_odd() {
            return Err(Error::Parity("shift must be even and susy odd".into()));
        }
        if shift.field() != Field::Real || susy.field() != Field::Real {
            return Err(Error::InvalidMorphism("parameters must be real".into()));
        }
        let c = shift.body().re;
        let tol = 1e-9 * (target.t1 - target.t0);
        if c < target.t0 - source.t0 - tol || c > target.t1 - source.t1 + tol {
            return Err(Error::Support(format!(
                "shift {c} does not embed [{}, {}] into [{}, {}]",
                source.t0, source.t1, target.t0, target.t1
            )));
        }
        Ok(Morphism11 { n, shift, susy, source, target })
    }

    pub fn identity(n: usize, grid: Grid1) -> Self {
        Self::new(GrassmannElement::zero(n, Field::Real), GrassmannElement::zero(n, Field::Real), grid, grid)
            .expect("valid")
    }

    pub fn translation(n: usize, c: f64, source: Grid1, target: Grid1) -> Result<Self> {
        Self::new(GrassmannElement::real_scalar(n, c), GrassmannElement::zero(n, Field::Real), source, target)
    }

    pub fn c(&self) -> f64 {
        self.shift.body().re
    }

    /// `second ∘ first`: (λ₁ + λ₂ − ζ₂ζ₁, ζ₁ + ζ₂).
    pub fn compose(second: &Self, first: &Self) -> Result<Self> {
        if second.n != first.n {
            return Err(Error::Dimension("morphisms over different superpoints".into()));
        }
        if !first.target.same_as(&second.source) {
            return Err(Error::Dimension("target of the first morphism is not the source of the second".into()));
        }
        let shift = &(&first.shift + &second.shift) - &(&second.susy * &first.susy);
        let susy = &first.susy + &second.susy;
        Self::new(shift, susy, first.source, second.target)
    }

    /// (−λ, −ζ) from target to source; only meaningful on sections supported
    /// in the image of the source interval.
    pub fn inverse_params(&self) -> (GrassmannElement, GrassmannElement) {
        (-&self.shift, -&self.susy)
    }

    pub fn exchange(&self, lambda: &crate::grassmann::GrassmannMorphism) -> Result<Self> {
        Self::new(lambda.pullback(&self.shift)?, lambda.pullback(&self.susy)?, self.source, self.target)
    }
}

fn nilpotent_powers(nu: &GrassmannElement) -> Vec<GrassmannElement> {
    let mut out = vec![GrassmannElement::one(nu.n(), Field::Real)];
    let mut fact = 1.0;
    loop {
        let k = out.len();
        fact *= k as f64;
        let next = nu.pow(k as u32).scale_real(1.0 / fact);
        if next.is_zero() {
            return out;
        }
        out.push(next);
    }
}

/// Evaluates a target-grid array at `t + c` for every point `t` of `dest`;
/// points outside the target interval give zero.
fn resample(values: &[f64], from: &Grid1, dest: &Grid1, c: f64) -> Vec<f64> {
    let dt = from.dt();
    let tol = 1e-9 * dt;
    dest.times()
        .iter()
        .map(|&t| {
            let s = t + c;
            if s < from.t0 - tol || s > from.t1 + tol {
                0.0
            } else {
                interpolate(values, from.t0, dt, s.clamp(from.t0, from.t1))
            }
        })
        .collect()
}

fn nth_derivative(v: &[f64], dt: f64, k: usize) -> Vec<f64> {
    (0..k).fold(v.to_vec(), |acc, _| d1_4th(&acc, dt))
}

/// Substitutes t ↦ t + λ − ζθ, θ ↦ θ + ζ into sections on `from`, sampling on `dest`.
fn transport(
    h: &GrassmannSection11,
    shift: &GrassmannElement,
    susy: &GrassmannElement,
    from: &Grid1,
    dest: &Grid1,
) -> Result<GrassmannSection11> {
    let n = h.n();
    let c = shift.body().re;
    let powers = nilpotent_powers(&shift.nilpotent_part());
    let dt = from.dt();
    let mut out = GrassmannSection11::zero(n, *dest);
    for (b, s) in h.terms() {
        let zeta_i = GrassmannElement::real_monomial(n, b, 1.0);
        let kmax = powers.len();
        let fd: Vec<Vec<f64>> = (0..=kmax).map(|k| nth_derivative(&s.f, dt, k)).collect();
        let hd: Vec<Vec<f64>> = (0..kmax).map(|k| nth_derivative(&s.h, dt, k)).collect();
        for (k, alpha) in powers.iter().enumerate() {
            let coeff = &zeta_i * alpha;
            let plain = Section11::new(*dest, resample(&fd[k], from, dest, c), resample(&hd[k], from, dest, c))?;
            out.add_tensor(&coeff, &plain);
            let coeff_z = &coeff * susy;
            if !coeff_z.is_zero() {
                let minus_df: Vec<f64> = fd[k + 1].iter().map(|x| -x).collect();
                let mixed = Section11::new(*dest, resample(&hd[k], from, dest, c), resample(&minus_df, from, dest, c))?;
                out.add_tensor(&coeff_z, &mixed);
            }
        }
    }
    Ok(out)
}

pub fn pullback11(m: &Morphism11, h: &GrassmannSection11) -> Result<GrassmannSection11> {
    if h.n() != m.n {
        return Err(Error::Dimension(format!("section over Λ{}, morphism over Λ{}", h.n(), m.n)));
    }
    if !h.grid().same_as(&m.target) {
        return Err(Error::Dimension("section does not live on the morphism target".into()));
    }
    if h.is_compact() {
        if let Some((i0, i1)) = h.support() {
            let (a, b) = (m.target.t(i0) - m.c(), m.target.t(i1) - m.c());
            let inside = |t: f64| t >= m.source.t0 && t <= m.source.t1;
            if inside(a) != inside(b) {
                return Err(Error::Support("support straddles the edge of the source interval".into()));
            }
        }
    }
    transport(h, &m.shift, &m.susy, &m.target, &m.source)
}

pub fn pushforward11(m: &Morphism11, h: &GrassmannSection11) -> Result<GrassmannSection11> {
    if h.n() != m.n {
        return Err(Error::Dimension(format!("section over Λ{}, morphism over Λ{}", h.n(), m.n)));
    }
    if !h.grid().same_as(&m.source) {
        return Err(Error::Dimension("section does not live on the morphism source".into()));
    }
    if !h.is_compact() {
        return Err(Error::Support("push-forward needs compact support".into()));
    }
    if let Some((i0, i1)) = h.support() {
        let margin = SUPPORT_MARGIN as f64 * m.target.dt();
        let (a, b) = (m.source.t(i0) + m.c(), m.source.t(i1) + m.c());
        if a < m.target.t0 + margin || b > m.target.t1 - margin {
            return Err(Error::Support("image support escapes the target interval".into()));
        }
    }
    let (shift, susy) = m.inverse_params();
    transport(h, &shift, &susy, &m.source, &m.target)
}

/// The 1|1 superparticle as a field theory; dim S = 1.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Theory11;

impl FieldTheory for Theory11 {
    type Section = Section11;

    fn tag(&self) -> ModelTag {
        ModelTag::M11
    }

    fn spinor_dim_odd(&self) -> bool {
        true
    }

    fn apply_p(&self, s: &Section11) -> Result<Section11> {
        apply_p11(s)
    }

    fn green(&self, s: &Section11, side: Side) -> Result<Section11> {
        green11(s, side)
    }

    fn pair(&self, a: &Section11, b: &Section11) -> Result<f64> {
        pair11(a, b)
    }

    fn parity(&self, s: &Section11) -> Option<Parity> {
        s.parity()
    }

    fn is_zero(&self, s: &Section11) -> bool {
        s.is_zero()
    }

    fn norm(&self, s: &Section11) -> f64 {
        s.norm()
    }

    fn axpy(&self, a: &Section11, c: f64, b: &Section11) -> Result<Section11> {
        a.axpy(c, b)
    }

    fn weight_in_time(&self, s: &Section11, w: &dyn Fn(f64) -> f64) -> Section11 {
        s.map_time(w)
    }

    fn time_axis(&self, s: &Section11) -> (f64, f64, f64) {
        (s.grid.t0, s.grid.t1, s.grid.dt())
    }

    fn time_support(&self, s: &Section11) -> Option<(f64, f64)> {
        s.support.map(|(a, b)| (s.grid.t(a), s.grid.t(b)))
    }

    /// J(K) of any nonempty K is the whole interval.
    fn is_compact(&self, s: &Section11) -> bool {
        s.is_compact()
    }

    fn split_parity(&self, s: &Section11) -> [Section11; 2] {
        [s.even_part(), s.odd_part()]
    }

    fn causally_disjoint(&self, _a: &Section11, _b: &Section11) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid1 {
        Grid1::new(0.0, 2.0, 401).unwrap()
    }

    #[test]
    fn p_of_constants_vanishes() {
        let g = grid();
        let c = Section11::from_fns(g, |_| 3.0, |_| 0.0);
        assert!(apply_p11(&c).unwrap().max_abs_diff(&Section11::zero(g)) < 1e-9);
        let tc = Section11::from_fns(g, |_| 0.0, |_| 3.0);
        assert!(apply_p11(&tc).unwrap().max_abs_diff(&Section11::zero(g)) < 1e-9);
    }

    #[test]
    fn p_of_polynomials() {
        let g = grid();
        let s = Section11::from_fns(g, |t| t * t, |t| t);
        let p = apply_p11(&s).unwrap();
        assert!(p.f().iter().all(|x| (x - 1.0).abs() < 1e-9));
        assert!(p.h().iter().all(|x| (x - 2.0).abs() < 1e-8));
    }

    #[test]
    fn small_grid_is_rejected() {
        assert!(matches!(Grid1::new(0.0, 1.0, 6), Err(Error::GridTooSmall(_))));
    }

    #[test]
    fn pairing_of_theta_and_one() {
        let g = Grid1::new(0.0, 1.0, 101).unwrap();
        let one = Section11::from_fns(g, |_| 1.0, |_| 0.0);
        let th = Section11::from_fns(g, |_| 0.0, |_| 1.0);
        assert_eq!(pair11(&one, &one).unwrap(), 0.0);
        assert!((pair11(&th, &one).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn q_examples() {
        let g = grid();
        let th = Section11::from_fns(g, |_| 0.0, |_| 2.5);
        let q = susy_q(&th);
        assert!(q.f().iter().all(|&x| x == 2.5) && q.h().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn green_rejects_boundary_support() {
        let g = grid();
        let s = Section11::from_fns(g, |t| if t < 0.01 { 1.0 } else { 0.0 }, |_| 0.0);
        assert!(matches!(green11(&s, Side::Retarded), Err(Error::Support(_))));
        assert!(green11(&Section11::zero(g), Side::Advanced).unwrap().is_zero());
    }

    #[test]
    fn morphism_interval_condition() {
        let src = Grid1::new(0.0, 1.0, 101).unwrap();
        let tgt = Grid1::new(0.0, 2.0, 201).unwrap();
        assert!(Morphism11::translation(1, 0.5, src, tgt).is_ok());
        assert!(Morphism11::translation(1, 1.5, src, tgt).is_err());
        assert!(Morphism11::new(GrassmannElement::generator(1, 1), GrassmannElement::zero(1, Field::Real), src, tgt)
            .is_err());
    }
}
