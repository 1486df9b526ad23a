//! Supertranslations of flat 3|2 superspace over ptₙ:
//! χ*(x′^α) = x^α + a^α − iε^aγ^α_{ab}θ^b, χ*(θ′^a) = θ^a + ε^a,
//! with a^α even and ε^a odd in Λₙ. For ε^a = ζB^a this is 1 + ζQ_B.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::gamma::{lower_spinor, r_matrix};
use super::{apply_p32, stencil, Grid32, Section32, ETA, PHI, PSI1, PSI2};
use crate::error::{Error, Result};
use crate::grassmann::{grade, Blade, Field, GrassmannElement, GrassmannMorphism, Parity};
use crate::numerics::interpolate;

/// Q_B(F) for the odd superderivation Q_B = B^a∂_a − iB^aγ^α_{ab}θ^b∂_α:
/// scalar B^aψ_a, θ^b-part −B_bη − iB^aγ^α_{ab}∂_αφ, θ²/2-part iB^aγ^α_{ab}ε^{bc}∂_αψ_c.
pub fn q_b(s: &Section32, b: [f64; 2]) -> Section32 {
    let g = s.grid();
    let bl = lower_spinor(b);
    let len = g.len();
    let phi: Vec<f64> = (0..len).map(|p| b[0] * s.psi(0)[p] + b[1] * s.psi(1)[p]).collect();
    let mut psi =
        [s.eta().iter().map(|e| -bl[0] * e).collect::<Vec<f64>>(), s.eta().iter().map(|e| -bl[1] * e).collect()];
    let mut eta = vec![0.0; len];
    for alpha in 0..3 {
        let r = r_matrix(alpha);
        // (B^a R^α_{ab}) and (B^a R^α_{ab} ε^{bc})
        let br = [b[0] * r[0][0] + b[1] * r[1][0], b[0] * r[0][1] + b[1] * r[1][1]];
        let bre = [-br[1], br[0]];
        let dphi = stencil::d(&g, s.phi(), alpha);
        for c in 0..2 {
            if br[c] != 0.0 {
                for (o, v) in psi[c].iter_mut().zip(&dphi) {
                    *o += br[c] * v;
                }
            }
            if bre[c] != 0.0 {
                let dpsi = stencil::d(&g, s.psi(c), alpha);
                for (o, v) in eta.iter_mut().zip(&dpsi) {
                    *o -= bre[c] * v;
                }
            }
        }
    }
    let [p1, p2] = psi;
    Section32::new(g, phi, p1, p2, eta).expect("same grid")
}

/// Λₙ ⊗ O(M) for the 3|2 model.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannSection32 {
    n: usize,
    grid: Grid32,
    terms: BTreeMap<Blade, Section32>,
}

impl GrassmannSection32 {
    pub fn zero(n: usize, grid: Grid32) -> Self {
        GrassmannSection32 { n, grid, terms: BTreeMap::new() }
    }

    pub fn unit(n: usize, s: &Section32) -> Self {
        let mut out = Self::zero(n, s.grid());
        out.add_term(0, 1.0, s);
        out
    }

    pub fn tensor(z: &GrassmannElement, s: &Section32) -> Self {
        let mut out = Self::zero(z.n(), s.grid());
        for (b, c) in z.terms() {
            out.add_term(b, c.re, s);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> Grid32 {
        self.grid
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Section32)> {
        self.terms.iter().map(|(&b, s)| (b, s))
    }

    pub fn component(&self, blade: Blade) -> Section32 {
        self.terms.get(&blade).cloned().unwrap_or_else(|| Section32::zero(self.grid))
    }

    pub fn add_term(&mut self, blade: Blade, a: f64, s: &Section32) {
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
    pub fn add_tensor(&mut self, g: &GrassmannElement, s: &Section32) {
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

    /// (id ⊗ P)(ζ^K ⊗ F) = ζ^K ⊗ P(F); P is even.
    pub fn apply_p(&self, mass: f64) -> Result<Self> {
        let mut out = Self::zero(self.n, self.grid);
        for (b, s) in self.terms() {
            out.add_term(b, 1.0, &apply_p32(s, mass)?);
        }
        Ok(out)
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (b, s) in self.terms() {
            for part in [s.even_part(), s.odd_part()] {
                if part.is_zero() {
                    continue;
                }
                let p = Parity::of_grade(grade(b)).add(part.parity().unwrap());
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|s| s.norm().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Section32::max_abs).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.axpy(-1.0, other).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }

    /// As an element of Λ_{n+2} ⊗ C^∞ with θ¹, θ² as generators n+1, n+2.
    fn to_superfield(&self) -> BTreeMap<Blade, Vec<f64>> {
        let (t1, t2) = (1 << self.n, 1 << (self.n + 1));
        let mut out = BTreeMap::new();
        for (k, s) in self.terms() {
            for (blade, comp, sign) in
                [(k, PHI, 1.0), (k | t1, PSI1, 1.0), (k | t2, PSI2, 1.0), (k | t1 | t2, ETA, -1.0)]
            {
                let v = s.component(comp);
                if v.iter().any(|&x| x != 0.0) {
                    out.insert(blade, v.iter().map(|x| sign * x).collect::<Vec<f64>>());
                }
            }
        }
        out
    }

    fn from_superfield(n: usize, grid: Grid32, field: BTreeMap<Blade, Vec<f64>>) -> Self {
        let mask: Blade = (1 << n) - 1;
        let mut comps: BTreeMap<Blade, [Vec<f64>; 4]> = BTreeMap::new();
        for (blade, v) in field {
            let k = blade & mask;
            let (comp, sign) = match blade >> n {
                0 => (PHI, 1.0),
                1 => (PSI1, 1.0),
                2 => (PSI2, 1.0),
                _ => (ETA, -1.0),
            };
            let entry = comps.entry(k).or_insert_with(|| std::array::from_fn(|_| vec![0.0; grid.len()]));
            for (o, x) in entry[comp].iter_mut().zip(&v) {
                *o += sign * x;
            }
        }
        let mut out = Self::zero(n, grid);
        for (k, c) in comps {
            out.add_term(k, 1.0, &Section32::from_components(grid, c).expect("sizes match"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Morphism32 {
    pub n: usize,
    /// a^α, even, real bodies give the ordinary translation.
    pub translation: [GrassmannElement; 3],
    /// ε^a, odd.
    pub spinor: [GrassmannElement; 2],
    pub source: Grid32,
    pub target: Grid32,
}

impl Morphism32 {
    pub fn new(
        translation: [GrassmannElement; 3],
        spinor: [GrassmannElement; 2],
        source: Grid32,
        target: Grid32,
    ) -> Result<Self> {
        let n = translation[0].n();
        if n + 2 > crate::grassmann::MAX_GENERATORS {
            return Err(Error::Dimension(format!("Λ{n} leaves no room for the two odd coordinates")));
        }
        if translation.iter().chain(spinor.iter()).any(|e| e.n() != n) {
            return Err(Error::Dimension("parameters over different Grassmann algebras".into()));
        }
        if !translation.iter().all(GrassmannElement::is_even) || !spinor.iter().all(GrassmannElement::is_odd) {
            return Err(Error::Parity("translation must be even and the spinor odd".into()));
        }
        if translation.iter().chain(spinor.iter()).any(|e| e.field() != Field::Real) {
            return Err(Error::InvalidMorphism("parameters must be real".into()));
        }
        if !source.same_space(&target) {
            return Err(Error::Dimension("source and target differ in spatial grid".into()));
        }
        let c0 = translation[0].body().re;
        let tol = 1e-9 * source.dt();
        if source.t0 + c0 < target.t0 - tol || source.t_end() + c0 > target.t_end() + tol {
            return Err(Error::Support(format!(
                "time shift {c0} does not embed [{}, {}] into [{}, {}]",
                source.t0,
                source.t_end(),
                target.t0,
                target.t_end()
            )));
        }
        Ok(Morphism32 { n, translation, spinor, source, target })
    }

    pub fn identity(n: usize, grid: Grid32) -> Self {
        let z = GrassmannElement::zero(n, Field::Real);
        Self::new([z.clone(), z.clone(), z.clone()], [z.clone(), z], grid, grid).expect("valid")
    }

    pub fn translation(n: usize, shift: [f64; 3], source: Grid32, target: Grid32) -> Result<Self> {
        let z = GrassmannElement::zero(n, Field::Real);
        Self::new(shift.map(|c| GrassmannElement::real_scalar(n, c)), [z.clone(), z], source, target)
    }

    /// χ* = 1 + ζQ_B on a single grid.
    pub fn susy(zeta: &GrassmannElement, b: [f64; 2], grid: Grid32) -> Result<Self> {
        let n = zeta.n();
        let z = GrassmannElement::zero(n, Field::Real);
        Self::new([z.clone(), z.clone(), z], [zeta.scale_real(b[0]), zeta.scale_real(b[1])], grid, grid)
    }

    pub fn shift(&self) -> [f64; 3] {
        [0, 1, 2].map(|k| self.translation[k].body().re)
    }

    /// `second ∘ first`: a = a₁ + a₂ − iε₂^aγ^α_{ab}ε₁^b, ε = ε₁ + ε₂.
    pub fn compose(second: &Self, first: &Self) -> Result<Self> {
        if second.n != first.n {
            return Err(Error::Dimension("morphisms over different superpoints".into()));
        }
        if !first.target.same_as(&second.source) {
            return Err(Error::Dimension("target of the first morphism is not the source of the second".into()));
        }
        let translation = [0, 1, 2].map(|alpha| {
            let mut a = &first.translation[alpha] + &second.translation[alpha];
            let r = r_matrix(alpha);
            for i in 0..2 {
                for j in 0..2 {
                    if r[i][j] != 0.0 {
                        a = &a + &(&second.spinor[i] * &first.spinor[j]).scale_real(r[i][j]);
                    }
                }
            }
            a
        });
        let spinor = [0, 1].map(|a| &first.spinor[a] + &second.spinor[a]);
        Self::new(translation, spinor, first.source, second.target)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.translation.clone().map(|a| -&a), self.spinor.clone().map(|e| -&e), self.target, self.source)
    }

    pub fn exchange(&self, lambda: &GrassmannMorphism) -> Result<Self> {
        let tr = [0, 1, 2].map(|k| lambda.pullback(&self.translation[k]));
        let sp = [0, 1].map(|k| lambda.pullback(&self.spinor[k]));
        let [t0, t1, t2] = tr;
        let [s0, s1] = sp;
        Self::new([t0?, t1?, t2?], [s0?, s1?], self.source, self.target)
    }

    /// Nilpotent coordinate shifts δ^α = ν^α + R^α_{ab}ε^aθ^b in Λ_{n+2}.
    fn deltas(&self) -> [GrassmannElement; 3] {
        let nn = self.n + 2;
        let theta = [GrassmannElement::generator(nn, self.n + 1), GrassmannElement::generator(nn, self.n + 2)];
        [0, 1, 2].map(|alpha| {
            let mut d = self.translation[alpha].nilpotent_part().embed(nn);
            let r = r_matrix(alpha);
            for a in 0..2 {
                let eps = self.spinor[a].embed(nn);
                for b in 0..2 {
                    if r[a][b] != 0.0 {
                        d = &d + &(&eps * &theta[b]).scale_real(r[a][b]);
                    }
                }
            }
            d
        })
    }
}

type FieldMap = BTreeMap<Blade, Vec<f64>>;

fn accumulate(map: &mut FieldMap, blade: Blade, c: f64, v: &[f64]) {
    let e = map.entry(blade).or_insert_with(|| vec![0.0; v.len()]);
    for (o, x) in e.iter_mut().zip(v) {
        *o += c * x;
    }
}

/// Σ_k (δ·∂)^k f / k! as a Λ_{n+2}-valued field.
fn taylor(g: &Grid32, f: &[f64], deltas: &[GrassmannElement; 3]) -> FieldMap {
    let nn = deltas[0].n();
    let mut total: FieldMap = BTreeMap::new();
    let mut term: FieldMap = BTreeMap::new();
    term.insert(0, f.to_vec());
    let mut k = 0usize;
    while !term.is_empty() {
        for (b, v) in &term {
            accumulate(&mut total, *b, 1.0, v);
        }
        k += 1;
        let mut next: FieldMap = BTreeMap::new();
        for (alpha, delta) in deltas.iter().enumerate() {
            if delta.is_zero() {
                continue;
            }
            for (b, v) in &term {
                let prod = delta * &GrassmannElement::real_monomial(nn, *b, 1.0);
                if prod.is_zero() {
                    continue;
                }
                let dv = stencil::d(g, v, alpha);
                for (c, z) in prod.terms() {
                    accumulate(&mut next, c, z.re / k as f64, &dv);
                }
            }
        }
        next.retain(|_, v| v.iter().any(|&x| x != 0.0));
        term = next;
    }
    total
}

fn lagrange_periodic(v: &[f64], x: f64) -> f64 {
    let n = v.len() as isize;
    let base = x.floor() as isize;
    let mut acc = 0.0;
    for j in base - 3..=base + 4 {
        let mut w = 1.0;
        for k in base - 3..=base + 4 {
            if k != j {
                w *= (x - k as f64) / ((j - k) as f64);
            }
        }
        acc += w * v[j.rem_euclid(n) as usize];
    }
    acc
}

fn shift_axis(g: &Grid32, u: &[f64], axis: usize, cells: f64) -> Vec<f64> {
    let rounded = cells.round();
    let integer = (cells - rounded).abs() < 1e-9;
    let len = if axis == 1 { g.nx } else { g.ny };
    let mut out = vec![0.0; u.len()];
    let mut line = vec![0.0; len];
    for n in 0..g.nt {
        for other in 0..if axis == 1 { g.ny } else { g.nx } {
            let at = |k: usize| if axis == 1 { g.idx(n, k, other) } else { g.idx(n, other, k) };
            for (k, l) in line.iter_mut().enumerate() {
                *l = u[at(k)];
            }
            for k in 0..len {
                out[at(k)] = if integer {
                    line[(k as isize + rounded as isize).rem_euclid(len as isize) as usize]
                } else {
                    lagrange_periodic(&line, k as f64 + cells)
                };
            }
        }
    }
    out
}

/// Values of a target-grid array at (t + c⁰, x + c¹, y + c²) for every source point.
fn resample(u: &[f64], from: &Grid32, to: &Grid32, c: [f64; 3]) -> Vec<f64> {
    let mut v = u.to_vec();
    if c[1] != 0.0 {
        v = shift_axis(from, &v, 1, c[1] / from.dx());
    }
    if c[2] != 0.0 {
        v = shift_axis(from, &v, 2, c[2] / from.dy());
    }
    let s = from.slice_len();
    let dt = from.dt();
    let mut out = vec![0.0; to.len()];
    let mut column = vec![0.0; from.nt];
    for k in 0..s {
        for (n, col) in column.iter_mut().enumerate() {
            *col = v[n * s + k];
        }
        for m in 0..to.nt {
            let q = (to.t(m) + c[0] - from.t0) / dt;
            let r = q.round();
            out[m * s + k] = if (q - r).abs() < 1e-9 {
                if r >= 0.0 && (r as usize) < from.nt {
                    column[r as usize]
                } else {
                    0.0
                }
            } else if q < 0.0 || q > (from.nt - 1) as f64 {
                0.0
            } else {
                interpolate(&column, 0.0, 1.0, q)
            };
        }
    }
    out
}

/// χ*(H) for H over the target of χ; the result lives on the source grid.
pub fn pullback32(m: &Morphism32, h: &GrassmannSection32) -> Result<GrassmannSection32> {
    if h.n() != m.n {
        return Err(Error::Dimension(format!("section over Λ{}, morphism over Λ{}", h.n(), m.n)));
    }
    if !h.grid().same_as(&m.target) {
        return Err(Error::Dimension("section does not live on the morphism target".into()));
    }
    let nn = m.n + 2;
    let deltas = m.deltas();
    let theta_img = [0, 1].map(|b| &GrassmannElement::generator(nn, m.n + 1 + b) + &m.spinor[b].embed(nn));
    let one = GrassmannElement::one(nn, Field::Real);
    let c = m.shift();
    let mut out: FieldMap = BTreeMap::new();
    for (blade, v) in h.to_superfield() {
        let kpart = blade & ((1 << m.n) - 1);
        let jpart = blade >> m.n;
        let coeff = GrassmannElement::real_monomial(nn, kpart, 1.0);
        let mut pj = one.clone();
        for b in 0..2 {
            if jpart & (1 << b) != 0 {
                pj = &pj * &theta_img[b];
            }
        }
        for (tb, tv) in taylor(&m.target, &v, &deltas) {
            let prod = &(&coeff * &GrassmannElement::real_monomial(nn, tb, 1.0)) * &pj;
            if prod.is_zero() {
                continue;
            }
            let moved = resample(&tv, &m.target, &m.source, c);
            for (cb, z) in prod.terms() {
                accumulate(&mut out, cb, z.re, &moved);
            }
        }
    }
    Ok(GrassmannSection32::from_superfield(m.n, m.source, out))
}
