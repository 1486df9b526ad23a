//! The flat 3|2 Wess-Zumino model: F = φ + ψ_a θ^a + η θ²/2 on a spacetime
//! grid periodic in x and y, with P = (mφ − η, (i∇̸ + m)ψ, □φ + mη).

pub mod gamma;
pub mod green;
pub mod susy;
pub mod torsion;

use serde::{Deserialize, Serialize};

use crate::dynamics::{FieldTheory, ModelTag, Side};
use crate::error::{Error, Result};
use crate::grassmann::Parity;

pub use green::{green32, green_kg, numerical_cone_mask};
pub use susy::{pullback32, q_b, GrassmannSection32, Morphism32};
pub use torsion::{check_supertorsion_flat, TorsionReport};

pub const DEFAULT_CFL: f64 = 0.5;
pub const DEFAULT_MASS: f64 = 1.0;
/// Rows that must separate a compact support from the first and last time slice.
pub const TIME_MARGIN: usize = 3;
/// Extra cells added to the leapfrog domain of dependence.
pub const CONE_MARGIN: usize = 2;

pub const PHI: usize = 0;
pub const PSI1: usize = 1;
pub const PSI2: usize = 2;
pub const ETA: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid32 {
    pub nt: usize,
    pub nx: usize,
    pub ny: usize,
    pub t0: f64,
    pub lx: f64,
    pub ly: f64,
    pub cfl: f64,
}

impl Grid32 {
    pub fn new(nt: usize, nx: usize, ny: usize, t0: f64, lx: f64, ly: f64, cfl: f64) -> Result<Self> {
        if nt < 2 * TIME_MARGIN + 2 || nx < 4 || ny < 4 {
            return Err(Error::GridTooSmall(format!("{nt}×{nx}×{ny}")));
        }
        if !(lx > 0.0 && ly > 0.0) {
            return Err(Error::Dimension(format!("box {lx}×{ly}")));
        }
        let g = Grid32 { nt, nx, ny, t0, lx, ly, cfl };
        let bound = 1.0 / (1.0 / g.dx().powi(2) + 1.0 / g.dy().powi(2)).sqrt();
        if !(cfl > 0.0) || g.dt() > bound * (1.0 + 1e-12) {
            return Err(Error::Cfl(format!("dt = {} exceeds the leapfrog bound {bound}", g.dt())));
        }
        Ok(g)
    }

    /// Square box of side `l`, nx = ny = `n`, default CFL.
    pub fn square(nt: usize, n: usize, l: f64) -> Result<Self> {
        Self::new(nt, n, n, 0.0, l, l, DEFAULT_CFL)
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.ly / self.ny as f64
    }

    pub fn dt(&self) -> f64 {
        self.cfl * self.dx().min(self.dy())
    }

    pub fn t(&self, n: usize) -> f64 {
        self.t0 + n as f64 * self.dt()
    }

    pub fn t_end(&self) -> f64 {
        self.t(self.nt - 1)
    }

    pub fn len(&self) -> usize {
        self.nt * self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn slice_len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn idx(&self, n: usize, i: usize, j: usize) -> usize {
        (n * self.nx + i) * self.ny + j
    }

    /// Trapezoid-in-time cell volume.
    pub fn weight(&self, n: usize) -> f64 {
        let w = self.dt() * self.dx() * self.dy();
        if n == 0 || n + 1 == self.nt {
            0.5 * w
        } else {
            w
        }
    }

    pub fn same_space(&self, other: &Grid32) -> bool {
        self.nx == other.nx
            && self.ny == other.ny
            && (self.lx - other.lx).abs() < 1e-12
            && (self.ly - other.ly).abs() < 1e-12
            && (self.cfl - other.cfl).abs() < 1e-12
    }

    pub fn same_as(&self, other: &Grid32) -> bool {
        self.same_space(other) && self.nt == other.nt && (self.t0 - other.t0).abs() < 1e-12
    }

    pub fn sample(&self, f: impl Fn(f64, f64, f64) -> f64) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for n in 0..self.nt {
            let t = self.t(n);
            for i in 0..self.nx {
                let x = i as f64 * self.dx();
                for j in 0..self.ny {
                    out[self.idx(n, i, j)] = f(t, x, j as f64 * self.dy());
                }
            }
        }
        out
    }
}

/// Finite-difference operators on a [`Grid32`]: 2nd-order centered, periodic
/// in space, one-sided 2nd-order on the first and last time slice.
pub mod stencil {
    use super::Grid32;

    pub fn d_t(g: &Grid32, u: &[f64]) -> Vec<f64> {
        let s = g.slice_len();
        let nt = g.nt;
        let h = 0.5 / g.dt();
        let mut out = vec![0.0; u.len()];
        for k in 0..s {
            out[k] = h * (-3.0 * u[k] + 4.0 * u[s + k] - u[2 * s + k]);
            let l = (nt - 1) * s + k;
            out[l] = h * (3.0 * u[l] - 4.0 * u[l - s] + u[l - 2 * s]);
        }
        for n in 1..nt - 1 {
            for k in 0..s {
                let p = n * s + k;
                out[p] = h * (u[p + s] - u[p - s]);
            }
        }
        out
    }

    pub fn d_tt(g: &Grid32, u: &[f64]) -> Vec<f64> {
        let s = g.slice_len();
        let nt = g.nt;
        let h = 1.0 / (g.dt() * g.dt());
        let mut out = vec![0.0; u.len()];
        for k in 0..s {
            out[k] = h * (2.0 * u[k] - 5.0 * u[s + k] + 4.0 * u[2 * s + k] - u[3 * s + k]);
            let l = (nt - 1) * s + k;
            out[l] = h * (2.0 * u[l] - 5.0 * u[l - s] + 4.0 * u[l - 2 * s] - u[l - 3 * s]);
        }
        for n in 1..nt - 1 {
            for k in 0..s {
                let p = n * s + k;
                out[p] = h * (u[p + s] - 2.0 * u[p] + u[p - s]);
            }
        }
        out
    }

    fn spatial(g: &Grid32, u: &[f64], axis: usize, weights: &[(isize, f64)]) -> Vec<f64> {
        let (nx, ny) = (g.nx as isize, g.ny as isize);
        let mut out = vec![0.0; u.len()];
        for n in 0..g.nt {
            for i in 0..nx {
                for j in 0..ny {
                    let mut acc = 0.0;
                    for &(o, w) in weights {
                        let (ii, jj) =
                            if axis == 1 { ((i + o).rem_euclid(nx), j) } else { (i, (j + o).rem_euclid(ny)) };
                        acc += w * u[g.idx(n, ii as usize, jj as usize)];
                    }
                    out[g.idx(n, i as usize, j as usize)] = acc;
                }
            }
        }
        out
    }

    pub fn d_x(g: &Grid32, u: &[f64]) -> Vec<f64> {
        let h = 0.5 / g.dx();
        spatial(g, u, 1, &[(1, h), (-1, -h)])
    }

    pub fn d_y(g: &Grid32, u: &[f64]) -> Vec<f64> {
        let h = 0.5 / g.dy();
        spatial(g, u, 2, &[(1, h), (-1, -h)])
    }

    /// ∂_α for α = 0 (t), 1 (x), 2 (y).
    pub fn d(g: &Grid32, u: &[f64], alpha: usize) -> Vec<f64> {
        match alpha {
            0 => d_t(g, u),
            1 => d_x(g, u),
            2 => d_y(g, u),
            _ => panic!("vector index {alpha}"),
        }
    }

    pub fn laplacian(g: &Grid32, u: &[f64]) -> Vec<f64> {
        let (hx, hy) = (1.0 / (g.dx() * g.dx()), 1.0 / (g.dy() * g.dy()));
        let a = spatial(g, u, 1, &[(1, hx), (0, -2.0 * hx), (-1, hx)]);
        let b = spatial(g, u, 2, &[(1, hy), (0, -2.0 * hy), (-1, hy)]);
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    }

    /// □ = ∂t² − ∂x² − ∂y² with 3-point stencils in every direction.
    pub fn box_op(g: &Grid32, u: &[f64]) -> Vec<f64> {
        let tt = d_tt(g, u);
        let l = laplacian(g, u);
        tt.iter().zip(&l).map(|(a, b)| a - b).collect()
    }

    /// (i∇̸ψ)_a = K^α_{ac} ∂_α ψ_c
    pub fn dirac(g: &Grid32, psi: [&[f64]; 2]) -> [Vec<f64>; 2] {
        let mut out = [vec![0.0; psi[0].len()], vec![0.0; psi[0].len()]];
        for alpha in 0..3 {
            let k = super::gamma::dirac_matrix(alpha);
            let d = [d(g, psi[0], alpha), d(g, psi[1], alpha)];
            for a in 0..2 {
                for c in 0..2 {
                    if k[a][c] != 0.0 {
                        for (o, v) in out[a].iter_mut().zip(&d[c]) {
                            *o += k[a][c] * v;
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section32 {
    grid: Grid32,
    comps: [Vec<f64>; 4],
}

fn axpy_vec(a: &[f64], c: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// Space-time support of a section as index sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Support32 {
    pub rows: (usize, usize),
    pub xs: Vec<bool>,
    pub ys: Vec<bool>,
}

fn cyclic_gap(a: &[bool], b: &[bool]) -> usize {
    let n = a.len();
    let mut best = usize::MAX;
    for i in (0..n).filter(|&i| a[i]) {
        for j in (0..n).filter(|&j| b[j]) {
            let d = i.abs_diff(j);
            best = best.min(d.min(n - d));
        }
    }
    best
}

impl Support32 {
    /// Lower bound for the torus Manhattan distance, in cells, between the two supports.
    pub fn manhattan_gap(&self, other: &Support32) -> usize {
        cyclic_gap(&self.xs, &other.xs) + cyclic_gap(&self.ys, &other.ys)
    }

    /// Largest row difference between a point of one support and a point of the other.
    pub fn max_row_separation(&self, other: &Support32) -> usize {
        self.rows.1.abs_diff(other.rows.0).max(other.rows.1.abs_diff(self.rows.0))
    }
}

impl Section32 {
    pub fn new(grid: Grid32, phi: Vec<f64>, psi1: Vec<f64>, psi2: Vec<f64>, eta: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        if [&phi, &psi1, &psi2, &eta].iter().any(|v| v.len() != n) {
            return Err(Error::Dimension(format!("component length differs from grid size {n}")));
        }
        Ok(Section32 { grid, comps: [phi, psi1, psi2, eta] })
    }

    pub fn from_components(grid: Grid32, comps: [Vec<f64>; 4]) -> Result<Self> {
        let [a, b, c, d] = comps;
        Self::new(grid, a, b, c, d)
    }

    pub fn zero(grid: Grid32) -> Self {
        let z = vec![0.0; grid.len()];
        Section32 { grid, comps: [z.clone(), z.clone(), z.clone(), z] }
    }

    /// Samples the four component functions of (t, x, y).
    pub fn from_fns(grid: Grid32, f: [&dyn Fn(f64, f64, f64) -> f64; 4]) -> Self {
        Section32 { grid, comps: [grid.sample(f[0]), grid.sample(f[1]), grid.sample(f[2]), grid.sample(f[3])] }
    }

    pub fn with_component(grid: Grid32, which: usize, values: Vec<f64>) -> Result<Self> {
        let mut s = Self::zero(grid);
        if values.len() != grid.len() {
            return Err(Error::Dimension("component length".into()));
        }
        s.comps[which] = values;
        Ok(s)
    }

    pub fn grid(&self) -> Grid32 {
        self.grid
    }

    pub fn phi(&self) -> &[f64] {
        &self.comps[PHI]
    }

    pub fn psi(&self, a: usize) -> &[f64] {
        &self.comps[PSI1 + a]
    }

    pub fn eta(&self) -> &[f64] {
        &self.comps[ETA]
    }

    pub fn component(&self, k: usize) -> &[f64] {
        &self.comps[k]
    }

    pub fn components(&self) -> &[Vec<f64>; 4] {
        &self.comps
    }

    pub fn into_components(self) -> [Vec<f64>; 4] {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.iter().all(|&x| x == 0.0))
    }

    pub fn parity(&self) -> Option<Parity> {
        let nz = |k: usize| self.comps[k].iter().any(|&x| x != 0.0);
        let even = nz(PHI) || nz(ETA);
        let odd = nz(PSI1) || nz(PSI2);
        match (even, odd) {
            (true, true) => None,
            (false, true) => Some(Parity::Odd),
            _ => Some(Parity::Even),
        }
    }

    pub fn even_part(&self) -> Self {
        let z = vec![0.0; self.grid.len()];
        Section32 { grid: self.grid, comps: [self.comps[PHI].clone(), z.clone(), z, self.comps[ETA].clone()] }
    }

    pub fn odd_part(&self) -> Self {
        let z = vec![0.0; self.grid.len()];
        Section32 { grid: self.grid, comps: [z.clone(), self.comps[PSI1].clone(), self.comps[PSI2].clone(), z] }
    }

    pub fn axpy(&self, c: f64, other: &Self) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::Dimension("sections live on different grids".into()));
        }
        let comps = [0, 1, 2, 3].map(|k| axpy_vec(&self.comps[k], c, &other.comps[k]));
        Ok(Section32 { grid: self.grid, comps })
    }

    pub fn scale(&self, c: f64) -> Self {
        Section32 { grid: self.grid, comps: self.comps.clone().map(|v| v.iter().map(|x| c * x).collect()) }
    }

    pub fn map_time(&self, w: impl Fn(f64) -> f64) -> Self {
        let s = self.grid.slice_len();
        let mut out = self.clone();
        for n in 0..self.grid.nt {
            let f = w(self.grid.t(n));
            for c in out.comps.iter_mut() {
                for v in &mut c[n * s..(n + 1) * s] {
                    *v *= f;
                }
            }
        }
        out
    }

    pub fn norm(&self) -> f64 {
        let s = self.grid.slice_len();
        let mut acc = 0.0;
        for c in &self.comps {
            for (p, v) in c.iter().enumerate() {
                acc += self.grid.weight(p / s) * v * v;
            }
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().flat_map(|c| c.iter()).fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.axpy(-1.0, other).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }

    pub fn support(&self) -> Option<Support32> {
        let g = self.grid;
        let mut rows: Option<(usize, usize)> = None;
        let mut xs = vec![false; g.nx];
        let mut ys = vec![false; g.ny];
        for n in 0..g.nt {
            for i in 0..g.nx {
                for j in 0..g.ny {
                    let p = g.idx(n, i, j);
                    if self.comps.iter().any(|c| c[p] != 0.0) {
                        rows = Some(rows.map_or((n, n), |(a, _)| (a, n)));
                        xs[i] = true;
                        ys[j] = true;
                    }
                }
            }
        }
        rows.map(|rows| Support32 { rows, xs, ys })
    }

    pub fn is_compact(&self) -> bool {
        match self.support() {
            None => true,
            Some(s) => s.rows.0 >= TIME_MARGIN && s.rows.1 + TIME_MARGIN < self.grid.nt,
        }
    }

    pub fn to_json(&self) -> Section32Json {
        Section32Json {
            model: "3|2".into(),
            grid: self.grid,
            shape: [self.grid.nt, self.grid.nx, self.grid.ny],
            phi: self.comps[PHI].clone(),
            psi1: self.comps[PSI1].clone(),
            psi2: self.comps[PSI2].clone(),
            eta: self.comps[ETA].clone(),
        }
    }

    pub fn from_json(j: &Section32Json) -> Result<Self> {
        if j.model != "3|2" {
            return Err(Error::Parse(format!("expected model 3|2, found {}", j.model)));
        }
        let g = Grid32::new(j.grid.nt, j.grid.nx, j.grid.ny, j.grid.t0, j.grid.lx, j.grid.ly, j.grid.cfl)?;
        if j.shape != [g.nt, g.nx, g.ny] {
            return Err(Error::Parse("shape disagrees with grid".into()));
        }
        Self::new(g, j.phi.clone(), j.psi1.clone(), j.psi2.clone(), j.eta.clone())
    }
}

/// Row-major (t, x, y) component arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section32Json {
    pub model: String,
    pub grid: Grid32,
    pub shape: [usize; 3],
    pub phi: Vec<f64>,
    pub psi1: Vec<f64>,
    pub psi2: Vec<f64>,
    pub eta: Vec<f64>,
}

/// C^∞ bump exp(1 − 1/(1 − r²)) for r < 1.
pub fn bump(r: f64) -> f64 {
    if r.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r * r)).exp()
    }
}

/// Space-time bump of radius `radius` centered at (t, x, y), using the
/// periodic distance in space.
pub fn spacetime_bump(g: &Grid32, center: [f64; 3], radius: f64) -> Vec<f64> {
    let per = |d: f64, l: f64| {
        let d = d.rem_euclid(l);
        d.min(l - d)
    };
    g.sample(|t, x, y| {
        let dx = per(x - center[1], g.lx);
        let dy = per(y - center[2], g.ly);
        let dt = t - center[0];
        bump((dt * dt + dx * dx + dy * dy).sqrt() / radius)
    })
}

pub fn apply_p32(s: &Section32, mass: f64) -> Result<Section32> {
    let g = s.grid;
    let [phi, p1, p2, eta] = &s.comps;
    let [d1, d2] = stencil::dirac(&g, [p1, p2]);
    let bx = stencil::box_op(&g, phi);
    Section32::new(
        g,
        phi.iter().zip(eta).map(|(f, e)| mass * f - e).collect(),
        axpy_vec(&d1, mass, p1),
        axpy_vec(&d2, mass, p2),
        axpy_vec(&bx, mass, eta),
    )
}

/// ⟨F₁, F₂⟩ = ∫ (φ₁η₂ + φ₂η₁ + ψ₁^a ψ₂_a) with ψ^a = ψ_b ε^{ab}.
pub fn pair32(a: &Section32, b: &Section32) -> Result<f64> {
    if !a.grid.same_as(&b.grid) {
        return Err(Error::Dimension("sections live on different grids".into()));
    }
    let g = a.grid;
    let s = g.slice_len();
    let mut acc = 0.0;
    for n in 0..g.nt {
        let w = g.weight(n);
        let mut row = 0.0;
        for p in n * s..(n + 1) * s {
            let up = gamma::raise_spinor([a.comps[PSI1][p], a.comps[PSI2][p]]);
            row += a.comps[PHI][p] * b.comps[ETA][p]
                + b.comps[PHI][p] * a.comps[ETA][p]
                + up[0] * b.comps[PSI1][p]
                + up[1] * b.comps[PSI2][p];
        }
        acc += w * row;
    }
    Ok(acc)
}

/// Relative residual ‖(i∇̸ + m)(i∇̸ − m)u + (□ + m²)u‖ / ‖(□ + m²)u‖, applied to
/// both spinor components set to `u`; measured away from the first and last
/// time slices.
pub fn dirac_factorization_residual(g: &Grid32, u: &[f64], mass: f64) -> f64 {
    let minus = stencil::dirac(g, [u, u]);
    let minus = [axpy_vec(&minus[0], -mass, u), axpy_vec(&minus[1], -mass, u)];
    let plus = stencil::dirac(g, [&minus[0], &minus[1]]);
    let plus = [axpy_vec(&plus[0], mass, &minus[0]), axpy_vec(&plus[1], mass, &minus[1])];
    let kg = axpy_vec(&stencil::box_op(g, u), mass * mass, u);
    let s = g.slice_len();
    let (mut num, mut den) = (0.0, 0.0);
    for n in 2..g.nt - 2 {
        for p in n * s..(n + 1) * s {
            for c in 0..2 {
                num += (plus[c][p] + kg[p]).powi(2);
                den += kg[p].powi(2);
            }
        }
    }
    (num / den).sqrt()
}

/// The 3|2 Wess-Zumino model with mass m; dim S = 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theory32 {
    pub mass: f64,
}

impl FieldTheory for Theory32 {
    type Section = Section32;

    fn tag(&self) -> ModelTag {
        ModelTag::M32
    }

    fn spinor_dim_odd(&self) -> bool {
        false
    }

    fn apply_p(&self, s: &Section32) -> Result<Section32> {
        apply_p32(s, self.mass)
    }

    fn green(&self, s: &Section32, side: Side) -> Result<Section32> {
        green32(s, self.mass, side)
    }

    fn pair(&self, a: &Section32, b: &Section32) -> Result<f64> {
        pair32(a, b)
    }

    fn parity(&self, s: &Section32) -> Option<Parity> {
        s.parity()
    }

    fn is_zero(&self, s: &Section32) -> bool {
        s.is_zero()
    }

    fn norm(&self, s: &Section32) -> f64 {
        s.norm()
    }

    fn axpy(&self, a: &Section32, c: f64, b: &Section32) -> Result<Section32> {
        a.axpy(c, b)
    }

    fn weight_in_time(&self, s: &Section32, w: &dyn Fn(f64) -> f64) -> Section32 {
        s.map_time(w)
    }

    fn time_axis(&self, s: &Section32) -> (f64, f64, f64) {
        (s.grid.t0, s.grid.t_end(), s.grid.dt())
    }

    fn time_support(&self, s: &Section32) -> Option<(f64, f64)> {
        s.support().map(|sp| (s.grid.t(sp.rows.0), s.grid.t(sp.rows.1)))
    }

    fn is_compact(&self, s: &Section32) -> bool {
        s.is_compact()
    }

    fn split_parity(&self, s: &Section32) -> [Section32; 2] {
        [s.even_part(), s.odd_part()]
    }

    /// Disjointness with respect to the numerical cone of the leapfrog scheme,
    /// which contains the physical light cone.
    fn causally_disjoint(&self, a: &Section32, b: &Section32) -> bool {
        match (a.support(), b.support()) {
            (Some(sa), Some(sb)) => sa.manhattan_gap(&sb) > sa.max_row_separation(&sb) + CONE_MARGIN,
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid32 {
        Grid32::square(24, 16, 4.0).unwrap()
    }

    #[test]
    fn p_of_zero_is_zero() {
        assert!(apply_p32(&Section32::zero(grid()), 1.0).unwrap().is_zero());
    }

    #[test]
    fn constant_spinor_is_scaled_by_mass() {
        let g = grid();
        let s =
            Section32::new(g, vec![0.0; g.len()], vec![2.0; g.len()], vec![-1.0; g.len()], vec![0.0; g.len()]).unwrap();
        let p = apply_p32(&s, 0.7).unwrap();
        assert!(p.psi(0).iter().all(|v| (v - 1.4).abs() < 1e-12));
        assert!(p.psi(1).iter().all(|v| (v + 0.7).abs() < 1e-12));
    }

    #[test]
    fn cfl_violation_is_rejected() {
        assert!(matches!(Grid32::new(16, 16, 16, 0.0, 4.0, 4.0, 0.9), Err(Error::Cfl(_))));
    }

    #[test]
    fn pairing_of_phi_with_eta() {
        let g = grid();
        let a = Section32::with_component(g, PHI, spacetime_bump(&g, [2.0, 2.0, 2.0], 1.0)).unwrap();
        let b = Section32::with_component(g, ETA, spacetime_bump(&g, [2.2, 2.0, 1.8], 1.0)).unwrap();
        let direct: f64 = (0..g.len()).map(|p| a.phi()[p] * b.eta()[p] * g.weight(p / g.slice_len())).sum();
        assert!((pair32(&a, &b).unwrap() - direct).abs() < 1e-14);
        assert_eq!(pair32(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn spinor_pairing_uses_epsilon() {
        let g = grid();
        let one = vec![1.0; g.len()];
        let z = vec![0.0; g.len()];
        let a = Section32::new(g, z.clone(), one.clone(), z.clone(), z.clone()).unwrap();
        let b = Section32::new(g, z.clone(), z.clone(), one, z).unwrap();
        let vol = g.lx * g.ly * (g.t_end() - g.t0);
        // ψ₁^a ψ₂_a = ψ₁_2 ψ₂_1 − ψ₁_1 ψ₂_2
        assert!((pair32(&a, &b).unwrap() + vol).abs() < 1e-12);
        assert!((pair32(&b, &a).unwrap() - vol).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let g = grid();
        let s = Section32::with_component(g, PSI2, spacetime_bump(&g, [2.0, 1.0, 1.0], 1.0)).unwrap();
        let j = serde_json::to_string(&s.to_json()).unwrap();
        let back = Section32::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
