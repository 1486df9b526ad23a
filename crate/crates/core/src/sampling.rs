//! Seeded random data for the randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grassmann::{grade, Blade, Field, GrassmannElement, Parity};
use crate::model11::{GrassmannSection11, Grid1, Section11};
use crate::model32::{bump, GrassmannSection32, Grid32, Section32};
use crate::numerics::gaussian;
use crate::superlinalg::SuperMatrix;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Blades of Λₙ with the given parity, the empty blade excluded when `nilpotent`.
fn blades(n: usize, parity: Parity, nilpotent: bool) -> impl Iterator<Item = Blade> {
    (0..(1u32 << n)).filter(move |&b| Parity::of_grade(grade(b)) == parity && !(nilpotent && b == 0))
}

/// Real element with coefficients uniform in [−1, 1] on every blade of the
/// given parity.
pub fn random_grassmann(rng: &mut impl Rng, n: usize, parity: Parity) -> GrassmannElement {
    let mut e = GrassmannElement::zero(n, Field::Real);
    for b in blades(n, parity, false) {
        e = &e + &GrassmannElement::real_monomial(n, b, rng.gen_range(-1.0..=1.0));
    }
    e
}

pub fn random_odd(rng: &mut impl Rng, n: usize) -> GrassmannElement {
    random_grassmann(rng, n, Parity::Odd)
}

pub fn random_even_nilpotent(rng: &mut impl Rng, n: usize) -> GrassmannElement {
    let mut e = GrassmannElement::zero(n, Field::Real);
    for b in blades(n, Parity::Even, true) {
        e = &e + &GrassmannElement::real_monomial(n, b, rng.gen_range(-1.0..=1.0));
    }
    e
}

/// Integer-valued complex coefficients in [−k, k], so products stay exact.
pub fn random_integer_complex(rng: &mut impl Rng, n: usize, parity: Parity, k: i32) -> GrassmannElement {
    let mut e = GrassmannElement::zero(n, Field::Complex);
    for b in blades(n, parity, false) {
        let z = num_complex::Complex64::new(rng.gen_range(-k..=k) as f64, rng.gen_range(-k..=k) as f64);
        e = &e + &GrassmannElement::monomial(n, b, z);
    }
    e
}

/// Real element with integer coefficients in [−k, k].
pub fn random_real_integer(rng: &mut impl Rng, n: usize, parity: Parity, k: i32) -> GrassmannElement {
    let mut e = GrassmannElement::zero(n, Field::Real);
    for b in blades(n, parity, false) {
        e = &e + &GrassmannElement::real_monomial(n, b, rng.gen_range(-k..=k) as f64);
    }
    e
}

/// Even (p|q) → (p|q) morphism with a diagonally dominant body, so it is
/// invertible. With `integer` set all coefficients are small integers and
/// the body is not controlled.
pub fn random_supermatrix(rng: &mut impl Rng, n: usize, p: usize, q: usize, integer: bool) -> SuperMatrix {
    let dim = p + q;
    let rows = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let odd = (i < p) != (j < p);
                    let parity = if odd { Parity::Odd } else { Parity::Even };
                    if integer {
                        return random_real_integer(rng, n, parity, 3);
                    }
                    if odd {
                        return random_odd(rng, n);
                    }
                    let body = if i == j { 2.0 + rng.gen_range(0.0..1.0) } else { rng.gen_range(-0.5..0.5) };
                    &GrassmannElement::real_scalar(n, body) + &random_even_nilpotent(rng, n)
                })
                .collect()
        })
        .collect();
    let m = crate::superlinalg::GMatrix::from_rows(n, rows).expect("square rows");
    SuperMatrix::new((p, q), (p, q), m).expect("even pattern")
}

/// Sum of Gaussian bumps centered inside `window` with supports inside it.
pub fn random_profile(rng: &mut impl Rng, grid: &Grid1, window: (f64, f64)) -> Vec<f64> {
    let width = window.1 - window.0;
    let bumps = rng.gen_range(1..=3);
    let mut out = vec![0.0; grid.n];
    for _ in 0..bumps {
        let sigma = width * rng.gen_range(0.02..0.05);
        let lo = window.0 + 9.0 * sigma;
        let hi = window.1 - 9.0 * sigma;
        let c = rng.gen_range(lo..hi);
        let a = rng.gen_range(-1.0..=1.0);
        for (o, t) in out.iter_mut().zip(grid.times()) {
            *o += a * gaussian(t, c, sigma);
        }
    }
    out
}

pub fn random_section11(rng: &mut impl Rng, grid: &Grid1, window: (f64, f64), parity: Option<Parity>) -> Section11 {
    let f = if parity != Some(Parity::Odd) { random_profile(rng, grid, window) } else { vec![0.0; grid.n] };
    let h = if parity != Some(Parity::Even) { random_profile(rng, grid, window) } else { vec![0.0; grid.n] };
    Section11::new(*grid, f, h).expect("grid sized")
}

/// Σ_K ζ^K ⊗ F_K over a random nonempty set of blades.
pub fn random_grassmann_section11(
    rng: &mut impl Rng,
    n: usize,
    grid: &Grid1,
    window: (f64, f64),
) -> GrassmannSection11 {
    let mut out = GrassmannSection11::zero(n, *grid);
    for b in 0..(1u32 << n) {
        if b == 0 || rng.gen_bool(0.5) {
            out.add_term(b, 1.0, &random_section11(rng, grid, window, None));
        }
    }
    out
}

/// e^{−(t−t_c)²/2σ²}·cos(kx + a)·cos(ky + b) with σ a tenth of the time span.
pub fn smooth_field32(g: &Grid32, phase: (f64, f64)) -> Vec<f64> {
    let tc = 0.5 * (g.t0 + g.t_end());
    let sig = (g.t_end() - g.t0) / 10.0;
    let kx = 2.0 * std::f64::consts::PI / g.lx;
    let ky = 2.0 * std::f64::consts::PI / g.ly;
    g.sample(|t, x, y| {
        (-(t - tc).powi(2) / (2.0 * sig * sig)).exp() * (kx * x + phase.0).cos() * (ky * y + phase.1).cos()
    })
}

/// Smooth section with compact time support: C^∞ bump of half-width
/// `half_width` in time around the middle of the window, plane-wave in space.
pub fn compact_field32(g: &Grid32, phase: (f64, f64), half_width: f64) -> Vec<f64> {
    let tc = 0.5 * (g.t0 + g.t_end());
    let kx = 2.0 * std::f64::consts::PI / g.lx;
    let ky = 2.0 * std::f64::consts::PI / g.ly;
    g.sample(|t, x, y| bump((t - tc) / half_width) * (kx * x + phase.0).cos() * (ky * y + phase.1).cos())
}

pub fn random_section32(rng: &mut impl Rng, g: &Grid32, compact_half_width: Option<f64>) -> Section32 {
    let comps = std::array::from_fn(|_| {
        let phase = (rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3));
        let a = rng.gen_range(-1.0..=1.0);
        let v = match compact_half_width {
            Some(w) => compact_field32(g, phase, w),
            None => smooth_field32(g, phase),
        };
        v.into_iter().map(|x| a * x).collect::<Vec<f64>>()
    });
    Section32::from_components(*g, comps).expect("grid sized")
}

pub fn random_grassmann_section32(
    rng: &mut impl Rng,
    n: usize,
    g: &Grid32,
    compact_half_width: Option<f64>,
) -> GrassmannSection32 {
    let mut out = GrassmannSection32::zero(n, *g);
    for b in 0..(1u32 << n) {
        if b == 0 || rng.gen_bool(0.5) {
            out.add_term(b, 1.0, &random_section32(rng, g, compact_half_width));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parities_are_respected() {
        let mut r = rng(1);
        for n in 0..4 {
            assert!(random_odd(&mut r, n).is_odd());
            let e = random_even_nilpotent(&mut r, n);
            assert!(e.is_even());
            assert_eq!(e.body().re, 0.0);
        }
    }

    #[test]
    fn same_seed_same_data() {
        let g = Grid1::new(0.0, 2.0, 257).unwrap();
        let a = random_section11(&mut rng(9), &g, (0.2, 1.8), None);
        let b = random_section11(&mut rng(9), &g, (0.2, 1.8), None);
        assert_eq!(a, b);
        assert!(a.is_compact());
    }
}
