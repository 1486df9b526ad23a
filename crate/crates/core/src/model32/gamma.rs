//! Gamma matrices of Cl(2,1) in the representation γ₀ = σ₂, γ₁ = iσ₁,
//! γ₂ = iσ₃ with C = γ₀, metric g = diag(1, −1, −1) and ε₁₂ = 1.

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub type M2 = Matrix2<Complex64>;

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const METRIC: [f64; 3] = [1.0, -1.0, -1.0];

/// ε_{ab} = ε^{ab}, with ε₁₂ = 1 (0-based indices here).
pub const EPS: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

pub fn sigma(k: usize) -> M2 {
    match k {
        1 => M2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        2 => M2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        3 => M2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
        _ => panic!("Pauli index {k}"),
    }
}

/// γ_α with lower index.
pub fn gamma_lower(alpha: usize) -> M2 {
    let i = c(0.0, 1.0);
    match alpha {
        0 => sigma(2),
        1 => sigma(1) * i,
        2 => sigma(3) * i,
        _ => panic!("vector index {alpha}"),
    }
}

/// γ^α = g^{αα} γ_α.
pub fn gamma_upper(alpha: usize) -> M2 {
    gamma_lower(alpha) * c(METRIC[alpha], 0.0)
}

pub fn charge_conjugation() -> M2 {
    gamma_lower(0)
}

fn inv(m: &M2) -> M2 {
    m.try_inverse().expect("invertible")
}

/// γ^α_{ab} = i(γ^α C⁻¹)_{ab}, symmetric and purely imaginary.
pub fn gamma_spinor(alpha: usize) -> M2 {
    gamma_upper(alpha) * inv(&charge_conjugation()) * c(0.0, 1.0)
}

/// R^α_{ab} = −iγ^α_{ab}, real.
pub fn r_matrix(alpha: usize) -> [[f64; 2]; 2] {
    let g = gamma_spinor(alpha) * c(0.0, -1.0);
    [[g[(0, 0)].re, g[(0, 1)].re], [g[(1, 0)].re, g[(1, 1)].re]]
}

/// Matrix K^α of the Dirac operator, (i∇̸ψ)_a = K^α_{ac} ∂_α ψ_c, K^α = R^α ε.
pub fn dirac_matrix(alpha: usize) -> [[f64; 2]; 2] {
    let r = r_matrix(alpha);
    let mut k = [[0.0; 2]; 2];
    for a in 0..2 {
        for cc in 0..2 {
            k[a][cc] = (0..2).map(|b| r[a][b] * EPS[b][cc]).sum();
        }
    }
    k
}

/// γ_{αβ} = ½[γ_α, γ_β]
pub fn gamma_pair(alpha: usize, beta: usize) -> M2 {
    let (a, b) = (gamma_lower(alpha), gamma_lower(beta));
    (a * b - b * a) * c(0.5, 0.0)
}

pub fn levi_civita(a: usize, b: usize, d: usize) -> f64 {
    match (a, b, d) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Spinor index lowering B_b = B^a ε_{ab}.
pub fn lower_spinor(b: [f64; 2]) -> [f64; 2] {
    [b[0] * EPS[0][0] + b[1] * EPS[1][0], b[0] * EPS[0][1] + b[1] * EPS[1][1]]
}

/// Spinor index raising s^a = s_b ε^{ab}.
pub fn raise_spinor(s: [f64; 2]) -> [f64; 2] {
    [s[0] * EPS[0][0] + s[1] * EPS[0][1], s[0] * EPS[1][0] + s[1] * EPS[1][1]]
}

fn max_abs(m: &M2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

fn check(name: impl Into<String>, residual: f64) -> IdentityCheck {
    IdentityCheck { name: name.into(), residual, pass: residual == 0.0 }
}

/// Every identity of the gamma block, evaluated in exact arithmetic on the
/// fixed representation; `completeness_trials` random integer matrices L
/// test L = ½Tr(L) + ½Tr(Lγ_α)γ^α.
pub fn verify_clifford<R: Rng>(rng: &mut R, completeness_trials: usize) -> Vec<IdentityCheck> {
    let id = M2::identity();
    let cm = charge_conjugation();
    let cinv = inv(&cm);
    let mut out = Vec::new();
    for a in 0..3 {
        for b in a..3 {
            let (ga, gb) = (gamma_lower(a), gamma_lower(b));
            let g = if a == b { METRIC[a] } else { 0.0 };
            out.push(check(format!("{{γ{a},γ{b}}} = 2g{a}{b}"), max_abs(&(ga * gb + gb * ga - id * c(2.0 * g, 0.0)))));
        }
    }
    out.push(check("Cᵀ = −C", max_abs(&(cm.transpose() + cm))));
    for a in 0..3 {
        let g = gamma_lower(a);
        out.push(check(format!("γ{a}ᵀ = −Cγ{a}C⁻¹"), max_abs(&(g.transpose() + cm * g * cinv))));
        let gc = g * cinv;
        out.push(check(format!("(γ{a}C⁻¹)ᵀ = γ{a}C⁻¹"), max_abs(&(gc.transpose() - gc))));
        out.push(check(format!("Tr γ{a} = 0"), g.trace().norm()));
        out.push(check(format!("γ{a} purely imaginary"), g.iter().map(|z| z.re.abs()).fold(0.0, f64::max)));
        out.push(check(
            format!("γ^{a}C⁻¹ real"),
            (gamma_upper(a) * cinv).iter().map(|z| z.im.abs()).fold(0.0, f64::max),
        ));
        let gs = gamma_spinor(a);
        out.push(check(format!("γ^{a}_ab symmetric"), max_abs(&(gs.transpose() - gs))));
    }
    for a in 0..3 {
        for b in 0..3 {
            let gab = gamma_pair(a, b);
            let gc = gab * cinv;
            out.push(check(format!("(γ{a}{b}C⁻¹)ᵀ = γ{a}{b}C⁻¹"), max_abs(&(gc.transpose() - gc))));
            out.push(check(format!("Tr γ{a}{b} = 0"), gab.trace().norm()));
            let mut rhs = M2::zeros();
            for d in 0..3 {
                rhs += gamma_upper(d) * c(0.0, levi_civita(a, b, d));
            }
            out.push(check(format!("γ{a}{b} = iε{a}{b}δ γ^δ"), max_abs(&(gab - rhs))));
        }
    }
    let mut eps_res: f64 = 0.0;
    for a in 0..2 {
        for cc in 0..2 {
            let s: f64 = (0..2).map(|b| EPS[a][b] * EPS[b][cc]).sum();
            let delta = if a == cc { 1.0 } else { 0.0 };
            eps_res = eps_res.max((s + delta).abs());
        }
    }
    out.push(check("ε^ab ε_bc = −δ^a_c", eps_res));
    let mut comp: f64 = 0.0;
    for _ in 0..completeness_trials {
        let mut l = M2::zeros();
        for z in l.iter_mut() {
            *z = c(rng.gen_range(-8..=8) as f64, rng.gen_range(-8..=8) as f64);
        }
        let mut rhs = id * (l.trace() * 0.5);
        for a in 0..3 {
            rhs += gamma_upper(a) * ((l * gamma_lower(a)).trace() * 0.5);
        }
        comp = comp.max(max_abs(&(l - rhs)));
    }
    out.push(check(format!("completeness on {completeness_trials} random L"), comp));
    let mut dirac: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let (ka, kb) = (dirac_matrix(a), dirac_matrix(b));
            for i in 0..2 {
                for j in 0..2 {
                    let ab: f64 = (0..2).map(|k| ka[i][k] * kb[k][j] + kb[i][k] * ka[k][j]).sum();
                    let want = if a == b && i == j { -2.0 * METRIC[a] } else { 0.0 };
                    dirac = dirac.max((ab - want).abs());
                }
            }
        }
    }
    out.push(check("(i∇̸)² = −□ symbol", dirac));
    out
}
