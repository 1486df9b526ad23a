//! Supertorsion of the flat 3|2 supervielbein with ω = 0 and h^α_{ab} = iγ^α_{ab}.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::gamma_spinor;
use crate::grassmann::{Field, GrassmannElement};

type G = GrassmannElement;

const DIM: usize = 5;

fn is_odd(k: usize) -> bool {
    k >= 3
}

fn sign(b: bool) -> f64 {
    if b {
        -1.0
    } else {
        1.0
    }
}

fn theta(c: usize) -> G {
    G::generator(2, c + 1).complexify()
}

fn zero() -> G {
    G::zero(2, Field::Complex)
}

fn one() -> G {
    G::one(2, Field::Complex)
}

fn h(alpha: usize, a: usize, b: usize) -> Complex64 {
    gamma_spinor(alpha)[(a, b)] * Complex64::i()
}

/// E^A_M: row A of the frame, column M of the coordinate index.
fn frame(a: usize, m: usize) -> G {
    match (a < 3, m < 3) {
        (true, true) => {
            if a == m {
                one()
            } else {
                zero()
            }
        }
        (true, false) => {
            let mut out = zero();
            for c in 0..2 {
                out = &out - &theta(c).scale(h(a, m - 3, c));
            }
            out
        }
        (false, true) => zero(),
        (false, false) => {
            if a == m {
                one()
            } else {
                zero()
            }
        }
    }
}

/// E_B^M, the dual frame.
fn dual(b: usize, m: usize) -> G {
    match (b < 3, m < 3) {
        (true, true) => {
            if b == m {
                one()
            } else {
                zero()
            }
        }
        (true, false) => zero(),
        (false, true) => {
            let mut out = zero();
            for c in 0..2 {
                out = &out + &theta(c).scale(h(m, b - 3, c));
            }
            out
        }
        (false, false) => {
            if b == m {
                one()
            } else {
                zero()
            }
        }
    }
}

/// ∂_N on a function of θ only; vector derivatives vanish.
fn partial(nidx: usize, f: &G) -> G {
    if nidx < 3 {
        zero()
    } else {
        f.derivative(nidx - 2)
    }
}

/// T_{BC}^A = Σ (−1)^{|M||C|} E_B^M E_C^N (∂_N E^A_M − (−1)^{|N||M|} ∂_M E^A_N).
pub fn torsion(b: usize, c: usize, a: usize) -> G {
    let mut total = zero();
    for m in 0..DIM {
        for n in 0..DIM {
            let curl = &partial(n, &frame(a, m)) - &partial(m, &frame(a, n)).scale_real(sign(is_odd(n) && is_odd(m)));
            if curl.is_zero() {
                continue;
            }
            let term = &(&dual(b, m) * &dual(c, n)) * &curl;
            total = &total + &term.scale_real(sign(is_odd(m) && is_odd(c)));
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub name: String,
    pub value: GrassmannElement,
    pub expected: GrassmannElement,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub entries: Vec<TorsionEntry>,
    pub max_residual: f64,
    pub pass: bool,
}

fn label(k: usize) -> String {
    if k < 3 {
        format!("{k}")
    } else {
        ["a1", "a2"][k - 3].to_string()
    }
}

/// Every component T_{BC}^A with B ≤ C, compared with 2iγ^α_{bc} for
/// two odd lower indices and a vector upper index, and 0 otherwise.
pub fn check_supertorsion_flat() -> TorsionReport {
    let mut entries = Vec::new();
    for b in 0..DIM {
        for c in b..DIM {
            for a in 0..DIM {
                let value = torsion(b, c, a);
                let expected = if is_odd(b) && is_odd(c) && a < 3 {
                    G::complex_scalar(2, h(a, b - 3, c - 3) * 2.0)
                } else {
                    zero()
                };
                let residual = value.max_abs_diff(&expected);
                entries.push(TorsionEntry {
                    name: format!("T_({},{})^{}", label(b), label(c), label(a)),
                    value,
                    expected,
                    residual,
                });
            }
        }
    }
    let max_residual = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    TorsionReport { entries, max_residual, pass: max_residual == 0.0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_solution_satisfies_constraints() {
        let r = check_supertorsion_flat();
        assert_eq!(r.entries.len(), 75);
        assert!(r.pass, "{:?}", r.entries.iter().filter(|e| e.residual != 0.0).collect::<Vec<_>>());
    }

    #[test]
    fn odd_odd_component_is_twice_h() {
        let t = torsion(3, 3, 0);
        assert_eq!(t.body(), Complex64::new(-2.0, 0.0));
    }
}
