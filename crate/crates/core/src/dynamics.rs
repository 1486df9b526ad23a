//! Model-generic layer over a free super-field theory: the bilinear
//! τ(F₁, F₂) = ⟨G(F₁), F₂⟩ with G = G⁺ − G⁻, causal disjointness and the
//! time-slice representative F′ = F − P(ρ⁻G⁺F + ρ⁺G⁻F).

use std::fmt::Debug;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::Parity;
use crate::numerics::{smooth_step_infinite, smoothstep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Retarded,
    Advanced,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Retarded => Side::Advanced,
            Side::Advanced => Side::Retarded,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "retarded" | "ret" | "+" => Ok(Side::Retarded),
            "advanced" | "adv" | "-" => Ok(Side::Advanced),
            other => Err(Error::Parse(format!("unknown side '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelTag {
    #[serde(rename = "1|1")]
    M11,
    #[serde(rename = "3|2")]
    M32,
}

/// Minimum number of time cells a slab needs to host the partition of unity.
pub const MIN_SLAB_CELLS: usize = 16;

pub trait FieldTheory {
    type Section: Clone + Debug;

    fn tag(&self) -> ModelTag;
    /// Parity of dim S; odd gives SCAR with β = 1, even gives SCCR with β = i.
    fn spinor_dim_odd(&self) -> bool;

    fn apply_p(&self, s: &Self::Section) -> Result<Self::Section>;
    fn green(&self, s: &Self::Section, side: Side) -> Result<Self::Section>;
    fn pair(&self, a: &Self::Section, b: &Self::Section) -> Result<f64>;

    fn parity(&self, s: &Self::Section) -> Option<Parity>;
    fn is_zero(&self, s: &Self::Section) -> bool;
    fn norm(&self, s: &Self::Section) -> f64;
    /// a + c·b
    fn axpy(&self, a: &Self::Section, c: f64, b: &Self::Section) -> Result<Self::Section>;
    /// Pointwise product with a function of time.
    fn weight_in_time(&self, s: &Self::Section, w: &dyn Fn(f64) -> f64) -> Self::Section;
    /// (first sample time, last sample time, time step)
    fn time_axis(&self, s: &Self::Section) -> (f64, f64, f64);
    /// Earliest and latest time carrying a nonzero sample.
    fn time_support(&self, s: &Self::Section) -> Option<(f64, f64)>;
    fn causally_disjoint(&self, a: &Self::Section, b: &Self::Section) -> bool;
    /// Support away from the first and last time slices.
    fn is_compact(&self, s: &Self::Section) -> bool;
    /// [even part, odd part]
    fn split_parity(&self, s: &Self::Section) -> [Self::Section; 2];

    fn parity_of_p(&self) -> Parity {
        if self.spinor_dim_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    fn beta(&self) -> Complex64 {
        if self.spinor_dim_odd() {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        }
    }

    /// s = (−1)^{dim S + 1}: the algebra relation is v₁v₂ = −s(−1)^{|v₁||v₂|} v₂v₁ + βτ.
    fn relation_sign(&self) -> f64 {
        if self.spinor_dim_odd() {
            1.0
        } else {
            -1.0
        }
    }

    /// G = G⁺ − G⁻
    fn causal_propagator(&self, s: &Self::Section) -> Result<Self::Section> {
        let r = self.green(s, Side::Retarded)?;
        let a = self.green(s, Side::Advanced)?;
        self.axpy(&r, -1.0, &a)
    }
}

pub fn tau<T: FieldTheory>(th: &T, a: &T::Section, b: &T::Section) -> Result<f64> {
    if th.is_zero(a) || th.is_zero(b) {
        return Ok(0.0);
    }
    th.pair(&th.causal_propagator(a)?, b)
}

pub fn causally_disjoint<T: FieldTheory>(th: &T, a: &T::Section, b: &T::Section) -> bool {
    th.is_zero(a) || th.is_zero(b) || th.causally_disjoint(a, b)
}

/// Sign ε with τ(F₁, F₂) = ε·τ(F₂, F₁) for homogeneous sections:
/// (−1)^{|F₁||F₂|} when dim S is odd, −(−1)^{|F₁||F₂|} when even.
pub fn tau_symmetry_sign<T: FieldTheory>(th: &T, p1: Parity, p2: Parity) -> f64 {
    let koszul = if p1 == Parity::Odd && p2 == Parity::Odd { -1.0 } else { 1.0 };
    if th.spinor_dim_odd() {
        koszul
    } else {
        -koszul
    }
}

/// Representative of [F] supported in the slab (ta, tb). Sections already
/// supported inside the slab are returned unchanged.
pub fn timeslice_representative<T: FieldTheory>(th: &T, f: &T::Section, slab: (f64, f64)) -> Result<T::Section> {
    timeslice_representative_with(th, f, slab, Partition::Smooth)
}

/// Transition profile of the partition of unity ρ⁺ + ρ⁻ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Partition {
    /// Quintic smoothstep, C².
    Quintic,
    /// exp(−1/x) profile, C^∞.
    Smooth,
}

impl Partition {
    fn step(self) -> fn(f64) -> f64 {
        match self {
            Partition::Quintic => smoothstep,
            Partition::Smooth => smooth_step_infinite,
        }
    }
}

pub fn timeslice_representative_with<T: FieldTheory>(
    th: &T,
    f: &T::Section,
    slab: (f64, f64),
    partition: Partition,
) -> Result<T::Section> {
    let (ta, tb) = slab;
    let (t0, t1, dt) = th.time_axis(f);
    if !(ta > t0 && tb < t1 && tb > ta) {
        return Err(Error::Precondition(format!("slab ({ta}, {tb}) not strictly inside ({t0}, {t1})")));
    }
    if (tb - ta) / dt < MIN_SLAB_CELLS as f64 - 1e-9 {
        return Err(Error::Precondition(format!(
            "slab spans {:.1} cells, fewer than {MIN_SLAB_CELLS}",
            (tb - ta) / dt
        )));
    }
    match th.time_support(f) {
        None => return Ok(f.clone()),
        Some((s0, s1)) if s0 > ta && s1 < tb => return Ok(f.clone()),
        _ => {}
    }
    let step = partition.step();
    let rho_plus = move |t: f64| step((t - ta) / (tb - ta));
    let rho_minus = move |t: f64| 1.0 - step((t - ta) / (tb - ta));
    let ret = th.green(f, Side::Retarded)?;
    let adv = th.green(f, Side::Advanced)?;
    let h = th.axpy(&th.weight_in_time(&ret, &rho_minus), 1.0, &th.weight_in_time(&adv, &rho_plus))?;
    let rep = th.axpy(f, -1.0, &th.apply_p(&h)?)?;
    // Outside the slab F′ vanishes identically up to discretization residue.
    let tol = 1e-9 * dt;
    Ok(th.weight_in_time(&rep, &move |t| if t >= ta - tol && t <= tb + tol { 1.0 } else { 0.0 }))
}

/// Result of probing a section against a test family through τ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakProbe {
    pub max_tau: f64,
    pub propagator_norm: f64,
    pub probes: usize,
}

/// max_i |τ(F, G_i)| together with ‖G(F)‖.
pub fn weak_probe<T: FieldTheory>(th: &T, f: &T::Section, tests: &[T::Section]) -> Result<WeakProbe> {
    let g = th.causal_propagator(f)?;
    let mut max_tau: f64 = 0.0;
    for t in tests {
        max_tau = max_tau.max(th.pair(&g, t)?.abs());
    }
    Ok(WeakProbe { max_tau, propagator_norm: th.norm(&g), probes: tests.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn side_parsing() {
        assert_eq!("retarded".parse::<Side>().unwrap(), Side::Retarded);
        assert_eq!("adv".parse::<Side>().unwrap(), Side::Advanced);
        assert!("sideways".parse::<Side>().is_err());
        assert_eq!(Side::Retarded.opposite(), Side::Advanced);
    }
}
