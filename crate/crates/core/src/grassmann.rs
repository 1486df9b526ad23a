//! Real and complex Grassmann algebras Λₙ and the unit-preserving
//! superalgebra morphisms between them.
//!
//! A basis monomial θ_{i1}⋯θ_{ik} with i1 < ⋯ < ik is stored as a bitmask
//! (bit `i-1` set for generator `i`). Products of monomials carry a Koszul sign
//! computed by counting transpositions, so every structure constant is an
//! exact ±1 or 0.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 16;

pub type Blade = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    fn join(self, other: Field) -> Field {
        if self == Field::Complex || other == Field::Complex {
            Field::Complex
        } else {
            Field::Real
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_grade(k: u32) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::of_grade(self.bit() + other.bit())
    }

    /// (−1)^{|a||b|}
    pub fn koszul(self, other: Parity) -> f64 {
        if self.bit() * other.bit() == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Sign of `a·b` for basis monomials, or `None` when they share a generator.
pub fn blade_product_sign(a: Blade, b: Blade) -> Option<f64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1.0 } else { -1.0 })
}

pub fn blade_from_indices(n: usize, idx: &[usize]) -> Result<(Blade, f64)> {
    let mut blade: Blade = 0;
    let mut sign = 1.0;
    for &i in idx {
        if i == 0 || i > n {
            return Err(Error::Dimension(format!("generator index {i} outside 1..={n}")));
        }
        let bit = 1 << (i - 1);
        match blade_product_sign(blade, bit) {
            Some(s) => sign *= s,
            None => return Ok((0, 0.0)),
        }
        blade |= bit;
    }
    Ok((blade, sign))
}

pub fn blade_indices(blade: Blade) -> Vec<usize> {
    (0..32).filter(|i| blade & (1 << i) != 0).map(|i| i as usize + 1).collect()
}

pub fn grade(blade: Blade) -> u32 {
    blade.count_ones()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannElement {
    n: usize,
    field: Field,
    coeffs: BTreeMap<Blade, Complex64>,
}

impl GrassmannElement {
    pub fn zero(n: usize, field: Field) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        GrassmannElement { n, field, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize, field: Field) -> Self {
        Self::real_scalar(n, 1.0).with_field(field)
    }

    pub fn real_scalar(n: usize, x: f64) -> Self {
        Self::real_monomial(n, 0, x)
    }

    pub fn complex_scalar(n: usize, z: Complex64) -> Self {
        let mut e = Self::zero(n, Field::Complex);
        e.insert(0, z);
        e
    }

    /// θᵢ, with `i` counted from 1.
    pub fn generator(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "generator {i} outside 1..={n}");
        Self::real_monomial(n, 1 << (i - 1), 1.0)
    }

    pub fn real_monomial(n: usize, blade: Blade, x: f64) -> Self {
        let mut e = Self::zero(n, Field::Real);
        e.insert(blade, Complex64::new(x, 0.0));
        e
    }

    pub fn monomial(n: usize, blade: Blade, z: Complex64) -> Self {
        let mut e = Self::zero(n, Field::Complex);
        e.insert(blade, z);
        e
    }

    /// Product of generators in the given order, e.g. `[2, 1]` gives θ₂θ₁ = −θ₁θ₂.
    pub fn from_indices(n: usize, idx: &[usize], z: Complex64, field: Field) -> Result<Self> {
        if field == Field::Real && z.im != 0.0 {
            return Err(Error::Dimension("imaginary coefficient in real element".into()));
        }
        let (blade, sign) = blade_from_indices(n, idx)?;
        let mut e = Self::zero(n, field);
        e.insert(blade, z * sign);
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, Complex64)> + '_ {
        self.coeffs.iter().map(|(&b, &c)| (b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, blade: Blade) -> Complex64 {
        self.coeffs.get(&blade).copied().unwrap_or_default()
    }

    pub fn body(&self) -> Complex64 {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for inhomogeneous elements; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.coeffs.keys().map(|&b| Parity::of_grade(grade(b)));
        match it.next() {
            None => Some(Parity::Even),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|&b| grade(b).is_multiple_of(2))
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.keys().all(|&b| grade(b) % 2 == 1)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|b| grade(b).is_multiple_of(2))
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|b| grade(b) % 2 == 1)
    }

    pub fn nilpotent_part(&self) -> Self {
        self.filter(|b| b != 0)
    }

    fn filter(&self, keep: impl Fn(Blade) -> bool) -> Self {
        GrassmannElement {
            n: self.n,
            field: self.field,
            coeffs: self.coeffs.iter().filter(|(&b, _)| keep(b)).map(|(&b, &c)| (b, c)).collect(),
        }
    }

    fn insert(&mut self, blade: Blade, z: Complex64) {
        debug_assert!(blade >> self.n == 0);
        if z != Complex64::new(0.0, 0.0) {
            self.coeffs.insert(blade, z);
        } else {
            self.coeffs.remove(&blade);
        }
    }

    fn accumulate(&mut self, blade: Blade, z: Complex64) {
        let new = self.coeff(blade) + z;
        self.insert(blade, new);
    }

    pub fn with_field(mut self, field: Field) -> Self {
        if field == Field::Real {
            assert!(
                self.coeffs.values().all(|c| c.im == 0.0),
                "cannot tag an element with imaginary coefficients as real"
            );
        }
        self.field = field;
        self
    }

    pub fn complexify(&self) -> Self {
        self.clone().with_field(Field::Complex)
    }

    /// Real part of each coefficient, tagged real.
    pub fn real_part(&self) -> Self {
        let mut e = Self::zero(self.n, Field::Real);
        for (b, c) in self.terms() {
            e.insert(b, Complex64::new(c.re, 0.0));
        }
        e
    }

    /// Re-express over Λₘ, m ≥ n, with the first n generators identified.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.n && m <= MAX_GENERATORS);
        GrassmannElement { n: m, field: self.field, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let field = if z.im != 0.0 { Field::Complex } else { self.field };
        let mut e = Self::zero(self.n, field);
        for (b, c) in self.terms() {
            e.insert(b, c * z);
        }
        e
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other, 1.0))
    }

    fn add_unchecked(&self, other: &Self, sign: f64) -> Self {
        let mut e = GrassmannElement { n: self.n, field: self.field.join(other.field), coeffs: self.coeffs.clone() };
        for (b, c) in other.terms() {
            e.accumulate(b, c * sign);
        }
        e
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("Λ{} vs Λ{}", self.n, other.n)));
        }
        Ok(())
    }

    /// Product with matching n and field tag.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.field != other.field {
            return Err(Error::Dimension(format!("field tags {:?} vs {:?}", self.field, other.field)));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut e = Self::zero(self.n, self.field.join(other.field));
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some(s) = blade_product_sign(a, b) {
                    e.accumulate(a | b, ca * cb * s);
                }
            }
        }
        e
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n, self.field);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Coefficient-wise complex conjugation.
    pub fn star(&self) -> Self {
        let mut e = Self::zero(self.n, self.field);
        for (b, c) in self.terms() {
            e.insert(b, c.conj());
        }
        e
    }

    /// Inverse of an element with nonzero body, via the finite geometric series
    /// in the nilpotent part.
    pub fn inverse(&self) -> Result<Self> {
        let b = self.body();
        if b.norm() == 0.0 {
            return Err(Error::Singular("element has zero body".into()));
        }
        let x = self.nilpotent_part().scale(-b.inv());
        let mut term = Self::one(self.n, self.field);
        let mut sum = term.clone();
        for _ in 0..self.n {
            term = term.mul_unchecked(&x);
            if term.is_zero() {
                break;
            }
            sum = sum.add_unchecked(&term, 1.0);
        }
        Ok(sum.scale(b.inv()).with_field_of(self))
    }

    /// exp of an even element: e^{body}·Σ N^k/k!.
    pub fn exp(&self) -> Self {
        let b = self.body();
        let x = self.nilpotent_part();
        let mut term = Self::one(self.n, self.field);
        let mut sum = term.clone();
        for k in 1..=self.n {
            term = term.mul_unchecked(&x).scale_real(1.0 / k as f64);
            if term.is_zero() {
                break;
            }
            sum = sum.add_unchecked(&term, 1.0);
        }
        sum.scale(b.exp()).with_field_of(self)
    }

    fn with_field_of(mut self, other: &Self) -> Self {
        if other.field == Field::Real && self.coeffs.values().all(|c| c.im == 0.0) {
            self.field = Field::Real;
        }
        self
    }

    /// Left superderivation ∂/∂θᵢ.
    pub fn derivative(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.n);
        let bit: Blade = 1 << (i - 1);
        let mut e = Self::zero(self.n, self.field);
        for (b, c) in self.terms() {
            if b & bit != 0 {
                let rest = b & !bit;
                let sign = blade_product_sign(bit, rest).expect("disjoint");
                e.accumulate(rest, c * sign);
            }
        }
        e
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.add_unchecked(other, -1.0).max_abs()
    }

    /// Drop coefficients with modulus at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        self.filter_values(|c| c.norm() > tol)
    }

    fn filter_values(&self, keep: impl Fn(Complex64) -> bool) -> Self {
        GrassmannElement {
            n: self.n,
            field: self.field,
            coeffs: self.coeffs.iter().filter(|(_, &c)| keep(c)).map(|(&b, &c)| (b, c)).collect(),
        }
    }

    pub fn to_json(&self) -> GrassmannJson {
        GrassmannJson {
            n: self.n,
            field: (self.field == Field::Complex).then_some(Field::Complex),
            coeffs: self.terms().map(|(b, c)| CoeffJson { idx: blade_indices(b), re: c.re, im: c.im }).collect(),
        }
    }

    pub fn from_json(j: &GrassmannJson) -> Result<Self> {
        if j.n > MAX_GENERATORS {
            return Err(Error::Dimension(format!("n = {} exceeds {MAX_GENERATORS}", j.n)));
        }
        let complex = j.field == Some(Field::Complex) || j.coeffs.iter().any(|c| c.im != 0.0);
        let field = if complex { Field::Complex } else { Field::Real };
        let mut e = Self::zero(j.n, field);
        for c in &j.coeffs {
            let (blade, sign) = blade_from_indices(j.n, &c.idx)?;
            e.accumulate(blade, Complex64::new(c.re, c.im) * sign);
        }
        Ok(e)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(b, c)| {
                let coef = if c.im == 0.0 { format!("{}", c.re) } else { format!("({}{:+}i)", c.re, c.im) };
                if b == 0 {
                    coef
                } else {
                    let gens: Vec<String> = blade_indices(b).iter().map(|i| format!("θ{i}")).collect();
                    format!("{coef}·{}", gens.join(""))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.n, rhs.n, "Grassmann dimension mismatch");
        self.add_unchecked(rhs, 1.0)
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.n, rhs.n, "Grassmann dimension mismatch");
        self.add_unchecked(rhs, -1.0)
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale_real(-1.0)
    }
}

/// Mixed real/complex operands promote to complex; use [`gr_mul`] for the
/// strict variant.
impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.n, rhs.n, "Grassmann dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub idx: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrassmannJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    pub coeffs: Vec<CoeffJson>,
}

impl Serialize for GrassmannElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrassmannElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GrassmannJson::deserialize(d)?;
        GrassmannElement::from_json(&j).map_err(serde::de::Error::custom)
    }
}

pub fn gr_mul(a: &GrassmannElement, b: &GrassmannElement) -> Result<GrassmannElement> {
    a.try_mul(b)
}

pub fn gr_star(a: &GrassmannElement) -> Result<GrassmannElement> {
    if a.field() != Field::Complex {
        return Err(Error::Dimension("star expects a complex element".into()));
    }
    Ok(a.star())
}

/// Superalgebra morphism λ*: Λ_source → Λ_target fixed by the odd images of
/// the source generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrassmannMorphism {
    source: usize,
    target: usize,
    images: Vec<GrassmannElement>,
}

impl GrassmannMorphism {
    pub fn new(source: usize, target: usize, images: Vec<GrassmannElement>) -> Result<Self> {
        if images.len() != source {
            return Err(Error::InvalidMorphism(format!("{} images for {source} generators", images.len())));
        }
        for (i, im) in images.iter().enumerate() {
            if im.n() != target {
                return Err(Error::InvalidMorphism(format!(
                    "image {} lives in Λ{}, expected Λ{target}",
                    i + 1,
                    im.n()
                )));
            }
            if !im.is_odd() {
                return Err(Error::InvalidMorphism(format!("image {} is not odd", i + 1)));
            }
        }
        Ok(GrassmannMorphism { source, target, images })
    }

    pub fn identity(n: usize) -> Self {
        GrassmannMorphism { source: n, target: n, images: (1..=n).map(|i| GrassmannElement::generator(n, i)).collect() }
    }

    /// All generators sent to zero: the body map Λ_source → Λ_target.
    pub fn body_map(source: usize, target: usize) -> Self {
        GrassmannMorphism { source, target, images: vec![GrassmannElement::zero(target, Field::Real); source] }
    }

    /// Inclusion Λₙ ⊂ Λₘ.
    pub fn inclusion(n: usize, m: usize) -> Self {
        assert!(m >= n);
        GrassmannMorphism { source: n, target: m, images: (1..=n).map(|i| GrassmannElement::generator(m, i)).collect() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[GrassmannElement] {
        &self.images
    }

    pub fn pullback(&self, a: &GrassmannElement) -> Result<GrassmannElement> {
        if a.n() != self.source {
            return Err(Error::Dimension(format!("element over Λ{}, morphism source Λ{}", a.n(), self.source)));
        }
        let mut out = GrassmannElement::zero(self.target, a.field());
        for (blade, c) in a.terms() {
            let mut prod = GrassmannElement::one(self.target, Field::Real);
            for i in blade_indices(blade) {
                prod = prod.mul_unchecked(&self.images[i - 1]);
                if prod.is_zero() {
                    break;
                }
            }
            out = out.add_unchecked(&prod.scale(c), 1.0);
        }
        Ok(out)
    }

    /// `outer* ∘ inner*` as an algebra map Λ_{inner.source} → Λ_{outer.target}.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if inner.target != outer.source {
            return Err(Error::Dimension(format!("Λ{} does not feed Λ{}", inner.target, outer.source)));
        }
        let images = inner.images.iter().map(|im| outer.pullback(im)).collect::<Result<Vec<_>>>()?;
        GrassmannMorphism::new(inner.source, outer.target, images)
    }
}

pub fn gr_pullback(m: &GrassmannMorphism, a: &GrassmannElement) -> Result<GrassmannElement> {
    m.pullback(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(n: usize, i: usize) -> GrassmannElement {
        GrassmannElement::generator(n, i)
    }

    #[test]
    fn generator_squares_vanish() {
        assert!((&th(2, 1) * &th(2, 1)).is_zero());
    }

    #[test]
    fn generators_anticommute() {
        let a = &th(2, 2) * &th(2, 1);
        let expected = GrassmannElement::real_monomial(2, 0b11, -1.0);
        assert_eq!(a, expected);
    }

    #[test]
    fn one_plus_theta_times_one_minus_theta() {
        let one = GrassmannElement::one(1, Field::Real);
        let p = &one + &th(1, 1);
        let m = &one - &th(1, 1);
        assert_eq!(gr_mul(&p, &m).unwrap(), one);
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        assert!(gr_mul(&th(1, 1), &th(2, 1)).is_err());
        assert!(gr_mul(&th(1, 1), &th(1, 1).complexify()).is_err());
    }

    #[test]
    fn from_indices_orders_with_sign() {
        let e = GrassmannElement::from_indices(3, &[3, 1], Complex64::new(2.0, 0.0), Field::Real).unwrap();
        assert_eq!(e.coeff(0b101), Complex64::new(-2.0, 0.0));
        let z = GrassmannElement::from_indices(3, &[2, 2], Complex64::new(1.0, 0.0), Field::Real).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn derivative_is_left() {
        let t12 = &th(2, 1) * &th(2, 2);
        assert_eq!(t12.derivative(1), th(2, 2));
        assert_eq!(t12.derivative(2), -&th(2, 1));
    }

    #[test]
    fn inverse_of_one_plus_nilpotent() {
        let one = GrassmannElement::one(2, Field::Real);
        let a = &one + &(&th(2, 1) * &th(2, 2));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, &one - &(&th(2, 1) * &th(2, 2)));
        assert_eq!(&a * &inv, one);
        assert!(GrassmannElement::zero(2, Field::Real).inverse().is_err());
    }

    #[test]
    fn star_examples() {
        let i = GrassmannElement::complex_scalar(0, Complex64::new(0.0, 1.0));
        assert_eq!(gr_star(&i).unwrap(), GrassmannElement::complex_scalar(0, Complex64::new(0.0, -1.0)));
        let e = GrassmannElement::monomial(2, 0b11, Complex64::new(0.0, 1.0));
        assert_eq!(gr_star(&e).unwrap(), GrassmannElement::monomial(2, 0b11, Complex64::new(0.0, -1.0)));
        assert!(gr_star(&th(1, 1)).is_err());
    }

    #[test]
    fn pullback_examples() {
        let c_plus = &GrassmannElement::real_scalar(1, 5.0) + &th(1, 1);
        assert_eq!(GrassmannMorphism::body_map(1, 0).pullback(&c_plus).unwrap(), GrassmannElement::real_scalar(0, 5.0));
        let lam = GrassmannMorphism::new(1, 2, vec![&th(2, 1) + &th(2, 2)]).unwrap();
        let a = &GrassmannElement::real_scalar(1, 2.0) + &th(1, 1).scale_real(3.0);
        let expected =
            &(&GrassmannElement::real_scalar(2, 2.0) + &th(2, 1).scale_real(3.0)) + &th(2, 2).scale_real(3.0);
        assert_eq!(lam.pullback(&a).unwrap(), expected);
        assert!(GrassmannMorphism::new(1, 2, vec![GrassmannElement::one(2, Field::Real)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let e = GrassmannElement::monomial(2, 0b11, Complex64::new(1.0, -0.5));
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("\"idx\":[1,2]"));
        let back: GrassmannElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let parsed: GrassmannElement =
            serde_json::from_str(r#"{"n":2,"coeffs":[{"idx":[1,2],"re":1.0,"im":0.0}]}"#).unwrap();
        assert_eq!(parsed, GrassmannElement::real_monomial(2, 0b11, 1.0));
    }
}
