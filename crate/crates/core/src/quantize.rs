//! The super-*-algebra generated by Φ(F) subject to
//! v₁v₂ + s(−1)^{|v₁||v₂|}v₂v₁ = βτ(v₁, v₂)𝟙, s = (−1)^{dim S + 1}.
//!
//! Elements are kept in normal form over the coefficient ring
//! Λₙ^ℂ[τ_{ij}]: every contraction produced by the rewriting is recorded as a
//! formal τ-monomial and only replaced by its numerical value in
//! [`Algebra::evaluate`].

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{tau, FieldTheory};
use crate::error::{Error, Result};
use crate::grassmann::{Field, GrassmannElement, GrassmannJson, Parity};

pub type Word = Vec<u32>;
/// Sorted multiset of generator pairs (i, j), each standing for τ(vᵢ, vⱼ).
pub type Monomial = Vec<(u32, u32)>;
pub type Poly = BTreeMap<Monomial, GrassmannElement>;

/// |τ| below this is replaced by exact zero.
pub const TAU_SNAP: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    LeftmostFirst,
    RightmostFirst,
}

#[derive(Clone, Debug)]
pub struct Generator<S> {
    pub id: u32,
    pub section: S,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Word, Poly>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self::scalar(&GrassmannElement::one(n, Field::Complex))
    }

    /// (c ⊗ 𝟙)
    pub fn scalar(c: &GrassmannElement) -> Self {
        let mut out = Self::zero(c.n());
        out.add_term(Vec::new(), Vec::new(), &c.complexify());
        out
    }

    /// A single word with coefficient 1, taken as already normal ordered.
    pub fn letter(n: usize, id: u32) -> Self {
        let mut out = Self::zero(n);
        out.add_term(vec![id], Vec::new(), &GrassmannElement::one(n, Field::Complex));
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Word, mono: Monomial, c: &GrassmannElement) {
        if c.is_zero() {
            return;
        }
        let poly = self.terms.entry(word.clone()).or_default();
        let updated = match poly.get(&mono) {
            Some(cur) => cur + c,
            None => c.clone(),
        };
        if updated.is_zero() {
            poly.remove(&mono);
        } else {
            poly.insert(mono, updated);
        }
        if poly.is_empty() {
            self.terms.remove(&word);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn axpy(&self, a: Complex64, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, poly) in &other.terms {
            for (m, c) in poly {
                out.add_term(w.clone(), m.clone(), &c.scale(a));
            }
        }
        out
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self::zero(self.n).axpy(a, self)
    }
}

/// Numerical value of an element: τ-monomials replaced by β^{deg}·Πτ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericElement {
    pub n: usize,
    pub terms: BTreeMap<String, GrassmannElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordJson {
    pub word: Word,
    pub coeff: GrassmannJson,
}

impl NumericElement {
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(GrassmannElement::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(GrassmannElement::max_abs).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let zero = GrassmannElement::zero(self.n, Field::Complex);
        let keys: std::collections::BTreeSet<&String> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| self.terms.get(k).unwrap_or(&zero).max_abs_diff(other.terms.get(k).unwrap_or(&zero)))
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Vec<WordJson> {
        self.terms.iter().map(|(k, c)| WordJson { word: parse_word_key(k), coeff: c.to_json() }).collect()
    }
}

fn word_key(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_word_key(k: &str) -> Word {
    if k.is_empty() {
        Vec::new()
    } else {
        k.split(',').map(|x| x.parse().expect("word key")).collect()
    }
}

fn merge(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: Monomial = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    m
}

/// Normal form of a word: (word, τ-monomial, rational coefficient).
pub type NormalTerms = Vec<(Word, Monomial, f64)>;

pub struct Algebra<T: FieldTheory> {
    theory: T,
    n: usize,
    generators: Vec<Generator<T::Section>>,
    tau: Vec<Vec<f64>>,
    propagators: Vec<T::Section>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CausalityReport {
    pub disjoint: bool,
    pub tau: f64,
    pub commutator_is_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EomReport {
    pub max_tau: f64,
    pub probes: usize,
    pub pass: bool,
}

impl<T: FieldTheory> Algebra<T>
where
    T::Section: PartialEq,
{
    pub fn new(theory: T, n: usize) -> Self {
        Algebra { theory, n, generators: Vec::new(), tau: Vec::new(), propagators: Vec::new() }
    }

    pub fn theory(&self) -> &T {
        &self.theory
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Generator<T::Section>] {
        &self.generators
    }

    pub fn generator(&self, id: u32) -> &Generator<T::Section> {
        &self.generators[id as usize]
    }

    /// Snapped τ(vᵢ, vⱼ).
    pub fn tau_value(&self, i: u32, j: u32) -> f64 {
        self.tau[i as usize][j as usize]
    }

    fn parity_bit(&self, id: u32) -> u32 {
        self.generators[id as usize].parity.bit()
    }

    pub fn word_parity(&self, w: &[u32]) -> Parity {
        Parity::of_grade(w.iter().map(|&i| self.parity_bit(i)).sum())
    }

    /// Registers a homogeneous compactly supported section, reusing an
    /// existing generator for an identical section.
    pub fn register(&mut self, f: &T::Section) -> Result<u32> {
        let parity = self.theory.parity(f).ok_or_else(|| Error::Parity("generators must be homogeneous".into()))?;
        if let Some(g) = self.generators.iter().find(|g| &g.section == f) {
            return Ok(g.id);
        }
        let prop = self.theory.causal_propagator(f)?;
        let id = self.generators.len() as u32;
        let snap = |x: f64| if x.abs() < TAU_SNAP { 0.0 } else { x };
        let mut row = Vec::with_capacity(self.generators.len() + 1);
        for (k, g) in self.generators.iter().enumerate() {
            row.push(snap(self.theory.pair(&prop, &g.section)?));
            let back = snap(self.theory.pair(&self.propagators[k], f)?);
            self.tau[k].push(back);
        }
        row.push(snap(self.theory.pair(&prop, f)?));
        self.tau.push(row);
        self.propagators.push(prop);
        self.generators.push(Generator { id, section: f.clone(), parity });
        Ok(id)
    }

    /// Φ(F), split into homogeneous parts.
    pub fn field(&mut self, f: &T::Section) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.n);
        if self.theory.is_zero(f) {
            return Ok(out);
        }
        if !self.theory.is_compact(f) {
            return Err(Error::Support("Φ needs a compactly supported section".into()));
        }
        for part in self.homogeneous_parts(f) {
            let id = self.register(&part)?;
            out = out.add(&AlgebraElement::letter(self.n, id));
        }
        Ok(out)
    }

    fn homogeneous_parts(&self, f: &T::Section) -> Vec<T::Section> {
        if self.theory.parity(f).is_some() {
            return vec![f.clone()];
        }
        self.theory.split_parity(f).into_iter().filter(|s| !self.theory.is_zero(s)).collect()
    }

    /// Enriched field Φ_{M/ptₙ}(Σ ζ_K ⊗ F_K) = Σ (ζ_K ⊗ 𝟙)·Φ(F_K).
    pub fn enriched_field(&mut self, parts: &[(GrassmannElement, T::Section)]) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.n);
        for (z, f) in parts {
            let phi = self.field(f)?;
            out = out.add(&self.mul(&AlgebraElement::scalar(z), &phi)?);
        }
        Ok(out)
    }

    /// Whether the adjacent pair (a, b) is a redex.
    fn reducible(&self, a: u32, b: u32) -> bool {
        a > b || (a == b && self.square_reduces(a))
    }

    /// v² = βτ(v,v)/2 exactly when s(−1)^{|v|} = +1; otherwise v² is free.
    pub fn square_reduces(&self, id: u32) -> bool {
        let koszul = if self.parity_bit(id) == 1 { -1.0 } else { 1.0 };
        self.theory.relation_sign() * koszul > 0.0
    }

    pub fn normal_form_word(&self, word: &[u32], strategy: Strategy) -> NormalTerms {
        let s = self.theory.relation_sign();
        let mut done: BTreeMap<(Word, Monomial), f64> = BTreeMap::new();
        let mut stack: Vec<(Word, Monomial, f64)> = vec![(word.to_vec(), Vec::new(), 1.0)];
        while let Some((w, m, c)) = stack.pop() {
            let mut redexes = (0..w.len().saturating_sub(1)).filter(|&k| self.reducible(w[k], w[k + 1]));
            let pos = match strategy {
                Strategy::LeftmostFirst => redexes.next(),
                Strategy::RightmostFirst => redexes.last(),
            };
            let Some(k) = pos else {
                *done.entry((w, m)).or_insert(0.0) += c;
                continue;
            };
            let (a, b) = (w[k], w[k + 1]);
            let mut contracted = w.clone();
            contracted.drain(k..k + 2);
            let mono = merge(&m, &vec![(a, b)]);
            if a == b {
                stack.push((contracted, mono, 0.5 * c));
            } else {
                let koszul = if self.parity_bit(a) * self.parity_bit(b) == 1 { -1.0 } else { 1.0 };
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                // τ is even, so generators of opposite parity contract to zero.
                if self.parity_bit(a) == self.parity_bit(b) {
                    stack.push((contracted, mono, c));
                }
                stack.push((swapped, m, -s * koszul * c));
            }
        }
        done.into_iter().filter(|(_, c)| *c != 0.0).map(|((w, m), c)| (w, m, c)).collect()
    }

    pub fn normal_form(&self, a: &AlgebraElement, strategy: Strategy) -> AlgebraElement {
        let mut out = AlgebraElement::zero(a.n);
        for (w, poly) in &a.terms {
            let nf = self.normal_form_word(w, strategy);
            for (m, g) in poly {
                for (w2, m2, r) in &nf {
                    out.add_term(w2.clone(), merge(m, m2), &g.scale_real(*r));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.mul_with(a, b, Strategy::LeftmostFirst)
    }

    pub fn mul_with(&self, a: &AlgebraElement, b: &AlgebraElement, strategy: Strategy) -> Result<AlgebraElement> {
        if a.n != self.n || b.n != self.n {
            return Err(Error::Dimension(format!(
                "elements over Λ{} and Λ{} in an algebra over Λ{}",
                a.n, b.n, self.n
            )));
        }
        let mut cache: HashMap<Word, NormalTerms> = HashMap::new();
        let mut out = AlgebraElement::zero(self.n);
        for (w1, p1) in &a.terms {
            let odd1 = self.word_parity(w1) == Parity::Odd;
            for (w2, p2) in &b.terms {
                let word: Word = w1.iter().chain(w2).copied().collect();
                let nf = cache.entry(word.clone()).or_insert_with(|| self.normal_form_word(&word, strategy));
                for (m1, g1) in p1 {
                    for (m2, g2) in p2 {
                        let g = if odd1 { g1 * &(&g2.even_part() - &g2.odd_part()) } else { g1 * g2 };
                        if g.is_zero() {
                            continue;
                        }
                        let m12 = merge(m1, m2);
                        for (w, m3, r) in nf.iter() {
                            out.add_term(w.clone(), merge(&m12, m3), &g.scale_real(*r));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// (c w)* = c* w*, with (v₁⋯v_k)* the reversed word times the graded
    /// reversal sign; generators are hermitian. A formal monomial stands for
    /// β^{deg}Πτ, so conjugation rescales it by (β̄/β)^{deg}.
    pub fn star(&self, a: &AlgebraElement) -> AlgebraElement {
        let beta = self.theory.beta();
        let ratio = beta.conj() / beta;
        let mut raw = AlgebraElement::zero(a.n);
        for (w, poly) in &a.terms {
            let bits: Vec<u32> = w.iter().map(|&i| self.parity_bit(i)).collect();
            let mut odd_pairs = 0u32;
            for i in 0..bits.len() {
                for j in i + 1..bits.len() {
                    odd_pairs += bits[i] * bits[j];
                }
            }
            let sign = if odd_pairs % 2 == 1 { -1.0 } else { 1.0 };
            let rev: Word = w.iter().rev().copied().collect();
            for (m, g) in poly {
                raw.add_term(rev.clone(), m.clone(), &g.star().scale(ratio.powi(m.len() as i32) * sign));
            }
        }
        self.normal_form(&raw, Strategy::LeftmostFirst)
    }

    pub fn evaluate(&self, a: &AlgebraElement) -> NumericElement {
        let beta = self.theory.beta();
        let mut terms: BTreeMap<String, GrassmannElement> = BTreeMap::new();
        for (w, poly) in &a.terms {
            let mut acc = GrassmannElement::zero(a.n, Field::Complex);
            for (m, g) in poly {
                let mut z = Complex64::new(1.0, 0.0);
                for &(i, j) in m {
                    z *= beta * self.tau_value(i, j);
                }
                if z != Complex64::new(0.0, 0.0) {
                    acc = &acc + &g.scale(z);
                }
            }
            let acc = acc.prune(0.0);
            if !acc.is_zero() {
                terms.insert(word_key(w), acc);
            }
        }
        NumericElement { n: a.n, terms }
    }

    /// a·b + s(−1)^{|a||b|} b·a for homogeneous a, b.
    pub fn graded_commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let pa = self.element_parity(a).ok_or_else(|| Error::Parity("inhomogeneous element".into()))?;
        let pb = self.element_parity(b).ok_or_else(|| Error::Parity("inhomogeneous element".into()))?;
        let sign = self.theory.relation_sign() * pa.koszul(pb);
        Ok(self.mul(a, b)?.axpy(Complex64::new(sign, 0.0), &self.mul(b, a)?))
    }

    /// Total parity of word and coefficient; `None` when inhomogeneous.
    pub fn element_parity(&self, a: &AlgebraElement) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (w, poly) in &a.terms {
            for g in poly.values() {
                for part in [g.even_part(), g.odd_part()] {
                    if part.is_zero() {
                        continue;
                    }
                    let p = self.word_parity(w).add(part.parity().unwrap());
                    match found {
                        None => found = Some(p),
                        Some(q) if q != p => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    /// Super-causality for two generators with causally disjoint supports.
    pub fn check_causality(&self, a: u32, b: u32) -> Result<CausalityReport> {
        let (ga, gb) = (&self.generators[a as usize], &self.generators[b as usize]);
        if !crate::dynamics::causally_disjoint(&self.theory, &ga.section, &gb.section) {
            return Err(Error::Precondition(format!("supports of generators {a} and {b} are not causally disjoint")));
        }
        let comm = self.graded_commutator(&AlgebraElement::letter(self.n, a), &AlgebraElement::letter(self.n, b))?;
        let value = self.evaluate(&comm);
        Ok(CausalityReport { disjoint: true, tau: self.tau_value(a, b), commutator_is_zero: value.is_zero() })
    }

    /// Q̂ on words by the graded Leibniz rule, given the images of the
    /// generators that occur.
    pub fn susy_hat(&self, a: &AlgebraElement, images: &HashMap<u32, AlgebraElement>) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.n);
        for (w, poly) in &a.terms {
            let mut dw = AlgebraElement::zero(self.n);
            for i in 0..w.len() {
                let img = images
                    .get(&w[i])
                    .ok_or_else(|| Error::Precondition(format!("no Q̂ image for generator {}", w[i])))?;
                let prefix = word_element(self.n, &w[..i]);
                let suffix = word_element(self.n, &w[i + 1..]);
                let sign = if self.word_parity(&w[..i]) == Parity::Odd { -1.0 } else { 1.0 };
                let term = self.mul(&self.mul(&prefix, img)?, &suffix)?;
                dw = dw.axpy(Complex64::new(sign, 0.0), &term);
            }
            for (m, g) in poly {
                let sign = if g.is_odd() {
                    -1.0
                } else if g.is_even() {
                    1.0
                } else {
                    return Err(Error::Parity("Q̂ needs homogeneous coefficients".into()));
                };
                let coeff = AlgebraElement {
                    n: self.n,
                    terms: [(Vec::new(), [(m.clone(), g.scale_real(sign))].into())].into(),
                };
                out = out.add(&self.mul(&coeff, &dw)?);
            }
        }
        Ok(out)
    }

    /// Registers Q(F) for each listed generator and returns the images
    /// Q̂(Φ(F)) = −Φ(Q(F)).
    pub fn susy_images(
        &mut self,
        ids: &[u32],
        q: impl Fn(&T::Section) -> Result<T::Section>,
    ) -> Result<HashMap<u32, AlgebraElement>> {
        let mut out = HashMap::new();
        for &id in ids {
            let qf = q(&self.generators[id as usize].section.clone())?;
            let phi = self.field(&qf)?;
            out.insert(id, phi.scale(Complex64::new(-1.0, 0.0)));
        }
        Ok(out)
    }

    /// max over the test family of |τ(P F, Gᵢ)|.
    pub fn check_eom(&self, f: &T::Section, tests: &[T::Section], tol: f64) -> Result<EomReport> {
        let pf = self.theory.apply_p(f)?;
        let mut max_tau: f64 = 0.0;
        for t in tests {
            max_tau = max_tau.max(tau(&self.theory, &pf, t)?.abs());
        }
        Ok(EomReport { max_tau, probes: tests.len(), pass: max_tau <= tol })
    }
}

fn word_element(n: usize, w: &[u32]) -> AlgebraElement {
    let mut out = AlgebraElement::zero(n);
    out.add_term(w.to_vec(), Vec::new(), &GrassmannElement::one(n, Field::Complex));
    out
}

/// Element c·w for an arbitrary word, without normal ordering.
pub fn raw_word(n: usize, w: &[u32], c: &GrassmannElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(n);
    out.add_term(w.to_vec(), Vec::new(), &c.complexify());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model11::{Grid1, Section11, Theory11};
    use rand::{Rng, SeedableRng};

    fn algebra(n: usize) -> Algebra<Theory11> {
        let g = Grid1::new(0.0, 2.0, 513).unwrap();
        let mut alg = Algebra::new(Theory11, n);
        for k in 0..3 {
            let c = 0.5 + 0.3 * k as f64;
            alg.field(&Section11::even_bump(g, c, 0.05, 1.0 + k as f64)).unwrap();
            alg.field(&Section11::odd_bump(g, c + 0.1, 0.05, 1.0)).unwrap();
        }
        alg
    }

    #[test]
    fn relation_holds_for_generators() {
        let alg = algebra(0);
        let beta = alg.theory().beta();
        for a in 0..6u32 {
            for b in 0..6u32 {
                let (va, vb) = (AlgebraElement::letter(0, a), AlgebraElement::letter(0, b));
                let lhs = alg.evaluate(&alg.graded_commutator(&va, &vb).unwrap());
                let want = beta * alg.tau_value(a, b);
                let got = lhs.terms.get("").map(|c| c.body()).unwrap_or_default();
                assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()), "{a} {b}: {got} vs {want}");
                assert!(lhs.terms.keys().all(|k| k.is_empty()));
            }
        }
    }

    #[test]
    fn strategies_agree_symbolically() {
        let alg = algebra(0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let len = rng.gen_range(0..=6);
            let w: Word = (0..len).map(|_| rng.gen_range(0..6)).collect();
            let mut l = alg.normal_form_word(&w, Strategy::LeftmostFirst);
            let mut r = alg.normal_form_word(&w, Strategy::RightmostFirst);
            l.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
            r.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
            assert_eq!(l, r, "{w:?}");
        }
    }

    #[test]
    fn associativity_and_star() {
        let alg = algebra(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let z = GrassmannElement::generator(2, 1).complexify();
        for _ in 0..50 {
            let mut el = || {
                let len = rng.gen_range(1..=3);
                let w: Word = (0..len).map(|_| rng.gen_range(0..6)).collect();
                let c = GrassmannElement::complex_scalar(
                    2,
                    Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64),
                );
                let c = if rng.gen_bool(0.5) { &c * &z } else { c };
                alg.normal_form(&raw_word(2, &w, &c), Strategy::LeftmostFirst)
            };
            let (a, b, c) = (el(), el(), el());
            let left = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
            let right = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
            let pa = alg.element_parity(&a).unwrap();
            let pb = alg.element_parity(&b).unwrap();
            let lhs = alg.star(&alg.mul(&a, &b).unwrap());
            let rhs = alg.mul(&alg.star(&b), &alg.star(&a)).unwrap().scale(Complex64::new(pa.koszul(pb), 0.0));
            assert_eq!(lhs, rhs);
            assert_eq!(alg.star(&alg.star(&a)), a);
        }
    }
}
