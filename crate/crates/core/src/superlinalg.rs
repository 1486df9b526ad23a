//! Even morphisms of free Λₙ-supermodules in block form and their Berezinian.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{Field, GrassmannElement, GrassmannMorphism};

/// Dense matrix with Grassmann entries.
#[derive(Clone, Debug, PartialEq)]
pub struct GMatrix {
    n: usize,
    rows: usize,
    cols: usize,
    data: Vec<GrassmannElement>,
}

impl GMatrix {
    pub fn zeros(n: usize, rows: usize, cols: usize) -> Self {
        GMatrix { n, rows, cols, data: vec![GrassmannElement::zero(n, Field::Real); rows * cols] }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        let mut g = Self::zeros(n, m, m);
        for i in 0..m {
            g.set(i, i, GrassmannElement::one(n, Field::Real));
        }
        g
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<GrassmannElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged matrix rows".into()));
            }
            for e in row {
                if e.n() != n {
                    return Err(Error::Dimension(format!("entry over Λ{}, expected Λ{n}", e.n())));
                }
                data.push(e);
            }
        }
        Ok(GMatrix { n, rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GrassmannElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: GrassmannElement) {
        self.data[i * self.cols + j] = e;
    }

    pub fn to_rows(&self) -> Vec<Vec<GrassmannElement>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn map(&self, f: impl Fn(&GrassmannElement) -> Result<GrassmannElement>) -> Result<Self> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        let n = data.first().map_or(self.n, |e| e.n());
        Ok(GMatrix { n, rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.n != other.n {
            return Err(Error::Dimension(format!(
                "{}x{} over Λ{} times {}x{} over Λ{}",
                self.rows, self.cols, self.n, other.rows, other.cols, other.n
            )));
        }
        let mut out = Self::zeros(self.n, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = GrassmannElement::zero(self.n, Field::Real);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add_scaled(&self, other: &Self, s: f64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols || self.n != other.n {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + &b.scale_real(s)).collect();
        Ok(GMatrix { n: self.n, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale_real(&self, s: f64) -> Self {
        GMatrix {
            n: self.n,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.scale_real(s)).collect(),
        }
    }

    pub fn body(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).body())
    }

    fn from_body(n: usize, b: &DMatrix<Complex64>) -> Self {
        let mut g = Self::zeros(n, b.nrows(), b.ncols());
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                g.set(i, j, GrassmannElement::complex_scalar(n, b[(i, j)]));
            }
        }
        g
    }

    pub fn nilpotent(&self) -> Self {
        GMatrix {
            n: self.n,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.nilpotent_part()).collect(),
        }
    }

    fn is_real(&self) -> bool {
        self.data.iter().all(|e| e.field() == Field::Real)
    }

    fn realify_if(self, real: bool) -> Self {
        if !real {
            return self;
        }
        GMatrix { n: self.n, rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| e.real_part()).collect() }
    }

    fn body_inverse(&self) -> Result<DMatrix<Complex64>> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        self.body().try_inverse().ok_or_else(|| Error::Singular("body matrix is not invertible".into()))
    }

    /// A⁻¹ = Σₖ (−B⁻¹N)ᵏ B⁻¹ with B the body and N the nilpotent part.
    pub fn inverse(&self) -> Result<Self> {
        let binv = Self::from_body(self.n, &self.body_inverse()?);
        let x = binv.mul(&self.nilpotent())?.scale_real(-1.0);
        let mut term = Self::identity(self.n, self.rows);
        let mut sum = term.clone();
        for _ in 0..self.n {
            term = term.mul(&x)?;
            if term.data.iter().all(|e| e.is_zero()) {
                break;
            }
            sum = sum.add_scaled(&term, 1.0)?;
        }
        Ok(sum.mul(&binv)?.realify_if(self.is_real()))
    }

    /// Determinant of a square matrix with even entries:
    /// det(B)·exp(tr log(1 + B⁻¹N)).
    pub fn det_even(&self) -> Result<GrassmannElement> {
        if self.data.iter().any(|e| !e.is_even()) {
            return Err(Error::Parity("determinant needs even entries".into()));
        }
        let body = self.body();
        let det_b = body.determinant();
        if det_b.norm() == 0.0 {
            return Err(Error::Singular("body matrix is not invertible".into()));
        }
        let binv = Self::from_body(self.n, &self.body_inverse()?);
        let y = binv.mul(&self.nilpotent())?;
        let mut power = Self::identity(self.n, self.rows);
        let mut log_trace = GrassmannElement::zero(self.n, Field::Complex);
        for k in 1..=self.n.max(1) {
            power = power.mul(&y)?;
            let tr =
                (0..self.rows).fold(GrassmannElement::zero(self.n, Field::Complex), |acc, i| &acc + power.get(i, i));
            if tr.is_zero() && power.data.iter().all(|e| e.is_zero()) {
                break;
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            log_trace = &log_trace + &tr.scale_real(sign / k as f64);
        }
        let d = log_trace.exp().scale(det_b);
        Ok(if self.is_real() { d.real_part() } else { d })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }
}

/// Even morphism (p|q) → (r|s) stored as the full (r+s)×(p+q) matrix
/// [[L1, L2], [L3, L4]].
#[derive(Clone, Debug, PartialEq)]
pub struct SuperMatrix {
    p: usize,
    q: usize,
    r: usize,
    s: usize,
    m: GMatrix,
}

impl SuperMatrix {
    pub fn new(source: (usize, usize), target: (usize, usize), m: GMatrix) -> Result<Self> {
        let (p, q) = source;
        let (r, s) = target;
        if m.rows != r + s || m.cols != p + q {
            return Err(Error::Dimension(format!("{}x{} matrix for ({p}|{q}) → ({r}|{s})", m.rows, m.cols)));
        }
        for i in 0..m.rows {
            for j in 0..m.cols {
                let odd_block = (i >= r) != (j >= p);
                let e = m.get(i, j);
                let ok = if odd_block { e.is_odd() } else { e.is_even() };
                if !ok {
                    return Err(Error::Parity(format!("entry ({i},{j}) breaks the even block pattern")));
                }
            }
        }
        Ok(SuperMatrix { p, q, r, s, m })
    }

    pub fn from_blocks(
        n: usize,
        l1: Vec<Vec<GrassmannElement>>,
        l2: Vec<Vec<GrassmannElement>>,
        l3: Vec<Vec<GrassmannElement>>,
        l4: Vec<Vec<GrassmannElement>>,
    ) -> Result<Self> {
        let r = l1.len().max(l2.len());
        let s = l3.len().max(l4.len());
        let p = l1.first().or(l3.first()).map_or(0, |row| row.len());
        let q = l2.first().or(l4.first()).map_or(0, |row| row.len());
        let zero = GrassmannElement::zero(n, Field::Real);
        let block = |b: &Vec<Vec<GrassmannElement>>, i: usize, j: usize| -> GrassmannElement {
            b.get(i).and_then(|row| row.get(j)).cloned().unwrap_or_else(|| zero.clone())
        };
        let mut rows = Vec::with_capacity(r + s);
        for i in 0..r {
            let mut row: Vec<_> = (0..p).map(|j| block(&l1, i, j)).collect();
            row.extend((0..q).map(|j| block(&l2, i, j)));
            rows.push(row);
        }
        for i in 0..s {
            let mut row: Vec<_> = (0..p).map(|j| block(&l3, i, j)).collect();
            row.extend((0..q).map(|j| block(&l4, i, j)));
            rows.push(row);
        }
        let m = if rows.is_empty() { GMatrix::zeros(n, 0, p + q) } else { GMatrix::from_rows(n, rows)? };
        Self::new((p, q), (r, s), m)
    }

    pub fn identity(n: usize, p: usize, q: usize) -> Self {
        SuperMatrix { p, q, r: p, s: q, m: GMatrix::identity(n, p + q) }
    }

    pub fn n(&self) -> usize {
        self.m.n
    }

    pub fn source_dims(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn target_dims(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    pub fn matrix(&self) -> &GMatrix {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &GrassmannElement {
        self.m.get(i, j)
    }

    fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> GMatrix {
        let mut g = GMatrix::zeros(self.n(), rows.len(), cols.len());
        for (bi, i) in rows.clone().enumerate() {
            for (bj, j) in cols.clone().enumerate() {
                g.set(bi, bj, self.m.get(i, j).clone());
            }
        }
        g
    }

    pub fn blocks(&self) -> [GMatrix; 4] {
        let (p, q, r, s) = (self.p, self.q, self.r, self.s);
        [self.block(0..r, 0..p), self.block(0..r, p..p + q), self.block(r..r + s, 0..p), self.block(r..r + s, p..p + q)]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if (self.p, self.q) != (other.r, other.s) {
            return Err(Error::Dimension(format!(
                "({}|{}) source does not match ({}|{}) target",
                self.p, self.q, other.r, other.s
            )));
        }
        Ok(SuperMatrix { p: other.p, q: other.q, r: self.r, s: self.s, m: self.m.mul(&other.m)? })
    }

    pub fn inverse(&self) -> Result<Self> {
        if (self.p, self.q) != (self.r, self.s) {
            return Err(Error::Dimension("inverse needs a square (p|q) → (p|q) morphism".into()));
        }
        Ok(SuperMatrix { m: self.m.inverse()?, ..self.clone() })
    }

    pub fn berezinian(&self) -> Result<GrassmannElement> {
        if (self.p, self.q) != (self.r, self.s) {
            return Err(Error::Dimension("Berezinian needs a square (p|q) → (p|q) morphism".into()));
        }
        let [l1, l2, l3, l4] = self.blocks();
        if self.q == 0 {
            return l1.det_even();
        }
        let l4_inv = l4.inverse()?;
        let det4 = l4.det_even()?;
        if self.p == 0 {
            return det4.inverse();
        }
        let schur = l1.add_scaled(&l2.mul(&l4_inv)?.mul(&l3)?, -1.0)?;
        let d = schur.det_even()?;
        Ok(&d * &det4.inverse()?)
    }

    pub fn exchange(&self, lambda: &GrassmannMorphism) -> Result<Self> {
        if lambda.source() != self.n() {
            return Err(Error::Dimension(format!("matrix over Λ{}, morphism source Λ{}", self.n(), lambda.source())));
        }
        let m = if self.m.data.is_empty() {
            GMatrix::zeros(lambda.target(), self.m.rows, self.m.cols)
        } else {
            self.m.map(|e| lambda.pullback(e))?
        };
        Ok(SuperMatrix { m, ..self.clone() })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m.max_abs_diff(&other.m)
    }
}

pub fn smat_mul(a: &SuperMatrix, b: &SuperMatrix) -> Result<SuperMatrix> {
    a.mul(b)
}

pub fn smat_inverse(a: &SuperMatrix) -> Result<SuperMatrix> {
    a.inverse()
}

pub fn berezinian(a: &SuperMatrix) -> Result<GrassmannElement> {
    a.berezinian()
}

pub fn smat_exchange(lambda: &GrassmannMorphism, a: &SuperMatrix) -> Result<SuperMatrix> {
    a.exchange(lambda)
}

#[derive(Serialize, Deserialize)]
struct SuperMatrixJson {
    n: usize,
    source: (usize, usize),
    target: (usize, usize),
    #[serde(rename = "L1")]
    l1: Vec<Vec<GrassmannElement>>,
    #[serde(rename = "L2")]
    l2: Vec<Vec<GrassmannElement>>,
    #[serde(rename = "L3")]
    l3: Vec<Vec<GrassmannElement>>,
    #[serde(rename = "L4")]
    l4: Vec<Vec<GrassmannElement>>,
}

impl Serialize for SuperMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [l1, l2, l3, l4] = self.blocks();
        SuperMatrixJson {
            n: self.n(),
            source: (self.p, self.q),
            target: (self.r, self.s),
            l1: l1.to_rows(),
            l2: l2.to_rows(),
            l3: l3.to_rows(),
            l4: l4.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SuperMatrixJson::deserialize(d)?;
        let m = SuperMatrix::from_blocks(j.n, j.l1, j.l2, j.l3, j.l4).map_err(serde::de::Error::custom)?;
        if m.source_dims() != j.source || m.target_dims() != j.target {
            return Err(serde::de::Error::custom("block shapes disagree with declared dimensions"));
        }
        Ok(m)
    }
}
