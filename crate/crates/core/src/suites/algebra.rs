use num_complex::Complex64;
use rand::Rng;

use super::{group, Worst};
use crate::config::SuiteConfig;
use crate::grassmann::{blade_indices, Field, GrassmannElement, GrassmannMorphism, Parity};
use crate::report::Check;
use crate::sampling::{random_integer_complex, random_real_integer, random_supermatrix, SuiteRng};
use crate::superlinalg::{GMatrix, SuperMatrix};

type G = GrassmannElement;

/// Product of basis monomials by explicit transposition counting on index lists.
fn oracle_mul(a: &G, b: &G) -> G {
    let n = a.n();
    let mut out = G::zero(n, Field::Complex);
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            if ba & bb != 0 {
                continue;
            }
            let mut idx = blade_indices(ba);
            idx.extend(blade_indices(bb));
            let mut inversions = 0;
            for i in 0..idx.len() {
                for j in i + 1..idx.len() {
                    if idx[i] > idx[j] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            out = &out + &G::monomial(n, ba | bb, ca * cb * sign);
        }
    }
    out
}

fn random_parity(rng: &mut SuiteRng) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Random λ: Λₙ → Λₘ with integer odd images.
fn random_integer_morphism(rng: &mut SuiteRng, n: usize, m: usize) -> GrassmannMorphism {
    let images = (0..n).map(|_| random_real_integer(rng, m, Parity::Odd, 2)).collect();
    GrassmannMorphism::new(n, m, images).expect("odd images")
}

fn mono(n: usize, idx: &[usize], c: f64) -> G {
    G::from_indices(n, idx, Complex64::new(c, 0.0), Field::Real).expect("valid indices")
}

fn examples() -> Vec<Check> {
    let t1 = G::generator(2, 1);
    let t2 = G::generator(2, 2);
    let one = G::one(2, Field::Real);
    let e = G::generator(1, 1);
    let doubling = GrassmannMorphism::new(1, 2, vec![&t1 + &t2]).expect("odd image");
    let input = &G::real_scalar(1, 2.0) + &e.scale_real(3.0);
    let want = &(&G::real_scalar(2, 2.0) + &t1.scale_real(3.0)) + &t2.scale_real(3.0);
    let c_theta = &G::real_scalar(1, 5.0) + &e;
    let body = GrassmannMorphism::body_map(1, 0);
    let i12 = G::monomial(2, 0b11, Complex64::new(0.0, 1.0));
    vec![
        Check::exact("example θ₁θ₁ = 0", (&t1 * &t1).max_abs()),
        Check::exact("example θ₂θ₁ = −θ₁θ₂", (&t2 * &t1).max_abs_diff(&mono(2, &[1, 2], -1.0))),
        Check::exact("example (1+θ₁)(1−θ₁) = 1", (&(&one + &t1) * &(&one - &t1)).max_abs_diff(&one)),
        Check::exact(
            "example e ↦ η₁+η₂ on 2+3e",
            doubling.pullback(&input).map_or(f64::INFINITY, |x| x.max_abs_diff(&want)),
        ),
        Check::exact(
            "example body map on c+θ₁",
            body.pullback(&c_theta).map_or(f64::INFINITY, |x| x.max_abs_diff(&G::real_scalar(0, 5.0))),
        ),
        Check::exact("example (iθ₁θ₂)* = −iθ₁θ₂", i12.star().max_abs_diff(&i12.scale_real(-1.0))),
        Check::exact(
            "example (i)* = −i",
            G::complex_scalar(0, Complex64::i()).star().max_abs_diff(&G::complex_scalar(0, -Complex64::i())),
        ),
    ]
}

/// Exact algebraic laws of Λₙ, its morphisms, and super-matrices over it.
pub fn grassmann_laws(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    let trials = cfg.trials.laws;
    let tol = &cfg.tolerances;
    let mut out = examples();
    let (mut assoc, mut unit, mut comm, mut oracle) =
        (Worst::default(), Worst::default(), Worst::default(), Worst::default());
    let (mut star_inv, mut star_law, mut star_real) = (Worst::default(), Worst::default(), Worst::default());
    let (mut hom, mut hom_unit, mut comp, mut parity) =
        (Worst::default(), Worst::default(), Worst::default(), Worst::default());
    for t in 0..trials {
        let n = t % 5;
        let (pa, pb) = (random_parity(rng), random_parity(rng));
        let a = random_integer_complex(rng, n, pa, 3);
        let b = random_integer_complex(rng, n, pb, 3);
        let pc = random_parity(rng);
        let c = random_integer_complex(rng, n, pc, 3);
        let one = G::one(n, Field::Complex);
        let ab = &a * &b;
        assoc.add((&ab * &c).max_abs_diff(&(&a * &(&b * &c))));
        unit.add((&one * &a).max_abs_diff(&a).max((&a * &one).max_abs_diff(&a)));
        comm.add(ab.max_abs_diff(&(&b * &a).scale_real(pa.koszul(pb))));
        oracle.add(ab.max_abs_diff(&oracle_mul(&a, &b)));
        if !ab.is_zero() {
            parity.add(if ab.parity() == Some(pa.add(pb)) { 0.0 } else { 1.0 });
        }
        star_inv.add(a.star().star().max_abs_diff(&a));
        star_law.add(ab.star().max_abs_diff(&(&b.star() * &a.star()).scale_real(pa.koszul(pb))));
        let real = random_real_integer(rng, n, pa, 3);
        star_real.add(real.star().max_abs_diff(&real));

        let m = rng.gen_range(0..=4);
        let l = rng.gen_range(0..=3);
        let inner = random_integer_morphism(rng, n, m);
        let outer = random_integer_morphism(rng, m, l);
        let (a, b) = (a.real_part(), b.real_part());
        let lhs = inner.pullback(&(&a * &b)).expect("matching level");
        let rhs = &inner.pullback(&a).expect("level") * &inner.pullback(&b).expect("level");
        hom.add(lhs.max_abs_diff(&rhs));
        hom_unit.add(inner.pullback(&G::one(n, Field::Real)).expect("level").max_abs_diff(&G::one(m, Field::Real)));
        let both = GrassmannMorphism::compose(&outer, &inner).expect("composable");
        let seq = outer.pullback(&inner.pullback(&a).expect("level")).expect("level");
        comp.add(both.pullback(&a).expect("level").max_abs_diff(&seq));
    }
    out.extend([
        Check::exact("gr_mul associativity", assoc.0),
        Check::exact("gr_mul unit", unit.0),
        Check::exact("supercommutativity", comm.0),
        Check::exact("gr_mul against monomial oracle", oracle.0),
        Check::exact("product parity is additive", parity.0),
        Check::exact("star is involutive", star_inv.0),
        Check::exact("(ab)* = (−1)^{|a||b|} b*a*", star_law.0),
        Check::exact("star fixes real elements", star_real.0),
        Check::exact("pullback is multiplicative", hom.0),
        Check::exact("pullback preserves the unit", hom_unit.0),
        Check::exact("pullback of a composite", comp.0),
    ]);
    out.extend(group("super-matrix laws", || supermatrix_laws(trials, tol.laws, tol.inverse, rng)));
    out
}

fn oracle_matmul(a: &SuperMatrix, b: &SuperMatrix) -> Vec<Vec<G>> {
    let (am, bm) = (a.matrix(), b.matrix());
    (0..am.rows())
        .map(|i| {
            (0..bm.cols())
                .map(|j| {
                    (0..am.cols())
                        .fold(G::zero(a.n(), Field::Complex), |acc, k| &acc + &oracle_mul(am.get(i, k), bm.get(k, j)))
                })
                .collect()
        })
        .collect()
}

fn rows_diff(a: &GMatrix, rows: &[Vec<G>]) -> f64 {
    let mut w = Worst::default();
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            w.add(a.get(i, j).max_abs_diff(e));
        }
    }
    w.0
}

const DIMS: [(usize, usize); 4] = [(1, 1), (2, 1), (1, 2), (2, 2)];

fn supermatrix_laws(trials: usize, laws_tol: f64, inv_tol: f64, rng: &mut SuiteRng) -> crate::Result<Vec<Check>> {
    let (mut oracle, mut ident, mut inv, mut inv_inv) =
        (Worst::default(), Worst::default(), Worst::default(), Worst::default());
    let (mut ber, mut ex_mul, mut ex_id, mut ex_body, mut ex_ber) =
        (Worst::default(), Worst::default(), Worst::default(), Worst::default(), Worst::default());
    for t in 0..trials {
        let n = 2 + t % 2;
        let (p, q) = DIMS[t % DIMS.len()];
        let a = random_supermatrix(rng, n, p, q, true);
        let b = random_supermatrix(rng, n, p, q, true);
        let ab = a.mul(&b)?;
        oracle.add(rows_diff(ab.matrix(), &oracle_matmul(&a, &b)));
        ident.add(a.mul(&SuperMatrix::identity(n, p, q))?.max_abs_diff(&a));

        let target = rng.gen_range(1..=3);
        let lam = random_integer_morphism(rng, n, target);
        ex_mul.add(ab.exchange(&lam)?.max_abs_diff(&a.exchange(&lam)?.mul(&b.exchange(&lam)?)?));
        ex_id.add(a.exchange(&GrassmannMorphism::identity(n))?.max_abs_diff(&a));
        let bodies = a.exchange(&GrassmannMorphism::body_map(n, n))?;
        ex_body.add(bodies.matrix().nilpotent().max_abs_diff(&GMatrix::zeros(n, p + q, p + q)));

        let x = random_supermatrix(rng, n, p, q, false);
        let y = random_supermatrix(rng, n, p, q, false);
        let xi = x.inverse()?;
        inv.add(x.mul(&xi)?.max_abs_diff(&SuperMatrix::identity(n, p, q)));
        inv_inv.add(xi.inverse()?.max_abs_diff(&x));
        ber.add(x.mul(&y)?.berezinian()?.max_abs_diff(&(&x.berezinian()? * &y.berezinian()?)));
        let lam = GrassmannMorphism::new(n, n, (0..n).map(|_| crate::sampling::random_odd(rng, n)).collect())?;
        ex_ber.add(x.exchange(&lam)?.berezinian()?.max_abs_diff(&lam.pullback(&x.berezinian()?)?));
    }
    Ok(vec![
        Check::exact("smat_mul against scalar-expansion oracle", oracle.0),
        Check::exact("A·I = A", ident.0),
        Check::bound("A·A⁻¹ = I", inv.0, inv_tol),
        Check::bound("(A⁻¹)⁻¹ = A", inv_inv.0, inv_tol),
        Check::bound("Ber(AB) = Ber(A)Ber(B) over Λ₂, Λ₃", ber.0, laws_tol),
        Check::exact("exchange(AB) = exchange(A)exchange(B)", ex_mul.0),
        Check::exact("exchange along identity", ex_id.0),
        Check::exact("exchange along body map has no nilpotent part", ex_body.0),
        Check::bound("Ber commutes with exchange", ex_ber.0, laws_tol),
    ])
}

fn ber_alternative(a: &SuperMatrix) -> crate::Result<G> {
    let [l1, l2, l3, l4] = a.blocks();
    let schur = l4.add_scaled(&l3.mul(&l1.inverse()?)?.mul(&l2)?, -1.0)?;
    Ok(&l1.det_even()? * &schur.det_even()?.inverse()?)
}

/// Worked Berezinian examples and the two Schur-complement forms.
pub fn berezinian(cfg: &SuiteConfig, rng: &mut SuiteRng) -> Vec<Check> {
    let tol = cfg.tolerances.laws;
    let mut out = group("identity Berezinians", || {
        let mut w = Worst::default();
        for (n, p, q) in [(0, 1, 1), (2, 1, 1), (3, 2, 2), (3, 3, 2), (1, 2, 0), (1, 0, 2)] {
            w.add(SuperMatrix::identity(n, p, q).berezinian()?.max_abs_diff(&G::one(n, Field::Real)));
        }
        Ok(vec![Check::exact("Ber(I) = 1", w.0)])
    });
    out.extend(group("block-diagonal example", || {
        let r = |x: f64| vec![vec![G::real_scalar(0, x)]];
        let a = SuperMatrix::from_blocks(0, r(2.0), r(0.0), r(0.0), r(3.0))?;
        Ok(vec![Check::exact("Ber([2] ⊕ [3]) = 2/3", (a.berezinian()?.body().re - 2.0 / 3.0).abs())])
    }));
    out.extend(group("nilpotent cancellation example", || {
        let t1 = G::generator(2, 1);
        let t2 = G::generator(2, 2);
        let a = SuperMatrix::from_blocks(
            2,
            vec![vec![&G::one(2, Field::Real) + &mono(2, &[1, 2], 1.0)]],
            vec![vec![t1]],
            vec![vec![t2]],
            vec![vec![G::one(2, Field::Real)]],
        )?;
        Ok(vec![Check::exact("Ber with L2L4⁻¹L3 = θ₁θ₂ is 1", a.berezinian()?.max_abs_diff(&G::one(2, Field::Real)))])
    }));
    out.extend(group("inverse examples", || {
        let x = &G::one(2, Field::Real) + &mono(2, &[1, 2], 1.0);
        let a = SuperMatrix::from_blocks(2, vec![vec![x]], vec![], vec![], vec![])?;
        let want = &G::one(2, Field::Real) - &mono(2, &[1, 2], 1.0);
        let id = SuperMatrix::identity(3, 2, 2);
        Ok(vec![
            Check::exact("(1+θ₁θ₂)⁻¹ = 1−θ₁θ₂", a.inverse()?.entry(0, 0).max_abs_diff(&want)),
            Check::exact("I⁻¹ = I", id.inverse()?.max_abs_diff(&id)),
        ])
    }));
    out.extend(group("Schur forms", || {
        let (mut alt, mut inv) = (Worst::default(), Worst::default());
        for t in 0..cfg.trials.laws.min(200) {
            let n = 2 + t % 2;
            let (p, q) = DIMS[t % DIMS.len()];
            let a = random_supermatrix(rng, n, p, q, false);
            let b = a.berezinian()?;
            alt.add(b.max_abs_diff(&ber_alternative(&a)?));
            inv.add(a.inverse()?.berezinian()?.max_abs_diff(&b.inverse()?));
        }
        Ok(vec![
            Check::bound("Ber = det(L1)·det(L4 − L3L1⁻¹L2)⁻¹", alt.0, tol),
            Check::bound("Ber(A⁻¹) = Ber(A)⁻¹", inv.0, tol),
        ])
    }));
    out
}
