//! Retarded and advanced Green's operators of the 3|2 model: leapfrog
//! integration of (□ + m²)u = f from zero data, and the Dirac operator
//! G_D = −(i∇̸ − m)∘G_KG.

use super::{axpy_vec, stencil, Grid32, Section32, Support32, CONE_MARGIN, ETA, PHI, PSI1, PSI2};
use crate::dynamics::Side;
use crate::error::{Error, Result};

/// Solves (□ + m²)u = f with u ≡ 0 before (retarded) or after (advanced) the
/// support of f. Needs f to vanish on the two outermost slices at the
/// starting end.
pub fn green_kg(g: &Grid32, f: &[f64], mass: f64, side: Side) -> Result<Vec<f64>> {
    let s = g.slice_len();
    let nt = g.nt;
    let start_rows: [usize; 2] = match side {
        Side::Retarded => [0, 1],
        Side::Advanced => [nt - 1, nt - 2],
    };
    for r in start_rows {
        if f[r * s..(r + 1) * s].iter().any(|&x| x != 0.0) {
            return Err(Error::Support(format!("source is nonzero on boundary slice {r}")));
        }
    }
    let dt2 = g.dt() * g.dt();
    let (hx, hy) = (1.0 / (g.dx() * g.dx()), 1.0 / (g.dy() * g.dy()));
    let m2 = mass * mass;
    let (nx, ny) = (g.nx, g.ny);
    let mut u = vec![0.0; f.len()];
    let mut step = |n: usize, prev: usize, next: usize| {
        for i in 0..nx {
            let (ip, im) = ((i + 1) % nx, (i + nx - 1) % nx);
            for j in 0..ny {
                let (jp, jm) = ((j + 1) % ny, (j + ny - 1) % ny);
                let c = g.idx(n, i, j);
                let lap = hx * (u[g.idx(n, ip, j)] - 2.0 * u[c] + u[g.idx(n, im, j)])
                    + hy * (u[g.idx(n, i, jp)] - 2.0 * u[c] + u[g.idx(n, i, jm)]);
                u[g.idx(next, i, j)] = 2.0 * u[c] - u[g.idx(prev, i, j)] + dt2 * (f[c] + lap - m2 * u[c]);
            }
        }
    };
    match side {
        Side::Retarded => {
            for n in 1..nt - 1 {
                step(n, n - 1, n + 1);
            }
        }
        Side::Advanced => {
            for n in (1..nt - 1).rev() {
                step(n, n + 1, n - 1);
            }
        }
    }
    Ok(u)
}

/// Green's operator of the super-differential operator in matrix form:
/// (φ, ψ, η) ↦ (mGφ + Gη, −(i∇̸ − m)Gψ, −□Gφ + mGη).
pub fn green32(s: &Section32, mass: f64, side: Side) -> Result<Section32> {
    if !s.is_compact() {
        return Err(Error::Support("support touches the first or last time slices".into()));
    }
    let g = s.grid();
    let gphi = green_kg(&g, s.component(PHI), mass, side)?;
    let geta = green_kg(&g, s.component(ETA), mass, side)?;
    let gpsi = [green_kg(&g, s.component(PSI1), mass, side)?, green_kg(&g, s.component(PSI2), mass, side)?];
    let d = stencil::dirac(&g, [&gpsi[0], &gpsi[1]]);
    let psi = [0, 1].map(|a| d[a].iter().zip(&gpsi[a]).map(|(x, y)| mass * y - x).collect::<Vec<f64>>());
    let phi = axpy_vec(&geta, mass, &gphi);
    let box_gphi = stencil::box_op(&g, &gphi);
    let eta: Vec<f64> = geta.iter().zip(&box_gphi).map(|(e, b)| mass * e - b).collect();
    let [p1, p2] = psi;
    Section32::new(g, phi, p1, p2, eta)
}

fn cyclic_distance_to(set: &[bool], i: usize) -> usize {
    let n = set.len();
    (0..n)
        .filter(|&k| set[k])
        .map(|k| {
            let d = k.abs_diff(i);
            d.min(n - d)
        })
        .min()
        .unwrap_or(usize::MAX)
}

/// Points reachable from the support by the scheme: rows at or after the
/// first support row (retarded) with torus Manhattan distance at most the
/// elapsed rows plus a margin.
pub fn numerical_cone_mask(g: &Grid32, support: &Support32, side: Side) -> Vec<bool> {
    let mut mask = vec![false; g.len()];
    let dx: Vec<usize> = (0..g.nx).map(|i| cyclic_distance_to(&support.xs, i)).collect();
    let dy: Vec<usize> = (0..g.ny).map(|j| cyclic_distance_to(&support.ys, j)).collect();
    for n in 0..g.nt {
        let elapsed = match side {
            Side::Retarded => (n + CONE_MARGIN).checked_sub(support.rows.0),
            Side::Advanced => (support.rows.1 + CONE_MARGIN).checked_sub(n),
        };
        let Some(reach) = elapsed else { continue };
        let reach = reach + CONE_MARGIN;
        for i in 0..g.nx {
            for j in 0..g.ny {
                if dx[i].saturating_add(dy[j]) <= reach {
                    mask[g.idx(n, i, j)] = true;
                }
            }
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::super::{spacetime_bump, Grid32};
    use super::*;

    #[test]
    fn zero_source_gives_zero() {
        let g = Grid32::square(16, 8, 2.0).unwrap();
        let s = Section32::zero(g);
        assert!(green32(&s, 1.0, Side::Retarded).unwrap().is_zero());
    }

    #[test]
    fn boundary_source_is_rejected() {
        let g = Grid32::square(16, 8, 2.0).unwrap();
        let mut f = vec![0.0; g.len()];
        f[g.idx(0, 2, 2)] = 1.0;
        assert!(green_kg(&g, &f, 1.0, Side::Retarded).is_err());
        assert!(green_kg(&g, &f, 1.0, Side::Advanced).is_ok());
    }

    #[test]
    fn retarded_and_advanced_are_transposes() {
        let g = Grid32::square(40, 16, 4.0).unwrap();
        let f = spacetime_bump(&g, [2.0, 2.0, 2.0], 0.8);
        let h = spacetime_bump(&g, [3.0, 1.0, 2.5], 0.8);
        let a: f64 = green_kg(&g, &f, 0.5, Side::Retarded).unwrap().iter().zip(&h).map(|(x, y)| x * y).sum();
        let b: f64 = green_kg(&g, &h, 0.5, Side::Advanced).unwrap().iter().zip(&f).map(|(x, y)| x * y).sum();
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
    }
}
