//! Uniform-grid stencils, quadrature, interpolation and test profiles.

/// First derivative, 4th order: centered in the interior, one-sided at the
/// two outermost points on each end. Requires `f.len() >= 5`.
pub fn d1_4th(f: &[f64], dt: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5, "need at least 5 samples");
    let c = 1.0 / (12.0 * dt);
    let mut out = vec![0.0; n];
    for i in 2..n - 2 {
        out[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    }
    out[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    out[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    let m = n - 1;
    out[m] = -c * (-25.0 * f[m] + 48.0 * f[m - 1] - 36.0 * f[m - 2] + 16.0 * f[m - 3] - 3.0 * f[m - 4]);
    out[m - 1] = -c * (-3.0 * f[m] - 10.0 * f[m - 1] + 18.0 * f[m - 2] - 6.0 * f[m - 3] + f[m - 4]);
    out
}

/// Second derivative, 4th order, same layout as [`d1_4th`]. Requires `f.len() >= 6`.
pub fn d2_4th(f: &[f64], dt: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 6, "need at least 6 samples");
    let c = 1.0 / (12.0 * dt * dt);
    let mut out = vec![0.0; n];
    for i in 2..n - 2 {
        out[i] = c * (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]);
    }
    let edge0 = |g: &dyn Fn(usize) -> f64| {
        c * (45.0 * g(0) - 154.0 * g(1) + 214.0 * g(2) - 156.0 * g(3) + 61.0 * g(4) - 10.0 * g(5))
    };
    let edge1 =
        |g: &dyn Fn(usize) -> f64| c * (10.0 * g(0) - 15.0 * g(1) - 4.0 * g(2) + 14.0 * g(3) - 6.0 * g(4) + g(5));
    let m = n - 1;
    out[0] = edge0(&|k| f[k]);
    out[1] = edge1(&|k| f[k]);
    out[m] = edge0(&|k| f[m - k]);
    out[m - 1] = edge1(&|k| f[m - k]);
    out
}

pub fn trapezoid(f: &[f64], dt: f64) -> f64 {
    match f.len() {
        0 | 1 => 0.0,
        n => dt * (0.5 * f[0] + f[1..n - 1].iter().sum::<f64>() + 0.5 * f[n - 1]),
    }
}

/// Running trapezoid sums ∫_{t0}^{t_k} f.
pub fn cumulative_trapezoid(f: &[f64], dt: f64) -> Vec<f64> {
    let mut out = vec![0.0; f.len()];
    for k in 1..f.len() {
        out[k] = out[k - 1] + 0.5 * dt * (f[k - 1] + f[k]);
    }
    out
}

/// Running integral with the endpoint-corrected trapezoid rule,
/// I_k = T_k − dt²/12·(f′_k − f′_0), accurate to 4th order.
pub fn cumulative_4th(f: &[f64], dt: f64) -> Vec<f64> {
    let trap = cumulative_trapezoid(f, dt);
    let df = d1_4th(f, dt);
    let c = dt * dt / 12.0;
    trap.iter().zip(&df).map(|(t, d)| t - c * (d - df[0])).collect()
}

const LAGRANGE_POINTS: usize = 8;

/// Local Lagrange interpolation of samples `f` on `t0 + k·dt` at `t`.
pub fn interpolate(f: &[f64], t0: f64, dt: f64, t: f64) -> f64 {
    let n = f.len();
    let x = (t - t0) / dt;
    let nearest = x.round();
    if (x - nearest).abs() < 1e-12 && nearest >= 0.0 && (nearest as usize) < n {
        return f[nearest as usize];
    }
    let p = LAGRANGE_POINTS.min(n);
    let start = (x.floor() as isize - (p as isize / 2 - 1)).clamp(0, (n - p) as isize) as usize;
    let mut acc = 0.0;
    for j in start..start + p {
        let mut w = 1.0;
        for k in start..start + p {
            if k != j {
                w *= (x - k as f64) / (j as f64 - k as f64);
            }
        }
        acc += w * f[j];
    }
    acc
}

/// exp(−(t−c)²/2σ²), set to exactly zero beyond 9σ.
pub fn gaussian(t: f64, center: f64, sigma: f64) -> f64 {
    let z = (t - center) / sigma;
    if z.abs() > 9.0 {
        0.0
    } else {
        (-0.5 * z * z).exp()
    }
}

/// Gaussian truncated at `cut`·σ.
pub fn gaussian_cut(t: f64, center: f64, sigma: f64, cut: f64) -> f64 {
    let z = (t - center) / sigma;
    if z.abs() > cut {
        0.0
    } else {
        (-0.5 * z * z).exp()
    }
}

/// C² smoothstep on [0, 1], clamped outside.
pub fn smoothstep(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * x * (x * (6.0 * x - 15.0) + 10.0)
}

/// C^∞ step on [0, 1] built from exp(−1/x), clamped outside.
pub fn smooth_step_infinite(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / x).exp();
    let b = (-1.0 / (1.0 - x)).exp();
    a / (a + b)
}

pub fn l2_norm(v: &[f64], weight: f64) -> f64 {
    (weight * v.iter().map(|x| x * x).sum::<f64>()).sqrt()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(n: usize, dt: f64, g: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..n).map(|i| g(i as f64 * dt)).collect()
    }

    #[test]
    fn stencils_exact_on_quartics() {
        let dt = 0.1;
        let f = samples(12, dt, |t| 1.0 - 2.0 * t + 3.0 * t * t - t.powi(3) + 0.5 * t.powi(4));
        let d1 = d1_4th(&f, dt);
        let d2 = d2_4th(&f, dt);
        for i in 0..12 {
            let t = i as f64 * dt;
            assert!((d1[i] - (-2.0 + 6.0 * t - 3.0 * t * t + 2.0 * t.powi(3))).abs() < 1e-10, "d1 at {i}");
            assert!((d2[i] - (6.0 - 6.0 * t + 6.0 * t * t)).abs() < 1e-9, "d2 at {i}");
        }
    }

    #[test]
    fn corrected_cumulative_integral_is_exact_on_cubics() {
        let dt = 0.05;
        let f = samples(30, dt, |t| 1.0 + t - t * t + 2.0 * t.powi(3));
        let c = cumulative_4th(&f, dt);
        for (i, v) in c.iter().enumerate() {
            let t = i as f64 * dt;
            let exact = t + t * t / 2.0 - t.powi(3) / 3.0 + t.powi(4) / 2.0;
            assert!((v - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn interpolation_reproduces_polynomials() {
        let dt = 0.1;
        let f = samples(20, dt, |t| t.powi(5) - t);
        for &t in &[0.013, 0.55, 1.234, 1.89] {
            assert!((interpolate(&f, 0.0, dt, t) - (t.powi(5) - t)).abs() < 1e-12);
        }
    }

    #[test]
    fn smoothstep_endpoints() {
        assert_eq!(smoothstep(-1.0), 0.0);
        assert_eq!(smoothstep(2.0), 1.0);
        assert!((smoothstep(0.5) - 0.5).abs() < 1e-15);
        assert_eq!(smooth_step_infinite(0.0), 0.0);
        assert_eq!(smooth_step_infinite(1.0), 1.0);
        assert!((smooth_step_infinite(0.5) - 0.5).abs() < 1e-15);
    }
}
