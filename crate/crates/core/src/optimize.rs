//! Float numerics shared by the iterative solvers: simplex projection,
//! projected gradient descent, seeded starting points, quadrature.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Armijo sufficient-decrease constant.
pub const ARMIJO_C: f64 = 1e-4;
/// Step shrink factor during backtracking.
pub const BACKTRACK: f64 = 0.5;

/// Euclidean projection of `v` onto `{x ≥ 0, Σ x = r}`.
pub fn project_simplex(v: &[f64], r: f64) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - r) / (k as f64 + 1.0);
        if u - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// Projection onto the face of the simplex spanned by `support`; other
/// coordinates are zero.
pub fn project_face(v: &[f64], r: f64, support: &[usize]) -> Vec<f64> {
    let sub: Vec<f64> = support.iter().map(|&i| v[i]).collect();
    let p = project_simplex(&sub, r);
    let mut out = vec![0.0; v.len()];
    for (k, &i) in support.iter().enumerate() {
        out[i] = p[k];
    }
    out
}

#[derive(Clone, Debug)]
pub struct DescentOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Projected gradient descent with Armijo backtracking (initial step 1.0)
/// on the face of the simplex spanned by `support`.
pub fn projected_descent(
    f: &dyn Fn(&[f64]) -> f64,
    grad: &dyn Fn(&[f64]) -> Vec<f64>,
    x0: &[f64],
    r: f64,
    support: &[usize],
    max_iters: usize,
) -> DescentOutcome {
    let mut x = project_face(x0, r, support);
    let mut fx = f(&x);
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        let g = grad(&x);
        let mut step = 1.0;
        let mut accepted = None;
        while step > 1e-20 {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
            let y = project_face(&trial, r, support);
            let decrease: f64 = g.iter().zip(y.iter().zip(&x)).map(|(gi, (yi, xi))| gi * (yi - xi)).sum();
            let fy = f(&y);
            if fy <= fx + ARMIJO_C * decrease {
                accepted = Some((y, fy));
                break;
            }
            step *= BACKTRACK;
        }
        let Some((y, fy)) = accepted else {
            break;
        };
        let moved = y.iter().zip(&x).map(|(a, b)| libm::fabs(a - b)).fold(0.0, f64::max);
        x = y;
        fx = fy;
        if moved < 1e-15 {
            break;
        }
    }
    DescentOutcome { x, value: fx, iterations }
}

/// `count` seeded points drawn uniformly from the interior of `Δ_r(n)`.
pub fn random_simplex_points(n: usize, r: f64, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let e: Vec<f64> = (0..n).map(|_| -libm::log(1.0 - rng.gen::<f64>())).collect();
            let s: f64 = e.iter().sum();
            e.iter().map(|v| r * v / s).collect()
        })
        .collect()
}

/// Central finite-difference gradient.
pub fn numeric_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    (0..x.len())
        .map(|i| {
            y[i] = x[i] + h;
            let up = f(&y);
            y[i] = x[i] - h;
            let down = f(&y);
            y[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = (a + b) / 2.0;
        let lm = (a + m) / 2.0;
        let rm = (m + b) / 2.0;
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || libm::fabs(delta) <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f((a + b) / 2.0);
    let whole = simpson(fa, fm, fb, a, b);
    rec(f, a, b, fa, fm, fb, whole, tol, 48)
}
