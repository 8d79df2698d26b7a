//! Potential `Φ(x) = Σ_i ∫₀^{x_i} f_i + Σ_{i<j} α_{i,j} x_i x_j` of symmetric
//! graphical games and its minimization over the simplex.

use alloc::vec::Vec;

use crate::equilibrium::verify_equilibrium;
use crate::error::NbgError;
use crate::game::{Game, MassDistribution};
use crate::optimize::{projected_descent, random_simplex_points};
use crate::scalar::Scalar;
use crate::supports::{solve_support, SolveResult};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialValue<S> {
    pub value: S,
    /// Equal to the cost vector.
    pub gradient: Vec<S>,
}

fn require_symmetric<S: Scalar>(game: &Game<S>) -> Result<()> {
    match game.influence() {
        None => Err(NbgError::NotGraphical),
        Some(m) if !m.is_symmetric() => Err(NbgError::NotSymmetric),
        Some(_) => Ok(()),
    }
}

fn potential_at<S: Scalar>(game: &Game<S>, x: &[S]) -> S {
    let costs = game.vertex_costs().expect("graphical");
    let influence = game.influence().expect("graphical");
    let own = costs.iter().zip(x).fold(S::zero(), |acc, (f, xi)| acc + f.integral(xi));
    influence
        .entries()
        .filter(|(i, j, _)| i < j)
        .fold(own, |acc, (i, j, a)| acc + a.clone() * x[i].clone() * x[j].clone())
}

/// Value and gradient of the potential. Refuses non-symmetric games, which
/// admit no potential.
pub fn potential<S: Scalar>(game: &Game<S>, x: &MassDistribution<S>) -> Result<PotentialValue<S>> {
    require_symmetric(game)?;
    let gradient = game.cost_vector(x)?;
    Ok(PotentialValue { value: potential_at(game, x.masses()), gradient })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialMinimum<S> {
    pub x: MassDistribution<S>,
    pub value: S,
    /// True when the point was replaced by the exact solution of its support
    /// system (affine games).
    pub snapped: bool,
}

/// Options for [`minimize_potential`].
#[derive(Clone, Debug)]
pub struct DescentOptions {
    /// Random interior starts, in addition to the `n` simplex vertices.
    pub starts: usize,
    pub seed: u64,
    pub max_iters: usize,
    /// Equilibrium tolerance applied to every returned point.
    pub tolerance: f64,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions { starts: 20, seed: 0, max_iters: 20_000, tolerance: 1e-7 }
    }
}

/// Distinct minima closer than this (∞-norm) are merged.
pub const DEDUP_RADIUS: f64 = 1e-6;
/// Exact support solutions this close (∞-norm) replace a descent point.
pub const SNAP_RADIUS: f64 = 1e-4;

/// Multistart projected gradient descent on `Φ`. Stationary points that a
/// small pairwise mass transfer can improve are perturbed and restarted, so
/// maxima and saddles on the boundary are not reported. Returned points are
/// local minima that pass the equilibrium check; they are sorted
/// lexicographically and deduplicated.
pub fn minimize_potential<S: Scalar>(game: &Game<S>, options: &DescentOptions) -> Result<Vec<PotentialMinimum<S>>> {
    require_symmetric(game)?;
    let fgame = game.to_float();
    let n = game.n();
    let r = fgame.r().to_f64();
    let phi = |x: &[f64]| potential_at(&fgame, x);
    let grad = |x: &[f64]| fgame.costs_at(x);
    let all: Vec<usize> = (0..n).collect();

    let mut starts: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut v = alloc::vec![0.0; n];
            v[i] = r;
            v
        })
        .collect();
    starts.extend(random_simplex_points(n, r, options.starts, options.seed));

    let mut found: Vec<Vec<f64>> = Vec::new();
    for start in starts {
        let mut x = start;
        for _ in 0..50 {
            let out = projected_descent(&phi, &grad, &x, r, &all, options.max_iters);
            x = out.x;
            match improving_transfer(&phi, &x, r) {
                Some(y) => x = y,
                None => break,
            }
        }
        found.push(x);
    }
    found.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let mut distinct: Vec<Vec<f64>> = Vec::new();
    for x in found {
        let dup = distinct
            .iter()
            .any(|d| d.iter().zip(&x).all(|(a, b)| libm::fabs(a - b) <= DEDUP_RADIUS));
        if !dup {
            distinct.push(x);
        }
    }

    let tol = S::from_f64(options.tolerance);
    let affine = game.affine_costs();
    let mut out: Vec<PotentialMinimum<S>> = Vec::new();
    for x in distinct {
        let mut snapped = None;
        if let Some(costs) = &affine {
            // Descent creeps slowly along flat directions, so try the exact
            // solutions of the supports seen at a few charge thresholds.
            for theta in [options.tolerance, 1e-6, 1e-4] {
                let support: Vec<usize> = (0..n).filter(|&i| x[i] > theta * r.max(1.0)).collect();
                if let Some(SolveResult::Point(p)) = solve_support(costs, game.r(), &support) {
                    let close = p.x.masses().iter().zip(&x).all(|(a, b)| libm::fabs(a.to_f64() - b) <= SNAP_RADIUS);
                    if close && verify_equilibrium(game, &p.x, &tol)?.is_equilibrium {
                        snapped = Some(p.x);
                        break;
                    }
                }
            }
        }
        let (dist, was_snapped) = match snapped {
            Some(d) => (d, true),
            None => (to_distribution(&x, game.r()), false),
        };
        if !verify_equilibrium(game, &dist, &tol)?.is_equilibrium {
            continue;
        }
        if out.iter().any(|m| m.x == dist) {
            continue;
        }
        let value = potential_at(game, dist.masses());
        out.push(PotentialMinimum { x: dist, value, snapped: was_snapped });
    }
    Ok(out)
}

/// Converts a float point to the scalar type, putting rounding drift on the
/// largest entry so the total is exactly `r`.
pub(crate) fn to_distribution<S: Scalar>(x: &[f64], r: &S) -> MassDistribution<S> {
    let mut masses: Vec<S> = x.iter().map(|v| S::from_f64(*v)).collect();
    let big = (0..x.len()).fold(0, |a, i| if x[i] > x[a] { i } else { a });
    let rest = masses
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != big)
        .fold(S::zero(), |acc, (_, v)| acc + v.clone());
    masses[big] = r.clone() - rest;
    MassDistribution::new(masses, r.clone()).expect("projected point lies on the simplex")
}

/// A pairwise transfer of a small mass that lowers `Φ`, if one exists.
fn improving_transfer(phi: &dyn Fn(&[f64]) -> f64, x: &[f64], r: f64) -> Option<Vec<f64>> {
    let base = phi(x);
    let threshold = 1e-13 * libm::fabs(base).max(1.0);
    let n = x.len();
    let mut y = x.to_vec();
    for i in 0..n {
        let h = (1e-4 * r).min(x[i]);
        if h <= 0.0 {
            continue;
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            y[i] = x[i] - h;
            y[j] = x[j] + h;
            if phi(&y) < base - threshold {
                return Some(y);
            }
            y[i] = x[i];
            y[j] = x[j];
        }
    }
    None
}
