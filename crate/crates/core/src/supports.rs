//! Exact equilibrium enumeration for affine games by trying every support.
//!
//! For a support `S` the equilibria with exactly that support solve
//! `C_i(x) = c (i ∈ S)`, `x_j = 0 (j ∉ S)`, `Σ x = r`, and must satisfy
//! `x_S > 0` and `C_j(x) ≥ c` off the support. Singular systems produce
//! affine families instead of points.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::NbgError;
use crate::family::{AffineFamily, Constraint};
use crate::game::{AffineCosts, Game, MassDistribution};
use crate::linalg::{solve, LinearSolution, Matrix};
use crate::scalar::Scalar;
use crate::Result;

/// Default bound on `n` for support enumeration (`2ⁿ` linear systems).
pub const DEFAULT_SUPPORT_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct PointEquilibrium<S> {
    pub x: MassDistribution<S>,
    pub cost: S,
    pub support: Vec<usize>,
}

/// Outcome of an equilibrium solver. An empty result list means "none found
/// by this method".
#[derive(Clone, Debug, PartialEq)]
pub enum SolveResult<S> {
    Point(PointEquilibrium<S>),
    Family(AffineFamily<S>),
}

impl<S: Scalar> SolveResult<S> {
    pub fn support(&self) -> &[usize] {
        match self {
            SolveResult::Point(p) => &p.support,
            SolveResult::Family(f) => &f.support,
        }
    }

    pub fn contains(&self, x: &[S]) -> bool {
        match self {
            SolveResult::Point(p) => {
                let tol = S::mass_tolerance();
                p.x.masses().len() == x.len()
                    && p.x.masses().iter().zip(x).all(|(a, b)| (a.clone() - b.clone()).abs() <= tol)
            }
            SolveResult::Family(f) => f.contains(x),
        }
    }

    /// The point itself, or `count` deterministic samples of the family.
    pub fn sample_points(&self, count: usize) -> Vec<Vec<S>> {
        match self {
            SolveResult::Point(p) => vec![p.x.masses().to_vec()],
            SolveResult::Family(f) => f.sample_points(count),
        }
    }

    /// Lowest and highest common cost over the result. The cost is affine
    /// on a family, so its extremes sit at polytope vertices.
    pub fn cost_range(&self) -> (S, S) {
        match self {
            SolveResult::Point(p) => (p.cost.clone(), p.cost.clone()),
            SolveResult::Family(f) => {
                let costs: Vec<S> = f.vertices().iter().map(|t| f.cost_at(t)).collect();
                let lo = costs.iter().cloned().fold(costs[0].clone(), crate::scalar::min_of);
                let hi = costs.iter().cloned().fold(costs[0].clone(), crate::scalar::max_of);
                (lo, hi)
            }
        }
    }
}

/// True when some result contains `x`.
pub fn results_contain<S: Scalar>(results: &[SolveResult<S>], x: &[S]) -> bool {
    results.iter().any(|r| r.contains(x))
}

/// Every equilibrium of an affine game, grouped by exact support, sorted by
/// support bitmask.
pub fn solve_affine_by_supports<S: Scalar>(game: &Game<S>, n_max: usize) -> Result<Vec<SolveResult<S>>> {
    let costs = game.affine_costs().ok_or(NbgError::NotAffine)?;
    solve_costs_by_supports(&costs, game.r(), n_max)
}

/// Support enumeration on explicit affine cost data.
pub fn solve_costs_by_supports<S: Scalar>(
    costs: &AffineCosts<S>,
    r: &S,
    n_max: usize,
) -> Result<Vec<SolveResult<S>>> {
    let n = costs.n();
    if n > n_max || n >= usize::BITS as usize {
        return Err(NbgError::TooLarge { n, max: n_max });
    }
    let mut out = Vec::new();
    for mask in 1usize..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if let Some(result) = solve_support(costs, r, &support) {
            out.push(result);
        }
    }
    Ok(out)
}

/// Equilibria whose support is exactly `support`.
pub fn solve_support<S: Scalar>(costs: &AffineCosts<S>, r: &S, support: &[usize]) -> Option<SolveResult<S>> {
    let n = costs.n();
    let k = support.len();
    // Unknowns (x_{S_0}, …, x_{S_{k−1}}, c).
    let mut a = Matrix::zeros(k + 1, k + 1);
    let mut b = vec![S::zero(); k + 1];
    for (row, &i) in support.iter().enumerate() {
        for (col, &l) in support.iter().enumerate() {
            a.set(row, col, costs.coeff[i][l].clone());
        }
        a.set(row, k, -S::one());
        b[row] = -costs.intercept[i].clone();
    }
    for col in 0..k {
        a.set(k, col, S::one());
    }
    b[k] = r.clone();

    let embed = |y: &[S]| {
        let mut x = vec![S::zero(); n];
        for (pos, &i) in support.iter().enumerate() {
            x[i] = y[pos].clone();
        }
        x
    };
    let off_support: Vec<usize> = (0..n).filter(|i| !support.contains(i)).collect();
    let threshold = S::charge_threshold();

    match solve(&a, &b) {
        LinearSolution::Inconsistent => None,
        LinearSolution::Unique(y) => {
            let x = embed(&y);
            let c = y[k].clone();
            if support.iter().any(|&i| x[i] <= threshold) {
                return None;
            }
            let all = costs.costs(&x);
            let tol = S::eq_tolerance();
            if off_support.iter().any(|&j| all[j].clone() < c.clone() - tol.clone()) {
                return None;
            }
            let dist = MassDistribution::new(x, r.clone()).ok()?;
            Some(SolveResult::Point(PointEquilibrium { x: dist, cost: c, support: support.to_vec() }))
        }
        LinearSolution::Affine { particular, nullspace } => {
            let base = embed(&particular);
            let directions: Vec<Vec<S>> = nullspace.iter().map(|v| embed(v)).collect();
            let cost_base = particular[k].clone();
            let cost_directions: Vec<S> = nullspace.iter().map(|v| v[k].clone()).collect();
            let mut constraints: Vec<Constraint<S>> = support
                .iter()
                .map(|&i| Constraint {
                    coeffs: directions.iter().map(|d| d[i].clone()).collect(),
                    offset: base[i].clone(),
                })
                .collect();
            // C_j(x(t)) − c(t) ≥ 0 off the support.
            let base_costs = costs.costs(&base);
            for &j in &off_support {
                let coeffs = directions
                    .iter()
                    .zip(&cost_directions)
                    .map(|(d, e)| {
                        let slope = costs.coeff[j]
                            .iter()
                            .zip(d)
                            .fold(S::zero(), |acc, (a, di)| acc + a.clone() * di.clone());
                        slope - e.clone()
                    })
                    .collect();
                constraints.push(Constraint { coeffs, offset: base_costs[j].clone() - cost_base.clone() });
            }
            let family =
                AffineFamily::new(support.to_vec(), base, directions, cost_base, cost_directions, constraints)?;
            let inner = family.point_at(&family.centroid());
            if support.iter().any(|&i| inner[i] <= threshold) {
                return None;
            }
            Some(SolveResult::Family(family))
        }
    }
}
