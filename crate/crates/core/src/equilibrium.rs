//! Equilibrium and δ-strong equilibrium checks, the fixed-point map from the
//! existence argument, and discrete best-response dynamics.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::NbgError;
use crate::game::{Game, MassDistribution};
use crate::scalar::{max_of, min_of, Scalar};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumReport<S> {
    pub is_equilibrium: bool,
    /// `max(0, max_{i charged, j} C_i − C_j)`.
    pub worst_gap: S,
    pub costs: Vec<S>,
    /// Shared cost of the charged vertices, when they agree within the tolerance.
    pub common_cost: Option<S>,
}

/// Checks `x_i > 0 ⇒ C_i(x) ≤ C_j(x)` for all `j`, up to `tol`.
pub fn verify_equilibrium<S: Scalar>(game: &Game<S>, x: &MassDistribution<S>, tol: &S) -> Result<EquilibriumReport<S>> {
    let costs = game.cost_vector(x)?;
    Ok(report_from_costs(x, costs, tol))
}

pub(crate) fn report_from_costs<S: Scalar>(x: &MassDistribution<S>, costs: Vec<S>, tol: &S) -> EquilibriumReport<S> {
    let min_all = costs.iter().cloned().fold(costs[0].clone(), min_of);
    let charged: Vec<&S> = (0..x.n()).filter(|&i| x.is_charged(i)).map(|i| &costs[i]).collect();
    let (worst_gap, common_cost) = if charged.is_empty() {
        (S::zero(), None)
    } else {
        let hi = charged.iter().map(|c| (*c).clone()).fold(charged[0].clone(), max_of);
        let lo = charged.iter().map(|c| (*c).clone()).fold(charged[0].clone(), min_of);
        let gap = max_of(hi.clone() - min_all, S::zero());
        let common = (hi.clone() - lo <= *tol).then_some(hi);
        (gap, common)
    };
    EquilibriumReport { is_equilibrium: worst_gap <= *tol, worst_gap, costs, common_cost }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StrongVerdict<S> {
    DeltaStrong,
    /// Moving `epsilon` from `from` to `to` lowers the mover's cost.
    Refuted { from: usize, to: usize, epsilon: S },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrongnessCertificate<S> {
    pub delta: S,
    pub verdict: StrongVerdict<S>,
    /// False when the verdict comes from sampling `ε` (non-affine games).
    pub exact: bool,
}

impl<S> StrongnessCertificate<S> {
    pub fn is_strong(&self) -> bool {
        matches!(self.verdict, StrongVerdict::DeltaStrong)
    }
}

/// Number of interior `ε` samples used for non-affine games.
const STRONG_GRID: usize = 33;

/// Checks that no mass `0 ≤ ε ≤ δ` on a charged vertex `i` can lower its cost
/// by moving to `j`, i.e. `C_i(x) ≤ C_j(x − ε e_i + ε e_j) + τ_eq`.
///
/// For affine games the right-hand side is affine in `ε`, so the two
/// endpoints decide; otherwise a grid is sampled and `exact` is false.
pub fn verify_delta_strong<S: Scalar>(
    game: &Game<S>,
    x: &MassDistribution<S>,
    delta: &S,
) -> Result<StrongnessCertificate<S>> {
    if *delta < S::zero() {
        return Err(NbgError::InvalidParameter("delta must be nonnegative".into()));
    }
    let costs = game.cost_vector(x)?;
    let tol = S::eq_tolerance();
    let affine = game.affine_costs().is_some();
    let n = game.n();
    let refute = |from, to, epsilon| {
        Ok(StrongnessCertificate {
            delta: delta.clone(),
            verdict: StrongVerdict::Refuted { from, to, epsilon },
            exact: affine,
        })
    };
    let mut moved = x.masses().to_vec();
    for i in (0..n).filter(|&i| x.is_charged(i)) {
        let reach = min_of(delta.clone(), x.get(i).clone());
        let mut eps_values = vec![reach.clone()];
        if !affine {
            for k in 1..STRONG_GRID {
                eps_values.push(reach.clone() * S::from_i64(k as i64) / S::from_i64(STRONG_GRID as i64));
            }
        }
        for j in (0..n).filter(|&j| j != i) {
            if costs[i].clone() > costs[j].clone() + tol.clone() {
                return refute(i, j, S::zero());
            }
            for eps in &eps_values {
                if eps.is_zero() {
                    continue;
                }
                moved[i] = x.get(i).clone() - eps.clone();
                moved[j] = x.get(j).clone() + eps.clone();
                let after = game.cost_at(j, &moved);
                moved[i] = x.get(i).clone();
                moved[j] = x.get(j).clone();
                if costs[i].clone() > after + tol.clone() {
                    return refute(i, j, eps.clone());
                }
            }
        }
    }
    Ok(StrongnessCertificate { delta: delta.clone(), verdict: StrongVerdict::DeltaStrong, exact: affine })
}

/// `F_i(x) = (x_i + r Σ_j g_{i,j}(x)) / (1 + Σ_{i,j} g_{i,j}(x))` with
/// `g_{i,j}(x) = x_j · max(0, C_j(x) − C_i(x))`. Fixed points are exactly
/// the equilibria.
pub fn brouwer_map<S: Scalar>(game: &Game<S>, x: &MassDistribution<S>) -> Result<MassDistribution<S>> {
    let costs = game.cost_vector(x)?;
    let n = game.n();
    let r = game.r().clone();
    let mut row_sums = vec![S::zero(); n];
    let mut total = S::zero();
    for (i, row) in row_sums.iter_mut().enumerate() {
        for j in 0..n {
            let diff = costs[j].clone() - costs[i].clone();
            if diff > S::zero() {
                let g = x.get(j).clone() * diff;
                *row = row.clone() + g.clone();
                total = total + g;
            }
        }
    }
    let denom = S::one() + total;
    let masses = (0..n)
        .map(|i| (x.get(i).clone() + r.clone() * row_sums[i].clone()) / denom.clone())
        .collect();
    MassDistribution::new(masses, r)
}

#[derive(Clone, Debug)]
pub struct DynamicsResult<S> {
    /// Distributions visited, starting with `x0`.
    pub trace: Vec<MassDistribution<S>>,
    pub iterations: usize,
    pub converged: bool,
    pub report: EquilibriumReport<S>,
}

/// Repeatedly moves `min(step, x_w)` from the charged vertex `w` of highest
/// cost to the vertex of lowest cost. The step halves whenever a move undoes
/// the previous one. Stops when the gap is within `tol` or after
/// `max_iters` moves; non-convergence is reported, not treated as an error.
pub fn best_response_dynamics<S: Scalar>(
    game: &Game<S>,
    x0: &MassDistribution<S>,
    step: &S,
    max_iters: usize,
    tol: &S,
) -> Result<DynamicsResult<S>> {
    if *step <= S::zero() || *step > *game.r() {
        return Err(NbgError::InvalidParameter("step must lie in (0, r]".into()));
    }
    game.check_distribution(x0)?;
    let n = game.n();
    let mut step = step.clone();
    let mut x = x0.clone();
    let mut trace = vec![x.clone()];
    let mut last_move: Option<(usize, usize)> = None;
    let mut iterations = 0;
    loop {
        let report = verify_equilibrium(game, &x, tol)?;
        if report.is_equilibrium || iterations == max_iters {
            let converged = report.is_equilibrium;
            return Ok(DynamicsResult { trace, iterations, converged, report });
        }
        let costs = &report.costs;
        let w = (0..n)
            .filter(|&i| x.is_charged(i))
            .fold(None, |acc: Option<usize>, i| match acc {
                Some(a) if costs[a] >= costs[i] => Some(a),
                _ => Some(i),
            })
            .expect("a distribution with positive total has a charged vertex");
        let b = (0..n).fold(0, |a, i| if costs[i] < costs[a] { i } else { a });
        // Undoing the previous transfer means the step overshot.
        if last_move == Some((b, w)) {
            step = step / S::from_i64(2);
        }
        last_move = Some((w, b));
        let amount = min_of(step.clone(), x.get(w).clone());
        let mut masses = x.masses().to_vec();
        masses[w] = masses[w].clone() - amount.clone();
        masses[b] = masses[b].clone() + amount;
        x = MassDistribution::new(masses, game.r().clone())?;
        trace.push(x.clone());
        iterations += 1;
    }
}
