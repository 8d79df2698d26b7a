//! Social costs, social optima, and prices of anarchy and stability.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::NbgError;
use crate::game::{Game, MassDistribution};
use crate::optimize::{numeric_gradient, projected_descent, random_simplex_points};
use crate::potential::to_distribution;
use crate::scalar::{Rational, Scalar};
use crate::supports::{solve_affine_by_supports, solve_costs_by_supports, SolveResult};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct SocialCostPair<S> {
    /// `(1/r) Σ x_i C_i(x)`.
    pub utilitarian: S,
    /// Largest cost over charged vertices.
    pub egalitarian: S,
}

pub fn social_costs<S: Scalar>(game: &Game<S>, x: &MassDistribution<S>) -> Result<SocialCostPair<S>> {
    let costs = game.cost_vector(x)?;
    Ok(social_costs_from(x.masses(), &costs, game.r()))
}

fn social_costs_from<S: Scalar>(x: &[S], costs: &[S], r: &S) -> SocialCostPair<S> {
    let weighted = x.iter().zip(costs).fold(S::zero(), |acc, (m, c)| acc + m.clone() * c.clone());
    let threshold = S::charge_threshold();
    let egalitarian = x
        .iter()
        .zip(costs)
        .filter(|(m, _)| **m > threshold)
        .map(|(_, c)| c.clone())
        .reduce(crate::scalar::max_of)
        .unwrap_or_else(S::zero);
    SocialCostPair { utilitarian: weighted / r.clone(), egalitarian }
}

fn utilitarian_at<S: Scalar>(game: &Game<S>, x: &[S]) -> S {
    social_costs_from(x, &game.costs_at(x), game.r()).utilitarian
}

fn egalitarian_at<S: Scalar>(game: &Game<S>, x: &[S]) -> S {
    social_costs_from(x, &game.costs_at(x), game.r()).egalitarian
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SocialObjective {
    Utilitarian,
    Egalitarian,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SocialOptimum<S> {
    pub x: MassDistribution<S>,
    pub value: S,
    /// True when the value is the proven minimum; false for search estimates
    /// (an achieved value, hence an upper bound on the minimum).
    pub exact: bool,
}

/// Largest `n` for which the utilitarian optimum of an affine game is found
/// by exact KKT enumeration.
pub const KKT_LIMIT: usize = 12;
/// Largest `n` for which the egalitarian search visits every support.
const EGALITARIAN_SUPPORT_LIMIT: usize = 8;
/// Smooth-max sharpness for the egalitarian search.
const LSE_BETA: f64 = 1e4;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub starts: usize,
    pub seed: u64,
    pub max_iters: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { starts: 20, seed: 0, max_iters: 2000 }
    }
}

/// Minimum of a social cost over `Δ_r(n)`.
///
/// Utilitarian cost of an affine game with `n ≤ 12`: the objective is
/// quadratic and every minimizer is a KKT point, i.e. an equilibrium of the
/// game with marginal costs `b + (A + Aᵀ)x`; those are enumerated exactly and
/// the objective is affine along each KKT family. Otherwise multistart
/// projected descent (plus a line scan when `n = 2`) gives an estimate.
pub fn min_social_cost<S: Scalar>(
    game: &Game<S>,
    which: SocialObjective,
    options: &SearchOptions,
) -> Result<SocialOptimum<S>> {
    match which {
        SocialObjective::Utilitarian => min_utilitarian(game, options),
        SocialObjective::Egalitarian => min_egalitarian(game, options, &[]),
    }
}

fn min_utilitarian<S: Scalar>(game: &Game<S>, options: &SearchOptions) -> Result<SocialOptimum<S>> {
    let n = game.n();
    if let (Some(costs), true) = (game.affine_costs(), n <= KKT_LIMIT) {
        let kkt = solve_costs_by_supports(&costs.marginal(), game.r(), KKT_LIMIT)?;
        let mut best: Option<(Vec<S>, S)> = None;
        for result in &kkt {
            let candidates: Vec<Vec<S>> = match result {
                SolveResult::Point(p) => vec![p.x.masses().to_vec()],
                SolveResult::Family(f) => f.vertices().iter().map(|t| f.point_at(t)).collect(),
            };
            for x in candidates {
                let v = utilitarian_at(game, &x);
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some((x, v));
                }
            }
        }
        let (x, value) = best.ok_or(NbgError::NoEquilibrium)?;
        return Ok(SocialOptimum { x: MassDistribution::new(x, game.r().clone())?, value, exact: true });
    }
    let fgame = game.to_float();
    let r = fgame.r().to_f64();
    let f = |x: &[f64]| utilitarian_at(&fgame, x);
    let grad = |x: &[f64]| numeric_gradient(&f, x, 1e-7);
    let mut candidates = starting_points(n, r, options);
    let all: Vec<usize> = (0..n).collect();
    candidates = candidates
        .into_iter()
        .map(|x0| projected_descent(&f, &grad, &x0, r, &all, options.max_iters).x)
        .collect();
    if n == 2 {
        candidates.extend(line_scan(r));
    }
    Ok(best_of(game, candidates, SocialObjective::Utilitarian))
}

fn starting_points(n: usize, r: f64, options: &SearchOptions) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut v = vec![0.0; n];
            v[i] = r;
            v
        })
        .collect();
    pts.push(vec![r / n as f64; n]);
    pts.extend(random_simplex_points(n, r, options.starts, options.seed));
    pts
}

fn line_scan(r: f64) -> Vec<Vec<f64>> {
    (0..=10_000).map(|k| {
        let x1 = r * k as f64 / 10_000.0;
        vec![x1, r - x1]
    }).collect()
}

/// Evaluates candidates exactly in `S` and keeps the best.
fn best_of<S: Scalar>(game: &Game<S>, candidates: Vec<Vec<f64>>, which: SocialObjective) -> SocialOptimum<S> {
    let mut best: Option<(MassDistribution<S>, S)> = None;
    for c in candidates {
        let x = to_distribution(&c, game.r());
        let v = match which {
            SocialObjective::Utilitarian => utilitarian_at(game, x.masses()),
            SocialObjective::Egalitarian => egalitarian_at(game, x.masses()),
        };
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((x, v));
        }
    }
    let (x, value) = best.expect("at least one candidate");
    SocialOptimum { x, value, exact: false }
}

/// Egalitarian minimum estimate. The minimum over `Δ_r(n)` equals the
/// minimum over supports `S` of `min_{x ∈ Δ_S} max_{i∈S} C_i(x)`; each face
/// is searched with a log-sum-exp smoothing of the max, and every candidate
/// is re-evaluated exactly. `extra` candidates (e.g. known equilibria) are
/// included as well.
fn min_egalitarian<S: Scalar>(game: &Game<S>, options: &SearchOptions, extra: &[Vec<S>]) -> Result<SocialOptimum<S>> {
    let n = game.n();
    let fgame = game.to_float();
    let r = fgame.r().to_f64();
    let supports: Vec<Vec<usize>> = if n <= EGALITARIAN_SUPPORT_LIMIT {
        (1usize..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
    } else {
        let mut s: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        s.push((0..n).collect());
        s
    };
    let mut candidates: Vec<Vec<f64>> = starting_points(n, r, options);
    for support in &supports {
        let smooth = |x: &[f64]| {
            let c = fgame.costs_at(x);
            let m = support.iter().map(|&i| c[i]).fold(f64::NEG_INFINITY, f64::max);
            let s: f64 = support.iter().map(|&i| libm::exp(LSE_BETA * (c[i] - m))).sum();
            m + libm::log(s) / LSE_BETA
        };
        let grad = |x: &[f64]| numeric_gradient(&smooth, x, 1e-8);
        let mut x0 = vec![0.0; n];
        for &i in support {
            x0[i] = r / support.len() as f64;
        }
        let out = projected_descent(&smooth, &grad, &x0, r, support, options.max_iters / 4);
        candidates.push(out.x);
    }
    if n == 2 {
        candidates.extend(line_scan(r));
    }
    let mut best = best_of(game, candidates, SocialObjective::Egalitarian);
    for x in extra {
        let v = egalitarian_at(game, x);
        if v < best.value {
            best = SocialOptimum { x: MassDistribution::new(x.clone(), game.r().clone())?, value: v, exact: false };
        }
    }
    Ok(best)
}

/// A ratio of social costs.
#[derive(Clone, Debug, PartialEq)]
pub enum PriceRatio<S> {
    Finite(S),
    /// Positive numerator over a zero optimum.
    Unbounded,
    /// Zero over zero.
    Undefined,
}

impl<S: Scalar> PriceRatio<S> {
    fn of(num: &S, den: &S) -> Self {
        if den.is_zero() || (!S::EXACT && *den <= S::pivot_tolerance()) {
            if num.is_zero() {
                PriceRatio::Undefined
            } else {
                PriceRatio::Unbounded
            }
        } else {
            PriceRatio::Finite(num.clone() / den.clone())
        }
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            PriceRatio::Finite(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PriceReport<S> {
    pub poa_u: PriceRatio<S>,
    pub poa_e: PriceRatio<S>,
    pub pos_u: PriceRatio<S>,
    pub pos_e: PriceRatio<S>,
    pub worst_equilibrium_cost: S,
    pub best_equilibrium_cost: S,
    pub equilibria: Vec<SolveResult<S>>,
    pub optimum_u: SocialOptimum<S>,
    pub optimum_e: SocialOptimum<S>,
}

impl<S> PriceReport<S> {
    /// Exact when the equilibrium enumeration (always exact) is paired with
    /// an exact optimum.
    pub fn exact_u(&self) -> bool {
        self.optimum_u.exact
    }

    pub fn exact_e(&self) -> bool {
        self.optimum_e.exact
    }
}

/// Prices of anarchy and stability of an affine game. At an equilibrium both
/// social costs equal the common cost, which is affine along a family, so
/// family extremes are read off its vertices.
pub fn price_report<S: Scalar>(game: &Game<S>, n_max: usize, options: &SearchOptions) -> Result<PriceReport<S>> {
    let equilibria = solve_affine_by_supports(game, n_max)?;
    if equilibria.is_empty() {
        return Err(NbgError::NoEquilibrium);
    }
    let ranges: Vec<(S, S)> = equilibria.iter().map(SolveResult::cost_range).collect();
    let best = ranges.iter().map(|r| r.0.clone()).reduce(crate::scalar::min_of).expect("nonempty");
    let worst = ranges.iter().map(|r| r.1.clone()).reduce(crate::scalar::max_of).expect("nonempty");
    let optimum_u = min_utilitarian(game, options)?;
    let mut extra: Vec<Vec<S>> = equilibria.iter().flat_map(|e| e.sample_points(5)).collect();
    extra.push(optimum_u.x.masses().to_vec());
    let optimum_e = min_egalitarian(game, options, &extra)?;
    Ok(PriceReport {
        poa_u: PriceRatio::of(&worst, &optimum_u.value),
        poa_e: PriceRatio::of(&worst, &optimum_e.value),
        pos_u: PriceRatio::of(&best, &optimum_u.value),
        pos_e: PriceRatio::of(&best, &optimum_e.value),
        worst_equilibrium_cost: worst,
        best_equilibrium_cost: best,
        equilibria,
        optimum_u,
        optimum_e,
    })
}

/// `γ = 1/(d + 1)`: `∫₀ˣ f ≥ γ x f(x)` for nonnegative polynomials of degree
/// `≤ d`, so both prices of stability are at most `1/γ = d + 1`. For `d = 0`
/// this gives 1 directly rather than clamping `γ` to `1/2`.
pub fn gamma_for_class(max_degree: i64) -> Result<Rational> {
    if max_degree < 0 {
        return Err(NbgError::InvalidParameter("degree must be nonnegative".into()));
    }
    Ok(Rational::from_ratio(1, max_degree + 1))
}
