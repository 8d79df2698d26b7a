//! Small named games used as worked examples and counterexamples.

use alloc::sync::Arc;
use alloc::vec;

use crate::game::{CostEvaluator, Game, InfluenceMatrix, VertexCostFn};
use crate::scalar::Scalar;

/// Two-vertex general game with `C_1 = 4 x_1 x_2`, `C_2 = x_1`, `r = 1`.
/// Equilibria at `x_1 ∈ {0, 3/4, 1}`.
pub fn two_commodity_dilemma<S: Scalar>() -> Game<S> {
    let c1: CostEvaluator<S> = Arc::new(|x: &[S]| S::from_i64(4) * x[0].clone() * x[1].clone());
    let c2: CostEvaluator<S> = Arc::new(|x: &[S]| x[0].clone());
    Game::general(S::one(), vec![c1, c2]).expect("valid game")
}

/// Discontinuous game without equilibrium: `C_1 = 1`, `C_2 = 2` when
/// `x_1 < 1/2` and `0` otherwise.
pub fn discontinuous<S: Scalar>() -> Game<S> {
    let c1: CostEvaluator<S> = Arc::new(|_: &[S]| S::one());
    let c2: CostEvaluator<S> = Arc::new(|x: &[S]| {
        if x[0] < S::from_ratio(1, 2) {
            S::from_i64(2)
        } else {
            S::zero()
        }
    });
    Game::general(S::one(), vec![c1, c2]).expect("valid game")
}

/// Normal linear game on the directed triangle `1 → 2 → 3 → 1`.
pub fn directed_triangle<S: Scalar>(alpha: S) -> Game<S> {
    let influence = InfluenceMatrix::new(3, [(0, 1, alpha.clone()), (1, 2, alpha.clone()), (2, 0, alpha)])
        .expect("valid influences");
    Game::normal_linear(S::one(), influence).expect("valid game")
}

/// Two vertices joined by `α = 1/4`, `f_1 = 1`, `f_2(t) = t + b_2`, `r = 1`.
/// For `b_2 ∈ [1/4, 3/4]` the unique equilibrium has `x_1 = 2 b_2 − 1/2`
/// and cost `11/8 − b_2/2`.
pub fn braess<S: Scalar>(b2: S) -> Game<S> {
    Game::graphical(
        S::one(),
        vec![VertexCostFn::Constant(S::one()), VertexCostFn::Affine { slope: S::one(), intercept: b2 }],
        InfluenceMatrix::symmetric(2, [(0, 1, S::from_ratio(1, 4))]).expect("valid influences"),
    )
    .expect("valid game")
}

/// `f_i(t) = t` on a single edge with coefficient `α`, `r = 1`. For `α > 1`
/// the equilibria are `x_1 ∈ {0, 1/2, 1}` and the price of anarchy is `(1 + α)/2`.
pub fn poa_example<S: Scalar>(alpha: S) -> Game<S> {
    Game::alpha_uniform(2, &[(0, 1)], alpha, S::one()).expect("valid game")
}

/// `f_1 = 1 + 2λ`, `f_2(t) = (2 + λ) t + λ`, `α = 1`, `r = 1`. The only
/// equilibrium costs `2 + 2λ`; the utilitarian optimum is `1 + 2λ` at `x_1 = 1`.
pub fn pos_family<S: Scalar>(lambda: S) -> Game<S> {
    let two = S::from_i64(2);
    Game::graphical(
        S::one(),
        vec![
            VertexCostFn::Constant(S::one() + two.clone() * lambda.clone()),
            VertexCostFn::Affine { slope: two + lambda.clone(), intercept: lambda },
        ],
        InfluenceMatrix::symmetric(2, [(0, 1, S::one())]).expect("valid influences"),
    )
    .expect("valid game")
}

/// `f_1 = 1`, `f_2(t) = 1 + t`, `α = 1`, `r = 1`: `Φ = (3 − x_1²)/2`, with an
/// equilibrium at the maximum `x_1 = 0` and one at the minimum `x_1 = 1`.
pub fn potential_maximum_example<S: Scalar>() -> Game<S> {
    Game::graphical(
        S::one(),
        vec![VertexCostFn::Constant(S::one()), VertexCostFn::Affine { slope: S::one(), intercept: S::one() }],
        InfluenceMatrix::symmetric(2, [(0, 1, S::one())]).expect("valid influences"),
    )
    .expect("valid game")
}
