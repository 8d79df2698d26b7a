#![allow(dead_code)]

use nbg_core::scalar::q;
use nbg_core::{Game, InfluenceMatrix, MassDistribution, Rational, VertexCostFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Undirected edges `(i, j)`, `i < j`, each present with probability `p`.
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                out.push((i, j));
            }
        }
    }
    out
}

/// Dense influence matrix `a[i][j] = α_{i,j}` with entries `k/4`, `k ∈ 1..=8`.
pub fn random_dense_influence(rng: &mut ChaCha8Rng, n: usize, symmetric: bool) -> Vec<Vec<Rational>> {
    let mut a = vec![vec![q(0, 1); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || (symmetric && j < i) {
                continue;
            }
            if rng.gen::<f64>() < 0.5 {
                let v = q(rng.gen_range(1..=8), 4);
                a[i][j] = v.clone();
                if symmetric {
                    a[j][i] = v;
                }
            }
        }
    }
    a
}

pub fn influence_from_dense(a: &[Vec<Rational>]) -> InfluenceMatrix<Rational> {
    let n = a.len();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, a[i][j].clone()));
    InfluenceMatrix::new(n, entries).unwrap()
}

/// Affine game with slopes and intercepts in quarters.
pub fn random_affine_game(rng: &mut ChaCha8Rng, n: usize, symmetric: bool, r: Rational) -> Game<Rational> {
    let costs = (0..n)
        .map(|_| VertexCostFn::Affine { slope: q(rng.gen_range(0..=6), 4), intercept: q(rng.gen_range(0..=4), 4) })
        .collect();
    let a = random_dense_influence(rng, n, symmetric);
    Game::graphical(r, costs, influence_from_dense(&a)).unwrap()
}

/// Symmetric linear game: `f_i(t) = a_i t`, `a_i > 0`.
pub fn random_linear_symmetric(rng: &mut ChaCha8Rng, n: usize, r: Rational) -> Game<Rational> {
    let costs = (0..n)
        .map(|_| VertexCostFn::Affine { slope: q(rng.gen_range(1..=8), 4), intercept: q(0, 1) })
        .collect();
    let a = random_dense_influence(rng, n, true);
    Game::graphical(r, costs, influence_from_dense(&a)).unwrap()
}

/// Polynomial vertex costs of degree at most `d` with coefficients in
/// `[0, 1)`; returns the coefficient table alongside the game.
pub fn random_polynomial_game(
    rng: &mut ChaCha8Rng,
    n: usize,
    d: usize,
    symmetric: bool,
    r: f64,
) -> (Game<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let coeffs: Vec<Vec<f64>> = (0..n).map(|_| (0..=d).map(|_| rng.gen::<f64>()).collect()).collect();
    let mut dense = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || (symmetric && j < i) {
                continue;
            }
            if rng.gen::<f64>() < 0.5 {
                let v = 2.0 * rng.gen::<f64>();
                dense[i][j] = v;
                if symmetric {
                    dense[j][i] = v;
                }
            }
        }
    }
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, dense[i][j]));
    let influence = InfluenceMatrix::new(n, entries).unwrap();
    let costs = coeffs.iter().map(|c| VertexCostFn::Polynomial(c.clone())).collect();
    (Game::graphical(r, costs, influence).unwrap(), coeffs, dense)
}

/// Uniform random point of `Δ_r(n)`; with probability 1/3 a random
/// coordinate is zeroed first.
pub fn random_point(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<f64> {
    let mut e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    if n > 1 && rng.gen::<f64>() < 1.0 / 3.0 {
        let k = rng.gen_range(0..n);
        e[k] = 0.0;
    }
    let s: f64 = e.iter().sum();
    e.iter().map(|v| r * v / s).collect()
}

/// Random point of `Δ_r(n)` with rational coordinates.
pub fn random_rational_point(rng: &mut ChaCha8Rng, n: usize, r: &Rational) -> MassDistribution<Rational> {
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=10)).collect();
    let total: i64 = w.iter().sum();
    if total == 0 {
        return MassDistribution::uniform(n, r.clone());
    }
    MassDistribution::new(w.iter().map(|&v| q(v, total) * r.clone()).collect(), r.clone()).unwrap()
}

/// Same costs and influences with a different total mass.
pub fn with_total<S: nbg_core::Scalar>(game: &Game<S>, r: S) -> Game<S> {
    Game::graphical(r, game.vertex_costs().unwrap().to_vec(), game.influence().unwrap().clone()).unwrap()
}
