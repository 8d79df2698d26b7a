mod common;

use common::*;
use nbg_core::equilibrium::{brouwer_map, verify_delta_strong, verify_equilibrium};
use nbg_core::metrics::{gamma_for_class, min_social_cost, social_costs, SearchOptions, SocialObjective};
use nbg_core::potential::{minimize_potential, potential, DescentOptions};
use nbg_core::scalar::q;
use nbg_core::supports::solve_affine_by_supports;
use nbg_core::{Game, GameClass, InfluenceMatrix, MassDistribution, Rational, Scalar, VertexCostFn};
use proptest::prelude::*;
use rand::Rng;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dense_evaluator_agrees(seed in any::<u64>(), n in 1usize..8, d in 0usize..4) {
        let mut rng = rng(seed);
        let (game, coeffs, dense) = random_polynomial_game(&mut rng, n, d, false, 1.0);
        let x = random_point(&mut rng, n, 1.0);
        let costs = game.cost_vector(&MassDistribution::new(x.clone(), 1.0).unwrap()).unwrap();
        for i in 0..n {
            let own: f64 = coeffs[i].iter().enumerate().map(|(k, c)| c * x[i].powi(k as i32)).sum();
            let incoming: f64 = (0..n).map(|j| dense[j][i] * x[j]).sum();
            prop_assert!(close(costs[i], own + incoming, 1e-12));
        }
    }

    #[test]
    fn potential_gradient_is_the_cost_vector(seed in any::<u64>(), n in 1usize..=8, d in 0usize..=3) {
        let mut rng = rng(seed);
        let (game, _, _) = random_polynomial_game(&mut rng, n, d, true, 1.0);
        let h = 1e-6;
        for x in nbg_core::optimize::random_simplex_points(n, 1.0, 10, seed) {
            let dist = MassDistribution::new(x.clone(), 1.0).unwrap();
            let p = potential(&game, &dist).unwrap();
            for i in 0..n {
                let shifted = |s: f64| {
                    let mut y = x.clone();
                    y[i] += s;
                    let g = with_total(&game, 1.0 + s);
                    potential(&g, &MassDistribution::new(y, 1.0 + s).unwrap()).unwrap().value
                };
                let fd = (shifted(h) - shifted(-h)) / (2.0 * h);
                prop_assert!(close(fd, p.gradient[i], 1e-5), "{fd} vs {}", p.gradient[i]);
            }
        }
    }

    #[test]
    fn sandwich(seed in any::<u64>(), n in 1usize..=6, d in 1usize..=3) {
        let mut rng = rng(seed);
        let (game, _, _) = random_polynomial_game(&mut rng, n, d, true, 1.0);
        let gamma = gamma_for_class(d as i64).unwrap().to_f64();
        for _ in 0..10 {
            let x = MassDistribution::new(random_point(&mut rng, n, 1.0), 1.0).unwrap();
            let phi = potential(&game, &x).unwrap().value;
            let cu = social_costs(&game, &x).unwrap().utilitarian;
            prop_assert!(gamma * cu <= phi + 1e-12);
            prop_assert!(phi <= cu + 1e-12);
        }
    }

    #[test]
    fn linear_homogeneity(seed in any::<u64>(), n in 1usize..=6, s_num in 1i64..=9, s_den in 1i64..=4) {
        let mut rng = rng(seed);
        let r = q(rng.gen_range(1..=4), 2);
        let game = random_linear_symmetric(&mut rng, n, r.clone());
        let x = random_rational_point(&mut rng, n, &r);
        let s = q(s_num, s_den);
        let scaled_game = with_total(&game, r * s.clone());
        let scaled = MassDistribution::new(
            x.masses().iter().map(|v| v.clone() * s.clone()).collect(),
            scaled_game.r().clone(),
        ).unwrap();
        let a = game.cost_vector(&x).unwrap();
        let b = scaled_game.cost_vector(&scaled).unwrap();
        prop_assert_eq!(b, a.into_iter().map(|v| v * s.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn linear_utilitarian_cost_is_twice_the_potential(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let r = q(rng.gen_range(1..=6), 3);
        let game = random_linear_symmetric(&mut rng, n, r.clone());
        let x = random_rational_point(&mut rng, n, &r);
        let cu = social_costs(&game, &x).unwrap().utilitarian;
        prop_assert_eq!(cu * r, potential(&game, &x).unwrap().value * q(2, 1));
    }

    #[test]
    fn supports_outputs_are_fixed_equilibria(seed in any::<u64>(), n in 1usize..=5, symmetric in any::<bool>()) {
        let mut rng = rng(seed);
        let game = random_affine_game(&mut rng, n, symmetric, q(1, 1));
        let results = solve_affine_by_supports(&game, 16).unwrap();
        prop_assert!(!results.is_empty());
        for res in &results {
            for x in res.sample_points(5) {
                let dist = MassDistribution::new(x, q(1, 1)).unwrap();
                prop_assert!(verify_equilibrium(&game, &dist, &q(0, 1)).unwrap().is_equilibrium);
                prop_assert_eq!(&brouwer_map(&game, &dist).unwrap(), &dist);
                let sc = social_costs(&game, &dist).unwrap();
                prop_assert_eq!(sc.utilitarian, sc.egalitarian);
            }
        }
    }

    #[test]
    fn delta_strength_is_monotone(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = rng(seed);
        let symmetric: bool = rng.gen();
        let game = random_affine_game(&mut rng, n, symmetric, q(1, 1));
        let grid = [q(1, 100), q(1, 10), q(1, 4), q(1, 2), q(1, 1)];
        let mut points: Vec<MassDistribution<Rational>> = solve_affine_by_supports(&game, 16)
            .unwrap()
            .iter()
            .flat_map(|r| r.sample_points(3))
            .map(|x| MassDistribution::new(x, q(1, 1)).unwrap())
            .collect();
        points.push(random_rational_point(&mut rng, n, &q(1, 1)));
        for x in &points {
            let strong: Vec<bool> =
                grid.iter().map(|d| verify_delta_strong(&game, x, d).unwrap().is_strong()).collect();
            for k in 1..grid.len() {
                prop_assert!(!strong[k] || strong[k - 1], "{:?} at {:?}", strong, x);
            }
        }
    }

    #[test]
    fn classification_is_monotone(seed in any::<u64>(), n in 1usize..=5, style in 0usize..5) {
        let mut rng = rng(seed);
        let costs: Vec<VertexCostFn<Rational>> = (0..n)
            .map(|_| match style {
                0 => VertexCostFn::Polynomial(vec![q(rng.gen_range(0..3), 2), q(1, 1), q(rng.gen_range(0..2), 1)]),
                1 => VertexCostFn::Affine { slope: q(rng.gen_range(0..3), 2), intercept: q(rng.gen_range(0..3), 2) },
                2 => VertexCostFn::Affine { slope: q(rng.gen_range(1..4), 2), intercept: q(0, 1) },
                _ => VertexCostFn::identity(),
            })
            .collect();
        let alpha = q(rng.gen_range(1..4), 3);
        let symmetric: bool = rng.gen();
        let a = random_dense_influence(&mut rng, n, symmetric);
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| {
            let v = if style == 4 && !a[i][j].is_zero() { alpha.clone() } else { a[i][j].clone() };
            (i, j, v)
        });
        let game = Game::graphical(q(1, 1), costs, InfluenceMatrix::new(n, entries).unwrap()).unwrap();
        let class = game.classify().class;
        // Conditions checked from point evaluations only.
        let f = |i: usize, t: i64| game.vertex_costs().unwrap()[i].eval(&q(t, 1));
        let affine = (0..n).all(|i| f(i, 2) - f(i, 1) * q(2, 1) + f(i, 0) == q(0, 1));
        let linear = affine && (0..n).all(|i| f(i, 0).is_zero());
        let normal = linear && (0..n).all(|i| f(i, 1) == q(1, 1));
        let m = game.influence().unwrap();
        let uniform = normal && m.entries().all(|(_, _, v)| *v == m.entries().next().unwrap().2.clone());
        prop_assert!(class >= GameClass::Graphical);
        if class >= GameClass::Affine { prop_assert!(affine); }
        if class >= GameClass::Linear { prop_assert!(linear); }
        if class >= GameClass::Normal { prop_assert!(normal); }
        if class >= GameClass::AlphaUniform { prop_assert!(uniform); }
        // and the ladder is tight
        prop_assert_eq!(class >= GameClass::Affine, affine);
        prop_assert_eq!(class >= GameClass::AlphaUniform, uniform);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn utilitarian_never_exceeds_egalitarian(seed in any::<u64>(), n in 1usize..=6, d in 0usize..=3) {
        let mut rng = rng(seed);
        let symmetric: bool = rng.gen();
        let (game, _, _) = random_polynomial_game(&mut rng, n, d, symmetric, 1.0);
        // 20 cases × 50 points = 1000 pairs.
        for _ in 0..50 {
            let x = MassDistribution::new(random_point(&mut rng, n, 1.0), 1.0).unwrap();
            let sc = social_costs(&game, &x).unwrap();
            prop_assert!(sc.utilitarian <= sc.egalitarian + 1e-12);
            if verify_equilibrium(&game, &x, &1e-9).unwrap().is_equilibrium {
                prop_assert!((sc.utilitarian - sc.egalitarian).abs() <= 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn price_of_stability_is_at_most_inverse_gamma(seed in any::<u64>(), n in 1usize..=5, d in 1usize..=3) {
        let mut rng = rng(seed);
        let (game, _, _) = random_polynomial_game(&mut rng, n, d, true, 1.0);
        let options = DescentOptions { starts: 5, seed, ..DescentOptions::default() };
        let minima = minimize_potential(&game, &options).unwrap();
        prop_assert!(!minima.is_empty());
        let best = minima.iter().min_by(|a, b| a.value.partial_cmp(&b.value).unwrap()).unwrap();
        prop_assert!(verify_equilibrium(&game, &best.x, &1e-7).unwrap().is_equilibrium);
        let eq_cost = social_costs(&game, &best.x).unwrap().utilitarian;
        let opt = min_social_cost(&game, SocialObjective::Utilitarian, &SearchOptions { starts: 5, seed, max_iters: 500 })
            .unwrap();
        let gamma = gamma_for_class(d as i64).unwrap().to_f64();
        prop_assert!(eq_cost <= opt.value / gamma + 1e-7, "{eq_cost} vs {}", opt.value);
    }
}

#[test]
fn multistart_is_deterministic() {
    let mut rng = rng(7);
    let (game, _, _) = random_polynomial_game(&mut rng, 5, 2, true, 1.0);
    let options = DescentOptions { seed: 3, ..DescentOptions::default() };
    let a = minimize_potential(&game, &options).unwrap();
    let b = minimize_potential(&game, &options).unwrap();
    assert_eq!(a, b);
}
