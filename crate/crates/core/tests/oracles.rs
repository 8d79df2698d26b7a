mod common;

use common::*;
use nbg_core::closed_forms::{
    alpha_one_pattern_violations, bipartite_closed_form, check_rules, cycle_closed_form, make_family,
    oracle_discrepancies, path_closed_form, path_determinant, star_closed_form, GraphFamily,
};
use nbg_core::equilibrium::{verify_delta_strong, verify_equilibrium};
use nbg_core::graph::Digraph;
use nbg_core::kernel::{
    digraph_to_nbg, enumerate_kernels, is_dominating, is_stable, kernel_to_strong_equilibrium,
    strong_supports_match_kernels,
};
use nbg_core::linalg::{determinant, Matrix};
use nbg_core::scalar::q;
use nbg_core::supports::{results_contain, solve_affine_by_supports};
use nbg_core::{MassDistribution, Rational, Scalar};
use rand::Rng;

/// Every grid point of `Δ_1(n)` with step `1/steps`.
fn grid(n: usize, steps: i64) -> Vec<Vec<i64>> {
    match n {
        1 => vec![vec![steps]],
        2 => (0..=steps).map(|a| vec![a, steps - a]).collect(),
        3 => (0..=steps).flat_map(|a| (0..=steps - a).map(move |b| vec![a, b, steps - a - b])).collect(),
        _ => unreachable!(),
    }
}

#[test]
fn grid_scan_agrees_with_support_enumeration() {
    let steps = 1000;
    let mut rng = rng(11);
    for round in 0..12 {
        let n = 1 + round % 3;
        let symmetric = round % 2 == 0;
        let game = random_affine_game(&mut rng, n, symmetric, q(1, 1));
        let fgame = game.to_float();
        let results = solve_affine_by_supports(&game, 16).unwrap();

        // Grid points that are exact equilibria belong to the enumerated set.
        for k in grid(n, steps) {
            let xf: Vec<f64> = k.iter().map(|&v| v as f64 / steps as f64).collect();
            let df = MassDistribution::new(xf, 1.0).unwrap();
            if !verify_equilibrium(&fgame, &df, &1e-6).unwrap().is_equilibrium {
                continue;
            }
            let x: Vec<Rational> = k.iter().map(|&v| q(v, steps)).collect();
            let dx = MassDistribution::new(x.clone(), q(1, 1)).unwrap();
            if verify_equilibrium(&game, &dx, &q(0, 1)).unwrap().is_equilibrium {
                assert!(results_contain(&results, &x), "grid equilibrium {x:?} missing");
            }
        }

        // Every enumerated equilibrium has a grid neighbour that is an
        // equilibrium up to the grid's resolution.
        let lipschitz = 8.0 * n as f64;
        for res in &results {
            for x in res.sample_points(5) {
                let mut k: Vec<i64> = x.iter().map(|v| (v.to_f64() * steps as f64).round() as i64).collect();
                let big = (0..n).max_by_key(|&i| k[i]).unwrap();
                let drift: i64 = k.iter().sum::<i64>() - steps;
                k[big] -= drift;
                let xf: Vec<f64> = k.iter().map(|&v| v as f64 / steps as f64).collect();
                let df = MassDistribution::new(xf, 1.0).unwrap();
                let report = verify_equilibrium(&fgame, &df, &(lipschitz / steps as f64)).unwrap();
                assert!(report.is_equilibrium, "no grid neighbour for {x:?}");
            }
        }
    }
}

#[test]
fn kernels_are_stable_and_dominating() {
    let mut rng = rng(5);
    for _ in 0..40 {
        let n = rng.gen_range(1..=8);
        let arcs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .filter(|_| rng.gen::<f64>() < 0.3)
            .collect();
        let d = Digraph::new(n, arcs).unwrap();
        let kernels = enumerate_kernels(&d).unwrap();
        // Brute force over every subset.
        let mut brute = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if is_stable(&d, &set) && is_dominating(&d, &set) {
                brute.push(set);
            }
        }
        brute.sort_by_key(|s| (s.len(), s.iter().map(|&i| 1u32 << i).sum::<u32>()));
        assert_eq!(kernels, brute);
        for k in &kernels {
            for alpha in [q(3, 2), q(2, 1), q(5, 1)] {
                let r = q(1, 1);
                let g = digraph_to_nbg(&d, alpha, r.clone()).unwrap();
                let x = kernel_to_strong_equilibrium(k, n, r.clone()).unwrap();
                let delta = r / Rational::from_i64(k.len() as i64);
                assert!(verify_delta_strong(&g, &x, &delta).unwrap().is_strong(), "{k:?}");
            }
        }
    }
}

#[test]
fn strong_supports_are_kernels_on_random_digraphs() {
    let mut rng = rng(9);
    for _ in 0..12 {
        let n = rng.gen_range(2..=6);
        let arcs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .filter(|_| rng.gen::<f64>() < 0.35)
            .collect();
        let d = Digraph::new(n, arcs).unwrap();
        let cmp = strong_supports_match_kernels(&d, q(3, 2), q(1, 1), &[q(1, 1000), q(1, 10)]).unwrap();
        assert!(cmp.matches(), "{:?} {:?}", d, cmp.discrepancies);
    }
}

#[test]
fn closed_forms_match_support_enumeration() {
    let half = q(1, 2);
    let one = q(1, 1);
    for n in 1..=8 {
        for alpha in [&half, &one] {
            let c = path_closed_form(n, alpha, &one).unwrap();
            assert_eq!(oracle_discrepancies(&c, 5).unwrap(), vec![], "path {n} {alpha}");
            if n >= 3 {
                let c = cycle_closed_form(n, alpha, &one).unwrap();
                assert_eq!(oracle_discrepancies(&c, 5).unwrap(), vec![], "cycle {n} {alpha}");
            }
        }
    }
    for p in 1..=7usize {
        for qq in 1..=p.min(8 - p) {
            let (pi, qi) = (p as i64, qq as i64);
            let mut alphas = vec![q(0, 1), q(1, 2 * pi), q(1, pi), q(1, qi), q(2, 1)];
            alphas.push(q(pi + qi, 2 * pi * qi));
            for alpha in alphas {
                let c = bipartite_closed_form(p, qq, &alpha, &one).unwrap();
                assert_eq!(oracle_discrepancies(&c, 5).unwrap(), vec![], "K_{p},{qq} {alpha}");
            }
        }
    }
    for n in 2..=8 {
        for alpha in [q(1, 10), q(1, n as i64 - 1), q(1, 2), q(1, 1), q(2, 1)] {
            let c = star_closed_form(n, &alpha, &one).unwrap();
            assert_eq!(oracle_discrepancies(&c, 5).unwrap(), vec![], "star {n} {alpha}");
        }
    }
}

#[test]
fn alpha_one_equilibria_avoid_the_forbidden_pattern() {
    for n in 4..=8 {
        for (family, cyclic) in [(GraphFamily::Path(n), false), (GraphFamily::Cycle(n), true)] {
            let g = make_family(family, q(1, 1), q(1, 1)).unwrap();
            for res in solve_affine_by_supports(&g, 16).unwrap() {
                for x in res.sample_points(5) {
                    assert!(alpha_one_pattern_violations(&x, cyclic).is_empty(), "{family:?} {x:?}");
                }
            }
        }
    }
}

#[test]
fn rules_hold_at_every_equilibrium() {
    let families = [
        GraphFamily::Path(5),
        GraphFamily::Path(6),
        GraphFamily::Cycle(5),
        GraphFamily::Cycle(6),
        GraphFamily::CompleteBipartite(3, 2),
        GraphFamily::Star(5),
    ];
    for family in families {
        for alpha in [q(1, 4), q(1, 3), q(1, 2), q(1, 1), q(3, 2)] {
            let g = make_family(family, alpha.clone(), q(1, 1)).unwrap();
            for res in solve_affine_by_supports(&g, 16).unwrap() {
                for x in res.sample_points(5) {
                    let d = MassDistribution::new(x, q(1, 1)).unwrap();
                    assert_eq!(check_rules(&g, &d).unwrap(), vec![], "{family:?} α={alpha} {d:?}");
                }
            }
        }
    }
}

#[test]
fn path_determinant_matches_generic_elimination() {
    let mut rng = rng(3);
    for n in 2..=12 {
        for _ in 0..20 {
            let alpha = q(rng.gen_range(-20..=40), rng.gen_range(1..=17));
            // Assembled independently: row i is (I + αA)_i | −1, last row 1ᵀ | 0.
            let m = Matrix::from_fn(n + 1, n + 1, |r, c| {
                if r == n {
                    if c == n { q(0, 1) } else { q(1, 1) }
                } else if c == n {
                    q(-1, 1)
                } else if r == c {
                    q(1, 1)
                } else if r.abs_diff(c) == 1 {
                    alpha.clone()
                } else {
                    q(0, 1)
                }
            });
            assert_eq!(path_determinant(n, &alpha).unwrap(), determinant(&m));
        }
    }
}
