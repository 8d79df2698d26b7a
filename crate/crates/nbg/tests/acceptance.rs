//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain binary
//! (`harness = false`) and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nbg::reproduce;
use nbg_core::closed_forms::{
    bipartite_closed_form, conjecture_scan, cycle_closed_form, default_scan_grid, make_family, oracle_discrepancies,
    path_closed_form, path_determinant, star_closed_form, uniform_cost_solve, ClosedForm, GraphFamily, ScanFamily,
    UniformCostKind, UniformCostSolution,
};
use nbg_core::equilibrium::{best_response_dynamics, brouwer_map, verify_delta_strong, verify_equilibrium};
use nbg_core::graph::Digraph;
use nbg_core::instances;
use nbg_core::kernel::{enumerate_kernels, strong_supports_match_kernels};
use nbg_core::metrics::{price_report, social_costs, SearchOptions};
use nbg_core::potential::{minimize_potential, potential, DescentOptions};
use nbg_core::scalar::q;
use nbg_core::supports::{solve_affine_by_supports, SolveResult, DEFAULT_SUPPORT_LIMIT};
use nbg_core::{Game, InfluenceMatrix, MassDistribution, Rational, Scalar, VertexCostFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn over(num: &[i64], den: i64) -> Vec<Rational> {
    num.iter().map(|&v| q(v, den)).collect()
}

fn unique_solution(g: &Game<Rational>) -> Result<(Vec<Rational>, Rational), String> {
    match uniform_cost_solve(g, UniformCostKind::Path).map_err(|e| e.to_string())?.solution {
        UniformCostSolution::Unique { x, cost } => Ok((x, cost)),
        _ => Err("uniform-cost system is not uniquely solvable".into()),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let checks = reproduce::run_section("4.1").map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).map(|c| c.label.clone()).collect();
    ensure(failed.is_empty(), || format!("failing checks: {failed:?}"))?;
    let cases = [
        (6, q(1, 4), over(&[15, 11, 12, 12, 11, 15], 76), q(71, 304)),
        (7, q(1, 3), over(&[13, 8, 10, 9, 10, 8, 13], 71), q(47, 213)),
        (10, q(1, 2), over(&[5, 1, 4, 2, 3, 3, 2, 4, 1, 5], 30), q(11, 60)),
    ];
    for (n, alpha, x, cost) in cases {
        let g = make_family(GraphFamily::Path(n), alpha.clone(), q(1, 1)).map_err(|e| e.to_string())?;
        let (got_x, got_cost) = unique_solution(&g)?;
        ensure(got_x == x && got_cost == cost, || format!("P{n} α={alpha}: got {got_x:?}, cost {got_cost}"))?;
        let dist = MassDistribution::new(x, q(1, 1)).map_err(|e| e.to_string())?;
        let report = verify_equilibrium(&g, &dist, &q(0, 1)).map_err(|e| e.to_string())?;
        ensure(report.is_equilibrium, || format!("P{n} α={alpha}: point does not verify"))?;
    }
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!("{} section checks and 3 exact path solutions in {elapsed:.2?}", checks.len()))
}

type Poly = fn(&Rational) -> Rational;

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let polys: [(usize, Poly); 4] = [
        (2, |a| q(2, 1) - q(2, 1) * a),
        (3, |a| q(3, 1) - q(4, 1) * a),
        (4, |a| q(2, 1) * (a * a + a - q(1, 1)) * (a - q(2, 1))),
        (5, |a| (a + q(1, 1)) * (a - q(1, 1)) * (a * a + q(8, 1) * a - q(5, 1))),
    ];
    let alphas = [q(0, 1), q(1, 5), q(1, 4), q(1, 3), q(1, 2), q(3, 5), q(3, 4), q(1, 1), q(3, 2), q(-7, 3)];
    for (n, poly) in polys {
        for a in &alphas {
            let det = path_determinant(n, a).map_err(|e| e.to_string())?;
            ensure(det == poly(a), || format!("n = {n}, α = {a}: {det} vs {}", poly(a)))?;
        }
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!("40 exact evaluations in {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let mut previous: Option<Rational> = None;
    let mut seen = Vec::new();
    for b2 in [q(1, 4), q(1, 2), q(3, 4)] {
        let g = instances::braess(b2.clone());
        let eqs = solve_affine_by_supports(&g, DEFAULT_SUPPORT_LIMIT).map_err(|e| e.to_string())?;
        ensure(eqs.len() == 1, || format!("b2 = {b2}: {} equilibria", eqs.len()))?;
        let SolveResult::Point(p) = &eqs[0] else { return Err(format!("b2 = {b2}: continuum of equilibria")) };
        let cost = social_costs(&g, &p.x).map_err(|e| e.to_string())?.utilitarian;
        let expected = q(11, 8) - b2.clone() / q(2, 1);
        ensure(cost == expected, || format!("b2 = {b2}: cost {cost}, expected {expected}"))?;
        if let Some(prev) = &previous {
            ensure(&cost < prev, || format!("cost not decreasing at b2 = {b2}"))?;
        }
        seen.push(cost.to_string());
        previous = Some(cost);
    }
    Ok(format!("equilibrium costs {}", seen.join(", ")))
}

fn criterion_4() -> Outcome {
    let mut seen = Vec::new();
    for a in [2i64, 5, 9, 99] {
        let g = instances::poa_example(q(a, 1));
        let report = price_report(&g, DEFAULT_SUPPORT_LIMIT, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let expected = (1.0 + a as f64) / 2.0;
        for (name, ratio) in [("PoA_u", &report.poa_u), ("PoA_e", &report.poa_e)] {
            let v = ratio.finite().ok_or_else(|| format!("α = {a}: {name} not finite"))?.to_f64();
            ensure((v - expected).abs() <= 1e-9, || format!("α = {a}: {name} = {v}, expected {expected}"))?;
        }
        seen.push(format!("{expected}"));
    }
    Ok(format!("PoA = {} for α = 2, 5, 9, 99", seen.join(", ")))
}

fn random_linear_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Game<Rational> {
    let costs = (0..n)
        .map(|_| VertexCostFn::Affine { slope: q(rng.gen_range(1..=8), 4), intercept: q(0, 1) })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < 0.5 {
                edges.push((i, j, q(rng.gen_range(1..=8), 4)));
            }
        }
    }
    Game::graphical(q(1, 1), costs, InfluenceMatrix::symmetric(n, edges).unwrap()).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..20 {
        let n = 1 + k % 5;
        let g = random_linear_symmetric(&mut rng, n);
        let report = price_report(&g, DEFAULT_SUPPORT_LIMIT, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let v = report.pos_u.finite().ok_or_else(|| format!("game {k}: PoS_u not finite"))?.to_f64();
        ensure((v - 1.0).abs() <= 1e-6, || format!("game {k} (n = {n}): PoS_u = {v}"))?;
    }
    for (num, den) in [(1, 100), (1, 10), (1, 2)] {
        let lambda = num as f64 / den as f64;
        let g = instances::pos_family(q(num, den));
        let report = price_report(&g, DEFAULT_SUPPORT_LIMIT, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let v = report.pos_u.finite().ok_or("PoS_u not finite")?.to_f64();
        let expected = (2.0 + 2.0 * lambda) / (1.0 + 2.0 * lambda);
        ensure((v - expected).abs() <= 1e-6, || format!("λ = {lambda}: PoS_u = {v}, expected {expected}"))?;
    }
    Ok("20 random linear games at PoS_u = 1, price-of-stability family matches".into())
}

fn random_digraph(rng: &mut ChaCha8Rng) -> Digraph {
    let n = rng.gen_range(1..=7);
    let p = rng.gen_range(0.15..0.5);
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .filter(|_| rng.gen::<f64>() < p)
        .collect();
    Digraph::new(n, arcs).unwrap()
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let grid = [q(1, 1000), q(1, 10)];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut kernels = 0;
    for k in 0..30 {
        let d = random_digraph(&mut rng);
        let cmp = strong_supports_match_kernels(&d, q(3, 2), q(1, 1), &grid).map_err(|e| e.to_string())?;
        ensure(cmp.matches(), || format!("digraph {k} {d:?}: {:?}", cmp.discrepancies))?;
        kernels += cmp.kernels.len();
    }
    let triangle = Digraph::directed_cycle(3);
    ensure(enumerate_kernels(&triangle).map_err(|e| e.to_string())?.is_empty(), || "3-cycle has a kernel".into())?;
    let cmp = strong_supports_match_kernels(&triangle, q(2, 1), q(1, 1), &grid).map_err(|e| e.to_string())?;
    ensure(cmp.matches() && cmp.strong_supports.is_empty(), || format!("3-cycle: {cmp:?}"))?;
    let g = instances::directed_triangle(q(2, 1));
    let third = MassDistribution::uniform(3, q(1, 1));
    ensure(verify_equilibrium(&g, &third, &q(0, 1)).map_err(|e| e.to_string())?.is_equilibrium, || {
        "uniform point is not an equilibrium".into()
    })?;
    ensure(!verify_delta_strong(&g, &third, &q(1, 10)).map_err(|e| e.to_string())?.is_strong(), || {
        "uniform point is strong".into()
    })?;
    let elapsed = start.elapsed();
    within(Duration::from_secs(30), elapsed)?;
    Ok(format!("31 digraphs, {kernels} kernels, no discrepancy, {elapsed:.2?}"))
}

fn random_polynomial_symmetric(rng: &mut ChaCha8Rng, n: usize) -> (Vec<VertexCostFn<f64>>, InfluenceMatrix<f64>) {
    let d = rng.gen_range(0..=3);
    let costs = (0..n).map(|_| VertexCostFn::Polynomial((0..=d).map(|_| rng.gen::<f64>()).collect())).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < 0.5 {
                edges.push((i, j, 2.0 * rng.gen::<f64>()));
            }
        }
    }
    (costs, InfluenceMatrix::symmetric(n, edges).unwrap())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = 1e-6;
    for k in 0..50 {
        let n = rng.gen_range(1..=6);
        let (costs, influence) = random_polynomial_symmetric(&mut rng, n);
        // Φ at a point off the simplex is the potential of the game with the
        // matching total mass.
        let phi = |y: &[f64]| {
            let total: f64 = y.iter().sum();
            let g = Game::graphical(total, costs.clone(), influence.clone()).unwrap();
            potential(&g, &MassDistribution::new(y.to_vec(), total).unwrap()).unwrap().value
        };
        let g = Game::graphical(1.0, costs.clone(), influence.clone()).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let w: Vec<f64> = (0..n).map(|_| 0.05 + rng.gen::<f64>()).collect();
            let s: f64 = w.iter().sum();
            let x: Vec<f64> = w.iter().map(|v| v / s).collect();
            let p = potential(&g, &MassDistribution::new(x.clone(), 1.0).unwrap()).map_err(|e| e.to_string())?;
            for i in 0..n {
                let mut up = x.clone();
                up[i] += h;
                let mut down = x.clone();
                down[i] -= h;
                let fd = (phi(&up) - phi(&down)) / (2.0 * h);
                let scale = p.gradient[i].abs().max(1.0);
                ensure((fd - p.gradient[i]).abs() <= 1e-5 * scale, || {
                    format!("game {k}, vertex {i}: finite difference {fd} vs gradient {}", p.gradient[i])
                })?;
            }
        }
    }
    let g = instances::potential_maximum_example::<Rational>();
    for k in 0..=10 {
        let x1 = q(k, 10);
        let x = MassDistribution::new(vec![x1.clone(), q(1, 1) - x1.clone()], q(1, 1)).unwrap();
        let value = potential(&g, &x).map_err(|e| e.to_string())?.value;
        let expected = (q(3, 1) - x1.clone() * x1.clone()) / q(2, 1);
        ensure(value == expected, || format!("Φ({x1}) = {value}, expected {expected}"))?;
    }
    let minima = minimize_potential(&g, &DescentOptions::default()).map_err(|e| e.to_string())?;
    let found: Vec<Rational> = minima.iter().map(|m| m.x.get(0).clone()).collect();
    ensure(found == vec![q(1, 1)], || format!("minimizers x1 = {found:?}"))?;
    Ok("500 gradient checks, Φ exact at 11 points, minimizer x1 = 1".into())
}

fn closed_forms() -> Result<Vec<ClosedForm>, String> {
    let one = q(1, 1);
    let mut out = Vec::new();
    for n in 1..=8 {
        for alpha in [q(1, 2), q(1, 1)] {
            out.push(path_closed_form(n, &alpha, &one).map_err(|e| e.to_string())?);
            if n >= 3 {
                out.push(cycle_closed_form(n, &alpha, &one).map_err(|e| e.to_string())?);
            }
        }
    }
    for p in 1..=7usize {
        for qq in 1..=p.min(8 - p) {
            let (pi, qi) = (p as i64, qq as i64);
            // Below, at and above both thresholds 1/p and 1/q, plus α = 0.
            for alpha in [q(0, 1), q(1, 2 * pi), q(1, pi), q(1, qi), q(2, 1), q(pi + qi, 2 * pi * qi)] {
                out.push(bipartite_closed_form(p, qq, &alpha, &one).map_err(|e| e.to_string())?);
            }
        }
    }
    for n in 2..=8 {
        for alpha in [q(1, 10), q(1, n as i64 - 1), q(1, 2), q(1, 1), q(2, 1)] {
            out.push(star_closed_form(n, &alpha, &one).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let forms = closed_forms()?;
    for c in &forms {
        let d = oracle_discrepancies(c, 5).map_err(|e| e.to_string())?;
        ensure(d.is_empty(), || format!("{:?} α = {}: {d:?}", c.family, c.alpha))?;
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(120), elapsed)?;
    Ok(format!("{} closed forms agree with support enumeration, {elapsed:.2?}", forms.len()))
}

fn criterion_9() -> Outcome {
    let mut games: Vec<Game<Rational>> = Vec::new();
    games.extend([q(1, 4), q(1, 2), q(3, 4)].into_iter().map(instances::braess));
    games.extend([2, 5, 9, 99].into_iter().map(|a| instances::poa_example(q(a, 1))));
    games.extend([q(1, 100), q(1, 10), q(1, 2)].into_iter().map(instances::pos_family));
    games.push(instances::potential_maximum_example());
    for c in closed_forms()? {
        games.push(c.game().map_err(|e| e.to_string())?);
    }
    let mut checked = 0;
    for g in &games {
        for res in solve_affine_by_supports(g, DEFAULT_SUPPORT_LIMIT).map_err(|e| e.to_string())? {
            for x in res.sample_points(5) {
                let x = MassDistribution::new(x, g.r().clone()).unwrap();
                if !verify_equilibrium(g, &x, &q(0, 1)).map_err(|e| e.to_string())?.is_equilibrium {
                    continue;
                }
                let y = brouwer_map(g, &x).map_err(|e| e.to_string())?;
                let shift = x.linf_distance(&y).to_f64();
                ensure(shift <= 1e-9, || format!("Brouwer map moves {x:?} by {shift}"))?;
                checked += 1;
            }
        }
    }
    let dilemma = instances::two_commodity_dilemma::<Rational>();
    let mut extra = vec![
        MassDistribution::uniform(3, q(1, 1)),
        MassDistribution::new(vec![q(3, 4), q(1, 4)], q(1, 1)).unwrap(),
        MassDistribution::point(2, 0, q(1, 1)),
        MassDistribution::point(2, 1, q(1, 1)),
    ];
    let triangle = instances::directed_triangle(q(2, 1));
    for (k, x) in extra.drain(..).enumerate() {
        let g = if k == 0 { &triangle } else { &dilemma };
        ensure(verify_equilibrium(g, &x, &q(0, 1)).map_err(|e| e.to_string())?.is_equilibrium, || {
            format!("{x:?} should verify")
        })?;
        let y = brouwer_map(g, &x).map_err(|e| e.to_string())?;
        ensure(x.linf_distance(&y).to_f64() <= 1e-9, || format!("Brouwer map moves {x:?}"))?;
        checked += 1;
    }
    let fg = instances::two_commodity_dilemma::<f64>();
    for (x1, target) in [(0.5, 0.0), (0.8, 1.0)] {
        let x0 = MassDistribution::new(vec![x1, 1.0 - x1], 1.0).unwrap();
        let res = best_response_dynamics(&fg, &x0, &0.01, 10_000, &1e-6).map_err(|e| e.to_string())?;
        let end = *res.trace.last().unwrap().get(0);
        ensure(res.converged && res.iterations <= 10_000 && res.report.worst_gap <= 1e-6, || {
            format!("dynamics from {x1}: converged {}, gap {}", res.converged, res.report.worst_gap)
        })?;
        ensure((end - target).abs() <= 1e-9, || format!("dynamics from {x1} ended at {end}"))?;
    }
    Ok(format!("{checked} equilibria fixed by the Brouwer map, dynamics end at 0 and 1"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let grid = default_scan_grid();
    let mut rows = conjecture_scan(ScanFamily::Path, 2..=12, &grid).map_err(|e| e.to_string())?;
    rows.extend(conjecture_scan(ScanFamily::Cycle, 3..=12, &grid).map_err(|e| e.to_string())?);
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.is_counterexample() || r.determinant == q(0, 1) || !r.unique || !r.nonnegative)
        .map(|r| nbg::cli::scan_record(r).join(","))
        .collect();
    for line in &bad {
        eprintln!("counterexample: {line}");
    }
    ensure(bad.is_empty(), || format!("{} counterexamples", bad.len()))?;
    let elapsed = start.elapsed();
    within(Duration::from_secs(60), elapsed)?;
    Ok(format!("{} (n, α) pairs, no counterexample, {elapsed:.2?}", rows.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("path equilibria, exact", criterion_1),
        ("determinant polynomials", criterion_2),
        ("Braess paradox", criterion_3),
        ("price of anarchy sweep", criterion_4),
        ("price of stability", criterion_5),
        ("kernel correspondence", criterion_6),
        ("potential properties", criterion_7),
        ("closed forms vs support enumeration", criterion_8),
        ("existence machinery", criterion_9),
        ("conjecture scans", criterion_10),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
