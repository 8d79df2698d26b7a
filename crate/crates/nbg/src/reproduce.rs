//! Recomputes the worked examples section by section and compares each value
//! with the published one.

use std::fmt::Write as _;

use nbg_core::closed_forms::{
    alpha_one_pattern_violations, bipartite_closed_form, check_rules, cycle_closed_form, make_family,
    oracle_discrepancies, path_closed_form, path_determinant, star_closed_form, uniform_cost_solve, ClosedForm,
    GraphFamily, UniformCostKind, UniformCostSolution,
};
use nbg_core::equilibrium::{best_response_dynamics, brouwer_map, verify_delta_strong, verify_equilibrium};
use nbg_core::graph::Digraph;
use nbg_core::kernel::{enumerate_kernels, strong_supports_match_kernels};
use nbg_core::metrics::{gamma_for_class, price_report, social_costs, SearchOptions};
use nbg_core::potential::{minimize_potential, potential, DescentOptions};
use nbg_core::scalar::q;
use nbg_core::supports::{solve_affine_by_supports, SolveResult, DEFAULT_SUPPORT_LIMIT};
use nbg_core::{instances, Game, GameClass, MassDistribution, QSqrt5, Rational, Scalar};

use crate::num::{fmt_f64, fmt_plain, fmt_scalar};

/// Sections with checks, in document order.
pub const SECTIONS: &[&str] = &["2.1", "3.3", "3.4", "3.5", "3.8", "3.9", "3.10", "4.1", "4.2", "4.3"];

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub section: &'static str,
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, thiserror::Error)]
#[error("unknown section {0:?}; known sections: {known}", known = SECTIONS.join(", "))]
pub struct UnknownSection(pub String);

struct Sec {
    section: &'static str,
    checks: Vec<Check>,
}

fn fmt_vec<S: Scalar>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_plain).collect();
    format!("({})", parts.join(", "))
}

impl Sec {
    fn push(&mut self, label: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, pass: bool) {
        self.checks.push(Check {
            section: self.section,
            label: label.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        });
    }

    fn eq<S: Scalar>(&mut self, label: impl Into<String>, expected: &S, computed: &S) {
        self.push(label, fmt_scalar(expected), fmt_scalar(computed), expected == computed);
    }

    fn eq_vec<S: Scalar>(&mut self, label: impl Into<String>, expected: &[S], computed: &[S]) {
        self.push(label, fmt_vec(expected), fmt_vec(computed), expected == computed);
    }

    fn close(&mut self, label: impl Into<String>, expected: f64, computed: f64, tol: f64) {
        self.push(label, fmt_f64(expected), fmt_f64(computed), (expected - computed).abs() <= tol);
    }

    fn holds(&mut self, label: impl Into<String>, expected: &str, computed: impl Into<String>, pass: bool) {
        self.push(label, expected, computed, pass);
    }
}

fn r1() -> Rational {
    q(1, 1)
}

fn dist(x: Vec<Rational>) -> nbg_core::Result<MassDistribution<Rational>> {
    MassDistribution::from_masses(x)
}

fn over(num: &[i64], den: i64) -> Vec<Rational> {
    num.iter().map(|&v| q(v, den)).collect()
}

fn points<S: Scalar>(results: &[SolveResult<S>]) -> Vec<Vec<S>> {
    results
        .iter()
        .filter_map(|r| match r {
            SolveResult::Point(p) => Some(p.x.masses().to_vec()),
            SolveResult::Family(_) => None,
        })
        .collect()
}

fn describe<S: Scalar>(results: &[SolveResult<S>]) -> String {
    let parts: Vec<String> = results
        .iter()
        .map(|r| match r {
            SolveResult::Point(p) => fmt_vec(p.x.masses()),
            SolveResult::Family(f) => format!("family of dimension {} on {:?}", f.dimension(), f.support),
        })
        .collect();
    parts.join("; ")
}

/// Runs one section. Computation errors are reported as failing checks.
pub fn run_section(section: &str) -> Result<Vec<Check>, UnknownSection> {
    let Some(&name) = SECTIONS.iter().find(|s| **s == section) else {
        return Err(UnknownSection(section.to_string()));
    };
    let mut sec = Sec { section: name, checks: Vec::new() };
    let outcome = match name {
        "2.1" => dilemma(&mut sec),
        "3.3" => no_equilibrium(&mut sec),
        "3.4" => kernels(&mut sec),
        "3.5" => potential_example(&mut sec),
        "3.8" => braess(&mut sec),
        "3.9" => anarchy(&mut sec),
        "3.10" => stability(&mut sec),
        "4.1" => paths(&mut sec),
        "4.2" => cycles(&mut sec),
        "4.3" => bipartite(&mut sec),
        _ => unreachable!(),
    };
    if let Err(e) = outcome {
        sec.holds("section completed", "no error", format!("error: {e}"), false);
    }
    Ok(sec.checks)
}

pub fn run_all() -> Vec<Check> {
    SECTIONS.iter().flat_map(|s| run_section(s).expect("known section")).collect()
}

pub fn render(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{verdict} [{}] {}: expected {}, computed {}", c.section, c.label, c.expected, c.computed);
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(out, "{} checks, {} passed, {} failed", checks.len(), checks.len() - failed, failed);
    out
}

fn dilemma(s: &mut Sec) -> nbg_core::Result<()> {
    let g = instances::two_commodity_dilemma::<Rational>();
    s.holds("class", "general", g.classify().label(), g.classify().class == GameClass::General);
    let x = dist(vec![q(3, 4), q(1, 4)])?;
    s.eq_vec("costs at (3/4, 1/4)", &[q(3, 4), q(3, 4)], &g.cost_vector(&x)?);
    for x1 in [q(0, 1), q(3, 4), q(1, 1)] {
        let x = dist(vec![x1.clone(), r1() - x1.clone()])?;
        let rep = verify_equilibrium(&g, &x, &q(0, 1))?;
        s.holds(format!("x1 = {x1} is an equilibrium"), "true", rep.is_equilibrium.to_string(), rep.is_equilibrium);
        let fixed = brouwer_map(&g, &x)? == x;
        s.holds(format!("x1 = {x1} is a fixed point"), "true", fixed.to_string(), fixed);
    }
    let half = dist(vec![q(1, 2), q(1, 2)])?;
    let rep = verify_equilibrium(&g, &half, &q(0, 1))?;
    s.holds("x1 = 1/2 is not an equilibrium", "false", rep.is_equilibrium.to_string(), !rep.is_equilibrium);
    s.eq_vec("costs at (1/2, 1/2)", &[q(1, 1), q(1, 2)], &rep.costs);

    let gf = instances::two_commodity_dilemma::<f64>();
    for (start, end) in [(0.5, 0.0), (0.8, 1.0)] {
        let x0 = MassDistribution::new(vec![start, 1.0 - start], 1.0)?;
        let res = best_response_dynamics(&gf, &x0, &0.01, 10_000, &1e-6)?;
        let last = res.trace.last().expect("trace starts with x0").get(0);
        s.close(format!("dynamics from x1 = {start} ends at x1"), end, *last, 1e-6);
        s.holds(
            format!("dynamics from x1 = {start} converges within 10000 moves"),
            "gap ≤ 1e-6",
            format!("{} moves, gap {}", res.iterations, fmt_f64(res.report.worst_gap)),
            res.converged,
        );
    }
    Ok(())
}

fn no_equilibrium(s: &mut Sec) -> nbg_core::Result<()> {
    let g = instances::discontinuous::<Rational>();
    let steps = 1000;
    let mut found = Vec::new();
    for k in 0..=steps {
        let x = dist(vec![q(k, steps), q(steps - k, steps)])?;
        if verify_equilibrium(&g, &x, &q(0, 1))?.is_equilibrium {
            found.push(k);
        }
    }
    s.holds("equilibria on the 1/1000 grid", "none", format!("{} found", found.len()), found.is_empty());
    let x = dist(vec![q(1, 2), q(1, 2)])?;
    s.eq_vec("costs at x1 = 1/2", &[q(1, 1), q(0, 1)], &g.cost_vector(&x)?);
    Ok(())
}

fn kernels(s: &mut Sec) -> nbg_core::Result<()> {
    let alpha = q(2, 1);
    let g = instances::directed_triangle(alpha.clone());
    let d = Digraph::directed_cycle(3);
    let k = enumerate_kernels(&d)?;
    s.holds("kernels of the directed triangle", "none", format!("{k:?}"), k.is_empty());
    let x = MassDistribution::uniform(3, r1());
    let rep = verify_equilibrium(&g, &x, &q(0, 1))?;
    s.holds("(1/3, 1/3, 1/3) is an equilibrium", "true", rep.is_equilibrium.to_string(), rep.is_equilibrium);
    for delta in [q(1, 1000), q(1, 10), q(1, 3)] {
        let strong = verify_delta_strong(&g, &x, &delta)?.is_strong();
        s.holds(format!("(1/3, 1/3, 1/3) is {delta}-strong"), "false", strong.to_string(), !strong);
    }
    let cmp = strong_supports_match_kernels(&d, alpha.clone(), r1(), &[q(1, 1000), q(1, 10)])?;
    s.holds(
        "strong equilibria of the triangle game",
        "none",
        format!("{:?}", cmp.strong_supports),
        cmp.strong_supports.is_empty() && cmp.matches(),
    );
    // Kernels and strong supports on a few more digraphs.
    let others = [
        ("directed 4-cycle", Digraph::directed_cycle(4)),
        ("transitive triangle", Digraph::new(3, [(0, 1), (1, 2), (0, 2)])?),
        ("directed 2-path plus isolated", Digraph::new(4, [(0, 1), (1, 2)])?),
    ];
    for (name, d) in others {
        let cmp = strong_supports_match_kernels(&d, q(3, 2), r1(), &[q(1, 1000), q(1, 10)])?;
        s.holds(
            format!("{name}: strong supports are the kernels"),
            &format!("{:?}", plus_one(&cmp.kernels)),
            format!("{:?}", plus_one(&cmp.strong_supports)),
            cmp.matches(),
        );
    }
    Ok(())
}

fn plus_one(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|k| k.iter().map(|i| i + 1).collect()).collect()
}

fn potential_example(s: &mut Sec) -> nbg_core::Result<()> {
    let g = instances::potential_maximum_example::<Rational>();
    for k in 0..=10 {
        let x1 = q(k, 10);
        let x = dist(vec![x1.clone(), r1() - x1.clone()])?;
        let expected = (q(3, 1) - x1.clone() * x1.clone()) / q(2, 1);
        s.eq(format!("Φ at x1 = {x1}"), &expected, &potential(&g, &x)?.value);
    }
    let eqs = solve_affine_by_supports(&g, DEFAULT_SUPPORT_LIMIT)?;
    let mut x1s: Vec<Rational> = points(&eqs).iter().map(|p| p[0].clone()).collect();
    x1s.sort();
    s.eq_vec("equilibria x1", &[q(0, 1), q(1, 1)], &x1s);
    let minima = minimize_potential(&g, &DescentOptions::default())?;
    let found: Vec<Rational> = minima.iter().map(|m| m.x.get(0).clone()).collect();
    s.eq_vec("potential minima x1", &[q(1, 1)], &found);
    Ok(())
}

fn braess(s: &mut Sec) -> nbg_core::Result<()> {
    let mut last: Option<Rational> = None;
    for (b2, cost) in [(q(1, 4), q(5, 4)), (q(1, 2), q(9, 8)), (q(3, 4), q(1, 1))] {
        let g = instances::braess(b2.clone());
        let eqs = solve_affine_by_supports(&g, DEFAULT_SUPPORT_LIMIT)?;
        let pts = points(&eqs);
        let x1 = q(2, 1) * b2.clone() - q(1, 2);
        s.eq_vec(format!("b2 = {b2}: unique equilibrium"), &[x1.clone(), r1() - x1], &pts.concat());
        let eq = dist(pts.first().cloned().unwrap_or_else(|| vec![q(1, 2), q(1, 2)]))?;
        let sc = social_costs(&g, &eq)?;
        s.eq(format!("b2 = {b2}: utilitarian cost"), &cost, &sc.utilitarian);
        s.eq(format!("b2 = {b2}: egalitarian cost"), &cost, &sc.egalitarian);
        if let Some(prev) = &last {
            let dec = sc.utilitarian < *prev;
            s.holds(format!("cost decreases at b2 = {b2}"), "true", dec.to_string(), dec);
        }
        last = Some(sc.utilitarian);
    }
    Ok(())
}

fn anarchy(s: &mut Sec) -> nbg_core::Result<()> {
    for a in [2, 5, 9, 99] {
        let alpha = q(a, 1);
        let g = instances::poa_example(alpha.clone());
        let report = price_report(&g, DEFAULT_SUPPORT_LIMIT, &SearchOptions::default())?;
        let mut pts: Vec<Rational> = points(&report.equilibria).iter().map(|p| p[0].clone()).collect();
        pts.sort();
        s.eq_vec(format!("α = {a}: equilibria x1"), &[q(0, 1), q(1, 2), q(1, 1)], &pts);
        let expected = (r1() + alpha) / q(2, 1);
        match report.poa_u.finite() {
            Some(v) => s.eq(format!("α = {a}: PoA_u"), &expected, v),
            None => s.holds(format!("α = {a}: PoA_u"), &expected.to_string(), "not finite", false),
        }
        match report.poa_e.finite() {
            Some(v) => s.eq(format!("α = {a}: PoA_e"), &expected, v),
            None => s.holds(format!("α = {a}: PoA_e"), &expected.to_string(), "not finite", false),
        }
    }
    Ok(())
}

fn stability(s: &mut Sec) -> nbg_core::Result<()> {
    for (n, d) in [(1, 100), (1, 10), (1, 2)] {
        let lambda = q(n, d);
        let g = instances::pos_family(lambda.clone());
        let report = price_report(&g, DEFAULT_SUPPORT_LIMIT, &SearchOptions::default())?;
        let two = q(2, 1);
        s.eq(format!("λ = {lambda}: equilibrium cost"), &(two.clone() + two.clone() * lambda.clone()), &report.best_equilibrium_cost);
        s.eq(format!("λ = {lambda}: optimum"), &(r1() + two.clone() * lambda.clone()), &report.optimum_u.value);
        let expected = (two.clone() + two.clone() * lambda.clone()) / (r1() + two * lambda.clone());
        match report.pos_u.finite() {
            Some(v) => s.eq(format!("λ = {lambda}: PoS_u"), &expected, v),
            None => s.holds(format!("λ = {lambda}: PoS_u"), &expected.to_string(), "not finite", false),
        }
    }
    // Linear games: both prices of stability are 1.
    let linear: Vec<(&str, Game<Rational>)> = vec![
        ("P4, α = 1/4", make_family(GraphFamily::Path(4), q(1, 4), r1())?),
        ("C5, α = 2", make_family(GraphFamily::Cycle(5), q(2, 1), r1())?),
        ("K_{3,2}, α = 1/10", make_family(GraphFamily::CompleteBipartite(3, 2), q(1, 10), r1())?),
        ("α = 3 edge", instances::poa_example(q(3, 1))),
    ];
    for (name, g) in linear {
        let report = price_report(&g, DEFAULT_SUPPORT_LIMIT, &SearchOptions::default())?;
        match report.pos_u.finite() {
            Some(v) => s.eq(format!("{name}: PoS_u"), &r1(), v),
            None => s.holds(format!("{name}: PoS_u"), "1", "not finite", false),
        }
        match report.pos_e.finite() {
            Some(v) => s.close(format!("{name}: PoS_e"), 1.0, v.to_f64(), 1e-9),
            None => s.holds(format!("{name}: PoS_e"), "1", "not finite", false),
        }
    }
    for (deg, gamma) in [(0, q(1, 1)), (1, q(1, 2)), (2, q(1, 3)), (3, q(1, 4))] {
        s.eq(format!("γ for degree {deg}"), &gamma, &gamma_for_class(deg)?);
    }
    Ok(())
}

fn path_game(n: usize, alpha: Rational) -> nbg_core::Result<Game<Rational>> {
    make_family(GraphFamily::Path(n), alpha, r1())
}

fn unique_uniform(
    s: &mut Sec,
    name: &str,
    game: &Game<Rational>,
    kind: UniformCostKind,
    x: &[Rational],
    cost: &Rational,
) -> nbg_core::Result<()> {
    let sys = uniform_cost_solve(game, kind)?;
    match &sys.solution {
        UniformCostSolution::Unique { x: got, cost: c } => {
            s.eq_vec(format!("{name}: uniform-cost solution"), x, got);
            s.eq(format!("{name}: cost"), cost, c);
        }
        other => s.holds(format!("{name}: uniform-cost solution"), &fmt_vec(x), format!("{other:?}"), false),
    }
    Ok(())
}

fn only_equilibrium(s: &mut Sec, name: &str, game: &Game<Rational>, x: &[Rational]) -> nbg_core::Result<()> {
    let eqs = solve_affine_by_supports(game, DEFAULT_SUPPORT_LIMIT)?;
    let pass = eqs.len() == 1 && points(&eqs) == vec![x.to_vec()];
    s.holds(format!("{name}: only equilibrium"), &fmt_vec(x), describe(&eqs), pass);
    Ok(())
}

fn closed_form_agrees(s: &mut Sec, name: &str, c: &ClosedForm) -> nbg_core::Result<()> {
    let d = oracle_discrepancies(c, 5)?;
    s.holds(format!("{name}: closed form agrees with support enumeration"), "no discrepancy", format!("{d:?}"), d.is_empty());
    Ok(())
}

fn family_of(sys_solution: &UniformCostSolution<Rational>) -> Option<&nbg_core::family::AffineFamily<Rational>> {
    match sys_solution {
        UniformCostSolution::Family { nonnegative: Some(f), .. } => Some(f),
        _ => None,
    }
}

/// Checks that every given point is an equilibrium inside the nonnegative
/// uniform-cost family, and that the family has the stated cost and dimension.
fn uniform_family(
    s: &mut Sec,
    name: &str,
    game: &Game<Rational>,
    kind: UniformCostKind,
    dimension: usize,
    cost: &Rational,
    members: &[Vec<Rational>],
) -> nbg_core::Result<()> {
    let sys = uniform_cost_solve(game, kind)?;
    let Some(f) = family_of(&sys.solution) else {
        s.holds(format!("{name}: uniform-cost family"), "nonnegative family", format!("{:?}", sys.solution), false);
        return Ok(());
    };
    s.holds(format!("{name}: family dimension"), &dimension.to_string(), f.dimension().to_string(), f.dimension() == dimension);
    let costs: Vec<Rational> = f.vertices().iter().map(|t| f.cost_at(t)).collect();
    let flat = costs.iter().all(|c| c == cost);
    s.holds(format!("{name}: cost on the family"), &cost.to_string(), fmt_vec(&costs), flat);
    for x in members {
        let inside = f.contains(x);
        let eq = verify_equilibrium(game, &dist(x.clone())?, &q(0, 1))?.is_equilibrium;
        s.holds(format!("{name}: {} is a uniform equilibrium", fmt_vec(x)), "true", (inside && eq).to_string(), inside && eq);
    }
    Ok(())
}

type Poly = fn(&Rational) -> Rational;

fn paths(s: &mut Sec) -> nbg_core::Result<()> {
    // Determinants of the bordered path system.
    let polys: [(usize, &str, Poly); 4] = [
        (2, "2 − 2α", |a| q(2, 1) - q(2, 1) * a.clone()),
        (3, "3 − 4α", |a| q(3, 1) - q(4, 1) * a.clone()),
        (4, "2(α² + α − 1)(α − 2)", |a| {
            q(2, 1) * (a.clone() * a.clone() + a.clone() - q(1, 1)) * (a.clone() - q(2, 1))
        }),
        (5, "(α + 1)(α − 1)(α² + 8α − 5)", |a| {
            (a.clone() + q(1, 1)) * (a.clone() - q(1, 1)) * (a.clone() * a.clone() + q(8, 1) * a.clone() - q(5, 1))
        }),
    ];
    let alphas = [q(0, 1), q(1, 5), q(1, 4), q(1, 3), q(1, 2), q(3, 5), q(3, 4), q(1, 1), q(3, 2), q(2, 1)];
    for (n, text, poly) in polys {
        let expected: Vec<Rational> = alphas.iter().map(poly).collect();
        let got = alphas.iter().map(|a| path_determinant(n, a)).collect::<nbg_core::Result<Vec<_>>>()?;
        s.eq_vec(format!("det M_{n} = {text} at α ∈ {}", fmt_vec(&alphas)), &expected, &got);
    }

    // Worked examples with α < 1/2.
    let examples: [(usize, Rational, Vec<Rational>, Rational); 4] = [
        (6, q(1, 4), over(&[15, 11, 12, 12, 11, 15], 76), q(71, 304)),
        (6, q(1, 3), over(&[8, 5, 6, 6, 5, 8], 38), q(29, 114)),
        (7, q(1, 4), over(&[41, 30, 33, 32, 33, 30, 41], 240), q(97, 480)),
        (7, q(1, 3), over(&[13, 8, 10, 9, 10, 8, 13], 71), q(47, 213)),
    ];
    for (n, alpha, x, cost) in examples {
        let name = format!("P{n}, α = {alpha}");
        let g = path_game(n, alpha)?;
        unique_uniform(s, &name, &g, UniformCostKind::Path, &x, &cost)?;
        only_equilibrium(s, &name, &g, &x)?;
    }

    // P3: the uniform-cost point and the singular case α = 3/4.
    let a = q(1, 4);
    let denom = q(4, 1) * a.clone() - q(3, 1);
    let x0 = vec![
        (a.clone() - r1()) / denom.clone(),
        (q(2, 1) * a.clone() - r1()) / denom.clone(),
        (a.clone() - r1()) / denom,
    ];
    unique_uniform(s, "P3, α = 1/4", &path_game(3, a)?, UniformCostKind::Path, &x0, &q(7, 16))?;
    let g = path_game(3, q(3, 4))?;
    let sys = uniform_cost_solve(&g, UniformCostKind::Path)?;
    let none = matches!(sys.solution, UniformCostSolution::None);
    s.holds("P3, α = 3/4: uniform-cost system", "no solution", format!("{:?}", sys.solution), none && sys.determinant == q(0, 1));
    only_equilibrium(s, "P3, α = 3/4", &g, &[q(1, 2), q(0, 1), q(1, 2)])?;
    let g = path_game(3, q(2, 1))?;
    let eqs = solve_affine_by_supports(&g, DEFAULT_SUPPORT_LIMIT)?;
    s.holds("P3, α = 2: number of equilibria", "3", eqs.len().to_string(), eqs.len() == 3);

    // P4: the unique solution for generic α and the family at the golden conjugate.
    let a = q(1, 3);
    let d = q(4, 1) - q(2, 1) * a.clone();
    let end = r1() / d.clone();
    let mid = (r1() - a.clone()) / d;
    let x = vec![end.clone(), mid.clone(), mid, end];
    let cost = x[0].clone() + a.clone() * x[1].clone();
    unique_uniform(s, "P4, α = 1/3", &path_game(4, a)?, UniformCostKind::Path, &x, &cost)?;
    p4_golden(s)?;

    // P5.
    only_equilibrium(s, "P5, α = 3/4", &path_game(5, q(3, 4))?, &over(&[1, 0, 1, 0, 1], 3))?;
    let g = path_game(5, r1())?;
    for x in [over(&[1, 3, 0, 2, 2], 8), over(&[1, 0, 1, 0, 1], 3)] {
        let eq = verify_equilibrium(&g, &dist(x.clone())?, &q(0, 1))?.is_equilibrium;
        s.holds(format!("P5, α = 1: {} is an equilibrium", fmt_vec(&x)), "true", eq.to_string(), eq);
    }
    uniform_family(
        s,
        "P5, α = 1",
        &g,
        UniformCostKind::Path,
        1,
        &q(1, 2),
        &[over(&[1, 1, 0, 1, 1], 4), over(&[1, 0, 0, 1, 0], 2), over(&[0, 1, 0, 0, 1], 2)],
    )?;

    // α = 1/2: odd paths alternate, even paths follow the two interleaved ramps.
    let c = path_closed_form(5, &q(1, 2), &r1())?;
    let pts: Vec<Vec<Rational>> = c.results.iter().flat_map(|t| t.result.sample_points(1)).collect();
    s.eq_vec("P5, α = 1/2: closed form", &over(&[1, 0, 1, 0, 1], 3), &pts.concat());
    let x10 = over(&[5, 1, 4, 2, 3, 3, 2, 4, 1, 5], 30);
    unique_uniform(s, "P10, α = 1/2", &path_game(10, q(1, 2))?, UniformCostKind::Path, &x10, &q(11, 60))?;
    let c = path_closed_form(10, &q(1, 2), &r1())?;
    let pts: Vec<Vec<Rational>> = c.results.iter().flat_map(|t| t.result.sample_points(1)).collect();
    s.eq_vec("P10, α = 1/2: closed form", &x10, &pts.concat());

    // α = 1 by n mod 3.
    unique_uniform(s, "P7, α = 1", &path_game(7, r1())?, UniformCostKind::Path, &over(&[1, 0, 0, 1, 0, 0, 1], 3), &q(1, 3))?;
    unique_uniform(s, "P6, α = 1", &path_game(6, r1())?, UniformCostKind::Path, &over(&[0, 1, 0, 0, 1, 0], 2), &q(1, 2))?;
    uniform_family(
        s,
        "P8, α = 1",
        &path_game(8, r1())?,
        UniformCostKind::Path,
        1,
        &q(1, 3),
        &[over(&[1, 0, 0, 1, 0, 0, 1, 0], 3), over(&[0, 1, 0, 0, 1, 0, 0, 1], 3)],
    )?;

    // Rules hold at every equilibrium; with α < 1/2 nothing is uncharged.
    for (n, alpha) in [(6, q(1, 4)), (7, q(1, 3)), (6, q(1, 2)), (7, r1())] {
        let g = path_game(n, alpha.clone())?;
        let mut violations = 0;
        let mut uncharged = false;
        for res in solve_affine_by_supports(&g, DEFAULT_SUPPORT_LIMIT)? {
            for x in res.sample_points(5) {
                uncharged |= x.iter().any(|v| *v == q(0, 1));
                violations += check_rules(&g, &dist(x)?)?.len();
            }
        }
        s.holds(format!("P{n}, α = {alpha}: rule violations at equilibria"), "0", violations.to_string(), violations == 0);
        if alpha < q(1, 2) {
            s.holds(format!("P{n}, α = {alpha}: uncharged vertices"), "none", uncharged.to_string(), !uncharged);
        }
    }
    for n in 2..=8 {
        for alpha in [q(1, 2), r1()] {
            closed_form_agrees(s, &format!("P{n}, α = {alpha}"), &path_closed_form(n, &alpha, &r1())?)?;
        }
    }
    Ok(())
}

fn p4_golden(s: &mut Sec) -> nbg_core::Result<()> {
    let phi = QSqrt5::golden_conjugate();
    let one = QSqrt5::one();
    let two = QSqrt5::from_i64(2);
    let g = Game::alpha_uniform(4, &[(0, 1), (1, 2), (2, 3)], phi.clone(), one.clone())?;
    let sys = uniform_cost_solve(&g, UniformCostKind::Path)?;
    s.eq("P4, α = φ: determinant", &QSqrt5::zero(), &sys.determinant);
    let UniformCostSolution::Family { nonnegative: Some(f), .. } = &sys.solution else {
        s.holds("P4, α = φ: uniform-cost family", "nonnegative family", format!("{:?}", sys.solution), false);
        return Ok(());
    };
    let ends = one.clone() / (two.clone() - phi.clone());
    let sums: Vec<QSqrt5> = f.vertices().iter().map(|t| {
        let x = f.point_at(t);
        x[0].clone() + x[3].clone()
    }).collect();
    s.holds(
        "P4, α = φ: x1 + x4 on the family",
        &fmt_scalar(&ends),
        sums.iter().map(fmt_scalar).collect::<Vec<_>>().join(", "),
        sums.iter().all(|v| *v == ends),
    );
    let cost = (one.clone() - phi.clone() * phi.clone()) / (two.clone() - phi.clone());
    let costs: Vec<QSqrt5> = f.vertices().iter().map(|t| f.cost_at(t)).collect();
    s.holds(
        "P4, α = φ: cost on the family",
        &fmt_scalar(&cost),
        costs.iter().map(fmt_scalar).collect::<Vec<_>>().join(", "),
        costs.iter().all(|v| *v == cost),
    );
    let denom = (phi.clone() + one.clone()) * (two - phi.clone());
    let mut x4: Vec<QSqrt5> = f.vertices().iter().map(|t| f.point_at(t)[3].clone()).collect();
    x4.sort_by(|a, b| a.partial_cmp(b).expect("field elements are ordered"));
    s.eq_vec("P4, α = φ: range of x4", &[phi / denom.clone(), one / denom], &x4);
    Ok(())
}

fn cycle_game(n: usize, alpha: Rational) -> nbg_core::Result<Game<Rational>> {
    make_family(GraphFamily::Cycle(n), alpha, r1())
}

fn cycles(s: &mut Sec) -> nbg_core::Result<()> {
    for n in 3..=8 {
        for alpha in [q(1, 4), q(3, 2)] {
            let g = cycle_game(n, alpha.clone())?;
            let x = MassDistribution::uniform(n, r1());
            let costs = g.cost_vector(&x)?;
            let uniform = costs.iter().all(|c| *c == costs[0]);
            let eq = verify_equilibrium(&g, &x, &q(0, 1))?.is_equilibrium;
            s.holds(format!("C{n}, α = {alpha}: 1/n everywhere is a uniform-cost equilibrium"), "true", (uniform && eq).to_string(), uniform && eq);
        }
    }
    for n in [5, 7] {
        let x = vec![q(1, n as i64); n];
        unique_uniform(s, &format!("C{n}, α = 1/2"), &cycle_game(n, q(1, 2))?, UniformCostKind::Cycle, &x, &q(2, n as i64))?;
    }
    let mut alt = Vec::new();
    for _ in 0..3 {
        alt.extend([q(0, 1), q(1, 3)]);
    }
    uniform_family(
        s,
        "C6, α = 1/2",
        &cycle_game(6, q(1, 2))?,
        UniformCostKind::Cycle,
        1,
        &q(1, 3),
        &[alt, vec![q(1, 6); 6], over(&[1, 3, 1, 3, 1, 3], 12)],
    )?;
    uniform_family(
        s,
        "C6, α = 1",
        &cycle_game(6, r1())?,
        UniformCostKind::Cycle,
        2,
        &q(1, 2),
        &[over(&[1, 0, 0, 1, 0, 0], 2), over(&[1, 2, 3, 1, 2, 3], 12), vec![q(1, 6); 6]],
    )?;
    for n in [7, 8] {
        let x = vec![q(1, n as i64); n];
        unique_uniform(s, &format!("C{n}, α = 1"), &cycle_game(n, r1())?, UniformCostKind::Cycle, &x, &q(3, n as i64))?;
    }
    // Non-uniform equilibria at α = 1 avoid the forbidden pattern.
    for n in 4..=8 {
        let g = cycle_game(n, r1())?;
        let mut bad = 0;
        for res in solve_affine_by_supports(&g, DEFAULT_SUPPORT_LIMIT)? {
            for x in res.sample_points(5) {
                bad += alpha_one_pattern_violations(&x, true).len();
            }
        }
        s.holds(format!("C{n}, α = 1: 0, +, +, + patterns"), "0", bad.to_string(), bad == 0);
    }
    for n in 3..=8 {
        for alpha in [q(1, 2), r1()] {
            closed_form_agrees(s, &format!("C{n}, α = {alpha}"), &cycle_closed_form(n, &alpha, &r1())?)?;
        }
    }
    Ok(())
}

fn bipartite(s: &mut Sec) -> nbg_core::Result<()> {
    let g = make_family(GraphFamily::CompleteBipartite(3, 2), q(1, 10), r1())?;
    let x = over(&[8, 8, 8, 7, 7], 38);
    only_equilibrium(s, "K_{3,2}, α = 1/10", &g, &x)?;
    let cost = g.costs_at(&x)[0].clone();
    s.eq("K_{3,2}, α = 1/10: cost", &q(47, 190), &cost);
    // p = q with α = 1/p: a segment of uniform equilibria with cost 1/p.
    let g = make_family(GraphFamily::CompleteBipartite(2, 2), q(1, 2), r1())?;
    let segment = [over(&[1, 1, 0, 0], 2), over(&[0, 0, 1, 1], 2), over(&[1, 1, 1, 1], 4)];
    for x in &segment {
        let rep = verify_equilibrium(&g, &dist(x.clone())?, &q(0, 1))?;
        let ok = rep.is_equilibrium && rep.costs.iter().all(|c| *c == q(1, 2));
        s.holds(format!("K_{{2,2}}, α = 1/2: {} has uniform cost 1/2", fmt_vec(x)), "true", ok.to_string(), ok);
    }
    // One side empty exactly when α ≥ 1/(size of the other side).
    for (alpha, a_zero, b_zero) in [(q(1, 4), false, false), (q(1, 3), false, true), (q(1, 2), true, true)] {
        let g = make_family(GraphFamily::CompleteBipartite(3, 2), alpha.clone(), r1())?;
        let eqs = solve_affine_by_supports(&g, DEFAULT_SUPPORT_LIMIT)?;
        let pts = points(&eqs);
        let has_a0 = pts.contains(&over(&[0, 0, 0, 1, 1], 2));
        let has_b0 = pts.contains(&over(&[1, 1, 1, 0, 0], 3));
        s.holds(
            format!("K_{{3,2}}, α = {alpha}: equilibrium with a = 0 / with b = 0"),
            &format!("{a_zero} / {b_zero}"),
            format!("{has_a0} / {has_b0}"),
            has_a0 == a_zero && has_b0 == b_zero,
        );
    }
    // Stars.
    let g = make_family(GraphFamily::Star(5), q(1, 10), r1())?;
    only_equilibrium(s, "star n = 5, α = 1/10", &g, &[q(3, 14), q(3, 14), q(3, 14), q(3, 14), q(1, 7)])?;
    let g = make_family(GraphFamily::Star(5), q(1, 2), r1())?;
    only_equilibrium(s, "star n = 5, α = 1/2", &g, &over(&[1, 1, 1, 1, 0], 4))?;
    let g = make_family(GraphFamily::Star(5), q(2, 1), r1())?;
    let eqs = solve_affine_by_supports(&g, DEFAULT_SUPPORT_LIMIT)?;
    let pts = points(&eqs);
    let expected = [over(&[0, 0, 0, 0, 1], 1), over(&[1, 1, 1, 1, 0], 4), over(&[1, 1, 1, 1, 7], 11)];
    let all = expected.iter().all(|x| pts.contains(x)) && pts.len() == expected.len();
    s.holds(
        "star n = 5, α = 2: equilibria",
        &expected.iter().map(|x| fmt_vec(x)).collect::<Vec<_>>().join("; "),
        describe(&eqs),
        all,
    );
    for (p, qq) in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)] {
        let (pi, qi) = (p as i64, qq as i64);
        for alpha in [q(1, 2 * pi), q(1, pi), q(1, qi), q(pi + qi, 2 * pi * qi), q(2, 1)] {
            closed_form_agrees(s, &format!("K_{{{p},{qq}}}, α = {alpha}"), &bipartite_closed_form(p, qq, &alpha, &r1())?)?;
        }
    }
    for n in [3, 5, 7] {
        for alpha in [q(1, 10), q(1, n as i64 - 1), r1(), q(2, 1)] {
            closed_form_agrees(s, &format!("star n = {n}, α = {alpha}"), &star_closed_form(n, &alpha, &r1())?)?;
        }
    }
    Ok(())
}
