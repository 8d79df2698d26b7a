//! α-uniform games on named graph families: generators, the uniform-cost
//! linear system, explicit equilibrium sets, necessary conditions, and
//! determinant scans.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::error::NbgError;
use crate::family::{nonnegative_family, AffineFamily};
use crate::game::{Game, GameClass, MassDistribution};
use crate::linalg::{bareiss_determinant, determinant, solve, LinearSolution, Matrix};
use crate::scalar::{Rational, Scalar};
use crate::supports::{solve_affine_by_supports, PointEquilibrium, SolveResult};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    Path(usize),
    Cycle(usize),
    /// Side A is `0..p`, side B is `p..p+q`.
    CompleteBipartite(usize, usize),
    /// `K_{n−1,1}`; the centre is the last vertex.
    Star(usize),
}

impl GraphFamily {
    pub fn n(&self) -> usize {
        match *self {
            GraphFamily::Path(n) | GraphFamily::Cycle(n) | GraphFamily::Star(n) => n,
            GraphFamily::CompleteBipartite(p, q) => p + q,
        }
    }

    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        let invalid = |msg: &str| Err(NbgError::InvalidParameter(format!("{msg}: {self:?}")));
        match *self {
            GraphFamily::Path(n) => {
                if n == 0 {
                    return invalid("a path needs at least one vertex");
                }
                Ok((1..n).map(|i| (i - 1, i)).collect())
            }
            GraphFamily::Cycle(n) => {
                if n < 3 {
                    return invalid("a cycle needs at least three vertices");
                }
                Ok((0..n).map(|i| (i, (i + 1) % n)).collect())
            }
            GraphFamily::CompleteBipartite(p, q) => {
                if q == 0 || p < q {
                    return invalid("complete bipartite graphs need p ≥ q ≥ 1");
                }
                Ok((0..p).flat_map(|a| (p..p + q).map(move |b| (a, b))).collect())
            }
            GraphFamily::Star(n) => {
                if n < 2 {
                    return invalid("a star needs at least two vertices");
                }
                GraphFamily::CompleteBipartite(n - 1, 1).edges()
            }
        }
    }
}

/// α-uniform symmetric game on the family's graph.
pub fn make_family<S: Scalar>(family: GraphFamily, alpha: S, r: S) -> Result<Game<S>> {
    let edges = family.edges()?;
    Game::alpha_uniform(family.n(), &edges, alpha, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniformCostKind {
    Path,
    Cycle,
    General,
}

#[derive(Clone, Debug, PartialEq)]
pub enum UniformCostSolution<S> {
    Unique { x: Vec<S>, cost: S },
    /// `(x, c) = (base, cost_base) + Σ t_k (basis_k, cost_basis_k)`.
    Family {
        base: Vec<S>,
        cost_base: S,
        basis: Vec<Vec<S>>,
        cost_basis: Vec<S>,
        /// The part with `x ≥ 0`, if nonempty.
        nonnegative: Option<AffineFamily<S>>,
    },
    None,
}

/// The bordered system `(I + αA | −1; 1ᵀ | 0) · (x, c) = (0, …, 0, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformCostSystem<S> {
    pub matrix: Matrix<S>,
    pub rhs: Vec<S>,
    pub determinant: S,
    pub solution: UniformCostSolution<S>,
    /// Some solution has `x ≥ 0`, i.e. is a uniform-cost equilibrium.
    pub nonnegative: bool,
}

impl<S: Scalar> UniformCostSystem<S> {
    /// Nonnegative solutions as equilibria.
    pub fn equilibria(&self) -> Vec<SolveResult<S>> {
        match &self.solution {
            UniformCostSolution::Unique { x, cost } if self.nonnegative => {
                let r = self.rhs.last().cloned().unwrap_or_else(S::zero);
                let threshold = S::charge_threshold();
                let support = (0..x.len()).filter(|&i| x[i] > threshold).collect();
                match MassDistribution::new(x.clone(), r) {
                    Ok(dist) => vec![SolveResult::Point(PointEquilibrium { x: dist, cost: cost.clone(), support })],
                    Err(_) => Vec::new(),
                }
            }
            UniformCostSolution::Family { nonnegative: Some(f), .. } => vec![SolveResult::Family(f.clone())],
            _ => Vec::new(),
        }
    }
}

fn bordered_matrix<S: Scalar>(n: usize, edges: &[(usize, usize)], alpha: &S) -> Matrix<S> {
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        m.set(i, i, S::one());
        m.set(i, n, -S::one());
        m.set(n, i, S::one());
    }
    for &(i, j) in edges {
        m.set(i, j, alpha.clone());
        m.set(j, i, alpha.clone());
    }
    m
}

fn uniform_alpha<S: Scalar>(game: &Game<S>) -> Result<S> {
    let class = game.classify();
    if class.class != GameClass::AlphaUniform || !class.symmetric {
        return Err(NbgError::NotAlphaUniform);
    }
    Ok(class.alpha.unwrap_or_else(S::zero))
}

fn game_edges<S: Scalar>(game: &Game<S>) -> Vec<(usize, usize)> {
    game.influence()
        .map(|m| m.entries().filter(|(i, j, _)| i < j).map(|(i, j, _)| (i, j)).collect())
        .unwrap_or_default()
}

/// Builds and solves the uniform-cost system of a symmetric α-uniform game.
/// `Path` and `Cycle` additionally check that the game's graph is the path
/// `0 − 1 − … − (n−1)` or the matching cycle.
pub fn uniform_cost_solve<S: Scalar>(game: &Game<S>, kind: UniformCostKind) -> Result<UniformCostSystem<S>> {
    let alpha = uniform_alpha(game)?;
    let n = game.n();
    let mut edges = game_edges(game);
    edges.sort_unstable();
    let expected = match kind {
        UniformCostKind::Path => Some(GraphFamily::Path(n).edges()?),
        UniformCostKind::Cycle => Some(GraphFamily::Cycle(n).edges()?),
        UniformCostKind::General => None,
    };
    if let Some(mut want) = expected {
        for e in want.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        want.sort_unstable();
        if alpha.is_zero() || want != edges {
            return Err(NbgError::InvalidParameter(format!("game graph is not a {kind:?}")));
        }
    }
    let matrix = bordered_matrix(n, &edges, &alpha);
    let mut rhs = vec![S::zero(); n + 1];
    rhs[n] = game.r().clone();
    let det = determinant(&matrix);
    let neg = -S::mass_tolerance();
    let (solution, nonnegative) = match solve(&matrix, &rhs) {
        LinearSolution::Inconsistent => (UniformCostSolution::None, false),
        LinearSolution::Unique(y) => {
            let nonneg = y[..n].iter().all(|v| *v >= neg);
            let cost = y[n].clone();
            let mut x = y;
            x.truncate(n);
            (UniformCostSolution::Unique { x, cost }, nonneg)
        }
        LinearSolution::Affine { particular, nullspace } => {
            let base = particular[..n].to_vec();
            let cost_base = particular[n].clone();
            let basis: Vec<Vec<S>> = nullspace.iter().map(|v| v[..n].to_vec()).collect();
            let cost_basis: Vec<S> = nullspace.iter().map(|v| v[n].clone()).collect();
            let fam = nonnegative_family(base.clone(), basis.clone(), cost_base.clone(), cost_basis.clone());
            let nonneg = fam.is_some();
            (UniformCostSolution::Family { base, cost_base, basis, cost_basis, nonnegative: fam }, nonneg)
        }
    };
    Ok(UniformCostSystem { matrix, rhs, determinant: det, solution, nonnegative })
}

/// `det M_{n,α}` for the path `P_n`, by fraction-free elimination.
pub fn path_determinant(n: usize, alpha: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(NbgError::InvalidParameter("path determinant needs n ≥ 2".into()));
    }
    let edges = GraphFamily::Path(n).edges()?;
    Ok(bareiss_determinant(&bordered_matrix(n, &edges, alpha)))
}

/// Determinant of the bordered system for the cycle `C_n`.
pub fn cycle_determinant(n: usize, alpha: &Rational) -> Result<Rational> {
    let edges = GraphFamily::Cycle(n).edges()?;
    Ok(bareiss_determinant(&bordered_matrix(n, &edges, alpha)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleViolation {
    /// 1 to 4.
    pub rule: u8,
    pub vertices: Vec<usize>,
    pub detail: String,
    /// Raised by the `α = 1/k` boundary clause of rules 2 and 3 (the charged
    /// neighbours must carry equal masses and have no charged neighbours).
    pub equality_clause: bool,
}

/// Necessary conditions for `x` to be an equilibrium of a symmetric
/// α-uniform game. An empty list does not prove `x` is an equilibrium.
pub fn check_rules<S: Scalar>(game: &Game<S>, x: &MassDistribution<S>) -> Result<Vec<RuleViolation>> {
    let alpha = uniform_alpha(game)?;
    game.check_distribution(x)?;
    let n = game.n();
    let tol = S::eq_tolerance();
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut v = game.neighbours(i);
            v.sort_unstable();
            v
        })
        .collect();
    let mut out = Vec::new();
    for i in (0..n).filter(|&i| !x.is_charged(i)) {
        let charged: Vec<usize> = nbrs[i].iter().copied().filter(|&j| x.is_charged(j)).collect();
        let k = charged.len();
        let mut involved = vec![i];
        involved.extend(&charged);
        if k == 0 {
            out.push(RuleViolation {
                rule: 1,
                vertices: involved,
                detail: format!("uncharged vertex {i} has no charged neighbour"),
                equality_clause: false,
            });
            continue;
        }
        let rule = if k == 1 { 2 } else { 3 };
        let threshold = S::one() / S::from_i64(k as i64);
        if alpha < threshold.clone() - tol.clone() {
            out.push(RuleViolation {
                rule,
                vertices: involved,
                detail: format!("uncharged vertex {i} has {k} charged neighbours, needs α ≥ 1/{k}"),
                equality_clause: false,
            });
        } else if (alpha.clone() - threshold).abs() <= tol {
            let first = x.get(charged[0]).clone();
            let unequal = charged.iter().any(|&j| (x.get(j).clone() - first.clone()).abs() > tol);
            let crowded = charged.iter().any(|&j| nbrs[j].iter().any(|&l| x.is_charged(l)));
            if unequal || crowded {
                out.push(RuleViolation {
                    rule,
                    vertices: involved,
                    detail: format!(
                        "α = 1/{k} at uncharged vertex {i}: charged neighbours need equal masses and no charged neighbours"
                    ),
                    equality_clause: true,
                });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if nbrs[i] == nbrs[j] && (x.get(i).clone() - x.get(j).clone()).abs() > tol {
                out.push(RuleViolation {
                    rule: 4,
                    vertices: vec![i, j],
                    detail: format!("vertices {i} and {j} share a neighbourhood but carry different masses"),
                    equality_clause: false,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormScope {
    /// The listed results are every equilibrium of the game.
    AllEquilibria,
    /// The listed results are exactly the uniform-cost equilibria; other
    /// equilibria may exist.
    UniformCostOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaggedResult {
    pub result: SolveResult<Rational>,
    /// Parameter range under which the formula applies.
    pub condition: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub family: GraphFamily,
    pub alpha: Rational,
    pub r: Rational,
    pub scope: ClosedFormScope,
    pub results: Vec<TaggedResult>,
}

impl ClosedForm {
    pub fn game(&self) -> Result<Game<Rational>> {
        make_family(self.family, self.alpha.clone(), self.r.clone())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.results.iter().any(|t| t.result.contains(x))
    }
}

fn ri(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn point(x: Vec<Rational>, cost: Rational, r: &Rational, condition: String) -> Result<TaggedResult> {
    let scaled: Vec<Rational> = x.into_iter().map(|v| v * r.clone()).collect();
    let support = (0..scaled.len()).filter(|&i| scaled[i] > ri(0)).collect();
    let dist = MassDistribution::new(scaled, r.clone())?;
    Ok(TaggedResult {
        result: SolveResult::Point(PointEquilibrium { x: dist, cost: cost * r.clone(), support }),
        condition,
    })
}

fn family(
    base: Vec<Rational>,
    directions: Vec<Vec<Rational>>,
    cost: Rational,
    r: &Rational,
    condition: String,
) -> Result<TaggedResult> {
    let base = base.into_iter().map(|v| v * r.clone()).collect();
    let d = directions.len();
    let f = nonnegative_family(base, directions, cost * r.clone(), vec![ri(0); d])
        .ok_or_else(|| NbgError::InvalidParameter("empty closed-form family".into()))?;
    Ok(TaggedResult { result: SolveResult::Family(f), condition })
}

fn check_alpha(alpha: &Rational) -> Result<bool> {
    if *alpha == Rational::from_ratio(1, 2) {
        Ok(true)
    } else if *alpha == ri(1) {
        Ok(false)
    } else {
        Err(NbgError::InvalidParameter(format!("closed forms cover α ∈ {{1/2, 1}}, got {alpha}")))
    }
}

fn check_r(r: &Rational) -> Result<()> {
    if *r <= ri(0) {
        return Err(NbgError::NonPositiveMass);
    }
    Ok(())
}

/// Equilibria of the α-uniform path `P_n` for `α ∈ {1/2, 1}`. For `α = 1/2`
/// the set is complete; for `α = 1` it is the set of uniform-cost equilibria.
pub fn path_closed_form(n: usize, alpha: &Rational, r: &Rational) -> Result<ClosedForm> {
    GraphFamily::Path(n).edges()?;
    check_r(r)?;
    let half = check_alpha(alpha)?;
    let mut results = Vec::new();
    let nn = n as i64;
    let scope = if half {
        if n % 2 == 1 {
            let v = Rational::from_ratio(2, nn + 1);
            let x = (0..n).map(|i| if i % 2 == 0 { v.clone() } else { ri(0) }).collect();
            results.push(point(x, v, r, "n odd".into())?);
        } else {
            let q = nn / 2;
            let x1 = Rational::from_ratio(1, q + 1);
            let x2 = Rational::from_ratio(1, q * (q + 1));
            // 1-indexed: x_{2k} = k·x2, x_{2k+1} = x1 − k·x2.
            let x = (1..=nn)
                .map(|m| {
                    let k = ri(m / 2);
                    if m % 2 == 0 {
                        k * x2.clone()
                    } else {
                        x1.clone() - k * x2.clone()
                    }
                })
                .collect();
            let cost = Rational::from_ratio(2 * q + 1, 2 * q * (q + 1));
            results.push(point(x, cost, r, "n even".into())?);
        }
        ClosedFormScope::AllEquilibria
    } else {
        match n % 3 {
            2 => {
                let v = Rational::from_ratio(3, nn + 1);
                let base = (0..n).map(|i| if i % 3 == 1 { v.clone() } else { ri(0) }).collect();
                let dir = (0..n)
                    .map(|i| match i % 3 {
                        0 => ri(1),
                        1 => ri(-1),
                        _ => ri(0),
                    })
                    .collect();
                results.push(family(base, vec![dir], v, r, "n = 3k + 2".into())?);
            }
            1 => {
                let v = Rational::from_ratio(3, nn + 2);
                let x = (0..n).map(|i| if i % 3 == 0 { v.clone() } else { ri(0) }).collect();
                results.push(point(x, v, r, "n = 3k + 1".into())?);
            }
            _ => {
                let v = Rational::from_ratio(3, nn);
                let x = (0..n).map(|i| if i % 3 == 1 { v.clone() } else { ri(0) }).collect();
                results.push(point(x, v, r, "n = 3k".into())?);
            }
        }
        ClosedFormScope::UniformCostOnly
    };
    Ok(ClosedForm { family: GraphFamily::Path(n), alpha: alpha.clone(), r: r.clone(), scope, results })
}

/// Equilibria of the α-uniform cycle `C_n` for `α ∈ {1/2, 1}`, with the same
/// scopes as [`path_closed_form`].
pub fn cycle_closed_form(n: usize, alpha: &Rational, r: &Rational) -> Result<ClosedForm> {
    GraphFamily::Cycle(n).edges()?;
    check_r(r)?;
    let half = check_alpha(alpha)?;
    let nn = n as i64;
    let uniform = vec![Rational::from_ratio(1, nn); n];
    let mut results = Vec::new();
    let scope = if half {
        let cost = Rational::from_ratio(2, nn);
        if n.is_multiple_of(2) {
            let base = (0..n).map(|i| if i % 2 == 1 { cost.clone() } else { ri(0) }).collect();
            let dir = (0..n).map(|i| if i % 2 == 0 { ri(1) } else { ri(-1) }).collect();
            results.push(family(base, vec![dir], cost, r, "n even".into())?);
        } else {
            results.push(point(uniform, cost, r, "n odd".into())?);
        }
        ClosedFormScope::AllEquilibria
    } else {
        let cost = Rational::from_ratio(3, nn);
        if n.is_multiple_of(3) {
            let base = (0..n).map(|i| if i % 3 == 2 { cost.clone() } else { ri(0) }).collect();
            let dir = |m: usize| {
                (0..n)
                    .map(|i| {
                        if i % 3 == m {
                            ri(1)
                        } else if i % 3 == 2 {
                            ri(-1)
                        } else {
                            ri(0)
                        }
                    })
                    .collect::<Vec<_>>()
            };
            results.push(family(base, vec![dir(0), dir(1)], cost, r, "n = 3k".into())?);
        } else {
            results.push(point(uniform, cost, r, "n not divisible by 3".into())?);
        }
        ClosedFormScope::UniformCostOnly
    };
    Ok(ClosedForm { family: GraphFamily::Cycle(n), alpha: alpha.clone(), r: r.clone(), scope, results })
}

/// Every equilibrium of the α-uniform `K_{p,q}`, `p ≥ q ≥ 1`, `α ≥ 0`. Each
/// side carries a common mass (`a` on A, `b` on B).
pub fn bipartite_closed_form(p: usize, q: usize, alpha: &Rational, r: &Rational) -> Result<ClosedForm> {
    bipartite_for(GraphFamily::CompleteBipartite(p, q), p, q, alpha, r)
}

/// [`bipartite_closed_form`] for `K_{n−1,1}` (leaves first, centre last).
pub fn star_closed_form(n: usize, alpha: &Rational, r: &Rational) -> Result<ClosedForm> {
    GraphFamily::Star(n).edges()?;
    bipartite_for(GraphFamily::Star(n), n - 1, 1, alpha, r)
}

fn bipartite_for(label: GraphFamily, p: usize, q: usize, alpha: &Rational, r: &Rational) -> Result<ClosedForm> {
    GraphFamily::CompleteBipartite(p, q).edges()?;
    check_r(r)?;
    if *alpha < ri(0) {
        return Err(NbgError::NegativeCoefficient(format!("α = {alpha}")));
    }
    let (pi, qi) = (p as i64, q as i64);
    let inv_p = Rational::from_ratio(1, pi);
    let inv_q = Rational::from_ratio(1, qi);
    let sides = |a: Rational, b: Rational| -> Vec<Rational> {
        (0..p + q).map(|i| if i < p { a.clone() } else { b.clone() }).collect()
    };
    let mut results = Vec::new();
    let degenerate = p == q && *alpha == inv_p;
    if degenerate {
        let base = sides(ri(0), inv_p.clone());
        let dir = sides(ri(1), ri(-1));
        results.push(family(base, vec![dir], inv_p.clone(), r, "p = q and α = 1/p".into())?);
    } else {
        if *alpha >= inv_q {
            results.push(point(sides(ri(0), inv_q.clone()), alpha.clone(), r, "α ≥ 1/q (side A empty)".into())?);
        }
        if *alpha >= inv_p {
            results.push(point(sides(inv_p.clone(), ri(0)), alpha.clone(), r, "α ≥ 1/p (side B empty)".into())?);
        }
        if *alpha < inv_p || *alpha > inv_q {
            let d = ri(pi + qi) - ri(2 * pi * qi) * alpha.clone();
            let a = (ri(1) - alpha.clone() * ri(qi)) / d.clone();
            let b = (ri(1) - alpha.clone() * ri(pi)) / d.clone();
            let cost = (ri(1) - alpha.clone() * alpha.clone() * ri(pi * qi)) / d;
            results.push(point(sides(a, b), cost, r, "α < 1/p or α > 1/q (interior)".into())?);
        }
    }
    Ok(ClosedForm {
        family: label,
        alpha: alpha.clone(),
        r: r.clone(),
        scope: ClosedFormScope::AllEquilibria,
        results,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleDiscrepancy {
    /// A closed-form point missing from the support enumeration.
    ClosedFormNotFound(Vec<Rational>),
    /// A support-enumeration point missing from the closed form (restricted
    /// to uniform-cost points when the closed form has that scope).
    EquilibriumNotInClosedForm(Vec<Rational>),
    /// A closed-form point that fails the exact equilibrium check.
    NotAnEquilibrium(Vec<Rational>),
}

/// Compares a closed form against [`solve_affine_by_supports`], sampling
/// families at `samples` parameters on both sides.
pub fn oracle_discrepancies(closed: &ClosedForm, samples: usize) -> Result<Vec<OracleDiscrepancy>> {
    let game = closed.game()?;
    let found = solve_affine_by_supports(&game, crate::supports::DEFAULT_SUPPORT_LIMIT)?;
    let mut out = Vec::new();
    for tagged in &closed.results {
        for x in tagged.result.sample_points(samples) {
            let dist = MassDistribution::new(x.clone(), closed.r.clone())?;
            if !crate::equilibrium::verify_equilibrium(&game, &dist, &ri(0))?.is_equilibrium {
                out.push(OracleDiscrepancy::NotAnEquilibrium(x.clone()));
            }
            if !crate::supports::results_contain(&found, &x) {
                out.push(OracleDiscrepancy::ClosedFormNotFound(x));
            }
        }
    }
    for result in &found {
        for x in result.sample_points(samples) {
            if closed.scope == ClosedFormScope::UniformCostOnly {
                let costs = game.costs_at(&x);
                if costs.iter().any(|c| *c != costs[0]) {
                    continue;
                }
            }
            if !closed.contains(&x) {
                out.push(OracleDiscrepancy::EquilibriumNotInClosedForm(x));
            }
        }
    }
    Ok(out)
}

/// Positions `i` (cyclically when `cyclic`) where `x_i = 0`, `x_{i+1} > 0`,
/// `x_{i+2} > 0` but `x_{i+3} > 0`; α = 1 equilibria of paths and cycles
/// never show this pattern.
pub fn alpha_one_pattern_violations<S: Scalar>(x: &[S], cyclic: bool) -> Vec<usize> {
    let n = x.len();
    let threshold = S::charge_threshold();
    let charged = |i: usize| x[i % n] > threshold;
    let last = if cyclic { n } else { n.saturating_sub(3) };
    if n < 4 {
        return Vec::new();
    }
    (0..last).filter(|&i| !charged(i) && charged(i + 1) && charged(i + 2) && charged(i + 3)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanFamily {
    Path,
    Cycle,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub alpha: Rational,
    pub determinant: Rational,
    pub unique: bool,
    pub nonnegative: bool,
}

impl ScanRow {
    /// A zero determinant or a solution with a negative entry.
    pub fn is_counterexample(&self) -> bool {
        !self.unique || !self.nonnegative
    }
}

/// Determinant and uniform-cost solution of `P_n` or `C_n` over a grid, with
/// `r = 1`. Rows are ordered by `n`, then by position in `alphas`.
pub fn conjecture_scan(which: ScanFamily, ns: RangeInclusive<usize>, alphas: &[Rational]) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for n in ns {
        for alpha in alphas {
            let (family, kind) = match which {
                ScanFamily::Path => (GraphFamily::Path(n), UniformCostKind::Path),
                ScanFamily::Cycle => (GraphFamily::Cycle(n), UniformCostKind::Cycle),
            };
            let game = make_family(family, alpha.clone(), ri(1))?;
            let system = uniform_cost_solve(&game, kind)?;
            let det = bareiss_determinant(&system.matrix);
            rows.push(ScanRow {
                n,
                alpha: alpha.clone(),
                unique: !det.is_zero(),
                determinant: det,
                nonnegative: system.nonnegative,
            });
        }
    }
    Ok(rows)
}

/// `{1/20, 2/20, …, 9/20}`.
pub fn default_scan_grid() -> Vec<Rational> {
    (1..=9).map(|k| Rational::from_ratio(k, 20)).collect()
}
