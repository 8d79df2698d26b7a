//! Games, mass distributions and cost evaluation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::NbgError;
use crate::graph::{Digraph, UnderlyingGraph};
use crate::scalar::{sum, Scalar};
use crate::Result;

/// Cost function of one vertex in a general game, evaluated on the full
/// distribution.
pub type CostEvaluator<S> = Arc<dyn Fn(&[S]) -> S + Send + Sync>;

/// Nonnegative vector on vertices with a fixed total.
#[derive(Clone, Debug, PartialEq)]
pub struct MassDistribution<S> {
    masses: Vec<S>,
    total: S,
}

impl<S: Scalar> MassDistribution<S> {
    /// Checks nonnegativity and that the entries sum to `total`
    /// (exactly for exact scalars, within the float mass tolerance otherwise).
    /// Float entries that are negative by less than the tolerance are clamped.
    pub fn new(masses: Vec<S>, total: S) -> Result<Self> {
        if total <= S::zero() {
            return Err(NbgError::NonPositiveMass);
        }
        let tol = S::mass_tolerance();
        let mut masses = masses;
        for (i, m) in masses.iter_mut().enumerate() {
            if *m < S::zero() {
                if -m.clone() > tol {
                    return Err(NbgError::NegativeMass { vertex: i, value: m.to_f64() });
                }
                *m = S::zero();
            }
        }
        let s = sum(&masses);
        let scale = if total > S::one() { total.clone() } else { S::one() };
        if (s.clone() - total.clone()).abs() > tol * scale {
            return Err(NbgError::TotalMismatch { expected: total.to_f64(), got: s.to_f64() });
        }
        Ok(MassDistribution { masses, total })
    }

    /// Distribution whose total is the sum of the given masses.
    pub fn from_masses(masses: Vec<S>) -> Result<Self> {
        let total = sum(&masses);
        Self::new(masses, total)
    }

    pub fn uniform(n: usize, r: S) -> Self {
        let each = r.clone() / S::from_i64(n as i64);
        MassDistribution { masses: vec![each; n], total: r }
    }

    /// All mass on vertex `i`.
    pub fn point(n: usize, i: usize, r: S) -> Self {
        let mut masses = vec![S::zero(); n];
        masses[i] = r.clone();
        MassDistribution { masses, total: r }
    }

    /// Mass `r/|support|` on each vertex of `support`.
    pub fn on_support(n: usize, support: &[usize], r: S) -> Result<Self> {
        if support.is_empty() {
            return Err(NbgError::InvalidParameter("empty support".into()));
        }
        let each = r.clone() / S::from_i64(support.len() as i64);
        let mut masses = vec![S::zero(); n];
        for &i in support {
            if i >= n {
                return Err(NbgError::VertexOutOfRange { index: i, n });
            }
            masses[i] = each.clone();
        }
        Ok(MassDistribution { masses, total: r })
    }

    pub fn n(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[S] {
        &self.masses
    }

    pub fn into_masses(self) -> Vec<S> {
        self.masses
    }

    pub fn total(&self) -> &S {
        &self.total
    }

    pub fn get(&self, i: usize) -> &S {
        &self.masses[i]
    }

    /// `x_i > τ_charge` (strictly positive for exact scalars).
    pub fn is_charged(&self, i: usize) -> bool {
        self.masses[i] > S::charge_threshold()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_charged(i)).collect()
    }

    pub fn to_f64(&self) -> MassDistribution<f64> {
        MassDistribution {
            masses: self.masses.iter().map(Scalar::to_f64).collect(),
            total: self.total.to_f64(),
        }
    }

    /// Largest coordinate difference.
    pub fn linf_distance(&self, other: &Self) -> S {
        self.masses
            .iter()
            .zip(&other.masses)
            .map(|(a, b)| (a.clone() - b.clone()).abs())
            .fold(S::zero(), crate::scalar::max_of)
    }
}

/// Opaque vertex-cost function; only reachable through the library API.
#[derive(Clone)]
pub struct OpaqueFn<S> {
    eval: Arc<dyn Fn(&S) -> S + Send + Sync>,
    declared_monotone: bool,
}

impl<S> OpaqueFn<S> {
    pub fn new(f: impl Fn(&S) -> S + Send + Sync + 'static, declared_monotone: bool) -> Self {
        OpaqueFn { eval: Arc::new(f), declared_monotone }
    }

    pub fn declared_monotone(&self) -> bool {
        self.declared_monotone
    }
}

impl<S> fmt::Debug for OpaqueFn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OpaqueFn").field("declared_monotone", &self.declared_monotone).finish()
    }
}

/// Vertex-cost function `f_i`, applied to the mass on the vertex itself.
#[derive(Clone, Debug)]
pub enum VertexCostFn<S> {
    Constant(S),
    Affine { slope: S, intercept: S },
    /// Coefficients in increasing degree: `c0 + c1 t + c2 t² + …`.
    Polynomial(Vec<S>),
    Opaque(OpaqueFn<S>),
}

impl<S: Scalar> VertexCostFn<S> {
    /// `f(t) = t`.
    pub fn identity() -> Self {
        VertexCostFn::Affine { slope: S::one(), intercept: S::zero() }
    }

    pub fn eval(&self, t: &S) -> S {
        match self {
            VertexCostFn::Constant(b) => b.clone(),
            VertexCostFn::Affine { slope, intercept } => slope.clone() * t.clone() + intercept.clone(),
            VertexCostFn::Polynomial(c) => c
                .iter()
                .rev()
                .fold(S::zero(), |acc, coef| acc * t.clone() + coef.clone()),
            VertexCostFn::Opaque(f) => (f.eval)(t),
        }
    }

    /// `∫₀ᵗ f(s) ds`, in closed form except for opaque functions, which go
    /// through adaptive Simpson quadrature in `f64`.
    pub fn integral(&self, t: &S) -> S {
        let two = S::from_i64(2);
        match self {
            VertexCostFn::Constant(b) => b.clone() * t.clone(),
            VertexCostFn::Affine { slope, intercept } => {
                slope.clone() * t.clone() * t.clone() / two + intercept.clone() * t.clone()
            }
            VertexCostFn::Polynomial(c) => {
                let mut acc = S::zero();
                let mut power = t.clone();
                for (k, coef) in c.iter().enumerate() {
                    acc = acc + coef.clone() * power.clone() / S::from_i64(k as i64 + 1);
                    power = power * t.clone();
                }
                acc
            }
            VertexCostFn::Opaque(f) => {
                let g = |s: f64| (f.eval)(&S::from_f64(s)).to_f64();
                S::from_f64(crate::optimize::adaptive_simpson(&g, 0.0, t.to_f64(), 1e-12))
            }
        }
    }

    /// `(slope, intercept)` when the function is affine.
    pub fn affine_parts(&self) -> Option<(S, S)> {
        match self {
            VertexCostFn::Constant(b) => Some((S::zero(), b.clone())),
            VertexCostFn::Affine { slope, intercept } => Some((slope.clone(), intercept.clone())),
            VertexCostFn::Polynomial(c) => {
                if c.iter().skip(2).all(Scalar::is_zero) {
                    let at = |k: usize| c.get(k).cloned().unwrap_or_else(S::zero);
                    Some((at(1), at(0)))
                } else {
                    None
                }
            }
            VertexCostFn::Opaque(_) => None,
        }
    }

    /// Polynomial degree; `None` for opaque functions.
    pub fn degree(&self) -> Option<usize> {
        match self {
            VertexCostFn::Constant(_) => Some(0),
            VertexCostFn::Affine { slope, .. } => Some(usize::from(!slope.is_zero())),
            VertexCostFn::Polynomial(c) => {
                Some(c.iter().rposition(|v| !v.is_zero()).unwrap_or(0))
            }
            VertexCostFn::Opaque(_) => None,
        }
    }

    fn check_coefficients(&self, vertex: usize) -> Result<()> {
        let bad = |what: &str| Err(NbgError::NegativeCoefficient(format!("{what} of vertex {}", vertex + 1)));
        match self {
            VertexCostFn::Constant(b) if *b < S::zero() => bad("constant cost"),
            VertexCostFn::Affine { slope, intercept } if *slope < S::zero() || *intercept < S::zero() => {
                bad("affine cost")
            }
            VertexCostFn::Polynomial(c) if c.iter().any(|v| *v < S::zero()) => bad("polynomial cost"),
            _ => Ok(()),
        }
    }

    pub fn to_f64(&self) -> VertexCostFn<f64> {
        match self {
            VertexCostFn::Constant(b) => VertexCostFn::Constant(b.to_f64()),
            VertexCostFn::Affine { slope, intercept } => {
                VertexCostFn::Affine { slope: slope.to_f64(), intercept: intercept.to_f64() }
            }
            VertexCostFn::Polynomial(c) => VertexCostFn::Polynomial(c.iter().map(Scalar::to_f64).collect()),
            VertexCostFn::Opaque(f) => {
                let inner = f.eval.clone();
                VertexCostFn::Opaque(OpaqueFn::new(
                    move |t: &f64| inner(&S::from_f64(*t)).to_f64(),
                    f.declared_monotone,
                ))
            }
        }
    }
}

/// Off-diagonal influences `α_{i,j} > 0`: mass on `i` adds `α_{i,j} x_i` to
/// the cost of `j`. Zero entries are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceMatrix<S> {
    n: usize,
    entries: BTreeMap<(usize, usize), S>,
    /// For each target `j`, the pairs `(i, α_{i,j})`.
    incoming: Vec<Vec<(usize, S)>>,
    symmetric: bool,
}

impl<S: Scalar> InfluenceMatrix<S> {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(NbgError::VertexOutOfRange { index: i.max(j), n });
            }
            if i == j && !v.is_zero() {
                return Err(NbgError::SelfLoop(i));
            }
            if v < S::zero() {
                return Err(NbgError::NegativeCoefficient(format!("alpha({}, {})", i + 1, j + 1)));
            }
            if map.contains_key(&(i, j)) {
                return Err(NbgError::InvalidParameter(format!(
                    "duplicate influence ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            if !v.is_zero() && i != j {
                map.insert((i, j), v);
            }
        }
        Ok(Self::from_map(n, map))
    }

    /// Symmetric influences from undirected weighted edges.
    pub fn symmetric(n: usize, edges: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        let mut both = Vec::new();
        for (i, j, v) in edges {
            both.push((i, j, v.clone()));
            both.push((j, i, v));
        }
        Self::new(n, both)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_map(n, BTreeMap::new())
    }

    fn from_map(n: usize, entries: BTreeMap<(usize, usize), S>) -> Self {
        let mut incoming = vec![Vec::new(); n];
        for ((i, j), v) in &entries {
            incoming[*j].push((*i, v.clone()));
        }
        let symmetric = entries.iter().all(|((i, j), v)| entries.get(&(*j, *i)) == Some(v));
        InfluenceMatrix { n, entries, incoming, symmetric }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `α_{i,j}`, zero when absent.
    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.entries.iter().map(|((i, j), v)| (*i, *j, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sources `i` with `α_{i,j} > 0`, with their weights.
    pub fn incoming(&self, j: usize) -> &[(usize, S)] {
        &self.incoming[j]
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn to_f64(&self) -> InfluenceMatrix<f64> {
        InfluenceMatrix::from_map(
            self.n,
            self.entries.iter().map(|(k, v)| (*k, v.to_f64())).collect(),
        )
    }
}

#[derive(Clone)]
pub enum GameKind<S> {
    /// Arbitrary cost evaluators `C_i(x)`.
    General(Vec<CostEvaluator<S>>),
    /// `C_i(x) = f_i(x_i) + Σ_{j≠i} α_{j,i} x_j`.
    Graphical { vertex_costs: Vec<VertexCostFn<S>>, influence: InfluenceMatrix<S> },
}

impl<S: fmt::Debug> fmt::Debug for GameKind<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameKind::General(c) => write!(f, "General({} evaluators)", c.len()),
            GameKind::Graphical { vertex_costs, influence } => f
                .debug_struct("Graphical")
                .field("vertex_costs", vertex_costs)
                .field("influence", influence)
                .finish(),
        }
    }
}

/// Costs of an affine game: `C_i(x) = intercept_i + Σ_j coeff[i][j] x_j`,
/// where `coeff[i][i]` is the slope of `f_i` and `coeff[i][j] = α_{j,i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineCosts<S> {
    pub intercept: Vec<S>,
    pub coeff: Vec<Vec<S>>,
}

impl<S: Scalar> AffineCosts<S> {
    pub fn n(&self) -> usize {
        self.intercept.len()
    }

    pub fn costs(&self, x: &[S]) -> Vec<S> {
        self.coeff
            .iter()
            .zip(&self.intercept)
            .map(|(row, b)| {
                row.iter()
                    .zip(x)
                    .fold(b.clone(), |acc, (a, xi)| acc + a.clone() * xi.clone())
            })
            .collect()
    }

    /// Gradient data of `Σ_i x_i C_i(x)`: intercepts `b` and matrix `A + Aᵀ`.
    pub fn marginal(&self) -> AffineCosts<S> {
        let n = self.n();
        let coeff = (0..n)
            .map(|i| (0..n).map(|j| self.coeff[i][j].clone() + self.coeff[j][i].clone()).collect())
            .collect();
        AffineCosts { intercept: self.intercept.clone(), coeff }
    }
}

/// Position of a game in the class ladder, most specific first when read
/// bottom-up: every α-uniform game is normal, every normal game linear, etc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GameClass {
    General,
    Graphical,
    Affine,
    Linear,
    Normal,
    AlphaUniform,
}

impl GameClass {
    pub fn name(self) -> &'static str {
        match self {
            GameClass::General => "general",
            GameClass::Graphical => "graphical",
            GameClass::Affine => "affine",
            GameClass::Linear => "linear",
            GameClass::Normal => "normal",
            GameClass::AlphaUniform => "alpha-uniform",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification<S> {
    pub class: GameClass,
    /// Symmetric influences; always false for general games.
    pub symmetric: bool,
    /// Common off-diagonal coefficient of an α-uniform game with at least one arc.
    pub alpha: Option<S>,
}

impl<S: Scalar> Classification<S> {
    /// `"symmetric-graphical"` for symmetric graphical games that are not
    /// affine, otherwise the class name.
    pub fn label(&self) -> &'static str {
        if self.class == GameClass::Graphical && self.symmetric {
            "symmetric-graphical"
        } else {
            self.class.name()
        }
    }

    pub fn is_at_least(&self, class: GameClass) -> bool {
        self.class >= class
    }
}

/// Condition (i) problems found when sampling vertex-cost functions.
#[derive(Clone, Debug, PartialEq)]
pub enum ValidationWarning {
    /// `f(t) = 0` at some `t > 0`.
    NotPositive { vertex: usize, at: f64 },
    /// `f` decreased between consecutive grid points.
    NotMonotone { vertex: usize, at: f64 },
}

/// A nonatomic neighbourhood balancing game `(n, r, C)`.
#[derive(Clone, Debug)]
pub struct Game<S: Scalar> {
    n: usize,
    r: S,
    kind: GameKind<S>,
}

impl<S: Scalar> Game<S> {
    pub fn general(r: S, evaluators: Vec<CostEvaluator<S>>) -> Result<Self> {
        if r <= S::zero() {
            return Err(NbgError::NonPositiveMass);
        }
        if evaluators.is_empty() {
            return Err(NbgError::InvalidParameter("a game needs at least one vertex".into()));
        }
        Ok(Game { n: evaluators.len(), r, kind: GameKind::General(evaluators) })
    }

    pub fn graphical(r: S, vertex_costs: Vec<VertexCostFn<S>>, influence: InfluenceMatrix<S>) -> Result<Self> {
        if r <= S::zero() {
            return Err(NbgError::NonPositiveMass);
        }
        let n = vertex_costs.len();
        if n == 0 {
            return Err(NbgError::InvalidParameter("a game needs at least one vertex".into()));
        }
        if influence.n() != n {
            return Err(NbgError::DimensionMismatch { expected: n, got: influence.n() });
        }
        for (i, f) in vertex_costs.iter().enumerate() {
            f.check_coefficients(i)?;
        }
        Ok(Game { n, r, kind: GameKind::Graphical { vertex_costs, influence } })
    }

    /// Normal linear game `C_i(x) = x_i + Σ_j α_{j,i} x_j`.
    pub fn normal_linear(r: S, influence: InfluenceMatrix<S>) -> Result<Self> {
        let n = influence.n();
        Self::graphical(r, vec![VertexCostFn::identity(); n], influence)
    }

    /// Symmetric α-uniform game on an undirected edge list.
    pub fn alpha_uniform(n: usize, edges: &[(usize, usize)], alpha: S, r: S) -> Result<Self> {
        let influence = InfluenceMatrix::symmetric(n, edges.iter().map(|&(i, j)| (i, j, alpha.clone())))?;
        Self::normal_linear(r, influence)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &S {
        &self.r
    }

    pub fn kind(&self) -> &GameKind<S> {
        &self.kind
    }

    pub fn vertex_costs(&self) -> Option<&[VertexCostFn<S>]> {
        match &self.kind {
            GameKind::Graphical { vertex_costs, .. } => Some(vertex_costs),
            GameKind::General(_) => None,
        }
    }

    pub fn influence(&self) -> Option<&InfluenceMatrix<S>> {
        match &self.kind {
            GameKind::Graphical { influence, .. } => Some(influence),
            GameKind::General(_) => None,
        }
    }

    pub fn is_graphical(&self) -> bool {
        matches!(self.kind, GameKind::Graphical { .. })
    }

    pub fn is_symmetric_graphical(&self) -> bool {
        self.influence().is_some_and(InfluenceMatrix::is_symmetric)
    }

    /// Errors unless `x` has `n` entries and total `r`.
    pub fn check_distribution(&self, x: &MassDistribution<S>) -> Result<()> {
        if x.n() != self.n {
            return Err(NbgError::DimensionMismatch { expected: self.n, got: x.n() });
        }
        let scale = if self.r > S::one() { self.r.clone() } else { S::one() };
        if (x.total().clone() - self.r.clone()).abs() > S::mass_tolerance() * scale {
            return Err(NbgError::TotalMismatch { expected: self.r.to_f64(), got: x.total().to_f64() });
        }
        Ok(())
    }

    /// `(C_1(x), …, C_n(x))`.
    pub fn cost_vector(&self, x: &MassDistribution<S>) -> Result<Vec<S>> {
        self.check_distribution(x)?;
        Ok(self.costs_at(x.masses()))
    }

    /// Costs at a raw mass vector, without validating it.
    pub fn costs_at(&self, x: &[S]) -> Vec<S> {
        (0..self.n).map(|i| self.cost_at(i, x)).collect()
    }

    pub fn cost_at(&self, i: usize, x: &[S]) -> S {
        match &self.kind {
            GameKind::General(c) => c[i](x),
            GameKind::Graphical { vertex_costs, influence } => influence
                .incoming(i)
                .iter()
                .fold(vertex_costs[i].eval(&x[i]), |acc, (j, a)| acc + a.clone() * x[*j].clone()),
        }
    }

    /// Intercepts and coefficient matrix when the game is affine.
    pub fn affine_costs(&self) -> Option<AffineCosts<S>> {
        let GameKind::Graphical { vertex_costs, influence } = &self.kind else {
            return None;
        };
        let mut coeff = vec![vec![S::zero(); self.n]; self.n];
        let mut intercept = Vec::with_capacity(self.n);
        for (i, f) in vertex_costs.iter().enumerate() {
            let (slope, b) = f.affine_parts()?;
            coeff[i][i] = slope;
            intercept.push(b);
        }
        for (i, j, a) in influence.entries() {
            coeff[j][i] = a.clone();
        }
        Some(AffineCosts { intercept, coeff })
    }

    pub fn classify(&self) -> Classification<S> {
        let GameKind::Graphical { vertex_costs, influence } = &self.kind else {
            return Classification { class: GameClass::General, symmetric: false, alpha: None };
        };
        let symmetric = influence.is_symmetric();
        let graphical = Classification { class: GameClass::Graphical, symmetric, alpha: None };
        let Some(parts) = vertex_costs.iter().map(VertexCostFn::affine_parts).collect::<Option<Vec<_>>>() else {
            return graphical;
        };
        if !parts.iter().all(|(_, b)| b.is_zero()) {
            return Classification { class: GameClass::Affine, ..graphical };
        }
        if !parts.iter().all(|(a, _)| *a == S::one()) {
            return Classification { class: GameClass::Linear, ..graphical };
        }
        let mut values = influence.entries().map(|(_, _, v)| v);
        let first = values.next().cloned();
        if values.all(|v| Some(v) == first.as_ref()) {
            Classification { class: GameClass::AlphaUniform, symmetric, alpha: first }
        } else {
            Classification { class: GameClass::Normal, ..graphical }
        }
    }

    /// Arcs `(i, j)` with `α_{i,j} > 0`; undirected when the game is symmetric.
    pub fn underlying_graph(&self) -> Result<UnderlyingGraph> {
        let influence = self.influence().ok_or(NbgError::NotGraphical)?;
        if influence.is_symmetric() {
            let edges = influence.entries().filter(|(i, j, _)| i < j).map(|(i, j, _)| (i, j)).collect();
            Ok(UnderlyingGraph::Undirected { n: self.n, edges })
        } else {
            Ok(UnderlyingGraph::Directed(Digraph::new(
                self.n,
                influence.entries().map(|(i, j, _)| (i, j)),
            )?))
        }
    }

    /// Neighbourhood `N[i]`: the in-neighbours of `i` (its neighbours when symmetric).
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        self.influence().map(|m| m.incoming(i).iter().map(|(j, _)| *j).collect()).unwrap_or_default()
    }

    /// Samples every vertex-cost function on a 101-point grid over `[0, r]`
    /// and reports violations of positivity or monotonicity. Violations are
    /// warnings, not errors: counterexample games rely on them.
    pub fn validate(&self) -> Vec<ValidationWarning> {
        let Some(costs) = self.vertex_costs() else {
            return Vec::new();
        };
        let r = self.r.to_f64();
        let mut warnings = Vec::new();
        for (v, f) in costs.iter().enumerate() {
            let f = f.to_f64();
            let mut prev = f.eval(&0.0);
            let mut positive_flagged = false;
            for k in 1..=100 {
                let t = r * k as f64 / 100.0;
                let y = f.eval(&t);
                if y <= 0.0 && !positive_flagged {
                    warnings.push(ValidationWarning::NotPositive { vertex: v, at: t });
                    positive_flagged = true;
                }
                if y < prev - 1e-12 {
                    warnings.push(ValidationWarning::NotMonotone { vertex: v, at: t });
                    break;
                }
                prev = y;
            }
        }
        warnings
    }

    /// Float copy of the game. Opaque and general evaluators are wrapped.
    pub fn to_float(&self) -> Game<f64> {
        let kind = match &self.kind {
            GameKind::General(c) => GameKind::General(
                c.iter()
                    .map(|f| {
                        let f = f.clone();
                        let wrapped: CostEvaluator<f64> = Arc::new(move |x: &[f64]| {
                            let xs: Vec<S> = x.iter().map(|v| S::from_f64(*v)).collect();
                            f(&xs).to_f64()
                        });
                        wrapped
                    })
                    .collect(),
            ),
            GameKind::Graphical { vertex_costs, influence } => GameKind::Graphical {
                vertex_costs: vertex_costs.iter().map(VertexCostFn::to_f64).collect(),
                influence: influence.to_f64(),
            },
        };
        Game { n: self.n, r: self.r.to_f64(), kind }
    }
}
