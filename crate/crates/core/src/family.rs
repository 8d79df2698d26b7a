//! Affine families of equilibria: `x(t) = base + Σ_k t_k d_k` with common cost
//! `c(t) = c0 + Σ_k t_k e_k`, restricted to the polytope `{t : g·t + h ≥ 0}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{solve, LinearSolution, Matrix};
use crate::scalar::Scalar;

/// Half-space `coeffs · t + offset ≥ 0` in parameter space.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub offset: S,
}

impl<S: Scalar> Constraint<S> {
    pub fn value(&self, t: &[S]) -> S {
        dot(&self.coeffs, t) + self.offset.clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AffineFamily<S> {
    /// Vertices allowed to carry mass somewhere on the family.
    pub support: Vec<usize>,
    pub base: Vec<S>,
    pub directions: Vec<Vec<S>>,
    pub cost_base: S,
    pub cost_directions: Vec<S>,
    pub constraints: Vec<Constraint<S>>,
    vertices: Vec<Vec<S>>,
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn feasible<S: Scalar>(constraints: &[Constraint<S>], t: &[S]) -> bool {
    let tol = -S::mass_tolerance();
    constraints.iter().all(|c| c.value(t) >= tol)
}

fn close<S: Scalar>(a: &[S], b: &[S]) -> bool {
    let tol = S::mass_tolerance();
    a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).abs() <= tol)
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub(crate) fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < i + m - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl<S: Scalar> AffineFamily<S> {
    /// Builds the family and enumerates the vertices of its parameter
    /// polytope. Returns `None` when the polytope is empty. The polytope must
    /// be bounded, which holds whenever the constraints include `x ≥ 0`.
    pub fn new(
        support: Vec<usize>,
        base: Vec<S>,
        directions: Vec<Vec<S>>,
        cost_base: S,
        cost_directions: Vec<S>,
        constraints: Vec<Constraint<S>>,
    ) -> Option<Self> {
        let d = directions.len();
        let mut vertices: Vec<Vec<S>> = Vec::new();
        if d == 0 {
            if feasible(&constraints, &[]) {
                vertices.push(Vec::new());
            }
        } else {
            for subset in subsets(constraints.len(), d) {
                let a = Matrix::from_fn(d, d, |r, c| constraints[subset[r]].coeffs[c].clone());
                let b: Vec<S> = subset.iter().map(|&k| -constraints[k].offset.clone()).collect();
                if let LinearSolution::Unique(t) = solve(&a, &b) {
                    if feasible(&constraints, &t) && !vertices.iter().any(|v| close(v, &t)) {
                        vertices.push(t);
                    }
                }
            }
        }
        if vertices.is_empty() {
            return None;
        }
        Some(AffineFamily { support, base, directions, cost_base, cost_directions, constraints, vertices })
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// Vertices of the parameter polytope.
    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    /// Average of the polytope vertices; a relative-interior parameter.
    pub fn centroid(&self) -> Vec<S> {
        let d = self.dimension();
        let k = S::from_i64(self.vertices.len() as i64);
        (0..d)
            .map(|c| self.vertices.iter().fold(S::zero(), |acc, v| acc + v[c].clone()) / k.clone())
            .collect()
    }

    pub fn point_at(&self, t: &[S]) -> Vec<S> {
        let mut x = self.base.clone();
        for (tk, dir) in t.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi = xi.clone() + tk.clone() * di.clone();
            }
        }
        x
    }

    pub fn cost_at(&self, t: &[S]) -> S {
        dot(&self.cost_directions, t) + self.cost_base.clone()
    }

    pub fn is_feasible(&self, t: &[S]) -> bool {
        feasible(&self.constraints, t)
    }

    /// Parameter of `x` when `x` lies on the family.
    pub fn parameter_of(&self, x: &[S]) -> Option<Vec<S>> {
        let d = self.dimension();
        let n = self.n();
        if x.len() != n {
            return None;
        }
        let diff: Vec<S> = x.iter().zip(&self.base).map(|(a, b)| a.clone() - b.clone()).collect();
        let t = if d == 0 {
            Vec::new()
        } else {
            // Normal equations DᵀD t = Dᵀ(x − base); D has full column rank.
            let gram = Matrix::from_fn(d, d, |a, b| dot(&self.directions[a], &self.directions[b]));
            let rhs: Vec<S> = self.directions.iter().map(|dir| dot(dir, &diff)).collect();
            match solve(&gram, &rhs) {
                LinearSolution::Unique(t) => t,
                _ => return None,
            }
        };
        (close(&self.point_at(&t), x) && self.is_feasible(&t)).then_some(t)
    }

    pub fn contains(&self, x: &[S]) -> bool {
        self.parameter_of(x).is_some()
    }

    /// Deterministic parameter samples: the centroid, then the polytope
    /// vertices, then midpoints between the centroid and each vertex.
    pub fn sample_parameters(&self, count: usize) -> Vec<Vec<S>> {
        let centroid = self.centroid();
        let two = S::from_i64(2);
        let mut out = vec![centroid.clone()];
        out.extend(self.vertices.iter().cloned());
        out.extend(self.vertices.iter().map(|v| {
            v.iter().zip(&centroid).map(|(a, b)| (a.clone() + b.clone()) / two.clone()).collect()
        }));
        out.truncate(count);
        out
    }

    pub fn sample_points(&self, count: usize) -> Vec<Vec<S>> {
        self.sample_parameters(count).iter().map(|t| self.point_at(t)).collect()
    }

    pub fn to_f64(&self) -> AffineFamily<f64> {
        let conv = |v: &[S]| v.iter().map(Scalar::to_f64).collect::<Vec<f64>>();
        AffineFamily {
            support: self.support.clone(),
            base: conv(&self.base),
            directions: self.directions.iter().map(|d| conv(d)).collect(),
            cost_base: self.cost_base.to_f64(),
            cost_directions: conv(&self.cost_directions),
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint { coeffs: conv(&c.coeffs), offset: c.offset.to_f64() })
                .collect(),
            vertices: self.vertices.iter().map(|v| conv(v)).collect(),
        }
    }
}

/// Family `x(t) = base + Σ t_k d_k` constrained only by `x ≥ 0`.
pub fn nonnegative_family<S: Scalar>(
    base: Vec<S>,
    directions: Vec<Vec<S>>,
    cost_base: S,
    cost_directions: Vec<S>,
) -> Option<AffineFamily<S>> {
    let n = base.len();
    let constraints = (0..n)
        .map(|i| Constraint {
            coeffs: directions.iter().map(|d| d[i].clone()).collect(),
            offset: base[i].clone(),
        })
        .collect();
    let support = (0..n).filter(|&i| !base[i].is_zero() || directions.iter().any(|d| !d[i].is_zero())).collect();
    AffineFamily::new(support, base, directions, cost_base, cost_directions, constraints)
}
