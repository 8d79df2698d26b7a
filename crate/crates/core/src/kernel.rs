//! Digraph kernels and their correspondence with strong equilibria of
//! normal linear games whose influences all exceed one.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::equilibrium::verify_delta_strong;
use crate::error::NbgError;
use crate::game::{Game, GameClass, InfluenceMatrix, MassDistribution};
use crate::graph::Digraph;
use crate::scalar::Scalar;
use crate::supports::{solve_affine_by_supports, SolveResult};
use crate::Result;

/// Largest digraph accepted by [`enumerate_kernels`].
pub const KERNEL_LIMIT: usize = 24;
/// Largest digraph accepted by [`strong_supports_match_kernels`].
pub const CORRESPONDENCE_LIMIT: usize = 10;

/// No arc joins two vertices of `set`.
pub fn is_stable(d: &Digraph, set: &[usize]) -> bool {
    set.iter().all(|&v| set.iter().all(|&w| !d.has_arc(v, w)))
}

/// Every vertex outside `set` has an in-arc from `set`.
pub fn is_dominating(d: &Digraph, set: &[usize]) -> bool {
    (0..d.n()).filter(|z| !set.contains(z)).all(|z| set.iter().any(|&v| d.has_arc(v, z)))
}

pub fn is_kernel(d: &Digraph, set: &[usize]) -> bool {
    is_stable(d, set) && is_dominating(d, set)
}

/// All kernels, by increasing size and then by bitmask.
pub fn enumerate_kernels(d: &Digraph) -> Result<Vec<Vec<usize>>> {
    let n = d.n();
    if n > KERNEL_LIMIT {
        return Err(NbgError::TooLarge { n, max: KERNEL_LIMIT });
    }
    let mut out_mask = alloc::vec![0u32; n];
    for (i, j) in d.arcs() {
        out_mask[i] |= 1 << j;
    }
    let full: u32 = (1u32 << n) - 1;
    let mut found: Vec<u32> = Vec::new();
    for mask in 0..=full {
        let mut ok = true;
        let mut covered = mask;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if out_mask[v] & mask != 0 {
                ok = false;
                break;
            }
            covered |= out_mask[v];
        }
        if ok && covered == full {
            found.push(mask);
        }
    }
    found.sort_by_key(|m| (m.count_ones(), *m));
    Ok(found
        .into_iter()
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect())
}

/// Normal linear game with `α_{i,j} = α` on every arc `(i, j)`.
pub fn digraph_to_nbg<S: Scalar>(d: &Digraph, alpha: S, r: S) -> Result<Game<S>> {
    if alpha <= S::one() {
        return Err(NbgError::InvalidParameter(format!("alpha must exceed 1, got {alpha}")));
    }
    let influence = InfluenceMatrix::new(d.n(), d.arcs().map(|(i, j)| (i, j, alpha.clone())))?;
    Game::normal_linear(r, influence)
}

/// Ordered pairs `(i, j)` breaking the hypothesis of the kernel
/// correspondence: `α_{i,j} > 0 ⇒ α_{i,j} > 1` and `α_{i,j} + α_{j,i} > 2`.
pub fn kernel_hypothesis_violations<S: Scalar>(game: &Game<S>) -> Result<Vec<(usize, usize)>> {
    if !game.classify().is_at_least(GameClass::Normal) {
        return Err(NbgError::InvalidParameter("kernel correspondence needs a normal linear game".into()));
    }
    let m = game.influence().ok_or(NbgError::NotGraphical)?;
    let two = S::from_i64(2);
    Ok(m.entries()
        .filter(|(i, j, a)| **a <= S::one() || (*a).clone() + m.get(*j, *i) <= two)
        .map(|(i, j, _)| (i, j))
        .collect())
}

/// Mass `r/|K|` on each kernel vertex.
pub fn kernel_to_strong_equilibrium<S: Scalar>(kernel: &[usize], n: usize, r: S) -> Result<MassDistribution<S>> {
    if kernel.is_empty() {
        return Err(NbgError::InvalidParameter("kernel must be nonempty".into()));
    }
    MassDistribution::on_support(n, kernel, r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelDiscrepancy {
    /// A kernel that is not the support of any strong equilibrium found.
    KernelWithoutStrongEquilibrium(Vec<usize>),
    /// A strong equilibrium whose support is not a kernel.
    StrongSupportNotKernel(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelComparison {
    pub kernels: Vec<Vec<usize>>,
    pub strong_supports: Vec<Vec<usize>>,
    /// Supports of equilibria that are not strong at any tested δ.
    pub weak_supports: Vec<Vec<usize>>,
    pub discrepancies: Vec<KernelDiscrepancy>,
}

impl KernelComparison {
    pub fn matches(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compares the kernels of `d` with the supports of strong equilibria of
/// [`digraph_to_nbg`]`(d, α, r)`. An equilibrium counts as strong when it is
/// δ-strong for some δ in `delta_grid` or for `δ = r/|support|`. Families are
/// examined at their sample points.
pub fn strong_supports_match_kernels<S: Scalar>(
    d: &Digraph,
    alpha: S,
    r: S,
    delta_grid: &[S],
) -> Result<KernelComparison> {
    let n = d.n();
    if n > CORRESPONDENCE_LIMIT {
        return Err(NbgError::TooLarge { n, max: CORRESPONDENCE_LIMIT });
    }
    let kernels = enumerate_kernels(d)?;
    let game = digraph_to_nbg(d, alpha, r.clone())?;
    let results = solve_affine_by_supports(&game, CORRESPONDENCE_LIMIT)?;
    let mut strong = BTreeSet::new();
    let mut weak = BTreeSet::new();
    for result in &results {
        let samples = match result {
            SolveResult::Point(p) => alloc::vec![p.x.clone()],
            SolveResult::Family(f) => f
                .sample_points(1 + 2 * f.vertices().len())
                .into_iter()
                .filter_map(|x| MassDistribution::new(x, r.clone()).ok())
                .collect(),
        };
        for x in samples {
            let support = x.support();
            let own = r.clone() / S::from_i64(support.len() as i64);
            let mut is_strong = false;
            for delta in delta_grid.iter().chain(core::iter::once(&own)) {
                if verify_delta_strong(&game, &x, delta)?.is_strong() {
                    is_strong = true;
                    break;
                }
            }
            if is_strong {
                strong.insert(support);
            } else {
                weak.insert(support);
            }
        }
    }
    let kernel_set: BTreeSet<Vec<usize>> = kernels.iter().cloned().collect();
    let mut discrepancies = Vec::new();
    for k in &kernels {
        if !strong.contains(k) {
            discrepancies.push(KernelDiscrepancy::KernelWithoutStrongEquilibrium(k.clone()));
        }
    }
    for s in &strong {
        if !kernel_set.contains(s) {
            discrepancies.push(KernelDiscrepancy::StrongSupportNotKernel(s.clone()));
        }
    }
    Ok(KernelComparison {
        kernels,
        strong_supports: strong.into_iter().collect(),
        weak_supports: weak.into_iter().collect(),
        discrepancies,
    })
}
