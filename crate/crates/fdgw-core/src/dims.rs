//! Expected-dimension bookkeeping, as exact integer functions: fixed-domain
//! triples, virtual dimensions of pointed map spaces, the dimension budgets
//! for curves through many or few general points, the map-space dimension to
//! projective space from a fixed general curve, and the chain bounds for
//! hypersurfaces.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::exact::{cone_contains, ClassVector, CurveClass};
use crate::targets::{ProjBundleTarget, Target};

/// A numerical fixed-domain triple `(g, delta, m)`: the balance condition
/// `delta + N(1-g) = m*N` (N = target dimension) makes the point-incidence
/// problem zero-dimensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedDomainTriple {
    pub g: i64,
    pub delta: i64,
    pub m: i64,
}

impl FixedDomainTriple {
    pub fn new(dim: i64, g: i64, delta: i64, m: i64) -> Result<Self> {
        if g < 0 || m < 0 || delta < 0 {
            return Err(CoreError::InvalidModuli(
                "triple entries must be nonnegative".into(),
            ));
        }
        if 3 * g - 3 + m < 0 {
            return Err(CoreError::InvalidModuli(format!(
                "moduli of stable curves needs 3g - 3 + m >= 0, got g = {g}, m = {m}"
            )));
        }
        if delta + dim * (1 - g) != m * dim {
            return Err(CoreError::InvalidModuli(format!(
                "unbalanced triple: delta = {delta}, dim = {dim}, g = {g}, m = {m}"
            )));
        }
        Ok(FixedDomainTriple { g, delta, m })
    }
}

/// The balanced triple with `delta = N(m + g - 1)` for a target of dimension
/// N; on threefolds this is the familiar `3m + 3g - 3`.
pub fn triple_from_m(target: &Target, g: i64, m: i64) -> Result<FixedDomainTriple> {
    triple_from_m_dim(target.dim(), g, m)
}

pub fn triple_from_m_dim(dim: i64, g: i64, m: i64) -> Result<FixedDomainTriple> {
    if g < 0 || m < 0 {
        return Err(CoreError::InvalidModuli(
            "genus and point count must be nonnegative".into(),
        ));
    }
    if 3 * g - 3 + m < 0 {
        return Err(CoreError::InvalidModuli(format!(
            "moduli of stable curves needs 3g - 3 + m >= 0, got g = {g}, m = {m}"
        )));
    }
    FixedDomainTriple::new(dim, g, dim * (m + g - 1), m)
}

/// Virtual dimension of the genus-g, m-pointed map space in class beta:
/// `-K.beta + (N - 3)(1 - g) + m`.
pub fn virtual_dim(target: &Target, g: i64, m: i64, beta: &CurveClass) -> Result<i64> {
    if !target.is_effective(beta) {
        return Err(CoreError::DomainError(format!(
            "class {beta} is not effective on {}",
            target.describe()
        )));
    }
    let deg = target.anticanonical_degree(beta)?;
    Ok(deg + (target.dim() - 3) * (1 - g) + m)
}

/// Excess of the virtual dimension over the dimension of the moduli-times-
/// points base; zero exactly when `deg beta` equals the triple's delta.
pub fn fiber_excess(target: &Target, triple: &FixedDomainTriple, beta: &CurveClass) -> Result<i64> {
    let vd = virtual_dim(target, triple.g, triple.m, beta)?;
    Ok(vd - (3 * triple.g - 3 + triple.m) - triple.m * target.dim())
}

/// Dimension of the space of maps through `m >= g + 1` general points from a
/// curve general in moduli; at such a point the map space has exactly the
/// expected dimension `-K.beta + (N - 3)(1 - g) + m`.
pub fn budget_many_points(target: &Target, g: i64, m: i64, beta: &CurveClass) -> Result<i64> {
    if m < g + 1 {
        return Err(CoreError::PreconditionViolated(format!(
            "the many-points budget requires m >= g + 1, got g = {g}, m = {m}"
        )));
    }
    virtual_dim(target, g, m, beta)
}

/// Upper bound for the local dimension of the map space over a general
/// `(curve, one point)` pair: `-K.beta + N - 3 + 2g + m`.  Callers must treat
/// this as an upper bound, never an equality.
pub fn budget_one_point_upper(target: &Target, g: i64, m: i64, beta: &CurveClass) -> Result<i64> {
    let deg = target.anticanonical_degree(beta)?;
    Ok(deg + target.dim() - 3 + 2 * g + m)
}

/// Bound `h^1(C, N) <= (N - 1) g` for the normal sheaf of a dominant curve
/// (generic global generation).
pub fn h1_upper(target: &Target, g: i64) -> i64 {
    (target.dim() - 1) * g
}

/// Dimension of the space of degree-`e` maps from a fixed general pointed
/// genus-`g` curve to `P^k` through `npts` fixed general points:
/// `e(k+1) + k - (npts + g) k`.  Nonnegativity is used as the existence
/// criterion, exactly as the interpolation results are used downstream.
pub fn maps_to_projspace_dim(k: i64, e: i64, g: i64, npts: i64) -> i64 {
    e * (k + 1) + k - (npts + g) * k
}

/// Expected dimension of the space of degree-`e` chains of rational curves
/// with `t` components on a degree-`d` hypersurface in `P^n`:
/// `e(n+1-d) + n - 3 - t`.
pub fn chain_expected_dim(n: i64, d: i64, e: i64, t: i64) -> i64 {
    e * (n + 1 - d) + n - 3 - t
}

/// Upper bound `n + d - 5` for the dimension of the space of non-free lines
/// on a smooth degree-`d` hypersurface in `P^n`.
pub fn nonfree_line_bound(n: i64, d: i64) -> i64 {
    n + d - 5
}

/// Upper bound `n - d + 1` for the dimension of the space of free conics
/// through two fixed points of a smooth degree-`d` hypersurface in `P^n`.
pub fn conic_two_point_bound(n: i64, d: i64) -> i64 {
    n - d + 1
}

/// Largest admissible degree of a single component in the chain induction:
/// `floor(2(n-1) / (n+1-d))`.  At most 2 for `d <= (n+3)/3` and at most 3
/// for `d < (n+3)/2`.
pub fn max_component_degree(n: i64, d: i64) -> i64 {
    debug_assert!(d <= n, "Fano hypersurface range");
    2 * (n - 1) / (n + 1 - d)
}

/// A chain of rational curves of total degree `e` with `t` components,
/// optionally decorated with the per-component degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainShape {
    pub e: i64,
    pub t: i64,
    pub splits: Option<Vec<i64>>,
}

impl ChainShape {
    pub fn new(e: i64, t: i64, splits: Option<Vec<i64>>) -> Result<Self> {
        if e < 0 || t < 1 {
            return Err(CoreError::InvalidInput(
                "chains need e >= 0 and t >= 1".into(),
            ));
        }
        if let Some(parts) = &splits {
            if parts.len() != t as usize {
                return Err(CoreError::InvalidInput(format!(
                    "expected {t} component degrees, got {}",
                    parts.len()
                )));
            }
            if parts.iter().any(|&p| p < 0) {
                return Err(CoreError::InvalidInput(
                    "component degrees must be nonnegative".into(),
                ));
            }
            if parts.iter().sum::<i64>() != e {
                return Err(CoreError::InvalidInput(format!(
                    "component degrees must sum to e = {e}"
                )));
            }
        }
        Ok(ChainShape { e, t, splits })
    }

    pub fn expected_dim(&self, n: i64, d: i64) -> i64 {
        chain_expected_dim(n, d, self.e, self.t)
    }
}

/// The effective classes `alpha*ell + beta*C` of a given anticanonical degree
/// on a projective bundle, each tagged with nef-cone membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedClass {
    pub class: CurveClass,
    pub nef: bool,
}

/// Enumerates all integral effective classes of anticanonical degree `delta`,
/// ordered by increasing ell-coefficient.
pub fn classes_of_degree(target: &ProjBundleTarget, delta: i64) -> Result<Vec<TaggedClass>> {
    if delta < 0 {
        return Ok(Vec::new());
    }
    let nef = target.nef_curves();
    let gamma = target.gamma();
    let fiber_deg = target.r + 1;
    let mut out = Vec::new();
    for alpha in 0..=delta / fiber_deg {
        let rest = delta - alpha * fiber_deg;
        if rest % gamma != 0 {
            continue;
        }
        let beta = rest / gamma;
        let class = ClassVector::of_i64(&[alpha, beta]);
        let is_nef = cone_contains(&nef, &class)?;
        out.push(TaggedClass { class, nef: is_nef });
    }
    Ok(out)
}
