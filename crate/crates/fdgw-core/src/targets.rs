//! The Fano target catalog: smooth hypersurfaces in projective space
//! (projective space itself being the degree-1 case) and projective bundles
//! `P(O + O(a_1) + ... + O(a_r))` over `P^{n-r}`, together with their
//! intersection-theory data, generality attributes, and Fujita thresholds.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::exact::{
    cone_threshold, ClassVector, CurveClass, DivisorClass, Pairing, Rational, RationalCone,
    Threshold,
};

/// Declared geometric attributes of a hypersurface.  These are hypotheses the
/// caller asserts about the target; no equations are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct HypersurfaceAttrs {
    /// The hypersurface is general in its linear system.
    pub general: bool,
    /// The hypersurface is a Fermat hypersurface; this implies a conical
    /// hyperplane section, so construction auto-derives the conical data.
    pub fermat: bool,
    /// The hypersurface carries a hyperplane section that is a cone:
    /// an irreducible divisor whose every point lies on a line through a
    /// fixed vertex.  Carries the dimension of the line family through the
    /// vertex (>= 1); only the vertex property is used downstream.
    pub conical: Option<ConicalAttr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicalAttr {
    pub t_line_family: i64,
}

/// A smooth hypersurface of degree `d` in `P^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceTarget {
    pub n: i64,
    pub d: i64,
    pub attrs: HypersurfaceAttrs,
}

/// Builds a hypersurface target, validating the Fano range and flag
/// consistency.  `general` and `conical` are mutually exclusive (a general
/// member of the linear system is not asserted to carry a cone section), and
/// `fermat` auto-flags the conical attribute.
pub fn make_hypersurface(n: i64, d: i64, mut attrs: HypersurfaceAttrs) -> Result<HypersurfaceTarget> {
    if n < 3 {
        return Err(CoreError::InvalidShape(format!(
            "hypersurface ambient dimension n = {n} must be at least 3"
        )));
    }
    if d < 1 {
        return Err(CoreError::InvalidShape(format!(
            "hypersurface degree d = {d} must be at least 1"
        )));
    }
    if d > n {
        return Err(CoreError::NotFano(format!(
            "degree {d} hypersurface in P^{n} has non-negative canonical class"
        )));
    }
    if attrs.fermat && attrs.conical.is_none() && d >= 2 && n >= 4 {
        // A Fermat hypersurface of degree >= 2 in P^n, n >= 4, has a
        // hyperplane section which is a cone; record that as derived data.
        attrs.conical = Some(ConicalAttr {
            t_line_family: t_generality_raw(n, d),
        });
    }
    if let Some(c) = attrs.conical {
        if d < 2 {
            return Err(CoreError::InvalidAttributes(
                "a hyperplane in P^n is not conical; conical requires d >= 2".into(),
            ));
        }
        if c.t_line_family < 1 {
            return Err(CoreError::InvalidAttributes(
                "conical targets carry a line family of dimension >= 1 through the vertex".into(),
            ));
        }
        if attrs.general {
            return Err(CoreError::InvalidAttributes(
                "general and conical are mutually exclusive".into(),
            ));
        }
    }
    Ok(HypersurfaceTarget { n, d, attrs })
}

impl HypersurfaceTarget {
    /// dim X = n - 1.
    pub fn dim(&self) -> i64 {
        self.n - 1
    }

    /// Fano index r = n - d + 1 (codimension-1 case of the complete
    /// intersection index formula).
    pub fn index(&self) -> i64 {
        self.n - self.d + 1
    }

    pub fn is_conical(&self) -> bool {
        self.attrs.conical.is_some()
    }

    /// Anticanonical divisor class in the rank-1 lattice generated by the
    /// hyperplane restriction: -K = r * H|_X, recorded as the multiple of the
    /// ample generator of the curve-pairing dual.
    pub fn anticanonical(&self) -> DivisorClass {
        ClassVector::of_i64(&[self.index()])
    }

    pub fn pairing(&self) -> Pairing {
        Pairing::of_i64(&[&[1]])
    }

    /// Anticanonical degree of `e` times the line class.
    pub fn anticanonical_degree(&self, beta: &CurveClass) -> Result<i64> {
        if beta.rank() != 1 {
            return Err(CoreError::RankMismatch {
                expected: 1,
                got: beta.rank(),
            });
        }
        let e = i64::try_from(beta.coords()[0].clone())
            .map_err(|_| CoreError::InvalidInput("curve class out of i64 range".into()))?;
        Ok(e * self.index())
    }

    pub fn is_effective(&self, beta: &CurveClass) -> bool {
        beta.rank() == 1 && !beta.coords()[0].is_negative()
    }
}

fn t_generality_raw(n: i64, d: i64) -> i64 {
    if d < n {
        1
    } else {
        2
    }
}

/// Least `t` for which the hypersurface is known to be covered by free
/// rational curves of anticanonical degree `t * r`: 1 when `d <= n-1`
/// (covered by free lines), 2 when `d = n` (covered by free conics).
pub fn t_generality(target: &HypersurfaceTarget) -> i64 {
    t_generality_raw(target.n, target.d)
}

/// A Fano projective bundle `X = P(O + O(a_1) + ... + O(a_r))` over
/// `P^{n-r}`, with `dim X = n` and `0 <= a_1 <= ... <= a_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjBundleTarget {
    pub n: i64,
    pub r: i64,
    pub a: Vec<i64>,
}

/// Builds a projective bundle target, checking the shape and the Fano
/// condition `sum a_i <= n - r`.
pub fn make_proj_bundle(n: i64, r: i64, a: Vec<i64>) -> Result<ProjBundleTarget> {
    if r < 1 {
        return Err(CoreError::InvalidShape(format!(
            "fiber dimension r = {r} must be at least 1"
        )));
    }
    if n <= r + 1 {
        return Err(CoreError::InvalidShape(format!(
            "projective bundle needs n > r + 1, got n = {n}, r = {r}"
        )));
    }
    if a.len() != r as usize {
        return Err(CoreError::InvalidShape(format!(
            "expected {r} twist degrees, got {}",
            a.len()
        )));
    }
    if a.iter().any(|&ai| ai < 0) || a.windows(2).any(|w| w[0] > w[1]) {
        return Err(CoreError::InvalidShape(
            "twist degrees must be nonnegative and nondecreasing".into(),
        ));
    }
    let sum: i64 = a.iter().sum();
    if sum > n - r {
        return Err(CoreError::NotFano(format!(
            "sum of twist degrees {sum} exceeds n - r = {}",
            n - r
        )));
    }
    Ok(ProjBundleTarget { n, r, a })
}

impl ProjBundleTarget {
    pub fn dim(&self) -> i64 {
        self.n
    }

    pub fn sum_a(&self) -> i64 {
        self.a.iter().sum()
    }

    pub fn a_max(&self) -> i64 {
        *self.a.last().expect("r >= 1 twist degrees")
    }

    /// gamma = n - r + 1 - sum a_i, the H-coefficient of -K_X.
    pub fn gamma(&self) -> i64 {
        self.n - self.r + 1 - self.sum_a()
    }

    /// Anticanonical class -K = (r+1) xi + gamma H in the (xi, H) basis.
    pub fn anticanonical(&self) -> DivisorClass {
        ClassVector::of_i64(&[self.r + 1, self.gamma()])
    }

    /// Intersection pairing of the (xi, H) divisor basis against the
    /// (ell, C) curve basis: xi.ell = 1, H.ell = 0, xi.C = 0, H.C = 1.
    pub fn pairing(&self) -> Pairing {
        Pairing::of_i64(&[&[1, 0], &[0, 1]])
    }

    /// Nef cone of divisors <xi, H>.
    pub fn nef_divisors(&self) -> RationalCone {
        RationalCone::of_i64(&[&[1, 0], &[0, 1]])
    }

    /// Pseudo-effective cone of divisors <xi - a_r H, H>.
    pub fn eff_divisors(&self) -> RationalCone {
        RationalCone::of_i64(&[&[1, -self.a_max()], &[0, 1]])
    }

    /// Pseudo-effective cone of curves <ell, C>.
    pub fn eff_curves(&self) -> RationalCone {
        RationalCone::of_i64(&[&[1, 0], &[0, 1]])
    }

    /// Nef cone of curves <ell, a_r ell + C>.
    pub fn nef_curves(&self) -> RationalCone {
        RationalCone::of_i64(&[&[1, 0], &[self.a_max(), 1]])
    }

    /// Anticanonical degree of alpha*ell + beta*C, namely
    /// alpha*(r+1) + beta*gamma.
    pub fn anticanonical_degree(&self, beta: &CurveClass) -> Result<i64> {
        if beta.rank() != 2 {
            return Err(CoreError::RankMismatch {
                expected: 2,
                got: beta.rank(),
            });
        }
        let alpha = i64::try_from(beta.coords()[0].clone())
            .map_err(|_| CoreError::InvalidInput("curve class out of i64 range".into()))?;
        let b = i64::try_from(beta.coords()[1].clone())
            .map_err(|_| CoreError::InvalidInput("curve class out of i64 range".into()))?;
        Ok(alpha * (self.r + 1) + b * self.gamma())
    }

    pub fn is_effective(&self, beta: &CurveClass) -> bool {
        beta.rank() == 2 && beta.coords().iter().all(|c| !c.is_negative())
    }
}

/// A numeric Fano target with explicit class-group data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Hypersurface(HypersurfaceTarget),
    ProjBundle(ProjBundleTarget),
}

impl Target {
    pub fn dim(&self) -> i64 {
        match self {
            Target::Hypersurface(h) => h.dim(),
            Target::ProjBundle(b) => b.dim(),
        }
    }

    pub fn anticanonical(&self) -> DivisorClass {
        match self {
            Target::Hypersurface(h) => h.anticanonical(),
            Target::ProjBundle(b) => b.anticanonical(),
        }
    }

    pub fn anticanonical_degree(&self, beta: &CurveClass) -> Result<i64> {
        match self {
            Target::Hypersurface(h) => h.anticanonical_degree(beta),
            Target::ProjBundle(b) => b.anticanonical_degree(beta),
        }
    }

    pub fn is_effective(&self, beta: &CurveClass) -> bool {
        match self {
            Target::Hypersurface(h) => h.is_effective(beta),
            Target::ProjBundle(b) => b.is_effective(beta),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Target::Hypersurface(h) if h.d == 1 => format!("P^{}", h.n - 1),
            Target::Hypersurface(h) => {
                format!("degree-{} hypersurface in P^{}", h.d, h.n)
            }
            Target::ProjBundle(b) => {
                let twists: Vec<String> = b.a.iter().map(|ai| format!("O({ai})")).collect();
                format!("P(O + {}) over P^{}", twists.join(" + "), b.n - b.r)
            }
        }
    }
}

/// Fujita invariant of the resolved cone divisor on a hypersurface with a
/// conical hyperplane section, in the range `(n+3)/2 < d < n-2`.
///
/// The resolution `P(O + O(1))` over the base of the cone has canonical class
/// `-2 xi + (d + 2 - n) L` and pseudo-effective cone `<L, xi - L>`; the least
/// `t` with `K + t (n+1-d) xi` pseudo-effective is computed by the rank-2
/// threshold and cross-checked against the closed form `(n-d)/(n+1-d)`.
pub fn fujita_cone_resolution(n: i64, d: i64) -> Result<Rational> {
    // Strict bounds, kept exact: 2d > n + 3 and d < n - 2.
    if !(2 * d > n + 3 && d < n - 2) {
        return Err(CoreError::DomainError(format!(
            "cone-resolution Fujita invariant needs (n+3)/2 < d < n-2, got n = {n}, d = {d}"
        )));
    }
    let eff = RationalCone::of_i64(&[&[0, 1], &[1, -1]]);
    let canonical = ClassVector::of_i64(&[-2, d + 2 - n]);
    let direction = ClassVector::of_i64(&[n + 1 - d, 0]);
    let threshold = match cone_threshold(&eff, &canonical, &direction)? {
        Threshold::Least(t) => t,
        Threshold::NoThreshold => {
            return Err(CoreError::Internal(
                "anticanonical direction failed to reach the pseudo-effective cone".into(),
            ))
        }
    };
    let closed_form = Rational::new(n - d, n + 1 - d)?;
    if threshold != closed_form {
        return Err(CoreError::Internal(format!(
            "cone threshold {threshold} disagrees with closed form {closed_form}"
        )));
    }
    Ok(threshold)
}
