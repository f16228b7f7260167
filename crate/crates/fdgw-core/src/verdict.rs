//! The verdict rule engine: combines positive theorems with the comb
//! constructions into cited per-genus conclusions for hypersurfaces,
//! projective bundles, and catalog threefolds.

use serde::{Deserialize, Serialize};

use crate::catalog::ThreefoldEntry;
use crate::error::{CoreError, Result};
use crate::targets::{
    make_hypersurface, make_proj_bundle, t_generality, ConicalAttr, HypersurfaceAttrs,
    HypersurfaceTarget, ProjBundleTarget,
};
use crate::witness::{bundle_comb, conical_comb, section_comb, CombAttempt, WitnessStratum};

/// Which genus the verdict question is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusQuery {
    All,
    At(i64),
}

impl GenusQuery {
    /// Genus used to instantiate a witness: the queried genus, or the given
    /// default for an all-genus query.
    fn witness_genus(self, default: i64) -> i64 {
        match self {
            GenusQuery::All => default,
            GenusQuery::At(g) => g,
        }
    }

    fn is_genus_zero(self) -> bool {
        matches!(self, GenusQuery::At(0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    Holds,
    Fails,
    Unknown,
}

/// The genus range a verdict is licensed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "genus", rename_all = "snake_case")]
pub enum GenusCondition {
    AllGenus,
    PositiveGenusOnly,
    SpecificGenus(i64),
}

/// One applied rule: its identifier, the mathematical fact it invokes, and a
/// target-specific explanation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub rule: String,
    pub citation: String,
    pub text: String,
}

/// The engine's conclusion on asymptotic enumerativity for one target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub genus_condition: GenusCondition,
    pub reasons: Vec<Reason>,
    pub witness: Option<WitnessStratum>,
}

impl Verdict {
    fn holds(rule: &str, citation: &str, text: String) -> Self {
        Verdict {
            status: VerdictStatus::Holds,
            genus_condition: GenusCondition::AllGenus,
            reasons: vec![Reason {
                rule: rule.into(),
                citation: citation.into(),
                text,
            }],
            witness: None,
        }
    }

    fn fails(
        rule: &str,
        citation: &str,
        text: String,
        genus_condition: GenusCondition,
        witness: WitnessStratum,
    ) -> Self {
        Verdict {
            status: VerdictStatus::Fails,
            genus_condition,
            reasons: vec![Reason {
                rule: rule.into(),
                citation: citation.into(),
                text,
            }],
            witness: Some(witness),
        }
    }

    fn unknown(rule: &str, text: String) -> Self {
        Verdict {
            status: VerdictStatus::Unknown,
            genus_condition: GenusCondition::AllGenus,
            reasons: vec![Reason {
                rule: rule.into(),
                citation: cite::UNKNOWN.into(),
                text,
            }],
            witness: None,
        }
    }
}

pub mod cite {
    //! Statements of the results the rule engine invokes.

    pub const HYPERSURFACE_LOW_DEGREE: &str =
        "every smooth hypersurface of degree d <= (n+3)/3 in P^n satisfies asymptotic \
         enumerativity in every genus";
    pub const HYPERSURFACE_GENERAL: &str =
        "every general hypersurface of degree d <= n-2 in P^n satisfies asymptotic \
         enumerativity in every genus";
    pub const CONICAL_FAILURE: &str =
        "a conical Fano manifold of dimension N, Picard rank 1 and index r that is t-general \
         with t <= N/r - 1 fails asymptotic enumerativity for every positive genus, and for \
         genus 0 as well when the inequality is strict";
    pub const HOMOGENEOUS: &str = "homogeneous spaces satisfy asymptotic enumerativity";
    pub const BLOWUP_POINT: &str =
        "the blow-up of P^n at one point satisfies asymptotic enumerativity";
    pub const BUNDLE_FAILURE: &str =
        "a Fano projective bundle P(O + O(a_1) + ... + O(a_r)) over P^{n-r} with \
         a_1 + ... + a_r >= 2 carries positive-dimensional comb families through general \
         points and fails asymptotic enumerativity in every genus";
    pub const BUNDLE_SHARPNESS: &str =
        "the twist-sum bound is sharp: at twist sum 1 with r = 1 the bundle is the blow-up \
         of P^n at a point, where enumerativity holds";
    pub const THREEFOLD_NO_SWEPT_DIVISOR: &str =
        "a smooth Fano threefold with no divisor swept out by anticanonical lines satisfies \
         asymptotic enumerativity in every genus";
    pub const E5_RIGID_SECTION: &str =
        "the rigid section of P(O + O(2)) over P^2 is an E5 divisor; combs with a spine in \
         the section and fiber teeth defeat enumerativity in every genus";
    pub const CONICAL_POINT: &str =
        "a threefold point lying on a 1-parameter family of lines supports combs with a \
         contracted spine, defeating enumerativity for every positive genus";
    pub const E1_SECTION_COMB: &str =
        "combs with a spine of balanced bidegree in the rigid section of P(O + O(1,1)) over \
         P^1 x P^1 defeat enumerativity for every positive genus";
    pub const CONIC_INTERSECTION_ZERO: &str =
        "the dominant conic family pairs to zero with the divisor, so a general conic never \
         meets it and spine curves there deform in dimension at most 2m + O(1) < 3m";
    pub const SECTION_CURVE_GENUS: &str =
        "the center curve has genus >= 2, so it receives no map from a general curve of any \
         genus and the divisor supports no spine";
    pub const UNKNOWN: &str =
        "no positive theorem or failure construction in the rulebook covers this target";
}

fn search_conical_witness(
    target: &HypersurfaceTarget,
    g: i64,
) -> Result<(i64, WitnessStratum)> {
    let m_start = if g == 0 { 3 } else { 1 };
    for m in m_start..=10_000 {
        if let CombAttempt::Witness(w) = conical_comb(target, g, m)? {
            return Ok((m, w));
        }
    }
    Err(CoreError::Internal(
        "no conical comb found in the search range although the rule licensed one".into(),
    ))
}

fn search_bundle_witness(target: &ProjBundleTarget, g: i64) -> Result<(i64, WitnessStratum)> {
    for k in 1..=100_000 {
        if let CombAttempt::Witness(w) = bundle_comb(target, g, k)? {
            return Ok((k, w));
        }
    }
    Err(CoreError::Internal(
        "no bundle comb found in the search range although the rule licensed one".into(),
    ))
}

fn search_section_witness(g: i64) -> Result<(i64, WitnessStratum)> {
    debug_assert!(g >= 1);
    for m in 1..=10_000 {
        if (m + g) % 2 != 1 {
            continue;
        }
        if let CombAttempt::Witness(w) = section_comb(g, m)? {
            return Ok((m, w));
        }
    }
    Err(CoreError::Internal(
        "no section comb found in the search range although the rule licensed one".into(),
    ))
}

/// Verdict for a smooth hypersurface of degree `d` in `P^n` at the queried
/// genus.  Rules are applied in order: the low-degree theorem, the
/// general-hypersurface theorem, the conical failure construction, the
/// homogeneous-space case, and otherwise Unknown.
pub fn hypersurface_verdict(target: &HypersurfaceTarget, genus: GenusQuery) -> Result<Verdict> {
    let (n, d) = (target.n, target.d);

    if 3 * d <= n + 3 {
        return Ok(Verdict::holds(
            "R1",
            cite::HYPERSURFACE_LOW_DEGREE,
            format!("d = {d} <= (n+3)/3 with n = {n}"),
        ));
    }

    if target.attrs.general && d <= n - 2 {
        return Ok(Verdict::holds(
            "R2",
            cite::HYPERSURFACE_GENERAL,
            format!("the target is general and d = {d} <= n-2 = {}", n - 2),
        ));
    }

    if target.is_conical() {
        let big_n = target.dim();
        let r = target.index();
        let t = t_generality(target);
        let strict = t * r < big_n - r;
        let boundary = t * r == big_n - r;
        if strict || boundary {
            let licensed_at_query = strict || !genus.is_genus_zero();
            if licensed_at_query {
                let g = genus.witness_genus(if strict { 0 } else { 1 });
                let (m, witness) = search_conical_witness(target, g)?;
                let condition = if strict {
                    GenusCondition::AllGenus
                } else {
                    GenusCondition::PositiveGenusOnly
                };
                return Ok(Verdict::fails(
                    "R3",
                    cite::CONICAL_FAILURE,
                    format!(
                        "conical with t = {t}, N = {big_n}, r = {r} ({} bound); witness comb at \
                         genus {g}, m = {m}",
                        if strict { "strict" } else { "boundary" }
                    ),
                    condition,
                    witness,
                ));
            }
            // Boundary case queried at genus 0: the construction is not
            // licensed there, so fall through to the remaining rules.
        }
    }

    if d == 1 {
        return Ok(Verdict::holds(
            "R4",
            cite::HOMOGENEOUS,
            format!("a hyperplane in P^{n} is P^{}", n - 1),
        ));
    }

    Ok(Verdict::unknown(
        "R5",
        format!("degree-{d} hypersurfaces in P^{n} with these attributes are undecided"),
    ))
}

/// Verdict for a Fano projective bundle at the queried genus: twist sum at
/// least 2 fails with a comb witness; twist sum 1 over a line bundle is the
/// blow-up of projective space at a point; twist sum 0 is homogeneous.
pub fn bundle_verdict(target: &ProjBundleTarget, genus: GenusQuery) -> Result<Verdict> {
    let sum = target.sum_a();
    if sum >= 2 {
        let g = genus.witness_genus(0);
        let (k, witness) = search_bundle_witness(target, g)?;
        return Ok(Verdict::fails(
            "B1",
            cite::BUNDLE_FAILURE,
            format!(
                "twist sum {sum} >= 2; comb witness at genus {g}, k = {k}, with {} points",
                witness.triple.m
            ),
            GenusCondition::AllGenus,
            witness,
        ));
    }
    if sum == 1 && target.r == 1 {
        return Ok(Verdict::holds(
            "B2",
            cite::BLOWUP_POINT,
            format!("P(O + O(1)) over P^{} is the blow-up of P^{} at a point", target.n - 1, target.n),
        ));
    }
    if sum == 0 {
        return Ok(Verdict::holds(
            "B3",
            cite::HOMOGENEOUS,
            format!("the trivial bundle is P^{} x P^{}", target.r, target.n - target.r),
        ));
    }
    Ok(Verdict {
        status: VerdictStatus::Unknown,
        genus_condition: GenusCondition::AllGenus,
        reasons: vec![Reason {
            rule: "B4".into(),
            citation: cite::BUNDLE_SHARPNESS.into(),
            text: format!(
                "twist sum 1 with fiber dimension {} > 1 is not covered by the comb \
                 construction or a positive theorem",
                target.r
            ),
        }],
        witness: None,
    })
}

/// Verdict for a catalog threefold at the queried genus, by rule order:
/// no swept divisor implies Holds; otherwise the entry's rule patterns select
/// a comb construction or a positive argument; otherwise Unknown.
pub fn threefold_verdict(entry: &ThreefoldEntry, genus: GenusQuery) -> Result<Verdict> {
    let has_hint = |hint: &str| entry.verdict_hints.iter().any(|h| h == hint);

    // T1: no divisor swept out by anticanonical lines.
    if entry
        .divisors
        .iter()
        .all(|div| !div.swept_by_anticanonical_lines)
    {
        return Ok(Verdict::holds(
            "T1",
            cite::THREEFOLD_NO_SWEPT_DIVISOR,
            format!("{}: no declared divisor is swept out by anticanonical lines", entry.id),
        ));
    }

    // T2: rigid E5 section supporting fiber combs in every genus.
    if has_hint("E5_rigid_section") {
        let g = genus.witness_genus(0);
        let bundle = make_proj_bundle(3, 1, vec![2])?;
        let (k, witness) = search_bundle_witness(&bundle, g)?;
        return Ok(Verdict::fails(
            "T2",
            cite::E5_RIGID_SECTION,
            format!("fiber comb witness at genus {g}, k = {k}"),
            GenusCondition::AllGenus,
            witness,
        ));
    }

    // T3: a point on a 1-parameter family of lines supports the contracted-
    // spine comb for positive genus.
    if has_hint("conical_point_comb")
        && entry
            .point_line_family
            .map(|p| p.exists_1param_family_through_point)
            .unwrap_or(false)
        && !genus.is_genus_zero()
    {
        let g = genus.witness_genus(1);
        let quartic = make_hypersurface(
            4,
            4,
            HypersurfaceAttrs {
                conical: Some(ConicalAttr { t_line_family: 1 }),
                ..Default::default()
            },
        )?;
        let (m, witness) = search_conical_witness(&quartic, g)?;
        return Ok(Verdict::fails(
            "T3",
            cite::CONICAL_POINT,
            format!("contracted-spine comb witness at genus {g}, m = {m}"),
            GenusCondition::PositiveGenusOnly,
            witness,
        ));
    }

    // T4: spine in the rigid section of P(O + O(1,1)), positive genus only.
    if has_hint("E1_section_comb") && !genus.is_genus_zero() {
        let g = genus.witness_genus(1);
        let (m, witness) = search_section_witness(g)?;
        return Ok(Verdict::fails(
            "T4",
            cite::E1_SECTION_COMB,
            format!("section comb witness at genus {g}, m = {m}"),
            GenusCondition::PositiveGenusOnly,
            witness,
        ));
    }

    // T5: high-Fujita divisors present but neutralized by declared facts.
    if has_hint("holds_despite_fujita2") {
        let conic_zero = entry
            .divisors
            .iter()
            .any(|d| d.extra_bool("conic_intersection_zero") == Some(true));
        let high_genus_center = entry
            .divisors
            .iter()
            .any(|d| d.extra_int("section_curve_genus").is_some_and(|g| g >= 2));
        if conic_zero && high_genus_center {
            return Ok(Verdict {
                status: VerdictStatus::Holds,
                genus_condition: GenusCondition::AllGenus,
                reasons: vec![
                    Reason {
                        rule: "T5".into(),
                        citation: cite::CONIC_INTERSECTION_ZERO.into(),
                        text: "a declared divisor is avoided by the dominant conic family".into(),
                    },
                    Reason {
                        rule: "T5".into(),
                        citation: cite::SECTION_CURVE_GENUS.into(),
                        text: "a declared divisor fibers over a curve of genus >= 2".into(),
                    },
                ],
                witness: None,
            });
        }
    }

    Ok(Verdict::unknown(
        "T6",
        format!(
            "{}: swept divisors are present but no declared pattern decides the verdict \
             at this genus",
            entry.id
        ),
    ))
}
