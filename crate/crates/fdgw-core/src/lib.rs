//! Certificate engine for asymptotic enumerativity of fixed-domain
//! Gromov-Witten counts on Fano targets.
//!
//! Given a target from the supported catalog (hypersurfaces in projective
//! space, Fano projective bundles over projective space, and a curated list
//! of threefolds), the engine decides with exact integer and rational
//! arithmetic whether the target satisfies or fails asymptotic enumerativity,
//! and produces either a cited positive verdict or an explicit counterexample
//! witness: a degenerate comb stratum with an exact dimension certificate.

pub mod catalog;
pub mod chains;
pub mod dims;
pub mod error;
pub mod exact;
pub mod targets;
pub mod verdict;
pub mod witness;

pub use error::{CoreError, Result};
pub use exact::{
    cone_contains, cone_threshold, pair, ClassVector, CurveClass, DivisorClass, Pairing,
    Rational, RationalCone, Threshold,
};
pub use targets::{
    fujita_cone_resolution, make_hypersurface, make_proj_bundle, t_generality, ConicalAttr,
    HypersurfaceAttrs, HypersurfaceTarget, ProjBundleTarget, Target,
};
pub use dims::{
    budget_many_points, budget_one_point_upper, chain_expected_dim, classes_of_degree,
    conic_two_point_bound, fiber_excess, h1_upper, maps_to_projspace_dim, max_component_degree,
    nonfree_line_bound, triple_from_m, triple_from_m_dim, virtual_dim, ChainShape,
    FixedDomainTriple, TaggedClass,
};
pub use catalog::{bundled_catalog, bundled_entry, load_catalog, parse_catalog, ThreefoldEntry};
pub use chains::{chain_induction_check, BaseCaseConfig, ChainCheckReport};
pub use verdict::{
    bundle_verdict, hypersurface_verdict, threefold_verdict, GenusCondition, GenusQuery, Reason,
    Verdict, VerdictStatus,
};
pub use witness::{
    bundle_comb, bundle_comb_data, conical_comb, pn_comb, section_comb, validate_stratum,
    BundleCombData, CertificateKind, CombAttempt, Construction, DimensionCertificate, DualGraph,
    GraphVertex, LedgerLine, VertexRole, WitnessStratum,
};
