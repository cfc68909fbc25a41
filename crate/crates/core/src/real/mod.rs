//! Real-point analysis: Sturm root isolation, signature profiles over the
//! projective line, plane-curve topology by sweep line, region reports, and
//! the rationality verdict.

pub mod profile;
pub mod sturm;
pub mod topology;
pub mod verdict;

pub use profile::{
    pencil_inertia, pi1_section_exists, signature_profile, ProfileInterval, SignatureProfile,
    WeierstrassRoot,
};
pub use sturm::IsolatingInterval;
pub use topology::{
    crossing_signature_pairs, fiber_form_inertia, outside_contained, quartic_topology,
    region_report, sign_grid_components, stable_grid_components, BoundaryArc, OvalConfiguration,
    PlaneCell, RealCurveTopology, RegionReport,
};
pub use verdict::{rationality_verdict, RationalityVerdict, VerdictEvidence, VerdictKind};
