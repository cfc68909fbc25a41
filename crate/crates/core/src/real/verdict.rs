//! The real-rationality verdict: combine the pencil signature profile with
//! the topology of the real discriminant quartic.
//!
//! For a certified input whose real quartic is not a single oval, the
//! threefold is rational over the reals exactly when the pencil admits a
//! real section, i.e. when no arc of the parameter circle makes the pencil
//! negative definite.  The single-oval configuration is outside the scope
//! of that criterion and is reported as undetermined rather than guessed.

use crate::covers::CoverSpec;
use crate::real::profile::{pi1_section_exists, SignatureProfile};
use crate::real::topology::{OvalConfiguration, RealCurveTopology, RegionReport};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Rational,
    Irrational,
    /// The discriminant curve is a single oval; the signature criterion
    /// does not decide this configuration.
    UndeterminedSingleOval,
    /// Reserved for inputs where the hypothesis of the criterion cannot be
    /// checked.  Never produced for certified inputs: the criterion needs
    /// only "not a single oval", which the certified topology always
    /// decides (the empty configuration included).
    UndeterminedEmptyHypothesis,
}

/// Everything the verdict was computed from, kept for auditability.
#[derive(Clone, Debug, Serialize)]
pub struct VerdictEvidence {
    /// No arc of the parameter circle is negative definite.
    pub section_exists: bool,
    pub configuration: OvalConfiguration,
    /// Whether the étale double cover of the sextic has real points.
    pub gamma_real: bool,
    pub profile: SignatureProfile,
    pub region: RegionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalityVerdict {
    pub kind: VerdictKind,
    pub evidence: VerdictEvidence,
}

/// Decide real rationality from the signature profile and the certified
/// topology.  Consumes the profile and region report (they become the
/// evidence block).
pub fn rationality_verdict(
    spec: &CoverSpec,
    profile: SignatureProfile,
    topo: &RealCurveTopology,
    region: RegionReport,
) -> RationalityVerdict {
    let section_exists = pi1_section_exists(&profile);
    let kind = if topo.configuration == OvalConfiguration::OneOval {
        VerdictKind::UndeterminedSingleOval
    } else if section_exists {
        VerdictKind::Rational
    } else {
        VerdictKind::Irrational
    };
    RationalityVerdict {
        kind,
        evidence: VerdictEvidence {
            section_exists,
            configuration: topo.configuration,
            gamma_real: spec.gamma_real_nonempty(),
            profile,
            region,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::matrix::RatMat;
    use crate::quadform::TernaryForm;
    use crate::real::profile::signature_profile;
    use crate::real::topology::{quartic_topology, region_report};

    fn verdict_of(spec: &CoverSpec) -> RationalityVerdict {
        let topo = quartic_topology(spec).expect("topology must certify");
        let profile = signature_profile(spec).expect("profile must exist");
        let region = region_report(spec, &topo).expect("region report must verify");
        rationality_verdict(spec, profile, &topo, region)
    }

    #[test]
    fn empty_quartic_with_section_is_rational() {
        let v = verdict_of(&instances::empty_curve_instance());
        assert_eq!(v.kind, VerdictKind::Rational);
        assert_eq!(v.evidence.configuration, OvalConfiguration::Empty);
        assert!(v.evidence.section_exists);
    }

    #[test]
    fn empty_quartic_with_negative_definite_arc_is_irrational() {
        let v = verdict_of(&instances::empty_curve_obstructed_instance());
        assert_eq!(v.kind, VerdictKind::Irrational);
        assert_eq!(v.evidence.configuration, OvalConfiguration::Empty);
        assert!(!v.evidence.section_exists);
        assert!(v.evidence.profile.has_negative_definite_interval());
    }

    #[test]
    fn single_oval_is_undetermined() {
        let v = verdict_of(&instances::single_oval_instance());
        assert_eq!(v.kind, VerdictKind::UndeterminedSingleOval);
        assert_eq!(v.evidence.configuration, OvalConfiguration::OneOval);
    }

    #[test]
    fn four_ovals_with_section_is_rational() {
        let v = verdict_of(&instances::four_ovals_instance());
        assert_eq!(v.kind, VerdictKind::Rational);
        assert_eq!(v.evidence.configuration, OvalConfiguration::FourOvals);
        assert!(v.evidence.section_exists);
    }

    #[test]
    fn nested_ovals_with_negative_definite_arc_is_irrational() {
        let v = verdict_of(&instances::nested_ovals_instance());
        assert_eq!(v.kind, VerdictKind::Irrational);
        assert_eq!(v.evidence.configuration, OvalConfiguration::TwoNested);
        assert!(v.evidence.profile.has_negative_definite_interval());
    }

    #[test]
    fn verdict_is_invariant_under_unimodular_coordinate_changes() {
        // Replacing every form Q by Q(U x) preserves both the pencil
        // signatures and the quartic topology, hence the verdict.
        let u = RatMat::from_int_rows(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 1]]);
        for base in [
            instances::single_oval_instance(),
            instances::empty_curve_obstructed_instance(),
            instances::four_ovals_instance(),
        ] {
            let (q1, q2, q3) = base.forms();
            let transform = |q: &TernaryForm| -> TernaryForm {
                let g = u.transpose().mul(&q.gram().mul(&u));
                TernaryForm::from_gram(g).unwrap()
            };
            let moved = CoverSpec::new(transform(q1), transform(q2), transform(q3));
            let v0 = verdict_of(&base);
            let v1 = verdict_of(&moved);
            assert_eq!(v0.kind, v1.kind);
            assert_eq!(v0.evidence.configuration, v1.evidence.configuration);
            assert_eq!(v0.evidence.section_exists, v1.evidence.section_exists);
        }
    }

    #[test]
    fn evidence_serializes() {
        let v = verdict_of(&instances::single_oval_instance());
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("undetermined_single_oval"));
    }
}
