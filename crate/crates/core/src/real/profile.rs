//! Signature profile of the symmetric pencil `M(t) = t0^2*M1 + 2*t0*t1*M2 +
//! t1^2*M3` over the real projective line: the real roots of the binary
//! sextic `W = det M(t)` split `P^1(R)` into arcs, and on each arc the
//! inertia of `M(t)` is constant.  The profile records both, with exact
//! rational sample points and certified root brackets.

use crate::covers::CoverSpec;
use crate::matrix::RatMat;
use crate::quadform::{Inertia, TernaryForm};
use crate::rat::Rat;
use crate::real::sturm::{self, IsolatingInterval};
use crate::unipoly::UniPoly;
use crate::{Error, Result};
use serde::Serialize;

/// A real root of the binary sextic on `P^1(R)`, bracketed in every affine
/// chart where it is visible: `chart0` brackets `t` with `W(t, 1) = 0`,
/// `chart1` brackets `s = 1/t` with `W(1, s) = 0`.  The root `[1:0]` (at
/// infinity) is visible only in chart 1; a root at `[0:1]` only in chart 0.
#[derive(Clone, Debug, Serialize)]
pub struct WeierstrassRoot {
    /// True exactly for the root `[1:0]`.
    pub at_infinity: bool,
    pub chart0: Option<IsolatingInterval>,
    pub chart1: Option<IsolatingInterval>,
}

/// One open arc of `P^1(R)` between consecutive real roots of the sextic,
/// with the inertia of the pencil at an exact rational sample `[t0 : t1]`.
#[derive(Clone, Debug, Serialize)]
pub struct ProfileInterval {
    /// Homogeneous rational sample point on the arc.
    pub sample: [Rat; 2],
    /// Inertia of `M(sample)`; always `zero == 0` on an open arc.
    pub signature: Inertia,
}

/// Roots of the sextic on `P^1(R)` in circular order (affine roots
/// ascending, then the root at infinity if present) and the signed arcs
/// between them.  When there are no real roots there is a single arc; when
/// the root at infinity is absent the last arc wraps around `[1:0]`.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureProfile {
    pub roots: Vec<WeierstrassRoot>,
    pub intervals: Vec<ProfileInterval>,
}

impl SignatureProfile {
    /// True when some arc carries a negative definite pencil member.
    pub fn has_negative_definite_interval(&self) -> bool {
        self.intervals.iter().any(|iv| iv.signature.minus == 3)
    }
}

/// The conic fibration over `P^1` has a real section iff no arc carries a
/// negative definite member: over an arc where `M(t)` is negative definite
/// the conic `M(t) = 0` has no real points at all, and over every other arc
/// it does (an indefinite or positive-semidefinite nonzero form represents
/// zero nontrivially over `R`).
pub fn pi1_section_exists(profile: &SignatureProfile) -> bool {
    !profile.has_negative_definite_interval()
}

/// Compute the signature profile of the pencil attached to a cover
/// specification.  Requires only that the sextic is not identically zero;
/// repeated roots are bracketed once.
pub fn signature_profile(spec: &CoverSpec) -> Result<SignatureProfile> {
    let w = spec.sextic_binary();
    if w.is_zero() {
        return Err(Error::Inadmissible(
            "the binary sextic vanishes identically; the pencil is degenerate".into(),
        ));
    }
    // Chart 0: f0(t) = W(t, 1).  Nonzero because W is nonzero homogeneous.
    let f0 = spec.sextic_chart(0);
    let root_at_infinity = w.coeff(&[6, 0]).is_zero();

    let brackets = isolate_affine_roots(&f0);
    let mut roots: Vec<WeierstrassRoot> = brackets
        .iter()
        .map(|iv| WeierstrassRoot {
            at_infinity: false,
            chart0: Some(iv.clone()),
            chart1: reciprocal_bracket(iv),
        })
        .collect();
    if root_at_infinity {
        roots.push(WeierstrassRoot {
            at_infinity: true,
            chart0: None,
            chart1: Some(IsolatingInterval::point(Rat::zero())),
        });
    }

    // Sample every arc between circularly consecutive roots.
    let mut samples: Vec<[Rat; 2]> = vec![];
    if brackets.is_empty() {
        // No affine roots.  A root at [1:0] alone cannot happen for a
        // nonzero sextic (the chart-0 polynomial would have odd degree 5,
        // forcing an affine real root), but sample defensively the same way.
        samples.push([Rat::zero(), Rat::one()]);
    } else {
        for k in 1..brackets.len() {
            samples.push([sturm::gap_sample(&brackets[k - 1], &brackets[k]), Rat::one()]);
        }
        if root_at_infinity {
            // Arcs (last root, infinity) and (infinity, first root): sample
            // beyond the Cauchy bound on both sides.
            let b = f0.root_bound() + Rat::one();
            samples.push([b.clone(), Rat::one()]);
            samples.insert(0, [-b, Rat::one()]);
        } else {
            // The wraparound arc through [1:0] is sampled exactly there.
            samples.push([Rat::one(), Rat::zero()]);
        }
    }

    let (q1, q2, q3) = spec.forms();
    let (m1, m2, m3) = (q1.gram(), q2.gram(), q3.gram());
    let intervals = samples
        .into_iter()
        .map(|s| {
            let signature = pencil_inertia(m1, m2, m3, &s);
            assert_eq!(
                signature.zero, 0,
                "arc sample {}:{} landed on a root of the sextic",
                s[0], s[1]
            );
            ProfileInterval { sample: s, signature }
        })
        .collect();

    Ok(SignatureProfile { roots, intervals })
}

/// Inertia of `t0^2*M1 + 2*t0*t1*M2 + t1^2*M3` at a rational point of `P^1`.
pub fn pencil_inertia(m1: &RatMat, m2: &RatMat, m3: &RatMat, t: &[Rat; 2]) -> Inertia {
    let t00 = &t[0] * &t[0];
    let t01 = Rat::from_int(2) * &t[0] * &t[1];
    let t11 = &t[1] * &t[1];
    let gram = RatMat::from_fn(3, 3, |i, j| {
        &t00 * &m1[(i, j)] + &t01 * &m2[(i, j)] + &t11 * &m3[(i, j)]
    });
    TernaryForm::from_gram(gram)
        .expect("pencil member is symmetric by construction")
        .inertia()
}

/// Brackets for the real roots of `f0`, zero root exact.  A root at `t = 0`
/// is split off by its valuation (bisection cannot be trusted to land on it
/// exactly), and every open bracket is refined until it is sign-definite,
/// so whether a bracketed root is zero is always decidable and inverting a
/// bracket endpoint-wise is always legitimate.
fn isolate_affine_roots(f0: &UniPoly) -> Vec<IsolatingInterval> {
    let v = f0.valuation_at_zero();
    let g = UniPoly::from_coeffs(f0.coeffs()[v..].to_vec());
    let sf = g.squarefree_part();
    let mut brackets = sturm::isolate_real_roots(&g);
    sturm::separate_strictly(&g, &mut brackets);
    for iv in &mut brackets {
        // g(0) != 0, so no bracketed root is zero and refinement must
        // eventually push zero out of the bracket.
        while !iv.is_point() && iv.lo.signum() * iv.hi.signum() <= 0 {
            *iv = sturm::refine_step(&sf, iv);
        }
    }
    if v > 0 {
        let at = brackets.partition_point(|iv| iv.hi.signum() < 0);
        brackets.insert(at, IsolatingInterval::point(Rat::zero()));
    }
    brackets
}

/// Map a chart-0 bracket of a root to a chart-1 bracket of `1/t`.  Returns
/// `None` exactly for the root `t = 0`, which is invisible in chart 1.
/// Requires the sign-definite brackets produced by `isolate_affine_roots`;
/// inverting the endpoints in swapped order then brackets the reciprocal.
fn reciprocal_bracket(iv: &IsolatingInterval) -> Option<IsolatingInterval> {
    if iv.is_point() {
        if iv.lo.is_zero() {
            return None;
        }
        return Some(IsolatingInterval::point(iv.lo.recip()));
    }
    debug_assert!(
        iv.lo.signum() * iv.hi.signum() > 0,
        "bracket must be sign-definite before inversion"
    );
    Some(IsolatingInterval {
        lo: iv.hi.recip(),
        hi: iv.lo.recip(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::TernaryForm;

    fn spec_from_int_grams(m1: &[&[i64]], m2: &[&[i64]], m3: &[&[i64]]) -> CoverSpec {
        CoverSpec::new(
            TernaryForm::from_int_gram(m1).unwrap(),
            TernaryForm::from_int_gram(m2).unwrap(),
            TernaryForm::from_int_gram(m3).unwrap(),
        )
    }

    #[test]
    fn identity_pencil_has_single_positive_interval() {
        // M1 = M3 = I, M2 = 0: W = (t0^2 + t1^2)^3 never vanishes on P^1(R).
        let spec = spec_from_int_grams(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        );
        let p = signature_profile(&spec).unwrap();
        assert!(p.roots.is_empty());
        assert_eq!(p.intervals.len(), 1);
        assert_eq!(
            p.intervals[0].signature,
            Inertia { plus: 3, minus: 0, zero: 0 }
        );
        assert!(pi1_section_exists(&p));
    }

    #[test]
    fn hyperbolic_pencil_is_indefinite_everywhere() {
        // M1 = M3 = diag(1,1,-1), M2 = 0: W = -(t0^2+t1^2)^3 < 0 everywhere,
        // every member has signature (2,1).
        let spec = spec_from_int_grams(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]],
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]],
        );
        let p = signature_profile(&spec).unwrap();
        assert!(p.roots.is_empty());
        assert_eq!(p.intervals.len(), 1);
        assert_eq!(
            p.intervals[0].signature,
            Inertia { plus: 2, minus: 1, zero: 0 }
        );
        assert!(pi1_section_exists(&p));
    }

    #[test]
    fn definite_to_negative_pencil_detects_obstruction() {
        // M1 = -I, M3 = I: W = det(t1^2 I - t0^2 I) = (t1^2 - t0^2)^3,
        // roots at t = +/-1 (distinct on P^1), M negative definite on the
        // wraparound arc through [1:0].
        let spec = spec_from_int_grams(
            &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]],
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        );
        let p = signature_profile(&spec).unwrap();
        assert_eq!(p.roots.len(), 2);
        assert!(p.roots.iter().all(|r| !r.at_infinity));
        assert_eq!(p.intervals.len(), 2);
        // Arc (-1, 1) sampled between the roots: M(0,1) = I.
        assert_eq!(
            p.intervals[0].signature,
            Inertia { plus: 3, minus: 0, zero: 0 }
        );
        // Wraparound arc sampled at [1:0]: M1 = -I.
        assert_eq!(p.intervals[1].sample, [Rat::one(), Rat::zero()]);
        assert_eq!(
            p.intervals[1].signature,
            Inertia { plus: 0, minus: 3, zero: 0 }
        );
        assert!(p.has_negative_definite_interval());
        assert!(!pi1_section_exists(&p));
    }

    #[test]
    fn roots_at_zero_and_infinity_get_one_sided_brackets() {
        // M1 = diag(1,1,0), M2 = 0, M3 = diag(0,1,1):
        // W = t0^4 t1^2 (t0^2+t1^2) up to the diagonal product; roots at
        // [0:1] and [1:0].
        let spec = spec_from_int_grams(
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]],
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        );
        let p = signature_profile(&spec).unwrap();
        assert_eq!(p.roots.len(), 2);
        let zero_root = &p.roots[0];
        assert!(!zero_root.at_infinity);
        assert!(zero_root.chart0.as_ref().unwrap().is_point());
        assert!(zero_root.chart0.as_ref().unwrap().lo.is_zero());
        assert!(zero_root.chart1.is_none());
        let inf_root = &p.roots[1];
        assert!(inf_root.at_infinity);
        assert!(inf_root.chart0.is_none());
        assert!(inf_root.chart1.as_ref().unwrap().is_point());
        // Two arcs: (0, infinity) and (infinity, 0), sampled at +/- B.
        assert_eq!(p.intervals.len(), 2);
        for iv in &p.intervals {
            assert_eq!(iv.signature.zero, 0);
            assert_eq!(iv.signature, Inertia { plus: 3, minus: 0, zero: 0 });
        }
        assert!(pi1_section_exists(&p));
    }

    #[test]
    fn reciprocal_brackets_isolate_chart1_roots() {
        // M(t) with an irrational root: M1 = diag(2,1,1), M3 = diag(-1,1,1),
        // M2 = 0: W = (2t0^2 - t1^2)(t0^2+t1^2)^2, affine roots at
        // t = +/- sqrt(2)... in chart 0 with t1 = 1: 2t^2 - 1 roots
        // +/- 1/sqrt(2).
        let spec = spec_from_int_grams(
            &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        );
        let p = signature_profile(&spec).unwrap();
        assert_eq!(p.roots.len(), 2);
        let f1 = spec.sextic_chart(1);
        for r in &p.roots {
            let c1 = r.chart1.as_ref().expect("nonzero roots visible in chart 1");
            assert!(c1.lo <= c1.hi);
            if c1.is_point() {
                assert_eq!(f1.sign_at(&c1.lo), 0);
            } else {
                // The chart-1 polynomial has exactly one root in the bracket.
                use crate::real::sturm::SturmChain;
                assert_eq!(SturmChain::new(&f1).count_in_open(&c1.lo, &c1.hi), 1);
                assert_ne!(f1.sign_at(&c1.lo), 0);
                assert_ne!(f1.sign_at(&c1.hi), 0);
            }
        }
    }

    #[test]
    fn worked_instance_profile_is_consistent() {
        let spec = crate::instances::worked_instance();
        let p = signature_profile(&spec).unwrap();
        // The circle minus k marked points has exactly max(k, 1) arcs.
        assert_eq!(p.intervals.len(), p.roots.len().max(1));
        for iv in &p.intervals {
            assert_eq!(iv.signature.plus + iv.signature.minus, 3);
        }
    }
}
