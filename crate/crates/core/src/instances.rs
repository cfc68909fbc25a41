//! Ready-made example instances and seeded random generators of admissible
//! input triples `(Q1, Q2, Q3)`.
//!
//! The generators construct the first form directly in the shape the pencil
//! needs — congruent to `diag(a, b, -ab)` (rank 3, square discriminant) or
//! to `diag(0, a, b)` (rank 2) — so rejection sampling only has to retry the
//! genericity conditions: nonzero discriminant quartic, separable sextic,
//! and (for the rank-2 case) `Q2` nonvanishing at the kernel point of `Q1`.

use crate::covers::{check_quartic_smooth, CoverSpec};
use crate::matrix::RatMat;
use crate::pencil::QuadricPencil;
use crate::quadform::TernaryForm;
use crate::rat::Rat;
use rand::Rng;

/// The worked example used across the crate:
/// `Q1 = 2u^2 + 3v^2 - 6w^2`, `Q2 = u^2 + v*w`, `Q3 = v^2 + u*w`.
///
/// `Q1` is congruent to `diag(2, 3, -6)`, so its discriminant `36` is a
/// rational square and the rank-3 pencil applies.
pub fn worked_instance() -> CoverSpec {
    let q1 = TernaryForm::from_int_gram(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, -6]]).unwrap();
    let q2 = TernaryForm::from_gram(RatMat::from_rows(&[
        &[Rat::one(), Rat::zero(), Rat::zero()],
        &[Rat::zero(), Rat::zero(), Rat::new(1, 2)],
        &[Rat::zero(), Rat::new(1, 2), Rat::zero()],
    ]))
    .unwrap();
    let q3 = TernaryForm::from_gram(RatMat::from_rows(&[
        &[Rat::zero(), Rat::zero(), Rat::new(1, 2)],
        &[Rat::zero(), Rat::one(), Rat::zero()],
        &[Rat::new(1, 2), Rat::zero(), Rat::zero()],
    ]))
    .unwrap();
    CoverSpec::new(q1, q2, q3)
}

/// A rank-2 variant of the worked example: `Q1 = v^2 - w^2` (kernel point
/// `[1:0:0]`), with `Q2 = u^2 + v*w` nonvanishing there and
/// `Q3 = u^2 + v^2 + 2w^2` chosen so the three conics share no point (the
/// discriminant quartic is smooth).
pub fn worked_rank2_instance() -> CoverSpec {
    let q1 = TernaryForm::from_int_gram(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]).unwrap();
    let q2 = TernaryForm::from_gram(RatMat::from_rows(&[
        &[Rat::one(), Rat::zero(), Rat::zero()],
        &[Rat::zero(), Rat::zero(), Rat::new(1, 2)],
        &[Rat::zero(), Rat::new(1, 2), Rat::zero()],
    ]))
    .unwrap();
    let q3 = TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]).unwrap();
    CoverSpec::new(q1, q2, q3)
}

/// The inadmissible control instance `M1 = M2 = M3 = I`: its discriminant
/// quartic `(u*v)^2-ish` degenerates and the sextic `(t0^2+t1^2)^3` is
/// inseparable, so every certification stage must reject it.
pub fn identity_control_instance() -> CoverSpec {
    let id = || TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
    CoverSpec::new(id(), id(), id())
}

/// Quartic with a single oval: `delta = u^4 + v^4 - w^4` via
/// `Q1 = v^2 - w^2`, `Q2 = u^2`, `Q3 = -(v^2 + w^2)`.
pub fn single_oval_instance() -> CoverSpec {
    CoverSpec::new(
        TernaryForm::from_int_gram(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]).unwrap(),
        TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]).unwrap(),
        TernaryForm::from_int_gram(&[&[0, 0, 0], &[0, -1, 0], &[0, 0, -1]]).unwrap(),
    )
}

/// Empty real quartic whose pencil admits a section: with `S = u^2+v^2+w^2`,
/// take `Q1 = Q3 = S` and `Q2 = u*v/2`.  Then `delta = (u*v/2)^2 - S^2 < 0`
/// away from the origin (so the real quartic is empty), while the pencil
/// `t0^2*I + t0*t1*M2' + t1^2*I` stays positive definite for every real
/// parameter because the eigenvalues of the middle Gram matrix lie in
/// `(-1, 1)`.  The section criterion holds.
pub fn empty_curve_instance() -> CoverSpec {
    CoverSpec::new(
        TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap(),
        TernaryForm::from_gram(RatMat::from_rows(&[
            &[Rat::zero(), Rat::new(1, 4), Rat::zero()],
            &[Rat::new(1, 4), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::zero()],
        ]))
        .unwrap(),
        TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap(),
    )
}

/// Same empty quartic but with the roles of `Q1` and `Q3` swapped, so the
/// pencil passes through the negative definite form `-I`: the profile has a
/// negative definite arc and the section criterion fails.
pub fn empty_curve_obstructed_instance() -> CoverSpec {
    CoverSpec::new(
        TernaryForm::from_int_gram(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]).unwrap(),
        TernaryForm::from_gram(RatMat::from_rows(&[
            &[Rat::zero(), Rat::new(1, 2), Rat::zero()],
            &[Rat::new(1, 2), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::zero()],
        ]))
        .unwrap(),
        TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap(),
    )
}

/// Two nested ovals: a small perturbation of the product of two concentric
/// ellipses.  `Q1 = -(2u^2 + v^2 - w^2)`, `Q2 = w^2/2`,
/// `Q3 = u^2 + v^2 - 4w^2`, so `delta = w^4/4 + (2u^2+v^2-w^2)(u^2+v^2-4w^2)`.
pub fn nested_ovals_instance() -> CoverSpec {
    CoverSpec::new(
        TernaryForm::from_int_gram(&[&[-2, 0, 0], &[0, -1, 0], &[0, 0, 1]]).unwrap(),
        TernaryForm::from_gram(RatMat::from_rows(&[
            &[Rat::zero(), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::new(1, 2)],
        ]))
        .unwrap(),
        TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -4]]).unwrap(),
    )
}

/// Four ovals: a perturbation of two crossing ellipses.
/// `Q1 = -(2u^2 + v^2 - w^2)`, `Q2 = w^2/10`, `Q3 = u^2 + 2v^2 - w^2`, so
/// `delta = w^4/100 + (2u^2+v^2-w^2)(u^2+2v^2-w^2)`.  The diagonal pencil
/// `diag(t1^2-2t0^2, 2t1^2-t0^2, t0^2+t0t1/5-t1^2)` is never negative
/// definite, so the section criterion holds.
pub fn four_ovals_instance() -> CoverSpec {
    CoverSpec::new(
        TernaryForm::from_int_gram(&[&[-2, 0, 0], &[0, -1, 0], &[0, 0, 1]]).unwrap(),
        TernaryForm::from_gram(RatMat::from_rows(&[
            &[Rat::zero(), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::new(1, 10)],
        ]))
        .unwrap(),
        TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -1]]).unwrap(),
    )
}

/// Two non-nested ovals: a perturbation of two unit circles with centers at
/// distance 1, whose product is negative on two crescents.
/// `Q1 = -(u^2 + v^2 - w^2)`, `Q2 = w^2/5`, `Q3 = (u-w)^2 + v^2 - w^2`.
pub fn non_nested_ovals_instance() -> CoverSpec {
    CoverSpec::new(
        TernaryForm::from_int_gram(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]).unwrap(),
        TernaryForm::from_gram(RatMat::from_rows(&[
            &[Rat::zero(), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::new(1, 5)],
        ]))
        .unwrap(),
        // (u - w)^2 + v^2 - w^2 = u^2 - 2uw + v^2: gram [[1,0,-1],[0,1,0],[-1,0,0]]
        TernaryForm::from_int_gram(&[&[1, 0, -1], &[0, 1, 0], &[-1, 0, 0]]).unwrap(),
    )
}

/// The torsor-line fixture: `Q1 = u^2 + v*w`, `Q2 = v^2 + u*w`,
/// `Q3 = u^2 + v^2 + w^2`; the constant class along the line `v = 0` is
/// trivial, which predicts that the region outside the quartic lies in the
/// image of the double cover.
pub fn torsor_line_instance() -> CoverSpec {
    let half = Rat::new(1, 2);
    CoverSpec::new(
        TernaryForm::from_gram(RatMat::from_rows(&[
            &[Rat::one(), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), half.clone()],
            &[Rat::zero(), half.clone(), Rat::zero()],
        ]))
        .unwrap(),
        TernaryForm::from_gram(RatMat::from_rows(&[
            &[Rat::zero(), Rat::zero(), half.clone()],
            &[Rat::zero(), Rat::one(), Rat::zero()],
            &[half, Rat::zero(), Rat::zero()],
        ]))
        .unwrap(),
        TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap(),
    )
}

fn random_entry(rng: &mut impl Rng, bound: i64) -> Rat {
    Rat::from_int(rng.gen_range(-bound..=bound))
}

/// Random symmetric integer Gram matrix with entries in `[-bound, bound]`.
pub fn random_symmetric_gram(rng: &mut impl Rng, bound: i64) -> RatMat {
    let mut rows = vec![vec![Rat::zero(); 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let e = random_entry(rng, bound);
            rows[i][j] = e.clone();
            rows[j][i] = e;
        }
    }
    RatMat::from_rows(&[&rows[0], &rows[1], &rows[2]])
}

fn random_invertible(rng: &mut impl Rng) -> RatMat {
    loop {
        let m = RatMat::from_fn(3, 3, |_, _| random_entry(rng, 2));
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn congruent(core: &RatMat, s: &RatMat) -> RatMat {
    s.transpose().mul(core).mul(s)
}

/// First form for the rank-3 pencil: congruent to `diag(a, b, -ab)`, hence
/// rank 3 with square discriminant `(a*b*det S)^2`.
fn random_rank3_first_form(rng: &mut impl Rng) -> TernaryForm {
    loop {
        let a = random_entry(rng, 3);
        let b = random_entry(rng, 3);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let core = RatMat::diag(&[a.clone(), b.clone(), -(&a * &b)]);
        let s = random_invertible(rng);
        return TernaryForm::from_gram(congruent(&core, &s)).unwrap();
    }
}

/// First form for the rank-2 pencil: congruent to `diag(0, a, b)`.
fn random_rank2_first_form(rng: &mut impl Rng) -> TernaryForm {
    loop {
        let a = random_entry(rng, 3);
        let b = random_entry(rng, 3);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let core = RatMat::diag(&[Rat::zero(), a, b]);
        let s = random_invertible(rng);
        return TernaryForm::from_gram(congruent(&core, &s)).unwrap();
    }
}

fn admissible(spec: &CoverSpec) -> bool {
    !spec.delta_is_zero() && spec.sextic_is_separable() && QuadricPencil::build(spec).is_ok()
}

/// Seeded random admissible triple whose first form has rank 3 and square
/// discriminant.  Rejection-samples until the discriminant quartic is
/// nonzero, the sextic separable, and the pencil builds.
pub fn random_rank3_spec(rng: &mut impl Rng) -> CoverSpec {
    loop {
        let q1 = random_rank3_first_form(rng);
        let q2 = TernaryForm::from_gram(random_symmetric_gram(rng, 3)).unwrap();
        let q3 = TernaryForm::from_gram(random_symmetric_gram(rng, 3)).unwrap();
        let spec = CoverSpec::new(q1, q2, q3);
        if admissible(&spec) {
            return spec;
        }
    }
}

/// Seeded random admissible triple whose first form has rank 2.
pub fn random_rank2_spec(rng: &mut impl Rng) -> CoverSpec {
    loop {
        let q1 = random_rank2_first_form(rng);
        let q2 = TernaryForm::from_gram(random_symmetric_gram(rng, 3)).unwrap();
        let q3 = TernaryForm::from_gram(random_symmetric_gram(rng, 3)).unwrap();
        let spec = CoverSpec::new(q1, q2, q3);
        if admissible(&spec) {
            return spec;
        }
    }
}

/// Seeded random admissible rank-3 triple whose discriminant quartic also
/// carries a smoothness certificate, for real-topology sampling.  Smaller
/// coefficients keep the sweep fast.
pub fn random_smooth_spec(rng: &mut impl Rng) -> CoverSpec {
    loop {
        let q1 = random_rank3_first_form(rng);
        let q2 = TernaryForm::from_gram(random_symmetric_gram(rng, 2)).unwrap();
        let q3 = TernaryForm::from_gram(random_symmetric_gram(rng, 2)).unwrap();
        let spec = CoverSpec::new(q1, q2, q3);
        if !admissible(&spec) {
            continue;
        }
        match check_quartic_smooth(spec.delta(), rng) {
            Ok(v) if v.is_smooth() => return spec,
            _ => continue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generators_produce_admissible_specs() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..5 {
            let s3 = random_rank3_spec(&mut rng);
            assert_eq!(s3.forms().0.rank(), 3);
            assert!(s3.forms().0.disc_is_square());
            assert!(QuadricPencil::build(&s3).is_ok());
            let s2 = random_rank2_spec(&mut rng);
            assert_eq!(s2.forms().0.rank(), 2);
            assert!(QuadricPencil::build(&s2).is_ok());
        }
    }

    #[test]
    fn named_instances_build_their_pencils() {
        assert!(QuadricPencil::build(&worked_instance()).is_ok());
        assert!(QuadricPencil::build(&worked_rank2_instance()).is_ok());
        assert!(QuadricPencil::build(&identity_control_instance()).is_err());
    }

    #[test]
    fn fixture_discriminants_expand_as_documented() {
        use crate::poly::{MPoly, VarSet};
        let vars = VarSet::uvw();
        // single oval: delta = u^4 + v^4 - w^4
        let d = single_oval_instance();
        let want = MPoly::from_terms(
            &vars,
            [
                (vec![4, 0, 0], Rat::one()),
                (vec![0, 4, 0], Rat::one()),
                (vec![0, 0, 4], -Rat::one()),
            ],
        );
        assert_eq!(d.delta(), &want);
        let s = MPoly::from_terms(
            &vars,
            [
                (vec![2, 0, 0], Rat::one()),
                (vec![0, 2, 0], Rat::one()),
                (vec![0, 0, 2], Rat::one()),
            ],
        );
        // empty curve with section: delta = (uv/2)^2 - (u^2+v^2+w^2)^2
        let e = empty_curve_instance();
        let uv_half = MPoly::from_terms(&vars, [(vec![1, 1, 0], Rat::new(1, 2))]);
        assert_eq!(e.delta(), &uv_half.mul(&uv_half).sub(&s.mul(&s)));
        // obstructed empty curve: delta = (uv)^2 + (u^2+v^2+w^2)^2
        let o = empty_curve_obstructed_instance();
        let uv = MPoly::from_terms(&vars, [(vec![1, 1, 0], Rat::one())]);
        assert_eq!(o.delta(), &uv.mul(&uv).add(&s.mul(&s)));
    }
}
