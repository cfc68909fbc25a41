//! The covering data attached to a triple of ternary quadratic forms
//! `(Q1, Q2, Q3)`:
//!
//! * the discriminant quartic `delta = Q2^2 - Q1*Q3` in the plane,
//! * the binary sextic `W(t0, t1) = det(t0^2*M1 + 2*t0*t1*M2 + t1^2*M3)`,
//! * the real-point predicate of the double cover of `delta` cut out by
//!   `z^2 = Q1`,
//! * a certified smoothness decision for the quartic: either a smoothness
//!   certificate (constant resultant gcds in verified generic position) or a
//!   singular point with exact algebraic coordinates, verified by reduction
//!   modulo its defining polynomial.
//!
//! Everything is exact.  Randomness only picks coordinate changes and
//! auxiliary lines; every conclusion drawn from a random choice is verified
//! symbolically before it is reported.

use crate::matrix::{resultant_wrt, PolyMatrix, RatMat};
use crate::poly::{MPoly, VarSet};
use crate::quadform::TernaryForm;
use crate::rat::Rat;
use crate::real::sturm;
use crate::unipoly::UniPoly;
use crate::{Error, Result};
use rand::Rng;
use serde::Serialize;

/// Covering data derived from a triple of ternary forms.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    q1: TernaryForm,
    q2: TernaryForm,
    q3: TernaryForm,
    delta: MPoly,
    sextic: MPoly,
}

impl CoverSpec {
    pub fn new(q1: TernaryForm, q2: TernaryForm, q3: TernaryForm) -> Self {
        let vars = VarSet::uvw();
        let (p1, p2, p3) = (q1.poly(&vars), q2.poly(&vars), q3.poly(&vars));
        let delta = p2.mul(&p2).sub(&p1.mul(&p3));
        let sextic = sextic_from_grams(q1.gram(), q2.gram(), q3.gram());
        CoverSpec {
            q1,
            q2,
            q3,
            delta,
            sextic,
        }
    }

    pub fn forms(&self) -> (&TernaryForm, &TernaryForm, &TernaryForm) {
        (&self.q1, &self.q2, &self.q3)
    }

    /// The plane quartic `Q2^2 - Q1*Q3` in `{u, v, w}` (zero iff degenerate).
    pub fn delta(&self) -> &MPoly {
        &self.delta
    }

    pub fn delta_is_zero(&self) -> bool {
        self.delta.is_zero()
    }

    /// The binary sextic as a form in `{t0, t1}`.
    pub fn sextic_binary(&self) -> &MPoly {
        &self.sextic
    }

    /// Affine chart of the sextic: `main = 0` gives `W(t, 1)`,
    /// `main = 1` gives `W(1, t)`.
    pub fn sextic_chart(&self, main: usize) -> UniPoly {
        binary_chart(&self.sextic, main)
    }

    /// Separability of the sextic as a binary form: all six roots in the
    /// projective line distinct.  Checks the affine chart and the
    /// multiplicity at `[1:0]` (degree drop).
    pub fn sextic_is_separable(&self) -> bool {
        let f = self.sextic_chart(0);
        match f.degree() {
            None => false,
            Some(d) => d >= 5 && f.is_separable(),
        }
    }

    /// Does the fiber of the double cover `z^2 = Q1` over the point `p`
    /// have a real point?  On the quartic, `Q1 = 0` forces `Q2 = 0`; the
    /// extended clause keeps the predicate total and matches the blow-down
    /// convention at the branch locus.
    pub fn double_cover_real_over(&self, p: &[Rat]) -> bool {
        let a = self.q1.eval(p);
        match a.signum() {
            1 => true,
            -1 => false,
            _ => self.q2.eval(p).is_zero() && self.q3.eval(p).signum() >= 0,
        }
    }

    /// Does the hyperelliptic-type curve `y^2 = W(t0, t1)` have a real
    /// point?  Equivalent to the sextic not being negative definite on the
    /// real projective line.
    pub fn gamma_real_nonempty(&self) -> bool {
        if self.sextic.is_zero() {
            return true;
        }
        // Value at [1:0] is the coefficient of t0^6.
        let at_inf = self.sextic.coeff(&[6, 0]);
        if at_inf.signum() >= 0 {
            return true;
        }
        let f = self.sextic_chart(0);
        if sturm::count_real_roots(&f) > 0 {
            return true;
        }
        // No real roots: constant sign on the affine line.
        f.sign_at(&Rat::zero()) > 0
    }

    /// Recompute the sextic by an independent determinant algorithm and by
    /// chart reversal; error if any route disagrees.
    pub fn verify_sextic(&self) -> Result<()> {
        let m = pencil_matrix(self.q1.gram(), self.q2.gram(), self.q3.gram());
        let cof = m.det_cofactor();
        if cof != self.sextic {
            return Err(Error::VerificationFailed(
                "sextic determinant differs between elimination and cofactor routes".into(),
            ));
        }
        if !self.sextic.is_zero() {
            self.sextic.require_homogeneous(6, "binary sextic")?;
        }
        // Chart consistency: W(1, t) is the degree-6 reversal of W(t, 1).
        let f0 = self.sextic_chart(0);
        let f1 = self.sextic_chart(1);
        if f0.reverse_padded(6) != f1 {
            return Err(Error::VerificationFailed(
                "sextic charts are not degree-6 reversals of each other".into(),
            ));
        }
        Ok(())
    }
}

/// `t0^2*M1 + 2*t0*t1*M2 + t1^2*M3` as a matrix of binary quadratic forms.
fn pencil_matrix(m1: &RatMat, m2: &RatMat, m3: &RatMat) -> PolyMatrix {
    let vars = VarSet::t01();
    PolyMatrix::from_fn(&vars, 3, 3, |i, j| {
        MPoly::from_terms(
            &vars,
            [
                (vec![2, 0], m1[(i, j)].clone()),
                (vec![1, 1], &m2[(i, j)] * &Rat::from_int(2)),
                (vec![0, 2], m3[(i, j)].clone()),
            ],
        )
    })
}

/// Determinant of the pencil matrix: the binary sextic.
pub fn sextic_from_grams(m1: &RatMat, m2: &RatMat, m3: &RatMat) -> MPoly {
    pencil_matrix(m1, m2, m3).det()
}

/// Affine chart of a binary form: substitute 1 for the other variable.
pub fn binary_chart(form: &MPoly, main: usize) -> UniPoly {
    assert_eq!(form.vars().len(), 2);
    assert!(main < 2);
    let deg = form
        .terms()
        .map(|(e, _)| e.0[main] as usize)
        .max()
        .unwrap_or(0);
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (e, c) in form.terms() {
        coeffs[e.0[main] as usize] += c;
    }
    UniPoly::from_coeffs(coeffs)
}

// ---------------------------------------------------------------------------
// Smoothness of the quartic
// ---------------------------------------------------------------------------

/// Evidence that the quartic is smooth: in the verified generic coordinates
/// recorded here, the singular-locus eliminants had constant gcd both at
/// infinity and in the affine chart.
#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessCertificate {
    /// Coordinate change under which genericity was verified.
    pub change: RatMat,
    /// Number of coordinate attempts consumed (1 = first try).
    pub attempts: u32,
}

/// A singular point with exact algebraic coordinates: for every root `t` of
/// `modulus` (squarefree, possibly reducible, possibly without real roots),
/// the projective point `[point[0](t) : point[1](t) : point[2](t)]` is a
/// singular point of the quartic.  Verified by `verify` before being issued.
#[derive(Clone, Debug, Serialize)]
pub struct SingularWitness {
    pub modulus: UniPoly,
    pub point: Vec<UniPoly>,
}

impl SingularWitness {
    /// Exact check: the quartic and its three partial derivatives all reduce
    /// to zero modulo `modulus` at the witness coordinates, and the
    /// coordinates do not all vanish at any root of `modulus`.
    pub fn verify(&self, quartic: &MPoly) -> bool {
        if self.modulus.degree().unwrap_or(0) == 0 || self.point.len() != 3 {
            return false;
        }
        let mut coord_gcd = self.modulus.clone();
        let mut all_zero = true;
        for p in &self.point {
            coord_gcd = coord_gcd.gcd(p);
            if !p.rem(&self.modulus).is_zero() {
                all_zero = false;
            }
        }
        if all_zero || coord_gcd.degree().unwrap_or(0) >= 1 {
            return false;
        }
        let mut polys = vec![quartic.clone()];
        for i in 0..3 {
            polys.push(quartic.derivative(i));
        }
        polys.iter().all(|q| {
            eval_poly_coords(q, &self.point).rem(&self.modulus).is_zero()
        })
    }
}

/// Outcome of the smoothness decision.  `Smooth` and `Singular` are
/// certified; `InconclusiveRetry` means the randomized search for a generic
/// position or a primitive-element coordinate ran out of attempts without
/// certifying either answer.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SmoothnessVerdict {
    Smooth { certificate: SmoothnessCertificate },
    Singular { witness: SingularWitness },
    InconclusiveRetry { attempts: u32 },
}

impl SmoothnessVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SmoothnessVerdict::Smooth { .. })
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, SmoothnessVerdict::Singular { .. })
    }
}

const MAX_CHANGE_ATTEMPTS: u32 = 12;
const MAX_LINE_ATTEMPTS: u32 = 12;

/// Decide whether the plane quartic is smooth over the algebraic closure.
///
/// A `Smooth` verdict is certified by constant resultant gcds in a verified
/// generic position; a `Singular` verdict always carries a witness that has
/// been re-verified against the *original* quartic.  Singular points with no
/// real coordinates still count (smoothness is geometric).
pub fn check_quartic_smooth(quartic: &MPoly, rng: &mut impl Rng) -> Result<SmoothnessVerdict> {
    if quartic.vars().len() != 3 {
        return Err(Error::InvalidInput("quartic must live in three variables".into()));
    }
    if quartic.is_zero() {
        return Err(Error::Inadmissible("quartic is identically zero".into()));
    }
    quartic.require_homogeneous(4, "plane quartic")?;

    for attempt in 0..MAX_CHANGE_ATTEMPTS {
        let s = if attempt == 0 {
            RatMat::identity(3)
        } else {
            random_invertible(rng)
        };
        let f_proj = substitute_linear(quartic, &s);

        // Genericity: the coefficient of v^4 must be a nonzero constant so
        // that every resultant below specializes soundly.
        if f_proj.coeff(&[0, 4, 0]).is_zero() {
            continue;
        }

        // --- Singular points on the line w = 0 -----------------------------
        match infinity_scan(&f_proj, quartic, &s) {
            InfinityScan::Clear => {}
            InfinityScan::Witness(w) => return Ok(SmoothnessVerdict::Singular { witness: w }),
            InfinityScan::Failed => continue,
        }

        // --- Affine chart w = 1 -------------------------------------------
        let f = dehomogenize_w(&f_proj);
        let fx = f.derivative(0);
        let fy = f.derivative(1);

        let r2 = to_unipoly_x(&resultant_wrt(&f, &fy, 1));
        if r2.is_zero() {
            // f and f_y share a factor of positive y-degree, hence the
            // quartic has a repeated component: a whole curve of singular
            // points, which a random line will hit.
            if let Some(w) = line_witness(quartic, rng) {
                return Ok(SmoothnessVerdict::Singular { witness: w });
            }
            continue;
        }
        let r1 = to_unipoly_x(&resultant_wrt(&f, &fx, 1));
        if r1.is_zero() {
            // f is squarefree in the y-direction but shares a positive
            // y-degree factor with f_x; the only way is a factor free of x.
            let content = y_content(&f);
            if content.degree().unwrap_or(0) >= 1 {
                let m = content.squarefree_part().monic();
                if let Some(w) =
                    fiber_witness_swapped(&f, &fx, &fy, &m, quartic, &s)
                {
                    return Ok(SmoothnessVerdict::Singular { witness: w });
                }
            }
            continue;
        }

        let g = r1.gcd(&r2);
        if g.is_constant() {
            return Ok(SmoothnessVerdict::Smooth {
                certificate: SmoothnessCertificate {
                    change: s,
                    attempts: attempt + 1,
                },
            });
        }

        // Candidate x-coordinates of singular points: roots of g.
        let m = g.squarefree_part().monic();
        match fiber_analysis(&f, &fx, &fy, &m, quartic, &s, false) {
            FiberOutcome::AllEmpty => {
                // Every candidate fiber has no common root of (f, fx, fy):
                // the eliminant candidates were spurious.
                return Ok(SmoothnessVerdict::Smooth {
                    certificate: SmoothnessCertificate {
                        change: s,
                        attempts: attempt + 1,
                    },
                });
            }
            FiberOutcome::Witness(w) => {
                return Ok(SmoothnessVerdict::Singular { witness: w })
            }
            FiberOutcome::NeedNewCoordinates => continue,
        }
    }
    Ok(SmoothnessVerdict::InconclusiveRetry {
        attempts: MAX_CHANGE_ATTEMPTS,
    })
}

enum InfinityScan {
    Clear,
    Witness(SingularWitness),
    Failed,
}

/// Look for singular points on the line `w = 0` of the transformed quartic
/// `f_proj = quartic(S y)`: common projective roots of the three partial
/// derivatives restricted to that line.
fn infinity_scan(f_proj: &MPoly, original: &MPoly, s: &RatMat) -> InfinityScan {
    let partials: Vec<MPoly> = (0..3).map(|i| f_proj.derivative(i)).collect();
    // Restriction to w = 0 is a binary cubic in (u, v); record the affine
    // chart c(t) = B(t, 1) and the coefficient at [1:0].
    let mut charts = vec![];
    let mut vanish_at_10 = true;
    for p in &partials {
        let (chart, at10) = restrict_w0(p);
        if !at10.is_zero() {
            vanish_at_10 = false;
        }
        charts.push(chart);
    }
    if vanish_at_10 {
        // All three partials vanish at [1:0:0].
        let w = make_witness(
            s,
            [
                UniPoly::one(),
                UniPoly::zero(),
                UniPoly::zero(),
            ],
            &UniPoly::x(),
            original,
        );
        return match w {
            Some(w) => InfinityScan::Witness(w),
            None => InfinityScan::Failed,
        };
    }
    let mut g = UniPoly::zero();
    for c in &charts {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_constant() {
        return InfinityScan::Clear;
    }
    let m = g.squarefree_part().monic();
    let w = make_witness(
        s,
        [UniPoly::x(), UniPoly::one(), UniPoly::zero()],
        &m,
        original,
    );
    match w {
        Some(w) => InfinityScan::Witness(w),
        None => InfinityScan::Failed,
    }
}

/// Restriction of a homogeneous ternary polynomial to `w = 0`, as the
/// affine chart `B(t, 1)` of the resulting binary form plus the value
/// `B(1, 0)` (the coefficient of the pure-`u` monomial of top degree).
fn restrict_w0(p: &MPoly) -> (UniPoly, Rat) {
    let d = p.total_degree() as u16;
    let at10 = p.coeff(&[d, 0, 0]);
    let mut coeffs: Vec<Rat> = vec![];
    for (e, c) in p.terms() {
        if e.0[2] != 0 {
            continue;
        }
        let k = e.0[0] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rat::zero());
        }
        coeffs[k] += c;
    }
    (UniPoly::from_coeffs(coeffs), at10)
}

/// Search for a singular point on a positive-dimensional singular locus by
/// restricting everything to random rational lines.
fn line_witness(quartic: &MPoly, rng: &mut impl Rng) -> Option<SingularWitness> {
    let polys: Vec<MPoly> = std::iter::once(quartic.clone())
        .chain((0..3).map(|i| quartic.derivative(i)))
        .collect();
    for _ in 0..MAX_LINE_ATTEMPTS {
        let base = [
            Rat::one(),
            Rat::from_int(rng.gen_range(-4..=4)),
            Rat::from_int(rng.gen_range(-4..=4)),
        ];
        let dir = [
            Rat::zero(),
            Rat::one(),
            Rat::from_int(rng.gen_range(-4..=4i64) | 1),
        ];
        let coords: Vec<UniPoly> = (0..3)
            .map(|i| {
                UniPoly::from_coeffs(vec![base[i].clone(), dir[i].clone()])
            })
            .collect();
        let restricted: Vec<UniPoly> =
            polys.iter().map(|p| eval_poly_coords(p, &coords)).collect();
        if restricted.iter().all(|r| r.is_zero()) {
            // The whole line is singular; its base point is a rational
            // witness.
            let w = make_witness(
                &RatMat::identity(3),
                [
                    UniPoly::constant(base[0].clone()),
                    UniPoly::constant(base[1].clone()),
                    UniPoly::constant(base[2].clone()),
                ],
                &UniPoly::x(),
                quartic,
            );
            if w.is_some() {
                return w;
            }
            continue;
        }
        let mut g = UniPoly::zero();
        for r in &restricted {
            g = g.gcd(r);
        }
        if g.is_zero() || g.is_constant() {
            continue;
        }
        let m = g.squarefree_part().monic();
        let w = make_witness(
            &RatMat::identity(3),
            [coords[0].clone(), coords[1].clone(), coords[2].clone()],
            &m,
            quartic,
        );
        if w.is_some() {
            return w;
        }
    }
    None
}

/// Map witness coordinates through the coordinate change `S` (the singular
/// point of `quartic(S y)` at `y*` corresponds to `S y*`), reduce modulo the
/// modulus, and fully verify against the original quartic.
fn make_witness(
    s: &RatMat,
    coords: [UniPoly; 3],
    modulus: &UniPoly,
    original: &MPoly,
) -> Option<SingularWitness> {
    let mapped: Vec<UniPoly> = (0..3)
        .map(|i| {
            let mut acc = UniPoly::zero();
            for (j, c) in coords.iter().enumerate() {
                acc = acc.add(&c.scale(&s[(i, j)]));
            }
            acc.rem(modulus)
        })
        .collect();
    let w = SingularWitness {
        modulus: modulus.clone(),
        point: mapped,
    };
    if w.verify(original) {
        Some(w)
    } else {
        None
    }
}

enum FiberOutcome {
    /// No candidate fiber contains a common root: candidates were spurious.
    AllEmpty,
    Witness(SingularWitness),
    /// Some fiber gcd has degree >= 2 (point not rational over the
    /// x-coordinate field); a new random coordinate generically fixes this.
    NeedNewCoordinates,
}

/// For each squarefree factor of `m`, compute the gcd of `(f, fx, fy)` over
/// `Q[x]/(factor)` with dynamic splitting, and classify.
fn fiber_analysis(
    f: &MPoly,
    fx: &MPoly,
    fy: &MPoly,
    m: &UniPoly,
    original: &MPoly,
    s: &RatMat,
    swapped: bool,
) -> FiberOutcome {
    let fibers = fiber_gcds(&[f, fx, fy], m.clone());
    let mut all_empty = true;
    let mut need_new = false;
    for (mi, g) in fibers {
        match g.degree() {
            None => {
                // All inputs vanish mod mi: cannot happen when f is monic in
                // y, but keep it sound: treat as needing new coordinates.
                need_new = true;
                all_empty = false;
            }
            Some(0) => {}
            Some(1) => {
                all_empty = false;
                // Monic linear: y + c0 = 0, so y0 = -c0(x).
                let y0 = g.coeff(0).neg().rem(&mi);
                let affine = if swapped {
                    [y0, UniPoly::x(), UniPoly::one()]
                } else {
                    [UniPoly::x(), y0, UniPoly::one()]
                };
                if let Some(w) = make_witness(s, affine, &mi, original) {
                    return FiberOutcome::Witness(w);
                }
                need_new = true;
            }
            Some(_) => {
                all_empty = false;
                need_new = true;
            }
        }
    }
    let _ = need_new;
    if all_empty {
        FiberOutcome::AllEmpty
    } else {
        // Some fiber had a common root we could not pin to a verified
        // witness; never certify smoothness in that situation.
        FiberOutcome::NeedNewCoordinates
    }
}

/// Variant of `fiber_analysis` with the roles of x and y exchanged (used
/// when the candidate modulus constrains the y-coordinate).
fn fiber_witness_swapped(
    f: &MPoly,
    fx: &MPoly,
    fy: &MPoly,
    m: &UniPoly,
    original: &MPoly,
    s: &RatMat,
) -> Option<SingularWitness> {
    let fs = swap_xy(f);
    // After swapping coordinates, d/dx and d/dy swap too.
    let gx = swap_xy(fy);
    let gy = swap_xy(fx);
    match fiber_analysis(&fs, &gx, &gy, m, original, s, true) {
        FiberOutcome::Witness(w) => Some(w),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Arithmetic in Q[x]/(m) with dynamic splitting
// ---------------------------------------------------------------------------

/// A polynomial in `y` with coefficients in `Q[x]/(m)`.
#[derive(Clone, Debug)]
pub(crate) struct QPoly {
    c: Vec<UniPoly>,
}

impl QPoly {
    fn trim(mut self) -> Self {
        while self.c.last().is_some_and(|t| t.is_zero()) {
            self.c.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    fn coeff(&self, i: usize) -> UniPoly {
        self.c.get(i).cloned().unwrap_or_else(UniPoly::zero)
    }

    fn from_mpoly(f: &MPoly, m: &UniPoly) -> Self {
        let cs = f.coeffs_wrt(1);
        QPoly {
            c: cs
                .iter()
                .map(|c| {
                    UniPoly::from_mpoly(c, 0)
                        .expect("coefficient must only involve x")
                        .rem(m)
                })
                .collect(),
        }
        .trim()
    }
}

/// Either a finished value or a discovered proper monic factor of the
/// modulus, which splits the computation.
enum QOut<T> {
    Done(T),
    Split(UniPoly),
}

/// Inverse of `a` modulo `m`, or a proper factor of `m` when `a` is a zero
/// divisor.  `a` must not reduce to zero.
fn inv_mod(a: &UniPoly, m: &UniPoly) -> QOut<UniPoly> {
    let ar = a.rem(m);
    assert!(!ar.is_zero(), "inverting zero in the quotient ring");
    let (g, s, _) = ar.egcd(m);
    if g.is_constant() {
        QOut::Done(s.rem(m))
    } else {
        QOut::Split(g)
    }
}

/// Remainder of `a` by `b` (nonzero, with precomputed inverted leading
/// coefficient `b_lc_inv`) in `(Q[x]/(m))[y]`.
fn q_rem(a: &QPoly, b: &QPoly, b_lc_inv: &UniPoly, m: &UniPoly) -> QPoly {
    let db = b.degree().expect("divisor must be nonzero");
    let mut r = a.c.clone();
    while r.len() > db {
        let lead = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        if !lead.is_zero() {
            let factor = lead.mul(b_lc_inv).rem(m);
            for i in 0..=db {
                let t = b.c[i].mul(&factor).rem(m);
                r[k + i] = r[k + i].sub(&t).rem(m);
            }
        }
        r.pop();
    }
    QPoly { c: r }.trim()
}

/// Monic gcd of two elements of `(Q[x]/(m))[y]`, or a splitting of `m`.
fn q_gcd(mut a: QPoly, mut b: QPoly, m: &UniPoly) -> QOut<QPoly> {
    loop {
        if b.is_zero() {
            if a.is_zero() {
                return QOut::Done(a);
            }
            let lc = a.c.last().unwrap().clone();
            return match inv_mod(&lc, m) {
                QOut::Done(inv) => {
                    let c = a.c.iter().map(|x| x.mul(&inv).rem(m)).collect();
                    QOut::Done(QPoly { c }.trim())
                }
                QOut::Split(d) => QOut::Split(d),
            };
        }
        let lc = b.c.last().unwrap().clone();
        let inv = match inv_mod(&lc, m) {
            QOut::Done(i) => i,
            QOut::Split(d) => return QOut::Split(d),
        };
        let r = q_rem(&a, &b, &inv, m);
        a = b;
        b = r;
    }
}

/// gcd of several bivariate polynomials over `Q[x]/(m)` for every squarefree
/// factor of `m` discovered along the way.  Returns `(factor, gcd mod
/// factor)` pairs covering all roots of `m`.
fn fiber_gcds(polys: &[&MPoly], m0: UniPoly) -> Vec<(UniPoly, QPoly)> {
    let mut stack = vec![m0];
    let mut out = vec![];
    'outer: while let Some(m) = stack.pop() {
        if m.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut acc: Option<QPoly> = None;
        for f in polys {
            let q = QPoly::from_mpoly(f, &m);
            acc = Some(match acc {
                None => q,
                Some(a) => match q_gcd(a, q, &m) {
                    QOut::Done(g) => g,
                    QOut::Split(d) => {
                        let (quot, rem) = m.div_rem(&d);
                        debug_assert!(rem.is_zero(), "splitting factor must divide modulus");
                        stack.push(d);
                        stack.push(quot);
                        continue 'outer;
                    }
                },
            });
        }
        out.push((m, acc.expect("at least one polynomial")));
    }
    out
}

// ---------------------------------------------------------------------------
// Small polynomial plumbing
// ---------------------------------------------------------------------------

/// Substitute the linear change `x = S y` into a ternary polynomial.
pub fn substitute_linear(p: &MPoly, s: &RatMat) -> MPoly {
    let vars = p.vars().clone();
    let n = vars.len();
    assert_eq!(s.rows(), n);
    assert_eq!(s.cols(), n);
    let images: Vec<MPoly> = (0..n)
        .map(|i| {
            let mut acc = MPoly::zero(&vars);
            for j in 0..n {
                if !s[(i, j)].is_zero() {
                    acc = acc.add(&MPoly::var(&vars, j).scale(&s[(i, j)]));
                }
            }
            acc
        })
        .collect();
    p.substitute(&images)
}

/// Chart `w = 1` of a ternary polynomial, in variables `{x, y}`.
pub fn dehomogenize_w(p: &MPoly) -> MPoly {
    let xy = VarSet::xy();
    MPoly::from_terms(
        &xy,
        p.terms().map(|(e, c)| (vec![e.0[0], e.0[1]], c.clone())),
    )
}

/// Exchange the two variables of a bivariate polynomial.
fn swap_xy(p: &MPoly) -> MPoly {
    let xy = VarSet::xy();
    MPoly::from_terms(
        &xy,
        p.terms().map(|(e, c)| (vec![e.0[1], e.0[0]], c.clone())),
    )
}

/// Interpret a bivariate polynomial that does not involve `y` as univariate
/// in `x`.
fn to_unipoly_x(p: &MPoly) -> UniPoly {
    UniPoly::from_mpoly(p, 0).expect("polynomial must be univariate in x")
}

/// gcd of the coefficients of `f` viewed in `Q[y][x]`: the largest factor of
/// `f` free of `x`.
fn y_content(f: &MPoly) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in f.coeffs_wrt(0) {
        // c is a polynomial in y only.
        let cy = UniPoly::from_mpoly(&swap_xy(&c), 0).expect("content coefficient in y");
        g = g.gcd(&cy);
    }
    g
}

/// Evaluate a polynomial at polynomial coordinates (exact composition).
pub fn eval_poly_coords(p: &MPoly, coords: &[UniPoly]) -> UniPoly {
    assert_eq!(coords.len(), p.vars().len());
    let mut acc = UniPoly::zero();
    for (e, c) in p.terms() {
        let mut term = UniPoly::constant(c.clone());
        for (i, &exp) in e.0.iter().enumerate() {
            for _ in 0..exp {
                term = term.mul(&coords[i]);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// Random 3x3 invertible matrix with small integer entries.
fn random_invertible(rng: &mut impl Rng) -> RatMat {
    loop {
        let m = RatMat::from_fn(3, 3, |_, _| Rat::from_int(rng.gen_range(-3..=3)));
        if !m.det().is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn uvw() -> VarSet {
        VarSet::uvw()
    }

    /// The worked example used across the crate:
    /// Q1 = 2u^2 + 3v^2 - 6w^2, Q2 = u^2 + v*w, Q3 = v^2 + u*w.
    fn worked_triple() -> (TernaryForm, TernaryForm, TernaryForm) {
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
        (q1, q2, q3)
    }

    #[test]
    fn worked_example_delta_expansion() {
        let (q1, q2, q3) = worked_triple();
        let cover = CoverSpec::new(q1, q2, q3);
        let d = cover.delta();
        assert_eq!(d.homogeneous_degree(), Some(4));
        // Hand expansion:
        // delta = u^4 - 2u^3 w - 2u^2 v^2 + 2u^2 v w - 3u v^2 w + 6u w^3
        //         - 3v^4 + 7v^2 w^2
        let expected: &[(&[u16], i64)] = &[
            (&[4, 0, 0], 1),
            (&[3, 0, 1], -2),
            (&[2, 2, 0], -2),
            (&[2, 1, 1], 2),
            (&[1, 2, 1], -3),
            (&[1, 0, 3], 6),
            (&[0, 4, 0], -3),
            (&[0, 2, 2], 7),
        ];
        assert_eq!(d.num_terms(), expected.len());
        for (e, c) in expected {
            assert_eq!(d.coeff(e), Rat::from_int(*c), "coefficient of {e:?}");
        }
    }

    #[test]
    fn worked_example_sextic_expansion() {
        let (q1, q2, q3) = worked_triple();
        let cover = CoverSpec::new(q1, q2, q3);
        cover.verify_sextic().unwrap();
        let w = cover.sextic_binary();
        // Hand expansion of det(t0^2 M1 + 2 t0 t1 M2 + t1^2 M3):
        // -36 t0^6 - 36 t0^5 t1 - 14 t0^4 t1^2 - 14 t0^3 t1^3
        // - 3/4 t0^2 t1^4 - 1/4 t1^6
        assert_eq!(w.coeff(&[6, 0]), Rat::from_int(-36));
        assert_eq!(w.coeff(&[5, 1]), Rat::from_int(-36));
        assert_eq!(w.coeff(&[4, 2]), Rat::from_int(-14));
        assert_eq!(w.coeff(&[3, 3]), Rat::from_int(-14));
        assert_eq!(w.coeff(&[2, 4]), Rat::new(-3, 4));
        assert_eq!(w.coeff(&[1, 5]), Rat::zero());
        assert_eq!(w.coeff(&[0, 6]), Rat::new(-1, 4));
        // Both extreme values are negative, yet W takes positive values on
        // the real line (e.g. near t = -9/10), so the curve has real points.
        assert!(cover.gamma_real_nonempty());
    }

    #[test]
    fn covariance_under_coordinate_change() {
        let (q1, q2, q3) = worked_triple();
        let cover = CoverSpec::new(q1.clone(), q2.clone(), q3.clone());
        let s = RatMat::from_int_rows(&[&[1, 2, 0], &[0, 1, -1], &[1, 0, 3]]);
        let ch = crate::quadform::CoordChange::new(s.clone()).unwrap();
        let t1 = q1.transformed(&ch);
        let t2 = q2.transformed(&ch);
        let t3 = q3.transformed(&ch);
        let moved = CoverSpec::new(t1, t2, t3);
        // delta moves by substitution...
        assert_eq!(moved.delta(), &substitute_linear(cover.delta(), &s));
        // ...and the sextic by the square of the determinant.
        let det2 = &s.det() * &s.det();
        assert_eq!(
            moved.sextic_binary(),
            &cover.sextic_binary().scale(&det2)
        );
    }

    #[test]
    fn double_cover_real_predicate_fixtures() {
        let vars = uvw();
        let u = MPoly::var(&vars, 0);
        let v = MPoly::var(&vars, 1);
        let w = MPoly::var(&vars, 2);
        let p = [Rat::one(), Rat::one(), Rat::one()];

        // (Q1, Q2, Q3)(p) = (4, 2, 1): Q1 > 0 so a real point exists.
        let c1 = CoverSpec::new(
            TernaryForm::from_poly(&u.pow(2).scale(&Rat::from_int(4))).unwrap(),
            TernaryForm::from_poly(&u.pow(2).scale(&Rat::from_int(2))).unwrap(),
            TernaryForm::from_poly(&u.pow(2).add(&v.pow(2)).sub(&w.pow(2))).unwrap(),
        );
        assert!(c1.double_cover_real_over(&p));

        // (-1, 1, -1): Q1 < 0, no real point.
        let c2 = CoverSpec::new(
            TernaryForm::from_poly(&u.pow(2).neg()).unwrap(),
            TernaryForm::from_poly(&u.pow(2)).unwrap(),
            TernaryForm::from_poly(&u.pow(2).neg().add(&v.pow(2)).sub(&w.pow(2))).unwrap(),
        );
        assert!(!c2.double_cover_real_over(&p));

        // (0, 0, 5): branch point with nonnegative Q3, counts as real.
        let q = u.pow(2).sub(&v.pow(2));
        let c3 = CoverSpec::new(
            TernaryForm::from_poly(&q).unwrap(),
            TernaryForm::from_poly(&q).unwrap(),
            TernaryForm::from_poly(&w.pow(2).scale(&Rat::from_int(5)).add(&q)).unwrap(),
        );
        assert!(c3.double_cover_real_over(&p));
    }

    #[test]
    fn gamma_nonempty_tracks_sextic_definiteness() {
        let neg = RatMat::identity(3).scale(&Rat::from_int(-1));
        let pos = RatMat::identity(3);
        let zero = RatMat::zero(3, 3);
        let f = |m: &RatMat| TernaryForm::from_gram(m.clone()).unwrap();
        // W = -(t0^2 + t1^2)^3: negative definite, no real points.
        let c = CoverSpec::new(f(&neg), f(&zero), f(&neg));
        assert!(!c.gamma_real_nonempty());
        // W = (t0^2 + t1^2)^3: positive.
        let c = CoverSpec::new(f(&pos), f(&zero), f(&pos));
        assert!(c.gamma_real_nonempty());
    }

    #[test]
    fn sextic_separability_detects_repeated_roots() {
        let f = |rows: &[&[i64]]| TernaryForm::from_int_gram(rows).unwrap();
        let id = f(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let zero = TernaryForm::from_gram(RatMat::zero(3, 3)).unwrap();
        // det(t0^2 I + t1^2 diag(1,1,4)) = (t0^2+t1^2)^2 (t0^2+4t1^2).
        let d114 = f(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 4]]);
        let c = CoverSpec::new(id.clone(), zero.clone(), d114);
        assert!(!c.sextic_is_separable());
        // Worked example is separable.
        let (q1, q2, q3) = worked_triple();
        let c = CoverSpec::new(q1, q2, q3);
        assert!(c.sextic_is_separable());
    }

    #[test]
    fn smooth_fermat_style_quartic() {
        let vars = uvw();
        let q = MPoly::var(&vars, 0)
            .pow(4)
            .add(&MPoly::var(&vars, 1).pow(4))
            .sub(&MPoly::var(&vars, 2).pow(4));
        let mut rng = StdRng::seed_from_u64(31);
        let v = check_quartic_smooth(&q, &mut rng).unwrap();
        assert!(v.is_smooth(), "{v:?}");
    }

    #[test]
    fn nodal_quartic_is_singular_with_verified_witness() {
        // (u^2+v^2)^2 - w^2(u^2 - v^2): node at [0:0:1].
        let vars = uvw();
        let u = MPoly::var(&vars, 0);
        let v = MPoly::var(&vars, 1);
        let w = MPoly::var(&vars, 2);
        let q = u
            .pow(2)
            .add(&v.pow(2))
            .pow(2)
            .sub(&w.pow(2).mul(&u.pow(2).sub(&v.pow(2))));
        let mut rng = StdRng::seed_from_u64(32);
        let verdict = check_quartic_smooth(&q, &mut rng).unwrap();
        match verdict {
            SmoothnessVerdict::Singular { witness } => assert!(witness.verify(&q)),
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn repeated_conic_found_by_line_search() {
        let vars = uvw();
        let circle = MPoly::var(&vars, 0)
            .pow(2)
            .add(&MPoly::var(&vars, 1).pow(2))
            .sub(&MPoly::var(&vars, 2).pow(2));
        let q = circle.pow(2);
        let mut rng = StdRng::seed_from_u64(33);
        let verdict = check_quartic_smooth(&q, &mut rng).unwrap();
        match verdict {
            SmoothnessVerdict::Singular { witness } => {
                assert!(witness.verify(&q));
                // Witness lies on the circle itself.
                assert!(eval_poly_coords(&circle, &witness.point)
                    .rem(&witness.modulus)
                    .is_zero());
            }
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn irrational_singular_points_get_algebraic_witness() {
        // (u^2 - 2w^2)^2 - v^3 w: singular exactly at u = +/- sqrt(2), v = 0.
        let vars = uvw();
        let u = MPoly::var(&vars, 0);
        let v = MPoly::var(&vars, 1);
        let w = MPoly::var(&vars, 2);
        let q = u
            .pow(2)
            .sub(&w.pow(2).scale(&Rat::from_int(2)))
            .pow(2)
            .sub(&v.pow(3).mul(&w));
        let mut rng = StdRng::seed_from_u64(34);
        let verdict = check_quartic_smooth(&q, &mut rng).unwrap();
        match verdict {
            SmoothnessVerdict::Singular { witness } => {
                assert!(witness.verify(&q));
                assert!(witness.modulus.degree().unwrap() >= 1);
            }
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn binary_only_quartic_is_singular_at_the_vertex() {
        // v^4 + w^4 is a cone with vertex [1:0:0].
        let vars = uvw();
        let q = MPoly::var(&vars, 1).pow(4).add(&MPoly::var(&vars, 2).pow(4));
        let mut rng = StdRng::seed_from_u64(35);
        let verdict = check_quartic_smooth(&q, &mut rng).unwrap();
        match verdict {
            SmoothnessVerdict::Singular { witness } => assert!(witness.verify(&q)),
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn zero_quartic_is_rejected() {
        let z = MPoly::zero(&uvw());
        let mut rng = StdRng::seed_from_u64(36);
        assert!(matches!(
            check_quartic_smooth(&z, &mut rng),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn quotient_ring_gcd_splits_reducible_moduli() {
        // m = (x^2 - 2)(x^2 - 3); f = y - x, g = y(x^2-2) - x(x^2-2):
        // over the factor x^2-2 of m, g vanishes identically; the gcd

        // machinery must split the modulus to stay consistent.
        let m = UniPoly::from_ints(&[6, 0, -5, 0, 1]); // x^4 - 5x^2 + 6
        let xy = VarSet::xy();
        let x = MPoly::var(&xy, 0);
        let y = MPoly::var(&xy, 1);
        let f = y.sub(&x);
        let x2m2 = x.pow(2).sub(&MPoly::constant(&xy, Rat::from_int(2)));
        let g = y.mul(&x2m2).sub(&x.mul(&x2m2));
        let fibers = fiber_gcds(&[&f, &g], m);
        // Total degree of factors covers the modulus.
        let total: usize = fibers.iter().map(|(mi, _)| mi.degree().unwrap()).sum();
        assert_eq!(total, 4);
        for (mi, gy) in fibers {
            // On every factor the gcd is y - x (g is either 0 or a multiple).
            assert_eq!(gy.degree(), Some(1), "modulus {mi}");
            assert_eq!(gy.coeff(0).rem(&mi), UniPoly::x().scale(&Rat::from_int(-1)).rem(&mi));
        }
    }

    #[test]
    fn eval_poly_coords_composes() {
        let vars = uvw();
        let p = MPoly::var(&vars, 0)
            .pow(2)
            .add(&MPoly::var(&vars, 1).mul(&MPoly::var(&vars, 2)));
        // coords (t, t+1, 2): p = t^2 + 2(t+1) = t^2 + 2t + 2
        let coords = vec![
            UniPoly::x(),
            UniPoly::from_ints(&[1, 1]),
            UniPoly::constant(Rat::from_int(2)),
        ];
        assert_eq!(eval_poly_coords(&p, &coords), UniPoly::from_ints(&[2, 2, 1]));
    }
}
