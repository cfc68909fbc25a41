//! Ternary quadratic forms over the rationals: Gram matrices, congruence
//! diagonalization, rank / discriminant / signature, and the two normal
//! forms used to classify an input triple by the rank of its first form.

use crate::matrix::RatMat;
use crate::poly::{MPoly, VarSet};
use crate::rat::Rat;
use crate::{Error, Result};
use serde::Serialize;

/// Invertible linear change of coordinates `x = S * y` on the plane.
///
/// Pulling a form back along the change replaces its Gram matrix `M` by
/// `S^T * M * S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordChange {
    mat: RatMat,
}

impl CoordChange {
    pub fn identity(n: usize) -> Self {
        CoordChange {
            mat: RatMat::identity(n),
        }
    }

    pub fn new(mat: RatMat) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::InvalidInput("coordinate change must be square".into()));
        }
        if mat.det().is_zero() {
            return Err(Error::InvalidInput(
                "coordinate change must be invertible".into(),
            ));
        }
        Ok(CoordChange { mat })
    }

    pub fn matrix(&self) -> &RatMat {
        &self.mat
    }

    pub fn det(&self) -> Rat {
        self.mat.det()
    }

    /// `self` then `next`: x = S1 * (S2 * z).
    pub fn then(&self, next: &CoordChange) -> CoordChange {
        CoordChange {
            mat: self.mat.mul(&next.mat),
        }
    }

    /// Image of the `i`-th coordinate direction (column `i`).
    pub fn column(&self, i: usize) -> Vec<Rat> {
        (0..self.mat.rows()).map(|r| self.mat[(r, i)].clone()).collect()
    }

    /// Map a point of the new coordinates to the old ones.
    pub fn apply_point(&self, y: &[Rat]) -> Vec<Rat> {
        assert_eq!(y.len(), self.mat.cols());
        (0..self.mat.rows())
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.mat.cols() {
                    acc += &self.mat[(i, j)] * &y[j];
                }
                acc
            })
            .collect()
    }
}

/// A ternary quadratic form, stored by its symmetric Gram matrix `M`
/// with the convention `Q(x) = x^T M x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    gram: RatMat,
}

/// Inertia of a real symmetric form: counts of positive, negative, and zero
/// eigenvalue signs (computed exactly by congruence diagonalization).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl TernaryForm {
    pub fn from_gram(gram: RatMat) -> Result<Self> {
        if gram.rows() != 3 || gram.cols() != 3 {
            return Err(Error::InvalidInput("Gram matrix must be 3x3".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidInput("Gram matrix must be symmetric".into()));
        }
        Ok(TernaryForm { gram })
    }

    pub fn from_int_gram(rows: &[&[i64]]) -> Result<Self> {
        TernaryForm::from_gram(RatMat::from_int_rows(rows))
    }

    /// Parse a homogeneous quadratic polynomial in variables `{u, v, w}`.
    pub fn from_poly(p: &MPoly) -> Result<Self> {
        if p.vars().len() != 3 {
            return Err(Error::InvalidInput(
                "ternary form needs exactly three variables".into(),
            ));
        }
        p.require_homogeneous(2, "ternary quadratic form")?;
        let mut gram = RatMat::zero(3, 3);
        for (e, c) in p.terms() {
            let idx: Vec<usize> = (0..3).filter(|&i| e.0[i] > 0).collect();
            match idx.as_slice() {
                [i] => gram[(*i, *i)] = c.clone(),
                [i, j] => {
                    let half = c * &Rat::new(1, 2);
                    gram[(*i, *j)] = half.clone();
                    gram[(*j, *i)] = half;
                }
                _ => unreachable!("degree-2 monomial touches at most two variables"),
            }
        }
        Ok(TernaryForm { gram })
    }

    pub fn gram(&self) -> &RatMat {
        &self.gram
    }

    /// The form as a polynomial in the given three-variable set.
    pub fn poly(&self, vars: &VarSet) -> MPoly {
        assert_eq!(vars.len(), 3);
        let mut terms = vec![];
        for i in 0..3 {
            if !self.gram[(i, i)].is_zero() {
                let mut e = vec![0u16; 3];
                e[i] = 2;
                terms.push((e, self.gram[(i, i)].clone()));
            }
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                let c = &self.gram[(i, j)] * &Rat::from_int(2);
                if !c.is_zero() {
                    let mut e = vec![0u16; 3];
                    e[i] = 1;
                    e[j] = 1;
                    terms.push((e, c));
                }
            }
        }
        MPoly::from_terms(vars, terms)
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), 3);
        let mut acc = Rat::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc += &(&self.gram[(i, j)] * &x[i]) * &x[j];
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    /// Discriminant, normalized as `-det(M)` so that forms representing a
    /// conic with a rational point of even rank behave uniformly; for a
    /// ternary form this is the classical choice making the square class
    /// well-defined under scaling.
    pub fn disc(&self) -> Rat {
        -self.gram.det()
    }

    pub fn disc_is_square(&self) -> bool {
        self.disc().is_square()
    }

    /// Pull back along `x = S y`: Gram matrix becomes `S^T M S`.
    pub fn transformed(&self, change: &CoordChange) -> TernaryForm {
        let s = change.matrix();
        TernaryForm {
            gram: s.transpose().mul(&self.gram).mul(s),
        }
    }

    /// Exact congruence diagonalization: returns a change `S` and the
    /// diagonal entries `d` with `S^T M S = diag(d)`.  Zero entries appear
    /// exactly when the form is degenerate.
    pub fn diagonalize(&self) -> (CoordChange, Vec<Rat>) {
        let n = 3;
        let mut m = self.gram.clone();
        let mut s = RatMat::identity(n);

        for k in 0..n {
            if m[(k, k)].is_zero() {
                // Prefer a later diagonal pivot (swap coordinates)...
                if let Some(i) = ((k + 1)..n).find(|&i| !m[(i, i)].is_zero()) {
                    swap_coords(&mut m, &mut s, k, i);
                } else if let Some(i) = ((k + 1)..n).find(|&i| !m[(k, i)].is_zero()) {
                    // ...otherwise create one: x_i <- x_i + x_k turns the
                    // off-diagonal 2*m[k][i] into a diagonal contribution.
                    add_coord(&mut m, &mut s, k, i, &Rat::one());
                } else {
                    continue; // row k is entirely zero
                }
            }
            let pivot = m[(k, k)].clone();
            for i in (k + 1)..n {
                if m[(k, i)].is_zero() {
                    continue;
                }
                let c = -&(&m[(k, i)] * &pivot.recip());
                add_coord(&mut m, &mut s, i, k, &c);
            }
        }

        let diag: Vec<Rat> = (0..n).map(|i| m[(i, i)].clone()).collect();
        let change = CoordChange { mat: s };
        debug_assert_eq!(
            self.transformed(&change).gram,
            RatMat::diag(&diag),
            "diagonalization invariant violated"
        );
        (change, diag)
    }

    /// Exact real inertia (Sylvester's law).
    pub fn inertia(&self) -> Inertia {
        let (_, d) = self.diagonalize();
        let plus = d.iter().filter(|x| x.signum() > 0).count();
        let minus = d.iter().filter(|x| x.signum() < 0).count();
        Inertia {
            plus,
            minus,
            zero: 3 - plus - minus,
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        let i = self.inertia();
        i.plus == 3
    }

    pub fn is_negative_definite(&self) -> bool {
        let i = self.inertia();
        i.minus == 3
    }

    /// Normal form for a rank-3 form with square discriminant:
    /// a change of coordinates after which the form is
    /// `a*u^2 + b*v^2 - a*b*w^2`.  Errors if the rank or discriminant
    /// condition fails.
    pub fn normalize_rank3_square_disc(&self) -> Result<(Rat, Rat, CoordChange)> {
        if self.rank() != 3 {
            return Err(Error::Inadmissible(format!(
                "normal form requires rank 3, got rank {}",
                self.rank()
            )));
        }
        let disc = self.disc();
        let Some(s) = disc.sqrt_exact() else {
            return Err(Error::Inadmissible(format!(
                "normal form requires square discriminant, got {disc}"
            )));
        };
        let (change, d) = self.diagonalize();
        let (a, b, c) = (d[0].clone(), d[1].clone(), d[2].clone());
        // Want the third coefficient to become -a*b: scale w by g with
        // c * g^2 = -a*b, i.e. g^2 = -a*b/c = disc / c^2, so g = sqrt(disc)/c.
        let g = &s * &c.recip();
        debug_assert_eq!(&(&g * &g) * &c, -&(&a * &b));
        let scale = CoordChange {
            mat: RatMat::diag(&[Rat::one(), Rat::one(), g.abs()]),
        };
        let total = change.then(&scale);
        debug_assert_eq!(
            self.transformed(&total).gram,
            RatMat::diag(&[a.clone(), b.clone(), -&(&a * &b)])
        );
        Ok((a, b, total))
    }

    /// Normal form for a rank-2 form: a change of coordinates after which
    /// the form is `a*v^2 + b*w^2` (the kernel direction becomes the
    /// `u`-axis).  Errors if the rank is not exactly 2.
    pub fn normalize_rank2(&self) -> Result<(Rat, Rat, CoordChange)> {
        if self.rank() != 2 {
            return Err(Error::Inadmissible(format!(
                "normal form requires rank 2, got rank {}",
                self.rank()
            )));
        }
        let (change, d) = self.diagonalize();
        let zero_at = d.iter().position(|x| x.is_zero()).expect("rank 2 has a kernel");
        // Permutation sending the kernel coordinate to position 0 and the
        // two nonzero ones to positions 1 and 2 (cycle keeps det = +1 moot;
        // invertibility is all that matters).
        let others: Vec<usize> = (0..3).filter(|&i| i != zero_at).collect();
        let mut perm = RatMat::zero(3, 3);
        perm[(zero_at, 0)] = Rat::one();
        perm[(others[0], 1)] = Rat::one();
        perm[(others[1], 2)] = Rat::one();
        let total = change.then(&CoordChange { mat: perm });
        let a = d[others[0]].clone();
        let b = d[others[1]].clone();
        debug_assert_eq!(
            self.transformed(&total).gram,
            RatMat::diag(&[Rat::zero(), a.clone(), b.clone()])
        );
        Ok((a, b, total))
    }
}

fn swap_coords(m: &mut RatMat, s: &mut RatMat, i: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        let t = m[(i, c)].clone();
        m[(i, c)] = m[(j, c)].clone();
        m[(j, c)] = t;
    }
    for r in 0..n {
        let t = m[(r, i)].clone();
        m[(r, i)] = m[(r, j)].clone();
        m[(r, j)] = t;
    }
    for r in 0..n {
        let t = s[(r, i)].clone();
        s[(r, i)] = s[(r, j)].clone();
        s[(r, j)] = t;
    }
}

/// Congruence step for the substitution `x_i <- x_i + c * x_j`:
/// column/row `i` of `M` gains `c` times column/row `j`; the accumulated
/// change matrix gains the same column operation.
fn add_coord(m: &mut RatMat, s: &mut RatMat, i: usize, j: usize, c: &Rat) {
    let n = m.rows();
    for r in 0..n {
        let t = &m[(r, j)] * c;
        m[(r, i)] = &m[(r, i)] + &t;
    }
    for col in 0..n {
        let t = &m[(j, col)] * c;
        m[(i, col)] = &m[(i, col)] + &t;
    }
    for r in 0..n {
        let t = &s[(r, j)] * c;
        s[(r, i)] = &s[(r, i)] + &t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn uvw() -> VarSet {
        VarSet::uvw()
    }

    fn form(src: &str) -> TernaryForm {
        // tiny helper: parse from explicit polynomials built in tests
        match src {
            "2u2+3v2-6w2" => TernaryForm::from_int_gram(&[
                &[2, 0, 0],
                &[0, 3, 0],
                &[0, 0, -6],
            ])
            .unwrap(),
            _ => panic!("unknown fixture"),
        }
    }

    #[test]
    fn poly_gram_round_trip() {
        let vars = uvw();
        let u = MPoly::var(&vars, 0);
        let v = MPoly::var(&vars, 1);
        let w = MPoly::var(&vars, 2);
        // q = u^2 + v*w
        let q = u.pow(2).add(&v.mul(&w));
        let f = TernaryForm::from_poly(&q).unwrap();
        assert_eq!(f.gram()[(1, 2)], Rat::new(1, 2));
        assert_eq!(f.poly(&vars), q);
        assert_eq!(f.rank(), 3);
        // disc = -det = -(1 * (0*0 - 1/4)) = 1/4, a square
        assert_eq!(f.disc(), Rat::new(1, 4));
        assert!(f.disc_is_square());
    }

    #[test]
    fn eval_matches_poly_eval() {
        let vars = uvw();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let g = RatMat::from_fn(3, 3, |_, _| Rat::from_int(rng.gen_range(-4..=4)));
            let sym = g.add(&g.transpose()).scale(&Rat::new(1, 2));
            let f = TernaryForm::from_gram(sym).unwrap();
            let pt: Vec<Rat> = (0..3).map(|_| Rat::from_int(rng.gen_range(-5..=5))).collect();
            assert_eq!(f.eval(&pt), f.poly(&vars).eval(&pt));
        }
    }

    #[test]
    fn diagonalization_on_random_forms() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..40 {
            let g = RatMat::from_fn(3, 3, |_, _| Rat::from_int(rng.gen_range(-3..=3)));
            let sym = g.add(&g.transpose());
            let f = TernaryForm::from_gram(sym).unwrap();
            let (change, d) = f.diagonalize();
            assert_eq!(f.transformed(&change).gram, RatMat::diag(&d));
            assert!(!change.det().is_zero());
            assert_eq!(d.iter().filter(|x| !x.is_zero()).count(), f.rank());
        }
    }

    #[test]
    fn diagonalize_hyperbolic_plane_term() {
        // u*v has zero diagonal everywhere: forces the off-diagonal path.
        let f = TernaryForm::from_gram(RatMat::from_rows(&[
            &[Rat::zero(), Rat::new(1, 2), Rat::zero()],
            &[Rat::new(1, 2), Rat::zero(), Rat::zero()],
            &[Rat::zero(), Rat::zero(), Rat::zero()],
        ]))
        .unwrap();
        let (change, d) = f.diagonalize();
        assert_eq!(f.transformed(&change).gram, RatMat::diag(&d));
        assert_eq!(f.rank(), 2);
        assert_eq!(f.inertia(), Inertia { plus: 1, minus: 1, zero: 1 });
    }

    #[test]
    fn inertia_of_definite_and_indefinite() {
        let pos = TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]).unwrap();
        assert!(pos.is_positive_definite());
        let neg = TernaryForm::from_int_gram(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -5]]).unwrap();
        assert!(neg.is_negative_definite());
        let ind = form("2u2+3v2-6w2");
        assert_eq!(ind.inertia(), Inertia { plus: 2, minus: 1, zero: 0 });
    }

    #[test]
    fn rank3_square_disc_normal_form() {
        // disc(2u^2 + 3v^2 - 6w^2) = -(2*3*(-6)) = 36 = 6^2.
        let f = form("2u2+3v2-6w2");
        let (a, b, change) = f.normalize_rank3_square_disc().unwrap();
        let t = f.transformed(&change);
        assert_eq!(
            t.gram(),
            &RatMat::diag(&[a.clone(), b.clone(), -&(&a * &b)])
        );
        // Already diagonal: a = 2, b = 3.
        assert_eq!((a, b), (Rat::from_int(2), Rat::from_int(3)));

        // Non-square discriminant is rejected.
        let g = TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]).unwrap();
        assert!(matches!(
            g.normalize_rank3_square_disc(),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn rank3_square_disc_normal_form_off_diagonal() {
        // u^2 + v*w: disc 1/4 = (1/2)^2.
        let vars = uvw();
        let q = MPoly::var(&vars, 0).pow(2).add(&MPoly::var(&vars, 1).mul(&MPoly::var(&vars, 2)));
        let f = TernaryForm::from_poly(&q).unwrap();
        let (a, b, change) = f.normalize_rank3_square_disc().unwrap();
        assert_eq!(
            f.transformed(&change).gram(),
            &RatMat::diag(&[a.clone(), b.clone(), -&(&a * &b)])
        );
    }

    #[test]
    fn rank2_normal_form_moves_kernel_first() {
        // v^2 - 4*w^2 (kernel = u-axis already).
        let f = TernaryForm::from_int_gram(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -4]]).unwrap();
        let (a, b, change) = f.normalize_rank2().unwrap();
        assert_eq!(
            f.transformed(&change).gram(),
            &RatMat::diag(&[Rat::zero(), a.clone(), b.clone()])
        );
        // Kernel elsewhere: u^2 - w^2 has kernel along v.
        let g = TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -1]]).unwrap();
        let (a2, b2, ch2) = g.normalize_rank2().unwrap();
        assert_eq!(
            g.transformed(&ch2).gram(),
            &RatMat::diag(&[Rat::zero(), a2, b2])
        );
        // The u-direction of the new coordinates spans the kernel.
        let k = ch2.column(0);
        assert!(g.eval(&k).is_zero());
        let _ = (a, b, change);
    }

    #[test]
    fn rank2_rejects_other_ranks() {
        let f = form("2u2+3v2-6w2");
        assert!(f.normalize_rank2().is_err());
        let z = TernaryForm::from_int_gram(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]).unwrap();
        assert!(z.normalize_rank2().is_err());
    }
}
