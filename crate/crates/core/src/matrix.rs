//! Exact matrices: rational matrices with Gauss/adjugate inverses, and
//! polynomial matrices with fraction-free (Bareiss) determinants.
//!
//! The Bareiss elimination keeps every intermediate entry a polynomial (each
//! is a minor of the original matrix); the interleaved divisions are exact by
//! the Sylvester identity, and the implementation panics if that ever fails,
//! which turns algebra bugs into loud failures instead of wrong answers.

use crate::poly::{MPoly, VarSet};
use crate::rat::Rat;
use crate::{Error, Result};
use std::fmt;

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

/// Dense matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = RatMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[&[Rat]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        RatMat::from_fn(r, c, |i, j| rows[i][j].clone())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        RatMat::from_fn(r, c, |i, j| Rat::from_int(rows[i][j]))
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let n = entries.len();
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = entries[i].clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        RatMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                acc += &self[(i, k)] * &other[(k, j)];
            }
            acc
        })
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    /// Paste `block` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &RatMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> RatMat {
        RatMat::from_fn(rows, cols, |i, j| self[(r + i, c + j)].clone())
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !m[(r, k)].is_zero());
            let Some(p) = pivot else {
                return Rat::zero();
            };
            if p != k {
                for j in 0..n {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(k, j)].clone();
                    m[(k, j)] = tmp;
                }
                det = -det;
            }
            det *= &m[(k, k)];
            let inv = m[(k, k)].recip();
            for i in (k + 1)..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let factor = &m[(i, k)] * &inv;
                for j in k..n {
                    let t = &m[(k, j)] * &factor;
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..cols {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(row, j)].clone();
                    m[(row, j)] = tmp;
                }
            }
            let inv = m[(row, col)].recip();
            for i in (row + 1)..rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let factor = &m[(i, col)] * &inv;
                for j in col..cols {
                    let t = &m[(row, j)] * &factor;
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
            rank += 1;
            row += 1;
            if row == rows {
                break;
            }
        }
        rank
    }

    /// Classical adjugate via cofactors; satisfies
    /// `m * adjugate(m) = det(m) * I` for every square `m`, singular included.
    pub fn adjugate(&self) -> RatMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return RatMat::zero(0, 0);
        }
        RatMat::from_fn(n, n, |i, j| {
            // adj[i][j] = (-1)^(i+j) * minor_(j,i)
            let minor = self.minor(j, i);
            if (i + j) % 2 == 1 {
                -minor
            } else {
                minor
            }
        })
    }

    fn minor(&self, row: usize, col: usize) -> Rat {
        let n = self.rows;
        RatMat::from_fn(n - 1, n - 1, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self[(si, sj)].clone()
        })
        .det()
    }

    /// Exact inverse via the adjugate; errors on singular input.
    pub fn inverse(&self) -> Result<RatMat> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::Inadmissible("matrix is singular".into()));
        }
        Ok(self.adjugate().scale(&d.recip()))
    }

    /// Kernel basis vectors (columns of the result).
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.clone();
        // Reduced row echelon.
        let mut pivots: Vec<(usize, usize)> = vec![];
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..cols {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(row, j)].clone();
                    m[(row, j)] = tmp;
                }
            }
            let inv = m[(row, col)].recip();
            for j in 0..cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for i in 0..rows {
                if i != row && !m[(i, col)].is_zero() {
                    let factor = m[(i, col)].clone();
                    for j in 0..cols {
                        let t = &m[(row, j)] * &factor;
                        m[(i, j)] = &m[(i, j)] - &t;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = vec![];
        for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for &(r, c) in &pivots {
                v[c] = -&m[(r, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn to_poly(&self, vars: &VarSet) -> PolyMatrix {
        PolyMatrix::from_fn(vars, self.rows, self.cols, |i, j| {
            MPoly::constant(vars, self[(i, j)].clone())
        })
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl serde::Serialize for RatMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<&Rat> = (0..self.cols).map(|j| &self[(i, j)]).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

// ---------------------------------------------------------------------------
// Polynomial matrices
// ---------------------------------------------------------------------------

/// Dense matrix with multivariate polynomial entries over one variable set.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: VarSet,
    rows: usize,
    cols: usize,
    data: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn zero(vars: &VarSet, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            data: vec![MPoly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &VarSet, n: usize) -> Self {
        let mut m = PolyMatrix::zero(vars, n, n);
        for i in 0..n {
            m[(i, i)] = MPoly::one(vars);
        }
        m
    }

    pub fn from_fn(
        vars: &VarSet,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> MPoly,
    ) -> Self {
        let mut m = PolyMatrix::zero(vars, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.vars, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix::from_fn(&self.vars, self.rows, self.cols, |i, j| {
            self[(i, j)].add(&other[(i, j)])
        })
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix::from_fn(&self.vars, self.rows, self.cols, |i, j| {
            self[(i, j)].sub(&other[(i, j)])
        })
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        PolyMatrix::from_fn(&self.vars, self.rows, other.cols, |i, j| {
            let mut acc = MPoly::zero(&self.vars);
            for k in 0..self.cols {
                acc = acc.add(&self[(i, k)].mul(&other[(k, j)]));
            }
            acc
        })
    }

    pub fn scale(&self, c: &MPoly) -> PolyMatrix {
        PolyMatrix::from_fn(&self.vars, self.rows, self.cols, |i, j| self[(i, j)].mul(c))
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::from_fn(&self.vars, rows, cols, |i, j| self[(r + i, c + j)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    /// Fraction-free determinant (Bareiss).  Every division is exact; a
    /// failed division panics, signalling a bug.
    pub fn det(&self) -> MPoly {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return MPoly::one(&self.vars);
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = MPoly::one(&self.vars);
        for k in 0..(n - 1) {
            if m[(k, k)].is_zero() {
                let Some(p) = ((k + 1)..n).find(|&r| !m[(r, k)].is_zero()) else {
                    return MPoly::zero(&self.vars);
                };
                for j in 0..n {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(k, j)].clone();
                    m[(k, j)] = tmp;
                }
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = m[(k, k)].mul(&m[(i, j)]).sub(&m[(i, k)].mul(&m[(k, j)]));
                    m[(i, j)] = num.div_exact(&prev);
                }
            }
            for i in (k + 1)..n {
                m[(i, k)] = MPoly::zero(&self.vars);
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            d.neg()
        } else {
            d
        }
    }

    /// Cofactor-expansion determinant: independent slow route used to
    /// cross-check Bareiss in tests.
    pub fn det_cofactor(&self) -> MPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return MPoly::one(&self.vars);
        }
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut acc = MPoly::zero(&self.vars);
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let sub = PolyMatrix::from_fn(&self.vars, n - 1, n - 1, |r, c| {
                self[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let t = self[(0, j)].mul(&sub.det_cofactor());
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = MPoly;
    fn index(&self, (i, j): (usize, usize)) -> &MPoly {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut MPoly {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Resultants through Sylvester determinants
// ---------------------------------------------------------------------------

/// Resultant of `f` and `g` with respect to variable `var`, computed as the
/// Bareiss determinant of the Sylvester matrix over the remaining variables.
/// Degenerate cases follow the usual conventions: if either polynomial is
/// zero the resultant is zero; if both are free of `var` the resultant is 1.
pub fn resultant_wrt(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    let vars = f.vars().clone();
    assert!(g.vars() == &vars);
    if f.is_zero() || g.is_zero() {
        return MPoly::zero(&vars);
    }
    let fc = f.coeffs_wrt(var);
    let gc = g.coeffs_wrt(var);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    if m == 0 && n == 0 {
        return MPoly::one(&vars);
    }
    if m == 0 {
        return fc[0].pow(n as u32);
    }
    if n == 0 {
        return gc[0].pow(m as u32);
    }
    let size = m + n;
    let mut s = PolyMatrix::zero(&vars, size, size);
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            // coefficient of x^(m-k') convention: store descending
            s[(row, row + (m - k))] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            s[(n + row, row + (n - k))] = c.clone();
        }
    }
    s.det()
}

/// Discriminant of `f` with respect to `var`:
/// `(-1)^(d(d-1)/2) * Res_var(f, df/dvar) / lc_var(f)`.
/// Requires the leading coefficient to divide the resultant exactly, which
/// holds over a domain.
pub fn discriminant_wrt(f: &MPoly, var: usize) -> MPoly {
    let d = f.degree_in(var) as usize;
    assert!(d >= 1, "discriminant needs positive degree");
    let res = resultant_wrt(f, &f.derivative(var), var);
    let lc = f.coeffs_wrt(var).pop().unwrap();
    let q = res.div_exact(&lc);
    if (d * (d - 1) / 2) % 2 == 1 {
        q.neg()
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::UniPoly;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn antidiagonal_block_determinant() {
        // det [[0, I3], [I3, 0]] = -1 (three row transpositions).
        let mut m = RatMat::zero(6, 6);
        m.set_block(0, 3, &RatMat::identity(3));
        m.set_block(3, 0, &RatMat::identity(3));
        assert_eq!(m.det(), Rat::from_int(-1));
    }

    #[test]
    fn det_multiplicative_on_random_4x4() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let a = RatMat::from_fn(4, 4, |_, _| Rat::from_int(rng.gen_range(-5..=5)));
            let b = RatMat::from_fn(4, 4, |_, _| Rat::from_int(rng.gen_range(-5..=5)));
            assert_eq!(a.mul(&b).det(), a.det() * b.det());
        }
    }

    #[test]
    fn adjugate_law_including_singular() {
        let mut rng = StdRng::seed_from_u64(8);
        for trial in 0..30 {
            let mut a = RatMat::from_fn(4, 4, |_, _| Rat::from_int(rng.gen_range(-4..=4)));
            if trial % 3 == 0 {
                // Force singularity: duplicate a row.
                for j in 0..4 {
                    a[(3, j)] = a[(0, j)].clone();
                }
            }
            let d = a.det();
            let prod = a.mul(&a.adjugate());
            let expect = RatMat::identity(4).scale(&d);
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn inverse_of_normalized_diagonal() {
        let m = RatMat::diag(&[Rat::from_int(2), Rat::from_int(3), Rat::from_int(-6)]);
        let inv = m.inverse().unwrap();
        assert_eq!(
            inv,
            RatMat::diag(&[Rat::new(1, 2), Rat::new(1, 3), Rat::new(-1, 6)])
        );
        assert_eq!(m.mul(&inv), RatMat::identity(3));
        let sing = RatMat::diag(&[Rat::one(), Rat::zero(), Rat::one()]);
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn poly_det_shifted_identity() {
        // det((T+1) * Id_4) = (T+1)^4
        let vars = VarSet::t_affine();
        let t1 = MPoly::var(&vars, 0).add(&MPoly::one(&vars));
        let m = PolyMatrix::identity(&vars, 4).scale(&t1);
        assert_eq!(m.det(), t1.pow(4));
    }

    #[test]
    fn bareiss_matches_cofactor_on_random_poly_matrices() {
        let vars = VarSet::xy();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..10 {
            let m = PolyMatrix::from_fn(&vars, 4, 4, |_, _| {
                MPoly::from_terms(
                    &vars,
                    (0..2).map(|_| {
                        (
                            vec![rng.gen_range(0..2u16), rng.gen_range(0..2u16)],
                            Rat::from_int(rng.gen_range(-3..=3)),
                        )
                    }),
                )
            });
            assert_eq!(m.det(), m.det_cofactor());
        }
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let vars = VarSet::t_affine();
        let t = MPoly::var(&vars, 0);
        // [[0, 1], [t, 0]] has det -t, pivot swap required.
        let mut m = PolyMatrix::zero(&vars, 2, 2);
        m[(0, 1)] = MPoly::one(&vars);
        m[(1, 0)] = t.clone();
        assert_eq!(m.det(), t.neg());
        // Singular matrix: zero column.
        let mut z = PolyMatrix::zero(&vars, 3, 3);
        z[(0, 1)] = t.clone();
        z[(1, 2)] = MPoly::one(&vars);
        assert!(z.det().is_zero());
    }

    #[test]
    fn sylvester_resultant_matches_univariate_recursion() {
        let vars = VarSet::t_affine();
        let mut rng = StdRng::seed_from_u64(10);
        for _ in 0..20 {
            let f = UniPoly::from_coeffs(
                (0..5).map(|_| Rat::from_int(rng.gen_range(-4..=4))).collect(),
            );
            let g = UniPoly::from_coeffs(
                (0..4).map(|_| Rat::from_int(rng.gen_range(-4..=4))).collect(),
            );
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let via_sylvester =
                resultant_wrt(&f.to_mpoly(&vars, 0), &g.to_mpoly(&vars, 0), 0);
            assert_eq!(
                via_sylvester.as_constant().unwrap(),
                f.resultant(&g),
                "f={f} g={g}"
            );
        }
    }

    #[test]
    fn resultant_specialization_commutes() {
        // Res_y(f, g)(x=a) = Res(f(a, y), g(a, y)) when leading coefficients
        // survive specialization.
        let vars = VarSet::xy();
        let x = MPoly::var(&vars, 0);
        let y = MPoly::var(&vars, 1);
        // f = y^2 + x*y - 1, g = y^3 - x  (leading coeffs constant in y)
        let f = y.pow(2).add(&x.mul(&y)).sub(&MPoly::one(&vars));
        let g = y.pow(3).sub(&x);
        let r = resultant_wrt(&f, &g, 1);
        for a in [-3i64, -1, 0, 2, 5] {
            let av = Rat::from_int(a);
            let spec = |p: &MPoly| {
                UniPoly::from_coeffs(
                    p.coeffs_wrt(1)
                        .iter()
                        .map(|c| c.eval(&[av.clone(), Rat::zero()]))
                        .collect(),
                )
            };
            let lhs = r.eval(&[av.clone(), Rat::zero()]);
            assert_eq!(lhs, spec(&f).resultant(&spec(&g)));
        }
    }

    #[test]
    fn discriminant_wrt_quadratic_in_y() {
        let vars = VarSet::xy();
        let x = MPoly::var(&vars, 0);
        let y = MPoly::var(&vars, 1);
        // y^2 - x: disc = 4x
        let f = y.pow(2).sub(&x);
        assert_eq!(discriminant_wrt(&f, 1), x.scale(&Rat::from_int(4)));
    }

    #[test]
    fn kernel_of_rank_two_symmetric() {
        let m = RatMat::from_int_rows(&[&[1, 0, 1], &[0, 1, 0], &[1, 0, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for i in 0..3 {
            let mut acc = Rat::zero();
            for j in 0..3 {
                acc += &m[(i, j)] * &v[j];
            }
            assert!(acc.is_zero());
        }
    }
}
