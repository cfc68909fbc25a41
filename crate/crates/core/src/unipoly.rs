//! Dense univariate polynomials over the rationals.
//!
//! Workhorse for one-variable computations: Euclidean division, primitive
//! polynomial remainder sequences for gcds, resultants, square-free parts,
//! and the root bounds used by Sturm isolation.
//!
//! Invariant: the coefficient vector is either empty (zero polynomial) or its
//! last element is nonzero.

use crate::poly::{MPoly, VarSet};
use crate::rat::{rat_gcd, Rat};
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    /// The variable itself.
    pub fn x() -> Self {
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// Coefficients in ascending degree; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::from_coeffs(c.iter().map(|&k| Rat::from_int(k)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; panics on zero.
    pub fn lc(&self) -> &Rat {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        self.eval(x).signum()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &Rat::from_int((i + 1) as i64))
                .collect(),
        )
    }

    /// Euclidean division over the rationals: `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        let lc = d.lc().clone();
        for k in (dd..r.len()).rev() {
            let c = &r[k] / &lc;
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c.clone();
            for i in 0..=dd {
                let t = &d.coeffs[i] * &c;
                r[k - dd + i] -= &t;
            }
        }
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Positive gcd of all coefficients.
    pub fn content(&self) -> Rat {
        let mut g = Rat::zero();
        for c in &self.coeffs {
            g = rat_gcd(&g, c);
        }
        g
    }

    /// Divide out the content; sign of the leading coefficient is preserved.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Monic multiple of the gcd, via a content-normalized remainder
    /// sequence.  `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        if a.is_zero() {
            UniPoly::zero()
        } else {
            let lc = a.lc().clone();
            a.scale(&lc.recip())
        }
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g` and
    /// `g` the monic gcd (zero when both inputs are zero).
    pub fn egcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one();
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (UniPoly::zero(), UniPoly::zero(), UniPoly::zero());
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Scale to leading coefficient 1 (nonzero input).
    pub fn monic(&self) -> UniPoly {
        assert!(!self.is_zero());
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn is_separable(&self) -> bool {
        assert!(!self.is_zero(), "separability of the zero polynomial");
        self.gcd(&self.derivative()).is_constant()
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        assert!(!self.is_zero());
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Resultant over the rationals by the classical remainder recursion.
    pub fn resultant(&self, other: &UniPoly) -> Rat {
        fn go(f: &UniPoly, g: &UniPoly) -> Rat {
            if f.is_zero() || g.is_zero() {
                // Res(f, 0) = 0 unless both are (nonzero) constants, which
                // the caller rules out.
                return Rat::zero();
            }
            let m = f.degree().unwrap();
            let n = g.degree().unwrap();
            if m < n {
                let sign = if (m * n) % 2 == 1 { -1 } else { 1 };
                return go(g, f).scale_sign(sign);
            }
            if n == 0 {
                return g.lc().pow(m as i32);
            }
            let r = f.rem(g);
            if r.is_zero() {
                return Rat::zero();
            }
            let d = r.degree().unwrap();
            let sign = if (m * n) % 2 == 1 { -1 } else { 1 };
            (g.lc().pow((m - d) as i32) * go(g, &r)).scale_sign(sign)
        }
        trait ScaleSign {
            fn scale_sign(self, s: i32) -> Rat;
        }
        impl ScaleSign for Rat {
            fn scale_sign(self, s: i32) -> Rat {
                if s < 0 {
                    -self
                } else {
                    self
                }
            }
        }
        go(self, other)
    }

    /// Discriminant `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> Rat {
        let d = self.degree().expect("discriminant of zero");
        assert!(d >= 1);
        let r = self.resultant(&self.derivative());
        let s = if (d * (d - 1) / 2) % 2 == 1 { -1 } else { 1 };
        let out = r / self.lc();
        if s < 0 {
            -out
        } else {
            out
        }
    }

    /// `B` such that all real roots lie in `(-B, B)` (Cauchy bound).
    pub fn root_bound(&self) -> Rat {
        assert!(!self.is_zero());
        let lc = self.lc().abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / &lc;
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }

    /// Largest power of `x` dividing the polynomial.
    pub fn valuation_at_zero(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Convert an `MPoly` that only involves variable `var` into dense form.
    pub fn from_mpoly(p: &MPoly, var: usize) -> Result<UniPoly> {
        let mut coeffs = vec![Rat::zero(); p.degree_in(var) as usize + 1];
        for (e, c) in p.terms() {
            for (i, &ei) in e.0.iter().enumerate() {
                if i != var && ei != 0 {
                    return Err(Error::InvalidInput(format!(
                        "polynomial {p} is not univariate in variable {var}"
                    )));
                }
            }
            coeffs[e.0[var] as usize] = c.clone();
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    /// Embed as an `MPoly` in variable `var` of `vars`.
    pub fn to_mpoly(&self, vars: &VarSet, var: usize) -> MPoly {
        MPoly::from_terms(
            vars,
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
                let mut e = vec![0u16; vars.len()];
                e[var] = i as u16;
                (e, c.clone())
            }),
        )
    }

    /// Binary-form evaluation helper: treat `self` as the chart `t0 = 1` of a
    /// homogeneous binary form of degree `d` and return the other chart
    /// (coefficients reversed after padding to degree `d`).
    pub fn reverse_padded(&self, d: usize) -> UniPoly {
        assert!(self.degree().map_or(true, |k| k <= d));
        let mut out = vec![Rat::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[d - i] = c.clone();
        }
        UniPoly::from_coeffs(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.signum() < 0 {
                    write!(f, "-")?;
                }
            } else if c.signum() < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "x")?;
            } else if i > 1 {
                write!(f, "x^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_trimmed() {
        let p = UniPoly::from_coeffs(vec![Rat::one(), Rat::zero(), Rat::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPoly::from_coeffs(vec![Rat::zero()]).is_zero());
    }

    #[test]
    fn division_invariant() {
        let f = UniPoly::from_ints(&[2, -3, 0, 1, 5]);
        let d = UniPoly::from_ints(&[1, 0, 7]);
        let (q, r) = f.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().unwrap() < d.degree().unwrap());
    }

    #[test]
    fn gcd_of_products() {
        let a = UniPoly::from_ints(&[-1, 1]); // x - 1
        let b = UniPoly::from_ints(&[2, 1]); // x + 2
        let c = UniPoly::from_ints(&[0, 0, 1]); // x^2
        let f = a.mul(&b).mul(&c);
        let g = a.mul(&c);
        let gcd = f.gcd(&g);
        assert_eq!(gcd, a.mul(&c)); // monic already
        assert!(UniPoly::from_ints(&[1, 1]).gcd(&UniPoly::from_ints(&[1, 0, 1])).is_constant());
    }

    #[test]
    fn extended_gcd_bezout_identity() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..25 {
            let f = UniPoly::from_coeffs(
                (0..5).map(|_| Rat::from_int(rng.gen_range(-4..=4))).collect(),
            );
            let g = UniPoly::from_coeffs(
                (0..4).map(|_| Rat::from_int(rng.gen_range(-4..=4))).collect(),
            );
            let (d, s, t) = f.egcd(&g);
            assert_eq!(s.mul(&f).add(&t.mul(&g)), d);
            if !d.is_zero() {
                assert!(d.lc().is_one());
                assert_eq!(d, f.gcd(&g));
            }
        }
        // Coprime pair gives an inverse: s * f = 1 mod g.
        let f = UniPoly::from_ints(&[1, 1]); // x + 1
        let g = UniPoly::from_ints(&[2, 0, 1]); // x^2 + 2
        let (d, s, _) = f.egcd(&g);
        assert!(d.is_constant() && d.lc().is_one());
        assert_eq!(s.mul(&f).rem(&g), UniPoly::one());
    }

    #[test]
    fn separability_and_squarefree_part() {
        let a = UniPoly::from_ints(&[-1, 1]);
        let sq = a.mul(&a).mul(&UniPoly::from_ints(&[3, 1]));
        assert!(!sq.is_separable());
        let sf = sq.squarefree_part();
        assert_eq!(sf.primitive().scale(&sf.lc().recip().abs()).degree(), Some(2));
        assert!(sf.is_separable());
        assert!(UniPoly::from_ints(&[1, 3, 0, 1]).is_separable());
    }

    #[test]
    fn resultant_matches_root_product_cases() {
        // Res(x^2 - 1, x - 2) = (2^2 - 1) * lc^... = 3
        let f = UniPoly::from_ints(&[-1, 0, 1]);
        let g = UniPoly::from_ints(&[-2, 1]);
        assert_eq!(f.resultant(&g), Rat::from_int(3));
        // Shared root => 0.
        let h = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(f.resultant(&h), Rat::zero());
        // Res(f, g) = (-1)^(mn) Res(g, f).
        let a = UniPoly::from_ints(&[1, 2, 0, 3]);
        let b = UniPoly::from_ints(&[5, -1, 1]);
        let sign = if (3 * 2) % 2 == 1 { -1 } else { 1 };
        let rab = a.resultant(&b);
        let rba = b.resultant(&a);
        assert_eq!(rab, if sign < 0 { -rba.clone() } else { rba });
    }

    #[test]
    fn discriminant_of_quadratic() {
        // disc(ax^2 + bx + c) = b^2 - 4ac
        let p = UniPoly::from_ints(&[5, -3, 2]);
        assert_eq!(p.discriminant(), Rat::from_int(9 - 40));
    }

    #[test]
    fn mpoly_round_trip() {
        let vars = VarSet::t_affine();
        let p = UniPoly::from_ints(&[1, 0, -3, 0, 0, 0, 1]);
        let m = p.to_mpoly(&vars, 0);
        assert_eq!(UniPoly::from_mpoly(&m, 0).unwrap(), p);
    }

    #[test]
    fn reverse_padded_gives_other_chart() {
        // t^2 + 2t + 3 as degree-4 binary form charts.
        let p = UniPoly::from_ints(&[3, 2, 1]);
        let q = p.reverse_padded(4);
        assert_eq!(q, UniPoly::from_ints(&[0, 0, 1, 2, 3]));
    }
}
