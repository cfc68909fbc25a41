//! Sparse multivariate polynomials over the rationals.
//!
//! An [`MPoly`] is a map from exponent vectors to nonzero coefficients over a
//! named, ordered variable set.  Terms are kept in graded-lexicographic
//! order, so structural equality is semantic equality.  Serialization writes
//! a map from exponent tuples (as strings, e.g. `"(2,0,0)"`) to coefficient
//! strings, leading term first.

use crate::rat::{rat_gcd, Rat};
use crate::{Error, Result};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Ordered set of variable names shared by compatible polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new(names: &[&str]) -> Self {
        VarSet(Arc::new(names.iter().map(|s| s.to_string()).collect()))
    }

    /// Plane coordinates `u, v, w`.
    pub fn uvw() -> Self {
        VarSet::new(&["u", "v", "w"])
    }

    /// Pencil coordinates `t0, t1`.
    pub fn t01() -> Self {
        VarSet::new(&["t0", "t1"])
    }

    /// Ambient coordinates `x0..x5`.
    pub fn x6() -> Self {
        VarSet::new(&["x0", "x1", "x2", "x3", "x4", "x5"])
    }

    /// Single affine pencil parameter `T`.
    pub fn t_affine() -> Self {
        VarSet::new(&["T"])
    }

    /// Affine chart coordinates `x, y`.
    pub fn xy() -> Self {
        VarSet::new(&["x", "y"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

/// Exponent vector ordered graded-lexicographically (ascending), so the
/// maximum key of a term map is the leading monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Expo(pub Vec<u16>);

impl Expo {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn divides(&self, other: &Expo) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn add(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariant: every stored coefficient is nonzero and every exponent vector
/// has the length of the variable set.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: VarSet,
    terms: BTreeMap<Expo, Rat>,
}

impl MPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Expo(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        MPoly::constant(vars, Rat::one())
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &VarSet, i: usize) -> Self {
        assert!(i < vars.len());
        let mut e = vec![0u16; vars.len()];
        e[i] = 1;
        MPoly::term(vars, Expo(e), Rat::one())
    }

    pub fn term(vars: &VarSet, e: Expo, c: Rat) -> Self {
        assert_eq!(e.0.len(), vars.len());
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms(vars: &VarSet, terms: impl IntoIterator<Item = (Vec<u16>, Rat)>) -> Self {
        let mut p = MPoly::zero(vars);
        for (e, c) in terms {
            p.add_term(Expo(e), c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u16]) -> Rat {
        self.terms
            .get(&Expo(e.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Expo, &Rat)> {
        self.terms.last_key_value()
    }

    /// `Some(d)` if every term has total degree `d` (zero counts as
    /// homogeneous of degree 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = match it.next() {
            None => return Some(0),
            Some(e) => e.degree(),
        };
        if it.all(|e| e.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn require_homogeneous(&self, d: u32, what: &str) -> Result<()> {
        if self.is_zero() || self.homogeneous_degree() == Some(d) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{what} must be homogeneous of degree {d}, got {self}"
            )))
        }
    }

    fn add_term(&mut self, e: Expo, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn assert_compatible(&self, other: &MPoly) {
        assert!(
            self.vars == other.vars,
            "variable sets differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = MPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        let mut out = MPoly::zero(&self.vars);
        for (e, k) in &self.terms {
            out.terms.insert(e.clone(), k * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        assert!(i < self.vars.len());
        let mut out = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[i] -= 1;
            out.add_term(ne, c * &Rat::from_int(e.0[i] as i64));
        }
        out
    }

    /// Evaluate at a rational point (one value per variable).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.0.iter().enumerate() {
                if ei > 0 {
                    t *= point[i].pow(ei as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute each variable by the corresponding image polynomial.  All
    /// images must share one variable set, which becomes the result's.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.vars.len());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for im in images {
            assert!(im.vars == target, "substitution images must share one variable set");
        }
        let mut acc = MPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &ei) in e.0.iter().enumerate() {
                if ei > 0 {
                    t = t.mul(&images[i].pow(ei as u32));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Positive gcd of all coefficients (zero polynomial has content 0).
    pub fn content(&self) -> Rat {
        let mut g = Rat::zero();
        for c in self.terms.values() {
            g = rat_gcd(&g, c);
        }
        g
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn try_div_exact(&self, other: &MPoly) -> Option<MPoly> {
        self.assert_compatible(other);
        assert!(!other.is_zero(), "division by zero polynomial");
        let (ge, gc) = other.leading().unwrap();
        let (ge, gc) = (ge.clone(), gc.clone());
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.vars);
        while let Some((re, rc)) = r.leading() {
            if !ge.divides(re) {
                return None;
            }
            let qe = re.sub(&ge);
            let qc = rc / &gc;
            let t = MPoly::term(&self.vars, qe, qc);
            r = r.sub(&t.mul(other));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Exact division, panicking if not exact (used where exactness is an
    /// invariant, e.g. fraction-free elimination).
    pub fn div_exact(&self, other: &MPoly) -> MPoly {
        self.try_div_exact(other)
            .expect("division was expected to be exact")
    }

    /// Largest `k` with `p^k | self` (`self` nonzero), together with the
    /// cofactor `self / p^k`.
    pub fn valuation(&self, p: &MPoly) -> (u32, MPoly) {
        assert!(!self.is_zero(), "valuation of zero");
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.try_div_exact(p) {
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    /// Normal form of `self` modulo the single divisor `p` under graded-lex
    /// division (canonical representative modulo the principal ideal `(p)`).
    pub fn reduce_mod(&self, p: &MPoly) -> MPoly {
        self.assert_compatible(p);
        assert!(!p.is_zero(), "reduction modulo zero");
        let (pe, pc) = p.leading().unwrap();
        let (pe, pc) = (pe.clone(), pc.clone());
        let mut r = self.clone();
        let mut out = MPoly::zero(&self.vars);
        while let Some((re, rc)) = r.leading() {
            let (re, rc) = (re.clone(), rc.clone());
            if pe.divides(&re) {
                let t = MPoly::term(&self.vars, re.sub(&pe), &rc / &pc);
                r = r.sub(&t.mul(p));
            } else {
                out.add_term(re.clone(), rc.clone());
                r.terms.remove(&re);
            }
        }
        out
    }

    /// View as a univariate polynomial in variable `main`, returning dense
    /// coefficients (index = power of `main`) over the remaining variables
    /// (exponent of `main` zeroed out).
    pub fn coeffs_wrt(&self, main: usize) -> Vec<MPoly> {
        let d = self.degree_in(main) as usize;
        let mut out = vec![MPoly::zero(&self.vars); d + 1];
        for (e, c) in &self.terms {
            let k = e.0[main] as usize;
            let mut ne = e.clone();
            ne.0[main] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.signum() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed = false;
            if !mag.is_one() || e.degree() == 0 {
                write!(f, "{mag}")?;
                printed = true;
            }
            for (i, &ei) in e.0.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.names()[i])?;
                if ei > 1 {
                    write!(f, "^{ei}")?;
                }
                printed = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            let key = format!(
                "({})",
                e.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            );
            map.serialize_entry(&key, &c.to_string())?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(vars: &VarSet, terms: &[(&[u16], i64)]) -> MPoly {
        MPoly::from_terms(
            vars,
            terms.iter().map(|(e, c)| (e.to_vec(), Rat::from_int(*c))),
        )
    }

    #[test]
    fn canonical_form_drops_zero_terms() {
        let v = VarSet::uvw();
        let a = p(&v, &[(&[2, 0, 0], 1), (&[0, 1, 0], 3)]);
        let b = p(&v, &[(&[0, 1, 0], -3)]);
        let s = a.add(&b);
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s, p(&v, &[(&[2, 0, 0], 1)]));
    }

    #[test]
    fn graded_lex_leading_term() {
        let v = VarSet::uvw();
        // u*v has degree 2 and beats w (degree 1); u^2 beats u*v in lex tie.
        let q = p(&v, &[(&[0, 0, 1], 5), (&[1, 1, 0], 2), (&[2, 0, 0], 7)]);
        let (e, c) = q.leading().unwrap();
        assert_eq!(e.0, vec![2, 0, 0]);
        assert_eq!(*c, Rat::from_int(7));
    }

    #[test]
    fn product_and_evaluation_agree() {
        let v = VarSet::uvw();
        let a = p(&v, &[(&[2, 0, 0], 2), (&[0, 2, 0], 3), (&[0, 0, 2], -6)]);
        let b = p(&v, &[(&[1, 0, 0], 1), (&[0, 1, 1], 1)]);
        let prod = a.mul(&b);
        let pt = [Rat::new(1, 2), Rat::from_int(-3), Rat::new(2, 5)];
        assert_eq!(prod.eval(&pt), a.eval(&pt) * b.eval(&pt));
    }

    #[test]
    fn exact_division_round_trip() {
        let v = VarSet::uvw();
        let a = p(&v, &[(&[1, 1, 0], 1), (&[0, 0, 2], -3), (&[1, 0, 0], 2)]);
        let b = p(&v, &[(&[1, 0, 1], 4), (&[0, 1, 0], 1), (&[0, 0, 0], -2)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b), a);
        assert_eq!(prod.div_exact(&a), b);
        // One extra term breaks exactness.
        let off = prod.add(&MPoly::one(&v));
        assert!(off.try_div_exact(&b).is_none());
    }

    #[test]
    fn valuation_counts_repeated_factors() {
        let v = VarSet::uvw();
        let q1 = p(&v, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1)]);
        let g = p(&v, &[(&[1, 0, 0], 1), (&[0, 0, 1], 5)]);
        let f = q1.pow(3).mul(&g);
        let (k, cof) = f.valuation(&q1);
        assert_eq!(k, 3);
        assert_eq!(cof, g);
    }

    #[test]
    fn reduce_mod_is_canonical_for_principal_ideal() {
        let v = VarSet::uvw();
        let modulus = p(&v, &[(&[2, 0, 0], 1), (&[0, 1, 1], -1)]); // u^2 - v*w
        let f = p(&v, &[(&[3, 0, 0], 1)]); // u^3 = u*(u^2 - vw) + u*v*w
        assert_eq!(f.reduce_mod(&modulus), p(&v, &[(&[1, 1, 1], 1)]));
        // A multiple reduces to zero.
        let m = modulus.mul(&p(&v, &[(&[1, 1, 0], 7), (&[0, 0, 1], -1)]));
        assert!(m.reduce_mod(&modulus).is_zero());
        // Degree-2 polynomial in normal form stays put under a quartic modulus.
        let quartic = p(&v, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1)]);
        assert_eq!(f.reduce_mod(&quartic), f);
    }

    #[test]
    fn substitution_composes_with_evaluation() {
        let uvw = VarSet::uvw();
        let xy = VarSet::xy();
        let q = p(&uvw, &[(&[2, 0, 0], 1), (&[0, 1, 1], 2)]);
        let gx = p(&xy, &[(&[1, 0], 1), (&[0, 1], 3)]);
        let gy = p(&xy, &[(&[0, 1], 1)]);
        let gz = MPoly::one(&xy);
        let s = q.substitute(&[gx.clone(), gy.clone(), gz.clone()]);
        let pt = [Rat::new(2, 3), Rat::from_int(-1)];
        assert_eq!(
            s.eval(&pt),
            q.eval(&[gx.eval(&pt), gy.eval(&pt), gz.eval(&pt)])
        );
    }

    #[test]
    fn homogeneity_detection() {
        let v = VarSet::uvw();
        let q = p(&v, &[(&[2, 0, 0], 2), (&[0, 1, 1], 1)]);
        assert_eq!(q.homogeneous_degree(), Some(2));
        let mixed = p(&v, &[(&[2, 0, 0], 2), (&[0, 1, 0], 1)]);
        assert_eq!(mixed.homogeneous_degree(), None);
        assert!(MPoly::zero(&v).homogeneous_degree() == Some(0));
    }

    #[test]
    fn serialization_uses_exponent_tuple_keys() {
        let v = VarSet::uvw();
        let q = p(&v, &[(&[2, 0, 0], 2), (&[0, 0, 2], -6)]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"{"(2,0,0)":"2","(0,0,2)":"-6"}"#);
    }

    #[test]
    fn coeffs_wrt_main_variable() {
        let v = VarSet::xy();
        // x^2*y + 3x + y^2 viewed in x: [y^2, 3, y]
        let q = p(&v, &[(&[2, 1], 1), (&[1, 0], 3), (&[0, 2], 1)]);
        let cs = q.coeffs_wrt(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], p(&v, &[(&[0, 2], 1)]));
        assert_eq!(cs[1], p(&v, &[(&[0, 0], 3)]));
        assert_eq!(cs[2], p(&v, &[(&[0, 1], 1)]));
    }
}
