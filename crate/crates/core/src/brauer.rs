//! 2-torsion Brauer-class calculus.
//!
//! Quaternion symbols `(a, b)` over `Q` are represented by their
//! ramification sets: the finite, even-cardinality set of places of `Q`
//! where the local Hilbert symbol is `-1`.  This representation is faithful
//! (classes over `Q` are determined by their local invariants) and makes
//! the group law a symmetric difference.
//!
//! Symbols over the function field `Q(u,v,w)` are formal multisets of
//! polynomial pairs.  They support exact tame residues along irreducible
//! divisors and specialization at rational points, which yields a sampling
//! procedure for comparing two symbols: disagreement at a single valid
//! point refutes equality of the classes; agreement at many points is
//! reported as evidence with witnesses (never as a completeness theorem).

use crate::poly::{MPoly, VarSet};
use crate::rat::Rat;
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// A place of `Q`: a finite prime or the real place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(BigUint),
    Infinite,
}

impl Place {
    pub fn finite(p: u64) -> Place {
        Place::Finite(BigUint::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A 2-torsion Brauer class over `Q`, stored as its ramification set.
///
/// Invariant: the set has even cardinality (Hilbert reciprocity); the zero
/// class is the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BrauerClass2 {
    ram: BTreeSet<Place>,
}

impl BrauerClass2 {
    pub fn zero() -> Self {
        BrauerClass2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.ram.is_empty()
    }

    pub fn places(&self) -> &BTreeSet<Place> {
        &self.ram
    }

    pub fn contains(&self, v: &Place) -> bool {
        self.ram.contains(v)
    }

    /// Build from an explicit even-cardinality place set.
    pub fn from_places(places: impl IntoIterator<Item = Place>) -> Result<Self> {
        let ram: BTreeSet<Place> = places.into_iter().collect();
        if ram.len() % 2 != 0 {
            return Err(Error::InvalidInput(
                "ramification set must have even cardinality".into(),
            ));
        }
        Ok(BrauerClass2 { ram })
    }

    /// Group law: symmetric difference of ramification sets.
    pub fn add(&self, other: &BrauerClass2) -> BrauerClass2 {
        BrauerClass2 {
            ram: self
                .ram
                .symmetric_difference(&other.ram)
                .cloned()
                .collect(),
        }
    }
}

impl Serialize for BrauerClass2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.ram.len()))?;
        for p in &self.ram {
            seq.serialize_element(&p.to_string())?;
        }
        seq.end()
    }
}

impl fmt::Display for BrauerClass2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.ram.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// Hilbert symbols over Q
// ---------------------------------------------------------------------------

/// `p`-adic valuation and unit part of a nonzero rational: `x = p^v * u`
/// with `u` a `p`-adic unit written as `n/d`, `p` dividing neither.
fn val_unit(x: &Rat, p: &BigUint) -> (i64, BigInt, BigInt) {
    let p = BigInt::from(p.clone());
    let strip = |mut n: BigInt| -> (i64, BigInt) {
        let mut v = 0i64;
        while !n.is_zero() {
            let (q, r) = n.div_rem(&p);
            if r.is_zero() {
                n = q;
                v += 1;
            } else {
                break;
            }
        }
        (v, n)
    };
    let (vn, n) = strip(x.numer().clone());
    let (vd, d) = strip(x.denom().clone());
    (vn - vd, n, d)
}

/// Legendre symbol `(x/p)` for odd prime `p` and `x` coprime to `p`,
/// by Euler's criterion.
fn legendre(x: &BigInt, p: &BigUint) -> i8 {
    let pz = BigInt::from(p.clone());
    let r = x.mod_floor(&pz);
    debug_assert!(!r.is_zero(), "legendre input must be a unit");
    let e = (p - 1u32) >> 1;
    let pow = r.modpow(&BigInt::from(e), &pz);
    if pow.is_one() {
        1
    } else {
        -1
    }
}

/// Residue class mod 8 of the odd rational unit `n/d` (both odd).
fn odd_unit_mod8(n: &BigInt, d: &BigInt) -> u8 {
    let eight = BigInt::from(8);
    let r = (n * d).mod_floor(&eight);
    r.to_u8().expect("residue mod 8 fits in u8")
}

fn eps_mod2(r: u8) -> u8 {
    // (r - 1)/2 mod 2 for odd r mod 8: 1 for 3, 7; 0 for 1, 5.
    match r % 4 {
        1 => 0,
        3 => 1,
        _ => unreachable!("odd residue expected"),
    }
}

fn omega_mod2(r: u8) -> u8 {
    // (r^2 - 1)/8 mod 2 for odd r mod 8: 1 for 3, 5; 0 for 1, 7.
    match r {
        1 | 7 => 0,
        3 | 5 => 1,
        _ => unreachable!("odd residue expected"),
    }
}

/// The Hilbert symbol `(a, b)_v` for nonzero rationals, `+1` or `-1`.
pub fn hilbert(a: &Rat, b: &Rat, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput(
            "Hilbert symbol arguments must be nonzero".into(),
        ));
    }
    Ok(match v {
        Place::Infinite => {
            if a.signum() < 0 && b.signum() < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => {
            let (alpha, an, ad) = val_unit(a, p);
            let (beta, bn, bd) = val_unit(b, p);
            if p.to_u32() == Some(2) {
                let ra = odd_unit_mod8(&an, &ad);
                let rb = odd_unit_mod8(&bn, &bd);
                let mut e = eps_mod2(ra) * eps_mod2(rb);
                if alpha % 2 != 0 {
                    e += omega_mod2(rb);
                }
                if beta % 2 != 0 {
                    e += omega_mod2(ra);
                }
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                // Odd p: (a,b)_p = (-1/p)^{alpha*beta} (u/p)^beta (v/p)^alpha
                // where the character of a unit n/d is (n*d/p).
                let mut s = 1i8;
                if alpha % 2 != 0 && beta % 2 != 0 {
                    s *= legendre(&BigInt::from(-1), p);
                }
                if beta % 2 != 0 {
                    s *= legendre(&(&an * &ad), p);
                }
                if alpha % 2 != 0 {
                    s *= legendre(&(&bn * &bd), p);
                }
                s
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Integer factorization (trial division + Miller-Rabin + Pollard rho)
// ---------------------------------------------------------------------------

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigUint::from(small);
        if n == &s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    // Write n - 1 = d * 2^s.
    let n1 = n - 1u32;
    let mut d = n1.clone();
    let mut s = 0u32;
    while (&d % 2u32).is_zero() {
        d >>= 1;
        s += 1;
    }
    // Deterministic for n < 3.3 * 10^24 with these bases.
    'bases: for base in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(base);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    // n odd composite, not a small prime power caught by trial division.
    let one = BigUint::one();
    for c in 1u32..64 {
        let cc = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cc) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                d = n.clone(); // cycle, retry with another constant
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
    }
    panic!("factorization failed for {n}");
}

fn collect_prime_factors(n: &BigUint, out: &mut BTreeSet<BigUint>) {
    let mut m = n.clone();
    if m.is_zero() {
        panic!("cannot factor zero");
    }
    // Trial division by 2 and small odd numbers.
    let two = BigUint::from(2u32);
    if (&m % &two).is_zero() {
        out.insert(two.clone());
        while (&m % &two).is_zero() {
            m /= &two;
        }
    }
    let mut d = 3u64;
    while d <= 100_000 {
        let dd = BigUint::from(d);
        if &dd * &dd > m {
            break;
        }
        if (&m % &dd).is_zero() {
            out.insert(dd.clone());
            while (&m % &dd).is_zero() {
                m /= &dd;
            }
        }
        d += 2;
    }
    if m.is_one() {
        return;
    }
    // Remaining cofactor: prime, or split recursively.
    let mut stack = vec![m];
    while let Some(k) = stack.pop() {
        if k.is_one() {
            continue;
        }
        if is_probable_prime(&k) {
            out.insert(k);
            continue;
        }
        let f = pollard_rho(&k);
        let q = &k / &f;
        stack.push(f);
        stack.push(q);
    }
}

/// The class of the quaternion symbol `(a, b)` over `Q`: the set of places
/// among `{infinity} U {primes dividing 2ab}` where the Hilbert symbol is
/// `-1`.  Even cardinality is asserted (Hilbert reciprocity): a violation
/// is an internal bug, not a data error.
pub fn class_of(a: &Rat, b: &Rat) -> Result<BrauerClass2> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput(
            "quaternion symbol entries must be nonzero".into(),
        ));
    }
    let mut primes: BTreeSet<BigUint> = BTreeSet::new();
    primes.insert(BigUint::from(2u32));
    for x in [a, b] {
        for z in [x.numer(), x.denom()] {
            let m = z.magnitude();
            if !m.is_one() && !m.is_zero() {
                collect_prime_factors(m, &mut primes);
            }
        }
    }
    let mut ram = BTreeSet::new();
    if hilbert(a, b, &Place::Infinite)? == -1 {
        ram.insert(Place::Infinite);
    }
    for p in primes {
        let v = Place::Finite(p);
        if hilbert(a, b, &v)? == -1 {
            ram.insert(v);
        }
    }
    assert!(
        ram.len() % 2 == 0,
        "Hilbert reciprocity violated for ({a}, {b}): {ram:?}"
    );
    Ok(BrauerClass2 { ram })
}

/// The Hamilton quaternion class `(-1, -1)`, ramified exactly at `2` and
/// the real place.
pub fn hamilton_class() -> BrauerClass2 {
    class_of(&Rat::from_int(-1), &Rat::from_int(-1)).expect("constant class")
}

// ---------------------------------------------------------------------------
// Formal symbols over Q(u, v, w)
// ---------------------------------------------------------------------------

/// A formal sum of quaternion symbols over the rational function field:
/// a multiset of pairs of nonzero polynomials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunctionSymbol {
    terms: Vec<(MPoly, MPoly)>,
}

impl FunctionSymbol {
    pub fn new(terms: Vec<(MPoly, MPoly)>) -> Result<Self> {
        for (f, g) in &terms {
            if f.is_zero() || g.is_zero() {
                return Err(Error::InvalidInput(
                    "symbol entries must be nonzero polynomials".into(),
                ));
            }
        }
        Ok(FunctionSymbol { terms })
    }

    pub fn single(f: MPoly, g: MPoly) -> Result<Self> {
        FunctionSymbol::new(vec![(f, g)])
    }

    pub fn terms(&self) -> &[(MPoly, MPoly)] {
        &self.terms
    }

    /// Formal sum: concatenation of term multisets.
    pub fn plus(&self, other: &FunctionSymbol) -> FunctionSymbol {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FunctionSymbol { terms }
    }

    /// Append the constant symbol `(a, b)`.
    pub fn with_constant_term(&self, vars: &VarSet, a: &Rat, b: &Rat) -> Result<FunctionSymbol> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidInput(
                "constant symbol entries must be nonzero".into(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.push((
            MPoly::constant(vars, a.clone()),
            MPoly::constant(vars, b.clone()),
        ));
        Ok(FunctionSymbol { terms })
    }

    /// Evaluate every entry at the point; `None` if any entry vanishes.
    fn values_at(&self, point: &[Rat]) -> Option<Vec<(Rat, Rat)>> {
        let mut vals = Vec::with_capacity(self.terms.len());
        for (f, g) in &self.terms {
            let fv = f.eval(point);
            let gv = g.eval(point);
            if fv.is_zero() || gv.is_zero() {
                return None;
            }
            vals.push((fv, gv));
        }
        Some(vals)
    }

    /// The class of the specialization at a rational point: the sum of
    /// `class_of(f(w), g(w))` over the terms.
    pub fn specialize(&self, point: &[Rat]) -> Result<BrauerClass2> {
        let vals = self.values_at(point).ok_or_else(|| {
            Error::InvalidInput(format!(
                "bad specialization point {point:?}: a symbol entry vanishes"
            ))
        })?;
        let mut acc = BrauerClass2::zero();
        for (fv, gv) in vals {
            acc = acc.add(&class_of(&fv, &gv)?);
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Tame residues
// ---------------------------------------------------------------------------

/// The tame residue of a symbol along an irreducible divisor: the divisor
/// and a polynomial representative of the residue class modulo it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueClass {
    pub divisor: MPoly,
    pub rep: MPoly,
}

impl ResidueClass {
    /// Trivial residue: representative identically 1.
    pub fn is_one(&self) -> bool {
        self.rep == MPoly::one(self.rep.vars())
    }
}

/// Multiplicity of `p` in nonzero `f` together with the cofactor `f / p^m`.
fn strip_factor(f: &MPoly, p: &MPoly) -> (u32, MPoly) {
    let mut m = 0u32;
    let mut rest = f.clone();
    while let Some(q) = rest.try_div_exact(p) {
        rest = q;
        m += 1;
    }
    (m, rest)
}

/// Remainder of `f` under repeated reduction of its largest reducible term
/// by `p` (graded-lex).  The result has no term divisible by the leading
/// term of `p`; in particular it is divisible by `p` only if it is zero.
pub fn reduce_mod(f: &MPoly, p: &MPoly) -> MPoly {
    assert!(!p.is_zero(), "reduction modulo zero");
    let vars = f.vars().clone();
    let (pe, pc) = p.leading().expect("nonzero polynomial has leading term");
    let (pe, pc) = (pe.clone(), pc.clone());
    let mut r = f.clone();
    loop {
        let target = r
            .terms()
            .filter(|(e, _)| pe.0.iter().zip(&e.0).all(|(a, b)| a <= b))
            .max_by(|a, b| a.0.cmp(b.0))
            .map(|(e, c)| (e.clone(), c.clone()));
        let Some((e, c)) = target else {
            return r;
        };
        let qe: Vec<u16> = e.0.iter().zip(&pe.0).map(|(a, b)| a - b).collect();
        let mono = MPoly::from_terms(&vars, [(qe, &c / &pc)]);
        r = r.sub(&mono.mul(p));
    }
}

/// The tame residue of `sym` along the irreducible polynomial `p`
/// (irreducibility is the caller's responsibility).  Per term `(f, g)`
/// with multiplicities `m = mult_p(f)`, `n = mult_p(g)`, the contribution
/// is `(-1)^{mn} f0^n g0^m` with `f0 = f/p^m`, `g0 = g/p^n` (equal to the
/// usual `f^n g^{-m}` up to squares); contributions are multiplied and
/// reduced modulo `p`.
pub fn tame_residue(sym: &FunctionSymbol, p: &MPoly) -> Result<ResidueClass> {
    if p.is_zero() || p.total_degree() == 0 {
        return Err(Error::InvalidInput(
            "residue divisor must be a nonconstant polynomial".into(),
        ));
    }
    let vars = p.vars().clone();
    let mut rep = MPoly::one(&vars);
    for (f, g) in sym.terms() {
        let (m, f0) = strip_factor(f, p);
        let (n, g0) = strip_factor(g, p);
        let mut term = f0.pow(n).mul(&g0.pow(m));
        if (m * n) % 2 == 1 {
            term = term.neg();
        }
        rep = rep.mul(&term);
    }
    let rep = reduce_mod(&rep, p);
    if rep.is_zero() {
        return Err(Error::VerificationFailed(
            "residue representative vanished modulo the divisor".into(),
        ));
    }
    Ok(ResidueClass {
        divisor: p.clone(),
        rep,
    })
}

// ---------------------------------------------------------------------------
// Specialization sampling
// ---------------------------------------------------------------------------

/// Outcome of comparing classes by specialization at sample points.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SampleComparison {
    /// Every sampled difference was this class; the points are witnesses.
    Constant {
        class: BrauerClass2,
        witnesses: Vec<Vec<Rat>>,
    },
    /// Two sample points with different classes: a sound refutation of
    /// constancy (hence of equality when comparing two symbols).
    Refuted {
        first_point: Vec<Rat>,
        first_class: BrauerClass2,
        second_point: Vec<Rat>,
        second_class: BrauerClass2,
    },
}

fn small_rat(rng: &mut ChaCha8Rng, height: i64) -> Rat {
    let n = rng.gen_range(-height..=height);
    let d = rng.gen_range(1..=height);
    Rat::new(n, d)
}

/// Compare two symbols by their specializations: sample `n` rational
/// points in the plane avoiding `avoid` (typically the discriminant) and
/// all symbol-entry zero loci, and compute the pointwise class difference
/// (= sum, by 2-torsion).  All equal: that constant difference, with the
/// witnesses.  Any two unequal: a refutation.
pub fn compare_by_specialization(
    s1: &FunctionSymbol,
    s2: &FunctionSymbol,
    avoid: &[&MPoly],
    n: usize,
    seed: u64,
) -> Result<SampleComparison> {
    if n == 0 {
        return Err(Error::InvalidInput("sample count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<(Vec<Rat>, BrauerClass2)> = vec![];
    let mut tries = 0usize;
    let max_tries = 400 * n;
    while found.len() < n && tries < max_tries {
        tries += 1;
        let height = 3 + (tries / 50) as i64;
        let point = vec![
            small_rat(&mut rng, height),
            small_rat(&mut rng, height),
            Rat::one(),
        ];
        if avoid.iter().any(|p| p.eval(&point).is_zero()) {
            continue;
        }
        let (Some(_), Some(_)) = (s1.values_at(&point), s2.values_at(&point)) else {
            continue;
        };
        let d = s1.specialize(&point)?.add(&s2.specialize(&point)?);
        if let Some((p0, d0)) = found.first() {
            if *d0 != d {
                return Ok(SampleComparison::Refuted {
                    first_point: p0.clone(),
                    first_class: d0.clone(),
                    second_point: point,
                    second_class: d,
                });
            }
        }
        found.push((point, d));
    }
    if found.len() < n {
        return Err(Error::RetriesExhausted(format!(
            "sampled only {} of {} valid comparison points in {} tries",
            found.len(),
            n,
            max_tries
        )));
    }
    let class = found[0].1.clone();
    Ok(SampleComparison::Constant {
        class,
        witnesses: found.into_iter().map(|(p, _)| p).collect(),
    })
}

/// Restrict a symbol to a line and test constancy of its specializations.
///
/// The line is a nonzero linear form; sample points are drawn from its
/// rational parametrization, rejecting zeros of `avoid` and of the symbol
/// entries.  Entries vanishing identically on the line are rejected up
/// front (checked exactly by interpolation).
pub fn constant_class_along_line(
    sym: &FunctionSymbol,
    line: &MPoly,
    avoid: &[&MPoly],
    n: usize,
    seed: u64,
) -> Result<SampleComparison> {
    if n == 0 {
        return Err(Error::InvalidInput("sample count must be positive".into()));
    }
    if line.is_zero() || line.total_degree() != 1 {
        return Err(Error::InvalidInput(
            "line must be a nonzero linear form".into(),
        ));
    }
    let nvars = line.vars().len();
    if nvars != 3 {
        return Err(Error::InvalidInput("line must be a ternary form".into()));
    }
    // Two independent points spanning the line.
    let coeffs: Vec<Rat> = (0..3)
        .map(|i| {
            let mut e = vec![0u16; 3];
            e[i] = 1;
            line.coeff(&e)
        })
        .collect();
    let basis = kernel_of_linear(&coeffs);
    let [p0, p1] = basis;
    // Points are normalized so the last nonzero coordinate is 1: symbol
    // entries are forms, so the class at a point depends on the chosen
    // coordinate triple, and the affine-chart representative is the
    // canonical one.
    let param = |s: &Rat, t: &Rat| -> Vec<Rat> {
        let mut pt: Vec<Rat> = (0..3).map(|i| &(s * &p0[i]) + &(t * &p1[i])).collect();
        if let Some(scale) = pt.iter().rev().find(|c| !c.is_zero()).cloned() {
            for c in &mut pt {
                *c = &*c / &scale;
            }
        }
        pt
    };

    // Exact containment check: a form of degree d vanishing at d+1
    // distinct points of the line vanishes identically on it.
    for (f, g) in sym.terms() {
        for entry in [f, g] {
            let d = entry.total_degree() as i64;
            let mut all_zero = entry.eval(&param(&Rat::zero(), &Rat::one())).is_zero();
            for t in 0..=d {
                if !entry.eval(&param(&Rat::one(), &Rat::from_int(t))).is_zero() {
                    all_zero = false;
                }
            }
            if all_zero {
                return Err(Error::InvalidInput(
                    "a symbol entry vanishes identically on the line".into(),
                ));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<(Vec<Rat>, BrauerClass2)> = vec![];
    let mut tries = 0usize;
    let max_tries = 400 * n;
    while found.len() < n && tries < max_tries {
        tries += 1;
        let height = 3 + (tries / 50) as i64;
        let point = if tries % 17 == 0 {
            param(&Rat::zero(), &Rat::one())
        } else {
            param(&Rat::one(), &small_rat(&mut rng, height))
        };
        if avoid.iter().any(|p| p.eval(&point).is_zero()) {
            continue;
        }
        if sym.values_at(&point).is_none() {
            continue;
        }
        let d = sym.specialize(&point)?;
        if let Some((q0, d0)) = found.first() {
            if *d0 != d {
                return Ok(SampleComparison::Refuted {
                    first_point: q0.clone(),
                    first_class: d0.clone(),
                    second_point: point,
                    second_class: d,
                });
            }
        }
        found.push((point, d));
    }
    if found.len() < n {
        return Err(Error::RetriesExhausted(format!(
            "sampled only {} of {} valid points on the line in {} tries",
            found.len(),
            n,
            max_tries
        )));
    }
    let class = found[0].1.clone();
    Ok(SampleComparison::Constant {
        class,
        witnesses: found.into_iter().map(|(p, _)| p).collect(),
    })
}

/// Two independent solutions of `c0 x + c1 y + c2 z = 0`.
fn kernel_of_linear(c: &[Rat]) -> [[Rat; 3]; 2] {
    let z = Rat::zero;
    let o = Rat::one;
    if !c[0].is_zero() {
        [
            [-&c[1], c[0].clone(), z()],
            [-&c[2], z(), c[0].clone()],
        ]
    } else if !c[1].is_zero() {
        [
            [o(), z(), z()],
            [z(), -&c[2], c[1].clone()],
        ]
    } else {
        // c2 != 0 for a nonzero linear form.
        [[o(), z(), z()], [z(), o(), z()]]
    }
}
