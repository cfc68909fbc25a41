//! Sturm chains: exact real-root counting and isolation with rational
//! brackets.  This is the only root-locating machinery in the crate; no
//! floating point is involved anywhere.

use crate::rat::Rat;
use crate::unipoly::UniPoly;
use serde::Serialize;

/// A bracket around one real root: either an exact rational root
/// (`lo == hi`) or an open interval `(lo, hi)` containing exactly one root
/// of the polynomial it was produced for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl IsolatingInterval {
    pub fn point(x: Rat) -> Self {
        IsolatingInterval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) * Rat::new(1, 2)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// Sturm chain of the squarefree part of a polynomial.  Root counts are
/// counts of *distinct* real roots of the original polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    /// Build the chain for `f` (nonzero).  The squarefree part is taken
    /// first, so repeated roots are counted once.
    pub fn new(f: &UniPoly) -> Self {
        assert!(!f.is_zero(), "Sturm chain of the zero polynomial");
        let p = f.squarefree_part();
        let mut chain = vec![p.clone()];
        if p.degree().unwrap_or(0) >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]).neg();
                if r.is_zero() {
                    break;
                }
                chain.push(r);
            }
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            if p.is_zero() {
                0
            } else {
                p.lc().signum()
            }
        }))
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| match p.degree() {
            None => 0,
            Some(d) => {
                let s = p.lc().signum();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in_half_open(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a <= b);
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_in_open(&self, a: &Rat, b: &Rat) -> usize {
        let mut n = self.count_in_half_open(a, b);
        if self.chain[0].sign_at(b) == 0 {
            n -= 1;
        }
        n
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count_in_closed(&self, a: &Rat, b: &Rat) -> usize {
        let mut n = self.count_in_half_open(a, b);
        if self.chain[0].sign_at(a) == 0 {
            n += 1;
        }
        n
    }

    /// Total number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Roots in `(a, +inf)`.
    pub fn count_above(&self, a: &Rat) -> usize {
        self.variations_at(a) - self.variations_at_pos_inf()
    }

    /// Roots in `(-inf, a]`.
    pub fn count_up_to(&self, a: &Rat) -> usize {
        self.variations_at_neg_inf() - self.variations_at(a)
    }
}

/// Count distinct real roots of `f`.
pub fn count_real_roots(f: &UniPoly) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    SturmChain::new(f).count_all()
}

/// Isolate all distinct real roots of `f` (nonzero, any multiplicity) into
/// pairwise disjoint brackets, sorted in increasing order.  Rational roots
/// are returned as exact point brackets; the rest as open intervals with
/// rational endpoints that are not roots.
pub fn isolate_real_roots(f: &UniPoly) -> Vec<IsolatingInterval> {
    let p = f.squarefree_part();
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let chain = SturmChain::new(&p);
    let total = chain.count_all();
    if total == 0 {
        return vec![];
    }
    let bound = p.root_bound();
    // All roots lie in (-bound, bound]; widen the left end so the open/half
    // open distinction cannot lose the leftmost root.
    let lo = -&bound - Rat::one();
    let hi = bound + Rat::one();
    let mut out = vec![];
    split(&p, &chain, lo, hi, &mut out);
    debug_assert_eq!(out.len(), total);
    out
}

fn split(
    p: &UniPoly,
    chain: &SturmChain,
    lo: Rat,
    hi: Rat,
    out: &mut Vec<IsolatingInterval>,
) {
    let n = chain.count_in_half_open(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        if p.sign_at(&hi) == 0 {
            out.push(IsolatingInterval::point(hi));
            return;
        }
        // `lo` can be an exact root (a split midpoint isolating the
        // neighboring bracket); shrink until both endpoints are certified
        // non-roots so every open bracket keeps root-free endpoints.
        let mut lo = lo;
        let mut hi = hi;
        while p.sign_at(&lo) == 0 {
            let mid = Rat::mid(&lo, &hi);
            let sm = p.sign_at(&mid);
            if sm == 0 {
                out.push(IsolatingInterval::point(mid));
                return;
            }
            if chain.count_in_half_open(&mid, &hi) == 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(IsolatingInterval { lo, hi });
        return;
    }
    let mid = (&lo + &hi) * Rat::new(1, 2);
    split(p, chain, lo, mid.clone(), out);
    split(p, chain, mid, hi, out);
}

/// Halve the bracket around the unique simple root of squarefree `p`.
/// Point brackets are already exact and pass through unchanged.
pub fn refine_step(p: &UniPoly, iv: &IsolatingInterval) -> IsolatingInterval {
    if iv.is_point() {
        return iv.clone();
    }
    let mid = iv.mid();
    let sm = p.sign_at(&mid);
    if sm == 0 {
        return IsolatingInterval::point(mid);
    }
    let slo = p.sign_at(&iv.lo);
    debug_assert_ne!(slo, 0, "bracket endpoint must not be a root");
    debug_assert_ne!(p.sign_at(&iv.hi), 0, "bracket endpoint must not be a root");
    debug_assert_ne!(slo, p.sign_at(&iv.hi), "simple root must flip sign");
    if sm != slo {
        IsolatingInterval {
            lo: iv.lo.clone(),
            hi: mid,
        }
    } else {
        IsolatingInterval {
            lo: mid,
            hi: iv.hi.clone(),
        }
    }
}

/// Refine a bracket until its width is at most `eps` (point brackets are
/// returned immediately).
pub fn refine_below(p: &UniPoly, iv: &IsolatingInterval, eps: &Rat) -> IsolatingInterval {
    let mut cur = iv.clone();
    while !cur.is_point() && &cur.width() > eps {
        cur = refine_step(p, &cur);
    }
    cur
}

/// Exact sign of `q` at the algebraic number described by (`p`, bracket):
/// the unique root of squarefree `p` inside the bracket.  Decides zero by a
/// gcd computation, then refines the bracket until the Sturm chain of `q`
/// certifies a constant sign over it.
pub fn sign_at_root(p: &UniPoly, iv: &IsolatingInterval, q: &UniPoly) -> i32 {
    if q.is_zero() {
        return 0;
    }
    if iv.is_point() {
        return q.sign_at(&iv.lo);
    }
    let g = p.gcd(q);
    if g.degree().unwrap_or(0) >= 1 {
        // q vanishes on some roots of p.  Every root of g is a root of p,
        // and p has exactly one root in the bracket (never at an endpoint),
        // so q vanishes at our root iff g has a root in the closed bracket.
        if SturmChain::new(&g).count_in_closed(&iv.lo, &iv.hi) > 0 {
            return 0;
        }
    }
    // q is nonzero at the root: shrink until q has no root in the bracket,
    // then the sign at the midpoint is the sign at the root.
    let qs = q.squarefree_part();
    let qchain = SturmChain::new(&qs);
    let mut cur = iv.clone();
    loop {
        if qchain.count_in_closed(&cur.lo, &cur.hi) == 0 {
            return q.sign_at(&cur.mid());
        }
        cur = refine_step(p, &cur);
        if cur.is_point() {
            return q.sign_at(&cur.lo);
        }
    }
}

/// Refine a sorted family of brackets (all isolating roots of `f`) until
/// consecutive brackets are strictly separated: `ivs[k-1].hi < ivs[k].lo`.
/// Afterwards every gap midpoint is strictly between the two roots.
pub fn separate_strictly(f: &UniPoly, ivs: &mut [IsolatingInterval]) {
    if ivs.len() < 2 {
        return;
    }
    let p = f.squarefree_part();
    for k in 1..ivs.len() {
        // Brackets of distinct roots: bisection is guaranteed to terminate.
        while ivs[k - 1].hi >= ivs[k].lo {
            if !ivs[k - 1].is_point() {
                ivs[k - 1] = refine_step(&p, &ivs[k - 1]);
            }
            if ivs[k - 1].hi >= ivs[k].lo && !ivs[k].is_point() {
                ivs[k] = refine_step(&p, &ivs[k]);
            }
        }
    }
}

/// Midpoint of the gap between two strictly separated brackets; the result
/// lies strictly between the roots the brackets isolate.
pub fn gap_sample(a: &IsolatingInterval, b: &IsolatingInterval) -> Rat {
    assert!(a.hi < b.lo, "brackets must be strictly separated");
    Rat::mid(&a.hi, &b.lo)
}
