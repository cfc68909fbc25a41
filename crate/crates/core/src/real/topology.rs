//! Exact topology of the real points of a smooth plane quartic, and the
//! image-region report of the associated double cover.
//!
//! Strategy: find a projective chart whose line at infinity provably misses
//! the real quartic (the degree-4 binary form cut out at infinity is
//! definite), so the affine curve is compact and no oval can escape the
//! chart.  Then run a sweep line over the `x`-axis: events are the real
//! roots of the resultant of the quartic with its `y`-derivative (vertical
//! tangencies and worse) together with the `x`-coordinates where the first
//! form meets the quartic.  Between events the curve is a disjoint union of
//! `x`-monotone branch segments, counted and bracketed exactly by Sturm
//! chains.  Across each event the branches are matched by certified
//! horizontal separators: a separator is accepted only when a Sturm count
//! proves the horizontal segment misses the curve, and the branch pattern
//! between accepted separators must be one of pass-through, merge, or birth.
//! No genericity is assumed beyond smoothness: every matching is verified,
//! and ambiguous events are refined until certification succeeds.

use crate::covers::{self, CoverSpec};
use crate::matrix::{resultant_wrt, RatMat};
use crate::poly::{MPoly, VarSet};
use crate::quadform::{Inertia, TernaryForm};
use crate::rat::Rat;
use crate::real::sturm::{self, IsolatingInterval, SturmChain};
use crate::unipoly::UniPoly;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

const CHART_HEIGHT_BOUND: i64 = 3;

/// Most charts are rejected cheaply (their line at infinity visibly meets the
/// curve).  A chart that passes that filter triggers a full exact sweep, and a
/// sweep that fails burns its entire refinement budget, so only this many
/// sweeps are attempted before giving up.
const MAX_SWEPT_CHARTS: usize = 6;
const MAX_EVENT_REFINE: u32 = 96;
const MAX_BOUND_GROWTH: u32 = 16;

/// The possible configurations of a smooth real plane quartic: at most four
/// ovals, nesting only in the two-oval case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OvalConfiguration {
    Empty,
    OneOval,
    TwoNested,
    TwoNonNested,
    ThreeOvals,
    FourOvals,
}

/// One connected component of the chart plane minus the curve, with an
/// exact rational sample point and its enclosure data.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneCell {
    /// Affine sample `(x, y)` in the sweep chart.
    pub sample_chart: [Rat; 2],
    /// The same sample as a projective point in the original coordinates.
    pub sample: [Rat; 3],
    /// Ovals enclosing this cell, by oval id, sorted.
    pub enclosing: Vec<usize>,
    /// Enclosure depth: number of ovals around the cell.
    pub depth: usize,
    /// True exactly for the unbounded outside cell.
    pub unbounded: bool,
}

/// Exact topology of the real quartic: ovals, nesting forest, and the cell
/// decomposition of the complement, all certified by Sturm counts.
#[derive(Clone, Debug, Serialize)]
pub struct RealCurveTopology {
    pub oval_count: usize,
    /// `nesting_parent[i]` is the oval immediately enclosing oval `i`.
    pub nesting_parent: Vec<Option<usize>>,
    /// `oval_depth[i]` = number of ovals strictly enclosing oval `i`.
    pub oval_depth: Vec<usize>,
    pub configuration: OvalConfiguration,
    pub cells: Vec<PlaneCell>,
    /// Index into `cells` of the unbounded cell (always 0 with the
    /// deterministic ordering used here, kept explicit for readers).
    pub outside_cell: usize,
    /// Chart matrix `S`: chart point `y` corresponds to the original
    /// projective point `S * y`.
    pub chart: RatMat,
    /// Number of charts tried before one was certified.
    pub chart_attempts: u32,
    /// All real points of the affine curve lie in the box
    /// `[-window, window]^2` (certified bound, used by the grid cross-check).
    pub window: Rat,
    #[serde(skip)]
    sweep: Sweep,
}

/// One maximal uncovered-or-covered run along an oval: a boundary arc of
/// the image region, with a representative branch point (exact bracket).
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryArc {
    pub oval: usize,
    /// True when the double cover has real points over the arc
    /// (first form positive there).
    pub covered: bool,
    /// Number of branch segments merged into this arc.
    pub segments: usize,
    /// Abscissa of a representative branch segment.
    pub sample_x: Rat,
    /// Bracket for the `y`-coordinate of the representative branch point.
    pub sample_y: IsolatingInterval,
}

/// Which cells of the complement lie in the image of the real double cover,
/// plus the covered/uncovered decomposition of the curve itself.
#[derive(Clone, Debug, Serialize)]
pub struct RegionReport {
    /// Per-cell membership flags, indexed like `RealCurveTopology::cells`.
    pub cell_in_image: Vec<bool>,
    /// Indices of the cells in the image.
    pub image_cells: Vec<usize>,
    pub boundary_arcs: Vec<BoundaryArc>,
    /// True when the unbounded cell lies in the image.
    pub outside_contained: bool,
}

// ---------------------------------------------------------------------------
// Sweep data
// ---------------------------------------------------------------------------

/// Branch links at the two ends of a segment: either it continues as branch
/// `j` of the adjacent slab, or it U-turns into a partner branch of the
/// same slab at the event.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Link {
    Through(usize),
    Turn(usize),
}

#[derive(Clone, Debug)]
struct Slab {
    /// Sample abscissa strictly between the adjacent events.
    x: Rat,
    /// The quartic sliced at `x`: a squarefree quartic in `y`.
    fy: UniPoly,
    /// Strictly separated brackets for the real roots of `fy`.
    roots: Vec<IsolatingInterval>,
    /// `roots.len() + 1` rational `y`-samples, one per vertical cell piece.
    cell_y: Vec<Rat>,
}

#[derive(Clone, Debug)]
struct Sweep {
    /// Affine quartic in the chart, variables `(x, y)`.
    fc: MPoly,
    /// Affine first form in the chart.
    q1c: MPoly,
    slabs: Vec<Slab>,
    /// `right_link[i][j]`: link at the right end of branch `j` of slab `i`.
    right_link: Vec<Vec<Link>>,
    left_link: Vec<Vec<Link>>,
    /// Oval id of each branch segment.
    seg_oval: Vec<Vec<usize>>,
    /// Cell id of each vertical piece `(slab, piece)`.
    piece_cell: Vec<Vec<usize>>,
}

/// Result of matching one event: through-links, merges, births (indices on
/// the matching side), and the certified cell adjacencies.
struct EventMatch {
    through: Vec<(usize, usize)>,
    /// Lower index `j` of a merging pair `(j, j+1)` on the left slab.
    left_turns: Vec<usize>,
    /// Lower index `j` of a born pair `(j, j+1)` on the right slab.
    right_turns: Vec<usize>,
    /// Certified adjacencies `(left piece, right piece)`.
    cell_joins: Vec<(usize, usize)>,
}

/// Working bracket around one event abscissa.  Exact rational events keep
/// their value and shrink symmetrically; irrational events refine their
/// isolating bracket.
struct EventBracket {
    exact: Option<Rat>,
    lo: Rat,
    hi: Rat,
}

impl EventBracket {
    fn refine(&mut self, sf_events: &UniPoly) {
        if let Some(c) = &self.exact {
            self.lo = Rat::mid(&self.lo, c);
            self.hi = Rat::mid(c, &self.hi);
            return;
        }
        let iv = IsolatingInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        };
        let next = sturm::refine_step(sf_events, &iv);
        if next.is_point() {
            // Bisection landed exactly on the event: keep the old endpoints
            // (certified non-events) and shrink around the value from now on.
            self.exact = Some(next.lo);
        } else {
            self.lo = next.lo;
            self.hi = next.hi;
        }
    }
}

// ---------------------------------------------------------------------------
// Small exact plumbing
// ---------------------------------------------------------------------------

/// Slice a bivariate polynomial at `x = a`: a dense polynomial in `y`.
fn slice_x(f: &MPoly, a: &Rat) -> UniPoly {
    let dx = f.degree_in(0) as usize;
    let dy = f.degree_in(1) as usize;
    let mut pow = Vec::with_capacity(dx + 1);
    pow.push(Rat::one());
    for _ in 0..dx {
        pow.push(pow.last().unwrap() * a);
    }
    let mut coeffs = vec![Rat::zero(); dy + 1];
    for (e, c) in f.terms() {
        coeffs[e.0[1] as usize] = &coeffs[e.0[1] as usize] + &(c * &pow[e.0[0] as usize]);
    }
    UniPoly::from_coeffs(coeffs)
}

/// Slice a bivariate polynomial at `y = b`: a dense polynomial in `x`.
fn slice_y(f: &MPoly, b: &Rat) -> UniPoly {
    let dx = f.degree_in(0) as usize;
    let dy = f.degree_in(1) as usize;
    let mut pow = Vec::with_capacity(dy + 1);
    pow.push(Rat::one());
    for _ in 0..dy {
        pow.push(pow.last().unwrap() * b);
    }
    let mut coeffs = vec![Rat::zero(); dx + 1];
    for (e, c) in f.terms() {
        coeffs[e.0[0] as usize] = &coeffs[e.0[0] as usize] + &(c * &pow[e.0[1] as usize]);
    }
    UniPoly::from_coeffs(coeffs)
}

/// True when the horizontal segment `y = s`, `lo <= x <= hi` misses the
/// curve, certified by a Sturm count.
fn horizontal_clear(fc: &MPoly, s: &Rat, lo: &Rat, hi: &Rat) -> bool {
    let g = slice_y(fc, s);
    if g.is_zero() {
        return false;
    }
    if g.degree() == Some(0) {
        return true;
    }
    SturmChain::new(&g).count_in_closed(lo, hi) == 0
}

/// The binary quartic cut out by the chart's line at infinity, as the
/// chart-`t` polynomial `fp(t, 1, 0)` plus its leading coefficient
/// `fp(1, 0, 0)`; definite iff degree 4 with no real roots.
fn infinity_is_definite(fp: &MPoly) -> bool {
    let mut coeffs = vec![Rat::zero(); 5];
    for (e, c) in fp.terms() {
        if e.0[2] == 0 {
            coeffs[e.0[0] as usize] = c.clone();
        }
    }
    let g = UniPoly::from_coeffs(coeffs);
    g.degree() == Some(4) && sturm::count_real_roots(&g) == 0
}

/// Certified bound `Y` with `|y| < Y` on every real curve point with
/// `|x| <= xa`: a Cauchy bound with each coefficient of `y^j` maximized
/// over the interval.
fn y_band(fc: &MPoly, xa: &Rat) -> Rat {
    let a4 = fc.coeff(&[0, 4]).abs();
    assert!(!a4.is_zero(), "chart leading coefficient must not vanish");
    let x = if *xa < Rat::one() { Rat::one() } else { xa.clone() };
    let mut worst = Rat::zero();
    for j in 0..4u16 {
        let mut total = Rat::zero();
        for (e, c) in fc.terms() {
            if e.0[1] == j {
                total = &total + &(c.abs() * x.pow(e.0[0] as i32));
            }
        }
        let q = &total / &a4;
        if q > worst {
            worst = q;
        }
    }
    worst + Rat::one()
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn gcd(mut a: i64, mut b: i64) -> i64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    gcd(gcd(a.abs(), b.abs()), c.abs())
}

/// Primitive integer lines `c0*u + c1*v + c2*w = 0` in deterministic order:
/// the coordinate line `w = 0` first, then by height.  One representative
/// per projective line (the last nonzero coordinate is positive).
fn chart_lines(height_bound: i64) -> Vec<[i64; 3]> {
    let mut out = vec![[0, 0, 1]];
    for h in 1..=height_bound {
        for c0 in -h..=h {
            for c1 in -h..=h {
                for c2 in 0..=h {
                    if c0.abs().max(c1.abs()).max(c2) != h || gcd3(c0, c1, c2) != 1 {
                        continue;
                    }
                    if c2 == 0 && (c1 < 0 || (c1 == 0 && c0 < 0)) {
                        continue;
                    }
                    if [c0, c1, c2] != [0, 0, 1] {
                        out.push([c0, c1, c2]);
                    }
                }
            }
        }
    }
    out
}

/// Invertible chart whose line at infinity is the given line: the first two
/// columns span the kernel of the linear form, the third is transversal.
fn line_chart(c: [i64; 3]) -> RatMat {
    let i = (0..3).find(|&i| c[i] != 0).expect("line must be nonzero");
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut m = RatMat::zero(3, 3);
    m[(j, 0)] = Rat::from_int(c[i]);
    m[(i, 0)] = Rat::from_int(-c[j]);
    m[(k, 1)] = Rat::from_int(c[i]);
    m[(i, 1)] = Rat::from_int(-c[k]);
    m[(i, 2)] = Rat::one();
    debug_assert!(!m.det().is_zero());
    m
}

/// Deterministic union-find (smaller root index wins).
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

// ---------------------------------------------------------------------------
// Sweep construction
// ---------------------------------------------------------------------------

struct RawSweep {
    fc: MPoly,
    q1c: MPoly,
    slabs: Vec<Slab>,
    right_link: Vec<Vec<Link>>,
    left_link: Vec<Vec<Link>>,
    cell_dsu: Dsu,
    window: Rat,
}

fn make_slab(fc: &MPoly, x: Rat) -> Result<Slab> {
    let fy = slice_x(fc, &x);
    if fy.degree() != Some(4) {
        return Err(Error::VerificationFailed(format!(
            "quartic slice at x = {x} dropped degree; the chart certificate is broken"
        )));
    }
    if !fy.is_separable() {
        return Err(Error::VerificationFailed(format!(
            "quartic slice at x = {x} has a repeated root although x is not an event"
        )));
    }
    let mut roots = sturm::isolate_real_roots(&fy);
    sturm::separate_strictly(&fy, &mut roots);
    let cell_y = if roots.is_empty() {
        vec![Rat::zero()]
    } else {
        let mut ys = Vec::with_capacity(roots.len() + 1);
        ys.push(&roots[0].lo - &Rat::one());
        for k in 1..roots.len() {
            ys.push(sturm::gap_sample(&roots[k - 1], &roots[k]));
        }
        ys.push(roots.last().unwrap().hi.clone() + Rat::one());
        ys
    };
    Ok(Slab {
        x,
        fy,
        roots,
        cell_y,
    })
}

/// Match the branches of slab `i` to those of slab `i+1` across one event.
/// Certified by horizontal separators; refines the event bracket until the
/// branch pattern between accepted separators is unambiguous.
fn match_event(
    fc: &MPoly,
    sf_events: &UniPoly,
    evb: &mut EventBracket,
    kl: usize,
    kr: usize,
    yband: &Rat,
) -> Result<EventMatch> {
    'refine: for _ in 0..MAX_EVENT_REFINE {
        let (lo, hi) = (evb.lo.clone(), evb.hi.clone());
        let fl = slice_x(fc, &lo);
        let fr = slice_x(fc, &hi);
        let mut rl = sturm::isolate_real_roots(&fl);
        let mut rr = sturm::isolate_real_roots(&fr);
        if rl.len() != kl || rr.len() != kr {
            return Err(Error::VerificationFailed(
                "branch count changed between a slab sample and its event bracket".into(),
            ));
        }
        sturm::separate_strictly(&fl, &mut rl);
        sturm::separate_strictly(&fr, &mut rr);

        // Bottom and top separators: start from the certified band and the
        // slice root bounds, grow on (theoretically impossible) failure.
        let mut bound = yband.clone();
        if !fl.is_zero() {
            let b = fl.root_bound() + Rat::one();
            if b > bound {
                bound = b;
            }
        }
        if !fr.is_zero() {
            let b = fr.root_bound() + Rat::one();
            if b > bound {
                bound = b;
            }
        }
        let mut grow = 0;
        while !horizontal_clear(fc, &-&bound, &lo, &hi) || !horizontal_clear(fc, &bound, &lo, &hi)
        {
            bound = &bound * &Rat::from_int(2);
            grow += 1;
            if grow > MAX_BOUND_GROWTH {
                evb.refine(sf_events);
                continue 'refine;
            }
        }

        // Candidate separators: bottom, top, and every gap midpoint on both
        // sides.  BTreeMap value = certified goodness.
        let mut seps: BTreeMap<Rat, bool> = BTreeMap::new();
        seps.insert(-&bound, true);
        seps.insert(bound.clone(), true);
        for side in [&rl, &rr] {
            for k in 1..side.len() {
                let s = sturm::gap_sample(&side[k - 1], &side[k]);
                let good = horizontal_clear(fc, &s, &lo, &hi);
                seps.entry(s).and_modify(|g| *g &= good).or_insert(good);
            }
        }

        let chain_l = SturmChain::new(&fl);
        let chain_r = SturmChain::new(&fr);
        let good: Vec<Rat> = seps
            .iter()
            .filter(|(_, g)| **g)
            .map(|(s, _)| s.clone())
            .collect();
        let bad: Vec<Rat> = seps
            .iter()
            .filter(|(_, g)| !**g)
            .map(|(s, _)| s.clone())
            .collect();

        // Classify the strips between consecutive good separators.
        let mut through = vec![];
        let mut left_turns = vec![];
        let mut right_turns = vec![];
        let mut turn_strips: Vec<(Rat, Rat)> = vec![];
        for w in good.windows(2) {
            let cl = chain_l.count_in_open(&w[0], &w[1]);
            let cr = chain_r.count_in_open(&w[0], &w[1]);
            let jl = chain_l.count_up_to(&w[0]);
            let jr = chain_r.count_up_to(&w[0]);
            match (cl, cr) {
                (0, 0) => {}
                (1, 1) => through.push((jl, jr)),
                (2, 0) => {
                    left_turns.push(jl);
                    turn_strips.push((w[0].clone(), w[1].clone()));
                }
                (0, 2) => {
                    right_turns.push(jr);
                    turn_strips.push((w[0].clone(), w[1].clone()));
                }
                _ => {
                    evb.refine(sf_events);
                    continue 'refine;
                }
            }
        }

        // Every rejected separator must be the single pinched gap of a merge
        // or birth strip; anything else means the event is not yet resolved.
        let mut pinches_per_strip = vec![0usize; turn_strips.len()];
        for b in &bad {
            let mut placed = false;
            for (t, (slo, shi)) in turn_strips.iter().enumerate() {
                if slo < b && b < shi {
                    pinches_per_strip[t] += 1;
                    placed = true;
                    break;
                }
            }
            if !placed {
                evb.refine(sf_events);
                continue 'refine;
            }
        }
        if pinches_per_strip.iter().any(|&n| n != 1) {
            evb.refine(sf_events);
            continue 'refine;
        }

        // Bookkeeping totals must account for every branch on both sides.
        if through.len() + 2 * left_turns.len() != kl
            || through.len() + 2 * right_turns.len() != kr
        {
            return Err(Error::VerificationFailed(
                "branch matching does not account for every branch".into(),
            ));
        }

        let cell_joins = good
            .iter()
            .map(|s| (chain_l.count_up_to(s), chain_r.count_up_to(s)))
            .collect();
        return Ok(EventMatch {
            through,
            left_turns,
            right_turns,
            cell_joins,
        });
    }
    Err(Error::RetriesExhausted(
        "event bracket refinement did not certify a branch matching".into(),
    ))
}

fn sweep_chart(fp: &MPoly, q1p: &MPoly) -> Result<RawSweep> {
    let fc = covers::dehomogenize_w(fp);
    let q1c = covers::dehomogenize_w(q1p);

    // Event abscissas: vertical tangencies (and any worse collision of the
    // slice roots), plus the x-coordinates where the first form meets the
    // quartic (so branch signs of the first form are slab-constant).
    let dfy = fc.derivative(1);
    let disc = resultant_wrt(&fc, &dfy, 1);
    let disc_x = UniPoly::from_mpoly(&disc, 0)
        .map_err(|_| Error::VerificationFailed("discriminant resultant kept a y-term".into()))?;
    if disc_x.is_zero() {
        return Err(Error::VerificationFailed(
            "the chart quartic has vanishing y-discriminant (a repeated component)".into(),
        ));
    }
    let ev_q1 = if q1c.is_zero() {
        UniPoly::one()
    } else if q1c.degree_in(1) == 0 {
        UniPoly::from_mpoly(&q1c, 0)
            .map_err(|_| Error::VerificationFailed("first-form slice kept a y-term".into()))?
    } else {
        let r = resultant_wrt(&fc, &q1c, 1);
        let rx = UniPoly::from_mpoly(&r, 0)
            .map_err(|_| Error::VerificationFailed("meeting resultant kept a y-term".into()))?;
        if rx.is_zero() {
            return Err(Error::VerificationFailed(
                "the first form shares a component with the quartic".into(),
            ));
        }
        rx
    };
    let events_poly = disc_x.mul(&ev_q1);
    let sf_events = events_poly.squarefree_part();
    let mut events = sturm::isolate_real_roots(&events_poly);
    sturm::separate_strictly(&events_poly, &mut events);
    let m = events.len();

    // Slab samples: strictly between consecutive events and strictly outside
    // the extremes.
    let mut xs = Vec::with_capacity(m + 1);
    if m == 0 {
        xs.push(Rat::zero());
    } else {
        xs.push(&events[0].lo - &Rat::one());
        for i in 1..m {
            xs.push(sturm::gap_sample(&events[i - 1], &events[i]));
        }
        xs.push(events.last().unwrap().hi.clone() + Rat::one());
    }

    let slabs: Vec<Slab> = xs
        .iter()
        .map(|x| make_slab(&fc, x.clone()))
        .collect::<Result<_>>()?;

    if !slabs[0].roots.is_empty() || !slabs[m].roots.is_empty() {
        return Err(Error::VerificationFailed(
            "curve branches exist beyond all events; the chart certificate is broken".into(),
        ));
    }

    // Cauchy band over the full slab range, used to seed the separator
    // search at events.
    let xa = {
        let a = xs[0].abs();
        let b = xs[m].abs();
        if a > b {
            a
        } else {
            b
        }
    };
    let yb = y_band(&fc, &xa);

    // Tight certified box for the real branches, stored for the grid
    // cross-check.  Real branches live only in the slabs that carry them
    // (events without real branches — complex collisions — lie outside),
    // and the y-extent of a compact branch is reached at a horizontal
    // tangency, bounded by the real roots of Res_x(f, df/dx); the Cauchy
    // band over the active range is a second valid bound, so take the
    // smaller of the two.
    let active: Vec<usize> = slabs
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.roots.is_empty())
        .map(|(i, _)| i)
        .collect();
    let window = if active.is_empty() {
        Rat::from_int(2)
    } else {
        let one = Rat::one();
        let (i0, i1) = (active[0], *active.last().unwrap());
        // Isolation brackets can be as wide as the Cauchy bound of the
        // events polynomial; narrow the two outermost active ones so the
        // window reflects the roots, not the initial bracketing.
        let left_ev = sturm::refine_below(&sf_events, &events[i0 - 1], &one);
        let right_ev = sturm::refine_below(&sf_events, &events[i1], &one);
        let xa_act = {
            let a = left_ev.lo.abs();
            let b = right_ev.hi.abs();
            (if a > b { a } else { b }) + Rat::one()
        };
        let yb_act = y_band(&fc, &xa_act);
        let mut y_ext = {
            let dfx = fc.derivative(0);
            let r = resultant_wrt(&fc, &dfx, 0);
            match UniPoly::from_mpoly(&r, 1) {
                Ok(ry) if !ry.is_zero() => {
                    let sf_ry = ry.squarefree_part();
                    let mut worst = Rat::zero();
                    for iv in sturm::isolate_real_roots(&ry) {
                        let tight = sturm::refine_below(&sf_ry, &iv, &one);
                        for e in [tight.lo.abs(), tight.hi.abs()] {
                            if e > worst {
                                worst = e;
                            }
                        }
                    }
                    worst + Rat::one()
                }
                _ => yb_act.clone(),
            }
        };
        if yb_act < y_ext {
            y_ext = yb_act;
        }
        (if xa_act > y_ext { xa_act } else { y_ext }) + Rat::one()
    };

    // Working brackets per event, strictly inside the adjacent slab samples.
    let mut right_link: Vec<Vec<Option<Link>>> =
        slabs.iter().map(|s| vec![None; s.roots.len()]).collect();
    let mut left_link: Vec<Vec<Option<Link>>> =
        slabs.iter().map(|s| vec![None; s.roots.len()]).collect();
    let piece_count: usize = slabs.iter().map(|s| s.roots.len() + 1).sum();
    let piece_start: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::with_capacity(slabs.len());
        for s in &slabs {
            v.push(acc);
            acc += s.roots.len() + 1;
        }
        v
    };
    let mut cell_dsu = Dsu::new(piece_count);

    for i in 0..m {
        let mut evb = if events[i].is_point() {
            EventBracket {
                exact: Some(events[i].lo.clone()),
                lo: Rat::mid(&xs[i], &events[i].lo),
                hi: Rat::mid(&events[i].lo, &xs[i + 1]),
            }
        } else {
            EventBracket {
                exact: None,
                lo: events[i].lo.clone(),
                hi: events[i].hi.clone(),
            }
        };
        let km = match_event(
            &fc,
            &sf_events,
            &mut evb,
            slabs[i].roots.len(),
            slabs[i + 1].roots.len(),
            &yb,
        )?;

        let set = |table: &mut Vec<Vec<Option<Link>>>,
                       slab: usize,
                       j: usize,
                       link: Link|
         -> Result<()> {
            if table[slab][j].is_some() {
                return Err(Error::VerificationFailed(format!(
                    "branch {j} of slab {slab} was matched twice on the same side"
                )));
            }
            table[slab][j] = Some(link);
            Ok(())
        };
        for &(jl, jr) in &km.through {
            set(&mut right_link, i, jl, Link::Through(jr))?;
            set(&mut left_link, i + 1, jr, Link::Through(jl))?;
        }
        for &j in &km.left_turns {
            set(&mut right_link, i, j, Link::Turn(j + 1))?;
            set(&mut right_link, i, j + 1, Link::Turn(j))?;
        }
        for &j in &km.right_turns {
            set(&mut left_link, i + 1, j, Link::Turn(j + 1))?;
            set(&mut left_link, i + 1, j + 1, Link::Turn(j))?;
        }
        for &(cl, cr) in &km.cell_joins {
            cell_dsu.union(piece_start[i] + cl, piece_start[i + 1] + cr);
        }
    }

    // Every branch of every slab must now carry links on both ends.
    let unwrap_links = |table: Vec<Vec<Option<Link>>>, side: &str| -> Result<Vec<Vec<Link>>> {
        table
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, l)| {
                        l.ok_or_else(|| {
                            Error::VerificationFailed(format!(
                                "branch {j} of slab {i} has no {side} link"
                            ))
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let right_link = unwrap_links(right_link, "right")?;
    let left_link = unwrap_links(left_link, "left")?;

    Ok(RawSweep {
        fc,
        q1c,
        slabs,
        right_link,
        left_link,
        cell_dsu,
        window,
    })
}

// ---------------------------------------------------------------------------
// Assembly: ovals, cells, nesting, configuration
// ---------------------------------------------------------------------------

fn assemble(
    chart: RatMat,
    chart_attempts: u32,
    mut raw: RawSweep,
) -> Result<RealCurveTopology> {
    let slabs = &raw.slabs;
    let n_slabs = slabs.len();
    let seg_start: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::with_capacity(n_slabs);
        for s in slabs {
            v.push(acc);
            acc += s.roots.len();
        }
        v
    };
    let seg_count = seg_start.last().unwrap() + slabs.last().unwrap().roots.len();
    let piece_start: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::with_capacity(n_slabs);
        for s in slabs {
            v.push(acc);
            acc += s.roots.len() + 1;
        }
        v
    };
    // Ovals: union segments along their links.
    let mut seg_dsu = Dsu::new(seg_count.max(1));
    for i in 0..n_slabs {
        for j in 0..slabs[i].roots.len() {
            match raw.right_link[i][j] {
                Link::Through(jr) => seg_dsu.union(seg_start[i] + j, seg_start[i + 1] + jr),
                Link::Turn(p) => seg_dsu.union(seg_start[i] + j, seg_start[i] + p),
            }
            match raw.left_link[i][j] {
                Link::Through(jl) => seg_dsu.union(seg_start[i] + j, seg_start[i - 1] + jl),
                Link::Turn(p) => seg_dsu.union(seg_start[i] + j, seg_start[i] + p),
            }
        }
    }
    let mut oval_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut seg_oval: Vec<Vec<usize>> = Vec::with_capacity(n_slabs);
    for i in 0..n_slabs {
        let mut row = Vec::with_capacity(slabs[i].roots.len());
        for j in 0..slabs[i].roots.len() {
            let root = seg_dsu.find(seg_start[i] + j);
            let next = oval_of_root.len();
            let id = *oval_of_root.entry(root).or_insert(next);
            row.push(id);
        }
        seg_oval.push(row);
    }
    let oval_count = oval_of_root.len();

    // Cells: components of the vertical pieces under the certified joins.
    let mut cell_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut piece_cell: Vec<Vec<usize>> = Vec::with_capacity(n_slabs);
    for i in 0..n_slabs {
        let mut row = Vec::with_capacity(slabs[i].roots.len() + 1);
        for c in 0..=slabs[i].roots.len() {
            let root = raw.cell_dsu.find(piece_start[i] + c);
            let next = cell_of_root.len();
            let id = *cell_of_root.entry(root).or_insert(next);
            row.push(id);
        }
        piece_cell.push(row);
    }
    let cell_count = cell_of_root.len();
    let outside_cell = piece_cell[0][0];
    if outside_cell != 0 {
        return Err(Error::VerificationFailed(
            "deterministic cell ordering broke: outside cell is not first".into(),
        ));
    }
    for (i, s) in slabs.iter().enumerate() {
        if piece_cell[i][0] != outside_cell || piece_cell[i][s.roots.len()] != outside_cell {
            return Err(Error::VerificationFailed(format!(
                "slab {i} boundary piece is not connected to the outside cell"
            )));
        }
    }
    if cell_count != oval_count + 1 {
        return Err(Error::VerificationFailed(format!(
            "{cell_count} complement cells against {oval_count} ovals; a cell adjacency was missed"
        )));
    }

    // Enclosure by exact upward ray casting from every piece sample: the
    // crossings above piece (i, c) are exactly the branches c..k-1 of the
    // slab (the piece index counts the branches below), and every crossing
    // is transversal because the slab sample is not an event.
    let enclosing_of_piece = |i: usize, c: usize| -> Vec<usize> {
        let mut parity: BTreeMap<usize, bool> = BTreeMap::new();
        for j in c..slabs[i].roots.len() {
            let e = parity.entry(seg_oval[i][j]).or_insert(false);
            *e = !*e;
        }
        parity
            .into_iter()
            .filter(|(_, odd)| *odd)
            .map(|(o, _)| o)
            .collect()
    };
    let mut cell_enclosing: Vec<Option<Vec<usize>>> = vec![None; cell_count];
    let mut cell_repr: Vec<Option<(usize, usize)>> = vec![None; cell_count];
    for i in 0..n_slabs {
        for c in 0..=slabs[i].roots.len() {
            let id = piece_cell[i][c];
            let enc = enclosing_of_piece(i, c);
            match &cell_enclosing[id] {
                None => {
                    cell_enclosing[id] = Some(enc);
                    cell_repr[id] = Some((i, c));
                }
                Some(prev) => {
                    if *prev != enc {
                        return Err(Error::VerificationFailed(format!(
                            "cell {id} has inconsistent enclosure between its pieces; \
                             the sweep adjacency is wrong"
                        )));
                    }
                }
            }
        }
    }
    let cell_enclosing: Vec<Vec<usize>> =
        cell_enclosing.into_iter().map(|e| e.unwrap()).collect();
    if !cell_enclosing[outside_cell].is_empty() {
        return Err(Error::VerificationFailed(
            "the unbounded cell is enclosed by an oval".into(),
        ));
    }
    let depth0 = cell_enclosing.iter().filter(|e| e.is_empty()).count();
    if depth0 != 1 {
        return Err(Error::VerificationFailed(format!(
            "{depth0} cells have enclosure depth 0; exactly one outside cell is expected"
        )));
    }

    // Oval enclosure: strip the oval itself from the enclosure of its upper
    // neighbor cell; the lower neighbor must agree after the strip, and the
    // two neighbors must differ exactly by the oval itself.
    let mut oval_enclosing: Vec<Option<Vec<usize>>> = vec![None; oval_count];
    for i in 0..n_slabs {
        for j in 0..slabs[i].roots.len() {
            let o = seg_oval[i][j];
            let below = &cell_enclosing[piece_cell[i][j]];
            let above = &cell_enclosing[piece_cell[i][j + 1]];
            let strip = |v: &Vec<usize>| -> Vec<usize> {
                v.iter().copied().filter(|x| *x != o).collect()
            };
            let (sb, sa) = (strip(below), strip(above));
            if sb != sa {
                return Err(Error::VerificationFailed(format!(
                    "cells adjacent across oval {o} disagree about the other ovals around them"
                )));
            }
            let in_b = below.contains(&o);
            let in_a = above.contains(&o);
            if in_b == in_a {
                return Err(Error::VerificationFailed(format!(
                    "crossing oval {o} did not toggle enclosure by it"
                )));
            }
            match &oval_enclosing[o] {
                None => oval_enclosing[o] = Some(sb),
                Some(prev) => {
                    if *prev != sb {
                        return Err(Error::VerificationFailed(format!(
                            "oval {o} has inconsistent enclosure along its segments"
                        )));
                    }
                }
            }
        }
    }
    let oval_enclosing: Vec<Vec<usize>> =
        oval_enclosing.into_iter().map(|e| e.unwrap()).collect();
    let oval_depth: Vec<usize> = oval_enclosing.iter().map(|e| e.len()).collect();
    let mut nesting_parent: Vec<Option<usize>> = Vec::with_capacity(oval_count);
    for o in 0..oval_count {
        if oval_enclosing[o].is_empty() {
            nesting_parent.push(None);
            continue;
        }
        let parents: Vec<usize> = oval_enclosing[o]
            .iter()
            .copied()
            .filter(|p| oval_depth[*p] + 1 == oval_depth[o])
            .collect();
        if parents.len() != 1 {
            return Err(Error::VerificationFailed(format!(
                "oval {o} has {} immediate enclosing candidates",
                parents.len()
            )));
        }
        nesting_parent.push(Some(parents[0]));
    }

    let any_nested = nesting_parent.iter().any(|p| p.is_some());
    let configuration = match (oval_count, any_nested) {
        (0, _) => OvalConfiguration::Empty,
        (1, false) => OvalConfiguration::OneOval,
        (2, true) => OvalConfiguration::TwoNested,
        (2, false) => OvalConfiguration::TwoNonNested,
        (3, false) => OvalConfiguration::ThreeOvals,
        (4, false) => OvalConfiguration::FourOvals,
        _ => {
            return Err(Error::VerificationFailed(format!(
                "{oval_count} ovals with nesting={any_nested} falls outside the \
                 classification of smooth real quartics"
            )))
        }
    };

    // Cell table with exact samples in chart and original coordinates.
    let cells: Vec<PlaneCell> = (0..cell_count)
        .map(|id| {
            let (i, c) = cell_repr[id].unwrap();
            let x = slabs[i].x.clone();
            let y = slabs[i].cell_y[c].clone();
            let sample = chart_point(&chart, &x, &y);
            PlaneCell {
                sample_chart: [x, y],
                sample,
                enclosing: cell_enclosing[id].clone(),
                depth: cell_enclosing[id].len(),
                unbounded: id == outside_cell,
            }
        })
        .collect();

    let window = raw.window.clone();
    let sweep = Sweep {
        fc: std::mem::replace(&mut raw.fc, MPoly::zero(&VarSet::xy())),
        q1c: std::mem::replace(&mut raw.q1c, MPoly::zero(&VarSet::xy())),
        slabs: raw.slabs,
        right_link: raw.right_link,
        left_link: raw.left_link,
        seg_oval,
        piece_cell,
    };

    Ok(RealCurveTopology {
        oval_count,
        nesting_parent,
        oval_depth,
        configuration,
        cells,
        outside_cell,
        chart,
        chart_attempts,
        window,
        sweep,
    })
}

/// Original projective coordinates of the chart point `(x, y)`.
fn chart_point(chart: &RatMat, x: &Rat, y: &Rat) -> [Rat; 3] {
    let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
    for (i, o) in out.iter_mut().enumerate() {
        *o = &(&chart[(i, 0)] * x) + &(&chart[(i, 1)] * y) + chart[(i, 2)].clone();
    }
    out
}

/// Compute the certified topology of the real discriminant quartic.  Charts
/// are enumerated deterministically (one per primitive integer line, by
/// height) until one is found whose line at infinity provably misses the
/// real curve; all sweeping is then exact.  Fails with a structured error on
/// non-quartic or non-reduced input; retries exhausted only when no line up
/// to the height bound avoids the curve.
pub fn quartic_topology(spec: &CoverSpec) -> Result<RealCurveTopology> {
    let delta = spec.delta();
    if delta.is_zero() {
        return Err(Error::Inadmissible(
            "the discriminant quartic vanishes identically".into(),
        ));
    }
    let q1p = spec.forms().0.poly(&VarSet::uvw());
    let mut last: Option<Error> = None;
    let mut swept = 0usize;
    for (attempt, line) in chart_lines(CHART_HEIGHT_BOUND).into_iter().enumerate() {
        let s = line_chart(line);
        let fp = covers::substitute_linear(delta, &s);
        if !infinity_is_definite(&fp) {
            continue;
        }
        swept += 1;
        if swept > MAX_SWEPT_CHARTS {
            break;
        }
        let q1s = covers::substitute_linear(&q1p, &s);
        match sweep_chart(&fp, &q1s) {
            Ok(raw) => return assemble(s, attempt as u32 + 1, raw),
            Err(e @ Error::RetriesExhausted(_)) => {
                last = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| {
        Error::RetriesExhausted(format!(
            "no line of height <= {CHART_HEIGHT_BOUND} avoids the real curve; the curve may \
             meet every line"
        ))
    }))
}

// ---------------------------------------------------------------------------
// Cycle walking (shared by the region report and the polyline export)
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Heading {
    Right,
    Left,
}

/// Walk every oval once, returning its segments in cyclic order.
fn walk_cycles(sweep: &Sweep, oval_count: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    let mut cycles: Vec<Vec<(usize, usize)>> = vec![vec![]; oval_count];
    let mut seen: Vec<Vec<bool>> = sweep
        .slabs
        .iter()
        .map(|s| vec![false; s.roots.len()])
        .collect();
    for i0 in 0..sweep.slabs.len() {
        for j0 in 0..sweep.slabs[i0].roots.len() {
            if seen[i0][j0] {
                continue;
            }
            let oval = sweep.seg_oval[i0][j0];
            let mut cyc = vec![];
            let (mut i, mut j, mut heading) = (i0, j0, Heading::Right);
            loop {
                if seen[i][j] {
                    return Err(Error::VerificationFailed(format!(
                        "oval walk revisited branch {j} of slab {i}"
                    )));
                }
                seen[i][j] = true;
                cyc.push((i, j));
                let link = match heading {
                    Heading::Right => sweep.right_link[i][j],
                    Heading::Left => sweep.left_link[i][j],
                };
                match (link, heading) {
                    (Link::Through(jn), Heading::Right) => {
                        i += 1;
                        j = jn;
                    }
                    (Link::Through(jn), Heading::Left) => {
                        i -= 1;
                        j = jn;
                    }
                    (Link::Turn(p), h) => {
                        j = p;
                        heading = if h == Heading::Right {
                            Heading::Left
                        } else {
                            Heading::Right
                        };
                    }
                }
                if (i, j, heading) == (i0, j0, Heading::Right) {
                    break;
                }
            }
            if !cycles[oval].is_empty() {
                return Err(Error::VerificationFailed(format!(
                    "oval {oval} produced two disjoint walks"
                )));
            }
            cycles[oval] = cyc;
        }
    }
    Ok(cycles)
}

impl RealCurveTopology {
    /// The affine quartic in the sweep chart (variables `x, y`); its real
    /// zero set is what `cells`, ovals, and `window` describe.
    pub fn chart_quartic(&self) -> &MPoly {
        &self.sweep.fc
    }

    /// Exact polyline approximations of the ovals (chart coordinates):
    /// branch points in cyclic order, `y` taken at the bracket midpoint.
    /// Intended for rendering; all decisions in the crate use the exact
    /// brackets instead.
    pub fn oval_polylines(&self) -> Vec<Vec<[Rat; 2]>> {
        let cycles = walk_cycles(&self.sweep, self.oval_count)
            .expect("a verified topology always walks cleanly");
        cycles
            .into_iter()
            .map(|cyc| {
                cyc.into_iter()
                    .map(|(i, j)| {
                        [
                            self.sweep.slabs[i].x.clone(),
                            self.sweep.slabs[i].roots[j].mid(),
                        ]
                    })
                    .collect()
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Region report
// ---------------------------------------------------------------------------

/// Decide which complement cells lie in the image of the real double cover
/// and decompose the curve into covered/uncovered boundary arcs.
///
/// Membership rule, off the quartic: over a plane point `w` the fiber of
/// the threefold is the conic `z^2 = Q1(w) x^2 + 2 Q2(w) x y + Q3(w) y^2`;
/// it has real points iff the binary form on the right is not negative
/// definite, i.e. iff `Q1(w) >= 0` or `delta(w) = (Q2^2 - Q1 Q3)(w) > 0`.
/// On the curve itself (`delta = 0`) a branch point is covered iff
/// `Q1 > 0` there; the event set includes every abscissa where `Q1` meets
/// the quartic, so the sign is constant per branch segment and certified
/// by `sign_at_root`.
///
/// The report verifies, segment by segment, that covered arcs have both
/// adjacent cells inside the image and uncovered arcs have exactly one:
/// the uncovered arcs are precisely the topological boundary of the image
/// region.  A violation is a verification error, never a silent report.
pub fn region_report(spec: &CoverSpec, topo: &RealCurveTopology) -> Result<RegionReport> {
    let sweep = &topo.sweep;
    // Guard against mismatched (spec, topology) pairs.
    let q1p = spec.forms().0.poly(&VarSet::uvw());
    if q1p.is_zero() {
        return Err(Error::Inadmissible(
            "the first form vanishes identically; the double cover degenerates".into(),
        ));
    }
    let expect_q1c = covers::dehomogenize_w(&covers::substitute_linear(&q1p, &topo.chart));
    if expect_q1c != sweep.q1c {
        return Err(Error::InvalidInput(
            "the topology was computed for a different input triple".into(),
        ));
    }

    // Cell membership at the exact chart samples.
    let cell_in_image: Vec<bool> = topo
        .cells
        .iter()
        .map(|cell| {
            let p = [cell.sample_chart[0].clone(), cell.sample_chart[1].clone()];
            let d = sweep.fc.eval(&p);
            let q = sweep.q1c.eval(&p);
            assert_ne!(d.signum(), 0, "cell sample lies on the curve");
            q.signum() >= 0 || d.signum() > 0
        })
        .collect();

    // Covered/uncovered label per branch segment, with the boundary law
    // checked on every segment.
    let mut covered: Vec<Vec<bool>> = Vec::with_capacity(sweep.slabs.len());
    for (i, slab) in sweep.slabs.iter().enumerate() {
        let q1_slice = slice_x(&sweep.q1c, &slab.x);
        let mut row = Vec::with_capacity(slab.roots.len());
        for j in 0..slab.roots.len() {
            let sign = sturm::sign_at_root(&slab.fy, &slab.roots[j], &q1_slice);
            if sign == 0 {
                return Err(Error::VerificationFailed(format!(
                    "the first form vanishes at a branch point of slab {i} although its \
                     meeting locus was excluded from the slab"
                )));
            }
            let cov = sign > 0;
            let below = cell_in_image[sweep.piece_cell[i][j]];
            let above = cell_in_image[sweep.piece_cell[i][j + 1]];
            let ok = if cov {
                below && above
            } else {
                below != above
            };
            if !ok {
                return Err(Error::VerificationFailed(format!(
                    "image-boundary law violated at branch {j} of slab {i}: covered={cov}, \
                     below_in_image={below}, above_in_image={above}"
                )));
            }
            row.push(cov);
        }
        covered.push(row);
    }

    // Boundary arcs: maximal constant-label runs along each oval cycle.
    let cycles = walk_cycles(sweep, topo.oval_count)?;
    let mut boundary_arcs = vec![];
    for (oval, cyc) in cycles.iter().enumerate() {
        if cyc.is_empty() {
            continue;
        }
        let labels: Vec<bool> = cyc.iter().map(|&(i, j)| covered[i][j]).collect();
        if labels.iter().all(|&l| l == labels[0]) {
            let (i, j) = cyc[0];
            boundary_arcs.push(BoundaryArc {
                oval,
                covered: labels[0],
                segments: cyc.len(),
                sample_x: sweep.slabs[i].x.clone(),
                sample_y: sweep.slabs[i].roots[j].clone(),
            });
            continue;
        }
        // Rotate so the cycle starts at a label change, then split runs.
        let n = cyc.len();
        let start = (0..n)
            .find(|&k| labels[k] != labels[(k + n - 1) % n])
            .unwrap();
        let mut k = 0;
        while k < n {
            let lab = labels[(start + k) % n];
            let mut len = 1;
            while k + len < n && labels[(start + k + len) % n] == lab {
                len += 1;
            }
            let (i, j) = cyc[(start + k) % n];
            boundary_arcs.push(BoundaryArc {
                oval,
                covered: lab,
                segments: len,
                sample_x: sweep.slabs[i].x.clone(),
                sample_y: sweep.slabs[i].roots[j].clone(),
            });
            k += len;
        }
    }

    let image_cells = cell_in_image
        .iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| i)
        .collect();
    let outside_contained = cell_in_image[topo.outside_cell];
    Ok(RegionReport {
        cell_in_image,
        image_cells,
        boundary_arcs,
        outside_contained,
    })
}

/// The containment test of the unbounded region in the image, read off a
/// region report.
pub fn outside_contained(report: &RegionReport, topo: &RealCurveTopology) -> bool {
    report.cell_in_image[topo.outside_cell]
}

// ---------------------------------------------------------------------------
// Cross-checks: fiber signatures and an independent grid oracle
// ---------------------------------------------------------------------------

/// Inertia of the conic fiber form `[[Q1, Q2, 0], [Q2, Q3, 0], [0, 0, -1]]`
/// at a rational plane point.
pub fn fiber_form_inertia(spec: &CoverSpec, p: &[Rat]) -> Inertia {
    let (q1, q2, q3) = spec.forms();
    let (a, b, c) = (q1.eval(p), q2.eval(p), q3.eval(p));
    let gram = RatMat::from_rows(&[
        &[a.clone(), b.clone(), Rat::zero()],
        &[b, c, Rat::zero()],
        &[Rat::zero(), Rat::zero(), -Rat::one()],
    ]);
    TernaryForm::from_gram(gram)
        .expect("fiber Gram matrix is symmetric by construction")
        .inertia()
}

/// For every branch segment, the fiber-form inertias at the two adjacent
/// cell samples (below, above).  Crossing one arc of the quartic must
/// change the signature in exactly one slot; callers assert that law.
pub fn crossing_signature_pairs(
    spec: &CoverSpec,
    topo: &RealCurveTopology,
) -> Vec<[Inertia; 2]> {
    let sweep = &topo.sweep;
    let mut out = vec![];
    for slab in &sweep.slabs {
        for j in 0..slab.roots.len() {
            let below = chart_point(&topo.chart, &slab.x, &slab.cell_y[j]);
            let above = chart_point(&topo.chart, &slab.x, &slab.cell_y[j + 1]);
            out.push([
                fiber_form_inertia(spec, &below),
                fiber_form_inertia(spec, &above),
            ]);
        }
    }
    out
}

/// Independent low-tech cross-check: sign the affine quartic on an
/// `(n+1) x (n+1)` grid over `[-window, window]^2` and count 4-connected
/// components of equal nonzero sign.  For a window certified to contain
/// the curve and a grid fine enough to resolve its features, the count
/// equals the number of complement cells (= ovals + 1).
/// Sign of `row` at `x`: float Horner evaluation tracking a running magnitude
/// bound, falling back to exact arithmetic when the value is too close to
/// zero for the float answer to be trusted.  The `1e-9` relative margin
/// overshoots the worst-case rounding error of a degree-4 Horner scheme by
/// more than five orders of magnitude.
fn screened_sign(row_f: &[f64], row_mag: &[f64], row: &UniPoly, x: &Rat, xf: f64) -> i32 {
    let ax = xf.abs();
    let mut val = 0.0f64;
    let mut mag = 0.0f64;
    for k in (0..row_f.len()).rev() {
        val = val * xf + row_f[k];
        mag = mag * ax + row_mag[k];
    }
    if val.is_finite() && mag.is_finite() && val.abs() > mag * 1e-9 {
        if val > 0.0 {
            1
        } else {
            -1
        }
    } else {
        row.sign_at(x)
    }
}

pub fn sign_grid_components(f: &MPoly, window: &Rat, n: usize) -> usize {
    assert!(n >= 2);
    let step = window * &Rat::new(2, 1) / Rat::from_int(n as i64);
    let base = -window;
    let size = n + 1;
    let mut sign = vec![0i32; size * size];
    let mut xs = Vec::with_capacity(size);
    let mut x = base.clone();
    for _ in 0..size {
        xs.push(x.clone());
        x = &x + &step;
    }
    let xs_f: Vec<f64> = xs.iter().map(Rat::to_f64).collect();
    for (iy, yv) in xs.iter().enumerate() {
        let row = slice_y(f, yv);
        let row_f: Vec<f64> = row.coeffs().iter().map(Rat::to_f64).collect();
        let row_mag: Vec<f64> = row_f.iter().map(|c| c.abs()).collect();
        for (ix, xv) in xs.iter().enumerate() {
            sign[iy * size + ix] = screened_sign(&row_f, &row_mag, &row, xv, xs_f[ix]);
        }
    }
    let mut comp = vec![usize::MAX; size * size];
    let mut count = 0;
    let mut stack = vec![];
    for start in 0..size * size {
        if sign[start] == 0 || comp[start] != usize::MAX {
            continue;
        }
        let id = count;
        count += 1;
        comp[start] = id;
        stack.push(start);
        while let Some(v) = stack.pop() {
            let (iy, ix) = (v / size, v % size);
            let mut push = |w: usize| {
                if sign[w] == sign[v] && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            };
            if ix > 0 {
                push(v - 1);
            }
            if ix + 1 < size {
                push(v + 1);
            }
            if iy > 0 {
                push(v - size);
            }
            if iy + 1 < size {
                push(v + size);
            }
        }
    }
    count
}

/// Grid component count with the resolution doubled until two consecutive
/// levels agree (a stable reading of the oracle).
pub fn stable_grid_components(f: &MPoly, window: &Rat, start: usize, max_doublings: u32) -> usize {
    let mut n = start.max(8);
    let mut prev = sign_grid_components(f, window, n);
    for _ in 0..max_doublings {
        n *= 2;
        let next = sign_grid_components(f, window, n);
        if next == prev {
            return next;
        }
        prev = next;
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn rng() -> StdRng {
        StdRng::seed_from_u64(2024)
    }

    fn topo_of(spec: &CoverSpec) -> RealCurveTopology {
        quartic_topology(spec).expect("topology must certify")
    }

    #[test]
    fn single_oval_quartic() {
        let spec = instances::single_oval_instance();
        let t = topo_of(&spec);
        assert_eq!(t.configuration, OvalConfiguration::OneOval);
        assert_eq!(t.oval_count, 1);
        assert_eq!(t.cells.len(), 2);
        assert_eq!(t.nesting_parent, vec![None]);
        assert!(t.cells[t.outside_cell].unbounded);
        assert_eq!(t.cells[t.outside_cell].depth, 0);
        let inner: Vec<&PlaneCell> = t.cells.iter().filter(|c| !c.unbounded).collect();
        assert_eq!(inner.len(), 1);
        assert_eq!(inner[0].depth, 1);
        // Independent grid cross-check.
        assert_eq!(
            stable_grid_components(&t.sweep.fc, &t.window, 32, 6),
            t.cells.len()
        );
    }

    #[test]
    fn definite_quartic_is_empty() {
        let spec = instances::empty_curve_instance();
        let t = topo_of(&spec);
        assert_eq!(t.configuration, OvalConfiguration::Empty);
        assert_eq!(t.oval_count, 0);
        assert_eq!(t.cells.len(), 1);
        assert!(t.cells[0].unbounded);
    }

    #[test]
    fn nested_ovals_quartic() {
        let spec = instances::nested_ovals_instance();
        let t = topo_of(&spec);
        assert_eq!(t.configuration, OvalConfiguration::TwoNested);
        assert_eq!(t.oval_count, 2);
        assert_eq!(t.cells.len(), 3);
        // One oval has a parent, one does not.
        let with_parent = t.nesting_parent.iter().filter(|p| p.is_some()).count();
        assert_eq!(with_parent, 1);
        assert_eq!(t.oval_depth.iter().sum::<usize>(), 1);
        // Depths of cells: 0, 1, 2 in some order.
        let mut depths: Vec<usize> = t.cells.iter().map(|c| c.depth).collect();
        depths.sort_unstable();
        assert_eq!(depths, vec![0, 1, 2]);
        assert_eq!(
            stable_grid_components(&t.sweep.fc, &t.window, 64, 6),
            t.cells.len()
        );
    }

    #[test]
    fn four_ovals_quartic() {
        let spec = instances::four_ovals_instance();
        let t = topo_of(&spec);
        assert_eq!(t.configuration, OvalConfiguration::FourOvals);
        assert_eq!(t.oval_count, 4);
        assert_eq!(t.cells.len(), 5);
        assert!(t.nesting_parent.iter().all(|p| p.is_none()));
        assert_eq!(
            stable_grid_components(&t.sweep.fc, &t.window, 64, 6),
            t.cells.len()
        );
    }

    #[test]
    fn two_non_nested_ovals_quartic() {
        let spec = instances::non_nested_ovals_instance();
        let t = topo_of(&spec);
        assert_eq!(t.configuration, OvalConfiguration::TwoNonNested);
        assert_eq!(t.oval_count, 2);
        assert!(t.nesting_parent.iter().all(|p| p.is_none()));
        assert_eq!(
            stable_grid_components(&t.sweep.fc, &t.window, 64, 6),
            t.cells.len()
        );
    }

    /// The grid count must agree with `expect` at two consecutive
    /// resolutions (a stable reading of the independent oracle).
    fn grid_agrees(f: &MPoly, window: &Rat, expect: usize) -> bool {
        let mut n = 32;
        let mut prev = sign_grid_components(f, window, n);
        for _ in 0..6 {
            n *= 2;
            let next = sign_grid_components(f, window, n);
            if prev == expect && next == expect {
                return true;
            }
            prev = next;
        }
        false
    }

    #[test]
    fn random_instances_match_grid_oracle() {
        let mut r = StdRng::seed_from_u64(41);
        for _ in 0..10 {
            let spec = instances::random_smooth_spec(&mut r);
            let t = match quartic_topology(&spec) {
                Ok(t) => t,
                Err(Error::RetriesExhausted(_)) => continue,
                Err(e) => panic!("unexpected failure: {e}"),
            };
            assert_eq!(t.cells.len(), t.oval_count + 1);
            assert!(
                grid_agrees(t.chart_quartic(), &t.window, t.cells.len()),
                "grid oracle disagrees on a random instance"
            );
        }
    }

    #[test]
    fn crossing_an_arc_changes_exactly_one_signature_slot() {
        for spec in [
            instances::single_oval_instance(),
            instances::nested_ovals_instance(),
            instances::four_ovals_instance(),
        ] {
            let t = topo_of(&spec);
            let pairs = crossing_signature_pairs(&spec, &t);
            assert!(!pairs.is_empty());
            for [below, above] in pairs {
                assert_eq!(below.zero, 0);
                assert_eq!(above.zero, 0);
                let dp = below.plus.abs_diff(above.plus);
                let dm = below.minus.abs_diff(above.minus);
                assert_eq!(
                    (dp, dm),
                    (1, 1),
                    "fiber signature must change in exactly one slot"
                );
            }
        }
    }

    #[test]
    fn single_oval_region_is_uncovered_boundary() {
        // Q1 = v^2 - w^2 is negative on the inside of the oval
        // delta = u^4 + v^4 - w^4 < 0, so the image is exactly the outside.
        let spec = instances::single_oval_instance();
        let t = topo_of(&spec);
        let r = region_report(&spec, &t).unwrap();
        assert!(r.outside_contained);
        assert!(outside_contained(&r, &t));
        assert_eq!(r.image_cells, vec![t.outside_cell]);
        // The whole oval is uncovered: one arc spanning every segment.
        assert_eq!(r.boundary_arcs.len(), 1);
        assert!(!r.boundary_arcs[0].covered);
    }

    #[test]
    fn empty_quartic_region_is_everything() {
        for spec in [
            instances::empty_curve_instance(),
            instances::empty_curve_obstructed_instance(),
        ] {
            let t = topo_of(&spec);
            let r = region_report(&spec, &t).unwrap();
            assert!(r.outside_contained);
            assert_eq!(r.image_cells.len(), t.cells.len());
            assert!(r.boundary_arcs.is_empty());
        }
    }

    #[test]
    fn torsor_line_instance_outside_is_contained() {
        // Cross-module consistency: the constant Brauer class along the
        // fixture line of this instance is trivial, which predicts that the
        // unbounded region lies in the image of the double cover.
        let spec = instances::torsor_line_instance();
        let t = topo_of(&spec);
        let r = region_report(&spec, &t).unwrap();
        assert!(r.outside_contained);
    }

    #[test]
    fn region_rejects_mismatched_topology() {
        let t = topo_of(&instances::single_oval_instance());
        let other = instances::four_ovals_instance();
        assert!(matches!(
            region_report(&other, &t),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn polylines_cover_every_segment_once() {
        let t = topo_of(&instances::four_ovals_instance());
        let polys = t.oval_polylines();
        assert_eq!(polys.len(), 4);
        let total: usize = polys.iter().map(|p| p.len()).sum();
        let segs: usize = t.sweep.slabs.iter().map(|s| s.roots.len()).sum();
        assert_eq!(total, segs);
    }

    #[test]
    fn grid_oracle_counts_a_known_picture() {
        // (x^2 + y^2 - 1)(x^2 + y^2 - 4) as a bivariate sign pattern: two
        // nested circles, three regions.
        let xy = VarSet::xy();
        let g1 = MPoly::from_terms(
            &xy,
            [
                (vec![2, 0], Rat::one()),
                (vec![0, 2], Rat::one()),
                (vec![0, 0], -Rat::one()),
            ],
        );
        let g2 = MPoly::from_terms(
            &xy,
            [
                (vec![2, 0], Rat::one()),
                (vec![0, 2], Rat::one()),
                (vec![0, 0], -Rat::from_int(4)),
            ],
        );
        let f = g1.mul(&g2);
        assert_eq!(sign_grid_components(&f, &Rat::from_int(3), 96), 3);
    }
}
