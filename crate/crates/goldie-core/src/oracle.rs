//! Independent component counting by brute force.
//!
//! The oracle never touches the index-partition machinery. It enumerates the
//! raw support directly from its definition (integer kernel translates of
//! the base point with matching sign classes), detects unbounded lattice
//! directions empirically as directions whose maximal progressions keep
//! growing with the enumeration box and provably continue beyond it, and
//! quotients the support by the span of those directions. Differences of
//! support points inside one closure component lie in that span, so the
//! stabilized class count equals the component count.
//!
//! Candidate directions are primitive integer combinations of the kernel
//! basis with coefficients bounded by 3, augmented with primitive
//! differences of extreme support points (skewed kernel bases hide low-norm
//! spanning directions). Candidate coverage remains a completeness
//! heuristic, guarded by stabilization: a two-radius schedule accepts one
//! agreeing pair, longer schedules demand two consecutive settled pairs,
//! and anything less is reported inconclusive rather than as a number.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arrangement::ArrangementSpec;
use crate::error::Error;
use crate::lattice::integer_kernel;
use crate::rat::Rat;

/// Coefficient bound for candidate unbounded directions.
const DIRECTION_NORM: i64 = 3;
/// Largest usable box radius.
const MAX_RADIUS: u32 = 120;
/// Cap on the occupancy table of one box.
const BOX_CELL_CAP: u64 = 32_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleStep {
    pub radius: u32,
    pub support_points: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// The larger radius of the deciding pair.
    pub radius_used: u32,
    /// Rank of the detected unbounded-direction set.
    pub span_dim: usize,
    pub component_count: usize,
    /// True iff two consecutive radii produced the same class count; only
    /// stabilized results are comparable to the pipeline rank.
    pub stabilized: bool,
    pub history: Vec<OracleStep>,
}

/// Support points inside one coefficient box, stored as coefficient vectors
/// over the integer kernel basis plus a direct-indexed occupancy table.
struct SupportBox {
    radius: i64,
    dims: usize,
    /// Flat storage, `dims` entries per point, lexicographic order.
    flat: Vec<i64>,
    occupied: Vec<bool>,
    count: usize,
}

impl SupportBox {
    fn new(radius: i64, dims: usize) -> Result<Self, Error> {
        let side = (2 * radius + 1) as u64;
        let mut cells = 1u64;
        for _ in 0..dims {
            cells = cells.saturating_mul(side);
            if cells > BOX_CELL_CAP {
                return Err(Error::BadInput("radius schedule too large for the kernel rank"));
            }
        }
        Ok(SupportBox {
            radius,
            dims,
            flat: Vec::new(),
            occupied: vec![false; cells as usize],
            count: 0,
        })
    }

    fn len(&self) -> usize {
        self.count
    }

    fn cell(&self, c: &[i64]) -> Option<usize> {
        let side = (2 * self.radius + 1) as usize;
        let mut idx = 0usize;
        for &v in c {
            if v < -self.radius || v > self.radius {
                return None;
            }
            idx = idx * side + (v + self.radius) as usize;
        }
        Some(idx)
    }

    fn insert(&mut self, c: &[i64]) {
        let idx = self.cell(c).expect("coefficients inside the box");
        if !self.occupied[idx] {
            self.occupied[idx] = true;
            self.count += 1;
            self.flat.extend_from_slice(c);
        }
    }

    fn contains(&self, c: &[i64]) -> bool {
        match self.cell(c) {
            Some(idx) => self.occupied[idx],
            None => false,
        }
    }
}

struct SupportProblem {
    /// Kernel basis vectors, ambient coordinates.
    basis: Vec<Vec<i64>>,
    /// `(ambient index, integral base coordinate, is nonnegative)` for every
    /// non-inverted index with integral base coordinate.
    constrained: Vec<(usize, i64, bool)>,
    ambient: usize,
}

impl SupportProblem {
    fn build(spec: &ArrangementSpec, alpha: &[Rat]) -> Result<Self, Error> {
        if alpha.len() != spec.n() {
            return Err(Error::DimensionMismatch {
                context: "base point",
                expected: spec.n(),
                found: alpha.len(),
            });
        }
        if !spec.fiber_membership(alpha) {
            return Err(Error::NotOnFiber);
        }
        let kernel = integer_kernel(spec.g_matrix());
        let mut basis = Vec::with_capacity(kernel.len());
        for v in &kernel {
            let mut row = Vec::with_capacity(v.len());
            for x in v {
                row.push(x.to_i64().ok_or(Error::Internal("kernel entry overflows"))?);
            }
            basis.push(row);
        }
        let mut constrained = Vec::new();
        for (i, a) in alpha.iter().enumerate().take(spec.r()) {
            if a.is_integer() {
                let v = a
                    .to_integer()
                    .to_i64()
                    .ok_or(Error::Internal("base coordinate overflows"))?;
                constrained.push((i, v, !a.is_negative()));
            }
        }
        Ok(SupportProblem {
            basis,
            constrained,
            ambient: spec.n(),
        })
    }

    /// Enumerates all support points `alpha + sum c_k b_k` with coefficients
    /// in the box `[-radius, radius]^k`, in lexicographic coefficient order.
    fn enumerate(&self, radius: i64) -> Result<SupportBox, Error> {
        let dims = self.basis.len();
        let mut sbox = SupportBox::new(radius, dims)?;
        let mut coords = vec![0i64; self.ambient];
        let mut coefs = vec![0i64; dims];
        self.rec_enumerate(0, radius, &mut coords, &mut coefs, &mut sbox);
        Ok(sbox)
    }

    /// The raw support predicate on a coefficient vector, independent of any
    /// box: sign classes of the constrained coordinates must match the base
    /// point.
    fn in_raw_support(&self, coefs: &[i64]) -> bool {
        for &(i, base, nonneg) in &self.constrained {
            let mut v = base;
            for (c, b) in coefs.iter().zip(&self.basis) {
                v += c * b[i];
            }
            if (v >= 0) != nonneg {
                return false;
            }
        }
        true
    }

    fn rec_enumerate(
        &self,
        level: usize,
        radius: i64,
        coords: &mut [i64],
        coefs: &mut Vec<i64>,
        sbox: &mut SupportBox,
    ) {
        if level == self.basis.len() {
            for &(i, base, nonneg) in &self.constrained {
                if ((base + coords[i]) >= 0) != nonneg {
                    return;
                }
            }
            sbox.insert(coefs);
            return;
        }
        let step = &self.basis[level];
        for (i, &s) in step.iter().enumerate() {
            coords[i] -= radius * s;
        }
        let mut c = -radius;
        loop {
            coefs[level] = c;
            self.rec_enumerate(level + 1, radius, coords, coefs, sbox);
            if c == radius {
                break;
            }
            c += 1;
            for (i, &s) in step.iter().enumerate() {
                coords[i] += s;
            }
        }
        for (i, &s) in step.iter().enumerate() {
            coords[i] -= radius * s;
        }
    }
}

/// Primitive candidate coefficient vectors with sup-norm at most
/// [`DIRECTION_NORM`], one per +- pair, sorted by norm then
/// lexicographically so unit-like directions are probed first.
fn candidate_directions(dims: usize) -> Vec<Vec<i64>> {
    if dims == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; dims];
    fn rec(level: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if level == cur.len() {
            if cur.iter().all(|&v| v == 0) {
                return;
            }
            if cur.iter().find(|&&v| v != 0).copied().unwrap_or(0) < 0 {
                return; // keep one representative per +- pair
            }
            let g = cur.iter().fold(0i64, |acc, &v| acc.gcd(&v));
            if g == 1 {
                out.push(cur.clone());
            }
            return;
        }
        for v in -DIRECTION_NORM..=DIRECTION_NORM {
            cur[level] = v;
            rec(level + 1, cur, out);
        }
        cur[level] = 0;
    }
    rec(0, &mut cur, &mut out);
    out.sort_by_key(|w| {
        (
            w.iter().map(|v| v.abs()).max().unwrap_or(0),
            w.iter().map(|v| v.abs()).sum::<i64>(),
            w.clone(),
        )
    });
    out
}

/// Longest progression `p, p+w, p+2w, ...` inside the box, together with a
/// flag telling whether some progression of that maximal length is open: its
/// extension cell beyond the box still satisfies the raw support predicate,
/// so the progression provably continues outside. Progressions whose
/// extensions fail the support predicate were stopped by the support itself.
/// Shorter box-clipped fragments are ignored; only the longest runs carry
/// evidence about the direction.
fn max_run(problem: &SupportProblem, sbox: &SupportBox, w: &[i64]) -> (usize, bool) {
    if sbox.dims == 0 {
        return (0, false);
    }
    let mut best = 0usize;
    let mut open_at_best = false;
    let mut prev = vec![0i64; sbox.dims];
    let mut cur = vec![0i64; sbox.dims];
    for chunk in sbox.flat.chunks_exact(sbox.dims) {
        for i in 0..sbox.dims {
            prev[i] = chunk[i] - w[i];
        }
        if sbox.contains(&prev) {
            continue; // not the start of its progression
        }
        cur.copy_from_slice(chunk);
        let mut len = 0usize;
        while sbox.contains(&cur) {
            len += 1;
            for (c, d) in cur.iter_mut().zip(w) {
                *c += d;
            }
        }
        let open = problem.in_raw_support(&prev) || problem.in_raw_support(&cur);
        if len > best {
            best = len;
            open_at_best = open;
        } else if len == best {
            open_at_best |= open;
        }
    }
    (best, open_at_best)
}

/// Extra direction candidates read off the support itself: primitive
/// differences of per-coordinate extreme support points. Skewed kernel bases
/// hide low-norm spanning directions of the recession cone; the extreme
/// points of the enumerated support expose them. The run-growth test still
/// decides, so spurious extras are harmless.
fn extreme_point_candidates(sbox: &SupportBox) -> Vec<Vec<i64>> {
    let dims = sbox.dims;
    if dims == 0 || sbox.len() == 0 {
        return Vec::new();
    }
    let mut anchors: Vec<Vec<i64>> = Vec::new();
    for j in 0..dims {
        let mut lo: Option<&[i64]> = None;
        let mut hi: Option<&[i64]> = None;
        for chunk in sbox.flat.chunks_exact(dims) {
            if lo.map_or(true, |c| (chunk[j], chunk) < (c[j], c)) {
                lo = Some(chunk);
            }
            if hi.map_or(true, |c| (chunk[j], chunk) > (c[j], c)) {
                hi = Some(chunk);
            }
        }
        anchors.push(lo.expect("nonempty").to_vec());
        anchors.push(hi.expect("nonempty").to_vec());
    }
    anchors.sort();
    anchors.dedup();
    let mut out = BTreeSet::new();
    for p in &anchors {
        for q in &anchors {
            let mut diff: Vec<i64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
            if diff.iter().all(|&v| v == 0) {
                continue;
            }
            if diff.iter().find(|&&v| v != 0).copied().unwrap_or(0) < 0 {
                for v in diff.iter_mut() {
                    *v = -*v;
                }
            }
            let g = diff.iter().fold(0i64, |acc, &v| acc.gcd(&v));
            for v in diff.iter_mut() {
                *v /= g;
            }
            out.insert(diff);
        }
    }
    out.into_iter().collect()
}

/// Incremental rational row-echelon span for the detected directions.
struct Span {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Span {
    fn new() -> Self {
        Span {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, w: &[i64]) -> Vec<Rat> {
        let mut v: Vec<Rat> = w.iter().map(|&x| crate::rat::int(x)).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.clone() - &f * r;
                }
            }
        }
        v
    }

    fn contains(&self, w: &[i64]) -> bool {
        self.reduce(w).iter().all(Rat::is_zero)
    }

    fn insert(&mut self, w: &[i64]) {
        let mut v = self.reduce(w);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inv = v[p].clone();
        for x in v.iter_mut() {
            *x = x.clone() / &inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Number of classes of support points under differences in the span.
fn class_count(sbox: &SupportBox, span: &Span) -> usize {
    if sbox.dims == 0 || sbox.len() == 0 {
        return sbox.len();
    }
    if span.rank() == 0 {
        return sbox.len();
    }
    if span.rank() == sbox.dims {
        return 1;
    }
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for chunk in sbox.flat.chunks_exact(sbox.dims) {
        seen.insert(span.reduce(chunk));
    }
    seen.len()
}

/// Counts the connected components of the closed region by brute force over
/// a schedule of box radii (strictly increasing, at least two).
///
/// Consecutive radii form pairs; a pair settles when both radii produce the
/// same class count. A two-entry schedule returns its single pair's verdict.
/// Longer schedules demand more: two consecutive settled pairs must agree,
/// which defends against slow class growth along directions whose step size
/// exceeds one pair's window. If nothing settles the result is flagged
/// unstabilized rather than trusted.
pub fn oracle_component_count(
    spec: &ArrangementSpec,
    alpha: &[Rat],
    schedule: &[u32],
) -> Result<OracleResult, Error> {
    if schedule.len() < 2 {
        return Err(Error::BadInput("radius schedule needs at least two entries"));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadInput("radius schedule must be strictly increasing"));
    }
    if *schedule.last().unwrap() > MAX_RADIUS {
        return Err(Error::BadInput("radius exceeds the supported maximum"));
    }
    let problem = SupportProblem::build(spec, alpha)?;
    let dims = problem.basis.len();
    let candidates = candidate_directions(dims);

    let mut boxes: Vec<Option<SupportBox>> = (0..schedule.len()).map(|_| None).collect();
    let mut history = Vec::new();
    let mut last = None;
    let mut prev_settled: Option<usize> = None;
    for pair in 0..schedule.len() - 1 {
        for idx in [pair, pair + 1] {
            if boxes[idx].is_none() {
                boxes[idx] = Some(problem.enumerate(schedule[idx] as i64)?);
            }
        }
        let small = boxes[pair].as_ref().expect("enumerated");
        let large = boxes[pair + 1].as_ref().expect("enumerated");
        let (r1, r2) = (schedule[pair] as i64, schedule[pair + 1] as i64);
        let growth_needed = 1.max((r2 - r1) / 4) as usize;
        let mut pool: Vec<Vec<i64>> = candidates.clone();
        for extra in extreme_point_candidates(large) {
            if !pool.contains(&extra) {
                pool.push(extra);
            }
        }
        let mut span = Span::new();
        for w in &pool {
            if span.rank() == dims {
                break;
            }
            if span.contains(w) {
                continue; // already inside the detected span
            }
            let (l2, open2) = max_run(&problem, large, w);
            if !open2 {
                continue; // support-limited in the large box: bounded
            }
            let (l1, _) = max_run(&problem, small, w);
            if l2 >= l1 + growth_needed {
                span.insert(w);
            }
        }
        let c1 = class_count(small, &span);
        let c2 = class_count(large, &span);
        history.push(OracleStep {
            radius: schedule[pair],
            support_points: small.len(),
            classes: c1,
        });
        history.push(OracleStep {
            radius: schedule[pair + 1],
            support_points: large.len(),
            classes: c2,
        });
        let settled = c1 == c2;
        let confirmed = settled && (schedule.len() == 2 || prev_settled == Some(c2));
        if confirmed {
            return Ok(OracleResult {
                radius_used: schedule[pair + 1],
                span_dim: span.rank(),
                component_count: c2,
                stabilized: true,
                history,
            });
        }
        prev_settled = settled.then_some(c2);
        last = Some((schedule[pair + 1], span.rank(), c2));
    }
    let (radius_used, span_dim, component_count) =
        last.expect("at least one pair was processed");
    Ok(OracleResult {
        radius_used,
        span_dim,
        component_count,
        stabilized: false,
        history,
    })
}
