//! The projected rational polytope of a region closure: H-description in the
//! bounded coordinates, certified bounding boxes, exact lattice point
//! enumeration and vertex enumeration, and the lifted component
//! representatives.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::arrangement::{ArrangementSpec, ConstraintSystem};
use crate::closure::{spanning_report, PartitionCertificate, SignConfiguration};
use crate::error::Error;
use crate::linalg::{dot, reduced_row_echelon, RatMatrix};
use crate::rat::{ceil_big, floor_big, int, BigInt, Rat};
use crate::simplex::{lp_solve, LinearProgram, LpVerdict};

/// A rational H-representation: equality rows and `<=` inequality rows over
/// a fixed coordinate count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub eq: Vec<(Vec<Rat>, Rat)>,
    pub le: Vec<(Vec<Rat>, Rat)>,
}

impl HRep {
    pub fn contains(&self, p: &[Rat]) -> bool {
        assert_eq!(p.len(), self.dim);
        self.eq.iter().all(|(row, rhs)| dot(row, p) == *rhs)
            && self.le.iter().all(|(row, rhs)| dot(row, p) <= *rhs)
    }

    /// The set `{q * p : p in self}` for `q > 0`: right-hand sides scale.
    pub fn dilate(&self, q: &Rat) -> HRep {
        assert!(q.is_positive(), "dilation factor must be positive");
        HRep {
            dim: self.dim,
            eq: self.eq.iter().map(|(r, b)| (r.clone(), b * q)).collect(),
            le: self.le.iter().map(|(r, b)| (r.clone(), b * q)).collect(),
        }
    }

    /// The translate `{p + t : p in self}`.
    pub fn translate(&self, t: &[Rat]) -> HRep {
        assert_eq!(t.len(), self.dim);
        let shift = |(row, rhs): &(Vec<Rat>, Rat)| {
            let bump = dot(row, t);
            (row.clone(), rhs + bump)
        };
        HRep {
            dim: self.dim,
            eq: self.eq.iter().map(shift).collect(),
            le: self.le.iter().map(shift).collect(),
        }
    }

    fn extreme(&self, coord: usize, maximize: bool) -> Result<LpVerdict, Error> {
        let mut c = vec![Rat::zero(); self.dim];
        c[coord] = int(1);
        let mut lp = if maximize {
            LinearProgram::maximize(self.dim, c)
        } else {
            LinearProgram::minimize(self.dim, c)
        };
        for (row, rhs) in &self.eq {
            lp.push_eq(row.clone(), rhs.clone())?;
        }
        for (row, rhs) in &self.le {
            lp.push_le(row.clone(), rhs.clone())?;
        }
        lp_solve(&lp)
    }

    /// Exact `[min, max]` of one coordinate, `Ok(None)` when the set is
    /// empty, `Err(Unbounded)` when the coordinate is unbounded.
    pub fn coordinate_range(&self, coord: usize) -> Result<Option<(Rat, Rat)>, Error> {
        let lo = match self.extreme(coord, false)? {
            LpVerdict::Infeasible => return Ok(None),
            LpVerdict::Unbounded => return Err(Error::Unbounded { coordinate: coord }),
            LpVerdict::Optimal { value, .. } => value,
            LpVerdict::Feasible { .. } => return Err(Error::Internal("optimum expected")),
        };
        let hi = match self.extreme(coord, true)? {
            LpVerdict::Infeasible => return Ok(None),
            LpVerdict::Unbounded => return Err(Error::Unbounded { coordinate: coord }),
            LpVerdict::Optimal { value, .. } => value,
            LpVerdict::Feasible { .. } => return Err(Error::Internal("optimum expected")),
        };
        Ok(Some((lo, hi)))
    }

    /// Tight per-coordinate bounding box, `Ok(None)` for an empty set.
    pub fn bounding_box(&self) -> Result<Option<Vec<(Rat, Rat)>>, Error> {
        let mut out = Vec::with_capacity(self.dim);
        for c in 0..self.dim {
            match self.coordinate_range(c)? {
                None => return Ok(None),
                Some(pair) => out.push(pair),
            }
        }
        Ok(Some(out))
    }
}

/// Hard cap on enumeration work; boxes beyond this indicate misuse.
const ENUMERATION_CAP: u64 = 10_000_000;

/// All integer points of the H-representation, in lexicographic order.
///
/// The equality system is solved in echelon form first, so the iteration
/// runs over the box of the free coordinates only; pivot coordinates are
/// recomputed exactly per point and checked for integrality, and every
/// inequality is verified exactly.
pub fn enumerate_hrep(h: &HRep) -> Result<Vec<Vec<BigInt>>, Error> {
    let eq_mat = RatMatrix::from_rows(h.eq.iter().map(|(r, _)| r.clone()).collect())?;
    let eq_rhs: Vec<Rat> = h.eq.iter().map(|(_, b)| b.clone()).collect();
    let ech = reduced_row_echelon(&eq_mat, Some(&eq_rhs));
    if !ech.consistent {
        return Ok(Vec::new());
    }
    let mut is_pivot = vec![false; h.dim];
    for &c in &ech.pivot_cols {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..h.dim).filter(|&c| !is_pivot[c]).collect();

    // integer ranges of the free coordinates
    let mut ranges: Vec<(BigInt, BigInt)> = Vec::with_capacity(free.len());
    let mut size = BigInt::one();
    for &f in &free {
        match h.coordinate_range(f)? {
            None => return Ok(Vec::new()),
            Some((lo, hi)) => {
                let lo_i = ceil_big(&lo);
                let hi_i = floor_big(&hi);
                if lo_i > hi_i {
                    return Ok(Vec::new());
                }
                size *= &hi_i - &lo_i + 1;
                ranges.push((lo_i, hi_i));
            }
        }
    }
    if size > BigInt::from(ENUMERATION_CAP) {
        return Err(Error::Internal("enumeration box too large"));
    }

    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut assignment: Vec<BigInt> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
    'outer: loop {
        // candidate point from the free assignment
        let mut point = vec![Rat::zero(); h.dim];
        for (k, &f) in free.iter().enumerate() {
            point[f] = Rat::from_integer(assignment[k].clone());
        }
        let mut integral = true;
        for (t, &p) in ech.pivot_cols.iter().enumerate() {
            let mut v = ech.rhs[t].clone();
            for &f in &free {
                let coef = ech.mat.at(t, f);
                if !coef.is_zero() {
                    v -= coef * &point[f];
                }
            }
            if !v.is_integer() {
                integral = false;
                break;
            }
            point[p] = v;
        }
        if integral && h.le.iter().all(|(row, rhs)| dot(row, &point) <= *rhs) {
            out.push(point.iter().map(|v| v.to_integer()).collect());
        }
        // advance the free assignment, last coordinate fastest
        let mut k = free.len();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            if assignment[k] < ranges[k].1 {
                assignment[k] += 1i32;
                for j in k + 1..free.len() {
                    assignment[j] = ranges[j].0.clone();
                }
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All basic feasible points: for every subset of inequalities taken as
/// equalities, solve together with the equality system; points with a unique
/// solution that satisfy the remaining constraints are vertices.
pub fn vertices_of_hrep(h: &HRep) -> Result<Vec<Vec<Rat>>, Error> {
    let m = h.le.len();
    assert!(m < 63, "inequality count out of range for subset enumeration");
    let mut found: Vec<Vec<Rat>> = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let mut rows: Vec<Vec<Rat>> = h.eq.iter().map(|(r, _)| r.clone()).collect();
        let mut rhs: Vec<Rat> = h.eq.iter().map(|(_, b)| b.clone()).collect();
        for (i, (row, b)) in h.le.iter().enumerate() {
            if mask & (1 << i) != 0 {
                rows.push(row.clone());
                rhs.push(b.clone());
            }
        }
        let mat = RatMatrix::from_rows(rows)?;
        if mat.rank() < h.dim {
            continue; // active set does not pin a unique point
        }
        let Some(point) = crate::linalg::solve_linear(&mat, &rhs)? else {
            continue;
        };
        if h.contains(&point) && !found.contains(&point) {
            found.push(point);
        }
    }
    found.sort();
    Ok(found)
}

/// The projected polytope of a region closure: H-description over the
/// bounded coordinate set, with cached bounding box and vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    /// Ambient indices of the coordinates, sorted (the bounded set).
    pub coords: Vec<usize>,
    pub hrep: HRep,
    /// Tight per-coordinate box from 2 * dim exact LP solves.
    pub bounds: Vec<(Rat, Rat)>,
    pub vertices: Vec<Vec<Rat>>,
}

impl RationalPolytope {
    /// Applies `p -> (p - shift) * factor` to the whole polytope
    /// (`factor > 0`), transforming H-description, box and vertices exactly.
    pub fn translate_scale(&self, shift: &[Rat], factor: &Rat) -> RationalPolytope {
        let neg: Vec<Rat> = shift.iter().map(|v| -v.clone()).collect();
        let hrep = self.hrep.translate(&neg).dilate(factor);
        let bounds = self
            .bounds
            .iter()
            .zip(shift)
            .map(|((lo, hi), s)| ((lo - s) * factor, (hi - s) * factor))
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .zip(shift)
                    .map(|(x, s)| (x - s) * factor)
                    .collect()
            })
            .collect();
        RationalPolytope {
            coords: self.coords.clone(),
            hrep,
            bounds,
            vertices,
        }
    }

    /// Dimension of the affine hull, from the vertex list.
    pub fn affine_dim(&self) -> usize {
        if self.vertices.len() <= 1 {
            return 0;
        }
        let base = &self.vertices[0];
        let rows: Vec<Vec<Rat>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        RatMatrix::from_rows(rows).expect("uniform vertex dimension").rank()
    }
}

/// Builds the projected polytope of the region through `alpha` for the given
/// sign configuration. Refuses when the spanning assumption fails (naming
/// the rank defect); an unbounded coordinate means the inputs contradict the
/// provenance of the bounded set and is reported as such.
pub fn build_polytope(
    spec: &ArrangementSpec,
    alpha: &[Rat],
    sc: &SignConfiguration,
) -> Result<RationalPolytope, Error> {
    let report = spanning_report(spec, sc);
    if !report.holds {
        return Err(Error::AssumptionViolated {
            detail: report.describe(),
        });
    }
    let coords = sc.bounded();
    let dim = coords.len();
    let d = spec.subtorus_dim();
    let mut eq = Vec::with_capacity(d);
    for row in 0..d {
        let coeffs: Vec<Rat> = coords.iter().map(|&j| spec.g_matrix().at(row, j).clone()).collect();
        let rhs = coords
            .iter()
            .fold(Rat::zero(), |acc, &j| acc + &alpha[j] * spec.g_matrix().at(row, j));
        eq.push((coeffs, rhs));
    }
    let mut le = Vec::with_capacity(dim);
    for (k, &j) in coords.iter().enumerate() {
        let mut row = vec![Rat::zero(); dim];
        if sc.nonneg.contains(&j) {
            row[k] = int(-1);
            le.push((row, Rat::zero()));
        } else {
            row[k] = int(1);
            le.push((row, int(-1)));
        }
    }
    let hrep = HRep { dim, eq, le };
    let bounds = hrep
        .bounding_box()?
        .ok_or(Error::Internal("projected polytope is empty"))?;
    let vertices = vertices_of_hrep(&hrep)?;
    Ok(RationalPolytope {
        coords,
        hrep,
        bounds,
        vertices,
    })
}

/// The a-priori box from the certificate combination: on the translated
/// polytope each bounded functional is sandwiched between its bound and the
/// weighted sum of the other bounds, which pins every coordinate. The tight
/// LP box always sits inside this one.
pub fn witness_box(
    cs: &ConstraintSystem,
    cert: &PartitionCertificate,
    alpha: &[Rat],
    sc: &SignConfiguration,
) -> Vec<(Rat, Rat)> {
    let coords = sc.bounded();
    let mut out = Vec::with_capacity(coords.len());
    for &j in &coords {
        let zj = cert
            .combination_for(j)
            .expect("bounded index carries a combination weight")
            .clone();
        let mut cross = Rat::zero();
        for &k in &coords {
            if k == j {
                continue;
            }
            let zk = cert.combination_for(k).expect("bounded index").clone();
            let qk = cs.entry_for(k).expect("bounded index").bound.clone();
            cross += zk * qk;
        }
        let spread = cross / zj;
        if sc.nonneg.contains(&j) {
            out.push((Rat::zero(), &alpha[j] + spread));
        } else {
            out.push((&alpha[j] - spread, int(-1)));
        }
    }
    out
}

/// The per-coordinate LP box cached on the polytope.
pub fn bounding_box(p: &RationalPolytope) -> &[(Rat, Rat)] {
    &p.bounds
}

/// All integer points of the polytope, lexicographically ordered.
pub fn enumerate_lattice_points(p: &RationalPolytope) -> Result<Vec<Vec<BigInt>>, Error> {
    enumerate_hrep(&p.hrep)
}

/// The cached vertex list.
pub fn vertex_enumeration(p: &RationalPolytope) -> &[Vec<Rat>] {
    &p.vertices
}

/// Component representatives in full ambient coordinates: each integer point
/// of the projected polytope lifted by keeping the free coordinates of the
/// base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSet {
    pub reps: Vec<Vec<Rat>>,
}

pub fn dset_representatives(
    spec: &ArrangementSpec,
    alpha: &[Rat],
    sc: &SignConfiguration,
    p: &RationalPolytope,
) -> Result<DSet, Error> {
    let points = enumerate_lattice_points(p)?;
    let mut reps = Vec::with_capacity(points.len());
    for v in points {
        let mut rep: Vec<Rat> = alpha.to_vec();
        for (k, &j) in p.coords.iter().enumerate() {
            rep[j] = Rat::from_integer(v[k].clone());
        }
        if !spec.fiber_membership(&rep) {
            return Err(Error::Internal(
                "lifted representative left the fiber; spanning data inconsistent",
            ));
        }
        reps.push(rep);
    }
    let _ = sc;
    Ok(DSet { reps })
}
