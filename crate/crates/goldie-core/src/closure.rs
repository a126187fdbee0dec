//! Zariski closures of support regions: the unique bounded/receding split of
//! the constraint indices with exact witnesses, sign configurations, the
//! spanning assumption, closure membership and inclusion, and the component
//! fibers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arrangement::{ArrangementSpec, ConstraintSystem};
use crate::error::Error;
use crate::lattice::IntegerLattice;
use crate::linalg::kernel_basis;
use crate::polytope::DSet;
use crate::rat::{int, Rat};
use crate::simplex::{lp_solve, LinearProgram, LpVerdict};

/// The unique split of the constraint indices, with exact witnesses.
///
/// `bounded` are the indices whose inequalities cut the region down to a
/// bounded piece (they survive in the closure); `receding` are the rest of
/// the constraint indices (their inequalities vanish under closure).
///
/// Witnesses: `combination` is a nonnegative combination of the constraint
/// functionals that vanishes identically on the fiber direction space and is
/// strictly positive exactly on `bounded`; `direction` is a vector of that
/// space on which every receding functional is strictly positive and every
/// bounded one vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub bounded: Vec<usize>,
    pub receding: Vec<usize>,
    pub direction: Vec<Rat>,
    /// `(constraint index, coefficient)` for every constraint index, sorted.
    pub combination: Vec<(usize, Rat)>,
}

impl PartitionCertificate {
    pub fn combination_for(&self, index: usize) -> Option<&Rat> {
        self.combination
            .iter()
            .find(|(i, _)| *i == index)
            .map(|(_, z)| z)
    }
}

/// Decides, for every constraint index, whether a vanishing nonnegative
/// combination with positive weight there exists, by one exact LP
/// feasibility check per index. The per-index witnesses are summed into one
/// combination witness; the recession direction comes from one more LP.
pub fn partition_indices(
    spec: &ArrangementSpec,
    cs: &ConstraintSystem,
) -> Result<PartitionCertificate, Error> {
    let kernel = kernel_basis(spec.g_matrix());
    let m = cs.entries.len();
    // lambda values of each constraint functional on the kernel basis
    let lam: Vec<Vec<Rat>> = kernel
        .iter()
        .map(|b| cs.entries.iter().map(|e| e.lambda(b)).collect())
        .collect();

    let mut bounded = Vec::new();
    let mut receding = Vec::new();
    let mut combo = vec![Rat::zero(); m];
    for pos in 0..m {
        let mut lp = LinearProgram::feasibility(m);
        for row in &lam {
            lp.push_eq(row.clone(), Rat::zero())?;
        }
        for k in 0..m {
            let mut r = vec![Rat::zero(); m];
            r[k] = int(-1);
            lp.push_le(r, Rat::zero())?;
        }
        let mut r = vec![Rat::zero(); m];
        r[pos] = int(-1);
        lp.push_le(r, int(-1))?;
        match lp_solve(&lp)? {
            LpVerdict::Feasible { point } => {
                bounded.push(cs.entries[pos].index);
                for (acc, z) in combo.iter_mut().zip(point) {
                    *acc += z;
                }
            }
            LpVerdict::Infeasible => receding.push(cs.entries[pos].index),
            _ => return Err(Error::Internal("feasibility solve returned an optimum")),
        }
    }

    // recession direction in kernel coordinates: vanishes on bounded
    // functionals, >= 1 on receding ones (any positive value would do; 1
    // normalizes the LP output)
    let kdim = kernel.len();
    let mut lp = LinearProgram::feasibility(kdim);
    for (pos, e) in cs.entries.iter().enumerate() {
        let row: Vec<Rat> = kernel.iter().map(|b| e.lambda(b)).collect();
        if bounded.contains(&e.index) {
            lp.push_eq(row, Rat::zero())?;
        } else {
            let neg: Vec<Rat> = row.iter().map(|v| -v.clone()).collect();
            lp.push_le(neg, int(-1))?;
        }
        let _ = pos;
    }
    let coeffs = match lp_solve(&lp)? {
        LpVerdict::Feasible { point } => point,
        _ => return Err(Error::Internal("recession direction must exist")),
    };
    let mut direction = vec![Rat::zero(); spec.n()];
    for (c, b) in coeffs.iter().zip(&kernel) {
        for (d, v) in direction.iter_mut().zip(b) {
            *d += c * v;
        }
    }

    let combination: Vec<(usize, Rat)> = cs
        .entries
        .iter()
        .zip(combo)
        .map(|(e, z)| (e.index, z))
        .collect();
    let cert = PartitionCertificate {
        bounded,
        receding,
        direction,
        combination,
    };
    validate_certificate(spec, cs, &cert)?;
    Ok(cert)
}

/// Exact check of all certificate clauses; violations indicate a bug.
pub fn validate_certificate(
    spec: &ArrangementSpec,
    cs: &ConstraintSystem,
    cert: &PartitionCertificate,
) -> Result<(), Error> {
    let kernel = kernel_basis(spec.g_matrix());
    // the combination annihilates every kernel basis vector
    for b in &kernel {
        let mut acc = Rat::zero();
        for (idx, z) in &cert.combination {
            let e = cs.entry_for(*idx).ok_or(Error::Internal("stray index"))?;
            acc += z * e.lambda(b);
        }
        if !acc.is_zero() {
            return Err(Error::Internal("combination does not vanish on the kernel"));
        }
    }
    for (idx, z) in &cert.combination {
        let ok = if cert.bounded.contains(idx) {
            z.is_positive()
        } else {
            z.is_zero()
        };
        if !ok {
            return Err(Error::Internal("combination weights have wrong support"));
        }
    }
    // the direction lies in the kernel
    if !spec
        .g_matrix()
        .mul_vec(&cert.direction)?
        .iter()
        .all(Rat::is_zero)
    {
        return Err(Error::Internal("direction is not in the kernel"));
    }
    for e in &cs.entries {
        let v = e.lambda(&cert.direction);
        let ok = if cert.bounded.contains(&e.index) {
            v.is_zero()
        } else {
            v.is_positive()
        };
        if !ok {
            return Err(Error::Internal("direction has wrong functional signs"));
        }
    }
    Ok(())
}

/// The bounded indices split by the sign of the base coordinate, plus the
/// widened complement (every ambient index not in the bounded set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignConfiguration {
    /// Bounded indices with nonnegative base coordinate.
    pub nonneg: Vec<usize>,
    /// Bounded indices with negative base coordinate.
    pub negative: Vec<usize>,
    /// All remaining ambient indices.
    pub free: Vec<usize>,
}

impl SignConfiguration {
    /// The bounded index set, sorted.
    pub fn bounded(&self) -> Vec<usize> {
        let mut j: Vec<usize> = self.nonneg.iter().chain(&self.negative).copied().collect();
        j.sort_unstable();
        j
    }

    /// Functional sign of a bounded index: -1 on the nonnegative side.
    pub fn sigma(&self, index: usize) -> i64 {
        if self.nonneg.contains(&index) {
            -1
        } else {
            1
        }
    }
}

pub fn sign_configuration(
    spec: &ArrangementSpec,
    cert: &PartitionCertificate,
    alpha: &[Rat],
) -> SignConfiguration {
    let mut nonneg = Vec::new();
    let mut negative = Vec::new();
    for &j in &cert.bounded {
        if alpha[j].is_negative() {
            negative.push(j);
        } else {
            nonneg.push(j);
        }
    }
    let free = (0..spec.n())
        .filter(|i| !cert.bounded.contains(i))
        .collect();
    SignConfiguration {
        nonneg,
        negative,
        free,
    }
}

/// Diagnosis of the spanning assumption: the functional restrictions of the
/// bounded block and of the free block must span independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningReport {
    pub holds: bool,
    pub rank_bounded: usize,
    pub rank_free: usize,
    pub dim: usize,
    /// A free index whose column already lies in the span of the bounded
    /// block, when one exists.
    pub overlap_witness: Option<usize>,
}

impl SpanningReport {
    pub fn describe(&self) -> String {
        if self.holds {
            return String::from("bounded and free blocks span independently");
        }
        match self.overlap_witness {
            Some(i) => alloc::format!(
                "eta_{} lies in the span of the bounded-block columns (ranks {} + {} > {})",
                i + 1,
                self.rank_bounded,
                self.rank_free,
                self.dim
            ),
            None => alloc::format!(
                "bounded and free blocks overlap (ranks {} + {} > {})",
                self.rank_bounded,
                self.rank_free,
                self.dim
            ),
        }
    }
}

pub fn spanning_report(spec: &ArrangementSpec, sc: &SignConfiguration) -> SpanningReport {
    let g = spec.g_matrix();
    let bounded = sc.bounded();
    let sub_b = g.select_cols(&bounded);
    let sub_f = g.select_cols(&sc.free);
    let rank_bounded = sub_b.rank();
    let rank_free = sub_f.rank();
    let dim = spec.subtorus_dim();
    let holds = rank_bounded + rank_free == dim;
    let mut overlap_witness = None;
    if !holds {
        for &i in &sc.free {
            let col = spec.eta(i);
            if col.iter().all(Rat::is_zero) {
                continue;
            }
            let mut aug = bounded.clone();
            aug.push(i);
            if g.select_cols(&aug).rank() == rank_bounded {
                overlap_witness = Some(i);
                break;
            }
        }
    }
    SpanningReport {
        holds,
        rank_bounded,
        rank_free,
        dim,
        overlap_witness,
    }
}

/// True iff the bounded-block and free-block columns span independent pieces
/// of the character space.
pub fn spanning_assumption_holds(spec: &ArrangementSpec, sc: &SignConfiguration) -> bool {
    spanning_report(spec, sc).holds
}

/// Closure description of one region: the sign configuration, the coset
/// offset (bounded-block part of the character decomposition) and the
/// lattice generated by the free-block columns.
#[derive(Clone, Debug)]
pub struct RegionClosure {
    pub signs: SignConfiguration,
    /// Sum over bounded `j` of `alpha_j * eta_j`, a character-space vector.
    pub coset_offset: Vec<Rat>,
    /// The group generated by the free-block columns `eta_i`.
    pub coset_lattice: IntegerLattice,
}

pub fn region_closure_from_parts(
    spec: &ArrangementSpec,
    alpha: &[Rat],
    sc: &SignConfiguration,
) -> Result<RegionClosure, Error> {
    let d = spec.subtorus_dim();
    let mut coset_offset = vec![Rat::zero(); d];
    for &j in &sc.bounded() {
        for (acc, v) in coset_offset.iter_mut().zip(spec.eta(j)) {
            *acc += &alpha[j] * v;
        }
    }
    let free_cols: Vec<Vec<Rat>> = sc.free.iter().map(|&i| spec.eta(i)).collect();
    let coset_lattice = IntegerLattice::from_rational_gens(d, &free_cols)?;
    Ok(RegionClosure {
        signs: sc.clone(),
        coset_offset,
        coset_lattice,
    })
}

/// Runs constraint synthesis and the partition to build the closure data of
/// the region through `alpha`.
pub fn region_closure(spec: &ArrangementSpec, alpha: &[Rat]) -> Result<RegionClosure, Error> {
    let cs = crate::arrangement::constraint_system(spec, alpha)?;
    let cert = partition_indices(spec, &cs)?;
    let sc = sign_configuration(spec, &cert, alpha);
    region_closure_from_parts(spec, alpha, &sc)
}

/// Membership of `gamma` in the closed region: on the fiber, integral with
/// the right sign on every bounded index, and the coset condition on the
/// bounded-block character part. The coset test runs unconditionally; under
/// the spanning assumption it is vacuously true.
pub fn closure_membership(spec: &ArrangementSpec, rc: &RegionClosure, gamma: &[Rat]) -> bool {
    assert_eq!(gamma.len(), spec.n(), "point has wrong dimension");
    if !spec.fiber_membership(gamma) {
        return false;
    }
    for &j in &rc.signs.nonneg {
        if !gamma[j].is_integer() || gamma[j].is_negative() {
            return false;
        }
    }
    for &j in &rc.signs.negative {
        if !gamma[j].is_integer() || !gamma[j].is_negative() {
            return false;
        }
    }
    let d = spec.subtorus_dim();
    let mut part = vec![Rat::zero(); d];
    for &j in &rc.signs.bounded() {
        for (acc, v) in part.iter_mut().zip(spec.eta(j)) {
            *acc += &gamma[j] * v;
        }
    }
    let diff: Vec<Rat> = part
        .iter()
        .zip(&rc.coset_offset)
        .map(|(a, b)| a - b)
        .collect();
    rc.coset_lattice.contains(&diff).expect("dimension checked")
}

/// Whether the closure of the first region is contained in the closure of
/// the second. Requires both to come from the same arrangement and
/// character.
pub fn closure_inclusion(
    spec_a: &ArrangementSpec,
    rc_a: &RegionClosure,
    spec_b: &ArrangementSpec,
    rc_b: &RegionClosure,
) -> Result<bool, Error> {
    if spec_a != spec_b {
        return Err(Error::SpecMismatch);
    }
    let subset = |x: &[usize], y: &[usize]| x.iter().all(|i| y.contains(i));
    if !subset(&rc_b.signs.nonneg, &rc_a.signs.nonneg)
        || !subset(&rc_b.signs.negative, &rc_a.signs.negative)
    {
        return Ok(false);
    }
    let diff: Vec<Rat> = rc_b
        .coset_offset
        .iter()
        .zip(&rc_a.coset_offset)
        .map(|(b, a)| b - a)
        .collect();
    rc_b.coset_lattice.contains(&diff)
}

/// The component fibers of a closed region: the span of the bounded-index
/// functionals realized inside the torus (basis vectors `sigma_j * e_j`) and
/// one character per component representative (values of the representative
/// on that basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentFibers {
    pub h_basis: Vec<Vec<Rat>>,
    pub characters: Vec<Vec<Rat>>,
}

impl ComponentFibers {
    pub fn component_count(&self) -> usize {
        self.characters.len()
    }
}

pub fn component_fibers(n: usize, sc: &SignConfiguration, dset: &DSet) -> ComponentFibers {
    let bounded = sc.bounded();
    let h_basis: Vec<Vec<Rat>> = bounded
        .iter()
        .map(|&j| {
            let mut v = vec![Rat::zero(); n];
            v[j] = int(sc.sigma(j));
            v
        })
        .collect();
    let characters: Vec<Vec<Rat>> = dset
        .reps
        .iter()
        .map(|rep| bounded.iter().map(|&j| int(sc.sigma(j)) * &rep[j]).collect())
        .collect();
    ComponentFibers {
        h_basis,
        characters,
    }
}

/// Convenience: does `gamma` lie on the component fiber of `rep`? That is,
/// on the arrangement fiber with the bounded coordinates of `rep`.
pub fn component_contains(
    spec: &ArrangementSpec,
    sc: &SignConfiguration,
    rep: &[Rat],
    gamma: &[Rat],
) -> bool {
    spec.fiber_membership(gamma) && sc.bounded().iter().all(|&j| gamma[j] == rep[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::constraint_system;
    use crate::linalg::RatMatrix;
    use crate::rat::rat;

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn setup(g: &[&[i64]], alpha: Vec<Rat>, r: usize) -> (ArrangementSpec, Vec<Rat>) {
        let n = alpha.len();
        let spec = ArrangementSpec::from_alpha(n, r, mat(g), &alpha).unwrap();
        (spec, alpha)
    }

    #[test]
    fn partition_all_bounded() {
        let (spec, alpha) = setup(&[&[1, -1]], pt(&[2, -1]), 2);
        let cs = constraint_system(&spec, &alpha).unwrap();
        let cert = partition_indices(&spec, &cs).unwrap();
        assert_eq!(cert.bounded, vec![0, 1]);
        assert!(cert.receding.is_empty());
        assert!(cert.direction.iter().all(Rat::is_zero));
    }

    #[test]
    fn partition_all_receding() {
        let (spec, alpha) = setup(&[&[1, 1]], pt(&[2, -3]), 2);
        let cs = constraint_system(&spec, &alpha).unwrap();
        let cert = partition_indices(&spec, &cs).unwrap();
        assert!(cert.bounded.is_empty());
        assert_eq!(cert.receding, vec![0, 1]);
        assert_eq!(cert.direction, pt(&[-1, 1]));
    }

    #[test]
    fn partition_empty_constraints() {
        let (spec, alpha) = setup(&[&[1, 1]], vec![rat(1, 2), rat(1, 2)], 2);
        let cs = constraint_system(&spec, &alpha).unwrap();
        assert!(cs.entries.is_empty());
        let cert = partition_indices(&spec, &cs).unwrap();
        assert!(cert.bounded.is_empty());
        assert!(cert.receding.is_empty());
        assert!(cert.direction.iter().all(Rat::is_zero));
    }

    #[test]
    fn sign_configuration_examples() {
        let (spec, alpha) = setup(&[&[1, -1]], pt(&[2, -1]), 2);
        let cs = constraint_system(&spec, &alpha).unwrap();
        let cert = partition_indices(&spec, &cs).unwrap();
        let sc = sign_configuration(&spec, &cert, &alpha);
        assert_eq!(sc.nonneg, vec![0]);
        assert_eq!(sc.negative, vec![1]);
        assert!(sc.free.is_empty());

        let (spec2, alpha2) = setup(&[&[1, 1]], pt(&[2, -3]), 2);
        let cs2 = constraint_system(&spec2, &alpha2).unwrap();
        let cert2 = partition_indices(&spec2, &cs2).unwrap();
        let sc2 = sign_configuration(&spec2, &cert2, &alpha2);
        assert_eq!(sc2.free, vec![0, 1]);

        let alpha3 = vec![int(2), int(3), rat(7, 2)];
        let (spec3, alpha3) = setup(&[&[1, 1, 0]], alpha3, 3);
        let cs3 = constraint_system(&spec3, &alpha3).unwrap();
        let cert3 = partition_indices(&spec3, &cs3).unwrap();
        let sc3 = sign_configuration(&spec3, &cert3, &alpha3);
        assert_eq!(sc3.nonneg, vec![0, 1]);
        assert!(sc3.negative.is_empty());
        assert_eq!(sc3.free, vec![2]);
    }

    #[test]
    fn spanning_examples() {
        let alpha = vec![int(2), int(3), rat(7, 2)];
        let (spec, alpha) = setup(&[&[1, 1, 0]], alpha, 3);
        let cs = constraint_system(&spec, &alpha).unwrap();
        let cert = partition_indices(&spec, &cs).unwrap();
        let sc = sign_configuration(&spec, &cert, &alpha);
        assert!(spanning_assumption_holds(&spec, &sc));

        // overlapping blocks
        let alpha2 = vec![int(1), int(-2), rat(7, 2)];
        let (spec2, alpha2) = setup(&[&[1, 0, 1], &[0, 1, 1]], alpha2, 3);
        let cs2 = constraint_system(&spec2, &alpha2).unwrap();
        let cert2 = partition_indices(&spec2, &cs2).unwrap();
        assert_eq!(cert2.bounded, vec![0, 1]);
        let sc2 = sign_configuration(&spec2, &cert2, &alpha2);
        let report = spanning_report(&spec2, &sc2);
        assert!(!report.holds);
        assert_eq!(report.overlap_witness, Some(2));
        assert_eq!(report.rank_bounded, 2);
        assert_eq!(report.rank_free, 1);

        // empty bounded block always spans independently
        let (spec3, alpha3) = setup(&[&[1, 1]], pt(&[2, -3]), 2);
        let cs3 = constraint_system(&spec3, &alpha3).unwrap();
        let cert3 = partition_indices(&spec3, &cs3).unwrap();
        let sc3 = sign_configuration(&spec3, &cert3, &alpha3);
        assert!(spanning_assumption_holds(&spec3, &sc3));
    }

    #[test]
    fn closure_membership_examples() {
        let alpha = vec![int(2), int(3), rat(7, 2)];
        let n = alpha.len();
        let spec = ArrangementSpec::from_alpha(n, 2, mat(&[&[1, 1, 0]]), &alpha).unwrap();
        let rc = region_closure(&spec, &alpha).unwrap();
        assert!(closure_membership(
            &spec,
            &rc,
            &[int(1), int(4), rat(99, 7)]
        ));
        assert!(!closure_membership(&spec, &rc, &pt(&[-1, 6, 0])));
        assert!(closure_membership(&spec, &rc, &alpha));
    }

    #[test]
    fn closure_inclusion_examples() {
        let alpha = vec![int(2), int(3), rat(7, 2)];
        let spec = ArrangementSpec::from_alpha(3, 2, mat(&[&[1, 1, 0]]), &alpha).unwrap();
        let rc_a = region_closure(&spec, &alpha).unwrap();
        // reflexive
        assert!(closure_inclusion(&spec, &rc_a, &spec, &rc_a).unwrap());
        // the whole-fiber region absorbs everything
        let beta = vec![rat(5, 2), rat(5, 2), int(0)];
        assert!(spec.fiber_membership(&beta));
        let rc_b = region_closure(&spec, &beta).unwrap();
        assert!(rc_b.signs.bounded().is_empty());
        assert!(closure_inclusion(&spec, &rc_a, &spec, &rc_b).unwrap());
        assert!(!closure_inclusion(&spec, &rc_b, &spec, &rc_a).unwrap());
        // mismatched characters are refused
        let other = ArrangementSpec::new(3, 2, mat(&[&[1, 1, 0]]), vec![int(7)]).unwrap();
        let gamma = vec![int(3), int(4), int(0)];
        let rc_c = region_closure(&other, &gamma).unwrap();
        assert_eq!(
            closure_inclusion(&spec, &rc_a, &other, &rc_c),
            Err(Error::SpecMismatch)
        );
    }

    #[test]
    fn component_fibers_shapes() {
        use crate::polytope::DSet;
        // two bounded indices, free third coordinate: characters are the
        // sigma-scaled bounded coordinates of each representative
        let alpha = vec![int(2), int(3), rat(7, 2)];
        let spec = ArrangementSpec::from_alpha(3, 2, mat(&[&[1, 1, 0]]), &alpha).unwrap();
        let rc = region_closure(&spec, &alpha).unwrap();
        let reps: Vec<Vec<Rat>> = (0..=5)
            .map(|k| vec![int(k), int(5 - k), rat(7, 2)])
            .collect();
        let dset = DSet { reps };
        let fibers = component_fibers(spec.n(), &rc.signs, &dset);
        assert_eq!(fibers.component_count(), 6);
        assert_eq!(fibers.h_basis.len(), 2);
        assert_eq!(fibers.h_basis[0], vec![int(-1), int(0), int(0)]);
        assert_eq!(fibers.characters[1], vec![int(-1), int(-4)]);
    }
}
