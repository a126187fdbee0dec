//! Cross-module invariants on the named instances and a randomized pool:
//! certificate validity, scaling stability, support/closure containments,
//! inclusion order laws, box containments, vertex characterization, the
//! dilation set identity and the agreement between the quasi-polynomial and
//! direct counting.

use goldie_core::analysis::{analyze, dilated_rank, goldie_family, goldie_rank};
use goldie_core::arrangement::{constraint_system, support_membership};
use goldie_core::closure::{
    spanning_assumption_holds, closure_inclusion, closure_membership, component_contains,
    partition_indices, region_closure, sign_configuration, validate_certificate,
};
use goldie_core::ehrhart::{apex, count_dilation, is_admissible_dilation};
use goldie_core::instances::{self, Instance, SplitMix64};
use goldie_core::lattice::integer_kernel;
use goldie_core::linalg::RatMatrix;
use goldie_core::oracle::oracle_component_count;
use goldie_core::polytope::{vertices_of_hrep, witness_box};
use goldie_core::rat::{int, lcm_denominators, Rat};
use num_traits::{ToPrimitive, Zero};

/// Small sample of points of the raw support: kernel-lattice translates of
/// the base point inside a coefficient box, filtered by the definition.
fn sample_support(inst: &Instance, radius: i64, cap: usize) -> Vec<Vec<Rat>> {
    let kernel = integer_kernel(inst.spec.g_matrix());
    let mut points = vec![inst.alpha.clone()];
    let mut coefs = vec![0i64; kernel.len()];
    loop {
        // odometer over the coefficient box
        let mut k = kernel.len();
        let mut done = true;
        while k > 0 {
            k -= 1;
            if coefs[k] < radius {
                coefs[k] += 1;
                for c in coefs.iter_mut().skip(k + 1) {
                    *c = -radius;
                }
                done = false;
                break;
            }
        }
        if done {
            break;
        }
        let mut beta = inst.alpha.clone();
        for (c, g) in coefs.iter().zip(&kernel) {
            for (b, x) in beta.iter_mut().zip(g) {
                *b += int(*c) * Rat::from_integer(x.clone());
            }
        }
        if support_membership(&inst.spec, &inst.alpha, &beta) {
            points.push(beta);
            if points.len() >= cap {
                break;
            }
        }
    }
    points
}

#[test]
fn certificates_validate_on_pool() {
    let (pool, _) = instances::random_pool(101, 60);
    for inst in pool.iter().chain(&instances::all_valid()) {
        let cs = constraint_system(&inst.spec, &inst.alpha).unwrap();
        let cert = partition_indices(&inst.spec, &cs).unwrap();
        validate_certificate(&inst.spec, &cs, &cert).unwrap();
    }
}

#[test]
fn partition_is_order_independent() {
    for inst in instances::all_valid() {
        let cs = constraint_system(&inst.spec, &inst.alpha).unwrap();
        let cert = partition_indices(&inst.spec, &cs).unwrap();
        let mut reversed = cs.clone();
        reversed.entries.reverse();
        let cert2 = partition_indices(&inst.spec, &reversed).unwrap();
        let mut b1 = cert.bounded.clone();
        let mut b2 = cert2.bounded.clone();
        b1.sort_unstable();
        b2.sort_unstable();
        assert_eq!(b1, b2);
    }
}

#[test]
fn partition_stable_under_admissible_dilation() {
    let (pool, _) = instances::random_pool(202, 40);
    for inst in pool.iter().chain(&instances::all_valid()) {
        let cs = constraint_system(&inst.spec, &inst.alpha).unwrap();
        let cert = partition_indices(&inst.spec, &cs).unwrap();
        for x in [2i64, 3, 5] {
            let xr = int(x);
            if !is_admissible_dilation(&inst.spec, &inst.alpha, &xr) {
                continue;
            }
            let spec2 = inst.spec.dilate_character(&xr);
            let alpha2: Vec<Rat> = inst.alpha.iter().map(|a| a * &xr).collect();
            let cs2 = constraint_system(&spec2, &alpha2).unwrap();
            assert_eq!(cs.indices(), cs2.indices());
            let cert2 = partition_indices(&spec2, &cs2).unwrap();
            assert_eq!(cert.bounded, cert2.bounded);
            assert_eq!(cert.receding, cert2.receding);
            // the spanning assumption survives dilation
            let sc = sign_configuration(&spec2, &cert2, &alpha2);
            assert!(spanning_assumption_holds(&spec2, &sc));
        }
    }
}

#[test]
fn support_lies_in_closure() {
    for inst in instances::all_valid() {
        let rc = region_closure(&inst.spec, &inst.alpha).unwrap();
        for beta in sample_support(&inst, 3, 40) {
            assert!(support_membership(&inst.spec, &inst.alpha, &beta));
            assert!(support_membership(&inst.spec, &beta, &inst.alpha), "symmetry");
            assert!(closure_membership(&inst.spec, &rc, &beta));
        }
    }
}

#[test]
fn inclusion_is_an_order_on_fiber_points() {
    // several points on one arrangement and character
    let base = instances::line_components();
    let spec = &base.spec;
    let points: Vec<Vec<Rat>> = vec![
        base.alpha.clone(),
        vec![int(1), int(4), goldie_core::rat::rat(7, 2)],
        vec![goldie_core::rat::rat(5, 2), goldie_core::rat::rat(5, 2), int(0)],
        vec![int(-1), int(6), goldie_core::rat::rat(7, 2)],
    ];
    let closures: Vec<_> = points
        .iter()
        .map(|p| region_closure(spec, p).unwrap())
        .collect();
    for a in &closures {
        assert!(closure_inclusion(spec, a, spec, a).unwrap(), "reflexive");
    }
    for a in &closures {
        for b in &closures {
            for c in &closures {
                let ab = closure_inclusion(spec, a, spec, b).unwrap();
                let bc = closure_inclusion(spec, b, spec, c).unwrap();
                let ac = closure_inclusion(spec, a, spec, c).unwrap();
                if ab && bc {
                    assert!(ac, "transitive");
                }
            }
        }
    }
    // containment is pointwise on component representatives
    for (pa, a) in points.iter().zip(&closures) {
        let analysis = match analyze(spec, pa) {
            Ok(an) => an,
            Err(_) => continue,
        };
        for b in &closures {
            if closure_inclusion(spec, a, spec, b).unwrap() {
                for rep in &analysis.dset.reps {
                    assert!(closure_membership(spec, b, rep));
                }
            }
        }
    }
}

#[test]
fn component_fibers_cover_the_closure() {
    let inst = instances::line_components();
    let analysis = analyze(&inst.spec, &inst.alpha).unwrap();
    let rc = &analysis.closure;
    // sampled fiber points: gamma in the closure iff gamma lies on some
    // component fiber
    let mut rng = SplitMix64::new(5);
    for _ in 0..200 {
        let v1 = int(rng.range_i64(-2, 7));
        let v3 = goldie_core::rat::rat(rng.range_i64(-8, 8), 2);
        let v2 = int(5) - &v1;
        let gamma = vec![v1, v2, v3];
        assert!(inst.spec.fiber_membership(&gamma));
        let in_closure = closure_membership(&inst.spec, rc, &gamma);
        let on_some_fiber = analysis
            .dset
            .reps
            .iter()
            .any(|rep| component_contains(&inst.spec, &analysis.signs, rep, &gamma));
        assert_eq!(in_closure, on_some_fiber);
    }
}

#[test]
fn boxes_nest_and_vertices_are_basic() {
    let (pool, _) = instances::random_pool(303, 40);
    for inst in pool.iter().chain(&instances::all_valid()) {
        let analysis = analyze(&inst.spec, &inst.alpha).unwrap();
        let cs = &analysis.constraint;
        let cert = &analysis.certificate;
        let poly = &analysis.polytope;
        // every enumerated point lies in the LP box, which lies in the
        // certificate box
        let wbox = witness_box(cs, cert, &inst.alpha, &analysis.signs);
        let points = goldie_core::polytope::enumerate_lattice_points(poly).unwrap();
        assert_eq!(points.len(), analysis.dset.reps.len());
        for p in &points {
            for (k, v) in p.iter().enumerate() {
                let vr = Rat::from_integer(v.clone());
                assert!(poly.bounds[k].0 <= vr && vr <= poly.bounds[k].1);
            }
        }
        for ((lo, hi), (wlo, whi)) in poly.bounds.iter().zip(&wbox) {
            assert!(wlo <= lo && hi <= whi);
        }
        // each vertex is feasible and uniquely pinned by its active rows
        for v in &poly.vertices {
            assert!(poly.hrep.contains(v));
            let mut rows: Vec<Vec<Rat>> = poly.hrep.eq.iter().map(|(r, _)| r.clone()).collect();
            for (row, rhs) in &poly.hrep.le {
                if goldie_core::linalg::dot(row, v) == *rhs {
                    rows.push(row.clone());
                }
            }
            let act = RatMatrix::from_rows(rows).unwrap();
            assert_eq!(act.rank(), poly.hrep.dim, "active system must pin the vertex");
        }
    }
}

#[test]
fn dilation_set_identity_and_count_agreement() {
    for inst in [
        instances::segment_sum(),
        instances::segment_difference(),
        instances::segment_skew(),
        instances::line_components(),
    ] {
        let analysis = analyze(&inst.spec, &inst.alpha).unwrap();
        let fam = goldie_family(&inst.spec, &inst.alpha, 1, false).unwrap();
        let (Some(resc), Some(qp)) = (&fam.rescaling, &fam.quasi) else {
            panic!("fixture families have closed forms");
        };
        let z = apex(&analysis.signs);
        let shifted = analysis.polytope.translate_scale(&z, &int(1));
        let q = fam.reference.as_ref().unwrap();
        // f(1) = 1: counting the unit dilation recovers the base rank
        assert_eq!(resc.factor(&int(1)), int(1));
        assert_eq!(count_dilation(&shifted, &int(1)).unwrap(), analysis.rank);
        for x in 1..=6i64 {
            let f = resc.factor(&int(x));
            let s = resc.apply(&x.into());
            // the rescaled dilations are the same set: equal vertex lists
            let left = vertices_of_hrep(&shifted.hrep.dilate(&f)).unwrap();
            let right = vertices_of_hrep(&q.hrep.dilate(&Rat::from_integer(s.clone()))).unwrap();
            assert_eq!(left, right);
        }
        for x in 1..=12i64 {
            let f = resc.factor(&int(x));
            let s = resc.apply(&x.into());
            let direct = count_dilation(&shifted, &f).unwrap();
            let through_q = qp.eval(&s);
            assert_eq!(through_q, int(direct as i64));
        }
    }
}

#[test]
fn fitted_bounds_hold_on_fixtures() {
    for inst in instances::all_valid() {
        let Ok(fam) = goldie_family(&inst.spec, &inst.alpha, 4, false) else {
            continue;
        };
        let (Some(qp), Some(q)) = (&fam.quasi, &fam.reference) else {
            continue;
        };
        assert!(qp.degree() <= q.affine_dim());
        let lcm = lcm_denominators(q.vertices.iter().flatten());
        let period = lcm.to_u64().unwrap();
        assert_eq!(period % qp.period, 0, "period divides the vertex lcm");
    }
}

#[test]
fn basis_change_leaves_answers_alone() {
    let mut rng = SplitMix64::new(404);
    for inst in instances::all_valid() {
        let d = inst.spec.subtorus_dim();
        // a random invertible change of basis
        let u = loop {
            let cand = RatMatrix::from_rows(
                (0..d)
                    .map(|_| (0..d).map(|_| int(rng.range_i64(-2, 2))).collect())
                    .collect(),
            )
            .unwrap();
            if cand.rank() == d {
                break cand;
            }
        };
        let spec2 = inst.spec.change_basis(&u).unwrap();
        assert_eq!(
            inst.spec.fiber_membership(&inst.alpha),
            spec2.fiber_membership(&inst.alpha)
        );
        let r1 = goldie_rank(&inst.spec, &inst.alpha).unwrap();
        let r2 = goldie_rank(&spec2, &inst.alpha).unwrap();
        assert_eq!(r1, r2);
        let cs1 = constraint_system(&inst.spec, &inst.alpha).unwrap();
        let cs2 = constraint_system(&spec2, &inst.alpha).unwrap();
        let j1 = partition_indices(&inst.spec, &cs1).unwrap().bounded;
        let j2 = partition_indices(&spec2, &cs2).unwrap().bounded;
        assert_eq!(j1, j2);
    }
}

#[test]
fn rank_matches_oracle_on_small_pool() {
    let (pool, _) = instances::random_pool(777, 40);
    for inst in pool.iter().chain(&instances::all_valid()) {
        let rank = goldie_rank(&inst.spec, &inst.alpha).unwrap();
        let res = oracle_component_count(&inst.spec, &inst.alpha, &[6, 9, 13, 19, 28])
            .unwrap();
        assert!(res.stabilized, "oracle must stabilize on pool instances");
        assert_eq!(res.component_count, rank);
    }
}

#[test]
fn dilated_families_verify_against_direct_counts() {
    for inst in [instances::segment_sum(), instances::segment_difference()] {
        let fam = goldie_family(&inst.spec, &inst.alpha, 5, true).unwrap();
        for row in &fam.rows {
            assert!(row.admissible);
            assert_eq!(row.predicted, row.direct);
            assert_eq!(row.direct.unwrap(), dilated_rank(&inst.spec, &inst.alpha, row.x).unwrap());
        }
    }
}

#[test]
fn whole_fiber_and_localized_instances_have_rank_one() {
    for inst in [instances::whole_fiber(), instances::all_inverted()] {
        assert_eq!(goldie_rank(&inst.spec, &inst.alpha).unwrap(), 1);
    }
}

#[test]
fn fully_bounded_region_is_a_finite_point_set() {
    let inst = instances::segment_difference();
    let analysis = analyze(&inst.spec, &inst.alpha).unwrap();
    assert_eq!(analysis.signs.free, Vec::<usize>::new());
    // all components are single points: the direction space is trivial
    assert!(analysis.certificate.direction.iter().all(Rat::is_zero));
    let expected: Vec<Vec<Rat>> = vec![
        vec![int(0), int(-3)],
        vec![int(1), int(-2)],
        vec![int(2), int(-1)],
    ];
    assert_eq!(analysis.dset.reps, expected);
}

#[test]
fn values_are_freely_transferable_between_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<goldie_core::arrangement::ArrangementSpec>();
    assert_send_sync::<goldie_core::arrangement::ConstraintSystem>();
    assert_send_sync::<goldie_core::closure::PartitionCertificate>();
    assert_send_sync::<goldie_core::closure::RegionClosure>();
    assert_send_sync::<goldie_core::polytope::RationalPolytope>();
    assert_send_sync::<goldie_core::ehrhart::QuasiPolynomial>();
    assert_send_sync::<goldie_core::analysis::GoldieFamily>();
    assert_send_sync::<goldie_core::weyl::WeylElement>();
    assert_send_sync::<goldie_core::oracle::OracleResult>();
    // per-index feasibility solves may run on worker threads and merge
    let inst = instances::segment_sum();
    let spec = inst.spec.clone();
    let alpha = inst.alpha.clone();
    let handle = std::thread::spawn(move || goldie_rank(&spec, &alpha).unwrap());
    assert_eq!(handle.join().unwrap(), 6);
}
