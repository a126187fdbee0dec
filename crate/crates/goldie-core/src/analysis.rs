//! The orchestration layer: full region analysis, Goldie rank, and dilation
//! families with fitted quasi-polynomials and optional direct verification.

use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive};

use crate::arrangement::{constraint_system, ArrangementSpec, ConstraintSystem};
use crate::closure::{
    spanning_report, component_fibers, partition_indices, region_closure_from_parts,
    sign_configuration, SpanningReport, ComponentFibers, PartitionCertificate, RegionClosure,
    SignConfiguration,
};
use crate::ehrhart::{
    apex, compute_a0, fit_quasipolynomial, is_admissible_dilation, reference_polytope,
    DilationRescaling, QuasiPolynomial,
};
use crate::error::Error;
use crate::polytope::{
    build_polytope, dset_representatives, witness_box, DSet, RationalPolytope,
};
use crate::rat::{int, BigInt, Rat};

/// Everything the pipeline derives from one base point.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub constraint: ConstraintSystem,
    pub certificate: PartitionCertificate,
    pub signs: SignConfiguration,
    pub assumption: SpanningReport,
    pub closure: RegionClosure,
    pub polytope: RationalPolytope,
    pub dset: DSet,
    pub fibers: ComponentFibers,
    /// Number of connected components of the closed region = Goldie rank.
    pub rank: usize,
}

/// Runs the whole chain on one base point. Fails when the point is off the
/// fiber or the spanning assumption does not hold.
pub fn analyze(spec: &ArrangementSpec, alpha: &[Rat]) -> Result<Analysis, Error> {
    if alpha.len() != spec.n() {
        return Err(Error::DimensionMismatch {
            context: "base point",
            expected: spec.n(),
            found: alpha.len(),
        });
    }
    let constraint = constraint_system(spec, alpha)?;
    let certificate = partition_indices(spec, &constraint)?;
    let signs = sign_configuration(spec, &certificate, alpha);
    let assumption = spanning_report(spec, &signs);
    if !assumption.holds {
        return Err(Error::AssumptionViolated {
            detail: assumption.describe(),
        });
    }
    let closure = region_closure_from_parts(spec, alpha, &signs)?;
    let polytope = build_polytope(spec, alpha, &signs)?;
    // a-priori box from the certificate must contain the tight LP box
    let wbox = witness_box(&constraint, &certificate, alpha, &signs);
    for ((lo, hi), (wlo, whi)) in polytope.bounds.iter().zip(&wbox) {
        if wlo > lo || hi > whi {
            return Err(Error::Internal("certificate box fails to contain the LP box"));
        }
    }
    let dset = dset_representatives(spec, alpha, &signs, &polytope)?;
    let fibers = component_fibers(spec.n(), &signs, &dset);
    let rank = dset.reps.len();
    Ok(Analysis {
        constraint,
        certificate,
        signs,
        assumption,
        closure,
        polytope,
        dset,
        fibers,
        rank,
    })
}

/// The Goldie rank of the primitive quotient attached to `alpha`: the number
/// of connected components of the closed region, counted exactly.
pub fn goldie_rank(spec: &ArrangementSpec, alpha: &[Rat]) -> Result<usize, Error> {
    Ok(analyze(spec, alpha)?.rank)
}

/// One row of the family evaluation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRow {
    pub x: u64,
    pub admissible: bool,
    /// Quasi-polynomial prediction, when a closed form exists.
    pub predicted: Option<usize>,
    /// Direct rank of the dilated instance, when requested or when no
    /// closed form exists.
    pub direct: Option<usize>,
}

/// A dilation family: apex, dilation scalar, rescaling, reference polytope,
/// fitted quasi-polynomial and the evaluation table. When the apex
/// coincides with the projected base point the family is degenerate and the
/// closed form (if any) comes from constant direct counts; when no dilation
/// axis exists the table falls back to direct counts with no closed form.
#[derive(Clone, Debug)]
pub struct GoldieFamily {
    pub alpha: Vec<Rat>,
    pub signs: SignConfiguration,
    pub apex: Vec<Rat>,
    pub a0: Option<Rat>,
    pub rescaling: Option<DilationRescaling>,
    pub reference: Option<RationalPolytope>,
    pub quasi: Option<QuasiPolynomial>,
    pub degenerate: bool,
    pub no_axis: bool,
    /// Denominators of the non-integral non-inverted coordinates; a factor
    /// is admissible iff none of them divides it.
    pub blocked_denominators: Vec<BigInt>,
    pub rows: Vec<FamilyRow>,
}

impl GoldieFamily {
    pub fn closed_form(&self) -> bool {
        self.quasi.is_some()
    }
}

/// Builds the family over `x = 1..=x_max`. With `verify`, every admissible
/// row also carries the direct rank of the freshly rebuilt dilated instance.
pub fn goldie_family(
    spec: &ArrangementSpec,
    alpha: &[Rat],
    x_max: u64,
    verify: bool,
) -> Result<GoldieFamily, Error> {
    let analysis = analyze(spec, alpha)?;
    let signs = analysis.signs.clone();
    let apex_point = apex(&signs);
    let alpha_bounded: Vec<Rat> = signs.bounded().iter().map(|&j| alpha[j].clone()).collect();
    let blocked_denominators: Vec<BigInt> = alpha
        .iter()
        .take(spec.r())
        .filter(|a| !a.is_integer())
        .map(|a| a.denom().clone())
        .collect();

    let degenerate = alpha_bounded == apex_point;
    let mut a0 = None;
    let mut rescaling = None;
    let mut reference = None;
    let mut quasi = None;
    let mut no_axis = false;
    if !degenerate {
        match compute_a0(spec, alpha, &signs, &apex_point) {
            Ok(scalar) => {
                let resc = DilationRescaling::from_a0(&scalar)?;
                let q = reference_polytope(&analysis.polytope, &apex_point, &resc);
                quasi = Some(fit_quasipolynomial(&q)?);
                a0 = Some(scalar);
                rescaling = Some(resc);
                reference = Some(q);
            }
            Err(Error::NoDilationAxis) => no_axis = true,
            Err(e) => return Err(e),
        }
    }

    let need_direct = verify || quasi.is_none();
    let mut rows = Vec::with_capacity(x_max as usize);
    for x in 1..=x_max {
        let xr = int(x as i64);
        let admissible = is_admissible_dilation(spec, alpha, &xr);
        let mut predicted = None;
        let mut direct = None;
        if admissible {
            if let (Some(qp), Some(resc)) = (&quasi, &rescaling) {
                let arg = resc.apply(&BigInt::from(x));
                let value = qp.eval(&arg);
                if !value.is_integer() || value.is_negative() {
                    return Err(Error::Internal("quasi-polynomial value is not a count"));
                }
                predicted = Some(
                    value
                        .to_integer()
                        .to_usize()
                        .ok_or(Error::Internal("count out of range"))?,
                );
            }
            if need_direct {
                let dilated_spec = spec.dilate_character(&xr);
                let dilated_alpha: Vec<Rat> = alpha.iter().map(|a| a * &xr).collect();
                direct = Some(goldie_rank(&dilated_spec, &dilated_alpha)?);
            }
        }
        rows.push(FamilyRow {
            x,
            admissible,
            predicted,
            direct,
        });
    }

    // a degenerate family still gets a constant closed form when the direct
    // counts over the probed range agree
    if degenerate {
        let counts: Vec<usize> = rows
            .iter()
            .filter_map(|r| if r.admissible { r.direct } else { None })
            .collect();
        if !counts.is_empty() && counts.iter().all(|&c| c == counts[0]) {
            quasi = Some(QuasiPolynomial::constant(counts[0]));
            for r in rows.iter_mut() {
                if r.admissible {
                    r.predicted = r.direct;
                }
            }
        }
    }

    Ok(GoldieFamily {
        alpha: alpha.to_vec(),
        signs,
        apex: apex_point,
        a0,
        rescaling,
        reference,
        quasi,
        degenerate,
        no_axis,
        blocked_denominators,
        rows,
    })
}

/// Direct count of the dilated region via the full pipeline; exposed for
/// cross-checks against the quasi-polynomial route.
pub fn dilated_rank(spec: &ArrangementSpec, alpha: &[Rat], x: u64) -> Result<usize, Error> {
    let xr = int(x as i64);
    let dilated_spec = spec.dilate_character(&xr);
    let dilated_alpha: Vec<Rat> = alpha.iter().map(|a| a * &xr).collect();
    goldie_rank(&dilated_spec, &dilated_alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;
    use crate::rat::rat;

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        let spec = ArrangementSpec::from_alpha(2, 2, mat(&[&[1, 1]]), &ints(&[2, 3])).unwrap();
        assert_eq!(goldie_rank(&spec, &ints(&[2, 3])).unwrap(), 6);

        let spec2 = ArrangementSpec::from_alpha(2, 2, mat(&[&[1, 1]]), &ints(&[2, -3])).unwrap();
        assert_eq!(goldie_rank(&spec2, &ints(&[2, -3])).unwrap(), 1);

        let spec3 = ArrangementSpec::from_alpha(2, 2, mat(&[&[2, -1]]), &ints(&[1, -1])).unwrap();
        assert_eq!(goldie_rank(&spec3, &ints(&[1, -1])).unwrap(), 2);
    }

    #[test]
    fn rank_errors() {
        let spec = ArrangementSpec::new(2, 2, mat(&[&[1, 1]]), vec![int(5)]).unwrap();
        assert_eq!(goldie_rank(&spec, &ints(&[1, 1])), Err(Error::NotOnFiber));

        let alpha = vec![int(1), int(-2), rat(7, 2)];
        let bad = ArrangementSpec::from_alpha(3, 3, mat(&[&[1, 0, 1], &[0, 1, 1]]), &alpha).unwrap();
        assert!(matches!(
            goldie_rank(&bad, &alpha),
            Err(Error::AssumptionViolated { .. })
        ));
    }

    #[test]
    fn family_sum_instance() {
        let spec = ArrangementSpec::from_alpha(2, 2, mat(&[&[1, 1]]), &ints(&[2, 3])).unwrap();
        let fam = goldie_family(&spec, &ints(&[2, 3]), 4, true).unwrap();
        assert!(fam.closed_form());
        let qp = fam.quasi.as_ref().unwrap();
        assert_eq!(qp.period, 1);
        assert_eq!(qp.coeffs, vec![vec![int(1), int(5)]]);
        for row in &fam.rows {
            assert!(row.admissible);
            assert_eq!(row.predicted, Some(5 * row.x as usize + 1));
            assert_eq!(row.direct, row.predicted);
        }
    }

    #[test]
    fn family_difference_instance() {
        let spec = ArrangementSpec::from_alpha(2, 2, mat(&[&[1, -1]]), &ints(&[2, -1])).unwrap();
        let fam = goldie_family(&spec, &ints(&[2, -1]), 3, true).unwrap();
        assert_eq!(fam.a0, Some(rat(1, 3)));
        let resc = fam.rescaling.as_ref().unwrap();
        assert_eq!(resc.numer, BigInt::from(3));
        assert_eq!(resc.offset, BigInt::from(1));
        for row in &fam.rows {
            assert_eq!(row.predicted, Some(3 * row.x as usize));
            assert_eq!(row.direct, row.predicted);
        }
    }

    #[test]
    fn family_skew_instance() {
        let spec = ArrangementSpec::from_alpha(2, 2, mat(&[&[2, -1]]), &ints(&[1, -1])).unwrap();
        let fam = goldie_family(&spec, &ints(&[1, -1]), 6, true).unwrap();
        let expect = [2usize, 3, 5, 6, 8, 9];
        for (row, &e) in fam.rows.iter().zip(&expect) {
            assert_eq!(row.predicted, Some(e));
            assert_eq!(row.direct, Some(e));
        }
        assert_eq!(fam.quasi.as_ref().unwrap().period, 2);
    }

    #[test]
    fn family_no_axis_falls_back() {
        let spec = ArrangementSpec::from_alpha(2, 2, mat(&[&[1, 0], &[0, 1]]), &ints(&[2, -1]))
            .unwrap();
        let fam = goldie_family(&spec, &ints(&[2, -1]), 3, false).unwrap();
        assert!(fam.no_axis);
        assert!(!fam.closed_form());
        for row in &fam.rows {
            assert_eq!(row.direct, Some(1));
            assert_eq!(row.predicted, None);
        }
    }

    #[test]
    fn family_degenerate_apex() {
        // alpha projects exactly onto the apex; ranks grow linearly, so no
        // constant closed form may be reported
        let spec = ArrangementSpec::from_alpha(2, 2, mat(&[&[1, -1]]), &ints(&[0, -1])).unwrap();
        let fam = goldie_family(&spec, &ints(&[0, -1]), 4, false).unwrap();
        assert!(fam.degenerate);
        assert!(!fam.closed_form());
        for row in &fam.rows {
            assert_eq!(row.direct, Some(row.x as usize));
        }
    }

    #[test]
    fn family_degenerate_constant() {
        // whole-fiber region: every dilation has rank 1, so the degenerate
        // family reports the constant closed form
        let spec = ArrangementSpec::from_alpha(2, 2, mat(&[&[1, 1]]), &ints(&[2, -3])).unwrap();
        let fam = goldie_family(&spec, &ints(&[2, -3]), 4, false).unwrap();
        assert!(fam.degenerate);
        assert!(fam.closed_form());
        assert_eq!(fam.quasi.as_ref().unwrap().coeffs, vec![vec![int(1)]]);
    }

    #[test]
    fn family_skips_inadmissible_rows() {
        let half = vec![rat(1, 2), rat(1, 2)];
        let spec = ArrangementSpec::from_alpha(2, 2, mat(&[&[1, 1]]), &half).unwrap();
        let fam = goldie_family(&spec, &half, 4, true).unwrap();
        assert_eq!(fam.blocked_denominators, vec![BigInt::from(2), BigInt::from(2)]);
        for row in &fam.rows {
            assert_eq!(row.admissible, row.x % 2 == 1);
            if !row.admissible {
                assert_eq!(row.predicted, None);
                assert_eq!(row.direct, None);
            }
        }
    }
}
