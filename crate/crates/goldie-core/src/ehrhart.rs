//! Dilation families: the apex, the rational dilation scalar and its
//! integral rescaling, the reference polytope, exact rational-dilation
//! counting, quasi-polynomial fitting and dilation admissibility.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arrangement::ArrangementSpec;
use crate::closure::SignConfiguration;
use crate::error::Error;
use crate::linalg::{solve_linear, RatMatrix};
use crate::polytope::{enumerate_hrep, RationalPolytope};
use crate::rat::{big, int, lcm_denominators, BigInt, Rat};

/// The dilation apex over the bounded coordinates: 0 on the nonnegative
/// side, -1 on the negative side. Depends on the sign configuration only.
pub fn apex(sc: &SignConfiguration) -> Vec<Rat> {
    sc.bounded()
        .iter()
        .map(|j| if sc.nonneg.contains(j) { Rat::zero() } else { int(-1) })
        .collect()
}

/// Solves `sum_j z_j eta_j = a0 * chi_J` for the exact scalar `a0`, where
/// `z` is the apex and `chi_J` the bounded-block character part. When both
/// sides vanish the scalar is 0; when no rational scalar exists the family
/// has no dilation axis and callers must fall back to direct counting.
pub fn compute_a0(
    spec: &ArrangementSpec,
    alpha: &[Rat],
    sc: &SignConfiguration,
    apex_point: &[Rat],
) -> Result<Rat, Error> {
    let coords = sc.bounded();
    let d = spec.subtorus_dim();
    let mut lhs = vec![Rat::zero(); d];
    let mut chi_j = vec![Rat::zero(); d];
    for (k, &j) in coords.iter().enumerate() {
        for (row, eta) in spec.eta(j).into_iter().enumerate() {
            lhs[row] += &apex_point[k] * &eta;
            chi_j[row] += &alpha[j] * &eta;
        }
    }
    if chi_j.iter().all(Rat::is_zero) {
        return if lhs.iter().all(Rat::is_zero) {
            Ok(Rat::zero())
        } else {
            Err(Error::NoDilationAxis)
        };
    }
    let pivot = chi_j.iter().position(|v| !v.is_zero()).expect("nonzero");
    let a0 = &lhs[pivot] / &chi_j[pivot];
    for (l, c) in lhs.iter().zip(&chi_j) {
        if *l != &a0 * c {
            return Err(Error::NoDilationAxis);
        }
    }
    Ok(a0)
}

/// The integral rescaling of the family dilation: with `a0 = offset/numer`
/// in lowest terms (`numer > 0`), the rational dilation factor
/// `(x - a0)/(1 - a0)` equals `(numer * x - offset) / (numer - offset)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationRescaling {
    pub numer: BigInt,
    pub offset: BigInt,
}

impl DilationRescaling {
    pub fn from_a0(a0: &Rat) -> Result<Self, Error> {
        if a0.is_one() {
            return Err(Error::DegenerateFamily);
        }
        Ok(DilationRescaling {
            numer: a0.denom().clone(),
            offset: a0.numer().clone(),
        })
    }

    /// The integral argument `numer * x - offset` fed to the reference
    /// quasi-polynomial.
    pub fn apply(&self, x: &BigInt) -> BigInt {
        &self.numer * x - &self.offset
    }

    /// `numer - offset`, the denominator converting rational to integral
    /// dilation; positive whenever `a0 < 1`.
    pub fn scale(&self) -> BigInt {
        &self.numer - &self.offset
    }

    /// The rational dilation factor `(x - a0)/(1 - a0)`.
    pub fn factor(&self, x: &Rat) -> Rat {
        (big(self.numer.clone()) * x - big(self.offset.clone())) / big(self.scale())
    }
}

/// The reference polytope: the projected polytope translated to the apex and
/// shrunk by the rescaling denominator. Its integral dilations encode the
/// whole family.
pub fn reference_polytope(
    p: &RationalPolytope,
    apex_point: &[Rat],
    rescaling: &DilationRescaling,
) -> RationalPolytope {
    let factor = Rat::new(BigInt::one(), rescaling.scale());
    p.translate_scale(apex_point, &factor)
}

/// Exact count of integer points in the dilation `q * base` for a positive
/// rational `q`, by enumerating the scaled H-description.
pub fn count_dilation(base: &RationalPolytope, q: &Rat) -> Result<usize, Error> {
    if !q.is_positive() {
        return Err(Error::BadInput("dilation factor must be positive"));
    }
    Ok(enumerate_hrep(&base.hrep.dilate(q))?.len())
}

/// A quasi-polynomial: one coefficient row (constant term first) per residue
/// class of the period; evaluation at a positive integer `t` uses the row of
/// `t mod period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    pub coeffs: Vec<Vec<Rat>>,
}

impl QuasiPolynomial {
    pub fn constant(value: usize) -> Self {
        QuasiPolynomial {
            period: 1,
            coeffs: vec![vec![int(value as i64)]],
        }
    }

    pub fn eval(&self, t: &BigInt) -> Rat {
        assert!(t.is_positive(), "quasi-polynomial sampled at t <= 0");
        let residue = t
            .mod_floor(&BigInt::from(self.period))
            .to_u64()
            .expect("residue fits") as usize;
        let row = &self.coeffs[residue];
        let x = big(t.clone());
        let mut acc = Rat::zero();
        for c in row.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    /// Highest degree with a nonzero coefficient in any residue row.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .map(|row| row.iter().rposition(|c| !c.is_zero()).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

fn try_fit(q: &RationalPolytope, period: u64, degree: usize) -> Result<QuasiPolynomial, Error> {
    let mut coeffs = Vec::with_capacity(period as usize);
    for residue in 0..period {
        let start = if residue == 0 { period } else { residue };
        let samples: Vec<BigInt> = (0..degree + 3)
            .map(|k| BigInt::from(start + k as u64 * period))
            .collect();
        let mut counts = Vec::with_capacity(samples.len());
        for t in &samples {
            counts.push(count_dilation(q, &big(t.clone()))?);
        }
        // exact Vandermonde solve on the first degree+1 samples
        let rows: Vec<Vec<Rat>> = samples[..degree + 1]
            .iter()
            .map(|t| {
                let x = big(t.clone());
                let mut row = Vec::with_capacity(degree + 1);
                let mut p = Rat::one();
                for _ in 0..=degree {
                    row.push(p.clone());
                    p *= &x;
                }
                row
            })
            .collect();
        let rhs: Vec<Rat> = counts[..degree + 1]
            .iter()
            .map(|&c| int(c as i64))
            .collect();
        let mat = RatMatrix::from_rows(rows)?;
        let sol = solve_linear(&mat, &rhs)?
            .ok_or(Error::Internal("Vandermonde system must be solvable"))?;
        // two held-out validation samples
        for k in degree + 1..degree + 3 {
            let predicted = candidate_eval(&sol, &samples[k]);
            if predicted != int(counts[k] as i64) {
                return Err(Error::FitValidation { period });
            }
        }
        coeffs.push(sol);
    }
    Ok(QuasiPolynomial { period, coeffs })
}

fn candidate_eval(row: &[Rat], t: &BigInt) -> Rat {
    let x = big(t.clone());
    let mut acc = Rat::zero();
    for c in row.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

/// Fits the lattice-point enumerator of integral dilations of `q`.
///
/// The period is the lcm of the vertex denominators (the dilation by it is
/// an integral polytope), the degree bound is the affine-hull dimension;
/// each residue class is fitted through degree+1 exact counts and validated
/// on two more. A validation failure retries once with the period doubled,
/// then fails hard; it never silently returns a bad fit.
pub fn fit_quasipolynomial(q: &RationalPolytope) -> Result<QuasiPolynomial, Error> {
    let period_big = lcm_denominators(q.vertices.iter().flatten());
    let period = period_big
        .to_u64()
        .ok_or(Error::Internal("vertex denominators out of range"))?;
    let degree = q.affine_dim();
    match try_fit(q, period, degree) {
        Ok(qp) => Ok(qp),
        Err(Error::FitValidation { .. }) => try_fit(q, period * 2, degree),
        Err(e) => Err(e),
    }
}

/// Whether the dilation by `x > 0` keeps the constraint index set and its
/// sign classes unchanged, recomputed from scratch on the dilated point.
/// Integral base points admit every positive integer factor.
pub fn is_admissible_dilation(spec: &ArrangementSpec, alpha: &[Rat], x: &Rat) -> bool {
    if !x.is_positive() {
        return false;
    }
    for a in alpha.iter().take(spec.r()) {
        let scaled = a * x;
        let before = a.is_integer();
        let after = scaled.is_integer();
        if before != after {
            return false;
        }
        if before && (a.is_negative() != scaled.is_negative()) {
            return false;
        }
    }
    true
}
