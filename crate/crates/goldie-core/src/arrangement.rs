//! The rational arrangement data: a subtorus basis, a character, the affine
//! fiber it cuts out, raw support regions, and the bounded-index constraint
//! system attached to a base point.

use alloc::vec::Vec;

use num_traits::Signed;

use crate::error::Error;
use crate::linalg::RatMatrix;
use crate::rat::{int, Rat};

/// Ambient data: `n` coordinates, the first `r` non-inverted, a rank-`d`
/// rational matrix `g` whose rows form a basis of the subtorus (so column `i`
/// is the restriction `eta_i` of the i-th coordinate functional), and the
/// character `chi` in the coordinates of that basis.
///
/// All entries are exact rationals; that the defining equations are rational
/// is an assumption of everything downstream, enforced here by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementSpec {
    n: usize,
    r: usize,
    g: RatMatrix,
    chi: Vec<Rat>,
}

impl ArrangementSpec {
    pub fn new(n: usize, r: usize, g: RatMatrix, chi: Vec<Rat>) -> Result<Self, Error> {
        if r > n {
            return Err(Error::BadInput("r must not exceed n"));
        }
        if g.cols() != n {
            return Err(Error::DimensionMismatch {
                context: "subtorus basis columns",
                expected: n,
                found: g.cols(),
            });
        }
        if chi.len() != g.rows() {
            return Err(Error::DimensionMismatch {
                context: "character",
                expected: g.rows(),
                found: chi.len(),
            });
        }
        let rank = g.rank();
        if rank != g.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: g.rows(),
            });
        }
        Ok(ArrangementSpec { n, r, g, chi })
    }

    /// Builds the spec with the character derived as `chi = g * alpha`.
    pub fn from_alpha(n: usize, r: usize, g: RatMatrix, alpha: &[Rat]) -> Result<Self, Error> {
        if alpha.len() != n {
            return Err(Error::DimensionMismatch {
                context: "base point",
                expected: n,
                found: alpha.len(),
            });
        }
        let chi = g.mul_vec(alpha)?;
        Self::new(n, r, g, chi)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Dimension of the subtorus.
    pub fn subtorus_dim(&self) -> usize {
        self.g.rows()
    }

    pub fn g_matrix(&self) -> &RatMatrix {
        &self.g
    }

    pub fn chi(&self) -> &[Rat] {
        &self.chi
    }

    /// Column `i` of the basis matrix: the restriction of the i-th coordinate
    /// functional to the subtorus.
    pub fn eta(&self, i: usize) -> Vec<Rat> {
        self.g.col(i)
    }

    /// Rewrites the subtorus basis through the invertible matrix `u`
    /// (new basis rows = `u * g`, new character = `u * chi`). Downstream
    /// answers must not depend on this choice.
    pub fn change_basis(&self, u: &RatMatrix) -> Result<Self, Error> {
        let d = self.g.rows();
        if u.rows() != d || u.cols() != d {
            return Err(Error::DimensionMismatch {
                context: "basis change",
                expected: d,
                found: u.rows(),
            });
        }
        if u.rank() != d {
            return Err(Error::RankDeficient { rank: u.rank(), rows: d });
        }
        let g = u.mul_mat(&self.g)?;
        let chi = u.mul_vec(&self.chi)?;
        Self::new(self.n, self.r, g, chi)
    }

    /// True iff `beta` lies on the affine fiber, i.e. `g * beta = chi`.
    pub fn fiber_membership(&self, beta: &[Rat]) -> bool {
        assert_eq!(beta.len(), self.n, "point has wrong dimension");
        self.g.mul_vec(beta).expect("dimension checked") == self.chi
    }

    /// The dilated arrangement with character `x * chi`, rebuilt from scratch.
    pub fn dilate_character(&self, x: &Rat) -> ArrangementSpec {
        let chi = self.chi.iter().map(|c| c * x).collect();
        ArrangementSpec {
            n: self.n,
            r: self.r,
            g: self.g.clone(),
            chi,
        }
    }
}

/// One bounded-index constraint: for index `i` (with integral base
/// coordinate), the functional `u -> sigma * u_i` is bounded by `bound` on
/// the translated support cone. `sigma = -1` exactly when the base
/// coordinate is a nonnegative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintEntry {
    pub index: usize,
    pub sigma: i64,
    pub bound: Rat,
}

impl ConstraintEntry {
    /// Value of the functional on a translated vector.
    pub fn lambda(&self, u: &[Rat]) -> Rat {
        int(self.sigma) * &u[self.index]
    }
}

/// The constraint system of a base point: one entry per index `i < r` with
/// integral coordinate, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConstraintSystem {
    pub entries: Vec<ConstraintEntry>,
}

impl ConstraintSystem {
    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.index).collect()
    }

    pub fn entry_for(&self, index: usize) -> Option<&ConstraintEntry> {
        self.entries.iter().find(|e| e.index == index)
    }
}

/// Builds the constraint system of `alpha`: indices `i < r` with integral
/// coordinate get the functional `-u_i` and bound `alpha_i` when
/// `alpha_i >= 0`, or the functional `u_i` and bound `-alpha_i - 1` when
/// `alpha_i < 0`. Non-integral coordinates and inverted variables impose
/// nothing.
pub fn constraint_system(
    spec: &ArrangementSpec,
    alpha: &[Rat],
) -> Result<ConstraintSystem, Error> {
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
    let mut entries = Vec::new();
    for (i, a) in alpha.iter().enumerate().take(spec.r()) {
        if !a.is_integer() {
            continue;
        }
        if a.is_negative() {
            entries.push(ConstraintEntry {
                index: i,
                sigma: 1,
                bound: -a.clone() - int(1),
            });
        } else {
            entries.push(ConstraintEntry {
                index: i,
                sigma: -1,
                bound: a.clone(),
            });
        }
    }
    Ok(ConstraintSystem { entries })
}

/// Raw (non-closed) support membership: `beta` belongs to the support of the
/// simple module attached to `alpha` iff it differs from `alpha` by an
/// integer vector, lies on the fiber, and for every non-inverted coordinate
/// agrees with `alpha` on the side of the nonnegative-integer dichotomy.
pub fn support_membership(spec: &ArrangementSpec, alpha: &[Rat], beta: &[Rat]) -> bool {
    assert!(spec.fiber_membership(alpha), "base point must lie on the fiber");
    assert_eq!(beta.len(), spec.n(), "point has wrong dimension");
    if !spec.fiber_membership(beta) {
        return false;
    }
    for (a, b) in alpha.iter().zip(beta) {
        if !(b - a).is_integer() {
            return false;
        }
    }
    for i in 0..spec.r() {
        let a_nonneg_int = alpha[i].is_integer() && !alpha[i].is_negative();
        let b_nonneg_int = beta[i].is_integer() && !beta[i].is_negative();
        if a_nonneg_int != b_nonneg_int {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn validate_simple_spec() {
        let s = ArrangementSpec::new(2, 2, mat(&[&[1, 1]]), vec![int(5)]).unwrap();
        assert_eq!(s.eta(0), vec![int(1)]);
        assert_eq!(s.eta(1), vec![int(1)]);
    }

    #[test]
    fn validate_rejects_dependent_rows() {
        let err = ArrangementSpec::new(2, 2, mat(&[&[1, 1], &[2, 2]]), vec![int(0), int(0)]);
        assert_eq!(err, Err(Error::RankDeficient { rank: 1, rows: 2 }));
    }

    #[test]
    fn chi_derived_from_alpha() {
        let alpha = vec![int(2), int(3), rat(7, 2)];
        let s = ArrangementSpec::from_alpha(3, 2, mat(&[&[1, 1, 0]]), &alpha).unwrap();
        assert_eq!(s.chi(), &[int(5)]);
        assert!(s.fiber_membership(&alpha));
    }

    #[test]
    fn fiber_membership_examples() {
        let s = ArrangementSpec::new(2, 2, mat(&[&[1, 1]]), vec![int(5)]).unwrap();
        assert!(s.fiber_membership(&pt(&[5, 0])));
        assert!(!s.fiber_membership(&pt(&[5, 1])));
        let s2 = ArrangementSpec::new(2, 2, mat(&[&[2, -1]]), vec![int(3)]).unwrap();
        assert!(s2.fiber_membership(&pt(&[1, -1])));
    }

    #[test]
    fn constraint_system_examples() {
        let s = ArrangementSpec::new(2, 2, mat(&[&[1, 1]]), vec![int(5)]).unwrap();
        let cs = constraint_system(&s, &pt(&[2, 3])).unwrap();
        assert_eq!(cs.indices(), vec![0, 1]);
        assert_eq!(cs.entries[0].sigma, -1);
        assert_eq!(cs.entries[1].sigma, -1);
        assert_eq!(cs.entries[0].bound, int(2));
        assert_eq!(cs.entries[1].bound, int(3));

        let s2 = ArrangementSpec::new(2, 2, mat(&[&[1, 1]]), vec![int(1)]).unwrap();
        let cs2 = constraint_system(&s2, &pt(&[2, -1])).unwrap();
        assert_eq!(cs2.entries[1].sigma, 1);
        assert_eq!(cs2.entries[1].bound, int(0));

        let alpha = vec![int(2), int(3), rat(7, 2)];
        let s3 = ArrangementSpec::from_alpha(3, 3, mat(&[&[1, 1, 0]]), &alpha).unwrap();
        let cs3 = constraint_system(&s3, &alpha).unwrap();
        assert_eq!(cs3.indices(), vec![0, 1]);
    }

    #[test]
    fn constraint_system_requires_fiber() {
        let s = ArrangementSpec::new(2, 2, mat(&[&[1, 1]]), vec![int(5)]).unwrap();
        assert_eq!(constraint_system(&s, &pt(&[1, 1])), Err(Error::NotOnFiber));
    }

    #[test]
    fn support_membership_examples() {
        let s = ArrangementSpec::new(2, 2, mat(&[&[1, 1]]), vec![int(5)]).unwrap();
        let alpha = pt(&[2, 3]);
        assert!(support_membership(&s, &alpha, &pt(&[5, 0])));
        assert!(!support_membership(&s, &alpha, &pt(&[6, -1])));
        assert!(!support_membership(
            &s,
            &alpha,
            &[rat(1, 2), rat(9, 2)]
        ));
        // the base point is always in its own support
        assert!(support_membership(&s, &alpha, &alpha));
    }

    #[test]
    fn support_is_symmetric() {
        let s = ArrangementSpec::new(2, 2, mat(&[&[1, 1]]), vec![int(5)]).unwrap();
        let alpha = pt(&[2, 3]);
        let beta = pt(&[5, 0]);
        assert!(support_membership(&s, &alpha, &beta));
        assert!(support_membership(&s, &beta, &alpha));
    }

    #[test]
    fn support_with_all_inverted() {
        // r = 0: the sign clause is vacuous, support = fiber meets lattice
        let s = ArrangementSpec::new(2, 0, mat(&[&[1, 1]]), vec![int(5)]).unwrap();
        let alpha = vec![rat(3, 2), rat(7, 2)];
        assert!(support_membership(&s, &alpha, &[rat(-5, 2), rat(15, 2)]));
        assert!(!support_membership(&s, &alpha, &[rat(1, 2), rat(7, 2)]));
    }

    #[test]
    fn basis_change_preserves_fiber() {
        let s = ArrangementSpec::new(3, 2, mat(&[&[1, 1, 0], &[0, 1, 1]]), vec![int(5), int(2)])
            .unwrap();
        let u = RatMatrix::from_rows(vec![
            vec![int(2), int(1)],
            vec![int(1), int(1)],
        ])
        .unwrap();
        let s2 = s.change_basis(&u).unwrap();
        let p = vec![int(3), int(2), int(0)];
        assert_eq!(s.fiber_membership(&p), s2.fiber_membership(&p));
    }
}
