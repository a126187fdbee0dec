//! Integer lattices: column-style Hermite normal form, saturated integer
//! kernels, and membership of rational vectors in the group generated by a
//! finite set of rational vectors.
//!
//! Membership in a group generated by rational vectors reduces exactly to an
//! integer problem: with `D` the lcm of all generator denominators, `w` is an
//! integer combination of the generators iff `D*w` is integral and lies in
//! the integer lattice spanned by the cleared generators.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::RatMatrix;
use crate::rat::{lcm_denominators, BigInt, Rat};

/// Column-style Hermite normal form of the given columns, together with the
/// unimodular transform `u` such that `input * u = hnf-padded-with-zeros`,
/// and the pivot row of each echelon column.
///
/// Canonical form: pivot rows strictly increase, pivots are positive, entries
/// to the right of a pivot in its row are zero and entries to the left are
/// reduced into `[0, pivot)`. This is unique for the generated lattice.
pub fn column_hnf_with_transform(
    dim: usize,
    input: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<usize>) {
    let k = input.len();
    for c in input {
        assert_eq!(c.len(), dim, "generator has wrong dimension");
    }
    let mut cols: Vec<Vec<BigInt>> = input.to_vec();
    let mut trans: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut processed = 0usize;
    let mut pivot_rows = Vec::new();

    let col_sub = |cols: &mut Vec<Vec<BigInt>>, trans: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for r in 0..dim {
            let v = &cols[dst][r] - q * &cols[src][r];
            cols[dst][r] = v;
        }
        for r in 0..k {
            let v = &trans[dst][r] - q * &trans[src][r];
            trans[dst][r] = v;
        }
    };

    for row in 0..dim {
        loop {
            let nonzero: Vec<usize> = (processed..k)
                .filter(|&c| !cols[c][row].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let c = nonzero[0];
                cols.swap(processed, c);
                trans.swap(processed, c);
                if cols[processed][row].is_negative() {
                    for v in cols[processed].iter_mut() {
                        *v = -v.clone();
                    }
                    for v in trans[processed].iter_mut() {
                        *v = -v.clone();
                    }
                }
                // reduce earlier columns into [0, pivot) at this row
                let pivot = cols[processed][row].clone();
                for e in 0..processed {
                    let q = cols[e][row].div_floor(&pivot);
                    col_sub(&mut cols, &mut trans, e, processed, &q);
                }
                pivot_rows.push(row);
                processed += 1;
                break;
            }
            let &cmin = nonzero
                .iter()
                .min_by_key(|&&c| cols[c][row].abs())
                .expect("nonempty");
            for &c in &nonzero {
                if c == cmin {
                    continue;
                }
                let q = &cols[c][row] / &cols[cmin][row]; // truncated division
                col_sub(&mut cols, &mut trans, c, cmin, &q);
            }
        }
    }
    cols.truncate(processed);
    (cols, trans, pivot_rows)
}

/// Whether `target` is an integer combination of echelon columns produced by
/// [`column_hnf_with_transform`]; back-substitution along the pivot rows.
fn hnf_solves(dim: usize, hnf: &[Vec<BigInt>], pivot_rows: &[usize], target: &[BigInt]) -> bool {
    let mut w = target.to_vec();
    for (i, &p) in pivot_rows.iter().enumerate() {
        let pivot = &hnf[i][p];
        let (q, rem) = w[p].div_rem(pivot);
        if !rem.is_zero() {
            return false;
        }
        if !q.is_zero() {
            for r in 0..dim {
                let v = &w[r] - &q * &hnf[i][r];
                w[r] = v;
            }
        }
    }
    w.iter().all(Zero::is_zero)
}

/// The group generated by finitely many rational vectors, held as a cleared
/// integer generating set with its cached column normal form.
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    dim: usize,
    /// Common denominator cleared out of the rational generators.
    scale: BigInt,
    gens: Vec<Vec<BigInt>>,
    normal_form: Vec<Vec<BigInt>>,
    pivot_rows: Vec<usize>,
}

impl IntegerLattice {
    pub fn from_rational_gens(dim: usize, gens: &[Vec<Rat>]) -> Result<Self, Error> {
        for g in gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "lattice generator",
                    expected: dim,
                    found: g.len(),
                });
            }
        }
        let scale = lcm_denominators(gens.iter().flatten());
        let int_gens: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| {
                        let v = x * Rat::from_integer(scale.clone());
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let (normal_form, _, pivot_rows) = column_hnf_with_transform(dim, &int_gens);
        Ok(IntegerLattice {
            dim,
            scale,
            gens: int_gens,
            normal_form,
            pivot_rows,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.normal_form.len()
    }

    /// The cleared integer generators (already multiplied by [`Self::scale`]).
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.gens
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// The cached triangular normal form, one echelon column per rank.
    pub fn normal_form(&self) -> &[Vec<BigInt>] {
        &self.normal_form
    }

    /// True iff `w` is an integer combination of the generators.
    pub fn contains(&self, w: &[Rat]) -> Result<bool, Error> {
        if w.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "lattice membership",
                expected: self.dim,
                found: w.len(),
            });
        }
        let mut scaled = Vec::with_capacity(self.dim);
        for x in w {
            let v = x * Rat::from_integer(self.scale.clone());
            if !v.is_integer() {
                return Ok(false);
            }
            scaled.push(v.to_integer());
        }
        Ok(hnf_solves(self.dim, &self.normal_form, &self.pivot_rows, &scaled))
    }

    /// Set equality of generated groups, by mutual generator membership.
    pub fn same_lattice(&self, other: &IntegerLattice) -> Result<bool, Error> {
        if self.dim != other.dim {
            return Ok(false);
        }
        let to_rat = |scale: &BigInt, v: &[BigInt]| -> Vec<Rat> {
            v.iter()
                .map(|x| Rat::new(x.clone(), scale.clone()))
                .collect()
        };
        for g in &self.gens {
            if !other.contains(&to_rat(&self.scale, g))? {
                return Ok(false);
            }
        }
        for g in &other.gens {
            if !self.contains(&to_rat(&other.scale, g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// True iff `w` is an integer combination of `gens` (all rational vectors of
/// one common dimension).
pub fn lattice_membership(w: &[Rat], gens: &[Vec<Rat>]) -> Result<bool, Error> {
    let lat = IntegerLattice::from_rational_gens(w.len(), gens)?;
    lat.contains(w)
}

/// A basis of the full integer kernel `{x in Z^n : A*x = 0}`.
///
/// Denominators are cleared per row, then the unimodular column transform of
/// the Hermite form is read off: transform columns mapping to zero columns
/// form a saturated basis of the kernel lattice.
pub fn integer_kernel(a: &RatMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let d = lcm_denominators(a.row(r).iter());
        int_rows.push(
            a.row(r)
                .iter()
                .map(|x| {
                    let v = x * Rat::from_integer(d.clone());
                    v.to_integer()
                })
                .collect(),
        );
    }
    // columns of the n x n transform acting on the columns of `int_rows`
    let cols: Vec<Vec<BigInt>> = (0..n)
        .map(|c| int_rows.iter().map(|row| row[c].clone()).collect())
        .collect();
    let (hnf, trans, _) = column_hnf_with_transform(a.rows(), &cols);
    let rank = hnf.len();
    // the transform columns beyond the echelon rank map onto zero columns
    trans[rank..].to_vec()
}
