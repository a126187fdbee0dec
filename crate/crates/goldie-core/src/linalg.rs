//! Dense exact rational matrices, Gauss-Jordan elimination, linear solving
//! and kernel bases.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::rat::Rat;

/// Dense row-major rational matrix. Dimensions are fixed at construction;
/// there is no implicit broadcasting anywhere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = crate::rat::int(1);
        }
        m
    }

    /// Builds a matrix from rows, all of which must share one width.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix rows",
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        Ok(RatMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// A matrix with zero rows but a definite column count.
    pub fn empty(cols: usize) -> Self {
        RatMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Rat>) -> Result<(), Error> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "pushed row",
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows += 1;
        self.data.extend(row);
        Ok(())
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// The submatrix made of the selected columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zero(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                *out.at_mut(r, k) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix * vector",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn mul_mat(&self, other: &RatMatrix) -> Result<RatMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix * matrix",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        reduced_row_echelon(self, None).pivot_cols.len()
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Result of Gauss-Jordan elimination, optionally on an augmented system.
pub struct Echelon {
    pub mat: RatMatrix,
    pub rhs: Vec<Rat>,
    pub pivot_cols: Vec<usize>,
    /// With a right-hand side: false iff some zero row has nonzero rhs.
    pub consistent: bool,
}

/// Full reduced row echelon form with exact arithmetic. Pivot choice is the
/// first nonzero entry scanning down each column, so the result is
/// deterministic.
pub fn reduced_row_echelon(a: &RatMatrix, b: Option<&[Rat]>) -> Echelon {
    let mut mat = a.clone();
    let mut rhs: Vec<Rat> = match b {
        Some(v) => {
            assert_eq!(v.len(), a.rows(), "rhs length must match row count");
            v.to_vec()
        }
        None => vec![Rat::zero(); a.rows()],
    };
    let (m, n) = (mat.rows(), mat.cols());
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&r| !mat.at(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..n {
                let tmp = mat.at(p, c).clone();
                *mat.at_mut(p, c) = mat.at(row, c).clone();
                *mat.at_mut(row, c) = tmp;
            }
            rhs.swap(p, row);
        }
        let inv = mat.at(row, col).clone();
        for c in 0..n {
            let v = mat.at(row, c).clone() / inv.clone();
            *mat.at_mut(row, c) = v;
        }
        rhs[row] = rhs[row].clone() / inv;
        for r in 0..m {
            if r != row && !mat.at(r, col).is_zero() {
                let factor = mat.at(r, col).clone();
                for c in 0..n {
                    let v = mat.at(r, c).clone() - factor.clone() * mat.at(row, c).clone();
                    *mat.at_mut(r, c) = v;
                }
                rhs[r] = rhs[r].clone() - factor * rhs[row].clone();
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let consistent = (row..m).all(|r| rhs[r].is_zero());
    Echelon {
        mat,
        rhs,
        pivot_cols,
        consistent,
    }
}

/// One exact solution of `A*x = b` with free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve_linear(a: &RatMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>, Error> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "solve_linear rhs",
            expected: a.rows(),
            found: b.len(),
        });
    }
    let ech = reduced_row_echelon(a, Some(b));
    if !ech.consistent {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (t, &col) in ech.pivot_cols.iter().enumerate() {
        x[col] = ech.rhs[t].clone();
    }
    Ok(Some(x))
}

/// A rational basis of the kernel `{x : A*x = 0}`; empty for trivial kernel.
/// One basis vector per free column, that free coordinate set to 1.
pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<Rat>> {
    let ech = reduced_row_echelon(a, None);
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &c in &ech.pivot_cols {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in 0..n {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[f] = crate::rat::int(1);
        for (t, &p) in ech.pivot_cols.iter().enumerate() {
            v[p] = -ech.mat.at(t, f).clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn solve_single_equation() {
        let a = m(&[&[1, 1]]);
        let x = solve_linear(&a, &[int(5)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![int(5)]);
    }

    #[test]
    fn solve_identity() {
        let a = m(&[&[1, 0], &[0, 1]]);
        let x = solve_linear(&a, &[int(2), int(3)]).unwrap().unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_linear(&a, &[int(0), int(1)]).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = m(&[&[1, 1]]);
        assert!(solve_linear(&a, &[int(1), int(2)]).is_err());
    }

    /// Membership of `v` in the span of `basis`, by solving.
    fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
        if basis.is_empty() {
            return v.iter().all(Rat::is_zero);
        }
        let cols = RatMatrix::from_rows(
            (0..v.len())
                .map(|i| basis.iter().map(|b| b[i].clone()).collect())
                .collect(),
        )
        .unwrap();
        solve_linear(&cols, v).unwrap().is_some()
    }

    #[test]
    fn kernel_one_by_two() {
        let a = m(&[&[1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(in_span(&k, &[int(1), int(-1)]));
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn kernel_rank_nullity() {
        let a = m(&[&[1, 1, 0]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        assert!(in_span(&k, &[int(1), int(-1), int(0)]));
        assert!(in_span(&k, &[int(0), int(0), int(1)]));
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn kernel_full_rank() {
        let a = m(&[&[1, 0], &[0, 1]]);
        assert!(kernel_basis(&a).is_empty());
    }

    #[test]
    fn rank_and_fractions() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), int(1)],
        ])
        .unwrap();
        assert_eq!(a.rank(), 1);
    }
}
