//! Exact rational linear programming.
//!
//! Two-phase primal simplex over arbitrary-precision rationals with Bland's
//! least-index anti-cycling rule, so every solve terminates and reruns are
//! bit-identical. Variables are free (unrestricted sign); internally each is
//! split into a difference of two nonnegative variables, inequality rows get
//! slacks and phase one starts from a full artificial basis.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::linalg::{dot, RatMatrix};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Stop after phase one and report any exact feasible point.
    Feasibility,
    Maximize(Vec<Rat>),
    Minimize(Vec<Rat>),
}

/// A linear program over free rational variables. All inequality rows are
/// normalized to the sense `row * x <= rhs`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub vars: usize,
    pub eq: RatMatrix,
    pub eq_rhs: Vec<Rat>,
    pub le: RatMatrix,
    pub le_rhs: Vec<Rat>,
    pub objective: Objective,
}

impl LinearProgram {
    pub fn feasibility(vars: usize) -> Self {
        LinearProgram {
            vars,
            eq: RatMatrix::empty(vars),
            eq_rhs: Vec::new(),
            le: RatMatrix::empty(vars),
            le_rhs: Vec::new(),
            objective: Objective::Feasibility,
        }
    }

    pub fn maximize(vars: usize, c: Vec<Rat>) -> Self {
        let mut p = Self::feasibility(vars);
        p.objective = Objective::Maximize(c);
        p
    }

    pub fn minimize(vars: usize, c: Vec<Rat>) -> Self {
        let mut p = Self::feasibility(vars);
        p.objective = Objective::Minimize(c);
        p
    }

    /// Adds `row * x = rhs`.
    pub fn push_eq(&mut self, row: Vec<Rat>, rhs: Rat) -> Result<(), Error> {
        self.eq.push_row(row)?;
        self.eq_rhs.push(rhs);
        Ok(())
    }

    /// Adds `row * x <= rhs`.
    pub fn push_le(&mut self, row: Vec<Rat>, rhs: Rat) -> Result<(), Error> {
        self.le.push_row(row)?;
        self.le_rhs.push(rhs);
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpVerdict {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
    Feasible { point: Vec<Rat> },
}

struct Tableau {
    /// Constraint rows; each row has `ncols` entries plus the rhs at the end.
    rows: Vec<Vec<Rat>>,
    /// Basic variable (column index) of each row.
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut Vec<Rat>) {
        let inv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / inv.clone();
        }
        for rr in 0..self.rows.len() {
            if rr == r || self.rows[rr][c].is_zero() {
                continue;
            }
            let f = self.rows[rr][c].clone();
            for k in 0..=self.ncols {
                let v = self.rows[rr][k].clone() - f.clone() * self.rows[r][k].clone();
                self.rows[rr][k] = v;
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for k in 0..=self.ncols {
                let v = obj[k].clone() - f.clone() * self.rows[r][k].clone();
                obj[k] = v;
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes the objective row in place. Bland's rule: entering column is
    /// the lowest index with negative reduced cost; the leaving row is the
    /// ratio-test minimizer with the lowest basic-variable index.
    fn run(&mut self, obj: &mut Vec<Rat>, allowed_cols: usize) -> Result<(), usize> {
        loop {
            let Some(enter) = (0..allowed_cols).find(|&c| obj[c].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let coef = &self.rows[r][enter];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r).clone() / coef.clone();
                let better = match &leave {
                    None => true,
                    Some((br, bratio)) => {
                        ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter, obj),
                None => return Err(enter),
            }
        }
    }
}

/// Exact simplex solve. Returned points satisfy every constraint exactly, and
/// the deterministic pivot rule makes repeated solves bit-identical.
pub fn lp_solve(p: &LinearProgram) -> Result<LpVerdict, Error> {
    let n = p.vars;
    if p.eq.cols() != n || p.le.cols() != n {
        return Err(Error::DimensionMismatch {
            context: "linear program rows",
            expected: n,
            found: if p.eq.cols() != n { p.eq.cols() } else { p.le.cols() },
        });
    }
    if p.eq_rhs.len() != p.eq.rows() || p.le_rhs.len() != p.le.rows() {
        return Err(Error::BadInput("rhs length does not match row count"));
    }
    if let Objective::Maximize(c) | Objective::Minimize(c) = &p.objective {
        if c.len() != n {
            return Err(Error::DimensionMismatch {
                context: "objective",
                expected: n,
                found: c.len(),
            });
        }
    }

    let m_le = p.le.rows();
    let m = m_le + p.eq.rows();
    // columns: u_0..u_{n-1}, v_0..v_{n-1} (x = u - v), slacks, artificials
    let structural = 2 * n + m_le;
    let ncols = structural + m;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let build_row = |coefs: &[Rat], slack: Option<usize>, rhs: &Rat, art: usize| {
        let mut row = vec![Rat::zero(); ncols + 1];
        for (j, a) in coefs.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a.clone();
        }
        if let Some(s) = slack {
            row[2 * n + s] = crate::rat::int(1);
        }
        row[ncols] = rhs.clone();
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[structural + art] = crate::rat::int(1);
        row
    };
    for r in 0..m_le {
        rows.push(build_row(p.le.row(r), Some(r), &p.le_rhs[r], r));
    }
    for r in 0..p.eq.rows() {
        rows.push(build_row(p.eq.row(r), None, &p.eq_rhs[r], m_le + r));
    }

    let mut tab = Tableau {
        rows,
        basis: (structural..ncols).collect(),
        ncols,
    };

    // Phase one: minimize the sum of artificials. Reduced costs of the
    // artificial basis: -sum of the constraint rows on structural columns.
    let mut obj = vec![Rat::zero(); ncols + 1];
    for r in 0..m {
        for k in 0..structural {
            let v = obj[k].clone() - tab.rows[r][k].clone();
            obj[k] = v;
        }
        let v = obj[ncols].clone() - tab.rows[r][ncols].clone();
        obj[ncols] = v;
    }
    if tab.run(&mut obj, structural).is_err() {
        return Err(Error::Internal("phase one cannot be unbounded"));
    }
    // objective value is -obj[ncols]
    if !obj[ncols].is_zero() {
        return Ok(LpVerdict::Infeasible);
    }
    // Drive remaining artificials out of the basis; rows that cannot pivot
    // are redundant and get dropped.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= structural {
            match (0..structural).find(|&c| !tab.rows[r][c].is_zero()) {
                Some(c) => tab.pivot(r, c, &mut obj),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let extract = |tab: &Tableau| -> Vec<Rat> {
        let mut x = vec![Rat::zero(); n];
        for (r, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] += tab.rhs(r);
            } else if b < 2 * n {
                x[b - n] -= tab.rhs(r);
            }
        }
        x
    };

    let verify = |x: &[Rat]| -> Result<(), Error> {
        for r in 0..p.eq.rows() {
            if dot(p.eq.row(r), x) != p.eq_rhs[r] {
                return Err(Error::Internal("simplex returned an infeasible point"));
            }
        }
        for r in 0..p.le.rows() {
            if dot(p.le.row(r), x) > p.le_rhs[r] {
                return Err(Error::Internal("simplex returned an infeasible point"));
            }
        }
        Ok(())
    };

    let costs: Vec<Rat> = match &p.objective {
        Objective::Feasibility => {
            let x = extract(&tab);
            verify(&x)?;
            return Ok(LpVerdict::Feasible { point: x });
        }
        // Internally we always minimize.
        Objective::Minimize(c) => c.clone(),
        Objective::Maximize(c) => c.iter().map(|v| -v.clone()).collect(),
    };

    // Phase two objective: reduced costs of the current basis.
    let mut obj = vec![Rat::zero(); ncols + 1];
    for (j, c) in costs.iter().enumerate() {
        obj[j] = c.clone();
        obj[n + j] = -c.clone();
    }
    for r in 0..tab.rows.len() {
        let b = tab.basis[r];
        let cb = obj[b].clone();
        if cb.is_zero() {
            continue;
        }
        for k in 0..=ncols {
            let v = obj[k].clone() - cb.clone() * tab.rows[r][k].clone();
            obj[k] = v;
        }
    }
    if tab.run(&mut obj, structural).is_err() {
        return Ok(LpVerdict::Unbounded);
    }
    let x = extract(&tab);
    verify(&x)?;
    let value = match &p.objective {
        Objective::Maximize(c) | Objective::Minimize(c) => dot(c, &x),
        Objective::Feasibility => unreachable!(),
    };
    Ok(LpVerdict::Optimal { value, point: x })
}
