//! Dense bounded-variable primal simplex with Bland's rule.
//!
//! Variables are shifted so every lower bound is zero; a nonbasic variable
//! sits at zero or at its upper bound. Phase one starts from an all-
//! artificial basis. Entering variables are the lowest-index eligible ones
//! and ratio-test ties go to the lowest variable index, which makes the
//! pivot sequence a pure function of the input.

use crate::error::{Error, Result};
use crate::lexopt::dense::Matrix;
use crate::scalar::Scalar;

const MAX_PIVOTS: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum SimplexOutcome<T> {
    Optimal { x: Vec<T>, duals: Vec<T> },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Basic,
    Lower,
    Upper,
}

struct Tableau<T> {
    t: Matrix<T>,
    basis: Vec<usize>,
    value: Vec<T>,
    upper: Vec<Option<T>>,
    status: Vec<Status>,
    excluded: Vec<bool>,
    tol: T,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn reduced_cost(&self, cost: &[T], j: usize) -> T {
        let mut d = cost[j];
        for (i, &bv) in self.basis.iter().enumerate() {
            let a = self.t[(i, j)];
            if a != T::zero() {
                d = d - cost[bv] * a;
            }
        }
        d
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let cols = self.t.cols;
        let p = self.t[(row, col)];
        for j in 0..cols {
            self.t[(row, j)] = self.t[(row, j)] / p;
        }
        self.t[(row, col)] = T::one();
        for i in 0..self.t.rows {
            if i == row {
                continue;
            }
            let f = self.t[(i, col)];
            if f == T::zero() {
                continue;
            }
            for j in 0..cols {
                let v = self.t[(row, j)];
                if v != T::zero() {
                    self.t[(i, j)] = self.t[(i, j)] - f * v;
                }
            }
            self.t[(i, col)] = T::zero();
        }
        let leaving = self.basis[row];
        self.status[leaving] = Status::Lower;
        self.basis[row] = col;
        self.status[col] = Status::Basic;
    }

    fn run(&mut self, cost: &[T]) -> Result<Step> {
        let total = self.t.cols;
        for _ in 0..MAX_PIVOTS {
            let entering = (0..total).find_map(|j| {
                if self.status[j] == Status::Basic || self.excluded[j] {
                    return None;
                }
                let d = self.reduced_cost(cost, j);
                match self.status[j] {
                    Status::Lower if d < -self.tol => Some((j, T::one())),
                    Status::Upper if d > self.tol => Some((j, -T::one())),
                    _ => None,
                }
            });
            let Some((j, dir)) = entering else {
                return Ok(Step::Optimal);
            };

            // (step length, variable index, row or None for a bound flip, hits upper)
            let mut best: Option<(T, usize, Option<usize>, bool)> = None;
            let mut consider = |cand: (T, usize, Option<usize>, bool)| {
                let better = match &best {
                    None => true,
                    Some(b) => cand.0 < b.0 || (cand.0 == b.0 && cand.1 < b.1),
                };
                if better {
                    best = Some(cand);
                }
            };
            if let Some(u) = self.upper[j] {
                consider((u, j, None, dir > T::zero()));
            }
            for i in 0..self.t.rows {
                let alpha = dir * self.t[(i, j)];
                let bv = self.basis[i];
                let x = self.value[bv];
                if alpha > self.tol {
                    consider(((x / alpha).max_of(T::zero()), bv, Some(i), false));
                } else if alpha < -self.tol {
                    if let Some(u) = self.upper[bv] {
                        consider((((u - x) / -alpha).max_of(T::zero()), bv, Some(i), true));
                    }
                }
            }
            let Some((step, var, row, hits_upper)) = best else {
                return Ok(Step::Unbounded);
            };

            if step != T::zero() {
                self.value[j] = self.value[j] + dir * step;
                for i in 0..self.t.rows {
                    let a = self.t[(i, j)];
                    if a != T::zero() {
                        let bv = self.basis[i];
                        self.value[bv] = self.value[bv] - dir * a * step;
                    }
                }
            }
            match row {
                None => {
                    self.status[j] = if hits_upper { Status::Upper } else { Status::Lower };
                    self.value[j] = if hits_upper { self.upper[j].unwrap() } else { T::zero() };
                }
                Some(r) => {
                    self.pivot(r, j);
                    if hits_upper {
                        self.status[var] = Status::Upper;
                        self.value[var] = self.upper[var].unwrap();
                    } else {
                        self.value[var] = T::zero();
                    }
                }
            }
        }
        Err(Error::Internal(format!(
            "simplex exceeded {MAX_PIVOTS} pivots"
        )))
    }
}

/// Minimizes `cost . x` subject to `a x = b` and `lower <= x <= upper`.
pub(crate) fn solve<T: Scalar>(
    a: &Matrix<T>,
    b: &[T],
    cost: &[T],
    lower: &[T],
    upper: &[Option<T>],
    tol: T,
) -> Result<SimplexOutcome<T>> {
    let (rows, n) = (a.rows, a.cols);
    let total = n + rows;
    let shifted_upper: Vec<Option<T>> = upper
        .iter()
        .zip(lower)
        .map(|(u, &l)| u.map(|u| (u - l).max_of(T::zero())))
        .collect();
    let rhs: Vec<T> = (0..rows)
        .map(|i| b[i] - a.row(i).iter().zip(lower).fold(T::zero(), |s, (&x, &l)| s + x * l))
        .collect();
    let sign: Vec<T> = rhs
        .iter()
        .map(|&v| if v < T::zero() { -T::one() } else { T::one() })
        .collect();

    let mut t = Matrix::zeros(rows, total);
    for i in 0..rows {
        for j in 0..n {
            t[(i, j)] = sign[i] * a[(i, j)];
        }
        t[(i, n + i)] = T::one();
    }
    let mut value = vec![T::zero(); total];
    for i in 0..rows {
        value[n + i] = sign[i] * rhs[i];
    }
    let mut status = vec![Status::Lower; total];
    for i in 0..rows {
        status[n + i] = Status::Basic;
    }
    let mut up = shifted_upper.clone();
    up.extend(std::iter::repeat_n(None, rows));
    let mut excluded: Vec<bool> = shifted_upper.iter().map(|u| *u == Some(T::zero())).collect();
    excluded.extend(std::iter::repeat_n(false, rows));

    let mut tab = Tableau {
        t,
        basis: (n..total).collect(),
        value,
        upper: up,
        status,
        excluded,
        tol,
    };

    let rhs_scale = rhs.iter().fold(T::one(), |m, v| m.max_of(v.abs()));
    if rows > 0 {
        let mut phase_one = vec![T::zero(); total];
        for c in &mut phase_one[n..] {
            *c = T::one();
        }
        tab.run(&phase_one)?;
        let infeasibility = (n..total).fold(T::zero(), |s, j| s + tab.value[j]);
        if infeasibility > tol * rhs_scale * T::from_count(rows) {
            return Ok(SimplexOutcome::Infeasible);
        }
        // Swap any artificial still in the basis for a structural column.
        // Rows with no usable column are redundant and keep their zero
        // artificial.
        for i in 0..rows {
            if tab.basis[i] < n {
                continue;
            }
            let pick = |fixed_ok: bool| {
                (0..n).find(|&j| {
                    tab.status[j] != Status::Basic
                        && (fixed_ok || !tab.excluded[j])
                        && tab.t[(i, j)].abs() > tol
                })
            };
            if let Some(j) = pick(false).or_else(|| pick(true)) {
                let art = tab.basis[i];
                tab.pivot(i, j);
                tab.value[art] = T::zero();
            }
        }
        for j in n..total {
            tab.excluded[j] = true;
            if tab.status[j] != Status::Basic {
                tab.value[j] = T::zero();
            }
        }
    }

    let mut phase_two = cost.to_vec();
    phase_two.extend(std::iter::repeat_n(T::zero(), rows));
    if let Step::Unbounded = tab.run(&phase_two)? {
        return Ok(SimplexOutcome::Unbounded);
    }

    let x = (0..n)
        .map(|j| {
            let v = tab.value[j].max_of(T::zero());
            let v = match shifted_upper[j] {
                Some(u) => v.min_of(u),
                None => v,
            };
            v + lower[j]
        })
        .collect();
    let duals = (0..rows)
        .map(|i| {
            let y = tab
                .basis
                .iter()
                .enumerate()
                .fold(T::zero(), |s, (k, &bv)| s + phase_two[bv] * tab.t[(k, n + i)]);
            sign[i] * y
        })
        .collect();
    Ok(SimplexOutcome::Optimal { x, duals })
}
