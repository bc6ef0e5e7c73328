//! Primal active-set method for convex quadratic programs with equality
//! constraints and variable bounds.
//!
//! The working set holds variables pinned at a bound. Each iteration
//! minimizes the objective over the remaining free variables in the null
//! space of the equalities. When the reduced Hessian is singular and the
//! reduced gradient is not in its range, the step follows a zero-curvature
//! descent direction to the nearest bound. The equality matrix must have
//! full row rank and the working set is kept small enough that the free
//! columns retain that rank, so multipliers are unique.

use crate::error::{Error, Result};
use crate::lexopt::dense::{dot, solve_psd, Matrix, PsdSolve};
use crate::scalar::Scalar;

const MAX_ITERATIONS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pin {
    Free,
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum ActiveSetOutcome<T> {
    Optimal(Vec<T>),
    Unbounded,
}

fn free_columns<T: Scalar>(a: &Matrix<T>, free: &[usize]) -> Matrix<T> {
    Matrix::from_fn(a.rows, free.len(), |i, k| a[(i, free[k])])
}

/// Minimizes `0.5 x'Gx + c'x` s.t. `a x = b`, bounds, from feasible `x`.
pub(crate) fn minimize<T: Scalar>(
    g: &Matrix<T>,
    c: &[T],
    a: &Matrix<T>,
    lower: &[T],
    upper: &[Option<T>],
    mut x: Vec<T>,
    tol: T,
) -> Result<ActiveSetOutcome<T>> {
    let n = x.len();
    let rows = a.rows;
    let mut pin = vec![Pin::Free; n];
    for j in 0..n {
        if x[j] - lower[j] <= tol {
            pin[j] = Pin::Lower;
            x[j] = lower[j];
        } else if let Some(u) = upper[j] {
            if u - x[j] <= tol {
                pin[j] = Pin::Upper;
                x[j] = u;
            }
        }
    }
    // Release pinned variables until the free columns span the row space.
    let free_of = |pin: &[Pin]| -> Vec<usize> { (0..n).filter(|&j| pin[j] == Pin::Free).collect() };
    let mut rank = free_columns(a, &free_of(&pin)).rank(tol);
    for j in 0..n {
        if rank == rows {
            break;
        }
        if pin[j] == Pin::Free {
            continue;
        }
        let saved = pin[j];
        pin[j] = Pin::Free;
        let r = free_columns(a, &free_of(&pin)).rank(tol);
        if r > rank {
            rank = r;
        } else {
            pin[j] = saved;
        }
    }

    for _ in 0..MAX_ITERATIONS {
        let free = free_of(&pin);
        let grad: Vec<T> = g.mul_vec(&x).iter().zip(c).map(|(&gx, &ci)| gx + ci).collect();
        let grad_free: Vec<T> = free.iter().map(|&j| grad[j]).collect();

        let a_free = free_columns(a, &free);
        let basis = if free.is_empty() { Vec::new() } else { a_free.null_space(tol) };
        let mut step = vec![T::zero(); free.len()];
        let mut newton = true;
        if !basis.is_empty() {
            let z = basis.len();
            // Columns of G restricted to free rows/cols, times each basis vector.
            let gz: Vec<Vec<T>> = basis
                .iter()
                .map(|v| {
                    free.iter()
                        .map(|&r| free.iter().zip(v).fold(T::zero(), |s, (&cidx, &vk)| s + g[(r, cidx)] * vk))
                        .collect()
                })
                .collect();
            let h = Matrix::from_fn(z, z, |p, q| dot(&basis[p], &gz[q]));
            let neg_reduced: Vec<T> = basis.iter().map(|v| -dot(v, &grad_free)).collect();
            let w = match solve_psd(&h, &neg_reduced, tol) {
                PsdSolve::Solution(w) => w,
                PsdSolve::Inconsistent(d) => {
                    newton = false;
                    d
                }
            };
            for (k, v) in basis.iter().enumerate() {
                for (s, &vi) in step.iter_mut().zip(v) {
                    *s = *s + w[k] * vi;
                }
            }
        }

        let x_scale = x.iter().fold(T::one(), |m, v| m.max_of(v.abs()));
        let step_size = step.iter().fold(T::zero(), |m, v| m.max_of(v.abs()));
        if newton && step_size <= tol * x_scale {
            // Multipliers of the equalities from the free components, then
            // of each pinned bound from the remaining gradient.
            let lambda = if rows == 0 {
                Vec::new()
            } else {
                let aat = Matrix::from_fn(rows, rows, |p, q| dot(a_free.row(p), a_free.row(q)));
                let rhs = a_free.mul_vec(&grad_free);
                match solve_psd(&aat, &rhs, tol) {
                    PsdSolve::Solution(l) => l,
                    PsdSolve::Inconsistent(_) => {
                        return Err(Error::Internal(
                            "active set lost full row rank".to_string(),
                        ))
                    }
                }
            };
            let at_lambda = a.transpose_mul_vec(&lambda);
            let g_scale = grad.iter().fold(T::one(), |m, v| m.max_of(v.abs()));
            let mut worst: Option<(T, usize)> = None;
            for j in 0..n {
                let mu = grad[j] - at_lambda[j];
                let violation = match pin[j] {
                    Pin::Lower => -mu,
                    Pin::Upper => mu,
                    Pin::Free => continue,
                };
                if violation > tol * g_scale && worst.is_none_or(|(v, _)| violation > v) {
                    worst = Some((violation, j));
                }
            }
            match worst {
                None => return Ok(ActiveSetOutcome::Optimal(x)),
                Some((_, j)) => {
                    pin[j] = Pin::Free;
                    continue;
                }
            }
        }

        let p_tol = tol * step_size;
        let mut alpha: Option<T> = if newton { Some(T::one()) } else { None };
        let mut blocking: Option<(usize, Pin)> = None;
        for (k, &j) in free.iter().enumerate() {
            let p = step[k];
            let (limit, bound) = if p < -p_tol {
                ((x[j] - lower[j]) / -p, Pin::Lower)
            } else if p > p_tol {
                match upper[j] {
                    Some(u) => ((u - x[j]) / p, Pin::Upper),
                    None => continue,
                }
            } else {
                continue;
            };
            let limit = limit.max_of(T::zero());
            if alpha.is_none_or(|a| limit < a) {
                alpha = Some(limit);
                blocking = Some((j, bound));
            }
        }
        let Some(alpha) = alpha else {
            return Ok(ActiveSetOutcome::Unbounded);
        };
        for (k, &j) in free.iter().enumerate() {
            let v = x[j] + alpha * step[k];
            let v = v.max_of(lower[j]);
            x[j] = match upper[j] {
                Some(u) => v.min_of(u),
                None => v,
            };
        }
        if let Some((j, bound)) = blocking {
            pin[j] = bound;
            x[j] = match bound {
                Pin::Upper => upper[j].unwrap(),
                _ => lower[j],
            };
        }
    }
    Err(Error::Internal(format!(
        "active-set method exceeded {MAX_ITERATIONS} iterations"
    )))
}
