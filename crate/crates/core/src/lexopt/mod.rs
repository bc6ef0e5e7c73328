//! Linear and convex quadratic programming over equality constraints and
//! variable bounds, as needed by the staged restoration solves.
//!
//! Both solvers are deterministic: identical inputs produce identical
//! pivot sequences and identical outputs.

mod active_set;
pub(crate) mod dense;
mod simplex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use dense::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds<T> {
    pub lower: T,
    /// `None` means unbounded above.
    pub upper: Option<T>,
}

impl<T: Scalar> Bounds<T> {
    pub fn new(lower: T, upper: T) -> Self {
        Bounds {
            lower,
            upper: Some(upper),
        }
    }

    pub fn fixed(value: T) -> Self {
        Self::new(value, value)
    }

    pub fn non_negative() -> Self {
        Bounds {
            lower: T::zero(),
            upper: None,
        }
    }
}

/// Sparse linear equality `sum coeff * x[var] = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equality<T> {
    pub coeffs: Vec<(usize, T)>,
    pub rhs: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    pub sense: Sense,
    pub objective: Vec<T>,
    pub equalities: Vec<Equality<T>>,
    pub bounds: Vec<Bounds<T>>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            sense,
            objective: Vec::new(),
            equalities: Vec::new(),
            bounds: Vec::new(),
        }
    }

    pub fn add_var(&mut self, cost: T, bounds: Bounds<T>) -> usize {
        self.objective.push(cost);
        self.bounds.push(bounds);
        self.objective.len() - 1
    }

    pub fn add_equality(&mut self, coeffs: Vec<(usize, T)>, rhs: T) {
        self.equalities.push(Equality { coeffs, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }
}

/// `weight * (sum coeff * x[var])^2`; positive semidefinite for any
/// non-negative weight.
#[derive(Clone, Debug, PartialEq)]
pub struct SquaredForm<T> {
    pub weight: T,
    pub coeffs: Vec<(usize, T)>,
}

/// Minimize a sum of weighted squared linear forms plus a linear term.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticProgram<T> {
    pub squares: Vec<SquaredForm<T>>,
    pub linear: Vec<T>,
    pub equalities: Vec<Equality<T>>,
    pub bounds: Vec<Bounds<T>>,
}

impl<T: Scalar> QuadraticProgram<T> {
    /// Starts from the constraints of `lp`, with a zero objective.
    pub fn over_feasible_set_of(lp: &LinearProgram<T>) -> Self {
        QuadraticProgram {
            squares: Vec::new(),
            linear: vec![T::zero(); lp.num_vars()],
            equalities: lp.equalities.clone(),
            bounds: lp.bounds.clone(),
        }
    }

    /// Adds `(x[a] - x[b])^2`.
    pub fn add_squared_difference(&mut self, a: usize, b: usize) {
        self.squares.push(SquaredForm {
            weight: T::one(),
            coeffs: vec![(a, T::one()), (b, -T::one())],
        });
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        let quad = self.squares.iter().fold(T::zero(), |s, sq| {
            let v = sq.coeffs.iter().fold(T::zero(), |a, &(j, c)| a + c * x[j]);
            s + sq.weight * v * v
        });
        quad + self.linear.iter().zip(x).fold(T::zero(), |s, (&c, &v)| s + c * v)
    }

    fn hessian(&self) -> Matrix<T> {
        let n = self.bounds.len();
        let mut h = Matrix::zeros(n, n);
        let two = T::one() + T::one();
        for sq in &self.squares {
            for &(i, ci) in &sq.coeffs {
                for &(j, cj) in &sq.coeffs {
                    h[(i, j)] = h[(i, j)] + two * sq.weight * ci * cj;
                }
            }
        }
        h
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub x: Vec<T>,
    pub objective: T,
    /// Multiplier per equality row, in the problem's own sense: at the
    /// optimum, `objective - A'y` is sign-consistent with the bounds.
    pub duals: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal(LpSolution<T>),
    Infeasible,
    Unbounded,
}

impl<T> LpOutcome<T> {
    pub fn optimal(self) -> Option<LpSolution<T>> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QpSolution<T> {
    pub x: Vec<T>,
    pub objective: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QpOutcome<T> {
    Optimal(QpSolution<T>),
    Infeasible,
    Unbounded,
}

impl<T> QpOutcome<T> {
    pub fn optimal(self) -> Option<QpSolution<T>> {
        match self {
            QpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

fn check_shape<T: Scalar>(n: usize, equalities: &[Equality<T>], bounds: &[Bounds<T>], costs: usize) -> Result<()> {
    if costs != n {
        return Err(Error::DimensionMismatch {
            what: "objective",
            expected: n,
            found: costs,
        });
    }
    for (j, b) in bounds.iter().enumerate() {
        if let Some(u) = b.upper {
            if b.lower > u {
                return Err(Error::invalid(
                    "bounds",
                    format!("variable {j} has lower {} above upper {u}", b.lower),
                ));
            }
        }
    }
    for (r, eq) in equalities.iter().enumerate() {
        if let Some(&(j, _)) = eq.coeffs.iter().find(|(j, _)| *j >= n) {
            return Err(Error::invalid(
                "equality",
                format!("row {r} references variable {j} of {n}"),
            ));
        }
    }
    Ok(())
}

/// Problem with fixed variables substituted out and the equality system
/// replaced by an equivalent full-row-rank one.
struct Reduced<T> {
    /// Original index of each remaining variable.
    keep: Vec<usize>,
    /// Values of every original variable that was fixed.
    fixed: Vec<Option<T>>,
    a: Matrix<T>,
    b: Vec<T>,
    lower: Vec<T>,
    upper: Vec<Option<T>>,
}

enum Presolve<T> {
    Reduced(Reduced<T>),
    Infeasible,
}

fn presolve<T: Scalar>(equalities: &[Equality<T>], bounds: &[Bounds<T>], tol: T) -> Presolve<T> {
    let n = bounds.len();
    let fixed: Vec<Option<T>> = bounds
        .iter()
        .map(|b| (b.upper == Some(b.lower)).then_some(b.lower))
        .collect();
    let keep: Vec<usize> = (0..n).filter(|&j| fixed[j].is_none()).collect();
    let mut column = vec![usize::MAX; n];
    for (k, &j) in keep.iter().enumerate() {
        column[j] = k;
    }
    let k = keep.len();
    let mut aug = Matrix::zeros(equalities.len(), k + 1);
    for (r, eq) in equalities.iter().enumerate() {
        let mut rhs = eq.rhs;
        for &(j, c) in &eq.coeffs {
            match fixed[j] {
                Some(v) => rhs = rhs - c * v,
                None => aug[(r, column[j])] = aug[(r, column[j])] + c,
            }
        }
        aug[(r, k)] = rhs;
    }
    let pivots = aug.rref(k, tol);
    let rank = pivots.len();
    let rhs_scale = (0..aug.rows).fold(T::one(), |m, r| m.max_of(aug[(r, k)].abs()));
    for r in rank..aug.rows {
        if aug[(r, k)].abs() > tol * rhs_scale {
            return Presolve::Infeasible;
        }
    }
    let a = Matrix::from_fn(rank, k, |i, j| aug[(i, j)]);
    let b = (0..rank).map(|i| aug[(i, k)]).collect();
    Presolve::Reduced(Reduced {
        lower: keep.iter().map(|&j| bounds[j].lower).collect(),
        upper: keep.iter().map(|&j| bounds[j].upper).collect(),
        keep,
        fixed,
        a,
        b,
    })
}

impl<T: Scalar> Reduced<T> {
    fn expand(&self, x: &[T]) -> Vec<T> {
        let mut full: Vec<T> = self.fixed.iter().map(|f| f.unwrap_or_else(T::zero)).collect();
        for (k, &j) in self.keep.iter().enumerate() {
            full[j] = x[k];
        }
        full
    }
}

/// Solves `problem`; `tol` is a relative tolerance for problems whose data
/// are of order one (zero for exact scalars).
pub fn solve_lp<T: Scalar>(problem: &LinearProgram<T>, tol: T) -> Result<LpOutcome<T>> {
    let n = problem.num_vars();
    check_shape(n, &problem.equalities, &problem.bounds, problem.objective.len())?;
    let sign = match problem.sense {
        Sense::Minimize => T::one(),
        Sense::Maximize => -T::one(),
    };
    // Rows are kept as given (rather than row-reduced) so that the duals
    // refer to the caller's equalities.
    let fixed: Vec<Option<T>> = problem
        .bounds
        .iter()
        .map(|b| (b.upper == Some(b.lower)).then_some(b.lower))
        .collect();
    let a = Matrix::from_fn(problem.equalities.len(), n, |_, _| T::zero());
    let mut a = a;
    for (r, eq) in problem.equalities.iter().enumerate() {
        for &(j, c) in &eq.coeffs {
            a[(r, j)] = a[(r, j)] + c;
        }
    }
    let b: Vec<T> = problem.equalities.iter().map(|e| e.rhs).collect();
    let cost: Vec<T> = problem.objective.iter().map(|&c| sign * c).collect();
    let lower: Vec<T> = problem.bounds.iter().map(|b| b.lower).collect();
    let upper: Vec<Option<T>> = problem
        .bounds
        .iter()
        .zip(&fixed)
        .map(|(b, f)| f.or(b.upper))
        .collect();
    match simplex::solve(&a, &b, &cost, &lower, &upper, tol)? {
        simplex::SimplexOutcome::Infeasible => Ok(LpOutcome::Infeasible),
        simplex::SimplexOutcome::Unbounded => Ok(LpOutcome::Unbounded),
        simplex::SimplexOutcome::Optimal { x, duals } => {
            let objective = problem
                .objective
                .iter()
                .zip(&x)
                .fold(T::zero(), |s, (&c, &v)| s + c * v);
            let duals = duals.into_iter().map(|y| sign * y).collect();
            Ok(LpOutcome::Optimal(LpSolution { x, objective, duals }))
        }
    }
}

/// Solves a convex QP: a feasible vertex from simplex phase one, then the
/// active-set method.
pub fn solve_qp<T: Scalar>(problem: &QuadraticProgram<T>, tol: T) -> Result<QpOutcome<T>> {
    let n = problem.bounds.len();
    check_shape(n, &problem.equalities, &problem.bounds, problem.linear.len())?;
    if let Some(sq) = problem.squares.iter().find(|s| s.weight < T::zero()) {
        return Err(Error::invalid("quadratic term", format!("negative weight {}", sq.weight)));
    }
    if let Some(&(j, _)) = problem
        .squares
        .iter()
        .flat_map(|s| s.coeffs.iter())
        .find(|(j, _)| *j >= n)
    {
        return Err(Error::invalid("quadratic term", format!("variable {j} of {n}")));
    }
    let red = match presolve(&problem.equalities, &problem.bounds, tol) {
        Presolve::Infeasible => return Ok(QpOutcome::Infeasible),
        Presolve::Reduced(r) => r,
    };
    let k = red.keep.len();
    let zero_cost = vec![T::zero(); k];
    let start = match simplex::solve(&red.a, &red.b, &zero_cost, &red.lower, &red.upper, tol)? {
        simplex::SimplexOutcome::Optimal { x, .. } => x,
        simplex::SimplexOutcome::Infeasible => return Ok(QpOutcome::Infeasible),
        simplex::SimplexOutcome::Unbounded => {
            return Err(Error::Internal("feasibility problem reported unbounded".into()))
        }
    };

    let full_h = problem.hessian();
    let h = Matrix::from_fn(k, k, |p, q| full_h[(red.keep[p], red.keep[q])]);
    // Linear term picks up the cross terms with fixed variables.
    let fixed_part: Vec<T> = red.fixed.iter().map(|f| f.unwrap_or_else(T::zero)).collect();
    let h_fixed = full_h.mul_vec(&fixed_part);
    let c: Vec<T> = red
        .keep
        .iter()
        .map(|&j| problem.linear[j] + h_fixed[j])
        .collect();
    match active_set::minimize(&h, &c, &red.a, &red.lower, &red.upper, start, tol)? {
        active_set::ActiveSetOutcome::Unbounded => Ok(QpOutcome::Unbounded),
        active_set::ActiveSetOutcome::Optimal(x) => {
            let x = red.expand(&x);
            let objective = problem.objective_value(&x);
            Ok(QpOutcome::Optimal(QpSolution { x, objective }))
        }
    }
}
