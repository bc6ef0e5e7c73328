//! Small dense linear algebra over any [`Scalar`]. Elimination with
//! partial pivoting; entries with magnitude at or below `tol` count as zero.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn transpose_mul_vec(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.cols];
        for (i, &w) in v.iter().enumerate().take(self.rows) {
            if w == T::zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = *o + a * w;
            }
        }
        out
    }

    /// Reduces in place to reduced row echelon form over the first
    /// `pivot_cols` columns and returns the pivot column of each leading row.
    pub fn rref(&mut self, pivot_cols: usize, tol: T) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let (best, mag) = (r..self.rows)
                .map(|i| (i, self[(i, c)].abs()))
                .fold((r, T::zero()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            if mag <= tol {
                for i in r..self.rows {
                    self[(i, c)] = T::zero();
                }
                continue;
            }
            self.swap_rows(r, best);
            let p = self[(r, c)];
            for j in 0..self.cols {
                self[(r, j)] = self[(r, j)] / p;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)];
                if f == T::zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self[(r, j)];
                    self[(i, j)] = self[(i, j)] - f * v;
                }
                self[(i, c)] = T::zero();
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: T) -> usize {
        let mut m = self.clone();
        let cols = m.cols;
        m.rref(cols, tol).len()
    }

    /// Basis of the null space, one vector per non-pivot column.
    pub fn null_space(&self, tol: T) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let cols = m.cols;
        let pivots = m.rref(cols, tol);
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![T::zero(); cols];
                v[free] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, free)];
                }
                v
            })
            .collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Outcome of solving a symmetric positive semidefinite system `H w = r`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum PsdSolve<T> {
    /// A solution (free components set to zero when `H` is singular).
    Solution(Vec<T>),
    /// `r` is outside the range of `H`; the vector `d` satisfies `H d = 0`
    /// and `r . d > 0`.
    Inconsistent(Vec<T>),
}

pub(crate) fn solve_psd<T: Scalar>(h: &Matrix<T>, r: &[T], tol: T) -> PsdSolve<T> {
    let n = h.rows;
    let mut aug = Matrix::from_fn(n, n + 1, |i, j| if j < n { h[(i, j)] } else { r[i] });
    let pivots = aug.rref(n, tol);
    let rank = pivots.len();
    // Consistency: leftover rows must have a zero right-hand side. Measure
    // against the size of r so the test does not depend on units.
    let scale = r.iter().fold(T::one(), |a, v| a.max_of(v.abs()));
    let consistent = (rank..n).all(|i| aug[(i, n)].abs() <= tol * scale);
    if consistent {
        let mut w = vec![T::zero(); n];
        for (row, &p) in pivots.iter().enumerate() {
            w[p] = aug[(row, n)];
        }
        return PsdSolve::Solution(w);
    }
    let null = h.null_space(tol);
    let mut d = vec![T::zero(); n];
    for v in &null {
        let weight = dot(v, r);
        for (di, &vi) in d.iter_mut().zip(v) {
            *di = *di + weight * vi;
        }
    }
    PsdSolve::Inconsistent(d)
}
