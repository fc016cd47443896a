//! Dense linear algebra for the tiny matrices this crate handles (n ≤ ~64).

use crate::scalar::Scalar;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds from nested rows. Returns `None` if the rows are ragged.
    pub fn from_rows(rows: &[Vec<T>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).map(<[T]>::to_vec).take(self.n).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(T::zero(), |acc, k| acc + self[(i, k)] * rhs[(k, j)])
        })
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.n, x.len());
        (0..self.n)
            .map(|i| (0..self.n).fold(T::zero(), |acc, k| acc + self[(i, k)] * x[k]))
            .collect()
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[T]) -> T {
        self.mul_vec(x)
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// Largest `|m_ij − m_ji|` together with its position.
    pub fn asymmetry(&self) -> (T, (usize, usize)) {
        let mut worst = (T::zero(), (0, 0));
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = (self[(i, j)] - self[(j, i)]).abs();
                if d > worst.0 {
                    worst = (d, (i, j));
                }
            }
        }
        worst
    }
}

impl<T> std::ops::Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for SquareMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Eigen-decomposition of a symmetric matrix: `A = V diag(λ) Vᵀ`.
///
/// Eigenvalues are sorted in descending order; column `k` of `vectors` belongs
/// to `values[k]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: SquareMatrix<T>,
}

impl<T: Scalar> SymmetricEigen<T> {
    /// Cyclic Jacobi rotations. Only the upper triangle of `a` is read.
    ///
    /// Jacobi is backward stable and computes small eigenvalues to high
    /// relative accuracy, which is what signature counting needs.
    pub fn new(a: &SquareMatrix<T>) -> Self {
        let n = a.dim();
        let mut m = SquareMatrix::from_fn(n, |i, j| if i <= j { a[(i, j)] } else { a[(j, i)] });
        let mut v = SquareMatrix::identity(n);
        let two = T::lit(2.0);

        for _sweep in 0..100 {
            let off = off_diagonal_norm(&m);
            let scale = frobenius(&m);
            if off <= T::epsilon() * T::epsilon() * scale || off == T::zero() {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[(p, q)];
                    if apq == T::zero() {
                        continue;
                    }
                    let app = m[(p, p)];
                    let aqq = m[(q, q)];
                    let theta = (aqq - app) / (two * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    let c = T::one() / (t * t + T::one()).sqrt();
                    let s = t * c;

                    for k in 0..n {
                        let mkp = m[(k, p)];
                        let mkq = m[(k, q)];
                        m[(k, p)] = c * mkp - s * mkq;
                        m[(k, q)] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let mpk = m[(p, k)];
                        let mqk = m[(q, k)];
                        m[(p, k)] = c * mpk - s * mqk;
                        m[(q, k)] = s * mpk + c * mqk;
                    }
                    m[(p, q)] = T::zero();
                    m[(q, p)] = T::zero();
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| m[(j, j)].partial_cmp(&m[(i, i)]).unwrap_or(std::cmp::Ordering::Equal));
        let values = order.iter().map(|&i| m[(i, i)]).collect();
        let vectors = SquareMatrix::from_fn(n, |r, c| v[(r, order[c])]);
        Self { values, vectors }
    }

    /// `V diag(λ) Vᵀ`.
    pub fn reconstruct(&self) -> SquareMatrix<T> {
        let n = self.values.len();
        SquareMatrix::from_fn(n, |i, j| {
            (0..n).fold(T::zero(), |acc, k| {
                acc + self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)]
            })
        })
    }
}

fn off_diagonal_norm<T: Scalar>(m: &SquareMatrix<T>) -> T {
    let n = m.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

fn frobenius<T: Scalar>(m: &SquareMatrix<T>) -> T {
    m.data.iter().fold(T::zero(), |s, &x| s + x * x).sqrt()
}

/// Solves `A x = b` for symmetric positive definite `A` by Cholesky.
/// Returns `None` if a pivot is not positive.
pub fn cholesky_solve<T: Scalar>(a: &SquareMatrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.dim();
    let mut l = SquareMatrix::zeros(n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d = d - l[(j, k)] * l[(j, k)];
        }
        if !(d > T::zero()) {
            return None;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] = y[i] - l[(i, k)] * y[k];
        }
        y[i] = y[i] / l[(i, i)];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            y[i] = y[i] - l[(k, i)] * y[k];
        }
        y[i] = y[i] / l[(i, i)];
    }
    Some(y)
}
