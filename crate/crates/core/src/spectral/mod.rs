//! Symmetric matrices attached to line configurations, and their signatures.
//!
//! Two matrices matter here. For unit directions `v_i`, the cross-norm matrix
//! `(‖v_i × v_j‖)` always has exactly one positive eigenvalue and `n − 1`
//! negative ones. For directed lines, the signed Gram matrix
//! `(⟨v_i × v_j, w_i − w_j⟩)` factors through the split form `B` on the
//! Plücker coordinates `(q_i, v_i)`, so it has at most three eigenvalues of
//! each sign. A unit-distance configuration whose chirality graph is
//! all-positive would make the two matrices equal, which is impossible once
//! `n ≥ 5`.

pub mod series;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{classify, DirectedLine, PairClass, Vector3, PARALLEL_TOL};
use crate::linalg::{SquareMatrix, SymmetricEigen};
use crate::scalar::Scalar;

pub use series::{
    cross_norm_closed_form, series_coefficient, taylor_coefficient, truncated_cross_norm, TaylorCoefficient,
};

/// Relative zero threshold applied to eigenvalues unless a caller overrides it.
pub const DEFAULT_RELATIVE_ZERO_TOL: f64 = 1e-8;
/// Symmetry tolerance accepted on input matrices.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// How far from 1 an input direction's norm may be.
pub const UNIT_TOL: f64 = 1e-10;

/// Inertia `(n_pos, n_neg, n_zero)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub const fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Self {
            positive,
            negative,
            zero,
        }
    }

    pub fn from_eigenvalues<T: Scalar>(values: &[T], zero_tol: T) -> Self {
        values.iter().fold(Self::default(), |mut s, &l| {
            if l > zero_tol {
                s.positive += 1;
            } else if l < -zero_tol {
                s.negative += 1;
            } else {
                s.zero += 1;
            }
            s
        })
    }

    pub fn as_tuple(self) -> (usize, usize, usize) {
        (self.positive, self.negative, self.zero)
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.positive, self.negative, self.zero].serialize(s)
    }
}

/// `relative · max(1, max |λ|)`.
pub fn relative_threshold<T: Scalar>(values: &[T], relative: T) -> T {
    let largest = values.iter().fold(T::zero(), |m, &l| m.max(l.abs()));
    relative * largest.max(T::one())
}

/// Counts eigenvalues above `zero_tol`, below `−zero_tol`, and in between.
pub fn signature<T: Scalar>(m: &SquareMatrix<T>, zero_tol: T) -> Result<Signature> {
    check_symmetric(m)?;
    Ok(Signature::from_eigenvalues(&SymmetricEigen::new(m).values, zero_tol))
}

fn check_symmetric<T: Scalar>(m: &SquareMatrix<T>) -> Result<()> {
    let (worst, (i, j)) = m.asymmetry();
    if worst > T::lit(SYMMETRY_TOL) * T::one().max(m.max_abs()) || worst.is_nan() {
        return Err(Error::NotSymmetric(i + 1, j + 1));
    }
    Ok(())
}

/// A symmetric matrix with its eigen-decomposition and signature.
#[derive(Debug, Clone)]
pub struct SymmetricMatrixReport<T> {
    entries: SquareMatrix<T>,
    eigen: SymmetricEigen<T>,
    signature: Signature,
    zero_tol: T,
}

impl<T: Scalar> SymmetricMatrixReport<T> {
    /// Decomposes `m`, classifying eigenvalues at `relative_zero_tol · max(1, max |λ|)`.
    pub fn new(m: SquareMatrix<T>, relative_zero_tol: T) -> Result<Self> {
        check_symmetric(&m)?;
        let eigen = SymmetricEigen::new(&m);
        let zero_tol = relative_threshold(&eigen.values, relative_zero_tol);
        let signature = Signature::from_eigenvalues(&eigen.values, zero_tol);
        Ok(Self {
            entries: m,
            eigen,
            signature,
            zero_tol,
        })
    }

    pub fn n(&self) -> usize {
        self.entries.dim()
    }

    pub fn entries(&self) -> &SquareMatrix<T> {
        &self.entries
    }

    /// Descending.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigen.values
    }

    pub fn eigen(&self) -> &SymmetricEigen<T> {
        &self.eigen
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// Absolute threshold that was used for the signature.
    pub fn zero_tol(&self) -> T {
        self.zero_tol
    }

    /// Smallest `|λ|`; a conditioning diagnostic.
    pub fn min_abs_eigenvalue(&self) -> T {
        self.eigen
            .values
            .iter()
            .fold(T::infinity(), |m, &l| m.min(l.abs()))
    }

    /// Largest entrywise deviation of `V diag(λ) Vᵀ` from the stored entries.
    pub fn reconstruction_error(&self) -> T {
        let r = self.eigen.reconstruct();
        let n = self.n();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((r[(i, j)] - self.entries[(i, j)]).abs());
            }
        }
        worst
    }
}

impl<T: Scalar + Serialize> Serialize for SymmetricMatrixReport<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SymmetricMatrixReport", 5)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("entries", &self.entries.rows())?;
        st.serialize_field("eigenvalues", &self.eigen.values)?;
        st.serialize_field("signature", &self.signature)?;
        st.serialize_field("zero_tol", &self.zero_tol)?;
        st.end()
    }
}

/// `S = (‖v_i × v_j‖)`, zero on the diagonal.
pub fn cross_norm_matrix<T: Scalar>(vs: &[Vector3<T>]) -> Result<SymmetricMatrixReport<T>> {
    cross_norm_matrix_with_tol(vs, T::lit(DEFAULT_RELATIVE_ZERO_TOL))
}

pub fn cross_norm_matrix_with_tol<T: Scalar>(
    vs: &[Vector3<T>],
    relative_zero_tol: T,
) -> Result<SymmetricMatrixReport<T>> {
    for (i, v) in vs.iter().enumerate() {
        if (v.norm() - T::one()).abs() > T::lit(UNIT_TOL) {
            return Err(Error::InvalidInput(format!("vector {} is not a unit vector", i + 1)));
        }
    }
    let n = vs.len();
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let c = vs[i].cross(vs[j]).norm();
            if c < T::lit(PARALLEL_TOL) {
                return Err(Error::ParallelVectors(i + 1, j + 1));
            }
            m[(i, j)] = c;
            m[(j, i)] = c;
        }
    }
    SymmetricMatrixReport::new(m, relative_zero_tol)
}

/// The split form `B = [[0, I₃], [I₃, 0]]` on `ℝ⁶ = (q, v)`.
pub fn b_form<T: Scalar>() -> SquareMatrix<T> {
    SquareMatrix::from_fn(6, |i, j| if (i + 3 == j) || (j + 3 == i) { T::one() } else { T::zero() })
}

/// `m_ij = ⟨v_i × v_j, w_i − w_j⟩` for pairwise skew lines.
pub fn signed_gram_matrix<T: Scalar>(lines: &[DirectedLine<T>]) -> Result<SymmetricMatrixReport<T>> {
    let n = lines.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if classify(&lines[i], &lines[j]) != PairClass::Skew {
                return Err(Error::CoplanarPair(i + 1, j + 1));
            }
        }
    }
    SymmetricMatrixReport::new(signed_gram_entries(lines), T::lit(DEFAULT_RELATIVE_ZERO_TOL))
}

/// Signed Gram entries without the skewness precondition.
pub fn signed_gram_entries<T: Scalar>(lines: &[DirectedLine<T>]) -> SquareMatrix<T> {
    SquareMatrix::from_fn(lines.len(), |i, j| {
        if i == j {
            T::zero()
        } else {
            crate::geometry::signed_gram_entry(&lines[i], &lines[j])
        }
    })
}

/// `u_iᵀ B u_j` with `u_i = (q_i, v_i)`: the same matrix through the Plücker route.
pub fn plucker_gram<T: Scalar>(lines: &[DirectedLine<T>]) -> SquareMatrix<T> {
    let b = b_form::<T>();
    let coords: Vec<[T; 6]> = lines.iter().map(|l| l.plucker().coords()).collect();
    SquareMatrix::from_fn(lines.len(), |i, j| {
        let mut s = T::zero();
        for r in 0..6 {
            for c in 0..6 {
                s = s + coords[i][r] * b[(r, c)] * coords[j][c];
            }
        }
        s
    })
}

/// Outcome of checking that the cross-norm matrix has signature `(1, n − 1, 0)`.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport<T: Scalar + Serialize> {
    pub passed: bool,
    pub expected: Signature,
    pub matrix: SymmetricMatrixReport<T>,
    /// `1ᵀ S 1`, positive for every admissible input.
    pub all_ones_form: T,
    pub min_abs_eigenvalue: T,
    /// `min |λ| / max |λ|`; small values flag near-parallel inputs.
    pub conditioning: T,
}

/// Checks the `(1, n − 1, 0)` signature at a relative zero threshold.
pub fn verify_lemma<T: Scalar + Serialize>(vs: &[Vector3<T>], relative_zero_tol: T) -> Result<LemmaReport<T>> {
    let matrix = cross_norm_matrix_with_tol(vs, relative_zero_tol)?;
    let n = vs.len();
    let expected = Signature::new(1.min(n), n.saturating_sub(1), 0);
    let ones = vec![T::one(); n];
    let all_ones_form = matrix.entries().quadratic_form(&ones);
    let min_abs = matrix.min_abs_eigenvalue();
    let max_abs = matrix.eigenvalues().iter().fold(T::zero(), |m, &l| m.max(l.abs()));
    Ok(LemmaReport {
        passed: matrix.signature() == expected,
        expected,
        all_ones_form,
        min_abs_eigenvalue: min_abs,
        conditioning: if max_abs > T::zero() { min_abs / max_abs } else { T::zero() },
        matrix,
    })
}

/// Trial `trial` of a seeded lemma run: `n` uniform unit vectors whose
/// pairwise angles (mod π) are at least `min_angle`, redrawn until they are.
pub fn lemma_trial_vectors(n: usize, seed: u64, trial: u64, min_angle: f64) -> Vec<Vector3<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let min_sine = min_angle.min(std::f64::consts::FRAC_PI_2).sin();
    loop {
        let vs: Vec<Vector3<f64>> = (0..n)
            .map(|_| {
                let g: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
                Vector3::from(g).normalized().unwrap_or(Vector3::e3())
            })
            .collect();
        let spread = (0..n).all(|i| ((i + 1)..n).all(|j| vs[i].cross(vs[j]).norm() >= min_sine));
        if spread {
            return vs;
        }
    }
}
