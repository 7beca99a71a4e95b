//! Dense complex linear algebra: Hermitian and density-matrix wrappers, sorted
//! Hermitian eigendecomposition, Kronecker products, and partial traces.
//!
//! Matrices are `nalgebra` dynamic matrices over `Complex64`, row index slow
//! in Kronecker products (`kron(a, b)[(i*rb + k, j*cb + l)] = a[(i,j)] b[(k,l)]`).
//! Wrapper types check their defining property once at construction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Absolute tolerance for structural checks: Hermiticity, unit trace,
/// positivity, and channel flags.
pub const STRUCT_TOL: f64 = 1e-10;

/// Relative tolerance for grouping nearly equal eigenvalues into one eigenspace.
pub const EIG_GROUP_RTOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |M - M^dag| entry {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace:.12}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Complex number shorthand.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real number as a complex scalar.
#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Hilbert-Schmidt inner product `Tr(a^dag b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    debug_assert_eq!(a.shape(), b.shape());
    let mut acc = Complex64::ZERO;
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x.conj() * y;
    }
    acc
}

/// Frobenius norm.
pub fn fro_norm(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise deviation from Hermiticity, `max |M - M^dag|`.
pub fn hermiticity_deviation(m: &ComplexMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Kronecker product with the left factor on the slow index.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Which tensor factor `partial_trace` removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceOut {
    First,
    Second,
}

/// Partial trace of an operator on `C^da (x) C^db` with joint index `a*db + b`.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: (usize, usize),
    side: TraceOut,
) -> Result<ComplexMatrix, LinalgError> {
    let (da, db) = dims;
    if m.nrows() != da * db || m.ncols() != da * db {
        return Err(LinalgError::DimensionMismatch(format!(
            "partial trace of {}x{} with factor dims ({da}, {db})",
            m.nrows(),
            m.ncols()
        )));
    }
    match side {
        TraceOut::First => {
            let mut out = ComplexMatrix::zeros(db, db);
            for b in 0..db {
                for b2 in 0..db {
                    let mut acc = Complex64::ZERO;
                    for a in 0..da {
                        acc += m[(a * db + b, a * db + b2)];
                    }
                    out[(b, b2)] = acc;
                }
            }
            Ok(out)
        }
        TraceOut::Second => {
            let mut out = ComplexMatrix::zeros(da, da);
            for a in 0..da {
                for a2 in 0..da {
                    let mut acc = Complex64::ZERO;
                    for b in 0..db {
                        acc += m[(a * db + b, a2 * db + b)];
                    }
                    out[(a, a2)] = acc;
                }
            }
            Ok(out)
        }
    }
}

/// Square matrix with verified Hermitian symmetry.
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    mat: ComplexMatrix,
}

impl HermitianMatrix {
    /// Checks squareness and `M = M^dag` within [`STRUCT_TOL`].
    pub fn new(mat: ComplexMatrix) -> Result<Self, LinalgError> {
        if mat.nrows() != mat.ncols() {
            return Err(LinalgError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let deviation = hermiticity_deviation(&mat);
        if deviation > STRUCT_TOL {
            return Err(LinalgError::NotHermitian { deviation });
        }
        Ok(Self::symmetrize(mat))
    }

    /// Projects onto the Hermitian part `(M + M^dag)/2` without checking how
    /// far away the input was.
    pub fn symmetrize(mat: ComplexMatrix) -> Self {
        assert_eq!(mat.nrows(), mat.ncols(), "symmetrize needs a square matrix");
        let herm = (&mat + mat.adjoint()) * cr(0.5);
        Self { mat: herm }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Trace, real by Hermiticity.
    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Real Hilbert-Schmidt inner product `Tr(self * other)`.
    pub fn hs_dot(&self, other: &HermitianMatrix) -> f64 {
        hs_inner(&self.mat, &other.mat).re
    }

    /// Eigendecomposition with eigenvalues sorted in descending order.
    pub fn eig(&self) -> HermitianEigen {
        eig_hermitian(&self.mat)
    }
}

/// Eigendecomposition of a Hermitian matrix. `values[i]` pairs with column `i`
/// of `vectors`; values are sorted descending and columns are orthonormal.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Number of leading eigenvalues within `EIG_GROUP_RTOL * max(1, |lambda_max|)`
    /// of the largest; the span of the paired eigenvectors is the top eigenspace.
    pub fn top_multiplicity(&self) -> usize {
        let lmax = self.values[0];
        let tol = EIG_GROUP_RTOL * lmax.abs().max(1.0);
        self.values.iter().take_while(|&&v| lmax - v <= tol).count()
    }

    /// Reconstruction `V diag(values) V^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let diag = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                cr(self.values[i])
            } else {
                Complex64::ZERO
            }
        });
        &self.vectors * diag * self.vectors.adjoint()
    }
}

/// Sorted Hermitian eigendecomposition of an (assumed Hermitian) matrix.
/// The input is symmetrized first so callers may pass results of arithmetic
/// that drifts off Hermitian by roundoff.
pub fn eig_hermitian(m: &ComplexMatrix) -> HermitianEigen {
    assert_eq!(m.nrows(), m.ncols(), "eig_hermitian needs a square matrix");
    let herm = (m + m.adjoint()) * cr(0.5);
    let se = herm.symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    HermitianEigen { values, vectors }
}

/// Eigenvalues only, sorted descending.
pub fn eigvals_hermitian(m: &ComplexMatrix) -> Vec<f64> {
    assert_eq!(m.nrows(), m.ncols(), "eigvals_hermitian needs a square matrix");
    let herm = (m + m.adjoint()) * cr(0.5);
    let mut vals: Vec<f64> = herm.symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    herm: HermitianMatrix,
}

impl DensityMatrix {
    /// Checks unit trace and positivity (min eigenvalue >= -[`STRUCT_TOL`]).
    pub fn new(herm: HermitianMatrix) -> Result<Self, LinalgError> {
        let trace = herm.trace();
        if (trace - 1.0).abs() > STRUCT_TOL {
            return Err(LinalgError::TraceNotOne { trace });
        }
        let vals = eigvals_hermitian(herm.matrix());
        let min_eigenvalue = *vals.last().expect("nonempty spectrum");
        if min_eigenvalue < -STRUCT_TOL {
            return Err(LinalgError::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self { herm })
    }

    /// Rank-one projector onto `state` (normalized first).
    pub fn pure(state: &ComplexVector) -> Self {
        let norm = state.norm();
        assert!(norm > 0.0, "pure state must be nonzero");
        let psi = state / cr(norm);
        let mat = &psi * psi.adjoint();
        Self {
            herm: HermitianMatrix::symmetrize(mat),
        }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let mat = ComplexMatrix::identity(n, n) * cr(1.0 / n as f64);
        Self {
            herm: HermitianMatrix::symmetrize(mat),
        }
    }

    pub fn dim(&self) -> usize {
        self.herm.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.herm.matrix()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.herm
    }

    /// Purity `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        hs_inner(self.matrix(), self.matrix()).re
    }

    /// Spectrum sorted descending, with negatives above `-STRUCT_TOL` clipped to 0.
    pub fn spectrum(&self) -> Vec<f64> {
        eigvals_hermitian(self.matrix())
            .into_iter()
            .map(|v| v.max(0.0))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)])
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)])
    }

    #[test]
    fn eig_identity_and_diagonal() {
        let id = HermitianMatrix::new(ComplexMatrix::identity(4, 4)).unwrap();
        let e = id.eig();
        assert!(e.values.iter().all(|&v| (v - 1.0).abs() < 1e-14));
        assert_eq!(e.top_multiplicity(), 4);

        let d = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                cr([0.25, 2.0, -1.5][i])
            } else {
                Complex64::ZERO
            }
        });
        let e = eig_hermitian(&d);
        assert_abs_diff_eq!(e.values[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[2], -1.5, epsilon = 1e-14);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2usize, 3, 5, 8] {
            let h = sample::random_hermitian(n, &mut rng);
            let e = h.eig();
            let scale = fro_norm(h.matrix()).max(1.0);
            assert!(fro_norm(&(e.reconstruct() - h.matrix())) <= 1e-10 * scale);
            // Orthonormal columns.
            let gram = e.vectors.adjoint() * &e.vectors;
            assert!(fro_norm(&(gram - ComplexMatrix::identity(n, n))) <= 1e-12 * n as f64);
            // Descending order.
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn top_multiplicity_groups_close_eigenvalues() {
        let e = HermitianEigen {
            values: vec![1.0, 1.0 - 1e-12, 0.5],
            vectors: ComplexMatrix::identity(3, 3),
        };
        assert_eq!(e.top_multiplicity(), 2);
    }

    #[test]
    fn kron_matches_hand_computation() {
        let k = kron(&pauli_x(), &pauli_z());
        // sigma_x (x) sigma_z has blocks [[0, Z], [Z, 0]].
        let expect = ComplexMatrix::from_row_slice(
            4,
            4,
            &[
                cr(0.0), cr(0.0), cr(1.0), cr(0.0),
                cr(0.0), cr(0.0), cr(0.0), cr(-1.0),
                cr(1.0), cr(0.0), cr(0.0), cr(0.0),
                cr(0.0), cr(-1.0), cr(0.0), cr(0.0),
            ],
        );
        assert!(fro_norm(&(k - expect)) < 1e-15);
    }

    #[test]
    fn kron_mixed_product_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = sample::random_matrix(2, 3, &mut rng);
            let b = sample::random_matrix(3, 2, &mut rng);
            let c = sample::random_matrix(3, 2, &mut rng);
            let d = sample::random_matrix(2, 3, &mut rng);
            let lhs = kron(&a, &b) * kron(&c, &d);
            let rhs = kron(&(&a * &c), &(&b * &d));
            assert!(fro_norm(&(lhs - &rhs)) <= 1e-12 * fro_norm(&rhs).max(1.0));
        }
    }

    #[test]
    fn partial_trace_of_product_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = sample::random_hermitian(2, &mut rng).into_matrix();
        let b = sample::random_hermitian(3, &mut rng).into_matrix();
        let joint = kron(&a, &b);
        let ta = partial_trace(&joint, (2, 3), TraceOut::Second).unwrap();
        let tb = partial_trace(&joint, (2, 3), TraceOut::First).unwrap();
        let tr_a = a.trace();
        let tr_b = b.trace();
        assert!(fro_norm(&(ta - &a * tr_b)) < 1e-12);
        assert!(fro_norm(&(tb - &b * tr_a)) < 1e-12);
        // Full trace is preserved by both reductions.
        let joint_tr = joint.trace();
        let ta2 = partial_trace(&joint, (2, 3), TraceOut::Second).unwrap();
        assert_abs_diff_eq!(ta2.trace().re, joint_tr.re, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(6, 6);
        assert!(partial_trace(&m, (4, 2), TraceOut::First).is_err());
    }

    #[test]
    fn hermitian_wrapper_rejects_asymmetry() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.5), cr(0.2), cr(1.0)]);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(LinalgError::NotHermitian { .. })
        ));
        let m = ComplexMatrix::from_row_slice(2, 3, &[Complex64::ZERO; 6]);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn density_checks_trace_and_positivity() {
        let ok = DensityMatrix::new(
            HermitianMatrix::new(ComplexMatrix::identity(2, 2) * cr(0.5)).unwrap(),
        );
        assert!(ok.is_ok());
        let bad_trace =
            DensityMatrix::new(HermitianMatrix::new(ComplexMatrix::identity(2, 2)).unwrap());
        assert!(matches!(bad_trace, Err(LinalgError::TraceNotOne { .. })));
        let indefinite = HermitianMatrix::new(pauli_z() * cr(0.5)).unwrap();
        // trace 0 fails first; build a trace-1 indefinite matrix instead
        let m = ComplexMatrix::from_row_slice(2, 2, &[cr(1.5), cr(0.0), cr(0.0), cr(-0.5)]);
        let indefinite2 = DensityMatrix::new(HermitianMatrix::new(m).unwrap());
        assert!(matches!(
            indefinite2,
            Err(LinalgError::NotPositiveSemidefinite { .. })
        ));
        assert!(DensityMatrix::new(indefinite).is_err());
    }

    #[test]
    fn pure_state_has_unit_purity() {
        let v = ComplexVector::from_vec(vec![c(1.0, 0.0), c(0.0, 2.0)]);
        let rho = DensityMatrix::pure(&v);
        assert_abs_diff_eq!(rho.purity(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.hermitian().trace(), 1.0, epsilon = 1e-14);
        let spec = rho.spectrum();
        assert_abs_diff_eq!(spec[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec[1], 0.0, epsilon = 1e-12);
    }
}
