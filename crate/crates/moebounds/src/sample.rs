//! Seeded random matrices, states, and channels.
//!
//! Everything here is driven by a caller-supplied [`rand::Rng`], so sweeps
//! are reproducible from a single seed. Channels come out exactly trace
//! preserving up to roundoff; unital channels are produced by alternating
//! normalization of the two marginal Grams.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channels::Channel;
use crate::linalg::{eig_hermitian, ComplexMatrix, ComplexVector, DensityMatrix, HermitianMatrix};

/// Ginibre matrix: independent standard complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * inv_sqrt2, im * inv_sqrt2)
    })
}

/// GUE-style Hermitian matrix `(G + G^dag) / 2`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let g = random_matrix(n, n, rng);
    let h = (&g + g.adjoint()).scale(0.5);
    HermitianMatrix::new(h).expect("symmetrized matrix is Hermitian")
}

/// Haar-like random unit vector (normalized Ginibre column).
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexVector {
    loop {
        let v = ComplexVector::from_fn(n, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        });
        let norm = v.norm();
        if norm > 1e-6 {
            return v.unscale(norm);
        }
    }
}

/// Haar random unitary: QR of a Ginibre matrix with the R diagonal rephased.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_matrix(n, n, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random density matrix `G G^dag / Tr` from an `n x n` Ginibre factor.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityMatrix {
    let g = random_matrix(n, n, rng);
    let m = &g * g.adjoint();
    let trace = m.trace().re;
    DensityMatrix::new(HermitianMatrix::symmetrize(m.unscale(trace)))
        .expect("Gram matrix is a state after normalization")
}

/// Random probability vector (uniform on the simplex).
pub fn random_probability_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    assert!(len > 0, "probability vector needs at least one entry");
    let mut weights: Vec<f64> = (0..len)
        .map(|_| {
            let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            -u.ln()
        })
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    weights
}

/// Inverse square root of a positive definite Hermitian matrix.
fn inv_sqrt_pd(m: &HermitianMatrix) -> ComplexMatrix {
    let eig = m.eig();
    let floor = 1e-14 * eig.values[0].max(1.0);
    let inv_sqrt: Vec<f64> = eig.values.iter().map(|&v| 1.0 / v.max(floor).sqrt()).collect();
    let d = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        inv_sqrt.len(),
        inv_sqrt.iter().map(|&v| Complex64::new(v, 0.0)),
    ));
    &eig.vectors * d * eig.vectors.adjoint()
}

/// Random channel: Ginibre Kraus stack right-normalized to trace preservation.
pub fn random_channel<R: Rng + ?Sized>(
    in_dim: usize,
    out_dim: usize,
    kraus_count: usize,
    rng: &mut R,
) -> Channel {
    assert!(kraus_count * out_dim >= in_dim, "Kraus stack cannot be trace preserving");
    let raw: Vec<ComplexMatrix> = (0..kraus_count).map(|_| random_matrix(out_dim, in_dim, rng)).collect();
    let mut gram = ComplexMatrix::zeros(in_dim, in_dim);
    for a in &raw {
        gram += a.adjoint() * a;
    }
    let correction = inv_sqrt_pd(
        &HermitianMatrix::new(gram).expect("Kraus Gram is Hermitian"),
    );
    let kraus: Vec<ComplexMatrix> = raw.into_iter().map(|a| a * &correction).collect();
    Channel::from_kraus(kraus).expect("normalized Kraus stack is a channel")
}

/// Random unital channel on `n` dimensions via alternating normalization.
///
/// Each round enforces `sum A^dag A = I` exactly, then symmetrizes the output
/// Gram toward `(n/k) I`; the iteration converges rapidly for generic starts.
pub fn random_unital_channel<R: Rng + ?Sized>(n: usize, kraus_count: usize, rng: &mut R) -> Channel {
    if kraus_count == 1 {
        return Channel::from_kraus(vec![random_unitary(n, rng)]).expect("unitary channel");
    }
    // Operator Sinkhorn iteration; retry with a fresh draw on the rare
    // stalls (convergence is generic but its rate is not uniform).
    for _ in 0..8 {
        let mut kraus: Vec<ComplexMatrix> =
            (0..kraus_count).map(|_| random_matrix(n, n, rng)).collect();
        for _ in 0..2000 {
            let mut gram_out = ComplexMatrix::zeros(n, n);
            for a in &kraus {
                gram_out += a * a.adjoint();
            }
            let left =
                inv_sqrt_pd(&HermitianMatrix::new(gram_out).expect("output Gram is Hermitian"));
            for a in &mut kraus {
                *a = &left * &*a;
            }

            let mut gram_in = ComplexMatrix::zeros(n, n);
            for a in &kraus {
                gram_in += a.adjoint() * a;
            }
            let right =
                inv_sqrt_pd(&HermitianMatrix::new(gram_in).expect("input Gram is Hermitian"));
            for a in &mut kraus {
                *a = &*a * &right;
            }

            let mut dev = 0.0f64;
            let mut gram_out = ComplexMatrix::zeros(n, n);
            for a in &kraus {
                gram_out += a * a.adjoint();
            }
            for i in 0..n {
                for j in 0..n {
                    let expect =
                        if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                    dev = dev.max((gram_out[(i, j)] - expect).norm());
                }
            }
            if dev <= 1e-13 {
                return Channel::from_kraus(kraus)
                    .expect("doubly normalized Kraus stack is a channel");
            }
        }
    }
    panic!("alternating normalization failed to converge after 8 draws");
}

/// Random mixed-unitary channel: `sqrt(p_i) U_i` with Haar unitaries.
pub fn random_mixed_unitary_channel<R: Rng + ?Sized>(
    n: usize,
    unitary_count: usize,
    rng: &mut R,
) -> Channel {
    let probs = random_probability_vector(unitary_count, rng);
    let kraus: Vec<ComplexMatrix> = probs
        .iter()
        .map(|&p| random_unitary(n, rng).scale(p.sqrt()))
        .collect();
    Channel::from_kraus(kraus).expect("mixed-unitary stack is a channel")
}

/// Sorts eigenvalues of a matrix product for spectra comparisons in tests.
pub fn sorted_spectrum(m: &HermitianMatrix) -> Vec<f64> {
    let mut values = eig_hermitian(m.matrix()).values;
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    values
}

/// Dense matrix of a linear map on vectorized inputs, used as an SVD oracle.
pub fn map_matrix<F: Fn(&ComplexMatrix) -> ComplexMatrix>(
    in_dim: usize,
    out_dim: usize,
    apply: F,
) -> ComplexMatrix {
    let mut m = DMatrix::zeros(out_dim * out_dim, in_dim * in_dim);
    for i in 0..in_dim {
        for j in 0..in_dim {
            let mut e = ComplexMatrix::zeros(in_dim, in_dim);
            e[(i, j)] = Complex64::new(1.0, 0.0);
            let image = apply(&e);
            for r in 0..out_dim {
                for s in 0..out_dim {
                    m[(r * out_dim + s, i * in_dim + j)] = image[(r, s)];
                }
            }
        }
    }
    m
}
