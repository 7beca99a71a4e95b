//! Exact `1 -> 2` norm of qubit-input maps.
//!
//! For a trace-preserving map on one qubit, the squared norm is a quadratic
//! form over the Bloch sphere:
//!
//! ```text
//! 4 |Phi|^2 = Tr Phi(I)^2 + max_{|r| = 1} sum_j (2 b_j r_j + a_j r_j^2)
//! ```
//!
//! where `A_{jk} = Tr[Phi(s_j) Phi(s_k)]` over the unnormalized Paulis and
//! `b = Tr[Phi(I) Phi(s_j)]` rotated into the eigenbasis of `A`. The inner
//! maximum is solved exactly through its secular equation, including the
//! degenerate "hard case" where the optimizer picks up a component in the
//! top eigenspace of `A`.

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

use crate::channels::HermitianMap;
use crate::entropy::{binary_renyi, g_alpha, qubit_f, EntropyError};
use crate::linalg::{hs_inner, ComplexMatrix, ComplexVector, c, cr};

#[derive(Debug, Error)]
pub enum QubitExactError {
    #[error("map must have qubit input (got in_dim {0})")]
    InputDimension(usize),
    #[error("map must have qubit output for this quantity (got out_dim {0})")]
    OutputDimension(usize),
    #[error("map must be trace preserving")]
    NotTracePreserving,
    #[error("map must be completely positive for entropy quantities")]
    NotCompletelyPositive,
    #[error(transparent)]
    Entropy(#[from] EntropyError),
}

/// Maximizer data of the constrained quadratic `2 b . r + r . diag(a) r`.
#[derive(Debug, Clone)]
pub struct SecularSolution {
    /// Lagrange multiplier; always at least `max a_j`.
    pub mu: f64,
    /// Unit maximizer in the eigenbasis of the quadratic form.
    pub r: [f64; 3],
    /// Maximum value of the quadratic.
    pub value: f64,
    /// True when the multiplier collides with the top eigenvalue and the
    /// maximizer needs a free component in the top eigenspace.
    pub hard_case: bool,
}

const SECULAR_TOL: f64 = 1e-13;

fn secular_sum(a: &[f64; 3], b: &[f64; 3], active: &[bool; 3], mu: f64) -> (f64, f64) {
    let mut s = 0.0;
    let mut ds = 0.0;
    for j in 0..3 {
        if active[j] && b[j] != 0.0 {
            let gap = mu - a[j];
            let term = b[j] / gap;
            s += term * term;
            ds += -2.0 * term * term / gap;
        }
    }
    (s, ds)
}

/// Largest root of `sum_j b_j^2 / (mu - a_j)^2 = 1` beyond `max a_j`,
/// by Newton steps safeguarded inside a sign-change bracket.
fn secular_root(a: &[f64; 3], b: &[f64; 3], active: &[bool; 3], mut lo: f64, mut hi: f64) -> f64 {
    let mut mu = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (s, ds) = secular_sum(a, b, active, mu);
        let h = s - 1.0;
        if h.abs() <= SECULAR_TOL {
            return mu;
        }
        if h > 0.0 {
            lo = mu;
        } else {
            hi = mu;
        }
        let newton = mu - h / ds;
        mu = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * mu.abs().max(1.0) {
            break;
        }
    }
    mu
}

/// Maximizes `q(r) = sum_j 2 b_j r_j + a_j r_j^2` over the unit sphere.
///
/// The stationarity condition `b_j = (mu - a_j) r_j` forces `mu >= max a_j`
/// at the maximizer; the returned `r` is renormalized to unit length and
/// `value` is evaluated directly at it.
pub fn solve_secular(a: [f64; 3], b: [f64; 3]) -> SecularSolution {
    let a_max = a[0].max(a[1]).max(a[2]);
    let top_tol = 1e-8 * a_max.abs().max(1.0);
    let top: [bool; 3] = std::array::from_fn(|j| a_max - a[j] <= top_tol);
    let interior: [bool; 3] = std::array::from_fn(|j| !top[j]);
    let all: [bool; 3] = [true; 3];

    let b_norm = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    let lo = a_max + 1e-14 * a_max.abs().max(1.0);
    let hi = a_max + b_norm + 1e-14 * a_max.abs().max(1.0);

    let (s_lo, _) = secular_sum(&a, &b, &all, lo);
    let mut hard_case = false;
    let (mu, mut r) = if s_lo >= 1.0 {
        let mu = secular_root(&a, &b, &all, lo, hi);
        let r: [f64; 3] = std::array::from_fn(|j| b[j] / (mu - a[j]));
        (mu, r)
    } else {
        hard_case = true;
        let mut r: [f64; 3] = std::array::from_fn(|j| {
            if interior[j] && b[j] != 0.0 {
                b[j] / (a_max - a[j])
            } else {
                0.0
            }
        });
        let w: f64 = r.iter().map(|x| x * x).sum();
        if w <= 1.0 {
            // Place the slack on the first top coordinate, signed with b.
            let j0 = (0..3).find(|&j| top[j]).expect("top set is nonempty");
            let sign = if b[j0] < 0.0 { -1.0 } else { 1.0 };
            r[j0] = sign * (1.0 - w).max(0.0).sqrt();
            (a_max, r)
        } else {
            // Interior coordinates alone overshoot the sphere: the reduced
            // secular equation has a root beyond a_max after all.
            let mu = secular_root(&a, &b, &interior, lo, hi);
            let r: [f64; 3] = std::array::from_fn(|j| {
                if interior[j] { b[j] / (mu - a[j]) } else { 0.0 }
            });
            (mu, r)
        }
    };

    let norm: f64 = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in &mut r {
            *x /= norm;
        }
    } else {
        r = [1.0, 0.0, 0.0];
    }
    let value: f64 = (0..3).map(|j| 2.0 * b[j] * r[j] + a[j] * r[j] * r[j]).sum();
    SecularSolution { mu, r, value, hard_case }
}

/// Exact `1 -> 2` norm of a qubit-input map, with the quadratic-form data.
#[derive(Debug, Clone)]
pub struct QubitNormResult {
    /// `max_rho |Phi(rho)|_2` over qubit states; attained at a pure state.
    pub norm12: f64,
    /// `Tr Phi(I)^2`.
    pub trace_term: f64,
    /// Eigenvalues of the Pauli overlap matrix, descending.
    pub a: [f64; 3],
    /// Linear coefficients rotated into the eigenbasis of `a`.
    pub b: [f64; 3],
    /// Bloch vector of the optimal pure input, in the original Pauli frame.
    pub bloch: [f64; 3],
    pub solution: SecularSolution,
}

impl QubitNormResult {
    /// Optimal pure input state as a 2-vector.
    pub fn optimal_state(&self) -> ComplexVector {
        let [x, y, z] = self.bloch;
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        ComplexVector::from_vec(vec![
            cr((theta / 2.0).cos()),
            c(phi.cos(), phi.sin()) * (theta / 2.0).sin(),
        ])
    }
}

fn unnormalized_paulis() -> [ComplexMatrix; 3] {
    let x = ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
    let y = ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)]);
    let z = ComplexMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]);
    [x, y, z]
}

/// Exact `1 -> 2` norm of a trace-preserving qubit-input map.
pub fn qubit_norm12(map: &HermitianMap) -> Result<QubitNormResult, QubitExactError> {
    if map.in_dim() != 2 {
        return Err(QubitExactError::InputDimension(map.in_dim()));
    }
    if !map.flags().trace_preserving {
        return Err(QubitExactError::NotTracePreserving);
    }
    let paulis = unnormalized_paulis();
    let identity = ComplexMatrix::identity(2, 2);
    let image_i = map.apply(&identity).expect("dimensions checked");
    let images: Vec<ComplexMatrix> =
        paulis.iter().map(|p| map.apply(p).expect("dimensions checked")).collect();

    let mut overlap = Matrix3::zeros();
    let mut linear = Vector3::zeros();
    for j in 0..3 {
        for k in j..3 {
            let val = hs_inner(&images[j], &images[k]).re;
            overlap[(j, k)] = val;
            overlap[(k, j)] = val;
        }
        linear[j] = hs_inner(&image_i, &images[j]).re;
    }
    let trace_term = hs_inner(&image_i, &image_i).re;

    let eig = overlap.symmetric_eigen();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).expect("finite"));
    let a: [f64; 3] = std::array::from_fn(|j| eig.eigenvalues[order[j]]);
    let b: [f64; 3] = std::array::from_fn(|j| eig.eigenvectors.column(order[j]).dot(&linear));

    let solution = solve_secular(a, b);
    let norm_sq = (trace_term + solution.value) / 4.0;
    let norm12 = norm_sq.max(0.0).sqrt();
    let mut bloch = [0.0; 3];
    for (&slot, &weight) in order.iter().zip(&solution.r) {
        let col = eig.eigenvectors.column(slot);
        for i in 0..3 {
            bloch[i] += col[i] * weight;
        }
    }
    Ok(QubitNormResult { norm12, trace_term, a, b, bloch, solution })
}

/// Exact minimum output Renyi entropy of a qubit-to-qubit channel, in bits.
///
/// The minimizing output has spectrum `(f, 1 - f)` with
/// `f = qubit_f(norm12)`, simultaneously for every `alpha in [0, inf]`.
pub fn qubit_smin_alpha(map: &HermitianMap, alpha: f64) -> Result<f64, QubitExactError> {
    if map.out_dim() != 2 {
        return Err(QubitExactError::OutputDimension(map.out_dim()));
    }
    if !map.flags().completely_positive {
        return Err(QubitExactError::NotCompletelyPositive);
    }
    let norm = qubit_norm12(map)?;
    let f = qubit_f(norm.norm12.clamp(std::f64::consts::FRAC_1_SQRT_2, 1.0))?;
    Ok(binary_renyi(f, alpha)?)
}

/// Entropy bound derived from a `1 -> 2` norm through the purity envelope.
#[derive(Debug, Clone)]
pub struct SminLowerBound {
    /// Lower bound on the minimum output Renyi-`alpha` entropy, in bits.
    pub bits: f64,
    /// True when the bound is known to be attained (qubit outputs).
    pub exact: bool,
}

/// `S_min_alpha(Phi) >= g_alpha(|Phi|^2)` for `alpha in [1, 2]`.
pub fn smin_lower_bound(
    map: &HermitianMap,
    alpha: f64,
    norm12: f64,
) -> Result<SminLowerBound, QubitExactError> {
    let g = g_alpha((norm12 * norm12).min(1.0), alpha)?;
    Ok(SminLowerBound { bits: g.value, exact: map.out_dim() == 2 })
}

/// Upper bound on the Holevo quantity of a qubit-input channel:
/// `log2(out_dim) - g_1(|Phi|^2)` with the exact norm.
pub fn holevo_upper_bound(map: &HermitianMap) -> Result<f64, QubitExactError> {
    let norm = qubit_norm12(map)?;
    let g = g_alpha((norm.norm12 * norm.norm12).min(1.0), 1.0)?;
    Ok((map.out_dim() as f64).log2() - g.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{family_depolarizing, family_rescaling, Channel, Star};
    use crate::entropy::renyi_entropy;
    use crate::linalg::DensityMatrix;
    use crate::sample;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::Rng as _;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quadratic(a: &[f64; 3], b: &[f64; 3], r: &[f64; 3]) -> f64 {
        (0..3).map(|j| 2.0 * b[j] * r[j] + a[j] * r[j] * r[j]).sum()
    }

    /// Dense scan of the sphere plus local refinement; independent of the
    /// secular machinery.
    fn sphere_scan_max(a: &[f64; 3], b: &[f64; 3]) -> f64 {
        let mut best = f64::NEG_INFINITY;
        let mut arg = [1.0, 0.0, 0.0];
        let steps = 160;
        for i in 0..=steps {
            let theta = std::f64::consts::PI * i as f64 / steps as f64;
            for j in 0..(2 * steps) {
                let phi = std::f64::consts::TAU * j as f64 / (2 * steps) as f64;
                let r = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
                let val = quadratic(a, b, &r);
                if val > best {
                    best = val;
                    arg = r;
                }
            }
        }
        // Projected-gradient polish.
        let mut r = arg;
        let mut step = 0.1;
        for _ in 0..4000 {
            let grad: [f64; 3] = std::array::from_fn(|j| 2.0 * b[j] + 2.0 * a[j] * r[j]);
            let dot: f64 = (0..3).map(|j| grad[j] * r[j]).sum();
            let tangent: [f64; 3] = std::array::from_fn(|j| grad[j] - dot * r[j]);
            let tnorm: f64 = tangent.iter().map(|x| x * x).sum::<f64>().sqrt();
            if tnorm < 1e-14 {
                break;
            }
            let trial: [f64; 3] = std::array::from_fn(|j| r[j] + step * tangent[j]);
            let norm: f64 = trial.iter().map(|x| x * x).sum::<f64>().sqrt();
            let trial: [f64; 3] = std::array::from_fn(|j| trial[j] / norm);
            if quadratic(a, b, &trial) > quadratic(a, b, &r) {
                r = trial;
                step *= 1.3;
            } else {
                step *= 0.5;
            }
        }
        quadratic(a, b, &r).max(best)
    }

    #[test]
    fn secular_isotropic_and_linear_cases() {
        let iso = solve_secular([2.0, 2.0, 2.0], [0.0, 0.0, 0.0]);
        assert!(iso.hard_case);
        assert_abs_diff_eq!(iso.value, 2.0, epsilon = 1e-12);

        let lin = solve_secular([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(lin.mu, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(lin.value, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(lin.r[0], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn secular_hard_case_splits_slack_onto_top_axis() {
        let sol = solve_secular([3.0, 2.0, 1.0], [0.0, 0.1, 0.1]);
        assert!(sol.hard_case);
        assert_abs_diff_eq!(sol.mu, 3.0, epsilon = 1e-12);
        let w: f64 = (0.1f64 / 1.0).powi(2) + (0.1f64 / 2.0).powi(2);
        assert_abs_diff_eq!(sol.r[0], (1.0 - w).sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(sol.value, sphere_scan_max(&[3.0, 2.0, 1.0], &[0.0, 0.1, 0.1]), epsilon = 1e-9);
    }

    #[test]
    fn secular_matches_sphere_scan_on_random_problems() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for trial in 0..300 {
            let mut a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
            a.sort_by(|x, y| y.partial_cmp(x).unwrap());
            let hard = trial % 3 == 0;
            let b: [f64; 3] = std::array::from_fn(|j| {
                if hard && a[0] - a[j] < 1e-9 {
                    0.0
                } else {
                    rng.gen_range(-2.0..2.0) * if trial % 5 == 0 { 1e-3 } else { 1.0 }
                }
            });
            let sol = solve_secular(a, b);
            let scan = sphere_scan_max(&a, &b);
            assert_abs_diff_eq!(sol.value, scan, epsilon = 1e-7);
            let norm: f64 = sol.r.iter().map(|x| x * x).sum::<f64>();
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-10);
            assert!(sol.mu >= a[0] - 1e-9);
        }
    }

    #[test]
    fn secular_degenerate_top_with_signal() {
        // Degenerate top eigenvalue but b has weight on it: genuine root.
        let sol = solve_secular([2.0, 2.0, 0.0], [0.5, -0.5, 0.2]);
        assert!(!sol.hard_case);
        assert_abs_diff_eq!(sol.value, sphere_scan_max(&[2.0, 2.0, 0.0], &[0.5, -0.5, 0.2]), epsilon = 1e-8);
    }

    #[test]
    fn secular_value_is_shift_and_scale_covariant() {
        let a = [1.5, 0.3, -0.7];
        let b = [0.4, -0.2, 0.9];
        let base = solve_secular(a, b);
        let shifted = solve_secular([a[0] + 2.0, a[1] + 2.0, a[2] + 2.0], b);
        assert_abs_diff_eq!(shifted.value, base.value + 2.0, epsilon = 1e-10);
        let scaled = solve_secular(
            [3.0 * a[0], 3.0 * a[1], 3.0 * a[2]],
            [3.0 * b[0], 3.0 * b[1], 3.0 * b[2]],
        );
        assert_abs_diff_eq!(scaled.value, 3.0 * base.value, epsilon = 1e-10);
    }

    #[test]
    fn identity_channel_norm_is_one() {
        let map = HermitianMap::from(Channel::identity(2));
        let res = qubit_norm12(&map).unwrap();
        assert_abs_diff_eq!(res.norm12, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(res.trace_term, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn depolarizing_norm_closed_form() {
        for t in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let map = family_depolarizing(2, t).unwrap();
            let res = qubit_norm12(&map).unwrap();
            let expected = ((1.0 + t * t) / 2.0).sqrt();
            assert_abs_diff_eq!(res.norm12, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn transpose_rescaling_outside_cp_range_still_has_exact_norm() {
        // t = -1 on one qubit: TP and unital but not CP.
        let map = family_rescaling(2, -1.0, Star::Identity).unwrap();
        assert!(!map.flags().completely_positive);
        let res = qubit_norm12(&map).unwrap();
        assert_abs_diff_eq!(res.norm12, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn norm_value_matches_direct_evaluation_at_optimizer() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..40 {
            let out_dim = rng.gen_range(2..=4);
            let kraus = rng.gen_range(1..=4);
            let ch = sample::random_channel(2, out_dim, kraus, &mut rng);
            let map = HermitianMap::from(ch.clone());
            let res = qubit_norm12(&map).unwrap();
            let psi = res.optimal_state();
            let direct = ch.output_purity(&psi).sqrt();
            assert_abs_diff_eq!(res.norm12, direct, epsilon = 1e-10);
            let norm: f64 = res.bloch.iter().map(|x| x * x).sum();
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn norm_is_invariant_under_unitary_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        for _ in 0..10 {
            let ch = sample::random_channel(2, 3, 2, &mut rng);
            let u = sample::random_unitary(3, &mut rng);
            let v = sample::random_unitary(2, &mut rng);
            let rotated: Vec<_> = ch.kraus().iter().map(|a| &u * a * &v).collect();
            let rotated = Channel::from_kraus(rotated).unwrap();
            let base = qubit_norm12(&HermitianMap::from(ch)).unwrap().norm12;
            let rot = qubit_norm12(&HermitianMap::from(rotated)).unwrap().norm12;
            assert_abs_diff_eq!(base, rot, epsilon = 1e-10);
        }
    }

    #[test]
    fn rescaling_norm_grows_with_magnitude() {
        let mut last = 0.0;
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let map = family_depolarizing(2, t).unwrap();
            let norm = qubit_norm12(&map).unwrap().norm12;
            assert!(norm >= last - 1e-12);
            last = norm;
        }
    }

    #[test]
    fn qubit_entropy_closed_forms() {
        let map = HermitianMap::from(Channel::identity(2));
        for alpha in [0.5, 1.0, 2.0, f64::INFINITY] {
            assert_abs_diff_eq!(qubit_smin_alpha(&map, alpha).unwrap(), 0.0, epsilon = 1e-12);
        }
        let map = family_depolarizing(2, 0.5).unwrap();
        assert_abs_diff_eq!(qubit_smin_alpha(&map, 1.0).unwrap(), 0.811278124459133, epsilon = 1e-12);
        assert_abs_diff_eq!(qubit_smin_alpha(&map, 2.0).unwrap(), 0.678071905112638, epsilon = 1e-12);
        assert_abs_diff_eq!(
            qubit_smin_alpha(&map, f64::INFINITY).unwrap(),
            2.0 - 3.0f64.log2(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn qubit_entropy_matches_entropy_at_optimal_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(109);
        for _ in 0..20 {
            let ch = sample::random_channel(2, 2, rng.gen_range(1..=4), &mut rng);
            let map = HermitianMap::from(ch.clone());
            let res = qubit_norm12(&map).unwrap();
            let psi = res.optimal_state();
            let rho = DensityMatrix::pure(&psi);
            let out = ch.apply(rho.matrix()).unwrap();
            let out = DensityMatrix::new(crate::linalg::HermitianMatrix::symmetrize(out)).unwrap();
            for alpha in [1.0, 1.5, 2.0] {
                let smin = qubit_smin_alpha(&map, alpha).unwrap();
                let at_opt = renyi_entropy(&out, alpha).unwrap();
                assert_abs_diff_eq!(smin, at_opt, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn lower_bound_is_exact_for_qubit_outputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(113);
        for _ in 0..10 {
            let ch = sample::random_channel(2, 2, 3, &mut rng);
            let map = HermitianMap::from(ch);
            let norm = qubit_norm12(&map).unwrap().norm12;
            for alpha in [1.0, 1.5, 2.0] {
                let bound = smin_lower_bound(&map, alpha, norm).unwrap();
                assert!(bound.exact);
                let smin = qubit_smin_alpha(&map, alpha).unwrap();
                assert_abs_diff_eq!(bound.bits, smin, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn holevo_bound_frozen_values() {
        let map = HermitianMap::from(Channel::identity(2));
        assert_abs_diff_eq!(holevo_upper_bound(&map).unwrap(), 1.0, epsilon = 1e-12);
        let map = family_depolarizing(2, 0.5).unwrap();
        assert_abs_diff_eq!(holevo_upper_bound(&map).unwrap(), 1.0 - 0.811278124459133, epsilon = 1e-12);
    }

    #[test]
    fn rejects_wrong_dimensions_and_flags() {
        let map = HermitianMap::from(Channel::identity(3));
        assert!(matches!(qubit_norm12(&map), Err(QubitExactError::InputDimension(3))));
        let mut rng = ChaCha8Rng::seed_from_u64(127);
        let tall = sample::random_channel(2, 3, 2, &mut rng);
        assert!(matches!(
            qubit_smin_alpha(&HermitianMap::from(tall), 2.0),
            Err(QubitExactError::OutputDimension(3))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn secular_stationarity_holds(
            a0 in -2.0f64..2.0, a1 in -2.0f64..2.0, a2 in -2.0f64..2.0,
            b0 in -1.0f64..1.0, b1 in -1.0f64..1.0, b2 in -1.0f64..1.0,
        ) {
            let mut a = [a0, a1, a2];
            a.sort_by(|x, y| y.partial_cmp(x).unwrap());
            let b = [b0, b1, b2];
            let sol = solve_secular(a, b);
            // Gradient of the Lagrangian: b + diag(a) r - mu r = 0.
            for j in 0..3 {
                let resid = b[j] + a[j] * sol.r[j] - sol.mu * sol.r[j];
                prop_assert!(resid.abs() <= 1e-6 * (1.0 + b[j].abs() + a[j].abs()),
                    "j={j} resid={resid} mu={} r={:?} hard={}", sol.mu, sol.r, sol.hard_case);
            }
        }
    }
}
