//! Reference optimizers for output norms and entropies.
//!
//! These are deliberately independent of the closed forms elsewhere in the
//! crate: seeded multistart projected gradient ascent over pure inputs, plus
//! an exhaustive Bloch grid for qubit inputs. Results are bitwise
//! reproducible for a fixed seed; restarts run in parallel and are reduced
//! in index order.

use num_complex::Complex64;
use once_cell_like::pool_install;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::channels::{ChannelError, HermitianMap};
use crate::entropy::renyi_entropy_spectrum;
use crate::linalg::{eig_hermitian, eigvals_hermitian, ComplexMatrix, ComplexVector, cr};
use crate::sample;

/// Largest pure-state search dimension before the oracle refuses.
pub const DIMENSION_BUDGET: usize = 32;

const GRAD_TOL: f64 = 1e-10;
const MAX_ITERS: usize = 500;
const GRID_THETA: usize = 721;
const GRID_PHI: usize = 1441;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle requires a trace-preserving map")]
    NotTracePreserving,
    #[error("entropy oracle requires a completely positive map")]
    NotCompletelyPositive,
    #[error("alpha must lie in (0, inf] (got {alpha})")]
    AlphaOutOfRange { alpha: f64 },
    #[error("p must lie in [1, 2] (got {p})")]
    POutOfRange { p: f64 },
    #[error("at least one restart is required")]
    ZeroRestarts,
    #[error("search dimension {dim} exceeds the budget of {max}")]
    DimensionBudget { dim: usize, max: usize },
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

/// Outcome of a multistart search.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Best objective value found (norm, not squared, for norm oracles;
    /// bits for entropy oracles).
    pub value: f64,
    /// Optimizer: a unit vector for state searches, a flattened row-major
    /// matrix for the `p -> 2` search.
    pub arg: Vec<Complex64>,
    pub restarts: usize,
    /// Fraction of gradient runs that met the first-order tolerance.
    pub converged_fraction: f64,
    pub seed: u64,
}

mod once_cell_like {
    use std::sync::OnceLock;

    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();

    /// Runs `f` on the pool capped by `MOE_THREADS` (unset or 0 = default).
    pub fn pool_install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
        let pool = POOL.get_or_init(|| {
            match std::env::var("MOE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
                Some(t) if t > 0 => {
                    rayon::ThreadPoolBuilder::new().num_threads(t).build().ok()
                }
                _ => None,
            }
        });
        match pool {
            Some(p) => p.install(f),
            None => f(),
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

fn derive_seed(seed: u64, salt: u64) -> u64 {
    splitmix64(seed ^ splitmix64(salt))
}

#[derive(Clone, Copy, PartialEq)]
enum Goal {
    /// Maximize `Tr[Phi(psi psi^dag)^2]`.
    Purity,
    /// Maximize `-S_alpha(Phi(psi psi^dag))`.
    NegEntropy(f64),
}

fn output_state(map: &HermitianMap, psi: &ComplexVector) -> ComplexMatrix {
    match map {
        HermitianMap::Kraus(ch) => {
            let k = ch.out_dim();
            let mut sigma = ComplexMatrix::zeros(k, k);
            for a in ch.kraus() {
                let u = a * psi;
                sigma += &u * u.adjoint();
            }
            sigma
        }
        HermitianMap::Basis(_) => {
            let rho = psi * psi.adjoint();
            map.apply(&rho).expect("dimensions fixed by caller")
        }
    }
}

/// `Tr[Phi(psi psi^dag)^2]` at a unit vector.
pub fn norm12_objective(map: &HermitianMap, psi: &ComplexVector) -> f64 {
    match map {
        HermitianMap::Kraus(ch) => ch.output_purity(psi),
        HermitianMap::Basis(_) => {
            let sigma = output_state(map, psi);
            sigma.iter().map(|z| z.norm_sqr()).sum()
        }
    }
}

/// `S_alpha(Phi(psi psi^dag))` in bits at a unit vector.
pub fn smin_objective(map: &HermitianMap, psi: &ComplexVector, alpha: f64) -> f64 {
    let sigma = output_state(map, psi);
    let spectrum = eigvals_hermitian(&sigma);
    renyi_entropy_spectrum(&spectrum, alpha).expect("alpha validated by caller")
}

fn eval_goal(map: &HermitianMap, psi: &ComplexVector, goal: Goal) -> f64 {
    match goal {
        Goal::Purity => norm12_objective(map, psi),
        Goal::NegEntropy(alpha) => -smin_objective(map, psi, alpha),
    }
}

/// Applies the adjoint map to `m` and multiplies into `psi`.
fn adjoint_into_state(map: &HermitianMap, m: &ComplexMatrix, psi: &ComplexVector) -> ComplexVector {
    match map {
        HermitianMap::Kraus(ch) => {
            let mut out = ComplexVector::zeros(ch.in_dim());
            for a in ch.kraus() {
                out += a.adjoint() * (m * (a * psi));
            }
            out
        }
        HermitianMap::Basis(_) => {
            map.apply_adjoint(m).expect("dimensions fixed by caller") * psi
        }
    }
}

const LN2: f64 = std::f64::consts::LN_2;

/// Euclidean gradient of the goal as a function of `psi` (times 1/2: the
/// retraction only needs the direction).
fn euclid_grad(map: &HermitianMap, psi: &ComplexVector, goal: Goal) -> ComplexVector {
    let sigma = output_state(map, psi);
    let seed_matrix = match goal {
        Goal::Purity => sigma.scale(2.0),
        Goal::NegEntropy(alpha) => {
            let eig = eig_hermitian(&sigma);
            let k = sigma.nrows();
            let mut weights = vec![0.0f64; eig.values.len()];
            if alpha.is_infinite() {
                weights[0] = 1.0 / (eig.values[0].max(1e-300) * LN2);
            } else if (alpha - 1.0).abs() < 1e-12 {
                for (w, &v) in weights.iter_mut().zip(&eig.values) {
                    *w = (v.max(1e-300).ln() + 1.0) / LN2;
                }
            } else {
                let total: f64 = eig.values.iter().map(|&v| v.max(0.0).powf(alpha)).sum();
                let scale = alpha / ((1.0 - alpha) * LN2 * total.max(1e-300));
                for (w, &v) in weights.iter_mut().zip(&eig.values) {
                    *w = -scale * v.max(1e-15).powf(alpha - 1.0);
                }
            }
            let mut m = ComplexMatrix::zeros(k, k);
            for (idx, &w) in weights.iter().enumerate() {
                let col = eig.vectors.column(idx);
                m += (col * col.adjoint()).scale(w);
            }
            m
        }
    };
    adjoint_into_state(map, &seed_matrix, psi)
}

struct AscentRun {
    f: f64,
    psi: ComplexVector,
    converged: bool,
}

fn ascend(map: &HermitianMap, start: ComplexVector, goal: Goal) -> AscentRun {
    match goal {
        Goal::Purity => ascend_purity(map, start),
        Goal::NegEntropy(_) => ascend_gradient(map, start, goal),
    }
}

const EXTRAP_PERIOD: usize = 10;

/// Geometric secant extrapolation along the recent displacement.
///
/// Quartically flat ridges (common for covariant channels, where the
/// optimizer deficit scales like contamination^4) make every first-order
/// method crawl sublinearly; jumping multiples of the recent displacement
/// and keeping the best improvement escapes them at negligible cost.
fn extrapolate(
    psi: &ComplexVector,
    prev: &ComplexVector,
    f: f64,
    eval: impl Fn(&ComplexVector) -> f64,
) -> Option<(f64, ComplexVector)> {
    let dir = psi - prev;
    if dir.norm() < 1e-17 {
        return None;
    }
    let mut best: Option<(f64, ComplexVector)> = None;
    let mut kappa = 1.0;
    for _ in 0..20 {
        let cand = psi + dir.scale(kappa);
        let nrm = cand.norm();
        let cand = cand.unscale(nrm);
        let fc = eval(&cand);
        if fc > best.as_ref().map_or(f, |b| b.0) {
            best = Some((fc, cand));
        }
        kappa = kappa * 2.0 + 1.0;
    }
    best
}

/// Conditional-gradient ascent on `Tr[Phi(psi psi^dag)^2]`.
///
/// The objective is a convex quadratic in the input state, so replacing the
/// state with the top eigenvector of `Phi^dag(Phi(psi psi^dag))` is monotone:
/// `f' >= 2 lambda_max - f >= f`. Fixed points are exactly the stationary
/// states, and there is no step size to tune.
fn ascend_purity(map: &HermitianMap, start: ComplexVector) -> AscentRun {
    let mut psi = start;
    let mut f = norm12_objective(map, &psi);
    let mut converged = false;
    let mut checkpoint = psi.clone();
    for iter in 1..=MAX_ITERS {
        let sigma = output_state(map, &psi);
        let m = map.apply_adjoint(&sigma).expect("dimensions fixed by caller");
        let eig = eig_hermitian(&m);
        let gap = eig.values[0] - f;
        if gap <= 1e-14 * f.abs().max(1.0) {
            converged = true;
            break;
        }
        let cand = eig.vectors.column(0).into_owned();
        let fc = norm12_objective(map, &cand);
        let mut progressed = false;
        if fc > f {
            psi = cand;
            f = fc;
            progressed = true;
        }
        if iter % EXTRAP_PERIOD == 0 || !progressed {
            if let Some((fe, pe)) =
                extrapolate(&psi, &checkpoint, f, |v| norm12_objective(map, v))
            {
                f = fe;
                psi = pe;
                progressed = true;
            }
            checkpoint = psi.clone();
        }
        if !progressed {
            converged = true;
            break;
        }
    }
    AscentRun { f, psi, converged }
}

fn ascend_gradient(map: &HermitianMap, start: ComplexVector, goal: Goal) -> AscentRun {
    let mut psi = start;
    let mut f = eval_goal(map, &psi, goal);
    let mut step = 0.5;
    let mut converged = false;
    let mut checkpoint = psi.clone();
    for iter in 1..=MAX_ITERS {
        let grad = euclid_grad(map, &psi, goal);
        let overlap = psi.dotc(&grad).re;
        let tangent = &grad - psi.scale(overlap);
        let tnorm = tangent.norm();
        if tnorm <= GRAD_TOL {
            converged = true;
            break;
        }
        let mut accepted = false;
        for _ in 0..40 {
            let trial = &psi + tangent.scale(step);
            let nrm = trial.norm();
            let trial = trial.unscale(nrm);
            let ft = eval_goal(map, &trial, goal);
            if ft > f + 1e-4 * step * tnorm * tnorm {
                psi = trial;
                f = ft;
                step = (step * 2.0).min(1e3);
                accepted = true;
                break;
            }
            step *= 0.5;
            if step < 1e-18 {
                break;
            }
        }
        if iter % EXTRAP_PERIOD == 0 || !accepted {
            if let Some((fe, pe)) =
                extrapolate(&psi, &checkpoint, f, |v| eval_goal(map, v, goal))
            {
                f = fe;
                psi = pe;
                accepted = true;
            }
            checkpoint = psi.clone();
        }
        if !accepted {
            // No ascent direction at line-search resolution: stationary for
            // all practical purposes (typical for the kink at alpha = inf).
            converged = tnorm <= 1e-6;
            break;
        }
    }
    AscentRun { f, psi, converged }
}

/// Best grid point of the purity objective on the Bloch sphere.
fn grid_best_purity(map: &HermitianMap) -> (f64, ComplexVector) {
    let rows: Vec<(f64, usize, usize)> = match map {
        HermitianMap::Kraus(ch) => {
            let a0: Vec<ComplexVector> = ch.kraus().iter().map(|a| a.column(0).into_owned()).collect();
            let a1: Vec<ComplexVector> = ch.kraus().iter().map(|a| a.column(1).into_owned()).collect();
            let r = a0.len();
            let gram = |u: &[ComplexVector], v: &[ComplexVector]| -> Vec<Complex64> {
                let mut g = vec![Complex64::default(); r * r];
                for i in 0..r {
                    for j in 0..r {
                        g[i * r + j] = u[i].dotc(&v[j]);
                    }
                }
                g
            };
            let p = gram(&a0, &a0);
            let q = gram(&a0, &a1);
            let rr = gram(&a1, &a0);
            let s = gram(&a1, &a1);
            (0..GRID_THETA)
                .into_par_iter()
                .map(|i| {
                    let theta = std::f64::consts::PI * i as f64 / (GRID_THETA - 1) as f64;
                    let (c, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                    let (c2, cs, s2) = (c * c, c * sn, sn * sn);
                    let mut best = (f64::NEG_INFINITY, i, 0);
                    for j in 0..GRID_PHI {
                        let phi = std::f64::consts::TAU * j as f64 / (GRID_PHI - 1) as f64;
                        let e = Complex64::from_polar(1.0, phi);
                        let mut purity = 0.0;
                        for a in 0..r {
                            for b in a..r {
                                let z = p[a * r + b] * c2
                                    + q[a * r + b] * (e * cs)
                                    + rr[a * r + b] * (e.conj() * cs)
                                    + s[a * r + b] * s2;
                                purity += if a == b { z.norm_sqr() } else { 2.0 * z.norm_sqr() };
                            }
                        }
                        if purity > best.0 {
                            best = (purity, i, j);
                        }
                    }
                    best
                })
                .collect()
        }
        HermitianMap::Basis(_) => {
            let images = pauli_images(map);
            (0..GRID_THETA)
                .into_par_iter()
                .map(|i| {
                    let theta = std::f64::consts::PI * i as f64 / (GRID_THETA - 1) as f64;
                    let mut best = (f64::NEG_INFINITY, i, 0);
                    for j in 0..GRID_PHI {
                        let phi = std::f64::consts::TAU * j as f64 / (GRID_PHI - 1) as f64;
                        let sigma = bloch_output(&images, theta, phi);
                        let purity: f64 = sigma.iter().map(|z| z.norm_sqr()).sum();
                        if purity > best.0 {
                            best = (purity, i, j);
                        }
                    }
                    best
                })
                .collect()
        }
    };
    finish_grid(rows)
}

/// Best grid point of `-S_alpha` for a map with qubit output.
fn grid_best_neg_entropy(map: &HermitianMap, alpha: f64) -> (f64, ComplexVector) {
    let images = pauli_images(map);
    let rows: Vec<(f64, usize, usize)> = (0..GRID_THETA)
        .into_par_iter()
        .map(|i| {
            let theta = std::f64::consts::PI * i as f64 / (GRID_THETA - 1) as f64;
            let mut best = (f64::NEG_INFINITY, i, 0);
            for j in 0..GRID_PHI {
                let phi = std::f64::consts::TAU * j as f64 / (GRID_PHI - 1) as f64;
                let sigma = bloch_output(&images, theta, phi);
                let half_tr = 0.5 * (sigma[(0, 0)].re + sigma[(1, 1)].re);
                let det = (sigma[(0, 0)] * sigma[(1, 1)] - sigma[(0, 1)] * sigma[(1, 0)]).re;
                let disc = (half_tr * half_tr - det).max(0.0).sqrt();
                let hi = (half_tr + disc).clamp(0.0, 1.0);
                let lo = (half_tr - disc).max(0.0);
                let entropy = if alpha.is_infinite() {
                    -hi.max(1e-300).log2()
                } else if (alpha - 1.0).abs() < 1e-12 {
                    let mut h = 0.0;
                    for v in [hi, lo] {
                        if v > 0.0 {
                            h -= v * v.log2();
                        }
                    }
                    h
                } else if (alpha - 2.0).abs() < 1e-12 {
                    -(hi * hi + lo * lo).log2()
                } else {
                    (hi.powf(alpha) + lo.powf(alpha)).log2() / (1.0 - alpha)
                };
                if -entropy > best.0 {
                    best = (-entropy, i, j);
                }
            }
            best
        })
        .collect();
    finish_grid(rows)
}

fn pauli_images(map: &HermitianMap) -> [ComplexMatrix; 4] {
    let eye = ComplexMatrix::identity(2, 2);
    let x = ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
    let y = ComplexMatrix::from_row_slice(
        2,
        2,
        &[cr(0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), cr(0.0)],
    );
    let z = ComplexMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]);
    [
        map.apply(&eye).expect("qubit input"),
        map.apply(&x).expect("qubit input"),
        map.apply(&y).expect("qubit input"),
        map.apply(&z).expect("qubit input"),
    ]
}

fn bloch_output(images: &[ComplexMatrix; 4], theta: f64, phi: f64) -> ComplexMatrix {
    let (x, y, z) = (theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
    ((&images[0] + images[1].scale(x)) + (images[2].scale(y) + images[3].scale(z))).scale(0.5)
}

fn finish_grid(rows: Vec<(f64, usize, usize)>) -> (f64, ComplexVector) {
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    for row in rows {
        if row.0 > best.0 {
            best = row;
        }
    }
    let theta = std::f64::consts::PI * best.1 as f64 / (GRID_THETA - 1) as f64;
    let phi = std::f64::consts::TAU * best.2 as f64 / (GRID_PHI - 1) as f64;
    let psi = ComplexVector::from_vec(vec![
        cr((theta / 2.0).cos()),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]);
    (best.0, psi)
}

struct SearchOutcome {
    best_f: f64,
    best_psi: ComplexVector,
    converged_fraction: f64,
}

/// Multistart ascent, plus the Bloch grid when available for the goal.
fn search_states(map: &HermitianMap, goal: Goal, seed: u64, restarts: usize) -> SearchOutcome {
    let n = map.in_dim();
    let (grid, runs): (Option<(f64, ComplexVector)>, Vec<AscentRun>) = pool_install(|| {
        let grid = match goal {
            Goal::Purity if n == 2 => Some(grid_best_purity(map)),
            Goal::NegEntropy(alpha) if n == 2 && map.out_dim() == 2 => {
                Some(grid_best_neg_entropy(map, alpha))
            }
            _ => None,
        };
        let runs = (0..restarts)
            .into_par_iter()
            .map(|idx| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(idx as u64 + 1);
                let start = sample::random_unit_vector(n, &mut rng);
                ascend(map, start, goal)
            })
            .collect();
        (grid, runs)
    });

    let mut total_runs = runs.len();
    let mut converged = runs.iter().filter(|r| r.converged).count();
    let mut best_f = f64::NEG_INFINITY;
    let mut best_psi = ComplexVector::zeros(n);
    for run in &runs {
        if run.f > best_f {
            best_f = run.f;
            best_psi = run.psi.clone();
        }
    }
    if let Some((grid_f, grid_psi)) = grid {
        let polish = ascend(map, grid_psi.clone(), goal);
        total_runs += 1;
        if polish.converged {
            converged += 1;
        }
        if polish.f > best_f {
            best_f = polish.f;
            best_psi = polish.psi;
        }
        if grid_f > best_f {
            best_f = grid_f;
            best_psi = grid_psi;
        }
    }
    SearchOutcome {
        best_f,
        best_psi,
        converged_fraction: converged as f64 / total_runs.max(1) as f64,
    }
}

fn check_state_search(map: &HermitianMap, restarts: usize) -> Result<(), OracleError> {
    if restarts == 0 {
        return Err(OracleError::ZeroRestarts);
    }
    if !map.flags().trace_preserving {
        return Err(OracleError::NotTracePreserving);
    }
    if map.in_dim() > DIMENSION_BUDGET {
        return Err(OracleError::DimensionBudget { dim: map.in_dim(), max: DIMENSION_BUDGET });
    }
    Ok(())
}

/// Numerical `1 -> 2` norm: multistart ascent on output purity (with an
/// exhaustive Bloch grid for qubit inputs).
pub fn oracle_norm_1to2(
    map: &HermitianMap,
    seed: u64,
    restarts: usize,
) -> Result<OracleResult, OracleError> {
    check_state_search(map, restarts)?;
    let outcome = search_states(map, Goal::Purity, seed, restarts);
    Ok(OracleResult {
        value: outcome.best_f.max(0.0).sqrt(),
        arg: outcome.best_psi.iter().copied().collect(),
        restarts,
        converged_fraction: outcome.converged_fraction,
        seed,
    })
}

/// Numerical minimum output Renyi entropy for `alpha in (0, inf]`, in bits.
pub fn oracle_smin_alpha(
    map: &HermitianMap,
    alpha: f64,
    seed: u64,
    restarts: usize,
) -> Result<OracleResult, OracleError> {
    check_state_search(map, restarts)?;
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(OracleError::AlphaOutOfRange { alpha });
    }
    if !map.flags().completely_positive {
        return Err(OracleError::NotCompletelyPositive);
    }
    let outcome = search_states(map, Goal::NegEntropy(alpha), seed, restarts);
    // Entropy of a state is nonnegative; the clamp removes eigensolver noise
    // at pure outputs.
    Ok(OracleResult {
        value: (-outcome.best_f).max(0.0),
        arg: outcome.best_psi.iter().copied().collect(),
        restarts,
        converged_fraction: outcome.converged_fraction,
        seed,
    })
}

fn schatten_norm(x: &ComplexMatrix, p: f64) -> f64 {
    if (p - 2.0).abs() < 1e-14 {
        return x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    let svd = x.clone().svd(false, false);
    svd.singular_values.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Numerical `p -> 2` norm over complex matrix inputs, `p in [1, 2]`.
///
/// Projected gradient ascent of `|Phi(X)|_2` over the Schatten-`p` unit
/// sphere. For trace-preserving maps the positive-cone optimizer found by
/// [`oracle_norm_1to2`] seeds the first start, which keeps `p = 1` results
/// at least as large as the pure-state search.
pub fn oracle_norm_p2_complex(
    map: &HermitianMap,
    p: f64,
    seed: u64,
    restarts: usize,
) -> Result<OracleResult, OracleError> {
    if restarts == 0 {
        return Err(OracleError::ZeroRestarts);
    }
    if p.is_nan() || !(1.0..=2.0).contains(&p) {
        return Err(OracleError::POutOfRange { p });
    }
    let n = map.in_dim();
    if n > DIMENSION_BUDGET {
        return Err(OracleError::DimensionBudget { dim: n, max: DIMENSION_BUDGET });
    }

    let cone_seed: Option<ComplexMatrix> = if map.flags().trace_preserving {
        let state = oracle_norm_1to2(map, derive_seed(seed, 17), restarts.min(32))?;
        let psi = ComplexVector::from_vec(state.arg);
        let rho = &psi * psi.adjoint();
        let norm = schatten_norm(&rho, p);
        Some(rho.unscale(norm))
    } else {
        None
    };

    let objective = |x: &ComplexMatrix| -> f64 {
        let image = map.apply(x).expect("dimensions fixed");
        image.iter().map(|z| z.norm_sqr()).sum()
    };
    let ascend_matrix = |start: ComplexMatrix| -> (f64, ComplexMatrix, bool) {
        let mut x = start;
        let mut f = objective(&x);
        let mut step = 0.5;
        let mut converged = false;
        for _ in 0..MAX_ITERS {
            let image = map.apply(&x).expect("dimensions fixed");
            let grad = map.apply_adjoint(&image).expect("dimensions fixed").scale(2.0);
            let gnorm = grad.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let mut accepted = false;
            let mut displacement = 0.0;
            for _ in 0..40 {
                let trial = &x + grad.scale(step / gnorm.max(1e-300));
                let nrm = schatten_norm(&trial, p);
                let trial = trial.unscale(nrm);
                let ft = objective(&trial);
                if ft > f * (1.0 + 1e-15) {
                    displacement = (&trial - &x).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    x = trial;
                    f = ft;
                    step = (step * 2.0).min(10.0);
                    accepted = true;
                    break;
                }
                step *= 0.5;
                if step < 1e-18 {
                    break;
                }
            }
            if !accepted || displacement <= 1e-12 {
                converged = true;
                break;
            }
        }
        (f, x, converged)
    };

    let runs: Vec<(f64, ComplexMatrix, bool)> = pool_install(|| {
        (0..restarts)
            .into_par_iter()
            .map(|idx| {
                if idx == 0 {
                    if let Some(seed_matrix) = &cone_seed {
                        return ascend_matrix(seed_matrix.clone());
                    }
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(idx as u64 + 1);
                let raw = sample::random_matrix(n, n, &mut rng);
                let norm = schatten_norm(&raw, p);
                ascend_matrix(raw.unscale(norm))
            })
            .collect()
    });

    let converged = runs.iter().filter(|r| r.2).count();
    let mut best = &runs[0];
    for run in &runs {
        if run.0 > best.0 {
            best = run;
        }
    }
    let mut arg = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            arg.push(best.1[(i, j)]);
        }
    }
    Ok(OracleResult {
        value: best.0.max(0.0).sqrt(),
        arg,
        restarts,
        converged_fraction: converged as f64 / runs.len() as f64,
        seed,
    })
}

/// What a tensor search optimizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TensorObjective {
    Norm12,
    SminAlpha(f64),
}

/// Joint-versus-product search over a tensor pair.
#[derive(Debug, Clone)]
pub struct TensorOracleResult {
    /// Search over all joint pure inputs (the best product candidate is
    /// always included).
    pub joint: OracleResult,
    /// Objective at the tensor of the factor optimizers.
    pub product_value: f64,
    /// Advantage of entangled inputs: positive means the joint optimum
    /// beats every product state (a multiplicativity/additivity violation).
    pub gap: f64,
}

/// Optimizes the joint objective of `phi tensor omega` and compares with
/// the best product input.
pub fn oracle_tensor(
    phi: &HermitianMap,
    omega: &HermitianMap,
    objective: TensorObjective,
    seed: u64,
    restarts: usize,
) -> Result<TensorOracleResult, OracleError> {
    let dim = phi.in_dim() * omega.in_dim();
    if dim > DIMENSION_BUDGET {
        return Err(OracleError::DimensionBudget { dim, max: DIMENSION_BUDGET });
    }
    let joint_map = phi.tensor(omega)?;

    let goal = match objective {
        TensorObjective::Norm12 => Goal::Purity,
        TensorObjective::SminAlpha(alpha) => Goal::NegEntropy(alpha),
    };

    let (left, right) = match objective {
        TensorObjective::Norm12 => (
            oracle_norm_1to2(phi, derive_seed(seed, 1), restarts)?,
            oracle_norm_1to2(omega, derive_seed(seed, 2), restarts)?,
        ),
        TensorObjective::SminAlpha(alpha) => (
            oracle_smin_alpha(phi, alpha, derive_seed(seed, 1), restarts)?,
            oracle_smin_alpha(omega, alpha, derive_seed(seed, 2), restarts)?,
        ),
    };
    check_state_search(&joint_map, restarts)?;
    if let TensorObjective::SminAlpha(alpha) = objective {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(OracleError::AlphaOutOfRange { alpha });
        }
        if !joint_map.flags().completely_positive {
            return Err(OracleError::NotCompletelyPositive);
        }
    }

    let psi_left = ComplexVector::from_vec(left.arg.clone());
    let psi_right = ComplexVector::from_vec(right.arg.clone());
    let (nl, nr) = (psi_left.len(), psi_right.len());
    let mut product_state = ComplexVector::zeros(nl * nr);
    for i in 0..nl {
        for j in 0..nr {
            product_state[i * nr + j] = psi_left[i] * psi_right[j];
        }
    }
    let product_f = eval_goal(&joint_map, &product_state, goal);

    let outcome = search_states(&joint_map, goal, seed, restarts);
    let product_polish = ascend(&joint_map, product_state.clone(), goal);
    let (mut best_f, mut best_psi) = (outcome.best_f, outcome.best_psi);
    if product_polish.f > best_f {
        best_f = product_polish.f;
        best_psi = product_polish.psi;
    }
    if product_f > best_f {
        best_f = product_f;
        best_psi = product_state.clone();
    }

    let to_value = |f: f64| match objective {
        TensorObjective::Norm12 => f.max(0.0).sqrt(),
        TensorObjective::SminAlpha(_) => (-f).max(0.0),
    };
    let joint_value = to_value(best_f);
    let product_value = to_value(product_f);
    let gap = match objective {
        TensorObjective::Norm12 => joint_value - product_value,
        TensorObjective::SminAlpha(_) => product_value - joint_value,
    };
    Ok(TensorOracleResult {
        joint: OracleResult {
            value: joint_value,
            arg: best_psi.iter().copied().collect(),
            restarts,
            converged_fraction: outcome.converged_fraction,
            seed,
        },
        product_value,
        gap,
    })
}

/// Largest singular value of the dense matrix of the map on vectorized
/// inputs; equals the `2 -> 2` norm over complex matrices.
pub fn map_spectral_norm(map: &HermitianMap) -> f64 {
    let m = sample::map_matrix(map.in_dim(), map.out_dim(), |x| {
        map.apply(x).expect("dimensions fixed")
    });
    m.svd(false, false).singular_values.max()
}
