//! Matrix representation on the traceless sector and the gamma functional.
//!
//! A trace-preserving map splits over `I/sqrt(n)` plus a traceless basis; the
//! traceless block `B` has Gram matrix `A = B^T B` with
//! `A_{jk} = Tr[Phi(M_j) Phi(M_k)]`. For unital maps the largest eigenvalue
//! `|A|` controls the multiplicative norm bound
//!
//! ```text
//! gamma = 1/k + (1 - 1/n) |A|    if n >= k |A|,
//! gamma = |A|                    otherwise,
//! ```
//!
//! and `|Phi x Omega|_{1->2} <= sqrt(gamma) |Omega|_{1->2}` for every CP
//! extension. Weyl-covariant mixtures diagonalize `A` explicitly, which
//! gives closed forms for the channel and for its complementary channel.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::bases::{weyl_pairs, BasisError, TracelessBasis};
use crate::channels::{
    validate_dwcc_weights, validate_weyl_pairs, ChannelError, HermitianMap, MapFlags,
};
use crate::linalg::hs_inner;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("map must be trace preserving to split over the traceless sector")]
    NotTracePreserving,
    #[error("gamma requires a unital map")]
    NotUnital,
    #[error("basis dimension {basis} does not match map dimension {map}")]
    DimensionMismatch { basis: usize, map: usize },
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

/// Traceless-sector data of a trace-preserving map.
#[derive(Debug, Clone)]
pub struct ChannelRep {
    pub in_dim: usize,
    pub out_dim: usize,
    pub flags: MapFlags,
    /// `B_{ij} = Tr[N_i Phi(M_j)]`, shape `(k^2 - 1) x (n^2 - 1)`.
    pub b: DMatrix<f64>,
    /// `A_{jk} = Tr[Phi(M_j) Phi(M_k)]`, symmetric positive semidefinite.
    pub a: DMatrix<f64>,
    /// Largest eigenvalue of `a`.
    pub a_norm: f64,
    /// Eigenvalues of `a`, descending.
    pub a_eigenvalues: Vec<f64>,
    /// Matching orthonormal eigenvectors, one per column.
    pub a_eigenvectors: DMatrix<f64>,
}

impl ChannelRep {
    /// Number of top eigenvalues within relative tolerance of `a_norm`.
    pub fn top_multiplicity(&self) -> usize {
        let tol = crate::linalg::EIG_GROUP_RTOL * self.a_norm.abs().max(1.0);
        self.a_eigenvalues.iter().take_while(|&&v| self.a_norm - v <= tol).count()
    }
}

/// Builds the traceless-sector representation of `map` in the given bases.
pub fn build_rep(
    map: &HermitianMap,
    in_basis: &TracelessBasis,
    out_basis: &TracelessBasis,
) -> Result<ChannelRep, RepError> {
    if !map.flags().trace_preserving {
        return Err(RepError::NotTracePreserving);
    }
    if in_basis.dim() != map.in_dim() {
        return Err(RepError::DimensionMismatch { basis: in_basis.dim(), map: map.in_dim() });
    }
    if out_basis.dim() != map.out_dim() {
        return Err(RepError::DimensionMismatch { basis: out_basis.dim(), map: map.out_dim() });
    }
    let images: Vec<_> = in_basis
        .elements()
        .iter()
        .map(|m| map.apply(m.matrix()).expect("dimensions checked"))
        .collect();
    let dim_in = images.len();
    let dim_out = out_basis.len();

    let mut b = DMatrix::zeros(dim_out, dim_in);
    for (j, img) in images.iter().enumerate() {
        for (i, n_i) in out_basis.elements().iter().enumerate() {
            b[(i, j)] = hs_inner(n_i.matrix(), img).re;
        }
    }
    let mut a = DMatrix::zeros(dim_in, dim_in);
    for j in 0..dim_in {
        for k in j..dim_in {
            let val = hs_inner(&images[j], &images[k]).re;
            a[(j, k)] = val;
            a[(k, j)] = val;
        }
    }

    let eig = a.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim_in).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).expect("finite"));
    let a_eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut a_eigenvectors = DMatrix::zeros(dim_in, dim_in);
    for (new, &old) in order.iter().enumerate() {
        a_eigenvectors.set_column(new, &eig.eigenvectors.column(old));
    }
    let a_norm = a_eigenvalues.first().copied().unwrap_or(0.0).max(0.0);

    Ok(ChannelRep {
        in_dim: map.in_dim(),
        out_dim: map.out_dim(),
        flags: map.flags(),
        b,
        a,
        a_norm,
        a_eigenvalues,
        a_eigenvectors,
    })
}

/// Which closed form produced a gamma value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaBranch {
    /// `1/k + (1 - 1/n) |A|`, the mixing branch.
    Small,
    /// `|A|` alone.
    Large,
}

#[derive(Debug, Clone, Copy)]
pub struct GammaResult {
    pub gamma: f64,
    pub branch: GammaBranch,
    pub a_norm: f64,
}

/// Gamma functional of a unital trace-preserving map.
pub fn gamma(rep: &ChannelRep) -> Result<GammaResult, RepError> {
    if !rep.flags.trace_preserving {
        return Err(RepError::NotTracePreserving);
    }
    if !rep.flags.unital {
        return Err(RepError::NotUnital);
    }
    let n = rep.in_dim as f64;
    let k = rep.out_dim as f64;
    Ok(if n >= k * rep.a_norm - 1e-12 {
        GammaResult {
            gamma: 1.0 / k + (1.0 - 1.0 / n) * rep.a_norm,
            branch: GammaBranch::Small,
            a_norm: rep.a_norm,
        }
    } else {
        GammaResult { gamma: rep.a_norm, branch: GammaBranch::Large, a_norm: rep.a_norm }
    })
}

/// Gamma of a Weyl-covariant mixture, via its diagonal traceless action.
#[derive(Debug, Clone)]
pub struct DwccGamma {
    pub gamma: GammaResult,
    /// `|c_{a,b}|^2` per index pair, in `weyl_pairs` order; these are the
    /// diagonal entries of `A` on both basis slots of the pair.
    pub coefficients: Vec<((usize, usize), f64)>,
}

/// Closed-form gamma for `rho -> sum p_{x,y} W rho W^dag`.
///
/// The mixture acts diagonally on Weyl operators with multiplier
/// `c_{a,b} = sum_{x,y} p_{x,y} omega^{a y - x b}`, so `A` is diagonal with
/// entries `|c_{a,b}|^2` and `|A|` is their maximum.
pub fn gamma_dwcc(n: usize, weights: &[(usize, usize, f64)]) -> Result<DwccGamma, RepError> {
    validate_dwcc_weights(n, weights)?;
    let mut coefficients = Vec::new();
    let mut a_norm = 0.0f64;
    for (pa, pb) in weyl_pairs(n) {
        let mut c = num_complex::Complex64::new(0.0, 0.0);
        for &(x, y, w) in weights {
            let exponent = ((pa * y) % n + n - (x * pb) % n) % n;
            let phase = std::f64::consts::TAU * exponent as f64 / n as f64;
            c += num_complex::Complex64::new(phase.cos(), phase.sin()).scale(w);
        }
        let sq = c.norm_sqr();
        a_norm = a_norm.max(sq);
        coefficients.push(((pa, pb), sq));
    }
    let nf = n as f64;
    let branch_small = nf >= nf * a_norm - 1e-12;
    let gamma = if branch_small {
        GammaResult {
            gamma: 1.0 / nf + (1.0 - 1.0 / nf) * a_norm,
            branch: GammaBranch::Small,
            a_norm,
        }
    } else {
        GammaResult { gamma: a_norm, branch: GammaBranch::Large, a_norm }
    };
    Ok(DwccGamma { gamma, coefficients })
}

/// Multiplicity per canonical Weyl index pair, in `weyl_pairs` order.
pub type PairCounts = Vec<((usize, usize), usize)>;

/// Difference multiplicities of a Weyl index subset.
///
/// `N(a, b)` counts ordered pairs of distinct subset elements whose
/// difference is `(a, b)` or `(-a, -b)` mod `n`; the total over all index
/// pairs is `k (k - 1)`.
pub fn n_table(n: usize, pairs: &[(usize, usize)]) -> Result<PairCounts, RepError> {
    validate_weyl_pairs(n, pairs)?;
    let table = weyl_pairs(n)
        .into_iter()
        .map(|(a, b)| {
            let mut count = 0usize;
            for &(lx, ly) in pairs {
                for &(mx, my) in pairs {
                    if (lx, ly) == (mx, my) {
                        continue;
                    }
                    let dx = (mx + n - lx) % n;
                    let dy = (my + n - ly) % n;
                    if (dx, dy) == (a, b) || (dx, dy) == ((n - a % n) % n, (n - b % n) % n) {
                        count += 1;
                    }
                }
            }
            ((a, b), count)
        })
        .collect();
    Ok(table)
}

/// Closed-form gamma data for the complementary channel of a uniform
/// Weyl-subset mixture.
#[derive(Debug, Clone)]
pub struct ComplementGamma {
    pub gamma: GammaResult,
    /// Predicted diagonal of `A` in the Weyl basis: `n N(a,b) / (2 k^2)`.
    pub diagonal: Vec<((usize, usize), f64)>,
    pub n_table: PairCounts,
    pub max_n: usize,
}

/// Gamma of the complementary channel of `rho -> (1/k) sum W rho W^dag`.
///
/// The complement acts on the traceless sector with diagonal Gram
/// `n N(a,b) / (2 k^2)`; its largest entry decides between the mixing
/// branch, `1/k + (n - 1) max N / (2 k^2)` when `max N <= 2`, and the bare
/// norm `n max N / (2 k^2)` otherwise.
pub fn gamma_complement(n: usize, pairs: &[(usize, usize)]) -> Result<ComplementGamma, RepError> {
    let table = n_table(n, pairs)?;
    let k = pairs.len() as f64;
    let nf = n as f64;
    let diagonal: Vec<((usize, usize), f64)> = table
        .iter()
        .map(|&((a, b), count)| ((a, b), nf * count as f64 / (2.0 * k * k)))
        .collect();
    let max_n = table.iter().map(|&(_, count)| count).max().unwrap_or(0);
    let a_norm = nf * max_n as f64 / (2.0 * k * k);
    let gamma = if max_n <= 2 {
        GammaResult {
            gamma: 1.0 / k + (nf - 1.0) * max_n as f64 / (2.0 * k * k),
            branch: GammaBranch::Small,
            a_norm,
        }
    } else {
        GammaResult { gamma: a_norm, branch: GammaBranch::Large, a_norm }
    };
    Ok(ComplementGamma { gamma, diagonal, n_table: table, max_n })
}
