//! Orthonormal traceless Hermitian operator bases and discrete Weyl operators.
//!
//! A `TracelessBasis` holds n^2 - 1 traceless Hermitian matrices, orthonormal
//! in the Hilbert-Schmidt inner product. Three constructions are provided:
//! the Pauli basis (n = 2), the generalized Gell-Mann basis (any n), and the
//! discrete-Weyl basis built from W_{x,y} = U^x V^y via Hermitian combinations.

use crate::linalg::{c, cr, hs_inner, ComplexMatrix, HermitianMatrix};
use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

/// Orthonormality / tracelessness tolerance for basis construction.
pub const BASIS_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("basis for dimension {dim} needs {expected} elements, got {got}")]
    WrongCount { dim: usize, expected: usize, got: usize },
    #[error("element {index} ({label}) has |trace| = {trace:.3e}")]
    NotTraceless { index: usize, label: String, trace: f64 },
    #[error("Gram deviation {deviation:.3e} between elements {i} and {j}")]
    NotOrthonormal { i: usize, j: usize, deviation: f64 },
    #[error("element {index} is {rows}x{cols}, expected {dim}x{dim}")]
    WrongShape { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("Weyl index ({x},{y}) out of range for dimension {n}")]
    IndexOutOfRange { n: usize, x: usize, y: usize },
}

/// Orthonormal basis of the traceless Hermitian matrices in dimension `dim`.
#[derive(Clone, Debug)]
pub struct TracelessBasis {
    dim: usize,
    elements: Vec<HermitianMatrix>,
    labels: Vec<String>,
}

impl TracelessBasis {
    /// Validates count, shape, tracelessness, and orthonormality within
    /// [`BASIS_TOL`] before accepting the elements.
    pub fn new(
        dim: usize,
        elements: Vec<HermitianMatrix>,
        labels: Vec<String>,
    ) -> Result<Self, BasisError> {
        if dim < 2 {
            return Err(BasisError::DimensionTooSmall(dim));
        }
        let expected = dim * dim - 1;
        if elements.len() != expected || labels.len() != expected {
            return Err(BasisError::WrongCount {
                dim,
                expected,
                got: elements.len(),
            });
        }
        for (idx, el) in elements.iter().enumerate() {
            if el.dim() != dim {
                return Err(BasisError::WrongShape {
                    index: idx,
                    rows: el.matrix().nrows(),
                    cols: el.matrix().ncols(),
                    dim,
                });
            }
            let trace = el.trace().abs();
            if trace > BASIS_TOL {
                return Err(BasisError::NotTraceless {
                    index: idx,
                    label: labels[idx].clone(),
                    trace,
                });
            }
        }
        for i in 0..elements.len() {
            for j in i..elements.len() {
                let target = if i == j { 1.0 } else { 0.0 };
                let deviation = (elements[i].hs_dot(&elements[j]) - target).abs();
                if deviation > BASIS_TOL {
                    return Err(BasisError::NotOrthonormal { i, j, deviation });
                }
            }
        }
        Ok(Self { dim, elements, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &HermitianMatrix {
        &self.elements[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.elements.len() {
            for j in i..self.elements.len() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.elements[i].hs_dot(&self.elements[j]) - target).abs());
            }
        }
        worst
    }

    /// Expansion coefficients of a (not necessarily Hermitian) matrix over the
    /// traceless part, `coeff[i] = Tr(M_i X)`.
    pub fn coefficients(&self, x: &ComplexMatrix) -> Vec<Complex64> {
        self.elements
            .iter()
            .map(|m| hs_inner(m.matrix(), x))
            .collect()
    }

    /// The full orthonormal Hermitian basis: normalized identity first, then
    /// the traceless elements in order.
    pub fn full_basis(&self) -> Vec<HermitianMatrix> {
        let n = self.dim;
        let ident = ComplexMatrix::identity(n, n) * cr(1.0 / (n as f64).sqrt());
        let mut full = Vec::with_capacity(n * n);
        full.push(HermitianMatrix::symmetrize(ident));
        full.extend(self.elements.iter().cloned());
        full
    }
}

/// Discrete Weyl operator `W_{x,y} = U^x V^y` on dimension `n`, where
/// `U|m> = |m+1 mod n>` and `V = diag(omega^m)` with `omega = exp(2 pi i / n)`.
/// Entrywise, `W[(j + x) mod n, j] = omega^{y j}`.
pub fn weyl_operator(n: usize, x: usize, y: usize) -> Result<ComplexMatrix, BasisError> {
    if n < 2 {
        return Err(BasisError::DimensionTooSmall(n));
    }
    if x >= n || y >= n {
        return Err(BasisError::IndexOutOfRange { n, x, y });
    }
    let mut w = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let angle = TAU * ((y * j) % n) as f64 / n as f64;
        w[((j + x) % n, j)] = c(angle.cos(), angle.sin());
    }
    Ok(w)
}

/// Hermitian class assigned to a Weyl pair: `F` for self-paired indices
/// (both doubled coordinates vanish mod n), else the `G`/`H` pair of
/// Hermitian combinations of `W` and `W^dag`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylClass {
    F,
    G,
    H,
}

/// One basis slot of the Weyl construction: the pair `(x, y)` plus which
/// Hermitian combination the slot holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylIndex {
    pub x: usize,
    pub y: usize,
    pub class: WeylClass,
}

impl std::fmt::Display for WeylIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cls = match self.class {
            WeylClass::F => "F",
            WeylClass::G => "G",
            WeylClass::H => "H",
        };
        write!(f, "{}({},{})", cls, self.x, self.y)
    }
}

/// The index pairs selecting one representative from each `{(x,y), (-x,-y)}`
/// orbit, in the fixed enumeration order:
/// (i) `1 <= x < y <= n-1`, (ii) `1 <= x = y <= n/2`,
/// (iii) `x = 0, 1 <= y <= n/2`, (iv) `y = 0, 1 <= x <= n/2`,
/// lexicographic within each group.
pub fn weyl_pairs(n: usize) -> Vec<(usize, usize)> {
    let half = n / 2;
    let mut pairs = Vec::new();
    for x in 1..n {
        for y in (x + 1)..n {
            pairs.push((x, y));
        }
    }
    for d in 1..=half {
        pairs.push((d, d));
    }
    for y in 1..=half {
        pairs.push((0, y));
    }
    for x in 1..=half {
        pairs.push((x, 0));
    }
    pairs
}

/// True when `(x,y)` is its own partner under negation mod n, which happens
/// exactly for the three half-period pairs of even n.
pub fn is_self_paired(n: usize, x: usize, y: usize) -> bool {
    (2 * x).is_multiple_of(n) && (2 * y).is_multiple_of(n) && !(x == 0 && y == 0)
}

/// Expanded slot list for the Weyl basis: each self-paired index contributes
/// one `F` slot, every other index a `G` slot then an `H` slot. Total length
/// is n^2 - 1.
pub fn weyl_index_set(n: usize) -> Vec<WeylIndex> {
    let mut out = Vec::with_capacity(n * n - 1);
    for (x, y) in weyl_pairs(n) {
        if is_self_paired(n, x, y) {
            out.push(WeylIndex { x, y, class: WeylClass::F });
        } else {
            out.push(WeylIndex { x, y, class: WeylClass::G });
            out.push(WeylIndex { x, y, class: WeylClass::H });
        }
    }
    out
}

/// Builds the basis element for one Weyl slot.
///
/// `F = phi W / sqrt(n)` with a unit phase `phi` restoring Hermiticity
/// (`phi = i` exactly when `n = 2 mod 4` and `(x,y) = (n/2, n/2)`, where
/// `W^dag = -W`; all other self-paired W are already Hermitian).
/// `G = (W + W^dag)/sqrt(2n)` and `H = -i (W - W^dag)/sqrt(2n)`.
pub fn weyl_element(n: usize, idx: WeylIndex) -> Result<HermitianMatrix, BasisError> {
    let w = weyl_operator(n, idx.x, idx.y)?;
    let m = match idx.class {
        WeylClass::F => {
            let phase = if n % 4 == 2 && idx.x == n / 2 && idx.y == n / 2 {
                c(0.0, 1.0)
            } else {
                cr(1.0)
            };
            w * (phase / cr((n as f64).sqrt()))
        }
        WeylClass::G => {
            let scale = cr(1.0 / (2.0 * n as f64).sqrt());
            (&w + w.adjoint()) * scale
        }
        WeylClass::H => {
            let scale = c(0.0, -1.0) / cr((2.0 * n as f64).sqrt());
            (&w - w.adjoint()) * scale
        }
    };
    HermitianMatrix::new(m).map_err(|_| BasisError::IndexOutOfRange { n, x: idx.x, y: idx.y })
}

/// The discrete-Weyl traceless basis for dimension n, slots ordered by
/// [`weyl_index_set`].
pub fn weyl_basis(n: usize) -> Result<TracelessBasis, BasisError> {
    let slots = weyl_index_set(n);
    let mut elements = Vec::with_capacity(slots.len());
    let mut labels = Vec::with_capacity(slots.len());
    for idx in slots {
        elements.push(weyl_element(n, idx)?);
        labels.push(idx.to_string());
    }
    TracelessBasis::new(n, elements, labels)
}

/// Generalized Gell-Mann basis: for each pair j < k the symmetric element
/// `(E_jk + E_kj)/sqrt(2)` then the antisymmetric `-i(E_jk - E_kj)/sqrt(2)`,
/// followed by the diagonal elements
/// `(E_00 + .. + E_{l-1,l-1} - l E_ll)/sqrt(l(l+1))` for l = 1..n-1.
pub fn gellmann_basis(n: usize) -> Result<TracelessBasis, BasisError> {
    if n < 2 {
        return Err(BasisError::DimensionTooSmall(n));
    }
    let mut elements = Vec::with_capacity(n * n - 1);
    let mut labels = Vec::with_capacity(n * n - 1);
    let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
    for j in 0..n {
        for k in (j + 1)..n {
            let mut sym = ComplexMatrix::zeros(n, n);
            sym[(j, k)] = cr(inv_sqrt2);
            sym[(k, j)] = cr(inv_sqrt2);
            elements.push(HermitianMatrix::symmetrize(sym));
            labels.push(format!("sym({j},{k})"));

            let mut asym = ComplexMatrix::zeros(n, n);
            asym[(j, k)] = c(0.0, -inv_sqrt2);
            asym[(k, j)] = c(0.0, inv_sqrt2);
            elements.push(HermitianMatrix::symmetrize(asym));
            labels.push(format!("asym({j},{k})"));
        }
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut d = ComplexMatrix::zeros(n, n);
        for j in 0..l {
            d[(j, j)] = cr(norm);
        }
        d[(l, l)] = cr(-(l as f64) * norm);
        elements.push(HermitianMatrix::symmetrize(d));
        labels.push(format!("diag({l})"));
    }
    TracelessBasis::new(n, elements, labels)
}

/// The Pauli basis `{X, Y, Z}/sqrt(2)`.
pub fn pauli_basis() -> TracelessBasis {
    let x = ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
    let y = ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)]);
    let z = ComplexMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]);
    let scale = cr(1.0 / 2.0_f64.sqrt());
    let elements = vec![
        HermitianMatrix::symmetrize(x * scale),
        HermitianMatrix::symmetrize(y * scale),
        HermitianMatrix::symmetrize(z * scale),
    ];
    let labels = vec!["X".into(), "Y".into(), "Z".into()];
    TracelessBasis::new(2, elements, labels).expect("Pauli basis is orthonormal")
}
