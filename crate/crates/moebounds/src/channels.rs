//! Quantum channels and trace-wise linear maps on Hermitian matrices.
//!
//! A [`Channel`] is a map in Kraus form `rho -> sum_i A_i rho A_i^dag`
//! (completely positive by construction). A [`LinearMapRep`] stores a map by
//! its action on a fixed orthonormal Hermitian basis and covers Hermiticity-
//! preserving maps that are not completely positive, such as rescalings with
//! a transpose. [`HermitianMap`] is the union used by operations that accept
//! either form. Structural flags (trace preserving, unital, completely
//! positive) are computed once at construction, never assumed.

use crate::bases::{gellmann_basis, weyl_operator, BasisError};
use crate::linalg::{
    c, cr, eig_hermitian, hs_inner, kron, ComplexMatrix, HermitianMatrix, STRUCT_TOL,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("channel needs at least one Kraus operator")]
    EmptyKraus,
    #[error("Kraus operator {index} is {rows}x{cols}, expected {out_dim}x{in_dim}")]
    KrausShape {
        index: usize,
        rows: usize,
        cols: usize,
        out_dim: usize,
        in_dim: usize,
    },
    #[error("input has dimension {got}, channel expects {expected}")]
    InputDimension { expected: usize, got: usize },
    #[error("map is not trace-preserving (deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },
    #[error("map is not unital (deviation {deviation:.3e})")]
    NotUnital { deviation: f64 },
    #[error("map is not completely positive (min Choi eigenvalue {min_eigenvalue:.3e})")]
    NotCompletelyPositive { min_eigenvalue: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

/// Structural properties verified at construction, each within 1e-10.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapFlags {
    pub trace_preserving: bool,
    pub unital: bool,
    pub completely_positive: bool,
}

/// Completely positive map in Kraus form. Operators are `out_dim x in_dim`.
#[derive(Clone, Debug)]
pub struct Channel {
    kraus: Vec<ComplexMatrix>,
    in_dim: usize,
    out_dim: usize,
    flags: MapFlags,
}

impl Channel {
    /// Builds a map from its Kraus operators, verifying shape consistency and
    /// computing the structural flags. Trace preservation is
    /// `sum A_i^dag A_i = I` and unitality `sum A_i A_i^dag / n = I / k`,
    /// both by largest entry deviation.
    pub fn from_kraus(kraus: Vec<ComplexMatrix>) -> Result<Self, ChannelError> {
        let first = kraus.first().ok_or(ChannelError::EmptyKraus)?;
        let (out_dim, in_dim) = first.shape();
        if out_dim == 0 || in_dim == 0 {
            return Err(ChannelError::KrausShape {
                index: 0,
                rows: out_dim,
                cols: in_dim,
                out_dim,
                in_dim,
            });
        }
        for (index, a) in kraus.iter().enumerate() {
            if a.shape() != (out_dim, in_dim) {
                return Err(ChannelError::KrausShape {
                    index,
                    rows: a.nrows(),
                    cols: a.ncols(),
                    out_dim,
                    in_dim,
                });
            }
        }

        let mut gram_in = ComplexMatrix::zeros(in_dim, in_dim);
        let mut gram_out = ComplexMatrix::zeros(out_dim, out_dim);
        for a in &kraus {
            gram_in += a.adjoint() * a;
            gram_out += a * a.adjoint();
        }
        let tp_dev = max_entry_deviation(&gram_in, &ComplexMatrix::identity(in_dim, in_dim));
        let unital_dev = max_entry_deviation(
            &(gram_out * cr(1.0 / in_dim as f64)),
            &(ComplexMatrix::identity(out_dim, out_dim) * cr(1.0 / out_dim as f64)),
        );
        let flags = MapFlags {
            trace_preserving: tp_dev <= STRUCT_TOL,
            unital: unital_dev <= STRUCT_TOL,
            completely_positive: true,
        };
        Ok(Self {
            kraus,
            in_dim,
            out_dim,
            flags,
        })
    }

    /// The identity channel on dimension n.
    pub fn identity(n: usize) -> Self {
        Self::from_kraus(vec![ComplexMatrix::identity(n, n)]).expect("identity Kraus is valid")
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn flags(&self) -> MapFlags {
        self.flags
    }

    /// Applies the map to any complex matrix (the complex-linear extension).
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        if x.shape() != (self.in_dim, self.in_dim) {
            return Err(ChannelError::InputDimension {
                expected: self.in_dim,
                got: x.nrows(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.out_dim, self.out_dim);
        for a in &self.kraus {
            out += a * x * a.adjoint();
        }
        Ok(out)
    }

    /// Hilbert-Schmidt adjoint `X -> sum A_i^dag X A_i`.
    pub fn apply_adjoint(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        if x.shape() != (self.out_dim, self.out_dim) {
            return Err(ChannelError::InputDimension {
                expected: self.out_dim,
                got: x.nrows(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.in_dim, self.in_dim);
        for a in &self.kraus {
            out += a.adjoint() * x * a;
        }
        Ok(out)
    }

    /// `Tr[Phi(psi psi^dag)^2]` for a unit vector, computed from the Gram
    /// matrix of the Kraus images `u_i = A_i psi`.
    pub fn output_purity(&self, psi: &crate::linalg::ComplexVector) -> f64 {
        let us: Vec<_> = self.kraus.iter().map(|a| a * psi).collect();
        let mut acc = 0.0;
        for i in 0..us.len() {
            let nii = us[i].dotc(&us[i]).re;
            acc += nii * nii;
            for j in (i + 1)..us.len() {
                acc += 2.0 * us[i].dotc(&us[j]).norm_sqr();
            }
        }
        acc
    }

    /// Tensor product channel with Kraus operators `A_i (x) B_j`, the left
    /// factor on the slow index.
    pub fn tensor(&self, other: &Channel) -> Channel {
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for a in &self.kraus {
            for b in &other.kraus {
                kraus.push(kron(a, b));
            }
        }
        Channel::from_kraus(kraus).expect("tensor of valid Kraus lists is valid")
    }

    /// Complementary channel to the environment. With Kraus operators
    /// `A_1..A_r` (k x n), the output `[Phi^C(rho)]_{im} = Tr[A_i rho A_m^dag]`
    /// is realized by k Kraus operators `B_m` (r x n) whose row i is row m of
    /// `A_i`. `sum B^dag B = sum A^dag A`, so trace preservation carries over.
    pub fn complementary(&self) -> Result<Channel, ChannelError> {
        if !self.flags.trace_preserving {
            return Err(ChannelError::NotTracePreserving {
                deviation: self.trace_preserving_deviation(),
            });
        }
        let r = self.kraus.len();
        let mut out = Vec::with_capacity(self.out_dim);
        for m in 0..self.out_dim {
            let mut b = ComplexMatrix::zeros(r, self.in_dim);
            for (i, a) in self.kraus.iter().enumerate() {
                for j in 0..self.in_dim {
                    b[(i, j)] = a[(m, j)];
                }
            }
            out.push(b);
        }
        Channel::from_kraus(out)
    }

    fn trace_preserving_deviation(&self) -> f64 {
        let mut gram = ComplexMatrix::zeros(self.in_dim, self.in_dim);
        for a in &self.kraus {
            gram += a.adjoint() * a;
        }
        max_entry_deviation(&gram, &ComplexMatrix::identity(self.in_dim, self.in_dim))
    }
}

fn max_entry_deviation(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Transpose toggle for the rescaling family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Star {
    Identity,
    Transpose,
}

/// Hermiticity-preserving linear map stored by its action on a fixed
/// orthonormal Hermitian basis (normalized identity first, then a traceless
/// basis). Covers maps with no Kraus form; complete positivity is decided by
/// a Choi-matrix positivity check.
#[derive(Clone, Debug)]
pub struct LinearMapRep {
    in_dim: usize,
    out_dim: usize,
    basis: Vec<HermitianMatrix>,
    images: Vec<HermitianMatrix>,
    flags: MapFlags,
}

impl LinearMapRep {
    /// Builds the representation from basis elements and their images.
    /// `basis[0]` must be the normalized identity `I/sqrt(n)`; orthonormality
    /// of the rest is the caller's obligation (all in-crate constructors pass
    /// `TracelessBasis::full_basis` output or Kronecker products thereof).
    pub fn from_action(
        basis: Vec<HermitianMatrix>,
        images: Vec<HermitianMatrix>,
    ) -> Result<Self, ChannelError> {
        let n2 = basis.len();
        if n2 == 0 || images.len() != n2 {
            return Err(ChannelError::InvalidParameter(format!(
                "basis action needs matching lists, got {} basis elements and {} images",
                n2,
                images.len()
            )));
        }
        let in_dim = basis[0].dim();
        if in_dim * in_dim != n2 {
            return Err(ChannelError::InvalidParameter(format!(
                "basis of dimension {in_dim} needs {} elements, got {n2}",
                in_dim * in_dim
            )));
        }
        let ident = ComplexMatrix::identity(in_dim, in_dim) * cr(1.0 / (in_dim as f64).sqrt());
        if max_entry_deviation(basis[0].matrix(), &ident) > 1e-12 {
            return Err(ChannelError::InvalidParameter(
                "basis element 0 must be the normalized identity".into(),
            ));
        }
        let out_dim = images[0].dim();
        if images.iter().any(|m| m.dim() != out_dim) {
            return Err(ChannelError::InvalidParameter(
                "images must share one output dimension".into(),
            ));
        }

        // Trace preservation: traces of images match traces of preimages.
        let mut tp_dev: f64 = 0.0;
        for (b, img) in basis.iter().zip(&images) {
            tp_dev = tp_dev.max((img.trace() - b.trace()).abs());
        }
        // Unitality: Phi(I/n) = image[0]/sqrt(n) equals I/k.
        let unital_dev = max_entry_deviation(
            &(images[0].matrix() * cr(1.0 / (in_dim as f64).sqrt())),
            &(ComplexMatrix::identity(out_dim, out_dim) * cr(1.0 / out_dim as f64)),
        );

        let mut rep = Self {
            in_dim,
            out_dim,
            basis,
            images,
            flags: MapFlags {
                trace_preserving: tp_dev <= STRUCT_TOL,
                unital: unital_dev <= STRUCT_TOL,
                completely_positive: false,
            },
        };
        let choi = rep.choi_matrix();
        let eigs = crate::linalg::eigvals_hermitian(&choi);
        let min = *eigs.last().expect("nonempty Choi spectrum");
        let scale = eigs[0].abs().max(1.0);
        rep.flags.completely_positive = min >= -STRUCT_TOL * scale;
        Ok(rep)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn flags(&self) -> MapFlags {
        self.flags
    }

    pub fn basis(&self) -> &[HermitianMatrix] {
        &self.basis
    }

    pub fn images(&self) -> &[HermitianMatrix] {
        &self.images
    }

    /// Applies the complex-linear extension: `X = sum Tr(B_m X) B_m` maps to
    /// `sum Tr(B_m X) Phi(B_m)`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        if x.shape() != (self.in_dim, self.in_dim) {
            return Err(ChannelError::InputDimension {
                expected: self.in_dim,
                got: x.nrows(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.out_dim, self.out_dim);
        for (b, img) in self.basis.iter().zip(&self.images) {
            let coeff = hs_inner(b.matrix(), x);
            out += img.matrix() * coeff;
        }
        Ok(out)
    }

    /// Hilbert-Schmidt adjoint: `Y -> sum Tr(C_m Y) B_m` for images `C_m`.
    pub fn apply_adjoint(&self, y: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        if y.shape() != (self.out_dim, self.out_dim) {
            return Err(ChannelError::InputDimension {
                expected: self.out_dim,
                got: y.nrows(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.in_dim, self.in_dim);
        for (b, img) in self.basis.iter().zip(&self.images) {
            let coeff = hs_inner(img.matrix(), y);
            out += b.matrix() * coeff;
        }
        Ok(out)
    }

    /// Choi matrix `sum_{ij} E_ij (x) Phi(E_ij)` with the input index slow.
    pub fn choi_matrix(&self) -> ComplexMatrix {
        let n = self.in_dim;
        let k = self.out_dim;
        let mut choi = ComplexMatrix::zeros(n * k, n * k);
        for i in 0..n {
            for j in 0..n {
                // Phi(E_ij) = sum_m (B_m)[j,i] Phi(B_m).
                let mut img = ComplexMatrix::zeros(k, k);
                for (b, cimg) in self.basis.iter().zip(&self.images) {
                    img += cimg.matrix() * b.matrix()[(j, i)];
                }
                for r in 0..k {
                    for s in 0..k {
                        choi[(i * k + r, j * k + s)] = img[(r, s)];
                    }
                }
            }
        }
        choi
    }

    /// Extracts a Kraus form from the Choi eigendecomposition. Fails when the
    /// map is not completely positive.
    pub fn to_channel(&self) -> Result<Channel, ChannelError> {
        let choi = self.choi_matrix();
        let eig = eig_hermitian(&choi);
        let scale = eig.values[0].abs().max(1.0);
        if *eig.values.last().unwrap() < -STRUCT_TOL * scale {
            return Err(ChannelError::NotCompletelyPositive {
                min_eigenvalue: *eig.values.last().unwrap(),
            });
        }
        let n = self.in_dim;
        let k = self.out_dim;
        let keep = 1e-12 * eig.values[0].max(0.0).max(1e-300);
        let mut kraus = Vec::new();
        for (idx, &lambda) in eig.values.iter().enumerate() {
            if lambda <= keep {
                continue;
            }
            let col = eig.vectors.column(idx);
            let mut a = ComplexMatrix::zeros(k, n);
            let root = lambda.sqrt();
            for i in 0..n {
                for r in 0..k {
                    a[(r, i)] = col[i * k + r] * cr(root);
                }
            }
            kraus.push(a);
        }
        if kraus.is_empty() {
            // The zero map has an empty Choi spectrum; it is not a channel.
            return Err(ChannelError::EmptyKraus);
        }
        Channel::from_kraus(kraus)
    }
}

/// Union of the two map representations.
#[derive(Clone, Debug)]
pub enum HermitianMap {
    Kraus(Channel),
    Basis(LinearMapRep),
}

impl HermitianMap {
    pub fn in_dim(&self) -> usize {
        match self {
            HermitianMap::Kraus(ch) => ch.in_dim(),
            HermitianMap::Basis(rep) => rep.in_dim(),
        }
    }

    pub fn out_dim(&self) -> usize {
        match self {
            HermitianMap::Kraus(ch) => ch.out_dim(),
            HermitianMap::Basis(rep) => rep.out_dim(),
        }
    }

    pub fn flags(&self) -> MapFlags {
        match self {
            HermitianMap::Kraus(ch) => ch.flags(),
            HermitianMap::Basis(rep) => rep.flags(),
        }
    }

    pub fn as_channel(&self) -> Option<&Channel> {
        match self {
            HermitianMap::Kraus(ch) => Some(ch),
            HermitianMap::Basis(_) => None,
        }
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        match self {
            HermitianMap::Kraus(ch) => ch.apply(x),
            HermitianMap::Basis(rep) => rep.apply(x),
        }
    }

    pub fn apply_adjoint(&self, y: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        match self {
            HermitianMap::Kraus(ch) => ch.apply_adjoint(y),
            HermitianMap::Basis(rep) => rep.apply_adjoint(y),
        }
    }

    /// The images of a full orthonormal Hermitian basis of the input space
    /// (the map's own basis if stored, else the Gell-Mann full basis),
    /// together with that basis.
    pub fn basis_action(&self) -> Result<(Vec<HermitianMatrix>, Vec<HermitianMatrix>), ChannelError>
    {
        match self {
            HermitianMap::Basis(rep) => Ok((rep.basis().to_vec(), rep.images().to_vec())),
            HermitianMap::Kraus(ch) => {
                let basis = gellmann_basis(ch.in_dim())?.full_basis();
                let images = basis
                    .iter()
                    .map(|b| {
                        ch.apply(b.matrix())
                            .map(HermitianMatrix::symmetrize)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((basis, images))
            }
        }
    }

    /// Tensor product. Two Kraus maps tensor into a Kraus map; otherwise the
    /// product is stored by its action on the Kronecker-product basis.
    pub fn tensor(&self, other: &HermitianMap) -> Result<HermitianMap, ChannelError> {
        if let (HermitianMap::Kraus(a), HermitianMap::Kraus(b)) = (self, other) {
            return Ok(HermitianMap::Kraus(a.tensor(b)));
        }
        let (basis_a, images_a) = self.basis_action()?;
        let (basis_b, images_b) = other.basis_action()?;
        let mut basis = Vec::with_capacity(basis_a.len() * basis_b.len());
        let mut images = Vec::with_capacity(basis_a.len() * basis_b.len());
        for (ba, ia) in basis_a.iter().zip(&images_a) {
            for (bb, ib) in basis_b.iter().zip(&images_b) {
                basis.push(HermitianMatrix::symmetrize(kron(ba.matrix(), bb.matrix())));
                images.push(HermitianMatrix::symmetrize(kron(ia.matrix(), ib.matrix())));
            }
        }
        Ok(HermitianMap::Basis(LinearMapRep::from_action(
            basis, images,
        )?))
    }
}

impl From<Channel> for HermitianMap {
    fn from(ch: Channel) -> Self {
        HermitianMap::Kraus(ch)
    }
}

/// Rescaling family `Psi(rho) = t rho^star + (1 - t) (Tr rho / n) I`,
/// `|t| <= 1`. Returns a Kraus channel when the map is completely positive,
/// otherwise the basis-action representation.
pub fn family_rescaling(n: usize, t: f64, star: Star) -> Result<HermitianMap, ChannelError> {
    if n < 2 {
        return Err(ChannelError::InvalidParameter(format!(
            "rescaling needs dimension >= 2, got {n}"
        )));
    }
    if !(-1.0..=1.0).contains(&t) || !t.is_finite() {
        return Err(ChannelError::InvalidParameter(format!(
            "rescaling needs |t| <= 1, got {t}"
        )));
    }
    let basis = gellmann_basis(n)?.full_basis();
    let mut images = Vec::with_capacity(basis.len());
    for (idx, b) in basis.iter().enumerate() {
        let img = if idx == 0 {
            b.matrix().clone()
        } else {
            let starred = match star {
                Star::Identity => b.matrix().clone(),
                Star::Transpose => b.matrix().transpose(),
            };
            starred * cr(t)
        };
        images.push(HermitianMatrix::symmetrize(img));
    }
    let rep = LinearMapRep::from_action(basis, images)?;
    if rep.flags().completely_positive {
        Ok(HermitianMap::Kraus(rep.to_channel()?))
    } else {
        Ok(HermitianMap::Basis(rep))
    }
}

/// Depolarizing family: rescaling with the identity star.
pub fn family_depolarizing(n: usize, t: f64) -> Result<HermitianMap, ChannelError> {
    family_rescaling(n, t, Star::Identity)
}

/// Werner-Holevo channel `rho -> (Tr rho I - rho^T)/(n-1)`, the rescaling
/// point t = -1/(n-1) with transpose star; completely positive for every n.
pub fn family_werner_holevo(n: usize) -> Result<Channel, ChannelError> {
    if n < 2 {
        return Err(ChannelError::InvalidParameter(format!(
            "Werner-Holevo needs dimension >= 2, got {n}"
        )));
    }
    let t = -1.0 / (n as f64 - 1.0);
    match family_rescaling(n, t, Star::Transpose)? {
        HermitianMap::Kraus(ch) => Ok(ch),
        HermitianMap::Basis(_) => unreachable!("Werner-Holevo is completely positive"),
    }
}

/// Validates discrete-Weyl mixture weights: indices in range and distinct,
/// weights nonnegative, total 1 within 1e-10.
pub fn validate_dwcc_weights(
    n: usize,
    weights: &[(usize, usize, f64)],
) -> Result<(), ChannelError> {
    if n < 2 {
        return Err(ChannelError::InvalidParameter(format!(
            "Weyl mixture needs dimension >= 2, got {n}"
        )));
    }
    if weights.is_empty() {
        return Err(ChannelError::InvalidParameter(
            "Weyl mixture needs at least one weight".into(),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    let mut total = 0.0;
    for &(x, y, w) in weights {
        if x >= n || y >= n {
            return Err(ChannelError::InvalidParameter(format!(
                "Weyl index ({x},{y}) out of range for dimension {n}"
            )));
        }
        if !seen.insert((x, y)) {
            return Err(ChannelError::InvalidParameter(format!(
                "Weyl index ({x},{y}) listed twice"
            )));
        }
        if w < 0.0 || !w.is_finite() {
            return Err(ChannelError::InvalidParameter(format!(
                "weight of ({x},{y}) must be nonnegative, got {w}"
            )));
        }
        total += w;
    }
    if (total - 1.0).abs() > STRUCT_TOL {
        return Err(ChannelError::InvalidParameter(format!(
            "weights must sum to 1, got {total:.12}"
        )));
    }
    Ok(())
}

/// Validates a subset of distinct Weyl index pairs.
pub fn validate_weyl_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<(), ChannelError> {
    if n < 2 {
        return Err(ChannelError::InvalidParameter(format!(
            "Weyl subset needs dimension >= 2, got {n}"
        )));
    }
    if pairs.is_empty() {
        return Err(ChannelError::InvalidParameter(
            "Weyl subset needs at least one pair".into(),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for &(x, y) in pairs {
        if x >= n || y >= n {
            return Err(ChannelError::InvalidParameter(format!(
                "Weyl index ({x},{y}) out of range for dimension {n}"
            )));
        }
        if !seen.insert((x, y)) {
            return Err(ChannelError::InvalidParameter(format!(
                "Weyl pair ({x},{y}) listed twice"
            )));
        }
    }
    Ok(())
}

/// Weyl-covariant mixture `rho -> sum p_{x,y} W_{x,y} rho W_{x,y}^dag`.
/// Zero-weight terms contribute no Kraus operator.
pub fn family_dwcc(n: usize, weights: &[(usize, usize, f64)]) -> Result<Channel, ChannelError> {
    validate_dwcc_weights(n, weights)?;
    let mut kraus = Vec::new();
    for &(x, y, w) in weights {
        if w > 0.0 {
            kraus.push(weyl_operator(n, x, y)? * cr(w.sqrt()));
        }
    }
    Channel::from_kraus(kraus)
}

/// Uniform mixture over a subset of distinct Weyl pairs, weight 1/k each.
pub fn family_dwcc_uniform_subset(
    n: usize,
    pairs: &[(usize, usize)],
) -> Result<Channel, ChannelError> {
    validate_weyl_pairs(n, pairs)?;
    let w = 1.0 / pairs.len() as f64;
    let weights: Vec<_> = pairs.iter().map(|&(x, y)| (x, y, w)).collect();
    family_dwcc(n, &weights)
}

/// Parsed channel file: the map plus the family description when the file
/// used one (kept so reports can echo the family form verbatim).
#[derive(Clone, Debug)]
pub struct ChannelDocument {
    pub map: HermitianMap,
    pub family: Option<FamilySpec>,
}

/// Family form of a channel file.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Identity { n: usize },
    Depolarizing { n: usize, t: f64 },
    WernerHolevo { n: usize },
    Rescaling { n: usize, t: f64, star: Star },
    Dwcc { n: usize, weights: Vec<(usize, usize, f64)> },
    DwccUniformSubset { n: usize, pairs: Vec<(usize, usize)> },
}

impl FamilySpec {
    pub fn to_json(&self) -> Value {
        match self {
            FamilySpec::Identity { n } => json!({"family": "identity", "n": n}),
            FamilySpec::Depolarizing { n, t } => json!({"family": "depolarizing", "n": n, "t": t}),
            FamilySpec::WernerHolevo { n } => json!({"family": "werner_holevo", "n": n}),
            FamilySpec::Rescaling { n, t, star } => {
                let star = match star {
                    Star::Identity => "identity",
                    Star::Transpose => "transpose",
                };
                json!({"family": "rescaling", "n": n, "t": t, "star": star})
            }
            FamilySpec::Dwcc { n, weights } => {
                let p: Vec<Value> = weights
                    .iter()
                    .map(|&(x, y, w)| json!([x, y, w]))
                    .collect();
                json!({"family": "dwcc", "n": n, "p": p})
            }
            FamilySpec::DwccUniformSubset { n, pairs } => {
                let p: Vec<Value> = pairs.iter().map(|&(x, y)| json!([x, y])).collect();
                json!({"family": "dwcc_uniform_subset", "n": n, "pairs": p})
            }
        }
    }

    pub fn build(&self) -> Result<HermitianMap, ChannelError> {
        match self {
            FamilySpec::Identity { n } => {
                if *n < 1 {
                    return Err(ChannelError::InvalidParameter("dimension must be >= 1".into()));
                }
                Ok(HermitianMap::Kraus(Channel::identity(*n)))
            }
            FamilySpec::Depolarizing { n, t } => family_depolarizing(*n, *t),
            FamilySpec::WernerHolevo { n } => family_werner_holevo(*n).map(HermitianMap::Kraus),
            FamilySpec::Rescaling { n, t, star } => family_rescaling(*n, *t, *star),
            FamilySpec::Dwcc { n, weights } => {
                family_dwcc(*n, weights).map(HermitianMap::Kraus)
            }
            FamilySpec::DwccUniformSubset { n, pairs } => {
                family_dwcc_uniform_subset(*n, pairs).map(HermitianMap::Kraus)
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum ChannelReadError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid channel document: {0}")]
    Structure(String),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

fn get_usize(obj: &serde_json::Map<String, Value>, key: &str) -> Result<usize, ChannelReadError> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| ChannelReadError::Structure(format!("missing or non-integer \"{key}\"")))
}

fn get_f64(obj: &serde_json::Map<String, Value>, key: &str) -> Result<f64, ChannelReadError> {
    obj.get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| ChannelReadError::Structure(format!("missing or non-numeric \"{key}\"")))
}

fn matrix_from_json(v: &Value) -> Result<ComplexMatrix, ChannelReadError> {
    let rows = v
        .as_array()
        .ok_or_else(|| ChannelReadError::Structure("matrix must be an array of rows".into()))?;
    if rows.is_empty() {
        return Err(ChannelReadError::Structure("matrix has no rows".into()));
    }
    let ncols = rows[0]
        .as_array()
        .map(Vec::len)
        .ok_or_else(|| ChannelReadError::Structure("matrix row must be an array".into()))?;
    if ncols == 0 {
        return Err(ChannelReadError::Structure("matrix row is empty".into()));
    }
    let mut m = ComplexMatrix::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| ChannelReadError::Structure(format!("row {i} must be an array")))?;
        if row.len() != ncols {
            return Err(ChannelReadError::Structure(format!(
                "row {i} has {} entries, expected {ncols}",
                row.len()
            )));
        }
        for (j, entry) in row.iter().enumerate() {
            let pair = entry.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                ChannelReadError::Structure(format!("entry ({i},{j}) must be [re, im]"))
            })?;
            let re = pair[0].as_f64().ok_or_else(|| {
                ChannelReadError::Structure(format!("entry ({i},{j}) re must be a number"))
            })?;
            let im = pair[1].as_f64().ok_or_else(|| {
                ChannelReadError::Structure(format!("entry ({i},{j}) im must be a number"))
            })?;
            m[(i, j)] = c(re, im);
        }
    }
    Ok(m)
}

fn matrix_to_json(m: &ComplexMatrix) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| {
            let row: Vec<Value> = (0..m.ncols())
                .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

/// Serializes a Kraus channel as `{"kraus": [...]}`; entries re-read
/// bit-for-bit (shortest round-trip float formatting).
pub fn channel_to_json(ch: &Channel) -> Value {
    let kraus: Vec<Value> = ch.kraus().iter().map(matrix_to_json).collect();
    json!({ "kraus": kraus })
}

fn index_pair(v: &Value, what: &str) -> Result<(usize, usize), ChannelReadError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| ChannelReadError::Structure(format!("{what} must be [x, y]")))?;
    let x = arr[0]
        .as_u64()
        .ok_or_else(|| ChannelReadError::Structure(format!("{what} x must be an integer")))?;
    let y = arr[1]
        .as_u64()
        .ok_or_else(|| ChannelReadError::Structure(format!("{what} y must be an integer")))?;
    Ok((x as usize, y as usize))
}

/// Parses a channel document: either `{"kraus": [matrix...]}` with entries
/// `[re, im]`, or `{"family": name, ...}` for the named families.
pub fn read_channel(text: &str) -> Result<ChannelDocument, ChannelReadError> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| ChannelReadError::Structure("top level must be an object".into()))?;

    if let Some(kraus_val) = obj.get("kraus") {
        let list = kraus_val.as_array().ok_or_else(|| {
            ChannelReadError::Structure("\"kraus\" must be an array of matrices".into())
        })?;
        let mats = list
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let ch = Channel::from_kraus(mats)?;
        return Ok(ChannelDocument {
            map: HermitianMap::Kraus(ch),
            family: None,
        });
    }

    let family = obj
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| ChannelReadError::Structure("expected \"kraus\" or \"family\"".into()))?;

    let spec = match family {
        "identity" => FamilySpec::Identity {
            n: get_usize(obj, "n")?,
        },
        "depolarizing" => FamilySpec::Depolarizing {
            n: get_usize(obj, "n")?,
            t: get_f64(obj, "t")?,
        },
        "werner_holevo" => FamilySpec::WernerHolevo {
            n: get_usize(obj, "n")?,
        },
        "rescaling" => {
            let star = match obj.get("star").and_then(Value::as_str) {
                Some("identity") => Star::Identity,
                Some("transpose") => Star::Transpose,
                _ => {
                    return Err(ChannelReadError::Structure(
                        "\"star\" must be \"identity\" or \"transpose\"".into(),
                    ))
                }
            };
            FamilySpec::Rescaling {
                n: get_usize(obj, "n")?,
                t: get_f64(obj, "t")?,
                star,
            }
        }
        "dwcc" => {
            let list = obj.get("p").and_then(Value::as_array).ok_or_else(|| {
                ChannelReadError::Structure("\"p\" must be an array of [x, y, weight]".into())
            })?;
            let mut weights = Vec::with_capacity(list.len());
            for item in list {
                let arr = item.as_array().filter(|a| a.len() == 3).ok_or_else(|| {
                    ChannelReadError::Structure("each \"p\" entry must be [x, y, weight]".into())
                })?;
                let x = arr[0].as_u64().ok_or_else(|| {
                    ChannelReadError::Structure("weight entry x must be an integer".into())
                })?;
                let y = arr[1].as_u64().ok_or_else(|| {
                    ChannelReadError::Structure("weight entry y must be an integer".into())
                })?;
                let w = arr[2].as_f64().ok_or_else(|| {
                    ChannelReadError::Structure("weight entry weight must be a number".into())
                })?;
                weights.push((x as usize, y as usize, w));
            }
            FamilySpec::Dwcc {
                n: get_usize(obj, "n")?,
                weights,
            }
        }
        "dwcc_uniform_subset" => {
            let list = obj.get("pairs").and_then(Value::as_array).ok_or_else(|| {
                ChannelReadError::Structure("\"pairs\" must be an array of [x, y]".into())
            })?;
            let pairs = list
                .iter()
                .map(|p| index_pair(p, "pair"))
                .collect::<Result<Vec<_>, _>>()?;
            FamilySpec::DwccUniformSubset {
                n: get_usize(obj, "n")?,
                pairs,
            }
        }
        other => {
            return Err(ChannelReadError::Structure(format!(
                "unknown family \"{other}\""
            )))
        }
    };

    let map = spec.build()?;
    Ok(ChannelDocument {
        map,
        family: Some(spec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{fro_norm, ComplexVector};
    use crate::sample;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_channel_flags_and_apply() {
        let ch = Channel::identity(3);
        assert!(ch.flags().trace_preserving);
        assert!(ch.flags().unital);
        assert!(ch.flags().completely_positive);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = sample::random_density(3, &mut rng);
        let out = ch.apply(rho.matrix()).unwrap();
        assert!(fro_norm(&(out - rho.matrix())) < 1e-15);
    }

    #[test]
    fn apply_preserves_trace_for_random_channels() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let ch = sample::random_channel(3, 4, 3, &mut rng);
            assert!(ch.flags().trace_preserving);
            let rho = sample::random_density(3, &mut rng);
            let out = ch.apply(rho.matrix()).unwrap();
            assert_abs_diff_eq!(out.trace().re, 1.0, epsilon = 1e-12);
            assert!(crate::linalg::hermiticity_deviation(&out) < 1e-12);
        }
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let ch = Channel::identity(2);
        let rho = ComplexMatrix::identity(3, 3);
        assert!(matches!(
            ch.apply(&rho),
            Err(ChannelError::InputDimension { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let ch = Channel::identity(2).tensor(&Channel::identity(3));
        assert_eq!(ch.in_dim(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = sample::random_density(6, &mut rng);
        let out = ch.apply(rho.matrix()).unwrap();
        assert!(fro_norm(&(out - rho.matrix())) < 1e-14);
    }

    #[test]
    fn tensor_acts_factorwise_on_product_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi = sample::random_channel(2, 3, 2, &mut rng);
        let omega = sample::random_channel(3, 2, 3, &mut rng);
        let rho_a = sample::random_density(2, &mut rng);
        let rho_b = sample::random_density(3, &mut rng);
        let joint = phi.tensor(&omega);
        let lhs = joint.apply(&kron(rho_a.matrix(), rho_b.matrix())).unwrap();
        let rhs = kron(
            &phi.apply(rho_a.matrix()).unwrap(),
            &omega.apply(rho_b.matrix()).unwrap(),
        );
        assert!(fro_norm(&(lhs - rhs)) < 1e-12);
    }

    #[test]
    fn complementary_of_unitary_traces_out_everything() {
        // A single-Kraus unitary channel has a 1-dimensional environment:
        // Phi^C(rho) = [Tr rho].
        let ch = Channel::identity(3);
        let comp = ch.complementary().unwrap();
        assert_eq!(comp.out_dim(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = sample::random_density(3, &mut rng);
        let out = comp.apply(rho.matrix()).unwrap();
        assert_abs_diff_eq!(out[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out[(0, 0)].im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn complementary_entrywise_definition() {
        // [Phi^C(rho)]_{im} = Tr[A_i rho A_m^dag] on random channels.
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let ch = sample::random_channel(3, 2, 3, &mut rng);
        let comp = ch.complementary().unwrap();
        let rho = sample::random_density(3, &mut rng);
        let out = comp.apply(rho.matrix()).unwrap();
        for i in 0..3 {
            for m in 0..3 {
                let expect =
                    (&ch.kraus()[i] * rho.matrix() * ch.kraus()[m].adjoint()).trace();
                assert!((out[(i, m)] - expect).norm() < 1e-12);
            }
        }
        assert!(comp.flags().trace_preserving);
    }

    #[test]
    fn complementary_shares_output_spectrum_on_pure_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let ch = sample::random_channel(3, 4, 3, &mut rng);
            let comp = ch.complementary().unwrap();
            let psi = sample::random_unit_vector(3, &mut rng);
            let rho = &psi * psi.adjoint();
            let a = crate::linalg::eigvals_hermitian(&ch.apply(&rho).unwrap());
            let b = crate::linalg::eigvals_hermitian(&comp.apply(&rho).unwrap());
            // Nonzero spectra agree; pad the shorter list with zeros.
            let len = a.len().max(b.len());
            for idx in 0..len {
                let x = a.get(idx).copied().unwrap_or(0.0);
                let y = b.get(idx).copied().unwrap_or(0.0);
                assert!((x - y).abs() < 1e-10, "spectra differ at {idx}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn output_purity_matches_apply() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ch = sample::random_channel(3, 4, 3, &mut rng);
        let psi = sample::random_unit_vector(3, &mut rng);
        let rho = &psi * psi.adjoint();
        let sigma = ch.apply(&rho).unwrap();
        let direct = hs_inner(&sigma, &sigma).re;
        assert_abs_diff_eq!(ch.output_purity(&psi), direct, epsilon = 1e-12);
    }

    #[test]
    fn rescaling_identity_point_is_identity() {
        let map = family_rescaling(3, 1.0, Star::Identity).unwrap();
        let ch = map.as_channel().expect("t = 1 identity star is CP");
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = sample::random_density(3, &mut rng);
        let out = ch.apply(rho.matrix()).unwrap();
        assert!(fro_norm(&(out - rho.matrix())) < 1e-10);
    }

    #[test]
    fn rescaling_zero_is_completely_depolarizing() {
        let map = family_depolarizing(3, 0.0).unwrap();
        let ch = map.as_channel().expect("t = 0 is CP");
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let rho = sample::random_density(3, &mut rng);
        let out = ch.apply(rho.matrix()).unwrap();
        let mixed = ComplexMatrix::identity(3, 3) * cr(1.0 / 3.0);
        assert!(fro_norm(&(out - mixed)) < 1e-12);
        assert!(ch.flags().unital);
    }

    #[test]
    fn rescaling_action_matches_formula_either_star() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (t, star) in [(0.7, Star::Identity), (-0.6, Star::Transpose), (0.3, Star::Transpose)] {
            let map = family_rescaling(3, t, star).unwrap();
            let rho = sample::random_density(3, &mut rng);
            let out = map.apply(rho.matrix()).unwrap();
            let starred = match star {
                Star::Identity => rho.matrix().clone(),
                Star::Transpose => rho.matrix().transpose(),
            };
            let expect =
                starred * cr(t) + ComplexMatrix::identity(3, 3) * cr((1.0 - t) / 3.0);
            assert!(fro_norm(&(out - expect)) < 1e-10, "t={t} star={star:?}");
        }
    }

    #[test]
    fn rescaling_cp_boundaries() {
        // Identity star: CP exactly for t in [-1/(n^2-1), 1].
        assert!(family_depolarizing(2, 1.0).unwrap().as_channel().is_some());
        assert!(family_depolarizing(2, -1.0 / 3.0 + 1e-6).unwrap().as_channel().is_some());
        assert!(family_depolarizing(2, -1.0 / 3.0 - 1e-6).unwrap().as_channel().is_none());
        assert!(family_depolarizing(2, -1.0).unwrap().as_channel().is_none());
        // Transpose star: CP exactly for t in [-1/(n-1), 1/(n+1)].
        assert!(family_rescaling(3, 1.0 / 4.0 - 1e-6, Star::Transpose).unwrap().as_channel().is_some());
        assert!(family_rescaling(3, 1.0 / 4.0 + 1e-6, Star::Transpose).unwrap().as_channel().is_none());
        assert!(family_rescaling(3, -0.5 + 1e-6, Star::Transpose).unwrap().as_channel().is_some());
        assert!(family_rescaling(3, -0.5 - 1e-6, Star::Transpose).unwrap().as_channel().is_none());
        // Out-of-range t rejected.
        assert!(matches!(
            family_depolarizing(2, 1.5),
            Err(ChannelError::InvalidParameter(_))
        ));
    }

    #[test]
    fn werner_holevo_is_cp_tp_unital() {
        for n in 2..=4 {
            let ch = family_werner_holevo(n).unwrap();
            assert!(ch.flags().trace_preserving);
            assert!(ch.flags().unital);
            assert_eq!(ch.kraus().len(), n * (n - 1) / 2);
            let mut rng = ChaCha8Rng::seed_from_u64(12);
            let rho = sample::random_density(n, &mut rng);
            let out = ch.apply(rho.matrix()).unwrap();
            let expect = (ComplexMatrix::identity(n, n) - rho.matrix().transpose())
                * cr(1.0 / (n as f64 - 1.0));
            assert!(fro_norm(&(out - expect)) < 1e-10);
        }
    }

    #[test]
    fn linear_map_rep_tensor_matches_kron_action() {
        let a = family_rescaling(2, -1.0, Star::Identity).unwrap();
        let b = family_rescaling(2, 0.5, Star::Identity).unwrap();
        assert!(a.as_channel().is_none());
        let prod = a.tensor(&b).unwrap();
        assert_eq!(prod.in_dim(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let ra = sample::random_density(2, &mut rng);
        let rb = sample::random_density(2, &mut rng);
        let lhs = prod.apply(&kron(ra.matrix(), rb.matrix())).unwrap();
        let rhs = kron(
            &a.apply(ra.matrix()).unwrap(),
            &b.apply(rb.matrix()).unwrap(),
        );
        assert!(fro_norm(&(lhs - rhs)) < 1e-10);
        assert!(prod.flags().trace_preserving);
        assert!(prod.flags().unital);
        assert!(!prod.flags().completely_positive);
    }

    #[test]
    fn choi_extraction_round_trips_kraus_channels() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let ch = sample::random_channel(2, 3, 2, &mut rng);
        let (basis, images) = HermitianMap::Kraus(ch.clone()).basis_action().unwrap();
        let rep = LinearMapRep::from_action(basis, images).unwrap();
        assert!(rep.flags().completely_positive);
        let rebuilt = rep.to_channel().unwrap();
        let rho = sample::random_density(2, &mut rng);
        let lhs = ch.apply(rho.matrix()).unwrap();
        let rhs = rebuilt.apply(rho.matrix()).unwrap();
        assert!(fro_norm(&(lhs - rhs)) < 1e-10);
    }

    #[test]
    fn dwcc_families_are_unital_channels() {
        let ch = family_dwcc(3, &[(0, 0, 0.5), (1, 2, 0.25), (2, 1, 0.25)]).unwrap();
        assert!(ch.flags().trace_preserving);
        assert!(ch.flags().unital);
        assert_eq!(ch.kraus().len(), 3);
        // Zero weights drop out of the Kraus list.
        let ch = family_dwcc(3, &[(0, 0, 1.0), (1, 1, 0.0)]).unwrap();
        assert_eq!(ch.kraus().len(), 1);

        let sub = family_dwcc_uniform_subset(5, &[(1, 2), (2, 3), (1, 4), (2, 4)]).unwrap();
        assert!(sub.flags().trace_preserving);
        assert!(sub.flags().unital);
        assert_eq!(sub.kraus().len(), 4);
        // The complement of a uniform Weyl mixture is again unital.
        let comp = sub.complementary().unwrap();
        assert!(comp.flags().trace_preserving);
        assert!(comp.flags().unital);
    }

    #[test]
    fn dwcc_validation_errors() {
        assert!(matches!(
            family_dwcc(3, &[(0, 0, 0.5), (0, 0, 0.5)]),
            Err(ChannelError::InvalidParameter(_))
        ));
        assert!(matches!(
            family_dwcc(3, &[(0, 3, 1.0)]),
            Err(ChannelError::InvalidParameter(_))
        ));
        assert!(matches!(
            family_dwcc(3, &[(0, 0, 0.7)]),
            Err(ChannelError::InvalidParameter(_))
        ));
        assert!(matches!(
            family_dwcc(3, &[(0, 0, 1.5), (1, 0, -0.5)]),
            Err(ChannelError::InvalidParameter(_))
        ));
        assert!(matches!(
            family_dwcc_uniform_subset(5, &[(1, 2), (1, 2)]),
            Err(ChannelError::InvalidParameter(_))
        ));
    }

    #[test]
    fn read_channel_kraus_document() {
        let text = r#"{"kraus": [[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]]}"#;
        let doc = read_channel(text).unwrap();
        let ch = doc.map.as_channel().unwrap();
        assert_eq!(ch.in_dim(), 2);
        assert!(ch.flags().trace_preserving);
        assert!(doc.family.is_none());
    }

    #[test]
    fn read_channel_families_and_errors() {
        let doc = read_channel(r#"{"family": "werner_holevo", "n": 3}"#).unwrap();
        assert_eq!(doc.map.in_dim(), 3);
        assert!(doc.map.as_channel().is_some());

        let doc =
            read_channel(r#"{"family": "rescaling", "n": 3, "t": 0.9, "star": "transpose"}"#)
                .unwrap();
        assert!(doc.map.as_channel().is_none(), "t = 0.9 transpose is not CP");

        let doc = read_channel(
            r#"{"family": "dwcc", "n": 3, "p": [[0, 0, 0.5], [1, 2, 0.5]]}"#,
        )
        .unwrap();
        assert_eq!(doc.map.in_dim(), 3);

        assert!(read_channel("not json").is_err());
        assert!(read_channel(r#"{"foo": 1}"#).is_err());
        assert!(read_channel(r#"{"family": "unknown", "n": 2}"#).is_err());
        assert!(read_channel(r#"{"family": "depolarizing", "n": 2, "t": 2.0}"#).is_err());
        assert!(read_channel(r#"{"kraus": [[[[1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]]}"#).is_err());
    }

    #[test]
    fn channel_json_round_trip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let ch = sample::random_channel(2, 3, 3, &mut rng);
        let text = serde_json::to_string(&channel_to_json(&ch)).unwrap();
        let doc = read_channel(&text).unwrap();
        let back = doc.map.as_channel().unwrap();
        assert_eq!(back.kraus().len(), ch.kraus().len());
        for (a, b) in ch.kraus().iter().zip(back.kraus()) {
            assert_eq!(a, b, "round trip must preserve every bit");
        }
    }

    #[test]
    fn pure_output_norms_match_between_map_and_complement() {
        // || Phi(psi psi) ||_2 = || Phi^C(psi psi) ||_2 on pure inputs.
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let ch = sample::random_channel(2, 3, 2, &mut rng);
        let comp = ch.complementary().unwrap();
        for _ in 0..10 {
            let psi = sample::random_unit_vector(2, &mut rng);
            let rho = &psi * psi.adjoint();
            let a = hs_inner(&ch.apply(&rho).unwrap(), &ch.apply(&rho).unwrap()).re;
            let b = hs_inner(&comp.apply(&rho).unwrap(), &comp.apply(&rho).unwrap()).re;
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn unital_flag_detects_nonunital_channels() {
        // Amplitude damping is TP but not unital.
        let a0 = ComplexMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(0.8)]);
        let a1 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[cr(0.0), cr((1.0 - 0.64_f64).sqrt()), cr(0.0), cr(0.0)],
        );
        let ch = Channel::from_kraus(vec![a0, a1]).unwrap();
        assert!(ch.flags().trace_preserving);
        assert!(!ch.flags().unital);
        let _ = ComplexVector::zeros(2);
    }
}
