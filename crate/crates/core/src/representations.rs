//! Matrix forms of a channel.
//!
//! All supermatrices follow one column convention: for an orthonormal basis
//! `{b_i}` with coordinates `coords(ρ)_i = ⟨ρ, b_i⟩ = tr(ρ b_i†)`,
//!
//! ```text
//! M_ij = ⟨Φ(b_j), b_i⟩      so that      coords(Φ(ρ)) = M · coords(ρ).
//! ```
//!
//! In the canonical basis of matrix units this reduces to
//! `res(Φ(ρ)) = M · res(ρ)`, column `i` of `M` being `res(Φ(E_i))`.
//!
//! The Choi matrix is `J = Σ_i Φ(E_i) ⊗ E_i` over canonical units. With
//! row-major pair indices it is related to the canonical supermatrix by the
//! reshuffle `M[(a,b),(c,d)] = J[(a,c),(b,d)]`.

use std::sync::Arc;

use crate::channels::Channel;
use crate::error::{Error, Result};
use crate::linalg::{exact_sqrt, hs_inner, kron, res, unres, ComplexMatrix, C64};
use crate::pauli;

const ORTHONORMAL_TOL: f64 = 1e-10;

/// An ordered list of `n²` matrices of size `n x n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    orthonormal: bool,
}

impl MatrixBasis {
    /// Validates the element count and sizes; the orthonormal flag is
    /// computed from the Gram matrix.
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let first = elements.first().ok_or(Error::BasisSize {
            dim: 0,
            expected: 0,
            found: 0,
        })?;
        if !first.is_square() {
            return Err(Error::NotSquare {
                rows: first.rows(),
                cols: first.cols(),
            });
        }
        let dim = first.rows();
        if elements.len() != dim * dim {
            return Err(Error::BasisSize {
                dim,
                expected: dim * dim,
                found: elements.len(),
            });
        }
        if let Some((i, bad)) = elements
            .iter()
            .enumerate()
            .find(|(_, m)| m.shape() != (dim, dim))
        {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.shape(),
                index: Some(i),
            });
        }
        let mut basis = Self {
            dim,
            elements,
            orthonormal: false,
        };
        basis.orthonormal = basis.gram_deviation() <= ORTHONORMAL_TOL;
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    /// Largest deviation of the Gram matrix `G_ij = ⟨b_i, b_j⟩` from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, bi) in self.elements.iter().enumerate() {
            for (j, bj) in self.elements.iter().enumerate().skip(i) {
                let g = hs_inner(bi, bj).expect("basis elements share a shape");
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    /// Change-of-basis matrix whose row `i` is the conjugate of `res(b_i)`,
    /// so that `M_B · res(ρ) = coords(ρ)`. Unitary for orthonormal bases.
    pub fn change_of_basis_matrix(&self) -> ComplexMatrix {
        let d = self.dim * self.dim;
        ComplexMatrix::from_fn(d, d, |i, x| self.elements[i].as_slice()[x].conj())
    }

    /// `coords(ρ)_i = ⟨ρ, b_i⟩`.
    pub fn coords(&self, rho: &ComplexMatrix) -> Result<Vec<C64>> {
        self.elements.iter().map(|b| hs_inner(rho, b)).collect()
    }

    /// Whether this is the canonical basis of matrix units in row-major order.
    pub fn is_canonical(&self) -> bool {
        self.elements
            .iter()
            .enumerate()
            .all(|(i, b)| {
                b.as_slice()
                    .iter()
                    .enumerate()
                    .all(|(x, &z)| z == if x == i { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
            })
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self
                .elements
                .iter()
                .zip(&other.elements)
                .all(|(a, b)| a.max_abs_diff(b) <= 1e-12)
    }

    fn require_orthonormal(&self) -> Result<()> {
        if !self.orthonormal {
            return Err(Error::NotOrthonormal(self.gram_deviation()));
        }
        Ok(())
    }
}

/// The `n²` matrix units `E_kl` in row-major order: element `i` is
/// `unres(e_i)`.
pub fn base_matrices(n: usize) -> MatrixBasis {
    assert!(n > 0, "basis dimension must be positive");
    MatrixBasis {
        dim: n,
        elements: (0..n * n).map(|i| ComplexMatrix::unit(n, i / n, i % n)).collect(),
        orthonormal: true,
    }
}

/// `{I, σ_x, σ_y, σ_z} / √2`.
pub fn pauli_basis() -> MatrixBasis {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    MatrixBasis::new(
        [pauli::identity(), pauli::x(), pauli::y(), pauli::z()]
            .iter()
            .map(|m| m.scale(s))
            .collect(),
    )
    .expect("normalized Pauli matrices form a basis")
}

/// `true` iff the Gram matrix is the identity within `1e-10`.
pub fn check_orthonormal(b: &MatrixBasis) -> bool {
    b.gram_deviation() <= ORTHONORMAL_TOL
}

/// `n² x n²` matrix of a channel in a given basis.
#[derive(Clone, Debug)]
pub struct SuperMatrix {
    dim: usize,
    matrix: ComplexMatrix,
    basis: Arc<MatrixBasis>,
}

impl SuperMatrix {
    /// Wraps an `n² x n²` matrix expressed in the canonical basis.
    pub fn from_canonical(matrix: ComplexMatrix) -> Result<Self> {
        let dim = side_root(&matrix)?;
        Ok(Self {
            dim,
            matrix,
            basis: Arc::new(base_matrices(dim)),
        })
    }

    /// Wraps a matrix expressed in `basis`.
    pub fn in_basis(matrix: ComplexMatrix, basis: MatrixBasis) -> Result<Self> {
        let dim = side_root(&matrix)?;
        if dim != basis.dim {
            return Err(Error::DimensionMismatch {
                expected: basis.dim * basis.dim,
                found: matrix.shape(),
                index: None,
            });
        }
        Ok(Self {
            dim,
            matrix,
            basis: Arc::new(basis),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn basis(&self) -> &MatrixBasis {
        &self.basis
    }

    /// The same map expressed in the canonical basis, `M_B† · M^b · M_B`.
    pub fn to_canonical(&self) -> SuperMatrix {
        if self.basis.is_canonical() {
            return self.clone();
        }
        let mb = self.basis.change_of_basis_matrix();
        let matrix = &(&mb.dagger() * &self.matrix) * &mb;
        Self {
            dim: self.dim,
            matrix,
            basis: Arc::new(base_matrices(self.dim)),
        }
    }

    /// Choi matrix by reshuffling the canonical form.
    pub fn to_choi(&self) -> ChoiMatrix {
        let canonical = self.to_canonical();
        ChoiMatrix {
            dim: self.dim,
            matrix: reshuffle(&canonical.matrix).expect("side is n²"),
        }
    }
}

/// `J = Σ_i Φ(E_i) ⊗ E_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl ChoiMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = side_root(&matrix)?;
        Ok(Self { dim, matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Canonical supermatrix by reshuffling.
    pub fn to_supermatrix(&self) -> SuperMatrix {
        SuperMatrix::from_canonical(reshuffle(&self.matrix).expect("side is n²"))
            .expect("side is n²")
    }
}

fn side_root(m: &ComplexMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    exact_sqrt(m.rows()).ok_or(Error::NonSquareSide(m.rows()))
}

fn check_dims(ch: &Channel, b: &MatrixBasis) -> Result<()> {
    if ch.dim() != b.dim {
        return Err(Error::DimensionMismatch {
            expected: ch.dim(),
            found: (b.dim, b.dim),
            index: None,
        });
    }
    Ok(())
}

fn image(ch: &Channel, m: &ComplexMatrix) -> ComplexMatrix {
    ch.apply(m).expect("channel map must preserve the n x n shape")
}

/// Canonical supermatrix: column `i` is `res(Φ(E_i))`.
pub fn natural_representation(ch: &Channel) -> SuperMatrix {
    let n = ch.dim();
    let d = n * n;
    let basis = base_matrices(n);
    let columns: Vec<Vec<C64>> = basis
        .elements
        .iter()
        .map(|e| res(&image(ch, e)).into_vec())
        .collect();
    SuperMatrix {
        dim: n,
        matrix: ComplexMatrix::from_fn(d, d, |r, c| columns[c][r]),
        basis: Arc::new(basis),
    }
}

/// Supermatrix in an orthonormal basis from inner products,
/// `M_ij = ⟨Φ(b_j), b_i⟩ = tr(Φ(b_j) b_i†)`. Costs `n²` channel
/// evaluations and `n⁴` inner products.
pub fn general_natural_representation(ch: &Channel, b: &MatrixBasis) -> Result<SuperMatrix> {
    check_dims(ch, b)?;
    b.require_orthonormal()?;
    let d = b.dim * b.dim;
    let images: Vec<ComplexMatrix> = b.elements.iter().map(|e| image(ch, e)).collect();
    let mut matrix = ComplexMatrix::zeros(d, d);
    for (j, img) in images.iter().enumerate() {
        for (i, bi) in b.elements.iter().enumerate() {
            matrix[(i, j)] = hs_inner(img, bi)?;
        }
    }
    Ok(SuperMatrix {
        dim: b.dim,
        matrix,
        basis: Arc::new(b.clone()),
    })
}

/// Supermatrix in an orthonormal basis by conjugating the canonical one,
/// `M^b = M_B · M · M_B†`.
pub fn general_natural_representation_via_basis_change(
    ch: &Channel,
    b: &MatrixBasis,
) -> Result<SuperMatrix> {
    check_dims(ch, b)?;
    b.require_orthonormal()?;
    let natural = natural_representation(ch);
    let mb = b.change_of_basis_matrix();
    let matrix = &(&mb * &natural.matrix) * &mb.dagger();
    Ok(SuperMatrix {
        dim: b.dim,
        matrix,
        basis: Arc::new(b.clone()),
    })
}

/// Choi matrix from the sum `Σ_i Φ(E_i) ⊗ E_i`.
pub fn choi_representation(ch: &Channel) -> ChoiMatrix {
    let n = ch.dim();
    let d = n * n;
    let matrix = base_matrices(n)
        .elements
        .iter()
        .map(|e| kron(&image(ch, e), e))
        .fold(ComplexMatrix::zeros(d, d), |acc, term| &acc + &term);
    ChoiMatrix { dim: n, matrix }
}

/// Tensor-factor order produced by [`choi_from_supermatrix_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChoiPairing {
    /// `Σ_i Φ(E_i) ⊗ E_i`, identical to [`choi_representation`].
    #[default]
    Standard,
    /// `Σ_i E_i ⊗ Φ(E_i)`: the raw value of `tr[M (E_i ⊗ E_j)]` before the
    /// factor swap.
    Swapped,
}

/// Choi matrix from a supermatrix via the trace formula
/// `K_ij = tr[M (E_i ⊗ E_j)]`, followed by a swap of the two tensor
/// factors so the result matches [`choi_representation`].
///
/// `b` must be the basis `m` is expressed in; non-canonical supermatrices
/// are first brought to the canonical basis.
pub fn choi_from_supermatrix(m: &SuperMatrix, b: &MatrixBasis) -> Result<ChoiMatrix> {
    choi_from_supermatrix_with(m, b, ChoiPairing::Standard)
}

pub fn choi_from_supermatrix_with(
    m: &SuperMatrix,
    b: &MatrixBasis,
    pairing: ChoiPairing,
) -> Result<ChoiMatrix> {
    if b.dim != m.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            found: (b.dim, b.dim),
            index: None,
        });
    }
    if !m.basis.approx_eq(b) {
        return Err(Error::BasisMismatch);
    }
    b.require_orthonormal()?;

    let n = m.dim;
    let d = n * n;
    let canonical = m.to_canonical();
    let units = base_matrices(n);
    let mut swapped = ComplexMatrix::zeros(d, d);
    for (i, bi) in units.elements.iter().enumerate() {
        for (j, bj) in units.elements.iter().enumerate() {
            swapped[(i, j)] = canonical.matrix.trace_of_product(&kron(bi, bj))?;
        }
    }
    let matrix = match pairing {
        ChoiPairing::Swapped => swapped,
        ChoiPairing::Standard => swap_factors(&swapped, n),
    };
    Ok(ChoiMatrix { dim: n, matrix })
}

/// Conjugation by the factor swap on `C^n ⊗ C^n`:
/// `out[(a,b),(c,d)] = x[(b,a),(d,c)]`.
fn swap_factors(x: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let d = n * n;
    let flip = |r: usize| (r % n) * n + r / n;
    ComplexMatrix::from_fn(d, d, |r, c| x[(flip(r), flip(c))])
}

/// Index reshuffle `out[(a,b),(c,d)] = x[(a,c),(b,d)]` on an `n² x n²`
/// matrix. An involution; maps Choi matrices to canonical supermatrices
/// and back.
pub fn reshuffle(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let side = x.rows();
    let n = exact_sqrt(side).ok_or(Error::NonSquareSide(side))?;
    Ok(ComplexMatrix::from_fn(side, side, |r, c| {
        let (a, b) = (r / n, r % n);
        let (cc, d) = (c / n, c % n);
        x[(a * n + cc, b * n + d)]
    }))
}

/// The channel `ρ ↦ unres(M · res(ρ))`, with `M` taken in the canonical basis.
pub fn channel_from_supermatrix(m: &SuperMatrix) -> Channel {
    let canonical = m.to_canonical().matrix;
    Channel::new(m.dim, move |rho| {
        let v = canonical.matvec(&res(rho)).expect("input shape checked by Channel::apply");
        unres(&v).expect("length is n²")
    })
}
