//! Seeded random fixtures: Gaussian matrices, density matrices and Kraus sets.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::channels::{kraus_channel, Channel};
use crate::error::Result;
use crate::linalg::{eigh, ComplexMatrix, C64, ZERO};
use crate::representations::MatrixBasis;

/// `n x n` matrix with i.i.d. standard complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random complex scalar with standard Gaussian components.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random full-rank density matrix `G G† / tr(G G†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n);
    let w = &g * &g.dagger();
    let tr = w.trace();
    w.scale(tr.inv())
}

/// `count` random `n x n` Kraus operators, not normalized.
pub fn random_kraus_ops<R: Rng + ?Sized>(rng: &mut R, n: usize, count: usize) -> Vec<ComplexMatrix> {
    (0..count).map(|_| random_matrix(rng, n)).collect()
}

/// Rescales a Kraus set so that `Σ K†K = I` by right-multiplying every
/// operator with `(Σ K†K)^{-1/2}`.
pub fn normalize_kraus(ops: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    let n = ops.first().map_or(1, ComplexMatrix::rows);
    let mut s = ComplexMatrix::zeros(n, n);
    for k in ops {
        s = &s + &(&k.dagger() * k);
    }
    let (vals, vecs) = eigh(&s)?;
    let inv_sqrt = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(vals[i].sqrt().recip(), 0.0)
        } else {
            ZERO
        }
    });
    let root = &(&vecs * &inv_sqrt) * &vecs.dagger();
    Ok(ops.iter().map(|k| k * &root).collect())
}

/// Random trace-preserving Kraus channel with between 1 and `n²` operators.
pub fn random_cptp_channel<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Channel {
    let count = rng.random_range(1..=n * n);
    let ops = normalize_kraus(&random_kraus_ops(rng, n, count)).expect("Gaussian Kraus sets are full rank");
    kraus_channel(ops).expect("operators share a shape")
}

/// Random completely positive channel, generally not trace preserving.
pub fn random_cp_channel<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Channel {
    let count = rng.random_range(1..=n * n);
    kraus_channel(random_kraus_ops(rng, n, count)).expect("operators share a shape")
}

/// Haar-like random unitary from Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<C64> = (0..n).map(|i| g[(i, j)]).collect();
        for q in &cols {
            let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Random orthonormal basis of `n x n` matrices: `b_i = unres(u_i)` for the
/// columns `u_i` of a random `n² x n²` unitary.
pub fn random_orthonormal_basis<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MatrixBasis {
    let d = n * n;
    let u = random_unitary(rng, d);
    let elements = (0..d)
        .map(|j| ComplexMatrix::from_fn(n, n, |a, b| u[(a * n + b, j)]))
        .collect();
    MatrixBasis::new(elements).expect("n² matrices of size n x n")
}
