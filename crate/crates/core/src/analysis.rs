//! Validity checks: complete positivity, trace preservation and
//! Hermiticity preservation.
//!
//! Non-CP maps are a verdict, not an error; every check here is total.

use crate::channels::Channel;
use crate::linalg::{eigvals_hermitian, hermitian_tolerance, ComplexMatrix};
use crate::representations::{base_matrices, choi_representation, ChoiMatrix};

/// Thresholds used by the checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Smallest Choi eigenvalue still accepted as non-negative is `-cp`.
    pub cp: f64,
    /// Largest accepted trace-preservation residual.
    pub tp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { cp: 1e-8, tp: 1e-10 }
    }
}

/// Outcome of the complete-positivity check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CpReport {
    pub completely_positive: bool,
    /// Smallest eigenvalue of the Choi matrix, or of its Hermitian part
    /// `(J + J†)/2` when `J` is not Hermitian.
    pub min_eigenvalue: f64,
    pub choi_hermitian: bool,
    /// `max |J - J†|`.
    pub hermiticity_residual: f64,
}

/// Outcome of the trace-preservation check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TpReport {
    pub trace_preserving: bool,
    /// `max_kl |tr Φ(E_kl) - δ_kl|`.
    pub residual: f64,
}

/// Aggregate verdict.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelVerdict {
    pub completely_positive: bool,
    pub trace_preserving: bool,
    pub hermiticity_preserving: bool,
    pub min_choi_eigenvalue: f64,
    pub tp_residual: f64,
    pub hp_residual: f64,
}

impl ChannelVerdict {
    pub fn is_cptp(&self) -> bool {
        self.completely_positive && self.trace_preserving
    }
}

/// CP check on an already computed Choi matrix. A non-Hermitian Choi matrix
/// yields `completely_positive = false`.
pub fn completely_positive_from_choi(j: &ChoiMatrix, tol_cp: f64) -> CpReport {
    let m = j.matrix();
    let residual = m.hermiticity_residual();
    let hermitian = residual <= hermitian_tolerance(m);
    let min_eigenvalue = eigvals_hermitian(&hermitian_part(m))
        .expect("Hermitian part")
        .first()
        .copied()
        .unwrap_or(f64::NAN);
    CpReport {
        completely_positive: hermitian && min_eigenvalue >= -tol_cp,
        min_eigenvalue,
        choi_hermitian: hermitian,
        hermiticity_residual: residual,
    }
}

/// `(m + m†)/2`, built so the result is exactly Hermitian.
fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (i.min(j), i.max(j));
        let upper = (m[(a, b)] + m[(b, a)].conj()) * 0.5;
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => upper.re.into(),
            std::cmp::Ordering::Less => upper,
            std::cmp::Ordering::Greater => upper.conj(),
        }
    })
}

pub fn is_completely_positive(ch: &Channel) -> CpReport {
    is_completely_positive_with(ch, &Tolerances::default())
}

pub fn is_completely_positive_with(ch: &Channel, tol: &Tolerances) -> CpReport {
    completely_positive_from_choi(&choi_representation(ch), tol.cp)
}

pub fn is_trace_preserving(ch: &Channel) -> TpReport {
    is_trace_preserving_with(ch, &Tolerances::default())
}

/// Checks `tr Φ(E_kl) = tr E_kl` on every matrix unit.
pub fn is_trace_preserving_with(ch: &Channel, tol: &Tolerances) -> TpReport {
    let n = ch.dim();
    let residual = base_matrices(n)
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let expected = if i / n == i % n { 1.0 } else { 0.0 };
            let out = ch.apply(e).expect("channel map must preserve the n x n shape");
            (out.trace() - expected).norm()
        })
        .fold(0.0, f64::max);
    TpReport {
        trace_preserving: residual <= tol.tp,
        residual,
    }
}

/// Trace over the first (output) tensor factor of an `n² x n²` matrix:
/// `out[b, d] = Σ_a x[(a,b),(a,d)]`. For a Choi matrix this is `I_n`
/// exactly when the channel is trace preserving.
pub fn partial_trace_first(x: &ComplexMatrix, n: usize) -> ComplexMatrix {
    assert_eq!(x.shape(), (n * n, n * n), "expected an n² x n² matrix");
    ComplexMatrix::from_fn(n, n, |b, d| (0..n).map(|a| x[(a * n + b, a * n + d)]).sum())
}

/// TP residual computed from the Choi matrix, `max |tr_1 J - I|`.
pub fn tp_residual_from_choi(j: &ChoiMatrix) -> f64 {
    let n = j.dim();
    partial_trace_first(j.matrix(), n).max_abs_diff(&ComplexMatrix::identity(n))
}

/// Hermiticity preservation `Φ(ρ†) = Φ(ρ)†`, checked on matrix units as
/// `Φ(E_lk) = Φ(E_kl)†`. Returns the largest deviation.
pub fn hermiticity_residual(ch: &Channel) -> f64 {
    let n = ch.dim();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for l in k..n {
            let a = ch.apply(&ComplexMatrix::unit(n, k, l)).expect("shape");
            let b = ch.apply(&ComplexMatrix::unit(n, l, k)).expect("shape");
            worst = worst.max(b.max_abs_diff(&a.dagger()));
        }
    }
    worst
}

pub fn is_cptp(ch: &Channel) -> ChannelVerdict {
    is_cptp_with(ch, &Tolerances::default())
}

pub fn is_cptp_with(ch: &Channel, tol: &Tolerances) -> ChannelVerdict {
    let j = choi_representation(ch);
    let cp = completely_positive_from_choi(&j, tol.cp);
    let tp = is_trace_preserving_with(ch, tol);
    let hp_residual = hermiticity_residual(ch);
    ChannelVerdict {
        completely_positive: cp.completely_positive,
        trace_preserving: tp.trace_preserving,
        hermiticity_preserving: hp_residual <= hermitian_tolerance(j.matrix()),
        min_choi_eigenvalue: cp.min_eigenvalue,
        tp_residual: tp.residual,
        hp_residual,
    }
}
