//! Channels as opaque linear maps on `n x n` matrices.
//!
//! A [`Channel`] is nothing more than a dimension and a callable. Matrix
//! forms are obtained through [`crate::representations`]. Constructors do
//! not check complete positivity or trace preservation; see
//! [`crate::analysis`] for that.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

type MapFn = dyn Fn(&ComplexMatrix) -> ComplexMatrix + Send + Sync;

/// A linear map from `dim x dim` matrices to `dim x dim` matrices.
#[derive(Clone)]
pub struct Channel {
    dim: usize,
    map: Arc<MapFn>,
}

impl Channel {
    /// Wraps a callable. The callable must be linear, pure, and return a
    /// `dim x dim` matrix when given one.
    ///
    /// Panics if `dim == 0`.
    pub fn new<F>(dim: usize, map: F) -> Self
    where
        F: Fn(&ComplexMatrix) -> ComplexMatrix + Send + Sync + 'static,
    {
        assert!(dim > 0, "channel dimension must be positive");
        Self {
            dim,
            map: Arc::new(map),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_input(rho, None)?;
        let out = (self.map)(rho);
        self.check_input(&out, None)?;
        Ok(out)
    }

    /// Applies the channel to every element, preserving order. The error
    /// carries the index of the first offending input.
    pub fn apply_all(&self, rhos: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
        rhos.iter()
            .enumerate()
            .map(|(i, rho)| {
                self.check_input(rho, Some(i))?;
                let out = (self.map)(rho);
                self.check_input(&out, Some(i))?;
                Ok(out)
            })
            .collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Channel) -> Result<Channel> {
        if next.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: (next.dim, next.dim),
                index: None,
            });
        }
        let (a, b) = (self.map.clone(), next.map.clone());
        Ok(Channel::new(self.dim, move |rho| b(&a(rho))))
    }

    fn check_input(&self, m: &ComplexMatrix, index: Option<usize>) -> Result<()> {
        if m.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.shape(),
                index,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Channel").field("dim", &self.dim).finish_non_exhaustive()
    }
}

/// `ρ ↦ ρ`.
pub fn identity_channel(n: usize) -> Channel {
    Channel::new(n, ComplexMatrix::clone)
}

/// `ρ ↦ ρᵀ`. Linear but not completely positive.
pub fn transpose_channel(n: usize) -> Channel {
    Channel::new(n, ComplexMatrix::transpose)
}

/// Depolarizing channel `ρ ↦ (1 - p) ρ + p tr(ρ) I/n`.
///
/// The `tr(ρ)` factor makes this the linear extension of the usual
/// `(1 - p) ρ + p I/n`; the two agree on unit-trace inputs.
pub fn depolarizing(n: usize, p: f64) -> Result<Channel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p".into(),
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let keep = C64::new(1.0 - p, 0.0);
    Ok(Channel::new(n, move |rho| {
        let mut out = rho.scale(keep);
        let shift = rho.trace() * (p / n as f64);
        for i in 0..n {
            out[(i, i)] += shift;
        }
        out
    }))
}

/// `ρ ↦ U ρ U†`; `U` must be unitary to within `1e-10`.
pub fn unitary_channel(u: ComplexMatrix) -> Result<Channel> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let deviation = (&u * &u.dagger()).max_abs_diff(&ComplexMatrix::identity(u.rows()));
    if deviation > 1e-10 {
        return Err(Error::NotUnitary(deviation));
    }
    let ud = u.dagger();
    Ok(Channel::new(u.rows(), move |rho| &(&u * rho) * &ud))
}

/// `ρ ↦ Σ_k K_k ρ K_k†`. No trace-preservation requirement.
pub fn kraus_channel(ops: Vec<ComplexMatrix>) -> Result<Channel> {
    let first = ops.first().ok_or(Error::EmptyKrausSet)?;
    if !first.is_square() {
        return Err(Error::NotSquare {
            rows: first.rows(),
            cols: first.cols(),
        });
    }
    let n = first.rows();
    if let Some(bad) = ops.iter().find(|k| k.shape() != (n, n)) {
        return Err(Error::ShapeMismatch {
            left: (n, n),
            right: bad.shape(),
        });
    }
    let pairs: Vec<(ComplexMatrix, ComplexMatrix)> =
        ops.into_iter().map(|k| { let kd = k.dagger(); (k, kd) }).collect();
    Ok(Channel::new(n, move |rho| {
        let mut acc = ComplexMatrix::zeros(n, n);
        for (k, kd) in &pairs {
            acc = &acc + &(&(k * rho) * kd);
        }
        acc
    }))
}

/// A named real parameter with a closed range.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSpec {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

impl ParamSpec {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            lo,
            hi,
        }
    }
}

/// Name under which a free dimension is fixed through [`ChannelFamily::fix_param`].
pub const DIM_PARAM: &str = "dim";

type FamilyBody = dyn Fn(usize, &[f64]) -> Result<Channel> + Send + Sync;

/// A parametrized channel that can be specialized one parameter at a time.
///
/// The dimension may be left free at construction and fixed later under the
/// name `"dim"`, in any order relative to the real parameters.
#[derive(Clone)]
pub struct ChannelFamily {
    dim: Option<usize>,
    params: Vec<ParamSpec>,
    values: Vec<Option<f64>>,
    body: Arc<FamilyBody>,
}

/// Result of fixing a parameter: either more parameters remain, or the
/// family has collapsed to a concrete channel.
#[derive(Clone, Debug)]
pub enum Fixed {
    Family(ChannelFamily),
    Channel(Channel),
}

impl Fixed {
    pub fn into_channel(self) -> Option<Channel> {
        match self {
            Fixed::Channel(ch) => Some(ch),
            Fixed::Family(_) => None,
        }
    }

    pub fn into_family(self) -> Option<ChannelFamily> {
        match self {
            Fixed::Family(f) => Some(f),
            Fixed::Channel(_) => None,
        }
    }

    /// Continues fixing when a family remains.
    pub fn fix_param(self, name: &str, value: f64) -> Result<Fixed> {
        match self {
            Fixed::Family(f) => f.fix_param(name, value),
            Fixed::Channel(_) => Err(Error::UnknownParameter(name.to_owned())),
        }
    }
}

/// Creates a family. `body` receives the dimension and the parameter values
/// in declaration order.
pub fn make_family<F>(dim: Option<usize>, params: Vec<ParamSpec>, body: F) -> ChannelFamily
where
    F: Fn(usize, &[f64]) -> Result<Channel> + Send + Sync + 'static,
{
    let values = vec![None; params.len()];
    ChannelFamily {
        dim,
        params,
        values,
        body: Arc::new(body),
    }
}

/// Depolarizing channels with free dimension and `p ∈ [0, 1]`.
pub fn depolarizing_family() -> ChannelFamily {
    make_family(None, vec![ParamSpec::new("p", 0.0, 1.0)], |n, v| {
        depolarizing(n, v[0])
    })
}

/// Free-function form of [`ChannelFamily::fix_param`].
pub fn fix_param(family: &ChannelFamily, name: &str, value: f64) -> Result<Fixed> {
    family.fix_param(name, value)
}

impl ChannelFamily {
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    /// Parameters not yet fixed, `"dim"` excluded.
    pub fn free_params(&self) -> Vec<&ParamSpec> {
        self.params
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| v.is_none())
            .map(|(p, _)| p)
            .collect()
    }

    pub fn fix_param(&self, name: &str, value: f64) -> Result<Fixed> {
        let mut next = self.clone();
        if name == DIM_PARAM && !self.params.iter().any(|p| p.name == DIM_PARAM) {
            if self.dim.is_some() {
                return Err(Error::ParameterAlreadyFixed(name.to_owned()));
            }
            if !(value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64) {
                return Err(Error::ParameterOutOfRange {
                    name: name.to_owned(),
                    value,
                    lo: 1.0,
                    hi: f64::INFINITY,
                });
            }
            next.dim = Some(value as usize);
        } else {
            let idx = self
                .params
                .iter()
                .position(|p| p.name == name)
                .ok_or_else(|| Error::UnknownParameter(name.to_owned()))?;
            if self.values[idx].is_some() {
                return Err(Error::ParameterAlreadyFixed(name.to_owned()));
            }
            let spec = &self.params[idx];
            if !(spec.lo..=spec.hi).contains(&value) {
                return Err(Error::ParameterOutOfRange {
                    name: name.to_owned(),
                    value,
                    lo: spec.lo,
                    hi: spec.hi,
                });
            }
            next.values[idx] = Some(value);
        }
        next.collapse()
    }

    /// Supplies the dimension and every parameter at once.
    pub fn instantiate(&self, dim: usize, values: &[f64]) -> Result<Channel> {
        let mut fixed = Fixed::Family(self.clone());
        if self.dim.is_none() {
            fixed = fixed.fix_param(DIM_PARAM, dim as f64)?;
        } else if self.dim != Some(dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim.unwrap_or(dim),
                found: (dim, dim),
                index: None,
            });
        }
        let free: Vec<String> = self.free_params().iter().map(|p| p.name.clone()).collect();
        if free.len() != values.len() {
            return Err(Error::ParameterCount {
                expected: free.len(),
                found: values.len(),
            });
        }
        for (name, &v) in free.iter().zip(values) {
            fixed = fixed.fix_param(name, v)?;
        }
        let fixed = match fixed {
            Fixed::Family(f) => f.collapse()?,
            done => done,
        };
        Ok(fixed.into_channel().expect("all parameters fixed"))
    }

    fn collapse(self) -> Result<Fixed> {
        match (self.dim, self.values.iter().all(Option::is_some)) {
            (Some(n), true) => {
                let vals: Vec<f64> = self.values.iter().map(|v| v.unwrap()).collect();
                (self.body)(n, &vals).map(Fixed::Channel)
            }
            _ => Ok(Fixed::Family(self)),
        }
    }
}

impl fmt::Debug for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChannelFamily")
            .field("dim", &self.dim)
            .field("params", &self.params)
            .field("values", &self.values)
            .finish_non_exhaustive()
    }
}
