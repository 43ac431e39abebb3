//! Real, complex, quaternion and octonion arithmetic.
//!
//! Every algebra is produced from the reals by the Cayley–Dickson doubling
//! rule, applied recursively to the lower and upper halves of the
//! coefficient vector:
//!
//! ```text
//! (a, b)(c, d) = (ac − d̄b, da + bc̄),    conj(a, b) = (ā, −b)
//! ```
//!
//! Basis elements are labelled `i0 … i7` in doubling order, so `i_(2^k + j)`
//! is `(0, i_j)` at the level that doubles dimension `2^k`. The resulting
//! octonion sign table, row `i_p` times column `i_q` (entry `±r` means
//! `±i_r`):
//!
//! ```text
//!        i0   i1   i2   i3   i4   i5   i6   i7
//!  i0    +0   +1   +2   +3   +4   +5   +6   +7
//!  i1    +1   -0   +3   -2   +5   -4   -7   +6
//!  i2    +2   -3   -0   +1   +6   +7   -4   -5
//!  i3    +3   +2   -1   -0   +7   -6   +5   -4
//!  i4    +4   -5   -6   -7   -0   +1   +2   +3
//!  i5    +5   +4   -7   +6   -1   -0   -3   +2
//!  i6    +6   +7   +4   -5   -2   +3   -0   -1
//!  i7    +7   -6   +5   +4   -3   -2   +1   -0
//! ```
//!
//! The upper-left 4×4 block is the quaternion table and the upper-left 2×2
//! block the complex one.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimension of one of the four normed division algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub enum Dim {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl Dim {
    pub const ALL: [Dim; 4] = [Dim::Real, Dim::Complex, Dim::Quaternion, Dim::Octonion];

    pub fn new(n: usize) -> Result<Dim> {
        match n {
            1 => Ok(Dim::Real),
            2 => Ok(Dim::Complex),
            4 => Ok(Dim::Quaternion),
            8 => Ok(Dim::Octonion),
            other => Err(Error::InvalidDimension(other)),
        }
    }

    pub const fn get(self) -> usize {
        match self {
            Dim::Real => 1,
            Dim::Complex => 2,
            Dim::Quaternion => 4,
            Dim::Octonion => 8,
        }
    }

    /// Whether multiplication in this algebra is associative.
    pub const fn is_associative(self) -> bool {
        !matches!(self, Dim::Octonion)
    }
}

impl TryFrom<usize> for Dim {
    type Error = Error;

    fn try_from(n: usize) -> Result<Dim> {
        Dim::new(n)
    }
}

impl From<Dim> for usize {
    fn from(d: Dim) -> usize {
        d.get()
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

/// Relative/absolute tolerance pair.
///
/// A residual `r` measured against an identity whose operands have scale `s`
/// is accepted when `r <= abs + rel * s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    rel: f64,
    abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-9, abs: 1e-12 }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Tolerance> {
        if !(rel > 0.0 && rel.is_finite() && abs >= 0.0 && abs.is_finite()) {
            return Err(Error::InvalidTolerance { rel, abs });
        }
        Ok(Tolerance { rel, abs })
    }

    pub fn rel(&self) -> f64 {
        self.rel
    }

    pub fn abs(&self) -> f64 {
        self.abs
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual.is_finite() && residual <= self.bound(scale)
    }

    pub fn close(&self, x: f64, y: f64, scale: f64) -> bool {
        self.accepts((x - y).abs(), scale)
    }

    /// Residual rescaled so that it passes exactly when it is `<= rel`.
    ///
    /// `r <= abs + rel*s` is equivalent to `r / (s + abs/rel) <= rel`, which
    /// lets residuals taken at different scales share one maximum.
    pub fn normalize(&self, residual: f64, scale: f64) -> f64 {
        if residual.is_nan() {
            return f64::INFINITY;
        }
        residual / (scale + self.abs / self.rel)
    }
}

/// A hypercomplex number of dimension 1, 2, 4 or 8.
///
/// Coefficients beyond `dim` are always zero. The arithmetic operators
/// (`+`, `-`, `*`) panic on mismatched dimensions; the free functions
/// [`multiply`], [`inner`] and friends report the mismatch as an error.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HyperRepr", into = "HyperRepr")]
pub struct Hyper {
    dim: Dim,
    coeffs: [f64; 8],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperRepr {
    dim: usize,
    coeffs: Vec<f64>,
}

impl TryFrom<HyperRepr> for Hyper {
    type Error = Error;

    fn try_from(r: HyperRepr) -> Result<Hyper> {
        Hyper::with_dim(Dim::new(r.dim)?, &r.coeffs)
    }
}

impl From<Hyper> for HyperRepr {
    fn from(h: Hyper) -> HyperRepr {
        HyperRepr { dim: h.dim.get(), coeffs: h.coeffs().to_vec() }
    }
}

impl Hyper {
    /// Builds a value whose dimension is the length of `coeffs`.
    pub fn new(coeffs: &[f64]) -> Result<Hyper> {
        Hyper::with_dim(Dim::new(coeffs.len())?, coeffs)
    }

    pub fn with_dim(dim: Dim, coeffs: &[f64]) -> Result<Hyper> {
        if coeffs.len() != dim.get() {
            return Err(Error::WrongLength { expected: dim.get(), found: coeffs.len() });
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut out = Hyper::zero(dim);
        out.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(out)
    }

    pub const fn zero(dim: Dim) -> Hyper {
        Hyper { dim, coeffs: [0.0; 8] }
    }

    /// The multiplicative unit `i0`.
    pub const fn one(dim: Dim) -> Hyper {
        Hyper::scalar(dim, 1.0)
    }

    pub const fn scalar(dim: Dim, x: f64) -> Hyper {
        let mut coeffs = [0.0; 8];
        coeffs[0] = x;
        Hyper { dim, coeffs }
    }

    /// Basis element `i_index`.
    pub fn basis(dim: Dim, index: usize) -> Result<Hyper> {
        if index >= dim.get() {
            return Err(Error::BasisIndex { index, dim: dim.get() });
        }
        let mut out = Hyper::zero(dim);
        out.coeffs[index] = 1.0;
        Ok(out)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..self.dim.get()]
    }

    /// Coefficient of `i0`, equal to `(u, i0)`.
    pub fn real(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn conj(&self) -> Hyper {
        let mut out = -*self;
        out.coeffs[0] = self.coeffs[0];
        out
    }

    /// The imaginary part `u − (u, i0) i0`.
    pub fn imag(&self) -> Hyper {
        let mut out = *self;
        out.coeffs[0] = 0.0;
        out
    }

    /// Euclidean dot product of coefficient vectors.
    ///
    /// # Panics
    /// If the dimensions differ.
    pub fn dot(&self, other: &Hyper) -> f64 {
        assert_same_dim(self, other);
        self.coeffs().iter().zip(other.coeffs()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Zero-pads into a larger (or equal) dimension.
    pub fn embed(&self, dim: Dim) -> Result<Hyper> {
        if dim < self.dim {
            return Err(Error::DimensionMismatch { left: self.dim.get(), right: dim.get() });
        }
        Ok(Hyper { dim, coeffs: self.coeffs })
    }

    /// Euclidean distance to `other`.
    ///
    /// # Panics
    /// If the dimensions differ.
    pub fn distance(&self, other: &Hyper) -> f64 {
        (*self - *other).norm()
    }

    fn map(self, f: impl Fn(f64) -> f64) -> Hyper {
        let mut out = self;
        for c in &mut out.coeffs {
            *c = f(*c);
        }
        out
    }

    fn zip(self, other: Hyper, f: impl Fn(f64, f64) -> f64) -> Hyper {
        assert_same_dim(&self, &other);
        let mut out = self;
        for (c, o) in out.coeffs.iter_mut().zip(other.coeffs) {
            *c = f(*c, o);
        }
        out
    }
}

fn assert_same_dim(a: &Hyper, b: &Hyper) {
    assert!(
        a.dim == b.dim,
        "hypercomplex dimension mismatch: {} vs {}",
        a.dim,
        b.dim
    );
}

pub(crate) fn check_dims(a: &Hyper, b: &Hyper) -> Result<Dim> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { left: a.dim.get(), right: b.dim.get() });
    }
    Ok(a.dim)
}

pub(crate) fn check_dims3(a: &Hyper, b: &Hyper, c: &Hyper) -> Result<Dim> {
    check_dims(a, b)?;
    check_dims(a, c)
}

impl fmt::Debug for Hyper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyper{:?}", self.coeffs())
    }
}

impl fmt::Display for Hyper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, &c) in self.coeffs().iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
                write!(f, "{}·i{k}", c.abs())?;
            } else {
                write!(f, "{c}·i{k}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for Hyper {
    type Output = Hyper;
    fn add(self, rhs: Hyper) -> Hyper {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for Hyper {
    type Output = Hyper;
    fn sub(self, rhs: Hyper) -> Hyper {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for Hyper {
    type Output = Hyper;
    fn neg(self) -> Hyper {
        self.map(|a| -a)
    }
}

impl Mul<f64> for Hyper {
    type Output = Hyper;
    fn mul(self, rhs: f64) -> Hyper {
        self.map(|a| a * rhs)
    }
}

impl Mul<Hyper> for f64 {
    type Output = Hyper;
    fn mul(self, rhs: Hyper) -> Hyper {
        rhs * self
    }
}

impl Div<f64> for Hyper {
    type Output = Hyper;
    fn div(self, rhs: f64) -> Hyper {
        self.map(|a| a / rhs)
    }
}

impl Mul for Hyper {
    type Output = Hyper;

    /// Cayley–Dickson product.
    ///
    /// # Panics
    /// If the dimensions differ.
    fn mul(self, rhs: Hyper) -> Hyper {
        assert_same_dim(&self, &rhs);
        let n = self.dim.get();
        let mut out = Hyper::zero(self.dim);
        cd_mul(&self.coeffs[..n], &rhs.coeffs[..n], &mut out.coeffs[..n]);
        out
    }
}

fn conj_into(src: &[f64], dst: &mut [f64]) {
    dst[0] = src[0];
    for (d, s) in dst[1..].iter_mut().zip(&src[1..]) {
        *d = -s;
    }
}

/// `(p, q)(r, s) = (pr − s̄q, sp + qr̄)` on slices of equal power-of-two length.
fn cd_mul(a: &[f64], b: &[f64], out: &mut [f64]) {
    let n = a.len();
    if n == 1 {
        out[0] = a[0] * b[0];
        return;
    }
    let h = n / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);

    let mut s_conj = [0.0; 4];
    let mut r_conj = [0.0; 4];
    conj_into(s, &mut s_conj[..h]);
    conj_into(r, &mut r_conj[..h]);

    let mut t1 = [0.0; 4];
    let mut t2 = [0.0; 4];
    cd_mul(p, r, &mut t1[..h]);
    cd_mul(&s_conj[..h], q, &mut t2[..h]);
    for i in 0..h {
        out[i] = t1[i] - t2[i];
    }
    cd_mul(s, p, &mut t1[..h]);
    cd_mul(q, &r_conj[..h], &mut t2[..h]);
    for i in 0..h {
        out[h + i] = t1[i] + t2[i];
    }
}

/// The unit `i0` of the algebra with `dim` coefficients.
pub fn unit(dim: usize) -> Result<Hyper> {
    Ok(Hyper::one(Dim::new(dim)?))
}

pub fn multiply(a: &Hyper, b: &Hyper) -> Result<Hyper> {
    check_dims(a, b)?;
    Ok(*a * *b)
}

pub fn conjugate(u: &Hyper) -> Hyper {
    u.conj()
}

pub fn inner(u1: &Hyper, u2: &Hyper) -> Result<f64> {
    check_dims(u1, u2)?;
    Ok(u1.dot(u2))
}

pub fn norm_sq(u: &Hyper) -> f64 {
    u.norm_sq()
}

pub fn imaginary_part(u: &Hyper) -> Hyper {
    u.imag()
}

/// `(u, ū) = 2(u, i0)² − (u, u)`.
pub fn spacetime_interval(u: &Hyper) -> f64 {
    2.0 * u.real() * u.real() - u.norm_sq()
}

pub fn embed(u: &Hyper, dim: usize) -> Result<Hyper> {
    u.embed(Dim::new(dim)?)
}

/// Signed basis product table: entry `[p][q] = (sign, r)` with `i_p i_q = sign · i_r`.
pub fn multiplication_table(dim: Dim) -> Vec<Vec<(i8, usize)>> {
    let n = dim.get();
    let basis: Vec<Hyper> = (0..n).map(|k| Hyper::basis(dim, k).unwrap()).collect();
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let prod = *a * *b;
                    let r = prod.coeffs().iter().position(|&c| c != 0.0).unwrap();
                    (prod.coeffs()[r].signum() as i8, r)
                })
                .collect()
        })
        .collect()
}
