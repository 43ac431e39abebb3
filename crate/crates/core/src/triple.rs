//! Triple products with a conjugated central argument.
//!
//! The product `(u1 ū) u2` splits into three mutually orthogonal parts:
//!
//! * the triple anticommutator `{u1, u, u2}`, symmetric under swapping the
//!   outer arguments and under reversing the multiplicative order;
//! * the triple commutator `[u1, u, u2]`, antisymmetric under both (the
//!   generalized cross product of three arguments);
//! * the associator `⟨u1, u, u2⟩`, antisymmetric under the swap, symmetric
//!   under order reversal, and identically zero for quaternions.
//!
//! The four bracketings of `u1, ū, u2` are recovered as
//!
//! ```text
//! (u1 ū) u2 = { } + [ ] + ⟨ ⟩
//! (u2 ū) u1 = { } − [ ] − ⟨ ⟩
//! u2 (ū u1) = { } − [ ] + ⟨ ⟩
//! u1 (ū u2) = { } + [ ] − ⟨ ⟩
//! ```
//!
//! Every part has two half-sum definitions plus, for `{}` and `[]`, a closed
//! form in terms of inner products and pair cross products. The plain
//! functions return the first half-sum; the `_alt` and `_closed` variants
//! exist so the verifier can check that all routes agree.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hyper::{check_dims, check_dims3, Hyper};

/// Pair cross product `[u1, u2] = (u1 u2 − u2 u1) / 2`.
pub fn cross2(u1: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims(u1, u2)?;
    Ok(cross(u1, u2))
}

/// Pair anticommutator `(u1 u2 + u2 u1) / 2`.
pub fn pair_anticommutator(u1: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims(u1, u2)?;
    Ok((*u1 * *u2 + *u2 * *u1) / 2.0)
}

/// `u1 u2` rebuilt as `(u1,i0) u2 + (u2,i0) u1 − (u1,u2) i0 + [u1, u2]`.
pub fn pair_product_expansion(u1: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims(u1, u2)?;
    let i0 = Hyper::one(u1.dim());
    Ok(u1.real() * *u2 + u2.real() * *u1 - u1.dot(u2) * i0 + cross(u1, u2))
}

pub(crate) fn cross(u1: &Hyper, u2: &Hyper) -> Hyper {
    (*u1 * *u2 - *u2 * *u1) / 2.0
}

/// The four bracketings of `u1, ū, u2` that enter the decomposition.
struct Bracketings {
    /// `(u1 ū) u2`
    left: Hyper,
    /// `(u2 ū) u1`
    swapped_left: Hyper,
    /// `u2 (ū u1)`
    swapped_right: Hyper,
    /// `u1 (ū u2)`
    right: Hyper,
}

impl Bracketings {
    fn new(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Bracketings {
        let ub = u.conj();
        Bracketings {
            left: (*u1 * ub) * *u2,
            swapped_left: (*u2 * ub) * *u1,
            swapped_right: *u2 * (ub * *u1),
            right: *u1 * (ub * *u2),
        }
    }
}

/// `{u1, u, u2} = ((u1 ū) u2 + (u2 ū) u1) / 2`.
pub fn anticommutator3(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let b = Bracketings::new(u1, u, u2);
    Ok((b.left + b.swapped_left) / 2.0)
}

/// `{u1, u, u2} = (u1 (ū u2) + u2 (ū u1)) / 2`.
pub fn anticommutator3_alt(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let b = Bracketings::new(u1, u, u2);
    Ok((b.right + b.swapped_right) / 2.0)
}

/// `{u1, u, u2} = (u1,u) u2 − (u1,u2) u + (u,u2) u1`.
pub fn anticommutator3_closed(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    Ok(u1.dot(u) * *u2 - u1.dot(u2) * *u + u.dot(u2) * *u1)
}

/// `⟨u1, u, u2⟩ = ((u1 ū) u2 − u1 (ū u2)) / 2`.
pub fn associator3(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let b = Bracketings::new(u1, u, u2);
    Ok((b.left - b.right) / 2.0)
}

/// `⟨u1, u, u2⟩ = (u2 (ū u1) − (u2 ū) u1) / 2`.
pub fn associator3_alt(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let b = Bracketings::new(u1, u, u2);
    Ok((b.swapped_right - b.swapped_left) / 2.0)
}

/// `[u1, u, u2] = ((u1 ū) u2 − u2 (ū u1)) / 2`.
pub fn commutator3(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let b = Bracketings::new(u1, u, u2);
    Ok((b.left - b.swapped_right) / 2.0)
}

/// `[u1, u, u2] = (u1 (ū u2) − (u2 ū) u1) / 2`.
pub fn commutator3_alt(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let b = Bracketings::new(u1, u, u2);
    Ok((b.right - b.swapped_left) / 2.0)
}

/// `[u1, u, u2] = ([u1,u], u2) i0 − (u1,i0)[u,u2] + (u,i0)[u1,u2] − (u2,i0)[u1,u]`.
pub fn commutator3_closed(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let i0 = Hyper::one(u1.dim());
    let c1u = cross(u1, u);
    Ok(c1u.dot(u2) * i0 - u1.real() * cross(u, u2) + u.real() * cross(u1, u2)
        - u2.real() * c1u)
}

/// The orthogonal parts of `(u1 ū) u2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleDecomposition {
    /// `{u1, u, u2}`
    pub anti: Hyper,
    /// `[u1, u, u2]`
    pub comm: Hyper,
    /// `⟨u1, u, u2⟩`
    pub assoc: Hyper,
    /// `‖(u1 ū) u2 − (anti + comm + assoc)‖`
    pub residual: f64,
}

impl TripleDecomposition {
    /// Rebuilds `(u1 ū) u2`.
    pub fn left(&self) -> Hyper {
        self.anti + self.comm + self.assoc
    }

    /// Rebuilds `(u2 ū) u1`.
    pub fn swapped_left(&self) -> Hyper {
        self.anti - self.comm - self.assoc
    }

    /// Rebuilds `u2 (ū u1)`.
    pub fn swapped_right(&self) -> Hyper {
        self.anti - self.comm + self.assoc
    }

    /// Rebuilds `u1 (ū u2)`.
    pub fn right(&self) -> Hyper {
        self.anti + self.comm - self.assoc
    }

    /// `[u1, u, u2] + ⟨u1, u, u2⟩`, the part that flips sign when `u1, u2` swap.
    pub fn anticommutative(&self) -> Hyper {
        self.comm + self.assoc
    }

    pub fn norm_sqs(&self) -> [f64; 3] {
        [self.anti.norm_sq(), self.comm.norm_sq(), self.assoc.norm_sq()]
    }
}

pub fn decompose_triple(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<TripleDecomposition> {
    check_dims3(u1, u, u2)?;
    let b = Bracketings::new(u1, u, u2);
    let anti = (b.left + b.swapped_left) / 2.0;
    let comm = (b.left - b.swapped_right) / 2.0;
    let assoc = (b.left - b.right) / 2.0;
    let residual = b.left.distance(&(anti + comm + assoc));
    Ok(TripleDecomposition { anti, comm, assoc, residual })
}

/// Symmetric 3×3 matrix of pairwise inner products.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    entries: [[f64; 3]; 3],
}

impl GramMatrix {
    /// Entries `(x_j, y_k)` for two triples of vectors.
    fn pairing(xs: [&Hyper; 3], ys: [&Hyper; 3]) -> GramMatrix {
        let mut entries = [[0.0; 3]; 3];
        for (j, x) in xs.iter().enumerate() {
            for (k, y) in ys.iter().enumerate() {
                entries[j][k] = x.dot(y);
            }
        }
        GramMatrix { entries }
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn det(&self) -> f64 {
        det3(&self.entries)
    }

    pub fn is_symmetric(&self) -> bool {
        let m = &self.entries;
        m[0][1] == m[1][0] && m[0][2] == m[2][0] && m[1][2] == m[2][1]
    }
}

/// Cofactor expansion along the first row.
pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Gram matrix of `(u1, u, u2)`.
pub fn gram(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<GramMatrix> {
    check_dims3(u1, u, u2)?;
    Ok(GramMatrix::pairing([u1, u, u2], [u1, u, u2]))
}

/// Gram matrix of the imaginary parts `(u1', u', u2')`.
pub fn imaginary_gram(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<GramMatrix> {
    gram(&u1.imag(), &u.imag(), &u2.imag())
}

/// Matrix with entries `(u_j, ū_k)`; symmetric because `(x, ȳ) = (y, x̄)`.
pub fn conjugated_gram(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<GramMatrix> {
    check_dims3(u1, u, u2)?;
    Ok(GramMatrix::pairing([u1, u, u2], [&u1.conj(), &u.conj(), &u2.conj()]))
}

fn mixed_product(u1: &Hyper, u: &Hyper, u2: &Hyper) -> f64 {
    cross(u1, u).dot(u2)
}

/// `‖u1‖²‖u‖²‖u2‖² − det G`.
pub fn anticommutator3_norm_sq(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<f64> {
    let g = gram(u1, u, u2)?;
    Ok(u1.norm_sq() * u.norm_sq() * u2.norm_sq() - g.det())
}

/// `([u1,u], u2)² + det G − det G'`.
pub fn commutator3_norm_sq(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<f64> {
    let g = gram(u1, u, u2)?;
    let g_imag = imaginary_gram(u1, u, u2)?;
    Ok(mixed_product(u1, u, u2).powi(2) + g.det() - g_imag.det())
}

/// `det G' − ([u1,u], u2)²`.
pub fn associator3_norm_sq(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<f64> {
    let g_imag = imaginary_gram(u1, u, u2)?;
    Ok(g_imag.det() - mixed_product(u1, u, u2).powi(2))
}

/// `‖[u1,u,u2] + ⟨u1,u,u2⟩‖² = det G`.
pub fn anticommutative_component_norm_sq(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<f64> {
    Ok(gram(u1, u, u2)?.det())
}

/// Both sides of `det G' = (det G − det Ḡ) / 2`, where `Ḡ` has entries `(u_j, ū_k)`.
pub fn gram_det_imaginary_identity(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<(f64, f64)> {
    let lhs = imaginary_gram(u1, u, u2)?.det();
    let rhs = (gram(u1, u, u2)?.det() - conjugated_gram(u1, u, u2)?.det()) / 2.0;
    Ok((lhs, rhs))
}

/// `‖u1‖·‖u‖·‖u2‖`, the natural scale of any identity linear in each argument.
pub fn triple_scale(u1: &Hyper, u: &Hyper, u2: &Hyper) -> f64 {
    u1.norm() * u.norm() * u2.norm()
}
