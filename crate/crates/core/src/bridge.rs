//! Cross-checks against other published triple-product conventions.
//!
//! Each identity is written as a list of terms with printed coefficients
//! whose weighted sum must vanish. When the printed coefficients fail, a
//! repair search over `±1, ±2` per term reports the smallest adjustment that
//! makes the identity hold, so a discrepancy is documented rather than hidden.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hyper::{check_dims3, Dim, Hyper, Tolerance};
use crate::sampling::TrialRng;
use crate::triple::{cross, decompose_triple, triple_scale};

/// `(u1 ū) u2`-free form of Okubo's bracket:
/// `−⟨u1,u,u2⟩ + (u1,i0)[u,u2] + (u,i0)[u2,u1] + (u2,i0)[u1,u] − (u2,[u1,u]) i0`.
pub fn okubo_bracket(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    let d = decompose_triple(u1, u, u2)?;
    let i0 = Hyper::one(u1.dim());
    Ok(-d.assoc + u1.real() * cross(u, u2) + u.real() * cross(u2, u1) + u2.real() * cross(u1, u)
        - u2.dot(&cross(u1, u)) * i0)
}

/// The same bracket built from Okubo's own primitives: pair bracket `xy − yx`
/// and associator `(xy)z − x(yz)`, translated through the factor table
/// `[x,y] = bracket/2` and `⟨x,y,z⟩ = −associator/2`.
pub fn okubo_bracket_native(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let i0 = Hyper::one(u1.dim());
    let half = |x: Hyper| x / 2.0;
    Ok(half(okubo_associator(u1, u, u2))
        + u1.real() * half(okubo_pair_bracket(u, u2))
        + u.real() * half(okubo_pair_bracket(u2, u1))
        + u2.real() * half(okubo_pair_bracket(u1, u))
        - u2.dot(&half(okubo_pair_bracket(u1, u))) * i0)
}

/// `xy − yx`.
pub fn okubo_pair_bracket(x: &Hyper, y: &Hyper) -> Hyper {
    *x * *y - *y * *x
}

/// `(xy)z − x(yz)`.
pub fn okubo_associator(x: &Hyper, y: &Hyper, z: &Hyper) -> Hyper {
    (*x * *y) * *z - *x * (*y * *z)
}

/// `‖(u1 u) u2 − (2(u,i0) u1u2 − {u1,u,u2} − [u1,u,u2] − ⟨u1,u,u2⟩)‖`.
pub fn okubo_reconstruction_residual(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<f64> {
    let terms = BridgeIdentity::OkuboReconstruction.terms(u1, u, u2)?;
    Ok(BridgeIdentity::OkuboReconstruction.residual(&terms, &BridgeIdentity::OkuboReconstruction.printed()))
}

/// Residual of `(u1 u) u2 = bracket + 2(u,i0) u1u2 − (u,u2) u1 − (u1,u) u2 + (u1,u2) u`.
pub fn okubo_bracket_residual(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<f64> {
    let id = BridgeIdentity::OkuboBracket;
    Ok(id.residual(&id.terms(u1, u, u2)?, &id.printed()))
}

/// `u1 × u × u2 = (u1 (ū u2) − u2 (ū u1)) / 2`.
pub fn dray_manogue_cross(u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Hyper> {
    check_dims3(u1, u, u2)?;
    let ub = u.conj();
    Ok((*u1 * (ub * *u2) - *u2 * (ub * *u1)) / 2.0)
}

/// `‖[A,[B,C]] − B(A,C) + C(A,B) − ⟨A,B,C⟩‖` on the imaginary parts of `a, b, c`.
pub fn bac_cab_residual(a: &Hyper, b: &Hyper, c: &Hyper) -> Result<f64> {
    let id = BridgeIdentity::BacCab;
    Ok(id.residual(&id.terms(a, b, c)?, &id.printed()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BridgeIdentity {
    OkuboReconstruction,
    OkuboBracket,
    OkuboNotation,
    DrayManogue,
    BacCab,
}

impl BridgeIdentity {
    pub const ALL: [BridgeIdentity; 5] = [
        BridgeIdentity::OkuboReconstruction,
        BridgeIdentity::OkuboBracket,
        BridgeIdentity::OkuboNotation,
        BridgeIdentity::DrayManogue,
        BridgeIdentity::BacCab,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BridgeIdentity::OkuboReconstruction => "okubo_reconstruction",
            BridgeIdentity::OkuboBracket => "okubo_bracket",
            BridgeIdentity::OkuboNotation => "okubo_notation",
            BridgeIdentity::DrayManogue => "dray_manogue",
            BridgeIdentity::BacCab => "bac_cab",
        }
    }

    /// Human-readable labels of [`Self::terms`].
    pub fn term_labels(self) -> &'static [&'static str] {
        match self {
            BridgeIdentity::OkuboReconstruction => {
                &["(u1 u) u2", "2(u,i0) u1 u2", "{u1,u,u2}", "[u1,u,u2]", "<u1,u,u2>"]
            }
            BridgeIdentity::OkuboBracket => &[
                "(u1 u) u2",
                "[u1,u,u2]_okubo",
                "2(u,i0) u1 u2",
                "(u,u2) u1",
                "(u1,u) u2",
                "(u1,u2) u",
            ],
            BridgeIdentity::OkuboNotation => &["[u1,u,u2]_okubo", "native bracket"],
            BridgeIdentity::DrayManogue => &["u1 x u x u2", "[u1,u,u2]", "<u1,u,u2>"],
            BridgeIdentity::BacCab => &["[A,[B,C]]", "B(A,C)", "C(A,B)", "<A,B,C>"],
        }
    }

    /// Coefficients as printed; the weighted sum of terms must vanish.
    pub fn printed(self) -> Vec<f64> {
        match self {
            BridgeIdentity::OkuboReconstruction => vec![1.0, -1.0, 1.0, 1.0, 1.0],
            BridgeIdentity::OkuboBracket => vec![1.0, -1.0, -1.0, 1.0, 1.0, -1.0],
            BridgeIdentity::OkuboNotation => vec![1.0, -1.0],
            BridgeIdentity::DrayManogue => vec![1.0, -1.0, 1.0],
            BridgeIdentity::BacCab => vec![1.0, -1.0, 1.0, -1.0],
        }
    }

    /// The identity's terms evaluated at one input triple.
    pub fn terms(self, u1: &Hyper, u: &Hyper, u2: &Hyper) -> Result<Vec<Hyper>> {
        check_dims3(u1, u, u2)?;
        Ok(match self {
            BridgeIdentity::OkuboReconstruction => {
                let d = decompose_triple(u1, u, u2)?;
                vec![(*u1 * *u) * *u2, 2.0 * u.real() * (*u1 * *u2), d.anti, d.comm, d.assoc]
            }
            BridgeIdentity::OkuboBracket => vec![
                (*u1 * *u) * *u2,
                okubo_bracket(u1, u, u2)?,
                2.0 * u.real() * (*u1 * *u2),
                u.dot(u2) * *u1,
                u1.dot(u) * *u2,
                u1.dot(u2) * *u,
            ],
            BridgeIdentity::OkuboNotation => {
                vec![okubo_bracket(u1, u, u2)?, okubo_bracket_native(u1, u, u2)?]
            }
            BridgeIdentity::DrayManogue => {
                let d = decompose_triple(u1, u, u2)?;
                vec![dray_manogue_cross(u1, u, u2)?, d.comm, d.assoc]
            }
            BridgeIdentity::BacCab => {
                let (a, b, c) = (u1.imag(), u.imag(), u2.imag());
                let assoc = decompose_triple(&a, &b, &c)?.assoc;
                vec![cross(&a, &cross(&b, &c)), a.dot(&c) * b, a.dot(&b) * c, assoc]
            }
        })
    }

    /// Operand scale for the tolerance: each term is trilinear in the inputs.
    pub fn scale(self, u1: &Hyper, u: &Hyper, u2: &Hyper) -> f64 {
        match self {
            BridgeIdentity::BacCab => triple_scale(&u1.imag(), &u.imag(), &u2.imag()),
            _ => triple_scale(u1, u, u2),
        }
    }

    pub fn residual(self, terms: &[Hyper], coeffs: &[f64]) -> f64 {
        let dim = terms[0].dim();
        terms.iter().zip(coeffs).fold(Hyper::zero(dim), |acc, (t, c)| acc + *c * *t).norm()
    }
}

/// Outcome of checking one identity over many random triples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConventionReport {
    pub identity_name: String,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest scale-normalized residual of the printed form.
    pub max_residual: f64,
    pub tolerance_used: f64,
    /// The printed form holds on every trial.
    pub pass: bool,
    /// Smallest coefficient change that makes a failing form hold, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repair: Option<Vec<f64>>,
}

impl ConventionReport {
    /// The printed form holds, or a documented repair does.
    pub fn holds(&self) -> bool {
        self.pass || self.repair.is_some()
    }
}

/// Runs `identity` over `trials` random triples drawn from `TrialRng::for_trial(seed, suite_index, t)`.
pub fn check_identity(
    identity: BridgeIdentity,
    dim: Dim,
    seed: u64,
    suite_index: u64,
    trials: usize,
    tol: Tolerance,
) -> ConventionReport {
    let samples: Vec<(Vec<Hyper>, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = TrialRng::for_trial(seed, suite_index, t as u64);
            let (u1, u, u2) = (rng.hyper(dim), rng.hyper(dim), rng.hyper(dim));
            let terms = identity.terms(&u1, &u, &u2).expect("same dimension");
            (terms, identity.scale(&u1, &u, &u2))
        })
        .collect();
    let max_for = |coeffs: &[f64]| {
        samples
            .iter()
            .map(|(terms, s)| tol.normalize(identity.residual(terms, coeffs), *s))
            .fold(0.0, f64::max)
    };
    let printed = identity.printed();
    let max_residual = max_for(&printed);
    let pass = max_residual <= tol.rel();
    let repair = if pass {
        None
    } else {
        repair_candidates(&printed).into_iter().find(|c| max_for(c) <= tol.rel())
    };
    ConventionReport {
        identity_name: identity.name().to_string(),
        dim: dim.get(),
        trials,
        seed,
        max_residual,
        tolerance_used: tol.rel(),
        pass,
        repair,
    }
}

/// Coefficient vectors with the first term fixed and every other term scaled
/// by one of `1, −1, 2, −2`, ordered by how many terms change.
fn repair_candidates(printed: &[f64]) -> Vec<Vec<f64>> {
    let factors = [1.0, -1.0, 2.0, -2.0];
    let mut out: Vec<(usize, Vec<f64>)> = (1..printed.len())
        .map(|_| factors.iter())
        .multi_cartesian_product()
        .map(|fs| {
            let changed = fs.iter().filter(|&&&f| f != 1.0).count();
            let mut coeffs = vec![printed[0]];
            coeffs.extend(fs.iter().zip(&printed[1..]).map(|(f, c)| *f * c));
            (changed, coeffs)
        })
        .filter(|(changed, _)| *changed > 0)
        .collect();
    out.sort_by_key(|(changed, _)| *changed);
    out.into_iter().map(|(_, c)| c).collect()
}
