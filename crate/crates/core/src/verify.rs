//! Randomized verification suites behind `octotriple verify`.
//!
//! Every trial draws its inputs from `TrialRng::for_trial(seed, suite, trial)`,
//! so trials can run in any order on any number of threads. Each check
//! records a residual normalized by its operand scale; a suite's report keeps
//! the largest one.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bridge::{check_identity, BridgeIdentity};
use crate::error::{Error, Result};
use crate::hadamard::{build, classify_symmetry, doubling_order_permutations, is_group, row_group_check, RowPermutation, SignMatrix};
use crate::hyper::{spacetime_interval, Dim, Hyper, Tolerance};
use crate::operator::{Involution, OpWord, ProductForm, Sign, SignTriple, TripleOperator};
use crate::sampling::TrialRng;
use crate::triple::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    CoreIdentities,
    TripleDecomposition,
    Lengths,
    OperatorSymmetry,
    Hadamard,
    ConventionBridge,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::CoreIdentities,
        Suite::TripleDecomposition,
        Suite::Lengths,
        Suite::OperatorSymmetry,
        Suite::Hadamard,
        Suite::ConventionBridge,
    ];

    /// Mixed into every per-trial seed.
    pub fn index(self) -> u64 {
        self as u64
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::CoreIdentities => "core_identities",
            Suite::TripleDecomposition => "triple_decomposition",
            Suite::Lengths => "lengths",
            Suite::OperatorSymmetry => "operator_symmetry",
            Suite::Hadamard => "hadamard",
            Suite::ConventionBridge => "convention_bridge",
        }
    }

    /// Whether the suite draws random inputs per dimension.
    pub fn is_randomized(self) -> bool {
        self != Suite::Hadamard
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<Dim>,
    pub tolerance: Tolerance,
    pub format: OutputFormat,
}

impl RunConfig {
    /// Validates the config; `dims` is sorted and deduplicated.
    pub fn new(seed: u64, trials: usize, mut dims: Vec<Dim>, tolerance: Tolerance, format: OutputFormat) -> Result<RunConfig> {
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        if dims.is_empty() {
            return Err(Error::NoDims);
        }
        dims.sort();
        dims.dedup();
        Ok(RunConfig { seed, trials, dims, tolerance, format })
    }
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            seed: 42,
            trials: 1000,
            dims: Dim::ALL.to_vec(),
            tolerance: Tolerance::default(),
            format: OutputFormat::Text,
        }
    }
}

/// Outcome of one suite at one dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest residual divided by `scale + abs/rel`; compared against `rel`.
    pub max_residual: f64,
    pub tolerance_used: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_check: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<21} dim={} trials={} max_residual={:.3e} tol={:.1e} {}",
            self.suite,
            self.dim,
            self.trials,
            self.max_residual,
            self.tolerance_used,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        if let Some(w) = &self.worst_check {
            write!(f, " worst={w}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Every suite at every configured dimension; the Hadamard suite runs once.
pub fn run_all(config: &RunConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for suite in Suite::ALL {
        if suite.is_randomized() {
            out.extend(config.dims.iter().map(|&d| run_suite(suite, d, config)));
        } else {
            out.push(hadamard_report(config));
        }
    }
    out
}

pub fn run_suite(suite: Suite, dim: Dim, config: &RunConfig) -> VerificationReport {
    match suite {
        Suite::CoreIdentities => randomized(suite, dim, config, core_trial),
        Suite::TripleDecomposition => randomized(suite, dim, config, triple_trial),
        Suite::Lengths => randomized(suite, dim, config, lengths_trial),
        Suite::OperatorSymmetry => operator_report(dim, config),
        Suite::Hadamard => hadamard_report(config),
        Suite::ConventionBridge => bridge_report(dim, config),
    }
}

#[derive(Clone, Copy, Debug)]
struct Worst {
    residual: f64,
    check: &'static str,
}

impl Worst {
    const NONE: Worst = Worst { residual: 0.0, check: "" };

    // Ties go to the lexicographically smaller name so the result does not
    // depend on reduction order.
    fn merge(self, other: Worst) -> Worst {
        match other.residual.total_cmp(&self.residual) {
            Ordering::Greater => other,
            Ordering::Equal if other.check < self.check => other,
            _ => self,
        }
    }
}

/// Per-trial accumulator.
struct Probe {
    tol: Tolerance,
    worst: Worst,
    /// Side channel for survey values, merged by elementwise max.
    extras: [f64; 8],
}

impl Probe {
    fn new(tol: Tolerance) -> Probe {
        Probe { tol, worst: Worst::NONE, extras: [0.0; 8] }
    }

    fn record(&mut self, check: &'static str, residual: f64, scale: f64) {
        let r = self.tol.normalize(residual, scale);
        let r = if r.is_nan() { f64::INFINITY } else { r };
        self.worst = self.worst.merge(Worst { residual: r, check });
    }

    fn scalar(&mut self, check: &'static str, x: f64, y: f64, scale: f64) {
        self.record(check, (x - y).abs(), scale);
    }

    fn vector(&mut self, check: &'static str, x: &Hyper, y: &Hyper, scale: f64) {
        self.record(check, x.distance(y), scale);
    }
}

fn run_trials<F>(suite: Suite, dim: Dim, config: &RunConfig, f: F) -> (Worst, [f64; 8])
where
    F: Fn(Dim, &mut TrialRng, &mut Probe) + Sync,
{
    (0..config.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = TrialRng::for_trial(config.seed, suite.index(), t);
            let mut probe = Probe::new(config.tolerance);
            f(dim, &mut rng, &mut probe);
            (probe.worst, probe.extras)
        })
        .reduce(
            || (Worst::NONE, [0.0; 8]),
            |(wa, ea), (wb, eb)| (wa.merge(wb), std::array::from_fn(|k| f64::max(ea[k], eb[k]))),
        )
}

fn report(suite: Suite, dim: usize, config: &RunConfig, worst: Worst) -> VerificationReport {
    VerificationReport {
        suite: suite.name().to_string(),
        dim,
        trials: config.trials,
        seed: config.seed,
        max_residual: worst.residual,
        tolerance_used: config.tolerance.rel(),
        pass: worst.residual <= config.tolerance.rel(),
        worst_check: (!worst.check.is_empty()).then(|| worst.check.to_string()),
        notes: Vec::new(),
    }
}

fn randomized(suite: Suite, dim: Dim, config: &RunConfig, f: fn(Dim, &mut TrialRng, &mut Probe)) -> VerificationReport {
    let (worst, _) = run_trials(suite, dim, config, f);
    report(suite, dim.get(), config, worst)
}

fn core_trial(dim: Dim, rng: &mut TrialRng, p: &mut Probe) {
    let (a, b, c, u) = (rng.hyper(dim), rng.hyper(dim), rng.hyper(dim), rng.hyper(dim));
    let (na, nb, nc, nu) = (a.norm(), b.norm(), c.norm(), u.norm());
    let i0 = Hyper::one(dim);
    let ub = u.conj();

    p.vector("product_reversal", &(a * b).conj(), &(b.conj() * a.conj()), na * nb);
    let tr = (a * b).dot(&i0);
    p.scalar("transfer_rule", tr, (b * a).dot(&i0), na * nb);
    p.scalar("transfer_rule_conj", tr, a.dot(&b.conj()), na * nb);
    p.scalar("trace_invariance", ((a * u) * b).dot(&i0), (a * (u * b)).dot(&i0), na * nu * nb);

    let sandwich = 2.0 * a.dot(&u) * a - a.norm_sq() * u;
    let s = na * na * nu;
    p.vector("sandwich_left", &((a * ub) * a), &sandwich, s);
    p.vector("sandwich_right", &(a * (ub * a)), &sandwich, s);
    p.vector("flexibility", &((a * ub) * a), &(a * (ub * a)), s);

    if dim.is_associative() {
        p.vector("associativity", &((a * b) * c), &(a * (b * c)), na * nb * nc);
    }
    let n2 = a.norm_sq() * b.norm_sq();
    p.scalar("norm_multiplicativity", (a * b).norm_sq(), n2, n2);
    p.scalar("spacetime_interval", u.dot(&ub), spacetime_interval(&u), nu * nu);
}

fn triple_trial(dim: Dim, rng: &mut TrialRng, p: &mut Probe) {
    let (u1, u, u2, u3) = (rng.hyper(dim), rng.hyper(dim), rng.hyper(dim), rng.hyper(dim));
    let i0 = Hyper::one(dim);
    let ub = u.conj();
    let s = triple_scale(&u1, &u, &u2);
    let d = decompose_triple(&u1, &u, &u2).expect("same dimension");

    p.vector("reconstruction_left", &d.left(), &((u1 * ub) * u2), s);
    p.vector("reconstruction_swapped_left", &d.swapped_left(), &((u2 * ub) * u1), s);
    p.vector("reconstruction_swapped_right", &d.swapped_right(), &(u2 * (ub * u1)), s);
    p.vector("reconstruction_right", &d.right(), &(u1 * (ub * u2)), s);

    p.scalar("orthogonality_anti_comm", d.anti.dot(&d.comm), 0.0, s * s);
    p.scalar("orthogonality_anti_assoc", d.anti.dot(&d.assoc), 0.0, s * s);
    p.scalar("orthogonality_comm_assoc", d.comm.dot(&d.assoc), 0.0, s * s);
    if dim.is_associative() {
        p.vector("quaternion_associator", &d.assoc, &Hyper::zero(dim), s);
    }

    let swapped = decompose_triple(&u2, &u, &u1).expect("same dimension");
    p.vector("commutator_antisymmetry", &d.comm, &-swapped.comm, s);
    p.vector("associator_cancellation", &(d.assoc + swapped.assoc), &Hyper::zero(dim), s);

    for x in [&u1, &u, &u2] {
        p.scalar("commutator_argument_orthogonality", d.comm.dot(x), 0.0, s * x.norm());
        p.scalar("associator_argument_orthogonality", d.assoc.dot(x), 0.0, s * x.norm());
    }
    p.scalar("associator_unit_orthogonality", d.assoc.dot(&i0), 0.0, s);
    for (x, y) in [(&u1, &u), (&u1, &u2), (&u, &u2)] {
        let c = cross(x, y);
        p.scalar("associator_cross_orthogonality", d.assoc.dot(&c), 0.0, s * x.norm() * y.norm());
    }

    let d3 = decompose_triple(&u3, &u, &u2).expect("same dimension");
    let s4 = s * u3.norm();
    p.scalar("commutator_mixed_product", d.comm.dot(&u3), -d3.comm.dot(&u1), s4);
    p.scalar("associator_mixed_product", d.assoc.dot(&u3), -d3.assoc.dot(&u1), s4);

    let ok = |r: Result<Hyper>| r.expect("same dimension");
    p.vector("anticommutator_alt", &ok(anticommutator3_alt(&u1, &u, &u2)), &d.anti, s);
    p.vector("anticommutator_closed", &ok(anticommutator3_closed(&u1, &u, &u2)), &d.anti, s);
    p.vector("commutator_alt", &ok(commutator3_alt(&u1, &u, &u2)), &d.comm, s);
    p.vector("commutator_closed", &ok(commutator3_closed(&u1, &u, &u2)), &d.comm, s);
    p.vector("associator_alt", &ok(associator3_alt(&u1, &u, &u2)), &d.assoc, s);

    let s2 = u1.norm() * u2.norm();
    p.vector("commutator_unit_reduction", &ok(commutator3(&u1, &i0, &u2)), &cross(&u1, &u2), s2);
    p.vector("anticommutator_unit_reduction", &ok(anticommutator3(&u1, &i0, &u2)), &ok(pair_anticommutator(&u1, &u2)), s2);
    p.vector("pair_product_expansion", &(u1 * u2), &ok(pair_product_expansion(&u1, &u2)), s2);
}

fn lengths_trial(dim: Dim, rng: &mut TrialRng, p: &mut Probe) {
    let (u1, u, u2) = (rng.hyper(dim), rng.hyper(dim), rng.hyper(dim));
    let s = triple_scale(&u1, &u, &u2);
    let s2 = s * s;
    let product = u1.norm_sq() * u.norm_sq() * u2.norm_sq();
    let d = decompose_triple(&u1, &u, &u2).expect("same dimension");
    let [na, nc, ns] = d.norm_sqs();
    let ok = |r: Result<f64>| r.expect("same dimension");

    let f15 = ok(anticommutator3_norm_sq(&u1, &u, &u2));
    let f16 = ok(commutator3_norm_sq(&u1, &u, &u2));
    let f17 = ok(associator3_norm_sq(&u1, &u, &u2));
    p.scalar("anticommutator_length", f15, na, s2);
    p.scalar("commutator_length", f16, nc, s2);
    p.scalar("associator_length", f17, ns, s2);
    p.scalar("length_formula_sum", f15 + f16 + f17, product, s2);
    p.scalar("part_norm_sum", na + nc + ns, product, s2);
    p.scalar("product_norm", ((u1 * u.conj()) * u2).norm_sq(), product, s2);

    // the mixed product taken on imaginary parts only
    let (v1, v, v2) = (u1.imag(), u.imag(), u2.imag());
    let full = cross(&u1, &u).dot(&u2);
    let imag = cross(&v1, &v).dot(&v2);
    p.scalar("commutator_length_imaginary_variant", f16 - full * full + imag * imag, nc, s2);

    p.scalar("gram_determinant", d.anticommutative().norm_sq(), ok(anticommutative_component_norm_sq(&u1, &u, &u2)), s2);
    let (lhs, rhs) = gram_det_imaginary_identity(&u1, &u, &u2).expect("same dimension");
    p.scalar("gram_half_difference", lhs, rhs, s2);
}

fn operator_trial(dim: Dim, rng: &mut TrialRng, p: &mut Probe) {
    let (u1, u2, u, v) = (rng.hyper(dim), rng.hyper(dim), rng.hyper(dim), rng.hyper(dim));
    let (alpha, beta) = (rng.standard_normal(), rng.standard_normal());
    let op = TripleOperator::new(u1, u2).expect("same dimension");
    let s = triple_scale(&u1, &u, &u2);
    let zero = Hyper::zero(dim);
    let ok = |r: Result<Hyper>| r.expect("same dimension");
    let d = decompose_triple(&u1, &u, &u2).expect("same dimension");
    let direct: Vec<Hyper> = OpWord::ALL.iter().map(|w| ok(op.apply(*w, &u))).collect();

    let (pl, mi) = (Sign::Plus, Sign::Minus);
    p.vector("component2_vanishing", &ok(op.component2(pl, mi, &u)), &zero, s);
    p.vector("component2_anticommutator", &ok(op.component2(pl, pl, &u)), &d.anti, s);
    p.vector("component2_commutator", &ok(op.component2(mi, mi, &u)), &d.comm, s);
    p.vector("component2_associator", &ok(op.component2(mi, pl, &u)), &d.assoc, s);

    let pairs = [(pl, pl), (mi, pl), (pl, mi), (mi, mi)];
    let c2: Vec<Hyper> = pairs.iter().map(|&(a, b)| ok(op.component2(a, b, &u))).collect();
    for (w, target) in OpWord::ALL[..4].iter().zip(&direct) {
        let rebuilt = pairs.iter().zip(&c2).fold(zero, |acc, (&(a, b), c)| {
            acc + SignTriple::new(a, b, pl).character(*w) * *c
        });
        p.vector("component2_inverse", &rebuilt, target, s);
    }

    let c3: Vec<Hyper> = SignTriple::all().iter().map(|sg| ok(op.component3(*sg, &u))).collect();
    for (w, target) in OpWord::ALL.iter().zip(&direct) {
        let rebuilt = SignTriple::all().iter().zip(&c3).fold(zero, |acc, (sg, c)| acc + sg.character(*w) * *c);
        p.vector("component3_inverse", &rebuilt, target, s);
    }
    for (k, (sg, c)) in SignTriple::all().iter().zip(&c3).enumerate() {
        for inv in Involution::ALL {
            let t = ok(op.transformed_component3(*sg, OpWord::single(inv), &u));
            p.vector("component3_eigenvalue", &t, &(sg.eigenvalue(inv) * *c), s);
        }
        if sg.vee == pl {
            let partner = c3[k | 4];
            p.vector("component3_telescoping", &(*c + partner), &ok(op.component2(sg.plus, sg.star, &u)), s);
        }
        p.extras[k] = p.tol.normalize(c.norm(), s);
    }

    for (w, target) in OpWord::ALL.iter().zip(&direct) {
        let twice = ok(op.apply_form(ProductForm::of(*w).transform_word(*w), &u));
        p.vector("involution", &twice, &direct[0], s);
        for w2 in OpWord::ALL {
            let ab = ok(op.apply_form(ProductForm::of(*w).transform_word(w2), &u));
            let ba = ok(op.apply_form(ProductForm::of(w2).transform_word(*w), &u));
            p.vector("commutation", &ab, &ba, s);
            p.vector("composition", &ab, &direct[w.compose(w2).bits() as usize], s);
        }
        let lin = ok(op.apply(*w, &(alpha * u + beta * v)));
        let expected = alpha * *target + beta * ok(op.apply(*w, &v));
        let ls = u1.norm() * u2.norm() * (alpha.abs() * u.norm() + beta.abs() * v.norm());
        p.vector("linearity", &lin, &expected, ls);
    }
    let adj = op.adjoint_residual(&u, &v).expect("same dimension");
    p.record("adjoint", adj, s * v.norm());
}

fn operator_report(dim: Dim, config: &RunConfig) -> VerificationReport {
    let (worst, extras) = run_trials(Suite::OperatorSymmetry, dim, config, operator_trial);
    let mut r = report(Suite::OperatorSymmetry, dim.get(), config, worst);
    let vanishing: Vec<String> = SignTriple::all()
        .iter()
        .zip(extras)
        .filter(|(_, m)| *m <= config.tolerance.rel())
        .map(|(sg, _)| sg.to_string())
        .collect();
    r.notes.push(format!(
        "vanishing three-sign components: {}",
        if vanishing.is_empty() { "none".to_string() } else { vanishing.join(" ") }
    ));
    r
}

/// The 4×4 normalized Hadamard matrix, written out by hand.
pub const REFERENCE_A4: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];

/// Exact integer checks; `max_residual` counts failed checks.
pub fn hadamard_checks() -> Vec<(&'static str, bool)> {
    let a4 = build(4).expect("valid order");
    let a8 = build(8).expect("valid order");
    let reference = SignMatrix::from_rows(REFERENCE_A4.iter().map(|r| r.to_vec()).collect()).expect("square");
    let e8: Vec<Vec<i32>> = (0..8).map(|i| (0..8).map(|j| if i == j { 8 } else { 0 }).collect()).collect();
    let perms = doubling_order_permutations(&a8).unwrap_or_default();
    let classes = classify_symmetry(&perms, &a8);
    let swap = RowPermutation::new(vec![0, 1, 3, 2]).expect("bijection");
    vec![
        ("a4_matches_reference", a4 == reference),
        ("a8_squared_is_8e", a8.product(&a8) == e8),
        ("orders_are_hadamard", [2, 4, 8].iter().all(|&n| build(n).is_ok_and(|m| m.is_hadamard() && m.is_normalized() && m.is_symmetric()))),
        ("row_group", row_group_check(&a4) && row_group_check(&a8)),
        ("automorphism_count", perms.len() == 168),
        ("symmetric_count", classes.counts() == (28, 140)),
        ("automorphisms_form_group", is_group(&perms)),
        ("a4_swap_correspondence", a4.permute_rows(&swap).column_row_correspondence() == Some(vec![0, 2, 3, 1])),
    ]
}

fn hadamard_report(config: &RunConfig) -> VerificationReport {
    let checks = hadamard_checks();
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let a8 = build(8).expect("valid order");
    let perms = doubling_order_permutations(&a8).unwrap_or_default();
    let (sym, asym) = classify_symmetry(&perms, &a8).counts();
    VerificationReport {
        suite: Suite::Hadamard.name().to_string(),
        dim: 8,
        trials: 1,
        seed: config.seed,
        max_residual: failed.len() as f64,
        tolerance_used: 0.0,
        pass: failed.is_empty(),
        worst_check: failed.first().map(|s| s.to_string()),
        notes: vec![format!("automorphism perms: {}, symmetric: {sym}, asymmetric: {asym}", perms.len())],
    }
}

fn bridge_report(dim: Dim, config: &RunConfig) -> VerificationReport {
    let reports: Vec<_> = BridgeIdentity::ALL
        .iter()
        .map(|id| check_identity(*id, dim, config.seed, Suite::ConventionBridge.index(), config.trials, config.tolerance))
        .collect();
    let worst = reports.iter().fold(Worst::NONE, |w, r| {
        let residual = if r.max_residual.is_nan() { f64::INFINITY } else { r.max_residual };
        w.merge(Worst { residual, check: static_name(&r.identity_name) })
    });
    let mut out = report(Suite::ConventionBridge, dim.get(), config, worst);
    for r in &reports {
        if let Some(c) = &r.repair {
            out.notes.push(format!("{} holds with coefficients {c:?}", r.identity_name));
        }
    }
    out
}

fn static_name(name: &str) -> &'static str {
    BridgeIdentity::ALL.iter().map(|id| id.name()).find(|n| *n == name).unwrap_or("")
}
