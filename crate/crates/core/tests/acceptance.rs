//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! show up under `cargo test` without `--nocapture`; exits non-zero if any
//! criterion fails.
//!
//! Products on the reference side come from an explicit Hamilton-product
//! implementation below rather than the library's recursive doubling.

use std::process::ExitCode;
use std::time::Instant;

use octotriple::bridge::{check_identity, BridgeIdentity};
use octotriple::hadamard::{build, classify_symmetry, doubling_order_permutations, is_group};
use octotriple::hyper::{Dim, Hyper, Tolerance};
use octotriple::operator::{Involution, OpWord, ProductForm, Sign, SignTriple, TripleOperator};
use octotriple::sampling::TrialRng;
use octotriple::triple::*;

const SEED: u64 = 42;
const TRIALS: u64 = 1000;
const VEC_REL: f64 = 1e-9;
const LEN_REL: f64 = 1e-8;

type O = [f64; 8];

fn qmul(a: &[f64], b: &[f64]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: &[f64]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

/// `(a, b)(c, d) = (ac − d̄b, da + bc̄)` over explicit quaternion halves.
fn omul(x: &O, y: &O) -> O {
    let (a, b) = x.split_at(4);
    let (c, d) = y.split_at(4);
    let ac = qmul(a, c);
    let db = qmul(&qconj(d), b);
    let da = qmul(d, a);
    let bc = qmul(b, &qconj(c));
    std::array::from_fn(|k| if k < 4 { ac[k] - db[k] } else { da[k - 4] + bc[k - 4] })
}

fn oconj(x: &O) -> O {
    std::array::from_fn(|k| if k == 0 { x[0] } else { -x[k] })
}

fn add(x: &O, y: &O) -> O {
    std::array::from_fn(|k| x[k] + y[k])
}

fn sub(x: &O, y: &O) -> O {
    std::array::from_fn(|k| x[k] - y[k])
}

fn scale(c: f64, x: &O) -> O {
    x.map(|v| c * v)
}

fn dot(x: &O, y: &O) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(x: &O) -> f64 {
    dot(x, x).sqrt()
}

fn im(x: &O) -> O {
    std::array::from_fn(|k| if k == 0 { 0.0 } else { x[k] })
}

fn unit() -> O {
    std::array::from_fn(|k| (k == 0) as u8 as f64)
}

/// Padded coefficients; quaternions multiply inside the first half.
fn raw(h: &Hyper) -> O {
    let mut out = [0.0; 8];
    out[..h.coeffs().len()].copy_from_slice(h.coeffs());
    out
}

fn dist(h: &Hyper, x: &O) -> f64 {
    norm(&sub(&raw(h), x))
}

fn sample(rng: &mut TrialRng, dim: Dim, n: usize) -> Vec<Hyper> {
    (0..n).map(|_| rng.hyper(dim)).collect()
}

/// Largest `residual / scale` seen, and whether any was NaN.
#[derive(Default)]
struct Worst {
    ratio: f64,
    nan: bool,
}

impl Worst {
    fn push(&mut self, residual: f64, scale: f64) {
        let r = residual / scale;
        if r.is_nan() {
            self.nan = true;
        } else {
            self.ratio = self.ratio.max(r);
        }
    }

    fn ok(&self, rel: f64) -> bool {
        !self.nan && self.ratio <= rel
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn numeric(w: &Worst, rel: f64, unit: &str) -> Outcome {
    Outcome { pass: w.ok(rel), detail: format!("max residual {:.2e}·{unit} (bound {rel:.0e}·{unit})", w.ratio) }
}

fn bracketings(u1: &O, u: &O, u2: &O) -> [O; 4] {
    let ub = oconj(u);
    [
        omul(&omul(u1, &ub), u2),
        omul(&omul(u2, &ub), u1),
        omul(u2, &omul(&ub, u1)),
        omul(u1, &omul(&ub, u2)),
    ]
}

/// Reference `{}`, `[]`, `⟨⟩` from the four bracketings.
fn parts(u1: &O, u: &O, u2: &O) -> [O; 3] {
    let [l, sl, sr, r] = bracketings(u1, u, u2);
    [scale(0.5, &add(&l, &sl)), scale(0.5, &sub(&l, &sr)), scale(0.5, &sub(&l, &r))]
}

fn criterion_1() -> Outcome {
    let mut w = Worst::default();
    for t in 0..TRIALS {
        let mut rng = TrialRng::for_trial(SEED, 1, t);
        let v = sample(&mut rng, Dim::Octonion, 3);
        let d = decompose_triple(&v[0], &v[1], &v[2]).unwrap();
        let s = triple_scale(&v[0], &v[1], &v[2]);
        let [l, sl, sr, r] = bracketings(&raw(&v[0]), &raw(&v[1]), &raw(&v[2]));
        w.push(dist(&d.left(), &l), s);
        w.push(dist(&d.swapped_left(), &sl), s);
        w.push(dist(&d.swapped_right(), &sr), s);
        w.push(dist(&d.right(), &r), s);
        w.push(d.residual, s);
    }
    numeric(&w, VEC_REL, "scale")
}

fn criterion_2() -> Outcome {
    let mut w = Worst::default();
    for t in 0..TRIALS {
        let mut rng = TrialRng::for_trial(SEED, 1, t);
        let v = sample(&mut rng, Dim::Octonion, 3);
        let d = decompose_triple(&v[0], &v[1], &v[2]).unwrap();
        let s = triple_scale(&v[0], &v[1], &v[2]);
        for (a, b) in [(&d.anti, &d.comm), (&d.anti, &d.assoc), (&d.comm, &d.assoc)] {
            w.push(a.dot(b).abs(), s);
        }
        let [pa, pc, ps] = parts(&raw(&v[0]), &raw(&v[1]), &raw(&v[2]));
        for (a, b) in [(&pa, &pc), (&pa, &ps), (&pc, &ps)] {
            w.push(dot(a, b).abs(), s);
        }
    }
    numeric(&w, VEC_REL, "scale")
}

fn criterion_3() -> Outcome {
    let mut w = Worst::default();
    for t in 0..TRIALS {
        let mut rng = TrialRng::for_trial(SEED, 3, t);
        let v = sample(&mut rng, Dim::Quaternion, 3);
        let s = triple_scale(&v[0], &v[1], &v[2]);
        w.push(associator3(&v[0], &v[1], &v[2]).unwrap().norm(), s);
        w.push(associator3_alt(&v[0], &v[1], &v[2]).unwrap().norm(), s);
        w.push(norm(&parts(&raw(&v[0]), &raw(&v[1]), &raw(&v[2]))[2]), s);
    }
    numeric(&w, VEC_REL, "scale")
}

fn criterion_4() -> Outcome {
    let mut w = Worst::default();
    for t in 0..TRIALS {
        let mut rng = TrialRng::for_trial(SEED, 4, t);
        let v = sample(&mut rng, Dim::Octonion, 3);
        let (u1, u, u2) = (&v[0], &v[1], &v[2]);
        let s2 = triple_scale(u1, u, u2).powi(2);
        let [pa, pc, ps] = parts(&raw(u1), &raw(u), &raw(u2));
        let f = [
            anticommutator3_norm_sq(u1, u, u2).unwrap(),
            commutator3_norm_sq(u1, u, u2).unwrap(),
            associator3_norm_sq(u1, u, u2).unwrap(),
        ];
        for (closed, part) in f.iter().zip([pa, pc, ps]) {
            w.push((closed - dot(&part, &part)).abs(), s2);
        }
        let product = u1.norm_sq() * u.norm_sq() * u2.norm_sq();
        w.push((f.iter().sum::<f64>() - product).abs(), s2);
    }
    numeric(&w, LEN_REL, "scale²")
}

/// Leibniz expansion over the six permutations.
fn det_leibniz(m: &[[f64; 3]; 3]) -> f64 {
    const PERMS: [([usize; 3], f64); 6] =
        [([0, 1, 2], 1.0), ([1, 2, 0], 1.0), ([2, 0, 1], 1.0), ([0, 2, 1], -1.0), ([2, 1, 0], -1.0), ([1, 0, 2], -1.0)];
    PERMS.iter().map(|(p, s)| s * m[0][p[0]] * m[1][p[1]] * m[2][p[2]]).sum()
}

fn pairing(xs: [O; 3], ys: [O; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|j| std::array::from_fn(|k| dot(&xs[j], &ys[k])))
}

fn criterion_5() -> Outcome {
    let mut w = Worst::default();
    for t in 0..TRIALS {
        let mut rng = TrialRng::for_trial(SEED, 5, t);
        let v = sample(&mut rng, Dim::Octonion, 3);
        let (u1, u, u2) = (&v[0], &v[1], &v[2]);
        let s2 = triple_scale(u1, u, u2).powi(2);
        let xs = [raw(u1), raw(u), raw(u2)];
        let g = det_leibniz(&pairing(xs, xs));
        let g_imag = det_leibniz(&pairing(xs.map(|x| im(&x)), xs.map(|x| im(&x))));
        let g_conj = det_leibniz(&pairing(xs, xs.map(|x| oconj(&x))));

        let [_, pc, ps] = parts(&xs[0], &xs[1], &xs[2]);
        let anti = add(&pc, &ps);
        w.push((dot(&anti, &anti) - g).abs(), s2);
        w.push((anticommutative_component_norm_sq(u1, u, u2).unwrap() - g).abs(), s2);
        w.push((g_imag - (g - g_conj) / 2.0).abs(), s2);
        let (lhs, rhs) = gram_det_imaginary_identity(u1, u, u2).unwrap();
        w.push((lhs - g_imag).abs(), s2);
        w.push((rhs - g_imag).abs(), s2);
    }
    numeric(&w, LEN_REL, "scale²")
}

/// Closed forms as tabulated, plus the adjoint of `*∨` for the one word the
/// table leaves out.
fn tabulated(word: OpWord, u1: &O, u2: &O, u: &O) -> O {
    let ub = oconj(u);
    let (c1, c2) = (oconj(u1), oconj(u2));
    match word.to_string().as_str() {
        "e" => omul(&omul(u1, &ub), u2),
        "+" => omul(&omul(u2, &ub), u1),
        "*" => omul(u2, &omul(&ub, u1)),
        "+*" => omul(u1, &omul(&ub, u2)),
        "∨" => omul(&c2, &omul(&ub, &c1)),
        "+∨" => omul(&c1, &omul(&ub, &c2)),
        "*∨" => omul(&omul(&c1, &ub), &c2),
        "+*∨" => {
            // (A u, v) = (u, A⁺ v) with A = A*∨: A⁺ v = Σ_k (A i_k, v) i_k
            std::array::from_fn(|k| {
                let ik: O = std::array::from_fn(|j| (j == k) as u8 as f64);
                dot(&omul(&omul(&c1, &oconj(&ik)), &c2), u)
            })
        }
        other => panic!("unexpected word {other}"),
    }
}

fn criterion_6() -> Outcome {
    let mut w = Worst::default();
    let (pl, mi) = (Sign::Plus, Sign::Minus);
    let generators = [OpWord::IDENTITY, OpWord::from_bits(1), OpWord::from_bits(2), OpWord::from_bits(4)];
    for t in 0..TRIALS {
        let mut rng = TrialRng::for_trial(SEED, 6, t);
        let v = sample(&mut rng, Dim::Octonion, 3);
        let (u1, u2, u) = (&v[0], &v[1], &v[2]);
        let (r1, r2, r) = (raw(u1), raw(u2), raw(u));
        let s = triple_scale(u1, u, u2);
        let op = TripleOperator::new(*u1, *u2).unwrap();
        let [pa, pc, ps] = parts(&r1, &r, &r2);

        w.push(op.component2(pl, mi, u).unwrap().norm(), s);
        w.push(dist(&op.component2(pl, pl, u).unwrap(), &pa), s);
        w.push(dist(&op.component2(mi, mi, u).unwrap(), &pc), s);
        w.push(dist(&op.component2(mi, pl, u).unwrap(), &ps), s);
        w.push(op.component2(pl, pl, u).unwrap().distance(&anticommutator3(u1, u, u2).unwrap()), s);
        w.push(op.component2(mi, mi, u).unwrap().distance(&commutator3(u1, u, u2).unwrap()), s);
        w.push(op.component2(mi, pl, u).unwrap().distance(&associator3(u1, u, u2).unwrap()), s);

        let forms: Vec<O> = OpWord::ALL.iter().map(|wd| tabulated(*wd, &r1, &r2, &r)).collect();
        for (wd, f) in OpWord::ALL.iter().zip(&forms) {
            w.push(dist(&op.apply(*wd, u).unwrap(), f), s);
        }
        // the 4×4 table: row then column, symmetric, identity on the diagonal
        for a in generators {
            for b in generators {
                let ab = op.apply_form(ProductForm::of(a).transform_word(b), u).unwrap();
                let ba = op.apply_form(ProductForm::of(b).transform_word(a), u).unwrap();
                w.push(dist(&ab, &forms[a.compose(b).bits() as usize]), s);
                w.push(ab.distance(&ba), s);
            }
            let twice = op.apply_form(ProductForm::of(a).transform_word(a), u).unwrap();
            w.push(dist(&twice, &forms[0]), s);
        }

        for sg in SignTriple::all() {
            let reference = OpWord::ALL
                .iter()
                .zip(&forms)
                .fold([0.0; 8], |acc, (wd, f)| add(&acc, &scale(sg.character(*wd) / 8.0, f)));
            let c = op.component3(sg, u).unwrap();
            w.push(dist(&c, &reference), s);
            for inv in Involution::ALL {
                let moved = op.transformed_component3(sg, OpWord::single(inv), u).unwrap();
                w.push(dist(&moved, &scale(sg.eigenvalue(inv), &reference)), s);
            }
        }
    }
    numeric(&w, VEC_REL, "scale")
}

const REFERENCE_A4: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];

/// Heap's algorithm over all row orders; counts orders that keep the set of
/// columns, and among them those leaving the matrix symmetric.
fn brute_force_counts(m: &[Vec<i8>]) -> (usize, usize) {
    let n = m.len();
    let columns = |rows: &[usize]| {
        let mut cols: Vec<Vec<i8>> = (0..n).map(|c| rows.iter().map(|&r| m[r][c]).collect()).collect();
        cols.sort();
        cols
    };
    let target = columns(&(0..n).collect::<Vec<_>>());
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let (mut total, mut symmetric) = (0, 0);
    let mut visit = |p: &[usize]| {
        if columns(p) == target {
            total += 1;
            if (0..n).all(|i| (0..n).all(|j| m[p[i]][j] == m[p[j]][i])) {
                symmetric += 1;
            }
        }
    };
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    (total, symmetric)
}

fn criterion_7() -> Outcome {
    let a4 = build(4).unwrap();
    let a8 = build(8).unwrap();
    let a4_ok = a4.rows().iter().zip(REFERENCE_A4).all(|(r, p)| r.as_slice() == p);
    let square_ok = (0..8).all(|i| {
        (0..8).all(|j| {
            let s: i32 = (0..8).map(|k| (a8.get(i, k) * a8.get(k, j)) as i32).sum();
            s == if i == j { 8 } else { 0 }
        })
    });
    let perms = doubling_order_permutations(&a8).unwrap();
    let (sym, asym) = classify_symmetry(&perms, &a8).counts();
    let (bf_total, bf_sym) = brute_force_counts(a8.rows());
    let pass = a4_ok
        && square_ok
        && perms.len() == 168
        && (sym, asym) == (28, 140)
        && (bf_total, bf_sym) == (168, 28)
        && is_group(&perms);
    Outcome {
        pass,
        detail: format!(
            "A4 matches={a4_ok}, A8²/8=E8 {square_ok}, perms {} (sym {sym}, asym {asym}), brute force {bf_total}/{bf_sym}",
            perms.len()
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut w = Worst::default();
    let i0 = unit();
    for t in 0..TRIALS {
        let mut rng = TrialRng::for_trial(SEED, 8, t);
        let v = sample(&mut rng, Dim::Octonion, 3);
        let (u1, u, u2) = (raw(&v[0]), raw(&v[1]), raw(&v[2]));
        let s = triple_scale(&v[0], &v[1], &v[2]);
        let [pa, pc, ps] = parts(&u1, &u, &u2);
        let plain = omul(&omul(&u1, &u), &u2);
        let cross = |x: &O, y: &O| scale(0.5, &sub(&omul(x, y), &omul(y, x)));

        let okubo_rebuilt = sub(&scale(2.0 * u[0], &omul(&u1, &u2)), &add(&pa, &add(&pc, &ps)));
        w.push(norm(&sub(&plain, &okubo_rebuilt)), s);

        let bracket = [
            scale(-1.0, &ps),
            scale(u1[0], &cross(&u, &u2)),
            scale(u[0], &cross(&u2, &u1)),
            scale(u2[0], &cross(&u1, &u)),
            scale(-dot(&u2, &cross(&u1, &u)), &i0),
        ]
        .iter()
        .fold([0.0; 8], |acc, x| add(&acc, x));
        let display = [
            bracket,
            scale(2.0 * u[0], &omul(&u1, &u2)),
            scale(-dot(&u, &u2), &u1),
            scale(-dot(&u1, &u), &u2),
            scale(dot(&u1, &u2), &u),
        ]
        .iter()
        .fold([0.0; 8], |acc, x| add(&acc, x));
        w.push(norm(&sub(&plain, &display)), s);

        let ub = oconj(&u);
        let dm = scale(0.5, &sub(&omul(&u1, &omul(&ub, &u2)), &omul(&u2, &omul(&ub, &u1))));
        w.push(norm(&sub(&dm, &sub(&pc, &ps))), s);

        let (a, b, c) = (im(&u1), im(&u), im(&u2));
        let s_im = norm(&a) * norm(&b) * norm(&c);
        let assoc_im = parts(&a, &b, &c)[2];
        let lhs = sub(&add(&cross(&a, &cross(&b, &c)), &scale(dot(&a, &b), &c)), &scale(dot(&a, &c), &b));
        w.push(norm(&sub(&lhs, &assoc_im)), s_im);
    }
    let tol = Tolerance::new(VEC_REL, 0.0).unwrap();
    let library_ok = BridgeIdentity::ALL
        .iter()
        .all(|id| check_identity(*id, Dim::Octonion, SEED, 8, TRIALS as usize, tol).pass);
    let mut o = numeric(&w, VEC_REL, "scale");
    o.pass &= library_ok;
    o.detail.push_str(&format!(", library reports pass={library_ok}"));
    o
}

fn criterion_9() -> Outcome {
    let mut w = Worst::default();
    for dim in [Dim::Quaternion, Dim::Octonion] {
        let i0 = Hyper::one(dim);
        for t in 0..TRIALS {
            let mut rng = TrialRng::for_trial(SEED, 9, t);
            let v = sample(&mut rng, dim, 2);
            let (r1, r2) = (raw(&v[0]), raw(&v[1]));
            let s = v[0].norm() * v[1].norm();
            let p12 = omul(&r1, &r2);
            let p21 = omul(&r2, &r1);
            w.push(dist(&commutator3(&v[0], &i0, &v[1]).unwrap(), &scale(0.5, &sub(&p12, &p21))), s);
            w.push(dist(&cross2(&v[0], &v[1]).unwrap(), &scale(0.5, &sub(&p12, &p21))), s);
            w.push(dist(&anticommutator3(&v[0], &i0, &v[1]).unwrap(), &scale(0.5, &add(&p12, &p21))), s);
        }
    }
    numeric(&w, VEC_REL, "scale")
}

fn criterion_10() -> Outcome {
    let mut w = Worst::default();
    for dim in [Dim::Quaternion, Dim::Octonion] {
        let i0 = Hyper::one(dim);
        for t in 0..TRIALS {
            let mut rng = TrialRng::for_trial(SEED, 10, t);
            let v = sample(&mut rng, dim, 3);
            let (a, b, u) = (v[0], v[1], v[2]);
            let (ra, rb) = (raw(&a), raw(&b));
            let ub = u.conj();
            let sab = a.norm() * b.norm();

            w.push(dist(&(a * b), &omul(&ra, &rb)), sab);

            let sandwich = 2.0 * a.dot(&u) * a - a.norm_sq() * u;
            let s3 = a.norm_sq() * u.norm();
            w.push(((a * ub) * a).distance(&sandwich), s3);
            w.push((a * (ub * a)).distance(&sandwich), s3);
            w.push(((a * ub) * a).distance(&(a * (ub * a))), s3);

            w.push((a * b).conj().distance(&(b.conj() * a.conj())), sab);

            let t1 = (a * b).dot(&i0);
            w.push((t1 - (b * a).dot(&i0)).abs(), sab);
            w.push((t1 - a.dot(&b.conj())).abs(), sab);
        }
    }
    numeric(&w, VEC_REL, "scale")
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("decomposition reconstruction", criterion_1),
        ("mutual orthogonality", criterion_2),
        ("quaternion associativity", criterion_3),
        ("length formulas", criterion_4),
        ("Gram identities", criterion_5),
        ("operator symmetry", criterion_6),
        ("Hadamard permutations", criterion_7),
        ("convention bridge", criterion_8),
        ("unit-argument reductions", criterion_9),
        ("core identities", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {:>2} {:<30} {}  {} [{secs:.2}s]",
            k + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += !o.pass as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
