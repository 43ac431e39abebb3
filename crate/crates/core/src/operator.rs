//! Symmetric / skew-symmetric decomposition of `A u = (u1 ū) u2`.
//!
//! Three commuting involutions act on operators of this family:
//!
//! * `+` Hermitian conjugation, `(A u, v) = (u, A⁺ v)`;
//! * `*` order inversion: conjugate `u`, `u1` and `u2`, evaluate, conjugate the result;
//! * `∨` double conjugation, `A∨ u = conj(A ū)`.
//!
//! Every operator reachable from `A` has the shape `(a ū) b` or `a (ū b)` with
//! `a, b ∈ {u1, u2, ū1, ū2}`, so the operations are tracked symbolically on
//! [`ProductForm`] and evaluated pointwise. Averaging the eight transformed
//! operators with sign characters gives components that are eigenvectors of
//! each involution.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hyper::{check_dims, check_dims3, Dim, Hyper};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    /// `+`
    Adjoint,
    /// `*`
    Reverse,
    /// `∨`
    DoubleConjugate,
}

impl Involution {
    pub const ALL: [Involution; 3] = [Involution::Adjoint, Involution::Reverse, Involution::DoubleConjugate];

    fn bit(self) -> u8 {
        match self {
            Involution::Adjoint => 1,
            Involution::Reverse => 2,
            Involution::DoubleConjugate => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Involution::Adjoint => "+",
            Involution::Reverse => "*",
            Involution::DoubleConjugate => "∨",
        }
    }
}

/// A composition of the involutions; the group is `(Z2)³` so a word is a subset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpWord {
    pub plus: bool,
    pub star: bool,
    pub vee: bool,
}

impl OpWord {
    pub const IDENTITY: OpWord = OpWord { plus: false, star: false, vee: false };

    /// All eight words in the order e, +, *, +*, ∨, +∨, *∨, +*∨.
    pub const ALL: [OpWord; 8] = {
        let mut out = [OpWord::IDENTITY; 8];
        let mut k = 0;
        while k < 8 {
            out[k] = OpWord::from_bits(k as u8);
            k += 1;
        }
        out
    };

    pub const fn from_bits(bits: u8) -> OpWord {
        OpWord { plus: bits & 1 != 0, star: bits & 2 != 0, vee: bits & 4 != 0 }
    }

    pub fn bits(self) -> u8 {
        self.plus as u8 | (self.star as u8) << 1 | (self.vee as u8) << 2
    }

    pub fn single(inv: Involution) -> OpWord {
        OpWord::from_bits(inv.bit())
    }

    pub fn contains(self, inv: Involution) -> bool {
        self.bits() & inv.bit() != 0
    }

    /// Group product; every element is its own inverse.
    pub fn compose(self, other: OpWord) -> OpWord {
        OpWord::from_bits(self.bits() ^ other.bits())
    }

    /// Generators in the fixed order `+`, `*`, `∨`.
    pub fn involutions(self) -> impl Iterator<Item = Involution> {
        Involution::ALL.into_iter().filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == OpWord::IDENTITY {
            return write!(f, "e");
        }
        for inv in self.involutions() {
            write!(f, "{}", inv.symbol())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    First,
    Second,
}

/// One of `u1`, `u2`, `ū1`, `ū2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Param {
    pub arg: Arg,
    pub conj: bool,
}

impl Param {
    const U1: Param = Param { arg: Arg::First, conj: false };
    const U2: Param = Param { arg: Arg::Second, conj: false };

    fn conjugated(self) -> Param {
        Param { conj: !self.conj, ..self }
    }

    fn value(self, u1: &Hyper, u2: &Hyper) -> Hyper {
        let v = match self.arg {
            Arg::First => *u1,
            Arg::Second => *u2,
        };
        if self.conj {
            v.conj()
        } else {
            v
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = match self.arg {
            Arg::First => '₁',
            Arg::Second => '₂',
        };
        if self.conj {
            write!(f, "ū{sub}")
        } else {
            write!(f, "u{sub}")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bracket {
    /// `(a ū) b`
    Left,
    /// `a (ū b)`
    Right,
}

/// Closed form `u ↦ (a ū) b` or `u ↦ a (ū b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductForm {
    pub bracket: Bracket,
    pub a: Param,
    pub b: Param,
}

impl ProductForm {
    /// `A u = (u1 ū) u2`.
    pub const BASE: ProductForm = ProductForm { bracket: Bracket::Left, a: Param::U1, b: Param::U2 };

    /// The closed form of `A` transformed by `word`.
    pub fn of(word: OpWord) -> ProductForm {
        ProductForm::BASE.transform_word(word)
    }

    /// Applies one involution to the operator this form denotes.
    ///
    /// * `+`: `((a ū) b, v) = (u, (b v̄) a)` and `(a (ū b), v) = (u, b (v̄ a))`,
    ///   so the outer factors swap.
    /// * `*`: `conj((ā u) b̄) = b (ū a)`, so the factors swap and the bracket flips.
    /// * `∨`: `conj((a u) b) = b̄ (ū ā)`, so the factors swap, conjugate, and the bracket flips.
    pub fn transform(self, inv: Involution) -> ProductForm {
        let flipped = match self.bracket {
            Bracket::Left => Bracket::Right,
            Bracket::Right => Bracket::Left,
        };
        match inv {
            Involution::Adjoint => ProductForm { bracket: self.bracket, a: self.b, b: self.a },
            Involution::Reverse => ProductForm { bracket: flipped, a: self.b, b: self.a },
            Involution::DoubleConjugate => ProductForm {
                bracket: flipped,
                a: self.b.conjugated(),
                b: self.a.conjugated(),
            },
        }
    }

    pub fn transform_word(self, word: OpWord) -> ProductForm {
        word.involutions().fold(self, |form, inv| form.transform(inv))
    }

    /// Evaluates the form at `u` with parameters `u1`, `u2` (dimensions unchecked).
    pub fn eval(&self, u1: &Hyper, u2: &Hyper, u: &Hyper) -> Hyper {
        let a = self.a.value(u1, u2);
        let b = self.b.value(u1, u2);
        let ub = u.conj();
        match self.bracket {
            Bracket::Left => (a * ub) * b,
            Bracket::Right => a * (ub * b),
        }
    }
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bracket {
            Bracket::Left => write!(f, "({}ū){}", self.a, self.b),
            Bracket::Right => write!(f, "{}(ū{})", self.a, self.b),
        }
    }
}

/// `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn bit(self) -> u8 {
        (self == Sign::Minus) as u8
    }

    fn from_bit(bit: u8) -> Sign {
        if bit & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Eigenvalue pattern `(ε₊, ε*, ε∨)` of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignTriple {
    pub plus: Sign,
    pub star: Sign,
    pub vee: Sign,
}

impl SignTriple {
    /// Ordered (+++), (−++), (+−+), (−−+), (++−), (−+−), (+−−), (−−−).
    pub fn all() -> [SignTriple; 8] {
        std::array::from_fn(|k| SignTriple::from_bits(k as u8))
    }

    pub fn new(plus: Sign, star: Sign, vee: Sign) -> SignTriple {
        SignTriple { plus, star, vee }
    }

    /// Bit `k` set means the `k`-th sign is `−1`.
    pub fn from_bits(bits: u8) -> SignTriple {
        SignTriple {
            plus: Sign::from_bit(bits),
            star: Sign::from_bit(bits >> 1),
            vee: Sign::from_bit(bits >> 2),
        }
    }

    pub fn bits(self) -> u8 {
        self.plus.bit() | self.star.bit() << 1 | self.vee.bit() << 2
    }

    /// Eigenvalue under `inv`.
    pub fn eigenvalue(self, inv: Involution) -> f64 {
        match inv {
            Involution::Adjoint => self.plus.value(),
            Involution::Reverse => self.star.value(),
            Involution::DoubleConjugate => self.vee.value(),
        }
    }

    /// `ε₊^a ε*^b ε∨^c` for the word `(a, b, c)`.
    pub fn character(self, word: OpWord) -> f64 {
        word.involutions().map(|inv| self.eigenvalue(inv)).product()
    }
}

impl fmt::Display for SignTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.plus, self.star, self.vee)
    }
}

/// Coefficients of `A, A⁺, A*, A⁺*` in the `(ε₊, ε*)` component (before the 1/4).
pub fn coefficients2(eps_plus: Sign, eps_star: Sign) -> [f64; 4] {
    let s = SignTriple::new(eps_plus, eps_star, Sign::Plus);
    std::array::from_fn(|k| s.character(OpWord::ALL[k]))
}

/// Coefficients of the eight transformed operators in a three-sign component (before the 1/8).
pub fn coefficients3(signs: SignTriple) -> [f64; 8] {
    std::array::from_fn(|k| signs.character(OpWord::ALL[k]))
}

/// The operator `A u = (u1 ū) u2` with fixed parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripleOperator {
    u1: Hyper,
    u2: Hyper,
}

impl TripleOperator {
    pub fn new(u1: Hyper, u2: Hyper) -> Result<TripleOperator> {
        check_dims(&u1, &u2)?;
        Ok(TripleOperator { u1, u2 })
    }

    pub fn u1(&self) -> &Hyper {
        &self.u1
    }

    pub fn u2(&self) -> &Hyper {
        &self.u2
    }

    pub fn dim(&self) -> Dim {
        self.u1.dim()
    }

    fn check(&self, u: &Hyper) -> Result<()> {
        check_dims(&self.u1, u).map(|_| ())
    }

    /// Evaluates `A` transformed by `word` at `u`.
    pub fn apply(&self, word: OpWord, u: &Hyper) -> Result<Hyper> {
        self.apply_form(ProductForm::of(word), u)
    }

    pub fn apply_form(&self, form: ProductForm, u: &Hyper) -> Result<Hyper> {
        self.check(u)?;
        Ok(form.eval(&self.u1, &self.u2, u))
    }

    /// `|(A u, v) − (u, A⁺ v)|`.
    pub fn adjoint_residual(&self, u: &Hyper, v: &Hyper) -> Result<f64> {
        check_dims3(&self.u1, u, v)?;
        let plus = OpWord::single(Involution::Adjoint);
        let lhs = self.apply(OpWord::IDENTITY, u)?.dot(v);
        let rhs = u.dot(&self.apply(plus, v)?);
        Ok((lhs - rhs).abs())
    }

    /// `(ε₊, ε*)` component: `(A + ε₊A⁺ + ε*A* + ε₊ε*A⁺*) u / 4`.
    pub fn component2(&self, eps_plus: Sign, eps_star: Sign, u: &Hyper) -> Result<Hyper> {
        self.check(u)?;
        let coeffs = coefficients2(eps_plus, eps_star);
        Ok(self.average(&OpWord::ALL[..4], &coeffs, OpWord::IDENTITY, u))
    }

    /// Three-sign component: `Σ_w χ(w) A^w u / 8`.
    pub fn component3(&self, signs: SignTriple, u: &Hyper) -> Result<Hyper> {
        self.transformed_component3(signs, OpWord::IDENTITY, u)
    }

    /// The three-sign component with `word` applied to the operator; equals
    /// `signs.character(word) · component3(signs)` when the group law holds.
    pub fn transformed_component3(&self, signs: SignTriple, word: OpWord, u: &Hyper) -> Result<Hyper> {
        self.check(u)?;
        Ok(self.average(&OpWord::ALL, &coefficients3(signs), word, u))
    }

    fn average(&self, words: &[OpWord], coeffs: &[f64], post: OpWord, u: &Hyper) -> Hyper {
        let sum = words.iter().zip(coeffs).fold(Hyper::zero(self.dim()), |acc, (w, c)| {
            acc + *c * ProductForm::of(*w).transform_word(post).eval(&self.u1, &self.u2, u)
        });
        sum / words.len() as f64
    }

    /// Dense matrix of `A^word`, column `k` being the image of `i_k`.
    pub fn matrix(&self, word: OpWord) -> OperatorMatrix {
        OperatorMatrix::from_map(self.dim(), |u| ProductForm::of(word).eval(&self.u1, &self.u2, u))
    }

    pub fn component3_matrix(&self, signs: SignTriple) -> OperatorMatrix {
        OperatorMatrix::from_map(self.dim(), |u| {
            self.average(&OpWord::ALL, &coefficients3(signs), OpWord::IDENTITY, u)
        })
    }
}

/// Real `dim × dim` matrix of a linear map on hypercomplex numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: Dim,
    entries: [[f64; 8]; 8],
}

impl OperatorMatrix {
    pub fn from_map(dim: Dim, f: impl Fn(&Hyper) -> Hyper) -> OperatorMatrix {
        let mut entries = [[0.0; 8]; 8];
        for k in 0..dim.get() {
            let image = f(&Hyper::basis(dim, k).expect("index below dim"));
            for (row, c) in image.coeffs().iter().enumerate() {
                entries[row][k] = *c;
            }
        }
        OperatorMatrix { dim, entries }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    pub fn transpose(&self) -> OperatorMatrix {
        let mut entries = [[0.0; 8]; 8];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                entries[c][r] = *x;
            }
        }
        OperatorMatrix { dim: self.dim, entries }
    }

    pub fn scaled(&self, k: f64) -> OperatorMatrix {
        let mut out = self.clone();
        out.entries.iter_mut().flatten().for_each(|x| *x *= k);
        out
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
