//! Normalized symmetric Hadamard matrices of order 2, 4, 8 and their row
//! permutation symmetries.
//!
//! Rows and columns are indexed by bit-vectors `g` (bit 0 = α, bit 1 = β,
//! bit 2 = γ), which puts them in doubling order `e, α, β, αβ, γ, αγ, βγ, αβγ`.
//! The entry at `(g, h)` is `(−1)^popcount(g & h)`, so each row is a character
//! of `(Z2)^k` and the rows form a group under termwise multiplication.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Square matrix of `±1` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    entries: Vec<Vec<i8>>,
}

impl SignMatrix {
    pub fn from_rows(entries: Vec<Vec<i8>>) -> Result<SignMatrix> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidSignMatrix("empty".into()));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSignMatrix("not square".into()));
        }
        if entries.iter().flatten().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidSignMatrix("entries must be +1 or -1".into()));
        }
        Ok(SignMatrix { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<i8> {
        self.entries.iter().map(|r| r[col]).collect()
    }

    pub fn transpose(&self) -> SignMatrix {
        let entries = (0..self.n()).map(|c| self.column(c)).collect();
        SignMatrix { entries }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// First row and first column all `+1`.
    pub fn is_normalized(&self) -> bool {
        self.entries[0].iter().all(|&x| x == 1) && self.entries.iter().all(|r| r[0] == 1)
    }

    /// Integer product `self · other`.
    pub fn product(&self, other: &SignMatrix) -> Vec<Vec<i32>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| (self.entries[i][k] * other.entries[k][j]) as i32).sum())
                    .collect()
            })
            .collect()
    }

    /// `M Mᵀ = n I`.
    pub fn is_hadamard(&self) -> bool {
        let n = self.n() as i32;
        self.product(&self.transpose())
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == if i == j { n } else { 0 }))
    }

    /// Copy with one entry negated.
    pub fn flipped(&self, row: usize, col: usize) -> SignMatrix {
        let mut out = self.clone();
        out.entries[row][col] = -out.entries[row][col];
        out
    }

    /// New row `i` is old row `perm.map()[i]`.
    pub fn permute_rows(&self, perm: &RowPermutation) -> SignMatrix {
        assert_eq!(perm.len(), self.n(), "permutation size differs from matrix order");
        let entries = perm.map.iter().map(|&src| self.entries[src].clone()).collect();
        SignMatrix { entries }
    }

    /// Columns as a sorted multiset of sign vectors.
    pub fn column_set(&self) -> Vec<Vec<i8>> {
        let mut cols: Vec<Vec<i8>> = (0..self.n()).map(|c| self.column(c)).collect();
        cols.sort();
        cols
    }

    /// For each column, the index of the row equal to it, if every column has one.
    pub fn column_row_correspondence(&self) -> Option<Vec<usize>> {
        (0..self.n())
            .map(|c| {
                let col = self.column(c);
                self.entries.iter().position(|r| *r == col)
            })
            .collect()
    }

    /// Rows as `+`/`-` strings prefixed with their doubling-order labels.
    pub fn render(&self) -> String {
        let width = (0..self.n()).map(|g| label(g).chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for (g, row) in self.entries.iter().enumerate() {
            let lab = label(g);
            let pad = width - lab.chars().count();
            let cells = row.iter().map(|&x| if x > 0 { "+" } else { "-" }).join(" ");
            out.push_str(&format!("{lab}{} | {cells}\n", " ".repeat(pad)));
        }
        out
    }
}

/// Doubling-order label of index `g`: `e`, `α`, `β`, `αβ`, `γ`, ...
pub fn label(g: usize) -> String {
    if g == 0 {
        return "e".into();
    }
    ['α', 'β', 'γ']
        .iter()
        .enumerate()
        .filter(|(bit, _)| g >> bit & 1 == 1)
        .map(|(_, c)| *c)
        .collect()
}

fn order_bits(n: usize) -> Result<u32> {
    match n {
        2 | 4 | 8 => Ok(n.trailing_zeros()),
        other => Err(Error::InvalidOrder(other)),
    }
}

/// Sylvester matrix of order `n`: entry `(g, h) = (−1)^popcount(g & h)`.
pub fn build(n: usize) -> Result<SignMatrix> {
    order_bits(n)?;
    let entries = (0..n)
        .map(|g| (0..n).map(|h| if (g & h).count_ones() % 2 == 0 { 1 } else { -1 }).collect())
        .collect();
    Ok(SignMatrix { entries })
}

/// Whether the distinct rows form a group under termwise multiplication
/// with the all-ones row as identity.
pub fn row_group_check(m: &SignMatrix) -> bool {
    let rows: HashSet<&Vec<i8>> = m.rows().iter().collect();
    if rows.len() != m.n() || !rows.contains(&vec![1; m.n()]) {
        return false;
    }
    rows.iter().cartesian_product(rows.iter()).all(|(a, b)| {
        let prod: Vec<i8> = a.iter().zip(b.iter()).map(|(x, y)| x * y).collect();
        rows.contains(&prod)
    })
}

/// A permutation of `{0 .. n−1}` acting on matrix rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowPermutation {
    map: Vec<usize>,
}

impl RowPermutation {
    pub fn new(map: Vec<usize>) -> Result<RowPermutation> {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(map));
            }
        }
        Ok(RowPermutation { map })
    }

    pub fn identity(n: usize) -> RowPermutation {
        RowPermutation { map: (0..n).collect() }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Permuting rows by `self` and then by `then` equals permuting by the result.
    pub fn then(&self, then: &RowPermutation) -> RowPermutation {
        RowPermutation { map: then.map.iter().map(|&i| self.map[i]).collect() }
    }

    pub fn inverse(&self) -> RowPermutation {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        RowPermutation { map }
    }

    /// Disjoint cycles of `i ↦ map[i]`, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.map[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for RowPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "({})", c.iter().join(" "))?;
        }
        Ok(())
    }
}

/// All row permutations that leave the multiset of columns unchanged, in
/// lexicographic order. Brute force over `n!` candidates.
pub fn column_set_preserving_permutations(m: &SignMatrix) -> Vec<RowPermutation> {
    let target = m.column_set();
    (0..m.n())
        .permutations(m.n())
        .map(|map| RowPermutation { map })
        .filter(|p| m.permute_rows(p).column_set() == target)
        .collect()
}

/// Row permutations induced by invertible linear maps of the label group
/// `(Z2)^k`, i.e. relabellings that keep the doubling structure
/// (`label(g) · label(h) = label(g ^ h)`). There are 168 for order 8.
pub fn doubling_order_permutations(m: &SignMatrix) -> Result<Vec<RowPermutation>> {
    let bits = order_bits(m.n())?;
    if *m != build(m.n())? {
        return Err(Error::NotSylvester);
    }
    let n = m.n();
    let k = bits as usize;
    // a linear map is fixed by the images of the k basis labels
    let mut perms: Vec<RowPermutation> = (0..k)
        .map(|_| 1..n)
        .multi_cartesian_product()
        .filter_map(|images| {
            let map: Vec<usize> = (0..n)
                .map(|g| (0..k).filter(|b| g >> b & 1 == 1).fold(0, |acc, b| acc ^ images[b]))
                .collect();
            RowPermutation::new(map).ok()
        })
        .collect();
    perms.sort();
    Ok(perms)
}

/// Row permutations split by whether the permuted matrix stays symmetric.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetryClasses {
    pub symmetric: Vec<RowPermutation>,
    pub asymmetric: Vec<RowPermutation>,
}

impl SymmetryClasses {
    /// `(symmetric, asymmetric)` counts.
    pub fn counts(&self) -> (usize, usize) {
        (self.symmetric.len(), self.asymmetric.len())
    }
}

pub fn classify_symmetry(perms: &[RowPermutation], m: &SignMatrix) -> SymmetryClasses {
    let (symmetric, asymmetric) = perms
        .iter()
        .cloned()
        .partition(|p| m.permute_rows(p).is_symmetric());
    SymmetryClasses { symmetric, asymmetric }
}

/// Closed under composition and inverse, and containing the identity.
pub fn is_group(perms: &[RowPermutation]) -> bool {
    let Some(first) = perms.first() else {
        return false;
    };
    let set: HashSet<&RowPermutation> = perms.iter().collect();
    set.contains(&RowPermutation::identity(first.len()))
        && perms.iter().all(|p| set.contains(&p.inverse()))
        && perms.iter().cartesian_product(perms).all(|(a, b)| set.contains(&a.then(b)))
}
