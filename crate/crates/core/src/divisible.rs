//! Invariants for `n = r·d`.
//!
//! With `M = (A B)` the stacked bases, `A` the first `r` blocks, the letters
//! are the generalized double ratios `G_ij = D_ij(A⁻¹B)` for `i = 2..r`,
//! `j = 2..s-r`, where `D` sends a `2×2` arrangement of `d × d` blocks to
//! `A11·A21⁻¹·A22·A12⁻¹`. They transform by simultaneous conjugation, so traces
//! of words in them are invariants.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grassmann::{CaseTag, Config};
use crate::orbit::{self, InvariantVector};
use crate::qlinalg::{inverse, solve, Mat, Rat, Scalar};

/// `a11 · a21⁻¹ · a22 · a12⁻¹`.
pub fn block_double_ratio<T: Scalar>(
    a11: &Mat<T>,
    a12: &Mat<T>,
    a21: &Mat<T>,
    a22: &Mat<T>,
) -> Result<Mat<T>> {
    let left = a11 * &inverse(a21)?;
    Ok(&(&left * a22) * &inverse(a12)?)
}

/// Generalized double ratio of a `2d × 2d` matrix split into `d × d` blocks.
pub fn double_ratio<T: Scalar>(m: &Mat<T>) -> Result<Mat<T>> {
    if !m.is_square() || !m.rows().is_multiple_of(2) {
        return Err(Error::Shape("double ratio needs a 2d × 2d matrix"));
    }
    let d = m.rows() / 2;
    block_double_ratio(
        &m.block(0, 0, d, d),
        &m.block(0, d, d, d),
        &m.block(d, 0, d, d),
        &m.block(d, d, d, d),
    )
}

/// Double ratio of blocks `(0,0), (0,j), (i,0), (i,j)` of `m` (0-based block
/// indices, `i, j ≥ 1`).
pub fn block_ratio<T: Scalar>(m: &Mat<T>, d: usize, i: usize, j: usize) -> Result<Mat<T>> {
    if d == 0 || !m.rows().is_multiple_of(d) || !m.cols().is_multiple_of(d) {
        return Err(Error::Shape("block ratio: shape not a multiple of d"));
    }
    let (rows, cols) = (m.rows() / d, m.cols() / d);
    if i == 0 || i >= rows {
        return Err(Error::IndexOutOfRange { index: i, len: rows });
    }
    if j == 0 || j >= cols {
        return Err(Error::IndexOutOfRange { index: j, len: cols });
    }
    let blk = |bi: usize, bj: usize| m.block(bi * d, bj * d, d, d);
    block_double_ratio(&blk(0, 0), &blk(0, j), &blk(i, 0), &blk(i, j))
}

/// `A⁻¹B` where `A` is the leading `rd × rd` block of `m`.
pub fn phi_left<T: Scalar>(m: &Mat<T>, r: usize, d: usize) -> Result<Mat<T>> {
    let n = r * d;
    if m.rows() != n || m.cols() <= n {
        return Err(Error::Shape("phi_left needs an rd × sd matrix with s > r"));
    }
    solve(&m.columns(0, n), &m.columns(n, m.cols() - n))
}

/// Letter grid `G_ij`, `i = 2..r` (outer), `j = 2..s-r` (inner), from the
/// `n × d` blocks of a configuration. Empty when `s ≤ r + 1`.
pub fn letters<T: Scalar>(blocks: &[Mat<T>], r: usize, d: usize) -> Result<Vec<Mat<T>>> {
    let s = blocks.len();
    if s <= r + 1 {
        return Ok(Vec::new());
    }
    let parts: Vec<&Mat<T>> = blocks.iter().collect();
    let m = Mat::hcat(&parts);
    let phi = phi_left(&m, r, d).map_err(|e| e.at("phi_left", 0))?;
    let mut out = Vec::with_capacity((r - 1) * (s - r - 1));
    for i in 1..r {
        for j in 1..s - r {
            out.push(block_ratio(&phi, d, i, j).map_err(|e| e.at("block_ratio", r + j))?);
        }
    }
    Ok(out)
}

/// Letter identifiers `G_i_j` matching the order of [`letters`].
pub fn letter_ids(r: usize, s: usize) -> Vec<String> {
    if s <= r + 1 {
        return Vec::new();
    }
    (2..=r).flat_map(|i| (2..=s - r).map(move |j| format!("G_{i}_{j}"))).collect()
}

/// The `(r-1) × (s-r-1)` grid of letters of a divisible-case configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDivisible {
    r: usize,
    d: usize,
    s: usize,
    letters: Vec<Mat<Rat>>,
}

impl ReducedDivisible {
    /// `letters` in row-major `(i, j)` order; each must be `d × d`.
    pub fn new(r: usize, d: usize, s: usize, letters: Vec<Mat<Rat>>) -> Result<Self> {
        if r < 2 || d == 0 || s < r + 2 {
            return Err(Error::Shape("reduced divisible data needs r >= 2, d >= 1, s >= r + 2"));
        }
        if letters.len() != (r - 1) * (s - r - 1) {
            return Err(Error::Shape("letter count differs from (r-1)(s-r-1)"));
        }
        if letters.iter().any(|l| l.shape() != (d, d)) {
            return Err(Error::Shape("letters must be d × d"));
        }
        Ok(ReducedDivisible { r, d, s, letters })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn letters(&self) -> &[Mat<Rat>] {
        &self.letters
    }

    /// Letter `G_ij` with `i ∈ 2..=r`, `j ∈ 2..=s-r`.
    pub fn get(&self, i: usize, j: usize) -> Option<&Mat<Rat>> {
        if !(2..=self.r).contains(&i) || !(2..=self.s - self.r).contains(&j) {
            return None;
        }
        self.letters.get((i - 2) * (self.s - self.r - 1) + (j - 2))
    }
}

fn expect_divisible(c: &Config) -> Result<usize> {
    match c.case() {
        CaseTag::Divisible { r } => Ok(r),
        _ => Err(Error::UnsupportedCase { n: c.n(), d: c.d() }),
    }
}

pub fn matrix_data(c: &Config) -> Result<ReducedDivisible> {
    let r = expect_divisible(c)?;
    if c.s() <= r + 1 {
        return Err(Error::Shape("matrix data needs s > r + 1"));
    }
    let grid = letters(&c.bases(), r, c.d())?;
    ReducedDivisible::new(r, c.d(), c.s(), grid)
}

/// The normal-form configuration realizing the letter grid: `E_1..E_r` the
/// coordinate blocks, `E_{r+1}` the all-identity column, and block `r+j`
/// carrying `(E; G_2j; …; G_rj)`.
pub fn embed(data: &ReducedDivisible) -> Result<Config> {
    let (r, d, s) = (data.r, data.d, data.s);
    if data.letters.iter().any(|l| inverse(l).is_err()) {
        return Err(Error::Singular);
    }
    let n = r * d;
    let eye = Mat::<Rat>::identity(d);
    let mut bases = Vec::with_capacity(s);
    for i in 0..r {
        let mut b = Mat::zeros(n, d);
        b.set_block(i * d, 0, &eye);
        bases.push(b);
    }
    let mut all_e = Mat::zeros(n, d);
    for i in 0..r {
        all_e.set_block(i * d, 0, &eye);
    }
    bases.push(all_e);
    for j in 2..=s - r {
        let mut b = Mat::zeros(n, d);
        b.set_block(0, 0, &eye);
        for i in 2..=r {
            let letter = data.get(i, j).expect("grid index in range");
            b.set_block((i - 1) * d, 0, letter);
        }
        bases.push(b);
    }
    Config::from_bases(n, d, bases)
}

pub fn invariants(c: &Config, max_len: usize) -> Result<InvariantVector> {
    let r = expect_divisible(c)?;
    let grid = letters(&c.bases(), r, c.d())?;
    orbit::evaluate(c.case(), letter_ids(r, c.s()), &grid, c.d(), max_len)
}
