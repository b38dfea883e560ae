//! Invariants for `n = (2r+1)e`, `d = 2e`.
//!
//! Every block is first normalized to `(E'; C_i)` with `E'` the `2e × 2e`
//! identity. A frame adapted to the first subspaces then splits the rest into
//! `e × e` pieces whose ratios are the letters.
//!
//! For `r = 1` the letters are `σ_{2i-1}, σ_{2i}` for `i = 5..s`. For `r ≥ 2`
//! they are the `2r - 4` letters `Z` followed, for each `i = r+3..s`, by the
//! `4r - 2` letters `Θ_i`. All letters act on the same `e`-dimensional space
//! and transform by simultaneous conjugation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::divisible::block_double_ratio;
use crate::error::{Error, Result};
use crate::grassmann::{CaseTag, Config};
use crate::orbit::{self, InvariantVector};
use crate::qlinalg::{inverse, nullspace_basis, solve, Mat, Rat, Scalar};

/// Blocks rewritten as `(E'; C_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedColumns<T> {
    e: usize,
    lower: Vec<Mat<T>>,
}

impl<T: Scalar> NormalizedColumns<T> {
    pub fn e(&self) -> usize {
        self.e
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    /// `C_i`, of size `(n - 2e) × 2e`.
    pub fn lower(&self, i: usize) -> &Mat<T> {
        &self.lower[i]
    }

    /// The full normalized block `(E'; C_i)`.
    pub fn block(&self, i: usize) -> Mat<T> {
        Mat::vcat(&[&Mat::identity(2 * self.e), &self.lower[i]])
    }
}

pub fn column_normalize<T: Scalar>(blocks: &[Mat<T>], e: usize) -> Result<NormalizedColumns<T>> {
    let d = 2 * e;
    let mut lower = Vec::with_capacity(blocks.len());
    for (i, b) in blocks.iter().enumerate() {
        if b.cols() != d || b.rows() <= d {
            return Err(Error::Shape("odd case blocks must be n × 2e with n > 2e"));
        }
        let top = b.row_range(0, d);
        let bottom = b.row_range(d, b.rows() - d);
        let top_inv = inverse(&top).map_err(|err| err.at("column_normalize", i))?;
        lower.push(&bottom * &top_inv);
    }
    Ok(NormalizedColumns { e, lower })
}

/// Frame for `n = 3e` built from the first three blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame3e<T> {
    /// `(x_i; y_i)` for `i = 1, 2, 3`, each `2e × e`.
    pub coords: [Mat<T>; 3],
    pub h: Mat<T>,
}

pub fn frame_3e<T: Scalar>(nc: &NormalizedColumns<T>) -> Result<Frame3e<T>> {
    let e = nc.e;
    if nc.len() < 3 || nc.lower(0).rows() != e {
        return Err(Error::Shape("frame_3e needs n = 3e and s >= 3"));
    }
    let eye = Mat::<T>::identity(e);
    let rhs = Mat::vcat(&[&eye, &eye]);
    let solve_pair = |a: usize, b: usize, block: usize| {
        let p = Mat::vcat(&[nc.lower(a), nc.lower(b)]);
        solve(&p, &rhs).map_err(|err| err.at("frame_3e", block))
    };
    let coords = [solve_pair(0, 1, 0)?, solve_pair(2, 0, 1)?, solve_pair(1, 2, 2)?];
    let cols: Vec<Mat<T>> = coords.iter().map(|xy| Mat::vcat(&[xy, &eye])).collect();
    let refs: Vec<&Mat<T>> = cols.iter().collect();
    let h = Mat::hcat(&refs);
    inverse(&h).map_err(|err| err.at("frame_3e", 3))?;
    Ok(Frame3e { coords, h })
}

/// The letters `σ_9, σ_10, …, σ_{2s}` for `n = 3e`.
pub fn sigma_data<T: Scalar>(nc: &NormalizedColumns<T>, frame: &Frame3e<T>) -> Result<Vec<Mat<T>>> {
    let e = nc.e;
    let s = nc.len();
    if s < 4 {
        return Ok(Vec::new());
    }
    let mut alphas = Vec::with_capacity(s - 3);
    for j in 3..s {
        let m = solve(&frame.h, &nc.block(j)).map_err(|err| err.at("sigma_data", j))?;
        let top = m.row_range(0, 2 * e);
        let bottom = m.row_range(2 * e, e);
        let alpha = &bottom * &inverse(&top).map_err(|err| err.at("sigma_data", j))?;
        let odd = alpha.columns(0, e);
        let even = alpha.columns(e, e);
        inverse(&odd).map_err(|err| err.at("sigma_data", j))?;
        inverse(&even).map_err(|err| err.at("sigma_data", j))?;
        alphas.push((odd, even));
    }
    let odd_ref = inverse(&alphas[0].0)?;
    let even_ref = inverse(&alphas[0].1)?;
    let mut out = Vec::with_capacity(2 * (s - 4));
    for (odd, even) in &alphas[1..] {
        out.push(odd * &odd_ref);
        out.push(even * &even_ref);
    }
    Ok(out)
}

/// For a relation `Σ_m (E'; C_m) u_m = (E'; C_target) w` with `u_m, w ∈ k^{2e}`,
/// returns `u_m` for every member as a `2e × e` basis of the solution space.
/// The space must be `e`-dimensional.
pub fn nullspace_component<T: Scalar>(
    nc: &NormalizedColumns<T>,
    members: &[usize],
    target: usize,
) -> Result<Vec<Mat<T>>> {
    let e = nc.e;
    for &i in members.iter().chain(core::iter::once(&target)) {
        if i >= nc.len() {
            return Err(Error::IndexOutOfRange { index: i, len: nc.len() });
        }
    }
    // (E'; C_m) u_m summed equals (E'; C_t) w forces w = Σ u_m, leaving
    // Σ (C_m - C_t) u_m = 0.
    let diffs: Vec<Mat<T>> = members.iter().map(|&m| nc.lower(m).sub(nc.lower(target))).collect();
    let refs: Vec<&Mat<T>> = diffs.iter().collect();
    let kernel = nullspace_basis(&Mat::hcat(&refs));
    if kernel.cols() != e {
        return Err(Error::WrongKernelDimension { expected: e, found: kernel.cols() });
    }
    Ok((0..members.len()).map(|k| kernel.row_range(2 * e * k, 2 * e)).collect())
}

/// Frame for `r ≥ 2`: `2r + 1` column blocks of width `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameOdd<T> {
    pub x: Vec<Mat<T>>,
    pub y: Vec<Mat<T>>,
    pub z: Mat<T>,
    pub h: Mat<T>,
}

pub fn frame_odd<T: Scalar>(nc: &NormalizedColumns<T>, r: usize) -> Result<FrameOdd<T>> {
    if r < 2 || nc.len() < r + 2 {
        return Err(Error::Shape("frame_odd needs r >= 2 and s >= r + 2"));
    }
    let base: Vec<usize> = (0..r).collect();
    let x = nullspace_component(nc, &base, r)?;
    let y = nullspace_component(nc, &base, r + 1)?;
    let mut z_members: Vec<usize> = (0..r - 1).collect();
    z_members.push(r);
    let z = nullspace_component(nc, &z_members, r + 1)?.pop().expect("member list is nonempty");
    let mut cols = Vec::with_capacity(2 * r + 1);
    for i in 0..r {
        let b = nc.block(i);
        cols.push(&b * &x[i]);
        cols.push(&b * &y[i]);
    }
    cols.push(&nc.block(r) * &z);
    let refs: Vec<&Mat<T>> = cols.iter().collect();
    let h = Mat::hcat(&refs);
    inverse(&h).map_err(|err| err.at("frame_odd", r + 1))?;
    Ok(FrameOdd { x, y, z, h })
}

/// Frame coordinates of the remaining subspaces, split into `2r + 1` blocks of
/// size `e × e`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedOdd<T> {
    r: usize,
    e: usize,
    /// `E_{r+1}` restricted to the first `2r` frame blocks.
    pub a: Vec<Mat<T>>,
    /// `E_j ∩ (E_1 ⊕ … ⊕ E_r)` for `j = r+2..s`.
    pub b: Vec<Vec<Mat<T>>>,
    /// `E_j ∩ (E_1 ⊕ … ⊕ E_{r-1} ⊕ E_{r+1})` for `j = r+2..s`.
    pub c: Vec<Vec<Mat<T>>>,
}

impl<T> ReducedOdd<T> {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn e(&self) -> usize {
        self.e
    }
}

fn split_rows<T: Scalar>(m: &Mat<T>, e: usize) -> Vec<Mat<T>> {
    (0..m.rows() / e).map(|k| m.row_range(k * e, e)).collect()
}

/// Columns of `m` whose block row `row` vanishes.
fn restrict<T: Scalar>(m: &Mat<T>, e: usize, row: usize) -> Result<Vec<Mat<T>>> {
    let kernel = nullspace_basis(&m.row_range(row * e, e));
    if kernel.cols() != e {
        return Err(Error::WrongKernelDimension { expected: e, found: kernel.cols() });
    }
    Ok(split_rows(&(m * &kernel), e))
}

fn require_zero<T: Scalar>(blocks: &[Mat<T>], rows: &[usize], label: &'static str) -> Result<()> {
    match rows.iter().find(|&&k| !blocks[k].is_zero()) {
        Some(&k) => Err(Error::ZeroPatternViolation { block: label, row: k + 1 }),
        None => Ok(()),
    }
}

pub fn reduce_odd<T: Scalar>(nc: &NormalizedColumns<T>, frame: &FrameOdd<T>, r: usize) -> Result<ReducedOdd<T>> {
    let e = nc.e;
    let s = nc.len();
    let coords = |j: usize| solve(&frame.h, &nc.block(j)).map_err(|err| err.at("reduce_odd", j));
    for i in 0..r {
        let m = coords(i)?;
        let rows = split_rows(&m, e);
        let off: Vec<usize> = (0..=2 * r).filter(|&k| k != 2 * i && k != 2 * i + 1).collect();
        require_zero(&rows, &off, "frame")?;
    }
    let a = restrict(&coords(r)?, e, 2 * r)?;
    let evens: Vec<usize> = (0..r).map(|k| 2 * k + 1).collect();
    require_zero(&a, &evens, "a")?;
    let mut b = Vec::with_capacity(s.saturating_sub(r + 1));
    let mut c = Vec::with_capacity(s.saturating_sub(r + 1));
    for j in r + 1..s {
        let m = coords(j)?;
        b.push(restrict(&m, e, 2 * r)?);
        c.push(restrict(&m, e, 2 * r - 1)?);
    }
    let odds: Vec<usize> = (0..=r).map(|k| 2 * k).collect();
    require_zero(&b[0], &odds, "b")?;
    require_zero(&c[0], &[2 * r - 2], "c")?;
    Ok(ReducedOdd { r, e, a, b, c })
}

/// Letters for `r ≥ 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct LetterSetOdd<T> {
    pub zed: Vec<Mat<T>>,
    /// `Θ_i` for `i = r+3..s`, each with `4r - 2` letters.
    pub thetas: Vec<Vec<Mat<T>>>,
}

impl<T: Clone> LetterSetOdd<T> {
    pub fn flatten(&self) -> Vec<Mat<T>> {
        self.zed.iter().chain(self.thetas.iter().flatten()).cloned().collect()
    }
}

pub fn letters_odd<T: Scalar>(red: &ReducedOdd<T>) -> Result<LetterSetOdd<T>> {
    let r = red.r;
    let dr = |a11: &Mat<T>, a12: &Mat<T>, a21: &Mat<T>, a22: &Mat<T>, block: usize| {
        block_double_ratio(a11, a12, a21, a22).map_err(|err| err.at("letters_odd", block))
    };
    let (a, b0, c0) = (&red.a, &red.b[0], &red.c[0]);
    let alpha_inv = c0[0].matmul(&inverse(&c0[1]).map_err(|err| err.at("letters_odd", r + 1))?);
    let mut zed = Vec::with_capacity(2 * r.saturating_sub(2));
    for k in 2..r {
        zed.push(dr(&a[0], &c0[0], &a[2 * k - 2], &c0[2 * k - 2], r + 1)?);
        zed.push(&alpha_inv * &dr(&b0[1], &c0[0], &b0[2 * k - 1], &c0[2 * k - 1], r + 1)?);
    }
    let mut thetas = Vec::with_capacity(red.b.len().saturating_sub(1));
    for (idx, (bb, cc)) in red.b.iter().zip(&red.c).enumerate().skip(1) {
        let block = r + 1 + idx;
        let ratio = |m: &[Mat<T>]| -> Result<Mat<T>> {
            let inv = inverse(&m[0]).map_err(|err| err.at("letters_odd", block))?;
            Ok(&alpha_inv * &(&m[1] * &inv))
        };
        let mut theta = Vec::with_capacity(4 * r - 2);
        theta.push(ratio(bb)?);
        theta.push(ratio(cc)?);
        for k in 2..=r {
            theta.push(dr(&a[0], &bb[0], &a[2 * k - 2], &bb[2 * k - 2], block)?);
            theta.push(&alpha_inv * &dr(&b0[1], &bb[0], &b0[2 * k - 1], &bb[2 * k - 1], block)?);
            theta.push(dr(&a[0], &cc[0], &a[2 * k - 2], &cc[2 * k - 2], block)?);
            if k < r {
                theta.push(&alpha_inv * &dr(&b0[1], &cc[0], &b0[2 * k - 1], &cc[2 * k - 1], block)?);
            } else {
                theta.push(dr(&c0[0], &cc[0], &c0[2 * r], &cc[2 * r], block)?);
            }
        }
        thetas.push(theta);
    }
    Ok(LetterSetOdd { zed, thetas })
}

/// Number of letters for `(r, s)`; zero in the trivial range.
pub fn letter_count(r: usize, s: usize) -> usize {
    if r == 1 {
        2 * s.saturating_sub(4)
    } else if s < r + 2 {
        0
    } else {
        2 * (r - 2) + (4 * r - 2) * (s - r - 2)
    }
}

pub fn letter_ids(r: usize, s: usize) -> Vec<String> {
    if r == 1 {
        return (9..=2 * s).map(|j| format!("sigma_{j}")).collect();
    }
    if s < r + 2 {
        return Vec::new();
    }
    let zed = (1..=2 * (r - 2)).map(|k| format!("Z_{k}"));
    let thetas = (r + 3..=s).flat_map(move |i| (1..=4 * r - 2).map(move |m| format!("Theta_{i}_{m}")));
    zed.chain(thetas).collect()
}

/// Full letter pipeline from raw `n × 2e` blocks. Empty in the trivial range.
pub fn letters<T: Scalar>(blocks: &[Mat<T>], r: usize, e: usize) -> Result<Vec<Mat<T>>> {
    if letter_count(r, blocks.len()) == 0 {
        return Ok(Vec::new());
    }
    let nc = column_normalize(blocks, e)?;
    if r == 1 {
        let frame = frame_3e(&nc)?;
        return sigma_data(&nc, &frame);
    }
    let frame = frame_odd(&nc, r)?;
    let red = reduce_odd(&nc, &frame, r)?;
    Ok(letters_odd(&red)?.flatten())
}

/// Runs every pipeline stage that applies to `s = bases.len()`.
pub fn check_pipeline(bases: &[Mat<Rat>], r: usize, e: usize) -> Result<()> {
    let nc = column_normalize(bases, e)?;
    let s = nc.len();
    if r == 1 {
        if s >= 3 {
            let frame = frame_3e(&nc)?;
            sigma_data(&nc, &frame)?;
        }
    } else if s >= r + 2 {
        let frame = frame_odd(&nc, r)?;
        let red = reduce_odd(&nc, &frame, r)?;
        letters_odd(&red)?;
    }
    Ok(())
}

fn expect_odd(c: &Config) -> Result<(usize, usize)> {
    match c.case() {
        CaseTag::OddMultiple { r, e } => Ok((r, e)),
        _ => Err(Error::UnsupportedCase { n: c.n(), d: c.d() }),
    }
}

pub fn invariants(c: &Config, max_len: usize) -> Result<InvariantVector> {
    let (r, e) = expect_odd(c)?;
    let set = letters(&c.bases(), r, e)?;
    orbit::evaluate(c.case(), letter_ids(r, c.s()), &set, e, max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{intersect, sample_config, Subspace};

    fn normalized(c: &Config, e: usize) -> NormalizedColumns<Rat> {
        column_normalize(&c.bases(), e).unwrap()
    }

    #[test]
    fn normalization_keeps_spans() {
        let c = sample_config(3, 2, 5, 3, 10).unwrap();
        let nc = normalized(&c, 1);
        for (i, v) in c.subspaces().iter().enumerate() {
            assert!(Subspace::new(nc.block(i)).unwrap().same_span(v));
        }
    }

    #[test]
    fn frame_3e_solves_pair_equations() {
        let c = sample_config(3, 2, 5, 8, 10).unwrap();
        let nc = normalized(&c, 1);
        let f = frame_3e(&nc).unwrap();
        for (k, (p, q)) in [(0, 1), (2, 0), (1, 2)].into_iter().enumerate() {
            let xy = &f.coords[k];
            assert!((nc.lower(p) * xy).is_identity());
            assert!((nc.lower(q) * xy).is_identity());
            assert_eq!(f.h.columns(k, 1), Mat::vcat(&[xy, &Mat::identity(1)]));
        }
        assert_eq!(sigma_data(&nc, &f).unwrap().len(), 2);
    }

    #[test]
    fn kernel_components_match_intersection() {
        for seed in 0..10 {
            let c = sample_config(5, 2, 4, seed, 10).unwrap();
            let nc = normalized(&c, 1);
            let x = nullspace_component(&nc, &[0, 1], 2).unwrap();
            let w = (&nc.block(0) * &x[0]).add(&(&nc.block(1) * &x[1]));
            let sum = Subspace::sum(5, &[&c.subspaces()[0], &c.subspaces()[1]]);
            let meet = intersect(&sum, &c.subspaces()[2]).unwrap();
            assert_eq!(meet.dim(), 1);
            assert!(Subspace::new(w).unwrap().same_span(&meet));
        }
    }

    #[test]
    fn letter_counts() {
        assert_eq!(letter_count(1, 4), 0);
        assert_eq!(letter_count(1, 6), 4);
        assert_eq!(letter_count(2, 4), 0);
        assert_eq!(letter_count(2, 5), 6);
        assert_eq!(letter_count(3, 5), 2);
        assert_eq!(letter_count(3, 6), 12);
        for (r, s) in [(1, 6), (2, 6), (3, 7)] {
            assert_eq!(letter_ids(r, s).len(), letter_count(r, s));
        }
        assert_eq!(letter_ids(1, 5), ["sigma_9", "sigma_10"]);
        assert_eq!(letter_ids(2, 5)[0], "Theta_5_1");
        assert_eq!(letter_ids(3, 6)[..3], ["Z_1", "Z_2", "Theta_6_1"]);
    }

    #[test]
    fn pipelines_run_on_samples() {
        for (n, s) in [(3, 5), (3, 6), (5, 5), (5, 6), (7, 5), (7, 6)] {
            let c = sample_config(n, 2, s, 1, 10).unwrap();
            let (r, e) = expect_odd(&c).unwrap();
            let set = letters(&c.bases(), r, e).unwrap();
            assert_eq!(set.len(), letter_count(r, s));
            assert!(set.iter().all(|l| l.shape() == (1, 1)));
        }
    }

    #[test]
    fn duplicated_block_gives_identity_sigma() {
        let base = sample_config(3, 2, 5, 4, 10).unwrap();
        let mut bases = base.bases();
        bases.push(bases[3].clone());
        let set = letters(&bases, 1, 1).unwrap();
        assert!(set[2].is_identity() && set[3].is_identity());
    }

    #[test]
    fn rejects_dependent_frame() {
        let base = sample_config(5, 2, 5, 2, 10).unwrap();
        let mut bases = base.bases();
        bases[1] = bases[0].clone();
        assert!(check_pipeline(&bases, 2, 1).is_err());
    }
}
