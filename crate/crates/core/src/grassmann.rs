//! Subspace configurations: canonical forms, intersections, case
//! classification, general-position predicates, seeded sampling and the two
//! group actions (left `GL_n`, right block-wise `GL_d`).

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::odd;

use crate::qlinalg::{inverse, nullspace_basis, rank, rref, Mat, Rat};

/// Resampling budget of [`sample_config`].
pub const SAMPLE_ATTEMPTS: usize = 100;

/// A linear subspace given by a full-column-rank basis matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Mat<Rat>,
}

impl Subspace {
    pub fn new(basis: Mat<Rat>) -> Result<Self> {
        let r = rank(&basis);
        if r != basis.cols() {
            return Err(Error::RankDeficient { rank: r, expected: basis.cols() });
        }
        Ok(Subspace { basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: Mat::zeros(ambient, 0) }
    }

    pub fn basis(&self) -> &Mat<Rat> {
        &self.basis
    }

    pub fn into_basis(self) -> Mat<Rat> {
        self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Column-RREF representative of the span.
    pub fn canonicalize(&self) -> Subspace {
        Subspace { basis: column_rref(&self.basis) }
    }

    pub fn is_canonical(&self) -> bool {
        self.basis == column_rref(&self.basis)
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.dim() == other.dim()
            && column_rref(&self.basis) == column_rref(&other.basis)
    }

    /// Span of the union of the given subspaces (canonical basis).
    pub fn sum(ambient: usize, parts: &[&Subspace]) -> Subspace {
        let bases: Vec<&Mat<Rat>> = parts.iter().map(|p| &p.basis).collect();
        let joined = if bases.is_empty() { Mat::zeros(ambient, 0) } else { Mat::hcat(&bases) };
        Subspace { basis: column_rref(&joined) }
    }
}

/// Column-reduced echelon form with zero columns dropped.
fn column_rref(m: &Mat<Rat>) -> Mat<Rat> {
    let reduced = rref(&m.transpose());
    reduced.matrix.row_range(0, reduced.rank).transpose()
}

/// Canonical basis of the span of `basis`, rejecting dependent columns.
pub fn canonicalize(basis: &Mat<Rat>) -> Result<Mat<Rat>> {
    Ok(Subspace::new(basis.clone())?.canonicalize().into_basis())
}

/// Canonical basis of `a ∩ b`, read from the kernel of `(A | -B)`.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::Shape("intersect: ambient dimensions differ"));
    }
    let neg_b = b.basis.map(|v| -v);
    let kernel = nullspace_basis(&Mat::hcat(&[&a.basis, &neg_b]));
    let coeffs = kernel.row_range(0, a.dim());
    let vectors = &a.basis * &coeffs;
    Ok(Subspace { basis: column_rref(&vectors) })
}

/// Which normal-form construction applies to `(n, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `n = r·d`, `r ≥ 2`.
    Divisible { r: usize },
    /// `n = (2r+1)e`, `d = 2e`, `r ≥ 1`.
    OddMultiple { r: usize, e: usize },
    Unsupported,
}

impl CaseTag {
    /// Size of the letter matrices: `d` or `e`.
    pub fn letter_size(&self, d: usize) -> usize {
        match *self {
            CaseTag::OddMultiple { e, .. } => e,
            _ => d,
        }
    }
}

pub fn classify_case(n: usize, d: usize) -> CaseTag {
    if d == 0 || n <= d {
        return CaseTag::Unsupported;
    }
    if n.is_multiple_of(d) {
        return CaseTag::Divisible { r: n / d };
    }
    if d.is_multiple_of(2) {
        let e = d / 2;
        if n.is_multiple_of(e) && (n / e) % 2 == 1 {
            return CaseTag::OddMultiple { r: (n / e - 1) / 2, e };
        }
    }
    CaseTag::Unsupported
}

/// An ordered tuple of `d`-planes in an `n`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    n: usize,
    d: usize,
    subspaces: Vec<Subspace>,
}

impl Config {
    pub fn new(n: usize, d: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::Shape("configuration needs at least one subspace"));
        }
        if subspaces.iter().any(|v| v.ambient_dim() != n || v.dim() != d) {
            return Err(Error::Shape("subspace shape differs from (n, d)"));
        }
        Ok(Config { n, d, subspaces })
    }

    pub fn from_bases(n: usize, d: usize, bases: Vec<Mat<Rat>>) -> Result<Self> {
        let subspaces = bases.into_iter().map(Subspace::new).collect::<Result<Vec<_>>>()?;
        Config::new(n, d, subspaces)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.subspaces.len()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn case(&self) -> CaseTag {
        classify_case(self.n, self.d)
    }

    pub fn bases(&self) -> Vec<Mat<Rat>> {
        self.subspaces.iter().map(|v| v.basis.clone()).collect()
    }

    /// The `n × s·d` matrix of concatenated bases.
    pub fn stacked(&self) -> Mat<Rat> {
        let parts: Vec<&Mat<Rat>> = self.subspaces.iter().map(|v| &v.basis).collect();
        Mat::hcat(&parts)
    }

    /// Same spans, each basis replaced by its canonical form.
    pub fn canonical(&self) -> Config {
        Config {
            n: self.n,
            d: self.d,
            subspaces: self.subspaces.iter().map(Subspace::canonicalize).collect(),
        }
    }

    pub fn same_spans(&self, other: &Config) -> bool {
        self.n == other.n
            && self.d == other.d
            && self.s() == other.s()
            && self.subspaces.iter().zip(&other.subspaces).all(|(a, b)| a.same_span(b))
    }
}

fn independent(bases: &[Mat<Rat>]) -> bool {
    if bases.is_empty() {
        return true;
    }
    let parts: Vec<&Mat<Rat>> = bases.iter().collect();
    let joined = Mat::hcat(&parts);
    rank(&joined) == joined.cols()
}

/// Whether every genericity condition used by the pipeline for `tag` holds.
pub fn general_position(c: &Config, tag: CaseTag) -> bool {
    if tag != classify_case(c.n, c.d) {
        return false;
    }
    let bases = c.bases();
    match tag {
        CaseTag::Divisible { r } => divisible_position(&bases, r, c.d),
        CaseTag::OddMultiple { r, e } => odd_position(&bases, r, e),
        CaseTag::Unsupported => false,
    }
}

fn divisible_position(bases: &[Mat<Rat>], r: usize, d: usize) -> bool {
    let s = bases.len();
    if !independent(&bases[..s.min(r)]) {
        return false;
    }
    if s <= r {
        return true;
    }
    let frame: Vec<&Mat<Rat>> = bases[..r].iter().collect();
    let Ok(frame_inv) = inverse(&Mat::hcat(&frame)) else {
        return false;
    };
    // each later subspace must project bijectively onto every E_i
    bases[r..].iter().all(|v| {
        let coords = &frame_inv * v;
        (0..r).all(|i| rank(&coords.block(i * d, 0, d, d)) == d)
    })
}

fn odd_position(bases: &[Mat<Rat>], r: usize, e: usize) -> bool {
    let s = bases.len();
    if !independent(&bases[..s.min(r)]) {
        return false;
    }
    if s > r {
        let frame: Vec<&Mat<Rat>> = bases[..r].iter().collect();
        let frame = Mat::hcat(&frame);
        for v in &bases[r..] {
            let neg_v = v.map(|x| -x);
            let kernel = nullspace_basis(&Mat::hcat(&[&frame, &neg_v]));
            if kernel.cols() != e {
                return false;
            }
            // coordinates of V ∩ (E_1 ⊕ … ⊕ E_r) along each E_i must be injective
            if (0..r).any(|i| rank(&kernel.block(2 * e * i, 0, 2 * e, e)) != e) {
                return false;
            }
        }
    }
    odd::check_pipeline(bases, r, e).is_ok()
}

/// The seeded generator used for sampling: ChaCha8 seeded through
/// `seed_from_u64`, stable across platforms.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix with integer entries drawn uniformly from `[-bound, bound]`.
pub fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Mat<Rat> {
    Mat::from_fn(rows, cols, |_, _| Rat::int(rng.gen_range(-bound..=bound)))
}

/// Invertible integer matrix, rejection-sampled.
pub fn random_invertible<R: Rng>(rng: &mut R, size: usize, bound: i64) -> Mat<Rat> {
    loop {
        let m = random_int_matrix(rng, size, size, bound);
        if rank(&m) == size {
            return m;
        }
    }
}

/// Draws integer-entry configurations until one is in general position.
pub fn sample_config(n: usize, d: usize, s: usize, seed: u64, bound: i64) -> Result<Config> {
    let tag = classify_case(n, d);
    if tag == CaseTag::Unsupported {
        return Err(Error::UnsupportedCase { n, d });
    }
    if bound < 1 || s == 0 {
        return Err(Error::Shape("sampling needs bound >= 1 and s >= 1"));
    }
    let mut rng = seeded_rng(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let bases: Vec<Mat<Rat>> = (0..s).map(|_| random_int_matrix(&mut rng, n, d, bound)).collect();
        let Ok(config) = Config::from_bases(n, d, bases) else {
            continue;
        };
        if general_position(&config, tag) {
            return Ok(config);
        }
    }
    Err(Error::SamplingExhausted(SAMPLE_ATTEMPTS))
}

/// `V_i ↦ g·V_i` for every subspace.
pub fn act_left(g: &Mat<Rat>, c: &Config) -> Result<Config> {
    if g.shape() != (c.n, c.n) {
        return Err(Error::Shape("act_left: g must be n × n"));
    }
    if rank(g) != c.n {
        return Err(Error::Singular);
    }
    let subspaces = c.subspaces.iter().map(|v| Subspace { basis: g * &v.basis }).collect();
    Ok(Config { n: c.n, d: c.d, subspaces })
}

/// `basis_i ↦ basis_i · h_i`; spans are unchanged.
pub fn act_right(h: &[Mat<Rat>], c: &Config) -> Result<Config> {
    if h.len() != c.s() || h.iter().any(|m| m.shape() != (c.d, c.d)) {
        return Err(Error::Shape("act_right: need s matrices of size d × d"));
    }
    if h.iter().any(|m| rank(m) != c.d) {
        return Err(Error::Singular);
    }
    let subspaces =
        c.subspaces.iter().zip(h).map(|(v, m)| Subspace { basis: &v.basis * m }).collect();
    Ok(Config { n: c.n, d: c.d, subspaces })
}
