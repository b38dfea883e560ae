//! Trace-word invariant vectors, orbit comparison and Jacobian ranks.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::divisible;
use crate::error::{Error, Result};
use crate::grassmann::{classify_case, general_position, CaseTag, Config};
use crate::odd;
use crate::qlinalg::{rank, trace_word, Jet, Mat, Rat, Scalar};

/// Cyclic words over `0..alphabet` of length `1..=max_len`, one per rotation
/// class, each given by its lexicographically least rotation. Ordered by
/// length, then lexicographically.
pub fn enumerate_words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if alphabet == 0 {
        return out;
    }
    for len in 1..=max_len {
        let mut word = vec![0; len];
        loop {
            if is_least_rotation(&word) {
                out.push(word.clone());
            }
            // odometer increment, last position fastest
            let Some(pos) = word.iter().rposition(|&x| x + 1 < alphabet) else {
                break;
            };
            word[pos] += 1;
            for x in &mut word[pos + 1..] {
                *x = 0;
            }
        }
    }
    out
}

fn is_least_rotation(word: &[usize]) -> bool {
    let n = word.len();
    (1..n).all(|k| {
        let rotated = word[k..].iter().chain(&word[..k]);
        word.iter().cmp(rotated) != core::cmp::Ordering::Greater
    })
}

/// Longest word length used for letters of size `m`: `2^m - 1`.
pub fn word_length_bound(m: usize) -> usize {
    if m >= usize::BITS as usize { usize::MAX } else { (1usize << m) - 1 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordValue {
    pub word: Vec<usize>,
    pub value: Rat,
}

/// Traces of cyclic words in the letters of a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVector {
    pub case: CaseTag,
    pub letters: Vec<String>,
    pub max_len: usize,
    pub entries: Vec<WordValue>,
}

impl InvariantVector {
    pub fn entries(&self) -> &[WordValue] {
        &self.entries
    }

    pub fn values(&self) -> Vec<Rat> {
        self.entries.iter().map(|e| e.value.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub(crate) fn evaluate(
    case: CaseTag,
    ids: Vec<String>,
    letters: &[Mat<Rat>],
    size: usize,
    max_len: usize,
) -> Result<InvariantVector> {
    debug_assert_eq!(ids.len(), letters.len());
    let max_len = max_len.min(word_length_bound(size));
    let entries = enumerate_words(letters.len(), max_len)
        .into_iter()
        .map(|word| Ok(WordValue { value: trace_word(letters, &word)?, word }))
        .collect::<Result<Vec<_>>>()?;
    let max_len = if letters.is_empty() { 0 } else { max_len };
    Ok(InvariantVector { case, letters: ids, max_len, entries })
}

/// Letters of a configuration given by raw blocks, over any scalar.
pub fn letters_for<T: Scalar>(blocks: &[Mat<T>], case: CaseTag, d: usize, n: usize) -> Result<Vec<Mat<T>>> {
    match case {
        CaseTag::Divisible { r } => divisible::letters(blocks, r, d),
        CaseTag::OddMultiple { r, e } => odd::letters(blocks, r, e),
        CaseTag::Unsupported => Err(Error::UnsupportedCase { n, d }),
    }
}

pub fn letter_ids(case: CaseTag, s: usize) -> Vec<String> {
    match case {
        CaseTag::Divisible { r } => divisible::letter_ids(r, s),
        CaseTag::OddMultiple { r, .. } => odd::letter_ids(r, s),
        CaseTag::Unsupported => Vec::new(),
    }
}

/// Number of letters; zero in the trivial range.
pub fn letter_count(case: CaseTag, s: usize) -> usize {
    match case {
        CaseTag::Divisible { r } => (r - 1) * (s.saturating_sub(r + 1)),
        CaseTag::OddMultiple { r, .. } => odd::letter_count(r, s),
        CaseTag::Unsupported => 0,
    }
}

pub fn invariant_vector(c: &Config, max_len: usize) -> Result<InvariantVector> {
    match c.case() {
        CaseTag::Divisible { .. } => divisible::invariants(c, max_len),
        CaseTag::OddMultiple { .. } => odd::invariants(c, max_len),
        CaseTag::Unsupported => Err(Error::UnsupportedCase { n: c.n(), d: c.d() }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent,
    Distinct,
    Inconclusive,
}

/// Compares invariant vectors. Unequal vectors prove distinct orbits; equal
/// vectors mean equivalent generic orbits.
pub fn same_orbit_test(a: &Config, b: &Config, max_len: usize) -> Result<Verdict> {
    if (a.n(), a.d(), a.s()) != (b.n(), b.d(), b.s()) {
        return Err(Error::Shape("configurations differ in (n, d, s)"));
    }
    let case = a.case();
    if case == CaseTag::Unsupported {
        return Err(Error::UnsupportedCase { n: a.n(), d: a.d() });
    }
    if !general_position(a, case) || !general_position(b, case) {
        return Ok(Verdict::Inconclusive);
    }
    let va = invariant_vector(a, max_len)?;
    let vb = invariant_vector(b, max_len)?;
    Ok(if va == vb { Verdict::Equivalent } else { Verdict::Distinct })
}

/// Transcendence degree of the invariant field for `k` letters of size `m`:
/// `k·m² - (m² - 1)` for `k ≥ 2`, `m` for a single letter (its eigenvalues),
/// `0` without letters.
pub fn expected_quotient_dim(n: usize, d: usize, s: usize) -> Result<usize> {
    let case = classify_case(n, d);
    if case == CaseTag::Unsupported {
        return Err(Error::UnsupportedCase { n, d });
    }
    let k = letter_count(case, s);
    let m = case.letter_size(d);
    Ok(match k {
        0 => 0,
        1 => m,
        _ => k * m * m - (m * m - 1),
    })
}

/// Exact rank of the Jacobian of the invariant vector with respect to the
/// entries of the stacked bases, evaluated at `c`.
pub fn jacobian_rank(c: &Config, max_len: usize) -> Result<usize> {
    let case = c.case();
    let (n, d) = (c.n(), c.d());
    let bases = c.bases();
    let k = letter_count(case, c.s());
    if case == CaseTag::Unsupported {
        return Err(Error::UnsupportedCase { n, d });
    }
    if k == 0 {
        return Ok(0);
    }
    let words = enumerate_words(k, max_len.min(word_length_bound(case.letter_size(d))));
    let directions = n * d * bases.len();
    let mut jac = Mat::<Rat>::zeros(words.len(), directions);
    let mut col = 0;
    for (bi, base) in bases.iter().enumerate() {
        for row in 0..n {
            for cc in 0..d {
                let blocks: Vec<Mat<Jet>> = bases
                    .iter()
                    .enumerate()
                    .map(|(i, b)| {
                        let mut lifted = b.lift::<Jet>();
                        if i == bi {
                            lifted[(row, cc)] = Jet::variable(base[(row, cc)].clone());
                        }
                        lifted
                    })
                    .collect();
                let letters = letters_for(&blocks, case, d, n)?;
                for (wi, word) in words.iter().enumerate() {
                    jac[(wi, col)] = trace_word(&letters, word)?.deriv;
                }
                col += 1;
            }
        }
    }
    Ok(rank(&jac))
}
