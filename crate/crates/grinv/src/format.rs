//! JSON file formats. Rationals are strings in lowest terms (`"p/q"`, or `"p"`
//! for integers) so values survive a round trip exactly.

use std::fs;
use std::io::Write;
use std::path::Path;

use grinv_core::divisible::ReducedDivisible;
use grinv_core::orbit::{letter_count, InvariantVector};
use grinv_core::{CaseTag, Config, Mat, Rat};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {value:?}: {source}")]
    Rational { value: String, source: grinv_core::qlinalg::ParseRatError },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] grinv_core::Error),
}

pub type StringMatrix = Vec<Vec<String>>;

pub fn matrix_to_strings(m: &Mat<Rat>) -> StringMatrix {
    (0..m.rows()).map(|r| m.row(r).iter().map(Rat::to_string).collect()).collect()
}

pub fn matrix_from_strings(rows: &StringMatrix, shape: (usize, usize), what: &str) -> Result<Mat<Rat>, FormatError> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(FormatError::Invalid(format!("{what} must be {} × {}", shape.0, shape.1)));
    }
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|v| parse_rat(v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_rows(&parsed))
}

fn parse_rat(value: &str) -> Result<Rat, FormatError> {
    value.parse().map_err(|source| FormatError::Rational { value: value.to_owned(), source })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: usize,
    pub d: usize,
    pub subspaces: Vec<StringMatrix>,
}

impl ConfigFile {
    pub fn from_config(c: &Config) -> Self {
        ConfigFile { n: c.n(), d: c.d(), subspaces: c.bases().iter().map(matrix_to_strings).collect() }
    }

    pub fn to_config(&self) -> Result<Config, FormatError> {
        if self.d == 0 || self.d >= self.n {
            return Err(FormatError::Invalid("need 0 < d < n".into()));
        }
        let bases = self
            .subspaces
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from_strings(m, (self.n, self.d), &format!("subspace {}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Config::from_bases(self.n, self.d, bases)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub kind: String,
    pub r: usize,
    pub e: Option<usize>,
    pub k: usize,
}

impl CaseDescriptor {
    pub fn new(case: CaseTag, s: usize) -> Option<Self> {
        let k = letter_count(case, s);
        match case {
            CaseTag::Divisible { r } => Some(CaseDescriptor { kind: "divisible".into(), r, e: None, k }),
            CaseTag::OddMultiple { r, e } => Some(CaseDescriptor { kind: "odd_multiple".into(), r, e: Some(e), k }),
            CaseTag::Unsupported => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordEntry {
    pub word: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFile {
    pub case: CaseDescriptor,
    pub max_word_len: usize,
    pub letters: Vec<String>,
    pub invariants: Vec<WordEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub const TRIVIAL_NOTE: &str = "no letters for this (n, d, s): every rational invariant is constant";

impl InvariantFile {
    pub fn from_vector(v: &InvariantVector, s: usize) -> Self {
        let case = CaseDescriptor::new(v.case, s).expect("invariant vectors only exist for supported cases");
        let invariants = v
            .entries()
            .iter()
            .map(|entry| WordEntry {
                word: entry.word.iter().map(|&i| v.letters[i].clone()).collect(),
                value: entry.value.to_string(),
            })
            .collect();
        let note = v.letters.is_empty().then(|| TRIVIAL_NOTE.to_owned());
        InvariantFile { case, max_word_len: v.max_len, letters: v.letters.clone(), invariants, note }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterEntry {
    pub id: String,
    pub matrix: StringMatrix,
}

/// Letter grid of a divisible-case configuration, as consumed by `embed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LettersFile {
    pub r: usize,
    pub d: usize,
    pub s: usize,
    pub letters: Vec<LetterEntry>,
}

impl LettersFile {
    pub fn from_data(data: &ReducedDivisible) -> Self {
        let ids = grinv_core::divisible::letter_ids(data.r(), data.s());
        let letters = ids
            .into_iter()
            .zip(data.letters())
            .map(|(id, m)| LetterEntry { id, matrix: matrix_to_strings(m) })
            .collect();
        LettersFile { r: data.r(), d: data.d(), s: data.s(), letters }
    }

    pub fn to_data(&self) -> Result<ReducedDivisible, FormatError> {
        if self.r < 2 || self.d == 0 || self.s < self.r + 2 {
            return Err(FormatError::Invalid("letters need r >= 2, d >= 1, s >= r + 2".into()));
        }
        let ids = grinv_core::divisible::letter_ids(self.r, self.s);
        let given: Vec<&str> = self.letters.iter().map(|l| l.id.as_str()).collect();
        if given != ids {
            return Err(FormatError::Invalid(format!("letter ids must be {}", ids.join(", "))));
        }
        let grid = self
            .letters
            .iter()
            .map(|l| matrix_from_strings(&l.matrix, (self.d, self.d), &l.id))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ReducedDivisible::new(self.r, self.d, self.s, grid)?)
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize");
    text.push('\n');
    text
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves partial output.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), FormatError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_strings_roundtrip() {
        let m = Mat::from_vec(1, 3, vec![Rat::new(-3, 4), Rat::int(5), Rat::zero()]);
        let s = matrix_to_strings(&m);
        assert_eq!(s, vec![vec!["-3/4", "5", "0"]]);
        assert_eq!(matrix_from_strings(&s, (1, 3), "m").unwrap(), m);
        assert!(matrix_from_strings(&s, (3, 1), "m").is_err());
    }

    #[test]
    fn config_file_rejects_bad_entries() {
        let file = ConfigFile { n: 2, d: 1, subspaces: vec![vec![vec!["2/4".into()], vec!["1".into()]]] };
        assert!(matches!(file.to_config(), Err(FormatError::Rational { .. })));
        let file = ConfigFile { n: 2, d: 1, subspaces: vec![vec![vec!["0".into()], vec!["0".into()]]] };
        assert!(matches!(file.to_config(), Err(FormatError::Core(_))));
    }
}
