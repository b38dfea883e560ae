use alloc::vec::Vec;

use super::mat::Mat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<T> {
    pub matrix: Mat<T>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan over the first `limit` columns. Pivot: first usable entry at
/// or below the current row, columns scanned left to right.
fn gauss_jordan<T: Scalar>(mut m: Mat<T>, limit: usize) -> Rref<T> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..limit.min(cols) {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| m[(r, col)].is_pivot()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = m[(row, col)].recip().expect("pivot is invertible");
        for c in 0..cols {
            m[(row, c)] = m[(row, c)].mul(&inv);
        }
        for r in 0..rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for c in 0..cols {
                let delta = factor.mul(&m[(row, c)]);
                m[(r, c)] = m[(r, c)].sub(&delta);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { matrix: m, rank: pivots.len(), pivots }
}

pub fn rref<T: Scalar>(m: &Mat<T>) -> Rref<T> {
    gauss_jordan(m.clone(), m.cols())
}

pub fn rank<T: Scalar>(m: &Mat<T>) -> usize {
    rref(m).rank
}

/// Solves `a · x = b` for square invertible `a`.
pub fn solve<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Result<Mat<T>> {
    if !a.is_square() {
        return Err(Error::Shape("solve needs a square coefficient matrix"));
    }
    if a.rows() != b.rows() {
        return Err(Error::Shape("solve right-hand side row mismatch"));
    }
    let n = a.rows();
    let reduced = gauss_jordan(Mat::hcat(&[a, b]), n);
    if reduced.rank < n {
        return Err(Error::Singular);
    }
    Ok(reduced.matrix.columns(n, b.cols()))
}

pub fn inverse<T: Scalar>(m: &Mat<T>) -> Result<Mat<T>> {
    if !m.is_square() {
        return Err(Error::Shape("inverse of a non-square matrix"));
    }
    solve(m, &Mat::identity(m.rows()))
}

/// Kernel basis read off the RREF: one column per free variable, with that
/// variable set to one and the other free variables to zero.
pub fn nullspace_basis<T: Scalar>(m: &Mat<T>) -> Mat<T> {
    let cols = m.cols();
    let Rref { matrix, pivots, .. } = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Mat::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            basis[(p, k)] = matrix[(i, f)].neg();
        }
    }
    basis
}

/// Trace of the ordered product of `letters[word[0]] · letters[word[1]] · …`.
pub fn trace_word<T: Scalar>(letters: &[Mat<T>], word: &[usize]) -> Result<T> {
    let (&first, rest) = word.split_first().ok_or(Error::Shape("empty word"))?;
    let fetch = |i: usize| {
        letters.get(i).ok_or(Error::IndexOutOfRange { index: i, len: letters.len() })
    };
    let head = fetch(first)?;
    if !head.is_square() {
        return Err(Error::Shape("letters must be square"));
    }
    let mut acc = head.clone();
    for &i in rest {
        let next = fetch(i)?;
        if next.shape() != head.shape() {
            return Err(Error::Shape("letters differ in size"));
        }
        acc = &acc * next;
    }
    Ok(acc.trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::Rat;
    use alloc::vec;

    fn m(rows: usize, cols: usize, v: &[i64]) -> Mat<Rat> {
        Mat::from_i64(rows, cols, v)
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&m(2, 2, &[1, 1, 0, 1])).unwrap(), m(2, 2, &[1, -1, 0, 1]));
        assert_eq!(inverse(&Mat::<Rat>::identity(3)).unwrap(), Mat::identity(3));
        let expected = Mat::from_vec(
            2,
            2,
            vec![Rat::new(-5, 2), Rat::new(3, 2), Rat::int(2), Rat::int(-1)],
        );
        let a = m(2, 2, &[2, 3, 4, 5]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, expected);
        assert!((&a * &inv).is_identity() && (&inv * &a).is_identity());
        assert_eq!(inverse(&m(2, 2, &[1, 2, 2, 4])), Err(Error::Singular));
        assert!(matches!(inverse(&m(1, 2, &[1, 2])), Err(Error::Shape(_))));
    }

    #[test]
    fn rref_examples() {
        let r = rref(&m(2, 2, &[2, 4, 1, 2]));
        assert_eq!(r.matrix, m(2, 2, &[1, 2, 0, 0]));
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
        let r = rref(&Mat::<Rat>::identity(2));
        assert_eq!((r.matrix, r.rank, r.pivots), (Mat::identity(2), 2, vec![0, 1]));
        let r = rref(&Mat::<Rat>::zeros(2, 3));
        assert_eq!((r.matrix, r.rank, r.pivots), (Mat::zeros(2, 3), 0, vec![]));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace_basis(&m(1, 2, &[1, 1])), m(2, 1, &[-1, 1]));
        assert_eq!(nullspace_basis(&Mat::<Rat>::identity(2)).shape(), (2, 0));
        assert_eq!(nullspace_basis(&Mat::<Rat>::zeros(1, 2)), Mat::identity(2));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&m(1, 1, &[2]), &m(1, 1, &[4])).unwrap(), m(1, 1, &[2]));
        let b = m(2, 3, &[1, -2, 3, 0, 5, 7]);
        assert_eq!(solve(&Mat::identity(2), &b).unwrap(), b);
        assert_eq!(solve(&m(2, 2, &[1, 1, 0, 1]), &m(2, 1, &[1, 1])).unwrap(), m(2, 1, &[0, 1]));
        assert_eq!(solve(&m(2, 2, &[1, 1, 1, 1]), &m(2, 1, &[1, 1])), Err(Error::Singular));
    }

    #[test]
    fn trace_word_examples() {
        assert_eq!(trace_word(&[Mat::<Rat>::identity(2)], &[0]).unwrap(), Rat::int(2));
        let letters = [
            Mat::diag(&[Rat::int(1), Rat::int(2)]),
            Mat::diag(&[Rat::int(3), Rat::int(4)]),
        ];
        assert_eq!(trace_word(&letters, &[0, 1]).unwrap(), Rat::int(11));
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 2, &[0, 1, -1, 5]);
        let pair = [a, b];
        assert_eq!(trace_word(&pair, &[0, 1]), trace_word(&pair, &[1, 0]));
        assert_eq!(
            trace_word(&pair, &[0, 2]),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
        assert!(matches!(trace_word(&pair, &[]), Err(Error::Shape(_))));
    }
}
