//! Dense exact linear algebra over a [`Scalar`] field.

use crate::scalar::Scalar;

/// Row-reduces a copy of `rows`, returning the rank.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone() / p.clone();
                for c in col..ncols {
                    let delta = factor.clone() * m[rank][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by Gaussian elimination.
pub fn determinant<S: Scalar>(rows: &[Vec<S>]) -> S {
    let n = rows.len();
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let mut det = S::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return S::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let factor = m[r][col].clone() / p.clone();
                for c in col..n {
                    let delta = factor.clone() * m[col][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
            }
        }
    }
    det
}

pub fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let inner = b.len();
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|c| (0..inner).fold(S::zero(), |acc, k| acc + row[k].clone() * b[k][c].clone()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(&q(&[&[1, 2], &[3, 4]])), Rational::from_int(-2));
        assert_eq!(determinant(&q(&[&[0, 1], &[1, 0]])), Rational::from_int(-1));
        assert_eq!(determinant(&q(&[&[1, 2], &[2, 4]])), Rational::from_int(0));
        assert_eq!(determinant::<Rational>(&[]), Rational::from_int(1));
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&q(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]])), 2);
        assert_eq!(rank(&q(&[&[0, 0], &[0, 0]])), 0);
    }
}
