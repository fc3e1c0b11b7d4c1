//! Dense linear algebra over exact coefficients.

use alloc::vec::Vec;

use crate::scalar::{GaussRational, Scalar};

pub type Matrix<T> = Vec<Vec<T>>;

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn invert(m: &[Vec<GaussRational>]) -> Option<Matrix<GaussRational>> {
    let n = m.len();
    let mut a: Matrix<GaussRational> = m.to_vec();
    let mut inv: Matrix<GaussRational> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        GaussRational::one()
                    } else {
                        GaussRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv()?;
        for c in 0..n {
            a[col][c] = &a[col][c] * &p;
            inv[col][c] = &inv[col][c] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let da = &f * &a[col][c];
                a[r][c] = &a[r][c] - &da;
                let di = &f * &inv[col][c];
                inv[r][c] = &inv[r][c] - &di;
            }
        }
    }
    Some(inv)
}

/// Numeric view of a scalar matrix; `None` if any entry mentions a parameter.
pub fn numeric(m: &[Vec<Scalar>]) -> Option<Matrix<GaussRational>> {
    m.iter()
        .map(|row| row.iter().map(Scalar::as_constant).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix<Scalar> {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix<Scalar> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|r| {
            (0..m)
                .map(|c| {
                    let mut s = Scalar::zero();
                    for j in 0..k {
                        s += &(&a[r][j] * &b[j][c]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_add(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix<Scalar> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn mat_scale(a: &[Vec<Scalar>], s: &Scalar) -> Matrix<Scalar> {
    a.iter()
        .map(|row| row.iter().map(|x| x * s).collect())
        .collect()
}

pub fn is_zero(a: &[Vec<Scalar>]) -> bool {
    a.iter().all(|row| row.iter().all(Scalar::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn inverse_of_two_by_two() {
        let g = |n, d| GaussRational::ratio(n, d);
        let m = vec![vec![g(1, 1), g(2, 1)], vec![g(3, 1), g(4, 1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0][0], g(-2, 1));
        assert_eq!(inv[0][1], g(1, 1));
        assert_eq!(inv[1][0], g(3, 2));
        assert_eq!(inv[1][1], g(-1, 2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let g = |n| GaussRational::from_int(n);
        assert!(invert(&[vec![g(1), g(2)], vec![g(2), g(4)]]).is_none());
    }

    #[test]
    fn complex_pivot() {
        let m = vec![vec![GaussRational::i()]];
        assert_eq!(invert(&m).unwrap()[0][0], -GaussRational::i());
    }
}
