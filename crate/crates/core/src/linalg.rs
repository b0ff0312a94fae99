//! Exact linear algebra over the integers and rationals.
//!
//! Ranks and determinants use fraction-free (Bareiss) elimination, so every
//! intermediate entry is a minor of the input and stays an integer.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rank of an integer matrix given as rows. Rows may have any common length.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            if m[i][c].is_zero() {
                // (pivot * m[i][j] - 0) / prev
                for j in c + 1..ncols {
                    if !m[i][j].is_zero() {
                        m[i][j] = (&m[r][c] * &m[i][j]) / &prev;
                    }
                }
                continue;
            }
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                debug_assert!(v.is_multiple_of(&prev));
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of a rational matrix: each row is scaled by the lcm of its
/// denominators and the integer rank is returned.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|row| clear_denominators(row)).collect();
    rank(&int_rows)
}

/// Scales a rational vector to a primitive-free integer vector with the same
/// span.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Determinant of a square integer matrix.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Inverse of a square integer matrix over the rationals, or `None` when
/// singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        let pivot = a[k][k].clone();
        for x in a[k].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let factor = a[i][k].clone();
                for j in 0..2 * n {
                    let v = &factor * &a[k][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Inertia (positive, negative, zero) of a symmetric integer matrix, by
/// congruence diagonalization over the rationals.
pub fn inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, p);
        } else {
            let off = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero());
            let Some((i, j)) = off else {
                break;
            };
            // Both diagonals vanish, so a_ii + 2 a_ij + a_jj = 2 a_ij != 0.
            for t in 0..n {
                let v = a[j][t].clone();
                a[i][t] += v;
            }
            for t in 0..n {
                let v = a[t][j].clone();
                a[t][i] += v;
            }
            swap_sym(&mut a, k, i);
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for t in k..n {
                let v = &factor * &a[k][t];
                a[i][t] -= v;
            }
            for t in k..n {
                let v = &factor * &a[t][k];
                a[t][i] -= v;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rank_handles_skipped_columns() {
        let m = big(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let m = big(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 9]]);
        assert_eq!(rank(&m), 1);
        let m = big(&[&[1, 0, 0, 0], &[0, 0, 0, 5], &[0, 0, 3, 1]]);
        assert_eq!(rank(&m), 3);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn rational_rank_clears_denominators() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        let rows = vec![vec![r(1, 2), r(1, 3)], vec![r(3, 1), r(2, 1)]];
        assert_eq!(rank_rational(&rows), 1);
    }

    #[test]
    fn cartan_determinants() {
        let a3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(determinant(&a3), BigInt::from(4));
        let swapped = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant(&swapped), BigInt::from(-1));
    }

    #[test]
    fn inverse_of_a1_and_a2() {
        let inv = inverse(&[vec![2]]).unwrap();
        assert_eq!(inv[0][0], BigRational::new(1.into(), 2.into()));
        let inv = inverse(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(inv[0][1], BigRational::new(1.into(), 3.into()));
        assert!(inverse(&[vec![1, 1], vec![1, 1]]).is_none());
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        assert_eq!(inertia(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        let g = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]];
        assert_eq!(inertia(&g), (1, 2, 0));
        assert_eq!(inertia(&[vec![1, 1], vec![1, 1]]), (1, 0, 1));
    }
}
