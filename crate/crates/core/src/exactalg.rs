//! Exact integer linear algebra: fraction-free determinants and integer
//! diagonalization for abelian group orders.
//!
//! Determinants run Bareiss elimination over `i128` first and redo the
//! computation over big integers if any intermediate product overflows, so
//! every result is exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(mat: &[Vec<i64>]) -> BigInt {
    let n = mat.len();
    debug_assert!(mat.iter().all(|r| r.len() == n));
    if n == 0 {
        return BigInt::from(1);
    }
    match det_i128(mat) {
        Some(d) => BigInt::from(d),
        None => det_bigint(mat),
    }
}

fn det_i128(mat: &[Vec<i64>]) -> Option<i128> {
    let n = mat.len();
    let mut a: Vec<Vec<i128>> = mat.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = a[i][j].checked_mul(a[k][k])?;
                let t2 = a[i][k].checked_mul(a[k][j])?;
                a[i][j] = t1.checked_sub(t2)? / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn det_bigint(mat: &[Vec<i64>]) -> BigInt {
    let n = mat.len();
    let mut a: Vec<Vec<BigInt>> =
        mat.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = std::mem::take(&mut a[n - 1][n - 1]);
    if negate {
        -d
    } else {
        d
    }
}

/// Order of the abelian group `Z^g / rowspace(rel)`: the product of the
/// diagonal after unimodular diagonalization, or 0 when the group is
/// infinite (rank below `g`).
pub fn abelian_group_order(rel: &[Vec<BigInt>], generators: usize) -> BigInt {
    let rows = rel.len();
    let mut a: Vec<Vec<BigInt>> = rel.to_vec();
    for r in &a {
        debug_assert_eq!(r.len(), generators);
    }
    let mut t = 0usize;
    let mut order = BigInt::from(1);
    while t < rows.min(generators) {
        // Smallest nonzero entry of the trailing submatrix -> pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..generators {
                if !a[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // Chase remainders until the pivot divides its row and column.
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][t], &a[t][t]);
                for j in t..generators {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..generators {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&a[t][j], &a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        order *= a[t][t].abs();
        t += 1;
    }
    if t < generators {
        BigInt::zero()
    } else {
        order
    }
}

/// Division rounded toward the nearest integer: keeps remainders small
/// during the gcd chase.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det64(rows: &[&[i64]]) -> i64 {
        use num_traits::ToPrimitive;
        determinant(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).to_i64().unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det64(&[]), 1);
        assert_eq!(det64(&[&[7]]), 7);
        assert_eq!(det64(&[&[2, -1], &[-1, 2]]), 3);
        assert_eq!(det64(&[&[0, 1], &[1, 0]]), -1);
        assert_eq!(det64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]), 0);
        assert_eq!(det64(&[&[0, 0], &[0, 5]]), 0);
    }

    #[test]
    fn group_orders() {
        let big = |n: i64| BigInt::from(n);
        // Z/3
        assert_eq!(abelian_group_order(&[vec![big(3)]], 1), big(3));
        // Z^2 / <(2,0),(0,4)> = Z/2 + Z/4
        assert_eq!(
            abelian_group_order(&[vec![big(2), big(0)], vec![big(0), big(4)]], 2),
            big(8)
        );
        // infinite
        assert_eq!(abelian_group_order(&[vec![big(2), big(4)]], 2), big(0));
        // redundant relations
        assert_eq!(
            abelian_group_order(
                &[vec![big(2), big(1)], vec![big(4), big(2)], vec![big(0), big(5)]],
                2
            ),
            big(10)
        );
        // trivial group on zero generators
        assert_eq!(abelian_group_order(&[], 0), big(1));
    }
}
