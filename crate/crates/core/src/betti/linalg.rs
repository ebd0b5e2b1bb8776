//! Exact matrix rank: fraction-free Bareiss elimination over the integers
//! (rank over Q) and bit-packed Gaussian elimination over GF(2).

use num_bigint::BigInt;
use num_traits::{One, Zero};

trait BareissScalar: Clone {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `(a*d - b*c) / prev`, exact; `None` on overflow.
    fn step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self>;
    fn one() -> Self;
}

impl BareissScalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        let num = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        Some(num / prev)
    }
    fn one() -> Self {
        1
    }
}

impl BareissScalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        Some((a * d - b * c) / prev)
    }
    fn one() -> Self {
        One::one()
    }
}

fn bareiss<T: BareissScalar>(rows: &[Vec<i64>]) -> Option<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<T>> = rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v)).collect()).collect();
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            for j in col + 1..ncols {
                row[j] = T::step(&prow[col], &row[j], &row[col], &prow[j], &prev)?;
            }
            row[col] = T::from_i64(0);
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    Some(rank)
}

/// Rank over Q of an integer matrix given as rows.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    match bareiss::<i128>(rows) {
        Some(r) => r,
        None => bareiss::<BigInt>(rows).expect("big integers do not overflow"),
    }
}

/// Rank over GF(2); entries are reduced mod 2.
pub fn rank_gf2(rows: &[Vec<i64>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let words = ncols.div_ceil(64);
    let mut packed: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, &v) in r.iter().enumerate() {
                if v.rem_euclid(2) == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..packed.len()).find(|&r| packed[r][word] & bit != 0) else {
            continue;
        };
        packed.swap(rank, pivot);
        let (top, rest) = packed.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[word] & bit != 0 {
                for (x, y) in row.iter_mut().zip(prow) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == packed.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_rational(&[]), 0);
        assert_eq!(rank_rational(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_rational(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_rational(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), 3);
        assert_eq!(rank_rational(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    }

    #[test]
    fn characteristic_matters() {
        // det = 2
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_gf2(&m), 1);
    }

    #[test]
    fn wide_gf2_rows() {
        let mut a = vec![0; 130];
        let mut b = vec![0; 130];
        a[0] = 1;
        a[129] = 1;
        b[129] = 1;
        assert_eq!(rank_gf2(&[a.clone(), b.clone(), a.iter().zip(&b).map(|(x, y)| x + y).collect()]), 2);
    }

    #[test]
    fn large_entries_fall_back_to_bigints() {
        let big = 1i64 << 61;
        let m = vec![vec![big, 1, 0], vec![1, big, 1], vec![0, 1, big]];
        assert_eq!(rank_rational(&m), 3);
        let dependent = vec![vec![big, big - 1], vec![2 * big, 2 * big - 2]];
        assert_eq!(rank_rational(&dependent), 1);
    }
}
