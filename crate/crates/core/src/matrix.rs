//! Dense matrices over the rationals with exact rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>, // row-major
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from row vectors. All rows must share a length; `cols` is needed
    /// for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n_rows = rows.len();
        Some(QMatrix {
            rows: n_rows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Self::from_rows(data, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: &Rational) {
        self.entries[r * self.cols + c] += value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &QMatrix) -> Option<QMatrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Some(out)
    }

    pub fn add(&self, rhs: &QMatrix) -> Option<QMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return None;
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Some(QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Exact rank over the rationals.
    ///
    /// Rows are cleared of denominators, then reduced by fraction-free
    /// elimination over the integers. Each updated row is divided by its
    /// content so entries stay small on the sparse {-1, 0, 1} matrices the
    /// oracle produces.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| integer_row(self.row(r)))
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot_idx) = (rank..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by_key(|&i| rows[i][col].abs())
            else {
                continue;
            };
            rows.swap(rank, pivot_idx);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            let pivot = pivot_row[col].clone();
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let g = pivot.gcd(&row[col]);
                let a = &pivot / &g;
                let b = &row[col] / &g;
                for c in col..self.cols {
                    let v = &row[c] * &a - &pivot_row[c] * &b;
                    row[c] = v;
                }
                remove_content(row);
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;
    use proptest::prelude::*;

    /// Rank by plain rational Gauss-Jordan, kept separate from the integer path.
    fn rank_by_rationals(m: &QMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            let prow = a[rank].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != rank && !row[col].is_zero() {
                    let f = &row[col] / &pivot;
                    for c in 0..row.len() {
                        row[c] -= &f * &prow[c];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(QMatrix::from_i64(&[&[1, 1]]).rank(), 1);
        assert_eq!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(QMatrix::identity(4).rank(), 4);
        assert_eq!(QMatrix::zeros(0, 3).rank(), 0);
        assert_eq!(QMatrix::zeros(3, 0).rank(), 0);
        assert_eq!(QMatrix::zeros(2, 2).rank(), 0);
    }

    #[test]
    fn rational_entries() {
        let half = parse_rational("1/2").unwrap();
        let third = parse_rational("1/3").unwrap();
        let m = QMatrix::from_rows(
            vec![
                vec![half.clone(), third.clone()],
                vec![half * Rational::from_integer(2.into()), third * Rational::from_integer(2.into())],
            ],
            2,
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn product_shapes() {
        let a = QMatrix::from_i64(&[&[1, 0, 1]]);
        let b = QMatrix::from_i64(&[&[1], &[1], &[-1]]);
        assert_eq!(a.mul(&b).unwrap(), QMatrix::from_i64(&[&[0]]));
        assert!(b.mul(&b).is_none());
    }

    proptest! {
        #[test]
        fn rank_matches_rational_elimination(
            rows in 0usize..7, cols in 0usize..7,
            seed in proptest::collection::vec(-3i64..=3, 49),
        ) {
            let data: Vec<Vec<Rational>> = (0..rows)
                .map(|r| (0..cols).map(|c| Rational::from_integer(seed[r * 7 + c].into())).collect())
                .collect();
            let m = QMatrix::from_rows(data, cols).unwrap();
            let r = m.rank();
            prop_assert_eq!(r, rank_by_rationals(&m));
            prop_assert!(r <= rows.min(cols));
        }
    }
}
