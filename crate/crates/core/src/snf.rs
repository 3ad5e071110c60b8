//! Exact integer matrices and Smith normal form.
//!
//! Desk-scale dense implementation over arbitrary-precision integers,
//! with both unimodular transforms tracked so that `u * a * v = d`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += q * row_b
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = self.get(b, j) * q;
            let cur = self.get(a, j).clone();
            self.set(a, j, cur + add);
        }
    }

    /// col_a += q * col_b
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = self.get(i, b) * q;
            let cur = self.get(i, a).clone();
            self.set(i, a, cur + add);
        }
    }

    fn scale_row(&mut self, a: usize, s: &BigInt) {
        for j in 0..self.cols {
            let cur = self.get(a, j).clone();
            self.set(a, j, cur * s);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut m = self.clone();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::ZERO,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `u * a * v = d` with `d` diagonal and a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Nontrivial invariant factors (> 1).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| d.abs() > BigInt::from(1))
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);

    for k in 0..n {
        loop {
            // pivot: smallest nonzero magnitude in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..d.rows {
                for j in k..d.cols {
                    if !d.get(i, j).is_zero()
                        && pivot.is_none_or(|(pi, pj)| d.get(i, j).abs() < d.get(pi, pj).abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut dirty = false;
            for i in k + 1..d.rows {
                if !d.get(i, k).is_zero() {
                    let q = -(d.get(i, k) / d.get(k, k));
                    d.add_row(i, k, &q);
                    u.add_row(i, k, &q);
                    if !d.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..d.cols {
                if !d.get(k, j).is_zero() {
                    let q = -(d.get(k, j) / d.get(k, k));
                    d.add_col(j, k, &q);
                    v.add_col(j, k, &q);
                    if !d.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let mut fixed = true;
            'scan: for i in k + 1..d.rows {
                for j in k + 1..d.cols {
                    if !(d.get(i, j) % d.get(k, k)).is_zero() {
                        d.add_row(k, i, &BigInt::from(1));
                        u.add_row(k, i, &BigInt::from(1));
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d.get(k, k).is_negative() {
            d.scale_row(k, &BigInt::from(-1));
            u.scale_row(k, &BigInt::from(-1));
        }
    }

    let diagonal: Vec<BigInt> = (0..n).map(|k| d.get(k, k).clone()).collect();
    let rank = diagonal.iter().filter(|x| !x.is_zero()).count();
    SnfResult {
        d,
        u,
        v,
        diagonal,
        rank,
    }
}

/// Solves `x * a = b` over the integers; returns one solution if any.
pub fn solve_left(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(b.rows, 1);
    assert_eq!(b.cols, a.cols);
    let snf = smith_normal_form(a);
    let bv = b.mul(&snf.v);
    let n = a.rows.min(a.cols);
    let mut y = IntMatrix::zeros(1, a.rows);
    for i in 0..a.cols {
        let rhs = bv.get(0, i);
        if i < n && !snf.d.get(i, i).is_zero() {
            let di = snf.d.get(i, i);
            if !(rhs % di).is_zero() {
                return None;
            }
            y.set(0, i, rhs / di);
        } else if !rhs.is_zero() {
            return None;
        }
    }
    Some(y.mul(&snf.u))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_matrix_is_its_own_snf() {
        let snf = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(snf.diagonal, vec![1.into(), 1.into(), 1.into()]);
        assert_eq!(snf.rank, 3);
    }

    #[test]
    fn zero_matrix() {
        let snf = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert_eq!(snf.rank, 0);
        assert!(snf.diagonal.iter().all(Zero::is_zero));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal, vec![1.into(), 6.into()]);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
    }

    #[test]
    fn transforms_are_unimodular() {
        let m = IntMatrix::from_rows(vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        assert_eq!(snf.u.det().abs(), 1.into());
        assert_eq!(snf.v.det().abs(), 1.into());
        // divisibility chain
        for w in snf.diagonal.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero());
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        assert_eq!(snf.diagonal, vec![1.into(), 3.into(), 21.into(), 0.into()]);
    }

    #[test]
    fn solve_left_finds_solutions() {
        let a = IntMatrix::from_rows(vec![vec![2, 0, 1], vec![0, 3, 1]]);
        let b = IntMatrix::from_rows(vec![vec![2, 3, 2]]);
        let x = solve_left(&a, &b).unwrap();
        assert_eq!(x.mul(&a), b);
        let unsolvable = IntMatrix::from_rows(vec![vec![1, 0, 0]]);
        let a2 = IntMatrix::from_rows(vec![vec![2, 0, 0]]);
        assert!(solve_left(&a2, &unsolvable).is_none());
    }
}
