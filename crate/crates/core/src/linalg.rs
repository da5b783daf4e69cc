//! Exact integer matrices and the Smith normal form.
//!
//! Every entry is a [`BigInt`]; intermediate values during elimination are
//! unbounded, so nothing in this module uses fixed-width arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix. Empty shapes (0×n, n×0) are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Square diagonal matrix with the given entries.
    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone().into();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| x.into()).collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// The entries `(i, i)` for `i < min(rows, cols)`.
    pub fn main_diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                m.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(m)
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.data[i * cols.len() + k] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Keeps the first `n` rows.
    pub fn top_rows(&self, n: usize) -> Self {
        let n = n.min(self.rows);
        Self {
            rows: n,
            cols: self.cols,
            data: self.data[..n * self.cols].to_vec(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + a, k * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for k in 0..self.cols {
            let v = &self.data[src * self.cols + k] * q;
            self.data[dst * self.cols + k] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for k in 0..self.rows {
            let v = &self.data[k * self.cols + src] * q;
            self.data[k * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + k]);
            self.data[i * self.cols + k] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Exact product `a · b`.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = IntMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                out.data[i * b.cols + j] += aik * b.get(k, j);
            }
        }
    }
    Ok(out)
}

/// Smith normal form `u · a · v = s` with unimodular `u`, `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries of `s`, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s
            .main_diagonal()
            .into_iter()
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Position of the nonzero entry of least absolute value in `s[t.., t..]`,
/// ties broken by lowest (row, col).
fn min_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let e = s.get(i, j);
            if e.is_zero() {
                continue;
            }
            let mag = e.abs();
            if best.as_ref().is_none_or(|(_, b)| mag < *b) {
                best = Some(((i, j), mag));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Computes the Smith normal form of `a` together with its transforms.
///
/// Pivots are the nonzero entries of least absolute value (lowest row, then
/// column, on ties), so the transforms are deterministic for a given input.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (r, c) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    'outer: for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_pivot(&s, t) else {
                break 'outer;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(&pivot);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(&pivot);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }

            // The pivot must divide the rest of the submatrix.
            let offending = (t + 1..r)
                .find(|&i| (t + 1..c).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, s, v }
}

/// Basis (as columns) of the integer solutions of `a · x = 0`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let res = snf(a);
    let rank = res.rank();
    let cols: Vec<usize> = (rank..a.cols).collect();
    res.v.select_columns(&cols)
}

/// Rank of `a` over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    snf(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check_snf(a: &IntMatrix) -> SnfResult {
        let res = snf(a);
        let uav = mat_mul(&mat_mul(&res.u, a).unwrap(), &res.v).unwrap();
        assert_eq!(uav, res.s, "u·a·v != s for {a:?}");
        assert_eq!(res.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(res.v.det().unwrap().abs(), BigInt::one());
        res
    }

    #[test]
    fn identity_is_its_own_snf() {
        let res = check_snf(&IntMatrix::identity(2));
        assert_eq!(res.s, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let res = check_snf(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(res.s.main_diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn empty_matrices() {
        let res = snf(&IntMatrix::zeros(0, 0));
        assert_eq!((res.u.rows(), res.s.rows(), res.v.rows()), (0, 0, 0));
        let res = check_snf(&IntMatrix::zeros(2, 0));
        assert_eq!(res.u, IntMatrix::identity(2));
        assert_eq!(res.v.rows(), 0);
        let res = check_snf(&IntMatrix::zeros(0, 3));
        assert_eq!(res.v, IntMatrix::identity(3));
    }

    #[test]
    fn negative_pivot_is_normalized() {
        let res = check_snf(&m(&[vec![-3]]));
        assert_eq!(res.s, m(&[vec![3]]));
        assert_eq!(res.u, m(&[vec![-1]]));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is not in normal form; the result must be diag(1, 6).
        let res = check_snf(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(res.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zeros_trail_nonzeros() {
        let res = check_snf(&m(&[vec![0, 0, 0], vec![0, 0, 5], vec![0, 0, 0]]));
        assert_eq!(
            res.s.main_diagonal(),
            vec![BigInt::from(5), BigInt::zero(), BigInt::zero()]
        );
    }

    #[test]
    fn mat_mul_examples() {
        assert_eq!(
            mat_mul(&m(&[vec![1, 2]]), &m(&[vec![3], vec![4]])).unwrap(),
            m(&[vec![11]])
        );
        let a = m(&[vec![1, -2, 3], vec![4, 5, 6]]);
        assert_eq!(mat_mul(&IntMatrix::identity(2), &a).unwrap(), a);
        assert!(matches!(mat_mul(&a, &a), Err(Error::Shape(_))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel(&IntMatrix::identity(3)).cols(), 0);

        let k = integer_kernel(&m(&[vec![2, 4]]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        // primitive multiple of (2, -1)
        assert!(col == vec![BigInt::from(2), BigInt::from(-1)] || col == vec![BigInt::from(-2), BigInt::from(1)]);

        let k = integer_kernel(&IntMatrix::zeros(1, 2));
        assert_eq!(k.cols(), 2);
    }

    #[test]
    fn new_rejects_wrong_length() {
        assert!(matches!(
            IntMatrix::new(2, 2, vec![BigInt::one()]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(m(&[vec![2, 4], vec![6, 8]]).det().unwrap(), BigInt::from(-8));
        assert_eq!(
            m(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).det().unwrap(),
            BigInt::from(-2)
        );
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).det().unwrap(), BigInt::zero());
    }
}
