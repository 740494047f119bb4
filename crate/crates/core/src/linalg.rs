//! Exact integer matrix algebra: Smith normal form with transforms, integer
//! linear solving and lattice membership.
//!
//! Entries are arbitrary-precision. Pivoting during Smith reduction can grow
//! coefficients well past 64 bits even on small inputs, so nothing here is
//! allowed to wrap.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
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

    pub fn from_data(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows of small integers. Panics on ragged input;
    /// meant for literals in code and tests.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix literal");
            data.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
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

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// `[self | other]`; row counts must agree.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn put_block(&mut self, row: usize, col: usize, block: &IntMatrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(row + i) * self.cols + col + j] = block.get(i, j).clone();
            }
        }
    }

    /// Adds `k * block` into `self` at `(row, col)`.
    pub fn add_block(&mut self, row: usize, col: usize, block: &IntMatrix, k: i64) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        let k = BigInt::from(k);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if !b.is_zero() {
                    self.data[(row + i) * self.cols + col + j] += b * &k;
                }
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.data[i * cols.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Columns `range` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> IntMatrix {
        let idx: Vec<usize> = (start..end).collect();
        self.select_columns(&idx)
    }

    /// Rows `range` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
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
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `U * M * V = D` together with the inverse transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// `d_1, ..., d_k` with `k = min(rows, cols)`; nonnegative, divisibility
    /// chain on the nonzero prefix, zeros trailing.
    pub diagonal: Vec<BigInt>,
    rank: usize,
}

/// Reason a system `M x = b` has no integer solution, read off in Smith
/// coordinates `D y = U b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// Index of the transformed coordinate that fails.
    pub coordinate: usize,
    /// `(U b)_coordinate`.
    pub value: BigInt,
    /// The diagonal entry it must be divisible by (zero for rows past the rank).
    pub divisor: BigInt,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Solves `M x = b` over the integers, or reports the coordinate that
    /// obstructs a solution.
    pub fn solve(&self, b: &[BigInt]) -> Result<std::result::Result<Vec<BigInt>, Obstruction>> {
        let ub = self.u.mul_vec(b)?;
        let cols = self.v.rows();
        let mut y = vec![BigInt::zero(); cols];
        for (i, value) in ub.iter().enumerate() {
            if i < self.rank {
                let d = &self.diagonal[i];
                let (q, r) = value.div_rem(d);
                if !r.is_zero() {
                    return Ok(Err(Obstruction {
                        coordinate: i,
                        value: value.clone(),
                        divisor: d.clone(),
                    }));
                }
                y[i] = q;
            } else if !value.is_zero() {
                return Ok(Err(Obstruction {
                    coordinate: i,
                    value: value.clone(),
                    divisor: BigInt::zero(),
                }));
            }
        }
        Ok(Ok(self.v.mul_vec(&y)?))
    }

    /// Membership of `b` in the column lattice of the decomposed matrix.
    pub fn contains(&self, b: &[BigInt]) -> Result<bool> {
        let ub = self.u.mul_vec(b)?;
        Ok(ub.iter().enumerate().all(|(i, value)| {
            if i < self.rank {
                value.is_multiple_of(&self.diagonal[i])
            } else {
                value.is_zero()
            }
        }))
    }

    /// Basis of the integer kernel `{x : M x = 0}`: the trailing columns of `V`.
    pub fn kernel_basis(&self) -> IntMatrix {
        self.v.column_range(self.rank, self.v.cols())
    }

    /// Basis of the column lattice of `M`: `d_i * U^{-1} e_i` for `i < rank`.
    pub fn lattice_basis(&self) -> IntMatrix {
        let mut b = self.u_inv.column_range(0, self.rank);
        for j in 0..self.rank {
            for i in 0..b.rows() {
                let x = b.get(i, j) * &self.diagonal[j];
                b.set(i, j, x);
            }
        }
        b
    }
}

/// Working state for the reduction. Transforms are optional so that
/// invariant-factor-only computations skip the bookkeeping.
struct Reducer {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
    track: bool,
    u: Vec<BigInt>,
    u_inv: Vec<BigInt>,
    v: Vec<BigInt>,
    v_inv: Vec<BigInt>,
}

impl Reducer {
    fn new(m: &IntMatrix, track: bool) -> Self {
        let (r, c) = m.shape();
        let id = |n: usize| IntMatrix::identity(n).data;
        Reducer {
            rows: r,
            cols: c,
            a: m.data.clone(),
            track,
            u: if track { id(r) } else { Vec::new() },
            u_inv: if track { id(r) } else { Vec::new() },
            v: if track { id(c) } else { Vec::new() },
            v_inv: if track { id(c) } else { Vec::new() },
        }
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    fn add_row(buf: &mut [BigInt], n: usize, dst: usize, src: usize, k: &BigInt) {
        for j in 0..n {
            let s = &buf[src * n + j];
            if !s.is_zero() {
                let delta = s * k;
                buf[dst * n + j] += delta;
            }
        }
    }

    fn add_col(buf: &mut [BigInt], n_rows: usize, n_cols: usize, dst: usize, src: usize, k: &BigInt) {
        for i in 0..n_rows {
            let s = &buf[i * n_cols + src];
            if !s.is_zero() {
                let delta = s * k;
                buf[i * n_cols + dst] += delta;
            }
        }
    }

    /// row_dst += k * row_src
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        Self::add_row(&mut self.a, self.cols, dst, src, k);
        if self.track {
            Self::add_row(&mut self.u, self.rows, dst, src, k);
            let neg = -k;
            Self::add_col(&mut self.u_inv, self.rows, self.rows, src, dst, &neg);
        }
    }

    /// col_dst += k * col_src
    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        Self::add_col(&mut self.a, self.rows, self.cols, dst, src, k);
        if self.track {
            Self::add_col(&mut self.v, self.cols, self.cols, dst, src, k);
            let neg = -k;
            Self::add_row(&mut self.v_inv, self.cols, src, dst, &neg);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
        if self.track {
            let n = self.rows;
            for c in 0..n {
                self.u.swap(i * n + c, j * n + c);
                self.u_inv.swap(c * n + i, c * n + j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
        if self.track {
            let n = self.cols;
            for r in 0..n {
                self.v.swap(r * n + i, r * n + j);
                self.v_inv.swap(i * n + r, j * n + r);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let x = &mut self.a[i * self.cols + c];
            *x = -std::mem::take(x);
        }
        if self.track {
            let n = self.rows;
            for c in 0..n {
                let x = &mut self.u[i * n + c];
                *x = -std::mem::take(x);
                let y = &mut self.u_inv[c * n + i];
                *y = -std::mem::take(y);
            }
        }
    }

    fn smallest_in_submatrix(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.at(bi, bj).abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Clears row `t` and column `t` except the pivot, keeping the pivot the
    /// smallest nonzero entry seen. Returns once both are clean.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let p = self.at(t, t).clone();
            let mut dirty = false;
            for i in t + 1..self.rows {
                if self.at(i, t).is_zero() {
                    continue;
                }
                let q = self.at(i, t) / &p;
                if !q.is_zero() {
                    self.row_add(i, t, &(-q));
                }
                if !self.at(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..self.cols {
                if self.at(t, j).is_zero() {
                    continue;
                }
                let q = self.at(t, j) / &p;
                if !q.is_zero() {
                    self.col_add(j, t, &(-q));
                }
                if !self.at(t, j).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                return;
            }
            // A remainder is strictly smaller than the pivot: move it in.
            let mut best: Option<(bool, usize)> = None;
            let mut best_abs = p.abs();
            for i in t + 1..self.rows {
                let x = self.at(i, t);
                if !x.is_zero() && x.abs() < best_abs {
                    best_abs = x.abs();
                    best = Some((true, i));
                }
            }
            for j in t + 1..self.cols {
                let x = self.at(t, j);
                if !x.is_zero() && x.abs() < best_abs {
                    best_abs = x.abs();
                    best = Some((false, j));
                }
            }
            match best {
                Some((true, i)) => self.swap_rows(t, i),
                Some((false, j)) => self.swap_cols(t, j),
                None => unreachable!("remainder must be smaller than pivot"),
            }
        }
    }

    fn reduce(mut self) -> (IntMatrix, Vec<BigInt>, usize, Option<[IntMatrix; 4]>) {
        let k = self.rows.min(self.cols);
        let mut rank = 0;
        for t in 0..k {
            let Some((i, j)) = self.smallest_in_submatrix(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                self.clear_cross(t);
                let p = self.at(t, t).clone();
                let bad_row = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.at(i, j).is_multiple_of(&p)));
                match bad_row {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t);
            }
            rank = t + 1;
        }
        let diagonal: Vec<BigInt> = (0..k).map(|i| self.at(i, i).clone()).collect();
        let d = IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.a,
        };
        let transforms = if self.track {
            Some([
                IntMatrix { rows: self.rows, cols: self.rows, data: self.u },
                IntMatrix { rows: self.rows, cols: self.rows, data: self.u_inv },
                IntMatrix { rows: self.cols, cols: self.cols, data: self.v },
                IntMatrix { rows: self.cols, cols: self.cols, data: self.v_inv },
            ])
        } else {
            None
        };
        (d, diagonal, rank, transforms)
    }
}

/// Smith normal form with unimodular transforms and their inverses.
pub fn snf(m: &IntMatrix) -> Snf {
    let (d, diagonal, rank, transforms) = Reducer::new(m, true).reduce();
    let [u, u_inv, v, v_inv] = transforms.expect("transforms tracked");
    Snf {
        u,
        u_inv,
        d,
        v,
        v_inv,
        diagonal,
        rank,
    }
}

/// Invariant factors only (no transforms): the diagonal of the Smith form.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    Reducer::new(m, false).reduce().1
}

/// Some integer solution of `M x = b`, or `None` when none exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            m.rows()
        )));
    }
    Ok(snf(m).solve(b)?.ok())
}

/// Whether `b` is an integer combination of the columns of `M`.
pub fn in_column_lattice(m: &IntMatrix, b: &[BigInt]) -> Result<bool> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a matrix with {} rows",
            b.len(),
            m.rows()
        )));
    }
    if m.cols() == 0 {
        return Ok(b.iter().all(Zero::is_zero));
    }
    snf(m).contains(b)
}

pub fn int_vec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_identity(m: &IntMatrix, s: &Snf) {
        let umv = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        assert_eq!(umv, s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
    }

    #[test]
    fn snf_of_two_by_two() {
        let m = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = snf(&m);
        check_identity(&m, &s);
        assert_eq!(s.diagonal, int_vec(&[2, 4]));
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMatrix::identity(2);
        let s = snf(&id);
        check_identity(&id, &s);
        assert_eq!(s.diagonal, int_vec(&[1, 1]));

        let z = IntMatrix::from_rows(&[[0]]);
        let s = snf(&z);
        assert_eq!(s.diagonal, int_vec(&[0]));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn snf_of_empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let m = IntMatrix::zeros(r, c);
            let s = snf(&m);
            check_identity(&m, &s);
            assert!(s.diagonal.is_empty());
        }
    }

    #[test]
    fn snf_handles_nondivisible_pivot() {
        // diag(2, 3) is not in chain form; expected (1, 6).
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let s = snf(&m);
        check_identity(&m, &s);
        assert_eq!(s.diagonal, int_vec(&[1, 6]));
    }

    #[test]
    fn solve_examples() {
        let m = IntMatrix::from_rows(&[[2]]);
        assert_eq!(solve_integer(&m, &int_vec(&[4])).unwrap(), Some(int_vec(&[2])));
        assert_eq!(solve_integer(&m, &int_vec(&[3])).unwrap(), None);

        let m = IntMatrix::from_rows(&[[1, 1], [0, 2]]);
        let x = solve_integer(&m, &int_vec(&[3, 2])).unwrap().unwrap();
        assert_eq!(x, int_vec(&[2, 1]));
        assert_eq!(m.mul_vec(&x).unwrap(), int_vec(&[3, 2]));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = IntMatrix::from_rows(&[[1, 1], [0, 2]]);
        assert!(matches!(
            solve_integer(&m, &int_vec(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(in_column_lattice(&m, &int_vec(&[1, 2, 3])).is_err());
    }

    #[test]
    fn obstruction_certificate() {
        let m = IntMatrix::from_rows(&[[2]]);
        let obs = snf(&m).solve(&int_vec(&[3])).unwrap().unwrap_err();
        assert_eq!(obs.divisor, BigInt::from(2));
        assert!(!obs.value.is_multiple_of(&obs.divisor));
    }

    #[test]
    fn lattice_membership_examples() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert!(in_column_lattice(&m, &int_vec(&[4, 3])).unwrap());
        assert!(!in_column_lattice(&m, &int_vec(&[1, 0])).unwrap());
        let empty = IntMatrix::zeros(2, 0);
        assert!(in_column_lattice(&empty, &int_vec(&[0, 0])).unwrap());
        assert!(!in_column_lattice(&empty, &int_vec(&[0, 1])).unwrap());
    }

    #[test]
    fn kernel_and_lattice_bases() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let s = snf(&m);
        let k = s.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        let b = s.lattice_basis();
        assert_eq!(b.cols(), 1);
        for j in 0..m.cols() {
            assert!(in_column_lattice(&b, &m.column(j)).unwrap());
        }
    }

    #[test]
    fn coefficient_growth_does_not_wrap() {
        let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let mut m = IntMatrix::from_rows(&[[1, 0], [0, 1]]);
        m.set(0, 1, big.clone());
        m.set(1, 0, big.clone() + 1);
        let s = snf(&m);
        check_identity(&m, &s);
        assert_eq!(s.diagonal[0], BigInt::one());
    }
}
