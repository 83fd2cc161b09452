//! Dense integer matrices, Smith normal form, and the integer expansions of matrices over
//! the order `R`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic_order::{CurveParams, RingElement};
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut out = Self::zeros(size, size);
        for i in 0..size {
            out[(i, i)] = BigInt::one();
        }
        out
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Convenience constructor from nested rows of machine integers.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// The submatrix formed by the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        IntMatrix { rows: rows.len(), cols: self.cols, entries }
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(l, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += factor * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += factor * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// The factors greater than one: the structure of the torsion of the cokernel.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Order of the torsion subgroup of the cokernel.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

/// Smith normal form by elimination, always pivoting on the entry of least absolute value.
pub fn smith_form(matrix: &IntMatrix) -> SmithForm {
    let mut a = matrix.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&a, t..rows, t..cols) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);

        loop {
            let pivot = a[(t, t)].clone();
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &-q);
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &-q);
            }

            // remainders left in the pivot row or column: move the smallest one in
            let col_rest = min_nonzero(&a, t + 1..rows, t..t + 1);
            let row_rest = min_nonzero(&a, t..t + 1, t + 1..cols);
            let smaller = match (col_rest, row_rest) {
                (Some(x), Some(y)) => Some(if a[x].abs() <= a[y].abs() { x } else { y }),
                (x, y) => x.or(y),
            };
            if let Some((i, j)) = smaller {
                a.swap_rows(t, i);
                a.swap_cols(t, j);
                continue;
            }

            // pivot row and column are clear; the pivot must divide the rest
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => a.add_row_multiple(t, i, &BigInt::one()),
                None => break,
            }
        }
        factors.push(a[(t, t)].abs());
    }

    debug_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    SmithForm { rank: factors.len(), invariant_factors: factors }
}

fn min_nonzero(
    a: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|b| v.abs() < a[b].abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Order of the torsion subgroup of `Z^rows / image(matrix)`.
pub fn torsion_order(matrix: &IntMatrix) -> BigInt {
    smith_form(matrix).torsion_order()
}

/// A `k x n` matrix over the order of a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    curve: CurveParams,
    k: usize,
    n: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn new(curve: CurveParams, k: usize, n: usize, entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() != k * n {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {k}x{n} matrix",
                entries.len()
            )));
        }
        Ok(RingMatrix { curve, k, n, entries })
    }

    /// Builds a matrix from rows of `(x, y)` coordinate pairs.
    pub fn from_coords(curve: CurveParams, rows: &[Vec<(i64, i64)>], n: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&(x, y)| RingElement::new(x, y)));
        }
        Self::new(curve, rows.len(), n, entries)
    }

    pub fn zeros(curve: CurveParams, k: usize, n: usize) -> Self {
        RingMatrix { curve, k, n, entries: vec![RingElement::zero(); k * n] }
    }

    pub fn identity(curve: CurveParams, size: usize) -> Self {
        let mut out = Self::zeros(curve, size, size);
        for i in 0..size {
            out.entries[i * size + i] = RingElement::one();
        }
        out
    }

    pub fn curve(&self) -> &CurveParams {
        &self.curve
    }

    /// Number of rows (divisors).
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of columns (ambient dimension).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(RingElement::is_zero)
    }

    /// The integer matrix of the map on `<1, tau>`-coordinates, in block layout: all
    /// `1`-coordinates first, then all `tau`-coordinates.
    pub fn expand_lambda(&self) -> IntMatrix {
        self.expand_with(CurveParams::lambda_block)
    }

    /// The integer matrix of the map on `<1, N tau>`-coordinates, in block layout.
    pub fn expand_order(&self) -> IntMatrix {
        self.expand_with(CurveParams::order_block)
    }

    fn expand_with(&self, block: fn(&CurveParams, &RingElement) -> [[BigInt; 2]; 2]) -> IntMatrix {
        let (k, n) = (self.k, self.n);
        let mut out = IntMatrix::zeros(2 * k, 2 * n);
        for i in 0..k {
            for j in 0..n {
                let b = block(&self.curve, self.get(i, j));
                let [[b00, b01], [b10, b11]] = b;
                out[(i, j)] = b00;
                out[(i, n + j)] = b01;
                out[(k + i, j)] = b10;
                out[(k + i, n + j)] = b11;
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> RingMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.n {
            for i in 0..self.k {
                entries.push(self.curve.conj(self.get(i, j)));
            }
        }
        RingMatrix { curve: self.curve.clone(), k: self.n, n: self.k, entries }
    }

    /// The rows indexed by `subset`, in ascending order.
    pub fn row_select(&self, subset: Subset) -> Result<RingMatrix> {
        subset.check_within(self.k)?;
        let mut entries = Vec::with_capacity(subset.len() * self.n);
        for i in subset.indices() {
            entries.extend_from_slice(self.row(i));
        }
        Ok(RingMatrix { curve: self.curve.clone(), k: subset.len(), n: self.n, entries })
    }

    /// The rows with the given zero-based indices, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<RingMatrix> {
        let mut entries = Vec::with_capacity(rows.len() * self.n);
        for &i in rows {
            if i >= self.k {
                return Err(Error::RowOutOfRange { index: i, rows: self.k });
            }
            entries.extend_from_slice(self.row(i));
        }
        Ok(RingMatrix { curve: self.curve.clone(), k: rows.len(), n: self.n, entries })
    }

    /// `self` stacked on top of `below`.
    pub fn vstack(&self, below: &RingMatrix) -> Result<RingMatrix> {
        if self.curve != below.curve {
            return Err(Error::ShapeMismatch("matrices over different curves".into()));
        }
        if self.n != below.n {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {} columns",
                self.n, below.n
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        Ok(RingMatrix { curve: self.curve.clone(), k: self.k + below.k, n: self.n, entries })
    }

    /// Matrix product over `R`.
    pub fn mul(&self, rhs: &RingMatrix) -> Result<RingMatrix> {
        if self.curve != rhs.curve || self.n != rhs.k {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.k, self.n, rhs.k, rhs.n
            )));
        }
        let c = &self.curve;
        let mut out = RingMatrix::zeros(c.clone(), self.k, rhs.n);
        for i in 0..self.k {
            for j in 0..rhs.n {
                let mut acc = RingElement::zero();
                for l in 0..self.n {
                    acc = c.add(&acc, &c.mul(self.get(i, l), rhs.get(l, j)));
                }
                out.entries[i * rhs.n + j] = acc;
            }
        }
        Ok(out)
    }
}
