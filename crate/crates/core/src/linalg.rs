//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are row-major and "span" always means row span. Elimination is
//! plain pivoting Gaussian elimination on sparse rows with arbitrary-precision
//! rationals, so every rank and membership answer is exact.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// A sparse row: strictly increasing column indices, nonzero values.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Empty matrix with `cols` columns, to be filled with [`push_row`](Self::push_row).
    pub fn with_cols(cols: usize) -> Self {
        SparseMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::with_cols(n);
        for i in 0..n {
            m.data.push(vec![(i, Rational::one())]);
        }
        m.rows = n;
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::with_cols(cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            m.push_dense_row(r)?;
        }
        Ok(m)
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            if r >= rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: r + 1,
                });
            }
            if c >= cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: c + 1,
                });
            }
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows, cols, data })
    }

    pub fn push_dense_row(&mut self, row: &[Rational]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        self.data.push(sparse);
        self.rows += 1;
        Ok(())
    }

    /// Appends a row given as column/value pairs in any order; duplicates are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> Result<()> {
        let mut acc = BTreeMap::new();
        for (c, v) in entries {
            if c >= self.cols {
                return Err(Error::DimensionMismatch {
                    expected: self.cols,
                    found: c + 1,
                });
            }
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        self.data
            .push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.rows += 1;
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r]
            .binary_search_by_key(&c, |(col, _)| *col)
            .map(|i| self.data[r][i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = SparseMatrix::with_cols(other.cols);
        for row in &self.data {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                }
            }
            out.data
                .push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            out.rows += 1;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Multiplies row `r` by a nonzero scalar.
    pub fn scale_row(&mut self, r: usize, factor: &Rational) {
        assert!(!factor.is_zero(), "row scaling factor must be nonzero");
        for (_, v) in &mut self.data[r] {
            *v *= factor;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|(c, v)| format!("{c}:{v}")).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained row-echelon basis of a subspace of `K^cols`.
///
/// Every stored row has a distinct leading column, its pivot, with leading
/// coefficient 1. Reducing a vector against the basis clears all pivot
/// columns, so the remainder is a canonical normal form modulo the span.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<SparseRow>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            pivot_of_col: vec![None; cols],
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of_col
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|_| c))
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    /// Reduces `v` modulo the span; the result has zeros in every pivot column.
    pub fn reduce(&self, v: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut v = v;
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(c, _)| self.pivot_of_col[**c].is_some())
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, factor)) = next else { break };
            let row = &self.rows[self.pivot_of_col[col].unwrap()];
            for (c, x) in row {
                let entry = v.entry(*c).or_insert_with(Rational::zero);
                *entry -= &factor * x;
                if entry.is_zero() {
                    v.remove(c);
                }
            }
            cursor = col + 1;
        }
        v
    }

    /// Inserts a vector; returns `true` when it was independent of the current span.
    pub fn insert(&mut self, v: BTreeMap<usize, Rational>) -> bool {
        let reduced = self.reduce(v);
        let Some((&lead, lead_val)) = reduced.iter().next() else {
            return false;
        };
        let inv = lead_val.recip();
        let row: SparseRow = reduced.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert_row(&mut self, row: &[(usize, Rational)]) -> bool {
        self.insert(row.iter().cloned().collect())
    }

    pub fn contains(&self, v: BTreeMap<usize, Rational>) -> bool {
        self.reduce(v).is_empty()
    }
}

fn row_map(row: &[(usize, Rational)]) -> BTreeMap<usize, Rational> {
    row.iter().cloned().collect()
}

/// Exact rank of `m` over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    echelon(m).rank()
}

/// Row-echelon basis of the row span of `m`. Rows are processed sparsest first.
pub fn echelon(m: &SparseMatrix) -> EchelonBasis {
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.sort_by_key(|&r| m.row(r).len());
    let mut basis = EchelonBasis::new(m.cols());
    for r in order {
        if !m.row(r).is_empty() {
            basis.insert(row_map(m.row(r)));
            if basis.rank() == m.cols() {
                break;
            }
        }
    }
    basis
}

/// Whether `v` lies in the row span of `basis`.
pub fn is_in_span(v: &[Rational], basis: &SparseMatrix) -> Result<bool> {
    if v.len() != basis.cols() {
        return Err(Error::DimensionMismatch {
            expected: basis.cols(),
            found: v.len(),
        });
    }
    let vec: BTreeMap<usize, Rational> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (c, x.clone()))
        .collect();
    if vec.is_empty() {
        return Ok(true);
    }
    Ok(echelon(basis).contains(vec))
}

/// `ambient_dim - rank(subspace)`.
pub fn quotient_dim(ambient_dim: usize, subspace: &SparseMatrix) -> Result<usize> {
    if subspace.cols() != ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: ambient_dim,
            found: subspace.cols(),
        });
    }
    Ok(ambient_dim - rank(subspace))
}

/// Small dense rational matrix, used for evaluating elements in representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
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

    pub fn scale(&self, factor: &Rational) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &DenseMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &DenseMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
