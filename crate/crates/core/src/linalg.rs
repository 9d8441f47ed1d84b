//! Exact dense linear algebra on finite-dimensional graded pieces.

use thiserror::Error;

use crate::corealg::{Field, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vector {0} of the span is not contained in the span of the space")]
    NotContained(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
}

/// A dense matrix of scalars with optional basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Vector>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl ScalarMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> ScalarMatrix {
        ScalarMatrix {
            field,
            rows,
            cols,
            entries: vec![vec![field.zero(); cols]; rows],
            row_labels: (0..rows).map(|i| format!("r{i}")).collect(),
            col_labels: (0..cols).map(|j| format!("c{j}")).collect(),
        }
    }

    pub fn identity(field: Field, n: usize) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.entries[i] = r;
        }
        m
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.entries[i][j] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> ScalarMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        ScalarMatrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i]
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j][i] = self.entries[i][j].clone();
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        self.entries
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (a, b) in row.iter().zip(v) {
                    acc.add_assign_mul(a, b);
                }
                acc
            })
            .collect()
    }
}

/// Result of [`row_reduce`].
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rank: usize,
    /// Pivot column of each nonzero row of `rref`, increasing.
    pub pivots: Vec<usize>,
    /// Reduced row echelon form (leading ones, pivot columns cleared); only nonzero rows.
    pub rref: Vec<Vector>,
    /// Kernel basis, one vector per non-pivot column, in increasing column order.
    pub kernel: Vec<Vector>,
}

/// Gauss-Jordan elimination, taking the first nonzero entry as pivot.
pub fn row_reduce(m: &ScalarMatrix) -> RowReduction {
    let field = m.field;
    let mut rows: Vec<Vector> = m.entries.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for v in rows[r].iter_mut().skip(c) {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..m.cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[f] = field.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if !row[f].is_zero() {
                v[p] = -&row[f];
            }
        }
        kernel.push(v);
    }
    RowReduction { rank: r, pivots, rref: rows, kernel }
}

/// An incrementally built subspace kept in echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<(usize, Vector)>,
}

impl Subspace {
    pub fn new(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        let r: Vector = r.iter().map(|x| x * &inv).collect();
        self.rows.push((p, r));
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Picks vectors from `space` (first fit, in order) extending a basis of `span(span)` to a
/// basis of `span(space)`. Fails if some vector of `span` lies outside `span(space)`.
pub fn complement_basis(field: Field, span: &[Vector], space: &[Vector]) -> Result<Vec<Vector>, LinalgError> {
    complement_indices(field, span, space).map(|idx| idx.into_iter().map(|i| space[i].clone()).collect())
}

/// Indices into `space` of the vectors chosen by [`complement_basis`].
pub fn complement_indices(field: Field, span: &[Vector], space: &[Vector]) -> Result<Vec<usize>, LinalgError> {
    let n = span.first().or(space.first()).map_or(0, |v| v.len());
    let mut whole = Subspace::new(field, n);
    for v in space {
        whole.insert(v);
    }
    let mut sub = Subspace::new(field, n);
    for (i, v) in span.iter().enumerate() {
        if !whole.contains(v) {
            return Err(LinalgError::NotContained(i));
        }
        sub.insert(v);
    }
    let mut picked = Vec::new();
    for (i, v) in space.iter().enumerate() {
        if sub.insert(v) {
            picked.push(i);
        }
    }
    Ok(picked)
}

/// Some x with m·x = b, or None when b is outside the column space.
pub fn solve(m: &ScalarMatrix, b: &[Scalar]) -> Option<Vector> {
    let field = m.field;
    let cols = m.cols;
    let rows: Vec<Vector> = m.entries.iter().zip(b).map(|(r, c)| {
        let mut r = r.clone();
        r.push(c.clone());
        r
    }).collect();
    let rr = row_reduce(&ScalarMatrix::from_rows(field, cols + 1, rows));
    if rr.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (row, &p) in rr.rref.iter().zip(&rr.pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}
