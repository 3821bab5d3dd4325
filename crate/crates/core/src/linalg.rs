//! Dense Gaussian elimination over a finite field.

use crate::scalars::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    /// Builds a matrix whose columns are the given vectors (all of length
    /// `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Fe>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Fe>]) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn apply(&self, field: &Field, v: &[Fe]) -> Vec<Fe> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = field.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), field.mul(f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    m.clone().rref(field).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel(field: &Field, m: &Matrix) -> Vec<Vec<Fe>> {
    let mut r = m.clone();
    let pivots = r.rref(field);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Fe::ZERO; m.cols];
            v[fc] = Fe::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(r.get(row, fc));
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, if any.
pub fn solve(field: &Field, m: &Matrix, b: &[Fe]) -> Option<Vec<Fe>> {
    debug_assert_eq!(b.len(), m.rows);
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for (i, &bi) in b.iter().enumerate() {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, m.cols, bi);
    }
    let pivots = aug.rref(field);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Fe::ZERO; m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(row, m.cols);
    }
    Some(x)
}

/// A basis (in reduced echelon form) of the span of `vectors`, each of
/// length `len`.
pub fn span_basis(field: &Field, len: usize, vectors: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let mut m = Matrix::from_rows(len, vectors);
    let r = m.rref(field).len();
    (0..r).map(|i| m.data[i * len..(i + 1) * len].to_vec()).collect()
}
