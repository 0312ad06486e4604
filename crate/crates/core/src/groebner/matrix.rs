use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Ring};

/// A map of twisted free modules `⊕ R(-c_j) → ⊕ R(-r_i)`, stored by columns.
///
/// Twists are generator degrees: source generator `j` has degree
/// `col_twists[j]`, target generator `i` has degree `row_twists[i]`, so a
/// graded entry `(i, j)` is homogeneous of degree `col_twists[j] - row_twists[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Arc<Ring>,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
    cols: Vec<Vec<Polynomial>>,
}

pub type FreeModuleMatrix = Matrix;

/// Degree of a column vector relative to row twists, or `None` for zero.
pub fn column_degree(col: &[Polynomial], row_twists: &[i64]) -> Option<i64> {
    col.iter()
        .zip(row_twists)
        .filter_map(|(p, t)| p.max_degree().map(|d| d + t))
        .max()
}

impl Matrix {
    pub fn new(
        ring: &Arc<Ring>,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
        cols: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if cols.len() != col_twists.len() {
            return Err(Error::Shape(format!(
                "{} columns but {} column twists",
                cols.len(),
                col_twists.len()
            )));
        }
        for c in &cols {
            if c.len() != row_twists.len() {
                return Err(Error::Shape(format!(
                    "column of length {} in a matrix with {} rows",
                    c.len(),
                    row_twists.len()
                )));
            }
            if c.iter().any(|p| !p.ring().same(ring)) {
                return Err(Error::MixedRings);
            }
        }
        Ok(Matrix {
            ring: ring.clone(),
            row_twists,
            col_twists,
            cols,
        })
    }

    /// Columns with twists inferred from their degrees (zero columns get 0).
    pub fn from_columns(ring: &Arc<Ring>, row_twists: Vec<i64>, cols: Vec<Vec<Polynomial>>) -> Result<Self> {
        let col_twists = cols
            .iter()
            .map(|c| column_degree(c, &row_twists).unwrap_or(0))
            .collect();
        Self::new(ring, row_twists, col_twists, cols)
    }

    /// Row-major entries, untwisted target, inferred source twists.
    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let cols = (0..ncols)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self::from_columns(ring, vec![0; nrows], cols)
    }

    pub fn zero(ring: &Arc<Ring>, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Self {
        let cols = col_twists
            .iter()
            .map(|_| vec![Polynomial::zero(ring); row_twists.len()])
            .collect();
        Matrix {
            ring: ring.clone(),
            row_twists,
            col_twists,
            cols,
        }
    }

    pub fn identity(ring: &Arc<Ring>, twists: Vec<i64>) -> Self {
        let mut m = Self::zero(ring, twists.clone(), twists);
        for j in 0..m.cols.len() {
            m.cols[j][j] = Polynomial::one(ring);
        }
        m
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.row_twists.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: Polynomial) {
        self.cols[j][i] = p;
    }

    pub fn column(&self, j: usize) -> &[Polynomial] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.cols
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows())
            .map(|i| self.cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }

    /// Every entry is zero or homogeneous of the degree its twists demand.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| {
            c.iter().enumerate().all(|(i, p)| {
                p.is_zero()
                    || (p.is_homogeneous() && p.degree() == Some(self.col_twists[j] - self.row_twists[i]))
            })
        })
    }

    pub fn with_twists(&self, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Result<Self> {
        Self::new(&self.ring, row_twists, col_twists, self.cols.clone())
    }

    /// `self · other`, entries reduced modulo the ring's quotient ideal.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if !self.ring.same(&other.ring) {
            return Err(Error::MixedRings);
        }
        if self.ncols() != other.nrows() {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let cols = other
            .cols
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring: self.ring.clone(),
            row_twists: self.row_twists.clone(),
            col_twists: other.col_twists.clone(),
            cols,
        })
    }

    /// Image of a column vector.
    pub fn apply(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.ncols() {
            return Err(Error::Shape("vector length does not match column count".into()));
        }
        let mut out = vec![Polynomial::zero(&self.ring); self.nrows()];
        for (c, a) in self.cols.iter().zip(v) {
            if a.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(c) {
                if !e.is_zero() {
                    *o = o.try_add(&e.mul(a)?)?;
                }
            }
        }
        crate::groebner::reduce_column_mod_ring(&self.ring, &mut out)?;
        Ok(out)
    }

    /// The dual map: rows and columns swap, twists negate.
    pub fn transpose(&self) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            row_twists: self.col_twists.iter().map(|t| -t).collect(),
            col_twists: self.row_twists.iter().map(|t| -t).collect(),
            cols: self.rows(),
        }
    }

    pub fn neg(&self) -> Matrix {
        let mut m = self.clone();
        for c in &mut m.cols {
            for p in c.iter_mut() {
                *p = p.neg();
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        let mut m = self.clone();
        for (c, d) in m.cols.iter_mut().zip(&other.cols) {
            for (p, q) in c.iter_mut().zip(d) {
                *p = p.try_add(q)?;
            }
        }
        Ok(m)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    /// Side-by-side concatenation; all parts share the target.
    pub fn hcat(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().ok_or_else(|| Error::Shape("empty concatenation".into()))?;
        let mut m = Matrix {
            ring: first.ring.clone(),
            row_twists: first.row_twists.clone(),
            col_twists: Vec::new(),
            cols: Vec::new(),
        };
        for p in parts {
            if p.row_twists.len() != m.row_twists.len() {
                return Err(Error::Shape("hcat of different row counts".into()));
            }
            m.col_twists.extend_from_slice(&p.col_twists);
            m.cols.extend(p.cols.iter().cloned());
        }
        Ok(m)
    }

    /// Block diagonal sum.
    pub fn direct_sum(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().ok_or_else(|| Error::Shape("empty direct sum".into()))?;
        let ring = first.ring.clone();
        let row_twists: Vec<i64> = parts.iter().flat_map(|p| p.row_twists.iter().copied()).collect();
        let mut col_twists = Vec::new();
        let mut cols = Vec::new();
        let mut off = 0;
        for p in parts {
            for (j, c) in p.cols.iter().enumerate() {
                let mut col = vec![Polynomial::zero(&ring); row_twists.len()];
                col[off..off + c.len()].clone_from_slice(c);
                cols.push(col);
                col_twists.push(p.col_twists[j]);
            }
            off += p.nrows();
        }
        Matrix::new(&ring, row_twists, col_twists, cols)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            row_twists: self.row_twists.clone(),
            col_twists: idx.iter().map(|&j| self.col_twists[j]).collect(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            row_twists: idx.iter().map(|&i| self.row_twists[i]).collect(),
            col_twists: self.col_twists.clone(),
            cols: self
                .cols
                .iter()
                .map(|c| idx.iter().map(|&i| c[i].clone()).collect())
                .collect(),
        }
    }

    /// Entries replaced by their normal forms modulo the ring's quotient ideal.
    pub fn reduced(&self) -> Result<Matrix> {
        let mut m = self.clone();
        for c in &mut m.cols {
            crate::groebner::reduce_column_mod_ring(&self.ring, c)?;
        }
        Ok(m)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", parts.join(", "))?;
        }
        write!(f, "]")
    }
}
