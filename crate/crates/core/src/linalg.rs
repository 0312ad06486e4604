//! Dense linear algebra over a field, for graded pieces.

use crate::field::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    data: Vec<FieldElem>,
}

impl DenseMatrix {
    pub fn zeros(field: &Field, nrows: usize, ncols: usize) -> Self {
        DenseMatrix {
            field: field.clone(),
            nrows,
            ncols,
            data: vec![field.zero(); nrows * ncols],
        }
    }

    pub fn from_columns(field: &Field, nrows: usize, cols: Vec<Vec<FieldElem>>) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            for (i, v) in c.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.ncols, other.nrows);
        let k = &self.field;
        let mut out = Self::zeros(k, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for l in 0..self.ncols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(l, j);
                    if !k.is_zero(b) {
                        let v = k.add(out.get(i, j), &k.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn rank(&self) -> usize {
        let k = &self.field;
        let mut a = self.data.clone();
        let (n, m) = (self.nrows, self.ncols);
        let mut rank = 0;
        for col in 0..m {
            if rank == n {
                break;
            }
            let Some(p) = (rank..n).find(|&r| !k.is_zero(&a[r * m + col])) else {
                continue;
            };
            if p != rank {
                for j in 0..m {
                    a.swap(p * m + j, rank * m + j);
                }
            }
            let inv = k.inv(&a[rank * m + col]).expect("pivot");
            for r in rank + 1..n {
                let f = &a[r * m + col];
                if k.is_zero(f) {
                    continue;
                }
                let f = k.mul(f, &inv);
                for j in col..m {
                    let v = k.sub(&a[r * m + j], &k.mul(&f, &a[rank * m + j]));
                    a[r * m + j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows == self.ncols && self.rank() == self.nrows
    }
}
