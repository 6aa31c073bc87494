//! Dense matrices over a cyclotomic field with exact row reduction.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::cyclofield::Cyc;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<Cyc>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Matrix {
        Matrix {
            rows,
            cols,
            conductor,
            data: vec![Cyc::zero(conductor); rows * cols],
        }
    }

    pub fn identity(dim: usize, conductor: u32) -> Matrix {
        let mut m = Matrix::zeros(dim, dim, conductor);
        for i in 0..dim {
            m.set(i, i, Cyc::one(conductor));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyc>>, conductor: u32) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Usage("ragged matrix rows".into()));
            }
            for x in r {
                if x.conductor() != conductor {
                    return Err(Error::ConductorMismatch {
                        left: conductor,
                        right: x.conductor(),
                    });
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            conductor,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Cyc>], dim: usize, conductor: u32) -> Matrix {
        let mut m = Matrix::zeros(dim, columns.len(), conductor);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>], conductor: u32) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Cyc::from_int(x, conductor)).collect())
            .collect();
        Matrix::from_rows(rows, conductor).expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Cyc) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<Cyc> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Cyc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyc>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyc::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Cyc) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols, self.conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyc]) -> Vec<Cyc> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Cyc::zero(self.conductor), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        &acc + &(a * &v[j])
                    }
                })
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Cyc {
        (0..self.rows.min(self.cols)).fold(Cyc::zero(self.conductor), |acc, i| &acc + self.get(i, i))
    }

    pub fn embed(&self, conductor: u32) -> Result<Matrix> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            conductor,
            data: self
                .data
                .iter()
                .map(|x| x.embed(conductor))
                .collect::<Result<_>>()?,
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if !rj.is_zero() {
                        let v = m.get(i, j) - &(&f * rj);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_space_basis(&self) -> Vec<Vec<Cyc>> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|j| self.column(j)).collect()
    }
}

/// Rank of a family of vectors of length `dim`.
pub fn span_rank(vectors: &[Vec<Cyc>], dim: usize, conductor: u32) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(vectors, dim, conductor).rank()
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[Vec<Cyc>], b: &[Vec<Cyc>], dim: usize, conductor: u32) -> bool {
    let ra = span_rank(a, dim, conductor);
    let rb = span_rank(b, dim, conductor);
    let joint: Vec<Vec<Cyc>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(&joint, dim, conductor) == ra
}

/// Whether `v` is a scalar multiple of `w` (both nonzero).
pub fn proportional(v: &[Cyc], w: &[Cyc]) -> bool {
    let Some(k) = w.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let Ok(ratio) = v[k].try_div(&w[k]) else {
        return false;
    };
    !ratio.is_zero() && v.iter().zip(w).all(|(a, b)| a == &(b * &ratio))
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix[{}] {}x{}", self.conductor, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
