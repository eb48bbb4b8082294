//! Dense exact linear algebra over the ground field.

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_int_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
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

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
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
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
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
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankKernelImage {
    pub rank: usize,
    pub kernel: Vec<Vec<Scalar>>,
    pub image: Vec<Vec<Scalar>>,
}

/// Rank with explicit kernel and image bases; `rank + kernel.len() == cols`.
pub fn rank_kernel_image(m: &Matrix) -> RankKernelImage {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![m.field.zero(); m.cols];
            v[fc] = m.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, fc);
            }
            v
        })
        .collect();
    let image = pivots.iter().map(|&c| m.column(c)).collect();
    RankKernelImage { rank: pivots.len(), kernel, image }
}

/// dim(kernel) - dim(image), after checking image ⊆ kernel.
pub fn quotient_dimension(kernel: &[Vec<Scalar>], image: &[Vec<Scalar>], ambient: usize, field: Field) -> Result<usize> {
    let k = Matrix::from_columns(field, ambient, kernel).rank();
    let i = Matrix::from_columns(field, ambient, image).rank();
    let mut both: Vec<Vec<Scalar>> = kernel.to_vec();
    both.extend_from_slice(image);
    if Matrix::from_columns(field, ambient, &both).rank() != k {
        return Err(Error::Consistency("image is not contained in kernel (the differential does not square to zero)".into()));
    }
    Ok(k - i)
}

/// Vectors from `kernel` completing a basis of span(image) to one of span(kernel).
pub fn complement_basis(kernel: &[Vec<Scalar>], image: &[Vec<Scalar>], ambient: usize, field: Field) -> Vec<Vec<Scalar>> {
    let mut acc: Vec<Vec<Scalar>> = image.to_vec();
    let mut rank = Matrix::from_columns(field, ambient, &acc).rank();
    let mut out = Vec::new();
    for v in kernel {
        acc.push(v.clone());
        let r = Matrix::from_columns(field, ambient, &acc).rank();
        if r > rank {
            rank = r;
            out.push(v.clone());
        } else {
            acc.pop();
        }
    }
    out
}

/// A homogeneous linear map between graded bases.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMapMatrix {
    pub domain_degrees: Vec<i64>,
    pub codomain_degrees: Vec<i64>,
    pub shift: i64,
    pub matrix: Matrix,
}

impl LinearMapMatrix {
    /// Every nonzero entry maps a domain vector of degree d into degree d + shift.
    pub fn is_homogeneous(&self) -> bool {
        (0..self.matrix.rows()).all(|i| {
            (0..self.matrix.cols())
                .all(|j| self.matrix.get(i, j).is_zero() || self.codomain_degrees[i] == self.domain_degrees[j] + self.shift)
        })
    }
}
