//! Dense matrices over an exact field.

use crate::field::{Field, FieldElement};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from rows; every row must have `cols` entries.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<FieldElement>>) -> Matrix {
        let n = rows.len();
        let data: Vec<FieldElement> = rows
            .into_iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                r
            })
            .collect();
        Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, cols: &[Vec<FieldElement>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Matrix::zeros(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + &(a * b);
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "dimension mismatch"
        );
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        (0..e).fold(Matrix::identity(&self.field, self.rows), |acc, _| {
            acc.mul(self)
        })
    }

    /// Places `o` to the right of `self`.
    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows, "dimension mismatch");
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    /// Places `o` below `self`.
    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rref(&self) -> Rref {
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
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if !v.is_zero() {
                        let nv = m.get(i, j) - &(&f * v);
                        m.set(i, j, nv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `A x = b`.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let aug = self.hstack(&Matrix::from_columns(&self.field, self.rows, &[b.to_vec()]));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let Rref { matrix, pivots } = self.hstack(&Matrix::identity(&self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, matrix.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Linearly independent subset spanning the same space (rows of the RREF).
pub fn span_basis(
    field: &Field,
    dim: usize,
    vectors: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let Rref { matrix, pivots } = Matrix::from_rows(field, dim, vectors.to_vec()).rref();
    (0..pivots.len()).map(|r| matrix.row(r).to_vec()).collect()
}

pub fn in_span(field: &Field, dim: usize, basis: &[Vec<FieldElement>], v: &[FieldElement]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    Matrix::from_columns(field, dim, basis).solve(v).is_some()
}

/// Basis of the intersection of two subspaces given by spanning sets.
pub fn intersect(
    field: &Field,
    dim: usize,
    a: &[Vec<FieldElement>],
    b: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i − Σ y_j b_j = 0 and map x back.
    let neg: Vec<Vec<FieldElement>> = b
        .iter()
        .map(|v| v.iter().map(|x| -x.clone()).collect())
        .collect();
    let mut cols = a.to_vec();
    cols.extend(neg);
    let m = Matrix::from_columns(field, dim, &cols);
    let vs: Vec<Vec<FieldElement>> = m
        .kernel()
        .into_iter()
        .map(|k| {
            (0..dim)
                .map(|r| {
                    a.iter()
                        .zip(&k)
                        .fold(field.zero(), |acc, (v, x)| &acc + &(&v[r] * x))
                })
                .collect()
        })
        .collect();
    span_basis(field, dim, &vs)
}
