use std::fmt;

use rand::Rng;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Dense row-major matrix over a prime field.
///
/// Linear maps act on column vectors: a map `V -> W` is stored as a
/// `dim W x dim V` matrix. Subspaces are stored as matrices whose rows
/// span them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw entries, reducing them mod p.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|x| field.reduce(x)).collect();
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row length");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(x);
            }
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(field.reduce(f(i, j)));
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A single column vector.
    pub fn column(field: PrimeField, v: &[u32]) -> Self {
        Self::from_vec(field, v.len(), 1, v.to_vec()).unwrap()
    }

    pub fn random<R: Rng>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let p = field.p();
        Self {
            field,
            rows,
            cols,
            data: (0..rows * cols).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = self.field.reduce(x);
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        assert_eq!(self.field, other.field);
        let f = self.field;
        let n = other.cols;
        let mut out = Mat::zeros(f, self.rows, n);
        if n == 0 {
            return out;
        }
        if f.p() == 2 {
            for i in 0..self.rows {
                let dst = &mut out.data[i * n..(i + 1) * n];
                for k in 0..self.cols {
                    if self.data[i * self.cols + k] != 0 {
                        let src = &other.data[k * n..(k + 1) * n];
                        for (d, s) in dst.iter_mut().zip(src) {
                            *d ^= *s;
                        }
                    }
                }
            }
            return out;
        }
        // each term is below 2^32, so u64 accumulation is safe for any realistic width
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let src = &other.data[k * n..(k + 1) * n];
                for (d, &s) in acc.iter_mut().zip(src) {
                    *d += (a * s) as u64;
                }
            }
            let dst = &mut out.data[i * n..(i + 1) * n];
            for (d, a) in dst.iter_mut().zip(&acc) {
                *d = f.reduce_u64(*a);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = 0u64;
                for (&a, &b) in row.iter().zip(v) {
                    acc += (a * b) as u64;
                }
                f.reduce_u64(acc)
            })
            .collect()
    }

    /// Row vector times matrix: `v^T * self`.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape");
        let f = self.field;
        let mut acc = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (d, &s) in acc.iter_mut().zip(self.row(i)) {
                *d += (a * s) as u64;
            }
        }
        acc.into_iter().map(|x| f.reduce_u64(x)).collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        let c = f.reduce(c);
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Mat, c: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let c = f.reduce(c);
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.mul_add(*a, b, c);
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row counts");
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            let dst = out.row_mut(i);
            dst[..self.cols].copy_from_slice(self.row(i));
            dst[self.cols..].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn vstack_all(field: PrimeField, cols: usize, parts: &[&Mat]) -> Mat {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column counts");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(i));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, k| self.get(i, idx[k]))
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            let c = self.cols;
            self.data[(r0 + i) * c + c0..(r0 + i) * c + c0 + b.cols].copy_from_slice(b.row(i));
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        let f = self.field;
        (0..self.rows).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Reinterprets the entries as a single row (row-major flattening).
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows.min(24) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(32)])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn product_and_transpose() {
        let a = Mat::from_rows(f(5), 2, &[[1, 2], [3, 4]]);
        let b = Mat::from_rows(f(5), 2, &[[0, 1], [1, 0]]);
        assert_eq!(a.mul(&b), Mat::from_rows(f(5), 2, &[[2, 1], [4, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul_vec(&[1, 1]), vec![3, 2]);
        assert_eq!(a.vec_mul(&[1, 1]), vec![4, 1]);
    }

    #[test]
    fn gf2_product_matches_generic_path() {
        let a = Mat::from_rows(f(2), 3, &[[1, 1, 0], [0, 1, 1]]);
        let b = Mat::from_rows(f(2), 2, &[[1, 0], [1, 1], [0, 1]]);
        assert_eq!(a.mul(&b), Mat::from_rows(f(2), 2, &[[0, 1], [1, 0]]));
    }

    #[test]
    fn power_and_trace() {
        let a = Mat::from_rows(f(3), 2, &[[1, 1], [0, 1]]);
        assert_eq!(a.pow(3), Mat::identity(f(3), 2));
        assert_eq!(a.trace(), 2);
    }
}
