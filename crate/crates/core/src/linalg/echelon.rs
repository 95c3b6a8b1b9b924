//! Row reduction and the derived operations: rank, kernels, linear solves and
//! subspace arithmetic.
//!
//! Elimination is deterministic: columns are scanned left to right and the
//! first row with a nonzero entry in the current column becomes the pivot.
//! Over `F_2` rows are bit-packed into `u64` words; the packed path returns
//! exactly the same reduced matrix as the generic one.

use super::field::PrimeField;
use super::mat::Mat;
use crate::error::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Row-equivalent matrix in reduced row echelon form (same shape as the input).
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of the echelon form.
    pub fn row_basis(&self) -> Mat {
        let idx: Vec<usize> = (0..self.rank()).collect();
        self.mat.select_rows(&idx)
    }
}

pub fn row_reduce(m: &Mat) -> Rref {
    let mut mat = m.clone();
    let pivots = rref_in_place(&mut mat);
    Rref { mat, pivots }
}

pub fn rank(m: &Mat) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    if m.field().p() == 2 {
        let mut packed = Packed::from_mat(m);
        return packed.reduce(false).len();
    }
    row_reduce(m).rank()
}

/// Reduces `m` in place and returns the pivot columns.
pub fn rref_in_place(m: &mut Mat) -> Vec<usize> {
    if m.field().p() == 2 {
        let mut packed = Packed::from_mat(m);
        let pivots = packed.reduce(true);
        packed.write_back(m);
        return pivots;
    }
    let f = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            swap_rows(m, pr, r);
        }
        let inv = f.inv(m.get(r, c));
        if inv != 1 {
            for x in &mut m.row_mut(r)[c..] {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row: Vec<u32> = m.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let a = m.get(i, c);
            if a == 0 {
                continue;
            }
            let neg = f.neg(a);
            let row = &mut m.row_mut(i)[c..];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = f.mul_add(*x, neg, y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn swap_rows(m: &mut Mat, a: usize, b: usize) {
    let cols = m.cols();
    for j in 0..cols {
        let x = m.get(a, j);
        let y = m.get(b, j);
        m.row_mut(a)[j] = y;
        m.row_mut(b)[j] = x;
    }
}

/// Bit-packed rows over `F_2`.
struct Packed {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Packed {
    fn from_mat(m: &Mat) -> Self {
        let words = m.cols().div_ceil(64).max(1);
        let mut data = vec![0u64; m.rows() * words];
        for i in 0..m.rows() {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x != 0 {
                    data[i * words + j / 64] |= 1u64 << (j % 64);
                }
            }
        }
        Self {
            rows: m.rows(),
            cols: m.cols(),
            words,
            data,
        }
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Gaussian elimination; with `full` the result is fully reduced,
    /// otherwise only rows below each pivot are cleared (enough for rank).
    fn reduce(&mut self, full: bool) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.bit(i, c)) else {
                continue;
            };
            if pr != r {
                for k in 0..w {
                    self.data.swap(pr * w + k, r * w + k);
                }
            }
            let start = c / 64;
            let (head, tail) = self.data.split_at_mut((r + 1) * w);
            let pivot = &head[r * w + start..(r + 1) * w];
            let mask_word = start;
            let bit = 1u64 << (c % 64);
            for chunk in tail.chunks_exact_mut(w) {
                if chunk[mask_word] & bit != 0 {
                    for (x, y) in chunk[start..].iter_mut().zip(pivot) {
                        *x ^= *y;
                    }
                }
            }
            if full {
                let (above, rest) = self.data.split_at_mut(r * w);
                let pivot = &rest[start..w];
                for chunk in above.chunks_exact_mut(w) {
                    if chunk[mask_word] & bit != 0 {
                        for (x, y) in chunk[start..].iter_mut().zip(pivot) {
                            *x ^= *y;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn write_back(&self, m: &mut Mat) {
        for i in 0..self.rows {
            let row = m.row_mut(i);
            for (j, x) in row.iter_mut().enumerate() {
                *x = (self.data[i * self.words + j / 64] >> (j % 64) & 1) as u32;
            }
        }
    }
}

/// Basis of the right null space, one null vector per row.
///
/// Row `k` has a 1 in the k-th free column and zeros in all other free
/// columns, so the result is a [`Subspace`] keyed by the free columns.
pub fn kernel(m: &Mat) -> Mat {
    kernel_subspace(m).basis
}

pub fn kernel_subspace(m: &Mat) -> Subspace {
    let f = m.field();
    let n = m.cols();
    let r = row_reduce(m);
    let mut is_pivot = vec![false; n];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Mat::zeros(f, free.len(), n);
    for (k, &fc) in free.iter().enumerate() {
        let row = basis.row_mut(k);
        row[fc] = 1;
        for (i, &pc) in r.pivots.iter().enumerate() {
            row[pc] = f.neg(r.mat.get(i, fc));
        }
    }
    Subspace { basis, keys: free }
}

/// Common kernel of several maps out of the same space.
pub fn kernel_subspace_of_stack(field: PrimeField, cols: usize, blocks: &[Mat]) -> Subspace {
    let refs: Vec<&Mat> = blocks.iter().collect();
    kernel_subspace(&Mat::vstack_all(field, cols, &refs))
}

/// Result of [`solve`]: one particular solution and the kernel of `a`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub x: Mat,
    pub kernel: Mat,
}

/// Solves `a * x = b`. Returns `Ok(None)` when the system is inconsistent.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Solution>> {
    if a.rows() != b.rows() || a.field() != b.field() {
        return Err(Error::Shape(format!(
            "solve: a is {}x{}, b is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.cols();
    let aug = a.hstack(b);
    let r = row_reduce(&aug);
    if r.pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut x = Mat::zeros(a.field(), n, b.cols());
    for (i, &pc) in r.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.row_mut(pc)[j] = r.mat.get(i, n + j);
        }
    }
    Ok(Some(Solution { x, kernel: kernel(a) }))
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(a: &Mat) -> Option<Mat> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    if n == 0 {
        return Some(a.clone());
    }
    let r = row_reduce(&a.hstack(&Mat::identity(a.field(), n)));
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.mat.block(0, n, n, n))
}

pub fn is_invertible(a: &Mat) -> bool {
    a.is_square() && rank(a) == a.rows()
}

/// Incrementally grown span kept in semi-echelon form, for spin-up loops.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.mul_add(*x, neg, y);
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[p]);
        for x in w.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::zero(self.field, self.ambient);
        }
        Subspace::row_space(&Mat::from_rows(self.field, self.ambient, &self.rows))
    }
}

/// A subspace of `F_p^n` with a basis in "keyed" form: `basis[i][keys[j]] == δ_ij`.
///
/// Reduced echelon bases (keys = pivots) and kernel bases (keys = free
/// columns) both have this shape, which makes coordinates a lookup and gives
/// a canonical complement spanned by the unit vectors off the keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Mat,
    keys: Vec<usize>,
}

impl Subspace {
    /// Row space of `m`.
    pub fn row_space(m: &Mat) -> Self {
        let r = row_reduce(m);
        Self {
            basis: r.row_basis(),
            keys: r.pivots,
        }
    }

    /// Column space of `m` (the image of the linear map it represents).
    pub fn column_space(m: &Mat) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            basis: Mat::zeros(field, 0, ambient),
            keys: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self {
            basis: Mat::identity(field, ambient),
            keys: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn keys(&self) -> &[usize] {
        &self.keys
    }

    /// Columns that are not keys; the unit vectors there span a complement.
    pub fn non_keys(&self) -> Vec<usize> {
        let mut is_key = vec![false; self.ambient()];
        for &k in &self.keys {
            is_key[k] = true;
        }
        (0..self.ambient()).filter(|&j| !is_key[j]).collect()
    }

    /// `v` minus its projection along the basis; zero exactly when `v` lies in the span.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &k) in self.keys.iter().enumerate() {
            let c = out[k];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &y) in out.iter_mut().zip(self.basis.row(i)) {
                *x = f.mul_add(*x, neg, y);
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residual(v).iter().all(|&x| x == 0)
    }

    pub fn contains_all(&self, m: &Mat) -> bool {
        (0..m.rows()).all(|i| self.contains(m.row(i)))
    }

    /// Coordinates with respect to the basis rows, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.keys.iter().map(|&k| v[k]).collect())
    }

    /// Coordinates of a vector already known to lie in the span.
    #[inline]
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        self.keys.iter().map(|&k| v[k]).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient();
        let f = self.field();
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Mat::zeros(f, other.dim(), n));
        let r = row_reduce(&top.vstack(&bottom));
        let mut rows = Vec::new();
        for (i, &pc) in r.pivots.iter().enumerate() {
            if pc >= n {
                rows.push(r.mat.row(i)[n..].to_vec());
            }
        }
        Ok(Subspace::row_space(&Mat::from_rows(f, n, &rows)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        other.contains_all(&self.basis)
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::Shape(format!(
                "subspaces of F_p^{} and F_p^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }
}

/// Sum, intersection and a membership oracle for two subspaces given by spanning rows.
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    a: Subspace,
    b: Subspace,
}

impl SubspaceOps {
    pub fn in_a(&self, v: &[u32]) -> bool {
        self.a.contains(v)
    }
    pub fn in_b(&self, v: &[u32]) -> bool {
        self.b.contains(v)
    }
}

pub fn subspace_ops(basis_a: &Mat, basis_b: &Mat) -> Result<SubspaceOps> {
    if basis_a.cols() != basis_b.cols() {
        return Err(Error::Shape(format!(
            "ambient dimensions {} and {}",
            basis_a.cols(),
            basis_b.cols()
        )));
    }
    let a = Subspace::row_space(basis_a);
    let b = Subspace::row_space(basis_b);
    Ok(SubspaceOps {
        sum: a.sum(&b)?,
        intersection: a.intersection(&b)?,
        a,
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Rank as the size of the largest nonvanishing minor, by cofactor expansion.
    fn rank_by_minors(m: &Mat) -> usize {
        fn det(field: PrimeField, a: &[Vec<u32>]) -> u32 {
            let n = a.len();
            if n == 0 {
                return 1;
            }
            let mut acc = 0u32;
            for j in 0..n {
                if a[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<u32>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let term = field.mul(a[0][j], det(field, &minor));
                acc = if j % 2 == 0 {
                    field.add(acc, term)
                } else {
                    field.sub(acc, term)
                };
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let field = m.field();
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let a: Vec<Vec<u32>> = rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j)).collect()).collect();
                    if det(field, &a) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn identity_and_equal_rows() {
        let r = row_reduce(&Mat::identity(f(2), 3));
        assert_eq!(r.rank(), 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(rank(&Mat::from_rows(f(2), 2, &[[1, 1], [1, 1]])), 1);
    }

    #[test]
    fn rank_agrees_with_minor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = Mat::random(f(3), 6, 6, &mut rng);
            // sprinkle a dependent row now and then
            assert_eq!(rank(&m), rank_by_minors(&m));
        }
        let mut m = Mat::random(f(3), 5, 6, &mut rng);
        let dep: Vec<u32> = (0..6).map(|j| f(3).add(m.get(0, j), m.get(1, j))).collect();
        m.push_row(&dep);
        assert_eq!(rank(&m), rank_by_minors(&m));
    }

    #[test]
    fn packed_gf2_matches_generic_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (rows, cols) in [(5, 7), (70, 130), (130, 65)] {
            let m = Mat::random(f(2), rows, cols, &mut rng);
            let packed = row_reduce(&m);
            // generic path on the same data via a field-agnostic reference
            let mut reference = m.clone();
            let mut pivots = Vec::new();
            let mut r = 0;
            for c in 0..cols {
                if let Some(pr) = (r..rows).find(|&i| reference.get(i, c) != 0) {
                    swap_rows(&mut reference, pr, r);
                    for i in 0..rows {
                        if i != r && reference.get(i, c) != 0 {
                            for j in 0..cols {
                                let x = reference.get(i, j) ^ reference.get(r, j);
                                reference.row_mut(i)[j] = x;
                            }
                        }
                    }
                    pivots.push(c);
                    r += 1;
                }
            }
            assert_eq!(packed.pivots, pivots);
            assert_eq!(packed.mat, reference);
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Mat::zeros(f(5), 2, 3)).rows(), 3);
        assert_eq!(kernel(&Mat::identity(f(5), 4)).rows(), 0);
        for p in [2, 3, 7] {
            let aug = Mat::from_rows(f(p), 6, &[[1u32; 6]]);
            let k = kernel(&aug);
            assert_eq!(k.rows(), 5);
            for i in 0..k.rows() {
                assert_eq!(aug.mul_vec(k.row(i)), vec![0]);
            }
        }
    }

    #[test]
    fn solve_examples() {
        let field = f(7);
        let b = Mat::from_rows(field, 2, &[[1, 2], [3, 4], [5, 6]]);
        let s = solve(&Mat::identity(field, 3), &b).unwrap().unwrap();
        assert_eq!(s.x, b);
        let zero = Mat::zeros(field, 3, 3);
        assert!(solve(&zero, &b).unwrap().is_none());
        assert!(solve(&zero, &Mat::zeros(field, 2, 1)).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = Mat::random(f(2), 5, 7, &mut rng);
            let x0 = Mat::random(f(2), 7, 2, &mut rng);
            let b = a.mul(&x0);
            let s = solve(&a, &b).unwrap().expect("consistent by construction");
            assert_eq!(a.mul(&s.x), b);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let field = f(5);
        let a = Mat::from_rows(field, 2, &[[2, 1], [1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(field, 2));
        assert!(inverse(&Mat::from_rows(field, 2, &[[1, 2], [2, 4]])).is_none());
    }

    #[test]
    fn subspace_examples() {
        let field = f(3);
        let a = Mat::from_rows(field, 3, &[[1, 0, 0], [0, 1, 0]]);
        let ops = subspace_ops(&a, &a).unwrap();
        assert_eq!(ops.sum.dim(), 2);
        assert_eq!(ops.intersection.dim(), 2);
        assert!(ops.in_a(&[1, 2, 0]));

        let b = Mat::from_rows(field, 3, &[[0, 0, 1]]);
        let ops = subspace_ops(&a, &b).unwrap();
        assert_eq!(ops.intersection.dim(), 0);
        assert_eq!(ops.sum.dim(), 3);
        assert!(subspace_ops(&a, &Mat::zeros(field, 1, 4)).is_err());
    }

    #[test]
    fn subspace_dimension_formula_by_exhaustive_membership() {
        // F_2^8 has 256 vectors, so the intersection is checked by enumeration.
        let field = f(2);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10 {
            let a = Mat::random(field, 3, 8, &mut rng);
            let b = Mat::random(field, 4, 8, &mut rng);
            let ops = subspace_ops(&a, &b).unwrap();
            let mut count = 0;
            for bits in 0u32..256 {
                let v: Vec<u32> = (0..8).map(|j| bits >> j & 1).collect();
                if ops.in_a(&v) && ops.in_b(&v) {
                    count += 1;
                    assert!(ops.intersection.contains(&v));
                }
            }
            assert_eq!(count, 1 << ops.intersection.dim());
            let da = rank(&a);
            let db = rank(&b);
            assert_eq!(da + db, ops.sum.dim() + ops.intersection.dim());
        }
    }

    #[test]
    fn keyed_coordinates() {
        let field = f(5);
        let m = Mat::from_rows(field, 3, &[[1, 2, 3], [0, 1, 4]]);
        let s = Subspace::row_space(&m);
        let v = m.vec_mul(&[2, 3]);
        let c = s.coords(&v).unwrap();
        let back = s.basis().vec_mul(&c);
        assert_eq!(back, v);
        let k = kernel_subspace(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.coords(k.basis().row(0)), Some(vec![1]));
    }
}
