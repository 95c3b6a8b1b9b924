//! Finite-dimensional algebras over `F_p` presented with a complete family of
//! primitive orthogonal idempotents `e_0, ..., e_{b-1}`.
//!
//! Every basis element lies in a single Peirce component `e_r A e_c`, and each
//! `e_r` is itself a basis element, so modules split into blocks `e_r M` and
//! every action matrix is a small block.

use std::sync::{Arc, OnceLock};

use super::module::{build_pim_data, PimData};
use super::radical::matrix_algebra_radical;
use crate::error::{Error, Result};
use crate::linalg::{kernel_subspace, Mat, PrimeField, SpanBuilder, Subspace};

/// Associativity is verified on every basis triple up to this dimension.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 1200;

type Sparse = Vec<(u32, u32)>;

/// A homogeneous element of `e_row A e_col`, in the local basis of that component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub row: usize,
    pub col: usize,
    pub coeffs: Vec<u32>,
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug)]
pub struct FdAlgebra {
    field: PrimeField,
    labels: Vec<String>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    n: usize,
    idem: Vec<usize>,
    table: Vec<Vec<Sparse>>,
    structure: Arc<Structure>,
    pims: OnceLock<Vec<PimData>>,
    op: OnceLock<Arc<FdAlgebra>>,
}

/// Radical data and the generating set used to present modules.
#[derive(Clone, Debug)]
pub struct Structure {
    /// `J ∩ e_r A e_c` for every block pair, in local coordinates.
    pub radical: Vec<Subspace>,
    /// `J^2 ∩ e_r A e_c`.
    pub radical_sq: Vec<Subspace>,
    /// Loewy length of the regular module.
    pub loewy_length: usize,
    /// Simple class of each block; blocks in one class have isomorphic projectives.
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// Generators besides the idempotents: transition elements between blocks of one
    /// class, followed by arrows (a homogeneous basis of a complement of `J^2` in `J`).
    pub gens: Vec<Elem>,
    pub transitions: usize,
}

impl FdAlgebra {
    /// Builds an algebra from block dimensions (`dims[r * b + c] = dim e_r A e_c`), the
    /// local index of `e_r` inside `e_r A e_r`, and a product callback
    /// `(r, c, d, i, j) -> x_i y_j` for `x_i` in `e_r A e_c`, `y_j` in `e_c A e_d`,
    /// returned as sparse local coordinates in `e_r A e_d`.
    pub fn new(
        field: PrimeField,
        labels: Vec<String>,
        dims: Vec<usize>,
        idem: Vec<usize>,
        mut product: impl FnMut(usize, usize, usize, usize, usize) -> Vec<(usize, u32)>,
    ) -> Result<Self> {
        let b = labels.len();
        if dims.len() != b * b || idem.len() != b {
            return Err(Error::Shape(format!(
                "{} blocks need {} component dimensions and {} idempotents",
                b,
                b * b,
                b
            )));
        }
        for r in 0..b {
            if idem[r] >= dims[r * b + r] {
                return Err(Error::Shape(format!("idempotent of block {r} out of range")));
            }
        }
        let mut offsets = Vec::with_capacity(b * b);
        let mut n = 0;
        for &d in &dims {
            offsets.push(n);
            n += d;
        }
        let mut table = Vec::with_capacity(b * b * b);
        for r in 0..b {
            for c in 0..b {
                for d in 0..b {
                    let (n1, n2) = (dims[r * b + c], dims[c * b + d]);
                    let target = dims[r * b + d];
                    let mut entries = Vec::with_capacity(n1 * n2);
                    for i in 0..n1 {
                        for j in 0..n2 {
                            let mut acc = vec![0u32; target];
                            for (k, v) in product(r, c, d, i, j) {
                                if k >= target {
                                    return Err(Error::Shape(format!("product lands outside component ({r},{d})")));
                                }
                                acc[k] = field.add(acc[k], field.reduce(v));
                            }
                            entries.push(to_sparse(&acc));
                        }
                    }
                    table.push(entries);
                }
            }
        }
        let mut alg = FdAlgebra {
            field,
            labels,
            dims,
            offsets,
            n,
            idem,
            table,
            structure: Arc::new(Structure::empty()),
            pims: OnceLock::new(),
            op: OnceLock::new(),
        };
        alg.check_unit()?;
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            alg.check_associative()?;
        }
        alg.structure = Arc::new(compute_structure(&alg)?);
        Ok(alg)
    }

    /// Algebra with a single block whose unit is basis element `unit`; the unit must
    /// be primitive (local algebra), as for group algebras of p-groups.
    pub fn local(
        field: PrimeField,
        n: usize,
        unit: usize,
        mut product: impl FnMut(usize, usize) -> Vec<(usize, u32)>,
    ) -> Result<Self> {
        Self::new(field, vec!["0".into()], vec![n], vec![unit], |_, _, _, i, j| {
            product(i, j)
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn block_dim(&self, r: usize, c: usize) -> usize {
        self.dims[r * self.blocks() + c]
    }

    /// Global index of local basis element `i` of `e_r A e_c`.
    pub fn global_index(&self, r: usize, c: usize, i: usize) -> usize {
        self.offsets[r * self.blocks() + c] + i
    }

    /// Inverse of [`FdAlgebra::global_index`].
    pub fn locate(&self, g: usize) -> (usize, usize, usize) {
        let b = self.blocks();
        let pos = self.offsets.partition_point(|&o| o <= g) - 1;
        (pos / b, pos % b, g - self.offsets[pos])
    }

    pub fn idempotent_index(&self, r: usize) -> usize {
        self.idem[r]
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn generators(&self) -> &[Elem] {
        &self.structure.gens
    }

    pub fn basis_elem(&self, r: usize, c: usize, i: usize) -> Elem {
        let mut coeffs = vec![0u32; self.block_dim(r, c)];
        coeffs[i] = 1;
        Elem { row: r, col: c, coeffs }
    }

    pub fn idempotent(&self, r: usize) -> Elem {
        self.basis_elem(r, r, self.idem[r])
    }

    pub fn zero_elem(&self, r: usize, c: usize) -> Elem {
        Elem {
            row: r,
            col: c,
            coeffs: vec![0; self.block_dim(r, c)],
        }
    }

    /// Product of local basis elements `x_i ∈ e_r A e_c` and `y_j ∈ e_c A e_d`.
    pub fn basis_product(&self, r: usize, c: usize, d: usize, i: usize, j: usize) -> &[(u32, u32)] {
        let b = self.blocks();
        &self.table[(r * b + c) * b + d][i * self.dims[c * b + d] + j]
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        assert_eq!(x.col, y.row, "product of non-composable components");
        let f = self.field;
        let (r, c, d) = (x.row, x.col, y.col);
        let mut acc = vec![0u32; self.block_dim(r, d)];
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &bv) in y.coeffs.iter().enumerate() {
                if bv == 0 {
                    continue;
                }
                let ab = f.mul(a, bv);
                for &(k, v) in self.basis_product(r, c, d, i, j) {
                    acc[k as usize] = f.mul_add(acc[k as usize], ab, v);
                }
            }
        }
        Elem {
            row: r,
            col: d,
            coeffs: acc,
        }
    }

    /// Matrix of `v ↦ x v` from `e_c A e_d` to `e_r A e_d` for `x ∈ e_r A e_c`.
    pub fn left_mult(&self, x: &Elem, d: usize) -> Mat {
        let f = self.field;
        let (r, c) = (x.row, x.col);
        let (rows, cols) = (self.block_dim(r, d), self.block_dim(c, d));
        let mut m = Mat::zeros(f, rows, cols);
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..cols {
                for &(k, v) in self.basis_product(r, c, d, i, j) {
                    let k = k as usize;
                    m.set(k, j, f.mul_add(m.get(k, j), a, v));
                }
            }
        }
        m
    }

    /// Matrix of `v ↦ v x` from `e_q A e_r` to `e_q A e_c` for `x ∈ e_r A e_c`.
    pub fn right_mult(&self, x: &Elem, q: usize) -> Mat {
        let f = self.field;
        let (r, c) = (x.row, x.col);
        let (rows, cols) = (self.block_dim(q, c), self.block_dim(q, r));
        let mut m = Mat::zeros(f, rows, cols);
        for (j, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for i in 0..cols {
                for &(k, v) in self.basis_product(q, r, c, i, j) {
                    let k = k as usize;
                    m.set(k, i, f.mul_add(m.get(k, i), a, v));
                }
            }
        }
        m
    }

    /// The opposite algebra on the same basis; `e_r A^op e_c = e_c A e_r`.
    pub fn opposite(&self) -> FdAlgebra {
        let b = self.blocks();
        let mut dims = vec![0; b * b];
        for r in 0..b {
            for c in 0..b {
                dims[r * b + c] = self.dims[c * b + r];
            }
        }
        let mut offsets = Vec::with_capacity(b * b);
        let mut n = 0;
        for &d in &dims {
            offsets.push(n);
            n += d;
        }
        let mut table = Vec::with_capacity(b * b * b);
        for r in 0..b {
            for c in 0..b {
                for d in 0..b {
                    // x in op(r,c) = (c,r), y in op(c,d) = (d,c); x *op y = y x in (d,r)
                    let (n1, n2) = (dims[r * b + c], dims[c * b + d]);
                    let mut entries = Vec::with_capacity(n1 * n2);
                    for i in 0..n1 {
                        for j in 0..n2 {
                            entries.push(self.basis_product(d, c, r, j, i).to_vec());
                        }
                    }
                    table.push(entries);
                }
            }
        }
        let s = &self.structure;
        let tr = |v: &Vec<Subspace>| -> Vec<Subspace> {
            let mut out = Vec::with_capacity(b * b);
            for r in 0..b {
                for c in 0..b {
                    out.push(v[c * b + r].clone());
                }
            }
            out
        };
        let structure = Structure {
            radical: tr(&s.radical),
            radical_sq: tr(&s.radical_sq),
            loewy_length: s.loewy_length,
            class_of: s.class_of.clone(),
            classes: s.classes.clone(),
            gens: s
                .gens
                .iter()
                .map(|g| Elem {
                    row: g.col,
                    col: g.row,
                    coeffs: g.coeffs.clone(),
                })
                .collect(),
            transitions: s.transitions,
        };
        FdAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            dims,
            offsets,
            n,
            idem: self.idem.clone(),
            table,
            structure: Arc::new(structure),
            pims: OnceLock::new(),
            op: OnceLock::new(),
        }
    }

    /// Cached [`FdAlgebra::opposite`], so that duals of modules share one algebra.
    pub fn opposite_arc(&self) -> Arc<FdAlgebra> {
        self.op.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    pub fn pim_data(&self, r: usize) -> &PimData {
        &self
            .pims
            .get_or_init(|| (0..self.blocks()).map(|q| build_pim_data(self, q)).collect())[r]
    }

    /// Dimension of `J(A)`.
    pub fn radical_dim(&self) -> usize {
        self.structure.radical.iter().map(|s| s.dim()).sum()
    }

    /// Basis of `J(A)` in global coordinates.
    pub fn radical_basis(&self) -> Mat {
        let b = self.blocks();
        let mut out = Mat::zeros(self.field, 0, self.n);
        for r in 0..b {
            for c in 0..b {
                let s = &self.structure.radical[r * b + c];
                let off = self.offsets[r * b + c];
                for i in 0..s.dim() {
                    let mut v = vec![0u32; self.n];
                    v[off..off + s.ambient()].copy_from_slice(s.basis().row(i));
                    out.push_row(&v);
                }
            }
        }
        out
    }

    /// Number of simple modules up to isomorphism.
    pub fn simple_count(&self) -> usize {
        self.structure.classes.len()
    }

    /// Representative block of each simple class.
    pub fn class_rep(&self, c: usize) -> usize {
        self.structure.classes[c][0]
    }

    /// Cartan matrix `C[i][j] = [P_j : S_i]`, indexed by simple class.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let k = self.simple_count();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.block_dim(self.class_rep(i), self.class_rep(j)))
                    .collect()
            })
            .collect()
    }

    fn check_unit(&self) -> Result<()> {
        let b = self.blocks();
        for r in 0..b {
            for c in 0..b {
                for i in 0..self.block_dim(r, c) {
                    let unit = [(i as u32, 1u32)];
                    let left = self.basis_product(r, r, c, self.idem[r], i);
                    let right = self.basis_product(r, c, c, i, self.idem[c]);
                    if left != unit || right != unit {
                        return Err(Error::InvalidModule(format!(
                            "idempotents do not act as the identity on component ({r},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let f = self.field;
        let b = self.blocks();
        for r in 0..b {
            for c in 0..b {
                for d in 0..b {
                    for e in 0..b {
                        let (n1, n2, n3) = (self.block_dim(r, c), self.block_dim(c, d), self.block_dim(d, e));
                        if n1 * n2 * n3 == 0 {
                            continue;
                        }
                        let t = self.block_dim(r, e);
                        for i in 0..n1 {
                            for j in 0..n2 {
                                let xy = self.basis_product(r, c, d, i, j);
                                for k in 0..n3 {
                                    let mut lhs = vec![0u32; t];
                                    for &(m, a) in xy {
                                        for &(q, v) in self.basis_product(r, d, e, m as usize, k) {
                                            lhs[q as usize] = f.mul_add(lhs[q as usize], a, v);
                                        }
                                    }
                                    let mut rhs = vec![0u32; t];
                                    for &(m, a) in self.basis_product(c, d, e, j, k) {
                                        for &(q, v) in self.basis_product(r, c, e, i, m as usize) {
                                            rhs[q as usize] = f.mul_add(rhs[q as usize], a, v);
                                        }
                                    }
                                    if lhs != rhs {
                                        return Err(Error::Internal(format!(
                                            "structure constants are not associative on ({r},{c},{d},{e})"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn to_sparse(v: &[u32]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(k, &x)| (k as u32, x))
        .collect()
}

impl Structure {
    fn empty() -> Self {
        Structure {
            radical: Vec::new(),
            radical_sq: Vec::new(),
            loewy_length: 0,
            class_of: Vec::new(),
            classes: Vec::new(),
            gens: Vec::new(),
            transitions: 0,
        }
    }
}

/// Radical by Peirce components: the corner radicals `J(e_r A e_r)` come from the
/// trace-form method on their left-regular representations, and `x ∈ e_r A e_s` lies
/// in `J` iff `x y ∈ J(e_r A e_r)` for every `y ∈ e_s A e_r`.
fn compute_structure(a: &FdAlgebra) -> Result<Structure> {
    let f = a.field;
    let b = a.blocks();
    let mut corner_rad = Vec::with_capacity(b);
    let mut top_key = Vec::with_capacity(b);
    for r in 0..b {
        let m = a.block_dim(r, r);
        let regs: Vec<Mat> = (0..m).map(|i| a.left_mult(&a.basis_elem(r, r, i), r)).collect();
        let j = matrix_algebra_radical(f, &regs)?;
        if m - j.dim() != 1 {
            return Err(Error::Unsupported(format!(
                "idempotent of block {} is not primitive with residue field F_{} (corner has semisimple quotient of dimension {})",
                a.labels[r],
                f.p(),
                m - j.dim()
            )));
        }
        top_key.push(j.non_keys()[0]);
        corner_rad.push(j);
    }
    // linear functional "coefficient of the top" on e_r A e_r
    let top_coeff = |r: usize, v: &[u32]| -> u32 { corner_rad[r].residual(v)[top_key[r]] };

    let mut radical = Vec::with_capacity(b * b);
    for r in 0..b {
        for s in 0..b {
            if r == s {
                radical.push(corner_rad[r].clone());
                continue;
            }
            let (nx, ny) = (a.block_dim(r, s), a.block_dim(s, r));
            let mut cond = Mat::zeros(f, ny, nx);
            for yi in 0..ny {
                for xi in 0..nx {
                    let mut v = vec![0u32; a.block_dim(r, r)];
                    for &(k, c) in a.basis_product(r, s, r, xi, yi) {
                        v[k as usize] = c;
                    }
                    cond.set(yi, xi, top_coeff(r, &v));
                }
            }
            radical.push(kernel_subspace(&cond));
        }
    }

    // powers of J: J^{k+1}_{rc} = sum_s J^k_{rs} J_{sc}
    let elems = |sub: &Subspace, r: usize, c: usize| -> Vec<Elem> {
        (0..sub.dim())
            .map(|i| Elem {
                row: r,
                col: c,
                coeffs: sub.basis().row(i).to_vec(),
            })
            .collect()
    };
    let rad_elems: Vec<Vec<Elem>> = (0..b * b).map(|rc| elems(&radical[rc], rc / b, rc % b)).collect();
    let mut power = radical.clone();
    let mut radical_sq = None;
    let mut loewy_length = 1;
    while power.iter().any(|s| s.dim() > 0) {
        if loewy_length > a.n + 1 {
            return Err(Error::Internal("computed radical is not nilpotent".into()));
        }
        let mut next = Vec::with_capacity(b * b);
        for r in 0..b {
            for c in 0..b {
                let mut span = SpanBuilder::new(f, a.block_dim(r, c));
                for s in 0..b {
                    for x in elems(&power[r * b + s], r, s) {
                        for y in &rad_elems[s * b + c] {
                            span.insert(&a.mul(&x, y).coeffs);
                        }
                    }
                }
                next.push(span.into_subspace());
            }
        }
        if radical_sq.is_none() {
            radical_sq = Some(next.clone());
        }
        power = next;
        loewy_length += 1;
    }
    let radical_sq = radical_sq.unwrap_or_else(|| radical.clone());
    // an ideal check: A J ⊆ J and J A ⊆ J on basis elements
    if a.n <= ASSOCIATIVITY_CHECK_LIMIT {
        for q in 0..b {
            for r in 0..b {
                for i in 0..a.block_dim(q, r) {
                    let x = a.basis_elem(q, r, i);
                    for c in 0..b {
                        for j in &rad_elems[r * b + c] {
                            if !radical[q * b + c].contains(&a.mul(&x, j).coeffs) {
                                return Err(Error::Internal("radical is not a left ideal".into()));
                            }
                        }
                        for j in &rad_elems[c * b + q] {
                            if !radical[c * b + r].contains(&a.mul(j, &x).coeffs) {
                                return Err(Error::Internal("radical is not a right ideal".into()));
                            }
                        }
                    }
                }
            }
        }
    }

    // simple classes: r ~ s iff e_r A e_s is not contained in J
    let mut class_of = vec![usize::MAX; b];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for r in 0..b {
        if class_of[r] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![r];
        class_of[r] = id;
        for s in r + 1..b {
            if class_of[s] == usize::MAX && radical[r * b + s].dim() < a.block_dim(r, s) {
                class_of[s] = id;
                members.push(s);
            }
        }
        classes.push(members);
    }

    let mut gens = Vec::new();
    for members in &classes {
        let r = members[0];
        for &s in &members[1..] {
            for (x, y) in [(r, s), (s, r)] {
                let k = radical[x * b + y].non_keys()[0];
                gens.push(a.basis_elem(x, y, k));
            }
        }
    }
    let transitions = gens.len();
    for r in 0..b {
        for c in 0..b {
            let sq = &radical_sq[r * b + c];
            let mut span = SpanBuilder::new(f, a.block_dim(r, c));
            for i in 0..sq.dim() {
                span.insert(sq.basis().row(i));
            }
            for x in &rad_elems[r * b + c] {
                if span.insert(&x.coeffs) {
                    gens.push(x.clone());
                }
            }
        }
    }
    Ok(Structure {
        radical,
        radical_sq,
        loewy_length,
        class_of,
        classes,
        gens,
        transitions,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Group algebra of `C_a x C_b` over `F_p` as a local algebra.
    pub(crate) fn abelian_group_algebra(p: u32, a: usize, b: usize) -> FdAlgebra {
        let f = PrimeField::new(p).unwrap();
        let n = a * b;
        FdAlgebra::local(f, n, 0, |i, j| {
            let (x, y) = (i % a + j % a, i / a + j / a);
            vec![((x % a) + a * (y % b), 1)]
        })
        .unwrap()
    }

    /// `F_p^m` with the coordinate idempotents as blocks.
    pub(crate) fn split_semisimple(p: u32, m: usize) -> FdAlgebra {
        let f = PrimeField::new(p).unwrap();
        let mut dims = vec![0; m * m];
        for r in 0..m {
            dims[r * m + r] = 1;
        }
        FdAlgebra::new(
            f,
            (0..m).map(|r| r.to_string()).collect(),
            dims,
            vec![0; m],
            |_, _, _, _, _| vec![(0, 1)],
        )
        .unwrap()
    }

    /// Upper triangular `n x n` matrices with the diagonal units as blocks.
    pub(crate) fn upper_triangular(p: u32, n: usize) -> FdAlgebra {
        let f = PrimeField::new(p).unwrap();
        let mut dims = vec![0; n * n];
        for r in 0..n {
            for c in r..n {
                dims[r * n + c] = 1;
            }
        }
        FdAlgebra::new(
            f,
            (0..n).map(|r| r.to_string()).collect(),
            dims,
            vec![0; n],
            |_, _, _, _, _| vec![(0, 1)],
        )
        .unwrap()
    }

    /// `M_2(F_p)` with the two diagonal units as blocks.
    pub(crate) fn matrix_algebra(p: u32) -> FdAlgebra {
        let f = PrimeField::new(p).unwrap();
        FdAlgebra::new(
            f,
            vec!["0".into(), "1".into()],
            vec![1; 4],
            vec![0; 2],
            |_, _, _, _, _| vec![(0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn radical_examples() {
        assert_eq!(split_semisimple(3, 4).radical_dim(), 0);
        assert_eq!(abelian_group_algebra(2, 2, 1).radical_dim(), 1);
        assert_eq!(abelian_group_algebra(3, 3, 3).radical_dim(), 8);
        assert_eq!(upper_triangular(2, 3).radical_dim(), 3);
        assert_eq!(matrix_algebra(5).radical_dim(), 0);
        assert_eq!(abelian_group_algebra(3, 3, 3).structure().loewy_length, 5);
    }

    #[test]
    fn local_algebra_needs_split_residue() {
        // F_2 C_3 = F_2 x F_4 has a non-primitive unit
        let f = PrimeField::new(2).unwrap();
        let r = FdAlgebra::local(f, 3, 0, |i, j| vec![((i + j) % 3, 1)]);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn rejects_non_associative_tables() {
        let f = PrimeField::new(2).unwrap();
        // x^2 = 1 but with (x*x)*x != x*(x*x) forced by a bad entry
        let r = FdAlgebra::local(f, 3, 0, |i, j| match (i, j) {
            (0, k) | (k, 0) => vec![(k, 1)],
            (1, 1) => vec![(2, 1)],
            (1, 2) => vec![(0, 1)],
            (2, 1) => vec![(1, 1)],
            _ => vec![],
        });
        assert!(r.is_err());
    }

    #[test]
    fn classes_and_generators() {
        let m = matrix_algebra(3);
        assert_eq!(m.simple_count(), 1);
        assert_eq!(m.structure().transitions, 2);
        let u = upper_triangular(3, 3);
        assert_eq!(u.simple_count(), 3);
        // arrows e_0 -> e_1 and e_1 -> e_2; the corner (0,2) lies in J^2
        assert_eq!(u.generators().len(), 2);
        assert_eq!(u.cartan(), vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        let op = u.opposite();
        assert_eq!(op.block_dim(2, 0), 1);
        assert_eq!(op.block_dim(0, 2), 0);
    }

    #[test]
    fn locate_inverts_global_index() {
        let u = upper_triangular(2, 4);
        for g in 0..u.dim() {
            let (r, c, i) = u.locate(g);
            assert_eq!(u.global_index(r, c, i), g);
        }
    }
}
