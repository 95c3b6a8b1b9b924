use std::sync::Arc;

use rand::Rng;

use super::algebra::{Elem, FdAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel_subspace, Mat, SpanBuilder, Subspace};

/// A subspace of a module, one [`Subspace`] per idempotent block.
pub type BlockSpace = Vec<Subspace>;

/// A left module over an [`FdAlgebra`], stored as block dimensions `dim e_r M` and the
/// action of each structure generator (`dim e_row M x dim e_col M`).
#[derive(Clone, Debug)]
pub struct AModule {
    alg: Arc<FdAlgebra>,
    dims: Vec<usize>,
    gens: Vec<Mat>,
}

/// A block-diagonal linear map between modules over the same algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    /// `blocks[r]` is `dim e_r N x dim e_r M`.
    pub blocks: Vec<Mat>,
}

impl AModule {
    pub fn new(alg: Arc<FdAlgebra>, dims: Vec<usize>, gens: Vec<Mat>) -> Result<Self> {
        if dims.len() != alg.blocks() || gens.len() != alg.generators().len() {
            return Err(Error::Shape("module data does not match the algebra".into()));
        }
        for (g, m) in alg.generators().iter().zip(&gens) {
            if m.rows() != dims[g.row] || m.cols() != dims[g.col] {
                return Err(Error::Shape(format!(
                    "generator action is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[g.row],
                    dims[g.col]
                )));
            }
        }
        Ok(Self { alg, dims, gens })
    }

    /// Module whose generator actions come from a callback on algebra elements.
    pub fn from_elements(alg: Arc<FdAlgebra>, dims: Vec<usize>, mut act: impl FnMut(&Elem) -> Mat) -> Result<Self> {
        let gens = alg.generators().iter().map(&mut act).collect();
        Self::new(alg, dims, gens)
    }

    /// Module given by the action of every basis element `(r, c, i)`. With `verify`, the
    /// structure constants and unit laws are checked against these actions.
    pub fn from_basis_actions(
        alg: Arc<FdAlgebra>,
        dims: Vec<usize>,
        mut act: impl FnMut(usize, usize, usize) -> Mat,
        verify: bool,
    ) -> Result<Self> {
        let f = alg.field();
        let b = alg.blocks();
        let mut all: Vec<Vec<Mat>> = Vec::with_capacity(b * b);
        for r in 0..b {
            for c in 0..b {
                all.push((0..alg.block_dim(r, c)).map(|i| act(r, c, i)).collect());
            }
        }
        let combine = |e: &Elem| {
            let mut acc = Mat::zeros(f, dims[e.row], dims[e.col]);
            for (m, &x) in all[e.row * b + e.col].iter().zip(&e.coeffs) {
                if x != 0 {
                    acc.add_scaled(m, x);
                }
            }
            acc
        };
        if verify {
            for r in 0..b {
                if all[r * b + r][alg.idempotent_index(r)] != Mat::identity(f, dims[r]) {
                    return Err(Error::InvalidModule(format!("e_{r} does not act as the identity")));
                }
                for c in 0..b {
                    for d in 0..b {
                        for (i, x) in all[r * b + c].iter().enumerate() {
                            for (j, y) in all[c * b + d].iter().enumerate() {
                                let mut prod = alg.zero_elem(r, d);
                                for &(k, v) in alg.basis_product(r, c, d, i, j) {
                                    prod.coeffs[k as usize] = v;
                                }
                                if x.mul(y) != combine(&prod) {
                                    return Err(Error::InvalidModule(format!(
                                        "action violates the product of components ({r},{c}) and ({c},{d})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        let gens = alg.generators().iter().map(&combine).collect();
        Self::new(alg, dims, gens)
    }

    pub fn zero(alg: Arc<FdAlgebra>) -> Self {
        let f = alg.field();
        let gens = alg.generators().iter().map(|_| Mat::zeros(f, 0, 0)).collect();
        let dims = vec![0; alg.blocks()];
        Self { alg, dims, gens }
    }

    /// The principal indecomposable `A e_r`.
    pub fn pim(alg: &Arc<FdAlgebra>, r: usize) -> Self {
        let data = alg.pim_data(r);
        Self {
            alg: alg.clone(),
            dims: data.dims.clone(),
            gens: data.gens.clone(),
        }
    }

    /// The simple module `S` of class `c`, the top of its PIM.
    pub fn simple(alg: &Arc<FdAlgebra>, c: usize) -> Self {
        let p = Self::pim(alg, alg.class_rep(c));
        let rad = p.radical();
        p.quotient(&rad)
    }

    /// The left regular module as a sum of the PIMs `A e_r`.
    pub fn regular(alg: &Arc<FdAlgebra>) -> Self {
        let parts: Vec<AModule> = (0..alg.blocks()).map(|r| Self::pim(alg, r)).collect();
        Self::direct_sum_all(alg, &parts)
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn block_dim(&self, r: usize) -> usize {
        self.dims[r]
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn generator_actions(&self) -> &[Mat] {
        &self.gens
    }

    pub fn same_algebra(&self, other: &AModule) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg)
    }

    pub fn direct_sum(&self, other: &AModule) -> Result<AModule> {
        if !self.same_algebra(other) {
            return Err(Error::Incompatible);
        }
        Ok(Self::direct_sum_all(&self.alg, &[self.clone(), other.clone()]))
    }

    pub fn direct_sum_all(alg: &Arc<FdAlgebra>, parts: &[AModule]) -> AModule {
        let f = alg.field();
        let b = alg.blocks();
        let dims: Vec<usize> = (0..b).map(|r| parts.iter().map(|p| p.dims[r]).sum()).collect();
        let gens = alg
            .generators()
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let mut m = Mat::zeros(f, dims[g.row], dims[g.col]);
                let (mut ro, mut co) = (0, 0);
                for p in parts {
                    m.set_block(ro, co, &p.gens[k]);
                    ro += p.dims[g.row];
                    co += p.dims[g.col];
                }
                m
            })
            .collect();
        AModule {
            alg: alg.clone(),
            dims,
            gens,
        }
    }

    /// Smallest submodule containing the given `(block, vector)` seeds.
    pub fn spin(&self, seeds: &[(usize, Vec<u32>)]) -> BlockSpace {
        let f = self.alg.field();
        let mut spans: Vec<SpanBuilder> = self.dims.iter().map(|&d| SpanBuilder::new(f, d)).collect();
        let mut queue = Vec::new();
        for (r, v) in seeds {
            if spans[*r].insert(v) {
                queue.push((*r, v.clone()));
            }
        }
        let by_col = self.gens_by_col();
        while let Some((c, v)) = queue.pop() {
            for &k in &by_col[c] {
                let r = self.alg.generators()[k].row;
                if spans[r].dim() == self.dims[r] {
                    continue;
                }
                let w = self.gens[k].mul_vec(&v);
                if spans[r].insert(&w) {
                    queue.push((r, w));
                }
            }
        }
        spans.into_iter().map(|s| s.into_subspace()).collect()
    }

    fn gens_by_col(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.alg.blocks()];
        for (k, g) in self.alg.generators().iter().enumerate() {
            out[g.col].push(k);
        }
        out
    }

    pub fn is_submodule(&self, sub: &BlockSpace) -> bool {
        self.alg.generators().iter().zip(&self.gens).all(|(g, m)| {
            let s = &sub[g.col];
            (0..s.dim()).all(|i| sub[g.row].contains(&m.mul_vec(s.basis().row(i))))
        })
    }

    /// The submodule on `sub`, in the keyed coordinates of each block.
    pub fn submodule(&self, sub: &BlockSpace) -> AModule {
        let f = self.alg.field();
        let gens = self
            .alg
            .generators()
            .iter()
            .zip(&self.gens)
            .map(|(g, m)| {
                let (src, dst) = (&sub[g.col], &sub[g.row]);
                if src.dim() == 0 || dst.dim() == 0 {
                    return Mat::zeros(f, dst.dim(), src.dim());
                }
                // images of the source basis, read off at the target keys
                let img = m.mul(&src.basis().transpose());
                img.select_rows(dst.keys())
            })
            .collect();
        AModule {
            alg: self.alg.clone(),
            dims: sub.iter().map(|s| s.dim()).collect(),
            gens,
        }
    }

    /// The quotient by `sub`, with basis the unit vectors off the keys of each block.
    pub fn quotient(&self, sub: &BlockSpace) -> AModule {
        let f = self.alg.field();
        let off: Vec<Vec<usize>> = sub.iter().map(|s| s.non_keys()).collect();
        let gens = self
            .alg
            .generators()
            .iter()
            .zip(&self.gens)
            .map(|(g, m)| {
                let (src, dst) = (&off[g.col], &off[g.row]);
                let mut out = Mat::zeros(f, dst.len(), src.len());
                for (j, &t) in src.iter().enumerate() {
                    let r = sub[g.row].residual(&m.col(t));
                    for (i, &u) in dst.iter().enumerate() {
                        out.set(i, j, r[u]);
                    }
                }
                out
            })
            .collect();
        AModule {
            alg: self.alg.clone(),
            dims: off.iter().map(|o| o.len()).collect(),
            gens,
        }
    }

    /// `rad M = J M`, the submodule generated by the images of the arrows.
    pub fn radical(&self) -> BlockSpace {
        let s = self.alg.structure();
        let mut seeds = Vec::new();
        for (g, m) in s.gens.iter().zip(&self.gens).skip(s.transitions) {
            for j in 0..m.cols() {
                let v = m.col(j);
                if v.iter().any(|&x| x != 0) {
                    seeds.push((g.row, v));
                }
            }
        }
        self.spin(&seeds)
    }

    /// `dim e_r (M / rad M)` per block.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical()
            .iter()
            .zip(&self.dims)
            .map(|(r, &d)| d - r.dim())
            .collect()
    }

    /// Multiplicity of each simple (by class) in `dims`, a per-block dimension vector
    /// of a semisimple module or of a composition series.
    pub fn class_counts(alg: &FdAlgebra, dims: &[usize]) -> Vec<usize> {
        (0..alg.simple_count()).map(|c| dims[alg.class_rep(c)]).collect()
    }

    pub fn top_multiplicities(&self) -> Vec<usize> {
        Self::class_counts(&self.alg, &self.top_dims())
    }

    /// Composition factor multiplicities per simple class.
    pub fn composition_factors(&self) -> Vec<usize> {
        Self::class_counts(&self.alg, &self.dims)
    }

    /// Radical layers `rad^i M / rad^{i+1} M`, top first, as per-class multiplicities.
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while cur.dim() > 0 {
            let rad = cur.radical();
            let top: Vec<usize> = rad.iter().zip(&cur.dims).map(|(r, &d)| d - r.dim()).collect();
            out.push(Self::class_counts(&self.alg, &top));
            cur = cur.submodule(&rad);
        }
        out
    }

    /// Socle layers `soc^{i+1} M / soc^i M`, bottom first, via radical layers of the dual.
    pub fn socle_layers(&self) -> Vec<Vec<usize>> {
        self.dual().radical_layers()
    }

    /// `soc M = {m : J m = 0}`, the annihilator of `rad(M*)`.
    pub fn socle(&self) -> BlockSpace {
        self.dual()
            .radical()
            .iter()
            .zip(&self.dims)
            .map(|(r, &d)| {
                if r.dim() == 0 {
                    Subspace::full(self.alg.field(), d)
                } else {
                    kernel_subspace(r.basis())
                }
            })
            .collect()
    }

    /// `M* = Hom_k(M, k)` as a left module over the opposite algebra.
    pub fn dual(&self) -> AModule {
        AModule {
            alg: self.alg.opposite_arc(),
            dims: self.dims.clone(),
            gens: self.gens.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Projective iff the projective cover has the same dimension.
    pub fn is_projective(&self) -> bool {
        let mult = self.top_multiplicities();
        let cover: usize = mult
            .iter()
            .enumerate()
            .map(|(c, &m)| m * self.alg.pim_data(self.alg.class_rep(c)).dims.iter().sum::<usize>())
            .sum();
        cover == self.dim()
    }

    /// Injective iff the dual is projective over the opposite algebra.
    pub fn is_injective(&self) -> bool {
        self.dual().is_projective()
    }

    /// Action of every basis element, indexed `[r * blocks + c][i]`, recovered from the
    /// generator actions through the spanning words of each `A e_c`.
    pub fn basis_actions(&self) -> Vec<Vec<Mat>> {
        let alg = &self.alg;
        let f = alg.field();
        let b = alg.blocks();
        let mut out = vec![Vec::new(); b * b];
        for c in 0..b {
            let data = alg.pim_data(c);
            let mut imgs: Vec<Mat> = Vec::with_capacity(data.words.len());
            for w in &data.words {
                let m = match w.step {
                    None => Mat::identity(f, self.dims[c]),
                    Some((parent, k)) => self.gens[k].mul(&imgs[parent]),
                };
                imgs.push(m);
            }
            for r in 0..b {
                let inv = &data.word_inverse[r];
                out[r * b + c] = (0..alg.block_dim(r, c))
                    .map(|i| {
                        let mut acc = Mat::zeros(f, self.dims[r], self.dims[c]);
                        for (k, &idx) in data.block_words[r].iter().enumerate() {
                            let x = inv.get(k, i);
                            if x != 0 {
                                acc.add_scaled(&imgs[idx], x);
                            }
                        }
                        acc
                    })
                    .collect();
            }
        }
        out
    }

    /// Projective cover `P -> M`. Lifts of the top are the unit vectors off the keys of
    /// `rad M`; with `rng` they are perturbed by random elements of `rad M`.
    pub fn projective_cover<R: Rng>(&self, rng: Option<&mut R>) -> Cover {
        let alg = &self.alg;
        let f = alg.field();
        let rad = self.radical();
        let mut rng = rng;
        let mut summands = Vec::new();
        let mut lifts = Vec::new();
        for c in 0..alg.simple_count() {
            let r = alg.class_rep(c);
            for t in rad[r].non_keys() {
                let mut v = vec![0u32; self.dims[r]];
                v[t] = 1;
                if let Some(rng) = rng.as_deref_mut() {
                    for i in 0..rad[r].dim() {
                        let a = rng.gen_range(0..f.p());
                        if a != 0 {
                            for (x, &y) in v.iter_mut().zip(rad[r].basis().row(i)) {
                                *x = f.mul_add(*x, a, y);
                            }
                        }
                    }
                }
                summands.push(r);
                lifts.push(v);
            }
        }
        let projective = projective_sum(alg, &summands);
        let map = self.map_from_projective(&summands, &lifts);
        let kernel_space: BlockSpace = map.blocks.iter().map(kernel_subspace).collect();
        let kernel = projective.submodule(&kernel_space);
        Cover {
            multiplicities: Self::class_counts(alg, &{
                let mut d = vec![0; alg.blocks()];
                for &r in &summands {
                    d[r] += 1;
                }
                d
            }),
            summands,
            projective,
            map,
            kernel_space,
            kernel,
        }
    }

    /// The map `⊕ A e_{r_i} -> M` sending `e_{r_i}` to `lifts[i] ∈ e_{r_i} M`.
    pub fn map_from_projective(&self, summands: &[usize], lifts: &[Vec<u32>]) -> BlockMap {
        let alg = &self.alg;
        let f = alg.field();
        let b = alg.blocks();
        let total: Vec<usize> = (0..b)
            .map(|q| summands.iter().map(|&r| alg.block_dim(q, r)).sum())
            .collect();
        let mut blocks: Vec<Mat> = (0..b).map(|q| Mat::zeros(f, self.dims[q], total[q])).collect();
        let mut offs = vec![0usize; b];
        for (&r, m) in summands.iter().zip(lifts) {
            let data = alg.pim_data(r);
            // images of the spanning words
            let mut imgs: Vec<Vec<u32>> = Vec::with_capacity(data.words.len());
            for w in &data.words {
                let v = match w.step {
                    None => m.clone(),
                    Some((parent, k)) => self.gens[k].mul_vec(&imgs[parent]),
                };
                imgs.push(v);
            }
            for q in 0..b {
                let n = alg.block_dim(q, r);
                if n == 0 {
                    continue;
                }
                let mut w = Mat::zeros(f, self.dims[q], n);
                for (col, &idx) in data.block_words[q].iter().enumerate() {
                    for (i, &x) in imgs[idx].iter().enumerate() {
                        w.set(i, col, x);
                    }
                }
                blocks[q].set_block(0, offs[q], &w.mul(&data.word_inverse[q]));
                offs[q] += n;
            }
        }
        BlockMap { blocks }
    }
}

/// A projective cover and its kernel.
#[derive(Clone, Debug)]
pub struct Cover {
    /// Block `r` of each PIM summand `A e_r`, in order.
    pub summands: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub projective: AModule,
    pub map: BlockMap,
    pub kernel_space: BlockSpace,
    pub kernel: AModule,
}

/// `⊕ A e_{r_i}`, summands laid out consecutively inside every block.
pub fn projective_sum(alg: &Arc<FdAlgebra>, summands: &[usize]) -> AModule {
    let parts: Vec<AModule> = summands.iter().map(|&r| AModule::pim(alg, r)).collect();
    AModule::direct_sum_all(alg, &parts)
}

/// One vector of the spanning tree of a PIM: either `e_r` or a generator applied to
/// an earlier vector.
#[derive(Clone, Debug)]
pub struct Word {
    pub block: usize,
    pub step: Option<(usize, usize)>,
}

/// Left-regular data of `A e_r`: generator actions and a spanning tree of words from
/// `e_r`, used to write down maps out of the PIM.
#[derive(Clone, Debug)]
pub struct PimData {
    pub dims: Vec<usize>,
    pub gens: Vec<Mat>,
    pub words: Vec<Word>,
    /// Indices of the words landing in each block.
    pub block_words: Vec<Vec<usize>>,
    /// Inverse of the matrix whose columns are those words.
    pub word_inverse: Vec<Mat>,
}

pub(crate) fn build_pim_data(alg: &FdAlgebra, r: usize) -> PimData {
    let f = alg.field();
    let b = alg.blocks();
    let dims: Vec<usize> = (0..b).map(|q| alg.block_dim(q, r)).collect();
    let gens: Vec<Mat> = alg.generators().iter().map(|g| alg.left_mult(g, r)).collect();
    let mut spans: Vec<SpanBuilder> = dims.iter().map(|&d| SpanBuilder::new(f, d)).collect();
    let mut words = Vec::new();
    let mut vecs: Vec<Vec<u32>> = Vec::new();
    let mut block_words = vec![Vec::new(); b];
    let start = alg.idempotent(r).coeffs;
    spans[r].insert(&start);
    words.push(Word { block: r, step: None });
    vecs.push(start);
    block_words[r].push(0);
    let mut next = 0;
    while next < words.len() {
        let c = words[next].block;
        for (k, g) in alg.generators().iter().enumerate() {
            if g.col != c || spans[g.row].dim() == dims[g.row] {
                continue;
            }
            let w = gens[k].mul_vec(&vecs[next]);
            if spans[g.row].insert(&w) {
                block_words[g.row].push(words.len());
                words.push(Word {
                    block: g.row,
                    step: Some((next, k)),
                });
                vecs.push(w);
            }
        }
        next += 1;
    }
    let word_inverse = (0..b)
        .map(|q| {
            let cols: Vec<&Vec<u32>> = block_words[q].iter().map(|&i| &vecs[i]).collect();
            assert_eq!(cols.len(), dims[q], "generators do not span A e_r");
            let m = Mat::from_rows(f, dims[q], &cols).transpose();
            inverse(&m).expect("spanning words are a basis")
        })
        .collect();
    PimData {
        dims,
        gens,
        words,
        block_words,
        word_inverse,
    }
}

impl BlockMap {
    pub fn zero(alg: &FdAlgebra, source: &[usize], target: &[usize]) -> Self {
        let f = alg.field();
        BlockMap {
            blocks: (0..alg.blocks()).map(|r| Mat::zeros(f, target[r], source[r])).collect(),
        }
    }

    pub fn identity(m: &AModule) -> Self {
        let f = m.algebra().field();
        BlockMap {
            blocks: m.dims().iter().map(|&d| Mat::identity(f, d)).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BlockMap) -> BlockMap {
        BlockMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn kernel(&self) -> BlockSpace {
        self.blocks.iter().map(kernel_subspace).collect()
    }

    pub fn image(&self) -> BlockSpace {
        self.blocks.iter().map(Subspace::column_space).collect()
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(crate::linalg::rank).sum()
    }

    /// Whether the map commutes with every generator action.
    pub fn is_homomorphism(&self, source: &AModule, target: &AModule) -> bool {
        source
            .algebra()
            .generators()
            .iter()
            .zip(source.generator_actions().iter().zip(target.generator_actions()))
            .all(|(g, (a, b))| self.blocks[g.row].mul(a) == b.mul(&self.blocks[g.col]))
    }

    /// Inclusion of a block subspace, as a map from its keyed coordinates.
    pub fn inclusion(sub: &BlockSpace) -> BlockMap {
        BlockMap {
            blocks: sub.iter().map(|s| s.basis().transpose()).collect(),
        }
    }
}

/// Whether `a ⊆ b` blockwise.
pub fn block_contains(b: &BlockSpace, a: &BlockSpace) -> bool {
    a.iter().zip(b).all(|(x, y)| y.contains_all(x.basis()))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::algebra::tests::*;

    #[test]
    fn pims_and_regular_module() {
        let a = Arc::new(upper_triangular(2, 3));
        let reg = AModule::regular(&a);
        assert_eq!(reg.dim(), a.dim());
        assert!(reg.is_projective());
        for r in 0..3 {
            let p = AModule::pim(&a, r);
            assert!(p.is_projective());
            assert_eq!(
                p.top_multiplicities(),
                (0..3).map(|c| usize::from(c == r)).collect::<Vec<_>>()
            );
        }
        // P_2 = A e_2 is the injective hull of S_0
        assert!(AModule::pim(&a, 2).is_injective());
        assert!(!AModule::pim(&a, 0).is_injective());
    }

    #[test]
    fn covers_of_simples_and_projectives() {
        let a = Arc::new(abelian_group_algebra(3, 3, 3));
        let s = AModule::simple(&a, 0);
        assert_eq!(s.dim(), 1);
        let c = s.projective_cover::<ChaCha8Rng>(None);
        assert_eq!(c.projective.dim(), 9);
        assert_eq!(c.kernel.dim(), 8);
        assert!(c.map.is_homomorphism(&c.projective, &s));
        let p = AModule::pim(&a, 0);
        let c = p.projective_cover(Some(&mut ChaCha8Rng::seed_from_u64(3)));
        assert_eq!(c.kernel.dim(), 0);
        assert!(c.map.is_homomorphism(&c.projective, &p));
    }

    #[test]
    fn layers_and_socle() {
        let a = Arc::new(abelian_group_algebra(3, 3, 3));
        let p = AModule::pim(&a, 0);
        let layers: Vec<usize> = p.radical_layers().iter().map(|l| l[0]).collect();
        assert_eq!(layers, vec![1, 2, 3, 2, 1]);
        assert_eq!(p.socle()[0].dim(), 1);
        let m = Arc::new(matrix_algebra(3));
        let reg = AModule::regular(&m);
        assert_eq!(reg.radical_layers(), vec![vec![2]]);
        assert!(reg.is_injective());
    }

    #[test]
    fn basis_action_verification() {
        let a = Arc::new(upper_triangular(3, 2));
        // unit actions on every component realize A e_1; doubling them breaks e_r^2 = e_r
        let ok = AModule::from_basis_actions(
            a.clone(),
            vec![1, 1],
            |r, c, _| Mat::identity(a.field(), 1).scale(u32::from(r <= c)),
            true,
        );
        assert!(ok.is_ok());
        let bad = AModule::from_basis_actions(
            a.clone(),
            vec![1, 1],
            |_, _, _| Mat::identity(a.field(), 1).scale(2),
            true,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn basis_actions_rebuild_the_module() {
        let a = Arc::new(abelian_group_algebra(2, 2, 2));
        let reg = AModule::regular(&a);
        let table = reg.basis_actions();
        let again = AModule::from_basis_actions(
            a.clone(),
            reg.dims().to_vec(),
            |r, c, i| table[r * a.blocks() + c][i].clone(),
            true,
        )
        .unwrap();
        assert_eq!(again.generator_actions(), reg.generator_actions());
        let u = Arc::new(upper_triangular(3, 3));
        let p = AModule::pim(&u, 2);
        let t = p.basis_actions();
        let q =
            AModule::from_basis_actions(u.clone(), p.dims().to_vec(), |r, c, i| t[r * 3 + c][i].clone(), true).unwrap();
        assert_eq!(q.generator_actions(), p.generator_actions());
    }
}
