use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{CosetSpace, Group, Subgroup, SubgroupLattice};
use crate::linalg::{inverse, kernel_subspace_of_stack, Mat, PrimeField, Subspace};

/// A representation of a finite group over `F_p`, given by one invertible matrix
/// per group generator. Actions of all elements are derived once on demand.
#[derive(Clone, Debug)]
pub struct KGModule {
    group: Arc<Group>,
    field: PrimeField,
    dim: usize,
    gens: Vec<Mat>,
    elements: OnceLock<Arc<Vec<Mat>>>,
}

impl PartialEq for KGModule {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.gens == other.gens && *self.group == *other.group
    }
}

impl KGModule {
    /// Validates shapes, invertibility and that the matrices define a homomorphism.
    pub fn new(group: Arc<Group>, field: PrimeField, dim: usize, gens: Vec<Mat>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        for m in &gens {
            if m.rows() != dim || m.cols() != dim || m.field() != field {
                return Err(Error::InvalidModule("generator matrix has the wrong shape".into()));
            }
            if inverse(m).is_none() {
                return Err(Error::InvalidModule("generator matrix is singular".into()));
            }
        }
        let module = Self::from_parts(group, field, dim, gens);
        module.check_relations()?;
        Ok(module)
    }

    /// Trusted constructor for matrices produced by the library itself.
    pub(crate) fn from_parts(group: Arc<Group>, field: PrimeField, dim: usize, gens: Vec<Mat>) -> Self {
        Self {
            group,
            field,
            dim,
            gens,
            elements: OnceLock::new(),
        }
    }

    /// Checks `rho(s) rho(x) = rho(s x)` for every generator `s` and element `x`,
    /// which together with the derivation of `rho` from words makes it a homomorphism.
    pub fn check_relations(&self) -> Result<()> {
        let g = &*self.group;
        let acts = self.element_actions();
        for (k, &s) in g.generators().iter().enumerate() {
            for x in g.elements() {
                if self.gens[k].mul(&acts[x]) != acts[g.mul(s, x)] {
                    return Err(Error::InvalidModule(format!(
                        "generator {s} times element {x} violates the group law"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<Group>, field: PrimeField) -> Self {
        let gens = vec![Mat::identity(field, 1); group.generators().len()];
        Self::from_parts(group, field, 1, gens)
    }

    /// The permutation module `k[G/H]` on the given coset space.
    pub fn permutation(group: Arc<Group>, field: PrimeField, cosets: &CosetSpace) -> Self {
        let m = cosets.len();
        let gens = group
            .generators()
            .iter()
            .map(|&s| {
                let mut a = Mat::zeros(field, m, m);
                for c in 0..m {
                    a.set(cosets.act(s, c), c, 1);
                }
                a
            })
            .collect();
        Self::from_parts(group, field, m, gens)
    }

    pub fn permutation_on(group: Arc<Group>, lat: &SubgroupLattice, field: PrimeField, h: usize) -> Self {
        let cs = CosetSpace::new(&group, lat, h);
        Self::permutation(group, field, &cs)
    }

    pub fn regular(group: Arc<Group>, field: PrimeField) -> Self {
        let n = group.order();
        let gens = group
            .generators()
            .iter()
            .map(|&s| {
                let mut a = Mat::zeros(field, n, n);
                for x in 0..n {
                    a.set(group.mul(s, x), x, 1);
                }
                a
            })
            .collect();
        Self::from_parts(group, field, n, gens)
    }

    /// The free module of the given rank; basis vector `(x, i)` sits at index `i * |G| + x`.
    pub fn free(group: Arc<Group>, field: PrimeField, rank: usize) -> Self {
        let reg = Self::regular(group, field);
        let mut out = Self::zero(reg.group.clone(), field);
        for _ in 0..rank {
            out = out.direct_sum(&reg).expect("same group");
        }
        out
    }

    pub fn zero(group: Arc<Group>, field: PrimeField) -> Self {
        let gens = vec![Mat::zeros(field, 0, 0); group.generators().len()];
        Self::from_parts(group, field, 0, gens)
    }

    /// A random module obtained as a quotient of a permutation module by a random submodule.
    pub fn random_quotient_of<R: Rng>(perm: &KGModule, rng: &mut R) -> KGModule {
        if perm.dim == 0 {
            return perm.clone();
        }
        let v: Vec<u32> = (0..perm.dim).map(|_| rng.gen_range(0..perm.field.p())).collect();
        let sub = perm.spin(&Mat::from_rows(perm.field, perm.dim, &[v]));
        if sub.dim() == perm.dim {
            return perm.clone();
        }
        perm.quotient(&sub)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_actions(&self) -> &[Mat] {
        &self.gens
    }

    pub fn same_context(&self, other: &KGModule) -> bool {
        self.field == other.field && (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
    }

    fn check_same(&self, other: &KGModule) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::Incompatible)
        }
    }

    /// Action matrices of all group elements, indexed by element.
    pub fn element_actions(&self) -> &Arc<Vec<Mat>> {
        self.elements.get_or_init(|| {
            let g = &*self.group;
            let mut acts: Vec<Option<Mat>> = vec![None; g.order()];
            acts[0] = Some(Mat::identity(self.field, self.dim));
            let tree = g.cayley_tree();
            for x in g.bfs_order().into_iter().skip(1) {
                let (parent, k) = tree[x].expect("reachable");
                let m = self.gens[k].mul(acts[parent].as_ref().expect("parent first"));
                acts[x] = Some(m);
            }
            Arc::new(acts.into_iter().map(|m| m.expect("all elements reached")).collect())
        })
    }

    pub fn action(&self, x: usize) -> &Mat {
        &self.element_actions()[x]
    }

    pub fn direct_sum(&self, other: &KGModule) -> Result<KGModule> {
        self.check_same(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(Self::from_parts(
            self.group.clone(),
            self.field,
            self.dim + other.dim,
            gens,
        ))
    }

    pub fn direct_sum_all(parts: &[KGModule]) -> Result<KGModule> {
        let mut it = parts.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::InvalidModule("empty direct sum".into()))?;
        let mut acc = first.clone();
        for m in it {
            acc = acc.direct_sum(m)?;
        }
        Ok(acc)
    }

    /// Contragredient module: generators act by inverse transposes.
    pub fn dual(&self) -> KGModule {
        let gens = self
            .gens
            .iter()
            .map(|m| inverse(m).expect("actions are invertible").transpose())
            .collect();
        Self::from_parts(self.group.clone(), self.field, self.dim, gens)
    }

    /// Submodule spanned by `rows` under the group action.
    pub fn spin(&self, rows: &Mat) -> Subspace {
        let mut span = Subspace::row_space(rows);
        loop {
            let mut images = Mat::zeros(self.field, 0, self.dim);
            for s in &self.gens {
                for i in 0..span.dim() {
                    images.push_row(&s.mul_vec(span.basis().row(i)));
                }
            }
            let next = Subspace::row_space(&span.basis().vstack(&images));
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        self.gens
            .iter()
            .all(|s| (0..sub.dim()).all(|i| sub.contains(&s.mul_vec(sub.basis().row(i)))))
    }

    /// The submodule on an invariant subspace, in the coordinates of its keyed basis.
    pub fn submodule(&self, sub: &Subspace) -> KGModule {
        let gens = self.gens.iter().map(|s| restrict_to(s, sub)).collect();
        Self::from_parts(self.group.clone(), self.field, sub.dim(), gens)
    }

    /// The quotient by an invariant subspace, with basis the unit vectors off its keys.
    pub fn quotient(&self, sub: &Subspace) -> KGModule {
        let gens = self.gens.iter().map(|s| quotient_action(s, sub)).collect();
        Self::from_parts(self.group.clone(), self.field, self.dim - sub.dim(), gens)
    }

    /// Fixed points `M^H` of a subgroup.
    pub fn fixed_points(&self, h: &Subgroup) -> Subspace {
        self.fixed_points_of(&h.gens)
    }

    /// Common fixed points of the given group elements.
    pub fn fixed_points_of(&self, elements: &[usize]) -> Subspace {
        if elements.is_empty() {
            return Subspace::full(self.field, self.dim);
        }
        let id = Mat::identity(self.field, self.dim);
        let blocks: Vec<Mat> = elements.iter().map(|&x| self.action(x).sub(&id)).collect();
        kernel_subspace_of_stack(self.field, self.dim, &blocks)
    }

    /// Relative trace `Tr_L^H` applied to the rows of `vectors` (which should lie in `M^L`).
    pub fn relative_trace(&self, l: &Subgroup, h: &Subgroup, vectors: &Mat) -> Mat {
        let reps = left_coset_reps(&self.group, &h.elements, l);
        let mut out = Mat::zeros(self.field, vectors.rows(), self.dim);
        for i in 0..vectors.rows() {
            let mut acc = vec![0u32; self.dim];
            for &t in &reps {
                let v = self.action(t).mul_vec(vectors.row(i));
                for (a, b) in acc.iter_mut().zip(v) {
                    *a = self.field.add(*a, b);
                }
            }
            out.row_mut(i).copy_from_slice(&acc);
        }
        out
    }

    /// Restriction to a subgroup. The subgroup becomes a group in its own right,
    /// with elements renumbered by their position in `h.elements`.
    pub fn restrict(&self, h: &Subgroup) -> Result<KGModule> {
        let sub = Arc::new(self.group.subgroup_as_group(&h.elements)?);
        let gens = sub
            .generators()
            .iter()
            .map(|&k| self.action(h.elements[k]).clone())
            .collect();
        Ok(Self::from_parts(sub, self.field, self.dim, gens))
    }

    /// Induction from the subgroup `h` (whose elements, in `G` numbering, are `h.elements`)
    /// of a module over the renumbered subgroup. Basis vector `c * dim + i` is `x_c ⊗ m_i`
    /// for the coset representative `x_c`.
    pub fn induce(&self, g: Arc<Group>, lat: &SubgroupLattice, h: &Subgroup) -> Result<KGModule> {
        if self.group.order() != h.order() {
            return Err(Error::NotSubgroup("module group does not match the subgroup".into()));
        }
        let cs = CosetSpace::new(&g, lat, h.id);
        let m = cs.len();
        let d = self.dim;
        let gens = g
            .generators()
            .iter()
            .map(|&s| {
                let mut a = Mat::zeros(self.field, m * d, m * d);
                for c in 0..m {
                    let c2 = cs.act(s, c);
                    // s x_c = x_c2 h with h in H
                    let hh = g.mul(g.inv(cs.reps[c2]), g.mul(s, cs.reps[c]));
                    let k = h.elements.binary_search(&hh).expect("lands in H");
                    a.set_block(c2 * d, c * d, self.action(k));
                }
                a
            })
            .collect();
        Ok(Self::from_parts(g, self.field, m * d, gens))
    }
}

/// Action of `s` restricted to an invariant subspace, in keyed coordinates.
pub(crate) fn restrict_to(s: &Mat, sub: &Subspace) -> Mat {
    let k = sub.dim();
    let mut out = Mat::zeros(s.field(), k, k);
    for j in 0..k {
        let img = s.mul_vec(sub.basis().row(j));
        let c = sub.coords_unchecked(&img);
        for i in 0..k {
            out.set(i, j, c[i]);
        }
    }
    out
}

/// Action of `s` on the quotient by an invariant subspace.
pub(crate) fn quotient_action(s: &Mat, sub: &Subspace) -> Mat {
    let off = sub.non_keys();
    let q = off.len();
    let mut out = Mat::zeros(s.field(), q, q);
    for (j, &t) in off.iter().enumerate() {
        let r = sub.residual(&s.col(t));
        for (i, &u) in off.iter().enumerate() {
            out.set(i, j, r[u]);
        }
    }
    out
}

/// A short exact sequence `0 -> A -> B -> C -> 0`, maps acting on column vectors.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub sub: KGModule,
    pub middle: KGModule,
    pub quotient: KGModule,
    pub incl: Mat,
    pub proj: Mat,
}

impl ShortExact {
    pub fn from_submodule(m: &KGModule, sub: &Subspace) -> Self {
        let off = sub.non_keys();
        let mut proj = Mat::zeros(m.field, off.len(), m.dim);
        for t in 0..m.dim {
            let mut e = vec![0; m.dim];
            e[t] = 1;
            let r = sub.residual(&e);
            for (i, &u) in off.iter().enumerate() {
                proj.set(i, t, r[u]);
            }
        }
        Self {
            sub: m.submodule(sub),
            middle: m.clone(),
            quotient: m.quotient(sub),
            incl: sub.basis().transpose(),
            proj,
        }
    }

    /// Middle term a random quotient of `perm`, left term generated by a random vector.
    pub fn random<R: Rng>(perm: &KGModule, rng: &mut R) -> Self {
        let m = KGModule::random_quotient_of(perm, rng);
        let v: Vec<u32> = (0..m.dim).map(|_| rng.gen_range(0..m.field.p())).collect();
        let sub = m.spin(&Mat::from_rows(m.field, m.dim, &[v]));
        Self::from_submodule(&m, &sub)
    }
}

/// Representatives of the left cosets `tL` inside `H` (given as a sorted element list).
pub fn left_coset_reps(g: &Group, h: &[usize], l: &Subgroup) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for &t in h {
        if seen.contains(&t) {
            continue;
        }
        reps.push(t);
        for &x in &l.elements {
            seen.insert(g.mul(t, x));
        }
    }
    reps
}
