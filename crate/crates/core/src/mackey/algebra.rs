use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{AModule, Elem, FdAlgebra};
use crate::comack::subgroup_class_labels;
use crate::error::{Error, Result};
use crate::group::{CosetSpace, Group, SubgroupLattice};
use crate::kg::module::left_coset_reps;
use crate::kg::KGModule;
use crate::linalg::{kernel, rank, Mat, PrimeField, Subspace};

/// Largest group order accepted by [`MackeyAlgebra::build`].
pub const MACKEY_ORDER_LIMIT: usize = 8;

/// The class of the transitive span `G/H <- G/L -> G/K`, `gL -> (g x, g y)`, with
/// `x ∈ G/H`, `y ∈ G/K` and `L <= Stab(x) ∩ Stab(y)`. Canonical representatives are
/// lexicographically least in their `G`-orbit, so `x` is always the base coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub x: usize,
    pub y: usize,
    pub middle: usize,
}

/// The Mackey algebra `μ_k(G)`: spans between the `G/H` for all subgroups, composed by
/// pullback. Component `(H, K)` maps `M(K) -> M(H)`.
#[derive(Clone, Debug)]
pub struct MackeyAlgebra {
    pub group: Arc<Group>,
    pub lattice: SubgroupLattice,
    pub field: PrimeField,
    cosets: Vec<CosetSpace>,
    /// Canonical spans of each component `(H, K)`, indexed `H * b + K`.
    pub basis: Vec<Vec<Span>>,
    index: Vec<HashMap<Span, usize>>,
    pub algebra: Arc<FdAlgebra>,
}

struct SpanData<'a> {
    group: &'a Group,
    lattice: &'a SubgroupLattice,
    cosets: &'a [CosetSpace],
}

impl SpanData<'_> {
    fn canonical(&self, h: usize, k: usize, s: Span) -> Span {
        let g = self.group;
        g.elements()
            .map(|a| Span {
                x: self.cosets[h].act(a, s.x),
                y: self.cosets[k].act(a, s.y),
                middle: self.lattice.conjugate(g, a, s.middle),
            })
            .min()
            .expect("groups are nonempty")
    }

    fn stabilizer_meet(&self, h: usize, x: usize, k: usize, y: usize) -> usize {
        let g = self.group;
        let elems: Vec<usize> = g
            .elements()
            .filter(|&a| self.cosets[h].act(a, x) == x && self.cosets[k].act(a, y) == y)
            .collect();
        self.lattice.find(&elems).expect("stabilizers are subgroups")
    }

    /// Canonical spans of component `(h, k)`.
    fn enumerate(&self, h: usize, k: usize) -> Vec<Span> {
        let mut out: Vec<Span> = Vec::new();
        for y in 0..self.cosets[k].len() {
            let meet = self.stabilizer_meet(h, 0, k, y);
            for l in 0..self.lattice.len() {
                if self.lattice.le(l, meet) {
                    let s = self.canonical(h, k, Span { x: 0, y, middle: l });
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `s1 ∘ s2` for `s1` in `(h, k)` and `s2` in `(k, j)`, as canonical spans of `(h, j)`
    /// with multiplicities: one term per `G`-orbit of the pullback over `G/K`.
    fn compose(&self, h: usize, k: usize, j: usize, s1: Span, s2: Span) -> Vec<(Span, u32)> {
        let g = self.group;
        let c1 = CosetSpace::new(g, self.lattice, s1.middle);
        let c2 = CosetSpace::new(g, self.lattice, s2.middle);
        let ck = &self.cosets[k];
        let (n1, n2) = (c1.len(), c2.len());
        let mut seen = vec![false; n1 * n2];
        let mut out: Vec<(Span, u32)> = Vec::new();
        for a in 0..n1 {
            for b in 0..n2 {
                if seen[a * n2 + b] || ck.act(c1.reps[a], s1.y) != ck.act(c2.reps[b], s2.x) {
                    continue;
                }
                let mut stab = Vec::new();
                for z in g.elements() {
                    let (a2, b2) = (c1.act(z, a), c2.act(z, b));
                    seen[a2 * n2 + b2] = true;
                    if a2 == a && b2 == b {
                        stab.push(z);
                    }
                }
                let middle = self.lattice.find(&stab).expect("stabilizers are subgroups");
                let span = self.canonical(
                    h,
                    j,
                    Span {
                        x: self.cosets[h].act(c1.reps[a], s1.x),
                        y: self.cosets[j].act(c2.reps[b], s2.y),
                        middle,
                    },
                );
                match out.iter_mut().find(|(s, _)| *s == span) {
                    Some(e) => e.1 += 1,
                    None => out.push((span, 1)),
                }
            }
        }
        out
    }
}

impl MackeyAlgebra {
    pub fn build(group: Arc<Group>, p: u32) -> Result<Self> {
        if group.order() > MACKEY_ORDER_LIMIT {
            return Err(Error::Budget(format!(
                "Mackey algebra needs |G| <= {MACKEY_ORDER_LIMIT}, got {}",
                group.order()
            )));
        }
        let field = PrimeField::new(p)?;
        let lattice = SubgroupLattice::new(&group)?;
        let b = lattice.len();
        let cosets: Vec<CosetSpace> = (0..b).map(|h| CosetSpace::new(&group, &lattice, h)).collect();
        let data = SpanData {
            group: &group,
            lattice: &lattice,
            cosets: &cosets,
        };
        let mut basis = Vec::with_capacity(b * b);
        for h in 0..b {
            for k in 0..b {
                basis.push(data.enumerate(h, k));
            }
        }
        let index: Vec<HashMap<Span, usize>> = basis
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let idem: Vec<usize> = (0..b)
            .map(|h| index[h * b + h][&Span { x: 0, y: 0, middle: h }])
            .collect();
        let class_labels = subgroup_class_labels(&lattice);
        let labels: Vec<String> = (0..b).map(|h| class_labels[lattice.class_of(h)].clone()).collect();
        let algebra = FdAlgebra::new(field, labels, dims, idem, |r, c, d, i, j| {
            data.compose(r, c, d, basis[r * b + c][i], basis[c * b + d][j])
                .into_iter()
                .map(|(s, m)| (index[r * b + d][&s], m))
                .collect()
        })
        .map_err(|e| match e {
            Error::Unsupported(why) => Error::Unsupported(format!(
                "Mackey algebra of {} over F_{p}: {why} (the group is probably not a p-group)",
                group.descriptor()
            )),
            other => other,
        })?;
        Ok(Self {
            group,
            lattice,
            field,
            cosets,
            basis,
            index,
            algebra: Arc::new(algebra),
        })
    }

    pub fn blocks(&self) -> usize {
        self.lattice.len()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn elem(&self, h: usize, k: usize, s: Span) -> Elem {
        let b = self.blocks();
        let data = SpanData {
            group: &self.group,
            lattice: &self.lattice,
            cosets: &self.cosets,
        };
        let mut e = self.algebra.zero_elem(h, k);
        e.coeffs[self.index[h * b + k][&data.canonical(h, k, s)]] = 1;
        e
    }

    /// `t_L^H`, in component `(H, L)`.
    pub fn transfer(&self, l: usize, h: usize) -> Elem {
        self.elem(h, l, Span { x: 0, y: 0, middle: l })
    }

    /// `r^H_L`, in component `(L, H)`.
    pub fn restriction(&self, h: usize, l: usize) -> Elem {
        self.elem(l, h, Span { x: 0, y: 0, middle: l })
    }

    /// `c_g` on `M(1)`, in component `(1, 1)`.
    pub fn conjugation(&self, g: usize) -> Elem {
        let t = self.lattice.trivial();
        self.elem(
            t,
            t,
            Span {
                x: 0,
                y: self.cosets[t].coset_of(g),
                middle: t,
            },
        )
    }

    /// Action of span `i` of component `(h, k)` on `U^K -> U^H`: `u -> Σ_{g ∈ H/L} g b u`
    /// with `y = bK`, on the given fixed-point bases.
    fn span_action(&self, u: &KGModule, h: usize, k: usize, i: usize, fixed: &[Subspace]) -> Mat {
        let s = self.basis[h * self.blocks() + k][i];
        let bt = fixed[k].basis().transpose();
        let mut acc = Mat::zeros(self.field, u.dim(), u.dim());
        let b = self.cosets[k].reps[s.y];
        for g in left_coset_reps(&self.group, &self.lattice.get(h).elements, self.lattice.get(s.middle)) {
            acc.add_scaled(u.action(self.group.mul(g, b)), 1);
        }
        acc.mul(&bt).select_rows(fixed[h].keys())
    }

    /// Basis actions of the fixed point functor of `u`, indexed `[H * b + K][i]`.
    pub fn fixed_point_actions(&self, u: &KGModule) -> (Vec<usize>, Vec<Vec<Mat>>) {
        let b = self.blocks();
        let fixed: Vec<Subspace> = self.lattice.subgroups().iter().map(|s| u.fixed_points(s)).collect();
        let dims = fixed.iter().map(Subspace::dim).collect();
        let mut table = Vec::with_capacity(b * b);
        for h in 0..b {
            for k in 0..b {
                table.push(
                    (0..self.basis[h * b + k].len())
                        .map(|i| self.span_action(u, h, k, i, &fixed))
                        .collect(),
                );
            }
        }
        (dims, table)
    }

    /// The fixed point Mackey functor `H -> U^H`: transfer is the relative trace,
    /// restriction the inclusion, conjugation the translation.
    pub fn fixed_point_module(&self, u: &KGModule) -> Result<AModule> {
        if **u.group() != *self.group || u.field() != self.field {
            return Err(Error::Incompatible);
        }
        let (dims, table) = self.fixed_point_actions(u);
        let b = self.blocks();
        AModule::from_basis_actions(self.algebra.clone(), dims, |h, k, i| table[h * b + k][i].clone(), false)
    }

    /// `⊕_K k[G/K]` over all subgroups.
    pub fn all_permutation_modules(&self) -> KGModule {
        let parts: Vec<KGModule> = (0..self.blocks())
            .map(|k| KGModule::permutation_on(self.group.clone(), &self.lattice, self.field, k))
            .collect();
        KGModule::direct_sum_all(&parts).expect("same group")
    }

    /// The image of `μ` acting on the fixed point functor of `⊕_K k[G/K]`.
    pub fn cohomological_quotient(&self) -> Result<CohomologicalQuotient> {
        let u = self.all_permutation_modules();
        let (_, table) = self.fixed_point_actions(&u);
        let b = self.blocks();
        let mut image_dim = 0;
        let mut kernel_elems = Vec::new();
        for h in 0..b {
            for k in 0..b {
                let acts = &table[h * b + k];
                if acts.is_empty() {
                    continue;
                }
                let width = acts[0].rows() * acts[0].cols();
                let mut m = Mat::zeros(self.field, acts.len(), width);
                for (i, a) in acts.iter().enumerate() {
                    m.row_mut(i).copy_from_slice(&a.flatten());
                }
                image_dim += rank(&m);
                let ker = kernel(&m.transpose());
                for r in 0..ker.rows() {
                    kernel_elems.push(Elem {
                        row: h,
                        col: k,
                        coeffs: ker.row(r).to_vec(),
                    });
                }
            }
        }
        let expected = self.double_coset_total()?;
        // t_L^H r^H_L acts as [H:L] on the fixed point functor of every module
        let fp = self.fixed_point_module(&u)?;
        let mut relation_holds = true;
        let acts = fp.basis_actions();
        let act = |e: &Elem| {
            let mut acc = Mat::zeros(self.field, fp.dims()[e.row], fp.dims()[e.col]);
            for (m, &x) in acts[e.row * b + e.col].iter().zip(&e.coeffs) {
                if x != 0 {
                    acc.add_scaled(m, x);
                }
            }
            acc
        };
        for h in 0..b {
            for l in 0..b {
                if !self.lattice.le(l, h) {
                    continue;
                }
                let index = (self.lattice.get(h).order() / self.lattice.get(l).order()) as u32;
                let tr = self.algebra.mul(&self.transfer(l, h), &self.restriction(h, l));
                let lhs = act(&tr);
                let rhs = Mat::identity(self.field, fp.dims()[h]).scale(self.field.reduce(index));
                relation_holds &= lhs == rhs;
            }
        }
        Ok(CohomologicalQuotient {
            mackey_dim: self.dim(),
            image_dim,
            kernel_dim: kernel_elems.len(),
            expected_dim: expected,
            relation_holds,
            kernel: kernel_elems,
        })
    }

    /// `Σ_{H,K} #(H\G/K)` over all pairs of subgroups.
    pub fn double_coset_total(&self) -> Result<usize> {
        let mut total = 0;
        for h in self.lattice.subgroups() {
            for k in self.lattice.subgroups() {
                total += crate::group::double_cosets(&self.group, &h.elements, &k.elements)?.len();
            }
        }
        Ok(total)
    }
}

/// The cohomological Mackey algebra as a quotient of `μ`.
#[derive(Clone, Debug)]
pub struct CohomologicalQuotient {
    pub mackey_dim: usize,
    pub image_dim: usize,
    pub kernel_dim: usize,
    /// `Σ_{H,K} #(H\G/K)`.
    pub expected_dim: usize,
    /// `t_L^H r^H_L = [H:L]` in the image for all `L <= H`.
    pub relation_holds: bool,
    pub kernel: Vec<Elem>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comack::{fp, Family, YoshidaContext};
    use crate::group::double_cosets;

    fn mu(s: &str, p: u32) -> MackeyAlgebra {
        MackeyAlgebra::build(Arc::new(Group::parse(s).unwrap()), p).unwrap()
    }

    /// Span classes by Burnside's lemma: triples `(x, y, L)` with `L <= Stab x ∩ Stab y`,
    /// averaged over the number fixed by each `g`.
    fn burnside_count(m: &MackeyAlgebra) -> usize {
        let g = &m.group;
        let lat = &m.lattice;
        let mut total = 0;
        for h in 0..lat.len() {
            for k in 0..lat.len() {
                let (ch, ck) = (&m.cosets[h], &m.cosets[k]);
                let mut fixed = 0;
                for a in g.elements() {
                    for x in 0..ch.len() {
                        for y in 0..ck.len() {
                            if ch.act(a, x) != x || ck.act(a, y) != y {
                                continue;
                            }
                            for l in 0..lat.len() {
                                let ok = lat
                                    .get(l)
                                    .elements
                                    .iter()
                                    .all(|&z| ch.act(z, x) == x && ck.act(z, y) == y);
                                if ok && lat.conjugate(g, a, l) == l {
                                    fixed += 1;
                                }
                            }
                        }
                    }
                }
                assert_eq!(fixed % g.order(), 0);
                total += fixed / g.order();
            }
        }
        total
    }

    #[test]
    fn dimensions() {
        assert_eq!(mu("cyclic:1", 2).dim(), 1);
        assert_eq!(mu("cyclic:2", 2).dim(), 6);
        for (s, p) in [
            ("cyclic:2", 2),
            ("cyclic:3", 3),
            ("cyclic:4", 2),
            ("dihedral:4", 2),
            ("dihedral:8", 2),
        ] {
            let m = mu(s, p);
            assert_eq!(m.dim(), burnside_count(&m), "{s}");
        }
        assert!(MackeyAlgebra::build(Arc::new(Group::cyclic(9).unwrap()), 3).is_err());
    }

    #[test]
    fn mackey_formula_for_restriction_of_transfer() {
        let m = mu("dihedral:8", 2);
        let lat = &m.lattice;
        let whole = lat.whole();
        for h in 0..lat.len() {
            for k in 0..lat.len() {
                let prod = m.algebra.mul(&m.restriction(whole, k), &m.transfer(h, whole));
                let terms: Vec<u32> = prod.coeffs.iter().copied().filter(|&c| c != 0).collect();
                let dc = double_cosets(&m.group, &lat.get(k).elements, &lat.get(h).elements).unwrap();
                assert_eq!(terms.len(), dc.len());
                assert!(terms.iter().all(|&c| c == 1));
            }
        }
    }

    #[test]
    fn cohomological_quotients() {
        let q = mu("cyclic:2", 2).cohomological_quotient().unwrap();
        assert_eq!((q.mackey_dim, q.image_dim, q.kernel_dim), (6, 5, 1));
        assert!(q.relation_holds);
        for (s, p) in [("dihedral:4", 2), ("cyclic:4", 2), ("cyclic:3", 3)] {
            let m = mu(s, p);
            let q = m.cohomological_quotient().unwrap();
            let y = YoshidaContext::build(m.group.clone(), p, Family::All).unwrap();
            assert_eq!(q.image_dim, y.dim(), "{s}");
            assert_eq!(q.image_dim, q.expected_dim);
            assert!(q.relation_holds);
        }
    }

    #[test]
    fn fixed_point_modules() {
        let m = mu("dihedral:4", 2);
        let f = m.field;
        let y = YoshidaContext::build(m.group.clone(), 2, Family::All).unwrap();
        let q = m.cohomological_quotient().unwrap();
        let k = KGModule::trivial(m.group.clone(), f);
        let kg = KGModule::regular(m.group.clone(), f);
        let fk = m.fixed_point_module(&k).unwrap();
        assert!(fk.dims().iter().all(|&d| d == 1));
        assert_eq!(m.fixed_point_module(&kg).unwrap().dims()[m.lattice.trivial()], 4);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(8);
        for _ in 0..4 {
            let perm = KGModule::permutation_on(m.group.clone(), &m.lattice, f, 1)
                .direct_sum(&kg)
                .unwrap();
            let u = KGModule::random_quotient_of(&perm, &mut rng);
            let mm = m.fixed_point_module(&u).unwrap();
            let acts = mm.basis_actions();
            let b = m.blocks();
            // the action factors through the cohomological quotient
            for e in &q.kernel {
                let mut acc = Mat::zeros(f, mm.dims()[e.row], mm.dims()[e.col]);
                for (a, &x) in acts[e.row * b + e.col].iter().zip(&e.coeffs) {
                    acc.add_scaled(a, x);
                }
                assert!(acc.is_zero());
            }
            let fpu = fp(&y, &u).unwrap();
            assert_eq!(mm.dims(), fpu.evaluations());
        }
        // conjugation elements act as the group on M(1)
        let x = m.group.generators()[0];
        let c = m.conjugation(x);
        let a = m.fixed_point_module(&kg).unwrap().basis_actions();
        let t = m.lattice.trivial();
        let b = m.blocks();
        let mut acc = Mat::zeros(f, 4, 4);
        for (mat, &v) in a[t * b + t].iter().zip(&c.coeffs) {
            acc.add_scaled(mat, v);
        }
        assert_eq!(&acc, kg.action(x));
    }
}
