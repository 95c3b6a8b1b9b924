use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::group::{CosetSpace, Group, SubgroupLattice};
use crate::linalg::PrimeField;

/// Largest group order accepted with the all-subgroups family.
pub const ALL_FAMILY_ORDER_LIMIT: usize = 16;
/// Largest group order accepted with the representatives family.
pub const REPRESENTATIVE_ORDER_LIMIT: usize = 32;

/// Which subgroups index the permutation modules `k[G/H]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    All,
    Representatives,
}

/// Orbits of `G` on `G/c x G/r` for one component `(r, c)` of the algebra.
#[derive(Clone, Debug)]
pub(crate) struct OrbitTable {
    /// `ids[x * n_r + y]` for `x` in `G/c`, `y` in `G/r`.
    pub ids: Vec<u32>,
    pub n_r: usize,
    /// The orbit of `(x, base)` for each orbit id, `x` minimal.
    pub reps: Vec<usize>,
}

impl OrbitTable {
    fn new(g: &Group, cs_c: &CosetSpace, cs_r: &CosetSpace) -> Self {
        let (n_c, n_r) = (cs_c.len(), cs_r.len());
        let mut ids = vec![u32::MAX; n_c * n_r];
        let mut reps = Vec::new();
        // every orbit meets y = base, since G is transitive on G/r
        for x in 0..n_c {
            if ids[x * n_r] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for a in g.elements() {
                ids[cs_c.act(a, x) * n_r + cs_r.act(a, 0)] = id;
            }
        }
        Self { ids, n_r, reps }
    }

    #[inline]
    pub fn id(&self, x: usize, y: usize) -> usize {
        self.ids[x * self.n_r + y] as usize
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }
}

/// `E = End_kG(P)^op` for `P = ⊕ k[G/H]` over a family of subgroups, acting on
/// `Hom_kG(P, U) = ⊕ U^H` by precomposition. The basis element of component `(r, c)`
/// indexed by a `G`-orbit `O` on `G/c x G/r` maps `u ∈ U^c` to `Σ x·u` over the cosets
/// `xc` with `(xc, base_r) ∈ O`.
#[derive(Clone, Debug)]
pub struct YoshidaContext {
    pub group: Arc<Group>,
    pub lattice: SubgroupLattice,
    pub field: PrimeField,
    pub family: Family,
    /// Subgroup id of each block.
    pub members: Vec<usize>,
    pub(crate) cosets: Vec<CosetSpace>,
    pub(crate) orbits: Vec<OrbitTable>,
    /// `sigma[r * b + c][i]`: index in component `(c, r)` of the transposed orbit.
    pub(crate) sigma: Vec<Vec<usize>>,
    pub algebra: Arc<FdAlgebra>,
    /// Label of each subgroup conjugacy class.
    pub class_labels: Vec<String>,
}

/// Labels subgroup classes by order, with letters when one order has several classes.
pub fn subgroup_class_labels(lat: &SubgroupLattice) -> Vec<String> {
    let orders: Vec<usize> = lat.classes().iter().map(|c| lat.get(c[0]).order()).collect();
    let mut seen = std::collections::HashMap::<usize, usize>::new();
    orders
        .iter()
        .map(|&o| {
            let total = orders.iter().filter(|&&x| x == o).count();
            let k = seen.entry(o).or_insert(0);
            let label = if total == 1 {
                o.to_string()
            } else {
                format!("{o}{}", (b'a' + *k as u8) as char)
            };
            *k += 1;
            label
        })
        .collect()
}

impl YoshidaContext {
    pub fn build(group: Arc<Group>, p: u32, family: Family) -> Result<Self> {
        let n = group.order();
        let limit = match family {
            Family::All => ALL_FAMILY_ORDER_LIMIT,
            Family::Representatives => REPRESENTATIVE_ORDER_LIMIT,
        };
        if n > limit {
            return Err(Error::Budget(format!(
                "Yoshida algebra with family {family:?} needs |G| <= {limit}, got {n}"
            )));
        }
        let field = PrimeField::new(p)?;
        let lattice = SubgroupLattice::new(&group)?;
        let members: Vec<usize> = match family {
            Family::All => (0..lattice.len()).collect(),
            Family::Representatives => lattice.class_representatives(),
        };
        let class_labels = subgroup_class_labels(&lattice);
        let b = members.len();
        let cosets: Vec<CosetSpace> = members.iter().map(|&h| CosetSpace::new(&group, &lattice, h)).collect();
        let mut orbits = Vec::with_capacity(b * b);
        for r in 0..b {
            for c in 0..b {
                orbits.push(OrbitTable::new(&group, &cosets[c], &cosets[r]));
            }
        }
        let sigma: Vec<Vec<usize>> = (0..b * b)
            .map(|rc| {
                let (r, c) = (rc / b, rc % b);
                let back = &orbits[c * b + r];
                orbits[rc].reps.iter().map(|&x| back.id(0, x)).collect()
            })
            .collect();
        let dims: Vec<usize> = orbits.iter().map(OrbitTable::len).collect();
        let labels: Vec<String> = members
            .iter()
            .map(|&h| class_labels[lattice.class_of(h)].clone())
            .collect();
        let idem = vec![0; b];
        // coefficients of (r, c, d) products, filled one triple at a time
        let mut cached: Option<((usize, usize, usize), Vec<Vec<(usize, u32)>>)> = None;
        let algebra = FdAlgebra::new(field, labels, dims, idem, |r, c, d, i, j| {
            let key = (r, c, d);
            if cached.as_ref().map(|(k, _)| *k) != Some(key) {
                cached = Some((key, triple_products(&orbits, &cosets, b, r, c, d)));
            }
            let (_, table) = cached.as_ref().expect("filled above");
            table[i * orbits[c * b + d].len() + j].clone()
        })
        .map_err(|e| match e {
            Error::Unsupported(why) => Error::Unsupported(format!(
                "Yoshida algebra of {} over F_{p}: {why} (the group is probably not a p-group)",
                group.descriptor()
            )),
            other => other,
        })?;
        Ok(Self {
            group,
            lattice,
            field,
            family,
            members,
            cosets,
            orbits,
            sigma,
            algebra: Arc::new(algebra),
            class_labels,
        })
    }

    pub fn blocks(&self) -> usize {
        self.members.len()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Block holding the subgroup `h`, or its class representative.
    pub fn block_of(&self, h: usize) -> usize {
        match self.family {
            Family::All => h,
            Family::Representatives => {
                let rep = self.lattice.classes()[self.lattice.class_of(h)][0];
                self.members
                    .iter()
                    .position(|&m| m == rep)
                    .expect("representatives cover every class")
            }
        }
    }

    /// Label of the subgroup class of block `r`.
    pub fn block_label(&self, r: usize) -> &str {
        &self.class_labels[self.lattice.class_of(self.members[r])]
    }

    /// Number of subgroups conjugate to the subgroup of block `r`.
    pub fn class_size(&self, r: usize) -> usize {
        self.lattice.classes()[self.lattice.class_of(self.members[r])].len()
    }

    /// Index in component `(c, r)` of the transpose of basis element `i` of `(r, c)`.
    pub fn transpose_index(&self, r: usize, c: usize, i: usize) -> usize {
        self.sigma[r * self.blocks() + c][i]
    }

    /// `Σ_{H,K in family} #(H\G/K)`, computed from double cosets.
    pub fn expected_dim(&self) -> Result<usize> {
        let mut total = 0;
        for &h in &self.members {
            for &k in &self.members {
                total += crate::group::double_cosets(
                    &self.group,
                    &self.lattice.get(h).elements,
                    &self.lattice.get(k).elements,
                )?
                .len();
            }
        }
        Ok(total)
    }
}

/// All products of components `(r, c)` and `(c, d)`, indexed `i * dim(c, d) + j`.
/// The coefficient of the orbit of `(x0, base)` in `(r, d)` counts the cosets `y` in
/// `G/c` with `(x0, y)` in orbit `j` and `(y, base)` in orbit `i`.
fn triple_products(
    orbits: &[OrbitTable],
    cosets: &[CosetSpace],
    b: usize,
    r: usize,
    c: usize,
    d: usize,
) -> Vec<Vec<(usize, u32)>> {
    let (rc, cd, rd) = (&orbits[r * b + c], &orbits[c * b + d], &orbits[r * b + d]);
    let mut out = vec![Vec::<(usize, u32)>::new(); rc.len() * cd.len()];
    for (k, &x0) in rd.reps.iter().enumerate() {
        for y in 0..cosets[c].len() {
            let i = rc.id(y, 0);
            let j = cd.id(x0, y);
            let slot = &mut out[i * cd.len() + j];
            match slot.iter_mut().find(|(kk, _)| *kk == k) {
                Some(e) => e.1 += 1,
                None => slot.push((k, 1)),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str, p: u32, family: Family) -> YoshidaContext {
        YoshidaContext::build(Arc::new(Group::parse(s).unwrap()), p, family).unwrap()
    }

    #[test]
    fn dimensions_match_double_cosets() {
        let c2 = ctx("cyclic:2", 2, Family::All);
        assert_eq!(c2.dim(), 5);
        for (s, p) in [
            ("dihedral:4", 2),
            ("cyclic:4", 2),
            ("cyclic:3", 3),
            ("dihedral:8", 2),
            ("q8", 2),
        ] {
            for fam in [Family::All, Family::Representatives] {
                let y = ctx(s, p, fam);
                assert_eq!(y.dim(), y.expected_dim().unwrap(), "{s} {fam:?}");
            }
        }
    }

    #[test]
    fn klein_four_dimension_by_hand() {
        // subgroups 1, three of order 2, G; #(H\G/K) = |G| |H ∩ K| / (|H| |K|)
        let orders = [1usize, 2, 2, 2, 4];
        let mut total = 0;
        for (a, &ha) in orders.iter().enumerate() {
            for (b, &hb) in orders.iter().enumerate() {
                let meet = if a == b {
                    ha
                } else if ha == 1 || hb == 1 {
                    1
                } else if ha == 4 {
                    hb
                } else if hb == 4 {
                    ha
                } else {
                    1
                };
                total += 4 * meet / (ha * hb);
            }
        }
        assert_eq!(ctx("dihedral:4", 2, Family::All).dim(), total);
    }

    #[test]
    fn transpose_is_an_anti_involution() {
        let y = ctx("dihedral:8", 2, Family::Representatives);
        let a = &y.algebra;
        let b = y.blocks();
        for r in 0..b {
            for c in 0..b {
                for i in 0..a.block_dim(r, c) {
                    let t = y.transpose_index(r, c, i);
                    assert_eq!(y.transpose_index(c, r, t), i);
                }
                for d in 0..b {
                    for i in 0..a.block_dim(r, c) {
                        for j in 0..a.block_dim(c, d) {
                            // sigma(b_i b_j) = sigma(b_j) sigma(b_i)
                            let lhs: Vec<(usize, u32)> = a
                                .basis_product(r, c, d, i, j)
                                .iter()
                                .map(|&(k, v)| (y.transpose_index(r, d, k as usize), v))
                                .collect();
                            let mut lhs = lhs;
                            lhs.sort_unstable();
                            let (si, sj) = (y.transpose_index(r, c, i), y.transpose_index(c, d, j));
                            let mut rhs: Vec<(usize, u32)> = a
                                .basis_product(d, c, r, sj, si)
                                .iter()
                                .map(|&(k, v)| (k as usize, v))
                                .collect();
                            rhs.sort_unstable();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn morita_equivalent_families() {
        for (s, p) in [("cyclic:4", 2), ("dihedral:8", 2)] {
            let all = ctx(s, p, Family::All);
            let reps = ctx(s, p, Family::Representatives);
            assert_eq!(all.algebra.simple_count(), reps.algebra.simple_count());
            // index both Cartan matrices by subgroup class
            let by_class = |y: &YoshidaContext| {
                let a = &y.algebra;
                let k = a.simple_count();
                let cls: Vec<usize> = (0..k).map(|c| y.lattice.class_of(y.members[a.class_rep(c)])).collect();
                let mut m = vec![vec![0; k]; k];
                let cartan = a.cartan();
                for i in 0..k {
                    for j in 0..k {
                        m[cls[i]][cls[j]] = cartan[i][j];
                    }
                }
                m
            };
            assert_eq!(by_class(&all), by_class(&reps), "{s}");
        }
    }

    #[test]
    fn non_p_groups_are_unsupported() {
        let r = YoshidaContext::build(Arc::new(Group::cyclic(3).unwrap()), 2, Family::All);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn class_labels() {
        let y = ctx("dihedral:8", 2, Family::Representatives);
        let labels: Vec<&str> = (0..y.blocks()).map(|r| y.block_label(r)).collect();
        assert_eq!(labels, vec!["1", "2a", "2b", "2c", "4a", "4b", "4c", "8"]);
    }
}
