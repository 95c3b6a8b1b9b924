use serde::{Deserialize, Serialize};

use super::group::Group;
use super::lattice::SubgroupLattice;
use crate::error::{Error, Result};
use crate::linalg::field::is_prime;

/// Whether two groups are isomorphic. Order profiles are compared first; then
/// images of the generators of `a` are searched among elements of `b` of matching
/// order. Intended for the small groups that occur as Sylow subgroups here.
pub fn is_isomorphic(a: &Group, b: &Group) -> bool {
    if a.order() != b.order() || a.order_profile() != b.order_profile() {
        return false;
    }
    if a.is_abelian() != b.is_abelian() {
        return false;
    }
    find_isomorphism(a, b).is_some()
}

/// An isomorphism `a -> b` as an element map, if one exists.
pub fn find_isomorphism(a: &Group, b: &Group) -> Option<Vec<usize>> {
    let gens = a.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let o = a.element_order(x);
            b.elements().filter(|&y| b.element_order(y) == o).collect()
        })
        .collect();
    let tree = a.cayley_tree();
    let order = a.bfs_order();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend(a, b, &tree, &order, &images) {
            return Some(map);
        }
        // odometer over the candidate lists
        let mut k = 0;
        loop {
            if k == gens.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn extend(
    a: &Group,
    b: &Group,
    tree: &[Option<(usize, usize)>],
    order: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    for &x in &order[1..] {
        let (parent, k) = tree[x].expect("non-identity elements have parents");
        map[x] = b.mul(images[k], map[parent]);
    }
    let mut hit = vec![false; n];
    for &y in &map {
        if hit[y] {
            return None;
        }
        hit[y] = true;
    }
    for x in a.elements() {
        for y in a.elements() {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return None;
            }
        }
    }
    Some(map)
}

fn p_part(n: usize, p: usize) -> usize {
    let mut m = n;
    let mut q = 1;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
    }
    q
}

fn is_power_of(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}

/// Id of a Sylow p-subgroup (the one with the smallest id).
pub fn sylow_subgroup(g: &Group, lat: &SubgroupLattice, p: usize) -> usize {
    let target = p_part(g.order(), p);
    (0..lat.len())
        .find(|&s| lat.get(s).order() == target)
        .expect("Sylow subgroups exist")
}

/// The four minimal groups that are neither cyclic nor dihedral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Obstruction {
    /// `C_p x C_p` for odd `p`.
    CpxCp,
    C2xC4,
    Q8,
    C2Cubed,
}

impl Obstruction {
    pub fn name(&self, p: usize) -> String {
        match self {
            Obstruction::CpxCp => format!("C{p}xC{p}"),
            Obstruction::C2xC4 => "C2xC4".into(),
            Obstruction::Q8 => "Q8".into(),
            Obstruction::C2Cubed => "C2xC2xC2".into(),
        }
    }

    fn model(&self, p: usize) -> Group {
        let s = match self {
            Obstruction::CpxCp => format!("prod(cyclic:{p},cyclic:{p})"),
            Obstruction::C2xC4 => "prod(cyclic:2,cyclic:4)".into(),
            Obstruction::Q8 => "q8".into(),
            Obstruction::C2Cubed => "prod(cyclic:2,prod(cyclic:2,cyclic:2))".into(),
        };
        Group::parse(&s).expect("model groups parse")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum SylowShape {
    /// `p` does not divide `|G|`.
    OrderInvertible,
    Cyclic {
        order: usize,
    },
    /// Dihedral 2-group, including the Klein four group.
    Dihedral {
        order: usize,
    },
    Other {
        order: usize,
        witness: Option<Obstruction>,
        /// Subgroup of the Sylow subgroup realizing the witness.
        witness_subgroup: Option<Vec<usize>>,
    },
}

pub fn sylow_shape(g: &Group, lat: &SubgroupLattice, p: usize) -> SylowShape {
    let s = sylow_subgroup(g, lat, p);
    let order = lat.get(s).order();
    if order == 1 {
        return SylowShape::OrderInvertible;
    }
    let elems = &lat.get(s).elements;
    if elems.iter().any(|&x| g.element_order(x) == order) {
        return SylowShape::Cyclic { order };
    }
    let sg = g.subgroup_as_group(elems).expect("lattice entries are subgroups");
    if p == 2 && order >= 4 && is_isomorphic(&sg, &Group::dihedral(order).expect("order >= 4")) {
        return SylowShape::Dihedral { order };
    }
    let kinds: &[Obstruction] = if p == 2 {
        &[Obstruction::C2xC4, Obstruction::Q8, Obstruction::C2Cubed]
    } else {
        &[Obstruction::CpxCp]
    };
    let mut inside: Vec<usize> = (0..lat.len()).filter(|&t| lat.le(t, s)).collect();
    inside.sort_by_key(|&t| (lat.get(t).order(), t));
    for &t in &inside {
        let tg = g
            .subgroup_as_group(&lat.get(t).elements)
            .expect("lattice entries are subgroups");
        for &k in kinds {
            let model = k.model(p);
            if model.order() == tg.order() && is_isomorphic(&tg, &model) {
                return SylowShape::Other {
                    order,
                    witness: Some(k),
                    witness_subgroup: Some(lat.get(t).elements.clone()),
                };
            }
        }
    }
    SylowShape::Other {
        order,
        witness: None,
        witness_subgroup: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TambaraRank {
    /// Largest rank of an elementary abelian p-subquotient.
    pub rank: usize,
    /// Finitistic dimension of cohomological Mackey functors, `rank + 1`.
    pub bound: usize,
}

/// Scans all pairs `N ◁ H <= G` of p-subgroups with `H/N` elementary abelian.
/// Restricting to p-subgroups loses nothing: a Sylow subgroup of `H` maps onto
/// any p-group quotient of `H`.
pub fn tambara_rank(g: &Group, lat: &SubgroupLattice, p: usize) -> TambaraRank {
    let mut rank = 0;
    let psubs: Vec<usize> = (0..lat.len()).filter(|&s| is_power_of(lat.get(s).order(), p)).collect();
    for &h in &psubs {
        let hs = lat.get(h);
        for &nn in &psubs {
            if !lat.le(nn, h) {
                continue;
            }
            let ns = lat.get(nn);
            let normal = hs
                .elements
                .iter()
                .all(|&x| ns.elements.iter().all(|&y| ns.contains(g.conj(x, y))));
            if !normal {
                continue;
            }
            let elementary = hs.elements.iter().all(|&x| {
                let mut y = 0;
                for _ in 0..p {
                    y = g.mul(y, x);
                }
                ns.contains(y)
                    && hs.elements.iter().all(|&z| {
                        let comm = g.mul(g.mul(x, z), g.mul(g.inv(x), g.inv(z)));
                        ns.contains(comm)
                    })
            });
            if elementary {
                let index = hs.order() / ns.order();
                let r = (index as f64).log(p as f64).round() as usize;
                rank = rank.max(r);
            }
        }
    }
    TambaraRank { rank, bound: rank + 1 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub gorenstein_over_fp: bool,
    pub finite_gldim_over_fp: bool,
    pub finite_gldim_over_z: bool,
}

/// The three classification statements evaluated as boolean formulas.
pub fn predict(g: &Group, lat: &SubgroupLattice, p: usize) -> Result<Prediction> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let shape = sylow_shape(g, lat, p);
    let gorenstein_over_fp = matches!(
        shape,
        SylowShape::OrderInvertible | SylowShape::Cyclic { .. } | SylowShape::Dihedral { .. }
    );
    let finite_gldim_over_fp = match shape {
        SylowShape::OrderInvertible => true,
        SylowShape::Cyclic { order } => p == 2 && order == 2,
        _ => false,
    };
    let finite_gldim_over_z =
        crate::linalg::field::factorize(g.order() as u64)
            .iter()
            .all(|&(q, _)| match sylow_shape(g, lat, q as usize) {
                SylowShape::OrderInvertible | SylowShape::Cyclic { .. } => true,
                SylowShape::Dihedral { .. } => q == 2,
                SylowShape::Other { .. } => false,
            });
    Ok(Prediction {
        gorenstein_over_fp,
        finite_gldim_over_fp,
        finite_gldim_over_z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(s: &str) -> (Group, SubgroupLattice) {
        let g = Group::parse(s).unwrap();
        let l = SubgroupLattice::new(&g).unwrap();
        (g, l)
    }

    /// Rank of `H / Φ(H)` with `Φ(H) = H^p [H, H]`, maximized over p-subgroups.
    fn rank_by_frattini(g: &Group, lat: &SubgroupLattice, p: usize) -> usize {
        let mut best = 0;
        for h in lat.subgroups() {
            if !is_power_of(h.order(), p) {
                continue;
            }
            let mut gens = Vec::new();
            for &x in &h.elements {
                let mut y = 0;
                for _ in 0..p {
                    y = g.mul(y, x);
                }
                gens.push(y);
                for &z in &h.elements {
                    gens.push(g.mul(g.mul(x, z), g.mul(g.inv(x), g.inv(z))));
                }
            }
            let phi = g.closure(&gens).len();
            let r = ((h.order() / phi) as f64).log(p as f64).round() as usize;
            best = best.max(r);
        }
        best
    }

    #[test]
    fn isomorphism_between_descriptors() {
        let a = Group::parse("prod(cyclic:2,cyclic:4)").unwrap();
        let b = Group::parse("prod(cyclic:4,cyclic:2)").unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(is_isomorphic(
            &Group::dihedral(4).unwrap(),
            &Group::parse("prod(cyclic:2,cyclic:2)").unwrap()
        ));
        assert!(is_isomorphic(
            &Group::cyclic(6).unwrap(),
            &Group::parse("prod(cyclic:2,cyclic:3)").unwrap()
        ));
        assert!(!is_isomorphic(&Group::dihedral(8).unwrap(), &Group::quaternion8()));
    }

    #[test]
    fn sylow_shapes() {
        let (g, l) = setup("dihedral:8");
        assert_eq!(sylow_shape(&g, &l, 2), SylowShape::Dihedral { order: 8 });
        let (g, l) = setup("dihedral:4");
        assert_eq!(sylow_shape(&g, &l, 2), SylowShape::Dihedral { order: 4 });
        let (g, l) = setup("q8");
        match sylow_shape(&g, &l, 2) {
            SylowShape::Other {
                witness,
                witness_subgroup,
                ..
            } => {
                assert_eq!(witness, Some(Obstruction::Q8));
                assert_eq!(witness_subgroup.unwrap().len(), 8);
            }
            s => panic!("unexpected {s:?}"),
        }
        let (g, l) = setup("prod(cyclic:3,cyclic:3)");
        assert!(matches!(
            sylow_shape(&g, &l, 3),
            SylowShape::Other {
                witness: Some(Obstruction::CpxCp),
                ..
            }
        ));
        assert_eq!(sylow_shape(&g, &l, 2), SylowShape::OrderInvertible);
        // D_12 has a Klein four Sylow 2-subgroup and a cyclic Sylow 3-subgroup
        let (g, l) = setup("dihedral:12");
        assert_eq!(sylow_shape(&g, &l, 2), SylowShape::Dihedral { order: 4 });
        assert_eq!(sylow_shape(&g, &l, 3), SylowShape::Cyclic { order: 3 });
        // C2 x D8 contains both C2 x C4 and C2^3; either is a valid witness
        let (g, l) = setup("prod(cyclic:2,dihedral:8)");
        match sylow_shape(&g, &l, 2) {
            SylowShape::Other {
                witness: Some(w),
                witness_subgroup: Some(elems),
                ..
            } => {
                let sub = g.subgroup_as_group(&elems).unwrap();
                assert!(is_isomorphic(&sub, &w.model(2)));
            }
            s => panic!("unexpected {s:?}"),
        }
    }

    #[test]
    fn tambara_ranks() {
        for (s, p, rank) in [
            ("q8", 2, 2),
            ("cyclic:9", 3, 1),
            ("prod(cyclic:2,prod(cyclic:2,cyclic:2))", 2, 3),
            ("prod(cyclic:3,cyclic:3)", 3, 2),
            ("dihedral:8", 2, 2),
            ("cyclic:5", 2, 0),
        ] {
            let (g, l) = setup(s);
            let t = tambara_rank(&g, &l, p);
            assert_eq!(t.rank, rank, "{s}");
            assert_eq!(t.bound, rank + 1);
            assert_eq!(rank_by_frattini(&g, &l, p), rank, "{s}");
        }
    }

    #[test]
    fn predictions() {
        let cases = [
            ("cyclic:2", 2, (true, true, true)),
            ("dihedral:8", 2, (true, false, true)),
            ("q8", 2, (false, false, false)),
            ("cyclic:3", 3, (true, false, true)),
            ("cyclic:4", 2, (true, false, true)),
            ("prod(cyclic:3,cyclic:3)", 3, (false, false, false)),
            ("prod(cyclic:3,cyclic:3)", 2, (true, true, false)),
        ];
        for (s, p, (a, b, c)) in cases {
            let (g, l) = setup(s);
            let pr = predict(&g, &l, p).unwrap();
            assert_eq!(
                (pr.gorenstein_over_fp, pr.finite_gldim_over_fp, pr.finite_gldim_over_z),
                (a, b, c),
                "{s} p={p}"
            );
        }
        let (g, l) = setup("cyclic:2");
        assert!(predict(&g, &l, 4).is_err());
    }

    #[test]
    fn sylow_reduction_is_consistent() {
        for (s, p) in [
            ("dihedral:12", 2),
            ("prod(q8,cyclic:3)", 2),
            ("prod(cyclic:3,cyclic:6)", 3),
        ] {
            let (g, l) = setup(s);
            let syl = sylow_subgroup(&g, &l, p);
            let sg = g.subgroup_as_group(&l.get(syl).elements).unwrap();
            let sl = SubgroupLattice::new(&sg).unwrap();
            let a = sylow_shape(&g, &l, p);
            let b = sylow_shape(&sg, &sl, p);
            assert_eq!(std::mem::discriminant(&a), std::mem::discriminant(&b), "{s}");
            if let (SylowShape::Other { witness: wa, .. }, SylowShape::Other { witness: wb, .. }) = (a, b) {
                assert_eq!(wa, wb);
            }
        }
    }
}
