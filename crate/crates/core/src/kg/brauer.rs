use super::module::KGModule;
use crate::error::{Error, Result};
use crate::group::SubgroupLattice;
use crate::linalg::{Mat, Subspace};

/// The Brauer quotient `M[H] = M^H / sum_{L<H} Tr_L^H(M^L)`.
#[derive(Clone, Debug)]
pub struct BrauerQuotient {
    pub dim: usize,
    /// `M^H` inside `M`.
    pub fixed: Subspace,
    /// The sum of relative traces from proper subgroups, inside `M`.
    pub traces: Subspace,
    /// Quotient map from `M^H` (in the keyed coordinates of `fixed`) onto `M[H]`.
    pub map: Mat,
}

/// Computes `M[H]` for a p-subgroup `H`. Traces from maximal subgroups suffice
/// because `Tr_L^H = Tr_K^H Tr_L^K` for `L <= K`.
pub fn brauer_quotient(m: &KGModule, lat: &SubgroupLattice, h: usize) -> Result<BrauerQuotient> {
    let hs = lat.get(h);
    let p = m.field().p() as usize;
    let mut n = hs.order();
    while n.is_multiple_of(p) {
        n /= p;
    }
    if n != 1 {
        return Err(Error::NotPGroup(format!("subgroup of order {}", hs.order())));
    }
    let f = m.field();
    let fixed = m.fixed_points(hs);
    let mut rows = Mat::zeros(f, 0, m.dim());
    for l in lat.maximal_subgroups(h) {
        let ls = lat.get(l);
        let fl = m.fixed_points(ls);
        let tr = m.relative_trace(ls, hs, fl.basis());
        rows = rows.vstack(&tr);
    }
    let traces = Subspace::row_space(&rows);
    // traces in the coordinates of the fixed-point basis
    let coords: Vec<Vec<u32>> = (0..traces.dim())
        .map(|i| {
            fixed
                .coords(traces.basis().row(i))
                .expect("traces of fixed points are fixed")
        })
        .collect();
    let inner = Subspace::row_space(&Mat::from_rows(f, fixed.dim(), &coords));
    let off = inner.non_keys();
    let mut map = Mat::zeros(f, off.len(), fixed.dim());
    for j in 0..fixed.dim() {
        let mut e = vec![0u32; fixed.dim()];
        e[j] = 1;
        let r = inner.residual(&e);
        for (i, &t) in off.iter().enumerate() {
            map.set(i, j, r[t]);
        }
    }
    Ok(BrauerQuotient {
        dim: off.len(),
        fixed,
        traces,
        map,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::Group;
    use crate::linalg::PrimeField;

    #[test]
    fn brauer_quotients_of_basic_modules() {
        for (s, p) in [("dihedral:8", 2), ("prod(cyclic:3,cyclic:3)", 3), ("q8", 2)] {
            let g = Arc::new(Group::parse(s).unwrap());
            let l = SubgroupLattice::new(&g).unwrap();
            let f = PrimeField::new(p).unwrap();
            let free = KGModule::free(g.clone(), f, 2);
            let triv = KGModule::trivial(g.clone(), f);
            for h in 0..l.len() {
                let bf = brauer_quotient(&free, &l, h).unwrap();
                let bt = brauer_quotient(&triv, &l, h).unwrap();
                if h == 0 {
                    assert_eq!(bf.dim, free.dim());
                } else {
                    assert_eq!(bf.dim, 0, "{s}");
                }
                assert_eq!(bt.dim, 1);
            }
        }
    }

    #[test]
    fn permutation_module_brauer_quotient_counts_fixed_cosets() {
        // k[X][H] has basis the H-fixed points of X
        let g = Arc::new(Group::parse("dihedral:8").unwrap());
        let l = SubgroupLattice::new(&g).unwrap();
        let f = PrimeField::new(2).unwrap();
        for k in 0..l.len() {
            let cs = crate::group::CosetSpace::new(&g, &l, k);
            let m = KGModule::permutation(g.clone(), f, &cs);
            for h in 0..l.len() {
                let fixed = (0..cs.len())
                    .filter(|&c| l.get(h).elements.iter().all(|&x| cs.act(x, c) == c))
                    .count();
                assert_eq!(brauer_quotient(&m, &l, h).unwrap().dim, fixed);
            }
        }
    }

    #[test]
    fn refuses_non_p_subgroups() {
        let g = Arc::new(Group::cyclic(6).unwrap());
        let l = SubgroupLattice::new(&g).unwrap();
        let m = KGModule::trivial(g, PrimeField::new(2).unwrap());
        assert!(brauer_quotient(&m, &l, l.whole()).is_err());
    }
}
