use rand::Rng;

use super::hom::{find_isomorphism, hom_basis, IsoSearch};
use super::module::KGModule;
use crate::algebra::matrix_algebra_radical;
use crate::error::{Error, Result};
use crate::linalg::poly::minimal_poly;
use crate::linalg::{rank, Mat, Poly, Subspace};

/// Largest module dimension accepted by [`decompose`].
pub const DECOMPOSE_CAP: usize = 256;
/// Random endomorphisms tried per splitting step.
pub const SPLIT_ATTEMPTS: usize = 32;

/// An indecomposable summand and how often it occurs.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: KGModule,
    pub multiplicity: usize,
}

/// Whether `End(m)/rad End(m)` is one-dimensional, which certifies `m` indecomposable
/// with endomorphism ring local with residue field `F_p`.
pub fn is_certified_indecomposable(m: &KGModule) -> Result<bool> {
    let ends = hom_basis(m, m)?;
    Ok(local_residue_dim(m, &ends)? == 1)
}

fn local_residue_dim(m: &KGModule, ends: &[Mat]) -> Result<usize> {
    let j = matrix_algebra_radical(m.field(), ends)?;
    Ok(ends.len() - j.dim())
}

/// Splits `m` into indecomposables by Fitting decomposition of random endomorphisms,
/// then groups isomorphic summands.
pub fn decompose<R: Rng>(m: &KGModule, rng: &mut R) -> Result<Vec<Summand>> {
    if m.dim() > DECOMPOSE_CAP {
        return Err(Error::Budget(format!(
            "decomposition is limited to dimension {DECOMPOSE_CAP}, got {}",
            m.dim()
        )));
    }
    let mut pieces = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(cur) = stack.pop() {
        if cur.dim() == 0 {
            continue;
        }
        match split(&cur, rng)? {
            Some((a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            None => pieces.push(cur),
        }
    }
    let mut out: Vec<Summand> = Vec::new();
    'next: for piece in pieces {
        for s in out.iter_mut() {
            match find_isomorphism(&s.module, &piece, rng)? {
                IsoSearch::Found(_) => {
                    s.multiplicity += 1;
                    continue 'next;
                }
                IsoSearch::NotIsomorphic => {}
                IsoSearch::Inconclusive => {
                    return Err(Error::Internal(
                        "isomorphism search between summands was inconclusive".into(),
                    ))
                }
            }
        }
        out.push(Summand {
            module: piece,
            multiplicity: 1,
        });
    }
    out.sort_by_key(|s| s.module.dim());
    Ok(out)
}

/// One Fitting split of `m`, or `None` if `m` is certified indecomposable.
fn split<R: Rng>(m: &KGModule, rng: &mut R) -> Result<Option<(KGModule, KGModule)>> {
    let ends = hom_basis(m, m)?;
    if ends.len() <= 1 || local_residue_dim(m, &ends)? == 1 {
        return Ok(None);
    }
    let f = m.field();
    let d = m.dim();
    for _ in 0..SPLIT_ATTEMPTS {
        let mut phi = Mat::zeros(f, d, d);
        for e in &ends {
            let c = rng.gen_range(0..f.p());
            if c != 0 {
                phi.add_scaled(e, c);
            }
        }
        let q = minimal_poly(&phi);
        let mut candidates: Vec<Poly> = q.roots().into_iter().map(|a| Poly::linear(f, a)).collect();
        candidates.extend(
            q.radical()
                .distinct_degree_parts()
                .into_iter()
                .filter(|(deg, _)| *deg > 1)
                .map(|(_, part)| part),
        );
        for h in candidates {
            let psi = stable_power(&h.eval_mat(&phi));
            let r = rank(&psi);
            if r == 0 || r == d {
                continue;
            }
            let kernel = crate::linalg::kernel_subspace(&psi);
            let image = Subspace::column_space(&psi);
            return Ok(Some((m.submodule(&kernel), m.submodule(&image))));
        }
    }
    Err(Error::SplitBudget {
        attempts: SPLIT_ATTEMPTS,
        dim: d,
    })
}

/// `a^N` for `N >= dim`, where kernel and image have stabilized.
fn stable_power(a: &Mat) -> Mat {
    let mut cur = a.clone();
    let mut e = 1;
    while e < a.rows() {
        cur = cur.mul(&cur);
        e *= 2;
    }
    cur
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::{Group, SubgroupLattice};
    use crate::kg::hom::is_isomorphic;
    use crate::kg::syzygy::syzygy;
    use crate::linalg::PrimeField;

    fn reassemble(parts: &[Summand]) -> KGModule {
        let mut all = Vec::new();
        for s in parts {
            for _ in 0..s.multiplicity {
                all.push(s.module.clone());
            }
        }
        KGModule::direct_sum_all(&all).unwrap()
    }

    #[test]
    fn permutation_modules_of_p_groups_are_indecomposable() {
        let g = Arc::new(Group::parse("dihedral:8").unwrap());
        let l = SubgroupLattice::new(&g).unwrap();
        let f = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for h in l.subgroups() {
            let m = KGModule::permutation_on(g.clone(), &l, f, h.id);
            let parts = decompose(&m, &mut rng).unwrap();
            assert_eq!(parts.len(), 1);
            assert_eq!(parts[0].multiplicity, 1);
            assert!(is_certified_indecomposable(&m).unwrap());
        }
    }

    #[test]
    fn splits_sums_and_semisimple_modules() {
        let g = Arc::new(Group::cyclic(3).unwrap());
        let l = SubgroupLattice::new(&g).unwrap();
        let f = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        // F_2 C_3 = F_2 + F_4; the second summand has End = F_4, which the
        // one-dimensional residue certificate cannot accept
        let reg = KGModule::permutation_on(g.clone(), &l, f, 0);
        assert!(matches!(
            decompose(&reg, &mut rng),
            Err(Error::SplitBudget { dim: 2, .. })
        ));

        let g = Arc::new(Group::dihedral(4).unwrap());
        let l = SubgroupLattice::new(&g).unwrap();
        let k = KGModule::trivial(g.clone(), f);
        let p = KGModule::permutation_on(g.clone(), &l, f, 1);
        let m = KGModule::direct_sum_all(&[k.clone(), p.clone(), k.clone(), p.clone(), p]).unwrap();
        let parts = decompose(&m, &mut rng).unwrap();
        let shape: Vec<(usize, usize)> = parts.iter().map(|s| (s.module.dim(), s.multiplicity)).collect();
        assert_eq!(shape, vec![(1, 2), (2, 3)]);
        assert!(is_isomorphic(&reassemble(&parts), &m, &mut rng).unwrap());
    }

    #[test]
    fn restricted_syzygy_of_c4xc2() {
        let g = Arc::new(Group::parse("prod(cyclic:4,cyclic:2)").unwrap());
        let l = SubgroupLattice::new(&g).unwrap();
        let f = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let o2 = syzygy(&KGModule::trivial(g.clone(), f), 2, &mut rng).unwrap();
        let klein = l
            .subgroups()
            .iter()
            .find(|h| h.order() == 4 && h.elements.iter().all(|&x| g.element_order(x) <= 2))
            .unwrap();
        let res = o2.restrict(klein).unwrap();
        let parts = decompose(&res, &mut rng).unwrap();
        let shape: Vec<(usize, usize)> = parts.iter().map(|s| (s.module.dim(), s.multiplicity)).collect();
        assert_eq!(shape, vec![(4, 1), (5, 1)]);
        assert!(is_isomorphic(&reassemble(&parts), &res, &mut rng).unwrap());
    }
}
