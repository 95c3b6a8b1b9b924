use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::decompose::decompose;
use super::hom::is_isomorphic;
use super::module::KGModule;
use crate::error::{Error, Result};
use crate::group::{Group, SubgroupLattice};
use crate::linalg::{kernel_subspace, Mat, PrimeField, Subspace};

fn require_p_group(m: &KGModule) -> Result<()> {
    let p = m.field().p() as usize;
    let mut n = m.group().order();
    while n.is_multiple_of(p) {
        n /= p;
    }
    if n != 1 {
        return Err(Error::NotPGroup(format!(
            "group of order {} over F_{}",
            m.group().order(),
            p
        )));
    }
    Ok(())
}

/// Radical `I_G M` of a module over a p-group, as a subspace of `m`, where `I_G`
/// is the augmentation ideal.
pub fn radical(m: &KGModule) -> Result<Subspace> {
    require_p_group(m)?;
    Ok(radical_of(m, &Subspace::full(m.field(), m.dim())))
}

/// `I_G N` for a submodule `N` of `m`, as a subspace of `m`.
fn radical_of(m: &KGModule, n: &Subspace) -> Subspace {
    let f = m.field();
    let id = Mat::identity(f, m.dim());
    let mut rows = Mat::zeros(f, 0, m.dim());
    for x in m.group().elements().skip(1) {
        let a = m.action(x).sub(&id);
        for i in 0..n.dim() {
            rows.push_row(&a.mul_vec(n.basis().row(i)));
        }
    }
    Subspace::row_space(&rows)
}

/// Dimensions of the radical layers `rad^i M / rad^{i+1} M`, top first.
pub fn loewy_layers(m: &KGModule) -> Result<Vec<usize>> {
    require_p_group(m)?;
    let mut layers = Vec::new();
    let mut cur = Subspace::full(m.field(), m.dim());
    while cur.dim() > 0 {
        let next = radical_of(m, &cur);
        layers.push(cur.dim() - next.dim());
        cur = next;
    }
    Ok(layers)
}

pub fn loewy_length(m: &KGModule) -> Result<usize> {
    Ok(loewy_layers(m)?.len())
}

/// A minimal free cover `kG^r -> M` over a p-group and its kernel.
#[derive(Clone, Debug)]
pub struct FreeCover {
    pub rank: usize,
    /// `dim M x r|G|` matrix of the cover; column `i*|G| + x` is `x · m_i`.
    pub map: Mat,
    /// Top lifts `m_i`.
    pub lifts: Vec<Vec<u32>>,
    /// Kernel as a subspace of `kG^r`.
    pub kernel_space: Subspace,
    pub kernel: KGModule,
}

/// Minimal free cover. The lifts of a basis of `M / rad M` are perturbed by
/// random radical elements, so different seeds give different (isomorphic) kernels.
pub fn free_cover<R: Rng>(m: &KGModule, rng: &mut R) -> Result<FreeCover> {
    require_p_group(m)?;
    let f = m.field();
    let rad = radical(m)?;
    let top = rad.non_keys();
    let lifts: Vec<Vec<u32>> = top
        .iter()
        .map(|&j| {
            let mut v = vec![0u32; m.dim()];
            v[j] = 1;
            for i in 0..rad.dim() {
                let c = rng.gen_range(0..f.p());
                if c != 0 {
                    for (a, &b) in v.iter_mut().zip(rad.basis().row(i)) {
                        *a = f.mul_add(*a, c, b);
                    }
                }
            }
            v
        })
        .collect();
    Ok(cover_from_lifts(m, lifts))
}

pub(crate) fn cover_from_lifts(m: &KGModule, lifts: Vec<Vec<u32>>) -> FreeCover {
    let f = m.field();
    let g = m.group().clone();
    let order = g.order();
    let r = lifts.len();
    let mut map = Mat::zeros(f, m.dim(), r * order);
    for (i, v) in lifts.iter().enumerate() {
        for x in 0..order {
            let img = m.action(x).mul_vec(v);
            for (a, &val) in img.iter().enumerate() {
                map.set(a, i * order + x, val);
            }
        }
    }
    let kernel_space = kernel_subspace(&map);
    let free = KGModule::free(g, f, r);
    let kernel = free.submodule(&kernel_space);
    FreeCover {
        rank: r,
        map,
        lifts,
        kernel_space,
        kernel,
    }
}

/// `Omega^steps(m)` over a p-group, via iterated minimal free covers.
pub fn syzygy<R: Rng>(m: &KGModule, steps: usize, rng: &mut R) -> Result<KGModule> {
    let mut cur = m.clone();
    for _ in 0..steps {
        cur = free_cover(&cur, rng)?.kernel;
    }
    Ok(cur)
}

/// `Ω²_G(k)` restricted to a subgroup `H`, compared with `Ω²_H(k) ⊕ (kH)^r`.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictedOmega {
    pub omega_dim: usize,
    pub omega_h_dim: usize,
    pub free_rank: usize,
    /// Dimensions of the indecomposable summands, with multiplicity.
    pub summand_dims: Vec<usize>,
    /// The non-free part is `Ω²_H(k)` up to isomorphism.
    pub matches: bool,
}

pub fn restricted_omega_two<R: Rng>(
    g: &Arc<Group>,
    lat: &SubgroupLattice,
    field: PrimeField,
    h: usize,
    rng: &mut R,
) -> Result<RestrictedOmega> {
    let o2 = syzygy(&KGModule::trivial(g.clone(), field), 2, rng)?;
    let res = o2.restrict(lat.get(h))?;
    let sub = res.group().clone();
    let oh = syzygy(&KGModule::trivial(sub.clone(), field), 2, rng)?;
    let free = KGModule::regular(sub, field);
    let mut free_rank = 0;
    let mut rest = Vec::new();
    let mut summand_dims = Vec::new();
    for s in decompose(&res, rng)? {
        summand_dims.extend(std::iter::repeat_n(s.module.dim(), s.multiplicity));
        if is_isomorphic(&s.module, &free, rng)? {
            free_rank += s.multiplicity;
        } else {
            rest.push(s);
        }
    }
    summand_dims.sort_unstable_by(|a, b| b.cmp(a));
    let matches = match rest.as_slice() {
        [] => oh.dim() == 0,
        [s] => s.multiplicity == 1 && is_isomorphic(&s.module, &oh, rng)?,
        _ => false,
    };
    Ok(RestrictedOmega {
        omega_dim: o2.dim(),
        omega_h_dim: oh.dim(),
        free_rank,
        summand_dims,
        matches,
    })
}
