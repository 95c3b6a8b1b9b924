use rand::Rng;

use super::module::{AModule, BlockMap};
use crate::error::{Error, Result};
use crate::kg::hom::search_invertible;
use crate::kg::IsoSearch;
use crate::linalg::{kernel, Mat};

/// Basis of `Hom_A(m, n)` from the constraints `X_r ρ_m(γ) = ρ_n(γ) X_c` over the
/// structure generators `γ ∈ e_r A e_c`; the idempotents are handled by the block layout.
pub fn hom_basis(m: &AModule, n: &AModule) -> Result<Vec<BlockMap>> {
    if !m.same_algebra(n) {
        return Err(Error::Incompatible);
    }
    let alg = m.algebra();
    let f = alg.field();
    let b = alg.blocks();
    let mut offs = Vec::with_capacity(b);
    let mut cols = 0;
    for r in 0..b {
        offs.push(cols);
        cols += n.block_dim(r) * m.block_dim(r);
    }
    if cols == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (g, (am, an)) in alg
        .generators()
        .iter()
        .zip(m.generator_actions().iter().zip(n.generator_actions()))
    {
        let (r, c) = (g.row, g.col);
        let (mr, mc, nr, nc) = (m.block_dim(r), m.block_dim(c), n.block_dim(r), n.block_dim(c));
        for i in 0..nr {
            for j in 0..mc {
                let mut row = vec![0u32; cols];
                for k in 0..mr {
                    let v = am.get(k, j);
                    if v != 0 {
                        let idx = offs[r] + i * mr + k;
                        row[idx] = f.add(row[idx], v);
                    }
                }
                for l in 0..nc {
                    let v = an.get(i, l);
                    if v != 0 {
                        let idx = offs[c] + l * mc + j;
                        row[idx] = f.sub(row[idx], v);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        Mat::identity(f, cols)
    } else {
        kernel(&Mat::from_rows(f, cols, &rows))
    };
    Ok((0..sol.rows())
        .map(|s| {
            let v = sol.row(s);
            BlockMap {
                blocks: (0..b)
                    .map(|r| {
                        let (nr, mr) = (n.block_dim(r), m.block_dim(r));
                        Mat::from_vec(f, nr, mr, v[offs[r]..offs[r] + nr * mr].to_vec()).expect("shape")
                    })
                    .collect(),
            }
        })
        .collect())
}

fn block_diagonal(map: &BlockMap) -> Mat {
    let f = map.blocks[0].field();
    let rows: usize = map.blocks.iter().map(|b| b.rows()).sum();
    let cols: usize = map.blocks.iter().map(|b| b.cols()).sum();
    let mut out = Mat::zeros(f, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in &map.blocks {
        out.set_block(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    out
}

/// Searches `Hom_A(m, n)` for an isomorphism; the found map is block-diagonal.
pub fn find_isomorphism<R: Rng>(m: &AModule, n: &AModule, rng: &mut R) -> Result<IsoSearch> {
    if !m.same_algebra(n) {
        return Err(Error::Incompatible);
    }
    if m.dims() != n.dims() {
        return Ok(IsoSearch::NotIsomorphic);
    }
    if m.dim() == 0 {
        return Ok(IsoSearch::Found(Mat::zeros(m.algebra().field(), 0, 0)));
    }
    let basis: Vec<Mat> = hom_basis(m, n)?.iter().map(block_diagonal).collect();
    Ok(search_invertible(&basis, rng))
}

pub fn is_isomorphic<R: Rng>(m: &AModule, n: &AModule, rng: &mut R) -> Result<bool> {
    Ok(find_isomorphism(m, n, rng)?.is_found())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::algebra::tests::*;

    #[test]
    fn hom_between_pims_is_a_corner() {
        let a = Arc::new(upper_triangular(3, 3));
        for r in 0..3 {
            for s in 0..3 {
                // Hom(A e_r, A e_s) = e_r A e_s
                let h = hom_basis(&AModule::pim(&a, r), &AModule::pim(&a, s)).unwrap();
                assert_eq!(h.len(), a.block_dim(r, s));
                for x in &h {
                    assert!(x.is_homomorphism(&AModule::pim(&a, r), &AModule::pim(&a, s)));
                }
            }
        }
    }

    #[test]
    fn isomorphism_of_sums() {
        let a = Arc::new(abelian_group_algebra(2, 2, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = AModule::pim(&a, 0);
        let s = AModule::simple(&a, 0);
        let x = p.direct_sum(&s).unwrap();
        let y = s.direct_sum(&p).unwrap();
        assert!(is_isomorphic(&x, &y, &mut rng).unwrap());
        let rad = p.radical();
        let r = p.submodule(&rad);
        let q = p.quotient(&p.socle());
        // rad P and P/soc P have the same dimension but differ for the Klein four group
        assert_eq!(r.dim(), q.dim());
        assert!(!is_isomorphic(&r, &q, &mut rng).unwrap());
    }
}
