//! Composition factors by chopping (MeatAxe with Norton's irreducibility test), and
//! the radical as the common annihilator of all simple modules.

use rand::Rng;

use super::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::kg::module::{quotient_action, restrict_to};
use crate::linalg::poly::minimal_poly;
use crate::linalg::{kernel, kernel_subspace, Mat, Poly, PrimeField, SpanBuilder, Subspace};

/// Largest algebra accepted by [`radical_by_simples`].
pub const SIMPLES_RADICAL_LIMIT: usize = 200;
/// Random elements tried before chopping gives up on a module.
pub const CHOP_ATTEMPTS: usize = 200;

/// Smallest subspace containing `seeds` and stable under `gens` (column action).
fn spin(field: PrimeField, gens: &[Mat], dim: usize, seeds: &[Vec<u32>]) -> Subspace {
    let mut span = SpanBuilder::new(field, dim);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if span.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if span.dim() == dim {
            break;
        }
        for g in gens {
            let w = g.mul_vec(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span.into_subspace()
}

fn random_element<R: Rng>(field: PrimeField, gens: &[Mat], rng: &mut R) -> Mat {
    let d = gens[0].rows();
    let mut combo = || {
        let mut acc = Mat::zeros(field, d, d);
        for g in gens {
            acc.add_scaled(g, rng.gen_range(0..field.p()));
        }
        acc
    };
    let a = combo();
    let b = combo();
    let c = combo();
    let mut out = a.mul(&b);
    out.add_scaled(&c, 1);
    out
}

/// Irreducible factors of `q` that the available factorization exposes: linear
/// factors and distinct-degree parts consisting of a single irreducible.
fn irreducible_factors(q: &Poly) -> Vec<Poly> {
    let f = q.field();
    let mut out: Vec<Poly> = q.roots().into_iter().map(|a| Poly::linear(f, a)).collect();
    for (deg, part) in q.radical().distinct_degree_parts() {
        if deg > 1 && part.degree() == Some(deg) {
            out.push(part);
        }
    }
    out
}

/// Splits the module given by `gens` into composition factors (as action lists).
pub fn composition_factors<R: Rng>(field: PrimeField, gens: &[Mat], dim: usize, rng: &mut R) -> Result<Vec<Vec<Mat>>> {
    let mut out = Vec::new();
    let mut stack = vec![gens.to_vec()];
    let mut dims = vec![dim];
    while let (Some(cur), Some(d)) = (stack.pop(), dims.pop()) {
        if d == 0 {
            continue;
        }
        match find_submodule(field, &cur, d, rng)? {
            None => out.push(cur),
            Some(sub) => {
                let inner: Vec<Mat> = cur.iter().map(|g| restrict_to(g, &sub)).collect();
                let outer: Vec<Mat> = cur.iter().map(|g| quotient_action(g, &sub)).collect();
                dims.push(d - sub.dim());
                stack.push(outer);
                dims.push(sub.dim());
                stack.push(inner);
            }
        }
    }
    Ok(out)
}

/// A proper nonzero submodule, or `None` when the module is certified irreducible.
fn find_submodule<R: Rng>(field: PrimeField, gens: &[Mat], d: usize, rng: &mut R) -> Result<Option<Subspace>> {
    if d == 1 {
        return Ok(None);
    }
    if gens.is_empty() {
        let mut e = vec![0u32; d];
        e[0] = 1;
        return Ok(Some(Subspace::row_space(&Mat::from_rows(field, d, &[e]))));
    }
    let transposed: Vec<Mat> = gens.iter().map(|g| g.transpose()).collect();
    for _ in 0..CHOP_ATTEMPTS {
        let a = random_element(field, gens, rng);
        for fac in irreducible_factors(&minimal_poly(&a)) {
            let fa = fac.eval_mat(&a);
            let null = kernel(&fa);
            let deg = fac.degree().unwrap_or(0);
            for i in 0..null.rows() {
                let s = spin(field, gens, d, &[null.row(i).to_vec()]);
                if s.dim() < d {
                    return Ok(Some(s));
                }
                if null.rows() != deg {
                    continue;
                }
                // Norton's test on the dual
                let w = kernel(&fa.transpose());
                let t = spin(field, &transposed, d, &[w.row(0).to_vec()]);
                if t.dim() < d {
                    // annihilator of a proper dual submodule
                    return Ok(Some(kernel_subspace(t.basis())));
                }
                return Ok(None);
            }
        }
    }
    Err(Error::SplitBudget {
        attempts: CHOP_ATTEMPTS,
        dim: d,
    })
}

/// `J(A)` as the intersection of the annihilators of the simple modules, with the
/// simples found by chopping the left-regular module. Result in global coordinates.
pub fn radical_by_simples<R: Rng>(a: &FdAlgebra, rng: &mut R) -> Result<Subspace> {
    let n = a.dim();
    if n > SIMPLES_RADICAL_LIMIT {
        return Err(Error::Budget(format!(
            "annihilator-of-simples radical is limited to dimension {SIMPLES_RADICAL_LIMIT}, got {n}"
        )));
    }
    let f = a.field();
    let regular: Vec<Mat> = (0..n).map(|g| left_regular(a, g)).collect();
    let simples = composition_factors(f, &regular, n, rng)?;
    // c lies in J iff sum_i c_i rho_S(b_i) = 0 for every simple S
    let width: usize = simples.iter().map(|s| s[0].rows() * s[0].rows()).sum();
    let mut cond = Mat::zeros(f, n, width);
    for i in 0..n {
        let mut row = Vec::with_capacity(width);
        for s in &simples {
            row.extend(s[i].flatten());
        }
        cond.row_mut(i).copy_from_slice(&row);
    }
    Ok(kernel_subspace(&cond.transpose()))
}

/// Dense left-regular matrix of global basis element `g`.
fn left_regular(a: &FdAlgebra, g: usize) -> Mat {
    let n = a.dim();
    let (r, c, i) = a.locate(g);
    let mut m = Mat::zeros(a.field(), n, n);
    for d in 0..a.blocks() {
        for j in 0..a.block_dim(c, d) {
            let col = a.global_index(c, d, j);
            for &(k, v) in a.basis_product(r, c, d, i, j) {
                m.set(a.global_index(r, d, k as usize), col, v);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::algebra::tests::*;

    fn cross_check(a: &FdAlgebra) {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let by_simples = radical_by_simples(a, &mut rng).unwrap();
        let by_trace = Subspace::row_space(&a.radical_basis());
        assert!(by_simples.same_as(&by_trace));
    }

    #[test]
    fn both_radical_methods_agree() {
        cross_check(&split_semisimple(5, 3));
        cross_check(&abelian_group_algebra(2, 2, 1));
        cross_check(&abelian_group_algebra(3, 3, 3));
        cross_check(&abelian_group_algebra(2, 4, 2));
        cross_check(&upper_triangular(3, 4));
        cross_check(&matrix_algebra(2));
    }

    #[test]
    fn chops_a_two_dimensional_simple() {
        // M_2(F_3) acting on its natural module
        let f = PrimeField::new(3).unwrap();
        let units: Vec<Mat> = (0..4)
            .map(|t| Mat::from_fn(f, 2, 2, |i, j| u32::from(i * 2 + j == t)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(composition_factors(f, &units, 2, &mut rng).unwrap().len(), 1);
        let sum: Vec<Mat> = units.iter().map(|u| u.direct_sum(u)).collect();
        let parts = composition_factors(f, &sum, 4, &mut rng).unwrap();
        assert_eq!(parts.iter().map(|p| p[0].rows()).collect::<Vec<_>>(), vec![2, 2]);
    }
}
