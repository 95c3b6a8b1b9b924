use rand::Rng;

use super::module::KGModule;
use crate::error::Result;
use crate::linalg::{inverse, is_invertible, kernel, row_reduce, Mat, Subspace};

/// Basis of `Hom_kG(m, n)` as `dim n x dim m` matrices.
///
/// `m` is presented as a quotient of a free module `kG^r -> m` on spin-up
/// generators; a map is a choice of images of the generators that kills every
/// relation.
pub fn hom_basis(m: &KGModule, n: &KGModule) -> Result<Vec<Mat>> {
    if !m.same_context(n) {
        return Err(crate::Error::Incompatible);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let g = m.group();
    let order = g.order();
    let acts_m = m.element_actions();
    let acts_n = n.element_actions();

    // spin-up generators of m
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut span = Subspace::zero(f, dm);
    for j in 0..dm {
        let mut e = vec![0u32; dm];
        e[j] = 1;
        if span.contains(&e) {
            continue;
        }
        gens.push(e);
        span = m.spin(&Mat::from_rows(f, dm, &gens));
        if span.dim() == dm {
            break;
        }
    }
    let r = gens.len();

    // free map: column (i, x) -> rho(x) v_i, at index i * |G| + x
    let mut free = Mat::zeros(f, dm, r * order);
    for (i, v) in gens.iter().enumerate() {
        for x in 0..order {
            let img = acts_m[x].mul_vec(v);
            for (a, &val) in img.iter().enumerate() {
                free.set(a, i * order + x, val);
            }
        }
    }
    let relations = kernel(&free);

    let unknowns = r * dn;
    let mut constraints = Mat::zeros(f, relations.rows() * dn, unknowns);
    for k in 0..relations.rows() {
        let c = relations.row(k);
        for i in 0..r {
            let mut block = Mat::zeros(f, dn, dn);
            for x in 0..order {
                let coef = c[i * order + x];
                if coef != 0 {
                    block.add_scaled(&acts_n[x], coef);
                }
            }
            constraints.set_block(k * dn, i * dn, &block);
        }
    }
    let solutions = kernel(&constraints);

    // d_m free columns forming a basis of m
    let pivots = row_reduce(&free).pivots;
    let b = free.select_cols(&pivots);
    let b_inv = inverse(&b).expect("pivot columns form a basis");
    let mut out = Vec::with_capacity(solutions.rows());
    for s in 0..solutions.rows() {
        let u = solutions.row(s);
        let mut y = Mat::zeros(f, dn, dm);
        for (col, &t) in pivots.iter().enumerate() {
            let (i, x) = (t / order, t % order);
            let img = acts_n[x].mul_vec(&u[i * dn..(i + 1) * dn]);
            for (a, &val) in img.iter().enumerate() {
                y.set(a, col, val);
            }
        }
        out.push(y.mul(&b_inv));
    }
    Ok(out)
}

/// Basis of `Hom_kG(m, n)` as the kernel of the commutation constraints
/// `X rho_m(s) = rho_n(s) X` over the group generators. Quadratic in the
/// dimensions; the reference against which [`hom_basis`] is tested.
pub fn hom_basis_by_commutation(m: &KGModule, n: &KGModule) -> Result<Vec<Mat>> {
    if !m.same_context(n) {
        return Err(crate::Error::Incompatible);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let cols = dn * dm;
    let gm = m.generator_actions();
    let gn = n.generator_actions();
    let mut rows = Mat::zeros(f, gm.len() * cols, cols);
    for (s, (am, an)) in gm.iter().zip(gn).enumerate() {
        for a in 0..dn {
            for c in 0..dm {
                let row = s * cols + a * dm + c;
                for b in 0..dm {
                    let v = am.get(b, c);
                    if v != 0 {
                        let idx = a * dm + b;
                        rows.set(row, idx, f.add(rows.get(row, idx), v));
                    }
                }
                for e in 0..dn {
                    let v = an.get(a, e);
                    if v != 0 {
                        let idx = e * dm + c;
                        rows.set(row, idx, f.sub(rows.get(row, idx), v));
                    }
                }
            }
        }
    }
    let k = kernel(&rows);
    Ok((0..k.rows())
        .map(|i| Mat::from_vec(f, dn, dm, k.row(i).to_vec()).expect("shape"))
        .collect())
}

/// Number of random elements of the Hom space tried before falling back to enumeration.
pub const ISO_RANDOM_ATTEMPTS: usize = 64;
/// Hom spaces up to this dimension are searched exhaustively after the random phase.
pub const ISO_EXHAUSTIVE_DIM: usize = 12;

/// Outcome of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(Mat),
    /// Proven non-isomorphic (dimension mismatch or exhaustive search).
    NotIsomorphic,
    /// Random search failed on a Hom space too large to enumerate.
    Inconclusive,
}

impl IsoSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoSearch::Found(_))
    }
}

/// Looks for an invertible element of a Hom space, given by a basis of square matrices.
pub fn search_invertible<R: Rng>(basis: &[Mat], rng: &mut R) -> IsoSearch {
    let Some(first) = basis.first() else {
        return IsoSearch::NotIsomorphic;
    };
    let f = first.field();
    let n = first.rows();
    if n == 0 {
        return IsoSearch::Found(first.clone());
    }
    let combine = |c: &[u32]| {
        let mut acc = Mat::zeros(f, n, n);
        for (b, &x) in basis.iter().zip(c) {
            if x != 0 {
                acc.add_scaled(b, x);
            }
        }
        acc
    };
    for _ in 0..ISO_RANDOM_ATTEMPTS {
        let c: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let x = combine(&c);
        if is_invertible(&x) {
            return IsoSearch::Found(x);
        }
    }
    let d = basis.len();
    let total = (f.p() as u64).checked_pow(d as u32);
    if d > ISO_EXHAUSTIVE_DIM || total.is_none_or(|t| t > 1 << 24) {
        return IsoSearch::Inconclusive;
    }
    // one representative per line: leading nonzero coefficient equal to 1
    let total = total.unwrap();
    let p = f.p() as u64;
    for code in 1..total {
        let mut c = vec![0u32; d];
        let mut t = code;
        for x in c.iter_mut() {
            *x = (t % p) as u32;
            t /= p;
        }
        if c.iter().rev().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let x = combine(&c);
        if is_invertible(&x) {
            return IsoSearch::Found(x);
        }
    }
    IsoSearch::NotIsomorphic
}

pub fn find_isomorphism<R: Rng>(m: &KGModule, n: &KGModule, rng: &mut R) -> Result<IsoSearch> {
    if !m.same_context(n) {
        return Err(crate::Error::Incompatible);
    }
    if m.dim() != n.dim() {
        return Ok(IsoSearch::NotIsomorphic);
    }
    if m.dim() == 0 {
        return Ok(IsoSearch::Found(Mat::zeros(m.field(), 0, 0)));
    }
    let basis = hom_basis(m, n)?;
    Ok(search_invertible(&basis, rng))
}

pub fn is_isomorphic<R: Rng>(m: &KGModule, n: &KGModule, rng: &mut R) -> Result<bool> {
    Ok(find_isomorphism(m, n, rng)?.is_found())
}

/// Checks that `x` is a module map `m -> n`.
pub fn is_equivariant(m: &KGModule, n: &KGModule, x: &Mat) -> bool {
    m.generator_actions()
        .iter()
        .zip(n.generator_actions())
        .all(|(a, b)| x.mul(a) == b.mul(x))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::{double_cosets, Group, SubgroupLattice};
    use crate::linalg::PrimeField;

    fn setup(s: &str, p: u32) -> (Arc<Group>, SubgroupLattice, PrimeField) {
        let g = Arc::new(Group::parse(s).unwrap());
        let l = SubgroupLattice::new(&g).unwrap();
        (g, l, PrimeField::new(p).unwrap())
    }

    fn span_dim(maps: &[Mat]) -> usize {
        if maps.is_empty() {
            return 0;
        }
        let f = maps[0].field();
        let rows: Vec<Vec<u32>> = maps.iter().map(|m| m.flatten()).collect();
        crate::linalg::rank(&Mat::from_rows(f, rows[0].len(), &rows))
    }

    #[test]
    fn hom_between_permutation_modules_counts_double_cosets() {
        let (g, l, f) = setup("dihedral:4", 2);
        for h in l.subgroups() {
            for k in l.subgroups() {
                let a = KGModule::permutation_on(g.clone(), &l, f, h.id);
                let b = KGModule::permutation_on(g.clone(), &l, f, k.id);
                let homs = hom_basis(&a, &b).unwrap();
                let dc = double_cosets(&g, &h.elements, &k.elements).unwrap();
                assert_eq!(homs.len(), dc.len());
                assert!(homs.iter().all(|x| is_equivariant(&a, &b, x)));
                assert_eq!(span_dim(&homs), homs.len());
            }
        }
    }

    #[test]
    fn presentation_agrees_with_commutation_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (s, p) in [
            ("dihedral:8", 2),
            ("cyclic:3", 3),
            ("prod(cyclic:3,cyclic:2)", 3),
            ("q8", 3),
        ] {
            let (g, l, f) = setup(s, p);
            let mods: Vec<KGModule> = l
                .subgroups()
                .iter()
                .map(|h| {
                    let perm = KGModule::permutation_on(g.clone(), &l, f, h.id);
                    KGModule::random_quotient_of(&perm, &mut rng)
                })
                .collect();
            for a in mods.iter().take(4) {
                for b in mods.iter().rev().take(4) {
                    let x = hom_basis(a, b).unwrap();
                    let y = hom_basis_by_commutation(a, b).unwrap();
                    assert_eq!(x.len(), y.len(), "{s}");
                    let mut all = x.clone();
                    all.extend(y);
                    assert_eq!(span_dim(&all), x.len());
                }
            }
        }
    }

    #[test]
    fn small_hom_spaces() {
        let (g, _, f) = setup("prod(cyclic:2,cyclic:4)", 2);
        let k = KGModule::trivial(g.clone(), f);
        assert_eq!(hom_basis(&k, &k).unwrap().len(), 1);
        let reg = KGModule::regular(g.clone(), f);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let l = SubgroupLattice::new(&g).unwrap();
        let m = KGModule::random_quotient_of(&KGModule::permutation_on(g.clone(), &l, f, 1), &mut rng);
        // Hom(kG, M) = M
        assert_eq!(hom_basis(&reg, &m).unwrap().len(), m.dim());
    }

    #[test]
    fn isomorphism_search() {
        let (g, l, f) = setup("dihedral:8", 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        // k induced from H is k[G/H]
        for h in l.subgroups() {
            let triv = KGModule::trivial(Arc::new(g.subgroup_as_group(&h.elements).unwrap()), f);
            let ind = triv.induce(g.clone(), &l, h).unwrap();
            let perm = KGModule::permutation_on(g.clone(), &l, f, h.id);
            assert!(is_isomorphic(&ind, &perm, &mut rng).unwrap());
        }
        let reg = KGModule::regular(g.clone(), f);
        let two = KGModule::permutation_on(g.clone(), &l, f, 1)
            .direct_sum(&KGModule::permutation_on(g.clone(), &l, f, 1))
            .unwrap();
        let iso = find_isomorphism(&reg, &two, &mut rng).unwrap();
        assert!(!iso.is_found());
    }
}
