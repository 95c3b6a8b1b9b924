use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::functor::{fp, fp_map, fq, CMFunctor};
use super::yoshida::{Family, YoshidaContext};
use crate::algebra::module::block_contains;
use crate::algebra::{minimal_resolution, AModule, BlockMap, ResolutionStatus};
use crate::error::{Error, Result};
use crate::group::{predict, sylow_shape, tambara_rank, Group, Prediction, SylowShape};
use crate::kg::{free_cover, hom_basis, KGModule};
use crate::linalg::{kernel_subspace, rank, solve, Mat};

/// Random combinations tried when the sum of a Hom basis is not surjective enough.
pub const MAP_SEARCH_ATTEMPTS: usize = 256;

/// PIM multiplicities keyed by simple label.
pub type PimMultiset = BTreeMap<String, usize>;

pub fn pim_multiset(ctx: &YoshidaContext, class_mults: &[usize]) -> PimMultiset {
    let a = &ctx.algebra;
    class_mults
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(c, &m)| (ctx.block_label(a.class_rep(c)).to_string(), m))
        .collect()
}

/// `image(d_in) = ker(d_out)` in every block.
pub fn exact_at(d_in: &BlockMap, d_out: &BlockMap) -> bool {
    let img = d_in.image();
    let ker = d_out.kernel();
    block_contains(&ker, &img) && block_contains(&img, &ker)
}

pub(crate) fn surjective(d: &BlockMap) -> bool {
    d.blocks.iter().all(|b| rank(b) == b.rows())
}

pub(crate) fn injective(d: &BlockMap) -> bool {
    d.blocks.iter().all(|b| rank(b) == b.cols())
}

fn image_in_radical(d: &BlockMap, target: &AModule) -> bool {
    block_contains(&target.radical(), &d.image())
}

/// `0 <- FQ_M <- FP_{P_0} <- FP_{P_1} <- FP_{Ω²M} <- 0` from a minimal free resolution of `M`.
#[derive(Clone, Debug)]
pub struct ResolutionStart {
    pub p0: KGModule,
    pub p1: KGModule,
    pub omega2: KGModule,
    /// `P_0 -> M`, `P_1 -> P_0` and `Ω²M -> P_1` as matrices.
    pub kg_maps: [Mat; 3],
    /// `FQ_M`, `FP_{P_0}`, `FP_{P_1}`, `FP_{Ω²M}`.
    pub terms: Vec<CMFunctor>,
    /// `FP_{P_0} -> FQ_M`, then the maps induced by `FP`.
    pub maps: Vec<BlockMap>,
    /// Exactness at `FQ_M`, `FP_{P_0}`, `FP_{P_1}`, `FP_{Ω²M}`.
    pub exact: [bool; 4],
    pub homomorphisms: bool,
    /// Images of the differentials into `FP_{P_0}` and `FP_{P_1}` lie in the radicals.
    pub minimal: bool,
}

impl ResolutionStart {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }
}

fn require_p_group(ctx: &YoshidaContext) -> Result<()> {
    let p = ctx.field.p() as usize;
    let mut n = ctx.group.order();
    while n.is_multiple_of(p) {
        n /= p;
    }
    if n != 1 {
        return Err(Error::NotPGroup(format!("{} over F_{p}", ctx.group.descriptor())));
    }
    Ok(())
}

/// The map `FP_{P_0} = FQ_{P_0} -> FQ_M` induced by `ε : P_0 -> M`: a fixed point
/// `w = N_H v` goes to the class of `ε v`, paired with the basis of `(M*)^H`.
fn augmentation(ctx: &YoshidaContext, p0: &KGModule, m: &KGModule, eps: &Mat) -> Result<BlockMap> {
    let md = m.dual();
    let f = ctx.field;
    let mut blocks = Vec::with_capacity(ctx.blocks());
    for &h in &ctx.members {
        let sub = ctx.lattice.get(h);
        let w = p0.fixed_points(sub);
        let phi = md.fixed_points(sub);
        let mut norm = Mat::zeros(f, p0.dim(), p0.dim());
        for &x in &sub.elements {
            norm.add_scaled(p0.action(x), 1);
        }
        let v = solve(&norm, &w.basis().transpose())?
            .ok_or_else(|| Error::Internal("fixed points of a free module are not all norms".into()))?
            .x;
        blocks.push(phi.basis().mul(&eps.mul(&v)));
    }
    Ok(BlockMap { blocks })
}

pub fn resolution_start<R: Rng>(ctx: &YoshidaContext, m: &KGModule, rng: &mut R) -> Result<ResolutionStart> {
    require_p_group(ctx)?;
    let c0 = free_cover(m, rng)?;
    let c1 = free_cover(&c0.kernel, rng)?;
    let g = ctx.group.clone();
    let p0 = KGModule::free(g.clone(), ctx.field, c0.rank);
    let p1 = KGModule::free(g, ctx.field, c1.rank);
    let eps = c0.map.clone();
    let d1 = c0.kernel_space.basis().transpose().mul(&c1.map);
    let incl = c1.kernel_space.basis().transpose();
    let omega2 = c1.kernel.clone();

    let fqm = fq(ctx, m)?;
    let f0 = fp(ctx, &p0)?;
    let f1 = fp(ctx, &p1)?;
    let f2 = fp(ctx, &omega2)?;
    let aug = augmentation(ctx, &p0, m, &eps)?;
    let m1 = fp_map(ctx, &p1, &p0, &d1);
    let m2 = fp_map(ctx, &omega2, &p1, &incl);
    let homomorphisms = aug.is_homomorphism(&f0.module, &fqm.module)
        && m1.is_homomorphism(&f1.module, &f0.module)
        && m2.is_homomorphism(&f2.module, &f1.module);
    let exact = [
        surjective(&aug),
        exact_at(&m1, &aug),
        exact_at(&m2, &m1),
        injective(&m2),
    ];
    let minimal = image_in_radical(&m1, &f0.module) && image_in_radical(&m2, &f1.module);
    Ok(ResolutionStart {
        p0,
        p1,
        omega2,
        kg_maps: [eps, d1, incl],
        terms: vec![fqm, f0, f1, f2],
        maps: vec![aug, m1, m2],
        exact,
        homomorphisms,
        minimal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExplicitKind {
    Cyclic,
    Dihedral,
}

/// How the map `kX -> Ω²k` was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum MapStrategy {
    NotNeeded,
    HomBasisSum,
    Random { attempt: usize },
}

/// The resolution of `FQ_k` by fixed point functors of permutation modules.
#[derive(Clone, Debug, Serialize)]
pub struct ExplicitResolution {
    pub kind: ExplicitKind,
    pub length: usize,
    /// The `kG`-modules under each projective term.
    pub term_modules: Vec<String>,
    /// PIM multiplicities of each projective term.
    pub term_pims: Vec<PimMultiset>,
    pub x_size: Option<usize>,
    pub y_size: Option<usize>,
    pub strategy: MapStrategy,
    /// `kX -> Ω²k` is onto on `L`-fixed points for every subgroup `L`.
    pub fixed_point_surjective: bool,
    pub kernel_dim: Option<usize>,
    pub exact: bool,
    pub minimal: bool,
    pub terms_projective: bool,
}

fn is_cyclic_p_group(g: &Group, p: usize) -> bool {
    let n = g.order();
    let mut k = n;
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1 && n > 1 && g.elements().any(|x| g.element_order(x) == n)
}

/// Two involutions generating `G`, preferring the group's own generators.
fn generating_involutions(g: &Group) -> Option<(usize, usize)> {
    let gens = g.generators();
    let inv = |x: usize| g.element_order(x) == 2;
    if gens.len() == 2 && inv(gens[0]) && inv(gens[1]) && g.closure(gens).len() == g.order() {
        return Some((gens[0], gens[1]));
    }
    let invs: Vec<usize> = g.elements().filter(|&x| inv(x)).collect();
    for (i, &a) in invs.iter().enumerate() {
        for &b in &invs[i + 1..] {
            if g.closure(&[a, b]).len() == g.order() {
                return Some((a, b));
            }
        }
    }
    None
}

/// Whether `phi : u -> v` maps `u^L` onto `v^L` for every subgroup `L`.
fn onto_fixed_points(ctx: &YoshidaContext, u: &KGModule, v: &KGModule, phi: &Mat) -> bool {
    ctx.lattice.subgroups().iter().all(|l| {
        let target = v.fixed_points(l).dim();
        let src = u.fixed_points(l);
        rank(&phi.mul(&src.basis().transpose())) == target
    })
}

pub fn explicit_resolution(ctx: &YoshidaContext, seed: u64) -> Result<ExplicitResolution> {
    let g = ctx.group.clone();
    let p = ctx.field.p() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lat = &ctx.lattice;
    let k = KGModule::trivial(g.clone(), ctx.field);
    if is_cyclic_p_group(&g, p) {
        let start = resolution_start(ctx, &k, &mut rng)?;
        let pims: Vec<PimMultiset> = start.terms[1..]
            .iter()
            .map(|t| pim_multiset(ctx, &t.module.top_multiplicities()))
            .collect();
        return Ok(ExplicitResolution {
            kind: ExplicitKind::Cyclic,
            length: 2,
            term_modules: vec!["kG".into(), "kG".into(), "k".into()],
            term_pims: pims,
            x_size: None,
            y_size: None,
            strategy: MapStrategy::NotNeeded,
            fixed_point_surjective: true,
            kernel_dim: None,
            exact: start.is_exact() && start.homomorphisms && start.omega2.dim() == 1,
            minimal: start.minimal,
            terms_projective: start.terms[1..].iter().all(|t| t.module.is_projective()),
        });
    }
    let dihedral = p == 2 && matches!(sylow_shape(&g, lat, 2), SylowShape::Dihedral { order } if order == g.order());
    if !dihedral {
        return Err(Error::Unsupported(format!(
            "explicit resolutions exist for cyclic p-groups and dihedral 2-groups, not {}",
            g.descriptor()
        )));
    }
    let (s1, s2) = generating_involutions(&g)
        .ok_or_else(|| Error::Internal("dihedral group without generating involutions".into()))?;
    let h = lat.id_of_generated(&g, &[s1]);
    let kk = lat.id_of_generated(&g, &[s2]);
    let c = lat.id_of_generated(&g, &[g.mul(s1, s2)]);
    let start = resolution_start(ctx, &k, &mut rng)?;
    let omega = &start.omega2;
    let kx = KGModule::direct_sum_all(&[
        KGModule::permutation_on(g.clone(), lat, ctx.field, h),
        KGModule::permutation_on(g.clone(), lat, ctx.field, c),
        KGModule::permutation_on(g.clone(), lat, ctx.field, kk),
    ])?;
    let basis = hom_basis(&kx, omega)?;
    let good = |phi: &Mat| onto_fixed_points(ctx, &kx, omega, phi) && kernel_subspace(phi).dim() == 1;
    let mut sum = Mat::zeros(ctx.field, omega.dim(), kx.dim());
    for b in &basis {
        sum.add_scaled(b, 1);
    }
    let (phi, strategy) = if good(&sum) {
        (sum, MapStrategy::HomBasisSum)
    } else {
        let mut found = None;
        for attempt in 1..=MAP_SEARCH_ATTEMPTS {
            let mut phi = Mat::zeros(ctx.field, omega.dim(), kx.dim());
            for b in &basis {
                phi.add_scaled(b, rng.gen_range(0..ctx.field.p()));
            }
            if good(&phi) {
                found = Some((phi, MapStrategy::Random { attempt }));
                break;
            }
        }
        found.ok_or_else(|| Error::Internal("no map kX -> Ω²k surjective on all fixed points".into()))?
    };
    let ker = kernel_subspace(&phi);
    let ky = KGModule::trivial(g.clone(), ctx.field);
    let iota = ker.basis().transpose();
    let fx = fp(ctx, &kx)?;
    let fy = fp(ctx, &ky)?;
    let [_, d1, incl] = &start.kg_maps;
    let m3 = fp_map(ctx, &kx, &start.p1, &incl.mul(&phi));
    let m4 = fp_map(ctx, &ky, &kx, &iota);
    let (aug, m1) = (&start.maps[0], &start.maps[1]);
    let f0 = &start.terms[1].module;
    let f1 = &start.terms[2].module;
    let _ = d1;
    let homs = start.homomorphisms && m3.is_homomorphism(&fx.module, f1) && m4.is_homomorphism(&fy.module, &fx.module);
    let exact =
        homs && surjective(aug) && exact_at(m1, aug) && exact_at(&m3, m1) && exact_at(&m4, &m3) && injective(&m4);
    let minimal = image_in_radical(m1, f0) && image_in_radical(&m3, f1) && image_in_radical(&m4, &fx.module);
    let terms = [f0, f1, &fx.module, &fy.module];
    Ok(ExplicitResolution {
        kind: ExplicitKind::Dihedral,
        length: 3,
        term_modules: vec![
            "kG".into(),
            format!("kG^{}", start.p1.dim() / g.order()),
            "k[G/H]+k[G/C]+k[G/K]".into(),
            "k".into(),
        ],
        term_pims: terms
            .iter()
            .map(|t| pim_multiset(ctx, &t.top_multiplicities()))
            .collect(),
        x_size: Some(kx.dim()),
        y_size: Some(ky.dim()),
        strategy,
        fixed_point_surjective: true,
        kernel_dim: Some(ker.dim()),
        exact,
        minimal,
        terms_projective: terms.iter().all(|t| t.is_projective()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum PdOutcome {
    Finite { pd: usize },
    Exceeds { cap: usize },
}

/// Projective dimension probe with the evidence behind an "exceeds" verdict.
#[derive(Clone, Debug, Serialize)]
pub struct PdProbe {
    pub outcome: PdOutcome,
    pub status: ResolutionStatus,
    /// Tambara's bound `n + 1` on finite projective dimensions.
    pub tambara_bound: usize,
    /// Finite, periodic, or truncated beyond the bound: no finite dimension is possible.
    pub conclusive: bool,
    pub kernel_dims: Vec<usize>,
    pub terms: Vec<PimMultiset>,
    pub evidence: String,
}

pub fn pd_probe(ctx: &YoshidaContext, f: &CMFunctor, cap: usize, seed: Option<u64>) -> Result<PdProbe> {
    let res = minimal_resolution(&f.module, cap, seed)?;
    let bound = tambara_rank(&ctx.group, &ctx.lattice, ctx.field.p() as usize).bound;
    let terms: Vec<PimMultiset> = res.terms.iter().map(|t| pim_multiset(ctx, t)).collect();
    let (outcome, conclusive, evidence) = match res.status {
        ResolutionStatus::Finite { pd } => (PdOutcome::Finite { pd }, true, format!("kernel after P_{pd} is zero")),
        ResolutionStatus::Periodic { onset, period } => (
            PdOutcome::Exceeds { cap: res.terms.len() },
            true,
            format!(
                "kernel K_{} is isomorphic to the nonzero kernel K_{onset}, so the resolution never terminates",
                onset + period
            ),
        ),
        ResolutionStatus::Truncated { cap } => {
            let conclusive = cap > bound;
            let evidence = if conclusive {
                format!(
                    "kernel after P_{} is nonzero, so pd >= {cap} > {bound} = n+1 (Tambara bound): no finite projective dimension exists",
                    cap - 1
                )
            } else {
                format!("truncated at {cap} terms, not beyond the Tambara bound {bound}: inconclusive")
            };
            (PdOutcome::Exceeds { cap }, conclusive, evidence)
        }
    };
    Ok(PdProbe {
        outcome,
        status: res.status,
        tambara_bound: bound,
        conclusive,
        kernel_dims: res.kernel_dims,
        terms,
        evidence,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every indecomposable injective has finite projective dimension.
    Gorenstein,
    NotGorenstein,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupProbe {
    pub subgroup: String,
    pub probe: PdProbe,
}

#[derive(Clone, Debug, Serialize)]
pub struct GorensteinReport {
    pub probes: Vec<SubgroupProbe>,
    pub verdict: Verdict,
    pub max_pd: Option<usize>,
    pub prediction: Prediction,
    /// `None` when the verdict is inconclusive.
    pub consistent: Option<bool>,
    pub within_tambara_bound: bool,
}

/// Probes `FQ_{k[G/H]}` for class representatives `H`, whole group first, stopping at
/// the first conclusive infinite dimension.
pub fn gorenstein_probe(group: Arc<Group>, p: u32, cap: usize, seed: Option<u64>) -> Result<GorensteinReport> {
    let ctx = YoshidaContext::build(group, p, Family::Representatives)?;
    let prediction = predict(&ctx.group, &ctx.lattice, p as usize)?;
    let mut order: Vec<usize> = (0..ctx.blocks()).collect();
    order.sort_by_key(|&r| std::cmp::Reverse((ctx.lattice.get(ctx.members[r]).order(), r)));
    let mut probes = Vec::new();
    let mut verdict = Verdict::Gorenstein;
    for r in order {
        let h = ctx.members[r];
        let perm = KGModule::permutation_on(ctx.group.clone(), &ctx.lattice, ctx.field, h);
        let probe = pd_probe(&ctx, &fq(&ctx, &perm)?, cap, seed)?;
        let stop = match probe.outcome {
            PdOutcome::Finite { .. } => false,
            PdOutcome::Exceeds { .. } if probe.conclusive => {
                verdict = Verdict::NotGorenstein;
                true
            }
            PdOutcome::Exceeds { .. } => {
                verdict = Verdict::Inconclusive;
                false
            }
        };
        probes.push(SubgroupProbe {
            subgroup: ctx.block_label(r).to_string(),
            probe,
        });
        if stop {
            break;
        }
    }
    let pds: Vec<usize> = probes
        .iter()
        .filter_map(|s| match s.probe.outcome {
            PdOutcome::Finite { pd } => Some(pd),
            _ => None,
        })
        .collect();
    let max_pd = if verdict == Verdict::Gorenstein {
        pds.iter().copied().max()
    } else {
        None
    };
    let within_tambara_bound = probes.iter().all(|s| match s.probe.outcome {
        PdOutcome::Finite { pd } => pd <= s.probe.tambara_bound,
        _ => true,
    });
    let consistent = match verdict {
        Verdict::Gorenstein => Some(prediction.gorenstein_over_fp),
        Verdict::NotGorenstein => Some(!prediction.gorenstein_over_fp),
        Verdict::Inconclusive => None,
    };
    Ok(GorensteinReport {
        probes,
        verdict,
        max_pd,
        prediction,
        consistent,
        within_tambara_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn ctx(s: &str, p: u32) -> YoshidaContext {
        YoshidaContext::build(Arc::new(Group::parse(s).unwrap()), p, Family::Representatives).unwrap()
    }

    fn ms(pairs: &[(&str, usize)]) -> PimMultiset {
        pairs.iter().map(|&(l, m)| (l.to_string(), m)).collect()
    }

    #[test]
    fn resolution_start_for_c2() {
        let y = ctx("cyclic:2", 2);
        let k = KGModule::trivial(y.group.clone(), y.field);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = resolution_start(&y, &k, &mut rng).unwrap();
        assert!(s.is_exact() && s.homomorphisms && s.minimal);
        assert_eq!((s.p0.dim(), s.p1.dim(), s.omega2.dim()), (2, 2, 1));
        // projective M: FQ_M = FP_M and the cover is an isomorphism
        let kg = KGModule::regular(y.group.clone(), y.field);
        let s = resolution_start(&y, &kg, &mut rng).unwrap();
        assert!(s.is_exact());
        assert_eq!(s.p1.dim(), 0);
    }

    #[test]
    fn resolution_start_for_klein_four() {
        let y = ctx("dihedral:4", 2);
        let k = KGModule::trivial(y.group.clone(), y.field);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = resolution_start(&y, &k, &mut rng).unwrap();
        assert!(s.is_exact() && s.homomorphisms);
        assert_eq!(s.omega2.dim(), 5);
        let c6 = YoshidaContext::build(Arc::new(Group::cyclic(6).unwrap()), 2, Family::Representatives);
        assert!(c6.is_err());
    }

    #[test]
    fn cyclic_explicit_resolutions() {
        for (s, p) in [("cyclic:2", 2), ("cyclic:3", 3), ("cyclic:4", 2)] {
            let y = ctx(s, p);
            let r = explicit_resolution(&y, 0xB0C).unwrap();
            assert!(r.exact && r.minimal && r.terms_projective, "{s}");
            let top = y.class_labels.last().unwrap().as_str();
            assert_eq!(r.term_pims, vec![ms(&[("1", 1)]), ms(&[("1", 1)]), ms(&[(top, 1)])]);
            let fqk = fq(&y, &KGModule::trivial(y.group.clone(), y.field)).unwrap();
            let probe = pd_probe(&y, &fqk, 8, None).unwrap();
            assert_eq!(probe.outcome, PdOutcome::Finite { pd: 2 });
            assert_eq!(probe.terms, r.term_pims);
        }
    }

    #[test]
    fn klein_four_explicit_resolution() {
        let y = ctx("dihedral:4", 2);
        let r = explicit_resolution(&y, 0xB0C).unwrap();
        assert!(r.exact && r.minimal && r.terms_projective);
        assert_eq!((r.x_size, r.y_size, r.kernel_dim), (Some(6), Some(1), Some(1)));
        let fqk = fq(&y, &KGModule::trivial(y.group.clone(), y.field)).unwrap();
        let probe = pd_probe(&y, &fqk, 8, None).unwrap();
        assert_eq!(probe.outcome, PdOutcome::Finite { pd: 3 });
        assert_eq!(probe.terms, r.term_pims);
        assert_eq!(r.term_pims[2], ms(&[("2a", 1), ("2b", 1), ("2c", 1)]));
        assert!(explicit_resolution(&ctx("q8", 2), 1).is_err());
    }

    #[test]
    fn pd_probe_bounds() {
        let y = ctx("dihedral:4", 2);
        let f = PrimeField::new(2).unwrap();
        // the simple functor at the trivial subgroup has infinite projective dimension
        let s1 = super::super::functor::simple_by_label(&y, "1").unwrap();
        let probe = pd_probe(&y, &s1, 4, None).unwrap();
        assert!(matches!(probe.outcome, PdOutcome::Exceeds { cap: 4 }));
        assert_eq!(probe.tambara_bound, 3);
        assert!(probe.conclusive);
        // already periodic within three terms: K_3 = K_1
        let probe = pd_probe(&y, &s1, 3, None).unwrap();
        assert_eq!(probe.status, ResolutionStatus::Periodic { onset: 1, period: 2 });
        assert!(probe.conclusive);
        // a truncated probe that does not pass the bound is inconclusive
        let fqk = fq(&y, &KGModule::trivial(y.group.clone(), f)).unwrap();
        let probe = pd_probe(&y, &fqk, 3, None).unwrap();
        assert!(matches!(probe.outcome, PdOutcome::Exceeds { cap: 3 }) && !probe.conclusive);
        let kg = fp(&y, &KGModule::regular(y.group.clone(), f)).unwrap();
        assert_eq!(pd_probe(&y, &kg, 2, None).unwrap().outcome, PdOutcome::Finite { pd: 0 });
    }

    #[test]
    fn gorenstein_probes_small() {
        let c4 = gorenstein_probe(Arc::new(Group::cyclic(4).unwrap()), 2, 8, None).unwrap();
        assert_eq!(c4.verdict, Verdict::Gorenstein);
        assert_eq!(c4.max_pd, Some(2));
        assert_eq!(c4.consistent, Some(true));
        assert_eq!(c4.probes.len(), 3);
        let c3 = gorenstein_probe(Arc::new(Group::cyclic(3).unwrap()), 3, 8, None).unwrap();
        assert_eq!(c3.consistent, Some(true));
    }
}
