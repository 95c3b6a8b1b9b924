use std::sync::{Arc, OnceLock};

use mackeylab::comack::{exactness, fp, fq, pd_probe, Family, YoshidaContext};
use mackeylab::group::{double_cosets, Group};
use mackeylab::kg::{KGModule, ShortExact};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GROUPS: [(&str, u32); 4] = [("cyclic:4", 2), ("dihedral:4", 2), ("cyclic:3", 3), ("dihedral:8", 2)];

fn contexts() -> &'static Vec<YoshidaContext> {
    static CTX: OnceLock<Vec<YoshidaContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        GROUPS
            .iter()
            .map(|&(s, p)| YoshidaContext::build(Arc::new(Group::parse(s).unwrap()), p, Family::All).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluations_count_double_cosets(g in 0..GROUPS.len(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let ctx = &contexts()[g];
        let n = ctx.lattice.len();
        let ks: Vec<usize> = picks.iter().map(|i| i.index(n)).collect();
        let parts: Vec<KGModule> = ks
            .iter()
            .map(|&k| KGModule::permutation_on(ctx.group.clone(), &ctx.lattice, ctx.field, k))
            .collect();
        let u = KGModule::direct_sum_all(&parts).unwrap();
        let f = fp(ctx, &u).unwrap();
        prop_assert!(f.module.is_projective());
        for h in 0..n {
            let expected: usize = ks
                .iter()
                .map(|&k| double_cosets(&ctx.group, &ctx.lattice.get(h).elements, &ctx.lattice.get(k).elements).unwrap().len())
                .sum();
            prop_assert_eq!(f.evaluation(ctx, h), expected);
        }
    }

    #[test]
    fn fp_left_exact_fq_right_exact(g in 0..GROUPS.len(), k in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let ctx = &contexts()[g];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = KGModule::permutation_on(ctx.group.clone(), &ctx.lattice, ctx.field, k.index(ctx.lattice.len()))
            .direct_sum(&KGModule::regular(ctx.group.clone(), ctx.field))
            .unwrap();
        let ses = ShortExact::random(&perm, &mut rng);
        let e = exactness(ctx, &ses);
        prop_assert!(e.fp_left_exact);
        prop_assert!(e.fq_right_exact);
    }
}

#[test]
fn resolution_ranks_do_not_depend_on_the_seed() {
    for ctx in contexts().iter().take(3) {
        let k = KGModule::trivial(ctx.group.clone(), ctx.field);
        for f in [fq(ctx, &k).unwrap(), fp(ctx, &k).unwrap()] {
            let a = pd_probe(ctx, &f, 5, Some(1)).unwrap();
            let b = pd_probe(ctx, &f, 5, Some(0xB0C)).unwrap();
            assert_eq!(a.kernel_dims, b.kernel_dims);
            assert_eq!(a.terms, b.terms);
        }
    }
}
