use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{layer_report, regular_decomposition, AModule, ResolutionStatus};
use crate::comack::{
    dual, exactness, explicit_resolution, fp, fq, gorenstein_probe, pd_probe, simple_by_label, ExplicitKind, Family,
    PdOutcome, PdProbe, PimMultiset, Verdict, YoshidaContext,
};
use crate::error::Result;
use crate::group::{Group, SubgroupLattice};
use crate::kg::{loewy_length, restricted_omega_two, syzygy, KGModule, ShortExact};
use crate::linalg::PrimeField;
use crate::mackey::{brauer_identity_check, mackey_split_mono_probe, self_injective_report, MackeyAlgebra};
use crate::report::{Check, Report, Status};

pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_SEED: u64 = 0xB0C;
pub const DEFAULT_TRIALS: usize = 100;
/// Random short exact sequences per group in the exactness check.
pub const EXACTNESS_SEQUENCES: usize = 20;

/// Groups of the classification check, with their characteristic.
pub const SUITE_GROUPS: [(&str, u32); 10] = [
    ("cyclic:2", 2),
    ("cyclic:3", 3),
    ("cyclic:4", 2),
    ("cyclic:5", 5),
    ("prod(cyclic:2,cyclic:2)", 2),
    ("dihedral:8", 2),
    ("prod(cyclic:2,cyclic:4)", 2),
    ("q8", 2),
    ("prod(cyclic:2,prod(cyclic:2,cyclic:2))", 2),
    ("prod(cyclic:3,cyclic:3)", 3),
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub depth: usize,
    pub seed: u64,
    pub trials: usize,
    /// Record wall times; reports are then no longer byte-identical across runs.
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            depth: DEFAULT_DEPTH,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            timings: false,
        }
    }
}

/// One acceptance criterion of the suite.
#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub number: usize,
    pub slug: &'static str,
    pub reference: &'static str,
    run: fn(&SuiteOptions) -> Vec<Check>,
}

impl Criterion {
    pub fn run(&self, opts: &SuiteOptions) -> Vec<Check> {
        let prefix = format!("{:02}-{}", self.number, self.slug);
        let mut checks = (self.run)(opts);
        for c in &mut checks {
            c.name = if c.name.is_empty() {
                prefix.clone()
            } else {
                format!("{prefix}/{}", c.name)
            };
            c.reference = self.reference.to_string();
            if !opts.timings {
                c.wall_ms = None;
            }
        }
        checks
    }
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion {
        number: 1,
        slug: "cyclic-resolutions",
        reference: "Theorem cyclic-dihedral-resolutions (cyclic case)",
        run: cyclic_resolutions,
    },
    Criterion {
        number: 2,
        slug: "dihedral-resolutions",
        reference: "Theorem cyclic-dihedral-resolutions (dihedral case)",
        run: dihedral_resolutions,
    },
    Criterion {
        number: 3,
        slug: "omega-two",
        reference: "Propositions infinite-dimension-c2xc4-and-q8, infinite-dimension-cpxcp",
        run: omega_two,
    },
    Criterion {
        number: 4,
        slug: "infinite-pd",
        reference: "Propositions infinite-dimension-*; Tambara finitistic bound n+1",
        run: infinite_pd,
    },
    Criterion {
        number: 5,
        slug: "gorenstein",
        reference: "Theorem main-theorem",
        run: gorenstein,
    },
    Criterion {
        number: 6,
        slug: "global-dimension",
        reference: "Theorem global-dimension-field",
        run: global_dimension,
    },
    Criterion {
        number: 7,
        slug: "c4-pims",
        reference: "PIM structure of the cohomological Mackey algebra of C_4",
        run: c4_pims,
    },
    Criterion {
        number: 8,
        slug: "mackey-algebra",
        reference: "Theorem finitistic-dimension and its corollary",
        run: mackey_algebra,
    },
    Criterion {
        number: 9,
        slug: "brauer-identity",
        reference: "Brauer quotients of projective Mackey functors",
        run: brauer_identity,
    },
    Criterion {
        number: 10,
        slug: "properties",
        reference: "Yoshida's theorem; Proposition duality; exactness of FP and FQ",
        run: properties,
    },
];

/// Runs every criterion and assembles the report in name order.
pub fn run_suite(opts: &SuiteOptions, command: &str) -> Report {
    let start = Instant::now();
    let mut report = Report::new(command, None, None, opts.seed);
    for c in &CRITERIA {
        for check in c.run(opts) {
            report.push(check);
        }
    }
    report.sort_checks();
    if opts.timings {
        report.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

fn group(s: &str) -> Result<Arc<Group>> {
    Ok(Arc::new(Group::parse(s)?))
}

fn guarded(name: &str, f: impl FnOnce() -> Result<(Status, Value)>) -> Check {
    let start = Instant::now();
    let mut check = match f() {
        Ok((status, measured)) => Check::new(name, status, measured, ""),
        Err(e) => Check::new(name, Status::Fail, json!({ "error": e.to_string() }), ""),
    };
    check.wall_ms = Some(start.elapsed().as_millis() as u64);
    check
}

/// `Pass`/`Fail` for a conclusive probe, `Skip` otherwise.
fn probe_status(probe: &PdProbe, expect_finite: Option<usize>) -> Status {
    match (probe.outcome, expect_finite) {
        (PdOutcome::Finite { pd }, Some(e)) => Status::from_bool(pd == e),
        (PdOutcome::Finite { .. }, None) => Status::Fail,
        (PdOutcome::Exceeds { .. }, _) if !probe.conclusive => Status::Skip,
        (PdOutcome::Exceeds { .. }, Some(_)) => Status::Fail,
        (PdOutcome::Exceeds { .. }, None) => Status::Pass,
    }
}

fn fq_trivial(ctx: &YoshidaContext) -> Result<crate::comack::CMFunctor> {
    fq(ctx, &KGModule::trivial(ctx.group.clone(), ctx.field))
}

fn explicit_check(s: &str, p: u32, opts: &SuiteOptions, kind: ExplicitKind, length: usize) -> Check {
    guarded(s, || {
        let g = group(s)?;
        let order = g.order();
        let ctx = YoshidaContext::build(g, p, Family::Representatives)?;
        let e = explicit_resolution(&ctx, opts.seed)?;
        let probe = pd_probe(&ctx, &fq_trivial(&ctx)?, opts.depth, Some(opts.seed))?;
        let mut ok = e.kind == kind && e.length == length && e.exact && e.minimal && e.terms_projective;
        if kind == ExplicitKind::Dihedral {
            // X = G/H ⊔ G/K ⊔ G/C and Y a point
            ok &= e.x_size == Some(order + 2) && e.y_size == Some(1) && e.fixed_point_surjective;
        }
        let status = match probe_status(&probe, Some(length)) {
            Status::Pass if ok => Status::Pass,
            Status::Skip if ok => Status::Skip,
            _ => Status::Fail,
        };
        Ok((
            status,
            json!({
                "explicit": e,
                "pd": probe.outcome,
                "probe_terms": probe.terms,
            }),
        ))
    })
}

fn cyclic_resolutions(opts: &SuiteOptions) -> Vec<Check> {
    [("cyclic:2", 2), ("cyclic:3", 3), ("cyclic:4", 2), ("cyclic:5", 5)]
        .iter()
        .map(|&(s, p)| explicit_check(s, p, opts, ExplicitKind::Cyclic, 2))
        .collect()
}

fn dihedral_resolutions(opts: &SuiteOptions) -> Vec<Check> {
    [("prod(cyclic:2,cyclic:2)", 2), ("dihedral:8", 2)]
        .iter()
        .map(|&(s, p)| explicit_check(s, p, opts, ExplicitKind::Dihedral, 3))
        .collect()
}

/// A subgroup of the given order, cyclic or not.
fn subgroup_of(g: &Group, lat: &SubgroupLattice, order: usize, cyclic: bool) -> Option<usize> {
    lat.subgroups()
        .iter()
        .find(|h| h.order() == order && h.elements.iter().any(|&x| g.element_order(x) == order) == cyclic)
        .map(|h| h.id)
}

fn omega_two(opts: &SuiteOptions) -> Vec<Check> {
    let restricted = |s: &str, cyclic: bool, free_rank: usize, omega_h: usize| {
        guarded(s, || {
            let g = group(s)?;
            let lat = SubgroupLattice::new(&g)?;
            let f = PrimeField::new(2)?;
            let h = subgroup_of(&g, &lat, 4, cyclic).expect("a subgroup of order 4 exists");
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let r = restricted_omega_two(&g, &lat, f, h, &mut rng)?;
            let ok = r.omega_dim == 9 && r.matches && r.free_rank == free_rank && r.omega_h_dim == omega_h;
            Ok((
                Status::from_bool(ok),
                json!({ "subgroup": if cyclic { "C_4" } else { "C_2 x C_2" }, "restriction": r }),
            ))
        })
    };
    let cpcp = guarded("prod(cyclic:3,cyclic:3)", || {
        let g = group("prod(cyclic:3,cyclic:3)")?;
        let f = PrimeField::new(3)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let o2 = syzygy(&KGModule::trivial(g, f), 2, &mut rng)?;
        let ll = loewy_length(&o2)?;
        Ok((
            Status::from_bool(o2.dim() == 10 && ll == 4),
            json!({ "omega_dim": o2.dim(), "loewy_length": ll }),
        ))
    });
    vec![
        restricted("prod(cyclic:2,cyclic:4)", false, 1, 5),
        restricted("q8", true, 2, 1),
        cpcp,
    ]
}

fn infinite_pd(opts: &SuiteOptions) -> Vec<Check> {
    [
        ("prod(cyclic:2,cyclic:4)", 2),
        ("q8", 2),
        ("prod(cyclic:2,prod(cyclic:2,cyclic:2))", 2),
        ("prod(cyclic:3,cyclic:3)", 3),
    ]
    .iter()
    .map(|&(s, p)| {
        guarded(s, || {
            let ctx = YoshidaContext::build(group(s)?, p, Family::Representatives)?;
            let probe = pd_probe(&ctx, &fq_trivial(&ctx)?, opts.depth, Some(opts.seed))?;
            let status = probe_status(&probe, None);
            let conclusion = match status {
                Status::Pass => "no finite pd exists",
                Status::Skip => "truncated, inconclusive",
                Status::Fail => "finite pd found",
            };
            Ok((status, json!({ "conclusion": conclusion, "probe": probe })))
        })
    })
    .collect()
}

fn gorenstein(opts: &SuiteOptions) -> Vec<Check> {
    SUITE_GROUPS
        .iter()
        .map(|&(s, p)| {
            guarded(s, || {
                let r = gorenstein_probe(group(s)?, p, opts.depth, Some(opts.seed))?;
                let status = match (r.verdict, r.consistent) {
                    (Verdict::Inconclusive, _) => Status::Skip,
                    (_, Some(true)) if r.within_tambara_bound => Status::Pass,
                    _ => Status::Fail,
                };
                Ok((
                    status,
                    json!({
                        "verdict": r.verdict,
                        "prediction": r.prediction,
                        "max_pd": r.max_pd,
                        "probed": r.probes.iter().map(|x| x.subgroup.clone()).collect::<Vec<_>>(),
                    }),
                ))
            })
        })
        .collect()
}

/// Union of the terms over one period of a periodic resolution.
pub fn repeating_multiset(probe: &PdProbe) -> Option<PimMultiset> {
    match probe.status {
        ResolutionStatus::Periodic { onset, period } => {
            let mut acc = BTreeMap::new();
            for t in probe.terms.iter().skip(onset).take(period) {
                for (k, v) in t {
                    *acc.entry(k.clone()).or_insert(0) += v;
                }
            }
            Some(acc)
        }
        _ => None,
    }
}

fn global_dimension(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = vec![guarded("cyclic:2", || {
        let ctx = YoshidaContext::build(group("cyclic:2")?, 2, Family::Representatives)?;
        let mut pds = BTreeMap::new();
        let mut ok = true;
        for label in ["1", "2"] {
            let probe = pd_probe(&ctx, &simple_by_label(&ctx, label)?, opts.depth, Some(opts.seed))?;
            match probe.outcome {
                PdOutcome::Finite { pd } => {
                    pds.insert(label, json!(pd));
                }
                _ => {
                    ok = false;
                    pds.insert(label, json!(probe.outcome));
                }
            }
        }
        Ok((Status::from_bool(ok), json!({ "simple_pds": pds })))
    })];
    for (s, p, top) in [("cyclic:3", 3, "3"), ("cyclic:4", 2, "2")] {
        out.push(guarded(s, || {
            let ctx = YoshidaContext::build(group(s)?, p, Family::Representatives)?;
            let probe = pd_probe(&ctx, &simple_by_label(&ctx, "1")?, opts.depth, Some(opts.seed))?;
            let expected: PimMultiset = [("1".to_string(), 1), (top.to_string(), 1)].into_iter().collect();
            let rep = repeating_multiset(&probe);
            let status = match &rep {
                Some(m) => Status::from_bool(*m == expected),
                None if !probe.conclusive => Status::Skip,
                None => Status::Fail,
            };
            Ok((
                status,
                json!({ "simple": "1", "status": probe.status, "repeating": rep, "terms": probe.terms }),
            ))
        }));
    }
    out
}

fn c4_pims(_: &SuiteOptions) -> Vec<Check> {
    vec![guarded("", || {
        let ctx = YoshidaContext::build(group("cyclic:4")?, 2, Family::Representatives)?;
        let dec = regular_decomposition(&ctx.algebra);
        let a = &ctx.algebra;
        let labels: Vec<&str> = (0..a.simple_count()).map(|c| ctx.block_label(a.class_rep(c))).collect();
        let mut factors = BTreeMap::new();
        for pim in &dec.pims {
            let m: BTreeMap<&str, usize> = pim
                .composition_factors
                .iter()
                .enumerate()
                .map(|(c, &n)| (labels[c], n))
                .collect();
            factors.insert(pim.label.clone(), m);
        }
        let expected = json!({
            "1": {"1": 4, "2": 2, "4": 1},
            "2": {"1": 2, "2": 2, "4": 1},
            "4": {"1": 1, "2": 1, "4": 1},
        });
        let top = (0..a.blocks())
            .find(|&r| ctx.block_label(r) == "4")
            .expect("C_4 has a block for G");
        let diagram = layer_report(&AModule::pim(a, top)).diagram();
        let ok = json!(factors) == expected && diagram == "[4][2][1]";
        Ok((
            Status::from_bool(ok),
            json!({ "composition_factors": factors, "p4_layers": diagram }),
        ))
    })]
}

fn mackey_algebra(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = vec![guarded("c2-dimensions", || {
        let mu = MackeyAlgebra::build(group("cyclic:2")?, 2)?;
        let q = mu.cohomological_quotient()?;
        let ok = mu.dim() == 6 && q.image_dim == 5 && q.image_dim == q.expected_dim && q.relation_holds;
        Ok((
            Status::from_bool(ok),
            json!({ "dim": mu.dim(), "quotient_dim": q.image_dim, "kernel_dim": q.kernel_dim, "index_relation": q.relation_holds }),
        ))
    })];
    for (s, p, expected) in [
        ("cyclic:2", 2, true),
        ("cyclic:3", 3, true),
        ("cyclic:4", 2, false),
        ("prod(cyclic:2,cyclic:2)", 2, false),
    ] {
        out.push(guarded(&format!("self-injective/{s}"), || {
            let r = self_injective_report(&MackeyAlgebra::build(group(s)?, p)?);
            Ok((Status::from_bool(r.self_injective == expected), json!(r)))
        }));
    }
    for s in ["cyclic:4", "prod(cyclic:2,cyclic:2)"] {
        out.push(guarded(&format!("split-mono/{s}"), || {
            let r = mackey_split_mono_probe(&MackeyAlgebra::build(group(s)?, 2)?, opts.trials, opts.seed)?;
            let status = if !r.all_split() {
                Status::Fail
            } else if r.injective == 0 {
                Status::Skip
            } else {
                Status::Pass
            };
            Ok((status, json!(r)))
        }));
    }
    out
}

fn brauer_identity(_: &SuiteOptions) -> Vec<Check> {
    ["cyclic:2", "cyclic:4"]
        .iter()
        .map(|&s| {
            guarded(s, || {
                let c = brauer_identity_check(&MackeyAlgebra::build(group(s)?, 2)?)?;
                Ok((Status::from_bool(c.holds()), json!(c.rows)))
            })
        })
        .collect()
}

fn properties(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for &(s, p) in &SUITE_GROUPS {
        out.push(guarded(&format!("yoshida-dimension/{s}"), || {
            let ctx = YoshidaContext::build(group(s)?, p, Family::All)?;
            let expected = ctx.expected_dim()?;
            Ok((
                Status::from_bool(ctx.dim() == expected),
                json!({ "dim": ctx.dim(), "double_cosets": expected }),
            ))
        }));
        out.push(guarded(&format!("exactness/{s}"), || {
            let ctx = YoshidaContext::build(group(s)?, p, Family::Representatives)?;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let (mut left, mut right, mut onto) = (0, 0, 0);
            for i in 0..EXACTNESS_SEQUENCES {
                let h = ctx.members[i % ctx.members.len()];
                let perm = KGModule::permutation_on(ctx.group.clone(), &ctx.lattice, ctx.field, h)
                    .direct_sum(&KGModule::trivial(ctx.group.clone(), ctx.field))?;
                let e = exactness(&ctx, &ShortExact::random(&perm, &mut rng));
                left += usize::from(e.fp_left_exact);
                right += usize::from(e.fq_right_exact);
                onto += usize::from(e.fp_onto);
            }
            let ok = left == EXACTNESS_SEQUENCES && right == EXACTNESS_SEQUENCES;
            Ok((
                Status::from_bool(ok),
                json!({ "sequences": EXACTNESS_SEQUENCES, "fp_left_exact": left, "fq_right_exact": right, "fp_onto": onto }),
            ))
        }));
        out.push(guarded(&format!("duality/{s}"), || {
            let ctx = YoshidaContext::build(group(s)?, p, Family::Representatives)?;
            let mut rows = Vec::new();
            let mut ok = true;
            let k = KGModule::trivial(ctx.group.clone(), ctx.field);
            for (name, f) in [
                ("fp:triv", fp(&ctx, &k)?),
                ("fq:triv", fq(&ctx, &k)?),
                ("simple:1", simple_by_label(&ctx, "1")?),
            ] {
                let d = dual(&ctx, &f)?;
                let before = (f.module.is_projective(), f.module.is_injective());
                let after = (d.module.is_projective(), d.module.is_injective());
                ok &= before == (after.1, after.0);
                rows.push(json!({ "functor": name, "projective_injective": before, "dual": after }));
            }
            Ok((Status::from_bool(ok), json!(rows)))
        }));
        out.push(guarded(&format!("seed-independence/{s}"), || {
            let ctx = YoshidaContext::build(group(s)?, p, Family::Representatives)?;
            let f = fq_trivial(&ctx)?;
            let a = pd_probe(&ctx, &f, opts.depth, Some(opts.seed))?;
            let b = pd_probe(&ctx, &f, opts.depth, Some(opts.seed.wrapping_add(1)))?;
            let ok = a.kernel_dims == b.kernel_dims && a.terms == b.terms;
            Ok((Status::from_bool(ok), json!({ "kernel_dims": a.kernel_dims })))
        }));
    }
    out
}
