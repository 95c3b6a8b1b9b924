use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mackeylab::algebra::{layer_report, regular_decomposition, AModule};
use mackeylab::comack::{
    explicit_resolution, gorenstein_probe, loewy_diagram, parse_functor, pd_probe, subgroup_class_labels, Family,
    PdOutcome, Verdict, YoshidaContext,
};
use mackeylab::group::{predict, sylow_shape, tambara_rank, Group, SubgroupLattice};
use mackeylab::kg::{brauer_quotient, decompose, loewy_layers, parse_module};
use mackeylab::linalg::PrimeField;
use mackeylab::mackey::{brauer_identity_check, mackey_split_mono_probe, self_injective_report, MackeyAlgebra};
use mackeylab::report::{Check, Report, Status};
use mackeylab::suite::{repeating_multiset, run_suite, SuiteOptions, DEFAULT_SEED};
use serde_json::json;

const SEED_ENV: &str = "MACKEYLAB_SEED";

#[derive(Parser)]
#[command(
    name = "mackeylab",
    version,
    about = "Mackey and cohomological Mackey algebras of small groups"
)]
struct Cli {
    #[command(subcommand)]
    module: Module,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Group descriptor: cyclic:N, dihedral:N, q8 or prod(A,B).
    #[arg(long, global = true)]
    group: Option<String>,
    /// Characteristic; defaults to the smallest prime dividing the group order.
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// Resolution length cap.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// RNG seed, decimal or 0x-prefixed hex. The MACKEYLAB_SEED variable takes precedence.
    #[arg(long, global = true, value_parser = parse_seed)]
    seed: Option<u64>,
    /// Samples for randomized probes.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record wall times (reports then differ between runs).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Module {
    /// Group structure and predicted homological properties.
    Group {
        #[command(subcommand)]
        verb: GroupVerb,
    },
    /// Modules over the group algebra.
    Kgmod {
        #[command(subcommand)]
        verb: KgVerb,
    },
    /// Cohomological Mackey functors over the Yoshida algebra.
    Comack {
        #[command(subcommand)]
        verb: ComackVerb,
    },
    /// The full Mackey algebra.
    Mackey {
        #[command(subcommand)]
        verb: MackeyVerb,
    },
    /// The verification suite.
    Suite {
        #[command(subcommand)]
        verb: SuiteVerb,
    },
}

#[derive(Subcommand)]
enum GroupVerb {
    /// Gorenstein and global dimension predictions.
    Predict,
    /// Order and subgroup classes.
    Info,
}

#[derive(Subcommand)]
enum KgVerb {
    /// Dimension, Loewy layers, fixed points and indecomposable summands.
    Describe {
        /// triv, reg, perm:H or syzygy:N:MODULE.
        #[arg(long, default_value = "triv")]
        module: String,
    },
    /// Brauer quotients at every p-subgroup class.
    Brauer {
        #[arg(long, default_value = "triv")]
        module: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    All,
    Representatives,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::All => Family::All,
            FamilyArg::Representatives => Family::Representatives,
        }
    }
}

#[derive(Subcommand)]
enum ComackVerb {
    /// Dimension, blocks and Cartan matrix of the Yoshida algebra.
    Build {
        #[arg(long, value_enum, default_value_t = FamilyArg::Representatives)]
        family: FamilyArg,
    },
    /// Minimal projective resolution of a functor.
    Resolve {
        /// fp:MODULE, fq:MODULE or simple:LABEL.
        #[arg(long, default_value = "fq:triv")]
        functor: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::Representatives)]
        family: FamilyArg,
    },
    /// Projective dimensions of the indecomposable injectives.
    GorensteinProbe,
    /// The explicit resolution of FQ_k for cyclic and dihedral p-groups.
    Explicit,
    /// PIMs with composition factors and radical layers.
    Pims,
}

#[derive(Subcommand)]
enum MackeyVerb {
    /// Dimension and cohomological quotient.
    Build,
    /// Whether the algebra is self-injective.
    SelfInjective,
    /// Random monomorphisms between projectives, checked for splitting.
    SplitMonoProbe,
    /// Brauer quotient identity for projective Mackey functors.
    BrauerCheck,
}

#[derive(Subcommand)]
enum SuiteVerb {
    /// Runs every verification check.
    Run,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let r = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    r.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

struct Setup {
    group: Arc<Group>,
    lattice: SubgroupLattice,
    prime: u32,
    field: PrimeField,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn setup(g: &Global) -> Result<Setup, String> {
    let desc = g.group.as_deref().ok_or("this command needs --group")?;
    let group = Arc::new(Group::parse(desc).map_err(|e| e.to_string())?);
    let prime = match g.prime {
        Some(p) => p,
        None => group
            .smallest_prime()
            .ok_or("the trivial group needs an explicit --prime")?,
    };
    let field = PrimeField::new(prime).map_err(|e| e.to_string())?;
    let lattice = SubgroupLattice::new(&group).map_err(|e| e.to_string())?;
    Ok(Setup {
        group,
        lattice,
        prime,
        field,
    })
}

type Checks = mackeylab::Result<Vec<Check>>;

fn check(name: &str, status: Status, measured: serde_json::Value) -> Check {
    Check::new(name, status, measured, "")
}

fn group_cmd(verb: &GroupVerb, s: &Setup) -> Checks {
    let p = s.prime as usize;
    match verb {
        GroupVerb::Predict => {
            let pr = predict(&s.group, &s.lattice, p)?;
            Ok(vec![check(
                "predict",
                Status::Pass,
                json!({
                    "gorenstein": pr.gorenstein_over_fp,
                    "gldim_field": pr.finite_gldim_over_fp,
                    "gldim_Z": pr.finite_gldim_over_z,
                    "sylow": sylow_shape(&s.group, &s.lattice, p),
                    "tambara": tambara_rank(&s.group, &s.lattice, p),
                }),
            )
            .with_reference(
                "Theorems main-theorem, global-dimension-field, global-dimension-integers",
            )])
        }
        GroupVerb::Info => {
            let labels = subgroup_class_labels(&s.lattice);
            let classes: Vec<_> = s
                .lattice
                .classes()
                .iter()
                .zip(&labels)
                .map(|(c, l)| json!({ "label": l, "order": s.lattice.get(c[0]).order(), "ids": c }))
                .collect();
            Ok(vec![check(
                "info",
                Status::Pass,
                json!({
                    "order": s.group.order(),
                    "abelian": s.group.is_abelian(),
                    "subgroups": s.lattice.len(),
                    "classes": classes,
                }),
            )])
        }
    }
}

fn kg_cmd(verb: &KgVerb, s: &Setup, seed: u64) -> Checks {
    use rand::SeedableRng;
    let labels = subgroup_class_labels(&s.lattice);
    match verb {
        KgVerb::Describe { module } => {
            let m = parse_module(&s.group, &s.lattice, s.field, module, seed)?;
            let fixed: serde_json::Map<_, _> = s
                .lattice
                .class_representatives()
                .iter()
                .zip(&labels)
                .map(|(&h, l)| (l.clone(), json!(m.fixed_points(s.lattice.get(h)).dim())))
                .collect();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let summands: Vec<_> = decompose(&m, &mut rng)?
                .iter()
                .map(|x| json!({ "dim": x.module.dim(), "multiplicity": x.multiplicity }))
                .collect();
            let layers = loewy_layers(&m).ok();
            Ok(vec![check(
                "describe",
                Status::Pass,
                json!({ "module": module, "dim": m.dim(), "loewy_layers": layers, "fixed_points": fixed, "summands": summands }),
            )])
        }
        KgVerb::Brauer { module } => {
            let m = parse_module(&s.group, &s.lattice, s.field, module, seed)?;
            let mut out = serde_json::Map::new();
            for (&h, l) in s.lattice.class_representatives().iter().zip(&labels) {
                if let Ok(b) = brauer_quotient(&m, &s.lattice, h) {
                    out.insert(l.clone(), json!(b.dim));
                }
            }
            Ok(vec![check(
                "brauer",
                Status::Pass,
                json!({ "module": module, "brauer_quotients": out }),
            )])
        }
    }
}

fn comack_cmd(verb: &ComackVerb, s: &Setup, g: &Global, seed: u64) -> Checks {
    let family = match verb {
        ComackVerb::Build { family } | ComackVerb::Resolve { family, .. } => (*family).into(),
        _ => Family::Representatives,
    };
    if let ComackVerb::GorensteinProbe = verb {
        let r = gorenstein_probe(s.group.clone(), s.prime, g.depth, Some(seed))?;
        let status = match (r.verdict, r.consistent) {
            (Verdict::Inconclusive, _) => Status::Skip,
            (_, Some(true)) => Status::Pass,
            _ => Status::Fail,
        };
        return Ok(vec![
            check("gorenstein-probe", status, json!(r)).with_reference("Theorem main-theorem")
        ]);
    }
    let ctx = YoshidaContext::build(s.group.clone(), s.prime, family)?;
    let a = &ctx.algebra;
    let simple_labels: Vec<String> = (0..a.simple_count())
        .map(|c| ctx.block_label(a.class_rep(c)).to_string())
        .collect();
    match verb {
        ComackVerb::Build { .. } => {
            let expected = ctx.expected_dim()?;
            Ok(vec![check(
                "build",
                Status::from_bool(ctx.dim() == expected),
                json!({
                    "dim": ctx.dim(),
                    "double_cosets": expected,
                    "blocks": (0..ctx.blocks()).map(|r| ctx.block_label(r)).collect::<Vec<_>>(),
                    "simples": simple_labels,
                    "cartan": a.cartan(),
                    "radical_dim": a.radical_dim(),
                }),
            )])
        }
        ComackVerb::Resolve { functor, .. } => {
            let f = parse_functor(&ctx, functor, seed)?;
            let probe = pd_probe(&ctx, &f, g.depth, Some(seed))?;
            let status = match probe.outcome {
                PdOutcome::Finite { .. } => Status::Pass,
                PdOutcome::Exceeds { .. } if probe.conclusive => Status::Pass,
                PdOutcome::Exceeds { .. } => Status::Skip,
            };
            let evaluations: serde_json::Map<_, _> = (0..ctx.blocks())
                .map(|r| (ctx.block_label(r).to_string(), json!(f.evaluations()[r])))
                .collect();
            Ok(vec![check(
                "resolve",
                status,
                json!({
                    "functor": functor,
                    "evaluations": evaluations,
                    "loewy": loewy_diagram(&f),
                    "status": probe.status,
                    "pd": probe.outcome,
                    "repeating": repeating_multiset(&probe),
                    "terms": probe.terms,
                    "kernel_dims": probe.kernel_dims,
                    "tambara_bound": probe.tambara_bound,
                    "conclusive": probe.conclusive,
                    "evidence": probe.evidence,
                }),
            )])
        }
        ComackVerb::Explicit => {
            let e = explicit_resolution(&ctx, seed)?;
            Ok(vec![check(
                "explicit",
                Status::from_bool(e.exact && e.minimal),
                json!(e),
            )
            .with_reference("Theorem cyclic-dihedral-resolutions")])
        }
        ComackVerb::Pims => {
            let dec = regular_decomposition(a);
            let pims: Vec<_> = dec
                .pims
                .iter()
                .map(|p| {
                    let factors: serde_json::Map<_, _> = p
                        .composition_factors
                        .iter()
                        .zip(&simple_labels)
                        .map(|(&n, l)| (l.clone(), json!(n)))
                        .collect();
                    json!({
                        "label": p.label,
                        "dim": p.dim,
                        "multiplicity": p.multiplicity,
                        "composition_factors": factors,
                        "radical_layers": layer_report(&AModule::pim(a, p.block)).diagram(),
                    })
                })
                .collect();
            Ok(vec![check("pims", Status::Pass, json!(pims))])
        }
        ComackVerb::GorensteinProbe => unreachable!("handled above"),
    }
}

fn mackey_cmd(verb: &MackeyVerb, s: &Setup, g: &Global, seed: u64) -> Checks {
    let mu = MackeyAlgebra::build(s.group.clone(), s.prime)?;
    match verb {
        MackeyVerb::Build => {
            let q = mu.cohomological_quotient()?;
            Ok(vec![check(
                "build",
                Status::from_bool(q.image_dim == q.expected_dim && q.relation_holds),
                json!({
                    "dim": mu.dim(),
                    "blocks": mu.blocks(),
                    "simples": mu.algebra.simple_count(),
                    "cohomological_quotient_dim": q.image_dim,
                    "double_cosets": q.expected_dim,
                    "kernel_dim": q.kernel_dim,
                    "index_relation": q.relation_holds,
                }),
            )])
        }
        MackeyVerb::SelfInjective => {
            let r = self_injective_report(&mu);
            let p = s.prime as usize;
            let mut n = s.group.order();
            let mut sylow = 1;
            while n.is_multiple_of(p) {
                n /= p;
                sylow *= p;
            }
            let predicted = sylow <= p;
            Ok(vec![check(
                "self-injective",
                Status::from_bool(r.self_injective == predicted),
                json!({ "report": r, "sylow_order": sylow, "predicted": predicted }),
            )
            .with_reference(
                "Corollary: self-injective iff Sylow subgroups have order 1 or p",
            )])
        }
        MackeyVerb::SplitMonoProbe => {
            let r = mackey_split_mono_probe(&mu, g.trials, seed)?;
            let status = if !r.all_split() {
                Status::Fail
            } else if r.injective == 0 {
                Status::Skip
            } else {
                Status::Pass
            };
            Ok(vec![
                check("split-mono-probe", status, json!(r)).with_reference("Theorem finitistic-dimension")
            ])
        }
        MackeyVerb::BrauerCheck => {
            let c = brauer_identity_check(&mu)?;
            Ok(vec![check("brauer-check", Status::from_bool(c.holds()), json!(c))])
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let seed = match std::env::var(SEED_ENV) {
        Ok(v) => match parse_seed(&v) {
            Ok(s) => s,
            Err(e) => return usage_error(format!("{SEED_ENV}: {e}")),
        },
        Err(_) => g.seed.unwrap_or(DEFAULT_SEED),
    };
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let report = match &cli.module {
        Module::Suite { verb: SuiteVerb::Run } => {
            let opts = SuiteOptions {
                depth: g.depth,
                seed,
                trials: g.trials,
                timings: g.timings,
            };
            run_suite(&opts, &command)
        }
        module => {
            let s = match setup(g) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let start = std::time::Instant::now();
            let result = match module {
                Module::Group { verb } => group_cmd(verb, &s),
                Module::Kgmod { verb } => kg_cmd(verb, &s, seed),
                Module::Comack { verb } => comack_cmd(verb, &s, g, seed),
                Module::Mackey { verb } => mackey_cmd(verb, &s, g, seed),
                Module::Suite { .. } => unreachable!("handled above"),
            };
            let mut report = Report::new(&command, Some(s.group.descriptor().to_string()), Some(s.prime), seed);
            match result {
                Ok(checks) => checks.into_iter().for_each(|c| report.push(c)),
                Err(mackeylab::Error::Parse { input, reason }) => {
                    return usage_error(format!("cannot parse `{input}`: {reason}"));
                }
                Err(e) => report.push(check("error", Status::Fail, json!({ "error": e.to_string() }))),
            }
            if g.timings {
                report.wall_ms = Some(start.elapsed().as_millis() as u64);
            }
            report
        }
    };
    match g.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code() as u8)
}
