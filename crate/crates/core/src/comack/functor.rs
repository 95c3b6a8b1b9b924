use serde::{Deserialize, Serialize};

use super::resolve::{exact_at, injective, surjective};
use super::yoshida::YoshidaContext;
use crate::algebra::{layer_report, AModule, BlockMap, LayerReport};
use crate::error::{Error, Result};
use crate::kg::{KGModule, ShortExact};
use crate::linalg::{Mat, Subspace};

/// Where a functor came from. Only `FP`/`FQ` functors can change group.
#[derive(Clone, Debug)]
pub enum Provenance {
    Fp(KGModule),
    Fq(KGModule),
    Abstract,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Fp(_) => "fp",
            Provenance::Fq(_) => "fq",
            Provenance::Abstract => "abstract",
        }
    }
}

/// A cohomological Mackey functor as a module over the Yoshida algebra.
#[derive(Clone, Debug)]
pub struct CMFunctor {
    pub module: AModule,
    pub provenance: Provenance,
}

impl CMFunctor {
    /// Value at each block of the context.
    pub fn evaluations(&self) -> &[usize] {
        self.module.dims()
    }

    /// `dim F(H)`; for the representatives family, the value at the class representative.
    pub fn evaluation(&self, ctx: &YoshidaContext, h: usize) -> usize {
        self.module.dims()[ctx.block_of(h)]
    }

    /// `Σ_H dim F(H)` over all subgroups, counting conjugates for the representatives family.
    pub fn total_over_all_subgroups(&self, ctx: &YoshidaContext) -> usize {
        (0..ctx.blocks())
            .map(|r| {
                let mult = match ctx.family {
                    super::Family::All => 1,
                    super::Family::Representatives => ctx.class_size(r),
                };
                self.module.dims()[r] * mult
            })
            .sum()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

fn check_module(ctx: &YoshidaContext, u: &KGModule) -> Result<()> {
    if **u.group() != *ctx.group || u.field() != ctx.field {
        return Err(Error::Incompatible);
    }
    Ok(())
}

fn fixed_bases(ctx: &YoshidaContext, u: &KGModule) -> Vec<Subspace> {
    ctx.members
        .iter()
        .map(|&h| u.fixed_points(ctx.lattice.get(h)))
        .collect()
}

/// Basis actions of `FP_U` on the fixed-point bases, indexed `[r * b + c][i]`.
fn fp_actions(ctx: &YoshidaContext, u: &KGModule, fixed: &[Subspace]) -> Vec<Vec<Mat>> {
    let b = ctx.blocks();
    let f = ctx.field;
    let mut out = Vec::with_capacity(b * b);
    for r in 0..b {
        for c in 0..b {
            let table = &ctx.orbits[r * b + c];
            let bt = fixed[c].basis().transpose();
            let mut acc = vec![Mat::zeros(f, u.dim(), bt.cols()); table.len()];
            if bt.cols() > 0 {
                for (x, &rep) in ctx.cosets[c].reps.iter().enumerate() {
                    acc[table.id(x, 0)].add_scaled(&u.action(rep).mul(&bt), 1);
                }
            }
            out.push(acc.iter().map(|m| m.select_rows(fixed[r].keys())).collect());
        }
    }
    out
}

/// `FP_U = Hom_kG(P, U)`, with value `U^H` at `H`.
pub fn fp(ctx: &YoshidaContext, u: &KGModule) -> Result<CMFunctor> {
    check_module(ctx, u)?;
    let fixed = fixed_bases(ctx, u);
    let dims: Vec<usize> = fixed.iter().map(Subspace::dim).collect();
    let table = fp_actions(ctx, u, &fixed);
    let b = ctx.blocks();
    let module = AModule::from_basis_actions(ctx.algebra.clone(), dims, |r, c, i| table[r * b + c][i].clone(), false)?;
    Ok(CMFunctor {
        module,
        provenance: Provenance::Fp(u.clone()),
    })
}

/// Dual of a module given by basis actions, made a left module through the transpose
/// anti-involution: `ρ*(x) = ρ(σx)^T`.
fn twist_dual(ctx: &YoshidaContext, dims: Vec<usize>, table: &[Vec<Mat>]) -> Result<AModule> {
    let b = ctx.blocks();
    AModule::from_basis_actions(
        ctx.algebra.clone(),
        dims,
        |r, c, i| table[c * b + r][ctx.transpose_index(r, c, i)].transpose(),
        false,
    )
}

/// `FQ_M`, with value the coinvariants `M_H`, realized as the twisted dual of `FP_{M*}`.
/// Block `H` has coordinates dual to the basis of `(M*)^H`.
pub fn fq(ctx: &YoshidaContext, m: &KGModule) -> Result<CMFunctor> {
    check_module(ctx, m)?;
    let md = m.dual();
    let fixed = fixed_bases(ctx, &md);
    let dims: Vec<usize> = fixed.iter().map(Subspace::dim).collect();
    let table = fp_actions(ctx, &md, &fixed);
    Ok(CMFunctor {
        module: twist_dual(ctx, dims, &table)?,
        provenance: Provenance::Fq(m.clone()),
    })
}

/// Duality of cohomological Mackey functors; exchanges `FP_U` and `FQ_{U*}`.
pub fn dual(ctx: &YoshidaContext, f: &CMFunctor) -> Result<CMFunctor> {
    let table = f.module.basis_actions();
    let provenance = match &f.provenance {
        Provenance::Fp(u) => Provenance::Fq(u.dual()),
        Provenance::Fq(m) => Provenance::Fp(m.dual()),
        Provenance::Abstract => Provenance::Abstract,
    };
    Ok(CMFunctor {
        module: twist_dual(ctx, f.module.dims().to_vec(), &table)?,
        provenance,
    })
}

/// `FP_f : FP_U -> FP_V` for a `kG`-map `f` (a `dim V x dim U` matrix).
pub fn fp_map(ctx: &YoshidaContext, u: &KGModule, v: &KGModule, f: &Mat) -> BlockMap {
    let fu = fixed_bases(ctx, u);
    let fv = fixed_bases(ctx, v);
    BlockMap {
        blocks: fu
            .iter()
            .zip(&fv)
            .map(|(a, b)| f.mul(&a.basis().transpose()).select_rows(b.keys()))
            .collect(),
    }
}

/// Builds a functor from `fp:MODULE`, `fq:MODULE` or `simple:LABEL`, where `MODULE` is
/// a module descriptor such as `triv` or `perm:2a`.
pub fn parse_functor(ctx: &YoshidaContext, desc: &str, seed: u64) -> Result<CMFunctor> {
    let module = |m: &str| crate::kg::parse_module(&ctx.group, &ctx.lattice, ctx.field, m, seed);
    match desc.trim().split_once(':') {
        Some(("fp", m)) => fp(ctx, &module(m)?),
        Some(("fq", m)) => fq(ctx, &module(m)?),
        Some(("simple", l)) => simple_by_label(ctx, l),
        _ => Err(Error::Parse {
            input: desc.into(),
            reason: "expected fp:MODULE, fq:MODULE or simple:LABEL".into(),
        }),
    }
}

/// `FQ` of a map `f: U -> V`, as the transpose of `FP` of `f^T: V* -> U*`.
pub fn fq_map(ctx: &YoshidaContext, u: &KGModule, v: &KGModule, f: &Mat) -> BlockMap {
    let m = fp_map(ctx, &v.dual(), &u.dual(), &f.transpose());
    BlockMap {
        blocks: m.blocks.iter().map(Mat::transpose).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exactness {
    /// `0 -> FP_A -> FP_B -> FP_C` is exact.
    pub fp_left_exact: bool,
    /// `FQ_A -> FQ_B -> FQ_C -> 0` is exact.
    pub fq_right_exact: bool,
    /// `FP_B -> FP_C` is onto; fails when fixed points do not lift.
    pub fp_onto: bool,
}

pub fn exactness(ctx: &YoshidaContext, ses: &ShortExact) -> Exactness {
    let (a, b, c) = (&ses.sub, &ses.middle, &ses.quotient);
    let (fi, fpi) = (fp_map(ctx, a, b, &ses.incl), fp_map(ctx, b, c, &ses.proj));
    let (qi, qpi) = (fq_map(ctx, a, b, &ses.incl), fq_map(ctx, b, c, &ses.proj));
    Exactness {
        fp_left_exact: injective(&fi) && exact_at(&fi, &fpi),
        fq_right_exact: surjective(&qpi) && exact_at(&qi, &qpi),
        fp_onto: surjective(&fpi),
    }
}

/// The simple functor of an algebra class.
pub fn simple(ctx: &YoshidaContext, class: usize) -> CMFunctor {
    CMFunctor {
        module: AModule::simple(&ctx.algebra, class),
        provenance: Provenance::Abstract,
    }
}

/// Simple functor whose label (minimal subgroup class) is `label`.
pub fn simple_by_label(ctx: &YoshidaContext, label: &str) -> Result<CMFunctor> {
    let a = &ctx.algebra;
    (0..a.simple_count())
        .find(|&c| ctx.block_label(a.class_rep(c)) == label)
        .map(|c| simple(ctx, c))
        .ok_or_else(|| Error::Parse {
            input: label.into(),
            reason: "no simple functor with this label".into(),
        })
}

/// The minimal subgroup class `H` with `e_H S != 0`.
pub fn simple_label(ctx: &YoshidaContext, s: &AModule) -> Result<String> {
    let rad: usize = s.radical().iter().map(Subspace::dim).sum();
    if s.dim() == 0 || rad != 0 || s.top_multiplicities().iter().sum::<usize>() != 1 {
        return Err(Error::InvalidModule("not a simple functor".into()));
    }
    let r = (0..ctx.blocks())
        .filter(|&r| s.dims()[r] > 0)
        .min_by_key(|&r| (ctx.lattice.get(ctx.members[r]).order(), r))
        .expect("nonzero module");
    Ok(ctx.block_label(r).to_string())
}

pub fn loewy_report(f: &CMFunctor) -> LayerReport {
    layer_report(&f.module)
}

/// Radical layers of a functor, e.g. `[4][2][1]`.
pub fn loewy_diagram(f: &CMFunctor) -> String {
    loewy_report(f).diagram()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Restrict,
    Induce,
}

/// Restriction or induction of an `FP`/`FQ` functor, computed on the underlying module.
/// `h` is the subgroup id in the larger group's lattice: `from` is the context of `G`
/// when restricting and of `H` when inducing.
pub fn change_group_functor(
    from: &YoshidaContext,
    to: &YoshidaContext,
    f: &CMFunctor,
    direction: Direction,
    h: usize,
) -> Result<CMFunctor> {
    let u = match &f.provenance {
        Provenance::Fp(u) | Provenance::Fq(u) => u,
        Provenance::Abstract => {
            return Err(Error::Unsupported(
                "induction and restriction need a functor of the form FP_U or FQ_M".into(),
            ))
        }
    };
    let moved = match direction {
        Direction::Restrict => u.restrict(from.lattice.get(h))?,
        Direction::Induce => u.induce(to.group.clone(), &to.lattice, to.lattice.get(h))?,
    };
    match f.provenance {
        Provenance::Fp(_) => fp(to, &moved),
        _ => fq(to, &moved),
    }
}
