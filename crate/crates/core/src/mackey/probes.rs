use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::MackeyAlgebra;
use crate::algebra::{self_injective, Elem, FdAlgebra};
use crate::error::Result;
use crate::kg::{brauer_quotient, KGModule};
use crate::linalg::{rank, solve, Mat, Subspace};

/// Largest multiplicity of a PIM in a sampled direct sum.
pub const MAX_SAMPLE_MULTIPLICITY: usize = 2;

#[derive(Clone, Debug, Serialize)]
pub struct SelfInjectivity {
    pub group: String,
    pub prime: u32,
    pub dim: usize,
    pub self_injective: bool,
}

pub fn self_injective_report(mu: &MackeyAlgebra) -> SelfInjectivity {
    SelfInjectivity {
        group: mu.group.descriptor().to_string(),
        prime: mu.field.p(),
        dim: mu.dim(),
        self_injective: self_injective(&mu.algebra),
    }
}

/// A map `⊕ A e_s -> ⊕ A e_t` given by right multiplications `x_{st} ∈ e_s A e_t`.
#[derive(Clone, Debug)]
pub struct ProjectiveMap {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// `entries[a][b]` lies in `e_{source[a]} A e_{target[b]}`.
    pub entries: Vec<Vec<Elem>>,
}

impl ProjectiveMap {
    pub fn random<R: Rng>(alg: &FdAlgebra, source: Vec<usize>, target: Vec<usize>, rng: &mut R) -> Self {
        let p = alg.field().p();
        let entries = source
            .iter()
            .map(|&s| {
                target
                    .iter()
                    .map(|&t| {
                        let mut e = alg.zero_elem(s, t);
                        e.coeffs.iter_mut().for_each(|c| *c = rng.gen_range(0..p));
                        e
                    })
                    .collect()
            })
            .collect();
        Self {
            source,
            target,
            entries,
        }
    }

    /// Component of the map at block `q`.
    pub fn block(&self, alg: &FdAlgebra, q: usize) -> Mat {
        let rows: usize = self.target.iter().map(|&t| alg.block_dim(q, t)).sum();
        let cols: usize = self.source.iter().map(|&s| alg.block_dim(q, s)).sum();
        let mut m = Mat::zeros(alg.field(), rows, cols);
        let mut c0 = 0;
        for (a, &s) in self.source.iter().enumerate() {
            let mut r0 = 0;
            for (b, &t) in self.target.iter().enumerate() {
                m.set_block(r0, c0, &alg.right_mult(&self.entries[a][b], q));
                r0 += alg.block_dim(q, t);
            }
            c0 += alg.block_dim(q, s);
        }
        m
    }

    pub fn is_injective(&self, alg: &FdAlgebra) -> bool {
        (0..alg.blocks()).all(|q| {
            let m = self.block(alg, q);
            rank(&m) == m.cols()
        })
    }

    /// Whether some `ρ` given by `y_{ts} ∈ e_t A e_s` satisfies `ρ φ = id`, that is
    /// `Σ_t x_{st} y_{ts'} = δ_{ss'} e_s`.
    pub fn splits(&self, alg: &FdAlgebra) -> Result<bool> {
        let f = alg.field();
        let (src, tgt) = (&self.source, &self.target);
        let col_offsets: Vec<Vec<usize>> = {
            let mut n = 0;
            tgt.iter()
                .map(|&t| {
                    src.iter()
                        .map(|&s| {
                            let o = n;
                            n += alg.block_dim(t, s);
                            o
                        })
                        .collect()
                })
                .collect()
        };
        let cols: usize = tgt
            .iter()
            .map(|&t| src.iter().map(|&s| alg.block_dim(t, s)).sum::<usize>())
            .sum();
        let rows: usize = src
            .iter()
            .map(|&s| src.iter().map(|&s2| alg.block_dim(s, s2)).sum::<usize>())
            .sum();
        let mut m = Mat::zeros(f, rows, cols);
        let mut rhs = Mat::zeros(f, rows, 1);
        let mut r0 = 0;
        for (a, &s) in src.iter().enumerate() {
            for (a2, &s2) in src.iter().enumerate() {
                for (b, _) in tgt.iter().enumerate() {
                    m.set_block(r0, col_offsets[b][a2], &alg.left_mult(&self.entries[a][b], s2));
                }
                if a == a2 {
                    rhs.set(r0 + alg.idempotent_index(s), 0, 1);
                }
                r0 += alg.block_dim(s, s2);
            }
        }
        Ok(solve(&m, &rhs)?.is_some())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitMonoReport {
    pub group: String,
    pub prime: u32,
    pub trials: usize,
    pub seed: u64,
    pub injective: usize,
    pub split: usize,
    /// Source and target PIM labels of the first non-split injective map.
    pub counterexample: Option<(Vec<String>, Vec<String>)>,
}

impl SplitMonoReport {
    pub fn all_split(&self) -> bool {
        self.injective == self.split
    }
}

fn random_sum<R: Rng>(classes: &[usize], rng: &mut R) -> Vec<usize> {
    loop {
        let out: Vec<usize> = classes
            .iter()
            .flat_map(|&r| std::iter::repeat_n(r, rng.gen_range(0..=MAX_SAMPLE_MULTIPLICITY)))
            .collect();
        if !out.is_empty() {
            return out;
        }
    }
}

/// Samples maps between random sums of PIMs and checks that the injective ones split.
pub fn split_mono_probe(alg: &Arc<FdAlgebra>, trials: usize, seed: u64) -> Result<SplitMonoReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes: Vec<usize> = (0..alg.simple_count()).map(|c| alg.class_rep(c)).collect();
    let (mut injective, mut split) = (0, 0);
    let mut counterexample = None;
    for _ in 0..trials {
        let source = random_sum(&classes, &mut rng);
        let target = random_sum(&classes, &mut rng);
        let phi = ProjectiveMap::random(alg, source, target, &mut rng);
        if !phi.is_injective(alg) {
            continue;
        }
        injective += 1;
        if phi.splits(alg)? {
            split += 1;
        } else if counterexample.is_none() {
            let names = |v: &[usize]| v.iter().map(|&r| alg.labels()[r].clone()).collect();
            counterexample = Some((names(&phi.source), names(&phi.target)));
        }
    }
    Ok(SplitMonoReport {
        group: String::new(),
        prime: alg.field().p(),
        trials,
        seed,
        injective,
        split,
        counterexample,
    })
}

pub fn mackey_split_mono_probe(mu: &MackeyAlgebra, trials: usize, seed: u64) -> Result<SplitMonoReport> {
    let mut r = split_mono_probe(&mu.algebra, trials, seed)?;
    r.group = mu.group.descriptor().to_string();
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerRow {
    pub pim: String,
    pub subgroup: String,
    /// `dim X(H) / Σ_{L<H} t_L^H X(L)`.
    pub bar_dim: usize,
    /// `dim X(1)[H]`.
    pub brauer_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerCheck {
    pub group: String,
    pub prime: u32,
    pub rows: Vec<BrauerRow>,
}

impl BrauerCheck {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.bar_dim == r.brauer_dim)
    }
}

/// Compares `X̄(H)` with the Brauer quotient of the `kG`-module `X(1)` for every PIM `X`
/// and every subgroup `H`.
pub fn brauer_identity_check(mu: &MackeyAlgebra) -> Result<BrauerCheck> {
    let alg = &mu.algebra;
    let f = mu.field;
    let lat = &mu.lattice;
    let t = lat.trivial();
    let labels = crate::comack::subgroup_class_labels(lat);
    let mut rows = Vec::new();
    for s in lat.class_representatives() {
        let n1 = alg.block_dim(t, s);
        let gens: Vec<Mat> = mu
            .group
            .generators()
            .iter()
            .map(|&g| alg.left_mult(&mu.conjugation(g), s))
            .collect();
        let x1 = KGModule::new(mu.group.clone(), f, n1, gens)?;
        for h in 0..lat.len() {
            let mut traces = Mat::zeros(f, 0, alg.block_dim(h, s));
            for l in lat.proper_subgroups(h) {
                let tr = alg.left_mult(&mu.transfer(l, h), s);
                traces = traces.vstack(&tr.transpose());
            }
            let bar_dim = alg.block_dim(h, s) - Subspace::row_space(&traces).dim();
            rows.push(BrauerRow {
                pim: labels[lat.class_of(s)].clone(),
                subgroup: labels[lat.class_of(h)].clone(),
                bar_dim,
                brauer_dim: brauer_quotient(&x1, lat, h)?.dim,
            });
        }
    }
    Ok(BrauerCheck {
        group: mu.group.descriptor().to_string(),
        prime: f.p(),
        rows,
    })
}
