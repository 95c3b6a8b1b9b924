use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::FdAlgebra;
use super::hom::find_isomorphism;
use super::module::{projective_sum, AModule, BlockMap};
use crate::error::{Error, Result};

/// Kernels are compared against at most this many predecessors for periodicity.
pub const PERIODICITY_WINDOW: usize = 6;
/// Default number of projective terms computed by probes.
pub const DEFAULT_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ResolutionStatus {
    /// The kernel after `P_pd` vanished.
    Finite { pd: usize },
    /// `cap` projective terms computed with a nonzero kernel after the last one.
    Truncated { cap: usize },
    /// `K_{onset + period} ≅ K_onset`, where `K_0 = M` and `K_{i+1} = ker(P_i -> K_i)`.
    Periodic { onset: usize, period: usize },
}

/// A minimal projective resolution `M <- P_0 <- P_1 <- ...`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub algebra: Arc<FdAlgebra>,
    /// PIM summands (by block) of each term.
    pub summands: Vec<Vec<usize>>,
    /// Multiplicity of each simple class among the summands of each term.
    pub terms: Vec<Vec<usize>>,
    /// `dim K_{i+1}` for each term `P_i`.
    pub kernel_dims: Vec<usize>,
    /// `P_0 -> M`.
    pub augmentation: BlockMap,
    /// `d_i : P_i -> P_{i-1}` for `i >= 1`, stored at index `i - 1`.
    pub differentials: Vec<BlockMap>,
    pub status: ResolutionStatus,
}

impl Resolution {
    pub fn projective(&self, i: usize) -> AModule {
        projective_sum(&self.algebra, &self.summands[i])
    }

    pub fn pd(&self) -> Option<usize> {
        match self.status {
            ResolutionStatus::Finite { pd } => Some(pd),
            _ => None,
        }
    }

    /// Terms `P_onset .. P_{onset+period-1}` of a periodic resolution.
    pub fn repeating_terms(&self) -> Option<&[Vec<usize>]> {
        match self.status {
            ResolutionStatus::Periodic { onset, period } => {
                let end = (onset + period).min(self.terms.len());
                Some(&self.terms[onset.min(end)..end])
            }
            _ => None,
        }
    }

    /// Total dimension of each term.
    pub fn term_dims(&self) -> Vec<usize> {
        self.summands
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&r| self.algebra.pim_data(r).dims.iter().sum::<usize>())
                    .sum()
            })
            .collect()
    }
}

/// Minimal projective resolution of `m` with at most `cap` projective terms. Lifts
/// are canonical when `seed` is `None`, and randomly perturbed inside the radical otherwise.
pub fn minimal_resolution(m: &AModule, cap: usize, seed: Option<u64>) -> Result<Resolution> {
    if cap == 0 {
        return Err(Error::Budget("resolution cap must be at least 1".into()));
    }
    let alg = m.algebra().clone();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut iso_rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0) ^ 0x5eed);
    let window = cap.min(PERIODICITY_WINDOW);
    let mut summands = Vec::new();
    let mut terms = Vec::new();
    let mut kernel_dims = Vec::new();
    let mut differentials = Vec::new();
    let mut augmentation = None;
    let mut status = None;
    let mut recent: Vec<(usize, AModule)> = vec![(0, m.clone())];
    let mut current = m.clone();
    let mut prev_space = None;
    for i in 0..cap {
        let cover = current.projective_cover(rng.as_mut());
        match prev_space.take() {
            None => augmentation = Some(cover.map.clone()),
            Some(space) => differentials.push(BlockMap::inclusion(&space).compose(&cover.map)),
        }
        summands.push(cover.summands.clone());
        terms.push(cover.multiplicities.clone());
        kernel_dims.push(cover.kernel.dim());
        if cover.kernel.dim() == 0 {
            status = Some(ResolutionStatus::Finite { pd: i });
            break;
        }
        let k = cover.kernel;
        if status.is_none() {
            for (j, earlier) in &recent {
                if earlier.dims() == k.dims()
                    && earlier.top_multiplicities() == k.top_multiplicities()
                    && find_isomorphism(earlier, &k, &mut iso_rng)?.is_found()
                {
                    status = Some(ResolutionStatus::Periodic {
                        onset: *j,
                        period: i + 1 - j,
                    });
                    break;
                }
            }
        }
        recent.push((i + 1, k.clone()));
        if recent.len() > window {
            recent.remove(0);
        }
        prev_space = Some(cover.kernel_space);
        current = k;
    }
    Ok(Resolution {
        algebra: alg,
        summands,
        terms,
        kernel_dims,
        augmentation: augmentation.expect("at least one term"),
        differentials,
        status: status.unwrap_or(ResolutionStatus::Truncated { cap }),
    })
}

/// PIMs of an algebra with their multiplicities in the regular module.
#[derive(Clone, Debug, Serialize)]
pub struct RegularDecomposition {
    pub pims: Vec<PimSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PimSummary {
    /// Label of the simple top.
    pub label: String,
    pub block: usize,
    pub dim: usize,
    pub multiplicity: usize,
    pub composition_factors: Vec<usize>,
}

pub fn regular_decomposition(alg: &Arc<FdAlgebra>) -> RegularDecomposition {
    let pims = (0..alg.simple_count())
        .map(|c| {
            let r = alg.class_rep(c);
            let p = AModule::pim(alg, r);
            PimSummary {
                label: alg.labels()[r].clone(),
                block: r,
                dim: p.dim(),
                multiplicity: alg.structure().classes[c].len(),
                composition_factors: p.composition_factors(),
            }
        })
        .collect();
    RegularDecomposition { pims }
}

/// Whether the regular module is injective.
pub fn self_injective(alg: &Arc<FdAlgebra>) -> bool {
    AModule::regular(alg).is_injective()
}

/// Radical and socle series with simple labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerReport {
    pub labels: Vec<String>,
    /// Per-class multiplicities of each radical layer, top first.
    pub radical: Vec<Vec<usize>>,
    /// Per-class multiplicities of each socle layer, bottom first.
    pub socle: Vec<Vec<usize>>,
    pub composition_factors: Vec<usize>,
}

impl LayerReport {
    pub fn loewy_length(&self) -> usize {
        self.radical.len()
    }

    /// Radical layers as bracketed label lists, top first, e.g. `[4][2][1]`.
    pub fn diagram(&self) -> String {
        render_layers(&self.labels, &self.radical)
    }
}

pub fn render_layers(labels: &[String], layers: &[Vec<usize>]) -> String {
    layers
        .iter()
        .map(|layer| {
            let parts: Vec<&str> = layer
                .iter()
                .enumerate()
                .flat_map(|(c, &m)| std::iter::repeat_n(labels[c].as_str(), m))
                .collect();
            format!("[{}]", parts.join(" "))
        })
        .collect()
}

pub fn layer_report(m: &AModule) -> LayerReport {
    let alg = m.algebra();
    LayerReport {
        labels: (0..alg.simple_count())
            .map(|c| alg.labels()[alg.class_rep(c)].clone())
            .collect(),
        radical: m.radical_layers(),
        socle: m.socle_layers(),
        composition_factors: m.composition_factors(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebra::tests::*;
    use crate::algebra::module::block_contains;

    fn check_complex(res: &Resolution, m: &AModule) {
        // exactness: image d_{i+1} = ker d_i, and d d = 0
        let mut prev = res.augmentation.clone();
        for (i, d) in res.differentials.iter().enumerate() {
            assert!(prev.compose(d).is_zero());
            let ker = prev.kernel();
            let img = d.image();
            assert!(block_contains(&ker, &img) && block_contains(&img, &ker));
            // minimality
            let p = res.projective(i);
            assert!(block_contains(&p.radical(), &img));
            prev = d.clone();
        }
        assert_eq!(res.augmentation.rank(), m.dim());
    }

    #[test]
    fn semisimple_and_projective_modules() {
        let a = Arc::new(split_semisimple(2, 3));
        let s = AModule::simple(&a, 1);
        let r = minimal_resolution(&s, 8, None).unwrap();
        assert_eq!(r.status, ResolutionStatus::Finite { pd: 0 });
        assert!(self_injective(&a));
        let cartan = a.cartan();
        assert_eq!(cartan, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn upper_triangular_simples_have_finite_dimension() {
        let a = Arc::new(upper_triangular(3, 3));
        let pds: Vec<usize> = (0..3)
            .map(|c| {
                minimal_resolution(&AModule::simple(&a, c), 8, None)
                    .unwrap()
                    .pd()
                    .unwrap()
            })
            .collect();
        // S_0 is projective; S_1 and S_2 have pd 1 (P_1 has radical S_0, P_2 has radical P_1)
        assert_eq!(pds, vec![0, 1, 1]);
        assert!(!self_injective(&a));
        for c in 0..3 {
            let s = AModule::simple(&a, c);
            check_complex(&minimal_resolution(&s, 8, None).unwrap(), &s);
        }
    }

    #[test]
    fn local_algebras_are_periodic_or_growing() {
        // k[x]/(x^2): the trivial module is periodic of period 1
        let a = Arc::new(abelian_group_algebra(2, 2, 1));
        let s = AModule::simple(&a, 0);
        let r = minimal_resolution(&s, 8, None).unwrap();
        assert_eq!(r.status, ResolutionStatus::Periodic { onset: 0, period: 1 });
        assert_eq!(r.terms.len(), 8);
        check_complex(&r, &s);
        assert!(self_injective(&a));
        // Klein four: Omega^n k grows, dims 2n + 1
        let v = Arc::new(abelian_group_algebra(2, 2, 2));
        let s = AModule::simple(&v, 0);
        let r = minimal_resolution(&s, 5, None).unwrap();
        assert_eq!(r.status, ResolutionStatus::Truncated { cap: 5 });
        assert_eq!(r.kernel_dims, vec![3, 5, 7, 9, 11]);
        check_complex(&r, &s);
        let r2 = minimal_resolution(&s, 5, Some(9)).unwrap();
        assert_eq!(r.terms, r2.terms);
    }

    #[test]
    fn layer_diagrams() {
        let a = Arc::new(upper_triangular(2, 3));
        let rep = layer_report(&AModule::pim(&a, 2));
        assert_eq!(rep.diagram(), "[2][1][0]");
        assert_eq!(rep.socle, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let dec = regular_decomposition(&a);
        let total: usize = dec.pims.iter().map(|p| p.dim * p.multiplicity).sum();
        assert_eq!(total, a.dim());
    }
}
