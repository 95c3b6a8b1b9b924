use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::module::KGModule;
use super::syzygy::syzygy;
use crate::comack::subgroup_class_labels;
use crate::error::{Error, Result};
use crate::group::{Group, SubgroupLattice};
use crate::linalg::PrimeField;

/// A subgroup by lattice id (`3`) or class label (`2a`, picking the class representative).
pub fn parse_subgroup(lat: &SubgroupLattice, s: &str) -> Result<usize> {
    let s = s.trim();
    if let Ok(id) = s.parse::<usize>() {
        return if id < lat.len() {
            Ok(id)
        } else {
            Err(Error::Parse {
                input: s.into(),
                reason: format!("subgroup ids run from 0 to {}", lat.len() - 1),
            })
        };
    }
    let labels = subgroup_class_labels(lat);
    labels
        .iter()
        .position(|l| l == s)
        .map(|c| lat.classes()[c][0])
        .ok_or_else(|| Error::Parse {
            input: s.into(),
            reason: format!(
                "expected a subgroup id or one of the class labels {}",
                labels.join(", ")
            ),
        })
}

/// Builds a module from `triv`, `reg`, `perm:H` or `syzygy:N:DESC`.
pub fn parse_module(
    g: &Arc<Group>,
    lat: &SubgroupLattice,
    field: PrimeField,
    desc: &str,
    seed: u64,
) -> Result<KGModule> {
    let d = desc.trim();
    let err = |reason: &str| Error::Parse {
        input: desc.into(),
        reason: reason.into(),
    };
    match d {
        "triv" => return Ok(KGModule::trivial(g.clone(), field)),
        "reg" => return Ok(KGModule::regular(g.clone(), field)),
        _ => {}
    }
    if let Some(h) = d.strip_prefix("perm:") {
        return Ok(KGModule::permutation_on(g.clone(), lat, field, parse_subgroup(lat, h)?));
    }
    if let Some(rest) = d.strip_prefix("syzygy:") {
        let (n, inner) = rest.split_once(':').ok_or_else(|| err("expected syzygy:N:MODULE"))?;
        let n: usize = n.parse().map_err(|_| err("syzygy count is not a number"))?;
        let m = parse_module(g, lat, field, inner, seed)?;
        return syzygy(&m, n, &mut ChaCha8Rng::seed_from_u64(seed));
    }
    Err(err("expected triv, reg, perm:H or syzygy:N:MODULE"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        let g = Arc::new(Group::parse("dihedral:8").unwrap());
        let lat = SubgroupLattice::new(&g).unwrap();
        let f = PrimeField::new(2).unwrap();
        let dim = |s: &str| parse_module(&g, &lat, f, s, 1).unwrap().dim();
        assert_eq!(dim("triv"), 1);
        assert_eq!(dim("reg"), 8);
        assert_eq!(dim("perm:2a"), 4);
        assert_eq!(dim(&format!("perm:{}", lat.whole())), 1);
        assert_eq!(dim("syzygy:1:triv"), 7);
        assert!(parse_module(&g, &lat, f, "perm:3x", 1).is_err());
        assert!(parse_module(&g, &lat, f, "perm:99", 1).is_err());
        assert!(parse_module(&g, &lat, f, "tensor", 1).is_err());
    }
}
