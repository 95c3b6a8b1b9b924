use std::collections::HashMap;

use super::group::Group;
use crate::error::{Error, Result};

/// Largest group order for which the full subgroup lattice is enumerated.
pub const LATTICE_LIMIT: usize = 64;

/// A subgroup, identified by its index in the owning [`SubgroupLattice`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub id: usize,
    pub elements: Vec<usize>,
    pub mask: u64,
    pub gens: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask >> g & 1 == 1
    }
}

/// All subgroups of a group of order at most [`LATTICE_LIMIT`], with conjugacy data.
///
/// Subgroups are sorted by order and then by element set, so id 0 is the
/// trivial subgroup and the last id is the whole group.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    by_mask: HashMap<u64, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    normalizer: Vec<usize>,
}

fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0u64, |m, &x| m | 1u64 << x)
}

fn elements_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

impl SubgroupLattice {
    pub fn new(g: &Group) -> Result<Self> {
        let n = g.order();
        if n > LATTICE_LIMIT {
            return Err(Error::Budget(format!(
                "subgroup lattice needs |G| <= {LATTICE_LIMIT}, got {n}"
            )));
        }
        // layered generation: cyclic subgroups, then joins with cyclic subgroups until stable
        let mut cyclic: Vec<u64> = Vec::new();
        for a in g.elements() {
            let m = mask_of(&g.closure(&[a]));
            if !cyclic.contains(&m) {
                cyclic.push(m);
            }
        }
        let mut all: Vec<u64> = cyclic.clone();
        let mut known: std::collections::HashSet<u64> = all.iter().copied().collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &a in &frontier {
                for &c in &cyclic {
                    if c & !a == 0 {
                        continue;
                    }
                    let join = mask_of(&g.closure(&elements_of(a | c)));
                    if known.insert(join) {
                        next.push(join);
                        all.push(join);
                    }
                }
            }
            frontier = next;
        }
        all.sort_by_key(|&m| (m.count_ones(), elements_of(m)));

        let subgroups: Vec<Subgroup> = all
            .iter()
            .enumerate()
            .map(|(id, &mask)| {
                let elements = elements_of(mask);
                let gens = small_generating_set(g, &elements);
                Subgroup {
                    id,
                    elements,
                    mask,
                    gens,
                }
            })
            .collect();
        let by_mask: HashMap<u64, usize> = all.iter().enumerate().map(|(i, &m)| (m, i)).collect();

        let conj_mask =
            |x: usize, s: &Subgroup| -> u64 { s.elements.iter().fold(0u64, |m, &h| m | 1u64 << g.conj(x, h)) };
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for s in &subgroups {
            if class_of[s.id] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            for x in g.elements() {
                let id = by_mask[&conj_mask(x, s)];
                if class_of[id] == usize::MAX {
                    class_of[id] = c;
                    members.push(id);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        let normalizer = subgroups
            .iter()
            .map(|s| {
                let elems: Vec<usize> = g.elements().filter(|&x| conj_mask(x, s) == s.mask).collect();
                by_mask[&mask_of(&elems)]
            })
            .collect();
        Ok(Self {
            subgroups,
            by_mask,
            class_of,
            classes,
            normalizer,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Id of the subgroup with exactly these elements, if it is one.
    pub fn find(&self, elements: &[usize]) -> Option<usize> {
        if elements.iter().any(|&x| x >= 64) {
            return None;
        }
        self.by_mask.get(&mask_of(elements)).copied()
    }

    pub fn id_of_generated(&self, g: &Group, gens: &[usize]) -> usize {
        self.by_mask[&mask_of(&g.closure(gens))]
    }

    /// Whether `a <= b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.subgroups[a].mask & !self.subgroups[b].mask == 0
    }

    pub fn class_of(&self, id: usize) -> usize {
        self.class_of[id]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// One representative (the smallest id) per conjugacy class, in class order.
    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn normalizer(&self, id: usize) -> usize {
        self.normalizer[id]
    }

    pub fn conjugate(&self, g: &Group, x: usize, id: usize) -> usize {
        let s = &self.subgroups[id];
        let m = s.elements.iter().fold(0u64, |m, &h| m | 1u64 << g.conj(x, h));
        self.by_mask[&m]
    }

    pub fn intersection(&self, a: usize, b: usize) -> usize {
        self.by_mask[&(self.subgroups[a].mask & self.subgroups[b].mask)]
    }

    /// Proper subgroups of `id` not contained in another proper subgroup of `id`.
    pub fn maximal_subgroups(&self, id: usize) -> Vec<usize> {
        let proper: Vec<usize> = (0..self.len()).filter(|&s| s != id && self.le(s, id)).collect();
        proper
            .iter()
            .copied()
            .filter(|&s| !proper.iter().any(|&t| t != s && self.le(s, t)))
            .collect()
    }

    pub fn proper_subgroups(&self, id: usize) -> Vec<usize> {
        (0..self.len()).filter(|&s| s != id && self.le(s, id)).collect()
    }
}

fn small_generating_set(g: &Group, elements: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    // prefer high-order elements so cyclic subgroups get a single generator
    let mut order: Vec<usize> = elements.to_vec();
    order.sort_by_key(|&a| (std::cmp::Reverse(g.element_order(a)), a));
    for a in order {
        if span.binary_search(&a).is_ok() {
            continue;
        }
        gens.push(a);
        span = g.closure(&gens);
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

/// Left cosets `G/H` with the left multiplication action.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub subgroup: usize,
    /// Smallest element of each coset; coset 0 is `H` itself.
    pub reps: Vec<usize>,
    coset_of: Vec<usize>,
    // action[g * len + c] = index of g * (coset c)
    action: Vec<u16>,
}

impl CosetSpace {
    pub fn new(g: &Group, lat: &SubgroupLattice, h: usize) -> Self {
        let sub = lat.get(h);
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &s in &sub.elements {
                coset_of[g.mul(x, s)] = c;
            }
        }
        let m = reps.len();
        let mut action = vec![0u16; n * m];
        for a in g.elements() {
            for (c, &r) in reps.iter().enumerate() {
                action[a * m + c] = coset_of[g.mul(a, r)] as u16;
            }
        }
        Self {
            subgroup: h,
            reps,
            coset_of,
            action,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the coset `g * (coset c)`.
    #[inline]
    pub fn act(&self, g: usize, c: usize) -> usize {
        self.action[g * self.reps.len() + c] as usize
    }

    /// Index of the coset containing the element `x`, i.e. of `xH`.
    #[inline]
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Stabilizer of a coset: `x H x^-1` for `x` its representative.
    pub fn stabilizer(&self, g: &Group, lat: &SubgroupLattice, c: usize) -> usize {
        lat.conjugate(g, self.reps[c], self.subgroup)
    }
}

/// Double cosets `H x K` as `(smallest element, size)`, ordered by representative.
pub fn double_cosets(g: &Group, h: &[usize], k: &[usize]) -> Result<Vec<(usize, usize)>> {
    for (name, s) in [("H", h), ("K", k)] {
        if !is_subgroup(g, s) {
            return Err(Error::NotSubgroup(format!("{name} = {s:?}")));
        }
    }
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        let mut size = 0;
        for &a in h {
            for &b in k {
                let y = g.mul(g.mul(a, x), b);
                if !seen[y] {
                    seen[y] = true;
                    size += 1;
                }
            }
        }
        out.push((x, size));
    }
    Ok(out)
}

pub fn is_subgroup(g: &Group, s: &[usize]) -> bool {
    if s.iter().any(|&x| x >= g.order()) || !s.contains(&0) {
        return false;
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() {
        return false;
    }
    sorted.iter().all(|&a| {
        sorted
            .iter()
            .all(|&b| sorted.binary_search(&g.mul(a, g.inv(b))).is_ok())
    })
}
