use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a group was constructed. Also the CLI descriptor language:
/// `cyclic:4`, `dihedral:8`, `q8`, `prod(cyclic:2,cyclic:4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Descriptor {
    Cyclic(usize),
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    Quaternion8,
    Product(Box<Descriptor>, Box<Descriptor>),
    Table,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Cyclic(n) => write!(f, "cyclic:{n}"),
            Descriptor::Dihedral(n) => write!(f, "dihedral:{n}"),
            Descriptor::Quaternion8 => write!(f, "q8"),
            Descriptor::Product(a, b) => write!(f, "prod({a},{b})"),
            Descriptor::Table => write!(f, "table"),
        }
    }
}

impl std::str::FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t == "q8" || t == "quaternion8" {
            return Ok(Descriptor::Quaternion8);
        }
        if let Some(inner) = t.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0i32;
            let mut split = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| err("prod needs two comma-separated factors"))?;
            let a: Descriptor = inner[..i].parse()?;
            let b: Descriptor = inner[i + 1..].parse()?;
            return Ok(Descriptor::Product(Box::new(a), Box::new(b)));
        }
        let (kind, num) = t
            .split_once(':')
            .ok_or_else(|| err("expected cyclic:N, dihedral:N, q8 or prod(A,B)"))?;
        let n: usize = num.trim().parse().map_err(|_| err("order is not a number"))?;
        match kind.trim() {
            "cyclic" | "c" => Ok(Descriptor::Cyclic(n)),
            "dihedral" | "d" => Ok(Descriptor::Dihedral(n)),
            _ => Err(err("unknown group family")),
        }
    }
}

/// A finite group given by its multiplication table.
///
/// Elements are `0..n` with `0` the identity; `mul(a, b)` is the product `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    gens: Vec<usize>,
    descriptor: Descriptor,
}

/// Largest order for which the group axioms are checked exhaustively.
pub const AXIOM_CHECK_LIMIT: usize = 64;

/// Largest order accepted at all (elements are stored as `u16`).
pub const MAX_ORDER: usize = 4096;

impl Group {
    pub fn from_descriptor(d: &Descriptor) -> Result<Group> {
        match d {
            Descriptor::Cyclic(n) => Self::cyclic(*n),
            Descriptor::Dihedral(n) => Self::dihedral(*n),
            Descriptor::Quaternion8 => Ok(Self::quaternion8()),
            Descriptor::Product(a, b) => Ok(Self::product(&Self::from_descriptor(a)?, &Self::from_descriptor(b)?)),
            Descriptor::Table => Err(Error::InvalidGroup("a table descriptor needs an explicit table".into())),
        }
    }

    pub fn parse(s: &str) -> Result<Group> {
        Self::from_descriptor(&s.parse()?)
    }

    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidGroup(format!("cyclic group of order {n}")));
        }
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u16).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        Ok(Self::assemble(n, table, gens, Descriptor::Cyclic(n)))
    }

    /// Dihedral group of order `order = 2n`, `n >= 2`. Element `i + n*e` is `r^i s^e`.
    /// The generators are the two reflections `s` and `rs`, so `dihedral(4)` is the Klein four group.
    pub fn dihedral(order: usize) -> Result<Group> {
        if !order.is_multiple_of(2) || !(4..=MAX_ORDER).contains(&order) {
            return Err(Error::InvalidGroup(format!(
                "dihedral group of order {order} (needs an even order >= 4)"
            )));
        }
        let n = order / 2;
        let decode = |x: usize| (x % n, x / n);
        let mut table = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let (i, e) = decode(a);
                let (j, f) = decode(b);
                // r^i s^e r^j s^f = r^(i ± j) s^(e+f)
                let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                table[a * order + b] = (k + n * ((e + f) % 2)) as u16;
            }
        }
        let s = n;
        let rs = 1 + n;
        Ok(Self::assemble(order, table, vec![s, rs], Descriptor::Dihedral(order)))
    }

    /// Quaternion group: elements `±1, ±i, ±j, ±k` encoded as `sign*4 + unit`, generators `i`, `j`.
    pub fn quaternion8() -> Group {
        // unit products: table[u][v] = (sign, unit) for u, v in {1, i, j, k}
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let mut table = vec![0u16; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (sa, ua) = (a / 4, a % 4);
                let (sb, ub) = (b / 4, b % 4);
                let (s, u) = UNIT[ua][ub];
                table[a * 8 + b] = (((sa + sb + s) % 2) * 4 + u) as u16;
            }
        }
        Self::assemble(8, table, vec![1, 2], Descriptor::Quaternion8)
    }

    /// Direct product; the pair `(a, b)` is element `a + |A| * b`.
    pub fn product(a: &Group, b: &Group) -> Group {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
                table[x * n + y] = z as u16;
            }
        }
        let mut gens: Vec<usize> = a.gens.clone();
        gens.extend(b.gens.iter().map(|&g| g * na));
        Self::assemble(
            n,
            table,
            gens,
            Descriptor::Product(Box::new(a.descriptor.clone()), Box::new(b.descriptor.clone())),
        )
    }

    /// Builds a group from an explicit table (`table[a][b] = ab`). The identity must be
    /// element 0. Axioms are verified for orders up to [`AXIOM_CHECK_LIMIT`].
    pub fn from_table(table: &[Vec<usize>], gens: Option<Vec<usize>>) -> Result<Group> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidGroup(format!("table of order {n}")));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range")));
                }
                flat.push(x as u16);
            }
        }
        for a in 0..n {
            if flat[a] as usize != a || flat[a * n] as usize != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| flat[a * n + b] == 0) {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        if n <= AXIOM_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = flat[a * n + b] as usize;
                    for c in 0..n {
                        let bc = flat[b * n + c] as usize;
                        if flat[ab * n + c] != flat[a * n + bc] {
                            return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        }
        let gens = match gens {
            Some(g) => {
                if g.iter().any(|&x| x >= n) {
                    return Err(Error::InvalidGroup("generator out of range".into()));
                }
                g
            }
            None => greedy_generators(n, &flat),
        };
        let g = Self::assemble(n, flat, gens, Descriptor::Table);
        if g.closure(&g.gens).len() != n {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        Ok(g)
    }

    fn assemble(n: usize, table: Vec<u16>, gens: Vec<usize>, descriptor: Descriptor) -> Group {
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        Group {
            n,
            table,
            inv,
            gens,
            descriptor,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// The smallest prime dividing the order, or `None` for the trivial group.
    pub fn smallest_prime(&self) -> Option<u32> {
        (2..=self.n).find(|d| self.n.is_multiple_of(*d)).map(|d| d as u32)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g a g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Multiset of element orders, sorted.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Word in the generators (as generator indices) for every element, by breadth-first search
    /// on the left Cayley graph: element `x` is reached as `gens[w_k] ... gens[w_1]`.
    /// Returns `(parent, generator index)` per element; the identity has no parent.
    pub fn cayley_tree(&self) -> Vec<Option<(usize, usize)>> {
        let mut tree = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.gens.iter().enumerate() {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        tree
    }

    /// Elements in breadth-first order of [`Group::cayley_tree`], identity first.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = Vec::with_capacity(self.n);
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for &g in &self.gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// Restriction of the table to a subgroup, renumbered by position in the sorted element list.
    pub fn subgroup_as_group(&self, elements: &[usize]) -> Result<Group> {
        let pos = |x: usize| elements.binary_search(&x).ok();
        if elements.first() != Some(&0) {
            return Err(Error::NotSubgroup(format!("{elements:?}")));
        }
        let m = elements.len();
        let mut table = vec![vec![0usize; m]; m];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                table[i][j] = pos(self.mul(a, b)).ok_or_else(|| Error::NotSubgroup(format!("{elements:?}")))?;
            }
        }
        Group::from_table(&table, None)
    }
}

fn greedy_generators(n: usize, table: &[u16]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    for a in 1..n {
        if inside[a] {
            continue;
        }
        gens.push(a);
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = table[g * n + x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        inside = seen;
    }
    gens
}
