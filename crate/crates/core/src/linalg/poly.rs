//! Dense univariate polynomials over `F_p`, coefficients stored low degree first.

use super::echelon::Subspace;
use super::field::PrimeField;
use super::mat::Mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u32>) -> Self {
        for c in &mut coeffs {
            *c = field.reduce(*c);
        }
        let mut p = Self { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self { field, coeffs: vec![1] }
    }

    /// The monic linear polynomial `x - a`.
    pub fn linear(field: PrimeField, a: u32) -> Self {
        Self::new(field, vec![field.neg(a), 1])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        Self::new(
            self.field,
            self.coeffs.iter().map(|&c| self.field.mul(c, inv)).collect(),
        )
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul_add(c, acc, x))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = self.field;
        let neg = Poly::new(f, other.coeffs.iter().map(|&c| f.neg(c)).collect());
        self.add(&neg)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.mul_add(c[i + j], a, b);
            }
        }
        Poly::new(f, c)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] = f.mul_add(r[k + j], neg, dc);
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.from_usize(i)))
            .collect();
        Poly::new(f, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Roots in `F_p`, ascending, without multiplicity.
    pub fn roots(&self) -> Vec<u32> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.field;
        // restrict to the split part first so the scan usually touches a tiny polynomial
        let xp = Poly::x(f).pow_mod(f.p() as u64, self);
        let split = self.gcd(&xp.sub(&Poly::x(f)));
        if split.degree() == Some(0) {
            return Vec::new();
        }
        (0..f.p()).filter(|&a| split.eval(a) == 0).collect()
    }

    /// Product of the distinct monic irreducible factors of degree `d` of a squarefree `self`,
    /// found by distinct-degree factorization.
    pub fn distinct_degree_parts(&self) -> Vec<(usize, Poly)> {
        let f = self.field;
        let mut out = Vec::new();
        let mut rest = self.monic();
        let mut xq = Poly::x(f);
        let mut d = 0;
        while rest.degree().unwrap_or(0) > 0 {
            d += 1;
            if 2 * d > rest.degree().unwrap() {
                out.push((rest.degree().unwrap(), rest.clone()));
                break;
            }
            xq = xq.pow_mod(f.p() as u64, &rest);
            let g = rest.gcd(&xq.sub(&Poly::x(f)));
            if g.degree().unwrap_or(0) > 0 {
                rest = rest.divrem(&g).0;
                xq = xq.rem(&rest);
                out.push((d, g));
            }
        }
        out
    }

    /// Squarefree kernel (product of the distinct irreducible factors).
    pub fn radical(&self) -> Poly {
        let f = self.field;
        let a = self.monic();
        if a.degree().unwrap_or(0) == 0 {
            return Poly::one(f);
        }
        let d = a.derivative();
        if d.is_zero() {
            // a(x) = b(x^p) = b(x)^p since Frobenius fixes F_p
            let b: Vec<u32> = a.coeffs.iter().step_by(f.p() as usize).copied().collect();
            return Poly::new(f, b).radical();
        }
        let g = a.gcd(&d);
        // a / g carries each factor whose multiplicity is prime to p exactly once
        a.divrem(&g).0.lcm(&g.radical())
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        self.mul(other).divrem(&self.gcd(other)).0.monic()
    }

    /// Evaluates the polynomial at a square matrix by Horner's rule.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let f = self.field;
        let n = m.rows();
        let mut acc = Mat::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let x = f.add(acc.get(i, i), c);
                acc.set(i, i, x);
            }
        }
        acc
    }
}

/// Minimal polynomial of `v` under `m`: the monic `q` of least degree with `q(m) v = 0`.
/// Also returns the Krylov basis `v, mv, ..., m^{k-1} v` as rows.
pub fn local_minimal_poly(m: &Mat, v: &[u32]) -> (Poly, Mat) {
    let f = m.field();
    let n = m.cols();
    let mut krylov = Mat::zeros(f, 0, n);
    // reduced copy of the Krylov vectors with a record of how each was built
    let mut reduced: Vec<(Vec<u32>, usize, Vec<u32>)> = Vec::new(); // (vector, pivot, combo)
    let mut cur = v.to_vec();
    loop {
        let k = krylov.rows();
        let mut r = cur.clone();
        let mut combo = vec![0u32; k + 1];
        combo[k] = 1;
        for (vec, piv, c) in &reduced {
            let a = r[*piv];
            if a == 0 {
                continue;
            }
            let neg = f.neg(a);
            for (x, &y) in r.iter_mut().zip(vec) {
                *x = f.mul_add(*x, neg, y);
            }
            for (x, &y) in combo.iter_mut().zip(c) {
                *x = f.mul_add(*x, neg, y);
            }
        }
        match r.iter().position(|&x| x != 0) {
            None => {
                // combo expresses m^k v as a dependency: sum combo_i m^i v = 0
                return (Poly::new(f, combo).monic(), krylov);
            }
            Some(piv) => {
                let inv = f.inv(r[piv]);
                for x in &mut r {
                    *x = f.mul(*x, inv);
                }
                for x in &mut combo {
                    *x = f.mul(*x, inv);
                }
                for (vec, _, c) in &mut reduced {
                    let a = vec[piv];
                    if a == 0 {
                        continue;
                    }
                    let neg = f.neg(a);
                    for (x, &y) in vec.iter_mut().zip(&r) {
                        *x = f.mul_add(*x, neg, y);
                    }
                    c.resize(k + 1, 0);
                    for (x, &y) in c.iter_mut().zip(&combo) {
                        *x = f.mul_add(*x, neg, y);
                    }
                }
                reduced.push((r, piv, combo));
                krylov.push_row(&cur);
                cur = m.mul_vec(&cur);
            }
        }
    }
}

/// Minimal polynomial of a square matrix, as the lcm of local minimal
/// polynomials over a sequence of cyclic subspaces that exhausts the space.
pub fn minimal_poly(m: &Mat) -> Poly {
    let f = m.field();
    let n = m.rows();
    let mut acc = Poly::one(f);
    let mut span = Subspace::zero(f, n);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 1;
        if span.contains(&e) {
            continue;
        }
        let (q, kry) = local_minimal_poly(m, &e);
        acc = acc.lcm(&q);
        span = span.sum(&Subspace::row_space(&kry)).expect("same ambient");
        if span.dim() == n {
            break;
        }
    }
    acc
}
