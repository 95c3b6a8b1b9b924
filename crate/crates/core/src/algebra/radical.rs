//! Jacobson radical of an algebra of matrices over `F_p`.
//!
//! Uses the characteristic-p trace-form method: starting from `I = A`, repeatedly
//! cut `I` down to the kernel of `x -> (g_i(x b))_b` over a basis `b` of `A`,
//! where `g_i(y) = (Tr(Y^{p^i}) mod p^{i+1}) / p^i` for an integer lift `Y` of `y`.
//! On the previous stage `g_i` is linear, and after `floor(log_p n)` rounds the
//! remaining ideal is the radical.

use crate::error::{Error, Result};
use crate::linalg::{kernel, Mat, PrimeField, Subspace};

/// Radical of the algebra spanned by `basis` (square matrices of one size, closed
/// under multiplication), as a subspace of coefficient space `F_p^{basis.len()}`.
pub fn matrix_algebra_radical(field: PrimeField, basis: &[Mat]) -> Result<Subspace> {
    let m = basis.len();
    if m == 0 {
        return Ok(Subspace::zero(field, 0));
    }
    let n = basis[0].rows();
    let p = field.p() as u64;
    let mut rounds = 0;
    let mut pk = p;
    while pk <= n as u64 {
        rounds += 1;
        pk *= p;
    }
    let mut cur = Mat::identity(field, m);
    for i in 0..=rounds {
        if cur.rows() == 0 {
            break;
        }
        let xs: Vec<Mat> = (0..cur.rows()).map(|j| combine(field, basis, cur.row(j))).collect();
        let mut form = Mat::zeros(field, cur.rows(), m);
        for (j, x) in xs.iter().enumerate() {
            for (k, b) in basis.iter().enumerate() {
                let v = if i == 0 {
                    trace_of_product(x, b)
                } else {
                    ronyai(&x.mul(b), p, i)?
                };
                form.set(j, k, v);
            }
        }
        // combinations c with c * form = 0
        let left = kernel(&form.transpose());
        cur = Subspace::row_space(&left.mul(&cur)).basis().clone();
    }
    Ok(Subspace::row_space(&cur))
}

fn combine(field: PrimeField, basis: &[Mat], c: &[u32]) -> Mat {
    let n = basis[0].rows();
    let mut acc = Mat::zeros(field, n, n);
    for (b, &x) in basis.iter().zip(c) {
        if x != 0 {
            acc.add_scaled(b, x);
        }
    }
    acc
}

fn trace_of_product(a: &Mat, b: &Mat) -> u32 {
    let f = a.field();
    let n = a.rows();
    let mut acc = 0u64;
    for i in 0..n {
        for j in 0..n {
            acc += f.mul(a.get(i, j), b.get(j, i)) as u64;
        }
    }
    f.reduce_u64(acc)
}

/// `g_i(y)` for the integer lift of `y` with entries in `0..p`.
fn ronyai(y: &Mat, p: u64, i: usize) -> Result<u32> {
    let q = p.pow(i as u32 + 1);
    let n = y.rows();
    let mut cur: Vec<u64> = y.data().iter().map(|&x| x as u64).collect();
    for _ in 0..i {
        // raise to the p-th power by repeated multiplication mod q
        let base = cur.clone();
        let mut acc = base.clone();
        for _ in 1..p {
            acc = int_mul(&acc, &base, n, q);
        }
        cur = acc;
    }
    let tr = (0..n).map(|k| cur[k * n + k]).sum::<u64>() % q;
    let unit = q / p;
    if !tr.is_multiple_of(unit) {
        return Err(Error::Internal(format!(
            "trace {tr} of a {p}^{i} power not divisible by {unit}"
        )));
    }
    Ok((tr / unit) as u32)
}

fn int_mul(a: &[u64], b: &[u64], n: usize, q: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % q;
            }
        }
    }
    out
}
