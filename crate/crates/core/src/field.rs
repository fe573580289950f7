//! Exact arithmetic in `F_q`, `q = p^e`, and small dense matrices over it.
//!
//! Field elements are plain `u32` values in `[0, q)`. The base-`p` digits of
//! an element (least significant first) are the coefficients of its
//! polynomial representative modulo the context's monic irreducible modulus.
//! Multiplication goes through discrete-log tables built once per context.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_Q: u64 = 1 << 16;
pub const MAX_DIM: usize = 16;

/// A finite field `F_q` with an explicit modulus polynomial.
#[derive(Clone)]
pub struct FqContext {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    // exp[i] = g^i for i in [0, 2(q-1)); log[x] = i with g^i = x (log[0] unused)
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FqContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FqContext {}

impl fmt::Debug for FqContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (p={}, modulus={:?})", self.q, self.p, self.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `Some((p, e))` when `q = p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

// Polynomials over F_p as ascending coefficient vectors.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_pow(m[dm], p - 2, p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for i in 0..=dm {
                let idx = dr - dm + i;
                r[idx] = ((r[idx] as u64 + (p - c) as u64 * m[i] as u64) % p as u64) as u32;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn mod_pow(mut b: u32, mut e: u32, p: u32) -> u32 {
    if p == 2 {
        return if e == 0 { 1 } else { b % 2 };
    }
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    b = acc as u32;
    b
}

fn digits(x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(e as usize);
    let mut x = x;
    for _ in 0..e {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut f = digits(k as u32, p, d as u32);
            f.push(1);
            let r = poly_rem(m, &f, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

impl FqContext {
    /// Builds `F_{p^e}`. Without an explicit modulus the smallest monic
    /// irreducible of degree `e` is chosen, ordering candidates by the
    /// integer whose base-`p` digits are the non-leading coefficients.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Arc<FqContext>> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 {
            return Err(Error::ReducibleModulus("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_Q).ok_or(Error::FieldTooLarge(
            (p as u64).saturating_pow(e),
        ))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || *m.last().unwrap() != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::ReducibleModulus(format!(
                        "expected {} base-{} coefficients with leading 1, got {:?}",
                        e + 1,
                        p,
                        m
                    )));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(format!("{m:?}")));
                }
                m.to_vec()
            }
            None => Self::smallest_irreducible(p, e),
        };
        let q = q as u32;
        let (primitive, exp, log) = Self::build_tables(p, e, q, &modulus);
        Ok(Arc::new(FqContext { p, e, q, modulus, primitive, exp, log }))
    }

    /// Prime field shortcut.
    pub fn prime(p: u32) -> Result<Arc<FqContext>> {
        Self::new(p, 1, None)
    }

    /// Field of order `q` with the default modulus.
    pub fn of_order(q: u64) -> Result<Arc<FqContext>> {
        let (p, e) = prime_power(q).ok_or(Error::NonPrime(q.min(u32::MAX as u64) as u32))?;
        Self::new(p, e, None)
    }

    pub fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
        let count = (p as u64).pow(e);
        for k in 0..count {
            let mut m = digits(k as u32, p, e);
            m.push(1);
            if is_irreducible(&m, p) {
                return m;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build_tables(p: u32, e: u32, q: u32, modulus: &[u32]) -> (u32, Vec<u32>, Vec<u32>) {
        let order = q - 1;
        for g in 1..q {
            let gd = digits(g, p, e);
            let mut exp = Vec::with_capacity(2 * order as usize);
            let mut log = vec![u32::MAX; q as usize];
            let mut cur = digits(1, p, e);
            let mut ok = true;
            for i in 0..order {
                let x = undigits(&cur, p);
                if log[x as usize] != u32::MAX {
                    ok = false;
                    break;
                }
                log[x as usize] = i;
                exp.push(x);
                cur = poly_mulmod(&cur, &gd, modulus, p);
            }
            if ok {
                let first = exp.clone();
                exp.extend(first);
                return (g, exp, log);
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The generator of `F_q^*` used by the log tables.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.e {
                let d = (a % self.p + b % self.p) % self.p;
                out += d * place;
                place *= self.p;
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.e {
                let d = (self.p - a % self.p) % self.p;
                out += d * place;
                place *= self.p;
                a /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (k % (self.q as u64 - 1)) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// Discrete log with respect to [`Self::primitive_element`].
    pub fn discrete_log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `g^k` for the table generator `g`.
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Option<u32> {
        let l = self.discrete_log(a)?;
        let n = self.q - 1;
        Some(n / num_integer::gcd(l, n))
    }

    pub fn is_element(&self, a: u32) -> bool {
        a < self.q
    }

    /// Embeds the prime-field integer `k mod p`.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }
}

/// A dense `n x n` matrix over `F_q`, row-major.
#[derive(Clone)]
pub struct MatFq {
    ctx: Arc<FqContext>,
    n: usize,
    data: Vec<u32>,
}

impl PartialEq for MatFq {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.data == other.data
            && (Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx)
    }
}
impl Eq for MatFq {}

impl Hash for MatFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for MatFq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MatFq {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.data).cmp(&(other.n, &other.data))
    }
}

impl fmt::Debug for MatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl MatFq {
    pub fn new(ctx: &Arc<FqContext>, n: usize, data: Vec<u32>) -> Result<MatFq> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionOutOfRange(n));
        }
        if data.len() != n * n || data.iter().any(|&x| !ctx.is_element(x)) {
            return Err(Error::ContextMismatch);
        }
        Ok(MatFq { ctx: ctx.clone(), n, data })
    }

    pub fn identity(ctx: &Arc<FqContext>, n: usize) -> MatFq {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        MatFq { ctx: ctx.clone(), n, data }
    }

    pub fn diag(ctx: &Arc<FqContext>, d: &[u32]) -> MatFq {
        let n = d.len();
        let mut m = Self::identity(ctx, n);
        for (i, &x) in d.iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    /// Elementary transvection `I + c E_{ij}` (0-based indices).
    pub fn elementary(ctx: &Arc<FqContext>, n: usize, i: usize, j: usize, c: u32) -> MatFq {
        let mut m = Self::identity(ctx, n);
        m.data[i * n + j] = ctx.add(m.data[i * n + j], c);
        m
    }

    /// Permutation matrix sending `e_j` to `e_{images[j]}`.
    pub fn permutation(ctx: &Arc<FqContext>, images: &[usize]) -> MatFq {
        let n = images.len();
        let mut data = vec![0; n * n];
        for (j, &i) in images.iter().enumerate() {
            data[i * n + j] = 1;
        }
        MatFq { ctx: ctx.clone(), n, data }
    }

    pub fn ctx(&self) -> &Arc<FqContext> {
        &self.ctx
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn entries(&self) -> &[u32] {
        &self.data
    }
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.n + c]
    }
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    fn check_compat(&self, other: &MatFq) -> Result<()> {
        if self.n != other.n || !(Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &MatFq) -> Result<MatFq> {
        self.check_compat(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &MatFq) -> MatFq {
        let n = self.n;
        let f = &*self.ctx;
        let mut data = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != 0 {
                        data[i * n + j] = f.add(data[i * n + j], f.mul(a, b));
                    }
                }
            }
        }
        MatFq { ctx: self.ctx.clone(), n, data }
    }

    /// `g v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let n = self.n;
        let f = &*self.ctx;
        (0..n)
            .map(|i| {
                (0..n).fold(0, |acc, k| f.add(acc, f.mul(self.data[i * n + k], v[k])))
            })
            .collect()
    }

    pub fn det(&self) -> u32 {
        let n = self.n;
        let f = &*self.ctx;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    pub fn mat_inv(&self) -> Result<MatFq> {
        let n = self.n;
        let f = &*self.ctx;
        let mut a = self.data.clone();
        let mut inv = Self::identity(&self.ctx, n).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0).ok_or(Error::SingularMatrix)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = f.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Ok(MatFq { ctx: self.ctx.clone(), n, data: inv })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    /// True when the matrix is a nonzero scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0);
        d != 0 && (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { d } else { 0 }))
    }

    pub fn scale(&self, c: u32) -> MatFq {
        let f = &*self.ctx;
        MatFq { ctx: self.ctx.clone(), n: self.n, data: self.data.iter().map(|&x| f.mul(x, c)).collect() }
    }

    pub fn trace(&self) -> u32 {
        (0..self.n).fold(0, |acc, i| self.ctx.add(acc, self.get(i, i)))
    }
}

/// A subspace of `F_q^n` in reduced row-echelon form, zero rows dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub n: usize,
    /// `dim * n` entries, row-major.
    pub rows: Vec<u32>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.rows.len() / self.n.max(1)
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn contains(&self, ctx: &FqContext, v: &[u32]) -> bool {
        let mut rows = self.rows.clone();
        rows.extend_from_slice(v);
        rref_in_place(ctx, &mut rows, self.n) == self.dim()
    }
}

/// Row reduces `rows` (flattened, width `n`) in place and truncates zero rows.
/// Returns the rank.
fn rref_in_place(f: &FqContext, rows: &mut Vec<u32>, n: usize) -> usize {
    let m = rows.len() / n;
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(piv) = (rank..m).find(|&r| rows[r * n + col] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..n {
                rows.swap(piv * n + j, rank * n + j);
            }
        }
        let pinv = f.inv(rows[rank * n + col]).unwrap();
        for j in 0..n {
            rows[rank * n + j] = f.mul(rows[rank * n + j], pinv);
        }
        for r in 0..m {
            if r == rank {
                continue;
            }
            let factor = rows[r * n + col];
            if factor == 0 {
                continue;
            }
            for j in 0..n {
                rows[r * n + j] = f.sub(rows[r * n + j], f.mul(factor, rows[rank * n + j]));
            }
        }
        rank += 1;
    }
    rows.truncate(rank * n);
    rank
}

/// Canonical basis (RREF, zero rows dropped) of the span of `basis`.
pub fn subspace_canonical(ctx: &FqContext, n: usize, basis: &[Vec<u32>]) -> Result<Subspace> {
    let mut rows = Vec::with_capacity(basis.len() * n);
    for v in basis {
        if v.len() != n || v.iter().any(|&x| !ctx.is_element(x)) {
            return Err(Error::ContextMismatch);
        }
        rows.extend_from_slice(v);
    }
    rref_in_place(ctx, &mut rows, n);
    Ok(Subspace { n, rows })
}

pub(crate) fn canonical_from_flat(ctx: &FqContext, n: usize, mut rows: Vec<u32>) -> Subspace {
    rref_in_place(ctx, &mut rows, n);
    Subspace { n, rows }
}

/// `|GL(n, q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u64) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    let qn = BigUint::from(q).pow(n as u32);
    (0..n).fold(BigUint::from(1u32), |acc, i| acc * (&qn - BigUint::from(q).pow(i as u32)))
}

pub fn sl_order(n: usize, q: u64) -> num_bigint::BigUint {
    gl_order(n, q) / num_bigint::BigUint::from(q - 1)
}

pub fn psl_order(n: usize, q: u64) -> num_bigint::BigUint {
    sl_order(n, q) / num_bigint::BigUint::from(num_integer::gcd(n as u64, q - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_default_modulus() {
        let f = FqContext::new(2, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 2);
    }

    #[test]
    fn f4_modulus_is_x2_x_1() {
        let f = FqContext::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * (x + 1) = x^2 + x = 1
        assert_eq!(f.mul(2, 3), 1);
    }

    #[test]
    fn f25_modulus_matches_enumeration() {
        // oracle: first monic quadratic x^2 + b x + c (ordered by c + 5b) with no root in F_5
        let mut expected = None;
        'outer: for k in 0..25u32 {
            let (c, b) = (k % 5, k / 5);
            for x in 0..5u32 {
                if (x * x + b * x + c) % 5 == 0 {
                    continue 'outer;
                }
            }
            expected = Some(vec![c, b, 1]);
            break;
        }
        let f = FqContext::new(5, 2, None).unwrap();
        assert_eq!(f.modulus(), expected.unwrap().as_slice());
        assert_eq!(f.modulus(), &[2, 0, 1]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FqContext::new(4, 1, None).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(FqContext::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus(_))));
        assert!(matches!(FqContext::new(3, 2, Some(&[1, 0])), Err(Error::ReducibleModulus(_))));
        assert!(matches!(FqContext::new(2, 17, None), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn det_of_diag_over_f5() {
        let f = FqContext::prime(5).unwrap();
        assert_eq!(MatFq::diag(&f, &[2, 3]).det(), 1);
        let i = MatFq::identity(&f, 3);
        assert_eq!(i.mat_mul(&i).unwrap(), i);
    }

    #[test]
    fn random_inverse_over_f7() {
        let f = FqContext::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 50 {
            let m = MatFq::new(&f, 3, (0..9).map(|_| rng.gen_range(0..7)).collect()).unwrap();
            if m.det() == 0 {
                assert_eq!(m.mat_inv().unwrap_err(), Error::SingularMatrix);
                continue;
            }
            let inv = m.mat_inv().unwrap();
            assert!(m.mat_mul(&inv).unwrap().is_identity());
            assert!(inv.mat_mul(&m).unwrap().is_identity());
            done += 1;
        }
    }

    #[test]
    fn context_mismatch() {
        let f5 = FqContext::prime(5).unwrap();
        let f7 = FqContext::prime(7).unwrap();
        let a = MatFq::identity(&f5, 2);
        let b = MatFq::identity(&f7, 2);
        assert_eq!(a.mat_mul(&b).unwrap_err(), Error::ContextMismatch);
        assert_eq!(a.mat_mul(&MatFq::identity(&f5, 3)).unwrap_err(), Error::ContextMismatch);
    }

    #[test]
    fn canonical_forms() {
        let f = FqContext::prime(5).unwrap();
        assert_eq!(subspace_canonical(&f, 3, &[vec![1, 0, 0]]).unwrap().rows, vec![1, 0, 0]);
        assert_eq!(subspace_canonical(&f, 3, &[vec![2, 0, 0]]).unwrap().rows, vec![1, 0, 0]);
        let a = subspace_canonical(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = subspace_canonical(&f, 3, &[vec![1, 0, 4], vec![0, 1, 1]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows, vec![1, 0, 4, 0, 1, 1]);
        let z = subspace_canonical(&f, 3, &[vec![0, 0, 0], vec![3, 3, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(z.dim(), 1);
    }

    #[test]
    fn group_orders() {
        assert_eq!(sl_order(2, 3), 24u32.into());
        assert_eq!(sl_order(3, 2), 168u32.into());
        assert_eq!(gl_order(4, 2), 20160u32.into());
        assert_eq!(sl_order(3, 5), 372000u32.into());
        assert_eq!(psl_order(2, 5), 60u32.into());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(65536), Some((2, 16)));
    }
}
