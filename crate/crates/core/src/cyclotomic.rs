//! Exact sums of roots of unity in `Z[x] / (x^m - 1)`.
//!
//! Characters are accumulated in the group ring of `Z/m`; reducing modulo
//! the cyclotomic polynomial `Phi_m` recovers the element of `Z[zeta_m]`
//! and decides whether it is rational.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// `sum_k c_k zeta_m^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclo {
    m: usize,
    coeffs: Vec<i64>,
}

impl Cyclo {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 1);
        Cyclo { m, coeffs: vec![0; m] }
    }

    pub fn from_int(m: usize, v: i64) -> Self {
        let mut c = Cyclo::zero(m);
        c.coeffs[0] = v;
        c
    }

    /// `c * zeta_m^k`.
    pub fn root(m: usize, k: i64, c: i64) -> Self {
        let mut z = Cyclo::zero(m);
        z.add_root(k, c);
        z
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add_root(&mut self, k: i64, c: i64) {
        let m = self.m as i64;
        self.coeffs[k.rem_euclid(m) as usize] += c;
    }

    pub fn add_assign(&mut self, other: &Cyclo) {
        assert_eq!(self.m, other.m, "cyclotomic orders differ");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn scale(&self, c: i64) -> Cyclo {
        Cyclo { m: self.m, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Complex conjugate: `zeta^k -> zeta^{-k}`.
    pub fn conj(&self) -> Cyclo {
        let mut out = Cyclo::zero(self.m);
        for (k, &c) in self.coeffs.iter().enumerate() {
            out.add_root(-(k as i64), c);
        }
        out
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        assert_eq!(self.m, other.m, "cyclotomic orders differ");
        let mut out = Cyclo::zero(self.m);
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                out.coeffs[(i + j) % self.m] += a * b;
            }
        }
        out
    }

    /// Remainder modulo `Phi_m`; coefficients of `1, zeta, ..., zeta^{phi(m)-1}`.
    pub fn reduce(&self) -> Vec<i64> {
        let phi = cyclotomic_poly(self.m);
        let deg = phi.len() - 1;
        let mut r = self.coeffs.clone();
        for top in (deg..r.len()).rev() {
            let c = r[top];
            if c != 0 {
                for (i, &p) in phi.iter().enumerate() {
                    r[top - deg + i] -= c * p;
                }
            }
        }
        r.truncate(deg);
        r
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduce();
        if r.iter().skip(1).all(|&c| c == 0) {
            Some(r.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.reduce().iter().all(|&c| c == 0)
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Coefficients of `Phi_m`, ascending.
pub fn cyclotomic_poly(m: usize) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic_poly(d));
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), [-1, 1]);
        assert_eq!(cyclotomic_poly(2), [1, 1]);
        assert_eq!(cyclotomic_poly(4), [1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), [1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), [1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_sums() {
        // 1 + zeta + ... + zeta^{m-1} = 0
        for m in 2..40 {
            let mut s = Cyclo::zero(m);
            for k in 0..m as i64 {
                s.add_root(k, 1);
            }
            assert_eq!(s.as_integer(), Some(0), "m = {m}");
        }
        // zeta_3 + zeta_3^2 = -1
        let mut s = Cyclo::root(3, 1, 1);
        s.add_root(2, 1);
        assert_eq!(s.as_integer(), Some(-1));
        assert_eq!(Cyclo::root(5, 1, 1).as_integer(), None);
    }

    #[test]
    fn conj_and_mul() {
        let z = Cyclo::root(7, 2, 1);
        assert_eq!(z.mul(&z.conj()).as_integer(), Some(1));
        let a = Cyclo::root(8, 1, 1);
        // zeta_8^2 = i, i^2 = -1
        assert_eq!(a.mul(&a).mul(&a).mul(&a).as_integer(), Some(-1));
    }
}
