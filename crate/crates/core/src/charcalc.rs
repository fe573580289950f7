//! Partitions, Kostka numbers, flag counts and unipotent degrees of
//! `GL(n, q)`, and decompositions of the parabolic characters `1_lambda`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A partition, parts stored weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validated constructor; parts must already be decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadPartition(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts; the flag reports whether they were out of order.
    /// Zero parts are rejected.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<(Self, bool)> {
        if parts.contains(&0) {
            return Err(Error::BadPartition(format!("{parts:?}")));
        }
        let sorted = parts.windows(2).all(|w| w[0] >= w[1]);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok((Partition(parts), !sorted))
    }

    /// Drops zero parts and sorts; for compositions such as `(n - 3, 3)`
    /// at `n = 3`.
    pub fn from_composition(parts: &[u32]) -> Self {
        let mut p: Vec<u32> = parts.iter().copied().filter(|&x| x > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Partition(p)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Prefix sums `d_i = lambda_1 + ... + lambda_i`, without the final `n`.
    pub fn flag_signature(&self) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::new();
        for &p in &self.0[..self.0.len().saturating_sub(1)] {
            acc += p as usize;
            out.push(acc);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if j - i > 1 {
                s.push(format!("{}^{}", self.0[i], j - i));
            } else {
                s.push(self.0[i].to_string());
            }
            i = j;
        }
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1,1`, `(3,1,1)` and exponent shorthand `(3,1^2)`. Parts
    /// out of order are sorted.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Error::BadPartition(s.to_string());
            match tok.split_once('^') {
                Some((a, k)) => {
                    let a: u32 = a.trim().parse().map_err(|_| bad())?;
                    let k: usize = k.trim().parse().map_err(|_| bad())?;
                    parts.extend(std::iter::repeat_n(a, k));
                }
                None => parts.push(tok.parse().map_err(|_| bad())?),
            }
        }
        if parts.is_empty() {
            return Err(Error::BadPartition(s.to_string()));
        }
        Ok(Partition::from_unsorted(parts)?.0)
    }
}

pub fn conjugate(lambda: &Partition) -> Partition {
    let first = lambda.0.first().copied().unwrap_or(0);
    Partition((1..=first).map(|i| lambda.0.iter().filter(|&&p| p >= i).count() as u32).collect())
}

/// Dominance `mu >= lambda`: every prefix sum of `mu` is at least that of `lambda`.
pub fn dominates(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.weight() != lambda.weight() {
        return Err(Error::WeightMismatch(mu.weight(), lambda.weight()));
    }
    let (mut a, mut b) = (0u32, 0u32);
    for i in 0..mu.len().max(lambda.len()) {
        a += mu.0.get(i).copied().unwrap_or(0);
        b += lambda.0.get(i).copied().unwrap_or(0);
        if a < b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All partitions of `n` in reverse lexicographic order, starting at `(n)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Shapes `nu` inside `mu` with `mu / nu` a horizontal strip of `r` boxes.
fn horizontal_strips(mu: &[u32], r: u32) -> Vec<Vec<u32>> {
    fn rec(mu: &[u32], i: usize, r: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == mu.len() {
            if r == 0 {
                let mut v = cur.clone();
                while v.last() == Some(&0) {
                    v.pop();
                }
                out.push(v);
            }
            return;
        }
        let lo = mu.get(i + 1).copied().unwrap_or(0);
        let max_take = (mu[i] - lo).min(r);
        for take in 0..=max_take {
            cur.push(mu[i] - take);
            rec(mu, i + 1, r - take, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(mu, 0, r, &mut Vec::new(), &mut out);
    out
}

/// `K_{mu lambda}`, the number of semistandard tableaux of shape `mu` and
/// content `lambda`, by peeling off the largest entry as a horizontal strip.
pub fn kostka(mu: &Partition, lambda: &Partition) -> Result<u64> {
    if mu.weight() != lambda.weight() {
        return Err(Error::WeightMismatch(mu.weight(), lambda.weight()));
    }
    let mut memo: HashMap<(Vec<u32>, usize), u64> = HashMap::new();
    Ok(kostka_rec(&mu.0, &lambda.0, lambda.len(), &mut memo))
}

fn kostka_rec(shape: &[u32], content: &[u32], k: usize, memo: &mut HashMap<(Vec<u32>, usize), u64>) -> u64 {
    if k == 0 {
        return shape.is_empty() as u64;
    }
    if shape.len() > k {
        return 0;
    }
    let key = (shape.to_vec(), k);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let total = horizontal_strips(shape, content[k - 1])
        .into_iter()
        .map(|nu| kostka_rec(&nu, content, k - 1, memo))
        .sum();
    memo.insert(key, total);
    total
}

fn q_factorial(m: u32, q: &BigUint) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=m {
        // [i]_q = 1 + q + ... + q^{i-1}
        let mut s = BigUint::zero();
        let mut pw = BigUint::one();
        for _ in 0..i {
            s += &pw;
            pw *= q;
        }
        acc *= s;
    }
    acc
}

/// The `q`-multinomial `[n; lambda_1, lambda_2, ...]_q`, which counts flags
/// of signature `(lambda_1, lambda_1 + lambda_2, ...)` in `F_q^n`. Parts
/// may come in any order.
pub fn flag_count(parts: &[u32], q: u64) -> BigUint {
    let q = BigUint::from(q);
    let n: u32 = parts.iter().sum();
    let mut den = BigUint::one();
    for &p in parts {
        den *= q_factorial(p, &q);
    }
    q_factorial(n, &q) / den
}

/// Degrees of the unipotent characters `psi^mu` of `GL(n, q)`, solved from
/// `sum_mu K_{mu lambda} D(mu) = flag_count(lambda, q)` down the dominance
/// order. Returned in reverse lexicographic order.
pub fn unipotent_degrees(n: u32, q: u64) -> Result<Vec<(Partition, BigUint)>> {
    if n == 0 || n > 10 {
        return Err(Error::BadN(n as usize));
    }
    let parts = partitions_of(n);
    let mut degrees: Vec<BigInt> = Vec::with_capacity(parts.len());
    for (j, lambda) in parts.iter().enumerate() {
        let mut d = BigInt::from(flag_count(&lambda.0, q));
        for (i, mu) in parts.iter().enumerate().take(j) {
            let k = kostka(mu, lambda)?;
            if k != 0 {
                d -= &degrees[i] * BigInt::from(k);
            }
        }
        degrees.push(d);
    }
    Ok(parts
        .into_iter()
        .zip(degrees)
        .map(|(p, d)| {
            assert!(d.is_positive(), "unipotent degree must be positive");
            (p, d.to_biguint().unwrap())
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaVariant {
    Theta1,
    Theta2,
    Theta2Ind,
}

impl ThetaVariant {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "theta1" => ThetaVariant::Theta1,
            "theta2" => ThetaVariant::Theta2,
            "theta2_ind" => ThetaVariant::Theta2Ind,
            _ => return None,
        })
    }
}

/// Multiplicities of `psi^mu`, listed in reverse lexicographic order of `mu`.
pub type DecompositionMap = Vec<(Partition, u64)>;

/// Decomposes `sum_lambda c_lambda 1_lambda` into unipotent characters.
pub fn decompose_virtual(terms: &[(Partition, i64)]) -> Result<DecompositionMap> {
    let n = terms.first().map(|t| t.0.weight()).ok_or_else(|| Error::BadPartition("empty".into()))?;
    let mut out = Vec::new();
    for mu in partitions_of(n) {
        let mut c: i64 = 0;
        for (lambda, coeff) in terms {
            c += coeff * kostka(&mu, lambda)? as i64;
        }
        if c < 0 {
            return Err(Error::BadPartition(format!("negative multiplicity at {mu}")));
        }
        if c > 0 {
            out.push((mu, c as u64));
        }
    }
    Ok(out)
}

/// `theta1 = 1_(n-1,1) - 1_(n)`, `theta2 = 1_(n-2,1,1) - 1_(n)` and
/// `theta2 o 1_(n-3) = 1_(n-3,1^3) - 1_(n-3,3)`.
pub fn decompose_theta(n: u32, variant: ThetaVariant) -> Result<DecompositionMap> {
    let min = match variant {
        ThetaVariant::Theta1 => 2,
        _ => 3,
    };
    if n < min {
        return Err(Error::BadN(n as usize));
    }
    let p = Partition::from_composition;
    let terms = match variant {
        ThetaVariant::Theta1 => vec![(p(&[n - 1, 1]), 1), (p(&[n]), -1)],
        ThetaVariant::Theta2 => vec![(p(&[n - 2, 1, 1]), 1), (p(&[n]), -1)],
        ThetaVariant::Theta2Ind => vec![(p(&[n - 3, 1, 1, 1]), 1), (p(&[n - 3, 3]), -1)],
    };
    decompose_virtual(&terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnCharsets {
    pub appendix8: Vec<Partition>,
    pub classic12: Vec<Partition>,
}

/// The 8- and 12-element character sets of `S_n`, as partitions.
pub fn sn_charsets(n: u32) -> Result<SnCharsets> {
    if n < 25 {
        return Err(Error::BadN(n as usize));
    }
    let p = Partition::from_composition;
    let ones = |k: u32| vec![1; k as usize];
    let appendix8 = vec![
        p(&[n - 1, 1]),
        p(&[n - 2, 2]),
        p(&[n - 2, 1, 1]),
        p(&[n - 3, 3]),
        p(&[n - 3, 2, 1]),
        p(&[n - 3, 1, 1, 1]),
        p(&[n - 4, 4]),
        p(&ones(n)),
    ];
    let classic12 = vec![
        p(&[n - 1, 1]),
        p(&[n - 2, 2]),
        p(&[n - 2, 1, 1]),
        p(&[n - 3, 3]),
        p(&[n - 3, 2, 1]),
        p(&[n - 3, 1, 1, 1]),
        p(&[n - 4, 4]),
        p(&[n - 4, 3, 1]),
        p(&[n - 4, 2, 2]),
        p(&[n - 4, 2, 1, 1]),
        p(&[n - 4, 1, 1, 1, 1]),
        p(&ones(n)),
    ];
    Ok(SnCharsets { appendix8, classic12 })
}
