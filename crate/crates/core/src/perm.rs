//! Permutations and the stabilizer-chain oracle.
//!
//! Permutations act on the left: `(a * b)(x) = a(b(x))`. Points are stored
//! 0-based; text I/O is 1-based one-line notation.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { images: (0..m as u32).collect() }
    }

    /// From 0-based images; fails unless the images form a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            let x = x as usize;
            if x >= m || seen[x] {
                return Err(Error::BadParams(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::BadParams("one-line images are 1-based".into()));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// From disjoint or overlapping 1-based cycles, composed right to left.
    pub fn from_cycles(m: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut acc = Self::identity(m);
        for c in cycles.iter().rev() {
            let mut images: Vec<u32> = (0..m as u32).collect();
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x == 0 || y == 0 || x as usize > m || y as usize > m {
                    return Err(Error::BadParams(format!("cycle point out of range: {c:?}")));
                }
                images[x as usize - 1] = y - 1;
            }
            acc = Self::from_images(images)?.mul(&acc);
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    /// +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i32 {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut transpositions = 0usize;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> u64 {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut acc = 1u64;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            acc = num_integer::lcm(acc, len);
        }
        acc
    }

    pub fn to_cycle_string(&self) -> String {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut out = String::new();
        for start in 0..m {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(x + 1).to_string());
                x = self.images[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    // transversal[b] maps the base point to b
    transversal: Vec<Option<Permutation>>,
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

enum Task {
    Add(usize, Permutation),
    Coset(usize, Permutation),
}

impl StabilizerChain {
    pub const VERIFY_WORDS: usize = 100;

    /// Deterministic Schreier–Sims (Knuth's incremental formulation) followed
    /// by a seeded verification pass over random words.
    pub fn build(gens: &[Permutation]) -> Result<StabilizerChain> {
        let degree = gens.first().map_or(0, |g| g.degree());
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let mut chain = StabilizerChain { degree, levels: Vec::new() };
        for g in gens {
            chain.run(Task::Add(0, g.clone()));
        }
        if !chain.verify(gens, Self::VERIFY_WORDS, 0x5eed) {
            return Err(Error::ChainVerification);
        }
        Ok(chain)
    }

    fn ensure_level(&mut self, k: usize, g: &Permutation) {
        if k == self.levels.len() {
            let base = g.first_moved().expect("non-identity element");
            let mut transversal = vec![None; self.degree];
            transversal[base as usize] = Some(Permutation::identity(self.degree));
            self.levels.push(Level { base, gens: Vec::new(), orbit: vec![base], transversal });
        }
    }

    fn run(&mut self, first: Task) {
        let mut stack = vec![first];
        while let Some(task) = stack.pop() {
            match task {
                Task::Add(k, g) => {
                    if self.sift(&g, k).0.is_identity() {
                        continue;
                    }
                    self.ensure_level(k, &g);
                    self.levels[k].gens.push(g.clone());
                    for &b in &self.levels[k].orbit {
                        let u = self.levels[k].transversal[b as usize].as_ref().unwrap();
                        stack.push(Task::Coset(k, g.mul(u)));
                    }
                }
                Task::Coset(k, t) => {
                    let level = &mut self.levels[k];
                    let j = t.apply(level.base) as usize;
                    match &level.transversal[j] {
                        None => {
                            for s in &level.gens {
                                stack.push(Task::Coset(k, s.mul(&t)));
                            }
                            level.orbit.push(j as u32);
                            level.transversal[j] = Some(t);
                        }
                        Some(u) => {
                            let h = u.inverse().mul(&t);
                            if !h.is_identity() {
                                stack.push(Task::Add(k + 1, h));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Sifts `g` from level `start`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it went all the way through).
    fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (k, level) in self.levels.iter().enumerate().skip(start) {
            let j = g.apply(level.base) as usize;
            match &level.transversal[j] {
                None => return (g, k),
                Some(u) => g = u.inverse().mul(&g),
            }
        }
        (g, self.levels.len())
    }

    fn verify(&self, gens: &[Permutation], words: usize, seed: u64) -> bool {
        if gens.is_empty() {
            return true;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..words {
            let len = rng.gen_range(1..=20);
            let mut w = Permutation::identity(self.degree);
            for _ in 0..len {
                w = gens[rng.gen_range(0..gens.len())].mul(&w);
            }
            if !self.contains(&w) {
                return false;
            }
        }
        self.levels.iter().flat_map(|l| l.gens.iter()).all(|g| self.contains(g))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree && !(self.levels.is_empty() && g.is_identity()) {
            return false;
        }
        self.sift(g, 0).0.is_identity()
    }

    /// Uniformly random element from the transversal product.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.mul(level.transversal[b as usize].as_ref().unwrap());
        }
        g
    }
}

pub fn chain_build(gens: &[Permutation]) -> Result<StabilizerChain> {
    StabilizerChain::build(gens)
}

pub fn group_order(chain: &StabilizerChain) -> BigUint {
    chain.order()
}

pub fn contains(chain: &StabilizerChain, g: &Permutation) -> bool {
    chain.contains(g)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}
