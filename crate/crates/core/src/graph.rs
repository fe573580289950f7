//! Schreier multigraphs of symmetric sets acting on domains.
//!
//! The adjacency operator is `A(x, y) = #{s in Sigma : s x = y}`. Connectivity
//! is decided combinatorially; the second eigenvalue is a diagnostic.

use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Domain, MAX_DOMAIN};
use crate::error::{Error, Result};
use crate::group::SymmetricSet;

pub const DEFAULT_TOL: f64 = 1e-8;
const KRYLOV_DIM: usize = 60;
const START_SEED: u64 = 0x1a2b;

/// A `|Sigma|`-regular multigraph; node `x` has neighbours `s_i x` in the
/// order of `Sigma`.
#[derive(Clone, Debug)]
pub struct SchreierGraph {
    n: usize,
    degree: usize,
    targets: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub lambda1: f64,
    pub lambda2_estimate: Option<f64>,
    pub tolerance: f64,
    pub iterations: usize,
    pub converged: bool,
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Builds the Schreier graph of `sigma` on `domain`.
pub fn build_graph(domain: &Domain, sigma: &SymmetricSet) -> Result<SchreierGraph> {
    if sigma.is_empty() {
        return Err(Error::EmptySigma);
    }
    if domain.size() as u128 > MAX_DOMAIN {
        return Err(Error::DomainTooLarge(domain.size() as u128));
    }
    for s in sigma.elements() {
        domain.check_element(s)?;
    }
    let n = domain.size();
    let d = sigma.len();
    let mut targets = vec![0u32; n * d];
    targets.par_chunks_mut(d).enumerate().for_each(|(x, row)| {
        for (slot, s) in row.iter_mut().zip(sigma.elements()) {
            *slot = domain.act_rank(s, x as u32);
        }
    });
    Ok(SchreierGraph { n, degree: d, targets })
}

impl SchreierGraph {
    /// Graph from explicit neighbour rows; `targets[x * degree + i]` is the
    /// `i`-th neighbour of `x`. The caller guarantees symmetry.
    pub fn from_targets(n: usize, degree: usize, targets: Vec<u32>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptySigma);
        }
        if targets.len() != n * degree || targets.iter().any(|&t| t as usize >= n) {
            return Err(Error::DegreeMismatch { expected: n * degree, found: targets.len() });
        }
        let g = SchreierGraph { n, degree, targets };
        if !g.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn neighbors(&self, x: u32) -> &[u32] {
        &self.targets[x as usize * self.degree..(x as usize + 1) * self.degree]
    }

    /// Multiplicity of `x -> y` equals that of `y -> x` for every pair.
    pub fn is_symmetric(&self) -> bool {
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(self.targets.len());
        let mut inc: Vec<(u32, u32)> = Vec::with_capacity(self.targets.len());
        for x in 0..self.n as u32 {
            for &y in self.neighbors(x) {
                out.push((x, y));
                inc.push((y, x));
            }
        }
        out.sort_unstable();
        inc.sort_unstable();
        out == inc
    }

    /// Exact connectivity; when disconnected the witness is the sorted
    /// component of node 0.
    pub fn is_connected(&self) -> (bool, Option<Vec<u32>>) {
        if self.n <= 1 {
            return (true, None);
        }
        let mut uf = UnionFind::new(self.n);
        let mut components = self.n;
        for x in 0..self.n as u32 {
            for &y in self.neighbors(x) {
                if uf.union(x, y) {
                    components -= 1;
                }
            }
        }
        if components == 1 {
            return (true, None);
        }
        let root = uf.find(0);
        let witness = (0..self.n as u32).filter(|&x| uf.find(x) == root).collect();
        (false, Some(witness))
    }

    fn matvec(&self, v: &[f64], out: &mut [f64]) {
        for (x, o) in out.iter_mut().enumerate() {
            *o = self.neighbors(x as u32).iter().map(|&y| v[y as usize]).sum();
        }
    }

    /// Dense adjacency matrix, for small graphs.
    pub fn dense_adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for x in 0..self.n {
            for &y in self.neighbors(x as u32) {
                a[(x, y as usize)] += 1.0;
            }
        }
        a
    }

    /// Largest adjacency eigenvalue on the complement of the constant
    /// vector, by restarted Lanczos with full reorthogonalization.
    /// Convergence means the Ritz residual dropped below `tol`.
    pub fn lambda2(&self, tol: f64, max_iter: usize) -> SpectralReport {
        let lambda1 = self.degree as f64;
        let mut report =
            SpectralReport { lambda1, lambda2_estimate: None, tolerance: tol, iterations: 0, converged: true };
        let n = self.n;
        if n < 2 {
            return report;
        }
        let deflate = |v: &mut [f64]| {
            let mean = v.iter().sum::<f64>() / n as f64;
            v.iter_mut().for_each(|x| *x -= mean);
        };
        let normalize = |v: &mut [f64]| -> f64 {
            let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nrm > 0.0 {
                v.iter_mut().for_each(|x| *x /= nrm);
            }
            nrm
        };
        let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
        let mut start: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        deflate(&mut start);
        normalize(&mut start);
        let m_max = KRYLOV_DIM.min(n - 1);
        let mut best = f64::NEG_INFINITY;
        let mut w = vec![0.0; n];
        loop {
            let mut basis: Vec<Vec<f64>> = vec![start.clone()];
            let mut alpha = Vec::with_capacity(m_max);
            let mut beta: Vec<f64> = Vec::with_capacity(m_max);
            let mut exhausted = false;
            for j in 0..m_max {
                self.matvec(&basis[j], &mut w);
                report.iterations += 1;
                deflate(&mut w);
                let a = dot(&w, &basis[j]);
                alpha.push(a);
                // two passes of Gram-Schmidt against the whole basis
                for _ in 0..2 {
                    for b in &basis {
                        let c = dot(&w, b);
                        axpy(-c, b, &mut w);
                    }
                }
                deflate(&mut w);
                let nb = normalize(&mut w);
                beta.push(nb);
                if nb < 1e-12 {
                    exhausted = true;
                    break;
                }
                if j + 1 < m_max {
                    basis.push(w.clone());
                }
                if report.iterations >= max_iter {
                    break;
                }
            }
            let k = alpha.len();
            let t = DMatrix::from_fn(k, k, |i, j| {
                if i == j {
                    alpha[i]
                } else if i + 1 == j {
                    beta[i]
                } else if j + 1 == i {
                    beta[j]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let (idx, theta) = eig
                .eigenvalues
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
            let s = eig.eigenvectors.column(idx);
            let residual = if exhausted { 0.0 } else { (beta[k - 1] * s[k - 1]).abs() };
            best = best.max(theta).min(lambda1);
            report.lambda2_estimate = Some(theta.min(lambda1));
            if residual < tol || exhausted || k == n - 1 {
                report.converged = true;
                return report;
            }
            if report.iterations >= max_iter {
                report.converged = false;
                report.lambda2_estimate = Some(best);
                return report;
            }
            let mut ritz = vec![0.0; n];
            for (i, b) in basis.iter().enumerate().take(k) {
                axpy(s[i], b, &mut ritz);
            }
            deflate(&mut ritz);
            normalize(&mut ritz);
            start = ritz;
        }
    }

    /// Text dump: header `N degree`, then `u v mult` for `u <= v`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.degree).unwrap();
        let mut row: Vec<u32> = Vec::with_capacity(self.degree);
        for u in 0..self.n as u32 {
            row.clear();
            row.extend(self.neighbors(u).iter().copied().filter(|&v| v >= u));
            row.sort_unstable();
            let mut i = 0;
            while i < row.len() {
                let v = row[i];
                let mut j = i;
                while j < row.len() && row[j] == v {
                    j += 1;
                }
                writeln!(out, "{} {} {}", u, v, j - i).unwrap();
                i = j;
            }
        }
        out
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(c: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += c * xi);
}

/// Default iteration cap `10 N + 1000`.
pub fn default_max_iter(n: usize) -> usize {
    10 * n + 1000
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{enumerate_projective_points, enumerate_tuples};
    use crate::field::{FqContext, MatFq};
    use crate::group::Element;
    use crate::perm::Permutation;

    fn perms(n: usize, cycles: &[&[&[u32]]]) -> Vec<Element> {
        cycles.iter().map(|c| Element::Perm(Permutation::from_cycles(n, c).unwrap())).collect()
    }

    #[test]
    fn identity_gives_loops() {
        let d = enumerate_tuples(3, 1).unwrap();
        let s = SymmetricSet::new(vec![Element::Perm(Permutation::identity(3))]).unwrap();
        let g = build_graph(&d, &s).unwrap();
        assert_eq!(g.neighbors(1), &[1]);
        let (c, w) = g.is_connected();
        assert!(!c);
        assert_eq!(w.unwrap(), vec![0]);
        let r = g.lambda2(DEFAULT_TOL, default_max_iter(3));
        assert!((r.lambda2_estimate.unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn transitive_three_points() {
        let d = enumerate_tuples(3, 1).unwrap();
        let s = SymmetricSet::new(perms(3, &[&[&[1, 2]], &[&[1, 2, 3]], &[&[1, 3, 2]]])).unwrap();
        let g = build_graph(&d, &s).unwrap();
        assert_eq!(g.degree(), 3);
        assert!(g.is_connected().0);
        assert!(g.is_symmetric());
    }

    #[test]
    fn complete_graph_k4() {
        // K4 as Schreier graph of the Klein group acting regularly
        let d = enumerate_tuples(4, 1).unwrap();
        let s = SymmetricSet::new(perms(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]], &[&[1, 4], &[2, 3]]]))
            .unwrap();
        let g = build_graph(&d, &s).unwrap();
        let r = g.lambda2(DEFAULT_TOL, default_max_iter(4));
        assert!(r.converged);
        assert!((r.lambda2_estimate.unwrap() + 1.0).abs() < 1e-8);
    }

    #[test]
    fn transvection_on_projective_line() {
        let f = FqContext::prime(5).unwrap();
        let d = enumerate_projective_points(&f, 2).unwrap();
        let t = MatFq::elementary(&f, 2, 0, 1, 1);
        let s = SymmetricSet::symmetrize(vec![Element::Mat(t)]).unwrap();
        let g = build_graph(&d, &s).unwrap();
        // oracle: orbits of <t> on lines, computed directly
        let mut seen = [false; 6];
        let mut orbits = 0;
        for x in 0..6u32 {
            if seen[x as usize] {
                continue;
            }
            orbits += 1;
            let mut y = x;
            loop {
                seen[y as usize] = true;
                y = g.neighbors(y)[0];
                if y == x {
                    break;
                }
            }
        }
        assert!(orbits >= 2);
        assert!(!g.is_connected().0);
    }

    #[test]
    fn cayley_s5_matches_dense() {
        let d = enumerate_tuples(5, 5).unwrap();
        let mut gens = Vec::new();
        for i in 1..=5u32 {
            for j in i + 1..=5 {
                gens.push(Element::Perm(Permutation::from_cycles(5, &[&[i, j]]).unwrap()));
            }
        }
        let s = SymmetricSet::new(gens).unwrap();
        let g = build_graph(&d, &s).unwrap();
        assert_eq!(g.node_count(), 120);
        let r = g.lambda2(DEFAULT_TOL, default_max_iter(120));
        let mut ev: Vec<f64> = SymmetricEigen::new(g.dense_adjacency()).eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((r.lambda2_estimate.unwrap() - ev[1]).abs() < 1e-6);
        assert!((ev[1] - 5.0).abs() < 1e-9);
    }

    #[test]
    fn dump_format() {
        let d = enumerate_tuples(3, 1).unwrap();
        let s = SymmetricSet::new(perms(3, &[&[&[1, 2]]])).unwrap();
        let g = build_graph(&d, &s).unwrap();
        assert_eq!(g.dump(), "3 1\n0 1 1\n2 2 1\n");
    }
}
