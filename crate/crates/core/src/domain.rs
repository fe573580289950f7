//! Finite sets the groups act on, with canonical ranks.
//!
//! Ranks are dense in `[0, size)` and are the node IDs used by Schreier
//! graphs. Tuples and subsets are ranked arithmetically in lexicographic
//! order; flags are enumerated, sorted by their canonical encoding, and
//! looked up through a hash index.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{canonical_from_flat, FqContext, MatFq, Subspace};
use crate::group::Element;
use crate::perm::Permutation;

pub const MAX_DOMAIN: u128 = 20_000_000;

/// Strictly increasing subspace dimensions `d_1 < ... < d_l <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagSignature(Vec<usize>);

impl FlagSignature {
    pub fn new(dims: Vec<usize>, n: usize) -> Result<Self> {
        let ok = !dims.is_empty()
            && dims[0] >= 1
            && dims.windows(2).all(|w| w[0] < w[1])
            && *dims.last().unwrap() <= n;
        if !ok {
            return Err(Error::SignatureInvalid(dims, n));
        }
        Ok(FlagSignature(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for FlagSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A chain `V_1 < V_2 < ...` of canonical subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagPoint {
    pub n: usize,
    pub chain: Vec<Subspace>,
}

impl FlagPoint {
    fn encode(&self) -> Vec<u32> {
        self.chain.iter().flat_map(|s| s.rows.iter().copied()).collect()
    }
}

/// A point of some domain. Tuple and subset entries are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Flag(FlagPoint),
    Tuple(Vec<u32>),
    Subset(Vec<u32>),
    Vector(Vec<u32>),
}

#[derive(Clone, Debug)]
pub enum DomainKind {
    Flags { ctx: Arc<FqContext>, n: usize, sig: FlagSignature },
    ProjectivePoints { ctx: Arc<FqContext>, n: usize },
    NonzeroVectors { ctx: Arc<FqContext>, n: usize },
    Tuples { n: usize, k: usize },
    Subsets { n: usize, k: usize },
}

#[derive(Clone, Debug)]
struct FlagTable {
    dims: Vec<usize>,
    width: usize,
    data: Vec<u32>,
    index: HashMap<Box<[u32]>, u32>,
}

/// An enumerated action domain.
#[derive(Clone, Debug)]
pub struct Domain {
    kind: DomainKind,
    size: usize,
    flags: Option<FlagTable>,
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Gaussian binomial `[n choose k]_q`, saturating.
fn gaussian_binom(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// Number of flags of signature `dims` in `F_q^n`.
pub fn flag_domain_size(n: usize, dims: &[usize], q: u64) -> u128 {
    let mut prev = 0;
    let mut acc: u128 = 1;
    for &d in dims {
        acc = acc.saturating_mul(gaussian_binom(n - prev, d - prev, q as u128));
        prev = d;
    }
    acc
}

impl Domain {
    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self) -> String {
        match &self.kind {
            DomainKind::Flags { sig, .. } => format!("flags{sig}"),
            DomainKind::ProjectivePoints { .. } => "points".into(),
            DomainKind::NonzeroVectors { .. } => "vectors".into(),
            DomainKind::Tuples { k, .. } => format!("tuples{k}"),
            DomainKind::Subsets { k, .. } => format!("subsets{k}"),
        }
    }

    /// Checks that `g` can act on this domain.
    pub fn check_element(&self, g: &Element) -> Result<()> {
        match (&self.kind, g) {
            (DomainKind::Tuples { n, .. } | DomainKind::Subsets { n, .. }, Element::Perm(p)) => {
                if p.degree() != *n {
                    return Err(Error::DegreeMismatch { expected: *n, found: p.degree() });
                }
                Ok(())
            }
            (
                DomainKind::Flags { ctx, n, .. }
                | DomainKind::ProjectivePoints { ctx, n }
                | DomainKind::NonzeroVectors { ctx, n },
                Element::Mat(m),
            ) => {
                if m.dim() != *n || **m.ctx() != **ctx {
                    return Err(Error::ContextMismatch);
                }
                if m.det() == 0 {
                    return Err(Error::SingularMatrix);
                }
                Ok(())
            }
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn point(&self, rank: u32) -> Point {
        match &self.kind {
            DomainKind::Tuples { n, k } => Point::Tuple(unrank_tuple(*n, *k, rank as u64)),
            DomainKind::Subsets { n, k } => Point::Subset(unrank_subset(*n, *k, rank as u64)),
            DomainKind::NonzeroVectors { ctx, n } => {
                Point::Vector(unrank_vector(ctx.q(), *n, rank as u64 + 1))
            }
            DomainKind::Flags { n, .. } | DomainKind::ProjectivePoints { n, .. } => {
                let t = self.flags.as_ref().unwrap();
                let enc = &t.data[rank as usize * t.width..(rank as usize + 1) * t.width];
                Point::Flag(decode_flag(*n, &t.dims, enc))
            }
        }
    }

    pub fn rank(&self, point: &Point) -> Option<u32> {
        match (&self.kind, point) {
            (DomainKind::Tuples { n, k }, Point::Tuple(t)) if t.len() == *k => {
                rank_tuple(*n, t).map(|r| r as u32)
            }
            (DomainKind::Subsets { n, k }, Point::Subset(s)) if s.len() == *k => {
                rank_subset(*n, s).map(|r| r as u32)
            }
            (DomainKind::NonzeroVectors { ctx, n }, Point::Vector(v)) if v.len() == *n => {
                let r = rank_vector(ctx.q(), v);
                (r > 0).then(|| (r - 1) as u32)
            }
            (DomainKind::Flags { .. } | DomainKind::ProjectivePoints { .. }, Point::Flag(f)) => {
                self.flags.as_ref().unwrap().index.get(f.encode().as_slice()).copied()
            }
            _ => None,
        }
    }

    /// Image rank of `rank` under `g`; `g` must have passed [`Self::check_element`].
    pub fn act_rank(&self, g: &Element, rank: u32) -> u32 {
        match (&self.kind, g) {
            (DomainKind::Tuples { n, k }, Element::Perm(p)) => {
                let mut t = unrank_tuple(*n, *k, rank as u64);
                for x in t.iter_mut() {
                    *x = p.apply(*x);
                }
                rank_tuple(*n, &t).unwrap() as u32
            }
            (DomainKind::Subsets { n, k }, Element::Perm(p)) => {
                let mut s = unrank_subset(*n, *k, rank as u64);
                for x in s.iter_mut() {
                    *x = p.apply(*x);
                }
                s.sort_unstable();
                rank_subset(*n, &s).unwrap() as u32
            }
            (DomainKind::NonzeroVectors { ctx, n }, Element::Mat(m)) => {
                let v = unrank_vector(ctx.q(), *n, rank as u64 + 1);
                (rank_vector(ctx.q(), &m.apply(&v)) - 1) as u32
            }
            (DomainKind::Flags { ctx, n, .. } | DomainKind::ProjectivePoints { ctx, n }, Element::Mat(m)) => {
                let t = self.flags.as_ref().unwrap();
                let enc = &t.data[rank as usize * t.width..(rank as usize + 1) * t.width];
                let mut out = Vec::with_capacity(t.width);
                let mut off = 0;
                for &d in &t.dims {
                    let mut rows = Vec::with_capacity(d * n);
                    for r in 0..d {
                        let v = &enc[off + r * n..off + (r + 1) * n];
                        rows.extend(m.apply(v));
                    }
                    off += d * n;
                    out.extend(canonical_from_flat(ctx, *n, rows).rows);
                }
                *t.index.get(out.as_slice()).expect("flag image is a flag")
            }
            _ => panic!("element kind does not match domain"),
        }
    }

    pub fn act(&self, g: &Element, point: &Point) -> Result<Point> {
        self.check_element(g)?;
        match (g, point) {
            (Element::Mat(m), Point::Flag(f)) => act_on_flag(m, f).map(Point::Flag),
            (Element::Perm(p), _) => act_perm(p, point),
            (Element::Mat(m), Point::Vector(v)) => Ok(Point::Vector(m.apply(v))),
            _ => Err(Error::KindMismatch),
        }
    }

    /// The permutation of `[0, size)` induced by `g`.
    pub fn induced_permutation(&self, g: &Element) -> Result<Permutation> {
        self.check_element(g)?;
        let images = (0..self.size as u32).map(|x| self.act_rank(g, x)).collect();
        Permutation::from_images(images)
    }
}

/// `g V_i` for every member of the chain, re-canonicalized.
pub fn act_on_flag(g: &MatFq, x: &FlagPoint) -> Result<FlagPoint> {
    if g.dim() != x.n {
        return Err(Error::ContextMismatch);
    }
    let n = x.n;
    let chain = x
        .chain
        .iter()
        .map(|s| {
            let mut rows = Vec::with_capacity(s.rows.len());
            for r in 0..s.dim() {
                rows.extend(g.apply(s.row(r)));
            }
            canonical_from_flat(g.ctx(), n, rows)
        })
        .collect();
    Ok(FlagPoint { n, chain })
}

/// Coordinatewise image for tuples, image-then-sort for subsets.
pub fn act_perm(sigma: &Permutation, point: &Point) -> Result<Point> {
    let check = |v: &[u32]| -> Result<()> {
        if v.iter().any(|&x| x as usize >= sigma.degree()) {
            return Err(Error::DegreeMismatch { expected: sigma.degree(), found: v.len() });
        }
        Ok(())
    };
    match point {
        Point::Tuple(t) => {
            check(t)?;
            Ok(Point::Tuple(t.iter().map(|&x| sigma.apply(x)).collect()))
        }
        Point::Subset(s) => {
            check(s)?;
            let mut img: Vec<u32> = s.iter().map(|&x| sigma.apply(x)).collect();
            img.sort_unstable();
            Ok(Point::Subset(img))
        }
        _ => Err(Error::KindMismatch),
    }
}

fn decode_flag(n: usize, dims: &[usize], enc: &[u32]) -> FlagPoint {
    let mut chain = Vec::with_capacity(dims.len());
    let mut off = 0;
    for &d in dims {
        chain.push(Subspace { n, rows: enc[off..off + d * n].to_vec() });
        off += d * n;
    }
    FlagPoint { n, chain }
}

fn unrank_vector(q: u32, n: usize, mut r: u64) -> Vec<u32> {
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push((r % q as u64) as u32);
        r /= q as u64;
    }
    v
}

fn rank_vector(q: u32, v: &[u32]) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

fn rank_tuple(n: usize, t: &[u32]) -> Option<u64> {
    let mut used = vec![false; n];
    let mut r = 0u64;
    for (i, &x) in t.iter().enumerate() {
        let x = x as usize;
        if x >= n || used[x] {
            return None;
        }
        let smaller = (0..x).filter(|&y| !used[y]).count() as u64;
        r = r * (n - i) as u64 + smaller;
        used[x] = true;
    }
    Some(r)
}

fn unrank_tuple(n: usize, k: usize, mut r: u64) -> Vec<u32> {
    let mut digits = vec![0u64; k];
    for i in (0..k).rev() {
        let radix = (n - i) as u64;
        digits[i] = r % radix;
        r /= radix;
    }
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(k);
    for &d in &digits {
        let mut c = d;
        let mut x = 0;
        loop {
            if !used[x] {
                if c == 0 {
                    break;
                }
                c -= 1;
            }
            x += 1;
        }
        used[x] = true;
        out.push(x as u32);
    }
    out
}

fn rank_subset(n: usize, s: &[u32]) -> Option<u64> {
    let k = s.len();
    let mut r: u128 = 0;
    let mut prev: i64 = -1;
    for (i, &a) in s.iter().enumerate() {
        if a as usize >= n || (a as i64) <= prev {
            return None;
        }
        for v in (prev + 1) as u64..a as u64 {
            r += binom(n as u64 - 1 - v, (k - 1 - i) as u64);
        }
        prev = a as i64;
    }
    Some(r as u64)
}

fn unrank_subset(n: usize, k: usize, r: u64) -> Vec<u32> {
    let mut r = r as u128;
    let mut out = Vec::with_capacity(k);
    let mut v: u64 = 0;
    for i in 0..k {
        loop {
            let c = binom(n as u64 - 1 - v, (k - 1 - i) as u64);
            if r < c {
                break;
            }
            r -= c;
            v += 1;
        }
        out.push(v as u32);
        v += 1;
    }
    out
}

fn check_size(size: u128) -> Result<usize> {
    if size > MAX_DOMAIN {
        return Err(Error::DomainTooLarge(size));
    }
    Ok(size as usize)
}

/// Ordered `k`-tuples of distinct points of `{0..n-1}`.
pub fn enumerate_tuples(n: usize, k: usize) -> Result<Domain> {
    if k == 0 || k > n {
        return Err(Error::BadArity { n, k });
    }
    let size = (0..k).fold(1u128, |acc, i| acc * (n - i) as u128);
    let size = check_size(size)?;
    Ok(Domain { kind: DomainKind::Tuples { n, k }, size, flags: None })
}

/// `k`-subsets of `{0..n-1}`.
pub fn enumerate_subsets(n: usize, k: usize) -> Result<Domain> {
    if k == 0 || k > n {
        return Err(Error::BadArity { n, k });
    }
    let size = check_size(binom(n as u64, k as u64))?;
    Ok(Domain { kind: DomainKind::Subsets { n, k }, size, flags: None })
}

/// Nonzero vectors of `F_q^n`; the faithful domain for `GL` and `SL`.
pub fn enumerate_nonzero_vectors(ctx: &Arc<FqContext>, n: usize) -> Result<Domain> {
    let size = check_size((ctx.q() as u128).saturating_pow(n as u32) - 1)?;
    Ok(Domain { kind: DomainKind::NonzeroVectors { ctx: ctx.clone(), n }, size, flags: None })
}

/// Points of `P^{n-1}(F_q)`.
pub fn enumerate_projective_points(ctx: &Arc<FqContext>, n: usize) -> Result<Domain> {
    let mut d = enumerate_flags(ctx, n, &FlagSignature::new(vec![1], n)?)?;
    d.kind = DomainKind::ProjectivePoints { ctx: ctx.clone(), n };
    Ok(d)
}

/// All flags of the given signature, sorted by canonical encoding.
pub fn enumerate_flags(ctx: &Arc<FqContext>, n: usize, sig: &FlagSignature) -> Result<Domain> {
    if *sig.dims().last().unwrap() > n {
        return Err(Error::SignatureInvalid(sig.dims().to_vec(), n));
    }
    let expected = check_size(flag_domain_size(n, sig.dims(), ctx.q() as u64))?;
    let dims = sig.dims().to_vec();
    let width: usize = dims.iter().map(|d| d * n).sum();

    // partial flags as encodings, extended one member at a time
    let mut partial: Vec<(Vec<u32>, Subspace)> = vec![(Vec::new(), Subspace { n, rows: Vec::new() })];
    let mut prev = 0;
    for &d in &dims {
        let mut next = Vec::new();
        for (enc, base) in &partial {
            let mut layer: BTreeSet<Subspace> = BTreeSet::new();
            layer.insert(base.clone());
            for _ in prev..d {
                let mut grown = BTreeSet::new();
                for s in &layer {
                    for ext in one_dim_extensions(ctx, s) {
                        grown.insert(ext);
                    }
                }
                layer = grown;
            }
            for s in layer {
                let mut e = enc.clone();
                e.extend_from_slice(&s.rows);
                next.push((e, s));
            }
        }
        partial = next;
        prev = d;
    }
    let mut encs: Vec<Vec<u32>> = partial.into_iter().map(|(e, _)| e).collect();
    encs.sort_unstable();
    debug_assert_eq!(encs.len(), expected);
    let mut data = Vec::with_capacity(encs.len() * width);
    let mut index = HashMap::with_capacity(encs.len());
    for (i, e) in encs.iter().enumerate() {
        data.extend_from_slice(e);
        index.insert(e.clone().into_boxed_slice(), i as u32);
    }
    let size = encs.len();
    Ok(Domain {
        kind: DomainKind::Flags { ctx: ctx.clone(), n, sig: sig.clone() },
        size,
        flags: Some(FlagTable { dims, width, data, index }),
    })
}

/// Superspaces `S + <v>` of dimension `dim S + 1`, each exactly once: `v`
/// ranges over vectors vanishing on the pivot columns of `S` whose first
/// nonzero entry is 1.
fn one_dim_extensions(ctx: &FqContext, s: &Subspace) -> Vec<Subspace> {
    let n = s.n;
    let q = ctx.q();
    let pivots: Vec<usize> =
        (0..s.dim()).map(|r| s.row(r).iter().position(|&x| x != 0).unwrap()).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    let count = (q as u64).pow(free.len() as u32);
    for r in 1..count {
        let vals = unrank_vector(q, free.len(), r);
        // leading entry (lowest free column with nonzero value) must be 1
        let lead = vals.iter().position(|&x| x != 0).unwrap();
        if vals[lead] != 1 {
            continue;
        }
        let mut v = vec![0u32; n];
        for (i, &c) in free.iter().enumerate() {
            v[c] = vals[i];
        }
        let mut rows = s.rows.clone();
        rows.extend(v);
        out.push(canonical_from_flat(ctx, n, rows));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::subspace_canonical;

    #[test]
    fn flag_counts() {
        let f2 = FqContext::prime(2).unwrap();
        let d = enumerate_flags(&f2, 3, &FlagSignature::new(vec![1, 2], 3).unwrap()).unwrap();
        assert_eq!(d.size(), 21);
        let full = enumerate_flags(&f2, 3, &FlagSignature::new(vec![3], 3).unwrap()).unwrap();
        assert_eq!(full.size(), 1);
        assert_eq!(enumerate_projective_points(&f2, 4).unwrap().size(), 15);
    }

    #[test]
    fn f3_complete_flags_nested_oracle() {
        // oracle: count chains V1 < V2 < V3 directly from all 1-, 2-, 3-dim spans
        let f = FqContext::prime(3).unwrap();
        let n = 4;
        let vecs: Vec<Vec<u32>> = (1..81u64).map(|r| unrank_vector(3, n, r)).collect();
        let mut lines = BTreeSet::new();
        for v in &vecs {
            lines.insert(subspace_canonical(&f, n, std::slice::from_ref(v)).unwrap());
        }
        let mut count = 0usize;
        for l in &lines {
            let mut planes = BTreeSet::new();
            for v in &vecs {
                let p = subspace_canonical(&f, n, &[l.row(0).to_vec(), v.clone()]).unwrap();
                if p.dim() == 2 {
                    planes.insert(p);
                }
            }
            for p in &planes {
                let mut solids = BTreeSet::new();
                for v in &vecs {
                    let s = subspace_canonical(&f, n, &[p.row(0).to_vec(), p.row(1).to_vec(), v.clone()])
                        .unwrap();
                    if s.dim() == 3 {
                        solids.insert(s);
                    }
                }
                count += solids.len();
            }
        }
        let d = enumerate_flags(&f, n, &FlagSignature::new(vec![1, 2, 3], n).unwrap()).unwrap();
        assert_eq!(d.size(), count);
        assert_eq!(count, 2080);
    }

    #[test]
    fn signature_validation() {
        assert!(FlagSignature::new(vec![2, 1], 3).is_err());
        assert!(FlagSignature::new(vec![], 3).is_err());
        assert!(FlagSignature::new(vec![1, 4], 3).is_err());
        assert!(FlagSignature::new(vec![1, 3], 3).is_ok());
    }

    #[test]
    fn tuple_and_subset_sizes() {
        assert_eq!(enumerate_tuples(5, 3).unwrap().size(), 60);
        assert_eq!(enumerate_subsets(6, 4).unwrap().size(), 15);
        assert_eq!(enumerate_tuples(3, 4).unwrap_err(), Error::BadArity { n: 3, k: 4 });
        assert_eq!(enumerate_subsets(3, 0).unwrap_err(), Error::BadArity { n: 3, k: 0 });
    }

    #[test]
    fn rank_roundtrip() {
        let t = enumerate_tuples(6, 3).unwrap();
        for r in 0..t.size() as u32 {
            assert_eq!(t.rank(&t.point(r)), Some(r));
        }
        let s = enumerate_subsets(7, 3).unwrap();
        let mut prev: Option<Vec<u32>> = None;
        for r in 0..s.size() as u32 {
            let Point::Subset(v) = s.point(r) else { panic!() };
            if let Some(p) = prev {
                assert!(p < v, "lexicographic order");
            }
            assert_eq!(s.rank(&Point::Subset(v.clone())), Some(r));
            prev = Some(v);
        }
        let f = FqContext::prime(3).unwrap();
        let fl = enumerate_flags(&f, 3, &FlagSignature::new(vec![1, 2], 3).unwrap()).unwrap();
        for r in 0..fl.size() as u32 {
            assert_eq!(fl.rank(&fl.point(r)), Some(r));
        }
    }

    #[test]
    fn subset_action() {
        let sigma = Permutation::from_cycles(5, &[&[1, 2, 3]]).unwrap();
        let img = act_perm(&sigma, &Point::Subset(vec![0, 1, 3])).unwrap();
        assert_eq!(img, Point::Subset(vec![1, 2, 3]));
    }

    #[test]
    fn flag_actions() {
        let f = FqContext::prime(5).unwrap();
        let d = enumerate_flags(&f, 2, &FlagSignature::new(vec![1, 2], 2).unwrap()).unwrap();
        let e1 = Subspace { n: 2, rows: vec![1, 0] };
        let full = Subspace { n: 2, rows: vec![1, 0, 0, 1] };
        let flag = FlagPoint { n: 2, chain: vec![e1, full.clone()] };
        let id = MatFq::identity(&f, 2);
        assert_eq!(act_on_flag(&id, &flag).unwrap(), flag);
        let dg = MatFq::diag(&f, &[1, 2]);
        assert_eq!(act_on_flag(&dg, &flag).unwrap(), flag);
        let swap = MatFq::permutation(&f, &[1, 0]);
        let img = act_on_flag(&swap, &flag).unwrap();
        assert_eq!(img.chain[0].rows, vec![0, 1]);
        let r = d.rank(&Point::Flag(flag.clone())).unwrap();
        let g = Element::Mat(swap);
        assert_eq!(d.point(d.act_rank(&g, r)), Point::Flag(img));
    }

    #[test]
    fn projective_point_count() {
        for (q, n) in [(2u64, 3usize), (3, 3), (4, 2), (5, 3), (2, 5)] {
            let f = FqContext::of_order(q).unwrap();
            let d = enumerate_projective_points(&f, n).unwrap();
            assert_eq!(d.size() as u64, (q.pow(n as u32) - 1) / (q - 1));
        }
    }

    #[test]
    fn domain_cap() {
        assert!(matches!(enumerate_tuples(100, 4), Err(Error::DomainTooLarge(_))));
    }
}
