//! Group elements of the supported families and breadth-first closure.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::MatFq;
use crate::perm::Permutation;

/// A permutation or an invertible matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Permutation),
    Mat(MatFq),
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p:?}"),
            Element::Mat(m) => write!(f, "{m:?}"),
        }
    }
}

impl From<Permutation> for Element {
    fn from(p: Permutation) -> Self {
        Element::Perm(p)
    }
}

impl From<MatFq> for Element {
    fn from(m: MatFq) -> Self {
        Element::Mat(m)
    }
}

impl Element {
    /// Group product `self * other` (apply `other` first).
    pub fn mul(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) if a.degree() == b.degree() => Ok(Element::Perm(a.mul(b))),
            (Element::Mat(a), Element::Mat(b)) => Ok(Element::Mat(a.mat_mul(b)?)),
            (Element::Perm(a), Element::Perm(b)) => {
                Err(Error::DegreeMismatch { expected: a.degree(), found: b.degree() })
            }
            _ => Err(Error::KindMismatch),
        }
    }

    /// Product for operands already known to be compatible.
    pub(crate) fn mul_same(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => Element::Perm(a.mul(b)),
            (Element::Mat(a), Element::Mat(b)) => Element::Mat(a.mul_unchecked(b)),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn inverse(&self) -> Result<Element> {
        match self {
            Element::Perm(p) => Ok(Element::Perm(p.inverse())),
            Element::Mat(m) => Ok(Element::Mat(m.mat_inv()?)),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Perm(p) => p.is_identity(),
            Element::Mat(m) => m.is_identity(),
        }
    }

    pub fn identity_like(&self) -> Element {
        match self {
            Element::Perm(p) => Element::Perm(Permutation::identity(p.degree())),
            Element::Mat(m) => Element::Mat(MatFq::identity(m.ctx(), m.dim())),
        }
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Element::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_mat(&self) -> Option<&MatFq> {
        match self {
            Element::Mat(m) => Some(m),
            _ => None,
        }
    }

    pub fn order(&self) -> u64 {
        let id = self.identity_like();
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = self.mul_same(&x);
            k += 1;
        }
        k
    }
}

/// All elements of `<gens>` in breadth-first order starting from the
/// identity. Fails with `CapExceeded` once more than `cap` elements appear.
pub fn closure(gens: &[Element], identity: &Element, cap: usize) -> Result<Vec<Element>> {
    for g in gens {
        identity.mul(g)?;
    }
    let mut index: HashMap<Element, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity.clone(), 0);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = g.mul_same(&x);
            if !index.contains_key(&y) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    Ok(elems)
}

/// A duplicate-free, inverse-closed, nonempty list of elements of one kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSet {
    elems: Vec<Element>,
}

impl SymmetricSet {
    /// Validates `elems` as given: no duplicates, closed under inverses.
    pub fn new(elems: Vec<Element>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::EmptySigma);
        }
        for g in &elems[1..] {
            elems[0].mul(g)?;
        }
        let set: HashSet<&Element> = elems.iter().collect();
        if set.len() != elems.len() {
            return Err(Error::NotSymmetric);
        }
        for g in &elems {
            if !set.contains(&g.inverse()?) {
                return Err(Error::NotSymmetric);
            }
        }
        Ok(SymmetricSet { elems })
    }

    /// Adds missing inverses right after each element and drops duplicates.
    pub fn symmetrize(elems: Vec<Element>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(2 * elems.len());
        for g in elems {
            let inv = g.inverse()?;
            for x in [g, inv] {
                if seen.insert(x.clone()) {
                    out.push(x);
                }
            }
        }
        Self::new(out)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains_identity(&self) -> bool {
        self.elems.iter().any(Element::is_identity)
    }
}
