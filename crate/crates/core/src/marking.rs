//! Marking sums `<chi|_K, 1>_K`, subgroup lattices of small groups, the
//! `GL(2, q)` characters used at `n = 2`, and minimal marking sets of
//! abelian groups.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{GroupKind, GroupSpec};
use crate::cyclotomic::Cyclo;
use crate::domain::{enumerate_projective_points, Domain};
use crate::error::{Error, Result};
use crate::field::{is_prime, FqContext, MatFq};
use crate::group::{closure, Element};
use crate::perm::Permutation;

/// Largest group for which a multiplication table is stored.
pub const TABLE_LIMIT: usize = 4096;
/// Largest group whose subgroup lattice is enumerated.
pub const LATTICE_LIMIT: usize = 10_000;
pub const DEFAULT_CAP: usize = 1_000_000;

/// An explicitly enumerated finite group with indexed elements; index 0 is
/// the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elems: Vec<Element>,
    index: HashMap<Element, u32>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
}

impl FiniteGroup {
    pub fn generate(gens: &[Element], identity: &Element, cap: usize) -> Result<Self> {
        Ok(Self::from_elements(closure(gens, identity, cap)?))
    }

    fn from_elements(elems: Vec<Element>) -> Self {
        let n = elems.len();
        let index: HashMap<Element, u32> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let rows: Vec<Vec<u32>> = elems
                .par_iter()
                .map(|a| elems.iter().map(|b| index[&a.mul_same(b)]).collect())
                .collect();
            rows.concat()
        });
        let inverses = elems.iter().map(|e| index[&e.inverse().expect("group element")]).collect();
        FiniteGroup { elems, index, table, inverses }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, i: u32) -> &Element {
        &self.elems[i as usize]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn index_of(&self, g: &Element) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match &self.table {
            Some(t) => t[i as usize * self.elems.len() + j as usize],
            None => self.index[&self.elems[i as usize].mul_same(&self.elems[j as usize])],
        }
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inverses[i as usize]
    }

    /// Index closure of `gens` inside this group.
    pub fn subgroup(&self, gens: &[u32]) -> Subgroup {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut list = vec![0u32];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        Subgroup { elements: list, gens: gens.to_vec() }
    }

    /// Subgroup generated by explicit elements, which must lie in the group.
    pub fn subgroup_of(&self, gens: &[Element]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g).ok_or_else(|| Error::NotSubgroup(format!("{g:?} not in group"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&idx))
    }
}

/// A subgroup as a sorted list of element indices plus generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<u32>,
    pub gens: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_list(&self, g: &FiniteGroup) -> Vec<Element> {
        self.elements.iter().map(|&i| g.element(i).clone()).collect()
    }

    fn bits(&self, n: usize) -> Vec<u64> {
        let mut b = vec![0u64; n.div_ceil(64)];
        for &e in &self.elements {
            b[e as usize / 64] |= 1 << (e % 64);
        }
        b
    }
}

/// Closure of `gens` with a cap; breadth-first, identity first.
pub fn subgroup_elements(gens: &[Element], identity: &Element, cap: usize) -> Result<Vec<Element>> {
    closure(gens, identity, cap)
}

/// Every subgroup: cyclic subgroups first, then joins with cyclic
/// subgroups until nothing new appears. Sorted by order, then elements.
pub fn enumerate_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n > LATTICE_LIMIT {
        return Err(Error::GroupTooLarge(n));
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut subs: Vec<Subgroup> = Vec::new();
    let mut cyclic_reps: Vec<u32> = Vec::new();
    for i in 0..n as u32 {
        let s = g.subgroup(&[i]);
        if seen.insert(s.bits(n)) {
            subs.push(s);
            cyclic_reps.push(i);
        }
    }
    let mut head = 0;
    while head < subs.len() {
        let h = subs[head].clone();
        head += 1;
        let bits = h.bits(n);
        for &c in &cyclic_reps {
            if bits[c as usize / 64] >> (c % 64) & 1 == 1 {
                continue;
            }
            let mut gens = h.gens.clone();
            gens.push(c);
            let j = g.subgroup(&gens);
            if seen.insert(j.bits(n)) {
                subs.push(j);
            }
        }
    }
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(subs)
}

/// The `GL(2, q)` characters named in the `n = 2` marking results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gl2Char {
    /// Cuspidal `pi(phi)` for `phi(w) = zeta_{q+1}^k`, `w` the fixed
    /// primitive element of `F_{q^2}`.
    Phi1 { k: u32 },
    /// Principal series `alpha o alpha^{-1}` for `alpha(g) = zeta_{q-1}^j`,
    /// `g` the fixed primitive element of `F_q`.
    AlphaAlphaBar { j: u32 },
    /// A linear character of `SL(2, 3)` appearing in the restriction of `phi_1`.
    Omega0Plus,
    /// Fixed points on the projective line, minus one.
    Theta1,
}

impl Gl2Char {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "phi1" => Gl2Char::Phi1 { k: 1 },
            "alpha_alphabar" => Gl2Char::AlphaAlphaBar { j: 1 },
            "omega0plus" => Gl2Char::Omega0Plus,
            "theta1" => Gl2Char::Theta1,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gl2Char::Phi1 { .. } => "phi1",
            Gl2Char::AlphaAlphaBar { .. } => "alpha_alphabar",
            Gl2Char::Omega0Plus => "omega0plus",
            Gl2Char::Theta1 => "theta1",
        }
    }
}

/// The additional character `psi_1` for `GL(2, q)` and its relatives.
pub fn psi1(kind: GroupKind, q: u32) -> Gl2Char {
    if q == 3 && matches!(kind, GroupKind::Sl | GroupKind::Psl) {
        Gl2Char::Omega0Plus
    } else if q % 2 == 1 || q == 2 {
        Gl2Char::Phi1 { k: 1 }
    } else {
        Gl2Char::AlphaAlphaBar { j: 1 }
    }
}

/// Conjugacy type of an element of `GL(2, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gl2Class {
    Central(u32),
    NonSemisimple(u32),
    Split(u32, u32),
    /// Eigenvalues `z, z^q` in `F_{q^2} \ F_q`, given by `log_w z`.
    Elliptic(u32),
}

#[derive(Clone, Copy, Debug)]
enum RootType {
    Repeated(u32),
    Split(u32, u32),
    Elliptic(u32),
}

/// Lookup tables for class and character values on `GL(2, q)`.
#[derive(Debug)]
pub struct Gl2Table {
    ctx: Arc<FqContext>,
    ext: Arc<FqContext>,
    roots: HashMap<(u32, u32), RootType>,
}

impl Gl2Table {
    pub fn new(ctx: &Arc<FqContext>) -> Result<Arc<Self>> {
        let (p, e, q) = (ctx.p(), ctx.e(), ctx.q());
        let ext = FqContext::new(p, 2 * e, None)?;
        // embed F_q into F_{q^2} through a root of the modulus of F_q
        let modulus = ctx.modulus().to_vec();
        let beta = (0..ext.q())
            .find(|&b| {
                let mut acc = 0;
                for &c in modulus.iter().rev() {
                    acc = ext.add(ext.mul(acc, b), c);
                }
                acc == 0
            })
            .ok_or_else(|| Error::ReducibleModulus("no embedding".into()))?;
        let embed: Vec<u32> = (0..q)
            .map(|a| {
                let mut acc = 0;
                let mut pw = 1;
                let mut x = a;
                for _ in 0..e {
                    acc = ext.add(acc, ext.mul(x % p, pw));
                    pw = ext.mul(pw, beta);
                    x /= p;
                }
                acc
            })
            .collect();
        let unembed: HashMap<u32, u32> = embed.iter().enumerate().map(|(a, &z)| (z, a as u32)).collect();
        let mut roots = HashMap::new();
        for a in 1..q {
            for b in a..q {
                let key = (ctx.add(a, b), ctx.mul(a, b));
                roots.insert(key, if a == b { RootType::Repeated(a) } else { RootType::Split(a, b) });
            }
        }
        for z in 1..ext.q() {
            if unembed.contains_key(&z) {
                continue;
            }
            let zq = ext.pow(z, q as u64);
            let tr = unembed[&ext.add(z, zq)];
            let nm = unembed[&ext.mul(z, zq)];
            roots.entry((tr, nm)).or_insert(RootType::Elliptic(ext.discrete_log(z).unwrap()));
        }
        Ok(Arc::new(Gl2Table { ctx: ctx.clone(), ext, roots }))
    }

    pub fn ctx(&self) -> &Arc<FqContext> {
        &self.ctx
    }

    pub fn classify(&self, g: &MatFq) -> Result<Gl2Class> {
        if g.dim() != 2 || **g.ctx() != *self.ctx {
            return Err(Error::ContextMismatch);
        }
        let det = g.det();
        if det == 0 {
            return Err(Error::SingularMatrix);
        }
        if g.is_scalar() {
            return Ok(Gl2Class::Central(g.get(0, 0)));
        }
        Ok(match self.roots[&(g.trace(), det)] {
            RootType::Repeated(a) => Gl2Class::NonSemisimple(a),
            RootType::Split(a, b) => Gl2Class::Split(a, b),
            RootType::Elliptic(k) => Gl2Class::Elliptic(k),
        })
    }

    /// Order of the cyclotomic ring the character takes values in.
    pub fn value_order(&self, name: Gl2Char) -> usize {
        let q = self.ctx.q() as usize;
        match name {
            Gl2Char::Phi1 { .. } => q + 1,
            Gl2Char::AlphaAlphaBar { .. } => q - 1,
            Gl2Char::Omega0Plus => 3,
            Gl2Char::Theta1 => 1,
        }
    }

    pub fn check_params(&self, name: Gl2Char) -> Result<()> {
        let q = self.ctx.q();
        match name {
            Gl2Char::Phi1 { k } => {
                if k.gcd(&(q + 1)) != 1 {
                    return Err(Error::BadParams(format!("phi of order q+1 needs gcd(k, {}) = 1", q + 1)));
                }
            }
            Gl2Char::AlphaAlphaBar { j } => {
                let m = q - 1;
                if m == 0 || (2 * j) % m == 0 {
                    return Err(Error::BadParams(format!("alpha must satisfy alpha^2 != 1 in F_{q}^*")));
                }
            }
            Gl2Char::Omega0Plus => {
                if q != 3 {
                    return Err(Error::BadParams("omega0plus exists only for q = 3".into()));
                }
            }
            Gl2Char::Theta1 => {}
        }
        Ok(())
    }

    pub fn value(&self, name: Gl2Char, g: &MatFq) -> Result<Cyclo> {
        self.check_params(name)?;
        let class = self.classify(g)?;
        let q = self.ctx.q() as i64;
        let m = self.value_order(name);
        Ok(match name {
            Gl2Char::Theta1 => Cyclo::from_int(
                1,
                match class {
                    Gl2Class::Central(_) => q,
                    Gl2Class::NonSemisimple(_) => 0,
                    Gl2Class::Split(..) => 1,
                    Gl2Class::Elliptic(_) => -1,
                },
            ),
            Gl2Char::Phi1 { k } => {
                // phi has order q + 1, so it is trivial on F_q^*
                let k = k as i64;
                match class {
                    Gl2Class::Central(_) => Cyclo::from_int(m, q - 1),
                    Gl2Class::NonSemisimple(_) => Cyclo::from_int(m, -1),
                    Gl2Class::Split(..) => Cyclo::zero(m),
                    Gl2Class::Elliptic(l) => {
                        let mut c = Cyclo::root(m, k * l as i64, -1);
                        c.add_root(k * q * l as i64, -1);
                        c
                    }
                }
            }
            Gl2Char::AlphaAlphaBar { j } => {
                let j = j as i64;
                let lg = |a: u32| self.ctx.discrete_log(a).unwrap() as i64;
                match class {
                    Gl2Class::Central(_) => Cyclo::from_int(m, q + 1),
                    Gl2Class::NonSemisimple(_) => Cyclo::from_int(m, 1),
                    Gl2Class::Split(a, b) => {
                        let d = lg(a) - lg(b);
                        let mut c = Cyclo::root(m, j * d, 1);
                        c.add_root(-j * d, 1);
                        c
                    }
                    Gl2Class::Elliptic(_) => Cyclo::zero(m),
                }
            }
            Gl2Char::Omega0Plus => {
                if g.det() != 1 {
                    return Err(Error::ValueUndefined("omega0plus is defined on SL(2,3)".into()));
                }
                Cyclo::root(3, omega_exponent(g), 1)
            }
        })
    }

    pub fn ext(&self) -> &Arc<FqContext> {
        &self.ext
    }
}

/// The `k` with `t^{-k} g` in the quaternion subgroup `{h : h^4 = 1}` of
/// `SL(2, 3)`, `t = [[1, 1], [0, 1]]`.
fn omega_exponent(g: &MatFq) -> i64 {
    let ctx = g.ctx();
    let t_inv = MatFq::elementary(ctx, 2, 0, 1, ctx.neg(1));
    let mut h = g.clone();
    for k in 0..3 {
        let h2 = h.mul_unchecked(&h);
        if h2.mul_unchecked(&h2).is_identity() {
            return k;
        }
        h = t_inv.mul_unchecked(&h);
    }
    unreachable!("SL(2,3) is Q8 extended by <t>")
}

/// A class function on a group of permutations or matrices.
#[derive(Clone)]
pub enum CharacterSpec {
    Trivial,
    Sign,
    /// Fixed points on a domain; `reduced` subtracts the trivial character.
    PermChar { domain: Arc<Domain>, reduced: bool },
    Gl2 { table: Arc<Gl2Table>, name: Gl2Char },
    /// Values supplied by a function into `Z[zeta_m]`.
    Explicit { name: String, m: usize, f: Arc<dyn Fn(&Element) -> Cyclo + Send + Sync> },
}

impl fmt::Debug for CharacterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl CharacterSpec {
    pub fn name(&self) -> String {
        match self {
            CharacterSpec::Trivial => "trivial".into(),
            CharacterSpec::Sign => "sign".into(),
            CharacterSpec::PermChar { domain, reduced: true } => format!("perm:{}", domain.label()),
            CharacterSpec::PermChar { domain, reduced: false } => format!("permfull:{}", domain.label()),
            CharacterSpec::Gl2 { name, .. } => name.name().into(),
            CharacterSpec::Explicit { name, .. } => name.clone(),
        }
    }

    fn order(&self) -> usize {
        match self {
            CharacterSpec::Gl2 { table, name } => table.value_order(*name),
            CharacterSpec::Explicit { m, .. } => *m,
            _ => 1,
        }
    }

    pub fn value(&self, g: &Element) -> Result<Cyclo> {
        match self {
            CharacterSpec::Trivial => Ok(Cyclo::from_int(1, 1)),
            CharacterSpec::Sign => {
                let p = g.as_perm().ok_or_else(|| Error::ValueUndefined("sign needs a permutation".into()))?;
                Ok(Cyclo::from_int(1, p.sign() as i64))
            }
            CharacterSpec::PermChar { domain, reduced } => {
                domain.check_element(g)?;
                let fixed = (0..domain.size() as u32).filter(|&x| domain.act_rank(g, x) == x).count() as i64;
                Ok(Cyclo::from_int(1, fixed - *reduced as i64))
            }
            CharacterSpec::Gl2 { table, name } => {
                let m = g.as_mat().ok_or_else(|| Error::ValueUndefined("GL(2,q) character needs a matrix".into()))?;
                table.value(*name, m)
            }
            CharacterSpec::Explicit { f, .. } => Ok(f(g)),
        }
    }
}

/// A character from its name: `trivial`, `sign`, `theta1`, `phi1`,
/// `alpha_alphabar`, `omega0plus`, `psi1`, `perm:<domain>` (reduced) or
/// `permfull:<domain>`. The `GL(2, q)` names need a 2-dimensional matrix group.
pub fn parse_character(name: &str, spec: &GroupSpec) -> Result<CharacterSpec> {
    if let Some(label) = name.strip_prefix("perm:") {
        let domain = Arc::new(crate::io::domain_from_label(label, spec)?);
        return Ok(CharacterSpec::PermChar { domain, reduced: true });
    }
    if let Some(label) = name.strip_prefix("permfull:") {
        let domain = Arc::new(crate::io::domain_from_label(label, spec)?);
        return Ok(CharacterSpec::PermChar { domain, reduced: false });
    }
    match name {
        "trivial" => return Ok(CharacterSpec::Trivial),
        "sign" if spec.kind == GroupKind::Sn => return Ok(CharacterSpec::Sign),
        _ => {}
    }
    let gl2 = if name == "psi1" {
        spec.q().map(|q| psi1(spec.kind, q))
    } else {
        Gl2Char::parse(name)
    }
    .ok_or_else(|| Error::BadParams(format!("unknown character {name:?}")))?;
    match (&spec.ctx, spec.kind) {
        (Some(ctx), GroupKind::Sl | GroupKind::Gl) if spec.n == 2 => {
            let table = Gl2Table::new(ctx)?;
            table.check_params(gl2)?;
            Ok(CharacterSpec::Gl2 { table, name: gl2 })
        }
        _ => Err(Error::BadParams(format!("{name} is defined on GL(2, q) and SL(2, q) only"))),
    }
}

fn orbit_count(domain: &Domain, gens: &[Element]) -> Result<usize> {
    let n = domain.size();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    let mut orbits = n;
    for g in gens {
        domain.check_element(g)?;
        for x in 0..n as u32 {
            let (a, b) = (find(&mut parent, x), find(&mut parent, domain.act_rank(g, x)));
            if a != b {
                parent[a as usize] = b;
                orbits -= 1;
            }
        }
    }
    Ok(orbits)
}

/// `(1/|K|) sum_{k in K} chi(k)` for the full element list of `K`. For
/// permutation characters the orbit count is used instead (Burnside).
pub fn marking_sum(chi: &CharacterSpec, elements: &[Element]) -> Result<Ratio<i64>> {
    if elements.is_empty() {
        return Err(Error::NotSubgroup("empty element list".into()));
    }
    if let CharacterSpec::PermChar { domain, reduced } = chi {
        let orbits = orbit_count(domain, elements)? as i64;
        return Ok(Ratio::from_integer(orbits - *reduced as i64));
    }
    marking_sum_direct(chi, elements)
}

/// The marking sum by summing character values, with no shortcut.
pub fn marking_sum_direct(chi: &CharacterSpec, elements: &[Element]) -> Result<Ratio<i64>> {
    let mut acc = Cyclo::zero(chi.order());
    for k in elements {
        acc.add_assign(&chi.value(k)?);
    }
    let total = acc
        .as_integer()
        .ok_or_else(|| Error::ValueUndefined(format!("sum of {} is irrational", chi.name())))?;
    Ok(Ratio::new(total, elements.len() as i64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkingReport {
    pub sums: Vec<(String, String)>,
    pub marked: Vec<bool>,
    pub overall: bool,
}

pub fn marking_report(chars: &[CharacterSpec], elements: &[Element]) -> Result<MarkingReport> {
    let sums = chars.iter().map(|c| marking_sum(c, elements)).collect::<Result<Vec<_>>>()?;
    let marked: Vec<bool> = sums.iter().map(|s| *s > Ratio::from_integer(0)).collect();
    Ok(MarkingReport {
        sums: chars.iter().zip(&sums).map(|(c, s)| (c.name(), s.to_string())).collect(),
        overall: marked.iter().any(|&m| m),
        marked,
    })
}

/// Outcome of checking that a character set marks exactly the subgroups
/// not containing the designated normal subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingTheoremReport {
    pub checked: usize,
    /// Indices of subgroups where marking and non-containment disagree.
    pub violations: Vec<usize>,
}

/// Whether `k` contains `SL(n, q)` (gl kinds) or is everything (other kinds).
fn contains_designated(spec: &GroupSpec, group: &FiniteGroup, k: &Subgroup) -> bool {
    match spec.kind {
        GroupKind::Gl | GroupKind::Pgl if group.element(0).as_mat().is_some() => {
            let sl = crate::field::sl_order(spec.n, spec.q().unwrap() as u64);
            let in_sl = k
                .elements
                .iter()
                .filter(|&&i| group.element(i).as_mat().is_some_and(|m| m.det() == 1))
                .count();
            num_bigint::BigUint::from(in_sl) == sl
        }
        _ => k.order() == group.order(),
    }
}

pub fn verify_marking_theorem(
    spec: &GroupSpec,
    group: &FiniteGroup,
    subgroups: &[Subgroup],
    chars: &[CharacterSpec],
) -> Result<MarkingTheoremReport> {
    let results: Vec<Result<bool>> = subgroups
        .par_iter()
        .map(|k| {
            let elems = k.element_list(group);
            let rep = marking_report(chars, &elems)?;
            Ok(rep.overall != contains_designated(spec, group, k))
        })
        .collect();
    let mut violations = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        if !r? {
            violations.push(i);
        }
    }
    Ok(MarkingTheoremReport { checked: subgroups.len(), violations })
}

/// Generators of `G` for a spec: `(1 2)` and an `n`-cycle for `S_n`;
/// elementary transvections over an `F_p`-basis of `F_q` for `SL`, plus a
/// primitive diagonal matrix for `GL`.
pub fn standard_generators(spec: &GroupSpec) -> Vec<Element> {
    match spec.kind {
        GroupKind::Sn => {
            let n = spec.n;
            if n < 2 {
                return vec![Permutation::identity(n.max(1)).into()];
            }
            let cyc: Vec<u32> = (1..=n as u32).collect();
            vec![
                Permutation::from_cycles(n, &[&[1, 2]]).unwrap().into(),
                Permutation::from_cycles(n, &[&cyc]).unwrap().into(),
            ]
        }
        kind => {
            let ctx = spec.ctx.as_ref().expect("matrix group has a field");
            let n = spec.n;
            let mut gens = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let x = if ctx.e() > 1 { ctx.p() } else { 1 };
                    let mut c = 1;
                    for _ in 0..ctx.e() {
                        gens.push(MatFq::elementary(ctx, n, i, j, c).into());
                        c = ctx.mul(c, x);
                    }
                }
            }
            if matches!(kind, GroupKind::Gl | GroupKind::Pgl) || n == 1 {
                let mut d = vec![1; n];
                d[0] = ctx.primitive_element();
                gens.push(MatFq::diag(ctx, &d).into());
            }
            gens
        }
    }
}

/// `G` as an explicit group. `psl` and `pgl` are realized as permutation
/// groups on projective points.
pub fn group_of_spec(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    let gens = standard_generators(spec);
    match spec.kind {
        GroupKind::Psl | GroupKind::Pgl => {
            let ctx = spec.ctx.as_ref().unwrap();
            let dom = enumerate_projective_points(ctx, spec.n)?;
            let perms =
                gens.iter().map(|g| dom.induced_permutation(g).map(Element::Perm)).collect::<Result<Vec<_>>>()?;
            let id = Element::Perm(Permutation::identity(dom.size()));
            FiniteGroup::generate(&perms, &id, cap)
        }
        _ => {
            let id = gens[0].identity_like();
            FiniteGroup::generate(&gens, &id, cap)
        }
    }
}

/// `<Ind_K^G 1, chi>_G` against `<1, chi|_K>_K`, the former through the
/// induced-character formula.
pub fn frobenius_check(group: &FiniteGroup, k: &Subgroup, chi: &CharacterSpec) -> Result<bool> {
    let n = group.order();
    if n > LATTICE_LIMIT {
        return Err(Error::GroupTooLarge(n));
    }
    let mut in_k = vec![false; n];
    for &i in &k.elements {
        in_k[i as usize] = true;
    }
    // |K| |G| <Ind 1, chi> = sum_g #{t : t^-1 g t in K} conj(chi(g))
    let m = chi.order();
    let mut lhs = Cyclo::zero(m);
    for g in 0..n as u32 {
        let count = (0..n as u32)
            .filter(|&t| in_k[group.mul(group.mul(group.inv(t), g), t) as usize])
            .count() as i64;
        if count > 0 {
            lhs.add_assign(&chi.value(group.element(g))?.conj().scale(count));
        }
    }
    let mut rhs = Cyclo::zero(m);
    for &i in &k.elements {
        rhs.add_assign(&chi.value(group.element(i))?);
    }
    let rhs = rhs.scale(n as i64);
    let lhs_int = lhs.as_integer();
    let rhs_int = rhs.as_integer();
    Ok(lhs_int.is_some() && lhs_int == rhs_int)
}

/// Matrices `M_w` (multiplication by a primitive element of `F_{q^2}`) and
/// the Frobenius of `F_{q^2} / F_q`, in the basis `1, omega` with
/// `omega^2 = s omega + t` irreducible. They generate a member of the
/// `C_3` family of `GL(2, q)`, of order `2 (q^2 - 1)`.
pub fn c3_generators(ctx: &Arc<FqContext>) -> (MatFq, MatFq) {
    let q = ctx.q();
    let (s, t) = (0..q)
        .flat_map(|s| (1..q).map(move |t| (s, t)))
        .find(|&(s, t)| (0..q).all(|x| ctx.sub(ctx.mul(x, x), ctx.add(ctx.mul(s, x), t)) != 0))
        .expect("an irreducible quadratic exists");
    let m = MatFq::new(ctx, 2, vec![0, t, 1, s]).unwrap();
    let order = (q as u64) * (q as u64) - 1;
    let primes: Vec<u64> = (2..=order).filter(|&p| order.is_multiple_of(p) && is_prime(p)).collect();
    let w = (0..q)
        .flat_map(|a| (1..q).map(move |b| (a, b)))
        .map(|(a, b)| {
            let scaled = m.scale(b);
            let id = MatFq::diag(ctx, &[a, a]);
            MatFq::new(ctx, 2, scaled.entries().iter().zip(id.entries()).map(|(&x, &y)| ctx.add(x, y)).collect())
                .unwrap()
        })
        .find(|w| w.det() != 0 && primes.iter().all(|&p| !mat_pow(w, order / p).is_identity()))
        .expect("F_{q^2} has a primitive element");
    let frob = MatFq::new(ctx, 2, vec![1, s, 0, ctx.neg(1)]).unwrap();
    (w, frob)
}

pub fn mat_pow(a: &MatFq, mut k: u64) -> MatFq {
    let mut acc = MatFq::identity(a.ctx(), a.dim());
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul_unchecked(&base);
        }
        base = base.mul_unchecked(&base);
        k >>= 1;
    }
    acc
}

/// A row of the table of generators and characters for the transitive
/// exceptional subgroups of `GL(2, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorRow {
    pub q: u32,
    pub gens: [[u32; 4]; 2],
    pub character: Gl2Char,
}

const PHI: Gl2Char = Gl2Char::Phi1 { k: 1 };
const THETA: Gl2Char = Gl2Char::Theta1;

pub const GENERATOR_TABLE: [GeneratorRow; 11] = [
    GeneratorRow { q: 5, gens: [[3, 4, 2, 3], [1, 0, 1, 2]], character: PHI },
    GeneratorRow { q: 7, gens: [[2, 6, 5, 5], [4, 6, 3, 5]], character: PHI },
    GeneratorRow { q: 7, gens: [[2, 0, 0, 1], [6, 5, 6, 4]], character: PHI },
    GeneratorRow { q: 11, gens: [[8, 7, 6, 4], [8, 8, 8, 4]], character: PHI },
    GeneratorRow { q: 11, gens: [[3, 9, 5, 8], [6, 2, 6, 4]], character: PHI },
    GeneratorRow { q: 23, gens: [[8, 2, 18, 18], [15, 1, 1, 8]], character: PHI },
    GeneratorRow { q: 23, gens: [[1, 15, 17, 8], [2, 11, 17, 17]], character: PHI },
    GeneratorRow { q: 31, gens: [[11, 19, 7, 4], [1, 13, 30, 26]], character: THETA },
    GeneratorRow { q: 31, gens: [[5, 25, 18, 6], [0, 22, 20, 0]], character: THETA },
    GeneratorRow { q: 47, gens: [[34, 10, 3, 13], [24, 32, 11, 6]], character: THETA },
    GeneratorRow { q: 47, gens: [[11, 2, 29, 36], [46, 44, 11, 21]], character: THETA },
];

impl GeneratorRow {
    pub fn matrices(&self, ctx: &Arc<FqContext>) -> Result<Vec<MatFq>> {
        self.gens.iter().map(|g| MatFq::new(ctx, 2, g.to_vec())).collect()
    }
}

/// `X(G)` for `G = C_{a_1} x ... x C_{a_k}` with the per-prime counts of
/// index-`p` subgroups, each the kernel of one chosen character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XminReport {
    pub size: u64,
    /// `(p, r_p, (p^{r_p} - 1) / (p - 1))`.
    pub primes: Vec<(u64, u32, u64)>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Closed form: sum over primes `p` of `(p^{r_p} - 1) / (p - 1)`, where
/// `r_p` counts the invariant factors divisible by `p`.
pub fn xmin_abelian(factors: &[u64]) -> Result<XminReport> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(Error::BadParams("invariant factors must be positive".into()));
    }
    let mut primes: Vec<u64> = factors.iter().flat_map(|&a| prime_factors(a)).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    let mut size = 0;
    for p in primes {
        let r = factors.iter().filter(|&&a| a % p == 0).count() as u32;
        let count = (p.pow(r) - 1) / (p - 1);
        size += count;
        out.push((p, r, count));
    }
    Ok(XminReport { size, primes: out })
}

/// The abelian group `C_{a_1} x ... x C_{a_k}` on disjoint cycles, with the
/// coordinate map from permutations back to `Z/a_1 x ... x Z/a_k`.
fn abelian_group(factors: &[u64]) -> Result<(FiniteGroup, Arc<dyn Fn(&Element) -> Vec<u64> + Send + Sync>)> {
    let order: u64 = factors.iter().product();
    if order > 2000 {
        return Err(Error::GroupTooLarge(order as usize));
    }
    let degree: usize = factors.iter().map(|&a| a as usize).sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut offsets = Vec::new();
    let mut off = 0usize;
    for &a in factors {
        offsets.push(off);
        if a > 1 {
            let cyc: Vec<u32> = (off as u32 + 1..=off as u32 + a as u32).collect();
            gens.push(Element::Perm(Permutation::from_cycles(degree, &[&cyc])?));
        }
        off += a as usize;
    }
    let id = Element::Perm(Permutation::identity(degree));
    let group = FiniteGroup::generate(&gens, &id, 2001)?;
    let factors = factors.to_vec();
    let coords = Arc::new(move |g: &Element| -> Vec<u64> {
        let p = g.as_perm().unwrap();
        factors
            .iter()
            .zip(&offsets)
            .map(|(&a, &o)| if a > 1 { (p.apply(o as u32) as u64 - o as u64) % a } else { 0 })
            .collect()
    });
    Ok((group, coords))
}

/// Exact `X(G)`: minimum number of characters such that every proper
/// subgroup has a positive marking sum for one of them.
pub fn xmin_bruteforce_with_table(group: &FiniteGroup, chars: &[CharacterSpec]) -> Result<usize> {
    if chars.is_empty() {
        return Err(Error::TableUnavailable("no nontrivial characters supplied".into()));
    }
    let subs = enumerate_subgroups(group)?;
    let proper: Vec<&Subgroup> = subs.iter().filter(|s| s.order() < group.order()).collect();
    // covers[c] = set of proper subgroups marked by character c
    let covers: Vec<Vec<bool>> = chars
        .par_iter()
        .map(|c| {
            proper
                .iter()
                .map(|k| Ok(marking_sum(c, &k.element_list(group))? > Ratio::from_integer(0)))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    Ok(min_set_cover(proper.len(), &covers))
}

/// The abelian case, with the characters `x -> zeta^{sum b_i x_i L / a_i}`.
pub fn xmin_bruteforce(factors: &[u64]) -> Result<usize> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(Error::BadParams("invariant factors must be positive".into()));
    }
    let (group, coords) = abelian_group(factors)?;
    let l = factors.iter().fold(1u64, |acc, &a| acc.lcm(&a));
    let mut chars = Vec::new();
    let total: u64 = factors.iter().product();
    for idx in 1..total {
        let mut b = Vec::with_capacity(factors.len());
        let mut r = idx;
        for &a in factors {
            b.push(r % a);
            r /= a;
        }
        let coords = coords.clone();
        let fac = factors.to_vec();
        let f = Arc::new(move |g: &Element| {
            let x = coords(g);
            let e: u64 = b.iter().zip(&x).zip(&fac).map(|((bi, xi), ai)| bi * xi * (l / ai)).sum();
            Cyclo::root(l as usize, (e % l) as i64, 1)
        });
        chars.push(CharacterSpec::Explicit { name: format!("chi{idx}"), m: l as usize, f });
    }
    if chars.is_empty() {
        // trivial group: no proper subgroups
        return Ok(0);
    }
    xmin_bruteforce_with_table(&group, &chars)
}

/// Exact minimum set cover by branch and bound; `covers[s][u]` says set `s`
/// covers item `u`.
fn min_set_cover(items: usize, covers: &[Vec<bool>]) -> usize {
    fn rec(
        covered: &mut Vec<u32>,
        chosen: usize,
        best: &mut usize,
        items: usize,
        covers: &[Vec<bool>],
        by_item: &[Vec<usize>],
    ) {
        if chosen >= *best {
            return;
        }
        // uncovered item with the fewest candidate sets
        let pick = (0..items).filter(|&u| covered[u] == 0).min_by_key(|&u| by_item[u].len());
        let Some(u) = pick else {
            *best = chosen;
            return;
        };
        if chosen + 1 >= *best {
            return;
        }
        for &s in &by_item[u] {
            for (v, c) in covers[s].iter().enumerate() {
                if *c {
                    covered[v] += 1;
                }
            }
            rec(covered, chosen + 1, best, items, covers, by_item);
            for (v, c) in covers[s].iter().enumerate() {
                if *c {
                    covered[v] -= 1;
                }
            }
        }
    }
    let by_item: Vec<Vec<usize>> = (0..items).map(|u| (0..covers.len()).filter(|&s| covers[s][u]).collect()).collect();
    assert!(by_item.iter().all(|v| !v.is_empty()), "every proper subgroup is marked by some character");
    let mut best = covers.len() + 1;
    rec(&mut vec![0; items], 0, &mut best, items, covers, &by_item);
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub x_quotient: u64,
    pub x_group: u64,
    pub x_sub: u64,
    pub index: u64,
    pub left: bool,
    pub right: bool,
}

/// Checks `X(G/N) <= X(G) <= [G:N] X(N) + X(G/N)` for `N = C_{b_1} x ...`
/// embedded componentwise in `G = C_{a_1} x ...` (`b_i | a_i`).
pub fn verify_extension_inequality(g: &[u64], n: &[u64]) -> Result<ExtensionReport> {
    if n.len() > g.len() {
        return Err(Error::NotSubgroup(format!("{n:?} has more factors than {g:?}")));
    }
    let mut b = n.to_vec();
    b.resize(g.len(), 1);
    if g.iter().zip(&b).any(|(&a, &bi)| bi == 0 || a % bi != 0) {
        return Err(Error::NotSubgroup(format!("{n:?} does not embed componentwise in {g:?}")));
    }
    let quotient: Vec<u64> = g.iter().zip(&b).map(|(&a, &bi)| a / bi).collect();
    let xg = xmin_abelian(g)?.size;
    let xn = xmin_abelian(&b)?.size;
    let xq = xmin_abelian(&quotient)?.size;
    let index: u64 = quotient.iter().product();
    Ok(ExtensionReport {
        x_quotient: xq,
        x_group: xg,
        x_sub: xn,
        index,
        left: xq <= xg,
        right: xg <= index * xn + xq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{enumerate_subsets, enumerate_tuples};

    fn sym(n: usize) -> FiniteGroup {
        group_of_spec(&GroupSpec::sn(n), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn small_lattices() {
        let id = Element::Perm(Permutation::identity(6));
        let c6 = Element::Perm(Permutation::from_cycles(6, &[&[1, 2, 3, 4, 5, 6]]).unwrap());
        let g = FiniteGroup::generate(&[c6], &id, 100).unwrap();
        assert_eq!(enumerate_subgroups(&g).unwrap().len(), 4);
        assert_eq!(enumerate_subgroups(&sym(3)).unwrap().len(), 6);
        assert_eq!(enumerate_subgroups(&sym(4)).unwrap().len(), 30);
    }

    #[test]
    fn sl23_lattice_against_pairs() {
        let f = FqContext::prime(3).unwrap();
        let spec = GroupSpec::matrix(GroupKind::Sl, 2, &f);
        let g = group_of_spec(&spec, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 24);
        let lattice = enumerate_subgroups(&g).unwrap();
        let mut pairs: HashSet<Vec<u32>> = HashSet::new();
        for a in 0..24 {
            for b in 0..24 {
                pairs.insert(g.subgroup(&[a, b]).elements);
            }
        }
        let lat: HashSet<Vec<u32>> = lattice.iter().map(|s| s.elements.clone()).collect();
        assert_eq!(lat, pairs);
        assert_eq!(lat.len(), 15);
    }

    #[test]
    fn burnside_equality() {
        let g = sym(4);
        let dom = Arc::new(enumerate_subsets(4, 2).unwrap());
        let chi = CharacterSpec::PermChar { domain: dom, reduced: false };
        for k in enumerate_subgroups(&g).unwrap() {
            let el = k.element_list(&g);
            assert_eq!(marking_sum(&chi, &el).unwrap(), marking_sum_direct(&chi, &el).unwrap());
        }
    }

    #[test]
    fn theta1_values() {
        let f = FqContext::prime(5).unwrap();
        let t = Gl2Table::new(&f).unwrap();
        let id = MatFq::identity(&f, 2);
        assert_eq!(t.value(Gl2Char::Theta1, &id).unwrap().as_integer(), Some(5));
        let d = MatFq::diag(&f, &[1, 2]);
        assert_eq!(t.value(Gl2Char::Theta1, &d).unwrap().as_integer(), Some(1));
    }

    #[test]
    fn theta1_matches_fixed_points() {
        for q in [2u64, 3, 4, 5] {
            let f = FqContext::of_order(q).unwrap();
            let t = Gl2Table::new(&f).unwrap();
            let g = group_of_spec(&GroupSpec::matrix(GroupKind::Gl, 2, &f), DEFAULT_CAP).unwrap();
            let dom = Arc::new(enumerate_projective_points(&f, 2).unwrap());
            let perm = CharacterSpec::PermChar { domain: dom, reduced: true };
            for e in g.elements() {
                let a = t.value(Gl2Char::Theta1, e.as_mat().unwrap()).unwrap();
                assert_eq!(a, perm.value(e).unwrap());
            }
        }
    }

    #[test]
    fn gl2_characters_have_unit_norm() {
        // <chi, chi> = 1 over GL(2, q) for the irreducible ones
        for q in [3u64, 4, 5] {
            let f = FqContext::of_order(q).unwrap();
            let t = Gl2Table::new(&f).unwrap();
            let g = group_of_spec(&GroupSpec::matrix(GroupKind::Gl, 2, &f), DEFAULT_CAP).unwrap();
            let mut names = vec![Gl2Char::Phi1 { k: 1 }, Gl2Char::Theta1];
            if q == 4 || q == 5 {
                names.push(Gl2Char::AlphaAlphaBar { j: 1 });
            }
            for name in names {
                let m = t.value_order(name);
                let mut acc = Cyclo::zero(m);
                for e in g.elements() {
                    let v = t.value(name, e.as_mat().unwrap()).unwrap();
                    acc.add_assign(&v.mul(&v.conj()));
                }
                assert_eq!(acc.as_integer(), Some(g.order() as i64), "q = {q}, {name:?}");
            }
        }
    }

    #[test]
    fn omega_splits_phi1_on_sl23() {
        let f = FqContext::prime(3).unwrap();
        let t = Gl2Table::new(&f).unwrap();
        let g = group_of_spec(&GroupSpec::matrix(GroupKind::Sl, 2, &f), DEFAULT_CAP).unwrap();
        for e in g.elements() {
            let m = e.as_mat().unwrap();
            let w = t.value(Gl2Char::Omega0Plus, m).unwrap();
            let phi = t.value(Gl2Char::Phi1 { k: 1 }, m).unwrap().as_integer().unwrap();
            let mut sum = w.conj();
            sum.add_assign(&w);
            assert_eq!(sum.as_integer(), Some(phi));
        }
    }

    #[test]
    fn bad_params() {
        let f = FqContext::prime(5).unwrap();
        let t = Gl2Table::new(&f).unwrap();
        let id = MatFq::identity(&f, 2);
        assert!(matches!(t.value(Gl2Char::Phi1 { k: 2 }, &id), Err(Error::BadParams(_))));
        assert!(matches!(t.value(Gl2Char::Omega0Plus, &id), Err(Error::BadParams(_))));
        let f2 = FqContext::prime(2).unwrap();
        let t2 = Gl2Table::new(&f2).unwrap();
        let id2 = MatFq::identity(&f2, 2);
        assert!(matches!(t2.value(Gl2Char::AlphaAlphaBar { j: 1 }, &id2), Err(Error::BadParams(_))));
    }

    #[test]
    fn c3_family_marking() {
        for q in [3u64, 5, 7, 9] {
            let f = FqContext::of_order(q).unwrap();
            let (w, fr) = c3_generators(&f);
            let id = Element::Mat(MatFq::identity(&f, 2));
            let k = subgroup_elements(&[w.into(), fr.into()], &id, DEFAULT_CAP).unwrap();
            assert_eq!(k.len() as u64, 2 * (q * q - 1));
            let chi = CharacterSpec::Gl2 { table: Gl2Table::new(&f).unwrap(), name: Gl2Char::Phi1 { k: 1 } };
            assert_eq!(marking_sum(&chi, &k).unwrap(), Ratio::from_integer(1), "q = {q}");
        }
        let f4 = FqContext::of_order(4).unwrap();
        let (w, fr) = c3_generators(&f4);
        let id = Element::Mat(MatFq::identity(&f4, 2));
        let k = subgroup_elements(&[w.into(), fr.into()], &id, DEFAULT_CAP).unwrap();
        let chi = CharacterSpec::Gl2 { table: Gl2Table::new(&f4).unwrap(), name: Gl2Char::AlphaAlphaBar { j: 1 } };
        assert_eq!(marking_sum(&chi, &k).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn transitive_and_stabilizer() {
        let f = FqContext::prime(3).unwrap();
        let dom = Arc::new(enumerate_projective_points(&f, 2).unwrap());
        let chi = CharacterSpec::PermChar { domain: dom, reduced: true };
        let g = group_of_spec(&GroupSpec::matrix(GroupKind::Gl, 2, &f), DEFAULT_CAP).unwrap();
        assert_eq!(marking_sum(&chi, g.elements()).unwrap(), Ratio::from_integer(0));
        let borel = [MatFq::elementary(&f, 2, 0, 1, 1).into(), MatFq::diag(&f, &[2, 1]).into()];
        let k = subgroup_elements(&borel, &g.elements()[0], DEFAULT_CAP).unwrap();
        assert!(marking_sum(&chi, &k).unwrap() >= Ratio::from_integer(1));
    }

    #[test]
    fn frobenius_small() {
        let g = sym(4);
        let whole = g.subgroup(&(0..g.order() as u32).collect::<Vec<_>>());
        assert!(frobenius_check(&g, &whole, &CharacterSpec::Trivial).unwrap());
        let stab = g.subgroup_of(&[
            Permutation::from_cycles(4, &[&[2, 3]]).unwrap().into(),
            Permutation::from_cycles(4, &[&[2, 3, 4]]).unwrap().into(),
        ])
        .unwrap();
        let chi = CharacterSpec::PermChar { domain: Arc::new(enumerate_tuples(4, 1).unwrap()), reduced: true };
        assert_eq!(marking_sum(&chi, &stab.element_list(&g)).unwrap(), Ratio::from_integer(1));
        assert!(frobenius_check(&g, &stab, &chi).unwrap());
        assert!(frobenius_check(&g, &stab, &CharacterSpec::Sign).unwrap());
    }

    #[test]
    fn xmin_examples() {
        assert_eq!(xmin_abelian(&[12]).unwrap().size, 2);
        assert_eq!(xmin_abelian(&[2, 2, 2]).unwrap().size, 7);
        assert_eq!(xmin_abelian(&[6, 2]).unwrap().size, 4);
        assert_eq!(xmin_bruteforce(&[2]).unwrap(), 1);
        assert_eq!(xmin_bruteforce(&[6, 2]).unwrap(), 4);
        assert_eq!(xmin_bruteforce(&[12]).unwrap(), 2);
        assert_eq!(xmin_bruteforce(&[2, 2, 2]).unwrap(), 7);
    }

    #[test]
    fn extension_examples() {
        let r = verify_extension_inequality(&[12], &[3]).unwrap();
        assert_eq!((r.x_quotient, r.x_group, r.x_sub, r.index), (1, 2, 1, 4));
        assert!(r.left && r.right);
        let r = verify_extension_inequality(&[2, 2], &[2]).unwrap();
        assert_eq!((r.x_quotient, r.x_group, r.index * r.x_sub + r.x_quotient), (1, 3, 3));
        assert!(matches!(verify_extension_inequality(&[12], &[5]), Err(Error::NotSubgroup(_))));
    }
}
