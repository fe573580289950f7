//! Generation certificates.
//!
//! Each criterion reduces to connectivity of Schreier graphs on small
//! permutation modules plus cheap side conditions. Where the theorems do not
//! apply, the stabilizer-chain order decides.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::domain::{
    enumerate_flags, enumerate_nonzero_vectors, enumerate_projective_points, enumerate_subsets,
    enumerate_tuples, Domain, FlagSignature,
};
use crate::error::{Error, Result};
use crate::field::{gl_order, psl_order, sl_order, FqContext, MatFq};
use crate::graph::build_graph;
use crate::group::{Element, SymmetricSet};
use crate::perm::{factorial, Permutation, StabilizerChain};

/// Shown in text output before a witness list is cut short.
const WITNESS_PREVIEW: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Sn,
    Sl,
    Gl,
    Psl,
    Pgl,
}

impl GroupKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupKind::Sn => "sn",
            GroupKind::Sl => "sl",
            GroupKind::Gl => "gl",
            GroupKind::Psl => "psl",
            GroupKind::Pgl => "pgl",
        }
    }

    pub fn parse(s: &str) -> Option<GroupKind> {
        Some(match s {
            "sn" => GroupKind::Sn,
            "sl" => GroupKind::Sl,
            "gl" => GroupKind::Gl,
            "psl" => GroupKind::Psl,
            "pgl" => GroupKind::Pgl,
            _ => return None,
        })
    }

    pub fn is_matrix(&self) -> bool {
        !matches!(self, GroupKind::Sn)
    }
}

/// The ambient group `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
    pub ctx: Option<Arc<FqContext>>,
}

impl GroupSpec {
    pub fn sn(n: usize) -> Self {
        GroupSpec { kind: GroupKind::Sn, n, ctx: None }
    }

    pub fn matrix(kind: GroupKind, n: usize, ctx: &Arc<FqContext>) -> Self {
        GroupSpec { kind, n, ctx: Some(ctx.clone()) }
    }

    pub fn q(&self) -> Option<u32> {
        self.ctx.as_ref().map(|c| c.q())
    }

    /// `|G|`; for the projective kinds, the order of the central quotient.
    pub fn order(&self) -> BigUint {
        let q = self.q().unwrap_or(0) as u64;
        match self.kind {
            GroupKind::Sn => factorial(self.n),
            GroupKind::Sl => sl_order(self.n, q),
            GroupKind::Gl => gl_order(self.n, q),
            GroupKind::Psl => psl_order(self.n, q),
            GroupKind::Pgl => sl_order(self.n, q),
        }
    }

    /// Checks that `g` is an element of `G` (for the projective kinds, of
    /// the covering matrix group).
    pub fn check_element(&self, g: &Element) -> Result<()> {
        match (self.kind, g) {
            (GroupKind::Sn, Element::Perm(p)) => {
                if p.degree() != self.n {
                    return Err(Error::DegreeMismatch { expected: self.n, found: p.degree() });
                }
                Ok(())
            }
            (GroupKind::Sn, _) | (_, Element::Perm(_)) => Err(Error::KindMismatch),
            (kind, Element::Mat(m)) => {
                let ctx = self.ctx.as_ref().ok_or(Error::ContextMismatch)?;
                if m.dim() != self.n || **m.ctx() != **ctx {
                    return Err(Error::ContextMismatch);
                }
                let det = m.det();
                if det == 0 {
                    return Err(Error::SingularMatrix);
                }
                if matches!(kind, GroupKind::Sl | GroupKind::Psl) && det != 1 {
                    return Err(Error::NotUnimodular);
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.kind.as_str(), self.n)?;
        if let Some(q) = self.q() {
            write!(f, " q={q}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Charset {
    #[default]
    Auto,
    Appendix8,
    Classic12,
    Oracle,
}

impl Charset {
    pub fn as_str(&self) -> &'static str {
        match self {
            Charset::Auto => "auto",
            Charset::Appendix8 => "appendix8",
            Charset::Classic12 => "classic12",
            Charset::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Option<Charset> {
        Some(match s {
            "auto" => Charset::Auto,
            "appendix8" => Charset::Appendix8,
            "classic12" => Charset::Classic12,
            "oracle" => Charset::Oracle,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub charset: Charset,
    pub allow_fallback: bool,
    /// Accept a charset outside the range of `n` it is proved for.
    pub force: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { charset: Charset::Auto, allow_fallback: true, force: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Criterion,
    Fallback,
}

/// Evidence that a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// Node set of the component of node 0 in a disconnected graph.
    Component { size: usize, of: usize, nodes: Vec<u32> },
    /// Every element of Sigma is even.
    InsideAlternating,
    /// The determinants generate a proper subgroup of `F_q^*`.
    DetSubgroup { order: u64, of: u64 },
    /// The stabilizer chain order falls short of `|G|`.
    Order { found: String, expected: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Component { size, of, nodes } => {
                let shown: Vec<String> = nodes.iter().take(WITNESS_PREVIEW).map(|x| x.to_string()).collect();
                let more = if nodes.len() > WITNESS_PREVIEW { " ..." } else { "" };
                write!(f, "component of node 0 has {size} of {of} nodes: {}{more}", shown.join(" "))
            }
            Witness::InsideAlternating => write!(f, "Sigma is contained in A_n"),
            Witness::DetSubgroup { order, of } => write!(f, "det subgroup has order {order} < {of}"),
            Witness::Order { found, expected } => write!(f, "order {found} < {expected}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub domain: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub group: String,
    pub sigma_size: usize,
    pub generates: bool,
    pub method: Method,
    pub charset_used: String,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Verdict {
    fn new(spec: &GroupSpec, sigma: &SymmetricSet, method: Method, charset: &str, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let mut warnings = Vec::new();
        if sigma.contains_identity() {
            warnings.push("Sigma contains the identity".to_string());
        }
        Verdict {
            group: spec.to_string(),
            sigma_size: sigma.len(),
            generates: checks.iter().all(|c| c.passed),
            method,
            charset_used: charset.to_string(),
            checks,
            warnings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("group: {}\n", self.group));
        out.push_str(&format!("|Sigma|: {}\n", self.sigma_size));
        let method = match self.method {
            Method::Criterion => "criterion",
            Method::Fallback => "fallback",
        };
        out.push_str(&format!("method: {method} ({})\n", self.charset_used));
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("check {} [{}]: {status}\n", c.name, c.domain));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}\n"));
            }
        }
        out.push_str(&format!("generates: {}\n", if self.generates { "yes" } else { "no" }));
        out
    }
}

fn connectivity_check(domain: &Domain, sigma: &SymmetricSet) -> Result<Check> {
    let g = build_graph(domain, sigma)?;
    let (connected, witness) = g.is_connected();
    let label = domain.label();
    Ok(Check {
        name: format!("connected:{label}"),
        domain: label,
        passed: connected,
        witness: witness.map(|nodes| Witness::Component { size: nodes.len(), of: g.node_count(), nodes }),
    })
}

fn sign_check(sigma: &SymmetricSet) -> Check {
    let odd = sigma.elements().iter().any(|s| s.as_perm().is_some_and(|p| p.sign() == -1));
    Check {
        name: "sign".into(),
        domain: "sgn".into(),
        passed: odd,
        witness: (!odd).then_some(Witness::InsideAlternating),
    }
}

fn oracle_check(spec: &GroupSpec, sigma: &SymmetricSet) -> Result<Check> {
    let found = match spec.kind {
        GroupKind::Sn => {
            let gens: Vec<Permutation> = sigma.elements().iter().filter_map(|e| e.as_perm().cloned()).collect();
            StabilizerChain::build(&gens)?.order()
        }
        kind => {
            let gens: Vec<MatFq> = sigma.elements().iter().filter_map(|e| e.as_mat().cloned()).collect();
            matrix_group_order(&gens, kind, spec.ctx.as_ref().unwrap(), spec.n)?
        }
    };
    let expected = spec.order();
    let passed = found == expected;
    Ok(Check {
        name: "oracle-order".into(),
        domain: if spec.kind.is_matrix() { "chain".into() } else { "points".into() },
        passed,
        witness: (!passed).then(|| Witness::Order { found: found.to_string(), expected: expected.to_string() }),
    })
}

fn validate(spec: &GroupSpec, sigma: &SymmetricSet) -> Result<()> {
    sigma.elements().iter().try_for_each(|g| spec.check_element(g))
}

fn fallback(spec: &GroupSpec, sigma: &SymmetricSet, opts: &CertifyOptions) -> Result<Verdict> {
    if !opts.allow_fallback {
        return Err(Error::FallbackForbidden);
    }
    let check = oracle_check(spec, sigma)?;
    Ok(Verdict::new(spec, sigma, Method::Fallback, "oracle", vec![check]))
}

/// Certifies `<Sigma> = S_n`.
pub fn certify_sn(n: usize, sigma: &SymmetricSet, opts: &CertifyOptions) -> Result<Verdict> {
    let spec = GroupSpec::sn(n);
    validate(&spec, sigma)?;
    let charset = match opts.charset {
        Charset::Auto if n >= 34 => Charset::Appendix8,
        Charset::Auto if n >= 25 => Charset::Classic12,
        Charset::Auto => Charset::Oracle,
        Charset::Appendix8 if n < 34 && !opts.force => {
            return Err(Error::CharsetInvalidForN { charset: "appendix8", n })
        }
        Charset::Classic12 if n < 25 && !opts.force => {
            return Err(Error::CharsetInvalidForN { charset: "classic12", n })
        }
        c => c,
    };
    let checks = match charset {
        Charset::Oracle => return fallback(&spec, sigma, opts),
        Charset::Appendix8 => {
            let t3 = enumerate_tuples(n, 3)?;
            let s4 = enumerate_subsets(n, 4)?;
            let (a, b) = rayon::join(|| connectivity_check(&t3, sigma), || connectivity_check(&s4, sigma));
            vec![a?, b?, sign_check(sigma)]
        }
        Charset::Classic12 => {
            let t4 = enumerate_tuples(n, 4)?;
            vec![connectivity_check(&t4, sigma)?, sign_check(sigma)]
        }
        Charset::Auto => unreachable!(),
    };
    Ok(Verdict::new(&spec, sigma, Method::Criterion, charset.as_str(), checks))
}

/// Whether the flag criterion is sound for `(n, q)`. Besides `(4, 2)`, it
/// fails at `(3, 2)`: the Frobenius group `7:3 = Gamma L(1, 8)` acts
/// regularly on the 21 complete flags of `F_2^3`.
pub fn flag_criterion_applies(n: usize, q: u32) -> bool {
    n >= 3 && (n, q) != (4, 2) && (n, q) != (3, 2)
}

fn certify_matrix(spec: GroupSpec, sigma: &SymmetricSet, opts: &CertifyOptions) -> Result<Verdict> {
    validate(&spec, sigma)?;
    let ctx = spec.ctx.clone().ok_or(Error::ContextMismatch)?;
    match opts.charset {
        Charset::Appendix8 => return Err(Error::CharsetInvalidForN { charset: "appendix8", n: spec.n }),
        Charset::Classic12 => return Err(Error::CharsetInvalidForN { charset: "classic12", n: spec.n }),
        Charset::Oracle => return fallback(&spec, sigma, opts),
        Charset::Auto => {}
    }
    if !flag_criterion_applies(spec.n, ctx.q()) {
        return fallback(&spec, sigma, opts);
    }
    let flags = enumerate_flags(&ctx, spec.n, &FlagSignature::new(vec![1, 2, 3], spec.n)?)?;
    let mut checks = vec![connectivity_check(&flags, sigma)?];
    let mut charset = "flags(1,2,3)".to_string();
    if matches!(spec.kind, GroupKind::Gl | GroupKind::Pgl) {
        let mats: Vec<MatFq> = sigma.elements().iter().filter_map(|e| e.as_mat().cloned()).collect();
        let (ok, order) = det_subgroup_check(&mats, spec.kind, &ctx, spec.n);
        let of = ctx.q() as u64 - 1;
        checks.push(Check {
            name: "det-subgroup".into(),
            domain: "det".into(),
            passed: ok,
            witness: (!ok).then_some(Witness::DetSubgroup { order, of }),
        });
        charset.push_str("+det");
    }
    Ok(Verdict::new(&spec, sigma, Method::Criterion, &charset, checks))
}

pub fn certify_sl(n: usize, ctx: &Arc<FqContext>, sigma: &SymmetricSet, opts: &CertifyOptions) -> Result<Verdict> {
    certify_matrix(GroupSpec::matrix(GroupKind::Sl, n, ctx), sigma, opts)
}

pub fn certify_psl(n: usize, ctx: &Arc<FqContext>, sigma: &SymmetricSet, opts: &CertifyOptions) -> Result<Verdict> {
    certify_matrix(GroupSpec::matrix(GroupKind::Psl, n, ctx), sigma, opts)
}

pub fn certify_gl(n: usize, ctx: &Arc<FqContext>, sigma: &SymmetricSet, opts: &CertifyOptions) -> Result<Verdict> {
    certify_matrix(GroupSpec::matrix(GroupKind::Gl, n, ctx), sigma, opts)
}

pub fn certify_pgl(n: usize, ctx: &Arc<FqContext>, sigma: &SymmetricSet, opts: &CertifyOptions) -> Result<Verdict> {
    certify_matrix(GroupSpec::matrix(GroupKind::Pgl, n, ctx), sigma, opts)
}

/// Dispatches on the group kind.
pub fn certify(spec: &GroupSpec, sigma: &SymmetricSet, opts: &CertifyOptions) -> Result<Verdict> {
    match spec.kind {
        GroupKind::Sn => certify_sn(spec.n, sigma, opts),
        _ => certify_matrix(spec.clone(), sigma, opts),
    }
}

/// Order of the subgroup of the cyclic group `F_q^*` generated by the
/// determinants (and, for `pgl`, the `n`-th powers); the flag says whether
/// it is all of `F_q^*`.
pub fn det_subgroup_check(sigma: &[MatFq], mode: GroupKind, ctx: &FqContext, n: usize) -> (bool, u64) {
    let m = ctx.q() as u64 - 1;
    let mut order: u64 = 1;
    for s in sigma {
        let o = ctx.element_order(s.det()).expect("invertible matrix") as u64;
        order = order.lcm(&o);
    }
    if mode == GroupKind::Pgl {
        order = order.lcm(&(m / m.gcd(&(n as u64))));
    }
    (order == m, order)
}

/// `|<gens>|` via the permutation action on nonzero vectors (`sl`, `gl`) or
/// on projective points (`psl`, `pgl`, giving the order modulo scalars).
pub fn matrix_group_order(gens: &[MatFq], model: GroupKind, ctx: &Arc<FqContext>, n: usize) -> Result<BigUint> {
    let domain = match model {
        GroupKind::Sl | GroupKind::Gl => enumerate_nonzero_vectors(ctx, n)?,
        GroupKind::Psl | GroupKind::Pgl => enumerate_projective_points(ctx, n)?,
        GroupKind::Sn => return Err(Error::KindMismatch),
    };
    let perms = gens
        .iter()
        .map(|m| domain.induced_permutation(&Element::Mat(m.clone())))
        .collect::<Result<Vec<_>>>()?;
    if perms.is_empty() {
        return Ok(BigUint::from(1u32));
    }
    Ok(StabilizerChain::build(&perms)?.order())
}
