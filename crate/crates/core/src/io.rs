//! Text format for a group header and a list of elements.
//!
//! ```text
//! # comment
//! group sl n=2 q=4 modulus=1,1,1
//! mat 2 0 0 3
//! ```
//!
//! Permutation lines `perm i1 ... in` give one-line images, 1-based. Matrix
//! lines `mat a11 a12 ... ann` are row-major with field elements written as
//! base-p digit integers.

use std::fmt::Write as _;

use crate::certify::{GroupKind, GroupSpec};
use crate::domain::{
    enumerate_flags, enumerate_nonzero_vectors, enumerate_projective_points, enumerate_subsets, enumerate_tuples,
    Domain, FlagSignature,
};
use crate::error::{Error, Result};
use crate::field::{prime_power, FqContext, MatFq};
use crate::group::Element;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub spec: GroupSpec,
    pub elements: Vec<Element>,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn parse_int<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| syntax(line, format!("bad {what}: {s:?}")))
}

fn parse_header(line: usize, words: &[&str]) -> Result<GroupSpec> {
    let kind = words
        .get(1)
        .and_then(|k| GroupKind::parse(k))
        .ok_or_else(|| syntax(line, "expected group kind sn|sl|gl|psl|pgl"))?;
    let (mut n, mut q, mut modulus) = (None, None, None);
    for w in &words[2..] {
        let (key, val) = w.split_once('=').ok_or_else(|| syntax(line, format!("expected key=value, got {w:?}")))?;
        let slot_taken = match key {
            "n" => n.replace(parse_int::<usize>(line, val, "n")?).is_some(),
            "q" => q.replace(parse_int::<u64>(line, val, "q")?).is_some(),
            "modulus" => {
                let coeffs = val.split(',').map(|c| parse_int::<u32>(line, c, "modulus coefficient")).collect::<Result<Vec<_>>>()?;
                modulus.replace(coeffs).is_some()
            }
            _ => return Err(syntax(line, format!("unknown key {key:?}"))),
        };
        if slot_taken {
            return Err(syntax(line, format!("duplicate key {key:?}")));
        }
    }
    let n = n.ok_or_else(|| syntax(line, "missing n="))?;
    if n == 0 {
        return Err(syntax(line, "n must be positive"));
    }
    if kind == GroupKind::Sn {
        if q.is_some() || modulus.is_some() {
            return Err(syntax(line, "sn takes no field"));
        }
        return Ok(GroupSpec::sn(n));
    }
    let q = q.ok_or_else(|| syntax(line, "missing q="))?;
    let (p, e) = prime_power(q).ok_or_else(|| syntax(line, format!("q = {q} is not a prime power")))?;
    let ctx = match modulus {
        Some(m) => FqContext::new(p, e, Some(&m)).map_err(|err| match err {
            Error::ReducibleModulus(msg) => Error::ModulusMismatch(msg),
            other => other,
        })?,
        None => FqContext::new(p, e, None)?,
    };
    if !(1..=16).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    Ok(GroupSpec::matrix(kind, n, &ctx))
}

fn parse_element(line: usize, spec: &GroupSpec, words: &[&str]) -> Result<Element> {
    let nums = words[1..].iter().map(|w| parse_int::<u32>(line, w, "entry")).collect::<Result<Vec<_>>>()?;
    let not_in = |msg: String| Error::ElementNotInGroup { line, msg };
    let elem: Element = match (words[0], spec.ctx.as_ref()) {
        ("perm", None) => {
            if nums.len() != spec.n {
                return Err(syntax(line, format!("expected {} images, got {}", spec.n, nums.len())));
            }
            Permutation::from_one_line(&nums).map_err(|e| not_in(e.to_string()))?.into()
        }
        ("mat", Some(ctx)) => {
            if nums.len() != spec.n * spec.n {
                return Err(syntax(line, format!("expected {} entries, got {}", spec.n * spec.n, nums.len())));
            }
            MatFq::new(ctx, spec.n, nums).map_err(|e| not_in(e.to_string()))?.into()
        }
        ("perm", Some(_)) => return Err(syntax(line, "perm line in a matrix group")),
        ("mat", None) => return Err(syntax(line, "mat line in sn")),
        (w, _) => return Err(syntax(line, format!("unknown line type {w:?}"))),
    };
    spec.check_element(&elem).map_err(|e| not_in(e.to_string()))?;
    Ok(elem)
}

/// Parses a document; line numbers in errors are 1-based.
pub fn parse(text: &str) -> Result<InputDocument> {
    let mut spec: Option<GroupSpec> = None;
    let mut elements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        match (&spec, words[0]) {
            (None, "group") => spec = Some(parse_header(line, &words)?),
            (None, _) => return Err(syntax(line, "expected a group header first")),
            (Some(_), "group") => return Err(syntax(line, "second group header")),
            (Some(s), _) => elements.push(parse_element(line, s, &words)?),
        }
    }
    let spec = spec.ok_or_else(|| syntax(text.lines().count().max(1), "missing group header"))?;
    Ok(InputDocument { spec, elements })
}

/// Prints a document so that `parse(print(d)) == d`. The modulus is written
/// for proper extension fields.
pub fn print(doc: &InputDocument) -> String {
    let mut out = format!("group {} n={}", doc.spec.kind.as_str(), doc.spec.n);
    if let Some(ctx) = &doc.spec.ctx {
        write!(out, " q={}", ctx.q()).unwrap();
        if ctx.e() > 1 {
            let m: Vec<String> = ctx.modulus().iter().map(|c| c.to_string()).collect();
            write!(out, " modulus={}", m.join(",")).unwrap();
        }
    }
    out.push('\n');
    for e in &doc.elements {
        match e {
            Element::Perm(p) => {
                let s: Vec<String> = p.one_line().iter().map(|x| x.to_string()).collect();
                writeln!(out, "perm {}", s.join(" ")).unwrap();
            }
            Element::Mat(m) => {
                let s: Vec<String> = m.entries().iter().map(|x| x.to_string()).collect();
                writeln!(out, "mat {}", s.join(" ")).unwrap();
            }
        }
    }
    out
}

/// A domain from its label: `tuplesK`, `subsetsK`, `points`, `vectors` or
/// `flags(d1,...,dk)` (parentheses optional).
pub fn domain_from_label(label: &str, spec: &GroupSpec) -> Result<Domain> {
    let bad = || Error::BadParams(format!("unknown domain {label:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match (spec.ctx.as_ref(), label) {
        (None, l) if l.starts_with("tuples") => enumerate_tuples(spec.n, num(&l[6..])?),
        (None, l) if l.starts_with("subsets") => enumerate_subsets(spec.n, num(&l[7..])?),
        (Some(ctx), "points") => enumerate_projective_points(ctx, spec.n),
        (Some(ctx), "vectors") => enumerate_nonzero_vectors(ctx, spec.n),
        (Some(ctx), l) if l.starts_with("flags") => {
            let inner = l[5..].trim_start_matches('(').trim_end_matches(')');
            let dims = inner.split(',').map(num).collect::<Result<Vec<_>>>()?;
            enumerate_flags(ctx, spec.n, &FlagSignature::new(dims, spec.n)?)
        }
        _ => Err(bad()),
    }
}
