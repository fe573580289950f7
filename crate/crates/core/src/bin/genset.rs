use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;

use genset::certify::{certify, matrix_group_order, CertifyOptions, Charset, GroupKind};
use genset::charcalc::{decompose_theta, kostka, partitions_of, unipotent_degrees, Partition, ThetaVariant};
use genset::graph::{build_graph, default_max_iter, DEFAULT_TOL};
use genset::group::{Element, SymmetricSet};
use genset::io::{domain_from_label, parse, InputDocument};
use genset::marking::{marking_report, parse_character, subgroup_elements, xmin_abelian, xmin_bruteforce, DEFAULT_CAP};
use genset::perm::{chain_build, Permutation};
use genset::Error;

#[derive(Parser)]
#[command(name = "genset", version, about = "Generation certificates for S_n and (P)SL/(P)GL(n, q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fallback {
    Allow,
    Forbid,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a symmetric set generates the declared group.
    Certify {
        file: PathBuf,
        /// Add missing inverses before certifying.
        #[arg(long)]
        symmetrize: bool,
        #[arg(long, default_value = "auto")]
        charset: String,
        #[arg(long, value_enum, default_value = "allow")]
        fallback: Fallback,
        #[arg(long)]
        json: bool,
        /// Use a charset outside its justified range of n.
        #[arg(long)]
        force: bool,
    },
    /// Connectivity and second eigenvalue of a Schreier graph.
    Spectrum {
        file: PathBuf,
        /// tuplesK, subsetsK, points, vectors or flags(d1,...,dk).
        #[arg(long)]
        domain: String,
        #[arg(long)]
        symmetrize: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Print the edge list instead of the report.
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decompose theta1, theta2 or theta2_ind into unipotent characters.
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        variant: String,
    },
    /// Degrees of the unipotent characters of GL(n, q).
    Degrees {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
    },
    /// Kostka numbers K_{mu lambda}: all mu for one lambda, or a single entry.
    Kostka {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Marking sums of characters on the subgroup generated by a file's elements.
    Mark {
        file: PathBuf,
        /// Comma-separated: trivial, sign, theta1, phi1, alpha_alphabar, omega0plus, psi1, perm:<domain>, permfull:<domain>.
        #[arg(long, value_delimiter = ',')]
        chars: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Minimal marking-set size X(G) of an abelian group.
    Xmin {
        /// Invariant factors, e.g. 12 or 2,2,2.
        #[arg(long, value_delimiter = ',', required = true)]
        abelian: Vec<u64>,
        /// Exact set cover over the subgroup lattice instead of the closed form.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Order of the generated group by a stabilizer chain.
    OracleOrder {
        file: PathBuf,
    },
}

fn read_doc(path: &PathBuf) -> Result<InputDocument, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| e.to_string())
}

fn sigma_of(doc: &InputDocument, symmetrize: bool) -> Result<SymmetricSet, String> {
    let elems = doc.elements.clone();
    let r = if symmetrize { SymmetricSet::symmetrize(elems) } else { SymmetricSet::new(elems) };
    r.map_err(|e| e.to_string())
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn verdict_code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn generated_order(doc: &InputDocument) -> genset::Result<BigUint> {
    let spec = &doc.spec;
    if doc.elements.is_empty() {
        return Ok(BigUint::from(1u32));
    }
    match spec.kind {
        GroupKind::Sn => {
            let perms: Vec<Permutation> = doc.elements.iter().filter_map(|e| e.as_perm().cloned()).collect();
            Ok(chain_build(&perms)?.order())
        }
        kind => {
            let mats: Vec<_> = doc.elements.iter().filter_map(|e| e.as_mat().cloned()).collect();
            matrix_group_order(&mats, kind, spec.ctx.as_ref().unwrap(), spec.n)
        }
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Certify { file, symmetrize, charset, fallback, json, force } => {
            let doc = match read_doc(&file) {
                Ok(d) => d,
                Err(e) => return fail(e),
            };
            let sigma = match sigma_of(&doc, symmetrize) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let Some(charset) = Charset::parse(&charset) else {
                return fail(format!("unknown charset {charset:?}"));
            };
            let opts = CertifyOptions { charset, allow_fallback: matches!(fallback, Fallback::Allow), force };
            match certify(&doc.spec, &sigma, &opts) {
                Ok(v) => {
                    if json {
                        println!("{}", v.to_json());
                    } else {
                        print!("{}", v.to_text());
                    }
                    verdict_code(v.generates)
                }
                Err(Error::FallbackForbidden) => {
                    eprintln!("error: {}", Error::FallbackForbidden);
                    ExitCode::from(3)
                }
                Err(e) => fail(e),
            }
        }
        Command::Spectrum { file, domain, symmetrize, tol, max_iter, dump, json } => {
            let result = (|| -> Result<(String, bool), String> {
                let doc = read_doc(&file)?;
                let sigma = sigma_of(&doc, symmetrize)?;
                let dom = domain_from_label(&domain, &doc.spec).map_err(|e| e.to_string())?;
                let g = build_graph(&dom, &sigma).map_err(|e| e.to_string())?;
                let (connected, witness) = g.is_connected();
                if dump {
                    return Ok((g.dump(), connected));
                }
                let report = g.lambda2(tol, max_iter.unwrap_or_else(|| default_max_iter(g.node_count())));
                if json {
                    let v = serde_json::json!({
                        "domain": dom.label(),
                        "nodes": g.node_count(),
                        "degree": g.degree(),
                        "connected": connected,
                        "component": witness,
                        "spectrum": report,
                    });
                    return Ok((format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), connected));
                }
                let mut out = format!(
                    "domain: {}\nnodes: {}\ndegree: {}\nconnected: {}\n",
                    dom.label(),
                    g.node_count(),
                    g.degree(),
                    if connected { "yes" } else { "no" }
                );
                if let Some(w) = witness {
                    out += &format!("component: {} nodes\n", w.len());
                }
                out += &format!("lambda1: {}\n", report.lambda1);
                match report.lambda2_estimate {
                    Some(l) => out += &format!("lambda2: {l:.10}\n"),
                    None => out += "lambda2: none\n",
                }
                out += &format!(
                    "iterations: {}\nconverged: {}\n",
                    report.iterations,
                    if report.converged { "yes" } else { "no" }
                );
                Ok((out, connected))
            })();
            match result {
                Ok((text, connected)) => {
                    print!("{text}");
                    verdict_code(connected)
                }
                Err(e) => fail(e),
            }
        }
        Command::Decompose { n, variant } => {
            let Some(v) = ThetaVariant::parse(&variant) else {
                return fail(format!("unknown variant {variant:?}"));
            };
            match decompose_theta(n, v) {
                Ok(map) => {
                    for (p, c) in map {
                        println!("{p}: {c}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Degrees { n, q } => match unipotent_degrees(n, q) {
            Ok(list) => {
                for (p, d) in list {
                    println!("{p}: {d}");
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Kostka { lambda, mu } => {
            let lambda: Partition = match lambda.parse() {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            if let Some(mu) = mu {
                let mu: Partition = match mu.parse() {
                    Ok(p) => p,
                    Err(e) => return fail(e),
                };
                return match kostka(&mu, &lambda) {
                    Ok(k) => {
                        println!("{k}");
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(e),
                };
            }
            for mu in partitions_of(lambda.weight()) {
                let k = kostka(&mu, &lambda).expect("same weight");
                if k != 0 {
                    println!("{mu}: {k}");
                }
            }
            ExitCode::SUCCESS
        }
        Command::Mark { file, chars, json } => {
            let result = (|| -> genset::Result<(String, bool)> {
                let text = std::fs::read_to_string(&file)
                    .map_err(|e| Error::BadParams(format!("{}: {e}", file.display())))?;
                let doc = parse(&text)?;
                let specs = chars.iter().map(|c| parse_character(c, &doc.spec)).collect::<genset::Result<Vec<_>>>()?;
                let identity = match &doc.spec.ctx {
                    None => Element::Perm(Permutation::identity(doc.spec.n)),
                    Some(ctx) => Element::Mat(genset::field::MatFq::identity(ctx, doc.spec.n)),
                };
                let elems = subgroup_elements(&doc.elements, &identity, DEFAULT_CAP)?;
                let report = marking_report(&specs, &elems)?;
                if json {
                    let v = serde_json::json!({ "order": elems.len(), "report": report });
                    return Ok((format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), report.overall));
                }
                let mut out = format!("|K|: {}\n", elems.len());
                for ((name, sum), marked) in report.sums.iter().zip(&report.marked) {
                    out += &format!("{name}: {sum}{}\n", if *marked { " (marks)" } else { "" });
                }
                out += &format!("marked: {}\n", if report.overall { "yes" } else { "no" });
                Ok((out, report.overall))
            })();
            match result {
                Ok((text, marked)) => {
                    print!("{text}");
                    verdict_code(marked)
                }
                Err(e) => fail(e),
            }
        }
        Command::Xmin { abelian, bruteforce } => {
            let size = if bruteforce {
                xmin_bruteforce(&abelian).map(|s| s as u64)
            } else {
                xmin_abelian(&abelian).map(|r| r.size)
            };
            match size {
                Ok(s) => {
                    println!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::OracleOrder { file } => {
            let doc = match read_doc(&file) {
                Ok(d) => d,
                Err(e) => return fail(e),
            };
            match generated_order(&doc) {
                Ok(order) => {
                    let full = doc.spec.order();
                    println!("order: {order}");
                    println!("group order: {full}");
                    verdict_code(!order.is_zero() && order == full)
                }
                Err(e) => fail(e),
            }
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("GENSET_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    run(Cli::parse())
}
