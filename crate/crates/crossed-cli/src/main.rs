use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crossed::braided::{center_braiding, turaev_braiding, verify_braiding};
use crossed::category::verify_crossed_category;
use crossed::center::{self, CenterError};
use crossed::group::{self, FiniteGroup, GroupError};
use crossed::io::{self, GroupFile};
use crossed::matched::{from_exact_factorization, verify_matched_pair, zappa_szep};
use crossed::report::VerificationReport;
use crossed::words::check_coherence_all;

#[derive(Parser)]
#[command(name = "crossed", version, about = "Verify matched pairs, crossed categories and their crossed centers")]
struct Cli {
    /// Render reports as PASS/FAIL lines instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for exhaustive sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Node budget for coherence words.
    #[arg(long, global = true, default_value_t = 6)]
    max_nodes: usize,
    /// Maximum arity for coherence words.
    #[arg(long, global = true, default_value_t = 3)]
    arity: usize,
    /// Include wall-clock timing in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Group,
    MatchedPair,
    BraidedPair,
    Category,
    Center,
}

#[derive(Subcommand)]
enum Command {
    /// Check a file against the axioms of its kind.
    Verify { kind: Kind, file: PathBuf },
    /// Write the Zappa-Szep product of a matched pair as a group file.
    ZappaSzep {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Extract a matched pair from an exact factorization H = G·Γ.
    Factorize {
        group: PathBuf,
        /// Generators of G, as indices or element names.
        #[arg(long, value_delimiter = ',')]
        gens_g: Vec<String>,
        /// Generators of Γ.
        #[arg(long, value_delimiter = ',')]
        gens_gamma: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the Turaev braided pair of a group.
    Turaev {
        group: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the braided pair induced on (G⋈Γ, G×Γ).
    CenterPair {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the crossed center and verify its braided structure.
    Center {
        category: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Bounded coherence check over crossed-monoidal words.
    Coherence {
        #[arg(long)]
        category: PathBuf,
    },
}

/// A report to print plus whether every check passed.
struct Output {
    body: Value,
    pass: bool,
}

impl Output {
    fn report(r: VerificationReport) -> Self {
        Output { pass: r.passed(), body: r.to_json() }
    }
}

fn base(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn elements(g: &FiniteGroup, names: &[String]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|s| {
            let s = s.trim();
            s.parse::<usize>()
                .ok()
                .filter(|&i| i < g.order())
                .or_else(|| g.element_by_name(s))
                .ok_or_else(|| anyhow!("unknown element {s:?}"))
        })
        .collect()
}

fn verify_group_text(text: &str) -> Result<VerificationReport> {
    let f: GroupFile = serde_json::from_str(text).context("parsing group file")?;
    if f.table.len() != f.order {
        bail!("order {} but table has {} rows", f.order, f.table.len());
    }
    let mut r = VerificationReport::new();
    let names = ["identity", "inverses", "associativity"];
    match group::validate_named(&f.name, f.table, f.identity) {
        Ok(_) => names.iter().for_each(|n| r.check(*n, None)),
        Err(e) => {
            let failed = match e {
                GroupError::NoIdentity { .. } => "identity",
                GroupError::NoInverse(_) => "inverses",
                GroupError::AssocViolation(..) => "associativity",
                other => bail!("invalid group table: {other}"),
            };
            for n in names {
                r.check(n, (n == failed).then(|| e.witness()));
            }
        }
    }
    Ok(r)
}

fn center_error(e: CenterError) -> anyhow::Error {
    anyhow!("center: {e}")
}

/// Writes `v` to `out` and re-verifies it, or returns `v` itself when no path is given.
fn emit(v: Value, out: Option<&Path>, reverify: impl Fn(&Path) -> Result<VerificationReport>) -> Result<Output> {
    match out {
        None => Ok(Output { body: v, pass: true }),
        Some(p) => {
            io::write_json(p, &v)?;
            let r = reverify(p)?;
            let mut body = r.to_json();
            body["output"] = json!(p.display().to_string());
            Ok(Output { pass: r.passed(), body })
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Verify { kind, file } => {
            let text = read(file)?;
            let b = base(file);
            let r = match kind {
                Kind::Group => verify_group_text(&text)?,
                Kind::MatchedPair => verify_matched_pair(&io::parse_matched_pair(&text, &b)?),
                Kind::BraidedPair => {
                    let bp = io::parse_braided_pair(&text, &b)?;
                    let mut r = VerificationReport::new();
                    let mp = verify_matched_pair(&bp.mp);
                    let ok = mp.passed();
                    r.extend_prefixed("mp", mp);
                    if ok {
                        r.extend_prefixed("braiding", verify_braiding(&bp));
                    }
                    r
                }
                Kind::Category => verify_crossed_category(&io::parse_category(&text, &b)?),
                Kind::Center => {
                    let cat = io::parse_category(&text, &b)?;
                    let cr = verify_crossed_category(&cat);
                    if !cr.passed() {
                        let mut r = VerificationReport::new();
                        r.extend_prefixed("category", cr);
                        r
                    } else {
                        center::verify_center_braided(&cat).map_err(center_error)?
                    }
                }
            };
            Ok(Output::report(r.with_digest_of(text.as_bytes())))
        }
        Command::ZappaSzep { file, out } => {
            let text = read(file)?;
            let mp = io::parse_matched_pair(&text, &base(file))?;
            let r = verify_matched_pair(&mp);
            if !r.passed() {
                return Ok(Output::report(r.with_digest_of(text.as_bytes())));
            }
            let zs = zappa_szep(&mp)?;
            let g = zs.group.with_name(format!("{}⋈{}", mp.g.name(), mp.gamma.name()));
            emit(io::group_to_json(&g), out.as_deref(), |p| verify_group_text(&read(p)?))
        }
        Command::Factorize { group, gens_g, gens_gamma, out } => {
            let h = io::load_group(group)?;
            let a = group::subgroup_from_generators(&h, &elements(&h, gens_g)?);
            let b = group::subgroup_from_generators(&h, &elements(&h, gens_gamma)?);
            let mp = from_exact_factorization(&h, &a, &b)?;
            emit(io::matched_pair_to_json(&mp), out.as_deref(), |p| Ok(verify_matched_pair(&io::load_matched_pair(p)?)))
        }
        Command::Turaev { group, out } => {
            let g = io::load_group(group)?;
            emit(io::braided_pair_to_json(&turaev_braiding(&g)), out.as_deref(), |p| Ok(verify_braiding(&io::load_braided_pair(p)?)))
        }
        Command::CenterPair { file, out } => {
            let mp = io::load_matched_pair(file)?;
            let r = verify_matched_pair(&mp);
            if !r.passed() {
                return Ok(Output::report(r));
            }
            let b = center_braiding(&mp)?;
            emit(io::braided_pair_to_json(&b), out.as_deref(), |p| {
                let b = io::load_braided_pair(p)?;
                let mut r = VerificationReport::new();
                r.extend_prefixed("mp", verify_matched_pair(&b.mp));
                r.extend_prefixed("braiding", verify_braiding(&b));
                Ok(r)
            })
        }
        Command::Center { category, out } => {
            let text = read(category)?;
            let cat = io::parse_category(&text, &base(category))?;
            let cr = verify_crossed_category(&cat);
            if !cr.passed() {
                let mut r = VerificationReport::new();
                r.extend_prefixed("category", cr);
                return Ok(Output::report(r));
            }
            let mut body = center::center_report(&cat).map_err(center_error)?;
            body["digest"] = json!(crossed::report::digest(text.as_bytes()));
            let pass = body["pass"] == json!(true);
            if let Some(p) = out {
                io::write_json(p, &body)?;
            }
            Ok(Output { body, pass })
        }
        Command::Coherence { category } => {
            let text = read(category)?;
            let cat = io::parse_category(&text, &base(category))?;
            let mut r = VerificationReport::new();
            r.extend_prefixed("category", verify_crossed_category(&cat));
            let c = check_coherence_all(&cat, cli.max_nodes, cli.arity);
            r.stats = c.stats.clone();
            c.checks.into_iter().for_each(|x| r.push(x));
            Ok(Output::report(r.with_digest_of(text.as_bytes())))
        }
    }
}

fn render_pretty(v: &Value) -> String {
    let Some(checks) = v.get("checks").and_then(Value::as_array) else {
        return serde_json::to_string_pretty(v).expect("serializable");
    };
    let mut s = String::new();
    for c in checks {
        let name = c["name"].as_str().unwrap_or("?");
        if c["pass"] == json!(true) {
            s.push_str(&format!("PASS {name}\n"));
        } else {
            s.push_str(&format!("FAIL {name}: {}\n", c.get("witness").unwrap_or(&Value::Null)));
        }
    }
    for key in ["simples", "gradeHistogram", "stats"] {
        if let Some(x) = v.get(key) {
            let shown = match x {
                Value::Array(a) => json!(a.len()),
                other => other.clone(),
            };
            s.push_str(&format!("{key}: {shown}\n"));
        }
    }
    if let Some(d) = v.get("digest").and_then(Value::as_str) {
        s.push_str(&format!("digest: {d}\n"));
    }
    s.push_str(if v["pass"] == json!(true) { "result: pass" } else { "result: fail" });
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(mut out) => {
            if cli.timing {
                out.body["timing_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            let text = if cli.pretty { render_pretty(&out.body) } else { serde_json::to_string(&out.body).expect("serializable") };
            // A closed pipe is not a verification failure.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
