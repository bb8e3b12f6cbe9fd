//! The `valfram` command line.

pub mod parse;

use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{PBase, Val};
use crate::chains::{build_chains, chain_of, MlvChain, DEFAULT_SV_BOUND};
use crate::corpus::{box_family, distance_matrix, eisenstein_seeds, okutsu_classes, Corpus};
use crate::error::Error;
use crate::okutsu::{
    distance_chains, equivalence_criteria, equivalent_chains, frame_from_chain, is_hos_key_sampled, krasner_constant,
    meet, verify_frame, HOS_PAIRS,
};
use crate::poly::Poly;
use crate::sample::{SamplerConfig, DEFAULT_SEED};
use crate::selftest::{run_selftest, SelftestConfig};
use parse::parse_poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

/// Overrides `--seed` when set.
pub const SEED_ENV: &str = "VALFRAM_SEED";

#[derive(Parser, Debug)]
#[command(name = "valfram", version, about = "MacLane-Vaquie chains and Okutsu frames over Q_p")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit aligned text.
    #[arg(long, global = true)]
    text: bool,
    /// Stop refining once singular values exceed this bound.
    #[arg(long, global = true, default_value_t = DEFAULT_SV_BOUND)]
    sv_bound: i64,
    /// Seed of the randomized samplers.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Coefficient bound of the exhaustive sampler.
    #[arg(long, global = true, default_value_t = 8)]
    grid_height: i64,
}

#[derive(Args, Debug, Clone)]
struct Prime {
    #[arg(short, long)]
    prime: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// MacLane-Vaquie chain of each polynomial, or of each branch.
    Chain {
        #[command(flatten)]
        prime: Prime,
        /// Polynomials; read one per line from stdin when absent.
        #[arg(allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Okutsu frame of each irreducible polynomial.
    Frame {
        #[command(flatten)]
        prime: Prime,
        /// Also sample the fundamental property of the frame.
        #[arg(long)]
        verify: bool,
        #[arg(allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Ultrametric distance u(F, G) and the meet of the two leaves.
    Dist {
        #[command(flatten)]
        prime: Prime,
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Partners; read from stdin when absent.
        #[arg(allow_hyphen_values = true)]
        g: Vec<String>,
    },
    /// Okutsu equivalence of F and G.
    Equiv {
        #[command(flatten)]
        prime: Prime,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: Vec<String>,
    },
    /// Whether g is an HOS key polynomial for v_F.
    Hos {
        #[command(flatten)]
        prime: Prime,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: Vec<String>,
    },
    /// Krasner constant: the largest valuation of a difference of roots.
    Krasner {
        #[command(flatten)]
        prime: Prime,
        #[arg(allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Okutsu classes and distance matrix of a family.
    Corpus {
        /// Repeatable.
        #[arg(short, long, required = true)]
        prime: Vec<u64>,
        /// Degree bound of the coefficient box.
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Coefficient bound of the coefficient box.
        #[arg(long, default_value_t = 2)]
        height: i64,
        /// Add Eisenstein samples of degrees 3 and 4.
        #[arg(long)]
        eisenstein: bool,
        /// Explicit family; replaces the box. Read from stdin with `-`.
        #[arg(allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Invariant suites on a small corpus.
    Selftest {
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 2)]
        height: i64,
    },
}

struct Ctx<'a> {
    text: bool,
    sv_bound: Val,
    sampler: SamplerConfig,
    out: &'a mut dyn Write,
}

struct Failure {
    code: i32,
    error: Error,
    input: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        Failure { code: exit_code(&error), error, input: None }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NeedsMorePrecision(_) => EXIT_PRECISION,
        Error::Syntax { .. } => EXIT_USAGE,
        Error::Inconsistent(_) => EXIT_FAILED,
        _ => EXIT_DOMAIN,
    }
}

fn with_input<T>(r: crate::error::Result<T>, input: &str) -> Result<T, Failure> {
    r.map_err(|e| Failure { input: Some(input.to_string()), ..Failure::from(e) })
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let g = &cli.global;
    let seed = match std::env::var(SEED_ENV) {
        Ok(s) => match s.trim().parse() {
            Ok(v) => v,
            Err(_) => {
                let _ = writeln!(err, "{SEED_ENV} must be an unsigned integer, got {s:?}");
                return EXIT_USAGE;
            }
        },
        Err(_) => g.seed,
    };
    let mut ctx = Ctx {
        text: g.text,
        sv_bound: Val::int(g.sv_bound),
        sampler: SamplerConfig { grid_height: g.grid_height, seed, ..SamplerConfig::default() },
        out,
    };
    if g.sv_bound <= 0 || g.grid_height < 0 {
        let _ = writeln!(err, "--sv-bound must be positive and --grid-height nonnegative");
        return EXIT_USAGE;
    }
    match dispatch(&cli.command, &mut ctx, stdin) {
        Ok(code) => code,
        Err(f) => {
            if ctx.text {
                let at = f.input.map(|s| format!(" ({s})")).unwrap_or_default();
                let _ = writeln!(err, "error{at}: {}", f.error);
            } else {
                let v = json!({ "error": f.error.kind(), "message": f.error.to_string(), "input": f.input });
                let _ = writeln!(err, "{v}");
            }
            f.code
        }
    }
}

fn read_lines(stdin: &mut dyn BufRead) -> Result<Vec<String>, Failure> {
    let mut out = Vec::new();
    for line in stdin.lines() {
        let line = line.map_err(|e| Error::InvalidOperand(format!("reading stdin: {e}")))?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            out.push(t.to_string());
        }
    }
    Ok(out)
}

fn inputs(given: &[String], stdin: &mut dyn BufRead) -> Result<Vec<String>, Failure> {
    if given.is_empty() || given == ["-"] {
        read_lines(stdin)
    } else {
        Ok(given.to_vec())
    }
}

fn poly(s: &str) -> Result<Poly, Failure> {
    with_input(parse_poly(s), s)
}

fn base(p: u64) -> Result<PBase, Failure> {
    with_input(PBase::new(p), &p.to_string()).map_err(|f| Failure { code: EXIT_USAGE, ..f })
}

fn certified(s: &str, p: PBase, bound: &Val) -> Result<MlvChain, Failure> {
    with_input(chain_of(&poly(s)?, p, bound), s)
}

fn emit(ctx: &mut Ctx, v: &impl Serialize, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let r = if ctx.text {
        writeln!(ctx.out, "{}", text())
    } else {
        writeln!(ctx.out, "{}", serde_json::to_string(v).expect("serializable"))
    };
    r.map_err(|e| Error::InvalidOperand(format!("writing output: {e}")).into())
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
            cells.join("  ").trim_end().to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn chain_text(c: &crate::chains::ChainJson) -> String {
    let mut rows =
        vec![vec!["phi".to_string(), "gamma".into(), "degree".into(), "weight".into(), "residual_degree".into()]];
    rows.extend(c.nodes.iter().map(|n| {
        vec![n.phi.clone(), n.gamma.clone(), n.degree.to_string(), n.weight.clone(), n.residual_degree.to_string()]
    }));
    format!(
        "{} at p = {}: depth {}, e = {}, f = {}, certified {}\n{}",
        c.poly,
        c.prime,
        c.depth,
        c.e,
        c.f,
        c.certified,
        table(&rows)
    )
}

fn dispatch(cmd: &Command, ctx: &mut Ctx, stdin: &mut dyn BufRead) -> Result<i32, Failure> {
    match cmd {
        Command::Chain { prime, polys } => {
            let p = base(prime.prime)?;
            for s in inputs(polys, stdin)? {
                let f = poly(&s)?;
                let report = with_input(build_chains(&f, p, &ctx.sv_bound), &s)?;
                let chains: Vec<_> = report
                    .branches
                    .iter()
                    .map(|b| b.chain.to_json())
                    .collect::<crate::error::Result<_>>()
                    .map_err(Failure::from)?;
                if let [one] = chains.as_slice() {
                    if one.poly == f.to_string() {
                        emit(ctx, one, || chain_text(one))?;
                        continue;
                    }
                }
                let v = json!({ "prime": p.p(), "poly": f.to_string(), "branches": chains });
                emit(ctx, &v, || {
                    let parts: Vec<String> = chains.iter().map(chain_text).collect();
                    format!("{f}: {} branches\n{}", chains.len(), parts.join("\n"))
                })?;
            }
        }
        Command::Frame { prime, verify, polys } => {
            let p = base(prime.prime)?;
            let mut code = EXIT_OK;
            for s in inputs(polys, stdin)? {
                let chain = certified(&s, p, &ctx.sv_bound)?;
                let frame = with_input(frame_from_chain(&chain), &s)?;
                let fj = with_input(frame.to_json(), &s)?;
                let text = |fj: &crate::okutsu::FrameJson| {
                    let mut rows = vec![vec!["degree".to_string(), "phis".into(), "gamma".into()]];
                    rows.extend(
                        fj.levels.iter().map(|l| vec![l.degree.to_string(), l.phis.join(", "), l.gamma.clone()]),
                    );
                    let w: Vec<String> = fj.weights.iter().map(|(m, w)| format!("({m}, {w})")).collect();
                    format!("{}: weights {}, okutsu bound {}\n{}", fj.poly, w.join(" "), fj.okutsu_bound, table(&rows))
                };
                if *verify {
                    let report = with_input(verify_frame(&frame, &chain, &ctx.sampler), &s)?;
                    let checks: Vec<Value> = report
                        .checks
                        .iter()
                        .map(|c| {
                            json!({
                                "name": c.name,
                                "passed": c.passed,
                                "samples": c.samples,
                                "witness": c.witness.as_ref().map(|w| json!({
                                    "poly": w.poly.to_string(),
                                    "value": w.value.to_frac_string(),
                                    "bound": w.bound.to_frac_string(),
                                })),
                            })
                        })
                        .collect();
                    if !report.passed() {
                        code = EXIT_FAILED;
                    }
                    let v = json!({ "frame": fj, "verified": report.passed(), "checks": checks });
                    emit(ctx, &v, || {
                        let status = match report.first_failure() {
                            None => "fundamental property holds on all samples".to_string(),
                            Some(c) => format!("check {} fails", c.name),
                        };
                        format!("{}\n{status}", text(&fj))
                    })?;
                } else {
                    emit(ctx, &fj, || text(&fj))?;
                }
            }
            return Ok(code);
        }
        Command::Dist { prime, f, g } => {
            let p = base(prime.prime)?;
            let cf = certified(f, p, &ctx.sv_bound)?;
            for s in inputs(g, stdin)? {
                let cg = certified(&s, p, &ctx.sv_bound)?;
                let u = with_input(distance_chains(&cf, &cg), &s)?;
                let node = if cf.poly() == cg.poly() { None } else { Some(with_input(meet(&cf, &cg), &s)?) };
                let v = json!({
                    "prime": p.p(),
                    "f": cf.poly().to_string(),
                    "g": cg.poly().to_string(),
                    "u": u.to_frac_string(),
                    "meet": node.as_ref().map(|n| n.to_string()),
                });
                emit(ctx, &v, || {
                    let m = node.as_ref().map_or("undefined".to_string(), |n| n.to_string());
                    format!("u({}, {}) = {u}  meet {m}", cf.poly(), cg.poly())
                })?;
            }
        }
        Command::Equiv { prime, f, g } => {
            let p = base(prime.prime)?;
            let cf = certified(f, p, &ctx.sv_bound)?;
            for s in inputs(g, stdin)? {
                let cg = certified(&s, p, &ctx.sv_bound)?;
                let eq = with_input(equivalent_chains(&cf, &cg), &s)?;
                let u = with_input(crate::okutsu::resultant_distance(cf.poly(), cg.poly(), p), &s)?;
                let weight = if cf.poly().deg() >= 2 {
                    Some(with_input(cf.previous_primitive(), &s)?.wt().to_frac_string())
                } else {
                    None
                };
                let criteria = if cf.poly().deg() >= 2 && cf.poly().deg() == cg.poly().deg() {
                    Some(with_input(equivalence_criteria(&cf, cg.poly()), &s)?)
                } else {
                    None
                };
                let v = json!({
                    "prime": p.p(),
                    "f": cf.poly().to_string(),
                    "g": cg.poly().to_string(),
                    "equivalent": eq,
                    "u": u.to_frac_string(),
                    "weight": weight,
                    "criteria": criteria.map(|(a, b)| json!({ "closer": a, "rho_equivalent": b })),
                });
                emit(ctx, &v, || eq.to_string())?;
            }
        }
        Command::Hos { prime, f, g } => {
            let p = base(prime.prime)?;
            let cf = certified(f, p, &ctx.sv_bound)?;
            for s in inputs(g, stdin)? {
                let gp = poly(&s)?;
                let hos = with_input(is_hos_key_sampled(&cf, &gp, HOS_PAIRS, ctx.sampler.seed), &s)?;
                let v = json!({ "prime": p.p(), "f": cf.poly().to_string(), "g": gp.to_string(), "hos": hos });
                emit(ctx, &v, || hos.to_string())?;
            }
        }
        Command::Krasner { prime, polys } => {
            let p = base(prime.prime)?;
            for s in inputs(polys, stdin)? {
                let chain = certified(&s, p, &ctx.sv_bound)?;
                let omega = with_input(krasner_constant(&chain), &s)?;
                let v = json!({ "prime": p.p(), "poly": chain.poly().to_string(), "krasner": omega.to_frac_string() });
                emit(ctx, &v, || omega.to_frac_string())?;
            }
        }
        Command::Corpus { prime, max_degree, height, eisenstein, polys } => {
            if *max_degree == 0 || *height <= 0 {
                return Err(Failure {
                    code: EXIT_USAGE,
                    error: Error::InvalidOperand("corpus bounds must be positive".into()),
                    input: None,
                });
            }
            let explicit: Vec<Poly> = if polys.is_empty() {
                Vec::new()
            } else {
                inputs(polys, stdin)?.iter().map(|s| poly(s)).collect::<Result<_, _>>()?
            };
            for &q in prime {
                let p = base(q)?;
                let mut family = if explicit.is_empty() { box_family(*max_degree, *height) } else { explicit.clone() };
                if *eisenstein {
                    family.extend(eisenstein_seeds(q));
                }
                if let Some(bad) = family.iter().find(|f| !f.is_monic() || f.deg() == 0) {
                    return Err(Failure {
                        code: EXIT_DOMAIN,
                        error: Error::InvalidOperand(format!("{bad} is not monic of positive degree")),
                        input: Some(bad.to_string()),
                    });
                }
                let corpus = Corpus::from_family(p, &family)?;
                let classes = okutsu_classes(&corpus)?;
                let matrix = distance_matrix(&corpus)?;
                let names: Vec<String> = corpus.entries.iter().map(|e| e.poly.to_string()).collect();
                let v = json!({
                    "prime": q,
                    "polys": names,
                    "classes": classes,
                    "distances": matrix.iter().map(|r| r.iter().map(Val::to_frac_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                });
                emit(ctx, &v, || {
                    let mut rows = vec![vec!["class".to_string(), "members".into()]];
                    rows.extend(classes.iter().enumerate().map(|(k, c)| {
                        vec![k.to_string(), c.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(", ")]
                    }));
                    let mut dist =
                        vec![std::iter::once(String::new()).chain((0..names.len()).map(|i| i.to_string())).collect()];
                    dist.extend(matrix.iter().enumerate().map(|(i, r)| {
                        std::iter::once(i.to_string()).chain(r.iter().map(Val::to_frac_string)).collect()
                    }));
                    format!("p = {q}: {} polynomials\n{}\n\n{}", names.len(), table(&rows), table(&dist))
                })?;
            }
        }
        Command::Selftest { max_degree, height } => {
            let mut cfg = SelftestConfig::default();
            cfg.corpus.max_degree = *max_degree;
            cfg.corpus.height = *height;
            cfg.sampler.seed = ctx.sampler.seed;
            cfg.sampler.grid_height = ctx.sampler.grid_height;
            let report = run_selftest(&cfg)?;
            let passed = report.passed();
            emit(ctx, &json!({ "passed": passed, "report": report }), || {
                let mut rows = vec![vec!["suite".to_string(), "checked".into(), "failed".into()]];
                rows.extend(
                    report.suites.iter().map(|s| vec![s.name.to_string(), s.checked.to_string(), s.failed.to_string()]),
                );
                for s in &report.suites {
                    for f in &s.failures {
                        rows.push(vec![format!("  {}", s.name), String::new(), f.clone()]);
                    }
                }
                format!("{}\n{}", table(&rows), if passed { "PASS" } else { "FAIL" })
            })?;
            return Ok(if passed { EXIT_OK } else { EXIT_FAILED });
        }
    }
    Ok(EXIT_OK)
}
