use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use folkman::arrow::{decide_on, spectral_claim_holds, verify_certificate, ArrowError, DecideOptions, Effort, Verdict};
use folkman::cut::{
    dual_upper_bound_from, eig_upper_bound, hyperplane_round, local_search_improve, lowrank_ascent, BoundReport,
    Cut, DualOptions, LowRankOptions, SpectralOptions,
};
use folkman::error::{CutError, SpectraError};
use folkman::io::registry::{find_named, parse_recipe, Expected, NamedConstruction};
use folkman::io::{parse_certificate, parse_graph, write_certificate, write_graph, CertificateFile};
use folkman::graph::Graph;
use folkman::spectra::Tier;
use folkman::triangles::{build_triangle_graph_unchecked, coloring_from_cut, find_k4, triangle_count, TriangleGraph};

#[derive(Parser)]
#[command(name = "folkman", version, about = "Decide G -> (3,3) through MAX-CUT bounds on the triangle graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named or recipe graph (e.g. g786, L(17,2), G(941,5)) as a graph file
    Gen {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Vertex, edge and triangle counts, K4-freeness and degree profile
    Stats { graph: String },
    /// Write the triangle graph H_G as a graph file
    Hg {
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Upper bound on MAX-CUT of H_G
    Bound {
        graph: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Dual descent iterations
        #[arg(long, default_value_t = 3)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a large cut of H_G
    Cut {
        graph: String,
        /// Rank of the vector relaxation (default grows with |V(H)|)
        #[arg(long)]
        rank: Option<usize>,
        /// Seeded restarts; stops early once a cut reaches 2t
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide G -> (3,3) and optionally write the certificate
    Decide {
        graph: String,
        #[arg(long, default_value = "standard")]
        effort: Effort,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Replay a certificate against a graph
    Verify { graph: String, cert: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Eig,
    Dual,
    Auto,
}

/// Reads a graph from a file, a registry name, or a recipe.
fn load_graph(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_graph(&text).with_context(|| format!("parsing {arg}"));
    }
    if let Some(named) = find_named(arg) {
        return Ok(named.build()?);
    }
    if let Some(recipe) = parse_recipe(arg) {
        let c = NamedConstruction { name: "recipe", recipe, expected: Expected::default() };
        return Ok(c.build_unchecked()?);
    }
    bail!("'{arg}' is neither a readable file, a registered name, nor a recipe like L(17,2)")
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(report: &BoundReport, tg: &TriangleGraph) {
    let two_t = tg.two_t();
    println!("method: {:?}", report.method);
    match report.upper {
        Some(u) => println!("upper: {u:.6} (cut <= {})", report.upper_floor().unwrap_or(0)),
        None => println!("upper: none"),
    }
    println!("two-t: {two_t}");
    println!("certified: {}", report.certified);
    if let Some(s) = report.spectral() {
        match s.tier {
            Tier::Exact => println!("tier: exact ({:?})", s.method),
            Tier::Numerical { margin } => println!("tier: numerical, margin {margin:.3e} ({:?})", s.method),
        }
        println!("sigma: {:.12}", s.sigma);
        let arrows = report.certified && spectral_claim_holds(report.upper.unwrap_or(f64::INFINITY), s.tier, two_t, tg.h.edge_count());
        println!("{}", if arrows { "bound below 2t: ARROWS" } else { "bound not below 2t: inconclusive" });
    }
}

fn bound(g: &Graph, method: Method, budget: usize, seed: u64) -> Result<()> {
    let tg = build_triangle_graph_unchecked(g)?;
    let profile = Effort::Standard.profile();
    let spectral = SpectralOptions { lanczos: profile.lanczos.clone(), ..SpectralOptions::default() };
    let eig = || eig_upper_bound(&tg.h, &spectral);
    let dual = || -> Result<BoundReport> {
        let va = lowrank_ascent(&tg.h, &LowRankOptions::for_graph(&tg.h, profile.lowrank_sweeps), seed)?;
        let opts = DualOptions { budget, warm_start: None, spectral: spectral.clone() };
        Ok(dual_upper_bound_from(&tg.h, Some(&va), &opts, seed)?)
    };
    let report = match method {
        Method::Eig => eig()?,
        Method::Dual => dual()?,
        Method::Auto => {
            let r = eig()?;
            let decisive = r.certified
                && r.spectral().is_some_and(|s| spectral_claim_holds(r.upper.unwrap_or(f64::INFINITY), s.tier, tg.two_t(), tg.h.edge_count()));
            if decisive || tg.two_t() == 0 {
                r
            } else {
                dual()?
            }
        }
    };
    print_report(&report, &tg);
    Ok(())
}

fn cut(g: &Graph, rank: Option<usize>, trials: usize, seed: u64) -> Result<()> {
    let tg = build_triangle_graph_unchecked(g)?;
    let h = &tg.h;
    let two_t = tg.two_t();
    let mut opts = LowRankOptions::for_graph(h, Effort::Standard.profile().lowrank_sweeps);
    if let Some(r) = rank {
        if r == 0 {
            bail!("--rank must be positive");
        }
        opts.rank = r;
    }
    let mut best: Option<(Cut, usize)> = None;
    for t in 0..trials.max(1) {
        let s = seed.wrapping_add(t as u64);
        let va = lowrank_ascent(h, &opts, s)?;
        let c = local_search_improve(h, &hyperplane_round(&va, h, 16, s)?)?;
        if best.as_ref().is_none_or(|(b, _)| c.size > b.size) {
            best = Some((c, t + 1));
        }
        if best.as_ref().is_some_and(|(b, _)| b.size == two_t) {
            break;
        }
    }
    let (c, found_at) = best.expect("at least one trial");
    println!("cut: {} (restart {found_at})", c.size);
    println!("two-t: {two_t}");
    if c.size == two_t {
        let col = coloring_from_cut(&tg, &c)?;
        let bits: String = col.colors.iter().map(|&b| char::from(b'0' + b)).collect();
        println!("coloring: {bits}");
        println!("NOT_ARROWS");
    } else {
        println!("cut below 2t: inconclusive");
    }
    Ok(())
}

fn decide(g: &Graph, effort: Effort, seed: u64, cert: Option<&Path>) -> Result<()> {
    let opts = DecideOptions::new(effort, seed);
    if let Some(k4) = find_k4(g) {
        return Err(ArrowError::NotFolkmanCandidate(k4).into());
    }
    let tg = build_triangle_graph_unchecked(g)?;
    let d = decide_on(&tg, &opts)?;
    println!("{}", d.verdict);
    println!("two-t: {}", d.two_t);
    if let Some(u) = d.best_upper {
        println!("best-upper: {u:.6}");
    }
    if let Some(l) = d.best_lower {
        println!("best-lower: {l}");
    }
    match (&d.certificate, cert) {
        (Some(c), Some(path)) => {
            let file = CertificateFile::new(g, d.two_t, c.clone());
            fs::write(path, write_certificate(&file)).with_context(|| format!("writing {}", path.display()))?;
            println!("certificate: {}", path.display());
        }
        (None, Some(_)) if d.verdict == Verdict::Undecided => println!("certificate: none (undecided)"),
        _ => {}
    }
    Ok(())
}

/// Returns whether the certificate was accepted.
fn verify(g: &Graph, cert: &Path) -> Result<bool> {
    let text = fs::read_to_string(cert).with_context(|| format!("reading {}", cert.display()))?;
    let file = parse_certificate(&text).with_context(|| format!("parsing {}", cert.display()))?;
    if !file.matches(g) {
        println!("REJECTED: graph hash does not match");
        return Ok(false);
    }
    let two_t = 2 * triangle_count(g) as u64;
    if file.two_t != two_t {
        println!("REJECTED: certificate states two-t {}, graph has {two_t}", file.two_t);
        return Ok(false);
    }
    if verify_certificate(g, &file.certificate)? {
        println!("ACCEPTED");
        Ok(true)
    } else {
        println!("REJECTED: certificate does not establish its claim");
        Ok(false)
    }
}

fn stats(g: &Graph) {
    let t = triangle_count(g);
    println!("vertices: {}", g.vertex_count());
    println!("edges: {}", g.edge_count());
    println!("triangles: {t}");
    println!("two-t: {}", 2 * t);
    match find_k4(g) {
        None => println!("k4-free: yes"),
        Some(k) => println!("k4-free: no {k:?}"),
    }
    let profile: Vec<String> = g.degree_profile().iter().map(|(d, c)| format!("{d}x{c}")).collect();
    println!("degrees: {}", profile.join(" "));
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { spec, output } => emit(&write_graph(&load_graph(&spec)?), output.as_deref())?,
        Command::Stats { graph } => stats(&load_graph(&graph)?),
        Command::Hg { graph, output } => {
            let tg = build_triangle_graph_unchecked(&load_graph(&graph)?)?;
            emit(&write_graph(&tg.h), output.as_deref())?;
        }
        Command::Bound { graph, method, budget, seed } => bound(&load_graph(&graph)?, method, budget, seed)?,
        Command::Cut { graph, rank, trials, seed } => cut(&load_graph(&graph)?, rank, trials, seed)?,
        Command::Decide { graph, effort, seed, cert } => decide(&load_graph(&graph)?, effort, seed, cert.as_deref())?,
        Command::Verify { graph, cert } => {
            if !verify(&load_graph(&graph)?, &cert)? {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn is_numerical(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<SpectraError>().is_some_and(|s| !matches!(s, SpectraError::DimensionMismatch { .. }))
            || matches!(c.downcast_ref::<CutError>(), Some(CutError::Spectra(_)))
            || matches!(c.downcast_ref::<ArrowError>(), Some(ArrowError::Spectra(_)) | Some(ArrowError::Cut(CutError::Spectra(_))))
    })
}

fn main() -> ExitCode {
    // clap's own exit code 2 would collide with numerical failures
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_numerical(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
