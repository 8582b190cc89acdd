//! The `haken` command: file-based access to the library operations.
//!
//! Exit status contract: 0 when the requested computation succeeds and any
//! checked property holds; 1 when a checked property is violated (a
//! non-flag complex, a failed invariance, an uncertified hierarchy); 2 on
//! input, format, or usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use haken_core::complex::{parse_complex, write_complex};
use haken_core::construction::{double, verify_quotient_formula};
use haken_core::corpus::{corpus_generate, CorpusItem};
use haken_core::flag::{certify_haken_cell_dual, charney_davis, flag_report};
use haken_core::homology::{homology, is_generalized_homology_sphere};
use haken_core::pattern::{cell_from_flag_sphere, parse_pattern, write_pattern, PatternedComplex};
use haken_core::surgery::{
    certify_hierarchy, cut_open_with_rounds, parse_ledger, run_prehierarchy,
    verify_cut_invariance_with_rounds,
};
use haken_core::Complex;

#[derive(Parser)]
#[command(
    name = "haken",
    version,
    about = "Exact combinatorics of boundary-patterned manifolds"
)]
struct Cli {
    /// Report format: prose or a flat tab-separated table with a header.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Strata,
    Poincare,
    Nerve,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Integer homology profile of a complex.
    Homology { file: PathBuf },
    /// Check that a complex is a generalized homology (n-1)-sphere.
    IsGhs {
        file: PathBuf,
        /// The cell dimension n; the sphere itself has dimension n-1.
        #[arg(long)]
        n: u32,
    },
    /// Flag certification with minimal non-face witnesses.
    FlagCheck { file: PathBuf },
    /// The Charney-Davis quantity as a canonical dyadic.
    CharneyDavis { file: PathBuf },
    /// Certify a complex as the boundary-pattern nerve of a Haken n-cell.
    CertifyCell {
        file: PathBuf,
        #[arg(long)]
        n: u32,
    },
    /// The nerve of a boundary pattern, as a complex listing.
    Nerve {
        file: PathBuf,
        /// Write the nerve here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbifold Euler characteristic of a pattern.
    ChiOrb {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Usefulness checks for a boundary pattern.
    Useful { file: PathBuf },
    /// Build the dual cell of a generalized homology sphere.
    CellFromSphere {
        file: PathBuf,
        /// The cell dimension n; the input must be an (n-1)-sphere.
        #[arg(long)]
        n: u32,
        /// Write the pattern here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double a pattern across mirror facets.
    Double {
        file: PathBuf,
        /// Comma-separated facet names; all facets when omitted.
        #[arg(long, value_delimiter = ',')]
        mirrors: Option<Vec<String>>,
        /// Write the doubled complex here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify chi(double) = 2^l chi^orb for a fully mirrored pattern.
    VerifyDouble { file: PathBuf },
    /// Cut a patterned manifold open along a hypersurface subcomplex.
    Cut {
        file: PathBuf,
        /// The locus: a full subcomplex listing in the carrier's labels.
        #[arg(long)]
        locus: PathBuf,
        /// Barycentric subdivisions before taking the neighborhood.
        #[arg(long, default_value_t = 2)]
        rounds: u32,
        /// Write the cut-open pattern here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check chi^orb invariance under one cut, by all three formulas.
    VerifyCut {
        file: PathBuf,
        #[arg(long)]
        locus: PathBuf,
        #[arg(long, default_value_t = 2)]
        rounds: u32,
    },
    /// Replay a hierarchy ledger and audit every step.
    RunHierarchy {
        ledger: PathBuf,
        #[arg(long)]
        initial: PathBuf,
    },
    /// Emit a deterministic corpus family into a directory.
    Corpus {
        /// One of: barycentric-spheres, join-spheres, polygon-cells.
        #[arg(long)]
        family: String,
        /// Zero keeps canonical labels; anything else permutes them.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    // Restore the default SIGPIPE disposition so `haken ... | head` dies
    // quietly instead of panicking when stdout closes.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

const PASS: ExitCode = ExitCode::SUCCESS;

fn verdict(ok: bool) -> ExitCode {
    if ok {
        PASS
    } else {
        ExitCode::from(1)
    }
}

fn read_complex(path: &Path) -> Result<Complex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (k, warnings) =
        parse_complex(&text).with_context(|| format!("parsing {}", path.display()))?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(k)
}

fn read_pattern(path: &Path) -> Result<PatternedComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (p, warnings) =
        parse_pattern(&text).with_context(|| format!("parsing {}", path.display()))?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    if p.was_subdivided_on_load() {
        eprintln!(
            "warning: {}: facets were not full; the pattern was subdivided once on load",
            path.display()
        );
    }
    Ok(p)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn torsion_label<T: std::fmt::Display>(t: &[T]) -> String {
    if t.is_empty() {
        "-".to_string()
    } else {
        t.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn group_label<T: std::fmt::Display>(betti: u64, torsion: &[T]) -> String {
    let mut parts: Vec<String> = Vec::new();
    match betti {
        0 => {}
        1 => parts.push("Z".to_string()),
        b => parts.push(format!("Z^{b}")),
    }
    for d in torsion {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Homology { file } => {
            let k = read_complex(&file)?;
            let h = homology(&k);
            if format == Format::Tsv {
                println!("dim\tbetti\ttorsion");
                for (i, b) in h.betti.iter().enumerate() {
                    println!("{i}\t{b}\t{}", torsion_label(&h.torsion[i]));
                }
            } else {
                for (i, b) in h.betti.iter().enumerate() {
                    println!("H_{i} = {}", group_label(*b, &h.torsion[i]));
                }
            }
            Ok(PASS)
        }
        Command::IsGhs { file, n } => {
            let k = read_complex(&file)?;
            let ghs = is_generalized_homology_sphere(&k, n);
            if format == Format::Tsv {
                println!("n\tghs");
                println!("{n}\t{ghs}");
            } else {
                println!("generalized homology ({})-sphere: {ghs}", n as i64 - 1);
            }
            Ok(verdict(ghs))
        }
        Command::FlagCheck { file } => {
            let k = read_complex(&file)?;
            let report = flag_report(&k);
            let lambda = charney_davis(&k);
            if format == Format::Tsv {
                println!("flag\tlambda\tminimal_non_faces");
                println!(
                    "{}\t{lambda}\t{}",
                    report.is_flag,
                    report.minimal_non_faces.len()
                );
            } else {
                println!("flag: {}", report.is_flag);
                println!("lambda = {lambda}");
                for w in report.minimal_non_faces.iter().take(10) {
                    println!("minimal non-face: {w}");
                }
                let extra = report.minimal_non_faces.len().saturating_sub(10);
                if extra > 0 {
                    println!("... and {extra} more");
                }
            }
            Ok(verdict(report.is_flag))
        }
        Command::CharneyDavis { file } => {
            let k = read_complex(&file)?;
            println!("{}", charney_davis(&k));
            Ok(PASS)
        }
        Command::CertifyCell { file, n } => {
            let k = read_complex(&file)?;
            let cert = certify_haken_cell_dual(&k, n);
            let lambda = charney_davis(&k);
            if format == Format::Tsv {
                println!("n\tghs\tflag\thaken\tlambda");
                println!("{n}\t{}\t{}\t{}\t{lambda}", cert.ghs, cert.flag, cert.haken);
            } else {
                println!("ghs: {}", cert.ghs);
                println!("flag: {}", cert.flag);
                println!("haken cell nerve: {}", cert.haken);
                println!("lambda = {lambda}");
            }
            Ok(verdict(cert.haken))
        }
        Command::Nerve { file, out } => {
            let p = read_pattern(&file)?;
            let nerve = p.nerve()?;
            let listing = write_complex(&nerve.nerve)?;
            if format == Format::Tsv && out.is_some() {
                emit(&out, &listing)?;
                println!("vertex\tfacet");
                for (i, name) in nerve.facet_names.iter().enumerate() {
                    println!("{i}\t{name}");
                }
            } else {
                emit(&out, &listing)?;
                for (i, name) in nerve.facet_names.iter().enumerate() {
                    eprintln!("# vertex {i} = facet {name}");
                }
            }
            Ok(PASS)
        }
        Command::ChiOrb { file, method } => {
            let p = read_pattern(&file)?;
            match method {
                Method::All => {
                    let [s, pc, nv] = p.orbifold_euler_all()?;
                    let equal = s == pc && pc == nv;
                    if format == Format::Tsv {
                        println!("method\tchi_orb");
                        println!("strata\t{s}");
                        println!("poincare\t{pc}");
                        println!("nerve\t{nv}");
                    } else {
                        println!("strata   = {s}");
                        println!("poincare = {pc}");
                        println!("nerve    = {nv}");
                        println!("equal: {equal}");
                    }
                    Ok(verdict(equal))
                }
                single => {
                    let value = match single {
                        Method::Strata => p.orbifold_euler_strata()?,
                        Method::Poincare => p.orbifold_euler_poincare()?,
                        Method::Nerve => p.orbifold_euler_nerve()?,
                        Method::All => unreachable!("handled above"),
                    };
                    println!("{value}");
                    Ok(PASS)
                }
            }
        }
        Command::Useful { file } => {
            let p = read_pattern(&file)?;
            let r = p.usefulness_report();
            let verified = r.homology_useful && r.carrier_h1_trivial;
            if format == Format::Tsv {
                println!("facet_h1_trivial\tpairwise_connected\ttriple_condition\tcarrier_h1_trivial\tuseful");
                println!(
                    "{}\t{}\t{}\t{}\t{}",
                    r.facet_h1_trivial,
                    r.pairwise_connected,
                    r.triple_condition,
                    r.carrier_h1_trivial,
                    r.homology_useful
                );
            } else {
                println!("facet H_1 trivial: {}", r.facet_h1_trivial);
                println!("pairwise intersections connected: {}", r.pairwise_connected);
                println!("triple intersections nonempty: {}", r.triple_condition);
                println!("useful (homology checks): {}", r.homology_useful);
                if !r.carrier_h1_trivial {
                    println!("undecided: the carrier itself has nontrivial first homology");
                }
            }
            Ok(verdict(verified))
        }
        Command::CellFromSphere { file, n, out } => {
            let k = read_complex(&file)?;
            if !is_generalized_homology_sphere(&k, n) {
                eprintln!("not a generalized homology ({})-sphere", n as i64 - 1);
                return Ok(verdict(false));
            }
            let cell = cell_from_flag_sphere(&k, n)?;
            emit(&out, &write_pattern(&cell)?)?;
            Ok(PASS)
        }
        Command::Double { file, mirrors, out } => {
            let p = read_pattern(&file)?;
            let mirrors: Vec<String> =
                mirrors.unwrap_or_else(|| p.facets().keys().cloned().collect());
            let d = double(&p, &mirrors)?;
            let chi = d.complex.euler_characteristic();
            if format == Format::Tsv {
                println!("mirrors\tvertices\tchi\tclosed");
                println!(
                    "{}\t{}\t{chi}\t{}",
                    d.mirrors.len(),
                    d.complex.vertex_count(),
                    d.closed_check.map_or("-".to_string(), |b| b.to_string())
                );
            } else {
                println!("mirrors: {} ({})", d.mirrors.len(), d.mirrors.join(", "));
                println!("vertices: {}", d.complex.vertex_count());
                println!("chi = {chi}");
                match d.closed_check {
                    Some(c) => println!("closed: {c}"),
                    None => {
                        println!("closed: not applicable (pattern incomplete or mirrors partial)")
                    }
                }
            }
            if out.is_some() {
                emit(&out, &write_complex(&d.complex)?)?;
            }
            Ok(PASS)
        }
        Command::VerifyDouble { file } => {
            let p = read_pattern(&file)?;
            let r = verify_quotient_formula(&p)?;
            if format == Format::Tsv {
                println!("chi_double\tl\tchi_orb\tequal");
                println!("{}\t{}\t{}\t{}", r.chi_double, r.l, r.chi_orb, r.equal);
            } else {
                println!("chi(double) = {}", r.chi_double);
                println!("mirrors: {}", r.l);
                println!("chi_orb = {}", r.chi_orb);
                println!("chi(double) = 2^l * chi_orb: {}", r.equal);
            }
            Ok(verdict(r.equal))
        }
        Command::Cut {
            file,
            locus,
            rounds,
            out,
        } => {
            let p = read_pattern(&file)?;
            let f = read_complex(&locus)?;
            let report = cut_open_with_rounds(&p, &f, rounds)?;
            if format == Format::Tsv {
                println!("locus_components\tsides\tnew_facets\tfacets\tvertices");
                println!(
                    "{}\t{}\t{}\t{}\t{}",
                    report.locus_components,
                    report
                        .sides
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                    report.new_facets.join(","),
                    report.pattern.facets().len(),
                    report.pattern.carrier().vertex_count()
                );
            } else {
                println!("locus components: {}", report.locus_components);
                println!(
                    "sides per component: {}",
                    report
                        .sides
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                println!("new facets: {}", report.new_facets.join(", "));
                println!("facets now: {}", report.pattern.facets().len());
                println!("vertices now: {}", report.pattern.carrier().vertex_count());
            }
            if out.is_some() {
                emit(&out, &write_pattern(&report.pattern)?)?;
            }
            Ok(PASS)
        }
        Command::VerifyCut {
            file,
            locus,
            rounds,
        } => {
            let p = read_pattern(&file)?;
            let f = read_complex(&locus)?;
            let inv = verify_cut_invariance_with_rounds(&p, &f, rounds)?;
            if format == Format::Tsv {
                println!("side\tstrata\tpoincare\tnerve");
                println!(
                    "before\t{}\t{}\t{}",
                    inv.before[0], inv.before[1], inv.before[2]
                );
                println!(
                    "after\t{}\t{}\t{}",
                    inv.after[0], inv.after[1], inv.after[2]
                );
            } else {
                println!(
                    "before: strata = {}, poincare = {}, nerve = {}",
                    inv.before[0], inv.before[1], inv.before[2]
                );
                println!(
                    "after:  strata = {}, poincare = {}, nerve = {}",
                    inv.after[0], inv.after[1], inv.after[2]
                );
                println!("invariant: {}", inv.equal);
            }
            Ok(verdict(inv.equal))
        }
        Command::RunHierarchy { ledger, initial } => {
            let text = fs::read_to_string(&ledger)
                .with_context(|| format!("reading {}", ledger.display()))?;
            let (cuts, rounds, warnings) =
                parse_ledger(&text).with_context(|| format!("parsing {}", ledger.display()))?;
            for w in warnings {
                eprintln!("warning: {}: {w}", ledger.display());
            }
            let p = read_pattern(&initial)?;
            let led = run_prehierarchy(&p, &cuts, rounds)?;
            let cert = certify_hierarchy(&led)?;

            println!("step\tcells\tfacets\tchi_orb");
            println!(
                "0\t{}\t{}\t{}",
                led.initial.carrier().connected_components().len(),
                led.initial.facets().len(),
                led.initial_chi_orb
            );
            for (i, step) in led.steps.iter().enumerate() {
                println!(
                    "{}\t{}\t{}\t{}",
                    i + 1,
                    step.result.carrier().connected_components().len(),
                    step.result.facets().len(),
                    step.chi_orb
                );
            }
            println!();
            println!("terminal\tnerve_dim\tghs\tflag\tlambda");
            for t in &cert.terminals {
                println!(
                    "{}\t{}\t{}\t{}\t{}",
                    t.index, t.nerve_dim, t.certificate.ghs, t.certificate.flag, t.lambda
                );
            }
            println!();
            let audits = led.chi_orb_constant && led.additive_each_step && led.sum_matches_initial;
            println!("chi_orb constant: {}", led.chi_orb_constant);
            println!("additive each step: {}", led.additive_each_step);
            println!("terminal sum matches initial: {}", led.sum_matches_initial);
            println!("essentialness assumed, not checked");
            println!("all terminals certified: {}", cert.all_certified);
            println!("sum lambda = {}", cert.sum_lambda);
            match cert.euler_identity {
                Some(ok) => println!("euler identity chi(M0) = sum lambda: {ok}"),
                None => println!("euler identity: not applicable"),
            }
            let ok = audits && cert.euler_identity != Some(false);
            Ok(verdict(ok))
        }
        Command::Corpus {
            family,
            seed,
            out_dir,
        } => {
            let items = corpus_generate(&family, seed)?;
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            println!("name\tkind\tfile");
            for (name, item) in items {
                let (kind, ext, text) = match &item {
                    CorpusItem::Complex(k) => ("complex", "cx", write_complex(k)?),
                    CorpusItem::Pattern(p) => ("pattern", "pattern", write_pattern(p)?),
                };
                let path = out_dir.join(format!("{name}.{ext}"));
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                println!("{name}\t{kind}\t{}", path.display());
            }
            Ok(PASS)
        }
    }
}
