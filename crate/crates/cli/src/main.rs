//! `rctour`: generate, check, solve and verify rainbow-connected tournaments.
//!
//! JSON goes to stdout (or `--out`), diagnostics and summaries to stderr.
//! Exit codes: 0 verified, 1 a check found a violation, 2 bad input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rctour::catalog::{self, BandMode, Verdict, VerificationReport};
use rctour::solver::{SolverConfig, DEFAULT_MAX_ARCS, DEFAULT_MAX_PALETTE};
use rctour::{
    dot, make_circulant, paper_construction, proof_certificate, rainbow_certificate, rc_exact_with,
    validate_certificate, CirculantSpec, ColoredDigraph, Digraph, RainbowCertificate, RcSearch,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "rctour", version, about = "Rainbow connectivity of tournaments")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores). Output does
    /// not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Suppress the human-readable summary on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build digraphs and certificates.
    #[command(subcommand)]
    Gen(Gen),
    /// Check rainbow connectivity or a certificate.
    #[command(subcommand)]
    Check(Check),
    /// Exact search.
    #[command(subcommand)]
    Solve(Solve),
    /// Reproducible verification runs.
    #[command(subcommand)]
    Verify(Verify),
    /// Export to other formats.
    #[command(subcommand)]
    Export(Export),
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// Read JSON from this file (default: stdin).
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gen {
    /// Circulant digraph C_n(S) as digraph JSON.
    Circulant {
        #[arg(long)]
        n: usize,
        /// Comma-separated difference set, e.g. 1,2,4.
        #[arg(long, value_delimiter = ',', required = true)]
        diffs: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// The 2-colored rc = 2 tournament of order N (N >= 6) as colored-digraph JSON.
    Paper {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Explicit witness paths for the order-N construction as certificate JSON.
    ProofCertificate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Certificate JSON if the colored digraph is rainbow connected, else the
    /// first failing pair (exit 1).
    Rainbow {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Validate a certificate against a colored digraph.
    Certificate {
        #[command(flatten)]
        input: Input,
        /// Certificate JSON file.
        #[arg(long)]
        cert: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Solve {
    /// Exact rainbow connection number of a strong digraph.
    Rc {
        #[command(flatten)]
        input: Input,
        /// Give up after this many colors (reports exhaustion, exit 1).
        #[arg(long)]
        max_colors: Option<usize>,
        /// Largest palette the solver may sweep.
        #[arg(long, default_value_t = DEFAULT_MAX_PALETTE)]
        max_palette: usize,
        /// Largest arc count the solver accepts.
        #[arg(long, default_value_t = DEFAULT_MAX_ARCS)]
        max_arcs: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// rc = 2 constructions for every order 6..=N-MAX.
    Theorem3 {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive study of strong tournaments on 4 and 5 vertices.
    SmallCases {
        #[command(flatten)]
        output: Output,
    },
    /// 2 <= rc <= n-1 on strong tournaments of order N.
    Band {
        #[arg(long)]
        n: usize,
        /// Number of random tournaments to draw.
        #[arg(long, conflicts_with = "exhaustive", required_unless_present = "exhaustive")]
        samples: Option<usize>,
        #[arg(long, conflicts_with = "exhaustive", required_unless_present = "exhaustive")]
        seed: Option<u64>,
        /// Check every labeled tournament instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Search for tournaments realizing each rc value 3..=N-1.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5000)]
        budget: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Export {
    /// Graphviz DOT; colored input draws color 0 dashed and color 1 solid.
    Dot {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
}

/// Exit status plus the message printed for status 2.
enum Failure {
    Violation,
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_input(input: &Input) -> Result<String, Failure> {
    let mut text = String::new();
    match &input.input {
        Some(path) => text = read_file(path)?,
        None => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_text(output: &Output, text: &str) -> Outcome {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(output: &Output, value: &T) -> Outcome {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    write_text(output, &text)
}

/// Accepts digraph JSON or colored-digraph JSON.
enum AnyDigraph {
    Plain(Digraph),
    Colored(ColoredDigraph),
}

fn parse_any(text: &str) -> Result<AnyDigraph, Failure> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("colors").is_some() {
        Ok(AnyDigraph::Colored(serde_json::from_value(value)?))
    } else {
        Ok(AnyDigraph::Plain(serde_json::from_value(value)?))
    }
}

fn report(output: &Output, quiet: bool, r: &VerificationReport) -> Outcome {
    write_json(output, r)?;
    if !quiet {
        eprint!("{}", r.render_text());
    }
    match r.verdict {
        Verdict::Fail => Err(Failure::Violation),
        Verdict::Pass | Verdict::Inconclusive => Ok(()),
    }
}

fn run(cli: Cli) -> Outcome {
    let quiet = cli.quiet;
    match cli.command {
        Command::Gen(Gen::Circulant { n, diffs, output }) => {
            let spec = CirculantSpec::new(n, diffs)?;
            write_json(&output, &make_circulant(&spec))
        }
        Command::Gen(Gen::Paper { n, output }) => write_json(&output, &paper_construction(n)?),
        Command::Gen(Gen::ProofCertificate { n, output }) => {
            let pc = proof_certificate(n)?;
            if !quiet {
                for e in &pc.emendations {
                    eprintln!("emendation {}: {}", e.id, e.description);
                }
            }
            write_json(&output, &pc.certificate)
        }
        Command::Check(Check::Rainbow { input, output }) => {
            let cd: ColoredDigraph = serde_json::from_str(&read_input(&input)?)?;
            match rainbow_certificate(&cd) {
                Ok(cert) => write_json(&output, &cert),
                Err(pair) => {
                    write_json(&output, &pair)?;
                    eprintln!("{pair}");
                    Err(Failure::Violation)
                }
            }
        }
        Command::Check(Check::Certificate { input, cert, output }) => {
            let cd: ColoredDigraph = serde_json::from_str(&read_input(&input)?)?;
            let cert: RainbowCertificate = serde_json::from_str(&read_file(&cert)?)?;
            let validation = validate_certificate(&cd, &cert);
            write_json(&output, &validation)?;
            if validation.is_valid() {
                Ok(())
            } else {
                if !quiet {
                    eprintln!(
                        "{} violations, {} uncovered pairs",
                        validation.violations.len(),
                        validation.uncovered.len()
                    );
                }
                Err(Failure::Violation)
            }
        }
        Command::Solve(Solve::Rc {
            input,
            max_colors,
            max_palette,
            max_arcs,
            output,
        }) => {
            let d = match parse_any(&read_input(&input)?)? {
                AnyDigraph::Plain(d) => d,
                AnyDigraph::Colored(cd) => cd.into_parts().0,
            };
            let config = SolverConfig { max_arcs, max_palette };
            match rc_exact_with(&d, max_colors, &config)? {
                RcSearch::Exact(r) => write_json(&output, &r),
                exhausted @ RcSearch::Exhausted { max_colors, .. } => {
                    write_json(&output, &exhausted)?;
                    eprintln!("no rainbow coloring with at most {max_colors} colors: rc > {max_colors}");
                    Err(Failure::Violation)
                }
            }
        }
        Command::Verify(v) => match v {
            Verify::Theorem3 { n_max, output } => report(&output, quiet, &catalog::verify_theorem3(n_max)?),
            Verify::SmallCases { output } => report(&output, quiet, &catalog::verify_small_cases()?),
            Verify::Band {
                n,
                samples,
                seed,
                exhaustive,
                output,
            } => {
                let mode = match (exhaustive, samples, seed) {
                    (true, _, _) => BandMode::Exhaustive,
                    (false, Some(samples), Some(seed)) => BandMode::Sampled { samples, seed },
                    _ => return Err(Failure::Input("--samples and --seed are required".into())),
                };
                report(&output, quiet, &catalog::verify_theorem1_band(n, mode)?)
            }
            Verify::Spectrum { n, budget, seed, output } => {
                report(&output, quiet, &catalog::search_rc_spectrum(n, budget, seed)?)
            }
        },
        Command::Export(Export::Dot { input, output }) => {
            let text = match parse_any(&read_input(&input)?)? {
                AnyDigraph::Plain(d) => dot::to_dot(&d),
                AnyDigraph::Colored(cd) => dot::colored_to_dot(&cd),
            };
            write_text(&output, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
