//! The `epos` command line.
//!
//! Exit status: 0 on success or a true verdict, 1 when a verification fails
//! (the report is still written, with witnesses), 2 on usage and domain
//! errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use epos_core::decomposition::{verify_split, verify_t1234, verify_y};
use epos_core::expansions::{path_csf_e_with, spider4m_csf_with, spider_csf_e_with};
use epos_core::graph::{csf_subset_expansion_with, DEFAULT_EDGE_BUDGET};
use epos_core::injections::{certify_with, verify_disjointness_with, verify_injections_with, InjectionMaps};
use epos_core::EFunction;
use serde_json::{json, Value};

use crate::format::{write_efun, write_report, Format};
use crate::graph_file::read_graph;
use crate::report::{certificate_json, disjointness_json, identity_json, injections_json};
use crate::{CliError, Workers};

/// Largest `n` accepted by `path`, and largest total vertex count for `spider`.
pub const MAX_VERTICES: usize = 60;
/// Largest `m` accepted by `spider4m`, `verify` and `certify`.
pub const MAX_M: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "epos", version, about = "Chromatic symmetric functions in the e basis and spider e-positivity certificates")]
pub struct Args {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "EPOS_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// X of the path on n vertices.
    Path {
        #[arg(long)]
        n: usize,
    },
    /// X of the three-legged spider with the given leg lengths.
    Spider {
        #[arg(long, value_delimiter = ',', required = true)]
        legs: Vec<usize>,
    },
    /// X of the spider S(4m+2, 2m, 1).
    Spider4m {
        #[arg(long)]
        m: usize,
    },
    /// X of an arbitrary small graph by edge-subset expansion.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        /// Maximum number of edges.
        #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
        budget: usize,
    },
    /// Check one step of the decomposition or the injection properties.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long)]
        m: usize,
    },
    /// Build the positivity certificate for one m.
    Certify {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    X0,
    Y,
    T1234,
    Injections,
    Disjointness,
    All,
}

enum Outcome {
    Efun(EFunction),
    Report { doc: Value, passed: bool },
}

fn check_m(m: usize) -> Result<(), CliError> {
    if m == 0 || m > MAX_M {
        return Err(CliError::Usage(format!("--m must be between 1 and {MAX_M}, got {m}")));
    }
    Ok(())
}

fn check_vertices(n: usize) -> Result<(), CliError> {
    if n > MAX_VERTICES {
        return Err(CliError::Usage(format!("at most {MAX_VERTICES} vertices are supported, got {n}")));
    }
    Ok(())
}

fn verify(lemma: Lemma, m: usize, maps: &InjectionMaps, w: &Workers) -> Result<(Value, bool), CliError> {
    Ok(match lemma {
        Lemma::X0 => {
            let r = verify_split(m, w)?;
            (identity_json(&r), r.passed())
        }
        Lemma::Y => {
            let r = verify_y(m, w)?;
            (identity_json(&r), r.passed())
        }
        Lemma::T1234 => {
            let r = verify_t1234(m, w)?;
            (identity_json(&r), r.passed())
        }
        Lemma::Injections => {
            let r = verify_injections_with(m, maps, w)?;
            (injections_json(&r), r.passed())
        }
        Lemma::Disjointness => {
            let r = verify_disjointness_with(m, w)?;
            (disjointness_json(&r), r.passed())
        }
        Lemma::All => {
            let mut reports = Vec::new();
            let mut all = true;
            for l in [Lemma::X0, Lemma::Y, Lemma::T1234, Lemma::Injections, Lemma::Disjointness] {
                let (doc, ok) = verify(l, m, maps, w)?;
                all &= ok;
                reports.push(doc);
            }
            (json!({"lemma": "all", "m": m, "passed": all, "reports": reports}), all)
        }
    })
}

fn execute(args: &Args, maps: &InjectionMaps) -> Result<Outcome, CliError> {
    let w = Workers::new(args.workers)?;
    Ok(match &args.command {
        Command::Path { n } => {
            check_vertices(*n)?;
            Outcome::Efun(path_csf_e_with(*n, &w)?)
        }
        Command::Spider { legs } => {
            if legs.len() != 3 {
                return Err(CliError::Usage(format!("--legs needs exactly three lengths, got {}", legs.len())));
            }
            check_vertices(legs.iter().sum::<usize>() + 1)?;
            Outcome::Efun(spider_csf_e_with(legs[0], legs[1], legs[2], &w)?)
        }
        Command::Spider4m { m } => {
            check_m(*m)?;
            Outcome::Efun(spider4m_csf_with(*m, &w)?)
        }
        Command::Oracle { graph, budget } => {
            let g = read_graph(graph)?;
            Outcome::Efun(csf_subset_expansion_with(&g, *budget, &w)?)
        }
        Command::Verify { lemma, m } => {
            check_m(*m)?;
            let (doc, passed) = verify(*lemma, *m, maps, &w)?;
            Outcome::Report { doc, passed }
        }
        Command::Certify { m } => {
            check_m(*m)?;
            let c = certify_with(*m, maps, &w)?;
            Outcome::Report { doc: certificate_json(&c), passed: c.verdict }
        }
    })
}

fn emit(args: &Args, outcome: &Outcome, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut file;
    let out: &mut dyn Write = match &args.output {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    match outcome {
        Outcome::Efun(f) => write_efun(f, args.format, &mut *out)?,
        Outcome::Report { doc, .. } => write_report(doc, args.format, &mut *out)?,
    }
    out.flush()?;
    Ok(())
}

/// Runs one command with the given maps, writing results to `stdout` (unless
/// `--output` is set) and messages to `stderr`. Returns the exit status.
pub fn run_to<I, T>(argv: I, maps: &InjectionMaps, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&args, maps).and_then(|o| emit(&args, &o, stdout).map(|_| o));
    match result {
        Ok(Outcome::Report { passed: false, .. }) => {
            let _ = writeln!(stderr, "epos: verification failed; see the report for witnesses");
            1
        }
        Ok(_) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "epos: {e}");
            2
        }
    }
}

/// [`run_to`] on the process's standard streams.
pub fn run_with_maps<I, T>(argv: I, maps: &InjectionMaps) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_to(argv, maps, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// [`run_with_maps`] with the standard maps.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_maps(argv, &InjectionMaps::STANDARD)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("epos").chain(args.iter().copied());
        let code = run_to(argv, &InjectionMaps::STANDARD, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn path_pretty() {
        let (code, out, _) = run_capture(&["path", "--n", "3", "--format", "pretty", "--workers", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "3·e[3] + 1·e[2,1]\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["path"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["spider", "--legs", "1,2"]).0, 2);
        assert_eq!(run_capture(&["certify", "--m", "0"]).0, 2);
        assert_eq!(run_capture(&["certify", "--m", "99"]).0, 2);
        assert_eq!(run_capture(&["path", "--n", "0"]).0, 2);
        assert_eq!(run_capture(&["path", "--n", "3", "--workers", "0"]).0, 2);
        assert_eq!(run_capture(&["oracle", "--graph", "/nonexistent/graph.txt"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn lemma_names() {
        let (code, out, _) = run_capture(&["verify", "--lemma", "x0", "--m", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["lemma"], "x0");
        assert_eq!(v["passed"], true);
    }
}
