//! Argument parsing and command execution.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use u2comm_core::factor_sln::{factor, BoundSelector};
use u2comm_core::field::{AnyField, Field};
use u2comm_core::oracle::{
    bfs_lengths, check_trace_characterization, derived_subgroup, enumerate_group, DEFAULT_BUDGET,
};
use u2comm_core::unipotent::verify;

use crate::cert::CertificateJson;
use crate::error::{input, CliError, CliResult};
use crate::export::write_table;
use crate::format::{matrix_from_tokens, parse_field_spec, parse_matrix_file, ParseElem};
use crate::{selftest, with_field};

#[derive(Debug, Parser)]
#[command(name = "u2comm", version, about = "Factor SL_n matrices into commutators of square-zero unipotents")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor the matrix in a matrix file and emit a certificate.
    Factor {
        /// Must agree with the field named in the file, if given.
        #[arg(long)]
        field: Option<String>,
        /// Matrix file, or `-` for stdin.
        #[arg(long)]
        input: String,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-check a certificate from scratch.
    Verify {
        #[arg(long)]
        cert: String,
    },
    /// Print the promised maximum number of pairs for a field and size.
    Bounds {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
    },
    /// CSV of every group element with its commutator word length.
    OracleLengths {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// CSV of the derived subgroup.
    OracleDerived {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Compare length-one elements of SL_2 with the trace criterion.
    OracleCheckTrace {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run the built-in example suite.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_source(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))
    }
}

fn finite(spec: &str) -> CliResult<u2comm_core::field::GaloisField> {
    match parse_field_spec(spec)? {
        AnyField::Finite(f) => Ok(f),
        AnyField::Rational(_) => Err(CliError::Usage("oracle commands need a finite field".into())),
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Factor { field, input, json } => cmd_factor(field.as_deref(), &input, json.as_deref(), out, err),
        Command::Verify { cert } => cmd_verify(&cert, out),
        Command::Bounds { field, n } => {
            let any = parse_field_spec(&field)?;
            let sel = with_field!(&any, f => BoundSelector::for_field(f, n));
            match sel.max_pairs() {
                Some(p) => writeln!(
                    out,
                    "field={} n={n} case={} max_pairs={p} max_u2_factors={}",
                    any.describe(),
                    sel.case(),
                    2 * p
                )?,
                None => writeln!(out, "field={} n={n} case={} no promise", any.describe(), sel.case())?,
            }
            Ok(())
        }
        Command::OracleLengths { field, n, budget } => {
            let f = finite(&field)?;
            let t = enumerate_group(&f, n, budget)?;
            let ids: Vec<usize> = (0..t.order()).collect();
            write_table(out, &t, &bfs_lengths(&t), &ids)
        }
        Command::OracleDerived { field, n, budget } => {
            let f = finite(&field)?;
            let t = enumerate_group(&f, n, budget)?;
            let ids = derived_subgroup(&t);
            writeln!(err, "derived subgroup order {} of {}", ids.len(), t.order())?;
            write_table(out, &t, &bfs_lengths(&t), &ids)
        }
        Command::OracleCheckTrace { field, budget } => {
            let f = finite(&field)?;
            let t = enumerate_group(&f, 2, budget)?;
            let report = check_trace_characterization(&t, &bfs_lengths(&t))?;
            writeln!(
                out,
                "{}: checked {} nonscalar elements, {} exceptions",
                f.describe(),
                report.checked,
                report.exceptions.len()
            )?;
            for id in &report.exceptions {
                writeln!(out, "exception: id {id} {:?}", t.element(*id).tokens())?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Failed("trace criterion has exceptions".into()))
            }
        }
        Command::Selftest { seed } => {
            let cases = selftest::run(seed);
            let mut failed = 0;
            for c in &cases {
                match &c.outcome {
                    Ok(d) => writeln!(out, "[PASS] {}: {d}", c.name)?,
                    Err(e) => {
                        failed += 1;
                        writeln!(out, "[FAIL] {}: {e}", c.name)?;
                    }
                }
            }
            writeln!(out, "selftest: {} passed, {failed} failed", cases.len() - failed)?;
            if failed == 0 {
                Ok(())
            } else {
                Err(CliError::Failed(format!("{failed} selftest cases failed")))
            }
        }
    }
}

fn cmd_factor(
    field: Option<&str>,
    source: &str,
    json: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let mf = parse_matrix_file(&read_source(source)?)?;
    if let Some(spec) = field {
        let given = parse_field_spec(spec)?;
        if given != mf.field {
            return Err(CliError::Usage(format!(
                "--field {} disagrees with the file's field {}",
                given.describe(),
                mf.field.describe()
            )));
        }
    }
    let (cert_json, summary) = with_field!(&mf.field, f => factor_in(f, &mf.rows)?);
    match json {
        Some(path) => {
            std::fs::write(path, cert_json.to_json())?;
            write!(out, "{summary}")?;
        }
        None => {
            write!(out, "{}", cert_json.to_json())?;
            write!(err, "{summary}")?;
        }
    }
    Ok(())
}

fn factor_in<F: ParseElem>(f: &F, rows: &[Vec<String>]) -> CliResult<(CertificateJson, String)> {
    let a = matrix_from_tokens(f, rows)?;
    let cert = factor(&a)?;
    let summary = format!("pairs: {}\nroute: {}\n", cert.pair_count(), cert.route.join(" > "));
    Ok((CertificateJson::from_cert(&cert), summary))
}

fn cmd_verify(path: &str, out: &mut dyn Write) -> CliResult<()> {
    let json = CertificateJson::parse(&read_source(path)?)?;
    let field = json.field()?;
    let report = with_field!(&field, f => verify(&json.to_cert(f)?));
    writeln!(out, "{report}\npairs: {}", json.pairs.len())?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed("certificate does not verify".into()))
    }
}
