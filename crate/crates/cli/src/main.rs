use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use liecoh::deform::{default_samples, Claim};
use liecoh::format::parse_subspace;
use liecoh::report::{self, Report};
use liecoh::{Coefficients, Rational};

/// Exact cohomology and deformation audits for Lie algebras over Q.
///
/// INPUT is an algebra or family file, or a catalog key such as `h3`,
/// `n5_1`, `heisenberg(3)` or `family:n4_t`.
#[derive(Parser)]
#[command(name = "liecoh", version)]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi status, central and derived series, center, nilpotency.
    Check { input: String },

    /// Cohomology dimensions of the Chevalley-Eilenberg complex.
    Cohomology {
        input: String,
        /// Single degree instead of the full table.
        #[arg(long)]
        degree: Option<usize>,
        /// trivial:m, adjoint or abelianization.
        #[arg(long, default_value = "trivial:1")]
        coefficients: Coefficients,
        /// Also list one cocycle per cohomology class.
        #[arg(long)]
        representatives: bool,
    },

    /// Rigidity class from dim H^2(g, g/[g,g]), compared with the table when the input matches a row.
    Classify { input: String },

    /// Long exact sequence of the pair (g, h).
    Pair {
        input: String,
        /// 1-based basis indices `3,4`, or vectors `(1,0,0);(0,1,1)`.
        #[arg(long)]
        subalgebra: String,
        #[arg(long, default_value = "abelianization")]
        coefficients: Coefficients,
    },

    /// Audit a one-parameter family of brackets.
    Deform {
        input: String,
        /// Rational parameter values, e.g. `1,1/2,-1`.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        samples: Option<Vec<Rational>>,
        /// nilpotent, nilpotent(k), solvable-non-nilpotent or non-solvable.
        #[arg(long)]
        claim: Option<Claim>,
    },

    /// Recompute the obstruction table and the Heisenberg formulas.
    #[command(name = "audit-table1")]
    AuditTable1,

    /// Write a catalog entry in the file format.
    Emit {
        key: String,
        /// Output file; standard output when omitted.
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Option<Report>> {
    let report = match cli.command {
        Command::Check { input } => report::cmd_check(&report::load_algebra(&input)?),
        Command::Cohomology {
            input,
            degree,
            coefficients,
            representatives,
        } => report::cmd_cohomology(&report::load_algebra(&input)?, degree, coefficients, representatives)?,
        Command::Classify { input } => report::cmd_classify(&report::load_algebra(&input)?)?,
        Command::Pair {
            input,
            subalgebra,
            coefficients,
        } => {
            let l = report::load_algebra(&input)?;
            let h = parse_subspace(&subalgebra, l.object.dim())?;
            report::cmd_pair(&l, &h, coefficients)?
        }
        Command::Deform { input, samples, claim } => {
            let f = report::load_family(&input)?;
            let samples = samples.unwrap_or_else(default_samples);
            report::cmd_deform(&f, &samples, claim)?
        }
        Command::AuditTable1 => report::cmd_audit_table1()?,
        Command::Emit { key, out } => {
            let text = report::cmd_emit(&key)?;
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            return Ok(None);
        }
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            print!("{}", report.render(json));
            if report.failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
