//! Command line front end: one subcommand per computation family, CSV or
//! JSON reports on stdout or a file, exit code 0 only when every emitted
//! check passes (1 on check failure, 2 on usage errors).

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Report, Tolerances};

#[derive(Parser)]
#[command(name = "xxcorr", version, about = "XX chain transverse correlator: formfactor expansion against the exact determinant")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override a named check tolerance (repeatable).
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the constant block with its pinned comparisons.
    Constants {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate the prefactors C_m and coefficients y_m.
    Prefactors {
        #[arg(long = "m-max", default_value_t = 5)]
        m_max: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Finite-chain formfactor scaling and particle-hole ratios.
    Formfactor {
        #[arg(long = "L", default_value_t = 256)]
        l: usize,
        #[arg(long = "m-max", default_value_t = 2)]
        m_max: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact asymptotic series coefficients as rationals.
    Series {
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact correlator values from the determinant route.
    Exact {
        #[arg(long = "x-max", default_value_t = 64)]
        x_max: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fermi-edge ladder resummation against the closed form.
    SumIdentity {
        #[arg(long, default_value_t = 20)]
        cutoff: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Residuals of the truncated prediction against the exact correlator.
    Compare {
        #[arg(long = "x-max", default_value_t = 512)]
        x_max: u64,
        #[arg(long = "m-max", default_value_t = 1)]
        m_max: u32,
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the cross-module check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let (report, out) = build(cli)?;
    let text = match out.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &out.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(report.all_pass())
}

fn build(cli: Cli) -> Result<(Report, OutputArgs), String> {
    let (report, out) = match cli.command {
        Cmd::Constants { out } => {
            let tols = Tolerances::parse(&out.tol)?;
            (commands::constants(echo("constants", &out), &tols)?, out)
        }
        Cmd::Prefactors { m_max, out } => {
            let tols = Tolerances::parse(&out.tol)?;
            let e = echo(&format!("prefactors --m-max {m_max}"), &out);
            (commands::prefactors(e, m_max, &tols)?, out)
        }
        Cmd::Formfactor { l, m_max, out } => {
            let tols = Tolerances::parse(&out.tol)?;
            let e = echo(&format!("formfactor --L {l} --m-max {m_max}"), &out);
            (commands::formfactor(e, l, m_max, &tols)?, out)
        }
        Cmd::Series { order, out } => {
            let tols = Tolerances::parse(&out.tol)?;
            let e = echo(&format!("series --order {order}"), &out);
            (commands::series(e, order, &tols)?, out)
        }
        Cmd::Exact { x_max, out } => {
            let tols = Tolerances::parse(&out.tol)?;
            let e = echo(&format!("exact --x-max {x_max}"), &out);
            (commands::exact(e, x_max, &tols)?, out)
        }
        Cmd::SumIdentity { cutoff, out } => {
            let tols = Tolerances::parse(&out.tol)?;
            let e = echo(&format!("sum-identity --cutoff {cutoff}"), &out);
            (commands::sum_identity(e, cutoff, &tols)?, out)
        }
        Cmd::Compare { x_max, m_max, order, out } => {
            let tols = Tolerances::parse(&out.tol)?;
            let e = echo(&format!("compare --x-max {x_max} --m-max {m_max} --order {order}"), &out);
            (commands::compare(e, x_max, m_max, order, &tols)?, out)
        }
        Cmd::Verify { level, out } => {
            let tols = Tolerances::parse(&out.tol)?;
            let name = match level {
                Level::Quick => "quick",
                Level::Full => "full",
            };
            let e = echo(&format!("verify --level {name}"), &out);
            (commands::verify(e, level == Level::Full, &tols)?, out)
        }
    };
    let tols = Tolerances::parse(&out.tol)?;
    let unknown = tols.unknown_names(&report.checks);
    if !unknown.is_empty() {
        return Err(format!("--tol names match no emitted check: {}", unknown.join(", ")));
    }
    Ok((report, out))
}

fn echo(head: &str, out: &OutputArgs) -> String {
    let mut s = format!(
        "{head} --format {}",
        match out.format {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    );
    if let Some(p) = &out.out {
        s.push_str(&format!(" --out {}", p.display()));
    }
    for t in &out.tol {
        s.push_str(&format!(" --tol {t}"));
    }
    s
}
