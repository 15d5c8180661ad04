use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use transversal_core::commands::{self, exit, RunConfig};
use transversal_core::exact::Rational;
use transversal_core::io;

#[derive(Parser)]
#[command(
    name = "transversal",
    version,
    about = "Exact constructions of convex families near z = xy without a finite line transversal"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// measure bound of the supports, in (0, 1)
    #[arg(long, global = true, default_value = "1/2")]
    delta: Rational,

    /// number of bodies a witness line must pierce
    #[arg(long, global = true, default_value_t = 1)]
    t: usize,

    /// number of bodies to construct
    #[arg(short = 'N', long = "count", global = true, default_value_t = 1)]
    count: usize,

    /// stream elements the refuter may examine
    #[arg(long, global = true, default_value_t = commands::DEFAULT_NMAX)]
    nmax: usize,

    #[arg(long, global = true)]
    family: Option<PathBuf>,

    #[arg(long, global = true)]
    lines: Option<PathBuf>,

    /// output file (a directory for export-plot); stdout if absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// re-check the result with the exact predicates
    #[arg(long, global = true)]
    verify: bool,

    /// significant digits in exported decimals
    #[arg(long, global = true, default_value_t = commands::DEFAULT_PRECISION)]
    precision: usize,

    /// arc samples per body and surface grid points per axis
    #[arg(long, global = true, default_value_t = commands::DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Write the first N bodies of the family as JSON lines
    Construct,
    /// Find a line x = r, z = ry through t bodies of a family file
    Witness,
    /// Find a body of the family missed by every line of a line file
    Refute,
    /// Smallest subset of a line file piercing every body of a family file
    Cover,
    /// CSV samples of the bodies and the surface for plotting
    ExportPlot,
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => io::write_text(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verified(ok: transversal_core::Result<()>) -> anyhow::Result<()> {
    ok.context("verification failed")
}

/// Runs the command; `Err` means bad input.
fn run(command: Command, cfg: &RunConfig) -> anyhow::Result<Result<i32, anyhow::Error>> {
    cfg.validate()?;
    let out = cfg.out.as_deref();
    let code = match command {
        Command::Construct => {
            let fam = commands::cmd_construct(cfg)?;
            let text = io::family_to_string(&fam);
            emit(out, &text)?;
            if cfg.verify {
                let back = io::parse_family(&text)?;
                if let Err(e) = verified(commands::verify_family(&back, &cfg.delta)) {
                    return Ok(Err(e));
                }
            }
            exit::SUCCESS
        }
        Command::Witness => {
            let fam = cfg.load_family()?;
            let rep = commands::cmd_witness(cfg, &fam)?;
            emit(out, &io::to_json(&rep))?;
            if cfg.verify {
                if let Err(e) = verified(commands::verify_witness(&rep, &fam)) {
                    return Ok(Err(e));
                }
            }
            rep.exit_code()
        }
        Command::Refute => {
            let lines = cfg.load_lines()?;
            let outcome = commands::cmd_refute(cfg, &lines)?;
            emit(out, &io::to_json(&outcome))?;
            if cfg.verify {
                if let Err(e) = verified(commands::verify_refutation(cfg, &outcome, &lines)) {
                    return Ok(Err(e));
                }
            }
            commands::refute_exit_code(&outcome)
        }
        Command::Cover => {
            let fam = cfg.load_family()?;
            let lines = cfg.load_lines()?;
            let rep = commands::cmd_cover(&fam, &lines)?;
            emit(out, &io::to_json(&rep))?;
            if cfg.verify {
                if let Err(e) = verified(commands::verify_cover(&rep, &fam, &lines)) {
                    return Ok(Err(e));
                }
            }
            rep.exit_code()
        }
        Command::ExportPlot => {
            let fam = cfg.load_family()?;
            let Some(dir) = out else {
                bail!("export-plot needs --out <directory>");
            };
            let plot = commands::cmd_export_plot(cfg, &fam)?;
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, text) in plot.files() {
                io::write_text(&dir.join(name), text)?;
            }
            if cfg.verify {
                if let Err(e) = verified(commands::verify_family(&fam, &cfg.delta)) {
                    return Ok(Err(e));
                }
            }
            exit::SUCCESS
        }
    };
    Ok(Ok(code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT as u8 } else { 0 });
        }
    };
    let cfg = RunConfig {
        delta: cli.delta,
        t: cli.t,
        count: cli.count,
        n_max: cli.nmax,
        family: cli.family,
        lines: cli.lines,
        out: cli.out,
        verify: cli.verify,
        precision: cli.precision,
        samples: cli.samples,
    };
    match run(cli.command, &cfg) {
        Ok(Ok(code)) => ExitCode::from(code as u8),
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::VERIFY_FAILED as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::INPUT as u8)
        }
    }
}
