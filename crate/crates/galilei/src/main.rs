use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use galilei::error::CliError;
use galilei::eval::Evaluator;
use galilei::parse;
use galilei::specfile;
use galilei::suite::{self, Options, Target};
use galilei_core::presets::Preset;

/// Verifier for the two-dimensional quantum Galilei groups and their duals.
#[derive(Parser)]
#[command(name = "galilei", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// One of group_A, group_B, dual_A, dual_B.
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// A TOML presentation or Hopf structure file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Truncation grade for series.
    #[arg(long, default_value_t = 6)]
    degree: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite.
    Check {
        #[command(flatten)]
        common: Common,
        /// Record wall time per check (reports are no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Reconstruct the dual of a group from the pairing.
    Dual {
        #[command(flatten)]
        common: Common,
    },
    /// Normal-order an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check every single and paired parameter limit.
    Limits {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        timing: bool,
    },
    /// Match the dual coproducts with the commuting-matrix construction.
    Lm {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        timing: bool,
    },
}

/// Exit status 2: the input could not be loaded, parsed or resolved.
struct LoadFailure(CliError);

impl From<CliError> for LoadFailure {
    fn from(e: CliError) -> Self {
        LoadFailure(e)
    }
}

impl From<galilei_core::Error> for LoadFailure {
    fn from(e: galilei_core::Error) -> Self {
        LoadFailure(e.into())
    }
}

fn preset(c: &Common) -> Result<Preset, LoadFailure> {
    let name = c
        .preset
        .as_deref()
        .ok_or_else(|| CliError::Load("this command needs --preset".into()))?;
    Ok(name.parse::<Preset>()?)
}

fn target(c: &Common) -> Result<Target, LoadFailure> {
    match (&c.preset, &c.spec) {
        (Some(_), _) => Ok(Target::Preset(preset(c)?)),
        (None, Some(path)) => Ok(Target::File(Box::new(specfile::load(path)?))),
        (None, None) => Err(CliError::Load("give --preset or --spec".into()).into()),
    }
}

fn emit_report(r: &galilei::report::Report, json: bool) -> ExitCode {
    if json {
        println!("{}", r.to_json());
    } else {
        print!("{}", r.to_text());
    }
    if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn eval(expr: &str, c: &Common) -> Result<String, LoadFailure> {
    let ast = parse(expr).map_err(CliError::from)?;
    let n = c.degree;
    let shown = match target(c)? {
        Target::Preset(p) => {
            let spec = p.hopf(n);
            let data = spec.expand(p.check_degree(n))?;
            let mut ev = Evaluator::with_hopf(data, n);
            let v = ev.eval_normal(ast)?;
            ev.show(&v)
        }
        Target::File(f) => {
            let mut ev = match &f.hopf {
                Some(h) => {
                    let deg = f.presentation.valid_to().map(|v| v.min(n));
                    let deg = match (deg, h.expand(None)) {
                        (None, Err(galilei_core::Error::NeedsTruncation)) => Some(n),
                        _ => deg,
                    };
                    Evaluator::with_hopf(h.expand(deg)?, n)
                }
                None => Evaluator::new(&f.presentation, n),
            }
            .with_params(f.params.clone());
            let v = ev.eval_normal(ast)?;
            ev.show(&v)
        }
    };
    Ok(shown)
}

fn run(cli: Cli) -> Result<ExitCode, LoadFailure> {
    match cli.command {
        Command::Check { common, timing } => {
            let opts = Options {
                degree: common.degree,
                timing,
            };
            let r = suite::run_suite(&target(&common)?, &opts)?;
            Ok(emit_report(&r, common.json))
        }
        Command::Limits { common, timing } => {
            let opts = Options {
                degree: common.degree,
                timing,
            };
            let r = suite::run_limits(&target(&common)?, &opts)?;
            Ok(emit_report(&r, common.json))
        }
        Command::Lm { common, timing } => {
            let opts = Options {
                degree: common.degree,
                timing,
            };
            let r = suite::run_lm(preset(&common)?, &opts)?;
            Ok(emit_report(&r, common.json))
        }
        Command::Dual { common } => {
            let listing = suite::reconstruct_dual(preset(&common)?, common.degree)?;
            if common.json {
                println!("{}", serde_json::to_string_pretty(&listing).expect("listing serializes"));
            } else {
                print!("{}", listing.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { expr, common } => {
            let shown = eval(&expr, &common)?;
            if common.json {
                let v = serde_json::json!({ "input": expr, "value": shown });
                println!("{v}");
            } else {
                println!("{shown}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(LoadFailure(e)) => {
            eprintln!("galilei: {e}");
            ExitCode::from(2)
        }
    }
}
