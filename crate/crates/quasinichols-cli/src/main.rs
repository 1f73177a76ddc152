use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use quasinichols::rootsys::Caps;

use quasinichols_cli::instance::{parse_instance, Instance};
use quasinichols_cli::report::{self, Report};

#[derive(Parser)]
#[command(name = "qnichols", version, about = "Nichols algebras over twisted Yetter-Drinfeld categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Instance file (TOML).
    #[arg(long, global = true)]
    instance: Option<PathBuf>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on positive roots explored by the Weyl groupoid search.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Largest degree `relations` will expand.
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Whether the cocycle is abelian, globally and on the module's support.
    IsAbelian,
    /// Try to trivialize the cocycle on the hat group.
    Resolve,
    /// Generalized Dynkin diagram of a diagonal module.
    Dynkin,
    /// Finite or infinite GK-dimension, with a certificate.
    Verdict,
    /// Relations of the Nichols algebra in one degree.
    Relations {
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Standard-form minimal nondiagonal objects with `n`-dimensional summands.
    Enumerate {
        #[arg(long)]
        n: u64,
    },
    /// Built-in consistency checks.
    Selftest,
}

fn load(path: &Option<PathBuf>) -> Result<Instance> {
    let path = path.as_ref().context("this command needs --instance FILE")?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = parse_instance(&text).with_context(|| path.display().to_string())?;
    file.build().with_context(|| format!("validating {}", path.display()))
}

fn run(cli: &Cli) -> Result<Report> {
    if let Command::Selftest = cli.command {
        return report::selftest(Caps::with_roots(cli.cap.unwrap_or(Caps::default().roots)));
    }
    let inst = load(&cli.instance)?;
    let opts = &inst.file.options;
    let caps = Caps::with_roots(cli.cap.or(opts.cap).unwrap_or(Caps::default().roots));
    let degree_cap = cli.degree_cap.or(opts.degree_cap).unwrap_or(report::DEFAULT_DEGREE_CAP);
    match cli.command {
        Command::IsAbelian => report::is_abelian(&inst),
        Command::Resolve => report::resolve(&inst),
        Command::Dynkin => report::dynkin(&inst),
        Command::Verdict => report::verdict(&inst, caps),
        Command::Relations { degree } => report::relations(&inst, degree, degree_cap),
        Command::Enumerate { n } => report::enumerate(&inst, n, caps),
        Command::Selftest => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("report serializes"));
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(r.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
