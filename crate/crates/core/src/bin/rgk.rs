use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use rgkernel::run::{run, GuaranteeChoice, Mode, RunConfig};
use rgkernel::state::DEFAULT_STATE_CEILING;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Laws,
    Axioms,
    Verify,
    Findp,
    Dump,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportArg {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GuaranteeArg {
    Contextual,
    Literal,
}

/// Bounded trace-language checker for rely-guarantee reasoning.
///
/// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration or
/// parse error, 3 a violation exists only beyond the bound.
#[derive(Debug, Parser)]
#[command(name = "rgk", version)]
struct Args {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Value domain N; for laws/axioms the largest state count.
    #[arg(long)]
    domain: Option<u32>,
    /// Comma-separated program variables.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Trace length bound L.
    #[arg(long)]
    bound: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances per randomized sweep.
    #[arg(long)]
    instances: Option<usize>,
    /// Program file.
    #[arg(long)]
    program: Option<PathBuf>,
    /// Spec file: `[rely R] [guar G] pre C post C`.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// JSON proof outline.
    #[arg(long)]
    outline: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    report: ReportArg,
    /// Also print the program's denotation, one word per line.
    #[arg(long)]
    dump: bool,
    /// How guarantees are read: steps taken in context, or every letter.
    #[arg(long, value_enum, default_value = "contextual")]
    guarantee: GuaranteeArg,
    /// FINDP array values.
    #[arg(long, value_delimiter = ',')]
    array: Option<Vec<u32>>,
    /// FINDP predicate over the variable `v`.
    #[arg(long)]
    pred: Option<String>,
    /// Largest state space accepted.
    #[arg(long, default_value_t = DEFAULT_STATE_CEILING)]
    ceiling: usize,
}

fn read(path: &Option<PathBuf>) -> Result<Option<String>, String> {
    path.as_ref()
        .map(|p| std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())))
        .transpose()
}

fn config(args: &Args) -> Result<RunConfig, String> {
    let mut c = RunConfig::new(match args.mode {
        ModeArg::Laws => Mode::Laws,
        ModeArg::Axioms => Mode::Axioms,
        ModeArg::Verify => Mode::Verify,
        ModeArg::Findp => Mode::Findp,
        ModeArg::Dump => Mode::Dump,
    });
    c.domain = args.domain;
    c.vars = args.vars.clone();
    c.bound = args.bound;
    c.seed = args.seed;
    c.instances = args.instances;
    c.program = read(&args.program)?;
    c.spec = read(&args.spec)?;
    c.outline = read(&args.outline)?;
    c.guarantee = match args.guarantee {
        GuaranteeArg::Contextual => GuaranteeChoice::Contextual,
        GuaranteeArg::Literal => GuaranteeChoice::Literal,
    };
    c.array = args.array.clone();
    c.pred = args.pred.clone();
    c.dump = args.dump;
    c.ceiling = args.ceiling;
    Ok(c)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let report = config(&args).and_then(|c| run(c).map_err(|e| e.to_string()));
    match report {
        Ok(r) => {
            match args.report {
                ReportArg::Text => print!("{}", r.to_text()),
                ReportArg::Structured => println!("{}", r.to_json()),
            }
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("rgk: {e}");
            ExitCode::from(2)
        }
    }
}
