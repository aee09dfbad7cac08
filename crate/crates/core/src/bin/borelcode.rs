use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use borelcode::codes::parse_code;
use borelcode::gen::FuzzConfig;
use borelcode::harness::{self, ChainOptions, Target};

#[derive(Parser)]
#[command(
    name = "borelcode",
    version,
    about = "Check codes, relations and reductions on generated samples"
)]
struct Cli {
    /// RNG seed [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Samples per campaign [default: 1000]
    #[arg(long, global = true)]
    cases: Option<usize>,
    /// Number of distinct atoms drawn on [default: 4]
    #[arg(long, global = true)]
    atom_universe: Option<usize>,
    /// Longest generated period [default: 6]
    #[arg(long, global = true)]
    max_period: Option<usize>,
    /// Most entries in a generated list [default: 5]
    #[arg(long, global = true)]
    max_entries: Option<usize>,
    /// Search bound for word against pullback comparisons [default: 4096]
    #[arg(long, global = true)]
    n_cmp: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Claim,
    Star,
    Remark,
    Embed,
    Interleave,
    Gtof,
    Constjump,
}

impl From<VerifyTarget> for Target {
    fn from(t: VerifyTarget) -> Self {
        match t {
            VerifyTarget::Claim => Target::Claim,
            VerifyTarget::Star => Target::Star,
            VerifyTarget::Remark => Target::Remark,
            VerifyTarget::Embed => Target::Embed,
            VerifyTarget::Interleave => Target::Interleave,
            VerifyTarget::Gtof => Target::GToF,
            VerifyTarget::Constjump => Target::ConstJump,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one property campaign
    Verify { target: VerifyTarget },
    /// Count F- and E-classes over an n-atom universe
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Verify every implemented link of the reduction chain
    Chain {
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Parse a code and print its canonical form (reads stdin without an argument)
    Echo { input: Option<String> },
}

impl Cli {
    fn config(&self) -> FuzzConfig {
        let d = FuzzConfig::default();
        FuzzConfig {
            seed: self.seed.unwrap_or(d.seed),
            cases: self.cases.unwrap_or(d.cases),
            atom_universe: self.atom_universe.unwrap_or(d.atom_universe),
            max_period: self.max_period.unwrap_or(d.max_period),
            max_entries: self.max_entries.unwrap_or(d.max_entries),
            n_cmp: self.n_cmp.unwrap_or(d.n_cmp),
        }
    }
}

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn usage_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config();
    match &cli.command {
        Command::Verify { target } => match harness::verify((*target).into(), &cfg) {
            Ok(reports) => {
                if cli.format == Format::Machine {
                    println!("{}", json(&reports));
                } else {
                    reports.iter().for_each(|r| print!("{}", r.to_text()));
                }
                ExitCode::from(u8::from(!reports.iter().all(|r| r.passed())))
            }
            Err(e) => usage_error(e),
        },
        Command::Count { n } => match harness::count_rows(*n, cfg.max_period) {
            Ok(rows) => {
                if cli.format == Format::Machine {
                    println!("{}", json(&rows));
                } else {
                    print!("{}", harness::growth_table_text(&rows));
                }
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(e),
        },
        Command::Chain { corrupt } => {
            let opts = ChainOptions { corrupt: *corrupt };
            match harness::chain_report(&cfg, &opts) {
                Ok(report) => {
                    if cli.format == Format::Machine {
                        println!("{}", json(&report));
                    } else {
                        print!("{}", report.to_text());
                    }
                    ExitCode::from(u8::from(!report.verified()))
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Echo { input } => {
            let src = match input {
                Some(s) => s.clone(),
                None => {
                    let mut s = String::new();
                    if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                        return usage_error(e);
                    }
                    s
                }
            };
            match parse_code(&src) {
                Ok(code) => {
                    println!("{code}");
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
    }
}
