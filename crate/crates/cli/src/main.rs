use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use core_fibres::fibre::DEFAULT_CAP;
use core_fibres::{FibreProblem, Partition};
use core_fibres_io::commands::{self, Method, Output, Settings};
use core_fibres_io::CliError;

/// Count m-core partitions with prescribed s- and t-cores.
#[derive(Parser)]
#[command(name = "core-fibres", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest number of multisets a listing may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u128,
    #[command(subcommand)]
    command: Command,
}

/// A pair of cores; partitions are written "5,4,3,1", or "-" when empty.
#[derive(Args)]
struct Pair {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Partition,
    #[arg(long, allow_hyphen_values = true)]
    tau: Partition,
}

impl Pair {
    fn problem(&self) -> Result<FibreProblem, CliError> {
        Ok(FibreProblem::new(self.s, self.t, self.sigma.clone(), self.tau.clone())?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// The t-core of a partition.
    Core {
        #[arg(long, allow_hyphen_values = true)]
        partition: Partition,
        #[arg(long)]
        t: usize,
    },
    /// Number of m-cores of length at most k with the given s- and t-cores.
    Count {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// The quasipolynomial in k governing a fibre, or a divisor closed form.
    Quasipoly {
        /// Count a-cores with b-core sigma instead; needs --a, --b and --sigma.
        #[arg(long, requires_all = ["a", "b", "sigma"], conflicts_with_all = ["s", "t", "tau"])]
        divisor: bool,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, required_unless_present = "divisor")]
        s: Option<usize>,
        #[arg(long, required_unless_present = "divisor")]
        t: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<Partition>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "divisor")]
        tau: Option<Partition>,
        /// Count elements of length exactly k rather than at most k.
        #[arg(long)]
        exact_length: bool,
    },
    /// Relative volume of a transportation polytope.
    Volume {
        #[arg(long, required_unless_present = "rows")]
        s: Option<usize>,
        #[arg(long, required_unless_present = "rows")]
        t: Option<usize>,
        /// Explicit row margins, e.g. 2,2,2; use with --cols.
        #[arg(long, value_delimiter = ',', requires = "cols", conflicts_with_all = ["s", "t"])]
        rows: Option<Vec<u64>>,
        #[arg(long, value_delimiter = ',')]
        cols: Option<Vec<u64>>,
    },
    /// Check a fibre quasipolynomial against a listing of cores.
    Verify {
        #[command(flatten)]
        pair: Pair,
        /// First argument checked; defaults to the threshold.
        #[arg(long)]
        min_k: Option<usize>,
        #[arg(long)]
        max_k: usize,
    },
    /// List the t-cores of length at most k.
    Enumerate {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let cfg = Settings {
        json: cli.json,
        cap: cli.cap,
    };
    match cli.command {
        Command::Core { partition, t } => commands::core(&partition, t, cfg),
        Command::Count { pair, k, method } => commands::count_fibre(&pair.problem()?, k, method, cfg),
        Command::Quasipoly {
            divisor,
            a,
            b,
            s,
            t,
            sigma,
            tau,
            exact_length,
        } => {
            let sigma = sigma.ok_or_else(|| CliError::Usage("--sigma is required".into()))?;
            if divisor {
                let (Some(a), Some(b)) = (a, b) else {
                    return Err(CliError::Usage("--divisor needs --a and --b".into()));
                };
                return commands::divisor_quasipolynomial(a, b, &sigma, cfg);
            }
            let (Some(s), Some(t), Some(tau)) = (s, t, tau) else {
                return Err(CliError::Usage("--s, --t and --tau are required".into()));
            };
            commands::quasipoly(&FibreProblem::new(s, t, sigma, tau)?, exact_length, cfg)
        }
        Command::Volume { s, t, rows, cols } => match (rows, cols, s, t) {
            (Some(rows), Some(cols), _, _) => commands::volume_of_margins(rows, cols, cfg),
            (_, _, Some(s), Some(t)) => commands::volume(s, t, cfg),
            _ => Err(CliError::Usage("give --s and --t, or --rows and --cols".into())),
        },
        Command::Verify { pair, min_k, max_k } => commands::verify(&pair.problem()?, min_k, max_k, cfg),
        Command::Enumerate { t, k } => commands::enumerate(t, k, cfg),
    }
}

fn main() -> ExitCode {
    // clap exits with code 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if let Some(note) = out.note {
                eprintln!("{note}");
            }
            print!("{}", out.stdout);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
